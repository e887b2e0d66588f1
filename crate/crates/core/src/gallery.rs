//! The introductory determinant families used as extra oracle targets. Each
//! function returns the brute-force side only; predicted values live in the
//! harness so the two routes stay independent.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, FieldElement};
use crate::matrix::{IntegerMatrix, SquareMatrix};
use num_bigint::BigInt;
use std::sync::Arc;

/// Determinant over F_p of the (p-1)/2 dimensional matrix with entries
/// phi(i+j) * (i+j)^{-1}. i + j ranges in [2, p-1], so the inverse exists.
/// p = 3 gives the trivial 1x1 case.
pub fn sun_reciprocal_det(p: u64) -> Result<u64> {
    let field = Arc::new(FieldSpec::prime(p)?);
    let dim = ((p - 1) / 2) as usize;
    let m = SquareMatrix::from_fn(field.clone(), dim, |i, j| {
        let s = field.embed_int((i + j + 2) as i64);
        let chi = field.quadratic_character(s);
        let inv = field.inv(s).expect("i + j < p is non-zero");
        field.mul(field.embed_int(chi as i64), inv)
    });
    Ok(m.determinant().index())
}

/// Determinant over F_p of [(i^2 + j^2)^{-1}], 1 <= i, j <= (p-1)/2, for
/// p = 3 mod 4 (which keeps i^2 + j^2 away from 0).
pub fn inverse_squares_det(p: u64) -> Result<u64> {
    let field = Arc::new(FieldSpec::prime(p)?);
    if p % 4 != 3 {
        return Err(Error::BadResidueClass {
            value: p,
            requirement: "p must be = 3 (mod 4) so that i^2 + j^2 never vanishes",
        });
    }
    let dim = ((p - 1) / 2) as usize;
    let m = SquareMatrix::from_fn(field.clone(), dim, |i, j| {
        let a = (i + 1) as i64;
        let b = (j + 1) as i64;
        let s = field.embed_int(a * a + b * b);
        field.inv(s).expect("-1 is not a square mod p")
    });
    Ok(m.determinant().index())
}

/// Bound for the exact-integer route below: |det| of a 33x33 sign matrix is
/// comfortably exact in BigInt, and p = 67 is the largest prime the claims
/// are scanned at.
pub const SDP_BOUND: u64 = 67;

/// S(d, p) = det[((i^2 + d j^2)/p)] for 1 <= i, j <= (p-1)/2 as an exact
/// integer, plus the Legendre symbol of -S(d, p). Uses the integer Bareiss
/// path, independent of the finite-field elimination.
pub fn s_dp(p: u64, d: i64) -> Result<(BigInt, i8)> {
    use crate::comb::legendre_symbol;
    if !crate::field::is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p > SDP_BOUND {
        return Err(Error::BoundExceeded {
            value: p,
            bound: SDP_BOUND,
        });
    }
    if d.rem_euclid(p as i64) == 0 {
        return Err(Error::BadResidueClass {
            value: d.rem_euclid(p as i64) as u64,
            requirement: "d must not be divisible by p",
        });
    }
    let dim = ((p - 1) / 2) as usize;
    let m = IntegerMatrix::from_fn(dim, |i, j| {
        let a = (i + 1) as i64;
        let b = (j + 1) as i64;
        BigInt::from(legendre_symbol(a * a + d * b * b, p))
    });
    let det = m.determinant();
    let neg_residue = crate::matrix::bigint_mod_p(&(-&det), p);
    let sym = legendre_symbol(neg_residue as i64, p);
    Ok((det, sym))
}

/// Determinant over F_q of [(b_i^2 - b_i b_j + b_j^2)^{-1}] indexed by all
/// q - 1 non-zero field elements, for q = 2 mod 3 (no cube roots of unity,
/// so the quadratic never vanishes off the diagonal pair b_i = -b_j either).
/// The result provably lies in the prime subfield; the residue is returned.
pub fn wsn_det(field: &Arc<FieldSpec>) -> Result<u64> {
    if field.q() % 3 != 2 {
        return Err(Error::BadResidueClass {
            value: field.q(),
            requirement: "q must be = 2 (mod 3)",
        });
    }
    let nonzero: Vec<FieldElement> = field.elements().skip(1).collect();
    let dim = nonzero.len();
    let m = SquareMatrix::from_fn(field.clone(), dim, |i, j| {
        let (x, y) = (nonzero[i], nonzero[j]);
        let quad = field.add(
            field.sub(field.mul(x, x), field.mul(x, y)),
            field.mul(y, y),
        );
        field.inv(quad).expect("x^2 - xy + y^2 has no non-trivial zero when 3 divides neither q nor q - 1")
    });
    let det = m.determinant();
    Ok(field
        .in_prime_field(det)
        .expect("this determinant lies in the prime subfield"))
}

/// Determinant over F_p of [(a_i + a_j)^{-1}] over the m = (p-1)/k distinct
/// kth-power residues, for even k | p - 1. Applicable only when -1 is not a
/// kth power (equivalently m is odd); otherwise a_i + a_j can vanish and the
/// claim does not apply.
pub fn wu_wang_det(p: u64, k: u64) -> Result<u64> {
    let field = Arc::new(FieldSpec::prime(p)?);
    if k == 0 || k % 2 != 0 {
        return Err(Error::BadResidueClass {
            value: k,
            requirement: "k must be even",
        });
    }
    if (p - 1) % k != 0 {
        return Err(Error::NotADivisor { k, qm1: p - 1 });
    }
    let m = (p - 1) / k;
    // -1 is a kth power iff (-1)^m = 1.
    if crate::comb::mod_pow(p - 1, m, p) == 1 {
        return Err(Error::ConditionFailed(format!(
            "-1 is a {k}th power mod {p}"
        )));
    }
    // The kth-power residues form the order-m subgroup.
    let residues = field.subgroup(m)?;
    let mat = SquareMatrix::from_fn(field.clone(), m as usize, |i, j| {
        let s = field.add(residues[i], residues[j]);
        field.inv(s).expect("a_i + a_j = 0 would make -1 a kth power")
    });
    Ok(mat.determinant().index())
}

/// The (p-1) x (p-1) matrix with entries (i^2 + c i j + d j^2)^{p-2} over
/// F_p (so zero arguments map to zero, everything else to the inverse). No
/// determinant value is claimed for it; callers report what they find.
pub fn luo_sun_matrix(p: u64, c: i64, d: i64) -> Result<SquareMatrix> {
    let field = Arc::new(FieldSpec::prime(p)?);
    let dim = (p - 1) as usize;
    Ok(SquareMatrix::from_fn(field.clone(), dim, |i, j| {
        let a = (i + 1) as i64;
        let b = (j + 1) as i64;
        let v = field.embed_int(a * a + c * a * b + d * b * b);
        field.pow(v, p - 2)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn sun_reciprocal_anchors() {
        assert_eq!(sun_reciprocal_det(5).unwrap(), 4);
        assert_eq!(sun_reciprocal_det(7).unwrap(), 6);
        assert_eq!(sun_reciprocal_det(13).unwrap(), 12);
        // 1x1 edge: entry phi(2)/2 mod 3 = (-1) * 2 = 1
        assert_eq!(sun_reciprocal_det(3).unwrap(), 1);
    }

    #[test]
    fn inverse_squares_anchors() {
        assert_eq!(inverse_squares_det(7).unwrap(), 1);
        assert_eq!(inverse_squares_det(11).unwrap(), 10);
        assert_eq!(inverse_squares_det(19).unwrap(), 18);
        assert!(matches!(
            inverse_squares_det(5),
            Err(Error::BadResidueClass { .. })
        ));
    }

    #[test]
    fn sdp_zero_and_symbol_anchors() {
        let (det, _) = s_dp(7, 3).unwrap();
        assert_eq!(det, BigInt::from(0));
        let (det, sym) = s_dp(7, 1).unwrap();
        assert_eq!(det, BigInt::from(-4));
        assert_eq!(sym, 1);
        assert!(matches!(s_dp(71, 1), Err(Error::BoundExceeded { .. })));
        assert!(matches!(s_dp(7, 14), Err(Error::BadResidueClass { .. })));
    }

    #[test]
    fn wsn_anchors() {
        let f5 = Arc::new(FieldSpec::prime(5).unwrap());
        assert_eq!(wsn_det(&f5).unwrap(), 3);
        let f11 = Arc::new(FieldSpec::prime(11).unwrap());
        assert_eq!(wsn_det(&f11).unwrap(), 8);
        let f17 = Arc::new(FieldSpec::prime(17).unwrap());
        assert_eq!(wsn_det(&f17).unwrap(), 2);
        let f7 = Arc::new(FieldSpec::prime(7).unwrap());
        assert!(matches!(wsn_det(&f7), Err(Error::BadResidueClass { .. })));
    }

    #[test]
    fn wu_wang_anchors_and_condition() {
        assert_eq!(wu_wang_det(7, 2).unwrap(), 1);
        assert_eq!(wu_wang_det(11, 2).unwrap(), 10);
        assert_eq!(wu_wang_det(13, 4).unwrap(), 8);
        assert!(matches!(wu_wang_det(5, 2), Err(Error::ConditionFailed(_))));
        assert!(matches!(wu_wang_det(13, 2), Err(Error::ConditionFailed(_))));
    }

    #[test]
    fn luo_sun_builder_shape() {
        let m = luo_sun_matrix(5, 1, 1).unwrap();
        assert_eq!(m.dim(), 4);
        let m = luo_sun_matrix(7, 2, 2).unwrap();
        assert_eq!(m.dim(), 6);
        // degenerate inputs are allowed; entries just collapse
        let m = luo_sun_matrix(5, 0, 0).unwrap();
        assert_eq!(m.dim(), 4);
    }
}
