//! The matrix families under test: D_k and T_k over the subgroup U_k, and
//! the symmetric circulant vector whose circulant shares det D_k.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::SquareMatrix;
use std::sync::Arc;

fn check_k(field: &FieldSpec, k: u64) -> Result<()> {
    if k <= 1 || (field.q() - 1) % k != 0 {
        return Err(Error::NotADivisor {
            k,
            qm1: field.q() - 1,
        });
    }
    Ok(())
}

/// D_k = [(a_i + a_j)^((q-3)/2)] over U_k. At q = 3 the exponent is zero and
/// a_i + a_j can vanish; pow(0, 0) = 1 keeps the matrix total.
pub fn build_dk(field: &Arc<FieldSpec>, k: u64) -> Result<SquareMatrix> {
    check_k(field, k)?;
    let a = field.subgroup(k)?;
    let e = (field.q() - 3) / 2;
    Ok(SquareMatrix::from_fn(field.clone(), k as usize, |i, j| {
        field.pow(field.add(a[i], a[j]), e)
    }))
}

/// T_k = [(a_i^2 + a_i a_j + a_j^2)^((q-3)/2)] over U_k.
pub fn build_tk(field: &Arc<FieldSpec>, k: u64) -> Result<SquareMatrix> {
    check_k(field, k)?;
    let a = field.subgroup(k)?;
    let e = (field.q() - 3) / 2;
    Ok(SquareMatrix::from_fn(field.clone(), k as usize, |i, j| {
        let quad = field.add(
            field.add(field.mul(a[i], a[i]), field.mul(a[i], a[j])),
            field.mul(a[j], a[j]),
        );
        field.pow(quad, e)
    }))
}

/// The vector b_i = (1 + g^{ni})^((q-3)/2) g^{mi} (-1)^i for odd k | q - 1,
/// with n = (q-1)/k and m = (q-1)/(2k). Odd k and even q - 1 make 2k | q - 1,
/// and 1 + g^{ni} never vanishes (g^{ni} = -1 would need 2i = k mod 2k).
/// Satisfies b_i = b_{k-i}, so the circulant C(b) is symmetric.
pub fn build_circulant_b(field: &Arc<FieldSpec>, k: u64) -> Result<Vec<FieldElement>> {
    if k % 2 == 0 {
        return Err(Error::KMustBeOdd(k));
    }
    check_k(field, k)?;
    let qm1 = field.q() - 1;
    let e = (field.q() - 3) / 2;
    let g_n = field.pow(field.generator(), qm1 / k);
    let g_m = field.pow(field.generator(), qm1 / (2 * k));
    let minus_one = field.neg(field.one());
    let mut out = Vec::with_capacity(k as usize);
    let mut pow_n = field.one();
    let mut pow_m = field.one();
    let mut sign = field.one();
    for _ in 0..k {
        let base = field.pow(field.add(field.one(), pow_n), e);
        out.push(field.mul(field.mul(base, pow_m), sign));
        pow_n = field.mul(pow_n, g_n);
        pow_m = field.mul(pow_m, g_m);
        sign = field.mul(sign, minus_one);
    }
    Ok(out)
}
