use crate::field::{FieldElement, FieldSpec};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Dense k x k matrix over one field, row-major.
#[derive(Debug, Clone)]
pub struct SquareMatrix {
    field: Arc<FieldSpec>,
    dim: usize,
    entries: Vec<FieldElement>,
}

impl SquareMatrix {
    pub fn from_fn(
        field: Arc<FieldSpec>,
        dim: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> SquareMatrix {
        assert!(dim >= 1);
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        SquareMatrix {
            field,
            dim,
            entries,
        }
    }

    pub fn identity(field: Arc<FieldSpec>, dim: usize) -> SquareMatrix {
        let one = field.one();
        let zero = field.zero();
        SquareMatrix::from_fn(field, dim, |i, j| if i == j { one } else { zero })
    }

    /// Circulant C(b): entry (i, j) = b[(j - i) mod s].
    pub fn circulant(field: Arc<FieldSpec>, b: &[FieldElement]) -> SquareMatrix {
        let s = b.len();
        assert!(s >= 1);
        SquareMatrix::from_fn(field, s, |i, j| b[(s + j - i) % s])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.dim + j]
    }

    /// Exact determinant by Gaussian elimination on a copy. Pivot rule: the
    /// first row with a non-zero entry in the current column (fields have no
    /// magnitude to order by); a swap flips the accumulated sign.
    pub fn determinant(&self) -> FieldElement {
        let f = &self.field;
        let n = self.dim;
        let mut m = self.entries.clone();
        let zero = f.zero();
        let mut det = f.one();
        let mut negate = false;
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| m[r * n + col] != zero) {
                Some(r) => r,
                None => return zero,
            };
            if pivot_row != col {
                for j in 0..n {
                    m.swap(pivot_row * n + j, col * n + j);
                }
                negate = !negate;
            }
            let pivot = m[col * n + col];
            det = f.mul(det, pivot);
            let pivot_inv = f.inv(pivot).expect("pivot is non-zero");
            for r in col + 1..n {
                let lead = m[r * n + col];
                if lead == zero {
                    continue;
                }
                let factor = f.mul(lead, pivot_inv);
                for j in col..n {
                    let delta = f.mul(factor, m[col * n + j]);
                    m[r * n + j] = f.sub(m[r * n + j], delta);
                }
            }
        }
        if negate {
            f.neg(det)
        } else {
            det
        }
    }
}

/// Dense k x k matrix over Z with arbitrary-precision entries.
#[derive(Debug, Clone)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> IntegerMatrix {
        assert!(dim >= 1);
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        IntegerMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    /// Exact determinant by fraction-free Bareiss elimination; every
    /// interior division is exact, and intermediate entries stay minors of
    /// the input (polynomial growth instead of the exponential blowup of
    /// naive elimination).
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut m = self.entries.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let swap = match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                    Some(r) => r,
                    None => return BigInt::zero(),
                };
                for j in 0..n {
                    m.swap(swap * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    let (quot, rem) = num_integer_div_rem(&num, &prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    m[i * n + j] = quot;
                }
            }
            prev = m[k * n + k].clone();
        }
        let det = m[(n - 1) * n + (n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

/// Reduction of a BigInt into [0, p).
pub fn bigint_mod_p(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = v % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    let digits = r.to_u64_digits().1;
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue below p fits one digit"),
    }
}
