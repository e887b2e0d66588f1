//! Determinant properties on random inputs: antisymmetry, multilinearity,
//! agreement between the integer and field elimination paths, and two
//! structural identities the closed forms lean on.

use legmat_core::matrix::{bigint_mod_p, IntegerMatrix, SquareMatrix};
use legmat_core::{FieldElement, FieldSpec};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn field(q: u64) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::for_q(q).unwrap())
}

fn random_rows(f: &Arc<FieldSpec>, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<FieldElement>> {
    (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| f.element_from_index(rng.gen_range(0..f.q())))
                .collect()
        })
        .collect()
}

fn matrix_of(f: &Arc<FieldSpec>, rows: &[Vec<FieldElement>]) -> SquareMatrix {
    SquareMatrix::from_fn(f.clone(), rows.len(), |i, j| rows[i][j])
}

#[test]
fn row_swap_negates_the_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [7u64, 13] {
        let f = field(q);
        for _ in 0..100 {
            let dim = rng.gen_range(2..=6);
            let rows = random_rows(&f, dim, &mut rng);
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim);
            while j == i {
                j = rng.gen_range(0..dim);
            }
            let mut swapped = rows.clone();
            swapped.swap(i, j);
            let d1 = matrix_of(&f, &rows).determinant();
            let d2 = matrix_of(&f, &swapped).determinant();
            assert_eq!(d1, f.neg(d2), "q={q} dim={dim}");
        }
    }
}

#[test]
fn scaling_one_row_scales_the_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in [7u64, 13] {
        let f = field(q);
        for _ in 0..100 {
            let dim = rng.gen_range(1..=6);
            let rows = random_rows(&f, dim, &mut rng);
            let i = rng.gen_range(0..dim);
            let c = f.element_from_index(rng.gen_range(0..q));
            let mut scaled = rows.clone();
            for e in scaled[i].iter_mut() {
                *e = f.mul(*e, c);
            }
            let d1 = matrix_of(&f, &rows).determinant();
            let d2 = matrix_of(&f, &scaled).determinant();
            assert_eq!(d2, f.mul(c, d1), "q={q} dim={dim}");
        }
    }
}

#[test]
fn row_additivity_in_one_row() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = field(13);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=5);
        let rows = random_rows(&f, dim, &mut rng);
        let extra: Vec<FieldElement> = (0..dim)
            .map(|_| f.element_from_index(rng.gen_range(0..13)))
            .collect();
        let i = rng.gen_range(0..dim);
        let mut summed = rows.clone();
        for (e, x) in summed[i].iter_mut().zip(&extra) {
            *e = f.add(*e, *x);
        }
        let mut replaced = rows.clone();
        replaced[i] = extra;
        let lhs = matrix_of(&f, &summed).determinant();
        let rhs = f.add(
            matrix_of(&f, &rows).determinant(),
            matrix_of(&f, &replaced).determinant(),
        );
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn integer_and_field_eliminations_agree_modulo_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=6);
        let entries: Vec<Vec<i64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gen_range(-50..=50)).collect())
            .collect();
        let exact = IntegerMatrix::from_fn(dim, |i, j| BigInt::from(entries[i][j])).determinant();
        for p in [5u64, 7, 11, 13] {
            let f = field(p);
            let reduced = SquareMatrix::from_fn(f.clone(), dim, |i, j| f.embed_int(entries[i][j]));
            assert_eq!(
                reduced.determinant().index(),
                bigint_mod_p(&exact, p),
                "dim={dim} p={p}"
            );
        }
    }
}

// det[P(X_i Y_j)] factors as (prod of coefficients) * Vandermonde(X) *
// Vandermonde(Y) for any polynomial P of degree < n and distinct X's, Y's.
#[test]
fn polynomial_product_matrices_factor_through_vandermonde() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for q in [13u64, 25, 27, 49] {
        let f = field(q);
        let all: Vec<FieldElement> = f.elements().collect();
        for n in 1..=6usize {
            for _ in 0..100 {
                let coeffs: Vec<FieldElement> = (0..n)
                    .map(|_| f.element_from_index(rng.gen_range(0..q)))
                    .collect();
                let xs: Vec<FieldElement> =
                    all.choose_multiple(&mut rng, n).copied().collect();
                let ys: Vec<FieldElement> =
                    all.choose_multiple(&mut rng, n).copied().collect();
                let eval = |t: FieldElement| {
                    let mut acc = f.zero();
                    for &c in coeffs.iter().rev() {
                        acc = f.add(f.mul(acc, t), c);
                    }
                    acc
                };
                let m = SquareMatrix::from_fn(f.clone(), n, |i, j| eval(f.mul(xs[i], ys[j])));
                let mut want = f.one();
                for &c in &coeffs {
                    want = f.mul(want, c);
                }
                for hi in 0..n {
                    for lo in 0..hi {
                        want = f.mul(want, f.sub(xs[hi], xs[lo]));
                        want = f.mul(want, f.sub(ys[hi], ys[lo]));
                    }
                }
                assert_eq!(m.determinant(), want, "q={q} n={n}");
            }
        }
    }
}

// For symmetric b (b_i = b_{s-i}), det C(b) times the eigenvalue sum(s)
// is always a square or zero.
#[test]
fn symmetric_circulants_pair_into_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for q in [7u64, 13, 25, 27] {
        let f = field(q);
        for s in 1..=9usize {
            for _ in 0..200 {
                let mut b: Vec<FieldElement> =
                    vec![f.element_from_index(rng.gen_range(0..q)); s];
                for i in 1..=s / 2 {
                    let v = f.element_from_index(rng.gen_range(0..q));
                    b[i] = v;
                    b[s - i] = v;
                }
                let det = SquareMatrix::circulant(f.clone(), &b).determinant();
                let plain: FieldElement = b.iter().fold(f.zero(), |acc, &x| f.add(acc, x));
                let alternating: FieldElement = b
                    .iter()
                    .enumerate()
                    .fold(f.zero(), |acc, (i, &x)| {
                        if i % 2 == 0 {
                            f.add(acc, x)
                        } else {
                            f.sub(acc, x)
                        }
                    });
                let product = if s % 2 == 1 {
                    f.mul(det, plain)
                } else {
                    f.mul(det, f.mul(plain, alternating))
                };
                assert!(
                    f.quadratic_character(product) >= 0,
                    "q={q} s={s} product={}",
                    f.format_element(product)
                );
            }
        }
    }
}

#[test]
fn bareiss_handles_rank_deficiency_and_known_values() {
    let m = IntegerMatrix::from_fn(3, |i, j| BigInt::from((i * 3 + j) as i64));
    assert_eq!(m.determinant(), BigInt::from(0));
    let hilbert_like = IntegerMatrix::from_fn(4, |i, j| BigInt::from(1i64 << (i + j)));
    assert_eq!(hilbert_like.determinant(), BigInt::from(0));
    let vander = IntegerMatrix::from_fn(4, |i, j| BigInt::from((i as i64 + 2).pow(j as u32)));
    // Vandermonde on 2,3,4,5: product of pairwise differences
    assert_eq!(vander.determinant(), BigInt::from(12));
}
