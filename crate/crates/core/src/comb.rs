//! Binomial coefficients mod p (Lucas), trinomial coefficient rows, the
//! central trinomial numbers, the half factorial, and the integer Legendre
//! symbol. Everything here is prime-field arithmetic on plain machine words.

/// b^e mod m for m < 2^32.
pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    debug_assert!(m > 1 && m < (1 << 32));
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a, p - 2, p)
}

/// Legendre symbol (a/p) for odd prime p, defined on all integers a.
pub fn legendre_symbol(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    let t = mod_pow(r, (p - 1) / 2, p);
    if t == 1 {
        1
    } else {
        debug_assert_eq!(t, p - 1);
        -1
    }
}

/// binom(n, r) for 0 <= r <= n < p, reduced mod p, via the multiplicative
/// formula. All factors in [1, n] are invertible since n < p.
fn small_binomial_mod_p(n: u64, r: u64, p: u64) -> u64 {
    debug_assert!(n < p && r <= n);
    let r = r.min(n - r);
    let mut acc = 1;
    for i in 1..=r {
        acc = acc * ((n - r + i) % p) % p;
        acc = acc * mod_inverse(i % p, p) % p;
    }
    acc
}

/// binom(n, r) mod p by Lucas's theorem: the product of digit-wise
/// binomials in base p. Out-of-range r yields 0. Needed because the scans
/// take n = (q-3)/2 past p for prime-power q.
pub fn binomial_mod_p(n: u64, r: i64, p: u64) -> u64 {
    if r < 0 || r as u64 > n {
        return 0;
    }
    let mut n = n;
    let mut r = r as u64;
    let mut acc = 1;
    while n > 0 || r > 0 {
        let nd = n % p;
        let rd = r % p;
        if rd > nd {
            return 0;
        }
        acc = acc * small_binomial_mod_p(nd, rd, p) % p;
        n /= p;
        r /= p;
    }
    acc
}

/// Coefficients of (x + 1/x + 1)^n mod p: coeffs[r + n] is the coefficient
/// of x^r for -n <= r <= n.
#[derive(Debug, Clone)]
pub struct TrinomialRow {
    n: u64,
    p: u64,
    coeffs: Vec<u64>,
}

impl TrinomialRow {
    /// Iterated multiplication by (x^2 + x + 1); O(n^2) and exact mod p.
    pub fn new(n: u64, p: u64) -> TrinomialRow {
        let mut coeffs = vec![1u64];
        for _ in 0..n {
            let mut next = vec![0u64; coeffs.len() + 2];
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                next[i] = (next[i] + c) % p;
                next[i + 1] = (next[i + 1] + c) % p;
                next[i + 2] = (next[i + 2] + c) % p;
            }
            coeffs = next;
        }
        TrinomialRow { n, p, coeffs }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficient of x^r; zero outside [-n, n]. Symmetric in r <-> -r.
    pub fn get(&self, r: i64) -> u64 {
        let n = self.n as i64;
        if r < -n || r > n {
            return 0;
        }
        self.coeffs[(r + n) as usize]
    }

    /// The central trinomial coefficient t_n mod p.
    pub fn central(&self) -> u64 {
        self.get(0)
    }
}

pub fn central_trinomial(n: u64, p: u64) -> u64 {
    TrinomialRow::new(n, p).central()
}

/// ((p-1)/2)! mod p.
pub fn half_factorial(p: u64) -> u64 {
    let mut acc = 1;
    for j in 2..=(p - 1) / 2 {
        acc = acc * j % p;
    }
    acc
}
