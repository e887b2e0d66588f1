use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest supported field order. Keeps every coefficient product inside a
/// u64 without intermediate reductions.
pub const FIELD_BOUND: u64 = 1_000_000;

/// Deepest extension reachable under FIELD_BOUND (3^12 = 531441).
const MAX_DEG: usize = 12;

/// One element of F_q, stored as the base-p packing of its coefficient
/// vector: index = c_0 + c_1 p + ... + c_{n-1} p^{n-1}. The packing is
/// canonical, so derived equality is field equality. All arithmetic lives on
/// the owning [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// The packed index in [0, q).
    pub fn index(self) -> u64 {
        self.0
    }
}

/// Immutable description of a finite field F_q with q = p^n odd.
///
/// For n >= 2 the field is F_p[x]/(f) where f is monic irreducible of degree
/// n; `modulus_low` holds the coefficients of f below the leading 1, lowest
/// degree first. The stored generator is the first element of multiplicative
/// order q - 1 in canonical element order.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    modulus_low: Vec<u64>,
    generator: FieldElement,
    qm1_factors: Vec<u64>,
}

/// Serializable view of a field description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    /// Full modulus coefficient list, lowest degree first, including the
    /// leading 1; absent for prime fields.
    pub modulus: Option<Vec<u64>>,
    /// Generator coefficients c_0..c_{n-1}.
    pub generator: Vec<u64>,
    pub qm1_factors: Vec<u64>,
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// All odd prime powers p^n <= limit, ascending.
pub fn odd_prime_powers(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 3;
    while p <= limit {
        if is_odd_prime(p) {
            let mut q = p;
            while q <= limit {
                out.push(q);
                match q.checked_mul(p) {
                    Some(next) => q = next,
                    None => break,
                }
            }
        }
        p += 2;
    }
    out.sort_unstable();
    out
}

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if p > FIELD_BOUND {
            return Err(Error::Overflow { p, n: 1 });
        }
        let mut spec = FieldSpec {
            p,
            n: 1,
            q: p,
            modulus_low: Vec::new(),
            generator: FieldElement::ZERO,
            qm1_factors: distinct_prime_factors(p - 1),
        };
        spec.generator = spec.find_generator();
        Ok(spec)
    }

    /// The extension field F_{p^n}. The modulus is the first irreducible
    /// monic polynomial of degree n in ascending lexicographic order on the
    /// coefficient tuple (c_0, ..., c_{n-1}); n = 1 builds F_p directly.
    pub fn extension(p: u64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::QTooSmall(1));
        }
        if n == 1 {
            return Self::prime(p);
        }
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let q = (0..n).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&v| v <= FIELD_BOUND)
        });
        let q = q.ok_or(Error::Overflow { p, n })?;
        let mut spec = FieldSpec {
            p,
            n,
            q,
            modulus_low: Vec::new(),
            generator: FieldElement::ZERO,
            qm1_factors: distinct_prime_factors(q - 1),
        };
        spec.modulus_low = spec.find_modulus();
        spec.generator = spec.find_generator();
        Ok(spec)
    }

    /// Builds the field of order q, factoring q into p^n.
    pub fn for_q(q: u64) -> Result<Self> {
        if q < 3 || q % 2 == 0 {
            return Err(Error::NotOddPrime(q));
        }
        let mut p = 3;
        while p * p <= q {
            if q % p == 0 {
                let mut n = 0;
                let mut t = q;
                while t % p == 0 {
                    t /= p;
                    n += 1;
                }
                if t != 1 {
                    return Err(Error::NotOddPrime(q));
                }
                return Self::extension(p, n);
            }
            p += 2;
        }
        Self::prime(q)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn qm1_factors(&self) -> &[u64] {
        &self.qm1_factors
    }

    /// Modulus coefficients below the leading term, lowest degree first.
    /// Empty for prime fields.
    pub fn modulus_low(&self) -> &[u64] {
        &self.modulus_low
    }

    pub fn summary(&self) -> FieldSummary {
        let modulus = if self.n == 1 {
            None
        } else {
            let mut full = self.modulus_low.clone();
            full.push(1);
            Some(full)
        };
        FieldSummary {
            q: self.q,
            p: self.p,
            n: self.n,
            modulus,
            generator: self.coeffs(self.generator),
            qm1_factors: self.qm1_factors.clone(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Element with the given packed index; panics if out of range.
    pub fn element_from_index(&self, idx: u64) -> FieldElement {
        assert!(idx < self.q, "element index {idx} out of range for q = {}", self.q);
        FieldElement(idx)
    }

    /// Element from coefficients c_0, c_1, ... (missing trailing
    /// coefficients are zero); panics on out-of-range input.
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.n as usize);
        let mut idx = 0;
        for &c in coeffs.iter().rev() {
            assert!(c < self.p);
            idx = idx * self.p + c;
        }
        FieldElement(idx)
    }

    /// The image of a rational integer under Z -> F_q.
    pub fn embed_int(&self, v: i64) -> FieldElement {
        let p = self.p as i64;
        FieldElement(v.rem_euclid(p) as u64)
    }

    pub fn coeffs(&self, el: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut v = el.0;
        for _ in 0..self.n {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Residue in [0, p) if the element lies in the prime subfield.
    pub fn in_prime_field(&self, el: FieldElement) -> Option<u64> {
        if el.0 < self.p {
            Some(el.0)
        } else {
            None
        }
    }

    /// All q elements in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Rank r in the canonical ordering: coefficient tuples
    /// (c_0, ..., c_{n-1}) ascending lexicographically, c_0 compared first.
    pub fn element_from_rank(&self, rank: u64) -> FieldElement {
        debug_assert!(rank < self.q);
        if self.n == 1 {
            return FieldElement(rank);
        }
        let mut idx = 0;
        let mut r = rank;
        // c_0 is the most significant digit of the rank but the least
        // significant digit of the packed index.
        let mut place = self.q / self.p;
        for i in 0..self.n {
            let digit = r / place;
            r %= place;
            idx += digit * self.p.pow(i);
            if place > 1 {
                place /= self.p;
            }
        }
        FieldElement(idx)
    }

    fn unpack(&self, el: FieldElement, out: &mut [u64; MAX_DEG]) {
        let mut v = el.0;
        for slot in out.iter_mut().take(self.n as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    fn pack(&self, digits: &[u64; MAX_DEG]) -> FieldElement {
        let n = self.n as usize;
        let mut idx = 0;
        for i in (0..n).rev() {
            idx = idx * self.p + digits[i];
        }
        FieldElement(idx)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        let mut da = [0u64; MAX_DEG];
        let mut db = [0u64; MAX_DEG];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        for i in 0..self.n as usize {
            da[i] += db[i];
            if da[i] >= self.p {
                da[i] -= self.p;
            }
        }
        self.pack(&da)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut da = [0u64; MAX_DEG];
        self.unpack(a, &mut da);
        for d in da.iter_mut().take(self.n as usize) {
            if *d != 0 {
                *d = self.p - *d;
            }
        }
        self.pack(&da)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(a.0 * b.0 % self.p);
        }
        let n = self.n as usize;
        let mut da = [0u64; MAX_DEG];
        let mut db = [0u64; MAX_DEG];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        // Raw coefficients stay below n * (p-1)^2 < 2^24 for extension
        // fields under FIELD_BOUND, so no intermediate reduction is needed.
        let mut prod = [0u64; 2 * MAX_DEG - 1];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += da[i] * db[j];
            }
        }
        // Fold x^j for j >= n using x^n = -(m_0 + m_1 x + ...).
        for j in (n..=2 * n - 2).rev() {
            let t = prod[j] % self.p;
            prod[j] = 0;
            if t != 0 {
                for (i, &m) in self.modulus_low.iter().enumerate() {
                    prod[j - n + i] += t * (self.p - m);
                }
            }
        }
        let mut digits = [0u64; MAX_DEG];
        for i in 0..n {
            digits[i] = prod[i] % self.p;
        }
        self.pack(&digits)
    }

    /// Square-and-multiply. pow(a, 0) = 1 for every a, including a = 0; the
    /// builders rely on this at q = 3 where the exponent (q-3)/2 vanishes.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// 0 on zero, 1 on non-zero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: FieldElement) -> i8 {
        if a.0 == 0 {
            return 0;
        }
        let t = self.pow(a, (self.q - 1) / 2);
        if t == self.one() {
            1
        } else {
            assert!(t == self.neg(self.one()), "character power must be +-1");
            -1
        }
    }

    /// The subgroup U_k = {x : x^k = 1} as the ordered list
    /// g^0, g^(q-1)/k, g^2(q-1)/k, ...
    pub fn subgroup(&self, k: u64) -> Result<Vec<FieldElement>> {
        if k == 0 || (self.q - 1) % k != 0 {
            return Err(Error::NotADivisor { k, qm1: self.q - 1 });
        }
        let step = self.pow(self.generator, (self.q - 1) / k);
        let mut out = Vec::with_capacity(k as usize);
        let mut cur = self.one();
        for _ in 0..k {
            out.push(cur);
            cur = self.mul(cur, step);
        }
        Ok(out)
    }

    /// Sum of x^r over all of F_q; equals -1 when (q-1) | r and 0 otherwise
    /// (for r >= 1).
    pub fn power_sum(&self, r: u64) -> FieldElement {
        assert!(r >= 1);
        let mut acc = self.zero();
        for x in self.elements() {
            acc = self.add(acc, self.pow(x, r));
        }
        acc
    }

    /// Display form: the residue for prime-subfield elements, otherwise a
    /// comma-free coefficient list.
    pub fn format_element(&self, el: FieldElement) -> String {
        match self.in_prime_field(el) {
            Some(r) => r.to_string(),
            None => {
                let parts: Vec<String> =
                    self.coeffs(el).iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(";"))
            }
        }
    }

    /// First element of multiplicative order q - 1 in canonical order.
    fn find_generator(&self) -> FieldElement {
        for rank in 1..self.q {
            let cand = self.element_from_rank(rank);
            if cand.0 == 0 {
                continue;
            }
            let is_gen = self
                .qm1_factors
                .iter()
                .all(|&l| self.pow(cand, (self.q - 1) / l) != self.one());
            if is_gen {
                return cand;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    /// First irreducible monic polynomial of degree n in ascending
    /// lexicographic order on (c_0, ..., c_{n-1}).
    fn find_modulus(&self) -> Vec<u64> {
        let n = self.n;
        for rank in 0..self.q {
            let mut low = Vec::with_capacity(n as usize);
            let mut r = rank;
            let mut place = self.q / self.p;
            for _ in 0..n {
                low.push(r / place);
                r %= place;
                if place > 1 {
                    place /= self.p;
                }
            }
            if self.is_irreducible(&low) {
                return low;
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p");
    }

    /// Rabin test for the candidate modulus: x^{p^n} = x in F_p[x]/(f) and
    /// gcd(x^{p^{n/l}} - x, f) = 1 for every prime l | n.
    fn is_irreducible(&self, low: &[u64]) -> bool {
        let trial = FieldSpec {
            p: self.p,
            n: self.n,
            q: self.q,
            modulus_low: low.to_vec(),
            generator: FieldElement::ZERO,
            qm1_factors: Vec::new(),
        };
        let x = FieldElement(self.p);
        let frob = |el: FieldElement, times: u32| -> FieldElement {
            let mut cur = el;
            for _ in 0..times {
                cur = trial.pow(cur, self.p);
            }
            cur
        };
        if frob(x, self.n) != x {
            return false;
        }
        for &l in &distinct_prime_factors(self.n as u64) {
            let h = trial.sub(frob(x, self.n / l as u32), x);
            if h.0 == 0 {
                return false;
            }
            let mut full = low.to_vec();
            full.push(1);
            if poly_gcd_degree(&full, &trial.coeffs(h), self.p) != 0 {
                return false;
            }
        }
        true
    }
}

fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn mod_pow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Degree of gcd(a, b) over F_p; the inputs need not be monic.
fn poly_gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let db = match poly_degree(&b) {
            None => return poly_degree(&a).expect("gcd of two zero polynomials"),
            Some(d) => d,
        };
        // a <- a mod b
        let lead_inv = mod_pow_u64(b[db], p - 2, p);
        while let Some(da) = poly_degree(&a) {
            if da < db {
                break;
            }
            let coef = a[da] * lead_inv % p;
            for i in 0..=db {
                let sub = coef * b[i] % p;
                a[da - db + i] = (a[da - db + i] + p - sub) % p;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}
