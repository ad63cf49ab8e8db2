//! Finite fields `F_{p^m}` realized as a single quotient `F_p[t]/(modulus)`.
//!
//! Elements are plain `Copy` indices; all arithmetic goes through the
//! [`Field`] handle. An element's index is its coefficient vector read as a
//! base-`p` number (`c_0 + c_1 p + ... + c_{m-1} p^{m-1}`), so the prime field
//! is exactly the indices `0..p`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::factor::is_irreducible;
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// An element of some [`Field`], identified by its base-`p` coefficient index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Elem(u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Builds an element from its raw index. The caller guarantees `index < q`.
    pub const fn from_index(index: u64) -> Elem {
        Elem(index)
    }

    pub const fn index(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Log/antilog tables for small extension fields.
struct LogTables {
    log: Vec<u32>,
    /// `exp[k] = g^k`, stored twice over so that `log a + log b` needs no reduction.
    exp: Vec<u32>,
}

const TABLE_LIMIT: u64 = 1 << 20;
const MAX_ORDER: u64 = 1 << 62;

struct Inner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, ascending, length `m + 1`. Empty for the prime field.
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

/// The finite field `F_{p^m}`. Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is a deterministic function of (p, m).
        self.inner.p == other.inner.p && self.inner.m == other.inner.m
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}", self.inner.p, self.inner.m)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// The field `F_{p^m}`, with the lexicographically smallest monic
    /// irreducible modulus (coefficients compared from the constant term up).
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || p >= 1 << 31 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q
                .checked_mul(p)
                .filter(|&v| v <= MAX_ORDER)
                .ok_or(Error::FieldTooLarge { p, m })?;
        }
        if m == 1 {
            return Ok(Field {
                inner: Arc::new(Inner {
                    p,
                    m,
                    q,
                    modulus: Vec::new(),
                    tables: None,
                }),
            });
        }
        let modulus = smallest_irreducible(p, m)?;
        let mut field = Inner {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(build_tables(&field));
        }
        Ok(Field {
            inner: Arc::new(field),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// Ascending coefficients of the defining modulus (empty for a prime field).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of `t` in `F_p[t]/(modulus)`; `None` for a prime field.
    pub fn generator(&self) -> Option<Elem> {
        (self.inner.m > 1).then_some(Elem(self.inner.p))
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.inner.p as i64) as u64)
    }

    pub fn from_u64(&self, v: u64) -> Elem {
        Elem(v % self.inner.p)
    }

    /// Element with the given coefficients on `1, t, t^2, ...` (reduced mod p).
    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        debug_assert!(digits.len() <= self.inner.m as usize);
        let p = self.inner.p;
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            v = v * p + d % p;
        }
        Elem(v)
    }

    pub fn digits(&self, e: Elem) -> Vec<u64> {
        let p = self.inner.p;
        let mut v = e.0;
        (0..self.inner.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.inner.q
    }

    pub fn in_prime_field(&self, e: Elem) -> bool {
        e.0 < self.inner.p
    }

    /// All elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.inner.q).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        if self.inner.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u64, 1u64);
        while x != 0 || y != 0 {
            let mut d = x % p + y % p;
            if d >= p {
                d -= p;
            }
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u64, 1u64);
        while x != 0 {
            let d = x % p;
            if d != 0 {
                out += (p - d) * place;
            }
            place *= p;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.inner.m == 1 {
            return Elem(a.0 * b.0 % self.inner.p);
        }
        match &self.inner.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64),
            None => Elem(mul_generic(&self.inner, a.0, b.0)),
        }
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        if let Some(t) = &self.inner.tables {
            let n = self.inner.q - 1;
            let l = t.log[a.0 as usize] as u64;
            return Some(Elem(t.exp[((n - l) % n) as usize] as u64));
        }
        Some(self.pow(a, self.inner.q - 2))
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero in finite field"))
    }

    /// Frobenius `a -> a^p`.
    pub fn frob(&self, a: Elem) -> Elem {
        if self.inner.m == 1 {
            return a;
        }
        self.pow(a, self.inner.p)
    }

    /// `a -> a^{p^k}`.
    pub fn frob_pow(&self, a: Elem, k: u32) -> Elem {
        (0..k % self.inner.m).fold(a, |x, _| self.frob(x))
    }

    /// Inverse Frobenius: the unique `x` with `x^p = a`, i.e. `a^{p^{m-1}}`.
    pub fn frob_inv(&self, a: Elem) -> Elem {
        self.frob_pow(a, self.inner.m - 1)
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a.is_zero() || self.inner.p == 2 || self.pow(a, (self.inner.q - 1) / 2) == Elem::ONE
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn legendre(&self, a: Elem) -> i64 {
        if a.is_zero() {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    /// Canonical string: a polynomial in `t` with least nonnegative
    /// coefficients, descending degree, e.g. `2*t + 1`.
    pub fn format(&self, e: Elem) -> String {
        if self.inner.m == 1 {
            return e.0.to_string();
        }
        let digits = self.digits(e);
        let terms: Vec<String> = digits
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &d)| d != 0)
            .map(|(k, &d)| monomial(d, 't', k))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// Number of nonzero `t`-terms in the canonical string of `e`.
    pub(crate) fn term_count(&self, e: Elem) -> usize {
        self.digits(e).iter().filter(|&&d| d != 0).count()
    }
}

pub(crate) fn monomial(coeff: u64, var: char, k: usize) -> String {
    let power = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    match (coeff, k) {
        (c, 0) => c.to_string(),
        (1, _) => power,
        (c, _) => format!("{c}*{power}"),
    }
}

fn mul_generic(f: &Inner, a: u64, b: u64) -> u64 {
    let (p, m) = (f.p, f.m as usize);
    let mut da = [0u64; 64];
    let mut db = [0u64; 64];
    let (mut x, mut y) = (a, b);
    for i in 0..m {
        da[i] = x % p;
        db[i] = y % p;
        x /= p;
        y /= p;
    }
    let mut prod = [0u64; 128];
    for i in 0..m {
        if da[i] == 0 {
            continue;
        }
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for k in (m..2 * m - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..m {
            let r = c * f.modulus[i] % p;
            prod[k - m + i] = (prod[k - m + i] + p - r) % p;
        }
    }
    let mut v = 0u64;
    for i in (0..m).rev() {
        v = v * p + prod[i];
    }
    v
}

fn build_tables(f: &Inner) -> LogTables {
    let n = f.q - 1;
    let factors = prime_factors(n);
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_generic(f, acc, base);
            }
            base = mul_generic(f, base, base);
            e >>= 1;
        }
        acc
    };
    let g = (2..f.q)
        .find(|&g| factors.iter().all(|&r| pow(g, n / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut log = vec![0u32; f.q as usize];
    let mut exp = vec![0u32; 2 * n as usize];
    let mut x = 1u64;
    for k in 0..n {
        exp[k as usize] = x as u32;
        exp[(k + n) as usize] = x as u32;
        log[x as usize] = k as u32;
        x = mul_generic(f, x, g);
    }
    LogTables { log, exp }
}

fn smallest_irreducible(p: u64, m: u32) -> Result<Vec<u64>> {
    let fp = Field::prime(p)?;
    let count = p.pow(m);
    for k in 0..count {
        // c_0 is the most significant digit of k: lexicographic from the constant term.
        let mut coeffs = vec![0u64; m as usize + 1];
        let mut v = k;
        for i in (0..m as usize).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        coeffs[m as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let poly = Poly::from_coeffs(&fp, coeffs.iter().map(|&c| Elem(c)).collect());
        if is_irreducible(&poly) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f25 = Field::new(5, 2).unwrap();
        assert_eq!(f25.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn frob_inv_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.frob_inv(Elem(3)), Elem(3));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.frob_inv(Elem::ZERO), Elem::ZERO);
        let f9 = Field::new(3, 2).unwrap();
        let t = f9.generator().unwrap();
        let two_t = f9.mul(f9.from_i64(2), t);
        assert_eq!(f9.frob_inv(t), two_t);
        // (2t)^3 = t by direct expansion: 8 t^3 = 2 t * t^2 = 2t * (-1) = t.
        assert_eq!(f9.pow(two_t, 3), t);
    }

    #[test]
    fn frob_inv_exhaustive_small_fields() {
        for (p, m) in [(3u64, 1u32), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)] {
            if p.pow(m) > 81 {
                continue;
            }
            let k = Field::new(p, m).unwrap();
            for e in k.elements() {
                assert_eq!(k.pow(k.frob_inv(e), p), e);
                assert_eq!(k.frob_inv(k.pow(e, p)), e);
            }
        }
    }

    #[test]
    fn table_and_generic_multiplication_agree() {
        let k = Field::new(5, 2).unwrap();
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(k.mul(a, b).0, mul_generic(&k.inner, a.0, b.0));
            }
            if !a.is_zero() {
                assert_eq!(k.mul(a, k.inv(a).unwrap()), Elem::ONE);
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let k = Field::new(5, 12).unwrap();
        assert!(k.inner.tables.is_none());
        let t = k.generator().unwrap();
        let x = k.add(t, k.from_i64(3));
        let y = k.inv(x).unwrap();
        assert_eq!(k.mul(x, y), Elem::ONE);
        assert_eq!(k.pow(x, k.order() - 1), Elem::ONE);
    }

    #[test]
    fn formatting() {
        let f9 = Field::new(3, 2).unwrap();
        let e = f9.from_digits(&[1, 2]);
        assert_eq!(f9.format(e), "2*t + 1");
        assert_eq!(f9.format(Elem::ZERO), "0");
        assert_eq!(f9.format(f9.generator().unwrap()), "t");
    }

    #[test]
    fn rejects_non_primes() {
        assert!(matches!(Field::prime(9), Err(Error::NotPrime(9))));
    }
}
