//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::field::{monomial, Elem, Field};

/// Dense polynomial with ascending coefficients; the zero polynomial is the
/// empty vector and the leading coefficient is otherwise nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Coefficients given as integers (reduced mod p), ascending.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(field, coeffs)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).unwrap();
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let k = &self.field;
        Poly::from_coeffs(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| k.mul(k.from_u64(i as u64), a))
            .collect();
        Poly::from_coeffs(k, coeffs)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(Elem) -> Elem) -> Poly {
        Poly::from_coeffs(target, self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let k = &self.field;
        let dd = d.degree().expect("polynomial division by zero");
        if self.coeffs.len() <= dd {
            return (Poly::zero(k), self.clone());
        }
        let inv_lead = k.inv(d.lead()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = k.mul(c, inv_lead);
            quot[i - dd] = factor;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = k.sub(rem[idx], k.mul(factor, dc));
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(k, quot), Poly::from_coeffs(k, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(&self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// `self^p` computed coefficientwise: `(sum a_i x^i)^p = sum a_i^p x^{ip}`.
    pub fn frobenius_power(&self) -> Poly {
        let k = &self.field;
        let p = k.characteristic() as usize;
        let mut coeffs = vec![Elem::ZERO; self.coeffs.len().saturating_sub(1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = k.frob(c);
        }
        Poly::from_coeffs(k, coeffs)
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(k), |acc, &c| &(&acc * g) + &Poly::constant(k, c))
    }

    /// Canonical string in variable `var`: descending degree, least
    /// nonnegative coefficients, unit coefficients and `*1` omitted.
    pub fn format_in(&self, var: char) -> String {
        let k = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if k.in_prime_field(c) {
                terms.push(monomial(c.index(), var, i));
                continue;
            }
            let cs = k.format(c);
            let power = match i {
                0 => None,
                1 => Some(var.to_string()),
                _ => Some(format!("{var}^{i}")),
            };
            terms.push(match power {
                None => cs,
                Some(pw) if k.term_count(c) > 1 => format!("({cs})*{pw}"),
                Some(pw) => format!("{cs}*{pw}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in('x'))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({:?}: {})", self.field, self)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| k.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(k, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| k.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(k, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let k = &self.field;
        Poly::from_coeffs(k, self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let k = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(k);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::from_coeffs(k, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn division_identity() {
        let k = f7();
        let a = Poly::from_ints(&k, &[3, 0, 5, 1, 6, 2]);
        let b = Poly::from_ints(&k, &[1, 4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let k = f7();
        let common = Poly::from_ints(&k, &[2, 1]);
        let a = &common * &Poly::from_ints(&k, &[1, 0, 1]);
        let b = &common * &Poly::from_ints(&k, &[5, 3]);
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn frobenius_power_matches_pow() {
        let k = Field::new(3, 2).unwrap();
        let t = k.generator().unwrap();
        let a = Poly::from_coeffs(&k, vec![t, Elem::ONE, k.add(t, Elem::ONE)]);
        assert_eq!(a.frobenius_power(), a.pow(3));
    }

    #[test]
    fn canonical_printing() {
        let k = Field::prime(5).unwrap();
        let a = Poly::from_ints(&k, &[4, 0, 2, 0, 0, 1]);
        assert_eq!(a.to_string(), "x^5 + 2*x^2 + 4");
        assert_eq!(Poly::zero(&k).to_string(), "0");
        assert_eq!(Poly::from_ints(&k, &[0, 1]).to_string(), "x");
        let k9 = Field::new(3, 2).unwrap();
        let t = k9.generator().unwrap();
        let b = Poly::from_coeffs(&k9, vec![k9.add(t, Elem::ONE), t, k9.add(t, Elem::ONE)]);
        assert_eq!(b.to_string(), "(t + 1)*x^2 + t*x + t + 1");
    }

    #[test]
    fn compose_with_linear() {
        let k = f7();
        let f = Poly::from_ints(&k, &[0, -1, 0, 1]);
        let g = Poly::from_ints(&k, &[1, 1]);
        // (x+1)^3 - (x+1) = x^3 + 3x^2 + 2x
        assert_eq!(f.compose(&g), Poly::from_ints(&k, &[0, 2, 3, 1]));
    }
}
