//! Squarefree and irreducibility tests, distinct-degree factorization, root
//! finding, splitting fields, and the two nonstandard primitives used by the
//! cover construction: formal antiderivatives and p-th roots modulo a
//! squarefree polynomial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{Elem, Field};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// `gcd(f, f') = 1`. Constants count as squarefree.
pub fn is_squarefree(f: &Poly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return true;
    }
    f.gcd(&f.derivative()).is_constant()
}

/// `a^q mod modulus`, computed as `m` successive p-th powers.
fn pow_q_mod(a: &Poly, modulus: &Poly) -> Poly {
    let k = a.field();
    let mut r = a.rem(modulus);
    for _ in 0..k.degree() {
        r = r.frobenius_power().rem(modulus);
    }
    r
}

/// Ben-Or test: `f` of degree `n` is irreducible iff `gcd(x^{q^i} - x, f) = 1`
/// for every `1 <= i <= n/2`.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let k = f.field();
    let x = Poly::x(k);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = pow_q_mod(&h, f);
        if !(&h - &x).gcd(f).is_constant() {
            return false;
        }
    }
    true
}

/// Distinct-degree factorization of a squarefree polynomial: pairs `(d, g_d)`
/// where `g_d` is the product of the monic irreducible factors of degree `d`.
pub fn distinct_degree_factorization(f: &Poly) -> Vec<(usize, Poly)> {
    let k = f.field();
    let x = Poly::x(k);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_q_mod(&h, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((deg, rest));
    }
    out
}

/// Degrees of the irreducible factors of a squarefree polynomial, with multiplicity.
pub fn factor_degrees(f: &Poly) -> Vec<usize> {
    let mut degrees = Vec::new();
    for (d, g) in distinct_degree_factorization(f) {
        let count = g.degree().unwrap() / d;
        degrees.extend(std::iter::repeat_n(d, count));
    }
    degrees
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

/// All roots of `f` in its field of definition, sorted by index.
pub fn roots(f: &Poly) -> Vec<Elem> {
    let k = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = Poly::x(k);
    let split = (&x.pow_mod(k.order(), f) - &x).gcd(f);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    split_linear(&split, &mut rng, &mut out);
    out.sort();
    out
}

fn split_linear(g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Elem>) {
    let k = g.field();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let g = g.monic();
            out.push(k.neg(g.coeff(0)));
            return;
        }
        _ => {}
    }
    let q = k.order();
    if q.is_multiple_of(2) {
        // Characteristic 2: brute force over the field (only used for tiny inputs).
        for e in k.elements() {
            if g.eval(e).is_zero() {
                out.push(e);
            }
        }
        return;
    }
    loop {
        let c = Elem::from_index(rng.gen_range(0..q));
        let a = Poly::from_coeffs(k, vec![c, Elem::ONE]);
        let b = &a.pow_mod((q - 1) / 2, g) - &Poly::one(k);
        let d = b.gcd(g);
        if !d.is_constant() && d.degree() < g.degree() {
            let other = g.exact_div(&d).unwrap();
            split_linear(&d, rng, out);
            split_linear(&other, rng, out);
            return;
        }
    }
}

/// Formal antiderivative with zero constant term.
///
/// Fails when some coefficient sits in a degree `i` with `i + 1 = 0 mod p`.
pub fn antiderivative(h: &Poly) -> Result<Poly> {
    let k = h.field();
    let mut coeffs = vec![Elem::ZERO; h.coeffs().len() + 1];
    for (i, &c) in h.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let n = k.from_u64(i as u64 + 1);
        if n.is_zero() {
            return Err(Error::NoAntiderivative { degree: i });
        }
        coeffs[i + 1] = k.div(c, n);
    }
    Ok(Poly::from_coeffs(k, coeffs))
}

/// The unique `s` with `deg s < deg f` and `s^p = h0 (mod f)`, for squarefree `f`.
///
/// Frobenius on `F_q[x]/(f)` has order `L = lcm(m * deg f_i)` over the
/// irreducible factors `f_i`, so its inverse is the `(L-1)`-fold p-th power.
pub fn pth_root_in_quotient(h0: &Poly, f: &Poly) -> Result<Poly> {
    if !is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    let k = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Poly::zero(k));
    }
    let m = k.degree() as u64;
    let order = factor_degrees(f)
        .into_iter()
        .fold(1u64, |acc, d| lcm_u64(acc, m * d as u64));
    let mut s = h0.rem(f);
    for _ in 1..order {
        s = s.frobenius_power().rem(f);
    }
    Ok(s)
}

/// A field embedding `F_{p^a} -> F_{p^b}` with `a | b`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    image_of_generator: Option<Elem>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if source.characteristic() != target.characteristic()
            || !target.degree().is_multiple_of(source.degree())
        {
            return Err(Error::FieldMismatch);
        }
        let image_of_generator = if source.degree() == 1 {
            None
        } else {
            let modulus = Poly::from_coeffs(
                target,
                source
                    .modulus()
                    .iter()
                    .map(|&c| target.from_u64(c))
                    .collect(),
            );
            Some(
                *roots(&modulus)
                    .first()
                    .expect("the modulus splits in any extension of its degree"),
            )
        };
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            image_of_generator,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, e: Elem) -> Elem {
        match self.image_of_generator {
            None => e,
            Some(gamma) => {
                let t = &self.target;
                self.source
                    .digits(e)
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &d| t.add(t.mul(acc, gamma), t.from_u64(d)))
            }
        }
    }

    pub fn map_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(&self.target, |c| self.map(c))
    }
}

/// A splitting field of a squarefree polynomial together with all its roots.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub embedding: Embedding,
    pub roots: Vec<Elem>,
}

impl SplittingField {
    pub fn field(&self) -> &Field {
        self.embedding.target()
    }
}

pub fn splitting_field(f: &Poly) -> Result<SplittingField> {
    if !is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    let k = f.field();
    let l = factor_degrees(f)
        .into_iter()
        .fold(1u64, |acc, d| lcm_u64(acc, d as u64));
    let big = Field::new(k.characteristic(), k.degree() * l as u32)?;
    let embedding = Embedding::new(k, &big)?;
    let roots = roots(&embedding.map_poly(f));
    debug_assert_eq!(Some(roots.len()), f.degree());
    Ok(SplittingField { embedding, roots })
}
