//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the Cartier, cover or elliptic modules; only field and
//! polynomial arithmetic from the library are used.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cartier_covers::algebra::{Elem, Field, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elem(k: &Field, rng: &mut impl Rng) -> Elem {
    Elem::from_index(rng.gen_range(0..k.order()))
}

/// Monic polynomial of exact degree `d` with uniform lower coefficients.
pub fn random_monic(k: &Field, d: usize, rng: &mut impl Rng) -> Poly {
    let mut c: Vec<Elem> = (0..d).map(|_| random_elem(k, rng)).collect();
    c.push(k.one());
    Poly::from_coeffs(k, c)
}

/// Every monic polynomial of degree `d`, by mixed-radix counting.
pub fn all_monic(k: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = k.order();
    (0..q.pow(d as u32)).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(Elem::from_index(idx % q));
            idx /= q;
        }
        c.push(k.one());
        Poly::from_coeffs(k, c)
    })
}

/// Copies a polynomial over a prime field into a larger field of the same
/// characteristic.
pub fn lift_prime(f: &Poly, big: &Field) -> Poly {
    assert_eq!(f.field().degree(), 1);
    f.map_coeffs(big, |c| big.from_u64(c.index()))
}

/// Whether `f` has a repeated root, by evaluating `f` and `f'` on all of
/// `F_{p^2}`. Valid for `deg f <= 5` over `F_p`: a repeated irreducible
/// factor has degree at most 2.
pub fn has_repeated_root(f: &Poly) -> bool {
    let k = f.field();
    assert_eq!(k.degree(), 1);
    assert!(f.degree().unwrap_or(0) <= 5);
    let big = Field::new(k.characteristic(), 2).unwrap();
    let g = lift_prime(f, &big);
    let dg = g.derivative();
    big.elements().any(|u| g.eval(u).is_zero() && dg.eval(u).is_zero())
}

/// `count[a]` = number of `y` with `y^2 = a`.
fn square_counts(k: &Field) -> Vec<u64> {
    let mut count = vec![0u64; k.order() as usize];
    for y in k.elements() {
        count[k.square(y).index() as usize] += 1;
    }
    count
}

/// Projective point count of `y^2 = f(x)`, `f` of odd degree (one point at
/// infinity).
pub fn point_count(f: &Poly) -> u64 {
    let k = f.field();
    assert_eq!(f.degree().unwrap() % 2, 1);
    let sq = square_counts(k);
    1 + k.elements().map(|x| sq[f.eval(x).index() as usize]).sum::<u64>()
}

/// `deg(L(T) mod p)` for `y^2 = f(x)` over `F_p`, genus 1 or 2, from point
/// counts over `F_p` and `F_{p^2}`.
pub fn l_poly_p_rank(f: &Poly) -> usize {
    let k = f.field();
    let p = k.characteristic() as i64;
    assert_eq!(k.degree(), 1);
    let g = (f.degree().unwrap() - 1) / 2;
    let n1 = point_count(f) as i64;
    let c1 = n1 - p - 1;
    let reduce = |v: i64| v.rem_euclid(p) != 0;
    match g {
        1 => usize::from(reduce(c1)),
        2 => {
            let big = Field::new(p as u64, 2).unwrap();
            let n2 = point_count(&lift_prime(f, &big)) as i64;
            // L(T) = 1 + c1 T + c2 T^2 + p c1 T^3 + p^2 T^4 with
            // N_1 = p + 1 + c1 and N_2 = p^2 + 1 + 2 c2 - c1^2.
            let twice_c2 = n2 - p * p - 1 + c1 * c1;
            assert_eq!(twice_c2 % 2, 0);
            let c2 = twice_c2 / 2;
            if reduce(c2) {
                2
            } else if reduce(c1) {
                1
            } else {
                0
            }
        }
        _ => panic!("genus {g} not supported"),
    }
}

/// Weierstrass model `y^2 = x^3 + a2 x^2 + a4 x + a6`; `None` if singular.
pub fn weierstrass_j(k: &Field, a2: Elem, a4: Elem, a6: Elem) -> Option<Elem> {
    let c = |v: i64| k.from_i64(v);
    let b2 = k.mul(c(4), a2);
    let b4 = k.mul(c(2), a4);
    let b6 = k.mul(c(4), a6);
    let b8 = k.sub(k.mul(c(4), k.mul(a2, a6)), k.square(a4));
    let c4 = k.sub(k.square(b2), k.mul(c(24), b4));
    let disc = [
        k.neg(k.mul(k.square(b2), b8)),
        k.mul(c(-8), k.pow(b4, 3)),
        k.mul(c(-27), k.square(b6)),
        k.mul(c(9), k.mul(b2, k.mul(b4, b6))),
    ]
    .into_iter()
    .fold(k.zero(), |s, t| k.add(s, t));
    if disc.is_zero() {
        return None;
    }
    Some(k.div(k.pow(c4, 3), disc))
}

/// Supersingular j-invariants over `F_{p^2}`, found by point counting:
/// `E` is supersingular iff `#E(F_{p^2}) = 1 (mod p)`.
///
/// Characteristic 3 uses the full model with an `x^2` term; otherwise `a2 = 0`.
pub fn supersingular_j_by_counting(p: u64) -> (Field, BTreeSet<Elem>) {
    let k = Field::new(p, 2).unwrap();
    let sq = square_counts(&k);
    let a2s: Vec<Elem> = if p == 3 { k.elements().collect() } else { vec![k.zero()] };
    let mut verdict: BTreeMap<Elem, bool> = BTreeMap::new();
    for &a2 in &a2s {
        for a4 in k.elements() {
            for a6 in k.elements() {
                let Some(j) = weierstrass_j(&k, a2, a4, a6) else {
                    continue;
                };
                if verdict.contains_key(&j) {
                    continue;
                }
                let rhs = Poly::from_coeffs(&k, vec![a6, a4, a2, k.one()]);
                let n = 1 + k.elements().map(|x| sq[rhs.eval(x).index() as usize]).sum::<u64>();
                verdict.insert(j, n % p == 1);
            }
        }
    }
    assert_eq!(verdict.len() as u64, k.order(), "every j should occur");
    let ss = verdict.into_iter().filter(|&(_, s)| s).map(|(j, _)| j).collect();
    (k, ss)
}

/// `b' f + b f' / 2`, the coefficient of `dx/y` in `d(b y)`.
pub fn dx_over_y_coefficient(b: &Poly, f: &Poly) -> Poly {
    let k = f.field();
    let half = k.inv(k.from_u64(2)).unwrap();
    &(&b.derivative() * f) + &(b * &f.derivative()).scale(half)
}

/// Whether `t = b y` is an etale cover of the affine line: `d(b y)` must be a
/// nonzero constant multiple of `dx/y`.
pub fn is_cover_by_definition(b: &Poly, f: &Poly) -> bool {
    let a = dx_over_y_coefficient(b, f);
    !a.is_zero() && a.degree() == Some(0)
}

/// Every `b` of degree at most `d` with `d(b y)` a nonzero multiple of
/// `dx/y`, by exhaustive enumeration; `None` if there are more than `limit`
/// candidates.
pub fn covers_up_to(f: &Poly, d: i64, limit: u64) -> Option<Vec<Poly>> {
    let k = f.field();
    if d < 0 {
        return Some(Vec::new());
    }
    let q = k.order();
    let count = q.checked_pow(d as u32 + 1)?;
    if count > limit {
        return None;
    }
    let mut found = Vec::new();
    for mut idx in 1..count {
        let mut c = Vec::with_capacity(d as usize + 1);
        for _ in 0..=d {
            c.push(Elem::from_index(idx % q));
            idx /= q;
        }
        let b = Poly::from_coeffs(k, c);
        if is_cover_by_definition(&b, f) {
            found.push(b);
        }
    }
    Some(found)
}

/// `sum_i binom(m, i)^2 lambda^i` over the prime field, computed directly.
pub fn deuring_direct(k: &Field, m: u64) -> Poly {
    let mut coeffs = Vec::new();
    let mut binom = k.one();
    for i in 0..=m {
        coeffs.push(k.square(binom));
        // binom(m, i + 1) = binom(m, i) (m - i) / (i + 1)
        if i < m {
            binom = k.div(k.mul(binom, k.from_u64(m - i)), k.from_u64(i + 1));
        }
    }
    Poly::from_coeffs(k, coeffs)
}

/// Odd primes up to `n`.
pub fn odd_primes(n: u64) -> Vec<u64> {
    (3..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}
