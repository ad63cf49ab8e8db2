//! The Cartier operator on `Omega(mP)` as explicit semilinear matrices.
//!
//! Matrices store the pre-Frobenius entries: column `j` holds `a_ij` with
//! `C(e_j) = sum_i F^{-1}(a_ij) e_i`. Rank and span computations are done on
//! these entries directly, since entrywise Frobenius preserves both.

use std::fmt;

use crate::algebra::{Elem, Poly};
use crate::curve::{BasisForm, HyperellipticCurve, MeroForm};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// `floor(m / p)`.
pub fn iota(m: i64, p: u64) -> i64 {
    m.div_euclid(p as i64)
}

/// The involution `n -> -n`, `-n - 2` or `-n - 1` according to `n mod p`.
pub fn sigma(n: i64, p: u64) -> i64 {
    let p = p as i64;
    if n.rem_euclid(p) == 0 {
        -n
    } else if (n + 1).rem_euclid(p) == 0 {
        -n - 2
    } else {
        -n - 1
    }
}

/// Applies the Cartier operator without the final `F^{-1}`: returns `(u', w')`
/// with `C(u dx/y + w dx) = F^{-1}(u') dx/y + F^{-1}(w') dx` coefficientwise.
fn cartier_raw(curve: &HyperellipticCurve, u: &Poly, w: &Poly) -> (Poly, Poly) {
    let k = curve.field();
    let p = curve.p() as usize;
    let uh = u * curve.half_power();
    let gather = |src: &Poly| -> Poly {
        let n = src.degree().map_or(0, |d| (d + 1) / p);
        Poly::from_coeffs(k, (1..=n).map(|i| src.coeff(i * p - 1)).collect())
    };
    (gather(&uh), gather(w))
}

/// `C(omega)`, a form in `Omega(iota(m) P)` when `omega` lies in `Omega(mP)`.
pub fn cartier_of_form(curve: &HyperellipticCurve, form: &MeroForm) -> Result<MeroForm> {
    let m = form.pole_bound();
    if m > 0 {
        return Err(Error::PositivePoleBound(m));
    }
    if form.valuation(curve).is_some_and(|v| v < m) {
        return Err(Error::PoleBoundViolated { bound: m });
    }
    let k = curve.field();
    let (u, w) = cartier_raw(curve, &form.u, &form.w);
    MeroForm::new(
        curve,
        iota(m, curve.p()),
        u.map_coeffs(k, |c| k.frob_inv(c)),
        w.map_coeffs(k, |c| k.frob_inv(c)),
    )
}

/// `C : Omega(m_dom P) -> Omega(m_cod P)` with `m_cod = iota(m_dom)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub m_dom: i64,
    pub m_cod: i64,
    pub dom_basis: Vec<BasisForm>,
    pub cod_basis: Vec<BasisForm>,
    pub matrix: Matrix,
}

impl SemilinearMap {
    /// Image of the vector with coordinates `v`: `F^{-1}(A v)`.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let k = self.matrix.field();
        self.matrix.mul_vec(v).into_iter().map(|e| k.frob_inv(e)).collect()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.column_span()
    }
}

pub fn cartier_matrix(curve: &HyperellipticCurve, m: i64) -> Result<SemilinearMap> {
    if m > 0 {
        return Err(Error::PositivePoleBound(m));
    }
    let k = curve.field();
    let m_cod = iota(m, curve.p());
    let dom_basis = curve.omega_basis(m);
    let cod_basis = curve.omega_basis(m_cod);
    let mut matrix = Matrix::zeros(k, cod_basis.len(), dom_basis.len());
    for (j, b) in dom_basis.iter().enumerate() {
        let (u, w) = match *b {
            BasisForm::DxOverY(n) => (Poly::monomial(k, k.one(), n as usize - 1), Poly::zero(k)),
            BasisForm::Dx(e) => (Poly::zero(k), Poly::monomial(k, k.one(), e as usize)),
        };
        let (u, w) = cartier_raw(curve, &u, &w);
        for (i, c) in cod_basis.iter().enumerate() {
            let v = match *c {
                BasisForm::DxOverY(n) => u.coeff(n as usize - 1),
                BasisForm::Dx(e) => w.coeff(e as usize),
            };
            matrix.set(i, j, v);
        }
        debug_assert!(u.degree().is_none_or(|d| d < curve.omega_dim(m_cod)));
    }
    Ok(SemilinearMap {
        m_dom: m,
        m_cod,
        dom_basis,
        cod_basis,
        matrix,
    })
}

/// The Cartier-Manin matrix on `Omega(0)`.
pub fn cartier_manin(curve: &HyperellipticCurve) -> Matrix {
    cartier_matrix(curve, 0).expect("m = 0").matrix
}

/// Rank of `A^{(p^{g-1})} ... A^{(p)} A`, the matrix of `C^g` up to `F^{-g}`.
pub fn p_rank(curve: &HyperellipticCurve) -> usize {
    let a = cartier_manin(curve);
    (1..curve.genus() as u32)
        .fold(a.clone(), |acc, k| a.frobenius_twist(k).mul(&acc))
        .rank()
}

/// Rank of `A A^{(p)} ... A^{(p^{g-1})}`, the stable rank of the dual
/// (Hasse-Witt) iterate.
pub fn p_rank_dual(curve: &HyperellipticCurve) -> usize {
    let a = cartier_manin(curve);
    (1..curve.genus() as u32)
        .fold(a.clone(), |acc, k| acc.mul(&a.frobenius_twist(k)))
        .rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Ordinary,
    /// p-rank strictly between 0 and g.
    Intermediate(usize),
    /// Cartier nilpotent on `Omega(0)` but not zero.
    Supersingular,
    /// Cartier zero on `Omega(0)`.
    Superspecial,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Ordinary => "ordinary",
            Classification::Intermediate(_) => "intermediate",
            Classification::Supersingular => "supersingular",
            Classification::Superspecial => "superspecial",
        }
    }

    /// Supersingular in the broad sense: p-rank 0.
    pub fn is_supersingular(self) -> bool {
        matches!(self, Classification::Supersingular | Classification::Superspecial)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Intermediate(s) => write!(f, "intermediate({s})"),
            other => f.write_str(other.name()),
        }
    }
}

pub fn classify(curve: &HyperellipticCurve) -> Classification {
    if cartier_manin(curve).is_zero() {
        return Classification::Superspecial;
    }
    match p_rank(curve) {
        0 => Classification::Supersingular,
        s if s == curve.genus() => Classification::Ordinary,
        s => Classification::Intermediate(s),
    }
}

/// Why no etale cover `X \ {P} -> A^1` exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    PDividesTwoGMinusOne,
    Ordinary,
    /// `c_{ip-1} != 0`.
    NonzeroCoefficient { index: usize },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::PDividesTwoGMinusOne => f.write_str("p divides 2g−1"),
            Obstruction::Ordinary => f.write_str("curve is ordinary"),
            Obstruction::NonzeroCoefficient { index } => write!(f, "coefficient c_{index} of f^((p-1)/2) is nonzero"),
        }
    }
}

/// First `i` in `1..=g` with `c_{ip-1} != 0`.
pub fn first_nonzero_criterion_coefficient(curve: &HyperellipticCurve) -> Option<usize> {
    let p = curve.p() as usize;
    (1..=curve.genus())
        .map(|i| i * p - 1)
        .find(|&n| !curve.c(n).is_zero())
}

/// `c_{ip-1} = 0` for `i = 1..g`.
pub fn cover_exists(curve: &HyperellipticCurve) -> bool {
    let exists = first_nonzero_criterion_coefficient(curve).is_none();
    if exists {
        debug_assert!(!(2 * curve.genus() as u64 - 1).is_multiple_of(curve.p()));
        debug_assert!(classify(curve) != Classification::Ordinary);
    }
    exists
}

/// `None` when a cover exists; otherwise the most informative reason.
pub fn obstruction(curve: &HyperellipticCurve) -> Option<Obstruction> {
    let index = first_nonzero_criterion_coefficient(curve)?;
    if (2 * curve.genus() as u64 - 1).is_multiple_of(curve.p()) {
        Some(Obstruction::PDividesTwoGMinusOne)
    } else if classify(curve) == Classification::Ordinary {
        Some(Obstruction::Ordinary)
    } else {
        Some(Obstruction::NonzeroCoefficient { index })
    }
}

pub(crate) fn require_cover(curve: &HyperellipticCurve) -> Result<()> {
    match obstruction(curve) {
        None => Ok(()),
        Some(o) => Err(Error::NoCover(o.to_string())),
    }
}

/// `dim Omega(iota(m) P) - rank C_{mP}`.
pub fn coker_dim(curve: &HyperellipticCurve, m: i64) -> Result<usize> {
    let c = cartier_matrix(curve, m)?;
    Ok(c.cod_basis.len() - c.rank())
}

/// Least `np` such that `Omega(nP)` lies in the image of `C_{(1-2g)P}`.
pub fn minimal_degree_linalg(curve: &HyperellipticCurve) -> Result<u64> {
    require_cover(curve)?;
    let g = curve.genus() as i64;
    let c = cartier_matrix(curve, 1 - 2 * g)?;
    let image = c.image();
    let ambient = c.cod_basis.len();
    let regular_below = |n: i64| {
        let idx = c.cod_basis.iter().enumerate().filter_map(|(i, b)| match *b {
            BasisForm::DxOverY(k) if 2 * g - 2 * k as i64 >= n => Some(i),
            _ => None,
        });
        Subspace::coordinate(curve.field(), ambient, idx)
    };
    let n = (1..=2 * g - 1)
        .find(|&n| image.contains_subspace(&regular_below(n)))
        .expect("Omega((2g-1)P) = 0 is always contained");
    assert!(curve.is_gap(n as u64), "minimal n = {n} is not a gap");
    Ok(n as u64 * curve.p())
}

/// `{n0 p} + {np : n0 < n <= bound/p, n not a gap}` in increasing order.
pub fn admissible_degrees(curve: &HyperellipticCurve, bound: u64) -> Result<Vec<u64>> {
    let p = curve.p();
    let n0 = minimal_degree_linalg(curve)? / p;
    Ok((n0..=bound / p)
        .filter(|&n| n == n0 || !curve.is_gap(n))
        .map(|n| n * p)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn curve(p: u64, m: u32, f: &str) -> HyperellipticCurve {
        HyperellipticCurve::parse(p, m, f).unwrap()
    }

    #[test]
    fn integer_maps() {
        assert_eq!(iota(-3, 5), -1);
        assert_eq!(iota(7, 5), 1);
        assert_eq!(sigma(5, 5), -5);
        assert_eq!(sigma(4, 5), -6);
        assert_eq!(sigma(3, 5), -4);
        for p in [3, 5, 7] {
            for n in -100..=100 {
                assert_eq!(sigma(sigma(n, p), p), n);
            }
        }
    }

    #[test]
    fn half_power_examples() {
        let c = curve(7, 1, "x^3 - x");
        assert_eq!(c.half_power(), &Poly::from_ints(c.field(), &[0, 0, 0, -1, 0, 3, 0, -3, 0, 1]));
        assert!(c.c(6).is_zero());
        let c3 = curve(3, 1, "x^5 + x^2 + 1");
        assert_eq!(c3.half_power(), c3.f());
    }

    #[test]
    fn cartier_on_simple_forms() {
        let c = curve(7, 1, "x^3 - x");
        let k = c.field().clone();
        let dx = MeroForm::new(&c, -3, Poly::zero(&k), Poly::one(&k)).unwrap();
        assert!(cartier_of_form(&c, &dx).unwrap().is_zero());
        let big = curve(5, 1, "x^9 + 2*x + 1");
        let k5 = big.field().clone();
        let form = MeroForm::new(&big, -11, Poly::zero(&k5), Poly::monomial(&k5, k5.one(), 4)).unwrap();
        let image = cartier_of_form(&big, &form).unwrap();
        assert_eq!(image.w, Poly::one(&k5));
        assert!(image.u.is_zero());
        let omega1 = MeroForm::new(&c, 0, Poly::one(&k), Poly::zero(&k)).unwrap();
        assert!(cartier_of_form(&c, &omega1).unwrap().is_zero());
    }

    #[test]
    fn rejects_positive_bounds() {
        let c = curve(7, 1, "x^3 - x");
        assert_eq!(cartier_matrix(&c, 1), Err(Error::PositivePoleBound(1)));
    }

    #[test]
    fn supersingular_elliptic() {
        let c = curve(7, 1, "x^3 - x");
        let a = cartier_manin(&c);
        assert_eq!((a.rows(), a.cols()), (1, 1));
        assert!(a.is_zero());
        assert_eq!(p_rank(&c), 0);
        assert!(cover_exists(&c));
        assert_eq!(minimal_degree_linalg(&c).unwrap(), 7);
        assert_eq!(admissible_degrees(&c, 35).unwrap(), vec![7, 14, 21, 28, 35]);
    }

    #[test]
    fn legendre_two_over_f5_is_ordinary() {
        let c = curve(5, 1, "x*(x-1)*(x-2)");
        assert_eq!(p_rank(&c), 1);
        assert_eq!(classify(&c), Classification::Ordinary);
        assert!(!cover_exists(&c));
        assert_eq!(coker_dim(&c, 0).unwrap(), 0);
        assert_eq!(obstruction(&c), Some(Obstruction::Ordinary));
    }

    #[test]
    fn genus_two_in_characteristic_three_has_no_cover() {
        let c = curve(3, 1, "x^5 + x^2 + 1");
        assert!(!cover_exists(&c));
        assert_eq!(obstruction(&c), Some(Obstruction::PDividesTwoGMinusOne));
        assert!(matches!(minimal_degree_linalg(&c), Err(Error::NoCover(_))));
    }

    #[test]
    fn p5_family_members() {
        let c = curve(5, 1, "x + x^2 + 2*x^3 + x^5");
        let m = cartier_matrix(&c, -3).unwrap();
        let k = c.field();
        assert_eq!(m.m_cod, -1);
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (2, 4));
        let col = |j: usize| m.matrix.column(j);
        assert_eq!(col(0), vec![k.zero(); 2]);
        assert_eq!(col(3), vec![k.zero(); 2]);
        assert_eq!(col(1), vec![k.from_i64(2), k.from_i64(-1)]);
        assert_eq!(col(2), vec![k.from_i64(1), k.from_i64(2)]);
        assert_eq!(p_rank(&c), 1);
        assert_eq!(classify(&c), Classification::Intermediate(1));
        assert_eq!(coker_dim(&c, 0).unwrap(), 1);
        assert_eq!(coker_dim(&c, -3).unwrap(), 1);
        assert_eq!(minimal_degree_linalg(&c).unwrap(), 15);
        assert_eq!(admissible_degrees(&c, 30).unwrap(), vec![15, 20, 25, 30]);

        let s = curve(5, 1, "x + x^5");
        assert!(cartier_manin(&s).is_zero());
        assert_eq!(classify(&s), Classification::Superspecial);
        assert_eq!(minimal_degree_linalg(&s).unwrap(), 5);
        assert_eq!(admissible_degrees(&s, 25).unwrap(), vec![5, 10, 20, 25]);
    }

    #[test]
    fn p7_family_special_points() {
        let c10 = curve(7, 1, "1 + x^5");
        assert_eq!(classify(&c10), Classification::Supersingular);
        assert_eq!(minimal_degree_linalg(&c10).unwrap(), 7);
        let c01 = curve(7, 1, "x + x^5");
        assert_eq!(minimal_degree_linalg(&c01).unwrap(), 21);
    }

    #[test]
    fn both_orderings_agree_over_extension() {
        let k = Field::new(5, 2).unwrap();
        let t = k.generator().unwrap();
        for a in [t, k.add(t, k.one()), k.from_i64(3)] {
            let f = Poly::from_coeffs(
                &k,
                vec![k.zero(), k.one(), a, k.mul(k.from_i64(2), k.square(a)), k.zero(), k.one()],
            );
            let Ok(c) = HyperellipticCurve::new(f) else { continue };
            assert_eq!(p_rank(&c), p_rank_dual(&c));
        }
    }
}
