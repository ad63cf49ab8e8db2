//! Hyperelliptic models `y^2 = f(x)` pointed at infinity.
//!
//! With `deg f = 2g + 1` the point `P` at infinity has `v_P(x) = -2` and
//! `v_P(y) = -(2g + 1)`. Functions regular outside `P` are exactly
//! `a(x) + b(x) y`, and differentials regular outside `P` are
//! `u(x) dx/y + w(x) dx`; everything below works with those two shapes.

use crate::algebra::{is_squarefree, parse_poly, Elem, Field, Poly};
use crate::cartier::iota;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HyperellipticCurve {
    f: Poly,
    genus: usize,
    half_power: Poly,
}

impl HyperellipticCurve {
    pub fn new(f: Poly) -> Result<HyperellipticCurve> {
        let k = f.field();
        if k.characteristic() == 2 {
            return Err(Error::CharTwo);
        }
        let d = f.degree().unwrap_or(0);
        if d.is_multiple_of(2) {
            return Err(Error::EvenDegree(d));
        }
        if d < 3 {
            return Err(Error::DegreeTooSmall(d));
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_squarefree(&f) {
            return Err(Error::NotSquarefree);
        }
        let half_power = f.pow((k.characteristic() - 1) / 2);
        Ok(HyperellipticCurve {
            genus: (d - 1) / 2,
            f,
            half_power,
        })
    }

    /// Parses `f` in the variable `x` over `F_{p^m}`.
    pub fn parse(p: u64, m: u32, f: &str) -> Result<HyperellipticCurve> {
        let k = Field::new(p, m)?;
        HyperellipticCurve::new(parse_poly(f, &k, 'x')?)
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn p(&self) -> u64 {
        self.field().characteristic()
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `h = f^{(p-1)/2}`.
    pub fn half_power(&self) -> &Poly {
        &self.half_power
    }

    /// Coefficient `c_n` of `x^n` in `h`.
    pub fn c(&self, n: usize) -> Elem {
        self.half_power.coeff(n)
    }

    /// Gap sequence `G(P) = {1, 3, ..., 2g - 1}` of the Weierstrass point at infinity.
    pub fn gaps(&self) -> Vec<u64> {
        (1..=self.genus as u64).map(|i| 2 * i - 1).collect()
    }

    pub fn is_gap(&self, n: u64) -> bool {
        n % 2 == 1 && n < 2 * self.genus as u64
    }

    /// `-v_P(t) = max(2 deg a, 2 deg b + 2g + 1)`.
    pub fn pole_order(&self, t: &AffineFunction) -> Result<u64> {
        let from_a = t.a.degree().map(|d| 2 * d as u64);
        let from_b = t.b.degree().map(|d| 2 * d as u64 + 2 * self.genus as u64 + 1);
        from_a.max(from_b).ok_or(Error::ZeroFunction)
    }

    /// `dt = (A + B y) dx/y` with `A = b' f + b f'/2` and `B = a'`.
    pub fn differential(&self, t: &AffineFunction) -> Differential {
        let k = self.field();
        let half = k.inv(k.from_u64(2)).unwrap();
        let a_part = &(&t.b.derivative() * &self.f) + &(&t.b * &self.f.derivative()).scale(half);
        Differential {
            a: a_part,
            b: t.a.derivative(),
        }
    }

    /// Accepts `t` iff `dt = c dx/y` for a nonzero constant `c`: then `dt` is
    /// regular and nowhere vanishing outside `P`, so `t` is an etale cover of
    /// the affine line of degree `-v_P(t)`.
    pub fn verify_etale_cover(&self, t: &AffineFunction) -> CoverVerdict {
        let dt = self.differential(t);
        if !dt.b.is_zero() {
            return CoverVerdict::Rejected(Rejection::DxComponent);
        }
        if dt.a.is_zero() {
            return CoverVerdict::Rejected(Rejection::ExactlyZero);
        }
        if !dt.a.is_constant() {
            return CoverVerdict::Rejected(Rejection::ZerosAwayFromP);
        }
        let degree = self.pole_order(t).expect("dt != 0 forces t != 0");
        CoverVerdict::Accepted {
            degree,
            constant: dt.a.coeff(0),
        }
    }

    /// `(l(nP), i(nP), G(P))` from the gap sequence and Riemann-Roch.
    pub fn rr_dimensions(&self, n: i64) -> RiemannRoch {
        let g = self.genus as i64;
        let gaps = self.gaps();
        let l = if n < 0 {
            0
        } else {
            n + 1 - g + gaps.iter().filter(|&&x| x as i64 > n).count() as i64
        };
        RiemannRoch {
            l,
            i: l - n + g - 1,
            gaps,
        }
    }

    /// `delta(nP) = l(nP) - l(iota(n) P)`.
    pub fn delta_dim(&self, n: i64) -> i64 {
        self.rr_dimensions(n).l - self.rr_dimensions(iota(n, self.p())).l
    }

    /// Canonical basis of `Omega(mP)`: the forms `x^{n-1} dx/y` with
    /// `v_P = 2g - 2n >= m`, then `x^j dx` with `v_P = -3 - 2j >= m`.
    pub fn omega_basis(&self, m: i64) -> Vec<BasisForm> {
        let (nu, nw) = omega_counts(self.genus, m);
        (1..=nu as u32)
            .map(BasisForm::DxOverY)
            .chain((0..nw as u32).map(BasisForm::Dx))
            .collect()
    }

    pub fn omega_dim(&self, m: i64) -> usize {
        let (nu, nw) = omega_counts(self.genus, m);
        nu + nw
    }
}

fn omega_counts(genus: usize, m: i64) -> (usize, usize) {
    let g = genus as i64;
    let nu = (2 * g - m).div_euclid(2).max(0) as usize;
    let nw = ((-(m + 3)).div_euclid(2) + 1).max(0) as usize;
    (nu, nw)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannRoch {
    pub l: i64,
    pub i: i64,
    pub gaps: Vec<u64>,
}

/// A function `a(x) + b(x) y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFunction {
    pub a: Poly,
    pub b: Poly,
}

impl AffineFunction {
    pub fn new(a: Poly, b: Poly) -> AffineFunction {
        debug_assert_eq!(a.field(), b.field());
        AffineFunction { a, b }
    }

    pub fn from_x_part(a: Poly) -> AffineFunction {
        let b = Poly::zero(a.field());
        AffineFunction { a, b }
    }

    pub fn from_y_part(b: Poly) -> AffineFunction {
        let a = Poly::zero(b.field());
        AffineFunction { a, b }
    }

    pub fn x(field: &Field) -> AffineFunction {
        AffineFunction::from_x_part(Poly::x(field))
    }

    pub fn y(field: &Field) -> AffineFunction {
        AffineFunction::from_y_part(Poly::one(field))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, other: &AffineFunction) -> AffineFunction {
        AffineFunction::new(&self.a + &other.a, &self.b + &other.b)
    }

    pub fn scale(&self, c: Elem) -> AffineFunction {
        AffineFunction::new(self.a.scale(c), self.b.scale(c))
    }

    pub fn add_constant(&self, d: Elem) -> AffineFunction {
        let k = self.a.field();
        AffineFunction::new(&self.a + &Poly::constant(k, d), self.b.clone())
    }
}

/// The pair `(A, B)` with `dt = (A + B y) dx/y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub a: Poly,
    pub b: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// `B != 0`: `dt` has a `dx`-component and hence a pole at `P` of the wrong shape.
    DxComponent,
    /// `dt = 0`: `t` is a p-th power (or constant).
    ExactlyZero,
    /// `A` is a nonconstant polynomial: `dt` vanishes at some affine point.
    ZerosAwayFromP,
}

impl Rejection {
    pub fn describe(self) -> &'static str {
        match self {
            Rejection::DxComponent => "dt has a nonzero dx component (B != 0)",
            Rejection::ExactlyZero => "dt = 0",
            Rejection::ZerosAwayFromP => "dt vanishes away from P (A is not constant)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Accepted { degree: u64, constant: Elem },
    Rejected(Rejection),
}

impl CoverVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CoverVerdict::Accepted { .. })
    }

    pub fn degree(&self) -> Option<u64> {
        match *self {
            CoverVerdict::Accepted { degree, .. } => Some(degree),
            CoverVerdict::Rejected(_) => None,
        }
    }
}

/// A basis element of `Omega(mP)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisForm {
    /// `omega_n = x^{n-1} dx/y`, `n >= 1`.
    DxOverY(u32),
    /// `x^j dx`.
    Dx(u32),
}

impl BasisForm {
    pub fn label(self) -> String {
        match self {
            BasisForm::DxOverY(n) => format!("dx/y·x^{}", n - 1),
            BasisForm::Dx(j) => format!("dx·x^{j}"),
        }
    }

    pub fn valuation(self, genus: usize) -> i64 {
        match self {
            BasisForm::DxOverY(n) => 2 * genus as i64 - 2 * n as i64,
            BasisForm::Dx(j) => -3 - 2 * j as i64,
        }
    }
}

/// The differential `u(x) dx/y + w(x) dx`, declared to lie in `Omega(mP)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeroForm {
    pole_bound: i64,
    pub u: Poly,
    pub w: Poly,
}

impl MeroForm {
    pub fn new(curve: &HyperellipticCurve, pole_bound: i64, u: Poly, w: Poly) -> Result<MeroForm> {
        let form = MeroForm { pole_bound, u, w };
        if !form.valuation(curve).is_none_or(|v| v >= pole_bound) {
            return Err(Error::PoleBoundViolated { bound: pole_bound });
        }
        Ok(form)
    }

    /// Form with the given coordinates in [`HyperellipticCurve::omega_basis`].
    pub fn from_coordinates(curve: &HyperellipticCurve, pole_bound: i64, coords: &[Elem]) -> MeroForm {
        let k = curve.field();
        let basis = curve.omega_basis(pole_bound);
        assert_eq!(basis.len(), coords.len(), "coordinate vector has wrong length");
        let mut u = vec![Elem::ZERO; basis.len()];
        let mut w = vec![Elem::ZERO; basis.len()];
        for (b, &c) in basis.iter().zip(coords) {
            match *b {
                BasisForm::DxOverY(n) => u[n as usize - 1] = c,
                BasisForm::Dx(j) => w[j as usize] = c,
            }
        }
        MeroForm {
            pole_bound,
            u: Poly::from_coeffs(k, u),
            w: Poly::from_coeffs(k, w),
        }
    }

    pub fn coordinates(&self, curve: &HyperellipticCurve) -> Vec<Elem> {
        curve
            .omega_basis(self.pole_bound)
            .iter()
            .map(|b| match *b {
                BasisForm::DxOverY(n) => self.u.coeff(n as usize - 1),
                BasisForm::Dx(j) => self.w.coeff(j as usize),
            })
            .collect()
    }

    pub fn pole_bound(&self) -> i64 {
        self.pole_bound
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.w.is_zero()
    }

    /// `v_P` of the form; `None` for the zero form. The two families have
    /// valuations of different parity, so the minimum is attained.
    pub fn valuation(&self, curve: &HyperellipticCurve) -> Option<i64> {
        let g = curve.genus() as i64;
        let from_u = self.u.degree().map(|d| 2 * g - 2 - 2 * d as i64);
        let from_w = self.w.degree().map(|d| -3 - 2 * d as i64);
        match (from_u, from_w) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

impl Differential {
    /// The same differential as a [`MeroForm`] `A dx/y + B dx`.
    pub fn to_form(&self, curve: &HyperellipticCurve) -> MeroForm {
        let pole_bound = MeroForm {
            pole_bound: 0,
            u: self.a.clone(),
            w: self.b.clone(),
        }
        .valuation(curve)
        .unwrap_or(0)
        .min(0);
        MeroForm {
            pole_bound,
            u: self.a.clone(),
            w: self.b.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(p: u64, f: &str) -> HyperellipticCurve {
        HyperellipticCurve::parse(p, 1, f).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(curve(7, "x^3 - x").genus(), 1);
        // f' = 5x^4 + 1 = 1 in F_5, so x^5 + x is squarefree
        assert_eq!(curve(5, "x^5 + x").genus(), 2);
        assert!(matches!(HyperellipticCurve::parse(5, 1, "x^4 + 1"), Err(Error::EvenDegree(4))));
        assert!(matches!(HyperellipticCurve::parse(5, 1, "x^3 - 2*x^2 + x"), Err(Error::NotSquarefree)));
        assert!(matches!(HyperellipticCurve::parse(5, 1, "2*x^3 + 1"), Err(Error::NotMonic)));
        assert!(matches!(HyperellipticCurve::parse(2, 1, "x^3 + x + 1"), Err(Error::CharTwo)));
        assert!(matches!(HyperellipticCurve::parse(5, 1, "x + 1"), Err(Error::DegreeTooSmall(1))));
    }

    #[test]
    fn pole_orders() {
        let c = curve(7, "x^3 - x");
        let k = c.field().clone();
        assert_eq!(c.pole_order(&AffineFunction::x(&k)).unwrap(), 2);
        assert_eq!(c.pole_order(&AffineFunction::y(&k)).unwrap(), 3);
        let t = AffineFunction::from_y_part(Poly::from_ints(&k, &[4, 0, 1]));
        assert_eq!(c.pole_order(&t).unwrap(), 7);
        assert_eq!(
            c.pole_order(&AffineFunction::from_x_part(Poly::zero(&k))),
            Err(Error::ZeroFunction)
        );
    }

    #[test]
    fn differentials() {
        let c = curve(7, "x^3 - x");
        let k = c.field().clone();
        let dx = c.differential(&AffineFunction::x(&k));
        assert!(dx.a.is_zero());
        assert_eq!(dx.b, Poly::one(&k));
        let dy = c.differential(&AffineFunction::y(&k));
        assert_eq!(dy.a, c.f().derivative().scale(k.inv(k.from_i64(2)).unwrap()));
        assert!(dy.b.is_zero());
        let t = AffineFunction::from_y_part(Poly::from_ints(&k, &[4, 0, 1]));
        let dt = c.differential(&t);
        assert_eq!(dt.a, Poly::constant(&k, k.from_i64(5)));
        assert!(dt.b.is_zero());
    }

    #[test]
    fn table_covers_verify() {
        let c7 = curve(7, "x^3 - x");
        let k7 = c7.field().clone();
        let t = AffineFunction::from_y_part(Poly::from_ints(&k7, &[4, 0, 1]));
        assert_eq!(c7.verify_etale_cover(&t).degree(), Some(7));
        assert_eq!(
            c7.verify_etale_cover(&AffineFunction::x(&k7)),
            CoverVerdict::Rejected(Rejection::DxComponent)
        );
        let c5 = curve(5, "x^3 - 1");
        let k5 = c5.field().clone();
        let t = AffineFunction::from_y_part(Poly::x(&k5));
        assert_eq!(c5.verify_etale_cover(&t).degree(), Some(5));
    }

    #[test]
    fn riemann_roch_examples() {
        let c2 = curve(5, "x^5 + x");
        let rr = c2.rr_dimensions(2);
        assert_eq!((rr.l, rr.i), (2, 1));
        assert_eq!(rr.gaps, vec![1, 3]);
        let rr = c2.rr_dimensions(-3);
        assert_eq!((rr.l, rr.i), (0, 4));
        let c1 = curve(5, "x^3 - 1");
        let rr = c1.rr_dimensions(0);
        assert_eq!((rr.l, rr.i), (1, 1));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(curve(5, "x^5 + x").delta_dim(-3), 0);
        assert_eq!(curve(5, "x^3 - 1").delta_dim(10), 8);
        assert_eq!(curve(7, "x^3 - x").delta_dim(0), 0);
    }

    #[test]
    fn omega_basis_counts_match_riemann_roch() {
        for (p, f) in [(5, "x^5 + x"), (7, "x^3 - x"), (3, "x^7 + x + 1")] {
            let c = curve(p, f);
            for m in -12..=(2 * c.genus() as i64) {
                assert_eq!(c.omega_dim(m) as i64, c.rr_dimensions(m).i, "m = {m}");
                for b in c.omega_basis(m) {
                    assert!(b.valuation(c.genus()) >= m);
                }
            }
        }
        let c = curve(5, "x^5 + x");
        let labels: Vec<_> = c.omega_basis(-3).into_iter().map(BasisForm::label).collect();
        assert_eq!(labels, ["dx/y·x^0", "dx/y·x^1", "dx/y·x^2", "dx·x^0"]);
    }

    #[test]
    fn form_bounds() {
        let c = curve(5, "x^5 + x");
        let k = c.field().clone();
        assert!(MeroForm::new(&c, 0, Poly::x(&k), Poly::zero(&k)).is_ok());
        assert_eq!(
            MeroForm::new(&c, 0, Poly::zero(&k), Poly::one(&k)),
            Err(Error::PoleBoundViolated { bound: 0 })
        );
        assert!(MeroForm::new(&c, -3, Poly::zero(&k), Poly::one(&k)).is_ok());
    }
}
