//! Explicit etale covers `t = b(x) y` and their minimal degree.
//!
//! With `h = f^{(p-1)/2}` and `H' = h`, let `s` be the p-th root of `H` in
//! `F_q[x]/(f)` and `H_1 = H - s^p`. Then `f^{(p+1)/2}` divides `H_1` and
//! `t = H_1 / f^{(p+1)/2} * y` satisfies `dt = c dx/y`, of degree
//! `2 deg H_1 - (2g + 1) p`, which is minimal.

use crate::algebra::{antiderivative, pth_root_in_quotient, splitting_field, Elem, Poly};
use crate::cartier::{admissible_degrees, minimal_degree_linalg, require_cover};
use crate::curve::{AffineFunction, CoverVerdict, HyperellipticCurve};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CoverCertificate {
    pub curve: HyperellipticCurve,
    pub t: AffineFunction,
    pub degree: u64,
    /// `dt = c dx/y`.
    pub dt_constant: Elem,
    pub minimal: bool,
}

impl CoverCertificate {
    fn certify(curve: &HyperellipticCurve, t: AffineFunction, minimal: bool) -> CoverCertificate {
        match curve.verify_etale_cover(&t) {
            CoverVerdict::Accepted { degree, constant } => CoverCertificate {
                curve: curve.clone(),
                t,
                degree,
                dt_constant: constant,
                minimal,
            },
            CoverVerdict::Rejected(r) => panic!("constructed function is not a cover: {}", r.describe()),
        }
    }
}

/// `H` with `H' = f^{(p-1)/2}` and zero constant term.
pub fn build_h(curve: &HyperellipticCurve) -> Result<Poly> {
    require_cover(curve)?;
    antiderivative(curve.half_power()).map_err(|e| Error::NoCover(e.to_string()))
}

/// `H_1 = H - s^p` with `s^p = H (mod f)`.
pub fn build_h1(curve: &HyperellipticCurve, h: &Poly) -> Result<Poly> {
    let f = curve.f();
    let s = pth_root_in_quotient(&h.rem(f), f)?;
    let h1 = h - &s.frobenius_power();
    assert!(
        f.pow(curve.p().div_ceil(2)).divides(&h1),
        "f^((p+1)/2) does not divide H_1"
    );
    assert_eq!(&h1.derivative(), curve.half_power(), "H_1' != h");
    Ok(h1)
}

fn h1_of(curve: &HyperellipticCurve) -> Result<Poly> {
    build_h1(curve, &build_h(curve)?)
}

/// The minimal-degree cover `t = b(x) y` with `b` monic.
pub fn build_cover(curve: &HyperellipticCurve) -> Result<CoverCertificate> {
    let h1 = h1_of(curve)?;
    let p = curve.p();
    let b = h1
        .exact_div(&curve.f().pow(p.div_ceil(2)))
        .expect("divisibility checked in build_h1")
        .monic();
    let expected = 2 * h1.degree().unwrap() as u64 - (2 * curve.genus() as u64 + 1) * p;
    let cert = CoverCertificate::certify(curve, AffineFunction::from_y_part(b), true);
    assert_eq!(cert.degree, expected);
    Ok(cert)
}

/// `2 deg H_1 - (2g + 1) p`.
pub fn minimal_degree_explicit(curve: &HyperellipticCurve) -> Result<u64> {
    let h1 = h1_of(curve)?;
    Ok(2 * h1.degree().unwrap() as u64 - (2 * curve.genus() as u64 + 1) * curve.p())
}

/// A cover of degree `m = np`: the minimal cover plus `z^p` where `z` has a
/// pole of order exactly `n` at infinity.
pub fn build_cover_of_degree(curve: &HyperellipticCurve, m: u64) -> Result<CoverCertificate> {
    let p = curve.p();
    if !m.is_multiple_of(p) || !admissible_degrees(curve, m)?.contains(&m) {
        return Err(Error::NotAdmissible { degree: m });
    }
    let base = build_cover(curve)?;
    if m == base.degree {
        return Ok(base);
    }
    let k = curve.field();
    let n = m / p;
    let g = curve.genus() as u64;
    let t = if n.is_multiple_of(2) {
        let zp = Poly::monomial(k, k.one(), (n / 2 * p) as usize);
        base.t.add(&AffineFunction::from_x_part(zp))
    } else {
        debug_assert!(n > 2 * g - 1);
        // (x^e y)^p = x^{ep} f^{(p-1)/2} y
        let e = (n - 2 * g - 1) / 2;
        let zp = curve.half_power().shift((e * p) as usize);
        base.t.add(&AffineFunction::from_y_part(zp))
    };
    let cert = CoverCertificate::certify(curve, t, false);
    assert_eq!(cert.degree, m);
    Ok(cert)
}

/// Whether the minimal degree is below `(2g - 1) p`, i.e. `deg H_1 < 2gp`.
///
/// Over a splitting field of `f` this also checks that the `x^{2gp}`
/// coefficient of `H_1` equals `-sum_{f(u)=0} H(u) / f'(u)^p`, and that `H_1`
/// agrees with `H - sum H(u) l_u(x)^p` for the Lagrange basis `l_u`.
pub fn degeneration_sum_check(curve: &HyperellipticCurve) -> Result<bool> {
    let h = build_h(curve)?;
    let h1 = build_h1(curve, &h)?;
    let top = 2 * curve.genus() * curve.p() as usize;
    let degenerate = h1.degree().is_none_or(|d| d < top);

    let split = splitting_field(curve.f())?;
    let big = split.field();
    let emb = &split.embedding;
    let (f, h_big, h1_big) = (emb.map_poly(curve.f()), emb.map_poly(&h), emb.map_poly(&h1));
    let df = f.derivative();
    let p = curve.p();
    let mut sum = big.zero();
    let mut lagrange = h_big.clone();
    for &u in &split.roots {
        let hu = h_big.eval(u);
        let fpu = big.pow(df.eval(u), p);
        sum = big.add(sum, big.div(hu, fpu));
        let linear = Poly::from_coeffs(big, vec![big.neg(u), big.one()]);
        let basis = f
            .exact_div(&linear)
            .expect("u is a root")
            .scale(big.inv(df.eval(u)).expect("f is squarefree"));
        lagrange = &lagrange - &basis.pow(p).scale(hu);
    }
    assert_eq!(h1_big.coeff(top), big.neg(sum), "degeneration sum mismatch");
    assert_eq!(lagrange, h1_big, "Lagrange correction disagrees with the quotient-ring root");
    assert_eq!(degenerate, sum.is_zero());
    Ok(degenerate)
}

/// `(linear algebra, explicit construction)` minimal degrees.
pub fn minimal_degrees(curve: &HyperellipticCurve) -> Result<(u64, u64)> {
    Ok((minimal_degree_linalg(curve)?, minimal_degree_explicit(curve)?))
}
