//! Elliptic curves: the Legendre family, supersingular j-invariants and the
//! degree-p covers of the supersingular table.

use crate::algebra::{parse_poly, roots, Elem, Embedding, Field, Poly};
use crate::cartier::{cover_exists, minimal_degree_linalg};
use crate::covers::build_cover;
use crate::curve::{AffineFunction, CoverVerdict, HyperellipticCurve};
use crate::error::{Error, Result};

/// Curves and covers `b(x) y` reproduced for every odd `p <= 17`.
pub const SUPERSINGULAR_TABLE: &[(u64, &str, &str)] = &[
    (3, "x^3 - x", "1"),
    (5, "x^3 - 1", "x"),
    (7, "x^3 - x", "x^2 + 4"),
    (11, "x^3 - 1", "x^4 + 6*x"),
    (11, "x^3 - x", "x^4 + 6*x^2 + 10"),
    (13, "x^3 + x + 4", "x^5 + 6*x^3 + 11*x^2 + 2*x + 3"),
    (17, "x^3 - 1", "x^7 + 9*x^4 + 11*x"),
    (17, "x^3 + x - 1", "x^7 + 8*x^5 + 9*x^4 + 11*x^3 + 12*x^2 - x + 2"),
];

/// `C(m, i) mod p` for `m < p`.
fn binomials(k: &Field, m: u64) -> Vec<Elem> {
    let mut out = vec![k.one()];
    for i in 1..=m {
        let prev = out[i as usize - 1];
        out.push(k.div(k.mul(prev, k.from_u64(m - i + 1)), k.from_u64(i)));
    }
    out
}

/// `c_n(lambda) = (-1)^n sum_{i=0}^{n} C(m,i) C(m,n-i) lambda^{m-i}` as a
/// polynomial in `lambda` over `k`, for `m = (p-1)/2`.
pub fn deuring_coefficient(k: &Field, n: u64) -> Poly {
    let m = (k.characteristic() - 1) / 2;
    let binom = binomials(k, m);
    let mut coeffs = vec![k.zero(); m as usize + 1];
    for i in 0..=n.min(m) {
        if n - i > m {
            continue;
        }
        let term = k.mul(binom[i as usize], binom[(n - i) as usize]);
        let slot = &mut coeffs[(m - i) as usize];
        *slot = k.add(*slot, term);
    }
    let p = Poly::from_coeffs(k, coeffs);
    if n % 2 == 1 {
        -&p
    } else {
        p
    }
}

/// `c_m` and `c_{m-1}` at a Legendre parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegendreData {
    pub lambda: Elem,
    pub c_m: Elem,
    pub c_m_minus_1: Elem,
}

fn check_lambda(k: &Field, lambda: Elem) -> Result<()> {
    if k.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if lambda.is_zero() || lambda == k.one() {
        return Err(Error::BadLambda);
    }
    Ok(())
}

pub fn legendre_coeffs(k: &Field, lambda: Elem) -> Result<LegendreData> {
    check_lambda(k, lambda)?;
    let m = (k.characteristic() - 1) / 2;
    Ok(LegendreData {
        lambda,
        c_m: deuring_coefficient(k, m).eval(lambda),
        c_m_minus_1: deuring_coefficient(k, m - 1).eval(lambda),
    })
}

/// `y^2 = x (x - 1) (x - lambda)`.
pub fn legendre_curve(k: &Field, lambda: Elem) -> Result<HyperellipticCurve> {
    check_lambda(k, lambda)?;
    let f = Poly::from_coeffs(
        k,
        vec![k.zero(), lambda, k.neg(k.add(lambda, k.one())), k.one()],
    );
    HyperellipticCurve::new(f)
}

/// `2^8 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`.
pub fn legendre_j(k: &Field, lambda: Elem) -> Result<Elem> {
    check_lambda(k, lambda)?;
    let l2 = k.square(lambda);
    let num = k.mul(k.from_u64(256), k.pow(k.add(k.sub(l2, lambda), k.one()), 3));
    let den = k.mul(l2, k.square(k.sub(lambda, k.one())));
    Ok(k.div(num, den))
}

/// `j = c_4^3 / Delta` for a genus-one model `y^2 = x^3 + a_2 x^2 + a_4 x + a_6`.
pub fn j_invariant(curve: &HyperellipticCurve) -> Option<Elem> {
    if curve.genus() != 1 {
        return None;
    }
    let k = curve.field();
    let f = curve.f();
    let c = |v: i64| k.from_i64(v);
    let (a2, a4, a6) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let b2 = k.mul(c(4), a2);
    let b4 = k.mul(c(2), a4);
    let b6 = k.mul(c(4), a6);
    let b8 = k.sub(k.mul(c(4), k.mul(a2, a6)), k.square(a4));
    let c4 = k.sub(k.square(b2), k.mul(c(24), b4));
    let disc = [
        k.neg(k.mul(k.square(b2), b8)),
        k.neg(k.mul(c(8), k.pow(b4, 3))),
        k.neg(k.mul(c(27), k.square(b6))),
        k.mul(c(9), k.mul(b2, k.mul(b4, b6))),
    ]
    .into_iter()
    .fold(k.zero(), |acc, t| k.add(acc, t));
    Some(k.div(k.pow(c4, 3), disc))
}

/// Supersingular j-invariants in characteristic `p`, as elements of `F_{p^2}`
/// sorted by their canonical index.
pub fn supersingular_j_list(p: u64) -> Result<(Field, Vec<Elem>)> {
    let base = Field::prime(p)?;
    if p == 2 {
        return Err(Error::CharTwo);
    }
    let big = Field::new(p, 2)?;
    let emb = Embedding::new(&base, &big)?;
    let deuring = emb.map_poly(&deuring_coefficient(&base, (p - 1) / 2));
    let mut js: Vec<Elem> = roots(&deuring)
        .into_iter()
        .map(|l| legendre_j(&big, l).expect("Deuring roots avoid 0 and 1"))
        .collect();
    js.sort();
    js.dedup();
    Ok((big, js))
}

/// `gcd(c_m, c_{m-1}) = 1` in `F_p[lambda]`.
pub fn deuring_coprimality(p: u64) -> Result<bool> {
    let k = Field::prime(p)?;
    if p == 2 {
        return Err(Error::CharTwo);
    }
    let m = (p - 1) / 2;
    let g = deuring_coefficient(&k, m).gcd(&deuring_coefficient(&k, m - 1));
    Ok(g == Poly::one(&k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamificationClass {
    SupersingularOnePoint,
    TwoBranchPoints,
    ThreeBranchPoints,
}

impl RamificationClass {
    pub fn name(self) -> &'static str {
        match self {
            RamificationClass::SupersingularOnePoint => "supersingular_one_point",
            RamificationClass::TwoBranchPoints => "two_branch_points",
            RamificationClass::ThreeBranchPoints => "three_branch_points",
        }
    }
}

/// The canonical degree-p cover `E -> P^1` of a Legendre curve, through the
/// kernel form `(c_m x - c_{m-1}) dx/y` of `C` on `Omega(-2 O)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCover {
    pub data: LegendreData,
    pub class: RamificationClass,
    /// `c_{m-1} / c_m`, when `c_m != 0`.
    pub c: Option<Elem>,
    /// Orders of the zeros of the kernel form away from the origin.
    pub zero_multiplicities: Vec<u32>,
}

pub fn canonical_cover_classify(k: &Field, lambda: Elem) -> Result<CanonicalCover> {
    let data = legendre_coeffs(k, lambda)?;
    if data.c_m.is_zero() {
        return Ok(CanonicalCover {
            data,
            class: RamificationClass::SupersingularOnePoint,
            c: None,
            zero_multiplicities: Vec::new(),
        });
    }
    let c = k.div(data.c_m_minus_1, data.c_m);
    // x - c vanishes doubly at a 2-torsion point and simply at two points otherwise
    let (class, zero_multiplicities) = if c.is_zero() || c == k.one() || c == lambda {
        (RamificationClass::TwoBranchPoints, vec![2])
    } else {
        (RamificationClass::ThreeBranchPoints, vec![1, 1])
    };
    Ok(CanonicalCover {
        data,
        class,
        c: Some(c),
        zero_multiplicities,
    })
}

/// A reproduced table row.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub p: u64,
    pub curve: HyperellipticCurve,
    pub j: Elem,
    pub cover: Poly,
    pub verdict: CoverVerdict,
    /// The constructed minimal cover is a scalar multiple of the listed one.
    pub proportional: bool,
}

impl TableRow {
    pub fn verified(&self) -> bool {
        self.verdict.degree() == Some(self.p) && self.proportional
    }
}

/// Checks the cover `b(x) y` of `y^2 = f(x)` over `F_p`.
pub fn verify_table(p: u64, f: &str, b: &str) -> Result<TableRow> {
    let curve = HyperellipticCurve::parse(p, 1, f)?;
    if curve.genus() != 1 {
        return Err(Error::Invalid(format!("table curves are elliptic, got genus {}", curve.genus())));
    }
    let k = curve.field().clone();
    let cover = parse_poly(b, &k, 'x')?;
    let verdict = curve.verify_etale_cover(&AffineFunction::from_y_part(cover.clone()));
    let proportional = match build_cover(&curve) {
        Ok(cert) => cert.t.a.is_zero() && !cover.is_zero() && cert.t.b == cover.monic(),
        Err(_) => false,
    };
    Ok(TableRow {
        p,
        j: j_invariant(&curve).expect("genus one"),
        curve,
        cover,
        verdict,
        proportional,
    })
}

pub fn table() -> Result<Vec<TableRow>> {
    SUPERSINGULAR_TABLE
        .iter()
        .map(|&(p, f, b)| verify_table(p, f, b))
        .collect()
}

/// For a Legendre parameter: existence of a cover, and its minimal degree.
pub fn legendre_cover_degree(k: &Field, lambda: Elem) -> Result<Option<u64>> {
    let curve = legendre_curve(k, lambda)?;
    if !cover_exists(&curve) {
        return Ok(None);
    }
    minimal_degree_linalg(&curve).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::cartier_matrix;

    #[test]
    fn legendre_values() {
        let k3 = Field::prime(3).unwrap();
        let d = legendre_coeffs(&k3, k3.from_i64(2)).unwrap();
        assert!(d.c_m.is_zero());
        let k5 = Field::prime(5).unwrap();
        let d = legendre_coeffs(&k5, k5.from_i64(2)).unwrap();
        assert_eq!(d.c_m, k5.from_i64(3));
        assert_eq!(d.c_m_minus_1, k5.from_i64(3));
        assert_eq!(legendre_coeffs(&k5, k5.one()), Err(Error::BadLambda));
        assert_eq!(legendre_coeffs(&k5, k5.zero()), Err(Error::BadLambda));
    }

    #[test]
    fn legendre_matches_cartier_matrix() {
        for p in [3, 5, 7, 11, 13] {
            let k = Field::new(p, 2).unwrap();
            for l in k.elements().skip(2) {
                let d = legendre_coeffs(&k, l).unwrap();
                let c = legendre_curve(&k, l).unwrap();
                let m = cartier_matrix(&c, -2).unwrap().matrix;
                assert_eq!(m.row(0), &[d.c_m, d.c_m_minus_1], "p = {p}");
            }
        }
    }

    #[test]
    fn ss_j_lists() {
        let expect: &[(u64, &[i64])] = &[(3, &[0]), (5, &[0]), (7, &[6]), (11, &[0, 1]), (13, &[5]), (17, &[0, 8])];
        for &(p, js) in expect {
            let (k, list) = supersingular_j_list(p).unwrap();
            let want: Vec<Elem> = js.iter().map(|&j| k.from_i64(j)).collect();
            assert_eq!(list, want, "p = {p}");
            assert!(list.iter().all(|&j| k.contains(j)));
        }
    }

    #[test]
    fn classifier() {
        let k5 = Field::prime(5).unwrap();
        let cc = canonical_cover_classify(&k5, k5.from_i64(2)).unwrap();
        assert_eq!(cc.class, RamificationClass::TwoBranchPoints);
        assert_eq!(cc.c, Some(k5.one()));
        let k3 = Field::prime(3).unwrap();
        let cc = canonical_cover_classify(&k3, k3.from_i64(2)).unwrap();
        assert_eq!(cc.class, RamificationClass::SupersingularOnePoint);
        let k7 = Field::prime(7).unwrap();
        let three: Vec<_> = (2..7)
            .filter(|&l| canonical_cover_classify(&k7, k7.from_i64(l)).unwrap().class == RamificationClass::ThreeBranchPoints)
            .collect();
        assert!(!three.is_empty());
        for l in three {
            let d = legendre_coeffs(&k7, k7.from_i64(l)).unwrap();
            let c = k7.div(d.c_m_minus_1, d.c_m);
            assert!(![k7.zero(), k7.one(), k7.from_i64(l)].contains(&c));
        }
    }

    #[test]
    fn coprimality() {
        for p in (3..=50).filter(|&p| crate::algebra::field::is_prime(p)) {
            assert!(deuring_coprimality(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn table_rows_verify() {
        for row in table().unwrap() {
            assert!(row.verified(), "p = {} f = {}", row.p, row.curve.f());
        }
        let row = verify_table(11, "x^3 - 1", "x^4 + 6*x").unwrap();
        assert_eq!(row.verdict.degree(), Some(11));
        assert_eq!(row.j, row.curve.field().zero());
    }
}
