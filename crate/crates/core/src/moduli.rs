//! Normal forms of pointed hyperelliptic curves, exhaustive searches for
//! curves admitting an etale cover of the affine line, and pointwise checks of
//! parametric families.
//!
//! A monic model `f` of degree `2g + 1` is determined up to
//! `f(x) -> a^{-(2g+1)} f(ax + b)`. When `p` does not divide `2g + 1` the
//! `x^{2g}` coefficient can be cleared, leaving the weighted scaling
//! `a_i -> l^{2g+1-i} a_i`; otherwise classes are taken under the full affine
//! group.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{is_squarefree, splitting_field, Elem, Field, Poly};
use crate::cartier::{
    admissible_degrees, cartier_matrix, classify, cover_exists, minimal_degree_linalg, p_rank,
    Classification,
};
use crate::covers::{build_cover, build_cover_of_degree, minimal_degree_explicit, CoverCertificate};
use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};

/// Coefficients `(a_0, ..., a_{2g})` of a monic model of degree `2g + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    field: Field,
    coeffs: Vec<Elem>,
}

impl NormalForm {
    pub fn from_poly(f: &Poly) -> Result<NormalForm> {
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
        Ok(NormalForm {
            field: f.field().clone(),
            coeffs: f.coeffs()[..d].to_vec(),
        })
    }

    /// Clears the `x^{2g}` coefficient by `x -> x - a_{2g}/(2g+1)`; forms with
    /// `p | 2g + 1` are returned unchanged.
    pub fn trace_normalize(f: &Poly) -> Result<NormalForm> {
        let nf = NormalForm::from_poly(f)?;
        let k = &nf.field;
        let d = k.from_u64(nf.coeffs.len() as u64);
        if d.is_zero() {
            return Ok(nf);
        }
        let shift = k.neg(k.div(nf.coeffs[nf.coeffs.len() - 1], d));
        let g = Poly::from_coeffs(k, vec![shift, k.one()]);
        NormalForm::from_poly(&f.compose(&g))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// `(a_0, ..., a_{2g})`.
    pub fn coefficients(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_trace_normalized(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_zero())
            && !self.field.from_u64(self.coeffs.len() as u64).is_zero()
    }

    pub fn to_poly(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.push(self.field.one());
        Poly::from_coeffs(&self.field, c)
    }

    pub fn format(&self) -> Vec<String> {
        self.coeffs.iter().map(|&c| self.field.format(c)).collect()
    }

    fn scaled(&self, l: Elem) -> Vec<Elem> {
        let k = &self.field;
        let top = self.coeffs.len() as u64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| k.mul(k.pow(l, top - i as u64), a))
            .collect()
    }

    fn uses_scaling(&self) -> bool {
        !self.field.from_u64(self.coeffs.len() as u64).is_zero()
    }

    /// All models in the class of `self` reachable by the relevant group.
    pub fn orbit(&self) -> BTreeSet<Vec<Elem>> {
        let k = &self.field;
        if self.uses_scaling() {
            let nf = if self.is_trace_normalized() {
                self.clone()
            } else {
                NormalForm::trace_normalize(&self.to_poly()).expect("valid form")
            };
            return k.elements().skip(1).map(|l| nf.scaled(l)).collect();
        }
        let f = self.to_poly();
        let n = self.coeffs.len() as u64;
        let mut out = BTreeSet::new();
        for a in k.elements().skip(1) {
            let scale = k.inv(k.pow(a, n)).unwrap();
            for b in k.elements() {
                let g = f.compose(&Poly::from_coeffs(k, vec![b, a])).scale(scale);
                out.insert(g.coeffs()[..n as usize].to_vec());
            }
        }
        out
    }

    /// The least element of the orbit in index order.
    pub fn canonical(&self) -> NormalForm {
        NormalForm {
            field: self.field.clone(),
            coeffs: self.orbit().into_iter().next().expect("orbit contains self"),
        }
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

/// Some `l` with `b_i = l^{2g+1-i} a_i` for all `i`, by scanning `F_q^*`.
pub fn is_isomorphic(a: &NormalForm, b: &NormalForm) -> Result<Option<Elem>> {
    if a.field != b.field || a.coeffs.len() != b.coeffs.len() {
        return Err(Error::FieldMismatch);
    }
    if !a.is_trace_normalized() || !b.is_trace_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok(a.field.elements().skip(1).find(|&l| a.scaled(l) == b.coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Trace-free models up to weighted scaling.
    Trace,
    /// All monic models up to `x -> ax + b`.
    Affine,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Trace => "trace",
            Normalization::Affine => "affine",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub jobs: usize,
    /// Process shards in a shuffled order; the merged result does not depend on it.
    pub shard_shuffle: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 1,
            shard_shuffle: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub normal_form: NormalForm,
    pub class_size: usize,
    pub classification: Classification,
    pub p_rank: usize,
    pub min_degree_linalg: u64,
    pub min_degree_explicit: u64,
    pub admissible_degrees: Vec<u64>,
    pub witnesses: Vec<CoverCertificate>,
}

impl ClassRecord {
    pub fn curve(&self) -> HyperellipticCurve {
        HyperellipticCurve::new(self.normal_form.to_poly()).expect("emitted forms are smooth")
    }
}

/// How many of the `2g + 2` Weierstrass points of a superspecial curve carry
/// a cover of degree `p`.
#[derive(Clone, Debug)]
pub struct WeierstrassTally {
    pub normal_form: NormalForm,
    pub degree_p_points: usize,
    pub total_points: usize,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub p: u64,
    pub genus: usize,
    pub q: u64,
    pub normalization: Normalization,
    pub candidates: u64,
    pub members: u64,
    pub classes: Vec<ClassRecord>,
    pub weierstrass_experiment: Vec<WeierstrassTally>,
}

fn search_field(p: u64, g: usize, q: u64) -> Result<Field> {
    if p == 2 {
        return Err(Error::CharTwo);
    }
    if g == 0 {
        return Err(Error::Invalid("genus must be positive".into()));
    }
    let mut m = 0u32;
    let mut r = q;
    while r > 1 && r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    if r != 1 || m == 0 {
        return Err(Error::Invalid(format!("q = {q} is not a power of p = {p}")));
    }
    Field::new(p, m)
}

/// Coefficients of `f^e` for `f` given by its ascending coefficients.
fn power_coeffs(k: &Field, f: &[Elem], e: u64) -> Vec<Elem> {
    let mut acc = vec![k.one()];
    for _ in 0..e {
        let mut next = vec![Elem::ZERO; acc.len() + f.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in f.iter().enumerate() {
                if !b.is_zero() {
                    next[i + j] = k.add(next[i + j], k.mul(a, b));
                }
            }
        }
        acc = next;
    }
    acc
}

fn criterion_holds(k: &Field, f: &[Elem], g: usize) -> bool {
    let p = k.characteristic() as usize;
    let h = power_coeffs(k, f, (p as u64 - 1) / 2);
    (1..=g).all(|i| h.get(i * p - 1).is_none_or(|c| c.is_zero()))
}

/// Every squarefree monic model in the search space that passes the cover
/// criterion, in index order.
pub fn search_members(p: u64, g: usize, q: u64, options: &SearchOptions) -> Result<(Normalization, u64, Vec<NormalForm>)> {
    let k = search_field(p, g, q)?;
    let normalization = if (2 * g as u64 + 1).is_multiple_of(p) {
        Normalization::Affine
    } else {
        Normalization::Trace
    };
    let free = match normalization {
        Normalization::Trace => 2 * g,
        Normalization::Affine => 2 * g + 1,
    };
    let shard_digits = free.min(2);
    let inner_digits = free - shard_digits;
    let shard_count = q.pow(shard_digits as u32);
    let mut order: Vec<u64> = (0..shard_count).collect();
    if let Some(seed) = options.shard_shuffle {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let run_shard = |shard: u64| -> (u64, Vec<NormalForm>) {
        let mut coeffs = vec![Elem::ZERO; 2 * g + 2];
        coeffs[2 * g + 1] = k.one();
        let mut s = shard;
        for i in 0..shard_digits {
            coeffs[inner_digits + i] = Elem::from_index(s % q);
            s /= q;
        }
        let mut found = Vec::new();
        let total = q.pow(inner_digits as u32);
        for idx in 0..total {
            let mut r = idx;
            for c in coeffs.iter_mut().take(inner_digits) {
                *c = Elem::from_index(r % q);
                r /= q;
            }
            if !criterion_holds(&k, &coeffs, g) {
                continue;
            }
            let f = Poly::from_coeffs(&k, coeffs.clone());
            if is_squarefree(&f) {
                found.push(NormalForm::from_poly(&f).expect("monic odd degree"));
            }
        }
        (shard, found)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let mut shards: Vec<(u64, Vec<NormalForm>)> = pool.install(|| order.par_iter().map(|&s| run_shard(s)).collect());
    shards.sort_by_key(|(s, _)| *s);
    let mut members: Vec<NormalForm> = shards.into_iter().flat_map(|(_, v)| v).collect();
    members.sort();
    Ok((normalization, q.pow(free as u32), members))
}

/// Enumerates the classes of pointed curves of genus `g` over `F_q` that
/// admit an etale cover of the affine line.
pub fn search_eg(p: u64, g: usize, q: u64, options: &SearchOptions) -> Result<SearchReport> {
    let (normalization, candidates, members) = search_members(p, g, q, options)?;
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut reps: Vec<(NormalForm, usize)> = Vec::new();
    for nf in &members {
        if seen.contains(&nf.coeffs) {
            continue;
        }
        let orbit = nf.orbit();
        let canonical = NormalForm {
            field: nf.field.clone(),
            coeffs: orbit.iter().next().unwrap().clone(),
        };
        reps.push((canonical, orbit.len()));
        seen.extend(orbit);
    }
    debug_assert_eq!(seen.len(), members.len());
    reps.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let classes: Vec<ClassRecord> = pool.install(|| {
        reps.par_iter()
            .map(|(nf, size)| analyse_class(nf.clone(), *size))
            .collect::<Result<Vec<_>>>()
    })?;
    let weierstrass_experiment = if g == 2 {
        pool.install(|| {
            classes
                .par_iter()
                .filter(|c| c.classification == Classification::Superspecial)
                .map(|c| {
                    let (degree_p_points, total_points) = weierstrass_degree_p_points(&c.curve())?;
                    Ok(WeierstrassTally {
                        normal_form: c.normal_form.clone(),
                        degree_p_points,
                        total_points,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        Vec::new()
    };
    Ok(SearchReport {
        p,
        genus: g,
        q,
        normalization,
        candidates,
        members: members.len() as u64,
        classes,
        weierstrass_experiment,
    })
}

fn analyse_class(normal_form: NormalForm, class_size: usize) -> Result<ClassRecord> {
    let curve = HyperellipticCurve::new(normal_form.to_poly())?;
    assert!(cover_exists(&curve));
    let p = curve.p();
    let g = curve.genus() as u64;
    let bound = 3 * (2 * g - 1) * p;
    let admissible = admissible_degrees(&curve, bound)?;
    let witnesses = admissible
        .iter()
        .map(|&d| build_cover_of_degree(&curve, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassRecord {
        classification: classify(&curve),
        p_rank: p_rank(&curve),
        min_degree_linalg: minimal_degree_linalg(&curve)?,
        min_degree_explicit: minimal_degree_explicit(&curve)?,
        admissible_degrees: admissible,
        witnesses,
        normal_form,
        class_size,
    })
}

/// Moves the Weierstrass point `(u, 0)` to infinity: with `d = f'(u)`, the
/// model `d^{2g} X^{2g+2} f(u + d / X)` is monic of degree `2g + 1`.
pub fn move_root_to_infinity(f: &Poly, u: Elem) -> Result<Poly> {
    let k = f.field();
    let n = f.degree().unwrap_or(0);
    let g = (n - 1) / 2;
    let d = f.derivative().eval(u);
    if !f.eval(u).is_zero() || d.is_zero() {
        return Err(Error::Invalid("not a simple root".into()));
    }
    // X^{2g+2} f(u + 1/X) = sum_i a_i (uX + 1)^i X^{2g+2-i}
    let ux1 = Poly::from_coeffs(k, vec![k.one(), u]);
    let mut big = Poly::zero(k);
    for (i, &a) in f.coeffs().iter().enumerate() {
        if !a.is_zero() {
            big = &big + &ux1.pow(i as u64).shift(2 * g + 2 - i).scale(a);
        }
    }
    let dinv = k.inv(d).unwrap();
    let dg = k.pow(d, 2 * g as u64);
    let coeffs = big
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| k.mul(k.mul(c, dg), k.pow(dinv, j as u64)))
        .collect();
    let out = Poly::from_coeffs(k, coeffs);
    debug_assert!(out.is_monic() && out.degree() == Some(n));
    Ok(out)
}

/// `(number of Weierstrass points with a degree-p cover, 2g + 2)`.
pub fn weierstrass_degree_p_points(curve: &HyperellipticCurve) -> Result<(usize, usize)> {
    let p = curve.p();
    let has_degree_p = |c: &HyperellipticCurve| -> Result<bool> {
        Ok(cover_exists(c) && minimal_degree_linalg(c)? == p)
    };
    let mut count = usize::from(has_degree_p(curve)?);
    let split = splitting_field(curve.f())?;
    let f = split.embedding.map_poly(curve.f());
    for &u in &split.roots {
        let moved = HyperellipticCurve::new(move_root_to_infinity(&f, u)?)?;
        count += usize::from(has_degree_p(&moved)?);
    }
    Ok((count, 2 * curve.genus() + 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `y^2 = x + a x^2 + 2a^2 x^3 + x^5` over characteristic 5.
    P5A,
    /// `y^2 = a^3 + b^3 x + ab x^2 + x^5` over characteristic 7.
    P7AB,
}

impl Family {
    pub fn from_id(id: &str) -> Result<Family> {
        match id {
            "p5_a" => Ok(Family::P5A),
            "p7_ab" => Ok(Family::P7AB),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Family::P5A => "p5_a",
            Family::P7AB => "p7_ab",
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Family::P5A => 5,
            Family::P7AB => 7,
        }
    }

    /// `(2g + 1)(p - 1)/2 + 2g + 1`, the degree bound for the checked identities.
    pub fn degree_bound(self) -> u64 {
        let p = self.characteristic();
        5 * (p - 1) / 2 + 5
    }

    pub fn model(self) -> &'static str {
        match self {
            Family::P5A => "y^2 = x + a*x^2 + 2*a^2*x^3 + x^5",
            Family::P7AB => "y^2 = a^3 + b^3*x + a*b*x^2 + x^5",
        }
    }

    /// Defining polynomial at a parameter point (`b` ignored for `P5A`).
    pub fn poly(self, k: &Field, a: Elem, b: Elem) -> Poly {
        let z = k.zero();
        match self {
            Family::P5A => Poly::from_coeffs(
                k,
                vec![z, k.one(), a, k.mul(k.from_u64(2), k.square(a)), z, k.one()],
            ),
            Family::P7AB => Poly::from_coeffs(
                k,
                vec![k.pow(a, 3), k.pow(b, 3), k.mul(a, b), z, z, k.one()],
            ),
        }
    }

    /// Whether the model is smooth according to the closed-form discriminant factor.
    pub fn smooth_by_formula(self, k: &Field, a: Elem, b: Elem) -> bool {
        let expr = match self {
            Family::P5A => k.add(k.pow(a, 4), k.from_u64(3)),
            Family::P7AB => k.add(k.pow(a, 4), k.mul(k.from_u64(3), k.pow(b, 5))),
        };
        !expr.is_zero()
    }

    /// Expected `(omega_2, x^2 dx/y)` columns of the Cartier matrix on `Omega(-3P)`.
    pub fn expected_columns(self, k: &Field, a: Elem, b: Elem) -> [[Elem; 2]; 2] {
        let c = |v: u64| k.from_u64(v);
        match self {
            Family::P5A => [
                [k.mul(c(2), a), k.neg(k.square(a))],
                [k.one(), k.mul(c(2), a)],
            ],
            Family::P7AB => {
                let s = k.add(k.pow(b, 5), k.pow(a, 4));
                [
                    [k.mul(c(3), k.mul(k.square(a), s)), k.mul(c(3), k.mul(a, b))],
                    [k.mul(c(3), k.mul(a, k.mul(k.square(b), s))), k.mul(c(3), k.pow(b, 3))],
                ]
            }
        }
    }

    /// Minimal degree predicted at a smooth parameter point.
    pub fn expected_min_degree(self, a: Elem, b: Elem) -> u64 {
        match self {
            Family::P5A if a.is_zero() => 5,
            Family::P5A => 15,
            Family::P7AB if b.is_zero() => 7,
            Family::P7AB => 21,
        }
    }

    fn parameters(self, k: &Field) -> Vec<(Elem, Elem)> {
        match self {
            Family::P5A => k.elements().map(|a| (a, k.zero())).collect(),
            Family::P7AB => k
                .elements()
                .flat_map(|a| k.elements().map(move |b| (a, b)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub family: Family,
    pub extension_degree: u32,
    pub field_order: u64,
    pub degree_bound: u64,
    /// `field_order > degree_bound`, so pointwise agreement proves the identities.
    pub exact: bool,
    pub points: u64,
    pub smooth_points: u64,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

const MAX_LOGGED_FAILURES: usize = 20;

pub fn family_check(id: &str, extension_degree: u32) -> Result<FamilyReport> {
    let family = Family::from_id(id)?;
    let k = Field::new(family.characteristic(), extension_degree)?;
    let params = family.parameters(&k);
    let names = [
        "smoothness",
        "membership",
        "matrix",
        "minimal_degree",
        "classification",
    ];
    let results: Vec<Vec<(usize, Option<String>)>> = params
        .par_iter()
        .map(|&(a, b)| check_point(family, &k, a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut checks: Vec<CheckTally> = names
        .iter()
        .map(|&name| CheckTally {
            name,
            ..Default::default()
        })
        .collect();
    let mut failures = Vec::new();
    let mut smooth_points = 0;
    for (point, outcome) in params.iter().zip(&results) {
        if family.smooth_by_formula(&k, point.0, point.1) {
            smooth_points += 1;
        }
        for (idx, failure) in outcome {
            match failure {
                None => checks[*idx].passed += 1,
                Some(msg) => {
                    checks[*idx].failed += 1;
                    if failures.len() < MAX_LOGGED_FAILURES {
                        failures.push(msg.clone());
                    }
                }
            }
        }
    }
    let degree_bound = family.degree_bound();
    Ok(FamilyReport {
        family,
        extension_degree,
        field_order: k.order(),
        degree_bound,
        exact: k.order() > degree_bound,
        points: params.len() as u64,
        smooth_points,
        checks,
        failures,
    })
}

fn check_point(family: Family, k: &Field, a: Elem, b: Elem) -> Result<Vec<(usize, Option<String>)>> {
    let at = || match family {
        Family::P5A => format!("a = {}", k.format(a)),
        Family::P7AB => format!("(a, b) = ({}, {})", k.format(a), k.format(b)),
    };
    let verdict = |idx: usize, ok: bool, what: &str| (idx, (!ok).then(|| format!("{what} fails at {}", at())));
    let f = family.poly(k, a, b);
    let smooth = family.smooth_by_formula(k, a, b);
    let mut out = vec![verdict(0, smooth == is_squarefree(&f), "smoothness criterion")];
    if !smooth {
        return Ok(out);
    }
    let curve = HyperellipticCurve::new(f)?;
    let p = curve.p() as usize;
    out.push(verdict(
        1,
        curve.c(p - 1).is_zero() && curve.c(2 * p - 1).is_zero(),
        "membership",
    ));
    let m = cartier_matrix(&curve, -3)?.matrix;
    let [w2, x2] = family.expected_columns(k, a, b);
    let zero = vec![k.zero(); 2];
    let matrix_ok = m.column(0) == zero && m.column(3) == zero && m.column(1) == w2 && m.column(2) == x2;
    out.push(verdict(2, matrix_ok, "Cartier matrix"));
    let expected = family.expected_min_degree(a, b);
    let lin = minimal_degree_linalg(&curve)?;
    let explicit = build_cover(&curve)?.degree;
    out.push(verdict(3, lin == expected && explicit == expected, "minimal degree"));
    let class = classify(&curve);
    let class_ok = match family {
        Family::P5A if a.is_zero() => class == Classification::Superspecial,
        Family::P5A => class == Classification::Intermediate(1),
        Family::P7AB => {
            let ab_zero = k.mul(a, b).is_zero();
            let special_ok = !(a == k.one() && b.is_zero()) || class == Classification::Supersingular;
            class.is_supersingular() == ab_zero && special_ok
        }
    };
    out.push(verdict(4, class_ok, "classification"));
    Ok(out)
}
