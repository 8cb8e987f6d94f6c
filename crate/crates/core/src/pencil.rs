//! Singular members of pencils of plane cubics t₀p₀ + t₁p₁ over ℚ.
//!
//! Everything is exact: singular parameters come from resultant elimination
//! in the affine charts z = 1, y = 1, x = 1, rational roots are extracted,
//! and every reported point is checked by substitution. Loci that are not
//! rational are returned as eliminant polynomials, never approximated.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{parse_poly, rational_roots, resultant, squarefree_part, ExactError, MPoly, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("not a homogeneous cubic in x, y, z: {0}")]
    NotCubic(String),
    #[error("not a nonzero linear form in x, y, z: {0}")]
    NotLinear(String),
    #[error("p0 is not a multiple of the cube of {0}")]
    NotACube(String),
    #[error("the line {0} is a component of p1")]
    LineInCubic(String),
    #[error("{point} is not a singular point of {poly}")]
    NotSingular { poly: String, point: String },
    #[error("[0:0] is not a point of the projective line")]
    ZeroParam,
    #[error("[0:0:0] is not a point of the projective plane")]
    ZeroPoint,
    #[error("unknown pencil `{0}`")]
    UnknownPencil(String),
}

const VARS: [&str; 3] = ["x", "y", "z"];
const ALPHA: &str = "α";

fn is_cubic_form(p: &MPoly) -> bool {
    !p.is_zero()
        && p.is_homogeneous()
        && p.total_degree() == Some(3)
        && p.used_vars().iter().all(|v| VARS.contains(&v.as_str()))
}

/// [t₀ : t₁], normalised to t₁ = 1 when t₁ ≠ 0 and to [1 : 0] otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PencilParam {
    t0: Rational,
    t1: Rational,
}

impl PencilParam {
    pub fn new(t0: Rational, t1: Rational) -> Result<Self, PencilError> {
        if t1.is_zero() {
            if t0.is_zero() {
                return Err(PencilError::ZeroParam);
            }
            return Ok(Self::infinity());
        }
        Ok(Self { t0: &t0 / &t1, t1: Rational::one() })
    }

    /// [α : 1].
    pub fn affine(alpha: Rational) -> Self {
        Self { t0: alpha, t1: Rational::one() }
    }

    /// [1 : 0], the member p₀.
    pub fn infinity() -> Self {
        Self { t0: Rational::one(), t1: Rational::zero() }
    }

    pub fn t0(&self) -> &Rational {
        &self.t0
    }

    pub fn t1(&self) -> &Rational {
        &self.t1
    }

    /// t₀/t₁, or `None` at [1 : 0].
    pub fn alpha(&self) -> Option<&Rational> {
        (!self.t1.is_zero()).then_some(&self.t0)
    }

    pub fn is_endpoint(&self) -> bool {
        self.t0.is_zero() || self.t1.is_zero()
    }

    /// Accepts `[4/27:1]`, `4/27:1`, `1:1/8` or a bare `α`.
    pub fn parse(text: &str) -> Result<Self, PencilError> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = t.split(':').collect();
        let p = |s: &str| crate::exact::parse_rational(s.trim()).map_err(PencilError::from);
        match parts.as_slice() {
            [a] => Ok(Self::affine(p(a)?)),
            [a, b] => Self::new(p(a)?, p(b)?),
            _ => Err(ExactError::InvalidLiteral(text.to_string()).into()),
        }
    }
}

impl fmt::Display for PencilParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.t0, self.t1)
    }
}

impl Serialize for PencilParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A point of CP² with rational coordinates, scaled so that its last nonzero
/// coordinate is 1 (so affine points of the chart z = 1 read [x:y:1]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([Rational; 3]);

impl ProjPoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Result<Self, PencilError> {
        let c = [x, y, z];
        let k = c.iter().rposition(|v| !v.is_zero()).ok_or(PencilError::ZeroPoint)?;
        let s = c[k].recip();
        Ok(Self(c.map(|v| &v * &s)))
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn parse(text: &str) -> Result<Self, PencilError> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = t.split(':').collect();
        if parts.len() != 3 {
            return Err(ExactError::InvalidLiteral(text.to_string()).into());
        }
        let p = |s: &str| crate::exact::parse_rational(s.trim()).map_err(PencilError::from);
        Self::new(p(parts[0])?, p(parts[1])?, p(parts[2])?)
    }

    fn assignment(&self) -> Vec<(&'static str, Rational)> {
        VARS.iter().zip(self.0.iter()).map(|(v, c)| (*v, c.clone())).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalType {
    /// Ordinary double point: two distinct tangent directions.
    Node,
    /// Ordinary cusp: one double tangent, cubic term not divisible by it.
    Cusp,
    /// Anything worse (triple point, tacnode, …).
    Higher,
}

/// The pencil generated by two homogeneous cubics; the caller asserts they
/// share no component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPencil {
    p0: MPoly,
    p1: MPoly,
}

pub const E8_PENCIL: (&str, &str) = ("z^3", "z*y^2 - z*x^2 - x^3");
pub const E6_PENCIL: (&str, &str) = ("(y + z/2)^3", "z*y^2 - z*x^2 - x^3");

impl CubicPencil {
    pub fn new(p0: MPoly, p1: MPoly) -> Result<Self, PencilError> {
        for p in [&p0, &p1] {
            if !is_cubic_form(p) {
                return Err(PencilError::NotCubic(p.to_string()));
            }
        }
        Ok(Self { p0, p1 })
    }

    pub fn parse(p0: &str, p1: &str) -> Result<Self, PencilError> {
        Self::new(parse_poly(p0)?, parse_poly(p1)?)
    }

    /// `@e8pencil` or `@e6pencil`.
    pub fn named(name: &str) -> Result<Self, PencilError> {
        let (a, b) = match name.trim_start_matches('@') {
            "e8pencil" | "e8" => E8_PENCIL,
            "e6pencil" | "e6" => E6_PENCIL,
            _ => return Err(PencilError::UnknownPencil(name.to_string())),
        };
        Self::parse(a, b)
    }

    pub fn p0(&self) -> &MPoly {
        &self.p0
    }

    pub fn p1(&self) -> &MPoly {
        &self.p1
    }

    /// t₀p₀ + t₁p₁.
    pub fn member(&self, param: &PencilParam) -> MPoly {
        &self.p0.scale(&param.t0) + &self.p1.scale(&param.t1)
    }

    /// α·p₀ + p₁ with α a formal variable.
    fn generic_member(&self) -> MPoly {
        &(&MPoly::var(ALPHA) * &self.p0) + &self.p1
    }
}

/// The three affine charts in the fixed order z = 1, y = 1, x = 1, each as
/// (dehomogenised variable, chart coordinates u, v).
const CHARTS: [(&str, &str, &str); 3] = [("z", "x", "y"), ("y", "x", "z"), ("x", "y", "z")];

fn chart_point(chart: usize, u: &Rational, v: &Rational) -> ProjPoint {
    let one = Rational::one();
    let (x, y, z) = match chart {
        0 => (u.clone(), v.clone(), one),
        1 => (u.clone(), one, v.clone()),
        _ => (one, u.clone(), v.clone()),
    };
    ProjPoint::new(x, y, z).expect("chart points are nonzero")
}

fn univariate(p: &MPoly) -> UniPoly {
    p.to_univariate().expect("eliminant has one variable").1
}

fn gcd_all(polys: &[MPoly]) -> UniPoly {
    polys.iter().map(univariate).fold(UniPoly::zero(), |g, p| g.gcd(&p))
}

/// Eliminates `var` from a system: equations free of `var` pass through, every
/// pair that involves it contributes its resultant. Zero resultants (common
/// factors) are dropped.
fn eliminate(system: &[MPoly], var: &str) -> Result<Vec<MPoly>, ExactError> {
    let mut out: Vec<MPoly> = Vec::new();
    let (with, without): (Vec<&MPoly>, Vec<&MPoly>) =
        system.iter().partition(|p| p.degree_in(var).unwrap_or(0) > 0);
    out.extend(without.into_iter().cloned());
    for i in 0..with.len() {
        for j in i + 1..with.len() {
            let r = resultant(with[i], with[j], var)?.compact();
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Removes the linear factors at `roots` from the squarefree part of `g`.
fn irrational_part(g: &UniPoly, roots: &[Rational]) -> Result<UniPoly, ExactError> {
    let mut s = squarefree_part(g)?;
    for r in roots {
        s = s.div_rem(&UniPoly::new(vec![-r.clone(), Rational::one()])).0;
    }
    Ok(s)
}

/// Common zeros in ℚ² of a system in two variables.
enum Zeros {
    Points { points: Vec<(Rational, Rational)>, residual: Vec<String> },
    /// The system has a common curve component.
    Curve,
}

fn rational_zeros(system: &[MPoly], u: &str, v: &str) -> Result<Zeros, ExactError> {
    let eqs: Vec<MPoly> = system.iter().map(MPoly::compact).filter(|p| !p.is_zero()).collect();
    if eqs.is_empty() {
        return Ok(Zeros::Curve);
    }
    if eqs.iter().any(MPoly::is_constant) {
        return Ok(Zeros::Points { points: vec![], residual: vec![] });
    }
    let elim = eliminate(&eqs, v)?;
    if elim.is_empty() {
        return Ok(Zeros::Curve);
    }
    let g = gcd_all(&elim);
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Zeros::Points { points: vec![], residual: vec![] });
    }
    let us = rational_roots(&g)?;
    let mut residual = Vec::new();
    let rest = irrational_part(&g, &us)?;
    if rest.degree().unwrap_or(0) > 0 {
        residual.push(format!("{}", rest.to_mpoly(u)));
    }
    let mut points = Vec::new();
    for u0 in &us {
        let fibre: Vec<MPoly> =
            eqs.iter().map(|p| p.substitute(u, u0).compact()).filter(|p| !p.is_zero()).collect();
        if fibre.is_empty() {
            return Ok(Zeros::Curve);
        }
        let h = gcd_all(&fibre);
        if h.degree().unwrap_or(0) == 0 {
            continue;
        }
        let vs = rational_roots(&h)?;
        let rest = irrational_part(&h, &vs)?;
        if rest.degree().unwrap_or(0) > 0 {
            residual.push(format!("{u} = {u0}: {}", rest.to_mpoly(v)));
        }
        for v0 in vs {
            let ok = eqs.iter().all(|p| p.eval(&[(u, u0.clone()), (v, v0.clone())]).is_ok_and(|r| r.is_zero()));
            if ok {
                points.push((u0.clone(), v0));
            }
        }
    }
    Ok(Zeros::Points { points, residual })
}

fn chart_system(f: &MPoly, chart: usize) -> Vec<MPoly> {
    let (w, u, v) = CHARTS[chart];
    let g = f.substitute(w, &Rational::one());
    vec![g.derivative(u), g.derivative(v), g]
}

/// Singular points of a single plane cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberSingularities {
    pub points: Vec<ProjPoint>,
    /// The member has a repeated component, so its singular locus is a curve.
    pub degenerate: bool,
    /// Possibly singular loci with irrational coordinates, as eliminants.
    pub residual: Vec<String>,
}

pub fn member_singularities(f: &MPoly) -> Result<MemberSingularities, PencilError> {
    let mut points: Vec<ProjPoint> = Vec::new();
    let mut residual = Vec::new();
    let mut degenerate = false;
    for chart in 0..3 {
        let (w, u, v) = CHARTS[chart];
        match rational_zeros(&chart_system(f, chart), u, v)? {
            Zeros::Curve => degenerate = true,
            Zeros::Points { points: ps, residual: r } => {
                for (a, b) in ps {
                    let p = chart_point(chart, &a, &b);
                    if !points.contains(&p) {
                        points.push(p);
                    }
                }
                residual.extend(r.into_iter().map(|s| format!("chart {w}=1: {s}")));
            }
        }
    }
    points.sort();
    Ok(MemberSingularities { points, degenerate, residual })
}

fn is_singular_at(f: &MPoly, pt: &ProjPoint) -> Result<bool, PencilError> {
    let a = pt.assignment();
    for v in VARS {
        if !f.derivative(v).eval(&a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(f.eval(&a)?.is_zero())
}

/// Local type of a singular point: translate it to the origin of the chart
/// where its last nonzero coordinate is 1 and read off the quadratic and
/// cubic parts of the expansion.
pub fn classify_point(f: &MPoly, pt: &ProjPoint) -> Result<LocalType, PencilError> {
    if !is_singular_at(f, pt)? {
        return Err(PencilError::NotSingular { poly: f.to_string(), point: pt.to_string() });
    }
    let c = pt.coords();
    let chart = match c.iter().rposition(|v| !v.is_zero()) {
        Some(2) => 0,
        Some(1) => 1,
        _ => 2,
    };
    let (w, u, v) = CHARTS[chart];
    let at = |name: &str| c[VARS.iter().position(|x| *x == name).unwrap()].clone();
    let shift = |name: &str| &MPoly::var(name) + &MPoly::constant(at(name));
    let local = f.substitute(w, &Rational::one()).compose_all(&[(u, shift(u)), (v, shift(v))]);
    let q = local.homogeneous_part(2);
    let cub = local.homogeneous_part(3);
    let coef = |p: &MPoly, i: u32, j: u32| p.coeff_in(u, i).coeff_in(v, j).constant_term();
    let (a, b, cc) = (coef(&q, 2, 0), coef(&q, 1, 1), coef(&q, 0, 2));
    if q.is_zero() {
        return Ok(LocalType::Higher);
    }
    let disc = &b * &b - Rational::from_integer(4.into()) * &a * &cc;
    if !disc.is_zero() {
        return Ok(LocalType::Node);
    }
    // q is a multiple of l², l = 2a·u + b·v (or v when a = 0); l vanishes on
    // the direction (−b, 2a) (resp. (1, 0)).
    let (du, dv) = if a.is_zero() { (Rational::one(), Rational::zero()) } else { (-b, &a + &a) };
    let on_tangent = cub.eval(&[(u, du), (v, dv)])?;
    Ok(if on_tangent.is_zero() { LocalType::Higher } else { LocalType::Cusp })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub local_type: LocalType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularFiberReport {
    pub param: PencilParam,
    #[serde(serialize_with = "ser_display")]
    pub member: MPoly,
    pub points: Vec<SingularPoint>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residual: Vec<String>,
}

fn ser_display<T: fmt::Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn analyse_member(pencil: &CubicPencil, param: PencilParam) -> Result<Option<SingularFiberReport>, PencilError> {
    let member = pencil.member(&param);
    let sing = member_singularities(&member)?;
    if sing.points.is_empty() && !sing.degenerate && sing.residual.is_empty() {
        return Ok(None);
    }
    let points = sing
        .points
        .into_iter()
        .map(|p| Ok(SingularPoint { local_type: classify_point(&member, &p)?, point: p }))
        .collect::<Result<_, PencilError>>()?;
    Ok(Some(SingularFiberReport { param, member, points, degenerate: sing.degenerate, residual: sing.residual }))
}

/// A factor of a parameter eliminant with no rational roots: members there may
/// be singular, but nothing about them is resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnresolvedLocus {
    pub chart: String,
    pub eliminant: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    #[serde(serialize_with = "ser_display")]
    pub p0: MPoly,
    #[serde(serialize_with = "ser_display")]
    pub p1: MPoly,
    /// Singular members among [1:0] and [0:1].
    pub endpoints: Vec<SingularFiberReport>,
    /// Singular members [α:1] with α ≠ 0, sorted by α.
    pub interior: Vec<SingularFiberReport>,
    /// Rational roots of the eliminants whose members turned out smooth.
    pub rejected_candidates: Vec<PencilParam>,
    pub unresolved: Vec<UnresolvedLocus>,
}

impl PencilReport {
    pub fn interior_params(&self) -> Vec<PencilParam> {
        self.interior.iter().map(|r| r.param.clone()).collect()
    }

    pub fn find(&self, param: &PencilParam) -> Option<&SingularFiberReport> {
        self.endpoints.iter().chain(&self.interior).find(|r| &r.param == param)
    }
}

/// Parameter eliminant of one chart: the gcd of the resultant eliminants of
/// {p, ∂p/∂u, ∂p/∂v} in ℚ[α]. `None` if every eliminant vanishes.
fn chart_eliminant(pencil: &CubicPencil, chart: usize) -> Result<Option<UniPoly>, PencilError> {
    let (_, u, v) = CHARTS[chart];
    let sys: Vec<MPoly> =
        chart_system(&pencil.generic_member(), chart).into_iter().filter(|p| !p.is_zero()).collect();
    let l1 = eliminate(&sys, v)?;
    let l2 = eliminate(&l1, u)?;
    if l2.is_empty() {
        return Ok(None);
    }
    Ok(Some(gcd_all(&l2)))
}

pub fn singular_parameters(pencil: &CubicPencil) -> Result<PencilReport, PencilError> {
    let mut endpoints = Vec::new();
    for param in [PencilParam::infinity(), PencilParam::affine(Rational::zero())] {
        if let Some(r) = analyse_member(pencil, param)? {
            endpoints.push(r);
        }
    }
    let mut candidates: Vec<Rational> = Vec::new();
    let mut unresolved = Vec::new();
    for chart in 0..3 {
        let name = format!("{}=1", CHARTS[chart].0);
        match chart_eliminant(pencil, chart)? {
            None => unresolved.push(UnresolvedLocus { chart: name, eliminant: "0".into() }),
            Some(e) if e.degree().unwrap_or(0) == 0 => {}
            Some(e) => {
                let roots = rational_roots(&e)?;
                let rest = irrational_part(&e, &roots)?;
                if rest.degree().unwrap_or(0) > 0 {
                    unresolved.push(UnresolvedLocus { chart: name, eliminant: rest.to_mpoly("t").to_string() });
                }
                for r in roots {
                    if !r.is_zero() && !candidates.contains(&r) {
                        candidates.push(r);
                    }
                }
            }
        }
    }
    candidates.sort();
    let mut interior = Vec::new();
    let mut rejected_candidates = Vec::new();
    for a in candidates {
        match analyse_member(pencil, PencilParam::affine(a.clone()))? {
            Some(r) => interior.push(r),
            None => rejected_candidates.push(PencilParam::affine(a)),
        }
    }
    Ok(PencilReport { p0: pencil.p0.clone(), p1: pencil.p1.clone(), endpoints, interior, rejected_candidates, unresolved })
}

/// Intersection of p₁ with the line l = 0 when p₀ is a multiple of l³.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineIntersection {
    #[serde(serialize_with = "ser_display")]
    pub line: MPoly,
    /// p₁ restricted to the line, as a binary cubic in the remaining variables.
    #[serde(serialize_with = "ser_display")]
    pub binary_form: MPoly,
    /// The affine coordinate used for the restriction, e.g. `t = z/x`.
    pub affine_coordinate: String,
    /// Primitive integer form of the restriction in t.
    #[serde(serialize_with = "ser_display")]
    pub restricted: MPoly,
    pub distinct_points: usize,
    /// Whether the line meets p₁ in three distinct points.
    pub transverse: bool,
    /// Rational intersection points with multiplicities.
    pub rational_points: Vec<(ProjPoint, u32)>,
}

fn linear_coeffs(l: &MPoly) -> Result<[Rational; 3], PencilError> {
    let bad = || PencilError::NotLinear(l.to_string());
    if l.is_zero()
        || !l.is_homogeneous()
        || l.total_degree() != Some(1)
        || !l.used_vars().iter().all(|v| VARS.contains(&v.as_str()))
    {
        return Err(bad());
    }
    let mut c = [Rational::zero(), Rational::zero(), Rational::zero()];
    for (i, v) in VARS.iter().enumerate() {
        c[i] = l.coeff_in(v, 1).constant_term();
    }
    Ok(c)
}

fn multiplicity(f: &UniPoly, r: &Rational) -> u32 {
    let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
    let mut g = f.clone();
    let mut k = 0;
    loop {
        let (q, rem) = g.div_rem(&lin);
        if !rem.is_zero() || g.is_zero() {
            return k;
        }
        g = q;
        k += 1;
    }
}

pub fn base_points_on_line(pencil: &CubicPencil, l: &MPoly) -> Result<LineIntersection, PencilError> {
    let c = linear_coeffs(l)?;
    match pencil.p0.exact_div(&l.pow(3)) {
        Some(q) if q.is_constant() && !q.is_zero() => {}
        _ => return Err(PencilError::NotACube(l.to_string())),
    }
    // Solve l = 0 for its first variable with a nonzero coefficient.
    let k = c.iter().position(|x| !x.is_zero()).expect("l is nonzero");
    let rest: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut solved = MPoly::zero();
    for &i in &rest {
        solved = &solved + &MPoly::var(VARS[i]).scale(&(-&c[i] / &c[k]));
    }
    let binary = pencil.p1.compose(VARS[k], &solved).compact();
    if binary.is_zero() {
        return Err(PencilError::LineInCubic(l.to_string()));
    }
    let (r1, r2) = (VARS[rest[0]], VARS[rest[1]]);
    let t_form = binary.substitute(r1, &Rational::one()).compose(r2, &MPoly::var("t"));
    let u = univariate(&t_form);
    let deg = u.degree().unwrap_or(0);
    let at_infinity = 3 - deg as u32;
    let finite = if deg == 0 { 0 } else { squarefree_part(&u)?.degree().unwrap_or(0) };
    let distinct = finite + usize::from(at_infinity > 0);
    let point = |a: Rational, b: Rational| {
        let mut xyz = [Rational::zero(), Rational::zero(), Rational::zero()];
        xyz[rest[0]] = a;
        xyz[rest[1]] = b;
        xyz[k] = -(&c[rest[0]] * &xyz[rest[0]] + &c[rest[1]] * &xyz[rest[1]]) / &c[k];
        let [x, y, z] = xyz;
        ProjPoint::new(x, y, z).expect("nonzero")
    };
    let mut rational_points = Vec::new();
    if deg > 0 {
        for r in rational_roots(&u)? {
            let m = multiplicity(&u, &r);
            rational_points.push((point(Rational::one(), r), m));
        }
    }
    if at_infinity > 0 {
        rational_points.push((point(Rational::zero(), Rational::one()), at_infinity));
    }
    Ok(LineIntersection {
        line: l.clone(),
        binary_form: binary,
        affine_coordinate: format!("t = {r2}/{r1}"),
        restricted: t_form.primitive(),
        distinct_points: distinct,
        transverse: distinct == 3,
        rational_points,
    })
}
