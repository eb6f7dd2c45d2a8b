//! Change of variables `z ↦ φ(x)`, `Y = θ(x)·y(φ(x))` for second-order
//! Fuchsian equations, with local exponents and Heun-form matching.

use std::fmt;

use rug::Integer;
use serde_json::{json, Value};

use crate::coverings::{cyclic_covering, dihedral_covering, nonbelyi_covering};
use crate::error::{Error, Result};
use crate::exact::{
    poly_squarefree, rational_roots, rational_string, squarefree_part, Poly, Rational,
    RationalFunction,
};
use crate::liouvillian::{pp_log_derivative, PowerProduct};
use crate::ode::Ode;
use crate::series::{HeunParams, HpgParams};

fn rf(num: Poly, den: Poly) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn simple_pole(c: &Rational, at: &Rational) -> RationalFunction {
    rf(
        Poly::constant(c.clone()),
        Poly::linear(Rational::from(-at), Rational::from(1)),
    )
}

/// Gauss equation with singular points `0, 1, ∞`.
pub fn hpg_ode(p: &HpgParams<Rational>) -> Ode {
    let zero = Rational::new();
    let one = Rational::from(1);
    let at1 = Rational::from(&p.a + &p.b) - &p.c + 1u32;
    let p1 = &simple_pole(&p.c, &zero) + &simple_pole(&at1, &one);
    let ab = Rational::from(&p.a * &p.b);
    let p0 = rf(Poly::constant(ab), Poly::from_i64s(&[0, -1, 1]));
    Ode::new(p1, p0)
}

/// Heun's equation with singular points `0, 1, t, ∞`.
pub fn heun_ode(p: &HeunParams<Rational>) -> Result<Ode> {
    if p.t == 0 || p.t == 1 {
        return Err(Error::InvalidParameter(format!(
            "t = {} must avoid 0 and 1",
            p.t
        )));
    }
    let zero = Rational::new();
    let one = Rational::from(1);
    let p1 =
        &(&simple_pole(&p.c, &zero) + &simple_pole(&p.d, &one)) + &simple_pole(&p.epsilon(), &p.t);
    let den = &Poly::from_i64s(&[0, -1, 1]) * &Poly::linear(Rational::from(-&p.t), one);
    let num = Poly::linear(Rational::from(-&p.q), Rational::from(&p.a * &p.b));
    Ok(Ode::new(p1, rf(num, den)))
}

/// A change of variables `Y(x) = θ(x)·y(φ(x))` applied to `source`.
#[derive(Clone, Debug)]
pub struct PullbackSpec {
    pub source: Ode,
    pub phi: RationalFunction,
    pub theta: PowerProduct,
}

impl PullbackSpec {
    pub fn new(source: Ode, phi: RationalFunction, theta: PowerProduct) -> Self {
        PullbackSpec { source, phi, theta }
    }
}

/// The equation satisfied by `θ·(y∘φ)` whenever `y` solves the source.
pub fn transform_ode(spec: &PullbackSpec) -> Result<Ode> {
    if spec.phi.is_constant() {
        return Err(Error::InvalidParameter("φ is constant".into()));
    }
    let u = spec.phi.derivative();
    let du = u.derivative();
    let p_phi = spec.source.p1().compose(&spec.phi);
    let q_phi = spec.source.p0().compose(&spec.phi);
    let p1w = &(&p_phi * &u) - &du.div(&u)?;
    let p0w = &q_phi * &(&u * &u);
    let l = pp_log_derivative(&spec.theta);
    if l.is_zero() {
        return Ok(Ode::new(p1w, p0w));
    }
    let two = RationalFunction::constant(Rational::from(2));
    let p1 = &p1w - &(&two * &l);
    let p0 = &(&(&p0w - &l.derivative()) + &(&l * &l)) - &(&p1w * &l);
    Ok(Ode::new(p1, p0))
}

/// Where to compute local exponents: a rational point, the set of roots of
/// a squarefree polynomial (when they share their local data), or ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Finite(Rational),
    RootOf(Poly),
    Infinity,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(r) => write!(f, "{r}"),
            Point::RootOf(p) => write!(f, "roots of {p}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// Multiplicity of the squarefree `f` in `d`, which must be the same at
/// every root of `f`.
fn uniform_multiplicity(f: &Poly, d: &Poly) -> Result<u32> {
    let mut rest = d.clone();
    let mut k = 0;
    while f.divides(&rest) {
        rest = rest.exact_div(f)?;
        k += 1;
    }
    if !Poly::gcd(f, &rest).is_constant() {
        return Err(Error::InvalidParameter(format!(
            "roots of {f} have different local structure"
        )));
    }
    Ok(k)
}

/// `(x − r)·p1` and `(x − r)²·p0` at the roots `r` of `f`, as residues
/// modulo `f`.
fn local_data(ode: &Ode, f: &Poly) -> Result<(Poly, Poly)> {
    let (n1, d1) = (ode.p1().num(), ode.p1().den());
    let (n0, d0) = (ode.p0().num(), ode.p0().den());
    let k1 = uniform_multiplicity(f, d1)?;
    let k0 = uniform_multiplicity(f, d0)?;
    if k1 > 1 || k0 > 2 {
        return Err(Error::IrregularSingularity(format!(
            "pole orders {k1}, {k0} at roots of {f}"
        )));
    }
    let df = f.derivative();
    let residue = |n: &Poly, d: &Poly, k: u32| -> Result<Poly> {
        let g = d.exact_div(&f.pow(k))?;
        let denom = &df.pow(k) * &g;
        let inv = denom.rem(f)?.inverse_mod(f).ok_or_else(|| {
            Error::InvalidParameter(format!("non-invertible residue at roots of {f}"))
        })?;
        (n * &inv).rem(f)
    };
    let p = if k1 == 1 {
        residue(n1, d1, 1)?
    } else {
        Poly::zero()
    };
    let q = if k0 == 2 {
        residue(n0, d0, 2)?
    } else {
        Poly::zero()
    };
    Ok((p, q))
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if *r < 0 {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    if n.is_perfect_square() && d.is_perfect_square() {
        Some(Rational::from((
            Integer::from(n.sqrt_ref()),
            Integer::from(d.sqrt_ref()),
        )))
    } else {
        None
    }
}

/// Roots of `ρ² + s·ρ + p = 0`, smaller first.
fn indicial_roots(
    s: &Rational,
    p: &Rational,
    at: &dyn fmt::Display,
) -> Result<(Rational, Rational)> {
    let disc = Rational::from(s * s) - Rational::from(p * 4u32);
    let root = rational_sqrt(&disc).ok_or_else(|| {
        Error::IrrationalExponents(format!(
            "indicial discriminant {disc} at {at} is not a rational square"
        ))
    })?;
    let lo = (Rational::from(-s) - &root) / 2u32;
    let hi = (Rational::from(-s) + &root) / 2u32;
    Ok((lo, hi))
}

fn exponents_from(
    p: &Rational,
    q: &Rational,
    at: &dyn fmt::Display,
) -> Result<(Rational, Rational)> {
    indicial_roots(&Rational::from(p - 1u32), q, at)
}

fn infinity_exponents(ode: &Ode) -> Result<(Rational, Rational)> {
    let lim = |f: &RationalFunction, k: usize| -> Result<Rational> {
        if f.is_zero() {
            return Ok(Rational::new());
        }
        let dn = f.num().deg();
        let dd = f.den().deg();
        if dn + k > dd {
            return Err(Error::IrregularSingularity("at infinity".into()));
        }
        Ok(f.num().coeff(dd - k) / f.den().lead().expect("nonzero").clone())
    };
    let p = lim(ode.p1(), 1)?;
    let q = lim(ode.p0(), 2)?;
    indicial_roots(&Rational::from(1 - p), &q, &"inf")
}

/// The two local exponents at `point`, smaller first.
pub fn local_exponents(ode: &Ode, point: &Point) -> Result<(Rational, Rational)> {
    match point {
        Point::Infinity => infinity_exponents(ode),
        Point::Finite(r) => {
            let f = Poly::linear(Rational::from(-r), Rational::from(1));
            let (p, q) = local_data(ode, &f)?;
            exponents_from(&p.coeff(0), &q.coeff(0), point)
        }
        Point::RootOf(f) => {
            let f = squarefree_part(f)?;
            let (p, q) = local_data(ode, &f)?;
            if !p.is_constant() || !q.is_constant() {
                return Err(Error::InvalidParameter(format!(
                    "local exponents differ across the roots of {f}"
                )));
            }
            exponents_from(&p.coeff(0), &q.coeff(0), point)
        }
    }
}

/// Minimal polynomial of `v` in `ℚ[x]/(f)`.
fn minimal_polynomial(v: &Poly, f: &Poly) -> Result<Poly> {
    let n = f.deg();
    // rows: reduced coefficient vectors of v^k, with a tag vector recording
    // the combination of powers they represent
    let mut rows: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut power = Poly::one();
    for k in 0..=n {
        let mut vec: Vec<Rational> = (0..n).map(|i| power.coeff(i)).collect();
        let mut tag = vec![Rational::new(); n + 1];
        tag[k] = Rational::from(1);
        for ((row, rtag), &piv) in rows.iter().zip(&pivots) {
            if !vec[piv].is_zero() {
                let factor = Rational::from(&vec[piv] / &row[piv]);
                for i in 0..n {
                    vec[i] -= Rational::from(&factor * &row[i]);
                }
                for i in 0..=n {
                    tag[i] -= Rational::from(&factor * &rtag[i]);
                }
            }
        }
        match vec.iter().position(|c| !c.is_zero()) {
            Some(piv) => {
                pivots.push(piv);
                rows.push((vec, tag));
            }
            None => return Ok(Poly::new(tag).monic()),
        }
        power = (&power * v).rem(f)?;
    }
    unreachable!("n + 1 vectors in an n-dimensional space are dependent")
}

/// Split the squarefree `f` into factors on whose roots `v mod f` takes a
/// constant rational value.
fn split_by_value(f: &Poly, v: &Poly, what: &str) -> Result<Vec<(Poly, Rational)>> {
    let v = v.rem(f)?;
    if v.is_constant() {
        return Ok(vec![(f.clone(), v.coeff(0))]);
    }
    let mu = minimal_polynomial(&v, f)?;
    let mut out = Vec::new();
    let mut covered = 0;
    for c in rational_roots(&mu)? {
        let h = Poly::gcd(f, &(&v - &Poly::constant(c.clone())));
        if !h.is_constant() {
            covered += h.deg();
            out.push((h, c));
        }
    }
    if covered < f.deg() {
        return Err(Error::IrrationalExponents(format!(
            "{what} takes irrational values on the roots of {f}"
        )));
    }
    Ok(out)
}

/// A set of finite singular points sharing their local exponents, given as
/// the roots of a monic squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularClass {
    pub factor: Poly,
    pub exponents: (Rational, Rational),
    /// Exponents `{e, e+1}` and the gauge `factor^(−e)` turns every root
    /// into an ordinary point.
    pub removable: bool,
}

impl SingularClass {
    pub fn point(&self) -> Point {
        if self.factor.deg() == 1 {
            Point::Finite(Rational::from(-self.factor.coeff(0)))
        } else {
            Point::RootOf(self.factor.clone())
        }
    }

    pub fn difference(&self) -> Rational {
        Rational::from(&self.exponents.1 - &self.exponents.0)
    }
}

fn refine(pieces: Vec<Poly>, by: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    for h in pieces {
        let g = Poly::gcd(&h, by);
        if g.is_constant() || g.deg() == h.deg() {
            out.push(h);
        } else {
            out.push(h.exact_div(&g).expect("gcd divides").monic());
            out.push(g);
        }
    }
    out
}

fn is_removable(ode: &Ode, f: &Poly, exps: &(Rational, Rational)) -> Result<bool> {
    if Rational::from(&exps.1 - &exps.0) != 1 {
        return Ok(false);
    }
    let theta = PowerProduct::single(f.clone(), Rational::from(-&exps.0))?;
    let gauged = transform_ode(&PullbackSpec::new(
        ode.clone(),
        RationalFunction::x(),
        theta,
    ))?;
    let dens = gauged.p1().den() * gauged.p0().den();
    Ok(Poly::gcd(f, &dens).is_constant())
}

/// All finite singular points of `ode`, grouped into classes with equal
/// exponents. Rational points always form their own class.
pub fn singular_classes(ode: &Ode) -> Result<Vec<SingularClass>> {
    let dens = ode.p1().den() * ode.p0().den();
    if dens.is_constant() {
        return Ok(Vec::new());
    }
    let mut pieces = vec![squarefree_part(&dens)?];
    for d in [ode.p1().den(), ode.p0().den()] {
        for (g, _) in poly_squarefree(d)? {
            pieces = refine(pieces, &g);
        }
    }
    let mut classes = Vec::new();
    for f in pieces {
        let mut split = Vec::new();
        for r in rational_roots(&f)? {
            split.push(Poly::linear(Rational::from(-&r), Rational::from(1)));
        }
        let lin = split.iter().fold(Poly::one(), |acc, l| &acc * l);
        let rest = f.exact_div(&lin)?;
        if !rest.is_constant() {
            split.push(rest.monic());
        }
        for g in split {
            let (p, q) = local_data(ode, &g)?;
            for (h, pv) in split_by_value(&g, &p, "(x − r)·p1")? {
                for (k, qv) in split_by_value(&h, &q, "(x − r)²·p0")? {
                    let point = Point::RootOf(k.clone());
                    let exponents = exponents_from(&pv, &qv, &point)?;
                    let removable = is_removable(ode, &k, &exponents)?;
                    classes.push(SingularClass {
                        factor: k,
                        exponents,
                        removable,
                    });
                }
            }
        }
    }
    classes.sort_by(|a, b| {
        let key = |c: &SingularClass| {
            (
                c.factor.deg(),
                Rational::from(-c.factor.coeff(0)),
                c.factor.to_string(),
            )
        };
        key(a).cmp(&key(b))
    });
    Ok(classes)
}

/// Absolute exponent differences over the non-removable finite singular
/// points (counted with the number of roots in each class) and ∞, sorted.
pub fn exponent_difference_multiset(ode: &Ode) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for c in singular_classes(ode)? {
        if c.removable {
            continue;
        }
        let d = c.difference();
        out.extend(std::iter::repeat_n(d, c.factor.deg()));
    }
    let (lo, hi) = infinity_exponents(ode)?;
    out.push(hi - lo);
    out.sort();
    Ok(out)
}

/// Non-removable finite singular points.
pub fn finite_singular_support(ode: &Ode) -> Result<Vec<Point>> {
    Ok(singular_classes(ode)?
        .into_iter()
        .filter(|c| !c.removable)
        .map(|c| c.point())
        .collect())
}

/// Result of comparing an equation against a Heun equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub matched: bool,
    /// First differing coefficient, if any.
    pub witness: Option<String>,
    /// Finite singular points of the equation, for re-normalization.
    pub singular_support: Vec<String>,
}

pub fn match_heun(ode: &Ode, expected: &HeunParams<Rational>) -> Result<MatchReport> {
    let target = heun_ode(expected)?;
    let mut witness = None;
    if ode.p1() != target.p1() {
        witness = Some(format!("p1: expected {}, found {}", target.p1(), ode.p1()));
    } else if ode.p0() != target.p0() {
        witness = Some(format!("p0: expected {}, found {}", target.p0(), ode.p0()));
    }
    let singular_support = match singular_classes(ode) {
        Ok(cs) => cs.iter().map(|c| c.point().to_string()).collect(),
        Err(e) => vec![e.to_string()],
    };
    Ok(MatchReport {
        matched: witness.is_none(),
        witness,
        singular_support,
    })
}

/// Read off Heun parameters when `ode` has exactly the shape of Heun's
/// equation with a fourth singular point `t ∉ {0, 1}`; `a ≥ b`.
pub fn identify_heun(ode: &Ode) -> Option<HeunParams<Rational>> {
    let dens = ode.p1().den() * ode.p0().den();
    let roots = rational_roots(&dens).ok()?;
    let others: Vec<_> = roots.iter().filter(|r| **r != 0 && **r != 1).collect();
    if others.len() != 1 {
        return None;
    }
    let t = others[0].clone();
    let residue = |at: &Rational| -> Option<Rational> {
        let lin = RationalFunction::from_poly(Poly::linear(Rational::from(-at), Rational::from(1)));
        (&lin * ode.p1()).eval(at).ok()
    };
    let c = residue(&Rational::new())?;
    let d = residue(&Rational::from(1))?;
    let e = residue(&t)?;
    let cubic =
        &Poly::from_i64s(&[0, -1, 1]) * &Poly::linear(Rational::from(-&t), Rational::from(1));
    let lin = &RationalFunction::from_poly(cubic) * ode.p0();
    if !lin.is_polynomial() || lin.num().degree().unwrap_or(0) > 1 {
        return None;
    }
    let q = Rational::from(-lin.num().coeff(0));
    let ab = lin.num().coeff(1);
    let sum = Rational::from(&c + &d) + &e - 1u32;
    let (b, a) = indicial_roots(&Rational::from(-&sum), &ab, &"a, b").ok()?;
    let params = HeunParams::new(t, q, a, b, c, d);
    (heun_ode(&params).ok()? == *ode).then_some(params)
}

/// A pull-back with its outcome, as reported by the command line.
#[derive(Clone, Debug)]
pub struct TransformReport {
    pub scenario: String,
    pub source: String,
    pub spec: PullbackSpec,
    pub result: Ode,
    pub expected: Option<HeunParams<Rational>>,
    pub matched: bool,
    pub witness: Option<String>,
    pub exponent_differences: Vec<Rational>,
    pub singular_support: Vec<String>,
}

fn heun_json(p: &HeunParams<Rational>) -> Value {
    Value::Array(
        p.as_array()
            .iter()
            .map(|r| Value::String(rational_string(r)))
            .collect(),
    )
}

impl TransformReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "scenario": self.scenario,
            "source": self.source,
            "phi": self.spec.phi.to_string(),
            "theta": self.spec.theta.to_string(),
            "result": {"p1": self.result.p1().to_string(), "p0": self.result.p0().to_string()},
            "match": self.matched,
            "exponent_differences": self.exponent_differences.iter().map(rational_string).collect::<Vec<_>>(),
            "singular_points": self.singular_support,
        });
        if let Some(p) = &self.expected {
            v["expected_heun"] = heun_json(p);
        }
        if let Some(w) = &self.witness {
            v["witness"] = Value::String(w.clone());
        }
        if let Some(p) = identify_heun(&self.result) {
            v["heun"] = heun_json(&p);
        }
        v
    }
}

/// Named pull-backs exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    /// Quadratic map `x²` taking the Gauss equation to Heun with `t = −1`.
    P1,
    /// Cyclic covering with a rational gauge factor.
    Trivpbf,
    /// The degree-4 non-Belyi family.
    Nonbelyi,
    /// Dihedral covering with trivial gauge; checked by exponent differences.
    DihedralDiff,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::P1,
        Scenario::Trivpbf,
        Scenario::Nonbelyi,
        Scenario::DihedralDiff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::P1 => "P1",
            Scenario::Trivpbf => "TRIVPBF",
            Scenario::Nonbelyi => "NONBELYI",
            Scenario::DihedralDiff => "DIHEDRAL-DIFF",
        }
    }

    pub fn parse(s: &str) -> Option<Scenario> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name().eq_ignore_ascii_case(s))
    }
}

/// Parameters of the named scenarios; unset values take the defaults
/// `(A,B,C) = (1/3, 1/5, 1/2)`, `(N, M) = (2, 1)` or `(1, 2)`, `α = 1/5` or
/// `1/7`, `s = 1/2`, `e = 1/3`.
#[derive(Clone, Debug, Default)]
pub struct ScenarioParams {
    pub hpg: Option<HpgParams<Rational>>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub alpha: Option<Rational>,
    pub s: Option<Rational>,
    pub e: Option<Rational>,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// `θ = c·φ/x²` as a power product.
fn trivpbf_theta(phi: &RationalFunction, c: Rational) -> Result<PowerProduct> {
    PowerProduct::new(vec![
        (Poly::constant(c), q(1, 1)),
        (phi.num().clone(), q(1, 1)),
        (phi.den().clone(), q(-1, 1)),
        (Poly::x(), q(-2, 1)),
    ])
}

pub fn trivpbf_spec(
    n: u32,
    m: u32,
    alpha: &Rational,
) -> Result<(PullbackSpec, HeunParams<Rational>)> {
    let cov = cyclic_covering(n, m)?;
    let (nq, mq) = (Rational::from(n), Rational::from(m));
    let d = Rational::from(n + m);
    let source = hpg_ode(&HpgParams::new(Rational::from(1 - alpha), q(1, 1), q(2, 1)));
    let c = Rational::from(&mq * 2u32) / (Rational::from(&nq * &d));
    let theta = trivpbf_theta(cov.phi(), c)?;
    let ratio = Rational::from(&mq / &nq);
    let expected = HeunParams::new(
        Rational::from(-&ratio),
        Rational::from(1 - ratio) * 2u32,
        q(2, 1),
        Rational::from(2 - Rational::from(&d * alpha)),
        q(3, 1),
        Rational::from(1 - Rational::from(&nq * alpha)),
    );
    Ok((
        PullbackSpec::new(source, cov.phi().clone(), theta),
        expected,
    ))
}

pub fn p1_spec(p: &HpgParams<Rational>) -> (PullbackSpec, HeunParams<Rational>) {
    let phi = RationalFunction::from_poly(Poly::from_i64s(&[0, 0, 1]));
    let expected = HeunParams::new(
        q(-1, 1),
        q(0, 1),
        Rational::from(&p.a * 2u32),
        Rational::from(&p.b * 2u32),
        Rational::from(&p.c * 2u32) - 1u32,
        Rational::from(&p.a + &p.b) - &p.c + 1u32,
    );
    (
        PullbackSpec::new(hpg_ode(p), phi, PowerProduct::one()),
        expected,
    )
}

pub fn nonbelyi_spec(s: &Rational, e: &Rational) -> Result<(PullbackSpec, HeunParams<Rational>)> {
    let cov = nonbelyi_covering(s)?;
    let source = hpg_ode(&HpgParams::new(
        Rational::from(e / 2u32),
        Rational::from(e + 1u32) / 2u32,
        Rational::from(e + 1u32),
    ));
    let base = Poly::new(vec![
        q(1, 1),
        Rational::from(2 / s.clone()),
        Rational::from(-1 / s.clone()),
    ]);
    let theta = PowerProduct::single(base, Rational::from(-e))?;
    let expected = HeunParams::new(
        q(2, 1),
        q(0, 1),
        q(0, 1),
        Rational::from(e * 2u32),
        Rational::from(e + 1u32),
        q(-1, 1),
    );
    Ok((
        PullbackSpec::new(source, cov.phi().clone(), theta),
        expected,
    ))
}

/// Dihedral pull-back of `E(1/2, 1/2, α)` with `θ = 1`, and the expected
/// exponent-difference multiset `{1/2, 3/2, Nα, Mα}`.
pub fn dihedral_spec(n: u32, m: u32, alpha: &Rational) -> Result<(PullbackSpec, Vec<Rational>)> {
    let (cov, _) = dihedral_covering(n, m)?;
    let a = Rational::from(-alpha);
    let source = hpg_ode(&HpgParams::new(
        Rational::from(&a / 2u32),
        Rational::from(&a + 1u32) / 2u32,
        q(1, 2),
    ));
    let mut expected = vec![
        q(1, 2),
        q(3, 2),
        Rational::from(alpha * n),
        Rational::from(alpha * m),
    ];
    for r in expected.iter_mut() {
        *r = Rational::from(r.abs_ref());
    }
    expected.sort();
    Ok((
        PullbackSpec::new(source, cov.phi().clone(), PowerProduct::one()),
        expected,
    ))
}

pub fn run_scenario(sc: Scenario, params: &ScenarioParams) -> Result<TransformReport> {
    let (source, spec, expected, expected_diffs) = match sc {
        Scenario::P1 => {
            let p = params
                .hpg
                .clone()
                .unwrap_or_else(|| HpgParams::new(q(1, 3), q(1, 5), q(1, 2)));
            let (spec, exp) = p1_spec(&p);
            (
                format!("hpg({}, {}, {})", p.a, p.b, p.c),
                spec,
                Some(exp),
                None,
            )
        }
        Scenario::Trivpbf => {
            let (n, m) = (params.n.unwrap_or(2), params.m.unwrap_or(1));
            let alpha = params.alpha.clone().unwrap_or_else(|| q(1, 5));
            let (spec, exp) = trivpbf_spec(n, m, &alpha)?;
            (format!("hpg(1 - {alpha}, 1, 2)"), spec, Some(exp), None)
        }
        Scenario::Nonbelyi => {
            let s = params.s.clone().unwrap_or_else(|| q(1, 2));
            let e = params.e.clone().unwrap_or_else(|| q(1, 3));
            let (spec, exp) = nonbelyi_spec(&s, &e)?;
            (
                format!("hpg({e}/2, ({e} + 1)/2, 1 + {e})"),
                spec,
                Some(exp),
                None,
            )
        }
        Scenario::DihedralDiff => {
            let (n, m) = (params.n.unwrap_or(1), params.m.unwrap_or(2));
            let alpha = params.alpha.clone().unwrap_or_else(|| q(1, 7));
            let (spec, diffs) = dihedral_spec(n, m, &alpha)?;
            (
                format!("hpg(-{alpha}/2, (1 - {alpha})/2, 1/2)"),
                spec,
                None,
                Some(diffs),
            )
        }
    };
    let result = transform_ode(&spec)?;
    let exponent_differences = exponent_difference_multiset(&result)?;
    let singular_support = finite_singular_support(&result)?
        .iter()
        .map(|p| p.to_string())
        .collect();
    let (matched, witness) = match (&expected, &expected_diffs) {
        (Some(p), _) => {
            let rep = match_heun(&result, p)?;
            (rep.matched, rep.witness)
        }
        (None, Some(d)) => {
            let ok = *d == exponent_differences;
            let w = (!ok).then(|| {
                format!(
                    "expected exponent differences [{}]",
                    d.iter().map(rational_string).collect::<Vec<_>>().join(", ")
                )
            });
            (ok, w)
        }
        (None, None) => (false, None),
    };
    Ok(TransformReport {
        scenario: sc.name().to_string(),
        source,
        spec,
        result,
        expected,
        matched,
        witness,
        exponent_differences,
        singular_support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> HpgParams {
        HpgParams::from_i64s(a, b, c)
    }

    #[test]
    fn hpg_ode_shape() {
        let ode = hpg_ode(&hp((0, 1), (2, 3), (1, 2)));
        assert!(ode.p0().is_zero());
        let ode = hpg_ode(&hp((1, 3), (1, 5), (1, 2)));
        assert_eq!(
            local_exponents(&ode, &Point::Finite(q(0, 1))).unwrap(),
            (q(0, 1), q(1, 2))
        );
        assert_eq!(
            local_exponents(&ode, &Point::Infinity).unwrap(),
            (q(1, 5), q(1, 3))
        );
    }

    #[test]
    fn heun_ode_exponents() {
        let p = HeunParams::new(q(3, 2), q(1, 7), q(1, 3), q(-1, 2), q(2, 5), q(3, 4));
        let ode = heun_ode(&p).unwrap();
        assert_eq!(
            local_exponents(&ode, &Point::Finite(q(0, 1))).unwrap(),
            (q(0, 1), q(3, 5))
        );
        assert_eq!(
            local_exponents(&ode, &Point::Finite(q(1, 1))).unwrap(),
            (q(0, 1), q(1, 4))
        );
        let e = p.epsilon();
        let at_t = local_exponents(&ode, &Point::Finite(q(3, 2))).unwrap();
        assert_eq!(at_t, (q(0, 1), Rational::from(1 - e)));
        assert_eq!(
            local_exponents(&ode, &Point::Infinity).unwrap(),
            (q(-1, 2), q(1, 3))
        );
        assert_eq!(
            local_exponents(&ode, &Point::Finite(q(5, 1))).unwrap(),
            (q(0, 1), q(1, 1))
        );
        assert!(heun_ode(&HeunParams::new(
            q(1, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(1, 1),
            q(1, 1)
        ))
        .is_err());
        let zero = heun_ode(&HeunParams::new(
            q(2, 1),
            q(0, 1),
            q(0, 1),
            q(1, 3),
            q(1, 1),
            q(1, 1),
        ))
        .unwrap();
        assert!(zero.p0().is_zero());
    }

    #[test]
    fn heun_exponent_difference_multiset() {
        let p = HeunParams::new(q(-1, 1), q(0, 1), q(2, 3), q(2, 5), q(1, 3), q(3, 7));
        let ode = heun_ode(&p).unwrap();
        let mut expect: Vec<Rational> = p
            .exponent_differences()
            .iter()
            .map(|r| Rational::from(r.abs_ref()))
            .collect();
        expect.sort();
        assert_eq!(exponent_difference_multiset(&ode).unwrap(), expect);
    }

    #[test]
    fn identity_transform() {
        let ode = hpg_ode(&hp((1, 3), (1, 5), (1, 2)));
        let spec = PullbackSpec::new(ode.clone(), RationalFunction::x(), PowerProduct::one());
        assert_eq!(transform_ode(&spec).unwrap(), ode);
        let constant = PullbackSpec::new(ode, RationalFunction::one(), PowerProduct::one());
        assert!(transform_ode(&constant).is_err());
    }

    #[test]
    fn quadratic_transformation() {
        let p = hp((1, 3), (1, 5), (1, 2));
        let (spec, expected) = p1_spec(&p);
        assert_eq!(
            expected,
            HeunParams::new(q(-1, 1), q(0, 1), q(2, 3), q(2, 5), q(0, 1), q(31, 30))
        );
        let out = transform_ode(&spec).unwrap();
        assert!(match_heun(&out, &expected).unwrap().matched);
        let mut wrong = expected.clone();
        wrong.q = q(1, 1);
        let rep = match_heun(&out, &wrong).unwrap();
        assert!(!rep.matched);
        assert!(rep.witness.unwrap().starts_with("p0"));
    }

    #[test]
    fn nonbelyi_transformation() {
        let (spec, expected) = nonbelyi_spec(&q(1, 2), &q(1, 3)).unwrap();
        let out = transform_ode(&spec).unwrap();
        let rep = match_heun(&out, &expected).unwrap();
        assert!(rep.matched, "{:?}", rep.witness);
    }

    #[test]
    fn trivpbf_transformation() {
        let (spec, expected) = trivpbf_spec(2, 1, &q(1, 5)).unwrap();
        let out = transform_ode(&spec).unwrap();
        let rep = match_heun(&out, &expected).unwrap();
        assert!(rep.matched, "{:?}", rep.witness);
        assert_eq!(identify_heun(&out).unwrap(), expected);
        let diffs = exponent_difference_multiset(&out).unwrap();
        assert_eq!(diffs, vec![q(1, 5), q(2, 5), q(3, 5), q(2, 1)]);
    }

    #[test]
    fn dihedral_exponent_differences() {
        let (spec, expected) = dihedral_spec(1, 2, &q(1, 7)).unwrap();
        let out = transform_ode(&spec).unwrap();
        assert_eq!(exponent_difference_multiset(&out).unwrap(), expected);
        let support = finite_singular_support(&out).unwrap();
        assert_eq!(
            support,
            vec![
                Point::Finite(q(0, 1)),
                Point::Finite(q(1, 1)),
                Point::Finite(q(4, 1))
            ]
        );
        // a root of Θ₂ is an ordinary point; Θ₂ is constant here, so use (2, 5)
        let (spec, _) = dihedral_spec(2, 5, &q(1, 7)).unwrap();
        let out = transform_ode(&spec).unwrap();
        let (_, pair) = dihedral_covering(2, 5).unwrap();
        assert!(pair.theta2.deg() >= 1);
        let ex = local_exponents(&out, &Point::RootOf(pair.theta2.clone())).unwrap();
        assert_eq!(ex, (q(0, 1), q(1, 1)));
    }

    #[test]
    fn minimal_polynomial_of_root_class() {
        // x has minimal polynomial x^2 - 2 modulo x^2 - 2
        let f = Poly::from_i64s(&[-2, 0, 1]);
        assert_eq!(minimal_polynomial(&Poly::x(), &f).unwrap(), f);
        // on x(x-1)(x-3), the residue values c, d, e split the roots
        let p = HeunParams::new(q(3, 1), q(1, 2), q(1, 3), q(1, 4), q(1, 5), q(1, 6));
        let ode = heun_ode(&p).unwrap();
        let classes = singular_classes(&ode).unwrap();
        assert_eq!(classes.len(), 3);
    }

    #[test]
    fn irrational_exponents_rejected() {
        // x^2 y'' + y = 0 has exponents (1 ± i√3)/2 at 0
        let ode = Ode::new(
            RationalFunction::zero(),
            rf(Poly::one(), Poly::from_i64s(&[0, 0, 1])),
        );
        assert!(matches!(
            local_exponents(&ode, &Point::Finite(q(0, 1))),
            Err(Error::IrrationalExponents(_))
        ));
        let irregular = Ode::new(
            RationalFunction::zero(),
            rf(Poly::one(), Poly::from_i64s(&[0, 0, 0, 1])),
        );
        assert!(matches!(
            local_exponents(&irregular, &Point::Finite(q(0, 1))),
            Err(Error::IrregularSingularity(_))
        ));
    }

    #[test]
    fn scenarios_match() {
        for sc in Scenario::ALL {
            let rep = run_scenario(sc, &ScenarioParams::default()).unwrap();
            assert!(rep.matched, "{} {:?}", sc.name(), rep.witness);
            let js = rep.to_json();
            assert_eq!(js["match"], true);
        }
    }
}
