//! Executable catalog of closed-form Heun and Gauss identities.
//!
//! Each case is checked per parameter binding, either structurally (exact
//! polynomial equality or exact ODE residual) or numerically at working
//! precision against a closed form, or both.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Complex;
use serde_json::{json, Value};

use crate::coverings::{cyclic_covering, dihedral_pair};
use crate::error::{Error, Result};
use crate::exact::{rational_string, Poly, Rational, RationalFunction};
use crate::liouvillian::{
    lv_eval, lv_ode_residual, BranchConvention, LiouvillianExpr, PowerProduct, Residual, Term,
};
use crate::numeric;
use crate::pullback::{heun_ode, match_heun, p1_spec, transform_ode, trivpbf_spec, PullbackSpec};
use crate::series::{
    eval_heun, eval_hpg, heun_series, hpg_series, is_nonpositive_integer, HeunParams, HpgParams,
    Policy,
};

/// How a case decides equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    ExactPolynomial,
    ExactResidual,
    Numeric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ExactPolynomial => "exact_polynomial",
            Mode::ExactResidual => "exact_residual",
            Mode::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn parse(s: &str) -> Option<Profile> {
        match s {
            "quick" => Some(Profile::Quick),
            "full" => Some(Profile::Full),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }
}

/// Sampling and tolerance settings for a verification run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub bindings: usize,
    /// Real sample points per binding; two complex points are added.
    pub points: usize,
    pub digits: u32,
    pub tolerance: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn for_profile(profile: Profile, seed: u64) -> Self {
        let (bindings, points) = match profile {
            Profile::Quick => (3, 5),
            Profile::Full => (20, 10),
        };
        RunConfig {
            bindings,
            points,
            digits: numeric::DEFAULT_DIGITS,
            tolerance: 1e-10,
            seed,
        }
    }

    fn policy(&self) -> Policy {
        Policy::with_digits(self.digits)
    }

    fn prec(&self) -> u32 {
        numeric::bits_for_digits(self.digits)
    }
}

/// Named parameter values of one instance of a case.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding(Vec<(&'static str, Rational)>);

impl Binding {
    pub fn new(values: Vec<(&'static str, Rational)>) -> Self {
        Binding(values)
    }

    pub fn get(&self, name: &str) -> Result<&Rational> {
        self.0
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::InvalidParameter(format!("binding lacks {name}")))
    }

    fn int(&self, name: &str) -> Result<u32> {
        let v = self.get(name)?;
        if *v.denom() != 1 || *v < 1 {
            return Err(Error::InvalidParameter(format!(
                "{name} = {v} must be a positive integer"
            )));
        }
        v.numer()
            .to_u32()
            .ok_or_else(|| Error::InvalidParameter(format!("{name} too large")))
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(n, v)| format!("{n}={v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub mode: Mode,
    pub status: Status,
    /// Worst relative error over numeric samples, if any were taken.
    pub worst_error: Option<f64>,
    pub samples: usize,
    pub bindings: usize,
    pub witness: Option<String>,
    /// The binding that produced the witness.
    pub binding: Option<String>,
    pub flags: Vec<String>,
    pub millis: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One JSON object; runtime is included only on request so that
    /// repeated runs give identical output.
    pub fn to_json(&self, with_runtime: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "status": self.status.as_str(),
            "mode": self.mode.as_str(),
            "worst_error": self.worst_error,
            "samples": self.samples,
            "bindings": self.bindings,
            "witness": self.witness,
            "binding": self.binding,
            "flags": self.flags,
        });
        if with_runtime {
            v["ms"] = json!(self.millis as u64);
        }
        v
    }

    pub fn csv_header() -> &'static str {
        "id,status,worst_error,samples,ms"
    }

    pub fn to_csv(&self) -> String {
        let err = self
            .worst_error
            .map(|e| format!("{e:.3e}"))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            self.id,
            self.status.as_str(),
            err,
            self.samples,
            self.millis
        )
    }
}

/// Outcome of checking one binding.
#[derive(Clone, Debug, Default)]
struct BindingResult {
    worst: Option<f64>,
    samples: usize,
    witness: Option<String>,
    flags: Vec<String>,
}

impl BindingResult {
    fn exact(witness: Option<String>) -> Self {
        BindingResult {
            samples: 1,
            witness,
            ..Default::default()
        }
    }

    fn merge(&mut self, other: BindingResult) {
        self.worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.samples += other.samples;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.flags.extend(other.flags);
    }
}

type SampleFn = fn(&mut ChaCha8Rng) -> Binding;
type FixedFn = fn() -> Vec<Binding>;
type CheckFn = fn(&Binding, &RunConfig, &mut ChaCha8Rng) -> Result<BindingResult>;

/// A catalog entry.
pub struct IdentityCase {
    pub id: &'static str,
    pub mode: Mode,
    pub summary: &'static str,
    /// Human-readable parameter domain.
    pub domain: &'static str,
    sample: Option<SampleFn>,
    fixed: FixedFn,
    check: CheckFn,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("mode", &self.mode)
            .finish()
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn qi(n: i64) -> Rational {
    Rational::from(n)
}

fn add(a: &Rational, b: &Rational) -> Rational {
    Rational::from(a + b)
}

fn sub(a: &Rational, b: &Rational) -> Rational {
    Rational::from(a - b)
}

fn mul(a: &Rational, b: &Rational) -> Rational {
    Rational::from(a * b)
}

fn div(a: &Rational, b: &Rational) -> Rational {
    Rational::from(a / b)
}

fn neg(a: &Rational) -> Rational {
    Rational::from(-a)
}

fn poly(cs: &[Rational]) -> Poly {
    Poly::new(cs.to_vec())
}

fn rfc(c: Rational) -> RationalFunction {
    RationalFunction::constant(c)
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64()
}

fn outside(msg: impl Into<String>) -> Error {
    Error::BindingOutsideDomain(msg.into())
}

/// Rational with denominator ≤ 12 in the open interval `(lo, hi)`.
fn rand_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let den: i64 = rng.random_range(1..=12);
    let num: i64 = rng.random_range(lo * den + 1..hi * den);
    q(num, den)
}

fn sample_ab(rng: &mut ChaCha8Rng) -> Binding {
    Binding::new(vec![
        ("a", rand_rational(rng, -2, 2)),
        ("b", rand_rational(rng, -2, 2)),
    ])
}

fn sample_abc(rng: &mut ChaCha8Rng) -> Binding {
    Binding::new(vec![
        ("a", rand_rational(rng, -2, 2)),
        ("b", rand_rational(rng, -2, 2)),
        ("c", rand_rational(rng, -2, 2)),
    ])
}

fn sample_nm_alpha(rng: &mut ChaCha8Rng) -> Binding {
    let n: i64 = rng.random_range(1..=6);
    let m: i64 = rng.random_range(1..=6);
    Binding::new(vec![
        ("N", qi(n)),
        ("M", qi(m)),
        ("alpha", rand_rational(rng, -1, 1)),
    ])
}

fn sample_nm(rng: &mut ChaCha8Rng) -> Binding {
    let n: i64 = rng.random_range(1..=6);
    let m: i64 = rng.random_range(1..=6);
    Binding::new(vec![("N", qi(n)), ("M", qi(m))])
}

fn sample_n_a(rng: &mut ChaCha8Rng) -> Binding {
    let n: i64 = rng.random_range(1..=10);
    Binding::new(vec![("n", qi(n)), ("a", rand_rational(rng, -2, 2))])
}

fn no_fixed() -> Vec<Binding> {
    Vec::new()
}

fn nonzero_ab(b: &Binding) -> Result<(Rational, Rational)> {
    let (a, bb) = (b.get("a")?.clone(), b.get("b")?.clone());
    if a.is_zero() || bb.is_zero() || add(&a, &bb).is_zero() {
        return Err(outside("requires a, b, a + b nonzero"));
    }
    Ok((a, bb))
}

fn dihedral_ab(b: &Binding) -> Result<(Rational, Rational)> {
    let (a, bb) = nonzero_ab(b)?;
    if a == bb {
        return Err(outside("requires a ≠ ±b"));
    }
    Ok((a, bb))
}

fn admissible(p: &HeunParams) -> Result<()> {
    if p.t == 0 || p.t == 1 {
        return Err(outside(format!("t = {} is 0 or 1", p.t)));
    }
    if is_nonpositive_integer(&p.c) {
        return Err(outside(format!("c = {} is a non-positive integer", p.c)));
    }
    Ok(())
}

/// Relative error with the result written for witnesses.
fn compare(l: &Complex, r: &Complex) -> f64 {
    numeric::relative_error(l, r)
}

/// Evaluate `lhs` and `rhs` at real points drawn from `range` (mapped to
/// the case variable by `to_x`) and at two points shifted off the real
/// axis.
fn compare_points(
    cfg: &RunConfig,
    rng: &mut ChaCha8Rng,
    range: (f64, f64),
    to_x: &dyn Fn(f64) -> f64,
    lhs: &dyn Fn(&Complex) -> Result<Complex>,
    rhs: &dyn Fn(&Complex) -> Result<Complex>,
) -> Result<BindingResult> {
    let prec = cfg.prec();
    let mut out = BindingResult::default();
    let mut worst = 0f64;
    let width = range.1 - range.0;
    let imag = (1e-3f64).min(0.01 * range.1.abs().max(range.0.abs()));
    for k in 0..cfg.points + 2 {
        let u = range.0 + width * rng.random_range(0.0..1.0);
        let x = to_x(u);
        let im = if k < cfg.points {
            0.0
        } else if k == cfg.points {
            imag
        } else {
            -imag
        };
        let z = Complex::with_val(prec, (x, im));
        let l = lhs(&z)?;
        let r = rhs(&z)?;
        let e = compare(&l, &r);
        if e > worst {
            worst = e;
        }
        if e > cfg.tolerance && out.witness.is_none() {
            out.witness = Some(format!(
                "at x = {}: lhs {} vs rhs {} (relative error {e:.3e})",
                numeric::fmt_complex(&z, 17),
                numeric::fmt_complex(&l, 20),
                numeric::fmt_complex(&r, 20)
            ));
        }
        out.samples += 1;
    }
    out.worst = Some(worst);
    Ok(out)
}

/// `pref(x)·Hl(params; arg(x)) = rhs(x)` in a case variable `x`.
struct HeunIdentity {
    params: HeunParams,
    arg: RationalFunction,
    pref: RationalFunction,
    rhs: LiouvillianExpr,
    /// Sampling interval of the Heun argument.
    range: (f64, f64),
    to_x: Box<dyn Fn(f64) -> f64>,
}

impl HeunIdentity {
    fn new(
        params: HeunParams,
        arg: RationalFunction,
        rhs: LiouvillianExpr,
        to_x: Box<dyn Fn(f64) -> f64>,
    ) -> Result<Self> {
        admissible(&params)?;
        let r = 0.8 * params.radius();
        Ok(HeunIdentity {
            params,
            arg,
            pref: RationalFunction::one(),
            rhs,
            range: (0.02 * r, r),
            to_x,
        })
    }

    fn with_pref(mut self, pref: RationalFunction) -> Self {
        self.pref = pref;
        self
    }

    fn with_range(mut self, range: (f64, f64)) -> Self {
        self.range = range;
        self
    }

    fn lhs(&self, x: &Complex, cfg: &RunConfig) -> Result<Complex> {
        let u = self.arg.eval_complex(x)?;
        let v = eval_heun(&self.params.to_complex(cfg.prec()), &u, &cfg.policy())?;
        Ok(self.pref.eval_complex(x)? * v.value)
    }

    /// `rhs / pref` solves the Heun equation pulled back along `arg`.
    fn exact_residual(&self) -> Result<Residual> {
        let ode = transform_ode(&PullbackSpec::new(
            heun_ode(&self.params)?,
            self.arg.clone(),
            PowerProduct::one(),
        ))?;
        let e = self.rhs.scale(&self.pref.recip()?);
        lv_ode_residual(&e, &ode)
    }

    fn check(&self, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
        let mut out = BindingResult::default();
        if let Residual::Nonzero(w) = self.exact_residual()? {
            out.witness = Some(format!("nonzero residual {w}"));
        }
        let bc = BranchConvention::default();
        let lhs = |x: &Complex| self.lhs(x, cfg);
        let rhs = |x: &Complex| lv_eval(&self.rhs, x, cfg.digits, &bc);
        out.merge(compare_points(
            cfg,
            rng,
            self.range,
            &*self.to_x,
            &lhs,
            &rhs,
        )?);
        Ok(out)
    }
}

fn pp(factors: Vec<(Poly, Rational)>) -> PowerProduct {
    PowerProduct::new(factors).expect("nonzero bases")
}

fn power(c: Rational, factors: Vec<(Poly, Rational)>) -> LiouvillianExpr {
    LiouvillianExpr::power(rfc(c), pp(factors))
}

fn x_poly() -> RationalFunction {
    RationalFunction::x()
}

fn s_squared() -> RationalFunction {
    RationalFunction::from_poly(Poly::from_i64s(&[0, 0, 1]))
}

fn run_heun(id: HeunIdentity, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    id.check(cfg, rng)
}

// ---- cyclic family ----------------------------------------------------

fn cyc1_identity(b: &Binding) -> Result<HeunIdentity> {
    let (a, bb) = nonzero_ab(b)?;
    let apb = add(&a, &bb);
    let params = HeunParams::new(
        add(&qi(1), &div(&bb, &a)),
        neg(&mul(&bb, &add(&a, &qi(1)))),
        a.clone(),
        neg(&bb),
        add(&qi(1), &a),
        qi(-1),
    );
    let rhs = power(
        qi(1),
        vec![(poly(&[div(&bb, &apb), div(&a, &apb)]), bb.clone())],
    );
    let arg = RationalFunction::from_poly(Poly::from_i64s(&[1, -1]));
    HeunIdentity::new(params, arg, rhs, Box::new(|u| 1.0 - u))
}

fn cyc1_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    run_heun(cyc1_identity(b)?, cfg, rng)
}

fn cyc2_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb) = nonzero_ab(b)?;
    let apb = add(&a, &bb);
    let params = HeunParams::new(
        add(&qi(1), &div(&a, &bb)),
        neg(&mul(&a, &add(&bb, &qi(1)))),
        neg(&a),
        bb.clone(),
        add(&qi(1), &bb),
        qi(-1),
    );
    let rhs = power(
        qi(1),
        vec![(poly(&[div(&a, &apb), neg(&div(&a, &apb))]), a.clone())],
    );
    let arg = RationalFunction::from_poly(poly(&[qi(1), div(&a, &bb)]));
    let ratio = to_f64(&div(&bb, &a));
    let id = HeunIdentity::new(params, arg, rhs, Box::new(move |u| ratio * (u - 1.0)))?;
    run_heun(id, cfg, rng)
}

fn cyc3_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb) = nonzero_ab(b)?;
    let qv = mul(
        &sub(&mul(&bb, &bb), &mul(&a, &a)),
        &add(&div(&sub(&a, &qi(1)), &bb), &qi(1)),
    );
    let params = HeunParams::new(
        neg(&div(&a, &bb)),
        qv,
        sub(&neg(&a), &bb),
        sub(&sub(&qi(2), &a), &bb),
        sub(&sub(&qi(1), &a), &bb),
        sub(&qi(1), &a),
    );
    // (1 − 1/x)^a (1 + b/(ax))^b with bases positive for x > 1
    let rhs = power(
        qi(1),
        vec![
            (Poly::from_i64s(&[-1, 1]), a.clone()),
            (Poly::x(), neg(&add(&a, &bb))),
            (poly(&[div(&bb, &a), qi(1)]), bb.clone()),
        ],
    );
    let arg = RationalFunction::new(Poly::one(), Poly::x())?;
    let id = HeunIdentity::new(params, arg, rhs, Box::new(|u| 1.0 / u))?;
    run_heun(id, cfg, rng)
}

fn cyc4_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb) = nonzero_ab(b)?;
    let r = div(&bb, &a);
    let params = HeunParams::new(
        neg(&r),
        mul(&qi(2), &sub(&qi(1), &r)),
        qi(2),
        sub(&sub(&qi(2), &a), &bb),
        qi(3),
        sub(&qi(1), &a),
    );
    let rhs = LiouvillianExpr::rational(RationalFunction::one()).add(&power(
        qi(-1),
        vec![
            (Poly::from_i64s(&[1, -1]), a.clone()),
            (poly(&[qi(1), div(&a, &bb)]), bb.clone()),
        ],
    ));
    let c = div(&mul(&a, &add(&a, &bb)), &mul(&qi(2), &bb));
    let pref = RationalFunction::from_poly(Poly::monomial(c, 2));
    let id = HeunIdentity::new(params, x_poly(), rhs, Box::new(|u| u))?.with_pref(pref);
    run_heun(id, cfg, rng)
}

fn pow1_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb) = nonzero_ab(b)?;
    let base = cyc1_identity(b)?;
    let apb = add(&a, &bb);
    let arg = RationalFunction::from_poly(Poly::monomial(div(&apb, &a), 1));
    let rhs = power(qi(1), vec![(Poly::from_i64s(&[1, -1]), bb.clone())]);
    let scale = to_f64(&div(&a, &apb));
    let id = HeunIdentity::new(base.params, arg, rhs, Box::new(move |u| scale * u))?;
    run_heun(id, cfg, rng)
}

fn pow2_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb) = nonzero_ab(b)?;
    if a == bb {
        return Err(outside("requires a ≠ b"));
    }
    let amb = sub(&a, &bb);
    let params = HeunParams::new(
        div(&a, &amb),
        div(&mul(&mul(&a, &bb), &add(&a, &qi(1))), &amb),
        a.clone(),
        bb.clone(),
        add(&qi(1), &a),
        add(&qi(1), &bb),
    );
    let rhs = power(qi(1), vec![(Poly::from_i64s(&[1, -1]), neg(&bb))]);
    let id = HeunIdentity::new(params, x_poly(), rhs, Box::new(|u| u))?;
    run_heun(id, cfg, rng)
}

fn contig_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb) = (b.get("a")?.clone(), b.get("b")?.clone());
    if is_nonpositive_integer(&add(&a, &qi(1))) || is_nonpositive_integer(&add(&a, &qi(2))) {
        return Err(outside("a + 1 and a + 2 must not be non-positive integers"));
    }
    let prec = cfg.prec();
    let pol = cfg.policy();
    let h1 = HpgParams::new(a.clone(), bb.clone(), add(&a, &qi(1))).to_complex(prec);
    let h2 = HpgParams::new(add(&a, &qi(1)), add(&bb, &qi(1)), add(&a, &qi(2))).to_complex(prec);
    let coef = div(&bb, &add(&a, &qi(1)));
    let lhs = |x: &Complex| -> Result<Complex> {
        let f1 = eval_hpg(&h1, x, &pol)?.value;
        let f2 = eval_hpg(&h2, x, &pol)?.value;
        Ok(f1 + Complex::with_val(prec, &coef) * x.clone() * f2)
    };
    let rhs_expr = power(qi(1), vec![(Poly::from_i64s(&[1, -1]), neg(&bb))]);
    let bc = BranchConvention::default();
    let rhs = |x: &Complex| lv_eval(&rhs_expr, x, cfg.digits, &bc);
    compare_points(cfg, rng, (0.02, 0.8), &|u| u, &lhs, &rhs)
}

fn p1_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb, c) = (
        b.get("a")?.clone(),
        b.get("b")?.clone(),
        b.get("c")?.clone(),
    );
    if is_nonpositive_integer(&c) {
        return Err(outside("c must not be a non-positive integer"));
    }
    let hp = HpgParams::new(a, bb, c);
    let (spec, heun) = p1_spec(&hp);
    admissible(&heun)?;
    let mut out = BindingResult::default();
    let rep = match_heun(&transform_ode(&spec)?, &heun)?;
    if let Some(w) = rep.witness {
        out.witness = Some(format!("equation level: {w}"));
    }
    let prec = cfg.prec();
    let pol = cfg.policy();
    let hc = heun.to_complex(prec);
    let gc = hp.to_complex(prec);
    let lhs = |x: &Complex| Ok(eval_heun(&hc, x, &pol)?.value);
    let rhs = |x: &Complex| {
        let x2 = Complex::with_val(prec, x.square_ref());
        Ok(eval_hpg(&gc, &x2, &pol)?.value)
    };
    out.merge(compare_points(cfg, rng, (0.02, 0.8), &|u| u, &lhs, &rhs)?);
    Ok(out)
}

fn trivpbf_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, m) = (b.int("N")?, b.int("M")?);
    let alpha = b.get("alpha")?.clone();
    if alpha.is_zero() {
        return Err(outside("α = 0 is the logarithmic case"));
    }
    let (spec, heun) = trivpbf_spec(n, m, &alpha)?;
    admissible(&heun)?;
    let mut out = BindingResult::default();
    let rep = match_heun(&transform_ode(&spec)?, &heun)?;
    if let Some(w) = rep.witness {
        out.witness = Some(format!("equation level: {w}"));
    }
    let prec = cfg.prec();
    let pol = cfg.policy();
    let hc = heun.to_complex(prec);
    let gc = HpgParams::new(sub(&qi(1), &alpha), qi(1), qi(2)).to_complex(prec);
    let phi = spec.phi.clone();
    let d = n + m;
    let pref = RationalFunction::new(
        phi.num().scale(&q(2 * m as i64, (n * d) as i64)),
        &Poly::monomial(qi(1), 2) * phi.den(),
    )?;
    let lhs = |x: &Complex| Ok(eval_heun(&hc, x, &pol)?.value);
    let rhs = |x: &Complex| {
        let z = phi.eval_complex(x)?;
        Ok(pref.eval_complex(x)? * eval_hpg(&gc, &z, &pol)?.value)
    };
    // keep φ(x) well inside the unit disc of the Gauss series
    let r = 0.8 * heun.radius();
    let mut hi = r;
    while hi > 1e-6 {
        let probe = Complex::with_val(prec, (hi, 0.0));
        if numeric::abs_f64(&phi.eval_complex(&probe)?) < 0.85
            && numeric::abs_f64(&phi.eval_complex(&Complex::with_val(prec, (hi / 2.0, 0.0)))?)
                < 0.85
        {
            break;
        }
        hi *= 0.8;
    }
    out.merge(compare_points(
        cfg,
        rng,
        (0.02 * hi, hi),
        &|u| u,
        &lhs,
        &rhs,
    )?);
    Ok(out)
}

/// `−(2M/(N·D·x²))·(N·log(1−x) + M·log(1+N·x/M))`.
pub fn cyclic_log_expr(n: u32, m: u32) -> LiouvillianExpr {
    let d = (n + m) as i64;
    let c = RationalFunction::new(
        Poly::constant(q(-2 * m as i64, n as i64 * d)),
        Poly::monomial(qi(1), 2),
    )
    .expect("nonzero");
    let t1 = Term::new(
        c.scale(&qi(n as i64)),
        PowerProduct::one(),
        Some(Poly::from_i64s(&[1, -1])),
    );
    let t2 = Term::new(
        c.scale(&qi(m as i64)),
        PowerProduct::one(),
        Some(poly(&[qi(1), q(n as i64, m as i64)])),
    );
    LiouvillianExpr::from_terms(vec![t1, t2])
}

fn trivpbf_heun(n: u32, m: u32, alpha: &Rational) -> HeunParams {
    let nq = qi(n as i64);
    let mq = qi(m as i64);
    let d = qi((n + m) as i64);
    let r = div(&mq, &nq);
    HeunParams::new(
        neg(&r),
        mul(&qi(2), &sub(&qi(1), &r)),
        qi(2),
        sub(&qi(2), &mul(&d, alpha)),
        qi(3),
        sub(&qi(1), &mul(&nq, alpha)),
    )
}

fn cyclog_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, m) = (b.int("N")?, b.int("M")?);
    let expr = cyclic_log_expr(n, m);
    let heun0 = trivpbf_heun(n, m, &Rational::new());
    let id = HeunIdentity::new(heun0, x_poly(), expr.clone(), Box::new(|u| u))?;
    let mut out = run_heun(id, cfg, rng)?;
    // limit α → 0 at α = 10⁻⁶
    let small = q(1, 1_000_000);
    let heun_eps = trivpbf_heun(n, m, &small);
    let prec = cfg.prec();
    let hc = heun_eps.to_complex(prec);
    let pol = cfg.policy();
    let bc = BranchConvention::default();
    let r = 0.8 * heun_eps.radius();
    let mut worst = 0f64;
    for k in 1..=3 {
        let x = Complex::with_val(prec, (r * k as f64 / 4.0, 0.0));
        let l = eval_heun(&hc, &x, &pol)?.value;
        let v = lv_eval(&expr, &x, cfg.digits, &bc)?;
        worst = worst.max(compare(&l, &v));
    }
    out.samples += 3;
    if worst > 1e-4 {
        out.witness.get_or_insert(format!(
            "α = 10⁻⁶ deviates from the log form by {worst:.3e}"
        ));
    }
    Ok(out)
}

fn klein_fixed() -> Vec<Binding> {
    let mut v = Vec::new();
    for n in 1..=8 {
        for m in 1..=8 {
            v.push(Binding::new(vec![("N", qi(n)), ("M", qi(m))]));
        }
    }
    v
}

fn klein_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, m) = (b.int("N")?, b.int("M")?);
    let cov = cyclic_covering(n, m)?;
    let heun = trivpbf_heun(n, m, &qi(1));
    let d = (n + m) as usize;
    let s = heun_series(&heun, d + 2)?;
    if !s.terminates {
        return Ok(BindingResult::exact(Some(
            "Heun series does not terminate".into(),
        )));
    }
    let c = q((n * (n + m)) as i64, 2 * m as i64);
    let lhs = Poly::monomial(c, 2) * s.to_poly();
    let phi = cov.phi().num().clone();
    let w = (lhs != phi).then(|| format!("(ND/2M)·x²·Hl = {lhs}, φ = {phi}"));
    Ok(BindingResult::exact(w))
}

/// `ψ(x) = (1 − (1−x)ⁿ)/(n·x)` as an exact polynomial.
pub fn psi_poly(n: u32) -> Result<Poly> {
    let top = &Poly::one() - &Poly::from_i64s(&[1, -1]).pow(n);
    top.exact_div(&Poly::monomial(qi(n as i64), 1))
}

fn psi_check(b: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let n = b.int("n")?;
    let a = b.get("a")?.clone();
    let psi = psi_poly(n)?;
    let mut out = BindingResult::default();
    if psi.deg() != n as usize - 1 {
        out.witness = Some(format!("ψ has degree {} for n = {n}", psi.deg()));
    }
    let prec = cfg.prec();
    let pol = cfg.policy();
    let l = HpgParams::new(sub(&qi(1), &mul(&qi(n as i64), &a)), qi(1), qi(2)).to_complex(prec);
    let r = HpgParams::new(sub(&qi(1), &a), qi(1), qi(2)).to_complex(prec);
    let npsi = &Poly::monomial(qi(n as i64), 1) * &psi;
    let lhs = |x: &Complex| Ok(eval_hpg(&l, x, &pol)?.value);
    let rhs = |x: &Complex| {
        let z = npsi.eval_complex(x);
        Ok(psi.eval_complex(x) * eval_hpg(&r, &z, &pol)?.value)
    };
    let hi = (1.0 - 0.15f64.powf(1.0 / n as f64)).min(0.8);
    out.merge(compare_points(
        cfg,
        rng,
        (0.02 * hi, hi),
        &|u| u,
        &lhs,
        &rhs,
    )?);
    Ok(out)
}

fn gensol_fixed() -> Vec<Binding> {
    vec![Binding::new(vec![("a", q(1, 2)), ("b", q(1, 3))])]
}

/// Heun parameters `(−b/a, 0; 0, −a−b; −1; 1−a)` annihilating
/// `C₁ + C₂(x−1)^a(ax+b)^b`.
pub fn general_solution_heun(a: &Rational, b: &Rational) -> HeunParams {
    HeunParams::new(
        neg(&div(b, a)),
        qi(0),
        qi(0),
        sub(&neg(a), b),
        qi(-1),
        sub(&qi(1), a),
    )
}

fn gensol_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, bb) = nonzero_ab(b)?;
    let heun = general_solution_heun(&a, &bb);
    if heun.t == 1 {
        return Err(outside("t = 1"));
    }
    let ode = heun_ode(&heun)?;
    let e = LiouvillianExpr::rational(RationalFunction::one()).add(&power(
        qi(1),
        vec![
            (Poly::from_i64s(&[-1, 1]), a.clone()),
            (poly(&[bb.clone(), a.clone()]), bb.clone()),
        ],
    ));
    let w = match lv_ode_residual(&e, &ode)? {
        Residual::ExactZero => None,
        Residual::Nonzero(w) => Some(w),
    };
    Ok(BindingResult::exact(w))
}

// ---- polynomial instances ---------------------------------------------

fn poly_fixed() -> Vec<Binding> {
    let mut v = Vec::new();
    for n in 1..=4 {
        for a in [q(1, 2), q(2, 7), q(-5, 3), q(3, 4), q(-1, 5)] {
            v.push(Binding::new(vec![("n", qi(n)), ("a", a)]));
        }
    }
    v
}

fn hpg_poly(a: Rational, b: Rational, c: Rational, order: usize) -> Result<Poly> {
    let s = hpg_series(&HpgParams::new(a, b, c), order)?;
    Ok(s.to_poly())
}

/// `Σ cₖ·numᵏ·den^(e−k)` for a polynomial `Σ cₖ zᵏ` of degree `≤ e`.
fn homogenize(p: &Poly, num: &Poly, den: &Poly, e: u32) -> Poly {
    let mut out = Poly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        let term = (&num.pow(k as u32) * &den.pow(e - k as u32)).scale(c);
        out = &out + &term;
    }
    out
}

fn heun_poly(p: &HeunParams, degree: usize) -> Result<Option<Poly>> {
    admissible(p)?;
    let s = heun_series(p, degree + 3)?;
    Ok(s.terminates.then(|| s.to_poly()))
}

fn poly_witness(lhs: Option<Poly>, rhs: Poly) -> Option<String> {
    match lhs {
        None => Some("Heun series does not terminate".into()),
        Some(l) if l == rhs => None,
        Some(l) => Some(format!("Heun side {l} differs from {rhs}")),
    }
}

/// The polynomial instance `Hl(1/4, −9na/4; −3n, 3a; 1/2; a−n+1/2; x) =
/// ₂F₁(−n, a; 1/2; x(4x−3)²)`, checked exactly.
pub fn p15_holds(n: u32, a: &Rational, qv: &Rational) -> Result<Option<String>> {
    let ni = qi(n as i64);
    let heun = HeunParams::new(
        q(1, 4),
        qv.clone(),
        neg(&mul(&qi(3), &ni)),
        mul(&qi(3), a),
        q(1, 2),
        add(&sub(a, &ni), &q(1, 2)),
    );
    let lhs = heun_poly(&heun, 3 * n as usize)?;
    let f = hpg_poly(neg(&ni), a.clone(), q(1, 2), n as usize)?;
    let arg = &Poly::x() * &Poly::from_i64s(&[-3, 4]).pow(2);
    Ok(poly_witness(lhs, f.compose(&arg)))
}

pub fn p15_q(n: u32, a: &Rational) -> Rational {
    neg(&div(&mul(&qi(9 * n as i64), a), &qi(4)))
}

/// `q̂₁ = 9na + 18n² − 6n`.
pub fn q_hat_1(n: u32, a: &Rational) -> Rational {
    let n = n as i64;
    add(&mul(&qi(9 * n), a), &qi(18 * n * n - 6 * n))
}

/// `q̂₂ = −9na + 9n² + 3n/2`.
pub fn q_hat_2(n: u32, a: &Rational) -> Rational {
    let n = n as i64;
    add(
        &neg(&mul(&qi(9 * n), a)),
        &add(&qi(9 * n * n), &q(3 * n, 2)),
    )
}

/// `Hl(9, q; −3n, a−2n; a−n+1/3; 1−2n−2a; x) = (1−x)^(2n) ₂F₁(−n, a;
/// a−n+1/3; −x(x−9)²/(27(x−1)²))`, checked exactly for the given `q`.
pub fn p19_holds(n: u32, a: &Rational, qv: &Rational) -> Result<Option<String>> {
    let ni = qi(n as i64);
    let c = add(&sub(a, &ni), &q(1, 3));
    if is_nonpositive_integer(&c) {
        return Err(outside("a − n + 1/3 is a non-positive integer"));
    }
    let heun = HeunParams::new(
        qi(9),
        qv.clone(),
        neg(&mul(&qi(3), &ni)),
        sub(a, &mul(&qi(2), &ni)),
        c.clone(),
        sub(&qi(1 - 2 * n as i64), &mul(&qi(2), a)),
    );
    let lhs = heun_poly(&heun, 3 * n as usize)?;
    let f = hpg_poly(neg(&ni), a.clone(), c, n as usize)?;
    // −x(x−9)²/27 over (x−1)², each power k paired with (x−1)^(2n−2k)
    let num = (&Poly::x() * &Poly::from_i64s(&[-9, 1]).pow(2)).scale(&q(-1, 27));
    let den = Poly::from_i64s(&[-1, 1]).pow(2);
    Ok(poly_witness(lhs, homogenize(&f, &num, &den, n)))
}

/// `Hl(9/8, q; −4n, a−3n; 3a−3n−1/2; a−n+1/2; x) = (1−8x/9)^(3n)
/// ₂F₁(−n, a; a−n+1/2; 64x³(x−1)/(8x−9)³)`, checked exactly for the given
/// `q`.
pub fn p20_holds(n: u32, a: &Rational, qv: &Rational) -> Result<Option<String>> {
    let ni = qi(n as i64);
    let c_h = sub(&sub(&mul(&qi(3), a), &mul(&qi(3), &ni)), &q(1, 2));
    let c_f = add(&sub(a, &ni), &q(1, 2));
    if is_nonpositive_integer(&c_h) || is_nonpositive_integer(&c_f) {
        return Err(outside(
            "3a − 3n − 1/2 or a − n + 1/2 is a non-positive integer",
        ));
    }
    let heun = HeunParams::new(
        q(9, 8),
        qv.clone(),
        neg(&mul(&qi(4), &ni)),
        sub(a, &mul(&qi(3), &ni)),
        c_h,
        c_f.clone(),
    );
    let lhs = heun_poly(&heun, 4 * n as usize)?;
    let f = hpg_poly(neg(&ni), a.clone(), c_f, n as usize)?;
    // (8x−9)³ = −729·(1 − 8x/9)³
    let num = (&Poly::monomial(qi(64), 3) * &Poly::from_i64s(&[-1, 1])).scale(&q(-1, 729));
    let den = poly(&[qi(1), q(-8, 9)]).pow(3);
    Ok(poly_witness(lhs, homogenize(&f, &num, &den, n)))
}

fn p15_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, a) = (b.int("n")?, b.get("a")?.clone());
    Ok(BindingResult::exact(p15_holds(n, &a, &p15_q(n, &a))?))
}

fn p19_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, a) = (b.int("n")?, b.get("a")?.clone());
    Ok(BindingResult::exact(p19_holds(n, &a, &q_hat_1(n, &a))?))
}

fn p20_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, a) = (b.int("n")?, b.get("a")?.clone());
    Ok(BindingResult::exact(p20_holds(n, &a, &q_hat_2(n, &a))?))
}

// ---- dihedral family --------------------------------------------------

fn n_fixed() -> Vec<Binding> {
    (1..=10).map(|n| Binding::new(vec![("n", qi(n))])).collect()
}

/// `θ₁ = ₂F₁(−n/2, −(n−1)/2; 1/2; x)` and `θ₂ = n·₂F₁(−(n−1)/2, −(n−2)/2;
/// 3/2; x)`.
pub fn small_thetas(n: u32) -> Result<(Poly, Poly)> {
    let ni = qi(n as i64);
    let t1 = hpg_poly(
        div(&neg(&ni), &qi(2)),
        div(&sub(&qi(1), &ni), &qi(2)),
        q(1, 2),
        n as usize,
    )?;
    let t2 = hpg_poly(
        div(&sub(&qi(1), &ni), &qi(2)),
        div(&sub(&qi(2), &ni), &qi(2)),
        q(3, 2),
        n as usize,
    )?;
    Ok((t1, t2.scale(&ni)))
}

fn theta_small_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let n = b.int("n")?;
    let (t1, t2) = small_thetas(n)?;
    let s2 = Poly::from_i64s(&[0, 0, 1]);
    let rhs = &t1.compose(&s2) - &(&t2.compose(&s2) * &Poly::x());
    let lhs = Poly::from_i64s(&[1, -1]).pow(n);
    Ok(BindingResult::exact(
        (lhs != rhs).then(|| format!("θ₁(s²) − s·θ₂(s²) = {rhs}")),
    ))
}

fn cheb_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let n = b.int("n")?;
    let (t1, t2) = small_thetas(n)?;
    let lhs = &t1.pow(2) - &(&Poly::x() * &t2.pow(2));
    let rhs = Poly::from_i64s(&[1, -1]).pow(n);
    let mut w = (lhs != rhs).then(|| format!("θ₁² − xθ₂² = {lhs}"));
    // θ₁(x) = T_n(1/√(1−x))·(1−x)^(n/2) evaluated through T_n(z) = cos(n·arccos z)
    // is checked in the equivalent polynomial form θ₁(1 − 1/z²)·z^n = T_n(z)
    let tn = chebyshev_t(n);
    let z = Poly::x();
    let sub_arg_num = &z.pow(2) - &Poly::one();
    let theta_h = homogenize(&t1, &sub_arg_num, &z.pow(2), n.div_ceil(2));
    // theta_h = z^(2⌈n/2⌉)·θ₁(1 − 1/z²)
    let target = if n % 2 == 0 { tn } else { &tn * &z };
    if w.is_none() && theta_h != target {
        w = Some(format!("θ₁ does not match T_{n}: {theta_h} vs {target}"));
    }
    Ok(BindingResult::exact(w))
}

/// Chebyshev polynomial of the first kind.
pub fn chebyshev_t(n: u32) -> Poly {
    let mut prev = Poly::one();
    let mut cur = Poly::x();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&Poly::from_i64s(&[0, 2]) * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn nm_pairs_fixed() -> Vec<Binding> {
    let mut v = Vec::new();
    for n in 1..=9 {
        for m in (n + 1)..=9 {
            v.push(Binding::new(vec![("N", qi(n)), ("M", qi(m))]));
        }
    }
    v
}

/// Heun parameters of `Θ₁`.
pub fn theta1_heun(n: u32, m: u32) -> HeunParams {
    let (nq, mq, d) = (qi(n as i64), qi(m as i64), qi((n + m) as i64));
    HeunParams::new(
        div(&mul(&mq, &mq), &mul(&nq, &nq)),
        div(&mul(&mq, &d), &mul(&qi(4), &nq)),
        neg(&div(&d, &qi(2))),
        neg(&div(&sub(&d, &qi(1)), &qi(2))),
        q(-1, 2),
        sub(&qi(1), &nq),
    )
}

/// Heun parameters of `Θ₂` and its prefactor `N·D·(M−N)/(3M²)`.
pub fn theta2_heun(n: u32, m: u32) -> (HeunParams, Rational) {
    let (nq, mq, d) = (qi(n as i64), qi(m as i64), qi((n + m) as i64));
    let t = div(&mul(&mq, &mq), &mul(&nq, &nq));
    let qv = sub(
        &mul(&q(3, 2), &add(&qi(1), &t)),
        &div(&mul(&qi(5), &mul(&mq, &d)), &mul(&qi(4), &nq)),
    );
    let params = HeunParams::new(
        t,
        qv,
        neg(&div(&sub(&d, &qi(3)), &qi(2))),
        neg(&div(&sub(&d, &qi(4)), &qi(2))),
        q(5, 2),
        sub(&qi(1), &nq),
    );
    let pref = div(
        &mul(&mul(&nq, &d), &sub(&mq, &nq)),
        &mul(&qi(3), &mul(&mq, &mq)),
    );
    (params, pref)
}

/// `Θ` equals `pref·Hl(params)` and the Heun polynomial has zero residual.
pub fn heun_polynomial_holds(
    theta: &Poly,
    params: &HeunParams,
    pref: &Rational,
) -> Result<Option<String>> {
    let ode = heun_ode(params)?;
    let s = heun_series(params, theta.deg() + 4)?;
    if !s.terminates {
        return Ok(Some("Heun series does not terminate".into()));
    }
    let h = s.to_poly().scale(pref);
    if &h != theta {
        return Ok(Some(format!("{pref}·Hl = {h}, expected {theta}")));
    }
    if !ode.apply_cleared(&s.to_poly()).is_zero() {
        return Ok(Some("nonzero ODE residual".into()));
    }
    Ok(None)
}

fn theta1_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, m) = (b.int("N")?, b.int("M")?);
    let pair = dihedral_pair(n, m)?;
    Ok(BindingResult::exact(heun_polynomial_holds(
        &pair.theta1,
        &theta1_heun(n, m),
        &qi(1),
    )?))
}

fn theta2_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (n, m) = (b.int("N")?, b.int("M")?);
    let pair = dihedral_pair(n, m)?;
    let (params, pref) = theta2_heun(n, m);
    Ok(BindingResult::exact(heun_polynomial_holds(
        &pair.theta2,
        &params,
        &pref,
    )?))
}

fn n1_fixed() -> Vec<Binding> {
    (2..=8).map(|m| Binding::new(vec![("M", qi(m))])).collect()
}

fn n1_check(b: &Binding, _: &RunConfig, _: &mut ChaCha8Rng) -> Result<BindingResult> {
    let m = b.int("M")?;
    let pair = dihedral_pair(1, m)?;
    let mq = qi(m as i64);
    let m2 = mul(&mq, &mq);
    let arg = Poly::monomial(div(&qi(1), &m2), 1);
    let t1 = hpg_poly(
        div(&neg(&mq), &qi(2)),
        div(&neg(&add(&mq, &qi(1))), &qi(2)),
        q(-1, 2),
        m as usize + 2,
    )?;
    let t2 = hpg_poly(
        div(&sub(&qi(2), &mq), &qi(2)),
        div(&sub(&qi(3), &mq), &qi(2)),
        q(5, 2),
        m as usize + 2,
    )?;
    let t1 = t1.compose(&arg);
    let t2 = t2
        .compose(&arg)
        .scale(&div(&sub(&m2, &qi(1)), &mul(&qi(3), &m2)));
    let w = if t1 != pair.theta1 {
        Some(format!("Θ₁ = {}, ₂F₁ form {t1}", pair.theta1))
    } else if t2 != pair.theta2 {
        Some(format!("Θ₂ = {}, ₂F₁ form {t2}", pair.theta2))
    } else {
        None
    };
    Ok(BindingResult::exact(w))
}

type Factors = Vec<(Poly, Rational)>;

/// `(1+s)^(−a)(1 − r·s)^(−b)` and its conjugate `(1−s)^(−a)(1 + r·s)^(∓b)`.
fn dihedral_terms(a: &Rational, b: &Rational, r: &Rational, conj_sign: i64) -> (Factors, Factors) {
    let plus = vec![
        (Poly::from_i64s(&[1, 1]), neg(a)),
        (poly(&[qi(1), neg(r)]), neg(b)),
    ];
    let minus = vec![
        (Poly::from_i64s(&[1, -1]), neg(a)),
        (poly(&[qi(1), r.clone()]), mul(&qi(conj_sign), &neg(b))),
    ];
    (plus, minus)
}

fn half_sum(a: &Rational, b: &Rational, r: &Rational, conj_sign: i64) -> LiouvillianExpr {
    let (p, m) = dihedral_terms(a, b, r, conj_sign);
    power(q(1, 2), p).add(&power(q(1, 2), m))
}

fn scaled_difference(
    a: &Rational,
    b: &Rational,
    r: &Rational,
    coeff: RationalFunction,
) -> LiouvillianExpr {
    let (p, m) = dihedral_terms(a, b, r, 1);
    LiouvillianExpr::power(coeff.clone(), pp(p)).add(&LiouvillianExpr::power(-coeff, pp(m)))
}

fn sqrt_map() -> Box<dyn Fn(f64) -> f64> {
    Box::new(|u: f64| u.sqrt())
}

pub const PRINTED_SIGN_FLAG: &str =
    "sign_variant: the +b exponent in the conjugate term fails, the -b form holds";

/// Evaluate the `+b` variant of a sum formula at one point.
fn printed_variant_flag(
    id: &HeunIdentity,
    printed: &LiouvillianExpr,
    cfg: &RunConfig,
) -> Result<Option<String>> {
    let prec = cfg.prec();
    let u = 0.5 * id.range.1;
    let x = Complex::with_val(prec, ((id.to_x)(u), 0.0));
    let l = id.lhs(&x, cfg)?;
    let r = lv_eval(printed, &x, cfg.digits, &BranchConvention::default())?;
    let e = compare(&l, &r);
    Ok((e > cfg.tolerance).then(|| PRINTED_SIGN_FLAG.to_string()))
}

fn eval1_identity(a: &Rational, b: &Rational, conj_sign: i64) -> Result<HeunIdentity> {
    let params = HeunParams::new(
        div(&mul(b, b), &mul(a, a)),
        neg(&div(&mul(b, &add(a, b)), &mul(&qi(4), a))),
        div(&add(a, b), &qi(2)),
        div(&add(&add(a, b), &qi(1)), &qi(2)),
        q(-1, 2),
        add(&qi(1), a),
    );
    HeunIdentity::new(
        params,
        s_squared(),
        half_sum(a, b, &div(a, b), conj_sign),
        sqrt_map(),
    )
}

fn eval1_check(bd: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, b) = dihedral_ab(bd)?;
    let id = eval1_identity(&a, &b, 1)?;
    let mut out = id.check(cfg, rng)?;
    if let Some(f) = printed_variant_flag(&id, &half_sum(&a, &b, &div(&a, &b), -1), cfg)? {
        out.flags.push(f);
    }
    Ok(out)
}

fn eval2_check(bd: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, b) = dihedral_ab(bd)?;
    let apb = add(&a, &b);
    let params = HeunParams::new(
        div(&sub(&mul(&a, &a), &mul(&b, &b)), &mul(&a, &a)),
        div(&mul(&mul(&apb, &apb), &add(&a, &qi(1))), &mul(&qi(4), &a)),
        div(&apb, &qi(2)),
        div(&add(&apb, &qi(1)), &qi(2)),
        add(&qi(1), &a),
        q(-1, 2),
    );
    let bma = sub(&b, &a);
    let rhs = power(
        qi(1),
        vec![
            (poly(&[q(1, 2), q(1, 2)]), neg(&a)),
            (poly(&[div(&b, &bma), neg(&div(&a, &bma))]), neg(&b)),
        ],
    );
    let arg = RationalFunction::from_poly(Poly::from_i64s(&[1, 0, -1]));
    let id = HeunIdentity::new(params, arg, rhs, Box::new(|u: f64| (1.0 - u).sqrt()))?;
    // stay near the expansion point so that (b − a√x)/(b − a) keeps away from its cut
    let r = id.range.1.min(0.5 * to_f64(&div(&bma, &a)).abs()).min(0.5);
    let id = id.with_range((-r, r));
    id.check(cfg, rng)
}

fn eval3_check(bd: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, b) = dihedral_ab(bd)?;
    let apb = add(&a, &b);
    let a2b2 = add(&mul(&a, &a), &mul(&b, &b));
    let params = HeunParams::new(
        div(&mul(&b, &b), &mul(&a, &a)),
        div(
            &add(&mul(&qi(5), &mul(&mul(&a, &b), &apb)), &mul(&qi(6), &a2b2)),
            &mul(&qi(4), &mul(&a, &a)),
        ),
        div(&add(&apb, &qi(3)), &qi(2)),
        div(&add(&apb, &qi(4)), &qi(2)),
        q(5, 2),
        add(&qi(1), &a),
    );
    let c = div(
        &mul(&qi(3), &mul(&b, &b)),
        &mul(&mul(&qi(2), &a), &sub(&mul(&a, &a), &mul(&b, &b))),
    );
    let coeff = RationalFunction::new(Poly::constant(c), Poly::monomial(qi(1), 3))?;
    let rhs = scaled_difference(&a, &b, &div(&a, &b), coeff);
    let id = HeunIdentity::new(params, s_squared(), rhs, sqrt_map())?;
    id.check(cfg, rng)
}

fn eval4_identity(a: &Rational, b: &Rational, conj_sign: i64) -> Result<HeunIdentity> {
    let a2 = mul(a, a);
    let b2 = mul(b, b);
    let d = sub(&a2, &b2);
    let cubes = add(&mul(&a2, a), &mul(&b2, b));
    let params = HeunParams::new(
        div(&a2, &b2),
        div(&add(&mul(&d, &d), &cubes), &mul(&qi(4), &b2)),
        div(&add(a, b), &qi(2)),
        div(&add(&add(a, b), &qi(3)), &qi(2)),
        q(1, 2),
        add(&qi(1), a),
    );
    HeunIdentity::new(
        params,
        s_squared(),
        half_sum(a, b, &div(b, a), conj_sign),
        sqrt_map(),
    )
}

fn eval4_check(bd: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, b) = dihedral_ab(bd)?;
    let id = eval4_identity(&a, &b, 1)?;
    let mut out = id.check(cfg, rng)?;
    if let Some(f) = printed_variant_flag(&id, &half_sum(&a, &b, &div(&b, &a), -1), cfg)? {
        out.flags.push(f);
    }
    Ok(out)
}

fn eval5_check(bd: &Binding, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<BindingResult> {
    let (a, b) = dihedral_ab(bd)?;
    let a2 = mul(&a, &a);
    let b2 = mul(&b, &b);
    let d = sub(&a2, &b2);
    let cubes = add(&mul(&a2, &a), &mul(&b2, &b));
    let qv = div(
        &add(
            &add(&mul(&d, &d), &mul(&qi(3), &cubes)),
            &mul(&qi(2), &add(&a2, &b2)),
        ),
        &mul(&qi(4), &b2),
    );
    let params = HeunParams::new(
        div(&a2, &b2),
        qv,
        div(&add(&add(&a, &b), &qi(1)), &qi(2)),
        div(&add(&add(&a, &b), &qi(4)), &qi(2)),
        q(3, 2),
        add(&qi(1), &a),
    );
    let c = div(&a, &mul(&qi(2), &sub(&b2, &a2)));
    let coeff = RationalFunction::new(Poly::constant(c), Poly::x())?;
    let rhs = scaled_difference(&a, &b, &div(&b, &a), coeff);
    let id = HeunIdentity::new(params, s_squared(), rhs, sqrt_map())?;
    id.check(cfg, rng)
}

static CATALOG: &[IdentityCase] = &[
    IdentityCase {
        id: "CYC1",
        mode: Mode::Numeric,
        summary: "Hl(1+b/a, −b(a+1); a, −b; 1+a; −1; 1−x) = ((ax+b)/(a+b))^b near x = 1",
        domain: "a, b rational in (−2, 2); a, b, a+b ≠ 0",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: cyc1_check,
    },
    IdentityCase {
        id: "CYC2",
        mode: Mode::Numeric,
        summary: "Hl(1+a/b, −a(b+1); −a, b; 1+b; −1; 1+ax/b) = (a(1−x)/(a+b))^a near x = −b/a",
        domain: "a, b rational in (−2, 2); a, b, a+b ≠ 0",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: cyc2_check,
    },
    IdentityCase {
        id: "CYC3",
        mode: Mode::Numeric,
        summary: "Hl(−a/b, (b²−a²)((a−1)/b+1); −a−b, 2−a−b; 1−a−b; 1−a; 1/x) = (1−1/x)^a (1+b/(ax))^b near x = ∞",
        domain: "a, b rational in (−2, 2); a, b, a+b ≠ 0; 1−a−b not a non-positive integer",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: cyc3_check,
    },
    IdentityCase {
        id: "CYC4",
        mode: Mode::Numeric,
        summary: "(a(a+b)/2b)·x²·Hl(−b/a, 2(1−b/a); 2, 2−a−b; 3; 1−a; x) = 1 − (1−x)^a (1+ax/b)^b near x = 0",
        domain: "a, b rational in (−2, 2); a, b, a+b ≠ 0",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: cyc4_check,
    },
    IdentityCase {
        id: "CYC-GENSOL",
        mode: Mode::ExactResidual,
        summary: "C₁ + C₂(x−1)^a(ax+b)^b solves Heun (t,q,a,b,c,d) = (−b/a, 0, 0, −a−b, −1, 1−a)",
        domain: "a, b rational in (−2, 2); a, b, a+b ≠ 0; a ≠ −b",
        sample: Some(sample_ab),
        fixed: gensol_fixed,
        check: gensol_check,
    },
    IdentityCase {
        id: "CYC-TRIV",
        mode: Mode::Numeric,
        summary: "Hl(−M/N, 2(1−M/N); 2, 2−Dα; 3; 1−Nα; x) = (2Mφ/(NDx²))·₂F₁(1−α, 1; 2; φ)",
        domain: "1 ≤ N, M ≤ 6; α rational in (−1, 1), α ≠ 0",
        sample: Some(sample_nm_alpha),
        fixed: no_fixed,
        check: trivpbf_check,
    },
    IdentityCase {
        id: "CYC-LOG",
        mode: Mode::ExactResidual,
        summary: "α = 0: Hl(−M/N, 2(1−M/N); 2, 2; 3; 1; x) = −(2M/(NDx²))(N log(1−x) + M log(1+Nx/M))",
        domain: "1 ≤ N, M ≤ 6",
        sample: Some(sample_nm),
        fixed: no_fixed,
        check: cyclog_check,
    },
    IdentityCase {
        id: "CYC-KLEIN",
        mode: Mode::ExactPolynomial,
        summary: "φ = (ND/2M)·x²·Hl(−M/N, 2(1−M/N); 2, 2−D; 3; 1−N; x)",
        domain: "1 ≤ N, M ≤ 8",
        sample: None,
        fixed: klein_fixed,
        check: klein_check,
    },
    IdentityCase {
        id: "CYC-PSI",
        mode: Mode::Numeric,
        summary: "₂F₁(1−na, 1; 2; x) = ψ(x)·₂F₁(1−a, 1; 2; nxψ(x)), ψ = (1−(1−x)ⁿ)/(nx) of degree n−1",
        domain: "1 ≤ n ≤ 10; a rational in (−2, 2)",
        sample: Some(sample_n_a),
        fixed: n_fixed_with_a,
        check: psi_check,
    },
    IdentityCase {
        id: "REM-POW1",
        mode: Mode::Numeric,
        summary: "Hl(1+b/a, −b(a+1); a, −b; 1+a; −1; (a+b)x/a) = (1−x)^b",
        domain: "a, b rational in (−2, 2); a, b, a+b ≠ 0",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: pow1_check,
    },
    IdentityCase {
        id: "REM-POW2",
        mode: Mode::Numeric,
        summary: "Hl(a/(a−b), ab(a+1)/(a−b); a, b; 1+a; 1+b; x) = (1−x)^(−b)",
        domain: "a, b rational in (−2, 2); a, b, a+b ≠ 0; a ≠ b",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: pow2_check,
    },
    IdentityCase {
        id: "REM-CONTIG",
        mode: Mode::Numeric,
        summary: "(1−x)^(−b) = ₂F₁(a, b; a+1; x) + (bx/(a+1))·₂F₁(a+1, b+1; a+2; x)",
        domain: "a, b rational in (−2, 2); a+1, a+2 not non-positive integers",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: contig_check,
    },
    IdentityCase {
        id: "P1",
        mode: Mode::Numeric,
        summary: "Hl(−1, 0; 2a, 2b; 2c−1; a+b−c+1; x) = ₂F₁(a, b; c; x²), equation and function level",
        domain: "a, b, c rational in (−2, 2); c, 2c−1 not non-positive integers",
        sample: Some(sample_abc),
        fixed: no_fixed,
        check: p1_check,
    },
    IdentityCase {
        id: "POLY-P15",
        mode: Mode::ExactPolynomial,
        summary: "Hl(1/4, −9na/4; −3n, 3a; 1/2; a−n+1/2; x) = ₂F₁(−n, a; 1/2; x(4x−3)²)",
        domain: "1 ≤ n ≤ 4; a in a fixed rational set",
        sample: None,
        fixed: poly_fixed,
        check: p15_check,
    },
    IdentityCase {
        id: "POLY-P19",
        mode: Mode::ExactPolynomial,
        summary: "Hl(9, q̂₁; −3n, a−2n; a−n+1/3; 1−2n−2a; x) = (1−x)^(2n)·₂F₁(−n, a; a−n+1/3; −x(x−9)²/(27(x−1)²))",
        domain: "1 ≤ n ≤ 4; a in a fixed rational set",
        sample: None,
        fixed: poly_fixed,
        check: p19_check,
    },
    IdentityCase {
        id: "POLY-P20",
        mode: Mode::ExactPolynomial,
        summary: "Hl(9/8, q̂₂; −4n, a−3n; 3a−3n−1/2; a−n+1/2; x) = (1−8x/9)^(3n)·₂F₁(−n, a; a−n+1/2; 64x³(x−1)/(8x−9)³)",
        domain: "1 ≤ n ≤ 4; a in a fixed rational set; 3a−3n−1/2 not a non-positive integer",
        sample: None,
        fixed: poly_fixed,
        check: p20_check,
    },
    IdentityCase {
        id: "DIH-THETA-SMALL",
        mode: Mode::ExactPolynomial,
        summary: "(1−√x)ⁿ = θ₁(x) − θ₂(x)√x",
        domain: "1 ≤ n ≤ 10",
        sample: None,
        fixed: n_fixed,
        check: theta_small_check,
    },
    IdentityCase {
        id: "DIH-CHEB",
        mode: Mode::ExactPolynomial,
        summary: "θ₁² − x·θ₂² = (1−x)ⁿ and θ₁ in terms of the Chebyshev polynomial Tₙ",
        domain: "1 ≤ n ≤ 10",
        sample: None,
        fixed: n_fixed,
        check: cheb_check,
    },
    IdentityCase {
        id: "DIH-THETA1",
        mode: Mode::ExactPolynomial,
        summary: "Θ₁ = Hl(M²/N², MD/4N; −D/2, −(D−1)/2; −1/2; 1−N; x)",
        domain: "1 ≤ N < M ≤ 9",
        sample: None,
        fixed: nm_pairs_fixed,
        check: theta1_check,
    },
    IdentityCase {
        id: "DIH-THETA2",
        mode: Mode::ExactPolynomial,
        summary: "Θ₂ = (ND(M−N)/3M²)·Hl(M²/N², 3(1+M²/N²)/2 − 5MD/4N; −(D−3)/2, −(D−4)/2; 5/2; 1−N; x)",
        domain: "1 ≤ N < M ≤ 9",
        sample: None,
        fixed: nm_pairs_fixed,
        check: theta2_check,
    },
    IdentityCase {
        id: "DIH-N1",
        mode: Mode::ExactPolynomial,
        summary: "N = 1: Θ₁ = ₂F₁(−M/2, −(M+1)/2; −1/2; x/M²), Θ₂ = ((M²−1)/3M²)·₂F₁(−(M−2)/2, −(M−3)/2; 5/2; x/M²)",
        domain: "2 ≤ M ≤ 8",
        sample: None,
        fixed: n1_fixed,
        check: n1_check,
    },
    IdentityCase {
        id: "DIH-EVAL1",
        mode: Mode::Numeric,
        summary: "Hl(b²/a², −b(a+b)/4a; (a+b)/2, (a+b+1)/2; −1/2; 1+a; x) = half-sum of (1±√x)^(−a)(1∓(a/b)√x)^(−b)",
        domain: "a, b rational in (−2, 2); a, b ≠ 0; a ≠ ±b",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: eval1_check,
    },
    IdentityCase {
        id: "DIH-EVAL2",
        mode: Mode::Numeric,
        summary: "Hl((a²−b²)/a², (a+b)²(a+1)/4a; (a+b)/2, (a+b+1)/2; 1+a; −1/2; 1−x) = ((1+√x)/2)^(−a)((b−a√x)/(b−a))^(−b)",
        domain: "a, b rational in (−2, 2); a, b ≠ 0; a ≠ ±b",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: eval2_check,
    },
    IdentityCase {
        id: "DIH-EVAL3",
        mode: Mode::Numeric,
        summary: "Hl(b²/a², (5ab(a+b)+6(a²+b²))/4a²; (a+b+3)/2, (a+b+4)/2; 5/2; 1+a; x) = (3b²x^(−3/2)/(2a(a²−b²)))·difference",
        domain: "a, b rational in (−2, 2); a, b ≠ 0; a ≠ ±b",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: eval3_check,
    },
    IdentityCase {
        id: "DIH-EVAL4",
        mode: Mode::Numeric,
        summary: "Hl(a²/b², ((a²−b²)²+a³+b³)/4b²; (a+b)/2, (a+b+3)/2; 1/2; 1+a; x) = half-sum of (1±√x)^(−a)(1∓(b/a)√x)^(−b)",
        domain: "a, b rational in (−2, 2); a, b ≠ 0; a ≠ ±b",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: eval4_check,
    },
    IdentityCase {
        id: "DIH-EVAL5",
        mode: Mode::Numeric,
        summary: "Hl(a²/b², ((a²−b²)²+3(a³+b³)+2(a²+b²))/4b²; (a+b+1)/2, (a+b+4)/2; 3/2; 1+a; x) = (a·x^(−1/2)/(2(b²−a²)))·difference",
        domain: "a, b rational in (−2, 2); a, b ≠ 0; a ≠ ±b",
        sample: Some(sample_ab),
        fixed: no_fixed,
        check: eval5_check,
    },
];

fn n_fixed_with_a() -> Vec<Binding> {
    (1..=10)
        .map(|n| Binding::new(vec![("n", qi(n)), ("a", q(2, 3))]))
        .collect()
}

pub fn catalog() -> &'static [IdentityCase] {
    CATALOG
}

pub fn find(id: &str) -> Option<&'static IdentityCase> {
    CATALOG.iter().find(|c| c.id == id)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn case_rng(case: &IdentityCase, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(case.id))
}

const MAX_REDRAWS: usize = 200;

/// Check explicit bindings; bindings outside the case domain are an error.
pub fn run_identity_with(
    id: &str,
    bindings: &[Binding],
    cfg: &RunConfig,
) -> Result<VerificationReport> {
    let case = find(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    let mut rng = case_rng(case, cfg.seed);
    let start = Instant::now();
    let mut total = BindingResult::default();
    let mut failing = None;
    for b in bindings {
        let r = (case.check)(b, cfg, &mut rng)?;
        if r.witness.is_some() && failing.is_none() {
            failing = Some(b.to_string());
        }
        total.merge(r);
    }
    Ok(finish(case, total, bindings.len(), failing, start))
}

fn finish(
    case: &IdentityCase,
    mut total: BindingResult,
    n: usize,
    failing: Option<String>,
    start: Instant,
) -> VerificationReport {
    let numeric_fail = total.worst.is_some_and(|w| !w.is_finite());
    let status = if total.witness.is_none() && !numeric_fail {
        Status::Pass
    } else {
        Status::Fail
    };
    total.flags.sort();
    total.flags.dedup();
    VerificationReport {
        id: case.id.to_string(),
        mode: case.mode,
        status,
        worst_error: total.worst,
        samples: total.samples,
        bindings: n,
        witness: total.witness,
        binding: failing,
        flags: total.flags,
        millis: start.elapsed().as_millis(),
    }
}

/// Run one case with its fixed bindings plus `cfg.bindings` random draws
/// from its domain.
pub fn run_identity(id: &str, cfg: &RunConfig) -> Result<VerificationReport> {
    let case = find(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    let mut rng = case_rng(case, cfg.seed);
    let start = Instant::now();
    let mut total = BindingResult::default();
    let mut failing = None;
    let mut used = 0;
    let mut record = |b: &Binding, r: Result<BindingResult>, total: &mut BindingResult| match r {
        Ok(r) => {
            used += 1;
            if r.witness.is_some() && failing.is_none() {
                failing = Some(b.to_string());
            }
            total.merge(r);
            true
        }
        Err(Error::BindingOutsideDomain(_)) => false,
        Err(e) => {
            used += 1;
            total.witness.get_or_insert(format!("error: {e}"));
            failing.get_or_insert(b.to_string());
            true
        }
    };
    for b in (case.fixed)() {
        let r = (case.check)(&b, cfg, &mut rng);
        record(&b, r, &mut total);
    }
    if let Some(sample) = case.sample {
        let mut done = 0;
        let mut draws = 0;
        while done < cfg.bindings {
            draws += 1;
            if draws > cfg.bindings + MAX_REDRAWS {
                total
                    .witness
                    .get_or_insert("could not draw bindings inside the domain".into());
                break;
            }
            let b = sample(&mut rng);
            let r = (case.check)(&b, cfg, &mut rng);
            if record(&b, r, &mut total) {
                done += 1;
            }
        }
    }
    Ok(finish(case, total, used, failing, start))
}

/// Run the whole catalog in parallel; reports come back sorted by id.
pub fn run_all(profile: Profile, seed: u64) -> Vec<VerificationReport> {
    run_all_with(&RunConfig::for_profile(profile, seed))
}

pub fn run_all_with(cfg: &RunConfig) -> Vec<VerificationReport> {
    let mut out: Vec<VerificationReport> = CATALOG
        .par_iter()
        .map(|c| run_identity(c.id, cfg).expect("catalog ids resolve"))
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Summary line for a list of reports.
pub fn summary_json(reports: &[VerificationReport], profile: Profile, seed: u64) -> Value {
    let passed = reports.iter().filter(|r| r.passed()).count();
    json!({
        "summary": {
            "total": reports.len(),
            "passed": passed,
            "failed": reports.len() - passed,
            "profile": profile.as_str(),
            "seed": seed,
        }
    })
}

/// Rational rendering used in reports.
pub fn fmt_rational(r: &Rational) -> String {
    rational_string(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> RunConfig {
        RunConfig::for_profile(Profile::Quick, 0)
    }

    #[test]
    fn catalog_ids_unique_and_complete() {
        let ids: Vec<&str> = catalog().iter().map(|c| c.id).collect();
        assert!(ids.len() >= 19);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        for want in [
            "CYC1",
            "CYC2",
            "CYC3",
            "CYC4",
            "CYC-LOG",
            "CYC-TRIV",
            "CYC-KLEIN",
            "CYC-PSI",
            "REM-POW1",
            "REM-POW2",
            "REM-CONTIG",
            "P1",
            "POLY-P15",
            "POLY-P19",
            "POLY-P20",
            "DIH-THETA-SMALL",
            "DIH-CHEB",
            "DIH-THETA1",
            "DIH-THETA2",
            "DIH-N1",
            "DIH-EVAL1",
            "DIH-EVAL2",
            "DIH-EVAL3",
            "DIH-EVAL4",
            "DIH-EVAL5",
        ] {
            assert!(find(want).is_some(), "{want}");
        }
    }

    #[test]
    fn cyc1_terminating_binding() {
        // a = b = 1: both sides reduce to 1 − u/2
        let b = Binding::new(vec![("a", qi(1)), ("b", qi(1))]);
        let rep = run_identity_with("CYC1", &[b], &quick()).unwrap();
        assert!(rep.passed(), "{:?}", rep.witness);
        assert!(rep.worst_error.unwrap() < 1e-40);
    }

    #[test]
    fn theta1_small_case() {
        let b = Binding::new(vec![("N", qi(1)), ("M", qi(2))]);
        let rep = run_identity_with("DIH-THETA1", &[b], &quick()).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn p15_first_instance() {
        let b = Binding::new(vec![("n", qi(1)), ("a", q(1, 2))]);
        assert!(run_identity_with("POLY-P15", &[b], &quick())
            .unwrap()
            .passed());
    }

    #[test]
    fn corrupted_q_hat_fails() {
        let a = q(2, 7);
        assert!(p19_holds(1, &a, &q_hat_1(1, &a)).unwrap().is_none());
        // 9na + 18n² − 5n instead of − 6n
        let bad_q = add(&q_hat_1(1, &a), &qi(1));
        assert!(p19_holds(1, &a, &bad_q).unwrap().is_some());
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            run_identity("NOPE", &quick()),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn chebyshev() {
        assert_eq!(chebyshev_t(3), Poly::from_i64s(&[0, -3, 0, 4]));
        // (1 − (1−x)³)/(3x) = 1 − x + x²/3
        assert_eq!(
            psi_poly(3).unwrap(),
            Poly::new(vec![qi(1), qi(-1), q(1, 3)])
        );
    }
}
