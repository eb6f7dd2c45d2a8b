//! Local solutions at the origin of the Gauss and Heun equations.
//!
//! Exact coefficients are produced over the rationals; numeric evaluation
//! streams coefficients at a working precision and stops adaptively.
//! The Heun coefficients come from the three-term recurrence
//!
//! ```text
//! t(n+1)(n+c)·c[n+1] = (n((n−1+c)(1+t) + t·d + e) + q)·c[n] − (n−1+a)(n−1+b)·c[n−1]
//! ```
//!
//! with `e = a + b − c − d + 1`, obtained by clearing `x(x−1)(x−t)` and
//! collecting powers of `x`.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::exact::{Poly, Rational};
use crate::numeric;
use crate::ode::Ode;

/// Parameters `(A, B, C)` of the Gauss hypergeometric equation.
#[derive(Clone, Debug, PartialEq)]
pub struct HpgParams<T = Rational> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// Parameters `(t, q, a, b, c, d)` of Heun's equation, in the order
/// `Hl(t, q; a, b; c; d; x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeunParams<T = Rational> {
    pub t: T,
    pub q: T,
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// A parameter that is either exact or a multiprecision complex number.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(Complex),
}

impl Scalar {
    pub fn to_complex(&self, prec: u32) -> Complex {
        match self {
            Scalar::Exact(r) => Complex::with_val(prec, r),
            Scalar::Approx(z) => Complex::with_val(prec, z),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    *r.denom() == 1 && *r <= 0
}

impl<T> HpgParams<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        HpgParams { a, b, c }
    }
}

impl HpgParams<Rational> {
    pub fn from_i64s(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        HpgParams::new(Rational::from(a), Rational::from(b), Rational::from(c))
    }

    /// Exponent differences `1 − C`, `C − A − B`, `A − B` at `0, 1, ∞`.
    pub fn exponent_differences(&self) -> [Rational; 3] {
        [
            Rational::from(1 - &self.c),
            Rational::from(&self.c - &self.a) - &self.b,
            Rational::from(&self.a - &self.b),
        ]
    }

    pub fn to_complex(&self, prec: u32) -> HpgParams<Complex> {
        let z = |r: &Rational| Complex::with_val(prec, r);
        HpgParams::new(z(&self.a), z(&self.b), z(&self.c))
    }
}

impl<T> HeunParams<T> {
    pub fn new(t: T, q: T, a: T, b: T, c: T, d: T) -> Self {
        HeunParams { t, q, a, b, c, d }
    }

    pub fn as_array(&self) -> [&T; 6] {
        [&self.t, &self.q, &self.a, &self.b, &self.c, &self.d]
    }

    pub fn from_array([t, q, a, b, c, d]: [T; 6]) -> Self {
        HeunParams { t, q, a, b, c, d }
    }
}

impl HeunParams<Rational> {
    /// The fifth exponent parameter `a + b − c − d + 1` (at `x = t`).
    pub fn epsilon(&self) -> Rational {
        Rational::from(&self.a + &self.b) - &self.c - &self.d + 1u32
    }

    /// Exponent differences `1 − c`, `1 − d`, `c + d − a − b`, `a − b` at
    /// `0, 1, t, ∞`.
    pub fn exponent_differences(&self) -> [Rational; 4] {
        [
            Rational::from(1 - &self.c),
            Rational::from(1 - &self.d),
            Rational::from(&self.c + &self.d) - &self.a - &self.b,
            Rational::from(&self.a - &self.b),
        ]
    }

    pub fn to_complex(&self, prec: u32) -> HeunParams<Complex> {
        let z = |r: &Rational| Complex::with_val(prec, r);
        HeunParams::new(
            z(&self.t),
            z(&self.q),
            z(&self.a),
            z(&self.b),
            z(&self.c),
            z(&self.d),
        )
    }

    /// Convergence-radius bound `min(1, |t|)` of the local solution.
    pub fn radius(&self) -> f64 {
        self.t.to_f64().abs().min(1.0)
    }

    fn check(&self) -> Result<()> {
        if self.t == 0 || self.t == 1 {
            return Err(Error::InvalidParameter(format!(
                "t = {} must avoid 0 and 1",
                self.t
            )));
        }
        if is_nonpositive_integer(&self.c) {
            return Err(Error::InvalidParameter(format!(
                "c = {} is zero or a negative integer",
                self.c
            )));
        }
        Ok(())
    }
}

/// Coefficients of a power series at the origin, `coeffs[k]` multiplying
/// `x^k`, together with the radius bound used by the evaluation policy.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T = Rational> {
    pub coeffs: Vec<T>,
    pub radius: f64,
    /// All coefficients past the stored ones are known to vanish.
    pub terminates: bool,
}

impl TruncatedSeries<Rational> {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Wrap a polynomial as a terminating series with the given radius bound.
    pub fn from_poly(p: &Poly, radius: f64) -> Self {
        let mut coeffs = p.coeffs().to_vec();
        if coeffs.is_empty() {
            coeffs.push(Rational::new());
        }
        TruncatedSeries {
            coeffs,
            radius,
            terminates: true,
        }
    }
}

/// Exact Gauss series `Σ (A)_k (B)_k / ((C)_k k!) x^k` through `x^order`.
pub fn hpg_series(p: &HpgParams<Rational>, order: usize) -> Result<TruncatedSeries<Rational>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut ck = Rational::from(1);
    let mut terminates = false;
    coeffs.push(ck.clone());
    for k in 0..order {
        let ak = Rational::from(&p.a + k as u64);
        let bk = Rational::from(&p.b + k as u64);
        let cc = Rational::from(&p.c + k as u64);
        if cc.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "C = {} is zero or a negative integer",
                p.c
            )));
        }
        ck = ck * ak * bk / (cc * Rational::from(k as u64 + 1));
        if ck.is_zero() {
            terminates = true;
        }
        coeffs.push(ck.clone());
    }
    if terminates {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
    }
    Ok(TruncatedSeries {
        coeffs,
        radius: 1.0,
        terminates,
    })
}

/// Exact local Heun series `Hl(t, q; a, b; c; d; x)` through `x^order`.
pub fn heun_series(p: &HeunParams<Rational>, order: usize) -> Result<TruncatedSeries<Rational>> {
    p.check()?;
    let e = p.epsilon();
    let one_plus_t = Rational::from(&p.t + 1u32);
    let td_e = Rational::from(&p.t * &p.d) + &e;
    let mut coeffs = vec![Rational::from(1)];
    if order >= 1 {
        coeffs.push(Rational::from(&p.q / &p.t) / &p.c);
    }
    for n in 1..order {
        let nq = Rational::from(n as u64);
        let nm1 = Rational::from(n as u64 - 1);
        let mid = (Rational::from(&nm1 + &p.c) * &one_plus_t + &td_e) * &nq + &p.q;
        let low = Rational::from(&nm1 + &p.a) * Rational::from(&nm1 + &p.b);
        let den = Rational::from(&p.t * (n as u64 + 1)) * Rational::from(&nq + &p.c);
        let next = (mid * &coeffs[n] - low * &coeffs[n - 1]) / den;
        coeffs.push(next);
    }
    let n = coeffs.len();
    let terminates = n >= 3 && coeffs[n - 1].is_zero() && coeffs[n - 2].is_zero();
    if terminates {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
    }
    Ok(TruncatedSeries {
        coeffs,
        radius: p.radius(),
        terminates,
    })
}

/// Stopping and domain rules for numeric series evaluation.
#[derive(Clone, Debug)]
pub struct Policy {
    pub digits: u32,
    /// Terms below `rel_tol·|partial sum|` count as negligible; three in a
    /// row stop the summation.
    pub rel_tol: f64,
    /// Fraction of the radius bound inside which evaluation is trusted.
    pub safety: f64,
    pub max_terms: usize,
}

impl Policy {
    pub fn with_digits(digits: u32) -> Self {
        Policy {
            digits,
            rel_tol: numeric::ten_pow_neg(digits.saturating_sub(5).max(10)),
            safety: 0.9,
            max_terms: 10_000,
        }
    }

    pub fn prec(&self) -> u32 {
        numeric::bits_for_digits(self.digits)
    }
}

impl Default for Policy {
    fn default() -> Self {
        Policy::with_digits(numeric::DEFAULT_DIGITS)
    }
}

/// A numeric value with the magnitude of the last summed term as an error
/// estimate.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Complex,
    pub error_estimate: f64,
    pub terms: usize,
}

fn check_disc(x: &Complex, radius: f64, policy: &Policy) -> Result<()> {
    let abs_x = numeric::abs_f64(x);
    let limit = policy.safety * radius;
    if abs_x >= limit {
        return Err(Error::OutsideConvergence { abs_x, limit });
    }
    Ok(())
}

/// Adaptive summation of `Σ c_k x^k` with coefficients supplied on demand.
/// `next` returns `None` once the series is known to have ended.
fn sum_stream(
    x: &Complex,
    policy: &Policy,
    mut next: impl FnMut(usize) -> Result<Option<Complex>>,
) -> Result<Evaluation> {
    let prec = policy.prec();
    let mut sum = Complex::new(prec);
    let mut xk = Complex::with_val(prec, 1);
    let mut small_run = 0;
    let mut last = 0.0;
    for k in 0..policy.max_terms {
        let Some(c) = next(k)? else {
            return Ok(Evaluation {
                value: sum,
                error_estimate: 0.0,
                terms: k,
            });
        };
        let term = Complex::with_val(prec, &c * &xk);
        sum += &term;
        let t = numeric::abs(&term);
        let s = numeric::abs(&sum);
        last = t.to_f64();
        if t <= Float::with_val(prec, &s * policy.rel_tol) {
            small_run += 1;
            if small_run >= 3 {
                return Ok(Evaluation {
                    value: sum,
                    error_estimate: last,
                    terms: k + 1,
                });
            }
        } else {
            small_run = 0;
        }
        xk *= x;
    }
    let _ = last;
    Err(Error::NoConvergence(policy.max_terms))
}

/// Evaluate a stored series. A non-terminating series that runs out of
/// coefficients before meeting the tolerance is reported as unconverged.
pub fn eval_truncated(
    s: &TruncatedSeries<Rational>,
    x: &Complex,
    policy: &Policy,
) -> Result<Evaluation> {
    check_disc(x, s.radius, policy)?;
    let prec = policy.prec();
    let x = Complex::with_val(prec, x);
    let n = s.coeffs.len();
    let out = sum_stream(&x, policy, |k| {
        if k < n {
            Ok(Some(Complex::with_val(prec, &s.coeffs[k])))
        } else if s.terminates {
            Ok(None)
        } else {
            Err(Error::NoConvergence(n))
        }
    });
    match out {
        Err(Error::NoConvergence(_)) if n < policy.max_terms => Err(Error::NoConvergence(n)),
        other => other,
    }
}

fn near_zero(z: &Complex) -> bool {
    numeric::abs_f64(z) < 1e-30
}

/// Numeric Gauss hypergeometric function at `x`, `|x| < safety`.
pub fn eval_hpg(p: &HpgParams<Complex>, x: &Complex, policy: &Policy) -> Result<Evaluation> {
    check_disc(x, 1.0, policy)?;
    let prec = policy.prec();
    let x = Complex::with_val(prec, x);
    let mut ck = Complex::with_val(prec, 1);
    let mut ended = false;
    sum_stream(&x, policy, |k| {
        if ended {
            return Ok(None);
        }
        if k == 0 {
            return Ok(Some(ck.clone()));
        }
        let j = (k - 1) as u32;
        let cc = Complex::with_val(prec, &p.c + j);
        if near_zero(&cc) {
            return Err(Error::InvalidParameter(
                "C is zero or a negative integer".into(),
            ));
        }
        let num = Complex::with_val(prec, &p.a + j) * Complex::with_val(prec, &p.b + j);
        ck = ck.clone() * num / (cc * (j + 1));
        if ck.is_zero() {
            ended = true;
            return Ok(None);
        }
        Ok(Some(ck.clone()))
    })
}

/// Numeric local Heun function at `x`, `|x| < safety·min(1, |t|)`.
pub fn eval_heun(p: &HeunParams<Complex>, x: &Complex, policy: &Policy) -> Result<Evaluation> {
    let prec = policy.prec();
    let t_abs = numeric::abs_f64(&p.t);
    let one_minus_t = Complex::with_val(prec, 1 - &p.t);
    if t_abs < 1e-30 || numeric::abs_f64(&one_minus_t) < 1e-30 {
        return Err(Error::InvalidParameter("t must avoid 0 and 1".into()));
    }
    check_disc(x, t_abs.min(1.0), policy)?;
    let x = Complex::with_val(prec, x);
    let e = Complex::with_val(prec, &p.a + &p.b) - &p.c - &p.d + 1u32;
    let one_plus_t = Complex::with_val(prec, &p.t + 1u32);
    let td_e = Complex::with_val(prec, &p.t * &p.d) + &e;
    let mut prev = Complex::with_val(prec, 1);
    let mut cur = Complex::new(prec);
    let mut zero_run = 0;
    sum_stream(&x, policy, |k| match k {
        0 => Ok(Some(prev.clone())),
        1 => {
            if near_zero(&p.c) {
                return Err(Error::InvalidParameter(
                    "c is zero or a negative integer".into(),
                ));
            }
            cur = Complex::with_val(prec, &p.q / &p.t) / &p.c;
            Ok(Some(cur.clone()))
        }
        _ => {
            if zero_run >= 2 {
                return Ok(None);
            }
            let n = (k - 1) as u32;
            let nm1 = n - 1;
            let nc = Complex::with_val(prec, &p.c + n);
            if near_zero(&nc) {
                return Err(Error::InvalidParameter(
                    "c is zero or a negative integer".into(),
                ));
            }
            let mid = (Complex::with_val(prec, &p.c + nm1) * &one_plus_t + &td_e) * n + &p.q;
            let low = Complex::with_val(prec, &p.a + nm1) * Complex::with_val(prec, &p.b + nm1);
            let den = Complex::with_val(prec, &p.t * (n + 1)) * nc;
            let next = (mid * &cur - low * &prev) / den;
            prev = std::mem::replace(&mut cur, next);
            if cur.is_zero() {
                zero_run += 1;
            } else {
                zero_run = 0;
            }
            if zero_run >= 2 && prev.is_zero() {
                return Ok(None);
            }
            Ok(Some(cur.clone()))
        }
    })
}

/// `₂F₁(1 − a, 1; 2; z)` in closed form: `(1 − (1 − z)^a)/(a·z)`, or
/// `−log(1 − z)/z` when `a = 0`. Exact `a` dispatches on `a == 0`, complex
/// `a` on `|a| < 10⁻³⁰`. The value at `z = 0` is the limit `1`.
pub fn hpg_degenerate_closed(a: &Scalar, z: &Complex, digits: u32) -> Result<Complex> {
    let prec = numeric::bits_for_digits(digits);
    let z = Complex::with_val(prec, z);
    if z.is_zero() {
        return Ok(Complex::with_val(prec, 1));
    }
    let w = Complex::with_val(prec, 1 - &z);
    if numeric::distance_to_log_cut(&w) < 1e-6 {
        return Err(Error::BranchCut(format!(
            "z = {} lies on [1, ∞)",
            numeric::fmt_complex(&z, 12)
        )));
    }
    let is_zero = match a {
        Scalar::Exact(r) => r.is_zero(),
        Scalar::Approx(c) => numeric::abs_f64(c) < 1e-30,
    };
    if is_zero {
        return Ok(-(w.ln() / &z));
    }
    let a = a.to_complex(prec);
    let pw = Complex::with_val(prec, (&w).pow(&a));
    Ok(Complex::with_val(prec, 1 - pw) / (a * &z))
}

/// The two elementary dihedral Gauss functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DihedralVariant {
    /// `₂F₁(a/2, (a+1)/2; a+1; z) = ((1 + √(1−z))/2)^(−a)`
    Upper,
    /// `₂F₁(a/2, (a+1)/2; 1/2; z) = ((1 − √z)^(−a) + (1 + √z)^(−a))/2`
    Half,
}

pub fn hpg_dihedral_closed(
    variant: DihedralVariant,
    a: &Complex,
    z: &Complex,
    digits: u32,
) -> Result<Complex> {
    let prec = numeric::bits_for_digits(digits);
    let z = Complex::with_val(prec, z);
    let a = Complex::with_val(prec, a);
    let neg_a = Complex::with_val(prec, -&a);
    let cut = |w: &Complex| -> Result<()> {
        if numeric::distance_to_log_cut(w) < 1e-6 {
            Err(Error::BranchCut(format!(
                "base {} near (−∞, 0]",
                numeric::fmt_complex(w, 12)
            )))
        } else {
            Ok(())
        }
    };
    match variant {
        DihedralVariant::Upper => {
            let w = Complex::with_val(prec, 1 - &z);
            if !w.is_zero() {
                cut(&w)?;
            }
            let base = (w.sqrt() + 1u32) / 2u32;
            Ok(base.pow(&neg_a))
        }
        DihedralVariant::Half => {
            let s = Complex::with_val(prec, z.sqrt_ref());
            let lo = Complex::with_val(prec, 1 - &s);
            let hi = Complex::with_val(prec, 1 + &s);
            cut(&lo)?;
            cut(&hi)?;
            Ok((lo.pow(&neg_a) + hi.pow(&neg_a)) / 2u32)
        }
    }
}

/// True when the first `k` coefficients of `P2·s″ + P1·s′ + P0·s` vanish,
/// with the ODE in polynomial-cleared form.
pub fn series_ode_residual(s: &TruncatedSeries<Rational>, ode: &Ode, k: usize) -> Result<bool> {
    if !s.terminates && k + 2 > s.order() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds order − 2 = {}",
            s.order() as i64 - 2
        )));
    }
    let residual = ode.apply_cleared(&s.to_poly());
    Ok((0..k).all(|j| residual.coeff(j).is_zero()))
}

/// Full residual polynomial of a polynomial candidate solution.
pub fn poly_ode_residual(p: &Poly, ode: &Ode) -> Poly {
    ode.apply_cleared(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pullback::heun_ode;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn heun(
        t: (i64, i64),
        qq: (i64, i64),
        a: (i64, i64),
        b: (i64, i64),
        c: (i64, i64),
        d: (i64, i64),
    ) -> HeunParams {
        HeunParams::new(
            q(t.0, t.1),
            q(qq.0, qq.1),
            q(a.0, a.1),
            q(b.0, b.1),
            q(c.0, c.1),
            q(d.0, d.1),
        )
    }

    fn cx(v: f64) -> Complex {
        Complex::with_val(200, (v, 0.0))
    }

    #[test]
    fn hpg_series_examples() {
        let s = hpg_series(&HpgParams::from_i64s((-1, 1), (1, 1), (2, 1)), 6).unwrap();
        assert_eq!(s.coeffs, vec![q(1, 1), q(-1, 2)]);
        assert!(s.terminates);

        let s = hpg_series(&HpgParams::from_i64s((1, 1), (3, 2), (1, 2)), 4).unwrap();
        assert_eq!(s.coeffs, vec![q(1, 1), q(3, 1), q(5, 1), q(7, 1), q(9, 1)]);

        let s = hpg_series(&HpgParams::from_i64s((0, 1), (7, 3), (5, 2)), 5).unwrap();
        assert_eq!(s.coeffs, vec![q(1, 1)]);

        assert!(hpg_series(&HpgParams::from_i64s((1, 1), (1, 1), (-2, 1)), 5).is_err());
    }

    #[test]
    fn hpg_terminates_at_degree_n() {
        for n in 0..8i64 {
            let s = hpg_series(&HpgParams::from_i64s((-n, 1), (2, 7), (1, 3)), 20).unwrap();
            assert!(s.to_poly().deg() <= n as usize);
        }
    }

    #[test]
    fn heun_series_examples() {
        let p = heun((4, 1), (3, 2), (-3, 2), (-1, 1), (-1, 2), (0, 1));
        let s = heun_series(&p, 8).unwrap();
        assert_eq!(s.coeffs, vec![q(1, 1), q(-3, 4)]);
        assert!(s.terminates);

        let p = heun((2, 1), (-2, 1), (1, 1), (-1, 1), (2, 1), (-1, 1));
        assert_eq!(heun_series(&p, 8).unwrap().coeffs, vec![q(1, 1), q(-1, 2)]);

        let p = heun((3, 1), (0, 1), (0, 1), (5, 7), (1, 3), (2, 1));
        assert_eq!(heun_series(&p, 8).unwrap().coeffs, vec![q(1, 1)]);
    }

    #[test]
    fn heun_series_rejects_bad_parameters() {
        assert!(heun_series(&heun((1, 1), (0, 1), (1, 1), (1, 1), (1, 1), (1, 1)), 3).is_err());
        assert!(heun_series(&heun((0, 1), (0, 1), (1, 1), (1, 1), (1, 1), (1, 1)), 3).is_err());
        assert!(heun_series(&heun((2, 1), (0, 1), (1, 1), (1, 1), (-3, 1), (1, 1)), 3).is_err());
    }

    #[test]
    fn heun_recurrence_solves_the_equation() {
        let params = [
            heun((3, 2), (1, 5), (2, 3), (-1, 7), (5, 4), (1, 9)),
            heun((-2, 1), (7, 3), (1, 1), (1, 2), (1, 3), (-4, 5)),
            heun((9, 8), (-11, 2), (-4, 1), (3, 7), (2, 5), (1, 1)),
        ];
        for p in &params {
            let s = heun_series(p, 32).unwrap();
            let ode = heun_ode(p).unwrap();
            assert!(series_ode_residual(&s, &ode, 30).unwrap());
            let wrong = TruncatedSeries {
                coeffs: vec![q(1, 1), q(1, 1)],
                radius: 1.0,
                terminates: true,
            };
            assert!(!series_ode_residual(&wrong, &ode, 10).unwrap());
        }
    }

    #[test]
    fn heun_polynomial_residual() {
        let p = heun((4, 1), (3, 2), (-3, 2), (-1, 1), (-1, 2), (0, 1));
        let ode = heun_ode(&p).unwrap();
        let theta1 = TruncatedSeries::from_poly(&Poly::new(vec![q(1, 1), q(-3, 4)]), 1.0);
        assert!(series_ode_residual(&theta1, &ode, 10).unwrap());
        let wrong = TruncatedSeries::from_poly(&Poly::from_i64s(&[1, 1]), 1.0);
        assert!(!series_ode_residual(&wrong, &ode, 10).unwrap());
    }

    #[test]
    fn residual_order_precondition() {
        let p = heun((3, 2), (1, 5), (2, 3), (-1, 7), (5, 4), (1, 9));
        let s = heun_series(&p, 10).unwrap();
        assert!(series_ode_residual(&s, &heun_ode(&p).unwrap(), 9).is_err());
    }

    #[test]
    fn eval_truncated_examples() {
        let pol = Policy::default();
        let s = TruncatedSeries::from_poly(&Poly::new(vec![q(1, 1), q(-3, 4)]), 1.0);
        let v = eval_truncated(&s, &Complex::with_val(200, &q(1, 10)), &pol).unwrap();
        assert!(numeric::relative_error(&v.value, &Complex::with_val(200, &q(37, 40))) < 1e-40);
        let v = eval_truncated(&s, &cx(0.0), &pol).unwrap();
        assert_eq!(v.value, cx(1.0));

        let p = heun((1, 4), (1, 3), (1, 2), (1, 5), (2, 3), (1, 1));
        let s = heun_series(&p, 40).unwrap();
        assert!(matches!(
            eval_truncated(&s, &cx(0.5), &pol),
            Err(Error::OutsideConvergence { .. })
        ));
    }

    #[test]
    fn eval_truncated_needs_enough_terms() {
        let s = hpg_series(&HpgParams::from_i64s((1, 2), (1, 3), (1, 4)), 5).unwrap();
        assert!(matches!(
            eval_truncated(&s, &cx(0.5), &Policy::default()),
            Err(Error::NoConvergence(_))
        ));
    }

    #[test]
    fn streaming_matches_stored_series() {
        let p = heun((3, 2), (1, 5), (2, 3), (-1, 7), (5, 4), (1, 9));
        let pol = Policy::default();
        let x = cx(0.4);
        let stored = eval_truncated(&heun_series(&p, 400).unwrap(), &x, &pol).unwrap();
        let streamed = eval_heun(&p.to_complex(pol.prec()), &x, &pol).unwrap();
        assert!(numeric::relative_error(&stored.value, &streamed.value) < 1e-44);
    }

    #[test]
    fn degenerate_closed_form() {
        let two = Scalar::Exact(q(2, 1));
        let v = hpg_degenerate_closed(&two, &cx(0.5), 50).unwrap();
        assert!(numeric::relative_error(&v, &cx(0.75)) < 1e-45);

        let v = hpg_degenerate_closed(&Scalar::Exact(q(0, 1)), &cx(0.5), 50).unwrap();
        let expect = Complex::with_val(200, 2) * Complex::with_val(200, 2).ln();
        assert!(numeric::relative_error(&v, &expect) < 1e-45);

        let v = hpg_degenerate_closed(&Scalar::Exact(q(1, 1)), &cx(-0.7), 50).unwrap();
        assert!(numeric::relative_error(&v, &cx(1.0)) < 1e-45);

        assert_eq!(hpg_degenerate_closed(&two, &cx(0.0), 50).unwrap(), cx(1.0));
        assert!(matches!(
            hpg_degenerate_closed(&two, &cx(1.5), 50),
            Err(Error::BranchCut(_))
        ));
    }

    #[test]
    fn dihedral_closed_forms() {
        let a = cx(-2.0);
        let v = hpg_dihedral_closed(DihedralVariant::Half, &a, &cx(0.25), 50).unwrap();
        assert!(numeric::relative_error(&v, &cx(1.25)) < 1e-45);
        let v = hpg_dihedral_closed(DihedralVariant::Upper, &cx(0.37), &cx(0.0), 50).unwrap();
        assert!(numeric::relative_error(&v, &cx(1.0)) < 1e-45);
        let v = hpg_dihedral_closed(DihedralVariant::Half, &cx(0.37), &cx(0.0), 50).unwrap();
        assert!(numeric::relative_error(&v, &cx(1.0)) < 1e-45);
        assert!(hpg_dihedral_closed(DihedralVariant::Half, &a, &cx(1.0), 50).is_err());
    }
}
