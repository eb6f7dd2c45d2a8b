//! Closed-form expressions built from rational functions, powers with
//! rational exponents and single logarithms.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::Complex;

use crate::error::{Error, Result};
use crate::exact::{squarefree_part, Poly, Rational, RationalFunction};
use crate::numeric;
use crate::ode::Ode;

/// `Π bᵢ(x)^eᵢ` with polynomial bases and rational exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PowerProduct {
    factors: Vec<(Poly, Rational)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct::default()
    }

    pub fn new(factors: Vec<(Poly, Rational)>) -> Result<Self> {
        let mut pp = PowerProduct::one();
        for (b, e) in factors {
            pp = pp.times(b, e)?;
        }
        Ok(pp)
    }

    pub fn single(base: Poly, exponent: Rational) -> Result<Self> {
        Self::new(vec![(base, exponent)])
    }

    /// Multiply by `base^exponent`, merging with an identical base.
    pub fn times(mut self, base: Poly, exponent: Rational) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::InvalidParameter(
                "power-product base vanishes identically".into(),
            ));
        }
        if exponent.is_zero() {
            return Ok(self);
        }
        if let Some(slot) = self.factors.iter_mut().find(|(b, _)| *b == base) {
            slot.1 += exponent;
        } else {
            self.factors.push((base, exponent));
        }
        self.factors.retain(|(_, e)| !e.is_zero());
        Ok(self)
    }

    pub fn factors(&self) -> &[(Poly, Rational)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self, other: &PowerProduct) -> PowerProduct {
        let mut out = self.clone();
        for (b, e) in &other.factors {
            out = out
                .times(b.clone(), e.clone())
                .expect("bases already nonzero");
        }
        out
    }

    pub fn powi(&self, k: i64) -> PowerProduct {
        PowerProduct {
            factors: self
                .factors
                .iter()
                .map(|(b, e)| (b.clone(), Rational::from(e * k)))
                .filter(|(_, e)| !e.is_zero())
                .collect(),
        }
    }

    /// Evaluate with principal branches `u^e = exp(e·Log u)`.
    pub fn eval(&self, x: &Complex, bc: &BranchConvention) -> Result<Complex> {
        let prec = x.prec().0;
        let mut acc = Complex::with_val(prec, 1);
        for (b, e) in &self.factors {
            let u = b.eval_complex(x);
            if *e.denom() == 1 {
                let k = e
                    .numer()
                    .to_i32()
                    .ok_or_else(|| Error::InvalidParameter("exponent too large".into()))?;
                if u.is_zero() && k < 0 {
                    return Err(Error::Pole(format!("base {b} vanishes")));
                }
                acc *= u.pow(k);
            } else {
                bc.check(&u, b)?;
                let ec = Complex::with_val(prec, e);
                acc *= u.pow(&ec);
            }
        }
        Ok(acc)
    }
}

/// Logarithmic derivative `Σ eᵢ·bᵢ′/bᵢ`.
pub fn pp_log_derivative(pp: &PowerProduct) -> RationalFunction {
    pp.factors
        .iter()
        .fold(RationalFunction::zero(), |acc, (b, e)| {
            let ld = RationalFunction::new(b.derivative(), b.clone()).expect("nonzero base");
            &acc + &ld.scale(e)
        })
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (b, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "({b})")?;
            } else {
                write!(f, "({b})^({e})")?;
            }
        }
        Ok(())
    }
}

/// Branch rules for numeric evaluation: principal logarithm and powers, with
/// evaluation refused closer than `min_cut_distance` to a cut.
#[derive(Clone, Debug)]
pub struct BranchConvention {
    pub min_cut_distance: f64,
}

impl Default for BranchConvention {
    fn default() -> Self {
        BranchConvention {
            min_cut_distance: 1e-6,
        }
    }
}

impl BranchConvention {
    fn check(&self, u: &Complex, base: &Poly) -> Result<()> {
        let dist = numeric::distance_to_log_cut(u);
        if dist < self.min_cut_distance {
            return Err(Error::BranchCut(format!(
                "base {base} evaluates to {} within {} of the cut",
                numeric::fmt_complex(u, 12),
                self.min_cut_distance
            )));
        }
        Ok(())
    }
}

/// `coeff · pp · log(log)` (the logarithm factor is optional).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: RationalFunction,
    pub pp: PowerProduct,
    pub log: Option<Poly>,
}

impl Term {
    pub fn new(coeff: RationalFunction, pp: PowerProduct, log: Option<Poly>) -> Self {
        Term { coeff, pp, log }
    }

    pub fn rational(coeff: RationalFunction) -> Self {
        Term::new(coeff, PowerProduct::one(), None)
    }
}

/// A finite sum of terms; the empty sum is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiouvillianExpr {
    pub terms: Vec<Term>,
}

impl LiouvillianExpr {
    pub fn zero() -> Self {
        LiouvillianExpr::default()
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        let terms = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        LiouvillianExpr { terms }
    }

    pub fn term(t: Term) -> Self {
        Self::from_terms(vec![t])
    }

    pub fn rational(r: RationalFunction) -> Self {
        Self::term(Term::rational(r))
    }

    pub fn power(coeff: RationalFunction, pp: PowerProduct) -> Self {
        Self::term(Term::new(coeff, pp, None))
    }

    pub fn add(&self, other: &LiouvillianExpr) -> LiouvillianExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LiouvillianExpr { terms }
    }

    pub fn scale(&self, r: &RationalFunction) -> LiouvillianExpr {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term::new(&t.coeff * r, t.pp.clone(), t.log.clone()))
                .collect(),
        )
    }

    /// Multiply every term by a power product.
    pub fn times_pp(&self, pp: &PowerProduct) -> LiouvillianExpr {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), t.pp.product(pp), t.log.clone()))
                .collect(),
        )
    }

    /// Product of two expressions; at most one factor of each term product
    /// may carry a logarithm.
    pub fn mul(&self, other: &LiouvillianExpr) -> Result<LiouvillianExpr> {
        let mut terms = Vec::new();
        for s in &self.terms {
            for t in &other.terms {
                let log = match (&s.log, &t.log) {
                    (Some(_), Some(_)) => {
                        return Err(Error::InvalidParameter("product of two logarithms".into()))
                    }
                    (l, None) | (None, l) => l.clone(),
                };
                terms.push(Term::new(&s.coeff * &t.coeff, s.pp.product(&t.pp), log));
            }
        }
        Ok(Self::from_terms(terms))
    }
}

impl fmt::Display for LiouvillianExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}]", t.coeff)?;
            if !t.pp.is_one() {
                write!(f, "*{}", t.pp)?;
            }
            if let Some(g) = &t.log {
                write!(f, "*log({g})")?;
            }
        }
        Ok(())
    }
}

/// Exact derivative by the product rule.
pub fn lv_differentiate(e: &LiouvillianExpr) -> LiouvillianExpr {
    let mut terms = Vec::new();
    for t in &e.terms {
        let ld = pp_log_derivative(&t.pp);
        let c = &t.coeff.derivative() + &(&t.coeff * &ld);
        terms.push(Term::new(c, t.pp.clone(), t.log.clone()));
        if let Some(g) = &t.log {
            let dg =
                RationalFunction::new(g.derivative(), g.clone()).expect("nonzero log argument");
            terms.push(Term::new(&t.coeff * &dg, t.pp.clone(), None));
        }
    }
    LiouvillianExpr::from_terms(terms)
}

pub fn lv_eval(
    e: &LiouvillianExpr,
    x: &Complex,
    digits: u32,
    bc: &BranchConvention,
) -> Result<Complex> {
    let prec = numeric::bits_for_digits(digits);
    let x = Complex::with_val(prec, x);
    let mut sum = Complex::new(prec);
    for t in &e.terms {
        let mut v = t.coeff.eval_complex(&x)?;
        if !t.pp.is_one() {
            v *= t.pp.eval(&x, bc)?;
        }
        if let Some(g) = &t.log {
            let u = g.eval_complex(&x);
            bc.check(&u, g)?;
            v *= u.ln();
        }
        sum += v;
    }
    Ok(sum)
}

/// Outcome of an exact residual computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    ExactZero,
    /// A surviving term class rendered as text.
    Nonzero(String),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        matches!(self, Residual::ExactZero)
    }
}

/// Monic, squarefree, pairwise coprime polynomials generating every input
/// polynomial up to constants.
fn gcd_free_basis(polys: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let sf = squarefree_part(p).expect("nonzero");
        let mut pending = vec![sf];
        while let Some(mut u) = pending.pop() {
            if u.is_constant() {
                continue;
            }
            let mut i = 0;
            while i < basis.len() {
                let g = Poly::gcd(&u, &basis[i]);
                if g.is_constant() {
                    i += 1;
                    continue;
                }
                let v = basis.swap_remove(i);
                let v_rest = v.exact_div(&g).expect("gcd divides");
                u = u.exact_div(&g).expect("gcd divides");
                pending.push(g);
                pending.push(v_rest);
                // restart the scan for the reduced u
                i = 0;
                if u.is_constant() {
                    break;
                }
            }
            if !u.is_constant() {
                basis.push(u.monic());
            }
        }
    }
    basis.sort_by_key(|a| (a.deg(), a.to_string()));
    basis.dedup();
    basis
}

/// `p = c · Π basisᵢ^mᵢ`.
fn factor_over(p: &Poly, basis: &[Poly]) -> (Rational, Vec<u32>) {
    let mut rest = p.clone();
    let mut mult = vec![0u32; basis.len()];
    for (i, b) in basis.iter().enumerate() {
        while let Ok((q, r)) = rest.div_rem(b) {
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult[i] += 1;
        }
    }
    debug_assert!(rest.is_constant());
    (rest.coeff(0), mult)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum LogKey {
    None,
    Basis(usize),
    Constant(Rational),
}

type ClassKey = (Vec<Rational>, Vec<(Rational, Rational)>, LogKey);

fn floor(r: &Rational) -> i64 {
    let (_, fl) = r.clone().fract_floor(rug::Integer::new());
    fl.to_i64().expect("exponent fits i64")
}

/// Canonical decomposition of the residual into classes that are linearly
/// independent over the rational functions; the expression vanishes iff
/// each class coefficient vanishes.
fn canonical_classes(e: &LiouvillianExpr) -> BTreeMap<String, (ClassKey, RationalFunction)> {
    let mut polys: Vec<Poly> = Vec::new();
    for t in &e.terms {
        polys.extend(t.pp.factors().iter().map(|(b, _)| b.clone()));
        if let Some(g) = &t.log {
            polys.push(g.clone());
        }
    }
    let basis = gcd_free_basis(&polys);
    let mut classes: BTreeMap<String, (ClassKey, RationalFunction)> = BTreeMap::new();
    for t in &e.terms {
        let mut exps = vec![Rational::new(); basis.len()];
        let mut consts: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (b, ex) in t.pp.factors() {
            let (c, m) = factor_over(b, &basis);
            for (slot, mi) in exps.iter_mut().zip(&m) {
                *slot += Rational::from(ex * *mi);
            }
            if c != 1 {
                *consts.entry(c).or_default() += ex;
            }
        }
        let mut coeff = t.coeff.clone();
        let mut frac = Vec::with_capacity(exps.len());
        for (b, ex) in basis.iter().zip(&exps) {
            let k = floor(ex);
            frac.push(Rational::from(ex - k));
            if k != 0 {
                let bk = RationalFunction::from_poly(b.clone())
                    .pow(k as i32)
                    .expect("nonzero base");
                coeff = &coeff * &bk;
            }
        }
        let mut const_key = Vec::new();
        for (c, ex) in consts {
            let k = floor(&ex);
            if k != 0 {
                let ck = Rational::from(c.clone().pow(k as i32));
                coeff = coeff.scale(&ck);
            }
            let fr = Rational::from(&ex - k);
            if !fr.is_zero() {
                const_key.push((c, fr));
            }
        }
        let logs: Vec<(LogKey, RationalFunction)> = match &t.log {
            None => vec![(LogKey::None, coeff)],
            Some(g) => {
                let (c, m) = factor_over(g, &basis);
                let mut v: Vec<(LogKey, RationalFunction)> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, mi)| **mi > 0)
                    .map(|(i, mi)| (LogKey::Basis(i), coeff.scale(&Rational::from(*mi))))
                    .collect();
                if c != 1 {
                    v.push((LogKey::Constant(c), coeff.clone()));
                }
                v
            }
        };
        for (lk, c) in logs {
            let key: ClassKey = (frac.clone(), const_key.clone(), lk);
            let label = class_label(&key, &basis);
            let slot = classes
                .entry(label)
                .or_insert_with(|| (key, RationalFunction::zero()));
            slot.1 = &slot.1 + &c;
        }
    }
    classes
}

fn class_label((exps, consts, log): &ClassKey, basis: &[Poly]) -> String {
    let mut parts = Vec::new();
    for (b, e) in basis.iter().zip(exps) {
        if !e.is_zero() {
            parts.push(format!("({b})^({e})"));
        }
    }
    for (c, e) in consts {
        parts.push(format!("({c})^({e})"));
    }
    match log {
        LogKey::None => {}
        LogKey::Basis(i) => parts.push(format!("log({})", basis[*i])),
        LogKey::Constant(c) => parts.push(format!("log({c})")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Decide whether `e` vanishes identically.
pub fn lv_is_zero(e: &LiouvillianExpr) -> Residual {
    for (label, (_, coeff)) in canonical_classes(e) {
        if !coeff.is_zero() {
            return Residual::Nonzero(format!("[{coeff}]*{label}"));
        }
    }
    Residual::ExactZero
}

/// `P2·e″ + P1·e′ + P0·e` in polynomial-cleared form.
pub fn lv_apply_ode(e: &LiouvillianExpr, ode: &Ode) -> LiouvillianExpr {
    let (p2, p1, p0) = ode.cleared();
    let d1 = lv_differentiate(e);
    let d2 = lv_differentiate(&d1);
    d2.scale(&p2.into())
        .add(&d1.scale(&p1.into()))
        .add(&e.scale(&p0.into()))
}

/// Exact residual of `e` in the ODE, decided class by class.
pub fn lv_ode_residual(e: &LiouvillianExpr, ode: &Ode) -> Result<Residual> {
    Ok(lv_is_zero(&lv_apply_ode(e, ode)))
}

/// Numeric residual `|P2·e″ + P1·e′ + P0·e|` at a point.
pub fn lv_numeric_residual(
    e: &LiouvillianExpr,
    ode: &Ode,
    x: &Complex,
    digits: u32,
) -> Result<f64> {
    let r = lv_apply_ode(e, ode);
    let v = lv_eval(&r, x, digits, &BranchConvention::default())?;
    Ok(numeric::abs_f64(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pullback::heun_ode;
    use crate::series::HeunParams;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn cx(v: f64) -> Complex {
        Complex::with_val(200, (v, 0.0))
    }

    fn general_solution(a: Rational, b: Rational) -> LiouvillianExpr {
        let pp = PowerProduct::new(vec![
            (Poly::from_i64s(&[-1, 1]), a.clone()),
            (Poly::linear(b.clone(), a), b),
        ])
        .unwrap();
        LiouvillianExpr::power(RationalFunction::one(), pp)
    }

    fn gensol_ode(a: &Rational, b: &Rational) -> Ode {
        let t = Rational::from(-b) / a;
        let heun = HeunParams::new(
            t,
            q(0, 1),
            q(0, 1),
            Rational::from(-a) - b,
            q(-1, 1),
            Rational::from(1 - a),
        );
        heun_ode(&heun).unwrap()
    }

    #[test]
    fn log_derivative_examples() {
        let (a, b) = (q(2, 3), q(5, 4));
        let pp = PowerProduct::new(vec![
            (Poly::from_i64s(&[1, -1]), a.clone()),
            (Poly::linear(q(1, 1), Rational::from(&a / &b)), b.clone()),
        ])
        .unwrap();
        let expect = &RationalFunction::new(
            Poly::constant(Rational::from(-&a)),
            Poly::from_i64s(&[1, -1]),
        )
        .unwrap()
            + &RationalFunction::new(
                Poly::constant(Rational::from(&a * &b)),
                Poly::linear(b.clone(), a.clone()),
            )
            .unwrap();
        assert_eq!(pp_log_derivative(&pp), expect);

        let sqrt = PowerProduct::single(Poly::x(), q(1, 2)).unwrap();
        assert_eq!(
            pp_log_derivative(&sqrt),
            RationalFunction::new(Poly::constant(q(1, 2)), Poly::x()).unwrap()
        );
        assert!(pp_log_derivative(&PowerProduct::one()).is_zero());
    }

    #[test]
    fn differentiate_log() {
        let e = LiouvillianExpr::term(Term::new(
            RationalFunction::one(),
            PowerProduct::one(),
            Some(Poly::from_i64s(&[1, -1])),
        ));
        let d = lv_differentiate(&e);
        let expect = LiouvillianExpr::rational(
            RationalFunction::new(Poly::from_i64s(&[-1]), Poly::from_i64s(&[1, -1])).unwrap(),
        );
        assert!(lv_is_zero(&d.add(&expect.scale(&RationalFunction::constant(q(-1, 1))))).is_zero());
    }

    #[test]
    fn eval_examples() {
        let bc = BranchConvention::default();
        let (a, b) = (q(3, 5), q(-7, 4));
        let base = Poly::linear(
            Rational::from(&b / Rational::from(&a + &b)),
            Rational::from(&a / Rational::from(&a + &b)),
        );
        let e = LiouvillianExpr::power(
            RationalFunction::one(),
            PowerProduct::single(base, b).unwrap(),
        );
        let v = lv_eval(&e, &cx(1.0), 50, &bc).unwrap();
        assert!(numeric::relative_error(&v, &cx(1.0)) < 1e-45);

        let e = LiouvillianExpr::power(
            RationalFunction::one(),
            PowerProduct::new(vec![
                (Poly::from_i64s(&[1, 1]), q(-1, 3)),
                (Poly::from_i64s(&[1, -2]), q(2, 7)),
            ])
            .unwrap(),
        );
        let v = lv_eval(&e, &cx(0.0), 50, &bc).unwrap();
        assert!(numeric::relative_error(&v, &cx(1.0)) < 1e-45);

        let e = LiouvillianExpr::power(
            RationalFunction::one(),
            PowerProduct::single(Poly::x(), q(1, 2)).unwrap(),
        );
        assert!(matches!(
            lv_eval(&e, &cx(-2.0), 50, &bc),
            Err(Error::BranchCut(_))
        ));
    }

    #[test]
    fn general_solution_residuals() {
        let (a, b) = (q(1, 2), q(1, 3));
        let ode = gensol_ode(&a, &b);
        assert_eq!(
            lv_ode_residual(&general_solution(a, b), &ode).unwrap(),
            Residual::ExactZero
        );
        let one = LiouvillianExpr::rational(RationalFunction::one());
        assert!(lv_ode_residual(&one, &ode).unwrap().is_zero());
        let x = LiouvillianExpr::rational(RationalFunction::x());
        assert!(matches!(
            lv_ode_residual(&x, &ode).unwrap(),
            Residual::Nonzero(_)
        ));
    }

    #[test]
    fn dependent_power_products_cancel() {
        // x^(1/2)·(2x)^(1/2) − √2·x, written with equal constant parts on both sides
        let half = q(1, 2);
        let a = PowerProduct::new(vec![
            (Poly::x(), half.clone()),
            (Poly::from_i64s(&[0, 2]), half.clone()),
        ])
        .unwrap();
        let b =
            PowerProduct::new(vec![(Poly::constant(q(2, 1)), half), (Poly::x(), q(1, 1))]).unwrap();
        let e = LiouvillianExpr::power(RationalFunction::one(), a).add(&LiouvillianExpr::power(
            RationalFunction::constant(q(-1, 1)),
            b,
        ));
        assert!(lv_is_zero(&e).is_zero());

        // x^(1/2) and x^(3/2)/x belong to the same class
        let c = PowerProduct::single(Poly::x(), q(3, 2)).unwrap();
        let d = PowerProduct::single(Poly::x(), q(1, 2)).unwrap();
        let e =
            LiouvillianExpr::power(RationalFunction::new(Poly::one(), Poly::x()).unwrap(), c).add(
                &LiouvillianExpr::power(RationalFunction::constant(q(-1, 1)), d.clone()),
            );
        assert!(lv_is_zero(&e).is_zero());
        assert!(!lv_is_zero(&LiouvillianExpr::power(RationalFunction::one(), d)).is_zero());
    }

    #[test]
    fn log_classes_split_over_basis() {
        // log(x^2 - 1) - log(x - 1) - log(x + 1) = 0
        let t = |g: &[i64], c: i64| {
            Term::new(
                RationalFunction::constant(q(c, 1)),
                PowerProduct::one(),
                Some(Poly::from_i64s(g)),
            )
        };
        let e =
            LiouvillianExpr::from_terms(vec![t(&[-1, 0, 1], 1), t(&[-1, 1], -1), t(&[1, 1], -1)]);
        assert!(lv_is_zero(&e).is_zero());
    }

    #[test]
    fn exact_zero_is_numerically_small() {
        let (a, b) = (q(1, 2), q(1, 3));
        let ode = gensol_ode(&a, &b);
        let e = general_solution(a, b);
        for x in [1.3, 1.7, 2.5] {
            assert!(lv_numeric_residual(&e, &ode, &cx(x), 50).unwrap() < 1e-30);
        }
    }

    #[test]
    fn conjugate_product_is_polynomial() {
        for n in 1..=9i64 {
            for m in (n + 1)..=9 {
                let s = Poly::x();
                let plus = PowerProduct::new(vec![
                    (Poly::from_i64s(&[1, 1]), q(n, 1)),
                    (Poly::linear(q(1, 1), q(-n, m)), q(m, 1)),
                ])
                .unwrap();
                let minus = PowerProduct::new(vec![
                    (Poly::from_i64s(&[1, -1]), q(n, 1)),
                    (Poly::linear(q(1, 1), q(n, m)), q(m, 1)),
                ])
                .unwrap();
                let prod = LiouvillianExpr::power(RationalFunction::one(), plus.product(&minus));
                let s2 = s.pow(2);
                let target = &Poly::from_i64s(&[1, 0, -1]).pow(n as u32)
                    * &(&Poly::one() - &s2.scale(&q(n * n, m * m))).pow(m as u32);
                let diff = prod.add(&LiouvillianExpr::rational(RationalFunction::from_poly(
                    -target,
                )));
                assert!(lv_is_zero(&diff).is_zero(), "n={n} m={m}");
            }
        }
    }
}
