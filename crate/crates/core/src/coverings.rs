//! Rational maps `φ: ℙ¹ → ℙ¹`, their fibers over `0, 1, ∞` and the cyclic,
//! dihedral and degree-4 families.

use rug::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{
    multiplicity_profile, poly_squarefree, rational_string, reduce_mod, Poly, Rational,
    RationalFunction,
};

/// Fiber multiplicities over `0`, `1` and `∞`, each sorted descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Passport {
    pub zero: Vec<u32>,
    pub one: Vec<u32>,
    pub inf: Vec<u32>,
}

impl Passport {
    pub fn distinct_points(&self) -> usize {
        self.zero.len() + self.one.len() + self.inf.len()
    }

    pub fn to_json(&self) -> Value {
        json!({"0": self.zero, "1": self.one, "inf": self.inf})
    }
}

/// Ramification outside the fibers over `0, 1, ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraBranch {
    /// Squarefree polynomial whose roots are the branch points, or `None`
    /// for the point at infinity.
    pub points: Option<Poly>,
    /// Branching order (ramification index) at each of the points.
    pub order: u32,
    /// Common critical value when it is rational.
    pub value: Option<Rational>,
}

/// Fiber data of a rational map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassportData {
    pub degree: usize,
    pub passport: Passport,
    pub extra: Vec<ExtraBranch>,
    pub belyi: bool,
}

fn fiber_factors(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    if p.is_constant() {
        Ok(Vec::new())
    } else {
        poly_squarefree(p)
    }
}

/// Fiber profiles over `0, 1, ∞`, extra branching, and the Belyi flag
/// from the point count `deg φ + 2`.
pub fn passport(phi: &RationalFunction) -> Result<PassportData> {
    if phi.is_constant() {
        return Err(Error::InvalidParameter("φ is constant".into()));
    }
    let (n, d) = (phi.num(), phi.den());
    let deg = phi.degree();
    let n_minus_d = n - d;
    let passport = Passport {
        zero: multiplicity_profile(n, deg)?,
        one: multiplicity_profile(&n_minus_d, deg)?,
        inf: multiplicity_profile(d, deg)?,
    };
    let belyi = passport.distinct_points() == deg + 2;

    let w = &(&n.derivative() * d) - &(n * &d.derivative());
    let mut rest = w;
    for p in [n, &n_minus_d, d] {
        for (f, m) in fiber_factors(p)? {
            if m > 1 {
                rest = rest.exact_div(&f.pow(m - 1))?;
            }
        }
    }
    let mut extra = Vec::new();
    let mut finite_ram = 0usize;
    for (f, k) in fiber_factors(&rest)? {
        finite_ram += f.deg() * k as usize;
        let value = reduce_mod(n, d, &f)
            .filter(|v| v.is_constant())
            .map(|v| v.coeff(0));
        extra.push(ExtraBranch {
            points: Some(f),
            order: k + 1,
            value,
        });
    }
    let fiber_ram: usize = [&passport.zero, &passport.one, &passport.inf]
        .iter()
        .map(|p| p.iter().map(|&m| m as usize - 1).sum::<usize>())
        .sum();
    let total = 2 * deg - 2;
    let at_inf = total.checked_sub(fiber_ram + finite_ram).ok_or_else(|| {
        Error::InvalidParameter("ramification count exceeds the Riemann–Hurwitz bound".into())
    })?;
    if at_inf > 0 {
        let lead_n = n.coeff(deg);
        let lead_d = d.coeff(deg);
        let value = (!lead_d.is_zero()).then(|| lead_n / lead_d);
        extra.push(ExtraBranch {
            points: None,
            order: at_inf as u32 + 1,
            value,
        });
    }
    Ok(PassportData {
        degree: deg,
        passport,
        extra,
        belyi,
    })
}

/// `g ∘ h`.
pub fn compose(g: &RationalFunction, h: &RationalFunction) -> RationalFunction {
    g.compose(h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic { n: u32, m: u32 },
    Dihedral { n: u32, m: u32 },
    Nonbelyi { s: Rational },
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cyclic { .. } => "cyclic",
            Family::Dihedral { .. } => "dihedral",
            Family::Nonbelyi { .. } => "nonbelyi",
            Family::Custom => "custom",
        }
    }
}

/// The two polynomials with `Θ₁(x) − x^(3/2)·Θ₂(x) = (1+√x)^N (1−N√x/M)^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralPair {
    pub theta1: Poly,
    pub theta2: Poly,
    pub n: u32,
    pub m: u32,
}

impl DihedralPair {
    /// The fourth singular point `M²/N²`.
    pub fn t(&self) -> Rational {
        Rational::from((self.m * self.m, self.n * self.n))
    }

    /// `(1 − x)^N (1 − N²x/M²)^M`.
    pub fn norm(&self) -> Poly {
        let c = Rational::from((self.n * self.n, self.m * self.m));
        &Poly::from_i64s(&[1, -1]).pow(self.n) * &Poly::linear(Rational::from(1), -c).pow(self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    family: Family,
    phi: RationalFunction,
    data: PassportData,
}

impl Covering {
    pub fn from_phi(phi: RationalFunction) -> Result<Self> {
        Self::with_family(Family::Custom, phi)
    }

    fn with_family(family: Family, phi: RationalFunction) -> Result<Self> {
        let data = passport(&phi)?;
        Ok(Covering { family, phi, data })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn phi(&self) -> &RationalFunction {
        &self.phi
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn passport(&self) -> &Passport {
        &self.data.passport
    }

    pub fn extra_branches(&self) -> &[ExtraBranch] {
        &self.data.extra
    }

    pub fn is_belyi(&self) -> bool {
        self.data.belyi
    }

    pub fn to_json(&self) -> Value {
        let (num, den) = self.phi.integer_coefficients();
        let ints = |v: Vec<Integer>| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let (n, m, s) = match &self.family {
            Family::Cyclic { n, m } | Family::Dihedral { n, m } => {
                (json!(n), json!(m), Value::Null)
            }
            Family::Nonbelyi { s } => (Value::Null, Value::Null, json!(rational_string(s))),
            Family::Custom => (Value::Null, Value::Null, Value::Null),
        };
        let extra: Vec<Value> = self
            .data
            .extra
            .iter()
            .map(|e| {
                json!({
                    "points": e.points.as_ref().map(|p| p.to_string()).unwrap_or_else(|| "inf".into()),
                    "order": e.order,
                    "value": e.value.as_ref().map(rational_string),
                })
            })
            .collect();
        json!({
            "family": self.family.name(),
            "N": n,
            "M": m,
            "s": s,
            "phi": {"num": ints(num), "den": ints(den)},
            "degree": self.data.degree,
            "passport": self.data.passport.to_json(),
            "extra_branch": extra,
            "belyi": self.data.belyi,
        })
    }
}

fn check_positive(n: u32, m: u32) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "N = {n} and M = {m} must be positive"
        )));
    }
    Ok(())
}

/// `φ = 1 − (1−x)^N (1 + N·x/M)^M`.
pub fn cyclic_covering(n: u32, m: u32) -> Result<Covering> {
    check_positive(n, m)?;
    let c = Rational::from((n, m));
    let prod = &Poly::from_i64s(&[1, -1]).pow(n) * &Poly::linear(Rational::from(1), c).pow(m);
    let phi = RationalFunction::from_poly(&Poly::one() - &prod);
    Covering::with_family(Family::Cyclic { n, m }, phi)
}

/// Binomial expansion of `(1+s)^N (1 − N·s/M)^M` split by parity of the
/// power of `s`.
pub fn dihedral_pair(n: u32, m: u32) -> Result<DihedralPair> {
    check_positive(n, m)?;
    if n == m {
        return Err(Error::DegenerateCovering(format!("N = M = {n}")));
    }
    let c = Rational::from((n, m));
    let e = &Poly::from_i64s(&[1, 1]).pow(n) * &Poly::linear(Rational::from(1), -c).pow(m);
    debug_assert!(e.coeff(1).is_zero());
    let deg = e.deg();
    let theta1 = Poly::new((0..=deg).step_by(2).map(|k| e.coeff(k)).collect());
    let theta2 = Poly::new((3..=deg).step_by(2).map(|k| e.coeff(k)).collect());
    Ok(DihedralPair {
        theta1,
        theta2,
        n,
        m,
    })
}

/// `φ = x³Θ₂²/Θ₁²`.
pub fn dihedral_covering(n: u32, m: u32) -> Result<(Covering, DihedralPair)> {
    let pair = dihedral_pair(n, m)?;
    let num = &Poly::monomial(Rational::from(1), 3) * &pair.theta2.pow(2);
    let phi = RationalFunction::new(num, pair.theta1.pow(2))?;
    let cov = Covering::with_family(Family::Dihedral { n, m }, phi)?;
    Ok((cov, pair))
}

/// `φ_s = 4s·x(2−x)/(x²−2x−s)²`, with `1 − φ_s = (x²−2x+s)²/(x²−2x−s)²`.
pub fn nonbelyi_covering(s: &Rational) -> Result<Covering> {
    if s.is_zero() {
        return Err(Error::DegenerateCovering("s = 0".into()));
    }
    let four_s = Rational::from(s * 4u32);
    let num = Poly::new(vec![
        Rational::new(),
        Rational::from(&four_s * 2u32),
        Rational::from(-&four_s),
    ]);
    let den = Poly::new(vec![
        Rational::from(-s),
        Rational::from(-2),
        Rational::from(1),
    ])
    .pow(2);
    Covering::with_family(
        Family::Nonbelyi { s: s.clone() },
        RationalFunction::new(num, den)?,
    )
}

/// The critical value `4s/(s+1)²` of `φ_s` at `x = 1`.
pub fn nonbelyi_branch_value(s: &Rational) -> Option<Rational> {
    let sp1 = Rational::from(s + 1u32);
    (!sp1.is_zero()).then(|| Rational::from(s * 4u32) / sp1.square())
}

/// JSON for a dihedral covering, including `Θ₁`, `Θ₂` and `t`.
pub fn dihedral_json(cov: &Covering, pair: &DihedralPair) -> Value {
    let mut v = cov.to_json();
    let coeffs = |p: &Poly| p.coeffs().iter().map(rational_string).collect::<Vec<_>>();
    v["Theta1"] = json!(coeffs(&pair.theta1));
    v["Theta2"] = json!(coeffs(&pair.theta2));
    v["t"] = json!(rational_string(&pair.t()));
    v
}
