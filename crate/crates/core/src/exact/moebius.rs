use super::{Poly, Rational, RationalFunction};
use crate::error::{Error, Result};

/// Fractional-linear map `x ↦ (a·x + b)/(c·x + d)` with `ad − bc ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl MoebiusMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let det = Rational::from(&a * &d) - Rational::from(&b * &c);
        if det.is_zero() {
            return Err(Error::InvalidParameter("singular Möbius map".into()));
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: 1.into(),
            b: 0.into(),
            c: 0.into(),
            d: 1.into(),
        }
    }

    /// `x ↦ scale·x + shift`.
    pub fn affine(scale: Rational, shift: Rational) -> Result<Self> {
        Self::new(scale, shift, 0.into(), 1.into())
    }

    pub fn coefficients(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn inverse(&self) -> Self {
        MoebiusMap {
            a: self.d.clone(),
            b: Rational::from(-&self.b),
            c: Rational::from(-&self.c),
            d: self.a.clone(),
        }
    }

    pub fn as_rational_function(&self) -> RationalFunction {
        RationalFunction::new(
            Poly::linear(self.b.clone(), self.a.clone()),
            Poly::linear(self.d.clone(), self.c.clone()),
        )
        .expect("invertible map has a nonzero denominator")
    }
}

/// `f((a·x + b)/(c·x + d))`, normalized.
pub fn moebius_substitute(f: &RationalFunction, m: &MoebiusMap) -> RationalFunction {
    f.compose(&m.as_rational_function())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(n), Poly::from_i64s(d)).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let f = RationalFunction::x();
        assert_eq!(moebius_substitute(&f, &MoebiusMap::identity()), f);
    }

    #[test]
    fn reflection_then_complement() {
        // 2u - u^2 at u = 1 - x is 1 - x^2; subtracting from 1 gives x^2.
        let g = rf(&[0, 2, -1], &[1]);
        let m = MoebiusMap::new((-1).into(), 1.into(), 0.into(), 1.into()).unwrap();
        let sub = moebius_substitute(&g, &m);
        assert_eq!(&RationalFunction::one() - &sub, rf(&[0, 0, 1], &[1]));
    }

    #[test]
    fn square_under_scaling_map() {
        // x^2 at 2x/(x + 1)
        let m = MoebiusMap::new(2.into(), 0.into(), 1.into(), 1.into()).unwrap();
        let out = moebius_substitute(&rf(&[0, 0, 1], &[1]), &m);
        assert_eq!(out, rf(&[0, 0, 4], &[1, 2, 1]));
    }

    #[test]
    fn singular_map_rejected() {
        assert!(MoebiusMap::new(1.into(), 2.into(), 2.into(), 4.into()).is_err());
    }
}
