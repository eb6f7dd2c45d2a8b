use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Integer};

use super::{Poly, Rational};
use crate::error::{Error, Result};
use crate::numeric;

/// Quotient of two polynomials, always stored reduced: the denominator is
/// monic and coprime to the numerator. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

/// Binary operation selector for [`rf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Mul,
    Div,
}

pub fn rf_arith(op: RfOp, f: &RationalFunction, g: &RationalFunction) -> Result<RationalFunction> {
    match op {
        RfOp::Add => Ok(f + g),
        RfOp::Mul => Ok(f * g),
        RfOp::Div => f.div(g),
    }
}

pub fn rf_derivative(f: &RationalFunction) -> RationalFunction {
    f.derivative()
}

/// Evaluate at a complex point with `digits` significant decimal digits.
pub fn rf_eval(f: &RationalFunction, point: &Complex, digits: u32) -> Result<Complex> {
    let prec = numeric::bits_for_digits(digits);
    let x = Complex::with_val(prec, point);
    f.eval_complex(&x)
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = Rational::from(den.lead().unwrap().recip_ref());
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Degree as a map of the projective line: `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok(RationalFunction {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        })
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Complex evaluation at the precision of `x`; a denominator that
    /// vanishes to within the working precision is reported as a pole.
    pub fn eval_complex(&self, x: &Complex) -> Result<Complex> {
        let d = self.den.eval_complex(x);
        let tiny = numeric::pole_threshold(x.prec().0);
        if numeric::abs_f64(&d) <= tiny {
            return Err(Error::Pole(format!(
                "near x = {}",
                numeric::fmt_complex(x, 12)
            )));
        }
        Ok(self.num.eval_complex(x) / d)
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &RationalFunction) -> RationalFunction {
        let p = self.num.deg();
        let q = self.den.deg();
        let top = p.max(q);
        let mut hn_pows = vec![Poly::one()];
        let mut hd_pows = vec![Poly::one()];
        for k in 1..=top {
            hn_pows.push(&hn_pows[k - 1] * &inner.num);
            hd_pows.push(&hd_pows[k - 1] * &inner.den);
        }
        let homog = |poly: &Poly, deg: usize| -> Poly {
            let mut acc = Poly::zero();
            for (i, c) in poly.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&hn_pows[i] * &hd_pows[deg - i]).scale(c);
                }
            }
            acc
        };
        let mut num = homog(&self.num, p);
        let mut den = homog(&self.den, q);
        if q > p {
            num = &num * &hd_pows[q - p];
        } else if p > q {
            den = &den * &hd_pows[p - q];
        }
        Self::new(num, den).expect("composition of a nonconstant map")
    }

    /// Numerator and denominator scaled by a common factor to coprime
    /// integer arrays, denominator with positive leading coefficient.
    pub fn integer_coefficients(&self) -> (Vec<Integer>, Vec<Integer>) {
        let l = self.num.denominator_lcm().lcm(&self.den.denominator_lcm());
        let to_int = |p: &Poly| -> Vec<Integer> {
            p.coeffs()
                .iter()
                .map(|c| c.numer() * Integer::from(&l / c.denom()))
                .collect()
        };
        let mut n = to_int(&self.num);
        let mut d = to_int(&self.den);
        let mut g = Integer::new();
        for c in n.iter().chain(d.iter()) {
            g.gcd_mut(c);
        }
        if g > 1 {
            for c in n.iter_mut().chain(d.iter_mut()) {
                c.div_exact_mut(&g);
            }
        }
        (n, d)
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let e1 = self.den.exact_div(&g).unwrap();
        let e2 = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &e2) + &(&rhs.num * &e1);
        RationalFunction::normalized(num, &(&g * &e1) * &e2)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = Rational::from(den.lead().unwrap().recip_ref());
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
