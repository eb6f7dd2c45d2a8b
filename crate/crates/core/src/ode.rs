use std::fmt;

use crate::exact::{Poly, RationalFunction};

/// Second-order linear ODE `y″ + p1·y′ + p0·y = 0` with rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ode {
    p1: RationalFunction,
    p0: RationalFunction,
}

impl Ode {
    pub fn new(p1: RationalFunction, p0: RationalFunction) -> Self {
        Ode { p1, p0 }
    }

    pub fn p1(&self) -> &RationalFunction {
        &self.p1
    }

    pub fn p0(&self) -> &RationalFunction {
        &self.p0
    }

    /// Polynomial form `P2·y″ + P1·y′ + P0·y = 0` with `P2` the monic lcm of
    /// the coefficient denominators.
    pub fn cleared(&self) -> (Poly, Poly, Poly) {
        let d1 = self.p1.den();
        let d0 = self.p0.den();
        let g = Poly::gcd(d1, d0);
        let lcm = (d1 * d0).exact_div(&g).expect("gcd divides");
        let q1 = (self.p1.num() * &lcm)
            .exact_div(d1)
            .expect("den divides lcm");
        let q0 = (self.p0.num() * &lcm)
            .exact_div(d0)
            .expect("den divides lcm");
        (lcm, q1, q0)
    }

    /// `P2·f″ + P1·f′ + P0·f` for a polynomial `f`.
    pub fn apply_cleared(&self, f: &Poly) -> Poly {
        let (p2, p1, p0) = self.cleared();
        let d1 = f.derivative();
        let d2 = d1.derivative();
        &(&(&p2 * &d2) + &(&p1 * &d1)) + &(&p0 * f)
    }
}

impl fmt::Display for Ode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y'' + [{}] y' + [{}] y = 0", self.p1, self.p0)
    }
}
