//! Exact rational, polynomial and rational-function arithmetic.
//!
//! Everything here is immutable once built and normalised at construction,
//! so structural equality decides mathematical equality.

mod moebius;
mod poly;
mod ratfun;
mod squarefree;

pub use moebius::{moebius_substitute, MoebiusMap};
pub use poly::Poly;
pub use ratfun::{rf_arith, rf_derivative, rf_eval, RationalFunction, RfOp};
pub use squarefree::{multiplicity_profile, poly_squarefree, rational_roots, squarefree_part};

/// Arbitrary-precision rational number (GMP `mpq_t`, always in lowest terms
/// with a positive denominator).
pub type Rational = rug::Rational;

/// Parse `p`, `-p` or `p/q`. Decimal strings are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return None;
    }
    Rational::parse(s).ok().map(Rational::from)
}

/// `num / den` reduced modulo the squarefree polynomial `modulus`, i.e. the
/// value of the quotient at the roots of `modulus` written as a polynomial of
/// degree `< deg modulus`. `None` when `den` shares a root with `modulus`.
pub fn reduce_mod(num: &Poly, den: &Poly, modulus: &Poly) -> Option<Poly> {
    let inv = den.inverse_mod(modulus)?;
    (num * &inv).rem(modulus).ok()
}

/// Format a rational as `p` or `p/q`.
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}
