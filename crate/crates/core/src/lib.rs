//! Liouvillian Heun functions obtained as pull-backs of cyclic and dihedral
//! Gauss hypergeometric equations.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, polynomials, rational functions, squarefree data.
//! - [`series`]: Gauss and Heun local solutions as exact or multiprecision
//!   power series, plus the elementary hypergeometric closed forms.
//! - [`liouvillian`]: sums of rational × power-product × logarithm terms with
//!   exact differentiation and ODE residuals.
//! - [`coverings`]: the covering families, fiber passports, Belyi test.
//! - [`pullback`]: second-order Fuchsian ODEs and their exact change of
//!   variables under `z = φ(x)`, `Y = θ(x)·y(φ(x))`.
//! - [`identities`]: the catalogue of closed-form identities and its runner.

pub mod coverings;
pub mod error;
pub mod exact;
pub mod identities;
pub mod liouvillian;
pub mod numeric;
pub mod ode;
pub mod pullback;
pub mod series;

pub use error::{Error, Result};
pub use exact::{MoebiusMap, Poly, Rational, RationalFunction};
