//! Exact scalar layer: ℚ(i), parameter polynomials, polynomials and
//! rational functions with linear-form denominators.

mod gaussian;
mod linear_form;
mod modular;
mod monomial;
mod param;
mod poly;
mod ratfunc;
mod wire;

pub use gaussian::GaussianRational;
pub use linear_form::LinearForm;
pub use monomial::{Mono, Monomial, Naming, Param, ParamMono, Symbol, Var};
pub use param::ParamScalar;
pub use poly::Poly;
pub use ratfunc::{Denominator, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("polynomial is not divisible by the linear form")]
    NotDivisible,
}
