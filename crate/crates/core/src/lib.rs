//! Exact symbolic verification of integrability for the rational
//! Calogero-Moser system and its root-system generalizations.
//!
//! The crate is layered: [`scalar`] provides exact arithmetic, on top of which
//! sit classical Poisson mechanics ([`poisson`]), normal-ordered differential
//! operators ([`quantum`]), root systems ([`roots`]), Dunkl operators
//! ([`dunkl`]) and a floating-point simulator ([`sim`]).

pub mod dunkl;
pub mod matrix;
pub mod poisson;
pub mod quantum;
pub mod roots;
pub mod scalar;
pub mod sim;
