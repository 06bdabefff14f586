//! Exponential polynomials, characteristic polynomials and the operator `D_c`.

mod expoly;
mod spec;

pub use expoly::{ExpPolynomial, Term, TermRecord, DEMOTION_TOL};
pub use spec::{gamma_roots, CharacteristicSpec, DiffOperator, TaylorSplit, ROOT_SEPARATION, TAYLOR_QUAD_TOL};

pub(crate) use spec::check_order;
