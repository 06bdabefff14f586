//! Independent numerical checks: adaptive quadrature and the factorization identity.

mod integrate;
mod verify;

pub use integrate::{integrate_adaptive, try_integrate_adaptive, QuadratureResult, MAX_PANELS};
pub use verify::{verify_factorization, verify_measure, VerificationRecord};
