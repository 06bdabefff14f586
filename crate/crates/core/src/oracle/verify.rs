use serde::Serialize;

use super::integrate::try_integrate_adaptive;
use crate::charode::CharacteristicSpec;
use crate::error::Result;
use crate::kernels::Factorization;
use crate::measure::Measure;
use crate::scalar::Real;
use crate::smooth::SmoothFunction;

/// One comparison of `A_μ(f)` with `∫_a^b D(f)(t) g(t) dt`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord<T> {
    pub rule: String,
    pub f: String,
    pub lhs: T,
    pub rhs: T,
    pub abs_err: T,
    pub pass: bool,
}

impl<T: Real + Serialize> VerificationRecord<T> {
    /// The record as a single JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }
}

/// Checks `|A_μ(f) - ∫ D(f) g| <= tol (1 + |A_μ(f)|)`; the integral is taken
/// with a tolerance a hundred times tighter and split at the atoms.
pub fn verify_factorization<T: Real>(
    fact: &Factorization<T>,
    f: &SmoothFunction<T>,
    tol: T,
) -> Result<VerificationRecord<T>> {
    let lhs = fact.functional(f)?;
    let rhs = try_integrate_adaptive(
        |t| Ok(fact.apply_operator(f, t)? * fact.kernel(t)?),
        fact.a(),
        fact.b(),
        tol * T::lit(0.01),
        &fact.breakpoints(),
    )?
    .value;
    let abs_err = (lhs - rhs).abs();
    Ok(VerificationRecord {
        rule: fact.label().to_string(),
        f: f.label().to_string(),
        lhs,
        rhs,
        abs_err,
        pass: abs_err <= tol * (T::one() + lhs.abs()),
    })
}

/// [`verify_factorization`] for a measure and an operator given by its roots.
pub fn verify_measure<T: Real>(
    measure: &Measure<T>,
    spec: &CharacteristicSpec<T>,
    f: &SmoothFunction<T>,
    tol: T,
) -> Result<VerificationRecord<T>> {
    let fact = Factorization::general("general", measure.clone(), spec.clone(), true)?;
    verify_factorization(&fact, f, tol)
}
