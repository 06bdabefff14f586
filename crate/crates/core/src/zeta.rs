//! The series `ζ_{n,k,γ}(t) = Σ_i γ^i t^{i(n-k)+n} / (i(n-k)+n)!`.

use serde::{Deserialize, Serialize};

use crate::charode::{check_order, CharacteristicSpec, TaylorSplit};
use crate::error::{Error, Result};
use crate::oracle::try_integrate_adaptive;
use crate::scalar::{factorial, powu, Real};
use crate::smooth::SmoothFunction;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 500;

/// Parameters `(n, k, γ)` with `k < n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaParams<T> {
    n: usize,
    k: usize,
    gamma: T,
}

impl<T: Real> ZetaParams<T> {
    pub fn new(n: usize, k: usize, gamma: T) -> Result<Self> {
        if n == 0 || k >= n {
            return Err(Error::InvalidInput(format!("need 0 <= k < n, got n={n}, k={k}")));
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidInput("gamma must be finite".into()));
        }
        Ok(Self { n, k, gamma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// The operator `f^{(n)} - γ f^{(k)}`.
    pub fn spec(&self) -> Result<CharacteristicSpec<T>> {
        CharacteristicSpec::zeta(self.n, self.k, self.gamma)
    }

    /// `ζ(t)`.
    pub fn eval(&self, t: T) -> Result<T> {
        series(self.gamma, self.n, self.n - self.k, t)
    }

    /// `ζ^{(j)}(t)` for `j <= n`.
    pub fn derivative(&self, j: usize, t: T) -> Result<T> {
        if j > self.n {
            return Err(Error::Order {
                required: j,
                available: self.n,
            });
        }
        // term-wise differentiation keeps the step and lowers the leading exponent
        series(self.gamma, self.n - j, self.n - self.k, t)
    }
}

/// `Σ_i γ^i t^{e0 + i·step} / (e0 + i·step)!` by term-ratio recurrence.
fn series<T: Real>(gamma: T, e0: usize, step: usize, t: T) -> Result<T> {
    let mut term = (1..=e0).fold(T::one(), |acc, r| acc * t / T::of(r));
    let mut sum = term;
    if term == T::zero() || gamma == T::zero() {
        return Ok(sum);
    }
    let eps = T::epsilon() * T::lit(0.5);
    let mut e = e0;
    for _ in 1..MAX_TERMS {
        term = (1..=step).fold(term * gamma, |acc, r| acc * t / T::of(e + r));
        e += step;
        sum = sum + term;
        if !sum.is_finite() {
            break;
        }
        if term.abs() <= eps * sum.abs() || term == T::zero() {
            return Ok(sum);
        }
    }
    Err(Error::Overflow(format!(
        "series with gamma={gamma}, t={t} did not settle within {MAX_TERMS} terms"
    )))
}

/// `ζ_{n,k,γ}(t)`.
pub fn zeta<T: Real>(params: &ZetaParams<T>, t: T) -> Result<T> {
    params.eval(t)
}

/// `ζ_{n,k,γ}^{(j)}(t)`.
pub fn zeta_derivative<T: Real>(params: &ZetaParams<T>, j: usize, t: T) -> Result<T> {
    params.derivative(j, t)
}

/// `f(x) = Σ_{j<k} f^{(j)}(a)(x-a)^j/j! + Σ_{j=k}^{n-1} f^{(j)}(a) ζ^{(n-j)}(x-a)
///        + ∫_a^x (f^{(n)} - γ f^{(k)})(t) ζ'(x-t) dt`.
pub fn zeta_taylor_expansion<T: Real>(
    params: &ZetaParams<T>,
    f: &SmoothFunction<T>,
    a: T,
    x: T,
) -> Result<TaylorSplit<T>> {
    let (n, k, gamma) = (params.n, params.k, params.gamma);
    check_order(f, n)?;
    let h = x - a;
    let mut poly = T::zero();
    for j in 0..k {
        poly = poly + f.derivative(j, a)? * powu(h, j) / factorial::<T>(j);
    }
    for j in k..n {
        poly = poly + f.derivative(j, a)? * params.derivative(n - j, h)?;
    }
    let remainder = try_integrate_adaptive(
        |t| {
            let lead = f.derivative(n, t)? - gamma * f.derivative(k, t)?;
            Ok(lead * params.derivative(1, x - t)?)
        },
        a,
        x,
        T::lit(crate::charode::TAYLOR_QUAD_TOL),
        &[],
    )?
    .value;
    Ok(TaylorSplit {
        polynomial_part: poly,
        remainder_integral: remainder,
    })
}
