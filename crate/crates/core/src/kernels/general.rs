use crate::charode::{CharacteristicSpec, ExpPolynomial};
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::scalar::{cr, Real};
use crate::zeta::ZetaParams;

/// Relative tolerance for the spectral pre-check.
pub const VALIDATION_TOL: f64 = 1e-8;

/// `g(t) = ∫_{[t,b]} ω_c(x - t) dμ(x)` for a measure whose spectral function
/// vanishes on the roots of `P_c`.
#[derive(Debug, Clone)]
pub struct GeneralKernel<T: Real> {
    measure: Measure<T>,
    spec: CharacteristicSpec<T>,
    omega: ExpPolynomial<T>,
    omega_prime: ExpPolynomial<T>,
    big_omega: ExpPolynomial<T>,
}

impl<T: Real> GeneralKernel<T> {
    pub fn new(measure: Measure<T>, spec: CharacteristicSpec<T>, validate: bool) -> Result<Self> {
        if validate {
            validate_roots(&measure, &spec)?;
        }
        let omega = spec.characteristic_solution()?;
        Ok(Self {
            omega_prime: omega.derivative(),
            big_omega: omega.antiderivative(),
            omega,
            measure,
            spec,
        })
    }

    pub fn measure(&self) -> &Measure<T> {
        &self.measure
    }

    pub fn spec(&self) -> &CharacteristicSpec<T> {
        &self.spec
    }

    pub fn omega(&self) -> &ExpPolynomial<T> {
        &self.omega
    }

    pub fn eval(&self, t: T) -> Result<T> {
        let mut acc = T::zero();
        for p in self.measure.atoms() {
            if p.x >= t {
                acc = acc + p.w * self.omega.eval_real(p.x - t)?;
            }
        }
        let d = self.measure.density();
        if d != T::zero() {
            acc = acc + d * self.big_omega.eval_real(self.measure.b() - t)?;
        }
        Ok(acc)
    }

    /// `g'(t)` away from atom locations.
    pub fn derivative(&self, t: T) -> Result<T> {
        let mut acc = T::zero();
        for p in self.measure.atoms() {
            if p.x > t {
                acc = acc - p.w * self.omega_prime.eval_real(p.x - t)?;
            }
        }
        let d = self.measure.density();
        if d != T::zero() {
            acc = acc - d * self.omega.eval_real(self.measure.b() - t)?;
        }
        Ok(acc)
    }
}

fn validate_roots<T: Real>(measure: &Measure<T>, spec: &CharacteristicSpec<T>) -> Result<()> {
    let tol = T::lit(VALIDATION_TOL);
    for &(lambda, m) in spec.roots() {
        if !measure.is_root(lambda, tol, m) {
            return Err(Error::NotInKernel(format!(
                "spectral function does not vanish to order {m} at {lambda}"
            )));
        }
    }
    Ok(())
}

/// `g(t) = ∫_{[t,b]} ζ'_{n,k,γ}(x - t) dμ(x)`.
#[derive(Debug, Clone)]
pub struct ZetaKernel<T: Real> {
    measure: Measure<T>,
    params: ZetaParams<T>,
}

impl<T: Real> ZetaKernel<T> {
    /// Checks that the moments `∫ x^i dμ` vanish for `i < k` (for `i < n` when
    /// `γ = 0`) and that `S_μ` vanishes at every `(n-k)`-th root of `γ`.
    pub fn new(measure: Measure<T>, params: ZetaParams<T>, validate: bool) -> Result<Self> {
        if validate {
            let spec = params.spec()?;
            let tol = T::lit(VALIDATION_TOL);
            for &(lambda, m) in spec.roots() {
                if !measure.is_root(lambda, tol, m) {
                    let what = if lambda == cr(T::zero()) {
                        format!("moments of order below {m} do not vanish")
                    } else {
                        format!("spectral function does not vanish at {lambda}")
                    };
                    return Err(Error::KernelCondition(what));
                }
            }
        }
        Ok(Self { measure, params })
    }

    pub fn measure(&self) -> &Measure<T> {
        &self.measure
    }

    pub fn params(&self) -> &ZetaParams<T> {
        &self.params
    }

    pub fn eval(&self, t: T) -> Result<T> {
        let mut acc = T::zero();
        for p in self.measure.atoms() {
            if p.x >= t {
                acc = acc + p.w * self.params.derivative(1, p.x - t)?;
            }
        }
        let d = self.measure.density();
        if d != T::zero() {
            acc = acc + d * self.params.eval(self.measure.b() - t)?;
        }
        Ok(acc)
    }

    /// `g'(t)` away from atom locations; needs `n >= 2`.
    pub fn derivative(&self, t: T) -> Result<T> {
        let mut acc = T::zero();
        for p in self.measure.atoms() {
            if p.x > t {
                acc = acc - p.w * self.params.derivative(2, p.x - t)?;
            }
        }
        let d = self.measure.density();
        if d != T::zero() {
            acc = acc - d * self.params.derivative(1, self.measure.b() - t)?;
        }
        Ok(acc)
    }
}

/// Pointwise `g(t)` for a general measure and operator.
pub fn kernel_general<T: Real>(measure: &Measure<T>, spec: &CharacteristicSpec<T>, t: T) -> Result<T> {
    GeneralKernel::new(measure.clone(), spec.clone(), true)?.eval(t)
}

/// Pointwise `g(t)` for the operator `f^{(n)} - γ f^{(k)}`.
pub fn kernel_zeta<T: Real>(measure: &Measure<T>, n: usize, k: usize, gamma: T, t: T) -> Result<T> {
    ZetaKernel::new(measure.clone(), ZetaParams::new(n, k, gamma)?, true)?.eval(t)
}
