//! Test functions with exact derivatives.

use std::fmt;
use std::sync::Arc;

use crate::charode::ExpPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{falling, powu, Real};

type DerivFn<T> = Arc<dyn Fn(usize, T) -> T + Send + Sync>;

#[derive(Clone)]
enum Family<T: Real> {
    Polynomial(Vec<T>),
    Exp(T),
    Sin(T),
    Cos(T),
    /// Real part of an exponential polynomial.
    ExpPoly(ExpPolynomial<T>),
    Combination(Vec<(T, SmoothFunction<T>)>),
    Custom {
        lo: T,
        hi: T,
        eval: DerivFn<T>,
    },
}

/// A real function on an interval together with its derivatives up to
/// `max_order`. Built-in families are entire and differentiate exactly.
#[derive(Clone)]
pub struct SmoothFunction<T: Real> {
    family: Family<T>,
    max_order: usize,
    label: String,
}

impl<T: Real> fmt::Debug for SmoothFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFunction")
            .field("label", &self.label)
            .field("max_order", &self.max_order)
            .finish()
    }
}

impl<T: Real> SmoothFunction<T> {
    fn entire(family: Family<T>, label: String) -> Self {
        Self {
            family,
            max_order: usize::MAX,
            label,
        }
    }

    /// `x^m`.
    pub fn monomial(m: usize) -> Self {
        let mut coeffs = vec![T::zero(); m + 1];
        coeffs[m] = T::one();
        Self::entire(Family::Polynomial(coeffs), format!("x^{m}"))
    }

    /// `Σ coeffs[k] x^k`.
    pub fn polynomial(coeffs: Vec<T>) -> Self {
        let label = format!(
            "poly:{}",
            coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        Self::entire(Family::Polynomial(coeffs), label)
    }

    /// `e^{βx}`.
    pub fn exp(beta: T) -> Self {
        Self::entire(Family::Exp(beta), format!("exp:{beta}"))
    }

    /// `sin(βx)`.
    pub fn sin(beta: T) -> Self {
        Self::entire(Family::Sin(beta), format!("sin:{beta}"))
    }

    /// `cos(βx)`.
    pub fn cos(beta: T) -> Self {
        Self::entire(Family::Cos(beta), format!("cos:{beta}"))
    }

    /// The real part of `p`.
    pub fn exp_poly(p: ExpPolynomial<T>) -> Self {
        let label = format!("expoly:{}terms", p.terms().len());
        Self::entire(Family::ExpPoly(p), label)
    }

    /// `Σ weight · f`.
    pub fn combination(parts: Vec<(T, SmoothFunction<T>)>) -> Self {
        let max_order = parts.iter().map(|(_, f)| f.max_order).min().unwrap_or(usize::MAX);
        let label = parts
            .iter()
            .map(|(w, f)| format!("{w}*{}", f.label))
            .collect::<Vec<_>>()
            .join("+");
        Self {
            family: Family::Combination(parts),
            max_order,
            label,
        }
    }

    /// A caller-supplied function defined on `[lo, hi]`; `eval(j, x)` must
    /// return `f^{(j)}(x)` for `j <= max_order`.
    pub fn custom(
        label: impl Into<String>,
        max_order: usize,
        lo: T,
        hi: T,
        eval: impl Fn(usize, T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            family: Family::Custom {
                lo,
                hi,
                eval: Arc::new(eval),
            },
            max_order,
            label: label.into(),
        }
    }

    /// Caps the advertised derivative order.
    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = self.max_order.min(max_order);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Whether `f` is defined on all of `[a, b]`.
    pub fn defined_on(&self, a: T, b: T) -> bool {
        match &self.family {
            Family::Custom { lo, hi, .. } => *lo <= a && b <= *hi,
            Family::Combination(parts) => parts.iter().all(|(_, f)| f.defined_on(a, b)),
            _ => true,
        }
    }

    pub fn value(&self, x: T) -> Result<T> {
        self.derivative(0, x)
    }

    /// `f^{(j)}(x)`.
    pub fn derivative(&self, j: usize, x: T) -> Result<T> {
        if j > self.max_order {
            return Err(Error::Order {
                required: j,
                available: self.max_order,
            });
        }
        if !self.defined_on(x, x) {
            return Err(Error::Domain(format!("{} undefined at {x}", self.label)));
        }
        Ok(self.derivative_unchecked(j, x))
    }

    fn derivative_unchecked(&self, j: usize, x: T) -> T {
        match &self.family {
            Family::Polynomial(c) => {
                let mut acc = T::zero();
                for k in (j..c.len()).rev() {
                    acc = acc * x + c[k] * falling::<T>(k, j);
                }
                acc
            }
            Family::Exp(beta) => powu(*beta, j) * (*beta * x).exp(),
            Family::Sin(beta) => {
                let (s, c) = (*beta * x).sin_cos();
                let v = [s, c, -s, -c][j % 4];
                powu(*beta, j) * v
            }
            Family::Cos(beta) => {
                let (s, c) = (*beta * x).sin_cos();
                let v = [c, -s, -c, s][j % 4];
                powu(*beta, j) * v
            }
            Family::ExpPoly(p) => p.eval_derivative(j, x).re,
            Family::Combination(parts) => parts
                .iter()
                .fold(T::zero(), |acc, (w, f)| acc + *w * f.derivative_unchecked(j, x)),
            Family::Custom { eval, .. } => eval(j, x),
        }
    }

    /// `∫_a^b f` in closed form, `None` for custom functions.
    pub fn integral(&self, a: T, b: T) -> Option<T> {
        let two = T::lit(2.0);
        let half = T::lit(0.5);
        match &self.family {
            Family::Polynomial(c) => Some(c.iter().enumerate().fold(T::zero(), |acc, (k, ck)| {
                acc + *ck * (powu(b, k + 1) - powu(a, k + 1)) / T::of(k + 1)
            })),
            Family::Exp(beta) => {
                let z = *beta * (b - a);
                if z == T::zero() {
                    Some(b - a)
                } else {
                    // e^{βa} (e^{β(b-a)} - 1) / β without cancellation
                    Some((*beta * a).exp() * z.exp_m1() / *beta)
                }
            }
            Family::Sin(beta) => {
                if *beta == T::zero() {
                    return Some(T::zero());
                }
                let mid = (*beta * (a + b) * half).sin();
                let half_width = (*beta * (b - a) * half).sin();
                Some(two * mid * half_width / *beta)
            }
            Family::Cos(beta) => {
                if *beta == T::zero() {
                    return Some(b - a);
                }
                let mid = (*beta * (a + b) * half).cos();
                let half_width = (*beta * (b - a) * half).sin();
                Some(two * mid * half_width / *beta)
            }
            Family::ExpPoly(p) => {
                let big = p.antiderivative();
                Some((big.eval(b) - big.eval(a)).re)
            }
            Family::Combination(parts) => parts
                .iter()
                .try_fold(T::zero(), |acc, (w, f)| Some(acc + *w * f.integral(a, b)?)),
            Family::Custom { .. } => None,
        }
    }
}
