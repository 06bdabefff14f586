//! Factorization kernels `g` with `A_μ(f) = ∫_a^b D(f)(t) g(t) dt`.

mod general;
mod simpson;
mod trapezoid;

pub use general::{kernel_general, kernel_zeta, GeneralKernel, ZetaKernel, VALIDATION_TOL};
pub use simpson::{
    cot_chain_holds, simpson_alpha_beta, simpson_alpha_defect, simpson_beta_defect, simpson_constants, simpson_excess,
    simpson_h, simpson_kernel, SimpsonKernel, SimpsonParam, SERIES_SWITCH,
};
pub use trapezoid::{trapezoid_kernel_multi, TrapezoidKernel};

use crate::charode::{CharacteristicSpec, DiffOperator};
use crate::error::Result;
use crate::measure::Measure;
use crate::scalar::{cr, Real};
use crate::smooth::SmoothFunction;
use crate::zeta::ZetaParams;

/// How the kernel of a [`Factorization`] is evaluated.
#[derive(Debug, Clone)]
pub enum KernelRepr<T: Real> {
    General(GeneralKernel<T>),
    Zeta(ZetaKernel<T>),
    Trapezoid(TrapezoidKernel<T>),
    Simpson(SimpsonKernel<T>),
}

/// A remainder functional together with an operator `D` and the kernel `g`
/// that factor it.
#[derive(Debug, Clone)]
pub struct Factorization<T: Real> {
    label: String,
    measure: Measure<T>,
    operator: DiffOperator<T>,
    kernel: KernelRepr<T>,
}

impl<T: Real> Factorization<T> {
    /// Kernel from the characteristic solution of `spec`; `validate` checks that
    /// `S_μ` vanishes on the roots of `P_c`.
    pub fn general(
        label: impl Into<String>,
        measure: Measure<T>,
        spec: CharacteristicSpec<T>,
        validate: bool,
    ) -> Result<Self> {
        let operator = spec.operator()?;
        let kernel = GeneralKernel::new(measure.clone(), spec, validate)?;
        Ok(Self {
            label: label.into(),
            measure,
            operator,
            kernel: KernelRepr::General(kernel),
        })
    }

    /// Kernel `∫_{[t,b]} ζ'_{n,k,γ}(x - t) dμ(x)` for the operator `f^{(n)} - γ f^{(k)}`.
    pub fn zeta(measure: Measure<T>, params: ZetaParams<T>, validate: bool) -> Result<Self> {
        let mut coeffs = vec![T::zero(); params.n() + 1];
        coeffs[params.k()] = -params.gamma();
        coeffs[params.n()] = T::one();
        let label = format!("zeta:{},{},{}", params.n(), params.k(), params.gamma());
        Ok(Self {
            label,
            operator: DiffOperator::new(coeffs),
            kernel: KernelRepr::Zeta(ZetaKernel::new(measure.clone(), params, validate)?),
            measure,
        })
    }

    /// Trapezoid remainder with the operator `Π_j (D² + λ_j²)`, `λ_j = 2τ_{n_j}/(b-a)`.
    pub fn trapezoid(a: T, b: T, indices: &[usize]) -> Result<Self> {
        let kernel = TrapezoidKernel::new(a, b, indices)?;
        let operator = kernel.spec()?.operator()?;
        let label = if indices.len() == 1 {
            format!("trap:{}", indices[0])
        } else {
            let list: Vec<String> = indices.iter().map(|n| n.to_string()).collect();
            format!("trap-multi:{}", list.join(","))
        };
        Ok(Self {
            label,
            measure: Measure::trapezoid(a, b)?,
            operator,
            kernel: KernelRepr::Trapezoid(kernel),
        })
    }

    /// Simpson-type remainder with weights `α_u`, `β_u`.
    pub fn simpson(a: T, b: T, u: SimpsonParam<T>) -> Result<Self> {
        let kernel = SimpsonKernel::new(a, b, u)?;
        let (alpha, beta) = kernel.weights();
        Ok(Self {
            label: format!("simpson:{},{}", u.w(), u.v()),
            measure: Measure::simpson(a, b, alpha, beta)?,
            operator: u.operator(a, b),
            kernel: KernelRepr::Simpson(kernel),
        })
    }

    /// Classical Simpson remainder with the operator `f''''`.
    pub fn simpson_classical(a: T, b: T) -> Result<Self> {
        let measure = Measure::simpson(a, b, T::lit(1.0 / 6.0), T::lit(2.0 / 3.0))?;
        let spec = CharacteristicSpec::from_roots(vec![(cr(T::zero()), 4)])?;
        Self::general("simpson-classical", measure, spec, true)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn measure(&self) -> &Measure<T> {
        &self.measure
    }

    pub fn operator(&self) -> &DiffOperator<T> {
        &self.operator
    }

    pub fn repr(&self) -> &KernelRepr<T> {
        &self.kernel
    }

    pub fn a(&self) -> T {
        self.measure.a()
    }

    pub fn b(&self) -> T {
        self.measure.b()
    }

    /// Root set of the operator's characteristic polynomial.
    pub fn characteristic_spec(&self) -> Result<CharacteristicSpec<T>> {
        match &self.kernel {
            KernelRepr::General(k) => Ok(k.spec().clone()),
            KernelRepr::Zeta(k) => k.params().spec(),
            KernelRepr::Trapezoid(k) => k.spec(),
            KernelRepr::Simpson(k) => {
                let l = k.param().lambda(self.a(), self.b());
                CharacteristicSpec::from_roots(vec![(l, 1), (-l, 1), (l.conj(), 1), (-l.conj(), 1)])
            }
        }
    }

    /// Interior points where `g` may have a kink.
    pub fn breakpoints(&self) -> Vec<T> {
        self.measure.breakpoints()
    }

    /// `g(t)`.
    pub fn kernel(&self, t: T) -> Result<T> {
        match &self.kernel {
            KernelRepr::General(k) => k.eval(t),
            KernelRepr::Zeta(k) => k.eval(t),
            KernelRepr::Trapezoid(k) => Ok(k.eval(t)),
            KernelRepr::Simpson(k) => k.eval(t),
        }
    }

    /// `g'(t)` away from breakpoints.
    pub fn kernel_derivative(&self, t: T) -> Result<T> {
        match &self.kernel {
            KernelRepr::General(k) => k.derivative(t),
            KernelRepr::Zeta(k) => k.derivative(t),
            KernelRepr::Trapezoid(k) => Ok(k.derivative(t)),
            KernelRepr::Simpson(k) => k.derivative(t),
        }
    }

    /// `D(f)(t)`.
    pub fn apply_operator(&self, f: &SmoothFunction<T>, t: T) -> Result<T> {
        self.operator.apply(f, t)
    }

    /// `A_μ(f)`.
    pub fn functional(&self, f: &SmoothFunction<T>) -> Result<T> {
        self.measure.apply_functional(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn labels() {
        assert_eq!(Factorization::trapezoid(0.0_f64, 1.0, &[2]).unwrap().label(), "trap:2");
        assert_eq!(
            Factorization::trapezoid(0.0_f64, 1.0, &[0, 1]).unwrap().label(),
            "trap-multi:0,1"
        );
        let z = Factorization::zeta(
            Measure::trapezoid(0.0_f64, 1.0).unwrap(),
            ZetaParams::new(2, 0, 0.0).unwrap(),
            true,
        );
        assert_eq!(z.unwrap().label(), "zeta:2,0,0");
    }

    #[test]
    fn characteristic_spec_matches_operator() {
        let facts = [
            Factorization::trapezoid(0.0_f64, 2.0, &[0, 1]).unwrap(),
            Factorization::simpson(0.0, 2.0, SimpsonParam::new(0.7, 1.3).unwrap()).unwrap(),
            Factorization::simpson_classical(0.0, 2.0).unwrap(),
        ];
        for fact in &facts {
            let coeffs = fact.characteristic_spec().unwrap().coeffs().to_vec();
            let op = fact.operator().coeffs();
            assert_eq!(coeffs.len(), op.len());
            for (c, d) in coeffs.iter().zip(op) {
                assert_abs_diff_eq!(c.re, *d, epsilon = 1e-12);
                assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn classical_simpson_kernel_at_midpoint() {
        let f = Factorization::simpson_classical(0.0_f64, 1.0).unwrap();
        assert_abs_diff_eq!(f.kernel(0.5).unwrap(), 1.0 / 1152.0, epsilon = 1e-16);
        assert_eq!(f.breakpoints(), vec![0.5]);
    }
}
