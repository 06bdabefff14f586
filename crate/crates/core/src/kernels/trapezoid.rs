use crate::charode::CharacteristicSpec;
use crate::error::{Error, Result};
use crate::rootfind::tan_fixed_point;
use crate::scalar::{cr, cx, Real};

/// Closed-form kernel of the trapezoid remainder for the operator
/// `Π_j (D² + λ_j²)` with `λ_j = 2τ_{n_j}/(b-a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrapezoidKernel<T> {
    a: T,
    b: T,
    indices: Vec<usize>,
    lambdas: Vec<T>,
    /// `λ_j Q_j(λ_j) sin(λ_j(b-a)/2)`, or `2 Q_1(0)(b-a)` for a zero index.
    denominators: Vec<T>,
}

impl<T: Real> TrapezoidKernel<T> {
    pub fn new(a: T, b: T, indices: &[usize]) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
        }
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "indices must be non-empty and strictly increasing".into(),
            ));
        }
        let len = b - a;
        let two = T::lit(2.0);
        let lambdas: Vec<T> = indices.iter().map(|&n| two * tan_fixed_point::<T>(n) / len).collect();
        let q = |j: usize, z: T| {
            lambdas
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .fold(T::one(), |acc, (_, &lam)| acc * (lam * lam - z * z))
        };
        let denominators = lambdas
            .iter()
            .enumerate()
            .map(|(j, &lam)| {
                if indices[j] == 0 {
                    two * q(j, T::zero()) * len
                } else {
                    lam * q(j, lam) * (lam * len / two).sin()
                }
            })
            .collect();
        Ok(Self {
            a,
            b,
            indices: indices.to_vec(),
            lambdas,
            denominators,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn lambdas(&self) -> &[T] {
        &self.lambdas
    }

    /// Root set `{0 (double)} ∪ {±iλ_j}` of the operator.
    pub fn spec(&self) -> Result<CharacteristicSpec<T>> {
        let mut roots = Vec::new();
        for (&n, &lam) in self.indices.iter().zip(&self.lambdas) {
            if n == 0 {
                roots.push((cr(T::zero()), 2));
            } else {
                roots.push((cx(T::zero(), lam), 1));
                roots.push((cx(T::zero(), -lam), 1));
            }
        }
        CharacteristicSpec::from_roots(roots)
    }

    pub fn eval(&self, t: T) -> T {
        let half = T::lit(0.5);
        let mut acc = T::zero();
        for ((&n, &lam), &den) in self.indices.iter().zip(&self.lambdas).zip(&self.denominators) {
            let num = if n == 0 {
                (self.b - t) * (t - self.a)
            } else {
                (lam * (self.b - t) * half).sin() * (lam * (t - self.a) * half).sin()
            };
            acc = acc + num / den;
        }
        acc
    }

    pub fn derivative(&self, t: T) -> T {
        let half = T::lit(0.5);
        let mut acc = T::zero();
        for ((&n, &lam), &den) in self.indices.iter().zip(&self.lambdas).zip(&self.denominators) {
            let s = self.a + self.b - t - t;
            let num = if n == 0 { s } else { half * lam * (lam * s * half).sin() };
            acc = acc + num / den;
        }
        acc
    }
}

/// Pointwise evaluation of the multi-index trapezoid kernel.
pub fn trapezoid_kernel_multi<T: Real>(a: T, b: T, indices: &[usize], t: T) -> Result<T> {
    Ok(TrapezoidKernel::new(a, b, indices)?.eval(t))
}
