use serde::Serialize;

use super::expoly::{ExpPolynomial, Term};
use crate::error::{Error, Result};
use crate::oracle::try_integrate_adaptive;
use crate::scalar::{cr, cx, demote, factorial, Cx, Real};
use crate::smooth::SmoothFunction;

/// Roots closer than `ROOT_SEPARATION · (1 + max|λ|)` are rejected.
pub const ROOT_SEPARATION: f64 = 1e-9;
/// Integration tolerance for Taylor remainder integrals.
pub const TAYLOR_QUAD_TOL: f64 = 1e-12;

/// Characteristic polynomial `Π (λ - λ_i)^{m_i} = Σ c_k λ^k` with `c_n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicSpec<T: Real> {
    roots: Vec<(Cx<T>, usize)>,
    coeffs: Vec<Cx<T>>,
}

impl<T: Real> CharacteristicSpec<T> {
    /// Expands `Π (λ - λ_i)^{m_i}` by repeated convolution.
    pub fn from_roots(roots: Vec<(Cx<T>, usize)>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidInput("root list is empty".into()));
        }
        if let Some((z, _)) = roots.iter().find(|(_, m)| *m == 0) {
            return Err(Error::InvalidInput(format!("root {z} has multiplicity 0")));
        }
        let scale = roots.iter().map(|(z, _)| z.norm()).fold(T::zero(), T::max);
        let sep = T::lit(ROOT_SEPARATION) * (T::one() + scale);
        for (i, (zi, _)) in roots.iter().enumerate() {
            for (zj, _) in roots.iter().skip(i + 1) {
                if zi == zj {
                    return Err(Error::InvalidInput(format!(
                        "duplicate root {zi}; merge multiplicities instead"
                    )));
                }
                if (*zi - *zj).norm() < sep {
                    return Err(Error::NearCoincidentRoots(zi.to_string(), zj.to_string()));
                }
            }
        }
        let mut coeffs = vec![cr(T::one())];
        for (z, m) in &roots {
            for _ in 0..*m {
                // multiply by (λ - z)
                let mut next = vec![cr(T::zero()); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k + 1] = next[k + 1] + *c;
                    next[k] = next[k] - *c * *z;
                }
                coeffs = next;
            }
        }
        Ok(Self { roots, coeffs })
    }

    /// Operator `f^{(n)} - γ f^{(k)}`: zero with multiplicity `k` plus the
    /// simple `(n-k)`-th roots of `γ`. With `γ = 0` all roots merge at zero.
    pub fn zeta(n: usize, k: usize, gamma: T) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidInput(format!("need k < n, got k={k}, n={n}")));
        }
        if gamma == T::zero() {
            return Self::from_roots(vec![(cr(T::zero()), n)]);
        }
        let mut roots = Vec::new();
        if k > 0 {
            roots.push((cr(T::zero()), k));
        }
        roots.extend(gamma_roots(gamma, n - k).into_iter().map(|z| (z, 1)));
        Self::from_roots(roots)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn roots(&self) -> &[(Cx<T>, usize)] {
        &self.roots
    }

    pub fn coeffs(&self) -> &[Cx<T>] {
        &self.coeffs
    }

    /// Largest `|c_k|`.
    pub fn coeff_scale(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    /// Real coefficient vector, available when the root set is closed under
    /// conjugation.
    pub fn operator(&self) -> Result<DiffOperator<T>> {
        let rel = T::lit(1e-10) * (T::one() + self.coeff_scale());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if c.im.abs() <= rel {
                    Ok(c.re)
                } else {
                    Err(Error::ComplexResidue {
                        re: c.re.to_f64_lossy(),
                        im: c.im.to_f64_lossy(),
                    })
                }
            })
            .collect::<Result<Vec<T>>>()?;
        Ok(DiffOperator::new(coeffs))
    }

    /// The solution of `D_c ω = 0`, `ω^{(i)}(0) = δ_{i,n-1}`:
    ///
    /// `ω(t) = Σ_i Σ_j h_{i, m_i-1-j} t^j e^{λ_i t} / j!`, where `h_{i,r}` is the
    /// `r`-th Taylor coefficient at `λ_i` of `1/P_i`, `P_i = Π_{l≠i}(λ-λ_l)^{m_l}`.
    pub fn characteristic_solution(&self) -> Result<ExpPolynomial<T>> {
        let tiny = T::lit(1e-300).max(T::min_positive_value());
        let mut terms = Vec::new();
        for (i, &(lambda_i, m_i)) in self.roots.iter().enumerate() {
            // Taylor coefficients of P_i about λ_i, truncated at degree m_i - 1:
            // P_i(λ_i + z) = Π_{l≠i} (z + (λ_i - λ_l))^{m_l}
            let mut p = vec![cr(T::zero()); m_i];
            p[0] = cr(T::one());
            for (l, &(lambda_l, m_l)) in self.roots.iter().enumerate() {
                if l == i {
                    continue;
                }
                let d = lambda_i - lambda_l;
                for _ in 0..m_l {
                    for r in (0..m_i).rev() {
                        let lower = if r > 0 { p[r - 1] } else { cr(T::zero()) };
                        p[r] = p[r] * d + lower;
                    }
                }
            }
            if p[0].norm() < tiny {
                return Err(Error::NearCoincidentRoots(
                    lambda_i.to_string(),
                    "neighbouring root".into(),
                ));
            }
            // reciprocal series: h_0 = 1/p_0, h_r = -(Σ_{s=1}^{r} p_s h_{r-s}) / p_0
            let inv0 = p[0].inv();
            let mut h = vec![cr(T::zero()); m_i];
            h[0] = inv0;
            for r in 1..m_i {
                let mut acc = cr(T::zero());
                for s in 1..=r {
                    acc = acc + p[s] * h[r - s];
                }
                h[r] = -acc * inv0;
            }
            for j in 0..m_i {
                let c = h[m_i - 1 - j] / factorial::<T>(j);
                terms.push(Term::new(lambda_i, j, c));
            }
        }
        Ok(ExpPolynomial::new(terms))
    }

    /// `D_c(f)(t)`.
    pub fn apply(&self, f: &SmoothFunction<T>, t: T) -> Result<T> {
        self.operator()?.apply(f, t)
    }

    /// Splits `f(x)` into the `ω_c`-polynomial part anchored at `a` and the
    /// remainder `∫_a^x D_c(f)(t) ω_c(x - t) dt` (computed by quadrature).
    pub fn taylor_expansion(&self, f: &SmoothFunction<T>, a: T, x: T) -> Result<TaylorSplit<T>> {
        let n = self.order();
        check_order(f, n)?;
        let omega = self.characteristic_solution()?;
        let op = self.operator()?;
        let h = x - a;
        let mut poly = cr(T::zero());
        for j in 0..n {
            let fj = f.derivative(j, a)?;
            let mut inner = cr(T::zero());
            for i in 0..n - j {
                inner = inner + self.coeffs[i + j + 1] * omega.eval_derivative(i, h);
            }
            poly = poly + inner * fj;
        }
        let polynomial_part = demote(poly, T::lit(1e-10))?;
        let remainder = try_integrate_adaptive(
            |t| Ok(op.apply(f, t)? * omega.eval_real(x - t)?),
            a,
            x,
            T::lit(TAYLOR_QUAD_TOL),
            &[],
        )?
        .value;
        Ok(TaylorSplit {
            polynomial_part,
            remainder_integral: remainder,
        })
    }
}

/// The `m` complex `m`-th roots of a nonzero real `γ`, principal root first
/// (smallest argument in `[0, 2π)`).
pub fn gamma_roots<T: Real>(gamma: T, m: usize) -> Vec<Cx<T>> {
    let arg = if gamma < T::zero() { T::PI() } else { T::zero() };
    let radius = gamma.abs().powf(T::one() / T::of(m));
    (0..m)
        .map(|j| {
            let theta = (arg + T::lit(2.0) * T::PI() * T::of(j)) / T::of(m);
            let z = Cx::from_polar(radius, theta);
            // snap rounding noise so conjugate pairs stay exact
            let snap = |v: T| {
                if v.abs() <= T::lit(1e-15) * radius {
                    T::zero()
                } else {
                    v
                }
            };
            cx(snap(z.re), snap(z.im))
        })
        .collect()
}

pub(crate) fn check_order<T: Real>(f: &SmoothFunction<T>, n: usize) -> Result<()> {
    if f.max_order() < n {
        Err(Error::Order {
            required: n,
            available: f.max_order(),
        })
    } else {
        Ok(())
    }
}

/// Real constant-coefficient operator `Σ c_k f^{(k)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffOperator<T> {
    coeffs: Vec<T>,
}

impl<T: Real> DiffOperator<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn apply(&self, f: &SmoothFunction<T>, t: T) -> Result<T> {
        check_order(f, self.order())?;
        let mut acc = T::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != T::zero() {
                acc = acc + *c * f.derivative(k, t)?;
            }
        }
        Ok(acc)
    }
}

/// Result of a generalized Taylor split `f(x) = polynomial_part + remainder_integral`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorSplit<T> {
    pub polynomial_part: T,
    pub remainder_integral: T,
}

impl<T: Real> TaylorSplit<T> {
    pub fn total(&self) -> T {
        self.polynomial_part + self.remainder_integral
    }
}
