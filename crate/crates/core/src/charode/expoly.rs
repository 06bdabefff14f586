//! Exponential polynomials `Σ c · t^j · e^{λ t}` with complex `λ` and `c`.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, cpowu, cr, cx, demote, falling, powu, Cx, Real};

/// Relative imaginary residue tolerated when an exponential polynomial is read
/// as a real function.
pub const DEMOTION_TOL: f64 = 1e-10;

/// One term `coeff · t^power · e^{lambda t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term<T> {
    pub lambda: Cx<T>,
    pub power: usize,
    pub coeff: Cx<T>,
}

impl<T: Real> Term<T> {
    pub fn new(lambda: Cx<T>, power: usize, coeff: Cx<T>) -> Self {
        Self { lambda, power, coeff }
    }

    fn eval(&self, t: T) -> Cx<T> {
        self.coeff * (self.lambda * t).exp() * powu(t, self.power)
    }

    /// `d^k/dt^k [t^j e^{λt}] = Σ_i C(k,i) j!/(j-i)! t^{j-i} λ^{k-i} e^{λt}`.
    fn eval_derivative(&self, k: usize, t: T) -> Cx<T> {
        let j = self.power;
        let mut acc = cr(T::zero());
        for i in 0..=k.min(j) {
            let scalar = binomial::<T>(k, i) * falling::<T>(j, i) * powu(t, j - i);
            acc = acc + cpowu(self.lambda, k - i) * scalar;
        }
        self.coeff * acc * (self.lambda * t).exp()
    }
}

/// Finite sum of exponential monomials kept in canonical merged form: no two
/// terms share the same `(λ, j)` pair and no stored coefficient is exactly zero.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(
    into = "Vec<TermRecord<T>>",
    from = "Vec<TermRecord<T>>",
    bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct ExpPolynomial<T: Real> {
    terms: Vec<Term<T>>,
}

impl<T: Real> ExpPolynomial<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// Builds a canonical exponential polynomial, merging duplicate `(λ, j)` pairs.
    pub fn new(terms: impl IntoIterator<Item = Term<T>>) -> Self {
        let mut out: Vec<Term<T>> = Vec::new();
        for term in terms {
            match out
                .iter_mut()
                .find(|t| t.lambda == term.lambda && t.power == term.power)
            {
                Some(existing) => existing.coeff = existing.coeff + term.coeff,
                None => out.push(term),
            }
        }
        out.retain(|t| t.coeff != cr(T::zero()));
        Self { terms: out }
    }

    /// `coeff · t^power · e^{λ t}` as a one-term polynomial.
    pub fn monomial(lambda: Cx<T>, power: usize, coeff: Cx<T>) -> Self {
        Self::new([Term::new(lambda, power, coeff)])
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus, zero for the empty sum.
    pub fn max_coeff(&self) -> T {
        self.terms.iter().map(|t| t.coeff.norm()).fold(T::zero(), T::max)
    }

    pub fn eval(&self, t: T) -> Cx<T> {
        self.terms.iter().fold(cr(T::zero()), |acc, term| acc + term.eval(t))
    }

    /// Real value at `t`, failing when the imaginary part is not negligible.
    pub fn eval_real(&self, t: T) -> Result<T> {
        demote(self.eval(t), T::lit(DEMOTION_TOL))
    }

    /// `p^{(k)}(t)` without materialising the derivative polynomial.
    pub fn eval_derivative(&self, k: usize, t: T) -> Cx<T> {
        self.terms
            .iter()
            .fold(cr(T::zero()), |acc, term| acc + term.eval_derivative(k, t))
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for term in &self.terms {
            if term.power > 0 {
                out.push(Term::new(term.lambda, term.power - 1, term.coeff * T::of(term.power)));
            }
            out.push(Term::new(term.lambda, term.power, term.coeff * term.lambda));
        }
        Self::new(out)
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative normalised to vanish at `t = 0`.
    pub fn antiderivative(&self) -> Self {
        let zero = cr(T::zero());
        let mut out = Vec::new();
        for term in &self.terms {
            let j = term.power;
            if term.lambda == zero {
                out.push(Term::new(zero, j + 1, term.coeff / T::of(j + 1)));
                continue;
            }
            // e^{λt} Σ_i (-1)^i j!/(j-i)! t^{j-i} / λ^{i+1}
            let inv = term.lambda.inv();
            let mut inv_pow = inv;
            for i in 0..=j {
                let sign = if i % 2 == 0 { T::one() } else { -T::one() };
                let c = term.coeff * inv_pow * (sign * falling::<T>(j, i));
                out.push(Term::new(term.lambda, j - i, c));
                if i == j {
                    // value at t = 0 comes from the t^0 piece only
                    out.push(Term::new(zero, 0, -c));
                }
                inv_pow = inv_pow * inv;
            }
        }
        Self::new(out)
    }

    /// The polynomial `t ↦ p(t - s)`.
    pub fn shift(&self, s: T) -> Self {
        let mut out = Vec::new();
        for term in &self.terms {
            let base = term.coeff * (-(term.lambda * s)).exp();
            for i in 0..=term.power {
                let c = binomial::<T>(term.power, i) * powu(-s, term.power - i);
                out.push(Term::new(term.lambda, i, base * c));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: Cx<T>) -> Self {
        Self::new(self.terms.iter().map(|t| Term::new(t.lambda, t.power, t.coeff * c)))
    }

    /// True when every coefficient modulus is at most `tol`.
    pub fn is_negligible(&self, tol: T) -> bool {
        self.terms.iter().all(|t| t.coeff.norm() <= tol)
    }
}

impl<T: Real> Add for ExpPolynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.terms.into_iter().chain(rhs.terms))
    }
}

impl<T: Real> Mul<Cx<T>> for ExpPolynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Cx<T>) -> Self {
        self.scale(rhs)
    }
}

/// Flat JSON record for one term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRecord<T> {
    pub re_lambda: T,
    pub im_lambda: T,
    pub j: usize,
    pub re_c: T,
    pub im_c: T,
}

impl<T: Real> From<ExpPolynomial<T>> for Vec<TermRecord<T>> {
    fn from(p: ExpPolynomial<T>) -> Self {
        p.terms
            .into_iter()
            .map(|t| TermRecord {
                re_lambda: t.lambda.re,
                im_lambda: t.lambda.im,
                j: t.power,
                re_c: t.coeff.re,
                im_c: t.coeff.im,
            })
            .collect()
    }
}

impl<T: Real> From<Vec<TermRecord<T>>> for ExpPolynomial<T> {
    fn from(records: Vec<TermRecord<T>>) -> Self {
        ExpPolynomial::new(
            records
                .into_iter()
                .map(|r| Term::new(cx(r.re_lambda, r.im_lambda), r.j, cx(r.re_c, r.im_c))),
        )
    }
}

impl<T: Real> ExpPolynomial<T> {
    /// Parses the JSON term-list representation.
    pub fn from_json(s: &str) -> Result<Self>
    where
        T: for<'de> Deserialize<'de>,
    {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn to_json(&self) -> String
    where
        T: Serialize,
    {
        serde_json::to_string(self).expect("term list serialises")
    }
}
