//! Finite atomic measures plus a constant density, and their spectral functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::try_integrate_adaptive;
use crate::scalar::{binomial, cr, powu, Cx, Real};
use crate::smooth::SmoothFunction;

const SERIES_CAP: usize = 400;

/// Point mass `w · δ_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom<T> {
    pub x: T,
    pub w: T,
}

#[derive(Deserialize)]
struct MeasureRecord<T> {
    a: T,
    b: T,
    #[serde(default)]
    atoms: Vec<Atom<T>>,
    #[serde(default)]
    density: Option<T>,
}

/// `μ = Σ w_i δ_{x_i} + d · dx` on `[a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "MeasureRecord<T>",
    bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct Measure<T: Real> {
    a: T,
    b: T,
    atoms: Vec<Atom<T>>,
    density: T,
}

impl<T: Real> TryFrom<MeasureRecord<T>> for Measure<T> {
    type Error = Error;
    fn try_from(r: MeasureRecord<T>) -> Result<Self> {
        Measure::new(r.a, r.b, r.atoms, r.density.unwrap_or_else(T::zero))
    }
}

impl<T: Real> Measure<T> {
    pub fn new(a: T, b: T, atoms: Vec<Atom<T>>, density: T) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!("need finite a < b, got [{a}, {b}]")));
        }
        if let Some(atom) = atoms.iter().find(|p| !(p.x >= a && p.x <= b) || !p.w.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "atom ({}, {}) outside [{a}, {b}] or not finite",
                atom.x, atom.w
            )));
        }
        if !density.is_finite() {
            return Err(Error::InvalidInput("density must be finite".into()));
        }
        if density == T::zero() && atoms.iter().all(|p| p.w == T::zero()) {
            return Err(Error::InvalidInput("measure is zero".into()));
        }
        Ok(Self { a, b, atoms, density })
    }

    /// Trapezoid remainder `½(δ_a + δ_b) - dx/(b-a)`.
    pub fn trapezoid(a: T, b: T) -> Result<Self> {
        let half = T::lit(0.5);
        Self::new(
            a,
            b,
            vec![Atom { x: a, w: half }, Atom { x: b, w: half }],
            -(b - a).recip(),
        )
    }

    /// Simpson-type remainder `α(δ_a + δ_b) + β δ_{(a+b)/2} - dx/(b-a)`.
    pub fn simpson(a: T, b: T, alpha: T, beta: T) -> Result<Self> {
        let m = T::lit(0.5) * (a + b);
        Self::new(
            a,
            b,
            vec![Atom { x: a, w: alpha }, Atom { x: m, w: beta }, Atom { x: b, w: alpha }],
            -(b - a).recip(),
        )
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn density(&self) -> T {
        self.density
    }

    /// Sorted, deduplicated interior atom locations.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut xs: Vec<T> = self
            .atoms
            .iter()
            .map(|p| p.x)
            .filter(|&x| x > self.a && x < self.b)
            .collect();
        xs.sort_by(|p, q| p.partial_cmp(q).expect("finite atoms"));
        xs.dedup();
        xs
    }

    /// `A_μ(f) = Σ w_i f(x_i) + d ∫_a^b f`.
    pub fn apply_functional(&self, f: &SmoothFunction<T>) -> Result<T> {
        if !f.defined_on(self.a, self.b) {
            return Err(Error::Domain(format!(
                "{} is not defined on [{}, {}]",
                f.label(),
                self.a,
                self.b
            )));
        }
        let mut acc = T::zero();
        for p in &self.atoms {
            acc = acc + p.w * f.value(p.x)?;
        }
        if self.density != T::zero() {
            let integral = match f.integral(self.a, self.b) {
                Some(v) => v,
                None => {
                    let tol = T::lit(1e-13).max(T::lit(100.0) * T::epsilon());
                    try_integrate_adaptive(|x| f.value(x), self.a, self.b, tol, &self.breakpoints())?.value
                }
            };
            acc = acc + self.density * integral;
        }
        Ok(acc)
    }

    /// `S_μ(λ) = ∫ e^{λx} dμ(x)`.
    pub fn spectral(&self, lambda: Cx<T>) -> Cx<T> {
        self.spectral_derivative(lambda, 0)
    }

    /// `S_μ^{(j)}(λ) = ∫ x^j e^{λx} dμ(x)`.
    pub fn spectral_derivative(&self, lambda: Cx<T>, j: usize) -> Cx<T> {
        let (atoms, dens) = self.spectral_parts(lambda, j);
        atoms.into_iter().fold(dens, |acc, z| acc + z)
    }

    fn spectral_parts(&self, lambda: Cx<T>, j: usize) -> (Vec<Cx<T>>, Cx<T>) {
        let atoms = self
            .atoms
            .iter()
            .map(|p| (lambda * p.x).exp() * (p.w * powu(p.x, j)))
            .collect();
        let dens = if self.density == T::zero() {
            cr(T::zero())
        } else {
            moment_integral(self.a, self.b, lambda, j) * self.density
        };
        (atoms, dens)
    }

    /// Order of `λ` as a root of `S_μ`: the first `j ≤ j_max` with
    /// `|S_μ^{(j)}(λ)|` above `tol` times the largest term magnitude seen so far.
    pub fn root_multiplicity(&self, lambda: Cx<T>, tol: T, j_max: usize) -> Result<usize> {
        if !(tol > T::zero()) || j_max < 1 {
            return Err(Error::InvalidInput("need tol > 0 and j_max >= 1".into()));
        }
        let mut scale = T::zero();
        for j in 0..=j_max {
            let (atoms, dens) = self.spectral_parts(lambda, j);
            scale = atoms.iter().fold(scale.max(dens.norm()), |s, z| s.max(z.norm()));
            let total = atoms.into_iter().fold(dens, |acc, z| acc + z);
            if total.norm() > tol * scale {
                return Ok(j);
            }
        }
        Err(Error::MultiplicityUndetermined(j_max))
    }

    /// Whether `λ` is a root of `S_μ` of multiplicity at least `order`.
    pub fn is_root(&self, lambda: Cx<T>, tol: T, order: usize) -> bool {
        match self.root_multiplicity(lambda, tol, order.max(1)) {
            Ok(m) => m >= order,
            Err(Error::MultiplicityUndetermined(_)) => true,
            Err(_) => false,
        }
    }
}

/// `∫_a^b x^j e^{λx} dx`.
pub(crate) fn moment_integral<T: Real>(a: T, b: T, lambda: Cx<T>, j: usize) -> Cx<T> {
    let zero = cr(T::zero());
    if lambda == zero {
        return cr((powu(b, j + 1) - powu(a, j + 1)) / T::of(j + 1));
    }
    let half = T::lit(0.5);
    let h = half * (b - a);
    let c = half * (a + b);
    if lambda.norm() * h < T::of(j + 1) {
        // centred expansion: x = c + s, |s| <= h
        let mut acc = zero;
        for i in 0..=j {
            acc = acc + centred_moment(h, lambda, i) * (binomial::<T>(j, i) * powu(c, j - i));
        }
        return acc * (lambda * c).exp();
    }
    let ea = (lambda * a).exp();
    let eb = (lambda * b).exp();
    let inv = lambda.inv();
    let mut acc = (eb - ea) * inv;
    for k in 1..=j {
        acc = (eb * powu(b, k) - ea * powu(a, k) - acc * T::of(k)) * inv;
    }
    acc
}

/// `∫_{-h}^{h} s^i e^{λs} ds = Σ_m λ^m/m! ∫ s^{i+m} ds`, only even powers survive.
fn centred_moment<T: Real>(h: T, lambda: Cx<T>, i: usize) -> Cx<T> {
    let two = T::lit(2.0);
    let mut acc = cr(T::zero());
    let mut lam_pow = cr(T::one());
    let mut fact = T::one();
    for m in 0..SERIES_CAP {
        if m > 0 {
            lam_pow = lam_pow * lambda;
            fact = fact * T::of(m);
        }
        if (i + m) % 2 == 1 {
            continue;
        }
        let e = i + m + 1;
        let term = lam_pow * (two * powu(h, e) / (T::of(e) * fact));
        acc = acc + term;
        if m > i + 2 && term.norm() <= T::epsilon() * T::lit(0.01) * acc.norm() {
            break;
        }
    }
    acc
}
