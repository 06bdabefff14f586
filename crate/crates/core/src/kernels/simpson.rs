use serde::{Deserialize, Serialize};

use crate::charode::DiffOperator;
use crate::error::{Error, Result};
use crate::scalar::{cx, demote, factorial, powu, Cx, Real};

/// Below this `|u|` the weights and constants are summed from power series.
pub const SERIES_SWITCH: f64 = 0.5;
const SERIES_TERMS: usize = 40;

/// `u = w + iv` with `w > 0`, `0 < v < π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpsonParam<T> {
    w: T,
    v: T,
}

impl<T: Real> SimpsonParam<T> {
    pub fn new(w: T, v: T) -> Result<Self> {
        if !(w > T::zero()) || !(v > T::zero() && v < T::PI()) || !w.is_finite() {
            return Err(Error::Domain(format!("need w > 0 and 0 < v < pi, got w={w}, v={v}")));
        }
        Ok(Self { w, v })
    }

    pub fn w(&self) -> T {
        self.w
    }

    pub fn v(&self) -> T {
        self.v
    }

    pub fn u(&self) -> Cx<T> {
        cx(self.w, self.v)
    }

    pub fn modulus(&self) -> T {
        self.w.hypot(self.v)
    }

    /// `λ_u = 2u/(b-a)`.
    pub fn lambda(&self, a: T, b: T) -> Cx<T> {
        self.u() * (T::lit(2.0) / (b - a))
    }

    fn use_series(&self) -> bool {
        self.modulus() < T::lit(SERIES_SWITCH)
    }

    /// `f'''' + 8(v²-w²)/(b-a)² f'' + 16(w²+v²)²/(b-a)⁴ f`.
    pub fn operator(&self, a: T, b: T) -> DiffOperator<T> {
        let len2 = (b - a) * (b - a);
        let (w2, v2) = (self.w * self.w, self.v * self.v);
        let r2 = w2 + v2;
        DiffOperator::new(vec![
            T::lit(16.0) * r2 * r2 / (len2 * len2),
            T::zero(),
            T::lit(8.0) * (v2 - w2) / len2,
            T::zero(),
            T::one(),
        ])
    }
}

/// Power sums shared by the small-`|u|` expansions, with `p = u²`, `q = ū²`.
struct Series<T> {
    /// `(p^n - q^n)/(p - q)`.
    d: Vec<T>,
    /// `p^n + q^n`.
    r: Vec<T>,
    inv_fact: Vec<T>,
}

impl<T: Real> Series<T> {
    fn new(u: &SimpsonParam<T>) -> Self {
        let (w2, v2) = (u.w * u.w, u.v * u.v);
        let sum = T::lit(2.0) * (w2 - v2);
        let prod = (w2 + v2) * (w2 + v2);
        let mut d = vec![T::zero(), T::one()];
        let mut r = vec![T::lit(2.0), sum];
        for n in 1..SERIES_TERMS {
            d.push(sum * d[n] - prod * d[n - 1]);
            r.push(sum * r[n] - prod * r[n - 1]);
        }
        let inv_fact = (0..=2 * SERIES_TERMS + 1).map(|m| factorial::<T>(m).recip()).collect();
        Self { d, r, inv_fact }
    }

    fn alpha(&self) -> T {
        let (mut num, mut den) = (T::zero(), T::zero());
        for n in 1..SERIES_TERMS {
            num = num + self.d[n] * self.inv_fact[2 * n + 1];
            den = den + self.d[n] * self.inv_fact[2 * n];
        }
        num / (T::lit(2.0) * den)
    }

    fn alpha_minus_sixth(&self) -> T {
        let (mut num, mut den) = (T::zero(), T::zero());
        for n in 1..SERIES_TERMS {
            den = den + self.d[n] * self.inv_fact[2 * n];
            if n >= 2 {
                num = num + self.d[n] * (T::lit(6.0) * self.inv_fact[2 * n + 1] - T::lit(2.0) * self.inv_fact[2 * n]);
            }
        }
        num / (T::lit(12.0) * den)
    }

    /// `Σ_{n≥from} (R_n/2)(1/(2n+1)! - 2α/(2n)!)`.
    fn tail(&self, alpha: T, from: usize) -> T {
        let half = T::lit(0.5);
        (from..SERIES_TERMS).fold(T::zero(), |acc, n| {
            acc + half * self.r[n] * (self.inv_fact[2 * n + 1] - T::lit(2.0) * alpha * self.inv_fact[2 * n])
        })
    }
}

/// `(α_u, β_u)`: the real solution of `2α cosh(u) + β = sinh(u)/u` and its conjugate.
pub fn simpson_alpha_beta<T: Real>(u: &SimpsonParam<T>) -> (T, T) {
    if u.use_series() {
        let s = Series::new(u);
        let alpha = s.alpha();
        return (alpha, s.tail(alpha, 0));
    }
    let (w, v) = (u.w, u.v);
    let (sw, cw) = (w.sinh(), w.cosh());
    let (sv, cv) = v.sin_cos();
    let two = T::lit(2.0);
    let den = two * (w * w + v * v) * sw * sv;
    let alpha = (w * cw * sv - v * sw * cv) / den;
    let beta = (v * (two * w).sinh() - w * (two * v).sin()) / den;
    (alpha, beta)
}

/// `2α_u + β_u - 1`, accurate for small `|u|`.
pub fn simpson_excess<T: Real>(u: &SimpsonParam<T>) -> T {
    if u.use_series() {
        let s = Series::new(u);
        let alpha = s.alpha();
        let w2v2 = u.w * u.w - u.v * u.v;
        return -w2v2 * s.alpha_minus_sixth() + s.tail(alpha, 2);
    }
    let (alpha, beta) = simpson_alpha_beta(u);
    T::lit(2.0) * alpha + beta - T::one()
}

/// `α_u - 1/6`, accurate for small `|u|`.
pub fn simpson_alpha_defect<T: Real>(u: &SimpsonParam<T>) -> T {
    if u.use_series() {
        return Series::new(u).alpha_minus_sixth();
    }
    simpson_alpha_beta(u).0 - T::lit(1.0 / 6.0)
}

/// `β_u - 2/3`, accurate for small `|u|`.
pub fn simpson_beta_defect<T: Real>(u: &SimpsonParam<T>) -> T {
    // β - 2/3 = (2α + β - 1) - 2(α - 1/6)
    simpson_excess(u) - T::lit(2.0) * simpson_alpha_defect(u)
}

/// `(v sinh w - w sin v)² / (wv sinh w sin v (w²+v²)²)`, which equals
/// `S² wv/(sinh w sin v)` with `S = Σ_{n≥1} (x^n - y^n)/((x-y)(2n+1)!)`, `x = w²`, `y = -v²`.
fn midpoint_ratio<T: Real>(u: &SimpsonParam<T>) -> T {
    let (w, v) = (u.w, u.v);
    if u.use_series() {
        let (x, y) = (w * w, -v * v);
        let mut g = (T::zero(), T::one());
        let mut fact = T::lit(6.0);
        let mut s = T::zero();
        for n in 1..SERIES_TERMS {
            s = s + g.1 / fact;
            g = (g.1, (x + y) * g.1 - x * y * g.0);
            fact = fact * T::of(2 * n + 2) * T::of(2 * n + 3);
        }
        return s * s * w * v / (w.sinh() * v.sin());
    }
    let num = v * w.sinh() - w * v.sin();
    let r2 = w * w + v * v;
    num * num / (r2 * r2 * w * v * w.sinh() * v.sin())
}

/// `(‖g_u‖_∞, ‖g_u‖_1)`: the constants multiplying `‖D_u f‖_1` and `‖D_u f‖_∞`.
pub fn simpson_constants<T: Real>(a: T, b: T, u: &SimpsonParam<T>) -> (T, T) {
    let len = b - a;
    let len3 = len * len * len;
    let r2 = u.w * u.w + u.v * u.v;
    let c_inf = len3 * midpoint_ratio(u) / T::lit(32.0);
    let c_one = len3 * len * simpson_excess(u) / (T::lit(16.0) * r2 * r2);
    (c_inf, c_one)
}

/// Real form of `h_u(s)`.
pub fn simpson_h<T: Real>(u: &SimpsonParam<T>, s: T) -> T {
    let (w, v) = (u.w, u.v);
    let four = T::lit(4.0);
    let t = T::one() - s;
    let (sw, sv) = (w.sinh(), v.sin());
    four * w * w * (t * w).cosh() * sv * (s * v).sin()
        + four * v * v * (t * v).cos() * (s * w).sinh() * sw
        + four * w * v * sv * (s * v).cos() * (t * w).sinh()
        + four * w * v * sw * (s * w).cosh() * (t * v).sin()
        - T::lit(8.0) * w * v * sw * sv
}

/// `v(cot(sv) - cot v) > (1-s)/s > w(coth(sw) - coth w)`.
pub fn cot_chain_holds<T: Real>(w: T, v: T, s: T) -> bool {
    let mid = (T::one() - s) / s;
    let left = v * ((s * v).tan().recip() - v.tan().recip());
    let right = w * ((s * w).tanh().recip() - w.tanh().recip());
    left > mid && mid > right
}

/// Closed-form `g_u` for the Simpson-type remainder on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpsonKernel<T: Real> {
    a: T,
    b: T,
    param: SimpsonParam<T>,
    alpha: T,
    beta: T,
    lambda: Cx<T>,
    /// `1/(λ² - λ̄²)`.
    inv_gap: Cx<T>,
    /// `(λ² + λ̄², |λ|⁴)` when the kernel is summed from its series.
    series: Option<(T, T)>,
}

const KERNEL_DEMOTION: f64 = 1e-11;

impl<T: Real> SimpsonKernel<T> {
    pub fn new(a: T, b: T, param: SimpsonParam<T>) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
        }
        let (alpha, beta) = simpson_alpha_beta(&param);
        let lambda = param.lambda(a, b);
        let gap = lambda * lambda - (lambda * lambda).conj();
        let l2 = lambda * lambda;
        let series = (param.modulus() < T::one()).then(|| (T::lit(2.0) * l2.re, l2.norm_sqr()));
        Ok(Self {
            a,
            b,
            param,
            alpha,
            beta,
            lambda,
            inv_gap: gap.inv(),
            series,
        })
    }

    pub fn param(&self) -> &SimpsonParam<T> {
        &self.param
    }

    pub fn weights(&self) -> (T, T) {
        (self.alpha, self.beta)
    }

    fn pair(&self, z: Cx<T>) -> Result<T> {
        // z + (conjugate-root counterpart), which is conj(z) for real arguments
        demote(z + z.conj(), T::lit(KERNEL_DEMOTION))
    }

    /// `Σ_{m≥1} D_m t^{2m+shift}/(2m+shift)!` with `D_m = (x^m - y^m)/(x - y)`,
    /// `x = λ²`, `y = λ̄²`; `shift = 1, 0, 2` gives `ω`, `ω'`, `∫ω`.
    fn series_sum(&self, (sum, prod): (T, T), t: T, shift: usize) -> T {
        let t2 = t * t;
        let mut d = (T::zero(), T::one());
        let mut term = powu(t, shift + 2) / factorial::<T>(shift + 2);
        let mut acc = T::zero();
        for m in 1..SERIES_TERMS {
            let next = d.1 * term;
            acc = acc + next;
            if m > 2 && next.abs() <= T::epsilon() * T::lit(0.01) * acc.abs() {
                break;
            }
            d = (d.1, sum * d.1 - prod * d.0);
            let e = 2 * m + shift;
            term = term * t2 / (T::of(e + 1) * T::of(e + 2));
        }
        acc
    }

    /// `ω_u(t)`.
    pub fn omega(&self, t: T) -> Result<T> {
        if let Some(c) = self.series {
            return Ok(self.series_sum(c, t, 1));
        }
        let l = self.lambda;
        self.pair((l * t).sinh() / l * self.inv_gap)
    }

    fn omega_prime(&self, t: T) -> Result<T> {
        if let Some(c) = self.series {
            return Ok(self.series_sum(c, t, 0));
        }
        self.pair((self.lambda * t).cosh() * self.inv_gap)
    }

    /// `∫_0^t ω_u`.
    fn omega_integral(&self, t: T) -> Result<T> {
        if let Some(c) = self.series {
            return Ok(self.series_sum(c, t, 2));
        }
        let l2 = self.lambda * self.lambda;
        let c = self.pair(((self.lambda * t).cosh() / l2) * self.inv_gap)?;
        Ok(c + l2.norm_sqr().recip())
    }

    pub fn eval(&self, t: T) -> Result<T> {
        let m = T::lit(0.5) * (self.a + self.b);
        let len = self.b - self.a;
        let mut g = self.alpha * self.omega(self.b - t)? - self.omega_integral(self.b - t)? / len;
        if t <= m {
            g = g + self.beta * self.omega(m - t)?;
        }
        Ok(g)
    }

    pub fn derivative(&self, t: T) -> Result<T> {
        let m = T::lit(0.5) * (self.a + self.b);
        let len = self.b - self.a;
        let mut d = -self.alpha * self.omega_prime(self.b - t)? + self.omega(self.b - t)? / len;
        if t < m {
            d = d - self.beta * self.omega_prime(m - t)?;
        }
        Ok(d)
    }
}

/// Pointwise `g_u(t)`.
pub fn simpson_kernel<T: Real>(a: T, b: T, u: &SimpsonParam<T>, t: T) -> Result<T> {
    SimpsonKernel::new(a, b, *u)?.eval(t)
}
