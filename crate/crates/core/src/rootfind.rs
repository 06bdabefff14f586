//! Fixed points of `tan`, first roots on either side of zero, and mean-value points.

use serde::Serialize;

use crate::charode::{check_order, CharacteristicSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::smooth::SmoothFunction;

/// Grid resolution used by [`find_mean_value_point`].
pub const MEAN_VALUE_GRID: usize = 1024;

/// The fixed point `τ_n` of `tan` in `((n - ½)π, (n + ½)π)`.
///
/// Solves `x cos x - sin x = 0` on `(nπ, (n + ½)π)`, where it has a single
/// sign change and no poles, by bisection followed by bracketed Newton steps.
pub fn tan_fixed_point<T: Real>(n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    let g = |x: T| x * x.cos() - x.sin();
    let dg = |x: T| -x * x.sin();
    let mut lo = T::of(n) * T::PI();
    let mut hi = lo + T::FRAC_PI_2();
    let g_lo = g(lo);
    for _ in 0..40 {
        let mid = T::lit(0.5) * (lo + hi);
        if (g(mid) > T::zero()) == (g_lo > T::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = T::lit(0.5) * (lo + hi);
    for _ in 0..20 {
        let next = x - g(x) / dg(x);
        if !(next > lo && next < hi) {
            break;
        }
        let done = (next - x).abs() <= T::epsilon() * next.abs();
        x = next;
        if done {
            break;
        }
    }
    x
}

/// Scans `t = step, 2·step, …, limit` for the first root of `h`: a strict sign
/// change, which is then bisected, or a local minimum of `|h|` below `tol`.
/// Returns `+∞` when none is found.
pub fn rho_plus<T: Real, F: Fn(T) -> T>(h: F, step: T, limit: T, tol: T) -> T {
    first_root(&h, step, limit, tol).unwrap_or_else(T::infinity)
}

/// Mirror of [`rho_plus`] on the negative axis; returns `-∞` when no root is found.
pub fn rho_minus<T: Real, F: Fn(T) -> T>(h: F, step: T, limit: T, tol: T) -> T {
    first_root(&|t: T| h(-t), step, limit, tol).map_or_else(T::neg_infinity, |r| -r)
}

fn first_root<T: Real, F: Fn(T) -> T>(h: &F, step: T, limit: T, tol: T) -> Option<T> {
    if !(step > T::zero()) || !(limit > T::zero()) {
        return None;
    }
    let count = (limit / step).ceil().to_f64_lossy().min(1e8) as usize;
    let at = |i: usize| (T::of(i) * step).min(limit);
    let mut prev = h(T::zero());
    let mut cur = h(at(1));
    for i in 1..=count {
        let t = at(i);
        if cur == T::zero() {
            return Some(t);
        }
        if prev * cur < T::zero() {
            return Some(bisect(h, at(i - 1), t, prev));
        }
        let next = if i < count { h(at(i + 1)) } else { cur };
        if cur.abs() < tol && cur.abs() <= prev.abs() && cur.abs() <= next.abs() && i < count {
            return Some(golden_min(|x| h(x).abs(), at(i - 1), at(i + 1)));
        }
        prev = cur;
        cur = next;
    }
    None
}

/// Bisection on a bracket with `sign(h(lo)) = sign(f_lo)` to machine resolution.
pub(crate) fn bisect<T: Real, F: Fn(T) -> T>(h: &F, mut lo: T, mut hi: T, f_lo: T) -> T {
    let positive = f_lo > T::zero();
    for _ in 0..200 {
        let mid = T::lit(0.5) * (lo + hi);
        if !(mid > lo.min(hi) && mid < lo.max(hi)) {
            break;
        }
        let v = h(mid);
        if v == T::zero() {
            return mid;
        }
        if (v > T::zero()) == positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    T::lit(0.5) * (lo + hi)
}

/// Golden-section minimisation of a unimodal function on `[lo, hi]`.
pub(crate) fn golden_min<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T) -> T {
    let r = T::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (hi - lo).abs() <= T::epsilon() * (T::one() + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    T::lit(0.5) * (lo + hi)
}

/// Outcome of a mean-value search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanValuePoint<T> {
    pub xi: T,
    /// `R = f(x) - polynomial part`.
    pub remainder: T,
    /// `W = ∫_0^{x-a} ω_c`.
    pub omega_integral: T,
    /// `|D_c(f)(ξ)·W - R|`.
    pub residual: T,
}

/// Finds the leftmost `ξ` between `a` and `x` with `R = D_c(f)(ξ)·∫_0^{x-a} ω_c`,
/// valid while `ω_c` has no root strictly between `0` and `x - a`.
pub fn find_mean_value_point<T: Real>(
    spec: &CharacteristicSpec<T>,
    f: &SmoothFunction<T>,
    a: T,
    x: T,
) -> Result<MeanValuePoint<T>> {
    let n = spec.order();
    check_order(f, n)?;
    if a == x {
        return Err(Error::Domain("a and x coincide".into()));
    }
    let omega = spec.characteristic_solution()?;
    let op = spec.operator()?;
    let h = x - a;
    let len = h.abs();
    let w_real = |t: T| omega.eval(t).re;
    let step = len / T::of(MEAN_VALUE_GRID);
    let window_tol = T::lit(1e-13) * (T::one() + omega.max_coeff());
    let root = if h > T::zero() {
        rho_plus(w_real, step, len, window_tol)
    } else {
        -rho_minus(w_real, step, len, window_tol)
    };
    if root < len * (T::one() - T::lit(1e-9)) {
        return Err(Error::Domain(format!(
            "omega has a root at distance {root} inside the window of length {len}"
        )));
    }

    let w = omega.antiderivative().eval_real(h)?;
    let fx = f.value(x)?;
    let mut poly = T::zero();
    for j in 0..n {
        let mut inner = T::zero();
        for i in 0..n - j {
            inner = inner + spec.coeffs()[i + j + 1].re * omega.eval_derivative(i, h).re;
        }
        poly = poly + f.derivative(j, a)? * inner;
    }
    let r = fx - poly;
    let res_tol = T::lit(1e-10) * (T::one() + r.abs());
    let phi = |xi: T| -> Result<T> { Ok(op.apply(f, xi)? * w - r) };

    if w.abs() <= T::min_positive_value() {
        if r.abs() <= res_tol {
            return Ok(finish((a + x) * T::lit(0.5), r, w, T::zero()));
        }
        return Err(Error::Degenerate(format!("omega integral vanishes while R = {r}")));
    }

    let (lo, hi) = if a < x { (a, x) } else { (x, a) };
    let mid = T::lit(0.5) * (lo + hi);
    let (p_lo, p_mid, p_hi) = (phi(lo)?, phi(mid)?, phi(hi)?);
    if p_lo.abs() <= res_tol && p_mid.abs() <= res_tol && p_hi.abs() <= res_tol {
        return Ok(finish(mid, r, w, p_mid.abs()));
    }

    let grid = MEAN_VALUE_GRID;
    let node = |i: usize| lo + (hi - lo) * T::of(i) / T::of(grid);
    let mut prev = p_lo;
    let mut near: Option<(usize, T)> = None;
    for i in 1..=grid {
        let t = node(i);
        let cur = phi(t)?;
        if prev * cur < T::zero() {
            let g = |s: T| phi(s).unwrap_or(T::nan());
            let xi = bisect(&g, node(i - 1), t, prev);
            let residual = phi(xi)?.abs();
            return Ok(finish(xi, r, w, residual));
        }
        if i < grid && cur.abs() <= res_tol && near.is_none() {
            near = Some((i, cur));
        }
        prev = cur;
    }
    if let Some((i, _)) = near {
        let g = |s: T| phi(s).map(|v| v.abs()).unwrap_or(T::infinity());
        let xi = golden_min(g, node(i - 1), node(i + 1));
        let residual = phi(xi)?.abs();
        if residual <= res_tol && xi > lo && xi < hi {
            return Ok(finish(xi, r, w, residual));
        }
    }
    Err(Error::Accuracy(format!(
        "no mean-value point found between {a} and {x} (R = {r}, W = {w})"
    )))
}

fn finish<T: Real>(xi: T, remainder: T, omega_integral: T, residual: T) -> MeanValuePoint<T> {
    MeanValuePoint {
        xi,
        remainder,
        omega_integral,
        residual,
    }
}

/// `t / sinh t < 1 < t coth t` for `t > 0`.
pub fn hyperbolic_inequality_holds<T: Real>(t: T) -> bool {
    t > T::zero() && t / t.sinh() < T::one() && T::one() < t / t.tanh()
}

/// `t cot t < 1 < t / sin t` for `t ∈ (0, π)`.
pub fn trigonometric_inequality_holds<T: Real>(t: T) -> bool {
    t > T::zero() && t < T::PI() && t / t.tan() < T::one() && T::one() < t / t.sin()
}
