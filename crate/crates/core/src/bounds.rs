//! Kernel norms and Hölder-type error bounds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::charode::check_order;
use crate::error::{Error, Result};
use crate::format::g17;
use crate::kernels::{simpson_constants, Factorization, SimpsonParam};
use crate::oracle::try_integrate_adaptive;
use crate::rootfind::{bisect, golden_min, tan_fixed_point};
use crate::scalar::Real;
use crate::smooth::SmoothFunction;

/// Scan points per subinterval for sup norms and sign-change detection.
pub const SCAN_POINTS: usize = 2049;
/// Relative integration tolerance for `q ∈ {1, 2}` norms.
pub const NORM_TOL: f64 = 1e-11;
/// Relative slack in the `holds` test.
pub const HOLDS_SLACK: f64 = 1e-10;
/// Grid size of [`sign_inequality_check`].
pub const SIGN_GRID: usize = 513;

/// Exponent of an `L^p` norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Exponent {
    One,
    Two,
    Inf,
}

impl Exponent {
    /// `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::One => Exponent::Inf,
            Exponent::Two => Exponent::Two,
            Exponent::Inf => Exponent::One,
        }
    }

    /// `1/p`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Two => 0.5,
            Exponent::Inf => 0.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exponent::One => "1",
            Exponent::Two => "2",
            Exponent::Inf => "inf",
        })
    }
}

impl FromStr for Exponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" => Ok(Exponent::One),
            "2" => Ok(Exponent::Two),
            "inf" | "infinity" | "∞" => Ok(Exponent::Inf),
            other => Err(Error::InvalidInput(format!(
                "exponent must be 1, 2 or inf, got {other:?}"
            ))),
        }
    }
}

impl From<Exponent> for String {
    fn from(p: Exponent) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Exponent {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Location and value of `max |h|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNorm<T> {
    pub value: T,
    pub argmax: T,
}

fn cuts<T: Real>(a: T, b: T, breakpoints: &[T]) -> Vec<T> {
    let mut edges: Vec<T> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    edges.push(a);
    edges.push(b);
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    edges.dedup();
    edges
}

fn grid<T: Real>(lo: T, hi: T, i: usize) -> T {
    let n = T::of(SCAN_POINTS - 1);
    if i == SCAN_POINTS - 1 {
        hi
    } else {
        lo + (hi - lo) * T::of(i) / n
    }
}

/// `‖h‖_∞` on `[a, b]`: a scan of every subinterval followed by refinement of
/// each local maximum of `|h|`, by bisection on `sign(h)·h'` when a derivative
/// is supplied and by golden-section search otherwise.
pub fn sup_norm<T: Real>(
    h: &dyn Fn(T) -> Result<T>,
    dh: Option<&dyn Fn(T) -> Result<T>>,
    a: T,
    b: T,
    breakpoints: &[T],
) -> Result<SupNorm<T>> {
    let mut best = SupNorm {
        value: T::zero(),
        argmax: a,
    };
    let edges = cuts(a, b, breakpoints);
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let vals: Vec<T> = (0..SCAN_POINTS)
            .map(|i| h(grid(lo, hi, i)).map(|v| v.abs()))
            .collect::<Result<_>>()?;
        for i in 0..SCAN_POINTS {
            let left = if i > 0 { vals[i - 1] } else { T::neg_infinity() };
            let right = if i + 1 < SCAN_POINTS {
                vals[i + 1]
            } else {
                T::neg_infinity()
            };
            if vals[i] < left || vals[i] < right {
                continue;
            }
            let mut cand = SupNorm {
                value: vals[i],
                argmax: grid(lo, hi, i),
            };
            if i > 0 && i + 1 < SCAN_POINTS {
                let (x0, x1) = (grid(lo, hi, i - 1), grid(lo, hi, i + 1));
                let t = refine_max(h, dh, x0, x1, cand.argmax)?;
                let v = h(t)?.abs();
                if v >= cand.value {
                    cand = SupNorm { value: v, argmax: t };
                }
            }
            if cand.value > best.value {
                best = cand;
            }
        }
    }
    Ok(best)
}

fn refine_max<T: Real>(
    h: &dyn Fn(T) -> Result<T>,
    dh: Option<&dyn Fn(T) -> Result<T>>,
    x0: T,
    x1: T,
    seed: T,
) -> Result<T> {
    let sign = if h(seed)? < T::zero() { -T::one() } else { T::one() };
    if let Some(d) = dh {
        if let (Ok(d0), Ok(d1)) = (d(x0), d(x1)) {
            let (s0, s1) = (sign * d0, sign * d1);
            if s0 >= T::zero() && s1 <= T::zero() && s0 != s1 {
                if s0 == T::zero() {
                    return Ok(x0);
                }
                let g = |t: T| d(t).map(|v| sign * v).unwrap_or(T::nan());
                return Ok(bisect(&g, x0, x1, s0));
            }
        }
    }
    Ok(golden_min(|t| h(t).map(|v| -v.abs()).unwrap_or(T::infinity()), x0, x1))
}

/// `‖h‖_q` on `[a, b]`, integrating piecewise between the breakpoints. For
/// `q = 1` sign changes found on the scan grid are added as further breakpoints.
pub fn norm_on_interval<T: Real>(h: &dyn Fn(T) -> Result<T>, a: T, b: T, q: Exponent, breakpoints: &[T]) -> Result<T> {
    if !(a < b) {
        return Err(Error::InvalidInput(format!("need a < b, got [{a}, {b}]")));
    }
    match q {
        Exponent::Inf => Ok(sup_norm(h, None, a, b, breakpoints)?.value),
        Exponent::One | Exponent::Two => {
            let mut pts = cuts(a, b, breakpoints);
            let mut scale = T::zero();
            let mut extra = Vec::new();
            for w in pts.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let mut prev = h(lo)?;
                scale = scale.max(prev.abs());
                for i in 1..SCAN_POINTS {
                    let t = grid(lo, hi, i);
                    let cur = h(t)?;
                    scale = scale.max(cur.abs());
                    if q == Exponent::One && prev * cur < T::zero() {
                        let g = |s: T| h(s).unwrap_or(T::nan());
                        extra.push(bisect(&g, grid(lo, hi, i - 1), t, prev));
                    }
                    prev = cur;
                }
            }
            if scale == T::zero() {
                return Ok(T::zero());
            }
            pts.extend(extra);
            let pts = cuts(a, b, &pts);
            let power = |v: T| match q {
                Exponent::Two => v * v / (scale * scale),
                _ => v.abs() / scale,
            };
            let inner: Vec<T> = pts[1..pts.len() - 1].to_vec();
            let r =
                try_integrate_adaptive(|t| h(t).map(power), a, b, T::lit(NORM_TOL), &inner).map_err(|e| match e {
                    Error::NonConvergence { .. } => Error::Accuracy(e.to_string()),
                    other => other,
                })?;
            Ok(match q {
                Exponent::Two => r.value.sqrt() * scale,
                _ => r.value * scale,
            })
        }
    }
}

/// Outcome of a Hölder bound `|A_μ(f)| ≤ ‖D f‖_p ‖g‖_q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub rule: String,
    pub f: String,
    pub p: Exponent,
    pub q: Exponent,
    #[serde(rename = "value")]
    pub functional_value: T,
    #[serde(rename = "deriv_norm")]
    pub derivative_norm: T,
    pub kernel_norm: T,
    pub bound: T,
    pub holds: bool,
}

impl<T: Real> BoundReport<T> {
    pub fn new(
        rule: impl Into<String>,
        f: impl Into<String>,
        p: Exponent,
        functional_value: T,
        derivative_norm: T,
        kernel_norm: T,
    ) -> Self {
        let bound = derivative_norm * kernel_norm;
        Self {
            rule: rule.into(),
            f: f.into(),
            p,
            q: p.conjugate(),
            functional_value,
            derivative_norm,
            kernel_norm,
            bound,
            holds: functional_value.abs() <= bound * (T::one() + T::lit(HOLDS_SLACK)),
        }
    }

    /// `|value| / bound`.
    pub fn ratio(&self) -> T {
        self.functional_value.abs() / self.bound
    }

    pub const CSV_HEADER: &'static str = "rule,p,q,value,deriv_norm,kernel_norm,bound,holds";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.rule,
            self.p,
            self.q,
            g17(self.functional_value.to_f64_lossy()),
            g17(self.derivative_norm.to_f64_lossy()),
            g17(self.kernel_norm.to_f64_lossy()),
            g17(self.bound.to_f64_lossy()),
            self.holds
        )
    }

    pub fn to_json(&self) -> String
    where
        T: Serialize,
    {
        serde_json::to_string(self).expect("report serialises")
    }
}

/// `‖D f‖_p`, `‖g‖_q` and `A_μ(f)` for a factorization.
pub fn holder_bound<T: Real>(fact: &Factorization<T>, f: &SmoothFunction<T>, p: Exponent) -> Result<BoundReport<T>> {
    check_order(f, fact.operator().order())?;
    let (a, b) = (fact.a(), fact.b());
    let value = fact.functional(f)?;
    let df = |t: T| fact.apply_operator(f, t);
    let deriv = norm_on_interval(&df, a, b, p, &[])?;
    let kernel_norm = kernel_norm(fact, p.conjugate())?;
    Ok(BoundReport::new(fact.label(), f.label(), p, value, deriv, kernel_norm))
}

/// `‖g‖_q` of a factorization kernel.
pub fn kernel_norm<T: Real>(fact: &Factorization<T>, q: Exponent) -> Result<T> {
    let g = |t: T| fact.kernel(t);
    let breaks = fact.breakpoints();
    match q {
        Exponent::Inf => Ok(kernel_sup(fact)?.value),
        _ => norm_on_interval(&g, fact.a(), fact.b(), q, &breaks),
    }
}

/// `max |g|` with its location.
pub fn kernel_sup<T: Real>(fact: &Factorization<T>) -> Result<SupNorm<T>> {
    let g = |t: T| fact.kernel(t);
    let dg = |t: T| fact.kernel_derivative(t);
    sup_norm(&g, Some(&dg), fact.a(), fact.b(), &fact.breakpoints())
}

/// Sign predicted from the signs of `g` and `D f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignVerdict {
    Nonnegative,
    Nonpositive,
    Inconclusive,
}

/// A sign verdict and whether the computed functional value agrees with it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignCheck<T> {
    pub verdict: SignVerdict,
    pub value: T,
    pub consistent: bool,
}

fn sign_of<T: Real>(samples: &[T]) -> Option<T> {
    let scale = samples.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let floor = T::lit(1e-14) * scale;
    if samples.iter().all(|&v| v >= -floor) {
        Some(T::one())
    } else if samples.iter().all(|&v| v <= floor) {
        Some(-T::one())
    } else {
        None
    }
}

/// Predicts the sign of `A_μ(f)` when `g` and `D f` are both one-signed on
/// a grid of [`SIGN_GRID`] points and checks it against the computed value.
pub fn sign_inequality_check<T: Real>(fact: &Factorization<T>, f: &SmoothFunction<T>) -> Result<SignCheck<T>> {
    check_order(f, fact.operator().order())?;
    let (a, b) = (fact.a(), fact.b());
    let node = |i: usize| a + (b - a) * T::of(i) / T::of(SIGN_GRID - 1);
    let mut gs = Vec::with_capacity(SIGN_GRID);
    let mut ds = Vec::with_capacity(SIGN_GRID);
    for i in 0..SIGN_GRID {
        let t = if i == SIGN_GRID - 1 { b } else { node(i) };
        gs.push(fact.kernel(t)?);
        ds.push(fact.apply_operator(f, t)?);
    }
    let value = fact.functional(f)?;
    let tiny = T::lit(1e-12);
    let verdict = match (sign_of(&gs), sign_of(&ds)) {
        (Some(s), Some(r)) if s * r > T::zero() => SignVerdict::Nonnegative,
        (Some(_), Some(_)) => SignVerdict::Nonpositive,
        _ => SignVerdict::Inconclusive,
    };
    let consistent = match verdict {
        SignVerdict::Nonnegative => value >= -tiny,
        SignVerdict::Nonpositive => value <= tiny,
        SignVerdict::Inconclusive => true,
    };
    Ok(SignCheck {
        verdict,
        value,
        consistent,
    })
}

/// `(‖g‖_1, ‖g‖_∞)` for the trapezoid kernel with the single index `n`.
pub fn trapezoid_bound_constants<T: Real>(a: T, b: T, n: usize) -> (T, T) {
    let len = b - a;
    if n == 0 {
        return (len * len / T::lit(12.0), len / T::lit(8.0));
    }
    let tau: T = tan_fixed_point(n);
    let nn = T::of(n);
    let l1 = (nn + T::one()) * nn * T::PI() / (T::lit(2.0) * tau * tau * tau) * len * len;
    let linf = (T::one() + tau.cos().abs()) / (T::lit(4.0) * tau * tau.sin().abs()) * len;
    (l1, linf)
}

/// `(‖g_u‖_∞, ‖g_u‖_1)`, the constants paired with `‖D_u f‖_1` and `‖D_u f‖_∞`.
pub fn simpson_bound_constants<T: Real>(a: T, b: T, u: &SimpsonParam<T>) -> (T, T) {
    simpson_constants(a, b, u)
}

/// Classical Simpson remainder against `(b-a)³/1152 ‖f''''‖_1` or `(b-a)⁴/2880 ‖f''''‖_∞`.
pub fn classical_simpson_report<T: Real>(a: T, b: T, f: &SmoothFunction<T>, p: Exponent) -> Result<BoundReport<T>> {
    check_order(f, 4)?;
    let fact = Factorization::simpson_classical(a, b)?;
    let len = b - a;
    let constant = match p {
        Exponent::One => len * len * len / T::lit(1152.0),
        Exponent::Inf => len * len * len * len / T::lit(2880.0),
        Exponent::Two => return Err(Error::InvalidInput("classical Simpson bounds use p = 1 or inf".into())),
    };
    let value = fact.functional(f)?;
    let d4 = |t: T| f.derivative(4, t);
    let deriv = norm_on_interval(&d4, a, b, p, &[])?;
    Ok(BoundReport::new(fact.label(), f.label(), p, value, deriv, constant))
}
