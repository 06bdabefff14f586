//! Globally adaptive Gauss–Kronrod (7/15) integration with user breakpoints.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Panel cap before giving up.
pub const MAX_PANELS: usize = 1 << 20;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Panel<T> {}
impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.lo.partial_cmp(&self.lo).unwrap_or(Ordering::Equal))
    }
}

/// Applies the 15-point Kronrod rule and its embedded 7-point Gauss rule.
/// Returns the panel and whether its error estimate sits at the rounding floor.
fn gauss_kronrod<T: Real, F>(f: &mut F, lo: T, hi: T) -> Result<(Panel<T>, bool)>
where
    F: FnMut(T) -> Result<T>,
{
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let radius = half * (hi - lo);
    let f_center = f(center)?;
    let mut kronrod = f_center * T::lit(WGK[7]);
    let mut gauss = f_center * T::lit(WG[3]);
    let mut abs_sum = f_center.abs() * T::lit(WGK[7]);
    for (i, &x) in XGK.iter().take(7).enumerate() {
        let dx = radius * T::lit(x);
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kronrod = kronrod + T::lit(WGK[i]) * (f1 + f2);
        abs_sum = abs_sum + T::lit(WGK[i]) * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss = gauss + T::lit(WG[i / 2]) * (f1 + f2);
        }
    }
    let value = kronrod * radius;
    let error = ((kronrod - gauss) * radius).abs();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::Accuracy(format!("non-finite integrand on [{lo}, {hi}]")));
    }
    let floor = T::lit(50.0) * T::epsilon() * abs_sum * radius.abs();
    let at_floor = error <= floor;
    Ok((Panel { lo, hi, value, error }, at_floor))
}

/// Integrates a fallible integrand over `[a, b]`. Panels never straddle the
/// supplied breakpoints; refinement stops once the summed per-panel estimate
/// is at most `tol · (1 + |value|)`.
pub fn try_integrate_adaptive<T, F>(mut f: F, a: T, b: T, tol: T, breakpoints: &[T]) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: T::zero(),
            error_estimate: T::zero(),
            subdivisions: 0,
        });
    }
    if a > b {
        let r = try_integrate_adaptive(f, b, a, tol, breakpoints)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }

    let mut cuts: Vec<T> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    cuts.dedup();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts);
    edges.push(b);

    let mut active = BinaryHeap::new();
    let mut settled = Vec::new();
    let mut running_value = T::zero();
    let mut running_error = T::zero();
    for w in edges.windows(2) {
        let (panel, at_floor) = gauss_kronrod(&mut f, w[0], w[1])?;
        running_value = running_value + panel.value;
        running_error = running_error + panel.error;
        if at_floor {
            settled.push(panel);
        } else {
            active.push(panel);
        }
    }

    loop {
        let count = active.len() + settled.len();
        if running_error <= tol * (T::one() + running_value.abs()) || active.is_empty() {
            let mut all: Vec<Panel<T>> = active.into_vec();
            all.extend(settled);
            all.sort_by(|p, q| p.lo.partial_cmp(&q.lo).unwrap_or(Ordering::Equal));
            let (value, error) = all
                .iter()
                .fold((T::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.error));
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                subdivisions: count,
            });
        }
        if count >= MAX_PANELS {
            return Err(Error::NonConvergence {
                panels: count,
                error_estimate: running_error.to_f64_lossy(),
            });
        }
        let worst = active.pop().expect("non-empty heap");
        let mid = T::lit(0.5) * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // interval exhausted at machine resolution
            settled.push(worst);
            continue;
        }
        running_value = running_value - worst.value;
        running_error = running_error - worst.error;
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let (panel, at_floor) = gauss_kronrod(&mut f, lo, hi)?;
            running_value = running_value + panel.value;
            running_error = running_error + panel.error;
            if at_floor {
                settled.push(panel);
            } else {
                active.push(panel);
            }
        }
    }
}

/// Infallible-integrand convenience wrapper around [`try_integrate_adaptive`].
pub fn integrate_adaptive<T, F>(mut f: F, a: T, b: T, tol: T, breakpoints: &[T]) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    try_integrate_adaptive(|x| Ok(f(x)), a, b, tol, breakpoints)
}
