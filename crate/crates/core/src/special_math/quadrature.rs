//! Adaptive Gauss–Kronrod quadrature over `[0, ∞)`.
//!
//! The half line is mapped onto `[0, 1)` by `x = t / (1 - t)`, and the
//! transformed integrand `f(t / (1 - t)) / (1 - t)^2` is integrated with a
//! globally adaptive 7/15-point Gauss–Kronrod rule. Kronrod nodes are interior,
//! so the singular endpoint `t = 1` is never evaluated.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::special_math::Tolerance;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<G: Fn(f64) -> f64>(g: &G, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = g(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&node, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * node;
        let pair = g(center - dx) + g(center + dx);
        kron += wk * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    }
}

/// `∫_0^∞ f(x) dx` to `max(tol.abs(), tol.rel() * |I|)`.
///
/// `tol.max_iter()` bounds the number of interval bisections. On exhaustion an
/// [`Error::Accuracy`] carries the best estimate and its error bound.
pub fn integrate_semiinfinite<F>(f: F, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let g = |t: f64| {
        let s = 1.0 - t;
        let v = f(t / s) / (s * s);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    let first = kronrod(&g, 0.0, 1.0);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::from([first]);
    let mut bisections = 0;
    loop {
        if error <= tol.abs().max(tol.rel() * value.abs()) {
            return Ok(value);
        }
        if bisections >= tol.max_iter() {
            return Err(Error::Accuracy {
                estimate: value,
                error,
                iterations: bisections,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = kronrod(&g, worst.lo, mid);
        let right = kronrod(&g, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        bisections += 1;
        // Re-sum occasionally to keep the running totals from drifting.
        if bisections % 32 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
}
