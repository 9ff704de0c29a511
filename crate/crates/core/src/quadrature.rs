//! Globally adaptive 21-point Gauss–Kronrod quadrature on finite intervals
//! and a nested variant for rectangles.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

// QUADPACK qk21 abscissae (positive half, descending) and weights.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss 10-point weights, matching XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_err: f64,
    /// False when refinement stopped before reaching the requested tolerance.
    pub converged: bool,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            abs_err: 0.0,
            converged: true,
        }
    }
}

/// Tolerances and refinement budget for the adaptive rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadCtrl {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of subintervals kept by one adaptive run.
    pub max_intervals: usize,
}

impl Default for QuadCtrl {
    fn default() -> Self {
        QuadCtrl {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 400,
        }
    }
}

impl QuadCtrl {
    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// One 21-point Kronrod panel on `[a, b]`: (integral, error estimate).
pub fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = kron.abs();
    let mut fv = [0.0; 20];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kron += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
    }
    let mean = 0.5 * kron;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    let result = kron * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kron - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive bisection of the panel with the largest error until the summed
/// error meets the tolerance or the interval budget is spent.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, ctrl: &QuadCtrl) -> Estimate {
    if a == b {
        return Estimate::exact(0.0);
    }
    let (value, err) = gk21(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, err });
    let (mut total, mut total_err) = (value, err);
    while total_err > ctrl.target(total) && heap.len() < ctrl.max_intervals {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval exhausted at double precision
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&mut f, worst.a, mid);
        let (v2, e2) = gk21(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }
    // re-sum to shed the running-update rounding
    let (total, total_err) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err));
    Estimate {
        value: total,
        abs_err: total_err,
        converged: total_err <= ctrl.target(total),
    }
}

/// `∫_{xa}^{xb} ∫_{ya}^{yb} f(x, y) dy dx` by nesting [`integrate`].
///
/// The inner tolerance is tightened by the outer interval length so that the
/// accumulated inner error stays within `ctrl.abs_tol`. The returned error is
/// the outer estimate plus the largest inner estimate times the x-extent.
pub fn integrate_2d<F>(
    f: F,
    (xa, xb): (f64, f64),
    (ya, yb): (f64, f64),
    ctrl: &QuadCtrl,
) -> Estimate
where
    F: Fn(f64, f64) -> f64,
{
    let width = (xb - xa).abs().max(f64::MIN_POSITIVE);
    let inner = QuadCtrl {
        abs_tol: 0.25 * ctrl.abs_tol / width,
        rel_tol: 0.25 * ctrl.rel_tol,
        max_intervals: ctrl.max_intervals,
    };
    let mut worst_inner = 0.0f64;
    let mut inner_ok = true;
    let outer = integrate(
        |x| {
            let e = integrate(|y| f(x, y), ya, yb, &inner);
            worst_inner = worst_inner.max(e.abs_err);
            inner_ok &= e.converged;
            e.value
        },
        xa,
        xb,
        ctrl,
    );
    let abs_err = outer.abs_err + worst_inner * width;
    Estimate {
        value: outer.value,
        abs_err,
        converged: outer.converged && inner_ok,
    }
}
