//! Globally adaptive Gauss-Kronrod (10/21-point) quadrature.
//!
//! Cells are bisected in order of their error estimate. Nodes never touch
//! cell endpoints, so integrable endpoint singularities (the logarithmic
//! blow-up of the Mahler integrand at zeros of the envelope) are handled by
//! subdivision alone.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Cells narrower than this are accepted as they are.
pub const MIN_CELL_WIDTH: f64 = 1e-14;
const MAX_CELLS: usize = 20_000;

#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
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

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_err: f64,
    pub cells: usize,
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Cell {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();
    let mut fv = [(0.0, 0.0); 10];
    for (j, slot) in fv.iter_mut().enumerate() {
        let x = half * XGK[j];
        let (f1, f2) = (f(center - x), f(center + x));
        *slot = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        err = f64::INFINITY;
    }
    Cell { a, b, value, err }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Integral {
    if b <= a {
        return Integral {
            value: 0.0,
            abs_err: 0.0,
            cells: 0,
        };
    }
    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Cell> = Vec::new();
    let first = gk21(&f, a, b);
    let mut total_err = first.err;
    heap.push(first);

    while total_err > abs_tol && heap.len() + settled.len() < MAX_CELLS {
        let Some(worst) = heap.pop() else { break };
        if worst.b - worst.a < MIN_CELL_WIDTH {
            settled.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    let cells: Vec<Cell> = heap.into_iter().chain(settled).collect();
    Integral {
        value: cells.iter().map(|c| c.value).sum(),
        abs_err: cells.iter().map(|c| c.err).sum(),
        cells: cells.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert!((r.value - 0.0).abs() < 1e-14);
        assert_eq!(r.cells, 1);
    }

    #[test]
    fn smooth_periodic() {
        let r = integrate(|x| x.sin().powi(2), 0.0, PI, 1e-12);
        assert!((r.value - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn logarithmic_endpoint_singularity() {
        // int_0^1 -ln x dx = 1
        let r = integrate(|x| -x.ln(), 0.0, 1.0, 1e-10);
        assert!((r.value - 1.0).abs() < 1e-10, "{r:?}");
        // int_0^pi ln sin x dx = -pi ln 2, singular at both ends
        let r = integrate(|x| x.sin().ln(), 0.0, PI, 1e-10);
        assert!((r.value + PI * 2f64.ln()).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn square_root_endpoint() {
        // int_0^1 sqrt(x) dx = 2/3
        let r = integrate(f64::sqrt, 0.0, 1.0, 1e-12);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_range() {
        assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-10).value, 0.0);
    }
}
