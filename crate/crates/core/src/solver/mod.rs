//! The limit ratio of a pair `(f2, E)`: the fraction of the period where
//! `|f2| >= |E|`, computed from the real roots of `D = f2^2 - E^2`.
//!
//! Everything runs on the half period `[0, pi]` in an angle `theta`. For a
//! [`FamilySpec`] the angle is `t` itself and the set on `[0, 2 pi]` is the
//! mirror image of the stored half; for bivariate-family pairs on `u in [0, 1]`
//! the angle is `theta = pi u` and the half period is the whole domain.

pub mod intervals;
pub mod isolate;
pub mod quadrature;
pub mod sturm;

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::trig::{envelope_series, f2_series, to_chebyshev, ChebPoly, CosineSeries, Curve};

pub use intervals::{classify_intervals, IntervalSet};
pub use isolate::{isolate_roots, CrossingFunction};

/// `D` with coefficient norm at or below this is treated as identically zero.
pub const DEGENERATE_NORM: f64 = 1e-14;
/// Absolute tolerance of the Mahler-limit integral.
pub const MAHLER_TOLERANCE: f64 = 1e-10;
/// Largest degree of `D` cross-checked by an exact Sturm count.
pub const STURM_MAX_DEGREE: usize = 12;

/// How the angle `theta in [0, pi]` relates to the pair's natural variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// `theta = t`, with `t in [0, 2 pi]` symmetric about `pi`.
    Circle,
    /// `theta = pi u`, with `u in [0, 1]`.
    HalfTurn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Riemann,
}

/// An `(f2, E)` pair whose squares are integer-frequency cosine series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePair {
    f2: Curve,
    envelope: Curve,
    domain: Domain,
}

impl CurvePair {
    pub fn new(f2: Curve, envelope: Curve, domain: Domain) -> Self {
        CurvePair {
            f2,
            envelope,
            domain,
        }
    }

    pub fn from_spec(spec: &FamilySpec) -> Result<Self> {
        Ok(CurvePair::new(
            f2_series(spec).into(),
            envelope_series(spec)?.into(),
            Domain::Circle,
        ))
    }

    pub fn f2(&self) -> &Curve {
        &self.f2
    }

    pub fn envelope(&self) -> &Curve {
        &self.envelope
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// `|f2(theta)| - |E(theta)|`.
    pub fn gap(&self, theta: f64) -> f64 {
        self.f2.eval(theta).abs() - self.envelope.eval(theta).abs()
    }

    /// The indicator of the above-set.
    pub fn is_above(&self, theta: f64) -> bool {
        self.f2.eval(theta).abs() >= self.envelope.eval(theta).abs()
    }

    pub fn squared_difference(&self) -> CosineSeries {
        &self.f2.square() - &self.envelope.square()
    }

    /// `D` as a polynomial in `cos theta`.
    pub fn chebyshev(&self) -> Result<ChebPoly> {
        to_chebyshev(&self.squared_difference())
    }
}

/// Measures signs with `|f2| - |E|`, which keeps full relative accuracy when
/// the coefficients of `D` are large, and brackets extrema with `D'`.
struct Gap<'a> {
    pair: &'a CurvePair,
    d: &'a ChebPoly,
    scale: f64,
}

impl CrossingFunction for Gap<'_> {
    fn value(&self, theta: f64) -> f64 {
        self.pair.gap(theta)
    }

    fn slope(&self, theta: f64) -> f64 {
        self.d.eval_angle_derivative(theta)
    }

    fn degree(&self) -> usize {
        self.d.degree()
    }

    fn scale(&self) -> f64 {
        self.scale
    }
}

struct Zeros<'a>(&'a Curve);

impl CrossingFunction for Zeros<'_> {
    fn value(&self, theta: f64) -> f64 {
        self.0.eval(theta)
    }

    fn slope(&self, theta: f64) -> f64 {
        self.0.eval_derivative(theta)
    }

    fn degree(&self) -> usize {
        self.0.max_doubled_frequency() as usize / 2 + 1
    }

    fn scale(&self) -> f64 {
        self.0.abs_coeff_sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Largest `|D(cos theta)|` over the crossings.
    pub max_residual: f64,
    /// `max_residual` divided by the coefficient norm of `D`.
    pub relative_residual: f64,
    pub d_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRatioResult {
    pub lc: f64,
    pub above_set: IntervalSet,
    pub crossings: Vec<f64>,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

impl LimitRatioResult {
    /// Number `r` of intervals where `|f2| < |E|`, over the full variable
    /// range; at least one so that bounds built on it stay meaningful.
    pub fn interval_count(&self) -> usize {
        self.above_set.complement_count_full_period().max(1)
    }
}

fn check_degenerate(d: &ChebPoly) -> Result<()> {
    if d.norm1() <= DEGENERATE_NORM {
        Err(Error::DegenerateEnvelope)
    } else {
        Ok(())
    }
}

fn sturm_check(d: &ChebPoly, found: usize) -> Result<()> {
    if d.degree() > STURM_MAX_DEGREE {
        return Ok(());
    }
    match sturm::count_distinct_roots(d) {
        Some(exact) if exact != found => Err(Error::GridInstability(format!(
            "isolated {found} crossings, exact count is {exact}"
        ))),
        _ => Ok(()),
    }
}

/// Every real root of `d` in `[-1, 1]`, as angles in `[0, pi]`, sorted.
pub fn find_crossings(d: &ChebPoly) -> Result<Vec<f64>> {
    check_degenerate(d)?;
    let roots = isolate_roots(d);
    sturm_check(d, roots.len())?;
    Ok(roots)
}

fn diagnostics(d: &ChebPoly, crossings: &[f64]) -> Diagnostics {
    let max_residual = crossings
        .iter()
        .map(|&t| d.eval_angle(t).abs())
        .fold(0.0, f64::max);
    Diagnostics {
        max_residual,
        relative_residual: max_residual / d.norm1(),
        d_degree: d.degree(),
    }
}

pub fn limit_ratio_exact(spec: &FamilySpec) -> Result<LimitRatioResult> {
    limit_ratio_pair(&CurvePair::from_spec(spec)?)
}

pub fn limit_ratio_pair(pair: &CurvePair) -> Result<LimitRatioResult> {
    let d = pair.chebyshev()?;
    check_degenerate(&d)?;
    let gap = Gap {
        pair,
        d: &d,
        scale: pair.f2.abs_coeff_sum() + pair.envelope.abs_coeff_sum(),
    };
    let crossings = isolate_roots(&gap);
    sturm_check(&d, crossings.len())?;
    let above_set = classify_intervals(&gap, &crossings, pair.domain == Domain::Circle);
    Ok(LimitRatioResult {
        // `+ 0.0` turns an empty-sum -0.0 into 0.0
        lc: (above_set.measure() / PI).clamp(0.0, 1.0) + 0.0,
        diagnostics: diagnostics(&d, &crossings),
        above_set,
        crossings,
        method: Method::Exact,
    })
}

/// `s / p`, where `s` counts the `p` equally spaced samples of the full
/// variable range (excluding its start) that lie in the above-set.
pub fn limit_ratio_riemann(pair: &CurvePair, p: u64) -> f64 {
    assert!(p >= 1, "at least one sample point");
    let step = match pair.domain {
        Domain::Circle => TAU / p as f64,
        Domain::HalfTurn => PI / p as f64,
    };
    let s = (1..=p).filter(|&j| pair.is_above(step * j as f64)).count();
    s as f64 / p as f64
}

/// Taylor terms kept when expanding a curve about one of its zeros.
const TAYLOR_TERMS: u32 = 24;
/// Relative size below which a derivative at an expansion point counts as zero.
const DERIVATIVE_ZERO: f64 = 1e-8;

/// A curve seen from `anchor` as a function of the offset `h >= 0` in
/// direction `dir`. About a zero of the curve it switches to a Taylor
/// expansion, so that a root of high multiplicity keeps its exact order
/// instead of drowning in cancellation.
struct Local<'a> {
    curve: &'a Curve,
    anchor: f64,
    dir: f64,
    base: f64,
    taylor: Option<(Vec<f64>, f64)>,
}

impl<'a> Local<'a> {
    fn new(curve: &'a Curve, anchor: f64, dir: f64) -> Self {
        let (v0, m0) = curve.derivative_at(anchor, 0);
        let mut local = Local {
            curve,
            anchor,
            dir,
            base: v0,
            taylor: None,
        };
        if v0.abs() > isolate::ZERO_TOLERANCE * m0 {
            return local;
        }
        local.base = 0.0;
        let mut coeffs = vec![0.0];
        let mut factorial = 1.0;
        let mut leading_found = false;
        for j in 1..=TAYLOR_TERMS {
            factorial *= j as f64;
            let (v, m) = curve.derivative_at(anchor, j);
            leading_found |= v.abs() > DERIVATIVE_ZERO * m;
            coeffs.push(if leading_found { dir.powi(j as i32) * v / factorial } else { 0.0 });
        }
        let w_max = 0.5 * curve.max_doubled_frequency().max(1) as f64;
        local.taylor = Some((coeffs, 0.1 / w_max));
        local
    }

    fn eval(&self, h: f64) -> f64 {
        match &self.taylor {
            Some((coeffs, radius)) if h < *radius => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * h + c)
            }
            _ => self.base + self.curve.eval_increment(self.anchor, self.dir * h),
        }
    }
}

/// The limit of the Mahler measure,
/// `exp((1/pi) int_{above set} ln((|f2| + sqrt(f2^2 - E^2)) / |E|) dtheta)`.
pub fn mahler_limit(pair: &CurvePair) -> Result<f64> {
    let exact = limit_ratio_pair(pair)?;
    mahler_limit_on(pair, &exact.above_set)
}

/// [`mahler_limit`] with an already computed above-set.
///
/// Each piece between consecutive split points is integrated as two halves,
/// each in the offset `h` from its outer endpoint, so that the logarithmic
/// singularity at a zero of `E` is resolved below the spacing of doubles near
/// the endpoint.
pub fn mahler_limit_on(pair: &CurvePair, above: &IntervalSet) -> Result<f64> {
    if above.is_empty() {
        return Ok(1.0);
    }
    let e_zeros = isolate_roots(&Zeros(&pair.envelope));
    let mut pieces = Vec::new();
    for &(a, b) in above.intervals() {
        let mut start = a;
        for &z in e_zeros.iter().filter(|&&z| z > a && z < b) {
            pieces.push((start, z));
            start = z;
        }
        pieces.push((start, b));
    }
    let tol = MAHLER_TOLERANCE / (2 * pieces.len()) as f64;
    let mut total = 0.0;
    for &(a, b) in &pieces {
        let mid = 0.5 * (a + b);
        for (anchor, dir, len) in [(a, 1.0, mid - a), (b, -1.0, b - mid)] {
            let f2 = Local::new(&pair.f2, anchor, dir);
            let e = Local::new(&pair.envelope, anchor, dir);
            let integrand = |h: f64| {
                let f = f2.eval(h).abs();
                let e = e.eval(h).abs();
                let disc = ((f - e) * (f + e)).max(0.0);
                ((f + disc.sqrt()) / e).ln()
            };
            let r = quadrature::integrate(integrand, 0.0, len, tol);
            if !r.value.is_finite() {
                return Err(Error::RootFinder(format!(
                    "Mahler integrand not integrable on [{a}, {b}]"
                )));
            }
            total += r.value;
        }
    }
    Ok((total / PI).exp())
}
