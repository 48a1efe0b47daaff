//! Finite trigonometric series with half-integer frequencies.
//!
//! Frequencies are stored doubled: the key `nu` of a term stands for
//! `cos(nu * t / 2)` (or `sin`). Products then merge exactly, and the odd-`l`
//! envelopes with frequencies `1/2, 3/2, ...` need no floating-point keys.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilySpec;

/// `sum_nu c_nu cos(nu t / 2)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CosineSeries {
    terms: BTreeMap<u32, f64>,
}

impl CosineSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut s = Self::zero();
        s.add_term(0, c);
        s
    }

    /// Builds a series from `(doubled_frequency, coefficient)` pairs; repeated
    /// frequencies are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, f64)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (nu, c) in terms {
            s.add_term(nu, c);
        }
        s
    }

    pub fn add_term(&mut self, doubled_freq: u32, c: f64) {
        let entry = self.terms.entry(doubled_freq).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&doubled_freq);
        }
    }

    pub fn coefficient(&self, doubled_freq: u32) -> f64 {
        self.terms.get(&doubled_freq).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.terms.iter().map(|(&nu, &c)| (nu, c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_doubled_frequency(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Every frequency is an integer (every stored key is even).
    pub fn is_integer_frequencies(&self) -> bool {
        self.terms.keys().all(|nu| nu % 2 == 0)
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&nu, &c)| c * (0.5 * nu as f64 * t).cos())
            .sum()
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&nu, &c)| {
                let w = 0.5 * nu as f64;
                -c * w * (w * t).sin()
            })
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms().map(|(nu, c)| (nu, c * s)))
    }

    /// Product via `cos a cos b = (cos(a - b) + cos(a + b)) / 2`.
    pub fn mul(&self, other: &CosineSeries) -> CosineSeries {
        let mut out = CosineSeries::zero();
        for (p, cp) in self.terms() {
            for (q, cq) in other.terms() {
                let h = 0.5 * cp * cq;
                out.add_term(p.abs_diff(q), h);
                out.add_term(p + q, h);
            }
        }
        out
    }

    pub fn square(&self) -> CosineSeries {
        self.mul(self)
    }
}

impl Add for &CosineSeries {
    type Output = CosineSeries;
    fn add(self, rhs: &CosineSeries) -> CosineSeries {
        let mut out = self.clone();
        for (nu, c) in rhs.terms() {
            out.add_term(nu, c);
        }
        out
    }
}

impl Sub for &CosineSeries {
    type Output = CosineSeries;
    fn sub(self, rhs: &CosineSeries) -> CosineSeries {
        let mut out = self.clone();
        for (nu, c) in rhs.terms() {
            out.add_term(nu, -c);
        }
        out
    }
}

impl Neg for &CosineSeries {
    type Output = CosineSeries;
    fn neg(self) -> CosineSeries {
        self.scale(-1.0)
    }
}

/// `sum_nu c_nu sin(nu t / 2)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SineSeries {
    terms: BTreeMap<u32, f64>,
}

impl SineSeries {
    pub fn from_terms<I: IntoIterator<Item = (u32, f64)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (nu, c) in terms {
            if nu == 0 {
                continue;
            }
            let e = map.entry(nu).or_insert(0.0);
            *e += c;
            if *e == 0.0 {
                map.remove(&nu);
            }
        }
        SineSeries { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.terms.iter().map(|(&nu, &c)| (nu, c))
    }

    pub fn max_doubled_frequency(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&nu, &c)| c * (0.5 * nu as f64 * t).sin())
            .sum()
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&nu, &c)| {
                let w = 0.5 * nu as f64;
                c * w * (w * t).cos()
            })
            .sum()
    }

    /// Product of two sine series, `sin a sin b = (cos(a - b) - cos(a + b)) / 2`.
    pub fn mul(&self, other: &SineSeries) -> CosineSeries {
        let mut out = CosineSeries::zero();
        for (p, cp) in self.terms() {
            for (q, cq) in other.terms() {
                let h = 0.5 * cp * cq;
                out.add_term(p.abs_diff(q), h);
                out.add_term(p + q, -h);
            }
        }
        out
    }

    pub fn square(&self) -> CosineSeries {
        self.mul(self)
    }
}

/// A pure cosine or pure sine series. Its square is always a cosine series.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "terms", rename_all = "lowercase")]
pub enum Curve {
    Cos(CosineSeries),
    Sin(SineSeries),
}

impl Curve {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Curve::Cos(s) => s.eval(t),
            Curve::Sin(s) => s.eval(t),
        }
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        match self {
            Curve::Cos(s) => s.eval_derivative(t),
            Curve::Sin(s) => s.eval_derivative(t),
        }
    }

    /// The `j`-th derivative at `t`, together with the sum of the magnitudes
    /// of its terms (the scale of its rounding error).
    pub fn derivative_at(&self, t: f64, j: u32) -> (f64, f64) {
        // position in the cycle cos -> -sin -> -cos -> sin; sin starts at 3
        let (terms, offset): (Vec<(u32, f64)>, u32) = match self {
            Curve::Cos(s) => (s.terms().collect(), 0),
            Curve::Sin(s) => (s.terms().collect(), 3),
        };
        terms.iter().fold((0.0, 0.0), |(v, m), &(nu, c)| {
            let w = 0.5 * nu as f64;
            let cw = c * w.powi(j as i32);
            let (sn, cs) = (w * t).sin_cos();
            let trig = match (j + offset) % 4 {
                0 => cs,
                1 => -sn,
                2 => -cs,
                _ => sn,
            };
            (v + cw * trig, m + cw.abs())
        })
    }

    /// `f(z + h) - f(z)`, accurate relative to `h` even when `z + h` would
    /// round back to `z`.
    pub fn eval_increment(&self, z: f64, h: f64) -> f64 {
        let half_versine = |w: f64| -2.0 * (0.5 * w * h).sin().powi(2);
        match self {
            Curve::Cos(s) => s
                .terms()
                .map(|(nu, c)| {
                    let w = 0.5 * nu as f64;
                    c * ((w * z).cos() * half_versine(w) - (w * z).sin() * (w * h).sin())
                })
                .sum(),
            Curve::Sin(s) => s
                .terms()
                .map(|(nu, c)| {
                    let w = 0.5 * nu as f64;
                    c * ((w * z).sin() * half_versine(w) + (w * z).cos() * (w * h).sin())
                })
                .sum(),
        }
    }

    pub fn square(&self) -> CosineSeries {
        match self {
            Curve::Cos(s) => s.square(),
            Curve::Sin(s) => s.square(),
        }
    }

    pub fn abs_coeff_sum(&self) -> f64 {
        match self {
            Curve::Cos(s) => s.abs_coeff_sum(),
            Curve::Sin(s) => s.abs_coeff_sum(),
        }
    }

    pub fn max_doubled_frequency(&self) -> u32 {
        match self {
            Curve::Cos(s) => s.max_doubled_frequency(),
            Curve::Sin(s) => s.max_doubled_frequency(),
        }
        .unwrap_or(0)
    }
}

impl From<CosineSeries> for Curve {
    fn from(s: CosineSeries) -> Self {
        Curve::Cos(s)
    }
}

impl From<SineSeries> for Curve {
    fn from(s: SineSeries) -> Self {
        Curve::Sin(s)
    }
}

/// The envelope `E(t)` of a palindromic spec.
///
/// Even `l`: `sum_{j < l/2} 2 b_j cos((l/2 - j) t) + b_{l/2}`; odd `l`: the same
/// sum over `j <= (l-1)/2` with no constant term.
pub fn envelope_series(spec: &FamilySpec) -> Result<CosineSeries> {
    if !spec.is_palindromic() {
        return Err(Error::NonPalindromic);
    }
    let l = spec.l();
    let b = spec.b();
    let mut e = CosineSeries::zero();
    for (j, &bj) in b.iter().enumerate().take_while(|(j, _)| 2 * j < l) {
        e.add_term((l - 2 * j) as u32, 2.0 * bj as f64);
    }
    if l % 2 == 0 {
        e.add_term(0, b[l / 2] as f64);
    }
    Ok(e)
}

/// `f2(t) = -a_0/2 - sum_{j=1..k} a_j cos(j t)`.
pub fn f2_series(spec: &FamilySpec) -> CosineSeries {
    let a = spec.a();
    let mut f = CosineSeries::constant(-0.5 * a[0] as f64);
    for (j, &aj) in a.iter().enumerate().skip(1) {
        f.add_term(2 * j as u32, -(aj as f64));
    }
    f
}

/// `sin((l+1) t / 2) / sin(t / 2)`, the envelope for all-ones `b`.
///
/// At `t = 2 pi j` the removable singularity takes its limit
/// `(-1)^(l j) (l + 1)`.
pub fn closed_form_envelope_eval(l: u32, t: f64) -> f64 {
    let j = (t / std::f64::consts::TAU).round();
    let s = t - j * std::f64::consts::TAU;
    let sign = if (l as i64 * j as i64) % 2 == 0 { 1.0 } else { -1.0 };
    if s == 0.0 {
        return sign * (l as f64 + 1.0);
    }
    sign * ((l as f64 + 1.0) * s / 2.0).sin() / (s / 2.0).sin()
}

/// `f2^2 - E^2`, whose zero set is where `|f2| = |E|`.
pub fn squared_difference(f2: &CosineSeries, e: &CosineSeries) -> CosineSeries {
    &f2.square() - &e.square()
}

/// A polynomial `d(w)` on `[-1, 1]` stored by its Chebyshev coefficients:
/// `d(w) = sum_m c_m T_m(w)`, so that `d(cos t) = sum_m c_m cos(m t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebPoly {
    cheb: Vec<f64>,
}

impl ChebPoly {
    pub fn from_chebyshev(mut cheb: Vec<f64>) -> Self {
        while cheb.last() == Some(&0.0) {
            cheb.pop();
        }
        ChebPoly { cheb }
    }

    pub fn chebyshev_coeffs(&self) -> &[f64] {
        &self.cheb
    }

    pub fn degree(&self) -> usize {
        self.cheb.len().saturating_sub(1)
    }

    pub fn norm1(&self) -> f64 {
        self.cheb.iter().map(|c| c.abs()).sum()
    }

    /// Clenshaw evaluation at `w`.
    pub fn eval(&self, w: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.cheb.iter().skip(1).rev() {
            let b0 = 2.0 * w * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        let c0 = self.cheb.first().copied().unwrap_or(0.0);
        w * b1 - b2 + c0
    }

    /// `d(cos theta)`, summed directly in the angle.
    pub fn eval_angle(&self, theta: f64) -> f64 {
        self.cheb
            .iter()
            .enumerate()
            .map(|(m, &c)| c * (m as f64 * theta).cos())
            .sum()
    }

    /// `d/dtheta d(cos theta)`.
    pub fn eval_angle_derivative(&self, theta: f64) -> f64 {
        self.cheb
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, &c)| -c * m as f64 * (m as f64 * theta).sin())
            .sum()
    }

    /// Ascending power-basis coefficients, via `T_{m+1} = 2w T_m - T_{m-1}`.
    ///
    /// Only well conditioned for small degrees.
    pub fn power_coeffs(&self) -> Vec<f64> {
        let n = self.cheb.len();
        if n == 0 {
            return Vec::new();
        }
        let mut out = vec![0.0; n];
        let mut prev = vec![0.0; n];
        let mut cur = vec![0.0; n];
        prev[0] = 1.0;
        out[0] += self.cheb[0];
        if n > 1 {
            cur[1] = 1.0;
            out[1] += self.cheb[1];
        }
        for m in 2..n {
            let mut next = vec![0.0; n];
            for i in 0..m {
                next[i + 1] += 2.0 * cur[i];
            }
            for i in 0..m - 1 {
                next[i] -= prev[i];
            }
            for i in 0..=m {
                out[i] += self.cheb[m] * next[i];
            }
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }
}

/// Rewrites an integer-frequency cosine series as a polynomial in `w = cos t`.
pub fn to_chebyshev(s: &CosineSeries) -> Result<ChebPoly> {
    if !s.is_integer_frequencies() {
        return Err(Error::HalfIntegerFrequency);
    }
    let deg = s.max_doubled_frequency().map_or(0, |nu| nu as usize / 2);
    let mut cheb = vec![0.0; deg + 1];
    for (nu, c) in s.terms() {
        cheb[nu as usize / 2] = c;
    }
    Ok(ChebPoly::from_chebyshev(cheb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn grid() -> impl Iterator<Item = f64> {
        (1..=1000).map(|i| TAU * i as f64 / 1001.0)
    }

    #[test]
    fn increments_keep_relative_accuracy() {
        let c: Curve = CosineSeries::from_terms([(0, 2.0), (2, -2.0)]).into();
        // 2 - 2 cos h = 4 sin^2(h / 2)
        let h = 1e-9f64;
        let expected = 4.0 * (0.5 * h).sin().powi(2);
        assert!((c.eval_increment(0.0, h) - expected).abs() < 1e-15 * expected);
        let s: Curve = SineSeries::from_terms([(3, 1.0), (1, -0.5)]).into();
        for (z, h) in [(0.3, 0.2), (2.0, -0.7), (1.1, 1e-3)] {
            let direct = s.eval(z + h) - s.eval(z);
            assert!((s.eval_increment(z, h) - direct).abs() < 1e-14);
            let direct = c.eval(z + h) - c.eval(z);
            assert!((c.eval_increment(z, h) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn derivatives_cycle() {
        let c: Curve = CosineSeries::from_terms([(2, 1.0), (6, 0.5)]).into();
        let s: Curve = SineSeries::from_terms([(2, 1.0), (6, 0.5)]).into();
        let t = 0.7f64;
        let (d1, _) = c.derivative_at(t, 1);
        assert!((d1 - c.eval_derivative(t)).abs() < 1e-15);
        let (d3, _) = c.derivative_at(t, 3);
        assert!((d3 - (t.sin() + 0.5 * 27.0 * (3.0 * t).sin())).abs() < 1e-13);
        let (s0, _) = s.derivative_at(t, 0);
        assert!((s0 - s.eval(t)).abs() < 1e-15);
        let (s2, m2) = s.derivative_at(t, 2);
        assert!((s2 + t.sin() + 4.5 * (3.0 * t).sin()).abs() < 1e-14);
        assert_eq!(m2, 1.0 + 4.5);
    }

    #[test]
    fn envelope_examples() {
        let s = FamilySpec::new(0, 0, vec![0], vec![1]).unwrap();
        assert_eq!(envelope_series(&s).unwrap(), CosineSeries::constant(1.0));

        let s = FamilySpec::new(0, 1, vec![0], vec![1, 1]).unwrap();
        assert_eq!(
            envelope_series(&s).unwrap(),
            CosineSeries::from_terms([(1, 2.0)])
        );
        assert!(!envelope_series(&s).unwrap().is_integer_frequencies());

        let (b1, b2) = (-3, 5);
        let s = FamilySpec::new(0, 4, vec![2], vec![1, b1, b2, b1, 1]).unwrap();
        assert_eq!(
            envelope_series(&s).unwrap(),
            CosineSeries::from_terms([(4, 2.0), (2, 2.0 * b1 as f64), (0, b2 as f64)])
        );

        let s = FamilySpec::new(0, 2, vec![0], vec![-1, -1, 1]).unwrap();
        assert_eq!(envelope_series(&s), Err(Error::NonPalindromic));
    }

    #[test]
    fn f2_examples() {
        let s = FamilySpec::new(0, 0, vec![1], vec![1]).unwrap();
        assert_eq!(f2_series(&s), CosineSeries::constant(-0.5));
        let s = FamilySpec::new(0, 0, vec![2], vec![1]).unwrap();
        assert_eq!(f2_series(&s), CosineSeries::constant(-1.0));
        let s = FamilySpec::new(1, 0, vec![0, 1], vec![1]).unwrap();
        assert_eq!(f2_series(&s), CosineSeries::from_terms([(2, -1.0)]));
        assert!(f2_series(&s).is_integer_frequencies());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_envelope_eval(4, 0.0), 5.0);
        assert!((closed_form_envelope_eval(4, 1e-9) - 5.0).abs() < 1e-12);
        assert!((closed_form_envelope_eval(1, PI / 2.0) - 2f64.sqrt()).abs() < 1e-15);
        assert!((closed_form_envelope_eval(2, PI) + 1.0).abs() < 1e-15);
        // odd l changes sign across t = 2 pi
        assert_eq!(closed_form_envelope_eval(3, TAU), -4.0);
        assert_eq!(closed_form_envelope_eval(2, TAU), 3.0);
    }

    #[test]
    fn squared_difference_examples() {
        let d = squared_difference(
            &CosineSeries::constant(-0.5),
            &CosineSeries::from_terms([(1, 2.0)]),
        );
        assert_eq!(d, CosineSeries::from_terms([(0, -1.75), (2, -2.0)]));

        let d = squared_difference(&CosineSeries::zero(), &CosineSeries::constant(1.0));
        assert_eq!(d, CosineSeries::constant(-1.0));

        let c = CosineSeries::from_terms([(2, 1.0)]);
        assert!(squared_difference(&c, &c).is_empty());
    }

    #[test]
    fn chebyshev_examples() {
        let d = to_chebyshev(&CosineSeries::from_terms([(0, -1.75), (2, -2.0)])).unwrap();
        assert_eq!(d.power_coeffs(), vec![-1.75, -2.0]);
        let d = to_chebyshev(&CosineSeries::from_terms([(4, 1.0)])).unwrap();
        assert_eq!(d.power_coeffs(), vec![-1.0, 0.0, 2.0]);
        let d = to_chebyshev(&CosineSeries::constant(-1.0)).unwrap();
        assert_eq!(d.power_coeffs(), vec![-1.0]);
        assert_eq!(
            to_chebyshev(&CosineSeries::from_terms([(1, 1.0)])),
            Err(Error::HalfIntegerFrequency)
        );
    }

    #[test]
    fn power_basis_matches_cos_multiple_angle() {
        // T_5(w) = 16w^5 - 20w^3 + 5w
        let d = to_chebyshev(&CosineSeries::from_terms([(10, 1.0)])).unwrap();
        assert_eq!(d.power_coeffs(), vec![0.0, 5.0, 0.0, -20.0, 0.0, 16.0]);
    }

    #[test]
    fn sine_products() {
        // sin^2(t) = (1 - cos 2t) / 2
        let s = SineSeries::from_terms([(2, 1.0)]);
        assert_eq!(
            s.square(),
            CosineSeries::from_terms([(0, 0.5), (4, -0.5)])
        );
        for t in grid() {
            let v = s.eval(t);
            assert!((s.square().eval(t) - v * v).abs() < 1e-14);
        }
    }

    #[test]
    fn cosine_sum_odd() {
        for m in 0..=20u32 {
            for t in grid() {
                let sum: f64 = 1.0 + (1..=m).map(|j| 2.0 * (j as f64 * t).cos()).sum::<f64>();
                let lhs = (t / 2.0).sin() * sum;
                let rhs = ((2 * m + 1) as f64 * t / 2.0).sin();
                assert!((lhs - rhs).abs() < 1e-12, "m={m} t={t}");
            }
        }
    }

    #[test]
    fn cosine_sum_half_integer() {
        for m in 1..=20u32 {
            for t in grid() {
                let sum: f64 = (1..=m)
                    .map(|j| 2.0 * ((2 * j - 1) as f64 * t / 2.0).cos())
                    .sum();
                let lhs = (t / 2.0).sin() * sum;
                let rhs = (m as f64 * t).sin();
                assert!((lhs - rhs).abs() < 1e-12, "m={m} t={t}");
            }
        }
    }

    #[test]
    fn all_ones_envelope_matches_closed_form() {
        for l in 0..=20u32 {
            let spec = FamilySpec::new(0, l as i64, vec![1], vec![1; l as usize + 1]).unwrap();
            let e = envelope_series(&spec).unwrap();
            let worst = grid()
                .chain([0.0, TAU])
                .map(|t| (e.eval(t) - closed_form_envelope_eval(l, t)).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-10, "l={l} worst={worst}");
        }
    }

    #[test]
    fn clenshaw_matches_angle_sum() {
        let s = CosineSeries::from_terms([(0, 0.25), (2, -1.5), (6, 3.0), (14, -0.5)]);
        let d = to_chebyshev(&s).unwrap();
        assert_eq!(d.degree(), 7);
        for t in grid() {
            assert!((d.eval(t.cos()) - s.eval(t)).abs() < 1e-12);
            assert!((d.eval_angle(t) - s.eval(t)).abs() < 1e-12);
            let h = 1e-6;
            let fd = (s.eval(t + h) - s.eval(t - h)) / (2.0 * h);
            assert!((d.eval_angle_derivative(t) - fd).abs() < 1e-6);
        }
    }

    fn arb_palindromic() -> impl Strategy<Value = FamilySpec> {
        (0usize..4, 0usize..6)
            .prop_flat_map(|(k, l)| {
                (
                    Just(k),
                    Just(l),
                    prop::collection::vec(-3i64..=3, k + 1),
                    prop::collection::vec(-3i64..=3, l / 2 + 1),
                )
            })
            .prop_filter_map("valid", |(k, l, a, half)| {
                let b: Vec<i64> = (0..=l).map(|j| half[j.min(l - j)]).collect();
                FamilySpec::new(k as i64, l as i64, a, b).ok()
            })
    }

    proptest! {
        #[test]
        fn squared_difference_is_even_integer_series(spec in arb_palindromic()) {
            let f2 = f2_series(&spec);
            let e = envelope_series(&spec).unwrap();
            let d = squared_difference(&f2, &e);
            prop_assert!(d.is_integer_frequencies());
            let scale = 1.0 + d.abs_coeff_sum();
            for i in 0..64 {
                let t = PI * i as f64 / 63.0;
                let direct = f2.eval(t).powi(2) - e.eval(t).powi(2);
                prop_assert!((d.eval(t) - direct).abs() < 1e-12 * scale);
                prop_assert!((d.eval(TAU - t) - d.eval(t)).abs() < 1e-12 * scale);
            }
        }

        #[test]
        fn chebyshev_round_trip(spec in arb_palindromic()) {
            let d = squared_difference(&f2_series(&spec), &envelope_series(&spec).unwrap());
            let cheb = to_chebyshev(&d).unwrap();
            prop_assert_eq!(cheb.degree(), d.max_doubled_frequency().unwrap_or(0) as usize / 2);
            for t in grid().step_by(10) {
                prop_assert!((cheb.eval(t.cos()) - d.eval(t)).abs() < 1e-12 * (1.0 + d.abs_coeff_sum()));
            }
        }
    }
}
