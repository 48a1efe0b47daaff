use std::f64::consts::PI;

use serde::Serialize;

use super::isolate::CrossingFunction;

/// Disjoint closed subintervals of `[0, pi]`, sorted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
    /// The set is the half-period image of a set on `[0, 2 pi]` symmetric
    /// about `pi`, so the full-circle measure is twice [`IntervalSet::measure`].
    mirrored: bool,
}

impl IntervalSet {
    pub fn new(intervals: Vec<(f64, f64)>, mirrored: bool) -> Self {
        debug_assert!(intervals
            .iter()
            .all(|&(a, b)| (0.0..=PI).contains(&a) && a <= b && b <= PI));
        debug_assert!(intervals.windows(2).all(|w| w[0].1 < w[1].0));
        IntervalSet {
            intervals,
            mirrored,
        }
    }

    pub fn empty(mirrored: bool) -> Self {
        Self::new(Vec::new(), mirrored)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    /// Number of intervals `r`.
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= theta && theta <= b)
    }

    /// The closure of `[0, pi]` minus this set.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut start = 0.0;
        for &(a, b) in &self.intervals {
            if a > start {
                out.push((start, a));
            }
            start = b;
        }
        if start < PI {
            out.push((start, PI));
        }
        IntervalSet::new(out, self.mirrored)
    }

    /// Number of components of the complement, counted as arcs of the
    /// circle when mirrored (a component touching `0` or `pi` joins its
    /// mirror image).
    pub fn complement_count_full_period(&self) -> usize {
        let c = self.complement();
        if !self.mirrored || c.is_empty() {
            return c.len();
        }
        if c.intervals == [(0.0, PI)] {
            return 1;
        }
        let touches_zero = c.intervals[0].0 == 0.0;
        let touches_pi = c.intervals.last().is_some_and(|&(_, b)| b == PI);
        2 * c.len() - usize::from(touches_zero) - usize::from(touches_pi)
    }
}

/// Splits `[0, pi]` at `crossings` and keeps the pieces where `f >= 0`.
///
/// Adjacent kept pieces (a tangency without sign change) are merged;
/// zero-length pieces are dropped.
pub fn classify_intervals<F: CrossingFunction + ?Sized>(
    f: &F,
    crossings: &[f64],
    mirrored: bool,
) -> IntervalSet {
    let mut cuts = Vec::with_capacity(crossings.len() + 2);
    cuts.push(0.0);
    cuts.extend(crossings.iter().copied().filter(|&t| t > 0.0 && t < PI));
    cuts.push(PI);

    let mut kept: Vec<(f64, f64)> = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        if f.value(0.5 * (a + b)) < 0.0 {
            continue;
        }
        match kept.last_mut() {
            Some(last) if last.1 == a => last.1 = b,
            _ => kept.push((a, b)),
        }
    }
    IntervalSet::new(kept, mirrored)
}
