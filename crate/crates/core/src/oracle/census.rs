use serde::Serialize;

use super::roots::{newton_correction, refine_cluster, roots};
use crate::error::{Error, Result};
use crate::family::IntPolynomial;

/// Default modulus tolerance `tau`.
pub const DEFAULT_TOLERANCE: f64 = 1e-7;
/// The computed copies of an `m`-fold root scatter by about `eps^(1/m)`;
/// roots closer than this are pooled and classified together.
const CLUSTER_RADIUS: f64 = 1e-4;
/// A pooled root whose Newton correction is below this fraction of the
/// distance to its nearest neighbour is simple and classified on its own.
const SEPARATION_RATIO: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMethod {
    Modulus,
    SignChange,
}

/// Root counts `I`, `U`, `E` of a polynomial of degree `d`, with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootCensus {
    pub degree: usize,
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub method: CensusMethod,
    pub tolerance: f64,
}

impl RootCensus {
    pub fn nonunimodular(&self) -> usize {
        self.inside + self.outside
    }

    /// `I + U + E = d`, and `I = E` when `reciprocal`.
    pub fn check(&self, reciprocal: bool) -> Result<()> {
        let unstable = |reason: String| Error::ClassificationUnstable {
            tolerance: self.tolerance,
            reason,
        };
        if self.inside + self.on_circle + self.outside != self.degree {
            return Err(unstable(format!(
                "I + U + E = {} + {} + {} != {}",
                self.inside, self.on_circle, self.outside, self.degree
            )));
        }
        if reciprocal && self.inside != self.outside {
            return Err(unstable(format!(
                "reciprocal polynomial with I = {} != E = {}",
                self.inside, self.outside
            )));
        }
        Ok(())
    }
}

/// Signed distance `|z| - 1`.
fn offset(z: num_complex::Complex64) -> f64 {
    z.norm() - 1.0
}

/// Counts roots inside, on and outside the unit circle.
///
/// Roots closer together than `CLUSTER_RADIUS` are pooled, and a pool of `m`
/// is classified by its centre refined as a root of `P^(m-1)`, which is
/// accurate for a multiple root even when its computed copies are not. A
/// pool is on the circle when its centre `z`
/// satisfies `||z| - 1| <= tau`; a centre with `||z| - 1|` in
/// `(tau/10, 10 tau)` is ambiguous and reported as an error.
pub fn count_roots_modulus(p: &IntPolynomial, tau: f64) -> Result<RootCensus> {
    if !(tau > 0.0 && tau < 0.1) {
        return Err(Error::InvalidSpec(format!("tolerance {tau} outside (0, 0.1)")));
    }
    let set = roots(p)?;
    let z = &set.numeric;
    let ambiguous = |d: f64| d.abs() > tau / 10.0 && d.abs() < 10.0 * tau;

    // pools: union-find over pairs of roots within CLUSTER_RADIUS
    let mut parent: Vec<usize> = (0..z.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (z[i] - z[j]).norm() < CLUSTER_RADIUS {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut sums = vec![(num_complex::Complex64::new(0.0, 0.0), 0usize); z.len()];
    for i in 0..z.len() {
        let r = find(&mut parent, i);
        sums[r].0 += z[i];
        sums[r].1 += 1;
    }

    let mut census = RootCensus {
        degree: p.degree(),
        inside: set.zero,
        on_circle: set.plus_one + set.minus_one,
        outside: 0,
        method: CensusMethod::Modulus,
        tolerance: tau,
    };
    // Distinct simple roots that happen to lie close together stay
    // individual: each has a Newton correction far below its distance to
    // the rest of the pool, which a multiple root never has.
    let mut nearest = vec![f64::INFINITY; z.len()];
    for i in 0..z.len() {
        for j in 0..z.len() {
            if i != j && find(&mut parent, i) == find(&mut parent, j) {
                nearest[i] = nearest[i].min((z[i] - z[j]).norm());
            }
        }
    }
    let resolved: Vec<bool> = (0..z.len())
        .map(|i| newton_correction(&set.factor, z[i]).norm() < SEPARATION_RATIO * nearest[i])
        .collect();
    let mut pooled = vec![false; z.len()];
    for i in 0..z.len() {
        if !resolved[i] {
            pooled[find(&mut parent, i)] = true;
        }
    }
    let centers: Vec<num_complex::Complex64> = (0..z.len())
        .map(|i| match sums[i] {
            (sum, count) if count > 1 && pooled[i] => {
                refine_cluster(&set.factor, sum / count as f64, count, CLUSTER_RADIUS)
            }
            (sum, _) => sum,
        })
        .collect();
    for i in 0..z.len() {
        let r = find(&mut parent, i);
        let d = offset(if pooled[r] { centers[r] } else { z[i] });
        if ambiguous(d) {
            return Err(Error::ClassificationUnstable {
                tolerance: tau,
                reason: format!("root {} has ||z| - 1| = {:e}", z[i], d.abs()),
            });
        }
        if d < -tau {
            census.inside += 1;
        } else if d > tau {
            census.outside += 1;
        } else {
            census.on_circle += 1;
        }
    }
    census.check(p.is_reciprocal())?;
    Ok(census)
}
