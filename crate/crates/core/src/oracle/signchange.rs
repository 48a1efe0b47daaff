//! Unimodular roots counted as real zeros of a trigonometric polynomial.
//!
//! For a palindromic spec, `e^{-i(n+l)t} P(e^{it}) = 2 F(t)` with
//! `F(t) = cos((n + l/2) t) E(t) - f2(t)`, a real cosine polynomial of integer
//! frequencies up to `n + l`. Its zeros on `[0, 2 pi)` are the unimodular
//! roots; `F` is even, so the count on the open half `(0, pi)` is doubled and
//! the orders of the zeros at `0` and `pi` (the roots `1` and `-1`) are read
//! off exactly from integer derivative sums.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::PI;

use super::census::{CensusMethod, RootCensus};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::solver::isolate::bisect;
use crate::trig::{envelope_series, f2_series, CosineSeries};

/// Cells of the half-period grid per unit of `n + l` (the full period gets
/// twice as many, `16 (n + l)`).
const CELLS_PER_DEGREE: usize = 8;
/// Offset of the grid from the multiples of `pi / cells`, where roots of
/// unity would otherwise land exactly on grid points.
const GRID_OFFSET: f64 = 0.618_033_988_749_894_8;
/// Relative rounding level of a computed value of a cosine polynomial, in
/// units of `sum |c_m| + pi sum |c_m| m`.
pub const SIGN_NOISE: f64 = 8.0 * f64::EPSILON;
/// Shifts, in cells, tried in turn when a grid point lands on a zero.
const GRID_NUDGES: [f64; 4] = [0.0, 0.25, -0.25, 0.125];

/// `2F` as integer cosine coefficients `c_m`, `m = 0..=n+l`.
pub fn doubled_f_coefficients(spec: &FamilySpec, n: u64) -> Result<Vec<i64>> {
    let e = envelope_series(spec)?;
    let carrier = CosineSeries::from_terms([((2 * n + spec.l() as u64) as u32, 1.0)]);
    let f = &carrier.mul(&e) - &f2_series(spec);
    let top = (n + spec.l() as u64) as usize;
    let mut c = vec![0i64; top + 1];
    for (nu, coeff) in f.terms() {
        let twice = 2.0 * coeff;
        let rounded = twice.round();
        if nu % 2 != 0 || (twice - rounded).abs() > 1e-9 || nu as usize / 2 > top {
            return Err(Error::RootFinder(format!(
                "unexpected term {coeff} cos({nu} t / 2) in F"
            )));
        }
        c[nu as usize / 2] = rounded as i64;
    }
    Ok(c)
}

/// Order of the zero of `sum c_m cos(m t)` at `t = 0` (`alternate = false`)
/// or `t = pi`, and the sign of the function just beside it.
fn endpoint_order(c: &[i64], alternate: bool) -> (usize, i8, f64) {
    for k in 0..=c.len() {
        let s: BigInt = c
            .iter()
            .enumerate()
            .map(|(m, &cm)| {
                let sign = if alternate && m % 2 == 1 { -1 } else { 1 };
                BigInt::from(sign * cm) * BigInt::from(m).pow(2 * k as u32)
            })
            .sum();
        if !s.is_zero() {
            // F^(2k) = (-1)^k sum c_m m^{2k} (times (-1)^m at pi)
            let positive = s.is_positive() == (k % 2 == 0);
            let magnitude = s.abs().to_f64().unwrap_or(f64::INFINITY);
            return (2 * k, if positive { 1 } else { -1 }, magnitude);
        }
    }
    unreachable!("a nonzero cosine polynomial has a finite-order zero")
}

/// Floor width below which a cell that is neither zero-free nor monotone is
/// treated as a single cluster of zeros.
const CLUSTER_WIDTH: f64 = 1e-9;
/// Highest derivative consulted when sizing a cluster.
const MAX_CLUSTER_ORDER: u32 = 16;
/// Taylor terms in the sign-keeping test of a derivative over a cell.
const TAYLOR_ORDER: u32 = 4;
const FACTORIALS: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];

struct Cosines<'a> {
    c: &'a [i64],
    /// `bounds[j] = sum |c_m| m^j`, a bound on `|F^(j)|`.
    bounds: Vec<f64>,
    /// Rounding error of a computed value of `F`; smaller values have no
    /// reliable sign.
    noise: f64,
}

/// An unresolved cell `(a, b)` with the signs of `F` at its ends.
type Cluster = (f64, f64, i8, i8);

impl<'a> Cosines<'a> {
    fn new(c: &'a [i64]) -> Self {
        let bounds = (0..=MAX_CLUSTER_ORDER + TAYLOR_ORDER)
            .map(|j| {
                c.iter()
                    .enumerate()
                    .map(|(m, &cm)| cm.unsigned_abs() as f64 * (m as f64).powi(j as i32))
                    .sum()
            })
            .collect::<Vec<f64>>();
        let noise = SIGN_NOISE * (bounds[0] + PI * bounds[1]);
        Cosines { c, bounds, noise }
    }

    fn value(&self, t: f64) -> f64 {
        self.derivative(t, 0)
    }

    /// `F^(j)(t) = sum c_m m^j cos(m t + j pi / 2)`.
    fn derivative(&self, t: f64, j: u32) -> f64 {
        self.c
            .iter()
            .enumerate()
            .map(|(m, &cm)| {
                let mf = m as f64;
                let trig = match j % 4 {
                    0 => (mf * t).cos(),
                    1 => -(mf * t).sin(),
                    2 => -(mf * t).cos(),
                    _ => (mf * t).sin(),
                };
                cm as f64 * mf.powi(j as i32) * trig
            })
            .sum()
    }

    /// `F^(j)` keeps its sign on the whole cell of half-width `r` about `t`:
    /// its value beats the Taylor terms of the next derivatives plus the
    /// remainder bound.
    fn nonvanishing(&self, t: f64, r: f64, j: u32) -> bool {
        let mut rest = self.bounds[(j + TAYLOR_ORDER) as usize] * r.powi(TAYLOR_ORDER as i32)
            / FACTORIALS[TAYLOR_ORDER as usize];
        for i in 1..TAYLOR_ORDER {
            rest += self.derivative(t, j + i).abs() * r.powi(i as i32) / FACTORIALS[i as usize];
        }
        self.derivative(t, j).abs() > rest
    }

    /// Zeros with multiplicity in `(a, b)`, where `F` has signs `sa`, `sb`
    /// at the ends. Unresolved leaves are pushed to `clusters` uncounted.
    fn count(&self, a: f64, b: f64, sa: i8, sb: i8, clusters: &mut Vec<Cluster>) -> Result<usize> {
        let (mid, r) = (0.5 * (a + b), 0.5 * (b - a));
        let changes = sa != sb;
        if self.nonvanishing(mid, r, 0) {
            return Ok(0);
        }
        if self.nonvanishing(mid, r, 1) {
            if changes {
                let z = bisect(|t| self.value(t), a, b);
                if self.value(z).abs() > 1e-6 * self.bounds[0] {
                    return Err(Error::GridInstability(format!(
                        "bracketed zero near {z} not confirmed"
                    )));
                }
            }
            return Ok(changes as usize);
        }
        if b - a > CLUSTER_WIDTH {
            // split off-centre when the midpoint value is lost in rounding
            for split in [mid, a + 0.381_966_011_250_105 * (b - a)] {
                let fs = self.value(split);
                if fs.abs() > self.noise {
                    let ss = if fs > 0.0 { 1 } else { -1 };
                    return Ok(self.count(a, split, sa, ss, clusters)?
                        + self.count(split, b, ss, sb, clusters)?);
                }
            }
        }
        clusters.push((a, b, sa, sb));
        Ok(0)
    }

    /// Zeros in a cluster: at most `j` by Rolle where `F^(j)` does not
    /// vanish, with the parity fixed by the end signs.
    fn size_cluster(&self, (a, b, sa, sb): Cluster) -> Result<usize> {
        let (mid, r) = (0.5 * (a + b), 0.5 * (b - a));
        let j = (1..=MAX_CLUSTER_ORDER)
            .find(|&j| self.nonvanishing(mid, r, j))
            .ok_or_else(|| {
                Error::GridInstability(format!("cluster of zeros near {mid} too deep to size"))
            })? as usize;
        let changes = sa != sb;
        Ok(if (j % 2 == 1) == changes { j } else { j - 1 })
    }

    /// Distance from an end where `|F| = value` within which `F` keeps its
    /// sign: `|F| - M_2 t^2 / 2 > 0` (`F` is even about both ends).
    fn clear_radius(&self, value: f64) -> f64 {
        (2.0 * value / self.bounds[2]).sqrt()
    }
}

/// `U(P)` for `P = expand(spec, n)`, counted with multiplicity.
///
/// The roots `1` and `-1` are divided out of `P` exactly; their counts must
/// equal the orders of the zeros of `F` at `0` and `pi`. The quotient `Q` is
/// reciprocal of even degree `2e`, so `G(t) = e^{-iet} Q(e^{it})` is a real
/// cosine polynomial nonzero at both ends, and its zeros in `(0, pi)` are
/// counted on a grid of `8 (n + l)` cells. Each cell is shown zero-free or
/// monotone from derivative bounds, bisecting where neither holds; a
/// monotone cell with a sign change holds one zero, confirmed by bisection.
/// A cell that shrinks to `CLUSTER_WIDTH` unresolved is a cluster, sized by
/// the first derivative that provably does not vanish on it.
pub fn count_unimodular_signchange(spec: &FamilySpec, n: u64) -> Result<usize> {
    if !spec.is_palindromic() {
        return Err(Error::NonPalindromic);
    }
    let p = spec.expand(n)?;
    let c = doubled_f_coefficients(spec, n)?;
    let (order0, _, _) = endpoint_order(&c, false);
    let (order_pi, _, _) = endpoint_order(&c, true);

    let mut q = p.clone();
    let mut mult = [0usize; 2];
    for (slot, root) in mult.iter_mut().zip([1i64, -1]) {
        while let Some(next) = q.deflate_unit_root(root) {
            q = next;
            *slot += 1;
        }
    }
    if mult != [order0, order_pi] {
        return Err(Error::GridInstability(format!(
            "F has end orders ({order0}, {order_pi}), P has roots 1 and -1 with multiplicities {mult:?}"
        )));
    }
    let half = q.degree() / 2;
    let g: Vec<i64> = (0..=half)
        .map(|m| {
            let v = q.coeffs()[half + m];
            if m == 0 { Ok(v) } else { v.checked_mul(2).ok_or(Error::Overflow) }
        })
        .collect::<Result<_>>()?;
    Ok(order0 + order_pi + 2 * count_open_half(&g, n as usize + spec.l())?)
}

/// Zeros with multiplicity in `(0, pi)` of `sum g_m cos(m t)`, which must be
/// nonzero at both ends.
fn count_open_half(g: &[i64], grid_degree: usize) -> Result<usize> {
    if g.len() <= 1 {
        return Ok(0);
    }
    let f = Cosines::new(g);
    let (o0, sign0, value0) = endpoint_order(g, false);
    let (opi, sign_pi, value_pi) = endpoint_order(g, true);
    if o0 != 0 || opi != 0 {
        return Err(Error::GridInstability("deflated polynomial still vanishes at 1 or -1".into()));
    }
    let cells = CELLS_PER_DEGREE * grid_degree.max(1);
    // short of the first and last (possibly nudged) grid points
    let end_gap = 0.1 * PI / cells as f64;
    let lo = f.clear_radius(value0).min(end_gap);
    let hi = PI - f.clear_radius(value_pi).min(end_gap);

    let mut ts = vec![lo];
    let mut signs = vec![sign0];
    for i in 0..cells {
        // a grid point on a zero moves aside within its cell
        let (t, v) = GRID_NUDGES
            .iter()
            .map(|nudge| {
                let t = PI * (i as f64 + GRID_OFFSET + nudge) / cells as f64;
                (t, f.value(t))
            })
            .find(|&(_, v)| v.abs() > f.noise)
            .ok_or_else(|| {
                Error::GridInstability(format!("F vanishes near grid point {}", PI * (i as f64 + GRID_OFFSET) / cells as f64))
            })?;
        ts.push(t);
        signs.push(if v > 0.0 { 1 } else { -1 });
    }
    ts.push(hi);
    signs.push(sign_pi);

    let mut interior = 0usize;
    let mut clusters = Vec::new();
    for i in 0..ts.len() - 1 {
        interior += f.count(ts[i], ts[i + 1], signs[i], signs[i + 1], &mut clusters)?;
    }
    // adjacent leaves belong to one cluster
    let mut merged: Vec<Cluster> = Vec::new();
    for cl in clusters {
        match merged.last_mut() {
            Some(last) if last.1 == cl.0 => {
                last.1 = cl.1;
                last.3 = cl.3;
            }
            _ => merged.push(cl),
        }
    }
    for cl in merged {
        interior += f.size_cluster(cl)?;
    }
    Ok(interior)
}

/// Census assembled from the sign-change count; reciprocity gives `I = E`.
pub fn census_signchange(spec: &FamilySpec, n: u64) -> Result<RootCensus> {
    let u = count_unimodular_signchange(spec, n)?;
    let d = spec.degree(n) as usize;
    if u > d || (d - u) % 2 != 0 {
        return Err(Error::GridInstability(format!(
            "{u} unimodular zeros for degree {d}"
        )));
    }
    Ok(RootCensus {
        degree: d,
        inside: (d - u) / 2,
        on_circle: u,
        outside: (d - u) / 2,
        method: CensusMethod::SignChange,
        tolerance: SIGN_NOISE,
    })
}
