//! Real root isolation on the half period `[0, pi]`.
//!
//! Roots are bracketed on a uniform grid whose density scales with the
//! degree of the underlying cosine polynomial, then refined by bisection.
//! Cells with no sign change are searched for an interior extremum, which
//! either touches zero (a tangency, kept as a crossing without a sign
//! change) or dips across it (two close roots inside one cell).

use std::f64::consts::PI;

use crate::trig::ChebPoly;

/// Values below `ZERO_TOLERANCE * scale` count as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// A function of the angle whose real zeros on `[0, pi]` are wanted.
pub trait CrossingFunction {
    /// Signed value; only its sign and its zeros matter.
    fn value(&self, theta: f64) -> f64;
    /// Derivative of a function with the same zeros and signs as `value`.
    fn slope(&self, theta: f64) -> f64;
    /// Degree of the cosine polynomial bounding the number of zeros.
    fn degree(&self) -> usize;
    /// Coefficient magnitude used to scale the zero tolerance.
    fn scale(&self) -> f64;
}

impl CrossingFunction for ChebPoly {
    fn value(&self, theta: f64) -> f64 {
        self.eval_angle(theta)
    }

    fn slope(&self, theta: f64) -> f64 {
        self.eval_angle_derivative(theta)
    }

    fn degree(&self) -> usize {
        ChebPoly::degree(self)
    }

    fn scale(&self) -> f64 {
        self.norm1()
    }
}

fn sign(v: f64, tol: f64) -> i8 {
    if v.abs() <= tol {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Bisects a sign change of `g` on `[lo, hi]` down to floating resolution.
pub(crate) fn bisect<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All zeros of `f` in `[0, pi]`, sorted, tangencies included once.
pub fn isolate_roots<F: CrossingFunction + ?Sized>(f: &F) -> Vec<f64> {
    let cells = 32 * f.degree().max(1) + 64;
    let tol = ZERO_TOLERANCE * f.scale();
    let grid: Vec<f64> = (0..=cells)
        .map(|i| if i == cells { PI } else { PI * i as f64 / cells as f64 })
        .collect();
    let signs: Vec<i8> = grid.iter().map(|&t| sign(f.value(t), tol)).collect();

    let mut roots: Vec<f64> = grid
        .iter()
        .zip(&signs)
        .filter(|(_, &s)| s == 0)
        .map(|(&t, _)| t)
        .collect();

    for i in 0..cells {
        let (a, b) = (grid[i], grid[i + 1]);
        let (sa, sb) = (signs[i], signs[i + 1]);
        if sa == 0 || sb == 0 {
            continue;
        }
        if sa != sb {
            roots.push(bisect(|t| f.value(t), a, b));
            continue;
        }
        let (da, db) = (f.slope(a), f.slope(b));
        if da * db >= 0.0 {
            continue;
        }
        let m = bisect(|t| f.slope(t), a, b);
        match sign(f.value(m), tol) {
            0 => roots.push(m),
            sm if sm != sa => {
                roots.push(bisect(|t| f.value(t), a, m));
                roots.push(bisect(|t| f.value(t), m, b));
            }
            _ => {}
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-13);
    roots
}
