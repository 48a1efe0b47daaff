//! Numeric roots of integer polynomials by simultaneous (Aberth-Ehrlich)
//! iteration.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::IntPolynomial;

/// Roots split by how they were found: the counts come from exact
/// arithmetic, `numeric` holds the computed roots of the remaining factor.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    /// Multiplicity of the root `0`.
    pub zero: usize,
    /// Multiplicities of `1` and `-1`.
    pub plus_one: usize,
    pub minus_one: usize,
    pub numeric: Vec<Complex64>,
    /// Ascending coefficients of the factor whose roots are `numeric`.
    pub factor: Vec<i64>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.zero + self.plus_one + self.minus_one + self.numeric.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Sweeps of simultaneous iteration before giving up.
const MAX_SWEEPS: usize = 2000;

/// `p(z)` and `p'(z)` by Horner's rule, coefficients ascending.
fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Newton correction `p(z) / p'(z)` and whether `p(z)` is at the level of
/// its rounding error. For `|z| > 1` the reversed polynomial is evaluated
/// at `1 / z`, which keeps the powers bounded.
fn newton_step(c: &[f64], rev: &[f64], abs: &[f64], z: Complex64) -> (Complex64, bool) {
    let n = (c.len() - 1) as f64;
    let small = |v: Complex64, r: f64, coeffs: &[f64]| {
        let bound = coeffs.iter().rev().fold(0.0, |acc, &a| acc * r + a);
        v.norm() <= 4.0 * f64::EPSILON * bound
    };
    if z.norm() <= 1.0 {
        let (p, dp) = horner(c, z);
        (p / dp, small(p, z.norm(), abs))
    } else {
        let w = z.inv();
        let (q, dq) = horner(rev, w);
        let rev_abs: Vec<f64> = abs.iter().rev().copied().collect();
        (z * q / (n * q - w * dq), small(q, w.norm(), &rev_abs))
    }
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(k, ln |a_k|)`, one circle per hull edge.
fn initial_points(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0.0)
        .map(|(k, &a)| (k, a.abs().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (i, j) = (w[0].0, w[1].0);
        let m = j - i;
        let radius = ((w[0].1 - w[1].1) / m as f64).exp();
        for q in 0..m {
            let angle = TAU * (q as f64 / m as f64 + i as f64 / n as f64) + 0.7;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

/// Aberth-Ehrlich iteration on all roots at once (Gauss-Seidel updates).
fn simultaneous_roots(coeffs: &[i64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let c: Vec<f64> = coeffs.iter().map(|&a| a as f64).collect();
    match d {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]),
        _ => {}
    }
    let rev: Vec<f64> = c.iter().rev().copied().collect();
    let abs: Vec<f64> = c.iter().map(|a| a.abs()).collect();
    let mut z = initial_points(&c);
    let mut done = vec![false; d];
    for _ in 0..MAX_SWEEPS {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (ratio, converged) = newton_step(&c, &rev, &abs, z[i]);
            if converged {
                done[i] = true;
                continue;
            }
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            // steps at rounding level: the residual test can miss by a few ulps
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            if z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
                return Err(Error::RootFinder("non-finite root".into()));
            }
            return Ok(z);
        }
    }
    Err(Error::RootFinder(format!("no convergence at degree {d}")))
}

/// Newton correction `p(z) / p'(z)` for integer coefficients `coeffs`.
pub fn newton_correction(coeffs: &[i64], z: Complex64) -> Complex64 {
    let c: Vec<f64> = coeffs.iter().map(|&a| a as f64).collect();
    let rev: Vec<f64> = c.iter().rev().copied().collect();
    let abs: Vec<f64> = c.iter().map(|a| a.abs()).collect();
    newton_step(&c, &rev, &abs, z).0
}

/// Refines the centre of a pool of `m` nearby roots of `coeffs` by Newton's
/// method on the `(m-1)`-th derivative, which has a simple root where the
/// polynomial has an `m`-fold one. Steps leaving `radius` are rejected.
pub fn refine_cluster(coeffs: &[i64], center: Complex64, m: usize, radius: f64) -> Complex64 {
    let mut d: Vec<f64> = coeffs.iter().map(|&a| a as f64).collect();
    for _ in 1..m {
        d = d.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect();
    }
    if d.len() < 2 {
        return center;
    }
    let mut z = center;
    for _ in 0..20 {
        let (v, dv) = horner(&d, z);
        if dv.norm() == 0.0 {
            break;
        }
        let next = z - v / dv;
        if (next - center).norm() > radius || !next.re.is_finite() {
            break;
        }
        let moved = (next - z).norm();
        z = next;
        if moved <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

/// All roots of `p` with multiplicity: zero roots and the factors `x - 1`,
/// `x + 1` are removed exactly, the rest numerically.
pub fn roots(p: &IntPolynomial) -> Result<RootSet> {
    let zero = p.low_order_zeros();
    let mut q = p.normalized();
    let mut mult = [0usize; 2];
    for (slot, root) in mult.iter_mut().zip([1i64, -1]) {
        while let Some(next) = q.deflate_unit_root(root) {
            q = next;
            *slot += 1;
        }
    }
    Ok(RootSet {
        zero,
        plus_one: mult[0],
        minus_one: mult[1],
        numeric: simultaneous_roots(q.coeffs())?,
        factor: q.coeffs().to_vec(),
    })
}

/// `M(P) = |lead| prod max(1, |root|)`.
pub fn mahler_univariate(p: &IntPolynomial) -> Result<f64> {
    let r = roots(p)?;
    let log: f64 = r.numeric.iter().map(|z| z.norm().ln().max(0.0)).sum();
    Ok((p.leading() as f64).abs() * log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn mahler_examples() {
        assert!((mahler_univariate(&poly(&[-3, 2])).unwrap() - 3.0).abs() < 1e-14);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((mahler_univariate(&poly(&[-1, -1, 1])).unwrap() - phi).abs() < 1e-9);
        let m = mahler_univariate(&poly(&[1, -1, -1, -1, 1])).unwrap();
        assert!((m - 1.7220838).abs() < 1e-6, "{m}");
        // Kronecker: products of cyclotomic polynomials have measure 1
        // (x^2 + x + 1)(x^2 + 1)
        let m = mahler_univariate(&poly(&[1, 1, 2, 1, 1])).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!((mahler_univariate(&poly(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_parts_are_split_off() {
        // x^2 (x - 1)^2 (x + 1) (x^2 + 1)
        let p = poly(&[0, 0, 1, -1, 0, 0, -1, 1]);
        let r = roots(&p).unwrap();
        assert_eq!((r.zero, r.plus_one, r.minus_one, r.numeric.len()), (2, 2, 1, 2));
        for z in &r.numeric {
            assert!((z.norm() - 1.0).abs() < 1e-14 && z.re.abs() < 1e-14);
        }
    }

    #[test]
    fn roots_satisfy_the_polynomial() {
        let c = [3i64, -2, 0, 5, 1, -1, 4];
        let r = roots(&poly(&c)).unwrap();
        assert_eq!(r.len(), 6);
        for z in &r.numeric {
            let v = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a as f64);
            assert!(v.norm() < 1e-10 * (1.0 + z.norm().powi(6)), "{z} -> {v}");
        }
    }

    #[test]
    fn widely_spread_moduli() {
        // (1000x - 1)(x - 1)(x - 1000): roots 1e-3, 1, 1e3
        let p = poly(&[-1000, 1_001_001, -1_001_001, 1000]);
        let r = roots(&p).unwrap();
        assert_eq!(r.plus_one, 1);
        let mut moduli: Vec<f64> = r.numeric.iter().map(|z| z.norm()).collect();
        moduli.sort_by(f64::total_cmp);
        assert!((moduli[0] - 1e-3).abs() < 1e-15);
        assert!((moduli[1] - 1e3).abs() < 1e-10);
    }

    #[test]
    fn sparse_polynomial_with_paired_starting_circles() {
        // (x + 1)(x^107 + 1) + x^52 (x^2 + 1)^2
        let mut c = vec![0i64; 109];
        for (e, v) in [(0, 1), (1, 1), (52, 1), (54, 2), (56, 1), (107, 1), (108, 1)] {
            c[e] = v;
        }
        let r = roots(&poly(&c)).unwrap();
        assert_eq!(r.numeric.len(), 108);
    }
}
