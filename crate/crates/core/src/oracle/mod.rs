//! Ground truth from concrete members of a sequence.

pub mod census;
pub mod roots;
pub mod signchange;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{FamilySpec, IntPolynomial};
use crate::solver::limit_ratio_exact;

pub use census::{count_roots_modulus, CensusMethod, RootCensus, DEFAULT_TOLERANCE};
pub use roots::mahler_univariate;
pub use signchange::{census_signchange, count_unimodular_signchange};

/// Sign-change and modulus censuses of `expand(spec, n)`, required to agree.
pub fn census_dual(spec: &FamilySpec, n: u64, tau: f64) -> Result<(RootCensus, RootCensus)> {
    let sign = census_signchange(spec, n)?;
    let modulus = count_roots_modulus(&spec.expand(n)?, tau)?;
    if sign.on_circle != modulus.on_circle {
        return Err(Error::GridInstability(format!(
            "sign changes give U = {}, moduli give U = {} at n = {n}",
            sign.on_circle, modulus.on_circle
        )));
    }
    Ok((sign, modulus))
}

/// `C(P) = (I + E) / d` for `P = expand(spec, n)`: from sign changes when the
/// spec is palindromic, from root moduli otherwise.
pub fn c_ratio(spec: &FamilySpec, n: u64) -> Result<f64> {
    let census = if spec.is_palindromic() {
        census_signchange(spec, n)?
    } else {
        count_roots_modulus(&spec.expand(n)?, DEFAULT_TOLERANCE)?
    };
    Ok(census.nonunimodular() as f64 / census.degree as f64)
}

/// `C(P)` for an arbitrary polynomial, from root moduli.
pub fn c_ratio_polynomial(p: &IntPolynomial) -> Result<f64> {
    let census = count_roots_modulus(p, DEFAULT_TOLERANCE)?;
    Ok(census.nonunimodular() as f64 / census.degree as f64)
}

/// `D = sqrt(ln(L / sqrt(|b_0 b_l|)))`, with `L = 2 sum |b_j| + |a_0| +
/// 2 sum_{j >= 1} |a_j|` the length of a member of the sequence.
pub fn erdos_turan_constant(spec: &FamilySpec) -> f64 {
    let b = spec.b();
    let a = spec.a();
    let length = 2.0 * b.iter().map(|v| v.unsigned_abs() as f64).sum::<f64>()
        + a[0].unsigned_abs() as f64
        + 2.0 * a[1..].iter().map(|v| v.unsigned_abs() as f64).sum::<f64>();
    let ends = ((b[0] as f64) * (b[spec.l()] as f64)).abs().sqrt();
    (length / ends).ln().sqrt()
}

/// `16 r D / sqrt(2n + 2l)`.
pub fn erdos_turan_bound(spec: &FamilySpec, n: u64, r: usize) -> f64 {
    16.0 * r as f64 * erdos_turan_constant(spec) / (spec.degree(n) as f64).sqrt()
}

/// The same bound for an arbitrary polynomial, with its own length and end
/// coefficients.
pub fn erdos_turan_bound_polynomial(p: &IntPolynomial, r: usize) -> f64 {
    let q = p.normalized();
    let c = q.coeffs();
    let ends = ((c[0] as f64) * (q.leading() as f64)).abs().sqrt();
    let d = (q.abs_coeff_sum() / ends).ln().sqrt();
    16.0 * r as f64 * d / (p.degree() as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub degree: u64,
    pub c: f64,
    pub abs_err: f64,
    pub et_bound: f64,
}

impl ConvergenceRow {
    pub fn within_bound(&self) -> bool {
        self.abs_err <= self.et_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub lc: f64,
    pub r: usize,
    pub d_constant: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn all_within_bound(&self) -> bool {
        self.rows.iter().all(ConvergenceRow::within_bound)
    }
}

/// One row per `n` comparing `C(P_{2n+2l})` with the limit `lc`; `r` comes
/// from the solver's interval set.
pub fn convergence_report(spec: &FamilySpec, n_list: &[u64], lc: f64) -> Result<ConvergenceReport> {
    let r = limit_ratio_exact(spec)?.interval_count();
    let rows = n_list
        .iter()
        .map(|&n| convergence_row(spec, n, lc, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        lc,
        r,
        d_constant: erdos_turan_constant(spec),
        rows,
    })
}

/// A single row of [`convergence_report`].
pub fn convergence_row(spec: &FamilySpec, n: u64, lc: f64, r: usize) -> Result<ConvergenceRow> {
    let c = c_ratio(spec, n)?;
    Ok(ConvergenceRow {
        n,
        degree: spec.degree(n),
        c,
        abs_err: (c - lc).abs(),
        et_bound: erdos_turan_bound(spec, n, r),
    })
}
