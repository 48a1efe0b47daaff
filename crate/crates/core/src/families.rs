//! Named families: the bivariate P, Q, R, S pairs on `u in [0, 1]`, the
//! H family with all-ones envelope, and the T family built from powers of
//! the roots of the Salem polynomial `x^4 - x^3 - x^2 - x + 1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{FamilySpec, IntPolynomial};
use crate::solver::{CurvePair, Domain};
use crate::trig::{CosineSeries, SineSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyName {
    P,
    Q,
    R,
    S,
    H,
    T,
}

/// `{"family": "P", "a": 2, "b": 3}`, `{"family": "S", "a": 1, "b": 3,
/// "epsilon": 1}`, `{"family": "H", "m": 5}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    pub family: FamilyName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

impl FamilyParams {
    pub fn pqr(family: FamilyName, a: u32, b: u32) -> Self {
        FamilyParams {
            family,
            a: Some(a),
            b: Some(b),
            epsilon: None,
            m: None,
        }
    }

    pub fn s(a: u32, b: u32, epsilon: i32) -> Self {
        FamilyParams {
            epsilon: Some(epsilon),
            ..Self::pqr(FamilyName::S, a, b)
        }
    }

    pub fn indexed(family: FamilyName, m: u32) -> Self {
        FamilyParams {
            family,
            a: None,
            b: None,
            epsilon: None,
            m: Some(m),
        }
    }

    /// Checks that exactly the parameters of the family are present.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidFamily(format!("{:?}: {msg}", self.family)));
        match self.family {
            FamilyName::P | FamilyName::Q | FamilyName::R | FamilyName::S => {
                if self.m.is_some() {
                    return bad("takes a and b, not m");
                }
                match (self.a, self.b) {
                    (Some(a), Some(b)) if a >= 1 && b >= 1 => {}
                    _ => return bad("a and b must be positive integers"),
                }
                match (self.family, self.epsilon) {
                    (FamilyName::S, Some(1 | -1)) => Ok(()),
                    (FamilyName::S, _) => bad("epsilon must be 1 or -1"),
                    (_, None) => Ok(()),
                    (_, Some(_)) => bad("epsilon applies to S only"),
                }
            }
            FamilyName::H | FamilyName::T => {
                if self.a.is_some() || self.b.is_some() || self.epsilon.is_some() {
                    return bad("takes m only");
                }
                let min = if self.family == FamilyName::H { 2 } else { 1 };
                match self.m {
                    Some(m) if m >= min => Ok(()),
                    _ => bad(&format!("m must be an integer >= {min}")),
                }
            }
        }
    }

    /// Label in the style `P(2,3)`, `S(1,3,+)`, `H(5)`.
    pub fn label(&self) -> String {
        let name = format!("{:?}", self.family);
        match (self.a, self.b, self.epsilon, self.m) {
            (Some(a), Some(b), Some(e), _) => {
                format!("{name}({a},{b},{})", if e > 0 { '+' } else { '-' })
            }
            (Some(a), Some(b), None, _) => format!("{name}({a},{b})"),
            (_, _, _, Some(m)) => format!("{name}({m})"),
            _ => name,
        }
    }
}

/// The pair `(f2, E)` in `theta = pi u`:
///
/// | family | f2 | E |
/// |---|---|---|
/// | P | `sin(b theta/2)` | `2 sin(a theta/2)` |
/// | Q | `cos(b theta/2)` | `2 cos(a theta/2)` |
/// | R | `sin(b theta/2)` | `2 cos(a theta/2)` |
/// | S | `cos((a+b) theta/2) + eps cos(abs(b-a) theta/2)` | `1` |
pub fn bivariate_pair(params: &FamilyParams) -> Result<CurvePair> {
    params.validate()?;
    let (Some(a), Some(b)) = (params.a, params.b) else {
        return Err(Error::InvalidFamily(format!(
            "{:?} has no bivariate pair; use its spec",
            params.family
        )));
    };
    let pair = match params.family {
        FamilyName::P => CurvePair::new(
            SineSeries::from_terms([(b, 1.0)]).into(),
            SineSeries::from_terms([(a, 2.0)]).into(),
            Domain::HalfTurn,
        ),
        FamilyName::Q => CurvePair::new(
            CosineSeries::from_terms([(b, 1.0)]).into(),
            CosineSeries::from_terms([(a, 2.0)]).into(),
            Domain::HalfTurn,
        ),
        FamilyName::R => CurvePair::new(
            SineSeries::from_terms([(b, 1.0)]).into(),
            CosineSeries::from_terms([(a, 2.0)]).into(),
            Domain::HalfTurn,
        ),
        FamilyName::S => {
            let eps = params.epsilon.expect("validated") as f64;
            CurvePair::new(
                CosineSeries::from_terms([(a + b, 1.0), (a.abs_diff(b), eps)]).into(),
                CosineSeries::constant(1.0).into(),
                Domain::HalfTurn,
            )
        }
        FamilyName::H | FamilyName::T => unreachable!("validated"),
    };
    Ok(pair)
}

/// The pair of any family: the bivariate pairs for P, Q, R, S, and the pair of
/// the family's spec for H and T.
pub fn family_pair(params: &FamilyParams) -> Result<CurvePair> {
    match family_spec(params)? {
        Some(spec) => CurvePair::from_spec(&spec),
        None => bivariate_pair(params),
    }
}

/// The spec of an H or T family member, `None` for the bivariate families.
pub fn family_spec(params: &FamilyParams) -> Result<Option<FamilySpec>> {
    params.validate()?;
    match (params.family, params.m) {
        (FamilyName::H, Some(m)) => h_family_spec(m).map(Some),
        (FamilyName::T, Some(m)) => t_family_spec(m).map(Some),
        _ => Ok(None),
    }
}

/// Sparse Laurent polynomial in `x` times powers of `y`: `(x_exp, y_exp, c)`.
type Terms = Vec<(i64, u32, i64)>;

fn phi(a: u32) -> impl Iterator<Item = i64> {
    0..a as i64
}

/// `P(x, x^N)` for the bivariate polynomial of the family, expanded.
pub fn specialize_bivariate(params: &FamilyParams, big_n: u32) -> Result<IntPolynomial> {
    params.validate()?;
    if big_n == 0 {
        return Err(Error::InvalidFamily("N must be positive".into()));
    }
    let (Some(a), Some(b)) = (params.a, params.b) else {
        return Err(Error::InvalidFamily(format!(
            "{:?} is not a bivariate family",
            params.family
        )));
    };
    let (ai, bi) = (a as i64, b as i64);
    let shift = (ai - bi).max(0);
    let mut terms: Terms = Vec::new();
    match params.family {
        FamilyName::P => {
            terms.extend(phi(a).map(|j| (j, 0, 1)));
            terms.extend(phi(b).map(|j| (j, 1, 1)));
            terms.extend(phi(a).map(|j| (bi - ai + j, 2, 1)));
        }
        FamilyName::Q | FamilyName::R => {
            let s = if params.family == FamilyName::Q { 1 } else { -1 };
            terms.extend([(0, 0, 1), (ai, 0, 1)]);
            terms.extend([(0, 1, 1), (bi, 1, s)]);
            terms.extend([(bi - ai, 2, s), (bi, 2, s)]);
        }
        FamilyName::S => {
            let e = params.epsilon.expect("validated") as i64;
            terms.push((0, 0, 1));
            terms.extend([(ai + bi, 1, 1), (ai, 1, e), (bi, 1, e), (0, 1, e * e)]);
            terms.push((ai + bi, 2, 1));
        }
        FamilyName::H | FamilyName::T => unreachable!("validated"),
    }
    let offset = match params.family {
        FamilyName::S => 0,
        _ => shift,
    };
    let exps: Vec<(usize, i64)> = terms
        .iter()
        .map(|&(xe, ye, c)| ((xe + offset) as usize + ye as usize * big_n as usize, c))
        .collect();
    let deg = exps.iter().map(|&(e, _)| e).max().unwrap_or(0);
    let mut coeffs = vec![0i64; deg + 1];
    for (e, c) in exps {
        coeffs[e] += c;
    }
    IntPolynomial::new(coeffs)
}

/// `H_m`: `k = 0`, `l = m - 1`, `a = (1)`, `b = (1, ..., 1)`.
pub fn h_family_spec(m: u32) -> Result<FamilySpec> {
    if m < 2 {
        return Err(Error::InvalidFamily(format!("H needs m >= 2, got {m}")));
    }
    FamilySpec::new(0, m as i64 - 1, vec![1], vec![1; m as usize])
}

/// Lower and upper bounds on the limit ratio of `H_m`:
/// `c / (pi (2m + 1))` and `c / (6m - pi)` with
/// `c = 2 sin((m - 1) pi / (2m)) / sin(pi / (2m))`.
pub fn hbounds(m: u32) -> (f64, f64) {
    let m = m as f64;
    let factor = ((m - 1.0) * PI / (2.0 * m)).sin() / (PI / (2.0 * m)).sin();
    (
        2.0 / (PI * (2.0 * m + 1.0)) * factor,
        2.0 / (6.0 * m - PI) * factor,
    )
}

/// Power sums `p_m` of the roots of `x^4 - x^3 - x^2 - x + 1`, via Newton's
/// recurrence `p_m = p_{m-1} + p_{m-2} + p_{m-3} - p_{m-4}`.
pub fn salem_power_sums(max_m: u32) -> Result<Vec<i64>> {
    let mut p: Vec<i64> = vec![4, 1, 3, 7];
    while p.len() <= max_m as usize {
        let k = p.len();
        let next = p[k - 1]
            .checked_add(p[k - 2])
            .and_then(|v| v.checked_add(p[k - 3]))
            .and_then(|v| v.checked_sub(p[k - 4]))
            .ok_or(Error::Overflow)?;
        p.push(next);
    }
    p.truncate(max_m as usize + 1);
    Ok(p)
}

/// `(b1, b2)` of the minimal-degree reciprocal quartic with roots `alpha^m`
/// over the roots `alpha` of `x^4 - x^3 - x^2 - x + 1`:
/// `b1 = -p_m` and `b2 = sum_{i<j} (alpha_i alpha_j)^m`.
///
/// `b2` is evaluated in floating point from the roots `gamma^{+-1}` and
/// `e^{+-i phi}` and must round to an integer within `1e-6`.
pub fn salem_power_coeffs(m: u32) -> Result<(i64, i64)> {
    if m == 0 {
        return Err(Error::InvalidFamily("T needs m >= 1".into()));
    }
    let p = salem_power_sums(m)?;
    let b1 = -p[m as usize];
    // x^4 - x^3 - x^2 - x + 1 = (x^2 - s x + 1)(x^2 - s' x + 1)
    let s = (1.0 + 13f64.sqrt()) / 2.0;
    let s_conj = (1.0 - 13f64.sqrt()) / 2.0;
    let gamma = (s + (s * s - 4.0).sqrt()) / 2.0;
    let phi = (s_conj / 2.0).acos();
    let mf = m as f64;
    // the two products gamma / gamma and e^{i phi} e^{-i phi} contribute 1 each
    let value = 2.0 + 2.0 * (mf * phi).cos() * (gamma.powf(mf) + gamma.powf(-mf));
    let rounded = value.round();
    if (value - rounded).abs() > 1e-6 || rounded.abs() > 2f64.powi(53) {
        return Err(Error::Integrality { m, value });
    }
    Ok((b1, rounded as i64))
}

/// `T_m`: `k = 0`, `l = 4`, `a = (2)`, `b = (1, b1, b2, b1, 1)`.
pub fn t_family_spec(m: u32) -> Result<FamilySpec> {
    let (b1, b2) = salem_power_coeffs(m)?;
    FamilySpec::new(0, 4, vec![2], vec![1, b1, b2, b1, 1])
}

/// `cos alpha_m` and `cos beta_m`, the roots of `E_m = 1` and `E_m = -1` in
/// `cos t` taken with the minus sign, written in the cancellation-free form
/// `(b2 - 3) / (-b1 + sqrt(b1^2 - 4 b2 + 12))` (and `- 1`, `+ 4`).
pub fn t_family_closed_forms(m: u32) -> Result<(f64, f64)> {
    let (b1, b2) = salem_power_coeffs(m)?;
    let root = |shift: i128, offset: i64| {
        let disc = (b1 as i128) * (b1 as i128) - 4 * (b2 as i128) + shift;
        (b2 - offset) as f64 / (-(b1 as f64) + (disc as f64).sqrt())
    };
    Ok((root(12, 3), root(4, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::limit_ratio_exact;

    #[test]
    fn pair_examples() {
        let pair = bivariate_pair(&FamilyParams::pqr(FamilyName::P, 2, 3)).unwrap();
        for u in [0.1, 0.37, 0.9] {
            let t = PI * u;
            assert!((pair.f2().eval(t) - (1.5 * PI * u).sin()).abs() < 1e-15);
            assert!((pair.envelope().eval(t) - 2.0 * (PI * u).sin()).abs() < 1e-15);
        }
        let pair = bivariate_pair(&FamilyParams::s(1, 3, 1)).unwrap();
        for u in [0.1, 0.37, 0.9] {
            let t = PI * u;
            let f = (2.0 * PI * u).cos() + (PI * u).cos();
            assert!((pair.f2().eval(t) - f).abs() < 1e-15);
            assert_eq!(pair.envelope().eval(t), 1.0);
        }
        let pair = bivariate_pair(&FamilyParams::pqr(FamilyName::R, 1, 5)).unwrap();
        for u in [0.1, 0.37, 0.9] {
            let t = PI * u;
            assert!((pair.f2().eval(t) - (2.5 * PI * u).sin()).abs() < 1e-15);
            assert!((pair.envelope().eval(t) - 2.0 * (0.5 * PI * u).cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn validation() {
        assert!(bivariate_pair(&FamilyParams::indexed(FamilyName::H, 3)).is_err());
        assert!(FamilyParams::s(1, 3, 0).validate().is_err());
        assert!(FamilyParams::pqr(FamilyName::P, 0, 3).validate().is_err());
        assert!(FamilyParams::indexed(FamilyName::H, 1).validate().is_err());
        assert!(FamilyParams::indexed(FamilyName::T, 1).validate().is_ok());
        let json = r#"{"family":"P","a":2,"b":3}"#;
        let p: FamilyParams = serde_json::from_str(json).unwrap();
        assert_eq!(p, FamilyParams::pqr(FamilyName::P, 2, 3));
        assert_eq!(serde_json::to_string(&p).unwrap(), json);
        assert!(serde_json::from_str::<FamilyParams>(r#"{"family":"X"}"#).is_err());
        assert_eq!(FamilyParams::s(1, 3, -1).label(), "S(1,3,-)");
    }

    #[test]
    fn bivariate_examples() {
        let p = specialize_bivariate(&FamilyParams::pqr(FamilyName::P, 2, 3), 2).unwrap();
        assert_eq!(p.coeffs(), &[1; 7]);
        let p = specialize_bivariate(&FamilyParams::pqr(FamilyName::P, 1, 1), 1).unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 1]);
        // 1 + (x + 1)(x^3 + 1) x^2 + x^4 x^4
        let p = specialize_bivariate(&FamilyParams::s(1, 3, 1), 2).unwrap();
        assert_eq!(p.coeffs(), &[1, 0, 1, 1, 0, 1, 1, 0, 1]);
        // a > b shifts by x^(a - b): P(3,1) = x^2 (phi_3 + y + x^-2 phi_3 y^2)
        let p = specialize_bivariate(&FamilyParams::pqr(FamilyName::P, 3, 1), 5).unwrap();
        let mut expected = vec![0i64; 13];
        for j in 2..5 {
            expected[j] = 1;
        }
        expected[7] = 1;
        for j in 10..13 {
            expected[j] = 1;
        }
        assert_eq!(p.coeffs(), expected.as_slice());
    }

    #[test]
    fn specialized_polynomials_are_reciprocal() {
        let params = [
            FamilyParams::pqr(FamilyName::P, 2, 3),
            FamilyParams::pqr(FamilyName::P, 4, 7),
            FamilyParams::pqr(FamilyName::Q, 1, 6),
            FamilyParams::s(1, 3, 1),
            FamilyParams::s(2, 5, -1),
        ];
        for p in params {
            for n in [7, 20] {
                let poly = specialize_bivariate(&p, n).unwrap().normalized();
                assert!(poly.is_reciprocal(), "{p:?} at {n}");
            }
        }
        // R is anti-reciprocal: x^d P(1/x) = -P(x)
        let poly = specialize_bivariate(&FamilyParams::pqr(FamilyName::R, 1, 5), 9).unwrap();
        let c = poly.normalized().coeffs().to_vec();
        let rev: Vec<i64> = c.iter().rev().map(|v| -v).collect();
        assert_eq!(c, rev);
    }

    #[test]
    fn h_family() {
        assert_eq!(h_family_spec(2).unwrap(), FamilySpec::new(0, 1, vec![1], vec![1, 1]).unwrap());
        assert_eq!(h_family_spec(3).unwrap().b(), &[1, 1, 1]);
        assert_eq!(h_family_spec(5).unwrap().b().len(), 5);
        assert!(h_family_spec(1).is_err());
    }

    #[test]
    fn hbounds_examples() {
        let (lo, hi) = hbounds(2);
        assert!((lo - 2.0 / (5.0 * PI)).abs() < 1e-15);
        assert!((hi - 2.0 / (12.0 - PI)).abs() < 1e-15);
        let (lo, hi) = hbounds(1_000_000);
        assert!((lo - 2.0 / (PI * PI)).abs() < 1e-6);
        assert!((hi - 2.0 / (3.0 * PI)).abs() < 1e-6);
        for m in 2..500 {
            let (lo, hi) = hbounds(m);
            assert!(lo < hi);
        }
    }

    #[test]
    fn h_family_limit_inside_bounds() {
        for m in 2..=50 {
            let lc = limit_ratio_exact(&h_family_spec(m).unwrap()).unwrap().lc;
            let (lo, hi) = hbounds(m);
            assert!(lo < lc && lc < hi, "m = {m}: {lo} < {lc} < {hi}");
        }
    }

    #[test]
    fn salem_coefficients() {
        assert_eq!(salem_power_coeffs(1).unwrap(), (-1, -1));
        assert_eq!(salem_power_coeffs(2).unwrap(), (-3, 1));
        assert_eq!(salem_power_coeffs(3).unwrap().0, -7);
        // exact oracle: e_2 of the m-th powers is (p_m^2 - p_{2m}) / 2
        let p = salem_power_sums(60).unwrap();
        for m in 1..=30u32 {
            let pm = p[m as usize] as i128;
            let exact = (pm * pm - p[2 * m as usize] as i128) / 2;
            assert_eq!(salem_power_coeffs(m).unwrap(), (-(pm as i64), exact as i64), "m = {m}");
        }
        assert!(salem_power_coeffs(0).is_err());
    }

    #[test]
    fn salem_power_sums_from_roots() {
        let s = (1.0 + 13f64.sqrt()) / 2.0;
        let gamma = (s + (s * s - 4.0).sqrt()) / 2.0;
        let phi = ((1.0 - 13f64.sqrt()) / 4.0).acos();
        for (m, &pm) in salem_power_sums(20).unwrap().iter().enumerate() {
            let mf = m as f64;
            let numeric = gamma.powf(mf) + gamma.powf(-mf) + 2.0 * (mf * phi).cos();
            assert!((numeric - pm as f64).abs() < 1e-9 * numeric.abs().max(1.0), "m = {m}");
        }
    }

    #[test]
    fn t_family() {
        assert_eq!(t_family_spec(1).unwrap().b(), &[1, -1, -1, -1, 1]);
        assert_eq!(t_family_spec(2).unwrap().b(), &[1, -3, 1, -3, 1]);
        for m in 1..=30 {
            let s = t_family_spec(m).unwrap();
            assert!(s.is_palindromic());
            assert_eq!(s.a(), &[2]);
        }
    }

    #[test]
    fn t_family_closed_forms_match_the_direct_formula() {
        for m in 1..=12 {
            let (b1, b2) = salem_power_coeffs(m).unwrap();
            let (b1, b2) = (b1 as f64, b2 as f64);
            let direct_a = (-b1 - (b1 * b1 - 4.0 * b2 + 12.0).sqrt()) / 4.0;
            let direct_b = (-b1 - (b1 * b1 - 4.0 * b2 + 4.0).sqrt()) / 4.0;
            let (ca, cb) = t_family_closed_forms(m).unwrap();
            assert!((ca - direct_a).abs() < 1e-12 && (cb - direct_b).abs() < 1e-12, "m = {m}");
        }
    }
}
