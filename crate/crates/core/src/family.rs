//! Polynomial families of the form
//!
//! ```text
//! P(x) = x^(n+l) * ( sum_{j=0..l} b_j (x^(n+j) + x^-(n+j))
//!                    + a_0 + sum_{j=1..k} a_j (x^j + x^-j) )
//! ```
//!
//! A [`FamilySpec`] carries the fixed data `(k, l, a, b)`; the sequence
//! index `n` is supplied at expansion time so one spec serves every degree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unvalidated spec data, as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub k: i64,
    pub l: i64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

/// Validated family data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    k: usize,
    l: usize,
    a: Vec<i64>,
    b: Vec<i64>,
    palindromic: bool,
}

impl FamilySpec {
    pub fn new(k: i64, l: i64, a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        validate_spec(RawSpec { k, l, a, b })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Central coefficients `a_0..a_k`.
    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// Peripheral coefficients `b_0..b_l`.
    pub fn b(&self) -> &[i64] {
        &self.b
    }

    /// `b_j == b_{l-j}` for all `j`.
    pub fn is_palindromic(&self) -> bool {
        self.palindromic
    }

    pub fn degree(&self, n: u64) -> u64 {
        2 * n + 2 * self.l as u64
    }

    /// Returns the same spec with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: i64) -> Result<Self> {
        let mul = |v: &[i64]| -> Result<Vec<i64>> {
            v.iter()
                .map(|&c| c.checked_mul(factor).ok_or(Error::Overflow))
                .collect()
        };
        FamilySpec::new(self.k as i64, self.l as i64, mul(&self.a)?, mul(&self.b)?)
    }

    pub fn to_raw(&self) -> RawSpec {
        RawSpec {
            k: self.k as i64,
            l: self.l as i64,
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Expands the member of the sequence with index `n` (degree `2n + 2l`).
    pub fn expand(&self, n: u64) -> Result<IntPolynomial> {
        expand_polynomial(self, n)
    }
}

/// Checks the structural constraints on raw spec data.
///
/// `2n > k` is not checked here; it depends on the expansion index.
pub fn validate_spec(raw: RawSpec) -> Result<FamilySpec> {
    if raw.k < 0 {
        return Err(Error::InvalidSpec(format!("k must be nonnegative, got {}", raw.k)));
    }
    if raw.l < 0 {
        return Err(Error::InvalidSpec(format!("l must be nonnegative, got {}", raw.l)));
    }
    let (k, l) = (raw.k as usize, raw.l as usize);
    if raw.a.len() != k + 1 {
        return Err(Error::InvalidSpec(format!(
            "a must have k + 1 = {} entries, got {}",
            k + 1,
            raw.a.len()
        )));
    }
    if raw.b.len() != l + 1 {
        return Err(Error::InvalidSpec(format!(
            "b must have l + 1 = {} entries, got {}",
            l + 1,
            raw.b.len()
        )));
    }
    if raw.b[0] == 0 {
        return Err(Error::ZeroEndpoint { which: "b_0" });
    }
    if raw.b[l] == 0 {
        return Err(Error::ZeroEndpoint { which: "b_l" });
    }
    if k > 0 && raw.a[k] == 0 {
        return Err(Error::InvalidSpec("a_k may be zero only when k = 0".into()));
    }
    let palindromic = (0..=l).all(|j| raw.b[j] == raw.b[l - j]);
    Ok(FamilySpec {
        k,
        l,
        a: raw.a,
        b: raw.b,
        palindromic,
    })
}

/// Expands `spec` at index `n` into a dense integer polynomial of degree
/// exactly `2n + 2l`.
pub fn expand_polynomial(spec: &FamilySpec, n: u64) -> Result<IntPolynomial> {
    // n + l >= k keeps the a-block from reaching negative powers of x.
    if 2 * n <= spec.k as u64 || n + (spec.l as u64) < spec.k as u64 {
        return Err(Error::DegreeTooSmall { n, k: spec.k });
    }
    let n = usize::try_from(n).map_err(|_| Error::Overflow)?;
    let l = spec.l;
    let center = n + l;
    let mut coeffs = vec![0i64; 2 * center + 1];
    let mut add = |idx: usize, c: i64| -> Result<()> {
        coeffs[idx] = coeffs[idx].checked_add(c).ok_or(Error::Overflow)?;
        Ok(())
    };
    for (j, &bj) in spec.b.iter().enumerate() {
        add(center + n + j, bj)?;
        add(center - n - j, bj)?;
    }
    add(center, spec.a[0])?;
    for (j, &aj) in spec.a.iter().enumerate().skip(1) {
        add(center + j, aj)?;
        add(center - j, aj)?;
    }
    if coeffs[2 * center] == 0 {
        return Err(Error::LeadingCancellation { n: n as u64 });
    }
    Ok(IntPolynomial { coeffs })
}

/// Dense polynomial with `i64` coefficients, `coeffs[i]` multiplying `x^i`.
///
/// The leading coefficient is always nonzero. Low-order zeros are kept so
/// that the degree stays literal; see [`IntPolynomial::normalized`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_reciprocal(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Power of `x` dividing the polynomial.
    pub fn low_order_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    /// The polynomial with its `x`-power factor divided out.
    pub fn normalized(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs[self.low_order_zeros()..].to_vec(),
        }
    }

    /// Exact division by `x - root` for `root` in `{1, -1}`, if it divides.
    pub fn deflate_unit_root(&self, root: i64) -> Option<IntPolynomial> {
        debug_assert!(root == 1 || root == -1);
        if self.coeffs.len() < 2 {
            return None;
        }
        // Synthetic division from the top.
        let d = self.degree();
        let mut quotient = vec![0i64; d];
        let mut carry = 0i64;
        for i in (1..=d).rev() {
            carry = self.coeffs[i].checked_add(carry.checked_mul(root)?)?;
            quotient[i - 1] = carry;
        }
        let remainder = self.coeffs[0].checked_add(carry.checked_mul(root)?)?;
        (remainder == 0).then_some(IntPolynomial { coeffs: quotient })
    }

    /// `sum |c_i|`.
    pub fn abs_coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|&c| (c as f64).abs()).sum()
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                f.write_str(" ")?;
            }
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, m) => format!("{m}"),
                (1, 1) => "x".to_string(),
                (1, m) => format!("{m}x"),
                (p, 1) => format!("x^{p}"),
                (p, m) => format!("{m}x^{p}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validate_examples() {
        let s = FamilySpec::new(1, 0, vec![-1, -1], vec![1]).unwrap();
        assert!(s.is_palindromic());
        let s = FamilySpec::new(0, 2, vec![0], vec![-1, -1, 1]).unwrap();
        assert!(!s.is_palindromic());
        assert_eq!(
            FamilySpec::new(0, 0, vec![0], vec![0]),
            Err(Error::ZeroEndpoint { which: "b_0" })
        );
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        assert!(matches!(
            FamilySpec::new(-1, 0, vec![], vec![1]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            FamilySpec::new(0, -2, vec![1], vec![1]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            FamilySpec::new(1, 0, vec![1], vec![1]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            FamilySpec::new(0, 1, vec![1], vec![1]),
            Err(Error::InvalidSpec(_))
        ));
        assert_eq!(
            FamilySpec::new(0, 1, vec![1], vec![1, 0]),
            Err(Error::ZeroEndpoint { which: "b_l" })
        );
        assert!(matches!(
            FamilySpec::new(2, 0, vec![1, 1, 0], vec![1]),
            Err(Error::InvalidSpec(_))
        ));
        // a_0 = 0 is fine when k = 0
        assert!(FamilySpec::new(0, 0, vec![0], vec![1]).is_ok());
    }

    #[test]
    fn expand_examples() {
        let s = FamilySpec::new(0, 0, vec![3], vec![1]).unwrap();
        assert_eq!(s.expand(4).unwrap().coeffs(), &[1, 0, 0, 0, 3, 0, 0, 0, 1]);

        let s = FamilySpec::new(0, 1, vec![1], vec![1, 1]).unwrap();
        assert_eq!(s.expand(2).unwrap().coeffs(), &[1, 1, 0, 1, 0, 1, 1]);

        let s = FamilySpec::new(0, 2, vec![0], vec![-1, -1, 1]).unwrap();
        let p = s.expand(3).unwrap();
        assert_eq!(p.degree(), 10);
        assert_eq!(p.coeffs(), &[1, -1, -1, 0, 0, 0, 0, 0, -1, -1, 1]);
        assert_eq!(p.to_string(), "x^10 - x^9 - x^8 - x^2 - x + 1");
    }

    #[test]
    fn expand_requires_two_n_above_k() {
        let s = FamilySpec::new(2, 0, vec![0, 1, 1], vec![1]).unwrap();
        assert_eq!(s.expand(1), Err(Error::DegreeTooSmall { n: 1, k: 2 }));
        assert!(s.expand(2).is_ok());
        // 2n > k but x^(n+l) x^(-k) would be a negative power
        let s = FamilySpec::new(3, 0, vec![0, 0, 0, 1], vec![1]).unwrap();
        assert_eq!(s.expand(2), Err(Error::DegreeTooSmall { n: 2, k: 3 }));
        assert_eq!(s.expand(3).unwrap().degree(), 6);
        let s = FamilySpec::new(3, 1, vec![0, 0, 0, 1], vec![1, 1]).unwrap();
        assert_eq!(s.expand(2).unwrap().degree(), 6);
    }

    #[test]
    fn cancelled_leading_coefficient_is_reported() {
        // n + l = k puts b_l and a_k on the top power, and 3 - 3 = 0
        let s = FamilySpec::new(2, 0, vec![-2, -2, -3], vec![3]).unwrap();
        assert_eq!(s.expand(2), Err(Error::LeadingCancellation { n: 2 }));
        assert_eq!(s.expand(3).unwrap().degree(), 6);
    }

    #[test]
    fn expand_overflow_is_reported() {
        let s = FamilySpec::new(1, 0, vec![0, i64::MAX], vec![i64::MAX]).unwrap();
        // n = 1 puts a_1 and b_0 on the same power
        assert_eq!(s.expand(1), Err(Error::Overflow));
    }

    #[test]
    fn deflation_by_unit_roots() {
        // (x + 1)^2 (x^2 + x + 1)
        let p = IntPolynomial::new(vec![1, 3, 4, 3, 1]).unwrap();
        let q = p.deflate_unit_root(-1).unwrap();
        assert_eq!(q.coeffs(), &[1, 2, 2, 1]);
        let q = q.deflate_unit_root(-1).unwrap();
        assert_eq!(q.coeffs(), &[1, 1, 1]);
        assert!(q.deflate_unit_root(-1).is_none());
        assert!(q.deflate_unit_root(1).is_none());
    }

    #[test]
    fn normalization_strips_x_power() {
        let p = IntPolynomial::new(vec![0, 0, 2, 1, 0]).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.low_order_zeros(), 2);
        assert_eq!(p.normalized().coeffs(), &[2, 1]);
        assert_eq!(IntPolynomial::new(vec![0, 0]), Err(Error::ZeroPolynomial));
    }

    fn arb_spec() -> impl Strategy<Value = FamilySpec> {
        (0usize..4, 0usize..5)
            .prop_flat_map(|(k, l)| {
                (
                    Just(k),
                    Just(l),
                    prop::collection::vec(-3i64..=3, k + 1),
                    prop::collection::vec(-3i64..=3, l + 1),
                )
            })
            .prop_filter_map("valid spec", |(k, l, a, b)| {
                FamilySpec::new(k as i64, l as i64, a, b).ok()
            })
    }

    proptest! {
        #[test]
        fn expansion_shape(spec in arb_spec(), extra in 0u64..20) {
            let n = (spec.k() as u64 / 2 + 1).max(spec.k().saturating_sub(spec.l()) as u64) + extra;
            let p = match spec.expand(n) {
                Err(Error::LeadingCancellation { .. }) => {
                    prop_assert_eq!(n as usize + spec.l(), spec.k());
                    prop_assert_eq!(spec.b()[spec.l()] + spec.a()[spec.k()], 0);
                    return Ok(());
                }
                other => other.unwrap(),
            };
            prop_assert_eq!(p.degree() as u64, spec.degree(n));
            prop_assert!(p.is_reciprocal());
            let c = p.coeffs();
            let center = (n as usize) + spec.l();
            if (n as usize) > spec.k() {
                prop_assert_eq!(c[center], spec.a()[0]);
                for j in 1..=spec.k() {
                    prop_assert_eq!(c[center + j], spec.a()[j]);
                }
                for j in 0..=spec.l() {
                    prop_assert_eq!(c[center + n as usize + j], spec.b()[j]);
                }
            }
        }
    }
}
