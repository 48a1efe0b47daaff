//! Exact Sturm-sequence root counting, used to cross-check the floating-point
//! isolator.
//!
//! Every `f64` is a dyadic rational, so the Chebyshev coefficients of a
//! [`ChebPoly`] convert to the power basis without rounding and the count is
//! the exact count for the polynomial as stored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::trig::ChebPoly;

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn rem(num: &Poly, den: &Poly) -> Poly {
    let mut r = num.clone();
    let dlead = den.last().expect("nonzero divisor").clone();
    while r.len() >= den.len() && !r.is_empty() {
        let shift = r.len() - den.len();
        let q = r.last().unwrap().clone() / &dlead;
        for (i, d) in den.iter().enumerate() {
            r[shift + i] -= &q * d;
        }
        r = trim(r);
    }
    r
}

/// Divides out `(w - root)` as often as it divides.
fn strip_root(mut p: Poly, root: &BigRational) -> (Poly, usize) {
    let mut mult = 0;
    while p.len() > 1 && eval(&p, root).is_zero() {
        let n = p.len() - 1;
        let mut q = vec![BigRational::zero(); n];
        let mut carry = BigRational::zero();
        for i in (1..=n).rev() {
            carry = &p[i] + &carry * root;
            q[i - 1] = carry.clone();
        }
        p = q;
        mult += 1;
    }
    (p, mult)
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn power_basis_exact(d: &ChebPoly) -> Poly {
    let cheb: Vec<BigRational> = d
        .chebyshev_coeffs()
        .iter()
        .map(|&c| BigRational::from_float(c).expect("finite coefficient"))
        .collect();
    let n = cheb.len();
    let mut out = vec![BigRational::zero(); n];
    if n == 0 {
        return out;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut prev: Poly = vec![BigRational::one()];
    let mut cur: Poly = vec![BigRational::zero(), BigRational::one()];
    out[0] += &cheb[0];
    if n > 1 {
        out[1] += &cheb[1];
    }
    for c in cheb.iter().skip(2) {
        let mut next = vec![BigRational::zero(); cur.len() + 1];
        for (i, x) in cur.iter().enumerate() {
            next[i + 1] += &two * x;
        }
        for (i, x) in prev.iter().enumerate() {
            next[i] -= x;
        }
        for (i, x) in next.iter().enumerate() {
            out[i] += c * x;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    trim(out)
}

/// Number of distinct real roots of `d` in `[-1, 1]`, or `None` for the
/// zero polynomial.
pub fn count_distinct_roots(d: &ChebPoly) -> Option<usize> {
    let p = power_basis_exact(d);
    if p.is_empty() {
        return None;
    }
    let one = BigRational::one();
    let minus_one = -BigRational::one();
    let (p, at_plus) = strip_root(p, &one);
    let (p, at_minus) = strip_root(p, &minus_one);
    let endpoint_roots = usize::from(at_plus > 0) + usize::from(at_minus > 0);
    if p.len() <= 1 {
        return Some(endpoint_roots);
    }
    let mut seq = vec![p.clone(), derivative(&p)];
    loop {
        let n = seq.len();
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    Some(sign_changes(&seq, &minus_one) - sign_changes(&seq, &one) + endpoint_roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::{to_chebyshev, CosineSeries};

    fn cheb(terms: &[(u32, f64)]) -> ChebPoly {
        to_chebyshev(&CosineSeries::from_terms(terms.iter().copied())).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count_distinct_roots(&cheb(&[(0, -1.75), (2, -2.0)])), Some(1));
        assert_eq!(count_distinct_roots(&cheb(&[(0, -1.0)])), Some(0));
        assert_eq!(count_distinct_roots(&cheb(&[(4, 1.0)])), Some(2));
        // T_7 has seven simple roots inside
        assert_eq!(count_distinct_roots(&cheb(&[(14, 1.0)])), Some(7));
        // double root at w = 1/2
        assert_eq!(count_distinct_roots(&cheb(&[(0, 0.75), (2, -1.0), (4, 0.5)])), Some(1));
        // 1 - w and 1 + w: endpoint roots
        assert_eq!(count_distinct_roots(&cheb(&[(0, 1.0), (2, -1.0)])), Some(1));
        // 1 - w^2 = (1 - T2)/2
        assert_eq!(count_distinct_roots(&cheb(&[(0, 0.5), (4, -0.5)])), Some(2));
        assert_eq!(count_distinct_roots(&ChebPoly::from_chebyshev(vec![])), None);
        // root outside [-1, 1]: w - 2
        assert_eq!(count_distinct_roots(&cheb(&[(0, -2.0), (2, 1.0)])), Some(0));
    }
}
