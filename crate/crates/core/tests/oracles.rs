use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uniratio::families::{family_pair, specialize_bivariate, t_family_spec, FamilyName, FamilyParams};
use uniratio::oracle::{c_ratio, c_ratio_polynomial, census_dual, erdos_turan_bound_polynomial, DEFAULT_TOLERANCE};
use uniratio::solver::{limit_ratio_exact, limit_ratio_pair};
use uniratio::{Error, FamilySpec};

#[test]
fn dual_census_on_random_palindromic_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    while checked < 400 {
        let k = rng.gen_range(0..=3usize);
        let l = rng.gen_range(0..=4usize);
        let mut a: Vec<i64> = (0..=k).map(|_| rng.gen_range(-3..=3)).collect();
        if k > 0 && a[k] == 0 {
            a[k] = 1;
        }
        let mut b = vec![0i64; l + 1];
        for j in 0..=l / 2 {
            let v = rng.gen_range(-3..=3);
            b[j] = v;
            b[l - j] = v;
        }
        let Ok(spec) = FamilySpec::new(k as i64, l as i64, a, b) else {
            continue;
        };
        let n = rng.gen_range(1..=80u64);
        match census_dual(&spec, n, DEFAULT_TOLERANCE) {
            Err(Error::DegreeTooSmall { .. } | Error::LeadingCancellation { .. }) => continue,
            Err(e) => panic!("{:?} at n = {n}: {e}", spec.to_raw()),
            Ok((sign, modulus)) => {
                assert_eq!(sign.inside, modulus.inside);
                assert_eq!(sign.outside, modulus.outside);
            }
        }
        checked += 1;
    }
}

#[test]
fn specialized_bivariate_members_approach_the_limit() {
    let params = FamilyParams::pqr(FamilyName::P, 2, 3);
    let exact = limit_ratio_pair(&family_pair(&params).unwrap()).unwrap();
    let r = exact.interval_count();
    for big_n in [50, 100, 200] {
        let p = specialize_bivariate(&params, big_n).unwrap();
        let c = c_ratio_polynomial(&p).unwrap();
        let err = (c - exact.lc).abs();
        assert!(err <= erdos_turan_bound_polynomial(&p, r), "N = {big_n}: {c} vs {}", exact.lc);
    }
}

#[test]
fn t_family_is_not_monotone_in_the_oracle_either() {
    // lc(T_3) > lc(T_2) from the solver, confirmed on concrete members
    let (t2, t3) = (t_family_spec(2).unwrap(), t_family_spec(3).unwrap());
    let (l2, l3) = (limit_ratio_exact(&t2).unwrap().lc, limit_ratio_exact(&t3).unwrap().lc);
    assert!(l3 > l2 + 0.1);
    let (c2, c3) = (c_ratio(&t2, 1600).unwrap(), c_ratio(&t3, 1600).unwrap());
    assert!((c2 - l2).abs() < 0.005 && (c3 - l3).abs() < 0.005, "{c2} {c3}");
}
