use num_rational::Ratio;
use proptest::prelude::*;
use sugawara::foundations::{binom, gamma_factor, gen_binomial, verify_resummation_identity};
use sugawara::{Family, Rational as Q, Scalar};

fn q(a: i64, b: i64) -> Q {
    Q::from_frac(a, b)
}

#[test]
fn gamma_values() {
    assert_eq!(gamma_factor::<Q>(3, 0).unwrap(), q(1, 1));
    assert_eq!(gamma_factor::<Q>(3, 1).unwrap(), q(2, 3));
    assert_eq!(gamma_factor::<Q>(5, 2).unwrap(), q(5, 7));
    // omega = -2n for sp_2n
    assert_eq!(gamma_factor::<Q>(-4, 1).unwrap(), q(5, 4));
    assert!(gamma_factor::<Q>(-4, 3).is_err());
}

#[test]
fn binomials() {
    assert_eq!(binom::<Q>(5, 2), q(10, 1));
    assert_eq!(binom::<Q>(5, -1), q(0, 1));
    assert_eq!(binom::<Q>(-3, 2), q(6, 1));
    assert_eq!(gen_binomial(&q(1, 2), 3), q(1, 16));
    assert_eq!(gen_binomial(&q(-1, 2), 2), q(3, 8));
}

#[test]
fn resummation_identities() {
    for k in 0..=5 {
        for m in k..=5 {
            for n_big in [3, 5, 7, 9] {
                assert!(verify_resummation_identity(Family::B, n_big, m, k), "B N={n_big} m={m} k={k}");
            }
            for n_big in [2, 4, 6, 8] {
                assert!(verify_resummation_identity(Family::C, n_big, m, k), "C N={n_big} m={m} k={k}");
            }
            for n_big in [4, 6, 8] {
                assert!(verify_resummation_identity(Family::D, n_big, m, k), "D N={n_big} m={m} k={k}");
            }
        }
    }
    assert!(!verify_resummation_identity(Family::B, 4, 2, 1));
    assert!(!verify_resummation_identity(Family::B, 5, 1, 2));
}

fn naive_binomial(alpha: &Q, k: i64) -> Q {
    let mut num = q(1, 1);
    let mut den = q(1, 1);
    for t in 0..k {
        num *= alpha.clone() - Q::from_int(t) ;
        den *= Q::from_int(t + 1);
    }
    num / den
}

proptest! {
    #[test]
    fn generalized_binomial_matches_product(a in -20i64..20, b in 1i64..5, k in 0i64..8) {
        let alpha = q(a, b);
        prop_assert_eq!(gen_binomial(&alpha, k), naive_binomial(&alpha, k));
    }

    #[test]
    fn pascal(top in -10i64..15, k in 1i64..10) {
        prop_assert_eq!(binom::<Q>(top + 1, k), binom::<Q>(top, k) + binom::<Q>(top, k - 1));
    }

    #[test]
    fn scalars_agree(omega in -12i64..12, m in 0i64..6) {
        let big = gamma_factor::<Q>(omega, m);
        let small = gamma_factor::<Ratio<i128>>(omega, m);
        prop_assert_eq!(big.is_ok(), small.is_ok());
        if let (Ok(x), Ok(y)) = (big, small) {
            prop_assert_eq!(x.to_string(), y.to_string());
        }
    }
}
