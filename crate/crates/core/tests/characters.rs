use proptest::prelude::*;
use sugawara::characters::{admissible_subsets, char_sum, is_admissible, kappa_vanishing_check, vanishing_series_check};
use sugawara::tensor::{symmetrizer, Method};
use sugawara::{AlgebraSpec, Family, Rational as Q};

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

#[test]
fn counts_are_dimensions() {
    for n in 1..=3 {
        for m in 1..=4 {
            for f in [Family::A, Family::B, Family::C, Family::D] {
                let Ok(spec) = AlgebraSpec::new(f, n) else { continue };
                let big = spec.dim() as i64;
                let m64 = m as i64;
                let expected = match f {
                    Family::A => binom(big + m64 - 1, m64),
                    Family::B | Family::D => binom(big + m64 - 1, m64) - binom(big + m64 - 3, m64 - 2),
                    Family::C if m <= n => binom(big, m64) - binom(big, m64 - 2),
                    Family::C => {
                        assert!(char_sum(&spec, m).is_err());
                        continue;
                    }
                };
                assert_eq!(char_sum(&spec, m).unwrap().count() as i64, expected, "{} m={m}", spec.name());
            }
        }
    }
}

#[test]
fn counts_match_symmetrizer_ranks() {
    for (f, n, m) in [(Family::B, 1, 3), (Family::C, 2, 2), (Family::D, 2, 2), (Family::C, 3, 2)] {
        let spec = AlgebraSpec::new(f, n).unwrap();
        let rank = symmetrizer::<Q>(&spec, m, Method::Product).unwrap().rank();
        assert_eq!(char_sum(&spec, m).unwrap().count(), rank);
    }
}

#[test]
fn admissible_examples() {
    assert_eq!(admissible_subsets(2, 2).len(), 5);
    assert!(is_admissible(2, &[1, 4]));
    assert!(!is_admissible(2, &[1, 2, 4]));
    assert!(is_admissible(3, &[1, 2, 6]));
    assert!(!is_admissible(3, &[1, 2, 3, 6]));
}

#[test]
fn vanishing_series() {
    for (f, n) in [(Family::B, 1), (Family::B, 2), (Family::D, 2), (Family::D, 3)] {
        assert!(vanishing_series_check::<Q>(f, n, 3).unwrap(), "{f:?}{n}");
    }
    assert!(vanishing_series_check::<Q>(Family::C, 2, 3).is_err());
    assert!(vanishing_series_check::<Q>(Family::B, 1, 0).is_err());
}

proptest! {
    #[test]
    fn kappa_identities_for_any_seed(n in 1usize..=3, seed in any::<u64>()) {
        let r = kappa_vanishing_check::<Q>(n, 3, seed).unwrap();
        prop_assert!(r.vanishing && r.cross_check, "{:?}", r);
    }

    #[test]
    fn admissibility_by_positions(n in 1usize..=4, mask in 0u32..256) {
        let subset: Vec<usize> = (1..=2 * n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        // distance from i to i' in the subset is at most n - i
        let pos = |x: usize| subset.iter().position(|&y| y == x);
        let ok = (1..=n).all(|i| match (pos(i), pos(2 * n + 1 - i)) {
            (Some(r), Some(s)) => s - r <= n - i,
            _ => true,
        });
        prop_assert_eq!(is_admissible(n, &subset), ok);
    }
}
