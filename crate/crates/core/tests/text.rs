use proptest::prelude::*;
use sugawara::envu::{Algebra, UElem};
use sugawara::harmonic::{CommPolynomial, ExteriorElement, ZVar};
use sugawara::poly::Poly;
use sugawara::text::{parse_comm_polynomial, parse_exterior, parse_mu_polynomial, parse_pi0, parse_uelem};
use sugawara::walg::pi0::{mu, Pi0};
use sugawara::{AlgebraSpec, Family, Generator, Rational as Q, Scalar};

fn coeff() -> impl Strategy<Value = Q> {
    (-7i64..=7, 1i64..=4).prop_filter("nonzero", |(p, _)| *p != 0).prop_map(|(p, q)| Q::from_frac(p, q))
}

#[test]
fn examples() {
    let alg = Algebra::<Q>::new(AlgebraSpec::new(Family::B, 1).unwrap());
    // F[3,1] = -F[1,3] in o_3
    let a = parse_uelem(&alg, "F[3,1;-1]").unwrap();
    assert_eq!(a, alg.loop_gen(1, 3, -1).unwrap().scale(&-Q::from_int(1)));
    let b = parse_uelem(&alg, "2/3*tau*F[1,1;-2] - 1/2").unwrap();
    assert_eq!(b.len(), 3);
    assert_eq!(parse_pi0::<Q>("mu[1;-1]*mu[1;-1] - mu[2;-2]").unwrap(), &(&mu::<Q>(1, -1) * &mu(1, -1)) - &mu(2, -2));
    assert_eq!(parse_exterior::<Q>("zeta[2]*zeta[1]").unwrap(), ExteriorElement::word(&[1, 2], -Q::from_int(1)));
    assert!(parse_exterior::<Q>("zeta[1]*zeta[1]").unwrap().is_zero());
}

#[test]
fn errors() {
    let alg = Algebra::<Q>::new(AlgebraSpec::new(Family::B, 1).unwrap());
    for bad in ["F[1,1;-1] +", "F[1,1]", "mu[1;-1]", "F[7,1;0]", "2**tau", "F[1,1;-1)"] {
        assert!(parse_uelem(&alg, bad).is_err(), "{bad}");
    }
    assert!(parse_pi0::<Q>("z[1]").is_err());
    assert!(parse_mu_polynomial::<Q>("mu[1;0]").is_err());
    assert!(parse_comm_polynomial::<Q>("zeta[1]").is_err());
}

proptest! {
    #[test]
    fn uelem_round_trip(fi in 0usize..4, terms in prop::collection::vec((coeff(), prop::collection::vec((0usize..100, -2i32..=0), 0..=3)), 1..=4)) {
        let (f, n) = [(Family::A, 2), (Family::B, 1), (Family::C, 2), (Family::D, 2)][fi];
        let alg = Algebra::<Q>::new(AlgebraSpec::new(f, n).unwrap());
        let pairs = alg.spec().canonical_pairs();
        let mut x = UElem::zero();
        for (c, w) in terms {
            let gens: Vec<Generator> = w
                .iter()
                .map(|&(p, r)| if p > 90 { Generator::Tau } else { let (i, j) = pairs[p % pairs.len()]; Generator::new(i, j, r) })
                .collect();
            x = &x + &alg.word(&gens).scale(&c);
        }
        let text = alg.show(&x);
        prop_assert_eq!(parse_uelem(&alg, &text).unwrap(), x);
    }

    #[test]
    fn pi0_round_trip(terms in prop::collection::vec((coeff(), prop::collection::vec((1usize..=3, -3i32..=0), 0..=3)), 0..=4)) {
        let mut p: Pi0<Q> = Poly::zero();
        let mut m: Poly<usize, Q> = Poly::zero();
        let mut z: CommPolynomial<Q> = Poly::zero();
        for (c, vars) in terms {
            let mut t = Poly::constant(c.clone());
            let mut u = Poly::constant(c.clone());
            let mut v = Poly::constant(c);
            for (i, r) in vars {
                t = &t * &mu(i, r);
                u = &u * &Poly::var(i);
                v = &v * &Poly::var(ZVar(i));
            }
            p = &p + &t;
            m = &m + &u;
            z = &z + &v;
        }
        prop_assert_eq!(parse_pi0::<Q>(&p.to_string()).unwrap(), p);
        prop_assert_eq!(parse_mu_polynomial::<Q>(&m.to_string()).unwrap(), m);
        prop_assert_eq!(parse_comm_polynomial::<Q>(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn exterior_round_trip(terms in prop::collection::vec((coeff(), prop::collection::vec(1usize..=5, 0..=3)), 0..=4)) {
        let mut e = ExteriorElement::<Q>::zero();
        for (c, w) in terms {
            e.add_word(&w, c);
        }
        prop_assert_eq!(parse_exterior::<Q>(&e.to_string()).unwrap(), e);
    }
}
