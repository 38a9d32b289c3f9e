use proptest::prelude::*;
use sugawara::casimir::{casimir_element, factorial_sym, in_shifted_variables, multiset_image, verify_casimir, LVar, MuPolynomial};
use sugawara::envu::Algebra;
use sugawara::poly::Poly;
use sugawara::{AlgebraSpec, Family, Rational as Q, Scalar};

fn spec(f: Family, n: usize) -> AlgebraSpec {
    AlgebraSpec::new(f, n).unwrap()
}

/// `(mu, mu + 2 rho)` in the orthonormal coordinates.
fn quadratic_eigenvalue(s: &AlgebraSpec) -> MuPolynomial<Q> {
    let n = s.n as i64;
    let mut p = Poly::zero();
    for i in 1..=n {
        let rho = match s.family {
            Family::B => Q::from_frac(2 * (n - i) + 1, 2),
            Family::C => Q::from_int(n - i + 1),
            _ => Q::from_int(n - i),
        };
        let mu = Poly::var(i as usize);
        p = &p + &(&(&mu * &mu) + &mu.scale(&(rho * Q::from_int(2))));
    }
    if s.family == Family::C {
        p = -&p;
    }
    p
}

#[test]
fn quadratic_case_is_the_classical_casimir() {
    for (f, n) in [(Family::B, 1), (Family::B, 2), (Family::D, 2), (Family::D, 3), (Family::C, 2), (Family::C, 3)] {
        let s = spec(f, n);
        let alg = Algebra::<Q>::new(s);
        let img = alg.hc_classical(&casimir_element(&alg, 1).unwrap()).unwrap();
        assert_eq!(img, quadratic_eigenvalue(&s), "{}", s.name());
    }
}

#[test]
fn elements_are_central() {
    for (f, n, k) in [(Family::B, 1, 2), (Family::D, 2, 1), (Family::C, 2, 1), (Family::B, 2, 1)] {
        let s = spec(f, n);
        let alg = Algebra::<Q>::new(s);
        let c = casimir_element(&alg, k).unwrap();
        for (i, j) in s.canonical_pairs() {
            let x = alg.loop_gen(i, j, 0).unwrap();
            assert!(alg.commutator(&x, &c).is_zero(), "{} k={k} F[{i},{j}]", s.name());
        }
    }
}

#[test]
fn three_way_agreement() {
    for (f, n, k) in [(Family::B, 1, 1), (Family::B, 1, 2), (Family::B, 2, 2), (Family::D, 2, 2), (Family::D, 3, 1), (Family::C, 2, 1), (Family::C, 3, 1)] {
        let r = verify_casimir(&Algebra::<Q>::new(spec(f, n)), k).unwrap();
        assert!(r.matched(), "{f:?}{n} k={k}: {r:?}");
    }
}

#[test]
fn range_checks() {
    let c1 = Algebra::<Q>::new(spec(Family::C, 1));
    assert!(casimir_element(&c1, 1).unwrap().is_zero());
    assert!(casimir_element(&c1, 2).is_err());
    assert!(verify_casimir(&c1, 1).is_err());
    assert!(casimir_element(&Algebra::<Q>::new(spec(Family::A, 2)), 1).is_err());
    assert!(multiset_image::<Q>(&spec(Family::B, 1), 0).is_err());
}

fn top_component(p: &MuPolynomial<Q>, k: u32) -> MuPolynomial<Q> {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        if m.total_degree() == 2 * k {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// `h_k` (or `e_k`) of `mu_1^2, ..., mu_n^2`.
fn sym_of_squares(n: usize, k: usize, strict: bool) -> MuPolynomial<Q> {
    let mut prev: Vec<MuPolynomial<Q>> = vec![Poly::one(); n + 1];
    for _ in 0..k {
        let mut next = vec![Poly::zero(); n + 1];
        for j in 1..=n {
            let sq = &Poly::var(j) * &Poly::var(j);
            let before = if strict { &prev[j - 1] } else { &prev[j] };
            next[j] = &next[j - 1] + &(before * &sq);
        }
        prev = next;
    }
    prev[n].clone()
}

fn weyl_image(p: &Poly<LVar, Q>, perm: &[usize], flips: u32) -> Poly<LVar, Q> {
    p.substitute(&|v: &LVar| {
        let x = Poly::var(LVar(perm[v.0 - 1] + 1));
        if flips >> (v.0 - 1) & 1 == 1 {
            -&x
        } else {
            x
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn top_degree(fi in 0usize..3, n in 1usize..=4, k in 1usize..=3) {
        let f = [Family::B, Family::C, Family::D][fi];
        prop_assume!(!(f == Family::D && n < 2));
        prop_assume!(!(f == Family::C && 2 * k > n + 1));
        let s = spec(f, n);
        let strict = f == Family::C;
        let mut expected = sym_of_squares(n, k, strict);
        if strict && k % 2 == 1 {
            expected = -&expected;
        }
        let top = top_component(&factorial_sym::<Q>(&s, k).unwrap(), k as u32);
        prop_assert_eq!(&top, &expected);
        prop_assert_eq!(top_component(&multiset_image::<Q>(&s, k).unwrap(), k as u32), expected);
    }

    #[test]
    fn weyl_symmetry(fi in 0usize..3, n in 2usize..=3, k in 1usize..=2, perm in Just(vec![0usize, 1, 2]).prop_shuffle(), flips in 0u32..8) {
        let f = [Family::B, Family::C, Family::D][fi];
        prop_assume!(!(f == Family::C && 2 * k > n + 1));
        let s = spec(f, n);
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < n).collect();
        let flips = flips & ((1 << n) - 1);
        // type D only has even numbers of sign changes
        let flips = if f == Family::D && flips.count_ones() % 2 == 1 { flips ^ 1 } else { flips };
        let l = in_shifted_variables(&s, &multiset_image::<Q>(&s, k).unwrap());
        prop_assert_eq!(weyl_image(&l, &perm, flips), l);
    }
}
