use sugawara::envu::{Algebra, UElem};
use sugawara::foundations::gamma_factor;
use sugawara::sugawara::{
    current_algebra_verify, phi_coefficients, pfaffian_ssv, psi_coefficients, verify_gl_images, verify_main_theorem,
    verify_pfaffian,
};
use sugawara::tensor::GlKind;
use sugawara::{AlgebraSpec, Family, Rational as Q, Scalar};

fn alg(f: Family, n: usize) -> Algebra<Q> {
    Algebra::new(AlgebraSpec::new(f, n).unwrap())
}

/// `tau delta_ij + F_ij[-1]`.
fn x(a: &Algebra<Q>, i: usize, j: usize) -> UElem<Q> {
    let f = a.loop_gen(i, j, -1).unwrap();
    if i == j {
        &f + &a.tau()
    } else {
        f
    }
}

/// `gamma_2 tr S (tau + F)_1 (tau + F)_2` for `o_N`, with the projector written out
/// as `(1 + P)/2 - Q/N` and the trace expanded entry by entry.
fn orthogonal_degree_two(a: &Algebra<Q>) -> UElem<Q> {
    let spec = *a.spec();
    let dim = spec.dim();
    let big = Q::from_int(dim as i64);
    let half = Q::from_frac(1, 2);
    let mut out = UElem::zero();
    for p in 1..=dim {
        for q in 1..=dim {
            for r in 1..=dim {
                for s in 1..=dim {
                    let mut c = Q::from_int(0);
                    if p == r && q == s {
                        c += half.clone();
                    }
                    if p == s && q == r {
                        c += half.clone();
                    }
                    if q == spec.prime(p) && s == spec.prime(r) {
                        c -= Q::from_int(1) / big.clone();
                    }
                    if c != Q::from_int(0) {
                        out.add_scaled(&a.mul(&x(a, r, p), &x(a, s, q)), &c);
                    }
                }
            }
        }
    }
    out.scale(&gamma_factor::<Q>(dim as i64, 2).unwrap())
}

#[test]
fn degree_two_trace_by_hand() {
    for (f, n) in [(Family::B, 1), (Family::D, 2), (Family::B, 2)] {
        let a = alg(f, n);
        let phi = phi_coefficients(&a, 2).unwrap();
        assert_eq!(phi.to_elem(&a), orthogonal_degree_two(&a), "{}", a.spec().name());
    }
}

#[test]
fn degree_one_is_a_multiple_of_tau() {
    for (f, n, c) in [(Family::B, 1, 2), (Family::B, 2, 4), (Family::D, 2, 3), (Family::C, 1, 3), (Family::C, 2, 5)] {
        let a = alg(f, n);
        let phi = phi_coefficients(&a, 1).unwrap();
        assert_eq!(phi.to_elem(&a), a.tau().scale(&Q::from_int(c)), "{}", a.spec().name());
    }
}

#[test]
fn main_theorem_small_ranks() {
    for (f, n, mmax) in [(Family::B, 1, 3), (Family::B, 2, 2), (Family::C, 1, 1), (Family::C, 2, 2), (Family::D, 2, 2), (Family::D, 3, 2)] {
        let a = alg(f, n);
        for m in 1..=mmax {
            let r = verify_main_theorem(&a, m).unwrap();
            assert!(r.matched, "{} m={m}: {}", a.spec().name(), r.diff);
        }
    }
}

#[test]
fn symplectic_degree_limit() {
    let a = alg(Family::C, 1);
    assert!(phi_coefficients(&a, 2).is_err());
    assert!(verify_main_theorem(&a, 2).is_err());
}

#[test]
fn pfaffian() {
    for n in 1..=2 {
        let r = verify_pfaffian(&alg(Family::D, n)).unwrap();
        assert!(r.matched, "n={n}: {}", r.diff);
    }
    assert_eq!(verify_pfaffian(&alg(Family::D, 2)).unwrap().rhs, "(mu[1;-1]*mu[2;-1] - mu[2;-2])");
    assert!(pfaffian_ssv(&alg(Family::B, 2)).is_err());
}

#[test]
fn pfaffian_squares_to_determinant_leading_term() {
    // for o_2 the Pfaffian is F_12'[-1] = F_11[-1]
    let a = alg(Family::D, 1);
    assert_eq!(pfaffian_ssv(&a).unwrap(), a.loop_gen(1, 1, -1).unwrap());
}

#[test]
fn gl_images() {
    for big_n in 1..=3 {
        let a = alg(Family::A, big_n);
        for m in 1..=3 {
            let h = verify_gl_images(&a, m, GlKind::Sym).unwrap();
            assert!(h.matched, "H gl_{big_n} m={m}: {}", h.diff);
            if m <= big_n {
                let e = verify_gl_images(&a, m, GlKind::Antisym).unwrap();
                assert!(e.matched, "A gl_{big_n} m={m}: {}", e.diff);
            } else {
                assert!(verify_gl_images(&a, m, GlKind::Antisym).is_err());
            }
        }
    }
    // tr H^(1) (tau + E[-1]) = N tau + sum E_ii[-1]
    let a = alg(Family::A, 2);
    let psi = psi_coefficients(&a, 1).unwrap();
    let expected = &(&a.tau().scale(&Q::from_int(2)) + &a.loop_gen(1, 1, -1).unwrap()) + &a.loop_gen(2, 2, -1).unwrap();
    assert_eq!(psi.to_elem(&a), expected);
}

#[test]
fn current_algebra() {
    for (f, n, m, d) in [(Family::B, 1, 1, 2), (Family::B, 1, 2, 3), (Family::C, 2, 2, 2), (Family::D, 2, 2, 2), (Family::A, 2, 2, 2)] {
        let r = current_algebra_verify(&alg(f, n), m, d).unwrap();
        assert!(r.matched, "{f:?}{n} m={m} d={d}: {}", r.diff);
    }
    assert!(current_algebra_verify(&alg(Family::B, 1), 3, 2).is_err());
}
