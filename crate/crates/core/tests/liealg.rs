use std::collections::BTreeMap;

use proptest::prelude::*;
use sugawara::liealg::bracket;
use sugawara::{AlgebraSpec, Family, Generator, Rational as Q, Scalar};

type Mat = BTreeMap<(usize, usize), Q>;

fn as_matrix(spec: &AlgebraSpec, combo: &[(Generator, Q)]) -> Mat {
    let mut m = Mat::new();
    for (g, c) in combo {
        let (i, j) = g.indices().unwrap();
        for ((k, l), x) in spec.matrix_of(i, j) {
            *m.entry((k, l)).or_insert_with(|| Q::from_int(0)) += c.clone() * Q::from_int(x);
        }
    }
    m.retain(|_, v| *v != Q::from_int(0));
    m
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::new();
    for ((i, j), x) in a {
        for ((k, l), y) in b {
            if j == k {
                *out.entry((*i, *l)).or_insert_with(|| Q::from_int(0)) += x.clone() * y.clone();
            }
            if l == i {
                *out.entry((*k, *j)).or_insert_with(|| Q::from_int(0)) -= x.clone() * y.clone();
            }
        }
    }
    out.retain(|_, v| *v != Q::from_int(0));
    out
}

fn specs() -> Vec<AlgebraSpec> {
    let mut v = Vec::new();
    for n in 1..=3 {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            if let Ok(s) = AlgebraSpec::new(f, n) {
                v.push(s);
            }
        }
    }
    v
}

#[test]
fn dimensions() {
    let dims: Vec<(String, usize)> = specs().iter().map(|s| (s.name(), s.canonical_pairs().len())).collect();
    for (name, d) in dims {
        let expected = match name.as_str() {
            "gl_1" => 1,
            "gl_2" => 4,
            "gl_3" => 9,
            "o_3" => 3,
            "o_5" => 10,
            "o_7" => 21,
            "sp_2" => 3,
            "sp_4" => 10,
            "sp_6" => 21,
            "o_4" => 6,
            "o_6" => 15,
            _ => continue,
        };
        assert_eq!(d, expected, "{name}");
    }
}

#[test]
fn brackets_agree_with_matrices() {
    for spec in specs() {
        let pairs = spec.canonical_pairs();
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                let a = Generator::new(i, j, 0);
                let b = Generator::new(k, l, 0);
                let br = bracket::<Q>(&spec, &a, &b).unwrap();
                let lhs = as_matrix(&spec, &br);
                let rhs = commutator(&as_matrix(&spec, &[(a, Q::from_int(1))]), &as_matrix(&spec, &[(b, Q::from_int(1))]));
                assert_eq!(lhs, rhs, "{} [{i}{j},{k}{l}]", spec.name());
            }
        }
    }
}

#[test]
fn tau_lowers_depth() {
    let spec = AlgebraSpec::new(Family::B, 1).unwrap();
    let x = Generator::new(1, 2, -3);
    assert_eq!(bracket::<Q>(&spec, &Generator::Tau, &x).unwrap(), vec![(Generator::new(1, 2, -4), Q::from_int(3))]);
    assert!(bracket::<Q>(&spec, &Generator::Tau, &x.with_depth(0)).unwrap().is_empty());
}

#[test]
fn non_canonical_rejected() {
    let spec = AlgebraSpec::new(Family::B, 1).unwrap();
    assert!(bracket::<Q>(&spec, &Generator::new(3, 1, 0), &Generator::Tau).is_err());
}

fn bracket_combo(spec: &AlgebraSpec, a: &[(Generator, Q)], b: &[(Generator, Q)]) -> Vec<(Generator, Q)> {
    let mut acc: BTreeMap<Generator, Q> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            for (g, e) in bracket::<Q>(spec, x, y).unwrap() {
                *acc.entry(g).or_insert_with(|| Q::from_int(0)) += c.clone() * d.clone() * e;
            }
        }
    }
    acc.into_iter().filter(|(_, c)| *c != Q::from_int(0)).collect()
}

fn add(a: Vec<(Generator, Q)>, b: Vec<(Generator, Q)>) -> BTreeMap<Generator, Q> {
    let mut acc: BTreeMap<Generator, Q> = BTreeMap::new();
    for (g, c) in a.into_iter().chain(b) {
        *acc.entry(g).or_insert_with(|| Q::from_int(0)) += c;
    }
    acc.retain(|_, c| *c != Q::from_int(0));
    acc
}

proptest! {
    #[test]
    fn jacobi_and_antisymmetry(si in 0usize..11, picks in prop::collection::vec((0usize..64, -2i32..=0), 3)) {
        let spec = specs()[si];
        let pairs = spec.canonical_pairs();
        let mut gens: Vec<Generator> = picks
            .iter()
            .map(|&(p, r)| if p == 63 { Generator::Tau } else { let (i, j) = pairs[p % pairs.len()]; Generator::new(i, j, r) })
            .collect();
        let z = gens.pop().unwrap();
        let (x, y) = (gens[0], gens[1]);
        let one = |g: Generator| vec![(g, Q::from_int(1))];
        let xy = bracket::<Q>(&spec, &x, &y).unwrap();
        let yx = bracket::<Q>(&spec, &y, &x).unwrap();
        prop_assert!(add(xy.clone(), yx).is_empty());
        let t1 = bracket_combo(&spec, &one(x), &bracket::<Q>(&spec, &y, &z).unwrap());
        let t2 = bracket_combo(&spec, &one(y), &bracket::<Q>(&spec, &z, &x).unwrap());
        let t3 = bracket_combo(&spec, &one(z), &xy);
        let sum = add(add(t1, t2).into_iter().collect(), t3);
        prop_assert!(sum.is_empty());
    }
}
