//! The verification matrix: every item runs an exact check and records its
//! outcome and wall time.

use std::time::Instant;

use serde_json::{json, Value};

use crate::casimir::verify_casimir;
use crate::characters::{admissible_subsets, char_sum, kappa_vanishing_check, vanishing_series_check};
use crate::envu::Algebra;
use crate::error::Result;
use crate::foundations::binom;
use crate::harmonic::verify_basis;
use crate::liealg::{AlgebraSpec, Family};
use crate::sugawara::{
    current_algebra_verify, phi_coefficients, verify_gl_images, verify_main_theorem, verify_pfaffian,
};
use crate::tensor::{symmetrizer, symmetrizer_rank_formula, verify_symmetrizer, GlKind, Method};
use crate::walg::{
    h_family, miura_generators, newton_relation, pfaffian_generator, pseudo_diff_miura_d, verify_annihilation,
};
use crate::Rational as Q;

/// One checked item.
#[derive(Clone, Debug)]
pub struct Item {
    pub label: String,
    pub passed: bool,
    pub micros: u128,
    pub detail: Value,
}

impl Item {
    pub fn to_json(&self) -> Value {
        json!({"label": self.label, "match": self.passed, "micros": self.micros, "detail": self.detail})
    }
}

/// A numbered group of items.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub items: Vec<Item>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "title": self.title,
            "match": self.passed(),
            "items": self.items.iter().map(Item::to_json).collect::<Vec<_>>(),
        })
    }
}

pub const TITLES: [&str; 11] = [
    "main theorem, type B",
    "main theorem, type D and the Pfaffian",
    "main theorem, type C and vanishing projectors",
    "gl_N images",
    "current algebra",
    "symmetrizers",
    "W-algebra generators",
    "characters",
    "harmonic bases",
    "Casimir elements",
    "commutativity of the coefficients",
];

/// Suite names accepted by [`run`], in criterion order.
pub const NAMES: [&str; 11] = [
    "main-theorem-b",
    "main-theorem-d",
    "main-theorem-c",
    "gl-images",
    "current",
    "symmetrizer",
    "walg",
    "characters",
    "harmonic",
    "casimir",
    "commutativity",
];

fn item(label: String, f: impl FnOnce() -> Result<(bool, Value)>) -> Item {
    let t = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, json!({"error": e.to_string()})),
    };
    Item { label, passed, micros: t.elapsed().as_micros(), detail }
}

fn spec(f: Family, n: usize) -> AlgebraSpec {
    AlgebraSpec::new(f, n).expect("valid spec")
}

fn alg(f: Family, n: usize) -> Algebra<Q> {
    Algebra::new(spec(f, n))
}

fn main_theorem(f: Family, n: usize, m: usize) -> Item {
    item(format!("{} m={m}", spec(f, n).name()), || {
        let r = verify_main_theorem(&alg(f, n), m)?;
        Ok((r.matched, r.to_json()))
    })
}

fn pfaffian(n: usize) -> Item {
    item(format!("pfaffian o_{}", 2 * n), || {
        let r = verify_pfaffian(&alg(Family::D, n))?;
        Ok((r.matched, r.to_json()))
    })
}

fn projector_vanishes(n: usize) -> Item {
    item(format!("S^({}) = 0 on sp_{}", n + 1, 2 * n), || {
        let s = symmetrizer::<Q>(&spec(Family::C, n), n + 1, Method::Product)?;
        Ok((s.is_zero(), json!({"nnz": s.nnz()})))
    })
}

/// Runs criterion `id` (1-based). `seed` feeds the randomized checks.
pub fn run(id: usize, seed: u64) -> Criterion {
    use Family::*;
    let mut items = Vec::new();
    match id {
        1 => {
            items.extend((1..=4).map(|m| main_theorem(B, 1, m)));
            items.extend((1..=3).map(|m| main_theorem(B, 2, m)));
        }
        2 => {
            items.extend((1..=3).map(|m| main_theorem(D, 2, m)));
            items.extend([2, 3].map(pfaffian));
        }
        3 => {
            items.push(main_theorem(C, 1, 1));
            items.extend((1..=2).map(|m| main_theorem(C, 2, m)));
            items.extend([1, 2].map(projector_vanishes));
        }
        4 => {
            for big_n in 2..=3 {
                for m in 1..=3 {
                    for kind in [GlKind::Antisym, GlKind::Sym] {
                        if kind == GlKind::Antisym && m > big_n {
                            continue;
                        }
                        items.push(item(format!("gl_{big_n} m={m} {kind:?}"), || {
                            let r = verify_gl_images(&alg(A, big_n), m, kind)?;
                            Ok((r.matched, r.to_json()))
                        }));
                    }
                }
            }
        }
        5 => {
            for (f, n) in [(B, 1), (C, 1), (D, 2)] {
                for m in 1..=2 {
                    if f == C && m > n {
                        continue;
                    }
                    items.push(item(format!("{} m={m} depth 4", spec(f, n).name()), || {
                        let r = current_algebra_verify(&alg(f, n), m, 4)?;
                        Ok((r.matched, r.to_json()))
                    }));
                }
            }
        }
        6 => {
            for (f, n) in [(D, 1), (B, 1), (C, 1), (D, 2), (C, 2), (B, 2)] {
                let top = if f == C { n + 1 } else { 4 };
                for m in 1..=top {
                    items.push(item(format!("{} m={m}", spec(f, n).name()), || {
                        let r = verify_symmetrizer::<Q>(&spec(f, n), m)?;
                        Ok((r.passed(), r.to_json()))
                    }));
                }
            }
        }
        7 => items = walg_items(),
        8 => items = character_items(seed),
        9 => {
            let mut cases = vec![];
            for n in 1..=2 {
                cases.extend((1..=3).map(|m| (B, n, m)));
            }
            cases.extend((1..=3).map(|m| (D, 2, m)));
            for n in 1..=3 {
                cases.extend((1..=n.min(3)).map(|m| (C, n, m)));
            }
            for (f, n, m) in cases {
                items.push(item(format!("{} m={m}", spec(f, n).name()), || {
                    let r = verify_basis::<Q>(&spec(f, n), m)?;
                    Ok((r.passed(), r.to_json()))
                }));
            }
        }
        10 => {
            for (f, n, k) in [(B, 1, 1), (B, 1, 2), (D, 2, 1), (B, 2, 1), (C, 2, 1)] {
                items.push(item(format!("{} k={k}", spec(f, n).name()), || {
                    let r = verify_casimir(&alg(f, n), k)?;
                    Ok((r.matched(), r.to_json()))
                }));
            }
        }
        11 => {
            let mut pairs = vec![];
            for m in 1..=3 {
                for mp in m..=(4 - m) {
                    pairs.push((B, 1, m, mp));
                }
            }
            for m in 1..=2 {
                for mp in m..=2 {
                    pairs.push((C, 2, m, mp));
                }
            }
            for (f, n, m, mp) in pairs {
                items.push(item(format!("{} m={m} m'={mp}", spec(f, n).name()), || {
                    let a = alg(f, n);
                    let x = phi_coefficients(&a, m)?;
                    let y = phi_coefficients(&a, mp)?;
                    let mut nonzero = Vec::new();
                    for (i, u) in x.coefficients.iter().enumerate() {
                        for (j, v) in y.coefficients.iter().enumerate() {
                            if !a.commutator(u, v).is_zero() {
                                nonzero.push((i, j));
                            }
                        }
                    }
                    Ok((nonzero.is_empty(), json!({"noncommuting": nonzero})))
                }));
            }
        }
        _ => {}
    }
    Criterion { id, title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), items }
}

fn annihilated(label: String, f: Family, n: usize, elems: impl FnOnce() -> Result<Vec<crate::Pi0Element>>) -> Item {
    item(label, || {
        let r = verify_annihilation(f, n, &elems()?)?;
        Ok((r.all_zero, r.to_json()))
    })
}

fn walg_items() -> Vec<Item> {
    use Family::*;
    let mut items = Vec::new();
    let len = |f: Family, n: usize| match f {
        A => n,
        B => 2 * n + 1,
        _ => 2 * n,
    };
    let mut families = vec![(A, 1), (A, 2), (A, 3), (B, 1), (B, 2), (C, 1), (C, 2)];
    for &(f, n) in &families {
        let top = len(f, n).min(6);
        items.push(annihilated(format!("Miura {f:?} n={n} m<={top}"), f, n, || miura_generators(f, n, top)));
    }
    items.push(annihilated("pseudo-differential D n=2 k<=4".into(), D, 2, || pseudo_diff_miura_d(2, 4)));
    for n in 2..=3 {
        items.push(annihilated(format!("E'_{n} D n={n}"), D, n, || Ok(vec![pfaffian_generator(n)])));
    }
    families.push((D, 2));
    for &(f, n) in &families {
        items.push(annihilated(format!("h-family {f:?} n={n} m<=6"), f, n, || {
            Ok((1..=6).map(|m| h_family::<Q>(f, n, m).apply_to_one()).collect())
        }));
    }
    families.pop();
    for &(f, n) in &families {
        items.push(item(format!("Newton relation {f:?} n={n} m<=6"), || {
            let bad: Vec<usize> = (1..=6).filter(|&m| !newton_relation::<Q>(f, n, m).is_zero()).collect();
            Ok((bad.is_empty(), json!({"nonzero_m": bad})))
        }));
    }
    items
}

fn character_items(seed: u64) -> Vec<Item> {
    use Family::*;
    let mut items = Vec::new();
    for (f, n) in [(A, 2), (A, 3), (B, 1), (B, 2), (C, 1), (C, 2), (D, 2)] {
        let sp = spec(f, n);
        let top = if f == C { n } else { 3 };
        for m in 1..=top {
            items.push(item(format!("char_sum {} m={m}", sp.name()), || {
                let c = char_sum(&sp, m)?.count();
                let rank = if f == A {
                    crate::tensor::gl_symmetrizer::<Q>(sp.dim(), m, GlKind::Sym, Method::Product).rank()
                } else {
                    symmetrizer::<Q>(&sp, m, Method::Product)?.rank()
                };
                let formula = symmetrizer_rank_formula::<Q>(&sp, m);
                let ok = c == rank && formula == Q::from(num_bigint::BigInt::from(c));
                Ok((ok, json!({"count": c, "rank": rank, "formula": formula.to_string()})))
            }));
        }
    }
    for n in 1..=4 {
        for m in 1..=n {
            items.push(item(format!("admissible n={n} m={m}"), || {
                let c = admissible_subsets(n, m).len() as i64;
                let (big, mm) = (2 * n as i64, m as i64);
                let formula: Q = binom::<Q>(big, mm) - binom::<Q>(big, mm - 2);
                Ok((Q::from(num_bigint::BigInt::from(c)) == formula, json!({"count": c, "formula": formula.to_string()})))
            }));
        }
    }
    for n in 1..=3 {
        items.push(item(format!("kappa n={n} 20 trials"), || {
            let r = kappa_vanishing_check::<Q>(n, 20, seed)?;
            Ok((r.passed(), r.to_json()))
        }));
    }
    for (f, n) in [(B, 1), (B, 2), (D, 2)] {
        items.push(item(format!("vanishing series {f:?} n={n} degree 4"), || {
            let ok = vanishing_series_check::<Q>(f, n, 4)?;
            Ok((ok, json!({"vanishes": ok})))
        }));
    }
    items
}
