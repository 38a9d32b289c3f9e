//! Runs the eleven acceptance criteria at exact equality, one PASS/FAIL line each,
//! followed by a few literal values every criterion is anchored to.

use std::process::ExitCode;
use std::time::Instant;

use sugawara::casimir::verify_casimir;
use sugawara::characters::char_sum;
use sugawara::envu::Algebra;
use sugawara::suite::{self, TITLES};
use sugawara::tensor::{symmetrizer, Method};
use sugawara::{AlgebraSpec, Family, Rational as Q};

fn anchors() -> Vec<(String, bool)> {
    let spec = |f, n| AlgebraSpec::new(f, n).unwrap();
    let rank = |f, n, m| symmetrizer::<Q>(&spec(f, n), m, Method::Product).unwrap().rank();
    let o3 = verify_casimir(&Algebra::<Q>::new(spec(Family::B, 1)), 1).unwrap();
    let sp4 = verify_casimir(&Algebra::<Q>::new(spec(Family::C, 2)), 1).unwrap();
    vec![
        ("rank S^(2) on o_3 is 5".into(), rank(Family::B, 1, 2) == 5),
        ("rank S^(2) on o_5 is 14".into(), rank(Family::B, 2, 2) == 14),
        ("rank S^(2) on sp_4 is 5".into(), rank(Family::C, 2, 2) == 5),
        ("sp_4 has 5 admissible 2-subsets".into(), char_sum(&spec(Family::C, 2), 2).unwrap().count() == 5),
        ("o_3 quadratic image is mu[1] + mu[1]*mu[1]".into(), o3.trace_image.to_string() == "mu[1] + mu[1]*mu[1]"),
        ("sp_4 quadratic multiset sum equals factorial form".into(), sp4.multiset == sp4.factorial && sp4.matched()),
    ]
}

fn main() -> ExitCode {
    let mut ok = true;
    for id in 1..=TITLES.len() {
        let t = Instant::now();
        let c = suite::run(id, 2024);
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id}: {} ({} items, {:.2?})", c.title, c.items.len(), t.elapsed());
        for i in c.items.iter().filter(|i| !i.passed) {
            println!("    failed: {} {}", i.label, i.detail);
        }
        ok &= c.passed();
    }
    for (label, passed) in anchors() {
        println!("{} anchor: {label}", if passed { "PASS" } else { "FAIL" });
        ok &= passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
