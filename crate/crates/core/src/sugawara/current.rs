//! The `u`-series form for the current algebra `g[t]`.

use std::collections::{BTreeMap, HashMap};

use crate::envu::{Algebra, PbwOrder, UElem};
use crate::error::{Error, Result};
use crate::foundations::{gamma_factor, Scalar};
use crate::liealg::{Family, Generator};
use crate::tensor::{gl_symmetrizer, symmetrizer, trace_words_pruned, GlKind, LocalMatrix, Method};
use crate::walg::pi0::Pi0;

use super::series::{mu_series, DiffSeries};
use super::{check_degree, nc_sym_in, Clock, NcRing, Report, SymKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    D,
    /// `F_ij[r]` carrying `u^-(r+1)`
    F(Generator),
}

fn depth_cost(w: &[Letter]) -> u32 {
    w.iter()
        .map(|l| match l {
            Letter::D => 0,
            Letter::F(g) => g.depth().unwrap_or(0) as u32 + 1,
        })
        .sum()
}

/// Normal form of a word in `d` and `u^-k` (`0` encodes `d`).
fn weyl_word<S: Scalar>(seq: &[u32], pmax: u32) -> DiffSeries<S> {
    let mut acc = DiffSeries::one(pmax);
    for &k in seq {
        let x = if k == 0 { DiffSeries::d(pmax) } else { DiffSeries::term(k, 0, Pi0::one(), pmax) };
        acc = acc.mul(&x);
    }
    acc
}

/// Checks `gamma_m tr S^(m) (d_u + s F_1(u)) ... (d_u + s F_m(u))` under `hc_top`
/// against the symmetric functions of `d_u + mu_i(u)`. Here `s = -1` for
/// `sp_2n` and `s = 1` otherwise; for `gl_N` the symmetrizer `H^(m)` is used.
///
/// Series are cut at `u^-d`; every coefficient of `u^-p` with `p <= d` is exact on
/// both sides and all of them are compared.
pub fn current_algebra_verify<S: Scalar>(alg: &Algebra<S>, m: usize, d: usize) -> Result<Report> {
    let spec = *alg.spec();
    check_degree(&spec, m)?;
    if d < m {
        return Err(Error::Range(format!("depth {d} is below m = {m}")));
    }
    let pmax = d as u32;
    let mut clock = Clock::start();
    let (op, pref) = match spec.family {
        Family::A => (gl_symmetrizer::<S>(spec.dim(), m, GlKind::Sym, Method::Product), S::one()),
        _ => (symmetrizer::<S>(&spec, m, Method::Product)?, gamma_factor::<S>(spec.omega(), m as i64)?),
    };
    let fsign = S::from_int(if spec.family == Family::C { -1 } else { 1 });
    let dim = spec.dim();
    let mut factors = Vec::new();
    for a in 1..=m {
        let mut f: LocalMatrix<Letter, S> = LocalMatrix::new(a);
        for r in 0..d as i32 {
            for i in 1..=dim {
                for j in 1..=dim {
                    if let Some((sign, (p, q))) = spec.canonicalize(i, j)? {
                        f.push(i, j, vec![Letter::F(Generator::new(p, q, r))], fsign.clone() * S::from_int(sign));
                    }
                }
            }
        }
        f.add_letter_identity(dim, Letter::D);
        factors.push(f);
    }
    let words = trace_words_pruned(&op, &factors, &|w| depth_cost(w) <= pmax);
    clock.lap("trace");

    let opp = alg.in_order(PbwOrder::Opposite);
    let mut weyl_cache: HashMap<Vec<u32>, DiffSeries<S>> = HashMap::new();
    let mut lhs_u: BTreeMap<(u32, u32), UElem<S>> = BTreeMap::new();
    for (w, c) in words {
        let mut gens = Vec::new();
        let mut seq = Vec::new();
        for l in &w {
            match l {
                Letter::D => seq.push(0),
                Letter::F(g) => {
                    gens.push(*g);
                    seq.push(g.depth().unwrap_or(0) as u32 + 1);
                }
            }
        }
        let weyl = weyl_cache.entry(seq.clone()).or_insert_with(|| weyl_word(&seq, pmax));
        let u = opp.word(&gens);
        for (&(p, a), k) in weyl.terms() {
            let k = k.constant_term() * c.clone() * pref.clone();
            lhs_u.entry((p, a)).or_default().add_scaled(&u, &k);
        }
    }
    clock.lap("normal order");

    let mut lhs = DiffSeries::zero(pmax);
    for ((p, a), u) in &lhs_u {
        lhs.add_term(*p, *a, &opp.hc_top(u)?.coeff(0));
    }
    clock.lap("hc");

    let atom = |i: usize, sign: i64| DiffSeries::d(pmax).add(&mu_series(i, sign, pmax));
    let zero = DiffSeries::zero(pmax);
    let one = DiffSeries::one(pmax);
    let n = spec.n;
    let plus = |k: usize| (1..=k).map(|i| atom(i, 1)).collect::<Vec<_>>();
    let minus = |k: usize| (1..=k).rev().map(|i| atom(i, -1)).collect::<Vec<_>>();
    let rhs = match spec.family {
        Family::A => nc_sym_in(SymKind::H, &plus(n), m, &zero, &one),
        Family::B => nc_sym_in(SymKind::H, &[plus(n), minus(n)].concat(), m, &zero, &one),
        Family::C => {
            let args = [plus(n), vec![DiffSeries::d(pmax)], minus(n)].concat();
            nc_sym_in(SymKind::E, &args, m, &zero, &one)
        }
        Family::D => {
            let half = S::from_frac(1, 2);
            let first = nc_sym_in(SymKind::H, &[plus(n - 1), minus(n)].concat(), m, &zero, &one);
            let second = nc_sym_in(SymKind::H, &[plus(n), minus(n - 1)].concat(), m, &zero, &one);
            first.scale(&half).add(&second.scale(&half))
        }
    };
    clock.lap("rhs");
    let diff = lhs.add(&rhs.scale(&-S::one()));
    Ok(Report::new(&lhs, &rhs, diff.to_string(), clock.1))
}
