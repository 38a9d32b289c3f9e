//! Combinatorial character sums of the symmetrizer representations, admissible
//! subsets and the identities between the diagonal series `lambda_i(u)`.

mod kappa;
mod shift;

use serde_json::json;

use crate::error::{Error, Result};
use crate::liealg::{AlgebraSpec, Family};

pub use kappa::{kappa_vanishing_check, KappaAssignment, KappaReport};
pub use shift::{vanishing_series_check, LamVar, LambdaPolynomial, ShiftSeries, USeries};

/// Index words of a character sum `lambda_{i_1}(u) lambda_{i_2}(u +- 1) ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSum {
    pub terms: Vec<Vec<usize>>,
}

impl CharSum {
    pub fn count(&self) -> usize {
        self.terms.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"terms": self.terms, "count": self.count()})
    }
}

fn weakly_increasing(big_n: usize, m: usize, keep: &dyn Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    fn rec(start: usize, big_n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..=big_n {
            cur.push(i);
            rec(i, big_n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, big_n, m, &mut Vec::new(), &mut out);
    out.retain(|w| keep(w));
    out
}

/// The index words of the character of the symmetrizer image: weakly increasing
/// words (type A), with `n+1` at most once (B), without both `n` and `n'` (D), or
/// admissible subsets (C, `m <= n`).
pub fn char_sum(spec: &AlgebraSpec, m: usize) -> Result<CharSum> {
    let n = spec.n;
    let big_n = spec.dim();
    let terms = match spec.family {
        Family::A => weakly_increasing(big_n, m, &|_| true),
        Family::B => weakly_increasing(big_n, m, &|w| w.iter().filter(|&&i| i == n + 1).count() <= 1),
        Family::D => {
            let np = spec.prime(n);
            weakly_increasing(big_n, m, &|w| !(w.contains(&n) && w.contains(&np)))
        }
        Family::C => {
            if m > n {
                return Err(Error::Range(format!("the symplectic character sum needs m <= n = {n}")));
            }
            admissible_subsets(n, m)
        }
    };
    Ok(CharSum { terms })
}

/// Is the increasing list admissible: whenever `i = i_r` and `i' = i_s` occur,
/// `s - r <= n - i`.
pub fn is_admissible(n: usize, subset: &[usize]) -> bool {
    for (r, &i) in subset.iter().enumerate() {
        if i > n {
            continue;
        }
        let ip = 2 * n + 1 - i;
        if let Some(s) = subset.iter().position(|&x| x == ip) {
            if s - r > n - i {
                return false;
            }
        }
    }
    true
}

/// All admissible `m`-subsets of `{1, ..., 2n}`, increasing, in lexicographic order.
pub fn admissible_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, top: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..=top {
            cur.push(i);
            rec(i + 1, top, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, 2 * n, m, &mut Vec::new(), &mut out);
    out.retain(|s| is_admissible(n, s));
    out
}
