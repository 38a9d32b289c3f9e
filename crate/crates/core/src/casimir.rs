//! Casimir elements of `U(g_N)` built from symmetrizer traces, and the three
//! descriptions of their Harish-Chandra images.

use std::fmt;

use serde_json::json;

use crate::envu::{Algebra, UElem};
use crate::error::{Error, Result};
use crate::foundations::{gamma_factor, Scalar};
use crate::liealg::{AlgebraSpec, Family};
use crate::poly::{Poly, VarDisplay};
use crate::tensor::{generator_matrix, symmetrizer, trace_words, Method};

/// Polynomial in the Cartan coordinates `mu_1..mu_n`.
pub type MuPolynomial<S> = Poly<usize, S>;

/// The shifted variable `l_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LVar(pub usize);

impl VarDisplay for LVar {
    fn fmt_var(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l[{}]", self.0)
    }
}

fn check(spec: &AlgebraSpec, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Range("k must be positive".into()));
    }
    match spec.family {
        Family::A => Err(Error::Family("Casimir elements are built for types B, C and D".into())),
        Family::C if 2 * k > spec.n + 1 => {
            Err(Error::Range(format!("sp_{} needs 2k <= n + 1, got k = {k}", spec.dim())))
        }
        _ => Ok(()),
    }
}

/// The scalar added to `F_a` in the `a`-th factor (1-based).
fn shift_of<S: Scalar>(family: Family, k: usize, a: usize) -> S {
    let (k, a) = (k as i64, a as i64);
    if family == Family::C {
        S::from_int(k - a + 1)
    } else {
        S::from_int(a - 1 - k)
    }
}

/// `gamma_2k tr S^(2k) (F_1 - k) ... (F_2k + k - 1)` (orthogonal) or
/// `gamma_2k tr S^(2k) (F_1 + k) ... (F_2k - k + 1)` (symplectic). For `sp_2n`
/// with `2k = n + 1` the projector vanishes and so does the element.
pub fn casimir_element<S: Scalar>(alg: &Algebra<S>, k: usize) -> Result<UElem<S>> {
    let spec = *alg.spec();
    check(&spec, k)?;
    let m = 2 * k;
    let op = symmetrizer::<S>(&spec, m, Method::Product)?;
    if op.is_zero() {
        return Ok(UElem::zero());
    }
    let gamma = gamma_factor::<S>(spec.omega(), m as i64)?;
    let mut factors = Vec::with_capacity(m);
    for a in 1..=m {
        let mut f = generator_matrix::<S>(&spec, m, a, 0)?;
        f.shift(spec.dim(), shift_of(spec.family, k, a));
        factors.push(f);
    }
    let mut out = UElem::zero();
    for (w, c) in trace_words(&op, &factors) {
        out.add_scaled(&alg.word(&w), &(c * gamma.clone()));
    }
    Ok(out)
}

/// `mu_i` with `mu_{i'} = -mu_i`; `mu_0` and the middle `mu_{n+1}` of type B are 0.
fn mu_of<S: Scalar>(spec: &AlgebraSpec, i: usize) -> MuPolynomial<S> {
    if i == 0 {
        return Poly::zero();
    }
    match spec.cartan_coordinate(i) {
        Some((j, s)) => Poly::var(j).scale(&S::from_int(s)),
        None => Poly::zero(),
    }
}

/// Sum over weakly increasing (`strict = false`) or strictly increasing words in
/// `alphabet` of `prod_s (mu_{i_s} + shift_s)`.
fn word_sum<S: Scalar>(spec: &AlgebraSpec, alphabet: &[usize], m: usize, strict: bool, k: usize) -> MuPolynomial<S> {
    // acc[t][j]: words of length t whose last letter is alphabet[j - 1] or earlier
    let factor = |s: usize, i: usize| &mu_of::<S>(spec, i) + &Poly::constant(shift_of(spec.family, k, s));
    let len = alphabet.len();
    let mut prev: Vec<MuPolynomial<S>> = vec![Poly::one(); len + 1];
    for s in 1..=m {
        let mut next = vec![Poly::zero(); len + 1];
        for j in 1..=len {
            let before = if strict { &prev[j - 1] } else { &prev[j] };
            let ending_here = before * &factor(s, alphabet[j - 1]);
            next[j] = &next[j - 1] + &ending_here;
        }
        prev = next;
    }
    prev[len].clone()
}

/// The image as a sum over multisets (orthogonal) or subsets (symplectic).
pub fn multiset_image<S: Scalar>(spec: &AlgebraSpec, k: usize) -> Result<MuPolynomial<S>> {
    check(spec, k)?;
    let n = spec.n;
    let big_n = spec.dim();
    let m = 2 * k;
    Ok(match spec.family {
        Family::B => {
            let alphabet: Vec<usize> = (1..=big_n).filter(|&i| i != n + 1).collect();
            word_sum(spec, &alphabet, m, false, k)
        }
        Family::D => {
            let half = S::from_frac(1, 2);
            let no_n: Vec<usize> = (1..=big_n).filter(|&i| i != n).collect();
            let no_np: Vec<usize> = (1..=big_n).filter(|&i| i != n + 1).collect();
            (&word_sum(spec, &no_n, m, false, k) + &word_sum(spec, &no_np, m, false, k)).scale(&half)
        }
        // 1 < ... < n < 0 < n' < ... < 1', with the middle letter carrying mu_0 = 0
        _ => word_sum(spec, &(1..=big_n + 1).map(|i| if i <= n { i } else if i == n + 1 { 0 } else { i - 1 }).collect::<Vec<_>>(), m, true, k),
    })
}

/// `l_i - mu_i`.
pub fn l_offset<S: Scalar>(family: Family, n: usize, i: usize) -> S {
    let base = S::from_int(n as i64 - i as i64);
    match family {
        Family::B => base + S::from_frac(1, 2),
        Family::C => base + S::one(),
        _ => base,
    }
}

/// The factorial complete (orthogonal) or elementary (symplectic) symmetric
/// function of the `l_i^2`, expanded in the `mu_i`.
pub fn factorial_sym<S: Scalar>(spec: &AlgebraSpec, k: usize) -> Result<MuPolynomial<S>> {
    check(spec, k)?;
    let n = spec.n;
    let family = spec.family;
    let lsq = |j: usize| {
        let l = &Poly::var(j) + &Poly::constant(l_offset::<S>(family, n, j));
        &l * &l
    };
    // the subtracted square for letter j in position s (1-based)
    let offset = |j: usize, s: usize| -> S {
        let (j, s) = (S::from_int(j as i64), S::from_int(s as i64));
        let x = match family {
            Family::B => j + s - S::from_frac(3, 2),
            Family::D => j + s - S::from_int(2),
            _ => j - s + S::one(),
        };
        x.clone() * x
    };
    let strict = family == Family::C;
    let mut prev: Vec<MuPolynomial<S>> = vec![Poly::one(); n + 1];
    for s in 1..=k {
        let mut next = vec![Poly::zero(); n + 1];
        for j in 1..=n {
            let before = if strict { &prev[j - 1] } else { &prev[j] };
            let f = &lsq(j) - &Poly::constant(offset(j, s));
            next[j] = &next[j - 1] + &(before * &f);
        }
        prev = next;
    }
    let out = prev[n].clone();
    Ok(if strict && k % 2 == 1 { -&out } else { out })
}

/// Rewrites a polynomial in the `mu_i` in terms of `l_i = mu_i + offset_i`.
pub fn in_shifted_variables<S: Scalar>(spec: &AlgebraSpec, p: &MuPolynomial<S>) -> Poly<LVar, S> {
    p.substitute(&|&i: &usize| &Poly::var(LVar(i)) - &Poly::constant(l_offset::<S>(spec.family, spec.n, i)))
}

/// Dominant integral weights `mu_1 >= ... >= mu_n >= 0` with `|mu| < k`.
pub fn small_partitions(n: usize, k: usize) -> Vec<Vec<i64>> {
    fn rec(n: usize, max: i64, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max.min(budget) {
            cur.push(v);
            rec(n, v, budget - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(n, k as i64 - 1, k as i64 - 1, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CasimirReport<S: Scalar> {
    pub trace_image: MuPolynomial<S>,
    pub multiset: MuPolynomial<S>,
    pub factorial: MuPolynomial<S>,
    pub vanishing: bool,
    pub timings: std::collections::BTreeMap<String, u128>,
}

impl<S: Scalar> CasimirReport<S> {
    pub fn matched(&self) -> bool {
        self.trace_image == self.multiset && self.multiset == self.factorial && self.vanishing
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "match": self.matched(),
            "trace_image": self.trace_image.to_string(),
            "multiset": self.multiset.to_string(),
            "factorial": self.factorial.to_string(),
            "vanishing": self.vanishing,
            "timings": self.timings,
        })
    }
}

/// Three-way comparison of the images, plus vanishing of the image on all
/// partitions of size below `k`.
pub fn verify_casimir<S: Scalar>(alg: &Algebra<S>, k: usize) -> Result<CasimirReport<S>> {
    let spec = *alg.spec();
    check(&spec, k)?;
    if spec.family == Family::C && 2 * k > spec.n {
        return Err(Error::Range(format!("sp_{}: the image formulas need 2k <= n", spec.dim())));
    }
    let mut clock = crate::sugawara::Clock::start();
    let elem = casimir_element(alg, k)?;
    clock.lap("trace");
    let trace_image = alg.hc_classical(&elem)?;
    clock.lap("hc");
    let multiset = multiset_image(&spec, k)?;
    let factorial = factorial_sym(&spec, k)?;
    clock.lap("sums");
    let vanishing = small_partitions(spec.n, k).iter().all(|mu| {
        let at = |p: &MuPolynomial<S>| p.eval(|&i| S::from_int(mu[i - 1]));
        at(&trace_image).is_zero() && at(&multiset).is_zero() && at(&factorial).is_zero()
    });
    Ok(CasimirReport { trace_image, multiset, factorial, vanishing, timings: clock.1 })
}
