//! Explicit bases of the harmonic tensors in the image of the symmetrizer:
//! commutative polynomials in `z_1..z_N` (orthogonal case) and exterior
//! polynomials in `zeta_1..zeta_2n` (symplectic case).

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::characters::{admissible_subsets, is_admissible};
use crate::error::{Error, Result};
use crate::foundations::Scalar;
use crate::liealg::{AlgebraSpec, Family};
use crate::linalg::Echelon;
use crate::poly::{Mono, Poly, VarDisplay};
use crate::tensor::{symmetrizer_rank_formula, TensorOp};

/// The variable `z_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZVar(pub usize);

impl VarDisplay for ZVar {
    fn fmt_var(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z[{}]", self.0)
    }
}

pub type CommPolynomial<S> = Poly<ZVar, S>;

/// Combination of wedge monomials `zeta_{i_1} ^ ... ^ zeta_{i_k}`, stored with
/// strictly increasing index words.
#[derive(Clone, PartialEq, Debug)]
pub struct ExteriorElement<S: Scalar> {
    terms: BTreeMap<Vec<usize>, S>,
}

impl<S: Scalar> Default for ExteriorElement<S> {
    fn default() -> Self {
        ExteriorElement { terms: BTreeMap::new() }
    }
}

/// Sorts a word, returning the sign of the permutation, or `None` on a repeat.
fn sort_word(w: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = w.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((v, odd))
}

impl<S: Scalar> ExteriorElement<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(&[], S::one())
    }

    /// `c zeta_{w_1} ^ ... ^ zeta_{w_k}` for any word.
    pub fn word(w: &[usize], c: S) -> Self {
        let mut e = Self::zero();
        e.add_word(w, c);
        e
    }

    pub fn add_word(&mut self, w: &[usize], c: S) {
        let Some((v, odd)) = sort_word(w) else { return };
        let c = if odd { -c } else { c };
        let e = self.terms.entry(v.clone()).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, S> {
        &self.terms
    }

    pub fn coeff(&self, w: &[usize]) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_word(w, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_word(w, c.clone() * k.clone());
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_word(&[a.as_slice(), b.as_slice()].concat(), x.clone() * y.clone());
            }
        }
        out
    }

    /// Left derivative: `d_i (zeta_{j_1} ^ ...)` removes `zeta_i` after moving it to the front.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            if let Some(p) = w.iter().position(|&j| j == i) {
                let mut rest = w.clone();
                rest.remove(p);
                out.add_word(&rest, if p % 2 == 1 { -c.clone() } else { c.clone() });
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for ExteriorElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if w.is_empty() || body != "1" {
                write!(f, "{body}")?;
                if !w.is_empty() {
                    write!(f, "*")?;
                }
            }
            let atoms: Vec<String> = w.iter().map(|i| format!("zeta[{i}]")).collect();
            write!(f, "{}", atoms.join("*"))?;
        }
        Ok(())
    }
}

/// A harmonic vector in either model.
#[derive(Clone, PartialEq, Debug)]
pub enum HarmonicVector<S: Scalar> {
    Comm(CommPolynomial<S>),
    Ext(ExteriorElement<S>),
}

impl<S: Scalar> HarmonicVector<S> {
    pub fn is_zero(&self) -> bool {
        match self {
            HarmonicVector::Comm(p) => p.is_zero(),
            HarmonicVector::Ext(e) => e.is_zero(),
        }
    }

    /// Coefficients keyed by the sorted index word of each monomial.
    pub fn coefficients(&self) -> BTreeMap<Vec<usize>, S> {
        match self {
            HarmonicVector::Comm(p) => p
                .terms()
                .map(|(m, c)| {
                    let w = m.factors().iter().flat_map(|(v, e)| std::iter::repeat_n(v.0, *e as usize)).collect();
                    (w, c.clone())
                })
                .collect(),
            HarmonicVector::Ext(e) => e.terms.clone(),
        }
    }
}

impl<S: Scalar> fmt::Display for HarmonicVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarmonicVector::Comm(p) => write!(f, "{p}"),
            HarmonicVector::Ext(e) => write!(f, "{e}"),
        }
    }
}

/// A basis vector with its label (exponent tuple or admissible subset) and the
/// sorted index word of its leading monomial.
#[derive(Clone, Debug)]
pub struct BasisVector<S: Scalar> {
    pub label: Vec<usize>,
    pub leading: Vec<usize>,
    pub vector: HarmonicVector<S>,
}

fn fact<S: Scalar>(k: usize) -> S {
    (1..=k as i64).fold(S::one(), |acc, i| acc * S::from_int(i))
}

/// All `len`-tuples of nonnegative integers summing to `m`, in colex order.
fn compositions(len: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == len {
            cur.push(m);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=m {
            cur.push(k);
            rec(len, m - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, m, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Every tuple `a` with `0 <= a_i <= bound_i`.
fn boxes(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out.into_iter().flat_map(|p| (0..=b).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

fn mono_from_exponents(exps: &[usize]) -> Mono<ZVar> {
    Mono::from_pairs(exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (ZVar(i + 1), e as u32)))
}

fn word_of_exponents(exps: &[usize]) -> Vec<usize> {
    exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e)).collect()
}

/// The harmonic polynomial of an exponent tuple `t` (type B, `t_{n+1} <= 1`).
fn basis_b<S: Scalar>(n: usize, t: &[usize]) -> CommPolynomial<S> {
    let big_n = 2 * n + 1;
    let delta = t[n];
    let bound: Vec<usize> = (0..n).map(|i| t[i].min(t[big_n - 1 - i])).collect();
    let mut p = Poly::zero();
    for a in boxes(&bound) {
        let total: usize = a.iter().sum();
        let mut c = num_traits::pow(S::from_int(-2), total) * fact::<S>(total) / fact::<S>(2 * total + delta);
        let mut exps = vec![0; big_n];
        exps[n] = 2 * total + delta;
        for i in 0..n {
            let (k, l) = (t[i] - a[i], t[big_n - 1 - i] - a[i]);
            c = c / (fact::<S>(a[i]) * fact::<S>(k) * fact::<S>(l));
            exps[i] = k;
            exps[big_n - 1 - i] = l;
        }
        p.add_term(mono_from_exponents(&exps), c);
    }
    p
}

/// The harmonic polynomial of an exponent tuple `t` (type D, `t_n t_{n'} = 0`).
fn basis_d<S: Scalar>(n: usize, t: &[usize]) -> CommPolynomial<S> {
    let big_n = 2 * n;
    let bound: Vec<usize> = (0..n - 1).map(|i| t[i].min(t[big_n - 1 - i])).collect();
    let mut p = Poly::zero();
    for a in boxes(&bound) {
        let total: usize = a.iter().sum();
        let (kn, ln) = (total + t[n - 1], total + t[n]);
        let sign = if total % 2 == 1 { -S::one() } else { S::one() };
        let mut c = sign * fact::<S>(total) / (fact::<S>(kn) * fact::<S>(ln));
        let mut exps = vec![0; big_n];
        exps[n - 1] = kn;
        exps[n] = ln;
        for i in 0..n - 1 {
            let (k, l) = (t[i] - a[i], t[big_n - 1 - i] - a[i]);
            c = c / (fact::<S>(a[i]) * fact::<S>(k) * fact::<S>(l));
            exps[i] = k;
            exps[big_n - 1 - i] = l;
        }
        p.add_term(mono_from_exponents(&exps), c);
    }
    p
}

/// Splits an admissible subset into the paired `a_1 < ... < a_k` (with both
/// `a` and `a'` present) and the remaining `b`'s.
fn split_pairs(n: usize, subset: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let prime = |i: usize| 2 * n + 1 - i;
    let a: Vec<usize> = subset.iter().copied().filter(|&i| i <= n && subset.contains(&prime(i))).collect();
    let b = subset.iter().copied().filter(|&i| !a.contains(&i) && !a.contains(&prime(i))).collect();
    (a, b)
}

/// The `c_1 < ... < c_k` attached to an admissible subset: going down from
/// `i = k`, the largest `c_i` with `a_i < c_i < c_{i+1}` and neither `c_i` nor
/// `c_i'` in the subset.
fn c_family(n: usize, subset: &[usize], a: &[usize]) -> Result<Vec<usize>> {
    let prime = |i: usize| 2 * n + 1 - i;
    let mut c = vec![0; a.len()];
    let mut upper = n + 1;
    for i in (0..a.len()).rev() {
        let found = (a[i] + 1..upper).rev().find(|&x| !subset.contains(&x) && !subset.contains(&prime(x)));
        let Some(x) = found else {
            return Err(Error::Range(format!("no c-family for the subset {subset:?}")));
        };
        c[i] = x;
        upper = x;
    }
    Ok(c)
}

fn basis_c<S: Scalar>(n: usize, subset: &[usize]) -> Result<ExteriorElement<S>> {
    let prime = |i: usize| 2 * n + 1 - i;
    let (a, b) = split_pairs(n, subset);
    let c = c_family(n, subset, &a)?;
    let x = |i: usize| ExteriorElement::word(&[i, prime(i)], S::one());
    let y = ExteriorElement::word(&b, S::one());
    let k = a.len();
    let mut out = ExteriorElement::zero();
    for mask in 0u32..(1 << k) {
        let mut term = ExteriorElement::one();
        for (j, &aj) in a.iter().enumerate() {
            if mask & (1 << j) == 0 {
                term = term.wedge(&x(aj));
            }
        }
        for (j, &cj) in c.iter().enumerate() {
            if mask & (1 << j) != 0 {
                term = term.wedge(&x(cj));
            }
        }
        let sign = if mask.count_ones() % 2 == 1 { -S::one() } else { S::one() };
        out = out.add(&term.wedge(&y).scale(&sign));
    }
    Ok(out)
}

fn check_spec(spec: &AlgebraSpec, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Range("m must be positive".into()));
    }
    match spec.family {
        Family::A => Err(Error::Family("harmonic bases exist for types B, C and D".into())),
        Family::C if m > spec.n => Err(Error::Range(format!("the symplectic basis needs m <= n = {}", spec.n))),
        _ => Ok(()),
    }
}

/// The basis of harmonic vectors of degree `m`, in colex order of labels.
pub fn basis<S: Scalar>(spec: &AlgebraSpec, m: usize) -> Result<Vec<BasisVector<S>>> {
    check_spec(spec, m)?;
    let n = spec.n;
    let big_n = spec.dim();
    match spec.family {
        Family::B => Ok(compositions(big_n, m)
            .into_iter()
            .filter(|t| t[n] <= 1)
            .map(|t| BasisVector { leading: word_of_exponents(&t), vector: HarmonicVector::Comm(basis_b(n, &t)), label: t })
            .collect()),
        Family::D => Ok(compositions(big_n, m)
            .into_iter()
            .filter(|t| t[n - 1] * t[n] == 0)
            .map(|t| BasisVector { leading: word_of_exponents(&t), vector: HarmonicVector::Comm(basis_d(n, &t)), label: t })
            .collect()),
        _ => {
            let mut subsets = admissible_subsets(n, m);
            subsets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
            subsets
                .into_iter()
                .map(|s| {
                    Ok(BasisVector { leading: s.clone(), vector: HarmonicVector::Ext(basis_c(n, &s)?), label: s })
                })
                .collect()
        }
    }
}

/// Lexicographic key of an exterior monomial: the remaining `b`'s, then the
/// paired `a`'s.
fn pair_key(n: usize, w: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = split_pairs(n, w);
    (b, a)
}

/// The symplectic basis refined so that every vector contains exactly one
/// admissible monomial, by elimination in decreasing lexicographic order.
pub fn refined_basis<S: Scalar>(spec: &AlgebraSpec, m: usize) -> Result<Vec<BasisVector<S>>> {
    if spec.family != Family::C {
        return Err(Error::Family("the refined basis is the symplectic one".into()));
    }
    let n = spec.n;
    let mut vecs = basis::<S>(spec, m)?;
    let mut order: Vec<usize> = (0..vecs.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(pair_key(n, &vecs[i].label)));
    let mut done: BTreeMap<Vec<usize>, ExteriorElement<S>> = BTreeMap::new();
    for i in order {
        let HarmonicVector::Ext(mut v) = vecs[i].vector.clone() else { unreachable!() };
        let own = vecs[i].label.clone();
        let others: Vec<(Vec<usize>, S)> =
            v.terms().iter().filter(|(w, _)| **w != own && is_admissible(n, w)).map(|(w, c)| (w.clone(), c.clone())).collect();
        for (w, c) in others {
            let r = done.get(&w).ok_or_else(|| Error::Range(format!("admissible monomial {w:?} is not later in the order")))?;
            v = v.add(&r.scale(&(-c / r.coeff(&w))));
        }
        done.insert(own, v.clone());
        vecs[i].vector = HarmonicVector::Ext(v);
    }
    Ok(vecs)
}

/// The Laplace operator of the family.
pub fn laplacian<S: Scalar>(spec: &AlgebraSpec, v: &HarmonicVector<S>) -> HarmonicVector<S> {
    let n = spec.n;
    match v {
        HarmonicVector::Comm(p) => {
            let mut out = Poly::zero();
            for i in 1..=n {
                out = &out + &p.derivative(&ZVar(i)).derivative(&ZVar(spec.prime(i)));
            }
            if spec.family == Family::B {
                let mid = p.derivative(&ZVar(n + 1)).derivative(&ZVar(n + 1));
                out = &out + &mid.scale(&S::from_frac(1, 2));
            }
            HarmonicVector::Comm(out)
        }
        HarmonicVector::Ext(e) => {
            let mut out = ExteriorElement::zero();
            for i in 1..=n {
                out = out.add(&e.derivative(spec.prime(i)).derivative(i));
            }
            HarmonicVector::Ext(out)
        }
    }
}

/// The tensor in `(C^N)^{(x)m}` corresponding to a vector: `z_{i_1}...z_{i_m}` is
/// the symmetrization of `e_{i_1} (x) ... (x) e_{i_m}`, and wedge monomials the
/// antisymmetrization.
pub fn tensor_lift<S: Scalar>(spec: &AlgebraSpec, m: usize, v: &HarmonicVector<S>) -> BTreeMap<usize, S> {
    let shape = TensorOp::<S>::zero(spec.dim(), m);
    let skew = matches!(v, HarmonicVector::Ext(_));
    let mut out: BTreeMap<usize, S> = BTreeMap::new();
    let norm = S::one() / fact::<S>(m);
    for (w, c) in v.coefficients() {
        for (perm, sign) in crate::sugawara::permutations_with_sign(w.len()) {
            let img: Vec<usize> = perm.iter().map(|&p| w[p]).collect();
            let k = shape.encode(&img);
            let mut x = c.clone() * norm.clone();
            if skew && sign < 0 {
                x = -x;
            }
            let e = out.entry(k).or_insert_with(S::zero);
            *e = e.clone() + x;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Outcome of [`verify_basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct BasisReport {
    pub count: usize,
    pub expected: String,
    pub annihilated: bool,
    pub count_matches: bool,
    pub independent: bool,
    pub leading_unique: bool,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.annihilated && self.count_matches && self.independent && self.leading_unique
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "match": self.passed(),
            "count": self.count,
            "expected": self.expected,
            "annihilated": self.annihilated,
            "count_matches": self.count_matches,
            "independent": self.independent,
            "leading_unique": self.leading_unique,
        })
    }
}

/// Is `w` one of the monomials singled out as leading: for B the ones with
/// `z_{n+1}` to power at most 1, for D the ones without both `z_n` and `z_n'`,
/// for C the admissible ones.
fn is_leading_shape(spec: &AlgebraSpec, w: &[usize]) -> bool {
    let n = spec.n;
    let count = |i: usize| w.iter().filter(|&&j| j == i).count();
    match spec.family {
        Family::B => count(n + 1) <= 1,
        Family::D => count(n) * count(n + 1) == 0,
        _ => is_admissible(n, w),
    }
}

/// Checks harmonicity, the count against the dimension formula, linear
/// independence and the leading monomials. For the symplectic family the
/// leading-monomial check runs on the refined basis, while the others run on
/// the basis as constructed.
pub fn verify_basis<S: Scalar>(spec: &AlgebraSpec, m: usize) -> Result<BasisReport> {
    let vecs = basis::<S>(spec, m)?;
    let annihilated = vecs.iter().all(|b| laplacian(spec, &b.vector).is_zero());
    let expected = symmetrizer_rank_formula::<S>(spec, m);
    let count_matches = S::from_int(vecs.len() as i64) == expected;
    let mut ech = Echelon::new();
    let independent = vecs.iter().all(|b| ech.insert(b.vector.coefficients()));
    let checked = if spec.family == Family::C { refined_basis::<S>(spec, m)? } else { vecs.clone() };
    let leading_unique = checked.iter().all(|b| {
        let coeffs = b.vector.coefficients();
        let shaped: Vec<&Vec<usize>> = coeffs.keys().filter(|w| is_leading_shape(spec, w)).collect();
        shaped.len() == 1 && *shaped[0] == b.leading
    });
    Ok(BasisReport { count: vecs.len(), expected: expected.to_string(), annihilated, count_matches, independent, leading_unique })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    fn spec(f: Family, n: usize) -> AlgebraSpec {
        AlgebraSpec::new(f, n).unwrap()
    }

    #[test]
    fn b1_degree_two() {
        let b = basis::<Q>(&spec(Family::B, 1), 2).unwrap();
        assert_eq!(b.len(), 5);
        let v = b.iter().find(|v| v.label == vec![1, 0, 1]).unwrap();
        assert_eq!(v.vector.to_string(), "z[1]*z[3] - z[2]*z[2]");
    }

    #[test]
    fn laplacian_examples() {
        let z = |i| Poly::<ZVar, Q>::var(ZVar(i));
        let b1 = spec(Family::B, 1);
        assert_eq!(laplacian(&b1, &HarmonicVector::Comm(&z(2) * &z(2))), HarmonicVector::Comm(Poly::one()));
        let d2 = spec(Family::D, 2);
        assert_eq!(laplacian(&d2, &HarmonicVector::Comm(&z(1) * &z(4))), HarmonicVector::Comm(Poly::one()));
        let c2 = spec(Family::C, 2);
        let mut e = ExteriorElement::word(&[1, 4], Q::from_int(1));
        e.add_word(&[2, 3], Q::from_int(-1));
        assert!(laplacian(&c2, &HarmonicVector::Ext(e)).is_zero());
    }

    #[test]
    fn c2_basis() {
        let b = basis::<Q>(&spec(Family::C, 2), 2).unwrap();
        assert_eq!(b.len(), 5);
        let v = b.iter().find(|v| v.label == vec![1, 4]).unwrap();
        assert_eq!(v.vector.to_string(), "zeta[1]*zeta[4] - zeta[2]*zeta[3]");
    }

    #[test]
    fn verify_small() {
        for (f, n, m) in [(Family::B, 1, 2), (Family::D, 2, 2), (Family::C, 2, 2), (Family::C, 3, 3), (Family::B, 2, 3), (Family::D, 3, 3)] {
            let r = verify_basis::<Q>(&spec(f, n), m).unwrap();
            assert!(r.passed(), "{f:?} {n} {m}: {r:?}");
        }
    }

    #[test]
    fn lifts_are_fixed_by_the_symmetrizer() {
        use crate::tensor::{symmetrizer, Method};
        for (f, n, m) in [(Family::B, 1, 2), (Family::B, 2, 2), (Family::D, 2, 3), (Family::C, 2, 2)] {
            let sp = spec(f, n);
            let s = symmetrizer::<Q>(&sp, m, Method::Product).unwrap();
            for b in basis::<Q>(&sp, m).unwrap() {
                let v = tensor_lift(&sp, m, &b.vector);
                assert_eq!(s.apply(&v), v, "{f:?} {n} {m} {:?}", b.label);
            }
        }
    }
}
