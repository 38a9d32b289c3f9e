//! Segal-Sugawara vectors from symmetrizer traces and their Harish-Chandra images.

mod current;
pub mod series;

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::json;

use crate::envu::{Algebra, UElem};
use crate::error::{Error, Result};
use crate::foundations::{gamma_factor, Scalar};
use crate::liealg::{AlgebraSpec, Family, Generator};
use crate::tensor::{generator_matrix, gl_symmetrizer, symmetrizer, trace_words, GlKind, Method, TensorOp};
use crate::walg::pi0::{mu, Pi0, TauOp};

pub use current::current_algebra_verify;

/// `c_0 tau^m + c_1 tau^(m-1) + ... + c_m` with `tau`-free coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TauPolynomial<S: Scalar> {
    pub coefficients: Vec<UElem<S>>,
}

impl<S: Scalar> TauPolynomial<S> {
    /// Collects an element with `tau` rightmost by powers of `tau`.
    pub fn from_elem(alg: &Algebra<S>, a: &UElem<S>, m: usize) -> Self {
        let mut by_pow = alg.tau_coefficients(a);
        let coefficients = (0..=m).map(|k| by_pow.remove(&(m - k)).unwrap_or_default()).collect();
        assert!(by_pow.is_empty(), "tau power above {m}");
        TauPolynomial { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `phi_{m a}`.
    pub fn coeff(&self, a: usize) -> &UElem<S> {
        &self.coefficients[a]
    }

    pub fn to_elem(&self, alg: &Algebra<S>) -> UElem<S> {
        let m = self.degree();
        let mut out = UElem::zero();
        for (a, c) in self.coefficients.iter().enumerate() {
            out = &out + &alg.mul(c, &alg.pow(&alg.tau(), (m - a) as u32));
        }
        out
    }

    /// Applies a Harish-Chandra map coefficientwise and reassembles the `tau` powers.
    pub fn image(&self, f: impl Fn(&UElem<S>) -> Result<TauOp<S>>) -> Result<TauOp<S>> {
        let m = self.degree() as i64;
        let mut out = TauOp::zero();
        for (a, c) in self.coefficients.iter().enumerate() {
            out = &out + &f(c)?.mul(&TauOp::tau_pow(m - a as i64, None));
        }
        Ok(out)
    }

    pub fn to_json(&self, family: Family) -> serde_json::Value {
        json!(self.coefficients.iter().map(|c| c.to_json(family)).collect::<Vec<_>>())
    }
}

fn tau_shifted_factors<S: Scalar>(
    spec: &AlgebraSpec,
    m: usize,
) -> Result<Vec<crate::tensor::LocalMatrix<Generator, S>>> {
    (1..=m)
        .map(|a| {
            let mut f = generator_matrix(spec, m, a, -1)?;
            f.add_letter_identity(spec.dim(), Generator::Tau);
            Ok(f)
        })
        .collect()
}

/// `c tr_{1..m} op (tau + F[-1]_1) ... (tau + F[-1]_m)` in normal order.
pub fn trace_element<S: Scalar>(alg: &Algebra<S>, op: &TensorOp<S>, c: &S) -> Result<UElem<S>> {
    let factors = tau_shifted_factors(alg.spec(), op.m())?;
    let mut out = UElem::zero();
    for (w, k) in trace_words(op, &factors) {
        out.add_scaled(&alg.word(&w), &(k * c.clone()));
    }
    Ok(out)
}

pub(crate) fn check_degree(spec: &AlgebraSpec, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Range("m must be positive".into()));
    }
    if spec.family == Family::C && m > spec.n {
        return Err(Error::Range(format!(
            "sp_{}: m = {m} exceeds n = {}; the values for n < m <= 2n+1 need an extension that is not implemented",
            spec.dim(),
            spec.n
        )));
    }
    Ok(())
}

/// `gamma_m(omega) tr S^(m) (tau + F[-1]_1) ... (tau + F[-1]_m)` collected by powers of
/// `tau`. For `gl_N` the antisymmetrizer `A^(m)` is used (see [`psi_coefficients`]
/// for `H^(m)`).
pub fn phi_coefficients<S: Scalar>(alg: &Algebra<S>, m: usize) -> Result<TauPolynomial<S>> {
    let spec = *alg.spec();
    if spec.family == Family::A {
        return gl_coefficients(alg, m, GlKind::Antisym);
    }
    check_degree(&spec, m)?;
    let op = symmetrizer::<S>(&spec, m, Method::Product)?;
    let g = gamma_factor::<S>(spec.omega(), m as i64)?;
    let e = trace_element(alg, &op, &g)?;
    Ok(TauPolynomial::from_elem(alg, &e, m))
}

/// The `H^(m)` coefficients `psi_{m a}` for `gl_N`.
pub fn psi_coefficients<S: Scalar>(alg: &Algebra<S>, m: usize) -> Result<TauPolynomial<S>> {
    gl_coefficients(alg, m, GlKind::Sym)
}

fn gl_coefficients<S: Scalar>(alg: &Algebra<S>, m: usize, kind: GlKind) -> Result<TauPolynomial<S>> {
    let spec = *alg.spec();
    if spec.family != Family::A {
        return Err(Error::Family(format!("{} is not gl_N", spec.name())));
    }
    if m == 0 {
        return Err(Error::Range("m must be positive".into()));
    }
    let op = gl_symmetrizer::<S>(spec.dim(), m, kind, Method::Product);
    let e = trace_element(alg, &op, &S::one())?;
    Ok(TauPolynomial::from_elem(alg, &e, m))
}

/// Minimal ring interface for the noncommutative symmetric functions.
pub trait NcRing: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl<S: Scalar> NcRing for TauOp<S> {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        TauOp::mul(self, other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymKind {
    /// complete: weakly increasing index words
    H,
    /// elementary: strictly decreasing index words
    E,
}

/// `h_m` or `e_m` of the ordered arguments; `zero` and `one` are the ring constants.
pub fn nc_sym_in<T: NcRing>(kind: SymKind, args: &[T], m: usize, zero: &T, one: &T) -> T {
    let mut acc: Vec<T> = (0..=m).map(|k| if k == 0 { one.clone() } else { zero.clone() }).collect();
    for x in args {
        match kind {
            SymKind::H => {
                for k in 1..=m {
                    acc[k] = acc[k].add(&acc[k - 1].mul(x));
                }
            }
            SymKind::E => {
                for k in (1..=m).rev() {
                    acc[k] = acc[k].add(&x.mul(&acc[k - 1]));
                }
            }
        }
    }
    acc.swap_remove(m)
}

pub fn nc_sym<S: Scalar>(kind: SymKind, args: &[TauOp<S>], m: usize) -> TauOp<S> {
    nc_sym_in(kind, args, m, &TauOp::zero(), &TauOp::one())
}

fn atom<S: Scalar>(i: usize, sign: i64) -> TauOp<S> {
    TauOp::tau_plus(mu::<S>(i, -1).scale(&S::from_int(sign)))
}

/// `tau + mu_1[-1], ..., tau + mu_n[-1]`, then `tau - mu_i[-1]` for the listed `i`
/// in decreasing order.
fn atoms<S: Scalar>(plus: usize, minus: usize, middle: bool) -> Vec<TauOp<S>> {
    let mut v: Vec<TauOp<S>> = (1..=plus).map(|i| atom(i, 1)).collect();
    if middle {
        v.push(TauOp::tau());
    }
    v.extend((1..=minus).rev().map(|i| atom(i, -1)));
    v
}

/// The image predicted for `phi_coefficients(spec, m)` under `hc_chi`.
pub fn main_theorem_rhs<S: Scalar>(spec: &AlgebraSpec, m: usize) -> Result<TauOp<S>> {
    check_degree(spec, m)?;
    let n = spec.n;
    Ok(match spec.family {
        Family::A => nc_sym(SymKind::E, &atoms(n, 0, false), m),
        Family::B => nc_sym(SymKind::H, &atoms(n, n, false), m),
        Family::C => nc_sym(SymKind::E, &atoms(n, n, true), m),
        Family::D => {
            let half = S::from_frac(1, 2);
            let mut first = atoms::<S>(n - 1, 0, false);
            first.extend(atoms::<S>(0, n, false));
            let mut second = atoms::<S>(n, 0, false);
            second.extend(atoms::<S>(0, n - 1, false));
            &nc_sym(SymKind::H, &first, m).scale(&half) + &nc_sym(SymKind::H, &second, m).scale(&half)
        }
    })
}

/// `h_m` or `e_m` of `tau + mu_1[-1], ..., tau + mu_N[-1]`.
pub fn gl_rhs<S: Scalar>(big_n: usize, m: usize, kind: GlKind) -> TauOp<S> {
    let k = if kind == GlKind::Sym { SymKind::H } else { SymKind::E };
    nc_sym(k, &atoms(big_n, 0, false), m)
}

pub(crate) fn permutations_with_sign(len: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(p: &mut Vec<usize>, rest: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if rest.is_empty() {
            out.push((p.clone(), sign));
            return;
        }
        for k in 0..rest.len() {
            // choosing the k-th smallest remaining value creates k inversions
            let v = rest.remove(k);
            p.push(v);
            rec(p, rest, if k % 2 == 0 { sign } else { -sign }, out);
            p.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..len).collect(), 1, &mut out);
    out
}

/// The Pfaffian `Pf F~[-1]` for `o_2n` with `F~_ij = F_ij'`.
pub fn pfaffian_ssv<S: Scalar>(alg: &Algebra<S>) -> Result<UElem<S>> {
    let spec = *alg.spec();
    if spec.family != Family::D {
        return Err(Error::Family(format!("the Pfaffian needs type D, got {}", spec.name())));
    }
    let n = spec.n;
    let tilde = |i: usize, j: usize| alg.loop_gen(i, spec.prime(j), -1);
    // Each unordered pair appears 2^n times in the full sum; keep i < j in every
    // pair and divide by n! only.
    let fact: i64 = (1..=n as i64).product();
    let norm = S::from_frac(1, fact);
    let mut out = UElem::zero();
    for (p, sign) in permutations_with_sign(2 * n) {
        if (0..n).any(|k| p[2 * k] > p[2 * k + 1]) {
            continue;
        }
        let mut t = UElem::scalar(norm.clone() * S::from_int(sign));
        for k in 0..n {
            t = alg.mul(&t, &tilde(p[2 * k] + 1, p[2 * k + 1] + 1)?);
            if t.is_zero() {
                break;
            }
        }
        out = &out + &t;
    }
    Ok(out)
}

/// `(mu_1[-1] - tau) ... (mu_n[-1] - tau) 1`.
pub fn pfaffian_rhs<S: Scalar>(n: usize) -> Pi0<S> {
    crate::walg::pfaffian_generator(n)
}

/// Outcome of a verification: both sides, their difference and timings in
/// microseconds.
#[derive(Clone, Debug)]
pub struct Report {
    pub matched: bool,
    pub lhs: String,
    pub rhs: String,
    pub diff: String,
    pub timings: BTreeMap<String, u128>,
    pub note: Option<String>,
}

impl Report {
    pub(crate) fn new<T: std::fmt::Display + PartialEq>(
        lhs: &T,
        rhs: &T,
        diff: String,
        timings: BTreeMap<String, u128>,
    ) -> Self {
        Report {
            matched: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            diff,
            timings,
            note: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "match": self.matched,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "diff": self.diff,
            "timings": self.timings,
        });
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}

pub(crate) struct Clock(Instant, pub(crate) BTreeMap<String, u128>);

impl Clock {
    pub(crate) fn start() -> Self {
        Clock(Instant::now(), BTreeMap::new())
    }

    pub(crate) fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.1.insert(name.to_string(), (now - self.0).as_micros());
        self.0 = now;
    }
}

/// Compares `hc_chi` of [`phi_coefficients`] with [`main_theorem_rhs`].
pub fn verify_main_theorem<S: Scalar>(alg: &Algebra<S>, m: usize) -> Result<Report> {
    if alg.spec().family == Family::A {
        return verify_gl_images(alg, m, GlKind::Antisym);
    }
    let mut clock = Clock::start();
    let phi = phi_coefficients(alg, m)?;
    clock.lap("trace");
    let lhs = phi.image(|c| alg.hc_chi(c))?;
    clock.lap("hc");
    let rhs = main_theorem_rhs::<S>(alg.spec(), m)?;
    clock.lap("rhs");
    Ok(Report::new(&lhs, &rhs, (&lhs - &rhs).to_string(), clock.1))
}

/// Compares `hc_chi(Pf F~[-1])` with `(mu_1[-1] - tau) ... (mu_n[-1] - tau) 1`.
pub fn verify_pfaffian<S: Scalar>(alg: &Algebra<S>) -> Result<Report> {
    let mut clock = Clock::start();
    let pf = pfaffian_ssv(alg)?;
    clock.lap("pfaffian");
    let lhs = alg.hc_chi(&pf)?;
    clock.lap("hc");
    let rhs = TauOp::from_pi0(pfaffian_rhs::<S>(alg.spec().n));
    Ok(Report::new(&lhs, &rhs, (&lhs - &rhs).to_string(), clock.1))
}

/// `hc_chi` of the `gl_N` traces against `e_m` (kind `Antisym`) or `h_m` (kind `Sym`).
pub fn verify_gl_images<S: Scalar>(alg: &Algebra<S>, m: usize, kind: GlKind) -> Result<Report> {
    let big_n = alg.spec().dim();
    if kind == GlKind::Antisym && m > big_n {
        return Err(Error::Range(format!("A^({m}) vanishes on (C^{big_n})^{m}")));
    }
    let mut clock = Clock::start();
    let t = gl_coefficients(alg, m, kind)?;
    clock.lap("trace");
    let lhs = t.image(|c| alg.hc_chi(c))?;
    clock.lap("hc");
    let rhs = gl_rhs::<S>(big_n, m, kind);
    Ok(Report::new(&lhs, &rhs, (&lhs - &rhs).to_string(), clock.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    fn alg(f: Family, n: usize) -> Algebra<Q> {
        Algebra::new(AlgebraSpec::new(f, n).unwrap())
    }

    #[test]
    fn h2_of_two_atoms() {
        let x = atoms::<Q>(1, 1, false);
        let h2 = nc_sym(SymKind::H, &x, 2);
        let expected = &(&TauOp::tau_pow(2, None).scale(&Q::from_int(3))
            + &TauOp::from_pi0(&mu::<Q>(1, -1) * &mu(1, -1)))
            - &TauOp::from_pi0(mu(1, -2));
        assert_eq!(h2, expected);
        assert_eq!(nc_sym(SymKind::H, &x, 1), TauOp::tau().scale(&Q::from_int(2)));
    }

    #[test]
    fn e2_is_decreasing() {
        let x = vec![TauOp::<Q>::from_pi0(mu(1, -1)), TauOp::tau()];
        assert_eq!(nc_sym(SymKind::E, &x, 2), TauOp::tau().mul(&x[0]));
    }

    #[test]
    fn o3_degree_one() {
        let a = alg(Family::B, 1);
        let phi = phi_coefficients(&a, 1).unwrap();
        assert_eq!(phi.coeff(0), &UElem::scalar(Q::from_int(2)));
        assert!(phi.coeff(1).is_zero());
    }

    #[test]
    fn sp2_degree_two_vanishes() {
        // m = 2 > n = 1 is out of range for sp_2
        assert!(phi_coefficients(&alg(Family::C, 1), 2).is_err());
    }

    #[test]
    fn main_theorem_small() {
        for (f, n, m) in [(Family::B, 1, 1), (Family::B, 1, 2), (Family::D, 2, 1), (Family::C, 1, 1), (Family::C, 2, 2)] {
            let r = verify_main_theorem(&alg(f, n), m).unwrap();
            assert!(r.matched, "{f:?} n={n} m={m}: {} vs {}", r.lhs, r.rhs);
        }
    }

    #[test]
    fn pfaffian_o4() {
        let a = alg(Family::D, 2);
        let pf = pfaffian_ssv(&a).unwrap();
        let img = a.hc_chi(&pf).unwrap();
        let expected = &(&mu::<Q>(1, -1) * &mu(2, -1)) - &mu(2, -2);
        assert_eq!(img, TauOp::from_pi0(expected.clone()));
        assert_eq!(pfaffian_rhs::<Q>(2), expected);
        let o2 = alg(Family::D, 1);
        assert_eq!(pfaffian_ssv(&o2).unwrap(), o2.loop_gen(1, 1, -1).unwrap());
    }

    #[test]
    fn gl2_images() {
        let a = alg(Family::A, 2);
        for kind in [GlKind::Sym, GlKind::Antisym] {
            for m in 1..=2 {
                assert!(verify_gl_images(&a, m, kind).unwrap().matched);
            }
        }
        let psi = psi_coefficients(&a, 1).unwrap();
        assert_eq!(psi.coeff(0), &UElem::scalar(Q::from_int(2)));
    }
}
