//! The polynomial ring in `mu_i[r]`, the translation operator `T`, and operators
//! `sum P_k tau^k` with `tau` acting as `T`.

use std::collections::BTreeMap;
use std::fmt;

use crate::foundations::{gen_binomial, Scalar};
use crate::poly::{Poly, VarDisplay};

/// The variable `mu_i[r]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuVar {
    pub i: u8,
    pub r: i32,
}

impl MuVar {
    pub fn new(i: usize, r: i32) -> Self {
        MuVar { i: i as u8, r }
    }
}

impl VarDisplay for MuVar {
    fn fmt_var(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu[{};{}]", self.i, self.r)
    }
}

/// Polynomial in the `mu_i[r]`.
pub type Pi0<S> = Poly<MuVar, S>;

pub fn mu<S: Scalar>(i: usize, r: i32) -> Pi0<S> {
    Poly::var(MuVar::new(i, r))
}

/// The derivation `T mu_i[r] = -r mu_i[r-1]`.
pub fn translation_t<S: Scalar>(p: &Pi0<S>) -> Pi0<S> {
    let mut out = Pi0::zero();
    for v in p.variables() {
        if v.r == 0 {
            continue;
        }
        let d = p.derivative(&v);
        let img = mu::<S>(v.i as usize, v.r - 1).scale(&S::from_int(-(v.r as i64)));
        out = &out + &(&d * &img);
    }
    out
}

pub fn translation_t_pow<S: Scalar>(p: &Pi0<S>, k: u32) -> Pi0<S> {
    let mut q = p.clone();
    for _ in 0..k {
        q = translation_t(&q);
    }
    q
}

/// `sum_k P_k tau^k` with coefficients on the left of `tau`.
///
/// With `floor = None` the operator is exact and has only non-negative powers.
/// With `floor = Some(f)` all coefficients of `tau^k`, `k < f`, are unknown and
/// discarded.
#[derive(Clone, PartialEq)]
pub struct TauOp<S: Scalar> {
    coeffs: BTreeMap<i64, Pi0<S>>,
    floor: Option<i64>,
}

pub type Pi0Tau<S> = TauOp<S>;

impl<S: Scalar> TauOp<S> {
    pub fn zero() -> Self {
        TauOp { coeffs: BTreeMap::new(), floor: None }
    }

    pub fn from_pi0(p: Pi0<S>) -> Self {
        Self::term(p, 0)
    }

    pub fn constant(c: S) -> Self {
        Self::from_pi0(Poly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn tau() -> Self {
        Self::term(Poly::one(), 1)
    }

    /// `tau^k` for any integer `k`; negative powers need a floor.
    pub fn tau_pow(k: i64, floor: Option<i64>) -> Self {
        let mut t = Self::term(Poly::one(), k);
        t.floor = floor;
        t.truncate();
        t
    }

    pub fn term(p: Pi0<S>, k: i64) -> Self {
        let mut t = Self::zero();
        t.add_term(k, &p);
        t
    }

    /// `tau + p`.
    pub fn tau_plus(p: Pi0<S>) -> Self {
        &Self::tau() + &Self::from_pi0(p)
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn with_floor(mut self, floor: Option<i64>) -> Self {
        self.floor = match (self.floor, floor) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.truncate();
        self
    }

    fn truncate(&mut self) {
        if let Some(f) = self.floor {
            self.coeffs.retain(|k, _| *k >= f);
        }
    }

    pub fn add_term(&mut self, k: i64, p: &Pi0<S>) {
        if p.is_zero() || self.floor.is_some_and(|f| k < f) {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e = &*e + p;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> Pi0<S> {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Pi0<S>> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &S) -> Self {
        TauOp {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, p)| (*k, p.scale(c)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
            floor: self.floor,
        }
    }

    /// Applies a ring map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Pi0<S>) -> Pi0<S>) -> Self {
        let mut out = TauOp { coeffs: BTreeMap::new(), floor: self.floor };
        for (k, p) in &self.coeffs {
            out.add_term(*k, &f(p));
        }
        out
    }

    /// The element obtained by acting on `1` (`tau 1 = 0`).
    pub fn apply_to_one(&self) -> Pi0<S> {
        self.coeff(0)
    }

    /// Acts on `q` with `tau` acting as `T`; only for exact operators with
    /// non-negative powers.
    pub fn apply(&self, q: &Pi0<S>) -> Pi0<S> {
        assert!(self.floor.is_none(), "cannot apply a truncated operator");
        let mut out = Pi0::zero();
        for (k, p) in &self.coeffs {
            assert!(*k >= 0, "negative tau power in apply");
            out = &out + &(p * &translation_t_pow(q, *k as u32));
        }
        out
    }

    fn combined_floor(&self, other: &Self) -> Option<i64> {
        let (ta, tb) = (self.top(), other.top());
        let a = self.floor.map(|f| f + tb.unwrap_or(f));
        let b = other.floor.map(|f| f + ta.unwrap_or(f));
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let floor = self.combined_floor(other);
        let mut out = TauOp { coeffs: BTreeMap::new(), floor };
        for (&a, p) in &self.coeffs {
            for (&b, q) in &other.coeffs {
                // tau^a q = sum_j C(a, j) T^j(q) tau^(a-j)
                let mut j = 0i64;
                let mut tq = q.clone();
                loop {
                    let k = a + b - j;
                    if a >= 0 && j > a {
                        break;
                    }
                    if let Some(f) = floor {
                        if k < f {
                            break;
                        }
                    } else if a < 0 {
                        panic!("negative tau power without a truncation floor");
                    }
                    if tq.is_zero() {
                        break;
                    }
                    let c = gen_binomial(&S::from_int(a), j);
                    if !c.is_zero() {
                        out.add_term(k, &(p * &tq).scale(&c));
                    }
                    tq = translation_t(&tq);
                    j += 1;
                }
            }
        }
        out
    }

    /// `mu_i[r] -> -mu_i[r]`.
    pub fn flip_sign(&self) -> Self {
        self.map_coeffs(flip_mu)
    }
}

/// `mu_i[r] -> -mu_i[r]` on polynomials.
pub fn flip_mu<S: Scalar>(p: &Pi0<S>) -> Pi0<S> {
    let mut out = Pi0::zero();
    for (m, c) in p.terms() {
        let sign = if m.total_degree() % 2 == 0 { S::one() } else { -S::one() };
        out.add_term(m.clone(), c.clone() * sign);
    }
    out
}

impl<S: Scalar> std::ops::Add for &TauOp<S> {
    type Output = TauOp<S>;
    fn add(self, rhs: Self) -> TauOp<S> {
        let floor = match (self.floor, rhs.floor) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let mut out = TauOp { coeffs: self.coeffs.clone(), floor };
        out.truncate();
        for (k, p) in &rhs.coeffs {
            out.add_term(*k, p);
        }
        out
    }
}

impl<S: Scalar> std::ops::Sub for &TauOp<S> {
    type Output = TauOp<S>;
    fn sub(self, rhs: Self) -> TauOp<S> {
        self + &rhs.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for TauOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, p) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match *k {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*tau")?,
                _ => write!(f, "({p})*tau^{k}")?,
            }
        }
        if let Some(fl) = self.floor {
            write!(f, " + O(tau^{})", fl - 1)?;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for TauOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    #[test]
    fn translation_examples() {
        let m1: Pi0<Q> = mu(1, -1);
        assert_eq!(translation_t(&m1), mu(1, -2));
        let sq = &m1 * &m1;
        assert_eq!(translation_t(&sq), (&m1 * &mu(1, -2)).scale(&Q::from_int(2)));
        assert_eq!(translation_t(&mu::<Q>(2, -2)), mu::<Q>(2, -3).scale(&Q::from_int(2)));
    }

    #[test]
    fn tau_commutation() {
        let t = TauOp::<Q>::tau();
        let m = TauOp::from_pi0(mu::<Q>(1, -1));
        let lhs = t.mul(&m);
        let rhs = &m.mul(&t) + &TauOp::from_pi0(mu(1, -2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_tau() {
        let f = Some(-6);
        let inv = TauOp::<Q>::tau_pow(-1, f);
        let prod = TauOp::tau().mul(&inv.mul(&TauOp::from_pi0(mu(1, -1))));
        assert_eq!(prod.coeff(0), mu(1, -1));
        assert_eq!(prod.coeff(-1), Pi0::zero());
        // tau^-1 mu[-1] = mu[-1] tau^-1 - mu[-2] tau^-2 + 2 mu[-3] tau^-3 - ...
        let x = inv.mul(&TauOp::from_pi0(mu(1, -1)));
        assert_eq!(x.coeff(-2), -&mu::<Q>(1, -2));
        assert_eq!(x.coeff(-3), mu::<Q>(1, -3).scale(&Q::from_int(2)));
    }
}
