//! Differential operators `sum c_{p,a} u^-p d_u^a` with polynomial coefficients
//! commuting with `u` and `d_u`, truncated above a fixed `u`-depth.

use std::collections::BTreeMap;
use std::fmt;

use crate::foundations::Scalar;
use crate::walg::pi0::{MuVar, Pi0};

use super::NcRing;

#[derive(Clone, PartialEq)]
pub struct DiffSeries<S: Scalar> {
    /// `(p, a) -> c` for `c u^-p d^a`, derivatives on the right
    terms: BTreeMap<(u32, u32), Pi0<S>>,
    /// coefficients of `u^-p` with `p > pmax` are discarded
    pmax: u32,
}

impl<S: Scalar> DiffSeries<S> {
    pub fn zero(pmax: u32) -> Self {
        DiffSeries { terms: BTreeMap::new(), pmax }
    }

    pub fn one(pmax: u32) -> Self {
        Self::term(0, 0, Pi0::one(), pmax)
    }

    pub fn d(pmax: u32) -> Self {
        Self::term(0, 1, Pi0::one(), pmax)
    }

    /// `c u^-p d^a`.
    pub fn term(p: u32, a: u32, c: Pi0<S>, pmax: u32) -> Self {
        let mut s = Self::zero(pmax);
        s.add_term(p, a, &c);
        s
    }

    pub fn pmax(&self) -> u32 {
        self.pmax
    }

    pub fn add_term(&mut self, p: u32, a: u32, c: &Pi0<S>) {
        if p > self.pmax || c.is_zero() {
            return;
        }
        let e = self.terms.entry((p, a)).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&(p, a));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Pi0<S>> {
        &self.terms
    }

    pub fn coeff(&self, p: u32, a: u32) -> Pi0<S> {
        self.terms.get(&(p, a)).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.pmax);
        for (&(p, a), x) in &self.terms {
            out.add_term(p, a, &x.scale(c));
        }
        out
    }
}

/// `d^a u^-q = sum_j C(a, j) (-1)^j q (q+1) ... (q+j-1) u^-(q+j) d^(a-j)`.
fn commute_coeff<S: Scalar>(a: u32, q: u32, j: u32) -> S {
    let mut c = S::one();
    for t in 0..j {
        c = c * S::from_int((a - t) as i64) * S::from_int((q + t) as i64) / S::from_int((t + 1) as i64);
    }
    if j % 2 == 1 {
        -c
    } else {
        c
    }
}

impl<S: Scalar> NcRing for DiffSeries<S> {
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.pmax = self.pmax.min(other.pmax);
        out.terms.retain(|(p, _), _| *p <= out.pmax);
        for (&(p, a), c) in &other.terms {
            out.add_term(p, a, c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.pmax.min(other.pmax));
        for (&(p, a), x) in &self.terms {
            for (&(q, b), y) in &other.terms {
                let xy = x * y;
                let top = if q == 0 { 0 } else { a };
                for j in 0..=top {
                    if p + q + j > out.pmax {
                        break;
                    }
                    out.add_term(p + q + j, a + b - j, &xy.scale(&commute_coeff(a, q, j)));
                }
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for DiffSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((p, a), c)| format!("({c})*u^-{p}*d^{a}")).collect();
        write!(f, "{} + O(u^-{})", parts.join(" + "), self.pmax + 1)
    }
}

impl<S: Scalar> fmt::Debug for DiffSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `sign * mu_i(u) = sign * sum_{r < pmax} mu_i[r] u^-(r+1)`.
pub fn mu_series<S: Scalar>(i: usize, sign: i64, pmax: u32) -> DiffSeries<S> {
    let mut s = DiffSeries::zero(pmax);
    for r in 0..pmax {
        s.add_term(r + 1, 0, &Pi0::var(MuVar::new(i, r as i32)).scale(&S::from_int(sign)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    #[test]
    fn derivative_past_power() {
        let d = DiffSeries::<Q>::d(5);
        let u2 = DiffSeries::term(2, 0, Pi0::one(), 5);
        // d u^-2 = u^-2 d - 2 u^-3
        let prod = d.mul(&u2);
        assert_eq!(prod.coeff(2, 1), Pi0::one());
        assert_eq!(prod.coeff(3, 0), Pi0::constant(Q::from_int(-2)));
        // d^2 u^-1 = u^-1 d^2 - 2 u^-2 d + 2 u^-3
        let u1 = DiffSeries::term(1, 0, Pi0::one(), 5);
        let p2 = d.mul(&d).mul(&u1);
        assert_eq!(p2.coeff(2, 1), Pi0::constant(Q::from_int(-2)));
        assert_eq!(p2.coeff(3, 0), Pi0::constant(Q::from_int(2)));
    }
}
