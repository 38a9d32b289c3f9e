//! Sparse commutative polynomials over an exact scalar field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::foundations::Scalar;

/// A commutative monomial: variables in increasing order with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono<V>(Vec<(V, u32)>);

impl<V: Ord + Clone> Mono<V> {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: V) -> Self {
        Mono(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut m = Mono::one();
        for (v, e) in pairs {
            m = m.mul(&Mono(vec![(v, e)]));
        }
        m
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// Removes one power of `v`, returning the old exponent (0 if absent).
    fn lower(&self, v: &V) -> Option<(u32, Self)> {
        let pos = self.0.iter().position(|(w, _)| w == v)?;
        let mut out = self.0.clone();
        let e = out[pos].1;
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Mono(out)))
    }

    /// Sum of `weight(v) * e` over the factors.
    pub fn weighted_degree(&self, weight: impl Fn(&V) -> i64) -> i64 {
        self.0.iter().map(|(v, e)| weight(v) * *e as i64).sum()
    }
}

/// Sparse polynomial `sum c_M M` with exact coefficients; zero terms never stored.
#[derive(Clone, PartialEq)]
pub struct Poly<V: Ord, S> {
    terms: BTreeMap<Mono<V>, S>,
}

impl<V: Ord + Clone, S: Scalar> Default for Poly<V, S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Ord + Clone, S: Scalar> Poly<V, S> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn var(v: V) -> Self {
        Self::monomial(Mono::var(v), S::one())
    }

    pub fn monomial(m: Mono<V>, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono<V>, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono<V>, S)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Mono<V>) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Mono::one())
    }

    pub fn add_term(&mut self, m: Mono<V>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.clone() + c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul_mono(&self, m: &Mono<V>, c: &S) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.mul(m), x.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c.clone() * S::from_int(e as i64));
            }
        }
        out
    }

    /// Replaces every variable by a polynomial.
    pub fn substitute<W: Ord + Clone>(&self, f: &impl Fn(&V) -> Poly<W, S>) -> Poly<W, S> {
        let mut cache: BTreeMap<V, Poly<W, S>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let base = cache.entry(v.clone()).or_insert_with(|| f(v)).clone();
                t = &t * &base.pow(*e);
            }
            out = &out + &t;
        }
        out
    }

    /// Renames variables through an injective or non-injective map.
    pub fn map_vars<W: Ord + Clone>(&self, f: impl Fn(&V) -> W) -> Poly<W, S> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mono = Mono::from_pairs(m.factors().iter().map(|(v, e)| (f(v), *e)));
            out.add_term(mono, c.clone());
        }
        out
    }

    pub fn eval(&self, f: impl Fn(&V) -> S) -> S {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = f(v);
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Homogeneous components with respect to a variable weight.
    pub fn components(&self, weight: impl Fn(&V) -> i64) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(&weight))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl<V: Ord + Clone, S: Scalar> Add for &Poly<V, S> {
    type Output = Poly<V, S>;
    fn add(self, rhs: Self) -> Poly<V, S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &S::one());
        out
    }
}

impl<V: Ord + Clone, S: Scalar> Sub for &Poly<V, S> {
    type Output = Poly<V, S>;
    fn sub(self, rhs: Self) -> Poly<V, S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<V: Ord + Clone, S: Scalar> Neg for &Poly<V, S> {
    type Output = Poly<V, S>;
    fn neg(self) -> Poly<V, S> {
        self.scale(&-S::one())
    }
}

impl<V: Ord + Clone, S: Scalar> Mul for &Poly<V, S> {
    type Output = Poly<V, S>;
    fn mul(self, rhs: Self) -> Poly<V, S> {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

/// Variables that know how to print themselves inside a polynomial.
pub trait VarDisplay {
    fn fmt_var(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl<V: Ord + Clone + VarDisplay, S: Scalar> fmt::Display for Poly<V, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{body}")?;
                continue;
            }
            let mut sep = body != "1";
            if sep {
                write!(f, "{body}")?;
            }
            for (v, e) in m.factors() {
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                for k in 0..*e {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    v.fmt_var(f)?;
                }
            }
        }
        Ok(())
    }
}

impl<V: Ord + Clone + VarDisplay, S: Scalar> fmt::Debug for Poly<V, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    impl VarDisplay for u8 {
        fn fmt_var(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "x{self}")
        }
    }

    #[test]
    fn arithmetic() {
        let x: Poly<u8, Q> = Poly::var(1);
        let y: Poly<u8, Q> = Poly::var(2);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.derivative(&1), (&x + &y).scale(&Q::from_int(2)));
        let d = &sq - &(&(&x * &x) + &(&y * &y));
        assert_eq!(d, (&x * &y).scale(&Q::from_int(2)));
        assert_eq!(format!("{}", d), "2*x1*x2");
        assert_eq!(format!("{}", &(&x * &x) - &y), "x1*x1 - x2");
    }
}
