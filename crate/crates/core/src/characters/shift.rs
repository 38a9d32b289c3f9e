//! Series in `u^-1` with coefficients in the `lambda_i^(r)`, the shift operator
//! `S = exp(d_u)` and the vanishing series in the `sigma_i(u) = lambda_i(u) S - 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::foundations::{binom, gen_binomial, Scalar};
use crate::liealg::Family;
use crate::poly::{Poly, VarDisplay};
use crate::sugawara::{nc_sym_in, NcRing, SymKind};

/// The variable `lambda_i^(r)`, of degree `r - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LamVar {
    pub i: u8,
    pub r: u32,
}

impl VarDisplay for LamVar {
    fn fmt_var(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda[{};{}]", self.i, self.r)
    }
}

pub type LambdaPolynomial<S> = Poly<LamVar, S>;

fn lam_degree(v: &LamVar) -> i64 {
    v.r as i64 - 1
}

/// `sum_{p <= pmax} c_p u^-p`.
#[derive(Clone, PartialEq, Debug)]
pub struct USeries<S: Scalar> {
    c: Vec<LambdaPolynomial<S>>,
}

impl<S: Scalar> USeries<S> {
    pub fn zero(pmax: usize) -> Self {
        USeries { c: vec![Poly::zero(); pmax + 1] }
    }

    pub fn constant(x: LambdaPolynomial<S>, pmax: usize) -> Self {
        let mut s = Self::zero(pmax);
        s.c[0] = x;
        s
    }

    /// `lambda_i(u) = 1 + sum_r lambda_i^(r) u^-r`.
    pub fn lambda(i: usize, pmax: usize) -> Self {
        let mut s = Self::constant(Poly::one(), pmax);
        for r in 1..=pmax {
            s.c[r] = Poly::var(LamVar { i: i as u8, r: r as u32 });
        }
        s
    }

    pub fn pmax(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, p: usize) -> &LambdaPolynomial<S> {
        &self.c[p]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        USeries { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: &S) -> Self {
        USeries { c: self.c.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let pmax = self.pmax();
        let mut out = Self::zero(pmax);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(pmax + 1 - i) {
                if !b.is_zero() {
                    out.c[i + j] = &out.c[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if self.c[0] != Poly::one() {
            return Err(Error::DegenerateAssignment("series must start with 1".into()));
        }
        let pmax = self.pmax();
        let mut out = Self::constant(Poly::one(), pmax);
        for p in 1..=pmax {
            let mut acc = Poly::zero();
            for j in 1..=p {
                acc = &acc + &(&self.c[j] * &out.c[p - j]);
            }
            out.c[p] = -&acc;
        }
        Ok(out)
    }

    /// `f(u + a)` re-expanded in `u^-1`.
    pub fn shift(&self, a: &S) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let pmax = self.pmax();
        let mut out = Self::zero(pmax);
        for (p, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            // (u + a)^-p = sum_j C(-p, j) a^j u^-(p+j)
            let mut apow = S::one();
            for j in 0..=(pmax - p) {
                let k = if p == 0 {
                    if j == 0 { S::one() } else { S::zero() }
                } else {
                    binom::<S>(-(p as i64), j as i64) * apow.clone()
                };
                if !k.is_zero() {
                    out.c[p + j] = &out.c[p + j] + &x.scale(&k);
                }
                apow = apow * a.clone();
            }
        }
        out
    }

    /// The series `f` with `f(u) f(u + a) = g(u)` and constant term 1 (`a != 0`
    /// not needed; any `a` works since the leading coefficient is 2).
    pub fn solve_product_with_shift(g: &Self, a: &S) -> Self {
        let pmax = g.pmax();
        let mut f = Self::constant(Poly::one(), pmax);
        for p in 1..=pmax {
            let prod = f.mul(&f.shift(a));
            let rest = &g.c[p] - &prod.c[p];
            f.c[p] = rest.scale(&S::from_frac(1, 2));
        }
        f
    }
}

/// `sum_s f_s(u) S^s` with `S f(u) = f(u + 1) S`.
#[derive(Clone, PartialEq, Debug)]
pub struct ShiftSeries<S: Scalar> {
    terms: BTreeMap<u32, USeries<S>>,
    pmax: usize,
}

impl<S: Scalar> ShiftSeries<S> {
    pub fn zero(pmax: usize) -> Self {
        ShiftSeries { terms: BTreeMap::new(), pmax }
    }

    pub fn term(s: u32, f: USeries<S>) -> Self {
        let pmax = f.pmax();
        let mut out = Self::zero(pmax);
        out.add_term(s, &f);
        out
    }

    pub fn scalar(k: S, pmax: usize) -> Self {
        Self::term(0, USeries::constant(Poly::constant(k), pmax))
    }

    fn add_term(&mut self, s: u32, f: &USeries<S>) {
        let e = self.terms.entry(s).or_insert_with(|| USeries::zero(self.pmax));
        *e = e.add(f);
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(self.pmax);
        for (s, f) in &self.terms {
            out.add_term(*s, &f.scale(k));
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<u32, USeries<S>> {
        &self.terms
    }

    /// `sigma(u) = f(u) S - 1`.
    pub fn sigma(f: &USeries<S>) -> Self {
        let mut out = Self::term(1, f.clone());
        out.add_term(0, &USeries::constant(Poly::constant(-S::one()), f.pmax()));
        out
    }

    /// Homogeneous components: expanding `S^s = sum_k s^k d^k / k!`, a term
    /// `c u^-p S^s` with `c` of degree `g` contributes `s^k c / k!` to the
    /// degree `g - p - k` part. Returns true iff the parts of degree
    /// `0, -1, ..., -dmax` vanish on all computed coefficients.
    pub fn components_vanish(&self, dmax: usize) -> bool {
        // (p, monomial) -> list of (s, coefficient)
        type Groups<S> = BTreeMap<(usize, crate::poly::Mono<LamVar>), Vec<(u32, S)>>;
        let mut groups: Groups<S> = BTreeMap::new();
        for (s, f) in &self.terms {
            for p in 0..=f.pmax() {
                for (mono, c) in f.coeff(p).terms() {
                    groups.entry((p, mono.clone())).or_default().push((*s, c.clone()));
                }
            }
        }
        for ((p, mono), cs) in &groups {
            let g = mono.weighted_degree(lam_degree);
            for d in 0..=dmax as i64 {
                let k = g - *p as i64 + d;
                if k < 0 {
                    continue;
                }
                let mut acc = S::zero();
                for (s, c) in cs {
                    let pow = if k == 0 { S::one() } else { S::from_int((*s as i64).pow(k as u32)) };
                    acc = acc + c.clone() * pow;
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl<S: Scalar> NcRing for ShiftSeries<S> {
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (s, f) in &o.terms {
            out.add_term(*s, f);
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.pmax);
        let mut shifted: BTreeMap<(u32, u32), USeries<S>> = BTreeMap::new();
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                let gs = shifted
                    .entry((*a, *b))
                    .or_insert_with(|| g.shift(&S::from_int(*a as i64)))
                    .clone();
                out.add_term(a + b, &f.mul(&gs));
            }
        }
        out
    }
}

/// `lambda_1, ..., lambda_N` with `lambda_1..lambda_n` free and the rest solved
/// from the relations between the diagonal series.
fn lambda_family<S: Scalar>(family: Family, n: usize, pmax: usize) -> Result<Vec<USeries<S>>> {
    let big_n = if family == Family::B { 2 * n + 1 } else { 2 * n };
    let kappa: S = S::from_frac(big_n as i64, 2) - S::one();
    // index 0 and N+1 hold the constant series 1
    let mut lam: Vec<Option<USeries<S>>> = vec![None; big_n + 2];
    lam[0] = Some(USeries::constant(Poly::one(), pmax));
    lam[big_n + 1] = Some(USeries::constant(Poly::one(), pmax));
    for (i, slot) in lam.iter_mut().enumerate().take(n + 1).skip(1) {
        *slot = Some(USeries::lambda(i, pmax));
    }
    let prime = |i: usize| big_n + 1 - i;
    for i in 0..n {
        // lambda_{(i+1)'}(u) = lambda_i(u + kappa - i) lambda_{i'}(u) / lambda_{i+1}(u + kappa - i)
        let shift = kappa.clone() - S::from_int(i as i64);
        let a = lam[i].as_ref().unwrap().shift(&shift);
        let b = lam[prime(i)].as_ref().unwrap().clone();
        let c = lam[i + 1].as_ref().unwrap().shift(&shift).inverse()?;
        lam[prime(i + 1)] = Some(a.mul(&b).mul(&c));
    }
    if family == Family::B {
        // lambda_{n+1}(u) lambda_{n+1}(u - 1/2) = lambda_n(u - 1/2) lambda_{n'}(u)
        let half = S::from_frac(-1, 2);
        let g = lam[n].as_ref().unwrap().shift(&half).mul(lam[prime(n)].as_ref().unwrap());
        lam[n + 1] = Some(USeries::solve_product_with_shift(&g, &half));
    }
    Ok(lam.into_iter().skip(1).take(big_n).map(|x| x.unwrap()).collect())
}

/// Checks that the infinite `sigma`-series of types B and D vanish in degrees
/// `0, -1, ..., -dmax`, on all `u`-coefficients down to `u^-(dmax+2)`.
pub fn vanishing_series_check<S: Scalar>(family: Family, n: usize, dmax: usize) -> Result<bool> {
    if !matches!(family, Family::B | Family::D) {
        return Err(Error::Family("the vanishing series exist for types B and D".into()));
    }
    if n == 0 || (family == Family::D && n < 2) {
        return Err(Error::Range("rank too small".into()));
    }
    if dmax == 0 {
        return Err(Error::Range("degree bound must be positive".into()));
    }
    let pmax = dmax + 2;
    let lam = lambda_family::<S>(family, n, pmax)?;
    let sigma: Vec<ShiftSeries<S>> = lam.iter().map(ShiftSeries::sigma).collect();
    let zero = ShiftSeries::zero(pmax);
    let one = ShiftSeries::scalar(S::one(), pmax);
    let h = |args: &[ShiftSeries<S>], r: usize| nc_sym_in(SymKind::H, args, r, &zero, &one);
    let mut total = ShiftSeries::zero(pmax);
    match family {
        Family::B => {
            let big_n = (2 * n + 1) as i64;
            let top = S::from_frac(big_n, 2) - S::from_int(2);
            let b = |r: usize| gen_binomial(&top, big_n + r as i64 - 3);
            let first: Vec<_> = sigma[..n].to_vec();
            let last: Vec<_> = sigma[n + 1..].to_vec();
            let all: Vec<_> = [first.clone(), last.clone()].concat();
            let middle = sigma[n].add(&ShiftSeries::scalar(S::from_int(2), pmax));
            for r in 0..=dmax {
                total = total.add(&h(&all, r).scale(&b(r)));
            }
            for r in 1..=dmax + 1 {
                let mut inner = ShiftSeries::zero(pmax);
                for j in 0..r {
                    inner = inner.add(&h(&first, j).mul(&middle).mul(&h(&last, r - 1 - j)));
                }
                total = total.add(&inner.scale(&b(r)));
            }
        }
        _ => {
            let nn = n as i64;
            let c = |r: i64| {
                let sign = if r % 2 == 1 { S::one() } else { -S::one() };
                sign / binom::<S>(2 * nn + r - 2, nn - 1)
            };
            // sigma_1..sigma_n, sigma_n'..sigma_1' with positions n-1 and n holding n and n'
            let without = |skip: &[usize]| -> Vec<ShiftSeries<S>> {
                sigma.iter().enumerate().filter(|(k, _)| !skip.contains(k)).map(|(_, x)| x.clone()).collect()
            };
            let neither = without(&[n - 1, n]);
            let no_prime = without(&[n]);
            let no_n = without(&[n - 1]);
            for r in 1..=dmax {
                let rr = r as i64;
                let h0 = h(&neither, r);
                let one_of = h(&no_prime, r).add(&h(&no_n, r)).add(&h0.scale(&S::from_int(-2)));
                let a = -(S::from_int(rr) * c(rr)) / S::from_int(nn + rr - 1);
                let b = S::from_int(nn - 1) * c(rr) / S::from_int(nn + rr - 1);
                total = total.add(&h0.scale(&a)).add(&one_of.scale(&b));
            }
        }
    }
    Ok(total.components_vanish(dmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    #[test]
    fn shift_and_inverse() {
        let l = USeries::<Q>::lambda(1, 4);
        let inv = l.inverse().unwrap();
        assert_eq!(l.mul(&inv), USeries::constant(Poly::one(), 4));
        let back = l.shift(&Q::from_int(1)).shift(&Q::from_int(-1));
        assert_eq!(back, l);
    }

    #[test]
    fn half_shift_square_root() {
        let g = USeries::<Q>::lambda(1, 4).mul(&USeries::lambda(2, 4));
        let a = Q::from_frac(-1, 2);
        let f = USeries::solve_product_with_shift(&g, &a);
        assert_eq!(f.mul(&f.shift(&a)), g);
    }

    #[test]
    fn small_vanishing() {
        assert!(vanishing_series_check::<Q>(Family::B, 1, 3).unwrap());
        assert!(vanishing_series_check::<Q>(Family::D, 2, 3).unwrap());
    }
}
