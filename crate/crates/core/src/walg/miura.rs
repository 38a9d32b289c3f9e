//! Miura transformations and the generator families of the classical W-algebras.

use crate::error::{Error, Result};
use crate::foundations::Scalar;
use crate::liealg::Family;

use super::pi0::{mu, Pi0, TauOp};

/// A `tau`-operator allowed to carry negative powers, truncated below.
pub type PseudoDiffOperator<S> = TauOp<S>;

fn plus<S: Scalar>(i: usize) -> TauOp<S> {
    TauOp::tau_plus(mu(i, -1))
}

fn minus<S: Scalar>(i: usize) -> TauOp<S> {
    TauOp::tau_plus(-&mu::<S>(i, -1))
}

/// `x_1, ..., x_p` for the symmetric-function forms: `T + mu_1[-1], ..., T + mu_n[-1]`,
/// then `T` for type B, then `T - mu_n[-1], ..., T - mu_1[-1]` (none for type A).
pub fn symmetric_args<S: Scalar>(family: Family, n: usize) -> Vec<TauOp<S>> {
    let mut v: Vec<TauOp<S>> = (1..=n).map(plus).collect();
    if family == Family::A {
        return v;
    }
    if family == Family::B {
        v.push(TauOp::tau());
    }
    v.extend((1..=n).rev().map(minus));
    v
}

fn product<S: Scalar>(factors: &[TauOp<S>]) -> TauOp<S> {
    factors.iter().fold(TauOp::one(), |acc, f| acc.mul(f))
}

fn length(family: Family, n: usize) -> usize {
    match family {
        Family::A => n,
        Family::B => 2 * n + 1,
        Family::C | Family::D => 2 * n,
    }
}

/// `E_m` for `m = first..=m_max` read off the expanded Miura product (`first` is 1
/// for type A and 2 otherwise). Type D uses [`pseudo_diff_miura_d`].
pub fn miura_generators<S: Scalar>(family: Family, n: usize, m_max: usize) -> Result<Vec<Pi0<S>>> {
    if family == Family::D {
        return pseudo_diff_miura_d(n, m_max);
    }
    let len = length(family, n);
    if m_max > len {
        return Err(Error::Range(format!("the Miura product has only {len} coefficients")));
    }
    // the decreasing product x_p ... x_1
    let mut factors = symmetric_args::<S>(family, n);
    factors.reverse();
    let l = product(&factors);
    let first = if family == Family::A { 1 } else { 2 };
    Ok((first..=m_max).map(|m| l.coeff((len - m) as i64)).collect())
}

/// `e_m(T + mu_1[-1], ...)` applied to `1`.
pub fn miura_closed_form<S: Scalar>(family: Family, n: usize, m: usize) -> Result<Pi0<S>> {
    if family == Family::D {
        return Err(Error::Family("type D has no closed elementary form".into()));
    }
    Ok(crate::sugawara::nc_sym(crate::sugawara::SymKind::E, &symmetric_args(family, n), m).apply_to_one())
}

/// `E_2, ..., E_{k_max}` from
/// `(tau - mu_1[-1]) ... (tau - mu_n[-1]) tau^-1 (tau + mu_n[-1]) ... (tau + mu_1[-1])`,
/// the coefficient of `tau^(2n-k-1)` being `E_k`.
pub fn pseudo_diff_miura_d<S: Scalar>(n: usize, k_max: usize) -> Result<Vec<Pi0<S>>> {
    if n == 0 {
        return Err(Error::Range("rank must be positive".into()));
    }
    let l = pseudo_diff_product::<S>(n, k_max);
    Ok((2..=k_max).map(|k| l.coeff(2 * n as i64 - k as i64 - 1)).collect())
}

/// The truncated D-type product, exact down to `tau^(2n-1-k_max)`.
pub fn pseudo_diff_product<S: Scalar>(n: usize, k_max: usize) -> PseudoDiffOperator<S> {
    let floor = -(k_max as i64) - 1;
    let mut l = TauOp::one();
    for i in 1..=n {
        l = l.mul(&minus(i));
    }
    l = l.mul(&TauOp::tau_pow(-1, Some(floor)));
    for i in (1..=n).rev() {
        l = l.mul(&plus(i));
    }
    l
}

/// `E'_n = (mu_1[-1] - T) ... (mu_n[-1] - T) 1`.
pub fn pfaffian_generator<S: Scalar>(n: usize) -> Pi0<S> {
    let mut op = TauOp::one();
    for i in 1..=n {
        op = op.mul(&(&TauOp::from_pi0(mu(i, -1)) - &TauOp::tau()));
    }
    op.apply_to_one()
}

/// `h_m` of the symmetric arguments as an operator; for type D the half-sum of the
/// two lists with one of `T + mu_n[-1]`, `T - mu_n[-1]` removed.
pub fn h_family<S: Scalar>(family: Family, n: usize, m: usize) -> TauOp<S> {
    use crate::sugawara::{nc_sym, SymKind};
    if family != Family::D {
        return nc_sym(SymKind::H, &symmetric_args(family, n), m);
    }
    let args = symmetric_args::<S>(family, n);
    let mut first = args.clone();
    first.remove(n - 1);
    let mut second = args;
    second.remove(n);
    let half = S::from_frac(1, 2);
    &nc_sym(SymKind::H, &first, m).scale(&half) + &nc_sym(SymKind::H, &second, m).scale(&half)
}

/// [`h_family`] applied to `1` (for type D this is `F_m`).
pub fn w_generators_hfamily<S: Scalar>(family: Family, n: usize, m: usize) -> Result<Pi0<S>> {
    if m == 0 || n == 0 {
        return Err(Error::Range("m and n must be positive".into()));
    }
    Ok(h_family::<S>(family, n, m).apply_to_one())
}

/// `sum_{k=0}^m (-1)^k e_k h_(m-k)` over the symmetric arguments, as an operator.
pub fn newton_relation<S: Scalar>(family: Family, n: usize, m: usize) -> TauOp<S> {
    use crate::sugawara::{nc_sym, SymKind};
    let args = symmetric_args::<S>(family, n);
    let mut acc = TauOp::zero();
    for k in 0..=m {
        let t = nc_sym(SymKind::E, &args, k).mul(&nc_sym(SymKind::H, &args, m - k));
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    #[test]
    fn gl2_miura() {
        let e = miura_generators::<Q>(Family::A, 2, 2).unwrap();
        assert_eq!(e[0], &mu::<Q>(1, -1) + &mu(2, -1));
        assert_eq!(e[1], &(&mu::<Q>(2, -1) * &mu(1, -1)) + &mu(1, -2));
    }

    #[test]
    fn c1_miura() {
        let e = miura_generators::<Q>(Family::C, 1, 2).unwrap();
        assert_eq!(e[0], &mu::<Q>(1, -2) - &(&mu::<Q>(1, -1) * &mu(1, -1)));
    }

    #[test]
    fn pfaffian_small() {
        assert_eq!(pfaffian_generator::<Q>(1), mu(1, -1));
        assert_eq!(pfaffian_generator::<Q>(2), &(&mu::<Q>(1, -1) * &mu(2, -1)) - &mu(2, -2));
    }

    #[test]
    fn hfamily_b1() {
        assert!(w_generators_hfamily::<Q>(Family::B, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn truncation_stable() {
        let a = pseudo_diff_miura_d::<Q>(2, 4).unwrap();
        let b = pseudo_diff_miura_d::<Q>(2, 6).unwrap();
        assert_eq!(a[..], b[..3]);
    }
}
