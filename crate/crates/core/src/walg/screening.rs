//! Screening operators `V_i` on `pi_0`.

use serde_json::json;

use crate::error::{Error, Result};
use crate::foundations::Scalar;
use crate::liealg::Family;
use crate::poly::Poly;

use super::pi0::{mu, MuVar, Pi0, TauOp};

/// Cartan coordinates `(k, c)` of node `i`: the series uses `a_m = f sum c mu_k[-m]`
/// and the operator differentiates along `sum c d/d mu_k`. The second value is `f`.
fn node(family: Family, n: usize, i: usize) -> Result<(Vec<(usize, i64)>, i64)> {
    let top = if family == Family::A { n.saturating_sub(1) } else { n };
    if i == 0 || i > top {
        return Err(Error::Index(format!("screening index {i} outside 1..={top}")));
    }
    if family == Family::D && n < 2 {
        return Err(Error::Index("type D screening needs n >= 2".into()));
    }
    if family == Family::A || i < n {
        return Ok((vec![(i, 1), (i + 1, -1)], 1));
    }
    Ok(match family {
        Family::B => (vec![(n, 1)], 1),
        Family::C => (vec![(n, 1)], 2),
        _ => (vec![(n - 1, 1), (n, 1)], 1),
    })
}

/// Coefficient of `z^r` in `exp sum_m a_m z^m / m` for node `i`.
///
/// `n` is the rank (the matrix size N for type A).
pub fn screening_coefficient<S: Scalar>(family: Family, n: usize, i: usize, r: usize) -> Result<Pi0<S>> {
    Ok(screening_coefficients(family, n, i, r)?.swap_remove(r))
}

fn screening_coefficients<S: Scalar>(family: Family, n: usize, i: usize, r: usize) -> Result<Vec<Pi0<S>>> {
    let (coords, factor) = node(family, n, i)?;
    let a = |m: usize| {
        let mut p = Pi0::zero();
        for &(k, c) in &coords {
            p = &p + &mu::<S>(k, -(m as i32)).scale(&S::from_int(c * factor));
        }
        p
    };
    // r V_r = sum_{m=1}^r a_m V_{r-m}
    let mut v: Vec<Pi0<S>> = vec![Poly::one()];
    for k in 1..=r {
        let mut acc = Pi0::zero();
        for m in 1..=k {
            acc = &acc + &(&a(m) * &v[k - m]);
        }
        v.push(acc.scale(&S::from_frac(1, k as i64)));
    }
    Ok(v)
}

/// `V_i P`; the sum over `r` stops at the deepest variable of `P`.
pub fn screening_apply<S: Scalar>(family: Family, n: usize, i: usize, p: &Pi0<S>) -> Result<Pi0<S>> {
    let (coords, _) = node(family, n, i)?;
    let deepest = p.variables().iter().map(|v| (-v.r).max(0) as usize).max().unwrap_or(0);
    if deepest == 0 {
        return Ok(Pi0::zero());
    }
    let coeffs = screening_coefficients::<S>(family, n, i, deepest - 1)?;
    let mut out = Pi0::zero();
    for (r, vr) in coeffs.iter().enumerate() {
        let mut d = Pi0::zero();
        for &(k, c) in &coords {
            d = &d + &p.derivative(&MuVar::new(k, -(r as i32) - 1)).scale(&S::from_int(c));
        }
        if !d.is_zero() {
            out = &out + &(vr * &d);
        }
    }
    Ok(out)
}

/// `V_i` on `pi_0 (x) C[tau]`, acting on the coefficients.
pub fn screening_apply_tau<S: Scalar>(family: Family, n: usize, i: usize, x: &TauOp<S>) -> Result<TauOp<S>> {
    let mut out = TauOp::zero().with_floor(x.floor());
    for (k, p) in x.coeffs() {
        out.add_term(*k, &screening_apply(family, n, i, p)?);
    }
    Ok(out)
}

/// Results of applying every screening operator to a list of elements.
#[derive(Clone, Debug)]
pub struct Annihilation {
    pub all_zero: bool,
    /// `(element index, i, V_i P)` for every nonzero image
    pub failures: Vec<(usize, usize, String)>,
}

impl Annihilation {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "match": self.all_zero,
            "failures": self.failures.iter().map(|(e, i, v)| json!({"element": e, "i": i, "image": v})).collect::<Vec<_>>(),
        })
    }
}

pub fn verify_annihilation<S: Scalar>(family: Family, n: usize, elements: &[Pi0<S>]) -> Result<Annihilation> {
    let top = if family == Family::A { n.saturating_sub(1) } else { n };
    let mut failures = Vec::new();
    for (e, p) in elements.iter().enumerate() {
        for i in 1..=top {
            let v = screening_apply(family, n, i, p)?;
            if !v.is_zero() {
                failures.push((e, i, v.to_string()));
            }
        }
    }
    Ok(Annihilation { all_zero: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    #[test]
    fn coefficients() {
        assert_eq!(screening_coefficient::<Q>(Family::B, 2, 1, 0).unwrap(), Pi0::one());
        assert_eq!(
            screening_coefficient::<Q>(Family::A, 2, 1, 1).unwrap(),
            &mu::<Q>(1, -1) - &mu(2, -1)
        );
        let c = screening_coefficient::<Q>(Family::C, 1, 1, 2).unwrap();
        assert_eq!(c, &(&mu::<Q>(1, -1) * &mu(1, -1)).scale(&Q::from_int(2)) + &mu(1, -2));
        assert!(screening_coefficient::<Q>(Family::A, 2, 2, 0).is_err());
    }

    #[test]
    fn gl2_examples() {
        let e1 = &mu::<Q>(1, -1) + &mu(2, -1);
        assert!(screening_apply(Family::A, 2, 1, &e1).unwrap().is_zero());
        let e2 = &(&mu::<Q>(2, -1) * &mu(1, -1)) + &mu(1, -2);
        assert!(screening_apply(Family::A, 2, 1, &e2).unwrap().is_zero());
        assert_eq!(screening_apply(Family::A, 2, 1, &mu::<Q>(1, -1)).unwrap(), Pi0::one());
        let r = verify_annihilation(Family::B, 1, &[mu::<Q>(1, -1)]).unwrap();
        assert!(!r.all_zero);
    }
}
