//! Exact scalars, generalized binomials and the gamma normalization factor.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::liealg::Family;

/// Exact field used for all coefficients.
///
/// Implemented for [`BigRational`] (the default, see [`crate::Rational`]) and
/// for `Ratio<i128>`, which is faster but panics on overflow.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Parses `p`, `-p` or `p/q`.
    fn parse(s: &str) -> Option<Self>;

    /// Exact integer value, if the scalar is an integer fitting in `i64`.
    fn to_i64(&self) -> Option<i64>;
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for Ratio<i128> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn parse(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(*self.numer()).ok()
        } else {
            None
        }
    }
}

/// Generalized binomial `alpha (alpha-1) ... (alpha-k+1) / k!`; zero for `k < 0`.
pub fn gen_binomial<S: Scalar>(alpha: &S, k: i64) -> S {
    if k < 0 {
        return S::zero();
    }
    let mut acc = S::one();
    for i in 0..k {
        acc = acc * (alpha.clone() - S::from_int(i)) / S::from_int(i + 1);
    }
    acc
}

/// Binomial with an integer top entry.
pub fn binom<S: Scalar>(top: i64, k: i64) -> S {
    gen_binomial(&S::from_int(top), k)
}

/// `gamma_m(omega) = (omega + m - 2) / (omega + 2m - 2)`.
///
/// For `m = 0` the value is taken to be 1 (the continuous extension, also at
/// `omega = 2`).
pub fn gamma_factor<S: Scalar>(omega: i64, m: i64) -> Result<S> {
    if m == 0 {
        return Ok(S::one());
    }
    let den = omega + 2 * m - 2;
    if den == 0 {
        return Err(Error::Pole(format!("gamma_{m}({omega}) has a zero denominator")));
    }
    Ok(S::from_frac(omega + m - 2, den))
}

/// Checks the binomial resummation identities that turn the trace images into
/// the symmetric-function sums. `n_big` is the matrix size N.
///
/// * B (N odd): `sum_{r=k}^m (-1)^{r-k} C(N/2-2, N+r-3) C(N+r-3, r-k)` equals
///   `C(N/2-2, N+k-3) C(N/2+m-1, m-k)` and
///   `-2 (-1)^{m-k} gamma_k(N) C(N/2-2, N+m-2) C(N+m-2, m-k)`.
/// * C (N = 2n): `sum_{r=k}^m (-1)^{r-k} C(2n-r+2, n+1) C(2n+2-k, r-k)` equals
///   `(-1)^{m-k} C(n-k, m-k) C(2n-k+2, n+1)` and, when `gamma_k(-2n)` is finite,
///   `2 (-1)^{m-k} gamma_k(-2n) C(2n-m+1, n+1) C(2n-k+1, m-k)`.
/// * D (N = 2n): the two coefficient identities obtained by expanding the
///   `sigma`-series with `c_r = (-1)^{r-1} / C(2n+r-2, n-1)` (words avoiding both
///   `n` and `n'`, and words containing exactly one of them).
pub fn verify_resummation_identity(family: Family, n_big: i64, m: i64, k: i64) -> bool {
    type Q = BigRational;
    if k < 0 || k > m {
        return false;
    }
    let sign = |e: i64| if e % 2 == 0 { Q::one() } else { -Q::one() };
    match family {
        Family::B => {
            if n_big % 2 == 0 || n_big < 3 {
                return false;
            }
            let half = Q::from_frac(n_big, 2) - Q::from_int(2);
            let lhs = (k..=m).fold(Q::zero(), |acc, r| {
                acc + sign(r - k) * gen_binomial(&half, n_big + r - 3) * binom::<Q>(n_big + r - 3, r - k)
            });
            let r1 = gen_binomial(&half, n_big + k - 3)
                * gen_binomial(&(Q::from_frac(n_big, 2) + Q::from_int(m - 1)), m - k);
            let g: Q = match gamma_factor(n_big, k) {
                Ok(g) => g,
                Err(_) => return false,
            };
            let r2 = -Q::from_int(2)
                * sign(m - k)
                * g
                * gen_binomial(&half, n_big + m - 2)
                * binom::<Q>(n_big + m - 2, m - k);
            lhs == r1 && r1 == r2
        }
        Family::C => {
            if n_big % 2 != 0 || n_big < 2 {
                return false;
            }
            let n = n_big / 2;
            let lhs = (k..=m).fold(Q::zero(), |acc, r| {
                acc + sign(r - k) * binom::<Q>(2 * n - r + 2, n + 1) * binom::<Q>(2 * n + 2 - k, r - k)
            });
            let r1 = sign(m - k) * binom::<Q>(n - k, m - k) * binom::<Q>(2 * n - k + 2, n + 1);
            if lhs != r1 {
                return false;
            }
            match gamma_factor::<Q>(-2 * n, k) {
                Ok(g) => {
                    let r2 = Q::from_int(2)
                        * sign(m - k)
                        * g
                        * binom::<Q>(2 * n - m + 1, n + 1)
                        * binom::<Q>(2 * n - k + 1, m - k);
                    r1 == r2
                }
                Err(_) => true,
            }
        }
        Family::D => {
            if n_big % 2 != 0 || n_big < 2 || m < 1 {
                return m == 0 && n_big % 2 == 0;
            }
            let n = n_big / 2;
            let c = |r: i64| sign(r - 1) / binom::<Q>(2 * n + r - 2, n - 1);
            let alpha = |r: i64| {
                let mut a = -Q::from_int(r) * c(r) / Q::from_int(n + r - 1);
                if r == m {
                    a += Q::from_int(2) * c(m);
                }
                a
            };
            let beta = |r: i64| {
                let mut b = Q::from_int(n - 1) * c(r) / Q::from_int(n + r - 1);
                if r == m {
                    b += c(m);
                }
                b
            };
            let g: Q = gamma_factor(2 * n, k).unwrap_or_else(|_| Q::one());
            let rhs = Q::from_int(2) * c(m) * sign(m - k) * g * binom::<Q>(2 * n + m - 2, m - k);
            let p0 = 2 * n - 2;
            let lo = k.max(1);
            // words with exactly one of n, n'
            let one = (lo..=m).fold(Q::zero(), |acc, r| {
                acc + beta(r) * sign(r - k) * binom::<Q>(p0 + r, r - k)
            });
            // words avoiding both
            let none = (lo..=m).fold(Q::zero(), |acc, r| {
                acc + sign(r - k)
                    * (alpha(r) * binom::<Q>(p0 + r - 1, r - k)
                        + Q::from_int(2) * beta(r) * binom::<Q>(p0 + r - 1, r - k - 1))
            });
            // no word of positive length is empty, so the first check starts at k = 1
            (k == 0 || one == rhs) && none == rhs
        }
        Family::A => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(&Q::from_frac(5, 2), 3), Q::from_frac(5, 16));
        assert_eq!(gen_binomial(&Q::from_int(-1), 4), Q::one());
        assert_eq!(gen_binomial(&Q::from_int(7), -1), Q::zero());
        assert_eq!(binom::<Q>(6, 2), Q::from_int(15));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_factor::<Q>(3, 2).unwrap(), Q::from_frac(3, 5));
        assert_eq!(gamma_factor::<Q>(7, 1).unwrap(), Q::from_frac(6, 7));
        assert!(matches!(gamma_factor::<Q>(-4, 3), Err(Error::Pole(_))));
    }

    #[test]
    fn resummation_examples() {
        assert!(verify_resummation_identity(Family::B, 3, 2, 0));
        assert!(verify_resummation_identity(Family::B, 5, 3, 1));
        assert!(verify_resummation_identity(Family::C, 4, 2, 2));
    }

    #[test]
    fn resummation_grid() {
        for n_big in 2..=9 {
            for m in 0..=6 {
                for k in 0..=m {
                    let fam = if n_big % 2 == 1 { Family::B } else { Family::D };
                    if n_big >= 3 || fam == Family::D {
                        assert!(verify_resummation_identity(fam, n_big, m, k), "{fam:?} {n_big} {m} {k}");
                    }
                    if n_big % 2 == 0 {
                        assert!(verify_resummation_identity(Family::C, n_big, m, k), "C {n_big} {m} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_ratio_backend_agrees() {
        type R = Ratio<i128>;
        assert_eq!(gen_binomial(&R::from_frac(5, 2), 3), R::from_frac(5, 16));
        assert_eq!(gamma_factor::<R>(3, 2).unwrap(), R::from_frac(3, 5));
    }
}
