//! Numeric check of the `kappa`-form of the symplectic character sums.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::foundations::Scalar;

use super::admissible_subsets;

/// Values `lambda_i(u + j)` and `kappa_i(u + j)` at integer offsets `j` from a
/// generic point `u`, consistent with the relations between the series.
///
/// `lambda_1, ..., lambda_n` are free and drawn lazily; `lambda_{i'}` follow from
/// `lambda_{(i+1)'}(v) = lambda_i(v + n + 1 - i) lambda_{i'}(v) / lambda_{i+1}(v + n + 1 - i)`;
/// `kappa_{n+1}(u)` is a free seed and
/// `kappa_{n+1}(v) kappa_{n+1}(v - 1) = lambda_n(v) lambda_{n'}(v - 1)`.
pub struct KappaAssignment<S: Scalar> {
    n: usize,
    rng: ChaCha8Rng,
    lam: HashMap<(usize, i64), S>,
    chain: HashMap<i64, S>,
}

fn draw<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=9);
        if p != 0 {
            return S::from_frac(p, q);
        }
    }
}

impl<S: Scalar> KappaAssignment<S> {
    pub fn new(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chain = HashMap::new();
        chain.insert(0, draw(&mut rng));
        KappaAssignment { n, rng, lam: HashMap::new(), chain }
    }

    fn prime(&self, i: usize) -> usize {
        2 * self.n + 1 - i
    }

    /// `lambda_i(u + off)`, `i` in `0..=2n` with `lambda_0 = lambda_0' = 1`.
    pub fn lambda(&mut self, i: usize, off: i64) -> Result<S> {
        let n = self.n;
        if i == 0 || i == 2 * n + 1 {
            return Ok(S::one());
        }
        if let Some(v) = self.lam.get(&(i, off)) {
            return Ok(v.clone());
        }
        let v = if i <= n {
            draw(&mut self.rng)
        } else {
            // i = (k+1)' with k in 0..n
            let k = self.prime(i) - 1;
            let shift = (n + 1 - k) as i64;
            let num = self.lambda(k, off + shift)? * self.lambda(self.prime(k), off)?;
            let den = self.lambda(k + 1, off + shift)?;
            if den.is_zero() {
                return Err(Error::DegenerateAssignment(format!("lambda_{} vanishes", k + 1)));
            }
            num / den
        };
        self.lam.insert((i, off), v.clone());
        Ok(v)
    }

    /// `kappa_i(u + off)` for `i` in `1..=2n+2`; the `kappa_{n+1}` chain runs
    /// downwards from the seed (`off <= 0`).
    pub fn kappa(&mut self, i: usize, off: i64) -> Result<S> {
        let n = self.n;
        if i <= n {
            return self.lambda(i, off);
        }
        if i >= n + 3 {
            return self.lambda(i - 2, off);
        }
        let v = self.chain_value(off)?;
        Ok(if i == n + 1 { v } else { -v })
    }

    fn chain_value(&mut self, off: i64) -> Result<S> {
        assert!(off <= 0, "the kappa chain only runs downwards");
        if let Some(v) = self.chain.get(&off) {
            return Ok(v.clone());
        }
        let above = self.chain_value(off + 1)?;
        if above.is_zero() {
            return Err(Error::DegenerateAssignment("kappa_{n+1} vanishes".into()));
        }
        let np = self.prime(self.n);
        let v = self.lambda(self.n, off + 1)? * self.lambda(np, off)? / above;
        self.chain.insert(off, v.clone());
        Ok(v)
    }

    /// `sum_{i_1 < ... < i_m <= 2n+2} kappa_{i_1}(u) kappa_{i_2}(u-1) ... kappa_{i_m}(u-m+1)`.
    pub fn kappa_sum(&mut self, m: usize) -> Result<S> {
        let top = 2 * self.n + 2;
        // below[i]: sum over the words built so far whose last index is < i
        let mut below: Vec<S> = vec![S::one(); top + 2];
        for pos in 0..m {
            let mut next = vec![S::zero(); top + 2];
            for i in 1..=top {
                let ending_at_i = below[i].clone() * self.kappa(i, -(pos as i64))?;
                next[i + 1] = next[i].clone() + ending_at_i;
            }
            below = next;
        }
        Ok(if m == 0 { S::one() } else { below[top + 1].clone() })
    }

    /// The admissible-subset sum `sum lambda_{i_1}(u) lambda_{i_2}(u-1) ...`.
    pub fn lambda_sum(&mut self, m: usize) -> Result<S> {
        let mut total = S::zero();
        for sub in admissible_subsets(self.n, m) {
            let mut t = S::one();
            for (pos, &i) in sub.iter().enumerate() {
                t = t * self.lambda(i, -(pos as i64))?;
            }
            total = total + t;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug)]
pub struct KappaReport {
    pub trials: usize,
    /// every `m = n+1` sum was zero
    pub vanishing: bool,
    /// every `m <= n` sum matched the admissible-subset sum
    pub cross_check: bool,
}

impl KappaReport {
    pub fn passed(&self) -> bool {
        self.vanishing && self.cross_check
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"match": self.passed(), "trials": self.trials, "vanishing": self.vanishing, "cross_check": self.cross_check})
    }
}

/// Evaluates the `kappa`-sums on `trials` random exact assignments (seeded).
pub fn kappa_vanishing_check<S: Scalar>(n: usize, trials: usize, seed: u64) -> Result<KappaReport> {
    if n == 0 || trials == 0 {
        return Err(Error::Range("need n >= 1 and at least one trial".into()));
    }
    let mut report = KappaReport { trials, vanishing: true, cross_check: true };
    let mut attempt = 0u64;
    let mut done = 0;
    while done < trials {
        attempt += 1;
        if attempt > 10 * trials as u64 + 10 {
            return Err(Error::DegenerateAssignment("too many degenerate draws".into()));
        }
        let mut a = KappaAssignment::<S>::new(n, seed.wrapping_mul(0x9e37_79b9).wrapping_add(attempt));
        let outcome = (|| -> Result<(bool, bool)> {
            let vanish = a.kappa_sum(n + 1)?.is_zero();
            let mut cross = true;
            for m in 1..=n {
                cross &= a.kappa_sum(m)? == a.lambda_sum(m)?;
            }
            Ok((vanish, cross))
        })();
        match outcome {
            Ok((v, c)) => {
                report.vanishing &= v;
                report.cross_check &= c;
                done += 1;
            }
            Err(Error::DegenerateAssignment(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    #[test]
    fn small_ranks() {
        for n in 1..=2 {
            let r = kappa_vanishing_check::<Q>(n, 5, 7).unwrap();
            assert!(r.passed(), "n = {n}: {r:?}");
        }
    }
}
