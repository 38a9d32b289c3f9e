//! Exact row reduction on sparse rows.

use std::collections::BTreeMap;

use crate::foundations::Scalar;

/// Incremental echelon form: each stored row has leading key equal to its pivot
/// and leading coefficient 1.
pub struct Echelon<K: Ord + Clone, S: Scalar> {
    pivots: BTreeMap<K, BTreeMap<K, S>>,
}

impl<K: Ord + Clone, S: Scalar> Default for Echelon<K, S> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> Echelon<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the stored pivots; returns what is left.
    pub fn reduce(&self, mut row: BTreeMap<K, S>) -> BTreeMap<K, S> {
        row.retain(|_, v| !v.is_zero());
        let mut done: BTreeMap<K, S> = BTreeMap::new();
        while let Some((k, c)) = row.pop_first() {
            match self.pivots.get(&k) {
                Some(p) => {
                    for (kk, v) in p.iter().skip(1) {
                        let e = row.entry(kk.clone()).or_insert_with(S::zero);
                        *e = e.clone() - c.clone() * v.clone();
                        if e.is_zero() {
                            row.remove(kk);
                        }
                    }
                }
                None => {
                    done.insert(k, c);
                }
            }
        }
        done
    }

    /// Inserts a row; returns `true` if it was independent of the previous ones.
    pub fn insert(&mut self, row: BTreeMap<K, S>) -> bool {
        let mut r = self.reduce_leading(row);
        let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        for v in r.values_mut() {
            *v = v.clone() / c.clone();
        }
        self.pivots.insert(k, r);
        true
    }

    fn reduce_leading(&self, mut row: BTreeMap<K, S>) -> BTreeMap<K, S> {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((k, c)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
                return row;
            };
            let Some(p) = self.pivots.get(&k) else {
                return row;
            };
            for (kk, v) in p {
                let e = row.entry(kk.clone()).or_insert_with(S::zero);
                *e = e.clone() - c.clone() * v.clone();
                if e.is_zero() {
                    row.remove(kk);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rank<K: Ord + Clone, S: Scalar>(rows: impl IntoIterator<Item = BTreeMap<K, S>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Inverse of a dense square matrix, or `None` if singular.
pub fn invert<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = v.clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot) {
                    *x = x.clone() - f.clone() * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    fn row(v: &[(u32, i64)]) -> BTreeMap<u32, Q> {
        v.iter().map(|(k, c)| (*k, Q::from_int(*c))).collect()
    }

    #[test]
    fn rank_small() {
        let rows = vec![row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)]), row(&[(1, 1), (2, 1)])];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn inverse_2x2() {
        let m = vec![vec![Q::from_int(1), Q::from_int(2)], vec![Q::from_int(3), Q::from_int(4)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0][0], Q::from_int(-2));
        assert_eq!(inv[1][1], Q::from_frac(-1, 2));
        assert!(invert(&[vec![Q::from_int(1), Q::from_int(1)], vec![Q::from_int(1), Q::from_int(1)]]).is_none());
    }
}
