//! Sparse operators on `(C^N)^{(x)m}`: transpositions, contractions, the
//! symmetrizers and partial traces, and matrices of generators acting on one
//! tensor factor.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::foundations::{binom, gamma_factor, gen_binomial, Scalar};
use crate::liealg::{AlgebraSpec, Family, Generator};
use crate::linalg;

/// Sparse operator on `(C^N)^{(x)m}`; basis vectors are indexed by multi-indices
/// `(i_1, ..., i_m)`, flattened with the first factor most significant.
#[derive(Clone, PartialEq)]
pub struct TensorOp<S: Scalar> {
    m: usize,
    dim: usize,
    rows: BTreeMap<usize, BTreeMap<usize, S>>,
}

impl<S: Scalar> std::fmt::Debug for TensorOp<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TensorOp(N={}, m={}, nnz={})", self.dim, self.m, self.nnz())
    }
}

impl<S: Scalar> TensorOp<S> {
    pub fn zero(dim: usize, m: usize) -> Self {
        TensorOp { m, dim, rows: BTreeMap::new() }
    }

    pub fn identity(dim: usize, m: usize) -> Self {
        let mut t = Self::zero(dim, m);
        for i in 0..t.size() {
            t.add(i, i, S::one());
        }
        t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N^m`.
    pub fn size(&self) -> usize {
        self.dim.pow(self.m as u32)
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Flattens a 1-based multi-index.
    pub fn encode(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + (i - 1))
    }

    /// Inverse of [`TensorOp::encode`].
    pub fn decode(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.m];
        for a in (0..self.m).rev() {
            out[a] = k % self.dim + 1;
            k /= self.dim;
        }
        out
    }

    pub fn add(&mut self, row: usize, col: usize, c: S) {
        if c.is_zero() {
            return;
        }
        let r = self.rows.entry(row).or_default();
        match r.get_mut(&col) {
            Some(x) => {
                *x = x.clone() + c;
                if x.is_zero() {
                    r.remove(&col);
                    if r.is_empty() {
                        self.rows.remove(&row);
                    }
                }
            }
            None => {
                r.insert(col, c);
            }
        }
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.rows.get(&row).and_then(|r| r.get(&col)).cloned().unwrap_or_else(S::zero)
    }

    pub fn entry(&self, row: &[usize], col: &[usize]) -> S {
        self.get(self.encode(row), self.encode(col))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows.iter().flat_map(|(r, row)| row.iter().map(move |(c, v)| (*r, *c, v)))
    }

    pub fn row(&self, r: usize) -> Option<&BTreeMap<usize, S>> {
        self.rows.get(&r)
    }

    fn same_shape(&self, other: &Self) {
        assert!(self.m == other.m && self.dim == other.dim, "operator shapes differ");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_shape(other);
        let mut out = Self::zero(self.dim, self.m);
        for (r, row) in &self.rows {
            let mut acc: BTreeMap<usize, S> = BTreeMap::new();
            for (k, a) in row {
                if let Some(brow) = other.rows.get(k) {
                    for (c, b) in brow {
                        let e = acc.entry(*c).or_insert_with(S::zero);
                        *e = e.clone() + a.clone() * b.clone();
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            if !acc.is_empty() {
                out.rows.insert(*r, acc);
            }
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.same_shape(other);
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add(r, c, v.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.m);
        if c.is_zero() {
            return out;
        }
        for (r, col, v) in self.entries() {
            out.add(r, col, v.clone() * c.clone());
        }
        out
    }

    pub fn trace(&self) -> S {
        self.rows
            .iter()
            .filter_map(|(r, row)| row.get(r))
            .fold(S::zero(), |a, b| a + b.clone())
    }

    /// Trace over the factors `k+1..m`, giving an operator on `(C^N)^{(x)k}`.
    pub fn partial_trace(&self, k: usize) -> Result<Self> {
        if k > self.m {
            return Err(Error::Range(format!("cannot keep {k} of {} factors", self.m)));
        }
        let tail = self.dim.pow((self.m - k) as u32);
        let mut out = Self::zero(self.dim, k);
        for (r, c, v) in self.entries() {
            if r % tail == c % tail {
                out.add(r / tail, c / tail, v.clone());
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.rows.values().cloned())
    }

    /// Applies the operator to a sparse vector.
    pub fn apply(&self, v: &BTreeMap<usize, S>) -> BTreeMap<usize, S> {
        let mut out: BTreeMap<usize, S> = BTreeMap::new();
        for (r, row) in &self.rows {
            let mut acc = S::zero();
            for (c, x) in row {
                if let Some(y) = v.get(c) {
                    acc = acc + x.clone() * y.clone();
                }
            }
            if !acc.is_zero() {
                out.insert(*r, acc);
            }
        }
        out
    }

    /// Operator permuting tensor factors: the basis vector with multi-index `I`
    /// goes to the one with `J_{perm[a]} = I_a`.
    pub fn permutation(dim: usize, m: usize, perm: &[usize]) -> Self {
        let mut t = Self::zero(dim, m);
        for k in 0..t.size() {
            let idx = t.decode(k);
            let mut img = vec![0; m];
            for a in 0..m {
                img[perm[a]] = idx[a];
            }
            let r = t.encode(&img);
            t.add(r, k, S::one());
        }
        t
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries()
            .map(|(r, c, v)| serde_json::json!([self.decode(r), self.decode(c), v.to_string()]))
            .collect();
        serde_json::json!({"m": self.m, "N": self.dim, "entries": entries})
    }
}

/// The transposition `P_ab` and contraction `Q_ab` (1-based, `a < b`).
pub fn elementary_operators<S: Scalar>(
    spec: &AlgebraSpec,
    m: usize,
    a: usize,
    b: usize,
) -> Result<(TensorOp<S>, TensorOp<S>)> {
    if !(1 <= a && a < b && b <= m) {
        return Err(Error::Index(format!("need 1 <= a < b <= m, got a={a}, b={b}, m={m}")));
    }
    let dim = spec.dim();
    let mut perm: Vec<usize> = (0..m).collect();
    perm.swap(a - 1, b - 1);
    let p = TensorOp::permutation(dim, m, &perm);
    let mut q = TensorOp::zero(dim, m);
    if spec.family != Family::A {
        for col in 0..q.size() {
            let idx = q.decode(col);
            let (k, l) = (idx[a - 1], idx[b - 1]);
            if l != spec.prime(k) {
                continue;
            }
            for i in 1..=dim {
                let mut img = idx.clone();
                img[a - 1] = i;
                img[b - 1] = spec.prime(i);
                let r = q.encode(&img);
                q.add(r, col, S::from_int(spec.epsilon(i) * spec.epsilon(k)));
            }
        }
    }
    Ok((p, q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Ordered product of the fused R-matrix factors.
    Product,
    /// Symmetrizer times the sum over sets of disjoint contracted pairs.
    Expansion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlKind {
    /// `H^(m)`, symmetrization.
    Sym,
    /// `A^(m)`, antisymmetrization.
    Antisym,
}

fn factorial(m: usize) -> i64 {
    (1..=m as i64).product()
}

fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, m: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if prefix.len() == m {
            let mut inv = 0;
            for i in 0..m {
                for j in i + 1..m {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..m {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, m, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], m, &mut out);
    out
}

/// `H^(m)` or `A^(m)` on `(C^N)^{(x)m}`.
pub fn gl_symmetrizer<S: Scalar>(dim: usize, m: usize, kind: GlKind, method: Method) -> TensorOp<S> {
    let spec = AlgebraSpec::gl(dim.max(1)).expect("positive dimension");
    let sign = if kind == GlKind::Sym { 1 } else { -1 };
    match method {
        Method::Expansion => {
            let mut t = TensorOp::zero(dim, m);
            let norm = S::from_frac(1, factorial(m));
            for (perm, sgn) in permutations(m) {
                let c = if kind == GlKind::Sym { norm.clone() } else { norm.clone() * S::from_int(sgn) };
                t = t.plus(&TensorOp::permutation(dim, m, &perm).scale(&c));
            }
            t
        }
        Method::Product => {
            let mut t = TensorOp::identity(dim, m);
            for a in 1..=m {
                for b in a + 1..=m {
                    let (p, _) = elementary_operators::<S>(&spec, m, a, b).expect("valid pair");
                    let f = TensorOp::identity(dim, m)
                        .plus(&p.scale(&S::from_frac(sign, (b - a) as i64)));
                    t = t.mul(&f);
                }
            }
            t.scale(&S::from_frac(1, factorial(m)))
        }
    }
}

/// All sets of `r` disjoint pairs `a < b` from `1..=m`.
fn disjoint_pair_sets(m: usize, r: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(start: usize, used: &mut Vec<bool>, m: usize, r: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        // the smallest element of the next pair is above the previous one, so each set appears once
        for a in start..=m {
            if used[a] {
                continue;
            }
            for b in a + 1..=m {
                if used[b] {
                    continue;
                }
                used[a] = true;
                used[b] = true;
                cur.push((a, b));
                rec(a + 1, used, m, r, cur, out);
                cur.pop();
                used[a] = false;
                used[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(1, &mut vec![false; m + 1], m, r, &mut Vec::new(), &mut out);
    out
}

/// The projector `S^(m)` for types B, C, D.
///
/// Symplectic specs need `m <= n + 1` (`S^(n+1) = 0`).
pub fn symmetrizer<S: Scalar>(spec: &AlgebraSpec, m: usize, method: Method) -> Result<TensorOp<S>> {
    let dim = spec.dim();
    match spec.family {
        Family::A => {
            return Err(Error::Family("use gl_symmetrizer for gl_N".into()));
        }
        Family::C if m > spec.n + 1 => {
            return Err(Error::Range(format!("sp_{dim} symmetrizer needs m <= {}", spec.n + 1)));
        }
        _ => {}
    }
    if m == 0 {
        return Ok(TensorOp::identity(dim, 0));
    }
    let orth = spec.family.is_orthogonal();
    match method {
        Method::Product => {
            let mut t = TensorOp::identity(dim, m);
            for a in 1..=m {
                for b in a + 1..=m {
                    let (p, q) = elementary_operators::<S>(spec, m, a, b)?;
                    let d = (b - a) as i64;
                    let (pc, qc) = if orth {
                        (S::from_frac(1, d), -(S::one() / (S::from_frac(dim as i64, 2) + S::from_int(d - 1))))
                    } else {
                        (S::from_frac(-1, d), S::from_frac(-1, spec.n as i64 - d + 1))
                    };
                    let f = TensorOp::identity(dim, m).plus(&p.scale(&pc)).plus(&q.scale(&qc));
                    t = t.mul(&f);
                }
            }
            Ok(t.scale(&S::from_frac(1, factorial(m))))
        }
        Method::Expansion => {
            let kind = if orth { GlKind::Sym } else { GlKind::Antisym };
            let h = gl_symmetrizer::<S>(dim, m, kind, Method::Expansion);
            let top = if orth {
                S::from_frac(dim as i64, 2) + S::from_int(m as i64 - 2)
            } else {
                S::from_int(m as i64 - spec.n as i64 - 2)
            };
            let mut qs: BTreeMap<(usize, usize), TensorOp<S>> = BTreeMap::new();
            for a in 1..=m {
                for b in a + 1..=m {
                    qs.insert((a, b), elementary_operators::<S>(spec, m, a, b)?.1);
                }
            }
            let mut sum = TensorOp::zero(dim, m);
            for r in 0..=m / 2 {
                let sign = if orth && r % 2 == 1 { -S::one() } else { S::one() };
                let c = sign
                    / (S::from_int(1i64 << r) * S::from_int(factorial(r)) * gen_binomial(&top, r as i64));
                for set in disjoint_pair_sets(m, r) {
                    let mut t = TensorOp::identity(dim, m);
                    for pair in &set {
                        t = t.mul(&qs[pair]);
                    }
                    sum = sum.plus(&t.scale(&c));
                }
            }
            Ok(h.mul(&sum))
        }
    }
}

/// Dimension of the image of `S^(m)`.
pub fn symmetrizer_rank_formula<S: Scalar>(spec: &AlgebraSpec, m: usize) -> S {
    let dim = spec.dim() as i64;
    let m = m as i64;
    match spec.family {
        Family::B | Family::D => {
            if m == 0 {
                return S::one();
            }
            S::from_frac(dim + 2 * m - 2, dim + m - 2) * binom::<S>(dim + m - 2, m)
        }
        Family::C => {
            if m > spec.n as i64 {
                S::zero()
            } else {
                binom::<S>(dim, m) - binom::<S>(dim, m - 2)
            }
        }
        Family::A => binom::<S>(dim + m - 1, m),
    }
}

/// The scalar in `tr_{k+1..m} S^(m) = c S^(k)`.
pub fn partial_trace_constant<S: Scalar>(spec: &AlgebraSpec, m: usize, k: usize) -> Result<S> {
    let (m, k) = (m as i64, k as i64);
    let dim = spec.dim() as i64;
    let omega = spec.omega();
    let g = gamma_factor::<S>(omega, k)? / gamma_factor::<S>(omega, m)?;
    let inv = S::one() / binom::<S>(m, k);
    match spec.family {
        Family::B | Family::D => Ok(g * binom::<S>(dim + m - 2, m - k) * inv),
        Family::C => Ok(g * binom::<S>(dim - k + 1, m - k) * inv),
        Family::A => Err(Error::Family("partial-trace formula is for B, C, D".into())),
    }
}

/// Outcome of [`verify_symmetrizer`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrizerReport {
    pub product_equals_expansion: bool,
    pub idempotent: bool,
    /// `S P_ab = P_ab S = +-S` and `S Q_ab = Q_ab S = 0` for all `a < b`
    pub relations: bool,
    pub rank: usize,
    pub rank_formula: String,
    /// `tr_{k+1..m} S^(m) = c S^(k)` for `1 <= k < m`; `None` when the constant
    /// has a pole (the vanishing symplectic case)
    pub partial_traces: Option<bool>,
}

impl SymmetrizerReport {
    pub fn passed(&self) -> bool {
        self.product_equals_expansion
            && self.idempotent
            && self.relations
            && self.rank.to_string() == self.rank_formula
            && self.partial_traces != Some(false)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "match": self.passed(),
            "product_equals_expansion": self.product_equals_expansion,
            "idempotent": self.idempotent,
            "relations": self.relations,
            "rank": self.rank,
            "rank_formula": self.rank_formula,
            "partial_traces": self.partial_traces,
        })
    }
}

/// Checks both constructions of `S^(m)` against each other and against the
/// defining relations, the dimension formula and the partial-trace formula.
pub fn verify_symmetrizer<S: Scalar>(spec: &AlgebraSpec, m: usize) -> Result<SymmetrizerReport> {
    let s = symmetrizer::<S>(spec, m, Method::Product)?;
    let e = symmetrizer::<S>(spec, m, Method::Expansion)?;
    let sign = if spec.family == Family::C { -S::one() } else { S::one() };
    let mut relations = true;
    for a in 1..=m {
        for b in a + 1..=m {
            let (p, q) = elementary_operators::<S>(spec, m, a, b)?;
            let signed = s.scale(&sign);
            relations &= s.mul(&p) == signed && p.mul(&s) == signed;
            relations &= s.mul(&q).is_zero() && q.mul(&s).is_zero();
        }
    }
    let partial_traces = if spec.family == Family::C && m > spec.n {
        None
    } else {
        let mut ok = true;
        for k in 1..m {
            let c = partial_trace_constant::<S>(spec, m, k)?;
            let lower = symmetrizer::<S>(spec, k, Method::Product)?;
            ok &= s.partial_trace(k)? == lower.scale(&c);
        }
        Some(ok)
    };
    Ok(SymmetrizerReport {
        product_equals_expansion: s == e,
        idempotent: s.mul(&s) == s,
        relations,
        rank: s.rank(),
        rank_formula: symmetrizer_rank_formula::<S>(spec, m).to_string(),
        partial_traces,
    })
}

/// Linear combination of words.
pub type WordCombo<L, S> = Vec<(Vec<L>, S)>;

/// Entries `(i, j)` of a local matrix grouped by row `i`.
type RowView<'a, L, S> = BTreeMap<usize, Vec<(usize, &'a WordCombo<L, S>)>>;

/// Matrix of generators acting on one tensor factor: `sum_ij e_ij^{(site)} (x) x_ij`,
/// where each `x_ij` is a linear combination of words in letters `L`.
#[derive(Clone, Debug)]
pub struct LocalMatrix<L, S: Scalar> {
    pub site: usize,
    pub entries: BTreeMap<(usize, usize), WordCombo<L, S>>,
}

impl<L: Clone, S: Scalar> LocalMatrix<L, S> {
    pub fn new(site: usize) -> Self {
        LocalMatrix { site, entries: BTreeMap::new() }
    }

    pub fn push(&mut self, i: usize, j: usize, word: Vec<L>, c: S) {
        if !c.is_zero() {
            self.entries.entry((i, j)).or_default().push((word, c));
        }
    }

    /// Adds `c` times the identity.
    pub fn shift(&mut self, dim: usize, c: S) {
        for i in 1..=dim {
            self.push(i, i, Vec::new(), c.clone());
        }
    }

    pub fn add_letter_identity(&mut self, dim: usize, letter: L) {
        for i in 1..=dim {
            self.push(i, i, vec![letter.clone()], S::one());
        }
    }
}

/// `F[r]_a = sum_ij e_ij^{(a)} (x) F_ij[r]` with `F_ij` written through canonical
/// generators (entries with `F_ij = 0` omitted).
pub fn generator_matrix<S: Scalar>(
    spec: &AlgebraSpec,
    m: usize,
    a: usize,
    r: i32,
) -> Result<LocalMatrix<Generator, S>> {
    if a == 0 || a > m {
        return Err(Error::Index(format!("site {a} outside 1..={m}")));
    }
    let dim = spec.dim();
    let mut out = LocalMatrix::new(a);
    for i in 1..=dim {
        for j in 1..=dim {
            if let Some((sign, (p, q))) = spec.canonicalize(i, j)? {
                out.push(i, j, vec![Generator::new(p, q, r)], S::from_int(sign));
            }
        }
    }
    Ok(out)
}

/// `tr (S X_1 ... X_k)` with each `X_t` acting on a single factor, as a linear
/// combination of words (letters in product order).
pub fn trace_words<L: Clone + Ord, S: Scalar>(
    op: &TensorOp<S>,
    factors: &[LocalMatrix<L, S>],
) -> BTreeMap<Vec<L>, S> {
    trace_words_pruned(op, factors, &|_| true)
}

/// As [`trace_words`], dropping every partial word rejected by `keep` (which
/// must reject all extensions of a rejected word).
pub fn trace_words_pruned<L: Clone + Ord, S: Scalar>(
    op: &TensorOp<S>,
    factors: &[LocalMatrix<L, S>],
    keep: &dyn Fn(&[L]) -> bool,
) -> BTreeMap<Vec<L>, S> {
    let m = op.m();
    let dim = op.dim();
    // last step touching each site
    let mut last_touch = vec![None; m + 1];
    for (t, f) in factors.iter().enumerate() {
        last_touch[f.site] = Some(t);
    }
    // row-indexed view of each factor: entries[(i, j)] grouped by i
    let by_row: Vec<RowView<L, S>> = factors
        .iter()
        .map(|f| {
            let mut g: RowView<L, S> = BTreeMap::new();
            for ((i, j), w) in &f.entries {
                g.entry(*i).or_default().push((*j, w));
            }
            g
        })
        .collect();
    let mut acc: BTreeMap<Vec<L>, S> = BTreeMap::new();
    #[allow(clippy::too_many_arguments)]
    fn walk<L: Clone + Ord, S: Scalar>(
        t: usize,
        cur: &mut Vec<usize>,
        target: &[usize],
        factors: &[LocalMatrix<L, S>],
        by_row: &[RowView<L, S>],
        last_touch: &[Option<usize>],
        partial: &BTreeMap<Vec<L>, S>,
        acc: &mut BTreeMap<Vec<L>, S>,
        keep: &dyn Fn(&[L]) -> bool,
    ) {
        if t == factors.len() {
            if cur.as_slice() == target {
                for (w, c) in partial {
                    let e = acc.entry(w.clone()).or_insert_with(S::zero);
                    *e = e.clone() + c.clone();
                }
            }
            return;
        }
        let site = factors[t].site;
        let from = cur[site - 1];
        let Some(choices) = by_row[t].get(&from) else { return };
        for (to, words) in choices {
            if last_touch[site] == Some(t) && *to != target[site - 1] {
                continue;
            }
            let mut next: BTreeMap<Vec<L>, S> = BTreeMap::new();
            for (w, c) in partial {
                for (x, d) in words.iter() {
                    let mut nw = w.clone();
                    nw.extend(x.iter().cloned());
                    if !keep(&nw) {
                        continue;
                    }
                    let e = next.entry(nw).or_insert_with(S::zero);
                    *e = e.clone() + c.clone() * d.clone();
                }
            }
            next.retain(|_, v| !v.is_zero());
            if next.is_empty() {
                continue;
            }
            cur[site - 1] = *to;
            walk(t + 1, cur, target, factors, by_row, last_touch, &next, acc, keep);
            cur[site - 1] = from;
        }
    }
    let _ = dim;
    for (row, col, s) in op.entries() {
        // tr(S X) = sum_{I,J} S_{IJ} X_{JI}
        let target = op.decode(row);
        let mut cur = op.decode(col);
        let mut partial = BTreeMap::new();
        partial.insert(Vec::new(), s.clone());
        walk(0, &mut cur, &target, factors, &by_row, &last_touch, &partial, &mut acc, keep);
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}
