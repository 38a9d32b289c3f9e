//! The classical Lie algebras `gl_N`, `o_N`, `sp_N` in the `F_ij` basis, their loop
//! generators and brackets.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::foundations::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Family(format!("unknown family {other:?}"))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::B | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Family together with its rank data.
///
/// `n` is the rank for B, C, D (`N = 2n+1` or `2n`); for A, `n = N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    pub family: Family,
    pub n: usize,
    big_n: usize,
}

/// Triangular class of a generator, relative to the standard Borel subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenClass {
    Raising,
    Cartan,
    Lowering,
}

impl AlgebraSpec {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let big_n = match family {
            Family::A => n,
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        };
        if n == 0 {
            return Err(Error::Range("rank must be positive".into()));
        }
        if big_n > 60 {
            return Err(Error::Range(format!("N = {big_n} is too large")));
        }
        Ok(AlgebraSpec { family, n, big_n })
    }

    pub fn gl(big_n: usize) -> Result<Self> {
        Self::new(Family::A, big_n)
    }

    /// The orthogonal algebra `o_N`.
    pub fn orthogonal(big_n: usize) -> Result<Self> {
        if big_n < 2 {
            return Err(Error::Range("o_N needs N >= 2".into()));
        }
        if big_n % 2 == 1 {
            Self::new(Family::B, big_n / 2)
        } else {
            Self::new(Family::D, big_n / 2)
        }
    }

    pub fn symplectic(big_n: usize) -> Result<Self> {
        if big_n % 2 == 1 || big_n == 0 {
            return Err(Error::Range("sp_N needs even N".into()));
        }
        Self::new(Family::C, big_n / 2)
    }

    /// Matrix size N.
    pub fn dim(&self) -> usize {
        self.big_n
    }

    pub fn prime(&self, i: usize) -> usize {
        self.big_n + 1 - i
    }

    pub fn epsilon(&self, i: usize) -> i64 {
        if self.family == Family::C && i > self.n {
            -1
        } else {
            1
        }
    }

    /// `theta_ij` in `F_ij = E_ij - theta_ij E_j'i'`.
    fn theta(&self, i: usize, j: usize) -> i64 {
        self.epsilon(i) * self.epsilon(j)
    }

    /// `N/2 - 1` (orthogonal) or `N/2 + 1` (symplectic); `N/2` is not used for A.
    pub fn kappa<S: Scalar>(&self) -> S {
        let half = S::from_frac(self.big_n as i64, 2);
        match self.family {
            Family::B | Family::D => half - S::one(),
            Family::C => half + S::one(),
            Family::A => S::zero(),
        }
    }

    /// `omega` in the normalization factor `gamma_m(omega)`.
    pub fn omega(&self) -> i64 {
        match self.family {
            Family::C => -(self.big_n as i64),
            _ => self.big_n as i64,
        }
    }

    /// Number of Cartan coordinates (weights and `mu_i`).
    pub fn rank(&self) -> usize {
        self.n
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.big_n {
            return Err(Error::Alphabet(format!("index {i} outside 1..={}", self.big_n)));
        }
        Ok(())
    }

    pub fn is_canonical(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 || i > self.big_n || j > self.big_n {
            return false;
        }
        match self.family {
            Family::A => true,
            Family::B | Family::D => i + j <= self.big_n,
            Family::C => i + j <= self.big_n + 1,
        }
    }

    /// Canonical index pairs spanning the algebra.
    pub fn canonical_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.big_n {
            for j in 1..=self.big_n {
                if self.is_canonical(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Writes `F_ij` as `sign * F_(p,q)` with `(p,q)` canonical, or `None` if `F_ij = 0`.
    pub fn canonicalize(&self, i: usize, j: usize) -> Result<Option<(i64, (usize, usize))>> {
        self.check_index(i)?;
        self.check_index(j)?;
        if self.is_canonical(i, j) {
            return Ok(Some((1, (i, j))));
        }
        let (p, q) = (self.prime(j), self.prime(i));
        if self.family.is_orthogonal() && (p, q) == (i, j) {
            return Ok(None);
        }
        // F_ij = -theta_ij F_j'i'
        Ok(Some((-self.theta(i, j), (p, q))))
    }

    /// `F_ij` as a combination of matrix units `E_kl` of `gl_N`.
    pub fn matrix_of(&self, i: usize, j: usize) -> Vec<((usize, usize), i64)> {
        if self.family == Family::A {
            return vec![((i, j), 1)];
        }
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        *acc.entry((i, j)).or_default() += 1;
        *acc.entry((self.prime(j), self.prime(i))).or_default() -= self.theta(i, j);
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    pub fn class_of(&self, i: usize, j: usize) -> GenClass {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => GenClass::Raising,
            std::cmp::Ordering::Equal => GenClass::Cartan,
            std::cmp::Ordering::Greater => GenClass::Lowering,
        }
    }

    /// Weight of the basis vector `e_i` of `C^N`.
    pub fn index_weight(&self, i: usize) -> Vec<i64> {
        let mut w = vec![0; self.n];
        if self.family == Family::A || i <= self.n {
            w[i - 1] = 1;
        } else if i > self.big_n - self.n {
            w[self.prime(i) - 1] = -1;
        }
        w
    }

    /// Weight of `F_ij`.
    pub fn weight(&self, i: usize, j: usize) -> Vec<i64> {
        let a = self.index_weight(i);
        let b = self.index_weight(j);
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }

    /// For a Cartan pair `(i,i)`, the coordinate index `k` and sign with `F_ii = sign * F_kk`, `k <= n`.
    pub fn cartan_coordinate(&self, i: usize) -> Option<(usize, i64)> {
        match self.family {
            Family::A => Some((i, 1)),
            _ if i <= self.n => Some((i, 1)),
            _ if i > self.big_n - self.n => Some((self.prime(i), -1)),
            _ => None,
        }
    }

    /// Bracket of two canonical basis elements, expanded in the canonical basis.
    pub fn bracket_pairs<S: Scalar>(
        &self,
        a: (usize, usize),
        b: (usize, usize),
    ) -> Vec<((usize, usize), S)> {
        let ma = self.matrix_of(a.0, a.1);
        let mb = self.matrix_of(b.0, b.1);
        let mut prod: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &((i, j), x) in &ma {
            for &((k, l), y) in &mb {
                if j == k {
                    *prod.entry((i, l)).or_default() += x * y;
                }
                if l == i {
                    *prod.entry((k, j)).or_default() -= x * y;
                }
            }
        }
        let mut out = Vec::new();
        for (i, j) in self.canonical_pairs() {
            let entry = prod.get(&(i, j)).copied().unwrap_or(0);
            if entry == 0 {
                continue;
            }
            let diag = self
                .matrix_of(i, j)
                .into_iter()
                .find(|(ij, _)| *ij == (i, j))
                .map_or(1, |(_, c)| c);
            out.push(((i, j), S::from_frac(entry, diag)));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"family": self.family.letter().to_string(), "n": self.n})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let fam = v
            .get("family")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::Parse("missing family".into()))?;
        let n = v
            .get("n")
            .and_then(|f| f.as_u64())
            .ok_or_else(|| Error::Parse("missing n".into()))?;
        Self::new(Family::parse(fam)?, n as usize)
    }

    /// Short name such as `o_5`, `sp_4`, `gl_3`.
    pub fn name(&self) -> String {
        match self.family {
            Family::A => format!("gl_{}", self.big_n),
            Family::B | Family::D => format!("o_{}", self.big_n),
            Family::C => format!("sp_{}", self.big_n),
        }
    }
}

/// A loop generator `X_ij[r]` (`E` for `gl_N`, `F` otherwise) or the derivation `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Loop { i: u8, j: u8, r: i32 },
    Tau,
}

impl Generator {
    pub fn new(i: usize, j: usize, r: i32) -> Self {
        Generator::Loop { i: i as u8, j: j as u8, r }
    }

    pub fn depth(&self) -> Option<i32> {
        match self {
            Generator::Loop { r, .. } => Some(*r),
            Generator::Tau => None,
        }
    }

    pub fn indices(&self) -> Option<(usize, usize)> {
        match self {
            Generator::Loop { i, j, .. } => Some((*i as usize, *j as usize)),
            Generator::Tau => None,
        }
    }

    pub fn with_depth(&self, r: i32) -> Self {
        match *self {
            Generator::Loop { i, j, .. } => Generator::Loop { i, j, r },
            Generator::Tau => Generator::Tau,
        }
    }

    pub fn letter(family: Family) -> char {
        if family == Family::A {
            'E'
        } else {
            'F'
        }
    }

    pub fn display(&self, family: Family) -> String {
        match self {
            Generator::Loop { i, j, r } => format!("{}[{i},{j};{r}]", Self::letter(family)),
            Generator::Tau => "tau".to_string(),
        }
    }
}

/// Linear combination of generators.
pub type LieElement<S> = Vec<(Generator, S)>;

/// Checks that a generator belongs to the canonical alphabet of `spec`.
pub fn validate(spec: &AlgebraSpec, g: &Generator) -> Result<()> {
    if let Generator::Loop { i, j, .. } = g {
        if !spec.is_canonical(*i as usize, *j as usize) {
            return Err(Error::Alphabet(format!(
                "{} is not a canonical generator of {}",
                g.display(spec.family),
                spec.name()
            )));
        }
    }
    Ok(())
}

/// `[a, b]` for loop generators and `tau`, using `[tau, X[r]] = -r X[r-1]` and
/// `[X[r], Y[s]] = [X, Y][r+s]`.
pub fn bracket<S: Scalar>(spec: &AlgebraSpec, a: &Generator, b: &Generator) -> Result<LieElement<S>> {
    validate(spec, a)?;
    validate(spec, b)?;
    Ok(match (a, b) {
        (Generator::Tau, Generator::Tau) => Vec::new(),
        (Generator::Tau, Generator::Loop { i, j, r }) => {
            if *r == 0 {
                Vec::new()
            } else {
                vec![(Generator::Loop { i: *i, j: *j, r: r - 1 }, S::from_int(-(*r as i64)))]
            }
        }
        (Generator::Loop { i, j, r }, Generator::Tau) => {
            if *r == 0 {
                Vec::new()
            } else {
                vec![(Generator::Loop { i: *i, j: *j, r: r - 1 }, S::from_int(*r as i64))]
            }
        }
        (Generator::Loop { i, j, r }, Generator::Loop { i: k, j: l, r: s }) => spec
            .bracket_pairs::<S>((*i as usize, *j as usize), (*k as usize, *l as usize))
            .into_iter()
            .map(|((p, q), c)| (Generator::new(p, q, r + s), c))
            .collect(),
    })
}

/// Weight of a product of generators (`tau` has weight zero).
pub fn weight_of(spec: &AlgebraSpec, monomial: &[Generator]) -> Result<Vec<i64>> {
    let mut w = vec![0; spec.rank()];
    for g in monomial {
        validate(spec, g)?;
        if let Some((i, j)) = g.indices() {
            for (a, b) in w.iter_mut().zip(spec.weight(i, j)) {
                *a += b;
            }
        }
    }
    Ok(w)
}
