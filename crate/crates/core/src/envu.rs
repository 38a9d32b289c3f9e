//! PBW normal ordering in `U(t^-1 g[t^-1]) x C tau`, `U(g[t])` and `U(g)`, the
//! Harish-Chandra projections and the evaluation homomorphism.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::foundations::Scalar;
use crate::liealg::{validate, weight_of, AlgebraSpec, Family, GenClass, Generator};
use crate::poly::{Mono, Poly};
use crate::walg::pi0::{MuVar, TauOp};

pub type Monomial = Vec<Generator>;

/// Which triangular class sits on the right of a PBW monomial (`tau` is always last).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PbwOrder {
    /// raising, Cartan, lowering, `tau`
    Standard,
    /// lowering, Cartan, raising, `tau`
    Opposite,
}

/// Element of an enveloping algebra: PBW monomials (in the order of the
/// [`Algebra`] that produced them) with exact coefficients.
#[derive(Clone, PartialEq)]
pub struct UElem<S: Scalar> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for UElem<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> UElem<S> {
    pub fn zero() -> Self {
        UElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(Vec::new(), c);
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[Generator]) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c * m` without reordering; `m` must already be PBW ordered.
    pub fn add_term(&mut self, m: Monomial, c: S) {
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

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Formats with the generator letter of the given family.
    pub fn display(&self, family: Family) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
            for g in m {
                s.push('*');
                s.push_str(&g.display(family));
            }
        }
        s
    }

    pub fn to_json(&self, family: Family) -> serde_json::Value {
        let letter = Generator::letter(family).to_string();
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<serde_json::Value> = m
                    .iter()
                    .map(|g| match g {
                        Generator::Loop { i, j, r } => serde_json::json!([letter, i, j, r]),
                        Generator::Tau => serde_json::json!(["tau"]),
                    })
                    .collect();
                serde_json::json!({"coeff": c.to_string(), "monomial": mono})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

impl<S: Scalar> std::ops::Add for &UElem<S> {
    type Output = UElem<S>;
    fn add(self, rhs: Self) -> UElem<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &S::one());
        out
    }
}

impl<S: Scalar> std::ops::Sub for &UElem<S> {
    type Output = UElem<S>;
    fn sub(self, rhs: Self) -> UElem<S> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<S: Scalar> fmt::Debug for UElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(Family::B))
    }
}

type MemoKey = (Monomial, Generator);

type BracketTable<S> = HashMap<((usize, usize), (usize, usize)), Vec<((usize, usize), S)>>;

/// Multiplication context for one algebra and one PBW order.
pub struct Algebra<S: Scalar> {
    spec: AlgebraSpec,
    order: PbwOrder,
    brackets: BracketTable<S>,
    memo: Mutex<HashMap<MemoKey, UElem<S>>>,
    other: OnceLock<Box<Algebra<S>>>,
}

impl<S: Scalar> Algebra<S> {
    pub fn new(spec: AlgebraSpec) -> Self {
        Self::with_order(spec, PbwOrder::Standard)
    }

    pub fn with_order(spec: AlgebraSpec, order: PbwOrder) -> Self {
        let pairs = spec.canonical_pairs();
        let mut brackets = HashMap::new();
        for &a in &pairs {
            for &b in &pairs {
                brackets.insert((a, b), spec.bracket_pairs::<S>(a, b));
            }
        }
        Algebra { spec, order, brackets, memo: Mutex::new(HashMap::new()), other: OnceLock::new() }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn order(&self) -> PbwOrder {
        self.order
    }

    /// The same algebra with the other PBW order (built once).
    pub fn opposite(&self) -> &Algebra<S> {
        self.other.get_or_init(|| {
            let o = match self.order {
                PbwOrder::Standard => PbwOrder::Opposite,
                PbwOrder::Opposite => PbwOrder::Standard,
            };
            Box::new(Algebra::with_order(self.spec, o))
        })
    }

    pub fn in_order(&self, order: PbwOrder) -> &Algebra<S> {
        if order == self.order {
            self
        } else {
            self.opposite()
        }
    }

    fn key(&self, g: &Generator) -> (u8, usize, usize, i32) {
        match *g {
            Generator::Tau => (3, 0, 0, 0),
            Generator::Loop { i, j, r } => {
                let class = match (self.spec.class_of(i as usize, j as usize), self.order) {
                    (GenClass::Cartan, _) => 1,
                    (GenClass::Raising, PbwOrder::Standard) | (GenClass::Lowering, PbwOrder::Opposite) => 0,
                    _ => 2,
                };
                (class, i as usize, j as usize, r)
            }
        }
    }

    /// `[a, b]` as a combination of generators.
    pub fn bracket(&self, a: &Generator, b: &Generator) -> Vec<(Generator, S)> {
        match (a, b) {
            (Generator::Loop { i, j, r }, Generator::Loop { i: k, j: l, r: s }) => self.brackets
                [&((*i as usize, *j as usize), (*k as usize, *l as usize))]
                .iter()
                .map(|((p, q), c)| (Generator::new(*p, *q, r + s), c.clone()))
                .collect(),
            _ => crate::liealg::bracket(&self.spec, a, b).expect("validated generators"),
        }
    }

    pub fn gen(&self, g: Generator) -> Result<UElem<S>> {
        validate(&self.spec, &g)?;
        let mut e = UElem::zero();
        e.add_term(vec![g], S::one());
        Ok(e)
    }

    /// The element `F_ij[r]` for any index pair (canonicalized, possibly zero).
    pub fn loop_gen(&self, i: usize, j: usize, r: i32) -> Result<UElem<S>> {
        Ok(match self.spec.canonicalize(i, j)? {
            None => UElem::zero(),
            Some((sign, (p, q))) => self.gen(Generator::new(p, q, r))?.scale(&S::from_int(sign)),
        })
    }

    pub fn tau(&self) -> UElem<S> {
        self.gen(Generator::Tau).expect("tau is always valid")
    }

    /// Product `mono * g` in normal form, `mono` already ordered.
    fn mul_gen_right(&self, mono: &[Generator], g: &Generator) -> UElem<S> {
        let last = match mono.last() {
            None => {
                let mut e = UElem::zero();
                e.add_term(vec![*g], S::one());
                return e;
            }
            Some(x) => *x,
        };
        if self.key(&last) <= self.key(g) {
            let mut m = mono.to_vec();
            m.push(*g);
            let mut e = UElem::zero();
            e.add_term(m, S::one());
            return e;
        }
        let key = (mono.to_vec(), *g);
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        // m' x g = (m' g) x + m' [x, g]
        let head = &mono[..mono.len() - 1];
        let mut out = UElem::zero();
        for (m, c) in self.mul_gen_right(head, g).terms() {
            out.add_scaled(&self.mul_gen_right(m, &last), c);
        }
        for (h, c) in self.bracket(&last, g) {
            out.add_scaled(&self.mul_gen_right(head, &h), &c);
        }
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    fn mul_mono_elem(&self, mono: &[Generator], rhs: &[Generator]) -> UElem<S> {
        let mut cur = UElem::zero();
        cur.add_term(mono.to_vec(), S::one());
        for g in rhs {
            let mut next = UElem::zero();
            for (m, c) in cur.terms() {
                next.add_scaled(&self.mul_gen_right(m, g), c);
            }
            cur = next;
        }
        cur
    }

    /// PBW-ordered product.
    pub fn mul(&self, a: &UElem<S>, b: &UElem<S>) -> UElem<S> {
        let mut out = UElem::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_scaled(&self.mul_mono_elem(ma, mb), &(ca.clone() * cb.clone()));
            }
        }
        out
    }

    /// Checked product: validates every generator against the algebra.
    pub fn multiply(&self, a: &UElem<S>, b: &UElem<S>) -> Result<UElem<S>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn check(&self, a: &UElem<S>) -> Result<()> {
        for (m, _) in a.terms() {
            for g in m {
                validate(&self.spec, g)?;
            }
        }
        Ok(())
    }

    /// Normal form of an arbitrary word of generators.
    pub fn word(&self, w: &[Generator]) -> UElem<S> {
        self.mul_mono_elem(&[], w)
    }

    /// Normal form of an element given in another PBW order (or unordered).
    pub fn normalize(&self, a: &UElem<S>) -> UElem<S> {
        let mut out = UElem::zero();
        for (m, c) in a.terms() {
            out.add_scaled(&self.word(m), c);
        }
        out
    }

    pub fn commutator(&self, a: &UElem<S>, b: &UElem<S>) -> UElem<S> {
        &self.mul(a, b) - &self.mul(b, a)
    }

    pub fn pow(&self, a: &UElem<S>, k: u32) -> UElem<S> {
        let mut out = UElem::one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    fn check_invariant(&self, a: &UElem<S>) -> Result<()> {
        for (m, _) in a.terms() {
            let w = weight_of(&self.spec, m)?;
            if w.iter().any(|x| *x != 0) {
                return Err(Error::NotInvariant(format!(
                    "monomial {} has weight {:?}",
                    UElem::<S>::display_mono(m, self.spec.family),
                    w
                )));
            }
        }
        Ok(())
    }

    /// Drops monomials with non-Cartan generators from an element ordered so that
    /// the ideal generators sit on the right, and maps Cartan generators to `mu`.
    fn project(&self, a: &UElem<S>) -> TauOp<S> {
        let mut out = TauOp::zero();
        'mono: for (m, c) in a.terms() {
            let mut tau_pow = 0i64;
            let mut mono: Vec<(MuVar, u32)> = Vec::new();
            let mut sign = S::one();
            for g in m {
                match *g {
                    Generator::Tau => tau_pow += 1,
                    Generator::Loop { i, j, r } => {
                        if i != j {
                            continue 'mono;
                        }
                        let (k, s) = self.spec.cartan_coordinate(i as usize).expect("canonical Cartan");
                        if s < 0 {
                            sign = -sign;
                        }
                        mono.push((MuVar::new(k, r), 1));
                    }
                }
            }
            let p = Poly::monomial(Mono::from_pairs(mono), c.clone() * sign);
            out.add_term(tau_pow, &p);
        }
        out
    }

    /// Projection modulo the left ideal generated by the lowering `F_ij[r]`, `i > j`.
    pub fn hc_chi(&self, a: &UElem<S>) -> Result<TauOp<S>> {
        self.check(a)?;
        self.check_invariant(a)?;
        let std = self.in_order(PbwOrder::Standard);
        let ordered = if self.order == PbwOrder::Standard { a.clone() } else { std.normalize(a) };
        Ok(std.project(&ordered))
    }

    /// Projection modulo the left ideal generated by the raising `F_ij[r]`, `i < j`.
    pub fn hc_top(&self, a: &UElem<S>) -> Result<TauOp<S>> {
        self.check(a)?;
        self.check_invariant(a)?;
        let opp = self.in_order(PbwOrder::Opposite);
        let ordered = if self.order == PbwOrder::Opposite { a.clone() } else { opp.normalize(a) };
        Ok(opp.project(&ordered))
    }

    /// Harish-Chandra image of an element of `U(g)` (depth 0 only).
    pub fn hc_classical(&self, a: &UElem<S>) -> Result<Poly<usize, S>> {
        for (m, _) in a.terms() {
            for g in m {
                if g.depth() != Some(0) {
                    return Err(Error::Depth(format!(
                        "{} is not in U(g)",
                        g.display(self.spec.family)
                    )));
                }
            }
        }
        let img = self.hc_top(a)?;
        Ok(img.coeff(0).map_vars(|v| v.i as usize))
    }

    /// Evaluation homomorphism `U(g[t]) -> U(g)`: keeps depth 0, kills positive depths.
    pub fn evaluate(&self, a: &UElem<S>) -> Result<UElem<S>> {
        self.check(a)?;
        let mut out = UElem::zero();
        'mono: for (m, c) in a.terms() {
            for g in m {
                match g.depth() {
                    None => return Err(Error::Depth("tau is not in U(g[t])".into())),
                    Some(r) if r < 0 => {
                        return Err(Error::Depth(format!(
                            "negative depth in {}",
                            g.display(self.spec.family)
                        )))
                    }
                    Some(r) if r > 0 => continue 'mono,
                    _ => {}
                }
            }
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Applies `F_ij[r] -> -F_ji[r]` (`Involution::Sigma`) or the type D swap of
    /// `n` and `n'` (`Involution::Tilde`), then renormalizes.
    pub fn apply_involution(&self, a: &UElem<S>, which: Involution) -> Result<UElem<S>> {
        self.check(a)?;
        if which == Involution::Tilde && self.spec.family != Family::D {
            return Err(Error::Family("the n <-> n' involution needs type D".into()));
        }
        let n = self.spec.n;
        let np = self.spec.prime(n);
        let swap = |k: usize| {
            if k == n {
                np
            } else if k == np {
                n
            } else {
                k
            }
        };
        let image = |g: &Generator| -> Result<UElem<S>> {
            match *g {
                Generator::Tau => Ok(self.tau()),
                Generator::Loop { i, j, r } => {
                    let (i, j) = (i as usize, j as usize);
                    match which {
                        Involution::Sigma => Ok(self.loop_gen(j, i, r)?.scale(&-S::one())),
                        Involution::Tilde => self.loop_gen(swap(i), swap(j), r),
                    }
                }
            }
        };
        let mut out = UElem::zero();
        for (m, c) in a.terms() {
            let mut t = UElem::scalar(c.clone());
            for g in m {
                t = self.mul(&t, &image(g)?);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Splits an element with `tau` rightmost into `sum_k c_k tau^k`.
    pub fn tau_coefficients(&self, a: &UElem<S>) -> BTreeMap<usize, UElem<S>> {
        let mut out: BTreeMap<usize, UElem<S>> = BTreeMap::new();
        for (m, c) in a.terms() {
            let k = m.iter().filter(|g| **g == Generator::Tau).count();
            let rest: Monomial = m.iter().filter(|g| **g != Generator::Tau).copied().collect();
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn show(&self, a: &UElem<S>) -> String {
        a.display(self.spec.family)
    }
}

impl<S: Scalar> UElem<S> {
    fn display_mono(m: &[Generator], family: Family) -> String {
        m.iter().map(|g| g.display(family)).collect::<Vec<_>>().join("*")
    }
}

impl crate::poly::VarDisplay for usize {
    fn fmt_var(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu[{self}]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Sigma,
    Tilde,
}

/// Monomials must be fed in PBW order; used by parsers and tests.
pub fn elem_from_terms<S: Scalar>(alg: &Algebra<S>, terms: &[(S, Vec<Generator>)]) -> Result<UElem<S>> {
    let mut out = UElem::zero();
    for (c, w) in terms {
        for g in w {
            validate(alg.spec(), g)?;
        }
        out.add_scaled(&alg.word(w), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walg::pi0::mu;
    use crate::Rational as Q;

    fn g(i: usize, j: usize, r: i32) -> Generator {
        Generator::new(i, j, r)
    }

    #[test]
    fn tau_straightening() {
        let alg = Algebra::<Q>::new(AlgebraSpec::orthogonal(3).unwrap());
        let x = alg.word(&[Generator::Tau, g(1, 1, -1)]);
        let expected = elem_from_terms(
            &alg,
            &[(Q::from_int(1), vec![g(1, 1, -1), Generator::Tau]), (Q::from_int(1), vec![g(1, 1, -2)])],
        )
        .unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn opposite_order_reorders() {
        let alg = Algebra::<Q>::with_order(AlgebraSpec::gl(2).unwrap(), PbwOrder::Opposite);
        let x = alg.word(&[g(1, 2, 0), g(2, 1, 0)]);
        let mut e = UElem::zero();
        e.add_term(vec![g(2, 1, 0), g(1, 2, 0)], Q::from_int(1));
        e.add_term(vec![g(1, 1, 0)], Q::from_int(1));
        e.add_term(vec![g(2, 2, 0)], Q::from_int(-1));
        assert_eq!(x, e);
    }

    #[test]
    fn chi_of_cartan() {
        let alg = Algebra::<Q>::new(AlgebraSpec::orthogonal(5).unwrap());
        let x = alg.gen(g(1, 1, -1)).unwrap();
        assert_eq!(alg.hc_chi(&x).unwrap(), TauOp::from_pi0(mu(1, -1)));
        let y = alg.loop_gen(5, 5, -1).unwrap();
        assert_eq!(alg.hc_chi(&y).unwrap(), TauOp::from_pi0(mu::<Q>(1, -1).scale(&Q::from_int(-1))));
        assert!(matches!(alg.hc_chi(&alg.gen(g(1, 2, -1)).unwrap()), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn classical_quadratic_casimir() {
        let spec = AlgebraSpec::orthogonal(3).unwrap();
        let alg = Algebra::<Q>::new(spec);
        let mut c = UElem::zero();
        for i in 1..=3 {
            for j in 1..=3 {
                let p = alg.mul(&alg.loop_gen(i, j, 0).unwrap(), &alg.loop_gen(j, i, 0).unwrap());
                c = &c + &p;
            }
        }
        let img = alg.hc_classical(&c).unwrap();
        let m: Poly<usize, Q> = Poly::var(1);
        let expected = &(&m * &m).scale(&Q::from_int(2)) + &m.scale(&Q::from_int(2));
        assert_eq!(img, expected);
    }

    #[test]
    fn evaluation() {
        let alg = Algebra::<Q>::new(AlgebraSpec::orthogonal(3).unwrap());
        let x = alg.word(&[g(1, 2, 0), g(2, 1, 1)]);
        assert!(alg.evaluate(&x).unwrap().is_zero());
        let y = alg.word(&[g(1, 2, 0), g(2, 1, 0)]);
        assert_eq!(alg.evaluate(&y).unwrap(), y);
        assert!(alg.evaluate(&alg.gen(g(1, 1, -1)).unwrap()).is_err());
    }

    #[test]
    fn sigma_involution() {
        let alg = Algebra::<Q>::new(AlgebraSpec::orthogonal(3).unwrap());
        let x = alg.gen(g(1, 2, -1)).unwrap();
        assert_eq!(
            alg.apply_involution(&x, Involution::Sigma).unwrap(),
            alg.gen(g(2, 1, -1)).unwrap().scale(&Q::from_int(-1))
        );
        let y = alg.word(&[g(1, 2, -1), g(2, 1, -2), g(1, 1, -1)]);
        let back = alg
            .apply_involution(&alg.apply_involution(&y, Involution::Sigma).unwrap(), Involution::Sigma)
            .unwrap();
        assert_eq!(back, y);
        assert!(alg.apply_involution(&y, Involution::Tilde).is_err());
    }
}
