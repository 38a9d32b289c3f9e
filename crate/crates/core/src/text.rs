//! Parser for the text form of elements: sums of terms `coeff*factor*...*factor`
//! with factors `F[i,j;r]`, `E[i,j;r]`, `tau`, `mu[i;r]`, `mu[i]`, `z[i]`,
//! `zeta[i]`. This is the form printed by the `Display` impls.

use crate::envu::{Algebra, UElem};
use crate::error::{Error, Result};
use crate::foundations::Scalar;
use crate::harmonic::{CommPolynomial, ExteriorElement, ZVar};
use crate::liealg::Generator;
use crate::poly::Poly;
use crate::walg::pi0::{MuVar, Pi0};

/// One factor of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `F[i,j;r]` or `E[i,j;r]`
    Gen { i: usize, j: usize, r: i32 },
    Tau,
    /// `mu[i;r]`
    MuDepth { i: usize, r: i32 },
    /// `mu[i]`
    Mu(usize),
    Z(usize),
    Zeta(usize),
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.error("expected an integer"))
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.int()?;
        usize::try_from(v).map_err(|_| self.error("negative index"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn coefficient<S: Scalar>(&mut self) -> Result<S> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
            self.pos += 1;
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
        S::parse(t).ok_or_else(|| self.error("bad coefficient"))
    }

    fn atom(&mut self) -> Result<Atom> {
        let name = self.ident();
        match name.as_str() {
            "tau" => Ok(Atom::Tau),
            "F" | "E" => {
                self.expect(b'[')?;
                let i = self.index()?;
                self.expect(b',')?;
                let j = self.index()?;
                self.expect(b';')?;
                let r = self.int()?;
                self.expect(b']')?;
                Ok(Atom::Gen { i, j, r: r as i32 })
            }
            "mu" | "z" | "zeta" => {
                self.expect(b'[')?;
                let i = self.index()?;
                let r = if self.eat(b';') { Some(self.int()?) } else { None };
                self.expect(b']')?;
                match (name.as_str(), r) {
                    ("mu", Some(r)) => Ok(Atom::MuDepth { i, r: r as i32 }),
                    ("mu", None) => Ok(Atom::Mu(i)),
                    ("z", None) => Ok(Atom::Z(i)),
                    ("zeta", None) => Ok(Atom::Zeta(i)),
                    _ => Err(self.error("unexpected depth")),
                }
            }
            "" => Err(self.error("expected a factor")),
            other => Err(self.error(&format!("unknown factor {other}"))),
        }
    }
}

/// Splits text into `(coefficient, factors)` terms.
pub fn parse_terms<S: Scalar>(text: &str) -> Result<Vec<(S, Vec<Atom>)>> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    if c.peek().is_none() {
        return Err(c.error("empty input"));
    }
    let mut first = true;
    loop {
        let mut sign = S::one();
        if c.eat(b'-') {
            sign = -sign;
        } else if !c.eat(b'+') && !first {
            return Err(c.error("expected '+' or '-'"));
        }
        first = false;
        let mut coeff = sign;
        let mut atoms = Vec::new();
        if c.peek().is_some_and(|b| b.is_ascii_digit()) {
            coeff = coeff * c.coefficient::<S>()?;
            while c.eat(b'*') {
                atoms.push(c.atom()?);
            }
        } else {
            atoms.push(c.atom()?);
            while c.eat(b'*') {
                atoms.push(c.atom()?);
            }
        }
        out.push((coeff, atoms));
        if c.peek().is_none() {
            return Ok(out);
        }
    }
}

fn wrong(a: &Atom, what: &str) -> Error {
    Error::Parse(format!("{a:?} is not a factor of {what}"))
}

/// Parses an element of the enveloping algebra; products are normal ordered and
/// non-canonical `F[i,j;r]` are rewritten in the canonical basis.
pub fn parse_uelem<S: Scalar>(alg: &Algebra<S>, text: &str) -> Result<UElem<S>> {
    let spec = alg.spec();
    let mut out = UElem::zero();
    for (c, atoms) in parse_terms::<S>(text)? {
        let mut t = UElem::scalar(c);
        for a in &atoms {
            let f = match a {
                Atom::Tau => alg.tau(),
                Atom::Gen { i, j, r } => match spec.canonicalize(*i, *j)? {
                    Some((sign, (p, q))) => alg.gen(Generator::new(p, q, *r))?.scale(&S::from_int(sign)),
                    None => UElem::zero(),
                },
                _ => return Err(wrong(a, "the enveloping algebra")),
            };
            t = alg.mul(&t, &f);
        }
        out = &out + &t;
    }
    Ok(out)
}

/// Parses a polynomial in the `mu[i;r]`.
pub fn parse_pi0<S: Scalar>(text: &str) -> Result<Pi0<S>> {
    poly_from(text, "a polynomial in mu[i;r]", |a| match a {
        Atom::MuDepth { i, r } => Some(MuVar::new(*i, *r)),
        _ => None,
    })
}

/// Parses a polynomial in the `mu[i]`.
pub fn parse_mu_polynomial<S: Scalar>(text: &str) -> Result<Poly<usize, S>> {
    poly_from(text, "a polynomial in mu[i]", |a| match a {
        Atom::Mu(i) => Some(*i),
        _ => None,
    })
}

/// Parses a polynomial in the `z[i]`.
pub fn parse_comm_polynomial<S: Scalar>(text: &str) -> Result<CommPolynomial<S>> {
    poly_from(text, "a polynomial in z[i]", |a| match a {
        Atom::Z(i) => Some(ZVar(*i)),
        _ => None,
    })
}

/// Parses an exterior polynomial; the `zeta[i]` anticommute.
pub fn parse_exterior<S: Scalar>(text: &str) -> Result<ExteriorElement<S>> {
    let mut out = ExteriorElement::zero();
    for (c, atoms) in parse_terms::<S>(text)? {
        let mut w = Vec::new();
        for a in &atoms {
            match a {
                Atom::Zeta(i) => w.push(*i),
                _ => return Err(wrong(a, "an exterior polynomial")),
            }
        }
        out.add_word(&w, c);
    }
    Ok(out)
}

fn poly_from<V: Ord + Clone, S: Scalar>(text: &str, what: &str, var: impl Fn(&Atom) -> Option<V>) -> Result<Poly<V, S>> {
    let mut out = Poly::zero();
    for (c, atoms) in parse_terms::<S>(text)? {
        let mut t = Poly::constant(c);
        for a in &atoms {
            let v = var(a).ok_or_else(|| wrong(a, what))?;
            t = &t * &Poly::var(v);
        }
        out = &out + &t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{AlgebraSpec, Family};
    use crate::Rational as Q;

    #[test]
    fn round_trip_uelem() {
        let alg = Algebra::<Q>::new(AlgebraSpec::new(Family::B, 1).unwrap());
        let e = parse_uelem(&alg, "-2/3*F[1,2;-1]*tau + F[2,2;-1]*F[1,1;-1] + 5").unwrap();
        let again = parse_uelem(&alg, &alg.show(&e)).unwrap();
        assert_eq!(e, again);
        // F_{3,2} = -F_{2,1} in o_3
        let a = parse_uelem(&alg, "F[3,2;-1]").unwrap();
        let b = parse_uelem(&alg, "-F[2,1;-1]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn polynomials() {
        let p = parse_mu_polynomial::<Q>("mu[1] + mu[1]*mu[1]").unwrap();
        assert_eq!(p.to_string(), "mu[1] + mu[1]*mu[1]");
        let e = parse_exterior::<Q>("zeta[4]*zeta[1] + zeta[2]*zeta[3]").unwrap();
        assert_eq!(e.to_string(), "-zeta[1]*zeta[4] + zeta[2]*zeta[3]");
        let q = parse_pi0::<Q>("mu[1;-1]*mu[2;-2] - 3").unwrap();
        assert_eq!(parse_pi0::<Q>(&q.to_string()).unwrap(), q);
        assert!(parse_pi0::<Q>("mu[1]").is_err());
        assert!(parse_comm_polynomial::<Q>("z[1] +").is_err());
    }
}
