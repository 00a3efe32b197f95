//! Text grammar for coefficients and polynomials, e.g. `3/2*x^2*y - i*z^3`.
//!
//! Sums, products, integer powers, parentheses and division by constants are
//! accepted; `i` is the imaginary unit and whitespace is insignificant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::hompoly::HomPoly3;
use super::scalar::{imag_unit, Field, GaussRational, Rational};
use super::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(pub String);

type Terms = BTreeMap<Vec<u32>, GaussRational>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            // Identifiers are single letters so `xy` reads as `x*y`.
            out.push(Tok::Ident(c.to_string()));
            k += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(ParseError(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, c: GaussRational) -> Terms {
        let mut t = Terms::new();
        if !c.is_zero() {
            t.insert(vec![0; self.vars.len()], c);
        }
        t
    }

    fn expr(&mut self) -> Result<Terms, ParseError> {
        let mut acc = if self.eat('-') {
            neg(self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = add(acc, self.term()?);
            } else if self.eat('-') {
                acc = add(acc, neg(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Terms, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = mul(&acc, &self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                let c = as_constant(&d, self.vars.len())
                    .ok_or_else(|| ParseError("division by a non-constant".into()))?;
                if c.is_zero() {
                    return Err(ParseError("division by zero".into()));
                }
                let inv = GaussRational::one() / c;
                acc = acc.into_iter().map(|(e, v)| (e, v * inv.clone())).collect();
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = mul(&acc, &self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Terms, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(ParseError("expected an exponent".into()));
            };
            self.pos += 1;
            let n: u32 = n.try_into().map_err(|_| ParseError("exponent too large".into()))?;
            let mut acc = self.constant(GaussRational::one());
            for _ in 0..n {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Terms, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.constant(GaussRational::from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    let mut e = vec![0; self.vars.len()];
                    e[k] = 1;
                    Ok(Terms::from([(e, GaussRational::one())]))
                } else if name == "i" {
                    Ok(self.constant(imag_unit()))
                } else {
                    Err(ParseError(format!("unknown symbol '{name}'")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(ParseError("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(neg(self.power()?))
            }
            Some(Tok::Op(c)) => Err(ParseError(format!("unexpected '{c}'"))),
            None => Err(ParseError("unexpected end of input".into())),
        }
    }
}

fn add(mut a: Terms, b: Terms) -> Terms {
    for (e, c) in b {
        let s = a.remove(&e).unwrap_or_else(GaussRational::zero) + c;
        if !s.is_zero() {
            a.insert(e, s);
        }
    }
    a
}

fn neg(a: Terms) -> Terms {
    a.into_iter().map(|(e, c)| (e, -c)).collect()
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out = add(out, Terms::from([(e, ca.clone() * cb.clone())]));
        }
    }
    out
}

fn as_constant(t: &Terms, n: usize) -> Option<GaussRational> {
    match t.len() {
        0 => Some(GaussRational::zero()),
        1 => t.get(&vec![0; n]).cloned(),
        _ => None,
    }
}

fn parse_terms(src: &str, vars: &[&str]) -> Result<Terms, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, vars };
    let t = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError(format!("trailing input at token {}", p.pos)));
    }
    Ok(t)
}

/// Parses a homogeneous polynomial in `x, y, z` over `F`.
pub fn parse_hom<F: Field>(src: &str) -> Result<HomPoly3<F>, ParseError> {
    let t = parse_terms(src, &["x", "y", "z"])?;
    let deg = t.keys().next().map_or(0, |e| e.iter().sum());
    let mut terms = Vec::new();
    for (e, c) in t {
        if e.iter().sum::<u32>() != deg {
            return Err(ParseError(format!("'{src}' is not homogeneous")));
        }
        let c = F::from_gauss(&c).ok_or_else(|| ParseError(format!("'{src}' has non-real coefficients")))?;
        terms.push(([e[0], e[1], e[2]], c));
    }
    Ok(HomPoly3::from_terms(deg, terms))
}

/// Parses `f0 : f1 : f2` with real coefficients.
pub fn parse_map(src: &str) -> Result<[HomPoly3<Rational>; 3], ParseError> {
    let parts: Vec<&str> = src.split(':').collect();
    if parts.len() != 3 {
        return Err(ParseError("a map needs three components separated by ':'".into()));
    }
    let comps = [parse_hom(parts[0])?, parse_hom(parts[1])?, parse_hom(parts[2])?];
    let deg = comps.iter().filter(|p| !p.is_zero()).map(HomPoly3::degree).max().unwrap_or(0);
    let comps = comps.map(|p| if p.is_zero() { HomPoly3::zero(deg) } else { p });
    if comps.iter().any(|p| p.degree() != deg) {
        return Err(ParseError("map components have different degrees".into()));
    }
    Ok(comps)
}

/// Parses a polynomial in `var` over `F`.
pub fn parse_uni<F: Field>(src: &str, var: &str) -> Result<UniPoly<F>, ParseError> {
    let t = parse_terms(src, &[var])?;
    let n = t.keys().map(|e| e[0] as usize + 1).max().unwrap_or(0);
    let mut v = vec![F::zero(); n];
    for (e, c) in t {
        v[e[0] as usize] = F::from_gauss(&c).ok_or_else(|| ParseError(format!("'{src}' has non-real coefficients")))?;
    }
    Ok(UniPoly::new(v))
}

/// Parses a constant such as `3/2`, `-i` or `1+2*i`.
pub fn parse_scalar<F: Field>(src: &str) -> Result<F, ParseError> {
    let t = parse_terms(src, &[])?;
    let c = as_constant(&t, 0).ok_or_else(|| ParseError(format!("'{src}' is not a constant")))?;
    F::from_gauss(&c).ok_or_else(|| ParseError(format!("'{src}' is not real")))
}
