//! The homomorphism from the conic-pencil group onto a direct sum of copies
//! of `Z/2`, its extension to words in generators, and the decomposition of
//! conic-pencil maps into linear, quadratic and quintic letters.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::Value;

use crate::birmap::{base_points, compose, BasePoint};
use crate::error::{Error, Result};
use crate::generators::{linear_map, quadratic_jcirc, standard_quintic, Generator, Letter, Tag, Word};
use crate::plane::{conic_at_infinitely_near, conic_of_point, is_special, nu_key, p1, p2, pencil_value_of_conic, Conic, NuKey};

/// A vector over `Z/2` indexed by conic keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelVector(BTreeSet<NuKey>);

impl AbelVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(key: NuKey) -> Self {
        AbelVector(BTreeSet::from([key]))
    }

    pub fn from_keys(keys: impl IntoIterator<Item = NuKey>) -> Self {
        keys.into_iter().fold(Self::zero(), |mut v, k| {
            v.toggle(k);
            v
        })
    }

    pub fn toggle(&mut self, key: NuKey) {
        if !self.0.remove(&key) {
            self.0.insert(key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AbelVector(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &NuKey> {
        self.0.iter()
    }

    pub fn contains(&self, key: &NuKey) -> bool {
        self.0.contains(key)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|k| Value::String(k.to_string())).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected an array of fractions".into()))?;
        let keys = arr
            .iter()
            .map(|k| NuKey::parse(k.as_str().ok_or_else(|| Error::Parse("keys are strings".into()))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_keys(keys))
    }
}

impl fmt::Display for AbelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", keys.join(", "))
    }
}

/// A non-real conjugate pair of base points off the special points.
#[derive(Clone, Debug, PartialEq)]
pub struct SPair {
    pub q: BasePoint,
    pub qbar: BasePoint,
    pub conic: Conic,
    pub key: NuKey,
}

fn pencil_conic(p: &BasePoint) -> Result<Conic> {
    match p {
        BasePoint::Proper(q) => conic_of_point(q),
        BasePoint::Infinitesimal(t) => conic_at_infinitely_near(t),
    }
}

fn off_special(p: &BasePoint) -> bool {
    match p {
        BasePoint::Proper(q) => !is_special(q),
        BasePoint::Infinitesimal(_) => true,
    }
}

pub fn s_set(f: &Generator) -> Result<Vec<SPair>> {
    if f.tag() != Tag::Jcirc {
        return Err(Error::Precondition("expects an element of the conic-pencil group".into()));
    }
    let mut out: Vec<SPair> = Vec::new();
    for a in f.base_points()? {
        let p = &a.point;
        if p.is_real() || !off_special(p) || out.iter().any(|s| &s.qbar == p) {
            continue;
        }
        let conic = pencil_conic(p)?;
        let key = nu_key(&pencil_value_of_conic(&conic)?)?;
        out.push(SPair { q: p.clone(), qbar: p.conj(), conic, key });
    }
    Ok(out)
}

pub fn phi_circ(f: &Generator) -> Result<AbelVector> {
    Ok(AbelVector::from_keys(s_set(f)?.into_iter().map(|s| s.key)))
}

/// Linear and line-pencil letters contribute nothing; the sign of an
/// exponent does not matter.
pub fn phi_word(w: &Word) -> Result<AbelVector> {
    let mut v = AbelVector::zero();
    for l in &w.0 {
        match l.gen.tag() {
            Tag::Aut | Tag::Jstar => {}
            Tag::Jcirc => v = v.add(&phi_circ(&l.gen)?),
            Tag::Untagged => return Err(Error::Precondition("a letter carries no group tag".into())),
        }
    }
    Ok(v)
}

fn mult_at(pts: &[crate::birmap::AssignedPoint], q: &crate::plane::ProjPoint) -> u32 {
    pts.iter().filter(|a| a.point == BasePoint::Proper(q.clone())).map(|a| a.mult).sum()
}

/// Factors `f` into linear, quadratic and quintic letters of the
/// conic-pencil group, peeling off one right factor per step.
pub fn decompose_jcirc(f: &Generator) -> Result<Word> {
    if f.tag() != Tag::Jcirc {
        return Err(Error::Precondition("expects an element of the conic-pencil group".into()));
    }
    let mut g = f.map().clone();
    let mut right: Vec<Generator> = Vec::new();
    loop {
        let d = g.degree();
        if d <= 2 {
            let last = if d == 1 {
                linear_map(&g.linear_matrix().expect("degree one"))?.retagged(Tag::Jcirc)?
            } else {
                Generator::from_map(g, Tag::Jcirc)?
            };
            let mut letters = vec![Letter::new(last)];
            letters.extend(right.into_iter().rev().map(Letter::new));
            return Ok(Word::new(letters));
        }
        let pts = base_points(&g)?;
        let real_proper = |m: u32| {
            pts.iter().find_map(|a| match &a.point {
                BasePoint::Proper(q) if a.mult == m && q.is_real() => Some(q.clone()),
                _ => None,
            })
        };
        let tau = if d.is_multiple_of(2) {
            let r = real_proper(1).ok_or_else(|| Error::DeepTower("the simple base point is not proper".into()))?;
            let order = if mult_at(&pts, &p1()) * 2 == d { [1, 2] } else { [2, 1] };
            quadratic_jcirc(order[0], &r).or_else(|_| quadratic_jcirc(order[1], &r))?
        } else if let Some(q) = real_proper(2) {
            quadratic_jcirc(1, &q)?
        } else {
            let q = pts
                .iter()
                .find_map(|a| match &a.point {
                    BasePoint::Proper(q) if a.mult == 2 && !q.is_real() && !is_special(q) => Some(q.clone()),
                    _ => None,
                })
                .ok_or(Error::NeedsSpecialQuintic)?;
            let theta = standard_quintic(&[p1(), p2(), q])?;
            if theta.tag() != Tag::Jcirc {
                return Err(Error::Inconsistent("the peeled quintic leaves the pencil".into()));
            }
            theta
        };
        let next = compose(&g, &tau.map().inverse()?);
        if next.degree() >= d {
            return Err(Error::Inconsistent(format!("peeling a factor left degree {}", next.degree())));
        }
        g = next;
        right.push(tau);
    }
}

/// Coordinates of `v` at the given keys.
pub fn project(v: &AbelVector, keys: &[NuKey]) -> Result<Vec<u8>> {
    let distinct: BTreeSet<&NuKey> = keys.iter().collect();
    if distinct.len() != keys.len() {
        return Err(Error::Precondition("keys must be distinct".into()));
    }
    Ok(keys.iter().map(|k| u8::from(v.contains(k))).collect())
}
