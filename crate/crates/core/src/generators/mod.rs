//! Generators of the real plane Cremona group: projectivities, the standard
//! quadratic involutions, quadratic and cubic elements of the conic-pencil
//! group, standard quintics, and membership in the two fibration groups.

pub mod linear;
mod quadratic;
mod quintic;
mod word;

pub use quadratic::{cubic_jcirc, decompose_cubic, deg3_fixing_conic, quadratic_jcirc};
pub use quintic::{alpha_fixing_p1_sending, normalize_to_jcirc, quintic_data, standard_quintic, QuinticData};
pub use word::{Letter, Word};

use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::birmap::{base_points_of, AssignedPoint, BasePoint, BirMap, ProvLetter};
use crate::error::{Error, Result};
use crate::exactalg::parse::parse_map;
use crate::exactalg::{gcd, HomPoly3, Matrix, Rational};
use crate::plane::{pencil_a, pencil_b, ProjPoint};

/// Which factor of the amalgam a letter belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Aut,
    Jstar,
    Jcirc,
    /// Not a letter of the alphabet, e.g. a quintic off the special points.
    Untagged,
}

/// How a generator was built; enough to rebuild it.
#[derive(Clone, Debug, PartialEq)]
pub enum GenKind {
    Sigma0,
    Sigma1Intro,
    Sigma1Jcirc,
    Linear(Matrix<Rational>),
    Quadratic { i: u8, q: ProjPoint },
    Cubic { r: ProjPoint },
    Quintic { q: [ProjPoint; 3] },
    Map,
}

#[derive(Clone, Debug)]
pub struct Generator {
    kind: GenKind,
    map: BirMap,
    tag: Tag,
    jstar: Option<Matrix<Rational>>,
    jcirc: Option<Matrix<Rational>>,
    quintic: Option<QuinticData>,
    points: OnceLock<Result<Vec<AssignedPoint>>>,
    inverse_points: OnceLock<Result<Vec<AssignedPoint>>>,
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.tag == other.tag && self.map == other.map
    }
}

impl Generator {
    /// Wraps a map, checking the tag against the membership tests.
    pub fn from_map(map: BirMap, tag: Tag) -> Result<Self> {
        Self::build(GenKind::Map, map, tag)
    }

    fn build(kind: GenKind, map: BirMap, tag: Tag) -> Result<Self> {
        let jstar = is_in_jstar(&map);
        let jcirc = is_in_jcirc(&map);
        let ok = match tag {
            Tag::Aut => map.degree() == 1,
            Tag::Jstar => jstar.is_some(),
            Tag::Jcirc => jcirc.is_some(),
            Tag::Untagged => true,
        };
        if !ok {
            return Err(Error::Precondition(format!("the map does not belong to {tag:?}")));
        }
        Ok(Generator {
            kind,
            map,
            tag,
            jstar,
            jcirc,
            quintic: None,
            points: OnceLock::new(),
            inverse_points: OnceLock::new(),
        })
    }

    /// Records base points known from the construction.
    fn certify(self, points: Vec<AssignedPoint>) -> Self {
        let _ = self.points.set(Ok(points));
        self
    }

    fn certify_inverse(self, points: Vec<AssignedPoint>) -> Self {
        let _ = self.inverse_points.set(Ok(points));
        self
    }

    /// The same generator under another tag, re-checked.
    pub fn retagged(&self, tag: Tag) -> Result<Self> {
        let mut g = Self::build(self.kind.clone(), self.map.clone(), tag)?;
        g.quintic = self.quintic.clone();
        if let Some(Ok(p)) = self.points.get() {
            g = g.certify(p.clone());
        }
        if let Some(Ok(p)) = self.inverse_points.get() {
            g = g.certify_inverse(p.clone());
        }
        Ok(g)
    }

    pub fn kind(&self) -> &GenKind {
        &self.kind
    }

    pub fn map(&self) -> &BirMap {
        &self.map
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn degree(&self) -> u32 {
        self.map.degree()
    }

    pub fn quintic(&self) -> Option<&QuinticData> {
        self.quintic.as_ref()
    }

    /// Action on the pencil of lines through `[1:0:0]`, if the map preserves it.
    pub fn jstar_action(&self) -> Option<&Matrix<Rational>> {
        self.jstar.as_ref()
    }

    /// Action on the conic pencil, if the map preserves it.
    pub fn jcirc_action(&self) -> Option<&Matrix<Rational>> {
        self.jcirc.as_ref()
    }

    /// The induced action for the generator's own tag.
    pub fn induced_p1(&self) -> Option<&Matrix<Rational>> {
        match self.tag {
            Tag::Jstar => self.jstar.as_ref(),
            Tag::Jcirc => self.jcirc.as_ref(),
            _ => None,
        }
    }

    pub fn base_points(&self) -> Result<&[AssignedPoint]> {
        self.points.get_or_init(|| base_points_of(self.map.forward())).as_deref().map_err(Clone::clone)
    }

    pub fn inverse_base_points(&self) -> Result<&[AssignedPoint]> {
        self.inverse_points
            .get_or_init(|| base_points_of(self.map.inverse_components().ok_or(Error::MissingInverse)?))
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn inverse(&self) -> Result<Generator> {
        let map = self.map.inverse()?;
        let mut g = Generator {
            kind: GenKind::Map,
            map,
            tag: self.tag,
            jstar: self.jstar.as_ref().and_then(Matrix::inverse).map(|m| normalize_2x2(&m)),
            jcirc: self.jcirc.as_ref().and_then(Matrix::inverse).map(|m| normalize_2x2(&m)),
            quintic: self.quintic.as_ref().map(QuinticData::swapped),
            points: OnceLock::new(),
            inverse_points: OnceLock::new(),
        };
        if let Some(Ok(p)) = self.inverse_points.get() {
            g = g.certify(p.clone());
        }
        if let Some(Ok(p)) = self.points.get() {
            g = g.certify_inverse(p.clone());
        }
        Ok(g)
    }
}

fn letter(name: &str) -> Vec<ProvLetter> {
    vec![ProvLetter { name: name.into(), exponent: 1 }]
}

fn involution(src: &str, name: &str) -> BirMap {
    let c = parse_map(src).expect("static map");
    BirMap::new(c.clone(), Some(c), letter(name)).expect("static map")
}

pub(crate) fn proper(p: ProjPoint, mult: u32) -> AssignedPoint {
    AssignedPoint { point: BasePoint::Proper(p), mult }
}

/// `[yz : xz : xy]`.
pub fn sigma0() -> Generator {
    let pts = vec![proper(ProjPoint::real([1, 0, 0]), 1), proper(ProjPoint::real([0, 1, 0]), 1), proper(ProjPoint::real([0, 0, 1]), 1)];
    Generator::build(GenKind::Sigma0, involution("y*z : x*z : x*y", "sigma0"), Tag::Jstar)
        .expect("sigma0 preserves the line pencil")
        .certify(pts.clone())
        .certify_inverse(pts)
}

/// `[xz : yz : x^2 + y^2]`, with base points `p1, conj(p1), [0:0:1]`. It
/// preserves the conic pencil, so it is tagged with that group.
pub fn sigma1_intro() -> Generator {
    let p1 = crate::plane::p1();
    let pts = vec![proper(p1.clone(), 1), proper(p1.conj(), 1), proper(ProjPoint::real([0, 0, 1]), 1)];
    Generator::build(GenKind::Sigma1Intro, involution("x*z : y*z : x^2 + y^2", "sigma1_intro"), Tag::Jcirc)
        .expect("sigma1 preserves the conic pencil")
        .certify(pts.clone())
        .certify_inverse(pts)
}

/// `[y^2 + z^2 : xy : xz]`, with base points `p2, conj(p2), [1:0:0]`.
pub fn sigma1_jcirc() -> Generator {
    let p2 = crate::plane::p2();
    let pts = vec![proper(p2.clone(), 1), proper(p2.conj(), 1), proper(ProjPoint::real([1, 0, 0]), 1)];
    Generator::build(GenKind::Sigma1Jcirc, involution("y^2 + z^2 : x*y : x*z", "sigma1"), Tag::Jcirc)
        .expect("sigma1 preserves the conic pencil")
        .certify(pts.clone())
        .certify_inverse(pts)
}

pub fn linear_map(m: &Matrix<Rational>) -> Result<Generator> {
    let map = BirMap::from_matrix(m, "linear")?;
    Ok(Generator::build(GenKind::Linear(m.clone()), map, Tag::Aut)?.certify(Vec::new()).certify_inverse(Vec::new()))
}

/// Scales a 2x2 matrix so its first nonzero entry is one.
pub fn normalize_2x2(m: &Matrix<Rational>) -> Matrix<Rational> {
    let lead = m.to_rows().into_iter().flatten().find(|v| !v.is_zero()).expect("nonzero matrix");
    m.map(|v| v.clone() / lead.clone())
}

fn linear_in_yz(p: &HomPoly3<Rational>) -> Option<[Rational; 2]> {
    (p.degree() == 1 && p.coeff(&[1, 0, 0]).is_zero()).then(|| [p.coeff(&[0, 1, 0]), p.coeff(&[0, 0, 1])])
}

fn nonsingular(m: Matrix<Rational>) -> Option<Matrix<Rational>> {
    (!m.det().is_zero()).then(|| normalize_2x2(&m))
}

/// The induced action `[y:z] -> M [y:z]` when `f` preserves the pencil of
/// lines through `[1:0:0]`.
pub fn is_in_jstar(f: &BirMap) -> Option<Matrix<Rational>> {
    let c = f.forward();
    if c[1].is_zero() || c[2].is_zero() {
        return None;
    }
    let g = gcd(&c[1], &c[2]);
    let a = linear_in_yz(&c[1].div_exact(&g)?)?;
    let b = linear_in_yz(&c[2].div_exact(&g)?)?;
    nonsingular(Matrix::from_rows(vec![a.to_vec(), b.to_vec()]))
}

/// Coordinates `(l, m)` with `p = l A + m B` for the pencil generators `A, B`.
fn pencil_coords(p: &HomPoly3<Rational>) -> Option<[Rational; 2]> {
    if p.degree() != 2 {
        return None;
    }
    let s = p.coeff(&[2, 0, 0]);
    if !p.coeff(&[1, 1, 0]).is_zero() || !p.coeff(&[0, 1, 1]).is_zero() || p.coeff(&[0, 2, 0]) != s || p.coeff(&[0, 0, 2]) != s {
        return None;
    }
    // A = s + 2xz, B = s - 2xz with s = x^2 + y^2 + z^2
    let half_m = p.coeff(&[1, 0, 1]) / Rational::from_integer(2.into());
    let two = Rational::from_integer(2.into());
    Some([(s.clone() + half_m.clone()) / two.clone(), (s - half_m) / two])
}

/// The induced action `[u:v] -> M [u:v]` on conic pencil values when `f`
/// preserves the pencil.
pub fn is_in_jcirc(f: &BirMap) -> Option<Matrix<Rational>> {
    let a = pencil_a().compose(f.forward());
    let b = pencil_b().compose(f.forward());
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let g = gcd(&a, &b);
    let ra = pencil_coords(&a.div_exact(&g)?)?;
    let rb = pencil_coords(&b.div_exact(&g)?)?;
    nonsingular(Matrix::from_rows(vec![ra.to_vec(), rb.to_vec()]))
}

/// Whether a normalized 2x2 action is `[[0,1],[c,0]]`.
pub fn is_antidiagonal(m: &Matrix<Rational>) -> bool {
    m[(0, 0)].is_zero() && m[(1, 1)].is_zero()
}

/// Whether `m` is the identity or the swap up to a positive scalar.
pub fn is_permutation_up_to_scalar(m: &Matrix<Rational>) -> bool {
    let m = normalize_2x2(m);
    let one = Rational::from_integer(1.into());
    let id = m[(0, 0)] == one && m[(0, 1)].is_zero() && m[(1, 0)].is_zero() && m[(1, 1)] == one;
    let sw = m[(0, 0)].is_zero() && m[(0, 1)] == one && m[(1, 0)] == one && m[(1, 1)].is_zero();
    id || sw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birmap::compose;
    use crate::generators::linear::{flip_matrix, int_matrix, swap_matrix};

    #[test]
    fn quadratic_involutions() {
        for g in [sigma0(), sigma1_intro(), sigma1_jcirc()] {
            assert!(compose(g.map(), g.map()).is_identity());
            assert_eq!(g.degree(), 2);
            let mut computed = base_points_of(g.map().forward()).unwrap();
            let mut certified = g.base_points().unwrap().to_vec();
            let key = |a: &AssignedPoint| a.point.to_string();
            computed.sort_by_key(key);
            certified.sort_by_key(key);
            assert_eq!(computed, certified);
        }
    }

    #[test]
    fn memberships() {
        let s0 = sigma0();
        assert_eq!(s0.jstar_action().unwrap(), &int_matrix2([[0, 1], [1, 0]]));
        assert!(s0.jcirc_action().is_none());
        let s1 = sigma1_jcirc();
        assert_eq!(s1.jstar_action().unwrap(), &int_matrix2([[1, 0], [0, 1]]));
        assert!(s1.jcirc_action().is_some());
        assert!(sigma1_intro().jstar_action().is_none());
        let sw = linear_map(&swap_matrix()).unwrap();
        assert!(sw.jcirc_action().is_some());
        let fl = linear_map(&flip_matrix()).unwrap();
        assert!(is_antidiagonal(fl.jcirc_action().unwrap()));
        let generic = linear_map(&int_matrix([[1, 2, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert!(generic.jcirc_action().is_none());
    }

    fn int_matrix2(r: [[i64; 2]; 2]) -> Matrix<Rational> {
        Matrix::from_rows(r.iter().map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = int_matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(linear_map(&m).unwrap_err(), Error::SingularMatrix);
    }
}
