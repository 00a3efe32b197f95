//! Birational maps of the plane with real coefficients: composition,
//! evaluation, images of curves, multiplicities, base points and
//! characteristics.

mod basepoints;
pub mod local;
mod system;

pub use basepoints::{base_points, base_points_of, characteristic, proper_base_points, AssignedPoint, BasePoint, Characteristic};
pub use system::{degree_after, degree_after_with, noether_witness, noether_witness_with, LinearSystem, NoetherWitness, Subgroup, WitnessTag};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::hompoly::joint_integral_factor;
use crate::exactalg::{gcd, gcd_many, GaussRational, HomPoly3, Matrix, Rational};
use crate::plane::ProjPoint;

pub type Components = [HomPoly3<Rational>; 3];

/// One factor in the word a map was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvLetter {
    pub name: String,
    pub exponent: i32,
}

/// A birational map given by its components and, when known, those of its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct BirMap {
    forward: Components,
    inverse: Option<Components>,
    provenance: Vec<ProvLetter>,
}

/// Scales the components to be integral and jointly primitive.
pub fn normalize_components(c: Components) -> Components {
    let f = joint_integral_factor(&c);
    c.map(|p| p.scale(&f))
}

/// Removes the common factor of the components.
pub fn reduce_components(c: Components) -> Components {
    let g = gcd_many(&c);
    let c = if g.degree() > 0 { c.map(|p| p.div_exact(&g).expect("gcd divides")) } else { c };
    normalize_components(c)
}

/// `f(g)` without removing the common factor.
pub fn compose_raw(f: &Components, g: &Components) -> Components {
    [f[0].compose(g), f[1].compose(g), f[2].compose(g)]
}

/// Whether two component triples define the same map.
pub fn components_equal(a: &Components, b: &Components) -> bool {
    (0..3).all(|i| {
        (i + 1..3).all(|j| (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_zero())
    }) && (0..3).all(|i| a[i].is_zero() == b[i].is_zero())
}

pub fn identity_components() -> Components {
    [HomPoly3::var(0), HomPoly3::var(1), HomPoly3::var(2)]
}

pub fn linear_components(m: &Matrix<Rational>) -> Components {
    let row = |i: usize| HomPoly3::linear(m[(i, 0)].clone(), m[(i, 1)].clone(), m[(i, 2)].clone());
    [row(0), row(1), row(2)]
}

impl BirMap {
    pub fn new(forward: Components, inverse: Option<Components>, provenance: Vec<ProvLetter>) -> Result<Self> {
        check_components(&forward)?;
        if let Some(inv) = &inverse {
            check_components(inv)?;
        }
        Ok(BirMap {
            forward: normalize_components(forward),
            inverse: inverse.map(normalize_components),
            provenance,
        })
    }

    pub fn identity() -> Self {
        BirMap { forward: identity_components(), inverse: Some(identity_components()), provenance: Vec::new() }
    }

    /// The projectivity `x -> M x`.
    pub fn from_matrix(m: &Matrix<Rational>, name: &str) -> Result<Self> {
        let inv = m.inverse().ok_or(Error::SingularMatrix)?;
        BirMap::new(
            linear_components(m),
            Some(linear_components(&inv)),
            vec![ProvLetter { name: name.into(), exponent: 1 }],
        )
    }

    pub fn degree(&self) -> u32 {
        self.forward[0].degree()
    }

    pub fn forward(&self) -> &Components {
        &self.forward
    }

    pub fn inverse_components(&self) -> Option<&Components> {
        self.inverse.as_ref()
    }

    pub fn provenance(&self) -> &[ProvLetter] {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: Vec<ProvLetter>) -> Self {
        self.provenance = p;
        self
    }

    pub fn inverse(&self) -> Result<BirMap> {
        let inv = self.inverse.clone().ok_or(Error::MissingInverse)?;
        let provenance = self
            .provenance
            .iter()
            .rev()
            .map(|l| ProvLetter { name: l.name.clone(), exponent: -l.exponent })
            .collect();
        Ok(BirMap { forward: inv, inverse: Some(self.forward.clone()), provenance })
    }

    /// The matrix of a degree-one map.
    pub fn linear_matrix(&self) -> Option<Matrix<Rational>> {
        if self.degree() != 1 {
            return None;
        }
        let rows = self
            .forward
            .iter()
            .map(|p| (0..3).map(|k| {
                let mut e = [0u32; 3];
                e[k] = 1;
                p.coeff(&e)
            }).collect())
            .collect();
        Some(Matrix::from_rows(rows))
    }

    pub fn is_identity(&self) -> bool {
        components_equal(&self.forward, &identity_components())
    }
}

fn check_components(c: &Components) -> Result<()> {
    let d = c[0].degree();
    if c.iter().any(|p| p.degree() != d) {
        return Err(Error::Precondition("components must share one degree".into()));
    }
    if c.iter().all(HomPoly3::is_zero) {
        return Err(Error::Precondition("all components vanish".into()));
    }
    Ok(())
}

/// `f o g`, with the common factor removed.
pub fn compose(f: &BirMap, g: &BirMap) -> BirMap {
    let forward = reduce_components(compose_raw(&f.forward, &g.forward));
    let inverse = match (&g.inverse, &f.inverse) {
        (Some(gi), Some(fi)) => Some(reduce_components(compose_raw(gi, fi))),
        _ => None,
    };
    let mut provenance = f.provenance.clone();
    provenance.extend(g.provenance.iter().cloned());
    BirMap { forward, inverse, provenance }
}

/// Composition of a sequence, leftmost applied last.
pub fn compose_all(maps: &[BirMap]) -> BirMap {
    let mut acc = BirMap::identity();
    for m in maps.iter().rev() {
        acc = compose(m, &acc);
    }
    acc
}

pub fn apply_components(c: &Components, p: &ProjPoint) -> Result<ProjPoint> {
    let v = c.clone().map(|q| q.eval_gauss(p.coords()));
    if v.iter().all(Zero::is_zero) {
        return Err(Error::BasePoint);
    }
    ProjPoint::new(v)
}

pub fn apply(f: &BirMap, p: &ProjPoint) -> Result<ProjPoint> {
    apply_components(&f.forward, p)
}

pub fn maps_equal(f: &BirMap, g: &BirMap) -> bool {
    components_equal(&f.forward, &g.forward)
}

pub fn jacobian<F: crate::exactalg::Field>(c: &[HomPoly3<F>; 3]) -> HomPoly3<F> {
    let d: Vec<Vec<HomPoly3<F>>> = c.iter().map(|p| (0..3).map(|k| p.partial(k)).collect()).collect();
    let minor = |a: usize, b: usize, i: usize, j: usize| d[a][i].clone() * d[b][j].clone() - d[a][j].clone() * d[b][i].clone();
    d[0][0].clone() * minor(1, 2, 1, 2) - d[0][1].clone() * minor(1, 2, 0, 2) + d[0][2].clone() * minor(1, 2, 0, 1)
}

/// Equation of the image of the curve `c = 0`.
pub fn image_of_curve(f: &BirMap, c: &HomPoly3<GaussRational>) -> Result<HomPoly3<GaussRational>> {
    let inv = f.inverse.as_ref().ok_or(Error::MissingInverse)?;
    let inv_g = inv.clone().map(|p| p.to_gauss());
    let mut h = c.compose(&inv_g);
    let jac = jacobian(inv).to_gauss();
    loop {
        let g = gcd(&h, &jac);
        if g.degree() == 0 {
            break;
        }
        h = h.div_exact(&g).expect("gcd divides");
    }
    if h.degree() == 0 {
        return Err(Error::ContractedCurve);
    }
    Ok(h.normalized())
}

/// The map with its inverse filled in. A plane Cremona map and its inverse
/// share the degree, so the inverse components solve the linear system
/// `g_i(f) x_j = g_j(f) x_i`.
pub fn invert(f: &BirMap) -> Result<BirMap> {
    if f.inverse.is_some() {
        return Ok(f.clone());
    }
    let d = f.degree();
    let mons: Vec<[u32; 3]> = (0..=d).flat_map(|a| (0..=d - a).map(move |b| [a, b, d - a - b])).collect();
    let pulled: Vec<HomPoly3<Rational>> = mons
        .iter()
        .map(|e| (0..3).fold(HomPoly3::one(), |acc, k| acc * f.forward[k].pow(e[k])))
        .collect();
    let n = mons.len();
    let mut rows: std::collections::BTreeMap<(usize, [u32; 3]), Vec<Rational>> = std::collections::BTreeMap::new();
    for (eq, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        for (m, p) in pulled.iter().enumerate() {
            for (sign, comp, var) in [(1, i, j), (-1, j, i)] {
                for (e, c) in (p.clone() * HomPoly3::var(var)).terms() {
                    let row = rows.entry((eq, *e)).or_insert_with(|| vec![Rational::zero(); 3 * n]);
                    row[comp * n + m] += c * Rational::from_integer(sign.into());
                }
            }
        }
    }
    let kernel = Matrix::from_rows(rows.into_values().collect()).kernel();
    if kernel.len() != 1 {
        return Err(Error::Precondition(format!("the map is not birational (solution space of dimension {})", kernel.len())));
    }
    let v = &kernel[0];
    let comp = |k: usize| HomPoly3::from_terms(d, mons.iter().enumerate().map(|(m, e)| (*e, v[k * n + m].clone())));
    let inverse = [comp(0), comp(1), comp(2)];
    check_components(&inverse)?;
    let candidate = BirMap { forward: f.forward.clone(), inverse: Some(normalize_components(inverse)), provenance: f.provenance.clone() };
    if !compose(&candidate.inverse()?, &candidate).is_identity() {
        return Err(Error::Precondition("the map is not birational".into()));
    }
    Ok(candidate)
}

/// Multiplicity of a general member of the net at the proper point `q`.
pub fn multiplicity_at(c: &Components, q: &ProjPoint) -> u32 {
    c.iter()
        .filter(|p| !p.is_zero())
        .map(|p| local::localize(p, q).0.order().unwrap_or(u32::MAX))
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::{parse_hom, parse_map};

    fn map(s: &str, inv: &str) -> BirMap {
        BirMap::new(parse_map(s).unwrap(), Some(parse_map(inv).unwrap()), vec![]).unwrap()
    }

    #[test]
    fn inverses_are_solved_for() {
        let f = BirMap::new(parse_map("x*z + y^2 : y*z : z^2").unwrap(), None, vec![]).unwrap();
        let g = invert(&f).unwrap();
        assert!(compose(&g.inverse().unwrap(), &f).is_identity());
        let s = BirMap::new(parse_map("y*z:x*z:x*y").unwrap(), None, vec![]).unwrap();
        assert!(maps_equal(&invert(&s).unwrap().inverse().unwrap(), &s));
        let not = BirMap::new(parse_map("x^2:y^2:z^2").unwrap(), None, vec![]).unwrap();
        assert!(invert(&not).is_err());
    }

    #[test]
    fn standard_involution_squares_to_identity() {
        let s = map("y*z:x*z:x*y", "y*z:x*z:x*y");
        let ss = compose(&s, &s);
        assert!(ss.is_identity());
        assert_eq!(ss.degree(), 1);
    }

    #[test]
    fn apply_and_base_point_error() {
        let s = map("y*z:x*z:x*y", "y*z:x*z:x*y");
        assert_eq!(apply(&s, &ProjPoint::real([1, 2, 3])).unwrap(), ProjPoint::real([6, 3, 2]));
        assert_eq!(apply(&s, &ProjPoint::real([1, 0, 0])), Err(Error::BasePoint));
    }

    #[test]
    fn images_of_lines() {
        let s = map("y*z:x*z:x*y", "y*z:x*z:x*y");
        let line = parse_hom("x + y + z").unwrap();
        let img = image_of_curve(&s, &line).unwrap();
        assert_eq!(img, parse_hom("x*y + x*z + y*z").unwrap());
        let contracted = parse_hom("x").unwrap();
        assert_eq!(image_of_curve(&s, &contracted), Err(Error::ContractedCurve));
    }

    #[test]
    fn multiplicity_examples() {
        let c = parse_map("y*z:x*z:x*y").unwrap();
        assert_eq!(multiplicity_at(&c, &ProjPoint::real([0, 1, 0])), 1);
        assert_eq!(multiplicity_at(&c, &ProjPoint::real([1, 1, 1])), 0);
        let cubic = parse_map("x^3 : x*y*z : y^2*z").unwrap();
        assert_eq!(multiplicity_at(&cubic, &ProjPoint::real([0, 0, 1])), 2);
    }

    #[test]
    fn linear_maps_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Rational::from_integer(0.into()), Rational::from_integer(0.into()), Rational::from_integer(1.into())],
            vec![Rational::from_integer(0.into()), Rational::from_integer((-1).into()), Rational::from_integer(0.into())],
            vec![Rational::from_integer(1.into()), Rational::from_integer(0.into()), Rational::from_integer(0.into())],
        ]);
        let f = BirMap::from_matrix(&m, "swap").unwrap();
        assert!(compose(&f, &f).is_identity());
        assert_eq!(f.linear_matrix().unwrap(), m);
    }
}
