use serde::{Deserialize, Serialize};

use super::basepoints::{base_points, AssignedPoint, BasePoint};
use super::BirMap;
use crate::error::{Error, Result};
use crate::plane::{is_special, p1, p2};

/// Which of the two fibration-preserving subgroups a map belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subgroup {
    /// Preserves the pencil of lines through `[1:0:0]`.
    JStar,
    /// Preserves the pencil of conics through the four special points.
    JCirc,
}

/// A degree together with assigned multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub degree: u32,
    pub points: Vec<AssignedPoint>,
}

impl LinearSystem {
    pub fn new(degree: u32, points: Vec<AssignedPoint>) -> Result<Self> {
        if degree == 0 || points.iter().any(|p| p.mult == 0) {
            return Err(Error::Precondition("degree and multiplicities must be positive".into()));
        }
        for p in &points {
            if p.point.is_real() {
                continue;
            }
            let c = p.point.conj();
            if !points.iter().any(|q| q.point == c && q.mult == p.mult) {
                return Err(Error::Precondition(format!("{} has no conjugate of equal multiplicity", p.point)));
            }
        }
        Ok(LinearSystem { degree, points })
    }

    /// The homaloidal net of `f`.
    pub fn of_map(f: &BirMap) -> Result<Self> {
        Ok(LinearSystem { degree: f.degree(), points: base_points(f)? })
    }

    pub fn mult_at(&self, q: &BasePoint) -> u32 {
        self.points.iter().filter(|p| &p.point == q).map(|p| p.mult).sum()
    }
}

/// Degree of `f(L)` from the base points of `f`.
pub fn degree_after_with(d: u32, f_points: &[AssignedPoint], l: &LinearSystem) -> i64 {
    let hits: i64 = f_points.iter().map(|p| p.mult as i64 * l.mult_at(&p.point) as i64).sum();
    d as i64 * l.degree as i64 - hits
}

pub fn degree_after(f: &BirMap, l: &LinearSystem) -> Result<i64> {
    Ok(degree_after_with(f.degree(), &base_points(f)?, l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessTag {
    /// `m([1:0:0]) + m(q1) + m(q2)` for a real or conjugate pair of simple points.
    LinePair,
    /// `m(p1) + m(p2) + m(q)` for a double point `q` off the special points.
    DoublePoint,
    /// `2 m(p_i) + m(r)` for the simple point `r`.
    SimplePoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherWitness {
    pub tag: WitnessTag,
    pub points: Vec<BasePoint>,
    pub sum: i64,
    pub bound: i64,
    pub strict: bool,
}

impl NoetherWitness {
    pub fn holds(&self) -> bool {
        if self.strict {
            self.sum > self.bound
        } else {
            self.sum >= self.bound
        }
    }
}

/// Base points of `f` whose `L`-multiplicities beat the degree of `L`,
/// as required when `f` does not raise the degree of `L`.
pub fn noether_witness(f: &BirMap, group: Subgroup, l: &LinearSystem) -> Result<NoetherWitness> {
    let pts = base_points(f)?;
    noether_witness_with(f.degree(), &pts, group, l)
}

pub fn noether_witness_with(d: u32, pts: &[AssignedPoint], group: Subgroup, l: &LinearSystem) -> Result<NoetherWitness> {
    if d <= 1 {
        return Err(Error::Precondition("the map is linear".into()));
    }
    let after = degree_after_with(d, pts, l);
    let bound = l.degree as i64;
    if after > bound {
        return Err(Error::Precondition(format!("the map raises the degree to {after}")));
    }
    let strict = after < bound;
    let m = |q: &BasePoint| l.mult_at(q) as i64;
    let mut candidates = Vec::new();
    match group {
        Subgroup::JStar => {
            let center = BasePoint::Proper(crate::plane::pencil_center());
            let simple: Vec<&AssignedPoint> = pts.iter().filter(|p| p.mult == 1 && p.point != center).collect();
            for (i, a) in simple.iter().enumerate() {
                for b in &simple[i + 1..] {
                    let pair_ok = (a.point.is_real() && b.point.is_real()) || a.point.conj() == b.point;
                    if pair_ok {
                        candidates.push(NoetherWitness {
                            tag: WitnessTag::LinePair,
                            points: vec![center.clone(), a.point.clone(), b.point.clone()],
                            sum: m(&center) + m(&a.point) + m(&b.point),
                            bound,
                            strict,
                        });
                    }
                }
            }
        }
        Subgroup::JCirc => {
            let (s1, s2) = (BasePoint::Proper(p1()), BasePoint::Proper(p2()));
            let special = |q: &BasePoint| q.is_proper() && is_special(q.proper());
            for q in pts.iter().filter(|p| p.mult == 2 && !special(&p.point)) {
                candidates.push(NoetherWitness {
                    tag: WitnessTag::DoublePoint,
                    points: vec![s1.clone(), s2.clone(), q.point.clone()],
                    sum: m(&s1) + m(&s2) + m(&q.point),
                    bound,
                    strict,
                });
            }
            let simple: Vec<&AssignedPoint> = pts.iter().filter(|p| p.mult == 1 && !special(&p.point)).collect();
            if let [r] = simple[..] {
                for s in [&s1, &s2] {
                    let mf = pts.iter().filter(|p| &p.point == s).map(|p| p.mult).sum::<u32>();
                    if 2 * mf == d {
                        candidates.push(NoetherWitness {
                            tag: WitnessTag::SimplePoint,
                            points: vec![s.clone(), r.point.clone()],
                            sum: 2 * m(s) + m(&r.point),
                            bound,
                            strict,
                        });
                    }
                }
            }
        }
    }
    candidates.into_iter().filter(NoetherWitness::holds).max_by_key(|w| w.sum).ok_or(Error::NoWitness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_map;
    use crate::plane::special_points;

    fn assigned(points: &[crate::plane::ProjPoint], mult: u32) -> Vec<AssignedPoint> {
        points.iter().map(|p| AssignedPoint { point: BasePoint::Proper(p.clone()), mult }).collect()
    }

    #[test]
    fn degree_after_examples() {
        let s = BirMap::new(parse_map("y*z:x*z:x*y").unwrap(), None, vec![]).unwrap();
        let line = LinearSystem::new(1, vec![]).unwrap();
        assert_eq!(degree_after(&s, &line).unwrap(), 2);
        let own = LinearSystem::of_map(&s).unwrap();
        assert_eq!(degree_after(&s, &own).unwrap(), 1);
        // a quintic double at the special points applied to a pencil conic
        let conic = LinearSystem::new(2, assigned(&special_points(), 1)).unwrap();
        let mut fp = assigned(&special_points(), 2);
        fp.extend(assigned(&[crate::plane::ProjPoint::from_gauss([(1, 0), (0, 0), (1, 1)])], 2));
        fp.extend(assigned(&[crate::plane::ProjPoint::from_gauss([(1, 0), (0, 0), (1, -1)])], 2));
        assert_eq!(degree_after_with(5, &fp, &conic), 2);
    }

    #[test]
    fn conjugation_stability_is_enforced() {
        let pts = assigned(&[p1()], 1);
        assert!(LinearSystem::new(2, pts).is_err());
    }

    #[test]
    fn witness_for_standard_involution() {
        let s = BirMap::new(parse_map("y*z:x*z:x*y").unwrap(), None, vec![]).unwrap();
        let own = LinearSystem::of_map(&s).unwrap();
        let w = noether_witness(&s, Subgroup::JStar, &own).unwrap();
        assert!(w.strict);
        assert_eq!(w.sum, 3);
        assert_eq!(w.bound, 2);
    }

    #[test]
    fn linear_maps_have_no_witness() {
        let l = LinearSystem::new(1, vec![]).unwrap();
        let r = noether_witness(&BirMap::identity(), Subgroup::JStar, &l);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
