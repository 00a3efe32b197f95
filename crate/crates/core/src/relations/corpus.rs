//! Relation instances built from concrete points, and the shipped corpus.

use serde_json::{json, Value};

use super::{RelKind, RelationInstance};
use crate::birmap::{compose_all, BasePoint};
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Rational};
use crate::generators::linear::{dihedral_elements, int_matrix, real_projectivity};
use crate::generators::{
    alpha_fixing_p1_sending, cubic_jcirc, linear_map, quadratic_jcirc, sigma0, standard_quintic, Generator, Letter, Tag, Word,
};
use crate::plane::{is_special, p1, p2, ProjPoint};

pub const CORPUS_JSON: &str = include_str!("../../corpus/relations.json");

fn lin(m: &Matrix<Rational>) -> Result<Letter> {
    Ok(Letter::new(linear_map(m)?))
}

fn matrix_of(g: &Generator) -> Matrix<Rational> {
    g.map().linear_matrix().expect("a linear generator")
}

/// Non-real points used as the third base point of standard quintics.
pub fn quintic_points() -> Vec<ProjPoint> {
    [
        [(1, 0), (1, 0), (0, 1)],
        [(2, 1), (1, 0), (1, 0)],
        [(1, 0), (2, 0), (0, 1)],
        [(1, 1), (1, 0), (2, 0)],
        [(3, 0), (1, 1), (1, 0)],
        [(1, 2), (1, 0), (1, 0)],
        [(2, 0), (1, 0), (1, 1)],
        [(1, 0), (3, 0), (1, 1)],
        [(1, -1), (2, 0), (1, 0)],
        [(3, 1), (1, 0), (2, 0)],
        [(1, 0), (1, 3), (2, 0)],
        [(2, 1), (3, 0), (1, 0)],
    ]
    .into_iter()
    .map(ProjPoint::from_gauss)
    .collect()
}

/// `d2 theta d1 = theta'` for dihedral `d1, d2` preserving the conic pencil.
pub fn rel1_conjugation(q: &ProjPoint, k1: usize, k2: usize) -> Result<RelationInstance> {
    let theta = standard_quintic(&[p1(), p2(), q.clone()])?;
    let ds = dihedral_elements();
    let (d1, d2) = (linear_map(&ds[k1 % ds.len()])?, linear_map(&ds[k2 % ds.len()])?);
    let moved = compose_all(&[d2.map().clone(), theta.map().clone(), d1.map().clone()]);
    let theta2 = Generator::from_map(moved, Tag::Jcirc)?;
    Ok(RelationInstance {
        kind: RelKind::Rel1,
        label: format!("rel1 dihedral {q} d{k1} d{k2}"),
        lhs: Word::of([d2, theta, d1]),
        rhs: Word::of([theta2]),
    })
}

/// `alpha2 theta alpha1^-1 = theta'` where `alpha1` fixes `p1` and sends the
/// third base point to `p2`, so the base point `p2` is re-assigned.
pub fn rel1_reassignment(q: &ProjPoint) -> Result<RelationInstance> {
    let theta = standard_quintic(&[p1(), p2(), q.clone()])?;
    let r = theta
        .quintic()
        .and_then(|d| d.r.iter().find(|p| !is_special(p)).cloned())
        .ok_or_else(|| Error::Inconsistent("the quintic has no free inverse base point".into()))?;
    let alpha1 = alpha_fixing_p1_sending(q)?;
    let alpha2 = match alpha_fixing_p1_sending(&r) {
        Ok(a) => a,
        Err(_) => linear_map(&real_projectivity(&[p2(), p2().conj(), r.clone(), r.conj()], &[p1(), p1().conj(), p2(), p2().conj()])?)?,
    };
    let moved = compose_all(&[alpha2.map().clone(), theta.map().clone(), alpha1.map().inverse()?]);
    let theta2 = Generator::from_map(moved, Tag::Jcirc)?;
    Ok(RelationInstance {
        kind: RelKind::Rel1,
        label: format!("rel1 reassignment {q}"),
        lhs: Word::new(vec![Letter::new(alpha2), Letter::new(theta), Letter::new(alpha1).inverse()]),
        rhs: Word::of([theta2]),
    })
}

fn real_of(p: &ProjPoint) -> Result<[Rational; 3]> {
    p.real_coords().ok_or_else(|| Error::Precondition(format!("{p} is not real")))
}

/// An invertible matrix whose first column is `v`.
fn with_first_column(v: &[Rational; 3]) -> Result<Matrix<Rational>> {
    let e = |k: usize| -> Vec<Rational> { (0..3).map(|j| Rational::from_integer(i64::from(j == k).into())).collect() };
    for (a, b) in [(1, 2), (0, 2), (0, 1)] {
        let cols = [v.to_vec(), e(a), e(b)];
        let m = Matrix::from_rows((0..3).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
        if m.inverse().is_some() {
            return Ok(m);
        }
    }
    Err(Error::SingularMatrix)
}

fn real_base_point(points: &[crate::birmap::AssignedPoint]) -> Result<ProjPoint> {
    points
        .iter()
        .filter_map(|a| match &a.point {
            BasePoint::Proper(p) if p.is_real() => Some((a.mult, p.clone())),
            _ => None,
        })
        .max_by_key(|(m, _)| *m)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::Inconsistent("no real proper base point".into()))
}

/// `tau alpha1 = beta tau'` with `tau'` in the line-pencil group: `alpha1`
/// sends `[1:0:0]` to the real base point of `tau`, `beta` sends it to the
/// real base point of the inverse.
pub fn rel2_to_jstar(tau: &Generator) -> Result<RelationInstance> {
    let r = real_base_point(tau.base_points()?)?;
    let s = real_base_point(tau.inverse_base_points()?)?;
    let alpha1 = linear_map(&with_first_column(&real_of(&r)?)?)?;
    let beta = linear_map(&with_first_column(&real_of(&s)?)?)?;
    let moved = compose_all(&[beta.map().inverse()?, tau.map().clone(), alpha1.map().clone()]);
    let tau2 = Generator::from_map(moved, Tag::Jstar)?;
    Ok(RelationInstance {
        kind: RelKind::Rel2,
        label: format!("rel2 to line pencil, degree {} at {r}", tau.degree()),
        lhs: Word::of([tau.clone(), alpha1]),
        rhs: Word::of([beta, tau2]),
    })
}

fn helper_points() -> Vec<ProjPoint> {
    [[1, 1, 1], [1, 2, 1], [2, 1, 3], [1, -1, 2], [3, 1, 1]].into_iter().map(ProjPoint::real).collect()
}

/// `tau2 alpha tau1^-1` is linear when `alpha` carries the base points of
/// `tau1` onto those of `tau2`.
pub fn rel2_linear_quotient(i1: u8, q1: &ProjPoint, i2: u8, q2: &ProjPoint) -> Result<RelationInstance> {
    let tau1 = quadratic_jcirc(i1, q1)?;
    let tau2 = quadratic_jcirc(i2, q2)?;
    let special = |i: u8| if i == 1 { p1() } else { p2() };
    let (a, b) = (special(i1), special(i2));
    let hs = helper_points();
    let m = hs
        .iter()
        .filter(|x| *x != q1)
        .flat_map(|x| hs.iter().filter(|y| *y != q2).map(move |y| (x, y)))
        .find_map(|(x, y)| real_projectivity(&[a.clone(), a.conj(), q1.clone(), x.clone()], &[b.clone(), b.conj(), q2.clone(), y.clone()]).ok())
        .ok_or_else(|| Error::DegeneratePosition("no projectivity between the base points".into()))?;
    let alpha = linear_map(&m)?;
    let lhs = Word::new(vec![Letter::new(tau2), Letter::new(alpha), Letter::new(tau1).inverse()]);
    let beta = lhs
        .evaluate()?
        .linear_matrix()
        .ok_or_else(|| Error::Inconsistent("the quotient is not linear".into()))?;
    Ok(RelationInstance { kind: RelKind::Rel2, label: format!("rel2 linear quotient {q1} {q2}"), lhs, rhs: Word::new(vec![lin(&beta)?]) })
}

/// `tau2 alpha tau1^-1 = tau3` in the line-pencil group, with
/// `tau_k = sigma0 B_k` and `alpha = B2^-1 M B1` for `M = [[1,a,b],[0,1,0],[0,0,1]]`.
pub fn rel3(b1: &Matrix<Rational>, b2: &Matrix<Rational>, a: i64, b: i64) -> Result<RelationInstance> {
    let s0 = sigma0();
    let tau = |bk: &Matrix<Rational>| -> Result<Generator> {
        Generator::from_map(compose_all(&[s0.map().clone(), linear_map(bk)?.map().clone()]), Tag::Jstar)
    };
    let (tau1, tau2) = (tau(b1)?, tau(b2)?);
    let m = int_matrix([[1, a, b], [0, 1, 0], [0, 0, 1]]);
    let alpha = b2.inverse().ok_or(Error::SingularMatrix)?.mul(&m).mul(b1);
    let alpha = linear_map(&alpha)?;
    let tau3 = compose_all(&[s0.map().clone(), linear_map(&m)?.map().clone(), s0.map().clone()]);
    let tau3 = Generator::from_map(tau3, Tag::Jstar)?;
    Ok(RelationInstance {
        kind: RelKind::Rel3,
        label: format!("rel3 a={a} b={b}"),
        lhs: Word::new(vec![Letter::new(tau2), Letter::new(alpha), Letter::new(tau1).inverse()]),
        rhs: Word::of([tau3]),
    })
}

/// The same instance with one linear letter nudged, so it no longer holds.
pub fn perturbed(r: &RelationInstance) -> Result<RelationInstance> {
    let mut out = r.clone();
    for letter in out.lhs.0.iter_mut().chain(out.rhs.0.iter_mut()) {
        if letter.gen.degree() == 1 {
            let mut m = matrix_of(&letter.gen);
            m[(0, 1)] = m[(0, 1)].clone() + Rational::from_integer(1.into());
            if m.inverse().is_none() {
                m[(0, 2)] = m[(0, 2)].clone() + Rational::from_integer(1.into());
            }
            letter.gen = linear_map(&m)?;
            out.label = format!("{} perturbed", r.label);
            return Ok(out);
        }
    }
    Err(Error::Precondition("no linear letter to perturb".into()))
}

fn jstar_bases() -> Vec<Matrix<Rational>> {
    vec![
        int_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        int_matrix([[1, 1, 1], [0, 1, 2], [0, 1, 3]]),
        int_matrix([[2, 0, 1], [0, 1, -1], [0, 2, 1]]),
        int_matrix([[1, -1, 0], [0, 3, 1], [0, 1, 1]]),
    ]
}

/// Every instance shipped in the corpus, in a fixed order.
pub fn build_corpus() -> Result<Vec<RelationInstance>> {
    let mut out = Vec::new();
    let qs = quintic_points();
    for (k, q) in qs.iter().take(4).enumerate() {
        out.push(rel1_conjugation(q, 2 * k + 1, 3 * k + 2)?);
    }
    for q in qs.iter().take(6) {
        out.push(rel1_reassignment(q)?);
    }
    for r in [[1, 2, 3], [2, 1, 1]] {
        out.push(rel2_to_jstar(&quadratic_jcirc(1, &ProjPoint::real(r))?)?);
    }
    out.push(rel2_to_jstar(&quadratic_jcirc(2, &ProjPoint::real([1, 3, 2]))?)?);
    for r in [[1, 1, 1], [2, 3, 1], [1, -2, 3]] {
        out.push(rel2_to_jstar(&cubic_jcirc(&ProjPoint::real(r))?)?);
    }
    let pairs = [(1, [1, 2, 3], 1, [2, 1, 1]), (1, [1, 1, 1], 2, [1, 3, 2]), (2, [2, 1, 3], 2, [3, 1, 1])];
    for (i1, q1, i2, q2) in pairs {
        out.push(rel2_linear_quotient(i1, &ProjPoint::real(q1), i2, &ProjPoint::real(q2))?);
    }
    let bases = jstar_bases();
    for (k, (a, b)) in [(1, 0), (0, 1), (1, 2), (-2, 3), (3, -1)].into_iter().enumerate() {
        out.push(rel3(&bases[k % bases.len()], &bases[(k + 1) % bases.len()], a, b)?);
    }
    Ok(out)
}

pub fn corpus_to_json(rs: &[RelationInstance]) -> Value {
    json!({ "instances": rs.iter().map(RelationInstance::to_json).collect::<Vec<_>>() })
}

pub fn corpus_from_json(v: &Value) -> Result<Vec<RelationInstance>> {
    v.get("instances")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("a corpus has an instances array".into()))?
        .iter()
        .map(RelationInstance::from_json)
        .collect()
}

pub fn shipped_corpus() -> Result<Vec<RelationInstance>> {
    corpus_from_json(&serde_json::from_str(CORPUS_JSON).map_err(|e| Error::Parse(e.to_string()))?)
}
