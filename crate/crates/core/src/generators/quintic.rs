use num_traits::Zero;

use super::linear::{apply_matrix, real_projectivity};
use super::{proper, GenKind, Generator, Tag};
use crate::birmap::{apply_components, compose_raw, components_equal, identity_components, linear_components, reduce_components, BirMap, Components, ProvLetter};
use crate::error::{Error, Result};
use crate::exactalg::{Field, GaussRational, HomPoly3, Matrix, Rational};
use crate::plane::{conic_through, is_special, p1, p2, ConicConstraint, ProjPoint};

/// Base-point pairs of a standard quintic and of its inverse: the conic
/// through the five base points other than `q[i]` is contracted to `r[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuinticData {
    pub q: [ProjPoint; 3],
    pub r: [ProjPoint; 3],
}

impl QuinticData {
    pub fn swapped(&self) -> Self {
        QuinticData { q: self.r.clone(), r: self.q.clone() }
    }
}

fn monomials(d: u32) -> Vec<[u32; 3]> {
    (0..=d).rev().flat_map(|a| (0..=d - a).rev().map(move |b| [a, b, d - a - b])).collect()
}

fn pow(x: &GaussRational, k: u32) -> GaussRational {
    (0..k).fold(GaussRational::from_int(1), |acc, _| acc * x.clone())
}

fn monomial_partial(e: &[u32; 3], k: usize, p: &[GaussRational; 3]) -> GaussRational {
    if e[k] == 0 {
        return GaussRational::zero();
    }
    let mut d = *e;
    d[k] -= 1;
    let c = GaussRational::from_int(e[k] as i64);
    c * pow(&p[0], d[0]) * pow(&p[1], d[1]) * pow(&p[2], d[2])
}

/// Real quintics singular at `q, conj(q)` for each `q` in `pairs`.
fn double_point_net(pairs: &[ProjPoint; 3]) -> Vec<HomPoly3<Rational>> {
    let mons = monomials(5);
    let mut rows = Vec::new();
    for q in pairs {
        for k in 0..3 {
            let vals: Vec<GaussRational> = mons.iter().map(|e| monomial_partial(e, k, q.coords())).collect();
            rows.push(vals.iter().map(|v| v.re.clone()).collect());
            rows.push(vals.iter().map(|v| v.im.clone()).collect());
        }
    }
    Matrix::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|v| HomPoly3::from_terms(5, mons.iter().copied().zip(v)))
        .collect()
}

fn on_common_conic(pts: &[ProjPoint]) -> bool {
    let mons = monomials(2);
    let rows = pts
        .iter()
        .map(|p| mons.iter().map(|e| pow(&p.coords()[0], e[0]) * pow(&p.coords()[1], e[1]) * pow(&p.coords()[2], e[2])).collect())
        .collect();
    Matrix::<GaussRational>::from_rows(rows).det().is_zero()
}

fn sample_directions() -> impl Iterator<Item = [GaussRational; 3]> {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3], [3, -1, 2], [2, 5, -1]].into_iter().map(|c| c.map(GaussRational::from_int))
}

/// Image of the conic through `five`, which `c` contracts; `start` is one of
/// the five.
fn contracted_image(c: &Components, five: &[ProjPoint], start: &ProjPoint) -> Result<ProjPoint> {
    let constraints: Vec<ConicConstraint> = five.iter().cloned().map(ConicConstraint::Point).collect();
    let conic = conic_through(&constraints)?;
    let s = start.coords();
    for w in sample_directions() {
        let k = conic.poly().eval_gauss(&w);
        if k.is_zero() {
            continue;
        }
        let t = -(GaussRational::from_int(2) * conic.bilinear(s, &w)) / k;
        let pt = [0, 1, 2].map(|i| s[i].clone() + t.clone() * w[i].clone());
        let Ok(pt) = ProjPoint::new(pt) else { continue };
        if five.contains(&pt) {
            continue;
        }
        if let Ok(img) = apply_components(c, &pt) {
            return Ok(img);
        }
    }
    Err(Error::Inconsistent("could not sample the contracted conic".into()))
}

fn image_points(c: &Components, q: &[ProjPoint; 3]) -> Result<[ProjPoint; 3]> {
    let all: Vec<ProjPoint> = q.iter().flat_map(|p| [p.clone(), p.conj()]).collect();
    let mut out = Vec::new();
    for qi in q {
        let five: Vec<ProjPoint> = all.iter().filter(|p| *p != qi).cloned().collect();
        out.push(contracted_image(c, &five, &qi.conj())?);
    }
    Ok(out.try_into().expect("three points"))
}

fn real_frame_points() -> Vec<ProjPoint> {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 1], [3, 1, -2], [1, -3, 2]].into_iter().map(ProjPoint::real).collect()
}

/// Completes the inverse net `g` to an inverse of `f` by a projectivity.
fn align_inverse(f: &Components, g: &Components) -> Result<Components> {
    let pts = real_frame_points();
    let mut images = Vec::new();
    for p in &pts {
        if let Ok(img) = apply_components(f, p).and_then(|fp| apply_components(g, &fp)) {
            images.push((p.clone(), img));
        }
    }
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            for c in b + 1..images.len() {
                for d in c + 1..images.len() {
                    let idx = [a, b, c, d];
                    let src = idx.map(|i| images[i].1.clone());
                    let dst = idx.map(|i| images[i].0.clone());
                    if let Ok(l) = real_projectivity(&src, &dst) {
                        let inv = compose_raw(&linear_components(&l), g);
                        if components_equal(&compose_raw(&inv, f), &identity_components()) {
                            return Ok(inv);
                        }
                    }
                }
            }
        }
    }
    Err(Error::Inconsistent("the inverse net does not invert the quintic".into()))
}

/// The standard quintic with double points at `q_i, conj(q_i)`.
pub fn standard_quintic(q: &[ProjPoint; 3]) -> Result<Generator> {
    if q.iter().any(ProjPoint::is_real) {
        return Err(Error::Precondition("the base points must be non-real".into()));
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j && (q[i] == q[j] || q[i] == q[j].conj()) {
                return Err(Error::ConjugatePair);
            }
        }
    }
    let six: Vec<ProjPoint> = q.iter().flat_map(|p| [p.clone(), p.conj()]).collect();
    if on_common_conic(&six) {
        return Err(Error::OnConic);
    }
    let net = double_point_net(q);
    if net.len() != 3 {
        return Err(Error::NetDegenerate(net.len()));
    }
    let forward = reduce_components(net.try_into().expect("three"));
    if forward[0].degree() != 5 {
        return Err(Error::NetDegenerate(3));
    }
    let r = image_points(&forward, q)?;
    let inv_net = double_point_net(&r);
    if inv_net.len() != 3 {
        return Err(Error::Inconsistent(format!("the inverse net has dimension {}", inv_net.len())));
    }
    let inverse = align_inverse(&forward, &inv_net.try_into().expect("three"))?;
    let mut data = QuinticData { q: q.clone(), r };
    let (mut forward, mut inverse) = (forward, inverse);
    let specials: Vec<usize> = (0..3).filter(|&i| is_special(&data.q[i])).collect();
    let both_pairs = |i: usize, j: usize| {
        let pair = |p: &ProjPoint| usize::from(*p == p2() || *p == p2().conj());
        pair(&data.q[i]) != pair(&data.q[j])
    };
    let mut tag = Tag::Untagged;
    if let [i, j, ..] = specials[..] {
        if both_pairs(i, j) {
            let src = [data.r[i].clone(), data.r[i].conj(), data.r[j].clone(), data.r[j].conj()];
            let dst = [data.q[i].clone(), data.q[i].conj(), data.q[j].clone(), data.q[j].conj()];
            let beta = real_projectivity(&src, &dst)?;
            let beta_inv = beta.inverse().expect("projectivity");
            forward = compose_raw(&linear_components(&beta), &forward);
            inverse = compose_raw(&inverse, &linear_components(&beta_inv));
            data.r = data.r.clone().map(|p| apply_matrix(&beta, &p));
            tag = Tag::Jcirc;
        }
    }
    let map = BirMap::new(forward, Some(inverse), vec![ProvLetter { name: "quintic".into(), exponent: 1 }])?;
    let mut g = Generator::build(GenKind::Quintic { q: q.clone() }, map, tag)?;
    g.quintic = Some(data.clone());
    Ok(g.certify(six.into_iter().map(|p| proper(p, 2)).collect())
        .certify_inverse(data.r.iter().flat_map(|p| [proper(p.clone(), 2), proper(p.conj(), 2)]).collect()))
}

/// Pairs recovered from the base points when `theta` was not built by
/// [`standard_quintic`].
pub fn quintic_data(theta: &Generator) -> Result<QuinticData> {
    if let Some(d) = theta.quintic() {
        return Ok(d.clone());
    }
    if theta.degree() != 5 {
        return Err(Error::Precondition("not a quintic".into()));
    }
    let reps = |pts: &[crate::birmap::AssignedPoint]| -> Result<[ProjPoint; 3]> {
        let mut out: Vec<ProjPoint> = Vec::new();
        for a in pts {
            if a.mult != 2 {
                return Err(Error::Precondition("not a standard quintic".into()));
            }
            let p = match &a.point {
                crate::birmap::BasePoint::Proper(p) => p.clone(),
                crate::birmap::BasePoint::Infinitesimal(t) => return Err(Error::DeepTower(format!("a double point near {}", t.base()))),
            };
            if !p.is_real() && !out.contains(&p.conj()) && !out.contains(&p) {
                out.push(p);
            }
        }
        out.try_into().map_err(|_| Error::Precondition("not a standard quintic".into()))
    };
    let q = reps(theta.base_points()?)?;
    let r_pts = reps(theta.inverse_base_points()?)?;
    let r = image_points(theta.map().forward(), &q)?;
    // the images are determined up to conjugation by the inverse's pairs
    for p in &r {
        if !r_pts.contains(p) && !r_pts.contains(&p.conj()) {
            return Err(Error::Inconsistent(format!("{p} is not a base point of the inverse")));
        }
    }
    Ok(QuinticData { q, r })
}

/// Real projectivities `alpha, beta` with `beta theta alpha` in the
/// conic-pencil group: `alpha` moves `p1, p2` onto two base points of
/// `theta`, `beta` moves the matching base points of the inverse back.
pub fn normalize_to_jcirc(theta: &Generator) -> Result<(Generator, Generator, Generator)> {
    let data = quintic_data(theta)?;
    let pair = |pts: &[ProjPoint; 3]| [pts[0].clone(), pts[0].conj(), pts[1].clone(), pts[1].conj()];
    let targets = [p1(), p1().conj(), p2(), p2().conj()];
    let alpha = real_projectivity(&targets, &pair(&data.q))?;
    let beta = real_projectivity(&pair(&data.r), &targets)?;
    let a = super::linear_map(&alpha)?;
    let b = super::linear_map(&beta)?;
    let map = crate::birmap::compose_all(&[b.map().clone(), theta.map().clone(), a.map().clone()]);
    let alpha_inv = alpha.inverse().expect("projectivity");
    let q = [p1(), p2(), apply_matrix(&alpha_inv, &data.q[2])];
    let r = [p1(), p2(), apply_matrix(&beta, &data.r[2])];
    let mut t = Generator::build(GenKind::Map, map, Tag::Jcirc)?;
    let six = q.iter().flat_map(|p| [proper(p.clone(), 2), proper(p.conj(), 2)]).collect();
    let six_inv = r.iter().flat_map(|p| [proper(p.clone(), 2), proper(p.conj(), 2)]).collect();
    t.quintic = Some(QuinticData { q, r });
    Ok((a, b, t.certify(six).certify_inverse(six_inv)))
}

/// A real projectivity fixing `p1` and sending `q` to `p2`.
pub fn alpha_fixing_p1_sending(q: &ProjPoint) -> Result<Generator> {
    if q.is_real() {
        return Err(Error::Precondition("q must be non-real".into()));
    }
    let m = real_projectivity(&[p1(), p1().conj(), q.clone(), q.conj()], &[p1(), p1().conj(), p2(), p2().conj()])?;
    super::linear_map(&m)
}
