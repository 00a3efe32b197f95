use std::fmt;

use num_traits::{One, Zero};

use super::local::{common_directions, localize, LocalPoly};
use super::{multiplicity_at, BirMap, Components};
use crate::error::{Error, Result};
use crate::exactalg::gcd::interpolate;
use crate::exactalg::matrix::cross;
use crate::exactalg::roots::gaussian_roots;
use crate::exactalg::{Field, GaussRational, HomPoly3, Matrix, Rational, UniPoly};
use crate::plane::{ProjPoint, TangentDirection};

/// A proper point of the plane or a point infinitely near one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasePoint {
    Proper(ProjPoint),
    Infinitesimal(TangentDirection),
}

impl BasePoint {
    pub fn conj(&self) -> Self {
        match self {
            BasePoint::Proper(p) => BasePoint::Proper(p.conj()),
            BasePoint::Infinitesimal(t) => BasePoint::Infinitesimal(t.conj()),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            BasePoint::Proper(p) => p.is_real(),
            BasePoint::Infinitesimal(t) => t.is_real(),
        }
    }

    /// The proper point this one lies on or over.
    pub fn proper(&self) -> &ProjPoint {
        match self {
            BasePoint::Proper(p) => p,
            BasePoint::Infinitesimal(t) => t.base(),
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self, BasePoint::Proper(_))
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Proper(p) => p.fmt(f),
            BasePoint::Infinitesimal(t) => write!(f, "near {t}"),
        }
    }
}

/// A point with a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssignedPoint {
    pub point: BasePoint,
    pub mult: u32,
}

/// `(d; m_1, m_2, ...)` with multiplicities in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characteristic {
    pub degree: u32,
    pub mults: Vec<u32>,
}

impl Characteristic {
    pub fn satisfies_noether(&self) -> bool {
        let d = self.degree as i64;
        let s1: i64 = self.mults.iter().map(|&m| m as i64).sum();
        let s2: i64 = self.mults.iter().map(|&m| (m as i64) * (m as i64)).sum();
        s1 == 3 * (d - 1) && s2 == d * d - 1
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.mults.iter().map(u32::to_string).collect();
        write!(f, "({}; {})", self.degree, ms.join(", "))
    }
}

/// Changes of coordinates tried in turn until the projection from `[1:0:0]`
/// separates the base points.
fn coordinate_changes() -> impl Iterator<Item = Matrix<Rational>> {
    const ENTRIES: [[i64; 9]; 8] = [
        [1, 2, -1, 3, 1, 2, -2, 1, 1],
        [2, -1, 3, 1, 3, -2, 1, 1, 4],
        [1, 3, 2, -2, 1, 5, 3, -1, 1],
        [3, 1, -2, 2, -3, 1, 1, 4, 2],
        [1, -2, 5, 4, 1, -1, 2, 3, -3],
        [5, 2, 1, -1, 4, 3, 2, -3, 1],
        [2, 5, -3, 1, -1, 4, 3, 2, 5],
        [4, -3, 2, 5, 2, -1, -1, 3, 3],
    ];
    ENTRIES.into_iter().filter_map(|e| {
        let m = Matrix::from_rows((0..3).map(|i| (0..3).map(|j| Rational::from_integer(e[3 * i + j].into())).collect()).collect());
        (!m.det().is_zero()).then_some(m)
    })
}

fn substitute_linear(c: &Components, t: &Matrix<Rational>) -> Components {
    let lin = super::linear_components(t);
    super::compose_raw(c, &lin)
}

fn combo(c: &Components, w: [i64; 3]) -> HomPoly3<Rational> {
    (0..3).fold(HomPoly3::zero(c[0].degree()), |acc, k| acc + c[k].scale(&Rational::from_integer(w[k].into())))
}

/// `p(x, y0, 1)` as a polynomial in `x`.
fn slice_at<F: Field>(p: &HomPoly3<Rational>, y0: &F) -> UniPoly<F> {
    let mut coeffs = vec![F::zero(); p.degree() as usize + 1];
    for (e, c) in p.terms() {
        let mut v = F::from_rational(c.clone());
        for _ in 0..e[1] {
            v = v * y0.clone();
        }
        coeffs[e[0] as usize] = coeffs[e[0] as usize].clone() + v;
    }
    UniPoly::new(coeffs)
}

/// `Res_x(a(x, y, 1), b(x, y, 1))` as a polynomial in `y`.
fn resultant_in_y(a: &HomPoly3<Rational>, b: &HomPoly3<Rational>) -> UniPoly<Rational> {
    let n = (a.degree() * b.degree()) as usize + 1;
    let xs: Vec<Rational> = (0..n as i64).map(|k| Rational::from_integer((k - n as i64 / 2).into())).collect();
    let ys: Vec<Rational> = xs.iter().map(|y0| slice_at(a, y0).resultant(&slice_at(b, y0))).collect();
    interpolate(&xs, &ys)
}

enum Attempt {
    Found(Vec<ProjPoint>),
    Retry,
}

fn try_projection(c: &Components, t: &Matrix<Rational>) -> Result<Attempt> {
    let g = substitute_linear(c, t);
    let d = g[0].degree();
    let h = [combo(&g, [1, 2, 3]), combo(&g, [1, -1, 5]), combo(&g, [3, 1, -2])];
    // The projection must be finite: [1:0:0] on none of the combinations.
    if h.iter().any(|p| p.coeff(&[d, 0, 0]).is_zero()) {
        return Ok(Attempt::Retry);
    }
    // No base point on z = 0.
    let at_infinity: Vec<UniPoly<Rational>> = g
        .iter()
        .map(|p| {
            let mut v = vec![Rational::zero(); d as usize + 1];
            for (e, coef) in p.terms() {
                if e[2] == 0 {
                    v[e[0] as usize] = coef.clone();
                }
            }
            UniPoly::new(v)
        })
        .collect();
    let g_inf = at_infinity.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
    if g_inf.degree().unwrap_or(0) > 0 {
        return Ok(Attempt::Retry);
    }
    let r1 = resultant_in_y(&h[0], &h[1]);
    let r2 = resultant_in_y(&h[0], &h[2]);
    let r3 = resultant_in_y(&h[1], &h[2]);
    if r1.is_zero() || r2.is_zero() || r3.is_zero() {
        return Ok(Attempt::Retry);
    }
    let r = r1.gcd(&r2).gcd(&r3);
    if r.degree().unwrap_or(0) == 0 {
        return Ok(Attempt::Found(Vec::new()));
    }
    let (ys, unresolved) = gaussian_roots(&r);
    let mut pts = Vec::new();
    for y0 in &ys {
        let mut gx: UniPoly<GaussRational> = UniPoly::zero();
        for p in &g {
            gx = gx.gcd(&slice_at(p, y0));
        }
        // double points make the slices share a square
        let gx = if gx.is_zero() { gx } else { gx.squarefree_part() };
        match gx.degree() {
            Some(0) | None => continue,
            Some(1) => {
                let x0 = -gx.coeff(0);
                let local = [x0, y0.clone(), GaussRational::one()];
                let tg = t.map(|r| GaussRational::from_rational(r.clone()));
                let v = tg.mul_vec(&local);
                pts.push(ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()])?);
            }
            Some(_) => return Ok(Attempt::Retry),
        }
    }
    if unresolved > 0 {
        return Err(Error::NonQiBasePoint);
    }
    Ok(Attempt::Found(pts))
}

/// Proper base points of the net spanned by the components.
pub fn proper_base_points(c: &Components) -> Result<Vec<ProjPoint>> {
    if c[0].degree() <= 1 {
        return Ok(Vec::new());
    }
    let mut last_err = None;
    for t in coordinate_changes() {
        match try_projection(c, &t) {
            Ok(Attempt::Found(p)) => return Ok(p),
            Ok(Attempt::Retry) => {}
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::DegeneratePosition("no separating projection found".into())))
}

/// Strict transforms of the local equations at a direction `(alpha, beta)`
/// after blowing up a point of multiplicity `m`.
fn strict_transforms(locals: &[LocalPoly], m: u32, alpha: &GaussRational, beta: &GaussRational) -> Vec<LocalPoly> {
    let (gamma, delta) = if alpha.is_zero() {
        (GaussRational::one(), GaussRational::zero())
    } else {
        (GaussRational::zero(), GaussRational::one())
    };
    let lu = LocalPoly::linear(alpha.clone(), gamma);
    let lv = LocalPoly::linear(beta.clone(), delta);
    locals.iter().map(|p| p.substitute(&lu, &lv).blow_up(m)).collect()
}

fn min_order(ps: &[LocalPoly]) -> u32 {
    ps.iter().filter_map(LocalPoly::order).min().unwrap_or(u32::MAX)
}

/// Base points in the first neighbourhood of the proper point `q`.
fn infinitesimal_base_points(c: &Components, q: &ProjPoint, m: u32) -> Result<Vec<AssignedPoint>> {
    let mut locals = Vec::new();
    let mut idx = [0, 0];
    for p in c.iter().filter(|p| !p.is_zero()) {
        let (l, i) = localize(p, q);
        locals.push(l);
        idx = i;
    }
    let forms: Vec<Vec<GaussRational>> = locals.iter().map(|l| l.form(m)).collect();
    let (dirs, unresolved) = common_directions(&forms);
    if unresolved > 0 {
        return Err(Error::NonQiBasePoint);
    }
    let mut out = Vec::new();
    for (alpha, beta) in dirs {
        let st = strict_transforms(&locals, m, &alpha, &beta);
        let m1 = min_order(&st);
        if m1 == 0 || m1 == u32::MAX {
            continue;
        }
        let deeper: Vec<Vec<GaussRational>> = st.iter().map(|l| l.form(m1)).collect();
        let (more, more_unresolved) = common_directions(&deeper);
        let mut w = [GaussRational::zero(), GaussRational::zero(), GaussRational::zero()];
        w[idx[0]] = alpha.clone();
        w[idx[1]] = beta.clone();
        let dir = TangentDirection::new(q.clone(), cross(q.coords(), &w))?;
        if !more.is_empty() || more_unresolved > 0 {
            return Err(Error::DeepTower(format!("a base point lies beyond {dir}")));
        }
        out.push(AssignedPoint { point: BasePoint::Infinitesimal(dir), mult: m1 });
    }
    Ok(out)
}

/// Proper base points and those in their first neighbourhoods, with multiplicities.
pub fn base_points(f: &BirMap) -> Result<Vec<AssignedPoint>> {
    base_points_of(f.forward())
}

pub fn base_points_of(c: &Components) -> Result<Vec<AssignedPoint>> {
    let mut out = Vec::new();
    for q in proper_base_points(c)? {
        let m = multiplicity_at(c, &q);
        let near = infinitesimal_base_points(c, &q, m)?;
        out.push(AssignedPoint { point: BasePoint::Proper(q), mult: m });
        out.extend(near);
    }
    Ok(out)
}

pub fn characteristic(f: &BirMap) -> Result<Characteristic> {
    let mut mults: Vec<u32> = base_points(f)?.iter().map(|p| p.mult).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    let ch = Characteristic { degree: f.degree(), mults };
    if !ch.satisfies_noether() {
        return Err(Error::DeepTower(format!("{ch} violates the Noether equalities")));
    }
    Ok(ch)
}
