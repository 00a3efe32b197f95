//! Points, lines and conics of the projective plane over `Q(i)`, the
//! projection `pi_star` from `[1:0:0]` and the conic fibration `pi_circ`
//! through `p1, conj(p1), p2, conj(p2)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::matrix::{cross, dot};
use crate::exactalg::parse::parse_scalar;
use crate::exactalg::scalar::{fmt_gauss, fmt_rational, gi, int, norm_sq};
use crate::exactalg::{Field, GaussRational, HomPoly3, Matrix, Rational};

pub type Coords = [GaussRational; 3];

/// A point of `P^2(Q(i))`, scaled so its first nonzero coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint(Coords);

impl ProjPoint {
    pub fn new(c: Coords) -> Result<Self> {
        let k = c
            .iter()
            .position(|v| !v.is_zero())
            .ok_or_else(|| Error::Precondition("the zero vector is not a point".into()))?;
        let inv = GaussRational::one() / c[k].clone();
        Ok(ProjPoint(c.map(|v| v * inv.clone())))
    }

    /// Panics on the zero vector.
    pub fn from_gauss(re_im: [(i64, i64); 3]) -> Self {
        Self::new(re_im.map(|(a, b)| gi(a, b))).expect("nonzero point")
    }

    pub fn real(c: [i64; 3]) -> Self {
        Self::new(c.map(|a| gi(a, 0))).expect("nonzero point")
    }

    pub fn from_rational(c: [Rational; 3]) -> Result<Self> {
        Self::new(c.map(GaussRational::from_rational))
    }

    pub fn coords(&self) -> &Coords {
        &self.0
    }

    pub fn conj(&self) -> Self {
        ProjPoint(self.0.clone().map(|v| v.conj()))
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|v| v.im.is_zero())
    }

    pub fn real_coords(&self) -> Option<[Rational; 3]> {
        self.is_real().then(|| self.0.clone().map(|v| v.re))
    }

    /// Index of the first nonzero coordinate (which equals one).
    pub fn chart(&self) -> usize {
        self.0.iter().position(|v| !v.is_zero()).unwrap()
    }

    /// Parses `[1, i, 0]` or `1 : i : 0`.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim().trim_start_matches('[').trim_end_matches(']');
        let sep = if s.contains(':') { ':' } else { ',' };
        let parts: Vec<&str> = s.split(sep).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("'{src}' is not a point with three coordinates")));
        }
        let c: Vec<GaussRational> =
            parts.iter().map(|p| parse_scalar(p.trim())).collect::<std::result::Result<_, _>>()?;
        Self::new([c[0].clone(), c[1].clone(), c[2].clone()])
    }

    pub fn to_strings(&self) -> [String; 3] {
        self.0.clone().map(|v| fmt_gauss(&v))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.to_strings();
        write!(f, "[{a}:{b}:{c}]")
    }
}

pub fn p1() -> ProjPoint {
    ProjPoint::from_gauss([(1, 0), (0, 1), (0, 0)])
}

pub fn p2() -> ProjPoint {
    ProjPoint::from_gauss([(0, 0), (1, 0), (0, 1)])
}

/// `p1, conj(p1), p2, conj(p2)`.
pub fn special_points() -> [ProjPoint; 4] {
    [p1(), p1().conj(), p2(), p2().conj()]
}

pub fn is_special(q: &ProjPoint) -> bool {
    special_points().contains(q)
}

/// Center of the pencil of lines.
pub fn pencil_center() -> ProjPoint {
    ProjPoint::real([1, 0, 0])
}

/// A point of `P^1`, stored as `[u:1]` or `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P1Point {
    u: GaussRational,
    v: GaussRational,
}

pub type PencilValue = P1Point;

impl P1Point {
    pub fn new(u: GaussRational, v: GaussRational) -> Result<Self> {
        if v.is_zero() {
            if u.is_zero() {
                return Err(Error::Precondition("[0:0] is not a point of P^1".into()));
            }
            return Ok(P1Point { u: GaussRational::one(), v: GaussRational::zero() });
        }
        Ok(P1Point { u: u / v, v: GaussRational::one() })
    }

    pub fn real(u: i64, v: i64) -> Self {
        Self::new(gi(u, 0), gi(v, 0)).expect("nonzero")
    }

    pub fn u(&self) -> &GaussRational {
        &self.u
    }

    pub fn v(&self) -> &GaussRational {
        &self.v
    }

    /// `u / v`, or `None` at infinity.
    pub fn affine(&self) -> Option<GaussRational> {
        (!self.v.is_zero()).then(|| self.u.clone())
    }

    pub fn is_real(&self) -> bool {
        self.u.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        P1Point { u: self.u.conj(), v: self.v.clone() }
    }

    /// Image under a 2x2 matrix acting on column vectors.
    pub fn apply(&self, m: &Matrix<Rational>) -> Result<Self> {
        let g = |r: &Rational| GaussRational::from_rational(r.clone());
        Self::new(
            g(&m[(0, 0)]) * self.u.clone() + g(&m[(0, 1)]) * self.v.clone(),
            g(&m[(1, 0)]) * self.u.clone() + g(&m[(1, 1)]) * self.v.clone(),
        )
    }

    pub fn to_strings(&self) -> [String; 2] {
        [fmt_gauss(&self.u), fmt_gauss(&self.v)]
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.to_strings();
        write!(f, "[{a}:{b}]")
    }
}

/// `[x:y:z] -> [y:z]`.
pub fn pi_star(p: &ProjPoint) -> Result<P1Point> {
    let c = p.coords();
    P1Point::new(c[1].clone(), c[2].clone()).map_err(|_| Error::BasePointOfFibration)
}

/// `y^2 + (x + z)^2`.
pub fn pencil_a() -> HomPoly3<Rational> {
    let (x, y, z) = (HomPoly3::var(0), HomPoly3::var(1), HomPoly3::var(2));
    y.pow(2) + (x + z).pow(2)
}

/// `y^2 + (x - z)^2`.
pub fn pencil_b() -> HomPoly3<Rational> {
    let (x, y, z) = (HomPoly3::var(0), HomPoly3::var(1), HomPoly3::var(2));
    y.pow(2) + (x - z).pow(2)
}

/// `[A(p) : B(p)]` with `A = y^2 + (x+z)^2`, `B = y^2 + (x-z)^2`.
pub fn pi_circ(p: &ProjPoint) -> Result<P1Point> {
    let a = pencil_a().eval_gauss(p.coords());
    let b = pencil_b().eval_gauss(p.coords());
    P1Point::new(a, b).map_err(|_| Error::BasePointOfFibration)
}

/// A plane conic, scaled so its lex-leading coefficient is one.
#[derive(Clone, Debug, PartialEq)]
pub struct Conic(HomPoly3<GaussRational>);

impl Conic {
    pub fn new(p: HomPoly3<GaussRational>) -> Result<Self> {
        if p.degree() != 2 || p.is_zero() {
            return Err(Error::Precondition("a conic is a nonzero quadratic form".into()));
        }
        Ok(Conic(p.normalized()))
    }

    pub fn poly(&self) -> &HomPoly3<GaussRational> {
        &self.0
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.0.eval_gauss(p.coords()).is_zero()
    }

    pub fn conj(&self) -> Self {
        Conic(self.0.conj())
    }

    /// Symmetric Gram matrix.
    pub fn gram(&self) -> Matrix<GaussRational> {
        let half = GaussRational::from_rational(Rational::new(1.into(), 2.into()));
        let c = |e: [u32; 3]| self.0.coeff(&e);
        let (a, b, cc) = (c([2, 0, 0]), c([1, 1, 0]) * half.clone(), c([1, 0, 1]) * half.clone());
        let (d, e, f) = (c([0, 2, 0]), c([0, 1, 1]) * half, c([0, 0, 2]));
        Matrix::from_rows(vec![
            vec![a, b.clone(), cc.clone()],
            vec![b, d, e.clone()],
            vec![cc, e, f],
        ])
    }

    pub fn is_reducible(&self) -> bool {
        self.gram().det().is_zero()
    }

    /// Polar form `c(p, q)`.
    pub fn bilinear(&self, p: &Coords, q: &Coords) -> GaussRational {
        let g = self.gram();
        dot(p, &g.mul_vec(q))
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Linear form `l0 x + l1 y + l2 z`, up to scale.
pub type Line = Coords;

pub fn line_through(a: &ProjPoint, b: &ProjPoint) -> Line {
    cross(a.coords(), b.coords())
}

pub fn line_poly(l: &Line) -> HomPoly3<GaussRational> {
    HomPoly3::linear(l[0].clone(), l[1].clone(), l[2].clone())
}

pub fn lines_meet(l: &Line, m: &Line) -> Result<ProjPoint> {
    ProjPoint::new(cross(l, m)).map_err(|_| Error::DegeneratePosition("the lines coincide".into()))
}

pub fn on_line(l: &Line, p: &ProjPoint) -> bool {
    dot(l, p.coords()).is_zero()
}

pub fn collinear(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    dot(&line_through(a, b), c.coords()).is_zero()
}

fn normalize_line(l: &Line) -> Line {
    let k = l.iter().position(|v| !v.is_zero()).expect("nonzero line");
    let inv = GaussRational::one() / l[k].clone();
    l.clone().map(|v| v * inv.clone())
}

/// A point infinitely near `base`, given by a line through `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangentDirection {
    base: ProjPoint,
    line: Line,
}

impl TangentDirection {
    pub fn new(base: ProjPoint, line: Line) -> Result<Self> {
        if line.iter().all(Zero::is_zero) || !on_line(&line, &base) {
            return Err(Error::Precondition("the direction line must pass through its base".into()));
        }
        Ok(TangentDirection { base, line: normalize_line(&line) })
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn line(&self) -> &Line {
        &self.line
    }

    pub fn conj(&self) -> Self {
        TangentDirection { base: self.base.conj(), line: normalize_line(&self.line.clone().map(|v| v.conj())) }
    }

    pub fn is_real(&self) -> bool {
        self.base.is_real() && self.line.iter().all(|v| v.im.is_zero())
    }
}

impl fmt::Display for TangentDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.line.clone().map(|v| fmt_gauss(&v));
        write!(f, "{} along ({})x + ({})y + ({})z", self.base, l[0], l[1], l[2])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConicConstraint {
    Point(ProjPoint),
    Tangent(TangentDirection),
}

const CONIC_MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

fn monomial_values(p: &Coords) -> Vec<GaussRational> {
    CONIC_MONOMIALS
        .iter()
        .map(|e| {
            let mut v = GaussRational::one();
            for k in 0..3 {
                for _ in 0..e[k] {
                    v *= p[k].clone();
                }
            }
            v
        })
        .collect()
}

fn gradient_rows(p: &Coords) -> [Vec<GaussRational>; 3] {
    // Row k holds d/dx_k of each monomial at p.
    let mut rows: [Vec<GaussRational>; 3] = Default::default();
    for (k, row) in rows.iter_mut().enumerate() {
        *row = CONIC_MONOMIALS
            .iter()
            .map(|e| {
                if e[k] == 0 {
                    return GaussRational::zero();
                }
                let mut v = GaussRational::from_int(e[k] as i64);
                for j in 0..3 {
                    let pw = if j == k { e[j] - 1 } else { e[j] };
                    for _ in 0..pw {
                        v *= p[j].clone();
                    }
                }
                v
            })
            .collect();
    }
    rows
}

/// The unique conic meeting the constraints.
pub fn conic_through(constraints: &[ConicConstraint]) -> Result<Conic> {
    let mut rows = Vec::new();
    for c in constraints {
        match c {
            ConicConstraint::Point(p) => rows.push(monomial_values(p.coords())),
            ConicConstraint::Tangent(t) => {
                // gradient(b) x line = 0
                let g = gradient_rows(t.base.coords());
                let l = &t.line;
                for (i, j) in [(1, 2), (2, 0), (0, 1)] {
                    let row: Vec<GaussRational> = (0..6)
                        .map(|m| g[i][m].clone() * l[j].clone() - g[j][m].clone() * l[i].clone())
                        .collect();
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::DegenerateConstraints(6));
    }
    let ker = Matrix::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(Error::DegenerateConstraints(ker.len()));
    }
    let v = &ker[0];
    Conic::new(HomPoly3::from_terms(2, CONIC_MONOMIALS.iter().zip(v).map(|(e, c)| (*e, c.clone()))))
}

/// The pencil member `v A - u B`, i.e. `pi_circ^{-1}([u:v])`.
pub fn pencil_member(val: &P1Point) -> Conic {
    let a = pencil_a().to_gauss().scale(val.v());
    let b = pencil_b().to_gauss().scale(val.u());
    Conic::new(a - b).expect("pencil members are conics")
}

/// The pencil member through `q`.
pub fn conic_of_point(q: &ProjPoint) -> Result<Conic> {
    Ok(pencil_member(&pi_circ(q)?))
}

/// The value `[u:v]` with `c = pi_circ^{-1}([u:v])`.
pub fn pencil_value_of_conic(c: &Conic) -> Result<P1Point> {
    let p = c.poly();
    let coeff = |e: [u32; 3]| p.coeff(&e);
    let s = coeff([2, 0, 0]);
    if !coeff([1, 1, 0]).is_zero() || !coeff([0, 1, 1]).is_zero() || coeff([0, 2, 0]) != s || coeff([0, 0, 2]) != s {
        return Err(Error::NotInPencil);
    }
    // c = s (x^2 + y^2 + z^2) + m xz = lambda A + mu B
    let m = coeff([1, 0, 1]);
    let two = GaussRational::from_int(2);
    let half_m = m / two.clone();
    let lambda = (s.clone() + half_m.clone()) / two.clone();
    let mu = (s - half_m) / two;
    P1Point::new(-mu, lambda)
}

/// The pencil member through the point infinitely near `dir.base` along `dir.line`.
pub fn conic_at_infinitely_near(dir: &TangentDirection) -> Result<Conic> {
    let b = dir.base.coords();
    let ga: Vec<GaussRational> = (0..3).map(|k| pencil_a().partial(k).eval_gauss(b)).collect();
    let gb: Vec<GaussRational> = (0..3).map(|k| pencil_b().partial(k).eval_gauss(b)).collect();
    // Pick a point w != base on the line; tangency means grad(b) . w = 0.
    let w = (0..3)
        .map(|k| {
            let mut e: Coords = [GaussRational::zero(), GaussRational::zero(), GaussRational::zero()];
            e[k] = GaussRational::one();
            cross(&dir.line, &e)
        })
        .find(|w| !w.iter().all(Zero::is_zero) && !cross(w, b).iter().all(Zero::is_zero))
        .ok_or_else(|| Error::DegeneratePosition("no second point on the line".into()))?;
    let a_w = dot(&ga, &w);
    let b_w = dot(&gb, &w);
    // v * a_w - u * b_w = 0
    if a_w.is_zero() && b_w.is_zero() {
        return Err(Error::BasePointOfFibration);
    }
    let val = P1Point::new(a_w, b_w)?;
    Ok(pencil_member(&val))
}

/// `kappa = a^2 / (a^2 + b^2)` where the value is `[a + bi : 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NuKey(Rational);

impl NuKey {
    pub fn from_kappa(k: Rational) -> Self {
        NuKey(k)
    }

    pub fn kappa(&self) -> &Rational {
        &self.0
    }

    /// `1 - sqrt(kappa)`, for display.
    pub fn nu_approx(&self) -> f64 {
        1.0 - crate::exactalg::scalar::rat_to_f64(&self.0).sqrt()
    }

    pub fn parse(s: &str) -> Result<Self> {
        crate::exactalg::scalar::parse_rational(s)
            .map(NuKey)
            .ok_or_else(|| Error::Parse(format!("'{s}' is not a fraction")))
    }
}

impl fmt::Display for NuKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

pub fn nu_key(val: &P1Point) -> Result<NuKey> {
    if val.is_real() {
        return Err(Error::RealPencilValue);
    }
    let w = val.affine().expect("non-real values are finite");
    let a2 = w.re.clone() * w.re.clone();
    Ok(NuKey(a2 / norm_sq(&w)))
}

/// The printed formula `1 - |a| / (a^2 + b^2)` on the representative `[a+bi:1]`.
pub fn nu_printed(val: &P1Point) -> Result<Rational> {
    if val.is_real() {
        return Err(Error::RealPencilValue);
    }
    let w = val.affine().expect("non-real values are finite");
    Ok(int(1) - w.re.abs() / norm_sq(&w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn cq(q: &ProjPoint) -> Conic {
        let mut cs: Vec<ConicConstraint> = special_points().into_iter().map(ConicConstraint::Point).collect();
        cs.push(ConicConstraint::Point(q.clone()));
        conic_through(&cs).unwrap()
    }

    #[test]
    fn pi_circ_examples() {
        let q = ProjPoint::from_gauss([(2, 1), (1, 0), (1, 0)]);
        assert_eq!(pi_circ(&q).unwrap(), P1Point::new(gi(9, 6), gi(1, 2)).unwrap());
        assert_eq!(pi_circ(&p1()), Err(Error::BasePointOfFibration));
        assert_eq!(pi_star(&pencil_center()), Err(Error::BasePointOfFibration));
        assert_eq!(pi_star(&ProjPoint::real([3, 1, 2])).unwrap(), P1Point::real(1, 2));
    }

    #[test]
    fn conic_through_special_points_and_q() {
        let q = ProjPoint::from_gauss([(1, 0), (1, 0), (0, 1)]);
        let c = cq(&q);
        assert_eq!(pencil_value_of_conic(&c).unwrap(), P1Point::new(gi(1, 2), gi(1, -2)).unwrap());
        assert_eq!(cq(&ProjPoint::real([0, 0, 1])).poly().to_text(), "x*z");
    }

    #[test]
    fn reducible_members_and_values() {
        assert_eq!(pencil_value_of_conic(&Conic::new(pencil_a().to_gauss()).unwrap()).unwrap(), P1Point::real(0, 1));
        assert_eq!(pencil_value_of_conic(&Conic::new(pencil_b().to_gauss()).unwrap()).unwrap(), P1Point::real(1, 0));
        let xz = Conic::new(HomPoly3::var(0) * HomPoly3::var(2)).unwrap();
        assert_eq!(pencil_value_of_conic(&xz).unwrap(), P1Point::real(1, 1));
        for v in [P1Point::real(0, 1), P1Point::real(1, 0), P1Point::real(1, 1)] {
            assert!(pencil_member(&v).is_reducible());
        }
        assert!(!pencil_member(&P1Point::new(gi(1, 1), gi(1, 0)).unwrap()).is_reducible());
        let not_member = Conic::new(HomPoly3::var(0) * HomPoly3::var(1)).unwrap();
        assert_eq!(pencil_value_of_conic(&not_member), Err(Error::NotInPencil));
    }

    #[test]
    fn tangent_direction_selects_member() {
        let z = [gi(0, 0), gi(0, 0), gi(1, 0)];
        let dir = TangentDirection::new(p1(), z).unwrap();
        assert_eq!(conic_at_infinitely_near(&dir).unwrap().poly().to_text(), "x*z");
    }

    #[test]
    fn nu_key_examples() {
        assert_eq!(nu_key(&P1Point::new(gi(1, 2), gi(1, -2)).unwrap()).unwrap().kappa(), &rat(9, 25));
        assert_eq!(nu_key(&P1Point::new(gi(9, 6), gi(1, 2)).unwrap()).unwrap().kappa(), &rat(49, 65));
        assert_eq!(nu_key(&P1Point::new(gi(0, 1), gi(1, 0)).unwrap()).unwrap().kappa(), &rat(0, 1));
        assert_eq!(nu_key(&P1Point::real(2, 1)), Err(Error::RealPencilValue));
    }

    #[test]
    fn five_points_with_three_collinear_give_reducible_conic() {
        let pts = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3]];
        let cs: Vec<_> = pts.iter().map(|p| ConicConstraint::Point(ProjPoint::real(*p))).collect();
        assert!(conic_through(&cs).unwrap().is_reducible());
        let four: Vec<_> = cs[..4].to_vec();
        assert_eq!(conic_through(&four), Err(Error::DegenerateConstraints(2)));
    }

    #[test]
    fn parse_points() {
        assert_eq!(ProjPoint::parse("[1, i, 0]").unwrap(), p1());
        assert_eq!(ProjPoint::parse("0:2:2*i").unwrap(), p2());
        assert_eq!(p1().to_string(), "[1:i:0]");
    }
}
