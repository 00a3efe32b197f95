//! Stereographic projection between the quadric `w^2 = x^2 + y^2 + z^2` and
//! the plane, with polynomials in at most four variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactalg::scalar::{fmt_rational, int};
use crate::exactalg::Rational;

type Exp = [u32; 4];

/// A polynomial in four variables with rational coefficients. On the quadric
/// the variables are `w, x, y, z`; on the plane only the first three are used.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly4(BTreeMap<Exp, Rational>);

impl Poly4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.push([0; 4], c);
        p
    }

    pub fn var(k: usize) -> Self {
        let mut e = [0; 4];
        e[k] = 1;
        let mut p = Self::zero();
        p.push(e, Rational::one());
        p
    }

    fn push(&mut self, e: Exp, c: Rational) {
        let entry = self.0.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly4(self.0.iter().map(|(e, v)| (*e, v * c)).filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn eval(&self, p: &[Rational; 4]) -> Rational {
        self.0
            .iter()
            .map(|(e, c)| (0..4).fold(c.clone(), |acc, k| acc * num_traits::pow(p[k].clone(), e[k] as usize)))
            .sum()
    }

    /// Replaces variable `k` by `subs[k]` for every `k`.
    pub fn compose(&self, subs: &[Poly4; 4]) -> Self {
        let mut out = Poly4::zero();
        for (e, c) in &self.0 {
            let mut term = Poly4::constant(c.clone());
            for k in 0..4 {
                for _ in 0..e[k] {
                    term = term * subs[k].clone();
                }
            }
            out = out + term;
        }
        out
    }

    /// Normal form modulo `w^2 - x^2 - y^2 - z^2`, with `w` of degree at most one.
    pub fn reduce_quadric(&self) -> Self {
        let rest = Poly4::var(1) * Poly4::var(1) + Poly4::var(2) * Poly4::var(2) + Poly4::var(3) * Poly4::var(3);
        let mut out = Poly4::zero();
        let mut todo: Vec<(Exp, Rational)> = self.0.iter().map(|(e, c)| (*e, c.clone())).collect();
        while let Some((e, c)) = todo.pop() {
            if e[0] < 2 {
                out.push(e, c);
                continue;
            }
            let lowered = [e[0] - 2, e[1], e[2], e[3]];
            for (f, d) in &rest.0 {
                todo.push(([lowered[0], lowered[1] + f[1], lowered[2] + f[2], lowered[3] + f[3]], c.clone() * d));
            }
        }
        out
    }

    /// Exact quotient by a single variable, if it divides every term.
    pub fn div_var(&self, k: usize) -> Option<Self> {
        self.0
            .iter()
            .map(|(e, c)| {
                let mut f = *e;
                f[k] = f[k].checked_sub(1)?;
                Some((f, c.clone()))
            })
            .collect::<Option<BTreeMap<_, _>>>()
            .map(Poly4)
    }

    pub fn to_text(&self, names: &[&str; 4]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.0.iter().rev() {
            let mono: Vec<String> = (0..4)
                .filter(|&k| e[k] > 0)
                .map(|k| if e[k] == 1 { names[k].to_string() } else { format!("{}^{}", names[k], e[k]) })
                .collect();
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), a.is_one()) {
                (true, _) => out.push_str(&fmt_rational(&a)),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{}*{}", fmt_rational(&a), mono.join("*"))),
            }
        }
        out
    }
}

impl Add for Poly4 {
    type Output = Poly4;
    fn add(mut self, rhs: Poly4) -> Poly4 {
        for (e, c) in rhs.0 {
            self.push(e, c);
        }
        self
    }
}

impl Neg for Poly4 {
    type Output = Poly4;
    fn neg(self) -> Poly4 {
        Poly4(self.0.into_iter().map(|(e, c)| (e, -c)).collect())
    }
}

impl Sub for Poly4 {
    type Output = Poly4;
    fn sub(self, rhs: Poly4) -> Poly4 {
        self + (-rhs)
    }
}

impl Mul for Poly4 {
    type Output = Poly4;
    fn mul(self, rhs: Poly4) -> Poly4 {
        let mut out = Poly4::zero();
        for (a, c) in &self.0 {
            for (b, d) in &rhs.0 {
                out.push([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], c.clone() * d);
            }
        }
        out
    }
}

pub const QUADRIC_VARS: [&str; 4] = ["w", "x", "y", "z"];
pub const PLANE_VARS: [&str; 4] = ["x0", "x1", "x2", "_"];

/// `[w:x:y:z] -> [w - z : x : y]`.
pub fn stereographic() -> [Poly4; 3] {
    [Poly4::var(0) - Poly4::var(3), Poly4::var(1), Poly4::var(2)]
}

/// `[x0:x1:x2] -> [x0^2 + x1^2 + x2^2 : 2 x0 x1 : 2 x0 x2 : -x0^2 + x1^2 + x2^2]`.
pub fn stereographic_inverse() -> [Poly4; 4] {
    let (a, b, c) = (Poly4::var(0), Poly4::var(1), Poly4::var(2));
    let sq = |p: &Poly4| p.clone() * p.clone();
    let two = Poly4::constant(int(2));
    [
        sq(&a) + sq(&b) + sq(&c),
        two.clone() * a.clone() * b.clone(),
        two * a.clone() * c,
        sq(&b) + sq(&Poly4::var(2)) - sq(&a),
    ]
}

/// True when `comps` is proportional to the coordinate vector, after
/// reducing every cross term with `reduce`.
fn proportional_to_identity(comps: &[Poly4], reduce: impl Fn(&Poly4) -> Poly4) -> bool {
    let n = comps.len();
    if comps.iter().all(|c| reduce(c).is_zero()) {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| reduce(&(comps[i].clone() * Poly4::var(j) - comps[j].clone() * Poly4::var(i))).is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StereoReport {
    /// `p o p^-1` equals the identity of the plane up to a common factor.
    pub plane_round_trip: bool,
    pub plane_factor: String,
    /// `p^-1 o p` equals the identity modulo the quadric.
    pub quadric_round_trip: bool,
    /// The image of `p^-1` satisfies the quadric equation identically.
    pub image_on_quadric: bool,
    /// `p` vanishes at `[1:0:0:1]`.
    pub base_point_flagged: bool,
}

impl StereoReport {
    pub fn passed(&self) -> bool {
        self.plane_round_trip && self.quadric_round_trip && self.image_on_quadric && self.base_point_flagged
    }
}

pub fn verify_stereographic() -> StereoReport {
    let p = stereographic();
    let q = stereographic_inverse();
    let plane: Vec<Poly4> = p.iter().map(|c| c.compose(&q)).collect();
    let plane_round_trip = proportional_to_identity(&plane, Clone::clone);
    let plane_factor = plane[0].div_var(0).map_or_else(|| "?".into(), |f| f.to_text(&PLANE_VARS));

    let subs = [p[0].clone(), p[1].clone(), p[2].clone(), Poly4::zero()];
    let back: Vec<Poly4> = q.iter().map(|c| c.compose(&subs)).collect();
    let quadric_round_trip = proportional_to_identity(&back, Poly4::reduce_quadric);

    let sq = |p: &Poly4| p.clone() * p.clone();
    let image_on_quadric = (sq(&q[0]) - sq(&q[1]) - sq(&q[2]) - sq(&q[3])).is_zero();

    let pole = [int(1), int(0), int(0), int(1)];
    let base_point_flagged = p.iter().all(|c| c.eval(&pole).is_zero());
    StereoReport { plane_round_trip, plane_factor, quadric_round_trip, image_on_quadric, base_point_flagged }
}
