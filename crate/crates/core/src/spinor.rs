//! Spinor norms of reflections over `R(t)`, their non-real root classes, and
//! the isomorphism from `PGL_2` onto the special orthogonal group of
//! `t x^2 - y z`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::abelianisation::AbelVector;
use crate::error::{Error, Result};
use crate::exactalg::roots::{low_degree_factors, LowFactor};
use crate::exactalg::{Field, GaussRational, Matrix, RatFunc, Rational, UniPoly};
use crate::plane::NuKey;

/// The ternary quadratic form a reflection is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `x^2 + y^2 - t z^2`.
    SumOfSquares,
    /// `t x^2 - y z`.
    Split,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RtVector {
    pub a: UniPoly<Rational>,
    pub b: UniPoly<Rational>,
    pub c: UniPoly<Rational>,
}

impl RtVector {
    pub fn new(a: UniPoly<Rational>, b: UniPoly<Rational>, c: UniPoly<Rational>) -> Self {
        RtVector { a, b, c }
    }

    pub fn value(&self, form: Form) -> UniPoly<Rational> {
        let t = UniPoly::var();
        match form {
            Form::SumOfSquares => self.a.clone() * self.a.clone() + self.b.clone() * self.b.clone() - t * self.c.clone() * self.c.clone(),
            Form::Split => t * self.a.clone() * self.a.clone() - self.b.clone() * self.c.clone(),
        }
    }

    pub fn scaled(&self, l: &Rational) -> Self {
        RtVector { a: self.a.scale(l), b: self.b.scale(l), c: self.c.scale(l) }
    }
}

/// A class in `R(t)* / (R(t)*)^2`: a sign and a monic squarefree polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorClass {
    pub sign: i8,
    pub poly: UniPoly<Rational>,
}

impl SpinorClass {
    pub fn identity() -> Self {
        SpinorClass { sign: 1, poly: UniPoly::one() }
    }

    /// The class of a nonzero polynomial.
    pub fn of(p: &UniPoly<Rational>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::IsotropicVector);
        }
        let sign = if p.lc().is_negative() { -1 } else { 1 };
        Ok(SpinorClass { sign, poly: p.monic().odd_part() })
    }

    pub fn mul(&self, other: &Self) -> Self {
        SpinorClass { sign: self.sign * other.sign, poly: (self.poly.clone() * other.poly.clone()).odd_part() }
    }

    pub fn is_identity(&self) -> bool {
        self.sign == 1 && self.poly.degree() == Some(0)
    }

    pub fn to_json(&self) -> Value {
        json!({ "sign": self.sign, "poly": self.poly.to_text("t") })
    }
}

impl fmt::Display for SpinorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "{s}({})", self.poly.to_text("t"))
    }
}

pub fn reflection_norm_in(form: Form, v: &RtVector) -> Result<SpinorClass> {
    SpinorClass::of(&v.value(form))
}

/// Norm in `x^2 + y^2 - t z^2`.
pub fn reflection_norm(v: &RtVector) -> Result<SpinorClass> {
    reflection_norm_in(Form::SumOfSquares, v)
}

pub fn product_norm_in(form: Form, vs: &[RtVector]) -> Result<SpinorClass> {
    vs.iter().try_fold(SpinorClass::identity(), |acc, v| Ok(acc.mul(&reflection_norm_in(form, v)?)))
}

pub fn product_norm(vs: &[RtVector]) -> Result<SpinorClass> {
    product_norm_in(Form::SumOfSquares, vs)
}

/// An irreducible `t^2 + p t + q` with non-real roots and `kappa = p^2 / 4q`.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperHalfKey {
    pub factor: UniPoly<Rational>,
    pub kappa: Rational,
}

impl UpperHalfKey {
    pub fn key(&self) -> NuKey {
        NuKey::from_kappa(self.kappa.clone())
    }
}

/// The factors of `c` with non-real roots; real roots are dropped.
pub fn theta_bar(c: &SpinorClass) -> Result<Vec<UpperHalfKey>> {
    let (factors, rest) = low_degree_factors(&c.poly);
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::UnfactorableFactor);
    }
    let four = Rational::from_integer(4.into());
    let mut out = Vec::new();
    for f in factors {
        if let LowFactor::Quadratic(p, q) = &f {
            if p.clone() * p.clone() - four.clone() * q.clone() < Rational::zero() {
                out.push(UpperHalfKey { factor: f.poly(), kappa: p.clone() * p.clone() / (four.clone() * q.clone()) });
            }
        }
    }
    out.sort_by(|a, b| a.kappa.cmp(&b.kappa).then_with(|| a.factor.coeffs().cmp(b.factor.coeffs())));
    Ok(out)
}

pub fn spinor_to_abel(keys: &[UpperHalfKey]) -> AbelVector {
    AbelVector::from_keys(keys.iter().map(UpperHalfKey::key))
}

pub type RtEntry = RatFunc<GaussRational>;

fn t_func() -> RtEntry {
    RatFunc::from_poly(UniPoly::var())
}

fn constant(n: i64) -> RtEntry {
    RatFunc::constant(GaussRational::from_int(n))
}

/// Gram matrix of `t x^2 - y z`.
pub fn split_gram() -> Matrix<RtEntry> {
    let half = RatFunc::constant(GaussRational::from_rational(Rational::new((-1).into(), 2.into())));
    let z = RtEntry::zero();
    Matrix::from_rows(vec![vec![t_func(), z.clone(), z.clone()], vec![z.clone(), z.clone(), half.clone()], vec![z.clone(), half, z]])
}

/// The action on `[uv : t u^2 : v^2]` induced by `[u:v] -> M [u:v]`,
/// normalised to determinant one.
pub fn pgl2_to_so(m: &Matrix<RtEntry>) -> Result<Matrix<RtEntry>> {
    let (a, b, c, d) = (m[(0, 0)].clone(), m[(0, 1)].clone(), m[(1, 0)].clone(), m[(1, 1)].clone());
    let delta = a.clone() * d.clone() - b.clone() * c.clone();
    if delta.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let t = t_func();
    let two = constant(2);
    let n = Matrix::from_rows(vec![
        vec![a.clone() * d.clone() + b.clone() * c.clone(), a.clone() * c.clone() / t.clone(), b.clone() * d.clone()],
        vec![two.clone() * a.clone() * b.clone() * t.clone(), a.clone() * a.clone(), t.clone() * b.clone() * b.clone()],
        vec![two * c.clone() * d.clone(), c.clone() * c.clone() / t, d.clone() * d],
    ]);
    let inv = RtEntry::one() / delta;
    let n = n.map(|e| e.clone() * inv.clone());
    let q = split_gram();
    if n.transpose().mul(&q).mul(&n) != q {
        return Err(Error::Inconsistent("the image does not preserve t x^2 - y z".into()));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_uni;
    use crate::exactalg::scalar::rat;

    fn poly(s: &str) -> UniPoly<Rational> {
        parse_uni(s, "t").unwrap()
    }

    fn v(a: &str, b: &str, c: &str) -> RtVector {
        RtVector::new(poly(a), poly(b), poly(c))
    }

    #[test]
    fn reflection_examples() {
        assert!(reflection_norm(&v("1", "0", "0")).unwrap().is_identity());
        assert_eq!(reflection_norm(&v("0", "-t", "1")).unwrap().poly, poly("t^2 - t"));
        assert_eq!(reflection_norm(&v("t", "1", "1")).unwrap().poly, poly("t^2 - t + 1"));
        assert_eq!(reflection_norm(&v("0", "0", "0")).unwrap_err(), Error::IsotropicVector);
    }

    #[test]
    fn products() {
        let a = v("0", "-t", "1");
        assert!(product_norm(&[a.clone(), a.clone()]).unwrap().is_identity());
        assert!(product_norm(&[]).unwrap().is_identity());
        let p = product_norm(&[a, v("t", "1", "1")]).unwrap();
        assert_eq!(p.poly, poly("t*(t-1)*(t^2-t+1)"));
    }

    #[test]
    fn split_form_norms() {
        for p in ["1", "t+1", "t^2+1"] {
            let tp = poly("t") * poly(p);
            let r = reflection_norm_in(Form::Split, &RtVector::new(UniPoly::zero(), -tp.clone(), UniPoly::one())).unwrap();
            assert_eq!(r.poly, tp.monic().squarefree_part());
        }
    }

    #[test]
    fn upper_half_keys() {
        assert!(theta_bar(&SpinorClass::of(&poly("t*(t-1)")).unwrap()).unwrap().is_empty());
        let k = theta_bar(&SpinorClass::of(&poly("t^2+1")).unwrap()).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].kappa, rat(0, 1));
        let k = theta_bar(&SpinorClass::of(&poly("(t^2+1)*(t^2-t+1)")).unwrap()).unwrap();
        let kappas: Vec<Rational> = k.iter().map(|k| k.kappa.clone()).collect();
        assert_eq!(kappas, vec![rat(0, 1), rat(1, 4)]);
        let cubic = SpinorClass::of(&poly("t^3 - 2")).unwrap();
        assert_eq!(theta_bar(&cubic).unwrap_err(), Error::UnfactorableFactor);
    }

    #[test]
    fn same_orbit_cancels() {
        let k = theta_bar(&SpinorClass::of(&poly("(t^2+1)*(4*t^2+1)")).unwrap()).unwrap();
        assert!(spinor_to_abel(&k).is_zero());
        assert!(spinor_to_abel(&[]).is_zero());
    }

    fn entry(s: &str) -> RtEntry {
        RatFunc::from_poly(parse_uni(s, "t").unwrap())
    }

    fn m2(e: [&str; 4]) -> Matrix<RtEntry> {
        Matrix::from_rows(vec![vec![entry(e[0]), entry(e[1])], vec![entry(e[2]), entry(e[3])]])
    }

    #[test]
    fn alpha_of_an_involution() {
        assert_eq!(pgl2_to_so(&m2(["1", "0", "0", "1"])).unwrap(), Matrix::identity(3));
        let p = entry("t^2 + 1");
        let n = pgl2_to_so(&Matrix::from_rows(vec![vec![RtEntry::zero(), p.clone()], vec![RtEntry::one(), RtEntry::zero()]])).unwrap();
        let tp = t_func() * p;
        let z = RtEntry::zero();
        let expected = Matrix::from_rows(vec![
            vec![-RtEntry::one(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), -tp.clone()],
            vec![z.clone(), -(RtEntry::one() / tp.clone()), z.clone()],
        ]);
        assert_eq!(n, expected);
        let fixed = vec![z, -tp, RtEntry::one()];
        assert_eq!(n.mul_vec(&fixed), fixed);
        assert_eq!(pgl2_to_so(&m2(["1", "1", "1", "1"])).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn alpha_is_multiplicative() {
        let a = m2(["t", "1", "2", "t+1"]);
        let b = m2(["1", "t^2", "-1", "3"]);
        let lhs = pgl2_to_so(&a.mul(&b)).unwrap();
        let rhs = pgl2_to_so(&a).unwrap().mul(&pgl2_to_so(&b).unwrap());
        assert_eq!(lhs, rhs);
    }
}
