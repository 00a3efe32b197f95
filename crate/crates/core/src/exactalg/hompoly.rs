use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{Field, GaussRational, Rational};
use super::unipoly::push_term;

/// Exponent vector `[a, b, c]` of `x^a y^b z^c`.
pub type Exponent = [u32; 3];

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// Homogeneous polynomial in `x, y, z`.
///
/// Terms are kept in a `BTreeMap`, so iteration runs in increasing
/// lexicographic order of exponents and the last term is the lex-largest.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly3<F: Field> {
    deg: u32,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> HomPoly3<F> {
    pub fn zero(deg: u32) -> Self {
        HomPoly3 { deg, terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_terms(0, [([0, 0, 0], c)])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The coordinate `x`, `y` or `z` for `k = 0, 1, 2`.
    pub fn var(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        Self::from_terms(1, [(e, F::one())])
    }

    pub fn linear(a: F, b: F, c: F) -> Self {
        Self::from_terms(1, [([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)])
    }

    pub fn monomial(c: F, e: Exponent) -> Self {
        Self::from_terms(e.iter().sum(), [(e, c)])
    }

    /// Panics when a term has the wrong total degree.
    pub fn from_terms(deg: u32, terms: impl IntoIterator<Item = (Exponent, F)>) -> Self {
        let mut out = Self::zero(deg);
        for (e, c) in terms {
            assert_eq!(e.iter().sum::<u32>(), deg, "inhomogeneous term");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    /// Lex-largest term.
    pub fn leading(&self) -> Option<(&Exponent, &F)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.deg);
        }
        HomPoly3 {
            deg: self.deg,
            terms: self.terms.iter().map(|(e, a)| (*e, a.clone() * c.clone())).collect(),
        }
    }

    /// Divides by the lex-leading coefficient.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = F::one() / c.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> HomPoly3<G> {
        let mut out = HomPoly3::zero(self.deg);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    pub fn to_gauss(&self) -> HomPoly3<GaussRational> {
        self.map(Field::to_gauss)
    }

    pub fn conj(&self) -> Self {
        self.map(Field::conj)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Field::is_real)
    }

    pub fn eval(&self, p: &[F; 3]) -> F {
        let pows: Vec<Vec<F>> = p.iter().map(|v| powers(v, self.deg as usize)).collect();
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            acc = acc
                + c.clone()
                    * pows[0][e[0] as usize].clone()
                    * pows[1][e[1] as usize].clone()
                    * pows[2][e[2] as usize].clone();
        }
        acc
    }

    /// Evaluates at a Gaussian-rational point.
    pub fn eval_gauss(&self, p: &[GaussRational; 3]) -> GaussRational {
        let pows: Vec<Vec<GaussRational>> = p.iter().map(|v| powers(v, self.deg as usize)).collect();
        let mut acc = GaussRational::zero();
        for (e, c) in &self.terms {
            acc += c.to_gauss()
                    * pows[0][e[0] as usize].clone()
                    * pows[1][e[1] as usize].clone()
                    * pows[2][e[2] as usize].clone();
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// `self(s[0], s[1], s[2])`; the substitutes must share one degree.
    pub fn compose(&self, s: &[HomPoly3<F>; 3]) -> HomPoly3<F> {
        let sd = s[0].deg;
        assert!(s.iter().all(|p| p.deg == sd), "substitutes of mixed degree");
        let d = self.deg;
        let mut pw: Vec<Vec<HomPoly3<F>>> = Vec::with_capacity(3);
        for p in s {
            let mut v = vec![HomPoly3::one()];
            for k in 1..=d as usize {
                let next = v[k - 1].clone() * p.clone();
                v.push(next);
            }
            pw.push(v);
        }
        let mut out = HomPoly3::zero(d * sd);
        for (e, c) in &self.terms {
            let t = pw[0][e[0] as usize].clone() * pw[1][e[1] as usize].clone();
            let t = t * pw[2][e[2] as usize].clone();
            for (te, tc) in t.terms {
                out.add_term(te, tc * c.clone());
            }
        }
        out
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(self.deg.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut f = *e;
                f[k] -= 1;
                out.add_term(f, c.clone() * F::from_int(e[k] as i64));
            }
        }
        out
    }

    /// Smallest exponent of variable `k` among the terms.
    pub fn min_exp(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).min().unwrap_or(0)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading().map(|(e, c)| (*e, c.clone()))?;
        if self.deg < d.deg {
            return self.is_zero().then(|| Self::zero(0));
        }
        let inv = F::one() / dc;
        let mut r = self.clone();
        let mut q = Self::zero(self.deg - d.deg);
        while let Some((re, rc)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            if (0..3).any(|k| re[k] < de[k]) {
                return None;
            }
            let qe = [re[0] - de[0], re[1] - de[1], re[2] - de[2]];
            let qc = rc * inv.clone();
            for (e, c) in &d.terms {
                r.add_term([e[0] + qe[0], e[1] + qe[1], e[2] + qe[2]], -(c.clone() * qc.clone()));
            }
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Divides out `var(k)^m`.
    pub fn shift_down(&self, k: usize, m: u32) -> Self {
        let mut out = Self::zero(self.deg - m);
        for (e, c) in &self.terms {
            let mut f = *e;
            f[k] -= m;
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            push_term(&mut out, c, &monomial_text(e));
        }
        out
    }
}

fn powers<F: Field>(v: &F, n: usize) -> Vec<F> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(F::one());
    for k in 1..=n {
        out.push(out[k - 1].clone() * v.clone());
    }
    out
}

pub fn monomial_text(e: &Exponent) -> String {
    let mut parts = Vec::new();
    for (k, &a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(VARS[k].to_string()),
            _ => parts.push(format!("{}^{}", VARS[k], a)),
        }
    }
    parts.join("*")
}

impl HomPoly3<Rational> {
    /// Integer coefficients with content one, positive lex-leading coefficient.
    pub fn integral_primitive(&self) -> Self {
        let f = joint_integral_factor(std::slice::from_ref(self));
        self.scale(&f)
    }
}

/// Positive factor making all polynomials integral and jointly primitive,
/// negated if needed so the first nonzero polynomial has a positive leading
/// coefficient.
pub fn joint_integral_factor(ps: &[HomPoly3<Rational>]) -> Rational {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for p in ps {
        for c in p.terms.values() {
            den = den.lcm(c.denom());
        }
    }
    for p in ps {
        for c in p.terms.values() {
            let v = c.numer() * (&den / c.denom());
            num = num.gcd(&v);
        }
    }
    if num.is_zero() {
        return Rational::one();
    }
    let mut f = Rational::new(den, num);
    if let Some((_, c)) = ps.iter().find_map(|p| p.leading()) {
        if c.is_negative() {
            f = -f;
        }
    }
    f
}

impl<F: Field> std::ops::Add for HomPoly3<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        assert_eq!(self.deg, rhs.deg, "adding polynomials of different degree");
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<F: Field> std::ops::Neg for HomPoly3<F> {
    type Output = Self;
    fn neg(self) -> Self {
        HomPoly3 { deg: self.deg, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<F: Field> std::ops::Sub for HomPoly3<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> std::ops::Mul for HomPoly3<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero(self.deg + rhs.deg);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for HomPoly3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
