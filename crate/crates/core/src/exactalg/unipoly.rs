use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{Field, Rational};

/// Dense univariate polynomial, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = F::one() / self.lc();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_int(k as i64))
                .collect(),
        )
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn conj(&self) -> Self {
        self.map(Field::conj)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = F::one() / d.lc();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Radical: `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun decomposition: monic `a_1, a_2, ...` with `monic(p) = prod a_k^k`.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.div_exact(&a).unwrap();
        let mut c = dp.div_exact(&a).unwrap();
        let mut d = c - b.derivative();
        loop {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.div_exact(&g).unwrap();
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_exact(&g).unwrap();
            d = c - b.derivative();
        }
        while out.last().is_some_and(|g| g.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Resultant via the Euclidean algorithm over the field.
    pub fn resultant(&self, other: &Self) -> F {
        let (Some(mut da), Some(mut db)) = (self.degree(), other.degree()) else {
            return F::zero();
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = F::one();
        loop {
            if db == 0 {
                return res * pow(&b.lc(), da);
            }
            let r = a.divrem(&b).1;
            let Some(dr) = r.degree() else {
                return F::zero();
            };
            if da % 2 == 1 && db % 2 == 1 {
                res = -res;
            }
            res = res * pow(&b.lc(), da - dr);
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }
}

pub(crate) fn pow<F: Field>(x: &F, k: usize) -> F {
    let mut acc = F::one();
    for _ in 0..k {
        acc = acc * x.clone();
    }
    acc
}

impl UniPoly<Rational> {
    /// Square class representative: monic product of the odd-multiplicity factors.
    pub fn odd_part(&self) -> Self {
        let mut acc = Self::one();
        for (k, f) in self.squarefree_decomposition().iter().enumerate() {
            if k % 2 == 0 {
                acc = acc * f.clone();
            }
        }
        acc
    }
}

impl<F: Field> std::ops::Add for UniPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<F: Field> std::ops::Sub for UniPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<F: Field> std::ops::Neg for UniPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<F: Field> std::ops::Mul for UniPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<F: Field> One for UniPoly<F> {
    fn one() -> Self {
        UniPoly::constant(F::one())
    }
}

impl<F: Field> Zero for UniPoly<F> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> UniPoly<F> {
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            push_term(&mut out, c, &mono);
        }
        out
    }
}

/// Appends `c*mono` to a sum in the polynomial grammar.
pub(crate) fn push_term<F: Field>(out: &mut String, c: &F, mono: &str) {
    let text = c.coeff_text();
    let compound = !c.is_real() && !c.to_gauss().re.is_zero();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) if !compound => (true, rest.to_string()),
        _ => (false, text),
    };
    let body = if compound { format!("({body})") } else { body };
    let term = if mono.is_empty() {
        body
    } else if body == "1" {
        mono.to_string()
    } else {
        format!("{body}*{mono}")
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&term);
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, rat};

    fn q(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(v.iter().map(|&a| int(a)).collect())
    }

    #[test]
    fn radical_of_square_times_linear() {
        // t^2 (t - 1)^2 (t + 1) -> t (t - 1) (t + 1)
        let p = q(&[0, 1]) * q(&[0, 1]) * q(&[-1, 1]) * q(&[-1, 1]) * q(&[1, 1]);
        assert_eq!(p.squarefree_part(), q(&[0, -1, 0, 1]));
        assert_eq!(q(&[0, 0, 1]).squarefree_part(), q(&[0, 1]));
    }

    #[test]
    fn odd_part_drops_squares() {
        let p = q(&[0, 0, 1]);
        assert_eq!(p.odd_part(), q(&[1]));
        let p = q(&[0, 1]) * q(&[1, 0, 1]) * q(&[1, 0, 1]) * q(&[2, 1]) * q(&[2, 1]) * q(&[2, 1]);
        assert_eq!(p.odd_part(), q(&[0, 2, 1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(t - 2, t^2 + 1) = 2^2 + 1
        assert_eq!(q(&[-2, 1]).resultant(&q(&[1, 0, 1])), int(5));
        // Res(t^2 - 1, t^2 - 4) = prod (a_i - b_j) = (1-2)(1+2)(-1-2)(-1+2) = 9
        assert_eq!(q(&[-1, 0, 1]).resultant(&q(&[-4, 0, 1])), int(9));
        assert_eq!(q(&[-1, 1]).resultant(&q(&[-1, 0, 1])), int(0));
    }

    #[test]
    fn gcd_and_division() {
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), q(&[1, 1]));
        let (qq, r) = q(&[1, 0, 0, 1]).divrem(&q(&[1, 1]));
        assert_eq!(qq, q(&[1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(q(&[1, 2]).scale(&rat(1, 2)), UniPoly::new(vec![rat(1, 2), int(1)]));
    }

    #[test]
    fn text_form() {
        assert_eq!(q(&[1, -1, 0, 2]).to_text("t"), "2*t^3 - t + 1");
    }
}
