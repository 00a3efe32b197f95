use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type GaussRational = Complex<Rational>;

/// Field arithmetic; enough for linear algebra.
pub trait FieldOps:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> FieldOps for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// An exact subfield of `Q(i)`; the polynomial layers are generic over it.
pub trait Field: FieldOps {
    fn conj(&self) -> Self;
    fn is_real(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn to_gauss(&self) -> GaussRational;
    /// `None` when `g` does not lie in this field.
    fn from_gauss(g: &GaussRational) -> Option<Self>;
    fn approx(&self) -> Complex<f64>;
    /// Coefficient text in the polynomial grammar.
    fn coeff_text(&self) -> String;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }
}

impl Field for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
    fn is_real(&self) -> bool {
        true
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_gauss(&self) -> GaussRational {
        Complex::new(self.clone(), Rational::zero())
    }
    fn from_gauss(g: &GaussRational) -> Option<Self> {
        g.im.is_zero().then(|| g.re.clone())
    }
    fn approx(&self) -> Complex<f64> {
        Complex::new(rat_to_f64(self), 0.0)
    }
    fn coeff_text(&self) -> String {
        fmt_rational(self)
    }
}

impl Field for GaussRational {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }
    fn to_gauss(&self) -> GaussRational {
        self.clone()
    }
    fn from_gauss(g: &GaussRational) -> Option<Self> {
        Some(g.clone())
    }
    fn approx(&self) -> Complex<f64> {
        Complex::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn coeff_text(&self) -> String {
        fmt_gauss(self)
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: Rational, im: Rational) -> GaussRational {
    Complex::new(re, im)
}

pub fn gi(re: i64, im: i64) -> GaussRational {
    Complex::new(int(re), int(im))
}

pub fn imag_unit() -> GaussRational {
    gi(0, 1)
}

pub fn norm_sq(g: &GaussRational) -> Rational {
    g.re.clone() * g.re.clone() + g.im.clone() * g.im.clone()
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_gauss(g: &GaussRational) -> String {
    if g.im.is_zero() {
        return fmt_rational(&g.re);
    }
    let im_part = if g.im.abs().is_one() {
        "i".to_string()
    } else {
        format!("{}*i", fmt_rational(&g.im.abs()))
    };
    if g.re.is_zero() {
        if g.im.is_negative() {
            format!("-{im_part}")
        } else {
            im_part
        }
    } else {
        let sign = if g.im.is_negative() { '-' } else { '+' };
        format!("{}{}{}", fmt_rational(&g.re), sign, im_part)
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Closest `f64`, saturating to infinity for huge values.
pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `log2 |r|`, rounded, for nonzero `r`.
pub fn rat_log2(r: &Rational) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

/// `r * 2^shift` as an `f64`, accurate even when `r` itself overflows.
pub fn rat_to_f64_scaled(r: &Rational, shift: i64) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let mut n = r.numer().clone();
    let mut d = r.denom().clone();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // Bring numerator and denominator to ~64 significant bits each.
    let mut exp = shift;
    if nb > 64 {
        n >>= (nb - 64) as usize;
        exp += nb - 64;
    }
    if db > 64 {
        d >>= (db - 64) as usize;
        exp -= db - 64;
    }
    let q = n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0);
    q * 2f64.powi(exp.clamp(-1000, 1000) as i32)
}

/// Round `r` to the nearest multiple of `2^-bits`.
pub fn round_to_bits(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = r * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem.abs() * 2;
    let q = if &twice >= scaled.denom() {
        if scaled.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    };
    Rational::new(q, scale)
}

/// Exact binary value of a finite `f64`.
pub fn f64_to_rat(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// The rational with smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo > hi {
        return simplest_between(hi, lo);
    }
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // Same integer part: recurse on reciprocals of fractional parts.
    let lo_f = lo.clone() - fl.clone();
    let hi_f = hi.clone() - fl.clone();
    let inner = simplest_between(&hi_f.recip(), &lo_f.recip());
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_formatting_round_trips_common_shapes() {
        assert_eq!(fmt_gauss(&gi(1, 0)), "1");
        assert_eq!(fmt_gauss(&gi(0, 1)), "i");
        assert_eq!(fmt_gauss(&gi(0, -1)), "-i");
        assert_eq!(fmt_gauss(&gi(1, -2)), "1-2*i");
        assert_eq!(fmt_gauss(&gauss(rat(3, 2), rat(1, 3))), "3/2+1/3*i");
    }

    #[test]
    fn simplest_rational_recovers_small_fractions() {
        let x = f64_to_rat(1.0 / 3.0);
        let eps = rat(1, 1 << 30);
        assert_eq!(simplest_between(&(x.clone() - eps.clone()), &(x + eps)), rat(1, 3));
        let y = f64_to_rat(-22.0 / 7.0);
        let eps = rat(1, 1 << 20);
        assert_eq!(simplest_between(&(y.clone() - eps.clone()), &(y + eps)), rat(-22, 7));
    }

    #[test]
    fn scaled_conversion_handles_huge_values() {
        let big = Rational::from_integer(BigInt::one() << 2000usize);
        let v = rat_to_f64_scaled(&big, -1990);
        assert!((v - 1024.0).abs() < 1e-9);
        assert_eq!(round_to_bits(&rat(1, 3), 2), rat(1, 4));
    }
}
