//! Exact roots and low-degree factors of univariate polynomials.
//!
//! Roots are isolated numerically (Aberth iteration in `f64`), polished by
//! Newton steps in exact arithmetic at growing precision, and recovered as
//! the simplest rational in a shrinking window. Every reported root or factor
//! is verified exactly; anything that cannot be verified is left unresolved.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::scalar::{
    f64_to_rat, rat_log2, rat_to_f64_scaled, round_to_bits, simplest_between, Field, GaussRational,
    Rational,
};
use super::unipoly::UniPoly;

type C64 = Complex<f64>;

const PRECISIONS: [u32; 6] = [64, 128, 256, 512, 1024, 2048];

fn coeff_log2<F: Field>(c: &F) -> Option<i64> {
    let g = c.to_gauss();
    match (g.re.is_zero(), g.im.is_zero()) {
        (true, true) => None,
        (false, true) => Some(rat_log2(&g.re)),
        (true, false) => Some(rat_log2(&g.im)),
        (false, false) => Some(rat_log2(&g.re).max(rat_log2(&g.im))),
    }
}

/// Numerical roots of a polynomial of positive degree.
pub fn approximate_roots<F: Field>(p: &UniPoly<F>) -> Vec<C64> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let logs: Vec<Option<i64>> = p.coeffs().iter().map(coeff_log2).collect();
    let ln = logs[n].unwrap();
    // Substitute t = 2^k u so root magnitudes are near one.
    let k = (0..n)
        .filter_map(|j| logs[j].map(|l| (l - ln) as f64 / (n - j) as f64))
        .fold(f64::NEG_INFINITY, f64::max);
    let k = if k.is_finite() { k.round() as i64 } else { 0 };
    let top = (0..=n).filter_map(|j| logs[j].map(|l| l + k * j as i64)).max().unwrap();
    let coeffs: Vec<C64> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let g = c.to_gauss();
            let s = k * j as i64 - top;
            C64::new(rat_to_f64_scaled(&g.re, s), rat_to_f64_scaled(&g.im, s))
        })
        .collect();
    let scale = 2f64.powi(k.clamp(-1000, 1000) as i32);
    aberth(&coeffs).into_iter().map(|u| u * scale).collect()
}

fn horner(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn aberth(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max).min(1e6);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: C64 = (0..n).filter(|&j| j != k).map(|j| C64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn to_gauss_approx(z: C64) -> GaussRational {
    Complex::new(f64_to_rat(z.re), f64_to_rat(z.im))
}

fn round_gauss(z: &GaussRational, bits: u32) -> GaussRational {
    Complex::new(round_to_bits(&z.re, bits), round_to_bits(&z.im, bits))
}

/// Newton-polishes `z` to about `bits` bits in exact arithmetic.
fn polish(p: &UniPoly<GaussRational>, dp: &UniPoly<GaussRational>, mut z: GaussRational, bits: u32) -> GaussRational {
    let tol = Rational::new(1.into(), num_bigint::BigInt::one() << bits as usize);
    for _ in 0..(bits / 8 + 8) {
        let d = dp.eval(&z);
        if d.is_zero() {
            break;
        }
        let step = p.eval(&z) / d;
        z = round_gauss(&(z - step.clone()), bits + 8);
        let small = |r: &Rational| r.clone() * r.clone() < tol.clone() * tol.clone();
        if small(&step.re) && small(&step.im) {
            break;
        }
    }
    z
}

fn simplest_near(x: &Rational, bits: u32) -> Rational {
    let eps = Rational::new(1.into(), num_bigint::BigInt::one() << (bits - 4) as usize);
    simplest_between(&(x.clone() - eps.clone()), &(x.clone() + eps))
}

/// Tries to identify the exact Gaussian-rational root near `z0`.
fn recover_root(p: &UniPoly<GaussRational>, dp: &UniPoly<GaussRational>, z0: C64) -> Option<GaussRational> {
    let mut z = to_gauss_approx(z0);
    for bits in PRECISIONS {
        z = polish(p, dp, z, bits);
        let cand = Complex::new(simplest_near(&z.re, bits), simplest_near(&z.im, bits));
        if p.eval(&cand).is_zero() {
            return Some(cand);
        }
    }
    None
}

/// The roots of `p` lying in `Q(i)`, each listed once, and the number of
/// roots (with multiplicity one) that could not be identified.
pub fn gaussian_roots<F: Field>(p: &UniPoly<F>) -> (Vec<GaussRational>, usize) {
    if p.degree().unwrap_or(0) == 0 {
        return (Vec::new(), 0);
    }
    let sq = p.map(Field::to_gauss).squarefree_part();
    let dp = sq.derivative();
    let mut found: Vec<GaussRational> = Vec::new();
    let mut rest = sq.clone();
    for z0 in approximate_roots(&sq) {
        if rest.degree() == Some(0) {
            break;
        }
        if let Some(r) = recover_root(&sq, &dp, z0) {
            if !found.contains(&r) {
                let lin = UniPoly::new(vec![-r.clone(), GaussRational::one()]);
                if let Some(q) = rest.div_exact(&lin) {
                    rest = q;
                    found.push(r);
                }
            }
        }
    }
    let unresolved = rest.degree().unwrap_or(0);
    (found, unresolved)
}

/// A factor of degree one or two over `Q`.
#[derive(Clone, Debug, PartialEq)]
pub enum LowFactor {
    /// `t - r`.
    Linear(Rational),
    /// `t^2 + p t + q`, irreducible over `Q`.
    Quadratic(Rational, Rational),
}

impl LowFactor {
    pub fn poly(&self) -> UniPoly<Rational> {
        match self {
            LowFactor::Linear(r) => UniPoly::new(vec![-r.clone(), Rational::one()]),
            LowFactor::Quadratic(p, q) => UniPoly::new(vec![q.clone(), p.clone(), Rational::one()]),
        }
    }
}

/// Splits a squarefree rational polynomial into linear and quadratic factors.
/// Returns the factors found and the cofactor that could not be split.
pub fn low_degree_factors(p: &UniPoly<Rational>) -> (Vec<LowFactor>, UniPoly<Rational>) {
    let mut rest = p.monic();
    let mut out = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return (out, rest);
    }
    let pg = rest.map(Field::to_gauss);
    let dpg = pg.derivative();
    let approx = approximate_roots(&rest);
    let mut used = vec![false; approx.len()];
    for (k, z0) in approx.iter().enumerate() {
        if let Some(r) = recover_root(&pg, &dpg, *z0) {
            if r.im.is_zero() {
                let f = LowFactor::Linear(r.re);
                if let Some(q) = rest.div_exact(&f.poly()) {
                    rest = q;
                    out.push(f);
                    used[k] = true;
                }
            }
        }
    }
    for a in 0..approx.len() {
        for b in a + 1..approx.len() {
            if used[a] || used[b] || rest.degree().unwrap_or(0) < 2 {
                continue;
            }
            let (za, zb) = (approx[a], approx[b]);
            let (s, m) = (za + zb, za * zb);
            if s.im.abs() > 1e-6 * (1.0 + s.norm()) || m.im.abs() > 1e-6 * (1.0 + m.norm()) {
                continue;
            }
            let mut wa = to_gauss_approx(za);
            let mut wb = to_gauss_approx(zb);
            for bits in PRECISIONS {
                wa = polish(&pg, &dpg, wa, bits);
                wb = polish(&pg, &dpg, wb, bits);
                let sum = wa.clone() + wb.clone();
                let prod = wa.clone() * wb.clone();
                let f = LowFactor::Quadratic(-simplest_near(&sum.re, bits), simplest_near(&prod.re, bits));
                if let Some(q) = rest.div_exact(&f.poly()) {
                    rest = q;
                    out.push(f);
                    used[a] = true;
                    used[b] = true;
                    break;
                }
            }
        }
    }
    (out, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{gauss, gi, int, rat};

    fn q(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(v.iter().map(|&a| int(a)).collect())
    }

    #[test]
    fn finds_gaussian_roots_of_real_polynomial() {
        // (t - 1/3)(t^2 - 2t + 5): roots 1/3, 1 +- 2i
        let p = UniPoly::new(vec![rat(-1, 3), int(1)]) * q(&[5, -2, 1]);
        let (roots, left) = gaussian_roots(&p);
        assert_eq!(left, 0);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&gi(1, 2)));
        assert!(roots.contains(&gauss(rat(1, 3), int(0))));
    }

    #[test]
    fn irrational_roots_are_reported_unresolved() {
        let (roots, left) = gaussian_roots(&q(&[-2, 0, 1]));
        assert!(roots.is_empty());
        assert_eq!(left, 2);
    }

    #[test]
    fn large_coefficients_survive_scaling() {
        // roots 10^12 / 7 and -3/10^9
        let big = Rational::from_integer(num_bigint::BigInt::from(10u64).pow(12));
        let small = Rational::from_integer(num_bigint::BigInt::from(10u64).pow(9));
        let r1 = big / int(7);
        let r2 = int(-3) / small;
        let p = UniPoly::new(vec![-r1.clone(), int(1)]) * UniPoly::new(vec![-r2.clone(), int(1)]);
        let (roots, left) = gaussian_roots(&p);
        assert_eq!(left, 0);
        assert!(roots.contains(&gauss(r1, int(0))));
        assert!(roots.contains(&gauss(r2, int(0))));
    }

    #[test]
    fn splits_into_linear_and_quadratic_factors() {
        // t (t^2 - t + 1)(t^2 - 2)
        let p = q(&[0, 1]) * q(&[1, -1, 1]) * q(&[-2, 0, 1]);
        let (fs, rest) = low_degree_factors(&p);
        assert_eq!(rest.degree(), Some(0));
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&LowFactor::Quadratic(int(-1), int(1))));
        assert!(fs.contains(&LowFactor::Quadratic(int(0), int(-2))));
        assert!(fs.contains(&LowFactor::Linear(int(0))));
    }

    #[test]
    fn irreducible_cubic_is_left_over() {
        let (fs, rest) = low_degree_factors(&q(&[-2, 0, 0, 1]));
        assert!(fs.is_empty());
        assert_eq!(rest.degree(), Some(3));
    }
}
