use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::abelianisation::{phi_word, AbelVector};
use crate::birmap::{compose_all, maps_equal, normalize_components, reduce_components, BirMap, Components};
use crate::error::{Error, Result};
use crate::exactalg::scalar::{fmt_rational, int};
use crate::exactalg::{HomPoly3, Matrix, Rational};
use crate::generators::linear::{apply_matrix, int_matrix};
use crate::generators::{alpha_fixing_p1_sending, is_in_jcirc, is_in_jstar, linear_map, Generator, Letter, Tag, Word};
use crate::plane::{nu_key, p2, pi_circ, P1Point, ProjPoint};

/// The real factor `l` with `pi_circ(alpha_q(p2)) = l * pi_circ(q)`.
pub fn reassignment_ratio(q: &ProjPoint) -> Result<Rational> {
    let alpha = alpha_fixing_p1_sending(q)?;
    let m = alpha.map().linear_matrix().expect("linear");
    let image = apply_matrix(&m, &p2());
    let (a, b) = (pi_circ(&image)?, pi_circ(q)?);
    if [P1Point::real(0, 1), P1Point::real(1, 0), P1Point::real(1, 1)].contains(&b) {
        return Err(Error::ReducibleConic);
    }
    if b.is_real() {
        return Err(Error::RealPencilValue);
    }
    let (wa, wb) = (a.affine(), b.affine());
    let ratio = match (wa, wb) {
        (Some(x), Some(y)) => x / y,
        _ => return Err(Error::DegeneratePosition("a pencil value is infinite".into())),
    };
    if !ratio.im.is_zero() {
        return Err(Error::Inconsistent(format!("the ratio of pencil values {a} and {b} is not real")));
    }
    if nu_key(&a)? != nu_key(&b)? {
        return Err(Error::Inconsistent("the keys of the two conics differ".into()));
    }
    Ok(ratio.re)
}

/// Outcome of the positivity check on a set of samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QReport {
    pub samples: usize,
    /// `Q > 0` at every sample.
    pub all_positive: bool,
    /// The discriminant in `x` is negative at every sampled `y`.
    pub discriminants_negative: bool,
    pub leading_positive: bool,
    /// `Q = A ((x - x0)^2 + (y - y0)^2)` holds at every sample, so `Q >= 0`
    /// with its only zero at `(x0, y0)`.
    pub square_identity: bool,
    #[serde(serialize_with = "ser_pair")]
    pub vanishing_point: (Rational, Rational),
}

fn ser_pair<S: serde::Serializer>(p: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&fmt_rational(&p.0))?;
    seq.serialize_element(&fmt_rational(&p.1))?;
    seq.end()
}

impl QReport {
    pub fn passed(&self) -> bool {
        self.all_positive && self.discriminants_negative && self.leading_positive
    }
}

/// Checks `Q(x, y) > 0` at the samples, and that `Q` as a quadratic in `x`
/// has negative discriminant at each sampled `y`.
pub fn verify_q_positivity(rho: &Rational, nu: &Rational, samples: &[(Rational, Rational)]) -> Result<QReport> {
    if nu.is_zero() {
        return Err(Error::Precondition("nu must be nonzero".into()));
    }
    let s = nu.clone() * nu.clone() + rho.clone() * rho.clone();
    let two = int(2);
    let lead = s.clone() + two.clone() * rho.clone() + Rational::one();
    let lin = two.clone() * (s.clone() - Rational::one());
    let tail = s.clone() - two * rho.clone() + Rational::one();
    let q = |x: &Rational, y: &Rational| {
        lead.clone() * (x.clone() * x.clone() + y.clone() * y.clone()) + lin.clone() * x.clone() + int(4) * nu.clone() * y.clone() + tail.clone()
    };
    let all_positive = samples.iter().all(|(x, y)| q(x, y).is_positive());
    let discriminants_negative = samples.iter().all(|(_, y)| {
        let c = lead.clone() * y.clone() * y.clone() + int(4) * nu.clone() * y.clone() + tail.clone();
        (lin.clone() * lin.clone() - int(4) * lead.clone() * c).is_negative()
    });
    // lead = rho^2 + 2 rho + 1 + nu^2 has discriminant -4 nu^2 in rho
    let leading_positive = lead.is_positive() && (int(4) - int(4) * (Rational::one() + nu.clone() * nu.clone())).is_negative();
    let x0 = -(s - Rational::one()) / lead.clone();
    let y0 = -int(2) * nu.clone() / lead.clone();
    let square_identity = samples.iter().all(|(x, y)| {
        let (dx, dy) = (x.clone() - x0.clone(), y.clone() - y0.clone());
        q(x, y) == lead.clone() * (dx.clone() * dx + dy.clone() * dy)
    });
    Ok(QReport { samples: samples.len(), all_positive, discriminants_negative, leading_positive, square_identity, vanishing_point: (x0, y0) })
}

/// The square grid with `n` points per side spread evenly over `[lo, hi]`.
pub fn rational_grid(lo: &Rational, hi: &Rational, n: usize) -> Vec<(Rational, Rational)> {
    let step = (hi.clone() - lo.clone()) / int(n.saturating_sub(1).max(1) as i64);
    let ticks: Vec<Rational> = (0..n).map(|k| lo.clone() + step.clone() * int(k as i64)).collect();
    ticks.iter().flat_map(|x| ticks.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

/// Generators of the automorphism group of `P1 x P1` over the reals.
#[derive(Clone, Debug, PartialEq)]
pub enum F0Generator {
    /// `([u0:u1], [v0:v1]) -> ([u0:u1], [u0 v0 + u1 v1 : u1 v0 - u0 v1])`.
    Tau,
    /// Exchanges the two factors.
    Swap,
    /// Projectivities acting on each factor.
    Factors(Matrix<Rational>, Matrix<Rational>),
    Identity,
}

/// `psi^-1 g psi` with `psi = [x:y:z] -> ([x:z], [y:z])`.
pub fn f0_conjugate(g: &F0Generator) -> BirMap {
    let inv = match g {
        // tau and the swap are involutions
        F0Generator::Factors(m, n) => m.inverse().zip(n.inverse()).map(|(a, b)| F0Generator::Factors(a, b)),
        other => Some(other.clone()),
    };
    let forward = normalize_components(substituted(g));
    BirMap::new(forward, inv.map(|h| normalize_components(substituted(&h))), Vec::new()).expect("nonzero components")
}

fn substituted(g: &F0Generator) -> Components {
    let x = HomPoly3::<Rational>::var(0);
    let y = HomPoly3::var(1);
    let z = HomPoly3::var(2);
    let (u0, u1, v0, v1) = (x, z.clone(), y, z);
    let (a0, a1, b0, b1) = match g {
        F0Generator::Tau => (u0.clone(), u1.clone(), u0.clone() * v0.clone() + u1.clone() * v1.clone(), u1 * v0 - u0 * v1),
        F0Generator::Swap => (v0, v1, u0, u1),
        F0Generator::Identity => (u0, u1, v0, v1),
        F0Generator::Factors(m, n) => {
            let act = |m: &Matrix<Rational>, a: &HomPoly3<Rational>, b: &HomPoly3<Rational>| {
                (a.scale(&m[(0, 0)]) + b.scale(&m[(0, 1)]), a.scale(&m[(1, 0)]) + b.scale(&m[(1, 1)]))
            };
            let (a0, a1) = act(m, &u0, &u1);
            let (b0, b1) = act(n, &v0, &v1);
            (a0, a1, b0, b1)
        }
    };
    // psi^-1 sends ([a0:a1], [b0:b1]) to [a0 b1 : a1 b0 : a1 b1]
    reduce_components([a0 * b1.clone(), a1.clone() * b0, a1 * b1])
}

fn permutation_matrices() -> Vec<Matrix<Rational>> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    perms
        .iter()
        .map(|p| {
            let mut rows = [[0i64; 3]; 3];
            for (i, &j) in p.iter().enumerate() {
                rows[i][j] = 1;
            }
            int_matrix(rows)
        })
        .collect()
}

/// `phi` of the conjugate, written as `[P^-1, P f P^-1, P]` for a
/// coordinate permutation `P` moving it into one of the fibration groups.
pub fn f0_phi(f: &BirMap) -> Result<AbelVector> {
    if f.degree() == 1 {
        return Ok(AbelVector::zero());
    }
    for p in permutation_matrices() {
        let pg = linear_map(&p)?;
        let conj = compose_all(&[pg.map().clone(), f.clone(), pg.map().inverse()?]);
        let tag = if is_in_jstar(&conj).is_some() {
            Tag::Jstar
        } else if is_in_jcirc(&conj).is_some() {
            Tag::Jcirc
        } else {
            continue;
        };
        let mid = Generator::from_map(conj, tag)?;
        let w = Word::new(vec![
            Letter::new(pg.clone()).inverse(),
            Letter::new(mid),
            Letter::new(pg),
        ]);
        debug_assert!(maps_equal(&w.evaluate()?, f));
        return phi_word(&w);
    }
    Err(Error::Precondition("no coordinate permutation moves the map into a fibration group".into()))
}
