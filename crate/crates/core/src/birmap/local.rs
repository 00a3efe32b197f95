//! Affine bivariate polynomials used for local analysis at a point and in
//! blow-up charts.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactalg::{Field, GaussRational, HomPoly3, UniPoly};
use crate::plane::ProjPoint;

/// Polynomial in two affine variables `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalPoly {
    terms: BTreeMap<(u32, u32), GaussRational>,
}

impl LocalPoly {
    pub fn zero() -> Self {
        LocalPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0), c);
        p
    }

    /// `a u + b v`.
    pub fn linear(a: GaussRational, b: GaussRational) -> Self {
        let mut p = Self::zero();
        p.add_term((1, 0), a);
        p.add_term((0, 1), b);
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: GaussRational) {
        if c.is_zero() {
            return;
        }
        let s = self.terms.remove(&e).unwrap_or_else(GaussRational::zero) + c;
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }

    /// Coefficients `c_j` of the degree-`m` part `sum c_j u^(m-j) v^j`.
    pub fn form(&self, m: u32) -> Vec<GaussRational> {
        (0..=m).map(|j| self.terms.get(&(m - j, j)).cloned().unwrap_or_else(GaussRational::zero)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &other.terms {
                out.add_term((a + d, b + e), c.clone() * f.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Substitutes `u -> lu`, `v -> lv`.
    pub fn substitute(&self, lu: &LocalPoly, lv: &LocalPoly) -> Self {
        let max_u = self.terms.keys().map(|e| e.0).max().unwrap_or(0) as usize;
        let max_v = self.terms.keys().map(|e| e.1).max().unwrap_or(0) as usize;
        let pu = powers(lu, max_u);
        let pv = powers(lv, max_v);
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            let t = pu[*a as usize].mul(&pv[*b as usize]);
            for (e, tc) in t.terms {
                out.add_term(e, tc * c.clone());
            }
        }
        out
    }

    /// Strict transform in the chart `u = U, v = U s` after dividing by `U^m`.
    pub fn blow_up(&self, m: u32) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            assert!(a + b >= m, "order below the divided multiplicity");
            out.add_term((a + b - m, *b), c.clone());
        }
        out
    }
}

fn powers(p: &LocalPoly, n: usize) -> Vec<LocalPoly> {
    let mut out = vec![LocalPoly::constant(GaussRational::one())];
    for k in 1..=n {
        out.push(out[k - 1].mul(p));
    }
    out
}

/// Local expansion of `p` at `q` in the coordinates complementary to the
/// chart of `q`, so `q` becomes the origin. Also returns those two indices.
pub fn localize<F: Field>(p: &HomPoly3<F>, q: &ProjPoint) -> (LocalPoly, [usize; 2]) {
    let k = q.chart();
    let others: [usize; 2] = match k {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    // x_k = 1, x_a = q_a + u, x_b = q_b + v
    let c = q.coords();
    let mut subs: [LocalPoly; 3] = Default::default();
    subs[k] = LocalPoly::constant(GaussRational::one());
    subs[others[0]] = LocalPoly::constant(c[others[0]].clone()).add(&LocalPoly::linear(GaussRational::one(), GaussRational::zero()));
    subs[others[1]] = LocalPoly::constant(c[others[1]].clone()).add(&LocalPoly::linear(GaussRational::zero(), GaussRational::one()));
    let pw: Vec<Vec<LocalPoly>> = subs.iter().map(|s| powers(s, p.degree() as usize)).collect();
    let mut out = LocalPoly::zero();
    for (e, coef) in p.terms() {
        let t = pw[0][e[0] as usize].mul(&pw[1][e[1] as usize]).mul(&pw[2][e[2] as usize]);
        for (te, tc) in t.terms {
            out.add_term(te, tc * coef.to_gauss());
        }
    }
    (out, others)
}

impl Default for LocalPoly {
    fn default() -> Self {
        Self::zero()
    }
}

/// Common zeros on `P^1` of binary forms given by coefficient lists
/// `sum c_j u^(m-j) v^j`. Returns directions `(alpha, beta)` and the number
/// of common roots outside `Q(i)`.
pub fn common_directions(forms: &[Vec<GaussRational>]) -> (Vec<(GaussRational, GaussRational)>, usize) {
    let forms: Vec<&Vec<GaussRational>> = forms.iter().filter(|f| f.iter().any(|c| !c.is_zero())).collect();
    if forms.is_empty() {
        return (Vec::new(), 0);
    }
    let mut out = Vec::new();
    // [0:1] is a root when every top coefficient vanishes.
    if forms.iter().all(|f| f.last().unwrap().is_zero()) {
        out.push((GaussRational::zero(), GaussRational::one()));
    }
    let mut g: UniPoly<GaussRational> = UniPoly::zero();
    for f in &forms {
        g = g.gcd(&UniPoly::new(f.to_vec()));
    }
    let (roots, unresolved) = crate::exactalg::roots::gaussian_roots(&g);
    for s in roots {
        out.push((GaussRational::one(), s));
    }
    (out, unresolved)
}
