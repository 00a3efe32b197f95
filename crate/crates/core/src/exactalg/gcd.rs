//! Multivariate gcd for homogeneous trivariate polynomials.
//!
//! Powers of `z` are split off, the rest is dehomogenised at `z = 1` and
//! handled as a polynomial in `y` over `F[x]`: contents are removed
//! recursively, the primitive parts are specialised at `x = a` for a
//! sequence of points, the univariate gcds are interpolated back and the
//! candidate is confirmed by exact division.

use super::hompoly::HomPoly3;
use super::scalar::Field;
use super::unipoly::UniPoly;

/// Polynomial in `y` whose coefficients are polynomials in `x`.
type YPoly<F> = Vec<UniPoly<F>>;

const MAX_POINTS: usize = 4000;

fn trim<F: Field>(mut p: YPoly<F>) -> YPoly<F> {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

fn dehomogenize<F: Field>(p: &HomPoly3<F>) -> YPoly<F> {
    let mut out: YPoly<F> = Vec::new();
    for (e, c) in p.terms() {
        let b = e[1] as usize;
        if out.len() <= b {
            out.resize(b + 1, UniPoly::zero());
        }
        out[b] = out[b].clone() + UniPoly::monomial(c.clone(), e[0] as usize);
    }
    trim(out)
}

fn total_degree<F: Field>(p: &YPoly<F>) -> u32 {
    p.iter()
        .enumerate()
        .filter_map(|(b, c)| c.degree().map(|a| (a + b) as u32))
        .max()
        .unwrap_or(0)
}

fn homogenize<F: Field>(p: &YPoly<F>, deg: u32) -> HomPoly3<F> {
    let mut terms = Vec::new();
    for (b, c) in p.iter().enumerate() {
        for (a, v) in c.coeffs().iter().enumerate() {
            if !v.is_zero() {
                let (a, b) = (a as u32, b as u32);
                terms.push(([a, b, deg - a - b], v.clone()));
            }
        }
    }
    HomPoly3::from_terms(deg, terms)
}

fn content<F: Field>(p: &YPoly<F>) -> UniPoly<F> {
    let mut g = UniPoly::zero();
    for c in p {
        g = g.gcd(c);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn divide_coeffs<F: Field>(p: &YPoly<F>, c: &UniPoly<F>) -> YPoly<F> {
    p.iter().map(|a| a.div_exact(c).expect("content divides")).collect()
}

fn deg_x<F: Field>(p: &YPoly<F>) -> usize {
    p.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
}

fn eval_x<F: Field>(p: &YPoly<F>, a: &F) -> UniPoly<F> {
    UniPoly::new(p.iter().map(|c| c.eval(a)).collect())
}

/// Exact division in `F[x][y]`.
fn div_exact_y<F: Field>(a: &YPoly<F>, b: &YPoly<F>) -> Option<YPoly<F>> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    if r.len() < b.len() {
        return r.iter().all(UniPoly::is_zero).then(Vec::new);
    }
    let mut q = vec![UniPoly::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let top = r[k + db].clone();
        if top.is_zero() {
            continue;
        }
        let c = top.div_exact(&lb)?;
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = r[k + j].clone() - c.clone() * bc.clone();
        }
        q[k] = c;
    }
    r.iter().all(UniPoly::is_zero).then_some(q)
}

pub(crate) fn interpolate<F: Field>(xs: &[F], ys: &[F]) -> UniPoly<F> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (coef[i].clone() - coef[i - 1].clone()) / (xs[i].clone() - xs[i - j].clone());
        }
    }
    let mut p = UniPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UniPoly::new(vec![-xs[i].clone(), F::one()]);
        p = p * lin + UniPoly::constant(coef[i].clone());
    }
    p
}

fn sample_point<F: Field>(k: usize) -> F {
    let m = (k as i64 + 1) / 2;
    F::from_int(if k % 2 == 1 { m } else { -m })
}

fn gcd_xy<F: Field>(a: &YPoly<F>, b: &YPoly<F>) -> YPoly<F> {
    let ca = content(a);
    let cb = content(b);
    let c = ca.gcd(&cb);
    let a1 = divide_coeffs(a, &ca);
    let b1 = divide_coeffs(b, &cb);
    if a1.len() == 1 || b1.len() == 1 {
        return vec![c];
    }
    let la = a1.last().unwrap().clone();
    let lb = b1.last().unwrap().clone();
    let gamma = la.gcd(&lb);
    let bound = gamma.degree().unwrap_or(0) + deg_x(&a1).min(deg_x(&b1));
    let mut best = usize::MAX;
    let mut pts: Vec<F> = Vec::new();
    let mut vals: Vec<UniPoly<F>> = Vec::new();
    for k in 0..MAX_POINTS {
        let x0: F = sample_point(k);
        if la.eval(&x0).is_zero() || lb.eval(&x0).is_zero() {
            continue;
        }
        let g = eval_x(&a1, &x0).gcd(&eval_x(&b1, &x0));
        let e = g.degree().unwrap_or(0);
        if e == 0 {
            return vec![c];
        }
        if e > best {
            continue;
        }
        if e < best {
            best = e;
            pts.clear();
            vals.clear();
        }
        vals.push(g.scale(&gamma.eval(&x0)));
        pts.push(x0);
        if pts.len() > bound {
            let h: YPoly<F> = (0..=e)
                .map(|j| {
                    let ys: Vec<F> = vals.iter().map(|v| v.coeff(j)).collect();
                    interpolate(&pts, &ys)
                })
                .collect();
            let h = trim(h);
            let hc = content(&h);
            let hp = divide_coeffs(&h, &hc);
            if div_exact_y(&a1, &hp).is_some() && div_exact_y(&b1, &hp).is_some() {
                return hp.into_iter().map(|p| p * c.clone()).collect();
            }
        }
    }
    panic!("gcd interpolation did not stabilise");
}

/// Greatest common divisor, normalised so the lex-leading coefficient is one.
pub fn gcd<F: Field>(p: &HomPoly3<F>, q: &HomPoly3<F>) -> HomPoly3<F> {
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    if p.degree() == 0 || q.degree() == 0 {
        return HomPoly3::one();
    }
    let zp = p.min_exp(2);
    let zq = q.min_exp(2);
    let zm = zp.min(zq);
    let g = gcd_xy(&dehomogenize(&p.shift_down(2, zp)), &dehomogenize(&q.shift_down(2, zq)));
    let d = total_degree(&g);
    let mut out = homogenize(&g, d);
    if zm > 0 {
        out = out * HomPoly3::var(2).pow(zm);
    }
    out.normalized()
}

/// Gcd of several polynomials.
pub fn gcd_many<F: Field>(ps: &[HomPoly3<F>]) -> HomPoly3<F> {
    let mut g = HomPoly3::zero(0);
    for p in ps {
        g = gcd(&g, p);
        if !g.is_zero() && g.degree() == 0 {
            break;
        }
    }
    g
}
