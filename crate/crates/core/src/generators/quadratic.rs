use super::linear::{apply_matrix, dihedral_elements, flip_matrix, real_projectivity, swap_matrix};
use super::{is_antidiagonal, is_in_jcirc, normalize_2x2, proper, sigma1_intro, GenKind, Generator, Tag};
use crate::birmap::{apply, compose, image_of_curve, BasePoint, BirMap};
use crate::error::{Error, Result};
use crate::exactalg::matrix::cross;
use crate::exactalg::Matrix;
use crate::plane::{collinear, conic_of_point, p1, p2, pi_circ, special_points, P1Point, ProjPoint};

fn matrix_map(m: &Matrix<crate::Rational>) -> BirMap {
    BirMap::from_matrix(m, "linear").expect("invertible")
}

/// Fails when `q` is collinear with two of the special points, except for
/// the pair `allowed`.
fn check_position(q: &ProjPoint, allowed: Option<usize>) -> Result<()> {
    let sp = special_points();
    let pairs = [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)];
    for (k, (a, b)) in pairs.into_iter().enumerate() {
        if Some(k) == allowed {
            continue;
        }
        if collinear(q, &sp[a], &sp[b]) {
            return Err(Error::CollinearityViolation(format!("{q} lies on the line through {} and {}", sp[a], sp[b])));
        }
    }
    Ok(())
}

fn helper_points() -> impl Iterator<Item = ProjPoint> {
    [[1, 1, 1], [1, 2, 1], [2, 1, 1], [1, -1, 1], [1, 1, 2], [2, 3, 1], [3, -2, 1]].into_iter().map(ProjPoint::real)
}

/// Quadratic element with base points `p1, conj(p1), q`.
fn quadratic_at_p1(q: &ProjPoint) -> Result<BirMap> {
    check_position(q, Some(1))?;
    let origin = ProjPoint::real([0, 0, 1]);
    let unit = ProjPoint::real([1, 0, 1]);
    let alpha = helper_points()
        .filter(|s| s != q)
        .find_map(|s| real_projectivity(&[p1(), p1().conj(), q.clone(), s], &[p1(), p1().conj(), origin.clone(), unit.clone()]).ok())
        .ok_or_else(|| Error::DegeneratePosition(format!("no frame through {q}")))?;
    let g = compose(sigma1_intro().map(), &matrix_map(&alpha));
    let t = apply(&g, &p2())?;
    let beta = real_projectivity(&[p1(), p1().conj(), t.clone(), t.conj()], &[p1(), p1().conj(), p2(), p2().conj()])?;
    let mut f = compose(&matrix_map(&beta), &g);
    let action = is_in_jcirc(&f).ok_or_else(|| Error::Inconsistent("quadratic map leaves the pencil".into()))?;
    if is_antidiagonal(&action) {
        f = compose(&matrix_map(&flip_matrix()), &f);
    }
    Ok(f)
}

/// A quadratic element of the conic-pencil group with base points
/// `p_i, conj(p_i), q` for a real point `q`.
pub fn quadratic_jcirc(i: u8, q: &ProjPoint) -> Result<Generator> {
    if !q.is_real() {
        return Err(Error::Precondition("the base point must be real".into()));
    }
    let map = match i {
        1 => quadratic_at_p1(q)?,
        2 => {
            let s = swap_matrix();
            let f1 = quadratic_at_p1(&apply_matrix(&s, q)).map_err(|e| match e {
                Error::CollinearityViolation(_) => check_position(q, Some(0)).unwrap_err(),
                e => e,
            })?;
            compose(&f1, &matrix_map(&s))
        }
        _ => return Err(Error::Precondition("i must be 1 or 2".into())),
    };
    let pi = if i == 1 { p1() } else { p2() };
    let pts = vec![proper(pi.clone(), 1), proper(pi.conj(), 1), proper(q.clone(), 1)];
    let map = map.with_provenance(vec![crate::birmap::ProvLetter { name: format!("quadratic{i}"), exponent: 1 }]);
    Ok(Generator::build(GenKind::Quadratic { i, q: q.clone() }, map, Tag::Jcirc)?.certify(pts))
}

/// A cubic element of the conic-pencil group with double point `r` and
/// simple base points at the four special points.
pub fn cubic_jcirc(r: &ProjPoint) -> Result<Generator> {
    if !r.is_real() {
        return Err(Error::Precondition("the double point must be real".into()));
    }
    check_position(r, None)?;
    let tau1 = quadratic_jcirc(1, r)?;
    let mut t1 = tau1.map().clone();
    // The lines through r and p1 are contracted to the non-real base points
    // of the inverse; make those p1, conj(p1).
    let w = ProjPoint::new([
        r.coords()[0].clone() + p1().coords()[0].clone(),
        r.coords()[1].clone() + p1().coords()[1].clone(),
        r.coords()[2].clone() + p1().coords()[2].clone(),
    ])?;
    let img = apply(&t1, &w)?;
    if img == p2() || img == p2().conj() {
        t1 = compose(&matrix_map(&swap_matrix()), &t1);
    }
    let s = apply(&t1, &ProjPoint::real([1, 0, 0]))?;
    let tau2 = quadratic_jcirc(2, &s)?;
    let f = compose(tau2.map(), &t1);
    if f.degree() != 3 {
        return Err(Error::Inconsistent(format!("expected a cubic, got degree {}", f.degree())));
    }
    let mut pts = vec![proper(r.clone(), 2)];
    pts.extend(special_points().into_iter().map(|p| proper(p, 1)));
    let f = f.with_provenance(vec![crate::birmap::ProvLetter { name: "cubic".into(), exponent: 1 }]);
    Ok(Generator::build(GenKind::Cubic { r: r.clone() }, f, Tag::Jcirc)?.certify(pts))
}

/// Splits a cubic `f` as `h o g` with `g, h` quadratic.
pub fn decompose_cubic(f: &Generator) -> Result<(Generator, Generator)> {
    if f.degree() != 3 || f.tag() != Tag::Jcirc {
        return Err(Error::Precondition("expects a cubic of the conic-pencil group".into()));
    }
    let double = f
        .base_points()?
        .iter()
        .find(|a| a.mult == 2)
        .cloned()
        .ok_or_else(|| Error::Inconsistent("a cubic has a double point".into()))?;
    let r = match double.point {
        BasePoint::Proper(r) => r,
        BasePoint::Infinitesimal(t) => return Err(Error::DeepTower(format!("the double point lies near {}", t.base()))),
    };
    let g = quadratic_jcirc(1, &r)?;
    let h = compose(f.map(), &g.map().inverse()?);
    if h.degree() != 2 {
        return Err(Error::Inconsistent(format!("the quotient has degree {}", h.degree())));
    }
    Ok((Generator::from_map(h, Tag::Jcirc)?, g))
}

fn is_reducible_value(v: &P1Point) -> bool {
    [P1Point::real(0, 1), P1Point::real(1, 0), P1Point::real(1, 1)].contains(v)
}

/// An element of degree 2 or 3 of the conic-pencil group preserving the
/// pencil conic through `q` and contracting the line through `q` and
/// `conj(p2)` onto `p1`.
pub fn deg3_fixing_conic(q: &ProjPoint) -> Result<Generator> {
    if q.is_real() {
        return Err(Error::Precondition("q must be non-real".into()));
    }
    let value = pi_circ(q)?;
    if is_reducible_value(&value) {
        return Err(Error::ReducibleConic);
    }
    let cq = conic_of_point(q)?;
    let line = cross(q.coords(), p2().conj().coords());
    let conj_line = line.clone().map(|v| v.conj());
    let r = ProjPoint::new(cross(&line, &conj_line))?;
    if !r.is_real() {
        return Err(Error::Inconsistent("the two lines meet in a non-real point".into()));
    }
    let base = if check_position(&r, None).is_ok() {
        cubic_jcirc(&r)?
    } else {
        quadratic_jcirc(2, &r)?
    };
    let quadratic = base.degree() == 2;
    for m in dihedral_elements() {
        let f = compose(&matrix_map(&m), base.map());
        if apply(&f, q)? != p1() {
            continue;
        }
        let ok = if quadratic {
            apply(&f, &p1())? == p2()
        } else {
            is_in_jcirc(&f).is_some_and(|a| normalize_2x2(&a) == Matrix::identity(2))
        };
        if ok && image_of_curve(&f, cq.poly())? == cq.poly().normalized() {
            return Generator::from_map(f, Tag::Jcirc);
        }
    }
    Err(Error::Inconsistent("no linear correction fixes the conic".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birmap::{characteristic, maps_equal};
    use crate::birmap::{base_points_of, Characteristic};
    use num_traits::Zero;

    fn sorted_points(f: &Generator) -> Vec<String> {
        let mut v: Vec<String> = base_points_of(f.map().forward()).unwrap().iter().map(|a| format!("{}x{}", a.point, a.mult)).collect();
        v.sort();
        v
    }

    fn certified(f: &Generator) -> Vec<String> {
        let mut v: Vec<String> = f.base_points().unwrap().iter().map(|a| format!("{}x{}", a.point, a.mult)).collect();
        v.sort();
        v
    }

    #[test]
    fn quadratic_examples() {
        let f = quadratic_jcirc(1, &ProjPoint::real([0, 0, 1])).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(sorted_points(&f), certified(&f));
        let g = quadratic_jcirc(2, &ProjPoint::real([1, 0, 0])).unwrap();
        assert_eq!(sorted_points(&g), certified(&g));
        assert!(matches!(quadratic_jcirc(1, &ProjPoint::real([1, 0, 0])), Err(Error::CollinearityViolation(_))));
        assert!(matches!(quadratic_jcirc(2, &ProjPoint::real([0, 0, 1])), Err(Error::CollinearityViolation(_))));
    }

    #[test]
    fn quadratic_action_matches_inverse_base_point() {
        for q in [[1, 2, 3], [2, -1, 1], [0, 1, 1], [3, 1, 2]] {
            let f = quadratic_jcirc(1, &ProjPoint::real(q)).unwrap();
            let m = f.jcirc_action().unwrap().clone();
            assert!(m[(0, 1)].is_zero() && m[(1, 0)].is_zero());
            assert!(m[(1, 1)] > crate::Rational::zero());
            let s = f.inverse_base_points().unwrap().iter().find(|a| a.point.is_real()).unwrap().point.proper().clone();
            let expected = pi_circ(&s).unwrap();
            let got = P1Point::real(1, 1).apply(&m).unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn cubic_examples() {
        for r in [[1, 1, 1], [2, 3, 1], [1, -2, 3]] {
            let f = cubic_jcirc(&ProjPoint::real(r)).unwrap();
            assert_eq!(characteristic(f.map()).unwrap(), Characteristic { degree: 3, mults: vec![2, 1, 1, 1, 1] });
            assert_eq!(sorted_points(&f), certified(&f));
            assert!(super::super::is_permutation_up_to_scalar(f.jcirc_action().unwrap()));
            let (h, g) = decompose_cubic(&f).unwrap();
            assert!(maps_equal(&compose(h.map(), g.map()), f.map()));
        }
        assert!(matches!(cubic_jcirc(&ProjPoint::real([1, 0, 0])), Err(Error::CollinearityViolation(_))));
        // a double point on x = 0 would force that line into the system
        assert!(matches!(cubic_jcirc(&ProjPoint::real([0, 0, 1])), Err(Error::CollinearityViolation(_))));
    }

    #[test]
    fn conic_fixing_maps() {
        for q in [[(1, 0), (1, 0), (0, 1)], [(2, 1), (1, 0), (1, 0)]] {
            let q = ProjPoint::from_gauss(q);
            let f = deg3_fixing_conic(&q).unwrap();
            assert!(f.degree() == 2 || f.degree() == 3);
            let cq = conic_of_point(&q).unwrap();
            assert_eq!(image_of_curve(f.map(), cq.poly()).unwrap(), cq.poly().normalized());
        }
        assert!(deg3_fixing_conic(&ProjPoint::real([1, 2, 3])).is_err());
    }
}
