//! Projectivities determined by four points, and the linear elements of the
//! conic-pencil group.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::scalar::int;
use crate::exactalg::{Field, GaussRational, Matrix, Rational};
use crate::plane::ProjPoint;

/// Columns `p0, p1, p2` scaled so that they sum to `p3`.
fn frame(p: &[ProjPoint; 4]) -> Result<Matrix<GaussRational>> {
    let cols = Matrix::from_rows((0..3).map(|i| (0..3).map(|j| p[j].coords()[i].clone()).collect()).collect());
    let inv = cols
        .inverse()
        .ok_or_else(|| Error::DegeneratePosition(format!("{}, {}, {} are collinear", p[0], p[1], p[2])))?;
    let lambda = inv.mul_vec(p[3].coords());
    if lambda.iter().any(Zero::is_zero) {
        return Err(Error::DegeneratePosition(format!("{} is collinear with two of the frame points", p[3])));
    }
    let mut m = cols;
    for (j, l) in lambda.iter().enumerate() {
        for i in 0..3 {
            m[(i, j)] = m[(i, j)].clone() * l.clone();
        }
    }
    Ok(m)
}

/// The projectivity sending `src[k]` to `dst[k]` for `k = 0..4`.
pub fn projectivity(src: &[ProjPoint; 4], dst: &[ProjPoint; 4]) -> Result<Matrix<GaussRational>> {
    let a = frame(src)?;
    let b = frame(dst)?;
    Ok(b.mul(&a.inverse().expect("frames are invertible")))
}

/// Like [`projectivity`] but insisting on a real matrix, scaled so its
/// first nonzero entry is one.
pub fn real_projectivity(src: &[ProjPoint; 4], dst: &[ProjPoint; 4]) -> Result<Matrix<Rational>> {
    let m = projectivity(src, dst)?;
    to_real(&m).ok_or_else(|| Error::DegeneratePosition("the projectivity is not real".into()))
}

pub fn to_real(m: &Matrix<GaussRational>) -> Option<Matrix<Rational>> {
    let rows = m.to_rows();
    let lead = rows.iter().flatten().find(|v| !v.is_zero())?.clone();
    let scaled: Vec<Vec<GaussRational>> = rows.iter().map(|r| r.iter().map(|v| v.clone() / lead.clone()).collect()).collect();
    if scaled.iter().flatten().any(|v| !v.is_real()) {
        return None;
    }
    Some(Matrix::from_rows(scaled.into_iter().map(|r| r.into_iter().map(|v| v.re).collect()).collect()))
}

pub fn int_matrix(rows: [[i64; 3]; 3]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
}

/// `[x:y:z] -> [z:-y:x]`, exchanging `p1` and `p2`.
pub fn swap_matrix() -> Matrix<Rational> {
    int_matrix([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
}

/// `[x:y:z] -> [-x:y:z]`, exchanging `p1` and `conj(p1)`.
pub fn flip_matrix() -> Matrix<Rational> {
    int_matrix([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
}

fn same_up_to_scalar(a: &Matrix<Rational>, b: &Matrix<Rational>) -> bool {
    let (ra, rb) = (a.to_rows(), b.to_rows());
    let (fa, fb): (Vec<&Rational>, Vec<&Rational>) = (ra.iter().flatten().collect(), rb.iter().flatten().collect());
    (0..9).all(|i| (0..9).all(|j| fa[i].clone() * fb[j].clone() == fa[j].clone() * fb[i].clone()))
}

/// The eight projectivities generated by [`swap_matrix`] and [`flip_matrix`].
pub fn dihedral_elements() -> Vec<Matrix<Rational>> {
    let gens = [swap_matrix(), flip_matrix()];
    let mut out = vec![Matrix::identity(3)];
    let mut k = 0;
    while k < out.len() {
        for g in &gens {
            let m = g.mul(&out[k]);
            if !out.iter().any(|e| same_up_to_scalar(e, &m)) {
                out.push(m);
            }
        }
        k += 1;
    }
    out
}

/// Image of a point under a real matrix.
pub fn apply_matrix(m: &Matrix<Rational>, p: &ProjPoint) -> ProjPoint {
    let v = m.map(|r| GaussRational::from_rational(r.clone())).mul_vec(p.coords());
    ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()]).expect("invertible matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{p1, p2};

    #[test]
    fn projectivity_moves_frames() {
        let src = [p1(), p1().conj(), ProjPoint::real([1, 2, 3]), ProjPoint::real([1, 1, 1])];
        let dst = [p1(), p1().conj(), ProjPoint::real([0, 0, 1]), ProjPoint::real([1, 0, 1])];
        let m = real_projectivity(&src, &dst).unwrap();
        for k in 0..4 {
            assert_eq!(apply_matrix(&m, &src[k]), dst[k]);
        }
    }

    #[test]
    fn collinear_frames_are_rejected() {
        let src = [ProjPoint::real([1, 0, 0]), ProjPoint::real([0, 1, 0]), ProjPoint::real([1, 1, 0]), ProjPoint::real([0, 0, 1])];
        let dst = src.clone();
        assert!(matches!(projectivity(&src, &dst), Err(Error::DegeneratePosition(_))));
    }

    #[test]
    fn dihedral_group_permutes_special_points() {
        let els = dihedral_elements();
        assert_eq!(els.len(), 8);
        let special = crate::plane::special_points();
        for m in &els {
            for s in &special {
                assert!(special.contains(&apply_matrix(m, s)));
            }
        }
        assert_eq!(apply_matrix(&swap_matrix(), &p1()), p2());
    }
}
