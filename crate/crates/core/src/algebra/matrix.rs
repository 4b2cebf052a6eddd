//! 3×3 matrices with entries in the algebra.

use super::{Algebra, Element, XiWord};
use crate::error::{Error, Result};

pub type Matrix3 = [[Element; 3]; 3];

pub fn mat_mul(alg: &Algebra, a: &Matrix3, b: &Matrix3) -> Result<Matrix3> {
    let mut out: Matrix3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                if a[i][k].is_zero() || b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &alg.mul(&a[i][k], &b[k][j])?;
            }
        }
    }
    Ok(out)
}

pub fn is_identity(m: &Matrix3) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { m[i][j] == Element::one() } else { m[i][j].is_zero() }))
}

/// Inverse of a single-term element built from invertible letters.
pub fn invert_term(alg: &Algebra, e: &Element) -> Result<Element> {
    let mut it = e.terms();
    let (m, c) = match (it.next(), it.next()) {
        (Some(t), None) => t,
        _ => return Err(Error::NotInvertible(e.to_string())),
    };
    if m.xp != 0 || m.xm != 0 || m.xi != XiWord::Empty {
        return Err(Error::NotInvertible(e.to_string()));
    }
    let inv = alg.product(&[&alg.x0(-m.x0), &alg.r(-m.r), &alg.lam(-m.lam)])?;
    Ok(inv.scale(&c.inv()?))
}

fn is_lower(m: &Matrix3) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| m[i][j].is_zero()))
}

fn reversed(m: &Matrix3) -> Matrix3 {
    let mut out: Matrix3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[2 - i][2 - j].clone();
        }
    }
    out
}

fn triangular(m: &Matrix3) -> Result<Option<bool>> {
    if is_lower(m) {
        Ok(Some(true))
    } else if is_lower(&reversed(m)) {
        Ok(Some(false))
    } else {
        Err(Error::NotInvertible("matrix is not triangular".into()))
    }
}

/// `X` with `X T = 1`, for triangular `T` with invertible diagonal.
pub fn left_inverse(alg: &Algebra, t: &Matrix3) -> Result<Matrix3> {
    if triangular(t)? == Some(false) {
        return Ok(reversed(&left_inverse(alg, &reversed(t))?));
    }
    let diag: Vec<Element> = (0..3).map(|j| invert_term(alg, &t[j][j])).collect::<Result<_>>()?;
    let mut x: Matrix3 = Default::default();
    for a in 0..3 {
        x[a][a] = diag[a].clone();
        for b in (0..a).rev() {
            let mut acc = Element::zero();
            for j in b + 1..=a {
                acc = acc + alg.mul(&x[a][j], &t[j][b])?;
            }
            x[a][b] = -alg.mul(&acc, &diag[b])?;
        }
    }
    Ok(x)
}

/// `X` with `T X = 1`, for triangular `T` with invertible diagonal.
pub fn right_inverse(alg: &Algebra, t: &Matrix3) -> Result<Matrix3> {
    if triangular(t)? == Some(false) {
        return Ok(reversed(&right_inverse(alg, &reversed(t))?));
    }
    let diag: Vec<Element> = (0..3).map(|j| invert_term(alg, &t[j][j])).collect::<Result<_>>()?;
    let mut x: Matrix3 = Default::default();
    for b in 0..3 {
        x[b][b] = diag[b].clone();
        for i in b + 1..3 {
            let mut acc = Element::zero();
            for j in b..i {
                acc = acc + alg.mul(&t[i][j], &x[j][b])?;
            }
            x[i][b] = -alg.mul(&diag[i], &acc)?;
        }
    }
    Ok(x)
}

/// `Mᵀ`.
pub fn transpose(m: &Matrix3) -> Matrix3 {
    let mut out: Matrix3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i].clone();
        }
    }
    out
}
