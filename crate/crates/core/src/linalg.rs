//! Exact linear algebra: fraction-free determinants over integral domains and
//! Gaussian elimination over the fraction field.

use crate::error::{Result, TlError};
use crate::ring::{IntPoly, LaurentPoly, RatFunc};

/// The operations fraction-free elimination needs from an integral domain.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient by a divisor known to divide `self` exactly.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactRing for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("Bareiss division is exact")
    }
}

impl ExactRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("Bareiss division is exact")
    }
}

impl ExactRing for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn bareiss_det<R: ExactRing>(matrix: &[Vec<R>]) -> Result<R> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(TlError::InvalidIndex {
            index: n,
            range: "square matrix".into(),
        });
    }
    if n == 0 {
        return Ok(R::one());
    }
    let mut a: Vec<Vec<R>> = matrix.to_vec();
    let mut prev = R::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let p = &pivot_row[k];
        for row in tail.iter_mut() {
            let rk = row[k].clone();
            for j in k + 1..n {
                let v = p.mul(&row[j]).sub(&rk.mul(&pivot_row[j]));
                row[j] = if k == 0 { v } else { v.div_exact(&prev) };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Solves `A x = b` over the fraction field. The system may be
/// overdetermined but must be consistent with a unique solution.
pub fn solve(a: &[Vec<RatFunc>], b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let rows = a.len();
    if b.len() != rows {
        return Err(TlError::InvalidIndex {
            index: b.len(),
            range: format!("right-hand side of length {rows}"),
        });
    }
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<RatFunc>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            return Err(TlError::Verification(format!("column {c} has no pivot")));
        };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for j in c..=cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return Err(TlError::Verification("inconsistent system".into()));
    }
    Ok((0..cols).map(|c| m[c][cols].clone()).collect())
}
