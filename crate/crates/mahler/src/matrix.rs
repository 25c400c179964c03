//! Matrices of rational functions and first-order Mahler systems.

use std::fmt;

use crate::error::{MahlerError, Result};
use crate::rat::Rat;
use crate::ratfun::RatFun;

/// Row-major rectangular matrix over [`RatFun`].
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![RatFun::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = RatFun::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Mat> {
        if rows.is_empty() {
            return Err(MahlerError::ShapeMismatch("empty matrix".into()));
        }
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(MahlerError::NonRectangularMatrix);
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RatFun {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut RatFun {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFun> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        self.check_same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        self.check_same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(MahlerError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let sum = out.at(i, j) + &(a * b);
                    *out.at_mut(i, j) = sum;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFun) -> Mat {
        self.map(|e| e * c)
    }

    pub fn scale_rat(&self, c: &Rat) -> Mat {
        let c = RatFun::constant(c.clone());
        self.scale(&c)
    }

    pub fn neg(&self) -> Mat {
        self.map(|e| -e)
    }

    /// Entrywise Mahler substitution.
    pub fn mahler_substitute(&self, p: u32) -> Mat {
        self.map(|e| e.mahler_substitute(p))
    }

    /// Entrywise Euler derivation.
    pub fn theta_derive(&self) -> Mat {
        self.map(|e| e.theta_derive())
    }

    /// Determinant by Gaussian elimination over the function field.
    pub fn det(&self) -> Result<RatFun> {
        if !self.is_square() {
            return Err(MahlerError::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut det = RatFun::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.at(r, col).is_zero());
            let Some(pr) = pivot_row else {
                return Ok(RatFun::zero());
            };
            if pr != col {
                for j in 0..n {
                    let tmp = work.at(pr, j).clone();
                    *work.at_mut(pr, j) = work.at(col, j).clone();
                    *work.at_mut(col, j) = tmp;
                }
                det = -&det;
            }
            let pivot = work.at(col, col).clone();
            det = &det * &pivot;
            for r in col + 1..n {
                if work.at(r, col).is_zero() {
                    continue;
                }
                let factor = work.at(r, col) / &pivot;
                for j in col..n {
                    let next = work.at(r, j) - &(&factor * work.at(col, j));
                    *work.at_mut(r, j) = next;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination; [`MahlerError::SingularSystem`] when singular.
    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(MahlerError::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.at(r, col).is_zero());
            let Some(pr) = pivot_row else {
                return Err(MahlerError::SingularSystem);
            };
            if pr != col {
                for j in 0..n {
                    let t = work.at(pr, j).clone();
                    *work.at_mut(pr, j) = work.at(col, j).clone();
                    *work.at_mut(col, j) = t;
                    let t = inv.at(pr, j).clone();
                    *inv.at_mut(pr, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = t;
                }
            }
            let pivot_inv = work.at(col, col).inv()?;
            for j in 0..n {
                let w = work.at(col, j) * &pivot_inv;
                *work.at_mut(col, j) = w;
                let v = inv.at(col, j) * &pivot_inv;
                *inv.at_mut(col, j) = v;
            }
            for r in 0..n {
                if r == col || work.at(r, col).is_zero() {
                    continue;
                }
                let factor = work.at(r, col).clone();
                for j in 0..n {
                    let w = work.at(r, j) - &(&factor * work.at(col, j));
                    *work.at_mut(r, j) = w;
                    let v = inv.at(r, j) - &(&factor * inv.at(col, j));
                    *inv.at_mut(r, j) = v;
                }
            }
        }
        Ok(inv)
    }

    /// Block-diagonal juxtaposition.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut out = Mat::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out
    }

    fn check_same_shape(&self, rhs: &Mat) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MahlerError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat({self})")
    }
}

/// First-order Mahler system `phi(Y) = A Y` with an invertible coefficient
/// matrix and radix `p >= 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MahlerSystem {
    matrix: Mat,
    p: u32,
}

impl MahlerSystem {
    pub fn new(matrix: Mat, p: u32) -> Result<MahlerSystem> {
        if p < 2 {
            return Err(MahlerError::InvalidBounds(format!(
                "Mahler radix must be at least 2, got {p}"
            )));
        }
        if !matrix.is_square() {
            return Err(MahlerError::ShapeMismatch(
                "a Mahler system needs a square matrix".into(),
            ));
        }
        if matrix.det()?.is_zero() {
            return Err(MahlerError::SingularSystem);
        }
        Ok(MahlerSystem { matrix, p })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn det(&self) -> RatFun {
        self.matrix.det().expect("square by construction")
    }

    /// Block-diagonal sum of two systems over the same radix.
    pub fn direct_sum(&self, other: &MahlerSystem) -> Result<MahlerSystem> {
        if self.p != other.p {
            return Err(MahlerError::RadixMismatch(self.p, other.p));
        }
        Ok(MahlerSystem {
            matrix: self.matrix.block_diag(&other.matrix),
            p: self.p,
        })
    }
}

impl fmt::Display for MahlerSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi(Y) = {} Y  (p = {})", self.matrix, self.p)
    }
}

/// The Baum-Sweet system matrix `[[0, 1], [1, -z]]` at `p = 2`.
pub fn baum_sweet_system() -> MahlerSystem {
    let z = RatFun::var();
    let m = Mat::from_rows(vec![
        vec![RatFun::zero(), RatFun::one()],
        vec![RatFun::one(), -&z],
    ])
    .expect("rectangular");
    MahlerSystem::new(m, 2).expect("invertible")
}

/// The Rudin-Shapiro system matrix `1/2 [[1, 1], [1/z, -1/z]]` at `p = 2`.
pub fn rudin_shapiro_system() -> MahlerSystem {
    let half = RatFun::new(
        crate::poly::Poly::one(),
        crate::poly::Poly::constant(crate::rat::rat_int(2)),
    )
    .expect("nonzero denominator");
    let inv_z = RatFun::monomial_zm(-1);
    let m = Mat::from_rows(vec![
        vec![half.clone(), half.clone()],
        vec![&half * &inv_z, -&(&half * &inv_z)],
    ])
    .expect("rectangular");
    MahlerSystem::new(m, 2).expect("invertible")
}
