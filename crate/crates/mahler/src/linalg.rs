//! Exact linear algebra over the rationals, plus modular rank certificates.
//!
//! The nullspace and affine solves run fully over `Rat`. For the large
//! falsifier matrices, `rank_mod` gives a cheap proof of *trivial* nullspace:
//! a primitive integer kernel vector survives reduction modulo any prime, so
//! full column rank modulo one prime already forces full column rank over the
//! rationals. The converse direction is never used; whenever the modular rank
//! is deficient the exact rational elimination runs.

use num_traits::{One, Zero};

use crate::rat::{inv_mod, mul_mod, rat_mod, Rat};

/// Reduced row echelon form in place; returns the pivot column of each
/// processed row, in order.
#[allow(clippy::needless_range_loop)] // row operations index two rows at once
pub fn rref(mat: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, pr);
        let inv = Rat::one() / mat[row][col].clone();
        for j in col..cols {
            let v = &mat[row][j] * &inv;
            mat[row][j] = v;
        }
        for r in 0..rows {
            if r == row || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for j in col..cols {
                let delta = &factor * &mat[row][j];
                mat[r][j] = &mat[r][j] - &delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// A basis of the right nullspace of `mat`, one vector per free column.
pub fn nullspace(mat: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if mat.is_empty() {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut work: Vec<Vec<Rat>> = mat.to_vec();
    let pivots = rref(&mut work);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One exact solution of `mat * x = rhs` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve_affine(mat: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(mat.len(), rhs.len(), "row count mismatch");
    if mat.is_empty() {
        return Some(Vec::new());
    }
    let cols = mat[0].len();
    let mut work: Vec<Vec<Rat>> = mat
        .iter()
        .zip(rhs.iter())
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut work);
    // A pivot in the augmented column means inconsistency.
    if pivots.last().is_some_and(|&c| c == cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = work[r][cols].clone();
    }
    Some(x)
}

/// Column rank of the rational matrix modulo `p`.
///
/// Returns `None` when some denominator vanishes modulo `p`; the caller
/// should retry with a different prime.
pub fn rank_mod(mat: &[Vec<Rat>], p: u64) -> Option<usize> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(mat.len());
    for row in mat {
        let mut r = Vec::with_capacity(row.len());
        for v in row {
            r.push(rat_mod(v, p)?);
        }
        rows.push(r);
    }
    Some(rank_mod_rows(rows, p))
}

/// Row-echelon rank over `F_p` for an already-reduced matrix.
#[allow(clippy::needless_range_loop)] // row operations index two rows at once
pub fn rank_mod_rows(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][col], p);
        for j in col..cols {
            rows[rank][j] = mul_mod(rows[rank][j], inv, p);
        }
        for r in 0..nrows {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            for j in col..cols {
                let sub = mul_mod(factor, rows[rank][j], p);
                rows[r][j] = (rows[r][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Incremental staircase basis over `F_p`, used to certify full column rank
/// without materializing the whole elimination.
pub struct EchelonModP {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
}

impl EchelonModP {
    pub fn new(p: u64) -> EchelonModP {
        EchelonModP {
            p,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis and inserts it when independent;
    /// returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        // Rows are kept in ascending pivot order with zeros left of their
        // pivot, so a single ascending pass fully reduces the new row.
        for (r, &pc) in self.pivot_cols.iter().enumerate() {
            if row[pc] != 0 {
                let factor = row[pc];
                for (v, w) in row.iter_mut().zip(self.rows[r].iter()).skip(pc) {
                    *v = (*v + p - mul_mod(factor, *w, p)) % p;
                }
            }
        }
        let Some(c) = row.iter().position(|&v| v != 0) else {
            return false;
        };
        let inv = inv_mod(row[c], p);
        for v in row.iter_mut().skip(c) {
            *v = mul_mod(*v, inv, p);
        }
        let at = self.pivot_cols.partition_point(|&pc| pc < c);
        self.pivot_cols.insert(at, c);
        self.rows.insert(at, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_int, MOD_PRIMES};

    fn rmat(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect()
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        // x + y + z = 0, x - y = 0 -> kernel spanned by (1, 1, -2)
        let m = rmat(&[&[1, 1, 1], &[1, -1, 0]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(&v[0] + &v[1] + &v[2], rat_int(0));
        assert_eq!(&v[0] - &v[1], rat_int(0));
    }

    #[test]
    fn affine_solve_and_inconsistency() {
        let m = rmat(&[&[1, 1], &[1, -1]]);
        let x = solve_affine(&m, &[rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);

        let m = rmat(&[&[1, 1], &[2, 2]]);
        assert!(solve_affine(&m, &[rat_int(1), rat_int(3)]).is_none());
    }

    #[test]
    fn modular_rank_matches_exact_rank() {
        let m = rmat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank_mod(&m, MOD_PRIMES[0]), Some(2));
        let mut work = m.clone();
        assert_eq!(rref(&mut work).len(), 2);
    }
}
