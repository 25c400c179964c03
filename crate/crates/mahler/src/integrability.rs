//! Rational solutions of the matrix isomonodromy equations.
//!
//! Plain form:      `p * phi(B) = A B A^{-1} + theta(A) A^{-1}`
//! Traceless form:  the same right-hand side minus
//!                  `(1/n) * theta(det A) * det(A)^{-1} * I_n`.
//!
//! The search runs by undetermined coefficients: the denominator ansatz is the
//! least common multiple of the denominators of `A`, `A^{-1}`, `theta(A)` and
//! their Mahler images up to an escalation-controlled level, numerator degrees
//! are capped by the bounds, and the coefficient-matching system is solved
//! exactly over the rationals.

use num_traits::{One, Zero};

use crate::bounds::{SolveBounds, SolveOutcome};
use crate::error::{MahlerError, Result};
use crate::linalg::solve_affine;
use crate::matrix::{MahlerSystem, Mat};
use crate::poly::Poly;
use crate::rat::{rat_int, Rat};
use crate::ratfun::RatFun;

/// True iff the selected matrix equation holds as an identity of rational
/// functions.
pub fn verify_integrability(sys: &MahlerSystem, b: &Mat, traceless: bool) -> Result<bool> {
    let n = sys.dim();
    if b.rows() != n || b.cols() != n {
        return Err(MahlerError::ShapeMismatch(format!(
            "system is {n}x{n}, candidate is {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let rhs = rhs_for(sys, b, traceless)?;
    let lhs = b
        .mahler_substitute(sys.p())
        .scale_rat(&rat_int(sys.p() as i64));
    Ok(lhs == rhs)
}

fn rhs_for(sys: &MahlerSystem, b: &Mat, traceless: bool) -> Result<Mat> {
    let a = sys.matrix();
    let a_inv = a.inverse()?;
    let mut rhs = a.mul(b)?.mul(&a_inv)?.add(&a.theta_derive().mul(&a_inv)?)?;
    if traceless {
        rhs = rhs.sub(&trace_correction(sys)?)?;
    }
    Ok(rhs)
}

/// `(1/n) * theta(det A)/det A * I_n`.
fn trace_correction(sys: &MahlerSystem) -> Result<Mat> {
    let det = sys.det();
    let log_det = &det.theta_derive() / &det;
    let n_inv = RatFun::constant(Rat::one() / rat_int(sys.dim() as i64));
    Ok(Mat::identity(sys.dim()).scale(&(&log_det * &n_inv)))
}

pub fn solve_integrability(
    sys: &MahlerSystem,
    traceless: bool,
    bounds: &SolveBounds,
) -> Result<SolveOutcome<Mat>> {
    let n = sys.dim();
    let p = sys.p();
    let a = sys.matrix();
    let a_inv = a.inverse()?;
    let theta_a = a.theta_derive();

    // RHS data R = theta(A) A^{-1} [- trace correction].
    let mut r = theta_a.mul(&a_inv)?;
    if traceless {
        r = r.sub(&trace_correction(sys)?)?;
    }

    // Conjugation kernels G[(i,j),(u,v)] = A_{iu} * (A^{-1})_{vj}.
    let mut g = vec![RatFun::zero(); n * n * n * n];
    let gidx = |i: usize, j: usize, u: usize, v: usize| ((i * n + j) * n + u) * n + v;
    for i in 0..n {
        for j in 0..n {
            for u in 0..n {
                for v in 0..n {
                    g[gidx(i, j, u, v)] = a.at(i, u) * a_inv.at(v, j);
                }
            }
        }
    }

    // Base denominator: everything the ansatz denominator is built from.
    let mut base_den = Poly::one();
    for e in a.entries().chain(a_inv.entries()).chain(theta_a.entries()) {
        base_den = base_den.lcm(e.den());
    }
    for e in r.entries() {
        base_den = base_den.lcm(e.den());
    }

    // Common denominator of the fixed (non-ansatz) rational data.
    let mut w = Poly::one();
    for e in g.iter().chain(r.entries()) {
        w = w.lcm(e.den());
    }

    for (level_idx, level) in bounds.levels().into_iter().enumerate() {
        // phi-image ladder for the ansatz denominator.
        let mut q = base_den.clone();
        let mut img = base_den.clone();
        for _ in 0..level_idx {
            img = img.dilate(p);
            q = q.lcm(&img);
        }
        let cap = level.max_num_degree + q.degree_or_zero();
        if let Some(b) = try_level(sys, &g, &r, &q, &w, cap)? {
            if !verify_integrability(sys, &b, traceless)? {
                return Err(MahlerError::InternalInconsistency(
                    "coefficient-matching solution fails the exact matrix identity".into(),
                ));
            }
            return Ok(SolveOutcome::Found(b));
        }
    }
    Ok(SolveOutcome::NotFoundWithin(bounds.clone()))
}

/// One ansatz level: `B = N/q` with `deg N <= cap` entrywise; returns a
/// verified solution of the cleared polynomial identity if one exists.
fn try_level(
    sys: &MahlerSystem,
    g: &[RatFun],
    r: &Mat,
    q: &Poly,
    w: &Poly,
    cap: usize,
) -> Result<Option<Mat>> {
    let n = sys.dim();
    let p = sys.p();
    let gidx = |i: usize, j: usize, u: usize, v: usize| ((i * n + j) * n + u) * n + v;
    let phi_q = q.dilate(p);
    let qw = q * w;
    let p_rat = rat_int(p as i64);

    // Column polynomials: for unknown coefficient k of N_{uv},
    //   equation (i,j) picks up  p * z^{pk} * q * W          when (u,v) = (i,j)
    //                          - S_{ij,uv} * z^k             always,
    // where S_{ij,uv} = num(G) * (W / den(G)) * phi(q).
    let mut s = vec![Poly::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let ge = &g[gidx(i, j, u, v)];
                    if ge.is_zero() {
                        continue;
                    }
                    let cof = w.div_exact(ge.den());
                    s[gidx(i, j, u, v)] = &(ge.num() * &cof) * &phi_q;
                }
            }
        }
    }
    // RHS polynomials: R_{ij} * q * phi(q) * W.
    let mut rhs_polys = Vec::with_capacity(n * n);
    let mut max_deg = 0usize;
    for i in 0..n {
        for j in 0..n {
            let re = r.at(i, j);
            let poly = if re.is_zero() {
                Poly::zero()
            } else {
                let cof = w.div_exact(re.den());
                &(&(re.num() * &cof) * q) * &phi_q
            };
            max_deg = max_deg.max(poly.degree_or_zero());
            rhs_polys.push(poly);
        }
    }
    max_deg = max_deg.max(qw.degree_or_zero() + p as usize * cap);
    for se in &s {
        max_deg = max_deg.max(se.degree_or_zero() + cap);
    }

    let unknowns = n * n * (cap + 1);
    let rows_per_eq = max_deg + 1;
    let mut mat = vec![vec![Rat::zero(); unknowns]; n * n * rows_per_eq];
    let mut rhs = vec![Rat::zero(); n * n * rows_per_eq];
    let col = |u: usize, v: usize, k: usize| (u * n + v) * (cap + 1) + k;

    for i in 0..n {
        for j in 0..n {
            let eq = i * n + j;
            for d in 0..rows_per_eq {
                rhs[eq * rows_per_eq + d] = rhs_polys[eq].coeff(d);
            }
            for u in 0..n {
                for v in 0..n {
                    let se = &s[gidx(i, j, u, v)];
                    for k in 0..=cap {
                        let c = col(u, v, k);
                        // - S * z^k
                        if !se.is_zero() {
                            for d in 0..=se.degree_or_zero() {
                                let coeff = se.coeff(d);
                                if !coeff.is_zero() {
                                    let row = eq * rows_per_eq + d + k;
                                    let next = &mat[row][c] - &coeff;
                                    mat[row][c] = next;
                                }
                            }
                        }
                        // + p * z^{pk} * q * W on the diagonal block
                        if u == i && v == j {
                            for d in 0..=qw.degree_or_zero() {
                                let coeff = qw.coeff(d);
                                if !coeff.is_zero() {
                                    let row = eq * rows_per_eq + d + p as usize * k;
                                    let next = &mat[row][c] + &(&coeff * &p_rat);
                                    mat[row][c] = next;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let Some(x) = solve_affine(&mat, &rhs) else {
        return Ok(None);
    };
    let mut out = Mat::zero(n, n);
    for u in 0..n {
        for v in 0..n {
            let coeffs: Vec<Rat> = (0..=cap).map(|k| x[col(u, v, k)].clone()).collect();
            *out.at_mut(u, v) = RatFun::new(Poly::from_coeffs(coeffs), q.clone())?;
        }
    }
    Ok(Some(out))
}
