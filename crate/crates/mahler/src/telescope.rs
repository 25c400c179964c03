//! Rational solutions of the scalar telescoper `lambda * d(z^p) - d(z) = b(z)`.
//!
//! For `lambda != 1` the equation has at most one Laurent-series solution at
//! the origin: the constant term is pinned by `d_0 = b_0 / (lambda - 1)` and
//! every other coefficient follows by index contraction (`d_j` depends only on
//! `d_{j/p}`). The solver expands that unique candidate, reconstructs a
//! bounded rational function from it, and verifies the equation exactly; a
//! negative answer reports the exhausted envelope.

use num_traits::{One, Zero};

use crate::bounds::{SolveBounds, SolveOutcome};
use crate::error::{MahlerError, Result};
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::series::{pade_reconstruct, TruncatedSeries};

pub fn solve_telescoper(
    b: &RatFun,
    p: u32,
    lambda: &Rat,
    bounds: &SolveBounds,
) -> Result<SolveOutcome<RatFun>> {
    assert!(p >= 2, "Mahler radix must be at least 2");
    if lambda.is_zero() || lambda.is_one() {
        return Err(MahlerError::UnsupportedLambda(lambda.to_string()));
    }
    if b.is_zero() {
        // The kernel is trivial for lambda != 1, so 0 is the solution.
        return Ok(SolveOutcome::Found(RatFun::zero()));
    }

    for level in bounds.levels() {
        let candidate = laurent_candidate(b, p, lambda, level.series_precision)?;
        if let Some(d) = reconstruct(&candidate, &level)? {
            if verify_telescoper(b, p, lambda, &d) {
                return Ok(SolveOutcome::Found(d));
            }
        }
    }
    Ok(SolveOutcome::NotFoundWithin(bounds.clone()))
}

/// Exactness check `lambda * phi(d) - d == b`.
pub fn verify_telescoper(b: &RatFun, p: u32, lambda: &Rat, d: &RatFun) -> bool {
    let lhs = &(&RatFun::constant(lambda.clone()) * &d.mahler_substitute(p)) - d;
    lhs == *b
}

/// The unique Laurent candidate: exact finite principal part plus `precision`
/// power-series coefficients, stored as a shifted coefficient vector.
struct LaurentCandidate {
    /// Pole depth: the candidate is `z^{-shift} * sum coeffs[k] z^k`.
    shift: usize,
    coeffs: Vec<Rat>,
}

fn laurent_candidate(
    b: &RatFun,
    p: u32,
    lambda: &Rat,
    precision: usize,
) -> Result<LaurentCandidate> {
    let (vb, pref) = b.laurent_prefix(precision + b.laurent_pole_depth());
    let b_at = |j: i64| -> Rat {
        if j < vb {
            return Rat::zero();
        }
        let idx = (j - vb) as usize;
        pref.get(idx).cloned().unwrap_or_else(Rat::zero)
    };
    let pi = p as i64;

    // Principal part by downward recursion along the chains j -> p*j. A chain
    // that still carries a nonzero value when it leaves the support of b can
    // never terminate, so no Laurent solution exists at all.
    let depth = if vb < 0 { (-vb) as usize } else { 0 };
    let mut neg = vec![Rat::zero(); depth]; // neg[i] = d_{-(i+1)}
    if vb < 0 {
        for j in (vb..0).rev() {
            let mut value = -b_at(j);
            if j % pi == 0 {
                let parent = j / pi; // closer to zero, already computed
                value += lambda * &neg[(-parent - 1) as usize];
            }
            neg[(-j - 1) as usize] = value;
        }
        for j in vb..0 {
            if !neg[(-j - 1) as usize].is_zero() && pi * j < vb {
                return Err(MahlerError::PoleStructure(format!(
                    "coefficient at z^{} propagates below the pole support of b",
                    pi * j
                )));
            }
        }
    }

    let lam_minus_one_inv = Rat::one() / (lambda - &Rat::one());
    let mut pos = vec![Rat::zero(); precision];
    pos[0] = b_at(0) * lam_minus_one_inv;
    for j in 1..precision as i64 {
        let mut value = -b_at(j);
        if j % pi == 0 {
            value += lambda * &pos[(j / pi) as usize];
        }
        pos[j as usize] = value;
    }

    let shift = neg.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    let mut coeffs = Vec::with_capacity(shift + precision);
    for i in (0..shift).rev() {
        coeffs.push(neg[i].clone());
    }
    coeffs.extend(pos);
    Ok(LaurentCandidate { shift, coeffs })
}

fn reconstruct(candidate: &LaurentCandidate, level: &SolveBounds) -> Result<Option<RatFun>> {
    let series = TruncatedSeries::new(candidate.coeffs.clone())?;
    let dn = level.max_num_degree + candidate.shift;
    let dd = level.max_den_degree;
    let shifted = pade_reconstruct(&series, dn, dd)?;
    Ok(shifted.map(|t| &t * &RatFun::monomial_zm(-(candidate.shift as i64))))
}

impl RatFun {
    /// Pole order at the origin, zero when there is no pole.
    fn laurent_pole_depth(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        match self.ord_at_zero() {
            Ok(v) if v < 0 => (-v) as usize,
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rat::{rat, rat_int};

    fn default_bounds_for(b: &RatFun) -> SolveBounds {
        SolveBounds::default_for_total_degree(b.total_degree())
    }

    fn theta_log(a: &RatFun) -> RatFun {
        &a.theta_derive() / a
    }

    #[test]
    fn constant_rhs_solves_to_constant() {
        // lambda = p: d = m / (p - 1)
        for (m, p) in [(3i64, 2u32), (5, 3), (-7, 2)] {
            let b = RatFun::from_int(m);
            let out = solve_telescoper(&b, p, &rat_int(p as i64), &default_bounds_for(&b)).unwrap();
            let expected = RatFun::constant(rat(m, p as i64 - 1));
            assert_eq!(out, SolveOutcome::Found(expected));
        }
    }

    #[test]
    fn log_derivative_of_phi_quotient() {
        // a = (1+z^2)/(1+z) = phi(f)/f for f = 1+z; d = theta(f)/f = z/(1+z)
        let f = RatFun::from_poly(Poly::from_coeffs(vec![rat_int(1), rat_int(1)]));
        let a = &f.mahler_substitute(2) / &f;
        let b = theta_log(&a);
        let out = solve_telescoper(&b, 2, &rat_int(2), &default_bounds_for(&b)).unwrap();
        let expected = &f.theta_derive() / &f;
        assert_eq!(out, SolveOutcome::Found(expected));
    }

    #[test]
    fn hypertranscendental_input_is_not_found() {
        // a = 1/(1-z): the associated infinite product is not rational.
        let a = RatFun::new(Poly::one(), Poly::from_coeffs(vec![rat_int(1), rat_int(-1)])).unwrap();
        let b = theta_log(&a);
        let bounds = default_bounds_for(&b);
        let out = solve_telescoper(&b, 2, &rat_int(2), &bounds).unwrap();
        assert_eq!(out, SolveOutcome::NotFoundWithin(bounds));
    }

    #[test]
    fn pole_chain_consistency() {
        // b = lambda/z^2 - 1/z has the exact solution d = 1/z at p = 2.
        let lambda = rat_int(2);
        let z_inv = RatFun::monomial_zm(-1);
        let b = &(&RatFun::constant(lambda.clone()) * &RatFun::monomial_zm(-2)) - &z_inv;
        let out = solve_telescoper(&b, 2, &lambda, &default_bounds_for(&b)).unwrap();
        assert_eq!(out, SolveOutcome::Found(z_inv));

        // b = 1/z propagates forever: no Laurent solution.
        let b = RatFun::monomial_zm(-1);
        assert!(matches!(
            solve_telescoper(&b, 2, &lambda, &default_bounds_for(&b)),
            Err(MahlerError::PoleStructure(_))
        ));
    }

    #[test]
    fn lambda_zero_and_one_rejected() {
        let b = RatFun::one();
        let bounds = default_bounds_for(&b);
        assert!(matches!(
            solve_telescoper(&b, 2, &rat_int(1), &bounds),
            Err(MahlerError::UnsupportedLambda(_))
        ));
        assert!(matches!(
            solve_telescoper(&b, 2, &rat_int(0), &bounds),
            Err(MahlerError::UnsupportedLambda(_))
        ));
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let out = solve_telescoper(
            &RatFun::zero(),
            2,
            &rat_int(2),
            &SolveBounds::default_for_total_degree(0),
        )
        .unwrap();
        assert_eq!(out, SolveOutcome::Found(RatFun::zero()));
    }

    #[test]
    fn lambda_p_squared_recovers_the_unique_answer() {
        // Uniqueness at lambda = p^k: build b from a known d and get d back.
        let p = 2u32;
        let lambda = rat_int(4);
        let d = RatFun::new(
            Poly::from_coeffs(vec![rat_int(1), rat_int(2)]),
            Poly::from_coeffs(vec![rat_int(3), rat_int(0), rat_int(1)]),
        )
        .unwrap();
        let b = &(&RatFun::constant(lambda.clone()) * &d.mahler_substitute(p)) - &d;
        let bounds = SolveBounds::default_for_total_degree(b.total_degree());
        let out = solve_telescoper(&b, p, &lambda, &bounds).unwrap();
        assert_eq!(out, SolveOutcome::Found(d));
    }

    #[test]
    fn mutated_witness_fails_verification() {
        let b = RatFun::from_int(3);
        let lambda = rat_int(2);
        let d = RatFun::from_int(3); // 2*3 - 3 = 3
        assert!(verify_telescoper(&b, 2, &lambda, &d));
        let mutated = &d + &RatFun::var();
        assert!(!verify_telescoper(&b, 2, &lambda, &mutated));
        let mutated = &d + &RatFun::from_int(1);
        assert!(!verify_telescoper(&b, 2, &lambda, &mutated));
    }
}
