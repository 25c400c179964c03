//! Multiplicative decomposition `a = c * z^m * phi(f)/f` with rational `f`.
//!
//! After splitting off the monomial part `c * z^m`, the cofactor `l` has
//! `l(0) = 1` and the normalized solution of `phi(f) = l f`, `f(0) = 1`, is
//! the unique power series `f = prod_{k>=0} phi^k(l)^{-1}`. The solver expands
//! that candidate through the recursion `f = l^{-1} * phi(f)`, reconstructs a
//! bounded rational function, and verifies the decomposition exactly.

use num_traits::{One, Zero};

use crate::bounds::{SolveBounds, SolveOutcome};
use crate::error::{MahlerError, Result};
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::series::{pade_reconstruct, TruncatedSeries};

/// Witness of `a = c * z^m * phi(f)/f`, normalized by `ord_0(f) = 0`, `f(0) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicativeWitness {
    pub c: Rat,
    pub m: i64,
    pub f: RatFun,
}

pub fn solve_multiplicative(
    a: &RatFun,
    p: u32,
    bounds: &SolveBounds,
) -> Result<SolveOutcome<MultiplicativeWitness>> {
    assert!(p >= 2, "Mahler radix must be at least 2");
    if a.is_zero() {
        return Err(MahlerError::ZeroInput);
    }
    let dec = a.monomial_decompose()?;
    if dec.l.is_one() {
        // Pure monomials absorb everything into c * z^m.
        return Ok(SolveOutcome::Found(MultiplicativeWitness {
            c: dec.c,
            m: dec.m,
            f: RatFun::one(),
        }));
    }

    let l_inv = dec.l.inv()?;
    for level in bounds.levels() {
        let candidate = product_candidate(&l_inv, p, level.series_precision);
        if let Some(f) = pade_reconstruct(&candidate, level.max_num_degree, level.max_den_degree)? {
            let witness = MultiplicativeWitness {
                c: dec.c.clone(),
                m: dec.m,
                f,
            };
            if verify_multiplicative(a, p, &witness) {
                return Ok(SolveOutcome::Found(witness));
            }
        }
    }
    Ok(SolveOutcome::NotFoundWithin(bounds.clone()))
}

/// Exactness check `a == c * z^m * phi(f)/f`.
pub fn verify_multiplicative(a: &RatFun, p: u32, w: &MultiplicativeWitness) -> bool {
    if w.f.is_zero() {
        return false;
    }
    let ratio = &w.f.mahler_substitute(p) / &w.f;
    let rhs = &(&RatFun::constant(w.c.clone()) * &RatFun::monomial_zm(w.m)) * &ratio;
    rhs == *a
}

/// Power-series prefix of `f = prod_{k>=0} phi^k(l)^{-1}` via the fixed point
/// `f = l^{-1} * phi(f)`: `f_j = sum_{p k <= j} linv_{j - p k} f_k`, `f_0 = 1`.
fn product_candidate(l_inv: &RatFun, p: u32, precision: usize) -> TruncatedSeries {
    let (v, linv) = l_inv.laurent_prefix(precision);
    debug_assert_eq!(v, 0, "cofactor must be a unit at the origin");
    debug_assert!(linv[0].is_one());
    let p = p as usize;
    let mut f = vec![Rat::zero(); precision];
    f[0] = Rat::one();
    for j in 1..precision {
        let mut acc = linv[j].clone();
        let mut k = 1;
        while p * k <= j {
            if !f[k].is_zero() {
                acc += &linv[j - p * k] * &f[k];
            }
            k += 1;
        }
        f[j] = acc;
    }
    TruncatedSeries::new(f).expect("precision >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rat::{rat, rat_int};

    fn default_bounds_for(a: &RatFun) -> SolveBounds {
        SolveBounds::default_for_total_degree(a.total_degree())
    }

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn constructed_instance_recovers_f() {
        // a = (1+z^2)/(1+z) = phi(1+z)/(1+z) at p = 2
        let f = RatFun::from_poly(poly(&[1, 1]));
        let a = &f.mahler_substitute(2) / &f;
        let out = solve_multiplicative(&a, 2, &default_bounds_for(&a)).unwrap();
        let w = out.found().expect("constructed instance");
        assert_eq!(w.c, rat_int(1));
        assert_eq!(w.m, 0);
        assert_eq!(w.f, f);
    }

    #[test]
    fn pure_monomial_is_absorbed() {
        // a = z at p = 2: normalized answer is (c, m, f) = (1, 1, 1), not f = z.
        let a = RatFun::var();
        let out = solve_multiplicative(&a, 2, &default_bounds_for(&a)).unwrap();
        let w = out.found().unwrap();
        assert_eq!((w.c.clone(), w.m), (rat_int(1), 1));
        assert!(w.f.is_one());

        let a = RatFun::new(Poly::constant(rat(-1, 2)), poly(&[0, 1])).unwrap();
        let w2 = solve_multiplicative(&a, 2, &default_bounds_for(&a)).unwrap();
        let w2 = w2.found().unwrap().clone();
        assert_eq!((w2.c, w2.m), (rat(-1, 2), -1));
    }

    #[test]
    fn hypertranscendental_instance_not_found() {
        // a = 1/(1-z): f would be the non-rational product prod (1 - z^{2^k}).
        let a = RatFun::new(Poly::one(), poly(&[1, -1])).unwrap();
        let bounds = default_bounds_for(&a);
        let out = solve_multiplicative(&a, 2, &bounds).unwrap();
        assert_eq!(out, SolveOutcome::NotFoundWithin(bounds));
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(
            solve_multiplicative(&RatFun::zero(), 2, &SolveBounds::default_for_total_degree(0)),
            Err(MahlerError::ZeroInput)
        );
    }

    #[test]
    fn witness_with_pole_or_zero_shift() {
        // f with a zero at the origin is renormalized through m.
        // a = z^3 * phi(g)/g with g = (2 + z)/2 keeps f(0) = 1.
        let g = RatFun::new(poly(&[2, 1]), poly(&[2])).unwrap();
        let a = &(&RatFun::monomial_zm(3) * &g.mahler_substitute(2)) / &g;
        let out = solve_multiplicative(&a, 2, &default_bounds_for(&a)).unwrap();
        let w = out.found().unwrap();
        assert_eq!(w.m, 3);
        assert_eq!(w.f.eval0().unwrap(), rat_int(1));
        assert!(verify_multiplicative(&a, 2, w));
    }
}
