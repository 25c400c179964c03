//! Order-one hyperalgebraicity: `phi(y) = a y` has hyperalgebraic solutions
//! exactly when `a = c * z^m * phi(f)/f` for some rational `f`, equivalently
//! when `theta(a)/a = p * phi(d) - d` for some rational `d`.
//!
//! The classifier runs both criteria and insists that they agree; a mismatch
//! aborts loudly, since it can only come from this implementation (or from
//! asymmetric search bounds, which the amplification below rules out for
//! witnesses inside the stated envelope).

use crate::bounds::{SolveBounds, SolveOutcome};
use crate::error::{MahlerError, Result};
use crate::multiplicative::{solve_multiplicative, MultiplicativeWitness};
use crate::rat::rat_int;
use crate::ratfun::RatFun;
use crate::telescope::solve_telescoper;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Order1Class {
    Hyperalgebraic(MultiplicativeWitness),
    NotHyperalgebraicWithin(SolveBounds),
}

pub fn classify_order1(a: &RatFun, p: u32, bounds: &SolveBounds) -> Result<Order1Class> {
    if a.is_zero() {
        return Err(MahlerError::ZeroInput);
    }
    let mult = solve_multiplicative(a, p, bounds)?;

    // A witness f built from degrees (dn, dd) yields d = m/(p-1) + theta(f)/f
    // of numerator and denominator degree at most dn + dd, so the telescoper
    // search gets the amplified caps needed for a fair cross-check.
    let amp = bounds.max_num_degree + bounds.max_den_degree;
    let tele_bounds = SolveBounds::new(
        amp,
        amp,
        (4 * amp + 4).max(bounds.series_precision),
        bounds.escalation_steps,
    )?;
    let b = &a.theta_derive() / a;
    let tele = solve_telescoper(&b, p, &rat_int(p as i64), &tele_bounds)?;

    match (mult, tele) {
        (SolveOutcome::Found(w), SolveOutcome::Found(_)) => Ok(Order1Class::Hyperalgebraic(w)),
        (SolveOutcome::NotFoundWithin(_), SolveOutcome::NotFoundWithin(_)) => {
            Ok(Order1Class::NotHyperalgebraicWithin(bounds.clone()))
        }
        (SolveOutcome::Found(w), SolveOutcome::NotFoundWithin(_)) => {
            Err(MahlerError::InternalInconsistency(format!(
                "multiplicative witness f = {} found but the telescoper criterion failed within amplified bounds",
                w.f
            )))
        }
        (SolveOutcome::NotFoundWithin(_), SolveOutcome::Found(d)) => {
            Err(MahlerError::InternalInconsistency(format!(
                "telescoper witness d = {d} found but no multiplicative witness within bounds; escalate bounds"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rat::rat;

    fn default_bounds_for(a: &RatFun) -> SolveBounds {
        SolveBounds::default_for_total_degree(a.total_degree())
    }

    #[test]
    fn baum_sweet_determinant_is_hyperalgebraic() {
        let a = RatFun::from_int(-1);
        let got = classify_order1(&a, 2, &default_bounds_for(&a)).unwrap();
        match got {
            Order1Class::Hyperalgebraic(w) => {
                assert_eq!((w.c, w.m), (rat_int(-1), 0));
                assert!(w.f.is_one());
            }
            other => panic!("expected hyperalgebraic, got {other:?}"),
        }
    }

    #[test]
    fn rudin_shapiro_determinant_is_hyperalgebraic() {
        let a = RatFun::new(Poly::constant(rat(-1, 2)), Poly::monomial(rat_int(1), 1)).unwrap();
        let got = classify_order1(&a, 2, &default_bounds_for(&a)).unwrap();
        match got {
            Order1Class::Hyperalgebraic(w) => {
                assert_eq!((w.c, w.m), (rat(-1, 2), -1));
                assert!(w.f.is_one());
            }
            other => panic!("expected hyperalgebraic, got {other:?}"),
        }
    }

    #[test]
    fn geometric_series_coefficient_is_not() {
        let a = RatFun::new(Poly::one(), Poly::from_coeffs(vec![rat_int(1), rat_int(-1)])).unwrap();
        let bounds = default_bounds_for(&a);
        let got = classify_order1(&a, 2, &bounds).unwrap();
        assert_eq!(got, Order1Class::NotHyperalgebraicWithin(bounds));
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(
            classify_order1(&RatFun::zero(), 2, &SolveBounds::default_for_total_degree(0)),
            Err(MahlerError::ZeroInput)
        );
    }
}
