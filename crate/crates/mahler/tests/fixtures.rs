//! End-to-end fixture coverage at the library level: the Baum-Sweet and
//! Rudin-Shapiro systems, their scalar forms, the joint direct sum, and the
//! second certification branch on an equation with non-monomial coefficient
//! ratio.

use mahler::{
    baum_sweet_system, certify, certify_equation, find_relations, gen_baum_sweet,
    gen_rudin_shapiro, rat, rat_int, replay_certificate, rudin_shapiro_system,
    verify_series_solution, Assumption, AssumptionKind, Poly, RatFun, ScalarMahlerEq, SolveBounds,
    Verdict,
};

fn bs_assumption() -> Assumption {
    Assumption::new(
        AssumptionKind::GaloisEquals,
        "mu_4 SL_2(~C)",
        "difference Galois group of the Baum-Sweet system, established externally",
    )
    .unwrap()
}

fn rs_assumption() -> Assumption {
    Assumption::new(
        AssumptionKind::GaloisEquals,
        "GL_2(~C)",
        "difference Galois group of the Rudin-Shapiro system, established externally",
    )
    .unwrap()
}

fn sl_assumption(n: usize) -> Assumption {
    Assumption::new(
        AssumptionKind::GaloisContainsSl,
        &format!("the difference Galois group over K contains SL_{n}(C)"),
        "assumed for the fixture",
    )
    .unwrap()
}

#[test]
fn baum_sweet_scalar_form_matches_series() {
    // f(z) = z f(z^2) + f(z^4), encoded as a_0 = 1, a_1 = -z, a_2 = -1.
    let n = 256;
    let f = gen_baum_sweet(n);
    let lhs = f.truncate(n);
    let rhs = f
        .substitute(2)
        .shift_up(1)
        .add(&f.substitute(2).substitute(2));
    assert_eq!(lhs.sub(&rhs).valuation(), None, "scalar recurrence holds");

    let eq = ScalarMahlerEq::new(
        vec![RatFun::one(), -&RatFun::var(), RatFun::from_int(-1)],
        2,
    )
    .unwrap();
    let bounds = SolveBounds::default_for_total_degree(2);
    let cert = certify_equation(&eq, Some(&bs_assumption()), &bounds).unwrap();
    assert_eq!(cert.verdict, Verdict::Hypertranscendental);
}

#[test]
fn rudin_shapiro_identities() {
    // (f(z) + f(-z))/2 = f(z^2) and (f(z) - f(-z))/(2z) = f(-z^2).
    let n = 128;
    let f = gen_rudin_shapiro(n);
    let half = rat(1, 2);
    let even = f.add(&f.negate_z()).scale(&half);
    assert_eq!(even.sub(&f.substitute(2)).valuation(), None);
    let odd_shifted = f.sub(&f.negate_z()).scale(&half);
    // odd part = z * f(-z^2): compare against the shift.
    let expected = f.negate_z().substitute(2).shift_up(1);
    assert_eq!(odd_shifted.sub(&expected).valuation(), None);
}

#[test]
fn fixture_certificates_and_replay() {
    let bounds = SolveBounds::default_for_total_degree(2);
    for (sys, assumption) in [
        (baum_sweet_system(), bs_assumption()),
        (rudin_shapiro_system(), rs_assumption()),
    ] {
        let cert = certify(&sys, Some(&assumption), &bounds).unwrap();
        assert_eq!(cert.verdict, Verdict::Hypertranscendental);
        assert!(cert
            .steps
            .iter()
            .any(|s| s.rule_id == "monomial-check" && s.outcome == "monomial"));
        assert!(replay_certificate(&sys, Some(&assumption), &bounds, &cert).unwrap());
        // byte-stable rendering
        let again = certify(&sys, Some(&assumption), &bounds).unwrap();
        assert_eq!(cert.render(""), again.render(""));
    }
}

#[test]
fn non_monomial_ratio_engages_the_integrability_branch() {
    // a_2/a_0 = 1 - z is not a monomial, so certification must go through
    // the projective integrability search.
    let eq = ScalarMahlerEq::new(
        vec![
            RatFun::one(),
            RatFun::var(),
            RatFun::from_poly(Poly::from_coeffs(vec![rat_int(1), rat_int(-1)])),
        ],
        2,
    )
    .unwrap();
    let bounds = SolveBounds::new(4, 4, 2 * 8 + 4, 1).unwrap();
    let cert = certify_equation(&eq, Some(&sl_assumption(2)), &bounds).unwrap();
    let integ = cert
        .steps
        .iter()
        .find(|s| s.rule_id == "projective-integrability")
        .expect("branch B must run the integrability search");
    assert_eq!(integ.outcome, "not-within-bounds");
    assert_eq!(cert.verdict, Verdict::Hypertranscendental);
    assert!(cert.group_bounds.contains("conditional on bounds"));
}

#[test]
fn scalar_twist_reaches_the_inconclusive_branch() {
    // A = f * I_2 with f = 1/(1-z): the determinant f^2 is rejected by the
    // order-one classifier, but the traceless right-hand side cancels
    // identically, so B = 0 is a rational integrability witness and the
    // criteria cannot decide.
    let f = RatFun::new(
        Poly::one(),
        Poly::from_coeffs(vec![rat_int(1), rat_int(-1)]),
    )
    .unwrap();
    let mut m = mahler::Mat::zero(2, 2);
    *m.at_mut(0, 0) = f.clone();
    *m.at_mut(1, 1) = f;
    let sys = mahler::MahlerSystem::new(m, 2).unwrap();
    let assumption = Assumption::new(
        AssumptionKind::GaloisEquals,
        "a scalar twist of the identity system",
        "synthetic fixture for the inconclusive branch",
    )
    .unwrap();
    let bounds = SolveBounds::new(4, 4, 2 * 8 + 4, 1).unwrap();
    let cert = certify(&sys, Some(&assumption), &bounds).unwrap();
    assert_eq!(cert.verdict, Verdict::Inconclusive);
    assert_eq!(cert.reason.as_deref(), Some("integrability-witness-found"));
    let witness = cert.witness.as_ref().expect("witness recorded");
    assert_eq!(witness, &mahler::Mat::zero(2, 2));
}

#[test]
fn joint_system_with_both_quadruple_choices() {
    // The two natural quadruples attached to the pair of fixtures: one takes
    // f_RS(z^2), the other f_RS(-z); the falsifier stays empty on both.
    let n = 160;
    let bs = gen_baum_sweet(n);
    let rs = gen_rudin_shapiro(n);
    let quad_sub = [
        bs.clone(),
        bs.substitute(2),
        rs.clone(),
        rs.substitute(2),
    ];
    let quad_neg = [bs.clone(), bs.substitute(2), rs.clone(), rs.negate_z()];
    for quad in [&quad_sub, &quad_neg] {
        let report = find_relations(quad.as_slice(), 1, 1, 3, n).unwrap();
        assert!(report.is_empty(), "unexpected relation: {:?}", report.relations);
    }

    // The joint block system certifies on the monomial branch under a
    // product-group assumption.
    let joint = baum_sweet_system()
        .direct_sum(&rudin_shapiro_system())
        .unwrap();
    let det = joint.det();
    assert!(det.is_monomial().unwrap());
    let assumption = Assumption::new(
        AssumptionKind::GaloisEquals,
        "mu_4 SL_2(~C) x GL_2(~C)",
        "product of the fixture groups, established externally",
    )
    .unwrap();
    let bounds = SolveBounds::default_for_total_degree(2);
    let cert = certify(&joint, Some(&assumption), &bounds).unwrap();
    assert_eq!(cert.verdict, Verdict::Hypertranscendental);
}

#[test]
fn generated_vectors_solve_their_systems_at_scale() {
    let n = 256;
    let bs = gen_baum_sweet(n);
    let val = verify_series_solution(&baum_sweet_system(), &[bs.clone(), bs.substitute(2)], n)
        .unwrap();
    assert!(val >= (n as i64) - 2);
    let rs = gen_rudin_shapiro(n);
    let val = verify_series_solution(&rudin_shapiro_system(), &[rs.clone(), rs.negate_z()], n)
        .unwrap();
    assert!(val >= (n as i64) - 2);
}
