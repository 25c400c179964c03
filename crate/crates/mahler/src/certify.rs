//! Hypertranscendence certification for Mahler systems and scalar equations.
//!
//! A certificate is a machine-checkable chain: every step names the rule it
//! applied, a self-contained statement of that rule, a digest of its exact
//! inputs, and the solver envelope it used. Verdicts that depend on a bounded
//! negative search say so explicitly. The one external input is the
//! difference-Galois assumption (with mandatory provenance); it is copied
//! verbatim into the certificate and never computed here.

use std::fmt;

use crate::bounds::{SolveBounds, SolveOutcome};
use crate::classify::{classify_order1, Order1Class};
use crate::digest::digest_text;
use crate::error::{MahlerError, Result};
use crate::integrability::solve_integrability;
use crate::matrix::{MahlerSystem, Mat};
use crate::ratfun::RatFun;

/// Scalar Mahler equation `a_n y(z^{p^n}) + ... + a_0 y(z) = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMahlerEq {
    coeffs: Vec<RatFun>,
    p: u32,
}

impl ScalarMahlerEq {
    pub fn new(coeffs: Vec<RatFun>, p: u32) -> Result<ScalarMahlerEq> {
        if p < 2 {
            return Err(MahlerError::InvalidEquation(format!(
                "Mahler radix must be at least 2, got {p}"
            )));
        }
        if coeffs.len() < 2 {
            return Err(MahlerError::InvalidEquation(
                "need coefficients a_0 .. a_n with n >= 1".into(),
            ));
        }
        if coeffs.first().unwrap().is_zero() {
            return Err(MahlerError::InvalidEquation("a_0 must be nonzero".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(MahlerError::InvalidEquation("a_n must be nonzero".into()));
        }
        Ok(ScalarMahlerEq { coeffs, p })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl fmt::Display for ScalarMahlerEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "a_{k} = {c}")?;
        }
        write!(f, " ; p = {}", self.p)
    }
}

/// Companion system of a scalar equation: superdiagonal ones, last row
/// `-a_0/a_n, ..., -a_{n-1}/a_n`; its determinant is `(-1)^n a_0/a_n`.
pub fn companion_matrix(eq: &ScalarMahlerEq) -> MahlerSystem {
    let n = eq.order();
    let a_n = &eq.coeffs[n];
    let mut m = Mat::zero(n, n);
    for i in 0..n.saturating_sub(1) {
        *m.at_mut(i, i + 1) = RatFun::one();
    }
    for j in 0..n {
        *m.at_mut(n - 1, j) = -&(&eq.coeffs[j] / a_n);
    }
    MahlerSystem::new(m, eq.p).expect("companion of a valid equation is invertible")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AssumptionKind {
    /// The difference Galois group over K contains SL_n(C).
    GaloisContainsSl,
    /// The difference Galois group over K is exactly the stated group.
    GaloisEquals,
}

impl AssumptionKind {
    pub fn label(&self) -> &'static str {
        match self {
            AssumptionKind::GaloisContainsSl => "galois-contains-sl",
            AssumptionKind::GaloisEquals => "galois-equals",
        }
    }
}

/// External Galois-group input. Provenance is mandatory: a literature citation
/// or a transcript of the computation that established the group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assumption {
    pub kind: AssumptionKind,
    pub statement: String,
    pub provenance: String,
}

impl Assumption {
    pub fn new(kind: AssumptionKind, statement: &str, provenance: &str) -> Result<Assumption> {
        if provenance.trim().is_empty() {
            return Err(MahlerError::AssumptionMissing);
        }
        Ok(Assumption {
            kind,
            statement: statement.to_string(),
            provenance: provenance.to_string(),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Hypertranscendental,
    HyperalgebraicOrder1,
    Inconclusive,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Hypertranscendental => "hypertranscendental",
            Verdict::HyperalgebraicOrder1 => "hyperalgebraic-order1",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// One applied rule: what ran, on which inputs, within which envelope, and
/// what it concluded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertStep {
    pub rule_id: String,
    pub anchor: String,
    pub inputs_digest: String,
    pub bounds_used: String,
    pub outcome: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub group_bounds: String,
    pub assumptions: Vec<Assumption>,
    pub steps: Vec<CertStep>,
    pub notes: Vec<String>,
    /// Stable token naming why a verdict is inconclusive.
    pub reason: Option<String>,
    /// Rational integrability witness in the inconclusive branch.
    pub witness: Option<Mat>,
}

impl Certificate {
    /// Deterministic key-value rendering; field order is fixed and there are
    /// no timestamps, so identical inputs produce byte-identical text.
    pub fn render(&self, prefix: &str) -> String {
        let mut out = String::new();
        let mut put = |key: &str, value: &str| {
            out.push_str(prefix);
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(value);
            out.push('\n');
        };
        put("verdict", self.verdict.label());
        put("group-bounds", &self.group_bounds);
        if let Some(reason) = &self.reason {
            put("reason", reason);
        }
        for (i, a) in self.assumptions.iter().enumerate() {
            put(&format!("assumptions.{i}.kind"), a.kind.label());
            put(&format!("assumptions.{i}.statement"), &a.statement);
            put(&format!("assumptions.{i}.provenance"), &a.provenance);
        }
        for (i, s) in self.steps.iter().enumerate() {
            put(&format!("steps.{i}.rule"), &s.rule_id);
            put(&format!("steps.{i}.anchor"), &s.anchor);
            put(&format!("steps.{i}.inputs-digest"), &s.inputs_digest);
            put(&format!("steps.{i}.bounds"), &s.bounds_used);
            put(&format!("steps.{i}.outcome"), &s.outcome);
        }
        for (i, n) in self.notes.iter().enumerate() {
            put(&format!("notes.{i}"), n);
        }
        if let Some(w) = &self.witness {
            put("witness", &w.to_string());
        }
        out
    }
}

const ANCHOR_GATE: &str = "a coordinate subspace invariant under A contradicts any claim that the \
     difference Galois group contains SL_n";
const ANCHOR_DET: &str =
    "det A generates the order-one subsystem phi(y) = det(A) y attached to the system";
const ANCHOR_MONOMIAL: &str =
    "a monomial c*z^m equals c*z^m*phi(f)/f with f = 1, so its order-one system is hyperalgebraic";
const ANCHOR_CLASSIFY: &str = "phi(y) = a y has hyperalgebraic solutions iff a = c*z^m*phi(f)/f \
     with rational f, iff theta(a)/a = p*phi(d) - d with rational d";
const ANCHOR_BRANCH_A: &str = "group contains SL_n and det A is hyperalgebraic: the parametrized \
     group lies between SL_n(~C) and C^x SL_n(~C), so the entries of any nonzero Laurent-series \
     solution and all their derivatives are algebraically independent";
const ANCHOR_INTEGRABILITY: &str = "a rational B with p*phi(B) = A B A^{-1} + theta(A) A^{-1} - \
     (1/n)*theta(det A)/det(A) * I_n collapses the parametrized group into a conjugate of \
     ~C^x SL_n(C)";
const ANCHOR_BRANCH_B: &str = "group contains SL_n, det A hypertranscendental within bounds, and \
     no rational projective-integrability witness within bounds: the parametrized group is \
     GL_n(~C) and the entries of any nonzero Laurent-series solution are hyperalgebraically \
     independent";
const ANCHOR_ORDER1: &str =
    "for a 1 x 1 system the solution itself is the determinant, so the order-one criterion decides";

/// Certify a Mahler system under a difference-Galois assumption.
///
/// Branch A (hyperalgebraic determinant, in particular monomial) needs no
/// solver obligation beyond the order-one classification. Branch B runs the
/// traceless integrability search; its negative answers make the verdict
/// explicitly conditional on the recorded bounds.
pub fn certify(
    sys: &MahlerSystem,
    assumption: Option<&Assumption>,
    bounds: &SolveBounds,
) -> Result<Certificate> {
    let assumption = assumption.ok_or(MahlerError::AssumptionMissing)?;
    let n = sys.dim();
    let p = sys.p();
    let sys_digest = digest_text(&format!("{}|p={}", sys.matrix(), p));
    let mut steps = Vec::new();
    let mut notes = Vec::new();

    // Cheap implausibility gate for the generic containment claim: a system
    // that visibly fixes a coordinate subspace cannot contain SL_n (n >= 2).
    if n >= 2 && assumption.kind == AssumptionKind::GaloisContainsSl {
        let reducible = visibly_reducible(sys.matrix());
        steps.push(CertStep {
            rule_id: "reducibility-gate".into(),
            anchor: ANCHOR_GATE.into(),
            inputs_digest: sys_digest.clone(),
            bounds_used: "-".into(),
            outcome: if reducible { "reducible" } else { "irreducible" }.into(),
        });
        if reducible {
            notes.push(
                "the coefficient matrix is block-triangular under a coordinate permutation; \
                 an SL_n-containment assumption is implausible for such a system"
                    .into(),
            );
            return Ok(Certificate {
                verdict: Verdict::Inconclusive,
                group_bounds: "indeterminate".into(),
                assumptions: vec![assumption.clone()],
                steps,
                notes,
                reason: Some("assumption-implausible".into()),
                witness: None,
            });
        }
    }

    let det = sys.det();
    steps.push(CertStep {
        rule_id: "determinant".into(),
        anchor: ANCHOR_DET.into(),
        inputs_digest: sys_digest.clone(),
        bounds_used: "-".into(),
        outcome: det.to_string(),
    });

    let det_monomial = det.is_monomial().expect("determinant is nonzero");
    steps.push(CertStep {
        rule_id: "monomial-check".into(),
        anchor: ANCHOR_MONOMIAL.into(),
        inputs_digest: digest_text(&det.to_string()),
        bounds_used: "-".into(),
        outcome: if det_monomial { "monomial" } else { "not-monomial" }.into(),
    });

    let class = classify_order1(&det, p, bounds)?;
    let class_digest = digest_text(&format!("{det}|p={p}|{bounds}"));
    steps.push(CertStep {
        rule_id: "order1-classify".into(),
        anchor: ANCHOR_CLASSIFY.into(),
        inputs_digest: class_digest,
        bounds_used: bounds.to_string(),
        outcome: match &class {
            Order1Class::Hyperalgebraic(w) => {
                format!("hyperalgebraic c={} m={} f={}", w.c, w.m, w.f)
            }
            Order1Class::NotHyperalgebraicWithin(_) => "not-within-bounds".into(),
        },
    });

    if n == 1 {
        return certify_order_one(sys, assumption, class, steps, notes);
    }

    match class {
        Order1Class::Hyperalgebraic(_) => {
            steps.push(CertStep {
                rule_id: "hyperalgebraic-determinant-verdict".into(),
                anchor: ANCHOR_BRANCH_A.into(),
                inputs_digest: sys_digest,
                bounds_used: "-".into(),
                outcome: "hypertranscendental".into(),
            });
            let group_bounds = match assumption.kind {
                AssumptionKind::GaloisContainsSl => {
                    format!("SL_{n}(~C) <= G <= C^x SL_{n}(~C)")
                }
                AssumptionKind::GaloisEquals => format!("G = {}", assumption.statement),
            };
            Ok(Certificate {
                verdict: Verdict::Hypertranscendental,
                group_bounds,
                assumptions: vec![assumption.clone()],
                steps,
                notes,
                reason: None,
                witness: None,
            })
        }
        Order1Class::NotHyperalgebraicWithin(_) => {
            let outcome = solve_integrability(sys, true, bounds)?;
            let integ_digest = digest_text(&format!("{}|p={}|traceless|{}", sys.matrix(), p, bounds));
            match outcome {
                SolveOutcome::NotFoundWithin(b) => {
                    steps.push(CertStep {
                        rule_id: "projective-integrability".into(),
                        anchor: ANCHOR_INTEGRABILITY.into(),
                        inputs_digest: integ_digest,
                        bounds_used: b.to_string(),
                        outcome: "not-within-bounds".into(),
                    });
                    steps.push(CertStep {
                        rule_id: "hypertranscendental-determinant-verdict".into(),
                        anchor: ANCHOR_BRANCH_B.into(),
                        inputs_digest: sys_digest,
                        bounds_used: bounds.to_string(),
                        outcome: "hypertranscendental, conditional on bounds".into(),
                    });
                    notes.push(
                        "negative solver answers are bounded searches, not nonexistence proofs; \
                         the verdict is conditional on the recorded bounds"
                            .into(),
                    );
                    Ok(Certificate {
                        verdict: Verdict::Hypertranscendental,
                        group_bounds: format!("G = GL_{n}(~C), conditional on bounds"),
                        assumptions: vec![assumption.clone()],
                        steps,
                        notes,
                        reason: None,
                        witness: None,
                    })
                }
                SolveOutcome::Found(b) => {
                    steps.push(CertStep {
                        rule_id: "projective-integrability".into(),
                        anchor: ANCHOR_INTEGRABILITY.into(),
                        inputs_digest: integ_digest,
                        bounds_used: bounds.to_string(),
                        outcome: "found".into(),
                    });
                    notes.push(
                        "a rational integrability witness collapses the parametrized group; the \
                         stated criteria do not decide hypertranscendence in this case"
                            .into(),
                    );
                    Ok(Certificate {
                        verdict: Verdict::Inconclusive,
                        group_bounds: format!(
                            "G conjugate to a subgroup of ~C^x SL_{n}(C), within bounds"
                        ),
                        assumptions: vec![assumption.clone()],
                        steps,
                        notes,
                        reason: Some("integrability-witness-found".into()),
                        witness: Some(b),
                    })
                }
            }
        }
    }
}

/// The 1 x 1 case: the solution is itself an order-one object, so "contains
/// SL_1" carries no content and the order-one criterion gives the verdict.
fn certify_order_one(
    sys: &MahlerSystem,
    assumption: &Assumption,
    class: Order1Class,
    mut steps: Vec<CertStep>,
    mut notes: Vec<String>,
) -> Result<Certificate> {
    let sys_digest = digest_text(&format!("{}|p={}", sys.matrix(), sys.p()));
    match class {
        Order1Class::Hyperalgebraic(_) => {
            steps.push(CertStep {
                rule_id: "order1-verdict".into(),
                anchor: ANCHOR_ORDER1.into(),
                inputs_digest: sys_digest,
                bounds_used: "-".into(),
                outcome: "hyperalgebraic-order1".into(),
            });
            Ok(Certificate {
                verdict: Verdict::HyperalgebraicOrder1,
                group_bounds: "G <= C^x".into(),
                assumptions: vec![assumption.clone()],
                steps,
                notes,
                reason: None,
                witness: None,
            })
        }
        Order1Class::NotHyperalgebraicWithin(b) => {
            steps.push(CertStep {
                rule_id: "order1-verdict".into(),
                anchor: ANCHOR_ORDER1.into(),
                inputs_digest: sys_digest,
                bounds_used: b.to_string(),
                outcome: "hypertranscendental, conditional on bounds".into(),
            });
            notes.push(
                "negative solver answers are bounded searches, not nonexistence proofs; the \
                 verdict is conditional on the recorded bounds"
                    .into(),
            );
            Ok(Certificate {
                verdict: Verdict::Hypertranscendental,
                group_bounds: "G = ~C^x, conditional on bounds".into(),
                assumptions: vec![assumption.clone()],
                steps,
                notes,
                reason: None,
                witness: None,
            })
        }
    }
}

/// Certify a scalar equation through its companion system; the conclusion
/// then covers any nonzero Laurent-series solution and its Mahler shifts.
pub fn certify_equation(
    eq: &ScalarMahlerEq,
    assumption: Option<&Assumption>,
    bounds: &SolveBounds,
) -> Result<Certificate> {
    let sys = companion_matrix(eq);
    let mut cert = certify(&sys, assumption, bounds)?;
    cert.steps.insert(
        0,
        CertStep {
            rule_id: "companion-matrix".into(),
            anchor: "the scalar equation and its companion system have the same solution data; \
                     det of the companion is (-1)^n a_0/a_n"
                .into(),
            inputs_digest: digest_text(&eq.to_string()),
            bounds_used: "-".into(),
            outcome: sys.matrix().to_string(),
        },
    );
    let n = eq.order();
    cert.notes.push(format!(
        "conclusion applies to any nonzero Laurent-series solution f and its Mahler shifts \
         f(z^p), ..., f(z^p^{})",
        n.saturating_sub(1)
    ));
    Ok(cert)
}

/// True when some proper nonempty set of coordinates spans an `A`-invariant
/// subspace, i.e. the matrix is block-triangular up to a simultaneous row and
/// column permutation.
fn visibly_reducible(a: &Mat) -> bool {
    let n = a.rows();
    if n < 2 {
        return false;
    }
    for mask in 1u32..(1 << n) - 1 {
        let in_set = |i: usize| mask & (1 << i) != 0;
        let mut invariant = true;
        'outer: for j in 0..n {
            if !in_set(j) {
                continue;
            }
            for i in 0..n {
                if !in_set(i) && !a.at(i, j).is_zero() {
                    invariant = false;
                    break 'outer;
                }
            }
        }
        if invariant {
            return true;
        }
    }
    false
}

/// Re-executes every step of a certificate from the same inputs and checks
/// that the chain (rules, digests, outcomes) and the verdict reproduce.
pub fn replay_certificate(
    sys: &MahlerSystem,
    assumption: Option<&Assumption>,
    bounds: &SolveBounds,
    cert: &Certificate,
) -> Result<bool> {
    let fresh = certify(sys, assumption, bounds)?;
    Ok(fresh == *cert)
}
