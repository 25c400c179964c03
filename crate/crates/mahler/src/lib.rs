//! Exact arithmetic for Mahler equations.
//!
//! This crate decides hyperalgebraicity of order-one Mahler equations over
//! the rationals, searches rational solutions of the telescoper and matrix
//! isomonodromy equations with explicitly bounded negative answers, and
//! composes the criteria into machine-checkable hypertranscendence
//! certificates. A truncated-series lab generates the Baum-Sweet and
//! Rudin-Shapiro fixtures, verifies system residuals, reconstructs rational
//! functions from series, and falsifies low-degree algebro-differential
//! relations.
//!
//! Module map:
//! - [`rat`], [`poly`], [`ratfun`]: exact scalars, dense polynomials, and
//!   normalized rational functions with the Mahler substitution and the Euler
//!   derivation as first-class operators;
//! - [`matrix`]: matrices over rational functions and [`MahlerSystem`];
//! - [`bounds`], [`telescope`], [`multiplicative`], [`integrability`]: the
//!   bounded rational-solution solvers;
//! - [`classify`], [`certify`]: the order-one classifier and the certificate
//!   pipeline;
//! - [`series`], [`relations`]: the truncated-series engine and the relation
//!   falsifier;
//! - [`linalg`], [`digest`]: exact linear algebra and stable input digests.

pub mod bounds;
pub mod certify;
pub mod classify;
pub mod digest;
pub mod error;
pub mod integrability;
pub mod linalg;
pub mod matrix;
pub mod multiplicative;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod relations;
pub mod series;
pub mod telescope;

pub use bounds::{SolveBounds, SolveOutcome};
pub use certify::{
    certify, certify_equation, companion_matrix, replay_certificate, Assumption, AssumptionKind,
    CertStep, Certificate, ScalarMahlerEq, Verdict,
};
pub use classify::{classify_order1, Order1Class};
pub use error::MahlerError;
pub use integrability::{solve_integrability, verify_integrability};
pub use matrix::{baum_sweet_system, rudin_shapiro_system, MahlerSystem, Mat};
pub use multiplicative::{solve_multiplicative, MultiplicativeWitness};
pub use poly::Poly;
pub use rat::{parse_rat, rat, rat_int, Rat};
pub use ratfun::{MonomialDecomposition, RatFun};
pub use relations::{find_relations, Relation, RelationReport, SearchParams};
pub use series::{
    gen_baum_sweet, gen_rudin_shapiro, pade_reconstruct, verify_series_solution, TruncatedSeries,
};
pub use telescope::solve_telescoper;
