//! Job dispatch: every solver, certifier, and series operation as a command
//! with structured, replayable output.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use mahler::{
    certify, certify_equation, classify_order1, find_relations, gen_baum_sweet,
    gen_rudin_shapiro, solve_integrability, solve_multiplicative, solve_telescoper,
    verify_series_solution, Assumption, AssumptionKind, MahlerSystem, Mat, Order1Class, RatFun,
    ScalarMahlerEq, SolveBounds, SolveOutcome, TruncatedSeries,
};

use crate::document::Doc;
use crate::eval::{eval_text, Value};
use crate::CliError;

#[derive(Subcommand, Clone, Debug)]
pub enum JobSpec {
    /// Decide hyperalgebraicity of the order-one equation phi(y) = a y.
    Classify1(Classify1Args),
    /// Solve lambda * d(z^p) - d(z) = b(z) for rational d.
    Telescope(TelescopeArgs),
    /// Solve a = c * z^m * phi(f)/f for rational f.
    Multiplicative(MultiplicativeArgs),
    /// Solve the matrix integrability equation for rational B.
    Integrability(IntegrabilityArgs),
    /// Certify hypertranscendence of a Mahler system.
    Certify(CertifyArgs),
    /// Certify hypertranscendence of a scalar Mahler equation.
    CertifyEq(CertifyEqArgs),
    /// Generate or expand a truncated series.
    Series(SeriesArgs),
    /// Check a candidate series vector against a Mahler system.
    Verify(VerifyArgs),
    /// Search algebro-differential relations among series.
    Relations(RelationsArgs),
    /// Block-diagonal sum of two Mahler systems.
    DirectSum(DirectSumArgs),
}

#[derive(Args, Clone, Debug)]
pub struct BoundsArgs {
    /// Numerator degree cap for rational-solution searches.
    #[arg(long = "max-num-deg")]
    pub max_num_deg: Option<usize>,
    /// Denominator degree cap for rational-solution searches.
    #[arg(long = "max-den-deg")]
    pub max_den_deg: Option<usize>,
    /// Series working precision (default 2*(num+den)+4).
    #[arg(long)]
    pub precision: Option<usize>,
    /// Number of dyadic escalation steps.
    #[arg(long)]
    pub escalations: Option<u32>,
}

impl BoundsArgs {
    fn resolve(&self, input_total_degree: usize) -> Result<SolveBounds, CliError> {
        let default = SolveBounds::default_for_total_degree(input_total_degree);
        let mn = self.max_num_deg.unwrap_or(default.max_num_degree);
        let md = self.max_den_deg.unwrap_or(default.max_den_degree);
        let esc = self.escalations.unwrap_or(default.escalation_steps);
        let prec = self.precision.unwrap_or(2 * (mn + md) + 4);
        SolveBounds::new(mn, md, prec, esc).map_err(CliError::Math)
    }

    fn replay_args(bounds: &SolveBounds) -> Vec<String> {
        vec![
            "--max-num-deg".into(),
            bounds.max_num_degree.to_string(),
            "--max-den-deg".into(),
            bounds.max_den_degree.to_string(),
            "--precision".into(),
            bounds.series_precision.to_string(),
            "--escalations".into(),
            bounds.escalation_steps.to_string(),
        ]
    }
}

#[derive(Args, Clone, Debug)]
pub struct Classify1Args {
    /// Order-one coefficient a (expression or @file).
    #[arg(long)]
    pub a: String,
    /// Mahler radix.
    #[arg(long)]
    pub p: u32,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

#[derive(Args, Clone, Debug)]
pub struct TelescopeArgs {
    /// Right-hand side b (expression or @file).
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub p: u32,
    /// Telescoper weight lambda, a rational outside {0, 1}.
    #[arg(long)]
    pub lambda: String,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

#[derive(Args, Clone, Debug)]
pub struct MultiplicativeArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub p: u32,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

#[derive(Args, Clone, Debug)]
pub struct IntegrabilityArgs {
    /// Square coefficient matrix (expression or @file).
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub p: u32,
    /// Use the traceless form of the equation.
    #[arg(long, default_value_t = false)]
    pub traceless: bool,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssumptionKindArg {
    /// The difference Galois group contains SL_n(C).
    ContainsSl,
    /// The difference Galois group equals the stated group.
    Equals,
}

impl AssumptionKindArg {
    fn to_kind(self) -> AssumptionKind {
        match self {
            AssumptionKindArg::ContainsSl => AssumptionKind::GaloisContainsSl,
            AssumptionKindArg::Equals => AssumptionKind::GaloisEquals,
        }
    }
    fn label(self) -> &'static str {
        match self {
            AssumptionKindArg::ContainsSl => "contains-sl",
            AssumptionKindArg::Equals => "equals",
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct AssumptionArgs {
    /// Provenance of the Galois-group assumption (citation or transcript);
    /// copied verbatim into the certificate.
    #[arg(long)]
    pub assumption: String,
    #[arg(long = "assumption-kind", value_enum, default_value = "contains-sl")]
    pub assumption_kind: AssumptionKindArg,
    /// Exact group statement (required with --assumption-kind equals).
    #[arg(long)]
    pub statement: Option<String>,
}

impl AssumptionArgs {
    fn build(&self, n: usize) -> Result<Assumption, CliError> {
        let statement = match (&self.statement, self.assumption_kind) {
            (Some(s), _) => s.clone(),
            (None, AssumptionKindArg::ContainsSl) => {
                format!("the difference Galois group over K contains SL_{n}(C)")
            }
            (None, AssumptionKindArg::Equals) => {
                return Err(CliError::BadArgs(
                    "--assumption-kind equals requires --statement".into(),
                ))
            }
        };
        Assumption::new(self.assumption_kind.to_kind(), &statement, &self.assumption)
            .map_err(CliError::Math)
    }

    fn replay_args(&self) -> Vec<String> {
        let mut out = vec![
            "--assumption".into(),
            self.assumption.clone(),
            "--assumption-kind".into(),
            self.assumption_kind.label().into(),
        ];
        if let Some(s) = &self.statement {
            out.push("--statement".into());
            out.push(s.clone());
        }
        out
    }
}

#[derive(Args, Clone, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub p: u32,
    #[command(flatten)]
    pub assumption: AssumptionArgs,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

#[derive(Args, Clone, Debug)]
pub struct CertifyEqArgs {
    /// Equation coefficients a_0 .. a_n in order (repeat the flag).
    #[arg(long = "coeff", required = true, num_args = 1)]
    pub coeffs: Vec<String>,
    #[arg(long)]
    pub p: u32,
    #[command(flatten)]
    pub assumption: AssumptionArgs,
    #[command(flatten)]
    pub bounds: BoundsArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    BaumSweet,
    RudinShapiro,
}

#[derive(Args, Clone, Debug)]
pub struct SeriesArgs {
    /// Built-in automatic-sequence generator.
    #[arg(long, value_enum)]
    pub gen: Option<GenKind>,
    /// Rational function to expand (alternative to --gen).
    #[arg(long)]
    pub expr: Option<String>,
    /// Truncation order.
    #[arg(long)]
    pub precision: usize,
    /// Post-transform: substitute z -> z^P.
    #[arg(long)]
    pub substitute: Option<u32>,
    /// Post-transform: substitute z -> -z.
    #[arg(long = "negate-z", default_value_t = false)]
    pub negate_z: bool,
    /// Write the series to this file in the one-coefficient-per-line format.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub p: u32,
    /// Candidate solution components, one series file per coordinate.
    #[arg(long = "series", required = true, num_args = 1)]
    pub series: Vec<String>,
    /// Comparison precision (default: shortest input).
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Args, Clone, Debug)]
pub struct RelationsArgs {
    #[arg(long = "series", required = true, num_args = 1)]
    pub series: Vec<String>,
    /// Highest theta-derivative order r.
    #[arg(long = "deriv-order")]
    pub deriv_order: u32,
    /// Total degree cap D for monomials.
    #[arg(long = "total-degree")]
    pub total_degree: u32,
    /// z-degree cap e for polynomial coefficients.
    #[arg(long = "z-degree")]
    pub z_degree: u32,
    /// Truncation order N.
    #[arg(long)]
    pub precision: usize,
}

#[derive(Args, Clone, Debug)]
pub struct DirectSumArgs {
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub system2: String,
    #[arg(long)]
    pub p: u32,
    /// Radix of the second system (defaults to --p).
    #[arg(long)]
    pub p2: Option<u32>,
}

pub fn run_job(spec: &JobSpec) -> Result<Doc, CliError> {
    match spec {
        JobSpec::Classify1(a) => run_classify1(a),
        JobSpec::Telescope(a) => run_telescope(a),
        JobSpec::Multiplicative(a) => run_multiplicative(a),
        JobSpec::Integrability(a) => run_integrability(a),
        JobSpec::Certify(a) => run_certify(a),
        JobSpec::CertifyEq(a) => run_certify_eq(a),
        JobSpec::Series(a) => run_series(a),
        JobSpec::Verify(a) => run_verify(a),
        JobSpec::Relations(a) => run_relations(a),
        JobSpec::DirectSum(a) => run_direct_sum(a),
    }
}

fn run_classify1(args: &Classify1Args) -> Result<Doc, CliError> {
    let a = load_scalar(&args.a)?;
    require_radix(args.p)?;
    let bounds = args.bounds.resolve(a.total_degree())?;
    let mut doc = Doc::new("classify1");
    doc.push("input.a", a.to_string());
    doc.push("input.p", args.p.to_string());
    doc.push("bounds", bounds.to_string());
    match classify_order1(&a, args.p, &bounds).map_err(CliError::Math)? {
        Order1Class::Hyperalgebraic(w) => {
            doc.push("outcome", "hyperalgebraic");
            doc.push("witness.c", w.c.to_string());
            doc.push("witness.m", w.m.to_string());
            doc.push("witness.f", w.f.to_string());
        }
        Order1Class::NotHyperalgebraicWithin(b) => {
            doc.push("outcome", "not-hyperalgebraic-within-bounds");
            doc.push("bounds-exhausted", b.to_string());
        }
    }
    let mut parts = vec![
        "classify1".to_string(),
        "--a".into(),
        a.to_string(),
        "--p".into(),
        args.p.to_string(),
    ];
    parts.extend(BoundsArgs::replay_args(&bounds));
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_telescope(args: &TelescopeArgs) -> Result<Doc, CliError> {
    let b = load_scalar(&args.b)?;
    require_radix(args.p)?;
    let lambda = mahler::parse_rat(&args.lambda).map_err(CliError::Math)?;
    let bounds = args.bounds.resolve(b.total_degree())?;
    let mut doc = Doc::new("telescope");
    doc.push("input.b", b.to_string());
    doc.push("input.p", args.p.to_string());
    doc.push("input.lambda", lambda.to_string());
    doc.push("bounds", bounds.to_string());
    match solve_telescoper(&b, args.p, &lambda, &bounds).map_err(CliError::Math)? {
        SolveOutcome::Found(d) => {
            doc.push("outcome", "found");
            doc.push("witness.d", d.to_string());
        }
        SolveOutcome::NotFoundWithin(b) => {
            doc.push("outcome", "not-found-within-bounds");
            doc.push("bounds-exhausted", b.to_string());
        }
    }
    let mut parts = vec![
        "telescope".to_string(),
        "--b".into(),
        b.to_string(),
        "--p".into(),
        args.p.to_string(),
        "--lambda".into(),
        lambda.to_string(),
    ];
    parts.extend(BoundsArgs::replay_args(&bounds));
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_multiplicative(args: &MultiplicativeArgs) -> Result<Doc, CliError> {
    let a = load_scalar(&args.a)?;
    require_radix(args.p)?;
    let bounds = args.bounds.resolve(a.total_degree())?;
    let mut doc = Doc::new("multiplicative");
    doc.push("input.a", a.to_string());
    doc.push("input.p", args.p.to_string());
    doc.push("bounds", bounds.to_string());
    match solve_multiplicative(&a, args.p, &bounds).map_err(CliError::Math)? {
        SolveOutcome::Found(w) => {
            doc.push("outcome", "found");
            doc.push("witness.c", w.c.to_string());
            doc.push("witness.m", w.m.to_string());
            doc.push("witness.f", w.f.to_string());
        }
        SolveOutcome::NotFoundWithin(b) => {
            doc.push("outcome", "not-found-within-bounds");
            doc.push("bounds-exhausted", b.to_string());
        }
    }
    let mut parts = vec![
        "multiplicative".to_string(),
        "--a".into(),
        a.to_string(),
        "--p".into(),
        args.p.to_string(),
    ];
    parts.extend(BoundsArgs::replay_args(&bounds));
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_integrability(args: &IntegrabilityArgs) -> Result<Doc, CliError> {
    let sys = load_system(&args.system, args.p)?;
    let bounds = args.bounds.resolve(system_total_degree(&sys))?;
    let mut doc = Doc::new("integrability");
    doc.push("input.system", sys.matrix().to_string());
    doc.push("input.p", args.p.to_string());
    doc.push("input.traceless", args.traceless.to_string());
    doc.push("bounds", bounds.to_string());
    match solve_integrability(&sys, args.traceless, &bounds).map_err(CliError::Math)? {
        SolveOutcome::Found(b) => {
            doc.push("outcome", "found");
            doc.push("witness.b", b.to_string());
        }
        SolveOutcome::NotFoundWithin(b) => {
            doc.push("outcome", "not-found-within-bounds");
            doc.push("bounds-exhausted", b.to_string());
        }
    }
    let mut parts = vec![
        "integrability".to_string(),
        "--system".into(),
        sys.matrix().to_string(),
        "--p".into(),
        args.p.to_string(),
    ];
    if args.traceless {
        parts.push("--traceless".into());
    }
    parts.extend(BoundsArgs::replay_args(&bounds));
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_certify(args: &CertifyArgs) -> Result<Doc, CliError> {
    let sys = load_system(&args.system, args.p)?;
    let assumption = args.assumption.build(sys.dim())?;
    let bounds = args.bounds.resolve(system_total_degree(&sys))?;
    let mut doc = Doc::new("certify");
    doc.push("input.system", sys.matrix().to_string());
    doc.push("input.p", args.p.to_string());
    doc.push("input.determinant", sys.det().to_string());
    doc.push("bounds", bounds.to_string());
    let cert = certify(&sys, Some(&assumption), &bounds).map_err(CliError::Math)?;
    doc.push_block(&cert.render("certificate."));
    let mut parts = vec![
        "certify".to_string(),
        "--system".into(),
        sys.matrix().to_string(),
        "--p".into(),
        args.p.to_string(),
    ];
    parts.extend(args.assumption.replay_args());
    parts.extend(BoundsArgs::replay_args(&bounds));
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_certify_eq(args: &CertifyEqArgs) -> Result<Doc, CliError> {
    require_radix(args.p)?;
    let coeffs = args
        .coeffs
        .iter()
        .map(|c| load_scalar(c))
        .collect::<Result<Vec<_>, _>>()?;
    let eq = ScalarMahlerEq::new(coeffs, args.p).map_err(CliError::Math)?;
    let sys = mahler::companion_matrix(&eq);
    let assumption = args.assumption.build(eq.order())?;
    let bounds = args.bounds.resolve(system_total_degree(&sys))?;
    let mut doc = Doc::new("certify-eq");
    for (k, c) in eq.coeffs().iter().enumerate() {
        doc.push(format!("input.a{k}"), c.to_string());
    }
    doc.push("input.p", args.p.to_string());
    doc.push("input.companion", sys.matrix().to_string());
    doc.push("bounds", bounds.to_string());
    let cert = certify_equation(&eq, Some(&assumption), &bounds).map_err(CliError::Math)?;
    doc.push_block(&cert.render("certificate."));
    let mut parts = vec!["certify-eq".to_string()];
    for c in eq.coeffs() {
        parts.push("--coeff".into());
        parts.push(c.to_string());
    }
    parts.push("--p".into());
    parts.push(args.p.to_string());
    parts.extend(args.assumption.replay_args());
    parts.extend(BoundsArgs::replay_args(&bounds));
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_series(args: &SeriesArgs) -> Result<Doc, CliError> {
    if args.precision == 0 {
        return Err(CliError::BadArgs("--precision must be at least 1".into()));
    }
    let mut doc = Doc::new("series");
    let mut series = match (&args.gen, &args.expr) {
        (Some(g), None) => {
            doc.push(
                "input.gen",
                match g {
                    GenKind::BaumSweet => "baum-sweet",
                    GenKind::RudinShapiro => "rudin-shapiro",
                },
            );
            match g {
                GenKind::BaumSweet => gen_baum_sweet(args.precision),
                GenKind::RudinShapiro => gen_rudin_shapiro(args.precision),
            }
        }
        (None, Some(e)) => {
            let f = load_scalar(e)?;
            doc.push("input.expr", f.to_string());
            TruncatedSeries::from_ratfun(&f, args.precision).map_err(CliError::Math)?
        }
        _ => {
            return Err(CliError::BadArgs(
                "series needs exactly one of --gen or --expr".into(),
            ))
        }
    };
    doc.push("input.precision", args.precision.to_string());
    if let Some(p) = args.substitute {
        if p < 2 {
            return Err(CliError::BadArgs("--substitute needs p >= 2".into()));
        }
        doc.push("input.substitute", p.to_string());
        series = series.substitute(p);
    }
    if args.negate_z {
        doc.push("input.negate-z", "true");
        series = series.negate_z();
    }
    doc.push("series.precision", series.precision().to_string());
    doc.push("series.compact", series.to_compact());
    if let Some(path) = &args.out {
        std::fs::write(path, series.to_lines())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        doc.push("series.out", path.display().to_string());
    }
    let mut parts = vec!["series".to_string()];
    match (&args.gen, &args.expr) {
        (Some(GenKind::BaumSweet), _) => {
            parts.push("--gen".into());
            parts.push("baum-sweet".into());
        }
        (Some(GenKind::RudinShapiro), _) => {
            parts.push("--gen".into());
            parts.push("rudin-shapiro".into());
        }
        (None, Some(e)) => {
            parts.push("--expr".into());
            parts.push(load_scalar(e)?.to_string());
        }
        _ => unreachable!(),
    }
    parts.push("--precision".into());
    parts.push(args.precision.to_string());
    if let Some(p) = args.substitute {
        parts.push("--substitute".into());
        parts.push(p.to_string());
    }
    if args.negate_z {
        parts.push("--negate-z".into());
    }
    if let Some(path) = &args.out {
        parts.push("--out".into());
        parts.push(path.display().to_string());
    }
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_verify(args: &VerifyArgs) -> Result<Doc, CliError> {
    let sys = load_system(&args.system, args.p)?;
    let series = args
        .series
        .iter()
        .map(|p| load_series_file(p))
        .collect::<Result<Vec<_>, _>>()?;
    let min_prec = series.iter().map(|s| s.precision()).min().unwrap_or(0);
    let n = args.precision.unwrap_or(min_prec).min(min_prec);
    let mut doc = Doc::new("verify");
    doc.push("input.system", sys.matrix().to_string());
    doc.push("input.p", args.p.to_string());
    for (i, path) in args.series.iter().enumerate() {
        doc.push(format!("input.series.{i}"), path.clone());
    }
    doc.push("input.precision", n.to_string());
    let val = verify_series_solution(&sys, &series, n).map_err(CliError::Math)?;
    doc.push("residual-valuation", val.to_string());
    // Guard margin 2 absorbs the z-power cleared from poles of A at 0.
    doc.push(
        "verified-to-precision",
        (val >= n as i64 - 2).to_string(),
    );
    let mut parts = vec![
        "verify".to_string(),
        "--system".into(),
        sys.matrix().to_string(),
        "--p".into(),
        args.p.to_string(),
    ];
    for path in &args.series {
        parts.push("--series".into());
        parts.push(path.clone());
    }
    parts.push("--precision".into());
    parts.push(n.to_string());
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_relations(args: &RelationsArgs) -> Result<Doc, CliError> {
    let series = args
        .series
        .iter()
        .map(|p| load_series_file(p))
        .collect::<Result<Vec<_>, _>>()?;
    let report = find_relations(
        &series,
        args.deriv_order,
        args.total_degree,
        args.z_degree,
        args.precision,
    )
    .map_err(CliError::Math)?;
    let mut doc = Doc::new("relations");
    for (i, path) in args.series.iter().enumerate() {
        doc.push(format!("input.series.{i}"), path.clone());
    }
    doc.push("search.deriv-order", report.params.deriv_order.to_string());
    doc.push("search.total-degree", report.params.total_degree.to_string());
    doc.push("search.z-degree", report.params.z_degree.to_string());
    doc.push("search.precision", report.params.precision.to_string());
    doc.push("relations.count", report.relations.len().to_string());
    for (i, rel) in report.relations.iter().enumerate() {
        doc.push(
            format!("relations.{i}"),
            rel.to_text(&report.quantity_labels),
        );
    }
    let mut parts = vec!["relations".to_string()];
    for path in &args.series {
        parts.push("--series".into());
        parts.push(path.clone());
    }
    parts.extend([
        "--deriv-order".into(),
        args.deriv_order.to_string(),
        "--total-degree".into(),
        args.total_degree.to_string(),
        "--z-degree".into(),
        args.z_degree.to_string(),
        "--precision".into(),
        args.precision.to_string(),
    ]);
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn run_direct_sum(args: &DirectSumArgs) -> Result<Doc, CliError> {
    let s1 = load_system(&args.system, args.p)?;
    let s2 = load_system(&args.system2, args.p2.unwrap_or(args.p))?;
    let sum = s1.direct_sum(&s2).map_err(CliError::Math)?;
    let mut doc = Doc::new("direct-sum");
    doc.push("input.system", s1.matrix().to_string());
    doc.push("input.system2", s2.matrix().to_string());
    doc.push("input.p", s1.p().to_string());
    doc.push("result.dim", sum.dim().to_string());
    doc.push("result.matrix", sum.matrix().to_string());
    doc.push("result.det", sum.det().to_string());
    let parts = vec![
        "direct-sum".to_string(),
        "--system".into(),
        s1.matrix().to_string(),
        "--system2".into(),
        s2.matrix().to_string(),
        "--p".into(),
        s1.p().to_string(),
    ];
    doc.push("replay", replay_line(&parts));
    Ok(doc)
}

fn require_radix(p: u32) -> Result<(), CliError> {
    if p < 2 {
        return Err(CliError::BadArgs(format!(
            "--p must be at least 2, got {p}"
        )));
    }
    Ok(())
}

/// Expands `@path` arguments to file contents.
fn expand_arg(text: &str) -> Result<String, CliError> {
    if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))
    } else {
        Ok(text.to_string())
    }
}

fn load_scalar(text: &str) -> Result<RatFun, CliError> {
    let expanded = expand_arg(text)?;
    match eval_text(expanded.trim())? {
        Value::Scalar(f) => Ok(f),
        Value::Matrix(_) => Err(CliError::BadArgs(
            "expected a scalar expression, found a matrix".into(),
        )),
    }
}

fn load_system(text: &str, p: u32) -> Result<MahlerSystem, CliError> {
    require_radix(p)?;
    let expanded = expand_arg(text)?;
    let m = match eval_text(expanded.trim())? {
        Value::Matrix(m) => m,
        Value::Scalar(f) => {
            // A 1 x 1 system may be written as a bare scalar.
            Mat::from_rows(vec![vec![f]]).map_err(CliError::Math)?
        }
    };
    MahlerSystem::new(m, p).map_err(CliError::Math)
}

fn load_series_file(path: &str) -> Result<TruncatedSeries, CliError> {
    let path = path.strip_prefix('@').unwrap_or(path);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.split_whitespace().count() == 3 && !first.contains('/') {
        TruncatedSeries::from_lines(&text).map_err(CliError::Math)
    } else {
        TruncatedSeries::from_compact(&text).map_err(CliError::Math)
    }
}

fn system_total_degree(sys: &MahlerSystem) -> usize {
    sys.matrix().entries().map(|e| e.total_degree()).sum()
}

fn sh_quote(s: &str) -> String {
    let plain = !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_./@=".contains(c));
    if plain {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', "'\\''"))
    }
}

fn replay_line(parts: &[String]) -> String {
    let mut out = String::from("mahler");
    for p in parts {
        out.push(' ');
        out.push_str(&sh_quote(p));
    }
    out
}
