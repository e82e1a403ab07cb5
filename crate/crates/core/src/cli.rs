//! Command-line front end. Every subcommand writes one report (JSON or CSV)
//! and exits with 0 when all checks pass, 1 when one fails and 2 when the
//! configuration is invalid.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::brieskorn::{sample_level_set, sample_manifold, Exponents, LevelSpec, Manifold};
use crate::contact::{
    alpha_minus_search, branch_points, epsilon_search, lemma44_ratio, pullback_check, s_derivative_check,
    verify_alpha_s_family, verify_contact, verify_family, AlphaMinusCase, CONTACT_THRESHOLD, DEGENERATE_TOL,
    S_DERIVATIVE_STEP,
};
use crate::error::{Error, Result};
use crate::exterior::DiagonalOneForm;
use crate::monodromy::{
    char_poly, compare_char_polys, lcm, matrix_order_check, monodromy_matrix, reduced_homology_ranks,
    rotation_induced_map, JoinComplex, SIMPLEX_BUDGET,
};
use crate::openbook::{
    binding_report, fibers_over, page_symplectic_check, reeb_checks, sample_lifts, sample_off_binding,
    theta_tilde_power_residual, CoveringSpec, OpenBookSpec, PAGE_THRESHOLD, QUADRATURE_NODES,
};
use crate::report::{json_f64, CheckResult, VerificationReport, Witness};
use crate::suite;

pub const TOOL: &str = "brieskorn-lab";
pub const THREADS_ENV: &str = "BRIESKORN_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = TOOL, version, about = "Contact-geometric checks on Brieskorn manifolds and Milnor open books")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct Common {
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
    /// Report path; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// File of `key = value` lines, one per flag; explicit flags win.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// `(s·a_0, a_1, …)` on `Σ_s`.
    AlphaS,
    Std,
    /// `(a_0, …, a_n)`.
    Beta,
    Gamma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Linear interpolation from `β` to `α_std` on the sphere, over `--grid`.
    Interpolation,
    /// `α_s` on `Σ_s` for `s` in `--grid`.
    AlphaS,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Contact condition of one form on Σ_s.
    VerifyContact {
        #[arg(long, value_parser = parse_exponents, default_value = "2,2,2")]
        exponents: Exponents,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, value_enum, default_value_t = FormKind::AlphaS)]
        form: FormKind,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = CONTACT_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Contact condition along a one-parameter family of forms.
    VerifyFamily {
        #[arg(long, value_parser = parse_exponents, default_value = "2,3,4")]
        exponents: Exponents,
        #[arg(long, value_enum, default_value_t = FamilyKind::Interpolation)]
        family: FamilyKind,
        #[arg(long, value_parser = parse_grid, default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1")]
        grid: Grid,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = CONTACT_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Both sides of the top-degree identity for α_s.
    Lemma44 {
        #[arg(long, value_parser = parse_exponents, default_value = "2,2,2")]
        exponents: Exponents,
        #[arg(long = "s-grid", value_parser = parse_grid, default_value = "0.25,0.5,1")]
        s_grid: Grid,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Largest ε = ε_max·2^{-k} making α_0 + εγ contact on the cylinder model.
    EpsilonSearch {
        #[arg(long, value_parser = parse_exponents, default_value = "2,2,2")]
        exponents: Exponents,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long = "branch-samples", default_value_t = 50)]
        branch_samples: usize,
        #[arg(long = "eps-max", default_value_t = 1.0)]
        eps_max: f64,
        #[arg(long, default_value_t = CONTACT_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        common: Common,
    },
    /// α_0 equals the pullback of β under the projection dropping z_0.
    Pullback {
        #[arg(long, value_parser = parse_exponents, default_value = "2,2,2")]
        exponents: Exponents,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// s-derivative at s = 0 of the pulled-back family.
    SDerivative {
        #[arg(long, value_parser = parse_exponents, default_value = "2,2,2")]
        exponents: Exponents,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = S_DERIVATIVE_STEP)]
        h: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Sign of the α₋ bracket over a grid of tuples and constants C.
    AlphaMinus {
        #[arg(long = "exponents-grid", value_parser = parse_exponent_grid, default_value = "2,2,2;3,2,2;4,2,2;5,2,2")]
        exponents_grid: ExponentGrid,
        #[arg(long = "c-grid", value_parser = parse_grid, default_value = "10,100")]
        c_grid: Grid,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Reeb field, pages, covering and (for two exponents) binding checks.
    OpenbookChecks {
        /// Exponents of the sphere's polynomial.
        #[arg(long, value_parser = parse_exponents, default_value = "2,2,2")]
        exponents: Exponents,
        /// Degree of the branched covering over the sphere.
        #[arg(long, default_value_t = 3)]
        a0: u32,
        #[arg(long, default_value_t = 300)]
        samples: usize,
        #[arg(long = "t-grid", value_parser = parse_grid, default_value = "0,0.5,1,3.141592653589793,10")]
        t_grid: Grid,
        #[arg(long, default_value_t = PAGE_THRESHOLD)]
        threshold: f64,
        #[arg(long, default_value_t = QUADRATURE_NODES)]
        nodes: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Ψ, μ, determinant, order and characteristic polynomial.
    Monodromy {
        #[arg(long, value_parser = parse_exponents, default_value = "3,2")]
        exponents: Exponents,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced integral homology of the join skeleton.
    JoinHomology {
        #[arg(long, value_parser = parse_exponents, default_value = "2,2,2")]
        exponents: Exponents,
        #[arg(long, default_value_t = SIMPLEX_BUDGET)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Map induced on top homology by rotating each vertex set.
    RotationMap {
        #[arg(long, value_parser = parse_exponents, default_value = "3,2")]
        exponents: Exponents,
        #[arg(long, value_parser = parse_shifts)]
        shifts: Option<Shifts>,
        #[arg(long, default_value_t = SIMPLEX_BUDGET)]
        budget: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The acceptance suite.
    All {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ExponentGrid(pub Vec<Exponents>);

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Shifts(pub Vec<u32>);

/// Comma-separated real values.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grid(pub Vec<f64>);

fn parse_exponents(s: &str) -> std::result::Result<Exponents, String> {
    Exponents::parse(s).map_err(|e| e.to_string())
}

fn parse_exponent_grid(s: &str) -> std::result::Result<ExponentGrid, String> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(parse_exponents).collect::<std::result::Result<_, _>>().map(ExponentGrid)
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    s.split(',')
        .map(|t| {
            let x: f64 = t.trim().parse().map_err(|_| format!("not a number: {t:?}"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("not finite: {t:?}"))
            }
        })
        .collect::<std::result::Result<_, _>>()
        .map(Grid)
}

fn parse_shifts(s: &str) -> std::result::Result<Shifts, String> {
    s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| format!("not a shift: {t:?}"))).collect::<std::result::Result<_, _>>().map(Shifts)
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyContact { .. } => "verify-contact",
            Command::VerifyFamily { .. } => "verify-family",
            Command::Lemma44 { .. } => "lemma44",
            Command::EpsilonSearch { .. } => "epsilon-search",
            Command::Pullback { .. } => "pullback",
            Command::SDerivative { .. } => "s-derivative",
            Command::AlphaMinus { .. } => "alpha-minus",
            Command::OpenbookChecks { .. } => "openbook-checks",
            Command::Monodromy { .. } => "monodromy",
            Command::JoinHomology { .. } => "join-homology",
            Command::RotationMap { .. } => "rotation-map",
            Command::All { .. } => "all",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::VerifyContact { common, .. }
            | Command::VerifyFamily { common, .. }
            | Command::Lemma44 { common, .. }
            | Command::EpsilonSearch { common, .. }
            | Command::Pullback { common, .. }
            | Command::SDerivative { common, .. }
            | Command::AlphaMinus { common, .. }
            | Command::OpenbookChecks { common, .. }
            | Command::Monodromy { common, .. }
            | Command::JoinHomology { common, .. }
            | Command::RotationMap { common, .. }
            | Command::All { common } => common,
        }
    }

    /// Flag values as given, keyed by flag name.
    fn config_echo(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), v);
        };
        match self {
            Command::VerifyContact { exponents, s, form, samples, threshold, .. } => {
                put("exponents", js(exponents));
                put("s", json_f64(*s));
                put("form", js(form));
                put("samples", js(samples));
                put("threshold", json_f64(*threshold));
            }
            Command::VerifyFamily { exponents, family, grid, samples, threshold, .. } => {
                put("exponents", js(exponents));
                put("family", js(family));
                put("grid", js(grid));
                put("samples", js(samples));
                put("threshold", json_f64(*threshold));
            }
            Command::Lemma44 { exponents, s_grid, samples, tolerance, .. } => {
                put("exponents", js(exponents));
                put("s_grid", js(s_grid));
                put("samples", js(samples));
                put("tolerance", json_f64(*tolerance));
            }
            Command::EpsilonSearch { exponents, samples, branch_samples, eps_max, threshold, .. } => {
                put("exponents", js(exponents));
                put("samples", js(samples));
                put("branch_samples", js(branch_samples));
                put("eps_max", json_f64(*eps_max));
                put("threshold", json_f64(*threshold));
            }
            Command::Pullback { exponents, samples, .. } => {
                put("exponents", js(exponents));
                put("samples", js(samples));
            }
            Command::SDerivative { exponents, samples, h, .. } => {
                put("exponents", js(exponents));
                put("samples", js(samples));
                put("h", json_f64(*h));
            }
            Command::AlphaMinus { exponents_grid, c_grid, samples, .. } => {
                put("exponents_grid", js(exponents_grid));
                put("c_grid", js(c_grid));
                put("samples", js(samples));
            }
            Command::OpenbookChecks { exponents, a0, samples, t_grid, threshold, nodes, .. } => {
                put("exponents", js(exponents));
                put("a0", js(a0));
                put("samples", js(samples));
                put("t_grid", js(t_grid));
                put("threshold", json_f64(*threshold));
                put("nodes", js(nodes));
            }
            Command::Monodromy { exponents, .. } => put("exponents", js(exponents)),
            Command::JoinHomology { exponents, budget, .. } => {
                put("exponents", js(exponents));
                put("budget", js(budget));
            }
            Command::RotationMap { exponents, shifts, budget, .. } => {
                put("exponents", js(exponents));
                put("shifts", js(shifts));
                put("budget", js(budget));
            }
            Command::All { .. } => {}
        }
        let c = self.common();
        m.insert("seed".into(), Value::from(c.seed));
        m.insert("format".into(), serde_json::to_value(c.format).unwrap_or(Value::Null));
        m
    }
}

fn js<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// The report written by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunOutput {
    pub tool: String,
    pub version: String,
    pub check: String,
    pub config: BTreeMap<String, Value>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub results: Vec<CheckResult>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl RunOutput {
    fn new(cmd: &Command) -> Self {
        RunOutput {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            check: cmd.name().into(),
            config: cmd.config_echo(),
            seed: cmd.common().seed,
            tolerances: BTreeMap::new(),
            results: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            pass: false,
        }
    }

    /// Appends a report's rows, prefixing names with `prefix/` when given.
    fn absorb(&mut self, report: VerificationReport, prefix: Option<&str>) {
        let tag = |s: String| match prefix {
            Some(p) => format!("{p}/{s}"),
            None => s,
        };
        for (k, v) in report.tolerances {
            self.tolerances.insert(tag(k), v);
        }
        for mut r in report.results {
            r.name = tag(r.name);
            self.results.push(r);
        }
        self.witnesses.extend(report.witnesses);
        self.notes.extend(report.notes.into_iter().map(tag));
    }

    fn finish(mut self) -> Self {
        self.pass = !self.results.is_empty() && self.results.iter().all(|r| r.pass);
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One line per result row; `value` and `witness` hold compact JSON.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["check", "seed", "name", "value", "threshold", "pass", "witness"]).map_err(io)?;
        for r in &self.results {
            w.write_record([
                self.check.clone(),
                self.seed.to_string(),
                r.name.clone(),
                serde_json::to_string(&r.value)?,
                r.threshold.map(|t| format!("{t:e}")).unwrap_or_default(),
                r.pass.to_string(),
                r.witness.as_ref().map(serde_json::to_string).transpose()?.unwrap_or_default(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

fn run_verify_contact(e: &Exponents, s: f64, form: FormKind, samples: usize, threshold: f64, seed: u64) -> Result<VerificationReport> {
    let spec = LevelSpec::interpolated(e.clone(), s)?;
    let a = e.as_slice();
    let form = match form {
        FormKind::AlphaS => DiagonalOneForm::alpha_s(a, s),
        FormKind::Std => DiagonalOneForm::standard(a.len()),
        FormKind::Beta => DiagonalOneForm::weighted(a),
        FormKind::Gamma => DiagonalOneForm::gamma(a.len()),
    };
    let pts = sample_level_set(&spec, samples, seed)?;
    let mut r = verify_contact(&form, &Manifold::Level(spec), &pts, threshold)?;
    r.seed = Some(seed);
    Ok(r)
}

fn run_lemma44(e: &Exponents, s_grid: &[f64], samples: usize, tol: f64, seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lemma44")
        .param("exponents", e.as_slice())
        .param("s_grid", s_grid)
        .tolerance("ratio", tol)
        .tolerance("degenerate", DEGENERATE_TOL);
    report.sample_count = samples;
    report.seed = Some(seed);
    for &s in s_grid {
        let spec = LevelSpec::interpolated(e.clone(), s)?;
        let (mut general, mut on, mut missing) = (0.0f64, 0.0f64, 0usize);
        for z in sample_level_set(&spec, samples, seed)? {
            let v = lemma44_ratio(e, s, &z)?;
            match (v.ratio, v.ratio_on_manifold) {
                (Some(r), Some(q)) => {
                    general = general.max((r - 1.0).norm());
                    on = on.max((q - 1.0).norm());
                }
                _ => missing += 1,
            }
        }
        report.push(CheckResult::at_most(format!("s={s}: max_ratio_deviation_general"), general, tol));
        report.push(CheckResult::at_most(format!("s={s}: max_ratio_deviation_on_manifold"), on, tol));
        report.push(CheckResult::flag(format!("s={s}: degenerate_denominators"), missing, missing == 0));
    }
    let (mut lhs, mut bracket) = (0.0f64, 0.0f64);
    for z in branch_points(e, samples.min(50), seed)? {
        let v = lemma44_ratio(e, 0.0, &z)?;
        lhs = lhs.max(v.lhs.norm());
        bracket = bracket.max(v.bracket_on_manifold.abs());
    }
    report.push(CheckResult::at_most("locus: max_abs_lhs", lhs, DEGENERATE_TOL));
    report.push(CheckResult::at_most("locus: max_abs_bracket", bracket, 0.0));
    Ok(report.finish())
}

fn run_alpha_minus(grid: &[Exponents], c_grid: &[f64], samples: usize, seed: u64) -> Result<VerificationReport> {
    let cases = alpha_minus_search(grid, c_grid, samples, seed)?;
    let mut report = VerificationReport::new("alpha_minus").param("c_grid", c_grid);
    report.sample_count = samples;
    report.seed = Some(seed);
    for c in &cases {
        // uniform sign is asserted only for tuples (a_0, a_1, …, a_1)
        let tail = &c.exponents[1..];
        let claimed = tail.iter().all(|&a| a == tail[0]);
        let name = format!("{:?} C={}: uniform_sign", c.exponents, c.c);
        let mut row = CheckResult::flag(name, case_summary(c), !claimed || c.uniform_sign);
        if let Some(w) = &c.witness {
            row = row.with_witness(w);
        }
        report.push(row);
    }
    let witnesses = cases.iter().filter(|c| c.witness.is_some()).count();
    report.notes.push(format!("{witnesses} sign-change witness(es)"));
    Ok(report.finish())
}

fn case_summary(c: &AlphaMinusCase) -> Value {
    serde_json::json!({
        "min": json_f64(c.min), "max": json_f64(c.max), "uniform_sign": c.uniform_sign,
        "direct_uniform_sign": c.direct_uniform_sign, "direct_min_abs": json_f64(c.direct_min_abs),
    })
}

fn run_openbook(out: &mut RunOutput, tail: &Exponents, a0: u32, samples: usize, t_grid: &[f64], threshold: f64, nodes: usize, seed: u64) -> Result<()> {
    let spec = OpenBookSpec::new(tail.clone());
    let pts = sample_off_binding(&spec, samples, seed)?;
    out.absorb(reeb_checks(&spec, &pts, t_grid)?, Some("reeb"));
    out.absorb(page_symplectic_check(&spec, &pts, threshold)?, Some("pages"));

    let full = Exponents::new(std::iter::once(a0).chain(tail.as_slice().iter().copied()).collect())?;
    let cov = CoveringSpec::new(full);
    let lifts = sample_lifts(&cov, samples, seed)?;
    let power = theta_tilde_power_residual(&cov, &lifts)?;
    let mut generic_ok = true;
    for w in &pts {
        generic_ok &= fibers_over(&cov, w)?.len() == a0 as usize;
    }
    let branch = sample_level_set(&LevelSpec::brieskorn(tail.clone()), samples.min(50), seed)?;
    let mut branch_ok = true;
    for w in &branch {
        branch_ok &= fibers_over(&cov, w)?.len() == 1;
    }
    out.tolerances.insert("covering/theta_tilde_power".into(), 1e-12);
    out.results.push(CheckResult::at_most("covering/theta_tilde_power_residual", power, 1e-12));
    out.results.push(CheckResult::flag("covering/generic_fiber_count", a0, generic_ok));
    out.results.push(CheckResult::flag("covering/branch_fiber_count", 1, branch_ok));

    if let [b0, b1] = tail.as_slice() {
        out.absorb(binding_report(*b0, *b1, nodes)?, Some("binding"));
    } else {
        out.notes.push("binding loops are computed for two exponents only".into());
    }
    Ok(())
}

fn run_monodromy(out: &mut RunOutput, tail: &Exponents) -> Result<()> {
    let m = monodromy_matrix(tail.as_slice())?;
    let det = m.psi.det()?;
    let period = 2 * lcm(tail.as_slice());
    let order = matrix_order_check(&m.psi, period)?;
    let cp = char_poly(&m.psi)?;
    out.results.push(CheckResult::flag("mu", m.mu, m.psi.rows() as u64 == m.mu));
    out.results.push(CheckResult::flag("psi", &m.psi, true));
    out.results.push(CheckResult::flag("det", det.to_string(), det == 1.into()));
    out.results.push(CheckResult::flag("order", order, order.is_some_and(|k| period.is_multiple_of(k))));
    out.results.push(CheckResult::flag("char_poly", serde_json::json!({"coeffs": &cp, "display": cp.to_string()}), cp.is_monic()));
    out.results.push(CheckResult::flag("hypothesis_n_gt_1", m.n_gt_1, true));
    out.results.push(CheckResult::flag("hypothesis_gcd_is_one", m.gcd_is_one, true));
    if !(m.n_gt_1 && m.gcd_is_one) {
        out.notes.push("tuple is outside the hypotheses n > 1 and gcd = 1".into());
    }
    Ok(())
}

fn run_rotation(out: &mut RunOutput, parts: &Exponents, shifts: Option<&[u32]>, budget: usize) -> Result<()> {
    let j = JoinComplex::new(parts.as_slice().to_vec())?;
    let rot = rotation_induced_map(&j, shifts, budget)?;
    let a = char_poly(&rot)?;
    out.results.push(CheckResult::flag("induced_map", &rot, true));
    out.results.push(CheckResult::flag("rotation_char_poly", serde_json::json!({"coeffs": &a, "display": a.to_string()}), true));
    if shifts.is_none() && parts.as_slice().iter().all(|&p| p >= 2) {
        let b = char_poly(&monodromy_matrix(parts.as_slice())?.psi)?;
        let rel = compare_char_polys(&a, &b);
        let ok = matches!(rel, crate::monodromy::CharPolyRelation::Equal | crate::monodromy::CharPolyRelation::Reciprocal);
        out.results.push(CheckResult::flag("psi_char_poly", serde_json::json!({"coeffs": &b, "display": b.to_string()}), true));
        out.results.push(CheckResult::flag("relation_to_psi", rel, ok));
    }
    Ok(())
}

/// Runs a parsed command and returns its report.
pub fn execute(cmd: &Command) -> Result<RunOutput> {
    let mut out = RunOutput::new(cmd);
    let seed = cmd.common().seed;
    match cmd {
        Command::VerifyContact { exponents, s, form, samples, threshold, .. } => {
            out.absorb(run_verify_contact(exponents, *s, *form, *samples, *threshold, seed)?, None);
        }
        Command::VerifyFamily { exponents, family, grid, samples, threshold, .. } => {
            let r = match family {
                FamilyKind::Interpolation => {
                    let sphere = Manifold::Sphere(exponents.len());
                    let pts = sample_manifold(&sphere, *samples, seed)?.points;
                    let beta = DiagonalOneForm::weighted(exponents.as_slice());
                    let std = DiagonalOneForm::standard(exponents.len());
                    verify_family(|t| beta.lerp(&std, t), &grid.0, &sphere, &pts, *threshold)?
                }
                FamilyKind::AlphaS => verify_alpha_s_family(exponents, &grid.0, *samples, seed, *threshold)?,
            };
            out.absorb(r, None);
        }
        Command::Lemma44 { exponents, s_grid, samples, tolerance, .. } => {
            out.absorb(run_lemma44(exponents, &s_grid.0, *samples, *tolerance, seed)?, None);
        }
        Command::EpsilonSearch { exponents, samples, branch_samples, eps_max, threshold, .. } => {
            let pts = sample_level_set(&LevelSpec::cylinder(exponents.clone()), *samples, seed)?;
            let branch = if *branch_samples > 0 { branch_points(exponents, *branch_samples, seed)? } else { Vec::new() };
            out.absorb(epsilon_search(exponents, &pts, &branch, *eps_max, *threshold)?.report, None);
        }
        Command::Pullback { exponents, samples, .. } => {
            let pts = sample_level_set(&LevelSpec::cylinder(exponents.clone()), *samples, seed)?;
            out.absorb(pullback_check(exponents, &pts, seed)?, None);
        }
        Command::SDerivative { exponents, samples, h, .. } => {
            let pts = sample_level_set(&LevelSpec::cylinder(exponents.clone()), *samples, seed)?;
            out.absorb(s_derivative_check(exponents, &pts, *h, seed)?, None);
        }
        Command::AlphaMinus { exponents_grid, c_grid, samples, .. } => {
            out.absorb(run_alpha_minus(&exponents_grid.0, &c_grid.0, *samples, seed)?, None);
        }
        Command::OpenbookChecks { exponents, a0, samples, t_grid, threshold, nodes, .. } => {
            run_openbook(&mut out, exponents, *a0, *samples, &t_grid.0, *threshold, *nodes, seed)?;
        }
        Command::Monodromy { exponents, .. } => run_monodromy(&mut out, exponents)?,
        Command::JoinHomology { exponents, budget, .. } => {
            let j = JoinComplex::new(exponents.as_slice().to_vec())?;
            let h = reduced_homology_ranks(&j, *budget)?;
            let mu: u64 = exponents.as_slice().iter().map(|&a| a as u64 - 1).product();
            let mut expected = vec![0u64; j.dim() + 1];
            expected[j.dim()] = mu;
            let got: Vec<u64> = h.ranks.iter().map(|&r| r as u64).collect();
            out.results.push(CheckResult::flag("reduced_ranks", &h.ranks, got == expected));
            out.results.push(CheckResult::flag("torsion", &h.torsion, h.torsion_free()));
        }
        Command::RotationMap { exponents, shifts, budget, .. } => {
            run_rotation(&mut out, exponents, shifts.as_ref().map(|s| s.0.as_slice()), *budget)?;
        }
        Command::All { .. } => {
            out.results = suite::run_all(seed)?;
        }
    }
    Ok(out.finish())
}

/// Reads `key = value` lines (`#` starts a comment) into `--key value`
/// arguments.
pub fn config_args(text: &str) -> Result<Vec<OsString>> {
    let mut args = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("config line {}: expected key = value", no + 1)))?;
        let key = k.trim().replace('_', "-");
        if key == "config" {
            return Err(Error::InvalidInput("config files cannot include other config files".into()));
        }
        args.push(format!("--{key}").into());
        args.push(v.trim().into());
    }
    Ok(args)
}

/// Parses arguments, splicing in the config file's flags ahead of the
/// explicit ones so that explicit flags take precedence.
pub fn parse_args<I: IntoIterator<Item = OsString>>(argv: I) -> std::result::Result<Cli, clap::Error> {
    use clap::error::ErrorKind;
    let argv: Vec<OsString> = argv.into_iter().collect();
    let cli = Cli::try_parse_from(&argv)?;
    let Some(path) = cli.command.common().config.clone() else { return Ok(cli) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| clap::Error::raw(ErrorKind::Io, format!("{}: {e}\n", path.display())))?;
    let extra = config_args(&text).map_err(|e| clap::Error::raw(ErrorKind::InvalidValue, format!("{e}\n")))?;
    let sub = argv.iter().position(|a| a.to_str() == Some(cli.command.name())).unwrap_or(0);
    let mut merged = argv[..=sub].to_vec();
    merged.extend(extra);
    merged.extend_from_slice(&argv[sub + 1..]);
    Cli::try_parse_from(&merged)
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("{THREADS_ENV}={v:?} is not a thread count"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be positive"));
    }
    // a pool that already exists (e.g. a second call in-process) is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::InvalidInput(_) | Error::LengthMismatch { .. } | Error::BudgetExceeded { .. } | Error::Io(_))
}

/// Entry point of the binary; returns the exit status.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(argv: I) -> i32 {
    let cli = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    let out = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_config_error(&e) { 2 } else { 1 };
        }
    };
    let common = cli.command.common();
    let text = match common.format {
        Format::Json => out.to_json(),
        Format::Csv => out.to_csv(),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let written = match &common.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if out.pass {
        0
    } else {
        1
    }
}
