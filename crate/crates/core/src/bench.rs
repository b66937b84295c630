//! Configuration-driven experiment runner.
//!
//! An experiment is a grid of (algorithm, ε) cells over one generated
//! benchmark problem. Cells run under a wall-clock limit, record iteration
//! counts and timings, and — at desk scale, when a brute-force reference
//! solution is available — a pass/fail certificate. Results render as CSV
//! (`eps,algorithm,iterations,time_ms,certified`) or as a markdown grid
//! mirroring the two-algorithm comparison layout of the original tables.
//!
//! Iteration counts are deterministic given the seed; timings are
//! host-specific and informative only. Two runs of the same config produce
//! identical CSV bytes apart from the `time_ms` column.
//!
//! The config file format is flat structured text, one `[section]` per
//! experiment with `key = value` lines; see the README for the key list.

use crate::oracles::{ConstrainedProblem, KnownSolution};
use crate::problems::{
    self, gen_constraint_matrix, linear_constraints, BallConstraint, PointCloud, ProblemError,
};
use crate::prox::ProxSetup;
use crate::restart::{self, InnerSolver, RestartConfig, TauData};
use crate::solvers::{
    certify_run, solve_new_adaptive, solve_prior_adaptive, solve_quasiconvex, SolverConfig,
    SolverError,
};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Fts,
    CoveringBall,
    HolderSqrt,
    QcCover,
}

impl Family {
    fn parse(s: &str) -> Result<Self, BenchError> {
        match s {
            "fts" => Ok(Family::Fts),
            "covering-ball" => Ok(Family::CoveringBall),
            "holder-sqrt" => Ok(Family::HolderSqrt),
            "qc-cover" => Ok(Family::QcCover),
            other => Err(BenchError::Config(format!("unknown family `{other}`"))),
        }
    }
}

/// Functional constraint attached to the generated problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstraintVariant {
    /// Max-affine rows over `|xᵢ|`.
    Abs,
    /// Max-affine rows over `xᵢ`.
    Plain,
    /// `‖x‖₂ − radius ≤ 0`; the desk-scale option (the matrix rows need
    /// `n ≥ m ≥ 4`), and the one that enables brute-force certificates.
    Ball(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmChoice {
    Prior,
    New,
    QuasiConvex,
    Restart,
}

impl AlgorithmChoice {
    fn label(self) -> &'static str {
        match self {
            AlgorithmChoice::Prior => "prior",
            AlgorithmChoice::New => "new",
            AlgorithmChoice::QuasiConvex => "quasiconvex",
            AlgorithmChoice::Restart => "restart",
        }
    }

    fn parse(s: &str) -> Result<Self, BenchError> {
        match s {
            "prior" => Ok(AlgorithmChoice::Prior),
            "new" => Ok(AlgorithmChoice::New),
            "quasiconvex" => Ok(AlgorithmChoice::QuasiConvex),
            "restart" => Ok(AlgorithmChoice::Restart),
            other => Err(BenchError::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// An accuracy value together with the label it was written as (`1/6` stays
/// `1/6` in every output).
#[derive(Debug, Clone, PartialEq)]
pub struct EpsValue {
    pub value: f64,
    pub label: String,
}

impl EpsValue {
    pub fn parse(token: &str) -> Result<Self, BenchError> {
        let token = token.trim();
        let value = if let Some((num, den)) = token.split_once('/') {
            let n: f64 = num
                .trim()
                .parse()
                .map_err(|_| BenchError::Config(format!("bad eps `{token}`")))?;
            let d: f64 = den
                .trim()
                .parse()
                .map_err(|_| BenchError::Config(format!("bad eps `{token}`")))?;
            n / d
        } else {
            token
                .parse()
                .map_err(|_| BenchError::Config(format!("bad eps `{token}`")))?
        };
        if value <= 0.0 || value.is_nan() {
            return Err(BenchError::Config(format!(
                "eps `{token}` must be positive"
            )));
        }
        Ok(EpsValue {
            value,
            label: token.to_string(),
        })
    }
}

/// Parameters needed by restart cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestartParams {
    pub mu: f64,
    pub r0_sq: f64,
    pub omega_sq: f64,
    pub c_hat: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub name: String,
    pub family: Family,
    pub n: usize,
    /// Rows of the constraint matrix (matrix variants only).
    pub m: usize,
    pub seed: u64,
    pub constraint: ConstraintVariant,
    pub algorithms: Vec<AlgorithmChoice>,
    pub eps_list: Vec<EpsValue>,
    pub theta0_sq: f64,
    pub time_limit: Duration,
    /// Cloud size (anchor count) for the point-set families.
    pub points: usize,
    /// qc-cover parameters.
    pub rho: f64,
    pub radius: f64,
    pub restart: Option<RestartParams>,
}

impl ExperimentSpec {
    /// A spec with the defaults shared by the bundled presets.
    pub fn new(name: &str, family: Family, n: usize) -> Self {
        ExperimentSpec {
            name: name.to_string(),
            family,
            n,
            m: 20,
            seed: 1,
            constraint: match family {
                Family::Fts | Family::CoveringBall => ConstraintVariant::Abs,
                Family::HolderSqrt | Family::QcCover => ConstraintVariant::Plain,
            },
            algorithms: vec![AlgorithmChoice::New],
            eps_list: vec![],
            theta0_sq: 2.0,
            time_limit: Duration::from_secs(300),
            points: match family {
                Family::QcCover => 100,
                _ => 5,
            },
            rho: 2.0,
            radius: 1.0,
            restart: None,
        }
    }

    fn validate(&self) -> Result<(), BenchError> {
        for w in self.eps_list.windows(2) {
            if w[1].value >= w[0].value {
                return Err(BenchError::Config(format!(
                    "[{}] eps values must be strictly decreasing",
                    self.name
                )));
            }
        }
        if matches!(
            self.constraint,
            ConstraintVariant::Abs | ConstraintVariant::Plain
        ) && self.n < self.m
        {
            return Err(BenchError::Config(format!(
                "[{}] matrix constraints need n ≥ m (n={}, m={})",
                self.name, self.n, self.m
            )));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::Config(format!(
                "[{}] at least one algorithm required",
                self.name
            )));
        }
        if self.algorithms.contains(&AlgorithmChoice::Restart) && self.restart.is_none() {
            return Err(BenchError::Config(format!(
                "[{}] restart cells need mu, r0_sq, omega_sq and c_hat",
                self.name
            )));
        }
        if self.family == Family::QcCover && self.rho <= 1.0 {
            return Err(BenchError::Config(format!(
                "[{}] qc-cover needs rho > 1",
                self.name
            )));
        }
        Ok(())
    }
}

/// Outcome of one (algorithm, ε) cell.
#[derive(Debug, Clone)]
pub enum CellOutcome {
    Done {
        iterations: usize,
        time: Duration,
        certified: Option<bool>,
    },
    TimedOut {
        limit: Duration,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Clone)]
pub struct CellRow {
    pub eps_label: String,
    pub column: String,
    pub outcome: CellOutcome,
}

/// Flat result storage: one row per executed cell, in deterministic order.
#[derive(Debug, Clone)]
pub struct ResultTable {
    pub rows: Vec<CellRow>,
    pub seed: u64,
    pub config_hash: u64,
    pub time_limit: Duration,
}

impl ResultTable {
    fn eps_order(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.eps_label.as_str()) {
                out.push(&r.eps_label);
            }
        }
        out
    }

    fn column_order(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.column.as_str()) {
                out.push(&r.column);
            }
        }
        out
    }

    pub fn cell(&self, eps: &str, column: &str) -> Option<&CellOutcome> {
        self.rows
            .iter()
            .find(|r| r.eps_label == eps && r.column == column)
            .map(|r| &r.outcome)
    }
}

/// FNV-1a hash of the config text, embedded in outputs for provenance.
pub fn config_hash(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Parses the flat `[section]` / `key = value` config format.
pub fn parse_config(text: &str) -> Result<Vec<ExperimentSpec>, BenchError> {
    let mut specs: Vec<ExperimentSpec> = Vec::new();
    let mut current: Option<SectionAcc> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if let Some(acc) = current.take() {
                specs.push(acc.finish()?);
            }
            current = Some(SectionAcc::new(name.trim()));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            BenchError::Config(format!("line {}: expected `key = value`", ln + 1))
        })?;
        let acc = current.as_mut().ok_or_else(|| {
            BenchError::Config(format!("line {}: key outside a [section]", ln + 1))
        })?;
        acc.set(key.trim(), value.trim())?;
    }
    if let Some(acc) = current.take() {
        specs.push(acc.finish()?);
    }
    if specs.is_empty() {
        return Err(BenchError::Config("no [section] found".into()));
    }
    Ok(specs)
}

struct SectionAcc {
    name: String,
    family: Option<Family>,
    n: Option<usize>,
    entries: Vec<(String, String)>,
}

impl SectionAcc {
    fn new(name: &str) -> Self {
        SectionAcc {
            name: name.to_string(),
            family: None,
            n: None,
            entries: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), BenchError> {
        match key {
            "family" => self.family = Some(Family::parse(value)?),
            "n" => {
                self.n = Some(
                    value
                        .parse()
                        .map_err(|_| BenchError::Config(format!("bad n `{value}`")))?,
                )
            }
            _ => self.entries.push((key.to_string(), value.to_string())),
        }
        Ok(())
    }

    fn finish(self) -> Result<ExperimentSpec, BenchError> {
        let family = self
            .family
            .ok_or_else(|| BenchError::Config(format!("[{}] missing `family`", self.name)))?;
        let n = self
            .n
            .ok_or_else(|| BenchError::Config(format!("[{}] missing `n`", self.name)))?;
        let mut spec = ExperimentSpec::new(&self.name, family, n);
        let mut restart = RestartParams {
            mu: 0.0,
            r0_sq: 0.0,
            omega_sq: 0.0,
            c_hat: 0.0,
        };
        let mut saw_restart_key = false;
        for (key, value) in &self.entries {
            match key.as_str() {
                "m" => spec.m = parse_num(key, value)? as usize,
                "seed" => spec.seed = parse_num(key, value)? as u64,
                "points" | "centers" => spec.points = parse_num(key, value)? as usize,
                "rho" => spec.rho = parse_num(key, value)?,
                "radius" => spec.radius = parse_num(key, value)?,
                "theta0_sq" => spec.theta0_sq = parse_num(key, value)?,
                "time_limit" => spec.time_limit = Duration::from_secs_f64(parse_num(key, value)?),
                "constraint" => {
                    spec.constraint = match value.as_str() {
                        "abs" => ConstraintVariant::Abs,
                        "plain" => ConstraintVariant::Plain,
                        other => match other.strip_prefix("ball:") {
                            Some(r) => ConstraintVariant::Ball(parse_num("ball radius", r)?),
                            None => {
                                return Err(BenchError::Config(format!(
                                    "unknown constraint `{other}`"
                                )))
                            }
                        },
                    }
                }
                "algorithms" => {
                    spec.algorithms = value
                        .split(',')
                        .map(|t| AlgorithmChoice::parse(t.trim()))
                        .collect::<Result<_, _>>()?;
                }
                "eps" => {
                    spec.eps_list = value
                        .split(',')
                        .map(EpsValue::parse)
                        .collect::<Result<_, _>>()?;
                }
                "mu" => {
                    restart.mu = parse_num(key, value)?;
                    saw_restart_key = true;
                }
                "r0_sq" => {
                    restart.r0_sq = parse_num(key, value)?;
                    saw_restart_key = true;
                }
                "omega_sq" => {
                    restart.omega_sq = parse_num(key, value)?;
                    saw_restart_key = true;
                }
                "c_hat" => {
                    restart.c_hat = parse_num(key, value)?;
                    saw_restart_key = true;
                }
                other => {
                    return Err(BenchError::Config(format!(
                        "[{}] unknown key `{other}`",
                        self.name
                    )))
                }
            }
        }
        if saw_restart_key {
            if restart.mu <= 0.0
                || restart.r0_sq <= 0.0
                || restart.omega_sq <= 0.0
                || restart.c_hat <= 0.0
            {
                return Err(BenchError::Config(format!(
                    "[{}] restart needs positive mu, r0_sq, omega_sq, c_hat",
                    self.name
                )));
            }
            spec.restart = Some(restart);
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_num(key: &str, value: &str) -> Result<f64, BenchError> {
    value
        .trim()
        .parse()
        .map_err(|_| BenchError::Config(format!("bad value for `{key}`: `{value}`")))
}

/// Everything a cell needs, built once per experiment and shared.
struct BuiltProblem {
    problem: ConstrainedProblem,
    prox: ProxSetup,
    known: Option<KnownSolution>,
}

fn build_problem(spec: &ExperimentSpec) -> Result<BuiltProblem, BenchError> {
    let n = spec.n;
    let base = match spec.family {
        Family::Fts => problems::fts_problem(&PointCloud::integer_cloud(n, spec.points, spec.seed)),
        Family::CoveringBall => {
            problems::covering_ball_problem(&PointCloud::integer_cloud(n, spec.points, spec.seed))
        }
        Family::HolderSqrt => problems::holder_sqrt_problem(n),
        Family::QcCover => problems::quasiconvex_cover_problem(
            &PointCloud::shell_cloud(n, spec.points, 1.0, 2.0, spec.radius, spec.seed),
            spec.rho,
        ),
    };
    let problem = match spec.constraint {
        ConstraintVariant::Abs => base.with_max_affine_constraint(linear_constraints(
            gen_constraint_matrix(n, spec.m)?,
            true,
        )),
        ConstraintVariant::Plain => base.with_max_affine_constraint(linear_constraints(
            gen_constraint_matrix(n, spec.m)?,
            false,
        )),
        ConstraintVariant::Ball(r) => {
            base.with_ball_constraint(BallConstraint::new(vec![0.0; n], r))
        }
    };
    // x⁰ is the normalized 0.1-vector; the euclidean d.g.f. is recentered
    // there so that argmin_Q d = x⁰ and the Θ₀ contract reads V(x⁰,x*) ≤ Θ₀².
    let x0 = vec![1.0 / (n as f64).sqrt(); n];
    let feasible = problem.feasible().clone();
    let prox = ProxSetup::euclidean_centered(feasible, x0);
    // Desk-scale cells get a brute-force reference and per-run certificates.
    let known = if n <= 3 {
        if let ConstraintVariant::Ball(r) = spec.constraint {
            let (lo, hi) = match spec.family {
                Family::HolderSqrt => (vec![0.0; n], vec![r + 0.2; n]),
                _ => (vec![-(r + 0.2); n], vec![r + 0.2; n]),
            };
            Some(problems::brute_force_optimum(&problem, &lo, &hi, 1e-3)?)
        } else {
            None
        }
    } else {
        None
    };
    Ok(BuiltProblem {
        problem,
        prox,
        known,
    })
}

fn run_cell(
    built: &BuiltProblem,
    spec: &ExperimentSpec,
    alg: AlgorithmChoice,
    eps: f64,
) -> CellOutcome {
    let trace = built.known.is_some();
    let start = Instant::now();
    if alg == AlgorithmChoice::Restart {
        let params = match spec.restart {
            Some(p) => p,
            None => {
                return CellOutcome::Error {
                    message: "restart parameters missing".into(),
                }
            }
        };
        let inner = match spec.family {
            Family::QcCover => InnerSolver::QuasiConvex,
            _ => InnerSolver::NewAdaptive,
        };
        let cfg = RestartConfig::new(
            eps,
            params.mu,
            params.r0_sq,
            params.omega_sq,
            TauData::Linear {
                c_hat: params.c_hat,
            },
        )
        .with_inner(inner);
        return match restart::restart_solve(&built.problem, &built.prox, &cfg) {
            Ok(report) => CellOutcome::Done {
                iterations: report.total_inner_iterations,
                time: start.elapsed(),
                certified: None,
            },
            Err(e) => CellOutcome::Error {
                message: e.to_string(),
            },
        };
    }
    let mut cfg = SolverConfig::new(eps, spec.theta0_sq).with_time_limit(spec.time_limit);
    if trace {
        cfg = cfg.with_trace();
    }
    let run = match alg {
        AlgorithmChoice::Prior => solve_prior_adaptive(&built.problem, &built.prox, &cfg),
        AlgorithmChoice::New => solve_new_adaptive(&built.problem, &built.prox, &cfg),
        AlgorithmChoice::QuasiConvex => solve_quasiconvex(&built.problem, &built.prox, &cfg),
        AlgorithmChoice::Restart => unreachable!(),
    };
    match run {
        Ok(report) => {
            let certified = built
                .known
                .as_ref()
                .map(|known| certify_run(&report, &built.prox, known).is_ok());
            CellOutcome::Done {
                iterations: report.n_total,
                time: start.elapsed(),
                certified,
            }
        }
        Err(SolverError::TimeLimit { .. }) => CellOutcome::TimedOut {
            limit: spec.time_limit,
        },
        Err(e) => CellOutcome::Error {
            message: e.to_string(),
        },
    }
}

/// Runs every (algorithm, ε) cell of every spec; cells fail in isolation.
/// `parallel > 1` distributes cells over that many threads (each cell owns
/// its solver state; problems are shared immutably); output order is
/// deterministic either way. `label_with_section` prefixes column labels
/// with the section name, as needed for multi-experiment configs.
pub fn run_experiments(
    specs: &[ExperimentSpec],
    parallel: usize,
    label_with_section: bool,
    hash: u64,
) -> Result<ResultTable, BenchError> {
    for spec in specs {
        spec.validate()?;
    }
    struct Cell<'a> {
        spec: &'a ExperimentSpec,
        built: &'a BuiltProblem,
        alg: AlgorithmChoice,
        eps: &'a EpsValue,
        column: String,
    }
    let mut built_problems = Vec::with_capacity(specs.len());
    for spec in specs {
        built_problems.push(build_problem(spec)?);
    }
    let mut cells: Vec<Cell> = Vec::new();
    for (spec, built) in specs.iter().zip(&built_problems) {
        for eps in &spec.eps_list {
            for &alg in &spec.algorithms {
                let column = if label_with_section {
                    format!("{}:{}", spec.name, alg.label())
                } else {
                    alg.label().to_string()
                };
                cells.push(Cell {
                    spec,
                    built,
                    alg,
                    eps,
                    column,
                });
            }
        }
    }
    let outcomes: Vec<CellOutcome> = if parallel > 1 && cells.len() > 1 {
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<CellOutcome>>> = Mutex::new(vec![None; cells.len()]);
        std::thread::scope(|scope| {
            for _ in 0..parallel.min(cells.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= cells.len() {
                        break;
                    }
                    let c = &cells[i];
                    let outcome = run_cell(c.built, c.spec, c.alg, c.eps.value);
                    slots.lock().unwrap()[i] = Some(outcome);
                });
            }
        });
        slots
            .into_inner()
            .unwrap()
            .into_iter()
            .map(|o| o.expect("all cells executed"))
            .collect()
    } else {
        cells
            .iter()
            .map(|c| run_cell(c.built, c.spec, c.alg, c.eps.value))
            .collect()
    };
    let rows = cells
        .into_iter()
        .zip(outcomes)
        .map(|(c, outcome)| CellRow {
            eps_label: c.eps.label.clone(),
            column: c.column,
            outcome,
        })
        .collect();
    Ok(ResultTable {
        rows,
        seed: specs.first().map_or(0, |s| s.seed),
        config_hash: hash,
        time_limit: specs.first().map_or(Duration::ZERO, |s| s.time_limit),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Markdown,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, BenchError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "markdown" => Ok(OutputFormat::Markdown),
            other => Err(BenchError::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Renders the table. CSV is byte-deterministic apart from `time_ms`;
/// timed-out cells render with an empty iteration field and `>limit_ms`,
/// errored cells with `error` in the `certified` field.
pub fn emit_table(table: &ResultTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => emit_csv(table),
        OutputFormat::Markdown => emit_markdown(table),
    }
}

fn emit_csv(table: &ResultTable) -> String {
    let mut out = String::from("eps,algorithm,iterations,time_ms,certified\n");
    for row in &table.rows {
        match &row.outcome {
            CellOutcome::Done {
                iterations,
                time,
                certified,
            } => {
                let cert = match certified {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "",
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.eps_label,
                    row.column,
                    iterations,
                    time.as_millis(),
                    cert
                );
            }
            CellOutcome::TimedOut { limit } => {
                let _ = writeln!(
                    out,
                    "{},{},,>{},",
                    row.eps_label,
                    row.column,
                    limit.as_millis()
                );
            }
            CellOutcome::Error { .. } => {
                let _ = writeln!(out, "{},{},,,error", row.eps_label, row.column);
            }
        }
    }
    out
}

fn emit_markdown(table: &ResultTable) -> String {
    let eps_order = table.eps_order();
    let columns = table.column_order();
    let mut out = String::new();
    out.push_str("| ε |");
    for c in &columns {
        let _ = write!(out, " {c}: iterations | {c}: time |");
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in &columns {
        out.push_str("---|---|");
    }
    out.push('\n');
    for eps in &eps_order {
        let _ = write!(out, "| {eps} |");
        for c in &columns {
            match table.cell(eps, c) {
                Some(CellOutcome::Done {
                    iterations, time, ..
                }) => {
                    let _ = write!(out, " {iterations} | {:.3} s |", time.as_secs_f64());
                }
                Some(CellOutcome::TimedOut { limit }) => {
                    let _ = write!(out, " — | >{} s |", limit.as_secs());
                }
                Some(CellOutcome::Error { .. }) => {
                    out.push_str(" error | error |");
                }
                None => out.push_str("  |  |"),
            }
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "\nseed {} · config {:#018x} · timings are host-specific; iteration counts are the reproducible quantity",
        table.seed, table.config_hash
    );
    out
}

/// The bundled table presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Table1,
    Table2,
    Table3,
    Table4,
    Table5,
}

impl Preset {
    pub fn parse(s: &str) -> Result<Self, BenchError> {
        match s {
            "table1" => Ok(Preset::Table1),
            "table2" => Ok(Preset::Table2),
            "table3" => Ok(Preset::Table3),
            "table4" => Ok(Preset::Table4),
            "table5" => Ok(Preset::Table5),
            other => Err(BenchError::Config(format!("unknown preset `{other}`"))),
        }
    }

    /// The experiment specs behind the preset.
    ///
    /// The fixed-budget columns are exactly reproducible (their iteration
    /// counts are data-independent); the adaptive-stopping columns depend on
    /// the generated cloud, so reference counts reproduce in order of
    /// magnitude only.
    pub fn specs(self) -> Vec<ExperimentSpec> {
        let eps4 = ["1/2", "1/4", "1/6", "1/8"];
        let eps6 = ["1/2", "1/4", "1/6", "1/8", "1/10", "1/12"];
        let eps3 = ["1/2", "1/4", "1/6"];
        let eps = |labels: &[&str]| -> Vec<EpsValue> {
            labels.iter().map(|l| EpsValue::parse(l).unwrap()).collect()
        };
        match self {
            Preset::Table1 => {
                let mut s = ExperimentSpec::new("fts", Family::Fts, 1000);
                s.algorithms = vec![AlgorithmChoice::Prior, AlgorithmChoice::New];
                s.eps_list = eps(&eps4);
                vec![s]
            }
            Preset::Table2 => {
                let mut s = ExperimentSpec::new("covering-ball", Family::CoveringBall, 1000);
                s.algorithms = vec![AlgorithmChoice::Prior, AlgorithmChoice::New];
                s.eps_list = eps(&eps4);
                vec![s]
            }
            Preset::Table3 => {
                let mut s = ExperimentSpec::new("holder-sqrt", Family::HolderSqrt, 1000);
                s.algorithms = vec![AlgorithmChoice::Prior, AlgorithmChoice::New];
                s.eps_list = eps(&eps4);
                vec![s]
            }
            Preset::Table4 => {
                let mut out = Vec::new();
                for (name, family) in [
                    ("fts", Family::Fts),
                    ("covering-ball", Family::CoveringBall),
                    ("holder-sqrt", Family::HolderSqrt),
                ] {
                    let mut s = ExperimentSpec::new(name, family, 300_000);
                    s.eps_list = eps(&eps3);
                    s.time_limit = Duration::from_secs(600);
                    out.push(s);
                }
                out
            }
            Preset::Table5 => {
                let mut s = ExperimentSpec::new("qc-cover", Family::QcCover, 1000);
                s.algorithms = vec![AlgorithmChoice::Prior, AlgorithmChoice::QuasiConvex];
                s.eps_list = eps(&eps6);
                vec![s]
            }
        }
    }
}

/// Overrides applied on top of a preset or parsed config.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub time_limit: Option<Duration>,
    pub parallel: usize,
}

/// Runs a preset end to end.
pub fn reproduce(preset: Preset, overrides: Overrides) -> Result<ResultTable, BenchError> {
    let mut specs = preset.specs();
    for s in &mut specs {
        if let Some(seed) = overrides.seed {
            s.seed = seed;
        }
        if let Some(limit) = overrides.time_limit {
            s.time_limit = limit;
        }
    }
    let hash = config_hash(&format!("{preset:?}/{specs:?}"));
    run_experiments(&specs, overrides.parallel.max(1), specs.len() > 1, hash)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DESK_CONFIG: &str = "\
# two desk-scale experiments\n\
[desk-fts]\n\
family = fts\n\
n = 2\n\
seed = 9\n\
points = 4\n\
constraint = ball:0.8\n\
algorithms = prior, new\n\
eps = 1/4, 1/8\n\
theta0_sq = 2\n\
time_limit = 30\n\
\n\
[desk-cover]\n\
family = covering-ball\n\
n = 2\n\
seed = 9\n\
points = 4\n\
constraint = ball:0.8\n\
algorithms = new\n\
eps = 1/4\n\
";

    #[test]
    fn parse_config_round_trip() {
        let specs = parse_config(DESK_CONFIG).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].name, "desk-fts");
        assert_eq!(specs[0].family, Family::Fts);
        assert_eq!(specs[0].n, 2);
        assert_eq!(specs[0].constraint, ConstraintVariant::Ball(0.8));
        assert_eq!(specs[0].algorithms.len(), 2);
        assert_eq!(specs[0].eps_list[0].label, "1/4");
        assert!((specs[0].eps_list[0].value - 0.25).abs() < 1e-15);
        assert_eq!(specs[0].time_limit, Duration::from_secs(30));
        assert_eq!(specs[1].algorithms, vec![AlgorithmChoice::New]);
    }

    #[test]
    fn parse_config_rejects_increasing_eps() {
        let bad = "[x]\nfamily = fts\nn = 2\nconstraint = ball:0.8\neps = 1/8, 1/4\n";
        assert!(parse_config(bad).is_err());
    }

    #[test]
    fn parse_config_rejects_small_n_for_matrix() {
        let bad = "[x]\nfamily = fts\nn = 2\neps = 1/2\n";
        assert!(parse_config(bad).is_err());
    }

    #[test]
    fn empty_eps_list_yields_empty_table() {
        let mut spec = ExperimentSpec::new("empty", Family::Fts, 2);
        spec.constraint = ConstraintVariant::Ball(0.8);
        let table = run_experiments(&[spec], 1, false, 0).unwrap();
        assert!(table.rows.is_empty());
        let csv = emit_table(&table, OutputFormat::Csv);
        assert_eq!(csv, "eps,algorithm,iterations,time_ms,certified\n");
    }

    #[test]
    fn desk_experiments_run_and_certify() {
        let specs = parse_config(DESK_CONFIG).unwrap();
        let table = run_experiments(&specs, 1, true, config_hash(DESK_CONFIG)).unwrap();
        assert_eq!(table.rows.len(), 5);
        for row in &table.rows {
            match &row.outcome {
                CellOutcome::Done { certified, .. } => assert_eq!(
                    *certified,
                    Some(true),
                    "cell {}/{}",
                    row.eps_label,
                    row.column
                ),
                other => panic!("unexpected outcome {other:?}"),
            }
        }
        // fixed-budget columns surface the exact iteration counts
        match table.cell("1/4", "desk-fts:new").unwrap() {
            CellOutcome::Done { iterations, .. } => assert_eq!(*iterations, 64),
            _ => unreachable!(),
        }
    }

    #[test]
    fn csv_determinism_modulo_time_column() {
        let specs = parse_config(DESK_CONFIG).unwrap();
        let a = run_experiments(&specs, 1, true, 7).unwrap();
        let b = run_experiments(&specs, 2, true, 7).unwrap();
        let strip = |csv: String| -> Vec<String> {
            csv.lines()
                .map(|l| {
                    let mut parts: Vec<&str> = l.split(',').collect();
                    if parts.len() == 5 {
                        parts[3] = "T";
                    }
                    parts.join(",")
                })
                .collect()
        };
        assert_eq!(
            strip(emit_table(&a, OutputFormat::Csv)),
            strip(emit_table(&b, OutputFormat::Csv))
        );
    }

    #[test]
    fn markdown_layout_dimensions() {
        let specs = parse_config(DESK_CONFIG).unwrap();
        let table = run_experiments(&specs, 1, true, 7).unwrap();
        let md = emit_table(&table, OutputFormat::Markdown);
        let lines: Vec<&str> = md.lines().collect();
        assert!(lines[0].starts_with("| ε |"));
        // ε column + 3 result columns × 2 fields
        assert_eq!(lines[0].matches('|').count(), 8);
        assert!(lines.iter().any(|l| l.contains("seed 9")));
    }

    #[test]
    fn timed_out_cells_render_with_limit() {
        let mut spec = ExperimentSpec::new("slow", Family::Fts, 40);
        spec.algorithms = vec![AlgorithmChoice::Prior];
        spec.eps_list = vec![EpsValue::parse("1/64").unwrap()];
        spec.time_limit = Duration::from_millis(1);
        let table = run_experiments(&[spec], 1, false, 0).unwrap();
        let csv = emit_table(&table, OutputFormat::Csv);
        assert!(csv.contains("1/64,prior,,>1,"), "csv was: {csv}");
        let md = emit_table(&table, OutputFormat::Markdown);
        assert!(md.contains("— | >0 s"));
    }

    #[test]
    fn restart_without_params_is_config_error() {
        let mut spec = ExperimentSpec::new("r", Family::Fts, 2);
        spec.constraint = ConstraintVariant::Ball(0.8);
        spec.algorithms = vec![AlgorithmChoice::Restart];
        spec.eps_list = vec![EpsValue::parse("1/2").unwrap()];
        assert!(run_experiments(&[spec], 1, false, 0).is_err());
    }

    #[test]
    fn fixed_budget_counts_match_reference_tables_within_one() {
        let reference = [17usize, 65, 145, 257, 400, 577];
        let eps = ["1/2", "1/4", "1/6", "1/8", "1/10", "1/12"];
        for (e, p) in eps.iter().zip(reference) {
            let v = EpsValue::parse(e).unwrap().value;
            let ours = crate::solvers::fixed_budget(2.0, v);
            assert!(
                (ours as i64 - p as i64).abs() <= 1,
                "eps {e}: ours {ours} vs reference {p}"
            );
        }
    }

    #[test]
    fn preset_specs_are_well_formed() {
        for preset in [
            Preset::Table1,
            Preset::Table2,
            Preset::Table3,
            Preset::Table4,
            Preset::Table5,
        ] {
            for spec in preset.specs() {
                spec.validate().unwrap();
                assert_eq!(spec.theta0_sq, 2.0);
            }
        }
        assert_eq!(Preset::Table4.specs().len(), 3);
        assert_eq!(Preset::Table5.specs()[0].points, 100);
    }
}
