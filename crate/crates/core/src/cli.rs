//! Job files and the command-line front end.
//!
//! A job is a TOML document naming a command, a model, dimensions, an input
//! profile and an output grid. Output is a table: CSV with a `#` metadata
//! line and a column header, or the same table as JSON.

use crate::catalog::Family;
use crate::error::{Error, Result};
use crate::fracint::{ArgKind, Profile1D, QuadratureSpec};
use crate::identities::{run_suite, Identity, IdentityReport};
use crate::inversion::reconstruct;
use crate::models::{reparam, Model};
use crate::params::TransformParams;
use crate::radon_mc::{duality_check_mc, radial_duality_value, DualityInput, DualityKind, Integrand, McSpec};
use crate::radon_radial::{closed_form_pair, invert_radial, ClosedFormId, Direction, Geometry, InvertSpec, Transform};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[value(rename_all = "kebab-case")]
pub enum Command {
    Transform,
    Dual,
    Invert,
    Convert,
    Verify,
    McDuality,
    Chain,
    Table,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Transform => "transform",
            Command::Dual => "dual",
            Command::Invert => "invert",
            Command::Convert => "convert",
            Command::Verify => "verify",
            Command::McDuality => "mc-duality",
            Command::Chain => "chain",
            Command::Table => "table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Input function: a catalog family, a closed-form example, or samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Gaussian { sigma: f64 },
    PowerGaussian { beta: f64 },
    Power { p: f64 },
    Bump { a: f64 },
    /// A transform pair with a known closed form; its own transform is used.
    ClosedForm { example: ClosedFormId },
    /// Values on increasing nodes, interpolated.
    Samples { kind: ArgKind, x: Vec<f64>, y: Vec<f64> },
}

impl ProfileSpec {
    fn family(&self) -> Option<Family> {
        Some(match *self {
            ProfileSpec::Gaussian { sigma } => Family::Gaussian { sigma },
            ProfileSpec::PowerGaussian { beta } => Family::PowerGaussian { beta },
            ProfileSpec::Power { p } => Family::Power { p },
            ProfileSpec::Bump { a } => Family::Bump { a },
            _ => return None,
        })
    }

    /// The profile on the model's canonical range.
    fn profile(&self, model: Model) -> Result<Profile1D> {
        match self {
            ProfileSpec::ClosedForm { .. } => Err(Error::Job("a closed-form example only serves transform, dual, invert and table".into())),
            ProfileSpec::Samples { kind, x, y } => Profile1D::sampled(x.clone(), y.clone(), *kind, 6),
            _ => {
                let (lo, hi) = model.range();
                self.family().expect("catalog family").profile_on(lo, hi, model.canonical_kind())
            }
        }
    }

    /// Importance scale for Monte Carlo sampling.
    fn scale(&self) -> f64 {
        match *self {
            ProfileSpec::Gaussian { sigma } => sigma,
            ProfileSpec::Bump { a } => a,
            _ => 1.0,
        }
    }
}

/// Output nodes: explicit, or `count` equispaced points on [lo, hi].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Nodes { nodes: Vec<f64> },
    Range { lo: f64, hi: f64, count: usize },
}

impl GridSpec {
    pub fn nodes(&self) -> Result<Vec<f64>> {
        match self {
            GridSpec::Nodes { nodes } => Ok(nodes.clone()),
            GridSpec::Range { lo, hi, count } => {
                if *count < 2 || !(hi > lo) {
                    return Err(Error::Job(format!("grid needs count ≥ 2 and lo < hi, got {count} nodes on [{lo}, {hi}]")));
                }
                Ok((0..*count).map(|i| lo + (hi - lo) * i as f64 / (*count - 1) as f64).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    /// May be left out when the command line names it.
    pub command: Option<Command>,
    #[serde(default = "default_model")]
    pub model: Model,
    pub params: Option<TransformParams>,
    pub profile: Option<ProfileSpec>,
    /// Second function for `mc-duality`; defaults to the first.
    pub phi: Option<ProfileSpec>,
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub mc: McSpec,
    /// Direction inverted by `invert`.
    #[serde(default = "default_direction")]
    pub direction: Direction,
    /// Target variable for `convert`.
    pub to: Option<ArgKind>,
    /// Order of P_m(Δ) for `chain`.
    pub m: Option<usize>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_model() -> Model {
    Model::Hyperboloid
}

fn default_direction() -> Direction {
    Direction::Forward
}

impl JobSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Job(format!("cannot parse job: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Job(format!("cannot read {}: {e}", path.display())))?;
        JobSpec::from_toml(&text)
    }

    fn command(&self) -> Result<Command> {
        self.command.ok_or_else(|| Error::Job("no command given".into()))
    }

    fn params(&self) -> Result<TransformParams> {
        self.params.ok_or_else(|| Error::Job("`params` (n, j, k) is required".into()))
    }

    fn profile_spec(&self) -> Result<&ProfileSpec> {
        self.profile.as_ref().ok_or_else(|| Error::Job("`profile` is required".into()))
    }

    fn nodes(&self, kind: ArgKind, range: (f64, f64)) -> Result<Vec<f64>> {
        let g = self.grid.as_ref().ok_or_else(|| Error::Job("`grid` is required".into()))?;
        let nodes = g.nodes()?;
        if nodes.is_empty() {
            return Err(Error::Job("the grid is empty".into()));
        }
        let (lo, hi) = range;
        if let Some(x) = nodes.iter().find(|x| !(**x >= lo && **x <= hi)) {
            return Err(Error::Range(format!("grid node {x} outside the range [{lo}, {hi}] of {kind}")));
        }
        Ok(nodes)
    }

    /// Checks what can be checked without computing.
    pub fn validate(&self) -> Result<()> {
        let cmd = self.command()?;
        self.quadrature.validate()?;
        if cmd != Command::Verify {
            self.profile_spec()?;
            if cmd != Command::Convert {
                self.params()?;
            }
        }
        if matches!(cmd, Command::McDuality | Command::Chain) {
            self.mc.validate()?;
        }
        match cmd {
            Command::Convert if self.to.is_none() => Err(Error::Job("`to` is required for convert".into())),
            Command::Chain if self.m.is_none() => Err(Error::Job("`m` is required for chain".into())),
            Command::Chain if self.model != Model::Hyperboloid => Err(Error::Job("chain runs on the hyperboloid model".into())),
            _ => Ok(()),
        }
    }
}

/// Command-line values that replace those in the job file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub rel_tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Overrides {
    pub fn apply(&self, job: &mut JobSpec) {
        if let Some(s) = self.seed {
            job.mc.seed = s;
        }
        if let Some(n) = self.samples {
            job.mc.n_samples = n;
        }
        if let Some(t) = self.rel_tol {
            job.quadrature.rel_tol = t;
        }
        if let Some(p) = &self.out {
            job.output.path = Some(p.clone());
        }
        if let Some(f) = self.format {
            job.output.format = f;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Flag(bool),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Num(x) => write!(f, "{x:e}"),
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Text(s) => write!(f, "{s}"),
            Cell::Flag(b) => write!(f, "{b}"),
        }
    }
}

/// Result of a job.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub command: String,
    pub model: String,
    /// Canonical variable of the model.
    pub canonical: String,
    /// Variable of the coordinate column.
    pub arg_kind: String,
    pub params: Option<TransformParams>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// False when a check carried by the table failed (verify).
    #[serde(skip)]
    pub ok: bool,
}

impl Table {
    fn new(job: &JobSpec, cmd: Command, arg_kind: &str, columns: &[&str]) -> Self {
        Table {
            command: cmd.name().into(),
            model: job.model.to_string(),
            canonical: job.model.canonical_kind().to_string(),
            arg_kind: arg_kind.into(),
            params: job.params,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            ok: true,
        }
    }

    fn push_nums(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&x| Cell::Num(x)).collect());
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("# command={} model={} canonical={} arg_kind={}", self.command, self.model, self.canonical, self.arg_kind);
        if let Some(p) = self.params {
            let _ = write!(s, " n={} j={} k={}", p.n, p.j, p.k);
        }
        s.push('\n');
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn geometry(model: Model) -> Geometry {
    match model {
        Model::EuclideanAffine => Geometry::Affine,
        Model::BeltramiKlein => Geometry::Chord,
        Model::Hyperboloid => Geometry::Hyperbolic,
        Model::Elliptic => Geometry::Elliptic,
        Model::Projective => Geometry::Projective,
    }
}

/// The transform and input a job describes, with the exact output when known.
fn transform_input(job: &JobSpec, direction: Direction) -> Result<(Transform, Profile1D, Option<Profile1D>)> {
    let p = job.params()?;
    let spec = job.profile_spec()?;
    if let ProfileSpec::ClosedForm { example } = spec {
        let pair = closed_form_pair(*example, &p)?;
        if pair.transform.model() != job.model || pair.transform.direction != direction {
            return Err(Error::Job(format!("the {} example is the {} transform", example.name(), pair.transform)));
        }
        return Ok((pair.transform, pair.input, Some(pair.expected)));
    }
    Ok((Transform::new(geometry(job.model), direction), spec.profile(job.model)?, None))
}

fn run_transform(job: &JobSpec, cmd: Command) -> Result<Table> {
    let direction = if cmd == Command::Dual { Direction::Dual } else { Direction::Forward };
    let (t, f, _) = transform_input(job, direction)?;
    let p = job.params()?;
    let kind = t.variable();
    let nodes = job.nodes(kind, t.range())?;
    let mut table = Table::new(job, cmd, &kind.to_string(), &[&kind.to_string(), "value"]);
    for x in nodes {
        table.push_nums(&[x, t.eval(&p, &f, x, &job.quadrature)?]);
    }
    Ok(table)
}

/// Closed-form examples and catalog profiles: computed transform next to
/// the exact one (closed forms) or next to the input (catalog).
fn run_table(job: &JobSpec) -> Result<Table> {
    let (t, f, exact) = transform_input(job, Direction::Forward).or_else(|_| transform_input(job, Direction::Dual))?;
    let p = job.params()?;
    let kind = t.variable();
    let nodes = job.nodes(kind, t.range())?;
    let k = kind.to_string();
    let f_in = t.prepare(&f)?;
    let mut table = match exact {
        Some(_) => Table::new(job, Command::Table, &k, &[&k, "value", "exact", "rel_error"]),
        None => Table::new(job, Command::Table, &k, &[&k, "input", "value"]),
    };
    for x in nodes {
        let v = t.eval(&p, &f, x, &job.quadrature)?;
        match &exact {
            Some(e) => {
                let e = e.eval(x);
                let rel = if v == e { 0.0 } else { (v - e).abs() / e.abs() };
                table.push_nums(&[x, v, e, rel]);
            }
            None => table.push_nums(&[x, f_in.eval(x), v]),
        }
    }
    Ok(table)
}

fn run_invert(job: &JobSpec) -> Result<Table> {
    let p = job.params()?;
    let spec = InvertSpec { quadrature: job.quadrature, ..InvertSpec::default() };
    let (t, data, exact) = match job.profile_spec()? {
        ProfileSpec::Samples { .. } => {
            let t = Transform::new(geometry(job.model), job.direction);
            let data = job.profile_spec()?.profile(job.model)?;
            (t, reparam(&data, t.variable())?, None)
        }
        _ => {
            let (t, f, expected) = transform_input(job, job.direction)?;
            let data = match expected {
                Some(e) => e,
                None => t.profile(&p, &f, &job.quadrature)?,
            };
            (t, data, Some(t.prepare(&f)?))
        }
    };
    let rec = invert_radial(t, &p, &data, &spec)?;
    let kind = t.variable();
    let nodes = job.nodes(kind, (rec.lo(), rec.hi()))?;
    let k = kind.to_string();
    let mut table = match exact {
        Some(_) => Table::new(job, Command::Invert, &k, &[&k, "value", "exact"]),
        None => Table::new(job, Command::Invert, &k, &[&k, "value"]),
    };
    for x in nodes {
        match &exact {
            Some(e) => table.push_nums(&[x, rec.eval(x), e.eval(x)]),
            None => table.push_nums(&[x, rec.eval(x)]),
        }
    }
    Ok(table)
}

fn run_convert(job: &JobSpec) -> Result<Table> {
    let to = job.to.expect("validated");
    let g = reparam(&job.profile_spec()?.profile(job.model)?, to)?;
    let nodes = job.nodes(to, (g.lo(), g.hi()))?;
    let mut table = Table::new(job, Command::Convert, &to.to_string(), &[&to.to_string(), "value"]);
    for x in nodes {
        table.push_nums(&[x, g.eval(x)]);
    }
    Ok(table)
}

/// Closed-form conformance on 64 nodes, reported like the identities.
pub fn closed_form_reports(q: &QuadratureSpec) -> Vec<IdentityReport> {
    ClosedFormId::defaults()
        .into_iter()
        .map(|(id, p)| {
            let res = closed_form_pair(id, &p).and_then(|pair| {
                let sup = pair.grid(64).iter().fold(0.0f64, |m, &x| m.max(pair.expected.eval(x).abs()));
                pair.grid(64).iter().try_fold(0.0f64, |m, &x| {
                    let v = pair.transform.eval(&p, &pair.input, x, q)?;
                    Ok(m.max((v - pair.expected.eval(x)).abs() / sup))
                })
            });
            let name = format!("closed_form_{}", id.name());
            match res {
                Ok(e) => IdentityReport { name, max_rel: e, tolerance: 1e-8, cases: 64, passed: e <= 1e-8, error: None },
                Err(err) => IdentityReport { name, max_rel: f64::NAN, tolerance: 1e-8, cases: 0, passed: false, error: Some(err.to_string()) },
            }
        })
        .collect()
}

fn run_verify(job: &JobSpec) -> Result<Table> {
    let mut reports = closed_form_reports(&job.quadrature);
    reports.extend(run_suite(&Identity::ALL, &job.quadrature));
    let mut table = Table {
        command: Command::Verify.name().into(),
        model: "all".into(),
        canonical: "none".into(),
        arg_kind: "none".into(),
        params: None,
        columns: ["identity", "max_rel", "tolerance", "cases", "passed", "error"].iter().map(|s| s.to_string()).collect(),
        rows: Vec::new(),
        ok: true,
    };
    for r in reports {
        table.ok &= r.passed;
        table.rows.push(vec![
            Cell::Text(r.name),
            Cell::Num(r.max_rel),
            Cell::Num(r.tolerance),
            Cell::Int(r.cases as u64),
            Cell::Flag(r.passed),
            Cell::Text(r.error.unwrap_or_default().replace(',', ";")),
        ]);
    }
    Ok(table)
}

fn run_mc_duality(job: &JobSpec) -> Result<Table> {
    let p = job.params()?;
    let kind = match job.model {
        Model::EuclideanAffine => DualityKind::Affine,
        Model::BeltramiKlein => DualityKind::Chord,
        Model::Hyperboloid => DualityKind::Hyperbolic,
        m => return Err(Error::Job(format!("no Monte Carlo duality on the {m} model"))),
    };
    let (fs, ps) = (job.profile_spec()?, job.phi.as_ref().unwrap_or(job.profile_spec()?));
    let (f, phi) = (fs.profile(job.model)?, ps.profile(job.model)?);
    let input = match kind {
        DualityKind::Hyperbolic => DualityInput::Geodesics {
            f: Integrand::zonal(f.clone(), fs.scale())?,
            phi: Integrand::zonal(phi.clone(), ps.scale())?,
        },
        _ => DualityInput::Planes { f: Integrand::radial(f.clone(), fs.scale())?, phi: Integrand::radial(phi.clone(), ps.scale())? },
    };
    let check = duality_check_mc(kind, &p, &input, &job.mc)?;
    let exact = radial_duality_value(kind, &p, &f, &phi, &job.quadrature)?;
    let mut table = Table::new(job, Command::McDuality, "none", &["side", "value", "stderr"]);
    table.rows.push(vec![Cell::Text("lhs".into()), Cell::Num(check.lhs.value), Cell::Num(check.lhs.std_error)]);
    table.rows.push(vec![Cell::Text("rhs".into()), Cell::Num(check.rhs.value), Cell::Num(check.rhs.std_error)]);
    table.rows.push(vec![Cell::Text("quadrature".into()), Cell::Num(exact), Cell::Num(0.0)]);
    Ok(table)
}

/// f = R_j D_m R_k h against the exact R_j h.
fn run_chain(job: &JobSpec) -> Result<Table> {
    let p = job.params()?;
    let m = job.m.expect("validated");
    let h = job.profile_spec()?.profile(Model::Hyperboloid)?;
    let pk = TransformParams::new(p.n, 0, p.k)?;
    let hyper = Transform::forward(Geometry::Hyperbolic);
    let phi = hyper.profile(&pk, &h, &job.quadrature)?;
    let rec = reconstruct(&phi, &p, m, &job.mc)?;
    let exact = if p.j == 0 { h } else { hyper.profile(&TransformParams::new(p.n, 0, p.j)?, &h, &job.quadrature)? };
    let kind = rec.kind();
    let nodes = job.nodes(kind, kind.range())?;
    let mut table = Table::new(job, Command::Chain, &kind.to_string(), &[&kind.to_string(), "value", "exact"]);
    for x in nodes {
        table.push_nums(&[x, rec.eval(x), exact.eval(x)]);
    }
    Ok(table)
}

/// Runs a validated job. Work is spread over the current rayon pool.
pub fn run(job: &JobSpec) -> Result<Table> {
    job.validate()?;
    let cmd = job.command()?;
    match cmd {
        Command::Transform | Command::Dual => run_transform(job, cmd),
        Command::Invert => run_invert(job),
        Command::Convert => run_convert(job),
        Command::Verify => run_verify(job),
        Command::McDuality => run_mc_duality(job),
        Command::Chain => run_chain(job),
        Command::Table => run_table(job),
    }
}

/// [`run`] on a dedicated pool of `threads` workers.
pub fn run_with_threads(job: &JobSpec, threads: usize) -> Result<Table> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Job(format!("cannot start {threads} workers: {e}")))?;
    pool.install(|| run(job))
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Pole { .. } | Error::ArgKind { .. } | Error::Range(_) | Error::Job(_) => 2,
        Error::Divergence(_) | Error::LocalIntegrability(_) => 3,
        Error::MonteCarlo(_) | Error::Smoothing(_) => 4,
        _ => 1,
    }
}

fn kind_of(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Pole { .. } => "pole",
        Error::Divergence(_) => "divergence",
        Error::LocalIntegrability(_) => "local_integrability",
        Error::Quadrature(_) => "quadrature",
        Error::Smoothness(_) => "smoothness",
        Error::Instability(_) => "instability",
        Error::ArgKind { .. } => "arg_kind",
        Error::Range(_) => "range",
        Error::NotInRange(_) => "not_in_range",
        Error::MonteCarlo(_) => "monte_carlo",
        Error::Smoothing(_) => "smoothing",
        Error::Job(_) => "job",
    }
}

/// One-line JSON diagnostic for stderr.
pub fn diagnostic(e: &Error) -> String {
    serde_json::json!({ "error": kind_of(e), "exit_code": exit_code(e), "message": e.to_string() }).to_string()
}

#[derive(Debug, clap::Parser)]
#[command(name = "georadon", about = "Radon transforms on constant-curvature spaces")]
pub struct Args {
    pub command: Command,
    /// TOML job file.
    #[arg(long)]
    pub job: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Worker count from GEORADON_THREADS, or the hardware count.
pub fn thread_count() -> Result<usize> {
    match std::env::var("GEORADON_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::Job(format!("GEORADON_THREADS must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Loads, runs and writes a job; returns the exit code.
pub fn execute(args: &Args) -> i32 {
    let result = (|| {
        let mut job = JobSpec::load(&args.job)?;
        match job.command {
            Some(c) if c != args.command => {
                return Err(Error::Job(format!("the job file is a {} job, not {}", c.name(), args.command.name())));
            }
            _ => job.command = Some(args.command),
        }
        Overrides { seed: args.seed, samples: args.samples, rel_tol: args.rel_tol, out: args.out.clone(), format: args.format }
            .apply(&mut job);
        let table = run_with_threads(&job, thread_count()?)?;
        let text = table.render(job.output.format);
        match &job.output.path {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::Job(format!("cannot write {}: {e}", p.display())))?,
            None => print!("{text}"),
        }
        Ok(table.ok)
    })();
    match result {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("{}", serde_json::json!({ "error": "check_failed", "exit_code": 1, "message": "some checks failed" }));
            1
        }
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            exit_code(&e)
        }
    }
}
