//! Command-line surface over the library: diagram files in, tables and
//! verification reports out.
//!
//! Every command writes either TSV (one block per table, introduced by a
//! `# name` line and a header row) or JSON. Exit status is 0 on success, 1
//! when a verification fails and 2 when the input cannot be parsed.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affinecat::StrandsAlgebra;
use crate::curve::{CurveError, DiagramFile, Path, Topology};
use crate::f2core::{BasisToken, F2Sum};
use crate::hecke::{self, AffinePerm, Perm};
use crate::strands::{Braid, StrandCat};
use crate::tworep::{self, disjoint_union, CheckReport, DualContext, GluedContext, TwoRepError};

pub mod suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Arguments

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "strandcat", version, about = "Strand categories, nil Hecke algebras and their structure checks over F2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis, product and differential tables of H_n or a truncation of Ĥ_n.
    Hecke(HeckeArgs),
    /// Tables of the strands algebra A(n).
    Affine(AffineArgs),
    /// Basis, product and differential tables of a strand category.
    Algebra(AlgebraArgs),
    /// Compares the glued category with the quotient description.
    Glue(GlueArgs),
    /// Compares T_{H_s}(M_s)/(κ) with the positive affine nil Hecke algebra.
    Theta(ThetaArgs),
    /// Duality matrices and zigzag identities for a line with two ends.
    Dual(DualArgs),
    /// Runs the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct HeckeArgs {
    /// Number of strands.
    #[arg(value_parser = clap::value_parser!(u64).range(1..=7))]
    pub n: u64,
    /// Use the extended affine algebra, truncated by length and c-degree.
    #[arg(long)]
    pub affine: bool,
    /// Length bound (affine only).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub lmax: u64,
    /// Bound on |c-degree| (affine only).
    #[arg(long, default_value_t = 1)]
    pub cmax: u64,
}

#[derive(Debug, Args)]
pub struct AffineArgs {
    #[arg(value_parser = clap::value_parser!(u64).range(1..=6))]
    pub n: u64,
    /// Keep only basis elements of length at most this.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub lmax: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Chord diagram file.
    pub file: PathBuf,
    /// Mark ids whose points make up the objects.
    #[arg(long, value_delimiter = ',', required = true)]
    pub objects: Vec<usize>,
    /// Bound on total arc length.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub mu: u64,
    /// Winding bound; required when the diagram has circles.
    #[arg(short = 'W', long = "winding", value_parser = clap::value_parser!(u64).range(1..))]
    pub winding: Option<u64>,
    /// Number of strands per object.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub strands: u64,
}

#[derive(Debug, Args)]
pub struct GlueArgs {
    /// One diagram (self-gluing) or two diagrams glued end to end.
    #[arg(num_args = 1..=2, required = true)]
    pub files: Vec<PathBuf>,
    /// Largest number of passes through the gluing point.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub mu: u64,
    #[arg(short = 'W', long = "winding", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub winding: u64,
    /// Largest object size.
    #[arg(long, default_value_t = 2)]
    pub smax: u64,
    /// Explicit ray end indices OUT,IN in the (united) diagram.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub ends: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(value_parser = clap::value_parser!(u64).range(1..=4))]
    pub s: u64,
    #[arg(long, default_value_t = 2)]
    pub cmax: u64,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    /// Diagram with an outgoing right end and an incoming left end on one
    /// line; without it the standard line with `--marks` marks is used.
    pub file: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub marks: u64,
    /// Number of slots / largest n.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Orient the standard line on (-1/2, 1/2).
    #[arg(long)]
    pub oriented: bool,
    /// Largest object size for the injectivity checks.
    #[arg(long, default_value_t = 3)]
    pub smax: u64,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run only these criteria (1..=12).
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<usize>>,
}

// ---------------------------------------------------------------------------
// Tables and reports

/// A named table of string cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn tables_to_tsv(tables: &[Table]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("# {}\n{}\n", t.name, t.columns.join("\t")));
        for r in &t.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
    }
    out
}

pub fn parse_tsv(text: &str) -> Result<Vec<Table>, CliError> {
    let mut tables: Vec<Table> = Vec::new();
    let mut header_next = false;
    for (ln, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("# ") {
            tables.push(Table { name: name.into(), columns: vec![], rows: vec![] });
            header_next = true;
            continue;
        }
        let Some(t) = tables.last_mut() else {
            return Err(CliError::Parse(format!("line {}: row before any table", ln + 1)));
        };
        let cells: Vec<String> = line.split('\t').map(String::from).collect();
        if header_next {
            t.columns = cells;
            header_next = false;
        } else if cells.len() != t.columns.len() {
            return Err(CliError::Parse(format!("line {}: {} cells, {} columns", ln + 1, cells.len(), t.columns.len())));
        } else {
            t.rows.push(cells);
        }
    }
    Ok(tables)
}

pub fn tables_to_json(tables: &[Table]) -> String {
    serde_json::to_string_pretty(tables).expect("tables serialize") + "\n"
}

pub fn parse_json_tables(text: &str) -> Result<Vec<Table>, CliError> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, usize>,
}

impl Report {
    pub fn new(check: &str, parameters: &[(&str, String)]) -> Self {
        Report {
            check: check.into(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            status: Status::Pass,
            counterexample: None,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_check(check: &str, parameters: &[(&str, String)], rep: &CheckReport) -> Self {
        let mut r = Report::new(check, parameters);
        r.counts = rep.counts.clone();
        r.counts.insert("checked".into(), rep.checked);
        if !rep.ok() {
            r.fail(rep.failures.first().cloned().unwrap_or_else(|| format!("{} failures", rep.failed)));
        }
        r
    }

    pub fn fail(&mut self, counterexample: String) {
        self.status = Status::Fail;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    pub fn ok(&self) -> bool {
        self.status == Status::Pass
    }
}

fn params_cell(p: &BTreeMap<String, String>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn reports_table(reports: &[Report]) -> Table {
    let mut t = Table::new("reports", &["check", "status", "parameters", "counterexample"]);
    for r in reports {
        let status = if r.ok() { "pass" } else { "fail" };
        t.push(vec![
            r.check.clone(),
            status.into(),
            params_cell(&r.parameters),
            r.counterexample.clone().unwrap_or_default().replace(['\t', '\n'], " "),
        ]);
    }
    t
}

pub fn reports_to_json(reports: &[Report]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
}

// ---------------------------------------------------------------------------
// Tokens

/// A braid as its strand tuples `(component, start mark, end mark,
/// winding)`, sorted; mark ids are 1-based.
pub fn braid_token(cat: &StrandCat, b: &Braid) -> String {
    let mut v: Vec<(usize, usize, usize, i64)> = b.strands.iter().map(|p| strand_tuple(cat, p)).collect();
    v.sort();
    let parts: Vec<String> = v.iter().map(|(c, s, e, w)| format!("({c}, {s}, {e}, {w})")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn strand_tuple(cat: &StrandCat, p: &Path) -> (usize, usize, usize, i64) {
    let c = &cat.z.components[p.comp];
    let wind = match c.topology {
        Topology::Line => 0,
        Topology::Circle => p.to.div_euclid(c.m() as i64),
    };
    (p.comp, cat.z.start_mark(p) + 1, cat.z.end_mark(p) + 1, wind)
}

/// Inverse of [`braid_token`] on the tuple level.
pub fn parse_braid_token(s: &str) -> Result<Vec<(usize, usize, usize, i64)>, CliError> {
    let bad = || CliError::Parse(format!("bad braid token {s:?}"));
    let inner = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let nums: Vec<&str> = body[..close].split(',').map(str::trim).collect();
        if nums.len() != 4 {
            return Err(bad());
        }
        let u = |x: &str| x.parse::<usize>().map_err(|_| bad());
        out.push((u(nums[0])?, u(nums[1])?, u(nums[2])?, nums[3].parse::<i64>().map_err(|_| bad())?));
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        }
    }
    Ok(out)
}

fn sum_token<T: Ord + Clone>(x: &F2Sum<T>, enc: impl Fn(&T) -> String) -> String {
    let mut parts: Vec<String> = x.iter().map(enc).collect();
    parts.sort();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// Commands

/// Output of one command: tables or reports, and the exit status.
pub struct Outcome {
    pub tables: Vec<Table>,
    pub reports: Vec<Report>,
}

impl Outcome {
    fn status(&self) -> i32 {
        if self.reports.iter().all(Report::ok) {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut all = self.tables.clone();
                if !self.reports.is_empty() {
                    all.push(reports_table(&self.reports));
                }
                tables_to_tsv(&all)
            }
            Format::Json if self.tables.is_empty() => reports_to_json(&self.reports),
            Format::Json if self.reports.is_empty() => tables_to_json(&self.tables),
            Format::Json => {
                let v = serde_json::json!({ "tables": self.tables, "reports": self.reports });
                serde_json::to_string_pretty(&v).expect("serialize") + "\n"
            }
        }
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output to `out`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if write!(out, "{}", o.render(cli.format)).is_err() {
                return EXIT_FAILED;
            }
            o.status()
        }
        Err(CliError::Parse(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_PARSE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Hecke(a) => Ok(hecke_tables(a)),
        Command::Affine(a) => Ok(affine_tables(a)),
        Command::Algebra(a) => algebra_tables(a),
        Command::Glue(a) => glue_reports(a),
        Command::Theta(a) => Ok(theta_reports(a)),
        Command::Dual(a) => dual_outcome(a),
        Command::Selftest(a) => Ok(selftest(a, cli.seed)),
    }
}

fn read_diagram(path: &PathBuf) -> Result<DiagramFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_cat(path: &PathBuf) -> Result<StrandCat, CliError> {
    Ok(StrandCat::new(crate::curve::CurveModel::from_spec(read_diagram(path)?)?))
}

/// Basis, product and differential tables for a finite family of basis
/// elements closed under nothing in particular: products and differentials
/// are printed whatever they are.
type Column<'a, T> = (&'a str, &'a dyn Fn(&T) -> String);

fn algebra_like<T: Ord + Clone>(
    basis: &[T],
    key: &dyn Fn(&T) -> String,
    extra: &[Column<T>],
    mult: &dyn Fn(&T, &T) -> Option<F2Sum<T>>,
    d: &dyn Fn(&T) -> F2Sum<T>,
) -> Vec<Table> {
    let mut cols = vec!["element"];
    cols.extend(extra.iter().map(|(n, _)| *n));
    let mut bt = Table::new("basis", &cols);
    for b in basis {
        let mut row = vec![key(b)];
        row.extend(extra.iter().map(|(_, f)| f(b)));
        bt.push(row);
    }
    let mut pt = Table::new("product", &["left", "right", "product"]);
    for a in basis {
        for b in basis {
            if let Some(p) = mult(a, b) {
                pt.push(vec![key(a), key(b), sum_token(&p, key)]);
            }
        }
    }
    let mut dt = Table::new("differential", &["element", "d"]);
    for b in basis {
        dt.push(vec![key(b), sum_token(&d(b), key)]);
    }
    vec![bt, pt, dt]
}

fn hecke_tables(a: &HeckeArgs) -> Outcome {
    let n = a.n as usize;
    let tables = if a.affine {
        let c = a.cmax as i64;
        let mut basis = AffinePerm::enumerate(n, a.lmax as usize, -c..=c);
        basis.sort_by_key(|w| (w.length(), w.window().to_vec()));
        algebra_like(
            &basis,
            &|w: &AffinePerm| w.encode(),
            &[("length", &|w: &AffinePerm| w.length().to_string()), ("c", &|w: &AffinePerm| w.c_degree().to_string())],
            &|x, y| Some(F2Sum::from_option(hecke::mult_basis(x, y))),
            &|w| hecke::d_basis(w),
        )
    } else {
        let mut basis = Perm::all(n);
        basis.sort_by_key(|w| (w.length(), w.images().to_vec()));
        algebra_like(
            &basis,
            &|w: &Perm| w.encode(),
            &[("length", &|w: &Perm| w.length().to_string())],
            &|x, y| Some(F2Sum::from_option(hecke::mult_basis(x, y))),
            &|w| hecke::d_basis(w),
        )
    };
    Outcome { tables, reports: vec![] }
}

fn affine_tables(a: &AffineArgs) -> Outcome {
    let alg = StrandsAlgebra::new(a.n as usize);
    let lmax = a.lmax.map_or(usize::MAX, |l| l as usize);
    let basis: Vec<_> = alg.basis.iter().filter(|s| s.length() <= lmax).cloned().collect();
    let set = |v: &[usize]| format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    let tables = algebra_like(
        &basis,
        &|s| s.encode(),
        &[
            ("source", &|s: &crate::affinecat::PeriodicMap| set(&s.source)),
            ("target", &|s: &crate::affinecat::PeriodicMap| set(&s.target)),
            ("length", &|s: &crate::affinecat::PeriodicMap| s.length().to_string()),
        ],
        &|x, y| (x.source == y.target).then(|| F2Sum::from_option(alg.mult(x, y))),
        &|s| s.differential(),
    );
    Outcome { tables, reports: vec![] }
}

/// Basis of the full subcategory on the given objects, ordered by (total
/// μ, token).
pub fn algebra_basis(cat: &StrandCat, objects: &[Vec<usize>], w: usize, mu: usize) -> Vec<Braid> {
    let mut basis = Vec::new();
    for s in objects {
        for t in objects {
            basis.extend(cat.hom(s, t, w, mu));
        }
    }
    basis.sort_by_cached_key(|b| (cat.mu_total(b), braid_token(cat, b)));
    basis
}

fn algebra_tables(a: &AlgebraArgs) -> Result<Outcome, CliError> {
    let cat = load_cat(&a.file)?;
    let has_circle = cat.z.components.iter().any(|c| c.topology == Topology::Circle);
    let w = match (a.winding, has_circle) {
        (Some(w), _) => w as usize,
        (None, false) => 1,
        (None, true) => return Err(CliError::Parse("the diagram has circles: a winding bound -W is required".into())),
    };
    let mut pts = Vec::new();
    for &id in &a.objects {
        let p = cat.z.point_of_mark_id(id).ok_or_else(|| CliError::Parse(format!("no mark with id {id}")))?;
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let k = a.strands as usize;
    let objects = StrandCat::objects(&pts, k..=k);
    let basis = algebra_basis(&cat, &objects, w, a.mu as usize);
    let obj = |v: &[usize]| {
        let mut ids: Vec<usize> = v.iter().map(|&p| cat.z.points[p][0] + 1).collect();
        ids.sort();
        format!("{{{}}}", ids.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    };
    let key = |b: &Braid| braid_token(&cat, b);
    let tables = algebra_like(
        &basis,
        &key,
        &[
            ("source", &|b: &Braid| obj(&b.source)),
            ("target", &|b: &Braid| obj(&cat.target(b))),
            ("mu", &|b: &Braid| cat.mu_total(b).to_string()),
        ],
        &|g, f| {
            (cat.target(f) == g.source).then(|| F2Sum::from_option(cat.product(g, f).expect("composable")))
        },
        &|b| cat.differential(b),
    );
    Ok(Outcome { tables, reports: vec![] })
}

fn glue_reports(a: &GlueArgs) -> Result<Outcome, CliError> {
    let spec = match a.files.as_slice() {
        [one] => read_diagram(one)?,
        [x, y] => disjoint_union(&read_diagram(x)?, &read_diagram(y)?),
        _ => return Err(CliError::Parse("expected one or two diagram files".into())),
    };
    let (w, nmax, smax) = (a.winding as usize, a.mu as usize, a.smax as usize);
    let params = [
        ("files", a.files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",")),
        ("mu", nmax.to_string()),
        ("W", w.to_string()),
        ("smax", smax.to_string()),
    ];
    let built = match &a.ends {
        Some(e) => {
            let cat = StrandCat::new(crate::curve::CurveModel::from_spec(spec)?);
            GluedContext::new(cat, e[0], e[1], w)
        }
        None => GluedContext::from_spec(spec, w),
    };
    let ctx = match built {
        Ok(c) => c,
        Err(TwoRepError::Curve(e)) => return Err(e.into()),
        Err(e) => {
            let mut r = Report::new("glue", &params);
            r.fail(e.to_string());
            return Ok(Outcome { tables: vec![], reports: vec![r] });
        }
    };
    let mut reports = Vec::new();
    for (name, res) in [("glue", ctx.glue_check(nmax, smax)), ("glue.products", ctx.product_check(nmax, smax.min(1)))] {
        match res {
            Ok(rep) => reports.push(Report::from_check(name, &params, &rep)),
            Err(e) => {
                let mut r = Report::new(name, &params);
                r.fail(e.to_string());
                reports.push(r);
            }
        }
    }
    Ok(Outcome { tables: vec![], reports })
}

fn theta_reports(a: &ThetaArgs) -> Outcome {
    let rep = tworep::theta_check(a.s as usize, a.cmax as usize);
    let r = Report::from_check("theta", &[("s", a.s.to_string()), ("cmax", a.cmax.to_string())], &rep);
    Outcome { tables: vec![], reports: vec![r] }
}

fn dual_outcome(a: &DualArgs) -> Result<Outcome, CliError> {
    let n = a.n as usize;
    let ctx = match &a.file {
        Some(f) => match DualContext::new(load_cat(f)?) {
            Ok(c) => c,
            Err(e) => return Err(CliError::Parse(e.to_string())),
        },
        None => DualContext::line(a.marks as usize, n, a.oriented),
    };
    let mut params = vec![("n", n.to_string()), ("smax", a.smax.to_string())];
    match &a.file {
        Some(f) => params.push(("file", f.display().to_string())),
        None => {
            params.push(("marks", a.marks.to_string()));
            params.push(("oriented", a.oriented.to_string()));
        }
    }
    let mut table = Table::new("kappa", &["S", "n", "row", "entries"]);
    let mut reports = Vec::new();
    let mut matrix_fail = None;
    for k in 0..=n {
        for s in StrandCat::objects(&ctx.m, k..=k) {
            match ctx.duality_matrix(&s, k) {
                Ok((rows, _, mat)) => {
                    for (row, bits) in rows.iter().zip(&mat) {
                        let e: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                        let ids: Vec<String> = s.iter().map(|&p| (ctx.cat.z.points[p][0] + 1).to_string()).collect();
                        table.push(vec![format!("{{{}}}", ids.join(",")), k.to_string(), braid_token(&ctx.cat, row), e]);
                    }
                }
                Err(e) => matrix_fail = Some(e.to_string()),
            }
        }
    }
    let push = |reports: &mut Vec<Report>, name: &str, res: Result<CheckReport, TwoRepError>| match res {
        Ok(rep) => reports.push(Report::from_check(name, &params, &rep)),
        Err(e) => {
            let mut r = Report::new(name, &params);
            r.fail(e.to_string());
            reports.push(r);
        }
    };
    push(&mut reports, "duality", ctx.duality_check(a.smax as usize, n));
    push(&mut reports, "zigzag", ctx.zigzag_check(n));
    if let Some(m) = matrix_fail {
        reports[0].fail(m);
    }
    Ok(Outcome { tables: vec![table], reports })
}

fn selftest(a: &SelftestArgs, seed: u64) -> Outcome {
    let wanted = |i: usize| a.only.as_ref().is_none_or(|v| v.contains(&i));
    let reports = suite::run_selected(seed, &wanted).into_iter().map(|c| c.report()).collect();
    Outcome { tables: vec![], reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["strandcat"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn hecke_table_round_trips() {
        let (code, out, _) = run_str(&["hecke", "3"]);
        assert_eq!(code, 0);
        let tables = parse_tsv(&out).unwrap();
        assert_eq!(tables_to_tsv(&tables), out);
        assert_eq!(tables[0].rows.len(), 6);
        assert_eq!(tables[0].rows[0][0], "[1,2,3]");
        let (_, json, _) = run_str(&["hecke", "3", "--format", "json"]);
        assert_eq!(parse_json_tables(&json).unwrap(), tables);
    }

    #[test]
    fn bad_arguments_exit_two() {
        assert_eq!(run_str(&["hecke"]).0, EXIT_PARSE);
        assert_eq!(run_str(&["algebra", "/nonexistent.json", "--objects", "1", "--mu", "2"]).0, EXIT_PARSE);
        assert_eq!(run_str(&["hecke", "3", "--format", "xml"]).0, EXIT_PARSE);
    }

    #[test]
    fn braid_tokens_parse_back() {
        let cat = StrandCat::from_json(r#"{"components":[{"kind":"OrientedCircle","marks":["0","1/2"]}]}"#).unwrap();
        for b in cat.hom(&[0, 1], &[0, 1], 2, 5) {
            let tok = braid_token(&cat, &b);
            let parsed = parse_braid_token(&tok).unwrap();
            let again: Vec<String> = parsed.iter().map(|(c, s, e, w)| format!("({c}, {s}, {e}, {w})")).collect();
            assert_eq!(format!("{{{}}}", again.join(", ")), tok);
            assert_eq!(parsed.len(), 2);
        }
        assert!(parse_braid_token("{(0, 1)}").is_err());
    }

    #[test]
    fn report_schema() {
        let (code, out, _) = run_str(&["theta", "1", "--cmax", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let r = &v[0];
        assert_eq!(r["check"], "theta");
        assert_eq!(r["status"], "pass");
        assert_eq!(r["parameters"]["s"], "1");
        assert!(r.get("counterexample").is_none());
        let back: Vec<Report> = serde_json::from_str(&out).unwrap();
        assert_eq!(reports_to_json(&back), out);
    }
}
