//! Command-line front end: argument parsing, report assembly and rendering.
//!
//! Every command builds a serializable report with a `pass` verdict; the
//! table renderer walks the same report, so both output modes carry the same
//! findings.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

use crate::numerics::{sample_zero_set, SampleStats, Tolerances};
use crate::reduction::ReductionConfig;
use crate::strata::{
    build_catalog, compare_matrices, infeasibility_probe, positive_sign_pattern, v3_sign_families, Catalog,
    CatalogOptions, CompareReport, Level, StratumDescriptor, StrataError,
};
use crate::weights::{
    admissibility, box_identities_check, free_impossibility_search, symbolic_free_check, Admissibility, Family,
    SearchReport, Sign, SymbolicCheck, WeightError, WeightMatrix,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;

/// Seed used when neither `--seed` nor `QKREDUCE_SEED` is given.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Twistor,
    Sasakian,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Twistor => Level::Twistor,
            LevelArg::Sasakian => Level::Sasakian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Theta,
    Omega,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Theta => Family::Theta,
            FamilyArg::Omega => Family::Omega,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qkreduce", version, about = "Weighted-torus quaternionic reductions: admissibility, zero sets, singular strata")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "QKREDUCE_SEED")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub output: OutputFormat,
    /// Absolute residual tolerance on ‖μ‖² + ‖ν‖².
    #[arg(long, global = true)]
    pub tol_residual: Option<f64>,
    /// Relative singular-value cutoff for ranks.
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub parallel: usize,
    /// Refuse to run randomized commands without an explicit seed.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Force the matrix family instead of detecting it from the shape.
    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minors, box determinants and the admissibility verdict.
    Check { matrix: String },
    /// Singular-stratum catalog at one level.
    Strata {
        matrix: String,
        #[arg(long, value_enum, default_value = "twistor")]
        level: LevelArg,
        /// Probe restarts per stratum.
        #[arg(long, default_value_t = 16)]
        restarts: usize,
    },
    /// Seeded projections onto N with rank statistics.
    Sample {
        matrix: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Positivity, infeasibility probes and pointwise isotropy checks.
    Verify {
        matrix: String,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
    /// Side-by-side catalog structure of two matrices.
    Compare { left: String, right: String },
    /// Exhaustive scan for free actions.
    Search {
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
}

/// Resolved run parameters.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub parallel: usize,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Inadmissible(String),
    Internal(String),
}

impl From<WeightError> for Failure {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::Inadmissible(w) => Failure::Inadmissible(w),
            WeightError::Parse(_) | WeightError::Shape(_) | WeightError::EntryOutOfRange(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<StrataError> for Failure {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::Inadmissible(w) => Failure::Inadmissible(w),
            StrataError::Weights(w) => w.into(),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Rendered command output plus its verdict.
struct Outcome {
    pass: bool,
    /// Input was rejected but the report is still worth printing.
    inadmissible: bool,
    json: String,
    table: String,
}

fn outcome<T: Serialize>(report: &T, pass: bool, table: String) -> Result<Outcome, Failure> {
    let json = serde_json::to_string_pretty(report).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Outcome { pass, inadmissible: false, json, table })
}

fn parse_matrix(s: &str, family: Option<FamilyArg>) -> Result<WeightMatrix, Failure> {
    Ok(WeightMatrix::parse(s, family.map(Family::from))?)
}

fn require_admissible(m: &WeightMatrix) -> Result<Admissibility, Failure> {
    let a = admissibility(m)?;
    match &a.witness {
        Some(w) => Err(Failure::Inadmissible(format!("{}: {w} = 0", m.literal()))),
        None => Ok(a),
    }
}

/// Parses `args` (including the program name), runs the command, writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let randomized = !matches!(cli.command, Command::Check { .. } | Command::Search { .. });
    if cli.strict && randomized && cli.seed.is_none() {
        let _ = writeln!(err, "error: --strict requires --seed or QKREDUCE_SEED");
        return EXIT_USAGE;
    }
    let mut tol = Tolerances::default();
    if let Some(r) = cli.tol_residual {
        tol.residual = r;
    }
    if let Some(r) = cli.tol_rank {
        tol.rank = r;
    }
    let rc = RunConfig { seed: cli.seed.unwrap_or(DEFAULT_SEED), tolerances: tol, parallel: cli.parallel };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(rc.parallel).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli, &rc)) {
        Ok(o) => {
            let body = match cli.output {
                OutputFormat::Json => o.json,
                OutputFormat::Table => o.table,
            };
            let _ = writeln!(out, "{}", body.trim_end());
            if o.inadmissible {
                EXIT_INADMISSIBLE
            } else if o.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Inadmissible(w)) => {
            let _ = writeln!(err, "inadmissible: {w}");
            if cli.output == OutputFormat::Json {
                let _ = writeln!(out, "{}", serde_json::json!({ "admissible": false, "witness": w }));
            } else {
                let _ = writeln!(out, "INADMISSIBLE ({w})");
            }
            EXIT_INADMISSIBLE
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "failure: {m}");
            EXIT_FAIL
        }
    }
}

fn dispatch(cli: &Cli, rc: &RunConfig) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Check { matrix } => cmd_check(&parse_matrix(matrix, cli.family)?),
        Command::Strata { matrix, level, restarts } => {
            cmd_strata(&parse_matrix(matrix, cli.family)?, (*level).into(), *restarts, rc)
        }
        Command::Sample { matrix, n } => cmd_sample(&parse_matrix(matrix, cli.family)?, *n, rc),
        Command::Verify { matrix, restarts } => cmd_verify(&parse_matrix(matrix, cli.family)?, *restarts, rc),
        Command::Compare { left, right } => {
            cmd_compare(&parse_matrix(left, cli.family)?, &parse_matrix(right, cli.family)?, rc)
        }
        Command::Search { bound } => cmd_search(*bound),
    }
}

// ---------------------------------------------------------------- check

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub family: Family,
    pub weights: Vec<Vec<i64>>,
    pub admissibility: Admissibility,
}

fn cmd_check(m: &WeightMatrix) -> Result<Outcome, Failure> {
    let adm = admissibility(m)?;
    let mut t = String::new();
    let _ = writeln!(t, "{} {}", m.family(), m.literal());
    for d in &adm.determinants {
        let _ = writeln!(t, "  {:<16} {:>8}  {}", d.name, d.value, if d.value != 0 { "ok" } else { "ZERO" });
    }
    match &adm.witness {
        None => {
            let _ = writeln!(t, "ADMISSIBLE");
        }
        Some(w) => {
            let _ = writeln!(t, "INADMISSIBLE ({w} = 0)");
        }
    }
    let ok = adm.admissible;
    let report = CheckReport { family: m.family(), weights: m.rows(), admissibility: adm };
    let mut o = outcome(&report, ok, t)?;
    o.inadmissible = !ok;
    Ok(o)
}

// --------------------------------------------------------------- strata

fn catalog_options(rc: &RunConfig, restarts: usize) -> CatalogOptions {
    CatalogOptions { tol: rc.tolerances, seed: rc.seed, restarts, numeric: true }
}

fn catalog_table(c: &Catalog, t: &mut String) {
    let _ = writeln!(t, "{} {} catalog, level {}", c.weight_family, weights_literal(&c.weights), c.level);
    if let Some(p) = &c.positive {
        let _ = writeln!(t, "  positive sign family {} |u|^2 = {} balanced={}", sign_string(&p.signs), ratios(&p.solution), p.balanced);
    }
    let _ = writeln!(
        t,
        "  {:<22} {:>6} {:>5} {:>4} {:>7} {:>8} {:>9} {:>10}",
        "stratum", "det", "order", "dim", "pruned", "feasible", "residual", "verified"
    );
    for s in &c.strata {
        let (feas, res) = match &s.numeric {
            Some(n) => (n.feasible.to_string(), format!("{:.1e}", n.min_residual)),
            None => ("-".into(), "-".into()),
        };
        let dim = match s.numeric.as_ref().and_then(|n| n.quotient_dim) {
            Some(d) => d.to_string(),
            None => s.quotient_dim.to_string(),
        };
        let ver = match &s.verification {
            Some(v) => format!("{:.0e}", v.max_fixed_residual),
            None if s.continuous_stabilizer => "cont.".into(),
            None => "-".into(),
        };
        let _ = writeln!(
            t,
            "  {:<22} {:>6} {:>5} {:>4} {:>7} {:>8} {:>9} {:>10}",
            s.label, s.isotropy_determinant, s.isotropy_effective, dim, s.pruned, feas, res, ver
        );
    }
    let m = &c.summary;
    let _ = writeln!(
        t,
        "  spheres {} point candidates {} points {} pruned {} infeasible {} survivors {} ({} spheres, {} points)",
        m.spheres,
        m.point_candidates,
        opt(m.points),
        m.pruned,
        opt(m.infeasible),
        m.survivors,
        m.surviving_spheres,
        m.surviving_points
    );
}

fn cmd_strata(m: &WeightMatrix, level: Level, restarts: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    require_admissible(m)?;
    let c = build_catalog(m, level, &catalog_options(rc, restarts))?;
    let check = c.self_check();
    let mut t = String::new();
    catalog_table(&c, &mut t);
    if let Err(e) = &check {
        let _ = writeln!(t, "  self-check FAILED: {e}");
    }
    #[derive(Serialize)]
    struct StrataOut<'a> {
        seed: u64,
        catalog: &'a Catalog,
        self_check: Option<&'a String>,
    }
    outcome(&StrataOut { seed: rc.seed, catalog: &c, self_check: check.as_ref().err() }, check.is_ok(), t)
}

// --------------------------------------------------------------- sample

#[derive(Debug, Serialize)]
pub struct SampleReport {
    pub family: Family,
    pub weights: Vec<Vec<i64>>,
    pub stats: SampleStats,
    pub expected_rank: usize,
    pub pass: bool,
}

/// Constraint rank that leaves `dim N = 7 + dim(Sp(1) × T^r)` on the sphere.
fn expected_rank(f: Family) -> usize {
    4 * f.ambient_n() - 1 - (7 + 3 + f.torus_rank())
}

fn cmd_sample(m: &WeightMatrix, n: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    require_admissible(m)?;
    let cfg = ReductionConfig::new(*m);
    let stats = sample_zero_set(&cfg, rc.tolerances, n, rc.seed).map_err(|e| Failure::Internal(e.to_string()))?;
    let f = m.family();
    let expected = expected_rank(f);
    let at_rank = stats.rank_counts.get(&expected).copied().unwrap_or(0);
    let g = f.torus_rank() + 3;
    let pass = stats.converged == n
        && 100 * at_rank >= 95 * n
        && stats.orbit_rank_g.keys().all(|&r| r == g)
        && stats.orbit_rank_twistor.keys().all(|&r| r == g + 1);
    let mut t = String::new();
    let _ = writeln!(t, "{} {} seed {}", f, m.literal(), rc.seed);
    let _ = writeln!(t, "  converged {}/{} (max residual {:.1e})", stats.converged, n, stats.max_residual);
    let _ = writeln!(t, "  rank {} at {}/{} points; dim N = {}", expected, at_rank, n, stats.dim_n);
    let _ = writeln!(t, "  rank histogram {:?}, ambiguous {}, min gap ratio {:.1e}", stats.rank_counts, stats.ambiguous_ranks, stats.min_gap_ratio);
    let _ = writeln!(t, "  orbit rank G {:?}, twistor group {:?}", stats.orbit_rank_g, stats.orbit_rank_twistor);
    let _ = writeln!(t, "  min pair norm^2 {:.3e}", stats.min_pair_norm_sq);
    let _ = writeln!(t, "{}", if pass { "PASS" } else { "FAIL" });
    let report = SampleReport { family: f, weights: m.rows(), stats, expected_rank: expected, pass };
    outcome(&report, pass, t)
}

// --------------------------------------------------------------- verify

#[derive(Debug, Serialize)]
pub struct Finding {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub family: Family,
    pub weights: Vec<Vec<i64>>,
    pub seed: u64,
    pub findings: Vec<Finding>,
    pub pass: bool,
}

fn finding(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Finding {
    Finding { name: name.into(), pass, detail: detail.into() }
}

fn cmd_verify(m: &WeightMatrix, restarts: usize, rc: &RunConfig) -> Result<Outcome, Failure> {
    require_admissible(m)?;
    let cfg = ReductionConfig::new(*m);
    let mut findings = Vec::new();

    if let WeightMatrix::Theta(t) = m {
        let ids = box_identities_check(t)?;
        let fitted_ok = ids.rows.iter().all(|r| r.fitted_value == r.value);
        let diverging: Vec<&str> = ids.rows.iter().filter(|r| !r.printed_table_correct).map(|r| r.signs.as_str()).collect();
        findings.push(finding(
            "box identities (fitted)",
            fitted_ok,
            format!("printed table diverges at {diverging:?}"),
        ));
    }

    let pos = positive_sign_pattern(m)?;
    let half = Ratio::new(1, 2);
    findings.push(finding(
        "positivity: unique sign family",
        pos.sum() == half,
        format!("{} |u|^2 = {} (sum {}), {} systems", sign_string(&pos.signs), ratios(&pos.solution), pos.sum(), pos.systems),
    ));

    // every eigenspace sign family: only the positive one can meet N, and it
    // does exactly when its pair norms close up under the Sp(1) moment map
    for d in v3_sign_families(m.family()) {
        let p = infeasibility_probe(&cfg, &d, restarts, rc.tolerances, rc.seed)?;
        let selected = d.signs == pos.signs;
        let expect_feasible = selected && pos.balanced;
        let ok = p.empty != expect_feasible;
        findings.push(finding(
            format!("probe {}", d.label()),
            ok,
            format!(
                "selected={selected} balanced={} min residual {:.2e} over {} restarts",
                pos.balanced, p.min_residual, p.restarts
            ),
        ));
    }

    if m.family() == Family::Theta {
        let d = StratumDescriptor::single_triple(0, [1, 2, 3], [Sign::Plus; 3]);
        let p = infeasibility_probe(&cfg, &d, restarts, rc.tolerances, rc.seed)?;
        findings.push(finding(
            format!("probe {}", d.label()),
            p.empty,
            format!("min residual {:.2e} over {} restarts", p.min_residual, p.restarts),
        ));
    }

    for level in [Level::Twistor, Level::Sasakian] {
        let c = build_catalog(m, level, &catalog_options(rc, 16))?;
        let check = c.self_check();
        findings.push(finding(
            format!("{level} catalog structure"),
            check.is_ok(),
            check.err().unwrap_or_else(|| format!("{} entries", c.strata.len())),
        ));
        let mut worst: f64 = 0.0;
        let mut checked = 0;
        let mut missing = Vec::new();
        for s in c.survivors() {
            match &s.verification {
                Some(v) => {
                    worst = worst.max(v.max_fixed_residual);
                    checked += v.elements_checked;
                }
                None => missing.push(s.label.clone()),
            }
        }
        findings.push(finding(
            format!("{level} isotropy pointwise"),
            missing.is_empty() && worst < 1e-8,
            format!("{checked} elements, max residual {worst:.1e}, unverified {missing:?}"),
        ));
    }

    let pass = findings.iter().all(|f| f.pass);
    let mut t = String::new();
    let _ = writeln!(t, "verify {} {} seed {}", m.family(), m.literal(), rc.seed);
    for f in &findings {
        let _ = writeln!(t, "  [{}] {}: {}", if f.pass { "PASS" } else { "FAIL" }, f.name, f.detail);
    }
    let _ = writeln!(t, "{}", if pass { "PASS" } else { "FAIL" });
    let report = VerifyReport { family: m.family(), weights: m.rows(), seed: rc.seed, findings, pass };
    outcome(&report, pass, t)
}

// -------------------------------------------------------------- compare

fn cmd_compare(a: &WeightMatrix, b: &WeightMatrix, rc: &RunConfig) -> Result<Outcome, Failure> {
    require_admissible(a)?;
    require_admissible(b)?;
    let r: CompareReport = compare_matrices(a, b, &catalog_options(rc, 16))?;
    let mut t = String::new();
    for side in [&r.left, &r.right] {
        let _ = writeln!(t, "{} {}", side.family, weights_literal(&side.weights));
        for (name, c) in [("twistor", &side.twistor), ("sasakian", &side.sasakian)] {
            let _ = writeln!(
                t,
                "  {name:<9} spheres {} point candidates {} points {} survivors {} ({} spheres, {} points)",
                c.spheres,
                c.point_candidates,
                opt(c.points),
                c.survivors,
                c.surviving_spheres,
                c.surviving_points
            );
            let _ = writeln!(t, "            types {:?}", c.component_types);
            let _ = writeln!(t, "            |det| {:?}", c.determinants);
        }
    }
    let _ = writeln!(t, "structurally distinct: {}", r.structurally_distinct);
    let _ = writeln!(t, "survivors distinct: {}", r.survivors_distinct);
    outcome(&r, true, t)
}

// --------------------------------------------------------------- search

#[derive(Debug, Serialize)]
pub struct SearchOut {
    pub search: SearchReport,
    pub symbolic: Vec<SymbolicCheck>,
    pub pass: bool,
}

fn cmd_search(bound: i64) -> Result<Outcome, Failure> {
    if !(0..=50).contains(&bound) {
        return Err(Failure::Usage(format!("bound {bound} outside [0, 50]")));
    }
    let search = free_impossibility_search(bound);
    let symbolic: Vec<SymbolicCheck> = [[1, 1, -1, 1], [-1, -1, 1, -1]].into_iter().map(symbolic_free_check).collect();
    let pass = search.counterexamples.is_empty() && symbolic.iter().all(|s| s.violates);
    let mut t = String::new();
    let _ = writeln!(t, "scanned {} matrices with entries in [-{bound}, {bound}]", search.scanned);
    let _ = writeln!(t, "  all eight |box| = 1: {} (admissible: {})", search.all_unit_boxes, search.counterexamples.len());
    let _ = writeln!(t, "{} free actions found", search.counterexamples.len());
    for s in &symbolic {
        let bad: Vec<String> = s.residual_boxes.iter().filter(|r| !r.is_unit).map(|r| format!("{}={}", r.signs, r.value)).collect();
        let _ = writeln!(t, "  (X,Y,Z,W) = {:?}: minors {:?}, non-unit boxes {:?}", s.xyzw, s.deltas, bad);
    }
    let _ = writeln!(t, "{}", if pass { "PASS" } else { "FAIL" });
    outcome(&SearchOut { search, symbolic, pass }, pass, t)
}

// -------------------------------------------------------------- helpers

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn sign_string(s: &[Sign]) -> String {
    s.iter().map(|x| x.symbol()).collect()
}

fn ratios(v: &[Ratio<i64>]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

fn weights_literal(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("/")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qkreduce").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_detects_family_by_shape() {
        let (code, out, _) = run_str(&["check", "1,2,3/1,3,6"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.starts_with("omega"));
        assert!(out.contains("ADMISSIBLE"));
    }

    #[test]
    fn malformed_literal_is_usage_error() {
        let (code, _, err) = run_str(&["check", "1,2,x/1,3,6"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("parse error"));
    }

    #[test]
    fn forced_family_mismatch_is_usage_error() {
        let (code, _, _) = run_str(&["--family", "theta", "check", "1,2,3/1,3,6"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn inadmissible_exit_code_and_witness() {
        let (code, out, _) = run_str(&["check", "1,1,1/1,1,1"]);
        assert_eq!(code, EXIT_INADMISSIBLE);
        assert!(out.contains("D12"));
    }

    #[test]
    fn strict_needs_seed() {
        let (code, _, err) = run_str(&["--strict", "sample", "1,2,3/1,3,6", "--n", "2"]);
        if std::env::var_os("QKREDUCE_SEED").is_none() {
            assert_eq!(code, EXIT_USAGE);
            assert!(err.contains("--strict"));
        }
    }
}
