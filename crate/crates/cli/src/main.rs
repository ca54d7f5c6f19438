//! `gggr`: command-line front end for the admissibility pipeline.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gggr_core::admissibility::max_rank_search;
use gggr_core::pfaffian::{pfaffian_with, PfaffianOptions};
use gggr_core::wdd::{self, WeightedDiagram};
use gggr_core::{
    check_conjecture_k2, check_conjecture_special, Budget, CartanType, ConjectureReport, Error,
    GradedPieces, GramMatrix, Root, RootSystem, StructureConstants,
};

const EXIT_DISAGREE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "gggr", version, about = "Exact admissibility checks for weighted Dynkin diagrams")]
struct Cli {
    /// Worker threads for witness search (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Directory with the diagram tables (overrides the embedded copies).
    #[arg(long, global = true, value_name = "DIR")]
    data_dir: Option<PathBuf>,

    #[command(flatten)]
    budget: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Points of {0,1}^m tried before falling back to the Pfaffian.
    #[arg(long, global = true, value_name = "N")]
    max_candidates: Option<u64>,

    /// Largest Gram dimension for which a symbolic Pfaffian is attempted.
    #[arg(long, global = true, value_name = "N")]
    max_pfaffian_dim: Option<usize>,

    /// Term multiplications allowed in one Pfaffian.
    #[arg(long, global = true, value_name = "N")]
    max_pfaffian_steps: Option<u64>,

    /// Remove every limit; completion is not promised.
    #[arg(long, global = true)]
    unlimited: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if self.unlimited {
            b.max_candidates = u64::MAX;
            b.max_pfaffian_dim = 64;
            b.max_pfaffian_steps = None;
        }
        if let Some(n) = self.max_candidates {
            b.max_candidates = n;
        }
        if let Some(n) = self.max_pfaffian_dim {
            b.max_pfaffian_dim = n;
        }
        if let Some(n) = self.max_pfaffian_steps {
            b.max_pfaffian_steps = Some(n);
        }
        b
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordered positive roots as digit strings.
    Roots {
        cartan: String,
        #[arg(long)]
        json: bool,
    },
    /// Bracket of two root vectors, or the structure-constant self-check.
    Bracket {
        cartan: String,
        #[arg(required_unless_present = "selfcheck")]
        left: Option<String>,
        #[arg(required_unless_present = "selfcheck")]
        right: Option<String>,
        /// Check antisymmetry, string bounds and the Jacobi identity.
        #[arg(long)]
        selfcheck: bool,
    },
    /// Weighted Dynkin diagrams with b, graded dimensions and conditions.
    Wdd {
        cartan: String,
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Roots of each weight for one diagram.
    Grading {
        cartan: String,
        #[arg(long)]
        label: String,
        #[arg(long)]
        json: bool,
    },
    /// Symbolic Gram matrix of one diagram.
    Gram {
        cartan: String,
        #[arg(long)]
        label: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Symbolic Pfaffian of the Gram matrix.
    Pfaffian {
        cartan: String,
        #[arg(long)]
        label: String,
        /// Reduce the matrix modulo this prime first.
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        /// Print a summary instead of the polynomial.
        #[arg(long)]
        stats: bool,
    },
    /// Verify one conjecture for one type.
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
    /// Sweep several types and primes.
    Report {
        /// Every exceptional type.
        #[arg(long, conflicts_with = "types")]
        all: bool,
        /// Comma-separated types.
        #[arg(long = "type", value_delimiter = ',', required_unless_present = "all")]
        types: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        /// Include the unimodularity check.
        #[arg(long)]
        special: bool,
        #[arg(long)]
        json: bool,
    },
    /// Highest rank of a {0,1} specialization modulo p.
    Rank {
        cartan: String,
        #[arg(long)]
        label: String,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CheckKind {
    /// K2 membership against the condition column.
    K2 {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Unimodularity against specialness.
    Special {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Text,
    Json,
    Latex,
}

/// Errors carrying their exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::Domain(_) => EXIT_USAGE,
            Error::Data(_) => EXIT_DATA,
            Error::Contract(_) | Error::Budget(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let long_version = version_text();
    let long_version: &'static str = Box::leak(long_version.into_boxed_str());
    let matches = Cli::command().long_version(long_version).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(dir) = &cli.data_dir {
        std::env::set_var(wdd::DATA_DIR_ENV, dir);
    }
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn version_text() -> String {
    let mut s = env!("CARGO_PKG_VERSION").to_string();
    match wdd::data_checksums() {
        Ok(sums) => {
            for (name, hash) in sums {
                let _ = write!(s, "\n{name}: sha256 {hash}");
            }
        }
        Err(e) => {
            let _ = write!(s, "\ndata: {e}");
        }
    }
    s
}

fn root_system(name: &str) -> CliResult<RootSystem> {
    let t: CartanType = name.parse()?;
    Ok(RootSystem::new(t)?)
}

fn gram_for(rs: &RootSystem, label: &str) -> CliResult<(WeightedDiagram, GramMatrix)> {
    let d = wdd::find_diagram(rs, label)?;
    let sc = StructureConstants::new(rs);
    let g = GramMatrix::build(&sc, &GradedPieces::new(rs, &d))?;
    Ok((d, g))
}

fn run(cli: &Cli, out: &mut String) -> CliResult<u8> {
    let budget = cli.budget.budget();
    match &cli.command {
        Command::Roots { cartan, json } => roots(cartan, *json, out),
        Command::Bracket {
            cartan,
            left,
            right,
            selfcheck,
        } => bracket(cartan, left.as_deref(), right.as_deref(), *selfcheck, out),
        Command::Wdd {
            cartan,
            label,
            json,
        } => diagrams(cartan, label.as_deref(), *json, out),
        Command::Grading {
            cartan,
            label,
            json,
        } => grading(cartan, label, *json, out),
        Command::Gram {
            cartan,
            label,
            format,
        } => {
            let rs = root_system(cartan)?;
            let (_, g) = gram_for(&rs, label)?;
            match format {
                Format::Text => out.push_str(&g.to_text()),
                Format::Json => {
                    out.push_str(&serde_json::to_string_pretty(&g)?);
                    out.push('\n');
                }
                Format::Latex => out.push_str(&g.to_latex()),
            }
            Ok(0)
        }
        Command::Pfaffian {
            cartan,
            label,
            modulus,
            stats,
        } => pfaffian_cmd(cartan, label, *modulus, *stats, &budget, out),
        Command::Check { which } => match which {
            CheckKind::K2 {
                cartan,
                prime,
                json,
            } => {
                let rs = root_system(cartan)?;
                let report = check_conjecture_k2(&rs, *prime, &budget)?;
                emit_reports(&[report], *json, out)
            }
            CheckKind::Special { cartan, json } => {
                let rs = root_system(cartan)?;
                let report = check_conjecture_special(&rs, &budget)?;
                emit_reports(&[report], *json, out)
            }
        },
        Command::Report {
            all,
            types,
            primes,
            special,
            json,
        } => {
            let names: Vec<String> = if *all {
                ["G2", "F4", "E6", "E7", "E8"].map(String::from).to_vec()
            } else {
                types.clone()
            };
            let mut reports = Vec::new();
            for name in &names {
                let rs = root_system(name)?;
                for &p in primes {
                    reports.push(check_conjecture_k2(&rs, p, &budget)?);
                }
                if *special {
                    reports.push(check_conjecture_special(&rs, &budget)?);
                }
            }
            emit_reports(&reports, *json, out)
        }
        Command::Rank {
            cartan,
            label,
            prime,
        } => {
            let rs = root_system(cartan)?;
            let (_, g) = gram_for(&rs, label)?;
            let (rank, point) = max_rank_search(&g, *prime, budget.max_candidates)?;
            let pt: String = point.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "n = {}", g.n());
            let _ = writeln!(out, "rank = {rank}");
            let _ = writeln!(out, "point = {pt}");
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct RootRow {
    index: usize,
    root: String,
    height: i32,
}

fn roots(cartan: &str, json: bool, out: &mut String) -> CliResult<u8> {
    let rs = root_system(cartan)?;
    let rows: Vec<RootRow> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| RootRow {
            index: i + 1,
            root: r.digits(),
            height: r.height(),
        })
        .collect();
    if json {
        let doc = serde_json::json!({ "type": rs.cartan_type().to_string(), "roots": rows });
        out.push_str(&serde_json::to_string_pretty(&doc)?);
        out.push('\n');
    } else {
        for r in rows {
            let _ = writeln!(out, "{:>4}  {}  {}", r.index, r.root, r.height);
        }
    }
    Ok(0)
}

fn signed_digits(r: &Root) -> String {
    if r.is_positive() {
        r.digits()
    } else {
        let neg = Root::new(r.coeffs().iter().map(|c| -c).collect());
        format!("-{}", neg.digits())
    }
}

fn bracket(
    cartan: &str,
    left: Option<&str>,
    right: Option<&str>,
    selfcheck: bool,
    out: &mut String,
) -> CliResult<u8> {
    let rs = root_system(cartan)?;
    let sc = StructureConstants::new(&rs);
    if selfcheck {
        let mut failures = sc.check_pairs();
        let total = rs.roots().len();
        let triples = (total as u64).pow(3);
        let mut checked = 0u64;
        if triples <= 4_000_000 {
            for a in 0..total {
                for b in 0..total {
                    for c in 0..total {
                        checked += 1;
                        if !sc.jacobi_holds(a, b, c) {
                            failures.push(format!("Jacobi fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            // fixed xorshift sample keeps the output reproducible
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                (s % total as u64) as usize
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                checked += 1;
                if !sc.jacobi_holds(a, b, c) {
                    failures.push(format!("Jacobi fails at ({a},{b},{c})"));
                }
            }
        }
        let _ = writeln!(out, "pairs checked: {}", total * total);
        let _ = writeln!(out, "triples checked: {checked}");
        for f in &failures {
            let _ = writeln!(out, "FAIL {f}");
        }
        let _ = writeln!(out, "{}", if failures.is_empty() { "ok" } else { "failed" });
        return Ok(if failures.is_empty() { 0 } else { EXIT_DISAGREE });
    }
    let (l, r) = match (left, right) {
        (Some(l), Some(r)) => (l, r),
        _ => {
            return Err(Failure {
                code: EXIT_USAGE,
                message: "two roots are required".into(),
            })
        }
    };
    let a = Root::parse_digits(l, rs.rank())?;
    let b = Root::parse_digits(r, rs.rank())?;
    for x in [&a, &b] {
        if rs.id_of(x).is_none() {
            return Err(Error::Config(format!("{} is not a root", signed_digits(x))).into());
        }
    }
    let lhs = format!("[e_{}, e_{}]", signed_digits(&a), signed_digits(&b));
    match sc.bracket(&a, &b) {
        Some((s, c)) => {
            let _ = writeln!(out, "{lhs} = {c} e_{}", signed_digits(&s));
        }
        None => {
            let _ = writeln!(out, "{lhs} = 0");
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct DiagramRow {
    label: String,
    weights: String,
    b: i64,
    dim_g0: usize,
    dim_g1: usize,
    dim_g2: usize,
    special: bool,
    condition: String,
}

fn diagrams(cartan: &str, label: Option<&str>, json: bool, out: &mut String) -> CliResult<u8> {
    let rs = root_system(cartan)?;
    let list = match label {
        Some(l) => vec![wdd::find_diagram(&rs, l)?],
        None => wdd::enumerate_diagrams(&rs)?,
    };
    let rows: Vec<DiagramRow> = list
        .iter()
        .map(|d| {
            let g = GradedPieces::new(&rs, d);
            DiagramRow {
                label: d.label.clone(),
                weights: d.weight_string(),
                b: wdd::b_invariant(&rs, d),
                dim_g0: g.dim(0),
                dim_g1: g.dim(1),
                dim_g2: g.dim(2),
                special: d.special,
                condition: d.condition.to_string(),
            }
        })
        .collect();
    if json {
        let doc = serde_json::json!({ "type": rs.cartan_type().to_string(), "diagrams": rows });
        out.push_str(&serde_json::to_string_pretty(&doc)?);
        out.push('\n');
        return Ok(0);
    }
    let lw = rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
    let ww = rs.rank().max(7);
    let _ = writeln!(
        out,
        "{:<lw$}  {:<ww$}  {:>4}  {:>5}  {:>5}  {:>5}  {:<7}  condition",
        "label", "weights", "b", "g(0)", "g(1)", "g(2)", "special"
    );
    for r in &rows {
        let _ = writeln!(
            out,
            "{:<lw$}  {:<ww$}  {:>4}  {:>5}  {:>5}  {:>5}  {:<7}  {}",
            r.label,
            r.weights,
            r.b,
            r.dim_g0,
            r.dim_g1,
            r.dim_g2,
            if r.special { "yes" } else { "no" },
            r.condition
        );
    }
    Ok(0)
}

#[derive(Serialize)]
struct Piece {
    weight: i32,
    dim: usize,
    roots: Vec<String>,
}

fn grading(cartan: &str, label: &str, json: bool, out: &mut String) -> CliResult<u8> {
    let rs = root_system(cartan)?;
    let d = wdd::find_diagram(&rs, label)?;
    let g = GradedPieces::new(&rs, &d);
    let pieces: Vec<Piece> = g
        .weights()
        .map(|w| Piece {
            weight: w,
            dim: g.dim(w),
            roots: g.phi(w).iter().map(|&r| rs.root(r).digits()).collect(),
        })
        .collect();
    if json {
        let doc = serde_json::json!({
            "type": rs.cartan_type().to_string(),
            "label": d.label,
            "weights": d.weight_string(),
            "pieces": pieces,
        });
        out.push_str(&serde_json::to_string_pretty(&doc)?);
        out.push('\n');
        return Ok(0);
    }
    let _ = writeln!(out, "{} {}", d.label, d.weight_string());
    for p in &pieces {
        let _ = writeln!(out, "g({}) dim {}: {}", p.weight, p.dim, p.roots.join(" "));
    }
    Ok(0)
}

fn pfaffian_cmd(
    cartan: &str,
    label: &str,
    modulus: Option<u64>,
    stats: bool,
    budget: &Budget,
    out: &mut String,
) -> CliResult<u8> {
    let rs = root_system(cartan)?;
    let (_, g) = gram_for(&rs, label)?;
    let mut m = g.to_skew();
    if let Some(p) = modulus {
        m = m.reduce_mod(p)?;
    }
    let opts = PfaffianOptions {
        max_steps: budget.max_pfaffian_steps,
        memo_cap_terms: budget.memo_cap_terms,
    };
    let (pf, st) = pfaffian_with(&m, opts)?;
    let degree = pf
        .total_degree()
        .map_or_else(|| "-".to_string(), |d| d.to_string());
    let content = if modulus.is_none() {
        pf.content()?.to_string()
    } else {
        "-".to_string()
    };
    if !stats {
        let _ = writeln!(out, "{pf}");
    }
    let _ = writeln!(out, "n = {}", g.n());
    let _ = writeln!(out, "monomials = {}", pf.monomial_count());
    let _ = writeln!(out, "content = {content}");
    let _ = writeln!(out, "degree = {degree}");
    if stats {
        for l in 0..g.m() {
            let _ = writeln!(out, "x{} = {}", l + 1, g.var_labels()[l]);
        }
        let _ = writeln!(out, "steps = {}", st.steps);
        let _ = writeln!(out, "memo_entries = {}", st.memo_entries);
    }
    Ok(0)
}

fn emit_reports(reports: &[ConjectureReport], json: bool, out: &mut String) -> CliResult<u8> {
    if json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])?
        } else {
            serde_json::to_string_pretty(reports)?
        };
        out.push_str(&text);
        out.push('\n');
    } else {
        for r in reports {
            render_report(r, out);
        }
    }
    let disagree = reports.iter().any(|r| !r.disagreements().is_empty());
    Ok(if disagree { EXIT_DISAGREE } else { 0 })
}

fn render_report(r: &ConjectureReport, out: &mut String) {
    match r.prime {
        Some(p) => {
            let _ = writeln!(out, "{} {} p={}", r.cartan_type, r.conjecture, p);
        }
        None => {
            let _ = writeln!(out, "{} {}", r.cartan_type, r.conjecture);
        }
    }
    let lw = r.rows.iter().map(|x| x.label.len()).max().unwrap_or(5).max(5);
    let ww = r.rows.iter().map(|x| x.weights.len()).max().unwrap_or(7).max(7);
    let _ = writeln!(
        out,
        "{:<lw$}  {:<ww$}  {:>4}  {:>4}  {:<10}  {:<8}  {:<6}  detail",
        "label", "weights", "g(1)", "g(2)", "verdict", "expected", "agrees"
    );
    for row in &r.rows {
        let detail = row
            .witness
            .as_deref()
            .or(row.certificate.as_deref())
            .unwrap_or("");
        let _ = writeln!(
            out,
            "{:<lw$}  {:<ww$}  {:>4}  {:>4}  {:<10}  {:<8}  {:<6}  {}",
            row.label,
            row.weights,
            row.dim_g1,
            row.dim_g2,
            row.verdict,
            if row.expected { "yes" } else { "no" },
            if row.agrees { "yes" } else { "no" },
            detail
        );
    }
    let _ = writeln!(
        out,
        "disagreements: {}  unknown: {}  not admissible: {}",
        r.disagreements().len(),
        r.unknowns().len(),
        r.failures().join(", ")
    );
    let _ = writeln!(out);
}
