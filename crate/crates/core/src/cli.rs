//! Command-line front end.
//!
//! Exit codes: 0 success (direct / pass / closed / match), 1 a semantic
//! negative (collapse witness, violated condition, mismatch), 2 bad input,
//! 3 resource cap exceeded.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::fischer::{
    decomposition_is_unique, directness_report, fischer_decompose, reassemble, DirectnessReport,
    FischerComponent,
};
use crate::harmonics::{harmonic_basis, isotypic_dimension_check, isotypic_scan, simplicial_basis};
use crate::ratpoly::{Ambient, MultiDegree, Polynomial};
use crate::repcomb::Partition;
use crate::verma::{check_partition, collapse_detect, semistable, CollapseReport, ConditionReport};
use crate::weyl::{gl_spanning_set, lie_closure, parse_operator, sp_spanning_set, span_membership};
use crate::{fmt_rational, Cap, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable holding the default resource cap.
pub const CAP_ENV: &str = "SEPVAR_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "sepvar",
    version,
    about = "Exact harmonic Fischer decomposition in several vector variables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Number of vector variables.
    #[arg(long)]
    pub k: usize,
    /// Dimension of each vector variable.
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Largest monomial-space dimension a single step may use.
    #[arg(long, env = CAP_ENV, default_value_t = Cap::DEFAULT.0)]
    pub cap: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Inline polynomial.
    #[arg(short = 'e', long = "expr")]
    pub expr: Option<String>,
    /// Read the polynomial from a file (`-` for standard input).
    #[arg(short = 'f', long = "file")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a polynomial as a sum of r^{2n} times harmonics.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
    },
    /// Check whether sum_n r^{2n} H is direct up to a total degree.
    Directness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: u32,
    },
    /// Irreducibility conditions for the generalized Verma module of a partition.
    Verma {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        partition: String,
        /// Also compare graded dimensions against the realized module.
        #[arg(long)]
        detect: bool,
        /// Depth for --detect.
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Verify closure of the invariant operators under commutators.
    Relations {
        #[command(flatten)]
        common: Common,
        /// Operator expression to normal-order, e.g. "[D11,R11]".
        #[arg(short = 'e', long = "expr")]
        expr: Option<String>,
    },
    /// Basis of the spherical harmonics of one multidegree.
    Harmonics {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        multidegree: String,
    },
    /// Basis of the simplicial harmonics of a partition.
    Simplicial {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        partition: String,
    },
    /// Compare dim H_d with sum_a dim H^S_a * K(a, d).
    Isotypic {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "multidegree")]
        degree: Option<u32>,
        #[arg(long)]
        multidegree: Option<String>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Decompose { common, .. }
            | Command::Directness { common, .. }
            | Command::Verma { common, .. }
            | Command::Relations { common, .. }
            | Command::Harmonics { common, .. }
            | Command::Simplicial { common, .. }
            | Command::Isotypic { common, .. } => common,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => Failure::Resource(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let common = cli.command.common().clone();
    let result = (|| -> CmdResult {
        let amb = Ambient::new(common.k, common.m)?;
        if common.cap == 0 {
            return Err(Failure::Input("--cap must be positive".into()));
        }
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = common.jobs {
            if j == 0 {
                return Err(Failure::Input("--jobs must be positive".into()));
            }
            builder = builder.num_threads(j);
        }
        let pool = builder
            .build()
            .map_err(|e| Failure::Input(format!("thread pool: {e}")))?;
        // output is buffered so the work can run inside the pool
        let (mut obuf, mut ebuf) = (Vec::new(), Vec::new());
        let code = pool.install(|| dispatch(&cli.command, amb, &common, &mut obuf, &mut ebuf));
        out.write_all(&obuf).map_err(io)?;
        err.write_all(&ebuf).map_err(io)?;
        code
    })();
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Resource(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_RESOURCE
        }
    }
}

fn dispatch(
    command: &Command,
    amb: Ambient,
    common: &Common,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let cap = Cap(common.cap);
    let fmt = common.format;
    match command {
        Command::Decompose { input, .. } => cmd_decompose(amb, cap, fmt, input, out, err),
        Command::Directness { degree, .. } => cmd_directness(amb, cap, fmt, *degree, out),
        Command::Verma {
            partition,
            detect,
            depth,
            ..
        } => cmd_verma(amb, cap, fmt, partition, *detect, *depth, out),
        Command::Relations { expr, .. } => cmd_relations(amb, fmt, expr.as_deref(), out),
        Command::Harmonics { multidegree, .. } => cmd_harmonics(amb, cap, fmt, multidegree, out),
        Command::Simplicial { partition, .. } => cmd_simplicial(amb, cap, fmt, partition, out),
        Command::Isotypic {
            degree,
            multidegree,
            ..
        } => cmd_isotypic(amb, cap, fmt, *degree, multidegree.as_deref(), out),
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Input(format!("i/o: {e}"))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable output");
    writeln!(out, "{text}").map_err(io)
}

fn read_input(input: &Input) -> std::result::Result<String, Failure> {
    match (&input.expr, &input.file) {
        (Some(_), Some(_)) => Err(Failure::Input(
            "give either --expr or --file, not both".into(),
        )),
        (Some(e), None) => Ok(e.clone()),
        (None, Some(path)) if path.as_os_str() == "-" => read_stdin(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        (None, None) => read_stdin(),
    }
}

fn read_stdin() -> std::result::Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(io)?;
    Ok(s)
}

fn parse_partition(text: &str, k: usize) -> std::result::Result<Partition, Failure> {
    let a = Partition::parse(text)?;
    if a.len() > k {
        return Err(Failure::Input(format!(
            "partition {a} has more than k = {k} parts"
        )));
    }
    Ok(a)
}

fn cmd_decompose(
    amb: Ambient,
    cap: Cap,
    fmt: Format,
    input: &Input,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let text = read_input(input)?;
    let p = Polynomial::parse(text.trim(), amb.k, amb.m)?;
    let components = fischer_decompose(&p, cap)?;
    let residual = &p - &reassemble(amb, &components);
    if !residual.is_zero() {
        // cannot happen unless the decomposition code is broken
        return Err(Failure::Input(format!(
            "self-check failed, residual {residual}"
        )));
    }
    // directness always holds in the semistable range
    if !semistable(amb.m, amb.k) && !decomposition_is_unique(&p, cap)? {
        writeln!(
            err,
            "warning: non-unique: the sum is not direct at a multidegree of the input (m = {} < 2k - 1 = {})",
            amb.m,
            2 * amb.k - 1
        )
        .map_err(io)?;
    }
    match fmt {
        Format::Json => emit_json(out, &components)?,
        Format::Csv => {
            writeln!(out, "n,harmonic").map_err(io)?;
            for c in &components {
                writeln!(out, "\"{}\",\"{}\"", n_list(c), c.harmonic).map_err(io)?;
            }
        }
        Format::Table => {
            if components.is_empty() {
                writeln!(out, "0").map_err(io)?;
            }
            for c in &components {
                writeln!(out, "{:<16} {}", c.n.to_string(), c.harmonic).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn n_list(c: &FischerComponent) -> String {
    c.n.nonzero()
        .iter()
        .map(|(i, j, n)| format!("{i}:{j}:{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_directness(
    amb: Ambient,
    cap: Cap,
    fmt: Format,
    degree: u32,
    out: &mut dyn Write,
) -> CmdResult {
    let report = directness_report(amb, degree, cap)?;
    write_directness(&report, fmt, out)?;
    Ok(if report.is_direct() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn write_directness(
    report: &DirectnessReport,
    fmt: Format,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    match fmt {
        Format::Json => emit_json(out, report),
        Format::Csv => {
            writeln!(out, "multidegree,assembled_dim,ambient_dim,rank,witnesses").map_err(io)?;
            for r in &report.records {
                let md: Vec<String> = r.multidegree.0.iter().map(u32::to_string).collect();
                writeln!(
                    out,
                    "\"{}\",{},{},{},{}",
                    md.join(","),
                    r.assembled_dim,
                    r.ambient_dim,
                    r.rank,
                    r.witnesses.len()
                )
                .map_err(io)?;
            }
            Ok(())
        }
        Format::Table => {
            writeln!(
                out,
                "k = {}, m = {}, degree <= {}",
                report.k, report.m, report.degree
            )
            .map_err(io)?;
            writeln!(
                out,
                "{:<12} {:>9} {:>8} {:>6} {:>9}",
                "multidegree", "assembled", "ambient", "rank", "witnesses"
            )
            .map_err(io)?;
            for r in &report.records {
                writeln!(
                    out,
                    "{:<12} {:>9} {:>8} {:>6} {:>9}",
                    r.multidegree.to_string(),
                    r.assembled_dim,
                    r.ambient_dim,
                    r.rank,
                    r.witnesses.len()
                )
                .map_err(io)?;
                for w in &r.witnesses {
                    let terms: Vec<String> = r
                        .family
                        .iter()
                        .zip(w)
                        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                        .map(|(f, c)| {
                            format!(
                                "({})*{}*h{}[{}]",
                                fmt_rational(c),
                                f.n,
                                f.harmonic_degree,
                                f.basis_index
                            )
                        })
                        .collect();
                    writeln!(out, "    witness: {} = 0", terms.join(" + ")).map_err(io)?;
                }
            }
            writeln!(
                out,
                "{}",
                if report.is_direct() {
                    "direct"
                } else {
                    "not direct"
                }
            )
            .map_err(io)?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VermaOutput {
    partition: Partition,
    k: usize,
    m: usize,
    semistable: bool,
    conditions: ConditionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    collapse: Option<CollapseReport>,
}

fn cmd_verma(
    amb: Ambient,
    cap: Cap,
    fmt: Format,
    partition: &str,
    detect: bool,
    depth: u32,
    out: &mut dyn Write,
) -> CmdResult {
    let a = parse_partition(partition, amb.k)?;
    let conditions = check_partition(&a, amb.m, amb.k)?;
    let collapse = if detect {
        Some(collapse_detect(&a, amb, depth, cap)?)
    } else {
        None
    };
    let pass = conditions.irreducible_sufficient;
    let res = VermaOutput {
        partition: a,
        k: amb.k,
        m: amb.m,
        semistable: semistable(amb.m, amb.k),
        conditions,
        collapse,
    };
    match fmt {
        Format::Json => emit_json(out, &res)?,
        Format::Csv => {
            writeln!(out, "condition,index,value,violated").map_err(io)?;
            for c in &res.conditions.pair_conditions {
                writeln!(
                    out,
                    "1,\"{},{}\",{},{}",
                    c.i,
                    c.j,
                    fmt_rational(&c.value),
                    c.violated
                )
                .map_err(io)?;
            }
            for c in &res.conditions.index_conditions {
                writeln!(
                    out,
                    "2,\"{}\",{},{}",
                    c.i,
                    fmt_rational(&c.value),
                    c.violated
                )
                .map_err(io)?;
            }
            if let Some(col) = &res.collapse {
                writeln!(out, "g,free_dim,realized_dim,collapsed").map_err(io)?;
                for l in &col.levels {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        l.g, l.free_dim, l.realized_dim, l.collapsed
                    )
                    .map_err(io)?;
                }
            }
        }
        Format::Table => {
            writeln!(
                out,
                "partition {} (k = {}, m = {}), weight {}",
                res.partition, res.k, res.m, res.conditions.weight
            )
            .map_err(io)?;
            for c in &res.conditions.pair_conditions {
                writeln!(
                    out,
                    "  (1) i={} j={}: {:>6}  {}",
                    c.i,
                    c.j,
                    fmt_rational(&c.value),
                    if c.violated { "VIOLATED" } else { "ok" }
                )
                .map_err(io)?;
            }
            for c in &res.conditions.index_conditions {
                writeln!(
                    out,
                    "  (2) i={}:     {:>6}  {}",
                    c.i,
                    fmt_rational(&c.value),
                    if c.violated { "VIOLATED" } else { "ok" }
                )
                .map_err(io)?;
            }
            writeln!(out, "{}", if pass { "pass" } else { "violation" }).map_err(io)?;
            if let Some(col) = &res.collapse {
                if col.is_empty() {
                    writeln!(out, "no simplicial harmonics of this shape").map_err(io)?;
                }
                for l in &col.levels {
                    writeln!(
                        out,
                        "  g={}: free {} realized {}{}",
                        l.g,
                        l.free_dim,
                        l.realized_dim,
                        if l.collapsed { "  COLLAPSE" } else { "" }
                    )
                    .map_err(io)?;
                }
            }
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(Serialize)]
struct ExprOutput {
    normal_form: String,
    order: u32,
    /// Coordinates in the spanning set, when in its span.
    coordinates: Option<Vec<(String, String)>>,
}

fn cmd_relations(amb: Ambient, fmt: Format, expr: Option<&str>, out: &mut dyn Write) -> CmdResult {
    if let Some(text) = expr {
        let w = parse_operator(text, amb)?;
        let set = sp_spanning_set(amb);
        let basis: Vec<_> = set.iter().map(|n| n.op.clone()).collect();
        let coords = span_membership(&w, &basis)?.map(|c| {
            set.iter()
                .zip(c)
                .filter(|(_, c)| !num_traits::Zero::is_zero(c))
                .map(|(n, c)| (n.name.clone(), fmt_rational(&c)))
                .collect::<Vec<_>>()
        });
        let res = ExprOutput {
            normal_form: w.to_string(),
            order: w.order(),
            coordinates: coords,
        };
        match fmt {
            Format::Json => emit_json(out, &res)?,
            Format::Csv => {
                writeln!(out, "normal_form,in_span").map_err(io)?;
                writeln!(out, "\"{}\",{}", res.normal_form, res.coordinates.is_some())
                    .map_err(io)?;
            }
            Format::Table => {
                writeln!(out, "{}", res.normal_form).map_err(io)?;
                match &res.coordinates {
                    Some(c) if c.is_empty() => writeln!(out, "= 0").map_err(io)?,
                    Some(c) => {
                        let terms: Vec<String> =
                            c.iter().map(|(n, v)| format!("{v}*{n}")).collect();
                        writeln!(out, "= {}", terms.join(" + ")).map_err(io)?;
                    }
                    None => writeln!(out, "not in span").map_err(io)?,
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let report = lie_closure(amb);
    match fmt {
        Format::Json => emit_json(out, &report)?,
        Format::Csv => {
            writeln!(
                out,
                "k,m,span_dim,expected_span_dim,gl_dim,expected_gl_dim,pairs_checked,failures"
            )
            .map_err(io)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                report.k,
                report.m,
                report.span_dim,
                report.expected_span_dim,
                report.gl_dim,
                report.expected_gl_dim,
                report.pairs_checked,
                report.failures.len() + report.gl_failures.len()
            )
            .map_err(io)?;
        }
        Format::Table => {
            let names: Vec<String> = sp_spanning_set(amb).into_iter().map(|n| n.name).collect();
            writeln!(out, "spanning set: {}", names.join(" ")).map_err(io)?;
            writeln!(
                out,
                "span dim {} (expected {})",
                report.span_dim, report.expected_span_dim
            )
            .map_err(io)?;
            writeln!(
                out,
                "gl dim {} (expected {}), from {}",
                report.gl_dim,
                report.expected_gl_dim,
                gl_spanning_set(amb).len()
            )
            .map_err(io)?;
            writeln!(out, "{} commutators checked", report.pairs_checked).map_err(io)?;
            for (a, b) in report.failures.iter().chain(&report.gl_failures) {
                writeln!(out, "  [{a},{b}] leaves the span").map_err(io)?;
            }
            writeln!(
                out,
                "{}",
                if report.closed() {
                    "closed"
                } else {
                    "not closed"
                }
            )
            .map_err(io)?;
        }
    }
    Ok(if report.closed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn write_basis(
    out: &mut dyn Write,
    fmt: Format,
    label: &str,
    basis: &[Polynomial],
) -> std::result::Result<(), Failure> {
    match fmt {
        Format::Json => emit_json(out, &basis),
        Format::Csv => {
            writeln!(out, "index,polynomial").map_err(io)?;
            for (i, b) in basis.iter().enumerate() {
                writeln!(out, "{i},\"{b}\"").map_err(io)?;
            }
            Ok(())
        }
        Format::Table => {
            writeln!(out, "{label}: dimension {}", basis.len()).map_err(io)?;
            for b in basis {
                writeln!(out, "  {b}").map_err(io)?;
            }
            Ok(())
        }
    }
}

fn cmd_harmonics(
    amb: Ambient,
    cap: Cap,
    fmt: Format,
    multidegree: &str,
    out: &mut dyn Write,
) -> CmdResult {
    let d = MultiDegree::parse(multidegree)?;
    let basis = harmonic_basis(amb, &d, cap)?;
    write_basis(
        out,
        fmt,
        &format!("harmonics of multidegree {d}"),
        &basis.basis,
    )?;
    Ok(EXIT_OK)
}

fn cmd_simplicial(
    amb: Ambient,
    cap: Cap,
    fmt: Format,
    partition: &str,
    out: &mut dyn Write,
) -> CmdResult {
    let a = parse_partition(partition, amb.k)?;
    let basis = simplicial_basis(amb, &a, cap)?;
    write_basis(
        out,
        fmt,
        &format!("simplicial harmonics of shape {a}"),
        &basis.basis,
    )?;
    Ok(EXIT_OK)
}

fn cmd_isotypic(
    amb: Ambient,
    cap: Cap,
    fmt: Format,
    degree: Option<u32>,
    multidegree: Option<&str>,
    out: &mut dyn Write,
) -> CmdResult {
    let checks = match (degree, multidegree) {
        (_, Some(md)) => vec![isotypic_dimension_check(
            amb,
            &MultiDegree::parse(md)?,
            cap,
        )?],
        (Some(d), None) => isotypic_scan(amb, d, cap)?,
        (None, None) => return Err(Failure::Input("give --degree or --multidegree".into())),
    };
    let all = checks.iter().all(|c| c.matches);
    match fmt {
        Format::Json => emit_json(out, &checks)?,
        Format::Csv => {
            writeln!(out, "multidegree,lhs,rhs,match").map_err(io)?;
            for c in &checks {
                let md: Vec<String> = c.multidegree.0.iter().map(u32::to_string).collect();
                writeln!(
                    out,
                    "\"{}\",{},{},{}",
                    md.join(","),
                    c.lhs,
                    c.rhs,
                    c.matches
                )
                .map_err(io)?;
            }
        }
        Format::Table => {
            writeln!(
                out,
                "{:<12} {:>6} {:>6}  match",
                "multidegree", "lhs", "rhs"
            )
            .map_err(io)?;
            for c in &checks {
                writeln!(
                    out,
                    "{:<12} {:>6} {:>6}  {}",
                    c.multidegree.to_string(),
                    c.lhs,
                    c.rhs,
                    c.matches
                )
                .map_err(io)?;
            }
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
}
