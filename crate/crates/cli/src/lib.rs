//! Command-line front end. Every command is a thin wrapper over the
//! library: parse arguments, load tables, call one validator or
//! constructor, print its verdict.
//!
//! Exit codes: `0` success, `1` verification failure (a single
//! `FAIL <axiom> witness=(i,j[,k])` line on standard output), `2`
//! usage or I/O error. All output is deterministic.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cliffbraid::brace::DualWeakLeftBrace;
use cliffbraid::io::{
    BraceWire, BraidedWire, MapWire, PostWire, RelativeWire, SemigroupWire, WireError, YbeWire,
};
use cliffbraid::post::{check_post, PostTable};
use cliffbraid::relative::{
    check_relative, check_relative_tables, graph_characterization, ideal_and_quotient,
    lambda_semidirect, RelativeFailure, RelativeRbSystem,
};
use cliffbraid::rota_baxter::{
    check_rb, conjugation, enumerate_rb, exact_factorization, n_multiple, phi_twist, tilde,
    translation, uvt, weight_flip_neg, weight_phi, weight_psi, ConstructError, EnumBudget,
    EnumError, RbFailure, RbOperator, Weight,
};
use cliffbraid::{braided, catalog, post, relative};
use cliffbraid::{CliffordTable, ElementMap, FiniteSemigroup, Witness};
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Rewrites the hyphenated command aliases onto the canonical verbs.
pub fn normalize_argv(argv: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(argv.len() + 3);
    out.extend(argv.iter().take(1).cloned());
    let mut rest = argv.iter().skip(1);
    if let Some(first) = rest.next() {
        let expansion: &[&str] = match first.as_str() {
            "check-rb" => &["check", "--kind", "rb"],
            "enumerate-rb" => &["enumerate", "--kind", "rb"],
            "construct-rb" => &["construct", "--kind", "rb"],
            "check-brace" => &["check", "--kind", "brace"],
            "check-post" => &["check", "--kind", "post"],
            "check-relative" => &["check", "--kind", "relative"],
            "check-braided" => &["check", "--kind", "braided"],
            "graph-test" => &["check", "--kind", "graph"],
            "post-to-brace" => &["convert", "--from", "post", "--to", "brace"],
            "brace-to-post" => &["convert", "--from", "brace", "--to", "post"],
            "post-to-braided" => &["convert", "--from", "post", "--to", "braided"],
            "braided-to-post" => &["convert", "--from", "braided", "--to", "post"],
            "semidirect" => &["construct", "--kind", "semidirect"],
            "quotient-relative" => &["quotient", "--kind", "relative"],
            other => {
                out.push(other.to_string());
                &[]
            }
        };
        out.extend(expansion.iter().map(|s| s.to_string()));
    }
    out.extend(rest.cloned());
    out
}

/// Runs one command; returns the process exit code and writes all
/// output to `out`.
pub fn run(argv: &[String], out: &mut dyn Write) -> i32 {
    let argv = normalize_argv(argv);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = write!(out, "{}", err.render());
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(out, "error: {err}");
            2
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cliffbraid",
    version,
    about = "Validate, enumerate, construct, and convert finite Clifford-semigroup structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure; prints `OK …` or a single FAIL line.
    Check(CheckArgs),
    /// List all operators of a kind on a carrier, in sorted order.
    Enumerate(EnumerateArgs),
    /// Build an operator or product from a named construction.
    Construct(ConstructArgs),
    /// Convert a validated structure into another presentation.
    Convert(ConvertArgs),
    /// Run a conversion round trip that must return the input.
    Roundtrip(RoundtripArgs),
    /// Emit the Yang-Baxter solution induced by a structure.
    Ybe(YbeArgs),
    /// Quotient a structure by an ideal.
    Quotient(QuotientArgs),
    /// List the built-in carriers and action fixtures.
    Catalog(CatalogArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Rb,
    Brace,
    Post,
    Relative,
    Braided,
    Graph,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    kind: CheckKind,
    /// Operator weight for --kind rb: 1 or -1.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    weight: String,
    /// Catalog key providing the carrier table.
    #[arg(long)]
    semigroup: Option<String>,
    /// JSON document; its schema depends on --kind.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline map values `i0,i1,...` (operator map, flattened table, or
    /// action operator, depending on --kind).
    #[arg(long)]
    map: Option<String>,
    /// Action fixture key for --kind relative/graph.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EnumerateKind {
    Rb,
    Post,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: EnumerateKind,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    weight: String,
    #[arg(long)]
    semigroup: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Keep only operators fixing every idempotent.
    #[arg(long)]
    strong: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    Rb,
    Semidirect,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Tilde,
    NMultiple,
    Conjugation,
    Translation,
    WeightFlipNeg,
    WeightPhi,
    WeightPsi,
    PhiTwist,
    ExactFactorization,
    Uvt,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: ConstructKind,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    weight: String,
    #[arg(long)]
    semigroup: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Base operator map for the operator-transforming methods.
    #[arg(long)]
    map: Option<String>,
    /// Automorphism values for --method phi-twist.
    #[arg(long)]
    phi: Option<String>,
    /// Multiplier for --method n-multiple.
    #[arg(long)]
    n: Option<u32>,
    /// First element parameter (translation).
    #[arg(long)]
    element_a: Option<usize>,
    /// Second element parameter (conjugation, translation).
    #[arg(long)]
    element_b: Option<usize>,
    /// Member list of the U part (factorization methods).
    #[arg(long)]
    part_u: Option<String>,
    /// Member list of the V part (factorization methods).
    #[arg(long)]
    part_v: Option<String>,
    /// Member list of the T part (--method uvt).
    #[arg(long)]
    part_t: Option<String>,
    /// Inner operator on the sorted V part, for --method uvt.
    #[arg(long)]
    map_t: Option<String>,
    /// Action fixture key for --kind semidirect.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum StructureKind {
    Post,
    Brace,
    Relative,
    Braided,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: StructureKind,
    #[arg(long, value_enum)]
    to: StructureKind,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RoundtripPair {
    PostBrace,
    BracePost,
    PostBraided,
    BraidedPost,
    PostRelative,
}

#[derive(Args)]
struct RoundtripArgs {
    #[arg(long, value_enum)]
    pair: RoundtripPair,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct YbeArgs {
    #[arg(long, value_enum)]
    from: StructureKind,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum QuotientKind {
    Relative,
    Brace,
}

#[derive(Args)]
struct QuotientArgs {
    #[arg(long, value_enum)]
    kind: QuotientKind,
    #[arg(long)]
    input: PathBuf,
    /// Ideal members on the brace side.
    #[arg(long)]
    ideal: Option<String>,
    /// Ideal members inside T, for --kind relative.
    #[arg(long)]
    ideal_t: Option<String>,
    /// Ideal members inside S, for --kind relative.
    #[arg(long)]
    ideal_s: Option<String>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Usage or I/O problem; always exit code 2.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Wire(WireError),
    Budget(EnumError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(path, err) => write!(f, "{}: {err}", path.display()),
            CliError::Json(path, err) => write!(f, "{}: {err}", path.display()),
            CliError::Wire(err) => write!(f, "{err}"),
            CliError::Budget(err) => write!(f, "{err}"),
        }
    }
}

impl From<WireError> for CliError {
    fn from(err: WireError) -> Self {
        CliError::Wire(err)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_path_buf(), e))
}

fn parse_csv(flag: &str, text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("{flag}: expected comma-separated indices, got {part:?}")))
        })
        .collect()
}

fn parse_weight(text: &str) -> Result<Weight, CliError> {
    match text {
        "1" | "+1" => Ok(Weight::Plus),
        "-1" => Ok(Weight::Minus),
        other => Err(usage(format!("--weight must be 1 or -1, got {other:?}"))),
    }
}

fn weight_label(weight: Weight) -> &'static str {
    match weight {
        Weight::Plus => "1",
        Weight::Minus => "-1",
    }
}

/// The carrier table named by `--semigroup` or loaded from `--input`.
fn resolve_semigroup(
    semigroup: Option<&str>,
    input: Option<&Path>,
) -> Result<FiniteSemigroup, CliError> {
    match (semigroup, input) {
        (Some(key), None) => catalog::find(key)
            .map(|entry| entry.semigroup)
            .ok_or_else(|| usage(format!("unknown catalog key {key:?}"))),
        (None, Some(path)) => Ok(load_json::<SemigroupWire>(path)?.to_semigroup()?),
        (Some(_), Some(_)) => Err(usage("pass either --semigroup or --input, not both")),
        (None, None) => Err(usage("a carrier is required: --semigroup KEY or --input FILE")),
    }
}

fn fail(out: &mut dyn Write, code: &str, witness: Witness) -> i32 {
    let _ = writeln!(out, "FAIL {code} witness={witness}");
    1
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) {
    let _ = writeln!(out, "{}", serde_json::to_string(value).expect("wire types serialize"));
}

fn csv(values: &[usize]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check(args) => cmd_check(args, out),
        Command::Enumerate(args) => cmd_enumerate(args, out),
        Command::Construct(args) => cmd_construct(args, out),
        Command::Convert(args) => cmd_convert(args, out),
        Command::Roundtrip(args) => cmd_roundtrip(args, out),
        Command::Ybe(args) => cmd_ybe(args, out),
        Command::Quotient(args) => cmd_quotient(args, out),
        Command::Catalog(args) => cmd_catalog(args, out),
    }
}

/// Carrier that must be Clifford; a failed ladder is a verification
/// failure, reported through the returned exit code.
fn expect_clifford_or_fail(
    sg: &FiniteSemigroup,
    out: &mut dyn Write,
) -> Result<CliffordTable, i32> {
    sg.expect_clifford().map_err(|e| fail(out, e.code(), e.witness()))
}

fn required<'a, T>(value: &'a Option<T>, msg: &str) -> Result<&'a T, CliError> {
    value.as_ref().ok_or_else(|| usage(msg))
}

fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    match args.kind {
        CheckKind::Rb => {
            let weight = parse_weight(&args.weight)?;
            let sg = resolve_semigroup(args.semigroup.as_deref(), args.input.as_deref())?;
            let ct = match expect_clifford_or_fail(&sg, out) {
                Ok(ct) => ct,
                Err(code) => return Ok(code),
            };
            let raw = parse_csv("--map", required(&args.map, "--map is required for --kind rb")?)?;
            let map = match ElementMap::endo(ct.order(), raw) {
                Ok(map) => map,
                Err(e) => {
                    let f = RbFailure::Shape(e);
                    return Ok(fail(out, f.code(), f.witness()));
                }
            };
            match check_rb(&ct, &map, weight) {
                Ok(op) => {
                    let _ = writeln!(out, "OK strong={}", op.is_strong());
                    Ok(0)
                }
                Err(f) => Ok(fail(out, f.code(), f.witness())),
            }
        }
        CheckKind::Brace => {
            let path = required(&args.input, "--input is required for --kind brace")?;
            let (add, circ) = load_json::<BraceWire>(path)?.to_tables()?;
            match DualWeakLeftBrace::check(&add, &circ) {
                Ok(_) => {
                    let _ = writeln!(out, "OK");
                    Ok(0)
                }
                Err(f) => Ok(fail(out, &f.code(), f.witness())),
            }
        }
        CheckKind::Post => match load_post_input(args, out)? {
            Ok(p) => {
                let _ = writeln!(out, "OK strong={}", p.is_strong());
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        CheckKind::Relative => match load_relative_input(args, out)? {
            Ok(sys) => {
                let _ = writeln!(out, "OK strong={}", sys.is_strong());
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        CheckKind::Braided => {
            let path = required(&args.input, "--input is required for --kind braided")?;
            let (circ, left, right) = load_json::<BraidedWire>(path)?.to_parts()?;
            match braided::check_braided(&circ, &left, &right) {
                Ok(_) => {
                    let _ = writeln!(out, "OK");
                    Ok(0)
                }
                Err(f) => Ok(fail(out, &f.code(), f.witness())),
            }
        }
        CheckKind::Graph => {
            let fixture_key =
                required(&args.fixture, "--fixture is required for --kind graph")?;
            let fixture = catalog::find_action(fixture_key)
                .ok_or_else(|| usage(format!("unknown action fixture {fixture_key:?}")))?;
            let raw =
                parse_csv("--map", required(&args.map, "--map is required for --kind graph")?)?;
            let r = match ElementMap::new(
                fixture.action.t().order(),
                fixture.action.s().order(),
                raw,
            ) {
                Ok(map) => map,
                Err(e) => {
                    let f = RelativeFailure::Shape(e);
                    return Ok(fail(out, &f.code(), f.witness()));
                }
            };
            let report = graph_characterization(&fixture.action, &r);
            let _ = writeln!(out, "graph={} axioms={}", report.graph_ok, report.axioms_ok);
            Ok(if report.graph_ok && report.axioms_ok { 0 } else { 1 })
        }
    }
}

/// Loads a post table for `check`: either a document or an inline
/// flattened `▷` table over a named carrier. `Err(exit_code)` means a
/// FAIL line was already printed.
fn load_post_input(
    args: &CheckArgs,
    out: &mut dyn Write,
) -> Result<Result<PostTable, i32>, CliError> {
    let (add, rhd) = if let Some(path) = &args.input {
        if args.semigroup.is_some() {
            return Err(usage("pass either --semigroup or --input, not both"));
        }
        load_json::<PostWire>(path)?.to_parts()?
    } else {
        let sg = resolve_semigroup(args.semigroup.as_deref(), None)?;
        let raw = parse_csv(
            "--map",
            required(&args.map, "--map (flattened ▷ table) is required for --kind post")?,
        )?;
        (sg, raw)
    };
    match check_post(&add, &rhd) {
        Ok(p) => Ok(Ok(p)),
        Err(f) => Ok(Err(fail(out, &f.code(), f.witness()))),
    }
}

/// Loads a relative system for `check`: a document, or a fixture key
/// plus an inline operator map.
fn load_relative_input(
    args: &CheckArgs,
    out: &mut dyn Write,
) -> Result<Result<RelativeRbSystem, i32>, CliError> {
    if let Some(path) = &args.input {
        let (t, s, phi, r) = load_json::<RelativeWire>(path)?.to_parts()?;
        return match check_relative_tables(&t, &s, &phi, &r) {
            Ok(sys) => Ok(Ok(sys)),
            Err(f) => Ok(Err(fail(out, &f.code(), f.witness()))),
        };
    }
    let fixture_key =
        required(&args.fixture, "--fixture or --input is required for --kind relative")?;
    let fixture = catalog::find_action(fixture_key)
        .ok_or_else(|| usage(format!("unknown action fixture {fixture_key:?}")))?;
    let raw = parse_csv("--map", required(&args.map, "--map is required with --fixture")?)?;
    let r = match ElementMap::new(fixture.action.t().order(), fixture.action.s().order(), raw) {
        Ok(map) => map,
        Err(e) => {
            let f = RelativeFailure::Shape(e);
            return Ok(Err(fail(out, &f.code(), f.witness())));
        }
    };
    match check_relative(&fixture.action, &r) {
        Ok(sys) => Ok(Ok(sys)),
        Err(f) => Ok(Err(fail(out, &f.code(), f.witness()))),
    }
}

fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let sg = resolve_semigroup(args.semigroup.as_deref(), args.input.as_deref())?;
    let ct = match expect_clifford_or_fail(&sg, out) {
        Ok(ct) => ct,
        Err(code) => return Ok(code),
    };
    let budget = EnumBudget::from_env();
    let tables: Vec<Vec<usize>> = match args.kind {
        EnumerateKind::Rb => {
            let weight = parse_weight(&args.weight)?;
            enumerate_rb(&ct, weight, args.strong, &budget)
                .map_err(CliError::Budget)?
                .iter()
                .map(|op| op.map().as_slice().to_vec())
                .collect()
        }
        EnumerateKind::Post => cliffbraid::post::enumerate_post(&ct, args.strong, &budget)
            .map_err(CliError::Budget)?
            .iter()
            .map(|p| p.rhd_flat().to_vec())
            .collect(),
    };
    match args.format {
        Format::Text => {
            for table in &tables {
                let _ = writeln!(out, "{}", csv(table));
            }
        }
        Format::Json => emit_json(out, &tables),
    }
    Ok(0)
}

fn cmd_construct(args: &ConstructArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    match args.kind {
        ConstructKind::Rb => cmd_construct_rb(args, out),
        ConstructKind::Semidirect => {
            let fixture_key =
                required(&args.fixture, "--fixture is required for --kind semidirect")?;
            let fixture = catalog::find_action(fixture_key)
                .ok_or_else(|| usage(format!("unknown action fixture {fixture_key:?}")))?;
            let m = lambda_semidirect(&fixture.action);
            let wire = SemigroupWire::from_semigroup(
                m.semigroup(),
                Some(format!("semidirect({fixture_key})")),
            );
            if args.format == Format::Text {
                let _ = writeln!(out, "order={}", m.semigroup().order());
                let pairs: Vec<String> =
                    m.pairs().iter().map(|(x, a)| format!("({x},{a})")).collect();
                let _ = writeln!(out, "pairs={}", pairs.join(" "));
            }
            emit_json(out, &wire);
            Ok(0)
        }
    }
}

/// The base operator named by `--map`/`--weight`, validated.
fn base_operator(
    args: &ConstructArgs,
    ct: &CliffordTable,
    out: &mut dyn Write,
) -> Result<Result<RbOperator, i32>, CliError> {
    let weight = parse_weight(&args.weight)?;
    let raw = parse_csv("--map", required(&args.map, "--map is required for this method")?)?;
    let map = match ElementMap::endo(ct.order(), raw) {
        Ok(map) => map,
        Err(e) => {
            let f = RbFailure::Shape(e);
            return Ok(Err(fail(out, f.code(), f.witness())));
        }
    };
    match check_rb(ct, &map, weight) {
        Ok(op) => Ok(Ok(op)),
        Err(f) => Ok(Err(fail(out, f.code(), f.witness()))),
    }
}

fn cmd_construct_rb(args: &ConstructArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let method = *required(&args.method, "--method is required for --kind rb")?;
    let sg = resolve_semigroup(args.semigroup.as_deref(), args.input.as_deref())?;
    let ct = match expect_clifford_or_fail(&sg, out) {
        Ok(ct) => ct,
        Err(code) => return Ok(code),
    };
    let n = ct.order();
    let built: Result<RbOperator, ConstructError> = match method {
        Method::Tilde | Method::WeightFlipNeg | Method::WeightPhi | Method::WeightPsi
        | Method::PhiTwist => {
            let op = match base_operator(args, &ct, out)? {
                Ok(op) => op,
                Err(code) => return Ok(code),
            };
            match method {
                Method::Tilde => Ok(tilde(&op)),
                Method::WeightFlipNeg => weight_flip_neg(&op),
                Method::WeightPhi => weight_phi(&op),
                Method::WeightPsi => weight_psi(&op),
                Method::PhiTwist => {
                    let raw = parse_csv(
                        "--phi",
                        required(&args.phi, "--phi is required for --method phi-twist")?,
                    )?;
                    match ElementMap::endo(n, raw) {
                        Ok(phi) => phi_twist(&op, &phi),
                        Err(_) => Err(ConstructError::MapShape {
                            expected: n,
                            found: args.phi.as_deref().unwrap_or("").split(',').count(),
                        }),
                    }
                }
                _ => unreachable!(),
            }
        }
        Method::NMultiple => {
            let multiplier = required(&args.n, "--n is required for --method n-multiple")?;
            n_multiple(&ct, *multiplier)
        }
        Method::Conjugation => {
            let b = required(&args.element_b, "--element-b is required for conjugation")?;
            conjugation(&ct, *b)
        }
        Method::Translation => {
            let a = required(&args.element_a, "--element-a is required for translation")?;
            let b = required(&args.element_b, "--element-b is required for translation")?;
            translation(&ct, *a, *b)
        }
        Method::ExactFactorization => {
            let u = parse_csv("--part-u", required(&args.part_u, "--part-u is required")?)?;
            let v = parse_csv("--part-v", required(&args.part_v, "--part-v is required")?)?;
            exact_factorization(&ct, &u, &v)
        }
        Method::Uvt => {
            let u = parse_csv("--part-u", required(&args.part_u, "--part-u is required")?)?;
            let v = parse_csv("--part-v", required(&args.part_v, "--part-v is required")?)?;
            let t = parse_csv("--part-t", required(&args.part_t, "--part-t is required")?)?;
            let raw = parse_csv(
                "--map-t",
                required(&args.map_t, "--map-t (inner operator on V) is required for uvt")?,
            )?;
            let mut v_sorted = v.clone();
            v_sorted.sort_unstable();
            v_sorted.dedup();
            match ElementMap::endo(v_sorted.len(), raw) {
                Ok(l) => uvt(&ct, &u, &v, &t, &l),
                Err(_) => Err(ConstructError::MapShape {
                    expected: v_sorted.len(),
                    found: args.map_t.as_deref().unwrap_or("").split(',').count(),
                }),
            }
        }
    };
    match built {
        Ok(op) => {
            if args.format == Format::Text {
                let _ = writeln!(
                    out,
                    "OK weight={} strong={} map={}",
                    weight_label(op.weight()),
                    op.is_strong(),
                    csv(op.map().as_slice())
                );
            } else {
                emit_json(out, &MapWire::from_map(op.map()));
            }
            Ok(0)
        }
        Err(f) => Ok(fail(out, f.code(), f.witness())),
    }
}

/// Validated post table from a document; `Err(exit_code)` means a FAIL
/// line was printed.
fn load_post_file(path: &Path, out: &mut dyn Write) -> Result<Result<PostTable, i32>, CliError> {
    let (add, rhd) = load_json::<PostWire>(path)?.to_parts()?;
    match check_post(&add, &rhd) {
        Ok(p) => Ok(Ok(p)),
        Err(f) => Ok(Err(fail(out, &f.code(), f.witness()))),
    }
}

fn load_brace_file(
    path: &Path,
    out: &mut dyn Write,
) -> Result<Result<DualWeakLeftBrace, i32>, CliError> {
    let (add, circ) = load_json::<BraceWire>(path)?.to_tables()?;
    match DualWeakLeftBrace::check(&add, &circ) {
        Ok(b) => Ok(Ok(b)),
        Err(f) => Ok(Err(fail(out, &f.code(), f.witness()))),
    }
}

fn load_relative_file(
    path: &Path,
    out: &mut dyn Write,
) -> Result<Result<RelativeRbSystem, i32>, CliError> {
    let (t, s, phi, r) = load_json::<RelativeWire>(path)?.to_parts()?;
    match check_relative_tables(&t, &s, &phi, &r) {
        Ok(sys) => Ok(Ok(sys)),
        Err(f) => Ok(Err(fail(out, &f.code(), f.witness()))),
    }
}

fn load_braided_file(
    path: &Path,
    out: &mut dyn Write,
) -> Result<Result<braided::BraidedTable, i32>, CliError> {
    let (circ, left, right) = load_json::<BraidedWire>(path)?.to_parts()?;
    match braided::check_braided(&circ, &left, &right) {
        Ok(b) => Ok(Ok(b)),
        Err(f) => Ok(Err(fail(out, &f.code(), f.witness()))),
    }
}

fn cmd_convert(args: &ConvertArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    use StructureKind::*;
    let path = &args.input;
    match (args.from, args.to) {
        (Post, Brace) => match load_post_file(path, out)? {
            Ok(p) => {
                emit_json(out, &BraceWire::from_brace(&post::to_brace(&p)));
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        (Brace, Post) => match load_brace_file(path, out)? {
            Ok(b) => {
                emit_json(out, &PostWire::from_post(&post::from_brace(&b)));
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        (Post, Braided) => match load_post_file(path, out)? {
            Ok(p) => {
                emit_json(out, &BraidedWire::from_braided(&braided::from_post(&p)));
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        (Braided, Post) => match load_braided_file(path, out)? {
            Ok(b) => {
                emit_json(out, &PostWire::from_post(&braided::to_post(&b)));
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        (Post, Relative) => match load_post_file(path, out)? {
            Ok(p) => {
                emit_json(out, &RelativeWire::from_system(&relative::from_post(&p), None, None));
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        (Relative, Post) => match load_relative_file(path, out)? {
            Ok(sys) => {
                emit_json(out, &PostWire::from_post(&relative::to_post(&sys)));
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        (Relative, Brace) => match load_relative_file(path, out)? {
            Ok(sys) => {
                emit_json(out, &BraceWire::from_brace(&relative::descendent(&sys)));
                Ok(0)
            }
            Err(code) => Ok(code),
        },
        (from, to) => Err(usage(format!(
            "unsupported conversion {:?} -> {:?}",
            from.to_possible_value().expect("skip-none").get_name(),
            to.to_possible_value().expect("skip-none").get_name()
        ))),
    }
}

fn cmd_roundtrip(args: &RoundtripArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = &args.input;
    let verdict: Result<(), (String, Witness)> = match args.pair {
        RoundtripPair::PostBrace => match load_post_file(path, out)? {
            Ok(p) => post::post_brace_roundtrip(&p)
                .map_err(|e| (e.code().to_string(), e.witness())),
            Err(code) => return Ok(code),
        },
        RoundtripPair::BracePost => match load_brace_file(path, out)? {
            Ok(b) => {
                post::brace_post_roundtrip(&b);
                Ok(())
            }
            Err(code) => return Ok(code),
        },
        RoundtripPair::PostBraided => match load_post_file(path, out)? {
            Ok(p) => braided::post_braided_roundtrip(&p)
                .map_err(|e| (e.code().to_string(), e.witness())),
            Err(code) => return Ok(code),
        },
        RoundtripPair::BraidedPost => match load_braided_file(path, out)? {
            Ok(b) => {
                braided::braided_post_roundtrip(&b);
                Ok(())
            }
            Err(code) => return Ok(code),
        },
        RoundtripPair::PostRelative => match load_post_file(path, out)? {
            Ok(p) => {
                relative::post_system_roundtrip(&p);
                Ok(())
            }
            Err(code) => return Ok(code),
        },
    };
    match verdict {
        Ok(()) => {
            let _ = writeln!(out, "OK");
            Ok(0)
        }
        Err((code, witness)) => Ok(fail(out, &code, witness)),
    }
}

fn cmd_ybe(args: &YbeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = &args.input;
    let solution = match args.from {
        StructureKind::Post => match load_post_file(path, out)? {
            Ok(p) => post::ybe_from_post(&p),
            Err(code) => return Ok(code),
        },
        StructureKind::Brace => match load_brace_file(path, out)? {
            Ok(b) => cliffbraid::brace::ybe_from_brace(&b),
            Err(code) => return Ok(code),
        },
        StructureKind::Relative => match load_relative_file(path, out)? {
            Ok(sys) => relative::ybe_from_relative(&sys),
            Err(code) => return Ok(code),
        },
        StructureKind::Braided => match load_braided_file(path, out)? {
            Ok(b) => braided::sigma_as_ybe(&b),
            Err(code) => return Ok(code),
        },
    };
    emit_json(out, &YbeWire::from_ybe(&solution));
    Ok(0)
}

fn cmd_quotient(args: &QuotientArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    match args.kind {
        QuotientKind::Relative => {
            let m = parse_csv(
                "--ideal-t",
                required(&args.ideal_t, "--ideal-t is required for --kind relative")?,
            )?;
            let n = parse_csv(
                "--ideal-s",
                required(&args.ideal_s, "--ideal-s is required for --kind relative")?,
            )?;
            let sys = match load_relative_file(&args.input, out)? {
                Ok(sys) => sys,
                Err(code) => return Ok(code),
            };
            match ideal_and_quotient(&sys, &m, &n) {
                Ok(q) => {
                    emit_json(out, &RelativeWire::from_system(&q.system, None, None));
                    Ok(0)
                }
                Err(f) => Ok(fail(out, &f.code(), f.witness())),
            }
        }
        QuotientKind::Brace => {
            let members = parse_csv(
                "--ideal",
                required(&args.ideal, "--ideal is required for --kind brace")?,
            )?;
            let brace = match load_brace_file(&args.input, out)? {
                Ok(b) => b,
                Err(code) => return Ok(code),
            };
            match cliffbraid::brace::BraceIdeal::new(&brace, &members) {
                Ok(ideal) => {
                    let q = cliffbraid::brace::quotient_brace(&brace, &ideal);
                    emit_json(out, &BraceWire::from_brace(&q.brace));
                    Ok(0)
                }
                Err(f) => Ok(fail(out, &f.code(), f.witness())),
            }
        }
    }
}

fn cmd_catalog(args: &CatalogArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    match args.format {
        Format::Text => {
            let _ = writeln!(out, "carriers:");
            for entry in catalog::entries() {
                let marker = if entry.negative { " [negative]" } else { "" };
                let _ = writeln!(
                    out,
                    "  {} order={}{} {}",
                    entry.key,
                    entry.semigroup.order(),
                    marker,
                    entry.description
                );
            }
            let _ = writeln!(out, "action fixtures:");
            for fixture in catalog::action_fixtures() {
                let _ = writeln!(
                    out,
                    "  {} |T|={} |S|={}",
                    fixture.key,
                    fixture.action.t().order(),
                    fixture.action.s().order()
                );
            }
        }
        Format::Json => {
            #[derive(serde::Serialize)]
            struct EntryWire<'a> {
                key: &'a str,
                order: usize,
                negative: bool,
                description: &'a str,
            }
            #[derive(serde::Serialize)]
            struct FixtureWire<'a> {
                key: &'a str,
                t_order: usize,
                s_order: usize,
            }
            #[derive(serde::Serialize)]
            struct Listing<'a> {
                carriers: Vec<EntryWire<'a>>,
                fixtures: Vec<FixtureWire<'a>>,
            }
            let entries = catalog::entries();
            let fixtures = catalog::action_fixtures();
            let listing = Listing {
                carriers: entries
                    .iter()
                    .map(|e| EntryWire {
                        key: e.key,
                        order: e.semigroup.order(),
                        negative: e.negative,
                        description: e.description,
                    })
                    .collect(),
                fixtures: fixtures
                    .iter()
                    .map(|f| FixtureWire {
                        key: f.key,
                        t_order: f.action.t().order(),
                        s_order: f.action.s().order(),
                    })
                    .collect(),
            };
            emit_json(out, &listing);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let argv: Vec<String> =
            std::iter::once("cliffbraid").chain(args.iter().copied()).map(String::from).collect();
        let mut buf = Vec::new();
        let code = run(&argv, &mut buf);
        (code, String::from_utf8(buf).expect("utf8 output"))
    }

    #[test]
    fn alias_rewrite_targets_the_canonical_verbs() {
        let argv: Vec<String> =
            ["cliffbraid", "check-rb", "--semigroup", "z2"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            normalize_argv(&argv),
            ["cliffbraid", "check", "--kind", "rb", "--semigroup", "z2"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn check_rb_prints_the_contract_line() {
        let (code, output) =
            run_capture(&["check", "--kind", "rb", "--weight", "1", "--semigroup", "z2", "--map", "0,1"]);
        assert_eq!((code, output.as_str()), (0, "OK strong=true\n"));

        let (code, output) =
            run_capture(&["check-rb", "--semigroup", "z3", "--map", "1,1,1"]);
        assert_eq!(code, 1);
        assert_eq!(output, "FAIL RB1 witness=(0,0)\n");
    }

    #[test]
    fn usage_problems_exit_two() {
        let (code, _) = run_capture(&["check", "--kind", "rb", "--semigroup", "nope", "--map", "0"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["check", "--kind", "rb", "--map", "0,1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn enumerate_lists_sorted_maps() {
        let (code, output) = run_capture(&["enumerate", "--kind", "rb", "--semigroup", "z3"]);
        assert_eq!(code, 0);
        assert_eq!(output, "0,0,0\n0,1,2\n0,2,1\n");

        let (code, output) =
            run_capture(&["enumerate", "--kind", "rb", "--semigroup", "z3", "--format", "json"]);
        assert_eq!(code, 0);
        assert_eq!(output, "[[0,0,0],[0,1,2],[0,2,1]]\n");
    }

    #[test]
    fn graph_test_prints_both_verdicts() {
        let (code, output) = run_capture(&[
            "graph-test",
            "--fixture",
            "z2-on-z3-negation",
            "--map",
            "0,0,0",
        ]);
        assert_eq!((code, output.as_str()), (0, "graph=true axioms=true\n"));

        let (code, output) = run_capture(&[
            "graph-test",
            "--fixture",
            "z2-on-z3-negation",
            "--map",
            "1,1,1",
        ]);
        assert_eq!(code, 1);
        assert_eq!(output, "graph=false axioms=false\n");
    }
}
