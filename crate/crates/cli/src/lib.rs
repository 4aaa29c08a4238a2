//! Command-line front end for the `k3lat` library.
//!
//! [`run`] does all the work and returns the text it would print, so the
//! binary is a thin wrapper and tests can drive commands in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use k3lat::classification::{enumerate_table1, verify_pair, Table1Row};
use k3lat::fixed_locus::{
    enumerate_table2, fixed_locus_for_key, holomorphic_lefschetz, lefschetz_count, topological_check,
    Status, Table2Row,
};
use k3lat::isometry::{discriminant_action, has_order3_trivial_on_a, is_isometry, matrix_from_json, order_of};
use k3lat::isometry::DEFAULT_ORDER_BOUND;
use k3lat::named::parse_expr;
use k3lat::{Error, Lattice};

/// Exit status for a run that completed and whose checks passed.
pub const EXIT_OK: u8 = 0;
/// Exit status when the input was valid but a mathematical check failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status for unparseable or ill-shaped input.
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn invalid(message: impl std::fmt::Display) -> Self {
        Self { exit_code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "k3lat", about = "3-elementary lattices in the K3 lattice and fixed loci of order-3 automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pairs (S, T) of 3-elementary lattices complementary in the K3 lattice
    Table1 {
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Fixed loci of order-3 non-symplectic automorphisms by Néron–Severi lattice
    Table2 {
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Invariants of a lattice given as an expression or a JSON file
    Lattice {
        input: String,
        #[arg(long)]
        info: bool,
        #[arg(long)]
        json: bool,
    },
    /// Checks that T can be the complement of S in the K3 lattice
    VerifyPair {
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        json: bool,
    },
    /// Checks a matrix file against a lattice
    Isometry {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        matrix: String,
    },
    /// Searches a definite lattice for an order-3 isometry trivial on the discriminant group
    SearchOrder3 {
        #[arg(long)]
        lattice: String,
    },
    /// Fixed locus and Lefschetz checks for a key (ρ, s)
    Lefschetz {
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        s: usize,
    },
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { exit_code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    let outcome = match cli.command {
        Command::Table1 { format } => table1(format),
        Command::Table2 { format } => table2(format),
        Command::Lattice { input, info, json } => lattice(&input, info, json),
        Command::VerifyPair { s, t, json } => pair(&s, &t, json),
        Command::Isometry { lattice, matrix } => isometry(&lattice, &matrix),
        Command::SearchOrder3 { lattice } => search_order3(&lattice),
        Command::Lefschetz { rho, s } => lefschetz(rho, s),
    };
    outcome.unwrap_or_else(CommandResult::invalid)
}

fn load_lattice(arg: &str) -> Result<Lattice, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidLiteral(format!("{arg}: {e}")))?;
        Lattice::from_json(&text)
    } else {
        parse_expr(arg)
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn to_csv<T: serde::Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("serializable");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn table1(format: Format) -> Result<CommandResult, Error> {
    let rows: Vec<Table1Row> = enumerate_table1()?.iter().map(Table1Row::from).collect();
    let out = match format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(&rows),
        Format::Md => {
            let mut s = String::from("| ρ | s | S | T |\n|---|---|---|---|\n");
            for r in &rows {
                let t = r.t_name.as_deref().unwrap_or("does not exist");
                let _ = writeln!(s, "| {} | {} | {} | {} |", r.rho, r.s, r.s_name, t);
            }
            s
        }
    };
    Ok(CommandResult::ok(out))
}

fn table2(format: Format) -> Result<CommandResult, Error> {
    let entries = enumerate_table2()?;
    let rows: Vec<Table2Row> = entries.iter().map(Table2Row::from).collect();
    let out = match format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(&rows),
        Format::Md => {
            let mut s = String::from("| S | ρ | s | fixed locus |\n|---|---|---|---|\n");
            for e in entries.iter().filter(|e| e.locus.status != Status::Nonexistent) {
                let _ = writeln!(s, "| {} | {} | {} | {} |", e.s_name, e.rho, e.s, e.locus.label());
            }
            s.push_str("\nNo order-3 non-symplectic automorphism (22 − ρ − 2s < 0):\n\n");
            for e in entries.iter().filter(|e| e.locus.status == Status::Nonexistent) {
                let _ = writeln!(s, "- {} (ρ = {}, s = {})", e.s_name, e.rho, e.s);
            }
            s
        }
    };
    Ok(CommandResult::ok(out))
}

fn lattice(input: &str, info: bool, json: bool) -> Result<CommandResult, Error> {
    let l = load_lattice(input)?;
    if !info {
        return Ok(CommandResult::ok(to_json(&l.to_json())));
    }
    let sig = l.signature();
    let mut fields = serde_json::Map::new();
    fields.insert("name".into(), l.name().map_or(serde_json::Value::Null, Into::into));
    fields.insert("rank".into(), l.rank().into());
    fields.insert("signature".into(), serde_json::json!([sig.plus, sig.minus]));
    fields.insert("nullity".into(), sig.zero.into());
    fields.insert("det".into(), l.det().to_string().into());
    fields.insert("even".into(), l.is_even().into());
    let group = l.discriminant_group().ok();
    if let Some(g) = &group {
        let factors: Vec<String> = g.invariant_factors().iter().map(ToString::to_string).collect();
        fields.insert("invariant_factors".into(), factors.into());
        fields.insert("s".into(), g.min_generators().into());
    }
    if let Ok(q) = l.discriminant_form() {
        let values: Vec<String> = q.generator_values().iter().map(ToString::to_string).collect();
        fields.insert("q".into(), values.into());
    }
    if json {
        return Ok(CommandResult::ok(to_json(&fields)));
    }
    let mut s = String::new();
    let _ = writeln!(s, "name: {}", l.name().unwrap_or("-"));
    let _ = writeln!(s, "rank: {}", l.rank());
    let _ = writeln!(s, "signature: ({},{})", sig.plus, sig.minus);
    if sig.zero > 0 {
        let _ = writeln!(s, "nullity: {}", sig.zero);
    }
    let _ = writeln!(s, "det: {}", l.det());
    let _ = writeln!(s, "even: {}", l.is_even());
    match &group {
        Some(g) => {
            let factors: Vec<String> = g.invariant_factors().iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "invariant factors: [{}]", factors.join(", "));
            let _ = writeln!(s, "s: {}", g.min_generators());
        }
        None => s.push_str("discriminant group: undefined (degenerate)\n"),
    }
    if let Some(serde_json::Value::Array(q)) = fields.get("q") {
        let q: Vec<&str> = q.iter().filter_map(|v| v.as_str()).collect();
        let _ = writeln!(s, "q on generators: [{}]", q.join(", "));
    }
    Ok(CommandResult::ok(s))
}

fn pair(s_expr: &str, t_expr: &str, json: bool) -> Result<CommandResult, Error> {
    let s = load_lattice(s_expr)?;
    let t = load_lattice(t_expr)?;
    let report = verify_pair(&s, &t)?;
    let out = if json {
        to_json(&report)
    } else {
        let mut out = String::new();
        for c in &report.checks {
            let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        out
    };
    let exit_code = if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(CommandResult { exit_code, stdout: out, stderr: String::new() })
}

fn isometry(lattice_arg: &str, matrix_path: &str) -> Result<CommandResult, Error> {
    let l = load_lattice(lattice_arg)?;
    let text = std::fs::read_to_string(matrix_path)
        .map_err(|e| Error::InvalidLiteral(format!("{matrix_path}: {e}")))?;
    let m = matrix_from_json(&text)?;
    let mut out = String::new();
    if !is_isometry(&l, &m)? {
        out.push_str("isometry: false\n");
        return Ok(CommandResult { exit_code: EXIT_CHECK_FAILED, stdout: out, stderr: String::new() });
    }
    out.push_str("isometry: true\n");
    let _ = writeln!(out, "order: {}", opt(order_of(&m, DEFAULT_ORDER_BOUND)));
    match discriminant_action(&l, &m) {
        Ok(action) => {
            let _ = writeln!(out, "discriminant action trivial: {}", action.trivial);
            for row in &action.matrix {
                let row: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  [{}]", row.join(", "));
            }
        }
        Err(Error::Degenerate) => out.push_str("discriminant action: undefined (degenerate)\n"),
        Err(e) => return Err(e),
    }
    Ok(CommandResult::ok(out))
}

fn search_order3(lattice_arg: &str) -> Result<CommandResult, Error> {
    let l = load_lattice(lattice_arg)?;
    let found = has_order3_trivial_on_a(&l)?;
    Ok(CommandResult::ok(format!(
        "order-3 isometry acting trivially on the discriminant group: {}\n",
        if found { "yes" } else { "no" }
    )))
}

fn lefschetz(rho: usize, s: usize) -> Result<CommandResult, Error> {
    let fl = fixed_locus_for_key(rho, s)?;
    let mut out = String::new();
    let _ = writeln!(out, "status: {}", fl.status);
    if fl.status == Status::Nonexistent {
        let _ = writeln!(out, "22 - rho - 2s = {}", 22 - rho as i64 - 2 * s as i64);
        return Ok(CommandResult::ok(out));
    }
    let m = fl.points.unwrap_or(0);
    let genera = fl.curve_genera();
    let value = holomorphic_lefschetz(m, &genera);
    let count = lefschetz_count(m, &genera);
    let topo = topological_check(rho, s, &fl);
    let _ = writeln!(out, "M: {}", m);
    let _ = writeln!(out, "g: {}", opt(fl.genus));
    let _ = writeln!(out, "N: {}", opt(fl.curves));
    let _ = writeln!(out, "fixed locus: {}", fl.label());
    let _ = writeln!(out, "holomorphic Lefschetz: {} (equals -ζ: {})", value, fl.lefschetz_holds());
    let _ = writeln!(out, "M - Σ(1 - g_k): {}", count);
    let _ = writeln!(out, "topological check: {}", topo);
    let exit_code = if fl.lefschetz_holds() && count == 3 && topo { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(CommandResult { exit_code, stdout: out, stderr: String::new() })
}
