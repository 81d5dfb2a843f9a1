//! Command-line front end. Data goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 mismatch or failed check, 2 invalid arguments,
//! 3 reducible modulus, 4 field too large to enumerate.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::counting::{asymptotic_report, full_table, full_table_with_modulus, TraceCotraceTable};
use crate::error::Error;
use crate::ext_field::{field_order, parse_poly, FieldCtx};
use crate::golden::{self, GoldenTable};
use crate::kloosterman::{check_weil, enumeration_guard, weil_bound, KloostermanProfile};
use crate::oracle::tally_parallel;
use crate::prime_field::ensure_prime;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REDUCIBLE: i32 = 3;
pub const EXIT_TOO_LARGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "trace-cotrace", version, about = "Counts field elements by trace and co-trace")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the full T table computed from Kloosterman sums.
    Count(CountArgs),
    /// Compare the closed-form table with brute-force enumeration.
    Verify(FieldArgs),
    /// Regenerate the reference tables for p = 2, 3, 5 and diff them.
    Tables,
    /// Print K(u) and K^(m)(u) for u = 1..p-1.
    Kloosterman(KloostermanArgs),
    /// CSV report of deviations from (q+1)/p² against their bounds.
    Asymptotics(AsymptoticsArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Defining polynomial, ascending coefficients, e.g. "1,1,1" for x²+x+1.
    #[arg(long)]
    pub modulus: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct KloostermanArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Also print complex values and Weil margins.
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long = "m-max")]
    pub m_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

/// Serialized result of `count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub p: u64,
    pub m: u32,
    pub q: u128,
    pub modulus: Vec<u64>,
    pub table: Vec<Vec<u128>>,
    pub t1s: Vec<u128>,
    pub method: Method,
}

impl OutputRecord {
    pub fn new(table: &TraceCotraceTable, method: Method) -> Self {
        Self {
            p: table.p,
            m: table.m,
            q: table.q,
            modulus: table.modulus.clone(),
            table: table.counts.clone(),
            t1s: table.t1s(),
            method,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Header `p,m,i,j,T`, then one line per cell, row-major.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,m,i,j,T\n");
        for (i, row) in self.table.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                s += &format!("{},{},{i},{j},{t}\n", self.p, self.m);
            }
        }
        s
    }

    pub fn to_text(&self) -> String {
        let method = match self.method {
            Method::ClosedForm => "closed-form",
            Method::Oracle => "oracle",
        };
        let modulus: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
        let mut s = format!(
            "p={} m={} q={} modulus={} method={method}\n",
            self.p,
            self.m,
            self.q,
            modulus.join(",")
        );
        let width = self
            .table
            .iter()
            .flatten()
            .map(|t| t.to_string().len())
            .max()
            .unwrap_or(1)
            .max(format!("j={}", self.p - 1).len());
        s += &format!("{:>w$}", "", w = format!("i={}", self.p - 1).len());
        for j in 0..self.p {
            s += &format!(" {:>width$}", format!("j={j}"));
        }
        s.push('\n');
        for (i, row) in self.table.iter().enumerate() {
            s += &format!("i={i}");
            for t in row {
                s += &format!(" {t:>width$}");
            }
            s.push('\n');
        }
        s
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Count(a) => count(a, out),
        Command::Verify(a) => verify(a, out, err),
        Command::Tables => tables(out, err),
        Command::Kloosterman(a) => kloosterman(a, out),
        Command::Asymptotics(a) => asymptotics(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            exit_code(&e)
        }
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::NotPrime(_) => format!("p must be prime ({e})"),
        _ => e.to_string(),
    }
}

/// Exit code for an error escaping a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_)
        | Error::BadDegree
        | Error::NonMonic
        | Error::ModulusDegree { .. }
        | Error::PolyParse(_)
        | Error::Overflow { .. } => EXIT_USAGE,
        Error::Reducible(_) => EXIT_REDUCIBLE,
        Error::TooLarge { .. } => EXIT_TOO_LARGE,
        _ => EXIT_MISMATCH,
    }
}

fn check_field(p: u64, m: u32) -> Result<u128, Error> {
    ensure_prime(p)?;
    if m == 0 {
        return Err(Error::BadDegree);
    }
    field_order(p, m)
}

fn io(r: std::io::Result<()>) -> Result<(), Error> {
    r.map_err(|e| Error::TableInvariant(format!("write failed: {e}")))
}

fn count(a: &CountArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let (p, m) = (a.field.p, a.field.m);
    check_field(p, m)?;
    let ctx = match &a.modulus {
        Some(text) => {
            let modulus = parse_poly(text)?;
            if modulus.len() != m as usize + 1 {
                return Err(Error::ModulusDegree {
                    expected: m as usize,
                    found: modulus.len().saturating_sub(1),
                });
            }
            if modulus.last().map(|c| c % p) != Some(1) {
                return Err(Error::NonMonic);
            }
            Some(FieldCtx::with_modulus(p, modulus)?)
        }
        None => None,
    };
    let table = match (a.method, &ctx) {
        (Method::ClosedForm, Some(ctx)) => full_table_with_modulus(p, ctx.modulus().to_vec())?,
        (Method::ClosedForm, None) => full_table(p, m)?,
        (Method::Oracle, Some(ctx)) => tally_parallel(ctx)?,
        (Method::Oracle, None) => tally_parallel(&FieldCtx::new(p, m as usize)?)?,
    };
    let record = OutputRecord::new(&table, a.method);
    let text = match a.format {
        Format::Table => record.to_text(),
        Format::Json => record.to_json() + "\n",
        Format::Csv => record.to_csv(),
    };
    io(write!(out, "{text}"))?;
    Ok(EXIT_OK)
}

fn verify(a: &FieldArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let (p, m) = (a.p, a.m);
    let q = check_field(p, m)?;
    let guard = enumeration_guard();
    if q > guard {
        return Err(Error::TooLarge { q, guard });
    }
    let closed = full_table(p, m)?;
    let brute = tally_parallel(&FieldCtx::new(p, m as usize)?)?;
    let mut diffs = 0;
    for i in 0..p {
        for j in 0..p {
            let (c, b) = (closed.get(i, j), brute.get(i, j));
            if c != b {
                diffs += 1;
                io(writeln!(err, "T{i},{j}: closed-form {c}, oracle {b}"))?;
            }
        }
    }
    if diffs > 0 {
        io(writeln!(out, "p={p} m={m}: {diffs} cells differ"))?;
        return Ok(EXIT_MISMATCH);
    }
    io(writeln!(out, "p={p} m={m}: all {} cells agree", p * p))?;
    Ok(EXIT_OK)
}

/// Renders one reference table in its published layout, with each cell
/// recomputed, and returns the number of disagreements.
fn render_golden(g: &GoldenTable, out: &mut dyn Write, err: &mut dyn Write) -> Result<usize, Error> {
    let computed = g
        .ms
        .iter()
        .map(|&m| full_table(g.p, m))
        .collect::<Result<Vec<_>, _>>()?;
    io(write!(out, "p={}\n{:>5}", g.p, "m"))?;
    for m in g.ms {
        io(write!(out, " {m:>6}"))?;
    }
    io(writeln!(out))?;
    let mut bad = 0;
    for (r, label) in g.cells.iter().enumerate() {
        let (i, j) = GoldenTable::cell_index(label);
        io(write!(out, "{label:>5}"))?;
        for (k, table) in computed.iter().enumerate() {
            let got = table.get(i, j);
            io(write!(out, " {got:>6}"))?;
            let want = g.values[r][k];
            if got != want {
                bad += 1;
                io(writeln!(
                    err,
                    "p={} m={} {label}: computed {got}, reference {want}",
                    g.p, g.ms[k]
                ))?;
            }
        }
        io(writeln!(out))?;
    }
    io(writeln!(out))?;
    Ok(bad)
}

fn tables(out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let mut bad = 0;
    for g in &golden::ALL {
        bad += render_golden(g, out, err)?;
    }
    if bad > 0 {
        io(writeln!(err, "{bad} cells disagree with the reference tables"))?;
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn coeff_vector(v: &crate::CycloNum) -> String {
    let parts: Vec<String> = v.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn kloosterman(a: &KloostermanArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let (p, m) = (a.field.p, a.field.m);
    let q = check_field(p, m)?;
    let profile = KloostermanProfile::new(p, m)?;
    io(writeln!(
        out,
        "# p={p} m={m} q={q}; coefficients of 1, z, ..., z^{} with z = exp(2 pi i/{p})",
        p.saturating_sub(2)
    ))?;
    let bound = weil_bound(q);
    for u in 1..p {
        let (k, km) = (profile.prime(u), profile.lifted(u));
        if !check_weil(km, q)? {
            return Err(Error::WeilViolation {
                u,
                value: km.to_f64(),
                bound,
            });
        }
        io(writeln!(out, "K({u}) = {}", coeff_vector(k)))?;
        io(writeln!(out, "K^({m})({u}) = {}", coeff_vector(km)))?;
        if a.float {
            let z: Complex64 = km.embed_complex();
            io(writeln!(
                out,
                "K({u}) ~ {:.6}  K^({m})({u}) ~ {:.6}{:+.1e}i  weil margin {:.6}",
                k.to_f64(),
                z.re,
                z.im,
                bound - z.norm()
            ))?;
        }
    }
    Ok(EXIT_OK)
}

fn asymptotics(a: &AsymptoticsArgs, out: &mut dyn Write) -> Result<i32, Error> {
    check_field(a.p, a.m_max)?;
    let rows = asymptotic_report(a.p, 1..=a.m_max)?;
    let limit = 1.0 / (a.p * a.p) as f64;
    io(writeln!(out, "m,cell,T,ratio,limit,deviation,bound"))?;
    for r in rows {
        io(writeln!(
            out,
            "{},{},{},{:.6},{limit:.6},{:.6},{:.6}",
            r.m, r.cell, r.count, r.ratio, r.deviation, r.bound
        ))?;
    }
    Ok(EXIT_OK)
}
