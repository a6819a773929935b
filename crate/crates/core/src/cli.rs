//! Command-line front end. [`run_command`] is the whole tool; `main` only
//! prints its output.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::invariants::{euler_characteristic, middle_betti, HypersurfaceClass};
use crate::lefschetz::audit_summary;
use crate::moduli::{level_scheme_hypotheses_with, LevelVerdict};
use crate::store::{PayloadKind, Store, StoreRecord};
use crate::symmetry::{tame_prime_set, Budget, PrimeOrderTable};
use crate::torsion::{minkowski_serre_check, random_finite_order_matrix, MsVerdict, SquareIntegerMatrix};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "hyperlevel", version, about = "Exact invariants and automorphism audits for smooth hypersurfaces")]
struct Cli {
    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Search-tree node limit per prime.
    #[arg(long, global = true, default_value_t = Budget::default().nodes)]
    node_limit: u64,

    /// Projective-point limit for the finite-field smoothness oracle.
    #[arg(long, global = true, default_value_t = Budget::default().field_points)]
    field_limit: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler characteristic of a smooth degree-D hypersurface of dimension N.
    Euler {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        dim: u32,
    },
    /// Middle Betti number.
    Betti {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        dim: u32,
    },
    /// Trace-formula audit over a grid of classes.
    Audit {
        #[arg(long, value_parser = parse_range)]
        degree_range: (u32, u32),
        #[arg(long, value_parser = parse_range)]
        dim_range: (u32, u32),
        /// Write one JSON line per profile to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Tame prime orders of linear automorphisms, with certificates.
    Primes {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Minkowski–Serre check of one matrix read from a JSON file.
    MsCheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Minkowski–Serre check over seeded random finite-order matrices.
    MsFuzz {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: u64,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Level-N hypotheses for the moduli of hypersurfaces.
    Level {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        level: u64,
        /// Read (or record) the prime table in this store.
        #[arg(long)]
        store: Option<PathBuf>,
    },
}

/// Parses `A..B` (inclusive) or a single value `A`.
pub fn parse_range(text: &str) -> std::result::Result<(u32, u32), String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| format!("malformed range bound {s:?} in {text:?}"))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(code) => CommandOutput { code, stdout: out, stderr: String::new() },
        Err(e) => CommandOutput {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn class(degree: u32, dim: u32) -> Result<HypersurfaceClass> {
    HypersurfaceClass::new(degree, dim)
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string(v)?)
}

fn execute(cli: &Cli, out: &mut String) -> Result<i32> {
    let budget = Budget {
        nodes: cli.node_limit,
        field_points: cli.field_limit,
    };
    match &cli.command {
        Command::Euler { degree, dim } => {
            let c = class(*degree, *dim)?;
            let chi = euler_characteristic(&c);
            if cli.json {
                let v = json!({"d": degree, "n": dim, "chi": crate::json::number(&chi).map_err(Error::Parse)?});
                writeln!(out, "{}", to_json(&v)?).unwrap();
            } else {
                writeln!(out, "{chi}").unwrap();
            }
            Ok(0)
        }
        Command::Betti { degree, dim } => {
            let c = class(*degree, *dim)?;
            let b = middle_betti(&c);
            if cli.json {
                let v = json!({"d": degree, "n": dim, "b": crate::json::number(&b).map_err(Error::Parse)?});
                writeln!(out, "{}", to_json(&v)?).unwrap();
            } else {
                writeln!(out, "{b}").unwrap();
            }
            Ok(0)
        }
        Command::Audit {
            degree_range,
            dim_range,
            emit,
            store,
        } => audit(cli.json, *degree_range, *dim_range, emit.as_ref(), store.as_ref(), out),
        Command::Primes { degree, dim, store } => {
            let c = class(*degree, *dim)?;
            let table = tame_prime_set(&c, &budget)?;
            if let Some(path) = store {
                Store::open(path)?.put(StoreRecord::prime_table(&table)?)?;
            }
            if cli.json {
                writeln!(out, "{}", to_json(&table)?).unwrap();
            } else {
                render_table(&table, out);
            }
            Ok(0)
        }
        Command::MsCheck { matrix, modulus } => {
            let text = fs::read_to_string(matrix)?;
            let a = SquareIntegerMatrix::from_json(&text)?;
            let verdict = minkowski_serre_check(&a, *modulus)?;
            if cli.json {
                writeln!(out, "{}", to_json(&verdict)?).unwrap();
            } else {
                writeln!(out, "{}", describe(&verdict, *modulus)).unwrap();
            }
            Ok(if verdict.is_violation() { 1 } else { 0 })
        }
        Command::MsFuzz {
            dim,
            count,
            modulus,
            seed,
        } => {
            let mut congruent = 0u64;
            let mut identities = 0u64;
            let mut violations = Vec::new();
            let mut mod2 = 0u64;
            for s in *seed..seed.saturating_add(*count) {
                let a = random_finite_order_matrix(*dim, s)?;
                match minkowski_serre_check(&a, *modulus)? {
                    MsVerdict::NotCongruent { .. } => {}
                    MsVerdict::Identity { .. } => {
                        congruent += 1;
                        identities += 1;
                    }
                    MsVerdict::Violation { matrix, .. } => {
                        congruent += 1;
                        violations.push((s, matrix));
                    }
                    MsVerdict::Mod2Counterexample { .. } => {
                        congruent += 1;
                        mod2 += 1;
                    }
                }
            }
            if cli.json {
                let v = json!({
                    "dim": dim, "count": count, "mod": modulus, "seed": seed,
                    "congruent": congruent, "identity": identities,
                    "mod2_counterexamples": mod2,
                    "violations": violations.iter().map(|(s, m)| json!({"seed": s, "matrix": m})).collect::<Vec<_>>(),
                });
                writeln!(out, "{}", to_json(&v)?).unwrap();
            } else {
                writeln!(
                    out,
                    "dim={dim} mod={modulus} matrices={count} congruent={congruent} identity={identities} mod2-counterexamples={mod2} violations={}",
                    violations.len()
                )
                .unwrap();
                for (s, m) in &violations {
                    writeln!(out, "VIOLATION seed={s} matrix={}", m.to_json()).unwrap();
                }
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Level {
            degree,
            dim,
            level,
            store,
        } => {
            let c = class(*degree, *dim)?;
            let report = level_scheme_hypotheses_with(&c, *level, || {
                let Some(path) = store else {
                    return tame_prime_set(&c, &budget);
                };
                let mut s = Store::open(path)?;
                if let Some(rec) = s.latest(PayloadKind::PrimeTable, *degree, *dim) {
                    return rec.as_prime_table();
                }
                let table = tame_prime_set(&c, &budget)?;
                s.put(StoreRecord::prime_table(&table)?)?;
                Ok(table)
            })?;
            if cli.json {
                writeln!(out, "{}", to_json(&report)?).unwrap();
            } else {
                writeln!(out, "class       (d={}, n={})", report.d, report.n).unwrap();
                writeln!(out, "level N     {}", report.level).unwrap();
                writeln!(out, "b_middle    {}", report.b).unwrap();
                match &report.torsor_degree {
                    Some(t) => writeln!(out, "|GL_b(Z/N)| {t}").unwrap(),
                    None => writeln!(out, "|GL_b(Z/N)| -").unwrap(),
                }
                if let Some(a) = &report.a_tame {
                    writeln!(out, "a_tame      {a}").unwrap();
                }
                writeln!(out, "verdict     {}", report.verdict).unwrap();
                writeln!(out, "caveat      {}", report.caveat).unwrap();
                if let Some(note) = &report.note {
                    writeln!(out, "note        {note}").unwrap();
                }
            }
            Ok(if report.verdict == LevelVerdict::SchemeHypothesesMet { 0 } else { 1 })
        }
    }
}

fn audit(
    json_out: bool,
    (d_lo, d_hi): (u32, u32),
    (n_lo, n_hi): (u32, u32),
    emit: Option<&PathBuf>,
    store: Option<&PathBuf>,
    out: &mut String,
) -> Result<i32> {
    let mut store = store.map(Store::open).transpose()?;
    let mut lines = String::new();
    let mut with_solutions = Vec::new();
    let mut all_expected = true;
    for d in d_lo..=d_hi {
        for n in n_lo..=n_hi {
            let c = class(d, n)?;
            let (summary, records) = audit_summary(&c)?;
            for r in &records {
                lines.push_str(&to_json(r)?);
                lines.push('\n');
            }
            if !summary.solutions.is_empty() {
                with_solutions.push((d, n));
            }
            all_expected &= summary.as_expected();
            if let Some(s) = store.as_mut() {
                s.put(StoreRecord::audit_summary(&summary)?)?;
            }
            if json_out {
                writeln!(out, "{}", to_json(&summary)?).unwrap();
            } else {
                let ineq = if summary.inequality_failures.is_empty() { "ok" } else { "FAILED" };
                let fixed = summary
                    .curve_fixed_points
                    .as_ref()
                    .map(|v| format!(" fixed-points={v}"))
                    .unwrap_or_default();
                writeln!(
                    out,
                    "d={d} n={n} profiles={} solutions={} inequalities={ineq}{fixed}",
                    summary.profiles,
                    summary.solutions.len()
                )
                .unwrap();
            }
        }
    }
    if let Some(path) = emit {
        fs::write(path, lines)?;
    }
    if !json_out {
        let listed: Vec<String> = with_solutions.iter().map(|(d, n)| format!("({d},{n})")).collect();
        writeln!(
            out,
            "classes with trace-formula solutions: {}",
            if listed.is_empty() { "none".to_string() } else { listed.join(" ") }
        )
        .unwrap();
    }
    Ok(if all_expected { 0 } else { 1 })
}

fn render_table(table: &PrimeOrderTable, out: &mut String) {
    writeln!(out, "class (d={}, n={})  search bound {}", table.d, table.n, table.search_bound).unwrap();
    writeln!(out, "{:>6}  {:<24} {:>6}  {:<24} {:>6}  oracle", "p", "w", "lambda", "assignment", "q").unwrap();
    for e in &table.primes {
        let c = &e.certificate;
        writeln!(
            out,
            "{:>6}  {:<24} {:>6}  {:<24} {:>6}  {}",
            e.p,
            format!("{:?}", c.weights.weights()),
            c.weights.lambda(),
            format!("{:?}", c.assignment),
            c.smoothness.q,
            if c.smoothness.checked { "smooth" } else { "skipped" }
        )
        .unwrap();
    }
    writeln!(out, "a_tame = {}", table.a_tame).unwrap();
    writeln!(out, "note: {}", table.caveat).unwrap();
}

fn describe(v: &MsVerdict, modulus: u64) -> String {
    match v {
        MsVerdict::Identity { .. } => format!("pass: A = I (mod {modulus}) and A = I"),
        MsVerdict::NotCongruent { order } => {
            format!("pass (vacuous): order {order}, A is not congruent to I mod {modulus}")
        }
        MsVerdict::Violation { order, matrix } => format!(
            "VIOLATION: order {order}, A = I (mod {modulus}) but A != I: {}",
            matrix.to_json()
        ),
        MsVerdict::Mod2Counterexample { order, matrix } => format!(
            "mod-2 counterexample: order {order}, A = I (mod 2) but A != I: {}",
            matrix.to_json()
        ),
    }
}
