//! The `modfact` command line.
//!
//! Exit codes: 0 on success, 2 for invalid input (including a failed
//! equivalence check), 3 when a run is refused by the cost guard.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::equivalence::build_equivalence_report;
use crate::error::Error;
use crate::factors::{
    build_modular_factor, build_modular_factor_even, build_modular_factorization, Factor,
    Factorization,
};
use crate::numtheory::totient;
use crate::oracle::{enumerate_factorizations, exact_c, EXPENSIVE_ORDER};
use crate::pairing::{classify_pair, count_perfect_pairs, perfect_pairs};
use crate::product::{build_product_factor, count_perfect_product_pairs, product_bound};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_COST_GUARD: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "modfact", version, about = "Modular near-one-factorizations and perfect pairs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the factor F_k of K_n, or the whole modular family.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Build one-factors of an even-order K_n.
        #[arg(long)]
        even: bool,
    },
    /// Count perfect pairs of the modular factorization of K_n.
    Pairs {
        #[arg(long)]
        n: usize,
        /// Include the full pair matrix.
        #[arg(long)]
        matrix: bool,
        /// Classify the single pair F_k, F_l and show its walk.
        #[arg(long, requires_all = ["k", "l"])]
        witness: bool,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Build D_{k,l} on K_{st}, or count perfect pairs over the product family.
    Product {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, requires = "l")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        l: Option<usize>,
    },
    /// Check that the modular and product families of K_{st} coincide.
    Equiv {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Exact c(K_n) by exhaustive search (odd n, 3..=9).
    Oracle {
        #[arg(long)]
        n: usize,
        /// Allow the order-9 search.
        #[arg(long)]
        expensive: bool,
        /// Also write every factorization as newline-delimited JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Validate a factorization file and classify its pairs.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    CostGuard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::CostGuard(_) => EXIT_COST_GUARD,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::CostGuard(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CostGuard(_) => CliError::CostGuard(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct FactorFamily<'a> {
    n: usize,
    factors: &'a [Factor],
}

#[derive(Serialize)]
struct PairsReport {
    n: usize,
    perfect_pairs: usize,
    formula: &'static str,
    formula_value: u64,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<u8>>>,
}

#[derive(Serialize)]
struct WitnessReport<'a> {
    n: usize,
    k: usize,
    l: usize,
    perfect: bool,
    gcd_perfect: Option<bool>,
    witness: &'a crate::pairing::UnionWalk,
}

#[derive(Serialize)]
struct ProductSummary {
    s: usize,
    t: usize,
    perfect_pairs: usize,
    predicted: usize,
    mismatches: usize,
    bound: u64,
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    factors: usize,
    perfect_pairs: usize,
    pairs: Vec<(usize, usize)>,
}

fn render_factors(factors: &[Factor], n: usize, format: Format) -> String {
    match format {
        Format::Json => to_json(&FactorFamily { n, factors }),
        Format::Dot => render::factors_dot(factors),
        Format::Text => factors
            .iter()
            .enumerate()
            .map(|(pos, f)| render::factor_text(f, pos))
            .collect(),
    }
}

fn render_factor(f: &Factor, format: Format) -> String {
    match format {
        Format::Json => to_json(f),
        Format::Dot => render::factor_dot(f, &format!("F_{}", f.index().unwrap_or(0))),
        Format::Text => render::factor_text(f, 0),
    }
}

fn require_odd(n: usize) -> Result<(), CliError> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n).into());
    }
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n).into());
    }
    Ok(())
}

fn no_dot(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Dot {
        return Err(invalid(format!("{what} has no DOT rendering")));
    }
    Ok(())
}

fn cmd_construct(n: usize, k: Option<usize>, even: bool, format: Format) -> Result<String, CliError> {
    if even && n % 2 == 1 {
        return Err(Error::OddOrder(n).into());
    }
    if !even && n % 2 == 0 {
        return Err(invalid(format!(
            "order {n} must be odd; pass --even for one-factors of even order"
        )));
    }
    match (k, even) {
        (Some(k), false) => Ok(render_factor(&build_modular_factor(n, k)?, format)),
        (Some(k), true) => Ok(render_factor(&build_modular_factor_even(n, k)?, format)),
        (None, false) => {
            let fz = build_modular_factorization(n)?;
            Ok(match format {
                Format::Json => to_json(&fz),
                _ => render_factors(fz.factors(), n, format),
            })
        }
        (None, true) => {
            // Not asserted to partition E(K_n), so emitted as a plain family.
            let family = (0..n)
                .map(|k| build_modular_factor_even(n, k))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(render_factors(&family, n, format))
        }
    }
}

fn cmd_pairs(
    n: usize,
    matrix: bool,
    witness: Option<(usize, usize)>,
    format: Format,
) -> Result<String, CliError> {
    require_odd(n)?;
    if let Some((k, l)) = witness {
        let f = build_modular_factor(n, k)?;
        let g = build_modular_factor(n, l)?;
        let c = classify_pair(&f, &g)?;
        return Ok(match format {
            Format::Dot => render::pair_dot(&f, &g, &c),
            Format::Json => to_json(&WitnessReport {
                n,
                k,
                l,
                perfect: c.perfect,
                gcd_perfect: c.criterion.map(|x| x.gcd_perfect),
                witness: &c.witness,
            }),
            Format::Text => {
                let path: Vec<String> = c.witness.vertices.iter().map(|v| v.to_string()).collect();
                format!("F_{k} F_{l} perfect={} walk: {}\n", c.perfect, path.join(" "))
            }
        });
    }
    no_dot(format, "a pair count")?;
    let fz = build_modular_factorization(n)?;
    let pairs = perfect_pairs(&fz);
    let formula_value = n as u64 * totient(n as u64)? / 2;
    let matrix = matrix.then(|| {
        let mut m = vec![vec![0u8; n]; n];
        for &(a, b) in &pairs {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    });
    let report = PairsReport {
        n,
        perfect_pairs: pairs.len(),
        formula: "n*phi(n)/2",
        formula_value,
        agree: pairs.len() as u64 == formula_value,
        matrix,
    };
    Ok(match format {
        Format::Text => format!(
            "n={} perfect_pairs={} n*phi(n)/2={} agree={}\n",
            report.n, report.perfect_pairs, report.formula_value, report.agree
        ),
        _ => to_json(&report),
    })
}

fn cmd_product(
    s: usize,
    t: usize,
    kl: Option<(usize, usize)>,
    format: Format,
) -> Result<String, CliError> {
    if let Some((k, l)) = kl {
        let d = build_product_factor(s, t, k, l)?;
        return Ok(match format {
            Format::Json => to_json(&d),
            Format::Dot => render::factor_dot(&d.to_factor(), &format!("D_{k}_{l}")),
            Format::Text => {
                let mut out = format!("D_{k},{l} s={s} t={t} isolated={}:", d.isolated());
                for (a, b) in d.edges() {
                    out.push_str(&format!(" {{{a},{b}}}"));
                }
                out.push('\n');
                out
            }
        });
    }
    no_dot(format, "a product pair count")?;
    let count = count_perfect_product_pairs(s, t)?;
    let c_s = count_perfect_pairs(&build_modular_factorization(s)?) as u64;
    let c_t = count_perfect_pairs(&build_modular_factorization(t)?) as u64;
    let summary = ProductSummary {
        s,
        t,
        perfect_pairs: count.traversal,
        predicted: count.predicted,
        mismatches: count.mismatches,
        bound: product_bound(c_s, c_t),
    };
    Ok(match format {
        Format::Text => format!(
            "s={s} t={t} perfect_pairs={} predicted={} mismatches={} bound={}\n",
            summary.perfect_pairs, summary.predicted, summary.mismatches, summary.bound
        ),
        _ => to_json(&summary),
    })
}

fn cmd_equiv(s: usize, t: usize, format: Format) -> Result<(String, bool), CliError> {
    no_dot(format, "an equivalence report")?;
    let report = build_equivalence_report(s, t)?;
    let out = match format {
        Format::Text => format!(
            "s={} t={} n={} factors_matched={}/{} direct_bound={} product_bound={} bounds_equal={}\n",
            report.s,
            report.t,
            report.n,
            report.n - report.failures.len(),
            report.n,
            report.direct_bound,
            report.product_bound,
            report.bounds_equal
        ),
        _ => to_json(&report),
    };
    Ok((out, report.holds()))
}

fn cmd_oracle(
    n: usize,
    expensive: bool,
    dump: Option<&PathBuf>,
    format: Format,
) -> Result<String, CliError> {
    no_dot(format, "an oracle report")?;
    let report = exact_c(n, expensive)?;
    if let Some(path) = dump {
        let mut w = io::BufWriter::new(fs::File::create(path)?);
        for fz in enumerate_factorizations(n)? {
            serde_json::to_writer(&mut w, &fz).map_err(|e| invalid(e.to_string()))?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
    }
    Ok(match format {
        Format::Text => format!(
            "n={} exact_c={} lower_bound={} factorizations_seen={}\n",
            report.n, report.exact_c, report.lower_bound, report.factorizations_seen
        ),
        _ => to_json(&report),
    })
}

fn cmd_verify(input: &PathBuf, format: Format) -> Result<String, CliError> {
    no_dot(format, "a verification report")?;
    let raw = fs::read_to_string(input)
        .map_err(|e| invalid(format!("{}: {e}", input.display())))?;
    let fz: Factorization = serde_json::from_str(&raw)
        .map_err(|e| invalid(format!("{}: {e}", input.display())))?;
    let pairs = perfect_pairs(&fz);
    let report = VerifyReport {
        n: fz.order(),
        factors: fz.len(),
        perfect_pairs: pairs.len(),
        pairs,
    };
    Ok(match format {
        Format::Text => format!(
            "valid factorization of K_{} with {} factors; perfect_pairs={}\n",
            report.n, report.factors, report.perfect_pairs
        ),
        _ => to_json(&report),
    })
}

/// Runs one command; returns the rendered output and whether the run
/// succeeded in the sense of the exit code.
pub fn execute(config: &RunConfig) -> Result<(String, bool), CliError> {
    let format = config.format;
    match &config.command {
        Command::Construct { n, k, even } => Ok((cmd_construct(*n, *k, *even, format)?, true)),
        Command::Pairs {
            n,
            matrix,
            witness,
            k,
            l,
        } => {
            let pair = if *witness { k.zip(*l) } else { None };
            Ok((cmd_pairs(*n, *matrix, pair, format)?, true))
        }
        Command::Product { s, t, k, l } => Ok((cmd_product(*s, *t, k.zip(*l), format)?, true)),
        Command::Equiv { s, t } => cmd_equiv(*s, *t, format),
        Command::Oracle { n, expensive, dump } => {
            if *n == EXPENSIVE_ORDER && !*expensive {
                return Err(CliError::CostGuard(format!(
                    "order {n} enumerates over a billion factorizations; rerun with --expensive"
                )));
            }
            Ok((cmd_oracle(*n, *expensive, dump.as_ref(), format)?, true))
        }
        Command::Verify { input } => Ok((cmd_verify(input, format)?, true)),
    }
}

/// Parses `args`, runs the command and writes to the given streams. Returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&config) {
        Ok((out, ok)) => {
            let written = match &config.output {
                Some(path) => fs::write(path, &out),
                None => stdout.write_all(out.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INVALID;
            }
            if ok {
                EXIT_OK
            } else {
                let _ = writeln!(stderr, "error: equivalence check failed");
                EXIT_INVALID
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}
