//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use codescope_core::analysis::{analyze, AnalysisOptions};
use codescope_core::classify::{canonical_form, classify_mds, Equivalence, MonomialTransform};
use codescope_core::constructions as cons;
use codescope_core::{Elem, Engine, Error as CoreError, Field, LinearCode};

use crate::caps::{self, CostLevel};
use crate::claims::{run_claims, ClaimResult, Context, Verdict};
use crate::error::{Error, Result};
use crate::format::{parse_code, write_code};
use crate::report::{AnalyzeReport, ClassifyReport, CodeJson};

#[derive(Debug, Parser)]
#[command(name = "codescope", version, about = "Exact analysis of linear codes over small finite fields")]
pub struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineArg {
    Auto,
    Primal,
    DualCharacter,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Primal => Engine::Primal,
            EngineArg::DualCharacter => Engine::DualCharacter,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Profile a code given in the text format.
    Analyze {
        codefile: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        /// Largest number of vectors the primal engine may walk.
        #[arg(long)]
        primal_cap: Option<u64>,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include every distinct coset distribution in the report.
        #[arg(long)]
        full_coset_table: bool,
    },
    /// Build a named code and print it in the text format.
    Construct {
        /// repetition, dual-repetition, hamming, simplex, ders, rs, hyperoval,
        /// selfdual-2-1-2, selfdual-4-2-3 or named:<name>
        family: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Run the claim suite.
    Verify {
        /// Comma-separated claim ids (default: all).
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        #[arg(long, value_enum, default_value = "default")]
        max_cost: CostLevel,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classify all MDS codes with the given parameters.
    Classify {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Allow field automorphisms in addition to monomial maps.
        #[arg(long)]
        semilinear: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List self-dual [I | A] codes with minimum distance at least d.
    SelfdualSearch {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command, writing
/// human-readable output to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match pool.install(|| execute(&cli, out)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit_json<T: Serialize>(value: &T, path: &Path, out: &mut (dyn Write + Send)) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if path.as_os_str() == "-" {
        writeln!(out, "{text}")?;
    } else {
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn to_stdout(json: &Option<PathBuf>) -> bool {
    json.as_deref().is_some_and(|j| j.as_os_str() == "-")
}

fn field(q: u32) -> Result<Arc<Field>> {
    Ok(Arc::new(Field::of_order(q)?))
}

fn require<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::Usage(format!("`{family}` needs --{flag}")))
}

fn flag_text(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    match &cli.command {
        Command::Analyze { codefile, engine, primal_cap, json, full_coset_table } => {
            let code = parse_code(&std::fs::read_to_string(codefile)?)?;
            let mut caps = caps::from_env(codescope_core::Caps::default())?;
            if let Some(c) = primal_cap {
                caps.primal = *c;
            }
            let opts = AnalysisOptions { caps, engine: (*engine).into(), cr_early_exit: !full_coset_table };
            let a = analyze(&code, &opts)?;
            let report = AnalyzeReport::new(&code, &a, *full_coset_table);
            let p = &a.profile;
            if !to_stdout(json) {
                writeln!(
                    out,
                    "[{}, {}, {}]_{}  e = {}  rho = {}  s = {}  s' = {}",
                    p.n, p.k, p.d, p.q, p.e, p.rho, p.s, p.s_prime
                )?;
                writeln!(out, "weights: {:?}", a.spectra.primal.counts())?;
                for (name, f) in [
                    ("MDS", p.is_mds),
                    ("Griesmer", p.is_griesmer),
                    ("perfect", p.is_perfect),
                    ("quasi-perfect", p.is_quasi_perfect),
                    ("self-dual", p.is_self_dual),
                    ("CR", p.is_cr),
                    ("UPWS", p.is_upws),
                ] {
                    writeln!(out, "{name:>14}: {} ({})", flag_text(f.value), f.provenance.name())?;
                }
                if let Some(b) = &a.upws.beta {
                    writeln!(out, "packing coefficients: {}", b.as_fractions().join(" "))?;
                }
            }
            if let Some(path) = json {
                emit_json(&report, path, out)?;
            }
            Ok(0)
        }
        Command::Construct { family, q, k, n, output } => {
            let code = construct(family, *q, *k, *n)?;
            let text = write_code(&code, Some(&format!("{family} [{}, {}]_{}", code.n(), code.k(), code.q())));
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => write!(out, "{text}")?,
            }
            Ok(0)
        }
        Command::Verify { claims, max_cost, json } => {
            let ctx = Context { level: *max_cost, caps: caps::from_env(max_cost.caps())? };
            let results = run_claims(claims, &ctx)?;
            let mut sink = std::io::sink();
            let human: &mut dyn Write = if to_stdout(json) { &mut sink } else { &mut *out };
            for r in &results {
                let verdict = match r.verdict {
                    Verdict::Verified => "verified",
                    Verdict::Refuted => "REFUTED",
                    Verdict::SkippedCost => "skipped (cost)",
                };
                writeln!(human, "{:<4} {:<15} {:>8} ms  {}", r.claim_id, verdict, r.cost_ms, r.statement)?;
            }
            if let Some(path) = json {
                emit_json(&results, path, out)?;
            }
            Ok(verify_exit_code(&results))
        }
        Command::Classify { q, n, k, semilinear, json } => {
            let f = field(*q)?;
            let kind = if *semilinear { Equivalence::Semilinear } else { Equivalence::Monomial };
            let opts = AnalysisOptions { caps: caps::from_env(codescope_core::Caps::default())?, ..Default::default() };
            let report = classify_mds(&f, *n, *k, kind, &opts)?;
            let probes = orbit_probes(&f, &report, kind, cli.seed)?;
            let mut sink = std::io::sink();
            let human: &mut dyn Write = if to_stdout(json) { &mut sink } else { &mut *out };
            writeln!(
                human,
                "[{n}, {k}]_{q}: {} systematic MDS codes, {} {} classes",
                report.total_codes,
                report.classes.len(),
                kind.name()
            )?;
            for (i, c) in report.classes.iter().enumerate() {
                let p = &c.analysis.profile;
                writeln!(
                    human,
                    "class {i}: orbit {} rho {} s {} CR {} UPWS {} self-dual member {}",
                    c.orbit_size,
                    p.rho,
                    p.s,
                    flag_text(p.is_cr.value),
                    flag_text(p.is_upws.value),
                    if c.self_dual_member { "yes" } else { "no" }
                )?;
            }
            if !probes {
                return Err(CoreError::InvariantViolated("a random transform left its equivalence class".into()).into());
            }
            if let Some(path) = json {
                emit_json(&ClassifyReport::new(&report), path, out)?;
            }
            Ok(0)
        }
        Command::SelfdualSearch { q, n, k, d, json } => {
            let found = cons::self_dual_search(&field(*q)?, *n, *k, *d)?;
            let mut sink = std::io::sink();
            let human: &mut dyn Write = if to_stdout(json) { &mut sink } else { &mut *out };
            writeln!(human, "{} self-dual [{n}, {k}, >={d}]_{q} codes in systematic form", found.len())?;
            for c in &found {
                write!(human, "{}", write_code(c, None))?;
            }
            if let Some(path) = json {
                let codes: Vec<CodeJson> = found.iter().map(CodeJson::new).collect();
                emit_json(&codes, path, out)?;
            }
            Ok(0)
        }
    }
}

/// 3 when any claim is refuted, else 0. Skipped claims do not fail the run.
pub fn verify_exit_code(results: &[ClaimResult]) -> i32 {
    if results.iter().any(|r| r.verdict == Verdict::Refuted) {
        3
    } else {
        0
    }
}

/// Applies 100 random group elements to every representative and checks the
/// image lands back in the same class.
fn orbit_probes(
    f: &Arc<Field>,
    report: &codescope_core::classify::ClassificationReport,
    kind: Equivalence,
    seed: u64,
) -> Result<bool> {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = report.n;
    for class in &report.classes {
        let rep = class.representative.generator();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let scales = (0..n).map(|_| Elem(rng.gen_range(1..f.q()) as u16)).collect();
            let automorphism = if kind == Equivalence::Semilinear { rng.gen_range(0..f.degree()) } else { 0 };
            let t = MonomialTransform { perm, scales, automorphism };
            if canonical_form(f, &t.apply(f, rep), kind)? != *rep {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn construct(family: &str, q: Option<u32>, k: Option<usize>, n: Option<usize>) -> Result<LinearCode> {
    if let Some(name) = family.strip_prefix("named:").or_else(|| family.strip_prefix("paper:")) {
        return Ok(cons::named_matrix(name)?);
    }
    let f = field(require(q, "q", family)?)?;
    let none = || Error::Usage(format!("no `{family}` code exists over F_{}", f.q()));
    Ok(match family {
        "repetition" => cons::repetition(&f, require(n, "n", family)?)?,
        "dual-repetition" => cons::dual_repetition(&f, require(n, "n", family)?)?,
        "hamming" => cons::hamming(&f)?,
        "simplex" => cons::simplex(&f)?,
        "ders" => cons::doubly_extended_rs(&f, require(k, "k", family)?)?,
        "rs" => cons::reed_solomon(&f, require(n, "n", family)?, require(k, "k", family)?)?,
        "hyperoval" => cons::hyperoval_code(&f)?,
        "selfdual-2-1-2" => cons::self_dual_2_1_2(&f)?.ok_or_else(none)?,
        "selfdual-4-2-3" => cons::self_dual_4_2_3(&f)?.ok_or_else(none)?,
        other => return Err(Error::Usage(format!("unknown family `{other}`"))),
    })
}
