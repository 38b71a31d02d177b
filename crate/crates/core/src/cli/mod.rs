//! Command-line front end. Every command reads JSON files and prints one
//! JSON report on standard output.
//!
//! Exit codes: `0` success, `2` unreadable or invalid input, `3` numerical
//! failure, `4` unsupported system.

pub mod files;

use crate::error::Error;
use crate::linalg::{CVector, Statistics, Tolerances};
use crate::mixed::{bosonic_ppt_separability, dual_spectrum, is_ppt, min_eigenvalue, partial_transpose, slater_number_one_test, wootters_lambdas};
use crate::modes::{fock_to_qubits, mode_bipartition_entropy};
use crate::pure::{
    concurrence_pure, multiparticle_rank_one, schmidt_decompose, slater_decompose_two_particle, two_particle_rank_below,
    Certificate, ProbeConfig, PureState, RankClaim, RankVerdict,
};
use crate::unitary::kak_decompose;
use crate::witness::{optimal_witness_example, witness_optimize, witness_value, SearchConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use files::{InputFile, MatrixFile, MatrixJson};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "slater", version, about = "Quantum correlations of identical particles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Relative threshold for rank decisions.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for every stochastic search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Restart count for searches and random probes.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Indented output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Compact output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Run the command on every `*.json` file in a directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slater or Schmidt rank with a certificate.
    Rank { file: Option<PathBuf> },
    /// Concurrence of a pure state of a canonical system.
    Concurrence { file: Option<PathBuf> },
    /// Closed-form concurrence of a density matrix of a canonical system.
    MixedConcurrence { file: Option<PathBuf> },
    /// Slater-number-one test for a density matrix.
    Slater1 { file: Option<PathBuf> },
    /// Partial transpose test, and PPT separability for bosons.
    Ppt {
        file: Option<PathBuf>,
        /// Number of leading factors that are transposed.
        #[arg(long, default_value_t = 1)]
        cut: usize,
    },
    /// Witness construction, evaluation and optimization.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// `U = V₁ U_d V₂` factorization of a two-particle unitary.
    Kak { file: Option<PathBuf> },
    /// Mode entanglement of a fermionic state.
    Modes {
        file: Option<PathBuf>,
        /// Comma-separated modes on the left of the cut.
        #[arg(long, value_delimiter = ',', required = true)]
        cut: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Fermion,
    Boson,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Print the example witness `1 - K/(k-1) P` as an operator file.
    Make {
        #[arg(long = "K")]
        big_k: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// `Tr(W ρ)` for a state or density file.
    Eval { witness: PathBuf, state: PathBuf },
    /// Subtract positive operators off the tangent set.
    Optimize { witness: PathBuf },
}

/// Error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedSystem(_) | Error::WrongKind(_) => 4,
            Error::NumericalFailure(_) | Error::DegenerateSystem(_) | Error::NotInRange(_) | Error::NotAnEdgeState(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Ctx {
    tol: Tolerances,
    seed: u64,
    budget: Option<usize>,
}

impl Ctx {
    fn search(&self) -> SearchConfig {
        let d = SearchConfig::default();
        SearchConfig { restarts: self.budget.unwrap_or(d.restarts), seed: self.seed, ..d }
    }

    fn probes(&self) -> ProbeConfig {
        ProbeConfig { n_random: self.budget.unwrap_or(ProbeConfig::default().n_random), seed: self.seed }
    }

    fn tolerances(&self) -> Value {
        json!({"sym": self.tol.sym, "recon": self.tol.recon, "rank_rel": self.tol.rank_rel})
    }
}

fn complex_json(v: &CVector) -> Value {
    if v.iter().all(|z| z.im == 0.0) {
        json!(v.iter().map(|z| z.re).collect::<Vec<_>>())
    } else {
        json!(v.iter().map(|z| json!({"re": z.re, "im": z.im})).collect::<Vec<_>>())
    }
}

fn load(path: &Path) -> CliResult<InputFile> {
    Ok(files::read(path)?)
}

fn load_state(path: &Path) -> CliResult<PureState> {
    match load(path)? {
        InputFile::State(f) => Ok(f.to_state()?),
        _ => Err(Failure { code: 2, message: format!("{}: expected a state file", path.display()) }),
    }
}

fn load_matrix(path: &Path) -> CliResult<MatrixFile> {
    match load(path)? {
        InputFile::Matrix(f) => Ok(f),
        _ => Err(Failure { code: 2, message: format!("{}: expected a density or operator file", path.display()) }),
    }
}

fn claim_json(c: RankClaim) -> Value {
    match c {
        RankClaim::RankOne => json!("rank_one"),
        RankClaim::Below(n) => json!(format!("rank_lt_{n}")),
        RankClaim::AtLeast(n) => json!(format!("rank_ge_{n}")),
    }
}

fn certificate_json(v: &RankVerdict) -> Value {
    match &v.certificate {
        Certificate::Contractions { max_abs, at, threshold } => json!({"max_contraction": max_abs, "at": at, "threshold": threshold}),
        Certificate::Probes { violations, probes_tried } => {
            let first = violations.first();
            json!({
                "probe": first.and_then(|c| c.probes.first()).map(complex_json),
                "chain": first.map(|c| c.probes.iter().map(complex_json).collect::<Vec<_>>()),
                "violations": violations.len(),
                "probes_tried": probes_tried,
            })
        }
    }
}

fn cmd_rank(path: &Path, ctx: &Ctx) -> CliResult<Value> {
    let s = load_state(path)?;
    let tol = &ctx.tol;
    if s.space().statistics().is_none() {
        let r = schmidt_decompose(&s, tol)?;
        return Ok(json!({"rank_claim": r.rank, "certificate": {"schmidt_values": r.values}, "tolerances": ctx.tolerances()}));
    }
    if s.particles() == 2 {
        let r = slater_decompose_two_particle(&s, tol)?;
        let above = two_particle_rank_below(&s, r.rank + 1, tol)?;
        let at = if r.rank >= 1 { Some(two_particle_rank_below(&s, r.rank, tol)?) } else { None };
        return Ok(json!({
            "rank_claim": r.rank,
            "certificate": {
                "canonical_values": r.values,
                "below_next": {"claim": claim_json(above.claim), "evidence": certificate_json(&above)},
                "at_rank": at.map(|v| json!({"claim": claim_json(v.claim), "evidence": certificate_json(&v)})),
            },
            "tolerances": ctx.tolerances(),
        }));
    }
    let v = multiparticle_rank_one(&s, &ctx.probes(), tol)?;
    Ok(json!({"rank_claim": claim_json(v.claim), "certificate": certificate_json(&v), "tolerances": ctx.tolerances()}))
}

fn cmd_concurrence(path: &Path) -> CliResult<Value> {
    let s = load_state(path)?;
    Ok(json!({"concurrence": concurrence_pure(&s)?}))
}

fn cmd_mixed_concurrence(path: &Path, ctx: &Ctx) -> CliResult<Value> {
    let rho = load_matrix(path)?.to_density(&ctx.tol)?;
    let l = wootters_lambdas(&rho, &ctx.tol)?;
    let c = (l[0] - l[1..].iter().sum::<f64>()).max(0.0);
    let spec: Vec<Value> = dual_spectrum(&rho)?.iter().map(|z| json!({"re": z.re, "im": z.im})).collect();
    Ok(json!({"concurrence": c, "lambdas": l, "dual_spectrum": spec}))
}

fn cmd_slater1(path: &Path, ctx: &Ctx) -> CliResult<Value> {
    let rho = load_matrix(path)?.to_density(&ctx.tol)?;
    let v = slater_number_one_test(&rho, &ctx.tol)?;
    Ok(json!({"is_class_1": v.is_class_1, "c_values": v.c_values}))
}

fn cmd_ppt(path: &Path, cut: usize, ctx: &Ctx) -> CliResult<Value> {
    let rho = load_matrix(path)?.to_density(&ctx.tol)?;
    let min_pt = min_eigenvalue(&partial_transpose(&rho, cut)?);
    let mut report = json!({"cut": cut, "min_pt_eigenvalue": min_pt, "ppt": is_ppt(&rho, cut, 1e-10)?});
    if matches!(rho.space(), crate::fock::Space::Symmetric { .. }) {
        match bosonic_ppt_separability(&rho, ctx.seed, &ctx.tol) {
            Ok(v) => {
                report["separability"] = json!(v.verdict);
                report["rank"] = json!(v.rank);
                report["decomposition"] = json!(v
                    .decomposition
                    .map(|d| d.iter().map(|(p, e)| json!({"p": p, "e": complex_json(e)})).collect::<Vec<_>>()));
            }
            Err(Error::UnsupportedSystem(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(report)
}

fn cmd_kak(path: &Path) -> CliResult<Value> {
    let InputFile::Unitary(f) = load(path)? else {
        return Err(Failure { code: 2, message: format!("{}: expected a unitary file", path.display()) });
    };
    let k = kak_decompose(&f.to_matrix()?, f.system)?;
    Ok(json!({
        "system": k.system,
        "residual": k.residual,
        "phases": k.phases,
        "v1": MatrixJson::from_matrix(&k.v1),
        "ud": MatrixJson::from_matrix(&k.ud),
        "v2": MatrixJson::from_matrix(&k.v2),
    }))
}

fn cmd_modes(path: &Path, cut: &[usize]) -> CliResult<Value> {
    let q = fock_to_qubits(&load_state(path)?)?;
    let entropy = mode_bipartition_entropy(&q, cut)?;
    let n = q.modes();
    let support: Vec<Value> = q
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm_sqr() > 0.0)
        .map(|(i, z)| json!({"bits": format!("{i:0n$b}"), "re": z.re, "im": z.im}))
        .collect();
    Ok(json!({"modes": n, "cut": cut, "entropy": entropy, "sectors": q.sectors(0.0), "support": support}))
}

fn cmd_witness(cmd: &WitnessCommand, ctx: &Ctx) -> CliResult<Value> {
    match cmd {
        WitnessCommand::Make { big_k, k, kind } => {
            let stat = match kind {
                KindArg::Fermion => Statistics::Fermion,
                KindArg::Boson => Statistics::Boson,
            };
            let w = optimal_witness_example(*big_k, *k, stat)?;
            Ok(serde_json::to_value(MatrixFile::from_witness(&w)).expect("serializable"))
        }
        WitnessCommand::Eval { witness, state } => {
            let w = load_matrix(witness)?.to_witness(&ctx.tol)?;
            let rho = match load(state)? {
                InputFile::State(f) => crate::mixed::DensityMatrix::pure(&f.to_state()?),
                InputFile::Matrix(m) => m.to_density(&ctx.tol)?,
                InputFile::Unitary(_) => return Err(Failure { code: 2, message: "expected a state or density file".into() }),
            };
            Ok(json!(witness_value(&w, &rho)?))
        }
        WitnessCommand::Optimize { witness } => {
            let w = load_matrix(witness)?.to_witness(&ctx.tol)?;
            let o = witness_optimize(&w, &ctx.search(), &ctx.tol)?;
            Ok(json!({
                "optimal": o.optimal,
                "tangent_span": o.tangent_span,
                "subtracted": o.subtracted,
                "xe": o.xe,
                "witness": MatrixFile::from_witness(&o.witness),
            }))
        }
    }
}

fn single_file(cmd: &Command) -> Option<&Option<PathBuf>> {
    match cmd {
        Command::Rank { file }
        | Command::Concurrence { file }
        | Command::MixedConcurrence { file }
        | Command::Slater1 { file }
        | Command::Ppt { file, .. }
        | Command::Kak { file }
        | Command::Modes { file, .. } => Some(file),
        Command::Witness(_) => None,
    }
}

fn dispatch(cmd: &Command, path: Option<&Path>, ctx: &Ctx) -> CliResult<Value> {
    let need = || path.ok_or_else(|| Failure { code: 2, message: "missing input file".into() });
    match cmd {
        Command::Rank { .. } => cmd_rank(need()?, ctx),
        Command::Concurrence { .. } => cmd_concurrence(need()?),
        Command::MixedConcurrence { .. } => cmd_mixed_concurrence(need()?, ctx),
        Command::Slater1 { .. } => cmd_slater1(need()?, ctx),
        Command::Ppt { cut, .. } => cmd_ppt(need()?, *cut, ctx),
        Command::Kak { .. } => cmd_kak(need()?),
        Command::Modes { cut, .. } => cmd_modes(need()?, cut),
        Command::Witness(w) => cmd_witness(w, ctx),
    }
}

/// 64-bit FNV-1a.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn run_batch(cmd: &Command, dir: &Path, ctx: &Ctx) -> CliResult<(Value, i32)> {
    if single_file(cmd).is_none_or(|f| f.is_some()) {
        return Err(Failure { code: 2, message: "--batch needs a single-file command without a file argument".into() });
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure { code: 2, message: format!("{}: {e}", dir.display()) })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let results: Vec<(Value, i32)> = paths
        .par_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let file_ctx = Ctx { seed: ctx.seed.wrapping_add(fnv1a(name.as_bytes())), ..*ctx };
            match dispatch(cmd, Some(p), &file_ctx) {
                Ok(report) => (json!({"file": name, "report": report}), 0),
                Err(f) => (json!({"file": name, "error": f.message, "exit_code": f.code}), f.code),
            }
        })
        .collect();
    let code = results.iter().map(|r| r.1).max().unwrap_or(0);
    Ok((Value::Array(results.into_iter().map(|r| r.0).collect()), code))
}

impl Clone for Ctx {
    fn clone(&self) -> Self {
        *self
    }
}

impl Copy for Ctx {}

/// Runs the tool on `args` (program name first), writing to `out` and `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let mut tol = Tolerances::default();
    if let Some(t) = cli.global.tol {
        tol.rank_rel = t;
    }
    let ctx = Ctx { tol, seed: cli.global.seed, budget: cli.global.budget };
    let result = match &cli.global.batch {
        Some(dir) => run_batch(&cli.command, dir, &ctx),
        None => {
            let path = single_file(&cli.command).and_then(|f| f.as_deref());
            dispatch(&cli.command, path, &ctx).map(|v| (v, 0))
        }
    };
    match result {
        Ok((value, code)) => {
            let text = if cli.global.pretty { serde_json::to_string_pretty(&value) } else { serde_json::to_string(&value) };
            let _ = writeln!(out, "{}", text.expect("reports are serializable"));
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
