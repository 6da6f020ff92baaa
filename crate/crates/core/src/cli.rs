//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or unreadable input, 2 strategy failure,
//! 3 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dangerous::{MultiNormParams, NormTerm, RqRecord};
use crate::dnorm::DigitSequence;
use crate::exactnum::{Exponent, RInterval, Rational};
use crate::game::{GameParams, PlayError, Transcript};
use crate::strategy::{choose_c, play_recorded, AdversaryKind, PaperA};
use crate::verify::{facts_check, liminf_scan, scan_csv, verify_transcript, QuadraticSurd, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_STRATEGY: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Caps the worker pool when set to a positive integer.
pub const WORKERS_ENV: &str = "MIXEDBAD_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "mixedbad", version, about = "Schmidt games for mixed badly approximable numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play a game and write its transcript.
    Play(PlayArgs),
    /// Replay a transcript and run the avoidance oracle on its final interval.
    Verify(VerifyArgs),
    /// Check the counting facts band by band.
    Facts(FactsArgs),
    /// Running minimum of q |q|_D ||q x|| as CSV.
    Scan(ScanArgs),
    /// Print omega(q) and |q|_D.
    Norm(NormArgs),
}

#[derive(Args, Debug)]
struct PlayArgs {
    #[arg(long)]
    alpha: Option<Rational>,
    #[arg(long)]
    beta: Option<Rational>,
    #[arg(long)]
    b1: Option<RInterval>,
    #[arg(long)]
    i: Option<Rational>,
    #[arg(long)]
    j: Option<Rational>,
    #[arg(long)]
    seq: Option<DigitSequence>,
    #[arg(long)]
    rounds: Option<u32>,
    /// adv:leftmost, adv:rightmost, adv:greedy, adv:random[:SEED].
    #[arg(long)]
    adversary: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Extra norm term "SEQ;I"; repeatable.
    #[arg(long)]
    multi: Vec<String>,
    /// paper-a or combine:paper-a+paper-a+...
    #[arg(long)]
    strategy: Option<String>,
    /// Combine one paper-a delegate per entry of the config's delegates.
    #[arg(long)]
    combine: bool,
    /// JSON with transcript-style fields and optional per-delegate targets.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    transcript: PathBuf,
    /// Informational range beyond the horizon.
    #[arg(long)]
    qmax: Option<u64>,
    /// "auto" or an explicit pass/fail bound on q.
    #[arg(long, default_value = "auto")]
    horizon: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the direct inequality and the effective constant.
    #[arg(long)]
    skip_direct: bool,
}

#[derive(Args, Debug)]
struct FactsArgs {
    #[arg(long)]
    i: Rational,
    #[arg(long)]
    j: Rational,
    /// Defaults to the constant chosen for the game.
    #[arg(long)]
    c: Option<Rational>,
    #[arg(long, default_value = "1/4")]
    alpha: Rational,
    #[arg(long)]
    beta: Rational,
    #[arg(long, default_value = "0,1")]
    b1: RInterval,
    #[arg(long, default_value_t = 32)]
    nmax: u32,
    #[arg(long, default_value_t = 100_000)]
    qcap: u64,
    #[arg(long, default_value = "per:2")]
    seq: DigitSequence,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Rational "3/7" or surd "surd:a,b,d,e" for (a + b sqrt d)/e.
    #[arg(long)]
    x: QuadraticSurd,
    #[arg(long)]
    seq: DigitSequence,
    #[arg(long)]
    qmax: u64,
    /// Output file; stdout when absent or "-".
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NormArgs {
    #[arg(long)]
    seq: DigitSequence,
    #[arg(long)]
    q: BigUint,
}

/// Optional inputs for `play`; flags take precedence.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
pub struct PlayConfig {
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub b1: Option<String>,
    pub seqs: Option<Vec<String>>,
    pub i: Option<Vec<String>>,
    pub j: Option<String>,
    pub rounds: Option<u32>,
    pub adversary: Option<String>,
    pub seed: Option<u64>,
    pub strategy: Option<String>,
    #[serde(default)]
    pub delegates: Vec<DelegateConfig>,
}

/// One delegate's target; `c` defaults to the chosen constant.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DelegateConfig {
    pub seqs: Vec<String>,
    pub i: Vec<String>,
    pub j: String,
    pub c: Option<String>,
}

#[derive(Debug)]
struct Fail {
    code: i32,
    msg: String,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }
}

type CmdResult = Result<(), Fail>;

/// Runs the CLI with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing to the given streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = configure_workers().and_then(|()| match cli.command {
        Command::Play(a) => cmd_play(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Facts(a) => cmd_facts(a, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::Norm(a) => cmd_norm(a, out),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn configure_workers() -> CmdResult {
    let Some(raw) = std::env::var_os(WORKERS_ENV) else {
        return Ok(());
    };
    let n = raw
        .to_str()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Fail::usage(format!("{WORKERS_ENV} must be a positive integer")))?;
    // A second call in the same process finds the pool already built.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn io_fail(path: &Path, e: std::io::Error) -> Fail {
    Fail::usage(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, body: &str) -> CmdResult {
    fs::write(path, body).map_err(|e| io_fail(path, e))
}

fn parse_lit<T: std::str::FromStr>(what: &str, s: &str) -> Result<T, Fail>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| Fail::usage(format!("bad {what} {s:?}: {e}")))
}

fn build_target(seqs: &[String], is: &[String], j: &str) -> Result<MultiNormParams, Fail> {
    if seqs.is_empty() || seqs.len() != is.len() {
        return Err(Fail::usage("each target needs matching, nonempty seqs and i"));
    }
    let mut norms = Vec::new();
    for (s, i) in seqs.iter().zip(is) {
        let seq: DigitSequence = parse_lit("sequence", s)?;
        let i: Rational = parse_lit("exponent i", i)?;
        let exponent = Exponent::from_rational(&i).map_err(|e| Fail::usage(e.to_string()))?;
        norms.push(NormTerm { seq, exponent });
    }
    let j: Rational = parse_lit("exponent j", j)?;
    let j = Exponent::from_rational(&j).map_err(|e| Fail::usage(e.to_string()))?;
    MultiNormParams::new(norms, j).map_err(|e| Fail::usage(e.to_string()))
}

/// Number of delegates named by a strategy string, or `None` for plain
/// `paper-a`.
fn parse_strategy(s: &str) -> Result<Option<usize>, Fail> {
    if s == "paper-a" {
        return Ok(None);
    }
    let body = s
        .strip_prefix("combine:")
        .ok_or_else(|| Fail::usage(format!("unknown strategy {s:?}")))?;
    let parts: Vec<&str> = body.split('+').collect();
    if parts.iter().any(|p| *p != "paper-a") {
        return Err(Fail::usage(format!("only paper-a delegates are supported, got {s:?}")));
    }
    Ok(Some(parts.len()))
}

struct PlaySetup {
    game: GameParams,
    rounds: u32,
    adversary: AdversaryKind,
    seed: u64,
    /// One entry per delegate; a single entry for a plain game.
    targets: Vec<(MultiNormParams, Option<Rational>)>,
}

fn play_setup(a: &PlayArgs) -> Result<PlaySetup, Fail> {
    let cfg: PlayConfig = match &a.config {
        Some(path) => {
            let body = fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
            serde_json::from_str(&body).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?
        }
        None => PlayConfig::default(),
    };
    let rational = |flag: &Option<Rational>, field: &Option<String>, name: &str| -> Result<Rational, Fail> {
        match (flag, field) {
            (Some(v), _) => Ok(v.clone()),
            (None, Some(s)) => parse_lit(name, s),
            (None, None) => Err(Fail::usage(format!("missing --{name}"))),
        }
    };
    let alpha = rational(&a.alpha, &cfg.alpha, "alpha")?;
    let beta = rational(&a.beta, &cfg.beta, "beta")?;
    let b1 = match (&a.b1, &cfg.b1) {
        (Some(v), _) => v.clone(),
        (None, Some(s)) => parse_lit("b1", s)?,
        (None, None) => return Err(Fail::usage("missing --b1")),
    };
    let game = GameParams::new(alpha, beta, b1).map_err(|e| Fail::usage(e.to_string()))?;
    let rounds = a.rounds.or(cfg.rounds).ok_or_else(|| Fail::usage("missing --rounds"))?;
    if rounds == 0 {
        return Err(Fail::usage("--rounds must be at least 1"));
    }

    let mut seed = a.seed.or(cfg.seed).unwrap_or(0);
    let adv = a.adversary.clone().or(cfg.adversary.clone()).unwrap_or_else(|| "adv:leftmost".into());
    let adversary = if adv == "adv:random" || adv == "random" {
        AdversaryKind::Random(seed)
    } else {
        let kind: AdversaryKind = adv.parse().map_err(Fail::usage)?;
        if let AdversaryKind::Random(s) = kind {
            seed = s;
        }
        kind
    };

    let strategy = a.strategy.clone().or(cfg.strategy.clone()).unwrap_or_else(|| "paper-a".into());
    let mut named = parse_strategy(&strategy)?;
    if a.combine && named.is_none() {
        named = Some(cfg.delegates.len());
    }
    let targets = match named {
        Some(k) => {
            if cfg.delegates.len() != k || k == 0 {
                return Err(Fail::usage(format!(
                    "combined play needs {k} delegate blocks in --config, found {}",
                    cfg.delegates.len()
                )));
            }
            cfg.delegates
                .iter()
                .map(|d| {
                    let c = d.c.as_deref().map(|c| parse_lit("c", c)).transpose()?;
                    Ok((build_target(&d.seqs, &d.i, &d.j)?, c))
                })
                .collect::<Result<Vec<_>, Fail>>()?
        }
        None => {
            let (mut seqs, mut is) = match (&a.seq, &a.i) {
                (Some(s), Some(i)) => (vec![s.to_string()], vec![i.to_string()]),
                (None, None) => (cfg.seqs.clone().unwrap_or_default(), cfg.i.clone().unwrap_or_default()),
                _ => return Err(Fail::usage("--seq and --i must be given together")),
            };
            for m in &a.multi {
                let (s, i) = m
                    .split_once(';')
                    .ok_or_else(|| Fail::usage(format!("--multi expects \"SEQ;I\", got {m:?}")))?;
                seqs.push(s.trim().to_string());
                is.push(i.trim().to_string());
            }
            if seqs.is_empty() {
                return Err(Fail::usage("missing --seq and --i"));
            }
            let j = match (&a.j, &cfg.j) {
                (Some(j), _) => j.to_string(),
                (None, Some(j)) => j.clone(),
                (None, None) => return Err(Fail::usage("missing --j")),
            };
            vec![(build_target(&seqs, &is, &j)?, None)]
        }
    };
    if game.alpha() > &Rational::frac(1, 4) {
        return Err(Fail::usage(format!(
            "paper-a needs alpha <= 1/4, got {}",
            game.alpha()
        )));
    }
    Ok(PlaySetup {
        game,
        rounds,
        adversary,
        seed,
        targets,
    })
}

fn cmd_play(a: PlayArgs, out: &mut dyn Write) -> CmdResult {
    let setup = play_setup(&a)?;
    let delegates: Vec<PaperA> = setup
        .targets
        .into_iter()
        .map(|(t, c)| match c {
            Some(c) => PaperA::new(t).with_c(c),
            None => PaperA::new(t),
        })
        .collect();
    let transcript = play_recorded(setup.game, delegates, setup.adversary, setup.seed, setup.rounds)
        .map_err(|e| Fail {
            code: match e {
                PlayError::NoRounds => EXIT_USAGE,
                _ => EXIT_STRATEGY,
            },
            msg: e.to_string(),
        })?;
    if let Some(path) = &a.out {
        write_file(path, &transcript.to_json())?;
    }
    let cs: Vec<String> = transcript.targets().into_iter().map(|r| r.c).collect();
    let _ = writeln!(out, "final={},{}", transcript.final_interval.lo, transcript.final_interval.hi);
    let _ = writeln!(out, "c={}", cs.join(";"));
    Ok(())
}

fn witness_text(w: &RqRecord) -> String {
    let r = match &w.r {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    format!("{r}/{}", w.q)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let horizon = match a.horizon.as_str() {
        "auto" => None,
        h => Some(parse_lit::<u64>("--horizon", h)?),
    };
    let path = &a.transcript;
    let body = fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
    let transcript = Transcript::from_json(&body).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    let opts = VerifyOptions {
        horizon,
        q_max: a.qmax,
        skip_direct: a.skip_direct,
    };
    let report = verify_transcript(&transcript, &opts).map_err(|e| Fail {
        code: if e.is_rule_violation() { EXIT_VERIFY } else { EXIT_USAGE },
        msg: e.to_string(),
    })?;
    if let Some(p) = &a.out {
        let mut json = serde_json::to_string_pretty(&report).expect("reports serialize");
        json.push('\n');
        write_file(p, &json)?;
    }
    for t in &report.targets {
        let _ = write!(
            out,
            "delegate {}: horizon={} candidates={} violations={}",
            t.delegate, t.horizon, t.avoidance.candidates, t.avoidance.violation_count
        );
        if let Some(b) = &t.beyond_horizon {
            let _ = write!(out, " beyond_horizon_violations={}", b.violation_count);
        }
        if let Some(n) = t.direct_violation_count {
            let _ = write!(out, " direct_violations={n}");
        }
        let _ = writeln!(out, " c_eff={}", t.c_eff.as_deref().unwrap_or("none"));
    }
    match report.witness() {
        None => {
            let _ = writeln!(out, "PASS final={}", report.final_interval);
            Ok(())
        }
        Some((d, w)) => {
            let _ = writeln!(out, "FAIL witness={} delegate={d}", witness_text(w));
            Err(Fail {
                code: EXIT_VERIFY,
                msg: format!("final interval meets the neighbourhood of {}", witness_text(w)),
            })
        }
    }
}

fn cmd_facts(a: FactsArgs, out: &mut dyn Write) -> CmdResult {
    let game = GameParams::new(a.alpha, a.beta, a.b1).map_err(|e| Fail::usage(e.to_string()))?;
    let target = MultiNormParams::single(&a.i, &a.j, a.seq).map_err(|e| Fail::usage(e.to_string()))?;
    let c = a
        .c
        .unwrap_or_else(|| choose_c(&target, game.alpha(), game.beta(), game.b1()));
    let params = target.with_c(c).map_err(|e| Fail::usage(e.to_string()))?;
    let report = facts_check(&params, &game, a.nmax, a.qcap);
    let mut json = serde_json::to_string_pretty(&report).expect("reports serialize");
    json.push('\n');
    match &a.out {
        Some(p) => {
            write_file(p, &json)?;
            let _ = writeln!(
                out,
                "c={} bands={} skipped={} failures={}",
                report.c,
                report.bands.len(),
                report.skipped.len(),
                report.failures.len()
            );
        }
        None => {
            let _ = write!(out, "{json}");
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Fail {
            code: EXIT_VERIFY,
            msg: format!("{} fact failures", report.failures.len()),
        })
    }
}

fn cmd_scan(a: ScanArgs, out: &mut dyn Write) -> CmdResult {
    let csv = scan_csv(&liminf_scan(&a.x, &a.seq, a.qmax));
    match a.csv.as_deref() {
        Some(p) if p != Path::new("-") => write_file(p, &csv),
        _ => {
            let _ = write!(out, "{csv}");
            Ok(())
        }
    }
}

fn cmd_norm(a: NormArgs, out: &mut dyn Write) -> CmdResult {
    let v = a.seq.d_norm(&a.q).map_err(|e| Fail::usage(e.to_string()))?;
    let _ = writeln!(out, "omega={} |q|_D={}", v.level, v.value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("mixedbad").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn norm_prints_level_and_value() {
        let (code, out, _) = run_capture(&["norm", "--seq", "per:2", "--q", "12"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "omega=2 |q|_D=1/4\n");
        assert_eq!(run_capture(&["norm", "--seq", "per:2", "--q", "0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["norm", "--seq", "per:1", "--q", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_and_bad_flags() {
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["play", "--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["norm", "--seq", "per:2"]).0, EXIT_USAGE);
    }

    #[test]
    fn scan_to_stdout() {
        let (code, out, _) = run_capture(&["scan", "--x", "1/3", "--seq", "per:2", "--qmax", "10"]);
        assert_eq!(code, EXIT_OK);
        let last = out.lines().last().unwrap();
        assert!(last.ends_with(",0"), "{last}");
    }

    #[test]
    fn strategy_strings() {
        assert_eq!(parse_strategy("paper-a").unwrap(), None);
        assert_eq!(parse_strategy("combine:paper-a+paper-a").unwrap(), Some(2));
        assert!(parse_strategy("combine:paper-a+adv:greedy").is_err());
        assert!(parse_strategy("paper-b").is_err());
    }

    #[test]
    fn play_rejects_wide_alpha_and_zero_rounds() {
        let base = ["play", "--beta", "1/2", "--b1", "0,1", "--i", "1/2", "--j", "1/2", "--seq", "per:2"];
        let mut wide = base.to_vec();
        wide.extend(["--alpha", "1/3", "--rounds", "3"]);
        assert_eq!(run_capture(&wide).0, EXIT_USAGE);
        let mut zero = base.to_vec();
        zero.extend(["--alpha", "1/4", "--rounds", "0"]);
        assert_eq!(run_capture(&zero).0, EXIT_USAGE);
        let mut ok = base.to_vec();
        ok.extend(["--alpha", "1/4", "--rounds", "4", "--adversary", "adv:random", "--seed", "3"]);
        let (code, out, _) = run_capture(&ok);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("c=1/4096"), "{out}");
    }
}
