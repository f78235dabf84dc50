//! Command-line front end: scenario runners, key-exchange demos, channel
//! budgets and swap-test statistics, all emitting seeded, reproducible
//! JSON reports.
//!
//! Exit codes: 0 when the scenario outcome stands (honest acceptance,
//! upheld signature), 1 on rejection or detection outcomes (the expected
//! result of attack demos), 2 on usage or configuration errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ghzsig_core::bits::BitString;
use ghzsig_core::fingerprint::{overlap, swap_test, LinearCode, MAX_EXACT_DISTANCE_BITS};
use ghzsig_core::harness::{run_scenario, table1_row, Attack, MessageSpec, ScenarioConfig};
use ghzsig_core::qkd::bb84_exchange;
use ghzsig_core::rng::{subrng, subseed};

#[derive(Parser)]
#[command(
    name = "ghzsig",
    version,
    about = "Quantum digital signature simulator over GHZ triplets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the honest end-to-end protocol and report the outcome.
    Honest(ScenarioArgs),
    /// Run with Eve tampering the returning signature particles.
    Eve(EveArgs),
    /// Run the receiver-forgery dispute: Bob claims a substituted message.
    Forge(ScenarioArgs),
    /// Run the signer-disavowal dispute: Alice denies her signature.
    Disavow(ScenarioArgs),
    /// Run one BB84 key exchange, optionally eavesdropped.
    Bb84(Bb84Args),
    /// Print the transmitted-qubit budget for an n-bit message.
    Table1(Table1Args),
    /// Measure swap-test statistics for a fingerprint code.
    FingerprintStats(StatsArgs),
}

#[derive(Args, Clone)]
struct ScenarioArgs {
    /// Message length in bits.
    #[arg(long)]
    n: Option<usize>,
    /// Fixed message bits, e.g. 011011 (default: seeded random message).
    #[arg(long)]
    message: Option<String>,
    /// Fingerprint expansion ratio (> 1).
    #[arg(long)]
    c: Option<f64>,
    /// Seed of the signer's private code generator.
    #[arg(long)]
    code_seed: Option<u64>,
    /// Fingerprint copies deposited with the arbitrator.
    #[arg(long)]
    r_copies: Option<usize>,
    /// Master seed; fully determines the run.
    #[arg(long)]
    seed: Option<u64>,
    /// Raw qubit count for the key exchange (default max(8·n, 64)).
    #[arg(long)]
    raw: Option<usize>,
    /// JSON file with configuration defaults; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seeded runs to execute (seeds seed, seed+1, ...), one JSON report
    /// per line.
    #[arg(long, default_value_t = 1)]
    runs: u64,
    /// Write reports to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EveArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// 1-based particle positions Eve bit-flips, e.g. 3,17.
    #[arg(long, value_delimiter = ',', conflicts_with = "phase")]
    flip: Vec<usize>,
    /// 1-based particle positions Eve phase-flips.
    #[arg(long, value_delimiter = ',')]
    phase: Vec<usize>,
    /// Eve also flips the matching encrypted-message bits (bit-flip runs
    /// only), hiding the tampering from verification.
    #[arg(long)]
    tamper_ciphertext: bool,
}

#[derive(Args)]
struct Bb84Args {
    /// Raw qubits to transmit.
    #[arg(long, default_value_t = 10_000)]
    raw: usize,
    /// Enable the intercept-resend eavesdropper.
    #[arg(long)]
    eve: bool,
    /// Fraction of sifted bits sacrificed for error estimation.
    #[arg(long, default_value_t = 0.25)]
    sample_fraction: f64,
    /// Error rate above which the exchange aborts.
    #[arg(long, default_value_t = 0.11)]
    qber_threshold: f64,
    /// Seed for the exchange.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    /// Message length in bits.
    #[arg(long)]
    n: usize,
    /// Fingerprint expansion ratio (> 1).
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    /// Fingerprint copies deposited with the arbitrator.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Write the row to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Code input length in bits.
    #[arg(long)]
    n: usize,
    /// Expansion ratio (> 1).
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    /// Code generator seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Swap tests per case.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Random message pairs to measure.
    #[arg(long, default_value_t = 3)]
    pairs: usize,
    /// Skip the exhaustive minimum-distance search (required for n > 16).
    #[arg(long)]
    no_exact: bool,
    /// Shard trials across this many threads.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Honest(args) => run_scenarios(args, Attack::None, false),
        Command::Eve(args) => {
            let n = effective_n(&args.scenario)?;
            let attack = if !args.flip.is_empty() {
                Attack::EveFlip(mask_from_positions(n, &args.flip)?)
            } else if !args.phase.is_empty() {
                Attack::EvePhase(mask_from_positions(n, &args.phase)?)
            } else {
                return Err("eve runs need --flip or --phase positions".into());
            };
            run_scenarios(args.scenario, attack, args.tamper_ciphertext)
        }
        Command::Forge(args) => run_scenarios(args, Attack::BobForge, false),
        Command::Disavow(args) => run_scenarios(args, Attack::AliceDisavow, false),
        Command::Bb84(args) => run_bb84(args),
        Command::Table1(args) => run_table1(args),
        Command::FingerprintStats(args) => run_stats(args),
    }
}

/// Message length after flag/config/message-inference resolution; needed
/// up front to size eve masks.
fn effective_n(args: &ScenarioArgs) -> Result<usize, String> {
    if let Some(n) = args.n {
        return Ok(n);
    }
    if let Some(message) = &args.message {
        return Ok(message.len());
    }
    if let Some(path) = &args.config {
        return Ok(load_config(path)?.n_bits);
    }
    Ok(ScenarioConfig::default().n_bits)
}

fn load_config(path: &PathBuf) -> Result<ScenarioConfig, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

fn build_config(
    args: &ScenarioArgs,
    attack: Attack,
    tamper_ciphertext: bool,
) -> Result<ScenarioConfig, String> {
    let mut config = match &args.config {
        Some(path) => load_config(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(message) = &args.message {
        let bits: BitString = message
            .parse()
            .map_err(|e: ghzsig_core::Error| format!("bad --message: {e}"))?;
        if args.n.is_none() {
            config.n_bits = bits.len();
        }
        config.message = MessageSpec::Fixed(bits);
    }
    if let Some(n) = args.n {
        config.n_bits = n;
    }
    if let Some(c) = args.c {
        config.c_requested = c;
    }
    if let Some(seed) = args.code_seed {
        config.code_seed = seed;
    }
    if let Some(r) = args.r_copies {
        config.r_copies = r;
    }
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if let Some(raw) = args.raw {
        config.bb84_raw_count = Some(raw);
    }
    config.attack = attack;
    config.eve_tampers_ciphertext = tamper_ciphertext;
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn run_scenarios(
    args: ScenarioArgs,
    attack: Attack,
    tamper_ciphertext: bool,
) -> Result<ExitCode, String> {
    if args.runs == 0 {
        return Err("--runs must be at least 1".into());
    }
    let base = build_config(&args, attack, tamper_ciphertext)?;
    let mut lines = String::new();
    let mut all_accepted = true;
    for offset in 0..args.runs {
        let config = ScenarioConfig {
            master_seed: base.master_seed.wrapping_add(offset),
            ..base.clone()
        };
        let report = run_scenario(&config).map_err(|e| e.to_string())?;
        all_accepted &= report.accepted;
        lines.push_str(&serde_json::to_string(&report).map_err(|e| e.to_string())?);
        lines.push('\n');
    }
    emit(&args.output, &lines)?;
    Ok(if all_accepted { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_bb84(args: Bb84Args) -> Result<ExitCode, String> {
    let mut rng = subrng(args.seed, "bb84-cli");
    let report = bb84_exchange(
        args.raw,
        args.eve,
        args.sample_fraction,
        args.qber_threshold,
        &mut rng,
    )
    .map_err(|e| e.to_string())?;
    let aborted = report.aborted;
    let mut text = serde_json::to_string(&report).map_err(|e| e.to_string())?;
    text.push('\n');
    emit(&args.output, &text)?;
    Ok(if aborted { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run_table1(args: Table1Args) -> Result<ExitCode, String> {
    let row = table1_row(args.n, args.c, args.r).map_err(|e| e.to_string())?;
    let mut text = serde_json::to_string(&row).map_err(|e| e.to_string())?;
    text.push('\n');
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CodeSummary {
    n: usize,
    m: usize,
    c_requested: f64,
    seed: u64,
    /// Exhaustive minimum distance; absent when skipped via --no-exact.
    d_min: Option<usize>,
}

#[derive(Serialize)]
struct StatsCase {
    kind: String,
    x: String,
    y: String,
    hamming: usize,
    overlap: f64,
    p_accept: f64,
    empirical: f64,
    std_err: f64,
    /// |empirical − p| in standard errors; absent when the case is exact
    /// (p = 1 has zero variance).
    deviation_sigmas: Option<f64>,
    healthy: bool,
}

#[derive(Serialize)]
struct StatsReport {
    code: CodeSummary,
    trials: usize,
    parallel: usize,
    cases: Vec<StatsCase>,
    healthy: bool,
}

fn run_stats(args: StatsArgs) -> Result<ExitCode, String> {
    if args.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    if args.parallel == 0 {
        return Err("--parallel must be at least 1".into());
    }
    let code = LinearCode::make(args.n, args.c, args.seed).map_err(|e| e.to_string())?;
    let d_min = if args.no_exact {
        None
    } else if args.n > MAX_EXACT_DISTANCE_BITS {
        return Err(format!(
            "exhaustive distance search needs n <= {MAX_EXACT_DISTANCE_BITS}; pass --no-exact to skip it"
        ));
    } else {
        Some(code.min_distance().map_err(|e| e.to_string())?)
    };

    let mut cases = Vec::new();
    let mut pair_rng = subrng(args.seed, "stats-pairs");
    let probe = BitString::random(args.n, &mut pair_rng);

    // Equal inputs: the swap test may never reject.
    cases.push(measure_case(
        "equal",
        &code,
        &probe,
        &probe,
        args.trials,
        args.parallel,
        subseed(args.seed, "stats-equal"),
    )?);

    // Orthogonal fixture: a one-bit repetition code maps its two messages
    // to codewords differing everywhere.
    let fixture = LinearCode::repetition(1, 2).map_err(|e| e.to_string())?;
    cases.push(measure_case(
        "orthogonal_fixture",
        &fixture,
        &"0".parse().unwrap(),
        &"1".parse().unwrap(),
        args.trials,
        args.parallel,
        subseed(args.seed, "stats-orthogonal"),
    )?);

    for index in 0..args.pairs {
        let x = BitString::random(args.n, &mut pair_rng);
        let y = loop {
            let y = BitString::random(args.n, &mut pair_rng);
            if y != x {
                break y;
            }
        };
        cases.push(measure_case(
            "random_pair",
            &code,
            &x,
            &y,
            args.trials,
            args.parallel,
            subseed(args.seed, &format!("stats-pair-{index}")),
        )?);
    }

    let healthy = cases.iter().all(|c| c.healthy);
    let report = StatsReport {
        code: CodeSummary {
            n: args.n,
            m: code.codeword_len(),
            c_requested: args.c,
            seed: args.seed,
            d_min,
        },
        trials: args.trials,
        parallel: args.parallel,
        cases,
        healthy,
    };
    let mut text = serde_json::to_string(&report).map_err(|e| e.to_string())?;
    text.push('\n');
    emit(&args.output, &text)?;
    Ok(if healthy { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn measure_case(
    kind: &str,
    code: &LinearCode,
    x: &BitString,
    y: &BitString,
    trials: usize,
    parallel: usize,
    seed: u64,
) -> Result<StatsCase, String> {
    let s = overlap(
        &code.fingerprint::<f64>(x).map_err(|e| e.to_string())?,
        &code.fingerprint::<f64>(y).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let p = (1.0 + s * s) / 2.0;

    // Shard the trials; each shard owns a domain-derived stream so the
    // result does not depend on scheduling.
    let shards: Vec<usize> = (0..parallel)
        .map(|i| trials / parallel + usize::from(i < trials % parallel))
        .collect();
    let accepts: usize = std::thread::scope(|scope| {
        let handles: Vec<_> = shards
            .iter()
            .enumerate()
            .map(|(i, &share)| {
                let code = code.clone();
                let (x, y) = (x.clone(), y.clone());
                scope.spawn(move || {
                    let mut rng = subrng(seed, &format!("shard-{i}"));
                    let mut accepts = 0usize;
                    for _ in 0..share {
                        let a = code.fingerprint::<f64>(&x).expect("validated above");
                        let b = code.fingerprint::<f64>(&y).expect("validated above");
                        if swap_test(a, b, &mut rng).expect("same code") {
                            accepts += 1;
                        }
                    }
                    accepts
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard panicked")).sum()
    });

    let empirical = accepts as f64 / trials as f64;
    let std_err = (p * (1.0 - p) / trials as f64).sqrt();
    let (deviation_sigmas, healthy) = if std_err == 0.0 {
        (None, empirical == p)
    } else {
        let dev = (empirical - p).abs() / std_err;
        (Some(dev), dev < 3.0)
    };

    let hamming = code
        .encode(x)
        .and_then(|cx| cx.hamming(&code.encode(y)?))
        .map_err(|e| e.to_string())?;

    Ok(StatsCase {
        kind: kind.to_string(),
        x: x.to_string(),
        y: y.to_string(),
        hamming,
        overlap: s,
        p_accept: p,
        empirical,
        std_err,
        deviation_sigmas,
        healthy,
    })
}

fn mask_from_positions(n: usize, positions: &[usize]) -> Result<BitString, String> {
    BitString::from_positions_1based(n, positions).map_err(|e| e.to_string())
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
