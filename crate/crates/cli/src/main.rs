//! `listlab` — reproducible experiments on binary linear codes: exact weight
//! distributions, level-function Fourier tables, collision cross-checks,
//! seeded decoding simulations, and list-size bound evaluation.
//!
//! Every command echoes its fully-resolved configuration into the JSON it
//! emits; reruns with the same seed produce identical output apart from the
//! `timestamp_unix` field.
//!
//! Exit codes: 0 success, 1 usage error, 2 resource cap exceeded,
//! 3 assertion failed (a bound was violated — a finding, not a crash).

mod selfcheck;
mod spec;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use listlab_core::caps::Caps;
use listlab_core::channel::{run_experiment, ChannelModel};
use listlab_core::codes::dual_code;
use listlab_core::collision::collision_cross_check;
use listlab_core::decode::{
    corollary_rm_bound, corollary_transitive_bound, rm_list_bound, transitive_list_bound,
};
use listlab_core::error::Error as CoreError;
use listlab_core::fourier::{character_row, level_coefficient_exact, parseval_identity_check};
use listlab_core::weights::{
    check_weight_bound, samorodnitsky_center_bound, samorodnitsky_small_bound,
    weight_distribution, TailMode,
};
use serde::Serialize;
use serde_json::json;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(name = "listlab", version, about = "Exact experiments on binary linear codes")]
struct Cli {
    /// Worker threads for parallel enumeration (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print block length, dimension, rate and family of a code.
    CodeInfo(CodeArgs),
    /// Exact weight distribution plus the transitive weight-bound check.
    WeightDist(WeightDistArgs),
    /// Exact level-function Fourier coefficient table.
    FourierTable(FourierArgs),
    /// Collision count by both methods; they must agree exactly.
    Collision(CollisionArgs),
    /// Seeded Monte Carlo list-decoding experiment.
    DecodeSim(DecodeSimArgs),
    /// Evaluate the list-decoding bound formulas in log2.
    Bounds(BoundsArgs),
    /// Run the exact-identity self-check suite.
    SelfCheck,
}

#[derive(Args)]
struct CodeArgs {
    /// Code spec: `rm <n> <d>` | `rep <block> <copies>` | `random <n> <dim> <seed>` | `file <path>`.
    #[arg(required = true, num_args = 1..)]
    code: Vec<String>,
    /// Write the full code document (matrices included) to this JSON file.
    #[arg(long)]
    dump: Option<String>,
}

#[derive(Args)]
struct WeightDistArgs {
    #[arg(required = true, num_args = 1..)]
    code: Vec<String>,
    /// Also write the distribution as CSV (weight,count).
    #[arg(long)]
    csv: Option<String>,
    /// Attested transitivity (affects only the report flag, not the check).
    #[arg(long, default_value_t = true)]
    transitive: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FourierArgs {
    /// Block length N.
    #[arg(long)]
    n_bits: usize,
    /// Level set S, e.g. `2` or `1,3` or `0..4`.
    #[arg(long)]
    levels: String,
    /// Also write the table as CSV (N,j,w,numerator).
    #[arg(long)]
    csv: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct CollisionArgs {
    #[arg(required = true, num_args = 1..)]
    code: Vec<String>,
    #[arg(long)]
    levels: String,
    /// Include the syndrome histogram in the output.
    #[arg(long, default_value_t = false)]
    histogram: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Default)]
struct DecodeSimArgs {
    /// Code spec; may also come from the config file (`code = rm 4 1`).
    #[arg(num_args = 0..)]
    code: Vec<String>,
    /// Key-value config file supplying defaults for the flags below.
    #[arg(long)]
    config: Option<String>,
    /// BSC flip probability.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Shell error model: weights, e.g. `2` or `1,3`.
    #[arg(long)]
    shell: Option<String>,
    /// List size.
    #[arg(long)]
    k: Option<usize>,
    /// Sweep over several list sizes, e.g. `1,4,16` (overrides --k).
    #[arg(long)]
    sweep_k: Option<String>,
    /// Level radius for the layered decoder (BSC only; omit for pure ML).
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write sweep results as CSV, one row per configuration.
    #[arg(long)]
    csv: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Which evaluator: transitive | rm | corollaries | samorodnitsky.
    #[arg(long)]
    which: String,
    #[arg(long)]
    epsilon: f64,
    /// Code rate η = dim/N (required for transitive/rm/samorodnitsky).
    #[arg(long)]
    eta: Option<f64>,
    /// Block length N (float: the interesting regimes exceed 2^64).
    #[arg(long)]
    n_bits: Option<f64>,
    /// Alternative to --n-bits: log2 N.
    #[arg(long)]
    log2_n: Option<f64>,
    /// Weight fraction α for the samorodnitsky evaluators.
    #[arg(long)]
    alpha: Option<f64>,
    /// log2 of the unspecified 2^{o(N)} factor (default 0, i.e. factor 1).
    #[arg(long, default_value_t = 0.0)]
    subexp_log2: f64,
    /// Reading of the samorodnitsky bound: cumulative | per-level.
    #[arg(long, default_value = "cumulative")]
    mode: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: String,
    config: serde_json::Value,
    timestamp_unix: u64,
    result: T,
    caveats: Vec<String>,
}

fn emit<T: Serialize>(
    command: &str,
    config: serde_json::Value,
    result: T,
    caveats: Vec<String>,
    out: Option<&str>,
) -> Result<()> {
    let envelope = Envelope {
        command: command.to_string(),
        config,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        result,
        caveats,
    };
    let text = serde_json::to_string_pretty(&envelope)?;
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    }
    println!("{text}");
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successes; everything else is usage.
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            std::process::exit(if benign { 0 } else { 1 });
        }
    };
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let caps = Caps::from_env();
    match run(cli.command, &caps) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let exit = if e
                .chain()
                .any(|c| matches!(c.downcast_ref::<CoreError>(), Some(CoreError::CapExceeded { .. })))
            {
                2
            } else {
                1
            };
            std::process::exit(exit);
        }
    }
}

fn run(command: Command, caps: &Caps) -> Result<i32> {
    match command {
        Command::CodeInfo(args) => cmd_code_info(args),
        Command::WeightDist(args) => cmd_weight_dist(args, caps),
        Command::FourierTable(args) => cmd_fourier_table(args, caps),
        Command::Collision(args) => cmd_collision(args, caps),
        Command::DecodeSim(args) => cmd_decode_sim(args, caps),
        Command::Bounds(args) => cmd_bounds(args),
        Command::SelfCheck => selfcheck::run(caps),
    }
}

fn cmd_code_info(args: CodeArgs) -> Result<i32> {
    let code = spec::parse_code_spec(&args.code)?;
    if let Some(path) = &args.dump {
        std::fs::write(path, code.to_json())?;
    }
    let dual = dual_code(&code);
    emit(
        "code-info",
        json!({ "code": spec::spec_string(&args.code), "dump": args.dump }),
        json!({
            "family": code.id(),
            "n_bits": code.n_bits(),
            "dimension": code.dimension(),
            "redundancy": code.redundancy(),
            "rate": code.rate(),
            "self_dual": code.is_self_dual(),
            "dual_family": dual.id(),
        }),
        vec![],
        None,
    )?;
    Ok(0)
}

fn cmd_weight_dist(args: WeightDistArgs, caps: &Caps) -> Result<i32> {
    let code = spec::parse_code_spec(&args.code)?;
    let dist = weight_distribution(&code, caps)?;
    let report = check_weight_bound(&code, args.transitive, caps)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, dist.to_csv())?;
    }
    let all_pass = report.all_pass;
    emit(
        "weight-dist",
        json!({
            "code": spec::spec_string(&args.code),
            "csv": args.csv,
            "transitive": args.transitive,
            "enum_cap": caps.enum_codewords,
        }),
        json!({
            "distribution": dist.to_doc(),
            "bound_check": report,
        }),
        if args.transitive {
            vec![]
        } else {
            vec!["transitivity not attested: the weight bound applies to transitive codes only".into()]
        },
        args.out.as_deref(),
    )?;
    Ok(if all_pass { 0 } else { 3 })
}

fn cmd_fourier_table(args: FourierArgs, caps: &Caps) -> Result<i32> {
    let n = args.n_bits;
    let levels = spec::parse_levels(&args.levels)?;
    // Per-(j, w) singleton numerators plus the set-level Parseval check.
    let mut rows = Vec::new();
    let mut csv = String::from("N,j,w,numerator\n");
    for w in 0..=n {
        let row = character_row(n, w, caps)?;
        for &j in &levels {
            csv.push_str(&format!("{n},{j},{w},{}\n", row[j]));
            rows.push(json!({ "j": j, "w": w, "numerator": row[j].to_string() }));
        }
    }
    let set_coeff_at_w0 = level_coefficient_exact(n, &levels, 0, caps)?;
    let parseval_ok = parseval_identity_check(n, &levels, caps)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, &csv)?;
    }
    emit(
        "fourier-table",
        json!({ "n_bits": n, "levels": levels, "csv": args.csv, "poly_cap": caps.poly_bits }),
        json!({
            "rows": rows,
            "shell_size": set_coeff_at_w0.numerator.to_string(),
            "parseval_ok": parseval_ok,
        }),
        vec![],
        args.out.as_deref(),
    )?;
    Ok(if parseval_ok { 0 } else { 3 })
}

fn cmd_collision(args: CollisionArgs, caps: &Caps) -> Result<i32> {
    let code = spec::parse_code_spec(&args.code)?;
    let levels = spec::parse_levels(&args.levels)?;
    let doc = collision_cross_check(&code, &levels, args.histogram, caps)?;
    let agree = doc.difference == "0";
    emit(
        "collision",
        json!({
            "code": spec::spec_string(&args.code),
            "levels": levels,
            "histogram": args.histogram,
            "shell_cap": caps.shell_size,
        }),
        &doc,
        vec![],
        args.out.as_deref(),
    )?;
    Ok(if agree { 0 } else { 3 })
}

fn cmd_decode_sim(mut args: DecodeSimArgs, caps: &Caps) -> Result<i32> {
    // Config file supplies defaults; explicit flags win.
    if let Some(path) = &args.config {
        let file = spec::parse_config_file(path)?;
        if args.code.is_empty() {
            if let Some(code) = file.get("code") {
                args.code = code.split_whitespace().map(str::to_string).collect();
            }
        }
        let fill_f64 = |slot: &mut Option<f64>, key: &str| -> Result<()> {
            if slot.is_none() {
                if let Some(v) = file.get(key) {
                    *slot = Some(v.parse()?);
                }
            }
            Ok(())
        };
        fill_f64(&mut args.epsilon, "epsilon")?;
        if args.shell.is_none() {
            args.shell = file.get("shell").cloned();
        }
        if args.k.is_none() {
            if let Some(v) = file.get("k") {
                args.k = Some(v.parse()?);
            }
        }
        if args.l.is_none() {
            if let Some(v) = file.get("l") {
                args.l = Some(v.parse()?);
            }
        }
        if args.trials.is_none() {
            if let Some(v) = file.get("trials") {
                args.trials = Some(v.parse()?);
            }
        }
        if args.seed.is_none() {
            if let Some(v) = file.get("seed") {
                args.seed = Some(v.parse()?);
            }
        }
    }
    if args.code.is_empty() {
        bail!("no code given (flag or `code = ...` in the config file)");
    }
    let code = spec::parse_code_spec(&args.code)?;
    let k = args.k.unwrap_or(1);
    let trials = args.trials.unwrap_or(10_000);
    let seed = args.seed.unwrap_or(0);
    let model = match (&args.shell, args.epsilon) {
        (Some(levels), None) => {
            ChannelModel::shell(code.n_bits(), spec::parse_levels(levels)?, seed)?
        }
        (None, Some(eps)) => ChannelModel::bsc(code.n_bits(), eps, seed)?,
        (None, None) => bail!("choose an error model: --epsilon or --shell"),
        (Some(_), Some(_)) => bail!("--epsilon and --shell are mutually exclusive"),
    };
    let k_values: Vec<usize> = match &args.sweep_k {
        Some(list) => spec::parse_levels(list)?
            .into_iter()
            .filter(|&k| k >= 1)
            .collect(),
        None => vec![k],
    };
    let mut results = Vec::new();
    let mut ok = true;
    let mut caveats = Vec::new();
    for &k in &k_values {
        let result = run_experiment(&code, &model, k, args.l, trials, caps)?;
        if result.bound.is_none() {
            caveats.push(format!("k={k}: no bound computable at this scale (collision caps)"));
        }
        if result.bound_vacuous {
            caveats.push(format!("k={k}: bound exceeds 1 and is vacuous at this block length"));
        }
        // Success iff the empirical rate respects the bound, or the bound is
        // vacuous / unavailable.
        ok &= match result.bound {
            Some(b) if b <= 1.0 => result.empirical_rate <= b + 1e-12,
            _ => true,
        };
        results.push((k, result));
    }
    if let Some(path) = &args.csv {
        let mut csv = String::from(
            "k,l,trials,seed,failures,empirical_rate,wilson_lo,wilson_hi,bound,bound_l\n",
        );
        for (k, r) in &results {
            csv.push_str(&format!(
                "{k},{},{},{},{},{},{},{},{},{}\n",
                args.l.map(|l| l.to_string()).unwrap_or_default(),
                r.trials,
                r.seed,
                r.failures,
                r.empirical_rate,
                r.wilson_ci95.0,
                r.wilson_ci95.1,
                r.bound.map(|b| b.to_string()).unwrap_or_default(),
                r.bound_l.map(|l| l.to_string()).unwrap_or_default(),
            ));
        }
        std::fs::write(path, csv)?;
    }
    let result_json = if args.sweep_k.is_some() {
        json!({ "sweep": results.iter().map(|(k, r)| json!({ "k": k, "result": r })).collect::<Vec<_>>() })
    } else {
        serde_json::to_value(&results[0].1)?
    };
    // Non-integer eps*N rounds to the nearest level, ties to even.
    let target_weight = args
        .epsilon
        .map(|eps| (eps * code.n_bits() as f64).round_ties_even() as u64);
    emit(
        "decode-sim",
        json!({
            "code": spec::spec_string(&args.code),
            "model": model,
            "k": k_values,
            "l": args.l,
            "target_weight": target_weight,
            "trials": trials,
            "seed": seed,
            "config_file": args.config,
            "csv": args.csv,
            "caps": { "shell": caps.shell_size, "enum": caps.enum_codewords },
        }),
        result_json,
        caveats,
        args.out.as_deref(),
    )?;
    Ok(if ok { 0 } else { 3 })
}

fn cmd_bounds(args: BoundsArgs) -> Result<i32> {
    let n_bits = match (args.n_bits, args.log2_n) {
        (Some(n), None) => n,
        (None, Some(l)) => l.exp2(),
        (Some(_), Some(_)) => bail!("--n-bits and --log2-n are mutually exclusive"),
        (None, None) => bail!("need --n-bits or --log2-n"),
    };
    let mut caveats = Vec::new();
    let result = match args.which.as_str() {
        "transitive" => {
            let eta = args.eta.ok_or_else(|| anyhow::anyhow!("--eta required"))?;
            json!({ "transitive": transitive_list_bound(args.epsilon, eta, n_bits)? })
        }
        "rm" => {
            let eta = args.eta.ok_or_else(|| anyhow::anyhow!("--eta required"))?;
            let rm = rm_list_bound(args.epsilon, eta, n_bits)?;
            let transitive = transitive_list_bound(args.epsilon, eta, n_bits)?;
            json!({ "rm": rm, "transitive_for_comparison": transitive })
        }
        "corollaries" => {
            json!({
                "transitive_corollary": corollary_transitive_bound(args.epsilon, n_bits)?,
                "rm_corollary": corollary_rm_bound(args.epsilon, n_bits)?,
            })
        }
        "samorodnitsky" => {
            let eta = args.eta.ok_or_else(|| anyhow::anyhow!("--eta required"))?;
            let alpha = args.alpha.ok_or_else(|| anyhow::anyhow!("--alpha required"))?;
            let mode = match args.mode.as_str() {
                "cumulative" => TailMode::Cumulative,
                "per-level" | "per_level" => TailMode::PerLevel,
                other => bail!("unknown mode {other:?}"),
            };
            caveats.push(format!(
                "the 2^(o(N)) factor is taken as 2^{}; it has no pinned constant",
                args.subexp_log2
            ));
            json!({
                "mode": mode,
                "small_weight": samorodnitsky_small_bound(eta, alpha, n_bits, args.subexp_log2)?,
                "center_weight": samorodnitsky_center_bound(eta, alpha, n_bits, args.subexp_log2)?,
                "subexp_log2": args.subexp_log2,
            })
        }
        other => bail!("unknown bound family {other:?} (transitive | rm | corollaries | samorodnitsky)"),
    };
    emit(
        "bounds",
        json!({
            "which": args.which,
            "epsilon": args.epsilon,
            "eta": args.eta,
            "n_bits": n_bits,
            "alpha": args.alpha,
            "subexp_log2": args.subexp_log2,
            "mode": args.mode,
        }),
        result,
        caveats,
        args.out.as_deref(),
    )?;
    Ok(0)
}
