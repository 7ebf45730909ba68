//! Command-line front end.
//!
//! Subcommands: `lpoly`, `zeros`, `sweep`, `clt`, `density`, `lowzero`,
//! `decompose`, `verify`. Exit codes: 0 success, 1 assertion failure,
//! 2 usage error, 3 budget/cache errors. All state lives in files; no
//! environment variables are consulted.

use crate::cache::scan_cache;
use crate::error::{Error, Result};
use crate::field::field_create;
use crate::lpoly::LData;
use crate::poly::parse_poly;
use crate::selberg::{prop41_decompose, CutoffPolicy};
use crate::stats::{self, SweepSample, TestFunction, ZeroNormalization, DEFAULT_NORMALIZATION};
use crate::sweep::{run_sweep, sample_from_cache, RunConfig, DEFAULT_BUDGET};
use crate::verify::{print_report, run_suite, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "hyperzeta",
    version,
    about = "Quadratic L-polynomials over F_q(t): exact data, zeros, and value statistics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Field characteristic (odd prime).
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Extension degree, q = p^e.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Degree list for the discriminant family, e.g. 9 or 9,11,13.
    #[arg(long, value_delimiter = ',', default_values_t = vec![9u32])]
    n: Vec<u32>,
    /// Truncation degree X; 0 means the schedule floor(sqrt(n)).
    #[arg(long = "X", default_value_t = 0)]
    x: u32,
    /// Policy constant c in sigma0 = c/X; default 0.4/ln q.
    #[arg(long)]
    c: Option<f64>,
    /// Sample count for sampled sweeps.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Exhaustive enumeration instead of sampling.
    #[arg(long, default_value_t = false)]
    full: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads (0 = all available).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output directory for reports.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Cache directory.
    #[arg(long, default_value = "cache")]
    cache: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Full-mode enumeration budget (monic polynomials per degree stage).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

impl Common {
    fn config_for(&self, n: u32) -> RunConfig {
        RunConfig {
            p: self.p,
            e: self.e,
            n,
            full: self.full,
            samples: self.samples,
            seed: self.seed,
            x: if self.x == 0 {
                (n as f64).sqrt().floor() as u32
            } else {
                self.x
            },
            c: self.c,
            threads: self.threads,
            budget: self.budget,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact L-polynomial data for one discriminant.
    Lpoly {
        #[command(flatten)]
        common: Common,
        /// Discriminant, e.g. "t^3+2t+1".
        #[arg(long)]
        d: String,
    },
    /// Eigenphases of the reduced polynomial for one discriminant.
    Zeros {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        d: String,
    },
    /// Sweep H_n into a checkpointed cache (resumable).
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Value statistics of log |L(1/2 + sigma0)| from cached sweeps.
    Clt {
        #[command(flatten)]
        common: Common,
    },
    /// One-level density of scaled eigenphases against the symplectic kernel.
    Density {
        #[command(flatten)]
        common: Common,
    },
    /// Low-zero fractions min|theta| < 1/(y delta) per threshold.
    Lowzero {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 2.0, 4.0])]
        y: Vec<f64>,
    },
    /// Per-discriminant decomposition of log L(1/2+sigma0).
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Run a pinned verification suite.
    Verify {
        /// Suite to run; omit to run all.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Lpoly { common, d } => cmd_lpoly(&common, &d),
        Cmd::Zeros { common, d } => cmd_zeros(&common, &d),
        Cmd::Sweep { common } => cmd_sweep(&common),
        Cmd::Clt { common } => cmd_clt(&common),
        Cmd::Density { common } => cmd_density(&common),
        Cmd::Lowzero { common, y } => cmd_lowzero(&common, &y),
        Cmd::Decompose { common } => cmd_decompose(&common),
        Cmd::Verify { suite } => cmd_verify(suite),
    }
}

fn cmd_lpoly(common: &Common, text: &str) -> Result<i32> {
    let field = field_create(common.p, common.e, None)?;
    let d = parse_poly(&field, text)?;
    let ld = LData::charsum(&d)?;
    let cv = ld.central_value()?;
    let out = json!({
        "q": ld.q(),
        "D": d.to_string(),
        "coeffs": ld.coeffs(),
        "lambda": ld.lambda(),
        "delta": ld.delta(),
        "lstar": ld.lstar_coeffs(),
        "M": cv.m,
        "N": cv.n,
        "central_value": ld.central_approx()?,
        "vanishing": cv.vanishing,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(0)
}

fn cmd_zeros(common: &Common, text: &str) -> Result<i32> {
    let field = field_create(common.p, common.e, None)?;
    let d = parse_poly(&field, text)?;
    let ld = LData::charsum(&d)?;
    let phases = ld.eigenphases()?;
    let out = json!({
        "q": ld.q(),
        "D": d.to_string(),
        "delta": ld.delta(),
        "thetas": phases.thetas,
        "circle_residual": phases.residual,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(0)
}

fn cmd_sweep(common: &Common) -> Result<i32> {
    for &n in &common.n {
        let cfg = common.config_for(n);
        let path = common.cache.join(cfg.cache_filename());
        let outcome = run_sweep(&cfg, &path)?;
        println!(
            "{}",
            json!({
                "cache": outcome.path,
                "n": n,
                "records": outcome.records,
                "shards_skipped": outcome.shards_skipped,
                "shards_computed": outcome.shards_computed,
            })
        );
    }
    Ok(0)
}

fn load_sample(common: &Common, n: u32) -> Result<(SweepSample, String)> {
    let cfg = common.config_for(n);
    let path = common.cache.join(cfg.cache_filename());
    if !path.exists() {
        return Err(Error::MissingCache(format!(
            "{} (run `hyperzeta sweep` first)",
            path.display()
        )));
    }
    let scan = scan_cache(&path)?;
    if scan.header != cfg.header() {
        return Err(Error::IncompatibleCache(format!(
            "{} does not match the requested configuration",
            path.display()
        )));
    }
    let digest = Sha256::digest(fs::read(&path)?);
    Ok((sample_from_cache(&scan, &cfg)?, format!("{digest:x}")))
}

/// Write a table as CSV or JSONL per the configured format.
fn write_table(
    path_base: &Path,
    format: OutputFormat,
    columns: &[&str],
    rows: &[Vec<String>],
) -> Result<PathBuf> {
    if let Some(dir) = path_base.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let path = match format {
        OutputFormat::Csv => path_base.with_extension("csv"),
        OutputFormat::Jsonl => path_base.with_extension("jsonl"),
    };
    let mut text = String::new();
    match format {
        OutputFormat::Csv => {
            text.push_str(&columns.join(","));
            text.push('\n');
            for row in rows {
                text.push_str(&row.join(","));
                text.push('\n');
            }
        }
        OutputFormat::Jsonl => {
            for row in rows {
                let obj: serde_json::Map<String, serde_json::Value> = columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| {
                        let val = v
                            .parse::<f64>()
                            .map(serde_json::Value::from)
                            .unwrap_or_else(|_| serde_json::Value::from(v.clone()));
                        (c.to_string(), val)
                    })
                    .collect();
                text.push_str(&serde_json::to_string(&obj)?);
                text.push('\n');
            }
        }
    }
    fs::write(&path, text)?;
    Ok(path)
}

fn fmt(x: f64) -> String {
    format!("{x:.12e}")
}

fn cmd_clt(common: &Common) -> Result<i32> {
    let mut samples = Vec::new();
    let mut hashes = Vec::new();
    for &n in &common.n {
        let (s, h) = load_sample(common, n)?;
        samples.push(s);
        hashes.push(json!({"n": n, "sha256": h}));
    }
    let report = stats::clt_report(&samples)?;
    let columns = [
        "n", "X", "sigma0", "count", "vanishing", "mean_log_l", "var_log_l",
        "mean_ratio_n", "var_ratio_n", "mean_ratio_x", "var_ratio_x",
        "skewness", "skewness_se", "excess_kurtosis", "kurtosis_se",
        "ks_degree", "ks_cutoff",
    ];
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.x.to_string(),
                fmt(r.sigma0),
                r.count.to_string(),
                r.vanishing.to_string(),
                fmt(r.mean_log_l),
                fmt(r.var_log_l),
                fmt(r.mean_ratio_n),
                fmt(r.var_ratio_n),
                fmt(r.mean_ratio_x),
                fmt(r.var_ratio_x),
                fmt(r.skewness),
                fmt(r.skewness_se),
                fmt(r.excess_kurtosis),
                fmt(r.kurtosis_se),
                fmt(r.ks_degree),
                fmt(r.ks_cutoff),
            ]
        })
        .collect();
    let table = write_table(&common.out.join("clt_report"), common.format, &columns, &rows)?;

    // per-n histogram of log |L| and moment table of the centered statistic
    for s in &samples {
        let vals: Vec<f64> = s.records.iter().map(|r| r.log_l_sigma0).collect();
        let hist = stats::histogram(&vals, 60);
        let hrows: Vec<Vec<String>> = hist
            .iter()
            .map(|(lo, hi, c, d)| vec![fmt(*lo), fmt(*hi), c.to_string(), fmt(*d)])
            .collect();
        write_table(
            &common.out.join(format!("hist_logl_n{}", s.n)),
            common.format,
            &["bin_lo", "bin_hi", "count", "density"],
            &hrows,
        )?;
        let table = stats::moment_suite(s, stats::Statistic::PTildeCentered, 6)?;
        let mrows: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|r| vec![r.k.to_string(), fmt(r.empirical), fmt(r.reference), fmt(r.stderr)])
            .collect();
        write_table(
            &common.out.join(format!("moments_ptilde_n{}", s.n)),
            common.format,
            &["k", "empirical", "reference", "stderr"],
            &mrows,
        )?;
    }

    let summary = json!({
        "command": "clt",
        "config": {
            "p": common.p, "e": common.e, "n": common.n, "X": common.x,
            "c": common.c, "samples": common.samples, "full": common.full,
            "seed": common.seed,
        },
        "inputs": hashes,
        "rows": report.rows,
        "table": table,
    });
    fs::create_dir_all(&common.out)?;
    fs::write(
        common.out.join("clt_summary.json"),
        serde_json::to_string_pretty(&summary)?,
    )?;
    println!("{}", serde_json::to_string_pretty(&report.rows)?);
    Ok(0)
}

fn cmd_density(common: &Common) -> Result<i32> {
    let mut summaries = Vec::new();
    for &n in &common.n {
        let (sample, hash) = load_sample(common, n)?;
        let bump = TestFunction::GaussianBump { scale: 1.0 };
        let mut scalars = Vec::new();
        for (name, norm) in [
            ("two_delta_theta", ZeroNormalization::TwoDeltaTheta),
            ("delta_theta", ZeroNormalization::DeltaTheta),
        ] {
            let (emp, pred) = stats::one_level_density(&sample, &bump, norm);
            scalars.push(json!({
                "normalization": name,
                "empirical": emp,
                "predicted": pred,
                "abs_difference": (emp - pred).abs(),
                "default": norm == DEFAULT_NORMALIZATION,
            }));
            let hist = stats::density_histogram(&sample, norm, 3.0, 48);
            let rows: Vec<Vec<String>> = hist
                .iter()
                .map(|(lo, hi, c, d, w)| {
                    vec![fmt(*lo), fmt(*hi), c.to_string(), fmt(*d), fmt(*w)]
                })
                .collect();
            write_table(
                &common.out.join(format!("density_n{n}_{name}")),
                common.format,
                &["x_lo", "x_hi", "count", "empirical", "predicted"],
                &rows,
            )?;
        }
        summaries.push(json!({
            "n": n,
            "sha256": hash,
            "gaussian_bump_unit_mass": scalars,
        }));
    }
    fs::create_dir_all(&common.out)?;
    let summary = json!({"command": "density", "results": summaries});
    fs::write(
        common.out.join("density_summary.json"),
        serde_json::to_string_pretty(&summary)?,
    )?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(0)
}

fn cmd_lowzero(common: &Common, ys: &[f64]) -> Result<i32> {
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &n in &common.n {
        let (sample, hash) = load_sample(common, n)?;
        let mut per_n = Vec::new();
        for &y in ys {
            let frac = stats::min_theta_fraction(&sample, y);
            let (kept, excluded, vanishing) = stats::hn0_filter(&sample, y);
            rows.push(vec![
                n.to_string(),
                fmt(y),
                fmt(frac),
                fmt(excluded),
                kept.records.len().to_string(),
                vanishing.to_string(),
            ]);
            per_n.push(json!({
                "y": y,
                "fraction_below": frac,
                "excluded_fraction": excluded,
                "kept": kept.records.len(),
                "vanishing_central": vanishing,
            }));
        }
        summaries.push(json!({"n": n, "sha256": hash, "thresholds": per_n}));
    }
    let table = write_table(
        &common.out.join("lowzero"),
        common.format,
        &["n", "y", "fraction_below", "excluded_fraction", "kept", "vanishing"],
        &rows,
    )?;
    fs::create_dir_all(&common.out)?;
    fs::write(
        common.out.join("lowzero_summary.json"),
        serde_json::to_string_pretty(&json!({"command": "lowzero", "table": table, "results": summaries}))?,
    )?;
    println!("{}", serde_json::to_string_pretty(&summaries)?);
    Ok(0)
}

fn cmd_decompose(common: &Common) -> Result<i32> {
    let field = field_create(common.p, common.e, None)?;
    let mut summaries = Vec::new();
    for &n in &common.n {
        let cfg = common.config_for(n);
        let policy = cfg.policy(field.q())?;
        let (sample, hash) = load_sample(common, n)?;
        let mut rows = Vec::new();
        let mut worst_ratio = 0.0f64;
        let mut mean_abs_residual = 0.0f64;
        for rec in &sample.records {
            let d = crate::poly::Poly::new(&field, rec.d.clone());
            let ld = LData::powersum(&d)?;
            let rep = prop41_decompose(&ld, &policy)?;
            worst_ratio = worst_ratio.max(rep.ratio());
            mean_abs_residual += rep.residual.abs();
            rows.push(vec![
                d.to_string(),
                fmt(rep.log_l),
                fmt(rep.p_tilde),
                fmt(rep.lambda_x_term),
                fmt(rep.budget),
                fmt(rep.residual),
                fmt(rep.ratio()),
            ]);
        }
        mean_abs_residual /= sample.records.len().max(1) as f64;
        let table = write_table(
            &common.out.join(format!("decompose_n{n}")),
            common.format,
            &["D", "log_l", "p_tilde", "lambda_x_term", "budget", "residual", "ratio"],
            &rows,
        )?;
        summaries.push(json!({
            "n": n,
            "X": policy.x(),
            "sigma0": policy.sigma0(),
            "sha256": hash,
            "worst_ratio": worst_ratio,
            "mean_abs_residual": mean_abs_residual,
            "table": table,
        }));
    }
    fs::create_dir_all(&common.out)?;
    fs::write(
        common.out.join("decompose_summary.json"),
        serde_json::to_string_pretty(&json!({"command": "decompose", "results": summaries}))?,
    )?;
    println!("{}", serde_json::to_string_pretty(&summaries)?);
    Ok(0)
}

fn cmd_verify(suite: Option<Suite>) -> Result<i32> {
    let suites = match suite {
        Some(s) => vec![s],
        None => vec![Suite::Arith, Suite::Identities, Suite::Lemmas, Suite::CltSmoke],
    };
    let mut all = true;
    for s in suites {
        let name = format!("{s:?}").to_lowercase();
        let checks = run_suite(s)?;
        all &= print_report(&name, &checks);
    }
    Ok(if all { 0 } else { 1 })
}
