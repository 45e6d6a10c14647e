use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zetacorr::conjecture::{
    conjecture1_scan, conjecture2_scan, corollary_schedule_report, guess_normalization, m_last_k, m_of_x, BetaSchedule,
    Corollary, CorollaryParams, EllSchedule,
};
use zetacorr::explicit::{dyadic_blocks, lemma1_report, truncated_psi_report, zero_sum_report};
use zetacorr::pair_correlation::{f_direct, f_integral, lemma2_rhs};
use zetacorr::primes::{pnt_report, sieve_lambda, von_koch_scan, LambdaTable, SIEVE_CAPACITY};
use zetacorr::report::{Cell, ScanReport};
use zetacorr::zeros::{density_report, find_zeros, ingest_zeros, read_cache, write_cache, ZeroSet, ZeroSource};
use zetacorr::{Error, Result};

const CACHE_FILE: &str = "zeros.zpc";

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "zetacorr",
    version,
    about = "Pair correlation of zeta zeros and prime-counting error terms"
)]
pub struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the JSON metadata line here instead of stderr.
    #[arg(long, global = true)]
    meta: Option<PathBuf>,
    /// Directory holding the zero cache.
    #[arg(long, global = true, env = "ZPC_CACHE_DIR", default_value = "zpc-cache")]
    cache_dir: PathBuf,
    /// Read zeros from this cache file instead of the cache directory.
    #[arg(long, global = true)]
    zeros: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
enum Command {
    /// Compute or ingest zeta zeros and write the binary cache.
    Zeros(ZerosArgs),
    /// Sieve Λ(n) and report ψ, π and the PNT error terms.
    Psi(PsiArgs),
    /// Evaluate F_β(x, T) by pair sum and/or integral.
    Fcorr(FcorrArgs),
    /// Rebuild ψ(x) or R(x)/√x from zeros.
    Explicit(ExplicitArgs),
    /// Conjecture, corollary and schedule scans.
    Scan(ScanArgs),
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("input").required(true).args(["t_max", "ingest"])))]
struct ZerosArgs {
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    refine_tol: f64,
    /// Text table with one ordinate per line.
    #[arg(long)]
    ingest: Option<PathBuf>,
    /// Accuracy claimed for ingested ordinates.
    #[arg(long)]
    precision: Option<f64>,
    /// Cache file to write (default: <cache-dir>/zeros.zpc).
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct PsiArgs {
    #[arg(long)]
    x_max: u64,
    /// Sample points (default: powers of ten up to x_max, and x_max).
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    /// Scan |R(n)|/(√n log²n) over all integers 2 ≤ n ≤ x_max.
    #[arg(long)]
    report_von_koch: bool,
    #[arg(long, default_value_t = 2.0)]
    von_koch_constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum MethodArg {
    Direct,
    Integral,
    Both,
}

#[derive(Debug, Args, Serialize)]
struct FcorrArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    t: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    beta: Vec<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    method: MethodArg,
    #[arg(long, default_value_t = 1e-10)]
    tail_tol: f64,
    /// Add the residual of the F_β ↔ F integral identity.
    #[arg(long)]
    check_lemma2: bool,
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
}

#[derive(Debug, Args, Serialize)]
struct ExplicitArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    /// Zero cutoff (default: t_max of the zero set).
    #[arg(long, value_delimiter = ',')]
    y: Vec<f64>,
    /// Lower cutoff; switches to the R(x)/√x zero sum over (W, Y].
    #[arg(long)]
    w: Option<f64>,
    /// With --w, list the dyadic blocks instead.
    #[arg(long, requires = "w")]
    blocks: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum BetaKindArg {
    Constant,
    Cor1,
    Cor3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum EllKindArg {
    LogT,
    LogxProxy,
    Power,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("mode").required(true).args(["conjecture", "corollary", "guess", "lemma1", "m_of_x"])))]
struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    conjecture: Option<u8>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    corollary: Option<u8>,
    /// R(x)/(√x (log log log x)²) from the sieve.
    #[arg(long)]
    guess: bool,
    /// |Σ x^{iγ}| over (s, t] against the F_β envelope.
    #[arg(long)]
    lemma1: bool,
    /// The dyadic schedule sum M(x).
    #[arg(long)]
    m_of_x: bool,
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    t: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    s: Vec<f64>,
    #[arg(long, default_value_t = 64)]
    v_samples: usize,
    #[arg(long, default_value_t = 8)]
    v_grid: usize,
    #[arg(long, value_enum, default_value_t = BetaKindArg::Constant)]
    beta_schedule: BetaKindArg,
    #[arg(long, default_value_t = 1.0)]
    beta_c: f64,
    /// Exponent a of the cor1 schedule.
    #[arg(long, default_value_t = 1.5)]
    a: f64,
    /// Constant A of the cor3 schedule.
    #[arg(long = "cap-a", default_value_t = 2.0)]
    cap_a: f64,
    #[arg(long, value_enum, default_value_t = EllKindArg::LogT)]
    ell: EllKindArg,
    #[arg(long, default_value_t = 1.0)]
    ell_exponent: f64,
}

pub fn run(cli: Cli) -> Result<()> {
    let report = match &cli.command {
        Command::Zeros(a) => cmd_zeros(&cli, a)?,
        Command::Psi(a) => cmd_psi(a)?,
        Command::Fcorr(a) => cmd_fcorr(&load_zeros(&cli)?, a)?,
        Command::Explicit(a) => cmd_explicit(&load_zeros(&cli)?, a)?,
        Command::Scan(a) => cmd_scan(&cli, a)?,
    };
    emit(&cli, report)
}

fn emit(cli: &Cli, mut report: ScanReport) -> Result<()> {
    report.set_meta("config", serde_json::to_value(cli).expect("config serializes"));
    report.set_meta("version", env!("CARGO_PKG_VERSION"));
    match &cli.out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            report.write_csv(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    let line = report.metadata_line();
    match &cli.meta {
        Some(p) => fs::write(p, format!("{line}\n"))?,
        None => eprintln!("{line}"),
    }
    Ok(())
}

fn cache_path(cli: &Cli) -> PathBuf {
    cli.zeros.clone().unwrap_or_else(|| cli.cache_dir.join(CACHE_FILE))
}

fn load_zeros(cli: &Cli) -> Result<ZeroSet> {
    let path = cache_path(cli);
    let file = File::open(&path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("zero cache {}: {e}", path.display()))))?;
    read_cache(BufReader::new(file), ZeroSource::Computed)
}

fn cmd_zeros(cli: &Cli, a: &ZerosArgs) -> Result<ScanReport> {
    let zs = match (&a.ingest, a.t_max) {
        (Some(path), _) => ingest_zeros(BufReader::new(File::open(path)?), a.precision)?,
        (None, Some(t)) => find_zeros(t, a.refine_tol)?,
        (None, None) => unreachable!("clap requires --t-max or --ingest"),
    };
    let path = a.cache.clone().unwrap_or_else(|| cli.cache_dir.join(CACHE_FILE));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(&path)?);
    write_cache(&zs, &mut w)?;
    w.flush()?;

    let mut report = if zs.t_max() >= 20.0 {
        density_report(&zs)?
    } else {
        ScanReport::new(["T", "count", "log_T", "ratio", "t_max"])
    };
    report.set_meta("zeros", zs.provenance());
    report.set_meta("count", zs.len());
    report.set_meta("cache", path.display().to_string());
    Ok(report)
}

fn sieve_for(x_max: f64) -> Result<LambdaTable> {
    if x_max.is_nan() || x_max < 2.0 || x_max > SIEVE_CAPACITY as f64 {
        return Err(Error::Capacity {
            requested: x_max.max(0.0) as u64,
            capacity: SIEVE_CAPACITY,
        });
    }
    sieve_lambda(x_max.ceil() as u64)
}

fn cmd_psi(a: &PsiArgs) -> Result<ScanReport> {
    let table = sieve_for(a.x_max as f64)?;
    let xs = if a.x.is_empty() {
        let mut xs: Vec<f64> = (1..)
            .map(|e| 10f64.powi(e))
            .take_while(|&x| x < a.x_max as f64)
            .collect();
        xs.push(a.x_max as f64);
        xs
    } else {
        a.x.clone()
    };
    let mut report = pnt_report(&xs, &table)?;
    if a.report_von_koch {
        let vk = von_koch_scan(&table, a.x_max, a.von_koch_constant)?;
        report.set_meta(
            "von_koch",
            serde_json::json!({
                "x_max": vk.x_max,
                "max_ratio": vk.max_ratio,
                "argmax": vk.argmax,
                "constant": a.von_koch_constant,
                "violations": vk.violations,
            }),
        );
    }
    Ok(report)
}

fn cmd_fcorr(zs: &ZeroSet, a: &FcorrArgs) -> Result<ScanReport> {
    let mut cols = vec!["x", "T", "beta", "method", "value", "err_estimate"];
    if a.check_lemma2 {
        cols.push("lemma2_residual");
    }
    let mut report = ScanReport::new(cols);
    for &x in &a.x {
        for &t in &a.t {
            for &beta in &a.beta {
                let mut evals = Vec::new();
                if a.method != MethodArg::Integral {
                    evals.push(f_direct(zs, x, t, beta)?);
                }
                if a.method != MethodArg::Direct {
                    evals.push(f_integral(zs, x, t, beta, a.tail_tol)?);
                }
                let residual = if a.check_lemma2 {
                    let direct = f_direct(zs, x, t, beta)?.value;
                    Some(lemma2_rhs(zs, x, t, beta, a.quad_tol)? - direct)
                } else {
                    None
                };
                for e in evals {
                    let mut row: Vec<Cell> = vec![
                        e.x.into(),
                        e.t.into(),
                        e.beta.into(),
                        e.method.as_str().into(),
                        e.value.into(),
                        e.err_estimate.into(),
                    ];
                    if let Some(r) = residual {
                        row.push(r.into());
                    }
                    report.push(row);
                }
            }
        }
    }
    report.set_meta("zeros", zs.provenance());
    Ok(report)
}

fn cmd_explicit(zs: &ZeroSet, a: &ExplicitArgs) -> Result<ScanReport> {
    let ys = if a.y.is_empty() { vec![zs.t_max()] } else { a.y.clone() };
    let x_max = a.x.iter().copied().fold(2.0, f64::max);
    match a.w {
        Some(w) if a.blocks => {
            let mut report = ScanReport::new([
                "x",
                "k",
                "s",
                "t",
                "count",
                "value_re",
                "value_im",
                "weighted_re",
                "weighted_im",
                "prefix_max",
            ]);
            for &x in &a.x {
                for &y in &ys {
                    for b in dyadic_blocks(x, w, y, zs)? {
                        report.push(vec![
                            x.into(),
                            (b.k as i64).into(),
                            b.s.into(),
                            b.t.into(),
                            b.count.into(),
                            b.value.re.into(),
                            b.value.im.into(),
                            b.weighted.re.into(),
                            b.weighted.im.into(),
                            b.prefix_max.into(),
                        ]);
                    }
                }
            }
            report.set_meta("zeros", zs.provenance());
            Ok(report)
        }
        Some(w) => {
            let table = sieve_for(x_max)?;
            let points: Vec<(f64, f64, f64)> = a.x.iter().flat_map(|&x| ys.iter().map(move |&y| (x, w, y))).collect();
            zero_sum_report(&points, zs, &table)
        }
        None => {
            let table = sieve_for(x_max)?;
            let points: Vec<(f64, f64)> = a.x.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
            truncated_psi_report(&points, zs, &table)
        }
    }
}

fn beta_schedule(a: &ScanArgs) -> Result<BetaSchedule> {
    match a.beta_schedule {
        BetaKindArg::Constant => BetaSchedule::constant(a.beta_c),
        BetaKindArg::Cor1 => BetaSchedule::cor1_power(a.a),
        BetaKindArg::Cor3 => BetaSchedule::cor3_gm(a.cap_a),
    }
}

fn ell_schedule(a: &ScanArgs) -> Result<EllSchedule> {
    Ok(match a.ell {
        EllKindArg::LogT => EllSchedule::log_t(),
        EllKindArg::LogxProxy => EllSchedule::logx_proxy(),
        EllKindArg::Power => EllSchedule::custom_power(a.ell_exponent)?,
    })
}

fn require(list: &[f64], name: &str) -> Result<()> {
    if list.is_empty() {
        return Err(Error::Domain(format!("--{name} is required for this scan")));
    }
    Ok(())
}

fn cmd_scan(cli: &Cli, a: &ScanArgs) -> Result<ScanReport> {
    let beta = beta_schedule(a)?;
    let ell = ell_schedule(a)?;
    if let Some(c) = a.conjecture {
        require(&a.x, "x")?;
        require(&a.t, "t")?;
        let zs = load_zeros(cli)?;
        return if c == 1 {
            conjecture1_scan(&zs, &a.x, &a.t, &ell, &beta)
        } else {
            conjecture2_scan(&zs, &a.x, &a.t, a.v_samples, &ell, &beta)
        };
    }
    if let Some(c) = a.corollary {
        require(&a.x, "x")?;
        require(&a.t, "t")?;
        let zs = load_zeros(cli)?;
        let corollary = match c {
            1 => Corollary::Cor1,
            2 => Corollary::Cor2,
            3 => Corollary::Cor3,
            _ => Corollary::Cor4,
        };
        let params = CorollaryParams {
            xs: a.x.clone(),
            ts: a.t.clone(),
            a: a.a,
            big_a: a.cap_a,
        };
        let x_max = a.x.iter().copied().fold(0.0, f64::max);
        let table = if x_max >= 2.0 && x_max <= SIEVE_CAPACITY as f64 {
            Some(sieve_for(x_max)?)
        } else {
            None
        };
        return corollary_schedule_report(&zs, corollary, &params, table.as_ref());
    }
    if a.guess {
        require(&a.x, "x")?;
        let table = sieve_for(a.x.iter().copied().fold(2.0, f64::max))?;
        return guess_normalization(&a.x, &table);
    }
    if a.lemma1 {
        require(&a.x, "x")?;
        require(&a.s, "s")?;
        require(&a.t, "t")?;
        if a.s.len() != a.t.len() {
            return Err(Error::Domain("--s and --t must have the same length".into()));
        }
        let zs = load_zeros(cli)?;
        let triples: Vec<(f64, f64, f64)> =
            a.x.iter()
                .flat_map(|&x| a.s.iter().zip(&a.t).map(move |(&s, &t)| (x, s, t)))
                .collect();
        return lemma1_report(&triples, &beta, &zs, a.v_grid);
    }
    require(&a.x, "x")?;
    let mut report = ScanReport::new(["x", "k_max", "M", "M_over_log_a"]);
    for &x in &a.x {
        let m = m_of_x(x, &ell, &beta)?;
        report.push(vec![
            x.into(),
            (m_last_k(x) as i64).into(),
            m.into(),
            (m / x.ln().powf(a.a)).into(),
        ]);
    }
    report.set_meta(
        "beta_schedule",
        serde_json::to_value(beta).expect("schedule serializes"),
    );
    report.set_meta("ell_schedule", serde_json::to_value(ell).expect("schedule serializes"));
    Ok(report)
}
