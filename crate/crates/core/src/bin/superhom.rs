use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info};
use rayon::prelude::*;

use superhom::algebra::{bracket, format_element, parse_element};
use superhom::chain::{enumerate_basis, format_chain, parse_chain, ComplexSlice};
use superhom::homology::{
    betti, boundary, verify_acyclicity, verify_d_squared, verify_euler, verify_jacobi, verify_lemma_ranks,
    verify_prop1, verify_theorem2, verify_theorem5, HomologyReport, VerificationReport,
};
use superhom::oracle::verify_oracle;
use superhom::report::{
    homology_csv, homology_table, sweep_csv, to_json, verification_csv, verification_text, ConfigError, Format,
    HChoice, Range, RunConfig,
};

#[derive(Parser)]
#[command(name = "superhom", version, about = "Homology of weighted chain complexes of polynomial vector fields and forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Dimension of the base space.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Primary weight, `a` or `a:b`.
    #[arg(long)]
    w: Option<String>,
    /// Secondary weight, `a` or `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    /// Use h = -w.
    #[arg(long)]
    diag: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the basis words of C^m_{w,h}.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: usize,
    },
    /// Dimensions, ranks and Betti numbers of one complex.
    Betti {
        #[command(flatten)]
        common: Common,
    },
    /// Betti tables over a range of weights.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Bracket of two elements.
    Bracket {
        left: String,
        right: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Boundary of a chain, factors joined by '&'.
    Boundary {
        chain: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Check a claim over a parameter grid.
    Verify {
        claim: Claim,
        #[command(flatten)]
        common: Common,
        /// Degree cap for generator grids.
        #[arg(long)]
        cap: Option<u32>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    D2,
    Acyclic,
    Prop1,
    Jacobi,
    Thm2,
    Thm5,
    LemmaRanks,
    Oracle,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn config(c: &Common, default_w: Option<&str>, cap: Option<u32>, m: Option<usize>) -> Result<RunConfig, Failure> {
    let w = match (&c.w, default_w) {
        (Some(t), _) => Range::parse(t)?,
        (None, Some(d)) => Range::parse(d)?,
        (None, None) => return Err(Failure::Usage("--w is required".into())),
    };
    if c.n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    if c.jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be positive".into()));
    }
    Ok(RunConfig {
        n: c.n,
        w,
        h: HChoice::from_flags(c.h.as_deref(), c.diag)?,
        m,
        format: Format::from_flags(c.json, c.csv)?,
        cap,
        jobs: c.jobs,
    })
}

fn pool(jobs: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j);
    }
    b.build().expect("thread pool")
}

fn render_homology(r: &HomologyReport, format: Format) -> String {
    match format {
        Format::Table => homology_table(r),
        Format::Json => to_json(r),
        Format::Csv => homology_csv(r),
    }
}

fn render_verification(r: &VerificationReport, format: Format) -> Result<String, Failure> {
    let text = match format {
        Format::Table => verification_text(r),
        Format::Json => to_json(r),
        Format::Csv => verification_csv(r),
    };
    if r.pass {
        Ok(text)
    } else {
        let cx = r.counterexample.as_ref().map(to_json).unwrap_or_default();
        let extra = if format == Format::Json { String::new() } else { cx };
        Err(Failure::Verification(text + &extra))
    }
}

/// Runs `f` on every cell in parallel and merges in cell order.
fn merged<F>(claim: &str, grid: String, cells: Vec<(u32, i64)>, jobs: Option<usize>, f: F) -> VerificationReport
where
    F: Fn(u32, i64) -> VerificationReport + Sync,
{
    let parts: Vec<VerificationReport> = pool(jobs).install(|| cells.par_iter().map(|&(w, h)| f(w, h)).collect());
    let mut rep = VerificationReport::new(claim, grid);
    for p in parts {
        rep.absorb(p);
    }
    rep
}

fn grid_text(cfg: &RunConfig) -> String {
    let h = match cfg.h {
        Some(HChoice::Diagonal) => "-w".to_string(),
        Some(HChoice::Range(r)) => format!("{}..{}", r.lo, r.hi),
        None => "-".to_string(),
    };
    format!("n={} w={}..{} h={h}", cfg.n, cfg.w.lo, cfg.w.hi)
}

fn verify(claim: Claim, common: &Common, cap: Option<u32>) -> Result<String, Failure> {
    let report = match claim {
        Claim::D2 => {
            let cfg = config(common, Some("0:10"), cap, None)?;
            let cfg = RunConfig { h: Some(cfg.h.unwrap_or(HChoice::Diagonal)), ..cfg };
            let n = cfg.n;
            merged("d2", grid_text(&cfg), cfg.cells()?, cfg.jobs, |w, h| verify_d_squared(n, w, h))
        }
        Claim::Acyclic => {
            let cfg = config(common, Some("0:5"), cap, None)?;
            let h = match cfg.h {
                Some(HChoice::Diagonal) => return Err(Failure::Usage("acyclicity needs h != -w; drop --diag".into())),
                Some(h) => h,
                None => HChoice::Range(Range { lo: -5, hi: 5 }),
            };
            let cfg = RunConfig { h: Some(h), ..cfg };
            let cells: Vec<(u32, i64)> = cfg.cells()?.into_iter().filter(|&(w, h)| h != -(w as i64)).collect();
            let n = cfg.n;
            merged("acyclic", grid_text(&cfg), cells, cfg.jobs, |w, h| {
                verify_acyclicity(n, w, h).expect("diagonal cells are filtered out")
            })
        }
        Claim::Prop1 => verify_prop1(common.n, cap.unwrap_or(4)),
        Claim::Jacobi => {
            let cap = cap.unwrap_or(3);
            let mut rep = verify_jacobi(common.n, cap);
            rep.absorb(verify_euler(common.n, cap));
            rep
        }
        Claim::Thm2 => {
            let cfg = config(common, Some("3:10"), cap, None)?;
            verify_theorem2(cfg.w.values()).map_err(|e| Failure::Usage(e.to_string()))?
        }
        Claim::Thm5 => {
            let cfg = config(common, Some("3:8"), cap, None)?;
            verify_theorem5(cfg.w.values()).map_err(|e| Failure::Usage(e.to_string()))?
        }
        Claim::LemmaRanks => {
            let cfg = config(common, Some("3:10"), cap, None)?;
            verify_lemma_ranks(cfg.w.hi)
        }
        Claim::Oracle => {
            let cfg = config(common, Some("0:6"), cap, None)?;
            let cfg = RunConfig { h: Some(cfg.h.unwrap_or(HChoice::Range(Range { lo: -6, hi: 3 }))), ..cfg };
            if cfg.n != 1 {
                return Err(Failure::Usage("the oracle grid is on the line; use --n 1".into()));
            }
            verify_oracle(&cfg.cells()?, cap.unwrap_or(5) as usize)
        }
    };
    info!("{}: {} cells, pass = {}", report.claim, report.cells.len(), report.pass);
    let format = Format::from_flags(common.json, common.csv)?;
    render_verification(&report, format)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Basis { common, m } => {
            let cfg = config(&common, None, None, Some(m))?;
            let (w, h) = cfg.single_cell()?;
            let basis = enumerate_basis(cfg.n, w, h, m);
            debug!("basis n={} w={w} h={h} m={m}: {} words", cfg.n, basis.len());
            let words: Vec<String> = basis.words().iter().map(ToString::to_string).collect();
            Ok(match cfg.format {
                Format::Json => to_json(&words),
                Format::Csv => std::iter::once("word".to_string()).chain(words).map(|x| x + "\n").collect(),
                Format::Table => words.into_iter().map(|x| x + "\n").collect(),
            })
        }
        Command::Betti { common } => {
            let cfg = config(&common, None, None, None)?;
            let (w, h) = cfg.single_cell()?;
            let report = pool(cfg.jobs).install(|| betti(&ComplexSlice::new(cfg.n, w, h)));
            info!("betti n={} w={w} h={h}: {:?}", cfg.n, report.bettis());
            Ok(render_homology(&report, cfg.format))
        }
        Command::Sweep { common } => {
            let cfg = config(&common, None, None, None)?;
            let cells = cfg.cells()?;
            let n = cfg.n;
            let reports: Vec<HomologyReport> = pool(cfg.jobs).install(|| {
                cells
                    .par_iter()
                    .map(|&(w, h)| {
                        debug!("sweep cell w={w} h={h}");
                        betti(&ComplexSlice::new(n, w, h))
                    })
                    .collect()
            });
            Ok(match cfg.format {
                Format::Json => to_json(&reports),
                Format::Csv => sweep_csv(&reports),
                Format::Table => reports.iter().map(homology_table).collect::<Vec<_>>().join("\n"),
            })
        }
        Command::Bracket { left, right, n } => {
            let parse = |t: &str| parse_element(t, n).map_err(|e| Failure::Usage(format!("'{t}': {e}")));
            let (l, r) = (parse(&left)?, parse(&right)?);
            Ok(format_element(&bracket(&l, &r)) + "\n")
        }
        Command::Boundary { chain, n } => {
            let c = parse_chain(&chain, n).map_err(|e| Failure::Usage(format!("'{chain}': {e}")))?;
            Ok(format_chain(&boundary(&c)) + "\n")
        }
        Command::Verify { claim, common, cap } => verify(claim, &common, cap),
    }
}

fn init_logging() {
    let level = match std::env::var("LOGLEVEL").as_deref() {
        Ok("debug") => log::LevelFilter::Debug,
        Ok("info") => log::LevelFilter::Info,
        Ok("quiet") => log::LevelFilter::Off,
        _ => log::LevelFilter::Warn,
    };
    env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
