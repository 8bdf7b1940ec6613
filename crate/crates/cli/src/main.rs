use clap::Parser;
use orbifold_verify::verify::{run, Config, Suite};
use std::path::PathBuf;
use std::process::ExitCode;

/// Run exact check suites and write JSON / Markdown reports.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// all, codes, lattice, fusion, orthogonal, extension, characters, groups or twistcoef
    suite: String,
    /// Highest power of q in the character comparisons
    #[arg(long)]
    order: Option<i64>,
    /// Norm bound for the generic Leech short-vector search
    #[arg(long = "enum-norm-bound")]
    enum_norm_bound: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Cache directory (theta/, bsgs/, series/)
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    markdown: Option<PathBuf>,
    /// Sample label pairs in the fusion suite instead of checking all of them
    #[arg(long)]
    sampled: bool,
    /// key = value file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
}

fn configure(args: &Args) -> Result<(Suite, Config), String> {
    let suite: Suite = args.suite.parse().map_err(|e| format!("{e}"))?;
    let mut cfg = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Config::from_text(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => Config::default(),
    };
    let overrides = [
        ("order", args.order.map(|v| v.to_string())),
        ("enum-norm-bound", args.enum_norm_bound.map(|v| v.to_string())),
        ("seed", args.seed.map(|v| v.to_string())),
        ("cache", args.cache.as_ref().map(|p| p.display().to_string())),
        ("sampled", args.sampled.then(|| "true".to_string())),
    ];
    for (k, v) in overrides {
        if let Some(v) = v {
            cfg.set(k, &v).map_err(|e| e.to_string())?;
        }
    }
    Ok((suite, cfg))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (suite, cfg) = match configure(&args) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(suite, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    for c in &report.checks {
        println!("{:<7} {:<34} {}", format!("{:?}", c.status).to_uppercase(), c.id, c.computed);
    }
    let writes = [(&args.report, report.to_json()), (&args.markdown, report.to_markdown())];
    for (path, text) in writes {
        if let Some(p) = path {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("verify: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
    }
    let failed = report.checks.iter().filter(|c| c.status == orbifold_verify::report::Status::Fail).count();
    println!("{} checks, {failed} failed", report.checks.len());
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
