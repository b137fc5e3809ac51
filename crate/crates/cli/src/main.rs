use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use elliptica::harness::{run_suite, HarnessConfig, ReportDocument, Suite};
use elliptica::jk::TraceFunctional;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact verification suites for the elliptic affine sl(2) algebra and its
/// free-field realizations.
#[derive(Debug, Parser)]
#[command(name = "elliptica", version)]
struct Cli {
    /// pollaczek, cocycle, jacobi, grading, borel, heisenberg, twodim,
    /// realize, calibrate, jk, jk-compare or all
    suite: String,
    /// key = value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    window: Option<i64>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    states: Option<usize>,
    #[arg(long, value_parser = ["0", "1"])]
    r: Option<String>,
    #[arg(long, value_parser = ["original", "sigma_twisted_b", "mixed"])]
    variant: Option<String>,
    #[arg(long, value_parser = ["paper", "oracle"])]
    constants: Option<String>,
    /// Give the Heisenberg module its own level symbol
    #[arg(long)]
    split_level: bool,
    /// Trace functional as JSON, e.g. {"t^0": "1", "u t^-1": "2/3"}
    #[arg(long)]
    phi: Option<PathBuf>,
    /// With `jk`: run the quotient comparison instead
    #[arg(long)]
    compare: bool,
    /// With `jk`: which check to run (only `rep`)
    #[arg(long, value_parser = ["rep"])]
    check: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Write the JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn build_config(cli: &Cli) -> Result<HarnessConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            HarnessConfig::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => HarnessConfig::default(),
    };
    let mut set = |key: &str, value: String| cfg.set(0, key, &value).map_err(|e| format!("--{key}: {e}"));
    if let Some(w) = cli.window {
        set("window", w.to_string())?;
    }
    if let Some(d) = cli.degree {
        set("degree", d.to_string())?;
    }
    if let Some(s) = cli.seed {
        set("seed", s.to_string())?;
    }
    if let Some(s) = cli.states {
        set("states", s.to_string())?;
    }
    if let Some(r) = &cli.r {
        set("r", r.clone())?;
    }
    if let Some(v) = &cli.variant {
        set("variant", v.clone())?;
    }
    if let Some(c) = &cli.constants {
        set("constants", c.clone())?;
    }
    if let Some(t) = cli.threads {
        set("threads", t.to_string())?;
    }
    if cli.split_level {
        cfg.split_level = true;
    }
    if let Some(path) = &cli.phi {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.phi = Some(TraceFunctional::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?);
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    for sec in &doc.sections {
        out.push_str(&format!("== {}\n", sec.suite));
        for c in &sec.checks {
            let tag = match (c.passed(), c.asserted) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "NOTE",
            };
            out.push_str(&format!("  {tag} {} ({} cases, {} failing)\n", c.name, c.cases, c.failures));
            if !c.passed() {
                if let Some(r) = c.records.first() {
                    out.push_str(&format!("       {}\n       expected {}\n       got      {}\n", r.inputs, r.expected, r.got));
                }
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut suite: Suite = match cli.suite.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("elliptica: {e}");
            return ExitCode::from(2);
        }
    };
    if suite == Suite::Jk && cli.compare {
        suite = Suite::JkCompare;
    }
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("elliptica: {e}");
            return ExitCode::from(2);
        }
    };
    let doc = match run_suite(suite, &cfg) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("elliptica: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, doc.to_json()) {
            eprintln!("elliptica: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match cli.format {
        Format::Text => print!("{}", render_text(&doc)),
        Format::Json => print!("{}", doc.to_json()),
    }
    println!("{}", doc.summary_line());
    ExitCode::from(doc.exit_code() as u8)
}
