use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tropical_period_cli::{parse_stages, Format, InputSpec, RunConfig};

/// Verify an integral affine sphere instance: validation, sphere
/// construction, cohomology cross-checks, radiance positivity, period
/// structure, and the exact lattice.
#[derive(Parser)]
#[command(name = "tropical-period", version, disable_help_subcommand = true)]
struct Cli {
    /// Path to the instance JSON.
    #[arg(long)]
    input: PathBuf,

    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Comma-separated stage subset (validate,sphere,cohomology,radiance,period,gamma).
    #[arg(long)]
    stages: Option<String>,

    /// Comma-separated positive reals for the positivity sweep.
    #[arg(long)]
    y_sweep: Option<String>,

    /// Eigenvalue threshold for the positivity sweep.
    #[arg(long)]
    tolerance: Option<f64>,

    /// Report format: json or text.
    #[arg(long)]
    format: Option<String>,
}

fn parse_y_sweep(list: &str) -> Result<Vec<f64>, String> {
    let values: Vec<f64> = list
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("bad y value {s:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if values.iter().any(|y| !y.is_finite() || *y <= 0.0) {
        return Err("y values must be finite and positive".into());
    }
    Ok(values)
}

enum Verdict {
    AllPassed,
    InputInvalid,
    ChecksFailed,
}

fn execute(cli: Cli) -> Result<Verdict, String> {
    let raw = fs::read_to_string(&cli.input)
        .map_err(|e| format!("cannot read {}: {e}", cli.input.display()))?;
    let input: InputSpec = serde_json::from_str(&raw)
        .map_err(|e| format!("cannot parse {}: {e}", cli.input.display()))?;

    let options = input.options.as_ref();
    let mut config = RunConfig::default();
    if let Some(list) = cli.stages.as_deref() {
        config.stages = parse_stages(list)?;
    }
    if let Some(list) = cli.y_sweep.as_deref() {
        config.y_sweep = parse_y_sweep(list)?;
    } else if let Some(ys) = options.and_then(|o| o.y_sweep.clone()) {
        if ys.iter().any(|y| !y.is_finite() || *y <= 0.0) {
            return Err("y values must be finite and positive".into());
        }
        config.y_sweep = ys;
    }
    if let Some(tol) = cli.tolerance.or_else(|| options.and_then(|o| o.tolerance)) {
        if !tol.is_finite() || tol <= 0.0 {
            return Err("tolerance must be finite and positive".into());
        }
        config.tolerance = tol;
    }
    let format = match cli.format.as_deref().or_else(|| options.and_then(|o| o.format.as_deref()))
    {
        Some(s) => s.parse::<Format>()?,
        None => Format::Json,
    };

    let outcome = tropical_period_cli::run(&input, &config)?;
    let rendered = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.report)
                .map_err(|e| format!("cannot serialize report: {e}"))?;
            s.push('\n');
            s
        }
        Format::Text => tropical_period_cli::render_text(&outcome.report),
    };
    match &cli.output {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    if !outcome.input_valid {
        eprintln!("error: input failed validation; see the validate section of the report");
        Ok(Verdict::InputInvalid)
    } else if !outcome.all_passed {
        Ok(Verdict::ChecksFailed)
    } else {
        Ok(Verdict::AllPassed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(Verdict::AllPassed) => ExitCode::SUCCESS,
        Ok(Verdict::ChecksFailed) => ExitCode::from(2),
        Ok(Verdict::InputInvalid) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
