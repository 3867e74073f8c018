use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sl2star::frontend::{run_checks, CheckReport, Config, Evaluator, OutputFormat, Section, Suite, ENV_PREFIX};
use sl2star::gauge::{cnk_from_b, CnkTable, solve_gauge, verify_gauge};
use sl2star::poisson::{self, PoissonConfig};
use sl2star::report::VerificationReport;
use sl2star::series::format_rational;
use sl2star::uhsl2::{
    limits_report, specialization_report, xi_algebra_build, xi_bialgebra_report, xi_relations_report,
    z_commutators, z_coproducts,
};

#[derive(Parser)]
#[command(name = "sl2star", version, about = "Exact computations in the quantized dual of SL(2,R)")]
struct Cli {
    /// Truncation order N in eps.
    #[arg(long, global = true)]
    order: Option<i32>,
    /// Coefficients c0,c2,c4,... of A(eps^2).
    #[arg(long = "A", global = true)]
    a: Option<String>,
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Flat `key = value` file; loaded before environment and flags.
    #[arg(long, global = true, env = "SL2STAR_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression.
    Normalize { expr: String },
    Product { left: String, right: String },
    Commutator { left: String, right: String },
    Coproduct { expr: String },
    /// Runs a suite: bialgebra, gauge, poisson, uh or all.
    Check { suite: String },
    /// Solves for the gauge making powers of x1 undeformed.
    Gauge {
        /// Raw coefficients as k:p/q,...
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
    },
    Poisson {
        #[command(subcommand)]
        action: PoissonAction,
    },
    Uh {
        #[command(subcommand)]
        action: UhAction,
    },
}

#[derive(Subcommand)]
enum PoissonAction {
    Verify {
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum UhAction {
    VerifyZ,
    VerifyXi,
    Limits,
}

fn load_config(cli: &Cli) -> Result<Config, Box<dyn std::error::Error>> {
    let mut config = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    let config_var = format!("{ENV_PREFIX}CONFIG");
    config.apply_env(ENV_PREFIX, std::env::vars().filter(|(k, _)| *k != config_var))?;
    if let Some(n) = cli.order {
        config.set("order", &n.to_string())?;
    }
    if let Some(a) = &cli.a {
        config.set("a", a)?;
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(t) = cli.tol {
        config.tol = t;
    }
    Ok(config)
}

fn emit_report(config: &Config, report: &CheckReport) {
    match config.format {
        OutputFormat::Text => print!("{}", report.to_text()),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(report).unwrap_or_default()),
    }
}

fn single(suite: &str, report: VerificationReport) -> CheckReport {
    CheckReport {
        sections: vec![Section {
            suite: suite.to_string(),
            report,
        }],
    }
}

/// `{"n": {"k": "c^n_k"}}` for every row of the table.
fn cnk_json(table: &CnkTable) -> serde_json::Value {
    let mut rows = serde_json::Map::new();
    for n in 1..=table.nmax() {
        let row: serde_json::Map<_, _> = table
            .row(n)
            .into_iter()
            .flatten()
            .map(|(k, v)| (k.to_string(), json!(format_rational(v))))
            .collect();
        rows.insert(n.to_string(), row.into());
    }
    rows.into()
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    let mut config = load_config(&cli)?;
    let json = config.format == OutputFormat::Json;
    match cli.command {
        Command::Normalize { expr } => {
            let v = Evaluator::new(config).normalize(&expr)?;
            if json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
        }
        Command::Product { left, right } => {
            let v = Evaluator::new(config).product(&left, &right)?;
            if json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
        }
        Command::Commutator { left, right } => {
            let v = Evaluator::new(config).commutator(&left, &right)?;
            if json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
        }
        Command::Coproduct { expr } => {
            let t = Evaluator::new(config).coproduct(&expr)?;
            if json {
                println!("{}", t.to_json());
            } else {
                println!("{t}");
            }
        }
        Command::Check { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_checks(suite, &config)?;
            emit_report(&config, &report);
            return Ok(report.passed());
        }
        Command::Gauge { b, kmax, nmax } => {
            if let Some(b) = b {
                config.set("b", &b)?;
            }
            if let Some(k) = kmax {
                config.kmax = k;
            }
            if let Some(n) = nmax {
                config.nmax = n;
            }
            let model = config.raw_model()?;
            let solution = solve_gauge(&model, config.kmax)?;
            let table = cnk_from_b(&model, config.nmax)?;
            let verified = verify_gauge(&model, &solution, config.nmax);
            let out = json!({
                "b": serde_json::to_value(&model)?["b"],
                "a": serde_json::to_value(&solution)?["a"],
                "cnk": cnk_json(&table),
                "nmax": config.nmax,
                "verified": verified,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            return Ok(verified);
        }
        Command::Poisson {
            action: PoissonAction::Verify { samples, tol, seed },
        } => {
            let pc = PoissonConfig {
                samples: samples.unwrap_or(config.samples),
                tol: tol.unwrap_or(config.tol),
                seed: seed.unwrap_or(config.seed),
                ..PoissonConfig::default()
            };
            let report = poisson::verify(&pc)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("kappa                       {:.12}", report.kappa);
                println!("kappa spread                {:.3e}", report.kappa_spread);
                println!("max relative residual       {:.3e}", report.max_relative_residual);
                println!("max multiplicativity error  {:.3e}", report.max_multiplicativity_residual);
                println!("max Jacobi residual         {:.3e}", report.max_jacobi_residual);
                println!("{}", if report.passed() { "PASS" } else { "FAIL" });
            }
            return Ok(report.passed());
        }
        Command::Uh { action } => {
            let n = config.order;
            let report = match action {
                UhAction::VerifyZ => {
                    let mut r = z_commutators(n, &config.a_series())?;
                    r.extend(z_coproducts(n, &config.a_series())?);
                    r
                }
                UhAction::VerifyXi => {
                    let xi = xi_algebra_build(n)?;
                    let mut r = xi_relations_report(&xi);
                    r.extend(xi_bialgebra_report(&xi));
                    r.extend(specialization_report(n)?);
                    r
                }
                UhAction::Limits => limits_report(&xi_algebra_build(n)?)?,
            };
            let report = single("uh", report);
            emit_report(&config, &report);
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
