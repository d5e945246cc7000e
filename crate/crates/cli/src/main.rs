mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::{RingOpts, VinbergOpts};
use input::{Failure, Outcome};

/// Exact combinatorics of reductive varieties.
#[derive(Parser)]
#[command(name = "redvar", version)]
struct Cli {
    #[command(flatten)]
    datum: Datum,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Datum {
    /// Named root datum, e.g. A2, B2, A1xA1, GL2, T1.
    #[arg(long = "type", global = true)]
    ty: Option<String>,
    /// Explicit root datum: {"rank", "simple_roots", "simple_coroots"}.
    #[arg(long, global = true)]
    root_datum: Option<String>,
}

#[derive(Args)]
struct Ring {
    /// Weight cone σ (JSON generators or {"generators", "inequalities"}).
    #[arg(long)]
    cone: Option<String>,
    /// Level K as comma-separated simple roots (default: K_σ).
    #[arg(long)]
    level: Option<String>,
    /// Grading covector (default: sum of fundamental coweights).
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Truncation degree.
    #[arg(long = "N")]
    degree: Option<i64>,
}

impl Ring {
    fn opts(&self) -> RingOpts<'_> {
        RingOpts {
            cone: self.cone.as_deref(),
            level: self.level.as_deref(),
            gamma: self.gamma.as_deref(),
            degree: self.degree,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a W-admissible cone: (C, K), (K, Λ', J), Aut, orbits.
    Classify {
        #[arg(long)]
        cone: String,
    },
    /// Tests W-admissibility of a cone.
    Admissible {
        #[arg(long)]
        cone: String,
    },
    /// Validates a W-complex and lists its orbits and components.
    Complex {
        #[arg(long)]
        complex: Option<String>,
    },
    /// H⁰ and H¹ of a W-complex, and the class of a cocycle.
    Cohomology {
        #[arg(long)]
        complex: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Tensor product multiplicities of V_l ⊗ V_m.
    Tensor {
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// χ_l · χ_m in a truncated character ring.
    Product {
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[command(flatten)]
        ring: Ring,
    },
    /// Semigroup admissibility of a complex, or scalar systems on a cone.
    SemigroupCheck {
        #[arg(long)]
        complex: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
        /// Scalar system (default: c ≡ 1).
        #[arg(long)]
        scalars: Option<String>,
        /// Second scalar system for the torsor comparison.
        #[arg(long)]
        compare: Option<String>,
        #[command(flatten)]
        ring: Ring,
    },
    /// Degeneration by a height function, or validation of a height system.
    Degenerate {
        #[arg(long)]
        height: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long = "N")]
        degree: Option<i64>,
    },
    /// Fiber of the Vinberg family over a zero pattern.
    VinbergFiber {
        /// Simple roots whose coordinate vanishes.
        #[arg(long)]
        zeros: Option<String>,
        /// Weight cone of X for the X * V fiber.
        #[arg(long)]
        cone: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long = "N")]
        degree: Option<i64>,
        /// Compare both readings of the zero pattern with explicit products.
        #[arg(long)]
        crosscheck: bool,
        /// Check multiplicative closure of the Vinberg ring support.
        #[arg(long)]
        support: bool,
    },
    /// Hilbert function of Λ⁺ ∩ σ for a grading.
    Hilbert {
        #[arg(long)]
        cone: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long = "N")]
        degree: Option<i64>,
    },
    /// Explicit SL₂ check of the level-K product rule.
    Oracle {
        #[arg(long = "N")]
        degree: Option<i64>,
    },
}

fn run(cli: &Cli) -> Outcome<Value> {
    let group = || {
        input::group(
            cli.datum.ty.as_deref(),
            cli.datum.root_datum.as_deref(),
            input::caps_from_env()?,
        )
    };
    match &cli.command {
        Command::Classify { cone } => commands::classify(&group()?, cone),
        Command::Admissible { cone } => commands::admissible(&group()?, cone),
        Command::Complex { complex } => commands::complex(&group()?, complex.as_deref()),
        Command::Cohomology { complex, cocycle } => {
            commands::cohomology(&group()?, complex.as_deref(), cocycle.as_deref())
        }
        Command::Tensor { l, m } => commands::tensor(&group()?, l, m),
        Command::Product { l, m, ring } => commands::product(&group()?, l, m, &ring.opts()),
        Command::SemigroupCheck {
            complex,
            cocycle,
            scalars,
            compare,
            ring,
        } => commands::semigroup_check(
            &group()?,
            complex.as_deref(),
            cocycle.as_deref(),
            scalars.as_deref(),
            compare.as_deref(),
            &ring.opts(),
        ),
        Command::Degenerate {
            height,
            gamma,
            degree,
        } => commands::degenerate(&group()?, height.as_deref(), gamma.as_deref(), *degree),
        Command::VinbergFiber {
            zeros,
            cone,
            gamma,
            degree,
            crosscheck,
            support,
        } => commands::vinberg_fiber(
            &group()?,
            &VinbergOpts {
                zeros: zeros.as_deref(),
                cone: cone.as_deref(),
                gamma: gamma.as_deref(),
                degree: *degree,
                crosscheck: *crosscheck,
                support: *support,
            },
        ),
        Command::Hilbert {
            cone,
            gamma,
            degree,
        } => commands::hilbert(&group()?, cone.as_deref(), gamma.as_deref(), *degree),
        Command::Oracle { degree } => commands::oracle(*degree),
    }
}

fn error_kind(e: &redvar_core::Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{'])
        .next()
        .unwrap_or_default()
        .to_string()
}

fn emit(out: &Value, path: Option<&str>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(out).expect("JSON values serialize") + "\n";
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = std::env::args_os().map(|a| match a.into_string() {
        Ok(s) => s.replace('\u{2212}', "-").into(),
        Err(raw) => raw,
    });
    let cli = Cli::parse_from(args);
    let (out, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Malformed(m)) => (
            json!({"error": {"kind": "MalformedInput", "message": m}}),
            2,
        ),
        Err(Failure::Domain(e)) => (
            json!({"error": {"kind": error_kind(&e), "message": e.to_string()}}),
            1,
        ),
    };
    if code != 0 {
        eprintln!(
            "redvar: {}",
            out["error"]["message"].as_str().unwrap_or_default()
        );
    }
    if let Err(e) = emit(&out, cli.json_out.as_deref()) {
        eprintln!("redvar: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
