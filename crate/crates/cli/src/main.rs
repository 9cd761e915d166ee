//! `gva`: batch front end for the lattice-gva library.

mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lattice_gva::grammar::Oscillator;

#[derive(Parser, Debug)]
#[command(name = "gva", version, about = "Exact computations in the rank-one lattice GVA and its commutants")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Conformal weight bound [default: 6; 4 for verify and report]
    #[arg(long, global = true)]
    pub max_weight: Option<u32>,
    /// Charge bound in units of varpi
    #[arg(long, global = true, default_value_t = 6)]
    pub max_charge: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Oscillator used to render vectors: w = varpi(n), a = alpha(n)
    #[arg(long, global = true, value_enum, default_value_t = Osc::A)]
    pub osc: Osc,
}

impl Global {
    pub fn weight_or(&self, default: u32) -> u32 {
        self.max_weight.unwrap_or(default)
    }

    pub fn oscillator(&self) -> Oscillator {
        match self.osc {
            Osc::W => Oscillator::Varpi,
            Osc::A => Oscillator::Alpha,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Osc {
    W,
    A,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites
    Verify {
        /// Suite name, or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seeded instances for sampling suites
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Total-weight bound of sampled instances
        #[arg(long, default_value_t = 7)]
        sample_weight: u32,
    },
    /// Character of a named space, checked against its fermionic formula when known
    Char {
        #[arg(long, default_value = "C")]
        space: String,
    },
    /// Joint kernel of the non-negative modes of a generating set
    Commutant {
        /// Generating set: W, C or Wcirc
        #[arg(long, default_value = "W")]
        of: String,
        /// Ambient space: VA1 or VA1circ
        #[arg(long = "in", default_value = "VA1")]
        ambient: String,
    },
    /// Kernel of the modes of phi_0..phi_k inside VA1 against the basis of W
    Duality,
    /// Dimensions of the C2 quotient, and optionally one product and bracket
    Zhu {
        #[arg(long, default_value = "C")]
        space: String,
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
        /// Quotient by all u(n)v with n <= -2 instead of n = -2
        #[arg(long)]
        generalized: bool,
    },
    /// Graded dimensions of the arc space of a ring
    Jet {
        /// RW, RC, or a path to a JSON ring spec
        #[arg(long, default_value = "RC")]
        ring: String,
    },
    /// The generator phi_n of C
    Phi {
        #[arg(long)]
        n: u32,
    },
    /// Products u(n)v
    Ope {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Mode index (integer or half-integer); all singular modes when omitted
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// Explicit basis of a named space
    Basis {
        #[arg(long, default_value = "C")]
        space: String,
    },
    /// sl2 structure of the charge-alpha part of C
    Sl2,
    /// Every check at one weight bound
    Report,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            let body = match cli.global.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&outcome.json).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Text => outcome.text,
            };
            if let Err(e) = emit(&cli.global.output, &body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

fn emit(path: &Option<PathBuf>, body: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
