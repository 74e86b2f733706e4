//! Flag definitions and the `--config` key-value file.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "frictionless", version, about = "Design and check fast frictionless expansions of a harmonic trap")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scaling function and trap frequency of a design.
    Design(DesignArgs),
    /// Mode energies along a design, optionally checked on a grid.
    Simulate(DesignArgs),
    /// Three-jump trajectory with an expulsive first segment.
    Bangbang(BangBangArgs),
    /// Final ground-state energy after a linear or uniform-adiabaticity ramp.
    Reference(ReferenceArgs),
    /// Summary rows for a list of durations.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Initial trap frequency in Hz.
    #[arg(long, allow_negative_numbers = true, value_name = "F", conflicts_with = "omega0_rad")]
    pub omega0_hz: Option<f64>,
    /// Initial trap frequency in rad/s.
    #[arg(long, allow_negative_numbers = true, value_name = "F")]
    pub omega0_rad: Option<f64>,
    /// Final trap frequency in Hz.
    #[arg(long, allow_negative_numbers = true, value_name = "F", conflicts_with = "omegaf_rad")]
    pub omegaf_hz: Option<f64>,
    /// Final trap frequency in rad/s.
    #[arg(long, allow_negative_numbers = true, value_name = "F")]
    pub omegaf_rad: Option<f64>,
    /// Duration of the expansion in ms.
    #[arg(long, allow_negative_numbers = true, value_name = "F", default_value_t = 25.0)]
    pub tf_ms: f64,
    /// Rows in time-resolved output.
    #[arg(long, value_name = "N", default_value_t = 1000)]
    pub samples: usize,
    /// Write CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file; keys are long flag names, flags win.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ansatz {
    /// Quintic polynomial.
    Poly,
    /// Exponential of a quintic.
    Exppoly,
    /// Sextic with a prescribed accumulated phase; needs --tprime-ms.
    Phase,
}

#[derive(Debug, Clone, Args)]
pub struct DesignFlags {
    #[arg(long, value_enum, default_value_t = Ansatz::Poly)]
    pub ansatz: Ansatz,
    /// Phase target t' in ms for `--ansatz phase`.
    #[arg(long, allow_negative_numbers = true, value_name = "F")]
    pub tprime_ms: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyFlags {
    /// Quantum numbers of the modes to follow.
    #[arg(long = "n", value_name = "N", default_values_t = [0usize])]
    pub levels: Vec<usize>,
    /// Propagate on a grid and report final fidelity and populations.
    #[arg(long)]
    pub verify: bool,
    /// Grid points for --verify.
    #[arg(long, value_name = "N")]
    pub grid_points: Option<usize>,
    /// Grid half width for --verify, in the length unit of mass and hbar.
    #[arg(long, allow_negative_numbers = true, value_name = "F")]
    pub grid_halfwidth: Option<f64>,
    /// Largest time step for --verify, in ns.
    #[arg(long, allow_negative_numbers = true, value_name = "F")]
    pub dt_ns: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DesignArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub design: DesignFlags,
    #[command(flatten)]
    pub verify: VerifyFlags,
}

#[derive(Debug, Clone, Args)]
pub struct BangBangArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Imaginary first-segment frequency as a fraction of omega0.
    #[arg(long = "omegaI-frac", allow_negative_numbers = true, value_name = "F", default_value_t = 0.9)]
    pub omega_i_frac: f64,
    /// Second-segment frequency as a fraction of omega0.
    #[arg(long = "omega2-frac", allow_negative_numbers = true, value_name = "F", default_value_t = 1.0)]
    pub omega2_frac: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ramp {
    Linear,
    Uniform,
}

#[derive(Debug, Clone, Args)]
pub struct ReferenceArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = Ramp::Linear)]
    pub ramp: Ramp,
    #[arg(long, allow_negative_numbers = true, value_name = "F", default_value_t = 1.0)]
    pub tf_min_ms: f64,
    #[arg(long, allow_negative_numbers = true, value_name = "F", default_value_t = 10_000.0)]
    pub tf_max_ms: f64,
    /// Log-spaced durations between the bounds.
    #[arg(long, value_name = "N", default_value_t = 40)]
    pub tf_steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub design: DesignFlags,
    #[command(flatten)]
    pub verify: VerifyFlags,
    /// Comma-separated durations in ms.
    #[arg(long, value_name = "LIST", value_delimiter = ',', default_value = "2,6,10,15,25")]
    pub tf_list_ms: Vec<f64>,
}

impl Command {
    pub fn spec(&self) -> &SpecArgs {
        match self {
            Command::Design(a) | Command::Simulate(a) => &a.spec,
            Command::Bangbang(a) => &a.spec,
            Command::Reference(a) => &a.spec,
            Command::Sweep(a) => &a.spec,
        }
    }
}

/// Flags that exclude each other: setting one on the command line drops the
/// other from the config file.
const PARTNERS: [(&str, &str); 2] = [("omega0-hz", "omega0-rad"), ("omegaf-hz", "omegaf-rad")];

/// Flags given on the command line, by long name.
fn given_flags(argv: &[String]) -> Vec<String> {
    argv.iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect()
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k == "config" {
            return Err(format!("config line {}: invalid key '{k}'", i + 1));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

/// Inserts config entries after the subcommand unless the command line
/// already sets that flag or its alternative.
pub fn merge_config(argv: &[String], entries: &[(String, String)]) -> Vec<String> {
    let given = given_flags(argv);
    let overridden = |key: &str| {
        given.iter().any(|g| g == key)
            || PARTNERS.iter().any(|&(a, b)| (key == a && given.iter().any(|g| g == b)) || (key == b && given.iter().any(|g| g == a)))
    };
    let mut extra = Vec::new();
    for (k, v) in entries {
        if overridden(k) {
            continue;
        }
        match v.as_str() {
            "true" => extra.push(format!("--{k}")),
            "false" => {}
            _ => {
                extra.push(format!("--{k}"));
                extra.push(v.clone());
            }
        }
    }
    let mut merged = argv[..2.min(argv.len())].to_vec();
    merged.extend(extra);
    merged.extend_from_slice(&argv[2.min(argv.len())..]);
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn config_lines() {
        let e = parse_config("# comment\ntf-ms = 6\n\n verify = true # trailing\n").unwrap();
        assert_eq!(e, vec![("tf-ms".into(), "6".into()), ("verify".into(), "true".into())]);
        assert!(parse_config("nonsense").is_err());
        assert!(parse_config("config = x").is_err());
    }

    #[test]
    fn flags_override_file() {
        let entries = parse_config("tf-ms = 6\nomega0-hz = 300\nverify = true\nsamples = 10").unwrap();
        let merged = merge_config(&argv("frictionless design --tf-ms 2 --omega0-rad 1000"), &entries);
        assert_eq!(merged, argv("frictionless design --verify --samples 10 --tf-ms 2 --omega0-rad 1000"));
    }

    #[test]
    fn equals_form_counts_as_given() {
        let entries = parse_config("tf-ms = 6").unwrap();
        let merged = merge_config(&argv("frictionless design --tf-ms=2"), &entries);
        assert_eq!(merged, argv("frictionless design --tf-ms=2"));
    }
}
