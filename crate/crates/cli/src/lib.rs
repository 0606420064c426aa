//! Command-line front end for `fracmap-core`.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::{Format, Report};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    InvalidInput = 1,
    /// Degenerate regime, e.g. a periodic orbit where a density was requested.
    Degenerate = 2,
    /// An invariant check failed.
    InvariantFailure = 3,
}

#[derive(Debug, Parser)]
#[command(
    name = "fracmap",
    version,
    about = "Transfer operator f(x) -> f(U - 1/x)/x^2 and the map x -> 1/(U - x)",
    long_about = "Transfer operator f(x) -> f(U - 1/x)/x^2 and the map x -> 1/(U - x).\n\n\
        Every subcommand writes one report. CSV output is a header row plus data rows, \
        optional extra tables separated by a blank line, then a blank line and a key,value \
        section (meta entries followed by the footer). JSON output is a single object with \
        `meta`, `rows` and `footer` (plus `coefficients` for expand).\n\n\
        Exit codes: 0 success, 1 invalid input, 2 degenerate regime, 3 invariant failure."
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit histogram against the analytic Lorentzian density.
    ///
    /// Columns: bin_center, empirical_density, analytic_density.
    /// Footer: ks_distance, sup_bin_error, n, burn_in, below, above, atomic_period, resonance.
    Density(DensityArgs),
    /// Trajectory by direct iteration and by the closed form.
    ///
    /// Columns: k, direct, closed_form, deviation (chordal distance).
    /// Footer: max_deviation, final_direct, final_closed_form, regime, point_attractor.
    Orbit(OrbitArgs),
    /// Expansion of a built-in function in the eigenfunctions.
    ///
    /// Columns: x, f_re, f_im, recon_re, recon_im, recon_half_re, recon_half_im
    /// (reconstructions with n_max and n_max/2 harmonics).
    /// Coefficient table: n, re, im.
    /// Footer: l1_error, l1_error_half, n_max, node_count.
    Expand(ExpandArgs),
    /// One eigenfunction and the operator applied to it.
    ///
    /// Columns: x, lorentzian, sigma_re, sigma_im, pole_form_re, pole_form_im,
    /// operator_re, operator_im, residual.
    /// Footer: phi, eigenvalue_re, eigenvalue_im, r_re, r_im, x0_disc,
    /// pole_constant_re, pole_constant_im, max_residual.
    Eigen(EigenArgs),
    /// Parameters with purely periodic dynamics.
    ///
    /// Columns: n, u, u_squared, scalar_deviation, verified_period.
    /// Footer: max_scalar_deviation.
    Cycles(CyclesArgs),
    /// Reduce x -> (m11 x + m12)/(m21 x + m22) to x -> 1/(U - x).
    ///
    /// Columns: k, x, mapped, canonical, deviation.
    /// Footer: u, k1, k2, regime, max_deviation.
    Normalize(NormalizeArgs),
    /// Run the invariant battery for one U; exit 3 on any failure.
    ///
    /// Columns: check, value, threshold, pass.
    /// Footer: checks, failures.
    Residuals(ResidualsArgs),
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub x0: f64,
    /// Number of binned orbit points.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 200)]
    pub bins: usize,
    /// Histogram window as LO,HI.
    #[arg(long, default_value = "-8,8", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: (f64, f64),
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 100)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: f64,
    /// gaussian | lorentz-shifted | bump | quartic | sigma:<n>
    #[arg(long = "fn", default_value = "gaussian")]
    pub function: String,
    #[arg(long, default_value_t = 64)]
    pub n_max: u32,
    /// Number of sample points on the window.
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    #[arg(long, default_value = "-8,8", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: (f64, f64),
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: f64,
    /// Harmonic index.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub n: i32,
    #[arg(long, default_value_t = 400)]
    pub points: usize,
    #[arg(long, default_value = "-8,8", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: (f64, f64),
}

#[derive(Debug, Args)]
pub struct CyclesArgs {
    /// Period or inclusive range A..B.
    #[arg(long, default_value = "3..12", value_parser = parse_period_range)]
    pub n: (u32, u32),
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    /// Matrix entries as M11,M12,M21,M22.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix)]
    pub matrix: [f64; 4],
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 20)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct ResidualsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: f64,
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    match parse_floats(s)?.as_slice() {
        &[lo, hi] if lo < hi => Ok((lo, hi)),
        _ => Err("expected LO,HI with LO < HI".into()),
    }
}

fn parse_matrix(s: &str) -> Result<[f64; 4], String> {
    parse_floats(s)?
        .try_into()
        .map_err(|_| "expected four comma-separated entries".to_string())
}

fn parse_period_range(s: &str) -> Result<(u32, u32), String> {
    let bad = |e: std::num::ParseIntError| e.to_string();
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.parse().map_err(bad)?, b.parse().map_err(bad)?);
            if a > b {
                return Err("empty range".into());
            }
            Ok((a, b))
        }
        None => {
            let n = s.parse().map_err(bad)?;
            Ok((n, n))
        }
    }
}

/// Result of one invocation: the rendered report (if any), diagnostics for
/// standard error, and the exit status.
#[derive(Debug)]
pub struct Invocation {
    pub output: Option<String>,
    pub out_path: Option<PathBuf>,
    pub messages: Vec<String>,
    pub status: Status,
}

/// Parses arguments and runs the command without touching the filesystem.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let (output, messages, status) = if e.use_stderr() {
                (None, vec![text], Status::InvalidInput)
            } else {
                // --help and --version
                (Some(text), Vec::new(), Status::Success)
            };
            return Invocation {
                output,
                out_path: None,
                messages,
                status,
            };
        }
    };
    let outcome = commands::run(&cli.command);
    Invocation {
        output: outcome.report.map(|r| r.render(cli.format)),
        out_path: cli.out,
        messages: outcome.messages,
        status: outcome.status,
    }
}
