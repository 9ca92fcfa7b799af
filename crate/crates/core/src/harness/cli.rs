//! `zeromode` command line.
//!
//! Exit codes: 0 success, 1 validation or computation failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classical::NormalizationContext;
use crate::harness::config::{Overrides, ScenarioConfig};
use crate::harness::csv::{fmt, write_file};
use crate::harness::figures::{figure_data, write_figure, Figure};
use crate::harness::scenario::Scenario;
use crate::harness::sweep::{run_sweep, sweep_csv};
use crate::harness::validate::{run_validation, ValidateOptions};
use crate::metrics::EntanglementReport;
use crate::gaussian::CovarianceMatrix;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zeromode", version, about = "Quantum SHG in waveguide arrays pumped in the zero supermode")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// TOML scenario file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub zeta_max: Option<f64>,
    /// RK4 steps per unit ζ.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Fundamental loss in dB/cm.
    #[arg(long, global = true)]
    pub loss_f: Option<f64>,
    /// Harmonic loss in dB/cm.
    #[arg(long, global = true)]
    pub loss_h: Option<f64>,
    /// Loss segments over [0, zeta_max].
    #[arg(long, global = true)]
    pub segments: Option<usize>,
    /// Run the reduced validation suite.
    #[arg(long, global = true)]
    pub quick: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Perturb the supermode matrix (negative control for `validate`).
    #[arg(long, global = true, hide = true)]
    pub perturb_basis: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the invariant suite and print a pass/fail table.
    Validate,
    /// Integrate the classical mean field and write trajectory.csv.
    Classical,
    /// Write the superquadrature, individual and numeric covariances at zeta_max.
    Quantum,
    /// Write entanglement metrics over the ζ grid to metrics.csv.
    Metrics,
    /// Write the curve data of one figure.
    Figure {
        /// fig2, fig3, fig4a, fig4b or fig5.
        name: String,
    },
    /// Entanglement reports over several array sizes.
    Sweep {
        /// Comma-separated odd array sizes.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,9")]
        n_list: Vec<usize>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Convert between ζ and physical length.
    Units {
        /// Nonlinearity in mm⁻¹·mW^(-1/2).
        #[arg(long)]
        g: f64,
        /// Power per odd waveguide in mW.
        #[arg(long)]
        pl: f64,
        #[arg(long, conflicts_with = "z", required_unless_present = "z")]
        zeta: Option<f64>,
        /// Length in mm.
        #[arg(long)]
        z: Option<f64>,
    },
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            out: self.out.clone(),
            zeta_max: self.zeta_max,
            steps: self.steps,
            loss_f: self.loss_f,
            loss_h: self.loss_h,
            segments: self.segments,
        }
    }

    fn load_config(&self) -> Result<ScenarioConfig> {
        let mut cfg = match &self.config {
            Some(p) => ScenarioConfig::load(p)?,
            None => ScenarioConfig::default(),
        };
        cfg.apply(&self.overrides())?;
        Ok(cfg)
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_) | Error::UnknownFigure(_) | Error::InvalidLattice(_) | Error::InvalidContext(_)
    )
}

/// Parses `args` (including the program name) and runs the command,
/// writing human-readable output to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            }
        }
    }
}

fn write_cov(path: &Path, v: &CovarianceMatrix) -> Result<()> {
    let mut buf = Vec::new();
    v.write_csv(&mut buf)?;
    write_file(path, &buf)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if let Command::Units { g, pl, zeta, z } = &cli.command {
        return units(*g, *pl, *zeta, *z, out);
    }
    let cfg = cli.global.load_config()?;
    let dir = cfg.output.dir.clone();
    match &cli.command {
        Command::Validate => {
            let opts = ValidateOptions {
                quick: cli.global.quick,
                seed: cli.global.seed,
                perturb_basis: cli.global.perturb_basis,
            };
            let report = run_validation(&cfg, &opts);
            writeln!(out, "{report}")?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Classical => {
            let traj = Scenario::new(cfg)?.sampled_trajectory()?;
            let mut buf = Vec::new();
            traj.write_csv(&mut buf)?;
            let path = dir.join("trajectory.csv");
            write_file(&path, &buf)?;
            writeln!(out, "wrote {} ({} samples, energy drift {:.3e})", path.display(), traj.samples.len(), traj.energy_drift())?;
            Ok(EXIT_OK)
        }
        Command::Quantum => {
            let sc = Scenario::new(cfg)?;
            let zeta = sc.config.grid.zeta_max;
            if sc.config.is_zero_supermode_pump() {
                write_cov(&dir.join("superquadrature.csv"), &sc.superquadrature(zeta)?)?;
                write_cov(&dir.join("individual.csv"), &sc.individual(zeta)?)?;
            }
            write_cov(&dir.join("individual_numeric.csv"), &sc.numeric_state(zeta)?)?;
            writeln!(out, "wrote covariances at zeta = {zeta} to {}", dir.display())?;
            Ok(EXIT_OK)
        }
        Command::Metrics => {
            let sc = Scenario::new(cfg)?;
            let n = sc.basis.n();
            let mut text = EntanglementReport::csv_header(n);
            text.push('\n');
            for z in sc.config.zeta_grid() {
                text.push_str(&sc.report(z)?.csv_row(n));
                text.push('\n');
            }
            let path = dir.join("metrics.csv");
            write_file(&path, text.as_bytes())?;
            writeln!(out, "wrote {}", path.display())?;
            Ok(EXIT_OK)
        }
        Command::Figure { name } => {
            let figure: Figure = name.parse()?;
            let data = figure_data(figure, &Scenario::new(cfg)?)?;
            let fig_dir = write_figure(&data, &dir)?;
            writeln!(out, "wrote {} curves to {}", data.curves.len(), fig_dir.display())?;
            Ok(EXIT_OK)
        }
        Command::Sweep { n_list, workers } => {
            let sc = Scenario::new(cfg)?;
            let reports = run_sweep(&sc, n_list, &sc.config.zeta_grid(), *workers)?;
            let path = dir.join("sweep.csv");
            write_file(&path, sweep_csv(&reports).as_bytes())?;
            writeln!(out, "wrote {} ({} rows)", path.display(), reports.len())?;
            Ok(EXIT_OK)
        }
        Command::Units { .. } => unreachable!("handled above"),
    }
}

fn units(g: f64, pl: f64, zeta: Option<f64>, z: Option<f64>, out: &mut dyn Write) -> Result<i32> {
    let ctx = NormalizationContext::new(g, pl).map_err(|e| Error::Config(e.to_string()))?;
    let (zeta, z) = match (zeta, z) {
        (Some(v), _) => (v, ctx.zeta_to_z(v)),
        (None, Some(v)) => (ctx.z_to_zeta(v), v),
        (None, None) => return Err(Error::Config("give --zeta or --z".into())),
    };
    if !(zeta >= 0.0 && zeta.is_finite()) {
        return Err(Error::Config(format!("coordinate must be finite and >= 0, got {zeta}")));
    }
    writeln!(out, "zeta = {}", fmt(zeta))?;
    writeln!(out, "z_mm = {}", fmt(z))?;
    writeln!(out, "zeta_per_mm = {}", fmt(ctx.zeta_per_mm()))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("zeromode").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn units_anchor() {
        let (code, text) = run_capture(&["units", "--g", "25e-4", "--pl", "200", "--zeta", "1"]);
        assert_eq!(code, 0);
        assert!(text.contains(&format!("z_mm = {}", fmt(20.0))), "{text}");
        let (_, text) = run_capture(&["units", "--g", "25e-4", "--pl", "200", "--z", "40"]);
        assert!(text.contains(&format!("zeta = {}", fmt(2.0))), "{text}");
        let (_, text) = run_capture(&["units", "--g", "25e-4", "--pl", "200", "--zeta", "0"]);
        assert!(text.contains(&format!("z_mm = {}", fmt(0.0))));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["units", "--g", "-1", "--pl", "200", "--zeta", "1"]).0, 2);
        assert_eq!(run_capture(&["bogus"]).0, 2);
        assert_eq!(run_capture(&["figure", "fig9"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }
}
