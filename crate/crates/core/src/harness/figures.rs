//! Curve data for the squeezing and entanglement figures.
//!
//! Each figure is written to `<out>/<name>/` as one `zeta,value` CSV per
//! curve plus `manifest.csv` (`file,label`).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::classical::analytic_shg_solution;
use crate::harness::csv::{write_curve, write_file};
use crate::harness::scenario::Scenario;
use crate::metrics::{log_negativity, nu_minus, optimize_vlf_gains};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Classical powers and superquadrature squeezing.
    Fig2,
    /// Two-color entanglement.
    Fig3,
    /// Individual amplitude squeezing for N = 1..9.
    Fig4a,
    /// Pairwise entanglement of individual modes for N = 3..9.
    Fig4b,
    /// Optimized VLF combinations for N = 3..9.
    Fig5,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "fig4a" => Ok(Self::Fig4a),
            "fig4b" => Ok(Self::Fig4b),
            "fig5" => Ok(Self::Fig5),
            other => Err(Error::UnknownFigure(other.to_string())),
        }
    }
}

impl Figure {
    pub const ALL: [Figure; 5] = [Self::Fig2, Self::Fig3, Self::Fig4a, Self::Fig4b, Self::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4a => "fig4a",
            Self::Fig4b => "fig4b",
            Self::Fig5 => "fig5",
        }
    }
}

/// One named series.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub file: String,
    pub label: String,
    pub values: Vec<f64>,
}

impl Curve {
    fn new(file: impl Into<String>, label: impl Into<String>, values: Vec<f64>) -> Self {
        Self { file: file.into(), label: label.into(), values }
    }
}

/// Series of a figure sampled on a common ζ grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureData {
    pub figure: Figure,
    pub zetas: Vec<f64>,
    pub curves: Vec<Curve>,
}

fn sample(zetas: &[f64], mut f: impl FnMut(f64) -> Result<f64>) -> Result<Vec<f64>> {
    zetas.iter().map(|&z| f(z)).collect()
}

pub fn figure_data(figure: Figure, scenario: &Scenario) -> Result<FigureData> {
    let zetas = scenario.config.zeta_grid();
    let mut curves = Vec::new();
    match figure {
        Figure::Fig2 => {
            let uf = sample(&zetas, |z| Ok(analytic_shg_solution(z)?.u_f.powi(2)))?;
            let uh = sample(&zetas, |z| Ok(analytic_shg_solution(z)?.u_h.powi(2)))?;
            curves.push(Curve::new("uf2.csv", "fundamental supermode power u_f^2", uf));
            curves.push(Curve::new("uh2.csv", "harmonic power u_h^2", uh));
            let sq = sample(&zetas, |z| Ok(2.0 * scenario.superquadrature(z)?.var_x(0)))?;
            let yh = sample(&zetas, |z| Ok(2.0 * scenario.superquadrature(z)?.var_y(1)))?;
            curves.push(Curve::new("sq_xs.csv", "fundamental amplitude superquadrature 2V(X_l^s,X_l^s) / shot noise", sq));
            curves.push(Curve::new("sq_yh.csv", "harmonic phase superquadrature 2V(Y^h,Y^h) / shot noise", yh));
        }
        Figure::Fig3 => {
            let nu = sample(&zetas, |z| nu_minus(&scenario.superquadrature(z)?, &[1]))?;
            let en = nu.iter().map(|&v| log_negativity(v)).collect::<Result<Vec<_>>>()?;
            curves.push(Curve::new("nu_two_color.csv", "two-color nu_- (fundamental supermode | collective harmonic)", nu));
            curves.push(Curve::new("en_two_color.csv", "two-color E_N", en));
        }
        Figure::Fig4a => {
            for n in [1, 3, 5, 7, 9] {
                let sc = scenario.with_n(n)?;
                let sq = sample(&zetas, |z| Ok(2.0 * sc.individual(z)?.var_x(0)))?;
                curves.push(Curve::new(format!("sq_N{n}.csv"), format!("N = {n}: 2V(X_1,X_1) / shot noise"), sq));
            }
            curves.push(Curve::new("shot_noise.csv", "shot noise", vec![1.0; zetas.len()]));
        }
        Figure::Fig4b => {
            for n in [3, 5, 7, 9] {
                let sc = scenario.with_n(n)?;
                let nu = sample(&zetas, |z| nu_minus(&sc.individual(z)?.reduce(&[0, 2])?, &[1]))?;
                let en = nu.iter().map(|&v| log_negativity(v)).collect::<Result<Vec<_>>>()?;
                curves.push(Curve::new(format!("nu_N{n}.csv"), format!("N = {n}: pairwise nu_- (guides 1, 3)"), nu));
                curves.push(Curve::new(format!("en_N{n}.csv"), format!("N = {n}: pairwise E_N (guides 1, 3)"), en));
            }
        }
        Figure::Fig5 => {
            for n in [3, 5, 7, 9] {
                let sc = scenario.with_n(n)?;
                let parties = sc.basis.spec().odd_guides();
                let states = zetas.iter().map(|&z| sc.individual(z)).collect::<Result<Vec<_>>>()?;
                for k in 0..parties.len() - 1 {
                    let vlf = states
                        .iter()
                        .map(|v| optimize_vlf_gains(v, &parties, (k, k + 1)).map(|o| o.value))
                        .collect::<Result<Vec<_>>>()?;
                    let (a, b) = (parties[k] + 1, parties[k + 1] + 1);
                    curves.push(Curve::new(
                        format!("vlf_N{n}_{}.csv", k + 1),
                        format!("N = {n}: optimized VLF, guides ({a}, {b})"),
                        vlf,
                    ));
                }
            }
            curves.push(Curve::new("threshold.csv", "separability threshold VLF = 2", vec![2.0; zetas.len()]));
        }
    }
    Ok(FigureData { figure, zetas, curves })
}

/// Writes the curves and manifest; returns the figure directory.
pub fn write_figure(data: &FigureData, out: &Path) -> Result<PathBuf> {
    let dir = out.join(data.figure.name());
    let mut manifest = String::from("file,label\n");
    for c in &data.curves {
        write_curve(&dir.join(&c.file), &data.zetas, &c.values)?;
        manifest.push_str(&format!("{},\"{}\"\n", c.file, c.label));
    }
    write_file(&dir.join("manifest.csv"), manifest.as_bytes())?;
    Ok(dir)
}
