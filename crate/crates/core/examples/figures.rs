//! Writes the curve data of every figure into a directory (default
//! `out/`), as the `figure` subcommand does.

use std::path::PathBuf;

use zeromode::harness::figures::{figure_data, write_figure, Figure};
use zeromode::harness::{Scenario, ScenarioConfig};

fn main() -> zeromode::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out"));
    let mut cfg = ScenarioConfig::default();
    cfg.grid.zeta_max = 3.0;
    cfg.grid.points = 301;
    let scenario = Scenario::new(cfg)?;
    for fig in Figure::ALL {
        let data = figure_data(fig, &scenario)?;
        let dir = write_figure(&data, &out)?;
        println!("{}: {} curves -> {}", fig.name(), data.curves.len(), dir.display());
    }
    Ok(())
}
