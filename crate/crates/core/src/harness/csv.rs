//! Plain CSV helpers. Every float is written with 17 significant digits.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::Result;

/// 17 significant digits in scientific notation.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a `zeta,value` curve.
pub fn write_curve(path: &Path, zetas: &[f64], values: &[f64]) -> Result<()> {
    let mut out = String::from("zeta,value\n");
    for (z, v) in zetas.iter().zip(values) {
        out.push_str(&fmt(*z));
        out.push(',');
        out.push_str(&fmt(*v));
        out.push('\n');
    }
    write_file(path, out.as_bytes())
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    Ok(())
}
