//! Supermode basis of a 7-guide array: eigenvalues, the zero supermode, and
//! a round trip between individual and supermode amplitudes.

use nalgebra::DVector;
use zeromode::lattice::{build_supermode_basis, LatticeSpec};
use zeromode::Complex64;

fn row(v: impl Iterator<Item = f64>) -> String {
    v.map(|x| format!("{x:+.4}")).collect::<Vec<_>>().join(" ")
}

fn main() -> zeromode::Result<()> {
    let basis = build_supermode_basis(LatticeSpec::new(7, 0.1)?);
    println!("eigenvalues (mm^-1): {}", row(basis.eigenvalues().iter().copied()));
    println!("zero supermode:      {}", row(basis.zero_supermode().iter().copied()));
    println!(
        "orthogonality {:.1e}, symmetry {:.1e}, eigen residual {:.1e}",
        basis.orthogonality_error(),
        basis.symmetry_error(),
        basis.eigen_residual()
    );

    // light in the first guide only
    let mut a = DVector::from_element(7, Complex64::new(0.0, 0.0));
    a[0] = Complex64::new(1.0, 0.0);
    let s = basis.to_supermode_basis(&a)?;
    println!("guide 1 in supermodes: {}", row(s.iter().map(|c| c.re)));
    let back = basis.to_individual_basis(&s)?;
    println!("round trip error {:.1e}", (back - a).map(|c| c.norm()).max());
    Ok(())
}
