//! Squeezing of the fundamental-supermode amplitude and the collective
//! harmonic phase along the propagation.

use zeromode::gaussian::{super_evolution, superquadrature_covariance, SymplecticForm, XS, YH};

fn main() -> zeromode::Result<()> {
    let om = SymplecticForm::new(2);
    println!("{:>5} {:>14} {:>14} {:>10}", "zeta", "2V(X_l^s)", "2V(Y^h)", "|UOU'-O|");
    for i in 0..=12 {
        let z = 0.5 * i as f64;
        let v = superquadrature_covariance(z)?;
        let u = super_evolution(z)?;
        println!("{z:5.1} {:14.6e} {:14.6} {:10.1e}", 2.0 * v.get(XS, XS), 2.0 * v.get(YH, YH), om.deviation(&u.matrix));
    }
    Ok(())
}
