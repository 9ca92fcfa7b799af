//! Conversion between the normalized coordinate ζ and length in mm.

use zeromode::classical::NormalizationContext;

fn main() -> zeromode::Result<()> {
    let ctx = NormalizationContext::new(25e-4, 200.0)?;
    println!("zeta per mm: {}", ctx.zeta_per_mm());
    for zeta in [0.0, 0.5, 1.0, 2.0, 6.0] {
        println!("zeta = {zeta:4.1}  <->  z = {:6.1} mm", ctx.zeta_to_z(zeta));
    }
    // the same device length at higher pump power reaches further in ζ
    let hot = NormalizationContext::new(25e-4, 800.0)?;
    println!("20 mm at 800 mW per guide: zeta = {}", hot.z_to_zeta(20.0));
    Ok(())
}
