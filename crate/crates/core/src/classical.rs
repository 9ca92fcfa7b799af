//! Classical (mean-field) propagation.
//!
//! Internally everything is dimensionless: the coordinate is
//! `ζ = √(2 P_l) g z` and complex amplitudes are scaled by `√P`, so the
//! conserved quantity `Σ|α_f|² + 2Σ|α_h|²` equals 1 for a normalized pump.
//! In these units the coupled-mode equations read
//!
//! ```text
//! dα_f,j/dζ = i c (α_f,j-1 + α_f,j+1) + 2iγ α_h,j α_f,j*
//! dα_h,j/dζ = iγ α_f,j²
//! ```
//!
//! with `c = C / (√(2 P_l) g)`, `γ = √(l/2)` and `α_f,0 = α_f,N+1 = 0`.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::lattice::{LatticeSpec, SupermodeBasis};
use crate::rk4::rk4_step;
use crate::{Error, Result};

/// Default RK4 resolution.
pub const DEFAULT_STEPS_PER_ZETA: usize = 2000;

/// Amplitudes above this multiple of the input norm abort the integration.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

/// Dimensionless amplitude/phase pair of the closed-form SHG solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShgSolution {
    pub u_f: f64,
    pub theta_f: f64,
    pub u_h: f64,
    pub theta_h: f64,
}

/// `u_f = sech ζ`, `u_h = tanh ζ`, `θ_f = 0`, `θ_h = π/2`.
pub fn analytic_shg_solution(zeta: f64) -> Result<ShgSolution> {
    if !(zeta >= 0.0) {
        return Err(Error::Domain(format!("zeta must be >= 0, got {zeta}")));
    }
    Ok(ShgSolution {
        u_f: zeta.cosh().recip(),
        theta_f: 0.0,
        u_h: zeta.tanh(),
        theta_h: FRAC_PI_2,
    })
}

/// Right-hand side of the reduced single-waveguide system in physical units:
/// `dβ/dz = 2ig α_h β*`, `dα_h/dz = (ig/l) β²`.
pub fn reduced_ode_rhs(beta: Complex64, alpha_h: Complex64, l: usize, g: f64) -> (Complex64, Complex64) {
    let ig = Complex64::new(0.0, g);
    (2.0 * ig * alpha_h * beta.conj(), ig / l as f64 * beta * beta)
}

/// Nonlinearity and per-guide power fixing the map between `z` and `ζ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizationContext {
    nonlinearity: f64,
    power_per_guide: f64,
}

impl NormalizationContext {
    /// `g` in mm⁻¹·mW^-1/2, `P_l` in mW.
    pub fn new(nonlinearity: f64, power_per_guide: f64) -> Result<Self> {
        if !(nonlinearity > 0.0 && nonlinearity.is_finite()) {
            return Err(Error::InvalidContext(format!("nonlinearity must be > 0, got {nonlinearity}")));
        }
        if !(power_per_guide > 0.0 && power_per_guide.is_finite()) {
            return Err(Error::InvalidContext(format!(
                "power per guide must be > 0, got {power_per_guide}"
            )));
        }
        Ok(Self { nonlinearity, power_per_guide })
    }

    /// Uses `P_l = P / l` for the total power `P` spread over the array.
    pub fn from_total_power(nonlinearity: f64, total_power: f64, lattice: &LatticeSpec) -> Result<Self> {
        Self::new(nonlinearity, total_power / lattice.half_dim() as f64)
    }

    pub fn nonlinearity(&self) -> f64 {
        self.nonlinearity
    }

    pub fn power_per_guide(&self) -> f64 {
        self.power_per_guide
    }

    /// `√(2 P_l) g`, in mm⁻¹.
    pub fn zeta_per_mm(&self) -> f64 {
        (2.0 * self.power_per_guide).sqrt() * self.nonlinearity
    }

    /// Propagation distance in mm.
    pub fn zeta_to_z(&self, zeta: f64) -> f64 {
        zeta / self.zeta_per_mm()
    }

    pub fn z_to_zeta(&self, z_mm: f64) -> f64 {
        z_mm * self.zeta_per_mm()
    }
}

/// Pump launched into the fundamental supermodes.
#[derive(Clone, Debug, PartialEq)]
pub struct PumpSpec {
    coefficients: DVector<Complex64>,
    total_power: f64,
    global_phase: f64,
}

impl PumpSpec {
    /// Arbitrary supermode coefficients `β_f,k(0)`; they are normalized to
    /// unit norm, the power is carried in `total_power` (mW).
    pub fn new(coefficients: DVector<Complex64>, total_power: f64, global_phase: f64) -> Result<Self> {
        let norm = coefficients.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Domain("pump coefficients must have a finite, non-zero norm".into()));
        }
        if !(total_power > 0.0 && total_power.is_finite()) {
            return Err(Error::Domain(format!("total power must be > 0, got {total_power}")));
        }
        Ok(Self { coefficients: coefficients.unscale(norm), total_power, global_phase })
    }

    /// `β_f,k(0) = δ_k,l`.
    pub fn zero_supermode(lattice: &LatticeSpec, total_power: f64) -> Result<Self> {
        Self::supermode(lattice, lattice.zero_index(), total_power)
    }

    /// Pure supermode `k` (0-based).
    pub fn supermode(lattice: &LatticeSpec, k: usize, total_power: f64) -> Result<Self> {
        let n = lattice.n_waveguides();
        if k >= n {
            return Err(Error::Dimension { expected: n, got: k + 1 });
        }
        let mut c = DVector::from_element(n, Complex64::new(0.0, 0.0));
        c[k] = Complex64::new(1.0, 0.0);
        Self::new(c, total_power, 0.0)
    }

    pub fn coefficients(&self) -> &DVector<Complex64> {
        &self.coefficients
    }

    pub fn total_power(&self) -> f64 {
        self.total_power
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }
}

/// Mean fields at one propagation coordinate, in units of `√P`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalField {
    pub fundamental: DVector<Complex64>,
    pub harmonic: DVector<Complex64>,
    pub zeta: f64,
}

impl ClassicalField {
    pub fn zero(n: usize) -> Self {
        let z = DVector::from_element(n, Complex64::new(0.0, 0.0));
        Self { fundamental: z.clone(), harmonic: z, zeta: 0.0 }
    }

    /// Input field at `ζ = 0` for the given pump; harmonics start empty.
    pub fn from_pump(pump: &PumpSpec, basis: &SupermodeBasis) -> Result<Self> {
        let phase = Complex64::from_polar(1.0, pump.global_phase());
        let fundamental = basis.to_individual_basis(pump.coefficients())? * phase;
        let harmonic = DVector::from_element(basis.n(), Complex64::new(0.0, 0.0));
        Ok(Self { fundamental, harmonic, zeta: 0.0 })
    }

    /// Closed-form field for zero-supermode pumping at `ζ`.
    pub fn zero_supermode_analytic(basis: &SupermodeBasis, zeta: f64) -> Result<Self> {
        let sol = analytic_shg_solution(zeta)?;
        let l = basis.spec().half_dim() as f64;
        let fundamental = basis.zero_supermode().map(|m| Complex64::new(m * sol.u_f, 0.0));
        let h = Complex64::from_polar(sol.u_h / (2.0 * l).sqrt(), sol.theta_h);
        let harmonic = DVector::from_fn(basis.n(), |j, _| if j % 2 == 0 { h } else { Complex64::new(0.0, 0.0) });
        Ok(Self { fundamental, harmonic, zeta })
    }

    pub fn n(&self) -> usize {
        self.fundamental.len()
    }

    /// `Σ|α_f,j|² + 2 Σ|α_h,j|²`.
    pub fn energy(&self) -> f64 {
        self.fundamental.norm_squared() + 2.0 * self.harmonic.norm_squared()
    }

    /// Fundamental amplitudes projected onto the supermodes.
    pub fn fundamental_supermodes(&self, basis: &SupermodeBasis) -> Result<DVector<Complex64>> {
        basis.to_supermode_basis(&self.fundamental)
    }

    /// `(u_f, θ_f, u_h, θ_h)` read off the zero supermode and the harmonic in
    /// the first waveguide, in the normalization of [`analytic_shg_solution`].
    pub fn zero_mode_observables(&self, basis: &SupermodeBasis) -> Result<ShgSolution> {
        let beta = self.fundamental_supermodes(basis)?[basis.spec().zero_index()];
        let l = basis.spec().half_dim() as f64;
        let h = self.harmonic[0];
        Ok(ShgSolution { u_f: beta.norm(), theta_f: beta.arg(), u_h: h.norm() * (2.0 * l).sqrt(), theta_h: h.arg() })
    }

    fn to_state(&self) -> DVector<Complex64> {
        let n = self.n();
        DVector::from_fn(2 * n, |i, _| if i < n { self.fundamental[i] } else { self.harmonic[i - n] })
    }

    fn from_state(state: &DVector<Complex64>, zeta: f64) -> Self {
        let n = state.len() / 2;
        Self {
            fundamental: state.rows(0, n).into_owned(),
            harmonic: state.rows(n, n).into_owned(),
            zeta,
        }
    }
}

/// Dimensionless mean-field model of the array.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanFieldModel {
    lattice: LatticeSpec,
    coupling: f64,
    gamma: f64,
}

impl MeanFieldModel {
    /// Model for a physical lattice and pump normalization.
    pub fn new(lattice: LatticeSpec, ctx: &NormalizationContext) -> Self {
        Self::normalized(lattice, lattice.coupling() / ctx.zeta_per_mm())
    }

    /// Model with the coupling given directly per unit `ζ`.
    pub fn normalized(lattice: LatticeSpec, coupling_per_zeta: f64) -> Self {
        let gamma = (lattice.half_dim() as f64 / 2.0).sqrt();
        Self { lattice, coupling: coupling_per_zeta, gamma }
    }

    /// Overrides the nonlinear coefficient; `0` gives the linear coupler.
    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    /// `c`, the coupling per unit `ζ`.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// `γ`, the nonlinear coefficient in normalized units.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Derivative of the stacked state `(α_f, α_h)`.
    pub fn rhs(&self, state: &DVector<Complex64>) -> DVector<Complex64> {
        let n = self.lattice.n_waveguides();
        let ic = Complex64::new(0.0, self.coupling);
        let ig = Complex64::new(0.0, self.gamma);
        let mut out = DVector::from_element(2 * n, Complex64::new(0.0, 0.0));
        for j in 0..n {
            let f = state[j];
            let h = state[n + j];
            let left = if j > 0 { state[j - 1] } else { Complex64::new(0.0, 0.0) };
            let right = if j + 1 < n { state[j + 1] } else { Complex64::new(0.0, 0.0) };
            out[j] = ic * (left + right) + 2.0 * ig * h * f.conj();
            out[n + j] = ig * f * f;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegrationOptions {
    /// Number of RK4 steps over `[0, ζ_max]`.
    pub n_steps: usize,
    /// Keep every `decimation`-th step; must divide `n_steps`.
    pub decimation: usize,
}

impl IntegrationOptions {
    /// Default resolution of [`DEFAULT_STEPS_PER_ZETA`] steps per unit ζ, no decimation.
    pub fn for_zeta(zeta_max: f64) -> Self {
        Self::with_steps_per_zeta(zeta_max, DEFAULT_STEPS_PER_ZETA)
    }

    /// An even step count is used so the result can feed the numeric
    /// fluctuation propagator.
    pub fn with_steps_per_zeta(zeta_max: f64, steps_per_zeta: usize) -> Self {
        let n = ((zeta_max * steps_per_zeta as f64).ceil() as usize).max(2);
        Self { n_steps: n + n % 2, decimation: 1 }
    }
}

/// Sampled mean-field solution.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<ClassicalField>,
    /// RK4 step size in ζ.
    pub step: f64,
    pub decimation: usize,
}

impl Trajectory {
    pub fn last(&self) -> &ClassicalField {
        self.samples.last().expect("trajectory is never empty")
    }

    /// Maximum relative drift of the energy invariant.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.samples[0].energy();
        let scale = if e0 > 0.0 { e0 } else { 1.0 };
        self.samples.iter().map(|s| (s.energy() - e0).abs() / scale).fold(0.0, f64::max)
    }

    /// CSV with header `zeta,re_af_1,im_af_1,...,re_ah_N,im_ah_N`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let n = self.samples[0].n();
        let mut header = vec!["zeta".to_string()];
        for kind in ["af", "ah"] {
            for j in 1..=n {
                header.push(format!("re_{kind}_{j}"));
                header.push(format!("im_{kind}_{j}"));
            }
        }
        writeln!(w, "{}", header.join(","))?;
        for s in &self.samples {
            let mut row = vec![crate::harness::csv::fmt(s.zeta)];
            for v in s.fundamental.iter().chain(s.harmonic.iter()) {
                row.push(crate::harness::csv::fmt(v.re));
                row.push(crate::harness::csv::fmt(v.im));
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Integrates the full coupled mean-field equations from `initial.zeta`
/// to `initial.zeta + zeta_span` with fixed-step RK4.
pub fn integrate_mean_field(
    initial: &ClassicalField,
    model: &MeanFieldModel,
    zeta_span: f64,
    opts: IntegrationOptions,
) -> Result<Trajectory> {
    let n = model.lattice().n_waveguides();
    if initial.n() != n || initial.harmonic.len() != n {
        return Err(Error::Dimension { expected: n, got: initial.n() });
    }
    if opts.n_steps == 0 || opts.decimation == 0 || !opts.n_steps.is_multiple_of(opts.decimation) {
        return Err(Error::Domain(format!(
            "n_steps ({}) must be >= 1 and divisible by decimation ({})",
            opts.n_steps, opts.decimation
        )));
    }
    if !(zeta_span >= 0.0 && zeta_span.is_finite()) {
        return Err(Error::Domain(format!("zeta span must be finite and >= 0, got {zeta_span}")));
    }
    let mut state = initial.to_state();
    if state.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Domain("initial field is not finite".into()));
    }
    let limit = DIVERGENCE_FACTOR * state.norm();
    let h = zeta_span / opts.n_steps as f64;
    let mut samples = Vec::with_capacity(opts.n_steps / opts.decimation + 1);
    samples.push(ClassicalField { zeta: initial.zeta, ..initial.clone() });
    for step in 1..=opts.n_steps {
        state = rk4_step(&state, h, |_, y| model.rhs(y));
        let zeta = initial.zeta + step as f64 * h;
        if state.iter().any(|v| !(v.norm() <= limit)) {
            return Err(Error::Divergence { zeta });
        }
        if step % opts.decimation == 0 {
            samples.push(ClassicalField::from_state(&state, zeta));
        }
    }
    Ok(Trajectory { samples, step: h, decimation: opts.decimation })
}
