//! Classical fixed-step fourth-order Runge–Kutta.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// States the integrator can advance: `self + h * k`.
pub(crate) trait RkState: Sized {
    fn offset(&self, h: f64, k: &Self) -> Self;
}

impl RkState for DVector<Complex64> {
    fn offset(&self, h: f64, k: &Self) -> Self {
        self + k * Complex64::new(h, 0.0)
    }
}

impl RkState for DMatrix<f64> {
    fn offset(&self, h: f64, k: &Self) -> Self {
        self + k * h
    }
}

/// One RK4 step of size `h`. The right-hand side receives the fraction of
/// the step (0, 1/2 or 1) at which it is evaluated, so non-autonomous
/// systems can look up tabulated coefficients.
pub(crate) fn rk4_step<S: RkState>(y: &S, h: f64, mut rhs: impl FnMut(f64, &S) -> S) -> S {
    let k1 = rhs(0.0, y);
    let k2 = rhs(0.5, &y.offset(0.5 * h, &k1));
    let k3 = rhs(0.5, &y.offset(0.5 * h, &k2));
    let k4 = rhs(1.0, &y.offset(h, &k3));
    y.offset(h / 6.0, &k1)
        .offset(h / 3.0, &k2)
        .offset(h / 3.0, &k3)
        .offset(h / 6.0, &k4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_is_fourth_order() {
        // y' = -y, y(0) = 1 over [0, 1]
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let mut y = DMatrix::from_element(1, 1, 1.0);
            for _ in 0..n {
                y = rk4_step(&y, h, |_, s| -s);
            }
            (y[(0, 0)] - (-1.0f64).exp()).abs()
        };
        let ratio = err(10) / err(20);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn complex_rotation() {
        // y' = i y  ->  y(t) = e^{it}
        let n = 1000;
        let h = 2.0 / n as f64;
        let mut y = DVector::from_element(1, Complex64::new(1.0, 0.0));
        for _ in 0..n {
            y = rk4_step(&y, h, |_, s| s * Complex64::i());
        }
        let exact = Complex64::from_polar(1.0, 2.0);
        assert!((y[0] - exact).norm() < 1e-12);
    }
}
