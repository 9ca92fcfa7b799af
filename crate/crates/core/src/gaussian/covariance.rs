use std::fmt;
use std::io::Write;

use nalgebra::{DMatrix, Matrix2};

use crate::{Error, Result};

/// Tolerance for the symmetry check, relative to the largest entry.
const SYMMETRY_TOL: f64 = 1e-12;

/// Second-moment matrix of `M` modes, `2M × 2M`, ordering `(X_1, Y_1, ...)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    data: DMatrix<f64>,
    labels: Vec<String>,
}

impl CovarianceMatrix {
    pub fn new(data: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        if !data.is_square() || !data.nrows().is_multiple_of(2) {
            return Err(Error::Dimension { expected: 2 * labels.len(), got: data.nrows() });
        }
        if labels.len() * 2 != data.nrows() {
            return Err(Error::Dimension { expected: data.nrows() / 2, got: labels.len() });
        }
        let asym = (&data - data.transpose()).amax();
        if !(asym <= SYMMETRY_TOL * data.amax().max(1.0)) {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self { data, labels })
    }

    /// Labels `prefix1, prefix2, ...`.
    pub fn numbered_labels(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|j| format!("{prefix}{j}")).collect()
    }

    pub fn vacuum(labels: Vec<String>) -> Self {
        let n = 2 * labels.len();
        Self { data: DMatrix::identity(n, n) * 0.5, labels }
    }

    pub fn n_modes(&self) -> usize {
        self.labels.len()
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[(i, j)]
    }

    /// `V(X_m, X_m)`.
    pub fn var_x(&self, mode: usize) -> f64 {
        self.data[(2 * mode, 2 * mode)]
    }

    /// `V(Y_m, Y_m)`.
    pub fn var_y(&self, mode: usize) -> f64 {
        self.data[(2 * mode + 1, 2 * mode + 1)]
    }

    pub fn mode_block(&self, mode: usize) -> Matrix2<f64> {
        self.data.fixed_view::<2, 2>(2 * mode, 2 * mode).into_owned()
    }

    /// Reduced state of the listed modes, in the given order.
    pub fn reduce(&self, modes: &[usize]) -> Result<Self> {
        if let Some(&bad) = modes.iter().find(|&&m| m >= self.n_modes()) {
            return Err(Error::InvalidSubset(format!("mode {bad} out of range ({} modes)", self.n_modes())));
        }
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let data = DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.data[(idx[r], idx[c])]);
        Ok(Self { data, labels: modes.iter().map(|&m| self.labels[m].clone()).collect() })
    }

    /// Block-diagonal combination of independent subsystems.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.data.nrows(), other.data.nrows());
        let mut data = DMatrix::zeros(a + b, a + b);
        data.view_mut((0, 0), (a, a)).copy_from(&self.data);
        data.view_mut((a, a), (b, b)).copy_from(&other.data);
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        Self { data, labels }
    }

    /// Smallest single-mode uncertainty product `V_XX V_YY - V_XY²` over all modes.
    pub fn min_mode_determinant(&self) -> f64 {
        (0..self.n_modes()).map(|m| self.mode_block(m).determinant()).fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn from_parts_unchecked(data: DMatrix<f64>, labels: Vec<String>) -> Self {
        Self { data, labels }
    }

    /// Dense dump: a `# modes:` comment with the labels, a `# ordering:`
    /// comment, then one comma-separated row per matrix row with 17
    /// significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# modes: {}", self.labels.join(","))?;
        let order: Vec<String> = (1..=self.n_modes()).flat_map(|m| [format!("X_{m}"), format!("Y_{m}")]).collect();
        writeln!(w, "# ordering: {}", order.join(","))?;
        for r in 0..self.data.nrows() {
            let row: Vec<String> = self.data.row(r).iter().map(|&v| crate::harness::csv::fmt(v)).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Display for CovarianceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "modes: {}", self.labels.join(", "))?;
        write!(f, "{:.6}", self.data)
    }
}

/// `Ω = ⊕ [[0, 1], [-1, 0]]` over `M` modes.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Self {
        let n = 2 * modes;
        let matrix = DMatrix::from_fn(n, n, |r, c| {
            if r % 2 == 0 && c == r + 1 {
                1.0
            } else if r % 2 == 1 && c + 1 == r {
                -1.0
            } else {
                0.0
            }
        });
        Self { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// `max |U Ω Uᵀ - Ω|`.
    pub fn deviation(&self, u: &DMatrix<f64>) -> f64 {
        (u * &self.matrix * u.transpose() - &self.matrix).amax()
    }

    /// Inverse of a symplectic matrix, `-Ω Uᵀ Ω`.
    pub fn symplectic_inverse(&self, u: &DMatrix<f64>) -> DMatrix<f64> {
        -(&self.matrix * u.transpose() * &self.matrix)
    }
}

/// `V = U V₀ Uᵀ`, explicitly symmetrized.
pub fn propagate_covariance(v0: &CovarianceMatrix, u: &DMatrix<f64>) -> Result<CovarianceMatrix> {
    let n = v0.data.nrows();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::Dimension { expected: n, got: u.nrows().max(u.ncols()) });
    }
    let v = u * &v0.data * u.transpose();
    let sym = (&v + v.transpose()) * 0.5;
    Ok(CovarianceMatrix { data: sym, labels: v0.labels.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CovarianceMatrix::new(DMatrix::identity(3, 3), vec!["a".into()]).is_err());
        assert!(CovarianceMatrix::new(DMatrix::identity(2, 2), vec!["a".into(), "b".into()]).is_err());
        let mut m = DMatrix::identity(2, 2) * 0.5;
        m[(0, 1)] = 0.1;
        assert!(matches!(CovarianceMatrix::new(m, vec!["a".into()]), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn symplectic_form_properties() {
        let om = SymplecticForm::new(3);
        let m = om.matrix();
        assert_eq!(m + m.transpose(), DMatrix::zeros(6, 6));
        assert_eq!(m * m, -DMatrix::<f64>::identity(6, 6));
        assert_eq!(om.deviation(&DMatrix::identity(6, 6)), 0.0);
    }

    #[test]
    fn identity_propagation_and_determinant() {
        let v0 = CovarianceMatrix::vacuum(CovarianceMatrix::numbered_labels("m", 1));
        assert_eq!(propagate_covariance(&v0, &DMatrix::identity(2, 2)).unwrap(), v0);
        // single-mode squeezer is symplectic
        let r: f64 = 0.7;
        let s = DMatrix::from_row_slice(2, 2, &[(-r).exp(), 0.0, 0.0, r.exp()]);
        let v = propagate_covariance(&v0, &s).unwrap();
        assert!((v.data().determinant() - v0.data().determinant()).abs() < 1e-15);
        assert!(propagate_covariance(&v0, &DMatrix::identity(4, 4)).is_err());
    }

    #[test]
    fn reduce_and_sum() {
        let a = CovarianceMatrix::vacuum(vec!["a".into()]);
        let b = CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.2, 0.2, 0.7]), vec!["b".into()]).unwrap();
        let ab = a.direct_sum(&b);
        assert_eq!(ab.reduce(&[1]).unwrap(), b);
        assert_eq!(ab.reduce(&[1, 0]).unwrap().labels(), &["b".to_string(), "a".to_string()]);
        assert!(ab.reduce(&[2]).is_err());
        assert!((ab.min_mode_determinant() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn csv_layout() {
        let v = CovarianceMatrix::vacuum(vec!["f1".into(), "f2".into()]);
        let mut buf = Vec::new();
        v.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# modes: f1,f2");
        assert_eq!(lines[1], "# ordering: X_1,Y_1,X_2,Y_2");
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[2].split(',').count(), 4);
    }
}
