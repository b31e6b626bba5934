use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative tolerance for symmetry, PSD and unit-trace checks.
pub const MATRIX_TOL: f64 = 1e-10;

/// Real symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    m: DMatrix<f64>,
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    /// `V f(Λ) Vᵀ`.
    pub fn rebuild(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let w: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        self.with_values(&w)
    }

    /// `V diag(w) Vᵀ`, keeping the eigenvectors.
    pub fn with_values(&self, w: &[f64]) -> SymMatrix {
        let n = self.values.len();
        let mut out = DMatrix::zeros(n, n);
        for (k, &wk) in w.iter().enumerate() {
            if wk == 0.0 {
                continue;
            }
            let v = self.vectors.column(k);
            out += wk * v * v.transpose();
        }
        SymMatrix::symmetrized(out)
    }
}

impl SymMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<SymMatrix> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        if m.nrows() == 0 {
            return Err(Error::EmptyInput("matrix of dimension zero".into()));
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        let scale = 1.0 + m.amax();
        if (&m - m.transpose()).amax() > MATRIX_TOL * scale {
            return Err(Error::Domain("matrix is not symmetric".into()));
        }
        Ok(SymMatrix::symmetrized(m))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<SymMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        SymMatrix::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn diag(xs: &[f64]) -> SymMatrix {
        SymMatrix { m: DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(xs)) }
    }

    pub fn identity(n: usize) -> SymMatrix {
        SymMatrix { m: DMatrix::identity(n, n) }
    }

    pub fn zeros(n: usize) -> SymMatrix {
        SymMatrix { m: DMatrix::zeros(n, n) }
    }

    pub(crate) fn symmetrized(m: DMatrix<f64>) -> SymMatrix {
        let t = m.transpose();
        SymMatrix { m: 0.5 * (m + t) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|i| self.m.row(i).iter().copied().collect()).collect()
    }

    pub fn spectrum(&self) -> Spectrum {
        let e = SymmetricEigen::new(self.m.clone());
        let mut idx: Vec<usize> = (0..self.dim()).collect();
        idx.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
        let values = idx.iter().map(|&k| e.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(self.dim(), self.dim(), |i, j| e.eigenvectors[(i, idx[j])]);
        Spectrum { values, vectors }
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum().values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue() >= -MATRIX_TOL * (1.0 + self.m.amax())
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    /// Applies `f` through the spectral decomposition.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        self.spectrum().rebuild(f)
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.same_dim(other)?;
        Ok(SymMatrix { m: &self.m + &other.m })
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix { m: c * &self.m }
    }

    /// `Q A Qᵀ`.
    pub fn conjugate(&self, q: &DMatrix<f64>) -> Result<SymMatrix> {
        if q.nrows() != self.dim() || q.ncols() != self.dim() {
            return Err(Error::DimensionMismatch("conjugating matrix has the wrong size".into()));
        }
        Ok(SymMatrix::symmetrized(q * &self.m * q.transpose()))
    }

    /// `Tr(A B)` as an entrywise sum.
    pub fn trace_product(&self, other: &SymMatrix) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self.m.component_mul(&other.m).sum())
    }

    fn same_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), other.dim())));
        }
        Ok(())
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<SymMatrix, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        SymMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Block-diagonal matrix `diag(A, B)`.
pub fn direct_sum(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    let (n, k) = (a.dim(), b.dim());
    let mut m = DMatrix::zeros(n + k, n + k);
    m.view_mut((0, 0), (n, n)).copy_from(&a.m);
    m.view_mut((n, n), (k, k)).copy_from(&b.m);
    SymMatrix { m }
}

/// Kronecker sum `A ⊗ I + I ⊗ B`, whose exponential is `e^A ⊗ e^B`.
pub fn kronecker_sum(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    let ia = DMatrix::<f64>::identity(a.dim(), a.dim());
    let ib = DMatrix::<f64>::identity(b.dim(), b.dim());
    SymMatrix::symmetrized(a.m.kronecker(&ib) + ia.kronecker(&b.m))
}

/// Positive semidefinite symmetric matrix of unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(SymMatrix);

impl DensityMatrix {
    pub fn new(m: SymMatrix) -> Result<DensityMatrix> {
        if !m.is_psd() {
            return Err(Error::NotPositiveSemidefinite(m.min_eigenvalue()));
        }
        let t = m.trace();
        if (t - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("density matrix has trace {t}, not 1")));
        }
        Ok(DensityMatrix(m))
    }

    pub fn diagonal(p: &[f64]) -> Result<DensityMatrix> {
        DensityMatrix::new(SymMatrix::diag(p))
    }

    pub fn maximally_mixed(n: usize) -> DensityMatrix {
        DensityMatrix(SymMatrix::identity(n).scale(1.0 / n as f64))
    }

    /// Gibbs state `e^{-βA} / Tr e^{-βA}` for finite β.
    pub fn gibbs(a: &SymMatrix, beta: f64) -> DensityMatrix {
        let sp = a.spectrum();
        let lmin = sp.values[0];
        let z: f64 = sp.values.iter().map(|l| (-beta * (l - lmin)).exp()).sum();
        DensityMatrix(sp.rebuild(|l| (-beta * (l - lmin)).exp() / z))
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

/// Square matrix over the min-plus semiring.
#[derive(Clone, Debug, PartialEq)]
pub struct MinPlusMatrix {
    n: usize,
    data: Vec<f64>,
}

impl MinPlusMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<MinPlusMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput("matrix of dimension zero".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        let data: Vec<f64> = rows.concat();
        if data.iter().any(|x| x.is_nan() || *x == f64::NEG_INFINITY) {
            return Err(Error::Domain("min-plus entries must lie in ℝ ∪ {+∞}".into()));
        }
        Ok(MinPlusMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Entrywise minimum.
    pub fn oplus(&self, other: &MinPlusMatrix) -> Result<MinPlusMatrix> {
        self.same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.min(*b)).collect();
        Ok(MinPlusMatrix { n: self.n, data })
    }

    /// `(A ⊙ B)ᵢⱼ = minₖ (Aᵢₖ + Bₖⱼ)`.
    pub fn odot(&self, other: &MinPlusMatrix) -> Result<MinPlusMatrix> {
        self.same_dim(other)?;
        let n = self.n;
        let mut data = vec![f64::INFINITY; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = (0..n)
                    .map(|k| {
                        let (a, b) = (self.get(i, k), other.get(k, j));
                        if a == f64::INFINITY || b == f64::INFINITY {
                            f64::INFINITY
                        } else {
                            a + b
                        }
                    })
                    .fold(f64::INFINITY, f64::min);
            }
        }
        Ok(MinPlusMatrix { n, data })
    }

    fn same_dim(&self, other: &MinPlusMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }
}

/// Tropical trace: the smallest diagonal entry.
pub fn trop_trace(a: &MinPlusMatrix) -> f64 {
    (0..a.dim()).map(|i| a.get(i, i)).fold(f64::INFINITY, f64::min)
}

/// Spectral tropical trace: the smallest eigenvalue of a PSD symmetric matrix.
pub fn spectral_trop_trace(a: &SymMatrix) -> Result<f64> {
    if !a.is_psd() {
        return Err(Error::NotPositiveSemidefinite(a.min_eigenvalue()));
    }
    Ok(a.min_eigenvalue())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_plus_product_two_by_two() {
        let a = MinPlusMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        let b = MinPlusMatrix::from_rows(&[vec![0.0, 3.0], vec![1.0, 0.0]]).unwrap();
        let c = a.odot(&b).unwrap();
        // Hand enumeration of minₖ (aᵢₖ + bₖⱼ).
        assert_eq!(c.rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn min_plus_infinity_absorbs() {
        let inf = f64::INFINITY;
        let a = MinPlusMatrix::from_rows(&[vec![inf, inf], vec![inf, inf]]).unwrap();
        let b = MinPlusMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 3.0]]).unwrap();
        assert!(a.odot(&b).unwrap().rows().concat().iter().all(|x| *x == inf));
        assert_eq!(a.oplus(&b).unwrap(), b);
    }

    #[test]
    fn trop_trace_is_diagonal_min() {
        let a = MinPlusMatrix::from_rows(&[vec![3.0, -9.0], vec![-9.0, 2.0]]).unwrap();
        assert_eq!(trop_trace(&a), 2.0);
    }

    #[test]
    fn spectral_trace_of_two_by_two() {
        let a = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let l = spectral_trop_trace(&a).unwrap();
        assert!((l - 1.0).abs() < 1e-12);
        // Characteristic polynomial residual.
        assert!(((2.0 - l) * (2.0 - l) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_trace_rejects_indefinite() {
        let a = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(spectral_trop_trace(&a), Err(Error::NotPositiveSemidefinite(_))));
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let s = direct_sum(&SymMatrix::diag(&[1.0]), &SymMatrix::diag(&[2.0]));
        assert_eq!(s, SymMatrix::diag(&[1.0, 2.0]));
    }

    #[test]
    fn kronecker_sum_spectrum_adds() {
        let a = SymMatrix::diag(&[1.0, 3.0]);
        let b = SymMatrix::diag(&[0.5, 2.0]);
        let mut e = kronecker_sum(&a, &b).eigenvalues();
        e.iter_mut().for_each(|x| *x = (*x * 1e9).round() / 1e9);
        assert_eq!(e, vec![1.5, 3.0, 3.5, 5.0]);
    }

    #[test]
    fn validation() {
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
        assert!(DensityMatrix::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityMatrix::diagonal(&[1.5, -0.5]).is_err());
        assert!(MinPlusMatrix::from_rows(&[vec![f64::NEG_INFINITY]]).is_err());
    }
}
