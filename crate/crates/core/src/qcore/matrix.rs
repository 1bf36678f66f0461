use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::eigen;
use crate::qcore::state::StateVector;

/// Tolerance on Hermiticity and trace for a valid density matrix.
const DENSITY_TOL: f64 = 1e-12;
/// Most negative eigenvalue a density matrix may carry (roundoff allowance).
const PSD_FLOOR: f64 = -1e-10;

/// A dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::MatrixShape {
                    expected: dim * dim,
                    actual: dim * row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn kron(a: &Self, b: &Self) -> Self {
        let n = a.dim * b.dim;
        let mut out = Self::zeros(n);
        for i in 0..a.dim {
            for j in 0..a.dim {
                let aij = a.get(i, j);
                if aij == Complex64::ZERO {
                    continue;
                }
                for k in 0..b.dim {
                    for l in 0..b.dim {
                        out.set(i * b.dim + k, j * b.dim + l, aij * b.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// max |A[i][j] − conj(A[j][i])|.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// max |A[i][j] − δᵢⱼ|.
    pub fn deviation_from_identity(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                dev = dev.max((self.get(i, j) - target).norm());
            }
        }
        dev
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// A Hermitian, positive-semidefinite, trace-one matrix on `num_qubits`
/// qubits. Invariants are verified on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(num_qubits: usize, mat: CMatrix) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let dim = 1usize << num_qubits;
        if mat.dim() != dim {
            return Err(Error::MatrixShape {
                expected: dim * dim,
                actual: mat.dim() * mat.dim(),
            });
        }
        if !mat.is_finite() {
            return Err(Error::NonFinite("density matrix entries"));
        }
        let herm = mat.hermitian_deviation();
        if herm > DENSITY_TOL {
            return Err(Error::NotHermitian {
                deviation: herm,
                tol: DENSITY_TOL,
            });
        }
        let tr = mat.trace();
        let tr_dev = (tr.re - 1.0).abs().max(tr.im.abs());
        if tr_dev > DENSITY_TOL {
            return Err(Error::TraceNotOne { deviation: tr_dev });
        }
        let eigenvalues = eigen::jacobi_eigenvalues(&mat)?;
        if let Some(&min) = eigenvalues.last() {
            if min < PSD_FLOOR {
                return Err(Error::NotPositive {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(Self { num_qubits, mat })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.mat.get(row, col)
    }

    /// Descending real eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::jacobi_eigenvalues(&self.mat)
    }

    /// Real determinant (product of eigenvalues).
    pub fn determinant(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().product())
    }
}

/// |s⟩⟨s|, the rank-one projector onto a pure state.
pub fn density(s: &StateVector) -> DensityMatrix {
    let dim = s.dim();
    let mut mat = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            mat.set(i, j, s.amp(i) * s.amp(j).conj());
        }
    }
    DensityMatrix {
        num_qubits: s.num_qubits(),
        mat,
    }
}

/// Traces out every qubit not listed in `keep`, preserving the original
/// qubit order in the reduced matrix. `keep` must be a nonempty proper
/// subset of the qubits.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    for (i, &q) in kept.iter().enumerate() {
        if q < 1 || q > n {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: n,
            });
        }
        if i > 0 && kept[i - 1] == q {
            return Err(Error::DuplicateQubit(q));
        }
    }
    if kept.is_empty() || kept.len() == n {
        return Err(Error::TrivialPartition {
            kept: kept.len(),
            total: n,
        });
    }

    let traced: Vec<usize> = (1..=n).filter(|q| !kept.contains(q)).collect();
    let k = kept.len();
    let kept_shifts: Vec<usize> = kept.iter().map(|&q| n - q).collect();
    let traced_shifts: Vec<usize> = traced.iter().map(|&q| n - q).collect();

    let assemble = |sub: usize, env: usize| -> usize {
        let mut idx = 0usize;
        for (j, &sh) in kept_shifts.iter().enumerate() {
            if (sub >> (k - 1 - j)) & 1 == 1 {
                idx |= 1 << sh;
            }
        }
        for (j, &sh) in traced_shifts.iter().enumerate() {
            if (env >> (traced_shifts.len() - 1 - j)) & 1 == 1 {
                idx |= 1 << sh;
            }
        }
        idx
    };

    let sub_dim = 1usize << k;
    let env_dim = 1usize << traced.len();
    let mut mat = CMatrix::zeros(sub_dim);
    for r in 0..sub_dim {
        for c in 0..sub_dim {
            let mut acc = Complex64::ZERO;
            for env in 0..env_dim {
                acc += rho.get(assemble(r, env), assemble(c, env));
            }
            mat.set(r, c, acc);
        }
    }
    DensityMatrix::new(k, mat)
}
