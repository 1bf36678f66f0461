use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::matrix::CMatrix;
use crate::qcore::state::StateVector;

/// Tolerance on U†U − I for an operator to count as unitary.
pub const UNITARY_TOL: f64 = 1e-12;

/// A square operator on one or more qubits. The unitary flag is only set by
/// constructors that have verified U†U = I within [`UNITARY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: CMatrix,
    unitary: bool,
}

impl Operator {
    /// Wraps a matrix after verifying unitarity.
    pub fn unitary(mat: CMatrix) -> Result<Self> {
        if !mat.dim().is_power_of_two() {
            return Err(Error::OperatorDimension {
                op_dim: mat.dim(),
                targets: 0,
            });
        }
        if !mat.is_finite() {
            return Err(Error::NonFinite("operator entries"));
        }
        let deviation = mat.adjoint().mul(&mat)?.deviation_from_identity();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { mat, unitary: true })
    }

    /// Wraps a matrix without any unitarity claim.
    pub fn general(mat: CMatrix) -> Self {
        Self {
            mat,
            unitary: false,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim),
            unitary: true,
        }
    }

    /// σ₁, the bit flip.
    pub fn sigma_x() -> Self {
        Self::two_by_two([
            [Complex64::ZERO, Complex64::ONE],
            [Complex64::ONE, Complex64::ZERO],
        ])
    }

    /// σ₂, the bit-and-phase flip.
    pub fn sigma_y() -> Self {
        Self::two_by_two([
            [Complex64::ZERO, Complex64::new(0.0, -1.0)],
            [Complex64::new(0.0, 1.0), Complex64::ZERO],
        ])
    }

    /// σ₃, the phase flip.
    pub fn sigma_z() -> Self {
        Self::two_by_two([
            [Complex64::ONE, Complex64::ZERO],
            [Complex64::ZERO, -Complex64::ONE],
        ])
    }

    /// iσ₂, the real rotation that sends |0⟩ → −|1⟩ and |1⟩ → |0⟩.
    pub fn i_sigma_y() -> Self {
        Self::two_by_two([
            [Complex64::ZERO, Complex64::ONE],
            [-Complex64::ONE, Complex64::ZERO],
        ])
    }

    fn two_by_two(rows: [[Complex64; 2]; 2]) -> Self {
        let mat = CMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("square 2x2");
        Self { mat, unitary: true }
    }

    /// Kronecker product self ⊗ rhs; unitary iff both factors are.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self {
            mat: CMatrix::kron(&self.mat, &rhs.mat),
            unitary: self.unitary && rhs.unitary,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }
}

/// Applies `op` to the listed target qubits of `s` (identity elsewhere).
///
/// `targets` are 1-based and ordered: the first target supplies the most
/// significant bit of the operator's own index space.
pub fn apply_local(op: &Operator, targets: &[usize], s: &StateVector) -> Result<StateVector> {
    let n = s.num_qubits();
    let k = targets.len();
    if op.dim() != 1usize << k {
        return Err(Error::OperatorDimension {
            op_dim: op.dim(),
            targets: k,
        });
    }
    if !op.is_unitary() {
        let deviation = op
            .matrix()
            .adjoint()
            .mul(op.matrix())?
            .deviation_from_identity();
        return Err(Error::NotUnitary { deviation });
    }
    for (i, &t) in targets.iter().enumerate() {
        if t < 1 || t > n {
            return Err(Error::QubitOutOfRange {
                qubit: t,
                num_qubits: n,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateQubit(t));
        }
    }

    // Bit position (from the LSB) of each target, MSB-first per convention.
    let shifts: Vec<usize> = targets.iter().map(|&t| n - t).collect();
    let target_mask: usize = shifts.iter().map(|&sh| 1usize << sh).sum();
    let op_dim = 1usize << k;

    let scatter = |base: usize, local: usize| -> usize {
        let mut idx = base;
        for (j, &sh) in shifts.iter().enumerate() {
            if (local >> (k - 1 - j)) & 1 == 1 {
                idx |= 1 << sh;
            }
        }
        idx
    };

    let mut out = vec![Complex64::ZERO; s.dim()];
    let mat = op.matrix();
    for base in 0..s.dim() {
        if base & target_mask != 0 {
            continue;
        }
        for row in 0..op_dim {
            let mut acc = Complex64::ZERO;
            for col in 0..op_dim {
                acc += mat.get(row, col) * s.amp(scatter(base, col));
            }
            out[scatter(base, row)] = acc;
        }
    }
    StateVector::new(n, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::state::tensor;
    use crate::states;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sigma_x_on_qubit_one_of_ghz_gives_psi2_plus() {
        let ghz = states::make_ghz();
        let flipped = apply_local(&Operator::sigma_x(), &[1], &ghz).unwrap();
        // (|100⟩ + |011⟩)/√2
        let r = 1.0 / 2f64.sqrt();
        let mut expected = [Complex64::ZERO; 8];
        expected[0b100] = c(r);
        expected[0b011] = c(r);
        for (k, want) in expected.iter().enumerate() {
            assert!((flipped.amp(k) - want).norm() < 1e-15, "index {k}");
        }
    }

    #[test]
    fn identity_leaves_state_exactly_unchanged() {
        let w1 = states::make_w_n(&states::WParams::new(1.0, 0.0, 0.0).unwrap());
        for q in 1..=3 {
            let out = apply_local(&Operator::identity(2), &[q], &w1).unwrap();
            assert_eq!(out.amps(), w1.amps());
        }
    }

    #[test]
    fn i_sigma_y_on_eta_plus_gives_minus_xi_minus() {
        // Direct eight-amplitude expansion: iσ₂ maps |0⟩→−|1⟩, |1⟩→|0⟩ on
        // qubit 1, so ½(|010⟩+|001⟩+√2|100⟩) → ½(−|110⟩−|101⟩+√2|000⟩),
        // which is −|ξ⁻₁⟩.
        let p = states::WParams::new(1.0, 0.0, 0.0).unwrap();
        let basis = states::w_teleport_basis(&p);
        let eta_plus = &basis.vectors()[0].state;
        let xi_minus = &basis.vectors()[3].state;

        let rotated = apply_local(&Operator::i_sigma_y(), &[1], eta_plus).unwrap();
        for k in 0..8 {
            assert!(
                (rotated.amp(k) + xi_minus.amp(k)).norm() < 1e-14,
                "index {k}"
            );
        }
    }

    #[test]
    fn multi_target_operator_matches_tensor_of_singles() {
        let s = tensor(
            &states::make_ghz(),
            &StateVector::basis_state(1, 1).unwrap(),
        );
        let xz = Operator::sigma_x().kron(&Operator::sigma_z());
        let joint = apply_local(&xz, &[2, 4], &s).unwrap();
        let step = apply_local(&Operator::sigma_x(), &[2], &s).unwrap();
        let step = apply_local(&Operator::sigma_z(), &[4], &step).unwrap();
        assert_eq!(joint.amps(), step.amps());
    }

    #[test]
    fn rejects_duplicate_targets() {
        let s = states::make_ghz();
        let op = Operator::sigma_x().kron(&Operator::sigma_x());
        let err = apply_local(&op, &[2, 2], &s).unwrap_err();
        assert_eq!(err, Error::DuplicateQubit(2));
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let s = states::make_ghz();
        let err = apply_local(&Operator::sigma_x(), &[1, 2], &s).unwrap_err();
        assert!(matches!(err, Error::OperatorDimension { .. }));
    }

    #[test]
    fn rejects_non_unitary_operator() {
        let mat = CMatrix::from_rows(&[
            vec![c(1.0), c(0.0)],
            vec![c(0.0), c(2.0)],
        ])
        .unwrap();
        let err = Operator::unitary(mat.clone()).unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));

        let op = Operator::general(mat);
        let s = StateVector::basis_state(1, 0).unwrap();
        assert!(matches!(
            apply_local(&op, &[1], &s).unwrap_err(),
            Error::NotUnitary { .. }
        ));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let mat = CMatrix::from_rows(&[
            vec![c(f64::NAN), c(0.0)],
            vec![c(0.0), c(1.0)],
        ])
        .unwrap();
        assert_eq!(
            Operator::unitary(mat).unwrap_err(),
            Error::NonFinite("operator entries")
        );
    }
}
