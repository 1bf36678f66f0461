//! Shared test oracles, independent of the library's computation paths.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use wtangle::qcore::{CMatrix, Operator, StateVector};

/// 3-tangle via Cayley's hyperdeterminant of the amplitude tensor:
/// τ = 4|d₁ − 2d₂ + 4d₃|. This never touches density matrices,
/// concurrences or the eigensolver, so it cross-checks the residual-tangle
/// route end to end.
pub fn hyperdeterminant_tangle(s: &StateVector) -> f64 {
    assert_eq!(s.num_qubits(), 3);
    let a = |i: usize, j: usize, k: usize| s.amp(4 * i + 2 * j + k);
    let a000 = a(0, 0, 0);
    let a001 = a(0, 0, 1);
    let a010 = a(0, 1, 0);
    let a011 = a(0, 1, 1);
    let a100 = a(1, 0, 0);
    let a101 = a(1, 0, 1);
    let a110 = a(1, 1, 0);
    let a111 = a(1, 1, 1);

    let d1 = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;

    4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm()
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = loop {
        let u = rng.random::<f64>();
        if u > f64::MIN_POSITIVE {
            break u;
        }
    };
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

/// Haar-distributed unitary: Gram–Schmidt of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Operator {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        loop {
            let mut col: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
                .collect();
            for prev in &columns {
                let overlap: Complex64 = prev.iter().zip(&col).map(|(p, c)| p.conj() * c).sum();
                for (c, p) in col.iter_mut().zip(prev) {
                    *c -= overlap * p;
                }
            }
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for c in &mut col {
                    *c /= norm;
                }
                columns.push(col);
                break;
            }
        }
    }
    let mut mat = CMatrix::zeros(dim);
    for (j, col) in columns.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            mat.set(i, j, z);
        }
    }
    Operator::unitary(mat).expect("Gram–Schmidt output is unitary")
}
