//! Tropical and entropy-deformed traces of matrices.

mod deformed;
mod entropy;
mod matrix;
mod rb;

pub use deformed::{deformed_trace, free_energy_decompose, log_partition, DeformedTrace, FreeEnergy};
pub use entropy::{quantum_entropy_eval, QuantumEntropy, LOG_FLOOR};
pub use matrix::{
    direct_sum, kronecker_sum, spectral_trop_trace, trop_trace, DensityMatrix, MinPlusMatrix, Spectrum,
    SymMatrix, MATRIX_TOL,
};
pub use rb::{constant_sequence, matrix_rb_check, MatrixRbReport};
