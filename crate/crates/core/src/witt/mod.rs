//! Truncated big Witt vectors over the rationals, their Rota-Baxter operators,
//! and zeta functions of varieties from finite-field point counts.

mod motive;
mod series;
mod vector;
mod zeta;

pub use motive::{
    brute_force_affine, brute_force_projective, count_hypersurface, count_points, counts_with_check, is_prime,
    spanning_forests, CountSource, CountingSequence, GraphPolynomial, MotiveClass, PointCount, VarietySpec, POINT_CAP,
};
pub use series::RatSeries;
pub use vector::{parse_rational, rb_identity_residual, GhostVector, WittProduct, WittVector, DEFAULT_ORDER};
pub use zeta::{zeta, zeta_from_counts, zeta_multiplicativity, zeta_rb_checks, IdentityCheck, ZetaReport, PRODUCT_TRUNCATION};
