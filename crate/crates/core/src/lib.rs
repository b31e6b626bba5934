//! Thermodynamic semirings over min-plus and max-plus arithmetic, Rota-Baxter
//! operators on them, and algebraic Birkhoff factorization of Hopf-algebra
//! characters with values in those semirings.
//!
//! Modules:
//! - [`semiring`]: extended reals, entropy-deformed addition, planar-tree evaluation.
//! - [`trace`]: min-plus matrices, quantum entropies, entropy-deformed traces.
//! - [`hopf`]: multigraphs, canonical forms, the subgraph/quotient coproduct, characters.
//! - [`birkhoff`]: semiring elements, Rota-Baxter operators, factorization engines.
//! - [`witt`]: exact Witt vectors, ghost maps, zeta functions and point counts.
//! - [`apps`]: Markov random fields, polynomial countability, step-count demo.

pub mod apps;
pub mod birkhoff;
pub mod error;
pub mod hopf;
pub mod semiring;
pub mod serde_ext;
pub mod trace;
pub mod witt;

pub use error::{Error, ErrorKind, Result};
