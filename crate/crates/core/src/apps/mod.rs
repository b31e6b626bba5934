//! Application characters: step counting, Markov random fields from
//! nearest-neighbor potentials, and point counts of graph hypersurfaces.

mod markov;
mod polycount;
mod stepcount;

pub use markov::{
    factorize_potential, induced_family, markov_check, nn_check, FieldValues, InducedSubgraph, MarkovField,
    NearestNeighborPotential, PotentialFactorization, PotentialKind, PotentialSpec, RatioReport, VertexSet,
    VertexSetHopf, Violation, FAMILY_CAP, MARKOV_TOL, NN_TOL,
};
pub use polycount::{
    default_primes, polycount, polycount_disjoint_union, DisjointUnionCheck, PolyCountReport, MAX_POLYCOUNT_EDGES,
    VERDICT_NOT_POLYNOMIAL, VERDICT_POLYNOMIAL,
};
pub use stepcount::{stepcount_demo, ChainLink, Localization, StepCountEntry, StepCountTable, StepCountTranscript, StepRow};
