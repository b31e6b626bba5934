//! Semiring elements, Rota-Baxter operators on them, and Birkhoff
//! factorization of Hopf-algebra characters.

mod certify;
mod classical;
mod element;
mod engine;
mod operator;

pub use certify::{certify_rb, rb_residual, sample_element, subadditivity_counterexample, superadditivity_counterexample, RbCertificate};
pub use engine::{
    factorize, factorize_minus1, factorize_pair, AdditivityReport, EngineConfig, Entry, FactorizationResult, LogFanIn,
    MultiplicativityCheck, PairRelations, Scheme, Session, TermRecord,
};
pub use classical::{classical_birkhoff_oracle, exp_conjugation_check, ring_value, ClassicalEntry, ExpConjugationReport, ConjugationRow};
pub use element::{Element, Shape};
pub use operator::{
    AdditivityClass, CharacteristicMultiplier, Domain, FnOperator, Identity, PartialSum, Projection, QIntegral, RotaBaxter,
};
