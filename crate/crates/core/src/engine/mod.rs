//! Reflections across chords of a conic and the checkers built on them.

mod frame;
mod instance;
mod lemmas;
pub mod random;
mod report;
mod theorems;

pub use frame::ReflectionFrame;
pub use instance::Instance;
pub use lemmas::{
    lemma_jap_check, lemma_mono_check, lemma_nut_check, lemma_sack_check, pascal_check,
};
pub use report::{
    coincidence_residual, collinearity_residual, harmonic_residual, incidence_residual, Assertion,
    CheckReport, Claim, Verdict, Witness,
};
pub use theorems::{
    midpoint_check, theorem_cutl_check, theorem_damn_check, ButterflyScenario, Derived,
    PlanarScenario,
};
