//! Oracles and probes that check the catalog against its closed forms and
//! the nonexistence statements.

pub mod oracles;
pub mod probes;
pub mod sampling;

pub use oracles::{
    check_generator_placement, compare_with_formula, verify_formula_parts, verify_isomorphism,
    verify_lemma_formula, verify_thm32, FormulaMismatch, FormulaReport, GeneratorPlacement,
    Thm32Report,
};
pub use probes::{
    check_csq_hypothesis, csq_trial_skeleton, probe_csq_nonexistence, probe_csq_with,
    probe_zf_nonexistence, probe_zf_with, zf_trial_skeleton, Histogram, Outcome, ProbeReport,
    ProbeViolation, DEFAULT_ZERO_PROB,
};
pub use sampling::{random_graded_map, random_invertible, trial_rng, ParamSampler};
