//! Constructive side of the toolkit: turn a desired verbal image into a
//! finite list of evaluation constraints, search for a word satisfying them,
//! and verify every claim by direct recomputation.
//!
//! The pipeline is classify → build a target assignment → search for a word →
//! re-enumerate the word's full image and compare. Searches are explicitly
//! budgeted and their failures are reported as "not found within budget",
//! never as nonexistence.

pub mod audit;
pub mod lemma;
pub mod search;
pub mod star;
pub mod target;

pub use audit::{
    audit_images, classify_subset, conjugate_power_audit, AuditReport, CaseTag,
    ClassificationResult, PowerAuditReport,
};
pub use lemma::{lemma22_check, sample_independent_pairs, Lemma22Report};
pub use search::{find_word, SearchOutcome, SearchStrategy};
pub use star::{star_check, StarReport};
pub use target::{
    build_case_two_target, build_target, compose_power_prefix, symmetric_exponent, Constraint,
    TargetAssignment, DEFAULT_NULL_CAP,
};
