//! Tri-state entailment engine.
//!
//! Positive answers come from ground instantiation with congruence closure,
//! unit propagation and bounded case splits; every `Valid` verdict carries a
//! trace that [`ProofTrace::replay`] re-checks. Negative answers are bounded
//! countermodel evidence from the structures in [`crate::models`].

mod api;
mod egraph;
mod evidence;
mod ground;
mod instantiate;
mod trace;
mod verdict;

pub use api::{
    check_entails, check_unsat, decide_ground, prove, prove_exists1_from_b, reduce_redundancy, SKOLEM_PREFIX,
};
pub use egraph::{EGraph, NodeId, PathEdge, Reason};
pub use trace::{Inference, ProofTrace, Refutation, ReplayError, Step};
pub use verdict::{Budget, Evidence, Verdict, BUDGET_PROFILE_VAR};

use thiserror::Error;

use crate::syntax::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid budget: {0}")]
    Budget(String),
    #[error("language mismatch: {0}")]
    LanguageMismatch(String),
    #[error("outside the supported fragment: {0}")]
    Fragment(String),
    #[error("expected a sentence: {0}")]
    NonGround(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}
