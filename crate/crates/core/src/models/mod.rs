//! The structures `N`, `Z`, `M_I`, the pair structure for `B'` and the
//! `{0, s, P, f}` structure, with term evaluation and bounded checking.

mod check;
mod element;
mod structure;
mod witnesses;

pub use check::{
    find_witness, for_each_assignment, holds_bounded, Bounds, CheckReport, Outcome, Target, EVALUATION_CAP,
};
pub use element::{trunc_sub, uparrow, ModelElement};
pub use structure::{eval_term, Assignment, StructureId};
pub use witnesses::{
    chi_formula, counterexample_e, embed_iota, induction_failure_witness, parity_witness, shoenfield_oddeven_check,
    CancellationReport, InductionFailureReport, OddEvenReport, Parity, StepSample,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unbound variable or constant `{0}`")]
    Unbound(String),
    #[error("symbol `{symbol}` is not interpreted in {structure}")]
    ForeignSymbol { symbol: String, structure: StructureId },
    #[error("{element} is not an element of {structure}")]
    OutsideDomain { element: ModelElement, structure: StructureId },
    #[error("integer overflow during evaluation")]
    Overflow,
    #[error("evaluation cap reached")]
    EvaluationCap,
    #[error("invalid bounds: {0}")]
    BadBounds(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("unknown structure `{0}` (expected N, Z, M:<I>, shoenfield or pstruct)")]
    UnknownStructure(String),
}
