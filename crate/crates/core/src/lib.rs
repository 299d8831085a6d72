//! Clause set cycles over linear arithmetic.
//!
//! The crate represents clause sets over the language `{0, s, p, +}` extended
//! by a distinguished constant `eta`, checks the cycle conditions with a
//! tri-state entailment engine, translates cycles to and from inductive
//! existential formulas, normalizes existential formulas into components,
//! computes descending integer solution sequences, and evaluates the
//! non-standard structures that witness unprovability results.

pub mod cli;
pub mod cycles;
pub mod descent;
pub mod entailment;
pub mod models;
pub mod normalize;
pub mod syntax;
pub mod theories;
