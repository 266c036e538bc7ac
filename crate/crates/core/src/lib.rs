//! Labelled natural deduction and base-extension semantics for
//! intuitionistic modal logics.
//!
//! The crate provides, over a shared syntax of labelled modal formulae and
//! relational assumptions:
//!
//! - [`nd`]: proof objects, proof checking, and bounded proof search for
//!   the labelled natural deduction systems selected by a set of frame
//!   conditions;
//! - [`base`]: bases of atomic rules and the budgeted derivability
//!   relation over them, with its modal closure cases;
//! - [`semantics`]: a bounded evaluator and falsifier for the support
//!   relation, usable as a validity counterexample search;
//! - [`completeness`]: the flattening map, simulation base, and proof
//!   extraction that together decide validity by reduction to atomic
//!   derivability;
//! - [`corpus`]: the runnable regression corpus wired into the CLI and the
//!   acceptance suite.

pub mod base;
pub mod completeness;
pub mod corpus;
pub mod nd;
pub mod semantics;
pub mod syntax;

pub use base::derive::{
    check_atomic_derivation, derive_with_status, derives, AtomicDerivation, DerivStep,
    DeriveOutcome, SearchBudget,
};
pub use base::{Base, BasicRule, BasicSentence, BasicSequent, SchematicRule};
pub use completeness::{build_simulation_base, decide_validity, extract_nd_proof, flatten_map,
    DecideOutcome, FlatMap, SimulationBase};
pub use nd::check::{check_nd_proof, NdCheckError};
pub use nd::search::{is_theorem, prove_nd};
pub use nd::{Graph, NdProof, NdRule};
pub use semantics::{
    falsify_validity, soundness_spotcheck, supports, ExtensionUniverse, FalsifyWitness,
    SupportVerdict,
};
pub use syntax::parse::{
    parse_extended_sequent, parse_formula, parse_item, parse_labelled_formula, parse_sequent,
};
pub use syntax::xi::{generalized_subformulae, XiClosure};
pub use syntax::{
    fresh_label, Atom, ContextItem, ExtendedSequent, Formula, FrameCondition, FrameSpec, Label,
    LabelledFormula, RelAssumption, Sequent,
};
