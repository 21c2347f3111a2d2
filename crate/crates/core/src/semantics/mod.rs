//! Finite first-order structures and valuations.
//!
//! A valuation is never built whole. The engine interns the ground
//! fingerprints a query needs, then searches for legal choices on just
//! those, so answers are exact for the query without touching the rest of
//! the (infinite) formula space.

mod engine;
mod generate;
mod ground;
mod search;
mod soundness;
mod structure;

pub use engine::{Budget, BudgetExhausted, EvalVerdict, Evaluator, NodeId, TraceEntry, Valuation, ValuationEntry};
pub use generate::{random_atom, random_formula, random_term, FormulaShape};
pub use ground::GroundFingerprint;
pub use search::{
    find_countermodel, find_countermodel_pinned, random_structure, refute_in, CandidateSpace, Countermodel, Pin,
    SearchConfig, SearchError, SearchOutcome,
};
pub use soundness::{
    check_axiom_soundness, check_rule_preservation, ChoicePolicy, RuleReport, SoundnessConfig, SoundnessFailure,
    SoundnessReport,
};
pub use structure::{Assignment, Element, Extension, Structure, Tuple};

use crate::nmatrix::{NmatrixError, SystemSpec, ValueSet};
use crate::syntax::{free_vars, Formula, Signature, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("the universe must be nonempty")]
    EmptyUniverse,
    #[error("{kind} `{name}` is not interpreted in the structure")]
    Uninterpreted { kind: &'static str, name: String },
    #[error("predicate `{predicate}` is given as a {found}, but {system} needs a {expected}")]
    ShapeMismatch { predicate: String, expected: &'static str, found: &'static str, system: String },
    #[error("tuple {tuple:?} of `{predicate}` does not have arity {arity}")]
    TupleArity { predicate: String, tuple: Vec<usize>, arity: usize },
    #[error("`{symbol}` mentions element {element}, outside a universe of size {universe}")]
    ElementOutOfRange { symbol: String, element: usize, universe: usize },
    #[error("function `{name}` needs a table of {expected} entries, found {found}")]
    FunctionTable { name: String, expected: usize, found: usize },
    #[error("predicate `{predicate}` has a necessary tuple that is not possible")]
    NecessaryNotPossible { predicate: String },
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
    #[error("`{0}` is not atomic")]
    NotAtomic(String),
    #[error("a fingerprint with bound variables cannot be evaluated")]
    OpenFingerprint,
    #[error("the valuation does not cover `{0}`")]
    IncompleteValuation(String),
    #[error("invalid structure document: {0}")]
    Json(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Nmatrix(#[from] NmatrixError),
}

/// The values `f` can take at `s` under the legal valuations over
/// `structure`.
pub fn possible_values(
    structure: &Structure,
    s: &Assignment,
    f: &Formula,
    sys: &SystemSpec,
) -> Result<ValueSet, SemanticsError> {
    structure.validate(&Signature::of_formula(f)?, sys)?;
    let mut ev = Evaluator::new(structure, sys);
    let n = ev.node(f, s)?;
    Ok(ev.possible_values(n, &Budget::unlimited()).expect("unlimited budget"))
}

/// Whether `f` is designated under every assignment to its free variables
/// in `valuation`. An undesignated covered instance settles the answer even
/// when other instances are missing.
pub fn check_true(
    structure: &Structure,
    valuation: &Valuation,
    f: &Formula,
    sys: &SystemSpec,
) -> Result<bool, SemanticsError> {
    let vars: Vec<String> = free_vars(f).into_iter().collect();
    let mut missing = None;
    for s in Assignment::all(&vars, structure.universe) {
        let key = GroundFingerprint::of(structure, &s, f)?;
        match valuation.get(&key) {
            Some(v) if !sys.is_designated(v) => return Ok(false),
            Some(_) => {}
            None => missing = missing.or(Some(key.to_string())),
        }
    }
    match missing {
        Some(key) => Err(SemanticsError::IncompleteValuation(key)),
        None => Ok(true),
    }
}
