//! Decision procedures for the propositional fragment: legal valuations
//! over the subformula DAG, tautology and consequence checking.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::nmatrix::{NmatrixError, SystemSpec, TruthValue, ValueSet};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PropositionalError {
    #[error("`{0}` is not propositional (it has quantifiers, identities or predicate arguments)")]
    NotPropositional(String),
    #[error(transparent)]
    Nmatrix(#[from] NmatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Letter,
    Neg(usize),
    Box(usize),
    Imp(usize, usize),
}

/// Distinct subformulas of some roots, children before parents.
#[derive(Debug, Clone)]
struct Dag {
    formulas: Vec<Formula>,
    kinds: Vec<Kind>,
    index: HashMap<Formula, usize>,
}

impl Dag {
    fn build(roots: &[&Formula]) -> Result<Dag, PropositionalError> {
        let mut dag = Dag { formulas: Vec::new(), kinds: Vec::new(), index: HashMap::new() };
        for root in roots {
            if !root.is_propositional() {
                return Err(PropositionalError::NotPropositional(root.to_string()));
            }
            dag.add(root);
        }
        Ok(dag)
    }

    fn add(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        let kind = match f {
            Formula::Neg(a) => Kind::Neg(self.add(a)),
            Formula::Box(a) => Kind::Box(self.add(a)),
            Formula::Imp(a, b) => {
                let a = self.add(a);
                Kind::Imp(a, self.add(b))
            }
            _ => Kind::Letter,
        };
        let i = self.formulas.len();
        self.formulas.push(f.clone());
        self.kinds.push(kind);
        self.index.insert(f.clone(), i);
        i
    }
}

/// A legal valuation on a subformula closure, in post-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropValuation {
    entries: Vec<(Formula, TruthValue)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropEntry {
    pub formula: String,
    pub value: TruthValue,
}

impl PropValuation {
    pub fn get(&self, f: &Formula) -> Option<TruthValue> {
        self.entries.iter().find(|(g, _)| g == f).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, TruthValue)> {
        self.entries.iter().map(|(f, v)| (f, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_entries(&self) -> Vec<PropEntry> {
        self.iter().map(|(f, value)| PropEntry { formula: f.to_string(), value }).collect()
    }
}

impl Serialize for PropValuation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_entries().serialize(serializer)
    }
}

impl fmt::Display for PropValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{g} = {v}")?;
        }
        Ok(())
    }
}

/// Backtracking enumeration of legal valuations. Nodes are visited in
/// post-order and values tried in the fixed order T+, C+, F+, I+, T−, C−,
/// F−, I− restricted to the carrier.
pub struct LegalValuations {
    dag: Dag,
    sys: SystemSpec,
    values: Vec<TruthValue>,
    untried: Vec<ValueSet>,
    started: bool,
    done: bool,
}

impl LegalValuations {
    fn new(dag: Dag, sys: &SystemSpec) -> LegalValuations {
        let n = dag.formulas.len();
        LegalValuations {
            dag,
            sys: *sys,
            values: vec![TruthValue::TPos; n],
            untried: vec![ValueSet::EMPTY; n],
            started: false,
            done: false,
        }
    }

    fn allowed(&self, i: usize) -> ValueSet {
        let v = |j: usize| self.values[j];
        let out = match self.dag.kinds[i] {
            Kind::Letter => Ok(self.sys.values()),
            Kind::Neg(a) => self.sys.neg_of(v(a)),
            Kind::Box(a) => self.sys.box_of(v(a)),
            Kind::Imp(a, b) => self.sys.imp_of(v(a), v(b)),
        };
        out.expect("enumerated values lie in the carrier")
    }

    fn fill_from(&mut self, start: usize) {
        for i in start..self.values.len() {
            let mut choices = self.allowed(i).iter();
            self.values[i] = choices.next().expect("multioperations never return the empty set");
            self.untried[i] = choices.collect();
        }
    }

    fn advance(&mut self) -> bool {
        let Some(i) = (0..self.values.len()).rev().find(|&i| !self.untried[i].is_empty()) else {
            return false;
        };
        let mut rest = self.untried[i].iter();
        self.values[i] = rest.next().unwrap();
        self.untried[i] = rest.collect();
        self.fill_from(i + 1);
        true
    }

    fn value(&self, f: &Formula) -> TruthValue {
        self.values[self.dag.index[f]]
    }

    fn snapshot(&self) -> PropValuation {
        PropValuation { entries: self.dag.formulas.iter().cloned().zip(self.values.iter().copied()).collect() }
    }

    fn has_more(&self) -> bool {
        !self.done && (!self.started || self.untried.iter().any(|u| !u.is_empty()))
    }

    /// Advances to the next valuation without materializing it.
    fn step(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return true;
        }
        if !self.advance() {
            self.done = true;
            return false;
        }
        true
    }
}

impl Iterator for LegalValuations {
    type Item = PropValuation;

    fn next(&mut self) -> Option<PropValuation> {
        self.step().then(|| self.snapshot())
    }
}

/// Every legal valuation on the subformula closure of `f`.
pub fn legal_valuations(f: &Formula, sys: &SystemSpec) -> Result<LegalValuations, PropositionalError> {
    Ok(LegalValuations::new(Dag::build(&[f])?, sys))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Refuted,
    /// The enumeration limit was reached before a refutation.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropVerdict {
    pub status: Status,
    /// Legal valuations examined.
    pub valuations: u64,
    pub witness: Option<PropValuation>,
}

impl PropVerdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Whether every legal valuation that designates all `premises` also
/// designates `conclusion`. Stops at the first counterexample or after
/// `limit` valuations.
pub fn check_consequence(
    premises: &[Formula],
    conclusion: &Formula,
    sys: &SystemSpec,
    limit: Option<u64>,
) -> Result<PropVerdict, PropositionalError> {
    let roots: Vec<&Formula> = premises.iter().chain(std::iter::once(conclusion)).collect();
    let mut it = LegalValuations::new(Dag::build(&roots)?, sys);
    let mut count = 0u64;
    while it.step() {
        count += 1;
        let premises_hold = premises.iter().all(|p| sys.is_designated(it.value(p)));
        if premises_hold && !sys.is_designated(it.value(conclusion)) {
            return Ok(PropVerdict { status: Status::Refuted, valuations: count, witness: Some(it.snapshot()) });
        }
        if limit.is_some_and(|l| count >= l) {
            let exhausted = !it.has_more();
            let status = if exhausted { Status::Holds } else { Status::Undecided };
            return Ok(PropVerdict { status, valuations: count, witness: None });
        }
    }
    Ok(PropVerdict { status: Status::Holds, valuations: count, witness: None })
}

pub fn check_tautology(f: &Formula, sys: &SystemSpec, limit: Option<u64>) -> Result<PropVerdict, PropositionalError> {
    check_consequence(&[], f, sys, limit)
}

/// Whether `f` is designated under every legal valuation, with a
/// falsifying valuation when it is not.
pub fn is_tautology(f: &Formula, sys: &SystemSpec) -> Result<(bool, Option<PropValuation>), PropositionalError> {
    let v = check_tautology(f, sys, None)?;
    Ok((v.holds(), v.witness))
}

pub fn is_consequence(
    premises: &[Formula],
    f: &Formula,
    sys: &SystemSpec,
) -> Result<(bool, Option<PropValuation>), PropositionalError> {
    let v = check_consequence(premises, f, sys, None)?;
    Ok((v.holds(), v.witness))
}
