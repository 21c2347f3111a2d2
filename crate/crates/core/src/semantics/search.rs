//! Bounded countermodel search.
//!
//! Candidates are visited by universe size, then by extension in
//! lexicographic order (each predicate tuple takes a carrier value, then
//! constants, then function table entries), then by valuation choices.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rand::Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::engine::{Budget, BudgetExhausted, EvalVerdict, Evaluator, Valuation};
use super::structure::{Assignment, Extension, Structure, Tuple};
use super::SemanticsError;
use crate::nmatrix::{SystemSpec, TruthValue};
use crate::syntax::{free_vars, Formula, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_universe: usize,
    /// Hard cap on search steps: one per candidate structure plus one per
    /// committed valuation choice.
    pub budget: u64,
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_universe: 3, budget: 50_000_000, jobs: 1 }
    }
}

/// A value constraint on the valuation a countermodel must use. The
/// formula is pinned at every assignment of its free variables that
/// extends the countermodel's assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pin {
    pub formula: Formula,
    pub value: TruthValue,
}

impl Pin {
    pub fn new(formula: Formula, value: TruthValue) -> Pin {
        Pin { formula, value }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub structure: Structure,
    pub assignment: Assignment,
    pub value: TruthValue,
    pub valuation: Valuation,
    pub verdict: EvalVerdict,
}

impl Serialize for Countermodel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Countermodel", 4)?;
        st.serialize_field("structure", &self.structure)?;
        st.serialize_field("assignment", &self.assignment)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("valuation", &self.valuation.entries())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Countermodel(Box<Countermodel>),
    /// Every candidate up to the bound was examined.
    NoCountermodel {
        max_universe: usize,
        structures: u64,
    },
    BudgetExhausted {
        universe: usize,
        structures: u64,
    },
}

impl SearchOutcome {
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            SearchOutcome::Countermodel(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_valid_up_to_bound(&self) -> bool {
        matches!(self, SearchOutcome::NoCountermodel { .. })
    }
}

/// Enumerates the structures of one universe size by index.
pub struct CandidateSpace {
    universe: usize,
    values: Vec<TruthValue>,
    carrier: crate::nmatrix::Carrier,
    predicates: Vec<(String, Vec<Tuple>)>,
    constants: Vec<String>,
    functions: Vec<(String, usize)>,
    total: Option<u64>,
}

impl CandidateSpace {
    pub fn new(sig: &Signature, sys: &SystemSpec, universe: usize) -> CandidateSpace {
        let predicates: Vec<_> = sig.predicates().map(|(p, n)| (p.to_string(), all_tuples(universe, n))).collect();
        let constants: Vec<_> = sig.constants().map(str::to_string).collect();
        let functions: Vec<_> = sig.functions().map(|(f, n)| (f.to_string(), universe.pow(n as u32))).collect();
        let values: Vec<_> = sys.values().iter().collect();
        let mut total = Some(1u64);
        let mut mul = |radix: usize, times: usize| {
            for _ in 0..times {
                total = total.and_then(|t| t.checked_mul(radix as u64));
            }
        };
        for (_, tuples) in &predicates {
            mul(values.len(), tuples.len());
        }
        mul(universe, constants.len());
        for (_, len) in &functions {
            mul(universe, *len);
        }
        CandidateSpace { universe, values, carrier: sys.carrier(), predicates, constants, functions, total }
    }

    /// Number of candidates, or `None` if it does not fit in 64 bits.
    pub fn len(&self) -> Option<u64> {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == Some(0)
    }

    /// The candidate at `index`; the first digit is the most significant.
    pub fn get(&self, mut index: u64) -> Structure {
        let mut digit = |radix: usize| {
            let d = (index % radix as u64) as usize;
            index /= radix as u64;
            d
        };
        let mut s = Structure::new(self.universe);
        let mut fn_tables: Vec<Vec<usize>> = Vec::new();
        for (_, len) in self.functions.iter().rev() {
            let mut table = vec![0; *len];
            for slot in table.iter_mut().rev() {
                *slot = digit(self.universe);
            }
            fn_tables.push(table);
        }
        for name in self.constants.iter().rev() {
            s.constants.insert(name.clone(), digit(self.universe));
        }
        for (name, tuples) in self.predicates.iter().rev() {
            let mut ext = Extension::empty(self.carrier);
            for t in tuples.iter().rev() {
                ext.set(t.clone(), self.values[digit(self.values.len())]);
            }
            s.predicates.insert(name.clone(), ext);
        }
        for ((name, _), table) in self.functions.iter().rev().zip(fn_tables) {
            s.functions.insert(name.clone(), table);
        }
        s
    }
}

fn all_tuples(universe: usize, arity: usize) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| (0..universe).map(move |e| [t.clone(), vec![e]].concat())).collect();
    }
    out
}

/// Looks for an assignment and legal valuation under which `f` takes an
/// undesignated value in this structure.
pub fn refute_in(
    structure: &Structure,
    f: &Formula,
    sys: &SystemSpec,
    pins: &[Pin],
    budget: &Budget,
) -> Result<Option<Countermodel>, SearchError> {
    let vars: Vec<String> = free_vars(f).into_iter().collect();
    let mut ev = Evaluator::new(structure, sys);
    for s in Assignment::all(&vars, structure.universe) {
        let root = ev.node(f, &s)?;
        let mut goals = vec![(root, TruthValue::TPos)];
        for pin in pins {
            let extra: Vec<String> = free_vars(&pin.formula).into_iter().filter(|x| s.get(x).is_none()).collect();
            for t in Assignment::all(&extra, structure.universe) {
                let mut st = s.clone();
                for (x, e) in t.iter() {
                    st.set(x, e);
                }
                goals.push((ev.node(&pin.formula, &st)?, pin.value));
            }
        }
        for w in ev.over(root).intersect(sys.undesignated()).iter() {
            goals[0].1 = w;
            if let Some(valuation) = ev.solve(&goals, budget)? {
                let verdict = ev.verdict(root, &valuation).expect("the root is a goal");
                return Ok(Some(Countermodel {
                    structure: structure.clone(),
                    assignment: s,
                    value: w,
                    valuation,
                    verdict,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
}

/// Bounded search for a structure, assignment and valuation refuting `f`.
pub fn find_countermodel(
    f: &Formula,
    sig: &Signature,
    sys: &SystemSpec,
    config: &SearchConfig,
) -> Result<SearchOutcome, SemanticsError> {
    find_countermodel_pinned(f, sig, sys, config, &[])
}

/// As [`find_countermodel`], additionally requiring the valuation to meet
/// every pin.
pub fn find_countermodel_pinned(
    f: &Formula,
    sig: &Signature,
    sys: &SystemSpec,
    config: &SearchConfig,
    pins: &[Pin],
) -> Result<SearchOutcome, SemanticsError> {
    if config.max_universe == 0 {
        return Err(SemanticsError::EmptyUniverse);
    }
    sig.check(f)?;
    for pin in pins {
        sig.check(&pin.formula)?;
    }
    let budget = Budget::new(config.budget);
    let mut structures = 0u64;
    for universe in 1..=config.max_universe {
        let space = CandidateSpace::new(sig, sys, universe);
        let total = space.len().unwrap_or(u64::MAX);
        let (found, seen, exhausted) = if config.jobs <= 1 {
            scan_sequential(&space, total, f, sys, pins, &budget)?
        } else {
            scan_parallel(&space, total, f, sys, pins, &budget, config.jobs)?
        };
        structures += seen;
        if let Some(cm) = found {
            return Ok(SearchOutcome::Countermodel(Box::new(cm)));
        }
        if exhausted {
            return Ok(SearchOutcome::BudgetExhausted { universe, structures });
        }
    }
    Ok(SearchOutcome::NoCountermodel { max_universe: config.max_universe, structures })
}

type ScanResult = (Option<Countermodel>, u64, bool);

fn scan_sequential(
    space: &CandidateSpace,
    total: u64,
    f: &Formula,
    sys: &SystemSpec,
    pins: &[Pin],
    budget: &Budget,
) -> Result<ScanResult, SemanticsError> {
    for index in 0..total {
        if budget.spend().is_err() {
            return Ok((None, index, true));
        }
        match refute_in(&space.get(index), f, sys, pins, budget) {
            Ok(Some(cm)) => return Ok((Some(cm), index + 1, false)),
            Ok(None) => {}
            Err(SearchError::Budget(_)) => return Ok((None, index + 1, true)),
            Err(SearchError::Semantics(e)) => return Err(e),
        }
    }
    Ok((None, total, false))
}

/// Workers claim candidate indices in order; the lowest-index countermodel
/// wins, so the answer matches the sequential scan unless the budget runs
/// out first.
fn scan_parallel(
    space: &CandidateSpace,
    total: u64,
    f: &Formula,
    sys: &SystemSpec,
    pins: &[Pin],
    budget: &Budget,
    jobs: usize,
) -> Result<ScanResult, SemanticsError> {
    let next = AtomicU64::new(0);
    let seen = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let best: Mutex<Option<(u64, Countermodel)>> = Mutex::new(None);
    let error: Mutex<Option<SemanticsError>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                let beaten = best.lock().unwrap().as_ref().is_some_and(|(b, _)| *b < index);
                if index >= total || beaten || exhausted.load(Ordering::Relaxed) || error.lock().unwrap().is_some() {
                    break;
                }
                if budget.spend().is_err() {
                    exhausted.store(true, Ordering::Relaxed);
                    break;
                }
                seen.fetch_add(1, Ordering::Relaxed);
                match refute_in(&space.get(index), f, sys, pins, budget) {
                    Ok(Some(cm)) => {
                        let mut b = best.lock().unwrap();
                        if b.as_ref().is_none_or(|(i, _)| index < *i) {
                            *b = Some((index, cm));
                        }
                    }
                    Ok(None) => {}
                    Err(SearchError::Budget(_)) => {
                        exhausted.store(true, Ordering::Relaxed);
                        break;
                    }
                    Err(SearchError::Semantics(e)) => {
                        *error.lock().unwrap() = Some(e);
                        break;
                    }
                }
            });
        }
    });
    if let Some(e) = error.into_inner().unwrap() {
        return Err(e);
    }
    let found = best.into_inner().unwrap().map(|(_, cm)| cm);
    let exhausted = exhausted.into_inner() && found.is_none();
    Ok((found, seen.into_inner(), exhausted))
}

/// A uniformly random structure for `sig` with the given universe size.
pub fn random_structure<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, sys: &SystemSpec, universe: usize) -> Structure {
    let values: Vec<_> = sys.values().iter().collect();
    let mut s = Structure::new(universe);
    for (p, n) in sig.predicates() {
        let mut ext = Extension::empty(sys.carrier());
        for t in all_tuples(universe, n) {
            ext.set(t, values[rng.gen_range(0..values.len())]);
        }
        s.predicates.insert(p.to_string(), ext);
    }
    for (g, n) in sig.functions() {
        let table = (0..universe.pow(n as u32)).map(|_| rng.gen_range(0..universe)).collect();
        s.functions.insert(g.to_string(), table);
    }
    for c in sig.constants() {
        s.constants.insert(c.to_string(), rng.gen_range(0..universe));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nmatrix::TruthValue::*;
    use crate::syntax::parse_inferred;

    fn parse(text: &str) -> (Formula, Signature) {
        parse_inferred(text, &Signature::new()).unwrap()
    }

    #[test]
    fn candidate_space_counts_and_orders() {
        let base = Signature::new().with_constant("c");
        let (_, sig) = parse_inferred("P(x) -> P(c)", &base).unwrap();
        let space = CandidateSpace::new(&sig, &SystemSpec::tm(), 2);
        // 4^2 extensions times 2 constant choices
        assert_eq!(space.len(), Some(32));
        let first = space.get(0);
        assert_eq!(first.predicate_value("P", &[0]).unwrap(), TPos);
        assert_eq!(first.predicate_value("P", &[1]).unwrap(), TPos);
        assert_eq!(first.constants["c"], 0);
        let second = space.get(1);
        assert_eq!(second.constants["c"], 1);
        let last = space.get(31);
        assert_eq!(last.predicate_value("P", &[0]).unwrap(), FNeg);
        let sig = sig.clone();
        for i in 0..32 {
            space.get(i).validate(&sig, &SystemSpec::tm()).unwrap();
        }
    }

    #[test]
    fn function_tables_enumerate() {
        let (_, sig) = parse("f(x) = x");
        let space = CandidateSpace::new(&sig, &SystemSpec::tm(), 2);
        assert_eq!(space.len(), Some(4));
        let tables: Vec<_> = (0..4).map(|i| space.get(i).functions["f"].clone()).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn invalid_formula_is_refuted_quickly() {
        let (f, sig) = parse("A -> []A");
        let out = find_countermodel(&f, &sig, &SystemSpec::tm(), &SearchConfig::default()).unwrap();
        let cm = out.countermodel().expect("necessitation fails");
        assert_eq!(cm.structure.universe, 1);
        assert!(!SystemSpec::tm().is_designated(cm.value));
    }

    #[test]
    fn valid_formula_has_no_countermodel() {
        let (f, sig) = parse("forall x. x = x");
        let out = find_countermodel(&f, &sig, &SystemSpec::tm(), &SearchConfig::default()).unwrap();
        assert_eq!(out, SearchOutcome::NoCountermodel { max_universe: 3, structures: 3 });
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let (f, sig) = parse("(forall x. []P(x)) -> []forall x. P(x)");
        let config = SearchConfig { budget: 5, ..SearchConfig::default() };
        let out = find_countermodel(&f, &sig, &SystemSpec::tm(), &config).unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExhausted { .. }), "{out:?}");
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let (f, sig) = parse("(forall x. <>P(x)) -> <>forall x. P(x)");
        let sys = SystemSpec::tm().with_quantifier_mode(crate::nmatrix::QuantifierMode::Nondeterministic);
        let seq = find_countermodel(&f, &sig, &sys, &SearchConfig::default()).unwrap();
        let par = find_countermodel(&f, &sig, &sys, &SearchConfig { jobs: 4, ..SearchConfig::default() }).unwrap();
        assert_eq!(seq, par);
        assert!(seq.countermodel().is_some());
    }
}
