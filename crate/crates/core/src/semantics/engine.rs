//! Choice-consistent valuation search over the ground fingerprint DAG.
//!
//! Every fingerprint a query needs becomes one node. A node's value is
//! chosen once, so all occurrences of it agree; this is what makes
//! substitution, variance and Leibniz coherence hold by construction.
//! Atomic nodes are fixed by the structure. A composite node is legal when
//! its value lies in the multioperation applied to its children's values.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ground::{instantiate, Ground, GroundFingerprint};
use super::structure::{identity_value, Assignment, Element, Structure};
use super::SemanticsError;
use crate::nmatrix::{SystemSpec, TruthValue, ValueSet};
use crate::syntax::Formula;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum NodeKind {
    Fixed(TruthValue),
    Neg(NodeId),
    Box(NodeId),
    Imp(NodeId, NodeId),
    /// One child per element, deduplicated.
    Forall(Vec<NodeId>),
}

#[derive(Debug, Clone)]
struct Node {
    key: GroundFingerprint,
    kind: NodeKind,
    over: ValueSet,
}

/// Step limit shared by every search that draws on it.
#[derive(Debug)]
pub struct Budget {
    left: AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("search budget exhausted")]
pub struct BudgetExhausted;

impl Budget {
    pub fn new(steps: u64) -> Budget {
        Budget { left: AtomicU64::new(steps) }
    }

    pub fn unlimited() -> Budget {
        Budget::new(u64::MAX)
    }

    pub fn remaining(&self) -> u64 {
        self.left.load(Ordering::Relaxed)
    }

    pub fn spend(&self) -> Result<(), BudgetExhausted> {
        self.left
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |n| n.checked_sub(1))
            .map(|_| ())
            .map_err(|_| BudgetExhausted)
    }
}

/// Committed choices of a valuation, restricted to the fingerprints a
/// query touched.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    values: BTreeMap<GroundFingerprint, TruthValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationEntry {
    pub fingerprint: String,
    pub value: TruthValue,
}

impl Valuation {
    pub fn get(&self, key: &GroundFingerprint) -> Option<TruthValue> {
        self.values.get(key).copied()
    }

    /// Value of `f` under `s`, if the valuation covers it.
    pub fn value_of(
        &self,
        structure: &Structure,
        s: &Assignment,
        f: &Formula,
    ) -> Result<Option<TruthValue>, SemanticsError> {
        Ok(self.get(&GroundFingerprint::of(structure, s, f)?))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroundFingerprint, TruthValue)> {
        self.values.iter().map(|(k, &v)| (k, v))
    }

    pub fn entries(&self) -> Vec<ValuationEntry> {
        self.iter().map(|(k, value)| ValuationEntry { fingerprint: k.to_string(), value }).collect()
    }
}

/// One line of an evaluation trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub fingerprint: String,
    pub value: TruthValue,
    pub allowed: ValueSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalVerdict {
    pub value: TruthValue,
    pub designated: bool,
    pub trace: Vec<TraceEntry>,
}

/// Fingerprint DAG for one structure and system, with scratch state for
/// searches and random sampling.
pub struct Evaluator<'a> {
    structure: &'a Structure,
    sys: SystemSpec,
    nodes: Vec<Node>,
    index: HashMap<Ground, NodeId>,
    committed: Vec<Option<TruthValue>>,
    sampled: Vec<Option<TruthValue>>,
}

impl<'a> Evaluator<'a> {
    /// The structure is assumed to be validated against `sys` already.
    pub fn new(structure: &'a Structure, sys: &SystemSpec) -> Evaluator<'a> {
        Evaluator {
            structure,
            sys: *sys,
            nodes: Vec::new(),
            index: HashMap::new(),
            committed: Vec::new(),
            sampled: Vec::new(),
        }
    }

    pub fn system(&self) -> &SystemSpec {
        &self.sys
    }

    pub fn structure(&self) -> &Structure {
        self.structure
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&mut self, f: &Formula, s: &Assignment) -> Result<NodeId, SemanticsError> {
        let g = super::ground::ground(self.structure, s, f)?;
        self.intern(g)
    }

    pub fn fingerprint(&self, n: NodeId) -> &GroundFingerprint {
        &self.nodes[n].key
    }

    /// Values the node could take under some assignment of its
    /// descendants, ignoring sharing. A superset of what is attainable.
    pub fn over(&self, n: NodeId) -> ValueSet {
        self.nodes[n].over
    }

    pub(crate) fn intern(&mut self, g: Ground) -> Result<NodeId, SemanticsError> {
        if let Some(&n) = self.index.get(&g) {
            return Ok(n);
        }
        let kind = match &g {
            Ground::Atom(p, args) => NodeKind::Fixed(self.structure.predicate_value(p, &elements(args)?)?),
            Ground::Ident(k, a, b) => {
                let (a, b) = (elements(std::slice::from_ref(a))?, elements(std::slice::from_ref(b))?);
                NodeKind::Fixed(identity_value(*k, a == b))
            }
            Ground::Neg(a) => NodeKind::Neg(self.intern((**a).clone())?),
            Ground::Box(a) => NodeKind::Box(self.intern((**a).clone())?),
            Ground::Imp(a, b) => {
                let a = self.intern((**a).clone())?;
                NodeKind::Imp(a, self.intern((**b).clone())?)
            }
            Ground::Forall(body) => {
                let mut children = Vec::with_capacity(self.structure.universe);
                for e in 0..self.structure.universe {
                    let child = instantiate(self.structure, body, e)?;
                    children.push(self.intern(child)?);
                }
                children.sort_unstable();
                children.dedup();
                NodeKind::Forall(children)
            }
        };
        let over = self.over_of(&kind)?;
        let id = self.nodes.len();
        self.nodes.push(Node { key: GroundFingerprint(g.clone()), kind, over });
        self.index.insert(g, id);
        self.committed.push(None);
        self.sampled.push(None);
        Ok(id)
    }

    fn over_of(&self, kind: &NodeKind) -> Result<ValueSet, SemanticsError> {
        let sys = &self.sys;
        Ok(match kind {
            NodeKind::Fixed(v) => {
                sys.neg_of(*v)?;
                ValueSet::single(*v)
            }
            NodeKind::Neg(c) => sys.lift(self.over(*c), |v| sys.neg_of(v))?,
            NodeKind::Box(c) => sys.lift(self.over(*c), |v| sys.box_of(v))?,
            NodeKind::Imp(a, b) => {
                let mut out = ValueSet::EMPTY;
                for x in self.over(*a).iter() {
                    for y in self.over(*b).iter() {
                        out = out.union(sys.imp_of(x, y)?);
                    }
                }
                out
            }
            NodeKind::Forall(children) => {
                let mut out = ValueSet::EMPTY;
                for mask in reachable_masks(children.iter().map(|&c| self.over(c))) {
                    out = out.union(sys.forall_fold(mask)?);
                }
                out
            }
        })
    }

    fn avail(&self, n: NodeId) -> ValueSet {
        match self.committed[n] {
            Some(v) => ValueSet::single(v),
            None => self.nodes[n].over,
        }
    }

    /// Child assignments under which node `n` may take value `v`.
    fn options(&self, n: NodeId, v: TruthValue) -> Vec<Vec<(NodeId, TruthValue)>> {
        let sys = &self.sys;
        let mut out = Vec::new();
        match &self.nodes[n].kind {
            NodeKind::Fixed(_) => out.push(Vec::new()),
            NodeKind::Neg(c) => {
                for x in self.avail(*c).iter() {
                    if sys.neg_of(x).is_ok_and(|s| s.contains(v)) {
                        out.push(vec![(*c, x)]);
                    }
                }
            }
            NodeKind::Box(c) => {
                for x in self.avail(*c).iter() {
                    if sys.box_of(x).is_ok_and(|s| s.contains(v)) {
                        out.push(vec![(*c, x)]);
                    }
                }
            }
            NodeKind::Imp(a, b) => {
                for x in self.avail(*a).iter() {
                    for y in self.avail(*b).iter() {
                        if sys.imp_of(x, y).is_ok_and(|s| s.contains(v)) {
                            out.push(vec![(*a, x), (*b, y)]);
                        }
                    }
                }
            }
            NodeKind::Forall(children) => {
                let avail: Vec<ValueSet> = children.iter().map(|&c| self.avail(c)).collect();
                let mut picks = vec![TruthValue::TPos; children.len()];
                self.forall_options(children, &avail, 0, ValueSet::EMPTY, &mut picks, v, &mut out);
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn forall_options(
        &self,
        children: &[NodeId],
        avail: &[ValueSet],
        i: usize,
        mask: ValueSet,
        picks: &mut Vec<TruthValue>,
        target: TruthValue,
        out: &mut Vec<Vec<(NodeId, TruthValue)>>,
    ) {
        if i == children.len() {
            if self.sys.forall_fold(mask).is_ok_and(|s| s.contains(target)) {
                out.push(children.iter().copied().zip(picks.iter().copied()).collect());
            }
            return;
        }
        for x in avail[i].iter() {
            picks[i] = x;
            let mut m = mask;
            m.insert(x);
            self.forall_options(children, avail, i + 1, m, picks, target, out);
        }
    }

    fn search(&mut self, agenda: &mut Vec<(NodeId, TruthValue)>, budget: &Budget) -> Result<bool, BudgetExhausted> {
        let Some((n, v)) = agenda.pop() else {
            return Ok(true);
        };
        let ok = match self.committed[n] {
            Some(c) => c == v && self.search(agenda, budget)?,
            None if !self.nodes[n].over.contains(v) => false,
            None => {
                budget.spend()?;
                self.committed[n] = Some(v);
                let mut ok = false;
                for option in self.options(n, v) {
                    let len = agenda.len();
                    agenda.extend(option);
                    if self.search(agenda, budget)? {
                        ok = true;
                        break;
                    }
                    agenda.truncate(len);
                }
                if !ok {
                    self.committed[n] = None;
                }
                ok
            }
        };
        if !ok {
            agenda.push((n, v));
        }
        Ok(ok)
    }

    /// A legal partial valuation meeting every goal, if one exists.
    pub fn solve(
        &mut self,
        goals: &[(NodeId, TruthValue)],
        budget: &Budget,
    ) -> Result<Option<Valuation>, BudgetExhausted> {
        self.committed.iter_mut().for_each(|c| *c = None);
        let mut agenda: Vec<_> = goals.iter().rev().copied().collect();
        if !self.search(&mut agenda, budget)? {
            return Ok(None);
        }
        Ok(Some(self.committed_valuation()))
    }

    fn committed_valuation(&self) -> Valuation {
        let values =
            self.committed.iter().enumerate().filter_map(|(n, v)| v.map(|v| (self.nodes[n].key.clone(), v))).collect();
        Valuation { values }
    }

    /// Exactly the values `n` takes under some legal valuation.
    pub fn possible_values(&mut self, n: NodeId, budget: &Budget) -> Result<ValueSet, BudgetExhausted> {
        let mut out = ValueSet::EMPTY;
        for w in self.over(n).iter() {
            if self.solve(&[(n, w)], budget)?.is_some() {
                out.insert(w);
            }
        }
        Ok(out)
    }

    /// Values of the children of `n` under `val`, and the set `n` may
    /// take given them. `None` when some child is not covered.
    pub fn allowed(&self, n: NodeId, val: &Valuation) -> Option<ValueSet> {
        let get = |c: NodeId| val.get(&self.nodes[c].key);
        let sys = &self.sys;
        match &self.nodes[n].kind {
            NodeKind::Fixed(v) => Some(ValueSet::single(*v)),
            NodeKind::Neg(c) => sys.neg_of(get(*c)?).ok(),
            NodeKind::Box(c) => sys.box_of(get(*c)?).ok(),
            NodeKind::Imp(a, b) => sys.imp_of(get(*a)?, get(*b)?).ok(),
            NodeKind::Forall(children) => {
                let mask = children.iter().map(|&c| get(c)).collect::<Option<ValueSet>>()?;
                sys.forall_fold(mask).ok()
            }
        }
    }

    /// Whether every covered node of the interned DAG respects its
    /// multioperation under `val`.
    pub fn is_legal(&self, val: &Valuation) -> bool {
        (0..self.nodes.len()).all(|n| match val.get(&self.nodes[n].key) {
            None => true,
            Some(v) => self.allowed(n, val).is_none_or(|s| s.contains(v)),
        })
    }

    /// Verdict for `root` under `val`, with the trace of every covered node
    /// below it.
    pub fn verdict(&self, root: NodeId, val: &Valuation) -> Option<EvalVerdict> {
        let value = val.get(&self.nodes[root].key)?;
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            match &self.nodes[n].kind {
                NodeKind::Fixed(_) => {}
                NodeKind::Neg(c) | NodeKind::Box(c) => stack.push(*c),
                NodeKind::Imp(a, b) => stack.extend([*a, *b]),
                NodeKind::Forall(cs) => stack.extend(cs.iter().copied()),
            }
        }
        let trace = (0..self.nodes.len())
            .filter(|&n| seen[n])
            .filter_map(|n| {
                let v = val.get(&self.nodes[n].key)?;
                Some(TraceEntry {
                    fingerprint: self.nodes[n].key.to_string(),
                    value: v,
                    allowed: self.allowed(n, val).unwrap_or(self.nodes[n].over),
                })
            })
            .collect();
        Some(EvalVerdict { value, designated: self.sys.is_designated(value), trace })
    }

    /// Draws a value for `n` from a random legal valuation, choosing each
    /// node's value on first demand and keeping it afterwards.
    pub fn sample<R: Rng + ?Sized>(&mut self, n: NodeId, rng: &mut R) -> TruthValue {
        if let Some(v) = self.sampled[n] {
            return v;
        }
        let sys = self.sys;
        let choices = match self.nodes[n].kind.clone() {
            NodeKind::Fixed(v) => ValueSet::single(v),
            NodeKind::Neg(c) => {
                let x = self.sample(c, rng);
                sys.neg_of(x).expect("sampled values lie in the carrier")
            }
            NodeKind::Box(c) => {
                let x = self.sample(c, rng);
                sys.box_of(x).expect("sampled values lie in the carrier")
            }
            NodeKind::Imp(a, b) => {
                let x = self.sample(a, rng);
                let y = self.sample(b, rng);
                sys.imp_of(x, y).expect("sampled values lie in the carrier")
            }
            NodeKind::Forall(children) => {
                let mask = children.iter().map(|&c| self.sample(c, rng)).collect();
                sys.forall_fold(mask).expect("sampled values lie in the carrier")
            }
        };
        let v = pick(choices, rng);
        self.sampled[n] = Some(v);
        v
    }

    /// Forgets every sampled choice.
    pub fn reset_samples(&mut self) {
        self.sampled.iter_mut().for_each(|s| *s = None);
    }

    /// The choices made by [`Evaluator::sample`] so far.
    pub fn sampled_valuation(&self) -> Valuation {
        let values =
            self.sampled.iter().enumerate().filter_map(|(n, v)| v.map(|v| (self.nodes[n].key.clone(), v))).collect();
        Valuation { values }
    }
}

pub(crate) fn pick<R: Rng + ?Sized>(choices: ValueSet, rng: &mut R) -> TruthValue {
    let k = rng.gen_range(0..choices.len());
    choices.iter().nth(k).expect("multioperations never return the empty set")
}

fn elements(args: &[super::ground::GTerm]) -> Result<Vec<Element>, SemanticsError> {
    args.iter()
        .map(|a| match a {
            super::ground::GTerm::Elem(e) => Ok(*e),
            _ => Err(SemanticsError::OpenFingerprint),
        })
        .collect()
}

/// Every set `{x1, ..., xk}` obtainable by picking `xi` from the i-th set.
pub(crate) fn reachable_masks(sets: impl Iterator<Item = ValueSet>) -> Vec<ValueSet> {
    let mut reach = [false; 256];
    reach[0] = true;
    for set in sets {
        let mut next = [false; 256];
        for (bits, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
            for v in set.iter() {
                let mut m = ValueSet::from_bits(bits as u8);
                m.insert(v);
                next[m.bits() as usize] = true;
            }
        }
        reach = next;
    }
    (1..256).filter(|&b| reach[b]).map(|b| ValueSet::from_bits(b as u8)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nmatrix::TruthValue::*;
    use crate::syntax::{parse_formula, Signature};

    fn sig() -> Signature {
        Signature::new().with_predicate("P", 1).with_predicate("A", 0)
    }

    #[test]
    fn atoms_are_singletons() {
        let a = Structure::new(2).with_pair("P", &[&[0]], &[&[0], &[1]]).with_pair("A", &[&[]], &[]);
        let mut ev = Evaluator::new(&a, &SystemSpec::tm());
        let budget = Budget::unlimited();
        for (text, v) in [("P(x)", CPos), ("A", TPos)] {
            let n = ev.node(&parse_formula(text, &sig()).unwrap(), &Assignment::new().with("x", 0)).unwrap();
            assert_eq!(ev.possible_values(n, &budget).unwrap(), ValueSet::single(v));
        }
    }

    #[test]
    fn shared_nodes_are_correlated() {
        // both sides of []A -> []A are one node, so only the diagonal of the
        // implication table is reachable
        let a = Structure::new(1).with_pair("P", &[], &[]).with_pair("A", &[&[]], &[&[]]);
        let mut ev = Evaluator::new(&a, &SystemSpec::tm());
        let n = ev.node(&parse_formula("[]A -> []A", &sig()).unwrap(), &Assignment::new()).unwrap();
        let got = ev.possible_values(n, &Budget::unlimited()).unwrap();
        let sys = SystemSpec::tm();
        let mut want = ValueSet::EMPTY;
        for b in sys.box_of(CPos).unwrap().iter() {
            want = want.union(sys.imp_of(b, b).unwrap());
        }
        assert_eq!(got, want);
        assert!(got.is_subset(sys.designated()));
    }

    #[test]
    fn excluded_middle_under_box_can_fail() {
        let a = Structure::new(1).with_pair("P", &[], &[]).with_pair("A", &[&[]], &[&[]]);
        let mut ev = Evaluator::new(&a, &SystemSpec::tm());
        let n = ev.node(&parse_formula("[](A | ~A)", &sig()).unwrap(), &Assignment::new()).unwrap();
        let got = ev.possible_values(n, &Budget::unlimited()).unwrap();
        assert!(!got.is_subset(SystemSpec::tm().designated()), "{got}");
    }

    #[test]
    fn budget_runs_out() {
        let a = Structure::new(3).with_pair("P", &[&[0]], &[&[1]]).with_pair("A", &[], &[]);
        let mut ev = Evaluator::new(&a, &SystemSpec::tm());
        let n = ev.node(&parse_formula("forall x. []<>P(x)", &sig()).unwrap(), &Assignment::new()).unwrap();
        assert_eq!(ev.possible_values(n, &Budget::new(2)), Err(BudgetExhausted));
    }

    #[test]
    fn witnesses_are_legal() {
        let a = Structure::new(2).with_pair("P", &[&[0]], &[&[0], &[1]]).with_pair("A", &[], &[&[]]);
        let mut ev = Evaluator::new(&a, &SystemSpec::tm());
        let f = parse_formula("(forall x. <>P(x)) -> <>forall x. P(x)", &sig()).unwrap();
        let n = ev.node(&f, &Assignment::new()).unwrap();
        for v in ev.over(n).iter() {
            if let Some(val) = ev.solve(&[(n, v)], &Budget::unlimited()).unwrap() {
                assert!(ev.is_legal(&val));
                let verdict = ev.verdict(n, &val).unwrap();
                assert_eq!(verdict.value, v);
                assert!(verdict.trace.iter().all(|t| t.allowed.contains(t.value)));
            }
        }
    }

    #[test]
    fn random_samples_are_legal() {
        use rand::SeedableRng;
        let a = Structure::new(2).with_pair("P", &[&[0]], &[&[0], &[1]]).with_pair("A", &[], &[&[]]);
        let mut ev = Evaluator::new(&a, &SystemSpec::tm());
        let f = parse_formula("(forall x. []P(x)) -> []forall x. P(x)", &sig()).unwrap();
        let n = ev.node(&f, &Assignment::new()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            ev.reset_samples();
            let v = ev.sample(n, &mut rng);
            assert!(ev.over(n).contains(v));
            assert!(ev.is_legal(&ev.sampled_valuation()));
        }
    }

    #[test]
    fn reachable_masks_small() {
        let masks = reachable_masks([ValueSet::of(&[TPos, CPos]), ValueSet::of(&[TPos])].into_iter());
        assert_eq!(masks, vec![ValueSet::of(&[TPos]), ValueSet::of(&[TPos, CPos])]);
    }
}
