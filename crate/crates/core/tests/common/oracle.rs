//! Brute-force possible values for four-valued structures.
//!
//! Every subformula instance is keyed by its ground form: free variables
//! and closed terms become the elements they denote, bound variables become
//! binder distances, and void quantifiers disappear. Instances with equal
//! keys share one value. The oracle enumerates every assignment of values
//! to keys that respects the published tables and collects the root values.

use std::collections::{BTreeMap, BTreeSet};

use ivlev::nmatrix::{TruthValue, TruthValue::*, ValueSet};
use ivlev::semantics::{Extension, Structure};
use ivlev::syntax::{Formula, IdentityKind, Term};

use super::published;

#[derive(Debug, Clone)]
enum Node {
    Fixed(TruthValue),
    Neg(usize),
    Box(usize),
    Imp(usize, usize),
    Forall(Vec<usize>),
}

struct Graph<'a> {
    structure: &'a Structure,
    keys: BTreeMap<String, usize>,
    nodes: Vec<Node>,
}

fn free_in(f: &Formula, x: &str) -> bool {
    fn term(t: &Term, x: &str) -> bool {
        match t {
            Term::Var(v) => v == x,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| term(a, x)),
        }
    }
    match f {
        Formula::Atom(_, args) => args.iter().any(|a| term(a, x)),
        Formula::Identity(_, l, r) => term(l, x) || term(r, x),
        Formula::Neg(a) | Formula::Box(a) => free_in(a, x),
        Formula::Imp(a, b) => free_in(a, x) || free_in(b, x),
        Formula::Forall(y, body) => y != x && free_in(body, x),
    }
}

impl Graph<'_> {
    /// The element `t` denotes, or `None` when it mentions a bound variable.
    fn denote(&self, t: &Term, env: &BTreeMap<String, usize>, bound: &[String]) -> Option<usize> {
        match t {
            Term::Var(v) if bound.contains(v) => None,
            Term::Var(v) => Some(env[v]),
            Term::Const(c) => Some(self.structure.constants[c]),
            Term::App(g, args) => {
                let mut index = 0;
                for a in args {
                    index = index * self.structure.universe + self.denote(a, env, bound)?;
                }
                Some(self.structure.functions[g][index])
            }
        }
    }

    fn term_key(&self, t: &Term, env: &BTreeMap<String, usize>, bound: &[String]) -> String {
        if let Some(e) = self.denote(t, env, bound) {
            return format!("#{e}");
        }
        match t {
            Term::Var(v) => format!("^{}", bound.iter().rev().position(|b| b == v).unwrap()),
            Term::App(g, args) => {
                let args: Vec<String> = args.iter().map(|a| self.term_key(a, env, bound)).collect();
                format!("{g}({})", args.join(","))
            }
            Term::Const(_) => unreachable!("constants always denote"),
        }
    }

    fn key(&self, f: &Formula, env: &BTreeMap<String, usize>, bound: &mut Vec<String>) -> String {
        match f {
            Formula::Atom(p, args) => {
                let args: Vec<String> = args.iter().map(|a| self.term_key(a, env, bound)).collect();
                format!("{p}({})", args.join(","))
            }
            Formula::Identity(kind, l, r) => {
                let op = if *kind == IdentityKind::Necessary { "=" } else { "=c" };
                format!("({} {op} {})", self.term_key(l, env, bound), self.term_key(r, env, bound))
            }
            Formula::Neg(a) => format!("~{}", self.key(a, env, bound)),
            Formula::Box(a) => format!("[]{}", self.key(a, env, bound)),
            Formula::Imp(a, b) => format!("({} -> {})", self.key(a, env, bound), self.key(b, env, bound)),
            Formula::Forall(x, body) if !free_in(body, x) => self.key(body, env, bound),
            Formula::Forall(x, body) => {
                bound.push(x.clone());
                let inner = self.key(body, env, bound);
                bound.pop();
                format!("A.{inner}")
            }
        }
    }

    fn atom_value(&self, p: &str, tuple: &[usize]) -> TruthValue {
        match &self.structure.predicates[p] {
            Extension::Pair { a, c } => match (a.contains(tuple), c.contains(tuple)) {
                (true, false) => TPos,
                (true, true) => CPos,
                (false, true) => CNeg,
                (false, false) => FNeg,
            },
            Extension::Triple { .. } => panic!("the oracle covers four-valued structures only"),
        }
    }

    /// Adds the instance of `f` under `env` and its dependencies; returns
    /// its node index. `env` assigns every free variable of `f`.
    fn add(&mut self, f: &Formula, env: &BTreeMap<String, usize>) -> usize {
        let key = self.key(f, env, &mut Vec::new());
        if let Some(&i) = self.keys.get(&key) {
            return i;
        }
        let node = match f {
            Formula::Atom(p, args) => {
                let tuple: Vec<usize> = args.iter().map(|a| self.denote(a, env, &[]).unwrap()).collect();
                Node::Fixed(self.atom_value(p, &tuple))
            }
            Formula::Identity(kind, l, r) => {
                let equal = self.denote(l, env, &[]) == self.denote(r, env, &[]);
                Node::Fixed(match (kind, equal) {
                    (IdentityKind::Necessary, true) => TPos,
                    (IdentityKind::Necessary, false) => FNeg,
                    (IdentityKind::Contingent, true) => CPos,
                    (IdentityKind::Contingent, false) => CNeg,
                })
            }
            Formula::Neg(a) => Node::Neg(self.add(a, env)),
            Formula::Box(a) => Node::Box(self.add(a, env)),
            Formula::Imp(a, b) => {
                let (a, b) = (self.add(a, env), self.add(b, env));
                Node::Imp(a, b)
            }
            Formula::Forall(x, body) if !free_in(body, x) => return self.add(body, env),
            Formula::Forall(x, body) => {
                let mut children = Vec::new();
                for e in 0..self.structure.universe {
                    let mut inner = env.clone();
                    inner.insert(x.clone(), e);
                    children.push(self.add(body, &inner));
                }
                Node::Forall(children)
            }
        };
        // children were added first, so indices stay topologically sorted
        let i = self.nodes.len();
        self.nodes.push(node);
        self.keys.insert(key, i);
        i
    }
}

fn options(node: &Node, values: &[TruthValue], deterministic: bool) -> ValueSet {
    match node {
        Node::Fixed(v) => ValueSet::single(*v),
        Node::Neg(a) => published::TM_NEG.get(values[*a]),
        Node::Box(a) => published::TM_BOX.get(values[*a]),
        Node::Imp(a, b) => published::TM_IMP.get(values[*a], values[*b]),
        Node::Forall(children) => {
            let instances = ValueSet::of(&children.iter().map(|&c| values[c]).collect::<Vec<_>>());
            published::forall4(instances, deterministic)
        }
    }
}

fn enumerate(
    nodes: &[Node],
    values: &mut Vec<TruthValue>,
    deterministic: bool,
    root: usize,
    out: &mut BTreeSet<TruthValue>,
    valuations: &mut u64,
) {
    if values.len() == nodes.len() {
        *valuations += 1;
        out.insert(values[root]);
        return;
    }
    for v in options(&nodes[values.len()], values, deterministic).iter() {
        values.push(v);
        enumerate(nodes, values, deterministic, root, out, valuations);
        values.pop();
    }
}

pub struct OracleResult {
    pub values: ValueSet,
    /// Distinct ground instances in the formula's closure.
    pub instances: usize,
    /// Legal valuations of those instances.
    pub valuations: u64,
}

/// The values `f` takes at `env` over all legal valuations of a
/// four-valued structure, with the deterministic or nondeterministic
/// quantifier tables.
pub fn possible_values(
    structure: &Structure,
    env: &BTreeMap<String, usize>,
    f: &Formula,
    deterministic: bool,
) -> OracleResult {
    let mut graph = Graph { structure, keys: BTreeMap::new(), nodes: Vec::new() };
    let root = graph.add(f, env);
    let mut out = BTreeSet::new();
    let mut valuations = 0;
    enumerate(&graph.nodes, &mut Vec::new(), deterministic, root, &mut out, &mut valuations);
    OracleResult {
        values: ValueSet::of(&out.into_iter().collect::<Vec<_>>()),
        instances: graph.nodes.len(),
        valuations,
    }
}
