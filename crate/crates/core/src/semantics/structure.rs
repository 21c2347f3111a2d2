use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::SemanticsError;
use crate::nmatrix::{Carrier, SystemSpec, TruthValue, TruthValue::*};
use crate::syntax::{Formula, IdentityKind, Signature, Term};

pub type Element = usize;
pub type Tuple = Vec<Element>;

/// Interpretation of one predicate symbol.
///
/// Four-valued systems use the actual/contingent pair; six- and eight-valued
/// systems use the actual/necessary/possible triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Extension {
    Triple { a: BTreeSet<Tuple>, n: BTreeSet<Tuple>, p: BTreeSet<Tuple> },
    Pair { a: BTreeSet<Tuple>, c: BTreeSet<Tuple> },
}

impl Extension {
    pub fn empty(carrier: Carrier) -> Extension {
        match carrier {
            Carrier::V4 => Extension::Pair { a: BTreeSet::new(), c: BTreeSet::new() },
            Carrier::V6 | Carrier::V8 => {
                Extension::Triple { a: BTreeSet::new(), n: BTreeSet::new(), p: BTreeSet::new() }
            }
        }
    }

    /// Places `tuple` in the region that decodes to `value`.
    pub fn set(&mut self, tuple: Tuple, value: TruthValue) {
        match self {
            Extension::Pair { a, c } => {
                let (in_a, in_c) = match value {
                    TPos => (true, false),
                    CPos => (true, true),
                    CNeg => (false, true),
                    _ => (false, false),
                };
                toggle(a, &tuple, in_a);
                toggle(c, &tuple, in_c);
            }
            Extension::Triple { a, n, p } => {
                let (in_a, in_n, in_p) = match value {
                    TPos => (true, true, true),
                    CPos => (true, false, true),
                    FPos => (true, false, false),
                    IPos => (true, true, false),
                    TNeg => (false, true, true),
                    CNeg => (false, false, true),
                    FNeg => (false, false, false),
                    INeg => (false, true, false),
                };
                toggle(a, &tuple, in_a);
                toggle(n, &tuple, in_n);
                toggle(p, &tuple, in_p);
            }
        }
    }

    pub fn value(&self, tuple: &[Element]) -> TruthValue {
        match self {
            Extension::Pair { a, c } => match (a.contains(tuple), c.contains(tuple)) {
                (true, false) => TPos,
                (true, true) => CPos,
                (false, true) => CNeg,
                (false, false) => FNeg,
            },
            Extension::Triple { a, n, p } => match (a.contains(tuple), n.contains(tuple), p.contains(tuple)) {
                (true, true, true) => TPos,
                (true, false, true) => CPos,
                (true, false, false) => FPos,
                (true, true, false) => IPos,
                (false, true, true) => TNeg,
                (false, false, true) => CNeg,
                (false, false, false) => FNeg,
                (false, true, false) => INeg,
            },
        }
    }

    fn sets(&self) -> Vec<&BTreeSet<Tuple>> {
        match self {
            Extension::Pair { a, c } => vec![a, c],
            Extension::Triple { a, n, p } => vec![a, n, p],
        }
    }

    fn shape(&self) -> &'static str {
        match self {
            Extension::Pair { .. } => "pair",
            Extension::Triple { .. } => "triple",
        }
    }
}

fn toggle(set: &mut BTreeSet<Tuple>, tuple: &Tuple, member: bool) {
    if member {
        set.insert(tuple.clone());
    } else {
        set.remove(tuple);
    }
}

/// A finite first-order structure. Elements are `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub universe: usize,
    #[serde(default)]
    pub predicates: BTreeMap<String, Extension>,
    /// Row-major tables: the entry for `(e1, ..., en)` sits at
    /// `e1 * U^(n-1) + ... + en`.
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<Element>>,
    #[serde(default)]
    pub constants: BTreeMap<String, Element>,
}

impl Structure {
    pub fn new(universe: usize) -> Structure {
        Structure { universe, predicates: BTreeMap::new(), functions: BTreeMap::new(), constants: BTreeMap::new() }
    }

    pub fn with_pair(mut self, pred: &str, a: &[&[Element]], c: &[&[Element]]) -> Structure {
        let collect = |xs: &[&[Element]]| xs.iter().map(|t| t.to_vec()).collect();
        self.predicates.insert(pred.to_string(), Extension::Pair { a: collect(a), c: collect(c) });
        self
    }

    pub fn with_triple(mut self, pred: &str, a: &[&[Element]], n: &[&[Element]], p: &[&[Element]]) -> Structure {
        let collect = |xs: &[&[Element]]| xs.iter().map(|t| t.to_vec()).collect();
        self.predicates.insert(pred.to_string(), Extension::Triple { a: collect(a), n: collect(n), p: collect(p) });
        self
    }

    pub fn with_function(mut self, name: &str, table: Vec<Element>) -> Structure {
        self.functions.insert(name.to_string(), table);
        self
    }

    pub fn with_constant(mut self, name: &str, e: Element) -> Structure {
        self.constants.insert(name.to_string(), e);
        self
    }

    pub fn from_json(text: &str) -> Result<Structure, SemanticsError> {
        serde_json::from_str(text).map_err(|e| SemanticsError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structures always serialize")
    }

    /// Checks that every symbol of `sig` is interpreted with the right arity
    /// and that predicate extensions have the shape `sys` expects.
    pub fn validate(&self, sig: &Signature, sys: &SystemSpec) -> Result<(), SemanticsError> {
        if self.universe == 0 {
            return Err(SemanticsError::EmptyUniverse);
        }
        let want = match sys.carrier() {
            Carrier::V4 => "pair",
            Carrier::V6 | Carrier::V8 => "triple",
        };
        for (name, arity) in sig.predicates() {
            let ext = self
                .predicates
                .get(name)
                .ok_or_else(|| SemanticsError::Uninterpreted { kind: "predicate", name: name.to_string() })?;
            if ext.shape() != want {
                return Err(SemanticsError::ShapeMismatch {
                    predicate: name.to_string(),
                    expected: want,
                    found: ext.shape(),
                    system: sys.name(),
                });
            }
            for set in ext.sets() {
                for t in set {
                    if t.len() != arity {
                        return Err(SemanticsError::TupleArity {
                            predicate: name.to_string(),
                            tuple: t.clone(),
                            arity,
                        });
                    }
                    self.check_elements(name, t)?;
                }
            }
            if let (Carrier::V6, Extension::Triple { n, p, .. }) = (sys.carrier(), ext) {
                if !n.is_subset(p) {
                    return Err(SemanticsError::NecessaryNotPossible { predicate: name.to_string() });
                }
            }
        }
        for (name, arity) in sig.functions() {
            let table = self
                .functions
                .get(name)
                .ok_or_else(|| SemanticsError::Uninterpreted { kind: "function", name: name.to_string() })?;
            let expected = self.universe.checked_pow(arity as u32).unwrap_or(usize::MAX);
            if table.len() != expected {
                return Err(SemanticsError::FunctionTable { name: name.to_string(), expected, found: table.len() });
            }
            self.check_elements(name, table)?;
        }
        for name in sig.constants() {
            let e = self
                .constants
                .get(name)
                .ok_or_else(|| SemanticsError::Uninterpreted { kind: "constant", name: name.to_string() })?;
            self.check_elements(name, &[*e])?;
        }
        Ok(())
    }

    fn check_elements(&self, symbol: &str, elements: &[Element]) -> Result<(), SemanticsError> {
        match elements.iter().find(|&&e| e >= self.universe) {
            Some(&e) => Err(SemanticsError::ElementOutOfRange {
                symbol: symbol.to_string(),
                element: e,
                universe: self.universe,
            }),
            None => Ok(()),
        }
    }

    pub fn constant(&self, name: &str) -> Result<Element, SemanticsError> {
        self.constants
            .get(name)
            .copied()
            .ok_or_else(|| SemanticsError::Uninterpreted { kind: "constant", name: name.to_string() })
    }

    pub fn apply(&self, name: &str, args: &[Element]) -> Result<Element, SemanticsError> {
        let table = self
            .functions
            .get(name)
            .ok_or_else(|| SemanticsError::Uninterpreted { kind: "function", name: name.to_string() })?;
        let index = args.iter().fold(0usize, |acc, &e| acc * self.universe + e);
        table.get(index).copied().ok_or_else(|| SemanticsError::FunctionTable {
            name: name.to_string(),
            expected: index + 1,
            found: table.len(),
        })
    }

    pub fn predicate_value(&self, name: &str, tuple: &[Element]) -> Result<TruthValue, SemanticsError> {
        let ext = self
            .predicates
            .get(name)
            .ok_or_else(|| SemanticsError::Uninterpreted { kind: "predicate", name: name.to_string() })?;
        Ok(ext.value(tuple))
    }

    pub fn denote(&self, t: &Term, s: &Assignment) -> Result<Element, SemanticsError> {
        match t {
            Term::Var(x) => s.get(x).ok_or_else(|| SemanticsError::Unassigned(x.clone())),
            Term::Const(c) => self.constant(c),
            Term::App(f, args) => {
                let args = args.iter().map(|a| self.denote(a, s)).collect::<Result<Vec<_>, _>>()?;
                self.apply(f, &args)
            }
        }
    }

    /// The deterministic value of an atomic formula.
    pub fn eval_atom(&self, s: &Assignment, atom: &Formula) -> Result<TruthValue, SemanticsError> {
        match atom {
            Formula::Atom(p, args) => {
                let tuple = args.iter().map(|a| self.denote(a, s)).collect::<Result<Vec<_>, _>>()?;
                self.predicate_value(p, &tuple)
            }
            Formula::Identity(kind, l, r) => Ok(identity_value(*kind, self.denote(l, s)? == self.denote(r, s)?)),
            _ => Err(SemanticsError::NotAtomic(atom.to_string())),
        }
    }
}

pub(crate) fn identity_value(kind: IdentityKind, equal: bool) -> TruthValue {
    match (kind, equal) {
        (IdentityKind::Necessary, true) => TPos,
        (IdentityKind::Necessary, false) => FNeg,
        (IdentityKind::Contingent, true) => CPos,
        (IdentityKind::Contingent, false) => CNeg,
    }
}

/// Variable assignment, finitized to the variables a query mentions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(BTreeMap<String, Element>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn get(&self, x: &str) -> Option<Element> {
        self.0.get(x).copied()
    }

    pub fn set(&mut self, x: &str, e: Element) {
        self.0.insert(x.to_string(), e);
    }

    /// `s` with `x` sent to `e`, leaving every other variable alone.
    pub fn with(&self, x: &str, e: Element) -> Assignment {
        let mut s = self.clone();
        s.set(x, e);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Element)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Whether the two agree everywhere except possibly on `x`.
    pub fn is_x_variant(&self, other: &Assignment, x: &str) -> bool {
        let keys: BTreeSet<&String> = self.0.keys().chain(other.0.keys()).collect();
        keys.into_iter().all(|k| k == x || self.0.get(k) == other.0.get(k))
    }

    /// Every assignment of `vars` over a universe of size `universe`, in
    /// lexicographic order.
    pub fn all(vars: &[String], universe: usize) -> Vec<Assignment> {
        let mut out = vec![Assignment::new()];
        for x in vars {
            out = out.into_iter().flat_map(|s| (0..universe).map(move |e| s.with(x, e))).collect();
        }
        out
    }
}

impl FromIterator<(String, Element)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (String, Element)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl std::fmt::Display for Assignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k} := #{v}")?;
        }
        write!(f, "}}")
    }
}
