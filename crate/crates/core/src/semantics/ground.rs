//! Ground fingerprints: formulas whose free variables and closed subterms
//! have been replaced by universe elements.
//!
//! Bound variables are stored as de Bruijn indices, so variants (renamed
//! binders) are structurally equal. Void quantifiers are dropped while
//! grounding. Two formula/assignment pairs that denote the same thing at
//! the level of elements therefore share one key.

use std::fmt;

use super::structure::{Assignment, Element, Structure};
use super::SemanticsError;
use crate::syntax::{Formula, IdentityKind, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum GTerm {
    Elem(Element),
    /// de Bruijn index: 0 is the innermost enclosing binder.
    Bound(usize),
    App(String, Vec<GTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Ground {
    Atom(String, Vec<GTerm>),
    Ident(IdentityKind, GTerm, GTerm),
    Neg(Box<Ground>),
    Box(Box<Ground>),
    Imp(Box<Ground>, Box<Ground>),
    Forall(Box<Ground>),
}

/// Memo key of the valuation engine. Printed as a formula with elements
/// written `#k` and bound variables named after their binder depth.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundFingerprint(pub(crate) Ground);

impl GroundFingerprint {
    /// Fingerprint of `f` under `s`.
    pub fn of(structure: &Structure, s: &Assignment, f: &Formula) -> Result<GroundFingerprint, SemanticsError> {
        ground(structure, s, f).map(GroundFingerprint)
    }

    pub fn to_formula(&self) -> Formula {
        to_formula(&self.0, &mut Vec::new())
    }
}

impl fmt::Display for GroundFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

pub(crate) fn ground(structure: &Structure, s: &Assignment, f: &Formula) -> Result<Ground, SemanticsError> {
    Grounder { structure, s }.formula(f, &mut Vec::new())
}

struct Grounder<'a> {
    structure: &'a Structure,
    s: &'a Assignment,
}

impl Grounder<'_> {
    fn term(&self, t: &Term, bound: &[String]) -> Result<GTerm, SemanticsError> {
        Ok(match t {
            Term::Var(x) => match bound.iter().rev().position(|b| b == x) {
                Some(i) => GTerm::Bound(i),
                None => GTerm::Elem(self.s.get(x).ok_or_else(|| SemanticsError::Unassigned(x.clone()))?),
            },
            Term::Const(c) => GTerm::Elem(self.structure.constant(c)?),
            Term::App(g, args) => {
                let args = args.iter().map(|a| self.term(a, bound)).collect::<Result<Vec<_>, _>>()?;
                reduce_app(self.structure, g, args)?
            }
        })
    }

    fn formula(&self, f: &Formula, bound: &mut Vec<String>) -> Result<Ground, SemanticsError> {
        Ok(match f {
            Formula::Atom(p, args) => {
                Ground::Atom(p.clone(), args.iter().map(|a| self.term(a, bound)).collect::<Result<_, _>>()?)
            }
            Formula::Identity(k, a, b) => Ground::Ident(*k, self.term(a, bound)?, self.term(b, bound)?),
            Formula::Neg(a) => Ground::Neg(Box::new(self.formula(a, bound)?)),
            Formula::Box(a) => Ground::Box(Box::new(self.formula(a, bound)?)),
            Formula::Imp(a, b) => Ground::Imp(Box::new(self.formula(a, bound)?), Box::new(self.formula(b, bound)?)),
            Formula::Forall(x, a) if !crate::syntax::occurs_free(a, x) => self.formula(a, bound)?,
            Formula::Forall(x, a) => {
                bound.push(x.clone());
                let body = self.formula(a, bound);
                bound.pop();
                Ground::Forall(Box::new(body?))
            }
        })
    }
}

fn reduce_app(structure: &Structure, g: &str, args: Vec<GTerm>) -> Result<GTerm, SemanticsError> {
    let elems: Option<Vec<Element>> = args
        .iter()
        .map(|a| match a {
            GTerm::Elem(e) => Some(*e),
            _ => None,
        })
        .collect();
    Ok(match elems {
        Some(elems) => GTerm::Elem(structure.apply(g, &elems)?),
        None => GTerm::App(g.to_string(), args),
    })
}

/// Body of a closed `Forall` instantiated at `e`.
pub(crate) fn instantiate(structure: &Structure, body: &Ground, e: Element) -> Result<Ground, SemanticsError> {
    fn term(structure: &Structure, t: &GTerm, depth: usize, e: Element) -> Result<GTerm, SemanticsError> {
        Ok(match t {
            GTerm::Bound(i) if *i == depth => GTerm::Elem(e),
            GTerm::Bound(_) | GTerm::Elem(_) => t.clone(),
            GTerm::App(g, args) => {
                let args = args.iter().map(|a| term(structure, a, depth, e)).collect::<Result<Vec<_>, _>>()?;
                reduce_app(structure, g, args)?
            }
        })
    }
    fn go(structure: &Structure, f: &Ground, depth: usize, e: Element) -> Result<Ground, SemanticsError> {
        Ok(match f {
            Ground::Atom(p, args) => {
                Ground::Atom(p.clone(), args.iter().map(|a| term(structure, a, depth, e)).collect::<Result<_, _>>()?)
            }
            Ground::Ident(k, a, b) => Ground::Ident(*k, term(structure, a, depth, e)?, term(structure, b, depth, e)?),
            Ground::Neg(a) => Ground::Neg(Box::new(go(structure, a, depth, e)?)),
            Ground::Box(a) => Ground::Box(Box::new(go(structure, a, depth, e)?)),
            Ground::Imp(a, b) => {
                Ground::Imp(Box::new(go(structure, a, depth, e)?), Box::new(go(structure, b, depth, e)?))
            }
            Ground::Forall(a) => Ground::Forall(Box::new(go(structure, a, depth + 1, e)?)),
        })
    }
    go(structure, body, 0, e)
}

fn to_formula(g: &Ground, names: &mut Vec<String>) -> Formula {
    fn term(t: &GTerm, names: &[String]) -> Term {
        match t {
            GTerm::Elem(e) => Term::Const(format!("#{e}")),
            GTerm::Bound(i) => Term::Var(names[names.len() - 1 - i].clone()),
            GTerm::App(g, args) => Term::App(g.clone(), args.iter().map(|a| term(a, names)).collect()),
        }
    }
    match g {
        Ground::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| term(a, names)).collect()),
        Ground::Ident(k, a, b) => Formula::Identity(*k, term(a, names), term(b, names)),
        Ground::Neg(a) => Formula::not(to_formula(a, names)),
        Ground::Box(a) => Formula::nec(to_formula(a, names)),
        Ground::Imp(a, b) => {
            let a = to_formula(a, names);
            Formula::imp(a, to_formula(b, names))
        }
        Ground::Forall(a) => {
            let name = format!("v{}", names.len());
            names.push(name.clone());
            let body = to_formula(a, names);
            names.pop();
            Formula::Forall(name, Box::new(body))
        }
    }
}
