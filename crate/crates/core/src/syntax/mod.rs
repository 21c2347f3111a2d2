//! First-order modal syntax.
//!
//! Only `¬`, `□`, `→`, `∀` and the two identity predicates are primitive.
//! `◇`, `∨`, `∧`, `∃`, strict implication and `≊` are constructors that
//! build their fixed expansions; the printer puts the sugar back.

mod parser;
mod print;
mod subst;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parser::{parse_formula, parse_inferred, parse_term, ParseError, ParseErrorKind};
pub(crate) use subst::occurs_free;
pub use subst::{
    alpha_normalize, free_vars, is_free_for, is_partial_replacement, is_variant, substitute, term_vars, SubstError,
};

pub type VariableSet = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityKind {
    /// `≈`, written `=`.
    Necessary,
    /// `≈c`, written `=c`.
    Contingent,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Identity(IdentityKind, Term, Term),
    Neg(Box<Formula>),
    Box(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(pred.to_string(), args)
    }

    /// Nullary atom, i.e. a propositional letter.
    pub fn prop(name: &str) -> Formula {
        Formula::Atom(name.to_string(), Vec::new())
    }

    pub fn identity(kind: IdentityKind, lhs: Term, rhs: Term) -> Formula {
        Formula::Identity(kind, lhs, rhs)
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Identity(IdentityKind::Necessary, lhs, rhs)
    }

    pub fn eq_c(lhs: Term, rhs: Term) -> Formula {
        Formula::Identity(IdentityKind::Contingent, lhs, rhs)
    }

    /// `τ₁ ≊ τ₂ := □(τ₁ ≈ τ₂)`
    pub fn strict_eq(lhs: Term, rhs: Term) -> Formula {
        Formula::nec(Formula::eq(lhs, rhs))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    pub fn nec(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    /// `◇α := ¬□¬α`
    pub fn poss(f: Formula) -> Formula {
        Formula::not(Formula::nec(Formula::not(f)))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// `α ∨ β := ¬α → β`
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::imp(Formula::not(a), b)
    }

    /// `α ∧ β := ¬(α → ¬β)`
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::imp(a, Formula::not(b)))
    }

    /// `(α → β) ∧ (β → α)`
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// `α ⥽ β := □(α → β)`
    pub fn strict_imp(a: Formula, b: Formula) -> Formula {
        Formula::nec(Formula::imp(a, b))
    }

    pub fn forall(var: &str, f: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(f))
    }

    /// `∃xα := ¬∀x¬α`
    pub fn exists(var: &str, f: Formula) -> Formula {
        Formula::not(Formula::forall(var, Formula::not(f)))
    }

    /// `□ⁿα`
    pub fn nec_n(n: usize, f: Formula) -> Formula {
        (0..n).fold(f, |acc, _| Formula::nec(acc))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(..) | Formula::Identity(..) => true,
            Formula::Neg(a) | Formula::Box(a) => a.is_quantifier_free(),
            Formula::Imp(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Forall(..) => false,
        }
    }

    /// No quantifiers, no identities and only nullary atoms.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_, args) => args.is_empty(),
            Formula::Identity(..) | Formula::Forall(..) => false,
            Formula::Neg(a) | Formula::Box(a) => a.is_propositional(),
            Formula::Imp(a, b) => a.is_propositional() && b.is_propositional(),
        }
    }

    /// Number of connective and quantifier nodes.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Identity(..) => 0,
            Formula::Neg(a) | Formula::Box(a) | Formula::Forall(_, a) => 1 + a.connectives(),
            Formula::Imp(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    pub fn binders(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Identity(..) => 0,
            Formula::Neg(a) | Formula::Box(a) => a.binders(),
            Formula::Forall(_, a) => 1 + a.binders(),
            Formula::Imp(a, b) => a.binders() + b.binders(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) | Term::Const(x) => f.write_str(x),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::render(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("symbol `{0}` is declared more than once")]
    Duplicate(String),
    #[error("function `{0}` must have arity at least 1")]
    NullaryFunction(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
    #[error("symbol `{name}` used with arity {found}, declared {expected}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
}

const RESERVED: [&str; 2] = ["forall", "exists"];

/// Predicate, function and constant symbols. The identities `=` and `=c`
/// are built in and never appear here.
///
/// Nullary predicates are allowed and act as propositional letters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeMap<String, usize>,
    functions: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(&self, name: &str) -> Result<(), SignatureError> {
        if RESERVED.contains(&name) {
            return Err(SignatureError::Reserved(name.to_string()));
        }
        if self.predicates.contains_key(name) || self.functions.contains_key(name) || self.constants.contains(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        Ok(())
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        self.fresh(name)?;
        self.predicates.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if arity == 0 {
            return Err(SignatureError::NullaryFunction(name.to_string()));
        }
        self.fresh(name)?;
        self.functions.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str) -> Result<(), SignatureError> {
        self.fresh(name)?;
        self.constants.insert(name.to_string());
        Ok(())
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Self {
        self.add_predicate(name, arity).expect("valid predicate");
        self
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Self {
        self.add_function(name, arity).expect("valid function");
        self
    }

    pub fn with_constant(mut self, name: &str) -> Self {
        self.add_constant(name).expect("valid constant");
        self
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.constants.iter().map(String::as_str)
    }

    /// Merges the symbols of `other`; arities must agree.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for (p, n) in other.predicates() {
            match self.predicate_arity(p) {
                Some(m) if m != n => return Err(SignatureError::Arity { name: p.to_string(), expected: m, found: n }),
                Some(_) => {}
                None => self.add_predicate(p, n)?,
            }
        }
        for (g, n) in other.functions() {
            match self.function_arity(g) {
                Some(m) if m != n => return Err(SignatureError::Arity { name: g.to_string(), expected: m, found: n }),
                Some(_) => {}
                None => self.add_function(g, n)?,
            }
        }
        for c in other.constants() {
            if !self.is_constant(c) {
                self.add_constant(c)?;
            }
        }
        Ok(())
    }

    pub fn check_term(&self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Const(c) if self.is_constant(c) => Ok(()),
            Term::Const(c) => Err(SignatureError::UnknownFunction(c.clone())),
            Term::App(g, args) => {
                let n = self.function_arity(g).ok_or_else(|| SignatureError::UnknownFunction(g.clone()))?;
                if n != args.len() {
                    return Err(SignatureError::Arity { name: g.clone(), expected: n, found: args.len() });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    /// Checks that every symbol in `f` is declared with the right arity.
    pub fn check(&self, f: &Formula) -> Result<(), SignatureError> {
        match f {
            Formula::Atom(p, args) => {
                let n = self.predicate_arity(p).ok_or_else(|| SignatureError::UnknownPredicate(p.clone()))?;
                if n != args.len() {
                    return Err(SignatureError::Arity { name: p.clone(), expected: n, found: args.len() });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Formula::Identity(_, a, b) => {
                self.check_term(a)?;
                self.check_term(b)
            }
            Formula::Neg(a) | Formula::Box(a) | Formula::Forall(_, a) => self.check(a),
            Formula::Imp(a, b) => {
                self.check(a)?;
                self.check(b)
            }
        }
    }

    /// Smallest signature covering `f`.
    pub fn of_formula(f: &Formula) -> Result<Signature, SignatureError> {
        fn term(sig: &mut Signature, t: &Term) -> Result<(), SignatureError> {
            match t {
                Term::Var(_) => Ok(()),
                Term::Const(c) => {
                    if !sig.is_constant(c) {
                        sig.add_constant(c)?;
                    }
                    Ok(())
                }
                Term::App(g, args) => {
                    match sig.function_arity(g) {
                        Some(n) if n != args.len() => {
                            return Err(SignatureError::Arity { name: g.clone(), expected: n, found: args.len() })
                        }
                        Some(_) => {}
                        None => sig.add_function(g, args.len())?,
                    }
                    args.iter().try_for_each(|a| term(sig, a))
                }
            }
        }
        fn go(sig: &mut Signature, f: &Formula) -> Result<(), SignatureError> {
            match f {
                Formula::Atom(p, args) => {
                    match sig.predicate_arity(p) {
                        Some(n) if n != args.len() => {
                            return Err(SignatureError::Arity { name: p.clone(), expected: n, found: args.len() })
                        }
                        Some(_) => {}
                        None => sig.add_predicate(p, args.len())?,
                    }
                    args.iter().try_for_each(|a| term(sig, a))
                }
                Formula::Identity(_, a, b) => {
                    term(sig, a)?;
                    term(sig, b)
                }
                Formula::Neg(a) | Formula::Box(a) | Formula::Forall(_, a) => go(sig, a),
                Formula::Imp(a, b) => {
                    go(sig, a)?;
                    go(sig, b)
                }
            }
        }
        let mut sig = Signature::new();
        go(&mut sig, f)?;
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_unique_across_categories() {
        let mut sig = Signature::new().with_predicate("P", 1);
        assert_eq!(sig.add_constant("P"), Err(SignatureError::Duplicate("P".into())));
        assert_eq!(sig.add_function("f", 0), Err(SignatureError::NullaryFunction("f".into())));
        assert_eq!(sig.add_predicate("forall", 1), Err(SignatureError::Reserved("forall".into())));
    }

    #[test]
    fn derived_connectives_expand() {
        let a = Formula::prop("A");
        let b = Formula::prop("B");
        assert_eq!(Formula::poss(a.clone()), Formula::not(Formula::nec(Formula::not(a.clone()))));
        assert_eq!(Formula::or(a.clone(), b.clone()), Formula::imp(Formula::not(a.clone()), b.clone()));
        assert_eq!(Formula::and(a.clone(), b.clone()), Formula::not(Formula::imp(a.clone(), Formula::not(b.clone()))));
        assert_eq!(Formula::exists("x", a.clone()), Formula::not(Formula::forall("x", Formula::not(a.clone()))));
        assert_eq!(Formula::strict_imp(a.clone(), b.clone()), Formula::nec(Formula::imp(a, b)));
    }

    #[test]
    fn signature_check_catches_arity() {
        let sig = Signature::new().with_predicate("P", 1).with_function("f", 1);
        let good = Formula::atom("P", vec![Term::app("f", vec![Term::var("x")])]);
        assert!(sig.check(&good).is_ok());
        let bad = Formula::atom("P", vec![Term::var("x"), Term::var("y")]);
        assert!(matches!(sig.check(&bad), Err(SignatureError::Arity { .. })));
        assert!(matches!(sig.check(&Formula::prop("Q")), Err(SignatureError::UnknownPredicate(_))));
    }
}
