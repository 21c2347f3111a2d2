//! Random formulas over a signature, for property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{Formula, IdentityKind, Signature, Term};

#[derive(Debug, Clone)]
pub struct FormulaShape {
    /// Maximum connective nesting.
    pub depth: usize,
    /// Maximum number of quantifiers.
    pub binders: usize,
    /// Variables to draw from, both free and bound.
    pub vars: Vec<String>,
    /// Whether atoms may be identities.
    pub identities: bool,
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape { depth: 3, binders: 1, vars: vec!["x".into(), "y".into()], identities: true }
    }
}

pub fn random_term<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, vars: &[String], depth: usize) -> Term {
    let consts: Vec<&str> = sig.constants().collect();
    let funcs: Vec<(&str, usize)> = sig.functions().collect();
    if depth > 0 && !funcs.is_empty() && rng.gen_bool(0.25) {
        let (g, n) = *funcs.choose(rng).unwrap();
        return Term::app(g, (0..n).map(|_| random_term(rng, sig, vars, depth - 1)).collect());
    }
    if !consts.is_empty() && (vars.is_empty() || rng.gen_bool(0.3)) {
        return Term::constant(consts.choose(rng).unwrap());
    }
    Term::var(vars.choose(rng).expect("a variable or constant to draw from"))
}

pub fn random_atom<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, shape: &FormulaShape) -> Formula {
    let preds: Vec<(&str, usize)> = sig.predicates().collect();
    if preds.is_empty() || (shape.identities && rng.gen_bool(0.2)) {
        let kind = if rng.gen_bool(0.5) { IdentityKind::Necessary } else { IdentityKind::Contingent };
        let a = random_term(rng, sig, &shape.vars, 1);
        return Formula::identity(kind, a, random_term(rng, sig, &shape.vars, 1));
    }
    let (p, n) = *preds.choose(rng).unwrap();
    Formula::atom(p, (0..n).map(|_| random_term(rng, sig, &shape.vars, 1)).collect())
}

pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, shape: &FormulaShape) -> Formula {
    let mut binders = shape.binders;
    go(rng, sig, shape, shape.depth, &mut binders)
}

fn go<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    shape: &FormulaShape,
    depth: usize,
    binders: &mut usize,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return random_atom(rng, sig, shape);
    }
    let choice = rng.gen_range(0..if *binders > 0 { 8 } else { 6 });
    match choice {
        0 => Formula::not(go(rng, sig, shape, depth - 1, binders)),
        1 => Formula::nec(go(rng, sig, shape, depth - 1, binders)),
        2 => Formula::poss(go(rng, sig, shape, depth - 1, binders)),
        3 => {
            let a = go(rng, sig, shape, depth - 1, binders);
            Formula::imp(a, go(rng, sig, shape, depth - 1, binders))
        }
        4 => {
            let a = go(rng, sig, shape, depth - 1, binders);
            Formula::and(a, go(rng, sig, shape, depth - 1, binders))
        }
        5 => {
            let a = go(rng, sig, shape, depth - 1, binders);
            Formula::or(a, go(rng, sig, shape, depth - 1, binders))
        }
        _ => {
            *binders -= 1;
            let x = shape.vars.choose(rng).expect("quantified formulas need a variable").clone();
            let body = go(rng, sig, shape, depth - 1, binders);
            if choice == 6 {
                Formula::forall(&x, body)
            } else {
                Formula::exists(&x, body)
            }
        }
    }
}
