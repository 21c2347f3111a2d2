//! Random instances of axiom schemas, for soundness trials.

use rand::seq::SliceRandom;
use rand::Rng;

use super::schema::Axiom;
use crate::semantics::{random_formula, random_term, FormulaShape};
use crate::syntax::{free_vars, is_free_for, occurs_free, substitute, Formula, IdentityKind, Signature, Term};

const RETRIES: usize = 32;

/// A random instance of `axiom`. Metavariables are filled with formulas of
/// `shape` over `sig`; `shape.vars` needs at least two variables.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, axiom: Axiom, sig: &Signature, shape: &FormulaShape) -> Formula {
    assert!(shape.vars.len() >= 2, "instances need two variables");
    let sub = FormulaShape { depth: shape.depth.saturating_sub(1), ..shape.clone() };
    let mut f = || random_formula(rng, sig, &sub);
    let (a, b, c) = (f(), f(), f());
    let x = shape.vars.choose(rng).unwrap().clone();
    let y = shape.vars.choose(rng).unwrap().clone();
    let var = |v: &str| Term::var(v);
    let any_kind = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            IdentityKind::Necessary
        } else {
            IdentityKind::Contingent
        }
    };
    let nec_eq = || Formula::identity(IdentityKind::Necessary, var(&x), var(&y));
    let cont_eq = || Formula::identity(IdentityKind::Contingent, var(&x), var(&y));
    let (imp, not, nec, poss) = (Formula::imp, Formula::not, Formula::nec, Formula::poss);
    let all = |body: Formula| Formula::forall(&x, body);
    match axiom {
        Axiom::Ax1 => imp(a.clone(), imp(b, a)),
        Axiom::Ax2 => imp(imp(a.clone(), imp(b.clone(), c.clone())), imp(imp(a.clone(), b), imp(a, c))),
        Axiom::Ax3 => imp(imp(not(b.clone()), not(a.clone())), imp(imp(not(b.clone()), a), b)),
        Axiom::Ax4 => {
            let tau = (0..RETRIES)
                .map(|_| random_term(rng, sig, &shape.vars, 1))
                .find(|t| is_free_for(t, &x, &a))
                .unwrap_or_else(|| var(&x));
            let instance = substitute(&a, &x, &tau).expect("free for by construction");
            imp(all(a), instance)
        }
        Axiom::Ax5 => {
            let others: Vec<String> = shape.vars.iter().filter(|v| **v != x).cloned().collect();
            let narrow = FormulaShape { vars: others, ..sub.clone() };
            let a = random_formula(rng, sig, &narrow);
            debug_assert!(!occurs_free(&a, &x));
            imp(all(imp(a.clone(), b.clone())), imp(a, all(b)))
        }
        Axiom::Ax6 => imp(a.clone(), random_variant(rng, &a, &shape.vars)),
        Axiom::Ax7 => Formula::forall(&x, Formula::identity(any_kind(rng), var(&x), var(&x))),
        Axiom::Ax8 => {
            let alpha = (0..RETRIES)
                .map(|_| random_formula(rng, sig, &sub))
                .find(|g| is_free_for(&var(&y), &x, g))
                .unwrap_or_else(|| Formula::prop("Q"));
            let replaced = replace_some(rng, &alpha, &x, &y);
            let kind = any_kind(rng);
            imp(Formula::identity(kind, var(&x), var(&y)), imp(alpha, replaced))
        }
        Axiom::NecEq => imp(nec_eq(), nec(nec_eq())),
        Axiom::PossEq => imp(not(nec_eq()), nec(not(nec_eq()))),
        Axiom::ContEq1 => not(nec(cont_eq())),
        Axiom::ContEq2 => not(nec(not(cont_eq()))),
        Axiom::K => imp(nec(imp(a.clone(), b.clone())), imp(nec(a), nec(b))),
        Axiom::K1 => imp(nec(imp(a.clone(), b.clone())), imp(poss(a), poss(b))),
        Axiom::K2 => imp(poss(imp(a.clone(), b.clone())), imp(nec(a), poss(b))),
        Axiom::M1 => imp(nec(not(a.clone())), nec(imp(a, b))),
        Axiom::M2 => imp(nec(b.clone()), nec(imp(a, b))),
        Axiom::M3 => imp(poss(b.clone()), poss(imp(a, b))),
        Axiom::M4 => imp(poss(not(a.clone())), poss(imp(a, b))),
        Axiom::T => imp(nec(a.clone()), a),
        Axiom::D => imp(nec(a.clone()), poss(a)),
        Axiom::DN1 => imp(nec(a.clone()), nec(not(not(a)))),
        Axiom::DN2 => imp(nec(not(not(a.clone()))), nec(a)),
        Axiom::BF => imp(all(nec(a.clone())), nec(all(a))),
        Axiom::CBF => imp(nec(all(a.clone())), all(nec(a))),
        Axiom::NBF => imp(all(poss(a.clone())), poss(all(a))),
        Axiom::PBF => imp(poss(all(a.clone())), all(poss(a))),
        Axiom::Four => imp(nec(a.clone()), nec(nec(a))),
        Axiom::Five => imp(poss(nec(a.clone())), nec(a)),
    }
}

/// `f` with its bound variables renamed apart and, sometimes, a void
/// quantifier added on top.
pub fn random_variant<R: Rng + ?Sized>(rng: &mut R, f: &Formula, vars: &[String]) -> Formula {
    let mut counter = 0;
    let renamed = rename_bound(f, &mut counter);
    let free = free_vars(&renamed);
    match vars.iter().find(|v| !free.contains(*v)) {
        Some(v) if rng.gen_bool(0.3) => Formula::forall(v, renamed),
        _ => renamed,
    }
}

fn rename_bound(f: &Formula, counter: &mut usize) -> Formula {
    match f {
        Formula::Atom(..) | Formula::Identity(..) => f.clone(),
        Formula::Neg(a) => Formula::not(rename_bound(a, counter)),
        Formula::Box(a) => Formula::nec(rename_bound(a, counter)),
        Formula::Imp(a, b) => {
            let a = rename_bound(a, counter);
            Formula::imp(a, rename_bound(b, counter))
        }
        Formula::Forall(x, a) => {
            let fresh = format!("u{counter}");
            *counter += 1;
            let body = rename_bound(a, counter);
            let body = substitute(&body, x, &Term::var(&fresh)).expect("fresh names cannot be captured");
            Formula::forall(&fresh, body)
        }
    }
}

/// Replaces a random subset of the free occurrences of `x` by `y`.
fn replace_some<R: Rng + ?Sized>(rng: &mut R, f: &Formula, x: &str, y: &str) -> Formula {
    fn term<R: Rng + ?Sized>(rng: &mut R, t: &Term, x: &str, y: &str) -> Term {
        match t {
            Term::Var(v) if v == x && rng.gen_bool(0.5) => Term::var(y),
            Term::Var(_) | Term::Const(_) => t.clone(),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| term(rng, a, x, y)).collect()),
        }
    }
    match f {
        Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| term(rng, a, x, y)).collect()),
        Formula::Identity(k, a, b) => {
            let a = term(rng, a, x, y);
            Formula::Identity(*k, a, term(rng, b, x, y))
        }
        Formula::Neg(a) => Formula::not(replace_some(rng, a, x, y)),
        Formula::Box(a) => Formula::nec(replace_some(rng, a, x, y)),
        Formula::Imp(a, b) => {
            let a = replace_some(rng, a, x, y);
            Formula::imp(a, replace_some(rng, b, x, y))
        }
        Formula::Forall(v, _) if v == x => f.clone(),
        Formula::Forall(v, a) => Formula::forall(v, replace_some(rng, a, x, y)),
    }
}
