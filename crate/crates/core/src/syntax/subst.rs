use super::{Formula, Term, VariableSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("term `{term}` is not free for `{var}` in `{formula}`")]
    NotFreeFor { term: String, var: String, formula: String },
}

pub fn term_vars(t: &Term) -> VariableSet {
    let mut out = VariableSet::new();
    collect_term_vars(t, &mut out);
    out
}

fn collect_term_vars(t: &Term, out: &mut VariableSet) {
    match t {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::Const(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| collect_term_vars(a, out)),
    }
}

fn term_mentions(t: &Term, x: &str) -> bool {
    match t {
        Term::Var(y) => y == x,
        Term::Const(_) => false,
        Term::App(_, args) => args.iter().any(|a| term_mentions(a, x)),
    }
}

pub fn free_vars(f: &Formula) -> VariableSet {
    let mut out = VariableSet::new();
    collect_free(f, &mut Vec::new(), &mut out);
    out
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut VariableSet) {
    let mut add = |t: &Term, bound: &Vec<String>| {
        for v in term_vars(t) {
            if !bound.contains(&v) {
                out.insert(v);
            }
        }
    };
    match f {
        Formula::Atom(_, args) => args.iter().for_each(|a| add(a, bound)),
        Formula::Identity(_, a, b) => {
            add(a, bound);
            add(b, bound);
        }
        Formula::Neg(a) | Formula::Box(a) => collect_free(a, bound, out),
        Formula::Imp(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Formula::Forall(x, a) => {
            bound.push(x.clone());
            collect_free(a, bound, out);
            bound.pop();
        }
    }
}

pub(crate) fn occurs_free(f: &Formula, x: &str) -> bool {
    match f {
        Formula::Atom(_, args) => args.iter().any(|a| term_mentions(a, x)),
        Formula::Identity(_, a, b) => term_mentions(a, x) || term_mentions(b, x),
        Formula::Neg(a) | Formula::Box(a) => occurs_free(a, x),
        Formula::Imp(a, b) => occurs_free(a, x) || occurs_free(b, x),
        Formula::Forall(y, a) => y != x && occurs_free(a, x),
    }
}

/// `t` is free for `x` in `f`: no free occurrence of `x` sits under a
/// quantifier binding a variable of `t`.
pub fn is_free_for(t: &Term, x: &str, f: &Formula) -> bool {
    let vars = term_vars(t);
    fn go(f: &Formula, x: &str, vars: &VariableSet, under_capture: bool) -> bool {
        match f {
            Formula::Atom(..) | Formula::Identity(..) => !(under_capture && occurs_free(f, x)),
            Formula::Neg(a) | Formula::Box(a) => go(a, x, vars, under_capture),
            Formula::Imp(a, b) => go(a, x, vars, under_capture) && go(b, x, vars, under_capture),
            Formula::Forall(y, a) => y == x || go(a, x, vars, under_capture || vars.contains(y)),
        }
    }
    go(f, x, &vars, false)
}

fn subst_term(t: &Term, x: &str, by: &Term) -> Term {
    match t {
        Term::Var(y) if y == x => by.clone(),
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| subst_term(a, x, by)).collect()),
    }
}

fn subst_unchecked(f: &Formula, x: &str, t: &Term) -> Formula {
    match f {
        Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| subst_term(a, x, t)).collect()),
        Formula::Identity(k, a, b) => Formula::Identity(*k, subst_term(a, x, t), subst_term(b, x, t)),
        Formula::Neg(a) => Formula::not(subst_unchecked(a, x, t)),
        Formula::Box(a) => Formula::nec(subst_unchecked(a, x, t)),
        Formula::Imp(a, b) => Formula::imp(subst_unchecked(a, x, t), subst_unchecked(b, x, t)),
        Formula::Forall(y, _) if y == x => f.clone(),
        Formula::Forall(y, a) => Formula::forall(y, subst_unchecked(a, x, t)),
    }
}

/// `f[x/t]`. Capture is reported, never repaired by renaming.
pub fn substitute(f: &Formula, x: &str, t: &Term) -> Result<Formula, SubstError> {
    if !is_free_for(t, x, f) {
        return Err(SubstError::NotFreeFor { term: t.to_string(), var: x.to_string(), formula: f.to_string() });
    }
    Ok(subst_unchecked(f, x, t))
}

/// Whether `g` is `f[x≀y]`: some (possibly none, possibly all) free
/// occurrences of `x` in `f` replaced by `y`, with `y` free for `x`.
pub fn is_partial_replacement(f: &Formula, g: &Formula, x: &str, y: &str) -> bool {
    if !is_free_for(&Term::Var(y.to_string()), x, f) {
        return false;
    }
    fn terms(s: &Term, t: &Term, x: &str, y: &str, x_free: bool) -> bool {
        match (s, t) {
            (Term::Var(a), Term::Var(b)) if x_free && a == x => b == x || b == y,
            (Term::Var(a), Term::Var(b)) => a == b,
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::App(f1, a1), Term::App(f2, a2)) => {
                f1 == f2 && a1.len() == a2.len() && a1.iter().zip(a2).all(|(s, t)| terms(s, t, x, y, x_free))
            }
            _ => false,
        }
    }
    fn go(f: &Formula, g: &Formula, x: &str, y: &str, x_free: bool) -> bool {
        match (f, g) {
            (Formula::Atom(p, a1), Formula::Atom(q, a2)) => {
                p == q && a1.len() == a2.len() && a1.iter().zip(a2).all(|(s, t)| terms(s, t, x, y, x_free))
            }
            (Formula::Identity(k1, a1, b1), Formula::Identity(k2, a2, b2)) => {
                k1 == k2 && terms(a1, a2, x, y, x_free) && terms(b1, b2, x, y, x_free)
            }
            (Formula::Neg(a), Formula::Neg(b)) | (Formula::Box(a), Formula::Box(b)) => go(a, b, x, y, x_free),
            (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => go(a1, a2, x, y, x_free) && go(b1, b2, x, y, x_free),
            (Formula::Forall(v, a), Formula::Forall(w, b)) => v == w && go(a, b, x, y, x_free && v != x),
            _ => false,
        }
    }
    go(f, g, x, y, true)
}

/// Variants: equal up to renaming bound variables and adding or dropping
/// void quantifiers. Compared directly, without normalizing.
pub fn is_variant(f: &Formula, g: &Formula) -> bool {
    // Each stack entry pairs a binder on the `f` side with one on the `g` side.
    fn lookup<'a>(env: &'a [(String, String)], name: &str, left: bool) -> Option<usize> {
        env.iter().rposition(|(l, r)| if left { l == name } else { r == name })
    }
    fn terms(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
        match (s, t) {
            (Term::Var(a), Term::Var(b)) => match (lookup(env, a, true), lookup(env, b, false)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => a == b,
                _ => false,
            },
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::App(f1, a1), Term::App(f2, a2)) => {
                f1 == f2 && a1.len() == a2.len() && a1.iter().zip(a2).all(|(s, t)| terms(s, t, env))
            }
            _ => false,
        }
    }
    fn strip(f: &Formula) -> &Formula {
        match f {
            Formula::Forall(x, a) if !occurs_free(a, x) => strip(a),
            _ => f,
        }
    }
    fn go(f: &Formula, g: &Formula, env: &mut Vec<(String, String)>) -> bool {
        match (strip(f), strip(g)) {
            (Formula::Atom(p, a1), Formula::Atom(q, a2)) => {
                p == q && a1.len() == a2.len() && a1.iter().zip(a2).all(|(s, t)| terms(s, t, env))
            }
            (Formula::Identity(k1, a1, b1), Formula::Identity(k2, a2, b2)) => {
                k1 == k2 && terms(a1, a2, env) && terms(b1, b2, env)
            }
            (Formula::Neg(a), Formula::Neg(b)) | (Formula::Box(a), Formula::Box(b)) => go(a, b, env),
            (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => go(a1, a2, env) && go(b1, b2, env),
            (Formula::Forall(x, a), Formula::Forall(y, b)) => {
                env.push((x.clone(), y.clone()));
                let ok = go(a, b, env);
                env.pop();
                ok
            }
            _ => false,
        }
    }
    go(f, g, &mut Vec::new())
}

/// Canonical representative of the variant class: void quantifiers
/// dropped, bound variables renamed `v0, v1, ...` in binder preorder.
/// Names that occur free in `f` are skipped so nothing gets captured.
pub fn alpha_normalize(f: &Formula) -> Formula {
    let free = free_vars(f);
    let mut next = 0usize;
    let mut fresh = move || loop {
        let name = format!("v{next}");
        next += 1;
        if !free.contains(&name) {
            return name;
        }
    };
    fn rename_term(t: &Term, env: &[(String, String)]) -> Term {
        match t {
            Term::Var(x) => match env.iter().rev().find(|(from, _)| from == x) {
                Some((_, to)) => Term::Var(to.clone()),
                None => t.clone(),
            },
            Term::Const(_) => t.clone(),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| rename_term(a, env)).collect()),
        }
    }
    fn go(f: &Formula, env: &mut Vec<(String, String)>, fresh: &mut dyn FnMut() -> String) -> Formula {
        match f {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| rename_term(a, env)).collect()),
            Formula::Identity(k, a, b) => Formula::Identity(*k, rename_term(a, env), rename_term(b, env)),
            Formula::Neg(a) => Formula::not(go(a, env, fresh)),
            Formula::Box(a) => Formula::nec(go(a, env, fresh)),
            Formula::Imp(a, b) => {
                let a = go(a, env, fresh);
                Formula::imp(a, go(b, env, fresh))
            }
            Formula::Forall(x, a) if !occurs_free(a, x) => go(a, env, fresh),
            Formula::Forall(x, a) => {
                let name = fresh();
                env.push((x.clone(), name.clone()));
                let body = go(a, env, fresh);
                env.pop();
                Formula::Forall(name, Box::new(body))
            }
        }
    }
    go(f, &mut Vec::new(), &mut fresh)
}
