//! Axiom schemas and matching of formulas against them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::nmatrix::{BoxVariant, Carrier, IdentityMode, QuantifierMode, SystemSpec};
use crate::syntax::{is_free_for, is_partial_replacement, is_variant, occurs_free, Formula, IdentityKind, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "Ax1")]
    Ax1,
    #[serde(rename = "Ax2")]
    Ax2,
    #[serde(rename = "Ax3")]
    Ax3,
    #[serde(rename = "Ax4")]
    Ax4,
    #[serde(rename = "Ax5")]
    Ax5,
    #[serde(rename = "Ax6")]
    Ax6,
    #[serde(rename = "Ax7")]
    Ax7,
    #[serde(rename = "Ax8")]
    Ax8,
    #[serde(rename = "N=")]
    NecEq,
    #[serde(rename = "P=")]
    PossEq,
    #[serde(rename = "C=1")]
    ContEq1,
    #[serde(rename = "C=2")]
    ContEq2,
    K,
    K1,
    K2,
    M1,
    M2,
    M3,
    M4,
    T,
    D,
    DN1,
    DN2,
    BF,
    CBF,
    NBF,
    PBF,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "5")]
    Five,
}

/// Syntactic proviso attached to a schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideCondition {
    None,
    /// The instantiating term is free for the quantified variable.
    FreeFor,
    /// The quantified variable does not occur free in the antecedent.
    NoFreeOccurrence,
    /// Antecedent and consequent are variants.
    Variant,
    /// The consequent replaces some free `x` by a variable `y` free for `x`.
    PartialReplacement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomSchema {
    pub axiom: Axiom,
    /// The schema in the usual notation, for display.
    pub pattern: &'static str,
    pub side_condition: SideCondition,
}

impl Axiom {
    pub const ALL: [Axiom; 29] = [
        Axiom::Ax1,
        Axiom::Ax2,
        Axiom::Ax3,
        Axiom::Ax4,
        Axiom::Ax5,
        Axiom::Ax6,
        Axiom::Ax7,
        Axiom::Ax8,
        Axiom::NecEq,
        Axiom::PossEq,
        Axiom::ContEq1,
        Axiom::ContEq2,
        Axiom::K,
        Axiom::K1,
        Axiom::K2,
        Axiom::M1,
        Axiom::M2,
        Axiom::M3,
        Axiom::M4,
        Axiom::T,
        Axiom::D,
        Axiom::DN1,
        Axiom::DN2,
        Axiom::BF,
        Axiom::CBF,
        Axiom::NBF,
        Axiom::PBF,
        Axiom::Four,
        Axiom::Five,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Ax1 => "Ax1",
            Axiom::Ax2 => "Ax2",
            Axiom::Ax3 => "Ax3",
            Axiom::Ax4 => "Ax4",
            Axiom::Ax5 => "Ax5",
            Axiom::Ax6 => "Ax6",
            Axiom::Ax7 => "Ax7",
            Axiom::Ax8 => "Ax8",
            Axiom::NecEq => "N=",
            Axiom::PossEq => "P=",
            Axiom::ContEq1 => "C=1",
            Axiom::ContEq2 => "C=2",
            Axiom::K => "K",
            Axiom::K1 => "K1",
            Axiom::K2 => "K2",
            Axiom::M1 => "M1",
            Axiom::M2 => "M2",
            Axiom::M3 => "M3",
            Axiom::M4 => "M4",
            Axiom::T => "T",
            Axiom::D => "D",
            Axiom::DN1 => "DN1",
            Axiom::DN2 => "DN2",
            Axiom::BF => "BF",
            Axiom::CBF => "CBF",
            Axiom::NBF => "NBF",
            Axiom::PBF => "PBF",
            Axiom::Four => "4",
            Axiom::Five => "5",
        }
    }

    pub fn schema(self) -> AxiomSchema {
        use SideCondition as S;
        let (pattern, side_condition) = match self {
            Axiom::Ax1 => ("α → (β → α)", S::None),
            Axiom::Ax2 => ("(α → (β → γ)) → ((α → β) → (α → γ))", S::None),
            Axiom::Ax3 => ("(¬β → ¬α) → ((¬β → α) → β)", S::None),
            Axiom::Ax4 => ("∀x α → α[x/τ]", S::FreeFor),
            Axiom::Ax5 => ("∀x (α → β) → (α → ∀x β)", S::NoFreeOccurrence),
            Axiom::Ax6 => ("α → β", S::Variant),
            Axiom::Ax7 => ("∀x (x ≈ x)", S::None),
            Axiom::Ax8 => ("(x ≈ y) → (α → α[x≀y])", S::PartialReplacement),
            Axiom::NecEq => ("(x ≈ y) → □(x ≈ y)", S::None),
            Axiom::PossEq => ("¬(x ≈ y) → □¬(x ≈ y)", S::None),
            Axiom::ContEq1 => ("¬□(x ≈c y)", S::None),
            Axiom::ContEq2 => ("¬□¬(x ≈c y)", S::None),
            Axiom::K => ("□(α → β) → (□α → □β)", S::None),
            Axiom::K1 => ("□(α → β) → (◇α → ◇β)", S::None),
            Axiom::K2 => ("◇(α → β) → (□α → ◇β)", S::None),
            Axiom::M1 => ("□¬α → □(α → β)", S::None),
            Axiom::M2 => ("□β → □(α → β)", S::None),
            Axiom::M3 => ("◇β → ◇(α → β)", S::None),
            Axiom::M4 => ("◇¬α → ◇(α → β)", S::None),
            Axiom::T => ("□α → α", S::None),
            Axiom::D => ("□α → ◇α", S::None),
            Axiom::DN1 => ("□α → □¬¬α", S::None),
            Axiom::DN2 => ("□¬¬α → □α", S::None),
            Axiom::BF => ("∀x □α → □∀x α", S::None),
            Axiom::CBF => ("□∀x α → ∀x □α", S::None),
            Axiom::NBF => ("∀x ◇α → ◇∀x α", S::None),
            Axiom::PBF => ("◇∀x α → ∀x ◇α", S::None),
            Axiom::Four => ("□α → □□α", S::None),
            Axiom::Five => ("◇□α → □α", S::None),
        };
        AxiomSchema { axiom: self, pattern, side_condition }
    }

    /// The schema as a pattern tree, except for Ax4 which is matched by
    /// term recovery instead.
    fn pattern(self) -> Pat {
        use Pat::*;
        let (a, b, c) = (|| Meta("α"), || Meta("β"), || Meta("γ"));
        let eq = |kind| Eq(kind, "x", "y");
        match self {
            Axiom::Ax1 => imp(a(), imp(b(), a())),
            Axiom::Ax2 => imp(imp(a(), imp(b(), c())), imp(imp(a(), b()), imp(a(), c()))),
            Axiom::Ax3 => imp(imp(not(b()), not(a())), imp(imp(not(b()), a()), b())),
            Axiom::Ax4 => imp(all(a()), b()),
            Axiom::Ax5 => imp(all(imp(a(), b())), imp(a(), all(b()))),
            Axiom::Ax6 => imp(a(), b()),
            Axiom::Ax7 => all(Eq(None, "x", "x")),
            Axiom::Ax8 => imp(eq(None), imp(a(), b())),
            Axiom::NecEq => imp(eq(Some(IdentityKind::Necessary)), nec(eq(Some(IdentityKind::Necessary)))),
            Axiom::PossEq => imp(not(eq(Some(IdentityKind::Necessary))), nec(not(eq(Some(IdentityKind::Necessary))))),
            Axiom::ContEq1 => not(nec(eq(Some(IdentityKind::Contingent)))),
            Axiom::ContEq2 => not(nec(not(eq(Some(IdentityKind::Contingent))))),
            Axiom::K => imp(nec(imp(a(), b())), imp(nec(a()), nec(b()))),
            Axiom::K1 => imp(nec(imp(a(), b())), imp(poss(a()), poss(b()))),
            Axiom::K2 => imp(poss(imp(a(), b())), imp(nec(a()), poss(b()))),
            Axiom::M1 => imp(nec(not(a())), nec(imp(a(), b()))),
            Axiom::M2 => imp(nec(b()), nec(imp(a(), b()))),
            Axiom::M3 => imp(poss(b()), poss(imp(a(), b()))),
            Axiom::M4 => imp(poss(not(a())), poss(imp(a(), b()))),
            Axiom::T => imp(nec(a()), a()),
            Axiom::D => imp(nec(a()), poss(a())),
            Axiom::DN1 => imp(nec(a()), nec(not(not(a())))),
            Axiom::DN2 => imp(nec(not(not(a()))), nec(a())),
            Axiom::BF => imp(all(nec(a())), nec(all(a()))),
            Axiom::CBF => imp(nec(all(a())), all(nec(a()))),
            Axiom::NBF => imp(all(poss(a())), poss(all(a()))),
            Axiom::PBF => imp(poss(all(a())), all(poss(a()))),
            Axiom::Four => imp(nec(a()), nec(nec(a()))),
            Axiom::Five => imp(poss(nec(a())), nec(a())),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for Axiom {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(trimmed))
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}

/// Schemas that the eight-valued Nmatrix refutes through `I±`.
const REFUTED_IN_V8: [Axiom; 5] = [Axiom::K, Axiom::K1, Axiom::M3, Axiom::M4, Axiom::CBF];

/// The axiom schemas of a system. Identity axioms follow the identity
/// mode, `(D)` replaces `(T)` in V6, `(4)`/`(5)` follow the `□` variant,
/// and `(NBF)` is dropped under nondeterministic quantifiers. V8 keeps
/// neither `(T)` nor `(D)`, nor the schemas in [`REFUTED_IN_V8`].
pub fn axioms_of(sys: &SystemSpec) -> Vec<Axiom> {
    Axiom::ALL
        .into_iter()
        .filter(|a| sys.carrier() != Carrier::V8 || !REFUTED_IN_V8.contains(a))
        .filter(|a| match a {
            Axiom::NecEq | Axiom::PossEq => sys.identity_mode() == IdentityMode::Necessary,
            Axiom::ContEq1 | Axiom::ContEq2 => sys.identity_mode() == IdentityMode::Contingent,
            Axiom::T => sys.carrier() == Carrier::V4,
            Axiom::D => sys.carrier() == Carrier::V6,
            Axiom::Four => sys.box_variant() != BoxVariant::Base,
            Axiom::Five => sys.box_variant() == BoxVariant::Axiom45,
            Axiom::NBF => sys.quantifier_mode() == QuantifierMode::Deterministic,
            _ => true,
        })
        .collect()
}

/// The term bound by an Ax4 match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instantiation {
    Term(Term),
    /// The quantified variable has no free occurrence, so any term fits.
    Irrelevant,
}

impl fmt::Display for Instantiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instantiation::Term(t) => write!(f, "{t}"),
            Instantiation::Irrelevant => f.write_str("irrelevant"),
        }
    }
}

/// Values of the metavariables of a matched schema.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Binding {
    pub formulas: BTreeMap<&'static str, Formula>,
    pub variables: BTreeMap<&'static str, String>,
    pub term: Option<Instantiation>,
}

impl Binding {
    /// Metavariable name to printed value, formulas first.
    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> =
            self.formulas.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        out.extend(self.variables.iter().map(|(k, v)| (k.to_string(), v.clone())));
        if let Some(t) = &self.term {
            out.push(("τ".to_string(), t.to_string()));
        }
        out
    }
}

impl Serialize for Binding {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self.entries().into_iter().collect();
        map.serialize(serializer)
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().into_iter().map(|(k, v)| format!("{k} := {v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchFailure {
    #[error("`{formula}` does not have the shape of ({axiom}) {pattern}")]
    Shape { axiom: Axiom, formula: String, pattern: &'static str },
    #[error("({axiom}): {reason}")]
    SideCondition { axiom: Axiom, reason: String },
}

/// A binding making `f` an instance of `axiom`, side conditions included.
pub fn match_axiom(f: &Formula, axiom: Axiom) -> Option<Binding> {
    try_match(f, axiom).ok()
}

/// Like [`match_axiom`], but says why a formula is not an instance.
pub fn try_match(f: &Formula, axiom: Axiom) -> Result<Binding, MatchFailure> {
    let shape = || MatchFailure::Shape { axiom, formula: f.to_string(), pattern: axiom.schema().pattern };
    let side = |reason: String| MatchFailure::SideCondition { axiom, reason };
    let mut binding = Binding::default();
    if !matches(&axiom.pattern(), f, &mut binding) {
        return Err(shape());
    }
    match axiom {
        Axiom::Ax4 => {
            let (x, alpha, beta) = (&binding.variables["x"], &binding.formulas["α"], &binding.formulas["β"]);
            let mut tau = None;
            if !recover(alpha, beta, x, true, &mut tau) {
                return Err(shape());
            }
            match tau {
                None => binding.term = Some(Instantiation::Irrelevant),
                Some(t) if is_free_for(&t, x, alpha) => binding.term = Some(Instantiation::Term(t)),
                Some(t) => return Err(side(format!("`{t}` is not free for `{x}` in `{alpha}`"))),
            }
        }
        Axiom::Ax5 => {
            let (x, alpha) = (&binding.variables["x"], &binding.formulas["α"]);
            if occurs_free(alpha, x) {
                return Err(side(format!("`{x}` occurs free in `{alpha}`")));
            }
        }
        Axiom::Ax6 => {
            let (alpha, beta) = (&binding.formulas["α"], &binding.formulas["β"]);
            if !is_variant(alpha, beta) {
                return Err(side(format!("`{alpha}` and `{beta}` are not variants")));
            }
        }
        Axiom::Ax8 => {
            let (x, y) = (&binding.variables["x"], &binding.variables["y"]);
            let (alpha, beta) = (&binding.formulas["α"], &binding.formulas["β"]);
            if !is_partial_replacement(alpha, beta, x, y) {
                return Err(side(format!(
                    "`{beta}` is not `{alpha}` with some free `{x}` replaced by a variable `{y}` free for `{x}`"
                )));
            }
        }
        _ => {}
    }
    Ok(binding)
}

/// Every schema of `sys` that `f` instantiates, in schema order.
pub fn matching_axioms(f: &Formula, sys: &SystemSpec) -> Vec<(Axiom, Binding)> {
    axioms_of(sys).into_iter().filter_map(|a| match_axiom(f, a).map(|b| (a, b))).collect()
}

#[derive(Debug, Clone)]
enum Pat {
    Meta(&'static str),
    Neg(Box<Pat>),
    Nec(Box<Pat>),
    Imp(Box<Pat>, Box<Pat>),
    /// `∀x` with the variable metavariable `x`.
    All(Box<Pat>),
    /// An identity between two variables; `None` accepts either kind.
    Eq(Option<IdentityKind>, &'static str, &'static str),
}

fn imp(a: Pat, b: Pat) -> Pat {
    Pat::Imp(Box::new(a), Box::new(b))
}

fn not(a: Pat) -> Pat {
    Pat::Neg(Box::new(a))
}

fn nec(a: Pat) -> Pat {
    Pat::Nec(Box::new(a))
}

fn poss(a: Pat) -> Pat {
    not(nec(not(a)))
}

fn all(a: Pat) -> Pat {
    Pat::All(Box::new(a))
}

fn bind_var(b: &mut Binding, meta: &'static str, name: &str) -> bool {
    match b.variables.get(meta) {
        Some(bound) => bound == name,
        None => {
            b.variables.insert(meta, name.to_string());
            true
        }
    }
}

fn matches(p: &Pat, f: &Formula, b: &mut Binding) -> bool {
    match (p, f) {
        (Pat::Meta(m), _) => match b.formulas.get(m) {
            Some(bound) => bound == f,
            None => {
                b.formulas.insert(m, f.clone());
                true
            }
        },
        (Pat::Neg(p), Formula::Neg(a)) | (Pat::Nec(p), Formula::Box(a)) => matches(p, a, b),
        (Pat::Imp(p, q), Formula::Imp(a, c)) => matches(p, a, b) && matches(q, c, b),
        (Pat::All(p), Formula::Forall(x, a)) => bind_var(b, "x", x) && matches(p, a, b),
        (Pat::Eq(kind, l, r), Formula::Identity(k, Term::Var(s), Term::Var(t))) => {
            kind.map_or(true, |kind| kind == *k) && bind_var(b, l, s) && bind_var(b, r, t)
        }
        _ => false,
    }
}

/// Walks `alpha` and `beta` in parallel, requiring equality except where
/// `alpha` has a free `x`, and collects the term found there in `beta`.
fn recover(alpha: &Formula, beta: &Formula, x: &str, free: bool, tau: &mut Option<Term>) -> bool {
    let terms = |s: &[Term], t: &[Term], tau: &mut Option<Term>| {
        s.len() == t.len() && s.iter().zip(t).all(|(s, t)| recover_term(s, t, x, free, tau))
    };
    match (alpha, beta) {
        (Formula::Atom(p, s), Formula::Atom(q, t)) => p == q && terms(s, t, tau),
        (Formula::Identity(k, s1, s2), Formula::Identity(l, t1, t2)) => {
            k == l && terms(&[s1.clone(), s2.clone()], &[t1.clone(), t2.clone()], tau)
        }
        (Formula::Neg(a), Formula::Neg(c)) | (Formula::Box(a), Formula::Box(c)) => recover(a, c, x, free, tau),
        (Formula::Imp(a1, a2), Formula::Imp(c1, c2)) => recover(a1, c1, x, free, tau) && recover(a2, c2, x, free, tau),
        (Formula::Forall(y, a), Formula::Forall(z, c)) => y == z && recover(a, c, x, free && y != x, tau),
        _ => false,
    }
}

fn recover_term(s: &Term, t: &Term, x: &str, free: bool, tau: &mut Option<Term>) -> bool {
    match s {
        Term::Var(v) if free && v == x => match tau {
            Some(found) => found == t,
            None => {
                *tau = Some(t.clone());
                true
            }
        },
        Term::Var(_) | Term::Const(_) => s == t,
        Term::App(g, args) => match t {
            Term::App(h, targs) => {
                g == h
                    && args.len() == targs.len()
                    && args.iter().zip(targs).all(|(s, t)| recover_term(s, t, x, free, tau))
            }
            _ => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_inferred, Signature};

    fn p(text: &str) -> Formula {
        parse_inferred(text, &Signature::new().with_constant("c")).unwrap().0
    }

    #[test]
    fn names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
            let json = serde_json::to_string(&a).unwrap();
            assert_eq!(json, format!("\"{}\"", a.name()));
        }
        assert_eq!("(C=1)".parse::<Axiom>().unwrap(), Axiom::ContEq1);
        assert!("Ax9".parse::<Axiom>().is_err());
    }

    #[test]
    fn ax4_recovers_the_term() {
        let b = match_axiom(&p("(forall x. P(x)) -> P(c)"), Axiom::Ax4).unwrap();
        assert_eq!(b.term, Some(Instantiation::Term(Term::constant("c"))));
        let b = match_axiom(&p("(forall x. Q) -> Q"), Axiom::Ax4).unwrap();
        assert_eq!(b.term, Some(Instantiation::Irrelevant));
        assert!(match_axiom(&p("(forall x. R(x, x)) -> R(c, y)"), Axiom::Ax4).is_none());
    }

    #[test]
    fn ax4_rejects_capture() {
        let f = p("(forall x. forall y. R(x, y)) -> forall y. R(y, y)");
        assert!(matches!(try_match(&f, Axiom::Ax4), Err(MatchFailure::SideCondition { .. })));
        let ok = p("(forall x. forall y. R(x, y)) -> forall y. R(z, y)");
        assert!(match_axiom(&ok, Axiom::Ax4).is_some());
    }

    #[test]
    fn ax5_and_ax8_side_conditions() {
        assert!(match_axiom(&p("(forall x. (Q -> P(x))) -> (Q -> forall x. P(x))"), Axiom::Ax5).is_some());
        assert!(matches!(
            try_match(&p("(forall x. (P(x) -> P(x))) -> (P(x) -> forall x. P(x))"), Axiom::Ax5),
            Err(MatchFailure::SideCondition { .. })
        ));
        let b = match_axiom(&p("x = y -> (R(x, x) -> R(x, y))"), Axiom::Ax8).unwrap();
        assert_eq!(b.variables["x"], "x");
        assert!(match_axiom(&p("x = y -> (R(x, x) -> R(y, z))"), Axiom::Ax8).is_none());
        assert!(match_axiom(&p("x =c y -> (P(x) -> P(y))"), Axiom::Ax8).is_some());
    }

    #[test]
    fn identity_axioms_fix_the_kind() {
        assert!(match_axiom(&p("x = y -> [](x = y)"), Axiom::NecEq).is_some());
        assert!(match_axiom(&p("x =c y -> [](x =c y)"), Axiom::NecEq).is_none());
        assert!(match_axiom(&p("~[](x =c y)"), Axiom::ContEq1).is_some());
        assert!(match_axiom(&p("~[]~(x = y)"), Axiom::ContEq2).is_none());
        assert!(match_axiom(&p("forall x. x = x"), Axiom::Ax7).is_some());
        assert!(match_axiom(&p("forall x. x = y"), Axiom::Ax7).is_none());
    }

    #[test]
    fn schema_sets() {
        let tm = axioms_of(&SystemSpec::tm());
        assert_eq!(tm.len(), 24);
        assert!(tm.contains(&Axiom::T) && !tm.contains(&Axiom::D) && !tm.contains(&Axiom::Four));
        let tm_c = axioms_of(&SystemSpec::tm().with_identity_mode(IdentityMode::Contingent));
        assert!(tm_c.contains(&Axiom::ContEq1) && !tm_c.contains(&Axiom::NecEq));
        let dm = axioms_of(&SystemSpec::dm());
        assert!(dm.contains(&Axiom::D) && !dm.contains(&Axiom::T));
        let km = axioms_of(&SystemSpec::km());
        assert!(!km.contains(&Axiom::D) && !km.contains(&Axiom::T) && !km.contains(&Axiom::K));
        assert!(km.contains(&Axiom::BF) && km.contains(&Axiom::M1));
        assert!(axioms_of(&SystemSpec::t45m()).contains(&Axiom::Five));
        let nd = axioms_of(&SystemSpec::tm().with_quantifier_mode(QuantifierMode::Nondeterministic));
        assert!(!nd.contains(&Axiom::NBF) && nd.contains(&Axiom::PBF));
    }

    #[test]
    fn diamond_patterns_see_through_the_abbreviation() {
        let sig = Signature::new().with_predicate("A", 0).with_predicate("B", 0);
        let f = parse_formula("<>(A -> B) -> ([]A -> <>B)", &sig).unwrap();
        assert!(match_axiom(&f, Axiom::K2).is_some());
        assert!(match_axiom(&f, Axiom::K1).is_none());
    }
}
