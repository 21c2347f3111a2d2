//! Checking Hilbert-style derivations.
//!
//! A derivation lists premises and numbered steps; each step is an axiom
//! instance, a premise, modus ponens or generalization. Step and premise
//! numbers start at 1. Besides the verdict, the checker records for every
//! premise which variables were generalized in steps depending on it,
//! which decides whether the deduction metatheorem can discharge it.

mod instances;
mod schema;

pub use instances::{random_instance, random_variant};
pub use schema::{
    axioms_of, match_axiom, matching_axioms, try_match, Axiom, AxiomSchema, Binding, Instantiation, MatchFailure,
    SideCondition, UnknownAxiom,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::nmatrix::{NmatrixError, QuantifierMode, SystemSpec};
use crate::syntax::{free_vars, parse_inferred, Formula, ParseError, Signature};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error("invalid derivation document: {0}")]
    Json(String),
    #[error("{location}: {source}")]
    Parse { location: String, source: ParseError },
    #[error("step {step}: {reason}")]
    Malformed { step: usize, reason: String },
    #[error("a derivation needs at least one step")]
    Empty,
    #[error(transparent)]
    Nmatrix(#[from] NmatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// An instance of the named schema, or of any schema of the system.
    Axiom(Option<Axiom>),
    /// The premise with this number.
    Premise(usize),
    /// From step `i` (the antecedent) and step `j` (the implication).
    Mp(usize, usize),
    /// Generalization of step `i` on a variable.
    Gen(usize, String),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(Some(a)) => write!(f, "axiom {a}"),
            Justification::Axiom(None) => f.write_str("axiom"),
            Justification::Premise(i) => write!(f, "premise {i}"),
            Justification::Mp(i, j) => write!(f, "mp {i}, {j}"),
            Justification::Gen(i, x) => write!(f, "gen {i}, {x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub system: SystemSpec,
    pub premises: Vec<Formula>,
    pub steps: Vec<Step>,
}

/// The JSON form of a derivation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDocument {
    pub system: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantifier: Option<String>,
    /// Names to read as individual constants rather than variables.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<String>,
    #[serde(default)]
    pub premises: Vec<String>,
    pub steps: Vec<StepDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDocument {
    pub formula: String,
    pub rule: RuleName,
    #[serde(default)]
    pub args: Vec<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleName {
    Axiom,
    Premise,
    Mp,
    Gen,
}

impl Derivation {
    pub fn from_json(text: &str) -> Result<Derivation, DerivationError> {
        let doc: DerivationDocument = serde_json::from_str(text).map_err(|e| DerivationError::Json(e.to_string()))?;
        Derivation::from_document(&doc)
    }

    pub fn from_document(doc: &DerivationDocument) -> Result<Derivation, DerivationError> {
        let mut system: SystemSpec = doc.system.parse()?;
        if let Some(q) = &doc.quantifier {
            let mode: QuantifierMode = q.parse().map_err(DerivationError::Json)?;
            system = system.with_quantifier_mode(mode);
        }
        let mut sig = Signature::new();
        for c in &doc.constants {
            sig.add_constant(c).map_err(|e| DerivationError::Json(e.to_string()))?;
        }
        let mut parse = |text: &str, location: String| -> Result<Formula, DerivationError> {
            let (f, extended) =
                parse_inferred(text, &sig).map_err(|source| DerivationError::Parse { location, source })?;
            sig = extended;
            Ok(f)
        };
        let premises = doc
            .premises
            .iter()
            .enumerate()
            .map(|(i, p)| parse(p, format!("premise {}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        if doc.steps.is_empty() {
            return Err(DerivationError::Empty);
        }
        let mut steps = Vec::with_capacity(doc.steps.len());
        for (i, s) in doc.steps.iter().enumerate() {
            let number = i + 1;
            let formula = parse(&s.formula, format!("step {number}"))?;
            let justification = justification(s, number)?;
            steps.push(Step { formula, justification });
        }
        Ok(Derivation { system, premises, steps })
    }

    pub fn to_document(&self) -> DerivationDocument {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let (rule, args) = match &s.justification {
                    Justification::Axiom(a) => (RuleName::Axiom, a.iter().map(|a| Value::from(a.name())).collect()),
                    Justification::Premise(i) => (RuleName::Premise, vec![Value::from(*i)]),
                    Justification::Mp(i, j) => (RuleName::Mp, vec![Value::from(*i), Value::from(*j)]),
                    Justification::Gen(i, x) => (RuleName::Gen, vec![Value::from(*i), Value::from(x.as_str())]),
                };
                StepDocument { formula: s.formula.to_string(), rule, args }
            })
            .collect();
        DerivationDocument {
            system: self.system.name(),
            quantifier: Some(self.system.quantifier_mode().to_string()),
            constants: Vec::new(),
            premises: self.premises.iter().map(|p| p.to_string()).collect(),
            steps,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("derivations serialize")
    }
}

fn justification(s: &StepDocument, step: usize) -> Result<Justification, DerivationError> {
    let bad = |reason: String| DerivationError::Malformed { step, reason };
    let index = |v: &Value| -> Result<usize, DerivationError> {
        v.as_u64()
            .filter(|&n| n >= 1)
            .map(|n| n as usize)
            .ok_or_else(|| bad(format!("`{v}` is not a step or premise number (numbers start at 1)")))
    };
    let arity = |n: usize| -> Result<(), DerivationError> {
        if s.args.len() == n {
            Ok(())
        } else {
            Err(bad(format!("rule {:?} takes {n} argument(s), got {}", s.rule, s.args.len())))
        }
    };
    Ok(match s.rule {
        RuleName::Axiom => match s.args.as_slice() {
            [] => Justification::Axiom(None),
            [Value::String(name)] if name.is_empty() => Justification::Axiom(None),
            [Value::String(name)] => {
                Justification::Axiom(Some(name.parse().map_err(|e: UnknownAxiom| bad(e.to_string()))?))
            }
            _ => return Err(bad("rule axiom takes at most one schema name".to_string())),
        },
        RuleName::Premise => {
            arity(1)?;
            Justification::Premise(index(&s.args[0])?)
        }
        RuleName::Mp => {
            arity(2)?;
            Justification::Mp(index(&s.args[0])?, index(&s.args[1])?)
        }
        RuleName::Gen => {
            arity(2)?;
            let x = s.args[1].as_str().ok_or_else(|| bad(format!("`{}` is not a variable name", s.args[1])))?;
            Justification::Gen(index(&s.args[0])?, x.to_string())
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Rejected { step: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub formula: String,
    pub justification: String,
    /// The schema an axiom step instantiates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<Axiom>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binding: Option<Binding>,
    /// Premises this step depends on.
    pub depends_on: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PremiseReport {
    pub premise: usize,
    pub formula: String,
    /// Variables generalized in steps that depend on this premise.
    pub generalized: Vec<String>,
    /// No generalized variable is free in the premise.
    pub dischargeable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub system: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// The last step's formula, when accepted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
    /// The steps verified before any rejection.
    pub steps: Vec<StepReport>,
    pub premises: Vec<PremiseReport>,
}

impl CheckReport {
    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system: {}", self.system)?;
        let width = self.steps.iter().map(|s| s.formula.chars().count()).max().unwrap_or(0);
        for s in &self.steps {
            write!(f, "{:>3}. {:<width$}   {}", s.step, s.formula, s.justification)?;
            if let Some(b) = s.binding.as_ref().filter(|b| b.term.is_some()) {
                write!(f, " [{b}]")?;
            }
            writeln!(f)?;
        }
        match &self.verdict {
            Verdict::Accepted => writeln!(f, "accepted: {}", self.conclusion.as_deref().unwrap_or(""))?,
            Verdict::Rejected { step, reason } => writeln!(f, "rejected at step {step}: {reason}")?,
        }
        for p in &self.premises {
            let generalized = if p.generalized.is_empty() { "none".to_string() } else { p.generalized.join(", ") };
            let dmt = if p.dischargeable { "dischargeable" } else { "not dischargeable" };
            writeln!(f, "premise {} {}: generalized {generalized}; {dmt}", p.premise, p.formula)?;
        }
        Ok(())
    }
}

/// Verifies step `k` (1-based) given that the earlier steps are verified.
/// Returns the matched schema and binding for axiom steps.
pub fn check_step(deriv: &Derivation, k: usize) -> Result<Option<(Axiom, Binding)>, String> {
    let step = &deriv.steps[k - 1];
    let earlier = |i: usize| -> Result<&Formula, String> {
        if i < k {
            Ok(&deriv.steps[i - 1].formula)
        } else {
            Err(format!("step {i} does not come before step {k}"))
        }
    };
    match &step.justification {
        Justification::Axiom(Some(axiom)) => {
            if !axioms_of(&deriv.system).contains(axiom) {
                return Err(format!("({axiom}) is not an axiom of {}", deriv.system));
            }
            try_match(&step.formula, *axiom).map(|b| Some((*axiom, b))).map_err(|e| e.to_string())
        }
        Justification::Axiom(None) => match matching_axioms(&step.formula, &deriv.system).into_iter().next() {
            Some(found) => Ok(Some(found)),
            None => Err(format!("`{}` is not an instance of any axiom of {}", step.formula, deriv.system)),
        },
        Justification::Premise(i) => match deriv.premises.get(i.wrapping_sub(1)) {
            Some(p) if *p == step.formula => Ok(None),
            Some(p) => Err(format!("premise {i} is `{p}`, not `{}`", step.formula)),
            None => Err(format!("there is no premise {i}")),
        },
        Justification::Mp(i, j) => {
            let (a, imp) = (earlier(*i)?, earlier(*j)?);
            match imp {
                Formula::Imp(ante, cons) if **ante == *a && **cons == step.formula => Ok(None),
                Formula::Imp(ante, _) if **ante != *a => {
                    Err(format!("the antecedent of step {j} is not step {i} (`{a}`)"))
                }
                Formula::Imp(_, cons) => Err(format!("step {j} concludes `{cons}`, not `{}`", step.formula)),
                _ => Err(format!("step {j} (`{imp}`) is not an implication")),
            }
        }
        Justification::Gen(i, x) => {
            let a = earlier(*i)?;
            match &step.formula {
                Formula::Forall(y, body) if y == x && **body == *a => Ok(None),
                _ => Err(format!("`{}` is not `forall {x}.` applied to step {i} (`{a}`)", step.formula)),
            }
        }
    }
}

/// Checks every step in order, stopping at the first rejection, and
/// builds the premise ledger from the verified steps.
pub fn check_derivation(deriv: &Derivation) -> CheckReport {
    let mut steps = Vec::with_capacity(deriv.steps.len());
    let mut depends: Vec<BTreeSet<usize>> = Vec::with_capacity(deriv.steps.len());
    let mut generalized: Vec<BTreeSet<String>> = vec![BTreeSet::new(); deriv.premises.len()];
    let mut verdict = Verdict::Accepted;
    for k in 1..=deriv.steps.len() {
        let step = &deriv.steps[k - 1];
        let matched = match check_step(deriv, k) {
            Ok(m) => m,
            Err(reason) => {
                verdict = Verdict::Rejected { step: k, reason };
                break;
            }
        };
        let deps: BTreeSet<usize> = match &step.justification {
            Justification::Axiom(_) => BTreeSet::new(),
            Justification::Premise(i) => BTreeSet::from([*i]),
            Justification::Mp(i, j) => depends[i - 1].union(&depends[j - 1]).copied().collect(),
            Justification::Gen(i, x) => {
                for p in &depends[i - 1] {
                    generalized[p - 1].insert(x.clone());
                }
                depends[i - 1].clone()
            }
        };
        let (axiom, binding) = matched.map_or((None, None), |(a, b)| (Some(a), Some(b)));
        steps.push(StepReport {
            step: k,
            formula: step.formula.to_string(),
            justification: match (&step.justification, axiom) {
                (Justification::Axiom(None), Some(a)) => format!("axiom {a} (inferred)"),
                (j, _) => j.to_string(),
            },
            axiom,
            binding,
            depends_on: deps.iter().copied().collect(),
        });
        depends.push(deps);
    }
    let premises = deriv
        .premises
        .iter()
        .zip(generalized)
        .enumerate()
        .map(|(i, (p, vars))| {
            let free = free_vars(p);
            PremiseReport {
                premise: i + 1,
                formula: p.to_string(),
                dischargeable: vars.is_disjoint(&free),
                generalized: vars.into_iter().collect(),
            }
        })
        .collect();
    let conclusion = (verdict == Verdict::Accepted).then(|| deriv.steps.last().expect("nonempty").formula.to_string());
    CheckReport { system: deriv.system.to_string(), verdict, conclusion, steps, premises }
}
