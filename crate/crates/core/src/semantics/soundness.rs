//! Randomized soundness checks: axiom instances must be designated in every
//! structure and valuation, and the rules must preserve truth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::engine::{Budget, Evaluator, TraceEntry};
use super::search::{random_structure, refute_in, SearchError};
use super::structure::{Assignment, Structure};
use super::SemanticsError;
use crate::nmatrix::{SystemSpec, TruthValue};
use crate::syntax::{free_vars, Formula, Signature};

/// How valuation choices are made in each trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChoicePolicy {
    /// One random legal valuation, drawn lazily.
    Random,
    /// Every legal valuation, via the countermodel solver.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SoundnessConfig {
    pub trials: usize,
    pub max_universe: usize,
    pub seed: u64,
    pub policy: ChoicePolicy,
}

impl Default for SoundnessConfig {
    fn default() -> Self {
        SoundnessConfig { trials: 1000, max_universe: 3, seed: 0, policy: ChoicePolicy::Random }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessFailure {
    pub formula: String,
    pub structure: Structure,
    pub assignment: Assignment,
    pub value: TruthValue,
    pub trace: Vec<TraceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub system: String,
    pub trials: usize,
    pub failures: usize,
    /// The first few failures in full.
    pub examples: Vec<SoundnessFailure>,
}

impl SoundnessReport {
    pub fn is_clean(&self) -> bool {
        self.failures == 0
    }
}

const KEPT_EXAMPLES: usize = 5;

/// Runs `config.trials` trials, each on a fresh instance from `instances`,
/// a random structure of size at most `config.max_universe` and a random
/// assignment (or all of them, under [`ChoicePolicy::Exhaustive`]).
pub fn check_axiom_soundness<G>(
    sys: &SystemSpec,
    mut instances: G,
    config: &SoundnessConfig,
) -> Result<SoundnessReport, SemanticsError>
where
    G: FnMut(&mut ChaCha8Rng) -> Formula,
{
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = SoundnessReport { system: sys.name(), trials: config.trials, failures: 0, examples: Vec::new() };
    for _ in 0..config.trials {
        let f = instances(&mut rng);
        let sig = Signature::of_formula(&f)?;
        let universe = rng.gen_range(1..=config.max_universe.max(1));
        let structure = random_structure(&mut rng, &sig, sys, universe);
        let failure = match config.policy {
            ChoicePolicy::Random => {
                let s = random_assignment(&mut rng, &f, universe);
                let mut ev = Evaluator::new(&structure, sys);
                let n = ev.node(&f, &s)?;
                let v = ev.sample(n, &mut rng);
                (!sys.is_designated(v)).then(|| {
                    let trace = ev.verdict(n, &ev.sampled_valuation()).map(|t| t.trace).unwrap_or_default();
                    SoundnessFailure {
                        formula: f.to_string(),
                        structure: structure.clone(),
                        assignment: s,
                        value: v,
                        trace,
                    }
                })
            }
            ChoicePolicy::Exhaustive => match refute_in(&structure, &f, sys, &[], &Budget::unlimited()) {
                Ok(found) => found.map(|cm| SoundnessFailure {
                    formula: f.to_string(),
                    structure: cm.structure,
                    assignment: cm.assignment,
                    value: cm.value,
                    trace: cm.verdict.trace,
                }),
                Err(SearchError::Semantics(e)) => return Err(e),
                Err(SearchError::Budget(_)) => unreachable!("unlimited budget"),
            },
        };
        if let Some(failure) = failure {
            report.failures += 1;
            if report.examples.len() < KEPT_EXAMPLES {
                report.examples.push(failure);
            }
        }
    }
    Ok(report)
}

fn random_assignment<R: Rng + ?Sized>(rng: &mut R, f: &Formula, universe: usize) -> Assignment {
    free_vars(f).into_iter().map(|x| (x, rng.gen_range(0..universe))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleReport {
    pub system: String,
    pub trials: usize,
    /// Trials in which both premises of modus ponens were true.
    pub mp_applicable: usize,
    /// Trials in which the premise of generalization was true.
    pub gen_applicable: usize,
    pub failures: Vec<String>,
}

/// Whether `f` is designated under every assignment of its free variables
/// in the evaluator's random valuation.
fn sampled_truth<R: Rng + ?Sized>(ev: &mut Evaluator<'_>, f: &Formula, rng: &mut R) -> Result<bool, SemanticsError> {
    let vars: Vec<String> = free_vars(f).into_iter().collect();
    for s in Assignment::all(&vars, ev.structure().universe) {
        let n = ev.node(f, &s)?;
        let v = ev.sample(n, rng);
        if !ev.system().is_designated(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks on random structures and random valuations that modus ponens
/// and generalization preserve truth. Formulas come from `formulas`.
pub fn check_rule_preservation<G>(
    sys: &SystemSpec,
    mut formulas: G,
    config: &SoundnessConfig,
) -> Result<RuleReport, SemanticsError>
where
    G: FnMut(&mut ChaCha8Rng) -> Formula,
{
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = RuleReport {
        system: sys.name(),
        trials: config.trials,
        mp_applicable: 0,
        gen_applicable: 0,
        failures: Vec::new(),
    };
    for _ in 0..config.trials {
        let alpha = formulas(&mut rng);
        let beta = formulas(&mut rng);
        let mut sig = Signature::of_formula(&alpha)?;
        sig.merge(&Signature::of_formula(&beta)?)?;
        let universe = rng.gen_range(1..=config.max_universe.max(1));
        let structure = random_structure(&mut rng, &sig, sys, universe);
        let mut ev = Evaluator::new(&structure, sys);
        let imp = Formula::imp(alpha.clone(), beta.clone());
        let alpha_true = sampled_truth(&mut ev, &alpha, &mut rng)?;
        if alpha_true && sampled_truth(&mut ev, &imp, &mut rng)? {
            report.mp_applicable += 1;
            if !sampled_truth(&mut ev, &beta, &mut rng)? {
                report.failures.push(format!("MP: from {alpha} and {imp} to {beta}"));
            }
        }
        let x = free_vars(&alpha).into_iter().next().unwrap_or_else(|| "x".to_string());
        if alpha_true {
            report.gen_applicable += 1;
            let gen = Formula::forall(&x, alpha.clone());
            if !sampled_truth(&mut ev, &gen, &mut rng)? {
                report.failures.push(format!("Gen: from {alpha} to {gen}"));
            }
        }
    }
    Ok(report)
}
