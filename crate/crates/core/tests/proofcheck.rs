use std::path::PathBuf;

use ivlev::nmatrix::{IdentityMode, QuantifierMode, SystemSpec};
use ivlev::proofcheck::{
    axioms_of, check_derivation, match_axiom, random_instance, Axiom, CheckReport, Derivation, Verdict,
};
use ivlev::propositional::is_tautology;
use ivlev::semantics::{check_axiom_soundness, find_countermodel, FormulaShape, SearchConfig, SoundnessConfig};
use ivlev::syntax::{parse_inferred, Formula, Signature};

fn fixture(name: &str) -> Derivation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/proofs").join(format!("{name}.json"));
    Derivation::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn check(name: &str) -> CheckReport {
    check_derivation(&fixture(name))
}

fn rejected_at(report: &CheckReport) -> (usize, String) {
    match &report.verdict {
        Verdict::Rejected { step, reason } => (*step, reason.clone()),
        Verdict::Accepted => panic!("expected a rejection:\n{report}"),
    }
}

#[test]
fn box_implies_diamond_is_derivable() {
    let r = check("box_implies_diamond");
    assert!(r.is_accepted(), "{r}");
    assert_eq!(r.conclusion.as_deref(), Some("[]A -> <>A"));
    assert!(r.premises.is_empty());
}

#[test]
fn axiom_group_fixtures_are_accepted() {
    for name in ["quantifier", "identity", "modal", "barcan", "contingent", "iteration", "deontic", "inferred_axiom"] {
        let r = check(name);
        assert!(r.is_accepted(), "{name}:\n{r}");
    }
    let r = check("quantifier");
    assert_eq!(r.conclusion.as_deref(), Some("(forall x. P(x)) -> forall y. P(y)"));
    let r = check("identity");
    assert_eq!(r.steps[1].binding.as_ref().unwrap().term.as_ref().unwrap().to_string(), "c");
    let r = check("inferred_axiom");
    assert_eq!(r.steps[0].axiom, Some(Axiom::Ax1));
    assert_eq!(r.steps[1].axiom, Some(Axiom::T));
    assert!(r.steps[0].justification.contains("inferred"));
}

#[test]
fn dmt_ledger_tracks_generalized_premise_variables() {
    let r = check("gen_dmt");
    assert!(r.is_accepted(), "{r}");
    assert_eq!(r.premises[0].generalized, vec!["x"]);
    assert!(!r.premises[0].dischargeable);
    // generalizing y over the sentence Q does not block its discharge
    assert_eq!(r.premises[1].generalized, vec!["y"]);
    assert!(r.premises[1].dischargeable);
    assert_eq!(r.steps[3].depends_on, vec![1]);
    assert!(check("modal").premises[0].dischargeable);
}

#[test]
fn one_rejection_per_rule() {
    let r = check("reject_axiom");
    let (step, reason) = rejected_at(&r);
    assert_eq!(step, 1);
    assert!(reason.contains("not an axiom of tm-c"), "{reason}");

    let r = check("reject_axiom_side_condition");
    let (step, reason) = rejected_at(&r);
    assert_eq!(step, 2);
    assert!(reason.contains("not free for"), "{reason}");
    assert_eq!(r.steps.len(), 1);

    let r = check("reject_nbf_nd");
    assert_eq!(rejected_at(&r).0, 2);

    let (step, reason) = rejected_at(&check("reject_premise"));
    assert_eq!(step, 2);
    assert!(reason.contains("premise 1 is"), "{reason}");

    let (step, reason) = rejected_at(&check("reject_mp"));
    assert_eq!(step, 3);
    assert!(reason.contains("step 1 (`[]A`) is not an implication"), "{reason}");

    let (step, reason) = rejected_at(&check("reject_gen"));
    assert_eq!(step, 2);
    assert!(reason.contains("forall x."), "{reason}");
}

#[test]
fn checking_is_deterministic() {
    for name in ["box_implies_diamond", "gen_dmt", "reject_mp"] {
        let d = fixture(name);
        assert_eq!(check_derivation(&d), check_derivation(&d.clone()));
        assert_eq!(check_derivation(&d).to_json(), check_derivation(&d).to_json());
    }
}

fn canonical(axiom: Axiom) -> Formula {
    let text = match axiom {
        Axiom::Ax1 => "A -> (B -> A)",
        Axiom::Ax2 => "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
        Axiom::Ax3 => "(~B -> ~A) -> ((~B -> A) -> B)",
        Axiom::Ax4 => "(forall x. P(x)) -> P(z)",
        Axiom::Ax5 => "(forall x. (A -> P(x))) -> (A -> forall x. P(x))",
        Axiom::Ax6 => "(forall x. P(x)) -> forall y. P(y)",
        Axiom::Ax7 => "forall x. x = x",
        Axiom::Ax8 => "x = y -> (R(x, x) -> R(x, y))",
        Axiom::NecEq => "x = y -> [](x = y)",
        Axiom::PossEq => "~(x = y) -> []~(x = y)",
        Axiom::ContEq1 => "~[](x =c y)",
        Axiom::ContEq2 => "~[]~(x =c y)",
        Axiom::K => "[](A -> B) -> ([]A -> []B)",
        Axiom::K1 => "[](A -> B) -> (<>A -> <>B)",
        Axiom::K2 => "<>(A -> B) -> ([]A -> <>B)",
        Axiom::M1 => "[]~A -> [](A -> B)",
        Axiom::M2 => "[]B -> [](A -> B)",
        Axiom::M3 => "<>B -> <>(A -> B)",
        Axiom::M4 => "<>~A -> <>(A -> B)",
        Axiom::T => "[]A -> A",
        Axiom::D => "[]A -> <>A",
        Axiom::DN1 => "[]A -> []~~A",
        Axiom::DN2 => "[]~~A -> []A",
        Axiom::BF => "(forall x. []P(x)) -> []forall x. P(x)",
        Axiom::CBF => "([]forall x. P(x)) -> forall x. []P(x)",
        Axiom::NBF => "(forall x. <>P(x)) -> <>forall x. P(x)",
        Axiom::PBF => "(<>forall x. P(x)) -> forall x. <>P(x)",
        Axiom::Four => "[]A -> [][]A",
        Axiom::Five => "<>[]A -> []A",
    };
    parse_inferred(text, &Signature::new()).unwrap().0
}

#[test]
fn canonical_instances_match_only_their_own_schema() {
    for a in Axiom::ALL {
        let f = canonical(a);
        assert!(match_axiom(&f, a).is_some(), "{a} does not match its own instance {f}");
        for b in Axiom::ALL.into_iter().filter(|&b| b != a) {
            assert!(match_axiom(&f, b).is_none(), "instance {f} of {a} also matches {b}");
        }
    }
    // a formula of the form φ → φ is an instance of both Ax4 and Ax6
    let f = parse_inferred("(forall x. A) -> A", &Signature::new()).unwrap().0;
    assert!(match_axiom(&f, Axiom::Ax4).is_some() && match_axiom(&f, Axiom::Ax6).is_some());
}

#[test]
fn accepted_theorems_pass_soundness_trials() {
    let config = SoundnessConfig { trials: 200, ..Default::default() };
    for name in ["box_implies_diamond", "quantifier", "identity", "barcan", "contingent"] {
        let d = fixture(name);
        let r = check_derivation(&d);
        assert!(r.is_accepted());
        for step in &d.steps {
            let f = step.formula.clone();
            let report = check_axiom_soundness(&d.system, |_| f.clone(), &config).unwrap();
            assert!(report.is_clean(), "{name}: {} fails: {:?}", step.formula, report.examples.first());
        }
        let last = &d.steps.last().unwrap().formula;
        let sig = Signature::of_formula(last).unwrap();
        let outcome =
            find_countermodel(last, &sig, &d.system, &SearchConfig { max_universe: 2, ..Default::default() }).unwrap();
        assert!(outcome.is_valid_up_to_bound(), "{name}: {last}");
    }
}

#[test]
fn every_schema_of_every_system_is_sound_on_random_instances() {
    let sig = Signature::new().with_predicate("P", 1).with_predicate("R", 2).with_constant("c");
    let shape = FormulaShape::default();
    let config = SoundnessConfig { trials: 60, seed: 5, ..Default::default() };
    for base in [SystemSpec::tm(), SystemSpec::t4m(), SystemSpec::t45m(), SystemSpec::dm(), SystemSpec::km()] {
        for identity in [IdentityMode::Necessary, IdentityMode::Contingent] {
            for quantifier in [QuantifierMode::Deterministic, QuantifierMode::Nondeterministic] {
                let sys = base.with_identity_mode(identity).with_quantifier_mode(quantifier);
                for axiom in axioms_of(&sys) {
                    let report =
                        check_axiom_soundness(&sys, |rng| random_instance(rng, axiom, &sig, &shape), &config).unwrap();
                    assert!(report.is_clean(), "{sys} {axiom}: {:?}", report.examples.first().map(|e| &e.formula));
                }
            }
        }
    }
}

#[test]
fn schemas_left_out_of_km_are_refuted_there() {
    let km = SystemSpec::km();
    for axiom in [Axiom::K, Axiom::K1, Axiom::M3, Axiom::M4] {
        let (holds, witness) = is_tautology(&canonical(axiom), &km).unwrap();
        assert!(!holds && witness.is_some(), "{axiom}");
        assert!(is_tautology(&canonical(axiom), &SystemSpec::dm()).unwrap().0, "{axiom} in dm");
    }
    let cbf = canonical(Axiom::CBF);
    let sig = Signature::of_formula(&cbf).unwrap();
    let outcome = find_countermodel(&cbf, &sig, &km, &SearchConfig { max_universe: 2, ..Default::default() }).unwrap();
    let cm = outcome.countermodel().expect("CBF countermodel in km");
    assert_eq!(cm.structure.universe, 2);
}
