use ivlev::nmatrix::{QuantifierMode, SystemSpec, TruthValue::*};
use ivlev::semantics::{find_countermodel, find_countermodel_pinned, Pin, SearchConfig, SearchOutcome, Structure};
use ivlev::syntax::{parse_formula, Formula, Signature};

fn sig() -> Signature {
    Signature::new().with_predicate("P", 1)
}

fn p(text: &str) -> Formula {
    parse_formula(text, &sig()).unwrap()
}

fn nd() -> SystemSpec {
    SystemSpec::tm().with_quantifier_mode(QuantifierMode::Nondeterministic)
}

fn search(f: &str, sys: &SystemSpec, max_universe: usize) -> SearchOutcome {
    let config = SearchConfig { max_universe, ..SearchConfig::default() };
    find_countermodel(&p(f), &sig(), sys, &config).unwrap()
}

const BF: &str = "(forall x. []P(x)) -> []forall x. P(x)";
const CBF: &str = "([]forall x. P(x)) -> forall x. []P(x)";
const NBF: &str = "(forall x. <>P(x)) -> <>forall x. P(x)";
const PBF: &str = "(<>forall x. P(x)) -> forall x. <>P(x)";

#[test]
fn barcan_family_holds_with_deterministic_quantifiers() {
    for f in [BF, CBF, NBF, PBF] {
        assert!(search(f, &SystemSpec::tm(), 3).is_valid_up_to_bound(), "{f}");
    }
}

#[test]
fn nondeterministic_quantifiers_only_lose_nbf() {
    for f in [BF, CBF, PBF] {
        assert!(search(f, &nd(), 3).is_valid_up_to_bound(), "{f}");
    }
    let out = search(NBF, &nd(), 3);
    let cm = out.countermodel().expect("NBF fails");
    assert_eq!(cm.structure.universe, 2);
}

#[test]
fn nbf_scenario_with_actual_inside_contingent() {
    // a(P) = {0}, c(P) = U: the instances of P(x) take C+ and C-
    let a = Structure::new(2).with_pair("P", &[&[0]], &[&[0], &[1]]);
    let pins = [Pin::new(p("<>forall x. P(x)"), CNeg)];
    let budget = ivlev::semantics::Budget::unlimited();
    let cm = ivlev::semantics::refute_in(&a, &p(NBF), &nd(), &pins, &budget).unwrap().expect("refuted");
    assert_eq!(cm.valuation.value_of(&a, &cm.assignment, &p("<>forall x. P(x)")).unwrap(), Some(CNeg));
    assert!(ivlev::semantics::refute_in(&a, &p(NBF), &SystemSpec::tm(), &[], &budget).unwrap().is_none());
}

#[test]
fn iterated_barcan_fails_with_quoted_choices() {
    let config = SearchConfig { max_universe: 1, ..SearchConfig::default() };
    let bf2 = p("(forall x. [][]P(x)) -> [][]forall x. P(x)");
    let pins = [Pin::new(p("[]P(x)"), TPos), Pin::new(p("[]forall x. P(x)"), CPos)];
    let out = find_countermodel_pinned(&bf2, &sig(), &SystemSpec::tm(), &config, &pins).unwrap();
    let cm = out.countermodel().expect("BF2 fails");
    assert_eq!(cm.structure, Structure::new(1).with_pair("P", &[&[0]], &[]));

    let cbf2 = p("([][]forall x. P(x)) -> forall x. [][]P(x)");
    let pins = [Pin::new(p("[]P(x)"), CPos), Pin::new(p("[]forall x. P(x)"), TPos)];
    let out = find_countermodel_pinned(&cbf2, &sig(), &SystemSpec::tm(), &config, &pins).unwrap();
    let cm = out.countermodel().expect("CBF2 fails");
    assert_eq!(cm.structure, Structure::new(1).with_pair("P", &[&[0]], &[]));
}
