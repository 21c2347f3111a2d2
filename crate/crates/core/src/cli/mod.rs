//! Command-line interface. Every subcommand is a thin adapter over the
//! library; output goes to the given writers so it can be tested.
//!
//! Exit codes: 0 success (tautology, valid, accepted), 1 a negative verdict
//! (refuted, countermodel, rejected, unsound), 2 usage or input errors, 3 an
//! exhausted budget or enumeration limit.

mod tables;

pub use tables::Tables;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::nmatrix::{QuantifierMode, SystemSpec, TruthValue, ValueSet};
use crate::proofcheck::{axioms_of, check_derivation, random_instance, Axiom, Derivation};
use crate::propositional::{check_tautology, Status};
use crate::semantics::{
    check_axiom_soundness, check_rule_preservation, find_countermodel_pinned, possible_values, random_formula,
    Assignment, Evaluator, FormulaShape, Pin, SearchConfig, SearchOutcome, SoundnessConfig, Structure,
};
use crate::syntax::{alpha_normalize, free_vars, parse_inferred, Formula, Signature};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ivlev", version, about = "Ivlev-style quantified modal logics over finite Nmatrices")]
pub struct Cli {
    /// tm, t4m, t45m, dm or km, optionally with a `-c` suffix for contingent identity.
    #[arg(long, global = true, default_value = "tm")]
    pub system: String,
    #[arg(long, global = true, value_enum, default_value_t = QuantifierArg::Det)]
    pub quantifier: QuantifierArg,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest universe size for searches and random structures.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_domain: usize,
    /// Search step budget for `valid`.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    pub budget: u64,
    /// Worker threads for `valid`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Comma-separated names to read as individual constants.
    #[arg(long, global = true, value_delimiter = ',')]
    pub constants: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantifierArg {
    Nd,
    Det,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChoiceArg {
    /// Every value some legal valuation gives.
    Exact,
    /// The value of one random legal valuation (see --seed).
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the multioperations and quantifier folds of the system.
    Tables,
    /// Decide a propositional formula by enumerating legal valuations.
    Truthtable {
        formula: String,
        /// Stop after this many valuations.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Evaluate a formula in a structure read from a JSON file.
    Eval {
        formula: String,
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, value_enum, default_value_t = ChoiceArg::Exact)]
        choice: ChoiceArg,
    },
    /// Search for a countermodel up to --max-domain.
    Valid {
        formula: String,
        /// Require FORMULA to take VALUE, written FORMULA=VALUE (e.g. `[]P(x)=T+`).
        #[arg(long = "pin")]
        pins: Vec<String>,
        /// Write the countermodel's structure to this file.
        #[arg(long)]
        save_structure: Option<PathBuf>,
    },
    /// Check a derivation file.
    CheckProof { file: PathBuf },
    /// Parse a formula and show its syntactic data.
    Parse { formula: String },
    /// Randomized soundness trials for the axioms and rules of the system.
    Soundness {
        /// Axiom names; all axioms of the system when omitted.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
    sys: SystemSpec,
    base: Signature,
    out: &'a mut dyn Write,
}

/// Why a command stopped early. A closed output pipe ends the command quietly.
pub enum Failure {
    Output(std::io::Error),
    Message(String),
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::Message(message)
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Output(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Output(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
        Err(Failure::Message(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let mode = match cli.quantifier {
        QuantifierArg::Nd => QuantifierMode::Nondeterministic,
        QuantifierArg::Det => QuantifierMode::Deterministic,
    };
    let sys = cli.system.parse::<SystemSpec>().map_err(|e| e.to_string())?.with_quantifier_mode(mode);
    let mut base = Signature::new();
    for c in &cli.constants {
        base.add_constant(c).map_err(|e| e.to_string())?;
    }
    let mut ctx = Ctx { cli, sys, base, out };
    match &cli.command {
        Command::Tables => ctx.tables(),
        Command::Truthtable { formula, limit } => ctx.truthtable(formula, *limit),
        Command::Eval { formula, structure, choice } => ctx.eval(formula, structure, *choice),
        Command::Valid { formula, pins, save_structure } => ctx.valid(formula, pins, save_structure.as_ref()),
        Command::CheckProof { file } => ctx.check_proof(file),
        Command::Parse { formula } => ctx.parse(formula),
        Command::Soundness { axioms, trials } => ctx.soundness(axioms, *trials),
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialize")
}

impl Ctx<'_> {
    fn json(&self) -> bool {
        self.cli.format == OutputFormat::Json
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        let text = text.strip_suffix('\n').unwrap_or(text);
        writeln!(self.out, "{text}").map_err(Failure::Output)
    }

    fn formula(&self, text: &str, base: &Signature) -> Result<(Formula, Signature), String> {
        parse_inferred(text, base).map_err(|e| e.to_string())
    }

    fn tables(&mut self) -> CmdResult {
        let tables = Tables::of(&self.sys).map_err(|e| e.to_string())?;
        let text = if self.json() { serde_json::to_string_pretty(&tables).unwrap() } else { tables.to_text() };
        self.emit(&text)?;
        Ok(EXIT_OK)
    }

    fn truthtable(&mut self, text: &str, limit: Option<u64>) -> CmdResult {
        let (f, _) = self.formula(text, &self.base)?;
        let verdict = check_tautology(&f, &self.sys, limit).map_err(|e| e.to_string())?;
        let code = match verdict.status {
            Status::Holds => EXIT_OK,
            Status::Refuted => EXIT_NEGATIVE,
            Status::Undecided => EXIT_INCONCLUSIVE,
        };
        if self.json() {
            let doc = json!({"system": self.sys.name(), "formula": f.to_string(), "result": verdict});
            self.emit(&pretty(&doc))?;
            return Ok(code);
        }
        let name = self.sys.name();
        let n = verdict.valuations;
        let summary = match verdict.status {
            Status::Holds => format!("tautology in {name} ({n} legal valuations)"),
            Status::Refuted => format!("refuted in {name} (valuation {n} is a counterexample)"),
            Status::Undecided => {
                format!("undecided in {name} after {n} valuations (limit reached)")
            }
        };
        self.emit(&summary)?;
        if let Some(w) = &verdict.witness {
            self.emit(&w.to_string())?;
        }
        Ok(code)
    }

    fn eval(&mut self, text: &str, path: &PathBuf, choice: ChoiceArg) -> CmdResult {
        let doc = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let structure = Structure::from_json(&doc).map_err(|e| e.to_string())?;
        let mut base = self.base.clone();
        for c in structure.constants.keys() {
            if !base.is_constant(c) {
                base.add_constant(c).map_err(|e| e.to_string())?;
            }
        }
        let (f, sig) = self.formula(text, &base)?;
        structure.validate(&sig, &self.sys).map_err(|e| e.to_string())?;
        let vars: Vec<String> = free_vars(&f).into_iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.cli.seed);
        let mut ev = Evaluator::new(&structure, &self.sys);
        let mut rows = Vec::new();
        for s in Assignment::all(&vars, structure.universe) {
            let values = match choice {
                ChoiceArg::Exact => possible_values(&structure, &s, &f, &self.sys).map_err(|e| e.to_string())?,
                ChoiceArg::Random => {
                    let n = ev.node(&f, &s).map_err(|e| e.to_string())?;
                    ValueSet::single(ev.sample(n, &mut rng))
                }
            };
            rows.push((s, values));
        }
        let designated = self.sys.designated();
        let truth = if rows.iter().all(|(_, v)| v.is_subset(designated)) {
            "true"
        } else if rows.iter().any(|(_, v)| v.intersect(designated).is_empty()) {
            "false"
        } else {
            "depends on the valuation"
        };
        if self.json() {
            let rows: Vec<_> = rows.iter().map(|(s, v)| json!({"assignment": s, "values": v})).collect();
            let doc = json!({"system": self.sys.name(), "formula": f.to_string(), "rows": rows, "truth": truth});
            self.emit(&pretty(&doc))?;
        } else {
            for (s, v) in &rows {
                if vars.is_empty() {
                    self.emit(&format!("{f}: {v}"))?;
                } else {
                    self.emit(&format!("{s}: {v}"))?;
                }
            }
            self.emit(&format!("truth: {truth}"))?;
        }
        Ok(EXIT_OK)
    }

    fn valid(&mut self, text: &str, pin_texts: &[String], save: Option<&PathBuf>) -> CmdResult {
        let (f, mut sig) = self.formula(text, &self.base)?;
        let mut pins = Vec::new();
        for p in pin_texts {
            let (formula, value) =
                p.rsplit_once('=').ok_or_else(|| format!("pin `{p}` is not of the form FORMULA=VALUE"))?;
            let value: TruthValue = value.trim().parse().map_err(|e: crate::nmatrix::ParseValueError| e.to_string())?;
            let (formula, extended) = self.formula(formula, &sig)?;
            sig = extended;
            pins.push(Pin::new(formula, value));
        }
        let config = SearchConfig { max_universe: self.cli.max_domain, budget: self.cli.budget, jobs: self.cli.jobs };
        let outcome = find_countermodel_pinned(&f, &sig, &self.sys, &config, &pins).map_err(|e| e.to_string())?;
        let name = self.sys.to_string();
        let (code, doc, summary) = match &outcome {
            SearchOutcome::NoCountermodel { max_universe, structures } => (
                EXIT_OK,
                json!({"verdict": "valid_up_to_bound", "max_universe": max_universe, "structures": structures}),
                format!("valid up to universe size {max_universe} in {name} ({structures} structures)"),
            ),
            SearchOutcome::BudgetExhausted { universe, structures } => (
                EXIT_INCONCLUSIVE,
                json!({"verdict": "budget_exhausted", "universe": universe, "structures": structures}),
                format!("budget exhausted at universe size {universe} after {structures} structures"),
            ),
            SearchOutcome::Countermodel(cm) => {
                if let Some(path) = save {
                    std::fs::write(path, cm.structure.to_json() + "\n")
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                }
                let trace: Vec<String> =
                    cm.verdict.trace.iter().map(|t| format!("  {} = {}", t.fingerprint, t.value)).collect();
                (
                    EXIT_NEGATIVE,
                    json!({"verdict": "countermodel", "countermodel": **cm}),
                    format!(
                        "countermodel in {name} (universe size {})\nstructure: {}\nassignment: {}\nvalue: {}\nchoices:\n{}",
                        cm.structure.universe,
                        serde_json::to_string(&cm.structure).unwrap(),
                        cm.assignment,
                        cm.value,
                        trace.join("\n")
                    ),
                )
            }
        };
        if self.json() {
            let mut doc = doc;
            doc["system"] = json!(self.sys.name());
            doc["quantifier"] = json!(self.sys.quantifier_mode().to_string());
            doc["formula"] = json!(f.to_string());
            self.emit(&pretty(&doc))?;
        } else {
            self.emit(&summary)?;
        }
        Ok(code)
    }

    fn check_proof(&mut self, path: &PathBuf) -> CmdResult {
        let doc = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let deriv = Derivation::from_json(&doc).map_err(|e| e.to_string())?;
        let report = check_derivation(&deriv);
        let text = if self.json() { report.to_json() } else { report.to_string() };
        self.emit(&text)?;
        Ok(if report.is_accepted() { EXIT_OK } else { EXIT_NEGATIVE })
    }

    fn parse(&mut self, text: &str) -> CmdResult {
        let (f, sig) = self.formula(text, &self.base)?;
        let free: Vec<String> = free_vars(&f).into_iter().collect();
        let predicates: Vec<String> = sig.predicates().map(|(p, n)| format!("{p}/{n}")).collect();
        let functions: Vec<String> = sig.functions().map(|(g, n)| format!("{g}/{n}")).collect();
        let constants: Vec<&str> = sig.constants().collect();
        if self.json() {
            let doc = json!({
                "formula": f.to_string(),
                "normal_form": alpha_normalize(&f).to_string(),
                "free_variables": free,
                "connectives": f.connectives(),
                "binders": f.binders(),
                "propositional": f.is_propositional(),
                "predicates": predicates,
                "functions": functions,
                "constants": constants,
            });
            self.emit(&pretty(&doc))?;
        } else {
            self.emit(&format!("formula: {f}"))?;
            self.emit(&format!("normal form: {}", alpha_normalize(&f)))?;
            self.emit(&format!("free variables: {}", free.join(", ")))?;
            self.emit(&format!("connectives: {}, binders: {}", f.connectives(), f.binders()))?;
            self.emit(&format!("propositional: {}", f.is_propositional()))?;
            self.emit(&format!("predicates: {}", predicates.join(", ")))?;
            if !functions.is_empty() {
                self.emit(&format!("functions: {}", functions.join(", ")))?;
            }
            if !constants.is_empty() {
                self.emit(&format!("constants: {}", constants.join(", ")))?;
            }
        }
        Ok(EXIT_OK)
    }

    fn soundness(&mut self, names: &[String], trials: usize) -> CmdResult {
        let axioms: Vec<Axiom> = if names.is_empty() {
            axioms_of(&self.sys)
        } else {
            names.iter().map(|n| n.parse::<Axiom>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?
        };
        let sig = Signature::new().with_predicate("P", 1).with_predicate("R", 2).with_constant("c");
        let shape = FormulaShape::default();
        let config =
            SoundnessConfig { trials, max_universe: self.cli.max_domain, seed: self.cli.seed, ..Default::default() };
        let mut clean = true;
        let mut rows = Vec::new();
        for axiom in axioms {
            let report = check_axiom_soundness(&self.sys, |rng| random_instance(rng, axiom, &sig, &shape), &config)
                .map_err(|e| e.to_string())?;
            clean &= report.is_clean();
            rows.push((axiom, report));
        }
        let rules = check_rule_preservation(&self.sys, |rng| random_formula(rng, &sig, &shape), &config)
            .map_err(|e| e.to_string())?;
        clean &= rules.failures.is_empty();
        if self.json() {
            let axioms: Vec<_> = rows.iter().map(|(a, r)| json!({"axiom": a, "report": r})).collect();
            self.emit(&pretty(&json!({"system": self.sys.name(), "axioms": axioms, "rules": rules})))?;
        } else {
            for (a, r) in &rows {
                self.emit(&format!("{:<4} {} trials, {} undesignated", a.name(), r.trials, r.failures))?;
                if let Some(e) = r.examples.first() {
                    self.emit(&format!("     e.g. {} = {} at {}", e.formula, e.value, e.assignment))?;
                }
            }
            self.emit(&format!(
                "MP/Gen {} trials ({} MP and {} Gen applicable), {} failures",
                rules.trials,
                rules.mp_applicable,
                rules.gen_applicable,
                rules.failures.len()
            ))?;
        }
        Ok(if clean { EXIT_OK } else { EXIT_NEGATIVE })
    }
}
