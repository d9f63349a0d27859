//! `exchg`: command-line front end for the exchangeability toolkit.
//!
//! Reports go to standard output as deterministic JSON (sorted keys);
//! diagnostics and timing go to standard error.  Exit codes: 0 for
//! pass/success verdicts, 1 for violated axioms or incoherence (with a
//! certificate in the report), 2 for usage or format errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use exchg_core::bernstein;
use exchg_core::choice;
use exchg_core::countable::{self, Horizon};
use exchg_core::counts;
use exchg_core::desirability::{self, Coherence, ConeMembership, Exchangeability};
use exchg_core::gamble::Gamble;
use exchg_core::json::{
    self, AssessmentJson, BernsteinPolyJson, ChoiceTableJson, CountGambleJson,
    CountableAssessmentJson, GambleJson,
};
use exchg_core::oracles;
use exchg_core::permutations;
use exchg_core::rational::{self, Rational};
use exchg_core::{Error, OutcomeSpace, SequenceSpace};

#[derive(Parser)]
#[command(name = "exchg", version, about = "Exchangeability checks for choice functions and desirable gambles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project a gamble onto its permutation-invariant representative.
    Project {
        /// Gamble JSON file.
        #[arg(long)]
        gamble: PathBuf,
    },
    /// Map a gamble to its count-space or polynomial representation.
    Represent {
        #[arg(long)]
        gamble: PathBuf,
        #[arg(long, value_enum, default_value_t = Form::Count)]
        form: Form,
    },
    /// Lift a count gamble back to its invariant sequence gamble.
    Lift {
        /// Count-gamble JSON file.
        #[arg(long)]
        count_gamble: PathBuf,
    },
    /// Sets of desirable gambles.
    Desirability {
        #[command(subcommand)]
        action: DesirabilityAction,
    },
    /// Finite-domain choice tables.
    Choice {
        #[command(subcommand)]
        action: ChoiceAction,
    },
    /// The horizon-bounded countable layer.
    Countable {
        #[command(subcommand)]
        action: CountableAction,
    },
    /// Built-in property suites.
    Suite {
        #[command(subcommand)]
        action: SuiteAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Count,
    Poly,
}

#[derive(Subcommand)]
enum DesirabilityAction {
    /// Coherence and exchangeability of an assessment.
    Check {
        #[arg(long)]
        assessment: PathBuf,
        /// Cross-check the verdict with the brute-force oracles.
        #[arg(long)]
        verify: bool,
    },
    /// The representing count or polynomial assessment.
    Represent {
        #[arg(long)]
        assessment: PathBuf,
        #[arg(long, value_enum, default_value_t = Form::Count)]
        form: Form,
    },
}

#[derive(Subcommand)]
enum ChoiceAction {
    /// Rationality axioms and indifference compatibility of a table.
    Check {
        #[arg(long)]
        table: PathBuf,
        /// Comma-separated positive scalars for the scaling axiom.
        #[arg(long, default_value = "1/2,1,2")]
        scalars: String,
        /// Re-derive the compatibility verdict through the representation
        /// round trip.
        #[arg(long)]
        verify: bool,
    },
    /// The representing choice table over count gambles or polynomials.
    Represent {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_enum, default_value_t = Form::Count)]
        form: Form,
    },
}

#[derive(Subcommand)]
enum CountableAction {
    /// Per-degree exchangeability of a finite-structure assessment.
    Check {
        #[arg(long)]
        assessment: PathBuf,
        #[arg(long, default_value_t = countable::DEFAULT_HORIZON)]
        horizon: usize,
    },
    /// The union-of-degrees polynomial representation.
    Represent {
        #[arg(long)]
        assessment: PathBuf,
        #[arg(long, default_value_t = countable::DEFAULT_HORIZON)]
        horizon: usize,
    },
}

#[derive(Subcommand)]
enum SuiteAction {
    /// Run a named property suite.
    Run {
        #[arg(long)]
        name: String,
    },
}

/// Verdict exit policy: `Pass` -> 0, `Fail` -> 1 (certificate included in
/// the report).  Usage/format problems surface as `Error` -> 2.
enum Outcome {
    Pass(Value),
    Fail(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(&cli.command);
    eprintln!("timing_ms: {}", started.elapsed().as_millis());
    match result {
        Ok(Outcome::Pass(report)) => {
            print_report(&report);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(report)) => {
            print_report(&report);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_report(report: &Value) {
    // serde_json maps are BTree-backed: keys come out sorted, so equal
    // inputs produce byte-identical reports.
    println!("{}", serde_json::to_string_pretty(report).unwrap());
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))
}

/// FNV-1a over the input bytes; stamped into every report.
fn digest(text: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// The permutation cap, overridable through EXCHG_MAX_N.
fn permutation_cap() -> Result<usize, Error> {
    match std::env::var("EXCHG_MAX_N") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| Error::BadInput(format!("EXCHG_MAX_N must be an integer, got {raw:?}"))),
        Err(_) => Ok(permutations::DEFAULT_PERMUTATION_CAP),
    }
}

fn rationals_json(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(rational::format(v)))
            .collect(),
    )
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Project { gamble } => {
            let text = read_file(gamble)?;
            let f = json::from_str::<GambleJson>(&text)?.to_gamble()?;
            let ex = permutations::symmetrize_with_cap(&f, permutation_cap()?)?;
            Ok(Outcome::Pass(json!({
                "command": "project",
                "input_digest": digest(&text),
                "result": serde_json::to_value(GambleJson::of(&ex)).unwrap(),
            })))
        }
        Command::Represent { gamble, form } => {
            let text = read_file(gamble)?;
            let f = json::from_str::<GambleJson>(&text)?.to_gamble()?;
            let result = match form {
                Form::Count => {
                    serde_json::to_value(CountGambleJson::of(&counts::hy_map(&f)?)).unwrap()
                }
                Form::Poly => {
                    serde_json::to_value(BernsteinPolyJson::of(&bernstein::mn_map(&f)?)).unwrap()
                }
            };
            Ok(Outcome::Pass(json!({
                "command": "represent",
                "input_digest": digest(&text),
                "result": result,
            })))
        }
        Command::Lift { count_gamble } => {
            let text = read_file(count_gamble)?;
            let g = json::from_str::<CountGambleJson>(&text)?.to_count_gamble()?;
            let f = counts::lift_count_gamble(&g)?;
            Ok(Outcome::Pass(json!({
                "command": "lift",
                "input_digest": digest(&text),
                "result": serde_json::to_value(GambleJson::of(&f)).unwrap(),
            })))
        }
        Command::Desirability { action } => run_desirability(action),
        Command::Choice { action } => run_choice(action),
        Command::Countable { action } => run_countable(action),
        Command::Suite { action } => run_suite(action),
    }
}

fn run_desirability(action: &DesirabilityAction) -> Result<Outcome, Error> {
    match action {
        DesirabilityAction::Check { assessment, verify } => {
            let text = read_file(assessment)?;
            let a = json::from_str::<AssessmentJson>(&text)?.to_generator_set()?;
            let coherence = desirability::is_coherent(&a)?;
            let mut report = json!({
                "command": "desirability check",
                "input_digest": digest(&text),
            });
            let obj = report.as_object_mut().unwrap();
            match &coherence {
                Coherence::Incoherent { lambda } => {
                    obj.insert("coherent".into(), json!(false));
                    obj.insert("certificate_lambda".into(), rationals_json(lambda));
                    return Ok(Outcome::Fail(report));
                }
                Coherence::Coherent => {
                    obj.insert("coherent".into(), json!(true));
                }
            }
            let verdict = desirability::is_exchangeable(&a)?;
            let exchangeable = verdict.is_exchangeable();
            obj.insert("exchangeable".into(), json!(exchangeable));
            if let Exchangeability::NotExchangeable { failing, lambda } = &verdict {
                obj.insert("failing_generator".into(), json!(failing));
                obj.insert("certificate_lambda".into(), rationals_json(lambda));
            }
            if *verify {
                let brute = oracles::brute_exchangeable(&a)?;
                obj.insert("verified".into(), json!(brute == exchangeable));
                if brute != exchangeable {
                    obj.insert(
                        "verify_note".into(),
                        json!("oracle disagrees with the LP verdict"),
                    );
                    return Ok(Outcome::Fail(report));
                }
            }
            if exchangeable {
                Ok(Outcome::Pass(report))
            } else {
                Ok(Outcome::Fail(report))
            }
        }
        DesirabilityAction::Represent { assessment, form } => {
            let text = read_file(assessment)?;
            let a = json::from_str::<AssessmentJson>(&text)?.to_generator_set()?;
            let result = match form {
                Form::Count => {
                    let rep = desirability::represent_desirability(&a)?;
                    serde_json::to_value(json::CountAssessmentJson::of(&rep)).unwrap()
                }
                Form::Poly => {
                    let rep = desirability::represent_desirability_poly(&a)?;
                    Value::Array(
                        rep.iter()
                            .map(|p| serde_json::to_value(BernsteinPolyJson::of(p)).unwrap())
                            .collect(),
                    )
                }
            };
            Ok(Outcome::Pass(json!({
                "command": "desirability represent",
                "input_digest": digest(&text),
                "result": result,
            })))
        }
    }
}

fn parse_scalars(raw: &str) -> Result<Vec<Rational>, Error> {
    raw.split(',')
        .map(|s| {
            let v = rational::parse(s.trim())?;
            if v <= rational::zero() {
                return Err(Error::BadInput(format!("scalars must be positive, got {s:?}")));
            }
            Ok(v)
        })
        .collect()
}

fn violations_json(report: &choice::AxiomReport) -> Value {
    Value::Array(
        report
            .violations
            .iter()
            .map(|v| json!({"axiom": v.axiom.to_string(), "instance": v.instance}))
            .collect(),
    )
}

fn run_choice(action: &ChoiceAction) -> Result<Outcome, Error> {
    match action {
        ChoiceAction::Check {
            table,
            scalars,
            verify,
        } => {
            let text = read_file(table)?;
            let t = json::from_str::<ChoiceTableJson>(&text)?.to_choice_table()?;
            let scalars = parse_scalars(scalars)?;
            let axioms = choice::check_coherence_axioms(&t, &scalars)?;
            let compat = choice::check_indifference_compatibility(&t)?;
            let mut report = json!({
                "command": "choice check",
                "input_digest": digest(&text),
                "axioms_pass": axioms.passed(),
                "axiom_violations": violations_json(&axioms),
                "compatible": compat.passed(),
                "compatibility_violations": violations_json(&compat),
            });
            let obj = report.as_object_mut().unwrap();
            if *verify {
                // Independent route: compatibility must coincide with an
                // exact representation round trip.
                let round_trip_exact = match choice::represent_choice(&t) {
                    Err(Error::RepresentationConflict(_)) => false,
                    Err(e) => return Err(e),
                    Ok(rep) => t.entries().iter().all(|e| {
                        let options: Vec<Gamble> = e
                            .options
                            .iter()
                            .map(|&i| t.pool().options()[i].clone())
                            .collect();
                        let chosen: Vec<Gamble> = e
                            .chosen
                            .iter()
                            .map(|&i| t.pool().options()[i].clone())
                            .collect();
                        matches!(
                            choice::reconstruct_choice(&rep, &options),
                            Ok(r) if r == chosen
                        )
                    }),
                };
                obj.insert("verified".into(), json!(round_trip_exact == compat.passed()));
            }
            if axioms.passed() && compat.passed() {
                Ok(Outcome::Pass(report))
            } else {
                Ok(Outcome::Fail(report))
            }
        }
        ChoiceAction::Represent { table, form } => {
            let text = read_file(table)?;
            let t = json::from_str::<ChoiceTableJson>(&text)?.to_choice_table()?;
            let result = match form {
                Form::Count => {
                    let rep = choice::represent_choice(&t)?;
                    Value::Array(
                        rep.entries()
                            .iter()
                            .map(|(key, value)| {
                                json!({
                                    "options": key
                                        .iter()
                                        .map(|g| serde_json::to_value(CountGambleJson::of(g)).unwrap())
                                        .collect::<Vec<_>>(),
                                    "chosen": value
                                        .iter()
                                        .map(|g| serde_json::to_value(CountGambleJson::of(g)).unwrap())
                                        .collect::<Vec<_>>(),
                                })
                            })
                            .collect(),
                    )
                }
                Form::Poly => {
                    let rep = choice::represent_choice_poly(&t)?;
                    Value::Array(
                        rep.entries()
                            .iter()
                            .map(|(key, value)| {
                                json!({
                                    "options": key
                                        .iter()
                                        .map(|p| serde_json::to_value(BernsteinPolyJson::of(p)).unwrap())
                                        .collect::<Vec<_>>(),
                                    "chosen": value
                                        .iter()
                                        .map(|p| serde_json::to_value(BernsteinPolyJson::of(p)).unwrap())
                                        .collect::<Vec<_>>(),
                                })
                            })
                            .collect(),
                    )
                }
            };
            Ok(Outcome::Pass(json!({
                "command": "choice represent",
                "input_digest": digest(&text),
                "result": result,
            })))
        }
    }
}

fn horizon_report_json(r: &countable::HorizonReport) -> Value {
    json!({
        "horizon": r.horizon,
        "passed": r.passed(),
        "degrees": r
            .degrees
            .iter()
            .map(|d| json!({"degree": d.degree, "passed": d.passed, "detail": d.detail}))
            .collect::<Vec<_>>(),
    })
}

fn run_countable(action: &CountableAction) -> Result<Outcome, Error> {
    match action {
        CountableAction::Check {
            assessment,
            horizon,
        } => {
            let text = read_file(assessment)?;
            let (base, gens) = json::from_str::<CountableAssessmentJson>(&text)?.to_parts()?;
            let report = countable::check_countable_exchangeable_desirability(
                &base,
                &gens,
                Horizon::new(*horizon)?,
            )?;
            let body = json!({
                "command": "countable check",
                "input_digest": digest(&text),
                "report": horizon_report_json(&report),
            });
            if report.passed() {
                Ok(Outcome::Pass(body))
            } else {
                Ok(Outcome::Fail(body))
            }
        }
        CountableAction::Represent {
            assessment,
            horizon,
        } => {
            let text = read_file(assessment)?;
            let (base, gens) = json::from_str::<CountableAssessmentJson>(&text)?.to_parts()?;
            let polys = countable::countable_represent_desirability(
                &base,
                &gens,
                Horizon::new(*horizon)?,
            )?;
            Ok(Outcome::Pass(json!({
                "command": "countable represent",
                "input_digest": digest(&text),
                "horizon": horizon,
                "result": polys
                    .generators
                    .iter()
                    .map(|p| serde_json::to_value(BernsteinPolyJson::of(p)).unwrap())
                    .collect::<Vec<_>>(),
            })))
        }
    }
}

fn run_suite(action: &SuiteAction) -> Result<Outcome, Error> {
    let SuiteAction::Run { name } = action;
    let checks: Vec<(String, bool)> = match name.as_str() {
        "prop-ex" => suite_prop_ex()?,
        "inverse-pair" => suite_inverse_pair()?,
        "order-iso" => suite_order_iso()?,
        other => {
            return Err(Error::BadInput(format!(
                "unknown suite {other:?}; available: prop-ex, inverse-pair, order-iso"
            )))
        }
    };
    let passed = checks.iter().all(|(_, ok)| *ok);
    let report = json!({
        "command": "suite run",
        "suite": name,
        "passed": passed,
        "checks": checks
            .iter()
            .map(|(label, ok)| json!({"check": label, "passed": ok}))
            .collect::<Vec<_>>(),
    });
    if passed {
        Ok(Outcome::Pass(report))
    } else {
        Ok(Outcome::Fail(report))
    }
}

/// A small deterministic gamble corpus for the built-in suites.
fn suite_corpus() -> Result<Vec<Gamble>, Error> {
    let mut corpus = Vec::new();
    for (labels, n) in [(vec!["a", "b"], 2), (vec!["a", "b"], 3), (vec!["a", "b", "c"], 2)] {
        let base: Arc<OutcomeSpace> = OutcomeSpace::new(labels)?;
        let space = SequenceSpace::new(base, n)?;
        // A fixed low-discrepancy fill: value (i*seed mod 13) - 6 over 7.
        for seed in [3i64, 5, 11] {
            let values: Vec<Rational> = (0..space.size())
                .map(|i| rational::ratio((i as i64 * seed).rem_euclid(13) - 6, 7))
                .collect();
            corpus.push(Gamble::new(space.clone(), values)?);
        }
    }
    Ok(corpus)
}

fn suite_prop_ex() -> Result<Vec<(String, bool)>, Error> {
    let mut checks = Vec::new();
    for (i, f) in suite_corpus()?.iter().enumerate() {
        let ex = permutations::symmetrize(f)?;
        let idempotent = permutations::symmetrize(&ex)? == ex;
        let invariant = permutations::is_permutation_invariant(&ex);
        let dual_path = counts::ex_via_atoms(f)? == ex;
        let basis = permutations::indifference_basis(f.space());
        let kernel = permutations::in_indifference_span(&basis, &f.sub(&ex)?)?;
        checks.push((format!("gamble {i}: projection idempotent"), idempotent));
        checks.push((format!("gamble {i}: image invariant"), invariant));
        checks.push((format!("gamble {i}: atom-average route agrees"), dual_path));
        checks.push((format!("gamble {i}: defect in indifference span"), kernel));
    }
    Ok(checks)
}

fn suite_inverse_pair() -> Result<Vec<(String, bool)>, Error> {
    let mut checks = Vec::new();
    for (i, f) in suite_corpus()?.iter().enumerate() {
        let g = counts::hy_map(f)?;
        let round = counts::hy_map(&counts::lift_count_gamble(&g)?)?;
        checks.push((format!("gamble {i}: count round trip"), round == g));
        let lifted = counts::lift_count_gamble(&g)?;
        checks.push((
            format!("gamble {i}: lift is class-equal"),
            counts::class_equal(f, &lifted)?,
        ));
    }
    Ok(checks)
}

fn suite_order_iso() -> Result<Vec<(String, bool)>, Error> {
    let corpus = suite_corpus()?;
    let mut checks = Vec::new();
    for i in 0..corpus.len() {
        for j in (i + 1)..corpus.len() {
            if corpus[i].space() != corpus[j].space() {
                continue;
            }
            let class = counts::class_leq(&corpus[i], &corpus[j])?;
            let hy = counts::hy_map(&corpus[i])?.leq(&counts::hy_map(&corpus[j])?)?;
            checks.push((format!("pair ({i},{j}): class order matches count order"), class == hy));
        }
    }
    Ok(checks)
}

// Keep the (otherwise unused) membership plumbing reachable for scripts
// that embed the CLI as a library-style binary; exercised in tests.
#[allow(dead_code)]
fn membership_json(m: &ConeMembership) -> Value {
    match m {
        ConeMembership::Member(w) => json!({
            "member": true,
            "coefficients": rationals_json(&w.coefficients),
            "slack": rationals_json(&w.slack),
        }),
        ConeMembership::NotMember { separating } => json!({
            "member": false,
            "separating": rationals_json(separating),
        }),
    }
}
