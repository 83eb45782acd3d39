//! Command-line front end: apply and trace revisions, explore reachability,
//! verify abilities, reproduce the verdict table, and synthesize the
//! constructive revision sequences.
//!
//! Exit codes: 0 on success, 2 on parse or usage errors, 3 when a state
//! invariant or a replay check fails, 4 when the request exceeds the
//! supported alphabet sizes. Verdicts are payload, not exit codes: a run
//! that computes "no" still exits 0.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use doxa::abilities::{
    ability_table, check_implications, check_operator_premises, Ability, AbilityReport,
    AbilityTarget, Analysis, StateSpace, VerdictTable, MAX_EXHAUSTIVE_VARIABLES,
};
use doxa::report;
use doxa_core::doxastic::{flat_state, formula_order, parse_state, DoxasticState, StateParseError};
use doxa_core::logic::{parse_formula, Alphabet, WorldSet, MAX_VARIABLES};
use doxa_core::operators::{revise, OperatorId};
use doxa_core::synthesis::{
    damascan_sequence, dogmatic_sequence, learnable_sequence, radical_flatten_sequence, replay,
    severe_plastic_sequence, subclass_sequence, very_radical_plastic_sequence, ReplayTrace,
    RevisionSequence,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "doxa", version, about = "Iterated belief revision workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlphabetArgs {
    /// Comma-separated variable names, e.g. `a,b`.
    #[arg(long, value_name = "NAMES")]
    vars: Option<String>,
    /// Generate a single-letter alphabet of this size instead.
    #[arg(long, value_name = "N", conflicts_with = "vars")]
    vars_count: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one revision to a state and print the result.
    Apply {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// State literal (`f1 > f2 > ...`) or JSON state form.
        #[arg(long)]
        state: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply a sequence of revisions, printing every intermediate state.
    Trace {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[arg(long)]
        state: String,
        /// Semicolon-separated formulas, applied left to right.
        #[arg(long, value_name = "F1;F2;...")]
        formulas: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the states reachable from a state by revision sequences.
    Reach {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[arg(long)]
        state: String,
        /// Print only the number of reachable states.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide the abilities of one operator by exhaustive reachability.
    Abilities {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// Check a single ability instead of all nine.
        #[arg(long)]
        ability: Option<String>,
        #[arg(long)]
        json: bool,
        /// Analyze on multiple threads.
        #[arg(long)]
        parallel: bool,
    },
    /// The full 12 x 9 operator/ability verdict table.
    Table {
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        parallel: bool,
        /// Also run the implication consistency checker on the table.
        #[arg(long)]
        check: bool,
    },
    /// Check the success, vacuity and refinement premises exhaustively.
    Premises {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Build a constructive revision sequence and verify it by replay.
    Synthesize {
        /// One of: subclass, learnable, damascan, veryradical-plastic,
        /// severe-plastic, radical-flatten, dogmatic.
        #[arg(long)]
        construction: String,
        #[arg(long)]
        op: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// Start state; defaults to the flat state where admissible.
        #[arg(long)]
        from: Option<String>,
        /// Target state, for the state-directed constructions.
        #[arg(long)]
        to: Option<String>,
        /// Target first class, for the dogmatic construction.
        #[arg(long)]
        target_class: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Invariant(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invariant(m) | Failure::Resource(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn resolve_alphabet(args: &AlphabetArgs) -> Result<Alphabet, Failure> {
    let build = |r: Result<Alphabet, doxa_core::logic::AlphabetError>| {
        r.map_err(|e| match e {
            doxa_core::logic::AlphabetError::BadCount(n) if n > MAX_VARIABLES => Failure::Resource(
                format!("alphabets are capped at {MAX_VARIABLES} variables, got {n}"),
            ),
            other => usage(other.to_string()),
        })
    };
    match (&args.vars, args.vars_count) {
        (Some(names), _) => build(Alphabet::new(names.split(','))),
        (None, Some(count)) => build(Alphabet::generated(count)),
        (None, None) => Err(usage("provide --vars or --vars-count")),
    }
}

fn parse_op(name: &str) -> Result<OperatorId, Failure> {
    OperatorId::parse(name).ok_or_else(|| {
        let names: Vec<_> = OperatorId::ALL.iter().map(|o| o.name()).collect();
        usage(format!("unknown operator {name:?}; expected one of {}", names.join(", ")))
    })
}

fn note_experimental(op: OperatorId) {
    if op.is_experimental() {
        eprintln!("note: {op} is an experimental variant");
    }
}

fn parse_state_arg(text: &str, alphabet: &Alphabet) -> Result<DoxasticState, Failure> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| usage(format!("bad state JSON: {e}")))?;
        return report::state_from_json(&value, alphabet).map_err(Failure::Invariant);
    }
    parse_state(text, alphabet).map_err(|e| match e {
        StateParseError::Formula(_, _) => usage(format!("bad state {text:?}: {e}")),
        StateParseError::Invalid(_) => Failure::Invariant(format!("bad state {text:?}: {e}")),
    })
}

fn parse_formula_arg(text: &str, alphabet: &Alphabet) -> Result<WorldSet, Failure> {
    parse_formula(text, alphabet).map_err(|e| usage(format!("bad formula {text:?}: {e}")))
}

fn exhaustive_space(alphabet: &Alphabet) -> Result<StateSpace, Failure> {
    if alphabet.len() > MAX_EXHAUSTIVE_VARIABLES {
        return Err(Failure::Resource(format!(
            "exhaustive mode supports at most {MAX_EXHAUSTIVE_VARIABLES} variables, got {}",
            alphabet.len()
        )));
    }
    StateSpace::enumerate(alphabet).map_err(|e| Failure::Resource(e.to_string()))
}

fn synth_failure(e: doxa_core::synthesis::SynthError) -> Failure {
    match e {
        doxa_core::synthesis::SynthError::UnsupportedOperator(_) => usage(e.to_string()),
        _ => Failure::Invariant(e.to_string()),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Apply { op, alphabet, state, formula, json } => {
            let op = parse_op(&op)?;
            let alphabet = resolve_alphabet(&alphabet)?;
            let c = parse_state_arg(&state, &alphabet)?;
            let a = parse_formula_arg(&formula, &alphabet)?;
            note_experimental(op);
            let result =
                revise(op, &c, a).map_err(|e| Failure::Invariant(format!("cannot revise: {e}")))?;
            if json {
                print_json(&json!({
                    "operator": op.name(),
                    "experimental": op.is_experimental(),
                    "state": report::state_json(&c, &alphabet),
                    "formula": report::formula_json(a, &alphabet),
                    "result": report::state_json(&result, &alphabet),
                }));
            } else {
                println!("{}", result.render(&alphabet));
            }
            Ok(())
        }
        Command::Trace { op, alphabet, state, formulas, json } => {
            let op = parse_op(&op)?;
            let alphabet = resolve_alphabet(&alphabet)?;
            let c = parse_state_arg(&state, &alphabet)?;
            let parts: Vec<&str> =
                if formulas.trim().is_empty() { Vec::new() } else { formulas.split(';').collect() };
            let mut sets = Vec::with_capacity(parts.len());
            for part in parts {
                sets.push(parse_formula_arg(part, &alphabet)?);
            }
            note_experimental(op);
            let seq = RevisionSequence { operator: op, formulas: sets };
            let trace =
                replay(&seq, &c).map_err(|e| Failure::Invariant(format!("cannot replay: {e}")))?;
            if json {
                print_json(&report::trace_json(&trace, &alphabet));
            } else {
                print_trace(&trace, &alphabet);
            }
            Ok(())
        }
        Command::Reach { op, alphabet, state, count, json } => {
            let op = parse_op(&op)?;
            let alphabet = resolve_alphabet(&alphabet)?;
            let space = exhaustive_space(&alphabet)?;
            let c = parse_state_arg(&state, &alphabet)?;
            let from = space.id_of(&c).expect("canonical states are enumerated");
            note_experimental(op);
            let set = doxa::abilities::graph::reachable_lazy(&space, op, from, |_| false);
            if json {
                let mut value = json!({
                    "operator": op.name(),
                    "vars_count": alphabet.len(),
                    "from": report::state_json(&c, &alphabet),
                    "count": set.count(),
                });
                if !count {
                    value["states"] = set
                        .iter()
                        .map(|id| report::state_json(space.state(id), &alphabet))
                        .collect::<Vec<_>>()
                        .into();
                }
                print_json(&value);
            } else if count {
                println!("{}", set.count());
            } else {
                for id in set.iter() {
                    println!("{}", space.state(id).render(&alphabet));
                }
            }
            Ok(())
        }
        Command::Abilities { op, alphabet, ability, json, parallel } => {
            let op = parse_op(&op)?;
            let alphabet = resolve_alphabet(&alphabet)?;
            let space = exhaustive_space(&alphabet)?;
            configure_threads(parallel);
            note_experimental(op);
            let analysis = Analysis::new(&space, op);
            let reports: Vec<AbilityReport> = match ability {
                Some(name) => {
                    let ability = Ability::parse(&name).ok_or_else(|| {
                        let names: Vec<_> = Ability::ALL.iter().map(|a| a.name()).collect();
                        usage(format!(
                            "unknown ability {name:?}; expected one of {}",
                            names.join(", ")
                        ))
                    })?;
                    vec![analysis.check(ability)]
                }
                None => Ability::ALL.iter().map(|&a| analysis.check(a)).collect(),
            };
            if json {
                let value: Vec<_> =
                    reports.iter().map(|r| report::ability_report_json(r, &alphabet)).collect();
                print_json(&serde_json::Value::from(value));
            } else {
                println!("operator: {} ({} variables)", op.name(), alphabet.len());
                for r in &reports {
                    print_ability_report(r, &alphabet);
                }
            }
            Ok(())
        }
        Command::Table { alphabet, json, parallel, check } => {
            let alphabet = resolve_alphabet(&alphabet)?;
            let space = exhaustive_space(&alphabet)?;
            configure_threads(parallel);
            let table = ability_table(&space, parallel);
            if json {
                print_json(&report::table_json(&table, &alphabet));
            } else {
                print_table(&table);
            }
            if check {
                let verdicts = VerdictTable::from(&table);
                let violations =
                    check_implications(&verdicts).map_err(|e| Failure::Invariant(e.to_string()))?;
                if json {
                    print_json(&report::violations_json(&violations));
                } else if violations.is_empty() {
                    println!("implications: consistent");
                } else {
                    for v in &violations {
                        println!("implication violated - {v}");
                    }
                }
                if !violations.is_empty() {
                    return Err(Failure::Invariant(format!(
                        "{} implication violation(s) in the computed table",
                        violations.len()
                    )));
                }
            }
            Ok(())
        }
        Command::Premises { op, alphabet, json, parallel } => {
            let op = parse_op(&op)?;
            let alphabet = resolve_alphabet(&alphabet)?;
            let space = exhaustive_space(&alphabet)?;
            configure_threads(parallel);
            note_experimental(op);
            let premises = check_operator_premises(&space, op, parallel);
            if json {
                print_json(&report::premises_json(op, alphabet.len(), &premises));
            } else {
                println!("operator: {} ({} variables)", op.name(), alphabet.len());
                println!("success: {}", premises.success);
                println!("vacuity: {}", premises.vacuity);
                println!("refinement: {}", premises.refinement);
            }
            Ok(())
        }
        Command::Synthesize { construction, op, alphabet, from, to, target_class, json } => {
            let op = parse_op(&op)?;
            let alphabet = resolve_alphabet(&alphabet)?;
            note_experimental(op);
            let start = match &from {
                Some(text) => parse_state_arg(text, &alphabet)?,
                None => flat_state(&alphabet),
            };
            let target_state = to.as_deref().map(|t| parse_state_arg(t, &alphabet)).transpose()?;
            let target_class =
                target_class.as_deref().map(|f| parse_formula_arg(f, &alphabet)).transpose()?;

            let need_to = || {
                target_state
                    .clone()
                    .ok_or_else(|| usage(format!("construction {construction:?} needs --to")))
            };
            let (seq, target) = match construction.as_str() {
                "subclass" => {
                    let g = need_to()?;
                    let mut seq = subclass_sequence(&start, &g).map_err(synth_failure)?;
                    retag(
                        &mut seq,
                        op,
                        &[OperatorId::Natural, OperatorId::Lexicographic, OperatorId::Restrained],
                    )?;
                    (seq, g)
                }
                "learnable" => {
                    let g = need_to()?;
                    let seq = learnable_sequence(op, &g).map_err(synth_failure)?;
                    (seq, g)
                }
                "damascan" => {
                    let seq = damascan_sequence(op, &start).map_err(synth_failure)?;
                    let target = start.reverse();
                    (seq, target)
                }
                "veryradical-plastic" => {
                    let g = need_to()?;
                    let mut seq = very_radical_plastic_sequence(&g).map_err(synth_failure)?;
                    retag(&mut seq, op, &[OperatorId::VeryRadical])?;
                    (seq, g)
                }
                "severe-plastic" => {
                    let g = need_to()?;
                    let seq =
                        severe_plastic_sequence(op, &start, &g).map_err(synth_failure)?;
                    (seq, g)
                }
                "radical-flatten" => {
                    let mut seq = radical_flatten_sequence(&start);
                    retag(&mut seq, op, &[OperatorId::Radical])?;
                    (seq, flat_state(&alphabet))
                }
                "dogmatic" => {
                    let f = target_class
                        .ok_or_else(|| usage("construction \"dogmatic\" needs --target-class"))?;
                    let seq = dogmatic_sequence(op, &start, f).map_err(synth_failure)?;
                    let target = formula_order(f, &alphabet)
                        .map_err(|e| Failure::Invariant(e.to_string()))?;
                    (seq, target)
                }
                other => {
                    return Err(usage(format!(
                        "unknown construction {other:?}; expected subclass, learnable, \
                         damascan, veryradical-plastic, severe-plastic, radical-flatten \
                         or dogmatic"
                    )));
                }
            };

            // Learnable sequences start at the flat state regardless of --from.
            let replay_start =
                if construction == "learnable" { flat_state(&alphabet) } else { start };
            let trace = replay(&seq, &replay_start)
                .map_err(|e| Failure::Invariant(format!("replay failed: {e}")))?;
            let reached = trace.final_state() == &target;
            if json {
                print_json(&json!({
                    "construction": construction,
                    "operator": seq.operator.name(),
                    "experimental": seq.operator.is_experimental(),
                    "formulas": seq
                        .formulas
                        .iter()
                        .map(|f| report::formula_json(*f, &alphabet))
                        .collect::<Vec<_>>(),
                    "target": report::state_json(&target, &alphabet),
                    "trace": report::trace_json(&trace, &alphabet),
                    "reached": reached,
                }));
            } else {
                println!("construction: {construction}");
                println!("operator: {}", seq.operator.name());
                println!("target: {}", target.render(&alphabet));
                print_trace(&trace, &alphabet);
                println!("replay {} the target", if reached { "reaches" } else { "MISSES" });
            }
            if !reached {
                return Err(Failure::Invariant(format!(
                    "synthesized sequence replays to {:?}, not the declared target",
                    trace.final_state().render(&alphabet)
                )));
            }
            Ok(())
        }
    }
}

fn retag(seq: &mut RevisionSequence, op: OperatorId, allowed: &[OperatorId]) -> Result<(), Failure> {
    if allowed.contains(&op) {
        seq.operator = op;
        Ok(())
    } else {
        let names: Vec<_> = allowed.iter().map(|o| o.name()).collect();
        Err(usage(format!("this construction works for {}, not {}", names.join("/"), op.name())))
    }
}

fn configure_threads(parallel: bool) {
    if !parallel {
        // rayon is only exercised behind --parallel; a single worker keeps
        // the default path strictly sequential.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn print_trace(trace: &ReplayTrace, alphabet: &Alphabet) {
    println!("start: {}", trace.start.render(alphabet));
    for (i, step) in trace.steps.iter().enumerate() {
        println!(
            "{:3}. *({})  ->  {}{}",
            i + 1,
            step.formula.to_dnf(alphabet),
            step.state.render(alphabet),
            if step.single_class { "" } else { "  [not single-class]" }
        );
    }
    println!("result: {}", trace.final_state().render(alphabet));
}

fn describe_target(target: &AbilityTarget, alphabet: &Alphabet) -> String {
    match target {
        AbilityTarget::State(s) => format!("reach {}", s.render(alphabet)),
        AbilityTarget::WorldsEqual(i, j) => format!(
            "make worlds {} and {} equally believed",
            i.bitstring(alphabet.len()),
            j.bitstring(alphabet.len())
        ),
        AbilityTarget::WorldBelow { below, above } => format!(
            "make world {} strictly more believed than {}",
            below.bitstring(alphabet.len()),
            above.bitstring(alphabet.len())
        ),
        AbilityTarget::FirstClass(f) => {
            format!("reach a first class of exactly {}", f.to_dnf(alphabet))
        }
        AbilityTarget::FormulaOrder(f) => {
            format!("reach the formula order of {}", f.to_dnf(alphabet))
        }
    }
}

fn print_ability_report(report: &AbilityReport, alphabet: &Alphabet) {
    let verdict = if report.verdict { "yes" } else { "no" };
    print!("  {:14} {}", report.ability.name(), verdict);
    if let Some(w) = &report.witness {
        let formulas: Vec<String> = w.formulas.iter().map(|f| f.to_dnf(alphabet)).collect();
        print!(
            "   witness: from {} apply [{}] to {}",
            w.start.render(alphabet),
            formulas.join("; "),
            describe_target(&w.target, alphabet),
        );
    }
    if let Some(ce) = &report.counterexample {
        print!(
            "   counterexample: from {} no sequence can {}",
            ce.state.render(alphabet),
            describe_target(&ce.target, alphabet),
        );
    }
    if let Some(corner) = report.amnesic_corner {
        print!("   (corner target F = true: {})", if corner { "reachable" } else { "unreachable" });
    }
    println!();
}

fn print_table(table: &doxa::abilities::AbilityTable) {
    print!("{:22}", format!("operators ({}v)", table.vars_count));
    for ability in Ability::ALL {
        print!(" {:>13}", ability.name());
    }
    println!();
    for row in &table.rows {
        let marker = if row.operator.is_experimental() { "*" } else { "" };
        print!("{:22}", format!("{}{}", row.operator.name(), marker));
        for report in &row.reports {
            print!(" {:>13}", if report.verdict { "yes" } else { "-" });
        }
        println!();
    }
    if table.rows.iter().any(|r| r.operator.is_experimental()) {
        println!("* experimental variant");
    }
}
