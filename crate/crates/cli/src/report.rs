//! JSON forms for states, traces, ability reports and the verdict table.
//!
//! Key names are stable: operator and ability keys equal their canonical
//! string names, states use the `{"vars": [...], "classes": [[...]]}` form
//! with worlds as bitstrings, and object keys keep insertion order so the
//! same computation always serializes to the same bytes.

use doxa_core::doxastic::{canonicalize, DoxasticState, StateError};
use doxa_core::logic::{Alphabet, World, WorldSet};
use doxa_core::synthesis::ReplayTrace;
use serde_json::{json, Map, Value};

use crate::abilities::{
    Ability, AbilityReport, AbilityTable, AbilityTarget, Premises, Violation,
};

pub fn state_json(state: &DoxasticState, alphabet: &Alphabet) -> Value {
    json!({
        "vars": alphabet.names(),
        "classes": state
            .classes()
            .iter()
            .map(|c| c.bitstrings(alphabet))
            .collect::<Vec<_>>(),
    })
}

/// Parses the JSON state form against a known alphabet.
pub fn state_from_json(value: &Value, alphabet: &Alphabet) -> Result<DoxasticState, String> {
    let vars = value
        .get("vars")
        .and_then(Value::as_array)
        .ok_or("state JSON needs a \"vars\" array")?;
    let names: Vec<&str> = vars.iter().filter_map(Value::as_str).collect();
    if names != alphabet.names().iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(format!("state JSON vars {names:?} do not match the alphabet"));
    }
    let classes = value
        .get("classes")
        .and_then(Value::as_array)
        .ok_or("state JSON needs a \"classes\" array")?;
    let mut sets = Vec::with_capacity(classes.len());
    for (i, class) in classes.iter().enumerate() {
        let worlds = class.as_array().ok_or(format!("class {i} is not an array"))?;
        let mut set = alphabet.no_worlds();
        for w in worlds {
            let s = w.as_str().ok_or(format!("class {i} holds a non-string world"))?;
            let world = World::from_bitstring(s, alphabet.len())
                .ok_or(format!("bad world bitstring {s:?}"))?;
            set = set.with(world);
        }
        if set.is_empty() {
            return Err(format!("class {i} is empty"));
        }
        sets.push(set);
    }
    canonicalize(sets, alphabet).map_err(|e: StateError| e.to_string())
}

pub fn formula_json(set: WorldSet, alphabet: &Alphabet) -> Value {
    json!({
        "formula": set.to_dnf(alphabet),
        "worlds": set.bitstrings(alphabet),
    })
}

pub fn trace_json(trace: &ReplayTrace, alphabet: &Alphabet) -> Value {
    json!({
        "operator": trace.operator.name(),
        "experimental": trace.operator.is_experimental(),
        "start": state_json(&trace.start, alphabet),
        "length": trace.steps.len(),
        "steps": trace
            .steps
            .iter()
            .map(|s| {
                json!({
                    "formula": formula_json(s.formula, alphabet),
                    "single_class": s.single_class,
                    "state": state_json(&s.state, alphabet),
                })
            })
            .collect::<Vec<_>>(),
        "result": state_json(trace.final_state(), alphabet),
    })
}

fn target_json(target: &AbilityTarget, alphabet: &Alphabet) -> Value {
    match target {
        AbilityTarget::State(s) => json!({
            "kind": "state",
            "state": state_json(s, alphabet),
        }),
        AbilityTarget::WorldsEqual(i, j) => json!({
            "kind": "worlds_equal",
            "worlds": [i.bitstring(alphabet.len()), j.bitstring(alphabet.len())],
        }),
        AbilityTarget::WorldBelow { below, above } => json!({
            "kind": "world_below",
            "below": below.bitstring(alphabet.len()),
            "above": above.bitstring(alphabet.len()),
        }),
        AbilityTarget::FirstClass(f) => json!({
            "kind": "first_class",
            "worlds": f.bitstrings(alphabet),
        }),
        AbilityTarget::FormulaOrder(f) => json!({
            "kind": "formula_order",
            "worlds": f.bitstrings(alphabet),
        }),
    }
}

pub fn ability_report_json(report: &AbilityReport, alphabet: &Alphabet) -> Value {
    let mut object = Map::new();
    object.insert("operator".into(), report.operator.name().into());
    object.insert("experimental".into(), report.operator.is_experimental().into());
    object.insert("vars_count".into(), report.vars_count.into());
    object.insert("ability".into(), report.ability.name().into());
    object.insert("verdict".into(), report.verdict.into());
    if let Some(w) = &report.witness {
        object.insert(
            "witness".into(),
            json!({
                "start": state_json(&w.start, alphabet),
                "target": target_json(&w.target, alphabet),
                "formulas": w
                    .formulas
                    .iter()
                    .map(|f| formula_json(*f, alphabet))
                    .collect::<Vec<_>>(),
                "result": state_json(&w.result, alphabet),
            }),
        );
    } else {
        object.insert("witness".into(), Value::Null);
    }
    if let Some(ce) = &report.counterexample {
        object.insert(
            "counterexample".into(),
            json!({
                "state": state_json(&ce.state, alphabet),
                "target": target_json(&ce.target, alphabet),
            }),
        );
    } else {
        object.insert("counterexample".into(), Value::Null);
    }
    if let Some(corner) = report.amnesic_corner {
        object.insert("amnesic_corner".into(), corner.into());
    }
    Value::Object(object)
}

pub fn table_json(table: &AbilityTable, alphabet: &Alphabet) -> Value {
    let operators: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut verdicts = Map::new();
            for report in &row.reports {
                verdicts.insert(report.ability.name().into(), report.verdict.into());
            }
            json!({
                "operator": row.operator.name(),
                "experimental": row.operator.is_experimental(),
                "verdicts": Value::Object(verdicts),
            })
        })
        .collect();
    json!({
        "vars_count": table.vars_count,
        "abilities": Ability::ALL.iter().map(|a| a.name()).collect::<Vec<_>>(),
        "operators": operators,
        "notes": {
            "quantification": "believer and dogmatic quantify over every start state",
            "amnesic_corner": "the excluded believer/dogmatic target F = true equals the amnesic verdict",
            "believer_equating_edge": "asserted only for alphabets of two or more variables",
        },
        "vars": alphabet.names(),
    })
}

pub fn premises_json(op: doxa_core::OperatorId, vars_count: usize, p: &Premises) -> Value {
    json!({
        "operator": op.name(),
        "experimental": op.is_experimental(),
        "vars_count": vars_count,
        "success": p.success,
        "vacuity": p.vacuity,
        "refinement": p.refinement,
    })
}

pub fn violations_json(violations: &[Violation]) -> Value {
    violations
        .iter()
        .map(|v| {
            json!({
                "operator": v.operator.name(),
                "premise": v.premise,
                "conclusion": v.conclusion,
            })
        })
        .collect::<Vec<_>>()
        .into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use doxa_core::doxastic::parse_state;

    #[test]
    fn state_json_roundtrip() {
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let state = parse_state("a&b > a&!b | !a&b > !a&!b", &alphabet).unwrap();
        let value = state_json(&state, &alphabet);
        assert_eq!(
            serde_json::to_string(&value).unwrap(),
            r#"{"vars":["a","b"],"classes":[["11"],["10","01"],["00"]]}"#
        );
        assert_eq!(state_from_json(&value, &alphabet).unwrap(), state);
    }

    #[test]
    fn state_json_rejects_bad_input() {
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let missing = json!({"vars": ["a", "b"], "classes": [[ "11" ]]});
        assert!(state_from_json(&missing, &alphabet).is_err());
        let wrong_vars = json!({"vars": ["x"], "classes": [["1"], ["0"]]});
        assert!(state_from_json(&wrong_vars, &alphabet).is_err());
        let empty_class =
            json!({"vars": ["a", "b"], "classes": [["11","10","01","00"], []]});
        assert!(state_from_json(&empty_class, &alphabet).is_err());
    }
}
