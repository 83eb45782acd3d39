//! Constructive revision sequences and replay validation.
//!
//! Each synthesizer transcribes one constructive proof into an explicit
//! sequence of formulas: apply them left to right with the sequence's
//! operator and the declared target state results. Synthesizers never
//! search; the search-based witnesses live in the companion crate.
//!
//! Where a proof picks "a model I of ..." freely, the synthesizers make the
//! choice deterministic: the candidate from the most believed eligible class,
//! ties broken by least bitmask. Sequences are emitted exactly as the proofs
//! build them, including steps that happen to repeat a formula; deduplication
//! would be an optimization the replay contract does not ask for.

use alloc::vec::Vec;
use core::fmt;

use crate::doxastic::{DoxasticState, StateError};
use crate::logic::WorldSet;
use crate::operators::{revise, OperatorId};

/// An operator together with an ordered list of satisfiable revisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevisionSequence {
    pub operator: OperatorId,
    pub formulas: Vec<WorldSet>,
}

/// One replay step: the formula applied, whether it was single-class at its
/// application state, and the state it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub formula: WorldSet,
    pub single_class: bool,
    pub state: DoxasticState,
}

/// The full record of a replay: start state plus every intermediate state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayTrace {
    pub operator: OperatorId,
    pub start: DoxasticState,
    pub steps: Vec<TraceStep>,
}

impl ReplayTrace {
    pub fn final_state(&self) -> &DoxasticState {
        self.steps.last().map_or(&self.start, |s| &s.state)
    }

    /// True when every step's formula lay within one class of the state it
    /// was applied to. The subclass and severe-plastic constructions certify
    /// this, which is what lets the coincidence lemmas transfer them.
    pub fn all_single_class(&self) -> bool {
        self.steps.iter().all(|s| s.single_class)
    }
}

/// Left fold of [`revise`] over the sequence, recording every state.
pub fn replay(seq: &RevisionSequence, start: &DoxasticState) -> Result<ReplayTrace, StateError> {
    let mut state = start.clone();
    let mut steps = Vec::with_capacity(seq.formulas.len());
    for &a in &seq.formulas {
        let single_class = state.is_single_class(a)?;
        let next = revise(seq.operator, &state, a)?;
        steps.push(TraceStep { formula: a, single_class, state: next.clone() });
        state = next;
    }
    Ok(ReplayTrace { operator: seq.operator, start: start.clone(), steps })
}

/// Why a sequence could not be synthesized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynthError {
    /// The target does not refine the start state.
    NotARefinement,
    /// The construction requires a non-flat target.
    FlatTarget,
    /// The target class must be nonempty and proper.
    BadTargetClass,
    /// The construction is not defined for this operator.
    UnsupportedOperator(OperatorId),
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::NotARefinement => {
                write!(f, "some class of the target is not contained in a class of the start state")
            }
            SynthError::FlatTarget => write!(f, "the target state must not be flat"),
            SynthError::BadTargetClass => {
                write!(f, "the target class must be nonempty and exclude at least one world")
            }
            SynthError::UnsupportedOperator(op) => {
                write!(f, "construction not defined for operator {op}")
            }
        }
    }
}

impl core::error::Error for SynthError {}

fn require(ops: &[OperatorId], op: OperatorId) -> Result<(), SynthError> {
    if ops.contains(&op) {
        Ok(())
    } else {
        Err(SynthError::UnsupportedOperator(op))
    }
}

/// Revisions by the classes of `G` from the last to the first.
///
/// Requires every class of `G` to be contained in a class of `C`. Replaying
/// under natural revision from `C` yields exactly `G`, every step being
/// single-class at its application point — so the same sequence works for
/// lexicographic and restrained revision too.
pub fn subclass_sequence(
    c: &DoxasticState,
    g: &DoxasticState,
) -> Result<RevisionSequence, SynthError> {
    if !g.refines(c) {
        return Err(SynthError::NotARefinement);
    }
    let formulas = g.classes().iter().rev().copied().collect();
    Ok(RevisionSequence { operator: OperatorId::Natural, formulas })
}

/// The subclass sequence from the flat state, valid for natural,
/// lexicographic and restrained revision. Flat targets get the empty
/// sequence.
pub fn learnable_sequence(
    op: OperatorId,
    g: &DoxasticState,
) -> Result<RevisionSequence, SynthError> {
    require(
        &[OperatorId::Natural, OperatorId::Lexicographic, OperatorId::Restrained],
        op,
    )?;
    let formulas = if g.is_flat() {
        Vec::new()
    } else {
        g.classes().iter().rev().copied().collect()
    };
    Ok(RevisionSequence { operator: op, formulas })
}

/// Revisions by `C(0), C(1), ..., C(ω)`: the subclass sequence whose target
/// is `reverse(C)`. Valid for natural, lexicographic and restrained.
pub fn damascan_sequence(
    op: OperatorId,
    c: &DoxasticState,
) -> Result<RevisionSequence, SynthError> {
    require(
        &[OperatorId::Natural, OperatorId::Lexicographic, OperatorId::Restrained],
        op,
    )?;
    Ok(RevisionSequence { operator: op, formulas: c.classes().to_vec() })
}

/// A very radical sequence reaching the non-flat `G` from any start state:
/// `[{I}, G(0), G(0)∪G(1), ..., G(0)∪...∪G(ω−1)]` with `I` a world outside
/// `G(0)`, taken from `G(1)`.
pub fn very_radical_plastic_sequence(g: &DoxasticState) -> Result<RevisionSequence, SynthError> {
    if g.is_flat() {
        return Err(SynthError::FlatTarget);
    }
    // G is not flat, so G(1) exists and its worlds lie outside G(0).
    let pivot = g.class(1).least().expect("classes are nonempty");
    let universe = g.universe();
    let mut formulas = Vec::with_capacity(g.class_count());
    formulas.push(WorldSet::from_bits(0, universe).with(pivot));
    let mut prefix = WorldSet::from_bits(0, universe);
    for i in 0..g.omega() {
        prefix = prefix.union(g.class(i));
        formulas.push(prefix);
    }
    Ok(RevisionSequence { operator: OperatorId::VeryRadical, formulas })
}

/// A severe sequence from `C` to the non-flat `G`:
/// `[{I}, {J}, true\G(ω), G(0)∪...∪G(ω−1), ..., G(0)∪G(1), G(0)]`
/// with `I` the least world of `C(ω)` and `J` the least world of `G(ω)`.
///
/// Every step is single-class at its application point, so the sequence
/// replays identically under moderate severe and deep severe revision.
/// Adjacent formulas may repeat (`{J}` can equal `{I}`; the first union
/// always equals `true\G(ω)`): the steps are emitted as the proof runs.
pub fn severe_plastic_sequence(
    op: OperatorId,
    c: &DoxasticState,
    g: &DoxasticState,
) -> Result<RevisionSequence, SynthError> {
    require(
        &[OperatorId::Severe, OperatorId::ModerateSevere, OperatorId::DeepSevere],
        op,
    )?;
    if g.is_flat() {
        return Err(SynthError::FlatTarget);
    }
    let universe = g.universe();
    let i = c.class(c.omega()).least().expect("classes are nonempty");
    let j = g.class(g.omega()).least().expect("classes are nonempty");
    let mut formulas = Vec::with_capacity(g.class_count() + 2);
    formulas.push(WorldSet::from_bits(0, universe).with(i));
    formulas.push(WorldSet::from_bits(0, universe).with(j));
    formulas.push(g.class(g.omega()).complement());
    // G(0)∪...∪G(i-1) for i = ω down to 1; the last union is G(0) itself,
    // closing the induction.
    let mut union = g.all_worlds();
    for i in (1..g.class_count()).rev() {
        union = union.difference(g.class(i));
        formulas.push(union);
    }
    Ok(RevisionSequence { operator: op, formulas })
}

/// The single radical revision that flattens a non-flat order: a model of
/// its last class. The flat state gets the empty sequence.
pub fn radical_flatten_sequence(c: &DoxasticState) -> RevisionSequence {
    let formulas = if c.is_flat() {
        Vec::new()
    } else {
        let w = c.class(c.omega()).least().expect("classes are nonempty");
        alloc::vec![WorldSet::from_bits(0, c.universe()).with(w)]
    };
    RevisionSequence { operator: OperatorId::Radical, formulas }
}

/// A sequence turning `C` into the two-class order `[F, true\F]`, for the
/// three dogmatic operators. `F` must be nonempty and proper.
///
/// - radical: flatten by a model of `C(ω)`, then revise by `F`;
/// - full meet: revise by a most believed model falsifying `F`, then by `F`;
/// - plain severe: revise by a model of `C(ω)`, then by a model of
///   `true\F`, then by `F`.
pub fn dogmatic_sequence(
    op: OperatorId,
    c: &DoxasticState,
    f: WorldSet,
) -> Result<RevisionSequence, SynthError> {
    require(&[OperatorId::Radical, OperatorId::FullMeet, OperatorId::PlainSevere], op)?;
    if f.is_empty() || f.is_all() {
        return Err(SynthError::BadTargetClass);
    }
    let universe = c.universe();
    let singleton = |w| WorldSet::from_bits(0, universe).with(w);
    let formulas = match op {
        OperatorId::Radical => {
            let mut formulas = radical_flatten_sequence(c).formulas;
            formulas.push(f);
            formulas
        }
        OperatorId::FullMeet => {
            let falsifier = c
                .min_models(f.complement())
                .expect("proper F has a nonempty complement")
                .least()
                .expect("min_models of a nonempty set is nonempty");
            alloc::vec![singleton(falsifier), f]
        }
        OperatorId::PlainSevere => {
            let i = c.class(c.omega()).least().expect("classes are nonempty");
            let j = f.complement().least().expect("proper F has a nonempty complement");
            alloc::vec![singleton(i), singleton(j), f]
        }
        _ => unreachable!(),
    };
    Ok(RevisionSequence { operator: op, formulas })
}
