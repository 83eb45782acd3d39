//! The revision operators.
//!
//! Every operator is a pure function `(state, formula) -> state`, defined on
//! satisfiable formulas only. Each builds the literal class sequence of its
//! definition and canonicalizes it; no shortcuts that change observable
//! results. Revising by an unsatisfiable formula is an error.

use alloc::vec::Vec;
use core::fmt;

use crate::doxastic::{canonicalize_over, DoxasticState, StateError};
use crate::logic::WorldSet;

/// Identifies one of the twelve revision operators.
///
/// The first ten are from the standard catalog. The last two are variants of
/// natural revision that trade the success postulate for full plasticity;
/// they are flagged experimental in CLI output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorId {
    Natural,
    Lexicographic,
    Restrained,
    Radical,
    VeryRadical,
    FullMeet,
    Severe,
    ModerateSevere,
    DeepSevere,
    PlainSevere,
    NaturalForgetful,
    NaturalTrueFlatten,
}

impl OperatorId {
    /// All operators in canonical (table row) order.
    pub const ALL: [OperatorId; 12] = [
        OperatorId::Natural,
        OperatorId::Lexicographic,
        OperatorId::Restrained,
        OperatorId::Radical,
        OperatorId::VeryRadical,
        OperatorId::FullMeet,
        OperatorId::Severe,
        OperatorId::ModerateSevere,
        OperatorId::DeepSevere,
        OperatorId::PlainSevere,
        OperatorId::NaturalForgetful,
        OperatorId::NaturalTrueFlatten,
    ];

    /// The ten operators of the base catalog, without the two variants.
    pub const BASE: [OperatorId; 10] = [
        OperatorId::Natural,
        OperatorId::Lexicographic,
        OperatorId::Restrained,
        OperatorId::Radical,
        OperatorId::VeryRadical,
        OperatorId::FullMeet,
        OperatorId::Severe,
        OperatorId::ModerateSevere,
        OperatorId::DeepSevere,
        OperatorId::PlainSevere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorId::Natural => "natural",
            OperatorId::Lexicographic => "lexicographic",
            OperatorId::Restrained => "restrained",
            OperatorId::Radical => "radical",
            OperatorId::VeryRadical => "very_radical",
            OperatorId::FullMeet => "full_meet",
            OperatorId::Severe => "severe",
            OperatorId::ModerateSevere => "moderate_severe",
            OperatorId::DeepSevere => "deep_severe",
            OperatorId::PlainSevere => "plain_severe",
            OperatorId::NaturalForgetful => "natural_forgetful",
            OperatorId::NaturalTrueFlatten => "natural_true_flatten",
        }
    }

    pub fn parse(name: &str) -> Option<OperatorId> {
        OperatorId::ALL.into_iter().find(|op| op.name() == name)
    }

    /// The two variants whose justification the catalog itself questions.
    pub fn is_experimental(self) -> bool {
        matches!(self, OperatorId::NaturalForgetful | OperatorId::NaturalTrueFlatten)
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Applies the operator `op` to state `c` and formula `a`.
pub fn revise(op: OperatorId, c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    match op {
        OperatorId::Natural => natural(c, a),
        OperatorId::Lexicographic => lexicographic(c, a),
        OperatorId::Restrained => restrained(c, a),
        OperatorId::Radical => radical(c, a),
        OperatorId::VeryRadical => very_radical(c, a),
        OperatorId::FullMeet => full_meet(c, a),
        OperatorId::Severe => severe(c, a),
        OperatorId::ModerateSevere => moderate_severe(c, a),
        OperatorId::DeepSevere => deep_severe(c, a),
        OperatorId::PlainSevere => plain_severe(c, a),
        OperatorId::NaturalForgetful => natural_forgetful(c, a),
        OperatorId::NaturalTrueFlatten => natural_true_flatten(c, a),
    }
}

fn check_formula(c: &DoxasticState, a: WorldSet) -> Result<(), StateError> {
    debug_assert_eq!(c.universe(), a.universe());
    if a.is_empty() {
        return Err(StateError::EmptyFormula);
    }
    Ok(())
}

fn finish(classes: Vec<WorldSet>, universe: usize) -> Result<DoxasticState, StateError> {
    // The definitions guarantee a partition; anything else is a bug here.
    Ok(canonicalize_over(classes, universe).expect("operator output must partition the worlds"))
}

/// Natural revision: `[min(A), C(0) \ min(A), ..., C(ω) \ min(A)]`.
///
/// The most believed models of `A` move to the top; nothing else changes.
pub fn natural(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let min = c.min_models(a)?;
    let mut classes = Vec::with_capacity(c.class_count() + 1);
    classes.push(min);
    for class in c.classes() {
        classes.push(class.difference(min));
    }
    finish(classes, c.universe())
}

/// Lexicographic revision: `[C(0)∩A, ..., C(ω)∩A, C(0)\A, ..., C(ω)\A]`.
pub fn lexicographic(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let mut classes = Vec::with_capacity(2 * c.class_count());
    for class in c.classes() {
        classes.push(class.intersect(a));
    }
    for class in c.classes() {
        classes.push(class.difference(a));
    }
    finish(classes, c.universe())
}

/// Restrained revision:
/// `[min(A), C(0)∩A \ min(A), C(0)\A, ..., C(ω)∩A \ min(A), C(ω)\A]`.
pub fn restrained(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let min = c.min_models(a)?;
    let mut classes = Vec::with_capacity(2 * c.class_count() + 1);
    classes.push(min);
    for class in c.classes() {
        classes.push(class.intersect(a).difference(min));
        classes.push(class.difference(a));
    }
    finish(classes, c.universe())
}

/// Radical revision:
/// `[C(imin)∩A \ D, ..., C(imax)∩A \ D, true\A ∪ D]` with `D = C(ω)\C(0)`.
///
/// The impossible set `D` is recomputed from the input on every call; there
/// is no persistent memory of impossible worlds across revisions.
pub fn radical(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let impossible = c.class(c.omega()).difference(c.class(0));
    let imin = c.imin(a)?;
    let imax = c.imax(a)?;
    let mut classes = Vec::with_capacity(imax - imin + 2);
    for i in imin..=imax {
        classes.push(c.class(i).intersect(a).difference(impossible));
    }
    classes.push(a.complement().union(impossible));
    finish(classes, c.universe())
}

/// Very radical revision: `[C(imin)∩A, ..., C(imax)∩A, true\A]`.
pub fn very_radical(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let imin = c.imin(a)?;
    let imax = c.imax(a)?;
    let mut classes = Vec::with_capacity(imax - imin + 2);
    for i in imin..=imax {
        classes.push(c.class(i).intersect(a));
    }
    classes.push(a.complement());
    finish(classes, c.universe())
}

/// Full meet revision: `[min(A), true \ min(A)]`. At most two classes.
pub fn full_meet(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let min = c.min_models(a)?;
    finish(alloc::vec![min, min.complement()], c.universe())
}

/// Severe revision: `[min(A), C(0)∪...∪C(imin) \ A, C(imin+1), ..., C(ω)]`.
pub fn severe(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let imin = c.imin(a)?;
    let mut merged = WorldSet::from_bits(0, c.universe());
    for i in 0..=imin {
        merged = merged.union(c.class(i));
    }
    let mut classes = Vec::with_capacity(c.class_count() - imin + 1);
    classes.push(c.class(imin).intersect(a));
    classes.push(merged.difference(a));
    classes.extend_from_slice(&c.classes()[imin + 1..]);
    finish(classes, c.universe())
}

/// Moderate severe revision:
/// `[C(imin)∩A, ..., C(imax)∩A, C(0)∪...∪C(imin) \ A, C(imin+1)\A, ..., C(ω)\A]`.
pub fn moderate_severe(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let imin = c.imin(a)?;
    let imax = c.imax(a)?;
    let mut classes = Vec::with_capacity(c.class_count() + imax - imin + 2);
    for i in imin..=imax {
        classes.push(c.class(i).intersect(a));
    }
    let mut merged = WorldSet::from_bits(0, c.universe());
    for i in 0..=imin {
        merged = merged.union(c.class(i));
    }
    classes.push(merged.difference(a));
    for i in imin + 1..c.class_count() {
        classes.push(c.class(i).difference(a));
    }
    finish(classes, c.universe())
}

/// Deep severe revision:
/// `[C(imin)∩A, ..., C(imax)∩A, C(0)∪...∪C(imax) \ A, C(imax+1), ..., C(ω)]`.
pub fn deep_severe(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let imin = c.imin(a)?;
    let imax = c.imax(a)?;
    let mut classes = Vec::with_capacity(c.class_count() + imax - imin + 2);
    for i in imin..=imax {
        classes.push(c.class(i).intersect(a));
    }
    let mut merged = WorldSet::from_bits(0, c.universe());
    for i in 0..=imax {
        merged = merged.union(c.class(i));
    }
    classes.push(merged.difference(a));
    classes.extend_from_slice(&c.classes()[imax + 1..]);
    finish(classes, c.universe())
}

/// Plain severe revision:
/// `[min(A), C(0)∪...∪C(imin+1) \ min(A), C(imin+2), ..., C(ω)]`.
///
/// Unlike severe, the merged block subtracts only `min(A)`, so the models of
/// `A` sitting one class below the minimal ones stay inside the merge.
pub fn plain_severe(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let imin = c.imin(a)?;
    let min = c.class(imin).intersect(a);
    let top = core::cmp::min(imin + 1, c.omega());
    let mut merged = WorldSet::from_bits(0, c.universe());
    for i in 0..=top {
        merged = merged.union(c.class(i));
    }
    let mut classes = Vec::with_capacity(c.class_count() + 1);
    classes.push(min);
    classes.push(merged.difference(min));
    if imin + 2 <= c.omega() {
        classes.extend_from_slice(&c.classes()[imin + 2..]);
    }
    finish(classes, c.universe())
}

/// Natural revision altered on redundant revisions: the result is flat when
/// `C(0)` is a strict subset of `A`, natural revision otherwise.
pub fn natural_forgetful(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    let top = c.class(0);
    if top.is_subset(a) && top != a {
        return Ok(DoxasticState::flat_over(c.universe()));
    }
    natural(c, a)
}

/// Natural revision where believing `true` is believing everything: the
/// result is flat when `A` is a tautology, natural revision otherwise.
pub fn natural_true_flatten(c: &DoxasticState, a: WorldSet) -> Result<DoxasticState, StateError> {
    check_formula(c, a)?;
    if a.is_all() {
        return Ok(DoxasticState::flat_over(c.universe()));
    }
    natural(c, a)
}
