//! Doxastic states: ordered partitions of the world set.
//!
//! A state is written `[C(0), C(1), ..., C(ω)]`, most believed class first.
//! Two worlds compare by the indices of their classes; the induced relation
//! is a connected (total) preorder. Canonical states have no empty classes,
//! and structural equality of canonical states is state identity everywhere
//! in this crate and its companions.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::logic::{parse_formula, Alphabet, ParseError, World, WorldSet};

/// A connected preorder over all worlds of an alphabet, as the ordered list
/// of its equivalence classes.
///
/// Invariants, enforced at construction: every class is nonempty, classes
/// are pairwise disjoint, and their union is the full world set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DoxasticState {
    classes: Vec<WorldSet>,
}

/// Why a class list is not a valid doxastic state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateError {
    /// Two classes share a world.
    Overlap(World),
    /// Some world belongs to no class.
    Coverage(World),
    /// The operation requires a nonempty formula.
    EmptyFormula,
    /// A state literal contains an unsatisfiable class formula.
    EmptyClass(usize),
    /// No classes at all.
    NoClasses,
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::Overlap(w) => write!(f, "world {} appears in two classes", w.0),
            StateError::Coverage(w) => write!(f, "world {} is not covered by any class", w.0),
            StateError::EmptyFormula => write!(f, "formula has no models"),
            StateError::EmptyClass(i) => write!(f, "class {i} of the state literal is empty"),
            StateError::NoClasses => write!(f, "state has no classes"),
        }
    }
}

impl core::error::Error for StateError {}

/// Removes empty classes and checks the partition invariants.
///
/// The relative order of the remaining classes is preserved. Raw classes may
/// be empty (the operator definitions produce plenty of those) but must be
/// pairwise disjoint and jointly cover the world set.
pub fn canonicalize(raw: Vec<WorldSet>, alphabet: &Alphabet) -> Result<DoxasticState, StateError> {
    canonicalize_over(raw, alphabet.world_count())
}

/// [`canonicalize`] against a raw universe size instead of an alphabet.
pub fn canonicalize_over(raw: Vec<WorldSet>, universe: usize) -> Result<DoxasticState, StateError> {
    let mut seen: u16 = 0;
    let mut classes = Vec::with_capacity(raw.len());
    for class in raw {
        if class.is_empty() {
            continue;
        }
        if seen & class.bits() != 0 {
            let w = World((seen & class.bits()).trailing_zeros() as u8);
            return Err(StateError::Overlap(w));
        }
        seen |= class.bits();
        classes.push(class);
    }
    let full = WorldSet::from_bits(0, universe).complement().bits();
    if seen != full {
        let w = World((!seen & full).trailing_zeros() as u8);
        return Err(StateError::Coverage(w));
    }
    Ok(DoxasticState { classes })
}

/// The flat order: a single class holding every world. Total ignorance.
pub fn flat_state(alphabet: &Alphabet) -> DoxasticState {
    DoxasticState { classes: alloc::vec![alphabet.all_worlds()] }
}

/// The order of a formula: `[A, true \ A]`, one class when `A` is `true`.
pub fn formula_order(a: WorldSet, alphabet: &Alphabet) -> Result<DoxasticState, StateError> {
    if a.is_empty() {
        return Err(StateError::EmptyFormula);
    }
    canonicalize(alloc::vec![a, a.complement()], alphabet)
}

impl DoxasticState {
    /// The flat order over a raw universe size.
    pub fn flat_over(universe: usize) -> DoxasticState {
        DoxasticState { classes: alloc::vec![WorldSet::from_bits(0, universe).complement()] }
    }

    /// Builds a state directly from the class index of each world.
    ///
    /// `indices[w]` is the class of world `w`; indices must use an initial
    /// segment `0..k`. This is the inverse of the fingerprint encoding.
    pub fn from_class_indices(indices: &[u8]) -> DoxasticState {
        let universe = indices.len();
        let count = indices.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut classes = alloc::vec![WorldSet::from_bits(0, universe); count];
        for (w, &i) in indices.iter().enumerate() {
            classes[i as usize] = classes[i as usize].with(World(w as u8));
        }
        debug_assert!(classes.iter().all(|c| !c.is_empty()));
        DoxasticState { classes }
    }

    pub fn classes(&self) -> &[WorldSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> WorldSet {
        self.classes[i]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the last class, the paper's ω.
    pub fn omega(&self) -> usize {
        self.classes.len() - 1
    }

    /// Number of worlds of the underlying alphabet.
    pub fn universe(&self) -> usize {
        self.classes[0].universe()
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::from_bits(0, self.universe()).complement()
    }

    pub fn is_flat(&self) -> bool {
        self.classes.len() == 1
    }

    /// The unique `i` with `w ∈ C(i)`.
    pub fn class_index(&self, w: World) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(w))
            .expect("every world belongs to exactly one class")
    }

    /// `Less` when `i` is strictly more believed than `j`.
    pub fn compare(&self, i: World, j: World) -> Ordering {
        self.class_index(i).cmp(&self.class_index(j))
    }

    /// Least class index intersecting `A`.
    pub fn imin(&self, a: WorldSet) -> Result<usize, StateError> {
        if a.is_empty() {
            return Err(StateError::EmptyFormula);
        }
        Ok(self
            .classes
            .iter()
            .position(|c| !c.is_disjoint(a))
            .expect("a nonempty set meets some class"))
    }

    /// Greatest class index intersecting `A`.
    pub fn imax(&self, a: WorldSet) -> Result<usize, StateError> {
        if a.is_empty() {
            return Err(StateError::EmptyFormula);
        }
        Ok(self
            .classes
            .iter()
            .rposition(|c| !c.is_disjoint(a))
            .expect("a nonempty set meets some class"))
    }

    /// The most believed models of `A`: `C(imin(A)) ∩ A`.
    pub fn min_models(&self, a: WorldSet) -> Result<WorldSet, StateError> {
        Ok(self.classes[self.imin(a)?].intersect(a))
    }

    /// The class list reversed, `[C(ω), ..., C(0)]`.
    pub fn reverse(&self) -> DoxasticState {
        let mut classes = self.classes.clone();
        classes.reverse();
        DoxasticState { classes }
    }

    /// True when every class of `self` is contained in a class of `coarse`.
    pub fn refines(&self, coarse: &DoxasticState) -> bool {
        self.classes.iter().all(|c| coarse.classes.iter().any(|d| c.is_subset(*d)))
    }

    /// True when `A` lies within a single class.
    pub fn is_single_class(&self, a: WorldSet) -> Result<bool, StateError> {
        let i = self.imin(a)?;
        Ok(a.is_subset(self.classes[i]))
    }

    /// The class index of each world, packed four bits per world.
    ///
    /// Collision-free within an alphabet: the class-index vector determines
    /// the state, so it doubles as a hash and as an enumeration key.
    pub fn fingerprint(&self) -> u64 {
        let mut fp = 0u64;
        for (i, class) in self.classes.iter().enumerate() {
            for w in class.iter() {
                fp |= (i as u64) << (4 * w.0 as u64);
            }
        }
        fp
    }

    /// The class index of each world, one entry per world.
    pub fn class_indices(&self) -> Vec<u8> {
        let mut v = alloc::vec![0u8; self.universe()];
        for (i, class) in self.classes.iter().enumerate() {
            for w in class.iter() {
                v[w.0 as usize] = i as u8;
            }
        }
        v
    }

    /// Renders the state in `>` notation, classes as canonical DNF formulas.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                out.push_str(" > ");
            }
            out.push_str(&class.to_dnf(alphabet));
        }
        out
    }
}

impl fmt::Debug for DoxasticState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, " > ")?;
            }
            write!(f, "{class:?}")?;
        }
        write!(f, "]")
    }
}

/// What failed while parsing a state literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateParseError {
    /// A class formula failed to parse; class index and inner error.
    Formula(usize, ParseError),
    /// The class formulas do not partition the worlds.
    Invalid(StateError),
}

impl fmt::Display for StateParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateParseError::Formula(i, e) => write!(f, "class {i}: {e}"),
            StateParseError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for StateParseError {}

/// Parses the `>`-notation state literal, e.g. `"a&b > a&!b | !a&b > !a&!b"`.
///
/// The leftmost class is the most believed. Every class formula must be
/// satisfiable, the classes must be pairwise disjoint and together cover all
/// worlds; otherwise parsing fails.
pub fn parse_state(text: &str, alphabet: &Alphabet) -> Result<DoxasticState, StateParseError> {
    let mut classes = Vec::new();
    for (i, part) in text.split('>').enumerate() {
        let set = parse_formula(part, alphabet).map_err(|e| StateParseError::Formula(i, e))?;
        if set.is_empty() {
            return Err(StateParseError::Invalid(StateError::EmptyClass(i)));
        }
        classes.push(set);
    }
    canonicalize(classes, alphabet).map_err(StateParseError::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::formula;
    use alloc::vec;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// The worked example state [{11}, {10,01}, {00}].
    fn c_star(alphabet: &Alphabet) -> DoxasticState {
        parse_state("a&b > a&!b | !a&b > !a&!b", alphabet).unwrap()
    }

    fn set(alphabet: &Alphabet, text: &str) -> WorldSet {
        formula(text, alphabet)
    }

    #[test]
    fn canonicalize_elides_empty_classes() {
        let ab = ab();
        let raw = vec![set(&ab, "a&b"), ab.no_worlds(), set(&ab, "!(a&b)")];
        let state = canonicalize(raw, &ab).unwrap();
        assert_eq!(state.class_count(), 2);
        assert_eq!(state.class(0), set(&ab, "a&b"));
        assert_eq!(state.class(1), set(&ab, "!(a&b)"));
    }

    #[test]
    fn canonicalize_single_class_is_flat() {
        let ab = ab();
        let state = canonicalize(vec![ab.all_worlds()], &ab).unwrap();
        assert_eq!(state, flat_state(&ab));
        assert!(state.is_flat());
    }

    #[test]
    fn canonicalize_rejects_missing_worlds() {
        let ab = ab();
        let raw = vec![set(&ab, "a&b"), set(&ab, "a&!b")];
        assert!(matches!(canonicalize(raw, &ab), Err(StateError::Coverage(_))));
    }

    #[test]
    fn canonicalize_rejects_overlap() {
        let ab = ab();
        let raw = vec![set(&ab, "a"), set(&ab, "a&b | !a")];
        assert!(matches!(canonicalize(raw, &ab), Err(StateError::Overlap(_))));
    }

    #[test]
    fn flat_state_examples() {
        let a = Alphabet::new(["a"]).unwrap();
        assert_eq!(flat_state(&a).classes(), [a.all_worlds()]);
        let ab = ab();
        assert_eq!(flat_state(&ab).classes(), [ab.all_worlds()]);
        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        assert_eq!(flat_state(&abc).class(0).len(), 8);
    }

    #[test]
    fn formula_order_examples() {
        let ab = ab();
        let order = formula_order(set(&ab, "!a"), &ab).unwrap();
        assert_eq!(order.classes(), [set(&ab, "!a"), set(&ab, "a")]);

        assert_eq!(formula_order(ab.all_worlds(), &ab).unwrap(), flat_state(&ab));

        let order = formula_order(set(&ab, "a&!b"), &ab).unwrap();
        assert_eq!(order.classes(), [set(&ab, "a&!b"), set(&ab, "!(a&!b)")]);

        assert_eq!(formula_order(ab.no_worlds(), &ab), Err(StateError::EmptyFormula));
    }

    #[test]
    fn class_index_and_compare() {
        let ab = ab();
        let c = c_star(&ab);
        let w01 = World::from_bitstring("01", 2).unwrap();
        let w00 = World::from_bitstring("00", 2).unwrap();
        let w11 = World::from_bitstring("11", 2).unwrap();
        assert_eq!(c.class_index(w01), 1);
        assert_eq!(c.class_index(w00), 2);
        assert_eq!(flat_state(&ab).class_index(w11), 0);

        assert_eq!(c.compare(w11, w01), Ordering::Less);
        assert_eq!(c.compare(w00, w01), Ordering::Greater);
        assert_eq!(c.compare(w01, w01), Ordering::Equal);
        assert_eq!(flat_state(&ab).compare(w11, w00), Ordering::Equal);
    }

    #[test]
    fn intro_ordering_from_sun_open_example() {
        // s,o > not-s,o > s,not-o > not-s,not-o; sun more believed than no sun.
        let so = Alphabet::new(["s", "o"]).unwrap();
        let c = parse_state("s&o > !s&o > s&!o > !s&!o", &so).unwrap();
        let w11 = World::from_bitstring("11", 2).unwrap();
        let w01 = World::from_bitstring("01", 2).unwrap();
        assert_eq!(c.compare(w11, w01), Ordering::Less);
    }

    #[test]
    fn imin_imax_min_models() {
        let ab = ab();
        let c = c_star(&ab);
        let a = set(&ab, "!a");
        assert_eq!(c.imin(a), Ok(1));
        assert_eq!(c.imax(a), Ok(2));
        assert_eq!(c.min_models(a), Ok(set(&ab, "!a&b")));

        let flat = flat_state(&ab);
        assert_eq!(flat.imin(a), Ok(0));
        assert_eq!(flat.imax(a), Ok(0));
        assert_eq!(flat.min_models(a), Ok(a));

        // A inside the last class.
        let last = set(&ab, "!a&!b");
        assert_eq!(c.imin(last), Ok(2));
        assert_eq!(c.imax(last), Ok(2));
        assert_eq!(c.min_models(last), Ok(last));

        assert_eq!(c.imin(ab.no_worlds()), Err(StateError::EmptyFormula));
    }

    #[test]
    fn reverse_involutive() {
        let ab = ab();
        let c = c_star(&ab);
        let r = c.reverse();
        assert_eq!(r.class(0), set(&ab, "!a&!b"));
        assert_eq!(r.class(2), set(&ab, "a&b"));
        assert_eq!(r.reverse(), c);
        assert_eq!(flat_state(&ab).reverse(), flat_state(&ab));
    }

    #[test]
    fn refines_examples() {
        let ab = ab();
        let fine = parse_state("a&b > a&!b > !a", &ab).unwrap();
        let coarse = parse_state("a > !a", &ab).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.refines(&flat_state(&ab)));
        assert!(fine.refines(&fine));
    }

    #[test]
    fn single_class_examples() {
        let ab = ab();
        let c = c_star(&ab);
        assert_eq!(c.is_single_class(set(&ab, "a&!b | !a&b")), Ok(true));
        assert_eq!(c.is_single_class(set(&ab, "!a")), Ok(false));
        assert_eq!(flat_state(&ab).is_single_class(set(&ab, "a")), Ok(true));
        assert!(c.is_single_class(ab.no_worlds()).is_err());
    }

    #[test]
    fn state_literal_roundtrip() {
        let ab = ab();
        let c = c_star(&ab);
        assert_eq!(c.render(&ab), "a&b > a&!b | !a&b > !a&!b");
        assert_eq!(parse_state(&c.render(&ab), &ab).unwrap(), c);
    }

    #[test]
    fn state_literal_rejects_non_partition() {
        let ab = ab();
        assert!(parse_state("a > b", &ab).is_err());
        assert!(parse_state("a > false > !a", &ab).is_err());
        assert!(parse_state("a", &ab).is_err());
        assert!(parse_state("true", &ab).is_ok());
    }

    #[test]
    fn fingerprint_identifies_states() {
        let ab = ab();
        let c = c_star(&ab);
        assert_ne!(c.fingerprint(), flat_state(&ab).fingerprint());
        assert_ne!(c.fingerprint(), c.reverse().fingerprint());
        let back = DoxasticState::from_class_indices(&c.class_indices());
        assert_eq!(back, c);
    }
}
