//! Exhaustive enumeration of all doxastic states of an alphabet.
//!
//! A state is identified with the class-index vector of its worlds, so the
//! enumeration walks all surjections from the world set onto an initial
//! segment `{0..k-1}`, for every class count `k`. The number of states is
//! the ordered-set-partition (Fubini) number of the world count: 3 states
//! for one variable, 75 for two, 545835 for three.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use doxa_core::doxastic::DoxasticState;
use doxa_core::logic::Alphabet;

/// Exhaustive analysis is capped here: 3 variables means 8 worlds and
/// 545835 states; 4 variables would need the Fubini number of 16, which is
/// out of reach.
pub const MAX_EXHAUSTIVE_VARIABLES: usize = 3;

/// Fingerprints are already well-mixed class-index vectors; a single
/// multiply spreads them enough for the table.
#[derive(Default)]
pub struct FingerprintHasher(u64);

impl Hasher for FingerprintHasher {
    fn write(&mut self, _bytes: &[u8]) {
        unreachable!("fingerprint keys are hashed as u64");
    }

    fn write_u64(&mut self, value: u64) {
        self.0 = value.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

type FingerprintMap = HashMap<u64, u32, BuildHasherDefault<FingerprintHasher>>;

/// The alphabet is too large for exhaustive state enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TooManyVariables(pub usize);

impl std::fmt::Display for TooManyVariables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "exhaustive mode supports at most {MAX_EXHAUSTIVE_VARIABLES} variables, got {}",
            self.0
        )
    }
}

impl std::error::Error for TooManyVariables {}

/// All canonical doxastic states of one alphabet, with an id per state.
///
/// Ids are assigned in enumeration order: by class count, then by the
/// lexicographic order of the class-index vector. The flat state is id 0.
pub struct StateSpace {
    alphabet: Alphabet,
    states: Vec<DoxasticState>,
    index: FingerprintMap,
}

impl StateSpace {
    /// Enumerates every ordered partition of the world set.
    pub fn enumerate(alphabet: &Alphabet) -> Result<StateSpace, TooManyVariables> {
        if alphabet.len() > MAX_EXHAUSTIVE_VARIABLES {
            return Err(TooManyVariables(alphabet.len()));
        }
        let worlds = alphabet.world_count();
        let mut states = Vec::with_capacity(fubini(worlds) as usize);
        let mut indices = vec![0u8; worlds];
        for class_count in 1..=worlds {
            assign(&mut indices, 0, class_count, class_count, &mut states);
        }
        let mut index = FingerprintMap::with_capacity_and_hasher(
            states.len(),
            BuildHasherDefault::default(),
        );
        for (id, state) in states.iter().enumerate() {
            let prior = index.insert(state.fingerprint(), id as u32);
            debug_assert!(prior.is_none(), "duplicate fingerprint");
        }
        Ok(StateSpace { alphabet: alphabet.clone(), states, index })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn state(&self, id: u32) -> &DoxasticState {
        &self.states[id as usize]
    }

    pub fn states(&self) -> &[DoxasticState] {
        &self.states
    }

    /// The id of a canonical state of this alphabet.
    pub fn id_of(&self, state: &DoxasticState) -> Option<u32> {
        self.index.get(&state.fingerprint()).copied()
    }

    /// The flat state has id 0 by enumeration order.
    pub fn flat_id(&self) -> u32 {
        0
    }
}

/// Fills `indices[from..]` with classes `0..class_count`, requiring that
/// `missing` of those classes are still unused, and emits complete states.
fn assign(
    indices: &mut Vec<u8>,
    from: usize,
    class_count: usize,
    missing: usize,
    out: &mut Vec<DoxasticState>,
) {
    let remaining = indices.len() - from;
    if missing > remaining {
        return;
    }
    if from == indices.len() {
        out.push(DoxasticState::from_class_indices(indices));
        return;
    }
    for class in 0..class_count as u8 {
        let first_use = !indices[..from].contains(&class);
        indices[from] = class;
        assign(indices, from + 1, class_count, missing - usize::from(first_use), out);
    }
}

/// The ordered-set-partition count: `a(m) = Σ C(m,j)·a(m-j)`, `a(0) = 1`.
pub fn fubini(m: usize) -> u64 {
    let mut a = vec![0u64; m + 1];
    a[0] = 1;
    for i in 1..=m {
        for j in 1..=i {
            a[i] += binomial(i, j) * a[i - j];
        }
    }
    a[m]
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut result = 1u64;
    for i in 0..k.min(n - k) {
        result = result * (n - i) as u64 / (i + 1) as u64;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_counts_match_fubini() {
        assert_eq!(fubini(2), 3);
        assert_eq!(fubini(4), 75);
        assert_eq!(fubini(8), 545835);

        for n in 1..=2 {
            let alphabet = Alphabet::generated(n).unwrap();
            let space = StateSpace::enumerate(&alphabet).unwrap();
            assert_eq!(space.len() as u64, fubini(alphabet.world_count()));
        }
    }

    #[test]
    fn flat_state_is_id_zero() {
        let alphabet = Alphabet::generated(2).unwrap();
        let space = StateSpace::enumerate(&alphabet).unwrap();
        assert!(space.state(0).is_flat());
        assert_eq!(space.id_of(&doxa_core::doxastic::flat_state(&alphabet)), Some(0));
    }

    #[test]
    fn ids_roundtrip_and_fingerprints_unique() {
        let alphabet = Alphabet::generated(2).unwrap();
        let space = StateSpace::enumerate(&alphabet).unwrap();
        for id in 0..space.len() as u32 {
            assert_eq!(space.id_of(space.state(id)), Some(id));
        }
    }

    #[test]
    fn four_variables_rejected() {
        let alphabet = Alphabet::generated(4).unwrap();
        assert!(StateSpace::enumerate(&alphabet).is_err());
    }
}
