//! Alphabets, worlds, world sets and the propositional formula parser.
//!
//! A world is one interpretation of the alphabet, encoded as a bitmask. The
//! first alphabet variable is the most significant bit, so the printed
//! bitstring of a world reads left to right in alphabet order: over `{a,b}`,
//! the world `"10"` makes `a` true and `b` false. Worlds sort by their
//! bitmask value, which is ascending bitstring order: `00, 01, 10, 11`.
//!
//! A [`WorldSet`] is an explicit bitset over all worlds of the alphabet;
//! formulas parse to world sets and world sets print back as disjunctions of
//! minterms. No BDDs, no CNF: at four variables or fewer the truth table is
//! the cheapest representation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on alphabet size: 16 worlds keep every bitset in one `u16`.
pub const MAX_VARIABLES: usize = 4;

/// An ordered list of distinct propositional variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

/// Why an alphabet could not be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphabetError {
    /// No variables, or more than [`MAX_VARIABLES`].
    BadCount(usize),
    /// A name does not match `[a-z][a-z0-9_]*`, or is a formula keyword.
    BadName(String),
    /// The same name appears twice.
    Duplicate(String),
}

impl fmt::Display for AlphabetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetError::BadCount(n) => {
                write!(f, "alphabet must have 1 to {MAX_VARIABLES} variables, got {n}")
            }
            AlphabetError::BadName(name) => write!(f, "invalid variable name {name:?}"),
            AlphabetError::Duplicate(name) => write!(f, "duplicate variable name {name:?}"),
        }
    }
}

impl core::error::Error for AlphabetError {}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Alphabet {
    /// Builds an alphabet from variable names, in order.
    ///
    /// Names must match `[a-z][a-z0-9_]*`, be distinct, and not collide with
    /// the formula keywords `true` and `false`.
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_VARIABLES {
            return Err(AlphabetError::BadCount(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) || name == "true" || name == "false" {
                return Err(AlphabetError::BadName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(AlphabetError::Duplicate(name.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// Single-letter alphabet `a, b, c, d` of the given size.
    pub fn generated(count: usize) -> Result<Self, AlphabetError> {
        if count == 0 || count > MAX_VARIABLES {
            return Err(AlphabetError::BadCount(count));
        }
        Alphabet::new(["a", "b", "c", "d"][..count].iter().copied())
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of worlds, `2^len`.
    pub fn world_count(&self) -> usize {
        1 << self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// All worlds in ascending bitmask order.
    pub fn worlds(&self) -> impl Iterator<Item = World> + '_ {
        (0..self.world_count() as u8).map(World)
    }

    /// The full world set.
    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::all(self)
    }

    /// The empty world set.
    pub fn no_worlds(&self) -> WorldSet {
        WorldSet::empty(self)
    }

    /// The set containing exactly `world`.
    pub fn singleton(&self, world: World) -> WorldSet {
        WorldSet::empty(self).with(world)
    }
}

/// One propositional interpretation, as a variable-assignment bitmask.
///
/// The first alphabet variable is the most significant bit, so the value of
/// a world equals its printed bitstring read as a binary number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub u8);

impl World {
    /// Truth value of variable `var` (by alphabet index) in this world.
    pub fn truth(self, var: usize, alphabet: &Alphabet) -> bool {
        let shift = alphabet.len() - 1 - var;
        (self.0 >> shift) & 1 == 1
    }

    /// The `"10"`-style bitstring, leftmost character = first variable.
    pub fn bitstring(self, width: usize) -> String {
        let mut s = String::with_capacity(width);
        for i in (0..width).rev() {
            s.push(if (self.0 >> i) & 1 == 1 { '1' } else { '0' });
        }
        s
    }

    /// Parses a `"10"`-style bitstring of exactly `width` characters.
    pub fn from_bitstring(s: &str, width: usize) -> Option<World> {
        if s.len() != width {
            return None;
        }
        let mut value = 0u8;
        for c in s.chars() {
            value = (value << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return None,
                };
        }
        Some(World(value))
    }

    /// The minterm satisfied by exactly this world, e.g. `a&!b` for `10`.
    pub fn minterm(self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        for (i, name) in alphabet.names().iter().enumerate() {
            if i > 0 {
                s.push('&');
            }
            if !self.truth(i, alphabet) {
                s.push('!');
            }
            s.push_str(name);
        }
        s
    }
}

/// A set of worlds of one alphabet, as a bitset.
///
/// Bit `w` of `bits` is set when world `w` belongs to the set. The universe
/// size travels with the value so that complement is self-contained; all
/// binary operations require both operands to share it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldSet {
    bits: u16,
    universe: u8,
}

impl WorldSet {
    pub fn empty(alphabet: &Alphabet) -> Self {
        WorldSet { bits: 0, universe: alphabet.world_count() as u8 }
    }

    pub fn all(alphabet: &Alphabet) -> Self {
        let universe = alphabet.world_count() as u8;
        WorldSet { bits: Self::full_mask(universe), universe }
    }

    fn full_mask(universe: u8) -> u16 {
        ((1u32 << universe) - 1) as u16
    }

    /// Rebuilds a set from a raw bitmask over `universe` worlds.
    pub fn from_bits(bits: u16, universe: usize) -> Self {
        debug_assert!(u32::from(bits) < (1u32 << universe));
        WorldSet { bits, universe: universe as u8 }
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    /// Number of worlds in the universe this set ranges over.
    pub fn universe(self) -> usize {
        self.universe as usize
    }

    pub fn contains(self, w: World) -> bool {
        (self.bits >> w.0) & 1 == 1
    }

    pub fn with(self, w: World) -> Self {
        debug_assert!(w.0 < self.universe);
        WorldSet { bits: self.bits | (1 << w.0), universe: self.universe }
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_all(self) -> bool {
        self.bits == Self::full_mask(self.universe)
    }

    pub fn complement(self) -> Self {
        WorldSet { bits: !self.bits & Self::full_mask(self.universe), universe: self.universe }
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        WorldSet { bits: self.bits | other.bits, universe: self.universe }
    }

    pub fn intersect(self, other: Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        WorldSet { bits: self.bits & other.bits, universe: self.universe }
    }

    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        WorldSet { bits: self.bits & !other.bits, universe: self.universe }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Worlds in ascending bitmask order.
    pub fn iter(self) -> impl Iterator<Item = World> {
        (0..self.universe).map(World).filter(move |w| self.contains(*w))
    }

    /// Worlds in descending bitmask order, the order classes print in.
    pub fn iter_desc(self) -> impl Iterator<Item = World> {
        (0..self.universe).rev().map(World).filter(move |w| self.contains(*w))
    }

    /// The least world of the set by bitmask, if any.
    pub fn least(self) -> Option<World> {
        if self.bits == 0 {
            None
        } else {
            Some(World(self.bits.trailing_zeros() as u8))
        }
    }

    /// Canonical DNF: the minterms of the set in descending world order,
    /// `true` for the full set, `false` for the empty one.
    ///
    /// Parsing the result back over the same alphabet yields the same set.
    pub fn to_dnf(self, alphabet: &Alphabet) -> String {
        debug_assert_eq!(self.universe(), alphabet.world_count());
        if self.is_empty() {
            return "false".to_string();
        }
        if self.is_all() {
            return "true".to_string();
        }
        let mut out = String::new();
        for (i, w) in self.iter_desc().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            out.push_str(&w.minterm(alphabet));
        }
        out
    }

    /// The worlds as bitstrings, descending, e.g. `["10", "01"]`.
    pub fn bitstrings(self, alphabet: &Alphabet) -> Vec<String> {
        self.iter_desc().map(|w| w.bitstring(alphabet.len())).collect()
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.universe.trailing_zeros() as usize;
        write!(f, "{{")?;
        for (i, w) in self.iter_desc().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", w.bitstring(width))?;
        }
        write!(f, "}}")
    }
}

/// The `true \ A` complement from the order-of-a-formula construction.
pub fn complement(s: WorldSet) -> WorldSet {
    s.complement()
}

/// All worlds of the alphabet in ascending bitmask order.
pub fn enumerate_worlds(alphabet: &Alphabet) -> Vec<World> {
    alphabet.worlds().collect()
}

/// A formula parse failure, with the 1-based character position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownVariable(String),
    UnexpectedChar(char),
    UnexpectedEnd,
    TrailingInput,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnknownVariable(name) => {
                write!(f, "unknown variable {:?} at position {}", name, self.position)
            }
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {:?} at position {}", c, self.position)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of formula at position {}", self.position)
            }
            ParseErrorKind::TrailingInput => {
                write!(f, "trailing input at position {}", self.position)
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses a formula to the set of worlds satisfying it.
///
/// Grammar, with `!` binding tighter than `&` tighter than `|`:
///
/// ```text
/// formula := or
/// or      := and ("|" and)*
/// and     := not ("&" not)*
/// not     := "!" not | atom
/// atom    := var | "true" | "false" | "(" formula ")"
/// ```
///
/// Whitespace between tokens is insignificant. There is no implicit
/// conjunction by juxtaposition: `a b` is a syntax error, write `a & b`.
pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<WorldSet, ParseError> {
    let mut parser = Parser { chars: text.char_indices().peekable(), text, alphabet };
    let set = parser.or()?;
    parser.skip_ws();
    if let Some(&(i, _)) = parser.chars.peek() {
        return Err(ParseError { position: i + 1, kind: ParseErrorKind::TrailingInput });
    }
    Ok(set)
}

struct Parser<'a> {
    chars: core::iter::Peekable<core::str::CharIndices<'a>>,
    text: &'a str,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn end_position(&self) -> usize {
        self.text.chars().count() + 1
    }

    fn or(&mut self) -> Result<WorldSet, ParseError> {
        let mut set = self.and()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '|')) => {
                    self.chars.next();
                    set = set.union(self.and()?);
                }
                _ => return Ok(set),
            }
        }
    }

    fn and(&mut self) -> Result<WorldSet, ParseError> {
        let mut set = self.not()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '&')) => {
                    self.chars.next();
                    set = set.intersect(self.not()?);
                }
                _ => return Ok(set),
            }
        }
    }

    fn not(&mut self) -> Result<WorldSet, ParseError> {
        self.skip_ws();
        if let Some(&(_, '!')) = self.chars.peek() {
            self.chars.next();
            return Ok(self.not()?.complement());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<WorldSet, ParseError> {
        self.skip_ws();
        match self.chars.peek().copied() {
            None => {
                Err(ParseError { position: self.end_position(), kind: ParseErrorKind::UnexpectedEnd })
            }
            Some((_, '(')) => {
                self.chars.next();
                let set = self.or()?;
                self.skip_ws();
                match self.chars.next() {
                    Some((_, ')')) => Ok(set),
                    Some((j, c)) => {
                        Err(ParseError { position: j + 1, kind: ParseErrorKind::UnexpectedChar(c) })
                    }
                    None => Err(ParseError {
                        position: self.end_position(),
                        kind: ParseErrorKind::UnexpectedEnd,
                    }),
                }
            }
            Some((i, c)) if c.is_ascii_lowercase() => {
                let start = i;
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        name.push(c);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                match name.as_str() {
                    "true" => Ok(self.alphabet.all_worlds()),
                    "false" => Ok(self.alphabet.no_worlds()),
                    _ => match self.alphabet.var_index(&name) {
                        Some(var) => {
                            let mut set = self.alphabet.no_worlds();
                            for w in self.alphabet.worlds() {
                                if w.truth(var, self.alphabet) {
                                    set = set.with(w);
                                }
                            }
                            Ok(set)
                        }
                        None => Err(ParseError {
                            position: start + 1,
                            kind: ParseErrorKind::UnknownVariable(name),
                        }),
                    },
                }
            }
            Some((i, c)) => {
                Err(ParseError { position: i + 1, kind: ParseErrorKind::UnexpectedChar(c) })
            }
        }
    }
}

/// Convenience used throughout the tests: parse or panic.
pub fn formula(text: &str, alphabet: &Alphabet) -> WorldSet {
    match parse_formula(text, alphabet) {
        Ok(set) => set,
        Err(e) => panic!("bad formula {text:?}: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn ws(alphabet: &Alphabet, bitstrings: &[&str]) -> WorldSet {
        let mut set = alphabet.no_worlds();
        for s in bitstrings {
            set = set.with(World::from_bitstring(s, alphabet.len()).unwrap());
        }
        set
    }

    #[test]
    fn enumerate_worlds_ascending_bitmask() {
        let a = Alphabet::new(["a"]).unwrap();
        assert_eq!(enumerate_worlds(&a), [World(0), World(1)]);

        let ab = ab();
        let worlds: Vec<String> = enumerate_worlds(&ab).iter().map(|w| w.bitstring(2)).collect();
        assert_eq!(worlds, ["00", "01", "10", "11"]);

        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        assert_eq!(enumerate_worlds(&abc).len(), 8);
    }

    #[test]
    fn parse_single_model() {
        let ab = ab();
        assert_eq!(formula("a & !b", &ab), ws(&ab, &["10"]));
        assert_eq!(formula("true", &ab), ws(&ab, &["11", "10", "01", "00"]));
        assert_eq!(formula("a | b", &ab), ws(&ab, &["11", "10", "01"]));
        assert_eq!(formula("false", &ab), ab.no_worlds());
    }

    #[test]
    fn precedence_not_over_and_over_or() {
        let ab = ab();
        // !a&b | b&a is (!a & b) | (b & a), not !(a & (b | b)) & a.
        assert_eq!(formula("!a&b | b&a", &ab), ws(&ab, &["01", "11"]));
        assert_eq!(formula("!(a&b)", &ab), ws(&ab, &["10", "01", "00"]));
        assert_eq!(formula("!a & b", &ab), ws(&ab, &["01"]));
        assert_eq!(formula("a | b & !a", &ab), formula("a | (b & !a)", &ab));
    }

    #[test]
    fn parse_errors_carry_position() {
        let ab = ab();
        let err = parse_formula("a & c", &ab).unwrap_err();
        assert_eq!(err.position, 5);
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("c".into()));

        let err = parse_formula("a b", &ab).unwrap_err();
        assert_eq!(err.position, 3);
        assert_eq!(err.kind, ParseErrorKind::TrailingInput);

        let err = parse_formula("a &", &ab).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);

        let err = parse_formula("(a | b", &ab).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);

        assert!(parse_formula("", &ab).is_err());
    }

    #[test]
    fn no_juxtaposition_conjunction() {
        let ab = ab();
        assert!(parse_formula("!a(b | a)", &ab).is_err());
    }

    #[test]
    fn complement_involutive_and_edges() {
        let ab = ab();
        let s = ws(&ab, &["11", "10"]);
        assert_eq!(s.complement(), ws(&ab, &["01", "00"]));
        assert_eq!(s.complement().complement(), s);
        assert_eq!(ab.all_worlds().complement(), ab.no_worlds());
        assert_eq!(ab.no_worlds().complement(), ab.all_worlds());
    }

    #[test]
    fn dnf_roundtrip_exhaustive_all_widths() {
        for n in 1..=MAX_VARIABLES {
            let alphabet = Alphabet::generated(n).unwrap();
            for bits in 0..(1u32 << alphabet.world_count()) {
                let set = WorldSet::from_bits(bits as u16, alphabet.world_count());
                let printed = set.to_dnf(&alphabet);
                assert_eq!(formula(&printed, &alphabet), set, "width {n} bits {bits:#x}");
            }
        }
    }

    #[test]
    fn dnf_prints_descending_minterms() {
        let ab = ab();
        assert_eq!(ws(&ab, &["11", "10"]).to_dnf(&ab), "a&b | a&!b");
        assert_eq!(ws(&ab, &["01"]).to_dnf(&ab), "!a&b");
        assert_eq!(ab.all_worlds().to_dnf(&ab), "true");
        assert_eq!(ab.no_worlds().to_dnf(&ab), "false");
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(["a", "b", "c", "d", "e"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["A"]).is_err());
        assert!(Alphabet::new(["1a"]).is_err());
        assert!(Alphabet::new(["true"]).is_err());
        assert!(Alphabet::new(["x0", "x_1"]).is_ok());
    }

    #[test]
    fn least_world_is_min_bitmask() {
        let ab = ab();
        assert_eq!(ws(&ab, &["10", "00"]).least(), Some(World(0)));
        assert_eq!(ws(&ab, &["11", "10"]).least(), Some(World(2)));
        assert_eq!(ab.no_worlds().least(), None);
    }
}
