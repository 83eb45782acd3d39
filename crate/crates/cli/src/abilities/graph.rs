//! The revision move graph and reachability over it.
//!
//! Nodes are state ids from a [`StateSpace`]; there is an edge `s -> t` when
//! some nonempty formula revises `s` into `t`. Moves are always generated in
//! ascending formula-bitmask order, which makes successor lists, breadth
//! first searches and the witnesses extracted from them deterministic.
//!
//! For two variables the graph is tiny and materialized. For three
//! variables (545835 states, 255 moves each) storing every edge would cost
//! hundreds of megabytes, so the analyses can also walk moves lazily,
//! recomputing `revise` on demand.

use doxa_core::operators::{revise, OperatorId};
use rayon::prelude::*;

use super::space::StateSpace;

/// A materialized move graph: deduplicated successor ids per state, in
/// first-discovery (ascending formula) order.
pub struct MoveGraph {
    operator: OperatorId,
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

/// Applies every nonempty formula to `state`, passing each successor id to
/// `visit` in ascending formula-bitmask order (duplicates included).
pub fn for_each_move(
    space: &StateSpace,
    op: OperatorId,
    state: u32,
    mut visit: impl FnMut(u16, u32),
) {
    let worlds = space.alphabet().world_count();
    let all = ((1u32 << worlds) - 1) as u16;
    let current = space.state(state);
    for mask in 1..=all {
        let formula = doxa_core::logic::WorldSet::from_bits(mask, worlds);
        let next = revise(op, current, formula).expect("nonempty formula");
        let id = space.id_of(&next).expect("revision output is a canonical state");
        visit(mask, id);
    }
}

fn successor_block(space: &StateSpace, op: OperatorId, state: u32) -> Vec<u32> {
    let mut block = Vec::new();
    for_each_move(space, op, state, |_, id| {
        if !block.contains(&id) {
            block.push(id);
        }
    });
    block
}

/// Builds the full move graph. With `parallel`, states are processed in
/// chunks across threads; the result is identical either way.
pub fn build_move_graph(space: &StateSpace, op: OperatorId, parallel: bool) -> MoveGraph {
    let ids: Vec<u32> = (0..space.len() as u32).collect();
    let blocks: Vec<Vec<u32>> = if parallel {
        ids.par_iter().map(|&s| successor_block(space, op, s)).collect()
    } else {
        ids.iter().map(|&s| successor_block(space, op, s)).collect()
    };
    let mut offsets = Vec::with_capacity(space.len() + 1);
    let mut targets = Vec::new();
    offsets.push(0);
    for block in blocks {
        targets.extend_from_slice(&block);
        offsets.push(targets.len() as u32);
    }
    MoveGraph { operator: op, offsets, targets }
}

impl MoveGraph {
    pub fn operator(&self) -> OperatorId {
        self.operator
    }

    pub fn state_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Distinct successors of `state`, in first-discovery order.
    pub fn successors(&self, state: u32) -> &[u32] {
        let lo = self.offsets[state as usize] as usize;
        let hi = self.offsets[state as usize + 1] as usize;
        &self.targets[lo..hi]
    }

    pub fn out_degree(&self, state: u32) -> usize {
        self.successors(state).len()
    }
}

/// A plain bitset over state ids.
#[derive(Clone)]
pub struct IdSet {
    words: Vec<u64>,
    len: usize,
}

impl IdSet {
    pub fn new(len: usize) -> IdSet {
        IdSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn insert(&mut self, id: u32) -> bool {
        let word = &mut self.words[id as usize / 64];
        let bit = 1u64 << (id % 64);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    pub fn contains(&self, id: u32) -> bool {
        self.words[id as usize / 64] & (1 << (id % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    /// The smallest id missing from the set, if any.
    pub fn first_absent(&self) -> Option<u32> {
        (0..self.len as u32).find(|&id| !self.contains(id))
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len as u32).filter(move |&id| self.contains(id))
    }
}

/// Reflexive-transitive closure of the move relation from `from`: the empty
/// revision sequence is a sequence, so `from` itself is always included.
pub fn reachable(graph: &MoveGraph, from: u32) -> IdSet {
    let mut seen = IdSet::new(graph.state_count());
    let mut queue = std::collections::VecDeque::new();
    seen.insert(from);
    queue.push_back(from);
    while let Some(s) = queue.pop_front() {
        for &t in graph.successors(s) {
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Breadth-first reachability with lazy move enumeration, stopping as soon
/// as `stop` holds. Returns the set of states visited so far.
pub fn reachable_lazy(
    space: &StateSpace,
    op: OperatorId,
    from: u32,
    mut stop: impl FnMut(u32) -> bool,
) -> IdSet {
    let mut seen = IdSet::new(space.len());
    let mut queue = std::collections::VecDeque::new();
    seen.insert(from);
    if stop(from) {
        return seen;
    }
    queue.push_back(from);
    'outer: while let Some(s) = queue.pop_front() {
        let mut hit = false;
        for_each_move(space, op, s, |_, t| {
            if seen.insert(t) {
                queue.push_back(t);
                hit = hit || stop(t);
            }
        });
        if hit {
            break 'outer;
        }
    }
    seen
}

/// Shortest revision sequence from `start` to the first state satisfying
/// `goal`, by breadth-first search with moves in ascending formula order.
pub fn shortest_sequence(
    space: &StateSpace,
    op: OperatorId,
    start: u32,
    goal: impl Fn(u32) -> bool,
) -> Option<(Vec<u16>, u32)> {
    if goal(start) {
        return Some((Vec::new(), start));
    }
    let mut prev: Vec<(u32, u16)> = vec![(u32::MAX, 0); space.len()];
    let mut seen = IdSet::new(space.len());
    let mut queue = std::collections::VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        let mut found: Option<u32> = None;
        for_each_move(space, op, s, |mask, t| {
            if found.is_none() && seen.insert(t) {
                prev[t as usize] = (s, mask);
                if goal(t) {
                    found = Some(t);
                } else {
                    queue.push_back(t);
                }
            }
        });
        if let Some(mut at) = found {
            let target = at;
            let mut masks = Vec::new();
            while at != start {
                let (p, mask) = prev[at as usize];
                masks.push(mask);
                at = p;
            }
            masks.reverse();
            return Some((masks, target));
        }
    }
    None
}
