//! Strongly connected components of the move graph, via iterative Tarjan.
//!
//! The ability checks quantify over all start states, so per-source search
//! does not scale to three variables. The condensation does: components are
//! emitted in reverse topological order (sinks first), which lets target
//! predicates be propagated over the whole graph in a single sweep.

use doxa_core::operators::OperatorId;

use super::space::StateSpace;

/// Component id per state. Ids follow Tarjan completion order: component 0
/// is a sink, and every edge leads to an equal or smaller component id.
pub struct Condensation {
    pub scc_of: Vec<u32>,
    pub scc_count: usize,
}

const UNVISITED: u32 = u32::MAX;

pub fn condensation(space: &StateSpace, op: OperatorId) -> Condensation {
    let n = space.len();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut scc_of = vec![UNVISITED; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut scc_count = 0u32;

    // One successor is one revise call; recomputing moves on demand keeps
    // memory at O(states) instead of materializing the graph.
    let worlds = space.alphabet().world_count();
    let succ_at = |state: u32, move_index: u32| -> u32 {
        let mask = (move_index + 1) as u16;
        let formula = doxa_core::logic::WorldSet::from_bits(mask, worlds);
        let next = doxa_core::operators::revise(op, space.state(state), formula)
            .expect("nonempty formula");
        space.id_of(&next).expect("revision output is a canonical state")
    };
    let move_count = (1u32 << worlds) - 1;

    let mut frames: Vec<(u32, u32)> = Vec::new();
    for root in 0..n as u32 {
        if index[root as usize] != UNVISITED {
            continue;
        }
        frames.push((root, 0));
        index[root as usize] = next_index;
        lowlink[root as usize] = next_index;
        next_index += 1;
        on_stack[root as usize] = true;
        stack.push(root);

        while let Some(&mut (v, ref mut child)) = frames.last_mut() {
            if *child < move_count {
                let mi = *child;
                *child += 1;
                let w = succ_at(v, mi);
                if index[w as usize] == UNVISITED {
                    index[w as usize] = next_index;
                    lowlink[w as usize] = next_index;
                    next_index += 1;
                    on_stack[w as usize] = true;
                    stack.push(w);
                    frames.push((w, 0));
                } else if on_stack[w as usize] {
                    lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    lowlink[parent as usize] =
                        lowlink[parent as usize].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        scc_of[w as usize] = scc_count;
                        if w == v {
                            break;
                        }
                    }
                    scc_count += 1;
                }
            }
        }
    }

    Condensation { scc_of, scc_count: scc_count as usize }
}
