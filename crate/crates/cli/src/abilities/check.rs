//! Decision procedures for the nine abilities, the operator premise checks,
//! and the implication consistency checker.
//!
//! Every ability quantifies over all start states and all targets of some
//! family, so verdicts are computed on the condensation of the move graph:
//! per component, one pass aggregates which targets are realized inside the
//! component, then a sweep in reverse topological order folds in everything
//! reachable from it. A verdict is then a check over all components, a
//! counterexample is the first component that misses a target, and a
//! witness is a shortest-path search for one spot instance.

use doxa_core::doxastic::{formula_order, DoxasticState};
use doxa_core::logic::{World, WorldSet};
use doxa_core::operators::{revise, OperatorId};
use rayon::prelude::*;

use super::graph::{for_each_move, reachable_lazy, shortest_sequence, IdSet};
use super::scc::{condensation, Condensation};
use super::space::StateSpace;

/// The nine abilities, in definition order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ability {
    FullyPlastic,
    Plastic,
    Learnable,
    Correcting,
    Damascan,
    Equating,
    Amnesic,
    Believer,
    Dogmatic,
}

impl Ability {
    pub const ALL: [Ability; 9] = [
        Ability::FullyPlastic,
        Ability::Plastic,
        Ability::Learnable,
        Ability::Correcting,
        Ability::Damascan,
        Ability::Equating,
        Ability::Amnesic,
        Ability::Believer,
        Ability::Dogmatic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ability::FullyPlastic => "fully_plastic",
            Ability::Plastic => "plastic",
            Ability::Learnable => "learnable",
            Ability::Correcting => "correcting",
            Ability::Damascan => "damascan",
            Ability::Equating => "equating",
            Ability::Amnesic => "amnesic",
            Ability::Believer => "believer",
            Ability::Dogmatic => "dogmatic",
        }
    }

    pub fn parse(name: &str) -> Option<Ability> {
        Ability::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl std::fmt::Display for Ability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// What a witness or counterexample is aiming at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbilityTarget {
    /// Reach this exact state.
    State(DoxasticState),
    /// Reach a state where the two worlds are equally believed.
    WorldsEqual(World, World),
    /// Reach a state where `below` is strictly more believed than `above`.
    WorldBelow { below: World, above: World },
    /// Reach a state whose first class is exactly this set.
    FirstClass(WorldSet),
    /// Reach the two-class order of this set.
    FormulaOrder(WorldSet),
}

/// A replayable positive certificate for one spot instance of an ability.
#[derive(Clone, Debug)]
pub struct Witness {
    pub start: DoxasticState,
    pub target: AbilityTarget,
    pub formulas: Vec<WorldSet>,
    pub result: DoxasticState,
}

/// A concrete start state and target no revision sequence connects.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub state: DoxasticState,
    pub target: AbilityTarget,
}

/// The verdict for one (operator, alphabet, ability) triple.
#[derive(Clone, Debug)]
pub struct AbilityReport {
    pub operator: OperatorId,
    pub vars_count: usize,
    pub ability: Ability,
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub counterexample: Option<Counterexample>,
    /// For believer and dogmatic only: whether the excluded corner target
    /// `F = true` (which coincides with reaching the flat state) is
    /// attainable from every state. Equal to the amnesic verdict.
    pub amnesic_corner: Option<bool>,
}

/// Per-component aggregate of the targets realized by reachable states.
#[derive(Clone, Copy, Default)]
struct SccProps {
    /// Bit `pair_index(i, j)`: some reachable state has `i ≡ j`.
    pairs_eq: u32,
    /// Bit `i*w + j`: some reachable state believes `i` strictly below `j`.
    pairs_lt: u64,
    /// Bit `v`: some reachable state has first class with bitset `v`.
    first_classes: [u64; 4],
    /// Bit `v`: the order `[v, ¬v]` is reachable.
    formula_orders: [u64; 4],
    /// The flat state is reachable.
    reaches_flat: bool,
}

impl SccProps {
    fn merge(&mut self, other: &SccProps) {
        self.pairs_eq |= other.pairs_eq;
        self.pairs_lt |= other.pairs_lt;
        for i in 0..4 {
            self.first_classes[i] |= other.first_classes[i];
            self.formula_orders[i] |= other.formula_orders[i];
        }
        self.reaches_flat |= other.reaches_flat;
    }
}

fn pair_index(i: usize, j: usize) -> u32 {
    debug_assert!(i < j);
    (j * (j - 1) / 2 + i) as u32
}

fn bitset_get(set: &[u64; 4], v: u16) -> bool {
    set[(v >> 6) as usize] & (1 << (v & 63)) != 0
}

fn bitset_set(set: &mut [u64; 4], v: u16) {
    set[(v >> 6) as usize] |= 1 << (v & 63);
}

/// The reachability analysis of one operator over one state space.
pub struct Analysis<'a> {
    space: &'a StateSpace,
    op: OperatorId,
    cond: Condensation,
    props: Vec<SccProps>,
    reach_from_flat: IdSet,
}

impl<'a> Analysis<'a> {
    pub fn new(space: &'a StateSpace, op: OperatorId) -> Analysis<'a> {
        let cond = condensation(space, op);
        let reach_from_flat = reachable_lazy(space, op, space.flat_id(), |_| false);

        let mut props = vec![SccProps::default(); cond.scc_count];
        let worlds = space.alphabet().world_count();

        // States sorted by component id: components complete in reverse
        // topological order, so by the time a state is processed every
        // successor component outside its own is already final.
        let mut order: Vec<u32> = (0..space.len() as u32).collect();
        order.sort_by_key(|&id| cond.scc_of[id as usize]);

        for &id in &order {
            let scc = cond.scc_of[id as usize] as usize;
            let mut own = SccProps::default();
            let state = space.state(id);
            let indices = state.class_indices();
            for j in 1..worlds {
                for i in 0..j {
                    match indices[i].cmp(&indices[j]) {
                        std::cmp::Ordering::Equal => own.pairs_eq |= 1 << pair_index(i, j),
                        std::cmp::Ordering::Less => own.pairs_lt |= 1 << (i * worlds + j),
                        std::cmp::Ordering::Greater => own.pairs_lt |= 1 << (j * worlds + i),
                    }
                }
            }
            bitset_set(&mut own.first_classes, state.class(0).bits());
            if state.class_count() == 2 {
                bitset_set(&mut own.formula_orders, state.class(0).bits());
            }
            own.reaches_flat = state.is_flat();
            props[scc].merge(&own);

            for_each_move(space, op, id, |_, t| {
                let tscc = cond.scc_of[t as usize] as usize;
                if tscc != scc {
                    let merged = props[tscc];
                    props[scc].merge(&merged);
                }
            });
        }

        Analysis { space, op, cond, props, reach_from_flat }
    }

    pub fn operator(&self) -> OperatorId {
        self.op
    }

    fn worlds(&self) -> usize {
        self.space.alphabet().world_count()
    }

    fn props_of(&self, id: u32) -> &SccProps {
        &self.props[self.cond.scc_of[id as usize] as usize]
    }

    /// Last state in enumeration order: all classes singleton, the greatest
    /// world most believed. The canonical "spot" start for witnesses.
    fn spot_start(&self) -> u32 {
        self.space.len() as u32 - 1
    }

    fn witness_to(&self, start: u32, target: AbilityTarget, goal: impl Fn(u32) -> bool) -> Witness {
        let (masks, reached) = shortest_sequence(self.space, self.op, start, goal)
            .expect("verdict is positive, a witness must exist");
        let worlds = self.worlds();
        Witness {
            start: self.space.state(start).clone(),
            target,
            formulas: masks.into_iter().map(|m| WorldSet::from_bits(m, worlds)).collect(),
            result: self.space.state(reached).clone(),
        }
    }

    fn counterexample(&self, state: u32, target: AbilityTarget) -> Counterexample {
        Counterexample { state: self.space.state(state).clone(), target }
    }

    /// Runs the decision procedure for one ability.
    pub fn check(&self, ability: Ability) -> AbilityReport {
        let n = self.space.len() as u32;
        let worlds = self.worlds();
        let all_mask = ((1u32 << worlds) - 1) as u16;
        let flat = self.space.flat_id();
        let last = self.spot_start();
        let full_eq: u32 = (1u32 << (worlds * (worlds - 1) / 2)) - 1;
        let full_lt: u64 = {
            let mut m = 0u64;
            for i in 0..worlds {
                for j in 0..worlds {
                    if i != j {
                        m |= 1 << (i * worlds + j);
                    }
                }
            }
            m
        };

        let mut witness = None;
        let mut counterexample = None;
        let mut amnesic_corner = None;

        let amnesic_verdict = || (0..n).all(|id| self.props_of(id).reaches_flat);

        let verdict = match ability {
            Ability::FullyPlastic => {
                let verdict = self.cond.scc_count == 1;
                if verdict {
                    let target = AbilityTarget::State(self.space.state(flat).clone());
                    witness = Some(self.witness_to(1, target, |s| s == flat));
                } else {
                    // Component 0 is a sink: nothing outside it is reachable.
                    let inside =
                        (0..n).find(|&id| self.cond.scc_of[id as usize] == 0).unwrap();
                    let outside =
                        (0..n).find(|&id| self.cond.scc_of[id as usize] != 0).unwrap();
                    counterexample = Some(self.counterexample(
                        inside,
                        AbilityTarget::State(self.space.state(outside).clone()),
                    ));
                }
                verdict
            }
            Ability::Plastic => {
                // All ids except the flat state (id 0) are non-flat.
                let one_scc =
                    (2..n).all(|id| self.cond.scc_of[id as usize] == self.cond.scc_of[1]);
                let verdict = one_scc && self.reach_from_flat.contains(1);
                if verdict {
                    let target = AbilityTarget::State(self.space.state(n - 1).clone());
                    witness = Some(self.witness_to(flat, target, |s| s == n - 1));
                } else if let Some(g) = (1..n).find(|&id| !self.reach_from_flat.contains(id)) {
                    counterexample = Some(self.counterexample(
                        flat,
                        AbilityTarget::State(self.space.state(g).clone()),
                    ));
                } else {
                    // Non-flat states split across components. Either state 1
                    // misses some non-flat state, or a state it reaches in a
                    // different component cannot come back.
                    let reach_one = reachable_lazy(self.space, self.op, 1, |_| false);
                    let (c, g) = match (1..n).find(|&id| !reach_one.contains(id)) {
                        Some(g) => (1, g),
                        None => {
                            let c = (2..n)
                                .find(|&id| {
                                    self.cond.scc_of[id as usize] != self.cond.scc_of[1]
                                })
                                .expect("components differ");
                            (c, 1)
                        }
                    };
                    counterexample = Some(self.counterexample(
                        c,
                        AbilityTarget::State(self.space.state(g).clone()),
                    ));
                }
                verdict
            }
            Ability::Learnable => {
                let verdict = self.reach_from_flat.is_full();
                if verdict {
                    let target = AbilityTarget::State(self.space.state(n - 1).clone());
                    witness = Some(self.witness_to(flat, target, |s| s == n - 1));
                } else {
                    let g = self.reach_from_flat.first_absent().unwrap();
                    counterexample = Some(self.counterexample(
                        flat,
                        AbilityTarget::State(self.space.state(g).clone()),
                    ));
                }
                verdict
            }
            Ability::Correcting => {
                let verdict = (0..n).all(|id| self.props_of(id).pairs_lt == full_lt);
                if verdict {
                    // Invert the extremes of the all-singleton state, where
                    // world 0 starts out least believed.
                    let (below, above) = (World(0), World(worlds as u8 - 1));
                    let target = AbilityTarget::WorldBelow { below, above };
                    witness = Some(self.witness_to(last, target, |s| {
                        let st = self.space.state(s);
                        st.class_index(below) < st.class_index(above)
                    }));
                } else {
                    let id = (0..n).find(|&id| self.props_of(id).pairs_lt != full_lt).unwrap();
                    let missing = (self.props_of(id).pairs_lt ^ full_lt).trailing_zeros();
                    let (i, j) = (missing as usize / worlds, missing as usize % worlds);
                    counterexample = Some(self.counterexample(
                        id,
                        AbilityTarget::WorldBelow { below: World(i as u8), above: World(j as u8) },
                    ));
                }
                verdict
            }
            Ability::Damascan => {
                let reverse_id = |id: u32| {
                    self.space
                        .id_of(&self.space.state(id).reverse())
                        .expect("reverse of a canonical state is canonical")
                };
                let verdict = (0..n).all(|id| {
                    self.cond.scc_of[id as usize] == self.cond.scc_of[reverse_id(id) as usize]
                });
                if verdict {
                    let goal_id = reverse_id(last);
                    let target = AbilityTarget::State(self.space.state(goal_id).clone());
                    witness = Some(self.witness_to(last, target, |s| s == goal_id));
                } else {
                    let id = (0..n)
                        .find(|&id| {
                            self.cond.scc_of[id as usize]
                                != self.cond.scc_of[reverse_id(id) as usize]
                        })
                        .unwrap();
                    counterexample = Some(self.counterexample(
                        id,
                        AbilityTarget::State(self.space.state(id).reverse()),
                    ));
                }
                verdict
            }
            Ability::Equating => {
                let verdict = (0..n).all(|id| self.props_of(id).pairs_eq == full_eq);
                if verdict {
                    let (i, j) = (World(0), World(1));
                    let target = AbilityTarget::WorldsEqual(i, j);
                    witness = Some(self.witness_to(last, target, |s| {
                        let st = self.space.state(s);
                        st.class_index(i) == st.class_index(j)
                    }));
                } else {
                    let id = (0..n).find(|&id| self.props_of(id).pairs_eq != full_eq).unwrap();
                    let missing = (self.props_of(id).pairs_eq ^ full_eq).trailing_zeros();
                    let (i, j) = unpair(missing, worlds);
                    counterexample = Some(
                        self.counterexample(id, AbilityTarget::WorldsEqual(World(i), World(j))),
                    );
                }
                verdict
            }
            Ability::Amnesic => {
                let verdict = amnesic_verdict();
                if verdict {
                    let target = AbilityTarget::State(self.space.state(flat).clone());
                    witness = Some(self.witness_to(last, target, |s| s == flat));
                } else {
                    let id = (0..n).find(|&id| !self.props_of(id).reaches_flat).unwrap();
                    counterexample = Some(self.counterexample(
                        id,
                        AbilityTarget::State(self.space.state(flat).clone()),
                    ));
                }
                verdict
            }
            Ability::Believer => {
                amnesic_corner = Some(amnesic_verdict());
                let missing_value = |id: u32| {
                    (1..all_mask).find(|&v| !bitset_get(&self.props_of(id).first_classes, v))
                };
                let verdict = (0..n).all(|id| missing_value(id).is_none());
                if verdict {
                    // World 0 sits at the bottom of the spot start state, so
                    // promoting it to the whole first class takes real work.
                    let f = WorldSet::from_bits(1, worlds);
                    let target = AbilityTarget::FirstClass(f);
                    witness = Some(
                        self.witness_to(last, target, |s| self.space.state(s).class(0) == f),
                    );
                } else {
                    let id = (0..n).find(|&id| missing_value(id).is_some()).unwrap();
                    let v = missing_value(id).unwrap();
                    counterexample = Some(self.counterexample(
                        id,
                        AbilityTarget::FirstClass(WorldSet::from_bits(v, worlds)),
                    ));
                }
                verdict
            }
            Ability::Dogmatic => {
                amnesic_corner = Some(amnesic_verdict());
                let missing_value = |id: u32| {
                    (1..all_mask).find(|&v| !bitset_get(&self.props_of(id).formula_orders, v))
                };
                let verdict = (0..n).all(|id| missing_value(id).is_none());
                if verdict {
                    let f = WorldSet::from_bits(1, worlds);
                    let goal_state = formula_order(f, self.space.alphabet()).unwrap();
                    let goal_id = self.space.id_of(&goal_state).unwrap();
                    let target = AbilityTarget::FormulaOrder(f);
                    witness = Some(self.witness_to(last, target, |s| s == goal_id));
                } else {
                    let id = (0..n).find(|&id| missing_value(id).is_some()).unwrap();
                    let v = missing_value(id).unwrap();
                    counterexample = Some(self.counterexample(
                        id,
                        AbilityTarget::FormulaOrder(WorldSet::from_bits(v, worlds)),
                    ));
                }
                verdict
            }
        };

        AbilityReport {
            operator: self.op,
            vars_count: self.space.alphabet().len(),
            ability,
            verdict,
            witness,
            counterexample,
            amnesic_corner,
        }
    }
}

fn unpair(index: u32, worlds: usize) -> (u8, u8) {
    for j in 1..worlds {
        for i in 0..j {
            if pair_index(i, j) == index {
                return (i as u8, j as u8);
            }
        }
    }
    unreachable!("pair index in range")
}

/// Checks one ability of one operator by exhaustive reachability.
pub fn check_ability(space: &StateSpace, op: OperatorId, ability: Ability) -> AbilityReport {
    Analysis::new(space, op).check(ability)
}

/// One operator's row of the ability table.
#[derive(Clone, Debug)]
pub struct OperatorRow {
    pub operator: OperatorId,
    pub reports: Vec<AbilityReport>,
}

/// The full table: all operators in catalog order, all nine abilities in
/// definition order.
#[derive(Clone, Debug)]
pub struct AbilityTable {
    pub vars_count: usize,
    pub rows: Vec<OperatorRow>,
}

impl AbilityTable {
    pub fn verdict(&self, op: OperatorId, ability: Ability) -> bool {
        self.rows
            .iter()
            .find(|r| r.operator == op)
            .and_then(|r| r.reports.iter().find(|rep| rep.ability == ability))
            .map(|rep| rep.verdict)
            .expect("complete table")
    }
}

/// Computes the 12 × 9 table. With `parallel`, operators are analyzed on
/// separate threads; row order is fixed either way.
pub fn ability_table(space: &StateSpace, parallel: bool) -> AbilityTable {
    let analyze = |op: &OperatorId| -> OperatorRow {
        let analysis = Analysis::new(space, *op);
        OperatorRow {
            operator: *op,
            reports: Ability::ALL.iter().map(|&a| analysis.check(a)).collect(),
        }
    };
    let rows = if parallel {
        OperatorId::ALL.par_iter().map(analyze).collect()
    } else {
        OperatorId::ALL.iter().map(analyze).collect()
    };
    AbilityTable { vars_count: space.alphabet().len(), rows }
}

/// The two premises of the no-amnesia theorem plus the refinement premise of
/// the no-equating theorem, checked exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Premises {
    /// `(C * A)(0) ⊆ A` for every state and nonempty formula.
    pub success: bool,
    /// `C * true = C` for every state.
    pub vacuity: bool,
    /// Every output class is contained in an input class, always.
    pub refinement: bool,
}

pub fn check_operator_premises(space: &StateSpace, op: OperatorId, parallel: bool) -> Premises {
    let worlds = space.alphabet().world_count();
    let all = ((1u32 << worlds) - 1) as u16;
    let one = |state: &DoxasticState| -> Premises {
        let mut p = Premises { success: true, vacuity: true, refinement: true };
        for mask in 1..=all {
            let a = WorldSet::from_bits(mask, worlds);
            let out = revise(op, state, a).expect("nonempty formula");
            p.success &= out.class(0).is_subset(a);
            p.refinement &= out.refines(state);
            if mask == all {
                p.vacuity &= out == *state;
            }
        }
        p
    };
    let fold = |x: Premises, y: Premises| Premises {
        success: x.success && y.success,
        vacuity: x.vacuity && y.vacuity,
        refinement: x.refinement && y.refinement,
    };
    let unit = Premises { success: true, vacuity: true, refinement: true };
    if parallel {
        space.states().par_iter().map(one).reduce(|| unit, fold)
    } else {
        space.states().iter().map(one).fold(unit, fold)
    }
}

/// A broken implication edge in a computed table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub operator: OperatorId,
    pub premise: &'static str,
    pub conclusion: &'static str,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} => {}", self.operator, self.premise, self.conclusion)
    }
}

/// A verdict matrix suitable for implication checking; convertible from an
/// [`AbilityTable`] or assembled by hand to inject faults in tests.
#[derive(Clone, Debug)]
pub struct VerdictTable {
    pub vars_count: usize,
    /// One entry per operator; verdicts indexed in [`Ability::ALL`] order.
    pub rows: Vec<(OperatorId, [bool; 9])>,
}

impl From<&AbilityTable> for VerdictTable {
    fn from(table: &AbilityTable) -> VerdictTable {
        let rows = table
            .rows
            .iter()
            .map(|row| {
                let mut verdicts = [false; 9];
                for (i, ability) in Ability::ALL.iter().enumerate() {
                    verdicts[i] = row
                        .reports
                        .iter()
                        .find(|r| r.ability == *ability)
                        .expect("complete row")
                        .verdict;
                }
                (row.operator, verdicts)
            })
            .collect();
        VerdictTable { vars_count: table.vars_count, rows }
    }
}

/// The table is missing an operator or lists one twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompleteTable(pub OperatorId);

impl std::fmt::Display for IncompleteTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "table does not have exactly one row for operator {}", self.0)
    }
}

impl std::error::Error for IncompleteTable {}

/// Checks the direct implication edges between abilities, per operator.
///
/// The edges are: fully plastic implies amnesic and plastic; amnesic and
/// learnable together imply fully plastic; amnesic implies equating;
/// plastic implies dogmatic, learnable and damascan; damascan implies
/// correcting; dogmatic implies believer; believer implies correcting; and
/// believer implies equating — the last only on alphabets of at least two
/// variables, where a first class can separate two chosen models from a
/// third. Composite implications (say, plastic implies equating) follow by
/// chaining edges, so a single broken edge is reported exactly once.
pub fn check_implications(table: &VerdictTable) -> Result<Vec<Violation>, IncompleteTable> {
    for op in OperatorId::ALL {
        if table.rows.iter().filter(|(o, _)| *o == op).count() != 1 {
            return Err(IncompleteTable(op));
        }
    }
    let idx = |a: Ability| Ability::ALL.iter().position(|&x| x == a).unwrap();
    let mut violations = Vec::new();
    for &(op, v) in &table.rows {
        let has = |a: Ability| v[idx(a)];
        let mut edge = |premise: &'static str, holds: bool, conclusion: Ability| {
            if holds && !has(conclusion) {
                violations.push(Violation { operator: op, premise, conclusion: conclusion.name() });
            }
        };
        edge("fully_plastic", has(Ability::FullyPlastic), Ability::Amnesic);
        edge("fully_plastic", has(Ability::FullyPlastic), Ability::Plastic);
        edge(
            "amnesic & learnable",
            has(Ability::Amnesic) && has(Ability::Learnable),
            Ability::FullyPlastic,
        );
        edge("amnesic", has(Ability::Amnesic), Ability::Equating);
        edge("plastic", has(Ability::Plastic), Ability::Dogmatic);
        edge("plastic", has(Ability::Plastic), Ability::Learnable);
        edge("plastic", has(Ability::Plastic), Ability::Damascan);
        edge("damascan", has(Ability::Damascan), Ability::Correcting);
        edge("dogmatic", has(Ability::Dogmatic), Ability::Believer);
        edge("believer", has(Ability::Believer), Ability::Correcting);
        if table.vars_count >= 2 {
            edge("believer", has(Ability::Believer), Ability::Equating);
        }
    }
    Ok(violations)
}
