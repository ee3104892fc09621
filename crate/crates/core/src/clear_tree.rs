//! Clearness and tree-likeness, and the histories that define the latter.

use std::fmt;

use crate::gam::{self, GrandFirstActionModel};
use crate::model::{
    is_general_partition, is_partition, ActionModel, AgentUniverse, Coalition, Family, JointAction,
    NeighborhoodModel, StateId, StateSet,
};
use crate::sam_snm::{snm_derive_neighborhood, SingleFirstNeighborhoodModel};

pub use crate::model::is_general_partition as general_partition;

/// Distinct action profiles have disjoint outcomes at every state.
pub fn is_clear_gam(g: &GrandFirstActionModel) -> bool {
    (0..g.n_states()).all(|s| {
        (0..g.n_profiles()).all(|k| {
            (k + 1..g.n_profiles()).all(|k2| g.outcome_grand(s, k).is_disjoint(g.outcome_grand(s, k2)))
        })
    })
}

fn pairwise_disjoint(m: &ActionModel, c: Coalition, s: StateId) -> bool {
    let width = m.space().count(c);
    (0..width).all(|j| (j + 1..width).all(|j2| m.outcome(c, s, j).is_disjoint(m.outcome(c, s, j2))))
}

/// The equivalent forms of clearness: (1) per agent, (2) per coalition,
/// (3) for the grand coalition, each over the derived outcome functions.
pub fn clear_condition(g: &GrandFirstActionModel, which: u8) -> bool {
    let m = gam::to_action_model(g);
    let states = 0..g.n_states();
    match which {
        1 => states.into_iter().all(|s| (0..g.agents().len()).all(|a| pairwise_disjoint(&m, Coalition::singleton(a), s))),
        2 => states.into_iter().all(|s| g.agents().coalitions().all(|c| pairwise_disjoint(&m, c, s))),
        3 => states.into_iter().all(|s| pairwise_disjoint(&m, g.agents().grand(), s)),
        _ => panic!("clear conditions are numbered 1 to 3, got {which}"),
    }
}

/// For every coalition and state, `{out_C(s,σ) | σ ∈ JA_C}` is a general
/// partition of `suc(s)`.
pub fn outcome_families_partition(g: &GrandFirstActionModel) -> bool {
    let suc = gam::successor(g);
    g.agents().coalitions().all(|c| {
        let table = gam::derive_outcome(g, c);
        (0..g.n_states()).all(|s| {
            let family: Family = table.row(s).iter().cloned().collect();
            is_general_partition(&family, &suc[s])
        })
    })
}

/// Every `nei_a(s)` is a partition of `suc(s)`.
pub fn is_clear_snm(m: &SingleFirstNeighborhoodModel) -> bool {
    (0..m.agents().len())
        .all(|a| (0..m.n_states()).all(|s| is_partition(m.neighborhood_agent(a, s), m.successor(s))))
}

/// (1) every agent's neighborhood, or (2) every coalition's derived
/// neighborhood, partitions the successor set.
pub fn clear_snm_condition(m: &SingleFirstNeighborhoodModel, which: u8) -> bool {
    let coalitions: Vec<Coalition> = match which {
        1 => (0..m.agents().len()).map(Coalition::singleton).collect(),
        2 => m.agents().coalitions().collect(),
        _ => panic!("clear conditions are numbered 1 or 2, got {which}"),
    };
    coalitions.into_iter().all(|c| {
        snm_derive_neighborhood(m, c)
            .iter()
            .enumerate()
            .all(|(s, family)| is_partition(family, m.successor(s)))
    })
}

/// `nei_AG(s)` partitions `suc(s)` at every state. Strictly weaker than
/// clearness.
pub fn grand_neighborhood_partitions(m: &SingleFirstNeighborhoodModel) -> bool {
    snm_derive_neighborhood(m, m.agents().grand())
        .iter()
        .enumerate()
        .all(|(s, family)| is_partition(family, m.successor(s)))
}

/// A model whose coalitions move along labeled edges.
pub trait HistoryModel {
    type Label: Clone + fmt::Debug + PartialEq;

    fn n_states(&self) -> usize;
    fn agents(&self) -> &AgentUniverse;
    /// Labeled one-step moves of `C` from `s`, in a fixed order.
    fn steps(&self, c: Coalition, s: StateId) -> Vec<(Self::Label, StateId)>;
}

impl HistoryModel for ActionModel {
    type Label = JointAction;

    fn n_states(&self) -> usize {
        ActionModel::n_states(self)
    }

    fn agents(&self) -> &AgentUniverse {
        ActionModel::agents(self)
    }

    fn steps(&self, c: Coalition, s: StateId) -> Vec<(JointAction, StateId)> {
        let n = self.actions().len();
        self.available(c, s)
            .flat_map(|j| {
                let sigma = JointAction::from_index(c, j, n);
                self.outcome(c, s, j).iter().map(move |t| (sigma.clone(), t)).collect::<Vec<_>>()
            })
            .collect()
    }
}

impl HistoryModel for NeighborhoodModel {
    type Label = StateSet;

    fn n_states(&self) -> usize {
        NeighborhoodModel::n_states(self)
    }

    fn agents(&self) -> &AgentUniverse {
        NeighborhoodModel::agents(self)
    }

    fn steps(&self, c: Coalition, s: StateId) -> Vec<(StateSet, StateId)> {
        self.neighborhood(c, s)
            .iter()
            .flat_map(|y| y.iter().map(move |t| (y.clone(), t)))
            .collect()
    }
}

/// `s0, l1, s1, …, ln, sn`; a bare state when `steps` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct History<L> {
    pub coalition: Coalition,
    pub start: StateId,
    pub steps: Vec<(L, StateId)>,
}

impl<L> History<L> {
    pub fn end(&self) -> StateId {
        self.steps.last().map_or(self.start, |(_, t)| *t)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// All `C`-histories from `from` to `to` with at most `max_len` moves, in
/// depth-first order (shorter prefixes first).
pub fn enumerate_histories<M: HistoryModel>(
    m: &M,
    c: Coalition,
    from: StateId,
    to: StateId,
    max_len: usize,
) -> Vec<History<M::Label>> {
    fn walk<M: HistoryModel>(
        m: &M,
        c: Coalition,
        to: StateId,
        max_len: usize,
        current: &mut History<M::Label>,
        out: &mut Vec<History<M::Label>>,
    ) {
        if current.end() == to {
            out.push(current.clone());
        }
        if current.len() == max_len {
            return;
        }
        for step in m.steps(c, current.end()) {
            current.steps.push(step);
            walk(m, c, to, max_len, current, out);
            current.steps.pop();
        }
    }
    let mut out = Vec::new();
    let mut current = History { coalition: c, start: from, steps: Vec::new() };
    walk(m, c, to, max_len, &mut current, &mut out);
    out
}

/// Number of `C`-histories from `from` to each state with at most
/// `max_len` moves, saturating at `cap`.
pub fn count_histories<M: HistoryModel>(
    m: &M,
    c: Coalition,
    from: StateId,
    max_len: usize,
    cap: usize,
) -> Vec<usize> {
    let n = m.n_states();
    let mut layer = vec![0usize; n];
    layer[from] = 1;
    let mut total = layer.clone();
    for _ in 0..max_len {
        let mut next = vec![0usize; n];
        for (s, &k) in layer.iter().enumerate() {
            if k == 0 {
                continue;
            }
            for (_, t) in m.steps(c, s) {
                next[t] = (next[t] + k).min(cap);
            }
        }
        for (t, &k) in next.iter().enumerate() {
            total[t] = (total[t] + k).min(cap);
        }
        if next.iter().all(|&k| k == 0) {
            break;
        }
        layer = next;
    }
    total
}

/// The root `r` such that the labeled `C`-edges form an arborescence at
/// `r`: every state reachable from `r`, no edge into `r`, exactly one edge
/// into every other state.
pub fn arborescence_root<M: HistoryModel>(m: &M, c: Coalition) -> Option<StateId> {
    let n = m.n_states();
    let mut indegree = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for s in 0..n {
        for (_, t) in m.steps(c, s) {
            indegree[t] += 1;
            succ[s].push(t);
        }
    }
    let mut roots = (0..n).filter(|&s| indegree[s] == 0);
    let r = roots.next()?;
    if roots.next().is_some() || (0..n).any(|s| s != r && indegree[s] != 1) {
        return None;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![r];
    seen[r] = true;
    while let Some(s) = stack.pop() {
        for &t in &succ[s] {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen.iter().all(|&b| b).then_some(r)
}

/// The same question answered by counting histories of length at most
/// `|ST|` from every candidate root. Longer histories revisit a state, so a
/// second history to some state already shows up within that bound.
pub fn root_by_enumeration<M: HistoryModel>(m: &M, c: Coalition) -> Option<StateId> {
    let n = m.n_states();
    (0..n).find(|&r| count_histories(m, c, r, n, 2).iter().all(|&k| k == 1))
}

/// A root shared by every coalition in `coalitions`, if there is one.
fn shared_root<M: HistoryModel>(m: &M, coalitions: impl IntoIterator<Item = Coalition>) -> Option<StateId> {
    let mut root = None;
    for c in coalitions {
        let r = arborescence_root(m, c)?;
        if root.is_some_and(|x| x != r) {
            return None;
        }
        root = Some(r);
    }
    root
}

/// Tree-likeness of a grand-coalition-first model, with its root.
pub fn is_treelike_gam(g: &GrandFirstActionModel) -> (bool, Option<StateId>) {
    let m = gam::to_action_model(g);
    let root = arborescence_root(&m, g.agents().grand());
    (root.is_some(), root)
}

/// (1) a shared root with unique `a`-histories for every agent, (2) unique
/// `C`-histories for every coalition, (3) unique `AG`-histories.
pub fn tree_condition_gam(g: &GrandFirstActionModel, which: u8) -> bool {
    let m = gam::to_action_model(g);
    let agents = g.agents();
    match which {
        1 => shared_root(&m, (0..agents.len()).map(Coalition::singleton)).is_some(),
        2 => shared_root(&m, agents.coalitions()).is_some(),
        3 => arborescence_root(&m, agents.grand()).is_some(),
        _ => panic!("tree conditions are numbered 1 to 3, got {which}"),
    }
}

/// Tree-likeness of a single-coalition-first neighborhood model (a root
/// with unique `a`-histories for every agent).
pub fn is_treelike_snm(m: &SingleFirstNeighborhoodModel) -> (bool, Option<StateId>) {
    let nm = m.to_neighborhood_model();
    let root = shared_root(&nm, (0..m.agents().len()).map(Coalition::singleton));
    (root.is_some(), root)
}

/// (1) per agent with a shared root, (2) per coalition with a shared root.
pub fn tree_condition_snm(m: &SingleFirstNeighborhoodModel, which: u8) -> bool {
    let nm = m.to_neighborhood_model();
    match which {
        1 => shared_root(&nm, (0..m.agents().len()).map(Coalition::singleton)).is_some(),
        2 => shared_root(&nm, m.agents().coalitions()).is_some(),
        _ => panic!("tree conditions are numbered 1 or 2, got {which}"),
    }
}

/// `AG`-only tree condition for neighborhood models. Not equivalent to
/// tree-likeness; kept for comparison.
pub fn grand_tree_snm(m: &SingleFirstNeighborhoodModel) -> bool {
    arborescence_root(&m.to_neighborhood_model(), m.agents().grand()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{ActionUniverse, Carrier};
    use crate::sam_snm::SingleFirstNeighborhoodModel;

    #[test]
    fn clearness_of_fixtures() {
        assert!(!is_clear_gam(&fixtures::m1()));
        assert!(is_clear_gam(&fixtures::lock()));
        assert!(is_clear_gam(&fixtures::loop_gam()));
        for which in 1..=3 {
            assert!(clear_condition(&fixtures::lock(), which));
            assert!(!clear_condition(&fixtures::m1(), which));
            assert!(!clear_condition(&fixtures::u1(), which));
        }
    }

    #[test]
    fn u1_partitions_without_being_clear() {
        let u1 = fixtures::u1();
        assert!(outcome_families_partition(&u1));
        assert!(!is_clear_gam(&u1));
    }

    #[test]
    fn n1_is_not_clear_but_its_grand_neighborhood_partitions() {
        let n1 = fixtures::n1();
        assert!(!is_clear_snm(&n1));
        assert!(!clear_snm_condition(&n1, 1));
        assert!(!clear_snm_condition(&n1, 2));
        assert!(grand_neighborhood_partitions(&n1));
    }

    #[test]
    fn small_clear_snms() {
        assert!(is_clear_snm(&fixtures::tree_snm()));
        assert!(clear_snm_condition(&fixtures::tree_snm(), 2));
        let agents = AgentUniverse::new(["a"]).unwrap();
        let dead = SingleFirstNeighborhoodModel::new(
            agents,
            Carrier::numbered(1).unwrap(),
            vec![StateSet::new()],
            vec![vec![Family::new()]],
        )
        .unwrap();
        assert!(is_clear_snm(&dead));
        assert_eq!(is_treelike_snm(&dead), (true, Some(0)));
    }

    #[test]
    fn lock_histories() {
        let lock = gam::to_action_model(&fixtures::lock());
        let grand = lock.agents().grand();
        let h = enumerate_histories(&lock, grand, 0, 0, 0);
        assert_eq!(h.len(), 1);
        assert!(h[0].is_empty());
        let h = enumerate_histories(&lock, grand, 0, 1, 1);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].steps[0].0.key(lock.agents(), lock.actions()), "a:skip,b:open-b");
        let m1 = gam::to_action_model(&fixtures::m1());
        assert_eq!(enumerate_histories(&m1, grand, 1, 1, 1).len(), 2);
    }

    #[test]
    fn tree_likeness_of_fixtures() {
        assert_eq!(is_treelike_gam(&fixtures::m1()), (false, None));
        assert_eq!(is_treelike_gam(&fixtures::lock()), (false, None));
        assert_eq!(is_treelike_gam(&fixtures::loop_gam()), (false, None));
        assert_eq!(is_treelike_gam(&fixtures::tree_gam()), (true, Some(0)));
        for which in 1..=3 {
            assert!(tree_condition_gam(&fixtures::tree_gam(), which));
            assert!(!tree_condition_gam(&fixtures::m1(), which));
        }
        assert_eq!(is_treelike_snm(&fixtures::tree_snm()), (true, Some(0)));
        assert!(tree_condition_snm(&fixtures::tree_snm(), 2));
        assert_eq!(is_treelike_snm(&fixtures::n1()), (false, None));
        assert!(!tree_condition_snm(&fixtures::n1(), 2));
    }

    #[test]
    fn enumeration_agrees_with_counting() {
        for g in [fixtures::m1(), fixtures::lock(), fixtures::proc(), fixtures::tree_gam(), fixtures::u1()] {
            let m = gam::to_action_model(&g);
            for c in m.agents().coalitions() {
                assert_eq!(arborescence_root(&m, c), root_by_enumeration(&m, c));
                for from in 0..m.n_states() {
                    let counts = count_histories(&m, c, from, 3, usize::MAX);
                    for to in 0..m.n_states() {
                        assert_eq!(enumerate_histories(&m, c, from, to, 3).len(), counts[to]);
                    }
                }
            }
        }
    }

    #[test]
    fn single_state_without_moves_is_a_tree() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        let g = GrandFirstActionModel::new(agents, actions, Carrier::numbered(1).unwrap()).unwrap();
        assert_eq!(is_treelike_gam(&g), (true, Some(0)));
        assert!(is_clear_gam(&g));
    }
}
