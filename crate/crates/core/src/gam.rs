//! Grand-coalition-first action models: only `out_AG` is stored, every other
//! function is derived from it.

use crate::error::{Error, Result};
use crate::model::{
    ActionModel, ActionUniverse, AgentUniverse, Carrier, Coalition, JointAction, JointSpace,
    PropertySignature, StateId, StateSet,
};

/// Agent bound for grand-coalition-first models; classification walks all
/// `2^|AG|` coalitions and all pairs of disjoint ones.
pub const MAX_GAM_AGENTS: usize = 6;

/// `suc(s)` for every state.
pub type SuccessorMap = Vec<StateSet>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrandFirstActionModel {
    agents: AgentUniverse,
    actions: ActionUniverse,
    carrier: Carrier,
    space: JointSpace,
    /// Indexed by `state * profiles + profile`.
    out: Vec<StateSet>,
}

/// A derived outcome function for one coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeTable {
    pub coalition: Coalition,
    n_joint: usize,
    cells: Vec<StateSet>,
}

impl OutcomeTable {
    pub(crate) fn from_cells(coalition: Coalition, n_joint: usize, cells: Vec<StateSet>) -> Self {
        OutcomeTable { coalition, n_joint, cells }
    }

    pub fn get(&self, s: StateId, j: usize) -> &StateSet {
        &self.cells[s * self.n_joint + j]
    }

    /// Number of joint actions of the coalition.
    pub fn width(&self) -> usize {
        self.n_joint
    }

    /// `{out_C(s,σ) | σ ∈ JA_C}` with repetitions, in joint-action order.
    pub fn row(&self, s: StateId) -> &[StateSet] {
        &self.cells[s * self.n_joint..(s + 1) * self.n_joint]
    }
}

/// A derived availability function for one coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvailabilityTable {
    pub coalition: Coalition,
    rows: Vec<Vec<usize>>,
}

impl AvailabilityTable {
    /// Indices of the available joint actions at `s`.
    pub fn get(&self, s: StateId) -> &[usize] {
        &self.rows[s]
    }
}

impl GrandFirstActionModel {
    /// A model with every `out_AG` entry empty.
    pub fn new(agents: AgentUniverse, actions: ActionUniverse, carrier: Carrier) -> Result<Self> {
        if agents.len() > MAX_GAM_AGENTS {
            return Err(Error::TooLarge(format!(
                "{} agents (max {MAX_GAM_AGENTS})",
                agents.len()
            )));
        }
        let space = JointSpace::new(agents.len(), actions.len())?;
        // Every coalition's derived table must also fit when materialized.
        let cells: usize = agents.coalitions().map(|c| space.count(c) * carrier.len()).sum();
        if cells > crate::model::MAX_TABLE_CELLS {
            return Err(Error::TooLarge(format!("{cells} outcome cells")));
        }
        let out = vec![StateSet::new(); space.count(space.grand()) * carrier.len()];
        Ok(GrandFirstActionModel { agents, actions, carrier, space, out })
    }

    /// The grand-coalition table of an explicit action model.
    pub fn from_action_model(m: &ActionModel) -> Result<Self> {
        let mut g = Self::new(m.agents().clone(), m.actions().clone(), m.carrier().clone())?;
        let grand = m.agents().grand();
        for s in 0..g.n_states() {
            for k in 0..g.n_profiles() {
                g.set_outcome(s, k, m.outcome(grand, s, k).clone());
            }
        }
        Ok(g)
    }

    pub fn agents(&self) -> &AgentUniverse {
        &self.agents
    }

    pub fn actions(&self) -> &ActionUniverse {
        &self.actions
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn carrier_mut(&mut self) -> &mut Carrier {
        &mut self.carrier
    }

    pub fn space(&self) -> &JointSpace {
        &self.space
    }

    pub fn n_states(&self) -> usize {
        self.carrier.len()
    }

    /// `|JA_AG|`.
    pub fn n_profiles(&self) -> usize {
        self.space.count(self.space.grand())
    }

    pub fn profile(&self, k: usize) -> JointAction {
        JointAction::from_index(self.agents.grand(), k, self.actions.len())
    }

    pub fn profile_key(&self, k: usize) -> String {
        self.profile(k).key(&self.agents, &self.actions)
    }

    /// `out_AG(s, σ)` for the profile with index `k`.
    pub fn outcome_grand(&self, s: StateId, k: usize) -> &StateSet {
        &self.out[s * self.n_profiles() + k]
    }

    pub fn set_outcome(&mut self, s: StateId, k: usize, out: StateSet) {
        debug_assert!(out.iter().all(|t| t < self.n_states()));
        let np = self.n_profiles();
        self.out[s * np + k] = out;
    }

    /// Sets `out_AG(s, σ)` for an explicit action profile.
    pub fn set_outcome_of(&mut self, s: StateId, profile: &JointAction, out: StateSet) -> Result<()> {
        self.carrier.check_state(s)?;
        if profile.coalition() != self.agents.grand() {
            return Err(Error::CoalitionMismatch);
        }
        if let Some(t) = out.iter().find(|&t| t >= self.n_states()) {
            return Err(Error::UnknownState(format!("#{t}")));
        }
        if let Some(&x) = profile.actions().iter().find(|&&x| x >= self.actions.len()) {
            return Err(Error::UnknownAction(format!("#{x}")));
        }
        let k = profile.index(self.actions.len());
        self.set_outcome(s, k, out);
        Ok(())
    }

    /// Whether two models have the same carrier, agents, actions and `out_AG`.
    pub fn same_tables(&self, other: &Self) -> bool {
        self == other
    }
}

/// `out_C(s,σ_C) = ⋃{out_AG(s,σ_AG) | σ_C ⊆ σ_AG}`.
pub fn derive_outcome(g: &GrandFirstActionModel, c: Coalition) -> OutcomeTable {
    let space = g.space();
    let grand = space.grand();
    let n_joint = space.count(c);
    let mut cells = vec![StateSet::new(); n_joint * g.n_states()];
    for s in 0..g.n_states() {
        for k in 0..g.n_profiles() {
            let j = space.restrict(grand, k, c);
            cells[s * n_joint + j].union_with(g.outcome_grand(s, k));
        }
    }
    OutcomeTable { coalition: c, n_joint, cells }
}

/// `av_C(s) = {σ_C | out_C(s,σ_C) ≠ ∅}`.
pub fn derive_availability(g: &GrandFirstActionModel, c: Coalition) -> AvailabilityTable {
    let table = derive_outcome(g, c);
    let rows = (0..g.n_states())
        .map(|s| (0..table.width()).filter(|&j| !table.get(s, j).is_empty()).collect())
        .collect();
    AvailabilityTable { coalition: c, rows }
}

/// `suc(s) = ⋃ out_AG(s, ·)`.
pub fn successor(g: &GrandFirstActionModel) -> SuccessorMap {
    (0..g.n_states())
        .map(|s| {
            let mut acc = StateSet::new();
            for k in 0..g.n_profiles() {
                acc.union_with(g.outcome_grand(s, k));
            }
            acc
        })
        .collect()
}

/// Materializes every derived outcome and availability function.
pub fn to_action_model(g: &GrandFirstActionModel) -> ActionModel {
    let mut m = ActionModel::new(g.agents.clone(), g.actions.clone(), g.carrier.clone())
        .expect("a grand-coalition-first model is within the explicit model bounds");
    for c in g.agents.coalitions() {
        let table = derive_outcome(g, c);
        for s in 0..g.n_states() {
            for j in 0..table.width() {
                m.set_outcome(c, s, j, table.get(s, j).clone());
            }
        }
    }
    m.derive_availability_from_outcomes();
    m
}

/// `av_C(s) ≠ ∅` for every coalition `C`, read off an explicit model.
pub fn serial_at(m: &ActionModel, s: StateId) -> bool {
    m.agents().coalitions().all(|c| m.available(c, s).next().is_some())
}

/// For disjoint `C`, `D`: available `σ_C`, `σ_D` combine into an available
/// `σ_C ∪ σ_D`.
pub fn independent_at(m: &ActionModel, s: StateId) -> bool {
    let space = m.space();
    for c in m.agents().coalitions() {
        let rest = m.agents().grand().difference(c);
        // D ranges over subsets of AG − C.
        let mut d = rest.0;
        loop {
            let dc = Coalition(d);
            for jc in m.available(c, s) {
                for jd in m.available(dc, s) {
                    if !m.is_available(c.union(dc), s, space.union(c, jc, dc, jd)) {
                        return false;
                    }
                }
            }
            if d == 0 {
                break;
            }
            d = (d - 1) & rest.0;
        }
    }
    true
}

/// Every available action profile has a singleton outcome.
pub fn deterministic_at(m: &ActionModel, s: StateId) -> bool {
    let grand = m.agents().grand();
    m.available(grand, s).all(|k| m.outcome(grand, s, k).len() == 1)
}

impl GrandFirstActionModel {
    pub fn is_serial(&self) -> bool {
        let m = to_action_model(self);
        (0..self.n_states()).all(|s| serial_at(&m, s))
    }

    pub fn is_independent(&self) -> bool {
        let m = to_action_model(self);
        (0..self.n_states()).all(|s| independent_at(&m, s))
    }

    pub fn is_deterministic(&self) -> bool {
        (0..self.n_states()).all(|s| {
            (0..self.n_profiles()).all(|k| self.outcome_grand(s, k).len() <= 1)
        })
    }
}

/// The signature of a model whose derived tables are already materialized,
/// restricted to the given states.
pub fn classify_states(m: &ActionModel, states: impl IntoIterator<Item = StateId>) -> PropertySignature {
    let mut sig = PropertySignature::SID;
    for s in states {
        sig.serial &= serial_at(m, s);
        sig.independent &= independent_at(m, s);
        sig.deterministic &= deterministic_at(m, s);
    }
    sig
}

/// The subset of S, I, D that `g` satisfies.
pub fn classify(g: &GrandFirstActionModel) -> PropertySignature {
    classify_states(&to_action_model(g), 0..g.n_states())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn m1_derivations() {
        let g = fixtures::m1();
        let a = Coalition::singleton(0);
        let out_a = derive_outcome(&g, a);
        assert_eq!(out_a.get(0, 0), &set(&[1, 2]));
        assert_eq!(out_a.get(0, 1), &set(&[1, 2]));
        let grand = g.agents().grand();
        let (a1, b1) = (g.actions().index_of("a1").unwrap(), g.actions().index_of("b1").unwrap());
        let sigma = JointAction::from_pairs([(0, a1), (1, b1)]).unwrap();
        let k = sigma.index(g.actions().len());
        assert_eq!(derive_outcome(&g, grand).get(0, k), &set(&[1]));
        assert_eq!(derive_outcome(&g, Coalition::EMPTY).get(0, 0), &set(&[1, 2]));
        assert_eq!(successor(&g), vec![set(&[1, 2]), set(&[1]), set(&[2])]);
    }

    #[test]
    fn m1_availability() {
        let g = fixtures::m1();
        let a = Coalition::singleton(0);
        let a1 = g.actions().index_of("a1").unwrap();
        assert_eq!(derive_availability(&g, a).get(1), &[a1]);
        let grand = g.agents().grand();
        let av = derive_availability(&g, grand);
        let on_board: Vec<String> = av.get(0).iter().map(|&k| g.profile_key(k)).collect();
        assert_eq!(on_board, ["a:a1,b:b1", "a:a1,b:b2", "a:a2,b:b1", "a:a2,b:b2"]);
    }

    #[test]
    fn dead_state_has_nothing_available() {
        let agents = AgentUniverse::new(["a", "b"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        let g = GrandFirstActionModel::new(agents, actions, Carrier::numbered(1).unwrap()).unwrap();
        for c in g.agents().coalitions() {
            assert!(derive_availability(&g, c).get(0).is_empty());
        }
        assert_eq!(successor(&g), vec![StateSet::new()]);
        // Serial fails; independence holds vacuously; determinism holds vacuously.
        assert_eq!(classify(&g).to_string(), "ID");
    }

    #[test]
    fn m1_classification() {
        let g = fixtures::m1();
        assert!(g.is_serial());
        assert!(g.is_deterministic());
        assert!(g.is_independent());
        assert_eq!(to_action_model(&g).agents().coalition_count(), 4);
    }

    #[test]
    fn caption_outcomes() {
        let lock = fixtures::lock();
        let k = |g: &GrandFirstActionModel, key: &str| {
            JointAction::parse_key(key, g.agents(), g.actions()).unwrap().index(g.actions().len())
        };
        let s1 = lock.carrier().index_of("s1").unwrap();
        assert_eq!(lock.outcome_grand(s1, k(&lock, "a:skip,b:skip")), &set(&[s1]));
        let proc = fixtures::proc();
        let (s1, s4) = (proc.carrier().index_of("s1").unwrap(), proc.carrier().index_of("s4").unwrap());
        assert_eq!(proc.outcome_grand(s4, k(&proc, "a:x:=1,b:y:=1")), &set(&[s1]));
    }

    #[test]
    fn nondeterministic_profile() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        let mut g = GrandFirstActionModel::new(agents, actions, Carrier::numbered(2).unwrap()).unwrap();
        g.set_outcome(0, 0, set(&[0, 1]));
        g.set_outcome(1, 0, set(&[1]));
        assert!(!g.is_deterministic());
        assert_eq!(classify(&g).to_string(), "SI");
    }

    #[test]
    fn independence_can_fail() {
        // Two agents, two actions; only the diagonal profiles have outcomes.
        let agents = AgentUniverse::new(["a", "b"]).unwrap();
        let actions = ActionUniverse::new(["x", "y"]).unwrap();
        let mut g = GrandFirstActionModel::new(agents, actions, Carrier::numbered(1).unwrap()).unwrap();
        g.set_outcome(0, 0, set(&[0]));
        g.set_outcome(0, 3, set(&[0]));
        assert!(!g.is_independent());
        assert!(g.is_serial());
    }

    #[test]
    fn too_many_agents() {
        let agents = AgentUniverse::new(["a", "b", "c", "d", "e", "f", "g"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        assert!(matches!(
            GrandFirstActionModel::new(agents, actions, Carrier::numbered(1).unwrap()),
            Err(Error::TooLarge(_))
        ));
    }
}
