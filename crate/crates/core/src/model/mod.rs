//! Finite domain types shared by every model kind.

mod agents;
mod state_set;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use agents::{
    enumerate_joint_actions, joint_count, ActionId, ActionUniverse, AgentId, AgentUniverse,
    Coalition, JointAction, JointSpace, MAX_AGENTS,
};
pub use state_set::{
    is_cover, is_general_cover, is_general_partition, is_partition, Family, StateId, StateSet,
};

use crate::error::{Error, Result};

/// Largest carrier for which alpha (superset-closed) families are materialized.
pub const MAX_ALPHA_STATES: usize = 12;

/// Cap on the number of stored outcome cells in an explicit action model.
pub const MAX_TABLE_CELLS: usize = 1 << 22;

/// Named states together with their labeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    names: Vec<String>,
    labels: Vec<BTreeSet<String>>,
}

impl Carrier {
    /// States with empty labels.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Empty("state set"));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        let labels = vec![BTreeSet::new(); names.len()];
        Ok(Carrier { names, labels })
    }

    /// Anonymous states `s0..s{n-1}`.
    pub fn numbered(n: usize) -> Result<Self> {
        Carrier::new((0..n).map(|i| format!("s{i}")))
    }

    pub fn with_labels<S: AsRef<str>>(mut self, state: &str, atoms: &[S]) -> Result<Self> {
        let s = self.index_of(state)?;
        self.labels[s] = atoms.iter().map(|a| a.as_ref().to_string()).collect();
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn index_of(&self, name: &str) -> Result<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn check_state(&self, s: StateId) -> Result<()> {
        if s < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(format!("#{s}")))
        }
    }

    pub fn label(&self, s: StateId) -> &BTreeSet<String> {
        &self.labels[s]
    }

    pub fn set_label(&mut self, s: StateId, atoms: BTreeSet<String>) {
        self.labels[s] = atoms;
    }

    pub fn all(&self) -> StateSet {
        StateSet::full(self.len())
    }

    /// States whose label contains `atom`.
    pub fn extension(&self, atom: &str) -> StateSet {
        (0..self.len()).filter(|&s| self.labels[s].contains(atom)).collect()
    }

    pub fn display(&self, set: &StateSet) -> String {
        set.display_with(&self.names)
    }

    pub fn display_family(&self, family: &Family) -> String {
        family.display_with(&self.names)
    }

    /// Renames states, keeping labels. Used by constructions that build
    /// derived carriers.
    pub(crate) fn from_parts(names: Vec<String>, labels: Vec<BTreeSet<String>>) -> Self {
        debug_assert_eq!(names.len(), labels.len());
        Carrier { names, labels }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Table {
    available: Vec<bool>,
    outcome: Vec<StateSet>,
}

/// A fully explicit action model: availability and outcome tables for every
/// coalition. Cells not set explicitly are unavailable with empty outcome.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionModel {
    agents: AgentUniverse,
    actions: ActionUniverse,
    carrier: Carrier,
    space: JointSpace,
    tables: Vec<Table>,
}

impl ActionModel {
    pub fn new(agents: AgentUniverse, actions: ActionUniverse, carrier: Carrier) -> Result<Self> {
        let space = JointSpace::new(agents.len(), actions.len())?;
        let n = carrier.len();
        let cells: usize = agents.coalitions().map(|c| space.count(c) * n).sum();
        if cells > MAX_TABLE_CELLS {
            return Err(Error::TooLarge(format!("{cells} outcome cells")));
        }
        let tables = agents
            .coalitions()
            .map(|c| {
                let k = space.count(c) * n;
                Table { available: vec![false; k], outcome: vec![StateSet::new(); k] }
            })
            .collect();
        Ok(ActionModel { agents, actions, carrier, space, tables })
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

    fn cell(&self, c: Coalition, s: StateId, j: usize) -> usize {
        debug_assert!(s < self.n_states() && j < self.space.count(c));
        s * self.space.count(c) + j
    }

    /// `out_C(s, σ)` where `σ` is given by index.
    pub fn outcome(&self, c: Coalition, s: StateId, j: usize) -> &StateSet {
        &self.tables[c.index()].outcome[self.cell(c, s, j)]
    }

    pub fn set_outcome(&mut self, c: Coalition, s: StateId, j: usize, out: StateSet) {
        debug_assert!(out.iter().all(|t| t < self.n_states()));
        let k = self.cell(c, s, j);
        self.tables[c.index()].outcome[k] = out;
    }

    pub fn is_available(&self, c: Coalition, s: StateId, j: usize) -> bool {
        self.tables[c.index()].available[self.cell(c, s, j)]
    }

    pub fn set_available(&mut self, c: Coalition, s: StateId, j: usize, available: bool) {
        let k = self.cell(c, s, j);
        self.tables[c.index()].available[k] = available;
    }

    /// Indices of `av_C(s)`.
    pub fn available(&self, c: Coalition, s: StateId) -> impl Iterator<Item = usize> + '_ {
        (0..self.space.count(c)).filter(move |&j| self.is_available(c, s, j))
    }

    /// `av_C(s)` as joint actions.
    pub fn available_joint(&self, c: Coalition, s: StateId) -> Vec<JointAction> {
        let n = self.actions.len();
        self.available(c, s).map(|j| JointAction::from_index(c, j, n)).collect()
    }

    /// `out_C(s, σ_C)` for an explicit joint action.
    pub fn outcome_of(&self, s: StateId, sigma: &JointAction) -> Result<&StateSet> {
        self.carrier.check_state(s)?;
        self.check_joint(sigma)?;
        Ok(self.outcome(sigma.coalition(), s, sigma.index(self.actions.len())))
    }

    pub fn is_available_joint(&self, s: StateId, sigma: &JointAction) -> Result<bool> {
        self.carrier.check_state(s)?;
        self.check_joint(sigma)?;
        Ok(self.is_available(sigma.coalition(), s, sigma.index(self.actions.len())))
    }

    fn check_joint(&self, sigma: &JointAction) -> Result<()> {
        if !sigma.coalition().is_subset(self.agents.grand()) {
            return Err(Error::UnknownAgent(format!("{:?}", sigma.coalition())));
        }
        if let Some(&x) = sigma.actions().iter().find(|&&x| x >= self.actions.len()) {
            return Err(Error::UnknownAction(format!("#{x}")));
        }
        Ok(())
    }

    /// Makes every joint action available exactly when its outcome is nonempty.
    pub fn derive_availability_from_outcomes(&mut self) {
        for table in &mut self.tables {
            for (a, o) in table.available.iter_mut().zip(&table.outcome) {
                *a = !o.is_empty();
            }
        }
    }

    pub fn joint_key(&self, c: Coalition, j: usize) -> String {
        JointAction::from_index(c, j, self.actions.len()).key(&self.agents, &self.actions)
    }

    /// True iff both models have the same states, labeling and agents.
    pub fn same_carrier_as(&self, nm: &NeighborhoodModel) -> bool {
        self.carrier == nm.carrier && self.agents == nm.agents
    }
}

/// A fully explicit neighborhood model.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NeighborhoodModel {
    agents: AgentUniverse,
    carrier: Carrier,
    /// Indexed by `coalition * n_states + state`.
    nei: Vec<Family>,
}

impl NeighborhoodModel {
    pub fn new(agents: AgentUniverse, carrier: Carrier) -> Self {
        let nei = vec![Family::new(); agents.coalition_count() * carrier.len()];
        NeighborhoodModel { agents, carrier, nei }
    }

    pub fn agents(&self) -> &AgentUniverse {
        &self.agents
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn carrier_mut(&mut self) -> &mut Carrier {
        &mut self.carrier
    }

    pub fn n_states(&self) -> usize {
        self.carrier.len()
    }

    /// `nei_C(s)`.
    pub fn neighborhood(&self, c: Coalition, s: StateId) -> &Family {
        &self.nei[c.index() * self.n_states() + s]
    }

    pub fn set_neighborhood(&mut self, c: Coalition, s: StateId, family: Family) -> Result<()> {
        self.carrier.check_state(s)?;
        if !c.is_subset(self.agents.grand()) {
            return Err(Error::UnknownAgent(format!("{c:?}")));
        }
        let all = self.carrier.all();
        if let Some(y) = family.iter().find(|y| !y.is_subset(&all)) {
            return Err(Error::UnknownState(format!("{y:?}")));
        }
        let n = self.n_states();
        self.nei[c.index() * n + s] = family;
        Ok(())
    }

    pub(crate) fn neighborhood_mut(&mut self, c: Coalition, s: StateId) -> &mut Family {
        let n = self.n_states();
        &mut self.nei[c.index() * n + s]
    }
}

/// One of the eight property signatures: a subset of seriality (S),
/// independence (I) and determinism (D).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertySignature {
    pub serial: bool,
    pub independent: bool,
    pub deterministic: bool,
}

impl PropertySignature {
    pub const EMPTY: PropertySignature =
        PropertySignature { serial: false, independent: false, deterministic: false };
    pub const SID: PropertySignature =
        PropertySignature { serial: true, independent: true, deterministic: true };

    pub fn new(serial: bool, independent: bool, deterministic: bool) -> Self {
        PropertySignature { serial, independent, deterministic }
    }

    /// All eight signatures in the order ε, S, I, D, SI, SD, ID, SID.
    pub fn all() -> [PropertySignature; 8] {
        let p = PropertySignature::new;
        [
            p(false, false, false),
            p(true, false, false),
            p(false, true, false),
            p(false, false, true),
            p(true, true, false),
            p(true, false, true),
            p(false, true, true),
            p(true, true, true),
        ]
    }

    /// Whether every letter of `self` is in `other`.
    pub fn is_subset(self, other: PropertySignature) -> bool {
        (!self.serial || other.serial)
            && (!self.independent || other.independent)
            && (!self.deterministic || other.deterministic)
    }
}

impl fmt::Display for PropertySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::EMPTY {
            return f.write_str("ε");
        }
        if self.serial {
            f.write_str("S")?;
        }
        if self.independent {
            f.write_str("I")?;
        }
        if self.deterministic {
            f.write_str("D")?;
        }
        Ok(())
    }
}

impl FromStr for PropertySignature {
    type Err = Error;

    /// Accepts letters S, I, D in any order and case; `ε`, `e`, `eps` or the
    /// empty string denote the empty signature.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "" | "ε" | "e" | "eps" | "epsilon") {
            return Ok(Self::EMPTY);
        }
        let mut sig = Self::EMPTY;
        for ch in s.chars() {
            let slot = match ch.to_ascii_uppercase() {
                'S' => &mut sig.serial,
                'I' => &mut sig.independent,
                'D' => &mut sig.deterministic,
                _ => return Err(Error::InvalidModel(format!("bad signature `{s}`"))),
            };
            if *slot {
                return Err(Error::InvalidModel(format!("repeated letter in `{s}`")));
            }
            *slot = true;
        }
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures_round_trip() {
        let shown: Vec<String> = PropertySignature::all().iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["ε", "S", "I", "D", "SI", "SD", "ID", "SID"]);
        for sig in PropertySignature::all() {
            assert_eq!(sig.to_string().parse::<PropertySignature>().unwrap(), sig);
        }
        assert_eq!("ds".parse::<PropertySignature>().unwrap().to_string(), "SD");
        assert!("SS".parse::<PropertySignature>().is_err());
    }

    #[test]
    fn fresh_action_model_is_empty() {
        let agents = AgentUniverse::new(["a", "b"]).unwrap();
        let actions = ActionUniverse::new(["x", "y"]).unwrap();
        let m = ActionModel::new(agents, actions, Carrier::numbered(2).unwrap()).unwrap();
        for c in m.agents().coalitions() {
            for s in 0..2 {
                assert_eq!(m.available(c, s).count(), 0);
                for j in 0..m.space().count(c) {
                    assert!(m.outcome(c, s, j).is_empty());
                }
            }
        }
    }

    #[test]
    fn carrier_rejects_duplicates() {
        assert!(matches!(Carrier::new(["s", "s"]), Err(Error::DuplicateName(_))));
        assert!(matches!(Carrier::new(Vec::<String>::new()), Err(Error::Empty(_))));
    }
}

impl serde::Serialize for PropertySignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PropertySignature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
