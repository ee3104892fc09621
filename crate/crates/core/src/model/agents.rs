use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Upper bound on the agent count; coalition tables have `2^|AG|` entries.
pub const MAX_AGENTS: usize = 12;

/// Index of an agent in the universe's canonical order.
pub type AgentId = usize;
/// Index of an action in the model's action universe.
pub type ActionId = usize;

fn check_names(names: &[String], what: &'static str) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Empty(what));
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// The finite nonempty set of agents, in a fixed canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AgentUniverse {
    names: Vec<String>,
}

impl AgentUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_names(&names, "agent universe")?;
        if names.len() > MAX_AGENTS {
            return Err(Error::TooLarge(format!("{} agents (max {MAX_AGENTS})", names.len())));
        }
        Ok(AgentUniverse { names })
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

    pub fn name(&self, a: AgentId) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<AgentId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownAgent(name.to_string()))
    }

    pub fn grand(&self) -> Coalition {
        Coalition((1u32 << self.len()) - 1)
    }

    /// Number of coalitions, `2^|AG|`.
    pub fn coalition_count(&self) -> usize {
        1 << self.len()
    }

    /// All coalitions ordered by bitmask; index `i` is coalition `i`.
    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> {
        (0..self.coalition_count() as u32).map(Coalition)
    }

    pub fn coalition<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Coalition> {
        let mut c = Coalition::EMPTY;
        for n in names {
            c = c.with(self.index_of(n.as_ref())?);
        }
        Ok(c)
    }

    /// Comma-joined member names in agent order; `""` for ∅.
    pub fn coalition_key(&self, c: Coalition) -> String {
        let names: Vec<&str> = c.members().map(|a| self.name(a)).collect();
        names.join(",")
    }

    /// Parses a coalition key. Accepts any member order, `""` for ∅ and
    /// `AG` for the grand coalition.
    pub fn parse_coalition_key(&self, key: &str) -> Result<Coalition> {
        let key = key.trim();
        if key == "AG" {
            return Ok(self.grand());
        }
        let key = key.trim_start_matches('{').trim_end_matches('}');
        self.coalition(key.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }
}

/// The finite nonempty set of actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionUniverse {
    names: Vec<String>,
}

impl ActionUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        check_names(&names, "action universe")?;
        Ok(ActionUniverse { names })
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

    pub fn name(&self, a: ActionId) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<ActionId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownAction(name.to_string()))
    }
}

/// A set of agents, as a bitmask over the agent order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn singleton(a: AgentId) -> Self {
        Coalition(1 << a)
    }

    pub fn with(self, a: AgentId) -> Self {
        Coalition(self.0 | (1 << a))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, a: AgentId) -> bool {
        self.0 & (1 << a) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Coalition) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Coalition {
        Coalition(self.0 & !other.0)
    }

    /// Members in agent order.
    pub fn members(self) -> impl Iterator<Item = AgentId> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(a)
        })
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

/// A total assignment of actions to the members of a coalition.
///
/// `actions[i]` is the action of the `i`-th member in agent order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointAction {
    coalition: Coalition,
    actions: SmallVec<[ActionId; 4]>,
}

impl JointAction {
    /// The unique joint action of the empty coalition.
    pub fn empty() -> Self {
        JointAction { coalition: Coalition::EMPTY, actions: SmallVec::new() }
    }

    /// Builds a joint action from `(agent, action)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (AgentId, ActionId)>) -> Result<Self> {
        let mut pairs: Vec<(AgentId, ActionId)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let mut coalition = Coalition::EMPTY;
        for &(a, _) in &pairs {
            if coalition.contains(a) {
                return Err(Error::OverlappingCoalitions(format!("agent {a}")));
            }
            coalition = coalition.with(a);
        }
        Ok(JointAction { coalition, actions: pairs.into_iter().map(|(_, x)| x).collect() })
    }

    /// Builds the joint action with the given index (see [`JointAction::index`]).
    pub fn from_index(coalition: Coalition, index: usize, n_actions: usize) -> Self {
        let k = coalition.len();
        let mut actions: SmallVec<[ActionId; 4]> = SmallVec::from_elem(0, k);
        let mut rest = index;
        for slot in actions.iter_mut().rev() {
            *slot = rest % n_actions;
            rest /= n_actions;
        }
        JointAction { coalition, actions }
    }

    pub fn coalition(&self) -> Coalition {
        self.coalition
    }

    pub fn actions(&self) -> &[ActionId] {
        &self.actions
    }

    /// `(agent, action)` pairs in agent order.
    pub fn pairs(&self) -> impl Iterator<Item = (AgentId, ActionId)> + '_ {
        self.coalition.members().zip(self.actions.iter().copied())
    }

    pub fn action_of(&self, agent: AgentId) -> Option<ActionId> {
        self.pairs().find(|&(a, _)| a == agent).map(|(_, x)| x)
    }

    /// Mixed-radix index in `0..|AC|^|C|`; the first member is the most
    /// significant digit, so indices follow lexicographic enumeration order.
    pub fn index(&self, n_actions: usize) -> usize {
        self.actions.iter().fold(0, |acc, &x| acc * n_actions + x)
    }

    /// `σ_C|_D`.
    pub fn restrict(&self, d: Coalition) -> Result<JointAction> {
        if !d.is_subset(self.coalition) {
            return Err(Error::NotASubcoalition(format!("{d:?}")));
        }
        Ok(JointAction {
            coalition: d,
            actions: self.pairs().filter(|&(a, _)| d.contains(a)).map(|(_, x)| x).collect(),
        })
    }

    /// `σ_C ∪ σ_D` for disjoint `C`, `D`.
    pub fn union(&self, other: &JointAction) -> Result<JointAction> {
        let overlap = self.coalition.intersection(other.coalition);
        if !overlap.is_empty() {
            return Err(Error::OverlappingCoalitions(format!("{overlap:?}")));
        }
        JointAction::from_pairs(self.pairs().chain(other.pairs()))
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_part_of(&self, other: &JointAction) -> bool {
        self.coalition.is_subset(other.coalition)
            && self.pairs().all(|(a, x)| other.action_of(a) == Some(x))
    }

    /// True iff every member's action agrees with `first` or with `second`.
    pub fn is_fusion(&self, first: &JointAction, second: &JointAction) -> Result<bool> {
        if self.coalition != first.coalition || self.coalition != second.coalition {
            return Err(Error::CoalitionMismatch);
        }
        Ok(self
            .actions
            .iter()
            .zip(first.actions.iter().zip(second.actions.iter()))
            .all(|(x, (y, z))| x == y || x == z))
    }

    /// `a:a1,b:b1` with agents in canonical order.
    pub fn key(&self, agents: &AgentUniverse, actions: &ActionUniverse) -> String {
        let parts: Vec<String> = self
            .pairs()
            .map(|(a, x)| format!("{}:{}", agents.name(a), actions.name(x)))
            .collect();
        parts.join(",")
    }

    /// Parses a joint-action key. Entries are split on commas outside braces
    /// and at the first `:` of each entry, so action names may contain `:`
    /// and braced state lists.
    pub fn parse_key(key: &str, agents: &AgentUniverse, actions: &ActionUniverse) -> Result<Self> {
        let mut pairs = Vec::new();
        for entry in split_top_level(key) {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (agent, action) = entry
                .split_once(':')
                .ok_or_else(|| Error::InvalidModel(format!("bad joint action entry `{entry}`")))?;
            pairs.push((agents.index_of(agent.trim())?, actions.index_of(action.trim())?));
        }
        JointAction::from_pairs(pairs)
    }
}

impl fmt::Debug for JointAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// Splits on commas that are not nested inside `{...}`.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// All `|AC|^|C|` joint actions of `c` in lexicographic order (agent order,
/// then action order). The empty coalition has exactly one.
pub fn enumerate_joint_actions(c: Coalition, actions: &ActionUniverse) -> Vec<JointAction> {
    let n = actions.len();
    (0..joint_count(c, n)).map(|i| JointAction::from_index(c, i, n)).collect()
}

/// `|AC|^|C|`.
pub fn joint_count(c: Coalition, n_actions: usize) -> usize {
    n_actions.pow(c.len() as u32)
}

/// Index arithmetic on joint actions of a fixed agent and action count.
///
/// Joint actions of coalition `C` are identified with their index (see
/// [`JointAction::index`]); this type converts between coalitions without
/// materializing [`JointAction`] values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JointSpace {
    n_agents: usize,
    n_actions: usize,
    counts: Vec<usize>,
    /// For each coalition, the place value of each agent's digit (0 if absent).
    weights: Vec<SmallVec<[usize; 4]>>,
}

impl JointSpace {
    pub fn new(n_agents: usize, n_actions: usize) -> Result<Self> {
        let profiles = (n_actions as u128).checked_pow(n_agents as u32);
        if profiles.is_none_or(|p| p > 1 << 22) {
            return Err(Error::TooLarge(format!(
                "{n_actions}^{n_agents} action profiles"
            )));
        }
        let n_coalitions = 1usize << n_agents;
        let mut counts = Vec::with_capacity(n_coalitions);
        let mut weights = Vec::with_capacity(n_coalitions);
        for mask in 0..n_coalitions as u32 {
            let c = Coalition(mask);
            counts.push(joint_count(c, n_actions));
            let mut w: SmallVec<[usize; 4]> = SmallVec::from_elem(0, n_agents);
            let mut place = 1;
            let members: Vec<AgentId> = c.members().collect();
            for &a in members.iter().rev() {
                w[a] = place;
                place *= n_actions;
            }
            weights.push(w);
        }
        Ok(JointSpace { n_agents, n_actions, counts, weights })
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn grand(&self) -> Coalition {
        Coalition((1u32 << self.n_agents) - 1)
    }

    /// `|JA_C|`.
    pub fn count(&self, c: Coalition) -> usize {
        self.counts[c.index()]
    }

    /// Action taken by member `a` in joint action `j` of `c`.
    pub fn digit(&self, c: Coalition, j: usize, a: AgentId) -> ActionId {
        (j / self.weights[c.index()][a]) % self.n_actions
    }

    /// Index of `σ_C|_D` for the joint action `j` of `C`. Requires `D ⊆ C`.
    pub fn restrict(&self, c: Coalition, j: usize, d: Coalition) -> usize {
        debug_assert!(d.is_subset(c));
        let wd = &self.weights[d.index()];
        d.members().map(|a| self.digit(c, j, a) * wd[a]).sum()
    }

    /// Index of `σ_C ∪ σ_D` for disjoint `C`, `D`.
    pub fn union(&self, c: Coalition, jc: usize, d: Coalition, jd: usize) -> usize {
        debug_assert!(c.is_disjoint(d));
        let cd = c.union(d);
        let w = &self.weights[cd.index()];
        c.members().map(|a| self.digit(c, jc, a) * w[a]).sum::<usize>()
            + d.members().map(|a| self.digit(d, jd, a) * w[a]).sum::<usize>()
    }

    /// Whether joint action `j` of `C` agrees with `k` of `D ⊇ C` on `C`.
    pub fn extends(&self, c: Coalition, j: usize, d: Coalition, k: usize) -> bool {
        self.restrict(d, k, c) == j
    }
}
