//! Truth over action models and the two effectivity functions.

use crate::error::{Error, Result};
use crate::eval::{self, Interpretation};
use crate::formula::Formula;
use crate::model::{
    ActionModel, AgentUniverse, Carrier, Coalition, Family, StateId, StateSet, MAX_ALPHA_STATES,
};

impl Interpretation for ActionModel {
    fn agents(&self) -> &AgentUniverse {
        ActionModel::agents(self)
    }

    fn carrier(&self) -> &Carrier {
        ActionModel::carrier(self)
    }

    fn forces(&self, c: Coalition, s: StateId, target: &StateSet) -> bool {
        self.available(c, s).any(|j| self.outcome(c, s, j).is_subset(target))
    }
}

/// Truth of `f` at `s`. `[C]φ` holds iff some available joint action of `C`
/// has every outcome state satisfying `φ`; an available action with empty
/// outcome makes it vacuously true.
pub fn eval_action(m: &ActionModel, s: StateId, f: &Formula) -> Result<bool> {
    eval::eval(m, s, f)
}

/// States of `m` where `f` holds.
pub fn truth_set_action(m: &ActionModel, f: &Formula) -> Result<StateSet> {
    eval::truth_set(m, f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Exact outcome sets of available joint actions.
    Actual,
    /// Superset closure of the actual sets.
    Alpha,
}

/// A family of state sets for every coalition and state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EffectivityTable {
    flavor: Flavor,
    agents: AgentUniverse,
    n_states: usize,
    families: Vec<Family>,
}

impl EffectivityTable {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn agents(&self) -> &AgentUniverse {
        &self.agents
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn get(&self, c: Coalition, s: StateId) -> &Family {
        &self.families[c.index() * self.n_states + s]
    }
}

/// `AE_C(s) = {out_C(s,σ) | σ ∈ av_C(s)}`.
pub fn actual_effectivity(m: &ActionModel) -> EffectivityTable {
    let n = m.n_states();
    let mut families = Vec::with_capacity(m.agents().coalition_count() * n);
    for c in m.agents().coalitions() {
        for s in 0..n {
            families.push(m.available(c, s).map(|j| m.outcome(c, s, j).clone()).collect());
        }
    }
    EffectivityTable { flavor: Flavor::Actual, agents: m.agents().clone(), n_states: n, families }
}

/// `LE_C(s) = {Y ⊆ ST | out_C(s,σ) ⊆ Y for some σ ∈ av_C(s)}`.
///
/// Computed directly from the outcome table rather than by closing
/// [`actual_effectivity`], so the two can be cross-checked.
pub fn alpha_effectivity(m: &ActionModel) -> Result<EffectivityTable> {
    let n = m.n_states();
    if n > MAX_ALPHA_STATES {
        return Err(Error::TooLarge(format!(
            "alpha effectivity over {n} states (max {MAX_ALPHA_STATES})"
        )));
    }
    let mut families = Vec::with_capacity(m.agents().coalition_count() * n);
    for c in m.agents().coalitions() {
        for s in 0..n {
            let mut family = Family::new();
            for y in 0..1u64 << n {
                let y = StateSet::from_mask(y);
                if m.available(c, s).any(|j| m.outcome(c, s, j).is_subset(&y)) {
                    family.insert(y);
                }
            }
            families.push(family);
        }
    }
    Ok(EffectivityTable { flavor: Flavor::Alpha, agents: m.agents().clone(), n_states: n, families })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::model::{ActionUniverse, JointAction};

    /// The `m1` tables, written out for every coalition by hand.
    fn m1_explicit() -> ActionModel {
        let agents = AgentUniverse::new(["a", "b"]).unwrap();
        let actions = ActionUniverse::new(["a1", "a2", "b1", "b2"]).unwrap();
        let carrier = Carrier::new(["s0", "s1", "s2"])
            .unwrap()
            .with_labels("s0", &["p", "q"])
            .unwrap()
            .with_labels("s1", &["p"])
            .unwrap()
            .with_labels("s2", &["q"])
            .unwrap();
        let mut m = ActionModel::new(agents, actions, carrier).unwrap();
        let mut put = |pairs: &[(usize, usize)], s: usize, out: &[usize]| {
            let sigma = JointAction::from_pairs(pairs.iter().copied()).unwrap();
            let (c, j) = (sigma.coalition(), sigma.index(4));
            m.set_outcome(c, s, j, out.iter().copied().collect());
            m.set_available(c, s, j, true);
        };
        put(&[(0, 0), (1, 2)], 0, &[1]);
        put(&[(0, 1), (1, 3)], 0, &[1]);
        put(&[(0, 0), (1, 3)], 0, &[2]);
        put(&[(0, 1), (1, 2)], 0, &[2]);
        put(&[(0, 0), (1, 2)], 1, &[1]);
        put(&[(0, 0), (1, 2)], 2, &[2]);
        for x in [0, 1] {
            put(&[(0, x)], 0, &[1, 2]);
        }
        for x in [2, 3] {
            put(&[(1, x)], 0, &[1, 2]);
        }
        for s in [1, 2] {
            put(&[(0, 0)], s, &[s]);
            put(&[(1, 2)], s, &[s]);
        }
        put(&[], 0, &[1, 2]);
        put(&[], 1, &[1]);
        put(&[], 2, &[2]);
        m
    }

    #[test]
    fn evaluation_examples() {
        let m = m1_explicit();
        assert!(eval_action(&m, 0, &parse("[AG]p").unwrap()).unwrap());
        assert!(!eval_action(&m, 0, &parse("[{a}]p").unwrap()).unwrap());
        assert!(eval_action(&m, 2, &parse("T").unwrap()).unwrap());
        assert!(eval_action(&m, 0, &parse("[{a}](p | q)").unwrap()).unwrap());
        assert!(matches!(eval_action(&m, 7, &Formula::Top), Err(Error::UnknownState(_))));
        assert!(matches!(eval_action(&m, 0, &parse("[{c}]p").unwrap()), Err(Error::UnknownAgent(_))));
    }

    #[test]
    fn vacuous_truth_on_empty_outcome() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        let mut m = ActionModel::new(agents, actions, Carrier::numbered(1).unwrap()).unwrap();
        m.set_available(Coalition::singleton(0), 0, 0, true);
        assert!(eval_action(&m, 0, &parse("[{a}]F").unwrap()).unwrap());
        assert!(!eval_action(&m, 0, &parse("~[{a}]F").unwrap()).unwrap());
    }

    #[test]
    fn effectivity_examples() {
        let m = m1_explicit();
        let ae = actual_effectivity(&m);
        let a = Coalition::singleton(0);
        let grand = m.agents().grand();
        assert_eq!(ae.get(a, 0), &[StateSet::from([1, 2])].into_iter().collect());
        assert_eq!(
            ae.get(grand, 0),
            &[StateSet::from([1]), StateSet::from([2])].into_iter().collect()
        );
        let le = alpha_effectivity(&m).unwrap();
        let expected: Family = (1..8u64).filter(|y| y & 0b110 != 0).map(StateSet::from_mask).collect();
        assert_eq!(le.get(grand, 0), &expected);
        for c in m.agents().coalitions() {
            for s in 0..3 {
                assert_eq!(le.get(c, s), &ae.get(c, s).superset_closure(3));
            }
        }
    }

    #[test]
    fn empty_availability_and_empty_outcome() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        let mut m = ActionModel::new(agents, actions, Carrier::numbered(2).unwrap()).unwrap();
        let a = Coalition::singleton(0);
        assert!(actual_effectivity(&m).get(a, 0).is_empty());
        assert!(alpha_effectivity(&m).unwrap().get(a, 0).is_empty());
        m.set_available(a, 0, 0, true);
        assert!(actual_effectivity(&m).get(a, 0).contains_empty());
        assert_eq!(alpha_effectivity(&m).unwrap().get(a, 0).len(), 4);
    }
}
