//! Truth over neighborhood models, superset closure and representation checks.

use crate::action_semantics::{actual_effectivity, alpha_effectivity, EffectivityTable};
use crate::error::{Error, Result};
use crate::eval::{self, Interpretation};
use crate::formula::Formula;
use crate::model::{
    ActionModel, AgentUniverse, Carrier, Coalition, Family, NeighborhoodModel, StateId, StateSet,
    MAX_ALPHA_STATES,
};

impl Interpretation for NeighborhoodModel {
    fn agents(&self) -> &AgentUniverse {
        NeighborhoodModel::agents(self)
    }

    fn carrier(&self) -> &Carrier {
        NeighborhoodModel::carrier(self)
    }

    fn forces(&self, c: Coalition, s: StateId, target: &StateSet) -> bool {
        self.neighborhood(c, s).iter().any(|y| y.is_subset(target))
    }
}

/// Truth of `f` at `s`: `[C]φ` holds iff some `Y ∈ nei_C(s)` lies inside the
/// truth set of `φ`.
pub fn eval_neighborhood(m: &NeighborhoodModel, s: StateId, f: &Formula) -> Result<bool> {
    eval::eval(m, s, f)
}

pub fn truth_set_neighborhood(m: &NeighborhoodModel, f: &Formula) -> Result<StateSet> {
    eval::truth_set(m, f)
}

impl NeighborhoodModel {
    /// The model whose tables are exactly `table`, over `carrier`.
    pub fn from_effectivity(table: &EffectivityTable, carrier: Carrier) -> Result<Self> {
        if table.n_states() != carrier.len() {
            return Err(Error::CarrierMismatch);
        }
        let mut m = NeighborhoodModel::new(table.agents().clone(), carrier);
        for c in table.agents().coalitions() {
            for s in 0..table.n_states() {
                *m.neighborhood_mut(c, s) = table.get(c, s).clone();
            }
        }
        Ok(m)
    }
}

/// Closes every `nei_C(s)` under supersets within the carrier.
pub fn superset_closure(m: &NeighborhoodModel) -> Result<NeighborhoodModel> {
    let n = m.n_states();
    if n > MAX_ALPHA_STATES {
        return Err(Error::TooLarge(format!(
            "superset closure over {n} states (max {MAX_ALPHA_STATES})"
        )));
    }
    let mut out = m.clone();
    for c in m.agents().coalitions() {
        for s in 0..n {
            *out.neighborhood_mut(c, s) = m.neighborhood(c, s).superset_closure(n);
        }
    }
    Ok(out)
}

/// True iff every neighborhood is closed under supersets.
pub fn is_alpha_model(m: &NeighborhoodModel) -> bool {
    let n = m.n_states();
    m.agents()
        .coalitions()
        .all(|c| (0..n).all(|s| m.neighborhood(c, s).is_superset_closed(n)))
}

/// The first cell where a neighborhood table and an effectivity table differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub coalition: Coalition,
    pub state: StateId,
    /// The effectivity family of the action model.
    pub effectivity: Family,
    /// The neighborhood family of the neighborhood model.
    pub neighborhood: Family,
}

impl Mismatch {
    pub fn describe(&self, agents: &AgentUniverse, carrier: &Carrier) -> String {
        format!(
            "at coalition {{{}}}, state {}: effectivity {} but neighborhood {}",
            agents.coalition_key(self.coalition),
            carrier.name(self.state),
            carrier.display_family(&self.effectivity),
            carrier.display_family(&self.neighborhood),
        )
    }
}

/// Compares `nm` against `AE` (or `LE` when `alpha`) of `am`, coalition by
/// coalition in mask order, then state by state.
pub fn first_mismatch(nm: &NeighborhoodModel, am: &ActionModel, alpha: bool) -> Result<Option<Mismatch>> {
    if !am.same_carrier_as(nm) {
        return Err(Error::CarrierMismatch);
    }
    let table = if alpha { alpha_effectivity(am)? } else { actual_effectivity(am) };
    for c in am.agents().coalitions() {
        for s in 0..am.n_states() {
            if table.get(c, s) != nm.neighborhood(c, s) {
                return Ok(Some(Mismatch {
                    coalition: c,
                    state: s,
                    effectivity: table.get(c, s).clone(),
                    neighborhood: nm.neighborhood(c, s).clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// `AE_C = nei_C` for every coalition, on a shared carrier.
pub fn z_represents(nm: &NeighborhoodModel, am: &ActionModel) -> Result<bool> {
    Ok(first_mismatch(nm, am, false)?.is_none())
}

/// `LE_C = nei_C` for every coalition, on a shared carrier.
pub fn alpha_represents(nm: &NeighborhoodModel, am: &ActionModel) -> Result<bool> {
    Ok(first_mismatch(nm, am, true)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::model::ActionUniverse;

    fn small_action_model() -> ActionModel {
        // One agent, two actions at s0: x goes to s1, y to {s0,s1}.
        let agents = AgentUniverse::new(["a"]).unwrap();
        let actions = ActionUniverse::new(["x", "y"]).unwrap();
        let carrier = Carrier::new(["s0", "s1", "s2"]).unwrap().with_labels("s1", &["p"]).unwrap();
        let mut m = ActionModel::new(agents, actions, carrier).unwrap();
        let a = Coalition::singleton(0);
        m.set_outcome(a, 0, 0, StateSet::from([1]));
        m.set_outcome(a, 0, 1, StateSet::from([0, 1]));
        m.set_outcome(Coalition::EMPTY, 0, 0, StateSet::from([0, 1]));
        m.derive_availability_from_outcomes();
        m
    }

    fn as_nm(am: &ActionModel) -> NeighborhoodModel {
        NeighborhoodModel::from_effectivity(&actual_effectivity(am), am.carrier().clone()).unwrap()
    }

    #[test]
    fn evaluation_matches_action_model() {
        let am = small_action_model();
        let nm = as_nm(&am);
        assert!(eval_neighborhood(&nm, 0, &parse("[{a}]p").unwrap()).unwrap());
        assert!(!eval_neighborhood(&nm, 0, &parse("[{}]p").unwrap()).unwrap());
        assert!(eval_neighborhood(&nm, 1, &Formula::Top).unwrap());
    }

    #[test]
    fn closure_and_alpha() {
        let am = small_action_model();
        let nm = as_nm(&am);
        assert!(!is_alpha_model(&nm));
        let closed = superset_closure(&nm).unwrap();
        assert!(is_alpha_model(&closed));
        assert_eq!(superset_closure(&closed).unwrap(), closed);
        assert!(is_alpha_model(&NeighborhoodModel::new(nm.agents().clone(), nm.carrier().clone())));
        for f in ["[{a}]p", "[{}]~p", "[{a}][{a}]T", "~[{}]F"] {
            let f = parse(f).unwrap();
            for s in 0..3 {
                assert_eq!(
                    eval_neighborhood(&nm, s, &f).unwrap(),
                    eval_neighborhood(&closed, s, &f).unwrap()
                );
            }
        }
    }

    #[test]
    fn representation_checks() {
        let am = small_action_model();
        let nm = as_nm(&am);
        assert!(z_represents(&nm, &am).unwrap());
        assert!(!alpha_represents(&nm, &am).unwrap());
        let closed = superset_closure(&nm).unwrap();
        assert!(alpha_represents(&closed, &am).unwrap());
        assert!(!z_represents(&closed, &am).unwrap());

        let mut broken = nm.clone();
        let a = Coalition::singleton(0);
        broken.neighborhood_mut(a, 0).remove(&StateSet::from([1]));
        let mm = first_mismatch(&broken, &am, false).unwrap().unwrap();
        assert_eq!((mm.coalition, mm.state), (a, 0));
        assert_eq!(
            mm.describe(am.agents(), am.carrier()),
            "at coalition {a}, state s0: effectivity {{s0,s1},{s1}} but neighborhood {{s0,s1}}"
        );

        let other = NeighborhoodModel::new(nm.agents().clone(), Carrier::numbered(3).unwrap());
        assert_eq!(z_represents(&other, &am), Err(Error::CarrierMismatch));
    }

    #[test]
    fn empty_availability_matches_empty_neighborhoods() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        let am = ActionModel::new(agents.clone(), actions, Carrier::numbered(2).unwrap()).unwrap();
        let nm = NeighborhoodModel::new(agents, am.carrier().clone());
        assert!(z_represents(&nm, &am).unwrap());
        assert!(alpha_represents(&nm, &am).unwrap());
    }
}
