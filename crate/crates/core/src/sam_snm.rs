//! Single-coalition-first action and neighborhood models.
//!
//! Both store a successor function plus one primitive table per agent;
//! coalition tables are derived by intersection (actions) or by the `⊙`
//! product (neighborhoods).

use crate::error::{Error, Result};
use crate::gam::{self, GrandFirstActionModel, OutcomeTable, SuccessorMap};
use crate::model::{
    is_cover, is_general_cover, ActionModel, ActionUniverse, AgentId, AgentUniverse, Carrier,
    Coalition, Family, NeighborhoodModel, PropertySignature, StateId, StateSet,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingleFirstActionModel {
    agents: AgentUniverse,
    actions: ActionUniverse,
    carrier: Carrier,
    suc: SuccessorMap,
    /// `out[a][s * |AC| + x]`.
    out: Vec<Vec<StateSet>>,
}

impl SingleFirstActionModel {
    /// Builds a model from `suc` and one outcome table per agent, given as
    /// `outcome_agent[a][s][x]`. Every agent's outcomes at `s` must be a
    /// general cover of `suc(s)`.
    pub fn new(
        agents: AgentUniverse,
        actions: ActionUniverse,
        carrier: Carrier,
        successor: SuccessorMap,
        outcome_agent: Vec<Vec<Vec<StateSet>>>,
    ) -> Result<Self> {
        let n = carrier.len();
        let k = actions.len();
        if successor.len() != n || outcome_agent.len() != agents.len() {
            return Err(Error::InvalidModel("table dimensions do not match the carrier".into()));
        }
        let all = carrier.all();
        let mut out = Vec::with_capacity(agents.len());
        for (a, rows) in outcome_agent.into_iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != k) {
                return Err(Error::InvalidModel(format!(
                    "outcome table of agent {} has the wrong shape",
                    agents.name(a)
                )));
            }
            out.push(rows.into_iter().flatten().collect::<Vec<_>>());
        }
        if let Some(y) = successor.iter().chain(out.iter().flatten()).find(|y| !y.is_subset(&all)) {
            return Err(Error::UnknownState(format!("{y:?}")));
        }
        let m = SingleFirstActionModel { agents, actions, carrier, suc: successor, out };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for a in 0..self.agents.len() {
            for s in 0..self.n_states() {
                let images: Family = self.row(a, s).iter().cloned().collect();
                if !is_general_cover(&images, &self.suc[s]) {
                    return Err(Error::NotAGeneralCover {
                        agent: self.agents.name(a).to_string(),
                        state: self.carrier.name(s).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Reads `suc` and the single-agent tables off a grand-coalition-first
    /// model. Fails unless the model's outcomes compose by intersection at
    /// every state.
    pub fn from_gam(g: &GrandFirstActionModel) -> Result<Self> {
        let m = gam::to_action_model(g);
        if let Some(s) = (0..g.n_states()).find(|&s| !condition_set_1(&m, s)) {
            return Err(Error::NotSingleFirst(g.carrier().name(s).to_string()));
        }
        let suc = gam::successor(g);
        let out = (0..g.agents().len())
            .map(|a| {
                let c = Coalition::singleton(a);
                (0..g.n_states())
                    .map(|s| (0..g.actions().len()).map(|x| m.outcome(c, s, x).clone()).collect())
                    .collect()
            })
            .collect();
        Self::new(g.agents().clone(), g.actions().clone(), g.carrier().clone(), suc, out)
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

    pub fn n_states(&self) -> usize {
        self.carrier.len()
    }

    pub fn successor(&self, s: StateId) -> &StateSet {
        &self.suc[s]
    }

    pub fn successors(&self) -> &SuccessorMap {
        &self.suc
    }

    /// `out_a(s, x)`.
    pub fn outcome_agent(&self, a: AgentId, s: StateId, x: usize) -> &StateSet {
        &self.out[a][s * self.actions.len() + x]
    }

    /// `out_a(s, ·)` in action order.
    pub fn row(&self, a: AgentId, s: StateId) -> &[StateSet] {
        let k = self.actions.len();
        &self.out[a][s * k..(s + 1) * k]
    }
}

/// `out_C(s,σ_C)`: `suc(s)` for `C = ∅`, otherwise the intersection of the
/// members' outcomes.
pub fn sam_derive_outcome(m: &SingleFirstActionModel, c: Coalition) -> OutcomeTable {
    let n_actions = m.actions.len();
    let n_joint = n_actions.pow(c.len() as u32);
    let members: Vec<AgentId> = c.members().collect();
    let mut cells = Vec::with_capacity(n_joint * m.n_states());
    for s in 0..m.n_states() {
        for j in 0..n_joint {
            if members.is_empty() {
                cells.push(m.suc[s].clone());
                continue;
            }
            // Members are the digits of j, most significant first.
            let mut rest = j;
            let mut digits = vec![0; members.len()];
            for d in digits.iter_mut().rev() {
                *d = rest % n_actions;
                rest /= n_actions;
            }
            let mut acc = m.outcome_agent(members[0], s, digits[0]).clone();
            for (&a, &x) in members.iter().zip(&digits).skip(1) {
                acc.intersect_with(m.outcome_agent(a, s, x));
            }
            cells.push(acc);
        }
    }
    OutcomeTable::from_cells(c, n_joint, cells)
}

impl SingleFirstActionModel {
    /// Every derived outcome function, with availability as nonempty outcome.
    pub fn to_action_model(&self) -> ActionModel {
        let mut am = ActionModel::new(self.agents.clone(), self.actions.clone(), self.carrier.clone())
            .expect("single-coalition-first model within explicit bounds");
        for c in self.agents.coalitions() {
            let table = sam_derive_outcome(self, c);
            for s in 0..self.n_states() {
                for j in 0..table.width() {
                    am.set_outcome(c, s, j, table.get(s, j).clone());
                }
            }
        }
        am.derive_availability_from_outcomes();
        am
    }
}

/// The grand-coalition-first model with the derived `out_AG`.
pub fn sam_to_gam(m: &SingleFirstActionModel) -> GrandFirstActionModel {
    let mut g = GrandFirstActionModel::new(m.agents.clone(), m.actions.clone(), m.carrier.clone())
        .expect("single-coalition-first model within grand-coalition-first bounds");
    let table = sam_derive_outcome(m, m.agents.grand());
    for s in 0..m.n_states() {
        for k in 0..table.width() {
            g.set_outcome(s, k, table.get(s, k).clone());
        }
    }
    g
}

pub fn classify_sam(m: &SingleFirstActionModel) -> PropertySignature {
    gam::classify_states(&m.to_action_model(), 0..m.n_states())
}

fn agent_cover(m: &ActionModel, s: StateId) -> bool {
    let empty_out = m.outcome(Coalition::EMPTY, s, 0);
    (0..m.agents().len()).all(|a| {
        let c = Coalition::singleton(a);
        let mut acc = StateSet::new();
        for x in 0..m.space().count(c) {
            acc.union_with(m.outcome(c, s, x));
        }
        acc == *empty_out
    })
}

/// (1a) each agent's outcomes cover `out_∅(s,∅)`; (1b) every nonempty
/// coalition's outcome is the intersection of its members' outcomes.
pub fn condition_set_1(m: &ActionModel, s: StateId) -> bool {
    if !agent_cover(m, s) {
        return false;
    }
    let space = m.space();
    for c in m.agents().coalitions().filter(|c| !c.is_empty()) {
        for j in 0..space.count(c) {
            let mut members = c.members();
            let first = members.next().expect("nonempty");
            let mut acc = m.outcome(Coalition::singleton(first), s, space.digit(c, j, first)).clone();
            for a in members {
                acc.intersect_with(m.outcome(Coalition::singleton(a), s, space.digit(c, j, a)));
            }
            if *m.outcome(c, s, j) != acc {
                return false;
            }
        }
    }
    true
}

/// (2a) as (1a); (2b) for disjoint `C`, `D` the outcome of `σ_C ∪ σ_D` is
/// the intersection of the two outcomes.
pub fn condition_set_2(m: &ActionModel, s: StateId) -> bool {
    let empty_out = m.outcome(Coalition::EMPTY, s, 0);
    for a in 0..m.agents().len() {
        let c = Coalition::singleton(a);
        let union = (0..m.space().count(c)).fold(StateSet::new(), |acc, x| acc.union(m.outcome(c, s, x)));
        if union != *empty_out {
            return false;
        }
    }
    let space = m.space();
    let grand = m.agents().grand();
    for c in m.agents().coalitions() {
        for d in m.agents().coalitions().filter(|d| d.is_subset(grand.difference(c))) {
            let cd = c.union(d);
            for jc in 0..space.count(c) {
                for jd in 0..space.count(d) {
                    let both = m.outcome(c, s, jc).intersection(m.outcome(d, s, jd));
                    if *m.outcome(cd, s, space.union(c, jc, d, jd)) != both {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// (3a) every coalition's outcome is the union of the outcomes of the
/// action profiles extending it; (3b) outcomes are closed under fusion:
/// `out_C(σ) ∩ out_C(σ') ⊆ out_C(σ'')` whenever `σ''` is a fusion.
pub fn condition_set_3(m: &ActionModel, s: StateId) -> bool {
    let space = m.space();
    let grand = m.agents().grand();
    let n_profiles = space.count(grand);
    for c in m.agents().coalitions() {
        for j in 0..space.count(c) {
            let mut acc = StateSet::new();
            for k in 0..n_profiles {
                if space.extends(c, j, grand, k) {
                    acc.union_with(m.outcome(grand, s, k));
                }
            }
            if *m.outcome(c, s, j) != acc {
                return false;
            }
        }
    }
    for c in m.agents().coalitions() {
        let width = space.count(c);
        for j1 in 0..width {
            for j2 in 0..width {
                let meet = m.outcome(c, s, j1).intersection(m.outcome(c, s, j2));
                if meet.is_empty() {
                    continue;
                }
                for j3 in 0..width {
                    let fusion = c.members().all(|a| {
                        let x = space.digit(c, j3, a);
                        x == space.digit(c, j1, a) || x == space.digit(c, j2, a)
                    });
                    if fusion && !meet.is_subset(m.outcome(c, s, j3)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Evaluates condition set 1, 2 or 3 at `s`.
pub fn check_condition_set(m: &ActionModel, s: StateId, which: u8) -> bool {
    match which {
        1 => condition_set_1(m, s),
        2 => condition_set_2(m, s),
        3 => condition_set_3(m, s),
        _ => panic!("condition sets are numbered 1 to 3, got {which}"),
    }
}

/// `Δ1 ⊙ Δ2 = {Y1 ∩ Y2 | Y1 ∈ Δ1, Y2 ∈ Δ2, Y1 ∩ Y2 ≠ ∅}`.
pub fn odot(d1: &Family, d2: &Family) -> Result<Family> {
    if d1.contains_empty() || d2.contains_empty() {
        return Err(Error::EmptySetMember);
    }
    let mut out = Family::new();
    for y1 in d1 {
        for y2 in d2 {
            let y = y1.intersection(y2);
            if !y.is_empty() {
                out.insert(y);
            }
        }
    }
    Ok(out)
}

/// The n-ary product over a nonempty list; a single family is returned as is.
pub fn odot_all(families: &[&Family]) -> Result<Family> {
    let (first, rest) = families.split_first().ok_or(Error::Empty("index family of ⊙"))?;
    if first.contains_empty() {
        return Err(Error::EmptySetMember);
    }
    let mut acc = (*first).clone();
    for d in rest {
        acc = odot(&acc, d)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingleFirstNeighborhoodModel {
    agents: AgentUniverse,
    carrier: Carrier,
    suc: SuccessorMap,
    /// `nei[a][s]`.
    nei: Vec<Vec<Family>>,
}

impl SingleFirstNeighborhoodModel {
    /// Builds a model from `suc` and `nei_a` given as `neighborhood_agent[a][s]`.
    /// Every `nei_a(s)` must be a cover of `suc(s)` (no empty member).
    pub fn new(
        agents: AgentUniverse,
        carrier: Carrier,
        successor: SuccessorMap,
        neighborhood_agent: Vec<Vec<Family>>,
    ) -> Result<Self> {
        let n = carrier.len();
        if successor.len() != n
            || neighborhood_agent.len() != agents.len()
            || neighborhood_agent.iter().any(|r| r.len() != n)
        {
            return Err(Error::InvalidModel("table dimensions do not match the carrier".into()));
        }
        let all = carrier.all();
        let members = neighborhood_agent.iter().flatten().flat_map(|f| f.iter());
        if let Some(y) = successor.iter().chain(members).find(|y| !y.is_subset(&all)) {
            return Err(Error::UnknownState(format!("{y:?}")));
        }
        for (a, rows) in neighborhood_agent.iter().enumerate() {
            for (s, family) in rows.iter().enumerate() {
                if family.contains_empty() {
                    return Err(Error::EmptySetMember);
                }
                if !is_cover(family, &successor[s]) {
                    return Err(Error::NotACover {
                        agent: agents.name(a).to_string(),
                        state: carrier.name(s).to_string(),
                    });
                }
            }
        }
        Ok(SingleFirstNeighborhoodModel { agents, carrier, suc: successor, nei: neighborhood_agent })
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

    pub fn successor(&self, s: StateId) -> &StateSet {
        &self.suc[s]
    }

    pub fn successors(&self) -> &SuccessorMap {
        &self.suc
    }

    /// `nei_a(s)`.
    pub fn neighborhood_agent(&self, a: AgentId, s: StateId) -> &Family {
        &self.nei[a][s]
    }
}

/// `nei_C(s)`: `∅` if `suc(s) = ∅`, `{suc(s)}` if `C = ∅`, otherwise the
/// `⊙` product of the members' neighborhoods. Indexed by state.
pub fn snm_derive_neighborhood(m: &SingleFirstNeighborhoodModel, c: Coalition) -> Vec<Family> {
    (0..m.n_states())
        .map(|s| {
            if m.suc[s].is_empty() {
                Family::new()
            } else if c.is_empty() {
                [m.suc[s].clone()].into_iter().collect()
            } else {
                let families: Vec<&Family> = c.members().map(|a| &m.nei[a][s]).collect();
                odot_all(&families).expect("agent neighborhoods exclude the empty set")
            }
        })
        .collect()
}

impl SingleFirstNeighborhoodModel {
    /// The explicit model with every derived `nei_C`.
    pub fn to_neighborhood_model(&self) -> NeighborhoodModel {
        let mut nm = NeighborhoodModel::new(self.agents.clone(), self.carrier.clone());
        for c in self.agents.coalitions() {
            for (s, family) in snm_derive_neighborhood(self, c).into_iter().enumerate() {
                *nm.neighborhood_mut(c, s) = family;
            }
        }
        nm
    }
}

/// `nei_C(s) ≠ ∅` for every coalition.
pub fn snm_serial_at(nm: &NeighborhoodModel, s: StateId) -> bool {
    nm.agents().coalitions().all(|c| !nm.neighborhood(c, s).is_empty())
}

/// For disjoint `C`, `D`, members of `nei_C(s)` and `nei_D(s)` always meet.
pub fn snm_independent_at(nm: &NeighborhoodModel, s: StateId) -> bool {
    let grand = nm.agents().grand();
    nm.agents().coalitions().all(|c| {
        nm.agents().coalitions().filter(|d| d.is_subset(grand.difference(c))).all(|d| {
            nm.neighborhood(c, s)
                .iter()
                .all(|y1| nm.neighborhood(d, s).iter().all(|y2| y1.intersects(y2)))
        })
    })
}

/// Every member of `nei_AG(s)` is a singleton.
pub fn snm_deterministic_at(nm: &NeighborhoodModel, s: StateId) -> bool {
    nm.neighborhood(nm.agents().grand(), s).iter().all(|y| y.len() == 1)
}

pub fn snm_is_serial(m: &SingleFirstNeighborhoodModel) -> bool {
    let nm = m.to_neighborhood_model();
    (0..m.n_states()).all(|s| snm_serial_at(&nm, s))
}

pub fn snm_is_independent(m: &SingleFirstNeighborhoodModel) -> bool {
    let nm = m.to_neighborhood_model();
    (0..m.n_states()).all(|s| snm_independent_at(&nm, s))
}

pub fn snm_is_deterministic(m: &SingleFirstNeighborhoodModel) -> bool {
    let nm = m.to_neighborhood_model();
    (0..m.n_states()).all(|s| snm_deterministic_at(&nm, s))
}

pub fn classify_snm(m: &SingleFirstNeighborhoodModel) -> PropertySignature {
    let nm = m.to_neighborhood_model();
    let mut sig = PropertySignature::SID;
    for s in 0..m.n_states() {
        sig.serial &= snm_serial_at(&nm, s);
        sig.independent &= snm_independent_at(&nm, s);
        sig.deterministic &= snm_deterministic_at(&nm, s);
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::JointAction;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    fn fam(sets: &[&[usize]]) -> Family {
        sets.iter().map(|s| set(s)).collect()
    }

    fn idx(names: &[&str], carrier: &Carrier) -> StateSet {
        names.iter().map(|n| carrier.index_of(n).unwrap()).collect()
    }

    #[test]
    fn lock_and_proc_intersections() {
        let lock = fixtures::lock_sam();
        let c = lock.carrier().clone();
        let grand = lock.agents().grand();
        let out = sam_derive_outcome(&lock, grand);
        let k = |key: &str| {
            JointAction::parse_key(key, lock.agents(), lock.actions()).unwrap().index(lock.actions().len())
        };
        let s1 = c.index_of("s1").unwrap();
        let skip = lock.actions().index_of("skip").unwrap();
        assert_eq!(lock.outcome_agent(0, s1, skip), &idx(&["s1", "s2"], &c));
        assert_eq!(lock.outcome_agent(1, s1, skip), &idx(&["s1", "s3"], &c));
        assert_eq!(out.get(s1, k("a:skip,b:skip")), &idx(&["s1"], &c));

        let proc = fixtures::proc_sam();
        let c = proc.carrier().clone();
        let out = sam_derive_outcome(&proc, proc.agents().grand());
        let key = JointAction::parse_key("a:x:=1,b:y:=1", proc.agents(), proc.actions()).unwrap();
        let s4 = c.index_of("s4").unwrap();
        assert_eq!(out.get(s4, key.index(proc.actions().len())), &idx(&["s1"], &c));
        assert_eq!(sam_derive_outcome(&proc, Coalition::EMPTY).get(s4, 0), proc.successor(s4));
    }

    #[test]
    fn sam_round_trips_through_gam() {
        assert_eq!(sam_to_gam(&fixtures::lock_sam()), fixtures::lock());
        assert_eq!(sam_to_gam(&fixtures::proc_sam()), fixtures::proc());
        assert!(matches!(
            SingleFirstActionModel::from_gam(&fixtures::m1()),
            Err(Error::NotSingleFirst(s)) if s == "s0"
        ));
    }

    #[test]
    fn derived_tables_agree_with_gam_derivation() {
        let sam = fixtures::lock_sam();
        let g = sam_to_gam(&sam);
        for c in sam.agents().coalitions() {
            assert_eq!(sam_derive_outcome(&sam, c), gam::derive_outcome(&g, c));
        }
    }

    #[test]
    fn condition_sets_on_fixtures() {
        let lock = fixtures::lock_sam().to_action_model();
        for s in 0..lock.n_states() {
            for which in 1..=3 {
                assert!(check_condition_set(&lock, s, which));
            }
        }
        let m1 = gam::to_action_model(&fixtures::m1());
        for which in 1..=3 {
            assert!(!check_condition_set(&m1, 0, which));
        }
    }

    #[test]
    fn general_cover_is_enforced() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        let actions = ActionUniverse::new(["x"]).unwrap();
        let carrier = Carrier::numbered(2).unwrap();
        let bad = SingleFirstActionModel::new(
            agents.clone(),
            actions.clone(),
            carrier.clone(),
            vec![set(&[0, 1]), set(&[])],
            vec![vec![vec![set(&[0])], vec![set(&[])]]],
        );
        assert!(matches!(bad, Err(Error::NotAGeneralCover { .. })));
        let ok = SingleFirstActionModel::new(
            agents,
            actions,
            carrier,
            vec![set(&[0]), set(&[])],
            vec![vec![vec![set(&[0])], vec![set(&[])]]],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn odot_examples() {
        let d1 = fam(&[&[1, 2], &[2, 3]]);
        let d2 = fam(&[&[2], &[1, 3]]);
        assert_eq!(odot(&d1, &d2).unwrap(), fam(&[&[1], &[2], &[3]]));
        assert_eq!(odot(&d1, &fam(&[&[0, 1, 2, 3]])).unwrap(), d1);
        assert!(odot(&fam(&[&[1]]), &fam(&[&[2]])).unwrap().is_empty());
        assert_eq!(odot(&fam(&[&[]]), &d1), Err(Error::EmptySetMember));
        assert_eq!(odot_all(&[&d1]).unwrap(), d1);
        assert!(matches!(odot_all(&[]), Err(Error::Empty(_))));
    }

    #[test]
    fn n1_derivations() {
        let n1 = fixtures::n1();
        let grand = n1.agents().grand();
        let nei = snm_derive_neighborhood(&n1, grand);
        assert_eq!(nei[0], fam(&[&[1], &[2], &[3]]));
        assert_eq!(snm_derive_neighborhood(&n1, Coalition::EMPTY)[0], fam(&[&[1, 2, 3]]));
        for c in n1.agents().coalitions() {
            for s in 1..4 {
                assert!(snm_derive_neighborhood(&n1, c)[s].is_empty());
            }
        }
        assert!(!snm_is_serial(&n1));
        assert!(snm_deterministic_at(&n1.to_neighborhood_model(), 0));
    }

    #[test]
    fn snm_cover_is_enforced() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        let carrier = Carrier::numbered(2).unwrap();
        let suc = vec![set(&[0, 1]), set(&[])];
        let r = SingleFirstNeighborhoodModel::new(
            agents.clone(),
            carrier.clone(),
            suc.clone(),
            vec![vec![fam(&[&[0]]), Family::new()]],
        );
        assert!(matches!(r, Err(Error::NotACover { .. })));
        let r = SingleFirstNeighborhoodModel::new(
            agents,
            carrier,
            suc,
            vec![vec![fam(&[&[0, 1], &[]]), Family::new()]],
        );
        assert_eq!(r, Err(Error::EmptySetMember));
    }

    #[test]
    fn singleton_everywhere_is_sid() {
        let agents = AgentUniverse::new(["a", "b"]).unwrap();
        let carrier = Carrier::numbered(2).unwrap();
        let t = fam(&[&[1]]);
        let m = SingleFirstNeighborhoodModel::new(
            agents,
            carrier,
            vec![set(&[1]), set(&[1])],
            vec![vec![t.clone(), t.clone()], vec![t.clone(), t]],
        )
        .unwrap();
        assert_eq!(classify_snm(&m), PropertySignature::SID);
    }
}
