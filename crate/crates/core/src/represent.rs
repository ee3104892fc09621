//! Constructions between single-coalition-first action and neighborhood
//! models, and finite unraveling of grand-coalition-first models.

use std::collections::BTreeSet;

use crate::clear_tree::{is_clear_gam, is_clear_snm, is_treelike_gam, is_treelike_snm};
use crate::error::{Error, Result};
use crate::gam::{self, GrandFirstActionModel};
use crate::model::{ActionUniverse, AgentId, Carrier, Family, JointSpace, StateId, StateSet};
use crate::sam_snm::{sam_to_gam, SingleFirstActionModel, SingleFirstNeighborhoodModel};

/// Largest number of path states [`unravel`] will build.
pub const MAX_UNRAVEL_STATES: usize = 1 << 14;

/// Name of the only action added by [`snm_to_sam`] when no agent has a
/// neighborhood anywhere.
pub const IDLE_ACTION: &str = "idle";

/// `nei_a(s)` := the nonempty images `out_a(s, ·)`; `suc` and labels kept.
pub fn sam_to_snm(m: &SingleFirstActionModel) -> SingleFirstNeighborhoodModel {
    let nei = (0..m.agents().len())
        .map(|a| {
            (0..m.n_states())
                .map(|s| m.row(a, s).iter().filter(|y| !y.is_empty()).cloned().collect::<Family>())
                .collect()
        })
        .collect();
    SingleFirstNeighborhoodModel::new(m.agents().clone(), m.carrier().clone(), m.successors().clone(), nei)
        .expect("nonempty images of a general cover form a cover")
}

/// One action `a@s@{X}` per agent `a`, state `s` and `X ∈ nei_a(s)`, whose
/// outcome is `X` for `a` at `s` and empty everywhere else.
///
/// Fails only when the resulting joint tables would be too large.
pub fn snm_to_sam(m: &SingleFirstNeighborhoodModel) -> Result<SingleFirstActionModel> {
    let mut triples: Vec<(AgentId, StateId, StateSet)> = Vec::new();
    for a in 0..m.agents().len() {
        for s in 0..m.n_states() {
            for y in m.neighborhood_agent(a, s).iter() {
                triples.push((a, s, y.clone()));
            }
        }
    }
    let names: Vec<String> = if triples.is_empty() {
        vec![IDLE_ACTION.to_string()]
    } else {
        triples
            .iter()
            .map(|(a, s, y)| format!("{}@{}@{}", m.agents().name(*a), m.carrier().name(*s), m.carrier().display(y)))
            .collect()
    };
    JointSpace::new(m.agents().len(), names.len())?;
    let actions = ActionUniverse::new(names)?;
    let mut out = vec![vec![vec![StateSet::new(); actions.len()]; m.n_states()]; m.agents().len()];
    for (x, (a, s, y)) in triples.into_iter().enumerate() {
        out[a][s][x] = y;
    }
    SingleFirstActionModel::new(
        m.agents().clone(),
        actions,
        m.carrier().clone(),
        m.successors().clone(),
        out,
    )
}

/// Clearness of a single-coalition-first action model, read through its
/// grand-coalition-first embedding.
pub fn is_clear_sam(m: &SingleFirstActionModel) -> bool {
    is_clear_gam(&sam_to_gam(m))
}

pub fn is_treelike_sam(m: &SingleFirstActionModel) -> bool {
    is_treelike_gam(&sam_to_gam(m)).0
}

/// `None` when the input is not clear; otherwise whether the output is.
pub fn sam_to_snm_preserves_clear(m: &SingleFirstActionModel) -> Option<bool> {
    is_clear_sam(m).then(|| is_clear_snm(&sam_to_snm(m)))
}

pub fn snm_to_sam_preserves_clear(m: &SingleFirstNeighborhoodModel) -> Result<Option<bool>> {
    if !is_clear_snm(m) {
        return Ok(None);
    }
    Ok(Some(is_clear_sam(&snm_to_sam(m)?)))
}

/// `None` when the input is not tree-like; otherwise whether the output is.
pub fn sam_to_snm_preserves_tree(m: &SingleFirstActionModel) -> Option<bool> {
    is_treelike_sam(m).then(|| is_treelike_snm(&sam_to_snm(m)).0)
}

pub fn snm_to_sam_preserves_tree(m: &SingleFirstNeighborhoodModel) -> Result<Option<bool>> {
    if !is_treelike_snm(m).0 {
        return Ok(None);
    }
    Ok(Some(is_treelike_sam(&snm_to_sam(m)?)))
}

/// A truncated unraveling together with the bookkeeping needed to relate
/// it to the original model.
#[derive(Clone, Debug)]
pub struct Unraveling {
    pub model: GrandFirstActionModel,
    /// Last state of each path, in the original model.
    pub last: Vec<StateId>,
    /// Number of transitions in each path.
    pub length: Vec<usize>,
    pub depth: usize,
}

impl Unraveling {
    /// Paths shorter than the depth bound; only these have outgoing edges.
    pub fn interior(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.length.len()).filter(move |&p| self.length[p] < self.depth)
    }
}

/// Paths from `s` of at most `depth` transitions, as a model rooted at the
/// length-0 path (index 0). Paths of length `depth` are dead.
pub fn unravel(g: &GrandFirstActionModel, s: StateId, depth: usize) -> Result<GrandFirstActionModel> {
    Ok(unravel_with_map(g, s, depth)?.model)
}

pub fn unravel_with_map(g: &GrandFirstActionModel, s: StateId, depth: usize) -> Result<Unraveling> {
    g.carrier().check_state(s)?;
    let carrier = g.carrier();
    let mut names = vec![carrier.name(s).to_string()];
    let mut last = vec![s];
    let mut length = vec![0usize];
    // (parent, profile, child)
    let mut edges: Vec<(StateId, usize, StateId)> = Vec::new();
    let mut frontier = vec![0usize];
    for level in 0..depth {
        let mut next = Vec::new();
        for &p in &frontier {
            for k in 0..g.n_profiles() {
                for u in g.outcome_grand(last[p], k).iter() {
                    if names.len() == MAX_UNRAVEL_STATES {
                        return Err(Error::TooLarge(format!(
                            "unraveling exceeds {MAX_UNRAVEL_STATES} states"
                        )));
                    }
                    let child = names.len();
                    names.push(format!("{}/({})/{}", names[p], g.profile_key(k), carrier.name(u)));
                    last.push(u);
                    length.push(level + 1);
                    edges.push((p, k, child));
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    let labels: Vec<BTreeSet<String>> = last.iter().map(|&l| carrier.label(l).clone()).collect();
    let mut model = GrandFirstActionModel::new(
        g.agents().clone(),
        g.actions().clone(),
        Carrier::from_parts(names, labels),
    )?;
    for (p, k, child) in edges {
        let mut out = model.outcome_grand(p, k).clone();
        out.insert(child);
        model.set_outcome(p, k, out);
    }
    Ok(Unraveling { model, last, length, depth })
}

/// Checks the two correspondence claims between an unraveling and its
/// source over interior paths: every derived outcome projects into the
/// source outcome, and every source outcome lifts to a path.
pub fn unraveling_corresponds(g: &GrandFirstActionModel, u: &Unraveling) -> bool {
    let source = gam::to_action_model(g);
    let target = gam::to_action_model(&u.model);
    g.agents().coalitions().all(|c| {
        u.interior().all(|p| {
            (0..source.space().count(c)).all(|j| {
                let projected: StateSet = target.outcome(c, p, j).iter().map(|q| u.last[q]).collect();
                projected == *source.outcome(c, u.last[p], j)
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action_semantics::actual_effectivity;
    use crate::fixtures;
    use crate::model::JointAction;
    use crate::neighborhood_semantics::z_represents;
    use crate::sam_snm::{classify_sam, classify_snm};

    fn fam(sets: &[&[usize]]) -> Family {
        sets.iter().map(|s| s.iter().copied().collect::<StateSet>()).collect()
    }

    #[test]
    fn lock_and_proc_neighborhoods() {
        let lock = sam_to_snm(&fixtures::lock_sam());
        assert_eq!(lock.neighborhood_agent(0, 0), &fam(&[&[0, 1], &[2]]));
        assert_eq!(lock.neighborhood_agent(1, 0), &fam(&[&[0, 2], &[1]]));
        let proc = sam_to_snm(&fixtures::proc_sam());
        assert_eq!(proc.neighborhood_agent(0, 3), &fam(&[&[0, 1], &[2, 3]]));
        assert_eq!(proc.neighborhood_agent(1, 3), &fam(&[&[0, 2], &[1, 3]]));
    }

    #[test]
    fn n1_actions() {
        let n1 = fixtures::n1();
        let sam = snm_to_sam(&n1).unwrap();
        let names = sam.actions().names().to_vec();
        assert_eq!(names, ["a@s0@{s1,s2}", "a@s0@{s2,s3}", "b@s0@{s1,s3}", "b@s0@{s2}"]);
        assert_eq!(sam.outcome_agent(0, 0, 0), &StateSet::from([1, 2]));
        assert!(sam.outcome_agent(0, 0, 3).is_empty());
        let nm = n1.to_neighborhood_model();
        assert!(z_represents(&nm, &sam.to_action_model()).unwrap());
    }

    #[test]
    fn fresh_action_when_nothing_moves() {
        let m = SingleFirstNeighborhoodModel::new(
            crate::model::AgentUniverse::new(["a"]).unwrap(),
            Carrier::numbered(2).unwrap(),
            vec![StateSet::new(); 2],
            vec![vec![Family::new(); 2]],
        )
        .unwrap();
        let sam = snm_to_sam(&m).unwrap();
        assert_eq!(sam.actions().names(), [IDLE_ACTION]);
        assert!(z_represents(&m.to_neighborhood_model(), &sam.to_action_model()).unwrap());
    }

    #[test]
    fn round_trips_on_fixtures() {
        for sam in [fixtures::lock_sam(), fixtures::proc_sam()] {
            let snm = sam_to_snm(&sam);
            let am = sam.to_action_model();
            assert_eq!(snm.to_neighborhood_model().carrier(), am.carrier());
            assert!(z_represents(&snm.to_neighborhood_model(), &am).unwrap());
            assert_eq!(classify_sam(&sam), classify_snm(&snm));
            assert_eq!(sam_to_snm_preserves_clear(&sam), Some(true));
        }
        for snm in [fixtures::n1(), fixtures::tree_snm(), fixtures::loop_snm()] {
            let sam = snm_to_sam(&snm).unwrap();
            assert!(z_represents(&snm.to_neighborhood_model(), &sam.to_action_model()).unwrap());
            assert_eq!(classify_sam(&sam), classify_snm(&snm));
        }
        assert_eq!(snm_to_sam_preserves_clear(&fixtures::n1()), Ok(None));
        assert_eq!(snm_to_sam_preserves_tree(&fixtures::tree_snm()), Ok(Some(true)));
        assert_eq!(snm_to_sam_preserves_clear(&fixtures::tree_snm()), Ok(Some(true)));
    }

    #[test]
    fn effectivity_of_constructed_sam_is_the_derived_neighborhood() {
        let snm = fixtures::tree_snm();
        let am = snm_to_sam(&snm).unwrap().to_action_model();
        let table = actual_effectivity(&am);
        let nm = snm.to_neighborhood_model();
        for c in snm.agents().coalitions() {
            for s in 0..snm.n_states() {
                assert_eq!(table.get(c, s), nm.neighborhood(c, s));
            }
        }
    }

    #[test]
    fn unravel_m1_one_step() {
        let m1 = fixtures::m1();
        let u = unravel_with_map(&m1, 0, 1).unwrap();
        let names = u.model.carrier().names().to_vec();
        assert_eq!(
            names,
            [
                "s0",
                "s0/(a:a1,b:b1)/s1",
                "s0/(a:a1,b:b2)/s2",
                "s0/(a:a2,b:b1)/s2",
                "s0/(a:a2,b:b2)/s1",
            ]
        );
        assert_eq!(u.model.carrier().label(1), &BTreeSet::from(["p".to_string()]));
        assert_eq!(u.last, [0, 1, 2, 2, 1]);
        assert!((1..5).all(|p| gam::successor(&u.model)[p].is_empty()));
        let profile = JointAction::parse_key("a:a1,b:b1", m1.agents(), m1.actions()).unwrap();
        assert_eq!(u.model.outcome_grand(0, profile.index(4)), &StateSet::from([1]));
        assert!(unraveling_corresponds(&m1, &u));
        assert_eq!(is_treelike_gam(&u.model), (true, Some(0)));
    }

    #[test]
    fn unravel_depth_zero_and_errors() {
        let u = unravel(&fixtures::lock(), 2, 0).unwrap();
        assert_eq!(u.n_states(), 1);
        assert_eq!(u.carrier().name(0), "s3");
        assert!(gam::successor(&u)[0].is_empty());
        assert!(matches!(unravel(&fixtures::lock(), 7, 1), Err(Error::UnknownState(_))));
        assert!(matches!(unravel(&fixtures::loop_gam(), 0, MAX_UNRAVEL_STATES), Err(Error::TooLarge(_))));
    }

    #[test]
    fn deeper_unravelings_are_trees() {
        for g in [fixtures::lock(), fixtures::proc(), fixtures::m1()] {
            for s in 0..g.n_states() {
                let u = unravel_with_map(&g, s, 3).unwrap();
                assert_eq!(is_treelike_gam(&u.model), (true, Some(0)));
                assert!(unraveling_corresponds(&g, &u));
                let interior = gam::classify_states(&gam::to_action_model(&u.model), u.interior());
                let source = gam::classify(&g);
                assert!(source.is_subset(interior), "{source} vs {interior}");
            }
        }
    }
}
