//! Small named models used throughout the tests, examples and CLI.
//!
//! The same models ship as JSON under `fixtures/` in the crate root; a test
//! checks that the files load to exactly these values.

use crate::gam::GrandFirstActionModel;
use crate::io::{AnyModel, Document};
use crate::model::{ActionUniverse, AgentUniverse, Carrier, Family, JointAction, StateSet};
use crate::represent::unravel;
use crate::sam_snm::{SingleFirstActionModel, SingleFirstNeighborhoodModel};

fn carrier(states: &[(&str, &[&str])]) -> Carrier {
    let mut c = Carrier::new(states.iter().map(|(s, _)| *s)).unwrap();
    for (s, atoms) in states {
        c = c.with_labels(s, atoms).unwrap();
    }
    c
}

/// Builds a grand-coalition-first model from labeled edges `(from, profile, to)`.
fn gam(
    agents: &[&str],
    actions: &[&str],
    states: &[(&str, &[&str])],
    edges: &[(&str, &str, &str)],
) -> GrandFirstActionModel {
    let agents = AgentUniverse::new(agents.iter().copied()).unwrap();
    let actions = ActionUniverse::new(actions.iter().copied()).unwrap();
    let mut g = GrandFirstActionModel::new(agents, actions, carrier(states)).unwrap();
    for (from, key, to) in edges {
        let s = g.carrier().index_of(from).unwrap();
        let t = g.carrier().index_of(to).unwrap();
        let profile = JointAction::parse_key(key, g.agents(), g.actions()).unwrap();
        let k = profile.index(g.actions().len());
        let mut out = g.outcome_grand(s, k).clone();
        out.insert(t);
        g.set_outcome(s, k, out);
    }
    g
}

const M_STATES: &[(&str, &[&str])] = &[("s0", &["p", "q"]), ("s1", &["p"]), ("s2", &["q"])];

/// Two agents whose joint outcome at `s0` is strictly smaller than the
/// intersection of their individual outcomes.
pub fn m1() -> GrandFirstActionModel {
    gam(
        &["a", "b"],
        &["a1", "a2", "b1", "b2"],
        M_STATES,
        &[
            ("s0", "a:a1,b:b1", "s1"),
            ("s0", "a:a2,b:b2", "s1"),
            ("s0", "a:a1,b:b2", "s2"),
            ("s0", "a:a2,b:b1", "s2"),
            ("s1", "a:a1,b:b1", "s1"),
            ("s2", "a:a1,b:b1", "s2"),
        ],
    )
}

/// First of a pair with identical single-agent outcomes but different joint
/// outcomes (identical to [`m1`]).
pub fn gam1() -> GrandFirstActionModel {
    m1()
}

/// Second of the pair: the targets at `s0` are swapped.
pub fn gam2() -> GrandFirstActionModel {
    gam(
        &["a", "b"],
        &["a1", "a2", "b1", "b2"],
        M_STATES,
        &[
            ("s0", "a:a1,b:b2", "s1"),
            ("s0", "a:a2,b:b1", "s1"),
            ("s0", "a:a1,b:b1", "s2"),
            ("s0", "a:a2,b:b2", "s2"),
            ("s1", "a:a1,b:b1", "s1"),
            ("s2", "a:a1,b:b1", "s2"),
        ],
    )
}

/// The ship lock: `a` works the front door, `b` the back door.
pub fn lock() -> GrandFirstActionModel {
    gam(
        &["a", "b"],
        &["skip", "open-f", "close-f", "open-b", "close-b"],
        &[("s1", &["cf", "cb"]), ("s2", &["cf"]), ("s3", &["cb"])],
        &[
            ("s1", "a:skip,b:skip", "s1"),
            ("s2", "a:skip,b:skip", "s2"),
            ("s3", "a:skip,b:skip", "s3"),
            ("s1", "a:skip,b:open-b", "s2"),
            ("s2", "a:skip,b:close-b", "s1"),
            ("s1", "a:open-f,b:skip", "s3"),
            ("s3", "a:close-f,b:skip", "s1"),
        ],
    )
}

/// [`lock`] as a single-coalition-first action model.
pub fn lock_sam() -> SingleFirstActionModel {
    SingleFirstActionModel::from_gam(&lock()).unwrap()
}

/// Two processes setting `x` and `y`.
pub fn proc() -> GrandFirstActionModel {
    gam(
        &["a", "b"],
        &["skip", "x:=1", "y:=1"],
        &[
            ("s1", &["x1", "y1"]),
            ("s2", &["x1", "y0"]),
            ("s3", &["x0", "y1"]),
            ("s4", &["x0", "y0"]),
        ],
        &[
            ("s1", "a:skip,b:skip", "s1"),
            ("s2", "a:skip,b:skip", "s2"),
            ("s3", "a:skip,b:skip", "s3"),
            ("s4", "a:skip,b:skip", "s4"),
            ("s2", "a:skip,b:y:=1", "s1"),
            ("s3", "a:x:=1,b:skip", "s1"),
            ("s4", "a:x:=1,b:y:=1", "s1"),
            ("s4", "a:x:=1,b:skip", "s2"),
            ("s4", "a:skip,b:y:=1", "s3"),
        ],
    )
}

/// [`proc`] as a single-coalition-first action model.
pub fn proc_sam() -> SingleFirstActionModel {
    SingleFirstActionModel::from_gam(&proc()).unwrap()
}

fn fam(sets: &[&[usize]]) -> Family {
    sets.iter().map(|s| s.iter().copied().collect::<StateSet>()).collect()
}

fn set(xs: &[usize]) -> StateSet {
    xs.iter().copied().collect()
}

/// The neighborhood model whose grand-coalition neighborhood at `s0` is a
/// partition although neither agent's is. States `s1..s3` are left dead.
pub fn n1() -> SingleFirstNeighborhoodModel {
    let agents = AgentUniverse::new(["a", "b"]).unwrap();
    let carrier = Carrier::numbered(4).unwrap();
    let dead = Family::new();
    SingleFirstNeighborhoodModel::new(
        agents,
        carrier,
        vec![set(&[1, 2, 3]), set(&[]), set(&[]), set(&[])],
        vec![
            vec![fam(&[&[1, 2], &[2, 3]]), dead.clone(), dead.clone(), dead.clone()],
            vec![fam(&[&[2], &[1, 3]]), dead.clone(), dead.clone(), dead],
        ],
    )
    .unwrap()
}

/// One agent with two actions that both loop at the single state: every
/// outcome family is a general partition, yet the model is not clear.
pub fn u1() -> GrandFirstActionModel {
    gam(&["a"], &["a1", "a2"], &[("s", &[])], &[("s", "a:a1", "s"), ("s", "a:a2", "s")])
}

/// One agent, one action, one looping state: clear but not tree-like.
pub fn loop_gam() -> GrandFirstActionModel {
    gam(&["a"], &["x"], &[("s", &["p"])], &[("s", "a:x", "s")])
}

/// The neighborhood counterpart of [`loop_gam`].
pub fn loop_snm() -> SingleFirstNeighborhoodModel {
    let agents = AgentUniverse::new(["a"]).unwrap();
    let c = carrier(&[("s", &["p"])]);
    SingleFirstNeighborhoodModel::new(agents, c, vec![set(&[0])], vec![vec![fam(&[&[0]])]]).unwrap()
}

/// A two-level tree: at `r` agent `a` cannot separate `x` from `y` but `b`
/// can; `x` then moves to the leaf `z`.
pub fn tree_snm() -> SingleFirstNeighborhoodModel {
    let agents = AgentUniverse::new(["a", "b"]).unwrap();
    let c = carrier(&[("r", &["p"]), ("x", &["q"]), ("y", &[]), ("z", &["p", "q"])]);
    let dead = Family::new();
    SingleFirstNeighborhoodModel::new(
        agents,
        c,
        vec![set(&[1, 2]), set(&[3]), set(&[]), set(&[])],
        vec![
            vec![fam(&[&[1, 2]]), fam(&[&[3]]), dead.clone(), dead.clone()],
            vec![fam(&[&[1], &[2]]), fam(&[&[3]]), dead.clone(), dead],
        ],
    )
    .unwrap()
}

/// One expansion step of [`m1`] from `s0`.
pub fn tree_gam() -> GrandFirstActionModel {
    unravel(&m1(), 0, 1).unwrap()
}

/// Every named fixture as `(name, kind)`.
pub const NAMES: &[(&str, &str)] = &[
    ("m1", "gam"),
    ("gam1", "gam"),
    ("gam2", "gam"),
    ("lock", "gam"),
    ("lock_sam", "sam"),
    ("proc", "gam"),
    ("proc_sam", "sam"),
    ("n1", "snm"),
    ("u1", "gam"),
    ("loop_gam", "gam"),
    ("loop_snm", "snm"),
    ("tree_snm", "snm"),
    ("tree_gam", "gam"),
];

/// The fixture called `name`.
pub fn by_name(name: &str) -> Option<AnyModel> {
    Some(match name {
        "m1" => m1().into(),
        "gam1" => gam1().into(),
        "gam2" => gam2().into(),
        "lock" => lock().into(),
        "lock_sam" => lock_sam().into(),
        "proc" => proc().into(),
        "proc_sam" => proc_sam().into(),
        "n1" => n1().into(),
        "u1" => u1().into(),
        "loop_gam" => loop_gam().into(),
        "loop_snm" => loop_snm().into(),
        "tree_snm" => tree_snm().into(),
        "tree_gam" => tree_gam().into(),
        _ => return None,
    })
}

/// One-line description stored in the fixture's file.
pub fn provenance(name: &str) -> Option<&'static str> {
    Some(match name {
        "m1" => "two agents; joint outcome of (a1,b1) at s0 is {s1}, strictly inside out_a(s0,a1) ∩ out_b(s0,b1) = {s1,s2}",
        "gam1" => "same single-agent outcomes as gam2, different joint outcomes",
        "gam2" => "same single-agent outcomes as gam1, different joint outcomes",
        "lock" => "ship lock: a opens and closes the front door, b the back door, never both open",
        "lock_sam" => "the ship lock as a single-coalition-first action model",
        "proc" => "two processes: a may set x to 1, b may set y to 1",
        "proc_sam" => "the two processes as a single-coalition-first action model",
        "n1" => "grand-coalition neighborhood at s0 partitions the successors while agent a's does not",
        "u1" => "every outcome family is a general partition but two profiles share an outcome",
        "loop_gam" => "clear but not tree-like: one state looping on itself",
        "loop_snm" => "clear but not tree-like: one state looping on itself",
        "tree_snm" => "a two-level tree-like neighborhood model rooted at r",
        "tree_gam" => "one unraveling step of m1 from s0",
        _ => return None,
    })
}

/// The fixture as a model file.
pub fn document(name: &str) -> Option<Document> {
    Some(Document::new(by_name(name)?).with_provenance(provenance(name)?))
}
