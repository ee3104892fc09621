//! The registered suites. Each draws the streams it needs from the bounds
//! and mode of the caller's spec and records named checks.

use std::collections::HashMap;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bank::axiom_bank;
use super::gen::{for_each_local_table, generate, signature_of, GenSpec, Kind, Mode, ModelStream};
use super::{Checks, FormulaBatch, Semantics};
use crate::action_semantics::{actual_effectivity, alpha_effectivity};
use crate::clear_tree::{
    arborescence_root, clear_condition, clear_snm_condition, grand_neighborhood_partitions, grand_tree_snm,
    is_clear_gam, is_clear_snm, is_treelike_gam, is_treelike_snm, outcome_families_partition, root_by_enumeration,
    tree_condition_gam, tree_condition_snm,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::formula::{AxiomSchema, Formula};
use crate::gam::{self, classify, classify_states, to_action_model, GrandFirstActionModel};
use crate::io::{AnyModel, Document};
use crate::model::{
    is_cover, is_general_cover, ActionModel, AgentUniverse, Coalition, Family, JointAction, NeighborhoodModel,
    PropertySignature, StateSet,
};
use crate::neighborhood_semantics::{alpha_represents, superset_closure, z_represents};
use crate::represent::{
    sam_to_snm, sam_to_snm_preserves_clear, sam_to_snm_preserves_tree, snm_to_sam, snm_to_sam_preserves_clear,
    snm_to_sam_preserves_tree, unravel, unravel_with_map, unraveling_corresponds,
};
use crate::sam_snm::{
    classify_sam, classify_snm, condition_set_1, condition_set_2, condition_set_3, odot_all, sam_to_gam,
    snm_derive_neighborhood, SingleFirstActionModel, SingleFirstNeighborhoodModel,
};

type SuiteFn = fn(&GenSpec, &mut Checks) -> Result<()>;

/// Every registered suite, in the order `all` runs them.
pub(crate) const SUITES: &[(&str, SuiteFn)] = &[
    ("semantics-equivalence", semantics_equivalence),
    ("gam-facts", gam_facts),
    ("sam-equivalence", sam_equivalence),
    ("snm-cover", snm_cover),
    ("representation-roundtrip", representation_roundtrip),
    ("x-iff-x", x_iff_x),
    ("clear-equivalences", clear_equivalences),
    ("clear-representation", clear_representation),
    ("tree-equivalences", tree_equivalences),
    ("tree-implies-clear", tree_implies_clear),
    ("unravel-equivalence", unravel_equivalence),
    ("axiom-validity", axiom_validity),
    ("final-determination", final_determination),
];

/// Depth of the unravelings used where a suite needs tree-like samples.
const TREE_DEPTH: usize = 2;

fn stream(spec: &GenSpec, kind: Kind) -> Result<ModelStream> {
    generate(spec.with_kind(kind))
}

fn gams(spec: &GenSpec) -> Result<impl Iterator<Item = GrandFirstActionModel>> {
    Ok(stream(spec, Kind::Gam)?.map(|m| match m {
        AnyModel::Gam(g) => g,
        _ => unreachable!("gam stream"),
    }))
}

fn sams(spec: &GenSpec) -> Result<impl Iterator<Item = SingleFirstActionModel>> {
    Ok(stream(spec, Kind::Sam)?.map(|m| match m {
        AnyModel::Sam(g) => g,
        _ => unreachable!("sam stream"),
    }))
}

fn snms(spec: &GenSpec) -> Result<impl Iterator<Item = SingleFirstNeighborhoodModel>> {
    Ok(stream(spec, Kind::Snm)?.map(|m| match m {
        AnyModel::Snm(g) => g,
        _ => unreachable!("snm stream"),
    }))
}

fn doc(model: impl Into<AnyModel>, detail: impl Into<String>) -> (Document, String) {
    (Document::new(model), detail.into())
}

/// The bank over one agent universe, prepared for evaluation.
struct Bank {
    formulas: Vec<Formula>,
    schemas: Vec<AxiomSchema>,
    batch: FormulaBatch,
    /// Indices and batch of the formulas of each modal depth.
    by_depth: Vec<(Vec<usize>, FormulaBatch)>,
}

/// Banks per agent universe.
#[derive(Default)]
struct Banks(HashMap<Vec<String>, Rc<Bank>>);

impl Banks {
    fn get(&mut self, agents: &AgentUniverse) -> Rc<Bank> {
        self.0
            .entry(agents.names().to_vec())
            .or_insert_with(|| {
                let entries = axiom_bank(agents);
                let formulas: Vec<Formula> = entries.iter().map(|e| e.formula.clone()).collect();
                let max = formulas.iter().map(Formula::modal_depth).max().unwrap_or(0);
                let by_depth = (0..=max)
                    .map(|d| {
                        let idx: Vec<usize> = (0..formulas.len()).filter(|&i| formulas[i].modal_depth() == d).collect();
                        let fs: Vec<Formula> = idx.iter().map(|&i| formulas[i].clone()).collect();
                        (idx, FormulaBatch::new(&fs))
                    })
                    .collect();
                Rc::new(Bank {
                    batch: FormulaBatch::new(&formulas),
                    schemas: entries.iter().map(|e| e.schema).collect(),
                    formulas,
                    by_depth,
                })
            })
            .clone()
    }
}

fn first_difference(formulas: &[Formula], a: &[StateSet], b: &[StateSet]) -> String {
    match (0..formulas.len()).find(|&i| a[i] != b[i]) {
        Some(i) => format!("truth sets of `{}` differ: {:?} vs {:?}", formulas[i], a[i], b[i]),
        None => "no difference".into(),
    }
}

fn semantics_equivalence(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    let mut banks = Banks::default();
    let pairs: Vec<Box<dyn Iterator<Item = (AnyModel, ActionModel, NeighborhoodModel)>>> = vec![
        Box::new(gams(spec)?.map(|g| {
            let am = to_action_model(&g);
            let nm = NeighborhoodModel::from_effectivity(&actual_effectivity(&am), am.carrier().clone())
                .expect("same carrier");
            (AnyModel::Gam(g), am, nm)
        })),
        Box::new(snms(spec)?.map(|n| {
            let am = snm_to_sam(&n).expect("small").to_action_model();
            let nm = n.to_neighborhood_model();
            (AnyModel::Snm(n), am, nm)
        })),
    ];
    for (model, am, nm) in pairs.into_iter().flatten() {
        ch.models += 1;
        let alpha = NeighborhoodModel::from_effectivity(&alpha_effectivity(&am)?, am.carrier().clone())?;
        ch.record("z-represents", z_represents(&nm, &am)?, || doc(model.clone(), "AE differs from nei"));
        ch.record("alpha-represents", alpha_represents(&alpha, &am)?, || doc(model.clone(), "LE differs"));
        let closure = superset_closure(&nm)?;
        ch.record("closure-is-alpha", closure == alpha, || doc(model.clone(), "closure of AE is not LE"));
        let bank = banks.get(am.agents());
        let ta = Semantics::Action(am.clone()).truth_batch(&bank.batch)?;
        let tn = Semantics::Neighborhood(nm).truth_batch(&bank.batch)?;
        let tc = Semantics::Neighborhood(closure).truth_batch(&bank.batch)?;
        let fs = &bank.formulas;
        ch.record("action-vs-neighborhood", ta == tn, || doc(model.clone(), first_difference(fs, &ta, &tn)));
        ch.record("neighborhood-vs-closure", tn == tc, || doc(model.clone(), first_difference(fs, &tn, &tc)));
    }
    Ok(())
}

fn gam_facts(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    for g in gams(spec)? {
        ch.models += 1;
        let am = to_action_model(&g);
        let suc = gam::successor(&g);
        let space = am.space().clone();
        let agents = g.agents().clone();
        let grand = agents.grand();
        for s in 0..g.n_states() {
            for c in agents.coalitions() {
                let family: Family = (0..space.count(c)).map(|j| am.outcome(c, s, j).clone()).collect();
                ch.record("general-cover", is_general_cover(&family, &suc[s]), || {
                    doc(g.clone(), format!("coalition {{{}}} at {}", agents.coalition_key(c), g.carrier().name(s)))
                });
                for j in 0..space.count(c) {
                    let out = am.outcome(c, s, j);
                    ch.record("availability-is-nonempty-outcome", am.is_available(c, s, j) == !out.is_empty(), || {
                        doc(g.clone(), "availability disagrees with outcome")
                    });
                    if !c.is_empty() {
                        let meet = c
                            .members()
                            .map(|a| am.outcome(Coalition::singleton(a), s, space.digit(c, j, a)).clone())
                            .reduce(|x, y| x.intersection(&y))
                            .expect("nonempty");
                        ch.record("inclusion-agents", out.is_subset(&meet), || {
                            doc(g.clone(), format!("{} at {}", am.joint_key(c, j), g.carrier().name(s)))
                        });
                    }
                }
                for d in agents.coalitions().filter(|d| d.is_subset(grand.difference(c))) {
                    for jc in 0..space.count(c) {
                        for jd in 0..space.count(d) {
                            let joint = am.outcome(c.union(d), s, space.union(c, jc, d, jd));
                            let meet = am.outcome(c, s, jc).intersection(am.outcome(d, s, jd));
                            ch.record("inclusion-disjoint", joint.is_subset(&meet), || {
                                doc(g.clone(), format!("{} with {}", am.joint_key(c, jc), am.joint_key(d, jd)))
                            });
                        }
                    }
                }
            }
        }
    }
    // The pinned counterexample: the converse inclusions fail on m1.
    let m1 = fixtures::m1();
    let am = to_action_model(&m1);
    let key = |k: &str| JointAction::parse_key(k, m1.agents(), m1.actions()).expect("fixture keys");
    let out_a = am.outcome_of(0, &key("a:a1"))?.clone();
    let out_b = am.outcome_of(0, &key("b:b1"))?.clone();
    let out_ab = am.outcome_of(0, &key("a:a1,b:b1"))?.clone();
    let s12 = StateSet::from([1, 2]);
    let ok = out_a == s12 && out_b == s12 && out_ab == StateSet::from([1]);
    ch.record("m1-outcomes", ok, || doc(m1.clone(), format!("{out_a:?} {out_b:?} {out_ab:?}")));
    ch.record("m1-converse-fails", !out_a.intersection(&out_b).is_subset(&out_ab), || {
        doc(m1.clone(), "joint outcome contains the intersection")
    });
    ch.record("m1-not-single-first", SingleFirstActionModel::from_gam(&m1).is_err(), || {
        doc(m1.clone(), "m1 passed the single-coalition-first conditions")
    });
    let (g1, g2) = (to_action_model(&fixtures::gam1()), to_action_model(&fixtures::gam2()));
    let same_agents = (0..2).all(|a| {
        let c = Coalition::singleton(a);
        (0..3).all(|s| (0..4).all(|x| g1.outcome(c, s, x) == g2.outcome(c, s, x)))
    });
    let grand = g1.agents().grand();
    let differ = (0..4).any(|k| g1.outcome(grand, 0, k) != g2.outcome(grand, 0, k));
    ch.record("gam1-gam2-not-compositional", same_agents && differ, || {
        doc(fixtures::gam2(), "agent tables differ or joint tables coincide")
    });
    Ok(())
}

/// Outcome of running the three condition sets over every local outcome
/// table at one state.
#[derive(Clone, Debug)]
pub struct LocalReport {
    pub n_states: usize,
    pub n_agents: usize,
    pub n_actions: usize,
    pub visited: u64,
    /// Tables where all three sets hold.
    pub holding: u64,
    pub disagreement: Option<ActionModel>,
}

/// Checks that condition sets 1, 2 and 3 agree at state 0 of every action
/// model over `n` states, `m` agents and `k` actions that differs only in
/// its state-0 outcome tables. Availability does not enter the conditions.
pub fn sam_equivalence_local(n: usize, m: usize, k: usize) -> Result<LocalReport> {
    let mut report =
        LocalReport { n_states: n, n_agents: m, n_actions: k, visited: 0, holding: 0, disagreement: None };
    report.visited = for_each_local_table(n, m, k, |am| {
        let c1 = condition_set_1(am, 0);
        let c2 = condition_set_2(am, 0);
        let c3 = condition_set_3(am, 0);
        if c1 && c2 && c3 {
            report.holding += 1;
        }
        if !(c1 == c2 && c2 == c3) && report.disagreement.is_none() {
            report.disagreement = Some(am.clone());
        }
    })?;
    Ok(report)
}

/// Largest local enumeration the suite runs in exhaustive mode.
const MAX_LOCAL_TABLES: u64 = 1 << 27;

fn random_action_model(spec: &GenSpec, rng: &mut ChaCha8Rng) -> ActionModel {
    let n = rng.gen_range(1..=spec.n_states);
    let m = rng.gen_range(1..=spec.n_agents);
    let k = rng.gen_range(1..=spec.n_actions);
    let agents = AgentUniverse::new(["a", "b"].into_iter().take(m)).expect("names");
    let actions = crate::model::ActionUniverse::new(["x", "y"].into_iter().take(k)).expect("names");
    let carrier = crate::model::Carrier::numbered(n).expect("nonempty");
    // Half the samples start from a single-coalition-first model so the
    // conditions hold; some of those get one cell disturbed.
    let mut am = if rng.gen_bool(0.5) {
        let suc: Vec<StateSet> = (0..n).map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect()).collect();
        let out = (0..m)
            .map(|_| {
                suc.iter()
                    .map(|y| {
                        let mut row = vec![StateSet::new(); k];
                        for t in y.iter() {
                            row[rng.gen_range(0..k)].insert(t);
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        SingleFirstActionModel::new(agents, actions, carrier, suc, out).expect("covers").to_action_model()
    } else {
        ActionModel::new(agents, actions, carrier).expect("small")
    };
    let cells: Vec<(Coalition, usize)> =
        am.agents().coalitions().flat_map(|c| (0..am.space().count(c)).map(move |j| (c, j))).collect();
    let disturb = if am.outcome(Coalition::EMPTY, 0, 0).is_empty() { cells.len() } else { rng.gen_range(0..3) };
    for _ in 0..disturb {
        let (c, j) = cells[rng.gen_range(0..cells.len())];
        let s = rng.gen_range(0..n);
        am.set_outcome(c, s, j, (0..n).filter(|_| rng.gen_bool(0.5)).collect());
    }
    am
}

fn sam_equivalence(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    match spec.mode {
        Mode::Exhaustive => {
            for n in 1..=spec.n_states.min(3) {
                for m in 1..=spec.n_agents {
                    for k in 1..=spec.n_actions {
                        let cells: u32 = (0..=m).map(|c| binomial(m, c) * k.pow(c as u32)).sum::<usize>() as u32;
                        let tables = 1u64.checked_shl(n as u32 * cells).unwrap_or(u64::MAX);
                        if tables > MAX_LOCAL_TABLES {
                            return Err(Error::BoundsExceeded(format!(
                                "{tables} local tables over {n} states, {m} agents, {k} actions"
                            )));
                        }
                        let report = sam_equivalence_local(n, m, k)?;
                        ch.models += report.visited;
                        let witness = report.disagreement.clone();
                        ch.record("conditions-agree", witness.is_none(), || {
                            doc(witness.expect("failure carries a model"), "condition sets disagree at s0")
                        });
                    }
                }
            }
        }
        Mode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let am = random_action_model(spec, &mut rng);
                ch.models += 1;
                for s in 0..am.n_states() {
                    let (c1, c2, c3) = (condition_set_1(&am, s), condition_set_2(&am, s), condition_set_3(&am, s));
                    ch.record("conditions-agree", c1 == c2 && c2 == c3, || {
                        doc(am.clone(), format!("sets give {c1}, {c2}, {c3} at {}", am.carrier().name(s)))
                    });
                }
            }
        }
    }
    for g in gams(spec)? {
        ch.models += 1;
        let am = to_action_model(&g);
        let all = (0..g.n_states()).all(|s| condition_set_1(&am, s));
        ch.record("from-gam-iff-conditions", SingleFirstActionModel::from_gam(&g).is_ok() == all, || {
            doc(g.clone(), "from_gam disagrees with condition set 1")
        });
    }
    for m in sams(spec)? {
        ch.models += 1;
        let am = m.to_action_model();
        ch.record("sam-satisfies-conditions", (0..m.n_states()).all(|s| condition_set_1(&am, s)), || {
            doc(m.clone(), "derived tables violate condition set 1")
        });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn snm_cover(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    for m in snms(spec)? {
        ch.models += 1;
        for c in m.agents().coalitions() {
            for (s, family) in snm_derive_neighborhood(&m, c).iter().enumerate() {
                ch.record("derived-cover", is_cover(family, m.successor(s)) && !family.contains_empty(), || {
                    doc(m.clone(), format!("coalition {{{}}} at {}", m.agents().coalition_key(c), m.carrier().name(s)))
                });
            }
        }
    }
    ch.record("odot-needs-families", matches!(odot_all(&[]), Err(Error::Empty(_))), || {
        doc(fixtures::n1(), "empty product accepted")
    });
    let rejected = SingleFirstNeighborhoodModel::new(
        AgentUniverse::new(["a"])?,
        crate::model::Carrier::numbered(2)?,
        vec![StateSet::from([0, 1]), StateSet::new()],
        vec![vec![[StateSet::from([0])].into_iter().collect(), Family::new()]],
    );
    ch.record("non-cover-rejected", matches!(rejected, Err(Error::NotACover { .. })), || {
        doc(fixtures::n1(), format!("{rejected:?}"))
    });
    Ok(())
}

fn sam_fixtures() -> Vec<SingleFirstActionModel> {
    let mut out = vec![fixtures::lock_sam(), fixtures::proc_sam()];
    for g in [fixtures::tree_gam(), fixtures::loop_gam(), fixtures::u1()] {
        out.push(SingleFirstActionModel::from_gam(&g).expect("fixture is single-coalition-first"));
    }
    for g in [fixtures::lock(), fixtures::proc()] {
        let u = unravel(&g, 0, TREE_DEPTH).expect("small");
        out.push(SingleFirstActionModel::from_gam(&u).expect("trees are single-coalition-first"));
    }
    out
}

fn snm_fixtures() -> Vec<SingleFirstNeighborhoodModel> {
    let mut out = vec![fixtures::n1(), fixtures::tree_snm(), fixtures::loop_snm()];
    out.extend(sam_fixtures().iter().map(sam_to_snm));
    out
}

/// Bank agreement between the two sides of a representation pair.
fn check_truth(name: &str, am: &ActionModel, nm: NeighborhoodModel, model: AnyModel, banks: &mut Banks, ch: &mut Checks) -> Result<()> {
    let bank = banks.get(am.agents());
    let ta = Semantics::Action(am.clone()).truth_batch(&bank.batch)?;
    let tn = Semantics::Neighborhood(nm).truth_batch(&bank.batch)?;
    ch.record(name, ta == tn, || doc(model, first_difference(&bank.formulas, &ta, &tn)));
    Ok(())
}

fn check_sam_to_snm(m: &SingleFirstActionModel, ch: &mut Checks, banks: &mut Banks) -> Result<()> {
    let n = sam_to_snm(m);
    check_truth("sam-to-snm-truth", &m.to_action_model(), n.to_neighborhood_model(), m.clone().into(), banks, ch)?;
    ch.record("sam-to-snm-z", z_represents(&n.to_neighborhood_model(), &m.to_action_model())?, || {
        doc(m.clone(), "AE of the action model differs from the derived neighborhoods")
    });
    ch.record("sam-to-snm-signature", classify_sam(m) == classify_snm(&n), || {
        doc(m.clone(), format!("{} vs {}", classify_sam(m), classify_snm(&n)))
    });
    ch.record("sam-to-snm-clear", sam_to_snm_preserves_clear(m) != Some(false), || doc(m.clone(), "clearness lost"));
    ch.record("sam-to-snm-tree", sam_to_snm_preserves_tree(m) != Some(false), || doc(m.clone(), "tree-likeness lost"));
    Ok(())
}

fn check_snm_to_sam(n: &SingleFirstNeighborhoodModel, ch: &mut Checks, banks: &mut Banks) -> Result<()> {
    let m = snm_to_sam(n)?;
    check_truth("snm-to-sam-truth", &m.to_action_model(), n.to_neighborhood_model(), n.clone().into(), banks, ch)?;
    ch.record("snm-to-sam-z", z_represents(&n.to_neighborhood_model(), &m.to_action_model())?, || {
        doc(n.clone(), "AE of the constructed model differs from the derived neighborhoods")
    });
    ch.record("snm-to-sam-signature", classify_sam(&m) == classify_snm(n), || {
        doc(n.clone(), format!("{} vs {}", classify_sam(&m), classify_snm(n)))
    });
    ch.record("snm-to-sam-clear", snm_to_sam_preserves_clear(n)? != Some(false), || doc(n.clone(), "clearness lost"));
    ch.record("snm-to-sam-tree", snm_to_sam_preserves_tree(n)? != Some(false), || doc(n.clone(), "tree-likeness lost"));
    Ok(())
}

fn representation_roundtrip(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    let mut banks = Banks::default();
    for m in sams(spec)?.chain(sam_fixtures()) {
        ch.models += 1;
        check_sam_to_snm(&m, ch, &mut banks)?;
    }
    for n in snms(spec)?.chain(snm_fixtures()) {
        ch.models += 1;
        check_snm_to_sam(&n, ch, &mut banks)?;
    }
    Ok(())
}

fn x_iff_x(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    for m in sams(spec)? {
        ch.models += 1;
        let n = sam_to_snm(&m);
        ch.record("sam-vs-snm", classify_sam(&m) == classify_snm(&n), || doc(m.clone(), "signatures differ"));
        ch.record("sam-vs-gam-embedding", classify_sam(&m) == classify(&sam_to_gam(&m)), || {
            doc(m.clone(), "signature changes under the embedding")
        });
    }
    for n in snms(spec)? {
        ch.models += 1;
        let m = snm_to_sam(&n)?;
        ch.record("snm-vs-sam", classify_sam(&m) == classify_snm(&n), || doc(n.clone(), "signatures differ"));
    }
    Ok(())
}

fn clear_equivalences(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    for g in gams(spec)? {
        ch.models += 1;
        let c = [clear_condition(&g, 1), clear_condition(&g, 2), clear_condition(&g, 3)];
        ch.record("gam-conditions-agree", c[0] == c[1] && c[1] == c[2] && c[2] == is_clear_gam(&g), || {
            doc(g.clone(), format!("conditions give {c:?}"))
        });
        ch.record("clear-gam-general-partition", !c[2] || outcome_families_partition(&g), || {
            doc(g.clone(), "clear but some outcome family is not a general partition")
        });
    }
    for n in snms(spec)? {
        ch.models += 1;
        let (c1, c2) = (clear_snm_condition(&n, 1), clear_snm_condition(&n, 2));
        ch.record("snm-conditions-agree", c1 == c2 && c1 == is_clear_snm(&n), || {
            doc(n.clone(), format!("conditions give {c1}, {c2}"))
        });
    }
    let u1 = fixtures::u1();
    ch.record("u1-partition-not-clear", outcome_families_partition(&u1) && !is_clear_gam(&u1), || {
        doc(u1.clone(), "u1 is clear or some family is not a general partition")
    });
    let n1 = fixtures::n1();
    let agents_fail = (0..2).any(|a| !crate::model::is_partition(n1.neighborhood_agent(a, 0), n1.successor(0)));
    ch.record("n1-grand-partition-not-clear", agents_fail && grand_neighborhood_partitions(&n1) && !is_clear_snm(&n1), || {
        doc(n1.clone(), "n1 does not separate the agent and grand conditions")
    });
    Ok(())
}

fn clear_representation(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    let fixture_gams = [fixtures::lock(), fixtures::proc(), fixtures::tree_gam(), fixtures::loop_gam()];
    for g in gams(spec)?.chain(fixture_gams) {
        ch.models += 1;
        if !is_clear_gam(&g) {
            continue;
        }
        let sam = SingleFirstActionModel::from_gam(&g);
        ch.record("clear-gam-is-sam", sam.is_ok(), || doc(g.clone(), "clear model failed the conditions"));
        if let Ok(sam) = sam {
            let n = sam_to_snm(&sam);
            let ok = is_clear_snm(&n) && z_represents(&n.to_neighborhood_model(), &to_action_model(&g))?;
            ch.record("clear-gam-to-clear-snm", ok, || doc(g.clone(), "representation is not clear"));
        }
    }
    for n in snms(spec)?.chain(snm_fixtures()) {
        ch.models += 1;
        if !is_clear_snm(&n) {
            continue;
        }
        let g = sam_to_gam(&snm_to_sam(&n)?);
        let ok = is_clear_gam(&g) && z_represents(&n.to_neighborhood_model(), &to_action_model(&g))?;
        ch.record("clear-snm-to-clear-gam", ok, || doc(n.clone(), "represented model is not clear"));
    }
    Ok(())
}

/// The model itself plus a depth-1 unraveling from its first state, so
/// tree-like samples occur.
fn with_unraveling(g: GrandFirstActionModel, depth: usize) -> Vec<GrandFirstActionModel> {
    let u = unravel(&g, 0, depth).expect("small");
    vec![g, u]
}

fn tree_equivalences(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    for g in gams(spec)?.flat_map(|g| with_unraveling(g, 1)) {
        ch.models += 1;
        let t = [tree_condition_gam(&g, 1), tree_condition_gam(&g, 2), tree_condition_gam(&g, 3)];
        ch.record("gam-conditions-agree", t[0] == t[1] && t[1] == t[2], || doc(g.clone(), format!("{t:?}")));
        let am = to_action_model(&g);
        for c in g.agents().coalitions() {
            ch.record("gam-root-by-enumeration", arborescence_root(&am, c) == root_by_enumeration(&am, c), || {
                doc(g.clone(), format!("coalition {{{}}}", g.agents().coalition_key(c)))
            });
        }
    }
    for n in snms(spec)?.chain(snm_fixtures()) {
        ch.models += 1;
        let (t1, t2) = (tree_condition_snm(&n, 1), tree_condition_snm(&n, 2));
        ch.record("snm-conditions-agree", t1 == t2 && t1 == is_treelike_snm(&n).0, || {
            doc(n.clone(), format!("{t1}, {t2}"))
        });
        let nm = n.to_neighborhood_model();
        for c in n.agents().coalitions() {
            ch.record("snm-root-by-enumeration", arborescence_root(&nm, c) == root_by_enumeration(&nm, c), || {
                doc(n.clone(), format!("coalition {{{}}}", n.agents().coalition_key(c)))
            });
        }
    }
    let n1 = fixtures::n1();
    ch.record("grand-histories-not-enough", grand_tree_snm(&n1) && !is_treelike_snm(&n1).0, || {
        doc(n1.clone(), "n1 does not separate grand and agent histories")
    });
    Ok(())
}

fn tree_implies_clear(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    for g in gams(spec)?.flat_map(|g| with_unraveling(g, TREE_DEPTH)) {
        ch.models += 1;
        ch.record("gam", !is_treelike_gam(&g).0 || is_clear_gam(&g), || doc(g.clone(), "tree-like but not clear"));
    }
    for n in snms(spec)?.chain(snm_fixtures()) {
        ch.models += 1;
        ch.record("snm", !is_treelike_snm(&n).0 || is_clear_snm(&n), || doc(n.clone(), "tree-like but not clear"));
    }
    let lg = fixtures::loop_gam();
    ch.record("loop-gam-clear-not-tree", is_clear_gam(&lg) && !is_treelike_gam(&lg).0, || doc(lg.clone(), "loop"));
    let ls = fixtures::loop_snm();
    ch.record("loop-snm-clear-not-tree", is_clear_snm(&ls) && !is_treelike_snm(&ls).0, || doc(ls.clone(), "loop"));
    Ok(())
}

fn unravel_equivalence(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    let mut banks = Banks::default();
    for g in gams(spec)? {
        ch.models += 1;
        let bank = banks.get(g.agents());
        let truth = Semantics::of(&AnyModel::Gam(g.clone())).truth_batch(&bank.batch)?;
        let signature = classify(&g);
        for s in 0..g.n_states() {
            for depth in 0..=TREE_DEPTH {
                let u = unravel_with_map(&g, s, depth)?;
                if let Some((idx, batch)) = bank.by_depth.get(depth) {
                    let at_root = Semantics::of(&AnyModel::Gam(u.model.clone())).truth_batch(batch)?;
                    for (&i, t) in idx.iter().zip(&at_root) {
                        ch.record("root-agreement", truth[i].contains(s) == t.contains(0), || {
                            let f = &bank.formulas[i];
                            let mut d = super::countermodel_document(&AnyModel::Gam(g.clone()), s, f);
                            d.provenance = Some(format!("unraveled to depth {depth}"));
                            (d, format!("`{f}` differs at the root"))
                        });
                    }
                }
                ch.record("tree-like", is_treelike_gam(&u.model) == (true, Some(0)), || {
                    doc(g.clone(), format!("unraveling from {} to depth {depth}", g.carrier().name(s)))
                });
                ch.record("correspondence", unraveling_corresponds(&g, &u), || {
                    doc(g.clone(), format!("unraveling from {} to depth {depth}", g.carrier().name(s)))
                });
                let interior = classify_states(&to_action_model(&u.model), u.interior());
                ch.record("interior-signature", signature.is_subset(interior), || {
                    doc(g.clone(), format!("{signature} but interior {interior}"))
                });
            }
        }
    }
    Ok(())
}

fn schema_letter(schema: AxiomSchema) -> Option<fn(PropertySignature) -> bool> {
    match schema {
        AxiomSchema::Ser => Some(|x| x.serial),
        AxiomSchema::Ia => Some(|x| x.independent),
        AxiomSchema::Det => Some(|x| x.deterministic),
        _ => None,
    }
}

/// Per-schema validity of the bank on one model.
fn schema_validity(model: &AnyModel, bank: &Bank) -> Result<Vec<(AxiomSchema, bool)>> {
    let sem = Semantics::of(model);
    let truth = sem.truth_batch(&bank.batch)?;
    let full = StateSet::full(sem.n_states());
    Ok(AxiomSchema::ALL
        .iter()
        .map(|&schema| {
            let valid = bank.schemas.iter().zip(&truth).filter(|(&e, _)| e == schema).all(|(_, t)| *t == full);
            (schema, valid)
        })
        .collect())
}

fn axiom_validity(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    let mut banks = Banks::default();
    for kind in [Kind::Gam, Kind::Sam, Kind::Snm] {
        for model in stream(spec, kind)? {
            ch.models += 1;
            let bank = banks.get(model.agents());
            let signature = signature_of(&model);
            for (schema, valid) in schema_validity(&model, &bank)? {
                let name = schema.name().to_ascii_lowercase();
                match schema_letter(schema) {
                    None => ch.record(&format!("{name}-valid"), valid, || doc(model.clone(), "instance refuted")),
                    Some(letter) => {
                        let has = letter(signature);
                        ch.record(&format!("{name}-sound"), !has || valid, || {
                            doc(model.clone(), format!("refuted on a {signature} model"))
                        });
                        ch.record(&format!("{name}-exact"), has == valid, || {
                            doc(model.clone(), format!("every instance valid on a {signature} model"))
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn final_determination(spec: &GenSpec, ch: &mut Checks) -> Result<()> {
    let mut banks = Banks::default();
    // (signature class, kind) -> per-formula validity over the class.
    let mut validity: HashMap<(PropertySignature, &'static str), Vec<bool>> = HashMap::new();
    let mut note = |signature: PropertySignature, kind: &'static str, at: &[bool]| {
        for x in PropertySignature::all().into_iter().filter(|x| x.is_subset(signature)) {
            let entry = validity.entry((x, kind)).or_insert_with(|| vec![true; at.len()]);
            for (v, &b) in entry.iter_mut().zip(at) {
                *v &= b;
            }
        }
    };
    for g in gams(spec)? {
        ch.models += 1;
        if g.agents().len() != spec.n_agents {
            continue;
        }
        let bank = banks.get(g.agents());
        let batch = &bank.batch;
        let signature = classify(&g);
        let base = Semantics::of(&AnyModel::Gam(g.clone())).truth_batch(batch)?;
        let sam = SingleFirstActionModel::from_gam(&g).ok();
        for s in 0..g.n_states() {
            let at = |t: &[StateSet], p| t.iter().map(|y| y.contains(p)).collect::<Vec<bool>>();
            let reference = at(&base, s);
            note(signature, "gam", &reference);
            let mut points: Vec<(&'static str, Vec<bool>)> = Vec::new();
            if let Some(sam) = &sam {
                let snm = sam_to_snm(sam);
                points.push(("sam", at(&Semantics::Action(sam.to_action_model()).truth_batch(batch)?, s)));
                points.push(("snm", at(&Semantics::Neighborhood(snm.to_neighborhood_model()).truth_batch(batch)?, s)));
                if is_clear_gam(&g) {
                    points.push(("clear-gam", reference.clone()));
                    points.push(("clear-snm", points[1].1.clone()));
                }
            }
            let tree = unravel(&g, s, TREE_DEPTH)?;
            let tree_sam = SingleFirstActionModel::from_gam(&tree);
            ch.record("tree-is-sam", tree_sam.is_ok(), || doc(tree.clone(), "unraveling failed the conditions"));
            let Ok(tree_sam) = tree_sam else { continue };
            let tree_snm = sam_to_snm(&tree_sam);
            ch.record("tree-snm-is-clear-tree", is_treelike_snm(&tree_snm).0 && is_clear_snm(&tree_snm), || {
                doc(tree_snm.clone(), "neighborhood image of the unraveling is not a tree")
            });
            points.push(("tree-gam", at(&Semantics::of(&AnyModel::Gam(tree.clone())).truth_batch(batch)?, 0)));
            points.push(("tree-snm", at(&Semantics::Neighborhood(tree_snm.to_neighborhood_model()).truth_batch(batch)?, 0)));
            for (kind, values) in &points {
                ch.record("pointwise-agreement", *values == reference, || {
                    let i = values.iter().zip(&reference).position(|(a, b)| a != b).unwrap_or(0);
                    let d = super::countermodel_document(&AnyModel::Gam(g.clone()), s, &bank.formulas[i]);
                    (d, format!("{kind} disagrees"))
                });
                note(signature, kind, values);
            }
        }
    }
    for n in snms(spec)? {
        ch.models += 1;
        let bank = banks.get(n.agents());
        let batch = &bank.batch;
        let tn = Semantics::Neighborhood(n.to_neighborhood_model()).truth_batch(batch)?;
        let tg = Semantics::of(&AnyModel::Gam(sam_to_gam(&snm_to_sam(&n)?))).truth_batch(batch)?;
        ch.record("snm-to-gam-agreement", tn == tg, || doc(n.clone(), first_difference(&bank.formulas, &tn, &tg)));
    }
    // Every sample has a tree image, so validity over the class must match
    // exactly; the other kinds only cover part of the samples and can only
    // validate more.
    for x in PropertySignature::all() {
        let Some(reference) = validity.get(&(x, "gam")).cloned() else { continue };
        for kind in ["tree-gam", "tree-snm", "sam", "snm", "clear-gam", "clear-snm"] {
            let Some(v) = validity.get(&(x, kind)) else { continue };
            let exact = kind.starts_with("tree");
            let ok = if exact { *v == reference } else { reference.iter().zip(v).all(|(r, v)| !r || *v) };
            ch.record(if exact { "class-validity-agrees" } else { "class-validity-inherited" }, ok, || {
                doc(fixtures::m1(), format!("class {x}: {kind} validity differs from gam"))
            });
        }
    }
    Ok(())
}
