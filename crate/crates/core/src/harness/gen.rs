//! Bounded model generation: exhaustive odometers and seeded sampling.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gam::{classify, GrandFirstActionModel};
use crate::io::AnyModel;
use crate::model::{
    ActionModel, ActionUniverse, AgentUniverse, Carrier, Coalition, Family, PropertySignature,
    StateSet,
};
use crate::sam_snm::{classify_sam, classify_snm, SingleFirstActionModel, SingleFirstNeighborhoodModel};

pub const MAX_GEN_STATES: usize = 4;
pub const MAX_GEN_AGENTS: usize = 2;
pub const MAX_GEN_ACTIONS: usize = 2;

/// Largest number of models one exhaustive shape may contribute.
pub const MAX_EXHAUSTIVE_PER_SHAPE: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Gam,
    Sam,
    Snm,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gam => "gam",
            Kind::Sam => "sam",
            Kind::Snm => "snm",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gam" => Ok(Kind::Gam),
            "sam" => Ok(Kind::Sam),
            "snm" => Ok(Kind::Snm),
            other => Err(Error::InvalidModel(format!("unknown generator kind `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, count: usize },
}

/// Bounds and mode for a model stream. Sizes range over `1..=bound`.
///
/// Exhaustive streams fix the labeling (`p` on even states, `q` on
/// multiples of three); random streams draw it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub n_states: usize,
    pub n_agents: usize,
    pub n_actions: usize,
    pub kind: Kind,
    /// Keep only models whose signature contains this one (membership in
    /// the class it names).
    pub signature_filter: Option<PropertySignature>,
    pub mode: Mode,
}

impl GenSpec {
    pub fn exhaustive(kind: Kind, n_states: usize, n_agents: usize, n_actions: usize) -> Self {
        GenSpec { n_states, n_agents, n_actions, kind, signature_filter: None, mode: Mode::Exhaustive }
    }

    pub fn random(kind: Kind, seed: u64, count: usize) -> Self {
        GenSpec {
            n_states: MAX_GEN_STATES,
            n_agents: MAX_GEN_AGENTS,
            n_actions: MAX_GEN_ACTIONS,
            kind,
            signature_filter: None,
            mode: Mode::Random { seed, count },
        }
    }

    pub fn with_filter(mut self, signature: PropertySignature) -> Self {
        self.signature_filter = Some(signature);
        self
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    pub fn check_bounds(&self) -> Result<()> {
        let ok = (1..=MAX_GEN_STATES).contains(&self.n_states)
            && (1..=MAX_GEN_AGENTS).contains(&self.n_agents)
            && (1..=MAX_GEN_ACTIONS).contains(&self.n_actions);
        if !ok {
            return Err(Error::BoundsExceeded(format!(
                "{} states, {} agents, {} actions (max {MAX_GEN_STATES}, {MAX_GEN_AGENTS}, {MAX_GEN_ACTIONS})",
                self.n_states, self.n_agents, self.n_actions
            )));
        }
        if self.mode == Mode::Exhaustive {
            for (n, m, k) in self.shapes() {
                let size = shape_size(self.kind, n, m, k);
                if size > MAX_EXHAUSTIVE_PER_SHAPE {
                    return Err(Error::BoundsExceeded(format!(
                        "exhaustive {} stream over {n} states, {m} agents, {k} actions has {size} models",
                        self.kind
                    )));
                }
            }
        }
        Ok(())
    }

    fn shapes(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for n in 1..=self.n_states {
            for m in 1..=self.n_agents {
                let actions = if self.kind == Kind::Snm { 1..=1 } else { 1..=self.n_actions };
                for k in actions {
                    out.push((n, m, k));
                }
            }
        }
        out
    }
}

pub fn agents(m: usize) -> AgentUniverse {
    AgentUniverse::new(["a", "b"].into_iter().take(m)).expect("two agent names")
}

pub fn actions(k: usize) -> ActionUniverse {
    ActionUniverse::new(["x", "y"].into_iter().take(k)).expect("two action names")
}

/// `s0..s{n-1}` with the fixed labeling used by exhaustive streams.
pub fn fixed_carrier(n: usize) -> Carrier {
    let mut c = Carrier::numbered(n).expect("nonempty");
    for s in 0..n {
        let mut atoms = std::collections::BTreeSet::new();
        if s % 2 == 0 {
            atoms.insert("p".to_string());
        }
        if s % 3 == 0 {
            atoms.insert("q".to_string());
        }
        c.set_label(s, atoms);
    }
    c
}

fn random_carrier(n: usize, rng: &mut ChaCha8Rng) -> Carrier {
    let mut c = Carrier::numbered(n).expect("nonempty");
    for s in 0..n {
        let atoms = ["p", "q"].into_iter().filter(|_| rng.gen_bool(0.5)).map(String::from).collect();
        c.set_label(s, atoms);
    }
    c
}

/// Every subset of `set`, smallest mask first.
fn subsets_of(set: &StateSet) -> Vec<StateSet> {
    let members: Vec<usize> = set.iter().collect();
    (0u64..1 << members.len())
        .map(|mask| members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect())
        .collect()
}

/// `k`-tuples of subsets of `suc` whose union is `suc`.
fn general_covers(suc: &StateSet, k: usize) -> Vec<Vec<StateSet>> {
    let subs = subsets_of(suc);
    let mut out = Vec::new();
    for idx in Odometer::new(vec![subs.len(); k]) {
        let row: Vec<StateSet> = idx.iter().map(|&i| subs[i].clone()).collect();
        if row.iter().fold(StateSet::new(), |acc, y| acc.union(y)) == *suc {
            out.push(row);
        }
    }
    out
}

/// Families of nonempty subsets of `suc` whose union is `suc`.
fn covers(suc: &StateSet) -> Vec<Family> {
    let nonempty: Vec<StateSet> = subsets_of(suc).into_iter().filter(|y| !y.is_empty()).collect();
    (0u64..1 << nonempty.len())
        .map(|mask| -> Family {
            nonempty.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, y)| y.clone()).collect()
        })
        .filter(|f| f.union_all() == *suc)
        .collect()
}

fn shape_size(kind: Kind, n: usize, m: usize, k: usize) -> u64 {
    let per_state: u64 = match kind {
        Kind::Gam => 1u64.checked_shl((n * k.pow(m as u32)) as u32).unwrap_or(u64::MAX),
        Kind::Sam => subsets_of(&StateSet::full(n))
            .iter()
            .map(|suc| (general_covers(suc, k).len() as u64).saturating_pow(m as u32))
            .sum(),
        Kind::Snm => subsets_of(&StateSet::full(n))
            .iter()
            .map(|suc| (covers(suc).len() as u64).saturating_pow(m as u32))
            .sum(),
    };
    per_state.saturating_pow(n as u32)
}

/// Mixed-radix counter over `radices`, least significant digit last.
#[derive(Clone, Debug)]
pub struct Odometer {
    radices: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(radices: Vec<usize>) -> Self {
        let current = if radices.contains(&0) { None } else { Some(vec![0; radices.len()]) };
        Odometer { radices, current }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.radices[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// A stream of generated models.
pub struct ModelStream {
    inner: Box<dyn Iterator<Item = AnyModel>>,
}

impl Iterator for ModelStream {
    type Item = AnyModel;

    fn next(&mut self) -> Option<AnyModel> {
        self.inner.next()
    }
}

pub fn signature_of(model: &AnyModel) -> PropertySignature {
    match model {
        AnyModel::Gam(g) => classify(g),
        AnyModel::Sam(m) => classify_sam(m),
        AnyModel::Snm(m) => classify_snm(m),
        AnyModel::Action(m) => crate::gam::classify_states(m, 0..m.n_states()),
        AnyModel::Neighborhood(nm) => PropertySignature::new(
            (0..nm.n_states()).all(|s| crate::sam_snm::snm_serial_at(nm, s)),
            (0..nm.n_states()).all(|s| crate::sam_snm::snm_independent_at(nm, s)),
            (0..nm.n_states()).all(|s| crate::sam_snm::snm_deterministic_at(nm, s)),
        ),
    }
}

/// Models within the bounds of `spec`. Exhaustive streams run over shapes
/// in increasing size and, within a shape, in odometer order over the
/// per-state tables. Random streams are a pure function of the seed.
pub fn generate(spec: GenSpec) -> Result<ModelStream> {
    spec.check_bounds()?;
    let filter = spec.signature_filter;
    let keep = move |m: &AnyModel| filter.is_none_or(|f| f.is_subset(signature_of(m)));
    let inner: Box<dyn Iterator<Item = AnyModel>> = match spec.mode {
        Mode::Exhaustive => {
            let kind = spec.kind;
            Box::new(spec.shapes().into_iter().flat_map(move |(n, m, k)| exhaustive_shape(kind, n, m, k)).filter(keep))
        }
        Mode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let budget = count.saturating_mul(200).max(1000);
            let mut tries = 0usize;
            Box::new(
                std::iter::from_fn(move || {
                    if tries == budget {
                        return None;
                    }
                    tries += 1;
                    Some(random_model(&spec, &mut rng))
                })
                .filter(keep)
                .take(count),
            )
        }
    };
    Ok(ModelStream { inner })
}

fn exhaustive_shape(kind: Kind, n: usize, m: usize, k: usize) -> Box<dyn Iterator<Item = AnyModel>> {
    let all = StateSet::full(n);
    match kind {
        Kind::Gam => {
            let subs = subsets_of(&all);
            let profiles = k.pow(m as u32);
            Box::new(Odometer::new(vec![subs.len(); n * profiles]).map(move |idx| {
                let mut g = GrandFirstActionModel::new(agents(m), actions(k), fixed_carrier(n)).expect("small");
                for (cell, &i) in idx.iter().enumerate() {
                    g.set_outcome(cell / profiles, cell % profiles, subs[i].clone());
                }
                AnyModel::Gam(g)
            }))
        }
        Kind::Sam => {
            let local: Vec<(StateSet, Vec<Vec<StateSet>>)> = subsets_of(&all)
                .into_iter()
                .flat_map(|suc| {
                    let rows = general_covers(&suc, k);
                    Odometer::new(vec![rows.len(); m])
                        .map(|idx| (suc.clone(), idx.iter().map(|&i| rows[i].clone()).collect()))
                        .collect::<Vec<_>>()
                })
                .collect();
            Box::new(Odometer::new(vec![local.len(); n]).map(move |idx| {
                let suc = idx.iter().map(|&i| local[i].0.clone()).collect();
                let out = (0..m).map(|a| idx.iter().map(|&i| local[i].1[a].clone()).collect()).collect();
                AnyModel::Sam(
                    SingleFirstActionModel::new(agents(m), actions(k), fixed_carrier(n), suc, out).expect("covers"),
                )
            }))
        }
        Kind::Snm => {
            let local: Vec<(StateSet, Vec<Family>)> = subsets_of(&all)
                .into_iter()
                .flat_map(|suc| {
                    let fams = covers(&suc);
                    Odometer::new(vec![fams.len(); m])
                        .map(|idx| (suc.clone(), idx.iter().map(|&i| fams[i].clone()).collect()))
                        .collect::<Vec<_>>()
                })
                .collect();
            Box::new(Odometer::new(vec![local.len(); n]).map(move |idx| {
                let suc = idx.iter().map(|&i| local[i].0.clone()).collect();
                let nei = (0..m).map(|a| idx.iter().map(|&i| local[i].1[a].clone()).collect()).collect();
                AnyModel::Snm(SingleFirstNeighborhoodModel::new(agents(m), fixed_carrier(n), suc, nei).expect("covers"))
            }))
        }
    }
}

/// Cell styles that steer samples towards each property.
#[derive(Clone, Copy)]
enum Style {
    Sparse,
    AtMostOne,
    ExactlyOne,
    Dense,
}

fn random_subset(n: usize, style: Style, rng: &mut ChaCha8Rng) -> StateSet {
    match style {
        Style::Sparse => {
            if rng.gen_bool(0.4) {
                StateSet::new()
            } else {
                (0..n).filter(|_| rng.gen_bool(0.4)).collect()
            }
        }
        Style::AtMostOne => {
            if rng.gen_bool(0.3) {
                StateSet::new()
            } else {
                StateSet::singleton(rng.gen_range(0..n))
            }
        }
        Style::ExactlyOne => StateSet::singleton(rng.gen_range(0..n)),
        Style::Dense => {
            let mut y: StateSet = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            if y.is_empty() {
                y.insert(rng.gen_range(0..n));
            }
            y
        }
    }
}

fn random_model(spec: &GenSpec, rng: &mut ChaCha8Rng) -> AnyModel {
    let n = rng.gen_range(1..=spec.n_states);
    let m = rng.gen_range(1..=spec.n_agents);
    let k = if spec.kind == Kind::Snm { 1 } else { rng.gen_range(1..=spec.n_actions) };
    let style = *[Style::Sparse, Style::AtMostOne, Style::ExactlyOne, Style::Dense].choose(rng).expect("nonempty");
    let carrier = random_carrier(n, rng);
    match spec.kind {
        Kind::Gam => {
            let mut g = GrandFirstActionModel::new(agents(m), actions(k), carrier).expect("small");
            for s in 0..n {
                for p in 0..g.n_profiles() {
                    g.set_outcome(s, p, random_subset(n, style, rng));
                }
            }
            AnyModel::Gam(g)
        }
        Kind::Sam => {
            let suc: Vec<StateSet> = (0..n).map(|_| random_subset(n, style, rng)).collect();
            let out = (0..m)
                .map(|_| {
                    suc.iter()
                        .map(|y| {
                            let members: Vec<usize> = y.iter().collect();
                            let mut row = vec![StateSet::new(); k];
                            for &t in &members {
                                // Every successor lands in at least one action's outcome.
                                row[rng.gen_range(0..k)].insert(t);
                                for cell in row.iter_mut() {
                                    if rng.gen_bool(0.25) {
                                        cell.insert(t);
                                    }
                                }
                            }
                            row
                        })
                        .collect()
                })
                .collect();
            AnyModel::Sam(SingleFirstActionModel::new(agents(m), actions(k), carrier, suc, out).expect("covers"))
        }
        Kind::Snm => {
            let suc: Vec<StateSet> = (0..n).map(|_| random_subset(n, style, rng)).collect();
            let nei = (0..m)
                .map(|_| suc.iter().map(|y| random_cover(y, rng)).collect())
                .collect();
            AnyModel::Snm(SingleFirstNeighborhoodModel::new(agents(m), carrier, suc, nei).expect("covers"))
        }
    }
}

fn random_cover(suc: &StateSet, rng: &mut ChaCha8Rng) -> Family {
    let members: Vec<usize> = suc.iter().collect();
    if members.is_empty() {
        return Family::new();
    }
    // Assign each successor to one of up to |suc| blocks, then maybe add
    // overlapping extras.
    let blocks = rng.gen_range(1..=members.len());
    let mut sets = vec![StateSet::new(); blocks];
    for &t in &members {
        sets[rng.gen_range(0..blocks)].insert(t);
    }
    let mut family: Family = sets.into_iter().filter(|y| !y.is_empty()).collect();
    if rng.gen_bool(0.4) {
        let extra: StateSet = members.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !extra.is_empty() {
            family.insert(extra);
        }
    }
    family
}

/// Calls `f` on one action model per assignment of outcome tables at
/// state 0 (all coalitions, all joint actions), with `n` states, `m`
/// agents and `k` actions. Other states stay empty. Returns the number of
/// tables visited.
pub fn for_each_local_table(n: usize, m: usize, k: usize, mut f: impl FnMut(&ActionModel)) -> Result<u64> {
    let mut am = ActionModel::new(agents(m), actions(k), Carrier::numbered(n)?)?;
    let cells: Vec<(Coalition, usize)> = am
        .agents()
        .coalitions()
        .flat_map(|c| (0..am.space().count(c)).map(move |j| (c, j)))
        .collect();
    let subsets: Vec<StateSet> = (0u64..1 << n).map(StateSet::from_mask).collect();
    let radix = subsets.len();
    let mut digits = vec![0usize; cells.len()];
    let mut visited = 0u64;
    loop {
        f(&am);
        visited += 1;
        let mut i = cells.len();
        loop {
            if i == 0 {
                return Ok(visited);
            }
            i -= 1;
            digits[i] += 1;
            let wrapped = digits[i] == radix;
            if wrapped {
                digits[i] = 0;
            }
            let (c, j) = cells[i];
            am.set_outcome(c, 0, j, subsets[digits[i]].clone());
            if !wrapped {
                break;
            }
        }
    }
}
