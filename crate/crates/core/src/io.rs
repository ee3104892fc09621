//! JSON model files.
//!
//! One document per model. Every kind shares `kind`, `agents`, `states`,
//! `actions` (omitted for neighborhood kinds) and `labeling`; the payload
//! depends on the kind:
//!
//! | kind           | payload                                                            |
//! |----------------|--------------------------------------------------------------------|
//! | `action`       | `availability: {C: {s: [σ]}}`, `outcome: {C: {s: {σ: [t]}}}`      |
//! | `neighborhood` | `neighborhood: {C: {s: [[t]]}}`                                    |
//! | `gam`          | `outcome_grand: {s: {σ_AG: [t]}}`                                  |
//! | `sam`          | `successor: {s: [t]}`, `outcome_agent: {a: {s: {x: [t]}}}`         |
//! | `snm`          | `successor: {s: [t]}`, `neighborhood_agent: {a: {s: [[t]]}}`       |
//!
//! Coalition keys are comma-joined agent names (`""` for the empty
//! coalition), joint actions are keyed `a:a1,b:b1`. Missing entries mean
//! empty. Optional `provenance`, `focus_state` and `formula` fields ride
//! along untouched.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gam::GrandFirstActionModel;
use crate::model::{
    ActionModel, ActionUniverse, AgentUniverse, Carrier, Coalition, Family, JointAction,
    NeighborhoodModel, StateSet,
};
use crate::sam_snm::{SingleFirstActionModel, SingleFirstNeighborhoodModel};

/// A model of any of the five file kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyModel {
    Action(ActionModel),
    Neighborhood(NeighborhoodModel),
    Gam(GrandFirstActionModel),
    Sam(SingleFirstActionModel),
    Snm(SingleFirstNeighborhoodModel),
}

impl AnyModel {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyModel::Action(_) => "action",
            AnyModel::Neighborhood(_) => "neighborhood",
            AnyModel::Gam(_) => "gam",
            AnyModel::Sam(_) => "sam",
            AnyModel::Snm(_) => "snm",
        }
    }

    pub fn agents(&self) -> &AgentUniverse {
        match self {
            AnyModel::Action(m) => m.agents(),
            AnyModel::Neighborhood(m) => m.agents(),
            AnyModel::Gam(m) => m.agents(),
            AnyModel::Sam(m) => m.agents(),
            AnyModel::Snm(m) => m.agents(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            AnyModel::Action(m) => m.carrier(),
            AnyModel::Neighborhood(m) => m.carrier(),
            AnyModel::Gam(m) => m.carrier(),
            AnyModel::Sam(m) => m.carrier(),
            AnyModel::Snm(m) => m.carrier(),
        }
    }
}

impl From<ActionModel> for AnyModel {
    fn from(m: ActionModel) -> Self {
        AnyModel::Action(m)
    }
}

impl From<NeighborhoodModel> for AnyModel {
    fn from(m: NeighborhoodModel) -> Self {
        AnyModel::Neighborhood(m)
    }
}

impl From<GrandFirstActionModel> for AnyModel {
    fn from(m: GrandFirstActionModel) -> Self {
        AnyModel::Gam(m)
    }
}

impl From<SingleFirstActionModel> for AnyModel {
    fn from(m: SingleFirstActionModel) -> Self {
        AnyModel::Sam(m)
    }
}

impl From<SingleFirstNeighborhoodModel> for AnyModel {
    fn from(m: SingleFirstNeighborhoodModel) -> Self {
        AnyModel::Snm(m)
    }
}

/// A model plus the optional annotation fields of its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub model: AnyModel,
    pub provenance: Option<String>,
    /// Set on countermodel dumps: the refuted state.
    pub focus_state: Option<String>,
    /// Set on countermodel dumps: the refuted formula.
    pub formula: Option<String>,
}

impl Document {
    pub fn new(model: impl Into<AnyModel>) -> Self {
        Document { model: model.into(), provenance: None, focus_state: None, formula: None }
    }

    pub fn with_provenance(mut self, text: impl Into<String>) -> Self {
        self.provenance = Some(text.into());
        self
    }

    pub fn to_value(&self) -> Value {
        let raw = to_raw(self);
        serde_json::to_value(raw).expect("model documents serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("model documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
        from_raw(raw)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        let raw: Raw = serde_json::from_value(value).map_err(|e| Error::InvalidModel(e.to_string()))?;
        from_raw(raw)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

pub fn model_to_json(model: impl Into<AnyModel>) -> String {
    Document::new(model).to_json()
}

pub fn model_from_json(text: &str) -> Result<AnyModel> {
    Ok(Document::from_json(text)?.model)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    agents: Vec<String>,
    states: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    actions: Vec<String>,
    #[serde(default)]
    labeling: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    successor: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    availability: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outcome: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neighborhood: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outcome_grand: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outcome_agent: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neighborhood_agent: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    focus_state: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
}

type Sets = Vec<Vec<String>>;

fn names(carrier: &Carrier, set: &StateSet) -> Vec<String> {
    set.iter().map(|s| carrier.name(s).to_string()).collect()
}

fn family_names(carrier: &Carrier, family: &Family) -> Sets {
    family.iter().map(|y| names(carrier, y)).collect()
}

fn to_json<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("maps of strings serialize")
}

fn to_raw(doc: &Document) -> Raw {
    let m = &doc.model;
    let carrier = m.carrier();
    let labeling = (0..carrier.len())
        .filter(|&s| !carrier.label(s).is_empty())
        .map(|s| (carrier.name(s).to_string(), carrier.label(s).iter().cloned().collect()))
        .collect();
    let mut raw = Raw {
        kind: m.kind().to_string(),
        provenance: doc.provenance.clone(),
        agents: m.agents().names().to_vec(),
        states: carrier.names().to_vec(),
        actions: Vec::new(),
        labeling,
        successor: None,
        availability: None,
        outcome: None,
        neighborhood: None,
        outcome_grand: None,
        outcome_agent: None,
        neighborhood_agent: None,
        focus_state: doc.focus_state.clone(),
        formula: doc.formula.clone(),
    };
    let successor = |suc: &[StateSet]| -> BTreeMap<String, Vec<String>> {
        suc.iter()
            .enumerate()
            .filter(|(_, y)| !y.is_empty())
            .map(|(s, y)| (carrier.name(s).to_string(), names(carrier, y)))
            .collect()
    };
    match m {
        AnyModel::Action(am) => {
            raw.actions = am.actions().names().to_vec();
            let mut availability: BTreeMap<String, BTreeMap<String, Vec<String>>> = BTreeMap::new();
            let mut outcome: BTreeMap<String, BTreeMap<String, BTreeMap<String, Vec<String>>>> = BTreeMap::new();
            for c in am.agents().coalitions() {
                let ck = am.agents().coalition_key(c);
                for s in 0..am.n_states() {
                    let sn = carrier.name(s).to_string();
                    let av: Vec<String> = am.available(c, s).map(|j| am.joint_key(c, j)).collect();
                    if !av.is_empty() {
                        availability.entry(ck.clone()).or_default().insert(sn.clone(), av);
                    }
                    for j in 0..am.space().count(c) {
                        let y = am.outcome(c, s, j);
                        if !y.is_empty() {
                            outcome
                                .entry(ck.clone())
                                .or_default()
                                .entry(sn.clone())
                                .or_default()
                                .insert(am.joint_key(c, j), names(carrier, y));
                        }
                    }
                }
            }
            raw.availability = Some(to_json(availability));
            raw.outcome = Some(to_json(outcome));
        }
        AnyModel::Neighborhood(nm) => {
            let mut nei: BTreeMap<String, BTreeMap<String, Sets>> = BTreeMap::new();
            for c in nm.agents().coalitions() {
                for s in 0..nm.n_states() {
                    let family = nm.neighborhood(c, s);
                    if !family.is_empty() {
                        nei.entry(nm.agents().coalition_key(c))
                            .or_default()
                            .insert(carrier.name(s).to_string(), family_names(carrier, family));
                    }
                }
            }
            raw.neighborhood = Some(to_json(nei));
        }
        AnyModel::Gam(g) => {
            raw.actions = g.actions().names().to_vec();
            let mut outcome: BTreeMap<String, BTreeMap<String, Vec<String>>> = BTreeMap::new();
            for s in 0..g.n_states() {
                for k in 0..g.n_profiles() {
                    let y = g.outcome_grand(s, k);
                    if !y.is_empty() {
                        outcome
                            .entry(carrier.name(s).to_string())
                            .or_default()
                            .insert(g.profile_key(k), names(carrier, y));
                    }
                }
            }
            raw.outcome_grand = Some(to_json(outcome));
        }
        AnyModel::Sam(sm) => {
            raw.actions = sm.actions().names().to_vec();
            raw.successor = Some(successor(sm.successors()));
            let mut outcome: BTreeMap<String, BTreeMap<String, BTreeMap<String, Vec<String>>>> = BTreeMap::new();
            for a in 0..sm.agents().len() {
                for s in 0..sm.n_states() {
                    for (x, y) in sm.row(a, s).iter().enumerate() {
                        if !y.is_empty() {
                            outcome
                                .entry(sm.agents().name(a).to_string())
                                .or_default()
                                .entry(carrier.name(s).to_string())
                                .or_default()
                                .insert(sm.actions().name(x).to_string(), names(carrier, y));
                        }
                    }
                }
            }
            raw.outcome_agent = Some(to_json(outcome));
        }
        AnyModel::Snm(sn) => {
            raw.successor = Some(successor(sn.successors()));
            let mut nei: BTreeMap<String, BTreeMap<String, Sets>> = BTreeMap::new();
            for a in 0..sn.agents().len() {
                for s in 0..sn.n_states() {
                    let family = sn.neighborhood_agent(a, s);
                    if !family.is_empty() {
                        nei.entry(sn.agents().name(a).to_string())
                            .or_default()
                            .insert(carrier.name(s).to_string(), family_names(carrier, family));
                    }
                }
            }
            raw.neighborhood_agent = Some(to_json(nei));
        }
    }
    raw
}

fn payload<T: for<'de> Deserialize<'de> + Default>(field: &str, value: Option<Value>) -> Result<T> {
    match value {
        None => Ok(T::default()),
        Some(v) => serde_json::from_value(v).map_err(|e| Error::InvalidModel(format!("field `{field}`: {e}"))),
    }
}

fn forbid(field: &str, present: bool, kind: &str) -> Result<()> {
    if present {
        return Err(Error::InvalidModel(format!("field `{field}` does not belong to kind `{kind}`")));
    }
    Ok(())
}

fn parse_set(carrier: &Carrier, states: &[String]) -> Result<StateSet> {
    states.iter().map(|s| carrier.index_of(s)).collect()
}

fn parse_family(carrier: &Carrier, sets: &Sets) -> Result<Family> {
    sets.iter().map(|y| parse_set(carrier, y)).collect()
}

fn parse_successor(carrier: &Carrier, suc: Option<BTreeMap<String, Vec<String>>>) -> Result<Vec<StateSet>> {
    let mut out = vec![StateSet::new(); carrier.len()];
    for (s, ys) in suc.unwrap_or_default() {
        out[carrier.index_of(&s)?] = parse_set(carrier, &ys)?;
    }
    Ok(out)
}

fn from_raw(raw: Raw) -> Result<Document> {
    let agents = AgentUniverse::new(raw.agents)?;
    let mut carrier = Carrier::new(raw.states)?;
    for (s, atoms) in raw.labeling {
        let id = carrier.index_of(&s)?;
        carrier.set_label(id, atoms.into_iter().collect());
    }
    let kind = raw.kind.as_str();
    let allowed: &[&str] = match kind {
        "action" => &["availability", "outcome"],
        "neighborhood" => &["neighborhood"],
        "gam" => &["outcome_grand"],
        "sam" => &["successor", "outcome_agent"],
        "snm" => &["successor", "neighborhood_agent"],
        _ => &[],
    };
    let present = [
        ("successor", raw.successor.is_some()),
        ("availability", raw.availability.is_some()),
        ("outcome", raw.outcome.is_some()),
        ("neighborhood", raw.neighborhood.is_some()),
        ("outcome_grand", raw.outcome_grand.is_some()),
        ("outcome_agent", raw.outcome_agent.is_some()),
        ("neighborhood_agent", raw.neighborhood_agent.is_some()),
    ];
    for (field, here) in present {
        forbid(field, here && !allowed.contains(&field), kind)?;
    }
    let needs_actions = matches!(kind, "action" | "gam" | "sam");
    if !needs_actions {
        forbid("actions", !raw.actions.is_empty(), kind)?;
    }
    let actions = || ActionUniverse::new(raw.actions.clone());
    let model = match kind {
        "action" => {
            let mut am = ActionModel::new(agents, actions()?, carrier)?;
            let availability: BTreeMap<String, BTreeMap<String, Vec<String>>> =
                payload("availability", raw.availability)?;
            let outcome: BTreeMap<String, BTreeMap<String, BTreeMap<String, Vec<String>>>> =
                payload("outcome", raw.outcome)?;
            for (ck, rows) in availability {
                let c = am.agents().parse_coalition_key(&ck)?;
                for (s, keys) in rows {
                    let s = am.carrier().index_of(&s)?;
                    for key in keys {
                        let j = joint_index(&am, c, &key)?;
                        am.set_available(c, s, j, true);
                    }
                }
            }
            for (ck, rows) in outcome {
                let c = am.agents().parse_coalition_key(&ck)?;
                for (s, cells) in rows {
                    let s = am.carrier().index_of(&s)?;
                    for (key, ys) in cells {
                        let j = joint_index(&am, c, &key)?;
                        let y = parse_set(am.carrier(), &ys)?;
                        am.set_outcome(c, s, j, y);
                    }
                }
            }
            AnyModel::Action(am)
        }
        "neighborhood" => {
            let mut nm = NeighborhoodModel::new(agents, carrier);
            let nei: BTreeMap<String, BTreeMap<String, Sets>> = payload("neighborhood", raw.neighborhood)?;
            for (ck, rows) in nei {
                let c = nm.agents().parse_coalition_key(&ck)?;
                for (s, sets) in rows {
                    let s = nm.carrier().index_of(&s)?;
                    let family = parse_family(nm.carrier(), &sets)?;
                    nm.set_neighborhood(c, s, family)?;
                }
            }
            AnyModel::Neighborhood(nm)
        }
        "gam" => {
            let mut g = GrandFirstActionModel::new(agents, actions()?, carrier)?;
            let outcome: BTreeMap<String, BTreeMap<String, Vec<String>>> =
                payload("outcome_grand", raw.outcome_grand)?;
            for (s, cells) in outcome {
                let s = g.carrier().index_of(&s)?;
                for (key, ys) in cells {
                    let profile = JointAction::parse_key(&key, g.agents(), g.actions())?;
                    let y = parse_set(g.carrier(), &ys)?;
                    g.set_outcome_of(s, &profile, y)?;
                }
            }
            AnyModel::Gam(g)
        }
        "sam" => {
            let actions = actions()?;
            let suc = parse_successor(&carrier, raw.successor)?;
            let outcome: BTreeMap<String, BTreeMap<String, BTreeMap<String, Vec<String>>>> =
                payload("outcome_agent", raw.outcome_agent)?;
            let mut out = vec![vec![vec![StateSet::new(); actions.len()]; carrier.len()]; agents.len()];
            for (a, rows) in outcome {
                let a = agents.index_of(&a)?;
                for (s, cells) in rows {
                    let s = carrier.index_of(&s)?;
                    for (x, ys) in cells {
                        out[a][s][actions.index_of(&x)?] = parse_set(&carrier, &ys)?;
                    }
                }
            }
            AnyModel::Sam(SingleFirstActionModel::new(agents, actions, carrier, suc, out)?)
        }
        "snm" => {
            let suc = parse_successor(&carrier, raw.successor)?;
            let nei_raw: BTreeMap<String, BTreeMap<String, Sets>> = payload("neighborhood_agent", raw.neighborhood_agent)?;
            let mut nei = vec![vec![Family::new(); carrier.len()]; agents.len()];
            for (a, rows) in nei_raw {
                let a = agents.index_of(&a)?;
                for (s, sets) in rows {
                    let s = carrier.index_of(&s)?;
                    nei[a][s] = parse_family(&carrier, &sets)?;
                }
            }
            AnyModel::Snm(SingleFirstNeighborhoodModel::new(agents, carrier, suc, nei)?)
        }
        other => return Err(Error::InvalidModel(format!("unknown kind `{other}`"))),
    };
    Ok(Document { model, provenance: raw.provenance, focus_state: raw.focus_state, formula: raw.formula })
}

fn joint_index(am: &ActionModel, c: Coalition, key: &str) -> Result<usize> {
    let sigma = JointAction::parse_key(key, am.agents(), am.actions())?;
    if sigma.coalition() != c {
        return Err(Error::CoalitionMismatch);
    }
    Ok(sigma.index(am.actions().len()))
}
