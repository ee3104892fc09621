//! Model generators, brute-force oracles and the suite runner.

mod bank;
mod gen;
mod suites;

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub use bank::{axiom_bank, bank_up_to_depth, fillers, instances, BankEntry};
pub use gen::{
    fixed_carrier, for_each_local_table, generate, signature_of, GenSpec, Kind, Mode, ModelStream,
    Odometer, MAX_EXHAUSTIVE_PER_SHAPE, MAX_GEN_ACTIONS, MAX_GEN_AGENTS, MAX_GEN_STATES,
};
pub use suites::{sam_equivalence_local, LocalReport};
use suites::SUITES;

use crate::error::{Error, Result};
use crate::eval::FormulaDag;
use crate::formula::Formula;
use crate::gam;
use crate::io::{AnyModel, Document};
use crate::model::{ActionModel, NeighborhoodModel, StateId, StateSet};

/// A model ready for evaluation under its own semantics.
#[derive(Clone, Debug)]
pub enum Semantics {
    Action(ActionModel),
    Neighborhood(NeighborhoodModel),
}

impl Semantics {
    pub fn of(model: &AnyModel) -> Self {
        match model {
            AnyModel::Action(m) => Semantics::Action(m.clone()),
            AnyModel::Neighborhood(m) => Semantics::Neighborhood(m.clone()),
            AnyModel::Gam(g) => Semantics::Action(gam::to_action_model(g)),
            AnyModel::Sam(m) => Semantics::Action(m.to_action_model()),
            AnyModel::Snm(m) => Semantics::Neighborhood(m.to_neighborhood_model()),
        }
    }

    pub fn n_states(&self) -> usize {
        match self {
            Semantics::Action(m) => m.n_states(),
            Semantics::Neighborhood(m) => m.n_states(),
        }
    }

    /// Truth sets of every formula in `formulas`, sharing subformulas.
    pub fn truth_sets(&self, formulas: &[Formula]) -> Result<Vec<StateSet>> {
        self.truth_batch(&FormulaBatch::new(formulas))
    }

    pub fn truth_batch(&self, batch: &FormulaBatch) -> Result<Vec<StateSet>> {
        match self {
            Semantics::Action(m) => batch.0.truth_sets(m),
            Semantics::Neighborhood(m) => batch.0.truth_sets(m),
        }
    }

    pub fn holds(&self, s: StateId, f: &Formula) -> Result<bool> {
        self.carrier().check_state(s)?;
        Ok(self.truth_sets(std::slice::from_ref(f))?[0].contains(s))
    }

    fn carrier(&self) -> &crate::model::Carrier {
        match self {
            Semantics::Action(m) => m.carrier(),
            Semantics::Neighborhood(m) => m.carrier(),
        }
    }
}

/// Formulas prepared for repeated evaluation over many models.
#[derive(Clone, Debug)]
pub struct FormulaBatch(FormulaDag);

impl FormulaBatch {
    pub fn new(formulas: &[Formula]) -> Self {
        FormulaBatch(FormulaDag::new(formulas))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 0
    }
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

/// Result of one named check within a suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub cases: u64,
    /// Number of those that failed.
    #[serde(skip_serializing_if = "is_zero")]
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// The first failing model, as a model file.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub spec: GenSpec,
    pub passed: bool,
    /// Models drawn from the generator.
    pub models: u64,
    pub checks: Vec<CheckOutcome>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Accumulates check outcomes, keeping the first failure of each.
#[derive(Default)]
pub(crate) struct Checks {
    list: Vec<CheckOutcome>,
    index: HashMap<String, usize>,
    pub(crate) models: u64,
}

impl Checks {
    fn slot(&mut self, name: &str) -> &mut CheckOutcome {
        let i = match self.index.get(name) {
            Some(&i) => i,
            None => {
                self.list.push(CheckOutcome {
                    name: name.to_string(),
                    passed: true,
                    cases: 0,
                    failed: 0,
                    detail: None,
                    counterexample: None,
                });
                self.index.insert(name.to_string(), self.list.len() - 1);
                self.list.len() - 1
            }
        };
        &mut self.list[i]
    }

    /// Records one case. `witness` is only built for the first failure.
    pub(crate) fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> (Document, String)) {
        let slot = self.slot(name);
        slot.cases += 1;
        slot.failed += u64::from(!ok);
        if !ok && slot.passed {
            let (doc, detail) = witness();
            slot.passed = false;
            slot.detail = Some(detail);
            slot.counterexample = Some(doc.to_value());
        }
    }

    pub(crate) fn absorb(&mut self, prefix: &str, other: SuiteReport) {
        self.models += other.models;
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.index.insert(c.name.clone(), self.list.len());
            self.list.push(c);
        }
    }

    fn finish(self, suite: &str, spec: GenSpec, start: Instant) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            spec,
            passed: self.list.iter().all(|c| c.passed),
            models: self.models,
            checks: self.list,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Names of the registered suites, in the order `all` runs them.
pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(n, _)| *n)
}

/// A countermodel file: the model, the refuted state and formula.
pub fn countermodel_document(model: &AnyModel, s: StateId, f: &Formula) -> Document {
    let mut doc = Document::new(model.clone());
    doc.focus_state = Some(model.carrier().name(s).to_string());
    doc.formula = Some(f.to_string());
    doc
}

/// Runs a registered suite (or `all`) over streams drawn with the bounds
/// and mode of `spec`. Suites pick the model kinds they need.
pub fn run_suite(name: &str, spec: &GenSpec) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Checks::default();
    if name == "all" {
        for (suite, _) in SUITES {
            checks.absorb(suite, run_suite(suite, spec)?);
        }
    } else {
        let run = SUITES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| *f)
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
        run(spec, &mut checks)?;
    }
    Ok(checks.finish(name, *spec, start))
}

/// The first pointed model in the stream of `spec` where `f` is false.
/// Models whose agents do not cover the formula's coalitions are skipped.
pub fn find_countermodel(f: &Formula, spec: &GenSpec) -> Result<Option<(AnyModel, StateId)>> {
    for model in generate(*spec)? {
        if f.check_agents(model.agents()).is_err() {
            continue;
        }
        let sem = Semantics::of(&model);
        let truth = sem.truth_sets(std::slice::from_ref(f))?.remove(0);
        if let Some(s) = (0..sem.n_states()).find(|&s| !truth.contains(s)) {
            return Ok(Some((model, s)));
        }
    }
    Ok(None)
}
