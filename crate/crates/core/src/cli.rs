//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success (or "true"), 1 a negative answer ("false", "no",
//! a failing suite), 2 malformed input or any other error, 3 a bounds
//! violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::action_semantics::{actual_effectivity, alpha_effectivity};
use crate::clear_tree::{is_clear_gam, is_clear_snm, is_treelike_gam, is_treelike_snm};
use crate::error::{Error, Result};
use crate::formula::parse_in;
use crate::gam::{classify, classify_states, GrandFirstActionModel};
use crate::harness::{run_suite, GenSpec, Kind, Semantics, MAX_GEN_ACTIONS, MAX_GEN_AGENTS, MAX_GEN_STATES};
use crate::io::{AnyModel, Document};
use crate::model::{ActionModel, Carrier, Coalition, NeighborhoodModel, PropertySignature, StateSet};
use crate::neighborhood_semantics::{first_mismatch, superset_closure};
use crate::represent::{sam_to_snm, snm_to_sam, unravel};
use crate::sam_snm::{
    classify_snm, sam_to_gam, snm_deterministic_at, snm_independent_at, snm_serial_at, SingleFirstActionModel,
};

#[derive(Parser, Debug)]
#[command(name = "coalition", version, about = "Coalition logic models: evaluate, classify, transform, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula at a state; prints true or false.
    Eval { model: PathBuf, state: String, formula: String },
    /// Kind, property signature, clearness and tree-likeness as JSON.
    Classify { model: PathBuf },
    /// Dump a derived table for one coalition.
    Derive {
        model: PathBuf,
        /// Coalition as `a,b`, `{a,b}`, `{}` or `AG`.
        #[arg(long, allow_hyphen_values = true)]
        coalition: String,
        #[arg(long, value_enum, default_value_t = What::Outcome)]
        what: What,
    },
    /// Convert a model to another kind; prints a model file.
    Transform {
        model: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Unravel a grand-coalition-first model from a state.
    Unravel {
        model: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        depth: usize,
    },
    /// Check whether a neighborhood model represents an action model.
    Represent {
        a: PathBuf,
        b: PathBuf,
        /// Compare against alpha effectivity instead of actual effectivity.
        #[arg(long)]
        alpha: bool,
    },
    /// Run a registered suite (or `all`); prints the report as JSON.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Enumerate every model up to the bounds instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Defaults to 2 when exhaustive, 4 otherwise.
        #[arg(long)]
        states: Option<usize>,
        #[arg(long, default_value_t = MAX_GEN_AGENTS)]
        agents: usize,
        #[arg(long, default_value_t = MAX_GEN_ACTIONS)]
        actions: usize,
        /// Keep only models in this class, e.g. `SI`.
        #[arg(long)]
        filter: Option<PropertySignature>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Outcome,
    Availability,
    Neighborhood,
    Successor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Snm,
    Sam,
    Gam,
    Alpha,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BoundsExceeded(_) | Error::TooLarge(_) => 3,
                _ => 2,
            }
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn load(path: &PathBuf) -> Result<AnyModel> {
    Ok(Document::load(path)?.model)
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::Io(e.to_string()))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Eval { model, state, formula } => {
            let model = load(&model)?;
            let s = model.carrier().index_of(&state)?;
            let f = parse_in(&formula, model.agents())?;
            let holds = Semantics::of(&model).holds(s, &f)?;
            emit(out, holds)?;
            Ok(if holds { 0 } else { 1 })
        }
        Command::Classify { model } => {
            let model = load(&model)?;
            emit(out, serde_json::to_string_pretty(&classification(&model)).expect("json"))?;
            Ok(0)
        }
        Command::Derive { model, coalition, what } => {
            let model = load(&model)?;
            let c = model.agents().parse_coalition_key(&coalition)?;
            emit(out, serde_json::to_string_pretty(&derive(&model, c, what)?).expect("json"))?;
            Ok(0)
        }
        Command::Transform { model, to } => {
            let model = load(&model)?;
            let from = model.kind();
            let result = transform(model, to)?;
            let doc = Document::new(result).with_provenance(format!("transformed from a {from} model"));
            emit(out, doc.to_json())?;
            Ok(0)
        }
        Command::Unravel { model, from, depth } => {
            let model = load(&model)?;
            let g = as_gam(model)?;
            let s = g.carrier().index_of(&from)?;
            let u = unravel(&g, s, depth)?;
            let doc = Document::new(u).with_provenance(format!("unraveled from {from} to depth {depth}"));
            emit(out, doc.to_json())?;
            Ok(0)
        }
        Command::Represent { a, b, alpha } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let (nm, am) = match (neighborhood_side(&a), action_side(&b)) {
                (Some(nm), Some(am)) => (nm, am),
                _ => match (neighborhood_side(&b), action_side(&a)) {
                    (Some(nm), Some(am)) => (nm, am),
                    _ => {
                        return Err(Error::InvalidModel(
                            "represent needs one neighborhood model and one action model".into(),
                        ))
                    }
                },
            };
            match first_mismatch(&nm, &am, alpha)? {
                None => {
                    emit(out, if alpha { "alpha-represents" } else { "z-represents" })?;
                    Ok(0)
                }
                Some(m) => {
                    emit(out, format!("no: {}", m.describe(am.agents(), am.carrier())))?;
                    Ok(1)
                }
            }
        }
        Command::Verify { suite, seed, count, exhaustive, states, agents, actions, filter } => {
            let mut spec = if exhaustive {
                GenSpec::exhaustive(Kind::Gam, states.unwrap_or(2), agents, actions)
            } else {
                let mut spec = GenSpec::random(Kind::Gam, seed, count);
                spec.n_states = states.unwrap_or(MAX_GEN_STATES);
                spec.n_agents = agents;
                spec.n_actions = actions;
                spec
            };
            spec.signature_filter = filter;
            spec.check_bounds()?;
            let report = run_suite(&suite, &spec)?;
            emit(out, report.to_json())?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn classification(model: &AnyModel) -> Value {
    let (signature, clear, tree): (PropertySignature, Option<bool>, Option<(bool, Option<usize>)>) = match model {
        AnyModel::Gam(g) => (classify(g), Some(is_clear_gam(g)), Some(is_treelike_gam(g))),
        AnyModel::Sam(m) => {
            let g = sam_to_gam(m);
            (classify(&g), Some(is_clear_gam(&g)), Some(is_treelike_gam(&g)))
        }
        AnyModel::Snm(m) => (classify_snm(m), Some(is_clear_snm(m)), Some(is_treelike_snm(m))),
        AnyModel::Action(am) => match GrandFirstActionModel::from_action_model(am) {
            Ok(g) => (classify(&g), Some(is_clear_gam(&g)), Some(is_treelike_gam(&g))),
            Err(_) => (classify_states(am, 0..am.n_states()), None, None),
        },
        AnyModel::Neighborhood(nm) => {
            let states = 0..nm.n_states();
            let signature = PropertySignature::new(
                states.clone().all(|s| snm_serial_at(nm, s)),
                states.clone().all(|s| snm_independent_at(nm, s)),
                states.clone().all(|s| snm_deterministic_at(nm, s)),
            );
            (signature, None, None)
        }
    };
    let carrier = model.carrier();
    json!({
        "kind": model.kind(),
        "signature": signature.to_string(),
        "serial": signature.serial,
        "independent": signature.independent,
        "deterministic": signature.deterministic,
        "clear": clear,
        "tree_like": tree.map(|t| t.0),
        "root": tree.and_then(|t| t.1).map(|r| carrier.name(r).to_string()),
    })
}

fn names(carrier: &Carrier, set: &StateSet) -> Value {
    Value::from(set.iter().map(|t| carrier.name(t).to_string()).collect::<Vec<_>>())
}

fn derive(model: &AnyModel, c: Coalition, what: What) -> Result<Value> {
    let carrier = model.carrier();
    let mut table = Map::new();
    match Semantics::of(model) {
        Semantics::Action(am) => {
            let grand = am.agents().grand();
            for s in 0..am.n_states() {
                let row = match what {
                    What::Outcome => Value::Object(
                        (0..am.space().count(c))
                            .filter(|&j| !am.outcome(c, s, j).is_empty())
                            .map(|j| (am.joint_key(c, j), names(carrier, am.outcome(c, s, j))))
                            .collect(),
                    ),
                    What::Availability => Value::from(am.available(c, s).map(|j| am.joint_key(c, j)).collect::<Vec<_>>()),
                    What::Neighborhood => {
                        let ae = actual_effectivity(&am);
                        Value::from(ae.get(c, s).iter().map(|y| names(carrier, y)).collect::<Vec<_>>())
                    }
                    What::Successor => {
                        let suc = (0..am.space().count(grand)).fold(StateSet::new(), |acc, k| acc.union(am.outcome(grand, s, k)));
                        names(carrier, &suc)
                    }
                };
                table.insert(carrier.name(s).to_string(), row);
            }
        }
        Semantics::Neighborhood(nm) => {
            let grand = nm.agents().grand();
            for s in 0..nm.n_states() {
                let row = match what {
                    What::Neighborhood => {
                        Value::from(nm.neighborhood(c, s).iter().map(|y| names(carrier, y)).collect::<Vec<_>>())
                    }
                    What::Successor => {
                        let suc = nm.neighborhood(grand, s).iter().fold(StateSet::new(), |acc, y| acc.union(y));
                        names(carrier, &suc)
                    }
                    What::Outcome | What::Availability => {
                        return Err(Error::InvalidModel(format!("a {} model has no action tables", model.kind())))
                    }
                };
                table.insert(carrier.name(s).to_string(), row);
            }
        }
    }
    Ok(json!({ "coalition": model.agents().coalition_key(c), "table": table }))
}

fn as_gam(model: AnyModel) -> Result<GrandFirstActionModel> {
    match model {
        AnyModel::Gam(g) => Ok(g),
        AnyModel::Sam(m) => Ok(sam_to_gam(&m)),
        AnyModel::Snm(n) => Ok(sam_to_gam(&snm_to_sam(&n)?)),
        AnyModel::Action(am) => GrandFirstActionModel::from_action_model(&am),
        AnyModel::Neighborhood(_) => Err(Error::InvalidModel("a plain neighborhood model has no action tables".into())),
    }
}

fn transform(model: AnyModel, to: Target) -> Result<AnyModel> {
    Ok(match (to, model) {
        (Target::Alpha, AnyModel::Neighborhood(nm)) => AnyModel::Neighborhood(superset_closure(&nm)?),
        (Target::Alpha, AnyModel::Snm(n)) => AnyModel::Neighborhood(superset_closure(&n.to_neighborhood_model())?),
        (Target::Alpha, model) => {
            let Semantics::Action(am) = Semantics::of(&model) else { unreachable!("action kinds") };
            AnyModel::Neighborhood(NeighborhoodModel::from_effectivity(&alpha_effectivity(&am)?, am.carrier().clone())?)
        }
        (Target::Snm, AnyModel::Snm(n)) => AnyModel::Snm(n),
        (Target::Snm, AnyModel::Sam(m)) => AnyModel::Snm(sam_to_snm(&m)),
        (Target::Snm, model) => AnyModel::Snm(sam_to_snm(&SingleFirstActionModel::from_gam(&as_gam(model)?)?)),
        (Target::Sam, AnyModel::Sam(m)) => AnyModel::Sam(m),
        (Target::Sam, AnyModel::Snm(n)) => AnyModel::Sam(snm_to_sam(&n)?),
        (Target::Sam, model) => AnyModel::Sam(SingleFirstActionModel::from_gam(&as_gam(model)?)?),
        (Target::Gam, model) => AnyModel::Gam(as_gam(model)?),
    })
}

fn neighborhood_side(model: &AnyModel) -> Option<NeighborhoodModel> {
    match model {
        AnyModel::Neighborhood(nm) => Some(nm.clone()),
        AnyModel::Snm(n) => Some(n.to_neighborhood_model()),
        _ => None,
    }
}

fn action_side(model: &AnyModel) -> Option<ActionModel> {
    match Semantics::of(model) {
        Semantics::Action(am) => Some(am),
        Semantics::Neighborhood(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], files: &[(&str, AnyModel)]) -> (i32, String, String) {
        static NEXT: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);
        let n = NEXT.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let dir = std::env::temp_dir().join(format!("coalition-cli-{}-{n}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut argv: Vec<OsString> = vec!["coalition".into()];
        for a in args {
            match files.iter().find(|(n, _)| n == a) {
                Some((n, m)) => {
                    let p = dir.join(format!("{n}.json"));
                    Document::new(m.clone()).save(&p).unwrap();
                    argv.push(p.into());
                }
                None => argv.push(a.into()),
            }
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_exit_codes() {
        let m1 = || ("m1", crate::fixtures::m1().into());
        assert_eq!(run(&["eval", "m1", "s0", "[AG]p"], &[m1()]).0, 0);
        assert_eq!(run(&["eval", "m1", "s1", "q"], &[m1()]).0, 1);
        assert_eq!(run(&["eval", "m1", "s9", "q"], &[m1()]).0, 2);
        assert_eq!(run(&["eval", "m1", "s0", "[{z}]q"], &[m1()]).0, 2);
        assert_eq!(run(&["eval", "m1", "s0", "[{a}"], &[m1()]).0, 2);
    }

    #[test]
    fn classify_lock() {
        let (code, out, _) = run(&["classify", "lock"], &[("lock", crate::fixtures::lock().into())]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "gam");
        assert_eq!(v["clear"], true);
        assert_eq!(v["tree_like"], false);
        assert_eq!(v["root"], Value::Null);
    }

    #[test]
    fn derive_tables() {
        let files = [("m1", crate::fixtures::m1().into())];
        let (_, out, _) = run(&["derive", "m1", "--coalition", "a", "--what", "outcome"], &files);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["table"]["s0"]["a:a1"], json!(["s1", "s2"]));
        let (_, out, _) = run(&["derive", "m1", "--coalition", "{}", "--what", "successor"], &files);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["table"]["s0"], json!(["s1", "s2"]));
        let files = [("n1", crate::fixtures::n1().into())];
        assert_eq!(run(&["derive", "n1", "--coalition", "a", "--what", "outcome"], &files).0, 2);
    }

    #[test]
    fn transform_then_represent() {
        let lock: AnyModel = crate::fixtures::lock_sam().into();
        let (code, out, _) = run(&["transform", "lock", "--to", "snm"], &[("lock", lock.clone())]);
        assert_eq!(code, 0);
        let snm = Document::from_json(&out).unwrap().model;
        let (code, out, _) = run(&["represent", "snm", "lock"], &[("snm", snm), ("lock", lock.clone())]);
        assert_eq!((code, out.trim()), (0, "z-represents"));
        let m1: AnyModel = crate::fixtures::m1().into();
        assert_eq!(run(&["transform", "m1", "--to", "sam"], &[("m1", m1)]).0, 2);
    }

    #[test]
    fn unravel_and_bounds() {
        let files = [("m1", crate::fixtures::m1().into())];
        let (code, out, _) = run(&["unravel", "m1", "--from", "s0", "--depth", "1"], &files);
        assert_eq!(code, 0);
        let AnyModel::Gam(u) = Document::from_json(&out).unwrap().model else { panic!() };
        assert_eq!(u.n_states(), 5);
        assert_eq!(run(&["verify", "gam-facts", "--exhaustive", "--states", "5"], &[]).0, 3);
        assert_eq!(run(&["verify", "nope", "--count", "1"], &[]).0, 2);
    }
}
