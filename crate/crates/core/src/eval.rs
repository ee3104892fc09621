use std::collections::HashMap;

use crate::error::Result;
use crate::formula::Formula;
use crate::model::{AgentUniverse, Carrier, Coalition, StateId, StateSet};

/// A structure that can interpret the coalition modality.
pub(crate) trait Interpretation {
    fn agents(&self) -> &AgentUniverse;
    fn carrier(&self) -> &Carrier;
    /// Whether `C` can force the next state into `target` at `s`.
    fn forces(&self, c: Coalition, s: StateId, target: &StateSet) -> bool;
}

pub(crate) fn truth_set<I: Interpretation>(m: &I, f: &Formula) -> Result<StateSet> {
    f.check_agents(m.agents())?;
    Ok(go(m, f))
}

fn go<I: Interpretation>(m: &I, f: &Formula) -> StateSet {
    let n = m.carrier().len();
    match f {
        Formula::Top => StateSet::full(n),
        Formula::Atom(p) => m.carrier().extension(p),
        Formula::Not(g) => StateSet::full(n).difference(&go(m, g)),
        Formula::And(g, h) => go(m, g).intersection(&go(m, h)),
        Formula::Modal(c, g) => {
            let c = c.resolve(m.agents()).expect("agents checked");
            let target = go(m, g);
            (0..n).filter(|&s| m.forces(c, s, &target)).collect()
        }
    }
}

pub(crate) fn eval<I: Interpretation>(m: &I, s: StateId, f: &Formula) -> Result<bool> {
    m.carrier().check_state(s)?;
    Ok(truth_set(m, f)?.contains(s))
}

/// A batch of formulas with shared subformulas stored once, children
/// before parents, so one bottom-up pass evaluates the whole batch.
#[derive(Clone, Debug)]
pub(crate) struct FormulaDag {
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

#[derive(Clone, Debug)]
enum Node {
    Top,
    Atom(String),
    Not(usize),
    And(usize, usize),
    Modal(crate::formula::CoalitionExpr, usize),
}

impl FormulaDag {
    pub(crate) fn new(formulas: &[Formula]) -> Self {
        let mut dag = FormulaDag { nodes: Vec::new(), roots: Vec::new() };
        let mut index = HashMap::new();
        for f in formulas {
            let r = dag.add(f, &mut index);
            dag.roots.push(r);
        }
        dag
    }

    fn add<'f>(&mut self, f: &'f Formula, index: &mut HashMap<&'f Formula, usize>) -> usize {
        if let Some(&i) = index.get(f) {
            return i;
        }
        let node = match f {
            Formula::Top => Node::Top,
            Formula::Atom(p) => Node::Atom(p.clone()),
            Formula::Not(g) => Node::Not(self.add(g, index)),
            Formula::And(g, h) => {
                let g = self.add(g, index);
                Node::And(g, self.add(h, index))
            }
            Formula::Modal(c, g) => Node::Modal(c.clone(), self.add(g, index)),
        };
        self.nodes.push(node);
        index.insert(f, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub(crate) fn len(&self) -> usize {
        self.roots.len()
    }

    /// Truth sets of the batch's formulas, in input order.
    pub(crate) fn truth_sets<I: Interpretation>(&self, m: &I) -> Result<Vec<StateSet>> {
        let n = m.carrier().len();
        let mut vals: Vec<StateSet> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let t = match node {
                Node::Top => StateSet::full(n),
                Node::Atom(p) => m.carrier().extension(p),
                Node::Not(g) => StateSet::full(n).difference(&vals[*g]),
                Node::And(g, h) => vals[*g].intersection(&vals[*h]),
                Node::Modal(c, g) => {
                    let c = c.resolve(m.agents())?;
                    (0..n).filter(|&s| m.forces(c, s, &vals[*g])).collect()
                }
            };
            vals.push(t);
        }
        Ok(self.roots.iter().map(|&r| vals[r].clone()).collect())
    }
}
