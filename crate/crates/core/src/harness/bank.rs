//! The fixed formula bank: every axiom instance over a given agent
//! universe with fillers drawn from six small formulas.

use crate::formula::{instantiate_axiom_in, AxiomSchema, CoalitionExpr, Formula};
use crate::model::AgentUniverse;

/// `p`, `q`, `p ∧ q`, `¬p`, `[∅]p`, `[AG]p`.
pub fn fillers() -> Vec<Formula> {
    let p = Formula::atom("p");
    let q = Formula::atom("q");
    vec![
        p.clone(),
        q.clone(),
        Formula::and(p.clone(), q),
        Formula::not(p.clone()),
        Formula::modal(CoalitionExpr::empty(), p.clone()),
        Formula::modal(CoalitionExpr::Grand, p),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BankEntry {
    pub schema: AxiomSchema,
    pub formula: Formula,
}

/// All instances of `schema` over `agents`: every coalition (or legal
/// pair of coalitions) and every filler (or ordered pair of fillers).
pub fn instances(schema: AxiomSchema, agents: &AgentUniverse) -> Vec<Formula> {
    let coalitions: Vec<CoalitionExpr> =
        agents.coalitions().map(|c| CoalitionExpr::from_coalition(c, agents)).collect();
    let fillers = fillers();
    let (nc, nf) = schema.arity();
    let coalition_tuples: Vec<Vec<CoalitionExpr>> = match nc {
        1 => coalitions.iter().map(|c| vec![c.clone()]).collect(),
        _ => coalitions
            .iter()
            .flat_map(|c| coalitions.iter().map(move |d| vec![c.clone(), d.clone()]))
            .collect(),
    };
    let filler_tuples: Vec<Vec<Formula>> = match nf {
        0 => vec![vec![]],
        1 => fillers.iter().map(|f| vec![f.clone()]).collect(),
        _ => fillers.iter().flat_map(|f| fillers.iter().map(move |g| vec![f.clone(), g.clone()])).collect(),
    };
    let mut out = Vec::new();
    for cs in &coalition_tuples {
        for fs in &filler_tuples {
            // Illegal coalition pairs are skipped, not reported.
            if let Ok(f) = instantiate_axiom_in(schema, cs, fs, agents) {
                out.push(f);
            }
        }
    }
    out
}

/// The whole bank over `agents`, grouped by schema in declaration order.
pub fn axiom_bank(agents: &AgentUniverse) -> Vec<BankEntry> {
    AxiomSchema::ALL
        .iter()
        .flat_map(|&schema| instances(schema, agents).into_iter().map(move |formula| BankEntry { schema, formula }))
        .collect()
}

/// The bank formulas of modal depth at most `depth`.
pub fn bank_up_to_depth(agents: &AgentUniverse, depth: usize) -> Vec<Formula> {
    axiom_bank(agents).into_iter().map(|e| e.formula).filter(|f| f.modal_depth() <= depth).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bank_sizes_over_two_agents() {
        let agents = AgentUniverse::new(["a", "b"]).unwrap();
        let count = |s| instances(s, &agents).len();
        assert_eq!(count(AxiomSchema::Naaa), 4);
        assert_eq!(count(AxiomSchema::Ser), 4);
        assert_eq!(count(AxiomSchema::Mg), 4 * 36);
        // Subset pairs over two agents: 9.
        assert_eq!(count(AxiomSchema::Mc), 9 * 6);
        // Disjoint pairs over two agents: 9.
        assert_eq!(count(AxiomSchema::Ia), 9 * 36);
        assert_eq!(count(AxiomSchema::Det), 4 * 36);
        assert!(axiom_bank(&agents).iter().all(|e| e.formula.modal_depth() <= 2));
    }

    #[test]
    fn one_agent_bank_stays_in_vocabulary() {
        let agents = AgentUniverse::new(["a"]).unwrap();
        assert!(axiom_bank(&agents).iter().all(|e| e.formula.check_agents(&agents).is_ok()));
    }
}
