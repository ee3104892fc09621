use std::fmt;
use std::str::FromStr;

use super::{CoalitionExpr, Formula};
use crate::error::{Error, Result};
use crate::model::AgentUniverse;

/// The finite axiom schemas. Propositional tautologies are not enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomSchema {
    /// `¬[C]⊥`
    Naaa,
    /// `[∅](φ→ψ) → ([C]φ → [C]ψ)`
    Mg,
    /// `[C]φ → [D]φ` for `C ⊆ D`
    Mc,
    /// `[C]⊤`
    Ser,
    /// `([C]φ ∧ [D]ψ) → [C∪D](φ ∧ ψ)` for disjoint `C`, `D`
    Ia,
    /// `[C](φ∨ψ) → ([C]φ ∨ [AG]ψ)`
    Det,
}

impl AxiomSchema {
    pub const ALL: [AxiomSchema; 6] = [
        AxiomSchema::Naaa,
        AxiomSchema::Mg,
        AxiomSchema::Mc,
        AxiomSchema::Ser,
        AxiomSchema::Ia,
        AxiomSchema::Det,
    ];

    /// Number of coalitions and fillers the schema takes.
    pub fn arity(self) -> (usize, usize) {
        match self {
            AxiomSchema::Naaa | AxiomSchema::Ser => (1, 0),
            AxiomSchema::Mg | AxiomSchema::Det => (1, 2),
            AxiomSchema::Mc => (2, 1),
            AxiomSchema::Ia => (2, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxiomSchema::Naaa => "A-NAAA",
            AxiomSchema::Mg => "A-MG",
            AxiomSchema::Mc => "A-MC",
            AxiomSchema::Ser => "A-Ser",
            AxiomSchema::Ia => "A-IA",
            AxiomSchema::Det => "A-Det",
        }
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSchema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.strip_prefix("a-").unwrap_or(&key);
        AxiomSchema::ALL
            .into_iter()
            .find(|a| a.name()[2..].eq_ignore_ascii_case(key))
            .ok_or_else(|| Error::InvalidModel(format!("unknown axiom schema `{s}`")))
    }
}

fn union(c: &CoalitionExpr, d: &CoalitionExpr) -> CoalitionExpr {
    match (c, d) {
        (CoalitionExpr::Agents(x), CoalitionExpr::Agents(y)) => {
            CoalitionExpr::Agents(x.union(y).cloned().collect())
        }
        _ => CoalitionExpr::Grand,
    }
}

/// `C ⊆ D`, judged syntactically. Without a universe, `AG ⊆ D` only holds
/// for `D = AG`.
fn subset(c: &CoalitionExpr, d: &CoalitionExpr) -> bool {
    match (c, d) {
        (_, CoalitionExpr::Grand) => true,
        (CoalitionExpr::Agents(x), CoalitionExpr::Agents(y)) => x.is_subset(y),
        (CoalitionExpr::Grand, CoalitionExpr::Agents(_)) => false,
    }
}

/// `C ∩ D = ∅`, judged syntactically. `AG` is only disjoint from `{}`.
fn disjoint(c: &CoalitionExpr, d: &CoalitionExpr) -> bool {
    match (c, d) {
        (CoalitionExpr::Agents(x), CoalitionExpr::Agents(y)) => x.is_disjoint(y),
        (CoalitionExpr::Grand, CoalitionExpr::Agents(x))
        | (CoalitionExpr::Agents(x), CoalitionExpr::Grand) => x.is_empty(),
        (CoalitionExpr::Grand, CoalitionExpr::Grand) => false,
    }
}

/// Builds an instance of `schema`.
///
/// `AG` is treated symbolically here; use [`instantiate_axiom_in`] to judge
/// side conditions against a concrete agent universe.
pub fn instantiate_axiom(
    schema: AxiomSchema,
    coalitions: &[CoalitionExpr],
    fillers: &[Formula],
) -> Result<Formula> {
    let (nc, nf) = schema.arity();
    if coalitions.len() != nc || fillers.len() != nf {
        return Err(Error::ArityMismatch {
            expected: format!("{nc} coalitions and {nf} fillers"),
            got: format!("{} coalitions and {} fillers", coalitions.len(), fillers.len()),
        });
    }
    let m = |c: &CoalitionExpr, f: Formula| Formula::modal(c.clone(), f);
    let f = |i: usize| fillers[i].clone();
    Ok(match schema {
        AxiomSchema::Naaa => Formula::not(m(&coalitions[0], Formula::bot())),
        AxiomSchema::Mg => {
            let c = &coalitions[0];
            Formula::implies(
                m(&CoalitionExpr::empty(), Formula::implies(f(0), f(1))),
                Formula::implies(m(c, f(0)), m(c, f(1))),
            )
        }
        AxiomSchema::Mc => {
            let (c, d) = (&coalitions[0], &coalitions[1]);
            if !subset(c, d) {
                return Err(Error::SideConditionViolated(format!("{c} is not a subset of {d}")));
            }
            Formula::implies(m(c, f(0)), m(d, f(0)))
        }
        AxiomSchema::Ser => m(&coalitions[0], Formula::Top),
        AxiomSchema::Ia => {
            let (c, d) = (&coalitions[0], &coalitions[1]);
            if !disjoint(c, d) {
                return Err(Error::SideConditionViolated(format!("{c} and {d} overlap")));
            }
            Formula::implies(
                Formula::and(m(c, f(0)), m(d, f(1))),
                m(&union(c, d), Formula::and(f(0), f(1))),
            )
        }
        AxiomSchema::Det => {
            let c = &coalitions[0];
            Formula::implies(
                m(c, Formula::or(f(0), f(1))),
                Formula::or(m(c, f(0)), m(&CoalitionExpr::Grand, f(1))),
            )
        }
    })
}

/// Like [`instantiate_axiom`], but resolves every coalition (including `AG`)
/// against `agents` first, so side conditions are exact.
pub fn instantiate_axiom_in(
    schema: AxiomSchema,
    coalitions: &[CoalitionExpr],
    fillers: &[Formula],
    agents: &AgentUniverse,
) -> Result<Formula> {
    let mut resolved = Vec::with_capacity(coalitions.len());
    for c in coalitions {
        let r = c.resolve(agents)?;
        resolved.push(if r == agents.grand() && *c == CoalitionExpr::Grand {
            CoalitionExpr::Grand
        } else {
            CoalitionExpr::from_coalition(r, agents)
        });
    }
    if let [c, d] = resolved.as_slice() {
        let (rc, rd) = (c.resolve(agents)?, d.resolve(agents)?);
        match schema {
            AxiomSchema::Mc if !rc.is_subset(rd) => {
                return Err(Error::SideConditionViolated(format!("{c} is not a subset of {d}")))
            }
            AxiomSchema::Ia if !rc.is_disjoint(rd) => {
                return Err(Error::SideConditionViolated(format!("{c} and {d} overlap")))
            }
            _ => {}
        }
        // Exact check passed; rewrite AG to its members so the syntactic
        // check cannot reject a legal instance.
        let exact = [CoalitionExpr::from_coalition(rc, agents), CoalitionExpr::from_coalition(rd, agents)];
        let f = instantiate_axiom(schema, &exact, fillers)?;
        return Ok(f);
    }
    instantiate_axiom(schema, &resolved, fillers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn c(names: &[&str]) -> CoalitionExpr {
        CoalitionExpr::of(names.iter().copied())
    }

    #[test]
    fn schema_examples() {
        let f = instantiate_axiom(AxiomSchema::Ser, &[c(&["a"])], &[]).unwrap();
        assert_eq!(f, parse("[{a}]T").unwrap());
        assert_eq!(f.to_string(), "[{a}]T");
        let f = instantiate_axiom(AxiomSchema::Naaa, &[c(&[])], &[]).unwrap();
        assert_eq!(f, parse("~[{}]F").unwrap());
        assert_eq!(f.to_string(), "~[{}]F");
        let pq = [Formula::atom("p"), Formula::atom("q")];
        let f = instantiate_axiom(AxiomSchema::Ia, &[c(&["a"]), c(&["b"])], &pq).unwrap();
        assert_eq!(f, parse("([{a}]p & [{b}]q) -> [{a,b}](p & q)").unwrap());
        let f = instantiate_axiom(AxiomSchema::Det, &[c(&["a"])], &pq).unwrap();
        assert_eq!(f, parse("[{a}](p | q) -> ([{a}]p | [AG]q)").unwrap());
        let f = instantiate_axiom(AxiomSchema::Mg, &[c(&["a"])], &pq).unwrap();
        assert_eq!(f, parse("[{}](p -> q) -> ([{a}]p -> [{a}]q)").unwrap());
    }

    #[test]
    fn side_conditions() {
        let p = [Formula::atom("p")];
        assert!(instantiate_axiom(AxiomSchema::Mc, &[c(&["a"]), c(&["a", "b"])], &p).is_ok());
        assert!(matches!(
            instantiate_axiom(AxiomSchema::Mc, &[c(&["a", "b"]), c(&["a"])], &p),
            Err(Error::SideConditionViolated(_))
        ));
        let pq = [Formula::atom("p"), Formula::atom("q")];
        assert!(matches!(
            instantiate_axiom(AxiomSchema::Ia, &[c(&["a"]), c(&["a", "b"])], &pq),
            Err(Error::SideConditionViolated(_))
        ));
        assert!(matches!(
            instantiate_axiom(AxiomSchema::Ser, &[], &[]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn grand_coalition_side_conditions_use_the_universe() {
        let agents = AgentUniverse::new(["a", "b"]).unwrap();
        let p = [Formula::atom("p")];
        let g = CoalitionExpr::Grand;
        assert!(instantiate_axiom(AxiomSchema::Mc, &[g.clone(), c(&["a", "b"])], &p).is_err());
        let f = instantiate_axiom_in(AxiomSchema::Mc, &[g.clone(), c(&["b", "a"])], &p, &agents).unwrap();
        assert_eq!(f, parse("[{a,b}]p -> [{a,b}]p").unwrap());
        let pq = [Formula::atom("p"), Formula::atom("q")];
        assert!(instantiate_axiom_in(AxiomSchema::Ia, &[g, c(&[])], &pq, &agents).is_ok());
        assert!(matches!(
            instantiate_axiom_in(AxiomSchema::Ser, &[c(&["z"])], &[], &agents),
            Err(Error::UnknownAgent(_))
        ));
    }

    #[test]
    fn modal_depth_bounds() {
        let fillers = [Formula::atom("p"), parse("[AG]q").unwrap()];
        for schema in AxiomSchema::ALL {
            let (nc, nf) = schema.arity();
            let cs = if nc == 1 { vec![c(&["a"])] } else { vec![c(&[]), c(&["a"])] };
            let f = instantiate_axiom(schema, &cs, &fillers[..nf]).unwrap();
            match schema {
                AxiomSchema::Naaa | AxiomSchema::Ser => assert_eq!(f.modal_depth(), 1),
                _ => assert!(f.modal_depth() <= 2),
            }
        }
    }

    #[test]
    fn schema_names_parse() {
        for s in AxiomSchema::ALL {
            assert_eq!(s.name().parse::<AxiomSchema>().unwrap(), s);
        }
        assert_eq!("ia".parse::<AxiomSchema>().unwrap(), AxiomSchema::Ia);
    }
}
