//! The coalition language: formulas, concrete syntax and axiom schemas.

mod axiom;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

pub use axiom::{instantiate_axiom, instantiate_axiom_in, AxiomSchema};
pub use parser::{parse, parse_in};

use crate::error::{Error, Result};
use crate::model::{AgentUniverse, Coalition};

/// The coalition inside a modality. The grand coalition is kept symbolic so
/// formulas can be written before the agent universe is known.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoalitionExpr {
    Agents(BTreeSet<String>),
    Grand,
}

impl CoalitionExpr {
    pub fn empty() -> Self {
        CoalitionExpr::Agents(BTreeSet::new())
    }

    pub fn of<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        CoalitionExpr::Agents(names.into_iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// The expression naming exactly `c` (never `Grand`).
    pub fn from_coalition(c: Coalition, agents: &AgentUniverse) -> Self {
        CoalitionExpr::of(c.members().map(|a| agents.name(a)))
    }

    pub fn resolve(&self, agents: &AgentUniverse) -> Result<Coalition> {
        match self {
            CoalitionExpr::Grand => Ok(agents.grand()),
            CoalitionExpr::Agents(names) => agents.coalition(names),
        }
    }
}

impl fmt::Display for CoalitionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoalitionExpr::Grand => f.write_str("AG"),
            CoalitionExpr::Agents(names) => {
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                write!(f, "{{{}}}", names.join(","))
            }
        }
    }
}

/// A formula over the primitive connectives. Other connectives are
/// abbreviations built by the constructors below.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Modal(CoalitionExpr, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn bot() -> Self {
        Formula::not(Formula::Top)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    /// `¬(¬φ ∧ ¬ψ)`.
    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(f), Formula::not(g)))
    }

    /// `¬(φ ∧ ¬ψ)`.
    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::not(Formula::and(f, Formula::not(g)))
    }

    /// `(φ → ψ) ∧ (ψ → φ)`.
    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::and(Formula::implies(f.clone(), g.clone()), Formula::implies(g, f))
    }

    pub fn modal(c: CoalitionExpr, f: Formula) -> Self {
        Formula::Modal(c, Box::new(f))
    }

    /// Maximum nesting of modalities.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(f, g) => f.modal_depth().max(g.modal_depth()),
            Formula::Modal(_, f) => 1 + f.modal_depth(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Agent names mentioned in explicit coalitions.
    pub fn agent_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Modal(CoalitionExpr::Agents(names), _) = f {
                out.extend(names.iter().cloned());
            }
        });
        out
    }

    /// Fails with `UnknownAgent` if a coalition names an agent outside `agents`.
    pub fn check_agents(&self, agents: &AgentUniverse) -> Result<()> {
        for name in self.agent_names() {
            agents.index_of(&name)?;
        }
        Ok(())
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Top | Formula::Atom(_) => {}
            Formula::Not(g) | Formula::Modal(_, g) => g.visit(f),
            Formula::And(g, h) => {
                g.visit(f);
                h.visit(f);
            }
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

/// Renders in the concrete syntax accepted by [`parse`]. Negations that
/// match the defined connectives are printed as `F`, `|`, `->` or `<->`, so
/// the text stays readable and parses back to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn as_implication(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Not(inner) => match inner.as_ref() {
            Formula::And(a, b) => match b.as_ref() {
                Formula::Not(b) => Some((a, b)),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Top => out.push('T'),
        Formula::Atom(p) => out.push_str(p),
        Formula::Not(inner) if **inner == Formula::Top => out.push('F'),
        Formula::Not(inner) => {
            if let Formula::And(a, b) = inner.as_ref() {
                if let (Formula::Not(a), Formula::Not(b)) = (a.as_ref(), b.as_ref()) {
                    write_binary(a, "|", b, out);
                    return;
                }
                if let Formula::Not(b) = b.as_ref() {
                    write_binary(a, "->", b, out);
                    return;
                }
            }
            out.push('~');
            write_formula(inner, out);
        }
        Formula::And(a, b) => {
            if let (Some((p, q)), Some((q2, p2))) = (as_implication(a), as_implication(b)) {
                if p == p2 && q == q2 {
                    write_binary(p, "<->", q, out);
                    return;
                }
            }
            write_binary(a, "&", b, out);
        }
        Formula::Modal(c, inner) => {
            out.push('[');
            out.push_str(&c.to_string());
            out.push(']');
            write_formula(inner, out);
        }
    }
}

fn write_binary(a: &Formula, op: &str, b: &Formula, out: &mut String) {
    out.push('(');
    write_formula(a, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_formula(b, out);
    out.push(')');
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Formula::Top), "T");
        assert_eq!(render(&Formula::modal(CoalitionExpr::empty(), p())), "[{}]p");
        assert_eq!(render(&Formula::and(p(), Formula::atom("q"))), "(p & q)");
        assert_eq!(render(&Formula::modal(CoalitionExpr::Grand, p())), "[AG]p");
        assert_eq!(render(&Formula::not(Formula::modal(CoalitionExpr::empty(), Formula::bot()))), "~[{}]F");
    }

    #[test]
    fn modal_depth_examples() {
        assert_eq!(p().modal_depth(), 0);
        let a = CoalitionExpr::of(["a"]);
        assert_eq!(Formula::modal(a.clone(), p()).modal_depth(), 1);
        let inner = Formula::modal(CoalitionExpr::of(["a", "b"]), Formula::Top);
        assert_eq!(Formula::modal(a, inner).modal_depth(), 2);
    }

    #[test]
    fn sugar_renders_and_reparses() {
        let q = Formula::atom("q");
        for f in [
            Formula::or(p(), q.clone()),
            Formula::implies(p(), q.clone()),
            Formula::iff(p(), q.clone()),
            Formula::implies(Formula::not(p()), q.clone()),
            Formula::not(Formula::and(Formula::not(p()), q.clone())),
        ] {
            assert_eq!(parse(&render(&f)).unwrap(), f, "{}", render(&f));
        }
        assert_eq!(render(&Formula::iff(p(), q)), "(p <-> q)");
    }
}
