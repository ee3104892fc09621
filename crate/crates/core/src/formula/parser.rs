use std::collections::BTreeSet;

use super::{CoalitionExpr, Formula};
use crate::error::{Error, Result};
use crate::model::AgentUniverse;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Grand,
    Not,
    And,
    Or,
    Imp,
    Iff,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Top => "`T`".into(),
        Tok::Bot => "`F`".into(),
        Tok::Grand => "`AG`".into(),
        Tok::Not => "`~`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Imp => "`->`".into(),
        Tok::Iff => "`<->`".into(),
        Tok::LBrack => "`[`".into(),
        Tok::RBrack => "`]`".into(),
        Tok::LBrace => "`{`".into(),
        Tok::RBrace => "`}`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            b'<' if bytes[i..].starts_with(b"<->") => {
                i += 2;
                Tok::Iff
            }
            b'<' => return Err(syntax(i, "diamond modalities are not part of the language")),
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            b'A'..=b'Z' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                match &text[start..=i] {
                    "T" => Tok::Top,
                    "F" => Tok::Bot,
                    "AG" => Tok::Grand,
                    w => return Err(syntax(start, format!("unknown keyword `{w}`"))),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        toks.push((tok, start));
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("expected {}, found {}", describe(&want), describe(self.peek())),
            ))
        }
    }

    // iff := imp ("<->" imp)*, left-associative.
    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let g = self.imp()?;
            f = Formula::iff(f, g);
        }
        Ok(f)
    }

    // imp := or ("->" imp)?, right-associative.
    fn imp(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let g = self.imp()?;
            return Ok(Formula::implies(f, g));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let g = self.and()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let g = self.unary()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.bump() {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::LBrack => {
                let c = self.coalition()?;
                self.expect(Tok::RBrack)?;
                Ok(Formula::modal(c, self.unary()?))
            }
            Tok::Ident(p) => Ok(Formula::Atom(p)),
            Tok::Top => Ok(Formula::Top),
            Tok::Bot => Ok(Formula::bot()),
            Tok::LParen => {
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            t => Err(syntax(at, format!("expected a formula, found {}", describe(&t)))),
        }
    }

    fn coalition(&mut self) -> Result<CoalitionExpr> {
        let at = self.offset();
        match self.bump() {
            Tok::Grand => Ok(CoalitionExpr::Grand),
            Tok::LBrace => {
                let mut names = BTreeSet::new();
                if *self.peek() == Tok::RBrace {
                    self.bump();
                    return Ok(CoalitionExpr::Agents(names));
                }
                loop {
                    let at = self.offset();
                    match self.bump() {
                        Tok::Ident(a) => {
                            names.insert(a);
                        }
                        t => return Err(syntax(at, format!("expected an agent, found {}", describe(&t)))),
                    }
                    match self.bump() {
                        Tok::Comma => continue,
                        Tok::RBrace => break,
                        t => {
                            return Err(syntax(
                                self.toks[self.pos - 1].1,
                                format!("expected `,` or `}}`, found {}", describe(&t)),
                            ))
                        }
                    }
                }
                Ok(CoalitionExpr::Agents(names))
            }
            t => Err(syntax(at, format!("expected a coalition, found {}", describe(&t)))),
        }
    }
}

/// Parses a formula. `->` associates to the right; `&`, `|` and `<->` to the
/// left. Positions in errors are byte offsets.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.offset(), format!("unexpected {}", describe(p.peek()))));
    }
    Ok(f)
}

/// Parses and checks that every named agent belongs to `agents`.
pub fn parse_in(text: &str, agents: &AgentUniverse) -> Result<Formula> {
    let f = parse(text)?;
    f.check_agents(agents)?;
    Ok(f)
}
