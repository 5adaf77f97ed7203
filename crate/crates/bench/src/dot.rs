//! Reading and writing machines in a small DOT subset:
//!
//! ```text
//! digraph g {
//!     __start0 -> s0;
//!     s0 -> s1 [label="a/0"];
//! }
//! ```
//!
//! Node statements and extra attributes are accepted and ignored.

use std::fmt::Write;

use ets_core::automata::{MealyBuilder, MealyMachine};

use crate::error::{BenchError, Result};

const START: &str = "__start0";

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Open,
    Close,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Eq,
}

fn err(line: usize, reason: impl Into<String>) -> BenchError {
    BenchError::Parse { line, reason: reason.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            '{' => toks.push((Tok::Open, line)),
            '}' => toks.push((Tok::Close, line)),
            '[' => toks.push((Tok::LBracket, line)),
            ']' => toks.push((Tok::RBracket, line)),
            ';' => toks.push((Tok::Semi, line)),
            ',' => toks.push((Tok::Comma, line)),
            '=' => toks.push((Tok::Eq, line)),
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                toks.push((Tok::Arrow, line));
            }
            '/' if chars.peek() == Some(&'/') => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(c) => s.push(c),
                            None => return Err(err(start, "unterminated string")),
                        },
                        Some('\n') => {
                            line += 1;
                            s.push('\n');
                        }
                        Some(c) => s.push(c),
                        None => return Err(err(start, "unterminated string")),
                    }
                }
                toks.push((Tok::Id(s), start));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut s = String::from(c);
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Id(s), line));
            }
            other => return Err(err(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn line(&self) -> usize {
        self.toks.get(self.pos).or(self.toks.last()).map_or(1, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let line = self.line();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => Err(err(line, format!("expected {what}"))),
        }
    }

    fn id(&mut self, what: &str) -> Result<String> {
        let line = self.line();
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            _ => Err(err(line, format!("expected {what}"))),
        }
    }

    fn attrs(&mut self) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        if self.peek() != Some(&Tok::LBracket) {
            return Ok(out);
        }
        self.next();
        loop {
            match self.peek() {
                Some(Tok::RBracket) => {
                    self.next();
                    return Ok(out);
                }
                Some(Tok::Comma) | Some(Tok::Semi) => {
                    self.next();
                }
                _ => {
                    let key = self.id("attribute name")?;
                    self.expect(Tok::Eq, "`=`")?;
                    let value = self.id("attribute value")?;
                    out.push((key, value));
                }
            }
        }
    }
}

/// Parses a machine from the DOT subset. The first `__start0 -> s` edge
/// fixes the initial state; inputs are numbered by first appearance.
pub fn parse_dot(text: &str) -> Result<MealyMachine> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let kw = p.id("`digraph`")?;
    if kw != "digraph" {
        return Err(err(1, "expected `digraph`"));
    }
    if let Some(Tok::Id(_)) = p.peek() {
        p.next();
    }
    p.expect(Tok::Open, "`{`")?;
    let mut b = MealyBuilder::new();
    let mut initial: Option<String> = None;
    loop {
        let line = p.line();
        match p.peek() {
            Some(Tok::Close) => {
                p.next();
                break;
            }
            Some(Tok::Semi) => {
                p.next();
                continue;
            }
            None => return Err(err(line, "expected `}`")),
            _ => {}
        }
        let from = p.id("statement")?;
        if p.peek() != Some(&Tok::Arrow) {
            // Node or graph attribute statement.
            if p.peek() == Some(&Tok::Eq) {
                p.next();
                p.id("attribute value")?;
            } else {
                p.attrs()?;
            }
            continue;
        }
        p.next();
        let to = p.id("target state")?;
        let attrs = p.attrs()?;
        if from == START {
            if initial.is_none() {
                b.set_initial(&to).map_err(|e| err(line, e.to_string()))?;
                initial = Some(to);
            }
            continue;
        }
        let label = attrs
            .iter()
            .find(|(k, _)| k == "label")
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| err(line, "transition without label"))?;
        let (input, output) = label
            .split_once('/')
            .ok_or_else(|| err(line, format!("label `{label}` is not input/output")))?;
        let (input, output) = (input.trim(), output.trim());
        if b.has_transition(&from, input) {
            return Err(err(line, format!("duplicate transition for `{from}` on `{input}`")));
        }
        b.transition(&from, input, output, &to).map_err(|e| err(line, e.to_string()))?;
    }
    if p.peek().is_some() {
        return Err(err(p.line(), "trailing input after `}`"));
    }
    if initial.is_none() {
        return Err(err(p.line(), "missing `__start0` edge"));
    }
    if let Some((q, i)) = b.missing() {
        return Err(BenchError::IncompleteMachine {
            state: b.state_names().name(q).to_string(),
            input: b.input_names().name(i).to_string(),
        });
    }
    Ok(b.build()?)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Writes `m` in the DOT subset, states in id order.
pub fn write_dot(m: &MealyMachine) -> String {
    let mut out = String::from("digraph g {\n");
    writeln!(out, "    __start0 -> {};", quote(m.label(m.initial()))).unwrap();
    for q in 0..m.num_states() {
        for i in m.inputs().ids() {
            let label = format!("{}/{}", m.inputs().name(i), m.outputs().name(m.output(q, i)));
            writeln!(
                out,
                "    {} -> {} [label={}];",
                quote(m.label(q)),
                quote(m.label(m.next(q, i))),
                quote(&label)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
