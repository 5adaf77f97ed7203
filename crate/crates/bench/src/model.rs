//! Model specifications: built-in fixtures, generated families and DOT files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ets_core::automata::MealyMachine;

use crate::dot::parse_dot;
use crate::error::{BenchError, Result};
use crate::families::{gen_asml, gen_random, gen_ssh, gen_tcp};
use crate::fixtures::{coffee_h1, coffee_sul, m1, openssh_fig1};

/// Where a machine comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModelSpec {
    M1,
    Coffee,
    CoffeeH1,
    OpenSsh,
    Asml { a: usize, b: usize },
    Tcp { a: usize, b: usize },
    Ssh { a: usize, b: usize },
    Random { n: usize, inputs: usize, outputs: usize, seed: u64 },
    Dot(PathBuf),
}

impl ModelSpec {
    pub fn load(&self) -> Result<MealyMachine> {
        match self {
            ModelSpec::M1 => Ok(m1()),
            ModelSpec::Coffee => Ok(coffee_sul()),
            ModelSpec::CoffeeH1 => Ok(coffee_h1()),
            ModelSpec::OpenSsh => Ok(openssh_fig1()),
            ModelSpec::Asml { a, b } => gen_asml(*a, *b),
            ModelSpec::Tcp { a, b } => gen_tcp(*a, *b),
            ModelSpec::Ssh { a, b } => gen_ssh(*a, *b),
            ModelSpec::Random { n, inputs, outputs, seed } => gen_random(*n, *inputs, *outputs, *seed),
            ModelSpec::Dot(path) => parse_dot(&std::fs::read_to_string(path)?),
        }
    }
}

fn numbers<T: FromStr>(spec: &str, parts: &[&str], count: usize) -> Result<Vec<T>> {
    if parts.len() != count {
        return Err(BenchError::InvalidParameter(format!("`{spec}` needs {count} parameters")));
    }
    parts
        .iter()
        .map(|p| p.parse().map_err(|_| BenchError::InvalidParameter(format!("bad number `{p}` in `{spec}`"))))
        .collect()
}

impl FromStr for ModelSpec {
    type Err = BenchError;

    /// `m1`, `coffee`, `coffee-h1`, `openssh`, `asml:A:B`, `tcp:A:B`,
    /// `ssh:A:B`, `random:N:I:O:SEED`; anything else is a DOT file path.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let pair = |rest: &[&str]| -> Result<(usize, usize)> {
            let v = numbers::<usize>(s, rest, 2)?;
            Ok((v[0], v[1]))
        };
        Ok(match head {
            "m1" if rest.is_empty() => ModelSpec::M1,
            "coffee" if rest.is_empty() => ModelSpec::Coffee,
            "coffee-h1" if rest.is_empty() => ModelSpec::CoffeeH1,
            "openssh" if rest.is_empty() => ModelSpec::OpenSsh,
            "asml" => {
                let (a, b) = pair(&rest)?;
                ModelSpec::Asml { a, b }
            }
            "tcp" => {
                let (a, b) = pair(&rest)?;
                ModelSpec::Tcp { a, b }
            }
            "ssh" => {
                let (a, b) = pair(&rest)?;
                ModelSpec::Ssh { a, b }
            }
            "random" => {
                let v = numbers::<u64>(s, &rest, 4)?;
                ModelSpec::Random { n: v[0] as usize, inputs: v[1] as usize, outputs: v[2] as usize, seed: v[3] }
            }
            _ => ModelSpec::Dot(PathBuf::from(s)),
        })
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::M1 => write!(f, "m1"),
            ModelSpec::Coffee => write!(f, "coffee"),
            ModelSpec::CoffeeH1 => write!(f, "coffee-h1"),
            ModelSpec::OpenSsh => write!(f, "openssh"),
            ModelSpec::Asml { a, b } => write!(f, "asml:{a}:{b}"),
            ModelSpec::Tcp { a, b } => write!(f, "tcp:{a}:{b}"),
            ModelSpec::Ssh { a, b } => write!(f, "ssh:{a}:{b}"),
            ModelSpec::Random { n, inputs, outputs, seed } => write!(f, "random:{n}:{inputs}:{outputs}:{seed}"),
            ModelSpec::Dot(p) => write!(f, "{}", p.display()),
        }
    }
}
