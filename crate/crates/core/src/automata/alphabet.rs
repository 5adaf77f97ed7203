use std::collections::HashMap;

use crate::automata::Word;
use crate::error::{Error, Result};

/// Ordered set of symbol names with dense ids assigned in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            let name = name.into();
            if alphabet.index.contains_key(&name) {
                return Err(Error::DuplicateSymbol(name));
            }
            alphabet.insert(name)?;
        }
        Ok(alphabet)
    }

    /// Returns the id of `name`, adding it if it is not yet present.
    pub fn insert(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptySymbol);
        }
        if let Some(&id) = self.index.get(&name) {
            return Ok(id);
        }
        let id = self.symbols.len();
        self.index.insert(name.clone(), id);
        self.symbols.push(name);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.symbols[id]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn ids(&self) -> std::ops::Range<usize> {
        0..self.symbols.len()
    }

    /// True when both alphabets hold the same names, in any order.
    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|s| other.index.contains_key(s))
    }

    /// Parses a whitespace-separated word. The empty string is ε.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|s| self.id(s).ok_or_else(|| Error::UnknownSymbol(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Renders a word with space-separated symbol names.
    pub fn render(&self, word: &Word) -> String {
        word.iter()
            .map(|&id| self.name(id))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
