use std::collections::BTreeSet;

use crate::automata::{Alphabet, Word};

/// Where a suite came from: the generating method and its parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub method: String,
    pub k: Option<usize>,
    pub expert: Option<String>,
}

impl Provenance {
    pub fn method(method: &str) -> Self {
        Provenance { method: method.to_string(), ..Default::default() }
    }
}

/// A finite set of input words, iterated in shortlex order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TestSuite {
    words: BTreeSet<Word>,
    pub provenance: Provenance,
}

impl TestSuite {
    pub fn new(words: impl IntoIterator<Item = Word>, provenance: Provenance) -> Self {
        TestSuite { words: words.into_iter().collect(), provenance }
    }

    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Self {
        Self::new(words, Provenance::default())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn to_vec(&self) -> Vec<Word> {
        self.words.iter().cloned().collect()
    }

    pub fn insert(&mut self, w: Word) -> bool {
        self.words.insert(w)
    }

    /// One rendered word per line.
    pub fn render(&self, inputs: &Alphabet) -> String {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(&inputs.render(w));
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a TestSuite {
    type Item = &'a Word;
    type IntoIter = std::collections::btree_set::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}
