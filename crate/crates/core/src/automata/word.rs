use std::cmp::Ordering;
use std::ops::Deref;

/// A sequence of symbol ids. Ordered shortlex: shorter words first, then
/// lexicographically by id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn push(&mut self, symbol: usize) {
        self.0.push(symbol);
    }

    pub fn concat(&self, other: &[usize]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All words over `symbols` of length at most `max_len`, in shortlex order
/// (assuming `symbols` is sorted).
pub fn words_up_to(symbols: &[usize], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * symbols.len());
        for w in &layer {
            for &s in symbols {
                next.push(w.concat(&[s]));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let mut ws: Vec<Word> = vec![vec![1].into(), vec![0, 0].into(), Word::empty(), vec![0].into()];
        ws.sort();
        let expected: Vec<Word> = vec![Word::empty(), vec![0].into(), vec![1].into(), vec![0, 0].into()];
        assert_eq!(ws, expected);
    }

    #[test]
    fn enumerates_bounded_words() {
        let ws = words_up_to(&[0, 1], 2);
        assert_eq!(ws.len(), 1 + 2 + 4);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(words_up_to(&[], 3), vec![Word::empty()]);
    }
}
