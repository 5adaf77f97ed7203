use num_rational::Ratio;
use rand::Rng;

use crate::automata::{char_set, state_cover, MealyMachine, Word};
use crate::error::{Error, Result};
use crate::experts::{Expert, ExpertContext, SubalphabetSet};

/// Geometric tail `mass(start + j) = first · ratio^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricTail {
    pub start: usize,
    pub first: Ratio<u64>,
    pub ratio: Ratio<u64>,
}

/// Distribution over infix lengths, with exact rational masses: an explicit
/// head for lengths `0..head.len()` followed by an optional geometric tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthDistribution {
    head: Vec<Ratio<u64>>,
    tail: Option<GeometricTail>,
}

impl LengthDistribution {
    /// Fails unless the masses are non-negative and sum to exactly one.
    pub fn new(head: Vec<Ratio<u64>>, tail: Option<GeometricTail>) -> Result<Self> {
        if let Some(t) = &tail {
            if t.start < head.len() {
                return Err(Error::InvalidParameter("tail overlaps the head".into()));
            }
            if t.ratio >= Ratio::from_integer(1) {
                return Err(Error::InvalidParameter("tail ratio must be below one".into()));
            }
        }
        let d = LengthDistribution { head, tail };
        if d.total_mass() != Ratio::from_integer(1) {
            return Err(Error::InvalidParameter(format!("masses sum to {}", d.total_mass())));
        }
        Ok(d)
    }

    /// All mass on length `l`.
    pub fn point(l: usize) -> Self {
        let mut head = vec![Ratio::from_integer(0); l + 1];
        head[l] = Ratio::from_integer(1);
        LengthDistribution { head, tail: None }
    }

    pub fn total_mass(&self) -> Ratio<u64> {
        let head: Ratio<u64> = self.head.iter().copied().sum();
        match &self.tail {
            Some(t) => head + t.first / (Ratio::from_integer(1) - t.ratio),
            None => head,
        }
    }

    /// Probability of length `l`.
    pub fn prob(&self, l: usize) -> f64 {
        if let Some(m) = self.head.get(l) {
            return ratio_f64(*m);
        }
        match &self.tail {
            Some(t) if l >= t.start => {
                ratio_f64(t.first) * ratio_f64(t.ratio).powi((l - t.start) as i32)
            }
            _ => 0.0,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last = 0;
        for (l, m) in self.head.iter().enumerate() {
            if *m.numer() == 0 {
                continue;
            }
            acc += ratio_f64(*m);
            last = l;
            if u < acc {
                return l;
            }
        }
        match &self.tail {
            Some(t) => {
                let stop = 1.0 - ratio_f64(t.ratio);
                let mut l = t.start;
                while rng.gen::<f64>() >= stop {
                    l += 1;
                }
                l
            }
            None => last,
        }
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Default length distribution: `7/8` on length 3 and `2^{-l}` for `l ≥ 4`.
pub fn mu_default() -> LengthDistribution {
    let r = |n, d| Ratio::new(n, d);
    LengthDistribution::new(
        vec![r(0, 1), r(0, 1), r(0, 1), r(7, 8)],
        Some(GeometricTail { start: 4, first: r(1, 16), ratio: r(1, 2) }),
    )
    .expect("masses sum to one")
}

/// One test drawn from a randomized expert suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledTest {
    pub access: Word,
    pub infix: Word,
    pub suffix: Word,
    pub expert: Expert,
    /// Drawn infix length; the infix is shorter when the subalphabet is empty.
    pub length: usize,
}

impl SampledTest {
    pub fn word(&self) -> Word {
        self.access.concat(&self.infix).concat(&self.suffix)
    }
}

/// Draws tests `v · x · w` for one hypothesis and a fixed list of experts.
///
/// Draw order: length `l`, access word `v`, subalphabet `J` (only when the
/// expert proposes more than one), `max(l-2, 0)` infix symbols from `J`,
/// `min(l, 2)` symbols from the full alphabet, then the suffix `w`.
#[derive(Debug, Clone)]
pub struct Sampler {
    access: Vec<Word>,
    suffixes: Vec<Word>,
    full: Vec<usize>,
    experts: Vec<Expert>,
    subs: Vec<Vec<SubalphabetSet>>,
}

impl Sampler {
    pub fn new(h: &MealyMachine, experts: &[Expert]) -> Self {
        let access = state_cover(h).to_vec();
        let ctx = ExpertContext::new(h);
        let subs = experts
            .iter()
            .map(|&e| access.iter().map(|v| ctx.eval(e, v)).collect())
            .collect();
        Sampler {
            access,
            suffixes: char_set(h).to_vec(),
            full: h.inputs().ids().collect(),
            experts: experts.to_vec(),
            subs,
        }
    }

    pub fn experts(&self) -> &[Expert] {
        &self.experts
    }

    pub fn sample<R: Rng + ?Sized>(&self, expert: usize, mu: &LengthDistribution, rng: &mut R) -> SampledTest {
        let l = mu.sample(rng);
        let vi = rng.gen_range(0..self.access.len());
        let set = &self.subs[expert][vi];
        let sub = match set.len() {
            1 => &set.subalphabets()[0],
            n => &set.subalphabets()[rng.gen_range(0..n)],
        };
        let mut infix = Vec::with_capacity(l);
        if !sub.is_empty() {
            for _ in 0..l.saturating_sub(2) {
                infix.push(sub[rng.gen_range(0..sub.len())]);
            }
        }
        for _ in 0..l.min(2) {
            infix.push(self.full[rng.gen_range(0..self.full.len())]);
        }
        let suffix = self.suffixes[rng.gen_range(0..self.suffixes.len())].clone();
        SampledTest {
            access: self.access[vi].clone(),
            infix: Word::from(infix),
            suffix,
            expert: self.experts[expert],
            length: l,
        }
    }
}
