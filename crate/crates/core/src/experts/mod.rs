//! Experts: strategies that pick the subalphabets used for test-suite
//! infixes, plus the community detection behind the components expert.

mod graph;
mod newman;

use std::cell::OnceCell;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

pub use graph::{state_graph, DiGraph, Partition};
pub use newman::{modularity, newman, newman_with_merges};

use crate::automata::{active_unchecked, ActiveMachine, MealyMachine, Word};
use crate::error::{Error, Result};

/// A subalphabet-generating strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expert {
    /// The full input alphabet.
    Trivial,
    /// Inputs active somewhere in the hypothesis.
    ActiveInputs,
    /// Inputs active within `lookahead - 1` active steps of the accessed state.
    Future { lookahead: usize },
    /// One subalphabet per Newman community of the active state graph.
    Components,
}

impl Expert {
    pub fn future(lookahead: usize) -> Result<Expert> {
        if lookahead == 0 {
            return Err(Error::InvalidParameter("future lookahead must be at least 1".into()));
        }
        Ok(Expert::Future { lookahead })
    }

    /// The four experts mixed by default: trivial, active inputs, future with
    /// lookahead `k` and components.
    pub fn all(k: usize) -> Vec<Expert> {
        vec![
            Expert::Trivial,
            Expert::ActiveInputs,
            Expert::Future { lookahead: k.max(1) },
            Expert::Components,
        ]
    }

    /// Parses `trivial`, `active`, `future`, `future:<l>` or `components`.
    /// A bare `future` gets `default_lookahead`.
    pub fn parse(name: &str, default_lookahead: usize) -> Result<Expert> {
        match name.trim() {
            "trivial" => Ok(Expert::Trivial),
            "active" | "active-inputs" => Ok(Expert::ActiveInputs),
            "components" | "newman" => Ok(Expert::Components),
            "future" => Expert::future(default_lookahead.max(1)),
            other => match other.strip_prefix("future:").map(str::parse::<usize>) {
                Some(Ok(l)) => Expert::future(l),
                _ => Err(Error::InvalidParameter(format!("unknown expert `{other}`"))),
            },
        }
    }
}

impl fmt::Display for Expert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expert::Trivial => write!(f, "trivial"),
            Expert::ActiveInputs => write!(f, "active"),
            Expert::Future { lookahead } => write!(f, "future:{lookahead}"),
            Expert::Components => write!(f, "components"),
        }
    }
}

pub type Subalphabet = BTreeSet<usize>;

/// A non-empty set of subalphabets (each possibly empty), kept sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalphabetSet(Vec<Vec<usize>>);

impl SubalphabetSet {
    pub fn new(subs: impl IntoIterator<Item = Subalphabet>) -> Self {
        let set: BTreeSet<Subalphabet> = subs.into_iter().collect();
        let mut v: Vec<Vec<usize>> = set.into_iter().map(|s| s.into_iter().collect()).collect();
        if v.is_empty() {
            v.push(Vec::new());
        }
        SubalphabetSet(v)
    }

    pub fn single(sub: Subalphabet) -> Self {
        Self::new([sub])
    }

    /// Each subalphabet as an ascending list of input ids.
    pub fn subalphabets(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn union(&self) -> Subalphabet {
        self.0.iter().flatten().copied().collect()
    }
}

/// Inputs active in at least one state of `h`.
pub fn active_inputs(h: &MealyMachine) -> Subalphabet {
    active_unchecked(h).inputs.into_iter().collect()
}

/// Inputs defined in the active machine at some state reachable from
/// `δ(v)` within `lookahead - 1` active steps. Empty when `δ(v)` is a sink.
pub fn future_alphabet(h: &MealyMachine, v: &[usize], lookahead: usize) -> Subalphabet {
    future_in(&active_unchecked(h), h.reach(v), lookahead)
}

fn future_in(active: &ActiveMachine, start: usize, lookahead: usize) -> Subalphabet {
    let mut out = Subalphabet::new();
    if !active.contains(start) || lookahead == 0 {
        return out;
    }
    let m = &active.machine;
    let mut depth = vec![usize::MAX; m.num_states()];
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        for i in m.defined_inputs(q) {
            out.insert(i);
            let (t, _) = m.step(q, i).unwrap();
            if depth[q] + 1 < lookahead && depth[t] == usize::MAX {
                depth[t] = depth[q] + 1;
                queue.push_back(t);
            }
        }
    }
    out
}

/// For each community `X`, the inputs labelling an active transition
/// between two members of `X`. One entry per community, in partition order.
pub fn community_alphabets(active: &ActiveMachine, parts: &Partition) -> Vec<Subalphabet> {
    let m = &active.machine;
    let mut owner = vec![usize::MAX; m.num_states()];
    for (c, block) in parts.blocks().iter().enumerate() {
        for &q in block {
            owner[q] = c;
        }
    }
    let mut subs = vec![Subalphabet::new(); parts.len()];
    for q in 0..m.num_states() {
        if owner[q] == usize::MAX {
            continue;
        }
        for i in m.defined_inputs(q) {
            let (t, _) = m.step(q, i).unwrap();
            if owner[t] == owner[q] {
                subs[owner[q]].insert(i);
            }
        }
    }
    subs
}

/// Component subalphabets of `h` for a partition of its active states.
pub fn component_alphabets(h: &MealyMachine, parts: &Partition) -> SubalphabetSet {
    SubalphabetSet::new(community_alphabets(&active_unchecked(h), parts))
}

/// Newman communities of the active state graph of `h`, as state ids.
pub fn communities(h: &MealyMachine) -> Partition {
    communities_in(&active_unchecked(h))
}

fn communities_in(active: &ActiveMachine) -> Partition {
    let (g, states) = state_graph(active);
    newman(&g).relabel(&states)
}

/// Expert evaluation against one hypothesis, caching the active machine and
/// the communities across access words.
#[derive(Debug)]
pub struct ExpertContext<'a> {
    hyp: &'a MealyMachine,
    active: ActiveMachine,
    components: OnceCell<SubalphabetSet>,
}

impl<'a> ExpertContext<'a> {
    pub fn new(hyp: &'a MealyMachine) -> Self {
        ExpertContext { hyp, active: active_unchecked(hyp), components: OnceCell::new() }
    }

    pub fn active(&self) -> &ActiveMachine {
        &self.active
    }

    pub fn eval(&self, expert: Expert, v: &Word) -> SubalphabetSet {
        match expert {
            Expert::Trivial => SubalphabetSet::single(self.hyp.inputs().ids().collect()),
            Expert::ActiveInputs => SubalphabetSet::single(self.active.inputs.iter().copied().collect()),
            Expert::Future { lookahead } => {
                SubalphabetSet::single(future_in(&self.active, self.hyp.reach(v), lookahead))
            }
            Expert::Components => self
                .components
                .get_or_init(|| {
                    SubalphabetSet::new(community_alphabets(&self.active, &communities_in(&self.active)))
                })
                .clone(),
        }
    }
}

/// Subalphabets proposed by `expert` for hypothesis `h` and access word `v`.
pub fn expert_eval(expert: Expert, h: &MealyMachine, v: &Word) -> SubalphabetSet {
    ExpertContext::new(h).eval(expert, v)
}
