use std::collections::BTreeSet;

use crate::automata::{char_set, state_cover, words_up_to, MealyMachine, Provenance, TestSuite, Word};
use crate::error::{Error, Result};
use crate::experts::{Expert, ExpertContext};

fn concat_all(prefixes: &[Word], middles: &BTreeSet<Word>, suffixes: &[Word]) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for p in prefixes {
        for m in middles {
            let pm = p.concat(m);
            for s in suffixes {
                out.insert(pm.concat(s));
            }
        }
    }
    out
}

/// W-method suite `P · I^{≤k+1} · W`.
pub fn w_method(h: &MealyMachine, k: usize) -> TestSuite {
    let all: Vec<usize> = h.inputs().ids().collect();
    let mut suite = subalphabet_w_method(h, &all, k);
    suite.provenance = Provenance { method: "wmethod".into(), k: Some(k), expert: None };
    suite
}

/// `P · J^{≤k+1} · W`: the W-method with every infix symbol drawn from `sub`.
pub fn subalphabet_w_method(h: &MealyMachine, sub: &[usize], k: usize) -> TestSuite {
    let p = state_cover(h).to_vec();
    let w = char_set(h).to_vec();
    let middles: BTreeSet<Word> = words_up_to(sub, k + 1).into_iter().collect();
    TestSuite::new(
        concat_all(&p, &middles, &w),
        Provenance { method: "subalphabet-wmethod".into(), k: Some(k), expert: None },
    )
}

fn expert_prefixes(h: &MealyMachine, expert: Expert, k: usize, tail: usize) -> Result<BTreeSet<Word>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let ctx = ExpertContext::new(h);
    let all: Vec<usize> = h.inputs().ids().collect();
    let tails = words_up_to(&all, tail);
    let mut out = BTreeSet::new();
    for v in state_cover(h).iter() {
        let mut middles = BTreeSet::new();
        for sub in ctx.eval(expert, v).subalphabets() {
            middles.extend(words_up_to(sub, k - 1));
        }
        for m in &middles {
            let vm = v.concat(m);
            for t in &tails {
                out.insert(vm.concat(t));
            }
        }
    }
    Ok(out)
}

/// Expert test suite
/// `⋃_{v∈P} v · (⋃_{J∈E(H,v)} J^{≤k−1}) · I^{≤2} · W`. Requires `k ≥ 1`.
pub fn ets(h: &MealyMachine, expert: Expert, k: usize) -> Result<TestSuite> {
    let prefixes: Vec<Word> = expert_prefixes(h, expert, k, 2)?.into_iter().collect();
    let w = char_set(h).to_vec();
    let middles = BTreeSet::from([Word::empty()]);
    Ok(TestSuite::new(
        concat_all(&prefixes, &middles, &w),
        Provenance { method: "ets".into(), k: Some(k), expert: Some(expert.to_string()) },
    ))
}

/// Reach language `⋃_{v∈P} v · (⋃_{J∈E(H,v)} J^{≤k−1}) · I^{≤1}`, the
/// candidate state cover of the system under learning. Requires `k ≥ 1`.
pub fn reach_language(h: &MealyMachine, expert: Expert, k: usize) -> Result<TestSuite> {
    Ok(TestSuite::new(
        expert_prefixes(h, expert, k, 1)?,
        Provenance { method: "reach".into(), k: Some(k), expert: Some(expert.to_string()) },
    ))
}
