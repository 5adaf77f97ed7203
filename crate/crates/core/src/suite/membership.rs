use std::collections::VecDeque;

use crate::automata::{input_map, state_cover, MealyMachine};
use crate::error::Result;
use crate::experts::{Expert, ExpertContext};

/// States of `s` reached by `⋃_{v∈P} v · (⋃_{J∈E(h,v)} J^{≤k})`, where `P`
/// is the state cover of `h`.
fn reached(s: &MealyMachine, h: &MealyMachine, expert: Expert, k: usize) -> Result<Vec<bool>> {
    let imap = input_map(h, s)?;
    let ctx = ExpertContext::new(h);
    let mut seen = vec![false; s.num_states()];
    let mut depth = vec![usize::MAX; s.num_states()];
    for v in state_cover(h).iter() {
        let start = s.reach(&v.iter().map(|&i| imap[i]).collect::<Vec<_>>());
        for sub in ctx.eval(expert, v).subalphabets() {
            depth.fill(usize::MAX);
            depth[start] = 0;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(q) = queue.pop_front() {
                if depth[q] == k {
                    continue;
                }
                for &i in sub {
                    let t = s.next(q, imap[i]);
                    if depth[t] == usize::MAX {
                        depth[t] = depth[q] + 1;
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
    }
    Ok(seen)
}

/// True iff every non-sink state of `s` is reached from `δ^s(P)` by words of
/// length at most `k` over the subalphabets proposed by `expert` on `h`.
pub fn reach_condition(s: &MealyMachine, h: &MealyMachine, expert: Expert, k: usize) -> Result<bool> {
    let seen = reached(s, h, expert, k)?;
    let sinks = s.sinks();
    Ok((0..s.num_states()).all(|q| seen[q] || sinks.contains(&q)))
}

/// Membership of `s` in the class of machines for which the expert suite of
/// `h` with parameter `k` is complete: `s` has at most `|h| + k` states and,
/// for non-trivial experts, satisfies [`reach_condition`].
pub fn class_membership(s: &MealyMachine, h: &MealyMachine, expert: Expert, k: usize) -> Result<bool> {
    input_map(h, s)?;
    if s.num_states() > h.num_states() + k {
        return Ok(false);
    }
    if expert == Expert::Trivial {
        return Ok(true);
    }
    reach_condition(s, h, expert, k)
}
