//! Small hand-built machines and graphs used by tests and examples.

use ets_core::automata::{MealyBuilder, MealyMachine};
use ets_core::experts::DiGraph;

fn build(inputs: &[&str], edges: &[(&str, &str, &str, &str)], sink: Option<(&str, &str)>) -> MealyMachine {
    let mut b = MealyBuilder::new().with_inputs(inputs.iter().copied()).expect("distinct inputs");
    for (from, input, output, to) in edges {
        b.transition(from, input, output, to).expect("valid fixture");
    }
    if let Some((state, output)) = sink {
        b.complete_with(state, output).expect("valid fixture");
    }
    b.build().expect("complete fixture")
}

/// Two states; `a` toggles with outputs 1 then 0, `b` loops with outputs 0
/// and 1.
pub fn m1() -> MealyMachine {
    build(
        &["a", "b"],
        &[("A", "a", "1", "B"), ("A", "b", "0", "A"), ("B", "a", "0", "A"), ("B", "b", "1", "B")],
        None,
    )
}

/// Coffee machine holding 0, 1 or 2 euros of credit. Coffee costs one euro,
/// espresso two, tea is never served.
pub fn coffee_sul() -> MealyMachine {
    build(
        &["1", "coffee", "espresso", "tea"],
        &[
            ("c0", "1", "ok", "c1"),
            ("c1", "1", "ok", "c2"),
            ("c2", "1", "ok", "c2"),
            ("c0", "coffee", "-", "c0"),
            ("c1", "coffee", "coffee", "c0"),
            ("c2", "coffee", "coffee", "c1"),
            ("c0", "espresso", "-", "c0"),
            ("c1", "espresso", "-", "c1"),
            ("c2", "espresso", "espresso", "c0"),
            ("c0", "tea", "-", "c0"),
            ("c1", "tea", "-", "c1"),
            ("c2", "tea", "-", "c2"),
        ],
        None,
    )
}

/// First hypothesis for the coffee machine: credit saturates at one euro.
pub fn coffee_h1() -> MealyMachine {
    build(
        &["1", "coffee", "espresso", "tea"],
        &[
            ("t0", "1", "ok", "t1"),
            ("t1", "1", "ok", "t1"),
            ("t0", "coffee", "-", "t0"),
            ("t1", "coffee", "coffee", "t0"),
            ("t0", "espresso", "-", "t0"),
            ("t1", "espresso", "-", "t1"),
            ("t0", "tea", "-", "t0"),
            ("t1", "tea", "-", "t1"),
        ],
        None,
    )
}

/// Simplified OpenSSH server: 16 states, sink `q15`.
pub fn openssh_fig1() -> MealyMachine {
    const OK: &str = "√";
    const NO: &str = "X";
    build(
        &["prekex", "kexed", "preauth", "pk", "none", "pw", "auth", "openchan", "send"],
        &[
            ("q0", "prekex", OK, "q1"),
            ("q1", "kexed", OK, "q2"),
            ("q2", "preauth", OK, "q3"),
            ("q3", "pk", NO, "q4"),
            ("q3", "none", NO, "q5"),
            ("q3", "pw", NO, "q6"),
            ("q3", "auth", OK, "q7"),
            ("q4", "pk", NO, "q4"),
            ("q5", "none", NO, "q5"),
            ("q6", "pw", NO, "q6"),
            ("q6", "auth", OK, "q7"),
            ("q7", "prekex", OK, "q8"),
            ("q7", "openchan", OK, "q10"),
            ("q8", "kexed", OK, "q9"),
            ("q8", "openchan", OK, "q11"),
            ("q9", "openchan", OK, "q12"),
            ("q10", "send", OK, "q13"),
            ("q10", "prekex", OK, "q11"),
            ("q11", "kexed", OK, "q12"),
            ("q11", "send", OK, "q14"),
            ("q13", "prekex", OK, "q14"),
            ("q14", "kexed", OK, "q15"),
            ("q12", "send", OK, "q15"),
        ],
        Some(("q15", "-")),
    )
}

/// Seven-node directed graph with two natural communities `{0,1,2,3}` and
/// `{4,5,6}`.
pub fn community_graph() -> DiGraph {
    DiGraph::from_edges(
        7,
        [
            (0, 1),
            (1, 2),
            (1, 3),
            (2, 1),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (4, 5),
            (4, 6),
            (5, 4),
            (5, 6),
            (6, 4),
            (6, 5),
            (6, 0),
        ],
    )
}
