//! Parametrised benchmark families and random machines.

use ets_core::automata::{is_minimal, Alphabet, MealyBuilder, MealyMachine};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{BenchError, Result};

const SINK: &str = "sink";
const SINK_OUT: &str = "-";

fn param(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(BenchError::InvalidParameter(msg.into()))
    }
}

fn edge(b: &mut MealyBuilder, from: &str, input: &str, to: &str) {
    b.transition(from, input, input, to).expect("generator names are valid");
}

/// Adds `a` rows of `a - 1` states hanging off `hub`: input `x_i` enters row
/// `i`, which then expects the remaining `x` inputs in rotated order and ends
/// in `exit`. Inputs are `x{1..a}`.
fn branch_block(b: &mut MealyBuilder, a: usize, hub: &str, exit: &str) {
    let x = |j: usize| format!("x{}", (j - 1) % a + 1);
    for i in 1..=a {
        let row = |j: usize| format!("r{i}_{j}");
        edge(b, hub, &x(i), &row(1));
        for j in 1..a {
            let to = if j + 1 == a { exit.to_string() } else { row(j + 1) };
            edge(b, &row(j), &x(i + j), &to);
        }
    }
}

/// Spine `s1 -x1-> … -x{a-1}-> s{a}`, a branch block from `s{a}` into `z`,
/// and `z -x1-> s1`. Every `y` input, and every `x` out of order, leads to
/// the sink. `a² + 2` states.
pub fn gen_asml(a: usize, b: usize) -> Result<MealyMachine> {
    param(a >= 2, "asml needs a >= 2")?;
    let mut m = MealyBuilder::new()
        .with_inputs((1..=a).map(|i| format!("x{i}")).chain((1..=b).map(|j| format!("y{j}"))))?;
    m.set_initial("s1")?;
    for j in 1..a {
        edge(&mut m, &format!("s{j}"), &format!("x{j}"), &format!("s{}", j + 1));
    }
    branch_block(&mut m, a, &format!("s{a}"), "z");
    edge(&mut m, "z", "x1", "s1");
    m.complete_with(SINK, SINK_OUT)?;
    Ok(m.build()?)
}

/// Handshake spine `p1 -y1-> … -y{b-1}-> p{b}`, a branch block from `p{b}`
/// into `z`, and `z -x0-> p{b}`. Input `y{b}` is never accepted.
/// `b + a(a-1) + 2` states.
pub fn gen_tcp(a: usize, b: usize) -> Result<MealyMachine> {
    param(a >= 2, "tcp needs a >= 2")?;
    param(b >= 1, "tcp needs b >= 1")?;
    let mut m = MealyBuilder::new()
        .with_inputs((0..=a).map(|i| format!("x{i}")).chain((1..=b).map(|j| format!("y{j}"))))?;
    m.set_initial("p1")?;
    for j in 1..b {
        edge(&mut m, &format!("p{j}"), &format!("y{j}"), &format!("p{}", j + 1));
    }
    let hub = format!("p{b}");
    branch_block(&mut m, a, &hub, "z");
    edge(&mut m, "z", "x0", &hub);
    m.complete_with(SINK, SINK_OUT)?;
    Ok(m.build()?)
}

/// Key-exchange block from `entry` to `exit`: per key `i`, three states on
/// the path `x{i}_1 x{i}_2 x{i}_1 x{i}_2` with back edges from the second
/// and third.
fn key_exchange(m: &mut MealyBuilder, a: usize, tag: &str, entry: &str, exit: &str) {
    for i in 1..=a {
        let (x1, x2) = (format!("x{i}_1"), format!("x{i}_2"));
        let out = format!("x{i}");
        let st = |j: usize| format!("{tag}{i}_{j}");
        let mut t = |from: &str, input: &str, to: &str| {
            m.transition(from, input, &out, to).expect("generator names are valid");
        };
        t(entry, &x1, &st(1));
        t(&st(1), &x2, &st(2));
        t(&st(2), &x1, &st(3));
        t(&st(3), &x2, exit);
        t(&st(2), &x2, &st(1));
        t(&st(3), &x1, &st(2));
    }
}

/// Two key-exchange blocks joined by `y`, with one failure state per `y_i`
/// between them. `z4` loops on `y`. `2(3a + 2) + b + 2` states.
pub fn gen_ssh(a: usize, b: usize) -> Result<MealyMachine> {
    param(a >= 2, "ssh needs a >= 2")?;
    let inputs = (1..=a)
        .flat_map(|i| [format!("x{i}_1"), format!("x{i}_2")])
        .chain((1..=b).map(|j| format!("y{j}")))
        .chain(["y".to_string()]);
    let mut m = MealyBuilder::new().with_inputs(inputs)?;
    m.set_initial("x0")?;
    key_exchange(&mut m, a, "a", "x0", "x4");
    m.transition("x4", "y", "y", "Y")?;
    for j in 1..=b {
        let (y, f) = (format!("y{j}"), format!("F{j}"));
        m.transition("Y", &y, "y_fail", &f)?;
        m.transition(&f, &y, "y_fail", &f)?;
    }
    m.transition("Y", "y", "y", "z0")?;
    key_exchange(&mut m, a, "b", "z0", "z4");
    m.transition("z4", "y", "y", "z4")?;
    m.complete_with(SINK, SINK_OUT)?;
    Ok(m.build()?)
}

/// Uniformly random transitions and outputs, redrawn until the machine is
/// reachable and minimal with exactly `n` states.
pub fn gen_random(n: usize, num_inputs: usize, num_outputs: usize, seed: u64) -> Result<MealyMachine> {
    const ATTEMPTS: usize = 1000;
    param(n >= 1, "random machines need n >= 1")?;
    param(num_inputs >= 1 && num_outputs >= 1, "random machines need inputs and outputs")?;
    let inputs = Alphabet::new((0..num_inputs).map(|i| format!("i{i}")))?;
    let outputs = Alphabet::new((0..num_outputs).map(|o| format!("o{o}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let delta = (0..n * num_inputs).map(|_| rng.gen_range(0..n)).collect();
        let lambda = (0..n * num_inputs).map(|_| rng.gen_range(0..num_outputs)).collect();
        let m = MealyMachine::new(inputs.clone(), outputs.clone(), 0, delta, lambda)?;
        if m.reachable().iter().all(|&r| r) && is_minimal(&m) {
            return Ok(m);
        }
    }
    Err(BenchError::GenerationFailed(ATTEMPTS))
}

/// Copy of `h` with `extra` fresh states (random transitions and outputs)
/// and up to `edits` random redirections or relabellings of its transitions.
pub fn mutate<R: Rng + ?Sized>(h: &MealyMachine, extra: usize, edits: usize, rng: &mut R) -> MealyMachine {
    let ni = h.num_inputs();
    let no = h.outputs().len();
    let n = h.num_states() + extra;
    let mut delta = Vec::with_capacity(n * ni);
    let mut lambda = Vec::with_capacity(n * ni);
    for q in 0..h.num_states() {
        for i in 0..ni {
            delta.push(h.next(q, i));
            lambda.push(h.output(q, i));
        }
    }
    for _ in 0..extra * ni {
        delta.push(rng.gen_range(0..n));
        lambda.push(rng.gen_range(0..no));
    }
    for _ in 0..rng.gen_range(0..=edits) {
        let idx = rng.gen_range(0..h.num_states() * ni);
        if rng.gen_bool(0.5) {
            delta[idx] = rng.gen_range(0..n);
        } else {
            lambda[idx] = rng.gen_range(0..no);
        }
    }
    MealyMachine::new(h.inputs().clone(), h.outputs().clone(), h.initial(), delta, lambda)
        .expect("mutation keeps tables well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ets_core::experts::{active_inputs, future_alphabet};
    use ets_core::automata::access_words;

    fn check_family(m: &MealyMachine, n: usize, inputs: usize) {
        assert_eq!(m.num_states(), n);
        assert_eq!(m.num_inputs(), inputs);
        assert!(is_minimal(m));
        assert!(m.reachable().iter().all(|&r| r));
        assert_eq!(m.sinks().len(), 1);
    }

    #[test]
    fn asml_shape() {
        for (a, b) in [(2, 0), (3, 5), (4, 2), (3, 20)] {
            let m = gen_asml(a, b).unwrap();
            check_family(&m, a * a + 2, a + b);
            let act = active_inputs(&m);
            assert!(act.iter().all(|&i| m.inputs().name(i).starts_with('x')));
            assert_eq!(act.len(), a);
        }
    }

    #[test]
    fn tcp_shape() {
        for (a, b) in [(2, 1), (3, 5), (3, 15), (4, 3)] {
            let m = gen_tcp(a, b).unwrap();
            check_family(&m, b + a * (a - 1) + 2, a + 1 + b);
        }
        assert_eq!(gen_tcp(3, 5).unwrap().num_inputs(), 9);
    }

    #[test]
    fn tcp_future_excludes_handshake_after_spine() {
        let m = gen_tcp(3, 5).unwrap();
        let n = m.num_states();
        let access = access_words(&m);
        for (q, v) in access.iter().enumerate() {
            let label = m.label(q);
            if label.starts_with('r') || label == "z" {
                let v = v.as_ref().unwrap();
                let fut = future_alphabet(&m, v, n);
                assert!(fut.iter().all(|&i| !m.inputs().name(i).starts_with('y')), "{label}");
            }
        }
    }

    #[test]
    fn ssh_shape() {
        for (a, b) in [(2, 0), (3, 2), (3, 5)] {
            let m = gen_ssh(a, b).unwrap();
            check_family(&m, 2 * (3 * a + 2) + b + 2, 2 * a + b + 1);
        }
        assert_eq!(gen_ssh(3, 5).unwrap().num_inputs(), 12);
    }

    #[test]
    fn bad_parameters() {
        assert!(gen_asml(1, 0).is_err());
        assert!(gen_tcp(3, 0).is_err());
        assert!(gen_ssh(1, 2).is_err());
        assert!(gen_random(0, 2, 2, 0).is_err());
    }

    #[test]
    fn random_machines() {
        let m = gen_random(20, 11, 5, 3).unwrap();
        assert_eq!(m.num_states(), 20);
        assert!(is_minimal(&m));
        let again = gen_random(20, 11, 5, 3).unwrap();
        assert_eq!(m, again);
        assert_eq!(gen_random(1, 2, 2, 9).unwrap().num_states(), 1);
    }

    #[test]
    fn mutation_keeps_alphabets() {
        let h = gen_asml(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = mutate(&h, 2, 3, &mut rng);
        assert_eq!(s.num_states(), h.num_states() + 2);
        assert_eq!(s.inputs(), h.inputs());
    }
}
