use crate::error::{Error, Result};
use crate::experts::{DiGraph, Partition};

/// Modularity of node set `c`:
/// `internal(c)/m - out(c)·in(c)/m²`, where `out`/`in` sum the out- and
/// in-degrees of the members, internal edges included.
pub fn modularity(g: &DiGraph, c: &[usize]) -> Result<f64> {
    let m = g.num_edges();
    if m == 0 {
        return Err(Error::NoEdges);
    }
    if c.is_empty() {
        return Err(Error::InvalidParameter("empty community".into()));
    }
    let mut member = vec![false; g.num_nodes()];
    for &u in c {
        member[u] = true;
    }
    let (mut internal, mut out, mut inc) = (0usize, 0usize, 0usize);
    for (u, v) in g.edges() {
        if member[u] {
            out += 1;
        }
        if member[v] {
            inc += 1;
        }
        if member[u] && member[v] {
            internal += 1;
        }
    }
    let m = m as f64;
    Ok(internal as f64 / m - (out * inc) as f64 / (m * m))
}

#[derive(Debug, Clone)]
struct Community {
    nodes: Vec<usize>,
    out: i64,
    inc: i64,
}

/// Greedy agglomerative community detection.
///
/// Starts from singletons and repeatedly merges the pair whose merge raises
/// the summed modularity the most, while that gain is positive. Gains are
/// compared exactly in integer units of `1/m²`; ties go to the pair with the
/// lexicographically smallest (minimum node, minimum node).
pub fn newman(g: &DiGraph) -> Partition {
    newman_with_merges(g).0
}

/// Two communities joined in one step.
pub type Merge = (Vec<usize>, Vec<usize>);

/// Like [`newman`], also returning the merges in order as
/// (first community, second community) pairs.
pub fn newman_with_merges(g: &DiGraph) -> (Partition, Vec<Merge>) {
    let n = g.num_nodes();
    let m = g.num_edges() as i64;
    // Communities are identified by their smallest node.
    let mut comms: Vec<Option<Community>> = (0..n)
        .map(|u| Some(Community { nodes: vec![u], out: 0, inc: 0 }))
        .collect();
    let mut between = vec![0i64; n * n];
    for (u, v) in g.edges() {
        comms[u].as_mut().unwrap().out += 1;
        comms[v].as_mut().unwrap().inc += 1;
        between[u * n + v] += 1;
    }

    let mut merges = Vec::new();
    loop {
        let alive: Vec<usize> = (0..n).filter(|&c| comms[c].is_some()).collect();
        let mut best: Option<(i64, usize, usize)> = None;
        for (x, &a) in alive.iter().enumerate() {
            let ca = comms[a].as_ref().unwrap();
            for &b in &alive[x + 1..] {
                let cb = comms[b].as_ref().unwrap();
                let links = between[a * n + b] + between[b * n + a];
                let gain = links * m - (ca.out * cb.inc + cb.out * ca.inc);
                if best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, a, b));
                }
            }
        }
        let Some((gain, a, b)) = best else { break };
        if gain <= 0 {
            break;
        }
        let cb = comms[b].take().unwrap();
        let ca = comms[a].as_mut().unwrap();
        merges.push((ca.nodes.clone(), cb.nodes.clone()));
        ca.nodes.extend(cb.nodes);
        ca.nodes.sort_unstable();
        ca.out += cb.out;
        ca.inc += cb.inc;
        for c in 0..n {
            between[a * n + c] += between[b * n + c];
            between[c * n + a] += between[c * n + b];
            between[b * n + c] = 0;
            between[c * n + b] = 0;
        }
        between[a * n + a] = 0;
    }
    let partition = Partition::new(comms.into_iter().flatten().map(|c| c.nodes));
    (partition, merges)
}
