//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use causalflow::contagion::CascadeRecord;
use causalflow::graph::{load_edge_list, Adjacency, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> Graph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    load_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Erdős–Rényi graph on `n` nodes.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Recursive causal closure of one target, straight from the definition.
fn closure(g: &Graph, tau: &[Option<u32>], v: usize, set: &mut BTreeSet<usize>) {
    if !set.insert(v) {
        return;
    }
    for &u in g.neighbors(v) {
        if let (Some(tu), Some(tv)) = (tau[u], tau[v]) {
            if tu < tv {
                closure(g, tau, u, set);
            }
        }
    }
}

/// Node and directed-tie counts summed over the given cascades, computed
/// target by target.
pub fn brute_force_counts(
    g: &Graph,
    records: &[CascadeRecord],
) -> (Vec<u64>, BTreeMap<(usize, usize), u64>) {
    let mut ni = vec![0u64; g.node_count()];
    let mut ti = BTreeMap::new();
    for &(u, v) in g.edges() {
        ti.insert((u, v), 0);
        ti.insert((v, u), 0);
    }
    for rec in records {
        let tau = &rec.activation_time;
        for m in 0..g.node_count() {
            if tau[m].is_none() {
                continue;
            }
            let mut set = BTreeSet::new();
            closure(g, tau, m, &mut set);
            for &i in &set {
                ni[i] += 1;
            }
            for &i in &set {
                for &j in &set {
                    if g.has_edge(i, j) && tau[i] < tau[j] {
                        *ti.get_mut(&(i, j)).unwrap() += 1;
                    }
                }
            }
        }
    }
    (ni, ti)
}

/// Connected components by repeated flood fill, as sorted node sets.
pub fn components(g: &Graph) -> Vec<BTreeSet<usize>> {
    let mut seen = vec![false; g.node_count()];
    let mut out = Vec::new();
    for s in 0..g.node_count() {
        if seen[s] {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut todo = vec![s];
        seen[s] = true;
        while let Some(v) = todo.pop() {
            comp.insert(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    todo.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Synchronous threshold dynamics by full rescans; returns the state vector
/// after every step, starting with the seeds.
pub fn naive_gi(g: &Graph, seeds: &[usize], thresholds: &[u32]) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut state = vec![false; n];
    for &s in seeds {
        state[s] = true;
    }
    let mut history = vec![state.clone()];
    loop {
        let next: Vec<bool> = (0..n)
            .map(|i| {
                state[i]
                    || g.neighbors(i).iter().filter(|&&j| state[j]).count() as u32 >= thresholds[i]
            })
            .collect();
        if next == state {
            return history;
        }
        state = next;
        history.push(state.clone());
    }
}
