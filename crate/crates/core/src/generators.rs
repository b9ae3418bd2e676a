//! Seeded random graph generators.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::graph::Graph;
use crate::rng::RngSeed;

/// Bumped whenever a generator's sampling sequence changes.
pub const GENERATOR_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Community {
    A,
    B,
}

fn check_ws(n: usize, k: usize, beta: f64) -> Result<()> {
    if k < 2 || !k.is_multiple_of(2) {
        return param(format!("watts-strogatz: k must be even and >= 2, got {k}"));
    }
    if k >= n {
        return param(format!("watts-strogatz: need k < n, got k={k}, n={n}"));
    }
    if !(0.0..=1.0).contains(&beta) {
        return param(format!(
            "watts-strogatz: beta must lie in [0, 1], got {beta}"
        ));
    }
    Ok(())
}

/// Ring lattice with `k/2` neighbors per side, each lattice edge rewired with
/// probability `beta` to a uniform non-self, non-duplicate endpoint.
///
/// Lattice edges are visited by offset and then by node, as in the classic
/// construction. When no valid target is found after `n` draws the edge is
/// left in place, so the edge count is always `n*k/2`.
pub fn watts_strogatz(n: usize, k: usize, beta: f64, seed: RngSeed) -> Result<Graph> {
    check_ws(n, k, beta)?;
    let mut rng = seed.rng();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.random_bool(beta) {
                continue;
            }
            if !adj[u].contains(&v) {
                // already rewired away by an earlier step
                continue;
            }
            for _ in 0..n {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    adj[u].remove(&v);
                    adj[v].remove(&u);
                    adj[u].insert(w);
                    adj[w].insert(u);
                    break;
                }
            }
        }
    }
    let pairs = adj
        .iter()
        .enumerate()
        .flat_map(|(u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(n, pairs)
}

/// Preferential attachment with triad formation (Holme–Kim).
///
/// Starts from `m` isolated nodes. Each new node draws `m` distinct targets
/// with probability proportional to degree; after every attachment except the
/// last, with probability `p` the next edge goes to a random neighbor of the
/// previous target (closing a triangle) instead of the next drawn target.
pub fn clustered_power_law(n: usize, m: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    if m < 1 || n <= m {
        return param(format!(
            "clustered power law: need n > m >= 1, got n={n}, m={m}"
        ));
    }
    if !(0.0..=1.0).contains(&p) {
        return param(format!(
            "clustered power law: p must lie in [0, 1], got {p}"
        ));
    }
    let mut rng = seed.rng();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    // each node appears once per unit of degree (plus the seed nodes once)
    let mut repeated: Vec<usize> = (0..m).collect();

    for source in m..n {
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = repeated[rng.random_range(0..repeated.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        let mut target = targets.pop().expect("m >= 1");
        adj[source].insert(target);
        adj[target].insert(source);
        repeated.push(target);
        let mut count = 1;
        while count < m {
            if rng.random_bool(p) {
                let candidates: Vec<usize> = adj[target]
                    .iter()
                    .copied()
                    .filter(|&w| w != source && !adj[source].contains(&w))
                    .collect();
                if !candidates.is_empty() {
                    let w = candidates[rng.random_range(0..candidates.len())];
                    adj[source].insert(w);
                    adj[w].insert(source);
                    repeated.push(w);
                    count += 1;
                    continue;
                }
            }
            // a triad step may already have linked the next drawn target
            target = loop {
                match targets.pop() {
                    Some(t) if adj[source].contains(&t) => continue,
                    Some(t) => break Some(t),
                    None => break None,
                }
            }
            .unwrap_or_else(|| loop {
                let t = repeated[rng.random_range(0..repeated.len())];
                if t != source && !adj[source].contains(&t) {
                    break t;
                }
            });
            adj[source].insert(target);
            adj[target].insert(source);
            repeated.push(target);
            count += 1;
        }
        repeated.extend(std::iter::repeat_n(source, m));
    }
    let pairs = adj
        .iter()
        .enumerate()
        .flat_map(|(u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(n, pairs)
}

/// Two independent Watts–Strogatz graphs: community A on `0..n`, B on `n..2n`.
pub fn two_disconnected_ws(
    n: usize,
    k: usize,
    beta: f64,
    seed: RngSeed,
) -> Result<(Graph, Vec<Community>)> {
    let a = watts_strogatz(n, k, beta, seed.derive(0))?;
    let b = watts_strogatz(n, k, beta, seed.derive(1))?;
    let pairs = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + n, v + n)));
    let g = Graph::from_edges(2 * n, pairs)?;
    let labels = (0..2 * n)
        .map(|v| if v < n { Community::A } else { Community::B })
        .collect();
    Ok((g, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Adjacency;

    #[test]
    fn lattice_at_beta_zero() {
        let g = watts_strogatz(10, 4, 0.0, RngSeed(1)).unwrap();
        assert!(g.audit());
        assert_eq!(g.edge_count(), 20);
        assert!((0..10).all(|v| g.degree(v) == 4));
        assert!(g.has_edge(0, 9) && g.has_edge(0, 8) && !g.has_edge(0, 7));
    }

    #[test]
    fn lattice_clustering_matches_closed_form() {
        for (n, k) in [(20, 4), (30, 6), (50, 8), (60, 10)] {
            let g = watts_strogatz(n, k, 0.0, RngSeed(0)).unwrap();
            let expect = 3.0 * (k as f64 - 2.0) / (4.0 * (k as f64 - 1.0));
            assert!(
                (g.average_clustering() - expect).abs() < 1e-12,
                "n={n} k={k}"
            );
        }
    }

    #[test]
    fn ws_is_deterministic_and_simple() {
        let a = watts_strogatz(100, 6, 0.1, RngSeed(99)).unwrap();
        let b = watts_strogatz(100, 6, 0.1, RngSeed(99)).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert!(a.audit());
        assert_eq!(a.edge_count(), 300);
        let c = watts_strogatz(100, 6, 0.1, RngSeed(100)).unwrap();
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn ws_parameter_errors() {
        assert!(watts_strogatz(10, 3, 0.1, RngSeed(0)).is_err());
        assert!(watts_strogatz(4, 4, 0.1, RngSeed(0)).is_err());
        assert!(watts_strogatz(10, 0, 0.1, RngSeed(0)).is_err());
        assert!(watts_strogatz(10, 4, 1.5, RngSeed(0)).is_err());
    }

    #[test]
    fn ws_dense_corner_keeps_edge_count() {
        // k = n - 2: few valid targets, rewiring often falls back
        for s in 0..20 {
            let g = watts_strogatz(8, 6, 1.0, RngSeed(s)).unwrap();
            assert!(g.audit());
            assert_eq!(g.edge_count(), 24);
        }
    }

    #[test]
    fn holme_kim_tree_when_m_is_one() {
        let g = clustered_power_law(50, 1, 0.0, RngSeed(3)).unwrap();
        assert!(g.audit());
        assert_eq!(g.edge_count(), 49);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn holme_kim_edge_count_and_connectivity() {
        for s in 0..5 {
            let g = clustered_power_law(300, 3, 0.5, RngSeed(s)).unwrap();
            assert!(g.audit());
            assert_eq!(g.edge_count(), 3 * (300 - 3));
            assert_eq!(g.component_count(), 1);
        }
    }

    #[test]
    fn holme_kim_parameter_errors() {
        assert!(clustered_power_law(3, 3, 0.1, RngSeed(0)).is_err());
        assert!(clustered_power_law(10, 0, 0.1, RngSeed(0)).is_err());
        assert!(clustered_power_law(10, 2, -0.1, RngSeed(0)).is_err());
    }

    #[test]
    fn two_communities_layout() {
        let (g, labels) = two_disconnected_ws(100, 6, 0.1, RngSeed(5)).unwrap();
        assert_eq!(g.node_count(), 200);
        assert_eq!(g.component_count(), 2);
        assert!(g.edges().iter().all(|&(u, v)| labels[u] == labels[v]));
        assert!(labels[..100].iter().all(|&c| c == Community::A));
        assert!(labels[100..].iter().all(|&c| c == Community::B));
    }
}
