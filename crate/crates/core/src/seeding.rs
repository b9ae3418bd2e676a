//! Seed-set samplers: uniform random (RS) and random clustered (RCS).

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::graph::{Adjacency, Graph};
use crate::rng::RngSeed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedMode {
    /// Uniform random subset.
    Rs,
    /// Random clustered subset: every seed has a seed neighbor.
    Rcs,
}

impl std::str::FromStr for SeedMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rs" => Ok(SeedMode::Rs),
            "rcs" | "cs" => Ok(SeedMode::Rcs),
            other => param(format!("unknown seed mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSet {
    /// Sorted node indices.
    pub members: Vec<usize>,
    pub fraction: f64,
}

impl SeedSet {
    /// Wraps an explicit node list (deduplicated and sorted).
    pub fn from_nodes(nodes: impl IntoIterator<Item = usize>, node_count: usize) -> SeedSet {
        let members: BTreeSet<usize> = nodes.into_iter().collect();
        let fraction = if node_count == 0 {
            0.0
        } else {
            members.len() as f64 / node_count as f64
        };
        SeedSet {
            members: members.into_iter().collect(),
            fraction,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// `⌈p·n⌉`, at least 1, with products that are integral up to rounding error
/// (0.05 × 200) not pushed to the next integer.
pub fn target_size(p: f64, n: usize) -> Result<usize> {
    if !(p > 0.0 && p <= 1.0) {
        return param(format!("seed fraction must lie in (0, 1], got {p}"));
    }
    let raw = p * n as f64;
    let size = (raw - 1e-9 * raw.max(1.0)).ceil().max(1.0) as usize;
    Ok(size.min(n))
}

pub fn random_seed_set(g: &Graph, p: f64, seed: RngSeed) -> Result<SeedSet> {
    let n = g.node_count();
    let s = target_size(p, n)?;
    let mut rng = seed.rng();
    let mut members = sample(&mut rng, n, s).into_vec();
    members.sort_unstable();
    Ok(SeedSet {
        members,
        fraction: p,
    })
}

/// Clustered seed set grown by frontier expansion.
///
/// A uniform start node is picked and the set grows by adding uniform nodes
/// from its frontier (unseeded neighbors of the set). When the frontier
/// empties the current components are fully seeded, so growth restarts from
/// a new uniform unseeded node, which immediately takes one neighbor with it.
/// Every member of a component larger than one node ends with a seed
/// neighbor, and the size is exactly `⌈p·n⌉`.
///
/// With a single slot left and no frontier, an isolated node is taken if one
/// exists; otherwise a seed whose removal keeps the invariant is dropped to
/// make room for a fresh pair. If neither is possible the request is
/// unsatisfiable and an error is returned.
pub fn random_clustered_seed_set(g: &Graph, p: f64, seed: RngSeed) -> Result<SeedSet> {
    let n = g.node_count();
    let s = target_size(p, n)?;
    let mut rng = seed.rng();
    let mut seeded = vec![false; n];
    let mut members: Vec<usize> = Vec::with_capacity(s);
    // frontier as a set with O(1) uniform pick and removal
    let mut frontier: Vec<usize> = Vec::new();
    let mut in_frontier = vec![false; n];

    fn add(
        v: usize,
        g: &Graph,
        seeded: &mut [bool],
        members: &mut Vec<usize>,
        frontier: &mut Vec<usize>,
        in_frontier: &mut [bool],
    ) {
        seeded[v] = true;
        members.push(v);
        if in_frontier[v] {
            let pos = frontier.iter().position(|&x| x == v).expect("in frontier");
            frontier.swap_remove(pos);
            in_frontier[v] = false;
        }
        for &w in g.neighbors(v) {
            if !seeded[w] && !in_frontier[w] {
                in_frontier[w] = true;
                frontier.push(w);
            }
        }
    }

    let mut dropped: Option<usize> = None;
    while members.len() < s {
        if !frontier.is_empty() {
            let v = frontier[rng.random_range(0..frontier.len())];
            add(
                v,
                g,
                &mut seeded,
                &mut members,
                &mut frontier,
                &mut in_frontier,
            );
            continue;
        }
        let remaining = s - members.len();
        let unseeded: Vec<usize> = (0..n).filter(|&v| !seeded[v]).collect();
        if remaining == 1 {
            let isolated: Vec<usize> = unseeded
                .iter()
                .copied()
                .filter(|&v| g.degree(v) == 0)
                .collect();
            if !isolated.is_empty() {
                let v = isolated[rng.random_range(0..isolated.len())];
                add(
                    v,
                    g,
                    &mut seeded,
                    &mut members,
                    &mut frontier,
                    &mut in_frontier,
                );
                continue;
            }
            let droppable = members
                .iter()
                .copied()
                .find(|&u| can_drop(g, &seeded, u))
                .filter(|_| unseeded.iter().any(|&v| g.degree(v) > 0));
            let Some(u) = droppable else {
                return Err(Error::Argument(format!(
                    "no clustered seed set of size {s} exists in this graph"
                )));
            };
            seeded[u] = false;
            members.retain(|&x| x != u);
            // u's neighbours are all seeded, so it cannot start a new pair
            dropped = Some(u);
        }
        let unseeded: Vec<usize> = (0..n)
            .filter(|&v| !seeded[v] && Some(v) != dropped)
            .collect();
        let candidates: Vec<usize> = if s - members.len() >= 2 {
            unseeded
        } else {
            unseeded.into_iter().filter(|&v| g.degree(v) > 0).collect()
        };
        let start = candidates[rng.random_range(0..candidates.len())];
        add(
            start,
            g,
            &mut seeded,
            &mut members,
            &mut frontier,
            &mut in_frontier,
        );
        if g.degree(start) > 0 && members.len() < s {
            let v = frontier[rng.random_range(0..frontier.len())];
            add(
                v,
                g,
                &mut seeded,
                &mut members,
                &mut frontier,
                &mut in_frontier,
            );
        }
    }
    members.sort_unstable();
    Ok(SeedSet {
        members,
        fraction: p,
    })
}

/// True when removing seed `u` leaves every other non-isolated seed with a
/// seed neighbor.
fn can_drop(g: &Graph, seeded: &[bool], u: usize) -> bool {
    g.neighbors(u)
        .iter()
        .filter(|&&w| seeded[w])
        .all(|&w| g.neighbors(w).iter().any(|&x| x != u && seeded[x]))
}

pub fn sample_seed_set(g: &Graph, mode: SeedMode, p: f64, seed: RngSeed) -> Result<SeedSet> {
    match mode {
        SeedMode::Rs => random_seed_set(g, p, seed),
        SeedMode::Rcs => random_clustered_seed_set(g, p, seed),
    }
}

/// Checks the clustered-seed invariant.
pub fn is_clustered(g: &Graph, seeds: &SeedSet) -> bool {
    let labels = g.component_labels();
    let mut comp_size = vec![0usize; g.node_count()];
    for &l in &labels {
        comp_size[l] += 1;
    }
    seeds
        .members
        .iter()
        .all(|&v| comp_size[labels[v]] == 1 || g.neighbors(v).iter().any(|&w| seeds.contains(w)))
}
