//! Causal subgraphs and node/tie importance counts.
//!
//! The causal subgraph of an active target `m` is the closure of `m` under
//! "active neighbor that activated strictly earlier". A node's importance
//! (NI) is the number of causal subgraphs it belongs to; a directed tie's
//! importance (TI) is the number of causal subgraphs containing that edge
//! oriented from the earlier to the later endpoint.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contagion::{CascadeRecord, Dynamics, ModelSpec};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};
use crate::rng::RngSeed;
use crate::seeding::{sample_seed_set, SeedMode, SeedSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalSubgraph {
    /// Sorted member nodes.
    pub nodes: Vec<usize>,
    /// Directed edges `(earlier, later)`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// Back-traces the causal subgraph of `target`.
pub fn causal_subgraph(rec: &CascadeRecord, g: &Graph, target: usize) -> Result<CausalSubgraph> {
    let times = &rec.activation_time;
    let Some(Some(_)) = times.get(target) else {
        return Err(Error::Argument(format!("target {target} is not active")));
    };
    let mut inside = vec![false; g.node_count()];
    inside[target] = true;
    let mut stack = vec![target];
    let mut nodes = vec![target];
    let mut edges = Vec::new();
    while let Some(v) = stack.pop() {
        let tv = times[v].expect("members are active");
        for &u in g.neighbors(v) {
            match times[u] {
                Some(tu) if tu < tv => {
                    edges.push((u, v));
                    if !inside[u] {
                        inside[u] = true;
                        nodes.push(u);
                        stack.push(u);
                    }
                }
                _ => {}
            }
        }
    }
    nodes.sort_unstable();
    edges.sort_unstable();
    Ok(CausalSubgraph { nodes, edges })
}

/// Raw and normalized importance counts.
///
/// Tie counts are indexed by directed edge: `2e` is `lo -> hi` and `2e + 1`
/// is `hi -> lo` for edge id `e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalScores {
    pub ni_raw: Vec<u64>,
    pub ti_raw: Vec<u64>,
    pub ni_norm: Vec<f64>,
    pub ti_norm: Vec<f64>,
    pub sweeps: usize,
    pub runs: u64,
    /// Total active nodes over all runs.
    pub activations: u64,
    /// Set by `normalize` when every count is zero.
    pub all_zero: bool,
}

impl CausalScores {
    pub fn new(g: &Graph) -> CausalScores {
        CausalScores {
            ni_raw: vec![0; g.node_count()],
            ti_raw: vec![0; 2 * g.edge_count()],
            ni_norm: Vec::new(),
            ti_norm: Vec::new(),
            sweeps: 0,
            runs: 0,
            activations: 0,
            all_zero: false,
        }
    }

    /// Index into the tie arrays for the directed edge `u -> v`.
    pub fn directed_index(g: &Graph, u: usize, v: usize) -> Option<usize> {
        g.edge_id(u, v).map(|e| 2 * e + usize::from(u > v))
    }

    pub fn ti_raw_of(&self, g: &Graph, u: usize, v: usize) -> Option<u64> {
        Self::directed_index(g, u, v).map(|i| self.ti_raw[i])
    }

    pub fn ti_norm_of(&self, g: &Graph, u: usize, v: usize) -> Option<f64> {
        Self::directed_index(g, u, v).and_then(|i| self.ti_norm.get(i).copied())
    }

    /// `(TI(lo,hi), TI(hi,lo))` for edge id `e`.
    pub fn edge_pair(&self, e: usize) -> (u64, u64) {
        (self.ti_raw[2 * e], self.ti_raw[2 * e + 1])
    }

    /// Adds another table's raw counts into this one.
    pub fn merge(&mut self, other: &CausalScores) {
        for (a, b) in self.ni_raw.iter_mut().zip(&other.ni_raw) {
            *a += b;
        }
        for (a, b) in self.ti_raw.iter_mut().zip(&other.ti_raw) {
            *a += b;
        }
        self.runs += other.runs;
        self.sweeps += other.sweeps;
        self.activations += other.activations;
    }

    /// Mean spreading density over the aggregated runs.
    pub fn mean_density(&self) -> f64 {
        let n = self.ni_raw.len() as u64;
        if self.runs == 0 || n == 0 {
            0.0
        } else {
            self.activations as f64 / (self.runs * n) as f64
        }
    }

    /// Divides each count by the largest count of its kind.
    pub fn normalize(&mut self) {
        fn scale(raw: &[u64]) -> Vec<f64> {
            let max = raw.iter().copied().max().unwrap_or(0);
            if max == 0 {
                vec![0.0; raw.len()]
            } else {
                raw.iter().map(|&x| x as f64 / max as f64).collect()
            }
        }
        self.ni_norm = scale(&self.ni_raw);
        self.ti_norm = scale(&self.ti_raw);
        self.all_zero = self.ni_raw.iter().all(|&x| x == 0);
    }

    pub fn write_node_csv<W: Write>(&self, g: &Graph, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node", "ni_raw", "ni_norm"])?;
        for v in 0..g.node_count() {
            let norm = self.ni_norm.get(v).copied().unwrap_or(0.0);
            w.write_record([g.label(v), self.ni_raw[v].to_string(), norm.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_tie_csv<W: Write>(&self, g: &Graph, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["src", "dst", "ti_raw", "ti_norm"])?;
        for (e, &(lo, hi)) in g.edges().iter().enumerate() {
            for (k, (s, d)) in [(lo, hi), (hi, lo)].into_iter().enumerate() {
                let i = 2 * e + k;
                let norm = self.ti_norm.get(i).copied().unwrap_or(0.0);
                w.write_record([
                    g.label(s),
                    g.label(d),
                    self.ti_raw[i].to_string(),
                    norm.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Adds one cascade's causal subgraph counts to `scores`.
///
/// Rather than tracing every target separately, nodes are visited from the
/// latest activation backwards while building, for each active node `v`, the
/// set of targets whose causal subgraph contains `v`: `v` itself plus the
/// sets of its later-activated neighbors. `NI(v)` grows by the size of that
/// set and `TI(v -> u)` by the size of `u`'s set, since `u` in a subgraph
/// implies `v` is there too.
pub fn accumulate(rec: &CascadeRecord, g: &Graph, scores: &mut CausalScores) {
    let times = &rec.activation_time;
    let mut active: Vec<usize> = (0..g.node_count())
        .filter(|&v| times[v].is_some())
        .collect();
    active.sort_by_key(|&v| std::cmp::Reverse(times[v]));
    let mut slot = vec![usize::MAX; g.node_count()];
    for (i, &v) in active.iter().enumerate() {
        slot[v] = i;
    }
    let words = active.len().div_ceil(64);
    let mut sets = vec![0u64; words * active.len()];
    let mut sizes = vec![0u64; active.len()];
    for (i, &v) in active.iter().enumerate() {
        let tv = times[v];
        let (done, rest) = sets.split_at_mut(i * words);
        let mine = &mut rest[..words];
        mine[i / 64] |= 1 << (i % 64);
        for (&u, &e) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
            if times[u].is_some() && times[u] > tv {
                let j = slot[u];
                for (a, b) in mine.iter_mut().zip(&done[j * words..(j + 1) * words]) {
                    *a |= b;
                }
                scores.ti_raw[2 * e + usize::from(v > u)] += sizes[j];
            }
        }
        sizes[i] = mine.iter().map(|w| u64::from(w.count_ones())).sum();
        scores.ni_raw[v] += sizes[i];
    }
    scores.runs += 1;
    scores.activations += active.len() as u64;
}

/// Sweep-by-sweep raw counts: entry `s` holds the counts of sweep `s` alone
/// (`|V|` cascades, each from a freshly sampled seed set).
pub fn sweep_partials(
    g: &Graph,
    model: &ModelSpec,
    seed_mode: SeedMode,
    p: f64,
    sweeps: usize,
    seed: RngSeed,
) -> Result<Vec<CausalScores>> {
    if sweeps == 0 {
        return Err(Error::Parameter("sweeps must be >= 1".into()));
    }
    let dynamics = Dynamics::new(g, model)?;
    let n = g.node_count() as u64;
    (0..sweeps)
        .map(|s| {
            let runs = (s as u64 * n)..((s as u64 + 1) * n);
            let mut part = runs
                .into_par_iter()
                .try_fold(
                    || CausalScores::new(g),
                    |mut acc, r| -> Result<CausalScores> {
                        let seeds = sample_seed_set(g, seed_mode, p, seed.derive2(r, 0))?;
                        let rec = dynamics.run(g, &seeds, &mut seed.derive2(r, 1).rng());
                        accumulate(&rec, g, &mut acc);
                        Ok(acc)
                    },
                )
                .try_reduce(
                    || CausalScores::new(g),
                    |mut a, b| {
                        a.merge(&b);
                        Ok(a)
                    },
                )?;
            part.sweeps = 1;
            Ok(part)
        })
        .collect()
}

/// Runs `sweeps · |V|` seeded cascades and returns normalized scores.
pub fn aggregate_sweeps(
    g: &Graph,
    model: &ModelSpec,
    seed_mode: SeedMode,
    p: f64,
    sweeps: usize,
    seed: RngSeed,
) -> Result<CausalScores> {
    let mut total = CausalScores::new(g);
    for part in sweep_partials(g, model, seed_mode, p, sweeps, seed)? {
        total.merge(&part);
    }
    total.normalize();
    Ok(total)
}

/// Runs every given seed set `runs_per_set` times and returns normalized
/// scores. Used for exhaustive seed families.
pub fn aggregate_seed_sets(
    g: &Graph,
    model: &ModelSpec,
    seed_sets: &[SeedSet],
    runs_per_set: usize,
    seed: RngSeed,
) -> Result<CausalScores> {
    let dynamics = Dynamics::new(g, model)?;
    let jobs = seed_sets.len() * runs_per_set;
    let mut total = (0..jobs)
        .into_par_iter()
        .fold(
            || CausalScores::new(g),
            |mut acc, r| {
                let set = &seed_sets[r / runs_per_set];
                let rec = dynamics.run(g, set, &mut seed.derive(r as u64).rng());
                accumulate(&rec, g, &mut acc);
                acc
            },
        )
        .reduce(
            || CausalScores::new(g),
            |mut a, b| {
                a.merge(&b);
                a
            },
        );
    total.sweeps = 1;
    total.normalize();
    Ok(total)
}
