//! Bridge formation between two communities and minimal-bridge counting.
//!
//! A minimal bridge from A to B for threshold T is a set of exactly T cross
//! edges from T distinct A nodes into a single B node. A pair of bridges,
//! one per direction, is symmetric when the two share an edge.

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contagion::run_gi;
use crate::error::{param, Error, Result};
use crate::generators::{two_disconnected_ws, Community};
use crate::graph::{Adjacency, Graph};
use crate::rng::RngSeed;
use crate::seeding::SeedSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    AToB,
    BToA,
}

/// Whether a threshold cascade started from the whole source community
/// activates at least one node of the other community.
pub fn can_spread<G: Adjacency + ?Sized>(
    g: &G,
    labels: &[Community],
    direction: Direction,
    thresholds: &[u32],
) -> bool {
    let (src, dst) = match direction {
        Direction::AToB => (Community::A, Community::B),
        Direction::BToA => (Community::B, Community::A),
    };
    let n = g.node_count();
    let seeds = SeedSet::from_nodes((0..n).filter(|&v| labels[v] == src), n);
    let rec = run_gi(g, &seeds, thresholds);
    (0..n).any(|v| labels[v] == dst && rec.is_active(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpreadLabel {
    None,
    AToB,
    BToA,
    Symmetric,
}

impl SpreadLabel {
    fn from_flags(ab: bool, ba: bool) -> SpreadLabel {
        match (ab, ba) {
            (false, false) => SpreadLabel::None,
            (true, false) => SpreadLabel::AToB,
            (false, true) => SpreadLabel::BToA,
            (true, true) => SpreadLabel::Symmetric,
        }
    }

    pub fn spreads(self) -> bool {
        self != SpreadLabel::None
    }

    pub fn is_asymmetric(self) -> bool {
        matches!(self, SpreadLabel::AToB | SpreadLabel::BToA)
    }

    pub fn name(self) -> &'static str {
        match self {
            SpreadLabel::None => "none",
            SpreadLabel::AToB => "a_to_b",
            SpreadLabel::BToA => "b_to_a",
            SpreadLabel::Symmetric => "symmetric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BridgeParams {
    /// Nodes per community.
    pub n: usize,
    pub k: usize,
    pub beta: f64,
    pub t: u32,
    /// Probability that a new cross tie is a closure tie.
    pub c: f64,
    pub max_ties: usize,
    /// Closure ties must close a triangle on both sides.
    #[serde(default)]
    pub strict_closure: bool,
}

impl BridgeParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.c) {
            return param(format!(
                "closure probability must lie in [0, 1], got {}",
                self.c
            ));
        }
        if self.t == 0 {
            return param("threshold must be >= 1");
        }
        if self.max_ties > self.n * self.n {
            return param(format!(
                "max_ties {} exceeds the {} possible cross pairs",
                self.max_ties,
                self.n * self.n
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieEvent {
    pub a: usize,
    pub b: usize,
    pub closure: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeTrialResult {
    pub ties_added: Vec<TieEvent>,
    /// Number of cross ties at which some direction first spreads.
    pub first_spread_at: Option<usize>,
    /// `labels[i]` is the state after `i + 1` ties.
    pub labels: Vec<SpreadLabel>,
}

impl BridgeTrialResult {
    pub fn first_spread_label(&self) -> Option<SpreadLabel> {
        self.first_spread_at.map(|i| self.labels[i - 1])
    }
}

/// Cross ties between the two halves of a two-community graph.
struct CrossTies {
    n: usize,
    tied: Vec<bool>,
    /// `(a, b)` with `a < n <= b`.
    list: Vec<(usize, usize)>,
    degree: Vec<u32>,
}

impl CrossTies {
    fn new(n: usize) -> CrossTies {
        CrossTies {
            n,
            tied: vec![false; n * n],
            list: Vec::new(),
            degree: vec![0; 2 * n],
        }
    }

    fn has(&self, a: usize, b: usize) -> bool {
        self.tied[a * self.n + (b - self.n)]
    }

    fn add(&mut self, a: usize, b: usize) {
        self.tied[a * self.n + (b - self.n)] = true;
        self.list.push((a, b));
        self.degree[a] += 1;
        self.degree[b] += 1;
    }

    /// Untied cross pairs closing a triangle through an existing cross tie.
    fn closure_candidates(&self, g: &Graph, strict: bool) -> Vec<(usize, usize)> {
        // via_a: a has a neighbor tied to b; via_b: b has a neighbor tied to a
        let mut via_a = Vec::new();
        let mut via_b = Vec::new();
        for &(x, y) in &self.list {
            via_a.extend(g.neighbors(x).iter().map(|&a| (a, y)));
            via_b.extend(g.neighbors(y).iter().map(|&b| (x, b)));
        }
        via_a.sort_unstable();
        via_a.dedup();
        via_b.sort_unstable();
        via_b.dedup();
        let mut out: Vec<(usize, usize)> = if strict {
            via_a
                .into_iter()
                .filter(|p| via_b.binary_search(p).is_ok())
                .collect()
        } else {
            via_a.extend(via_b);
            via_a.sort_unstable();
            via_a.dedup();
            via_a
        };
        out.retain(|&(a, b)| !self.has(a, b));
        out
    }

    fn random_untied<R: Rng>(&self, rng: &mut R) -> Option<(usize, usize)> {
        let n = self.n;
        if self.list.len() == n * n {
            return None;
        }
        for _ in 0..64 {
            let a = rng.random_range(0..n);
            let b = n + rng.random_range(0..n);
            if !self.has(a, b) {
                return Some((a, b));
            }
        }
        let free: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (n..2 * n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.has(a, b))
            .collect();
        Some(free[rng.random_range(0..free.len())])
    }
}

/// Grows cross ties between two independent small-world communities one at
/// a time and labels which directions a threshold-`t` contagion can cross
/// after each addition.
pub fn bridge_formation_trial(params: &BridgeParams, seed: RngSeed) -> Result<BridgeTrialResult> {
    params.validate()?;
    let (g, _) = two_disconnected_ws(params.n, params.k, params.beta, seed.derive(0))?;
    let mut rng = seed.derive(1).rng();
    let n = params.n;
    let mut cross = CrossTies::new(n);
    let mut result = BridgeTrialResult {
        ties_added: Vec::with_capacity(params.max_ties),
        first_spread_at: None,
        labels: Vec::with_capacity(params.max_ties),
    };
    let (mut ab, mut ba) = (false, false);
    for step in 1..=params.max_ties {
        let mut pick = None;
        if params.c > 0.0 && rng.random_bool(params.c) {
            let cands = cross.closure_candidates(&g, params.strict_closure);
            if !cands.is_empty() {
                pick = Some((cands[rng.random_range(0..cands.len())], true));
            }
        }
        let ((a, b), closure) = match pick {
            Some(p) => p,
            None => (
                cross.random_untied(&mut rng).expect("max_ties checked"),
                false,
            ),
        };
        cross.add(a, b);
        result.ties_added.push(TieEvent { a, b, closure });
        // every source node is active, so a target activates first through
        // cross ties alone
        ab |= cross.degree[b] >= params.t;
        ba |= cross.degree[a] >= params.t;
        let label = SpreadLabel::from_flags(ab, ba);
        if label.spreads() && result.first_spread_at.is_none() {
            result.first_spread_at = Some(step);
        }
        result.labels.push(label);
    }
    Ok(result)
}

/// Rebuilds the graph of a finished trial after `ties` cross ties.
pub fn trial_graph(
    params: &BridgeParams,
    seed: RngSeed,
    trial: &BridgeTrialResult,
    ties: usize,
) -> Result<(Graph, Vec<Community>)> {
    let (g, labels) = two_disconnected_ws(params.n, params.k, params.beta, seed.derive(0))?;
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(trial.ties_added[..ties].iter().map(|e| (e.a, e.b)));
    Ok((Graph::from_edges(g.node_count(), edges)?, labels))
}

/// One row of the bridge experiment table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BridgeCurvePoint {
    pub c: f64,
    pub ties: usize,
    pub trials: usize,
    pub spreadable: usize,
    pub symmetric: usize,
    /// `symmetric / spreadable`; `None` when nothing spreads.
    pub p_sym_given_spread: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeSummary {
    pub c: f64,
    pub trials: usize,
    pub first_symmetric: usize,
    pub first_asymmetric: usize,
    pub never_spread: usize,
    pub curve: Vec<BridgeCurvePoint>,
}

impl BridgeSummary {
    /// Smallest tie count at which P(symmetric | spreadable) exceeds `level`.
    pub fn crossing(&self, level: f64) -> Option<usize> {
        self.curve
            .iter()
            .find(|p| p.p_sym_given_spread.is_some_and(|x| x > level))
            .map(|p| p.ties)
    }
}

/// Runs `trials` independent trials for one closure probability.
pub fn bridge_experiment(
    params: &BridgeParams,
    trials: usize,
    seed: RngSeed,
) -> Result<(BridgeSummary, Vec<BridgeTrialResult>)> {
    params.validate()?;
    let results: Vec<BridgeTrialResult> = (0..trials)
        .into_par_iter()
        .map(|i| bridge_formation_trial(params, seed.derive(i as u64)))
        .collect::<Result<_>>()?;
    let mut curve = Vec::with_capacity(params.max_ties);
    for ties in 1..=params.max_ties {
        let (mut spreadable, mut symmetric) = (0, 0);
        for r in &results {
            let l = r.labels[ties - 1];
            spreadable += usize::from(l.spreads());
            symmetric += usize::from(l == SpreadLabel::Symmetric);
        }
        curve.push(BridgeCurvePoint {
            c: params.c,
            ties,
            trials,
            spreadable,
            symmetric,
            p_sym_given_spread: (spreadable > 0).then(|| symmetric as f64 / spreadable as f64),
        });
    }
    let mut summary = BridgeSummary {
        c: params.c,
        trials,
        first_symmetric: 0,
        first_asymmetric: 0,
        never_spread: 0,
        curve,
    };
    for r in &results {
        match r.first_spread_label() {
            Some(SpreadLabel::Symmetric) => summary.first_symmetric += 1,
            Some(_) => summary.first_asymmetric += 1,
            None => summary.never_spread += 1,
        }
    }
    Ok((summary, results))
}

/// Counts of ordered (A→B, B→A) minimal bridge pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeCount {
    pub n_a: u64,
    pub n_b: u64,
    pub t: u64,
    pub sym: u128,
    pub asym: u128,
    /// `T² / (n_a·n_b − T²)`; `None` when `n_a·n_b <= T²`.
    pub ratio: Option<Ratio<u128>>,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

fn check_counts(n_a: u64, n_b: u64, t: u64) -> Result<()> {
    if t < 1 || n_a < t || n_b < t {
        return param(format!(
            "bridge counts need n_a, n_b >= t >= 1, got ({n_a}, {n_b}, {t})"
        ));
    }
    Ok(())
}

fn closed_ratio(n_a: u64, n_b: u64, t: u64) -> Option<Ratio<u128>> {
    let prod = u128::from(n_a) * u128::from(n_b);
    let t2 = u128::from(t) * u128::from(t);
    (prod > t2).then(|| Ratio::new(t2, prod - t2))
}

/// Closed-form symmetric and asymmetric minimal bridge pair counts.
pub fn count_bridge_pairs(n_a: u64, n_b: u64, t: u64) -> Result<BridgeCount> {
    check_counts(n_a, n_b, t)?;
    let cells = u128::from(n_a) * u128::from(n_b);
    let total = cells * binomial(n_a, t) * binomial(n_b, t);
    let sym = cells * binomial(n_a - 1, t - 1) * binomial(n_b - 1, t - 1);
    Ok(BridgeCount {
        n_a,
        n_b,
        t,
        sym,
        asym: total - sym,
        ratio: closed_ratio(n_a, n_b, t),
    })
}

/// Pairs enumerated before the oracle refuses.
pub const ORACLE_LIMIT: u128 = 50_000_000;

fn subsets(n: u64, t: u64) -> Vec<Vec<u64>> {
    fn rec(start: u64, n: u64, t: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() as u64 == t {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, t, &mut Vec::new(), &mut out);
    out
}

/// Counts bridge pairs by listing every minimal bridge in each direction as
/// an edge set and intersecting every pair.
///
/// Fails if an intersection exceeds one edge or a union has the wrong size.
pub fn enumerate_bridge_pairs_oracle(n_a: u64, n_b: u64, t: u64) -> Result<BridgeCount> {
    check_counts(n_a, n_b, t)?;
    let per_ab = u128::from(n_b) * binomial(n_a, t);
    let per_ba = u128::from(n_a) * binomial(n_b, t);
    if per_ab * per_ba > ORACLE_LIMIT {
        return Err(Error::Refused(format!(
            "{} bridge pairs for ({n_a}, {n_b}, {t})",
            per_ab * per_ba
        )));
    }
    // edges as (a, b) cells, sorted
    let mut ab: Vec<Vec<(u64, u64)>> = Vec::new();
    for target in 0..n_b {
        for src in subsets(n_a, t) {
            ab.push(src.iter().map(|&a| (a, target)).collect());
        }
    }
    let mut ba: Vec<Vec<(u64, u64)>> = Vec::new();
    for target in 0..n_a {
        for src in subsets(n_b, t) {
            ba.push(src.iter().map(|&b| (target, b)).collect());
        }
    }
    for s in ba.iter_mut() {
        s.sort_unstable();
    }
    let (mut sym, mut asym) = (0u128, 0u128);
    for x in &ab {
        for y in &ba {
            let shared = x.iter().filter(|e| y.binary_search(e).is_ok()).count() as u64;
            let mut union: Vec<(u64, u64)> = x.iter().chain(y).copied().collect();
            union.sort_unstable();
            union.dedup();
            let union = union.len() as u64;
            match shared {
                0 => asym += 1,
                1 => sym += 1,
                _ => {
                    return Err(Error::Analysis(format!(
                        "bridges share {shared} edges at ({n_a}, {n_b}, {t})"
                    )))
                }
            }
            if union != 2 * t - shared {
                return Err(Error::Analysis("bridge union has wrong size".into()));
            }
        }
    }
    Ok(BridgeCount {
        n_a,
        n_b,
        t,
        sym,
        asym,
        ratio: closed_ratio(n_a, n_b, t),
    })
}

/// Monte Carlo estimate of the probability that, after dropping `2t` uniform
/// cross ties between two communities of `n` nodes each, some node is
/// incident to at least `t` of them. Endpoints are drawn independently, so
/// repeated ties are possible.
pub fn incidence_tail_estimate(n: usize, t: u32, trials: usize, seed: RngSeed) -> f64 {
    let chunks = 64usize;
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = trials * c / chunks;
            let hi = trials * (c + 1) / chunks;
            let mut rng = seed.derive(c as u64).rng();
            let mut count = vec![0u32; 2 * n];
            let mut touched = Vec::with_capacity(4 * t as usize);
            let mut hits = 0;
            for _ in lo..hi {
                let mut hit = false;
                for _ in 0..2 * t {
                    let a = rng.random_range(0..n);
                    let b = n + rng.random_range(0..n);
                    for v in [a, b] {
                        count[v] += 1;
                        touched.push(v);
                        hit |= count[v] >= t;
                    }
                }
                hits += usize::from(hit);
                for v in touched.drain(..) {
                    count[v] = 0;
                }
            }
            hits
        })
        .sum();
    hits as f64 / trials as f64
}

/// Union bound `2N(T+1)(4/N)^T` on the incidence tail probability.
pub fn incidence_tail_bound(n: usize, t: u32) -> f64 {
    2.0 * n as f64 * (t as f64 + 1.0) * (4.0 / n as f64).powi(t as i32)
}

/// Symmetric-to-asymmetric odds under independent directions, `P/(2(1−P))`.
pub fn symmetric_odds(p: f64) -> Option<f64> {
    (p < 1.0).then(|| p / (2.0 * (1.0 - p)))
}
