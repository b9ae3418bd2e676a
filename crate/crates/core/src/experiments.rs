//! Scenario grids over graphs and thresholds, and the tables built from them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::causal::{aggregate_sweeps, sweep_partials, CausalScores};
use crate::contagion::{ModelSpec, ThresholdSpec};
use crate::error::{param, Error, Result};
use crate::generators::{clustered_power_law, watts_strogatz};
use crate::graph::{
    load_edge_list, tie_range, tie_strength_terciles, Adjacency, Graph, Tercile, TieRange,
};
use crate::metrics::{flow_alignment, flow_symmetry_with, pearson, SymmetryOptions};
use crate::rng::RngSeed;
use crate::seeding::SeedMode;
use crate::stats::{correlation_test, mean, standard_error, Correlation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphSource {
    Ws { n: usize, k: usize, beta: f64 },
    PowerLaw { n: usize, m: usize, p: f64 },
    EdgeList { path: PathBuf },
}

impl GraphSource {
    pub fn build(&self, seed: RngSeed) -> Result<Graph> {
        match self {
            GraphSource::Ws { n, k, beta } => watts_strogatz(*n, *k, *beta, seed),
            GraphSource::PowerLaw { n, m, p } => clustered_power_law(*n, *m, *p, seed),
            GraphSource::EdgeList { path } => load_edge_list(&std::fs::read_to_string(path)?),
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match self {
            GraphSource::Ws { beta, .. } => Some(*beta),
            _ => None,
        }
    }

    pub fn is_random(&self) -> bool {
        !matches!(self, GraphSource::EdgeList { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            GraphSource::Ws { n, k, beta } => format!("ws(n={n},k={k},beta={beta})"),
            GraphSource::PowerLaw { n, m, p } => format!("powerlaw(n={n},m={m},p={p})"),
            GraphSource::EdgeList { path } => format!("edgelist({})", path.display()),
        }
    }
}

/// Undirected reading of a tie's two directed importances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieAggregate {
    #[default]
    Max,
    Sum,
}

fn one() -> usize {
    1
}

fn ten() -> usize {
    10
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub graphs: Vec<GraphSource>,
    /// Independent draws per random graph source.
    #[serde(default = "one")]
    pub replicates: usize,
    pub model: ModelSpec,
    /// Threshold sweep; empty means the model's own threshold.
    #[serde(default)]
    pub thresholds: Vec<ThresholdSpec>,
    pub seed_mode: SeedMode,
    pub seed_fraction: f64,
    pub sweeps: usize,
    pub seed: RngSeed,
    /// Minimum mean spreading density for a scenario to be included.
    #[serde(default)]
    pub density_filter: Option<f64>,
    #[serde(default)]
    pub symmetry: SymmetryOptions,
    #[serde(default)]
    pub tie_aggregate: TieAggregate,
    /// Number of importance bins in the tie-range table.
    #[serde(default = "ten")]
    pub importance_bins: usize,
}

impl ScenarioConfig {
    pub fn new(graphs: Vec<GraphSource>, model: ModelSpec, seed: RngSeed) -> ScenarioConfig {
        ScenarioConfig {
            graphs,
            replicates: 1,
            model,
            thresholds: Vec::new(),
            seed_mode: SeedMode::Rcs,
            seed_fraction: 0.05,
            sweeps: 2,
            seed,
            density_filter: None,
            symmetry: SymmetryOptions::default(),
            tie_aggregate: TieAggregate::Max,
            importance_bins: 10,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<ScenarioConfig> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<ScenarioConfig> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.graphs.is_empty() {
            return param("config lists no graphs");
        }
        if self.replicates == 0 || self.sweeps == 0 {
            return param("replicates and sweeps must be >= 1");
        }
        if !(self.seed_fraction > 0.0 && self.seed_fraction <= 1.0) {
            return param(format!(
                "seed fraction must lie in (0, 1], got {}",
                self.seed_fraction
            ));
        }
        if let Some(d) = self.density_filter {
            if !(0.0..=1.0).contains(&d) {
                return param(format!("density filter must lie in [0, 1], got {d}"));
            }
        }
        if self.importance_bins == 0 {
            return param("importance_bins must be >= 1");
        }
        self.model.validate()?;
        for t in &self.thresholds {
            t.validate()?;
        }
        Ok(())
    }

    /// The threshold sweep as concrete models.
    pub fn models(&self) -> Vec<ModelSpec> {
        if self.thresholds.is_empty() {
            vec![self.model]
        } else {
            self.thresholds
                .iter()
                .map(|&t| self.model.with_threshold(t))
                .collect()
        }
    }

    /// Every graph instance: random sources are drawn `replicates` times.
    pub fn graph_instances(&self) -> Result<Vec<GraphInstance>> {
        let mut out = Vec::new();
        for (s, source) in self.graphs.iter().enumerate() {
            let reps = if source.is_random() {
                self.replicates
            } else {
                1
            };
            for r in 0..reps {
                let graph = source.build(self.seed.derive(1).derive2(s as u64, r as u64))?;
                out.push(GraphInstance {
                    index: out.len(),
                    source_index: s,
                    replicate: r,
                    source: source.clone(),
                    graph,
                });
            }
        }
        Ok(out)
    }

    fn included(&self, density: f64) -> bool {
        self.density_filter.is_none_or(|d| density > d)
    }

    /// Aggregates every (graph, threshold) scenario in order and hands the
    /// scores to `visit`. All thresholds on one graph share the seed-set
    /// stream, so threshold comparisons use the same seed sets.
    pub fn for_each_scenario<F>(&self, mut visit: F) -> Result<()>
    where
        F: FnMut(&GraphInstance, &ModelSpec, &CausalScores) -> Result<()>,
    {
        self.validate()?;
        let models = self.models();
        for inst in self.graph_instances()? {
            let seed = self.seed.derive(2).derive(inst.index as u64);
            for model in &models {
                let scores = aggregate_sweeps(
                    &inst.graph,
                    model,
                    self.seed_mode,
                    self.seed_fraction,
                    self.sweeps,
                    seed,
                )?;
                visit(&inst, model, &scores)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GraphInstance {
    pub index: usize,
    pub source_index: usize,
    pub replicate: usize,
    pub source: GraphSource,
    pub graph: Graph,
}

fn threshold_of(model: &ModelSpec) -> (String, Option<f64>) {
    match model.threshold() {
        Some(t) => (t.mode_name().to_string(), Some(t.value())),
        None => (model.family().to_string(), None),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryRow {
    pub graph: usize,
    pub source: String,
    pub beta: Option<f64>,
    pub threshold_mode: String,
    pub threshold: Option<f64>,
    pub density: f64,
    pub xi_s: Option<f64>,
    pub xi_s_used_only: Option<f64>,
    pub n_edges: usize,
    pub included: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryTable {
    pub rows: Vec<SymmetryRow>,
    /// Threshold against Ξ_s over included rows.
    pub pooled: Correlation,
    /// Same, with never-used edges left out of Ξ_s.
    pub pooled_used_only: Correlation,
    pub warning: Option<String>,
}

pub fn symmetry_vs_threshold(cfg: &ScenarioConfig) -> Result<SymmetryTable> {
    let mut rows = Vec::new();
    cfg.for_each_scenario(|inst, model, scores| {
        let all = flow_symmetry_with(
            scores,
            &inst.graph,
            SymmetryOptions {
                exclude_unused: false,
                ..cfg.symmetry
            },
        );
        let used = flow_symmetry_with(
            scores,
            &inst.graph,
            SymmetryOptions {
                exclude_unused: true,
                ..cfg.symmetry
            },
        );
        let (mode, value) = threshold_of(model);
        let density = scores.mean_density();
        rows.push(SymmetryRow {
            graph: inst.index,
            source: inst.source.describe(),
            beta: inst.source.beta(),
            threshold_mode: mode,
            threshold: value,
            density,
            xi_s: all.xi_s,
            xi_s_used_only: used.xi_s,
            n_edges: all.n_edges,
            included: cfg.included(density),
        });
        Ok(())
    })?;
    let pooled_on = |pick: fn(&SymmetryRow) -> Option<f64>| -> Result<Correlation> {
        let (x, y): (Vec<f64>, Vec<f64>) = rows
            .iter()
            .filter(|r| r.included)
            .filter_map(|r| Some((r.threshold?, pick(r)?)))
            .unzip();
        correlation_test(&x, &y)
    };
    let pooled = pooled_on(|r| r.xi_s)?;
    let pooled_used_only = pooled_on(|r| r.xi_s_used_only)?;
    let warning = (!rows.iter().any(|r| r.included))
        .then(|| "every scenario was removed by the density filter".to_string());
    Ok(SymmetryTable {
        rows,
        pooled,
        pooled_used_only,
        warning,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TieEdgeRecord {
    pub graph: usize,
    pub threshold: Option<f64>,
    pub src: usize,
    pub dst: usize,
    /// `None` for bridges with no alternative route.
    pub range: Option<u32>,
    pub ti_fwd: f64,
    pub ti_bwd: f64,
    pub max_ti: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TieRangeCell {
    pub range: u32,
    pub max_ti_lo: f64,
    pub max_ti_hi: f64,
    pub count: usize,
    pub mean_delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TieRangeTable {
    pub edges: Vec<TieEdgeRecord>,
    pub cells: Vec<TieRangeCell>,
    /// Range against delta for finite-range edges with max importance above
    /// the median.
    pub high_importance: Correlation,
    pub median_max_ti: Option<f64>,
}

pub fn median(x: &[f64]) -> Option<f64> {
    if x.is_empty() {
        return None;
    }
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    })
}

pub fn tie_range_asymmetry(cfg: &ScenarioConfig) -> Result<TieRangeTable> {
    let mut edges = Vec::new();
    let mut ranges: BTreeMap<usize, Vec<TieRange>> = BTreeMap::new();
    cfg.for_each_scenario(|inst, model, scores| {
        if !cfg.included(scores.mean_density()) {
            return Ok(());
        }
        let g = &inst.graph;
        let r = match ranges.get(&inst.index) {
            Some(r) => r.clone(),
            None => {
                let r = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| tie_range(g, u, v))
                    .collect::<Result<Vec<_>>>()?;
                ranges.insert(inst.index, r.clone());
                r
            }
        };
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let fwd = scores.ti_norm[2 * e];
            let bwd = scores.ti_norm[2 * e + 1];
            edges.push(TieEdgeRecord {
                graph: inst.index,
                threshold: model.threshold().map(|t| t.value()),
                src: u,
                dst: v,
                range: r[e].finite(),
                ti_fwd: fwd,
                ti_bwd: bwd,
                max_ti: fwd.max(bwd),
                delta: (fwd - bwd).abs(),
            });
        }
        Ok(())
    })?;

    let bins = cfg.importance_bins;
    let mut acc: BTreeMap<(u32, usize), (usize, f64)> = BTreeMap::new();
    for rec in &edges {
        if let Some(r) = rec.range {
            let b = ((rec.max_ti * bins as f64) as usize).min(bins - 1);
            let cell = acc.entry((r, b)).or_insert((0, 0.0));
            cell.0 += 1;
            cell.1 += rec.delta;
        }
    }
    let cells = acc
        .into_iter()
        .map(|((range, b), (count, sum))| TieRangeCell {
            range,
            max_ti_lo: b as f64 / bins as f64,
            max_ti_hi: (b + 1) as f64 / bins as f64,
            count,
            mean_delta: sum / count as f64,
        })
        .collect();

    let finite: Vec<&TieEdgeRecord> = edges.iter().filter(|e| e.range.is_some()).collect();
    let maxes: Vec<f64> = finite.iter().map(|e| e.max_ti).collect();
    let med = median(&maxes);
    let (x, y): (Vec<f64>, Vec<f64>) = finite
        .iter()
        .filter(|e| med.is_some_and(|m| e.max_ti > m))
        .map(|e| (f64::from(e.range.expect("finite")), e.delta))
        .unzip();
    Ok(TieRangeTable {
        edges,
        cells,
        high_importance: correlation_test(&x, &y)?,
        median_max_ti: med,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TercileRow {
    pub graph: Option<usize>,
    pub threshold: Option<f64>,
    pub tercile: Tercile,
    pub count: usize,
    pub mean_ti: Option<f64>,
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TieStrengthTable {
    /// Per graph and threshold.
    pub rows: Vec<TercileRow>,
    /// All included scenarios pooled, one row per tercile.
    pub pooled: Vec<TercileRow>,
    pub undefined_edges: usize,
}

pub fn tie_strength_importance(cfg: &ScenarioConfig) -> Result<TieStrengthTable> {
    let mut rows = Vec::new();
    let mut pooled: [Vec<f64>; 3] = Default::default();
    let mut splits = BTreeMap::new();
    let mut undefined_edges = 0;
    cfg.for_each_scenario(|inst, model, scores| {
        if let std::collections::btree_map::Entry::Vacant(slot) = splits.entry(inst.index) {
            let split = tie_strength_terciles(&inst.graph)?;
            undefined_edges += split.undefined.len();
            slot.insert(split);
        }
        if !cfg.included(scores.mean_density()) {
            return Ok(());
        }
        let split = &splits[&inst.index];
        let mut groups: [Vec<f64>; 3] = Default::default();
        for (e, label) in split.labels.iter().enumerate() {
            let Some(t) = label else { continue };
            let (a, b) = (scores.ti_norm[2 * e], scores.ti_norm[2 * e + 1]);
            let value = match cfg.tie_aggregate {
                TieAggregate::Max => a.max(b),
                TieAggregate::Sum => a + b,
            };
            groups[t.index()].push(value);
        }
        for t in Tercile::ALL {
            let g = &groups[t.index()];
            rows.push(TercileRow {
                graph: Some(inst.index),
                threshold: model.threshold().map(|t| t.value()),
                tercile: t,
                count: g.len(),
                mean_ti: mean(g),
                std_error: standard_error(g),
            });
            pooled[t.index()].extend_from_slice(g);
        }
        Ok(())
    })?;
    let pooled = Tercile::ALL
        .iter()
        .map(|&t| {
            let g = &pooled[t.index()];
            TercileRow {
                graph: None,
                threshold: None,
                tercile: t,
                count: g.len(),
                mean_ti: mean(g),
                std_error: standard_error(g),
            }
        })
        .collect();
    Ok(TieStrengthTable {
        rows,
        pooled,
        undefined_edges,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeripheryRow {
    pub graph: usize,
    pub threshold_mode: String,
    pub threshold: Option<f64>,
    pub density: f64,
    pub rho_ds_dk: Option<f64>,
    pub rho_ni_k: Option<f64>,
    pub rho_nik_k: Option<f64>,
    pub included: bool,
}

pub fn periphery_core_sweep(cfg: &ScenarioConfig) -> Result<Vec<PeripheryRow>> {
    let mut rows = Vec::new();
    cfg.for_each_scenario(|inst, model, scores| {
        let fa = flow_alignment(scores, &inst.graph);
        let (mode, value) = threshold_of(model);
        let density = scores.mean_density();
        rows.push(PeripheryRow {
            graph: inst.index,
            threshold_mode: mode,
            threshold: value,
            density,
            rho_ds_dk: fa.rho_ds_dk,
            rho_ni_k: fa.rho_ni_k,
            rho_nik_k: fa.rho_nik_k,
            included: cfg.included(density),
        });
        Ok(())
    })?;
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewiringRow {
    pub beta: Option<f64>,
    pub threshold: Option<f64>,
    pub graphs: usize,
    pub mean_density: f64,
    pub mean_xi_s: Option<f64>,
    pub defined: usize,
}

/// Mean density and Ξ_s per rewiring probability (and threshold).
pub fn rewiring_dip(cfg: &ScenarioConfig) -> Result<Vec<RewiringRow>> {
    let table = symmetry_vs_threshold(cfg)?;
    // keyed by source order so betas stay in config order
    type Key = (Option<f64>, Option<f64>);
    let mut groups: Vec<(Key, Vec<&SymmetryRow>)> = Vec::new();
    for row in &table.rows {
        let key = (row.beta, row.threshold);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(row),
            None => groups.push((key, vec![row])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|((beta, threshold), rs)| {
            let dens: Vec<f64> = rs.iter().map(|r| r.density).collect();
            let xs: Vec<f64> = rs.iter().filter_map(|r| r.xi_s).collect();
            RewiringRow {
                beta,
                threshold,
                graphs: rs.len(),
                mean_density: mean(&dens).unwrap_or(0.0),
                mean_xi_s: mean(&xs),
                defined: xs.len(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub graph: usize,
    pub nodes: usize,
    pub sweeps: usize,
    pub ni_corr: Option<f64>,
    pub ti_corr: Option<f64>,
    pub symmetry_diff_pct: Option<f64>,
}

impl ConvergenceRow {
    pub fn meets(&self, min_corr: f64, max_diff_pct: f64) -> bool {
        self.ni_corr.is_some_and(|c| c > min_corr)
            && self.ti_corr.is_some_and(|c| c > min_corr)
            && self.symmetry_diff_pct.is_some_and(|d| d < max_diff_pct)
    }
}

fn as_f64(x: &[u64]) -> Vec<f64> {
    x.iter().map(|&v| v as f64).collect()
}

/// Two independent aggregations for every sweep count `1..=max_sweeps`,
/// compared by NI and TI correlation and relative Ξ_s difference.
pub fn convergence_series(
    g: &Graph,
    model: &ModelSpec,
    seed_mode: SeedMode,
    p: f64,
    max_sweeps: usize,
    seed: RngSeed,
) -> Result<Vec<ConvergenceRow>> {
    let first = sweep_partials(g, model, seed_mode, p, max_sweeps, seed.derive(0))?;
    let second = sweep_partials(g, model, seed_mode, p, max_sweeps, seed.derive(1))?;
    let mut a = CausalScores::new(g);
    let mut b = CausalScores::new(g);
    let mut rows = Vec::with_capacity(max_sweeps);
    for (s, (pa, pb)) in first.iter().zip(&second).enumerate() {
        a.merge(pa);
        b.merge(pb);
        let xa = flow_symmetry_with(&a, g, SymmetryOptions::default()).xi_s;
        let xb = flow_symmetry_with(&b, g, SymmetryOptions::default()).xi_s;
        rows.push(ConvergenceRow {
            graph: 0,
            nodes: g.node_count(),
            sweeps: s + 1,
            ni_corr: pearson(&as_f64(&a.ni_raw), &as_f64(&b.ni_raw))?,
            ti_corr: pearson(&as_f64(&a.ti_raw), &as_f64(&b.ti_raw))?,
            symmetry_diff_pct: match (xa, xb) {
                (Some(x), Some(y)) => Some((x - y).abs() / x.abs().max(1e-12) * 100.0),
                _ => None,
            },
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Per graph: first sweep count meeting both criteria.
    pub first_converged: Vec<Option<usize>>,
}

pub const CONVERGENCE_MIN_CORR: f64 = 0.95;
pub const CONVERGENCE_MAX_DIFF_PCT: f64 = 2.0;

/// First sweep count meeting the correlation and symmetry criteria.
pub fn first_converged(rows: &[ConvergenceRow]) -> Option<usize> {
    rows.iter()
        .find(|r| r.meets(CONVERGENCE_MIN_CORR, CONVERGENCE_MAX_DIFF_PCT))
        .map(|r| r.sweeps)
}

/// Convergence series for every graph of the config, using its first
/// threshold and `sweeps` as the largest sweep count.
pub fn convergence_diagnostics(cfg: &ScenarioConfig) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let model = cfg.models()[0];
    let mut rows = Vec::new();
    let mut first = Vec::new();
    for inst in cfg.graph_instances()? {
        let mut series = convergence_series(
            &inst.graph,
            &model,
            cfg.seed_mode,
            cfg.seed_fraction,
            cfg.sweeps,
            cfg.seed.derive(3).derive(inst.index as u64),
        )?;
        for r in &mut series {
            r.graph = inst.index;
        }
        first.push(first_converged(&series));
        rows.extend(series);
    }
    Ok(ConvergenceReport {
        rows,
        first_converged: first,
    })
}
