//! Summary statistics over aggregated causal scores.

use serde::{Deserialize, Serialize};

use crate::causal::CausalScores;
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};

/// Sample Pearson correlation. `None` when either side has zero variance or
/// fewer than two points.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 2 {
        return Ok(None);
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)))
}

/// Cosine similarity; `None` if either vector is all zeros.
pub fn cosine(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny: f64 = y.iter().map(|b| b * b).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        return Ok(None);
    }
    Ok(Some((dot / (nx * ny)).clamp(-1.0, 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Similarity {
    #[default]
    Pearson,
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SymmetryOptions {
    pub measure: Similarity,
    /// Leave out edges never traversed in either direction.
    pub exclude_unused: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub xi_s: Option<f64>,
    pub n_edges: usize,
    pub defined: bool,
}

/// Flow symmetry with default options (Pearson, unused edges included).
pub fn flow_symmetry(scores: &CausalScores, g: &Graph) -> SymmetryReport {
    flow_symmetry_with(scores, g, SymmetryOptions::default())
}

pub fn flow_symmetry_with(
    scores: &CausalScores,
    g: &Graph,
    opts: SymmetryOptions,
) -> SymmetryReport {
    let mut fwd = Vec::with_capacity(g.edge_count());
    let mut bwd = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let (a, b) = scores.edge_pair(e);
        if opts.exclude_unused && a == 0 && b == 0 {
            continue;
        }
        fwd.push(a as f64);
        bwd.push(b as f64);
    }
    let xi = match opts.measure {
        Similarity::Pearson => pearson(&fwd, &bwd),
        Similarity::Cosine => cosine(&fwd, &bwd),
    }
    .expect("equal lengths");
    SymmetryReport {
        xi_s: xi,
        n_edges: fwd.len(),
        defined: xi.is_some(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowAlignment {
    /// ρ(ΔS, Δk) with ΔS = TI(i,j) − TI(j,i), Δk = k(j) − k(i), i < j.
    pub rho_ds_dk: Option<f64>,
    pub rho_ni_k: Option<f64>,
    /// ρ(NI/k, k) over nodes with k > 0.
    pub rho_nik_k: Option<f64>,
}

/// Per-edge `(ΔS, Δk)` in the canonical `lo < hi` orientation.
pub fn flow_deltas(scores: &CausalScores, g: &Graph) -> (Vec<f64>, Vec<f64>) {
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, &(i, j))| {
            let (a, b) = scores.edge_pair(e);
            (a as f64 - b as f64, g.degree(j) as f64 - g.degree(i) as f64)
        })
        .unzip()
}

pub fn flow_alignment(scores: &CausalScores, g: &Graph) -> FlowAlignment {
    let (ds, dk) = flow_deltas(scores, g);
    let k: Vec<f64> = (0..g.node_count()).map(|v| g.degree(v) as f64).collect();
    let ni: Vec<f64> = scores.ni_raw.iter().map(|&x| x as f64).collect();
    let (nik, kk): (Vec<f64>, Vec<f64>) = (0..g.node_count())
        .filter(|&v| g.degree(v) > 0)
        .map(|v| (ni[v] / k[v], k[v]))
        .unzip();
    FlowAlignment {
        rho_ds_dk: pearson(&ds, &dk).expect("equal lengths"),
        rho_ni_k: pearson(&ni, &k).expect("equal lengths"),
        rho_nik_k: pearson(&nik, &kk).expect("equal lengths"),
    }
}
