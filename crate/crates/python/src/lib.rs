//! Python bindings. Build with `cargo build -p causalflow-py --features extension-module`
//! and import the resulting shared library as `causalflow`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use causalflow::bridges::{can_spread, count_bridge_pairs, Direction};
use causalflow::causal::{aggregate_seed_sets, aggregate_sweeps, CausalScores};
use causalflow::contagion::{Dynamics, LtmWeights, ModelSpec, ThresholdSpec};
use causalflow::generators::{clustered_power_law, two_disconnected_ws, watts_strogatz, Community};
use causalflow::graph::{load_edge_list, Adjacency};
use causalflow::metrics::{flow_alignment, flow_symmetry_with, Similarity, SymmetryOptions};
use causalflow::seeding::{SeedMode, SeedSet};
use causalflow::{Error, RngSeed};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Argument(_) | Error::Parameter(_) | Error::Config(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Graph", module = "causalflow")]
pub struct PyGraph {
    inner: causalflow::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(node_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = causalflow::Graph::from_edges(node_count, edges).map_err(py_err)?;
        Ok(PyGraph { inner })
    }

    /// Parses an edge list (two tokens per line, `#` starts a comment line).
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: load_edge_list(text).map_err(py_err)?,
        })
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn label(&self, v: usize) -> PyResult<String> {
        self.check(v)?;
        Ok(self.inner.label(v))
    }

    fn node(&self, name: &str) -> Option<usize> {
        self.inner.node_by_name(name)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(nodes={}, edges={})",
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v >= self.inner.node_count() {
            return Err(PyValueError::new_err(format!("node {v} out of range")));
        }
        Ok(())
    }
}

#[pyclass(name = "Scores", module = "causalflow")]
pub struct PyScores {
    inner: CausalScores,
    edges: Vec<(usize, usize)>,
}

#[pymethods]
impl PyScores {
    #[getter]
    fn ni_raw(&self) -> Vec<u64> {
        self.inner.ni_raw.clone()
    }

    #[getter]
    fn ni_norm(&self) -> Vec<f64> {
        self.inner.ni_norm.clone()
    }

    #[getter]
    fn runs(&self) -> u64 {
        self.inner.runs
    }

    #[getter]
    fn density(&self) -> f64 {
        self.inner.mean_density()
    }

    /// `(src, dst, ti_raw, ti_norm)` for both directions of every edge.
    fn ties(&self) -> Vec<(usize, usize, u64, f64)> {
        let mut out = Vec::with_capacity(2 * self.edges.len());
        for (e, &(lo, hi)) in self.edges.iter().enumerate() {
            let norm = |i: usize| self.inner.ti_norm.get(i).copied().unwrap_or(0.0);
            out.push((lo, hi, self.inner.ti_raw[2 * e], norm(2 * e)));
            out.push((hi, lo, self.inner.ti_raw[2 * e + 1], norm(2 * e + 1)));
        }
        out
    }
}

fn threshold(mode: &str, value: f64) -> PyResult<ThresholdSpec> {
    match mode {
        "abs" | "absolute" => {
            if value < 1.0 || value.fract() != 0.0 {
                return Err(PyValueError::new_err(
                    "absolute threshold must be a positive integer",
                ));
            }
            Ok(ThresholdSpec::absolute(value as u32))
        }
        "rel" | "relative" => Ok(ThresholdSpec::relative(value)),
        _ => Err(PyValueError::new_err(format!(
            "unknown threshold mode {mode:?}"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn model_spec(
    family: &str,
    mode: &str,
    value: f64,
    q: f64,
    icm_beta: f64,
    ltm_phi: f64,
    ltm_sigma: f64,
) -> PyResult<ModelSpec> {
    let model = match family {
        "gi" => ModelSpec::gi(threshold(mode, value)?),
        "ltm" => ModelSpec::Ltm {
            weights: if ltm_sigma == 0.0 {
                LtmWeights::Homogeneous
            } else {
                LtmWeights::Gaussian { sigma: ltm_sigma }
            },
            phi: ltm_phi,
        },
        "icm" => ModelSpec::Icm { beta: icm_beta },
        "noisy" | "noisy-single" => ModelSpec::Noisy {
            threshold: threshold(mode, value)?,
            q,
            single_transmission: family == "noisy-single",
        },
        _ => return Err(PyValueError::new_err(format!("unknown model {family:?}"))),
    };
    model.validate().map_err(py_err)?;
    Ok(model)
}

fn seed_mode(s: &str) -> PyResult<SeedMode> {
    s.parse().map_err(py_err)
}

#[pyfunction]
#[pyo3(name = "watts_strogatz", signature = (n, k, beta, seed=0))]
fn watts_strogatz_py(n: usize, k: usize, beta: f64, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: watts_strogatz(n, k, beta, RngSeed(seed)).map_err(py_err)?,
    })
}

#[pyfunction]
#[pyo3(name = "clustered_power_law", signature = (n, m, p, seed=0))]
fn clustered_power_law_py(n: usize, m: usize, p: f64, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: clustered_power_law(n, m, p, RngSeed(seed)).map_err(py_err)?,
    })
}

/// Returns the graph and a list of community labels ("A" or "B").
#[pyfunction]
#[pyo3(signature = (n, k, beta, seed=0))]
fn two_communities(n: usize, k: usize, beta: f64, seed: u64) -> PyResult<(PyGraph, Vec<String>)> {
    let (g, labels) = two_disconnected_ws(n, k, beta, RngSeed(seed)).map_err(py_err)?;
    let labels = labels
        .into_iter()
        .map(|c| match c {
            Community::A => "A".to_string(),
            Community::B => "B".to_string(),
        })
        .collect();
    Ok((PyGraph { inner: g }, labels))
}

/// One cascade; returns activation times (`None` for nodes never activated).
#[pyfunction]
#[pyo3(signature = (graph, seeds, model="gi", threshold_mode="abs", threshold=1.0, q=0.0,
                    icm_beta=0.5, ltm_phi=0.5, ltm_sigma=0.05, seed=0))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    graph: PyRef<'_, PyGraph>,
    seeds: Vec<usize>,
    model: &str,
    threshold_mode: &str,
    threshold: f64,
    q: f64,
    icm_beta: f64,
    ltm_phi: f64,
    ltm_sigma: f64,
    seed: u64,
) -> PyResult<Vec<Option<u32>>> {
    let g = &graph.inner;
    if let Some(&v) = seeds.iter().find(|&&v| v >= g.node_count()) {
        return Err(PyValueError::new_err(format!("seed {v} out of range")));
    }
    let spec = model_spec(
        model,
        threshold_mode,
        threshold,
        q,
        icm_beta,
        ltm_phi,
        ltm_sigma,
    )?;
    let dynamics = Dynamics::new(g, &spec).map_err(py_err)?;
    let set = SeedSet::from_nodes(seeds, g.node_count());
    Ok(dynamics
        .run(g, &set, &mut RngSeed(seed).rng())
        .activation_time)
}

/// Aggregated causal scores. Pass `seed_sets` for an explicit family,
/// otherwise `sweeps · |V|` seed sets are sampled.
#[pyfunction]
#[pyo3(signature = (graph, model="gi", threshold_mode="abs", threshold=1.0, seed_mode="rcs",
                    seed_fraction=0.05, sweeps=1, seed_sets=None, runs_per_set=1, q=0.0,
                    icm_beta=0.5, ltm_phi=0.5, ltm_sigma=0.05, seed=0))]
#[allow(clippy::too_many_arguments)]
fn aggregate(
    py: Python<'_>,
    graph: PyRef<'_, PyGraph>,
    model: &str,
    threshold_mode: &str,
    threshold: f64,
    seed_mode: &str,
    seed_fraction: f64,
    sweeps: usize,
    seed_sets: Option<Vec<Vec<usize>>>,
    runs_per_set: usize,
    q: f64,
    icm_beta: f64,
    ltm_phi: f64,
    ltm_sigma: f64,
    seed: u64,
) -> PyResult<PyScores> {
    let spec = model_spec(
        model,
        threshold_mode,
        threshold,
        q,
        icm_beta,
        ltm_phi,
        ltm_sigma,
    )?;
    let g = &graph.inner;
    let mode = self::seed_mode(seed_mode)?;
    let scores = py
        .detach(|| match seed_sets {
            Some(sets) => {
                let sets: Vec<SeedSet> = sets
                    .into_iter()
                    .map(|s| SeedSet::from_nodes(s, g.node_count()))
                    .collect();
                aggregate_seed_sets(g, &spec, &sets, runs_per_set, RngSeed(seed))
            }
            None => aggregate_sweeps(g, &spec, mode, seed_fraction, sweeps, RngSeed(seed)),
        })
        .map_err(py_err)?;
    Ok(PyScores {
        inner: scores,
        edges: g.edges().to_vec(),
    })
}

/// Pearson (or cosine) correlation of tie importance across edge directions.
#[pyfunction]
#[pyo3(signature = (scores, graph, cosine=false, exclude_unused=false))]
fn flow_symmetry(
    scores: PyRef<'_, PyScores>,
    graph: PyRef<'_, PyGraph>,
    cosine: bool,
    exclude_unused: bool,
) -> PyResult<Option<f64>> {
    if scores.edges.as_slice() != graph.inner.edges() {
        return Err(PyValueError::new_err(
            "scores were computed on a different graph",
        ));
    }
    let opts = SymmetryOptions {
        measure: if cosine {
            Similarity::Cosine
        } else {
            Similarity::Pearson
        },
        exclude_unused,
    };
    Ok(flow_symmetry_with(&scores.inner, &graph.inner, opts).xi_s)
}

/// `(rho_ds_dk, rho_ni_k, rho_nik_k)`.
#[pyfunction]
fn core_periphery(
    scores: PyRef<'_, PyScores>,
    graph: PyRef<'_, PyGraph>,
) -> PyResult<(Option<f64>, Option<f64>, Option<f64>)> {
    if scores.edges.as_slice() != graph.inner.edges() {
        return Err(PyValueError::new_err(
            "scores were computed on a different graph",
        ));
    }
    let fa = flow_alignment(&scores.inner, &graph.inner);
    Ok((fa.rho_ds_dk, fa.rho_ni_k, fa.rho_nik_k))
}

/// Whether seeding all of community `source` ("A" or "B") activates some
/// node of the other community under threshold `t`.
#[pyfunction]
fn spreads(
    graph: PyRef<'_, PyGraph>,
    communities: Vec<String>,
    source: &str,
    t: u32,
) -> PyResult<bool> {
    let g = &graph.inner;
    if communities.len() != g.node_count() {
        return Err(PyValueError::new_err("need one community label per node"));
    }
    let labels = communities
        .iter()
        .map(|c| match c.as_str() {
            "A" => Ok(Community::A),
            "B" => Ok(Community::B),
            _ => Err(PyValueError::new_err(format!("unknown community {c:?}"))),
        })
        .collect::<PyResult<Vec<_>>>()?;
    let direction = match source {
        "A" => Direction::AToB,
        "B" => Direction::BToA,
        _ => {
            return Err(PyValueError::new_err(format!(
                "unknown community {source:?}"
            )))
        }
    };
    if t == 0 {
        return Err(PyValueError::new_err("threshold must be >= 1"));
    }
    Ok(can_spread(g, &labels, direction, &vec![t; g.node_count()]))
}

/// `(symmetric, asymmetric)` minimal bridge pair counts.
#[pyfunction]
fn bridge_pair_counts(n_a: u64, n_b: u64, t: u64) -> PyResult<(u128, u128)> {
    let c = count_bridge_pairs(n_a, n_b, t).map_err(py_err)?;
    Ok((c.sym, c.asym))
}

#[pymodule]
#[pyo3(name = "causalflow")]
fn causalflow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyScores>()?;
    m.add_function(wrap_pyfunction!(watts_strogatz_py, m)?)?;
    m.add_function(wrap_pyfunction!(clustered_power_law_py, m)?)?;
    m.add_function(wrap_pyfunction!(two_communities, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(aggregate, m)?)?;
    m.add_function(wrap_pyfunction!(flow_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(core_periphery, m)?)?;
    m.add_function(wrap_pyfunction!(spreads, m)?)?;
    m.add_function(wrap_pyfunction!(bridge_pair_counts, m)?)?;
    Ok(())
}
