//! Command-line front end. The binary is a thin wrapper around [`main_with_args`].

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bridges::{bridge_experiment, BridgeParams};
use crate::causal::{aggregate_seed_sets, aggregate_sweeps, CausalScores};
use crate::contagion::{LtmWeights, ModelSpec, Neighborhood, ThresholdSpec};
use crate::error::Error;
use crate::experiments::{
    convergence_diagnostics, periphery_core_sweep, rewiring_dip, symmetry_vs_threshold,
    tie_range_asymmetry, tie_strength_importance, GraphSource, ScenarioConfig,
};
use crate::generators::{
    clustered_power_law, two_disconnected_ws, watts_strogatz, Community, GENERATOR_VERSION,
};
use crate::graph::{load_edge_list, Adjacency, Graph};
use crate::metrics::{flow_alignment, flow_symmetry_with, Similarity, SymmetryOptions};
use crate::rng::{RngSeed, RNG_ALGORITHM};
use crate::seeding::{SeedMode, SeedSet};

pub const OUT_DIR_ENV: &str = "CAUSALFLOW_OUT_DIR";
pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Runtime(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(Error::Io(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(Error::Json(e))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(Error::Csv(e))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "causalflow",
    version,
    about = "Causal flow analysis for threshold contagions"
)]
pub struct Cli {
    /// Table format for outputs.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output directory.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = "out")]
    pub out_dir: PathBuf,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML config for the experiment and bridge subcommands.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random graph as an edge list.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Aggregate causal node and tie importance on one graph.
    Simulate(SimulateArgs),
    /// Random bridge formation between two communities.
    BridgeExperiment(BridgeArgs),
    /// Flow symmetry against threshold.
    SymmetrySweep(ExperimentArgs),
    /// Tie range against directional asymmetry.
    TieRange(ExperimentArgs),
    /// Mean tie importance per structural-strength tercile.
    TieStrength(ExperimentArgs),
    /// Core and periphery flow correlations per threshold.
    Periphery(ExperimentArgs),
    /// Density and symmetry per rewiring probability.
    RewiringDip(ExperimentArgs),
    /// Sweep-count convergence diagnostics.
    Converge(ExperimentArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    Ws {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        rng: u64,
    },
    Powerlaw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        rng: u64,
    },
    /// Two disconnected Watts-Strogatz communities.
    TwoWs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        rng: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelFamily {
    Gi,
    Ltm,
    Icm,
    Noisy,
    NoisySingle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdMode {
    Abs,
    Rel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedModeArg {
    Rs,
    Rcs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Edge-list file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "gi")]
    pub model: ModelFamily,
    #[arg(long, value_enum, default_value = "abs")]
    pub threshold_mode: ThresholdMode,
    #[arg(long, default_value_t = 1.0)]
    pub threshold: f64,
    /// Use the open neighborhood for relative thresholds.
    #[arg(long)]
    pub open_neighborhood: bool,
    #[arg(long, default_value_t = 0.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0.5)]
    pub icm_beta: f64,
    /// Gaussian LTM weight spread; 0 gives homogeneous weights.
    #[arg(long, default_value_t = 0.05)]
    pub ltm_sigma: f64,
    #[arg(long, default_value_t = 0.5)]
    pub ltm_phi: f64,
    #[arg(long, value_enum, default_value = "rcs")]
    pub seed_mode: SeedModeArg,
    #[arg(long, default_value_t = 0.05)]
    pub seed_frac: f64,
    #[arg(long, default_value_t = 1)]
    pub sweeps: usize,
    /// Explicit seed nodes by label, comma separated. Replaces sampled seeds.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<String>,
    /// Cascades per explicit seed set.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub rng: u64,
}

#[derive(Debug, Args)]
pub struct BridgeArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long = "T", alias = "t")]
    pub t: Option<u32>,
    /// Closure probabilities, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<f64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub max_ties: Option<usize>,
    #[arg(long)]
    pub strict_closure: bool,
    #[arg(long)]
    pub rng: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Overrides the configured sweep count.
    #[arg(long)]
    pub sweeps: Option<usize>,
    /// Overrides the configured root seed.
    #[arg(long)]
    pub rng: Option<u64>,
}

/// Bridge experiment settings as read from a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgeConfig {
    pub n: usize,
    pub k: usize,
    pub beta: f64,
    pub t: u32,
    pub c: Vec<f64>,
    pub trials: usize,
    pub max_ties: usize,
    #[serde(default)]
    pub strict_closure: bool,
    pub seed: RngSeed,
}

impl Default for BridgeConfig {
    fn default() -> Self {
        BridgeConfig {
            n: 100,
            k: 6,
            beta: 0.1,
            t: 3,
            c: vec![0.0],
            trials: 100,
            max_ties: 200,
            strict_closure: false,
            seed: RngSeed(0),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileEntry {
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub argv: Vec<String>,
    pub config: Value,
    pub seeds: Vec<u64>,
    pub rng: String,
    pub threads: usize,
    pub wall_time_secs: f64,
    pub files: Vec<FileEntry>,
}

pub fn sha256_file(path: &Path) -> std::io::Result<String> {
    let bytes = fs::read(path)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Collects output files for one run.
struct Outputs {
    dir: PathBuf,
    format: Format,
    files: Vec<String>,
}

impl Outputs {
    fn path(&mut self, name: &str) -> PathBuf {
        self.files.push(name.to_string());
        self.dir.join(name)
    }

    fn text(&mut self, name: &str, body: &str) -> CliResult<()> {
        fs::write(self.path(name), body)?;
        Ok(())
    }

    fn json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> CliResult<()> {
        let mut body = serde_json::to_string_pretty(value)?;
        body.push('\n');
        self.text(name, &body)
    }

    fn csv<T: Serialize>(&mut self, name: &str, rows: &[T]) -> CliResult<()> {
        let mut w = csv::Writer::from_path(self.path(name))?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    /// One table in the selected format.
    fn table<T: Serialize>(&mut self, stem: &str, rows: &[T]) -> CliResult<()> {
        match self.format {
            Format::Csv => self.csv(&format!("{stem}.csv"), rows),
            Format::Json => self.json(&format!("{stem}.json"), rows),
        }
    }
}

/// What a subcommand reports back for the manifest.
struct RunInfo {
    config: Value,
    seeds: Vec<u64>,
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let argv: Vec<String> = argv
        .iter()
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    match run(cli, argv) {
        Ok(manifest) => {
            println!("{}", manifest.display());
            0
        }
        Err(e) => {
            eprintln!("causalflow: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns the manifest path.
pub fn run(cli: Cli, argv: Vec<String>) -> CliResult<PathBuf> {
    let start = Instant::now();
    let threads = match cli.threads {
        Some(0) => return usage("--threads must be >= 1"),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Runtime(Error::Argument(e.to_string())))?;
    fs::create_dir_all(&cli.out_dir)?;
    let mut out = Outputs {
        dir: cli.out_dir.clone(),
        format: cli.format,
        files: Vec::new(),
    };
    let name = command_name(&cli.command);
    let config = cli.config.as_deref();
    let info = pool.install(|| match &cli.command {
        Command::Generate { kind } => {
            no_config(config, name)?;
            generate(kind, &mut out)
        }
        Command::Simulate(a) => {
            no_config(config, name)?;
            simulate(a, &mut out)
        }
        Command::BridgeExperiment(a) => bridges_cmd(a, config, &mut out),
        Command::SymmetrySweep(a)
        | Command::TieRange(a)
        | Command::TieStrength(a)
        | Command::Periphery(a)
        | Command::RewiringDip(a)
        | Command::Converge(a) => experiment(&cli.command, a, config, &mut out),
    })?;

    let mut files = Vec::with_capacity(out.files.len());
    for f in &out.files {
        let p = out.dir.join(f);
        files.push(FileEntry {
            path: f.clone(),
            bytes: fs::metadata(&p)?.len(),
            sha256: sha256_file(&p)?,
        });
    }
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: name.into(),
        argv,
        config: info.config,
        seeds: info.seeds,
        rng: RNG_ALGORITHM.into(),
        threads,
        wall_time_secs: start.elapsed().as_secs_f64(),
        files,
    };
    let path = out.dir.join(MANIFEST_NAME);
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(path)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Generate { .. } => "generate",
        Command::Simulate(_) => "simulate",
        Command::BridgeExperiment(_) => "bridge-experiment",
        Command::SymmetrySweep(_) => "symmetry-sweep",
        Command::TieRange(_) => "tie-range",
        Command::TieStrength(_) => "tie-strength",
        Command::Periphery(_) => "periphery",
        Command::RewiringDip(_) => "rewiring-dip",
        Command::Converge(_) => "converge",
    }
}

fn no_config(config: Option<&Path>, name: &str) -> CliResult<()> {
    match config {
        Some(_) => usage(format!("{name} takes its settings as flags, not --config")),
        None => Ok(()),
    }
}

fn read_config(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(Error::Config(format!("{}: {e}", path.display()))))
}

fn generate(kind: &GenerateKind, out: &mut Outputs) -> CliResult<RunInfo> {
    let (graph, stem, params, seed, communities) = match *kind {
        GenerateKind::Ws { n, k, beta, rng } => (
            watts_strogatz(n, k, beta, RngSeed(rng))?,
            "ws",
            json!({"kind": "ws", "n": n, "k": k, "beta": beta}),
            rng,
            None,
        ),
        GenerateKind::Powerlaw { n, m, p, rng } => (
            clustered_power_law(n, m, p, RngSeed(rng))?,
            "powerlaw",
            json!({"kind": "powerlaw", "n": n, "m": m, "p": p}),
            rng,
            None,
        ),
        GenerateKind::TwoWs { n, k, beta, rng } => {
            let (g, labels) = two_disconnected_ws(n, k, beta, RngSeed(rng))?;
            (
                g,
                "two_ws",
                json!({"kind": "two-ws", "n": n, "k": k, "beta": beta}),
                rng,
                Some(labels),
            )
        }
    };
    out.text(&format!("{stem}.edgelist"), &graph.to_edge_list())?;
    if let Some(labels) = communities {
        #[derive(Serialize)]
        struct Row {
            node: usize,
            community: Community,
        }
        let rows: Vec<Row> = labels
            .into_iter()
            .enumerate()
            .map(|(node, community)| Row { node, community })
            .collect();
        out.table(&format!("{stem}_communities"), &rows)?;
    }
    let meta = json!({
        "command": "generate",
        "params": params,
        "seed": seed,
        "generator_version": GENERATOR_VERSION,
        "rng": RNG_ALGORITHM,
        "nodes": graph.node_count(),
        "edges": graph.edge_count(),
    });
    out.json(&format!("{stem}.meta.json"), &meta)?;
    Ok(RunInfo {
        config: params,
        seeds: vec![seed],
    })
}

fn simulate_model(a: &SimulateArgs) -> CliResult<ModelSpec> {
    let threshold = match a.threshold_mode {
        ThresholdMode::Abs => {
            if a.threshold < 1.0 || a.threshold.fract() != 0.0 {
                return usage(format!(
                    "absolute threshold must be a positive integer, got {}",
                    a.threshold
                ));
            }
            ThresholdSpec::absolute(a.threshold as u32)
        }
        ThresholdMode::Rel => ThresholdSpec::Relative {
            theta: a.threshold,
            neighborhood: if a.open_neighborhood {
                Neighborhood::Open
            } else {
                Neighborhood::Closed
            },
        },
    };
    Ok(match a.model {
        ModelFamily::Gi => ModelSpec::gi(threshold),
        ModelFamily::Ltm => ModelSpec::Ltm {
            weights: if a.ltm_sigma == 0.0 {
                LtmWeights::Homogeneous
            } else {
                LtmWeights::Gaussian { sigma: a.ltm_sigma }
            },
            phi: a.ltm_phi,
        },
        ModelFamily::Icm => ModelSpec::Icm { beta: a.icm_beta },
        ModelFamily::Noisy | ModelFamily::NoisySingle => ModelSpec::Noisy {
            threshold,
            q: a.q,
            single_transmission: a.model == ModelFamily::NoisySingle,
        },
    })
}

fn simulate(a: &SimulateArgs, out: &mut Outputs) -> CliResult<RunInfo> {
    let model = simulate_model(a)?;
    let text = fs::read_to_string(&a.graph)
        .map_err(|e| CliError::Runtime(Error::Argument(format!("{}: {e}", a.graph.display()))))?;
    let g = load_edge_list(&text)?;
    let seed = RngSeed(a.rng);
    let scores = if a.seeds.is_empty() {
        aggregate_sweeps(
            &g,
            &model,
            seed_mode(a.seed_mode),
            a.seed_frac,
            a.sweeps,
            seed,
        )?
    } else {
        if a.runs == 0 {
            return usage("--runs must be >= 1");
        }
        let mut nodes = Vec::with_capacity(a.seeds.len());
        for s in &a.seeds {
            match g.node_by_name(s) {
                Some(v) => nodes.push(v),
                None => return usage(format!("unknown seed node {s:?}")),
            }
        }
        let set = SeedSet::from_nodes(nodes, g.node_count());
        aggregate_seed_sets(&g, &model, &[set], a.runs, seed)?
    };
    write_scores(&g, &scores, out)?;
    let all = flow_symmetry_with(&scores, &g, SymmetryOptions::default());
    let used = flow_symmetry_with(
        &scores,
        &g,
        SymmetryOptions {
            measure: Similarity::Pearson,
            exclude_unused: true,
        },
    );
    let params = json!({
        "graph": a.graph.display().to_string(),
        "model": model,
        "seed_mode": if a.seeds.is_empty() { json!(seed_mode(a.seed_mode)) } else { Value::Null },
        "seed_fraction": if a.seeds.is_empty() { json!(a.seed_frac) } else { Value::Null },
        "sweeps": if a.seeds.is_empty() { json!(a.sweeps) } else { Value::Null },
        "seeds": a.seeds,
        "runs": if a.seeds.is_empty() { Value::Null } else { json!(a.runs) },
    });
    let meta = json!({
        "command": "simulate",
        "params": params,
        "seed": a.rng,
        "rng": RNG_ALGORITHM,
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "runs": scores.runs,
        "density": scores.mean_density(),
        "all_zero": scores.all_zero,
        "xi_s": all.xi_s,
        "xi_s_used_only": used.xi_s,
        "alignment": flow_alignment(&scores, &g),
    });
    out.json("simulate.meta.json", &meta)?;
    Ok(RunInfo {
        config: params,
        seeds: vec![a.rng],
    })
}

fn seed_mode(m: SeedModeArg) -> SeedMode {
    match m {
        SeedModeArg::Rs => SeedMode::Rs,
        SeedModeArg::Rcs => SeedMode::Rcs,
    }
}

fn write_scores(g: &Graph, s: &CausalScores, out: &mut Outputs) -> CliResult<()> {
    match out.format {
        Format::Csv => {
            s.write_node_csv(g, fs::File::create(out.path("nodes.csv"))?)?;
            s.write_tie_csv(g, fs::File::create(out.path("ties.csv"))?)?;
        }
        Format::Json => {
            let nodes: Vec<Value> = (0..g.node_count())
                .map(
                    |v| json!({"node": g.label(v), "ni_raw": s.ni_raw[v], "ni_norm": s.ni_norm[v]}),
                )
                .collect();
            let mut ties = Vec::with_capacity(2 * g.edge_count());
            for &(lo, hi) in g.edges() {
                for (u, v) in [(lo, hi), (hi, lo)] {
                    ties.push(json!({
                        "src": g.label(u),
                        "dst": g.label(v),
                        "ti_raw": s.ti_raw_of(g, u, v),
                        "ti_norm": s.ti_norm_of(g, u, v),
                    }));
                }
            }
            out.json("nodes.json", &nodes)?;
            out.json("ties.json", &ties)?;
        }
    }
    Ok(())
}

fn bridges_cmd(a: &BridgeArgs, config: Option<&Path>, out: &mut Outputs) -> CliResult<RunInfo> {
    let mut cfg = match config {
        Some(p) => toml::from_str::<BridgeConfig>(&read_config(p)?)
            .map_err(|e| CliError::Runtime(Error::Config(e.to_string())))?,
        None => BridgeConfig::default(),
    };
    if let Some(v) = a.n {
        cfg.n = v;
    }
    if let Some(v) = a.k {
        cfg.k = v;
    }
    if let Some(v) = a.beta {
        cfg.beta = v;
    }
    if let Some(v) = a.t {
        cfg.t = v;
    }
    if !a.c.is_empty() {
        cfg.c = a.c.clone();
    }
    if let Some(v) = a.trials {
        cfg.trials = v;
    }
    if let Some(v) = a.max_ties {
        cfg.max_ties = v;
    }
    if let Some(v) = a.rng {
        cfg.seed = RngSeed(v);
    }
    cfg.strict_closure |= a.strict_closure;
    if cfg.c.is_empty() {
        return usage("no closure probability given");
    }

    #[derive(Serialize)]
    struct TrialRow {
        c: f64,
        trial: usize,
        first_spread_at: Option<usize>,
        first_label: Option<String>,
        closure_ties: usize,
    }
    let mut curve = Vec::new();
    let mut trials = Vec::new();
    let mut summaries = Vec::new();
    for (i, &c) in cfg.c.iter().enumerate() {
        let params = BridgeParams {
            n: cfg.n,
            k: cfg.k,
            beta: cfg.beta,
            t: cfg.t,
            c,
            max_ties: cfg.max_ties,
            strict_closure: cfg.strict_closure,
        };
        let (mut summary, results) =
            bridge_experiment(&params, cfg.trials, cfg.seed.derive(i as u64))?;
        for (trial, r) in results.iter().enumerate() {
            trials.push(TrialRow {
                c,
                trial,
                first_spread_at: r.first_spread_at,
                first_label: r.first_spread_label().map(|l| {
                    serde_json::to_value(l)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default()
                }),
                closure_ties: r.ties_added.iter().filter(|e| e.closure).count(),
            });
        }
        let crossing = summary.crossing(0.5);
        curve.append(&mut summary.curve);
        summaries.push(json!({
            "c": c,
            "trials": summary.trials,
            "first_symmetric": summary.first_symmetric,
            "first_asymmetric": summary.first_asymmetric,
            "never_spread": summary.never_spread,
            "crossing_half": crossing,
        }));
    }
    out.table("bridge_curve", &curve)?;
    out.table("bridge_trials", &trials)?;
    let config = serde_json::to_value(&cfg)?;
    out.json(
        "bridge-experiment.meta.json",
        &json!({
            "command": "bridge-experiment",
            "params": config,
            "rng": RNG_ALGORITHM,
            "summary": summaries,
        }),
    )?;
    Ok(RunInfo {
        config,
        seeds: vec![cfg.seed.0],
    })
}

/// Built-in desk-scale scenario used when no config file is given.
pub fn default_scenario(command: &Command) -> ScenarioConfig {
    let ws = |beta| GraphSource::Ws { n: 200, k: 8, beta };
    let pl = GraphSource::PowerLaw {
        n: 500,
        m: 4,
        p: 0.4,
    };
    let abs = |t| ThresholdSpec::absolute(t);
    let (graphs, thresholds) = match command {
        Command::SymmetrySweep(_) => (
            vec![ws(0.0), ws(0.1), ws(0.3), ws(1.0)],
            vec![abs(1), abs(2), abs(3)],
        ),
        Command::TieRange(_) => (vec![ws(0.1), ws(0.3)], vec![abs(2)]),
        Command::TieStrength(_) | Command::Periphery(_) => (
            vec![pl],
            vec![
                ThresholdSpec::relative(0.1),
                ThresholdSpec::relative(0.2),
                abs(1),
                abs(2),
            ],
        ),
        Command::RewiringDip(_) => (
            [0.0, 0.01, 0.05, 0.1, 0.3, 1.0]
                .into_iter()
                .map(ws)
                .collect(),
            vec![abs(2)],
        ),
        _ => (vec![ws(0.1)], vec![abs(2)]),
    };
    let mut cfg = ScenarioConfig::new(graphs, ModelSpec::gi(abs(1)), RngSeed(0));
    cfg.thresholds = thresholds;
    if matches!(command, Command::Converge(_)) {
        cfg.sweeps = 4;
    }
    cfg
}

fn experiment(
    command: &Command,
    a: &ExperimentArgs,
    config: Option<&Path>,
    out: &mut Outputs,
) -> CliResult<RunInfo> {
    let mut cfg = match config {
        Some(p) => ScenarioConfig::from_toml_str(&read_config(p)?)?,
        None => default_scenario(command),
    };
    if let Some(s) = a.sweeps {
        cfg.sweeps = s;
    }
    if let Some(r) = a.rng {
        cfg.seed = RngSeed(r);
    }
    cfg.validate()?;
    let name = command_name(command);
    let summary = match command {
        Command::SymmetrySweep(_) => {
            let t = symmetry_vs_threshold(&cfg)?;
            out.table("symmetry", &t.rows)?;
            json!({"pooled": t.pooled, "pooled_used_only": t.pooled_used_only, "warning": t.warning})
        }
        Command::TieRange(_) => {
            let t = tie_range_asymmetry(&cfg)?;
            out.table("tie_range_edges", &t.edges)?;
            out.table("tie_range_cells", &t.cells)?;
            json!({"high_importance": t.high_importance, "median_max_ti": t.median_max_ti})
        }
        Command::TieStrength(_) => {
            let t = tie_strength_importance(&cfg)?;
            out.table("tie_strength", &t.rows)?;
            out.table("tie_strength_pooled", &t.pooled)?;
            json!({"undefined_edges": t.undefined_edges})
        }
        Command::Periphery(_) => {
            out.table("periphery", &periphery_core_sweep(&cfg)?)?;
            Value::Null
        }
        Command::RewiringDip(_) => {
            out.table("rewiring", &rewiring_dip(&cfg)?)?;
            Value::Null
        }
        Command::Converge(_) => {
            let r = convergence_diagnostics(&cfg)?;
            out.table("convergence", &r.rows)?;
            json!({"first_converged": r.first_converged})
        }
        _ => unreachable!("not an experiment subcommand"),
    };
    let config = serde_json::to_value(&cfg)?;
    out.json(
        &format!("{name}.meta.json"),
        &json!({
            "command": name,
            "params": config,
            "rng": RNG_ALGORITHM,
            "generator_version": GENERATOR_VERSION,
            "summary": summary,
        }),
    )?;
    Ok(RunInfo {
        config,
        seeds: vec![cfg.seed.0],
    })
}
