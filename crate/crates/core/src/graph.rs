//! Immutable undirected simple graphs and structural tie measures.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Read access to a neighbor structure. Dynamics are written against this so
/// they also run on graphs that are still growing (bridge formation).
pub trait Adjacency {
    fn node_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];
}

/// Undirected simple graph on nodes `0..node_count`.
///
/// Edges are stored once as `(lo, hi)` with `lo < hi`, sorted; the position
/// of an edge in that list is its edge id. Adjacency lists are sorted and
/// carry the matching edge id for every neighbor.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    adj_edge: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("nodes", &self.node_count())
            .field("edges", &self.edges)
            .finish()
    }
}

impl Adjacency for Graph {
    fn node_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

impl Graph {
    pub fn empty(node_count: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); node_count],
            adj_edge: vec![Vec::new(); node_count],
            edges: Vec::new(),
            names: None,
        }
    }

    /// Builds a graph from index pairs. Self-loops are dropped and duplicate
    /// or reversed pairs collapse to one edge.
    pub fn from_edges<I>(node_count: usize, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= node_count || v >= node_count {
                return Err(Error::Argument(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let adj_edge = adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                list.iter()
                    .map(|&v| {
                        edges
                            .binary_search(&(u.min(v), u.max(v)))
                            .expect("edge present")
                    })
                    .collect()
            })
            .collect();

        Ok(Graph {
            adj,
            adj_edge,
            edges,
            names: None,
        })
    }

    /// Attaches display names (one per node).
    pub fn with_names(mut self, names: Vec<String>) -> Result<Graph> {
        if names.len() != self.node_count() {
            return Err(Error::Argument(format!(
                "{} names for {} nodes",
                names.len(),
                self.node_count()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Canonical `(lo, hi)` edges in edge-id order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge ids aligned with `neighbors(v)`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.adj_edge[v]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return None;
        }
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of a node: its loaded name, or its index.
    pub fn label(&self, v: usize) -> String {
        match &self.names {
            Some(n) => n[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn node_by_name(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Component label per node; labels are assigned in order of each
    /// component's smallest node index.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Subgraph induced by `nodes`, re-indexed in ascending original order.
    /// Returns the graph and the original index of every new node.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: Vec<usize> = nodes.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_index = vec![usize::MAX; self.node_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_index[u] != usize::MAX && new_index[v] != usize::MAX)
            .map(|&(u, v)| (new_index[u], new_index[v]));
        let mut sub = Graph::from_edges(keep.len(), pairs).expect("indices in range");
        if let Some(names) = &self.names {
            sub.names = Some(keep.iter().map(|&v| names[v].clone()).collect());
        }
        (sub, keep)
    }

    pub fn local_clustering(&self, v: usize) -> f64 {
        let nbrs = &self.adj[v];
        let k = nbrs.len();
        if k < 2 {
            return 0.0;
        }
        let mut links = 0usize;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if self.has_edge(a, b) {
                    links += 1;
                }
            }
        }
        2.0 * links as f64 / (k * (k - 1)) as f64
    }

    /// Mean local clustering coefficient (nodes of degree < 2 count as 0).
    pub fn average_clustering(&self) -> f64 {
        let n = self.node_count();
        if n == 0 {
            return 0.0;
        }
        (0..n).map(|v| self.local_clustering(v)).sum::<f64>() / n as f64
    }

    pub fn mean_degree(&self) -> f64 {
        if self.node_count() == 0 {
            0.0
        } else {
            2.0 * self.edge_count() as f64 / self.node_count() as f64
        }
    }

    /// Checks the structural invariants: contiguous indices, no self-loops,
    /// no parallel edges, symmetric sorted adjacency, consistent edge ids.
    pub fn audit(&self) -> bool {
        let n = self.node_count();
        let mut degree_sum = 0;
        for u in 0..n {
            let list = &self.adj[u];
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for (&v, &e) in list.iter().zip(&self.adj_edge[u]) {
                if v == u || v >= n || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
                if self.edges.get(e) != Some(&(u.min(v), u.max(v))) {
                    return false;
                }
            }
        }
        degree_sum == 2 * self.edge_count()
            && self.edges.windows(2).all(|w| w[0] < w[1])
            && self.edges.iter().all(|&(u, v)| u < v)
    }

    /// Serializes as an edge list readable by [`load_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&self.label(u));
            out.push(' ');
            out.push_str(&self.label(v));
            out.push('\n');
        }
        out
    }
}

/// Parses whitespace-separated name pairs, one edge per line. Blank lines and
/// lines starting with `#` are skipped. Nodes are indexed in order of first
/// appearance; names are kept on the graph.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let mut id = |name: &str| {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        let u = id(tokens[0]);
        let v = id(tokens[1]);
        pairs.push((u, v));
    }
    Graph::from_edges(names.len(), pairs)?.with_names(names)
}

/// Largest connected component, re-indexed. Among equal-size components the
/// one containing the smallest node index wins.
pub fn giant_component(g: &Graph) -> Graph {
    giant_component_with_map(g).0
}

/// As [`giant_component`], also returning the original index of every node.
pub fn giant_component_with_map(g: &Graph) -> (Graph, Vec<usize>) {
    let labels = g.component_labels();
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; count];
    for &l in &labels {
        sizes[l] += 1;
    }
    // Labels follow smallest-index order, so the first maximum is the tie winner.
    let Some(best) = (0..count).reduce(|a, b| if sizes[b] > sizes[a] { b } else { a }) else {
        return (Graph::empty(0), Vec::new());
    };
    let nodes: Vec<usize> = (0..g.node_count()).filter(|&v| labels[v] == best).collect();
    g.induced_subgraph(&nodes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TieRange {
    Finite(u32),
    Infinite,
}

impl TieRange {
    pub fn finite(self) -> Option<u32> {
        match self {
            TieRange::Finite(r) => Some(r),
            TieRange::Infinite => None,
        }
    }
}

impl fmt::Display for TieRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieRange::Finite(r) => write!(f, "{r}"),
            TieRange::Infinite => f.write_str("inf"),
        }
    }
}

fn require_edge(g: &Graph, u: usize, v: usize) -> Result<()> {
    if u >= g.node_count() || v >= g.node_count() || !g.has_edge(u, v) {
        return Err(Error::Argument(format!("({u}, {v}) is not an edge")));
    }
    Ok(())
}

/// Length of the shortest `u`–`v` path that avoids the edge `{u, v}`.
pub fn tie_range(g: &Graph, u: usize, v: usize) -> Result<TieRange> {
    require_edge(g, u, v)?;
    let mut dist = vec![u32::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    dist[u] = 0;
    queue.push_back(u);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if x == u && y == v {
                continue;
            }
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                if y == v {
                    return Ok(TieRange::Finite(dist[y]));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(TieRange::Infinite)
}

/// Tie range of every edge, in edge-id order.
pub fn tie_ranges(g: &Graph) -> Vec<TieRange> {
    g.edges()
        .iter()
        .map(|&(u, v)| tie_range(g, u, v).expect("edge from graph"))
        .collect()
}

/// Mutual-neighbor overlap `M / (D_u + D_v - M - 2)`; `None` when the
/// denominator vanishes.
pub fn structural_tie_strength(g: &Graph, u: usize, v: usize) -> Result<Option<f64>> {
    require_edge(g, u, v)?;
    let m = g.common_neighbor_count(u, v);
    let denom = g.degree(u) + g.degree(v) - m - 2;
    Ok((denom != 0).then(|| m as f64 / denom as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tercile {
    Weak,
    Medium,
    Strong,
}

impl Tercile {
    pub const ALL: [Tercile; 3] = [Tercile::Weak, Tercile::Medium, Tercile::Strong];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone)]
pub struct TercileSplit {
    /// Tercile per edge id; `None` for edges with undefined strength.
    pub labels: Vec<Option<Tercile>>,
    pub strengths: Vec<Option<f64>>,
    /// Edge ids excluded because their strength is undefined.
    pub undefined: Vec<usize>,
    pub sizes: [usize; 3],
}

/// Splits edges with defined structural strength into ascending thirds.
/// Equal strengths keep edge-id order; remainder edges go to the lower groups
/// first (10 edges split 4/3/3, 11 split 4/4/3).
pub fn tie_strength_terciles(g: &Graph) -> Result<TercileSplit> {
    let strengths: Vec<Option<f64>> = g
        .edges()
        .iter()
        .map(|&(u, v)| structural_tie_strength(g, u, v).expect("edge from graph"))
        .collect();
    let mut defined: Vec<(f64, usize)> = strengths
        .iter()
        .enumerate()
        .filter_map(|(e, s)| s.map(|s| (s, e)))
        .collect();
    if defined.len() < 3 {
        return Err(Error::Analysis(format!(
            "tercile split needs 3 edges with defined strength, found {}",
            defined.len()
        )));
    }
    defined.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let n = defined.len();
    let mut sizes = [n / 3; 3];
    for size in sizes.iter_mut().take(n % 3) {
        *size += 1;
    }
    let mut labels = vec![None; g.edge_count()];
    let mut pos = 0;
    for (tercile, &size) in Tercile::ALL.iter().zip(&sizes) {
        for &(_, e) in &defined[pos..pos + size] {
            labels[e] = Some(*tercile);
        }
        pos += size;
    }
    let undefined = strengths
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(e, _)| e)
        .collect();
    Ok(TercileSplit {
        labels,
        strengths,
        undefined,
        sizes,
    })
}
