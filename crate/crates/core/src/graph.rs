//! Simple undirected graphs, named families, bipartitions, and the
//! oscillator-network potential matrix `V = I + 2gL`.
//!
//! Node indices are 0-based everywhere, including the JSON file format
//! `{"n": <int>, "edges": [[i,j], ...]}`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A simple undirected unweighted graph: `n` nodes, edges stored as
/// normalized `(min, max)` pairs, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphData", into = "GraphData")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

/// Wire form of [`Graph`]: `{"n": .., "edges": [[i,j],..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphData {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphData> for Graph {
    type Error = Error;
    fn try_from(data: GraphData) -> Result<Self> {
        Graph::new(data.n, &data.edges)
    }
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> Self {
        GraphData {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Build a graph from a node count and an edge list. Edges are
    /// normalized to `(min, max)`; self-loops, duplicates, and
    /// out-of-range indices are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("node count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for &(i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at node {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i},{j}) out of range for n={n}"
                )));
            }
            let e = (i.min(j), i.max(j));
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({},{})",
                    e.0, e.1
                )));
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in &edges {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            neighbors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    /// Dense adjacency matrix with entries in `{0, 1}` and zero diagonal.
    pub fn adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
        }
        a
    }

    /// Combinatorial Laplacian `L = D - A`. Rows sum to zero; positive
    /// semidefinite.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            l[(i, j)] = -1.0;
            l[(j, i)] = -1.0;
            l[(i, i)] += 1.0;
            l[(j, j)] += 1.0;
        }
        l
    }

    pub fn is_connected(&self) -> bool {
        let mut visited = vec![false; self.n];
        let mut stack = vec![0usize];
        visited[0] = true;
        let mut seen = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !visited[v] {
                    visited[v] = true;
                    seen += 1;
                    stack.push(v);
                }
            }
        }
        seen == self.n
    }

    /// Number of edges with one endpoint in `part_a` and one outside it.
    pub fn cut_edges(&self, part_a: &[usize]) -> usize {
        let mut in_a = vec![false; self.n];
        for &i in part_a {
            in_a[i] = true;
        }
        self.edges
            .iter()
            .filter(|&&(i, j)| in_a[i] != in_a[j])
            .count()
    }
}

/// Standalone form of [`Graph::laplacian`].
pub fn laplacian(graph: &Graph) -> DMatrix<f64> {
    graph.laplacian()
}

/// Named graph families used throughout the examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Path,
    Star,
    Cycle,
    CompleteBipartite,
    Barbell,
    Lollipop,
    StarCoalescence,
    Kite,
    Square,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(Family::Complete),
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            "cycle" => Ok(Family::Cycle),
            "complete_bipartite" => Ok(Family::CompleteBipartite),
            "barbell" => Ok(Family::Barbell),
            "lollipop" => Ok(Family::Lollipop),
            "star_coalescence" => Ok(Family::StarCoalescence),
            "kite" => Ok(Family::Kite),
            "square" => Ok(Family::Square),
            other => Err(Error::UnknownFamily(other.into())),
        }
    }
}

fn expect_params(name: &str, params: &[usize], count: usize) -> Result<()> {
    if params.len() != count {
        return Err(Error::InvalidFamilyParams(format!(
            "family `{name}` takes {count} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

/// Build a named graph family.
///
/// - `complete(n)`, `path(n)`, `star(n)`, `cycle(n)`: one size parameter
///   (total node count; `star(n)` is the hub node 0 plus `n-1` leaves).
/// - `complete_bipartite(m,n)`: parts `0..m` and `m..m+n`.
/// - `barbell(l1,l2)`: cliques `K_l1` and `K_l2` joined by the bridge
///   `(l1-1, l1)`.
/// - `lollipop(m,n)`: clique `K_m` joined to the path `P_n` by the bridge
///   `(m-1, m)`.
/// - `star_coalescence(s1,s2)`: stars on `s1` and `s2` nodes joined
///   hub-to-hub by the bridge `(0, s1)`.
/// - `kite`: 4 nodes, 5 edges (complete graph minus the edge `(2,3)`).
/// - `square`: the 4-cycle.
pub fn make_family(name: &str, params: &[usize]) -> Result<Graph> {
    let family = Family::from_str(name)?;
    match family {
        Family::Complete => {
            expect_params(name, params, 1)?;
            complete_graph(params[0])
        }
        Family::Path => {
            expect_params(name, params, 1)?;
            path_graph(params[0])
        }
        Family::Star => {
            expect_params(name, params, 1)?;
            star_graph(params[0])
        }
        Family::Cycle => {
            expect_params(name, params, 1)?;
            cycle_graph(params[0])
        }
        Family::CompleteBipartite => {
            expect_params(name, params, 2)?;
            complete_bipartite_graph(params[0], params[1])
        }
        Family::Barbell => {
            expect_params(name, params, 2)?;
            barbell_graph(params[0], params[1])
        }
        Family::Lollipop => {
            expect_params(name, params, 2)?;
            lollipop_graph(params[0], params[1])
        }
        Family::StarCoalescence => {
            expect_params(name, params, 2)?;
            star_coalescence_graph(params[0], params[1])
        }
        Family::Kite => {
            expect_params(name, params, 0)?;
            kite_graph()
        }
        Family::Square => {
            expect_params(name, params, 0)?;
            square_graph()
        }
    }
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidFamilyParams("complete: n >= 1".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::new(n, &edges)
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidFamilyParams("path: n >= 1".into()));
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges)
}

/// Star on `n` nodes: hub 0 connected to leaves `1..n`.
pub fn star_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidFamilyParams("star: n >= 2".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::new(n, &edges)
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidFamilyParams("cycle: n >= 3".into()));
    }
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges)
}

pub fn complete_bipartite_graph(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidFamilyParams(
            "complete_bipartite: both sides >= 1".into(),
        ));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push((i, m + j));
        }
    }
    Graph::new(m + n, &edges)
}

/// Two cliques `K_l1` (nodes `0..l1`) and `K_l2` (nodes `l1..l1+l2`)
/// joined by the bridge `(l1-1, l1)`.
pub fn barbell_graph(l1: usize, l2: usize) -> Result<Graph> {
    if l1 < 1 || l2 < 1 {
        return Err(Error::InvalidFamilyParams("barbell: blocks >= 1".into()));
    }
    let mut edges = Vec::new();
    for i in 0..l1 {
        for j in (i + 1)..l1 {
            edges.push((i, j));
        }
    }
    for i in 0..l2 {
        for j in (i + 1)..l2 {
            edges.push((l1 + i, l1 + j));
        }
    }
    edges.push((l1 - 1, l1));
    Graph::new(l1 + l2, &edges)
}

/// Clique `K_m` (nodes `0..m`) joined to the path `P_n`
/// (nodes `m..m+n`) by the bridge `(m-1, m)`.
pub fn lollipop_graph(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidFamilyParams(
            "lollipop: m >= 1, n >= 1".into(),
        ));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            edges.push((i, j));
        }
    }
    for k in 0..n - 1 {
        edges.push((m + k, m + k + 1));
    }
    edges.push((m - 1, m));
    Graph::new(m + n, &edges)
}

/// Stars on `s1` nodes (hub 0) and `s2` nodes (hub `s1`) joined
/// hub-to-hub by a bridge.
pub fn star_coalescence_graph(s1: usize, s2: usize) -> Result<Graph> {
    if s1 < 1 || s2 < 1 {
        return Err(Error::InvalidFamilyParams(
            "star_coalescence: stars >= 1 node".into(),
        ));
    }
    let mut edges = Vec::new();
    for i in 1..s1 {
        edges.push((0, i));
    }
    for i in 1..s2 {
        edges.push((s1, s1 + i));
    }
    edges.push((0, s1));
    Graph::new(s1 + s2, &edges)
}

/// 4 nodes, 5 edges: nodes 0 and 1 have degree 3, nodes 2 and 3 degree 2
/// (the complete graph on 4 nodes minus the edge `(2,3)`).
pub fn kite_graph() -> Result<Graph> {
    Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
}

/// The 4-cycle `0-1-2-3-0`.
pub fn square_graph() -> Result<Graph> {
    Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

/// A node split `(A, B)`; `part_a` is stored explicitly, `part_b` is the
/// complement. Must be a nonempty proper subset without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionData", into = "PartitionData")]
pub struct Bipartition {
    n: usize,
    part_a: Vec<usize>,
}

/// Wire form of [`Bipartition`]: `{"part_a": [i, ...]}` (the node count
/// comes from the graph it is applied to).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionData {
    pub part_a: Vec<usize>,
    #[serde(default)]
    pub n: Option<usize>,
}

impl TryFrom<PartitionData> for Bipartition {
    type Error = Error;
    fn try_from(data: PartitionData) -> Result<Self> {
        let n = data
            .n
            .ok_or_else(|| Error::InvalidPartition("partition data needs a node count".into()))?;
        Bipartition::new(n, data.part_a)
    }
}

impl From<Bipartition> for PartitionData {
    fn from(p: Bipartition) -> Self {
        PartitionData {
            part_a: p.part_a,
            n: Some(p.n),
        }
    }
}

impl Bipartition {
    pub fn new(n: usize, part_a: Vec<usize>) -> Result<Self> {
        if part_a.is_empty() {
            return Err(Error::InvalidPartition("part A is empty".into()));
        }
        if part_a.len() >= n {
            return Err(Error::InvalidPartition(
                "part A must be a proper subset of the nodes".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &i in &part_a {
            if i >= n {
                return Err(Error::InvalidPartition(format!(
                    "node {i} out of range for n={n}"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidPartition(format!("duplicate node {i}")));
            }
            seen[i] = true;
        }
        Ok(Bipartition { n, part_a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part_a(&self) -> &[usize] {
        &self.part_a
    }

    /// Complement of `part_a` in ascending node order.
    pub fn part_b(&self) -> Vec<usize> {
        let mut in_a = vec![false; self.n];
        for &i in &self.part_a {
            in_a[i] = true;
        }
        (0..self.n).filter(|&i| !in_a[i]).collect()
    }

    /// The same split with the roles of the two parts exchanged.
    pub fn complement(&self) -> Bipartition {
        Bipartition {
            n: self.n,
            part_a: self.part_b(),
        }
    }
}

/// A bipartition refined into four ordered blocks `(b1, b2, b3, b4)` of
/// sizes `(m1, m2, n2, n1)`: interior of A, boundary of A, boundary of B,
/// interior of B. No edge may connect b1-b3, b1-b4, or b2-b4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourBlockPartition {
    blocks: [Vec<usize>; 4],
}

impl FourBlockPartition {
    /// Validate explicit blocks against a graph: the blocks must partition
    /// the node set and the non-adjacent-block entries of the adjacency
    /// matrix must vanish.
    pub fn new(graph: &Graph, blocks: [Vec<usize>; 4]) -> Result<Self> {
        let n = graph.n();
        let mut owner = vec![usize::MAX; n];
        for (k, block) in blocks.iter().enumerate() {
            for &i in block {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "node {i} out of range for n={n}"
                    )));
                }
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "node {i} appears in two blocks"
                    )));
                }
                owner[i] = k;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::InvalidPartition(
                "blocks do not cover all nodes".into(),
            ));
        }
        for &(i, j) in graph.edges() {
            let (a, b) = (owner[i].min(owner[j]), owner[i].max(owner[j]));
            if b - a > 1 {
                return Err(Error::InvalidPartition(format!(
                    "edge ({i},{j}) connects non-adjacent blocks {a} and {b}"
                )));
            }
        }
        Ok(FourBlockPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>; 4] {
        &self.blocks
    }

    /// Block sizes `(m1, m2, n2, n1)`.
    pub fn sizes(&self) -> (usize, usize, usize, usize) {
        (
            self.blocks[0].len(),
            self.blocks[1].len(),
            self.blocks[2].len(),
            self.blocks[3].len(),
        )
    }

    /// Nodes of part A (`b1` then `b2`).
    pub fn part_a(&self) -> Vec<usize> {
        let mut v = self.blocks[0].clone();
        v.extend_from_slice(&self.blocks[1]);
        v
    }

    /// Nodes of part B (`b3` then `b4`).
    pub fn part_b(&self) -> Vec<usize> {
        let mut v = self.blocks[2].clone();
        v.extend_from_slice(&self.blocks[3]);
        v
    }
}

/// Refine a bipartition into its four-block form: `b2` (`b3`) collects the
/// nodes of part A (B) with at least one edge into the other part, `b1`
/// (`b4`) the remainder. The no-cross-edge invariant holds by construction.
pub fn four_block_of(graph: &Graph, p: &Bipartition) -> FourBlockPartition {
    let n = graph.n();
    let mut in_a = vec![false; n];
    for &i in p.part_a() {
        in_a[i] = true;
    }
    let boundary = |i: usize| graph.neighbors(i).iter().any(|&j| in_a[j] != in_a[i]);
    let mut blocks: [Vec<usize>; 4] = Default::default();
    for &i in p.part_a() {
        if boundary(i) {
            blocks[1].push(i);
        } else {
            blocks[0].push(i);
        }
    }
    for i in p.part_b() {
        if boundary(i) {
            blocks[2].push(i);
        } else {
            blocks[3].push(i);
        }
    }
    FourBlockPartition { blocks }
}

/// The potential matrix `V = I + 2gL` of an oscillator network with
/// coupling strength `g >= 0`. Symmetric positive definite with unit row
/// sums.
#[derive(Debug, Clone)]
pub struct PotentialMatrix {
    graph: Graph,
    g: f64,
    matrix: DMatrix<f64>,
}

impl PotentialMatrix {
    pub fn new(graph: &Graph, g: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::NegativeCoupling(g));
        }
        let n = graph.n();
        let mut m = graph.laplacian();
        m *= 2.0 * g;
        for i in 0..n {
            m[(i, i)] += 1.0;
        }
        Ok(PotentialMatrix {
            graph: graph.clone(),
            g,
            matrix: m,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Standalone form of [`PotentialMatrix::new`].
pub fn potential_matrix(graph: &Graph, g: f64) -> Result<PotentialMatrix> {
    PotentialMatrix::new(graph, g)
}
