//! Orthogonality graphs of vector configurations.
//!
//! Vertices are vectors (or lines through the origin in projective mode) and
//! edges join exactly the orthogonal pairs. Orthogonality is scale invariant,
//! so integer-coordinate inputs are accepted without unit normalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numerics::RationalVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("zero vector at index {0}")]
    ZeroVector(usize),
    #[error("projective mode: vectors {i} and {j} are parallel but not an exact ± pair")]
    ParallelVectors { i: usize, j: usize },
    #[error("label count {labels} does not match vector count {vectors}")]
    LabelMismatch { labels: usize, vectors: usize },
}

/// An ordered list of nonzero vectors with optional per-vector names.
#[derive(Clone, Debug)]
pub struct VectorConfig {
    vectors: Vec<RationalVector>,
    labels: Vec<String>,
}

impl VectorConfig {
    /// Labels default to 1-based positions.
    pub fn new(vectors: Vec<RationalVector>) -> Result<Self, GraphError> {
        let labels = (1..=vectors.len()).map(|i| i.to_string()).collect();
        Self::with_labels(vectors, labels)
    }

    pub fn with_labels(
        vectors: Vec<RationalVector>,
        labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        if labels.len() != vectors.len() {
            return Err(GraphError::LabelMismatch {
                labels: labels.len(),
                vectors: vectors.len(),
            });
        }
        if let Some(i) = vectors.iter().position(RationalVector::is_zero) {
            return Err(GraphError::ZeroVector(i));
        }
        Ok(Self { vectors, labels })
    }

    pub fn vectors(&self) -> &[RationalVector] {
        &self.vectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// The 13-vector configuration whose orthogonality graph is 4-chromatic.
pub fn decorte13() -> VectorConfig {
    let coords: [[i64; 3]; 13] = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [0, 1, 1],
        [1, 0, 1],
        [1, 1, 0],
        [0, 1, -1],
        [1, 0, -1],
        [1, -1, 0],
        [-1, 1, 1],
        [1, -1, 1],
        [1, 1, -1],
        [1, 1, 1],
    ];
    let vectors: Vec<RationalVector> = coords
        .iter()
        .map(|&[x, y, z]| RationalVector::from_integers(x, y, z))
        .collect();
    let labels = coords
        .iter()
        .map(|&[x, y, z]| format!("({x},{y},{z})"))
        .collect();
    VectorConfig::with_labels(vectors, labels).expect("built-in configuration is valid")
}

/// Graph on vector indices whose edges are exactly the orthogonal pairs.
#[derive(Clone, Debug)]
pub struct OrthoGraph {
    adjacency: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
    /// Representative vector per vertex; `None` for synthetic graphs.
    vectors: Option<Vec<RationalVector>>,
    /// Input vector indices merged into each vertex.
    sources: Vec<Vec<usize>>,
}

impl OrthoGraph {
    /// Builds a graph from an explicit edge list (for solvers and tests).
    pub fn from_edges(vertex_count: usize, edge_list: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![vec![false; vertex_count]; vertex_count];
        for &(i, j) in edge_list {
            assert!(i < vertex_count && j < vertex_count && i != j, "bad edge ({i},{j})");
            adjacency[i][j] = true;
            adjacency[j][i] = true;
        }
        let edges = collect_edges(&adjacency);
        let labels = (0..vertex_count).map(|i| i.to_string()).collect();
        let sources = (0..vertex_count).map(|i| vec![i]).collect();
        Self {
            adjacency,
            edges,
            labels,
            vectors: None,
            sources,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|&&a| a).count()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i]
            .iter()
            .enumerate()
            .filter_map(|(j, &a)| a.then_some(j))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vector(&self, i: usize) -> Option<&RationalVector> {
        self.vectors.as_ref().map(|v| &v[i])
    }

    pub fn sources(&self, i: usize) -> &[usize] {
        &self.sources[i]
    }

    /// All triangles `(i, j, k)`, `i < j < k`; for a graph built from vectors
    /// in R³ these are exactly the mutually orthogonal triples.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.adjacency[i][j] {
                    continue;
                }
                for k in (j + 1)..n {
                    if self.adjacency[i][k] && self.adjacency[j][k] {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// DOT rendering of the graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph orthogonality {\n");
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("  {i} [label=\"{}\"];\n", label.replace('"', "\\\"")));
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Adjacency report for JSON export.
    pub fn report(&self) -> GraphReport {
        GraphReport {
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            vertices: (0..self.vertex_count())
                .map(|i| VertexReport {
                    index: i,
                    label: self.labels[i].clone(),
                    vector: self.vector(i).map(|v| {
                        [v.x.to_string(), v.y.to_string(), v.z.to_string()]
                    }),
                    sources: self.sources[i].clone(),
                })
                .collect(),
            edges: self.edges.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GraphReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub vertices: Vec<VertexReport>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize)]
pub struct VertexReport {
    pub index: usize,
    pub label: String,
    pub vector: Option<[String; 3]>,
    pub sources: Vec<usize>,
}

fn collect_edges(adjacency: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, row) in adjacency.iter().enumerate() {
        for (j, &a) in row.iter().enumerate().skip(i + 1) {
            if a {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Primitive integer direction of the line spanned by `v`, with the first
/// nonzero coordinate positive.
fn line_representative(v: &RationalVector) -> RationalVector {
    let mut n = BigInt::one();
    for c in v.coords() {
        n = n.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = v.coords().iter().map(|c| c.numer() * (&n / c.denom())).collect();
    let mut g = ints[0].gcd(&ints[1]).gcd(&ints[2]);
    if g.is_zero() {
        g = BigInt::one();
    }
    for c in ints.iter_mut() {
        *c = &*c / &g;
    }
    if ints.iter().find(|c| !c.is_zero()).map(|c| c.is_negative()) == Some(true) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    RationalVector::new(
        crate::numerics::Rational::from(ints[0].clone()),
        crate::numerics::Rational::from(ints[1].clone()),
        crate::numerics::Rational::from(ints[2].clone()),
    )
}

/// Builds the orthogonality graph of a configuration.
///
/// In projective mode each antipodal pair `{v, −v}` (and exact duplicates)
/// collapses to a single vertex named by the representative whose first
/// nonzero coordinate is positive; parallel vectors that are not an exact
/// ± pair are rejected so that no two distinct input points silently merge.
pub fn build_graph(config: &VectorConfig, projective: bool) -> Result<OrthoGraph, GraphError> {
    let input = config.vectors();
    let mut vertex_vectors: Vec<RationalVector> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut sources: Vec<Vec<usize>> = Vec::new();

    if projective {
        let mut reps: Vec<RationalVector> = Vec::new();
        for (idx, v) in input.iter().enumerate() {
            let rep = line_representative(v);
            if let Some(pos) = reps.iter().position(|r| *r == rep) {
                // Same line: only v or −v of an existing input may merge.
                let prior = &input[sources[pos][0]];
                if v != prior && *v != prior.negated() {
                    return Err(GraphError::ParallelVectors {
                        i: sources[pos][0],
                        j: idx,
                    });
                }
                sources[pos].push(idx);
            } else {
                reps.push(rep.clone());
                vertex_vectors.push(rep);
                labels.push(config.labels()[idx].clone());
                sources.push(vec![idx]);
            }
        }
    } else {
        for (idx, v) in input.iter().enumerate() {
            vertex_vectors.push(v.clone());
            labels.push(config.labels()[idx].clone());
            sources.push(vec![idx]);
        }
    }

    let n = vertex_vectors.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if vertex_vectors[i].dot(&vertex_vectors[j]).is_zero() {
                adjacency[i][j] = true;
                adjacency[j][i] = true;
            }
        }
    }
    let edges = collect_edges(&adjacency);
    Ok(OrthoGraph {
        adjacency,
        edges,
        labels,
        vectors: Some(vertex_vectors),
        sources,
    })
}

/// Deterministic greedy clique, used as a chromatic lower bound.
///
/// Grows a clique from every seed vertex scanning candidates by
/// (degree desc, index asc); returns the largest clique found.
pub fn greedy_clique(graph: &OrthoGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));

    let mut best: Vec<usize> = Vec::new();
    for &seed in &order {
        let mut clique = vec![seed];
        for &cand in &order {
            if cand == seed {
                continue;
            }
            if clique.iter().all(|&m| graph.adjacent(m, cand)) {
                clique.push(cand);
            }
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}
