//! Simple undirected graphs and their matrices.
//!
//! Vertices are exposed 1-based at the text boundary (edge-list files) to
//! match the usual labeling v_1..v_n; everywhere inside the crate indices
//! are 0-based. Adjacency, degree, and Laplacian matrices are stored as
//! exact integers and converted to floating point only when they enter the
//! eigensolvers.

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("self-loop at vertex {vertex} (simple graphs only)")]
    SelfLoop { vertex: usize },

    #[error("unparsable token {token:?} on line {line}")]
    BadToken { token: String, line: usize },

    #[error("edge line {line} must have exactly two vertex labels")]
    BadEdgeLine { line: usize },

    #[error("missing vertex-count header line")]
    MissingHeader,

    #[error("vertex count must be positive")]
    EmptyVertexSet,

    #[error("{family} requires at least {min} vertices, got {n}")]
    TooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
}

/// Named generator families for the test corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    Path,
    Cycle,
    Complete,
    Star,
    Empty,
}

impl GraphFamily {
    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Path => "path",
            GraphFamily::Cycle => "cycle",
            GraphFamily::Complete => "complete",
            GraphFamily::Star => "star",
            GraphFamily::Empty => "empty",
        }
    }
}

/// A simple undirected graph on vertices `0..n` with its connected
/// components cached at construction (ordered by smallest contained vertex,
/// vertices ascending inside each component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    components: Vec<Vec<usize>>,
}

impl Graph {
    /// Build from 0-based endpoint pairs. Duplicate edges are deduplicated;
    /// self-loops and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { index: u + 1, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { index: v + 1, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u + 1 });
            }
            set.insert((u.min(v), u.max(v)));
        }
        let components = find_components(n, &set);
        Ok(Graph {
            n,
            edges: set,
            components,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 0-based `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Connected components, ordered by smallest contained vertex.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Component index of a vertex.
    pub fn component_of(&self, v: usize) -> usize {
        self.components
            .iter()
            .position(|c| c.binary_search(&v).is_ok())
            .expect("vertex in range")
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn laplacian_bundle(&self) -> LaplacianBundle {
        let n = self.n;
        let mut adjacency = IntMatrix::zeros(n, n);
        let mut degree = IntMatrix::zeros(n, n);
        for &(u, v) in &self.edges {
            adjacency.set(u, v, 1);
            adjacency.set(v, u, 1);
            degree.set(u, u, degree.get(u, u) + 1);
            degree.set(v, v, degree.get(v, v) + 1);
        }
        let mut laplacian = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                laplacian.set(i, j, degree.get(i, j) - adjacency.get(i, j));
            }
        }
        LaplacianBundle {
            adjacency,
            degree,
            laplacian,
        }
    }

    /// Disjoint union: vertices of `other` are relabeled to follow ours, so
    /// the Laplacian of the result is the block-diagonal of the parts.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n;
        let mut edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        Graph::new(self.n + other.n, &edges).expect("valid parts")
    }

    /// Standard named graph on vertices 0..n.
    pub fn generate(family: GraphFamily, n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let edges: Vec<(usize, usize)> = match family {
            GraphFamily::Path => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            GraphFamily::Cycle => {
                if n < 3 {
                    return Err(GraphError::TooSmall {
                        family: "cycle",
                        min: 3,
                        n,
                    });
                }
                (0..n).map(|i| (i, (i + 1) % n)).collect()
            }
            GraphFamily::Complete => {
                let mut e = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        e.push((i, j));
                    }
                }
                e
            }
            GraphFamily::Star => (1..n).map(|i| (0, i)).collect(),
            GraphFamily::Empty => Vec::new(),
        };
        Graph::new(n, &edges)
    }

    /// Seeded random connected graph: a random recursive tree plus extra
    /// edges with probability 0.3 each. Deterministic for a given RNG state.
    pub fn random_connected(n: usize, rng: &mut impl Rng) -> Graph {
        assert!(n >= 1);
        let mut edges = Vec::new();
        for v in 1..n {
            let parent = rng.gen_range(0..v);
            edges.push((parent, v));
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if !edges.contains(&(u, v)) && rng.gen_bool(0.3) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("generated edges valid")
    }
}

/// Parse the crate's edge-list text format: the first non-comment line is
/// the vertex count, each following line is `u v` (1-based). Lines starting
/// with `#` and blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if tokens.len() != 1 {
                    return Err(GraphError::BadEdgeLine { line: line_no });
                }
                let count: usize = tokens[0].parse().map_err(|_| GraphError::BadToken {
                    token: tokens[0].to_string(),
                    line: line_no,
                })?;
                if count == 0 {
                    return Err(GraphError::EmptyVertexSet);
                }
                n = Some(count);
            }
            Some(count) => {
                if tokens.len() != 2 {
                    return Err(GraphError::BadEdgeLine { line: line_no });
                }
                let mut pair = [0usize; 2];
                for (slot, token) in pair.iter_mut().zip(&tokens) {
                    let value: usize = token.parse().map_err(|_| GraphError::BadToken {
                        token: token.to_string(),
                        line: line_no,
                    })?;
                    if value < 1 || value > count {
                        return Err(GraphError::VertexOutOfRange {
                            index: value,
                            n: count,
                        });
                    }
                    *slot = value - 1;
                }
                if pair[0] == pair[1] {
                    return Err(GraphError::SelfLoop {
                        vertex: pair[0] + 1,
                    });
                }
                edges.push((pair[0], pair[1]));
            }
        }
    }
    match n {
        Some(count) => Graph::new(count, &edges),
        None => Err(GraphError::MissingHeader),
    }
}

/// Render a graph back into the edge-list text format.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

fn find_components(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut members = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// Exact integer matrices for the graph layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    /// Block-diagonal assembly, exact.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = IntMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) as f64)
    }
}

/// Adjacency, degree, and Laplacian of a graph, as exact integer matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianBundle {
    pub adjacency: IntMatrix,
    pub degree: IntMatrix,
    pub laplacian: IntMatrix,
}

impl LaplacianBundle {
    pub fn laplacian_f64(&self) -> Matrix {
        self.laplacian.to_matrix()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_path_three() {
        let g = parse_edge_list("3\n1 2\n2 3").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 2));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn parse_dedups_duplicate_edges() {
        let g = parse_edge_list("2\n1 2\n1 2").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert!(matches!(
            parse_edge_list("2\n1 1"),
            Err(GraphError::SelfLoop { vertex: 1 })
        ));
    }

    #[test]
    fn parse_rejects_out_of_range_and_junk() {
        assert!(matches!(
            parse_edge_list("2\n1 3"),
            Err(GraphError::VertexOutOfRange { index: 3, n: 2 })
        ));
        assert!(matches!(
            parse_edge_list("2\n1 x"),
            Err(GraphError::BadToken { .. })
        ));
        assert!(matches!(
            parse_edge_list("# only comments\n"),
            Err(GraphError::MissingHeader)
        ));
    }

    #[test]
    fn parse_skips_comments_and_blanks() {
        let g = parse_edge_list("# a path\n\n3\n# edge one\n1 2\n\n2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn generators() {
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();
        assert_eq!(k3.edge_count(), 3);
        let empty = Graph::generate(GraphFamily::Empty, 4).unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(empty.component_count(), 4);
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        assert_eq!(p2.edge_count(), 1);
        assert!(matches!(
            Graph::generate(GraphFamily::Cycle, 2),
            Err(GraphError::TooSmall { .. })
        ));
        let star = Graph::generate(GraphFamily::Star, 4).unwrap();
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.degree(0), 3);
    }

    #[test]
    fn components_order_and_union() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let union = p2.disjoint_union(&p2);
        assert_eq!(union.vertex_count(), 4);
        assert_eq!(union.components(), &[vec![0, 1], vec![2, 3]]);

        let p4 = Graph::generate(GraphFamily::Path, 4).unwrap();
        assert_eq!(p4.components(), &[vec![0, 1, 2, 3]]);

        let single = Graph::generate(GraphFamily::Empty, 1).unwrap();
        let with_isolated = p2.disjoint_union(&single);
        assert_eq!(with_isolated.components(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn laplacian_values() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let b = p2.laplacian_bundle();
        assert_eq!(b.laplacian.get(0, 0), 1);
        assert_eq!(b.laplacian.get(0, 1), -1);
        assert_eq!(b.laplacian.get(1, 0), -1);
        assert_eq!(b.laplacian.get(1, 1), 1);

        // K3: L = 3I - J
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();
        let l = k3.laplacian_bundle().laplacian;
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 2 } else { -1 });
            }
        }

        let empty = Graph::generate(GraphFamily::Empty, 2).unwrap();
        assert_eq!(empty.laplacian_bundle().laplacian, IntMatrix::zeros(2, 2));
    }

    #[test]
    fn union_laplacian_is_block_diagonal() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let p3 = Graph::generate(GraphFamily::Path, 3).unwrap();
        let union = p2.disjoint_union(&p3);
        let expected = p2
            .laplacian_bundle()
            .laplacian
            .block_diag(&p3.laplacian_bundle().laplacian);
        assert_eq!(union.laplacian_bundle().laplacian, expected);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = Graph::generate(GraphFamily::Star, 5).unwrap();
        let l = g.laplacian_bundle().laplacian;
        for i in 0..5 {
            let sum: i64 = (0..5).map(|j| l.get(i, j)).sum();
            assert_eq!(sum, 0);
        }
    }

    #[test]
    fn random_connected_is_connected_and_deterministic() {
        use rand::SeedableRng;
        let mut rng1 = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..=8 {
            let a = Graph::random_connected(n, &mut rng1);
            let b = Graph::random_connected(n, &mut rng2);
            assert!(a.is_connected());
            assert_eq!(a, b);
        }
    }
}
