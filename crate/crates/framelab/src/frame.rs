//! Frames generated by graph Laplacians.
//!
//! A graph with Laplacian `L = M diag(λ) Mᵀ` yields a frame for ℝᵏ
//! (k = rank L) whose synthesis matrix is `diag(√λ) M₁ᵀ`, M₁ the nonzero
//! eigenvector columns. Its Gramian reproduces `L` exactly, its frame
//! operator is the diagonal of nonzero Laplacian eigenvalues, and its dual
//! frames are the canonical dual shifted by one arbitrary offset vector per
//! connected component.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{self, matrix, Matrix};
use crate::subsets::for_each_combination;

/// Max vector count for the exhaustive full-spark scan.
pub const FULL_SPARK_CAP: usize = 16;

const ORTHOGONALITY_TOL: f64 = 1e-8;
const DUALITY_TOL: f64 = 1e-8;
const CONDITION_CAP: f64 = 1e12;
const TRANSPORT_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("graph has no edges (frame dimension would be zero)")]
    NoEdges,

    #[error("synthesis columns do not span the ambient space (rank {rank} < dim {dim})")]
    NotAFrame { rank: usize, dim: usize },

    #[error("frame operator numerically singular (condition estimate {cond:e})")]
    SingularOperator { cond: f64 },

    #[error("expected {expected} offset vectors (one per component), got {got}")]
    OffsetCount { expected: usize, got: usize },

    #[error("offset {index} has dimension {got}, ambient dimension is {dim}")]
    OffsetDim { index: usize, got: usize, dim: usize },

    #[error("dual identity violated (residual {residual:e}); offsets only parametrize duals of graph-generated frames")]
    DualityViolation { residual: f64 },

    #[error("matrix is not orthogonal (residual {residual:e})")]
    NotOrthogonal { residual: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("frame has no source graph; operation is defined for graph-generated frames")]
    MissingGraph,

    #[error("n = {n} exceeds the exhaustive enumeration cap ({cap})")]
    EnumerationCap { n: usize, cap: usize },

    #[error("zero-eigenvalue multiplicity {kernel} disagrees with component count {components}")]
    KernelMismatch { kernel: usize, components: usize },

    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

/// How a frame's synthesis matrix was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// One eigendecomposition of the full Laplacian.
    GlobalEig,
    /// Per-component eigendecompositions assembled block-diagonally.
    BlockPerComponent,
    /// Image of another frame under an orthogonal map.
    Transported,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::GlobalEig => "global_eig",
            Construction::BlockPerComponent => "block_per_component",
            Construction::Transported => "transported",
        }
    }
}

/// Frame operator `S = Φ Φᵀ` together with its inverse.
#[derive(Debug, Clone)]
pub struct FrameOperator {
    matrix: Matrix,
    inverse: Matrix,
}

impl FrameOperator {
    fn new(matrix: Matrix) -> Result<FrameOperator, FrameError> {
        let inverse = match matrix::invert(&matrix) {
            Some(inv) => inv,
            None => {
                return Err(FrameError::SingularOperator { cond: f64::INFINITY });
            }
        };
        let cond = matrix::row_sum_norm(&matrix) * matrix::row_sum_norm(&inverse);
        if cond > CONDITION_CAP {
            return Err(FrameError::SingularOperator { cond });
        }
        Ok(FrameOperator { matrix, inverse })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// Largest off-diagonal magnitude; zero (to tolerance) for frames built
    /// straight from a Laplacian eigendecomposition.
    pub fn off_diagonal_max(&self) -> f64 {
        let k = self.matrix.rows();
        let mut worst = 0.0_f64;
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    worst = worst.max(self.matrix[(i, j)].abs());
                }
            }
        }
        worst
    }
}

/// A frame of n vectors in ℝᵏ, stored as a k×n synthesis matrix.
#[derive(Debug, Clone)]
pub struct Frame {
    dim: usize,
    n: usize,
    synthesis: Matrix,
    gramian: Matrix,
    operator: FrameOperator,
    source: Option<Graph>,
    construction: Construction,
}

impl Frame {
    fn assemble(
        synthesis: Matrix,
        source: Option<Graph>,
        construction: Construction,
    ) -> Result<Frame, FrameError> {
        let dim = synthesis.rows();
        let n = synthesis.cols();
        let gramian = synthesis.transpose().matmul(&synthesis);
        let operator = FrameOperator::new(synthesis.matmul(&synthesis.transpose()))?;
        Ok(Frame {
            dim,
            n,
            synthesis,
            gramian,
            operator,
            source,
            construction,
        })
    }

    /// Frame from an arbitrary spanning synthesis matrix (plumbing for
    /// non-graph frames; most operations want the graph constructors).
    pub fn from_synthesis(synthesis: Matrix) -> Result<Frame, FrameError> {
        let dim = synthesis.rows();
        let r = linalg::rank(&synthesis, 1e-12);
        if r < dim {
            return Err(FrameError::NotAFrame { rank: r, dim });
        }
        Frame::assemble(synthesis, None, Construction::GlobalEig)
    }

    /// Synthesis from one eigendecomposition of the whole Laplacian.
    pub fn from_graph_global(g: &Graph) -> Result<Frame, FrameError> {
        let n = g.vertex_count();
        let l = g.laplacian_bundle().laplacian_f64();
        let dec = linalg::sym_eig(&l)?;
        let k = dec.nonzero_count();
        if k == 0 {
            return Err(FrameError::NoEdges);
        }
        let expected = n - g.component_count();
        if k != expected {
            return Err(FrameError::KernelMismatch {
                kernel: n - k,
                components: g.component_count(),
            });
        }
        let synthesis = Matrix::from_fn(k, n, |i, j| {
            dec.eigenvalues()[i].sqrt() * dec.eigenvectors()[(j, i)]
        });
        Frame::assemble(synthesis, Some(g.clone()), Construction::GlobalEig)
    }

    /// Per-component synthesis blocks assembled into one frame: component c
    /// owns a band of rows, every column stays at its vertex position, and
    /// isolated vertices contribute zero columns.
    pub fn from_graph_blockwise(g: &Graph) -> Result<Frame, FrameError> {
        let n = g.vertex_count();
        let k_total = n - g.component_count();
        if k_total == 0 {
            return Err(FrameError::NoEdges);
        }
        let mut synthesis = Matrix::zeros(k_total, n);
        let mut row_offset = 0;
        for comp in g.components() {
            let size = comp.len();
            if size == 1 {
                continue; // isolated vertex: zero column, no rows
            }
            // local Laplacian of the induced (connected) component
            let mut local = Matrix::zeros(size, size);
            for (a, &u) in comp.iter().enumerate() {
                for (b, &v) in comp.iter().enumerate().skip(a + 1) {
                    if g.has_edge(u, v) {
                        local[(a, b)] = -1.0;
                        local[(b, a)] = -1.0;
                        local[(a, a)] += 1.0;
                        local[(b, b)] += 1.0;
                    }
                }
            }
            let dec = linalg::sym_eig(&local)?;
            let k_local = dec.nonzero_count();
            if k_local != size - 1 {
                return Err(FrameError::KernelMismatch {
                    kernel: size - k_local,
                    components: 1,
                });
            }
            for i in 0..k_local {
                let scale = dec.eigenvalues()[i].sqrt();
                for (b, &v) in comp.iter().enumerate() {
                    synthesis[(row_offset + i, v)] = scale * dec.eigenvectors()[(b, i)];
                }
            }
            row_offset += k_local;
        }
        Frame::assemble(synthesis, Some(g.clone()), Construction::BlockPerComponent)
    }

    /// `auto` construction: one eigendecomposition for connected graphs,
    /// blockwise for disconnected ones (where the per-component identities
    /// and predicted spectra hold verbatim).
    pub fn from_graph_auto(g: &Graph) -> Result<Frame, FrameError> {
        if g.is_connected() {
            Frame::from_graph_global(g)
        } else {
            Frame::from_graph_blockwise(g)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector_count(&self) -> usize {
        self.n
    }

    pub fn synthesis(&self) -> &Matrix {
        &self.synthesis
    }

    /// The i-th frame vector (column of the synthesis matrix).
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.synthesis.col(i)
    }

    pub fn gramian(&self) -> &Matrix {
        &self.gramian
    }

    pub fn frame_operator(&self) -> &FrameOperator {
        &self.operator
    }

    pub fn source_graph(&self) -> Option<&Graph> {
        self.source.as_ref()
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// Rows of the synthesis matrix owned by component `c` in blockwise
    /// layout: `start..start+height`. Zero-height for isolated vertices.
    pub fn block_rows(&self, c: usize) -> Result<std::ops::Range<usize>, FrameError> {
        let g = self.source.as_ref().ok_or(FrameError::MissingGraph)?;
        let mut start = 0;
        for (idx, comp) in g.components().iter().enumerate() {
            let height = comp.len() - 1;
            if idx == c {
                return Ok(start..start + height);
            }
            start += height;
        }
        Err(FrameError::DimensionMismatch {
            context: format!("component {c} out of range"),
        })
    }

    /// Canonical dual `S⁻¹Φ` (all offsets zero).
    pub fn canonical_dual(&self) -> DualFrame {
        let vectors = self.operator.inverse.matmul(&self.synthesis);
        let m = self.source.as_ref().map_or(1, Graph::component_count);
        DualFrame {
            offsets: vec![vec![0.0; self.dim]; m],
            vectors,
        }
    }

    /// Dual from one offset vector per connected component: column i becomes
    /// `S⁻¹φᵢ + ν_{c(i)}`. Fails when the result is not a dual, which
    /// happens exactly when the frame is not graph-generated.
    pub fn dual_from_offsets(&self, offsets: &[Vec<f64>]) -> Result<DualFrame, FrameError> {
        let g = self.source.as_ref().ok_or(FrameError::MissingGraph)?;
        let m = g.component_count();
        if offsets.len() != m {
            return Err(FrameError::OffsetCount {
                expected: m,
                got: offsets.len(),
            });
        }
        for (i, nu) in offsets.iter().enumerate() {
            if nu.len() != self.dim {
                return Err(FrameError::OffsetDim {
                    index: i,
                    got: nu.len(),
                    dim: self.dim,
                });
            }
        }
        let mut vectors = self.operator.inverse.matmul(&self.synthesis);
        for i in 0..self.n {
            let nu = &offsets[g.component_of(i)];
            for row in 0..self.dim {
                vectors[(row, i)] += nu[row];
            }
        }
        let residual = vectors
            .matmul(&self.synthesis.transpose())
            .max_abs_diff(&Matrix::identity(self.dim));
        if residual > DUALITY_TOL {
            return Err(FrameError::DualityViolation { residual });
        }
        Ok(DualFrame {
            offsets: offsets.to_vec(),
            vectors,
        })
    }

    /// True iff every subset of ≤ dim frame vectors is linearly independent
    /// (checked exhaustively over all C(n, dim) subsets of size dim).
    pub fn is_full_spark(&self) -> Result<bool, FrameError> {
        if self.n > FULL_SPARK_CAP {
            return Err(FrameError::EnumerationCap {
                n: self.n,
                cap: FULL_SPARK_CAP,
            });
        }
        if self.n < self.dim {
            return Ok(false);
        }
        let mut full = true;
        for_each_combination(self.n, self.dim, |cols| {
            if !full {
                return;
            }
            let sub = self.synthesis.select_cols(cols);
            if linalg::rank(&sub, 1e-9) < self.dim {
                full = false;
            }
        });
        Ok(full)
    }

    /// Transport by an orthogonal map: synthesis becomes `U Φ`. The Gramian
    /// (hence the source graph) is preserved.
    pub fn apply_unitary(&self, u: &UnitaryMatrix) -> Result<Frame, FrameError> {
        if u.matrix().rows() != self.dim {
            return Err(FrameError::DimensionMismatch {
                context: format!(
                    "unitary is {}x{}, frame dimension is {}",
                    u.matrix().rows(),
                    u.matrix().cols(),
                    self.dim
                ),
            });
        }
        let synthesis = u.matrix().matmul(&self.synthesis);
        Frame::assemble(synthesis, self.source.clone(), Construction::Transported)
    }

    /// Sum of the frame vectors indexed by `vertices`. Over a full
    /// component this vanishes; over a proper subset of a component it stays
    /// nonzero whenever the subset is independent.
    pub fn vector_sum(&self, vertices: &[usize]) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim];
        for &v in vertices {
            for (row, slot) in acc.iter_mut().enumerate() {
                *slot += self.synthesis[(row, v)];
            }
        }
        acc
    }
}

/// A dual frame of a graph-generated frame: the canonical dual plus one
/// offset vector per connected component.
#[derive(Debug, Clone)]
pub struct DualFrame {
    offsets: Vec<Vec<f64>>,
    vectors: Matrix,
}

impl DualFrame {
    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.col(i)
    }

    pub fn offsets(&self) -> &[Vec<f64>] {
        &self.offsets
    }

    pub fn is_canonical(&self) -> bool {
        self.offsets.iter().flatten().all(|&v| v == 0.0)
    }

    /// Max-abs residual of `Ψ Φᵀ − I`.
    pub fn duality_residual(&self, frame: &Frame) -> f64 {
        self.vectors
            .matmul(&frame.synthesis().transpose())
            .max_abs_diff(&Matrix::identity(frame.dim()))
    }
}

/// A validated orthogonal matrix.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix(Matrix);

impl UnitaryMatrix {
    pub fn new(m: Matrix) -> Result<UnitaryMatrix, FrameError> {
        UnitaryMatrix::with_tolerance(m, ORTHOGONALITY_TOL)
    }

    pub fn with_tolerance(m: Matrix, tol: f64) -> Result<UnitaryMatrix, FrameError> {
        if !m.is_square() {
            return Err(FrameError::DimensionMismatch {
                context: format!("unitary must be square, got {}x{}", m.rows(), m.cols()),
            });
        }
        let residual = m
            .transpose()
            .matmul(&m)
            .max_abs_diff(&Matrix::identity(m.rows()));
        if residual > tol {
            return Err(FrameError::NotOrthogonal { residual });
        }
        Ok(UnitaryMatrix(m))
    }

    pub fn identity(k: usize) -> UnitaryMatrix {
        UnitaryMatrix(Matrix::identity(k))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// Seeded Haar-ish orthogonal matrix: QR of a standard-normal matrix with
/// the R-diagonal sign fix. Identical seeds give identical matrices.
pub fn random_orthogonal(k: usize, seed: u64) -> UnitaryMatrix {
    assert!(k >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gauss = Matrix::from_fn(k, k, |_, _| StandardNormal.sample(&mut rng));
    let q = linalg::qr_orthonormal(&gauss);
    UnitaryMatrix::with_tolerance(q, 1e-10).expect("QR factor is orthogonal")
}

/// The orthogonal map carrying `from` onto `to` (frames with equal
/// Gramians are related by one): `U = Φ_to Φ_fromᵀ S_from⁻¹`, then verified.
pub fn orthogonal_transport(from: &Frame, to: &Frame) -> Result<UnitaryMatrix, FrameError> {
    if from.dim() != to.dim() || from.vector_count() != to.vector_count() {
        return Err(FrameError::DimensionMismatch {
            context: format!(
                "frames are {}x{} and {}x{}",
                from.dim(),
                from.vector_count(),
                to.dim(),
                to.vector_count()
            ),
        });
    }
    let u = to
        .synthesis()
        .matmul(&from.synthesis().transpose())
        .matmul(from.frame_operator().inverse());
    let residual = u.matmul(from.synthesis()).max_abs_diff(to.synthesis());
    if residual > TRANSPORT_TOL {
        return Err(FrameError::DualityViolation { residual });
    }
    UnitaryMatrix::with_tolerance(u, TRANSPORT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn graph(family: GraphFamily, n: usize) -> Graph {
        Graph::generate(family, n).unwrap()
    }

    #[test]
    fn p2_frame_by_hand() {
        let f = Frame::from_graph_global(&graph(GraphFamily::Path, 2)).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.vector_count(), 2);
        // synthesis [1, -1] up to global sign; sign convention makes it exact
        assert!((f.synthesis()[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((f.synthesis()[(0, 1)] + 1.0).abs() < 1e-12);
        assert!((f.frame_operator().matrix()[(0, 0)] - 2.0).abs() < 1e-12);
        let dual = f.canonical_dual();
        assert!((dual.vectors()[(0, 0)] - 0.5).abs() < 1e-12);
        assert!((dual.vectors()[(0, 1)] + 0.5).abs() < 1e-12);
        assert!(dual.is_canonical());
    }

    #[test]
    fn gramian_reproduces_laplacian() {
        for (family, n) in [
            (GraphFamily::Complete, 3),
            (GraphFamily::Path, 5),
            (GraphFamily::Cycle, 6),
            (GraphFamily::Star, 5),
        ] {
            let g = graph(family, n);
            let l = g.laplacian_bundle().laplacian_f64();
            for f in [
                Frame::from_graph_global(&g).unwrap(),
                Frame::from_graph_blockwise(&g).unwrap(),
            ] {
                assert!(
                    f.gramian().max_abs_diff(&l) < 1e-8,
                    "{} on {}",
                    f.construction().name(),
                    family.name()
                );
            }
        }
    }

    #[test]
    fn empty_graph_rejected() {
        let g = graph(GraphFamily::Empty, 3);
        assert!(matches!(
            Frame::from_graph_global(&g),
            Err(FrameError::NoEdges)
        ));
        assert!(matches!(
            Frame::from_graph_blockwise(&g),
            Err(FrameError::NoEdges)
        ));
    }

    #[test]
    fn blockwise_p2_p2_layout() {
        let p2 = graph(GraphFamily::Path, 2);
        let f = Frame::from_graph_blockwise(&p2.disjoint_union(&p2)).unwrap();
        assert_eq!(f.dim(), 2);
        let expected = Matrix::from_rows(&[vec![1.0, -1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, -1.0]]);
        assert!(f.synthesis().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn blockwise_frame_operator_diagonal() {
        let p2 = graph(GraphFamily::Path, 2);
        let k3 = graph(GraphFamily::Complete, 3);
        let f = Frame::from_graph_blockwise(&p2.disjoint_union(&k3)).unwrap();
        let s = f.frame_operator().matrix();
        assert!(f.frame_operator().off_diagonal_max() < 1e-10);
        let mut diag: Vec<f64> = (0..3).map(|i| s[(i, i)]).collect();
        diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((diag[0] - 2.0).abs() < 1e-10);
        assert!((diag[1] - 3.0).abs() < 1e-10);
        assert!((diag[2] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn isolated_vertex_contributes_zero_column() {
        let p2 = graph(GraphFamily::Path, 2);
        let single = graph(GraphFamily::Empty, 1);
        let g = p2.disjoint_union(&single);
        let f = Frame::from_graph_blockwise(&g).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.vector_count(), 3);
        assert_eq!(f.synthesis()[(0, 2)], 0.0);
        let l = g.laplacian_bundle().laplacian_f64();
        assert!(f.gramian().max_abs_diff(&l) < 1e-10);
    }

    #[test]
    fn inner_product_identities_connected() {
        for (family, n) in [(GraphFamily::Path, 4), (GraphFamily::Complete, 5)] {
            let f = Frame::from_graph_global(&graph(family, n)).unwrap();
            let dual = f.canonical_dual();
            let nf = n as f64;
            for i in 0..n {
                for j in 0..n {
                    let ip = matrix::dot(&dual.vector(i), &f.vector(j));
                    let want = if i == j { 1.0 - 1.0 / nf } else { -1.0 / nf };
                    assert!((ip - want).abs() < 1e-9, "({i},{j}) on {}", family.name());
                }
            }
        }
    }

    #[test]
    fn offset_duals_satisfy_duality() {
        let g = graph(GraphFamily::Star, 4);
        let f = Frame::from_graph_global(&g).unwrap();
        let dual = f.dual_from_offsets(&[vec![0.25, -1.5, 3.0]]).unwrap();
        assert!(dual.duality_residual(&f) < 1e-10);
        assert!(!dual.is_canonical());

        // zero offsets recover the canonical dual
        let zero = f.dual_from_offsets(&[vec![0.0; 3]]).unwrap();
        assert!(zero.is_canonical());
        assert!(zero.vectors().max_abs_diff(f.canonical_dual().vectors()) < 1e-14);

        assert!(matches!(
            f.dual_from_offsets(&[vec![0.0; 3], vec![0.0; 3]]),
            Err(FrameError::OffsetCount { .. })
        ));
        assert!(matches!(
            f.dual_from_offsets(&[vec![0.0; 2]]),
            Err(FrameError::OffsetDim { .. })
        ));
    }

    #[test]
    fn full_spark_judgments() {
        let k4 = Frame::from_graph_global(&graph(GraphFamily::Complete, 4)).unwrap();
        assert!(k4.is_full_spark().unwrap());
        let p5 = Frame::from_graph_global(&graph(GraphFamily::Path, 5)).unwrap();
        assert!(p5.is_full_spark().unwrap());

        let p2 = graph(GraphFamily::Path, 2);
        let union = Frame::from_graph_blockwise(&p2.disjoint_union(&p2)).unwrap();
        assert!(!union.is_full_spark().unwrap());

        // zero column sinks it
        let with_zero =
            Frame::from_synthesis(Matrix::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]))
                .unwrap();
        assert!(!with_zero.is_full_spark().unwrap());
    }

    #[test]
    fn unitary_transport_preserves_gramian_and_conjugates_operator() {
        let f = Frame::from_graph_global(&graph(GraphFamily::Cycle, 5)).unwrap();
        let u = random_orthogonal(f.dim(), 7);
        let moved = f.apply_unitary(&u).unwrap();
        assert_eq!(moved.construction(), Construction::Transported);
        assert!(moved.gramian().max_abs_diff(f.gramian()) < 1e-10);

        // S_{UΦ} = U S_Φ Uᵀ
        let conj = u
            .matrix()
            .matmul(f.frame_operator().matrix())
            .matmul(&u.matrix().transpose());
        assert!(moved.frame_operator().matrix().max_abs_diff(&conj) < 1e-10);

        // identity transport is the identity
        let same = f.apply_unitary(&UnitaryMatrix::identity(f.dim())).unwrap();
        assert!(same.synthesis().max_abs_diff(f.synthesis()) < 1e-15);
    }

    #[test]
    fn random_orthogonal_contract() {
        let u1 = random_orthogonal(1, 3);
        assert!((u1.matrix()[(0, 0)].abs() - 1.0).abs() < 1e-12);
        for seed in [0u64, 1, 42] {
            let a = random_orthogonal(4, seed);
            let b = random_orthogonal(4, seed);
            assert_eq!(a.matrix(), b.matrix());
            let residual = a
                .matrix()
                .transpose()
                .matmul(a.matrix())
                .max_abs_diff(&Matrix::identity(4));
            assert!(residual < 1e-10);
        }
        assert!(
            random_orthogonal(4, 0)
                .matrix()
                .max_abs_diff(random_orthogonal(4, 1).matrix())
                > 1e-3
        );
    }

    #[test]
    fn component_sums_vanish() {
        let p2 = graph(GraphFamily::Path, 2);
        let k3 = graph(GraphFamily::Complete, 3);
        let g = p2.disjoint_union(&k3);
        let f = Frame::from_graph_blockwise(&g).unwrap();
        for comp in g.components() {
            let sum = f.vector_sum(comp);
            assert!(matrix::norm_inf(&sum) < 1e-9);
        }
        // proper subset of K3's component stays nonzero
        let partial = f.vector_sum(&[2, 3]);
        assert!(matrix::norm_inf(&partial) > 0.1);
    }

    #[test]
    fn transport_between_constructions() {
        let p2 = graph(GraphFamily::Path, 2);
        let k3 = graph(GraphFamily::Complete, 3);
        let g = p2.disjoint_union(&k3);
        let block = Frame::from_graph_blockwise(&g).unwrap();
        let global = Frame::from_graph_global(&g).unwrap();
        let u = orthogonal_transport(&block, &global).unwrap();
        let carried = u.matrix().matmul(block.synthesis());
        assert!(carried.max_abs_diff(global.synthesis()) < 1e-7);
    }

    #[test]
    fn non_orthogonal_rejected() {
        let skew = Matrix::from_rows(&[vec![1.0, 0.1], vec![0.0, 1.0]]);
        assert!(matches!(
            UnitaryMatrix::new(skew),
            Err(FrameError::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn gramian_of_single_vector() {
        let f = Frame::from_synthesis(Matrix::from_rows(&[vec![2.0]])).unwrap();
        assert!((f.gramian()[(0, 0)] - 4.0).abs() < 1e-15);
    }
}
