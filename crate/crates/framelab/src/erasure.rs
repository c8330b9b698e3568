//! Erasure error operators and spectrally optimal dual analysis.
//!
//! Losing the coefficients indexed by Λ during transmission leaves the
//! reconstruction short by `E f = Σ_{i∈Λ} ⟨f, φᵢ⟩ ψᵢ`. This module builds
//! those operators, maximizes their spectral radius over all erasure sets of
//! a given size (ρ⁽ʳ⁾), predicts the spectra for canonical duals of
//! graph-generated frames, and runs the uniqueness / non-uniqueness and
//! unitary-invariance verifications.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::frame::{Construction, DualFrame, Frame, FrameError, UnitaryMatrix};
use crate::graph::Graph;
use crate::linalg::{self, matrix, ComplexSpectrum, LinalgError, Matrix};
use crate::subsets::combinations;

/// Max n for exhaustive ρ⁽ʳ⁾ enumeration.
pub const RHO_ENUMERATION_CAP: usize = 16;
/// Max n for the empirical dual search.
pub const SOD_SEARCH_CAP: usize = 12;
/// Per-eigenvalue tolerance for multiset spectrum comparison.
pub const SPECTRUM_MATCH_TOL: f64 = 1e-7;
/// Tolerance gating the inductive optimality filter in the dual search.
pub const SOD_LEVEL_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum ErasureError {
    #[error("erasure set must be non-empty")]
    EmptyErasure,

    #[error("erased index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("erasure size r = {r} out of range for n = {n}")]
    RankOutOfRange { r: usize, n: usize },

    #[error("n = {n} exceeds the exhaustive enumeration cap ({cap})")]
    EnumerationCap { n: usize, cap: usize },

    #[error("the closed-form connected spectrum needs r >= 2, got {r}")]
    PredictionRank { r: usize },

    #[error("operation requires a connected graph")]
    NotConnected,

    #[error("operation requires a disconnected graph (k > 1 components)")]
    NotDisconnected,

    #[error("every component is an isolated vertex; no frame exists")]
    AllComponentsNull,

    #[error("operation requires the block-per-component construction")]
    RequiresBlockwise,

    #[error(transparent)]
    Frame(#[from] FrameError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A set Λ of erased coefficient indices (0-based, sorted, distinct).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasureSet {
    indices: Vec<usize>,
    n: usize,
}

impl ErasureSet {
    pub fn new(indices: &[usize], n: usize) -> Result<ErasureSet, ErasureError> {
        if indices.is_empty() {
            return Err(ErasureError::EmptyErasure);
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() {
            // duplicates collapse silently would hide caller bugs
            return Err(ErasureError::RankOutOfRange {
                r: indices.len(),
                n,
            });
        }
        if let Some(&max) = sorted.last() {
            if max >= n {
                return Err(ErasureError::IndexOutOfRange { index: max, n });
            }
        }
        Ok(ErasureSet { indices: sorted, n })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Complementary erasure set (errors if Λ covers everything).
    pub fn complement(&self) -> Result<ErasureSet, ErasureError> {
        let rest: Vec<usize> = (0..self.n).filter(|i| !self.contains(*i)).collect();
        ErasureSet::new(&rest, self.n)
    }
}

/// Classification of one component touched by an erasure set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErasureClass {
    /// Exactly one vertex erased from a component with at least two.
    SingleVertex,
    /// The lone vertex of an isolated component (zero frame vector).
    IsolatedVertex,
    /// A whole component with at least two vertices.
    FullComponent,
    /// More than one but not all vertices of a component.
    PartialComponent,
}

impl ErasureClass {
    pub fn name(self) -> &'static str {
        match self {
            ErasureClass::SingleVertex => "single_vertex",
            ErasureClass::IsolatedVertex => "isolated_vertex",
            ErasureClass::FullComponent => "full_component",
            ErasureClass::PartialComponent => "partial_component",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ComponentErasure {
    pub component: usize,
    /// Vertices erased in this component.
    pub erased: usize,
    /// Vertices of this component.
    pub size: usize,
    pub class: ErasureClass,
}

/// Closed-form spectrum of the error operator of a canonical dual.
#[derive(Debug, Clone)]
pub struct PredictedSpectrum {
    entries: Vec<(f64, usize)>,
    classification: Vec<ComponentErasure>,
}

impl PredictedSpectrum {
    fn build(dim: usize, classification: Vec<ComponentErasure>) -> PredictedSpectrum {
        fn push(entries: &mut Vec<(f64, usize)>, value: f64, mult: usize) {
            if mult == 0 {
                return;
            }
            if let Some(slot) = entries.iter_mut().find(|(v, _)| *v == value) {
                slot.1 += mult;
            } else {
                entries.push((value, mult));
            }
        }
        let mut entries: Vec<(f64, usize)> = Vec::new();
        for ce in &classification {
            let size = ce.size as f64;
            match ce.class {
                ErasureClass::SingleVertex => push(&mut entries, 1.0 - 1.0 / size, 1),
                ErasureClass::IsolatedVertex => {}
                ErasureClass::FullComponent => push(&mut entries, 1.0, ce.erased - 1),
                ErasureClass::PartialComponent => {
                    push(&mut entries, 1.0 - ce.erased as f64 / size, 1);
                    push(&mut entries, 1.0, ce.erased - 1);
                }
            }
        }
        let used: usize = entries.iter().map(|(_, m)| m).sum();
        push(&mut entries, 0.0, dim - used);
        entries.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        PredictedSpectrum {
            entries,
            classification,
        }
    }

    /// (eigenvalue, multiplicity) pairs, eigenvalues descending.
    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    pub fn classification(&self) -> &[ComponentErasure] {
        &self.classification
    }

    /// All eigenvalues with multiplicity, ascending.
    pub fn expand(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat(v).take(m))
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

/// Everything known about one erasure: the operator, its spectrum and
/// radius, and (for canonical duals of graph frames) the prediction.
#[derive(Debug, Clone)]
pub struct ErasureReport {
    pub erasure: ErasureSet,
    pub operator: Matrix,
    pub spectrum: ComplexSpectrum,
    pub radius: f64,
    pub predicted: Option<PredictedSpectrum>,
    pub prediction_match: Option<bool>,
}

/// ρ⁽ʳ⁾ values with their attaining erasure sets.
#[derive(Debug, Clone)]
pub struct RhoPoint {
    pub r: usize,
    pub rho: f64,
    pub argmax: ErasureSet,
}

#[derive(Debug, Clone)]
pub struct RhoProfile {
    pub points: Vec<RhoPoint>,
}

/// Error operator `E_{Φ,Ψ,Λ} = Σ_{i∈Λ} ψᵢ φᵢᵀ` as a k×k matrix.
pub fn error_operator(
    frame: &Frame,
    dual: &DualFrame,
    erasure: &ErasureSet,
) -> Result<Matrix, ErasureError> {
    let n = frame.vector_count();
    if let Some(&max) = erasure.indices().last() {
        if max >= n {
            return Err(ErasureError::IndexOutOfRange { index: max, n });
        }
    }
    let mut out = Matrix::zeros(frame.dim(), frame.dim());
    for &i in erasure.indices() {
        out.add_outer(1.0, &dual.vector(i), &frame.vector(i));
    }
    Ok(out)
}

/// Number of worker threads for the exhaustive scans: the machine's
/// parallelism, capped by the FRAMELAB_THREADS environment variable.
fn thread_count() -> usize {
    let default = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8);
    match std::env::var("FRAMELAB_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(cap) if cap >= 1 => default.min(cap),
            _ => default,
        },
        Err(_) => default,
    }
}

/// Spectral radius of every candidate operator, in subset order. The order
/// of results does not depend on how the work is split across threads.
fn radii_over_subsets(
    frame: &Frame,
    dual: &DualFrame,
    subsets: &[Vec<usize>],
) -> Result<Vec<f64>, ErasureError> {
    let n = frame.vector_count();
    let eval = |lambda: &[usize]| -> Result<f64, ErasureError> {
        let e = ErasureSet::new(lambda, n)?;
        let op = error_operator(frame, dual, &e)?;
        Ok(linalg::spectral_radius(&op)?)
    };
    let workers = thread_count().min(subsets.len().max(1));
    if workers <= 1 || subsets.len() < 64 {
        return subsets.iter().map(|s| eval(s)).collect();
    }
    let chunk = subsets.len().div_ceil(workers);
    let chunked: Vec<Result<Vec<f64>, ErasureError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = subsets
            .chunks(chunk)
            .map(|slice| scope.spawn(move || slice.iter().map(|s| eval(s)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut out = Vec::with_capacity(subsets.len());
    for piece in chunked {
        out.extend(piece?);
    }
    Ok(out)
}

/// Exact maximum of ρ(E_Λ) over all C(n, r) erasure sets of size r, with
/// the lexicographically smallest maximizer. `r = n` is allowed so the
/// full-erasure spectrum can be exercised.
pub fn rho_r(
    frame: &Frame,
    dual: &DualFrame,
    r: usize,
) -> Result<(f64, ErasureSet), ErasureError> {
    let n = frame.vector_count();
    if r < 1 || r > n {
        return Err(ErasureError::RankOutOfRange { r, n });
    }
    if n > RHO_ENUMERATION_CAP {
        return Err(ErasureError::EnumerationCap {
            n,
            cap: RHO_ENUMERATION_CAP,
        });
    }
    let subsets = combinations(n, r);
    let radii = radii_over_subsets(frame, dual, &subsets)?;
    let mut best = 0usize;
    for (i, &rho) in radii.iter().enumerate() {
        if rho > radii[best] {
            best = i;
        }
    }
    Ok((radii[best], ErasureSet::new(&subsets[best], n)?))
}

/// ρ⁽ʳ⁾ for every r in the inclusive range.
pub fn rho_profile(
    frame: &Frame,
    dual: &DualFrame,
    r_lo: usize,
    r_hi: usize,
) -> Result<RhoProfile, ErasureError> {
    let mut points = Vec::new();
    for r in r_lo..=r_hi {
        let (rho, argmax) = rho_r(frame, dual, r)?;
        points.push(RhoPoint { r, rho, argmax });
    }
    Ok(RhoProfile { points })
}

/// Spectrum of the canonical-dual error operator for a connected graph on n
/// vertices with r ≥ 2 erasures: `{1^(r-1), 1 - r/n, 0^(n-1-r)}` for r < n
/// and `{1^(n-1)}` for r = n.
pub fn predicted_spectrum_connected(
    n: usize,
    r: usize,
) -> Result<PredictedSpectrum, ErasureError> {
    if r < 2 {
        return Err(ErasureError::PredictionRank { r });
    }
    if r > n {
        return Err(ErasureError::RankOutOfRange { r, n });
    }
    let class = if r == n {
        ErasureClass::FullComponent
    } else {
        ErasureClass::PartialComponent
    };
    Ok(PredictedSpectrum::build(
        n - 1,
        vec![ComponentErasure {
            component: 0,
            erased: r,
            size: n,
            class,
        }],
    ))
}

/// Spectrum of the canonical-dual error operator of the blockwise frame of
/// any graph: classify each touched component by how much of it is erased,
/// emit `1 - 1/n_l` per single-vertex component, `1 - m_l/n_l` plus
/// `1^(m_l-1)` per partially erased component, `1^(n_l-1)` per fully erased
/// component, and pad with zeros. Connected graphs reduce to the closed
/// form above.
pub fn predicted_spectrum_disconnected(
    g: &Graph,
    erasure: &ErasureSet,
) -> Result<PredictedSpectrum, ErasureError> {
    let n = g.vertex_count();
    if let Some(&max) = erasure.indices().last() {
        if max >= n {
            return Err(ErasureError::IndexOutOfRange { index: max, n });
        }
    }
    let dim = n - g.component_count();
    if dim == 0 {
        return Err(ErasureError::AllComponentsNull);
    }
    let mut classification = Vec::new();
    for (ci, comp) in g.components().iter().enumerate() {
        let erased = comp.iter().filter(|&&v| erasure.contains(v)).count();
        if erased == 0 {
            continue;
        }
        let size = comp.len();
        let class = if size == 1 {
            ErasureClass::IsolatedVertex
        } else if erased == 1 {
            ErasureClass::SingleVertex
        } else if erased == size {
            ErasureClass::FullComponent
        } else {
            ErasureClass::PartialComponent
        };
        classification.push(ComponentErasure {
            component: ci,
            erased,
            size,
            class,
        });
    }
    Ok(PredictedSpectrum::build(dim, classification))
}

/// Multiset comparison: sort both spectra (computed by real then imaginary
/// part), pair in order, accept when every pair is within `tol` and the
/// computed imaginary parts vanish to the same tolerance.
pub fn spectra_match(computed: &ComplexSpectrum, predicted: &PredictedSpectrum, tol: f64) -> bool {
    let want = predicted.expand();
    if computed.len() != want.len() {
        return false;
    }
    computed
        .values()
        .iter()
        .zip(&want)
        .all(|(&(re, im), &v)| (re - v).abs() <= tol && im.abs() <= tol)
}

/// Does the closed-form prediction apply to this frame/dual pair?
///
/// Canonical duals only; connected graphs under any construction (all their
/// frames are unitarily equivalent, which preserves the spectrum), and
/// disconnected graphs only in blockwise layout.
pub fn prediction_applies(frame: &Frame, dual: &DualFrame) -> bool {
    if !dual.is_canonical() {
        return false;
    }
    match frame.source_graph() {
        None => false,
        Some(g) => g.is_connected() || frame.construction() == Construction::BlockPerComponent,
    }
}

/// Assemble the operator, its computed spectrum, and (when the prediction
/// applies) the predicted spectrum and match verdict at the standard
/// tolerance.
pub fn check_spectrum(
    frame: &Frame,
    dual: &DualFrame,
    erasure: &ErasureSet,
) -> Result<ErasureReport, ErasureError> {
    check_spectrum_with_tolerance(frame, dual, erasure, SPECTRUM_MATCH_TOL)
}

/// [`check_spectrum`] with an explicit comparison tolerance.
pub fn check_spectrum_with_tolerance(
    frame: &Frame,
    dual: &DualFrame,
    erasure: &ErasureSet,
    tol: f64,
) -> Result<ErasureReport, ErasureError> {
    let operator = error_operator(frame, dual, erasure)?;
    let spectrum = linalg::general_eigenvalues(&operator)?;
    let (predicted, prediction_match) = if prediction_applies(frame, dual) {
        let g = frame.source_graph().expect("prediction implies graph");
        let p = predicted_spectrum_disconnected(g, erasure)?;
        let ok = spectra_match(&spectrum, &p, tol);
        (Some(p), Some(ok))
    } else {
        (None, None)
    };
    Ok(ErasureReport {
        erasure: erasure.clone(),
        radius: spectrum.radius(),
        operator,
        spectrum,
        predicted,
        prediction_match,
    })
}

/// Largest |ρ⁽ʳ⁾(Φ) − ρ⁽ʳ⁾(UΦ)| over r = 1..=r_max (clamped to n−1), both
/// sides with their canonical duals.
pub fn rho_invariance_gap(
    frame: &Frame,
    u: &UnitaryMatrix,
    r_max: usize,
) -> Result<f64, ErasureError> {
    let moved = frame.apply_unitary(u)?;
    let dual = frame.canonical_dual();
    let moved_dual = moved.canonical_dual();
    let top = r_max.min(frame.vector_count().saturating_sub(1)).max(1);
    let mut gap = 0.0_f64;
    for r in 1..=top {
        let (a, _) = rho_r(frame, &dual, r)?;
        let (b, _) = rho_r(&moved, &moved_dual, r)?;
        gap = gap.max((a - b).abs());
    }
    Ok(gap)
}

/// ρ⁽ʳ⁾ of the canonical dual is invariant under orthogonal transport of
/// the frame. Checks r = 1..=r_max (clamped to n-1) at tolerance 1e-7.
pub fn verify_rho_invariance(
    frame: &Frame,
    u: &UnitaryMatrix,
    r_max: usize,
) -> Result<bool, ErasureError> {
    Ok(rho_invariance_gap(frame, u, r_max)? < 1e-7)
}

/// One perturbed-dual trial in the uniqueness verification.
#[derive(Debug, Clone)]
pub struct UniquenessTrial {
    pub trial: usize,
    pub scale: f64,
    pub rho1: f64,
    pub rho_r: Option<f64>,
    pub witness_residual: Option<f64>,
    pub ok: bool,
}

/// Uniqueness evidence for connected graphs: every nonzero offset makes
/// ρ⁽¹⁾ strictly worse than the canonical 1 - 1/n, while for r ≥ 2 the
/// perturbed dual still hits spectral radius 1 (witnessed by ψ_p - ψ_q
/// being a fixed vector of the error operator).
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    pub n: usize,
    pub r: usize,
    pub baseline_rho1: f64,
    pub canonical_rho1: f64,
    pub trials: Vec<UniquenessTrial>,
    pub violations: usize,
}

impl UniquenessReport {
    pub fn all_hold(&self) -> bool {
        self.violations == 0
    }
}

pub const UNIQUENESS_SCALES: [f64; 3] = [1e-3, 1.0, 1e3];

pub fn verify_uniqueness_connected(
    g: &Graph,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<UniquenessReport, ErasureError> {
    if !g.is_connected() {
        return Err(ErasureError::NotConnected);
    }
    let n = g.vertex_count();
    if n < 2 || r < 1 || r > n - 1 {
        return Err(ErasureError::RankOutOfRange { r, n });
    }
    let frame = Frame::from_graph_global(g)?;
    let canonical = frame.canonical_dual();
    let baseline = 1.0 - 1.0 / n as f64;
    let (canonical_rho1, _) = rho_r(&frame, &canonical, 1)?;

    let k = frame.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut violations = 0usize;
    for trial in 0..trials {
        let mut base: Vec<f64> = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
        while matrix::norm_inf(&base) == 0.0 {
            base = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
        }
        for &scale in &UNIQUENESS_SCALES {
            let nu = matrix::scale_vec(&base, scale);
            let dual = frame.dual_from_offsets(&[nu])?;
            let (rho1, _) = rho_r(&frame, &dual, 1)?;
            let mut ok = rho1 > baseline + 1e-9;
            let mut rho_at_r = None;
            let mut witness_residual = None;
            if r >= 2 {
                let (rho, _) = rho_r(&frame, &dual, r)?;
                rho_at_r = Some(rho);
                ok &= rho >= 1.0 - 1e-8;

                // the first lexicographic Λ with p = Λ[0], q = Λ[1]
                let lambda = ErasureSet::new(&(0..r).collect::<Vec<_>>(), n)?;
                let op = error_operator(&frame, &dual, &lambda)?;
                let w = matrix::sub_vec(&dual.vector(0), &dual.vector(1));
                let ew = op.matvec(&w);
                let resid = matrix::norm_inf(&matrix::sub_vec(&ew, &w))
                    / matrix::norm_inf(&w).max(1.0);
                witness_residual = Some(resid);
                ok &= resid <= 1e-7;
            }
            if !ok {
                violations += 1;
            }
            rows.push(UniquenessTrial {
                trial,
                scale,
                rho1,
                rho_r: rho_at_r,
                witness_residual,
                ok,
            });
        }
    }
    Ok(UniquenessReport {
        n,
        r,
        baseline_rho1: baseline,
        canonical_rho1,
        trials: rows,
        violations,
    })
}

/// The offset dual the non-uniqueness argument constructs for disconnected
/// graphs: a unit offset on the first component with at least two vertices,
/// pointing at the first synthesis row outside that component's block. This
/// leaves every diagonal reconstruction coefficient, and in fact every
/// error-operator characteristic polynomial, unchanged.
///
/// When every other component is an isolated vertex no such row exists; the
/// offset then goes on a null component, which alters no error operator at
/// all (its frame vector is zero).
pub fn alternate_dual(frame: &Frame) -> Result<DualFrame, ErasureError> {
    let g = frame.source_graph().ok_or(FrameError::MissingGraph)?;
    if g.component_count() < 2 {
        return Err(ErasureError::NotDisconnected);
    }
    if frame.construction() != Construction::BlockPerComponent {
        return Err(ErasureError::RequiresBlockwise);
    }
    let comps = g.components();
    let target = comps
        .iter()
        .position(|c| c.len() >= 2)
        .ok_or(ErasureError::AllComponentsNull)?;
    let rows = frame.block_rows(target)?;
    let mut offsets = vec![vec![0.0; frame.dim()]; comps.len()];
    if rows.end < frame.dim() {
        offsets[target][rows.end] = 1.0;
    } else {
        let null = comps
            .iter()
            .position(|c| c.len() == 1)
            .expect("lone non-null block spanning all rows implies a null component");
        offsets[null][0] = 1.0;
    }
    Ok(frame.dual_from_offsets(&offsets)?)
}

/// Canonical vs alternate ρ values at one erasure size.
#[derive(Debug, Clone)]
pub struct RhoTie {
    pub r: usize,
    pub rho_canonical: f64,
    pub rho_alternate: f64,
}

/// Non-uniqueness evidence for disconnected graphs: the alternate dual ties
/// the canonical ρ profile at every erasure size checked.
#[derive(Debug, Clone)]
pub struct NonUniquenessReport {
    pub ties: Vec<RhoTie>,
    pub max_gap: f64,
    pub alternate_offsets: Vec<Vec<f64>>,
}

impl NonUniquenessReport {
    pub fn ties_within(&self, tol: f64) -> bool {
        self.max_gap <= tol
    }
}

pub fn verify_nonuniqueness_disconnected(
    g: &Graph,
    r: usize,
) -> Result<NonUniquenessReport, ErasureError> {
    if g.component_count() < 2 {
        return Err(ErasureError::NotDisconnected);
    }
    if g.edge_count() == 0 {
        return Err(ErasureError::AllComponentsNull);
    }
    let frame = Frame::from_graph_blockwise(g)?;
    let canonical = frame.canonical_dual();
    let alternate = alternate_dual(&frame)?;
    let top = r.min(g.vertex_count() - 1).max(1);
    let mut ties = Vec::new();
    let mut max_gap = 0.0_f64;
    for level in 1..=top {
        let (rho_c, _) = rho_r(&frame, &canonical, level)?;
        let (rho_a, _) = rho_r(&frame, &alternate, level)?;
        max_gap = max_gap.max((rho_c - rho_a).abs());
        ties.push(RhoTie {
            r: level,
            rho_canonical: rho_c,
            rho_alternate: rho_a,
        });
    }
    Ok(NonUniquenessReport {
        ties,
        max_gap,
        alternate_offsets: alternate.offsets().to_vec(),
    })
}

/// Configuration for the empirical dual search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub samples: usize,
    pub seed: u64,
    pub scales: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SearchCandidate {
    pub label: String,
    pub offsets: Vec<Vec<f64>>,
    /// ρ⁽ʳ'⁾ values at the levels this candidate survived to.
    pub rho: Vec<f64>,
    /// Levels survived (r' = 1..=alive_through).
    pub alive_through: usize,
}

#[derive(Debug, Clone)]
pub struct SearchLevel {
    pub r: usize,
    pub min_rho: f64,
    pub survivors: usize,
    pub canonical_survives: bool,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub levels: Vec<SearchLevel>,
    pub candidates: Vec<SearchCandidate>,
    /// Indices into `candidates` still alive after the last level.
    pub final_survivors: Vec<usize>,
    /// Canonical dual attains the empirical minimum at every level.
    pub canonical_optimal: bool,
}

/// Sample random offset duals and filter them through the inductive
/// optimality criterion: a candidate is only scored at level r' if it
/// matched the running empirical minimum at every level below (within
/// [`SOD_LEVEL_TOL`]). Candidate 0 is always the canonical dual; for
/// disconnected blockwise frames the block-shifted alternate dual joins the
/// pool so the expected tie is visible in the report.
pub fn sod_search(
    frame: &Frame,
    r: usize,
    config: &SearchConfig,
) -> Result<SearchReport, ErasureError> {
    let g = frame.source_graph().ok_or(FrameError::MissingGraph)?;
    let n = frame.vector_count();
    if n > SOD_SEARCH_CAP {
        return Err(ErasureError::EnumerationCap {
            n,
            cap: SOD_SEARCH_CAP,
        });
    }
    if r < 1 || r > n - 1 {
        return Err(ErasureError::RankOutOfRange { r, n });
    }
    let m = g.component_count();
    let k = frame.dim();

    let mut pool: Vec<(String, DualFrame)> =
        vec![("canonical".to_string(), frame.canonical_dual())];
    if config.samples > 0 {
        if g.component_count() > 1 && frame.construction() == Construction::BlockPerComponent {
            if let Ok(alt) = alternate_dual(frame) {
                pool.push(("block-shift".to_string(), alt));
            }
        }
        let scales = if config.scales.is_empty() {
            vec![1.0]
        } else {
            config.scales.clone()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for s in 0..config.samples {
            let base: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..k).map(|_| StandardNormal.sample(&mut rng)).collect())
                .collect();
            for &scale in &scales {
                let offsets: Vec<Vec<f64>> =
                    base.iter().map(|nu| matrix::scale_vec(nu, scale)).collect();
                let dual = frame.dual_from_offsets(&offsets)?;
                pool.push((format!("sample-{s}*{scale:e}"), dual));
            }
        }
    }

    let mut candidates: Vec<SearchCandidate> = pool
        .iter()
        .map(|(label, dual)| SearchCandidate {
            label: label.clone(),
            offsets: dual.offsets().to_vec(),
            rho: Vec::new(),
            alive_through: 0,
        })
        .collect();
    let mut alive: Vec<usize> = (0..pool.len()).collect();
    let mut levels = Vec::new();
    let mut canonical_optimal = true;

    for level in 1..=r {
        let mut scored: Vec<(usize, f64)> = Vec::with_capacity(alive.len());
        for &idx in &alive {
            let (rho, _) = rho_r(frame, &pool[idx].1, level)?;
            candidates[idx].rho.push(rho);
            scored.push((idx, rho));
        }
        let min_rho = scored
            .iter()
            .map(|&(_, rho)| rho)
            .fold(f64::INFINITY, f64::min);
        let survivors: Vec<usize> = scored
            .iter()
            .filter(|&&(_, rho)| rho <= min_rho + SOD_LEVEL_TOL)
            .map(|&(idx, _)| idx)
            .collect();
        for &idx in &survivors {
            candidates[idx].alive_through = level;
        }
        let canonical_survives = survivors.contains(&0);
        canonical_optimal &= canonical_survives;
        levels.push(SearchLevel {
            r: level,
            min_rho,
            survivors: survivors.len(),
            canonical_survives,
        });
        alive = survivors;
    }

    Ok(SearchReport {
        levels,
        candidates,
        final_survivors: alive,
        canonical_optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    fn frame_of(family: GraphFamily, n: usize) -> Frame {
        Frame::from_graph_global(&Graph::generate(family, n).unwrap()).unwrap()
    }

    #[test]
    fn full_erasure_of_canonical_is_identity() {
        let f = frame_of(GraphFamily::Complete, 4);
        let d = f.canonical_dual();
        let all = ErasureSet::new(&[0, 1, 2, 3], 4).unwrap();
        let e = error_operator(&f, &d, &all).unwrap();
        assert!(e.max_abs_diff(&Matrix::identity(3)) < 1e-10);
    }

    #[test]
    fn single_erasure_trace_and_value() {
        // P2: E for Λ = {0} is the 1x1 matrix [1/2]
        let f = frame_of(GraphFamily::Path, 2);
        let d = f.canonical_dual();
        let e = error_operator(&f, &d, &ErasureSet::new(&[0], 2).unwrap()).unwrap();
        assert!((e[(0, 0)] - 0.5).abs() < 1e-12);

        // connected: rank-1 with trace 1 - 1/n
        let f = frame_of(GraphFamily::Cycle, 5);
        let d = f.canonical_dual();
        let e = error_operator(&f, &d, &ErasureSet::new(&[2], 5).unwrap()).unwrap();
        let trace: f64 = (0..4).map(|i| e[(i, i)]).sum();
        assert!((trace - 0.8).abs() < 1e-10);
        assert_eq!(linalg::rank(&e, 1e-9), 1);
    }

    #[test]
    fn rho_profile_connected() {
        let f = frame_of(GraphFamily::Path, 4);
        let d = f.canonical_dual();
        let (rho1, arg1) = rho_r(&f, &d, 1).unwrap();
        assert!((rho1 - 0.75).abs() < 1e-9);
        assert_eq!(arg1.size(), 1);
        for r in 2..=3 {
            let (rho, _) = rho_r(&f, &d, r).unwrap();
            assert!((rho - 1.0).abs() < 1e-8, "rho^{r} = {rho}");
        }
    }

    #[test]
    fn rho_disconnected_canonical() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let g = p2.disjoint_union(&p2);
        let f = Frame::from_graph_blockwise(&g).unwrap();
        let d = f.canonical_dual();
        for r in 2..=3 {
            let (rho, _) = rho_r(&f, &d, r).unwrap();
            assert!((rho - 1.0).abs() < 1e-8);
        }
        // rho^(1) = max over components of 1 - 1/n_l = 1/2
        let (rho1, _) = rho_r(&f, &d, 1).unwrap();
        assert!((rho1 - 0.5).abs() < 1e-9);
    }

    #[test]
    fn k4_two_erasures_spectrum() {
        let f = frame_of(GraphFamily::Complete, 4);
        let d = f.canonical_dual();
        let e = ErasureSet::new(&[0, 1], 4).unwrap();
        let report = check_spectrum(&f, &d, &e).unwrap();
        let values = report.spectrum.values();
        // {0, 1/2, 1}
        assert_eq!(values.len(), 3);
        assert!((values[0].0 - 0.0).abs() < 1e-9);
        assert!((values[1].0 - 0.5).abs() < 1e-9);
        assert!((values[2].0 - 1.0).abs() < 1e-9);
        assert_eq!(report.prediction_match, Some(true));
    }

    fn assert_close(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn predicted_connected_values() {
        let p = predicted_spectrum_connected(4, 2).unwrap();
        assert_close(&p.expand(), &[0.0, 0.5, 1.0]);
        let p = predicted_spectrum_connected(5, 5).unwrap();
        assert_close(&p.expand(), &[1.0, 1.0, 1.0, 1.0]);
        let p = predicted_spectrum_connected(3, 2).unwrap();
        assert_close(&p.expand(), &[1.0 / 3.0, 1.0]);
        assert!(matches!(
            predicted_spectrum_connected(4, 1),
            Err(ErasureError::PredictionRank { r: 1 })
        ));
    }

    #[test]
    fn predicted_disconnected_classification() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();

        // P2 ⊔ P2, Λ = {1,2} (1-based): full first component
        let g = p2.disjoint_union(&p2);
        let p = predicted_spectrum_disconnected(&g, &ErasureSet::new(&[0, 1], 4).unwrap()).unwrap();
        assert_close(&p.expand(), &[0.0, 1.0]);
        assert_eq!(p.classification().len(), 1);
        assert_eq!(p.classification()[0].class, ErasureClass::FullComponent);

        // P2 ⊔ K3, Λ = {1, 3}: two single-vertex components
        let g = p2.disjoint_union(&k3);
        let p = predicted_spectrum_disconnected(&g, &ErasureSet::new(&[0, 2], 5).unwrap()).unwrap();
        assert_close(&p.expand(), &[0.0, 0.5, 2.0 / 3.0]);

        // K3 ⊔ K3, Λ = {1,2,4,5}: two partial components
        let g = k3.disjoint_union(&k3);
        let p =
            predicted_spectrum_disconnected(&g, &ErasureSet::new(&[0, 1, 3, 4], 6).unwrap())
                .unwrap();
        assert_close(&p.expand(), &[1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0]);
    }

    #[test]
    fn spectrum_match_against_brute_force_disconnected() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();
        let g = p2.disjoint_union(&k3);
        let f = Frame::from_graph_blockwise(&g).unwrap();
        let d = f.canonical_dual();
        for r in 2..=4 {
            for lambda in combinations(5, r) {
                let e = ErasureSet::new(&lambda, 5).unwrap();
                let report = check_spectrum(&f, &d, &e).unwrap();
                assert_eq!(
                    report.prediction_match,
                    Some(true),
                    "Λ = {lambda:?} computed {:?} predicted {:?}",
                    report.spectrum.values(),
                    report.predicted.as_ref().map(|p| p.expand()),
                );
            }
        }
    }

    #[test]
    fn no_prediction_for_alternate_duals() {
        let f = frame_of(GraphFamily::Star, 4);
        let d = f.dual_from_offsets(&[vec![1.0, 0.0, 0.0]]).unwrap();
        let report =
            check_spectrum(&f, &d, &ErasureSet::new(&[0, 1], 4).unwrap()).unwrap();
        assert!(report.predicted.is_none());
        assert!(report.prediction_match.is_none());
    }

    #[test]
    fn complement_identity() {
        let f = frame_of(GraphFamily::Cycle, 5);
        let d = f.canonical_dual();
        let lambda = ErasureSet::new(&[0, 2], 5).unwrap();
        let e1 = error_operator(&f, &d, &lambda).unwrap();
        let e2 = error_operator(&f, &d, &lambda.complement().unwrap()).unwrap();
        assert!(e1.add(&e2).max_abs_diff(&Matrix::identity(4)) < 1e-9);
    }

    #[test]
    fn rho_invariance_under_transport() {
        let f = frame_of(GraphFamily::Star, 5);
        assert!(verify_rho_invariance(&f, &crate::frame::random_orthogonal(4, 3), 3).unwrap());
        assert!(verify_rho_invariance(&f, &UnitaryMatrix::identity(4), 2).unwrap());
    }

    #[test]
    fn uniqueness_report_on_path() {
        let g = Graph::generate(GraphFamily::Path, 3).unwrap();
        let report = verify_uniqueness_connected(&g, 2, 10, 7).unwrap();
        assert!(report.all_hold(), "violations: {}", report.violations);
        assert!((report.baseline_rho1 - 2.0 / 3.0).abs() < 1e-15);
        assert!((report.canonical_rho1 - report.baseline_rho1).abs() < 1e-9);
        assert_eq!(report.trials.len(), 30);
    }

    #[test]
    fn uniqueness_rejects_disconnected() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let g = p2.disjoint_union(&p2);
        assert!(matches!(
            verify_uniqueness_connected(&g, 2, 1, 0),
            Err(ErasureError::NotConnected)
        ));
    }

    #[test]
    fn alternate_dual_ties_canonical() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let g = p2.disjoint_union(&p2);
        let report = verify_nonuniqueness_disconnected(&g, 3).unwrap();
        assert!(report.ties_within(1e-7), "max gap {}", report.max_gap);
        assert_eq!(report.ties.len(), 3);
        // offset on component 1 is e_2 (pointing into component 2's block)
        assert_eq!(report.alternate_offsets[0], vec![0.0, 1.0]);
        assert_eq!(report.alternate_offsets[1], vec![0.0, 0.0]);
    }

    #[test]
    fn alternate_dual_char_poly_matches_canonical() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();
        let g = p2.disjoint_union(&k3);
        let f = Frame::from_graph_blockwise(&g).unwrap();
        let canonical = f.canonical_dual();
        let alt = alternate_dual(&f).unwrap();
        for r in 1..=4 {
            for lambda in combinations(5, r) {
                let e = ErasureSet::new(&lambda, 5).unwrap();
                let s1 = linalg::general_eigenvalues(&error_operator(&f, &canonical, &e).unwrap())
                    .unwrap();
                let s2 =
                    linalg::general_eigenvalues(&error_operator(&f, &alt, &e).unwrap()).unwrap();
                for (a, b) in s1.values().iter().zip(s2.values()) {
                    assert!(
                        (a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8,
                        "Λ = {lambda:?}: {a:?} vs {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn alternate_dual_with_only_null_siblings() {
        // K3 ⊔ {isolated}: the shift coordinate would fall outside the
        // space, so the offset lands on the null component and changes no
        // error operator.
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();
        let single = Graph::generate(GraphFamily::Empty, 1).unwrap();
        let g = k3.disjoint_union(&single);
        let report = verify_nonuniqueness_disconnected(&g, 3).unwrap();
        assert!(report.ties_within(1e-12));
        assert_eq!(report.alternate_offsets[1], vec![1.0, 0.0]);
    }

    #[test]
    fn sod_search_connected_prefers_canonical() {
        let f = frame_of(GraphFamily::Star, 4);
        let report = sod_search(
            &f,
            2,
            &SearchConfig {
                samples: 40,
                seed: 1,
                scales: vec![1e-3, 1.0, 1e3],
            },
        )
        .unwrap();
        assert!(report.canonical_optimal);
        assert_eq!(report.final_survivors, vec![0]);
        assert_eq!(report.levels.len(), 2);
        assert!((report.levels[0].min_rho - 0.75).abs() < 1e-9);
    }

    #[test]
    fn sod_search_disconnected_reports_tie() {
        let p2 = Graph::generate(GraphFamily::Path, 2).unwrap();
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();
        let g = k3.disjoint_union(&p2);
        let f = Frame::from_graph_blockwise(&g).unwrap();
        let report = sod_search(
            &f,
            3,
            &SearchConfig {
                samples: 30,
                seed: 2,
                scales: vec![1.0],
            },
        )
        .unwrap();
        assert!(report.canonical_optimal);
        assert!(
            report.final_survivors.len() >= 2,
            "expected the block-shift dual to tie, survivors: {:?}",
            report.final_survivors
        );
    }

    #[test]
    fn sod_search_zero_samples_is_baseline_only() {
        let f = frame_of(GraphFamily::Path, 4);
        let report = sod_search(
            &f,
            2,
            &SearchConfig {
                samples: 0,
                seed: 0,
                scales: vec![],
            },
        )
        .unwrap();
        assert_eq!(report.candidates.len(), 1);
        assert_eq!(report.candidates[0].label, "canonical");
        assert!(report.canonical_optimal);
    }

    #[test]
    fn erasure_set_validation() {
        assert!(matches!(
            ErasureSet::new(&[], 4),
            Err(ErasureError::EmptyErasure)
        ));
        assert!(matches!(
            ErasureSet::new(&[4], 4),
            Err(ErasureError::IndexOutOfRange { index: 4, n: 4 })
        ));
        let f = frame_of(GraphFamily::Path, 4);
        let d = f.canonical_dual();
        assert!(matches!(
            rho_r(&f, &d, 0),
            Err(ErasureError::RankOutOfRange { .. })
        ));
        assert!(matches!(
            rho_r(&f, &d, 5),
            Err(ErasureError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn rank_of_error_operator_bounded_by_erasure_size() {
        let f = frame_of(GraphFamily::Complete, 5);
        let d = f.canonical_dual();
        for r in 1..=5 {
            for lambda in combinations(5, r) {
                let e = ErasureSet::new(&lambda, 5).unwrap();
                let op = error_operator(&f, &d, &e).unwrap();
                let rank = linalg::rank(&op, 1e-9);
                if r < 5 {
                    assert_eq!(rank, r, "Λ = {lambda:?}");
                } else {
                    assert_eq!(rank, 4);
                }
            }
        }
    }
}
