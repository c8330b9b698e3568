//! Executable certificates for the classical identities of graph-generated
//! frames: each check runs on one graph and reports pass/fail with the
//! residuals that justify the verdict.

use crate::erasure::{
    self, rho_invariance_gap, verify_nonuniqueness_disconnected, verify_uniqueness_connected,
    ErasureError, ErasureSet,
};
use crate::frame::{orthogonal_transport, random_orthogonal, Frame};
use crate::graph::Graph;
use crate::linalg::{self, matrix};
use crate::subsets::combinations;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// The checks `verify` and `corpus` know how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckId {
    /// Gramian of every construction equals the Laplacian.
    Gramian,
    /// Frame operator is diagonal with the nonzero Laplacian spectrum.
    DiagonalOperator,
    /// ⟨S⁻¹φᵢ, φᵢ⟩ = 1 − 1/n and ⟨S⁻¹φᵢ, φⱼ⟩ = −1/n (per component).
    InnerProducts,
    /// Connected frames are full spark; disconnected blockwise ones are not.
    FullSpark,
    /// Global and blockwise constructions are orthogonally equivalent.
    Equivalence,
    /// Per-component offsets always produce duals.
    DualFamily,
    /// ρ⁽¹⁾ = 1 − 1/n and ρ⁽ʳ⁾ = 1 for 2 ≤ r ≤ n−1.
    RhoProfile,
    /// Computed erasure spectra equal the closed-form prediction.
    Spectrum,
    /// ρ⁽ʳ⁾ is preserved by orthogonal transport.
    Invariance,
    /// Connected: every nonzero offset strictly worsens ρ⁽¹⁾.
    Uniqueness,
    /// Disconnected: the block-shifted dual ties the canonical profile.
    NonUniqueness,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::Gramian,
        CheckId::DiagonalOperator,
        CheckId::InnerProducts,
        CheckId::FullSpark,
        CheckId::Equivalence,
        CheckId::DualFamily,
        CheckId::RhoProfile,
        CheckId::Spectrum,
        CheckId::Invariance,
        CheckId::Uniqueness,
        CheckId::NonUniqueness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Gramian => "gramian",
            CheckId::DiagonalOperator => "diagonal-operator",
            CheckId::InnerProducts => "inner-products",
            CheckId::FullSpark => "full-spark",
            CheckId::Equivalence => "equivalence",
            CheckId::DualFamily => "dual-family",
            CheckId::RhoProfile => "rho-profile",
            CheckId::Spectrum => "spectrum",
            CheckId::Invariance => "invariance",
            CheckId::Uniqueness => "uniqueness",
            CheckId::NonUniqueness => "nonuniqueness",
        }
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        CheckId::ALL.iter().copied().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check does not apply to this graph (e.g. uniqueness needs a
    /// connected graph).
    Skipped,
}

impl CheckStatus {
    pub fn name(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub check: CheckId,
    pub graph_label: String,
    pub status: CheckStatus,
    /// Named residuals backing the verdict.
    pub residuals: Vec<(String, f64)>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Random perturbations per graph in the uniqueness check.
    pub trials: usize,
    pub seed: u64,
    /// Largest erasure size for the profile/invariance/non-uniqueness scans.
    pub r_max: usize,
    /// Spectrum multiset comparison tolerance.
    pub tol_spectrum: f64,
    /// ρ comparison tolerance for ties and transport.
    pub tol_rho: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 50,
            seed: 7,
            r_max: 4,
            tol_spectrum: 1e-7,
            tol_rho: 1e-7,
        }
    }
}

pub fn run_checks(
    ids: &[CheckId],
    g: &Graph,
    label: &str,
    opts: &VerifyOptions,
) -> Result<Vec<CheckOutcome>, ErasureError> {
    ids.iter()
        .map(|&id| run_check(id, g, label, opts))
        .collect()
}

pub fn run_check(
    id: CheckId,
    g: &Graph,
    label: &str,
    opts: &VerifyOptions,
) -> Result<CheckOutcome, ErasureError> {
    let outcome = |status, residuals, detail: String| CheckOutcome {
        check: id,
        graph_label: label.to_string(),
        status,
        residuals,
        detail,
    };
    let skipped = |why: &str| {
        Ok(outcome(CheckStatus::Skipped, Vec::new(), why.to_string()))
    };
    if g.edge_count() == 0 {
        return skipped("graph has no edges, no frame exists");
    }
    let n = g.vertex_count();

    match id {
        CheckId::Gramian => {
            let l = g.laplacian_bundle().laplacian_f64();
            let mut residuals = Vec::new();
            let mut worst = 0.0_f64;
            for (name, frame) in [
                ("global", Frame::from_graph_global(g)?),
                ("blockwise", Frame::from_graph_blockwise(g)?),
            ] {
                let r = frame.gramian().max_abs_diff(&l);
                worst = worst.max(r);
                residuals.push((name.to_string(), r));
            }
            let status = if worst < 1e-8 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                residuals,
                format!("max |Gramian - L| = {worst:.3e} (tol 1e-8)"),
            ))
        }

        CheckId::DiagonalOperator => {
            let l = g.laplacian_bundle().laplacian_f64();
            let dec = linalg::sym_eig(&l)?;
            let mut want: Vec<f64> = dec
                .eigenvalues()
                .iter()
                .copied()
                .filter(|&v| v != 0.0)
                .collect();
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut residuals = Vec::new();
            let mut worst = 0.0_f64;
            for (name, frame) in [
                ("global", Frame::from_graph_global(g)?),
                ("blockwise", Frame::from_graph_blockwise(g)?),
            ] {
                let off = frame.frame_operator().off_diagonal_max();
                let s = frame.frame_operator().matrix();
                let mut diag: Vec<f64> = (0..frame.dim()).map(|i| s[(i, i)]).collect();
                diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let spectrum_gap = diag
                    .iter()
                    .zip(&want)
                    .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
                worst = worst.max(off).max(spectrum_gap);
                residuals.push((format!("{name}_off_diagonal"), off));
                residuals.push((format!("{name}_spectrum_gap"), spectrum_gap));
            }
            let status = if worst < 1e-8 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                residuals,
                format!("operator diagonal holds to {worst:.3e} (tol 1e-8)"),
            ))
        }

        CheckId::InnerProducts => {
            let frame = Frame::from_graph_auto(g)?;
            let dual = frame.canonical_dual();
            let mut worst = 0.0_f64;
            for i in 0..n {
                let comp_i = g.component_of(i);
                let size_i = g.components()[comp_i].len() as f64;
                for j in 0..n {
                    let ip = matrix::dot(&dual.vector(i), &frame.vector(j));
                    let want = if i == j {
                        1.0 - 1.0 / size_i
                    } else if comp_i == g.component_of(j) {
                        -1.0 / size_i
                    } else {
                        0.0
                    };
                    worst = worst.max((ip - want).abs());
                }
            }
            let status = if worst < 1e-9 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                vec![("max_deviation".to_string(), worst)],
                format!("reconstruction coefficients off by {worst:.3e} (tol 1e-9)"),
            ))
        }

        CheckId::FullSpark => {
            let frame = Frame::from_graph_auto(g)?;
            let spark = frame.is_full_spark()?;
            let expect = g.is_connected();
            let status = if spark == expect {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                Vec::new(),
                format!("full spark = {spark}, expected {expect}"),
            ))
        }

        CheckId::Equivalence => {
            let global = Frame::from_graph_global(g)?;
            let block = Frame::from_graph_blockwise(g)?;
            match orthogonal_transport(&block, &global) {
                Ok(u) => {
                    let residual = u
                        .matrix()
                        .matmul(block.synthesis())
                        .max_abs_diff(global.synthesis());
                    let status = if residual < 1e-7 {
                        CheckStatus::Pass
                    } else {
                        CheckStatus::Fail
                    };
                    Ok(outcome(
                        status,
                        vec![("transport_residual".to_string(), residual)],
                        format!("orthogonal transport residual {residual:.3e} (tol 1e-7)"),
                    ))
                }
                Err(e) => Ok(outcome(
                    CheckStatus::Fail,
                    Vec::new(),
                    format!("no orthogonal transport found: {e}"),
                )),
            }
        }

        CheckId::DualFamily => {
            let frame = Frame::from_graph_auto(g)?;
            let m = g.component_count();
            let k = frame.dim();
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut worst = 0.0_f64;
            for _ in 0..5 {
                let offsets: Vec<Vec<f64>> = (0..m)
                    .map(|_| (0..k).map(|_| StandardNormal.sample(&mut rng)).collect())
                    .collect();
                let dual = frame.dual_from_offsets(&offsets)?;
                worst = worst.max(dual.duality_residual(&frame));
            }
            let canonical = frame.canonical_dual();
            worst = worst.max(canonical.duality_residual(&frame));
            let status = if worst < 1e-8 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                vec![("max_duality_residual".to_string(), worst)],
                format!("offset duals reconstruct to {worst:.3e} (tol 1e-8)"),
            ))
        }

        CheckId::RhoProfile => {
            let frame = Frame::from_graph_auto(g)?;
            let dual = frame.canonical_dual();
            let (rho1, _) = erasure::rho_r(&frame, &dual, 1)?;
            let want1 = g
                .components()
                .iter()
                .map(|c| 1.0 - 1.0 / c.len() as f64)
                .fold(0.0_f64, f64::max);
            let gap1 = (rho1 - want1).abs();
            let mut residuals = vec![("rho1_gap".to_string(), gap1)];
            let mut worst_high = 0.0_f64;
            for r in 2..=opts.r_max.min(n - 1) {
                let (rho, _) = erasure::rho_r(&frame, &dual, r)?;
                worst_high = worst_high.max((rho - 1.0).abs());
            }
            residuals.push(("rho_r_gap".to_string(), worst_high));
            let status = if gap1 < 1e-9 && worst_high < 1e-8 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                residuals,
                format!(
                    "rho1 off by {gap1:.3e} (tol 1e-9), higher levels off by {worst_high:.3e} (tol 1e-8)"
                ),
            ))
        }

        CheckId::Spectrum => {
            let frame = Frame::from_graph_auto(g)?;
            let dual = frame.canonical_dual();
            let top = if g.is_connected() { n } else { n - 1 };
            let mut mismatches = 0usize;
            let mut worst = 0.0_f64;
            let mut total = 0usize;
            for r in 2..=top {
                for lambda in combinations(n, r) {
                    let e = ErasureSet::new(&lambda, n)?;
                    let report =
                        erasure::check_spectrum_with_tolerance(&frame, &dual, &e, opts.tol_spectrum)?;
                    total += 1;
                    let predicted = report
                        .predicted
                        .as_ref()
                        .expect("canonical duals of corpus frames have predictions");
                    let want = predicted.expand();
                    let gap = report
                        .spectrum
                        .values()
                        .iter()
                        .zip(&want)
                        .fold(0.0_f64, |m, (&(re, im), &v)| {
                            m.max((re - v).abs()).max(im.abs())
                        });
                    worst = worst.max(gap);
                    if report.prediction_match != Some(true) {
                        mismatches += 1;
                    }
                }
            }
            let status = if mismatches == 0 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                vec![("max_eigenvalue_gap".to_string(), worst)],
                format!(
                    "{total} erasure sets checked, {mismatches} spectrum mismatches (tol {:.0e})",
                    opts.tol_spectrum
                ),
            ))
        }

        CheckId::Invariance => {
            let frame = Frame::from_graph_auto(g)?;
            let mut worst = 0.0_f64;
            for i in 0..5 {
                let u = random_orthogonal(frame.dim(), opts.seed.wrapping_add(i));
                worst = worst.max(rho_invariance_gap(&frame, &u, opts.r_max)?);
            }
            let status = if worst < opts.tol_rho {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                vec![("max_rho_gap".to_string(), worst)],
                format!(
                    "5 orthogonal transports shift rho by at most {worst:.3e} (tol {:.0e})",
                    opts.tol_rho
                ),
            ))
        }

        CheckId::Uniqueness => {
            if !g.is_connected() {
                return skipped("uniqueness statement applies to connected graphs");
            }
            let r = 2.min(n - 1);
            let report = verify_uniqueness_connected(g, r, opts.trials, opts.seed)?;
            let margin = report
                .trials
                .iter()
                .map(|t| t.rho1 - report.baseline_rho1)
                .fold(f64::INFINITY, f64::min);
            let status = if report.all_hold() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                vec![
                    ("min_rho1_margin".to_string(), margin),
                    ("violations".to_string(), report.violations as f64),
                ],
                format!(
                    "{} perturbed duals, min rho1 excess {margin:.3e}, {} violations",
                    report.trials.len(),
                    report.violations
                ),
            ))
        }

        CheckId::NonUniqueness => {
            if g.is_connected() {
                return skipped("non-uniqueness statement applies to disconnected graphs");
            }
            let report = verify_nonuniqueness_disconnected(g, opts.r_max.min(n - 1))?;
            let status = if report.ties_within(opts.tol_rho) {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            Ok(outcome(
                status,
                vec![("max_profile_gap".to_string(), report.max_gap)],
                format!(
                    "alternate dual ties canonical within {:.3e} (tol {:.0e})",
                    report.max_gap, opts.tol_rho
                ),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    #[test]
    fn all_checks_pass_on_path4() {
        let g = Graph::generate(GraphFamily::Path, 4).unwrap();
        let opts = VerifyOptions {
            trials: 5,
            ..VerifyOptions::default()
        };
        for outcome in run_checks(&CheckId::ALL, &g, "path:4", &opts).unwrap() {
            assert_ne!(
                outcome.status,
                CheckStatus::Fail,
                "{}: {}",
                outcome.check.name(),
                outcome.detail
            );
        }
    }

    #[test]
    fn all_checks_pass_on_disconnected_union() {
        let p3 = Graph::generate(GraphFamily::Path, 3).unwrap();
        let k3 = Graph::generate(GraphFamily::Complete, 3).unwrap();
        let g = p3.disjoint_union(&k3);
        let opts = VerifyOptions {
            trials: 5,
            ..VerifyOptions::default()
        };
        for outcome in run_checks(&CheckId::ALL, &g, "union", &opts).unwrap() {
            assert_ne!(
                outcome.status,
                CheckStatus::Fail,
                "{}: {}",
                outcome.check.name(),
                outcome.detail
            );
        }
        // uniqueness is skipped, non-uniqueness runs
        let uniq = run_check(CheckId::Uniqueness, &g, "union", &opts).unwrap();
        assert_eq!(uniq.status, CheckStatus::Skipped);
        let non = run_check(CheckId::NonUniqueness, &g, "union", &opts).unwrap();
        assert_eq!(non.status, CheckStatus::Pass);
    }

    #[test]
    fn empty_graph_is_skipped() {
        let g = Graph::generate(GraphFamily::Empty, 3).unwrap();
        let outcome = run_check(
            CheckId::Gramian,
            &g,
            "empty:3",
            &VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(outcome.status, CheckStatus::Skipped);
    }

    #[test]
    fn check_id_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::parse(id.name()), Some(id));
        }
        assert_eq!(CheckId::parse("nonsense"), None);
    }
}
