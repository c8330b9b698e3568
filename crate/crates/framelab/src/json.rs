//! Report serialization. All floating-point values are rendered with 17
//! significant digits (`{:.16e}`), enough to round-trip f64 exactly, so
//! identical runs produce byte-identical output.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::erasure::{ErasureReport, RhoProfile};
use crate::frame::{DualFrame, Frame};
use crate::graph::{to_edge_list, Graph};
use crate::verify::CheckOutcome;

struct SigDigits17;

impl Formatter for SigDigits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize with the 17-significant-digit float convention, pretty-printed
/// is deliberately avoided: one canonical byte stream per value.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits17);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// 17-significant-digit rendering for CSV and text output.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

#[derive(Serialize)]
pub struct GraphDoc {
    pub n: usize,
    /// 1-based endpoint pairs, matching the edge-list text format.
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn new(g: &Graph) -> GraphDoc {
        GraphDoc {
            n: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u + 1, v + 1]).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct FrameDoc {
    pub dim: usize,
    pub n: usize,
    /// Row-major synthesis matrix.
    pub synthesis: Vec<Vec<f64>>,
    pub construction: String,
    pub graph: Option<GraphDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<FrameDiagnostics>,
}

#[derive(Serialize)]
pub struct FrameDiagnostics {
    /// max |Gramian − Laplacian| (graph frames only).
    pub gramian_residual: f64,
    /// Largest off-diagonal magnitude of the frame operator.
    pub operator_off_diagonal: f64,
}

impl FrameDoc {
    pub fn new(frame: &Frame, diagnostics: bool) -> FrameDoc {
        let synthesis = (0..frame.dim())
            .map(|i| frame.synthesis().row(i).to_vec())
            .collect();
        let diagnostics = diagnostics.then(|| FrameDiagnostics {
            gramian_residual: frame
                .source_graph()
                .map(|g| {
                    frame
                        .gramian()
                        .max_abs_diff(&g.laplacian_bundle().laplacian_f64())
                })
                .unwrap_or(0.0),
            operator_off_diagonal: frame.frame_operator().off_diagonal_max(),
        });
        FrameDoc {
            dim: frame.dim(),
            n: frame.vector_count(),
            synthesis,
            construction: frame.construction().name().to_string(),
            graph: frame.source_graph().map(GraphDoc::new),
            diagnostics,
        }
    }
}

#[derive(Serialize)]
pub struct DualDoc {
    pub offsets: Vec<Vec<f64>>,
}

impl DualDoc {
    pub fn new(dual: &DualFrame) -> DualDoc {
        DualDoc {
            offsets: dual.offsets().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct ErasureReportDoc {
    pub r: usize,
    /// 1-based erased indices.
    pub lambda: Vec<usize>,
    pub rho: f64,
    /// (re, im) pairs sorted by real then imaginary part.
    pub spectrum: Vec<[f64; 2]>,
    /// (eigenvalue, multiplicity) pairs, or null when no prediction applies.
    pub predicted: Option<Vec<(f64, usize)>>,
    #[serde(rename = "match")]
    pub prediction_match: Option<bool>,
}

impl ErasureReportDoc {
    pub fn new(report: &ErasureReport) -> ErasureReportDoc {
        ErasureReportDoc {
            r: report.erasure.size(),
            lambda: report.erasure.indices().iter().map(|i| i + 1).collect(),
            rho: report.radius,
            spectrum: report
                .spectrum
                .values()
                .iter()
                .map(|&(re, im)| [re, im])
                .collect(),
            predicted: report
                .predicted
                .as_ref()
                .map(|p| p.entries().to_vec()),
            prediction_match: report.prediction_match,
        }
    }
}

#[derive(Serialize)]
pub struct RhoRowDoc {
    pub r: usize,
    pub rho: f64,
    /// 1-based indices of the lexicographically smallest maximizer.
    pub argmax_lambda: Vec<usize>,
}

#[derive(Serialize)]
pub struct RhoProfileDoc {
    pub graph: GraphDoc,
    pub construction: String,
    pub dual: DualDoc,
    pub rows: Vec<RhoRowDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reports: Option<Vec<ErasureReportDoc>>,
}

impl RhoProfileDoc {
    pub fn new(
        frame: &Frame,
        dual: &DualFrame,
        profile: &RhoProfile,
        reports: Option<Vec<ErasureReportDoc>>,
    ) -> RhoProfileDoc {
        RhoProfileDoc {
            graph: GraphDoc::new(frame.source_graph().expect("profile of a graph frame")),
            construction: frame.construction().name().to_string(),
            dual: DualDoc::new(dual),
            rows: profile
                .points
                .iter()
                .map(|p| RhoRowDoc {
                    r: p.r,
                    rho: p.rho,
                    argmax_lambda: p.argmax.indices().iter().map(|i| i + 1).collect(),
                })
                .collect(),
            reports,
        }
    }

    /// CSV rows `r,rho,argmax` with semicolon-joined 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,rho,argmax\n");
        for row in &self.rows {
            let argmax: Vec<String> = row.argmax_lambda.iter().map(usize::to_string).collect();
            out.push_str(&format!(
                "{},{},{}\n",
                row.r,
                fmt_f64(row.rho),
                argmax.join(";")
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub theorem: String,
    pub graph: String,
    pub status: String,
    pub residuals: Vec<(String, f64)>,
    pub detail: String,
}

impl CheckDoc {
    pub fn new(outcome: &CheckOutcome) -> CheckDoc {
        CheckDoc {
            theorem: outcome.check.name().to_string(),
            graph: outcome.graph_label.clone(),
            status: outcome.status.name().to_string(),
            residuals: outcome.residuals.clone(),
            detail: outcome.detail.clone(),
        }
    }
}

/// Offsets file accepted by `--dual <path>`: `{"offsets": [[...], ...]}`.
#[derive(serde::Deserialize)]
pub struct OffsetsFile {
    pub offsets: Vec<Vec<f64>>,
}

/// Edge-list text for embedding graphs in human-readable reports.
pub fn graph_text(g: &Graph) -> String {
    to_edge_list(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;

    #[test]
    fn floats_use_17_significant_digits() {
        #[derive(Serialize)]
        struct Probe {
            x: f64,
        }
        assert_eq!(to_json_string(&Probe { x: 0.75 }), "{\"x\":7.5000000000000000e-1}");
        assert_eq!(to_json_string(&Probe { x: 1.0 }), "{\"x\":1.0000000000000000e0}");
        assert_eq!(fmt_f64(1.0 / 3.0), "3.3333333333333331e-1");
    }

    #[test]
    fn frame_doc_shape() {
        let g = Graph::generate(GraphFamily::Path, 2).unwrap();
        let f = Frame::from_graph_global(&g).unwrap();
        let json = to_json_string(&FrameDoc::new(&f, false));
        assert!(json.starts_with("{\"dim\":1,\"n\":2,\"synthesis\":[["));
        assert!(json.contains("\"construction\":\"global_eig\""));
        assert!(json.contains("\"graph\":{\"n\":2,\"edges\":[[1,2]]}"));
    }

    #[test]
    fn json_is_deterministic() {
        let g = Graph::generate(GraphFamily::Cycle, 5).unwrap();
        let f = Frame::from_graph_global(&g).unwrap();
        let a = to_json_string(&FrameDoc::new(&f, true));
        let f2 = Frame::from_graph_global(&g).unwrap();
        let b = to_json_string(&FrameDoc::new(&f2, true));
        assert_eq!(a, b);
    }
}
