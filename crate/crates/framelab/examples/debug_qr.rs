use framelab::erasure::{error_operator, ErasureSet};
use framelab::frame::Frame;
use framelab::graph::{Graph, GraphFamily};
use framelab::linalg::general_eigenvalues;
use framelab::subsets::combinations;

fn main() {
    let g = Graph::generate(GraphFamily::Path, 8).unwrap();
    let f = Frame::from_graph_global(&g).unwrap();
    let d = f.canonical_dual();
    for r in 1..=7 {
        for lambda in combinations(8, r) {
            let e = ErasureSet::new(&lambda, 8).unwrap();
            let op = error_operator(&f, &d, &e).unwrap();
            if let Err(err) = general_eigenvalues(&op) {
                println!("r={r} lambda={lambda:?}: {err}");
                println!("operator:");
                for i in 0..op.rows() {
                    let row: Vec<String> =
                        op.row(i).iter().map(|v| format!("{v:+.10e}")).collect();
                    println!("  [{}]", row.join(", "));
                }
                return;
            }
        }
    }
    println!("all converged");
}
