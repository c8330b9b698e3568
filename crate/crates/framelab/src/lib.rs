//! # framelab
//!
//! Frames generated by graph Laplacians: construction, dual-frame families,
//! and spectral analysis of erasure error operators.
//!
//! A simple graph G on n vertices with Laplacian `L = M diag(λ) Mᵀ` of rank
//! k yields a frame of n vectors in ℝᵏ with synthesis matrix
//! `diag(√λ) M₁ᵀ`. Such frames have striking structure: the Gramian is the
//! Laplacian itself, the frame operator is diagonal, every dual frame is
//! the canonical dual shifted by one offset vector per connected component,
//! and the spectra of the erasure error operators of the canonical dual
//! have a closed form. This crate builds all of it and verifies each claim
//! numerically, exhaustively over erasure sets at desk scale.
//!
//! ## Start with the examples
//!
//! One runnable example per capability:
//!
//! ```text
//! cargo run --example build_frame         # graph → frame, Gramian = Laplacian
//! cargo run --example dual_family         # canonical + per-component offset duals
//! cargo run --example erasure_spectrum    # error operators vs the closed-form spectra
//! cargo run --example rho_profile         # worst-case spectral radius per erasure size
//! cargo run --example unitary_invariance  # rho profiles survive orthogonal transport
//! cargo run --example sod_search          # empirical optimal-dual search
//! cargo run --example verify_corpus       # every check across the built-in corpus
//! ```
//!
//! ## Library map
//!
//! | Module | What it holds |
//! |--------|---------------|
//! | [`graph`] | Simple graphs, generators, unions, integer Laplacians |
//! | [`linalg`] | Jacobi symmetric eigensolver, Hessenberg+QR spectra, rank |
//! | [`frame`] | [`frame::Frame`], duals, full-spark test, orthogonal transport |
//! | [`erasure`] | Error operators, ρ⁽ʳ⁾, predicted spectra, optimality checks |
//! | [`verify`] | Pass/fail certificates for each classical identity |
//! | [`corpus`] | The built-in graph corpus the certificates run over |
//! | [`cli`] | The `framelab` binary: frame/analyze/verify/search/corpus |
//!
//! ## Quick start
//!
//! ```
//! use framelab::graph::{Graph, GraphFamily};
//! use framelab::frame::Frame;
//! use framelab::erasure::{rho_r, ErasureSet, check_spectrum};
//!
//! let g = Graph::generate(GraphFamily::Complete, 4).unwrap();
//! let frame = Frame::from_graph_global(&g).unwrap();
//! let dual = frame.canonical_dual();
//!
//! // worst 1-erasure error has spectral radius 1 - 1/n
//! let (rho1, _) = rho_r(&frame, &dual, 1).unwrap();
//! assert!((rho1 - 0.75).abs() < 1e-9);
//!
//! // two erasures: spectrum {1, 1/2, 0}, matching the prediction
//! let report = check_spectrum(&frame, &dual, &ErasureSet::new(&[0, 1], 4).unwrap()).unwrap();
//! assert_eq!(report.prediction_match, Some(true));
//! ```

pub mod cli;
pub mod corpus;
pub mod erasure;
pub mod frame;
pub mod graph;
pub mod json;
pub mod linalg;
pub mod oracle;
pub mod subsets;
pub mod verify;
