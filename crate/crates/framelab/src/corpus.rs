//! The built-in graph corpus the verification suite runs over: small named
//! families, seeded random connected graphs, and disjoint unions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphFamily};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// Generator-spec label where expressible (`path:4`,
    /// `union:path:2,complete:3`), otherwise `random:<i>`.
    pub label: String,
    pub graph: Graph,
}

/// Corpus: paths, cycles, complete graphs, and stars up to 8 vertices; ten
/// seeded random connected graphs; every pairwise disjoint union (with
/// repetition) of {P2, P3, K3, star4}; and P2 ⊔ P2 ⊔ K3. Graphs with more
/// than `max_n` vertices are dropped.
pub fn standard_corpus(max_n: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let cap = max_n.min(8);
    let mut keep = |label: String, graph: Graph| {
        if graph.vertex_count() <= max_n {
            out.push(CorpusEntry { label, graph });
        }
    };

    for n in 2..=cap {
        keep(
            format!("path:{n}"),
            Graph::generate(GraphFamily::Path, n).unwrap(),
        );
    }
    for n in 3..=cap {
        keep(
            format!("cycle:{n}"),
            Graph::generate(GraphFamily::Cycle, n).unwrap(),
        );
    }
    for n in 2..=cap {
        keep(
            format!("complete:{n}"),
            Graph::generate(GraphFamily::Complete, n).unwrap(),
        );
    }
    for n in 3..=cap {
        keep(
            format!("star:{n}"),
            Graph::generate(GraphFamily::Star, n).unwrap(),
        );
    }

    if cap >= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..10 {
            let n = rng.gen_range(3..=cap);
            let g = Graph::random_connected(n, &mut rng);
            keep(format!("random:{i}"), g);
        }
    }

    let units: [(&str, Graph); 4] = [
        ("path:2", Graph::generate(GraphFamily::Path, 2).unwrap()),
        ("path:3", Graph::generate(GraphFamily::Path, 3).unwrap()),
        ("complete:3", Graph::generate(GraphFamily::Complete, 3).unwrap()),
        ("star:4", Graph::generate(GraphFamily::Star, 4).unwrap()),
    ];
    for (i, (name_a, a)) in units.iter().enumerate() {
        for (name_b, b) in units.iter().skip(i) {
            keep(format!("union:{name_a},{name_b}"), a.disjoint_union(b));
        }
    }
    let p2 = &units[0].1;
    let k3 = &units[2].1;
    keep(
        "union:path:2,path:2,complete:3".to_string(),
        p2.disjoint_union(p2).disjoint_union(k3),
    );

    out
}
