//! Seeded random graphs for property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Graph, GraphBuilder};

/// `G(n, p)` from a seeded stream.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// A reproducible list of `count` graphs with orders in `min_n..=max_n`
/// and edge densities drawn from a spread of values.
///
/// Every third graph gets twin classes blown up so quotients are
/// nontrivial.
pub fn random_corpus(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    assert!(min_n <= max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(min_n..=max_n);
            let p = [0.2, 0.35, 0.5, 0.65, 0.8][i % 5];
            if i % 3 == 2 && n >= 2 {
                let base = rng.gen_range(1..=n.div_ceil(2).max(1));
                let core = gnp(&mut rng, base, p);
                blow_up(&mut rng, &core, n)
            } else {
                gnp(&mut rng, n, p)
            }
        })
        .collect()
}

/// Replaces vertices by cliques of true twins until there are `n` vertices.
pub fn blow_up(rng: &mut ChaCha8Rng, g: &Graph, n: usize) -> Graph {
    let base = g.n();
    if base == 0 {
        return Graph::empty(n);
    }
    let mut owner: Vec<usize> = (0..base).collect();
    while owner.len() < n {
        owner.push(rng.gen_range(0..base));
    }
    let mut b = GraphBuilder::new(owner.len());
    for u in 0..owner.len() {
        for v in u + 1..owner.len() {
            if owner[u] == owner[v] || g.has_edge(owner[u], owner[v]) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
