//! Exact independence, clique and clique-cover numbers of induced subgraphs.
//!
//! Everything here works on adjacency words, so graphs are limited to 64
//! vertices; callers induce a smaller graph first when they need to.

use serde::Serialize;

use crate::graph::{mask_iter, Graph, VertexSet};
use crate::Result;

/// A vertex-set measure used for tree-decomposition widths and separation orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    #[serde(rename = "card")]
    Cardinality,
    Alpha,
    Theta,
}

impl std::str::FromStr for Measure {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "card" | "cardinality" => Ok(Measure::Cardinality),
            "alpha" => Ok(Measure::Alpha),
            "theta" => Ok(Measure::Theta),
            other => Err(crate::Error::domain(format!("unknown measure '{other}'"))),
        }
    }
}

impl Measure {
    pub fn eval_mask(self, adj: &[u64], s: u64) -> usize {
        match self {
            Measure::Cardinality => s.count_ones() as usize,
            Measure::Alpha => alpha_mask(adj, s),
            Measure::Theta => theta_mask(adj, s),
        }
    }

    /// `mu(G[s])`, inducing first when the graph is too large for words.
    pub fn eval(self, g: &Graph, s: &VertexSet) -> Result<usize> {
        if self == Measure::Cardinality {
            return Ok(s.len());
        }
        if g.n() <= crate::graph::MASK_CAP {
            let adj = g.mask_rows("measure")?;
            return Ok(self.eval_mask(&adj, s.mask()));
        }
        let sub = g.induce(s).graph;
        let adj = sub.mask_rows("measure")?;
        Ok(self.eval_mask(&adj, full_mask(sub.n())))
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Independence number of `G[s]`.
pub fn alpha_mask(adj: &[u64], s: u64) -> usize {
    if s == 0 {
        return 0;
    }
    let mut min_v = 0;
    let mut min_d = u32::MAX;
    let mut max_v = 0;
    let mut max_d = 0;
    for v in mask_iter(s) {
        let d = (adj[v] & s).count_ones();
        if d < min_d {
            min_d = d;
            min_v = v;
        }
        if d > max_d {
            max_d = d;
            max_v = v;
        }
    }
    // A vertex of degree at most one always belongs to some maximum
    // independent set.
    if min_d <= 1 {
        return 1 + alpha_mask(adj, s & !(adj[min_v] | 1 << min_v));
    }
    let without = alpha_mask(adj, s & !(1 << max_v));
    let with = 1 + alpha_mask(adj, s & !(adj[max_v] | 1 << max_v));
    without.max(with)
}

/// Clique number of `G[s]`.
pub fn omega_mask(adj: &[u64], s: u64) -> usize {
    fn go(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(adj, cand & adj[v], size + 1, best);
        go(adj, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    go(adj, s, 0, &mut best);
    best
}

/// Clique-cover number of `G[s]`, computed as the chromatic number of the
/// complement by DSATUR branch-and-bound.
pub fn theta_mask(adj: &[u64], s: u64) -> usize {
    let verts: Vec<usize> = mask_iter(s).collect();
    let k = verts.len();
    if k == 0 {
        return 0;
    }
    // Conflict graph on local indices: i and j conflict iff nonadjacent in G.
    let conflict: Vec<u64> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut row = 0u64;
            for (j, &u) in verts.iter().enumerate() {
                if i != j && adj[v] >> u & 1 == 0 {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect();
    let lower = omega_mask(&conflict, full_mask(k));
    let mut colour = vec![usize::MAX; k];
    let mut best = greedy_dsatur(&conflict);
    if best > lower {
        dsatur_bb(&conflict, &mut colour, 0, 0, lower, &mut best);
    }
    best
}

fn saturation(conflict: &[u64], colour: &[usize], v: usize) -> (u64, u32) {
    let mut seen = 0u64;
    for u in mask_iter(conflict[v]) {
        if colour[u] != usize::MAX {
            seen |= 1 << colour[u];
        }
    }
    (seen, seen.count_ones())
}

fn pick_dsatur(conflict: &[u64], colour: &[usize]) -> usize {
    (0..conflict.len())
        .filter(|&v| colour[v] == usize::MAX)
        .max_by_key(|&v| {
            let (_, sat) = saturation(conflict, colour, v);
            let free_deg = mask_iter(conflict[v]).filter(|&u| colour[u] == usize::MAX).count();
            (sat, free_deg, std::cmp::Reverse(v))
        })
        .expect("an uncoloured vertex remains")
}

fn greedy_dsatur(conflict: &[u64]) -> usize {
    let k = conflict.len();
    let mut colour = vec![usize::MAX; k];
    let mut used = 0;
    for _ in 0..k {
        let v = pick_dsatur(conflict, &colour);
        let (seen, _) = saturation(conflict, &colour, v);
        let c = (!seen).trailing_zeros() as usize;
        colour[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn dsatur_bb(
    conflict: &[u64],
    colour: &mut [usize],
    coloured: usize,
    used: usize,
    lower: usize,
    best: &mut usize,
) {
    if *best == lower {
        return;
    }
    if coloured == conflict.len() {
        *best = (*best).min(used);
        return;
    }
    let v = pick_dsatur(conflict, colour);
    let (seen, _) = saturation(conflict, colour, v);
    for c in 0..=used {
        if c + 1 >= *best && c == used {
            break;
        }
        if c >= *best {
            break;
        }
        if seen >> c & 1 == 1 {
            continue;
        }
        colour[v] = c;
        dsatur_bb(conflict, colour, coloured + 1, used.max(c + 1), lower, best);
        colour[v] = usize::MAX;
        if *best == lower {
            return;
        }
    }
}

pub fn alpha(g: &Graph, s: &VertexSet) -> Result<usize> {
    Measure::Alpha.eval(g, s)
}

pub fn theta(g: &Graph, s: &VertexSet) -> Result<usize> {
    Measure::Theta.eval(g, s)
}
