//! Tree-decompositions, their width under a vertex-set measure, and exact
//! desk-scale mu-treewidth.
//!
//! Cardinality width is the largest bag size, without the usual `-1`.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::cliques::{twin_partition, QuotientMap};
use crate::generators::{generate, Family, FamilySpec};
use crate::graph::{mask_iter, Graph, VertexSet};
use crate::measure::{full_mask, Measure};
use crate::patterns::induced_minor_contains;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Edges of the tree over nodes `0..bags.len()`.
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: Vec<VertexSet>,
}

impl Serialize for TreeDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TreeDecomposition", 3)?;
        st.serialize_field("nodes", &self.bags.len())?;
        st.serialize_field("edges", &self.tree_edges)?;
        st.serialize_field("bags", &self.bags)?;
        st.end()
    }
}

impl TreeDecomposition {
    pub fn single_bag(g: &Graph) -> Self {
        TreeDecomposition {
            tree_edges: Vec::new(),
            bags: vec![g.vertices()],
        }
    }

    pub fn nodes(&self) -> usize {
        self.bags.len()
    }
}

/// Checks that `td` is a tree-decomposition of `g`, naming the first
/// violated condition.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> std::result::Result<(), String> {
    let n = g.n();
    let m = td.bags.len();
    if let Some(b) = td.bags.iter().position(|b| b.universe() != n) {
        return Err(format!("bag {b} is over the wrong vertex universe"));
    }
    if m == 0 {
        return if n == 0 { Ok(()) } else { Err("no bags".into()) };
    }
    if td.tree_edges.len() != m - 1 {
        return Err(format!("{} tree edges for {m} nodes", td.tree_edges.len()));
    }
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in &td.tree_edges {
        if a >= m || b >= m || a == b {
            return Err(format!("bad tree edge ({a},{b})"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let reach = |allowed: &dyn Fn(usize) -> bool, start: usize| {
        let mut seen = vec![false; m];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] && allowed(u) {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count
    };
    if reach(&|_| true, 0) != m {
        return Err("tree is disconnected".into());
    }
    for v in 0..n {
        let holders: Vec<usize> = (0..m).filter(|&t| td.bags[t].contains(v)).collect();
        let Some(&first) = holders.first() else {
            return Err(format!("vertex {v} is in no bag"));
        };
        if reach(&|t| td.bags[t].contains(v), first) != holders.len() {
            return Err(format!("bags containing vertex {v} do not form a subtree"));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            return Err(format!("edge {u}-{v} is in no bag"));
        }
    }
    Ok(())
}

pub fn is_valid_td(g: &Graph, td: &TreeDecomposition) -> bool {
    validate(g, td).is_ok()
}

/// Largest measure of a bag.
pub fn mu_width(g: &Graph, td: &TreeDecomposition, mu: Measure) -> Result<usize> {
    validate(g, td).map_err(|e| Error::domain(format!("invalid tree-decomposition: {e}")))?;
    td.bags.iter().try_fold(0, |acc, b| Ok(acc.max(mu.eval(g, b)?)))
}

/// Largest graph handled by the exact elimination-order search.
pub const EXACT_TW_CAP: usize = 16;

/// For an elimination order, the bag of each vertex: itself plus every
/// later vertex reachable through earlier ones.
fn elimination_bags(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let mut eliminated = 0u64;
    let mut bags = vec![0u64; adj.len()];
    for &v in order {
        bags[v] = 1 << v | higher_reach(adj, eliminated, v);
        eliminated |= 1 << v;
    }
    bags
}

/// Vertices outside `s ∪ {v}` adjacent to the component of `v` in `G[s ∪ {v}]`.
fn higher_reach(adj: &[u64], s: u64, v: usize) -> u64 {
    let mut comp = 1u64 << v;
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0;
        for u in mask_iter(frontier) {
            next |= adj[u] & s;
        }
        frontier = next & !comp;
        comp |= next;
    }
    let mut out = 0;
    for u in mask_iter(comp) {
        out |= adj[u];
    }
    out & !comp & !s
}

/// Builds the decomposition of an elimination order: one node per vertex,
/// attached to the earliest-eliminated vertex of its later part.
pub fn treedec_from_order(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    let n = g.n();
    if order.len() != n || VertexSet::try_from_iter(n, order.iter().copied())?.len() != n {
        return Err(Error::domain("elimination order must list every vertex once"));
    }
    if n == 0 {
        return Ok(TreeDecomposition { tree_edges: Vec::new(), bags: Vec::new() });
    }
    let adj = g.mask_rows("elimination order")?;
    let bags = elimination_bags(&adj, order);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for &v in order {
        let later = bags[v] & !(1 << v);
        match mask_iter(later).min_by_key(|&u| pos[u]) {
            Some(p) => edges.push((v, p)),
            None => roots.push(v),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    Ok(TreeDecomposition {
        tree_edges: edges,
        bags: bags.into_iter().map(|b| VertexSet::from_mask(n, b)).collect(),
    })
}

/// Exact search over elimination orders by dynamic programming on the set of
/// already-eliminated vertices. Returns the optimum and an optimal order.
pub fn mu_treewidth_dp(g: &Graph, mu: Measure) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    Error::check_cap("exact treewidth", EXACT_TW_CAP, n)?;
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = g.mask_rows("exact treewidth")?;
    let size = 1usize << n;
    let mut mu_cache = vec![u8::MAX; size];
    let mut eval = |s: u64| -> u8 {
        let c = &mut mu_cache[s as usize];
        if *c == u8::MAX {
            *c = mu.eval_mask(&adj, s) as u8;
        }
        *c
    };
    let mut best = vec![u8::MAX; size];
    let mut choice = vec![0u8; size];
    best[0] = 0;
    for s in 1..size as u64 {
        for v in mask_iter(s) {
            let prev = s & !(1 << v);
            let bag = 1 << v | higher_reach(&adj, prev, v);
            let w = best[prev as usize].max(eval(bag));
            if w < best[s as usize] {
                best[s as usize] = w;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full_mask(n);
    while s != 0 {
        let v = choice[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((best[size - 1] as usize, order))
}

/// A perfect elimination order if `g` is chordal.
pub fn perfect_elimination_order(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let adj = g.mask_rows("chordality")?;
    // Maximum cardinality search; its reverse is a perfect elimination
    // order exactly when the graph is chordal.
    let mut weight = vec![0usize; n];
    let mut visited = 0u64;
    let mut mcs = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| visited >> v & 1 == 0)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("vertices remain");
        mcs.push(v);
        visited |= 1 << v;
        for u in mask_iter(adj[v] & !visited) {
            weight[u] += 1;
        }
    }
    mcs.reverse();
    let mut eliminated = 0u64;
    for &v in &mcs {
        let later = adj[v] & !eliminated;
        if mask_iter(later).any(|u| later & !adj[u] & !(1 << u) != 0) {
            return Ok(None);
        }
        eliminated |= 1 << v;
    }
    Ok(Some(mcs))
}

pub fn is_chordal(g: &Graph) -> Result<bool> {
    Ok(perfect_elimination_order(g)?.is_some())
}

/// Greedy elimination minimising the measure of the next bag, then fill-in,
/// then degree, then id.
fn greedy_order(adj: &[u64], mu: Measure) -> Vec<usize> {
    let n = adj.len();
    let mut eliminated = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| eliminated >> v & 1 == 0)
            .min_by_key(|&v| {
                let later = higher_reach(adj, eliminated, v);
                let fill: u32 = mask_iter(later)
                    .map(|u| (later & !adj[u] & !(1 << u)).count_ones())
                    .sum();
                (mu.eval_mask(adj, later | 1 << v), fill, later.count_ones(), v)
            })
            .expect("vertices remain");
        order.push(v);
        eliminated |= 1 << v;
    }
    order
}

/// The exact mu-treewidth with a witness decomposition.
///
/// Graphs up to [`EXACT_TW_CAP`] vertices are solved exactly. Larger graphs
/// are answered only when a lower bound (chordality for alpha and theta,
/// the clique number for cardinality) meets a greedy upper bound;
/// otherwise a capacity error is returned.
pub fn exact_mu_treewidth(g: &Graph, mu: Measure) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n == 0 {
        return Ok((0, TreeDecomposition { tree_edges: Vec::new(), bags: Vec::new() }));
    }
    let adj = g.mask_rows("exact treewidth")?;
    if let Some(peo) = perfect_elimination_order(g)? {
        let td = treedec_from_order(g, &peo)?;
        let w = mu_width(g, &td, mu)?;
        return Ok((w, td));
    }
    if n <= EXACT_TW_CAP {
        let (w, order) = mu_treewidth_dp(g, mu)?;
        return Ok((w, treedec_from_order(g, &order)?));
    }
    let lower = match mu {
        Measure::Cardinality => crate::measure::omega_mask(&adj, full_mask(n)),
        Measure::Alpha | Measure::Theta => 2,
    };
    let td = treedec_from_order(g, &greedy_order(&adj, mu))?;
    let upper = mu_width(g, &td, mu)?;
    if upper == lower {
        return Ok((upper, td));
    }
    Err(Error::Capacity {
        what: "exact treewidth",
        limit: EXACT_TW_CAP,
        actual: n,
    })
}

/// Maps every bag to the twin classes it meets.
pub fn quotient_td(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition> {
    validate(g, td).map_err(|e| Error::domain(format!("invalid tree-decomposition: {e}")))?;
    let q = twin_partition(g);
    Ok(project_td(&q, td))
}

fn project_td(q: &QuotientMap, td: &TreeDecomposition) -> TreeDecomposition {
    TreeDecomposition {
        tree_edges: td.tree_edges.clone(),
        bags: td.bags.iter().map(|b| q.project_set(b)).collect(),
    }
}

/// Replaces every class in every bag by all of its members.
pub fn lift_td(g: &Graph, td: &TreeDecomposition) -> Result<TreeDecomposition> {
    let q = twin_partition(g);
    validate(&q.quotient, td)
        .map_err(|e| Error::domain(format!("invalid tree-decomposition of the quotient: {e}")))?;
    Ok(TreeDecomposition {
        tree_edges: td.tree_edges.clone(),
        bags: td.bags.iter().map(|b| q.expand_set(b)).collect(),
    })
}

/// Largest grid side searched as an induced minor by [`grid_diagnostic`].
pub const GRID_SEARCH_CAP: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct GridDiagnostic {
    pub k: usize,
    pub theta_tw: usize,
    pub cid: usize,
    pub local_alpha: usize,
    /// Whether the `k×k` grid is an induced minor; `None` when the search
    /// is out of range.
    pub grid_minor: Option<bool>,
    /// The threshold function for the grid, stated symbolically; it is far
    /// too large to use as a test.
    pub threshold: String,
}

pub fn grid_diagnostic(g: &Graph, k: usize) -> Result<GridDiagnostic> {
    if k == 0 {
        return Err(Error::domain("grid side must be at least 1"));
    }
    let (theta_tw, _) = exact_mu_treewidth(g, Measure::Theta)?;
    let cid = crate::params::cid(g)?;
    let local_alpha = crate::params::local_alpha(g)?;
    let grid_minor = if k <= GRID_SEARCH_CAP && g.n() <= crate::patterns::MINOR_HOST_CAP {
        Some(induced_minor_contains(g, &generate(FamilySpec::new(Family::Grid, k))?)?)
    } else {
        None
    };
    Ok(GridDiagnostic {
        k,
        theta_tw,
        cid,
        local_alpha,
        grid_minor,
        threshold: format!("O({k}^10 + 2^({local_alpha}^(5*{cid})))"),
    })
}
