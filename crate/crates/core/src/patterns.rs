//! GF(2) cutrank, coupled pairs, parametric containment and pattern
//! certificates, plus induced subgraph and small induced-minor search.

use serde::Serialize;

use crate::cliques::{maximal_cliques, twin_partition};
use crate::generators::{generate, Family, FamilySpec};
use crate::graph::{mask_iter, Graph, VertexSet, MASK_CAP};
use crate::measure::full_mask;
use crate::{Error, Result};

/// A dense matrix over GF(2), stored as bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<Vec<u64>>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            bits: vec![vec![0; cols.div_ceil(64)]; rows],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.bits[i][j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    /// Rank by Gaussian elimination on word rows.
    pub fn rank(&self) -> usize {
        let mut rows = self.bits.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, b) = (col / 64, col % 64);
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] >> b & 1 == 1 {
                    for (a, c) in row.iter_mut().zip(&pivot) {
                        *a ^= c;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn distinct_rows(&self) -> usize {
        let mut rows = self.bits.clone();
        rows.sort();
        rows.dedup();
        rows.len()
    }
}

/// Rank of a set of single-word rows.
pub(crate) fn rank_words(rows: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut x in rows {
        while x != 0 {
            let b = 63 - x.leading_zeros() as usize;
            if basis[b] == 0 {
                basis[b] = x;
                rank += 1;
                break;
            }
            x ^= basis[b];
        }
    }
    rank
}

/// Cutrank of `x` against `y` with adjacency words.
pub(crate) fn cutrank_mask(adj: &[u64], x: u64, y: u64) -> usize {
    rank_words(mask_iter(x).map(|v| adj[v] & y))
}

fn check_universe(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.universe() != g.n() {
        return Err(Error::domain(format!(
            "vertex set over 0..{} used with a graph on {} vertices",
            s.universe(),
            g.n()
        )));
    }
    Ok(())
}

fn biadjacency(g: &Graph, x: &VertexSet, y: &VertexSet) -> F2Matrix {
    let xs = x.to_vec();
    let ys = y.to_vec();
    F2Matrix::from_fn(xs.len(), ys.len(), |i, j| g.has_edge(xs[i], ys[j]))
}

/// Rank of the adjacency submatrix with rows `x` and columns `V(G) \ x`.
pub fn cutrank(g: &Graph, x: &VertexSet) -> Result<usize> {
    check_universe(g, x)?;
    local_cutrank(g, x, &x.complement())
}

/// Rank of the adjacency submatrix with rows `x` and columns `y`.
pub fn local_cutrank(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<usize> {
    check_universe(g, x)?;
    check_universe(g, y)?;
    if x.intersects(y) {
        return Err(Error::domain("local cutrank needs disjoint vertex sets"));
    }
    if g.n() <= MASK_CAP {
        let adj = g.mask_rows("cutrank")?;
        return Ok(cutrank_mask(&adj, x.mask(), y.mask()));
    }
    Ok(biadjacency(g, x, y).rank())
}

/// Largest pattern accepted by [`induced_subgraph_search`].
pub const SUBGRAPH_CAP: usize = 10;

/// An embedding `phi` of `h` into `g` as an induced subgraph: `phi[v]` is
/// the image of vertex `v` of `h`.
pub fn induced_subgraph_search(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    Error::check_cap("induced subgraph pattern", SUBGRAPH_CAP, h.n())?;
    embed(g, h)
}

pub(crate) fn embed(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    let ga = g.mask_rows("induced subgraph host")?;
    let ha = h.mask_rows("induced subgraph pattern")?;
    let (n, m) = (g.n(), h.n());
    if m > n {
        return Ok(None);
    }
    let mut order = Vec::with_capacity(m);
    let mut placed = 0u64;
    while order.len() < m {
        let v = (0..m)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((ha[v] & placed).count_ones(), ha[v].count_ones(), std::cmp::Reverse(v)))
            .expect("vertices remain");
        order.push(v);
        placed |= 1 << v;
    }
    let mut phi = vec![usize::MAX; m];
    fn go(
        depth: usize,
        order: &[usize],
        ga: &[u64],
        ha: &[u64],
        full: u64,
        used: u64,
        phi: &mut [usize],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let mut cand = full & !used;
        for &u in &order[..depth] {
            let img = phi[u];
            cand &= if ha[v] >> u & 1 == 1 { ga[img] } else { !ga[img] };
        }
        let need = ha[v].count_ones();
        for w in mask_iter(cand) {
            if ga[w].count_ones() < need {
                continue;
            }
            phi[v] = w;
            if go(depth + 1, order, ga, ha, full, used | 1 << w, phi) {
                return true;
            }
        }
        false
    }
    Ok(go(0, &order, &ga, &ha, full_mask(n), 0, &mut phi).then_some(phi))
}

/// The split and clique variants of matchings, anti-matchings and half-graphs.
pub const FAMILY_A: [Family; 6] = [
    Family::MKI,
    Family::MKK,
    Family::AKI,
    Family::AKK,
    Family::HKI,
    Family::HKK,
];

/// [`FAMILY_A`] without the split anti-matching and split half-graph, plus stars.
pub const FAMILY_B: [Family; 5] = [Family::MKI, Family::MKK, Family::AKK, Family::HKK, Family::Star];

pub const FAMILY_STAR: [Family; 1] = [Family::Star];

/// Largest host accepted by [`pg_parameter`].
pub const PG_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PgValue {
    pub value: usize,
    /// True when no member of any family embeds, so the maximum is over an
    /// empty set and `value` is reported as 0.
    pub empty: bool,
}

fn member_size(f: Family, t: usize) -> usize {
    match f {
        Family::Star => t + 1,
        _ => 2 * t,
    }
}

/// The largest `t` such that the `t`-th member of one of `families` is an
/// induced subgraph of `g`.
pub fn pg_parameter(g: &Graph, families: &[Family]) -> Result<PgValue> {
    Error::check_cap("parametric containment host", PG_CAP, g.n())?;
    let mut best = 0;
    for &f in families {
        let mut t = best + 1;
        while member_size(f, t) <= g.n() {
            if embed(g, &generate(FamilySpec::new(f, t))?)?.is_none() {
                break;
            }
            best = t;
            t += 1;
        }
    }
    Ok(PgValue {
        value: best,
        empty: best == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoupledKind {
    Matching,
    AntiMatching,
    HalfGraph,
}

/// Ordered sets `x` and `y` whose biadjacency matrix is exactly the pattern
/// of `kind`: `x[i] ~ y[j]` iff `i == j`, `i != j`, or `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoupledPair {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub kind: CoupledKind,
}

fn pattern_holds(kind: CoupledKind, i: usize, j: usize) -> bool {
    match kind {
        CoupledKind::Matching => i == j,
        CoupledKind::AntiMatching => i != j,
        CoupledKind::HalfGraph => i <= j,
    }
}

fn verify_pair(adj: &[u64], x: &[usize], y: &[usize], kind: CoupledKind) -> bool {
    x.iter().enumerate().all(|(i, &u)| {
        y.iter()
            .enumerate()
            .all(|(j, &v)| (adj[u] >> v & 1 == 1) == pattern_holds(kind, i, j))
    })
}

/// Recognises the submatrix `x` × `y` as one of the coupled patterns and
/// returns the orderings that make it bit-exact. Matchings are preferred,
/// then anti-matchings, then half-graphs.
fn classify(adj: &[u64], x: &[usize], y: &[usize]) -> Option<CoupledPair> {
    let k = x.len();
    let ymask: u64 = y.iter().map(|&v| 1u64 << v).sum();
    let rows: Vec<u64> = x.iter().map(|&u| adj[u] & ymask).collect();
    let partner = |want_adjacent: bool| -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(k);
        let mut seen = 0u64;
        for &r in &rows {
            let r = if want_adjacent { r } else { ymask & !r };
            if r.count_ones() != 1 || seen & r != 0 {
                return None;
            }
            seen |= r;
            out.push(r.trailing_zeros() as usize);
        }
        Some(out)
    };
    if let Some(py) = partner(true) {
        return Some(CoupledPair { x: x.to_vec(), y: py, kind: CoupledKind::Matching });
    }
    if let Some(py) = partner(false) {
        return Some(CoupledPair { x: x.to_vec(), y: py, kind: CoupledKind::AntiMatching });
    }
    // Half-graph: rows form a chain with degrees k, k-1, ..., 1.
    let mut xo: Vec<usize> = (0..k).collect();
    xo.sort_by_key(|&i| std::cmp::Reverse(rows[i].count_ones()));
    if xo.iter().enumerate().any(|(pos, &i)| rows[i].count_ones() as usize != k - pos) {
        return None;
    }
    if xo.windows(2).any(|w| rows[w[1]] & !rows[w[0]] != 0) {
        return None;
    }
    let xs: Vec<usize> = xo.iter().map(|&i| x[i]).collect();
    let mut ys = y.to_vec();
    ys.sort_by_key(|&v| xs.iter().filter(|&&u| adj[u] >> v & 1 == 1).count());
    verify_pair(adj, &xs, &ys, CoupledKind::HalfGraph).then_some(CoupledPair {
        x: xs,
        y: ys,
        kind: CoupledKind::HalfGraph,
    })
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order until it
/// returns `Some`.
pub(crate) fn for_each_subset<T>(
    items: &[usize],
    k: usize,
    f: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    fn go<T>(
        items: &[usize],
        start: usize,
        k: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> Option<T>,
    ) -> Option<T> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if let Some(t) = go(items, i + 1, k, cur, f) {
                return Some(t);
            }
            cur.pop();
        }
        None
    }
    go(items, 0, k, &mut Vec::with_capacity(k), f)
}

/// Side limit for [`find_coupled_pair`].
pub const COUPLED_CAP: usize = 12;

/// Searches for `x' ⊆ x`, `y' ⊆ y` with `|x'| = |y'| = k` whose cross pattern
/// is a matching, anti-matching or half-graph.
pub fn find_coupled_pair(g: &Graph, x: &VertexSet, y: &VertexSet, k: usize) -> Result<Option<CoupledPair>> {
    check_universe(g, x)?;
    check_universe(g, y)?;
    Error::check_cap("coupled pair side", COUPLED_CAP, x.len().max(y.len()))?;
    if x.intersects(y) {
        return Err(Error::domain("coupled pairs need disjoint sides"));
    }
    if k == 0 {
        return Err(Error::domain("coupled pairs need order at least 1"));
    }
    let adj = g.mask_rows("coupled pair")?;
    let xs = x.to_vec();
    let ys = y.to_vec();
    Ok(for_each_subset(&xs, k, &mut |xa| {
        for_each_subset(&ys, k, &mut |ya| classify(&adj, xa, ya))
    }))
}

/// An induced copy of the `order`-th member of `family`: `embedding[i]` is
/// the host vertex playing generator vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCertificate {
    pub family: Family,
    pub order: usize,
    pub embedding: Vec<usize>,
    /// How the certificate was found: `clique-neighbourhood` or `direct-search`.
    pub route: &'static str,
}

impl PatternCertificate {
    /// Builds a certificate after checking that the embedding induces
    /// exactly the claimed graph.
    pub fn new(g: &Graph, family: Family, order: usize, embedding: Vec<usize>, route: &'static str) -> Result<Self> {
        let h = generate(FamilySpec::new(family, order))?;
        if embedding.len() != h.n() {
            return Err(Error::domain("embedding has the wrong number of vertices"));
        }
        let mut seen = VertexSet::new(g.n());
        for &v in &embedding {
            if v >= g.n() || !seen.insert(v) {
                return Err(Error::domain("embedding is not injective into the graph"));
            }
        }
        for a in 0..h.n() {
            for b in a + 1..h.n() {
                if h.has_edge(a, b) != g.has_edge(embedding[a], embedding[b]) {
                    return Err(Error::domain(format!(
                        "embedding does not induce {family} of order {order}"
                    )));
                }
            }
        }
        Ok(PatternCertificate { family, order, embedding, route })
    }
}

/// Largest host accepted by [`pattern_certificate`].
pub const CERTIFICATE_CAP: usize = 16;

/// Looks for an order-`t` member of [`FAMILY_A`]. Maximal cliques are tried
/// in decreasing number of twin classes: for each, a coupled pair between
/// the clique and its neighbourhood whose outer side is a clique or an
/// independent set yields the pattern directly. If that finds nothing, every
/// member is searched for as an induced subgraph.
pub fn pattern_certificate(g: &Graph, t: usize) -> Result<Option<PatternCertificate>> {
    Error::check_cap("pattern certificate host", CERTIFICATE_CAP, g.n())?;
    if t == 0 {
        return Err(Error::domain("pattern order must be at least 1"));
    }
    let adj = g.mask_rows("pattern certificate")?;
    let q = twin_partition(g);
    let mut cliques = maximal_cliques(g)?.cliques;
    cliques.sort_by_key(|k| std::cmp::Reverse(q.project_set(k).len()));
    for k in &cliques {
        let inner = k.to_vec();
        let outer = g.set_neighbors(k).to_vec();
        let found = for_each_subset(&outer, t, &mut |z| {
            let zmask: u64 = z.iter().map(|&v| 1u64 << v).sum();
            let clique = z.iter().all(|&v| adj[v] & zmask == zmask & !(1 << v));
            let independent = z.iter().all(|&v| adj[v] & zmask == 0);
            if !clique && !independent {
                return None;
            }
            for_each_subset(&inner, t, &mut |y| {
                let pair = classify(&adj, y, z)?;
                let family = match (pair.kind, clique) {
                    (CoupledKind::Matching, false) => Family::MKI,
                    (CoupledKind::Matching, true) => Family::MKK,
                    (CoupledKind::AntiMatching, false) => Family::AKI,
                    (CoupledKind::AntiMatching, true) => Family::AKK,
                    (CoupledKind::HalfGraph, false) => Family::HKI,
                    (CoupledKind::HalfGraph, true) => Family::HKK,
                };
                let mut emb = pair.x.clone();
                emb.extend(&pair.y);
                Some((family, emb))
            })
        });
        if let Some((family, emb)) = found {
            return PatternCertificate::new(g, family, t, emb, "clique-neighbourhood").map(Some);
        }
    }
    for f in FAMILY_A {
        let h = generate(FamilySpec::new(f, t))?;
        if let Some(phi) = embed(g, &h)? {
            return PatternCertificate::new(g, f, t, phi, "direct-search").map(Some);
        }
    }
    Ok(None)
}

/// Limits for [`induced_minor_contains`].
pub const MINOR_PATTERN_CAP: usize = 9;
pub const MINOR_HOST_CAP: usize = 12;

/// Whether `h` is an induced minor of `g`: there are disjoint connected
/// branch sets in `g`, one per vertex of `h`, adjacent exactly when the
/// corresponding vertices of `h` are.
pub fn induced_minor_contains(g: &Graph, h: &Graph) -> Result<bool> {
    Error::check_cap("induced minor pattern", MINOR_PATTERN_CAP, h.n())?;
    Error::check_cap("induced minor host", MINOR_HOST_CAP, g.n())?;
    let (n, m) = (g.n(), h.n());
    if m == 0 {
        return Ok(true);
    }
    if m > n {
        return Ok(false);
    }
    let ga = g.mask_rows("induced minor")?;
    let ha = h.mask_rows("induced minor")?;
    let connected = |s: u64| {
        let start = s & s.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in mask_iter(frontier) {
                next |= ga[v] & s;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == s
    };
    let branch_sets: Vec<u64> = (1..1u64 << n).filter(|&s| connected(s)).collect();
    let nbhd = |s: u64| mask_iter(s).fold(0u64, |acc, v| acc | ga[v]) & !s;

    // Pattern vertices in an order where each one after the first of its
    // component touches an earlier one.
    let mut order = Vec::with_capacity(m);
    let mut placed = 0u64;
    while order.len() < m {
        let v = (0..m)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((ha[v] & placed).count_ones(), ha[v].count_ones(), std::cmp::Reverse(v)))
            .expect("vertices remain");
        order.push(v);
        placed |= 1 << v;
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        order: &[usize],
        ha: &[u64],
        sets: &[u64],
        nbhd: &dyn Fn(u64) -> u64,
        used: u64,
        assigned: &mut Vec<(u64, u64)>,
        total: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        if (total - used.count_ones() as usize) < order.len() - depth {
            return false;
        }
        let v = order[depth];
        for &s in sets {
            if s & used != 0 {
                continue;
            }
            let ns = nbhd(s);
            let ok = order[..depth].iter().zip(assigned.iter()).all(|(&u, &(bu, _))| {
                (ha[v] >> u & 1 == 1) == (ns & bu != 0)
            });
            if !ok {
                continue;
            }
            assigned.push((s, ns));
            if go(depth + 1, order, ha, sets, nbhd, used | s, assigned, total) {
                return true;
            }
            assigned.pop();
        }
        false
    }
    let mut assigned = Vec::with_capacity(m);
    Ok(go(0, &order, &ha, &branch_sets, &nbhd, 0, &mut assigned, n))
}
