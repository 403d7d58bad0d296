//! Immutable simple undirected graphs over dense vertex ids `0..n`.

mod io;
mod iso;
mod set;

pub use io::{parse_graph, serialize_graph, Format};
pub use iso::{are_isomorphic, find_isomorphism, find_isomorphism_capped, ISO_CAP};
pub(crate) use set::mask_iter;
pub use set::VertexSet;

use crate::{Error, Result};

/// Largest graph the word-parallel exhaustive routines accept.
pub const MASK_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

/// An induced subgraph together with the original id of every new vertex.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    pub original: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        b.add_clique(0..n);
        b.build()
    }

    /// Builds a graph from an explicit edge list, rejecting self-loops,
    /// repeated edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![VertexSet::new(n); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge #{i} ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("edge #{i} is a self-loop at {u}")));
            }
            if adj[u].contains(v) {
                return Err(Error::domain(format!("edge #{i} ({u},{v}) is repeated")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { adj, labels: None })
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(v, row)| !row.contains(v)
            && row.iter().all(|u| adj[u].contains(v))));
        Graph { adj, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of `v`, falling back to its numeric id.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// `N(X)`: vertices outside `X` with a neighbour in `X`.
    pub fn set_neighbors(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in x {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(x);
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph { adj, labels: self.labels.clone() }
    }

    /// `G[S]` with ids compacted in increasing original order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Induced> {
        if s.universe() != self.n() {
            return Err(Error::domain(format!(
                "vertex set over 0..{} used with a graph on {} vertices",
                s.universe(),
                self.n()
            )));
        }
        Ok(self.induce(s))
    }

    pub(crate) fn induce(&self, s: &VertexSet) -> Induced {
        let original = s.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let m = original.len();
        let adj = original
            .iter()
            .map(|&v| VertexSet::from_iter(m, self.adj[v].iter().filter_map(|u| {
                (index[u] != usize::MAX).then_some(index[u])
            })))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| original.iter().map(|&v| l[v].clone()).collect());
        Induced {
            graph: Graph { adj, labels },
            original,
        }
    }

    /// `G - v` for every `v` in `s`.
    pub fn delete_vertices(&self, s: &VertexSet) -> Induced {
        self.induce(&s.complement())
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut b = GraphBuilder::new(n);
        for (u, v) in self.edges() {
            b.add_edge(perm[u], perm[v]);
        }
        b.build()
    }

    /// Adjacency rows as words; fails when the graph exceeds [`MASK_CAP`].
    pub fn mask_rows(&self, what: &'static str) -> Result<Vec<u64>> {
        Error::check_cap(what, MASK_CAP, self.n())?;
        Ok(self.adj.iter().map(VertexSet::mask).collect())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        self.component_of(0, &self.vertices()).len() == n
    }

    /// The vertices reachable from `v` inside `within`.
    pub fn component_of(&self, v: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(self.n(), v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in self.adj[u].intersection(within).iter() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by smallest member.
    pub fn components(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut left = within.clone();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.component_of(v, within);
            left.difference_with(&c);
            out.push(c);
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Mutable staging area used by constructors; [`GraphBuilder::build`]
/// freezes it into a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![VertexSet::new(n); n],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { adj: g.adj.clone() }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds `uv`; repeated additions are idempotent. Panics on a self-loop.
    pub fn add_edge(&mut self, u: usize, v: usize) -> &mut Self {
        assert_ne!(u, v, "self-loop at {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) -> &mut Self {
        assert_ne!(u, v, "self-loop at {u}");
        self.adj[u].toggle(v);
        self.adj[v].toggle(u);
        self
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn add_clique<I: IntoIterator<Item = usize>>(&mut self, vs: I) -> &mut Self {
        let vs: Vec<usize> = vs.into_iter().collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.add_edge(u, v);
            }
        }
        self
    }

    /// Joins every vertex of `a` to every vertex of `b`.
    pub fn add_biclique(&mut self, a: &[usize], b: &[usize]) -> &mut Self {
        for &u in a {
            for &v in b {
                self.add_edge(u, v);
            }
        }
        self
    }

    pub fn build(self) -> Graph {
        Graph::from_adjacency(self.adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn induced_on_two_vertices_of_k4_is_an_edge() {
        let k4 = Graph::complete(4);
        let sub = k4.induced_subgraph(&VertexSet::from_iter(4, [1, 3])).unwrap();
        assert_eq!(sub.graph, Graph::complete(2));
        assert_eq!(sub.original, vec![1, 3]);
    }

    #[test]
    fn induced_p4_minus_c_is_edge_plus_isolated() {
        let sub = p4().induce(&VertexSet::from_iter(4, [0, 1, 3]));
        assert_eq!(sub.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(sub.graph.degree(2), 0);
    }

    #[test]
    fn induced_c5_on_four_consecutive_is_p4() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let sub = c5.induce(&VertexSet::from_iter(5, [0, 1, 2, 3]));
        assert_eq!(sub.graph, p4());
    }

    #[test]
    fn induced_rejects_foreign_universe() {
        assert!(p4().induced_subgraph(&VertexSet::new(5)).is_err());
    }

    #[test]
    fn induced_on_everything_is_identity() {
        let g = p4();
        assert_eq!(g.induce(&g.vertices()).graph, g);
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::from_edges(5, &[(3, 4), (0, 2)]).unwrap();
        let comps = g.components(&g.vertices());
        let lists: Vec<_> = comps.iter().map(VertexSet::to_vec).collect();
        assert_eq!(lists, vec![vec![0, 2], vec![1], vec![3, 4]]);
    }
}
