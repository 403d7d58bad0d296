//! Rank-decompositions, exact rankwidth, local complementation and the
//! bridges between rankwidth and alpha-treewidth.

use serde::Serialize;

use crate::cliques::twin_partition;
use crate::decomposition::TreeDecomposition;
use crate::generators::{generate, FamilySpec, QInner};
use crate::graph::{find_isomorphism_capped, mask_iter, GraphBuilder, MASK_CAP};
use crate::patterns::{cutrank_mask, embed};
use crate::{Error, Graph, Result, VertexSet};

/// A cubic tree whose leaves are the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankDecomposition {
    pub tree_edges: Vec<(usize, usize)>,
    /// `leaf_map[v]` is the leaf node of vertex `v`.
    pub leaf_map: Vec<usize>,
}

impl RankDecomposition {
    pub fn node_count(&self) -> usize {
        self.tree_edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.leaf_map.iter().copied())
            .max()
            .map_or(0, |m| m + 1)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let bad = |m: &str| Err(Error::domain(format!("invalid rank-decomposition: {m}")));
        if self.leaf_map.len() != n {
            return bad("leaf map does not cover every vertex");
        }
        let nodes = self.node_count();
        if n == 0 {
            return if self.tree_edges.is_empty() { Ok(()) } else { bad("edges without vertices") };
        }
        if self.tree_edges.len() + 1 != nodes {
            return bad("tree has the wrong number of edges");
        }
        let adj = self.adjacency();
        let mut seen = vec![false; nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.contains(&false) || self.tree_edges.iter().any(|&(a, b)| a == b) {
            return bad("not a tree");
        }
        let mut is_leaf_of = vec![false; nodes];
        for &t in &self.leaf_map {
            if is_leaf_of[t] {
                return bad("two vertices share a leaf");
            }
            is_leaf_of[t] = true;
        }
        for t in 0..nodes {
            let expected = match (is_leaf_of[t], n) {
                (true, 1) => 0,
                (true, _) => 1,
                (false, _) => 3,
            };
            if adj[t].len() != expected {
                return bad("tree is not cubic with the vertices at its leaves");
            }
        }
        Ok(())
    }

    /// For every tree edge, the vertex set on the side of its second end.
    fn edge_sides(&self) -> Vec<u64> {
        let adj = self.adjacency();
        let mut vertex_at = vec![usize::MAX; adj.len()];
        for (v, &t) in self.leaf_map.iter().enumerate() {
            vertex_at[t] = v;
        }
        self.tree_edges
            .iter()
            .map(|&(a, b)| side_mask(&adj, &vertex_at, a, b))
            .collect()
    }
}

fn side_mask(adj: &[Vec<usize>], vertex_at: &[usize], from: usize, start: usize) -> u64 {
    let mut mask = 0u64;
    let mut stack = vec![(from, start)];
    while let Some((p, t)) = stack.pop() {
        if vertex_at[t] != usize::MAX {
            mask |= 1 << vertex_at[t];
        }
        for &u in &adj[t] {
            if u != p {
                stack.push((t, u));
            }
        }
    }
    mask
}

/// Largest cutrank over the tree edges.
pub fn rank_dec_width(g: &Graph, rd: &RankDecomposition) -> Result<usize> {
    rd.validate(g)?;
    let adj = g.mask_rows("rank-decomposition width")?;
    let all = crate::measure::full_mask(g.n());
    Ok(rd
        .edge_sides()
        .into_iter()
        .map(|x| cutrank_mask(&adj, x, all & !x))
        .max()
        .unwrap_or(0))
}

/// A caterpillar with the vertices attached along the spine in `order`.
pub fn caterpillar(order: &[usize]) -> RankDecomposition {
    let n = order.len();
    let mut leaf_map = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        leaf_map[v] = i;
    }
    let mut edges = Vec::new();
    match n {
        0 | 1 => {}
        2 => edges.push((0, 1)),
        _ => {
            let spine = |j: usize| n + j;
            edges.push((0, spine(0)));
            edges.push((1, spine(0)));
            for j in 1..n - 2 {
                edges.push((spine(j - 1), spine(j)));
                edges.push((j + 1, spine(j)));
            }
            edges.push((n - 1, spine(n - 3)));
        }
    }
    RankDecomposition { tree_edges: edges, leaf_map }
}

pub const RANKWIDTH_CAP: usize = 10;

/// The exact rankwidth with an optimal decomposition.
///
/// Every cubic tree on the leaves is produced exactly once by inserting the
/// vertices one at a time onto an edge. A partial tree restricted to the
/// inserted vertices can only gain cutrank later, which gives the pruning.
pub fn exact_rankwidth(g: &Graph) -> Result<(usize, RankDecomposition)> {
    let n = g.n();
    Error::check_cap("exact rankwidth", RANKWIDTH_CAP, n)?;
    if n <= 3 {
        let rd = caterpillar(&(0..n).collect::<Vec<_>>());
        return Ok((rank_dec_width(g, &rd)?, rd));
    }
    let adj = g.mask_rows("exact rankwidth")?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let floor = usize::from(g.edge_count() > 0);
    let mut search = InsertionSearch {
        adj: &adj,
        order: &order,
        edges: vec![(0, n), (1, n), (2, n)],
        best: usize::MAX,
        best_edges: Vec::new(),
        floor,
    };
    search.run(3);
    // Leaf `i` carries `order[i]`; internal nodes stay at `n..`.
    let mut leaf_map = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        leaf_map[v] = i;
    }
    let rd = RankDecomposition {
        tree_edges: search.best_edges,
        leaf_map,
    };
    debug_assert_eq!(rank_dec_width(g, &rd)?, search.best);
    Ok((search.best, rd))
}

struct InsertionSearch<'a> {
    adj: &'a [u64],
    order: &'a [usize],
    /// Leaves are `0..n` (leaf `i` holds `order[i]`), internal nodes `n..`.
    edges: Vec<(usize, usize)>,
    best: usize,
    best_edges: Vec<(usize, usize)>,
    floor: usize,
}

impl InsertionSearch<'_> {
    fn partial_width(&self, placed: usize) -> usize {
        let n = self.order.len();
        let nodes = n + placed - 2;
        let mut tree = vec![Vec::new(); nodes];
        for &(a, b) in &self.edges {
            tree[a].push(b);
            tree[b].push(a);
        }
        let vertex_at: Vec<usize> = (0..nodes)
            .map(|t| if t < placed { self.order[t] } else { usize::MAX })
            .collect();
        let inserted = self.order[..placed].iter().fold(0u64, |m, &v| m | 1 << v);
        self.edges
            .iter()
            .map(|&(a, b)| {
                let x = side_mask(&tree, &vertex_at, a, b);
                cutrank_mask(self.adj, x, inserted & !x)
            })
            .max()
            .unwrap_or(0)
    }

    fn run(&mut self, placed: usize) {
        if self.best <= self.floor {
            return;
        }
        let n = self.order.len();
        let width = self.partial_width(placed);
        if width >= self.best {
            return;
        }
        if placed == n {
            self.best = width;
            self.best_edges = self.edges.clone();
            return;
        }
        let internal = n + placed - 2;
        for e in 0..self.edges.len() {
            let (a, b) = self.edges[e];
            self.edges[e] = (a, internal);
            self.edges.push((internal, b));
            self.edges.push((placed, internal));
            self.run(placed + 1);
            self.edges.truncate(self.edges.len() - 2);
            self.edges[e] = (a, b);
        }
    }
}

/// `G * v`: complements the subgraph induced by `N(v)`.
pub fn local_complement(g: &Graph, v: usize) -> Result<Graph> {
    if v >= g.n() {
        return Err(Error::domain(format!("vertex {v} does not exist")));
    }
    let mut b = GraphBuilder::from_graph(g);
    let nb = g.neighbors(v).to_vec();
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            b.toggle_edge(x, y);
        }
    }
    Ok(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", content = "vertex", rename_all = "kebab-case")]
pub enum VmStep {
    LocalComplement(usize),
    Delete(usize),
}

/// Steps refer to the original vertex ids throughout.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexMinorProgram {
    pub steps: Vec<VmStep>,
}

#[derive(Clone, Debug)]
pub struct VertexMinor {
    pub graph: Graph,
    /// `original[i]` is the input vertex that became vertex `i`.
    pub original: Vec<usize>,
}

pub fn apply_program(g: &Graph, p: &VertexMinorProgram) -> Result<VertexMinor> {
    let mut b = GraphBuilder::from_graph(g);
    let mut alive = g.vertices();
    for (i, step) in p.steps.iter().enumerate() {
        let v = match *step {
            VmStep::LocalComplement(v) | VmStep::Delete(v) => v,
        };
        if v >= g.n() || !alive.contains(v) {
            return Err(Error::domain(format!("step {i}: vertex {v} does not exist")));
        }
        match *step {
            VmStep::LocalComplement(v) => {
                let nb = b.neighbors(v).intersection(&alive).to_vec();
                for (j, &x) in nb.iter().enumerate() {
                    for &y in &nb[j + 1..] {
                        b.toggle_edge(x, y);
                    }
                }
            }
            VmStep::Delete(v) => {
                alive.remove(v);
            }
        }
    }
    let induced = b.build().induce(&alive);
    Ok(VertexMinor {
        graph: induced.graph,
        original: induced.original,
    })
}

/// Tree-decomposition on the tree of `rd`: leaves hold their vertex; an
/// internal node holds the vertices with a neighbour in another of its
/// three branches.
pub fn rankdec_to_treedec(g: &Graph, rd: &RankDecomposition) -> Result<TreeDecomposition> {
    rd.validate(g)?;
    let n = g.n();
    let adj = g.mask_rows("rank-decomposition conversion")?;
    let nodes = rd.node_count();
    let tree = rd.adjacency();
    let mut vertex_at = vec![usize::MAX; nodes];
    for (v, &t) in rd.leaf_map.iter().enumerate() {
        vertex_at[t] = v;
    }
    let mut bags = Vec::with_capacity(nodes);
    for t in 0..nodes {
        if vertex_at[t] != usize::MAX {
            bags.push(1u64 << vertex_at[t]);
            continue;
        }
        let parts: Vec<u64> = tree[t].iter().map(|&u| side_mask(&tree, &vertex_at, t, u)).collect();
        let mut bag = 0u64;
        for (i, &p) in parts.iter().enumerate() {
            let others = parts.iter().enumerate().filter(|&(j, _)| j != i).fold(0, |m, (_, &q)| m | q);
            bag |= mask_iter(p).filter(|&v| adj[v] & others != 0).fold(0, |m, v| m | 1 << v);
        }
        bags.push(bag);
    }
    // Two vertices leave no internal node, so one leaf takes both.
    if n == 2 && g.has_edge(0, 1) {
        bags[rd.leaf_map[0]] = 0b11;
    }
    Ok(TreeDecomposition {
        tree_edges: rd.tree_edges.clone(),
        bags: bags.into_iter().map(|b| VertexSet::from_mask(n, b)).collect(),
    })
}

/// Expands each leaf of a decomposition of the quotient into a subtree
/// carrying the whole twin class.
pub fn lift_rankdec(g: &Graph, rd: &RankDecomposition) -> Result<RankDecomposition> {
    let q = twin_partition(g);
    rd.validate(&q.quotient)?;
    let n = g.n();
    if q.classes.len() <= 1 {
        return Ok(caterpillar(&(0..n).collect::<Vec<_>>()));
    }
    let mut edges = rd.tree_edges.clone();
    let mut next = rd.node_count();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut leaf_map = vec![0; n];
    for (c, class) in q.classes.iter().enumerate() {
        let members = class.to_vec();
        let t = rd.leaf_map[c];
        if members.len() == 1 {
            leaf_map[members[0]] = t;
            continue;
        }
        let mut current = t;
        let (chain, last_two) = members.split_at(members.len() - 2);
        for &v in chain {
            let leaf = fresh();
            let spine = fresh();
            leaf_map[v] = leaf;
            edges.push((current, leaf));
            edges.push((current, spine));
            current = spine;
        }
        for &v in last_two {
            let leaf = fresh();
            leaf_map[v] = leaf;
            edges.push((current, leaf));
        }
    }
    Ok(RankDecomposition { tree_edges: edges, leaf_map })
}

/// Families whose chained construction reduces to a known one by a
/// vertex-minor program.
pub const QK_FAMILIES: [QInner; 4] = [QInner::MKK, QInner::HKK, QInner::MKI, QInner::AKK];

pub const QK_CAP: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct TargetCheck {
    pub description: String,
    /// False when the chained construction is undefined for that length.
    pub constructible: bool,
    pub isomorphic: bool,
    pub literal_equal: bool,
    /// Whether the target occurs as an induced subgraph of the result.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_subgraph: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_edges: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QkReport {
    pub family: QInner,
    pub m: usize,
    pub program: VertexMinorProgram,
    pub result_vertices: usize,
    pub stated: TargetCheck,
    /// A corrected target, when the stated one fails and a different one
    /// is known to hold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<TargetCheck>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result_edges: Option<Vec<(usize, usize)>>,
}

fn check_target(result: &Graph, inner: QInner, k: usize, m: usize, with_containment: bool) -> Result<TargetCheck> {
    let description = format!("Q_{k}({inner}_{m})");
    if k < 2 {
        return Ok(TargetCheck {
            description,
            constructible: false,
            isomorphic: false,
            literal_equal: false,
            induced_subgraph: None,
            target_edges: None,
        });
    }
    let target = generate(FamilySpec::q(inner, k, m))?;
    let isomorphic = find_isomorphism_capped(result, &target, MASK_CAP)?.is_some();
    let literal_equal = result.n() == target.n() && result.edges().eq(target.edges());
    let induced_subgraph = if with_containment && !isomorphic {
        Some(target.n() <= result.n() && embed(result, &target)?.is_some())
    } else {
        None
    };
    Ok(TargetCheck {
        description,
        constructible: true,
        isomorphic,
        literal_equal,
        induced_subgraph,
        target_edges: (!isomorphic).then(|| target.edges().collect()),
    })
}

/// Runs the reduction program for `Q_m(family_m)` and compares the result
/// with the target it is claimed to equal.
pub fn qk_reduction_check(family: QInner, m: usize) -> Result<QkReport> {
    if !QK_FAMILIES.contains(&family) {
        return Err(Error::domain(format!("no reduction program for {family}")));
    }
    if m < 3 {
        return Err(Error::domain("reduction checks need m >= 3"));
    }
    Error::check_cap("reduction check", QK_CAP, m)?;
    let g = generate(FamilySpec::q(family, m, m))?;
    let block = |i: usize| (i - 1) * m..i * m;
    let ys = m * m;
    let mut steps = Vec::new();
    let (stated_inner, stated_k, alternative) = match family {
        QInner::MKK | QInner::HKK => {
            steps.extend((0..m).map(|i| VmStep::LocalComplement(ys + i)));
            let inner = if family == QInner::MKK { QInner::MII } else { QInner::HII };
            (inner, m, None)
        }
        QInner::AKK => {
            let zs = ys + m;
            steps.extend((0..m - 1).map(|i| VmStep::LocalComplement(zs + i)));
            steps.extend((0..m - 1).map(|i| VmStep::Delete(zs + i)));
            (QInner::MII, m, None)
        }
        QInner::MKI => {
            let apexes = m.div_ceil(2);
            steps.extend((0..apexes).map(|i| VmStep::LocalComplement(ys + i)));
            // Suppress the degree-2 vertices of the blocks without an apex,
            // then drop what is left hanging.
            let mut cur = apply_program(&g, &VertexMinorProgram { steps: steps.clone() })?;
            for i in (2..=m).step_by(2) {
                for x in block(i) {
                    let at = cur.original.iter().position(|&o| o == x).expect("not yet deleted");
                    if cur.graph.degree(at) == 2 {
                        steps.push(VmStep::LocalComplement(x));
                        steps.push(VmStep::Delete(x));
                        cur = apply_program(&g, &VertexMinorProgram { steps: steps.clone() })?;
                    }
                }
            }
            for v in 0..cur.graph.n() {
                if cur.graph.degree(v) == 1 {
                    steps.push(VmStep::Delete(cur.original[v]));
                }
            }
            (QInner::MII, (m / 2).saturating_sub(1), Some(apexes))
        }
        _ => unreachable!("checked above"),
    };
    let program = VertexMinorProgram { steps };
    let result = apply_program(&g, &program)?.graph;
    let stated = check_target(&result, stated_inner, stated_k, m, alternative.is_some())?;
    let alternative = match alternative {
        Some(k) if !stated.isomorphic => Some(check_target(&result, QInner::MII, k, m, false)?),
        _ => None,
    };
    let passed = stated.isomorphic;
    Ok(QkReport {
        family,
        m,
        program,
        result_vertices: result.n(),
        stated,
        alternative,
        passed,
        result_edges: (!passed).then(|| result.edges().collect()),
    })
}
