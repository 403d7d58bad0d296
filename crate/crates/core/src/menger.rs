//! Separations, induced linkages and the induced Menger reduction to the
//! clique quotient.

use num_bigint::BigUint;
use serde::Serialize;

use crate::cliques::{twin_partition, QuotientMap};
use crate::graph::mask_iter;
use crate::measure::Measure;
use crate::{Error, Graph, Result, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if self.a.universe() != n || self.b.universe() != n {
            return Err(Error::domain("separation sides are over the wrong vertex universe"));
        }
        if self.a.union(&self.b) != g.vertices() {
            return Err(Error::domain("separation sides do not cover every vertex"));
        }
        let a_only = self.a.difference(&self.b);
        let b_only = self.b.difference(&self.a);
        if g.set_neighbors(&a_only).intersects(&b_only) {
            return Err(Error::domain("an edge joins the two sides of the separation"));
        }
        Ok(())
    }
}

/// `theta(G[A ∩ B])`.
pub fn theta_order(g: &Graph, sep: &Separation) -> Result<usize> {
    sep.validate(g)?;
    Measure::Theta.eval(g, &sep.separator())
}

pub fn project_separation(g: &Graph, sep: &Separation) -> Result<Separation> {
    sep.validate(g)?;
    let q = twin_partition(g);
    Ok(Separation::new(q.project_set(&sep.a), q.project_set(&sep.b)))
}

pub fn lift_separation(g: &Graph, sep: &Separation) -> Result<Separation> {
    let q = twin_partition(g);
    sep.validate(&q.quotient)?;
    Ok(Separation::new(q.expand_set(&sep.a), q.expand_set(&sep.b)))
}

/// Whether `path` lists distinct vertices inducing exactly a path.
pub fn is_induced_path(g: &Graph, path: &[usize]) -> bool {
    let n = g.n();
    if path.iter().any(|&v| v >= n) {
        return false;
    }
    let set = VertexSet::from_iter(n, path.iter().copied());
    if set.len() != path.len() {
        return false;
    }
    path.iter().enumerate().all(|(i, &u)| {
        path.iter()
            .enumerate()
            .skip(i + 1)
            .all(|(j, &v)| g.has_edge(u, v) == (j == i + 1))
    })
}

/// Maps an induced path on at least three vertices to the path of its classes.
pub fn project_path(g: &Graph, path: &[usize]) -> Result<Vec<usize>> {
    if path.len() < 3 {
        return Err(Error::domain("path projection needs at least three vertices"));
    }
    if !is_induced_path(g, path) {
        return Err(Error::domain("input is not an induced path"));
    }
    let q = twin_partition(g);
    Ok(path.iter().map(|&v| q.project[v]).collect())
}

/// Lifts a path of classes using the given representatives, one per class.
pub fn lift_path_with(g: &Graph, classes: &[usize], reps: &[usize]) -> Result<Vec<usize>> {
    let q = twin_partition(g);
    lift_in(&q, g, classes, reps)
}

fn lift_in(q: &QuotientMap, g: &Graph, classes: &[usize], reps: &[usize]) -> Result<Vec<usize>> {
    if !is_induced_path(&q.quotient, classes) {
        return Err(Error::domain("input is not an induced path of the quotient"));
    }
    if reps.len() != classes.len() {
        return Err(Error::domain("need exactly one representative per class"));
    }
    for (&c, &r) in classes.iter().zip(reps) {
        if r >= g.n() || q.project[r] != c {
            return Err(Error::domain(format!("vertex {r} does not represent class {c}")));
        }
    }
    Ok(reps.to_vec())
}

/// Lifts a path of classes, optionally pinning the two end representatives;
/// every other class uses its smallest member.
pub fn lift_path(g: &Graph, classes: &[usize], first: Option<usize>, last: Option<usize>) -> Result<Vec<usize>> {
    let q = twin_partition(g);
    let mut reps: Vec<usize> = classes
        .iter()
        .map(|&c| if c < q.classes.len() { q.representative(c) } else { usize::MAX })
        .collect();
    if let (Some(f), Some(r)) = (first, reps.first_mut()) {
        *r = f;
    }
    if let (Some(l), Some(r)) = (last, reps.last_mut()) {
        *r = l;
    }
    lift_in(&q, g, classes, &reps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Linkage {
    pub paths: Vec<Vec<usize>>,
}

impl Linkage {
    pub fn order(&self) -> usize {
        self.paths.len()
    }

    /// Checks that the paths run from `a` to `b`, are pairwise disjoint and
    /// that their union induces exactly their disjoint union.
    pub fn is_induced_ab(&self, g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
        let n = g.n();
        let mut used = VertexSet::new(n);
        for p in &self.paths {
            let (Some(&s), Some(&t)) = (p.first(), p.last()) else {
                return false;
            };
            if !is_induced_path(g, p) || !a.contains(s) || !b.contains(t) {
                return false;
            }
            let set = VertexSet::from_iter(n, p.iter().copied());
            if used.intersects(&set) {
                return false;
            }
            used.union_with(&set);
        }
        self.paths.iter().enumerate().all(|(i, p)| {
            self.paths[i + 1..]
                .iter()
                .all(|q| p.iter().all(|&u| q.iter().all(|&v| !g.has_edge(u, v))))
        })
    }
}

pub const LINKAGE_CAP: usize = 14;

/// Exhaustive search for an induced `A`-`B` linkage of order `k`.
///
/// Only paths meeting `A` at their start and `B` at their end are built;
/// any induced linkage can be shortened to one of that shape.
pub fn induced_linkage_search(g: &Graph, a: &VertexSet, b: &VertexSet, k: usize) -> Result<Option<Linkage>> {
    let n = g.n();
    Error::check_cap("induced linkage search", LINKAGE_CAP, n)?;
    if a.universe() != n || b.universe() != n {
        return Err(Error::domain("terminal sets are over the wrong vertex universe"));
    }
    let adj = g.mask_rows("induced linkage search")?;
    let mut search = LinkageSearch {
        adj: &adj,
        a: a.mask(),
        b: b.mask(),
        k,
        paths: Vec::new(),
    };
    let found = search.next_path(0, 0);
    Ok(found.then_some(Linkage { paths: search.paths }))
}

struct LinkageSearch<'a> {
    adj: &'a [u64],
    a: u64,
    b: u64,
    k: usize,
    paths: Vec<Vec<usize>>,
}

impl LinkageSearch<'_> {
    /// Starts a new path at an `A` vertex of id at least `min_start` outside
    /// the closed neighbourhood `blocked` of the paths found so far.
    fn next_path(&mut self, min_start: usize, blocked: u64) -> bool {
        if self.paths.len() == self.k {
            return true;
        }
        for s in mask_iter(self.a & !blocked) {
            if s < min_start {
                continue;
            }
            let mut path = vec![s];
            if self.extend(&mut path, 1 << s, blocked) {
                return true;
            }
        }
        false
    }

    fn extend(&mut self, path: &mut Vec<usize>, in_path: u64, blocked: u64) -> bool {
        let last = *path.last().expect("paths are nonempty");
        if self.b >> last & 1 == 1 {
            let closed = path.iter().fold(0, |m, &v| m | self.adj[v] | 1 << v);
            self.paths.push(path.clone());
            if self.next_path(path[0] + 1, blocked | closed) {
                return true;
            }
            self.paths.pop();
            return false;
        }
        let earlier = in_path & !(1 << last);
        let near_earlier = mask_iter(earlier).fold(0, |m, v| m | self.adj[v]);
        let cand = self.adj[last] & !blocked & !in_path & !near_earlier & !self.a;
        for u in mask_iter(cand) {
            path.push(u);
            if self.extend(path, in_path | 1 << u, blocked) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Either an induced linkage or a separator whose clique cover number
/// is compared against the Menger bound for clique-sparse graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MengerOutcome {
    Linkage {
        paths: Vec<Vec<usize>>,
        bound: String,
    },
    Separator {
        vertices: VertexSet,
        theta: usize,
        /// Size of the quotient separator that was lifted.
        quotient_size: usize,
        bound: String,
    },
}

/// `k * (t(s-1)+1)^(t^2 (s-1)^2 + 1)` with `s` the clique number of the
/// quotient and `t` the clique-incidence degree.
pub fn menger_bound(k: usize, s: usize, t: usize) -> BigUint {
    let s1 = s.saturating_sub(1) as u64;
    let t = t as u64;
    let base = BigUint::from(t * s1 + 1);
    let exp = (t * t * s1 * s1 + 1) as u32;
    BigUint::from(k) * base.pow(exp)
}

pub fn induced_menger(g: &Graph, a: &VertexSet, b: &VertexSet, k: usize) -> Result<MengerOutcome> {
    let n = g.n();
    if a.universe() != n || b.universe() != n {
        return Err(Error::domain("terminal sets are over the wrong vertex universe"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::domain("terminal sets must be nonempty"));
    }
    let q = twin_partition(g);
    let gq = &q.quotient;
    Error::check_cap("induced menger quotient", LINKAGE_CAP, gq.n())?;
    let (at, bt) = (q.project_set(a), q.project_set(b));
    let data = crate::params::CliqueData::new(g)?;
    let bound = menger_bound(k, data.cid(), data.cliques.max_degree()).to_string();

    if let Some(lq) = induced_linkage_search(gq, &at, &bt, k)? {
        let paths = lq
            .paths
            .iter()
            .map(|p| lift_linkage_path(&q, p, a, b))
            .collect();
        let linkage = Linkage { paths };
        assert!(linkage.is_induced_ab(g, a, b), "lifted linkage must stay induced");
        return Ok(MengerOutcome::Linkage {
            paths: linkage.paths,
            bound,
        });
    }

    let sq = min_vertex_separator(gq, &at, &bt);
    let sep_q = separation_around(gq, &at, &sq);
    let sep = Separation::new(q.expand_set(&sep_q.a), q.expand_set(&sep_q.b));
    let vertices = sep.separator();
    debug_assert!(separates(g, a, b, &vertices));
    Ok(MengerOutcome::Separator {
        theta: Measure::Theta.eval(g, &vertices)?,
        quotient_size: sq.len(),
        vertices,
        bound,
    })
}

fn lift_linkage_path(q: &QuotientMap, classes: &[usize], a: &VertexSet, b: &VertexSet) -> Vec<usize> {
    let first = classes[0];
    let last = *classes.last().expect("paths are nonempty");
    let in_a = q.classes[first].intersection(a);
    let in_b = q.classes[last].intersection(b);
    if classes.len() == 1 {
        return match in_a.intersection(&in_b).first() {
            Some(v) => vec![v],
            None => vec![in_a.first().expect("class meets A"), in_b.first().expect("class meets B")],
        };
    }
    let mut reps: Vec<usize> = classes.iter().map(|&c| q.representative(c)).collect();
    reps[0] = in_a.first().expect("class meets A");
    *reps.last_mut().expect("paths are nonempty") = in_b.first().expect("class meets B");
    reps
}

/// Whether every `A`-`B` path meets `s`.
pub fn separates(g: &Graph, a: &VertexSet, b: &VertexSet, s: &VertexSet) -> bool {
    let within = s.complement();
    let start = a.difference(s);
    let mut seen = start.clone();
    let mut stack: Vec<usize> = start.to_vec();
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v).intersection(&within).iter() {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    !seen.intersects(b)
}

/// Minimum vertex set meeting every `A`-`B` path, by unit-capacity max flow
/// on the split graph. Terminals may themselves be cut.
pub fn min_vertex_separator(g: &Graph, a: &VertexSet, b: &VertexSet) -> VertexSet {
    let n = g.n();
    // Node 2v is v_in, 2v+1 is v_out, then source and sink.
    let (src, dst) = (2 * n, 2 * n + 1);
    let size = 2 * n + 2;
    let big = n as i64 + 1;
    let mut cap = vec![vec![0i64; size]; size];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = 1;
        for u in g.neighbors(v).iter() {
            cap[2 * v + 1][2 * u] = big;
        }
    }
    for v in a.iter() {
        cap[src][2 * v] = big;
    }
    for v in b.iter() {
        cap[2 * v + 1][dst] = big;
    }
    let residual_reach = |cap: &Vec<Vec<i64>>| {
        let mut parent = vec![usize::MAX; size];
        parent[src] = src;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for y in 0..size {
                if parent[y] == usize::MAX && cap[x][y] > 0 {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        parent
    };
    loop {
        let parent = residual_reach(&cap);
        if parent[dst] == usize::MAX {
            let reach = |x: usize| parent[x] != usize::MAX;
            return VertexSet::from_iter(n, (0..n).filter(|&v| reach(2 * v) && !reach(2 * v + 1)));
        }
        // Every path crosses a unit vertex arc, so one unit per round.
        let mut y = dst;
        while y != src {
            let x = parent[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
    }
}

/// The separation whose first side is `s` plus everything reachable from
/// `a` avoiding `s`.
fn separation_around(g: &Graph, a: &VertexSet, s: &VertexSet) -> Separation {
    let within = s.complement();
    let mut side = VertexSet::new(g.n());
    for v in a.difference(s).iter() {
        if !side.contains(v) {
            side.union_with(&g.component_of(v, &within));
        }
    }
    let x = side.union(s);
    let y = side.complement();
    Separation::new(x, y)
}
