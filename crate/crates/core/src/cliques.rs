//! Maximal cliques, true-twin classes and the clique-quotient graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::{Error, Result};

/// Default guard on the number of maximal cliques enumerated.
pub const CLIQUE_CAP: usize = 1_000_000;

/// The maximal cliques of a graph with vertex incidences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueHypergraph {
    pub cliques: Vec<VertexSet>,
    /// `incidence[v]` lists the indices of the cliques containing `v`.
    pub incidence: Vec<Vec<usize>>,
}

impl CliqueHypergraph {
    fn new(n: usize, cliques: Vec<VertexSet>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, k) in cliques.iter().enumerate() {
            for v in k {
                incidence[v].push(i);
            }
        }
        CliqueHypergraph { cliques, incidence }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Maximum number of cliques through a single vertex.
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn maximal_cliques(g: &Graph) -> Result<CliqueHypergraph> {
    maximal_cliques_capped(g, CLIQUE_CAP)
}

/// Bron–Kerbosch with pivoting. The pivot maximises `|P ∩ N(u)|` over
/// `P ∪ X`, ties broken by smallest id; output is sorted by member lists.
pub fn maximal_cliques_capped(g: &Graph, cap: usize) -> Result<CliqueHypergraph> {
    let n = g.n();
    let mut out = Vec::new();
    if n > 0 {
        expand(
            g,
            VertexSet::new(n),
            g.vertices(),
            VertexSet::new(n),
            cap,
            &mut out,
        )?;
    }
    out.sort();
    Ok(CliqueHypergraph::new(n, out))
}

fn expand(
    g: &Graph,
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    cap: usize,
    out: &mut Vec<VertexSet>,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() {
            if out.len() == cap {
                return Err(Error::Capacity {
                    what: "maximal cliques",
                    limit: cap,
                    actual: cap + 1,
                });
            }
            out.push(r);
        }
        return Ok(());
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| (p.intersection_len(g.neighbors(u)), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let branch = p.difference(g.neighbors(pivot));
    for v in &branch {
        let nv = g.neighbors(v);
        let mut r2 = r.clone();
        r2.insert(v);
        expand(g, r2, p.intersection(nv), x.intersection(nv), cap, out)?;
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// The true-twin partition of a graph and its quotient `G̃`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// Twin classes ordered by smallest member.
    pub classes: Vec<VertexSet>,
    pub quotient: Graph,
    /// `project[v]` is the class of `v`.
    pub project: Vec<usize>,
}

impl QuotientMap {
    pub fn expand(&self, class: usize) -> &VertexSet {
        &self.classes[class]
    }

    /// Smallest member of a class.
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class].first().expect("classes are nonempty")
    }

    pub fn representatives(&self) -> VertexSet {
        let n = self.project.len();
        VertexSet::from_iter(n, (0..self.classes.len()).map(|c| self.representative(c)))
    }

    /// `X̃`: the classes meeting `X`.
    pub fn project_set(&self, x: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.classes.len(), x.iter().map(|v| self.project[v]))
    }

    /// `⋃X̃`: all members of the given classes.
    pub fn expand_set(&self, classes: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.project.len());
        for c in classes {
            out.union_with(&self.classes[c]);
        }
        out
    }

    /// Keeps one representative (the smallest) per class of `X`.
    pub fn lift_representatives(&self, classes: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.project.len(), classes.iter().map(|c| self.representative(c)))
    }
}

/// Groups vertices with equal closed neighbourhoods.
pub fn twin_partition(g: &Graph) -> QuotientMap {
    let n = g.n();
    let mut by_nbhd: std::collections::HashMap<VertexSet, usize> = Default::default();
    let mut project = vec![0usize; n];
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        let c = *by_nbhd.entry(g.closed_neighbors(v)).or_insert_with(|| {
            classes.push(VertexSet::new(n));
            classes.len() - 1
        });
        classes[c].insert(v);
        project[v] = c;
    }
    let m = classes.len();
    let mut b = GraphBuilder::new(m);
    for (u, v) in g.edges() {
        if project[u] != project[v] {
            b.add_edge(project[u], project[v]);
        }
    }
    QuotientMap {
        classes,
        quotient: b.build(),
        project,
    }
}

/// One vertex per maximal clique, adjacent when the cliques intersect.
pub fn clique_linegraph(k: &CliqueHypergraph) -> Graph {
    let m = k.len();
    let mut b = GraphBuilder::new(m);
    for (i, a) in k.cliques.iter().enumerate() {
        for (j, c) in k.cliques.iter().enumerate().skip(i + 1) {
            if a.intersects(c) {
                b.add_edge(i, j);
            }
        }
    }
    b.build()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseResult {
    pub clause: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub clauses: Vec<ClauseResult>,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

/// Largest graph accepted by [`verify_quotient_preservation`].
pub const PRESERVATION_CAP: usize = 14;

pub fn verify_quotient_preservation(g: &Graph) -> Result<QuotientReport> {
    verify_quotient_preservation_seeded(g, 0)
}

/// Checks the clique bijection, the linegraph isomorphism, the hypergraph
/// and graph isomorphisms on representative sets, and the three edge
/// transfer rules between `G` and `G̃` on seeded random set pairs.
pub fn verify_quotient_preservation_seeded(g: &Graph, seed: u64) -> Result<QuotientReport> {
    Error::check_cap("quotient preservation", PRESERVATION_CAP, g.n())?;
    let n = g.n();
    let q = twin_partition(g);
    let gt = &q.quotient;
    let kg = maximal_cliques(g)?;
    let kq = maximal_cliques(gt)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses = Vec::new();
    let mut push = |clause, fail: Option<String>| {
        clauses.push(ClauseResult {
            clause,
            passed: fail.is_none(),
            counterexample: fail,
        })
    };

    // kappa: K -> K~
    let images: Vec<VertexSet> = kg.cliques.iter().map(|k| q.project_set(k)).collect();
    let bijection = (|| {
        let mut sorted = images.clone();
        sorted.sort();
        for (k, img) in kg.cliques.iter().zip(&images) {
            if kq.cliques.binary_search(img).is_err() {
                return Some(format!("image of clique {k:?} is {img:?}, not a maximal clique of the quotient"));
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Some("two maximal cliques share an image".into());
        }
        if sorted.len() != kq.len() {
            return Some(format!("{} cliques map onto {} quotient cliques", kg.len(), kq.len()));
        }
        None
    })();
    push("kappa-bijection", bijection);

    let linegraph = (|| {
        for i in 0..kg.len() {
            for j in i + 1..kg.len() {
                let a = kg.cliques[i].intersects(&kg.cliques[j]);
                let b = images[i].intersects(&images[j]);
                if a != b {
                    return Some(format!(
                        "cliques {:?} and {:?}: meet in G = {a}, images meet = {b}",
                        kg.cliques[i], kg.cliques[j]
                    ));
                }
            }
        }
        None
    })();
    push("linegraph-isomorphism", linegraph);

    // A few representative sets: the canonical one and random choices.
    let mut reps: Vec<Vec<usize>> = vec![(0..q.classes.len()).map(|c| q.representative(c)).collect()];
    for _ in 0..8 {
        reps.push(
            q.classes
                .iter()
                .map(|c| *c.to_vec().choose(&mut rng).expect("classes are nonempty"))
                .collect(),
        );
    }
    let hyper = (|| {
        for r in &reps {
            let rset = VertexSet::from_iter(n, r.iter().copied());
            let mut traces: Vec<Vec<usize>> = kg
                .cliques
                .iter()
                .map(|k| {
                    let mut t: Vec<usize> = k.intersection(&rset).iter().map(|v| q.project[v]).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            traces.sort();
            traces.dedup();
            let mut target: Vec<Vec<usize>> = kq.cliques.iter().map(VertexSet::to_vec).collect();
            target.sort();
            if traces != target {
                return Some(format!("representatives {r:?}: traces {traces:?} differ from {target:?}"));
            }
        }
        None
    })();
    push("representative-hypergraph", hyper);

    let induced = (|| {
        for r in &reps {
            for (c1, &u) in r.iter().enumerate() {
                for (c2, &v) in r.iter().enumerate().skip(c1 + 1) {
                    if g.has_edge(u, v) != gt.has_edge(c1, c2) {
                        return Some(format!("representatives {u},{v} disagree with classes {c1},{c2}"));
                    }
                }
            }
        }
        None
    })();
    push("representative-isomorphism", induced);

    let mut edge_rules: [Option<String>; 3] = [None, None, None];
    let random_set = |rng: &mut ChaCha8Rng| {
        let p = rng.gen_range(0.1..0.7);
        VertexSet::from_iter(n, (0..n).filter(|_| rng.gen_bool(p)))
    };
    for _ in 0..200 {
        let x = random_set(&mut rng);
        let y = random_set(&mut rng);
        let xt = q.project_set(&x);
        let yt = q.project_set(&y);
        let edge_between = |h: &Graph, a: &VertexSet, b: &VertexSet| {
            a.iter().any(|u| h.neighbors(u).intersects(b))
        };
        let quotient_edge = edge_between(gt, &xt, &yt);
        // Edges inside a single twin class have no image in the quotient,
        // so the union rule counts only edges between distinct classes.
        let (ux, uy) = (q.expand_set(&xt), q.expand_set(&yt));
        let union_edge = ux
            .iter()
            .any(|u| g.neighbors(u).intersection(&uy).iter().any(|v| q.project[v] != q.project[u]));
        let direct_edge = edge_between(g, &x, &y);
        let desc = || format!("X={x:?}, Y={y:?}");
        if quotient_edge != union_edge && edge_rules[0].is_none() {
            edge_rules[0] = Some(desc());
        }
        if quotient_edge && !direct_edge && edge_rules[1].is_none() {
            edge_rules[1] = Some(desc());
        }
        if direct_edge && !quotient_edge && !xt.intersects(&yt) && edge_rules[2].is_none() {
            edge_rules[2] = Some(desc());
        }
    }
    let [r1, r2, r3] = edge_rules;
    push("edge-transfer-union", r1);
    push("edge-transfer-down", r2);
    push("edge-transfer-up", r3);

    Ok(QuotientReport { clauses })
}
