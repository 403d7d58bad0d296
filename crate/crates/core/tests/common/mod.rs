//! Brute-force oracles shared by the integration tests. Each is written
//! from the definitions and shares no code with the library solvers.

#![allow(dead_code)]

use cliquesparse::measure::Measure;
use cliquesparse::Graph;

pub fn rows(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| (0..g.n()).filter(|&u| g.has_edge(u, v)).fold(0, |m, u| m | 1 << u))
        .collect()
}

fn members(s: u64) -> Vec<usize> {
    (0..64).filter(|&i| s >> i & 1 == 1).collect()
}

fn subsets(s: u64) -> impl Iterator<Item = u64> {
    let mut sub = s;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & s;
        }
        Some(out)
    })
}

pub fn is_clique(adj: &[u64], s: u64) -> bool {
    members(s).iter().all(|&v| s & !(1 << v) & !adj[v] == 0)
}

pub fn is_independent(adj: &[u64], s: u64) -> bool {
    members(s).iter().all(|&v| adj[v] & s == 0)
}

pub fn brute_alpha(adj: &[u64], s: u64) -> usize {
    subsets(s)
        .filter(|&t| is_independent(adj, t))
        .map(|t| t.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Fewest cliques partitioning `s`, by recursion on its lowest vertex.
pub fn brute_theta(adj: &[u64], s: u64) -> usize {
    fn go(adj: &[u64], s: u64, memo: &mut std::collections::HashMap<u64, usize>) -> usize {
        if s == 0 {
            return 0;
        }
        if let Some(&r) = memo.get(&s) {
            return r;
        }
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let best = subsets(rest)
            .filter(|&t| is_clique(adj, t | low))
            .map(|t| 1 + go(adj, rest & !t, memo))
            .min()
            .expect("a single vertex is a clique");
        memo.insert(s, best);
        best
    }
    go(adj, s, &mut Default::default())
}

pub fn brute_mu(mu: Measure, adj: &[u64], s: u64) -> usize {
    match mu {
        Measure::Cardinality => s.count_ones() as usize,
        Measure::Alpha => brute_alpha(adj, s),
        Measure::Theta => brute_theta(adj, s),
    }
}

/// Chordality by repeatedly deleting a simplicial vertex.
pub fn is_chordal_naive(adj: &[u64], n: usize) -> bool {
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    while alive != 0 {
        match members(alive).into_iter().find(|&v| is_clique(adj, adj[v] & alive)) {
            Some(v) => alive &= !(1 << v),
            None => return false,
        }
    }
    true
}

pub fn maximal_cliques_naive(adj: &[u64], n: usize) -> Vec<u64> {
    let all: u64 = (1 << n) - 1;
    let cliques: Vec<u64> = subsets(all).filter(|&s| s != 0 && is_clique(adj, s)).collect();
    cliques
        .iter()
        .copied()
        .filter(|&s| !cliques.iter().any(|&t| t != s && t & s == s))
        .collect()
}

/// mu-treewidth as the minimum over chordal supergraphs of the largest
/// measure of one of their maximal cliques. Feasible for `n <= 6`.
pub fn naive_tw_chordal(g: &Graph, mu: Measure) -> usize {
    let n = g.n();
    assert!(n <= 7);
    if n == 0 {
        return 0;
    }
    let adj = rows(g);
    let non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let mut best = usize::MAX;
    for pick in 0u64..1 << non_edges.len() {
        let mut h = adj.clone();
        for (i, &(u, v)) in non_edges.iter().enumerate() {
            if pick >> i & 1 == 1 {
                h[u] |= 1 << v;
                h[v] |= 1 << u;
            }
        }
        if !is_chordal_naive(&h, n) {
            continue;
        }
        let w = maximal_cliques_naive(&h, n)
            .into_iter()
            .map(|k| brute_mu(mu, &adj, k))
            .max()
            .unwrap_or(0);
        best = best.min(w);
    }
    best
}

/// All labelled trees on `m` nodes, via Prüfer sequences.
pub fn labelled_trees(m: usize) -> Vec<Vec<(usize, usize)>> {
    match m {
        0 | 1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut out = Vec::new();
    let total = m.pow(m as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(m - 2);
        let mut c = code;
        for _ in 0..m - 2 {
            seq.push(c % m);
            c /= m;
        }
        let mut degree = vec![1usize; m];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (0..m).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// The three axioms, checked from scratch.
pub fn td_axioms(adj: &[u64], n: usize, tree: &[(usize, usize)], bags: &[u64]) -> bool {
    let all: u64 = (1 << n) - 1;
    if bags.iter().fold(0, |m, &b| m | b) != all {
        return false;
    }
    for u in 0..n {
        for v in members(adj[u]) {
            if v > u && !bags.iter().any(|&b| b >> u & 1 == 1 && b >> v & 1 == 1) {
                return false;
            }
        }
    }
    for v in 0..n {
        let holders: Vec<usize> = (0..bags.len()).filter(|&t| bags[t] >> v & 1 == 1).collect();
        let mut reached = vec![holders[0]];
        let mut grew = true;
        while grew {
            grew = false;
            for &(a, b) in tree {
                for (x, y) in [(a, b), (b, a)] {
                    if reached.contains(&x) && !reached.contains(&y) && holders.contains(&y) {
                        reached.push(y);
                        grew = true;
                    }
                }
            }
        }
        if reached.len() != holders.len() {
            return false;
        }
    }
    true
}

/// Cardinality, alpha and theta treewidth by trying every labelled tree on
/// up to `n` nodes with every assignment of bags. Feasible for `n <= 4`.
pub fn naive_tw_trees(g: &Graph) -> [usize; 3] {
    let n = g.n();
    assert!(n <= 4);
    if n == 0 {
        return [0; 3];
    }
    let adj = rows(g);
    let mus = [Measure::Cardinality, Measure::Alpha, Measure::Theta];
    let choices = 1u64 << n;
    let mut best = [usize::MAX; 3];
    for m in 1..=n {
        for tree in labelled_trees(m) {
            for code in 0..choices.pow(m as u32) {
                let bags: Vec<u64> = (0..m).map(|i| code / choices.pow(i as u32) % choices).collect();
                if td_axioms(&adj, n, &tree, &bags) {
                    for (b, mu) in best.iter_mut().zip(mus) {
                        *b = (*b).min(bags.iter().map(|&x| brute_mu(mu, &adj, x)).max().unwrap());
                    }
                }
            }
        }
    }
    best
}

pub fn gf2_rank(mut m: Vec<Vec<bool>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c]) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn cutrank_naive(g: &Graph, x: u64) -> usize {
    let n = g.n();
    let xs: Vec<usize> = (0..n).filter(|&v| x >> v & 1 == 1).collect();
    let ys: Vec<usize> = (0..n).filter(|&v| x >> v & 1 == 0).collect();
    gf2_rank(xs.iter().map(|&a| ys.iter().map(|&b| g.has_edge(a, b)).collect()).collect())
}

/// Rankwidth by recursion over leaf sets of rooted subtrees, with a root
/// edge splitting the vertex set in two.
pub fn rankwidth_dp(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 10);
    if n <= 1 {
        return 0;
    }
    let all: u64 = (1 << n) - 1;
    let rho: Vec<usize> = (0..=all).map(|x| cutrank_naive(g, x)).collect();
    let mut f = vec![usize::MAX; 1 << n];
    let mut sets: Vec<u64> = (1..=all).collect();
    sets.sort_by_key(|s| s.count_ones());
    for s in sets {
        if s.count_ones() == 1 {
            f[s as usize] = 0;
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut best = usize::MAX;
        for t in subsets(rest) {
            let a = t | low;
            let b = s & !a;
            if b == 0 {
                continue;
            }
            let w = rho[a as usize].max(rho[b as usize]).max(f[a as usize]).max(f[b as usize]);
            best = best.min(w);
        }
        f[s as usize] = best;
    }
    let low = 1u64;
    subsets(all & !low)
        .map(|t| t | low)
        .filter(|&a| a != all)
        .map(|a| rho[a as usize].max(f[a as usize]).max(f[(all & !a) as usize]))
        .min()
        .unwrap()
}

/// Graphs on up to `max_n` vertices with each pair an edge independently.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (0..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)))
        .prop_map(|(n, bits)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|&(_, b)| b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
}

/// Like [`arb_graph`] but with some vertices replaced by twin cliques.
pub fn arb_twinned_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (arb_graph(max_n.div_ceil(2)), any::<u64>(), 0..=max_n).prop_map(move |(core, seed, n)| {
        let n = n.max(core.n());
        cliquesparse::corpus::blow_up(&mut cliquesparse::corpus::rng(seed), &core, n)
    })
}

/// Whether some `k` vertex sets `U` make `G[U]` a disjoint union of exactly
/// `k` paths, each with one end in `a` and the other in `b`. Shortening such
/// a path to its last visit of `a` and first visit of `b` afterwards keeps
/// everything induced, so this decides existence of an induced linkage.
pub fn brute_linkage_exists(g: &Graph, a: u64, b: u64, k: usize) -> bool {
    let n = g.n();
    let adj = rows(g);
    if k == 0 {
        return true;
    }
    subsets(full_mask_of(n)).any(|u| {
        if u.count_ones() < k as u32 {
            return false;
        }
        let mut left = u;
        let mut paths = 0;
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            loop {
                let grown = comp | members(comp).iter().fold(0, |m, &v| m | adj[v]) & u;
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            left &= !comp;
            let degs: Vec<u32> = members(comp).iter().map(|&v| (adj[v] & comp).count_ones()).collect();
            let edges: u32 = degs.iter().sum::<u32>() / 2;
            if degs.iter().any(|&d| d > 2) || edges + 1 != comp.count_ones() {
                return false;
            }
            let ok = if comp.count_ones() == 1 {
                comp & a & b != 0
            } else {
                let ends: Vec<usize> = members(comp).into_iter().zip(&degs).filter(|(_, &d)| d == 1).map(|(v, _)| v).collect();
                let (x, y) = (1u64 << ends[0], 1u64 << ends[1]);
                (x & a != 0 && y & b != 0) || (y & a != 0 && x & b != 0)
            };
            if !ok {
                return false;
            }
            paths += 1;
        }
        paths == k
    })
}

fn full_mask_of(n: usize) -> u64 {
    if n == 64 { u64::MAX } else { (1 << n) - 1 }
}

/// Whether `a` and `b` lie in different components of `G - s`.
pub fn brute_separates(g: &Graph, a: u64, b: u64, s: u64) -> bool {
    let adj = rows(g);
    let alive = full_mask_of(g.n()) & !s;
    let mut reach = a & alive;
    loop {
        let grown = reach | members(reach).iter().fold(0, |m, &v| m | adj[v]) & alive;
        if grown == reach {
            break;
        }
        reach = grown;
    }
    reach & b == 0
}
