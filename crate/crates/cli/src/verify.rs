//! Seeded property suites behind `verify`.

use std::collections::BTreeMap;

use cliquesparse::cliques::{maximal_cliques, twin_partition, verify_quotient_preservation_seeded};
use cliquesparse::corpus::{random_corpus, rng};
use cliquesparse::decomposition::exact_mu_treewidth;
use cliquesparse::graph::{serialize_graph, Format};
use cliquesparse::measure::Measure;
use cliquesparse::menger::{induced_linkage_search, induced_menger, separates, Linkage, MengerOutcome};
use cliquesparse::params::{parameter_profile, verify_inequalities};
use cliquesparse::patterns::{cutrank, local_cutrank, pg_parameter, FAMILY_A, FAMILY_STAR};
use cliquesparse::rank::{exact_rankwidth, local_complement};
use cliquesparse::{Graph, Result, VertexSet};
use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;

pub const SUITES: [&str; 6] = ["inequalities", "quotient", "widths", "menger", "rank", "patterns"];

#[derive(Default, Serialize)]
pub struct ClauseTally {
    checked: usize,
    failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<String>,
}

#[derive(Serialize)]
pub struct SuiteReport {
    suite: &'static str,
    graphs: usize,
    passed: bool,
    clauses: BTreeMap<&'static str, ClauseTally>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.passed
    }
}

#[derive(Default)]
struct Tally(BTreeMap<&'static str, ClauseTally>);

impl Tally {
    fn check(&mut self, clause: &'static str, holds: bool, g: &Graph, detail: impl FnOnce() -> String) {
        let t = self.0.entry(clause).or_default();
        t.checked += 1;
        if !holds {
            t.failed += 1;
            if t.first_failure.is_none() {
                t.first_failure = Some(format!("{} {}", serialize_graph(g, Format::Graph6), detail()));
            }
        }
    }
}

pub fn run(suite: &'static str, seed: u64, trials: usize) -> Result<SuiteReport> {
    let max_n = match suite {
        "widths" | "rank" => 8,
        _ => 10,
    };
    let corpus = random_corpus(seed, trials, 4, max_n);
    let mut tally = Tally::default();
    let mut r = rng(seed ^ 0x5eed);
    for (i, g) in corpus.iter().enumerate() {
        match suite {
            "inequalities" => inequalities(&mut tally, g)?,
            "quotient" => quotient(&mut tally, g, seed.wrapping_add(i as u64))?,
            "widths" => widths(&mut tally, g)?,
            "menger" => menger(&mut tally, g, &mut r)?,
            "rank" => rank(&mut tally, g)?,
            "patterns" => patterns(&mut tally, g, &mut r)?,
            _ => unreachable!("suite names are validated by the caller"),
        }
    }
    let passed = tally.0.values().all(|t| t.failed == 0);
    Ok(SuiteReport {
        suite,
        graphs: corpus.len(),
        passed,
        clauses: tally.0,
    })
}

fn inequalities(t: &mut Tally, g: &Graph) -> Result<()> {
    let report = verify_inequalities(g)?;
    for (clause, c) in &report.checks {
        t.check(clause, c.holds, g, || c.detail.clone());
    }
    Ok(())
}

fn quotient(t: &mut Tally, g: &Graph, seed: u64) -> Result<()> {
    let report = verify_quotient_preservation_seeded(g, seed)?;
    for c in &report.clauses {
        t.check(c.clause, c.passed, g, || c.counterexample.clone().unwrap_or_default());
    }
    let q = twin_partition(g);
    let (p, pq) = (parameter_profile(g)?, parameter_profile(&q.quotient)?);
    let pairs = [
        ("cid-equals-quotient-omega", p.cid, pq.omega),
        ("cideg-preserved", p.cideg, pq.cideg),
        ("alpha-preserved", p.alpha, pq.alpha),
        ("theta-preserved", p.theta, pq.theta),
        ("local-alpha-preserved", p.local_alpha, pq.local_alpha),
        ("local-theta-preserved", p.local_theta, pq.local_theta),
    ];
    for (clause, a, b) in pairs {
        t.check(clause, a == b, g, || format!("{a} vs {b}"));
    }
    Ok(())
}

fn widths(t: &mut Tally, g: &Graph) -> Result<()> {
    let q = twin_partition(g);
    let p = parameter_profile(g)?;
    let tw = |h: &Graph, mu| exact_mu_treewidth(h, mu).map(|r| r.0);
    let (a, th) = (tw(g, Measure::Alpha)?, tw(g, Measure::Theta)?);
    let (aq, thq) = (tw(&q.quotient, Measure::Alpha)?, tw(&q.quotient, Measure::Theta)?);
    let tq = tw(&q.quotient, Measure::Cardinality)?;
    t.check("alpha-tw-preserved", a == aq, g, || format!("{a} vs {aq}"));
    t.check("theta-tw-preserved", th == thq, g, || format!("{th} vs {thq}"));
    t.check("alpha-tw-le-theta-tw", a <= th, g, || format!("{a} > {th}"));
    t.check("theta-tw-le-quotient-tw", th <= tq, g, || format!("{th} > {tq}"));
    t.check("quotient-tw-le-theta-tw-times-cid", tq <= th * p.cid, g, || {
        format!("{tq} > {th} * {}", p.cid)
    });
    t.check("quotient-tw-le-alpha-tw-times-delta-tilde", tq <= a * p.delta_tilde, g, || {
        format!("{tq} > {a} * {}", p.delta_tilde)
    });
    Ok(())
}

fn random_nonempty(r: &mut impl Rng, n: usize) -> VertexSet {
    loop {
        let s = VertexSet::from_iter(n, (0..n).filter(|_| r.gen_bool(0.3)));
        if !s.is_empty() {
            return s;
        }
    }
}

fn menger(t: &mut Tally, g: &Graph, r: &mut impl Rng) -> Result<()> {
    let (a, b) = (random_nonempty(r, g.n()), random_nonempty(r, g.n()));
    let k = r.gen_range(1..=3);
    let show = || format!("A={:?} B={:?} k={k}", a.to_vec(), b.to_vec());
    match induced_menger(g, &a, &b, k)? {
        MengerOutcome::Linkage { paths, .. } => {
            let ok = paths.len() == k && Linkage { paths }.is_induced_ab(g, &a, &b);
            t.check("linkage-is-induced", ok, g, show);
        }
        MengerOutcome::Separator { vertices, theta, quotient_size, bound } => {
            t.check("separator-separates", separates(g, &a, &b, &vertices), g, show);
            t.check("separator-theta-le-quotient-size", theta <= quotient_size, g, show);
            let bound: BigUint = bound.parse().expect("bounds are decimal integers");
            t.check("separator-theta-le-bound", BigUint::from(theta) <= bound, g, show);
            let none = induced_linkage_search(g, &a, &b, k)?.is_none();
            t.check("separator-excludes-linkage", none, g, show);
        }
    }
    Ok(())
}

fn rank(t: &mut Tally, g: &Graph) -> Result<()> {
    let rw = exact_rankwidth(g)?.0;
    for v in 0..g.n() {
        let lc = exact_rankwidth(&local_complement(g, v)?)?.0;
        t.check("local-complement-preserves-rw", lc == rw, g, || format!("v={v}: {lc} vs {rw}"));
        let del = exact_rankwidth(&g.delete_vertices(&VertexSet::singleton(g.n(), v)).graph)?.0;
        t.check("deletion-does-not-raise-rw", del <= rw, g, || format!("v={v}: {del} > {rw}"));
    }
    let rwq = exact_rankwidth(&twin_partition(g).quotient)?.0;
    t.check("quotient-rw-sandwich", rwq <= rw && rw <= rwq.max(1), g, || format!("{rwq} vs {rw}"));
    let a = exact_mu_treewidth(g, Measure::Alpha)?.0;
    let d = parameter_profile(g)?.local_alpha;
    t.check("alpha-tw-le-3-local-alpha-rw", a <= 3 * d * rw.max(1), g, || {
        format!("{a} > 3 * {d} * {}", rw.max(1))
    });
    Ok(())
}

fn patterns(t: &mut Tally, g: &Graph, r: &mut impl Rng) -> Result<()> {
    let q = twin_partition(g);
    let p = parameter_profile(g)?;
    let pa = pg_parameter(g, &FAMILY_A)?.value;
    t.check("pattern-parameter-le-cid", pa <= p.cid, g, || format!("{pa} > {}", p.cid));
    let ps = pg_parameter(g, &FAMILY_STAR)?.value;
    t.check("star-parameter-equals-local-alpha", ps == p.local_alpha, g, || {
        format!("{ps} vs {}", p.local_alpha)
    });
    for k in maximal_cliques(g)?.cliques {
        let rho = local_cutrank(g, &k, &g.set_neighbors(&k))?;
        let classes = q.project_set(&k).len();
        let ok = rho >= 6 || classes as u128 <= 1u128 << (1u32 << rho);
        t.check("clique-classes-le-double-exp-rank", ok, g, || format!("{:?}", k.to_vec()));
    }
    let xq = VertexSet::from_iter(q.quotient.n(), (0..q.quotient.n()).filter(|_| r.gen_bool(0.5)));
    let (lhs, rhs) = (cutrank(g, &q.expand_set(&xq))?, cutrank(&q.quotient, &xq)?);
    t.check("cutrank-survives-quotient", lhs == rhs, g, || format!("{lhs} vs {rhs}"));
    Ok(())
}
