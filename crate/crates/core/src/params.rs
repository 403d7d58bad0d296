//! Clique-sparsity parameters and the inequalities relating them.

use num_bigint::BigUint;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::cliques::{clique_linegraph, maximal_cliques, twin_partition, CliqueHypergraph, QuotientMap};
use crate::graph::{Graph, VertexSet};
use crate::measure::Measure;
use crate::patterns::local_cutrank;
use crate::{Error, Result};

/// Largest graph for which the global `alpha` and `theta` entries are computed.
pub const GLOBAL_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterProfile {
    pub omega: usize,
    /// Clique-incidence-diversity: most twin classes met by one maximal clique.
    pub cid: usize,
    /// Clique-incidence-degree: most maximal cliques through one vertex.
    pub cideg: usize,
    /// Clique-degree: maximum degree of the clique linegraph.
    pub cdeg: usize,
    /// Maximum degree of the clique-quotient graph.
    pub delta_tilde: usize,
    pub local_alpha: usize,
    pub local_theta: usize,
    pub alpha: usize,
    pub theta: usize,
}

/// The structural pieces shared by the parameter computations.
pub struct CliqueData {
    pub cliques: CliqueHypergraph,
    pub quotient: QuotientMap,
}

impl CliqueData {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(CliqueData {
            cliques: maximal_cliques(g)?,
            quotient: twin_partition(g),
        })
    }

    pub fn cid(&self) -> usize {
        self.cliques
            .cliques
            .iter()
            .map(|k| self.quotient.project_set(k).len())
            .max()
            .unwrap_or(0)
    }
}

fn local_measure(g: &Graph, mu: Measure) -> Result<usize> {
    (0..g.n())
        .map(|v| mu.eval(g, &g.closed_neighbors(v)))
        .try_fold(0, |acc, x| Ok(acc.max(x?)))
}

/// `max_v alpha(G[N[v]])`, the largest number of leaves of an induced star.
pub fn local_alpha(g: &Graph) -> Result<usize> {
    local_measure(g, Measure::Alpha)
}

pub fn local_theta(g: &Graph) -> Result<usize> {
    local_measure(g, Measure::Theta)
}

pub fn cid(g: &Graph) -> Result<usize> {
    Ok(CliqueData::new(g)?.cid())
}

pub fn cideg(g: &Graph) -> Result<usize> {
    Ok(maximal_cliques(g)?.max_degree())
}

pub fn parameter_profile(g: &Graph) -> Result<ParameterProfile> {
    let data = CliqueData::new(g)?;
    profile_from(g, &data)
}

fn profile_from(g: &Graph, data: &CliqueData) -> Result<ParameterProfile> {
    Error::check_cap("alpha", GLOBAL_CAP, g.n())?;
    let all = g.vertices();
    Ok(ParameterProfile {
        omega: data.cliques.cliques.iter().map(VertexSet::len).max().unwrap_or(0),
        cid: data.cid(),
        cideg: data.cliques.max_degree(),
        cdeg: clique_linegraph(&data.cliques).max_degree(),
        delta_tilde: data.quotient.quotient.max_degree(),
        local_alpha: local_alpha(g)?,
        local_theta: local_theta(g)?,
        alpha: Measure::Alpha.eval(g, &all)?,
        theta: Measure::Theta.eval(g, &all)?,
    })
}

/// Number of distinct nonempty traces `N(y) ∩ X` over `y ∈ N(X)`.
pub fn diversity_number(g: &Graph, x: &VertexSet) -> Result<usize> {
    if x.universe() != g.n() {
        return Err(Error::domain("vertex set does not belong to the graph"));
    }
    let mut traces: Vec<VertexSet> = g
        .set_neighbors(x)
        .iter()
        .map(|y| g.neighbors(y).intersection(x))
        .collect();
    traces.sort();
    traces.dedup();
    Ok(traces.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub detail: String,
}

/// Outcome of [`verify_inequalities`]; serializes as an object keyed by
/// clause name.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub profile: ParameterProfile,
    pub checks: Vec<(&'static str, Check)>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.holds)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|(_, c)| !c.holds).map(|(n, _)| *n).collect()
    }
}

impl Serialize for InequalityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Checks<'a>(&'a [(&'static str, Check)]);
        impl Serialize for Checks<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("passed", &self.passed())?;
        m.serialize_entry("profile", &self.profile)?;
        m.serialize_entry("checks", &Checks(&self.checks))?;
        m.end()
    }
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn pow(base: usize, exp: usize) -> BigUint {
    big(base).pow(exp as u32)
}

/// `2^(2^r)`, saturated once it exceeds every possible clique size.
fn tower2(r: usize) -> BigUint {
    if r >= 7 {
        pow(2, 128)
    } else {
        pow(2, 1 << r)
    }
}

/// Evaluates every inequality between the parameters, plus the per-clique
/// diversity and cutrank bounds.
pub fn verify_inequalities(g: &Graph) -> Result<InequalityReport> {
    let data = CliqueData::new(g)?;
    let p = profile_from(g, &data)?;
    let mut checks: Vec<(&'static str, Check)> = Vec::new();
    let mut add = |name, holds: bool, detail: String| checks.push((name, Check { holds, detail }));

    let quotient_edgeless = data.quotient.quotient.edge_count() == 0;
    if quotient_edgeless {
        add(
            "cid-le-delta-tilde",
            p.cid <= 1 && p.delta_tilde == 0,
            format!("edgeless quotient: cid={} <= 1, delta_tilde={} = 0", p.cid, p.delta_tilde),
        );
    } else {
        add(
            "cid-le-delta-tilde",
            p.cid <= p.delta_tilde,
            format!("cid={} <= delta_tilde={}", p.cid, p.delta_tilde),
        );
    }
    let mm = pow(3, p.delta_tilde.div_ceil(3));
    add(
        "cideg-le-moon-moser",
        big(p.cideg) <= mm,
        format!("cideg={} <= 3^ceil({}/3)={mm}", p.cideg, p.delta_tilde),
    );
    let rhs = p.cideg * p.cid.saturating_sub(1);
    add(
        "delta-tilde-le-cideg-times-cid",
        p.delta_tilde <= rhs,
        format!("delta_tilde={} <= cideg*(cid-1)={rhs}", p.delta_tilde),
    );
    add(
        "local-alpha-le-local-theta",
        p.local_alpha <= p.local_theta,
        format!("local_alpha={} <= local_theta={}", p.local_alpha, p.local_theta),
    );
    add(
        "local-theta-le-cideg",
        p.local_theta <= p.cideg,
        format!("local_theta={} <= cideg={}", p.local_theta, p.cideg),
    );
    let rhs = pow(p.local_alpha, p.cid);
    add(
        "delta-tilde-le-local-alpha-pow-cid",
        big(p.delta_tilde) <= rhs,
        format!("delta_tilde={} <= local_alpha^cid={rhs}", p.delta_tilde),
    );
    let rhs = p.cid * p.cideg.saturating_sub(1);
    add(
        "cdeg-le-cid-times-cideg",
        p.cdeg <= rhs,
        format!("cdeg={} <= cid*(cideg-1)={rhs}", p.cdeg),
    );
    let rhs = pow(2, p.cdeg);
    add(
        "cid-le-2-pow-cdeg",
        big(p.cid) <= rhs,
        format!("cid={} <= 2^cdeg={rhs}", p.cid),
    );
    add(
        "cideg-le-cdeg-plus-1",
        p.cideg <= p.cdeg + 1,
        format!("cideg={} <= cdeg+1={}", p.cideg, p.cdeg + 1),
    );
    add(
        "alpha-le-theta",
        p.alpha <= p.theta,
        format!("alpha={} <= theta={}", p.alpha, p.theta),
    );

    // Composite bounds in terms of delta_tilde alone.
    let d = p.delta_tilde;
    let cid_cap = if quotient_edgeless { 1 } else { d };
    let cideg_cap = mm.clone();
    let cdeg_cap = big(cid_cap) * (cideg_cap.clone() - 1u32);
    add(
        "composite-cdeg",
        big(p.cdeg) <= cdeg_cap,
        format!("cdeg={} <= {cdeg_cap}", p.cdeg),
    );
    let pair_cap = std::cmp::max(cideg_cap.clone(), big(cid_cap));
    for (name, value) in [
        ("composite-cideg-cid", p.cideg.max(p.cid)),
        ("composite-local-alpha-cid", p.local_alpha.max(p.cid)),
        ("composite-local-theta-cid", p.local_theta.max(p.cid)),
    ] {
        add(name, big(value) <= pair_cap, format!("{value} <= {pair_cap}"));
    }

    // Per maximal clique.
    let mut diversity_fail = None;
    let mut cutrank_fail = None;
    for k in &data.cliques.cliques {
        let dn = diversity_number(g, k)?;
        let size = data.quotient.project_set(k).len();
        let lower = big(dn + 2) <= pow(2, size);
        let upper = big(size) <= pow(2, dn);
        if (!lower || !upper) && diversity_fail.is_none() {
            diversity_fail = Some(format!("clique {k:?}: dn={dn}, classes={size}"));
        }
        let rho = local_cutrank(g, k, &g.set_neighbors(k))?;
        if big(size) > tower2(rho) && cutrank_fail.is_none() {
            cutrank_fail = Some(format!("clique {k:?}: classes={size}, local cutrank={rho}"));
        }
    }
    let count = data.cliques.len();
    add(
        "clique-diversity",
        diversity_fail.is_none(),
        diversity_fail.unwrap_or_else(|| format!("dn+2 <= 2^|K~| and |K~| <= 2^dn on all {count} cliques")),
    );
    add(
        "clique-cutrank",
        cutrank_fail.is_none(),
        cutrank_fail.unwrap_or_else(|| format!("|K~| <= 2^(2^rank) on all {count} cliques")),
    );

    Ok(InequalityReport { profile: p, checks })
}
