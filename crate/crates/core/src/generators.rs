//! Constructors for the parametric families and witness graphs.
//!
//! Labeling conventions:
//! - bipartite-pair families: `0..n` is `X = x_1..x_n`, `n..2n` is `Y`;
//! - star: centre `0`, leaves `1..=n`;
//! - grid: vertex `(r, c)` is `r * n + c`;
//! - Moon–Moser: part `i` is `3i..3i+3`, the universal vertex is `3n`;
//! - chained families: block `X^i` (1-based `i`) is `(i-1)n..in`, followed
//!   by the apexes `y` and then the `z` vertices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::graph::{Graph, GraphBuilder};
use crate::{Error, Result};

/// Inner families admitted by the chained construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QInner {
    MII,
    MKI,
    MKK,
    HII,
    HKK,
    AKK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Star,
    MII,
    MKI,
    MKK,
    AII,
    AKI,
    AKK,
    HII,
    HKI,
    HKK,
    Grid,
    MoonMoserUniversal,
    Kn,
    Knn,
    Path,
    Cycle,
    Q { inner: QInner, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n }
    }

    pub fn q(inner: QInner, k: usize, n: usize) -> Self {
        FamilySpec {
            family: Family::Q { inner, k },
            n,
        }
    }
}

const PAIR_NAMES: [(&str, Family); 9] = [
    ("MII", Family::MII),
    ("MKI", Family::MKI),
    ("MKK", Family::MKK),
    ("AII", Family::AII),
    ("AKI", Family::AKI),
    ("AKK", Family::AKK),
    ("HII", Family::HII),
    ("HKI", Family::HKI),
    ("HKK", Family::HKK),
];

impl FromStr for QInner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "MII" => Ok(QInner::MII),
            "MKI" => Ok(QInner::MKI),
            "MKK" => Ok(QInner::MKK),
            "HII" => Ok(QInner::HII),
            "HKK" => Ok(QInner::HKK),
            "AKK" => Ok(QInner::AKK),
            other => Err(Error::domain(format!("'{other}' has no chained construction"))),
        }
    }
}

impl fmt::Display for QInner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Family {
    /// Parses a family name. Chained families are written `Q-<inner>` and
    /// take their length separately.
    pub fn parse(name: &str, k: Option<usize>) -> Result<Self> {
        let upper = name.to_ascii_uppercase();
        if let Some(inner) = upper.strip_prefix("Q-") {
            let k = k.ok_or_else(|| Error::domain("chained families need a length k"))?;
            return Ok(Family::Q {
                inner: inner.parse()?,
                k,
            });
        }
        if let Some(&(_, f)) = PAIR_NAMES.iter().find(|(s, _)| *s == upper) {
            return Ok(f);
        }
        Ok(match upper.as_str() {
            "STAR" => Family::Star,
            "GRID" => Family::Grid,
            "MOONMOSER" | "MOON-MOSER" | "MOONMOSERUNIVERSAL" => Family::MoonMoserUniversal,
            "K" | "KN" | "COMPLETE" => Family::Kn,
            "KNN" | "BICLIQUE" => Family::Knn,
            "PATH" | "P" => Family::Path,
            "CYCLE" | "C" => Family::Cycle,
            _ => return Err(Error::domain(format!("unknown family '{name}'"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Q { inner, k } => write!(f, "Q-{inner}(k={k})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cross {
    Matching,
    Anti,
    Half,
}

fn cross(b: &mut GraphBuilder, x: &[usize], y: &[usize], kind: Cross) {
    for (i, &u) in x.iter().enumerate() {
        for (j, &v) in y.iter().enumerate() {
            let adjacent = match kind {
                Cross::Matching => i == j,
                Cross::Anti => i != j,
                Cross::Half => i <= j,
            };
            if adjacent {
                b.add_edge(u, v);
            }
        }
    }
}

fn pair(n: usize, kind: Cross, clique_x: bool, clique_y: bool) -> Graph {
    let mut b = GraphBuilder::new(2 * n);
    let x: Vec<usize> = (0..n).collect();
    let y: Vec<usize> = (n..2 * n).collect();
    cross(&mut b, &x, &y, kind);
    if clique_x {
        b.add_clique(x.iter().copied());
    }
    if clique_y {
        b.add_clique(y.iter().copied());
    }
    b.build()
}

pub fn generate(member: FamilySpec) -> Result<Graph> {
    let n = member.n;
    if n == 0 {
        return Err(Error::domain("family order must be at least 1"));
    }
    Ok(match member.family {
        Family::Star => {
            let mut b = GraphBuilder::new(n + 1);
            for v in 1..=n {
                b.add_edge(0, v);
            }
            b.build()
        }
        Family::MII => pair(n, Cross::Matching, false, false),
        Family::MKI => pair(n, Cross::Matching, true, false),
        Family::MKK => pair(n, Cross::Matching, true, true),
        Family::AII => pair(n, Cross::Anti, false, false),
        Family::AKI => pair(n, Cross::Anti, true, false),
        Family::AKK => pair(n, Cross::Anti, true, true),
        Family::HII => pair(n, Cross::Half, false, false),
        Family::HKI => pair(n, Cross::Half, true, false),
        Family::HKK => pair(n, Cross::Half, true, true),
        Family::Grid => {
            let mut b = GraphBuilder::new(n * n);
            for r in 0..n {
                for c in 0..n {
                    if c + 1 < n {
                        b.add_edge(r * n + c, r * n + c + 1);
                    }
                    if r + 1 < n {
                        b.add_edge(r * n + c, (r + 1) * n + c);
                    }
                }
            }
            b.build()
        }
        Family::MoonMoserUniversal => {
            let m = 3 * n;
            let mut b = GraphBuilder::new(m + 1);
            for u in 0..m {
                for v in u + 1..m {
                    if u / 3 != v / 3 {
                        b.add_edge(u, v);
                    }
                }
                b.add_edge(u, m);
            }
            b.build()
        }
        Family::Kn => Graph::complete(n),
        Family::Knn => {
            let mut b = GraphBuilder::new(2 * n);
            let x: Vec<usize> = (0..n).collect();
            let y: Vec<usize> = (n..2 * n).collect();
            b.add_biclique(&x, &y);
            b.build()
        }
        Family::Path => {
            let mut b = GraphBuilder::new(n);
            for v in 1..n {
                b.add_edge(v - 1, v);
            }
            b.build()
        }
        Family::Cycle => {
            if n < 3 {
                return Err(Error::domain("cycles need at least 3 vertices"));
            }
            let mut b = GraphBuilder::new(n);
            for v in 0..n {
                b.add_edge(v, (v + 1) % n);
            }
            b.build()
        }
        Family::Q { inner, k } => chained(inner, k, n)?,
    })
}

fn chained(inner: QInner, k: usize, n: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::domain("chained families need k >= 2"));
    }
    let block = |i: usize| -> Vec<usize> { (i * n..(i + 1) * n).collect() };
    // 0-based block indices that carry an apex.
    let apex_blocks: Vec<usize> = match inner {
        QInner::MKI => (0..k).step_by(2).collect(),
        _ => (0..k).collect(),
    };
    let z_count = if inner == QInner::AKK { k - 1 } else { 0 };
    let y0 = k * n;
    let z0 = y0 + apex_blocks.len();
    let mut b = GraphBuilder::new(z0 + z_count);
    let kind = match inner {
        QInner::MII | QInner::MKI | QInner::MKK => Cross::Matching,
        QInner::HII | QInner::HKK => Cross::Half,
        QInner::AKK => Cross::Anti,
    };
    for i in 0..k - 1 {
        cross(&mut b, &block(i), &block(i + 1), kind);
    }
    let apex_clique = !matches!(inner, QInner::MII | QInner::HII);
    for (idx, &i) in apex_blocks.iter().enumerate() {
        let y = y0 + idx;
        if apex_clique {
            b.add_clique(block(i).into_iter().chain([y]));
        } else {
            b.add_biclique(&[y], &block(i));
        }
    }
    for i in 0..z_count {
        let mut both = block(i);
        both.extend(block(i + 1));
        b.add_biclique(&[z0 + i], &both);
    }
    Ok(b.build())
}
