use std::collections::BTreeMap;

use super::{mask_iter, Graph, MASK_CAP};
use crate::{Error, Result};

/// Size limit for [`are_isomorphic`].
pub const ISO_CAP: usize = 16;

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// An edge-preserving bijection `phi` with `phi[v]` the image in `h` of
/// vertex `v` of `g`, if one exists. Both graphs must have at most
/// [`ISO_CAP`] vertices.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    find_isomorphism_capped(g, h, ISO_CAP)
}

/// Same as [`find_isomorphism`] with an explicit size limit (at most 64).
pub fn find_isomorphism_capped(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    let cap = cap.min(MASK_CAP);
    Error::check_cap("isomorphism", cap, g.n().max(h.n()))?;
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let n = g.n();
    let (cg, ch) = match refine_jointly(g, h) {
        Some(c) => c,
        None => return Ok(None),
    };
    let ga = g.mask_rows("isomorphism")?;
    let ha = h.mask_rows("isomorphism")?;

    // Map vertices of g in an order that keeps each new vertex attached to
    // already-mapped ones where possible, rarest colour first.
    let mut freq: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &cg {
        *freq.entry(c).or_default() += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let pick = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (ga[v] & placed).count_ones(),
                    std::cmp::Reverse(freq[&cg[v]]),
                    ga[v].count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        order.push(pick);
        placed |= 1 << pick;
    }

    let mut phi = vec![usize::MAX; n];
    let mut used = 0u64;
    let ok = extend(&order, 0, &ga, &ha, &cg, &ch, &mut phi, &mut used);
    Ok(ok.then_some(phi))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    order: &[usize],
    depth: usize,
    ga: &[u64],
    ha: &[u64],
    cg: &[u32],
    ch: &[u32],
    phi: &mut [usize],
    used: &mut u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let n = ga.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cand = all & !*used;
    for &u in &order[..depth] {
        let img = phi[u];
        if ga[v] >> u & 1 == 1 {
            cand &= ha[img];
        } else {
            cand &= !ha[img];
        }
    }
    for w in mask_iter(cand) {
        if ch[w] != cg[v] {
            continue;
        }
        phi[v] = w;
        *used |= 1 << w;
        if extend(order, depth + 1, ga, ha, cg, ch, phi, used) {
            return true;
        }
        *used &= !(1 << w);
    }
    phi[v] = usize::MAX;
    false
}

/// Colour refinement run on both graphs with a shared palette. Returns
/// `None` when the colour histograms differ, which rules out isomorphism.
fn refine_jointly(g: &Graph, h: &Graph) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut cg: Vec<u32> = (0..g.n()).map(|v| g.degree(v) as u32).collect();
    let mut ch: Vec<u32> = (0..h.n()).map(|v| h.degree(v) as u32).collect();
    let mut classes = 0usize;
    loop {
        let sig = |gr: &Graph, col: &[u32], v: usize| {
            let mut nb: Vec<u32> = gr.neighbors(v).iter().map(|u| col[u]).collect();
            nb.sort_unstable();
            (col[v], nb)
        };
        let sg: Vec<_> = (0..g.n()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.n()).map(|v| sig(h, &ch, v)).collect();
        let mut palette: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in sg.iter().chain(&sh) {
            let next = palette.len() as u32;
            palette.entry(s).or_insert(next);
        }
        let ng: Vec<u32> = sg.iter().map(|s| palette[s]).collect();
        let nh: Vec<u32> = sh.iter().map(|s| palette[s]).collect();
        let mut hist_g = ng.clone();
        let mut hist_h = nh.clone();
        hist_g.sort_unstable();
        hist_h.sort_unstable();
        if hist_g != hist_h {
            return None;
        }
        let count = palette.len();
        cg = ng;
        ch = nh;
        if count == classes {
            return Some((cg, ch));
        }
        classes = count;
    }
}
