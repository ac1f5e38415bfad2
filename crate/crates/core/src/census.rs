//! Induced subgraphs whose top (or second-to-top) syzygies survive in a
//! given homological degree of the resolution of `K[G]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::canonical::{n_set, second_top_type3};
use crate::graph::{minimal_cycles, recognize, LabeledGraph, Shape, VertexId};
use crate::multidegree::Multidegree;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MemberKind {
    /// A compact graph on `i + 1` minimal cycles; contributes `N_H`.
    Compact,
    /// A type-3 compact graph on `i + 2` minimal cycles; contributes its
    /// second-to-top degrees.
    CompactSecondTop,
    /// `i + 1` paths of one parity.
    PathsOneParity,
    /// `i + 2` paths with at least two of each parity.
    PathsTrueMixed,
    /// Two-ear graph with `i + 1` spokes-plus-joint paths.
    TwoEar,
    /// One-ear graph.
    OneEar,
    /// `K_{2,i+1}` on the spokes.
    Spokes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusMember {
    /// Vertex ids of the member inside the parent graph, sorted.
    pub vertices: Vec<VertexId>,
    pub kind: MemberKind,
    /// Multidegrees (named as in the parent) with their Betti numbers.
    pub degrees: Vec<(Multidegree, u32)>,
}

/// All members contributing to homological degree `i >= 1`.
pub fn family_subgraph_census(g: &LabeledGraph, i: usize) -> Result<Vec<CensusMember>> {
    let r = recognize(g).ok_or(Error::UnsupportedFamily)?;
    let mut out = Vec::new();
    if i == 0 {
        return Ok(out);
    }
    match &r.shape {
        Shape::Compact { .. } => compact_census(g, i, &mut out)?,
        Shape::MultiPath { apexes, paths } => multipath_census(g, i, *apexes, paths, &mut out)?,
        Shape::TwoEar { v1, v2, x1, x2, y1, y2, spokes } => {
            let ears = [*v1, *v2, *x1, *x2, *y1, *y2];
            // two-ear graphs with i - 1 spokes
            if i >= 1 {
                for pick in subsets(spokes, i - 1) {
                    push(g, &mut out, MemberKind::TwoEar, ears.iter().copied().chain(pick))?;
                }
            }
            // one-ear graphs on either side, with i spokes
            for pick in subsets(spokes, i) {
                let y_side = [*v1, *v2, *x1, *y1, *y2];
                let x_side = [*v1, *v2, *x1, *x2, *y1];
                push(g, &mut out, MemberKind::OneEar, y_side.iter().copied().chain(pick.iter().copied()))?;
                push(g, &mut out, MemberKind::OneEar, x_side.iter().copied().chain(pick))?;
            }
            spoke_census(g, i, *v1, *v2, spokes, &mut out)?;
        }
        Shape::OneEar { v1, v2, x1, y1, y2, spokes } => {
            for pick in subsets(spokes, i) {
                let ear = [*v1, *v2, *x1, *y1, *y2];
                push(g, &mut out, MemberKind::OneEar, ear.iter().copied().chain(pick))?;
            }
            spoke_census(g, i, *v1, *v2, spokes, &mut out)?;
        }
    }
    check_distinct(g, &out)?;
    Ok(out)
}

fn spoke_census(
    g: &LabeledGraph,
    i: usize,
    v1: VertexId,
    v2: VertexId,
    spokes: &[VertexId],
    out: &mut Vec<CensusMember>,
) -> Result<()> {
    for pick in subsets(spokes, i + 1) {
        push(g, out, MemberKind::Spokes, [v1, v2].into_iter().chain(pick))?;
    }
    Ok(())
}

fn push(
    g: &LabeledGraph,
    out: &mut Vec<CensusMember>,
    kind: MemberKind,
    vertices: impl IntoIterator<Item = VertexId>,
) -> Result<()> {
    let mut vertices: Vec<VertexId> = vertices.into_iter().collect();
    vertices.sort_unstable();
    let h = g.induced_subgraph(&vertices)?;
    let degrees = match kind {
        MemberKind::CompactSecondTop => second_top_type3(&h)?,
        _ => n_set(&h)?.into_iter().map(|d| (d, 1)).collect(),
    };
    out.push(CensusMember { vertices, kind, degrees });
    Ok(())
}

fn compact_census(g: &LabeledGraph, i: usize, out: &mut Vec<CensusMember>) -> Result<()> {
    let cycles = minimal_cycles(g);
    let n = g.vertex_count();
    for size in [i + 1, i + 2] {
        for pick in subsets(&(0..cycles.len()).collect::<Vec<_>>(), size) {
            let mut mask = vec![false; n];
            for &c in &pick {
                for &v in &cycles[c].vertices {
                    mask[v] = true;
                }
            }
            let vertices: Vec<VertexId> = (0..n).filter(|&v| mask[v]).collect();
            let h = g.induced_subgraph(&vertices)?;
            if minimal_cycles(&h).len() != size {
                continue;
            }
            let Some(rec) = recognize(&h) else { continue };
            let Shape::Compact { bigs, .. } = &rec.shape else { continue };
            if size == i + 1 {
                push(g, out, MemberKind::Compact, vertices)?;
            } else if bigs.len() == 3 {
                push(g, out, MemberKind::CompactSecondTop, vertices)?;
            }
        }
    }
    Ok(())
}

fn multipath_census(
    g: &LabeledGraph,
    i: usize,
    apexes: [VertexId; 2],
    paths: &[Vec<VertexId>],
    out: &mut Vec<CensusMember>,
) -> Result<()> {
    let idx: Vec<usize> = (0..paths.len()).collect();
    let odd_len = |p: usize| paths[p].len() % 2 == 0;
    for size in [i + 1, i + 2] {
        for pick in subsets(&idx, size) {
            let odd = pick.iter().filter(|&&p| odd_len(p)).count();
            let even = pick.len() - odd;
            let kind = if size == i + 1 && (odd == 0 || even == 0) {
                MemberKind::PathsOneParity
            } else if size == i + 2 && odd >= 2 && even >= 2 {
                MemberKind::PathsTrueMixed
            } else {
                continue;
            };
            let vertices = apexes.iter().copied().chain(pick.iter().flat_map(|&p| paths[p].iter().copied()));
            push(g, out, kind, vertices)?;
        }
    }
    Ok(())
}

fn check_distinct(g: &LabeledGraph, members: &[CensusMember]) -> Result<()> {
    let mut seen: BTreeMap<&Multidegree, usize> = BTreeMap::new();
    for m in members {
        for (d, _) in &m.degrees {
            if seen.insert(d, 0).is_some() {
                let t = crate::multidegree::theta(g);
                return Err(Error::DuplicateDegree(d.render_with_theta(&t)));
            }
        }
    }
    Ok(())
}

/// All `k`-element subsets of `items`, in lexicographic order.
pub fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut j = k;
        while j > 0 && idx[j - 1] == n - k + j - 1 {
            j -= 1;
        }
        if j == 0 {
            return out;
        }
        idx[j - 1] += 1;
        for t in j..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}
