//! Multi-graded Betti tables of `K[G]` from the subgraph census.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::census::family_subgraph_census;
use crate::graph::{multipath_kind, pdim, recognize, LabeledGraph, MultiPathKind, Shape};
use crate::multidegree::Multidegree;
use crate::{Error, Result};

/// `β_{i,h}(K[G])` over the polynomial ring on the edges; row `i` maps a
/// multidegree to its non-zero Betti number.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub rows: Vec<BTreeMap<Multidegree, u64>>,
}

impl BettiTable {
    /// The table of a polynomial ring: `β_{0,0} = 1`.
    pub fn unit() -> Self {
        let mut row = BTreeMap::new();
        row.insert(Multidegree::zero(), 1);
        BettiTable { rows: alloc::vec![row] }
    }

    /// Largest `i` with a non-zero entry.
    pub fn pdim(&self) -> usize {
        self.rows.iter().rposition(|r| !r.is_empty()).unwrap_or(0)
    }

    pub fn get(&self, i: usize, h: &Multidegree) -> u64 {
        self.rows.get(i).and_then(|r| r.get(h)).copied().unwrap_or(0)
    }

    pub fn row_total(&self, i: usize) -> u64 {
        self.rows.get(i).map_or(0, |r| r.values().sum())
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..self.rows.len()).map(|i| self.row_total(i)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Multidegree, u64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(h, &b)| (i, h, b)))
    }

    /// Alternating sum of the ranks; zero for a non-polynomial normal edge
    /// ring since its Hilbert series numerator vanishes at 1.
    pub fn euler_characteristic(&self) -> i64 {
        self.totals().iter().enumerate().map(|(i, &t)| if i % 2 == 0 { t as i64 } else { -(t as i64) }).sum()
    }

    fn insert(&mut self, i: usize, h: Multidegree, b: u64) {
        while self.rows.len() <= i {
            self.rows.push(BTreeMap::new());
        }
        if b > 0 {
            *self.rows[i].entry(h).or_insert(0) += b;
        }
    }
}

/// `β_{i,j}` with `j` the degree in the edge grading (`|h| = 2j`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedBettiTable {
    pub entries: BTreeMap<(usize, u64), u64>,
}

impl GradedBettiTable {
    pub fn get(&self, i: usize, j: u64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }
}

/// The full multi-graded table of `K[G]` for a supported family member.
pub fn betti_table(g: &LabeledGraph) -> Result<BettiTable> {
    let p = pdim(g)? as usize;
    if recognize(g).is_none() {
        return Err(Error::UnsupportedFamily);
    }
    let mut t = BettiTable::unit();
    for i in 1..=p {
        t.insert(i, Multidegree::zero(), 0);
        for m in family_subgraph_census(g, i)? {
            for (d, b) in m.degrees {
                t.insert(i, d, b as u64);
            }
        }
    }
    Ok(t)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for j in 0..k {
        r = r * (n - j) / (j + 1);
    }
    r
}

/// `β_i(K[G])` from closed formulas, without building the table.
pub fn total_betti(g: &LabeledGraph, i: usize) -> Result<u64> {
    let p = pdim(g)? as usize;
    let r = recognize(g).ok_or(Error::UnsupportedFamily)?;
    if i == 0 {
        return Ok(1);
    }
    if i > p {
        return Ok(0);
    }
    let i = i as u64;
    Ok(match &r.shape {
        Shape::Compact { .. } => {
            // t minimal cycles and p = t - 1
            let t = p as u64 + 1;
            i * binomial(t, i + 1)
        }
        Shape::MultiPath { paths, .. } => {
            let lengths: Vec<u32> = paths.iter().map(|q| q.len() as u32 + 1).collect();
            let m = paths.len() as u64;
            match multipath_kind(&lengths) {
                MultiPathKind::Even | MultiPathKind::Odd => i * binomial(m, i + 1),
                MultiPathKind::Mixed => {
                    let e = lengths.iter().filter(|&&l| l % 2 == 0).count() as u64;
                    let o = m - e;
                    let mut s = i * (binomial(e, i + 1) + binomial(o, i + 1));
                    for j in 1..i {
                        let k = i - j;
                        s += binomial(o, j + 1) * binomial(e, k + 1) * j * k;
                    }
                    s
                }
            }
        }
        Shape::TwoEar { spokes, .. } => {
            let m = spokes.len() as u64 + 1;
            i * binomial(m + 1, i + 1)
        }
        Shape::OneEar { spokes, .. } => {
            let m = spokes.len() as u64 + 1;
            i * binomial(m, i + 1)
        }
    })
}

/// Collapses a multi-graded table to the standard grading.
pub fn graded_table(t: &BettiTable) -> Result<GradedBettiTable> {
    let mut out = GradedBettiTable::default();
    for (i, h, b) in t.entries() {
        let tot = h.total();
        if tot % 2 == 1 {
            return Err(Error::OddTotalDegree);
        }
        *out.entries.entry((i, tot / 2)).or_insert(0) += b;
    }
    Ok(out)
}

/// Betti table of `K[G1] ⊗ K[G2]` for graphs on disjoint vertex sets
/// (the degrees of the factors are added).
pub fn tensor_betti(a: &BettiTable, b: &BettiTable) -> BettiTable {
    let mut t = BettiTable::default();
    for (i, h, x) in a.entries() {
        for (j, k, y) in b.entries() {
            t.insert(i + j, h.add(k), x * y);
        }
    }
    t
}

/// Cohen-Macaulay type of `K[G]`, read off the last row.
pub fn cm_type(g: &LabeledGraph) -> Result<u64> {
    let t = betti_table(g)?;
    Ok(t.row_total(t.pdim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn table(spec: FamilySpec) -> (LabeledGraph, BettiTable) {
        let g = build_family(&spec).unwrap();
        let t = betti_table(&g).unwrap();
        (g, t)
    }

    #[test]
    fn totals_match_the_closed_formulas() {
        for spec in [
            FamilySpec::CompactA { petals: vec![1, 1, 1] },
            FamilySpec::CompactB { s: 2, u_petals: vec![1], v_petals: vec![1, 2] },
            FamilySpec::CompactC { u_petals: vec![1], v_petals: vec![1], w_petals: vec![1, 1] },
            FamilySpec::MultiPath { lengths: vec![3, 3, 3] },
            FamilySpec::MultiPath { lengths: vec![2, 2, 3, 3] },
            FamilySpec::MultiPath { lengths: vec![2, 2, 2, 3, 3, 3] },
            FamilySpec::MultiPath { lengths: vec![2, 2, 3] },
            FamilySpec::TwoEar { m: 4 },
            FamilySpec::OneEar { m: 4 },
            FamilySpec::CompleteBipartite2d { d: 5 },
        ] {
            let (g, t) = table(spec.clone());
            let p = pdim(&g).unwrap() as usize;
            assert_eq!(t.pdim(), p, "{spec}");
            for i in 0..=p {
                assert_eq!(t.row_total(i), total_betti(&g, i).unwrap(), "{spec} row {i}");
            }
            assert_eq!(t.euler_characteristic(), 0, "{spec}");
        }
    }

    #[test]
    fn mixed_example_top_row() {
        let (g, t) = table(FamilySpec::MultiPath { lengths: vec![2, 2, 2, 3, 3, 3] });
        assert_eq!(t.pdim(), 4);
        let th = crate::multidegree::theta(&g);
        let mut top: Vec<_> = t.rows[4].keys().map(|d| d.render_with_theta(&th)).collect();
        top.sort();
        assert_eq!(top, ["Θ·v1^2 v2^3", "Θ·v1^3 v2^2", "Θ·v1^3 v2^4", "Θ·v1^4 v2^3"]);
    }

    #[test]
    fn graded_rows_sum_to_totals() {
        let (g, t) = table(FamilySpec::CompactC { u_petals: vec![1], v_petals: vec![1], w_petals: vec![1, 1] });
        let gt = graded_table(&t).unwrap();
        for i in 0..=4 {
            let s: u64 = gt.entries.iter().filter(|((r, _), _)| *r == i).map(|(_, v)| v).sum();
            assert_eq!(s, total_betti(&g, i).unwrap());
        }
        let mut bad = BettiTable::unit();
        bad.insert(1, "u".parse().unwrap(), 1);
        assert_eq!(graded_table(&bad), Err(Error::OddTotalDegree));
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let (_, t) = table(FamilySpec::MultiPath { lengths: vec![3, 3, 3] });
        assert_eq!(tensor_betti(&t, &BettiTable::unit()), t);
    }
}
