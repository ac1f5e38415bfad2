//! The edge cone `R_+(G)`: its facet inequalities, relative-interior
//! membership and the minimal lattice points of its relative interior.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{odd_cycle_condition, recognize, LabeledGraph, Shape, VertexId};
use crate::multidegree::{dense_big_d, Multidegree};
use crate::{Error, Result};

/// Where a linear form came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// `x_i >= 0`.
    NonNegative(VertexId),
    /// `sum_{N(T)} x - sum_T x >= 0` for an independent set `T`.
    Neighbourhood(Vec<VertexId>),
    /// `sum_{V1} x - sum_{V2} x = 0`, the affine hull of a bipartite cone.
    Balance,
}

/// `f(x) = sum coeffs[v] * x_v`, read as `f >= 0` (or `= 0` for [`FormKind::Balance`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<i64>,
    pub kind: FormKind,
    /// The form vanishes on every edge vector, hence on the whole cone.
    pub implicit_equality: bool,
}

impl LinearForm {
    fn new(g: &LabeledGraph, coeffs: Vec<i64>, kind: FormKind) -> Self {
        let implicit_equality = g.edges().iter().all(|&(a, b)| coeffs[a] + coeffs[b] == 0);
        LinearForm { coeffs, kind, implicit_equality }
    }

    pub fn eval(&self, d: &[u32]) -> i64 {
        self.coeffs.iter().zip(d).map(|(&c, &x)| c * x as i64).sum()
    }

    /// Non-zero coefficients keyed by vertex name.
    pub fn coeff_map(&self, g: &LabeledGraph) -> BTreeMap<String, i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (g.name(v).into(), c))
            .collect()
    }
}

/// The lattice `ZA` spanned by the edge vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// Connected non-bipartite graph: vectors with even coordinate sum.
    EvenTotal,
    /// Connected bipartite graph with sides `side[v]`: balanced vectors.
    Balanced { side: Vec<bool> },
}

impl Lattice {
    pub fn contains(&self, d: &[u32]) -> bool {
        match self {
            Lattice::EvenTotal => d.iter().map(|&x| x as u64).sum::<u64>() % 2 == 0,
            Lattice::Balanced { side } => {
                let s: i64 = d.iter().zip(side).map(|(&x, &s)| if s { x as i64 } else { -(x as i64) }).sum();
                s == 0
            }
        }
    }
}

/// Facet description of the edge cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    pub forms: Vec<LinearForm>,
    pub lattice: Lattice,
    pub bipartite: bool,
}

impl InequalitySystem {
    pub fn cone_contains(&self, d: &[u32]) -> bool {
        self.forms.iter().all(|f| match f.kind {
            FormKind::Balance => f.eval(d) == 0,
            _ => f.eval(d) >= 0,
        })
    }

    /// Relative interior: implicit equalities hold with equality, every
    /// other form strictly.
    pub fn relint_contains(&self, d: &[u32]) -> bool {
        self.forms.iter().all(|f| {
            let x = f.eval(d);
            if f.implicit_equality {
                x == 0
            } else {
                x > 0
            }
        })
    }

    pub fn interior_lattice_point(&self, d: &[u32]) -> bool {
        self.lattice.contains(d) && self.relint_contains(d)
    }
}

/// An independent set together with its neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FundamentalSet {
    pub set: Vec<VertexId>,
    pub neighbourhood: Vec<VertexId>,
}

fn neighbourhood(g: &LabeledGraph, t: &[VertexId]) -> Vec<VertexId> {
    let mut mark = vec![false; g.vertex_count()];
    for &x in t {
        for &y in g.neighbors(x) {
            mark[y] = true;
        }
    }
    (0..g.vertex_count()).filter(|&v| mark[v]).collect()
}

fn has_odd_cycle(g: &LabeledGraph, comp: &[VertexId]) -> bool {
    let mut mask = vec![false; g.vertex_count()];
    for &v in comp {
        mask[v] = true;
    }
    g.two_colouring_within(&mask).is_none()
}

/// Vertices `j` such that every component of `G \ j` contains an odd cycle.
pub fn regular_vertices(g: &LabeledGraph) -> Vec<VertexId> {
    let n = g.vertex_count();
    (0..n)
        .filter(|&j| {
            let mut mask = vec![true; n];
            mask[j] = false;
            g.components_within(&mask).iter().all(|c| has_odd_cycle(g, c))
        })
        .collect()
}

/// All non-empty independent sets, in lexicographic order of sorted members.
fn independent_sets(g: &LabeledGraph) -> Vec<Vec<VertexId>> {
    fn go(g: &LabeledGraph, from: usize, cur: &mut Vec<VertexId>, blocked: &mut [u32], out: &mut Vec<Vec<VertexId>>) {
        for v in from..g.vertex_count() {
            if blocked[v] > 0 {
                continue;
            }
            cur.push(v);
            for &w in g.neighbors(v) {
                blocked[w] += 1;
            }
            out.push(cur.clone());
            go(g, v + 1, cur, blocked, out);
            for &w in g.neighbors(v) {
                blocked[w] -= 1;
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut blocked = vec![0; g.vertex_count()];
    go(g, 0, &mut Vec::new(), &mut blocked, &mut out);
    out
}

/// Whether the bipartite graph between `t` and `N(t)` is connected.
fn star_connected(g: &LabeledGraph, t: &[VertexId], nt: &[VertexId]) -> bool {
    let n = g.vertex_count();
    let mut in_t = vec![false; n];
    let mut in_n = vec![false; n];
    for &x in t {
        in_t[x] = true;
    }
    for &x in nt {
        in_n[x] = true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![t[0]];
    seen[t[0]] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            let ok = (in_t[x] && in_n[y]) || (in_n[x] && in_t[y]);
            if ok && !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == t.len() + nt.len()
}

/// Fundamental sets of a non-bipartite graph.
pub fn fundamental_sets(g: &LabeledGraph) -> Vec<FundamentalSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for t in independent_sets(g) {
        let nt = neighbourhood(g, &t);
        if !star_connected(g, &t, &nt) {
            continue;
        }
        let mut rest = vec![true; n];
        for &v in t.iter().chain(&nt) {
            rest[v] = false;
        }
        if g.components_within(&rest).iter().all(|c| has_odd_cycle(g, c)) {
            out.push(FundamentalSet { set: t, neighbourhood: nt });
        }
    }
    out
}

fn nonneg_form(g: &LabeledGraph, v: VertexId) -> LinearForm {
    let mut c = vec![0; g.vertex_count()];
    c[v] = 1;
    LinearForm::new(g, c, FormKind::NonNegative(v))
}

fn neighbourhood_form(g: &LabeledGraph, t: &[VertexId]) -> LinearForm {
    let mut c = vec![0; g.vertex_count()];
    for &v in t {
        c[v] -= 1;
    }
    for v in neighbourhood(g, t) {
        c[v] += 1;
    }
    LinearForm::new(g, c, FormKind::Neighbourhood(t.to_vec()))
}

/// The facet system of the edge cone: the bipartite description when `G`
/// is bipartite, the regular-vertex / fundamental-set one otherwise.
pub fn inequality_system(g: &LabeledGraph) -> Result<InequalitySystem> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !odd_cycle_condition(g) {
        return Err(Error::NotNormal);
    }
    let n = g.vertex_count();
    let mut forms = Vec::new();
    match g.bipartition() {
        Some(side) => {
            for v in 0..n {
                let mut mask = vec![true; n];
                mask[v] = false;
                if n == 1 || g.connected_within(&mask) {
                    forms.push(nonneg_form(g, v));
                }
            }
            let v1: Vec<VertexId> = (0..n).filter(|&v| side[v]).collect();
            // proper non-empty subsets of V1
            for bits in 1u64..(1u64 << v1.len()).saturating_sub(1) {
                let t: Vec<VertexId> = (0..v1.len()).filter(|&i| bits >> i & 1 == 1).map(|i| v1[i]).collect();
                let nt = neighbourhood(g, &t);
                let mut inside = vec![false; n];
                for &v in t.iter().chain(&nt) {
                    inside[v] = true;
                }
                let outside: Vec<bool> = inside.iter().map(|&b| !b).collect();
                if g.connected_within(&inside) && g.connected_within(&outside) {
                    forms.push(neighbourhood_form(g, &t));
                }
            }
            let coeffs = side.iter().map(|&s| if s { 1 } else { -1 }).collect();
            forms.push(LinearForm::new(g, coeffs, FormKind::Balance));
            Ok(InequalitySystem { forms, lattice: Lattice::Balanced { side }, bipartite: true })
        }
        None => {
            for v in regular_vertices(g) {
                forms.push(nonneg_form(g, v));
            }
            for fs in fundamental_sets(g) {
                forms.push(neighbourhood_form(g, &fs.set));
            }
            Ok(InequalitySystem { forms, lattice: Lattice::EvenTotal, bipartite: false })
        }
    }
}

/// Mixed-radix walk over the box `0 <= d <= bound`.
pub(crate) fn for_each_in_box(bound: &[u32], mut f: impl FnMut(&[u32])) {
    let mut d = vec![0u32; bound.len()];
    loop {
        f(&d);
        let mut i = 0;
        loop {
            if i == d.len() {
                return;
            }
            if d[i] < bound[i] {
                d[i] += 1;
                break;
            }
            d[i] = 0;
            i += 1;
        }
    }
}

/// `d` is an interior lattice point and `d - v_e` is not one for any edge.
pub fn is_minimal_interior(g: &LabeledGraph, sys: &InequalitySystem, d: &[u32]) -> bool {
    if !sys.interior_lattice_point(d) {
        return false;
    }
    let mut e = d.to_vec();
    for &(a, b) in g.edges() {
        if d[a] == 0 || d[b] == 0 {
            continue;
        }
        e[a] -= 1;
        e[b] -= 1;
        let below = sys.interior_lattice_point(&e);
        e[a] += 1;
        e[b] += 1;
        if below {
            return false;
        }
    }
    true
}

/// Minimality checked against every smaller lattice point: `d` is minimal
/// iff no interior lattice point `d' < d` has `d - d'` in the cone.
/// Relies on normality (cone ∩ lattice is the edge monoid).
pub fn is_minimal_interior_brute(sys: &InequalitySystem, d: &[u32]) -> bool {
    if !sys.interior_lattice_point(d) {
        return false;
    }
    let mut minimal = true;
    for_each_in_box(d, |dd| {
        if !minimal || dd == d {
            return;
        }
        if sys.interior_lattice_point(dd) {
            let diff: Vec<u32> = d.iter().zip(dd).map(|(a, b)| a - b).collect();
            if sys.lattice.contains(&diff) && sys.cone_contains(&diff) {
                minimal = false;
            }
        }
    });
    minimal
}

/// Minimal lattice points of the relative interior, found by scanning the
/// box `0 <= d <= D_G`. Only offered for recognised family members, where
/// all of them are known to lie in that box.
pub fn minimal_interior_vectors(g: &LabeledGraph) -> Result<Vec<Multidegree>> {
    if recognize(g).is_none() {
        return Err(Error::UnsupportedFamily);
    }
    let sys = inequality_system(g)?;
    let mut out = Vec::new();
    for_each_in_box(&dense_big_d(g), |d| {
        if is_minimal_interior(g, &sys, d) {
            out.push(Multidegree::from_dense(g, d));
        }
    });
    out.sort();
    Ok(out)
}

/// Independent sets whose neighbourhood forms describe the cone of an
/// even multi-path graph, written out path by path. Used to cross-check
/// the general bipartite description. Each path has inner vertices
/// `u_1 .. u_{2l-1}`; the odd-indexed ones form the listed sets.
pub fn listed_even_multipath_sets(g: &LabeledGraph) -> Option<Vec<Vec<VertexId>>> {
    let Shape::MultiPath { paths, .. } = recognize(g)?.shape else { return None };
    if paths.iter().any(|p| p.len() % 2 == 0) {
        return None;
    }
    let m = paths.len();
    // odd-indexed vertex i (1-based) of path j
    let odd = |j: usize, i: usize| paths[j][2 * i - 2];
    let half: Vec<usize> = paths.iter().map(|p| p.len().div_ceil(2)).collect();
    let all_of = |j: usize| (1..=half[j]).map(move |i| odd(j, i));
    let mut out: Vec<Vec<VertexId>> = Vec::new();

    // (i) and (ii): prefixes / suffixes on an arbitrary set of paths
    let combos = |lo: usize, hi: &dyn Fn(usize) -> usize, prefix: bool, out: &mut Vec<Vec<VertexId>>| {
        for mask in 1u32..(1 << m) {
            let chosen: Vec<usize> = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
            let ranges: Vec<(usize, usize)> = chosen.iter().map(|&j| (lo, hi(j))).collect();
            if ranges.iter().any(|&(a, b)| a > b) {
                continue;
            }
            let mut ks: Vec<usize> = ranges.iter().map(|r| r.0).collect();
            loop {
                let mut t = Vec::new();
                for (idx, &j) in chosen.iter().enumerate() {
                    if prefix {
                        t.extend((1..=ks[idx]).map(|i| odd(j, i)));
                    } else {
                        t.extend((ks[idx]..=half[j]).map(|i| odd(j, i)));
                    }
                }
                out.push(t);
                let mut i = 0;
                while i < ks.len() && ks[i] == ranges[i].1 {
                    ks[i] = ranges[i].0;
                    i += 1;
                }
                if i == ks.len() {
                    break;
                }
                ks[i] += 1;
            }
        }
    };
    combos(1, &|j| half[j] - 1, true, &mut out);
    combos(2, &|j| half[j], false, &mut out);

    for p in 0..m {
        let others: Vec<VertexId> = (0..m).filter(|&j| j != p).flat_map(all_of).collect();
        let l = half[p];
        // (iii)
        out.push(others.clone());
        // (iv)
        for f in 1..l {
            let mut t = others.clone();
            t.extend((1..=f).map(|i| odd(p, i)));
            out.push(t);
        }
        // (v)
        for k in 2..=l {
            let mut t = others.clone();
            t.extend((k..=l).map(|i| odd(p, i)));
            out.push(t);
        }
        // (vi)
        for f in 1..=l {
            for k in f + 2..=l {
                let mut t = others.clone();
                t.extend((1..=f).map(|i| odd(p, i)));
                t.extend((k..=l).map(|i| odd(p, i)));
                out.push(t);
            }
        }
    }
    // (vii)
    for j in 0..m {
        for f in 2..half[j] {
            for k in f..half[j] {
                out.push((f..=k).map(|i| odd(j, i)).collect());
            }
        }
    }
    for t in &mut out {
        t.sort_unstable();
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// The five fundamental sets of a two-ear graph with `m >= 2`.
pub fn listed_two_ear_sets(g: &LabeledGraph) -> Option<Vec<Vec<VertexId>>> {
    let Shape::TwoEar { v1, v2, x1, x2, y1, y2, spokes } = recognize(g)?.shape else { return None };
    let mut a = spokes.clone();
    a.extend([x1, y2]);
    let mut b = spokes;
    b.extend([x2, y1]);
    let mut out = vec![a, b, vec![v1, v2], vec![v1, y1], vec![v2, x1]];
    for t in &mut out {
        t.sort_unstable();
    }
    out.sort();
    Some(out)
}

/// Cone membership from a list of neighbourhood sets plus `x >= 0` for
/// every vertex (and the balance equation when bipartite).
pub fn listed_system(g: &LabeledGraph, sets: &[Vec<VertexId>]) -> InequalitySystem {
    let mut forms: Vec<LinearForm> = (0..g.vertex_count()).map(|v| nonneg_form(g, v)).collect();
    forms.extend(sets.iter().map(|t| neighbourhood_form(g, t)));
    match g.bipartition() {
        Some(side) => {
            let coeffs = side.iter().map(|&s| if s { 1 } else { -1 }).collect();
            forms.push(LinearForm::new(g, coeffs, FormKind::Balance));
            InequalitySystem { forms, lattice: Lattice::Balanced { side }, bipartite: true }
        }
        None => InequalitySystem { forms, lattice: Lattice::EvenTotal, bipartite: false },
    }
}
