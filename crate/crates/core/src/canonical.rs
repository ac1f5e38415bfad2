//! Minimal generators of the canonical module `ω` and the top-degree sets
//! `N_H = {D_H - α}`.
//!
//! `ω` is the ideal spanned by the lattice points of the relative interior
//! of the edge cone, so its minimal generators are the minimal interior
//! lattice points. For each supported family they are written out below.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cone::minimal_interior_vectors;
use crate::graph::{multipath_kind, recognize, LabeledGraph, MultiPathKind, Shape, VertexId};
use crate::multidegree::{big_d, dense_big_d, dense_theta, theta, Multidegree};
use crate::{Error, Result};

/// Minimal generators of `ω_{K[G]}` together with `Θ_G` and `D_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalGenerators {
    pub generators: Vec<Multidegree>,
    pub theta: Multidegree,
    pub d: Multidegree,
}

impl CanonicalGenerators {
    /// `N_G = {D_G - α}` over the generators.
    pub fn top_degrees(&self) -> Vec<Multidegree> {
        let mut out: Vec<Multidegree> =
            self.generators.iter().filter_map(|a| self.d.checked_sub(a)).collect();
        out.sort();
        out
    }
}

struct Dense {
    n: usize,
}

impl Dense {
    fn zero(&self) -> Vec<u32> {
        vec![0; self.n]
    }

    fn with(&self, base: &[u32], adds: &[(VertexId, u32)]) -> Vec<u32> {
        let mut v = base.to_vec();
        for &(x, k) in adds {
            v[x] += k;
        }
        v
    }
}

fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Generators of `ω` for the sub-multi-path on `paths` (inner vertex lists)
/// between `a` and `b`, as dense vectors over `n` vertices.
fn multipath_part(n: usize, a: VertexId, b: VertexId, paths: &[&Vec<VertexId>]) -> Vec<Vec<u32>> {
    let mut inner = vec![0u32; n];
    for p in paths {
        for &x in p.iter() {
            inner[x] += 1;
        }
    }
    let k = paths.len() as u32;
    if k == 1 {
        // a single path is a polynomial ring; ω is generated in degree D
        let mut d: Vec<u32> = inner.iter().map(|x| 2 * x).collect();
        d[a] += 1;
        d[b] += 1;
        return vec![d];
    }
    let even = paths.iter().all(|p| p.len() % 2 == 1);
    (1..k)
        .map(|l| {
            let mut v = inner.clone();
            if even {
                v[a] += l;
                v[b] += k - l;
            } else {
                v[a] += l;
                v[b] += l;
            }
            v
        })
        .collect()
}

/// Closed-form generators for a recognised shape, dense over the vertex
/// ids of `g`.
pub fn shape_generators(g: &LabeledGraph, shape: &Shape) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let dz = Dense { n };
    let th = dense_theta(g);
    match shape {
        Shape::Compact { bigs, petals, connector } => {
            let counts: Vec<u32> = petals.iter().map(|p| p.len() as u32).collect();
            match bigs.len() {
                1 => (1..counts[0]).map(|l| dz.with(&th, &[(bigs[0], 2 * l)])).collect(),
                2 => {
                    let (u, v, m, k) = (bigs[0], bigs[1], counts[0], counts[1]);
                    if connector.is_empty() {
                        let mut out: Vec<Vec<u32>> =
                            (0..m).map(|l| dz.with(&th, &[(v, 1), (u, 2 * l + 1)])).collect();
                        out.extend((1..k).map(|l| dz.with(&th, &[(u, 1), (v, 2 * l + 1)])));
                        out
                    } else {
                        let mut out: Vec<Vec<u32>> =
                            (1..=m).map(|l| dz.with(&th, &[(v, 1), (u, 2 * l)])).collect();
                        out.extend((1..=k).map(|l| dz.with(&th, &[(u, 1), (v, 2 * l)])));
                        out
                    }
                }
                _ => {
                    let mut out = Vec::new();
                    for c in 0..3 {
                        let (x, y, z) = (bigs[c], bigs[(c + 1) % 3], bigs[(c + 2) % 3]);
                        out.extend((1..=counts[c]).map(|l| dz.with(&th, &[(y, 1), (z, 1), (x, 2 * l)])));
                    }
                    out
                }
            }
        }
        Shape::MultiPath { apexes: [a, b], paths } => {
            let odd: Vec<&Vec<VertexId>> = paths.iter().filter(|p| p.len() % 2 == 0).collect();
            let even: Vec<&Vec<VertexId>> = paths.iter().filter(|p| p.len() % 2 == 1).collect();
            let lengths: Vec<u32> = paths.iter().map(|p| p.len() as u32 + 1).collect();
            match multipath_kind(&lengths) {
                MultiPathKind::Even | MultiPathKind::Odd => {
                    let all: Vec<&Vec<VertexId>> = paths.iter().collect();
                    multipath_part(n, *a, *b, &all)
                }
                MultiPathKind::Mixed => {
                    // K[G] is the tensor product of the odd and even parts
                    let po = multipath_part(n, *a, *b, &odd);
                    let pe = multipath_part(n, *a, *b, &even);
                    let mut out = Vec::new();
                    for x in &po {
                        for y in &pe {
                            out.push(add(x, y));
                        }
                    }
                    out
                }
            }
        }
        Shape::TwoEar { v1, v2, x1, x2, y1, y2, spokes } => {
            let m = spokes.len() as u32 + 1;
            let mut base = dz.zero();
            for &s in spokes {
                base[s] = 1;
            }
            (1..=m)
                .map(|l| dz.with(&base, &[(*x1, 1), (*x2, 1), (*y1, 1), (*y2, 1), (*v1, l), (*v2, m + 1 - l)]))
                .collect()
        }
        Shape::OneEar { v1, v2, x1, y1, y2, spokes } => {
            let m = spokes.len() as u32 + 1;
            let mut base = dz.zero();
            for &s in spokes {
                base[s] = 1;
            }
            (1..m)
                .map(|l| dz.with(&base, &[(*x1, 1), (*y1, 2), (*y2, 1), (*v1, l), (*v2, m + 1 - l)]))
                .collect()
        }
    }
}

/// Minimal generators of `ω_{K[G]}` from the closed forms.
pub fn canonical_generators(g: &LabeledGraph) -> Result<CanonicalGenerators> {
    let r = recognize(g).ok_or(Error::UnsupportedFamily)?;
    let mut generators: Vec<Multidegree> =
        shape_generators(g, &r.shape).iter().map(|d| Multidegree::from_dense(g, d)).collect();
    generators.sort();
    generators.dedup();
    Ok(CanonicalGenerators { generators, theta: theta(g), d: big_d(g) })
}

/// [`canonical_generators`], compared against a brute-force scan of the
/// relative interior.
pub fn canonical_generators_checked(g: &LabeledGraph) -> Result<CanonicalGenerators> {
    let closed = canonical_generators(g)?;
    let brute = minimal_interior_vectors(g)?;
    if closed.generators != brute {
        let show = |v: &[Multidegree]| {
            v.iter().map(|d| d.render_with_theta(&closed.theta)).collect::<Vec<_>>().join(", ")
        };
        return Err(Error::GeneratorMismatch(format!(
            "closed form [{}], scan [{}]",
            show(&closed.generators),
            show(&brute)
        )));
    }
    Ok(closed)
}

/// `N_G`: the multidegrees of the last syzygies of `K[G]`.
pub fn n_set(g: &LabeledGraph) -> Result<Vec<Multidegree>> {
    Ok(canonical_generators(g)?.top_degrees())
}

/// Second-to-top degrees of a type-3 compact graph with petal counts
/// `m, n, k` at `u, v, w`: `Θ u^{2l} v^{2n} w^{2k}` (`l < m`) and its
/// rotations with rank 1, and `Θ u^{2m} v^{2n} w^{2k}` with rank 2.
pub fn second_top_type3(g: &LabeledGraph) -> Result<Vec<(Multidegree, u32)>> {
    let r = recognize(g).ok_or(Error::UnsupportedFamily)?;
    let Shape::Compact { bigs, petals, .. } = &r.shape else { return Err(Error::UnsupportedFamily) };
    if bigs.len() != 3 {
        return Err(Error::UnsupportedFamily);
    }
    let th = dense_theta(g);
    let counts: Vec<u32> = petals.iter().map(|p| p.len() as u32).collect();
    let top: Vec<u32> = counts.iter().map(|c| 2 * c).collect();
    let mut out = Vec::new();
    for c in 0..3 {
        for l in 1..counts[c] {
            let mut d = th.clone();
            for k in 0..3 {
                d[bigs[k]] += if k == c { 2 * l } else { top[k] };
            }
            out.push((Multidegree::from_dense(g, &d), 1));
        }
    }
    let mut d = th;
    for k in 0..3 {
        d[bigs[k]] += top[k];
    }
    out.push((Multidegree::from_dense(g, &d), 2));
    out.sort();
    Ok(out)
}

/// Cohen-Macaulay type: the number of minimal generators of `ω`.
pub fn cm_type(g: &LabeledGraph) -> Result<usize> {
    Ok(canonical_generators(g)?.generators.len())
}

/// `D_G` as a dense vector; re-exported for callers working with ids.
pub fn dense_d(g: &LabeledGraph) -> Vec<u32> {
    dense_big_d(g)
}
