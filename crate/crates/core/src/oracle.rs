//! Brute-force Betti numbers via squarefree divisor complexes.
//!
//! For a positive affine monoid algebra `R = K[C]` presented over
//! `S = K[x_1..x_r]` by the degrees of its generators, and a monomial ideal
//! `I` of `R`, `β_{i,h}(I) = dim H̃_{i-1}(Γ_h(I))` where
//! `Γ_h(I) = {F ⊆ [r] : h - sum_{j ∈ F} deg x_j ∈ I}`. Taking `I = R`
//! gives the Betti numbers of `R` itself.
//!
//! Nothing here uses the closed formulas: the canonical module enters
//! only through the relative interior of the edge cone.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::cone::inequality_system;
use crate::formula::BettiTable;
use crate::graph::{pdim, LabeledGraph};
use crate::homology::{homology_of_faces, Face, Field, HomologyProfile};
use crate::multidegree::{dense_big_d, Multidegree};
use crate::{Error, Result};

/// Default prime for the modular cross-check.
pub const DEFAULT_PRIME: u32 = 2_147_483_647;

/// Default cap on the number of points in a dense scan.
pub const DEFAULT_CAP: u128 = 4_000_000;

/// Coordinates (named) and the degrees of the algebra generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAlgebraPresentation {
    pub coords: Vec<String>,
    pub generators: Vec<Vec<u32>>,
}

impl MonomialAlgebraPresentation {
    /// `K[G]`: coordinates are vertices, generators are the edge vectors.
    pub fn edge_ring(g: &LabeledGraph) -> Self {
        MonomialAlgebraPresentation {
            coords: (0..g.vertex_count()).map(|v| g.name(v).to_string()).collect(),
            generators: (0..g.edge_count()).map(|e| g.edge_vector(e)).collect(),
        }
    }

    /// A polynomial ring: one unit generator per coordinate.
    pub fn polynomial<S: AsRef<str>>(vars: &[S]) -> Self {
        let r = vars.len();
        MonomialAlgebraPresentation {
            coords: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            generators: (0..r)
                .map(|i| {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    v
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn to_dense(&self, d: &Multidegree) -> Result<Vec<u32>> {
        let mut out = vec![0; self.dim()];
        for (k, e) in d.iter() {
            let i = self.coords.iter().position(|c| c == k).ok_or_else(|| Error::UnknownVertex(k.to_string()))?;
            out[i] = e;
        }
        Ok(out)
    }

    pub fn from_dense(&self, d: &[u32]) -> Multidegree {
        Multidegree::from_pairs(self.coords.iter().zip(d).map(|(c, &e)| (c.as_str(), e)))
    }
}

fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Writes `d` as a non-negative combination of the generators, returning
/// the multiplicities, or `None` if `d` is not in the monoid.
pub fn monoid_member(pres: &MonomialAlgebraPresentation, d: &[u32]) -> Option<Vec<u32>> {
    let step = pres.generators.iter().map(|g| g.iter().map(|&x| x as u64).sum()).fold(0, gcd);
    let mut failed = BTreeSet::new();
    let mut mult = vec![0u32; pres.generators.len()];
    if member_dfs(pres, d.to_vec(), step, &mut failed, &mut mult) {
        Some(mult)
    } else {
        None
    }
}

fn member_dfs(
    pres: &MonomialAlgebraPresentation,
    d: Vec<u32>,
    step: u64,
    failed: &mut BTreeSet<Vec<u32>>,
    mult: &mut [u32],
) -> bool {
    let Some(c) = d.iter().position(|&x| x > 0) else { return true };
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    if step > 0 && total % step != 0 {
        return false;
    }
    if failed.contains(&d) {
        return false;
    }
    for (j, g) in pres.generators.iter().enumerate() {
        if g[c] > 0 && le(g, &d) {
            mult[j] += 1;
            if member_dfs(pres, sub(&d, g), step, failed, mult) {
                return true;
            }
            mult[j] -= 1;
        }
    }
    failed.insert(d);
    false
}

/// `Γ_h(I)` for `I` generated by `ideal` (dense degrees) over `pres`.
pub fn gamma_complex(
    pres: &MonomialAlgebraPresentation,
    ideal: &[Vec<u32>],
    h: &[u32],
) -> Result<crate::homology::SimplicialComplex> {
    let r = pres.generators.len();
    if r > 64 {
        return Err(Error::InvalidParameters("more than 64 generators".into()));
    }
    let in_ideal = |x: &[u32]| ideal.iter().any(|a| le(a, x) && monoid_member(pres, &sub(x, a)).is_some());
    let mut faces = Vec::new();
    if in_ideal(h) {
        let mut stack: Vec<(Face, usize, Vec<u32>)> = vec![(0, 0, h.to_vec())];
        while let Some((f, from, res)) = stack.pop() {
            faces.push(f);
            for j in from..r {
                let g = &pres.generators[j];
                if le(g, &res) {
                    let rest = sub(&res, g);
                    if in_ideal(&rest) {
                        stack.push((f | 1 << j, j + 1, rest));
                    }
                }
            }
        }
    }
    // maximal faces only
    let set: BTreeSet<Face> = faces.iter().copied().collect();
    let facets = faces.iter().copied().filter(|&f| (0..r).all(|j| f >> j & 1 == 1 || !set.contains(&(f | 1 << j))));
    if faces.is_empty() {
        return Ok(crate::homology::SimplicialComplex::void(r));
    }
    crate::homology::SimplicialComplex::from_facets(r, facets)
}

/// `β_{i,h}(I)` from the homology of `Γ_h(I)`.
pub fn betti_oracle(
    pres: &MonomialAlgebraPresentation,
    ideal: &[Vec<u32>],
    i: usize,
    h: &[u32],
    field: Field,
) -> Result<u64> {
    let c = gamma_complex(pres, ideal, h)?;
    Ok(crate::homology::reduced_homology(&c, field).get(i))
}

/// The unit ideal, i.e. the algebra itself.
pub fn unit_ideal(pres: &MonomialAlgebraPresentation) -> Vec<Vec<u32>> {
    vec![vec![0; pres.dim()]]
}

/// Homology of one `Γ_h`, over `Q` and over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub index: usize,
    pub degree: Vec<u32>,
    pub rational: HomologyProfile,
    pub modular: HomologyProfile,
    pub faces: Option<Vec<Face>>,
}

/// Dense tables over the box `0 <= h <= bound` answering "is `h` in the
/// ideal", from which every `Γ_h` is read off by lookups.
pub struct BoxScanner {
    bound: Vec<u32>,
    strides: Vec<usize>,
    len: usize,
    generators: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    in_ideal: Vec<bool>,
}

/// Which ideal to scan.
pub enum IdealSpec<'a> {
    Generators(&'a [Vec<u32>]),
    /// A membership predicate evaluated at every box point.
    Predicate(&'a dyn Fn(&[u32]) -> bool),
}

impl BoxScanner {
    pub fn region_size(bound: &[u32]) -> u128 {
        bound.iter().map(|&b| b as u128 + 1).product()
    }

    pub fn new(pres: &MonomialAlgebraPresentation, ideal: IdealSpec<'_>, bound: &[u32], cap: u128) -> Result<Self> {
        let size = Self::region_size(bound);
        if size > cap {
            return Err(Error::RegionTooLarge { size, cap });
        }
        if pres.generators.len() > 64 {
            return Err(Error::InvalidParameters("more than 64 generators".into()));
        }
        let len = size as usize;
        let n = bound.len();
        let mut strides = vec![1usize; n];
        for i in 1..n {
            strides[i] = strides[i - 1] * (bound[i - 1] as usize + 1);
        }
        let generators: Vec<Vec<u32>> = pres.generators.clone();
        let offsets: Vec<usize> =
            generators.iter().map(|g| g.iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum()).collect();
        let mut by_coord: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (j, g) in generators.iter().enumerate() {
            for c in 0..n {
                if g[c] > 0 {
                    by_coord[c].push(j);
                }
            }
        }
        // monoid membership, smallest index first
        let mut monoid = vec![false; len];
        let mut d = vec![0u32; n];
        for idx in 0..len {
            monoid[idx] = match d.iter().position(|&x| x > 0) {
                None => true,
                Some(c) => by_coord[c].iter().any(|&j| le(&generators[j], &d) && monoid[idx - offsets[j]]),
            };
            odometer(&mut d, bound);
        }
        let in_ideal = match ideal {
            IdealSpec::Generators(gens) => {
                let mut t = vec![false; len];
                let gens_off: Vec<usize> =
                    gens.iter().map(|g| g.iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum()).collect();
                let mut d = vec![0u32; n];
                for idx in 0..len {
                    t[idx] = gens.iter().zip(&gens_off).any(|(a, &o)| le(a, &d) && monoid[idx - o]);
                    odometer(&mut d, bound);
                }
                t
            }
            IdealSpec::Predicate(p) => {
                let mut t = vec![false; len];
                let mut d = vec![0u32; n];
                for idx in 0..len {
                    t[idx] = monoid[idx] && p(&d);
                    odometer(&mut d, bound);
                }
                t
            }
        };
        Ok(BoxScanner { bound: bound.to_vec(), strides, len, generators, offsets, in_ideal })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bound(&self) -> &[u32] {
        &self.bound
    }

    pub fn index_of(&self, d: &[u32]) -> Option<usize> {
        if !le(d, &self.bound) {
            return None;
        }
        Some(d.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum())
    }

    pub fn degree(&self, idx: usize) -> Vec<u32> {
        self.bound.iter().zip(&self.strides).map(|(&b, &s)| ((idx / s) % (b as usize + 1)) as u32).collect()
    }

    pub fn in_ideal(&self, idx: usize) -> bool {
        self.in_ideal[idx]
    }

    /// Faces of `Γ_h` with at most `max_size` elements.
    pub fn faces(&self, idx: usize, max_size: usize) -> Vec<Face> {
        let mut out = Vec::new();
        if !self.in_ideal[idx] {
            return out;
        }
        let r = self.generators.len();
        let d = self.degree(idx);
        let mut stack: Vec<(Face, usize, usize, Vec<u32>)> = vec![(0, 0, idx, d)];
        while let Some((f, from, at, res)) = stack.pop() {
            out.push(f);
            if f.count_ones() as usize >= max_size {
                continue;
            }
            for j in from..r {
                let g = &self.generators[j];
                if le(g, &res) && self.in_ideal[at - self.offsets[j]] {
                    stack.push((f | 1 << j, j + 1, at - self.offsets[j], sub(&res, g)));
                }
            }
        }
        out
    }

    /// Full homology at one box point; `None` when `Γ_h` is void or a cone,
    /// where it vanishes over every field.
    pub fn homology_at(&self, idx: usize, prime: u32, keep_faces: bool) -> Option<DegreeHomology> {
        let faces = self.faces(idx, usize::MAX);
        if faces.is_empty() || is_cone(&faces, self.generators.len()) {
            return None;
        }
        let rational = homology_of_faces(&faces, Field::Rational);
        let modular = homology_of_faces(&faces, Field::Prime(prime));
        if rational.is_zero() && modular.is_zero() {
            return None;
        }
        Some(DegreeHomology {
            index: idx,
            degree: self.degree(idx),
            rational,
            modular,
            faces: keep_faces.then_some(faces),
        })
    }

    /// `(dim H̃_{-1}, dim H̃_0)` from the 1-skeleton alone.
    pub fn low_homology_at(&self, idx: usize) -> (u64, u64) {
        let faces = self.faces(idx, 2);
        if faces.is_empty() {
            return (0, 0);
        }
        if faces.len() == 1 {
            return (1, 0);
        }
        let r = self.generators.len();
        let verts: Vec<usize> = faces.iter().filter(|f| f.count_ones() == 1).map(|f| f.trailing_zeros() as usize).collect();
        let mut parent: Vec<usize> = (0..r).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = verts.len();
        for &f in faces.iter().filter(|f| f.count_ones() == 2) {
            let a = f.trailing_zeros() as usize;
            let b = 63 - f.leading_zeros() as usize;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        (0, comps as u64 - 1)
    }

    /// Non-vanishing homology over an index range, in order.
    pub fn scan_range(&self, range: Range<usize>, prime: u32, keep_faces: bool) -> Vec<DegreeHomology> {
        range.filter_map(|idx| self.homology_at(idx, prime, keep_faces)).collect()
    }
}

fn odometer(d: &mut [u32], bound: &[u32]) {
    for i in 0..d.len() {
        if d[i] < bound[i] {
            d[i] += 1;
            return;
        }
        d[i] = 0;
    }
}

/// A vertex `e` is a cone point iff exactly half of the faces contain it.
fn is_cone(faces: &[Face], r: usize) -> bool {
    (0..r).any(|e| 2 * faces.iter().filter(|&&f| f >> e & 1 == 1).count() == faces.len())
}

/// Scan region for a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// All divisors of `D_G`; complete for `K[G]` since every Betti degree
    /// divides `D_G`.
    Divisors,
    /// All degrees with every exponent at most `k`.
    Box(u32),
}

impl Region {
    pub fn bound(&self, g: &LabeledGraph) -> Vec<u32> {
        match self {
            Region::Divisors => dense_big_d(g),
            Region::Box(k) => vec![*k; g.vertex_count()],
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub region: Region,
    pub cap: u128,
    pub prime: u32,
    pub keep_faces: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { region: Region::Divisors, cap: DEFAULT_CAP, prime: DEFAULT_PRIME, keep_faces: false }
    }
}

/// An oracle Betti table with the per-degree details behind it.
#[derive(Clone, Debug, Default)]
pub struct OracleTable {
    /// Ranks over `Q`.
    pub table: BettiTable,
    /// Degrees where `Q` and `F_p` disagree (torsion in some `Γ_h`).
    pub field_disagreements: Vec<Multidegree>,
    pub points_scanned: usize,
    /// `(degree, facets)` when requested.
    pub complexes: Vec<(Multidegree, Vec<Face>)>,
}

impl OracleTable {
    /// Assembles a table from scan results of the edge ring of `g`.
    pub fn from_results(g: &LabeledGraph, results: impl IntoIterator<Item = DegreeHomology>, scanned: usize) -> Self {
        let mut out = OracleTable { points_scanned: scanned, ..OracleTable::default() };
        let mut rows: Vec<BTreeMap<Multidegree, u64>> = Vec::new();
        for r in results {
            let deg = Multidegree::from_dense(g, &r.degree);
            if r.rational != r.modular {
                out.field_disagreements.push(deg.clone());
            }
            for (i, &b) in r.rational.dims.iter().enumerate() {
                if b > 0 {
                    while rows.len() <= i {
                        rows.push(BTreeMap::new());
                    }
                    rows[i].insert(deg.clone(), b);
                }
            }
            if let Some(f) = r.faces {
                out.complexes.push((deg, maximal(&f)));
            }
        }
        out.table = BettiTable { rows };
        out
    }
}

fn maximal(faces: &[Face]) -> Vec<Face> {
    let set: BTreeSet<Face> = faces.iter().copied().collect();
    let mut out: Vec<Face> = faces
        .iter()
        .copied()
        .filter(|&f| (0..64).all(|j| f >> j & 1 == 1 || !set.contains(&(f | 1 << j))))
        .collect();
    out.sort_unstable();
    out
}

/// Scanner for `K[G]` over a region.
pub fn edge_ring_scanner(g: &LabeledGraph, region: Region, cap: u128) -> Result<BoxScanner> {
    pdim(g)?;
    let pres = MonomialAlgebraPresentation::edge_ring(g);
    let unit = unit_ideal(&pres);
    BoxScanner::new(&pres, IdealSpec::Generators(&unit), &region.bound(g), cap)
}

/// Scanner for `ω_{K[G]}` over the divisors of `D_G`, with membership
/// taken from the relative interior of the edge cone.
pub fn canonical_module_scanner(g: &LabeledGraph, cap: u128) -> Result<BoxScanner> {
    let sys = inequality_system(g)?;
    let pres = MonomialAlgebraPresentation::edge_ring(g);
    let pred = |d: &[u32]| sys.relint_contains(d);
    BoxScanner::new(&pres, IdealSpec::Predicate(&pred), &dense_big_d(g), cap)
}

/// Brute-force multi-graded Betti table of `K[G]`.
pub fn betti_table_oracle(g: &LabeledGraph, opts: &OracleOptions) -> Result<OracleTable> {
    let sc = edge_ring_scanner(g, opts.region, opts.cap)?;
    let results = sc.scan_range(0..sc.len(), opts.prime, opts.keep_faces);
    Ok(OracleTable::from_results(g, results, sc.len()))
}

/// A failed comparison `β_{i,h}(ω)` vs `β_{p-i,D-h}(K[G])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityMismatch {
    pub i: usize,
    pub degree: Multidegree,
    pub omega: u64,
    pub ring: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualityReport {
    pub points_checked: usize,
    pub mismatches: Vec<DualityMismatch>,
}

/// Checks rows 0 and 1 of `ω` (computed from the cone) against rows `p`
/// and `p - 1` of a brute-force table of `K[G]` over the divisors of `D_G`.
pub fn duality_check(g: &LabeledGraph, ring: &BettiTable, cap: u128) -> Result<DualityReport> {
    let p = pdim(g)? as usize;
    let sc = canonical_module_scanner(g, cap)?;
    let d = dense_big_d(g);
    let mut report = DualityReport { points_checked: sc.len(), mismatches: Vec::new() };
    for idx in 0..sc.len() {
        let h = sc.degree(idx);
        let (b0, b1) = sc.low_homology_at(idx);
        let dual = Multidegree::from_dense(g, &sub(&d, &h));
        for (i, omega) in [(0usize, b0), (1, b1)] {
            if i > p {
                continue;
            }
            let r = ring.get(p - i, &dual);
            if r != omega {
                report.mismatches.push(DualityMismatch { i, degree: Multidegree::from_dense(g, &h), omega, ring: r });
            }
        }
    }
    Ok(report)
}
