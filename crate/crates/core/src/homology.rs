//! Finite simplicial complexes on at most 64 vertices and their reduced
//! homology over `Q` or `F_p`.
//!
//! Faces are bitmasks. The void complex (no faces at all) and the complex
//! `{∅}` are different: the first has no homology, the second has
//! `H̃_{-1} = K`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Face = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn void(ground: usize) -> Self {
        SimplicialComplex { ground, facets: Vec::new() }
    }

    /// The complex whose only face is `∅`.
    pub fn empty_face(ground: usize) -> Self {
        SimplicialComplex { ground, facets: vec![0] }
    }

    /// Complex generated by `facets`; non-maximal entries are dropped.
    pub fn from_facets(ground: usize, facets: impl IntoIterator<Item = Face>) -> Result<Self> {
        if ground > 64 {
            return Err(Error::InvalidParameters("at most 64 ground vertices".into()));
        }
        let limit = if ground == 64 { u64::MAX } else { (1u64 << ground) - 1 };
        let mut fs: Vec<Face> = facets.into_iter().collect();
        if fs.iter().any(|&f| f & !limit != 0) {
            return Err(Error::InvalidParameters("face outside the ground set".into()));
        }
        fs.sort_unstable_by_key(|f| core::cmp::Reverse(f.count_ones()));
        let mut kept: Vec<Face> = Vec::new();
        for f in fs {
            if !kept.iter().any(|&k| f & k == f) {
                kept.push(f);
            }
        }
        kept.sort_unstable();
        Ok(SimplicialComplex { ground, facets: kept })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| face & f == face)
    }

    /// Dimension, `-1` for `{∅}` and `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    /// Every face, sorted by size and then by mask.
    pub fn faces(&self) -> Vec<Face> {
        let mut all = BTreeSet::new();
        for &f in &self.facets {
            // all submasks of f
            let mut s = f;
            loop {
                all.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        let mut v: Vec<Face> = all.into_iter().collect();
        v.sort_unstable_by_key(|&f| (f.count_ones(), f));
        v
    }

    /// A vertex lying in every facet, if any (then the complex is a cone
    /// and acyclic).
    pub fn cone_apex(&self) -> Option<usize> {
        let common = self.facets.iter().fold(u64::MAX, |acc, &f| acc & f);
        if self.facets.is_empty() || common == 0 {
            None
        } else {
            Some(common.trailing_zeros() as usize)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Rational,
    /// Integers modulo a prime below `2^32`.
    Prime(u32),
}

/// `dims[i]` is `dim H̃_{i-1}`; indices past the end are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyProfile {
    pub dims: Vec<u64>,
}

impl HomologyProfile {
    pub fn get(&self, i: usize) -> u64 {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `sum (-1)^{i-1} dims[i]`, the reduced Euler characteristic.
    pub fn euler(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 1 { d as i64 } else { -(d as i64) }).sum()
    }

    fn trimmed(mut self) -> Self {
        while self.dims.last() == Some(&0) {
            self.dims.pop();
        }
        self
    }
}

pub fn reduced_homology(c: &SimplicialComplex, field: Field) -> HomologyProfile {
    if c.is_void() {
        return HomologyProfile::default();
    }
    if c.cone_apex().is_some() {
        return HomologyProfile::default();
    }
    homology_of_faces(&c.faces(), field)
}

/// Reduced Euler characteristic from face counts: `sum (-1)^{|F|} ... `
/// with `∅` counted in dimension `-1`.
pub fn reduced_euler_from_faces(faces: &[Face]) -> i64 {
    faces.iter().map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 }).sum()
}

/// Reduced homology of a downward closed face list (must contain `∅`
/// unless empty).
pub fn homology_of_faces(faces: &[Face], field: Field) -> HomologyProfile {
    if faces.is_empty() {
        return HomologyProfile::default();
    }
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let mut by_size: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    for v in &mut by_size {
        v.sort_unstable();
    }
    // rank[k] = rank of the boundary from size-k faces to size-(k-1) faces
    let mut rank = vec![0u64; top + 2];
    for k in 1..=top {
        let cols = &by_size[k - 1];
        let rows: Vec<Vec<(u32, i64)>> = by_size[k]
            .iter()
            .map(|&f| {
                let mut row = Vec::with_capacity(k);
                let mut sign = 1i64;
                let mut rest = f;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    let sub = f ^ bit;
                    if let Ok(j) = cols.binary_search(&sub) {
                        row.push((j as u32, sign));
                    }
                    sign = -sign;
                }
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        rank[k] = match field {
            Field::Prime(p) => rank_mod_p(rows, p),
            Field::Rational => rank_rational(rows),
        };
    }
    let dims = (0..=top).map(|k| by_size[k].len() as u64 - rank[k] - rank[k + 1]).collect();
    HomologyProfile { dims }.trimmed()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of a sparse integer matrix (rows of `(column, value)`, sorted by
/// column) over `F_p`.
pub fn rank_mod_p(rows: Vec<Vec<(u32, i64)>>, p: u32) -> u64 {
    let p = p as u64;
    let norm = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut pivots: BTreeMap<u32, Vec<(u32, u64)>> = BTreeMap::new();
    for row in rows {
        let mut r: Vec<(u32, u64)> = row.into_iter().map(|(c, v)| (c, norm(v))).filter(|e| e.1 != 0).collect();
        while let Some(&(lead, a)) = r.first() {
            match pivots.get(&lead) {
                Some(piv) => {
                    // pivot rows are monic, so subtract a * piv
                    r = axpy_mod(&r, piv, p - a, p);
                }
                None => {
                    let inv = pow_mod(a, p - 2, p);
                    for e in &mut r {
                        e.1 = e.1 * inv % p;
                    }
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len() as u64
}

/// `x + k * y` over `F_p`, dropping zeros.
fn axpy_mod(x: &[(u32, u64)], y: &[(u32, u64)], k: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, x[i - 1].1)
        } else if i == x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, y[j - 1].1 * k % p)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, (x[i - 1].1 + y[j - 1].1 * k) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// Integer arithmetic used by the fraction-free elimination; `None` means
/// the operation overflowed.
trait Exact: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Exact for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// `a * x - b * y` over sparse rows, then divided by the content.
fn combine<T: Exact>(x: &[(u32, T)], a: &T, y: &[(u32, T)], b: &T) -> Option<Vec<(u32, T)>> {
    let mut out: Vec<(u32, T)> = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, x[i - 1].1.mul(a)?)
        } else if i == x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, T::zero().sub(&y[j - 1].1.mul(b)?)?)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, x[i - 1].1.mul(a)?.sub(&y[j - 1].1.mul(b)?)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    let mut g = T::zero();
    for (_, v) in &out {
        g = g.gcd(v);
        if g.is_unit() {
            return Some(out);
        }
    }
    if !g.is_zero() {
        for e in &mut out {
            e.1 = e.1.div_exact(&g);
        }
    }
    Some(out)
}

fn rank_exact<T: Exact>(rows: Vec<Vec<(u32, T)>>) -> Option<u64> {
    let mut pivots: BTreeMap<u32, Vec<(u32, T)>> = BTreeMap::new();
    for mut r in rows {
        loop {
            let Some((lead, a)) = r.first().cloned() else { break };
            match pivots.get(&lead) {
                Some(piv) => {
                    let pa = &piv[0].1;
                    let g = pa.gcd(&a);
                    r = combine(&r, &pa.div_exact(&g), piv, &a.div_exact(&g))?;
                }
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    Some(pivots.len() as u64)
}

/// Rank over `Q`, exactly: fraction-free elimination in `i64`, redone with
/// big integers if anything overflows.
pub fn rank_rational(rows: Vec<Vec<(u32, i64)>>) -> u64 {
    if let Some(r) = rank_exact(rows.clone()) {
        return r;
    }
    let big = rows.into_iter().map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect()).collect();
    rank_exact::<BigInt>(big).unwrap_or(0)
}

/// Reduced homology over `Q` and `F_p`; they differ only with torsion.
pub fn homology_both(c: &SimplicialComplex, p: u32) -> (HomologyProfile, HomologyProfile) {
    (reduced_homology(c, Field::Rational), reduced_homology(c, Field::Prime(p)))
}
