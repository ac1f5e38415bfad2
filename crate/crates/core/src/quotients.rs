//! Ordered monomial ideals with regular quotients, the mapping-cone bound
//! on their Betti numbers, and the initial ideal of the toric ideal of a
//! two-ear graph.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::formula::{binomial, graded_table, betti_table, GradedBettiTable};
use crate::graph::{build_family, FamilySpec, LabeledGraph};
use crate::multidegree::Multidegree;
use crate::oracle::{BoxScanner, IdealSpec, MonomialAlgebraPresentation, DEFAULT_PRIME};
use crate::{Error, Result};

/// A minimal monomial generating set in a fixed order. Monomials are
/// multidegrees over variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMonomialIdeal {
    generators: Vec<Multidegree>,
}

impl OrderedMonomialIdeal {
    pub fn new(generators: Vec<Multidegree>) -> Result<Self> {
        for (i, a) in generators.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::NotMinimal("the unit monomial".into()));
            }
            for (j, b) in generators.iter().enumerate() {
                if i != j && a.divides(b) {
                    return Err(Error::NotMinimal(format!("{a} divides {b}")));
                }
            }
        }
        Ok(OrderedMonomialIdeal { generators })
    }

    pub fn generators(&self) -> &[Multidegree] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// All variables occurring, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.generators.iter().flat_map(|g| g.support().map(String::from)).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Minimal generators of `(prefix) : g`.
pub fn colon_ideal(prefix: &[Multidegree], g: &Multidegree) -> Result<Vec<Multidegree>> {
    let mut quots = Vec::with_capacity(prefix.len());
    for (j, a) in prefix.iter().enumerate() {
        let q = a.quotient_by_gcd(g);
        if q.is_zero() {
            return Err(Error::UnitColon { index: j });
        }
        quots.push(q);
    }
    quots.sort();
    quots.dedup();
    let minimal: Vec<Multidegree> = quots
        .iter()
        .filter(|q| !quots.iter().any(|r| r != *q && r.divides(q)))
        .cloned()
        .collect();
    Ok(minimal)
}

/// One step `(u_1, .., u_{j-1}) : u_j` of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonStep {
    /// Zero-based position `j` of `u_j`.
    pub index: usize,
    pub generators: Vec<Multidegree>,
    /// Minimal generators are pairwise coprime, hence a regular sequence.
    pub regular: bool,
}

impl ColonStep {
    pub fn length(&self) -> usize {
        self.generators.len()
    }
}

fn pairwise_coprime(gens: &[Multidegree]) -> bool {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if gens[i].support().any(|v| gens[j].get(v) > 0) {
                return false;
            }
        }
    }
    true
}

/// The colon chain of an ordered ideal, from the second generator on.
pub fn regular_quotients(ideal: &OrderedMonomialIdeal) -> Result<Vec<ColonStep>> {
    let g = ideal.generators();
    (1..g.len())
        .map(|j| {
            let generators = colon_ideal(&g[..j], &g[j])?;
            let regular = pairwise_coprime(&generators);
            Ok(ColonStep { index: j, generators, regular })
        })
        .collect()
}

/// `k_2, .., k_r` if every step is regular.
pub fn k_sequence(steps: &[ColonStep]) -> Result<Vec<usize>> {
    steps
        .iter()
        .map(|s| if s.regular { Ok(s.length()) } else { Err(Error::IrregularStep { index: s.index }) })
        .collect()
}

/// Iterated mapping cones give `β_i(I) <= sum_j C(k_j, i)` with `k_1 = 0`.
pub fn mapping_cone_bound(steps: &[ColonStep], i: usize) -> Result<u64> {
    let ks = k_sequence(steps)?;
    let first = binomial(0, i as u64);
    Ok(first + ks.iter().map(|&k| binomial(k as u64, i as u64)).sum::<u64>())
}

/// `(1, 1, 2, 2, 2, .., m-1 (m times))`: value `v` repeated `v + 1` times.
pub fn reference_k_sequence(m: usize) -> Vec<usize> {
    (1..m).flat_map(|v| core::iter::repeat(v).take(v + 1)).collect()
}

fn mono(vars: &[&str]) -> Multidegree {
    Multidegree::from_pairs(vars.iter().map(|v| (*v, 1)))
}

fn e(i: usize, side: usize) -> String {
    format!("e_{i}_{side}")
}

/// Edge variables of the two-ear graph with their end points:
/// `e_i_1 = v1 u_i`, `e_i_2 = v2 u_i`, `f1 = v1 x1`, `f2 = x1 x2`,
/// `f3 = v1 x2`, `g1 = v2 y1`, `g2 = y1 y2`, `g3 = v2 y2`, `w = x1 y1`.
pub fn twoear_edge_names(m: usize) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for i in 1..m {
        out.push((e(i, 1), "v1".to_string(), format!("u_{i}")));
        out.push((e(i, 2), "v2".to_string(), format!("u_{i}")));
    }
    for (n, a, b) in [
        ("f1", "v1", "x1"),
        ("f2", "x1", "x2"),
        ("f3", "v1", "x2"),
        ("g1", "v2", "y1"),
        ("g2", "y1", "y2"),
        ("g3", "v2", "y2"),
        ("w", "x1", "y1"),
    ] {
        out.push((n.to_string(), a.to_string(), b.to_string()));
    }
    out
}

/// Minimal generators of the initial ideal of `I_{G_m}` in an order with
/// regular quotients: the products `e_a1 e_b2` (`a < b`) sorted by `b` and
/// then `a`, then `g1 f2 e_a1` by increasing `a`, then `f1 f2 g1 g2`,
/// then `g2 f1 e_a2` by decreasing `a`.
pub fn twoear_initial_ideal(m: usize) -> Result<OrderedMonomialIdeal> {
    if m < 1 {
        return Err(Error::InvalidParameters("two-ear graph needs m >= 1".into()));
    }
    let mut gens = Vec::new();
    for b in 2..m {
        for a in 1..b {
            gens.push(mono(&[&e(a, 1), &e(b, 2)]));
        }
    }
    gens.extend(twoear_tail(m));
    OrderedMonomialIdeal::new(gens)
}

/// The same generators with the `e_a1 e_b2` block in lexicographic order
/// of `(a, b)`. Every colon step is still regular but the `k_j` are no
/// longer sorted.
pub fn twoear_initial_ideal_lex(m: usize) -> Result<OrderedMonomialIdeal> {
    if m < 1 {
        return Err(Error::InvalidParameters("two-ear graph needs m >= 1".into()));
    }
    let mut gens = Vec::new();
    for a in 1..m {
        for b in a + 1..m {
            gens.push(mono(&[&e(a, 1), &e(b, 2)]));
        }
    }
    gens.extend(twoear_tail(m));
    OrderedMonomialIdeal::new(gens)
}

fn twoear_tail(m: usize) -> Vec<Multidegree> {
    let mut gens = Vec::new();
    for a in 1..m {
        gens.push(mono(&["g1", "f2", &e(a, 1)]));
    }
    gens.push(mono(&["f1", "f2", "g1", "g2"]));
    for a in (1..m).rev() {
        gens.push(mono(&["g2", "f1", &e(a, 2)]));
    }
    gens
}

/// Vertex degree of an edge monomial of `G_m`.
pub fn twoear_vertex_degree(m: usize, mono: &Multidegree) -> Multidegree {
    let mut out = Multidegree::zero();
    for (name, a, b) in twoear_edge_names(m) {
        let k = mono.get(&name);
        out.add_at(&a, k);
        out.add_at(&b, k);
    }
    out
}

/// Graded Betti numbers of `in(I_{G_m})` (brute force, over `Q`) beside
/// those of `I_{G_m}` read off the closed-form table of `K[G_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialComparison {
    /// `β_{i,j}(in(I))`, `j` counted in edge variables.
    pub initial: GradedBettiTable,
    /// `β_{i,j}(I) = β_{i+1,j}(K[G])`.
    pub toric: GradedBettiTable,
}

impl InitialComparison {
    pub fn agree(&self) -> bool {
        self.initial == self.toric
    }

    pub fn initial_totals(&self) -> Vec<u64> {
        totals(&self.initial)
    }
}

fn totals(t: &GradedBettiTable) -> Vec<u64> {
    let mut out = Vec::new();
    for (&(i, _), &b) in &t.entries {
        while out.len() <= i {
            out.push(0);
        }
        out[i] += b;
    }
    out
}

/// Betti numbers of a monomial ideal in a polynomial ring, by scanning the
/// squarefree divisor complexes over all divisors of the lcm.
pub fn monomial_ideal_betti(ideal: &OrderedMonomialIdeal, cap: u128) -> Result<GradedBettiTable> {
    let vars = ideal.variables();
    let pres = MonomialAlgebraPresentation::polynomial(&vars);
    let dense: Vec<Vec<u32>> = ideal.generators().iter().map(|g| pres.to_dense(g)).collect::<Result<_>>()?;
    let lcm = ideal.generators().iter().fold(Multidegree::zero(), |acc, g| acc.lcm(g));
    let bound = pres.to_dense(&lcm)?;
    let sc = BoxScanner::new(&pres, IdealSpec::Generators(&dense), &bound, cap)?;
    let mut out = GradedBettiTable::default();
    for r in sc.scan_range(0..sc.len(), DEFAULT_PRIME, false) {
        let j: u64 = r.degree.iter().map(|&x| x as u64).sum();
        for (i, &b) in r.rational.dims.iter().enumerate() {
            if b > 0 {
                *out.entries.entry((i, j)).or_insert(0) += b;
            }
        }
    }
    Ok(out)
}

pub fn initial_betti_comparison(m: usize, cap: u128) -> Result<InitialComparison> {
    let ideal = twoear_initial_ideal(m)?;
    let initial = monomial_ideal_betti(&ideal, cap)?;
    let g: LabeledGraph = build_family(&FamilySpec::TwoEar { m: m as u32 })?;
    let ring = graded_table(&betti_table(&g)?)?;
    let mut toric = GradedBettiTable::default();
    for (&(i, j), &b) in &ring.entries {
        if i >= 1 && b > 0 {
            toric.entries.insert((i - 1, j), b);
        }
    }
    Ok(InitialComparison { initial, toric })
}

/// Hand-derived colon generators for position `j` of
/// [`twoear_initial_ideal`], used to test the chain.
pub fn expected_twoear_colon(m: usize, u: &Multidegree) -> Vec<Multidegree> {
    let es = |range: core::ops::Range<usize>, side: usize| -> Vec<Multidegree> {
        range.map(|a| mono(&[&e(a, side)])).collect()
    };
    let spoke = |side: usize| (1..m).find(|&a| u.get(&e(a, side)) > 0);
    let mut out = if u.get("f1") > 0 && u.get("f2") > 0 {
        es(1..m, 1)
    } else if u.get("g1") > 0 && u.get("f2") > 0 {
        let a = spoke(1).unwrap_or(0);
        let mut v = es(1..a, 1);
        v.extend(es(a + 1..m, 2));
        v
    } else if u.get("g2") > 0 && u.get("f1") > 0 {
        let a = spoke(2).unwrap_or(0);
        let mut v = vec![mono(&["f2", "g1"])];
        v.extend(es(1..a, 1));
        v.extend(es(a + 1..m, 2));
        v
    } else {
        let (a, b) = (spoke(1).unwrap_or(0), spoke(2).unwrap_or(0));
        let mut v = es(1..a, 1);
        v.extend(es(a + 1..b, 2));
        v
    };
    out.sort();
    out
}
