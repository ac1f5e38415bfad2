use edge_betti_core::formula::{betti_table, binomial, tensor_betti, total_betti, BettiTable};
use edge_betti_core::graph::{build_family, classify, minimal_cycles, pdim, FamilySpec, LabeledGraph};
use edge_betti_core::homology::{homology_both, reduced_euler_from_faces, SimplicialComplex};
use edge_betti_core::multidegree::{big_d, Multidegree};
use edge_betti_core::oracle::{betti_oracle, unit_ideal, MonomialAlgebraPresentation, DEFAULT_PRIME};
use edge_betti_core::homology::Field;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(text: &str) -> LabeledGraph {
    build_family(&text.parse::<FamilySpec>().unwrap()).unwrap()
}

/// `β_{i,h}` computed inside `g` directly from `Γ_h`.
fn oracle_at(g: &LabeledGraph, i: usize, h: &Multidegree) -> u64 {
    let pres = MonomialAlgebraPresentation::edge_ring(g);
    let dense = pres.to_dense(h).unwrap();
    betti_oracle(&pres, &unit_ideal(&pres), i, &dense, Field::Rational).unwrap()
}

#[test]
fn betti_numbers_restrict_to_induced_subgraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for text in ["A 1,1,1", "B s=2 1:1", "MP 2,2,3", "MP 3,3,3", "TE 3", "OE 3"] {
        let g = graph(text);
        let table = betti_table(&g).unwrap();
        let entries: Vec<(usize, Multidegree)> = table.entries().map(|(i, h, _)| (i, h.clone())).collect();
        let names: Vec<String> = (0..g.vertex_count()).map(|v| g.name(v).to_string()).collect();
        for trial in 0..40 {
            // half the time start from a known non-zero entry
            let (i, h) = if trial % 2 == 0 {
                entries.choose(&mut rng).unwrap().clone()
            } else {
                let d = big_d(&g);
                let mut h = Multidegree::zero();
                for (v, e) in d.iter() {
                    h.set(v, rng.gen_range(0..=e));
                }
                (rng.gen_range(0..=table.pdim()), h)
            };
            let mut keep: Vec<&str> = h.support().collect();
            for n in &names {
                if !keep.contains(&n.as_str()) && rng.gen_bool(0.5) {
                    keep.push(n);
                }
            }
            let sub = g.induced_subgraph_by_names(&keep).unwrap();
            assert_eq!(oracle_at(&sub, i, &h), table.get(i, &h), "{text}: i = {i}, h = {h}, W = {keep:?}");
        }
    }
}

fn shift_paths(t: &BettiTable, by: usize) -> BettiTable {
    let rename = |h: &Multidegree| {
        let mut out = Multidegree::zero();
        for (v, e) in h.iter() {
            let name = match v.strip_prefix("u_").and_then(|r| r.split_once('_')) {
                Some((k, j)) => format!("u_{}_{j}", k.parse::<usize>().unwrap() + by),
                None => v.to_string(),
            };
            out.set(&name, e);
        }
        out
    };
    BettiTable { rows: t.rows.iter().map(|r| r.iter().map(|(h, &b)| (rename(h), b)).collect()).collect() }
}

#[test]
fn mixed_multipath_is_a_tensor_product() {
    // the even and odd paths use disjoint edge variables
    let even = betti_table(&graph("MP 2,2")).unwrap();
    let odd = shift_paths(&betti_table(&graph("MP 3,3")).unwrap(), 2);
    let direct = betti_table(&graph("MP 2,2,3,3")).unwrap();
    assert_eq!(tensor_betti(&even, &odd), direct);
    assert_eq!(tensor_betti(&direct, &BettiTable::unit()), direct);
}

#[test]
fn euler_characteristic_vanishes() {
    for text in ["A 1,2,3", "B s=4 1,1:2", "C 1:2:1,1", "MP 2,2,2,2,3,3", "MP 4,4,4", "TE 6", "OE 6", "K2D 6"] {
        let t = betti_table(&graph(text)).unwrap();
        assert_eq!(t.euler_characteristic(), 0, "{text}");
    }
}

#[test]
fn compact_pdim_is_one_less_than_the_cycle_count() {
    for text in ["A 1,1", "A 1,2,3", "B s=0 1:1,1", "B s=2 1:1", "C 1:1:1", "C 1:1:1,1", "C 2:1,1:1,1"] {
        let g = graph(text);
        assert_eq!(pdim(&g).unwrap() as usize + 1, minimal_cycles(&g).len(), "{text}");
    }
}

#[test]
fn two_ear_census_counts() {
    use edge_betti_core::census::{family_subgraph_census, MemberKind};
    for m in 2..=6u64 {
        let g = graph(&format!("TE {m}"));
        for i in 1..=m as usize {
            let census = family_subgraph_census(&g, i).unwrap();
            let count = |k: MemberKind| census.iter().filter(|c| c.kind == k).count() as u64;
            let i = i as u64;
            assert_eq!(count(MemberKind::TwoEar), binomial(m - 1, i - 1), "m = {m}, i = {i}");
            assert_eq!(count(MemberKind::OneEar), 2 * binomial(m - 1, i), "m = {m}, i = {i}");
            assert_eq!(count(MemberKind::Spokes), binomial(m - 1, i + 1), "m = {m}, i = {i}");
            assert_eq!(census.len() as u64, binomial(m + 1, i + 1));
            assert_eq!(total_betti(&g, i as usize).unwrap(), i * binomial(m + 1, i + 1));
        }
    }
}

#[test]
fn rational_and_modular_homology_of_small_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let facets: Vec<u64> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_range(1..(1u64 << n))).collect();
        let c = SimplicialComplex::from_facets(n, facets).unwrap();
        let (q, p) = homology_both(&c, DEFAULT_PRIME);
        // torsion this small never has order divisible by a large prime
        assert_eq!(q, p);
        assert_eq!(q.euler(), reduced_euler_from_faces(&c.faces()));
    }
}

fn spec_strategy() -> impl Strategy<Value = FamilySpec> {
    let petals = || prop::collection::vec(1u32..=2, 1..=2);
    prop_oneof![
        prop::collection::vec(1u32..=2, 2..=3).prop_map(|petals| FamilySpec::CompactA { petals }),
        (0u32..=1, petals(), petals()).prop_map(|(s, u, v)| FamilySpec::CompactB { s: 2 * s, u_petals: u, v_petals: v }),
        (petals(), petals(), petals()).prop_map(|(u, v, w)| FamilySpec::CompactC { u_petals: u, v_petals: v, w_petals: w }),
        prop::collection::vec(2u32..=5, 3..=4)
            .prop_filter("K_{2,d} is reported separately", |l| l.iter().any(|&x| x != 2))
            .prop_map(|lengths| FamilySpec::MultiPath { lengths }),
        (2u32..=5).prop_map(|m| FamilySpec::TwoEar { m }),
        (2u32..=5).prop_map(|m| FamilySpec::OneEar { m }),
        (2u32..=5).prop_map(|d| FamilySpec::CompleteBipartite2d { d: d.max(3) }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classify_inverts_build_under_relabelling(spec in spec_strategy(), seed in any::<u64>()) {
        let g = build_family(&spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let mut edges: Vec<(String, String)> =
            g.edges().iter().map(|&(a, b)| (format!("z{}", perm[a]), format!("z{}", perm[b]))).collect();
        edges.shuffle(&mut rng);
        let h = LabeledGraph::from_named_edges(&edges).unwrap();
        prop_assert_eq!(classify(&h).normalized(), spec.normalized());
        prop_assert_eq!(classify(&g).normalized(), spec.normalized());
    }
}
