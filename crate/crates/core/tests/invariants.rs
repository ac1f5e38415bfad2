use edge_betti_core::canonical::{n_set, second_top_type3};
use edge_betti_core::cone::inequality_system;
use edge_betti_core::formula::betti_table;
use edge_betti_core::graph::{build_family, pdim, FamilySpec, LabeledGraph};
use edge_betti_core::multidegree::{big_d, theta};

fn graph(text: &str) -> LabeledGraph {
    build_family(&text.parse::<FamilySpec>().unwrap()).unwrap()
}

const FAMILIES: &[&str] = &[
    "A 1,1", "A 1,2,3", "B 1:2", "B s=2 1,1:1", "C 1:1:1", "C 2:1:1,1", "MP 2,2,2", "MP 3,3,5", "MP 2,2,3,3",
    "MP 2,3,3", "MP 2,2,4,3,3,5", "TE 1", "TE 4", "OE 2", "OE 4", "K2D 4",
];

#[test]
fn theta_squared_divides_d() {
    for text in FAMILIES {
        let g = graph(text);
        let d = big_d(&g);
        assert!(theta(&g).scale(2).divides(&d), "{text}");
        assert_eq!(d.total(), 2 * g.edge_count() as u64, "{text}");
    }
}

#[test]
fn edge_vectors_satisfy_every_form() {
    for text in FAMILIES {
        let g = graph(text);
        let sys = inequality_system(&g).unwrap();
        for e in 0..g.edge_count() {
            let v = g.edge_vector(e);
            assert!(sys.cone_contains(&v), "{text}: edge {e}");
            for f in &sys.forms {
                assert!(f.eval(&v) >= 0, "{text}: {:?}", f.kind);
            }
        }
    }
}

#[test]
fn top_degree_counts() {
    for text in FAMILIES {
        let g = graph(text);
        let n = n_set(&g).unwrap();
        let d = big_d(&g);
        assert!(n.iter().all(|h| h.divides(&d)), "{text}");
        let spec: FamilySpec = text.parse().unwrap();
        let want = match spec {
            FamilySpec::MultiPath { ref lengths } => {
                let e = lengths.iter().filter(|&&l| l % 2 == 0).count();
                let o = lengths.len() - e;
                if e >= 2 && o >= 2 {
                    (e - 1) * (o - 1)
                } else {
                    pdim(&g).unwrap() as usize
                }
            }
            FamilySpec::CompactC { .. } => continue,
            _ => pdim(&g).unwrap() as usize,
        };
        assert_eq!(n.len(), want, "{text}");
    }
}

#[test]
fn type_three_second_top_degrees() {
    for (text, petals) in [("C 1:1:1", 3), ("C 1:1:1,1", 4), ("C 2,1:1,1:1,2", 6)] {
        let g = graph(text);
        let m = second_top_type3(&g).unwrap();
        let everything: Vec<&str> = (0..g.vertex_count()).map(|v| g.name(v)).collect();
        for (h, _) in &m {
            let support: Vec<&str> = h.support().collect();
            assert_eq!(support.len(), everything.len(), "{text}: {h}");
        }
        let ones = m.iter().filter(|(_, r)| *r == 1).count();
        let twos = m.iter().filter(|(_, r)| *r == 2).count();
        assert_eq!(ones, petals - 3, "{text}");
        assert_eq!(twos, 1, "{text}");
    }
}

/// Outside three-big-vertex compact graphs every entry has rank 1 and is a
/// top degree of the subgraph induced on its support.
#[test]
fn support_law() {
    for text in ["A 1,2,1", "B s=2 1:1", "MP 2,2,2,2", "MP 3,3,3", "MP 2,2,3,3", "MP 2,2,2,3,3,3", "TE 4", "OE 4"] {
        let g = graph(text);
        let t = betti_table(&g).unwrap();
        for (i, h, b) in t.entries().filter(|(i, _, _)| *i > 0) {
            assert_eq!(b, 1, "{text}: {h}");
            let names: Vec<&str> = h.support().collect();
            let sub = g.induced_subgraph_by_names(&names).unwrap();
            assert_eq!(pdim(&sub).unwrap() as usize, i, "{text}: {h}");
            let top = betti_table(&sub).unwrap();
            assert_eq!(top.get(i, h), 1, "{text}: {h}");
        }
    }
}
