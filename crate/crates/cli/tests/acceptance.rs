//! Acceptance run: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines always reach the output.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use edge_betti_core::canonical::canonical_generators;
use edge_betti_core::cone::{inequality_system, is_minimal_interior_brute, minimal_interior_vectors};
use edge_betti_core::formula::{betti_table, binomial, tensor_betti, total_betti, BettiTable};
use edge_betti_core::graph::{build_family, minimal_cycles, FamilySpec, LabeledGraph};
use edge_betti_core::homology::Field;
use edge_betti_core::multidegree::{big_d, theta, Multidegree};
use edge_betti_core::oracle::{
    betti_oracle, betti_table_oracle, canonical_module_scanner, duality_check, unit_ideal, BoxScanner, IdealSpec,
    MonomialAlgebraPresentation, OracleOptions, OracleTable, DEFAULT_CAP, DEFAULT_PRIME,
};
use edge_betti_core::quotients::{initial_betti_comparison, k_sequence, mapping_cone_bound, regular_quotients, twoear_initial_ideal};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUITE: &[&str] = &[
    "A 1,1", "A 1,1,1", "A 2,1", "B 1:1", "B s=2 1:1", "C 1:1:1", "C 1:1:1,1", "MP 2,2", "MP 2,2,2", "MP 3,3",
    "MP 3,3,3", "MP 2,2,3,3", "TE 1", "TE 2", "TE 3", "OE 2", "OE 3", "K2D 3", "K2D 4",
];

const WORKED_EXAMPLE_LIMIT: Duration = Duration::from_secs(60);
const SUITE_LIMIT: Duration = Duration::from_secs(15 * 60);
const RESTRICTION_SAMPLES: usize = 100;
const SEED: u64 = 0x5eed;

struct Member {
    name: &'static str,
    graph: LabeledGraph,
    formula: BettiTable,
    oracle: OracleTable,
}

/// Counts complexes whose homology was compared over `Q` and `F_p`.
#[derive(Default)]
struct FieldLedger {
    compared: usize,
    disagreements: Vec<String>,
}

fn graph(text: &str) -> LabeledGraph {
    build_family(&text.parse::<FamilySpec>().expect("suite spec parses")).expect("suite spec builds")
}

fn member_pdim(g: &LabeledGraph) -> usize {
    let (e, v) = (g.edge_count(), g.vertex_count());
    if g.is_bipartite() {
        e + 1 - v
    } else {
        e - v
    }
}

fn closed_row_total(text: &str, g: &LabeledGraph, i: usize) -> u64 {
    let i = i as u64;
    if i == 0 {
        return 1;
    }
    let spec: FamilySpec = text.parse().unwrap();
    match spec {
        FamilySpec::CompactA { .. } | FamilySpec::CompactB { .. } | FamilySpec::CompactC { .. } => {
            i * binomial(minimal_cycles(g).len() as u64, i + 1)
        }
        FamilySpec::TwoEar { m } => i * binomial(m as u64 + 1, i + 1),
        FamilySpec::OneEar { m } => i * binomial(m as u64, i + 1),
        FamilySpec::CompleteBipartite2d { d } => i * binomial(d as u64, i + 1),
        FamilySpec::MultiPath { lengths } => {
            let e = lengths.iter().filter(|&&l| l % 2 == 0).count() as u64;
            let o = lengths.len() as u64 - e;
            if e == 0 || o == 0 {
                i * binomial(e + o, i + 1)
            } else {
                let mut s = i * (binomial(e, i + 1) + binomial(o, i + 1));
                for j in 1..i {
                    let k = i - j;
                    s += binomial(o, j + 1) * binomial(e, k + 1) * j * k;
                }
                s
            }
        }
        FamilySpec::Custom { .. } => unreachable!(),
    }
}

fn first_difference(a: &BettiTable, b: &BettiTable) -> Option<String> {
    let keys: BTreeSet<(usize, Multidegree)> = a.entries().chain(b.entries()).map(|(i, h, _)| (i, h.clone())).collect();
    keys.into_iter()
        .find(|(i, h)| a.get(*i, h) != b.get(*i, h))
        .map(|(i, h)| format!("i = {i}, h = {h}: {} vs {}", a.get(i, &h), b.get(i, &h)))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1(suite: &[Member], ledger: &mut FieldLedger) -> Result<String, String> {
    let start = Instant::now();
    let m = suite.iter().find(|m| m.name == "C 1:1:1,1").unwrap();
    let g = &m.graph;
    let th = theta(g);
    let mono = |u: u32, v: u32, w: u32| th.add(&Multidegree::from_pairs([("u", u), ("v", v), ("w", w)]));
    let (two, one) = (mono(2, 2, 4), mono(2, 2, 2));
    check(total_betti(g, 3).unwrap() == 15, || "β_3 closed form is not 15".into())?;
    check(m.formula.row_total(3) == 15, || format!("β_3 from the table is {}", m.formula.row_total(3)))?;
    check(m.formula.get(3, &two) == 2, || format!("β_3 at {two} is {}", m.formula.get(3, &two)))?;
    check(m.formula.get(3, &one) == 1, || format!("β_3 at {one} is {}", m.formula.get(3, &one)))?;
    // the same two values on the ω side, at D - h, from Γ-complex homology
    let sc = canonical_module_scanner(g, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let d = big_d(g);
    for (h, want) in [(&two, 2), (&one, 1)] {
        let dual = d.checked_sub(h).ok_or("h does not divide D")?;
        let idx = sc.index_of(&dual.to_dense(g).unwrap()).ok_or("D - h outside the scan")?;
        let hom = sc.homology_at(idx, DEFAULT_PRIME, false).ok_or_else(|| format!("Γ at {dual} is acyclic"))?;
        ledger.compared += 1;
        if hom.rational != hom.modular {
            ledger.disagreements.push(format!("ω at {dual}"));
        }
        let got = hom.rational.get(1);
        check(got == want, || format!("β_1(ω) at {dual} is {got}, expected {want}"))?;
    }
    let t = start.elapsed();
    check(t < WORKED_EXAMPLE_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("β_3 = 15, ranks 2 and 1 on both sides ({:.1}s)", t.as_secs_f64()))
}

fn criterion_2(suite: &[Member], elapsed: Duration) -> Result<String, String> {
    for m in suite {
        if let Some(d) = first_difference(&m.formula, &m.oracle.table) {
            return Err(format!("{}: {d}", m.name));
        }
        for i in 0..=member_pdim(&m.graph) {
            let want = closed_row_total(m.name, &m.graph, i);
            let got = m.oracle.table.row_total(i);
            check(got == want, || format!("{} row {i}: oracle {got}, closed form {want}", m.name))?;
        }
    }
    check(elapsed < SUITE_LIMIT, || format!("suite took {elapsed:?}"))?;
    let points: usize = suite.iter().map(|m| m.oracle.points_scanned).sum();
    Ok(format!("{} graphs, {points} degrees scanned in {:.1}s", suite.len(), elapsed.as_secs_f64()))
}

fn criterion_3(suite: &[Member]) -> Result<String, String> {
    let mut count = 0;
    for m in suite {
        let g = &m.graph;
        let closed: BTreeSet<Multidegree> = canonical_generators(g).map_err(|e| e.to_string())?.generators.into_iter().collect();
        let brute: BTreeSet<Multidegree> = minimal_interior_vectors(g).map_err(|e| e.to_string())?.into_iter().collect();
        if let Some(h) = closed.symmetric_difference(&brute).next() {
            return Err(format!("{}: {h} only in {}", m.name, if closed.contains(h) { "closed form" } else { "enumeration" }));
        }
        let sys = inequality_system(g).unwrap();
        for a in &closed {
            check(is_minimal_interior_brute(&sys, &a.to_dense(g).unwrap()), || format!("{}: {a} is not minimal", m.name))?;
        }
        count += closed.len();
    }
    Ok(format!("{count} generators"))
}

fn criterion_4(suite: &[Member]) -> Result<String, String> {
    for m in suite {
        let want = member_pdim(&m.graph);
        let got = m.oracle.table.pdim();
        check(got == want, || format!("{}: oracle {got}, expected {want}", m.name))?;
    }
    Ok(format!("{} graphs", suite.len()))
}

fn criterion_5(suite: &[Member]) -> Result<String, String> {
    let mut points = 0;
    for m in suite {
        let r = duality_check(&m.graph, &m.oracle.table, DEFAULT_CAP).map_err(|e| e.to_string())?;
        if let Some(x) = r.mismatches.first() {
            return Err(format!("{}: i = {}, h = {}: ω {} vs ring {}", m.name, x.i, x.degree, x.omega, x.ring));
        }
        points += r.points_checked;
    }
    Ok(format!("0 mismatches over {points} degrees"))
}

fn criterion_6() -> Result<String, String> {
    for m in 1..=6usize {
        let ideal = twoear_initial_ideal(m).map_err(|e| e.to_string())?;
        let steps = regular_quotients(&ideal).map_err(|e| e.to_string())?;
        let ks = k_sequence(&steps).map_err(|e| format!("m = {m}: {e}"))?;
        let want: Vec<usize> = (1..m).flat_map(|v| std::iter::repeat(v).take(v + 1)).collect();
        check(ks == want, || format!("m = {m}: k = {ks:?}"))?;
        let g = graph(&format!("TE {m}"));
        let table = betti_table(&g).map_err(|e| e.to_string())?;
        for i in 0..m {
            let bound = mapping_cone_bound(&steps, i).unwrap();
            let want = (i as u64 + 1) * binomial(m as u64 + 1, i as u64 + 2);
            check(bound == want, || format!("m = {m}, i = {i}: bound {bound}, expected {want}"))?;
        }
        for i in 1..=m {
            let want = i as u64 * binomial(m as u64 + 1, i as u64 + 1);
            check(table.row_total(i) == want, || format!("m = {m}: β_{i} = {}, expected {want}", table.row_total(i)))?;
        }
    }
    Ok("m = 1..6".into())
}

fn criterion_7(ledger: &mut FieldLedger) -> Result<String, String> {
    for m in 1..=3usize {
        let c = initial_betti_comparison(m, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let keys: BTreeSet<(usize, u64)> = c.initial.entries.keys().chain(c.toric.entries.keys()).copied().collect();
        for (i, j) in keys {
            let (a, b) = (c.initial.get(i, j), c.toric.get(i, j));
            check(a == b, || format!("m = {m}, β_{{{i},{j}}}: initial {a}, toric {b}"))?;
        }
        // the same scan again, keeping both fields
        let ideal = twoear_initial_ideal(m).unwrap();
        let pres = MonomialAlgebraPresentation::polynomial(&ideal.variables());
        let dense: Vec<Vec<u32>> = ideal.generators().iter().map(|g| pres.to_dense(g).unwrap()).collect();
        let lcm = ideal.generators().iter().fold(Multidegree::zero(), |a, g| a.lcm(g));
        let sc = BoxScanner::new(&pres, IdealSpec::Generators(&dense), &pres.to_dense(&lcm).unwrap(), DEFAULT_CAP).unwrap();
        for r in sc.scan_range(0..sc.len(), DEFAULT_PRIME, false) {
            ledger.compared += 1;
            if r.rational != r.modular {
                ledger.disagreements.push(format!("in(I) for m = {m} at {:?}", r.degree));
            }
        }
    }
    Ok("m = 1..3".into())
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

fn criterion_8(suite: &[Member], ledger: &mut FieldLedger) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    for m in suite {
        let g = &m.graph;
        let names: Vec<String> = (0..g.vertex_count()).map(|v| g.name(v).to_string()).collect();
        let entries: Vec<(usize, Multidegree)> = m.oracle.table.entries().map(|(i, h, _)| (i, h.clone())).collect();
        let d = big_d(g);
        for k in 0..RESTRICTION_SAMPLES {
            let (i, h, mut keep) = if k % 2 == 0 {
                let (i, h) = entries.choose(&mut rng).unwrap().clone();
                let keep: Vec<String> = h.support().map(String::from).collect();
                (i, h, keep)
            } else {
                let keep: Vec<String> = names.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
                let mut h = Multidegree::zero();
                for v in &keep {
                    h.set(v, rng.gen_range(0..=d.get(v)));
                }
                (rng.gen_range(0..=member_pdim(g)), h, keep)
            };
            for n in &names {
                if !keep.contains(n) && rng.gen_bool(0.3) {
                    keep.push(n.clone());
                }
            }
            if keep.is_empty() {
                keep.push(names[0].clone());
            }
            let sub = g.induced_subgraph_by_names(&keep).map_err(|e| e.to_string())?;
            let pres = MonomialAlgebraPresentation::edge_ring(&sub);
            let dense = pres.to_dense(&h).map_err(|e| e.to_string())?;
            let q = betti_oracle(&pres, &unit_ideal(&pres), i, &dense, Field::Rational).unwrap();
            let p = betti_oracle(&pres, &unit_ideal(&pres), i, &dense, Field::Prime(DEFAULT_PRIME)).unwrap();
            ledger.compared += 1;
            if q != p {
                ledger.disagreements.push(format!("{} restricted to {keep:?} at {h}", m.name));
            }
            let want = m.oracle.table.get(i, &h);
            check(q == want, || format!("{}: W = {keep:?}, i = {i}, h = {h}: {q} vs {want}", m.name))?;
            pairs += 1;
        }
    }
    let even = betti_table(&graph("MP 2,2")).unwrap();
    let odd = shift_paths(&betti_table(&graph("MP 3,3")).unwrap(), 2);
    let direct = suite.iter().find(|m| m.name == "MP 2,2,3,3").unwrap();
    if let Some(d) = first_difference(&tensor_betti(&even, &odd), &direct.oracle.table) {
        return Err(format!("tensor product differs: {d}"));
    }
    for m in suite {
        ledger.compared += m.oracle.points_scanned;
        ledger.disagreements.extend(m.oracle.field_disagreements.iter().map(|h| format!("{} at {h}", m.name)));
    }
    if let Some(x) = ledger.disagreements.first() {
        return Err(format!("Q and F_p disagree: {x}"));
    }
    Ok(format!("{pairs} restriction pairs, tensor product equal, Q and F_p agree at all {} degrees", ledger.compared))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let suite: Vec<Member> = SUITE
        .iter()
        .map(|&name| {
            let graph = graph(name);
            let formula = betti_table(&graph).expect("suite member has a closed form");
            let oracle = betti_table_oracle(&graph, &OracleOptions::default()).expect("oracle runs");
            Member { name, graph, formula, oracle }
        })
        .collect();
    let suite_time = start.elapsed();
    let mut ledger = FieldLedger::default();

    let results = [
        ("worked example C 1:1:1,1", criterion_1(&suite, &mut ledger)),
        ("oracle equals formula", criterion_2(&suite, suite_time)),
        ("canonical generators", criterion_3(&suite)),
        ("projective dimension", criterion_4(&suite)),
        ("duality", criterion_5(&suite)),
        ("regular quotients and bounds", criterion_6()),
        ("initial ideal Betti numbers", criterion_7(&mut ledger)),
        ("property suites", criterion_8(&suite, &mut ledger)),
    ];
    let mut failed = 0;
    for (n, (label, r)) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {}: PASS  {label}: {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {label}: {msg}", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
