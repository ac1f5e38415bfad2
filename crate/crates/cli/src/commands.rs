use std::collections::BTreeSet;

use edge_betti_core::canonical::canonical_generators;
use edge_betti_core::cone::{fundamental_sets, inequality_system, minimal_interior_vectors, regular_vertices, FormKind, Lattice};
use edge_betti_core::formula::{betti_table, binomial, graded_table, total_betti, BettiTable};
use edge_betti_core::graph::{build_family, classify, minimal_cycles, odd_cycle_condition, pdim, FamilySpec, LabeledGraph};
use edge_betti_core::multidegree::{big_d, theta, Multidegree};
use edge_betti_core::oracle::{duality_check, edge_ring_scanner, DegreeHomology, OracleTable, Region};
use edge_betti_core::quotients::{
    initial_betti_comparison, k_sequence, mapping_cone_bound, reference_k_sequence, regular_quotients, twoear_initial_ideal,
};
use edge_betti_core::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{Report, Verdict};

/// Options shared by the subcommands.
#[derive(Clone, Debug)]
pub struct Options {
    pub oracle: bool,
    pub region: Region,
    pub graded: bool,
    pub emit_complexes: bool,
    pub threads: usize,
    pub cap: u128,
    pub prime: u32,
}

pub struct Input {
    pub text: String,
    pub spec: FamilySpec,
    pub graph: LabeledGraph,
}

pub fn parse_input(text: &str) -> Result<Input, Error> {
    let spec: FamilySpec = text.parse()?;
    let graph = build_family(&spec)?;
    Ok(Input { text: spec.to_string(), spec, graph })
}

fn header(cmd: &str, input: &Input) -> Report {
    let mut r = Report::new(cmd, &input.text);
    let family = classify(&input.graph);
    r.family = Some(family.family_name().into());
    r.pdim = pdim(&input.graph).ok();
    r
}

fn degree_json(h: &Multidegree) -> Value {
    json!(h.to_string())
}

fn table_json(t: &BettiTable) -> Value {
    t.entries().map(|(i, h, b)| json!({ "i": i, "degree": degree_json(h), "beta": b })).collect()
}

fn table_lines(t: &BettiTable, th: &Multidegree, out: &mut Vec<String>) {
    for (i, row) in t.rows.iter().enumerate() {
        out.push(format!("β_{i}: {}", t.row_total(i)));
        for (h, b) in row {
            out.push(format!("  {:>4}  {}", b, h.render_with_theta(th)));
        }
    }
}

fn graded_rows(t: &BettiTable) -> Result<Vec<(usize, u64, u64)>, Error> {
    Ok(graded_table(t)?.entries.into_iter().map(|((i, j), b)| (i, j, b)).collect())
}

fn graded_lines(rows: &[(usize, u64, u64)], out: &mut Vec<String>) {
    out.push("graded (i j beta):".into());
    for &(i, j, b) in rows {
        out.push(format!("  {i} {j} {b}"));
    }
}

pub fn cmd_classify(input: &Input) -> Result<Report, Error> {
    let g = &input.graph;
    let mut r = header("classify", input);
    let family = classify(g);
    let cycles = minimal_cycles(g);
    let odd = cycles.iter().filter(|c| c.is_odd()).count();
    let occ = g.is_connected() && odd_cycle_condition(g);
    r.result.insert("classified".into(), json!(family.to_string()));
    r.result.insert("vertices".into(), json!(g.vertex_count()));
    r.result.insert("edges".into(), json!(g.edge_count()));
    r.result.insert("minimal_cycles".into(), json!(cycles.len()));
    r.result.insert("odd_minimal_cycles".into(), json!(odd));
    r.result.insert("bipartite".into(), json!(g.is_bipartite()));
    r.result.insert("odd_cycle_condition".into(), json!(occ));
    r.lines.push(format!("classified: {family}"));
    r.lines.push(format!("vertices: {}, edges: {}", g.vertex_count(), g.edge_count()));
    r.lines.push(format!("minimal cycles: {} ({odd} odd)", cycles.len()));
    r.lines.push(format!("bipartite: {}", g.is_bipartite()));
    r.lines.push(format!("odd-cycle condition: {occ}"));
    Ok(r)
}

pub fn cmd_cone(input: &Input) -> Result<Report, Error> {
    let g = &input.graph;
    let mut r = header("cone", input);
    let sys = inequality_system(g)?;
    let names = |vs: &[usize]| vs.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
    let mut forms = Vec::new();
    for f in &sys.forms {
        let (kind, about) = match &f.kind {
            FormKind::NonNegative(v) => ("nonnegative", json!([g.name(*v)])),
            FormKind::Neighbourhood(t) => ("neighbourhood", json!(names(t))),
            FormKind::Balance => ("balance", json!([])),
        };
        let coeffs = f.coeff_map(g);
        forms.push(json!({ "kind": kind, "set": about, "coeffs": coeffs, "implicit_equality": f.implicit_equality }));
        let lhs: Vec<String> = coeffs
            .iter()
            .map(|(v, c)| match c {
                1 => format!("+{v}"),
                -1 => format!("-{v}"),
                c => format!("{c:+}{v}"),
            })
            .collect();
        let rel = if matches!(f.kind, FormKind::Balance) || f.implicit_equality { "= 0" } else { ">= 0" };
        r.lines.push(format!("  {} {rel}   [{kind}]", lhs.join(" ")));
    }
    r.lines.insert(0, format!("forms: {}", sys.forms.len()));
    let lattice = match &sys.lattice {
        Lattice::EvenTotal => "even-total".to_string(),
        Lattice::Balanced { .. } => "balanced".to_string(),
    };
    r.lines.push(format!("lattice: {lattice}"));
    r.result.insert("forms".into(), Value::Array(forms));
    r.result.insert("lattice".into(), json!(lattice));
    r.result.insert("bipartite".into(), json!(sys.bipartite));
    if !sys.bipartite {
        let reg = regular_vertices(g);
        let fs: Vec<Value> =
            fundamental_sets(g).iter().map(|f| json!({ "set": names(&f.set), "neighbourhood": names(&f.neighbourhood) })).collect();
        r.lines.push(format!("regular vertices: {}", names(&reg).join(" ")));
        r.lines.push(format!("fundamental sets: {}", fs.len()));
        r.result.insert("regular_vertices".into(), json!(names(&reg)));
        r.result.insert("fundamental_sets".into(), Value::Array(fs));
    }
    Ok(r)
}

pub fn cmd_canonical(input: &Input, opts: &Options) -> Result<Report, Error> {
    let g = &input.graph;
    let mut r = header("canonical", input);
    let gens = canonical_generators(g)?;
    let th = &gens.theta;
    let top = gens.top_degrees();
    r.result.insert("generators".into(), gens.generators.iter().map(degree_json).collect());
    r.result.insert("theta".into(), degree_json(th));
    r.result.insert("d".into(), degree_json(&gens.d));
    r.result.insert("top_degrees".into(), top.iter().map(degree_json).collect());
    r.result.insert("cm_type".into(), json!(gens.generators.len()));
    r.lines.push(format!("Θ = {th}"));
    r.lines.push(format!("D = {}", gens.d));
    r.lines.push(format!("generators of ω ({}):", gens.generators.len()));
    for a in &gens.generators {
        r.lines.push(format!("  {}", a.render_with_theta(th)));
    }
    r.lines.push("top degrees N = D - α:".into());
    for h in &top {
        r.lines.push(format!("  {}", h.render_with_theta(th)));
    }
    if opts.oracle {
        let brute: BTreeSet<Multidegree> = minimal_interior_vectors(g)?.into_iter().collect();
        let closed: BTreeSet<Multidegree> = gens.generators.iter().cloned().collect();
        let v = match closed.symmetric_difference(&brute).next() {
            None => Verdict::Pass,
            Some(h) => Verdict::Fail(json!({ "degree": h.to_string(), "closed_form": closed.contains(h) })),
        };
        r.verdict("generators_vs_enumeration", v);
    }
    Ok(r)
}

/// The oracle table over a region, scanned in parallel chunks.
pub fn oracle_table(g: &LabeledGraph, opts: &Options) -> Result<OracleTable, Error> {
    let sc = edge_ring_scanner(g, opts.region, opts.cap)?;
    let len = sc.len();
    let chunk = 4096;
    let scan = || -> Vec<DegreeHomology> {
        (0..len.div_ceil(chunk))
            .into_par_iter()
            .flat_map_iter(|c| sc.scan_range(c * chunk..((c + 1) * chunk).min(len), opts.prime, opts.emit_complexes))
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    let results = pool.install(scan);
    Ok(OracleTable::from_results(g, results, len))
}

fn fits(h: &Multidegree, g: &LabeledGraph, bound: &[u32]) -> bool {
    match h.to_dense(g) {
        Ok(d) => d.iter().zip(bound).all(|(x, b)| x <= b),
        Err(_) => false,
    }
}

/// Entrywise comparison restricted to the scanned region.
fn compare(g: &LabeledGraph, formula: &BettiTable, oracle: &BettiTable, bound: &[u32]) -> Verdict {
    let keys: BTreeSet<(usize, &Multidegree)> =
        formula.entries().chain(oracle.entries()).map(|(i, h, _)| (i, h)).filter(|(_, h)| fits(h, g, bound)).collect();
    for (i, h) in keys {
        let (f, o) = (formula.get(i, h), oracle.get(i, h));
        if f != o {
            return Verdict::Fail(json!({ "i": i, "degree": h.to_string(), "formula": f, "oracle": o }));
        }
    }
    Verdict::Pass
}

fn covers_divisors(g: &LabeledGraph, bound: &[u32]) -> bool {
    fits(&big_d(g), g, bound)
}

fn complexes_json(g: &LabeledGraph, t: &OracleTable) -> Value {
    let edge = |j: usize| {
        let (a, b) = g.edges()[j];
        format!("{}-{}", g.name(a), g.name(b))
    };
    t.complexes
        .iter()
        .map(|(h, facets)| {
            let fs: Vec<Vec<String>> =
                facets.iter().map(|&f| (0..64).filter(|&j| f >> j & 1 == 1).map(edge).collect()).collect();
            json!({ "degree": h.to_string(), "facets": fs })
        })
        .collect()
}

pub fn cmd_betti(input: &Input, opts: &Options) -> Result<Report, Error> {
    let g = &input.graph;
    let mut r = header("betti", input);
    let th = theta(g);
    let formula = match betti_table(g) {
        Ok(t) => Some(t),
        Err(Error::UnsupportedFamily) if opts.oracle => None,
        Err(e) => return Err(e),
    };
    let oracle = if opts.oracle { Some(oracle_table(g, opts)?) } else { None };
    let shown = match (&formula, &oracle) {
        (Some(f), _) => f.clone(),
        (None, Some(o)) => o.table.clone(),
        (None, None) => unreachable!("formula errors return early without --oracle"),
    };
    r.result.insert("source".into(), json!(if formula.is_some() { "formula" } else { "oracle" }));
    r.result.insert("totals".into(), json!(shown.totals()));
    r.betti = Some(table_json(&shown));
    table_lines(&shown, &th, &mut r.lines);
    if opts.graded {
        let rows = graded_rows(&shown)?;
        graded_lines(&rows, &mut r.lines);
        r.graded = Some(rows);
    }
    if let Some(o) = &oracle {
        let bound = opts.region.bound(g);
        r.result.insert("points_scanned".into(), json!(o.points_scanned));
        let v = match &formula {
            Some(f) => compare(g, f, &o.table, &bound),
            None => Verdict::Skipped("no closed form for this graph".into()),
        };
        r.verdict("formula_vs_oracle", v);
        r.verdict("field_agreement", field_verdict(o));
        if opts.emit_complexes {
            r.result.insert("complexes".into(), complexes_json(g, o));
        }
    }
    Ok(r)
}

fn field_verdict(o: &OracleTable) -> Verdict {
    match o.field_disagreements.first() {
        None => Verdict::Pass,
        Some(h) => Verdict::Fail(json!({ "degree": h.to_string() })),
    }
}

pub fn cmd_verify(input: &Input, opts: &Options) -> Result<Report, Error> {
    let g = &input.graph;
    let mut r = header("verify", input);
    let p = pdim(g)? as usize;
    let formula = betti_table(g)?;
    let oracle = oracle_table(g, opts)?;
    let bound = opts.region.bound(g);
    let complete = covers_divisors(g, &bound);
    r.result.insert("points_scanned".into(), json!(oracle.points_scanned));
    r.result.insert("totals".into(), json!(formula.totals()));
    r.result.insert("oracle_totals".into(), json!(oracle.table.totals()));
    r.betti = Some(table_json(&formula));
    r.lines.push(format!("points scanned: {}", oracle.points_scanned));
    r.lines.push(format!("formula totals: {:?}", formula.totals()));
    r.lines.push(format!("oracle totals:  {:?}", oracle.table.totals()));

    r.verdict("formula_vs_oracle", compare(g, &formula, &oracle.table, &bound));
    r.verdict("field_agreement", field_verdict(&oracle));

    let mut closed = Verdict::Pass;
    for i in 0..=p {
        let want = total_betti(g, i)?;
        if formula.row_total(i) != want || (complete && oracle.table.row_total(i) != want) {
            closed = Verdict::Fail(json!({
                "i": i, "closed_form": want, "formula": formula.row_total(i), "oracle": oracle.table.row_total(i)
            }));
            break;
        }
    }
    r.verdict("row_totals", closed);

    if complete {
        let got = oracle.table.pdim();
        r.verdict(
            "pdim",
            if got == p { Verdict::Pass } else { Verdict::Fail(json!({ "expected": p, "oracle": got })) },
        );
        let report = duality_check(g, &oracle.table, opts.cap)?;
        r.result.insert("duality_points".into(), json!(report.points_checked));
        let v = match report.mismatches.first() {
            None => Verdict::Pass,
            Some(m) => Verdict::Fail(json!({ "i": m.i, "degree": m.degree.to_string(), "omega": m.omega, "ring": m.ring })),
        };
        r.verdict("duality", v);
    } else {
        let why = "region does not contain D_G";
        r.verdict("pdim", Verdict::Skipped(why.into()));
        r.verdict("duality", Verdict::Skipped(why.into()));
    }

    let gens = canonical_generators(g)?;
    let brute: BTreeSet<Multidegree> = minimal_interior_vectors(g)?.into_iter().collect();
    let closed: BTreeSet<Multidegree> = gens.generators.into_iter().collect();
    let v = match closed.symmetric_difference(&brute).next() {
        None => Verdict::Pass,
        Some(h) => Verdict::Fail(json!({ "degree": h.to_string(), "closed_form": closed.contains(h) })),
    };
    r.verdict("canonical_generators", v);
    if opts.graded {
        let rows = graded_rows(&formula)?;
        graded_lines(&rows, &mut r.lines);
        r.graded = Some(rows);
    }
    if opts.emit_complexes {
        r.result.insert("complexes".into(), complexes_json(g, &oracle));
    }
    Ok(r)
}

pub fn cmd_quotients(input: &Input, opts: &Options) -> Result<Report, Error> {
    let FamilySpec::TwoEar { m } = input.spec else {
        return Err(Error::UnsupportedFamily);
    };
    let m = m as usize;
    let mut r = header("quotients", input);
    let ideal = twoear_initial_ideal(m)?;
    let steps = regular_quotients(&ideal)?;
    let gens: Vec<Value> = ideal.generators().iter().map(degree_json).collect();
    r.lines.push(format!("initial ideal: {} generators", ideal.len()));
    for (j, u) in ideal.generators().iter().enumerate() {
        let colon = if j == 0 {
            String::from("-")
        } else {
            let s = &steps[j - 1];
            let gs: Vec<String> = s.generators.iter().map(|x| x.to_string()).collect();
            format!("({}){}", gs.join(", "), if s.regular { "" } else { "  not regular" })
        };
        r.lines.push(format!("  u_{} = {u}   colon: {colon}", j + 1));
    }
    let colons: Vec<Value> = steps
        .iter()
        .map(|s| json!({ "index": s.index + 1, "generators": s.generators.iter().map(degree_json).collect::<Vec<_>>(), "regular": s.regular }))
        .collect();
    r.result.insert("generators".into(), Value::Array(gens));
    r.result.insert("colons".into(), Value::Array(colons));
    match k_sequence(&steps) {
        Ok(ks) => {
            let reference = reference_k_sequence(m);
            r.lines.push(format!("k-sequence: {ks:?}"));
            r.result.insert("k_sequence".into(), json!(ks));
            r.verdict(
                "k_sequence",
                if ks == reference { Verdict::Pass } else { Verdict::Fail(json!({ "expected": reference, "found": ks })) },
            );
            let mut bounds = Vec::new();
            let mut bound_ok = Verdict::Pass;
            for i in 0..m {
                let b = mapping_cone_bound(&steps, i)?;
                let closed = (i as u64 + 1) * binomial(m as u64 + 1, i as u64 + 2);
                let ring = total_betti(&input.graph, i + 1)?;
                r.lines.push(format!("  i={i}: β_i(in I) <= {b}, β_i(I) = {ring}"));
                bounds.push(json!({ "i": i, "bound": b, "closed_form": closed, "toric": ring }));
                if (b != closed || ring > b) && matches!(bound_ok, Verdict::Pass) {
                    bound_ok = Verdict::Fail(json!({ "i": i, "bound": b, "closed_form": closed, "toric": ring }));
                }
            }
            r.result.insert("bounds".into(), Value::Array(bounds));
            r.verdict("mapping_cone_bound", bound_ok);
        }
        Err(Error::IrregularStep { index }) => {
            r.verdict("k_sequence", Verdict::Fail(json!({ "irregular_step": index + 1 })));
        }
        Err(e) => return Err(e),
    }
    if opts.oracle {
        let c = initial_betti_comparison(m, opts.cap)?;
        let rows: Vec<Value> =
            c.initial.entries.iter().map(|(&(i, j), &b)| json!({ "i": i, "j": j, "beta": b })).collect();
        r.result.insert("initial_graded".into(), Value::Array(rows));
        let keys: BTreeSet<(usize, u64)> = c.initial.entries.keys().chain(c.toric.entries.keys()).copied().collect();
        let v = keys
            .into_iter()
            .find(|&(i, j)| c.initial.get(i, j) != c.toric.get(i, j))
            .map_or(Verdict::Pass, |(i, j)| {
                Verdict::Fail(json!({ "i": i, "j": j, "initial": c.initial.get(i, j), "toric": c.toric.get(i, j) }))
            });
        r.verdict("initial_vs_toric", v);
    }
    Ok(r)
}
