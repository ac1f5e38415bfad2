//! Labeled simple graphs, the graph families with closed-form resolutions,
//! chordless cycle enumeration and structural recognition.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub type VertexId = usize;

/// What a vertex is within its family drawing. Only used for naming and
/// display; every algorithm works from the edge set alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// `u`, `v`, `w` of a compact graph.
    Big,
    /// Vertex of an odd cycle hanging off a big vertex.
    Petal,
    /// Inner vertex of the extra `u`-`v` path of `B^s`.
    Connector,
    /// `v1`, `v2` of multi-path and ear graphs.
    Apex,
    /// Inner vertex of a multi-path graph.
    PathInner,
    /// `x1`, `y1`.
    EarJoint,
    /// `x2`, `y2`.
    EarTip,
    /// `u_i` of an ear graph.
    Spoke,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub role: Role,
}

impl Vertex {
    pub fn new(name: impl Into<String>, role: Role) -> Self {
        Vertex { name: name.into(), role }
    }
}

/// A finite simple graph with named vertices.
///
/// Edges are stored as `(a, b)` with `a < b`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<VertexId>>,
    index: BTreeMap<String, VertexId>,
}

impl LabeledGraph {
    pub fn new(vertices: Vec<Vertex>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = vertices.len();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.name.clone(), i).is_some() {
                return Err(Error::NonSimpleGraph(format!("vertex `{}` repeated", v.name)));
            }
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameters(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::NonSimpleGraph(format!("self loop at `{}`", vertices[a].name)));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::NonSimpleGraph(format!(
                    "edge {}-{} repeated",
                    vertices[e.0].name, vertices[e.1].name
                )));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(LabeledGraph { vertices, edges, adj, index })
    }

    /// Builds a graph from named edges; vertices are numbered in order of
    /// first appearance and get [`Role::Plain`].
    pub fn from_named_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self> {
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut index: BTreeMap<String, VertexId> = BTreeMap::new();
        let mut ids = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let mut id = |name: &str| {
                *index.entry(name.to_string()).or_insert_with(|| {
                    vertices.push(Vertex::new(name, Role::Plain));
                    vertices.len() - 1
                })
            };
            let (a, b) = (a.as_ref().trim(), b.as_ref().trim());
            if a.is_empty() || b.is_empty() {
                return Err(Error::Parse("empty vertex name".into()));
            }
            ids.push((id(a), id(b)));
        }
        Self::new(vertices, &ids)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v].name
    }

    pub fn role(&self, v: VertexId) -> Role {
        self.vertices[v].role
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn index_of(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<VertexId> {
        self.index_of(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Vertex ids sorted by name; the order used for all output.
    pub fn ids_by_name(&self) -> Vec<VertexId> {
        self.index.values().copied().collect()
    }

    /// The degree vector `v_e` of an edge, dense over vertex ids.
    pub fn edge_vector(&self, e: usize) -> Vec<u32> {
        let mut v = vec![0; self.vertex_count()];
        let (a, b) = self.edges[e];
        v[a] = 1;
        v[b] = 1;
        v
    }

    pub fn is_connected(&self) -> bool {
        let all = vec![true; self.vertex_count()];
        self.vertex_count() > 0 && self.components_within(&all).len() == 1
    }

    /// Connected components of the subgraph induced on `mask`.
    pub fn components_within(&self, mask: &[bool]) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !mask[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let x = comp[k];
                k += 1;
                for &y in &self.adj[x] {
                    if mask[y] && !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the subgraph induced on `mask` is connected (and non-empty).
    pub fn connected_within(&self, mask: &[bool]) -> bool {
        self.components_within(mask).len() == 1
    }

    /// Two-colouring of the subgraph induced on `mask`; `None` if it has an odd cycle.
    pub fn two_colouring_within(&self, mask: &[bool]) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if !mask[s] || colour[s].is_some() {
                continue;
            }
            colour[s] = Some(true);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap_or(true);
                for &y in &self.adj[x] {
                    if !mask[y] {
                        continue;
                    }
                    match colour[y] {
                        None => {
                            colour[y] = Some(!cx);
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// The side of each vertex in a bipartition, vertex 0 on the `true`
    /// side; `None` if the graph is not bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        self.two_colouring_within(&vec![true; self.vertex_count()])
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// The subgraph induced on `keep`, with names and roles carried over.
    /// Vertices keep their relative order.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<LabeledGraph> {
        let mut sorted: Vec<VertexId> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(Error::InvalidParameters(format!("vertex id {bad} out of range")));
        }
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in sorted.iter().enumerate() {
            new_id[v] = i;
        }
        let vertices = sorted.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| new_id[a] != usize::MAX && new_id[b] != usize::MAX)
            .map(|&(a, b)| (new_id[a], new_id[b]))
            .collect();
        LabeledGraph::new(vertices, &edges)
    }

    pub fn induced_subgraph_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<LabeledGraph> {
        let ids = names.iter().map(|n| self.require(n.as_ref())).collect::<Result<Vec<_>>>()?;
        self.induced_subgraph(&ids)
    }

    /// Edge list by vertex names, for serialisation.
    pub fn named_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.name(a).to_string(), self.name(b).to_string()))
            .collect()
    }
}

/// A chordless cycle, listed in traversal order starting from its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }
}

/// All chordless cycles of `g`, each reported once.
pub fn minimal_cycles(g: &LabeledGraph) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for s in 0..n {
        for &p1 in g.neighbors(s) {
            if p1 <= s {
                continue;
            }
            let mut path = vec![s, p1];
            let mut on_path = vec![false; n];
            on_path[s] = true;
            on_path[p1] = true;
            extend_chordless(g, &mut path, &mut on_path, &mut out);
        }
    }
    out.sort();
    out
}

fn extend_chordless(
    g: &LabeledGraph,
    path: &mut Vec<VertexId>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let s = path[0];
    let last = *path.last().unwrap_or(&s);
    let k = path.len();
    for &x in g.neighbors(last) {
        if x <= s || on_path[x] {
            continue;
        }
        // no chord from x back to an inner path vertex other than `last`
        if path[1..k - 1].iter().any(|&p| g.adjacent(p, x)) {
            continue;
        }
        if g.adjacent(x, s) {
            // closing vertex; each cycle is found in both directions, keep one
            if path[1] < x {
                let mut vs = path.clone();
                vs.push(x);
                out.push(Cycle { vertices: vs });
            }
            continue;
        }
        path.push(x);
        on_path[x] = true;
        extend_chordless(g, path, on_path, out);
        on_path[x] = false;
        path.pop();
    }
}

/// Every pair of odd cycles shares a vertex or is joined by an edge.
///
/// Any odd cycle contains the vertex set of a chordless odd cycle, so it is
/// enough to test chordless ones.
pub fn odd_cycle_condition(g: &LabeledGraph) -> bool {
    let odd: Vec<Cycle> = minimal_cycles(g).into_iter().filter(Cycle::is_odd).collect();
    let n = g.vertex_count();
    let masks: Vec<Vec<bool>> = odd
        .iter()
        .map(|c| {
            let mut m = vec![false; n];
            for &v in &c.vertices {
                m[v] = true;
            }
            m
        })
        .collect();
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            let touching = odd[j].vertices.iter().any(|&v| {
                masks[i][v] || g.neighbors(v).iter().any(|&w| masks[i][w])
            });
            if !touching {
                return false;
            }
        }
    }
    true
}

/// Projective dimension of `K[G]` over the polynomial ring on the edges:
/// `|E| - |V| + 1` if bipartite, `|E| - |V|` otherwise.
pub fn pdim(g: &LabeledGraph) -> Result<u32> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !odd_cycle_condition(g) {
        return Err(Error::NotNormal);
    }
    let (e, v) = (g.edge_count() as i64, g.vertex_count() as i64);
    let p = if g.is_bipartite() { e - v + 1 } else { e - v };
    Ok(p.max(0) as u32)
}

/// A member of one of the supported families, or an arbitrary edge list.
///
/// Petal parameters `p` stand for odd cycles of length `2p + 1`; multi-path
/// lengths count edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilySpec {
    /// One big vertex `u` with at least two petals.
    CompactA { petals: Vec<u32> },
    /// Adjacent big vertices `u`, `v`; `s` is the length of the extra
    /// `u`-`v` path (0 for none, otherwise even).
    CompactB { s: u32, u_petals: Vec<u32>, v_petals: Vec<u32> },
    /// A triangle `u v w` with petals at each corner.
    CompactC { u_petals: Vec<u32>, v_petals: Vec<u32>, w_petals: Vec<u32> },
    /// Internally disjoint paths between `v1` and `v2`.
    MultiPath { lengths: Vec<u32> },
    /// Triangles at `v1` and `v2` joined by `x1 - y1`, plus `m - 1` spokes.
    TwoEar { m: u32 },
    /// The two-ear graph with `x2` removed.
    OneEar { m: u32 },
    /// `K_{2,d}`.
    CompleteBipartite2d { d: u32 },
    Custom { edges: Vec<(String, String)> },
}

impl FamilySpec {
    /// Parameters with each petal list sorted, for comparisons up to
    /// reordering.
    pub fn normalized(&self) -> FamilySpec {
        let sorted = |v: &Vec<u32>| {
            let mut v = v.clone();
            v.sort_unstable();
            v
        };
        match self {
            FamilySpec::CompactA { petals } => FamilySpec::CompactA { petals: sorted(petals) },
            FamilySpec::CompactB { s, u_petals, v_petals } => {
                let (a, b) = (sorted(u_petals), sorted(v_petals));
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                FamilySpec::CompactB { s: *s, u_petals: a, v_petals: b }
            }
            FamilySpec::CompactC { u_petals, v_petals, w_petals } => {
                let mut all = [sorted(u_petals), sorted(v_petals), sorted(w_petals)];
                all.sort();
                let [a, b, c] = all;
                FamilySpec::CompactC { u_petals: a, v_petals: b, w_petals: c }
            }
            FamilySpec::MultiPath { lengths } => FamilySpec::MultiPath { lengths: sorted(lengths) },
            other => other.clone(),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::CompactA { .. } => "compact-A",
            FamilySpec::CompactB { .. } => "compact-B",
            FamilySpec::CompactC { .. } => "compact-C",
            FamilySpec::MultiPath { lengths } => match multipath_kind(lengths) {
                MultiPathKind::Even => "multi-path-even",
                MultiPathKind::Odd => "multi-path-odd",
                MultiPathKind::Mixed => "multi-path-mixed",
            },
            FamilySpec::TwoEar { .. } => "two-ear",
            FamilySpec::OneEar { .. } => "one-ear",
            FamilySpec::CompleteBipartite2d { .. } => "complete-bipartite-2d",
            FamilySpec::Custom { .. } => "custom",
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::CompactA { petals } => write!(f, "A {}", join(petals)),
            FamilySpec::CompactB { s, u_petals, v_petals } => {
                write!(f, "B s={s} {}:{}", join(u_petals), join(v_petals))
            }
            FamilySpec::CompactC { u_petals, v_petals, w_petals } => {
                write!(f, "C {}:{}:{}", join(u_petals), join(v_petals), join(w_petals))
            }
            FamilySpec::MultiPath { lengths } => write!(f, "MP {}", join(lengths)),
            FamilySpec::TwoEar { m } => write!(f, "TE {m}"),
            FamilySpec::OneEar { m } => write!(f, "OE {m}"),
            FamilySpec::CompleteBipartite2d { d } => write!(f, "K2D {d}"),
            FamilySpec::Custom { edges } => {
                let parts: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "EDGES {}", parts.join(","))
            }
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("expected a positive integer, got {x:?}"))))
        .collect()
}

fn parse_one(s: &str) -> Result<u32> {
    s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

/// Parses the text form produced by `Display`: `A 1,2`, `B s=2 1:1,2`
/// (`s=` may be omitted for 0), `C 1:1:1,1`, `MP 2,3`, `TE m`, `OE m`,
/// `K2D d` and `EDGES a-b,b-c`.
impl core::str::FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let rest = rest.trim();
        if rest.is_empty() {
            return Err(Error::Parse(format!("missing parameters in {s:?}")));
        }
        let spec = match head.to_ascii_uppercase().as_str() {
            "A" => FamilySpec::CompactA { petals: parse_list(rest)? },
            "B" => {
                let (sv, body) = match rest.strip_prefix("s=") {
                    Some(r) => {
                        let (a, b) = r.split_once(char::is_whitespace).ok_or_else(|| Error::Parse("expected petals after s=".into()))?;
                        (parse_one(a)?, b.trim())
                    }
                    None => (0, rest),
                };
                let (a, b) = body.split_once(':').ok_or_else(|| Error::Parse("expected p:q in B spec".into()))?;
                FamilySpec::CompactB { s: sv, u_petals: parse_list(a)?, v_petals: parse_list(b)? }
            }
            "C" => {
                let parts: Vec<&str> = rest.split(':').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse("expected p:q:r in C spec".into()));
                }
                FamilySpec::CompactC {
                    u_petals: parse_list(parts[0])?,
                    v_petals: parse_list(parts[1])?,
                    w_petals: parse_list(parts[2])?,
                }
            }
            "MP" => FamilySpec::MultiPath { lengths: parse_list(rest)? },
            "TE" => FamilySpec::TwoEar { m: parse_one(rest)? },
            "OE" => FamilySpec::OneEar { m: parse_one(rest)? },
            "K2D" => FamilySpec::CompleteBipartite2d { d: parse_one(rest)? },
            "EDGES" => {
                let mut edges = Vec::new();
                for e in rest.split(',') {
                    let (a, b) = e.trim().split_once('-').ok_or_else(|| Error::Parse(format!("bad edge {e:?}")))?;
                    let (a, b) = (a.trim(), b.trim());
                    if a.is_empty() || b.is_empty() {
                        return Err(Error::Parse(format!("bad edge {e:?}")));
                    }
                    edges.push((a.to_string(), b.to_string()));
                }
                FamilySpec::Custom { edges }
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiPathKind {
    /// All lengths even; the graph is bipartite.
    Even,
    /// All lengths odd; bipartite as well.
    Odd,
    /// Both parities present.
    Mixed,
}

pub fn multipath_kind(lengths: &[u32]) -> MultiPathKind {
    let evens = lengths.iter().filter(|&&l| l % 2 == 0).count();
    if evens == lengths.len() {
        MultiPathKind::Even
    } else if evens == 0 {
        MultiPathKind::Odd
    } else {
        MultiPathKind::Mixed
    }
}

struct Builder {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Builder {
    fn new() -> Self {
        Builder { vertices: Vec::new(), edges: Vec::new() }
    }

    fn vertex(&mut self, name: String, role: Role) -> VertexId {
        self.vertices.push(Vertex { name, role });
        self.vertices.len() - 1
    }

    fn edge(&mut self, a: VertexId, b: VertexId) {
        self.edges.push((a, b));
    }

    /// Path `from - x_1 - ... - x_k - to` through fresh vertices.
    fn path(&mut self, from: VertexId, to: VertexId, names: Vec<String>, role: Role) {
        let mut prev = from;
        for name in names {
            let x = self.vertex(name, role);
            self.edge(prev, x);
            prev = x;
        }
        self.edge(prev, to);
    }

    fn petals(&mut self, centre: VertexId, label: &str, petals: &[u32]) {
        for (i, &p) in petals.iter().enumerate() {
            let names = (1..=2 * p).map(|j| format!("{label}_{}_{j}", i + 1)).collect();
            self.path(centre, centre, names, Role::Petal);
        }
    }

    fn finish(self) -> Result<LabeledGraph> {
        LabeledGraph::new(self.vertices, &self.edges)
    }
}

fn check_petals(what: &str, petals: &[u32], min_count: usize) -> Result<()> {
    if petals.len() < min_count {
        return Err(Error::InvalidParameters(format!(
            "{what} needs at least {min_count} odd cycle(s), got {}",
            petals.len()
        )));
    }
    if petals.contains(&0) {
        return Err(Error::InvalidParameters(format!("{what}: petal parameters must be >= 1")));
    }
    Ok(())
}

/// Builds the canonical labeled graph of a family member.
///
/// Names: big vertices `u`, `v`, `w`; petal `i` at `u` has `u_i_1 ..`;
/// the `B^s` connector is `w_1 .. w_{s-1}`; multi-path apexes are `v1`,
/// `v2` with path `i` running `v1 - u_i_1 - .. - v2`; ear graphs use `v1`,
/// `v2`, `x1`, `x2`, `y1`, `y2` and spokes `u_1 .. u_{m-1}`.
pub fn build_family(spec: &FamilySpec) -> Result<LabeledGraph> {
    let mut b = Builder::new();
    match spec {
        FamilySpec::CompactA { petals } => {
            check_petals("A", petals, 2)?;
            let u = b.vertex("u".into(), Role::Big);
            b.petals(u, "u", petals);
        }
        FamilySpec::CompactB { s, u_petals, v_petals } => {
            check_petals("B (u side)", u_petals, 1)?;
            check_petals("B (v side)", v_petals, 1)?;
            if s % 2 == 1 {
                return Err(Error::InvalidParameters(format!("B: s must be even, got {s}")));
            }
            let u = b.vertex("u".into(), Role::Big);
            let v = b.vertex("v".into(), Role::Big);
            b.edge(u, v);
            if *s > 0 {
                let names = (1..*s).map(|j| format!("w_{j}")).collect();
                b.path(u, v, names, Role::Connector);
            }
            b.petals(u, "u", u_petals);
            b.petals(v, "v", v_petals);
        }
        FamilySpec::CompactC { u_petals, v_petals, w_petals } => {
            check_petals("C (u side)", u_petals, 1)?;
            check_petals("C (v side)", v_petals, 1)?;
            check_petals("C (w side)", w_petals, 1)?;
            let u = b.vertex("u".into(), Role::Big);
            let v = b.vertex("v".into(), Role::Big);
            let w = b.vertex("w".into(), Role::Big);
            b.edge(u, v);
            b.edge(v, w);
            b.edge(u, w);
            b.petals(u, "u", u_petals);
            b.petals(v, "v", v_petals);
            b.petals(w, "w", w_petals);
        }
        FamilySpec::MultiPath { lengths } => {
            if lengths.len() < 2 {
                return Err(Error::InvalidParameters("MP needs at least two paths".into()));
            }
            if lengths.iter().any(|&l| l < 2) {
                return Err(Error::InvalidParameters("MP path lengths must be >= 2".into()));
            }
            build_multipath(&mut b, lengths);
        }
        FamilySpec::CompleteBipartite2d { d } => {
            if *d < 2 {
                return Err(Error::InvalidParameters("K2D needs d >= 2".into()));
            }
            build_multipath(&mut b, &vec![2; *d as usize]);
        }
        FamilySpec::TwoEar { m } | FamilySpec::OneEar { m } => {
            let two = matches!(spec, FamilySpec::TwoEar { .. });
            if *m < 1 || (!two && *m < 2) {
                return Err(Error::InvalidParameters(format!(
                    "{} needs m >= {}",
                    if two { "TE" } else { "OE" },
                    if two { 1 } else { 2 }
                )));
            }
            let v1 = b.vertex("v1".into(), Role::Apex);
            let v2 = b.vertex("v2".into(), Role::Apex);
            let x1 = b.vertex("x1".into(), Role::EarJoint);
            let y1 = b.vertex("y1".into(), Role::EarJoint);
            let y2 = b.vertex("y2".into(), Role::EarTip);
            b.edge(v1, x1);
            b.edge(x1, y1);
            b.edge(y1, v2);
            b.edge(y1, y2);
            b.edge(y2, v2);
            if two {
                let x2 = b.vertex("x2".into(), Role::EarTip);
                b.edge(v1, x2);
                b.edge(x1, x2);
            }
            for i in 1..*m {
                let s = b.vertex(format!("u_{i}"), Role::Spoke);
                b.edge(v1, s);
                b.edge(s, v2);
            }
        }
        FamilySpec::Custom { edges } => return LabeledGraph::from_named_edges(edges),
    }
    b.finish()
}

fn build_multipath(b: &mut Builder, lengths: &[u32]) {
    let v1 = b.vertex("v1".into(), Role::Apex);
    let v2 = b.vertex("v2".into(), Role::Apex);
    for (i, &l) in lengths.iter().enumerate() {
        let names = (1..l).map(|j| format!("u_{}_{j}", i + 1)).collect();
        b.path(v1, v2, names, Role::PathInner);
    }
}

/// Structural description of a recognised family member, in terms of the
/// vertex ids of the graph it was recognised in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `bigs` holds one, two or three big vertices; `petals[k]` lists the
    /// petal paths at `bigs[k]`; `connector` is the inner path of `B^s`.
    Compact { bigs: Vec<VertexId>, petals: Vec<Vec<Vec<VertexId>>>, connector: Vec<VertexId> },
    /// Paths listed by their inner vertices, starting next to `apexes[0]`.
    MultiPath { apexes: [VertexId; 2], paths: Vec<Vec<VertexId>> },
    TwoEar { v1: VertexId, v2: VertexId, x1: VertexId, x2: VertexId, y1: VertexId, y2: VertexId, spokes: Vec<VertexId> },
    /// `v1 - x1 - y1` with the ear triangle `y1 y2 v2`.
    OneEar { v1: VertexId, v2: VertexId, x1: VertexId, y1: VertexId, y2: VertexId, spokes: Vec<VertexId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub spec: FamilySpec,
    pub shape: Shape,
}

/// Identifies `g` as a member of a supported family, if it is one.
///
/// A bare cycle of length `2k` is read as `MP k,k` (or `K2D 2` when
/// `k = 2`), one of length `2k + 1` as `MP k,k+1`. `TE 1` is the compact
/// graph `B s=0 1:1` and is reported as such.
pub fn recognize(g: &LabeledGraph) -> Option<Recognition> {
    if !g.is_connected() || g.vertex_count() < 3 {
        return None;
    }
    if (0..g.vertex_count()).any(|v| g.degree(v) < 2) {
        return None;
    }
    recognize_compact(g)
        .or_else(|| recognize_two_ear(g))
        .or_else(|| recognize_one_ear(g))
        .or_else(|| recognize_multipath(g))
}

/// Classifies `g`; anything unrecognised becomes [`FamilySpec::Custom`].
pub fn classify(g: &LabeledGraph) -> FamilySpec {
    match recognize(g) {
        Some(r) => r.spec,
        None => FamilySpec::Custom { edges: g.named_edges() },
    }
}

/// Maximal paths of degree-2 vertices outside `bigs`, each with the big
/// vertices at its two ends. Fails if some component is not such a path.
fn hanging_paths(g: &LabeledGraph, bigs: &[VertexId]) -> Option<Vec<(VertexId, Vec<VertexId>, VertexId)>> {
    let n = g.vertex_count();
    let mut mask = vec![true; n];
    for &b in bigs {
        mask[b] = false;
    }
    let mut out = Vec::new();
    for comp in g.components_within(&mask) {
        if comp.iter().any(|&v| g.degree(v) != 2) {
            return None;
        }
        // an end has a big neighbour; a single vertex has two
        let ends: Vec<VertexId> = comp
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).iter().any(|&w| !mask[w]))
            .collect();
        let start = *ends.first()?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = g.neighbors(cur).iter().copied().find(|&w| mask[w] && w != prev);
            match next {
                Some(w) if !order.contains(&w) => {
                    order.push(w);
                    prev = cur;
                    cur = w;
                }
                Some(_) => return None,
                None => break,
            }
        }
        if order.len() != comp.len() {
            return None;
        }
        let outside = |v: VertexId, skip: Option<VertexId>| -> Vec<VertexId> {
            g.neighbors(v).iter().copied().filter(|&w| !mask[w] && Some(w) != skip).collect()
        };
        let first = *order.first()?;
        let last = *order.last()?;
        let (a, b) = if order.len() == 1 {
            let out = outside(first, None);
            if out.len() != 2 {
                return None;
            }
            (out[0], out[1])
        } else {
            let oa = outside(first, None);
            let ob = outside(last, None);
            if oa.len() != 1 || ob.len() != 1 {
                return None;
            }
            (oa[0], ob[0])
        };
        out.push((a, order, b));
    }
    Some(out)
}

fn recognize_compact(g: &LabeledGraph) -> Option<Recognition> {
    let bigs: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| g.degree(v) >= 3).collect();
    if bigs.is_empty() || bigs.len() > 3 {
        return None;
    }
    for i in 0..bigs.len() {
        for j in i + 1..bigs.len() {
            if !g.adjacent(bigs[i], bigs[j]) {
                return None;
            }
        }
    }
    let paths = hanging_paths(g, &bigs)?;
    let mut petals: Vec<Vec<Vec<VertexId>>> = vec![Vec::new(); bigs.len()];
    let mut connector: Option<Vec<VertexId>> = None;
    for (a, inner, b) in paths {
        if a == b {
            if inner.len() % 2 == 1 {
                return None;
            }
            let k = bigs.iter().position(|&x| x == a)?;
            petals[k].push(inner);
        } else {
            if bigs.len() != 2 || connector.is_some() || inner.len() % 2 == 0 {
                return None;
            }
            let inner = if a == bigs[0] { inner } else { inner.into_iter().rev().collect() };
            connector = Some(inner);
        }
    }
    if petals.iter().any(|p| p.is_empty()) {
        return None;
    }
    let params = |k: usize| -> Vec<u32> { petals[k].iter().map(|p| (p.len() / 2) as u32).collect() };
    let spec = match bigs.len() {
        1 => {
            if petals[0].len() < 2 {
                return None;
            }
            FamilySpec::CompactA { petals: params(0) }
        }
        2 => FamilySpec::CompactB {
            s: connector.as_ref().map_or(0, |c| c.len() as u32 + 1),
            u_petals: params(0),
            v_petals: params(1),
        },
        _ => FamilySpec::CompactC { u_petals: params(0), v_petals: params(1), w_petals: params(2) },
    };
    Some(Recognition {
        spec,
        shape: Shape::Compact { bigs, petals, connector: connector.unwrap_or_default() },
    })
}

fn recognize_multipath(g: &LabeledGraph) -> Option<Recognition> {
    let n = g.vertex_count();
    let bigs: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    let apexes = match bigs.len() {
        0 => {
            // a bare cycle; split it as evenly as possible at vertex 0
            let cycle = &minimal_cycles(g);
            if cycle.len() != 1 || cycle[0].len() != n {
                return None;
            }
            let order = &cycle[0].vertices;
            [order[0], order[n / 2]]
        }
        2 => {
            if g.adjacent(bigs[0], bigs[1]) {
                return None;
            }
            [bigs[0], bigs[1]]
        }
        _ => return None,
    };
    let paths = hanging_paths(g, &apexes)?;
    let mut inner_paths = Vec::new();
    for (a, inner, b) in paths {
        if a == b {
            return None;
        }
        let inner = if a == apexes[0] { inner } else { inner.into_iter().rev().collect() };
        inner_paths.push(inner);
    }
    let lengths: Vec<u32> = inner_paths.iter().map(|p| p.len() as u32 + 1).collect();
    let spec = if lengths.iter().all(|&l| l == 2) {
        FamilySpec::CompleteBipartite2d { d: lengths.len() as u32 }
    } else {
        FamilySpec::MultiPath { lengths }
    };
    Some(Recognition { spec, shape: Shape::MultiPath { apexes, paths: inner_paths } })
}

/// Finds a triangle `apex - joint - tip` with `tip` of degree 2 and `joint`
/// of degree 3; returns `(apex, tip)`.
fn ear_at(g: &LabeledGraph, joint: VertexId) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    if g.degree(joint) != 3 {
        return out;
    }
    for &tip in g.neighbors(joint) {
        if g.degree(tip) != 2 {
            continue;
        }
        for &apex in g.neighbors(tip) {
            if apex != joint && g.adjacent(apex, joint) {
                out.push((apex, tip));
            }
        }
    }
    out
}

fn spokes_between(g: &LabeledGraph, v1: VertexId, v2: VertexId, used: &[VertexId]) -> Option<Vec<VertexId>> {
    let mut spokes = Vec::new();
    for v in 0..g.vertex_count() {
        if used.contains(&v) {
            continue;
        }
        if g.degree(v) != 2 || !g.adjacent(v, v1) || !g.adjacent(v, v2) {
            return None;
        }
        spokes.push(v);
    }
    Some(spokes)
}

fn recognize_two_ear(g: &LabeledGraph) -> Option<Recognition> {
    for &(a, b) in g.edges() {
        for (x1, y1) in [(a, b), (b, a)] {
            for (v1, x2) in ear_at(g, x1) {
                for (v2, y2) in ear_at(g, y1) {
                    let used = [v1, v2, x1, x2, y1, y2];
                    if v1 == v2 || v1 == y1 || v2 == x1 || g.adjacent(v1, v2) {
                        continue;
                    }
                    let Some(spokes) = spokes_between(g, v1, v2, &used) else { continue };
                    if spokes.is_empty() || g.edge_count() != 7 + 2 * spokes.len() {
                        continue;
                    }
                    let m = spokes.len() as u32 + 1;
                    return Some(Recognition {
                        spec: FamilySpec::TwoEar { m },
                        shape: Shape::TwoEar { v1, v2, x1, x2, y1, y2, spokes },
                    });
                }
            }
        }
    }
    None
}

fn recognize_one_ear(g: &LabeledGraph) -> Option<Recognition> {
    for y1 in 0..g.vertex_count() {
        for (v2, y2) in ear_at(g, y1) {
            for &x1 in g.neighbors(y1) {
                if x1 == v2 || x1 == y2 || g.degree(x1) != 2 {
                    continue;
                }
                let Some(&v1) = g.neighbors(x1).iter().find(|&&w| w != y1) else { continue };
                if v1 == v2 || g.adjacent(v1, v2) {
                    continue;
                }
                let used = [v1, v2, x1, y1, y2];
                let Some(spokes) = spokes_between(g, v1, v2, &used) else { continue };
                if spokes.is_empty() || g.edge_count() != 5 + 2 * spokes.len() {
                    continue;
                }
                let m = spokes.len() as u32 + 1;
                return Some(Recognition {
                    spec: FamilySpec::OneEar { m },
                    shape: Shape::OneEar { v1, v2, x1, y1, y2, spokes },
                });
            }
        }
    }
    None
}
