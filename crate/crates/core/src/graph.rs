//! Finite directed graphs (quivers), finite paths, extended graphs, and the union and
//! intersection constructions.
//!
//! Infinite emitters are represented combinatorially: an omega tail `(v, w)` stands for countably
//! many anonymous parallel edges `v -> w`. Tails take part in vertex classification, in the
//! hereditary/saturated/breaking-vertex predicates, and in unions and intersections. Everything
//! that needs a finite path space rejects tailed graphs.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

macro_rules! id_type {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(s: impl AsRef<str>) -> Self {
                Self(Arc::from(s.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(Arc::from(s))
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

id_type!(VertexId);
id_type!(EdgeId);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endpoints {
    pub src: VertexId,
    pub tgt: VertexId,
}

/// A finite graph `(E^0, E^1, s, t)` with optional omega tails.
///
/// Construction never fails; [`Graph::validate`] reports broken invariants. Operations document
/// whether they expect a valid graph.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc", into = "GraphDoc")]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Endpoints>,
    omega_tails: BTreeSet<(VertexId, VertexId)>,
    out_edges: BTreeMap<VertexId, Vec<EdgeId>>,
    in_edges: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.omega_tails == other.omega_tails
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ V: {:?}, E: [", self.vertices)?;
        for (i, (e, ep)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}: {}->{}", ep.src, ep.tgt)?;
        }
        write!(f, "]")?;
        if !self.omega_tails.is_empty() {
            write!(f, ", tails: {:?}", self.omega_tails)?;
        }
        write!(f, " }}")
    }
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
        omega_tails: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let edges: BTreeMap<EdgeId, Endpoints> = edges
            .into_iter()
            .map(|(e, src, tgt)| (e, Endpoints { src, tgt }))
            .collect();
        let omega_tails = omega_tails.into_iter().collect();
        let mut out_edges: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        let mut in_edges: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for (e, ep) in &edges {
            out_edges.entry(ep.src.clone()).or_default().push(e.clone());
            in_edges.entry(ep.tgt.clone()).or_default().push(e.clone());
        }
        Self {
            vertices,
            edges,
            omega_tails,
            out_edges,
            in_edges,
        }
    }

    pub fn empty() -> Self {
        Self::new([], [], [])
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &VertexId> + Clone {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (&EdgeId, &Endpoints)> + Clone {
        self.edges.iter()
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = &EdgeId> + Clone {
        self.edges.keys()
    }

    pub fn omega_tails(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.omega_tails
    }

    pub fn has_tails(&self) -> bool {
        !self.omega_tails.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, e: &str) -> bool {
        self.edges.contains_key(e)
    }

    pub fn endpoints(&self, e: &str) -> Option<&Endpoints> {
        self.edges.get(e)
    }

    /// Source of an edge. Panics if `e` is not an edge of the graph.
    pub fn src(&self, e: &str) -> &VertexId {
        &self.edges[e].src
    }

    /// Target of an edge. Panics if `e` is not an edge of the graph.
    pub fn tgt(&self, e: &str) -> &VertexId {
        &self.edges[e].tgt
    }

    /// `s^{-1}(v)` in id order.
    pub fn out_edges(&self, v: &str) -> &[EdgeId] {
        self.out_edges.get(v).map_or(&[], Vec::as_slice)
    }

    /// `t^{-1}(v)` in id order.
    pub fn in_edges(&self, v: &str) -> &[EdgeId] {
        self.in_edges.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn emits_tail(&self, v: &str) -> bool {
        self.omega_tails.iter().any(|(a, _)| a.as_str() == v)
    }

    pub fn receives_tail(&self, v: &str) -> bool {
        self.omega_tails.iter().any(|(_, b)| b.as_str() == v)
    }

    pub fn is_sink(&self, v: &str) -> bool {
        self.out_edges(v).is_empty() && !self.emits_tail(v)
    }

    pub fn is_source(&self, v: &str) -> bool {
        self.in_edges(v).is_empty() && !self.receives_tail(v)
    }

    pub fn is_infinite_emitter(&self, v: &str) -> bool {
        self.emits_tail(v)
    }

    /// Emits at least one and only finitely many edges.
    pub fn is_regular(&self, v: &str) -> bool {
        !self.out_edges(v).is_empty() && !self.emits_tail(v)
    }

    pub fn regular_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices
            .iter()
            .filter(|v| self.is_regular(v.as_str()))
            .cloned()
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for v in &self.vertices {
            if v.as_str().is_empty() {
                violations.push(Violation::EmptyId {
                    what: "vertex".into(),
                });
            }
        }
        for (e, ep) in &self.edges {
            if e.as_str().is_empty() {
                violations.push(Violation::EmptyId {
                    what: "edge".into(),
                });
            }
            if !self.vertices.contains(&ep.src) {
                violations.push(Violation::DanglingSource {
                    edge: e.clone(),
                    vertex: ep.src.clone(),
                });
            }
            if !self.vertices.contains(&ep.tgt) {
                violations.push(Violation::DanglingTarget {
                    edge: e.clone(),
                    vertex: ep.tgt.clone(),
                });
            }
        }
        for (a, b) in &self.omega_tails {
            for v in [a, b] {
                if !self.vertices.contains(v) {
                    violations.push(Violation::DanglingTail {
                        tail: (a.clone(), b.clone()),
                        vertex: v.clone(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report.to_string()))
        }
    }

    pub fn ensure_tail_free(&self) -> Result<()> {
        match self.omega_tails.iter().next() {
            None => Ok(()),
            Some((a, b)) => Err(Error::TailedGraph(format!("tail ({a}, {b})"))),
        }
    }

    pub fn classify_vertices(&self) -> VertexClasses {
        let mut classes = VertexClasses::default();
        for v in &self.vertices {
            let v_str = v.as_str();
            if self.is_sink(v_str) {
                classes.sinks.insert(v.clone());
            }
            if self.is_source(v_str) {
                classes.sources.insert(v.clone());
            }
            if self.is_infinite_emitter(v_str) {
                classes.infinite_emitters.insert(v.clone());
            }
            if self.is_regular(v_str) {
                classes.regular.insert(v.clone());
            }
        }
        classes
    }

    pub fn path_source(&self, p: &Path) -> VertexId {
        match p {
            Path::Vertex(v) => v.clone(),
            Path::Edges(es) => self.src(es[0].as_str()).clone(),
        }
    }

    pub fn path_target(&self, p: &Path) -> VertexId {
        match p {
            Path::Vertex(v) => v.clone(),
            Path::Edges(es) => self.tgt(es[es.len() - 1].as_str()).clone(),
        }
    }

    /// Checks that `p` is a finite path of this graph.
    pub fn check_path(&self, p: &Path) -> Result<()> {
        match p {
            Path::Vertex(v) => {
                if self.has_vertex(v.as_str()) {
                    Ok(())
                } else {
                    Err(Error::NotAPath(format!("unknown vertex {v}")))
                }
            }
            Path::Edges(es) => {
                if es.is_empty() {
                    return Err(Error::NotAPath("empty edge sequence".into()));
                }
                for e in es {
                    if !self.has_edge(e.as_str()) {
                        return Err(Error::NotAPath(format!("unknown edge {e}")));
                    }
                }
                for w in es.windows(2) {
                    if self.tgt(w[0].as_str()) != self.src(w[1].as_str()) {
                        return Err(Error::NotAPath(format!(
                            "{} ends at {} but {} starts at {}",
                            w[0],
                            self.tgt(w[0].as_str()),
                            w[1],
                            self.src(w[1].as_str())
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Concatenation `pq`, defined when `t(p) = s(q)`.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.path_target(p) != self.path_source(q) {
            return None;
        }
        Some(match (p, q) {
            (Path::Vertex(_), _) => q.clone(),
            (_, Path::Vertex(_)) => p.clone(),
            (Path::Edges(a), Path::Edges(b)) => {
                let mut es = a.clone();
                es.extend(b.iter().cloned());
                Path::Edges(es)
            }
        })
    }

    /// Returns `r` with `p = prefix · r`, if `prefix` is an initial segment of `p`.
    pub fn strip_prefix(&self, p: &Path, prefix: &Path) -> Option<Path> {
        match (prefix, p) {
            (Path::Vertex(v), _) => (self.path_source(p) == *v).then(|| p.clone()),
            (Path::Edges(_), Path::Vertex(_)) => None,
            (Path::Edges(a), Path::Edges(b)) => {
                if b.len() < a.len() || b[..a.len()] != a[..] {
                    return None;
                }
                if b.len() == a.len() {
                    Some(Path::Vertex(self.path_target(p)))
                } else {
                    Some(Path::Edges(b[a.len()..].to_vec()))
                }
            }
        }
    }

    /// All paths of length exactly `n`, in basis order.
    pub fn paths_of_length(&self, n: usize) -> Vec<Path> {
        if n == 0 {
            return self.vertices.iter().cloned().map(Path::Vertex).collect();
        }
        let mut level: Vec<Vec<EdgeId>> = self.edges.keys().map(|e| vec![e.clone()]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for es in &level {
                let end = self.tgt(es[es.len() - 1].as_str());
                for e in self.out_edges(end.as_str()) {
                    let mut es2 = es.clone();
                    es2.push(e.clone());
                    next.push(es2);
                }
            }
            level = next;
        }
        let mut out: Vec<Path> = level.into_iter().map(Path::Edges).collect();
        out.sort();
        out
    }

    /// `FP(E)` truncated at length `n`, ordered by (length, lexicographic ids).
    pub fn paths_up_to(&self, n: usize) -> Vec<Path> {
        (0..=n).flat_map(|k| self.paths_of_length(k)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.longest_path_len().is_some()
    }

    /// Length of the longest path, or `None` when the graph has a cycle.
    pub fn longest_path_len(&self) -> Option<usize> {
        // Kahn's algorithm over edges, tracking longest distance ending at each vertex.
        let mut indeg: BTreeMap<&VertexId, usize> =
            self.vertices.iter().map(|v| (v, self.in_edges(v.as_str()).len())).collect();
        let mut longest: BTreeMap<&VertexId, usize> =
            self.vertices.iter().map(|v| (v, 0)).collect();
        let mut ready: Vec<&VertexId> =
            indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            let here = longest[v];
            for e in self.out_edges(v.as_str()) {
                let w = self.tgt(e.as_str());
                let slot = longest.get_mut(w)?;
                *slot = (*slot).max(here + 1);
                let d = indeg.get_mut(w)?;
                *d -= 1;
                if *d == 0 {
                    ready.push(self.vertices.get(w)?);
                }
            }
        }
        (seen == self.vertices.len()).then(|| longest.values().copied().max().unwrap_or(0))
    }

    pub fn extended_graph(&self) -> Result<ExtendedGraph> {
        self.ensure_tail_free()?;
        let mut edges: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
        let mut ghost_of = BTreeMap::new();
        let mut real_of = BTreeMap::new();
        for (e, ep) in &self.edges {
            let ghost = EdgeId::new(format!("{e}*"));
            if self.edges.contains_key(&ghost) {
                return Err(Error::InvalidGraph(format!(
                    "ghost edge id {ghost} collides with an existing edge"
                )));
            }
            edges.push((e.clone(), ep.src.clone(), ep.tgt.clone()));
            edges.push((ghost.clone(), ep.tgt.clone(), ep.src.clone()));
            ghost_of.insert(e.clone(), ghost.clone());
            real_of.insert(ghost, e.clone());
        }
        Ok(ExtendedGraph {
            graph: Graph::new(self.vertices.iter().cloned(), edges, []),
            ghost_of,
            real_of,
        })
    }

    fn check_overlap(&self, other: &Graph) -> Result<()> {
        for (e, ep) in &self.edges {
            if let Some(other_ep) = other.edges.get(e) {
                if ep != other_ep {
                    return Err(Error::IncompatibleOverlap(format!(
                        "edge {e} is {}->{} in one graph and {}->{} in the other",
                        ep.src, ep.tgt, other_ep.src, other_ep.tgt
                    )));
                }
            }
        }
        Ok(())
    }

    /// `F ∪ G` over shared ids.
    pub fn union_graph(&self, other: &Graph) -> Result<Graph> {
        self.check_overlap(other)?;
        let vertices = self.vertices.union(&other.vertices).cloned();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|(e, ep)| (e.clone(), ep.clone())));
        let tails = self.omega_tails.union(&other.omega_tails).cloned();
        Ok(Graph::new(
            vertices,
            edges.into_iter().map(|(e, ep)| (e, ep.src, ep.tgt)),
            tails,
        ))
    }

    /// `F ∩ G` over shared ids.
    pub fn intersection_graph(&self, other: &Graph) -> Result<Graph> {
        self.check_overlap(other)?;
        let vertices = self.vertices.intersection(&other.vertices).cloned();
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|(e, _)| other.edges.contains_key(*e))
            .map(|(e, ep)| (e.clone(), ep.src.clone(), ep.tgt.clone()))
            .collect();
        let tails = self.omega_tails.intersection(&other.omega_tails).cloned();
        Ok(Graph::new(vertices, edges, tails))
    }

    /// Whether every vertex, edge (with the same endpoints), and tail of `self` occurs in `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices.is_subset(&other.vertices)
            && self.edges.iter().all(|(e, ep)| other.edges.get(e) == Some(ep))
            && self.omega_tails.is_subset(&other.omega_tails)
    }

    /// Deletes a vertex together with its incident edges and tails.
    pub fn without_vertex(&self, v: &str) -> Graph {
        Graph::new(
            self.vertices.iter().filter(|x| x.as_str() != v).cloned(),
            self.edges
                .iter()
                .filter(|(_, ep)| ep.src.as_str() != v && ep.tgt.as_str() != v)
                .map(|(e, ep)| (e.clone(), ep.src.clone(), ep.tgt.clone())),
            self.omega_tails
                .iter()
                .filter(|(a, b)| a.as_str() != v && b.as_str() != v)
                .cloned(),
        )
    }

    pub fn without_edge(&self, e: &str) -> Graph {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .filter(|(x, _)| x.as_str() != e)
                .map(|(x, ep)| (x.clone(), ep.src.clone(), ep.tgt.clone())),
            self.omega_tails.iter().cloned(),
        )
    }

    pub fn without_tail(&self, tail: &(VertexId, VertexId)) -> Graph {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|(x, ep)| (x.clone(), ep.src.clone(), ep.tgt.clone())),
            self.omega_tails.iter().filter(|t| *t != tail).cloned(),
        )
    }

    /// Adjacency matrix indexed by the sorted vertex list; entry `(i, j)` counts edges `v_i -> v_j`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let index: BTreeMap<&VertexId, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = self.vertices.len();
        let mut a = vec![vec![0u64; n]; n];
        for ep in self.edges.values() {
            if let (Some(&i), Some(&j)) = (index.get(&ep.src), index.get(&ep.tgt)) {
                a[i][j] += 1;
            }
        }
        a
    }
}

#[derive(Default)]
pub struct GraphBuilder {
    vertices: Vec<VertexId>,
    edges: Vec<(EdgeId, VertexId, VertexId)>,
    tails: Vec<(VertexId, VertexId)>,
}

impl GraphBuilder {
    pub fn vertex(mut self, v: &str) -> Self {
        self.vertices.push(v.into());
        self
    }

    pub fn vertices<'a>(mut self, vs: impl IntoIterator<Item = &'a str>) -> Self {
        self.vertices.extend(vs.into_iter().map(VertexId::from));
        self
    }

    /// Adds an edge, registering both endpoints as vertices.
    pub fn edge(mut self, e: &str, src: &str, tgt: &str) -> Self {
        self.vertices.push(src.into());
        self.vertices.push(tgt.into());
        self.edges.push((e.into(), src.into(), tgt.into()));
        self
    }

    pub fn tail(mut self, src: &str, tgt: &str) -> Self {
        self.vertices.push(src.into());
        self.vertices.push(tgt.into());
        self.tails.push((src.into(), tgt.into()));
        self
    }

    pub fn build(self) -> Graph {
        Graph::new(self.vertices, self.edges, self.tails)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexClasses {
    pub sinks: BTreeSet<VertexId>,
    pub sources: BTreeSet<VertexId>,
    pub regular: BTreeSet<VertexId>,
    pub infinite_emitters: BTreeSet<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyId {
        what: String,
    },
    DanglingSource {
        edge: EdgeId,
        vertex: VertexId,
    },
    DanglingTarget {
        edge: EdgeId,
        vertex: VertexId,
    },
    DanglingTail {
        tail: (VertexId, VertexId),
        vertex: VertexId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyId { what } => write!(f, "empty {what} id"),
            Violation::DanglingSource { edge, vertex } => {
                write!(f, "dangling source: edge {edge} starts at unknown vertex {vertex}")
            }
            Violation::DanglingTarget { edge, vertex } => {
                write!(f, "dangling target: edge {edge} ends at unknown vertex {vertex}")
            }
            Violation::DanglingTail { tail, vertex } => write!(
                f,
                "dangling tail: omega tail ({}, {}) touches unknown vertex {vertex}",
                tail.0, tail.1
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A finite path: a vertex (length 0) or a nonempty composable edge sequence.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Path {
    Vertex(VertexId),
    Edges(Vec<EdgeId>),
}

impl Path {
    pub fn vertex(v: &str) -> Self {
        Path::Vertex(v.into())
    }

    pub fn edges<'a>(es: impl IntoIterator<Item = &'a str>) -> Self {
        let es: Vec<EdgeId> = es.into_iter().map(EdgeId::from).collect();
        assert!(!es.is_empty(), "edge path must be nonempty");
        Path::Edges(es)
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Vertex(_) => 0,
            Path::Edges(es) => es.len(),
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Path::Vertex(_))
    }

    pub fn edge_list(&self) -> &[EdgeId] {
        match self {
            Path::Vertex(_) => &[],
            Path::Edges(es) => es,
        }
    }

    pub fn last_edge(&self) -> Option<&EdgeId> {
        self.edge_list().last()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| match (self, other) {
            (Path::Vertex(a), Path::Vertex(b)) => a.cmp(b),
            (Path::Edges(a), Path::Edges(b)) => a.cmp(b),
            // lengths differ, already decided
            _ => Ordering::Equal,
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Vertex(v) => write!(f, "{v}"),
            Path::Edges(es) => {
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(".")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The extended graph: real edges plus a ghost `e*` with reversed endpoints for each edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGraph {
    graph: Graph,
    ghost_of: BTreeMap<EdgeId, EdgeId>,
    real_of: BTreeMap<EdgeId, EdgeId>,
}

impl ExtendedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn ghost(&self, e: &str) -> Option<&EdgeId> {
        self.ghost_of.get(e)
    }

    /// For a ghost edge, the real edge it reverses.
    pub fn real_of(&self, ghost: &str) -> Option<&EdgeId> {
        self.real_of.get(ghost)
    }

    pub fn is_ghost(&self, e: &str) -> bool {
        self.real_of.contains_key(e)
    }
}

/// Serialized form: arrays sorted by id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub omega_tails: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &doc.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {v}")));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &doc.edges {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate edge id {}", e.id)));
            }
        }
        Ok(Graph::new(
            doc.vertices.into_iter().map(VertexId::from),
            doc.edges
                .into_iter()
                .map(|e| (e.id.into(), e.src.into(), e.tgt.into())),
            doc.omega_tails
                .into_iter()
                .map(|(a, b)| (a.into(), b.into())),
        ))
    }
}

impl From<Graph> for GraphDoc {
    fn from(g: Graph) -> Self {
        GraphDoc {
            vertices: g.vertices.iter().map(|v| v.to_string()).collect(),
            edges: g
                .edges
                .iter()
                .map(|(e, ep)| EdgeDoc {
                    id: e.to_string(),
                    src: ep.src.to_string(),
                    tgt: ep.tgt.to_string(),
                })
                .collect(),
            omega_tails: g
                .omega_tails
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> Graph {
        Graph::builder().edge("e", "v", "w").build()
    }

    fn loop_graph() -> Graph {
        Graph::builder().edge("l", "u", "u").build()
    }

    #[test]
    fn validation_reports() {
        assert!(Graph::builder().vertex("v").build().validate().is_ok());
        let dangling = Graph::new(["w".into()], [("e".into(), "v".into(), "w".into())], []);
        let report = dangling.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.to_string().contains("dangling source"));
        let bad_tail = Graph::new(["v".into()], [], [("v".into(), "w".into())]);
        assert!(matches!(
            bad_tail.validate().violations[..],
            [Violation::DanglingTail { .. }]
        ));
    }

    #[test]
    fn classification() {
        let c = loop_graph().classify_vertices();
        assert_eq!(c.regular.len(), 1);
        assert!(c.sinks.is_empty() && c.sources.is_empty());

        let c = single_edge().classify_vertices();
        assert_eq!(c.regular, BTreeSet::from(["v".into()]));
        assert_eq!(c.sinks, BTreeSet::from(["w".into()]));
        assert_eq!(c.sources, BTreeSet::from(["v".into()]));

        let tailed = Graph::builder().tail("v", "w").build();
        let c = tailed.classify_vertices();
        assert_eq!(c.infinite_emitters, BTreeSet::from(["v".into()]));
        assert!(!c.regular.contains("v"));
        assert!(!c.sinks.contains("v"));
        assert!(!c.sources.contains("w"));
    }

    #[test]
    fn extended_graph_swaps_ghosts() {
        let ext = single_edge().extended_graph().unwrap();
        let ghost = ext.ghost("e").unwrap().clone();
        assert_eq!(ext.graph().src(ghost.as_str()).as_str(), "w");
        assert_eq!(ext.graph().tgt(ghost.as_str()).as_str(), "v");
        assert_eq!(ext.real_of(ghost.as_str()).unwrap().as_str(), "e");

        let ext = loop_graph().extended_graph().unwrap();
        let ghost = ext.ghost("l").unwrap();
        assert_eq!(ext.graph().src(ghost.as_str()).as_str(), "u");
        assert_eq!(ext.graph().tgt(ghost.as_str()).as_str(), "u");

        let lonely = Graph::builder().vertex("v").build();
        assert_eq!(lonely.extended_graph().unwrap().graph(), &lonely);

        let tailed = Graph::builder().tail("v", "w").build();
        assert!(matches!(tailed.extended_graph(), Err(Error::TailedGraph(_))));
    }

    #[test]
    fn path_enumeration() {
        let lonely = Graph::builder().vertex("v").build();
        assert_eq!(lonely.paths_up_to(5), vec![Path::vertex("v")]);

        let paths = loop_graph().paths_up_to(3);
        assert_eq!(
            paths,
            vec![
                Path::vertex("u"),
                Path::edges(["l"]),
                Path::edges(["l", "l"]),
                Path::edges(["l", "l", "l"]),
            ]
        );

        let paths = single_edge().paths_up_to(2);
        assert_eq!(
            paths,
            vec![Path::vertex("v"), Path::vertex("w"), Path::edges(["e"])]
        );
        for p in &paths {
            single_edge().check_path(p).unwrap();
        }
    }

    #[test]
    fn path_checks() {
        let g = Graph::builder().edge("a", "x", "y").edge("b", "y", "z").build();
        g.check_path(&Path::edges(["a", "b"])).unwrap();
        assert!(g.check_path(&Path::edges(["b", "a"])).is_err());
        assert!(g.check_path(&Path::vertex("q")).is_err());
        assert_eq!(
            g.concat(&Path::edges(["a"]), &Path::edges(["b"])),
            Some(Path::edges(["a", "b"]))
        );
        assert_eq!(g.concat(&Path::vertex("x"), &Path::edges(["a"])), Some(Path::edges(["a"])));
        assert_eq!(g.concat(&Path::edges(["b"]), &Path::edges(["a"])), None);
        assert_eq!(
            g.strip_prefix(&Path::edges(["a", "b"]), &Path::edges(["a"])),
            Some(Path::edges(["b"]))
        );
        assert_eq!(
            g.strip_prefix(&Path::edges(["a"]), &Path::edges(["a"])),
            Some(Path::vertex("y"))
        );
        assert_eq!(
            g.strip_prefix(&Path::edges(["a"]), &Path::vertex("x")),
            Some(Path::edges(["a"]))
        );
        assert_eq!(g.strip_prefix(&Path::edges(["a"]), &Path::vertex("y")), None);
    }

    #[test]
    fn union_and_intersection() {
        let f = single_edge();
        assert_eq!(f.union_graph(&f).unwrap(), f);
        assert_eq!(f.intersection_graph(&f).unwrap(), f);

        let g = Graph::builder().vertex("w").build();
        let cap = f.intersection_graph(&g).unwrap();
        assert_eq!(cap, g);
        assert_eq!(f.union_graph(&g).unwrap(), f);

        let disjoint = Graph::builder().edge("x", "a", "b").build();
        assert!(f.intersection_graph(&disjoint).unwrap().is_empty());
        let cup = f.union_graph(&disjoint).unwrap();
        assert_eq!((cup.vertex_count(), cup.edge_count()), (4, 2));
        assert!(f.is_subgraph_of(&cup) && disjoint.is_subgraph_of(&cup));

        let clash = Graph::builder().edge("e", "w", "v").build();
        assert!(matches!(f.union_graph(&clash), Err(Error::IncompatibleOverlap(_))));
        assert!(matches!(
            f.intersection_graph(&clash),
            Err(Error::IncompatibleOverlap(_))
        ));
    }

    #[test]
    fn longest_paths() {
        assert_eq!(single_edge().longest_path_len(), Some(1));
        assert_eq!(loop_graph().longest_path_len(), None);
        let g = Graph::builder().edge("a", "x", "y").edge("b", "y", "z").edge("c", "x", "z").build();
        assert_eq!(g.longest_path_len(), Some(2));
        assert_eq!(Graph::empty().longest_path_len(), Some(0));
    }

    #[test]
    fn json_is_sorted_and_rejects_duplicates() {
        let g = Graph::builder().edge("b", "y", "x").edge("a", "x", "y").tail("y", "x").build();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":["x","y"],"edges":[{"id":"a","src":"x","tgt":"y"},{"id":"b","src":"y","tgt":"x"}],"omega_tails":[["y","x"]]}"#
        );
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let dup = r#"{"vertices":["x","x"]}"#;
        assert!(serde_json::from_str::<Graph>(dup).is_err());
    }
}
