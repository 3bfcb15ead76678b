use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};

/// A graph homomorphism `(f^0, f^1): E -> F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphHom {
    domain: Arc<Graph>,
    codomain: Arc<Graph>,
    f0: BTreeMap<VertexId, VertexId>,
    f1: BTreeMap<EdgeId, EdgeId>,
}

/// The four nested categories, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Category {
    #[serde(rename = "OG")]
    Og,
    #[serde(rename = "POG")]
    Pog,
    #[serde(rename = "TBPOG")]
    Tbpog,
    #[serde(rename = "CRTBPOG")]
    Crtbpog,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Og => "OG",
            Category::Pog => "POG",
            Category::Tbpog => "TBPOG",
            Category::Crtbpog => "CRTBPOG",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomClassification {
    pub injective: bool,
    pub surjective: bool,
    pub proper: bool,
    pub target_bijective: bool,
    pub regular: bool,
    pub category: Category,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub violations: Vec<String>,
}

impl HomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for HomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.violations.join("; "))
        }
    }
}

impl GraphHom {
    /// Builds a homomorphism without checking it; see [`GraphHom::validate`].
    pub fn new(
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        f0: BTreeMap<VertexId, VertexId>,
        f1: BTreeMap<EdgeId, EdgeId>,
    ) -> Self {
        Self {
            domain,
            codomain,
            f0,
            f1,
        }
    }

    /// Builds and validates.
    pub fn checked(
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        f0: BTreeMap<VertexId, VertexId>,
        f1: BTreeMap<EdgeId, EdgeId>,
    ) -> Result<Self> {
        let h = Self::new(domain, codomain, f0, f1);
        let report = h.validate();
        if report.is_ok() {
            Ok(h)
        } else {
            Err(Error::InvalidHom(report.to_string()))
        }
    }

    pub fn from_pairs<'a>(
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        f0: impl IntoIterator<Item = (&'a str, &'a str)>,
        f1: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        Self::checked(
            domain,
            codomain,
            f0.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
            f1.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        )
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let f0 = g.vertices().map(|v| (v.clone(), v.clone())).collect();
        let f1 = g.edge_ids().map(|e| (e.clone(), e.clone())).collect();
        Self::new(g.clone(), g, f0, f1)
    }

    /// The identity-on-ids embedding of a subgraph.
    pub fn inclusion(sub: Arc<Graph>, sup: Arc<Graph>) -> Result<Self> {
        if !sub.is_subgraph_of(&sup) {
            return Err(Error::InvalidHom(
                "domain is not a subgraph of the codomain".into(),
            ));
        }
        let f0 = sub.vertices().map(|v| (v.clone(), v.clone())).collect();
        let f1 = sub.edge_ids().map(|e| (e.clone(), e.clone())).collect();
        Ok(Self::new(sub, sup, f0, f1))
    }

    pub fn domain(&self) -> &Arc<Graph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Graph> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.f0
    }

    pub fn edge_map(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.f1
    }

    /// `f^0(v)`. Panics on vertices outside the domain.
    pub fn map_vertex(&self, v: &str) -> &VertexId {
        &self.f0[v]
    }

    /// `f^1(e)`. Panics on edges outside the domain.
    pub fn map_edge(&self, e: &str) -> &EdgeId {
        &self.f1[e]
    }

    pub fn vertex_preimage(&self, w: &str) -> Vec<&VertexId> {
        self.f0.iter().filter(|(_, b)| b.as_str() == w).map(|(a, _)| a).collect()
    }

    pub fn edge_preimage(&self, x: &str) -> Vec<&EdgeId> {
        self.f1.iter().filter(|(_, b)| b.as_str() == x).map(|(a, _)| a).collect()
    }

    pub fn vertex_image(&self) -> BTreeSet<VertexId> {
        self.f0.values().cloned().collect()
    }

    pub fn edge_image(&self) -> BTreeSet<EdgeId> {
        self.f1.values().cloned().collect()
    }

    pub fn is_vertex_injective(&self) -> bool {
        self.vertex_image().len() == self.f0.len()
    }

    pub fn is_edge_injective(&self) -> bool {
        self.edge_image().len() == self.f1.len()
    }

    pub fn is_injective(&self) -> bool {
        self.is_vertex_injective() && self.is_edge_injective()
    }

    /// Whether both maps are the identity on ids.
    pub fn is_identity_on_ids(&self) -> bool {
        self.f0.iter().all(|(a, b)| a == b) && self.f1.iter().all(|(a, b)| a == b)
    }

    pub fn has_tails(&self) -> bool {
        self.domain.has_tails() || self.codomain.has_tails()
    }

    pub fn ensure_tail_free(&self) -> Result<()> {
        self.domain.ensure_tail_free()?;
        self.codomain.ensure_tail_free()
    }

    pub fn validate(&self) -> HomReport {
        let mut violations = Vec::new();
        let (dom, cod) = (&*self.domain, &*self.codomain);
        for (what, report) in [("domain", dom.validate()), ("codomain", cod.validate())] {
            if !report.is_ok() {
                violations.push(format!("{what} graph invalid: {report}"));
            }
        }
        for v in dom.vertices() {
            match self.f0.get(v) {
                None => violations.push(format!("f0 undefined on vertex {v}")),
                Some(w) if !cod.has_vertex(w.as_str()) => {
                    violations.push(format!("f0({v}) = {w} is not a codomain vertex"))
                }
                Some(_) => {}
            }
        }
        for v in self.f0.keys() {
            if !dom.has_vertex(v.as_str()) {
                violations.push(format!("f0 mentions unknown domain vertex {v}"));
            }
        }
        for e in self.f1.keys() {
            if !dom.has_edge(e.as_str()) {
                violations.push(format!("f1 mentions unknown domain edge {e}"));
            }
        }
        for (e, ep) in dom.edges() {
            let Some(x) = self.f1.get(e) else {
                violations.push(format!("f1 undefined on edge {e}"));
                continue;
            };
            let Some(xp) = cod.endpoints(x.as_str()) else {
                violations.push(format!("f1({e}) = {x} is not a codomain edge"));
                continue;
            };
            if let Some(fs) = self.f0.get(&ep.src) {
                if *fs != xp.src {
                    violations.push(format!(
                        "source square fails on edge {e}: s(f1({e})) = {} but f0(s({e})) = {fs}",
                        xp.src
                    ));
                }
            }
            if let Some(ft) = self.f0.get(&ep.tgt) {
                if *ft != xp.tgt {
                    violations.push(format!(
                        "target square fails on edge {e}: t(f1({e})) = {} but f0(t({e})) = {ft}",
                        xp.tgt
                    ));
                }
            }
        }
        if self.has_tails() {
            if !self.is_identity_on_ids() {
                violations.push("homomorphisms between tailed graphs must be inclusions".into());
            }
            for t in dom.omega_tails() {
                if !cod.omega_tails().contains(t) {
                    violations.push(format!(
                        "domain tail ({}, {}) is not a codomain tail",
                        t.0, t.1
                    ));
                }
            }
        }
        HomReport { violations }
    }

    pub fn classify(&self) -> HomClassification {
        let (dom, cod) = (&*self.domain, &*self.codomain);
        let mut witnesses = Vec::new();
        let injective = self.is_injective();
        let surjective = self.vertex_image().len() == cod.vertex_count()
            && self.edge_image().len() == cod.edge_count();
        // finite data: every map is finite-to-one
        let proper = true;

        let mut target_bijective = true;
        for (x, xp) in cod.edges() {
            let edge_fiber = self.edge_preimage(x.as_str());
            let vertex_fiber: BTreeSet<&VertexId> =
                self.vertex_preimage(xp.tgt.as_str()).into_iter().collect();
            let targets: BTreeSet<&VertexId> =
                edge_fiber.iter().map(|e| dom.tgt(e.as_str())).collect();
            if targets.len() != edge_fiber.len() || targets != vertex_fiber {
                target_bijective = false;
                witnesses.push(format!(
                    "target bijectivity fails at edge {x}: {} preimage edge(s), {} vertex(es) over t({x}) = {}",
                    edge_fiber.len(),
                    vertex_fiber.len(),
                    xp.tgt
                ));
                break;
            }
        }
        if target_bijective {
            // Tails only occur on inclusions, so both fibers have at most one element.
            for (a, b) in cod.omega_tails() {
                let tail_fiber = dom
                    .omega_tails()
                    .iter()
                    .filter(|(a2, b2)| self.f0.get(a2) == Some(a) && self.f0.get(b2) == Some(b))
                    .count();
                let vertex_fiber = self.vertex_preimage(b.as_str()).len();
                if tail_fiber != vertex_fiber {
                    target_bijective = false;
                    witnesses.push(format!(
                        "target bijectivity fails at omega tail ({a}, {b})"
                    ));
                    break;
                }
            }
        }

        let mut regular = true;
        for v in dom.vertices() {
            if !dom.is_regular(v.as_str()) {
                let w = &self.f0[v];
                if cod.is_regular(w.as_str()) {
                    regular = false;
                    witnesses.push(format!(
                        "regularity fails: {v} is not regular but f0({v}) = {w} is"
                    ));
                    break;
                }
            }
        }

        let category = match (proper, target_bijective, regular) {
            (true, true, true) => Category::Crtbpog,
            (true, true, false) => Category::Tbpog,
            (true, false, _) => Category::Pog,
            (false, _, _) => Category::Og,
        };
        HomClassification {
            injective,
            surjective,
            proper,
            target_bijective,
            regular,
            category,
            witnesses,
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GraphHom) -> Result<GraphHom> {
        if f.codomain != self.domain {
            return Err(Error::DomainMismatch(
                "codomain of the first map differs from the domain of the second".into(),
            ));
        }
        let f0 = f
            .f0
            .iter()
            .map(|(a, b)| (a.clone(), self.f0[b].clone()))
            .collect();
        let f1 = f
            .f1
            .iter()
            .map(|(a, b)| (a.clone(), self.f1[b].clone()))
            .collect();
        Ok(GraphHom::new(f.domain.clone(), self.codomain.clone(), f0, f1))
    }

    /// The induced map on finite paths.
    pub fn map_path(&self, p: &Path) -> Result<Path> {
        self.domain.check_path(p)?;
        Ok(match p {
            Path::Vertex(v) => Path::Vertex(self.f0[v].clone()),
            Path::Edges(es) => Path::Edges(es.iter().map(|e| self.f1[e].clone()).collect()),
        })
    }

    /// All domain paths mapping onto `p`, in basis order.
    pub fn path_preimages(&self, p: &Path) -> Vec<Path> {
        match p {
            Path::Vertex(w) => self
                .vertex_preimage(w.as_str())
                .into_iter()
                .cloned()
                .map(Path::Vertex)
                .collect(),
            Path::Edges(xs) => {
                let dom = &*self.domain;
                let mut partial: Vec<Vec<EdgeId>> = vec![Vec::new()];
                for x in xs {
                    let fiber = self.edge_preimage(x.as_str());
                    let mut next = Vec::new();
                    for prefix in &partial {
                        for e in &fiber {
                            if let Some(last) = prefix.last() {
                                if dom.tgt(last.as_str()) != dom.src(e.as_str()) {
                                    continue;
                                }
                            }
                            let mut q = prefix.clone();
                            q.push((*e).clone());
                            next.push(q);
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                let mut out: Vec<Path> = partial.into_iter().map(Path::Edges).collect();
                out.sort();
                out
            }
        }
    }

    /// The extension to extended graphs, sending ghosts to ghosts.
    pub fn extended(&self) -> Result<GraphHom> {
        self.ensure_tail_free()?;
        let dom = self.domain.extended_graph()?;
        let cod = self.codomain.extended_graph()?;
        let mut f1 = self.f1.clone();
        for (e, x) in &self.f1 {
            let ghost_e = dom.ghost(e.as_str()).expect("ghost exists").clone();
            let ghost_x = cod.ghost(x.as_str()).expect("ghost exists").clone();
            f1.insert(ghost_e, ghost_x);
        }
        Ok(GraphHom::new(
            Arc::new(dom.graph().clone()),
            Arc::new(cod.graph().clone()),
            self.f0.clone(),
            f1,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: Graph) -> Arc<Graph> {
        Arc::new(g)
    }

    fn point() -> Arc<Graph> {
        arc(Graph::builder().vertex("u").build())
    }

    fn one_loop() -> Arc<Graph> {
        arc(Graph::builder().edge("l", "u", "u").build())
    }

    #[test]
    fn identity_is_valid_and_crtbpog() {
        let g = arc(Graph::builder().edge("e", "v", "w").edge("l", "w", "w").build());
        let id = GraphHom::identity(g);
        assert!(id.validate().is_ok());
        let c = id.classify();
        assert!(c.injective && c.surjective && c.target_bijective && c.regular);
        assert_eq!(c.category, Category::Crtbpog);
    }

    #[test]
    fn point_into_loop() {
        let h = GraphHom::from_pairs(point(), one_loop(), [("u", "u")], []).unwrap();
        let c = h.classify();
        assert!(c.injective);
        assert!(!c.target_bijective);
        assert_eq!(c.category, Category::Pog);
        assert!(c.witnesses[0].contains("target bijectivity fails at edge l"));
    }

    #[test]
    fn broken_square_is_reported() {
        let dom = arc(Graph::builder().edge("e", "v", "w").build());
        let cod = arc(Graph::builder().edge("x", "a", "b").build());
        let h = GraphHom::new(
            dom,
            cod,
            [("v".into(), "b".into()), ("w".into(), "b".into())].into(),
            [("e".into(), "x".into())].into(),
        );
        let report = h.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("source square fails on edge e"));
    }

    #[test]
    fn sink_inclusion_fails_target_bijectivity() {
        let sub = arc(Graph::builder().vertex("w").build());
        let sup = arc(Graph::builder().edge("e", "v", "w").build());
        let h = GraphHom::inclusion(sub, sup).unwrap();
        let c = h.classify();
        assert!(!c.target_bijective);
        assert!(c.witnesses[0].contains("edge e"));
    }

    #[test]
    fn composition_and_paths() {
        let e = arc(Graph::builder().edge("a", "x", "y").edge("b", "y", "z").build());
        let id = GraphHom::identity(e.clone());
        let f = GraphHom::from_pairs(
            e.clone(),
            one_loop(),
            [("x", "u"), ("y", "u"), ("z", "u")],
            [("a", "l"), ("b", "l")],
        )
        .unwrap();
        assert_eq!(GraphHom::identity(one_loop()).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert!(id.compose(&f).is_err());
        assert_eq!(
            f.map_path(&Path::edges(["a", "b"])).unwrap(),
            Path::edges(["l", "l"])
        );
        assert_eq!(f.map_path(&Path::vertex("x")).unwrap(), Path::vertex("u"));
        assert!(f.map_path(&Path::edges(["b", "a"])).is_err());
        assert_eq!(
            f.path_preimages(&Path::edges(["l", "l"])),
            vec![Path::edges(["a", "b"])]
        );
        assert_eq!(f.path_preimages(&Path::vertex("u")).len(), 3);
        assert!(f.path_preimages(&Path::edges(["l", "l", "l"])).is_empty());
    }

    #[test]
    fn tailed_homs_must_be_inclusions() {
        let sub = arc(Graph::builder().tail("v", "w").build());
        let sup = arc(Graph::builder().tail("v", "w").edge("e", "v", "w").build());
        let inc = GraphHom::inclusion(sub.clone(), sup.clone()).unwrap();
        assert!(inc.validate().is_ok());
        let renamed = arc(Graph::builder().tail("v2", "w").build());
        let bad = GraphHom::new(
            renamed,
            sup,
            [("v2".into(), "v".into()), ("w".into(), "w".into())].into(),
            BTreeMap::new(),
        );
        assert!(!bad.validate().is_ok());
    }

    #[test]
    fn extended_hom_maps_ghosts() {
        let e = arc(Graph::builder().edge("a", "x", "y").build());
        let f = GraphHom::from_pairs(e, one_loop(), [("x", "u"), ("y", "u")], [("a", "l")]).unwrap();
        let ext = f.extended().unwrap();
        assert!(ext.validate().is_ok());
        assert_eq!(ext.map_edge("a*").as_str(), "l*");
    }
}
