//! Pushouts of finite sets and graphs.
//!
//! The set pushout of `X <-f- Z -g-> Y` is `(X ⊔ Y) / ~` for the equivalence relation generated
//! by `f(z) ~ g(z)`. Classes are computed with a union-find and named by their least member,
//! with every `X` element ordered before every `Y` element.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::morphism::{breaking_vertices, GraphHom, VertexSet};

/// An element of `X ⊔ Y`. The derived order puts the left summand first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side<T> {
    Left(T),
    Right(T),
}

impl<T> Side<T> {
    pub fn inner(&self) -> &T {
        match self {
            Side::Left(t) | Side::Right(t) => t,
        }
    }

    pub fn is_left(&self) -> bool {
        matches!(self, Side::Left(_))
    }
}

impl<T: fmt::Display> fmt::Display for Side<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left(t) => write!(f, "E:{t}"),
            Side::Right(t) => write!(f, "F:{t}"),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// The pushout of finite sets. Class `i` is `classes()[i]`; classes are sorted by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPushout<T: Ord> {
    classes: Vec<Vec<Side<T>>>,
    class_of: BTreeMap<Side<T>, usize>,
    /// `(z, f(z), g(z))`
    span: Vec<(T, T, T)>,
}

/// Computes the pushout of `X <-f- Z -g-> Y`.
pub fn set_pushout<T: Ord + Clone + fmt::Display>(
    xs: &[T],
    ys: &[T],
    zs: &[T],
    f: &BTreeMap<T, T>,
    g: &BTreeMap<T, T>,
) -> Result<SetPushout<T>> {
    let mut elements: Vec<Side<T>> = xs
        .iter()
        .cloned()
        .map(Side::Left)
        .chain(ys.iter().cloned().map(Side::Right))
        .collect();
    elements.sort();
    elements.dedup();
    let index: BTreeMap<&Side<T>, usize> =
        elements.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut uf = UnionFind::new(elements.len());
    let mut span = Vec::with_capacity(zs.len());
    for z in zs {
        let fz = f
            .get(z)
            .ok_or_else(|| Error::InvalidHom(format!("left leg undefined at {z}")))?;
        let gz = g
            .get(z)
            .ok_or_else(|| Error::InvalidHom(format!("right leg undefined at {z}")))?;
        let a = *index
            .get(&Side::Left(fz.clone()))
            .ok_or_else(|| Error::InvalidHom(format!("left leg sends {z} outside X")))?;
        let b = *index
            .get(&Side::Right(gz.clone()))
            .ok_or_else(|| Error::InvalidHom(format!("right leg sends {z} outside Y")))?;
        uf.union(a, b);
        span.push((z.clone(), fz.clone(), gz.clone()));
    }
    let mut by_root: BTreeMap<usize, Vec<Side<T>>> = BTreeMap::new();
    for (i, s) in elements.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().push(s.clone());
    }
    let mut classes: Vec<Vec<Side<T>>> = by_root.into_values().collect();
    // members are pushed in sorted order, so the first is the least
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |s| (s.clone(), i)))
        .collect();
    Ok(SetPushout {
        classes,
        class_of,
        span,
    })
}

impl<T: Ord + Clone + fmt::Display> SetPushout<T> {
    pub fn classes(&self) -> &[Vec<Side<T>>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representative(&self, class: usize) -> &Side<T> {
        &self.classes[class][0]
    }

    pub fn class_of(&self, s: &Side<T>) -> Option<usize> {
        self.class_of.get(s).copied()
    }

    /// `ι_X(x)`; panics if `x` is not in `X`.
    pub fn inj_x(&self, x: &T) -> usize {
        self.class_of[&Side::Left(x.clone())]
    }

    /// `ι_Y(y)`; panics if `y` is not in `Y`.
    pub fn inj_y(&self, y: &T) -> usize {
        self.class_of[&Side::Right(y.clone())]
    }

    pub fn span(&self) -> &[(T, T, T)] {
        &self.span
    }

    /// The unique `h` with `h ∘ ι_X = j_X` and `h ∘ ι_Y = j_Y`, indexed by class.
    pub fn universal_map<Q: Clone + PartialEq + fmt::Debug>(
        &self,
        jx: &BTreeMap<T, Q>,
        jy: &BTreeMap<T, Q>,
    ) -> Result<Vec<Q>> {
        for (z, fz, gz) in &self.span {
            let (Some(a), Some(b)) = (jx.get(fz), jy.get(gz)) else {
                return Err(cone_error(format!("cone undefined over {z}")));
            };
            if a != b {
                return Err(cone_error(format!(
                    "j_X(f({z})) = {a:?} differs from j_Y(g({z})) = {b:?}"
                )));
            }
        }
        let mut h = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let mut value: Option<&Q> = None;
            for member in class {
                let q = match member {
                    Side::Left(x) => jx.get(x),
                    Side::Right(y) => jy.get(y),
                }
                .ok_or_else(|| cone_error(format!("cone undefined at {member}")))?;
                match value {
                    None => value = Some(q),
                    Some(prev) if prev != q => {
                        return Err(cone_error(format!("cone not constant on the class of {member}")))
                    }
                    Some(_) => {}
                }
            }
            h.push(value.expect("classes are nonempty").clone());
        }
        Ok(h)
    }
}

fn cone_error(detail: String) -> Error {
    Error::Precondition {
        flag: "compatible_cone".into(),
        detail,
    }
}

fn class_vertex_id(rep: &Side<VertexId>) -> VertexId {
    VertexId::new(rep.to_string())
}

fn class_edge_id(rep: &Side<EdgeId>) -> EdgeId {
    EdgeId::new(rep.to_string())
}

/// The pushout graph `E ⊔_G F` with its two canonical homomorphisms.
#[derive(Clone, Debug)]
pub struct PushoutGraph {
    graph: Arc<Graph>,
    iota_e: GraphHom,
    iota_f: GraphHom,
    vertex_classes: SetPushout<VertexId>,
    edge_classes: SetPushout<EdgeId>,
}

/// Builds `E ⊔_G F` from `E <-f- G -g-> F`.
pub fn graph_pushout(f: &GraphHom, g: &GraphHom) -> Result<PushoutGraph> {
    if f.domain() != g.domain() {
        return Err(Error::DomainMismatch("the two legs have different domains".into()));
    }
    for h in [f, g] {
        h.ensure_tail_free()?;
        let report = h.validate();
        if !report.is_ok() {
            return Err(Error::InvalidHom(report.to_string()));
        }
    }
    let (e, fg, gg) = (f.codomain(), g.codomain(), f.domain());
    let ev: Vec<VertexId> = e.vertices().cloned().collect();
    let fv: Vec<VertexId> = fg.vertices().cloned().collect();
    let gv: Vec<VertexId> = gg.vertices().cloned().collect();
    let vertex_classes = set_pushout(&ev, &fv, &gv, f.vertex_map(), g.vertex_map())?;
    let ee: Vec<EdgeId> = e.edge_ids().cloned().collect();
    let fe: Vec<EdgeId> = fg.edge_ids().cloned().collect();
    let ge: Vec<EdgeId> = gg.edge_ids().cloned().collect();
    let edge_classes = set_pushout(&ee, &fe, &ge, f.edge_map(), g.edge_map())?;

    let vid = |s: &Side<VertexId>| class_vertex_id(vertex_classes.representative(vertex_classes.class_of(s).expect("member")));
    let mut edges = Vec::new();
    for class in edge_classes.classes() {
        let mut ends: Option<(VertexId, VertexId)> = None;
        for member in class {
            let (src, tgt) = match member {
                Side::Left(x) => (Side::Left(e.src(x.as_str()).clone()), Side::Left(e.tgt(x.as_str()).clone())),
                Side::Right(y) => (
                    Side::Right(fg.src(y.as_str()).clone()),
                    Side::Right(fg.tgt(y.as_str()).clone()),
                ),
            };
            let here = (vid(&src), vid(&tgt));
            match &ends {
                None => ends = Some(here),
                Some(prev) => {
                    // guaranteed by the commuting squares of both legs
                    if *prev != here {
                        return Err(Error::InvalidHom(format!(
                            "source/target not well defined on the class of {}",
                            class[0]
                        )));
                    }
                }
            }
        }
        let (s, t) = ends.expect("classes are nonempty");
        edges.push((class_edge_id(&class[0]), s, t));
    }
    let vertices = vertex_classes
        .classes()
        .iter()
        .map(|c| class_vertex_id(&c[0]));
    let graph = Arc::new(Graph::new(vertices, edges, []));

    let iota = |leg: &Arc<Graph>, wrap: fn(VertexId) -> Side<VertexId>, wrap_e: fn(EdgeId) -> Side<EdgeId>| {
        let f0: BTreeMap<VertexId, VertexId> = leg
            .vertices()
            .map(|v| (v.clone(), vid(&wrap(v.clone()))))
            .collect();
        let f1: BTreeMap<EdgeId, EdgeId> = leg
            .edge_ids()
            .map(|x| {
                let c = edge_classes.class_of(&wrap_e(x.clone())).expect("member");
                (x.clone(), class_edge_id(edge_classes.representative(c)))
            })
            .collect();
        GraphHom::new(leg.clone(), graph.clone(), f0, f1)
    };
    let iota_e = iota(e, Side::Left, Side::Left);
    let iota_f = iota(fg, Side::Right, Side::Right);
    Ok(PushoutGraph {
        graph,
        iota_e,
        iota_f,
        vertex_classes,
        edge_classes,
    })
}

impl PushoutGraph {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn iota_e(&self) -> &GraphHom {
        &self.iota_e
    }

    pub fn iota_f(&self) -> &GraphHom {
        &self.iota_f
    }

    pub fn vertex_classes(&self) -> &SetPushout<VertexId> {
        &self.vertex_classes
    }

    pub fn edge_classes(&self) -> &SetPushout<EdgeId> {
        &self.edge_classes
    }

    /// The unique hom `P -> Q` through which a compatible cone `(j_E, j_F)` factors.
    pub fn universal_map(&self, je: &GraphHom, jf: &GraphHom) -> Result<GraphHom> {
        if je.domain() != self.iota_e.domain() || jf.domain() != self.iota_f.domain() {
            return Err(Error::DomainMismatch("cone legs start at the wrong graphs".into()));
        }
        if je.codomain() != jf.codomain() {
            return Err(Error::DomainMismatch("cone legs end at different graphs".into()));
        }
        let h0 = self.vertex_classes.universal_map(je.vertex_map(), jf.vertex_map())?;
        let h1 = self.edge_classes.universal_map(je.edge_map(), jf.edge_map())?;
        let f0 = self
            .vertex_classes
            .classes()
            .iter()
            .zip(h0)
            .map(|(c, q)| (class_vertex_id(&c[0]), q))
            .collect();
        let f1 = self
            .edge_classes
            .classes()
            .iter()
            .zip(h1)
            .map(|(c, q)| (class_edge_id(&c[0]), q))
            .collect();
        GraphHom::checked(self.graph.clone(), je.codomain().clone(), f0, f1)
    }
}

/// Hypotheses of the pushout-to-pullback theorems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreconditionFlags {
    pub vertex_injectivity: bool,
    pub one_color: bool,
    pub one_sided_injectivity: bool,
    #[serde(rename = "P1")]
    pub p1: bool,
    #[serde(rename = "P2")]
    pub p2: bool,
    pub witnesses: Vec<String>,
}

pub fn check_theorem_preconditions(f: &GraphHom, g: &GraphHom) -> Result<PreconditionFlags> {
    let push = graph_pushout(f, g)?;
    Ok(preconditions_for(f, g, &push))
}

pub(crate) fn preconditions_for(f: &GraphHom, g: &GraphHom, push: &PushoutGraph) -> PreconditionFlags {
    let mut witnesses = Vec::new();
    let vertex_injectivity = f.is_vertex_injective() && g.is_vertex_injective();
    if !vertex_injectivity {
        witnesses.push("vertex_injectivity: a leg identifies two vertices".into());
    }

    let p = push.graph();
    let from_e = push.iota_e.edge_image();
    let from_f = push.iota_f.edge_image();
    let mut one_color = true;
    'outer: for (x, xp) in p.edges() {
        for y in p.out_edges(xp.tgt.as_str()) {
            let same_e = from_e.contains(x) && from_e.contains(y);
            let same_f = from_f.contains(x) && from_f.contains(y);
            if !same_e && !same_f {
                one_color = false;
                witnesses.push(format!("one_color: {x} then {y} mixes the two sides"));
                break 'outer;
            }
        }
    }

    let one_sided_injectivity = f.is_edge_injective() || g.is_edge_injective();
    if !one_sided_injectivity {
        witnesses.push("one_sided_injectivity: neither edge map is injective".into());
    }
    let p1 = f.is_injective();
    if !p1 {
        witnesses.push("P1: the left leg is not injective".into());
    }

    let p2 = check_p2(f, g, &mut witnesses);
    PreconditionFlags {
        vertex_injectivity,
        one_color,
        one_sided_injectivity,
        p1,
        p2,
        witnesses,
    }
}

fn check_p2(f: &GraphHom, g: &GraphHom, witnesses: &mut Vec<String>) -> bool {
    let e = f.codomain();
    let fg = g.codomain();
    let outside_f: VertexSet = e.vertices().filter(|v| !f.vertex_image().contains(*v)).cloned().collect();
    let outside_g: VertexSet = fg.vertices().filter(|v| !g.vertex_image().contains(*v)).cloned().collect();
    let (Ok(b_e), Ok(b_f)) = (breaking_vertices(e, &outside_f), breaking_vertices(fg, &outside_g)) else {
        return false;
    };
    let pre: Vec<&VertexId> = f
        .vertex_map()
        .iter()
        .filter(|(_, w)| b_e.contains(*w))
        .map(|(z, _)| z)
        .collect();
    let images: BTreeSet<&VertexId> = pre.iter().map(|z| g.map_vertex(z.as_str())).collect();
    if images.len() != pre.len() {
        witnesses.push("P2: g0 is not injective over breaking vertices".into());
        return false;
    }
    if let Some(w) = images.iter().find(|w| !b_f.contains(**w)) {
        witnesses.push(format!("P2: {w} is not a breaking vertex on the right"));
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathPushoutComparison {
    pub max_len: usize,
    pub classes: usize,
    pub target_paths: usize,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    /// `(class representative, h(class))`
    pub map: Vec<(String, Path)>,
    pub witnesses: Vec<String>,
}

/// Compares `FP(E) ⊔_{FP(G)} FP(F)` with `FP(E ⊔_G F)` on paths of length at most `max_len`.
pub fn path_pushout_compare(f: &GraphHom, g: &GraphHom, max_len: usize) -> Result<PathPushoutComparison> {
    let push = graph_pushout(f, g)?;
    let pe = f.codomain().paths_up_to(max_len);
    let pf = g.codomain().paths_up_to(max_len);
    let pg = f.domain().paths_up_to(max_len);
    let mut fp = BTreeMap::new();
    let mut gp = BTreeMap::new();
    for z in &pg {
        fp.insert(z.clone(), f.map_path(z)?);
        gp.insert(z.clone(), g.map_path(z)?);
    }
    let classes = set_pushout(&pe, &pf, &pg, &fp, &gp)?;
    let mut witnesses = Vec::new();
    let mut map = Vec::with_capacity(classes.class_count());
    let mut hit: BTreeMap<Path, String> = BTreeMap::new();
    let mut injective = true;
    for class in classes.classes() {
        let image = |s: &Side<Path>| -> Result<Path> {
            match s {
                Side::Left(p) => push.iota_e.map_path(p),
                Side::Right(p) => push.iota_f.map_path(p),
            }
        };
        let h = image(&class[0])?;
        for member in &class[1..] {
            if image(member)? != h {
                return Err(Error::InvalidHom(format!(
                    "h is not well defined on the class of {}",
                    class[0]
                )));
            }
        }
        let label = class[0].to_string();
        if let Some(prev) = hit.insert(h.clone(), label.clone()) {
            if injective {
                witnesses.push(format!("classes {prev} and {label} both map to {h}"));
            }
            injective = false;
        }
        map.push((label, h));
    }
    let target = push.graph().paths_up_to(max_len);
    let missing: Vec<&Path> = target.iter().filter(|p| !hit.contains_key(*p)).collect();
    let surjective = missing.is_empty();
    if let Some(p) = missing.first() {
        witnesses.push(format!("path {p} of the pushout graph has no preimage class"));
    }
    Ok(PathPushoutComparison {
        max_len,
        classes: classes.class_count(),
        target_paths: target.len(),
        injective,
        surjective,
        bijective: injective && surjective,
        map,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BreakarrowCheck {
    pub w: VertexId,
    pub p: VertexId,
    pub left: BTreeSet<EdgeId>,
    pub right: BTreeSet<EdgeId>,
    pub holds: bool,
}

/// Evaluates both sides of the edge-set identity relating edges leaving the image of `f` at `w`
/// to edges leaving the image of `ι_F` at `p`, for every pair with `(ι_E^0)^{-1}(p) = {w}`.
pub fn breakarrow_checks(f: &GraphHom, push: &PushoutGraph) -> Vec<BreakarrowCheck> {
    let e = f.codomain();
    let p_graph = push.graph();
    let f_image = f.vertex_image();
    let iota_f_image = push.iota_f.vertex_image();
    let mut out = Vec::new();
    for p in p_graph.vertices() {
        let pre = push.iota_e.vertex_preimage(p.as_str());
        let [w] = pre[..] else { continue };
        let left: BTreeSet<EdgeId> = e
            .out_edges(w.as_str())
            .iter()
            .filter(|x| !f_image.contains(e.tgt(x.as_str())))
            .cloned()
            .collect();
        let leaving: BTreeSet<&EdgeId> = p_graph
            .out_edges(p.as_str())
            .iter()
            .filter(|a| !iota_f_image.contains(p_graph.tgt(a.as_str())))
            .collect();
        let right: BTreeSet<EdgeId> = push
            .iota_e
            .edge_map()
            .iter()
            .filter(|(_, a)| leaving.contains(a))
            .map(|(x, _)| x.clone())
            .collect();
        out.push(BreakarrowCheck {
            w: w.clone(),
            p: p.clone(),
            holds: left == right,
            left,
            right,
        });
    }
    out
}

/// `F ∪ G` viewed as the pushout of `F <- F ∩ G -> G`, with all four inclusions.
#[derive(Clone, Debug)]
pub struct UnionPushout {
    pub union: Arc<Graph>,
    pub intersection: Arc<Graph>,
    pub cap_to_left: GraphHom,
    pub cap_to_right: GraphHom,
    pub left_to_cup: GraphHom,
    pub right_to_cup: GraphHom,
}

pub fn union_pushout(left: &Arc<Graph>, right: &Arc<Graph>) -> Result<UnionPushout> {
    let union = Arc::new(left.union_graph(right)?);
    let intersection = Arc::new(left.intersection_graph(right)?);
    Ok(UnionPushout {
        cap_to_left: GraphHom::inclusion(intersection.clone(), left.clone())?,
        cap_to_right: GraphHom::inclusion(intersection.clone(), right.clone())?,
        left_to_cup: GraphHom::inclusion(left.clone(), union.clone())?,
        right_to_cup: GraphHom::inclusion(right.clone(), union.clone())?,
        union,
        intersection,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapPullbackCheck {
    pub pushout_maps: usize,
    pub fiber_pairs: usize,
    pub bijective: bool,
}

/// Checks that `Map(X ⊔_Z Y, K) -> Map(X, K) ×_{Map(Z, K)} Map(Y, K)` is a bijection for `|K| = k`
/// by enumerating both sides.
pub fn check_map_pullback<T: Ord + Clone + fmt::Display>(
    push: &SetPushout<T>,
    xs: &[T],
    ys: &[T],
    k: usize,
) -> MapPullbackCheck {
    let n = push.class_count();
    let mut images = BTreeSet::new();
    for h in all_maps(n, k) {
        let on_x: Vec<usize> = xs.iter().map(|x| h[push.inj_x(x)]).collect();
        let on_y: Vec<usize> = ys.iter().map(|y| h[push.inj_y(y)]).collect();
        images.insert((on_x, on_y));
    }
    let x_index: BTreeMap<&T, usize> = xs.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let y_index: BTreeMap<&T, usize> = ys.iter().enumerate().map(|(i, y)| (y, i)).collect();
    let mut fiber = BTreeSet::new();
    for a in all_maps(xs.len(), k) {
        for b in all_maps(ys.len(), k) {
            let agrees = push
                .span()
                .iter()
                .all(|(_, fz, gz)| a[x_index[fz]] == b[y_index[gz]]);
            if agrees {
                fiber.insert((a.clone(), b));
            }
        }
    }
    MapPullbackCheck {
        pushout_maps: k.pow(n as u32),
        fiber_pairs: fiber.len(),
        bijective: images.len() == k.pow(n as u32) && images == fiber,
    }
}

/// All maps `{0..n} -> {0..k}` as value vectors.
pub fn all_maps(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if k == 0 && n > 0 { 0 } else { k.pow(n as u32) };
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(code % k.max(1));
            code /= k.max(1);
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (s(a), s(b))).collect()
    }

    #[test]
    fn empty_span_is_disjoint_union() {
        let p = set_pushout(&[s("a"), s("b")], &[s("a")], &[], &map(&[]), &map(&[])).unwrap();
        assert_eq!(p.class_count(), 3);
        assert!(p.classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn identity_span_glues_pairwise() {
        let xs = [s("a"), s("b")];
        let id = map(&[("a", "a"), ("b", "b")]);
        let p = set_pushout(&xs, &xs, &xs, &id, &id).unwrap();
        assert_eq!(p.class_count(), 2);
        assert_eq!(p.classes()[0], vec![Side::Left(s("a")), Side::Right(s("a"))]);
    }

    #[test]
    fn transitive_gluing() {
        let p = set_pushout(
            &[s("a"), s("b")],
            &[s("c")],
            &[s("z1"), s("z2")],
            &map(&[("z1", "a"), ("z2", "b")]),
            &map(&[("z1", "c"), ("z2", "c")]),
        )
        .unwrap();
        assert_eq!(p.class_count(), 1);
        assert_eq!(p.representative(0), &Side::Left(s("a")));
    }

    #[test]
    fn universal_map_on_sets() {
        let xs = [s("a"), s("b")];
        let ys = [s("c")];
        let p = set_pushout(&xs, &ys, &[s("z")], &map(&[("z", "a")]), &map(&[("z", "c")])).unwrap();
        let jx: BTreeMap<String, u8> = [(s("a"), 0), (s("b"), 1)].into();
        let jy: BTreeMap<String, u8> = [(s("c"), 0)].into();
        assert_eq!(p.universal_map(&jx, &jy).unwrap(), vec![0, 1]);
        let bad: BTreeMap<String, u8> = [(s("c"), 1)].into();
        let err = p.universal_map(&jx, &bad).unwrap_err();
        assert!(err.to_string().contains("f(z)"));
        // one-point target
        let cx: BTreeMap<String, u8> = [(s("a"), 0), (s("b"), 0)].into();
        assert_eq!(p.universal_map(&cx, &jy).unwrap(), vec![0, 0]);
    }

    fn arc(g: Graph) -> Arc<Graph> {
        Arc::new(g)
    }

    #[test]
    fn glued_path_graph() {
        let e = arc(Graph::builder().edge("e", "v", "w").build());
        let f = arc(Graph::builder().edge("e'", "v'", "w'").build());
        let g = arc(Graph::builder().vertex("w").build());
        let fl = GraphHom::from_pairs(g.clone(), e, [("w", "w")], []).unwrap();
        let gl = GraphHom::from_pairs(g, f, [("w", "v'")], []).unwrap();
        let push = graph_pushout(&fl, &gl).unwrap();
        let p = push.graph();
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 2));
        assert_eq!(p.paths_up_to(2).len(), 6);
        assert!(push.iota_e().validate().is_ok() && push.iota_f().validate().is_ok());
        assert_eq!(p.src("F:e'").as_str(), "E:w");
        assert_eq!(p.tgt("E:e").as_str(), "E:w");
        let flags = check_theorem_preconditions(&fl, &gl).unwrap();
        assert!(flags.vertex_injectivity && flags.one_sided_injectivity && flags.p1 && flags.p2);
        assert!(!flags.one_color);
    }

    #[test]
    fn pushout_of_identities_is_isomorphic() {
        let g = arc(Graph::builder().edge("a", "x", "y").edge("l", "y", "y").build());
        let id = GraphHom::identity(g.clone());
        let push = graph_pushout(&id, &id).unwrap();
        assert_eq!(push.graph().vertex_count(), 2);
        assert_eq!(push.graph().edge_count(), 2);
        assert!(push.iota_e().classify().injective && push.iota_e().classify().surjective);
        let cmp = path_pushout_compare(&id, &id, 3).unwrap();
        assert!(cmp.bijective);
        // h = identity when the cone is the pushout itself
        let u = push.universal_map(push.iota_e(), push.iota_f()).unwrap();
        assert!(u.is_identity_on_ids());
    }

    #[test]
    fn empty_apex_gives_disjoint_union() {
        let e = arc(Graph::builder().edge("a", "x", "y").build());
        let f = arc(Graph::builder().edge("a", "x", "x").build());
        let g = arc(Graph::empty());
        let fl = GraphHom::from_pairs(g.clone(), e, [], []).unwrap();
        let gl = GraphHom::from_pairs(g, f, [], []).unwrap();
        let push = graph_pushout(&fl, &gl).unwrap();
        assert_eq!((push.graph().vertex_count(), push.graph().edge_count()), (3, 2));
        let flags = check_theorem_preconditions(&fl, &gl).unwrap();
        assert!(flags.vertex_injectivity && flags.one_color && flags.one_sided_injectivity);
        assert!(flags.p1 && flags.p2);
    }

    #[test]
    fn two_loops_glued_at_base() {
        let l1 = arc(Graph::builder().edge("l", "u", "u").build());
        let pt = arc(Graph::builder().vertex("u").build());
        let f = GraphHom::from_pairs(pt.clone(), l1.clone(), [("u", "u")], []).unwrap();
        let flags = check_theorem_preconditions(&f, &f).unwrap();
        assert!(!flags.one_color);
        let cmp = path_pushout_compare(&f, &f, 2).unwrap();
        assert!(!cmp.bijective && !cmp.surjective);
        assert!(cmp.witnesses[0].contains("no preimage class"));
    }

    #[test]
    fn breakarrow_on_glued_path() {
        let e = arc(Graph::builder().edge("e", "v", "w").edge("x", "w", "z").build());
        let g = arc(Graph::builder().vertex("v").build());
        let f = arc(Graph::builder().vertex("v").build());
        let fl = GraphHom::from_pairs(g.clone(), e, [("v", "v")], []).unwrap();
        let gl = GraphHom::from_pairs(g, f, [("v", "v")], []).unwrap();
        let push = graph_pushout(&fl, &gl).unwrap();
        let checks = breakarrow_checks(&fl, &push);
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().all(|c| c.holds));
        let at_v = checks.iter().find(|c| c.w.as_str() == "v").unwrap();
        assert_eq!(at_v.left, BTreeSet::from([EdgeId::from("e")]));
    }

    #[test]
    fn map_functor_pullback_small() {
        let xs = [s("a"), s("b")];
        let ys = [s("c")];
        let p = set_pushout(&xs, &ys, &[s("z")], &map(&[("z", "a")]), &map(&[("z", "c")])).unwrap();
        for k in 1..=3 {
            let c = check_map_pullback(&p, &xs, &ys, k);
            assert!(c.bijective, "{c:?}");
            assert_eq!(c.pushout_maps, k * k);
        }
    }

    #[test]
    fn all_maps_counts() {
        assert_eq!(all_maps(0, 3).count(), 1);
        assert_eq!(all_maps(2, 3).count(), 9);
        assert_eq!(all_maps(2, 0).count(), 0);
        assert_eq!(all_maps(0, 0).count(), 1);
    }
}
