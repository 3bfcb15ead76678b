//! Seeded generators of graphs, homomorphisms and spans with prescribed properties.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::morphism::{is_admissible, GraphHom};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vid(prefix: &str, i: usize) -> VertexId {
    VertexId::new(format!("{prefix}{i}"))
}

fn eid(prefix: &str, i: usize) -> EdgeId {
    EdgeId::new(format!("{prefix}{i}"))
}

/// A graph on `1..=max_v` vertices `v0, v1, ...` with up to `max_e` edges `e0, e1, ...`.
pub fn random_graph(rng: &mut Rng8, max_v: usize, max_e: usize) -> Graph {
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let vertices: Vec<VertexId> = (0..n).map(|i| vid("v", i)).collect();
    let edges = (0..m).map(|j| {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        (eid("e", j), vertices[s].clone(), vertices[t].clone())
    });
    let edges: Vec<_> = edges.collect();
    Graph::new(vertices, edges, [])
}

/// Like [`random_graph`], with every edge going from a lower to a higher index.
pub fn random_acyclic_graph(rng: &mut Rng8, max_v: usize, max_e: usize) -> Graph {
    let n = rng.gen_range(1..=max_v);
    let m = if n < 2 { 0 } else { rng.gen_range(0..=max_e) };
    let vertices: Vec<VertexId> = (0..n).map(|i| vid("v", i)).collect();
    let mut edges = Vec::with_capacity(m);
    for j in 0..m {
        let s = rng.gen_range(0..n - 1);
        let t = rng.gen_range(s + 1..n);
        edges.push((eid("e", j), vertices[s].clone(), vertices[t].clone()));
    }
    Graph::new(vertices, edges, [])
}

/// A graph with omega tails added between random vertex pairs.
pub fn random_tailed_graph(rng: &mut Rng8, max_v: usize, max_e: usize, max_tails: usize) -> Graph {
    let g = random_graph(rng, max_v, max_e);
    let vs: Vec<VertexId> = g.vertices().cloned().collect();
    let k = rng.gen_range(0..=max_tails);
    let tails: Vec<(VertexId, VertexId)> = (0..k)
        .map(|_| (vs.choose(rng).unwrap().clone(), vs.choose(rng).unwrap().clone()))
        .collect();
    let edges: Vec<_> = g
        .edges()
        .map(|(e, ep)| (e.clone(), ep.src.clone(), ep.tgt.clone()))
        .collect();
    Graph::new(vs, edges, tails)
}

/// An arbitrary homomorphism into `cod`: random vertex fibers, then random edges lying over
/// random codomain edges.
pub fn random_hom_into(rng: &mut Rng8, cod: &Arc<Graph>, max_v: usize, max_e: usize) -> GraphHom {
    let cv: Vec<&VertexId> = cod.vertices().collect();
    let n = rng.gen_range(1..=max_v);
    let mut f0 = BTreeMap::new();
    let mut fiber: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for i in 0..n {
        let w = (*cv.choose(rng).unwrap()).clone();
        f0.insert(vid("a", i), w.clone());
        fiber.entry(w).or_default().push(vid("a", i));
    }
    let cedges: Vec<(&EdgeId, _)> = cod.edges().collect();
    let mut edges = Vec::new();
    let mut f1 = BTreeMap::new();
    if !cedges.is_empty() {
        for j in 0..rng.gen_range(0..=max_e) {
            let (x, ep) = cedges.choose(rng).unwrap();
            let (Some(ss), Some(ts)) = (fiber.get(&ep.src), fiber.get(&ep.tgt)) else { continue };
            let d = eid("d", j);
            edges.push((d.clone(), ss.choose(rng).unwrap().clone(), ts.choose(rng).unwrap().clone()));
            f1.insert(d, (*x).clone());
        }
    }
    let dom = Graph::new(f0.keys().cloned(), edges, []);
    GraphHom::new(Arc::new(dom), cod.clone(), f0, f1)
}

/// A target-bijective homomorphism into `cod` with vertex fibers of size at most `max_fiber`.
///
/// For every codomain edge `x` and every vertex `b` over `t(x)`, exactly one domain edge over `x`
/// ends at `b`. With `cover`, sources are spread so that every vertex over a regular vertex emits
/// something whenever enough edges are available, which makes the result regular in most draws.
pub fn random_tb_hom(rng: &mut Rng8, cod: &Arc<Graph>, max_fiber: usize, cover: bool) -> GraphHom {
    let mut size: BTreeMap<&VertexId, usize> =
        cod.vertices().map(|w| (w, rng.gen_range(0..=max_fiber))).collect();
    if size.values().all(|&n| n == 0) {
        let w = *size.keys().collect::<Vec<_>>().choose(rng).unwrap();
        let w = (*w).clone();
        size.insert(cod.vertex_set().get(&w).unwrap(), 1);
    }
    // every edge over x needs a source over s(x)
    loop {
        let mut changed = false;
        for (_, ep) in cod.edges() {
            if size[&ep.tgt] > 0 && size[&ep.src] == 0 {
                size.insert(&ep.src, 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut fiber: BTreeMap<&VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut f0 = BTreeMap::new();
    let mut next = 0;
    for (w, &n) in &size {
        for _ in 0..n {
            let a = vid("a", next);
            next += 1;
            f0.insert(a.clone(), (*w).clone());
            fiber.entry(w).or_default().push(a);
        }
    }
    // (codomain edge, target vertex) pairs grouped by codomain source
    let mut pending: BTreeMap<&VertexId, Vec<(&EdgeId, VertexId)>> = BTreeMap::new();
    for (x, ep) in cod.edges() {
        for b in fiber.get(&ep.tgt).into_iter().flatten() {
            pending.entry(&ep.src).or_default().push((x, b.clone()));
        }
    }
    let mut edges = Vec::new();
    let mut f1 = BTreeMap::new();
    let mut j = 0;
    for (u, mut items) in pending {
        items.shuffle(rng);
        let sources = &fiber[u];
        let mut order: Vec<&VertexId> = sources.iter().collect();
        order.shuffle(rng);
        for (i, (x, b)) in items.into_iter().enumerate() {
            let a = if cover && i < order.len() { order[i] } else { sources.choose(rng).unwrap() };
            let d = eid("d", j);
            j += 1;
            edges.push((d.clone(), a.clone(), b));
            f1.insert(d, x.clone());
        }
    }
    let dom = Graph::new(f0.keys().cloned(), edges, []);
    GraphHom::new(Arc::new(dom), cod.clone(), f0, f1)
}

/// A regular target-bijective homomorphism (a CRTBPOG morphism) into `cod`, by rejection.
pub fn random_crtbpog_hom(rng: &mut Rng8, cod: &Arc<Graph>, max_fiber: usize) -> GraphHom {
    loop {
        let h = random_tb_hom(rng, cod, max_fiber, true);
        if h.classify().regular {
            return h;
        }
    }
}

/// An injective homomorphism: a random subgraph of `cod`, relabelled.
pub fn random_injective_hom(rng: &mut Rng8, cod: &Arc<Graph>) -> GraphHom {
    let keep: Vec<VertexId> = cod.vertices().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    let induced = rng.gen_bool(0.5);
    let mut f0 = BTreeMap::new();
    for (i, v) in keep.iter().enumerate() {
        f0.insert(vid("s", i), v.clone());
    }
    let back: BTreeMap<&VertexId, VertexId> = f0.iter().map(|(a, v)| (v, a.clone())).collect();
    let mut edges = Vec::new();
    let mut f1 = BTreeMap::new();
    for (x, ep) in cod.edges() {
        if let (Some(a), Some(b)) = (back.get(&ep.src), back.get(&ep.tgt)) {
            if induced || rng.gen_bool(0.5) {
                let d = EdgeId::new(format!("s{x}"));
                edges.push((d.clone(), a.clone(), b.clone()));
                f1.insert(d, x.clone());
            }
        }
    }
    let dom = Graph::new(f0.keys().cloned(), edges, []);
    GraphHom::new(Arc::new(dom), cod.clone(), f0, f1)
}

/// An injective homomorphism satisfying `t^{-1}(image) ⊆ edge image`, possibly with tails.
pub fn random_a2_hom(rng: &mut Rng8, cod: &Arc<Graph>) -> GraphHom {
    let mut keep: std::collections::BTreeSet<VertexId> =
        cod.vertices().filter(|_| rng.gen_bool(0.4)).cloned().collect();
    // close backwards along edges and tails
    loop {
        let before = keep.len();
        for (_, ep) in cod.edges() {
            if keep.contains(&ep.tgt) {
                keep.insert(ep.src.clone());
            }
        }
        for (a, b) in cod.omega_tails() {
            if keep.contains(b) {
                keep.insert(a.clone());
            }
        }
        if keep.len() == before {
            break;
        }
    }
    let edges: Vec<_> = cod
        .edges()
        .filter(|(_, ep)| keep.contains(&ep.tgt))
        .map(|(e, ep)| (e.clone(), ep.src.clone(), ep.tgt.clone()))
        .collect();
    let tails: Vec<_> = cod.omega_tails().iter().filter(|(_, b)| keep.contains(b)).cloned().collect();
    let sub = Graph::new(keep, edges, tails);
    GraphHom::inclusion(Arc::new(sub), cod.clone()).expect("subgraph")
}

/// Random composable target-bijective homs `G -f-> F -g-> E` between graphs with at most
/// `max_v` vertices, returned as `(f, g)`.
pub fn random_tb_pair(rng: &mut Rng8, max_v: usize, max_e: usize) -> (GraphHom, GraphHom) {
    loop {
        let e = Arc::new(random_graph(rng, max_v, max_e));
        let cover = rng.gen_bool(0.5);
        let g = random_tb_hom(rng, &e, 2, cover);
        let cover = rng.gen_bool(0.5);
        let f = random_tb_hom(rng, g.domain(), 2, cover);
        if f.domain().vertex_count() <= max_v && g.domain().vertex_count() <= max_v {
            return (f, g);
        }
    }
}

/// A pair `(F, G)` of tailed graphs with compatible overlap, built on shared, `F`-only and
/// `G`-only vertex blocks. The caller filters for strong admissibility of the intersection.
pub fn random_overlapping_pair(rng: &mut Rng8) -> (Graph, Graph) {
    let nc = rng.gen_range(0..=3);
    let nx = rng.gen_range(0..=2);
    let ny = rng.gen_range(0..=2);
    let c: Vec<VertexId> = (0..nc).map(|i| vid("c", i)).collect();
    let x: Vec<VertexId> = (0..nx).map(|i| vid("x", i)).collect();
    let y: Vec<VertexId> = (0..ny).map(|i| vid("y", i)).collect();
    let mut f_edges = Vec::new();
    let mut g_edges = Vec::new();
    let mut f_tails = Vec::new();
    let mut g_tails = Vec::new();
    let mut j = 0;
    let pick = |rng: &mut Rng8, from: &[VertexId], to: &[VertexId]| -> Option<(VertexId, VertexId)> {
        if from.is_empty() || to.is_empty() {
            return None;
        }
        Some((from.choose(rng).unwrap().clone(), to.choose(rng).unwrap().clone()))
    };
    for _ in 0..rng.gen_range(0..=6) {
        // block pattern: 0 C->C shared, 1 C->X, 2 X->X, 3 C->Y, 4 Y->Y, 5 rare X->C, 6 rare C->C F-only
        let kind = rng.gen_range(0..=6);
        let (from, to) = match kind {
            0 | 6 => (&c, &c),
            1 => (&c, &x),
            2 => (&x, &x),
            3 => (&c, &y),
            4 => (&y, &y),
            _ => (&x, &c),
        };
        let Some((s, t)) = pick(rng, from, to) else { continue };
        let tail = rng.gen_bool(0.25);
        if tail {
            match kind {
                0 => {
                    f_tails.push((s.clone(), t.clone()));
                    g_tails.push((s, t));
                }
                1 | 2 | 5 | 6 => f_tails.push((s, t)),
                _ => g_tails.push((s, t)),
            }
        } else {
            let e = eid("e", j);
            j += 1;
            match kind {
                0 => {
                    f_edges.push((e.clone(), s.clone(), t.clone()));
                    g_edges.push((e, s, t));
                }
                1 | 2 | 5 | 6 => f_edges.push((e, s, t)),
                _ => g_edges.push((e, s, t)),
            }
        }
    }
    let f = Graph::new(c.iter().chain(&x).cloned(), f_edges, f_tails);
    let g = Graph::new(c.iter().chain(&y).cloned(), g_edges, g_tails);
    (f, g)
}

/// A span `E <-f- G -g-> F` with both legs vertex-injective, built by extending copies of `G`.
/// Extra edges may land anywhere, so the one-color condition holds only in some draws.
pub fn random_vertex_injective_span(rng: &mut Rng8, max_v: usize, max_e: usize, acyclic: bool) -> (GraphHom, GraphHom) {
    let g = Arc::new(if acyclic {
        random_acyclic_graph(rng, max_v.min(3), max_e.min(3))
    } else {
        random_graph(rng, max_v.min(3), max_e.min(3))
    });
    let f = extend_vertex_injectively(rng, &g, "p", acyclic);
    let h = extend_vertex_injectively(rng, &g, "q", acyclic);
    (f, h)
}

fn extend_vertex_injectively(rng: &mut Rng8, g: &Arc<Graph>, tag: &str, acyclic: bool) -> GraphHom {
    // vertex order: G vertices first, then new ones; acyclic mode only adds forward edges
    let mut order: Vec<VertexId> = Vec::new();
    let mut f0 = BTreeMap::new();
    let topo = topological(g);
    for v in &topo {
        f0.insert(v.clone(), v.clone());
        order.push(v.clone());
    }
    let extra = rng.gen_range(0..=2);
    let mut new_vs = Vec::new();
    for i in 0..extra {
        let v = VertexId::new(format!("{tag}{i}"));
        new_vs.push(v.clone());
    }
    // parallel G edges may collapse onto one codomain edge
    let mut edges = Vec::new();
    let mut f1 = BTreeMap::new();
    let mut seen: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    for (e, ep) in g.edges() {
        let key = (ep.src.clone(), ep.tgt.clone());
        let target = match seen.get(&key) {
            Some(x) if rng.gen_bool(0.3) => x.clone(),
            _ => {
                let x = EdgeId::new(format!("{tag}{e}"));
                edges.push((x.clone(), ep.src.clone(), ep.tgt.clone()));
                seen.insert(key, x.clone());
                x
            }
        };
        f1.insert(e.clone(), target);
    }
    let all: Vec<VertexId> = if acyclic {
        // place new vertices at random positions of the order
        let mut all = order.clone();
        for v in &new_vs {
            let pos = rng.gen_range(0..=all.len());
            all.insert(pos, v.clone());
        }
        all
    } else {
        order.iter().chain(&new_vs).cloned().collect()
    };
    let mut j = 0;
    for _ in 0..rng.gen_range(0..=3) {
        let (s, t) = if acyclic {
            if all.len() < 2 {
                continue;
            }
            let i = rng.gen_range(0..all.len() - 1);
            let k = rng.gen_range(i + 1..all.len());
            (all[i].clone(), all[k].clone())
        } else {
            (all.choose(rng).unwrap().clone(), all.choose(rng).unwrap().clone())
        };
        // new edges between old vertices are allowed too; they stay outside the image
        edges.push((EdgeId::new(format!("{tag}n{j}")), s, t));
        j += 1;
    }
    let cod = Graph::new(all, edges, []);
    GraphHom::new(g.clone(), Arc::new(cod), f0, f1)
}

fn topological(g: &Graph) -> Vec<VertexId> {
    // vertex names carry the generation order, which is already topological for acyclic graphs
    let mut vs: Vec<VertexId> = g.vertices().cloned().collect();
    vs.sort_by_key(|v| v.as_str()[1..].parse::<usize>().unwrap_or(0));
    vs
}

/// A one-color violation: `E` gains `x: u -> f(a)` and `F` gains `y: g(a) -> w`, both outside
/// the images, so `x` followed by `y` is a path of the pushout with no preimage class.
pub fn one_color_violation(rng: &mut Rng8) -> (GraphHom, GraphHom) {
    let (f, g) = random_vertex_injective_span(rng, 3, 3, true);
    let gg = f.domain().clone();
    let a = gg.vertices().collect::<Vec<_>>().choose(rng).unwrap().as_str().to_string();
    let add = |h: &GraphHom, incoming: bool, tag: &str| -> GraphHom {
        let cod = h.codomain();
        let hub = h.map_vertex(&a).clone();
        let other = VertexId::new(format!("{tag}z"));
        let x = EdgeId::new(format!("{tag}x"));
        let mut edges: Vec<_> = cod
            .edges()
            .map(|(e, ep)| (e.clone(), ep.src.clone(), ep.tgt.clone()))
            .collect();
        if incoming {
            edges.push((x, other.clone(), hub));
        } else {
            edges.push((x, hub, other.clone()));
        }
        let vs = cod.vertices().cloned().chain([other]);
        let cod = Arc::new(Graph::new(vs, edges, []));
        GraphHom::new(h.domain().clone(), cod, h.vertex_map().clone(), h.edge_map().clone())
    };
    (add(&f, true, "E"), add(&g, false, "F"))
}

/// An admissible inclusion `G ⊆ E`: new vertices `X`, edges only `G -> X` and `X -> X`, with
/// sinks of `G` kept as sinks.
pub fn random_admissible_extension(rng: &mut Rng8, g: &Arc<Graph>, tag: &str) -> GraphHom {
    loop {
        let nx = rng.gen_range(0..=2);
        let x: Vec<VertexId> = (0..nx).map(|i| VertexId::new(format!("{tag}{i}"))).collect();
        let regular: Vec<VertexId> = g.regular_vertices().into_iter().collect();
        let mut edges: Vec<_> = g
            .edges()
            .map(|(e, ep)| (e.clone(), ep.src.clone(), ep.tgt.clone()))
            .collect();
        if !x.is_empty() {
            for j in 0..rng.gen_range(0..=3) {
                let from_g = !regular.is_empty() && rng.gen_bool(0.5);
                let s = if from_g { regular.choose(rng).unwrap().clone() } else { x.choose(rng).unwrap().clone() };
                let t = x.choose(rng).unwrap().clone();
                edges.push((EdgeId::new(format!("{tag}e{j}")), s, t));
            }
        }
        let e = Graph::new(g.vertices().cloned().chain(x), edges, []);
        let h = GraphHom::inclusion(g.clone(), Arc::new(e)).expect("subgraph");
        if is_admissible(&h).map(|a| a.admissible).unwrap_or(false) {
            return h;
        }
    }
}

/// A span `E <-f- G -g-> F` in the admissible category with `f` an admissible inclusion and `g` a
/// random regular target-bijective hom.
pub fn random_admissible_span(rng: &mut Rng8, max_v: usize, max_e: usize) -> (GraphHom, GraphHom) {
    let f_graph = Arc::new(random_graph(rng, max_v.min(4), max_e.min(5)));
    let g = random_crtbpog_hom(rng, &f_graph, 2);
    let f = random_admissible_extension(rng, g.domain(), "x");
    (f, g)
}
