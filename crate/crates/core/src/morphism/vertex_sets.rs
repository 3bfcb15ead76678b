//! Hereditary, saturated, and unbroken vertex sets.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub type VertexSet = BTreeSet<VertexId>;

fn ensure_subset(g: &Graph, h: &VertexSet) -> Result<()> {
    match h.iter().find(|v| !g.has_vertex(v.as_str())) {
        Some(v) => Err(Error::NotASubset(v.to_string())),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HereditaryCheck {
    pub hereditary: bool,
    /// Vertices of `H` emitting an edge or tail that leaves `H`.
    pub prodigal: VertexSet,
}

pub fn is_hereditary(g: &Graph, h: &VertexSet) -> Result<HereditaryCheck> {
    ensure_subset(g, h)?;
    let mut prodigal = VertexSet::new();
    for v in h {
        let leaks_edge = g
            .out_edges(v.as_str())
            .iter()
            .any(|e| !h.contains(g.tgt(e.as_str())));
        let leaks_tail = g.omega_tails().iter().any(|(a, b)| a == v && !h.contains(b));
        if leaks_edge || leaks_tail {
            prodigal.insert(v.clone());
        }
    }
    Ok(HereditaryCheck {
        hereditary: prodigal.is_empty(),
        prodigal,
    })
}

/// Regular vertices outside `H` all of whose edges end in `H`.
pub fn desaturating_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet> {
    ensure_subset(g, h)?;
    Ok(g.vertices()
        .filter(|v| !h.contains(*v) && g.is_regular(v.as_str()))
        .filter(|v| {
            g.out_edges(v.as_str())
                .iter()
                .all(|e| h.contains(g.tgt(e.as_str())))
        })
        .cloned()
        .collect())
}

pub fn is_saturated(g: &Graph, h: &VertexSet) -> Result<bool> {
    Ok(desaturating_vertices(g, h)?.is_empty())
}

/// The smallest saturated superset of `H`, by fixpoint iteration.
pub fn saturation(g: &Graph, h: &VertexSet) -> Result<VertexSet> {
    let mut current = h.clone();
    loop {
        let add = desaturating_vertices(g, &current)?;
        if add.is_empty() {
            return Ok(current);
        }
        current.extend(add);
    }
}

/// `B_H`: infinite emitters outside `H` sending finitely many (and at least one) edges out of `H`.
/// A tail into the complement counts as infinitely many edges.
pub fn breaking_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet> {
    ensure_subset(g, h)?;
    let mut out = VertexSet::new();
    for v in g.vertices() {
        if h.contains(v) || !g.is_infinite_emitter(v.as_str()) {
            continue;
        }
        let tail_into_complement = g.omega_tails().iter().any(|(a, b)| a == v && !h.contains(b));
        if tail_into_complement {
            continue;
        }
        let named_into_complement = g
            .out_edges(v.as_str())
            .iter()
            .filter(|e| !h.contains(g.tgt(e.as_str())))
            .count();
        if named_into_complement > 0 {
            out.insert(v.clone());
        }
    }
    Ok(out)
}

pub fn is_unbroken(g: &Graph, h: &VertexSet) -> Result<bool> {
    Ok(breaking_vertices(g, h)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[&str]) -> VertexSet {
        vs.iter().map(|&v| v.into()).collect()
    }

    fn single_edge() -> Graph {
        Graph::builder().edge("e", "v", "w").build()
    }

    #[test]
    fn hereditary_examples() {
        let g = single_edge();
        assert!(is_hereditary(&g, &set(&["w"])).unwrap().hereditary);
        let c = is_hereditary(&g, &set(&["v"])).unwrap();
        assert!(!c.hereditary);
        assert_eq!(c.prodigal, set(&["v"]));
        assert!(is_hereditary(&g, &set(&["v", "w"])).unwrap().hereditary);
        assert!(matches!(is_hereditary(&g, &set(&["q"])), Err(Error::NotASubset(_))));
    }

    #[test]
    fn tails_count_for_hereditary() {
        let g = Graph::builder().tail("v", "w").build();
        assert!(!is_hereditary(&g, &set(&["v"])).unwrap().hereditary);
    }

    #[test]
    fn saturation_examples() {
        let g = single_edge();
        assert_eq!(saturation(&g, &set(&["w"])).unwrap(), set(&["v", "w"]));
        let full = set(&["v", "w"]);
        assert_eq!(saturation(&g, &full).unwrap(), full);
        let l = Graph::builder().edge("l", "u", "u").build();
        assert_eq!(saturation(&l, &set(&[])).unwrap(), set(&[]));
        // chains saturate transitively
        let chain = Graph::builder().edge("a", "x", "y").edge("b", "y", "z").build();
        assert_eq!(saturation(&chain, &set(&["z"])).unwrap(), set(&["x", "y", "z"]));
        // infinite emitters never desaturate
        let tailed = Graph::builder().edge("a", "x", "y").tail("x", "y").build();
        assert_eq!(saturation(&tailed, &set(&["y"])).unwrap(), set(&["y"]));
    }

    #[test]
    fn breaking_examples() {
        let finite = single_edge();
        assert!(breaking_vertices(&finite, &set(&["w"])).unwrap().is_empty());

        let g = Graph::builder().tail("v", "h").edge("e", "v", "w").build();
        assert_eq!(breaking_vertices(&g, &set(&["h"])).unwrap(), set(&["v"]));
        assert!(!is_unbroken(&g, &set(&["h"])).unwrap());

        let g = Graph::builder().tail("v", "w").build();
        assert!(breaking_vertices(&g, &set(&[])).unwrap().is_empty());
        // no named edge into the complement
        let g = Graph::builder().tail("v", "h").edge("e", "v", "h").vertex("w").build();
        assert!(breaking_vertices(&g, &set(&["h"])).unwrap().is_empty());
    }
}
