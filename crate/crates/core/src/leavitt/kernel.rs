use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::algebra::{LElement, LMonomial};
use super::hom::LeavittHom;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::morphism::{breaking_vertices, desaturating_vertices, is_hereditary, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BreakingGenerator {
    pub vertex: VertexId,
    /// `s^{-1}(w) ∩ t^{-1}(E^0 ∖ H)`
    pub edges: BTreeSet<EdgeId>,
}

/// Generators of the graded ideal attached to a hereditary saturated set `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelPresentation {
    pub vertex_gens: VertexSet,
    pub breaking_gens: Vec<BreakingGenerator>,
}

impl KernelPresentation {
    pub fn is_empty(&self) -> bool {
        self.vertex_gens.is_empty() && self.breaking_gens.is_empty()
    }

    /// The generators as elements: `[χ_v]` for `v ∈ H`, and `[χ_w] - Σ_e [χ_e][χ_{e*}]` per breaking vertex.
    pub fn elements(&self, graph: &Arc<Graph>, field: Field) -> Result<Vec<(String, LElement)>> {
        let mut out = Vec::new();
        for v in &self.vertex_gens {
            out.push((v.to_string(), LElement::vertex(graph.clone(), field, v.as_str())?));
        }
        for b in &self.breaking_gens {
            out.push((format!("break({})", b.vertex), breaking_element(graph, field, b)?));
        }
        Ok(out)
    }
}

pub(crate) fn breaking_element(graph: &Arc<Graph>, field: Field, b: &BreakingGenerator) -> Result<LElement> {
    let mut x = LElement::vertex(graph.clone(), field, b.vertex.as_str())?;
    for e in &b.edges {
        let m = LMonomial::new(
            graph,
            Path::Edges(vec![e.clone()]),
            Path::Edges(vec![e.clone()]),
        )?;
        x = x.sub(&LElement::monomial(graph.clone(), field, m, &field.one())?)?;
    }
    Ok(x)
}

pub fn graded_ideal_generators(g: &Graph, h: &VertexSet) -> Result<KernelPresentation> {
    let her = is_hereditary(g, h)?;
    if let Some(v) = her.prodigal.iter().next() {
        return Err(Error::NotHereditary(v.to_string()));
    }
    if let Some(v) = desaturating_vertices(g, h)?.iter().next() {
        return Err(Error::NotSaturated(v.to_string()));
    }
    let breaking_gens = breaking_vertices(g, h)?
        .into_iter()
        .map(|w| {
            let edges = g
                .out_edges(w.as_str())
                .iter()
                .filter(|e| !h.contains(g.tgt(e.as_str())))
                .cloned()
                .collect();
            BreakingGenerator { vertex: w, edges }
        })
        .collect();
    Ok(KernelPresentation {
        vertex_gens: h.clone(),
        breaking_gens,
    })
}

/// Generators of `ker f*` for `f: G -> E`: the ideal of `H = E^0 ∖ f^0(G^0)`.
///
/// Also checks that each generator is killed by `f*`, and that `f*([χ_v]) = 0` exactly for `v ∈ H`.
pub fn ker_generators(h: &LeavittHom) -> Result<KernelPresentation> {
    let e = h.codomain();
    let image = h.hom().vertex_image();
    let complement: VertexSet = e.vertices().filter(|v| !image.contains(*v)).cloned().collect();
    let pres = graded_ideal_generators(e, &complement)?;
    let field = Field::Rational;
    for (label, x) in pres.elements(e, field)? {
        if !h.pullback(&x)?.is_zero() {
            return Err(Error::SanityCheck(format!("generator {label} is not in the kernel")));
        }
    }
    for v in e.vertices() {
        let killed = h.pullback(&LElement::vertex(e.clone(), field, v.as_str())?)?.is_zero();
        if killed != pres.vertex_gens.contains(v) {
            return Err(Error::SanityCheck(format!(
                "vertex {v}: pullback vanishes = {killed}, but it is {}in the complement of the image",
                if killed { "not " } else { "" }
            )));
        }
    }
    Ok(pres)
}
