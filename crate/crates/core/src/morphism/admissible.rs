use serde::Serialize;

use super::hom::{Category, GraphHom};
use super::vertex_sets::{breaking_vertices, desaturating_vertices, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub strongly: bool,
    /// The complement of the vertex image is saturated.
    pub a1: bool,
    /// Every codomain edge (or tail) ending in the image comes from the domain.
    pub a2: bool,
    pub witnesses: Vec<String>,
}

/// Checks conditions (A1), (A2), and unbrokenness for an injective homomorphism.
pub fn is_admissible(h: &GraphHom) -> Result<Admissibility> {
    if !h.is_injective() {
        return Err(Error::NotInjective(
            "admissibility is defined for injective homomorphisms".into(),
        ));
    }
    let cod = h.codomain();
    let image = h.vertex_image();
    let complement: VertexSet = cod.vertices().filter(|v| !image.contains(*v)).cloned().collect();
    let mut witnesses = Vec::new();

    let desat = desaturating_vertices(cod, &complement)?;
    let a1 = desat.is_empty();
    if let Some(v) = desat.iter().next() {
        witnesses.push(format!("(A1) fails: {v} desaturates the complement of the image"));
    }

    let edge_image = h.edge_image();
    let mut a2 = true;
    for (x, ep) in cod.edges() {
        if image.contains(&ep.tgt) && !edge_image.contains(x) {
            a2 = false;
            witnesses.push(format!(
                "(A2) fails: edge {x} ends at {} in the image but is not an image edge",
                ep.tgt
            ));
            break;
        }
    }
    if a2 {
        let dom_tails: std::collections::BTreeSet<_> = h
            .domain()
            .omega_tails()
            .iter()
            .map(|(a, b)| (h.map_vertex(a.as_str()).clone(), h.map_vertex(b.as_str()).clone()))
            .collect();
        for t in cod.omega_tails() {
            if image.contains(&t.1) && !dom_tails.contains(t) {
                a2 = false;
                witnesses.push(format!(
                    "(A2) fails: omega tail ({}, {}) ends in the image but is not a domain tail",
                    t.0, t.1
                ));
                break;
            }
        }
    }

    let admissible = a1 && a2;
    let breaking = breaking_vertices(cod, &complement)?;
    if let Some(v) = breaking.iter().next() {
        witnesses.push(format!("complement is broken at {v}"));
    }
    Ok(Admissibility {
        admissible,
        strongly: admissible && breaking.is_empty(),
        a1,
        a2,
        witnesses,
    })
}

/// Cross-check: admissibility agrees with membership in CRTBPOG.
pub fn admissible_equiv_crtbpog(h: &GraphHom) -> Result<bool> {
    let adm = is_admissible(h)?;
    Ok(adm.admissible == (h.classify().category == Category::Crtbpog))
}
