//! JSON file formats for graphs, homomorphisms and pushouts.
//!
//! A homomorphism file holds `{"domain", "codomain", "f0", "f1"}`; each graph is either inline or
//! `{"ref": "<path>"}`, resolved relative to the file's directory.

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::morphism::GraphHom;
use crate::pushout::PushoutGraph;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Inline(Graph),
    Ref {
        #[serde(rename = "ref")]
        path: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub domain: GraphRef,
    pub codomain: GraphRef,
    #[serde(default)]
    pub f0: BTreeMap<String, String>,
    #[serde(default)]
    pub f1: BTreeMap<String, String>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let g: Graph = serde_json::from_str(text).map_err(parse_error)?;
    Ok(g)
}

fn read(path: &FsPath) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

pub fn load_graph(path: &FsPath) -> Result<Graph> {
    parse_graph(&read(path)?)
}

fn resolve(r: GraphRef, base: Option<&FsPath>) -> Result<Graph> {
    match r {
        GraphRef::Inline(g) => Ok(g),
        GraphRef::Ref { path } => {
            let p = match base {
                Some(b) => b.join(&path),
                None => PathBuf::from(&path),
            };
            load_graph(&p)
        }
    }
}

/// Parses a homomorphism without validating it; see [`GraphHom::validate`].
pub fn parse_hom(text: &str, base: Option<&FsPath>) -> Result<GraphHom> {
    let doc: HomDoc = serde_json::from_str(text).map_err(parse_error)?;
    let domain = Arc::new(resolve(doc.domain, base)?);
    let codomain = Arc::new(resolve(doc.codomain, base)?);
    Ok(GraphHom::new(
        domain,
        codomain,
        doc.f0.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        doc.f1.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
    ))
}

pub fn load_hom(path: &FsPath) -> Result<GraphHom> {
    parse_hom(&read(path)?, path.parent())
}

pub fn graph_to_value(g: &Graph) -> Value {
    serde_json::to_value(g).expect("graphs serialize")
}

fn maps_to_value(h: &GraphHom) -> (Value, Value) {
    let f0: BTreeMap<String, String> =
        h.vertex_map().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let f1: BTreeMap<String, String> =
        h.edge_map().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    (serde_json::to_value(f0).unwrap(), serde_json::to_value(f1).unwrap())
}

/// A homomorphism with both graphs inline.
pub fn hom_to_value(h: &GraphHom) -> Value {
    let (f0, f1) = maps_to_value(h);
    serde_json::json!({
        "domain": graph_to_value(h.domain()),
        "codomain": graph_to_value(h.codomain()),
        "f0": f0,
        "f1": f1,
    })
}

/// The pushout graph with the vertex and edge maps of both canonical homomorphisms.
pub fn pushout_to_value(p: &PushoutGraph) -> Value {
    let (e0, e1) = maps_to_value(p.iota_e());
    let (f0, f1) = maps_to_value(p.iota_f());
    serde_json::json!({
        "graph": graph_to_value(p.graph()),
        "iota_E": {"f0": e0, "f1": e1},
        "iota_F": {"f0": f0, "f1": f1},
    })
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
