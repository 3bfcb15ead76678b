//! The path algebra `kE` with basis `χ_p` over finite paths, and the contravariant pullback.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::{Graph, Path};
use crate::linalg::SparseMatrix;
use crate::lincomb::LinComb;
use crate::morphism::GraphHom;
use crate::pushout::{graph_pushout, preconditions_for, PreconditionFlags};

#[derive(Clone, Debug)]
pub struct PAElement {
    graph: Arc<Graph>,
    terms: LinComb<Path>,
}

impl PartialEq for PAElement {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl Eq for PAElement {}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PAElement {
    pub fn zero(graph: Arc<Graph>, field: Field) -> Self {
        Self {
            graph,
            terms: LinComb::zero(field),
        }
    }

    /// `χ_p`.
    pub fn basis(graph: Arc<Graph>, field: Field, p: Path) -> Result<Self> {
        graph.check_path(&p)?;
        Ok(Self {
            graph,
            terms: LinComb::basis(field, p),
        })
    }

    pub fn from_terms(
        graph: Arc<Graph>,
        field: Field,
        terms: impl IntoIterator<Item = (Path, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(graph, field);
        for (p, c) in terms {
            out.graph.check_path(&p)?;
            if !field.contains(&c) {
                return Err(Error::BadScalar(c.to_string()));
            }
            out.terms.add_term(p, &c);
        }
        Ok(out)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.terms.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.terms()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.coefficient(p)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.terms.add_scaled(&other.terms, &self.field().one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.terms.add_scaled(&other.terms, &self.field().from_int(-1));
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            graph: self.graph.clone(),
            terms: self.terms.scaled(c),
        }
    }

    /// The component of path-length degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.graph.clone(), self.field());
        for (p, c) in self.terms() {
            if p.len() == d {
                out.terms.add_term(p.clone(), c);
            }
        }
        out
    }
}

impl fmt::Display for PAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.terms().map(|(p, c)| (p.to_string(), c)))
    }
}

pub(crate) fn write_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (key, c) in terms {
        let negative = c.0 < num_rational::BigRational::from_integer(0.into());
        let abs = if negative { Scalar(-c.0.clone()) } else { c.clone() };
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
            (true, false) => {}
        }
        if abs.is_one() {
            write!(f, "chi[{key}]")?;
        } else {
            write!(f, "{abs}*chi[{key}]")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Bilinear extension of `χ_p χ_q = χ_{pq}` when `t(p) = s(q)`, else `0`.
pub fn pa_mul(a: &PAElement, b: &PAElement) -> Result<PAElement> {
    a.check_compatible(b)?;
    let field = a.field();
    let mut out = PAElement::zero(a.graph.clone(), field);
    for (p, c) in a.terms() {
        for (q, d) in b.terms() {
            if let Some(pq) = a.graph.concat(p, q) {
                out.terms.add_term(pq, &field.mul(c, d));
            }
        }
    }
    Ok(out)
}

/// `Σ_v χ_v`.
pub fn pa_unit(g: Arc<Graph>, field: Field) -> Result<PAElement> {
    g.ensure_tail_free()?;
    let mut out = PAElement::zero(g.clone(), field);
    for v in g.vertices() {
        out.terms.add_term(Path::Vertex(v.clone()), &field.one());
    }
    Ok(out)
}

/// `χ_p ↦ Σ_{q ∈ f^{-1}(p)} χ_q`.
pub fn pa_pullback(h: &GraphHom, a: &PAElement) -> Result<PAElement> {
    if !same_graph(h.codomain(), &a.graph) {
        return Err(Error::GraphMismatch);
    }
    h.ensure_tail_free()?;
    let field = a.field();
    let mut out = PAElement::zero(h.domain().clone(), field);
    for (p, c) in a.terms() {
        for q in h.path_preimages(p) {
            out.terms.add_term(q, c);
        }
    }
    Ok(out)
}

/// Whether a truncated comparison covers the whole algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Truncated(usize),
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact => f.write_str("EXACT"),
            Exactness::Truncated(n) => write!(f, "TRUNCATED({n})"),
        }
    }
}

impl Serialize for Exactness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub dim_p: usize,
    pub dim_e: usize,
    pub dim_f: usize,
    pub dim_g: usize,
    pub commutes: bool,
    /// Rank of `x ↦ (ι_E*(x), ι_F*(x))`.
    pub image_rank: usize,
    /// Dimension of `{(a, b) : f*(a) = g*(b)}` in this degree.
    pub fiber_dim: usize,
}

impl DegreeCheck {
    pub fn injective(&self) -> bool {
        self.image_rank == self.dim_p
    }

    pub fn surjective(&self) -> bool {
        self.fiber_dim == self.image_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathPullbackReport {
    pub field: String,
    pub max_degree: usize,
    pub exactness: Exactness,
    pub preconditions: PreconditionFlags,
    pub commutativity: bool,
    pub injectivity: bool,
    pub surjectivity: bool,
    pub passed: bool,
    pub degrees: Vec<DegreeCheck>,
    pub witnesses: Vec<String>,
}

pub(crate) fn refuse(flag: &str, flags: &PreconditionFlags) -> Error {
    let detail = flags
        .witnesses
        .iter()
        .find(|w| w.starts_with(flag))
        .cloned()
        .unwrap_or_else(|| format!("{flag} is false"));
    Error::Precondition {
        flag: flag.into(),
        detail,
    }
}

/// Coordinates of `x` in the given basis index.
fn coordinates(
    x: &PAElement,
    index: &BTreeMap<Path, usize>,
    offset: usize,
    row: &mut BTreeMap<usize, Scalar>,
) {
    for (p, c) in x.terms() {
        row.insert(offset + index[p], c.clone());
    }
}

fn index_of(paths: &[Path]) -> BTreeMap<Path, usize> {
    paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

/// Checks that `kP` is the fiber product `kE ×_{kG} kF` in each degree up to `max_degree`.
pub fn verify_path_pullback(
    f: &GraphHom,
    g: &GraphHom,
    max_degree: usize,
    field: Field,
) -> Result<PathPullbackReport> {
    let push = graph_pushout(f, g)?;
    let flags = preconditions_for(f, g, &push);
    for (ok, name) in [
        (flags.vertex_injectivity, "vertex_injectivity"),
        (flags.one_color, "one_color"),
        (flags.one_sided_injectivity, "one_sided_injectivity"),
    ] {
        if !ok {
            return Err(refuse(name, &flags));
        }
    }
    let p = push.graph().clone();
    let (e, fg, gg) = (f.codomain().clone(), g.codomain().clone(), f.domain().clone());
    let (ie, i_f) = (push.iota_e(), push.iota_f());

    let mut degrees = Vec::new();
    let mut witnesses = Vec::new();
    for d in 0..=max_degree {
        let bp = p.paths_of_length(d);
        let be = e.paths_of_length(d);
        let bf = fg.paths_of_length(d);
        let bg = gg.paths_of_length(d);
        let (xe, xf, xg) = (index_of(&be), index_of(&bf), index_of(&bg));

        let mut commutes = true;
        let mut image = SparseMatrix::new(be.len() + bf.len());
        for path in &bp {
            let chi = PAElement::basis(p.clone(), field, path.clone())?;
            let a = pa_pullback(ie, &chi)?;
            let b = pa_pullback(i_f, &chi)?;
            if pa_pullback(f, &a)? != pa_pullback(g, &b)? {
                if commutes {
                    witnesses.push(format!("(a) fails at chi[{path}]"));
                }
                commutes = false;
            }
            let mut row = BTreeMap::new();
            coordinates(&a, &xe, 0, &mut row);
            coordinates(&b, &xf, be.len(), &mut row);
            image.push_row(row);
        }
        let image_rank = image.rank(field);

        // columns of [f* | -g*] indexed by E paths then F paths, rows by G paths
        let mut columns = Vec::with_capacity(be.len() + bf.len());
        for path in &be {
            let chi = PAElement::basis(e.clone(), field, path.clone())?;
            let mut col = BTreeMap::new();
            coordinates(&pa_pullback(f, &chi)?, &xg, 0, &mut col);
            columns.push(col);
        }
        for path in &bf {
            let chi = PAElement::basis(fg.clone(), field, path.clone())?;
            let mut col = BTreeMap::new();
            coordinates(&pa_pullback(g, &chi)?.scale(&field.from_int(-1)), &xg, 0, &mut col);
            columns.push(col);
        }
        let constraint = SparseMatrix::from_columns(bg.len(), columns);
        let fiber_dim = be.len() + bf.len() - constraint.rank(field);

        let check = DegreeCheck {
            degree: d,
            dim_p: bp.len(),
            dim_e: be.len(),
            dim_f: bf.len(),
            dim_g: bg.len(),
            commutes,
            image_rank,
            fiber_dim,
        };
        if !check.injective() {
            witnesses.push(format!(
                "(b) fails in degree {d}: rank {image_rank} < dim {}",
                bp.len()
            ));
        }
        if !check.surjective() {
            witnesses.push(format!(
                "(c) fails in degree {d}: fiber dimension {fiber_dim} exceeds image rank {image_rank}"
            ));
        }
        degrees.push(check);
    }
    let commutativity = degrees.iter().all(|c| c.commutes);
    let injectivity = degrees.iter().all(DegreeCheck::injective);
    let surjectivity = degrees.iter().all(DegreeCheck::surjective);
    let exactness = match p.longest_path_len() {
        Some(l) if l <= max_degree => Exactness::Exact,
        _ => Exactness::Truncated(max_degree),
    };
    Ok(PathPullbackReport {
        field: field.to_string(),
        max_degree,
        exactness,
        preconditions: flags,
        commutativity,
        injectivity,
        surjectivity,
        passed: commutativity && injectivity && surjectivity,
        degrees,
        witnesses,
    })
}
