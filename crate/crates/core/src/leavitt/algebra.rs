use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::{EdgeId, Graph, Path, VertexId};
use crate::lincomb::LinComb;
use crate::path_algebra::{same_graph, write_combination};

/// The monomial `αβ*` with `t(α) = t(β)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LMonomial {
    alpha: Path,
    beta: Path,
}

impl LMonomial {
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Result<Self> {
        g.check_path(&alpha)?;
        g.check_path(&beta)?;
        if g.path_target(&alpha) != g.path_target(&beta) {
            return Err(Error::NotAPath(format!(
                "{alpha} and {beta} end at different vertices"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub(crate) fn new_unchecked(alpha: Path, beta: Path) -> Self {
        Self { alpha, beta }
    }

    pub fn vertex(v: &VertexId) -> Self {
        Self {
            alpha: Path::Vertex(v.clone()),
            beta: Path::Vertex(v.clone()),
        }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    /// `|α| - |β|`.
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    /// `|α| + |β|`.
    pub fn total_len(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    pub fn is_normal(&self, g: &Graph) -> bool {
        match (self.alpha.last_edge(), self.beta.last_edge()) {
            (Some(a), Some(b)) => a != b || special_edge(g, g.src(a.as_str())) != Some(a),
            _ => true,
        }
    }
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut letters: Vec<String> = self.alpha.edge_list().iter().map(|e| e.to_string()).collect();
        letters.extend(self.beta.edge_list().iter().rev().map(|e| format!("{e}*")));
        if letters.is_empty() {
            write!(f, "{}", self.alpha)
        } else {
            f.write_str(&letters.join("."))
        }
    }
}

impl fmt::Debug for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `γ_v`: the least edge id emitted by `v`, if `v` is regular.
pub fn special_edge<'g>(g: &'g Graph, v: &VertexId) -> Option<&'g EdgeId> {
    g.out_edges(v.as_str()).first()
}

fn drop_last(g: &Graph, p: &Path) -> Path {
    let es = p.edge_list();
    match es.len() {
        0 => p.clone(),
        1 => Path::Vertex(g.src(es[0].as_str()).clone()),
        n => Path::Edges(es[..n - 1].to_vec()),
    }
}

fn push_edge(g: &Graph, p: &Path, e: &EdgeId) -> Path {
    g.concat(p, &Path::Edges(vec![e.clone()]))
        .expect("edge leaves the end of the path")
}

/// Adds `c · nf(m)` to `out` by repeatedly eliminating the special-edge pair.
fn reduce_into(g: &Graph, field: Field, m: LMonomial, c: &Scalar, out: &mut LinComb<LMonomial>) {
    let mut m = m;
    let minus_c = field.neg(c);
    loop {
        if m.is_normal(g) {
            out.add_term(m, c);
            return;
        }
        let gamma = m.alpha.last_edge().expect("non-normal has edges").clone();
        let v = g.src(gamma.as_str());
        let alpha = drop_last(g, &m.alpha);
        let beta = drop_last(g, &m.beta);
        for e in g.out_edges(v.as_str()) {
            if *e != gamma {
                let term = LMonomial::new_unchecked(push_edge(g, &alpha, e), push_edge(g, &beta, e));
                out.add_term(term, &minus_c);
            }
        }
        m = LMonomial::new_unchecked(alpha, beta);
    }
}

/// `(αβ*)(γδ*)` before normalization, or `None` when it vanishes by (CK1).
pub fn monomial_product(g: &Graph, x: &LMonomial, y: &LMonomial) -> Option<LMonomial> {
    if let Some(rest) = g.strip_prefix(&y.alpha, &x.beta) {
        let alpha = g.concat(&x.alpha, &rest)?;
        return Some(LMonomial::new_unchecked(alpha, y.beta.clone()));
    }
    if let Some(rest) = g.strip_prefix(&x.beta, &y.alpha) {
        let beta = g.concat(&y.beta, &rest)?;
        return Some(LMonomial::new_unchecked(x.alpha.clone(), beta));
    }
    None
}

/// A letter of a word in the extended graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Vertex(VertexId),
    Real(EdgeId),
    Ghost(EdgeId),
}

impl Letter {
    fn ends(&self, g: &Graph) -> Result<(VertexId, VertexId)> {
        let edge = |e: &EdgeId| {
            g.endpoints(e.as_str())
                .cloned()
                .ok_or_else(|| Error::NotAPath(format!("unknown edge {e}")))
        };
        Ok(match self {
            Letter::Vertex(v) => {
                if !g.has_vertex(v.as_str()) {
                    return Err(Error::NotAPath(format!("unknown vertex {v}")));
                }
                (v.clone(), v.clone())
            }
            Letter::Real(e) => {
                let ep = edge(e)?;
                (ep.src, ep.tgt)
            }
            Letter::Ghost(e) => {
                let ep = edge(e)?;
                (ep.tgt, ep.src)
            }
        })
    }
}

/// An element of `L_k(E)`, stored as a combination of NORMAL monomials.
#[derive(Clone, Debug)]
pub struct LElement {
    graph: Arc<Graph>,
    terms: LinComb<LMonomial>,
}

impl PartialEq for LElement {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}

impl Eq for LElement {}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.terms().map(|(m, c)| (m.to_string(), c)))
    }
}

impl LElement {
    pub fn zero(graph: Arc<Graph>, field: Field) -> Result<Self> {
        graph.ensure_tail_free()?;
        Ok(Self {
            graph,
            terms: LinComb::zero(field),
        })
    }

    pub fn one(graph: Arc<Graph>, field: Field) -> Result<Self> {
        let mut out = Self::zero(graph, field)?;
        let vertices: Vec<VertexId> = out.graph.vertices().cloned().collect();
        for v in vertices {
            out.terms.add_term(LMonomial::vertex(&v), &field.one());
        }
        Ok(out)
    }

    /// `c · nf(m)`.
    pub fn monomial(graph: Arc<Graph>, field: Field, m: LMonomial, c: &Scalar) -> Result<Self> {
        let mut out = Self::zero(graph, field)?;
        LMonomial::new(&out.graph, m.alpha.clone(), m.beta.clone())?;
        out.add_monomial(m, c);
        Ok(out)
    }

    pub fn vertex(graph: Arc<Graph>, field: Field, v: &str) -> Result<Self> {
        normal_form(graph, field, &[Letter::Vertex(v.into())], &field.one())
    }

    pub fn edge(graph: Arc<Graph>, field: Field, e: &str) -> Result<Self> {
        normal_form(graph, field, &[Letter::Real(e.into())], &field.one())
    }

    pub fn ghost(graph: Arc<Graph>, field: Field, e: &str) -> Result<Self> {
        normal_form(graph, field, &[Letter::Ghost(e.into())], &field.one())
    }

    pub(crate) fn add_monomial(&mut self, m: LMonomial, c: &Scalar) {
        reduce_into(&self.graph, self.field(), m, c, &mut self.terms);
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LMonomial, &Scalar)> {
        self.terms.terms()
    }

    pub fn coefficient(&self, m: &LMonomial) -> Scalar {
        self.terms.coefficient(m)
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

    /// Sorted distinct degrees `|α| - |β|` of the terms.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms().map(|(m, _)| m.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn homogeneous_part(&self, d: i64) -> Self {
        let mut out = self.clone();
        out.terms = LinComb::zero(self.field());
        for (m, c) in self.terms() {
            if m.degree() == d {
                out.terms.add_term(m.clone(), c);
            }
        }
        out
    }

    pub fn all_normal(&self) -> bool {
        self.terms().all(|(m, _)| m.is_normal(&self.graph))
    }
}

/// Rewrites `c · w` for a word `w` of the extended graph into normal form.
pub fn normal_form(graph: Arc<Graph>, field: Field, word: &[Letter], c: &Scalar) -> Result<LElement> {
    let mut out = LElement::zero(graph, field)?;
    if word.is_empty() {
        return Err(Error::NotAPath("empty word".into()));
    }
    if !field.contains(c) {
        return Err(Error::BadScalar(c.to_string()));
    }
    let g = out.graph.clone();
    let mut ends = Vec::with_capacity(word.len());
    for l in word {
        ends.push(l.ends(&g)?);
    }
    for (i, w) in ends.windows(2).enumerate() {
        if w[0].1 != w[1].0 {
            return Err(Error::NotAPath(format!(
                "letter {} ends at {} but letter {} starts at {}",
                i + 1,
                w[0].1,
                i + 2,
                w[1].0
            )));
        }
    }
    let mut acc = Some(letter_monomial(&g, &word[0]));
    for l in &word[1..] {
        let next = letter_monomial(&g, l);
        acc = acc.and_then(|m| monomial_product(&g, &m, &next));
    }
    if let Some(m) = acc {
        out.add_monomial(m, c);
    }
    Ok(out)
}

fn letter_monomial(g: &Graph, l: &Letter) -> LMonomial {
    match l {
        Letter::Vertex(v) => LMonomial::vertex(v),
        Letter::Real(e) => {
            LMonomial::new_unchecked(Path::Edges(vec![e.clone()]), Path::Vertex(g.tgt(e.as_str()).clone()))
        }
        Letter::Ghost(e) => {
            LMonomial::new_unchecked(Path::Vertex(g.tgt(e.as_str()).clone()), Path::Edges(vec![e.clone()]))
        }
    }
}

pub fn l_mul(a: &LElement, b: &LElement) -> Result<LElement> {
    a.check_compatible(b)?;
    let field = a.field();
    let mut out = LElement {
        graph: a.graph.clone(),
        terms: LinComb::zero(field),
    };
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            if let Some(m) = monomial_product(&a.graph, x, y) {
                out.add_monomial(m, &field.mul(c, d));
            }
        }
    }
    Ok(out)
}

/// NORMAL monomials with `|α| + |β| <= n`, ordered by total length, then descending degree.
pub fn window_basis(g: &Graph, n: usize) -> Vec<LMonomial> {
    let paths = g.paths_up_to(n);
    let mut by_target: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    for p in &paths {
        by_target.entry(g.path_target(p)).or_default().push(p);
    }
    let mut out = Vec::new();
    for ps in by_target.values() {
        for a in ps {
            for b in ps {
                if a.len() + b.len() <= n {
                    let m = LMonomial::new_unchecked((*a).clone(), (*b).clone());
                    if m.is_normal(g) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| {
        (x.total_len(), -x.degree())
            .cmp(&(y.total_len(), -y.degree()))
            .then_with(|| x.cmp(y))
    });
    out
}

/// The full NORMAL basis, when `g` is acyclic and the algebra is finite-dimensional.
pub fn normal_basis(g: &Graph) -> Option<Vec<LMonomial>> {
    g.longest_path_len().map(|l| window_basis(g, 2 * l))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn single_edge() -> Arc<Graph> {
        Arc::new(Graph::builder().edge("e", "v", "w").build())
    }

    fn word(g: &Arc<Graph>, letters: &[Letter]) -> LElement {
        normal_form(g.clone(), Q, letters, &Q.one()).unwrap()
    }

    fn real(e: &str) -> Letter {
        Letter::Real(e.into())
    }

    fn ghost(e: &str) -> Letter {
        Letter::Ghost(e.into())
    }

    #[test]
    fn ck1() {
        let g = Arc::new(Graph::builder().edge("e", "v", "w").edge("f", "v", "w").build());
        assert_eq!(word(&g, &[ghost("e"), real("e")]), LElement::vertex(g.clone(), Q, "w").unwrap());
        assert!(word(&g, &[ghost("e"), real("f")]).is_zero());
    }

    #[test]
    fn ck2_single_edge() {
        let g = single_edge();
        let ee = word(&g, &[real("e"), ghost("e")]);
        assert_eq!(ee, LElement::vertex(g.clone(), Q, "v").unwrap());
        assert_eq!(ee.to_string(), "chi[v]");
    }

    #[test]
    fn ck2_two_edges() {
        let g = Arc::new(Graph::builder().edge("a", "v", "w").edge("b", "v", "w").build());
        let aa = word(&g, &[real("a"), ghost("a")]);
        assert_eq!(aa.to_string(), "chi[v] - chi[b.b*]");
        let bb = word(&g, &[real("b"), ghost("b")]);
        assert_eq!(aa.add(&bb).unwrap(), LElement::vertex(g, Q, "v").unwrap());
    }

    #[test]
    fn loop_is_unitary_in_corner() {
        let g = Arc::new(Graph::builder().edge("l", "u", "u").build());
        let l = LElement::edge(g.clone(), Q, "l").unwrap();
        let ls = LElement::ghost(g.clone(), Q, "l").unwrap();
        let u = LElement::vertex(g.clone(), Q, "u").unwrap();
        assert_eq!(l_mul(&ls, &l).unwrap(), u);
        assert_eq!(l_mul(&l, &ls).unwrap(), u);
        let llstar = l_mul(&l, &ls).unwrap();
        assert_eq!(l_mul(&llstar, &l).unwrap(), l);
    }

    #[test]
    fn single_edge_basis() {
        let g = single_edge();
        let basis = normal_basis(&g).unwrap();
        let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["v", "w", "e", "e*"]);
    }

    #[test]
    fn malformed_words() {
        let g = Arc::new(Graph::builder().edge("e", "v", "w").edge("f", "w", "x").build());
        assert!(normal_form(g.clone(), Q, &[real("f"), real("e")], &Q.one()).is_err());
        assert!(normal_form(g.clone(), Q, &[real("q")], &Q.one()).is_err());
        assert!(normal_form(g.clone(), Q, &[], &Q.one()).is_err());
        let ok = word(&g, &[real("e"), real("f"), ghost("f")]);
        assert_eq!(ok, LElement::edge(g, Q, "e").unwrap());
    }

    #[test]
    fn tailed_graphs_refused() {
        let g = Arc::new(Graph::builder().tail("v", "w").build());
        assert!(matches!(LElement::zero(g, Q), Err(Error::TailedGraph(_))));
    }

    #[test]
    fn products_cover_three_cases() {
        let g = Arc::new(Graph::builder().edge("a", "x", "y").edge("b", "y", "z").build());
        let ab = LMonomial::new(&g, Path::edges(["a", "b"]), Path::vertex("z")).unwrap();
        let a_star = LMonomial::new(&g, Path::vertex("y"), Path::edges(["a"])).unwrap();
        // (y a*)(a b z*) = a*·a·b = b
        let p = monomial_product(&g, &a_star, &ab).unwrap();
        assert_eq!(p.to_string(), "b");
        // (a b)(a*) vanishes since z != x
        assert!(monomial_product(&g, &ab, &a_star).is_none());
        let b_star_a_star = LMonomial::new(&g, Path::vertex("z"), Path::edges(["a", "b"])).unwrap();
        let a = LMonomial::new(&g, Path::edges(["a"]), Path::vertex("y")).unwrap();
        // (b* a*)(a) = b*
        assert_eq!(monomial_product(&g, &b_star_a_star, &a).unwrap().to_string(), "b*");
    }
}
