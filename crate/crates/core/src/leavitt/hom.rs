use std::sync::Arc;

use serde::Serialize;

use super::algebra::{l_mul, LElement, LMonomial};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::{EdgeId, Graph, Path};
use crate::morphism::{Category, GraphHom};
use crate::path_algebra::same_graph;

/// Counts of the generator identities checked when a [`LeavittHom`] is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    /// Pairs `(x, y)` of codomain edges with `f*(x*) f*(y) = δ_{x,y} f*(t(x))`.
    pub ck1_pairs: usize,
    /// Regular codomain vertices `w` with `Σ_{s(x)=w} f*(x) f*(x*) = f*(w)`.
    pub ck2_vertices: usize,
    pub unital: bool,
}

/// A CRTBPOG morphism `f: E -> F` together with its verified pullback `L(F) -> L(E)`.
#[derive(Clone, Debug)]
pub struct LeavittHom {
    hom: GraphHom,
    descent: DescentReport,
}

impl LeavittHom {
    /// Refuses morphisms outside CRTBPOG, then checks the descent identities on all generators.
    pub fn new(hom: GraphHom) -> Result<Self> {
        hom.ensure_tail_free()?;
        let report = hom.validate();
        if !report.is_ok() {
            return Err(Error::InvalidHom(report.to_string()));
        }
        let class = hom.classify();
        if class.category != Category::Crtbpog {
            let why = if class.witnesses.is_empty() {
                format!("category is {}", class.category)
            } else {
                class.witnesses.join("; ")
            };
            return Err(Error::NotAdmissibleCategory(why));
        }
        let descent = check_descent(&hom)?;
        Ok(Self { hom, descent })
    }

    pub fn hom(&self) -> &GraphHom {
        &self.hom
    }

    pub fn descent(&self) -> &DescentReport {
        &self.descent
    }

    pub fn domain(&self) -> &Arc<Graph> {
        self.hom.domain()
    }

    pub fn codomain(&self) -> &Arc<Graph> {
        self.hom.codomain()
    }

    pub fn pullback(&self, a: &LElement) -> Result<LElement> {
        if !same_graph(self.hom.codomain(), a.graph()) {
            return Err(Error::GraphMismatch);
        }
        pull(&self.hom, a)
    }
}

/// Preimages of `αβ*` in the extended domain graph are exactly `q_α q_β*` with
/// `q_α ∈ f^{-1}(α)`, `q_β ∈ f^{-1}(β)` and `t(q_α) = t(q_β)`.
fn pull_monomial(h: &GraphHom, m: &LMonomial, c: &Scalar, out: &mut LElement) {
    let dom = h.domain();
    let pa = h.path_preimages(m.alpha());
    let pb = h.path_preimages(m.beta());
    for qa in &pa {
        let ta = dom.path_target(qa);
        for qb in &pb {
            if dom.path_target(qb) == ta {
                out.add_monomial(LMonomial::new_unchecked(qa.clone(), qb.clone()), c);
            }
        }
    }
}

fn pull(h: &GraphHom, a: &LElement) -> Result<LElement> {
    let mut out = LElement::zero(h.domain().clone(), a.field())?;
    for (m, c) in a.terms() {
        pull_monomial(h, m, c, &mut out);
    }
    Ok(out)
}

fn check_descent(h: &GraphHom) -> Result<DescentReport> {
    let field = Field::Rational;
    let cod = h.codomain().clone();
    let dom = h.domain().clone();
    let gen = |m: LMonomial| -> Result<LElement> {
        let x = LElement::monomial(cod.clone(), field, m, &field.one())?;
        pull(h, &x)
    };
    let edge = |x: &EdgeId| {
        LMonomial::new_unchecked(Path::Edges(vec![x.clone()]), Path::Vertex(cod.tgt(x.as_str()).clone()))
    };
    let ghost = |x: &EdgeId| {
        LMonomial::new_unchecked(Path::Vertex(cod.tgt(x.as_str()).clone()), Path::Edges(vec![x.clone()]))
    };

    let mut ck1_pairs = 0;
    for x in cod.edge_ids() {
        let fx_star = gen(ghost(x))?;
        for y in cod.edge_ids() {
            let lhs = l_mul(&fx_star, &gen(edge(y))?)?;
            let rhs = if x == y {
                gen(LMonomial::vertex(cod.tgt(x.as_str())))?
            } else {
                LElement::zero(dom.clone(), field)?
            };
            if lhs != rhs {
                return Err(Error::Descent(format!("f*({x}*) f*({y}) = {lhs}, expected {rhs}")));
            }
            ck1_pairs += 1;
        }
    }

    let mut ck2_vertices = 0;
    for w in cod.regular_vertices() {
        let mut lhs = LElement::zero(dom.clone(), field)?;
        for x in cod.out_edges(w.as_str()) {
            lhs = lhs.add(&l_mul(&gen(edge(x))?, &gen(ghost(x))?)?)?;
        }
        let rhs = gen(LMonomial::vertex(&w))?;
        if lhs != rhs {
            return Err(Error::Descent(format!(
                "sum over edges at {w} gives {lhs}, expected {rhs}"
            )));
        }
        ck2_vertices += 1;
    }

    let one = pull(h, &LElement::one(cod.clone(), field)?)?;
    Ok(DescentReport {
        ck1_pairs,
        ck2_vertices,
        unital: one == LElement::one(dom, field)?,
    })
}

/// `l_pullback(h, a)` for a one-off call; builds and verifies the morphism first.
pub fn l_pullback(h: &GraphHom, a: &LElement) -> Result<LElement> {
    LeavittHom::new(h.clone())?.pullback(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ExtendedGraph;
    use crate::leavitt::{normal_form, Letter};

    const Q: Field = Field::Rational;

    #[test]
    fn identity_pulls_back_to_itself() {
        let g = Arc::new(Graph::builder().edge("a", "v", "w").edge("b", "v", "w").edge("l", "w", "w").build());
        let h = LeavittHom::new(GraphHom::identity(g.clone())).unwrap();
        assert!(h.descent().unital);
        assert_eq!(h.descent().ck1_pairs, 9);
        let x = LElement::ghost(g.clone(), Q, "a").unwrap();
        assert_eq!(h.pullback(&x).unwrap(), x);
    }

    #[test]
    fn admissible_inclusion_kills_the_complement() {
        let sub = Arc::new(Graph::builder().edge("e", "v", "w").build());
        let sup = Arc::new(Graph::builder().edge("e", "v", "w").vertex("u").build());
        let h = LeavittHom::new(GraphHom::inclusion(sub.clone(), sup.clone()).unwrap()).unwrap();
        let u = LElement::vertex(sup.clone(), Q, "u").unwrap();
        assert!(h.pullback(&u).unwrap().is_zero());
        let v = LElement::vertex(sup, Q, "v").unwrap();
        assert_eq!(h.pullback(&v).unwrap(), LElement::vertex(sub, Q, "v").unwrap());
    }

    #[test]
    fn non_crtbpog_refused() {
        let e = Arc::new(Graph::builder().vertex("v").build());
        let f = Arc::new(Graph::builder().edge("l", "v", "v").build());
        let h = GraphHom::from_pairs(e, f, [("v", "v")], []).unwrap();
        assert!(matches!(LeavittHom::new(h), Err(Error::NotAdmissibleCategory(_))));
    }

    #[test]
    fn covering_of_a_loop() {
        // the two-cycle double covers the loop
        let e = Arc::new(Graph::builder().edge("a", "x", "y").edge("b", "y", "x").build());
        let f = Arc::new(Graph::builder().edge("l", "u", "u").build());
        let h = GraphHom::from_pairs(e.clone(), f.clone(), [("x", "u"), ("y", "u")], [("a", "l"), ("b", "l")])
            .unwrap();
        let lh = LeavittHom::new(h).unwrap();
        assert!(lh.descent().unital);
        let l = LElement::edge(f, Q, "l").unwrap();
        let expected = LElement::edge(e.clone(), Q, "a").unwrap().add(&LElement::edge(e, Q, "b").unwrap()).unwrap();
        assert_eq!(lh.pullback(&l).unwrap(), expected);
    }

    fn letters(ext: &ExtendedGraph, p: &Path) -> Vec<Letter> {
        match p {
            Path::Vertex(v) => vec![Letter::Vertex(v.clone())],
            Path::Edges(es) => es
                .iter()
                .map(|e| match ext.real_of(e.as_str()) {
                    Some(real) => Letter::Ghost(real.clone()),
                    None => Letter::Real(e.clone()),
                })
                .collect(),
        }
    }

    #[test]
    fn pairing_preimages_matches_the_extended_hom() {
        let mut rng = crate::random::rng(11);
        for _ in 0..20 {
            let c = Arc::new(crate::random::random_graph(&mut rng, 3, 4));
            let h = crate::random::random_crtbpog_hom(&mut rng, &c, 2);
            let lh = LeavittHom::new(h.clone()).unwrap();
            let ext = h.extended().unwrap();
            let (dom_ext, cod_ext) = (h.domain().extended_graph().unwrap(), c.extended_graph().unwrap());
            for p in cod_ext.graph().paths_up_to(3) {
                let word = normal_form(c.clone(), Q, &letters(&cod_ext, &p), &Q.one()).unwrap();
                let mut expected = LElement::zero(h.domain().clone(), Q).unwrap();
                for q in ext.path_preimages(&p) {
                    let term = normal_form(h.domain().clone(), Q, &letters(&dom_ext, &q), &Q.one()).unwrap();
                    expected = expected.add(&term).unwrap();
                }
                assert_eq!(lh.pullback(&word).unwrap(), expected, "{p}");
            }
        }
    }
}
