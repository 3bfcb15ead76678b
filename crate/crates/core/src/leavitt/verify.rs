use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::algebra::{window_basis, LElement, LMonomial};
use super::hom::LeavittHom;
use super::kernel::{breaking_element, ker_generators};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graph::Graph;
use crate::linalg::SparseMatrix;
use crate::morphism::{Category, GraphHom, VertexSet};
use crate::path_algebra::refuse;
use crate::pushout::{breakarrow_checks, graph_pushout, preconditions_for, BreakarrowCheck, PreconditionFlags};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub checked: usize,
    pub witnesses: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self {
            passed: true,
            ..Self::default()
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.witnesses.len() < 8 {
                self.witnesses.push(witness());
            }
        }
    }
}

/// One `ℤ`-degree of the span of NORMAL monomials with `|α| + |β| <= N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCheck {
    pub degree: i64,
    pub dim_p: usize,
    pub dim_e: usize,
    pub dim_f: usize,
    pub dim_g: usize,
    pub commutes: bool,
    pub image_rank: usize,
    pub fiber_dim: usize,
}

impl WindowCheck {
    pub fn consistent(&self) -> bool {
        self.commutes && self.image_rank == self.dim_p && self.fiber_dim == self.image_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedCheck {
    pub max_len: usize,
    pub windows: Vec<WindowCheck>,
    /// Monomials whose image left the window; normalization never lengthens, so this stays 0.
    pub excluded_monomials: usize,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeavittPullbackReport {
    pub field: String,
    pub max_degree: usize,
    pub preconditions: PreconditionFlags,
    pub kernel_intersection: Verdict,
    pub surjectivity: Verdict,
    pub kernel_correspondence: Verdict,
    pub breakarrow: Vec<BreakarrowCheck>,
    pub truncated: TruncatedCheck,
    pub passed: bool,
}

fn category_flag(h: &GraphHom, name: &str) -> Result<()> {
    let c = h.classify();
    if c.category == Category::Crtbpog {
        Ok(())
    } else {
        Err(Error::Precondition {
            flag: "admissible_category".into(),
            detail: format!("{name} is in {} only: {}", c.category, c.witnesses.join("; ")),
        })
    }
}

fn admissible_leg(h: GraphHom, name: &str) -> Result<LeavittHom> {
    LeavittHom::new(h).map_err(|e| match e {
        Error::NotAdmissibleCategory(why) => Error::Precondition {
            flag: "admissible_pushout".into(),
            detail: format!("{name} is not in CRTBPOG: {why}"),
        },
        other => other,
    })
}

/// Checks that `L(E ⊔_G F)` is the pullback of `L(E) -> L(G) <- L(F)`.
pub fn verify_leavitt_pullback(
    f: &GraphHom,
    g: &GraphHom,
    max_degree: usize,
    field: Field,
) -> Result<LeavittPullbackReport> {
    let push = graph_pushout(f, g)?;
    category_flag(f, "f")?;
    category_flag(g, "g")?;
    let flags = preconditions_for(f, g, &push);
    if !flags.p1 {
        return Err(refuse("P1", &flags));
    }
    if !flags.p2 {
        return Err(refuse("P2", &flags));
    }
    let lf = LeavittHom::new(f.clone())?;
    let lg = LeavittHom::new(g.clone())?;
    let le = admissible_leg(push.iota_e().clone(), "iota_E")?;
    let li = admissible_leg(push.iota_f().clone(), "iota_F")?;
    let p = push.graph().clone();

    // (1)
    let mut kernel_intersection = Verdict::new();
    let covered: VertexSet = push
        .iota_e()
        .vertex_image()
        .into_iter()
        .chain(push.iota_f().vertex_image())
        .collect();
    for v in p.vertices() {
        kernel_intersection.record(covered.contains(v), || format!("{v} is hit by neither leg"));
    }

    // (2)
    let mut surjectivity = Verdict::new();
    for (leg, name) in [(&lf, "f"), (&li, "iota_F")] {
        for (label, target, source) in generator_pairs(leg.hom(), field)? {
            let ok = match &target {
                Some(t) => leg.pullback(t)? == source,
                None => false,
            };
            surjectivity.record(ok, || format!("{name}*: generator {label} has no singleton preimage"));
        }
    }

    // (3)
    let mut kernel_correspondence = Verdict::new();
    let ker_f = ker_generators(&lf)?;
    let ker_i = ker_generators(&li)?;
    let e = f.codomain().clone();
    for v in &ker_f.vertex_gens {
        let pv = push.iota_e().map_vertex(v.as_str());
        let in_ker = ker_i.vertex_gens.contains(pv);
        let image = le.pullback(&LElement::vertex(p.clone(), field, pv.as_str())?)?;
        let expected = LElement::vertex(e.clone(), field, v.as_str())?;
        kernel_correspondence.record(in_ker && image == expected, || {
            format!("vertex generator {v}: claimed preimage {pv} maps to {image}")
        });
    }
    for b in &ker_f.breaking_gens {
        let pv = push.iota_e().map_vertex(b.vertex.as_str()).clone();
        let claimed = ker_i.breaking_gens.iter().find(|c| c.vertex == pv);
        let ok = match claimed {
            Some(c) => {
                let image = le.pullback(&breaking_element(&p, field, c)?)?;
                image == breaking_element(&e, field, b)?
            }
            None => false,
        };
        kernel_correspondence.record(ok, || format!("breaking generator at {}", b.vertex));
    }

    let breakarrow = breakarrow_checks(f, &push);
    for c in &breakarrow {
        kernel_correspondence.record(c.holds, || format!("edge identity fails at ({}, {})", c.w, c.p));
    }

    let truncated = truncated_check(&lf, &lg, &le, &li, max_degree, field)?;
    let passed = kernel_intersection.passed
        && surjectivity.passed
        && kernel_correspondence.passed
        && truncated.consistent;
    Ok(LeavittPullbackReport {
        field: field.to_string(),
        max_degree,
        preconditions: flags,
        kernel_intersection,
        surjectivity,
        kernel_correspondence,
        breakarrow,
        truncated,
        passed,
    })
}

/// For each generator `x` of `L(domain)`: `(label, [χ_{h(x)}] if h is injective there, [χ_x])`.
fn generator_pairs(h: &GraphHom, field: Field) -> Result<Vec<(String, Option<LElement>, LElement)>> {
    let (dom, cod) = (h.domain(), h.codomain());
    let mut out = Vec::new();
    for v in dom.vertices() {
        let w = h.map_vertex(v.as_str());
        let single = h.vertex_preimage(w.as_str()).len() == 1;
        out.push((
            v.to_string(),
            single.then(|| LElement::vertex(cod.clone(), field, w.as_str())).transpose()?,
            LElement::vertex(dom.clone(), field, v.as_str())?,
        ));
    }
    for x in dom.edge_ids() {
        let y = h.map_edge(x.as_str());
        let single = h.edge_preimage(y.as_str()).len() == 1;
        out.push((
            x.to_string(),
            single.then(|| LElement::edge(cod.clone(), field, y.as_str())).transpose()?,
            LElement::edge(dom.clone(), field, x.as_str())?,
        ));
        out.push((
            format!("{x}*"),
            single.then(|| LElement::ghost(cod.clone(), field, y.as_str())).transpose()?,
            LElement::ghost(dom.clone(), field, x.as_str())?,
        ));
    }
    Ok(out)
}

struct Window {
    basis: Vec<LMonomial>,
    index: BTreeMap<LMonomial, usize>,
}

impl Window {
    fn new(g: &Graph, n: usize, degree: i64) -> Self {
        let basis: Vec<LMonomial> = window_basis(g, n).into_iter().filter(|m| m.degree() == degree).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { basis, index }
    }

    /// Writes coordinates of `x` at `offset`; returns the number of terms outside the window.
    fn coordinates(&self, x: &LElement, offset: usize, row: &mut BTreeMap<usize, Scalar>) -> usize {
        let mut outside = 0;
        for (m, c) in x.terms() {
            match self.index.get(m) {
                Some(i) => {
                    row.insert(offset + i, c.clone());
                }
                None => outside += 1,
            }
        }
        outside
    }
}

fn truncated_check(
    lf: &LeavittHom,
    lg: &LeavittHom,
    le: &LeavittHom,
    li: &LeavittHom,
    n: usize,
    field: Field,
) -> Result<TruncatedCheck> {
    let p = le.codomain().clone();
    let e = lf.codomain().clone();
    let fg = lg.codomain().clone();
    let gg = lf.domain().clone();
    let mut windows = Vec::new();
    let mut excluded = 0;
    let n_i = n as i64;
    for degree in -n_i..=n_i {
        let wp = Window::new(&p, n, degree);
        let we = Window::new(&e, n, degree);
        let wf = Window::new(&fg, n, degree);
        let wg = Window::new(&gg, n, degree);

        let mut commutes = true;
        let mut image = SparseMatrix::new(we.basis.len() + wf.basis.len());
        for m in &wp.basis {
            let x = mono(&p, field, m)?;
            let a = le.pullback(&x)?;
            let b = li.pullback(&x)?;
            commutes &= lf.pullback(&a)? == lg.pullback(&b)?;
            let mut row = BTreeMap::new();
            excluded += we.coordinates(&a, 0, &mut row);
            excluded += wf.coordinates(&b, we.basis.len(), &mut row);
            image.push_row(row);
        }
        let image_rank = image.rank(field);

        let mut columns = Vec::with_capacity(we.basis.len() + wf.basis.len());
        for m in &we.basis {
            let mut col = BTreeMap::new();
            excluded += wg.coordinates(&lf.pullback(&mono(&e, field, m)?)?, 0, &mut col);
            columns.push(col);
        }
        let minus = field.from_int(-1);
        for m in &wf.basis {
            let mut col = BTreeMap::new();
            let y = lg.pullback(&mono(&fg, field, m)?)?.scale(&minus);
            excluded += wg.coordinates(&y, 0, &mut col);
            columns.push(col);
        }
        let constraint = SparseMatrix::from_columns(wg.basis.len(), columns);
        let fiber_dim = we.basis.len() + wf.basis.len() - constraint.rank(field);
        windows.push(WindowCheck {
            degree,
            dim_p: wp.basis.len(),
            dim_e: we.basis.len(),
            dim_f: wf.basis.len(),
            dim_g: wg.basis.len(),
            commutes,
            image_rank,
            fiber_dim,
        });
    }
    let consistent = excluded == 0 && windows.iter().all(WindowCheck::consistent);
    Ok(TruncatedCheck {
        max_len: n,
        windows,
        excluded_monomials: excluded,
        consistent,
    })
}

fn mono(g: &Arc<Graph>, field: Field, m: &LMonomial) -> Result<LElement> {
    LElement::monomial(g.clone(), field, m.clone(), &field.one())
}
