//! Seeded randomized property suites with greedy counterexample minimization.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{Graph, Path};
use crate::io::{graph_to_value, hom_to_value};
use crate::leavitt::{window_basis, LElement, LMonomial, LeavittHom, ker_generators};
use crate::morphism::{admissible_equiv_crtbpog, is_admissible, is_hereditary, Category, GraphHom, VertexSet};
use crate::path_algebra::{pa_mul, pa_pullback, pa_unit, PAElement};
use crate::pushout::{breakarrow_checks, check_theorem_preconditions, graph_pushout, path_pushout_compare, union_pushout};
use crate::random::{self, Rng8, SeedableRng};

pub const SUITES: [&str; 9] = [
    "composition",
    "admissible-equiv",
    "captocup",
    "admpush",
    "h-bijective",
    "pa-hom",
    "lk-hom",
    "kerver",
    "breakarrow",
];

const MAX_V: usize = 6;
const MAX_E: usize = 8;
const ATTEMPTS: usize = 200;

/// A generated test instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Hom(GraphHom),
    /// `f: A -> B` followed by `g: B -> C`.
    Chain(GraphHom, GraphHom),
    /// Two legs out of a common domain.
    Span(GraphHom, GraphHom),
    Graphs(Graph, Graph),
    /// A chain with pairs of basis elements `(α₁, β₁, α₂, β₂)` of the last codomain.
    Probed(GraphHom, GraphHom, Vec<[Path; 4]>),
}

impl Instance {
    fn to_value(&self) -> Value {
        let probes = |ps: &[[Path; 4]]| -> Value {
            ps.iter().map(|p| p.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect()
        };
        match self {
            Instance::Hom(h) => serde_json::json!({ "hom": hom_to_value(h) }),
            Instance::Chain(f, g) => serde_json::json!({ "f": hom_to_value(f), "g": hom_to_value(g) }),
            Instance::Span(f, g) => serde_json::json!({ "f": hom_to_value(f), "g": hom_to_value(g) }),
            Instance::Graphs(a, b) => serde_json::json!({ "F": graph_to_value(a), "G": graph_to_value(b) }),
            Instance::Probed(f, g, ps) => serde_json::json!({
                "f": hom_to_value(f),
                "g": hom_to_value(g),
                "probes": probes(ps),
            }),
        }
    }

    /// Total number of vertices, edges and tails over all graphs involved.
    pub fn size(&self) -> usize {
        let gs = |g: &Graph| g.vertex_count() + g.edge_count() + g.omega_tails().len();
        let hs = |h: &GraphHom| gs(h.domain()) + gs(h.codomain());
        match self {
            Instance::Hom(h) => hs(h),
            Instance::Chain(f, g) | Instance::Span(f, g) | Instance::Probed(f, g, _) => hs(f) + gs(g.codomain()),
            Instance::Graphs(a, b) => gs(a) + gs(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The instance does not satisfy the suite's hypotheses.
    Discard,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: usize,
    pub witness: String,
    pub original_size: usize,
    pub minimized_size: usize,
    pub counterexample: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub discarded: usize,
    pub failures: Vec<Failure>,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} seed {}: {} cases, {} passed, {} failed, {} discarded",
            self.suite, self.seed, self.cases, self.passed, self.failed, self.discarded
        )?;
        for fail in &self.failures {
            writeln!(
                f,
                "  case {}: {} (minimized from size {} to {})",
                fail.case, fail.witness, fail.original_size, fail.minimized_size
            )?;
            writeln!(f, "  counterexample: {}", fail.counterexample)?;
        }
        Ok(())
    }
}

/// The RNG for one case; cases are independent of each other and of the case count.
pub fn case_rng(seed: u64, case: usize) -> Rng8 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(case as u64);
    r
}

type Generator = fn(&mut Rng8) -> Instance;
type Checker = fn(&Instance) -> Outcome;

fn suite_fns(name: &str) -> Result<(Generator, Checker)> {
    Ok(match name {
        "composition" => (gen_composition, check_composition),
        "admissible-equiv" => (gen_admissible_equiv, check_admissible_equiv),
        "captocup" => (gen_captocup, check_captocup),
        "admpush" => (gen_admpush, check_admpush),
        "h-bijective" => (gen_h_bijective, check_h_bijective),
        "pa-hom" => (gen_pa_hom, check_pa_hom),
        "lk-hom" => (gen_lk_hom, check_lk_hom),
        "kerver" => (gen_kerver, check_kerver),
        "breakarrow" => (gen_breakarrow, check_breakarrow),
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

/// Runs one case: rejection-samples an instance, checks it, and minimizes a failure.
pub fn run_case(suite: &str, seed: u64, case: usize) -> Result<(Outcome, Option<Failure>)> {
    let (generate, check) = suite_fns(suite)?;
    let mut rng = case_rng(seed, case);
    for _ in 0..ATTEMPTS {
        let inst = generate(&mut rng);
        match check(&inst) {
            Outcome::Discard => continue,
            Outcome::Pass => return Ok((Outcome::Pass, None)),
            Outcome::Fail(_) => {
                let original_size = inst.size();
                let small = minimize(inst, check);
                let witness = match check(&small) {
                    Outcome::Fail(w) => w,
                    _ => unreachable!("minimization preserves failure"),
                };
                let failure = Failure {
                    case,
                    witness: witness.clone(),
                    original_size,
                    minimized_size: small.size(),
                    counterexample: small.to_value(),
                };
                return Ok((Outcome::Fail(witness), Some(failure)));
            }
        }
    }
    Ok((Outcome::Discard, None))
}

pub fn run_suite(suite: &str, seed: u64, cases: usize) -> Result<SuiteSummary> {
    suite_fns(suite)?;
    let mut summary = SuiteSummary {
        suite: suite.to_string(),
        seed,
        cases,
        passed: 0,
        failed: 0,
        discarded: 0,
        failures: Vec::new(),
    };
    for case in 0..cases {
        match run_case(suite, seed, case)? {
            (Outcome::Pass, _) => summary.passed += 1,
            (Outcome::Discard, _) => summary.discarded += 1,
            (Outcome::Fail(_), failure) => {
                summary.failed += 1;
                summary.failures.extend(failure);
            }
        }
    }
    Ok(summary)
}

// ---------------------------------------------------------------------------------------------
// shrinking

fn graph_deletions(g: &Graph) -> Vec<Graph> {
    let mut out: Vec<Graph> = g.vertices().map(|v| g.without_vertex(v.as_str())).collect();
    out.extend(g.edge_ids().map(|e| g.without_edge(e.as_str())));
    out.extend(g.omega_tails().iter().map(|t| g.without_tail(t)));
    out
}

fn restrict_domain(h: &GraphHom, dom: Graph) -> GraphHom {
    let f0 = h.vertex_map().iter().filter(|(v, _)| dom.has_vertex(v.as_str())).map(|(a, b)| (a.clone(), b.clone())).collect();
    let f1 = h.edge_map().iter().filter(|(e, _)| dom.has_edge(e.as_str())).map(|(a, b)| (a.clone(), b.clone())).collect();
    GraphHom::new(Arc::new(dom), h.codomain().clone(), f0, f1)
}

fn shrink_codomain(h: &GraphHom, cod: &Arc<Graph>) -> Option<GraphHom> {
    let fits = h.vertex_map().values().all(|w| cod.has_vertex(w.as_str()))
        && h.edge_map().values().all(|x| cod.has_edge(x.as_str()));
    fits.then(|| GraphHom::new(h.domain().clone(), cod.clone(), h.vertex_map().clone(), h.edge_map().clone()))
}

fn hom_candidates(h: &GraphHom) -> Vec<GraphHom> {
    let mut out: Vec<GraphHom> = graph_deletions(h.domain()).into_iter().map(|d| restrict_domain(h, d)).collect();
    for c in graph_deletions(h.codomain()) {
        out.extend(shrink_codomain(h, &Arc::new(c)));
    }
    out
}

fn with_domain(h: &GraphHom, dom: &Arc<Graph>) -> GraphHom {
    let r = restrict_domain(h, (**dom).clone());
    GraphHom::new(dom.clone(), r.codomain().clone(), r.vertex_map().clone(), r.edge_map().clone())
}

fn candidates(inst: &Instance) -> Vec<Instance> {
    match inst {
        Instance::Hom(h) => hom_candidates(h).into_iter().map(Instance::Hom).collect(),
        Instance::Chain(f, g) | Instance::Probed(f, g, _) => {
            let mut out = Vec::new();
            for d in graph_deletions(f.domain()) {
                out.push((restrict_domain(f, d), g.clone()));
            }
            for c in graph_deletions(g.codomain()) {
                if let Some(g2) = shrink_codomain(g, &Arc::new(c)) {
                    out.push((f.clone(), g2));
                }
            }
            for m in graph_deletions(g.domain()) {
                let m = Arc::new(m);
                if let Some(f2) = shrink_codomain(f, &m) {
                    out.push((f2, with_domain(g, &m)));
                }
            }
            out.into_iter()
                .map(|(f, g)| match inst {
                    Instance::Probed(_, _, ps) => Instance::Probed(f, g, ps.clone()),
                    _ => Instance::Chain(f, g),
                })
                .collect()
        }
        Instance::Span(f, g) => {
            let mut out = Vec::new();
            for d in graph_deletions(f.domain()) {
                let d = Arc::new(d);
                out.push(Instance::Span(with_domain(f, &d), with_domain(g, &d)));
            }
            for c in graph_deletions(f.codomain()) {
                out.extend(shrink_codomain(f, &Arc::new(c)).map(|f2| Instance::Span(f2, g.clone())));
            }
            for c in graph_deletions(g.codomain()) {
                out.extend(shrink_codomain(g, &Arc::new(c)).map(|g2| Instance::Span(f.clone(), g2)));
            }
            out
        }
        Instance::Graphs(a, b) => {
            let mut out: Vec<Instance> =
                graph_deletions(a).into_iter().map(|a2| Instance::Graphs(a2, b.clone())).collect();
            out.extend(graph_deletions(b).into_iter().map(|b2| Instance::Graphs(a.clone(), b2)));
            out
        }
    }
}

/// Greedily applies single deletions while the instance still fails.
pub fn minimize(mut inst: Instance, check: fn(&Instance) -> Outcome) -> Instance {
    'outer: loop {
        for c in candidates(&inst) {
            if matches!(check(&c), Outcome::Fail(_)) {
                inst = c;
                continue 'outer;
            }
        }
        return inst;
    }
}

// ---------------------------------------------------------------------------------------------
// suites

fn small(g: &Graph) -> bool {
    g.vertex_count() <= MAX_V && g.edge_count() <= MAX_E
}

fn all_small(hs: &[&GraphHom]) -> bool {
    hs.iter().all(|h| small(h.domain()) && small(h.codomain()))
}

fn valid(hs: &[&GraphHom]) -> bool {
    hs.iter().all(|h| h.validate().is_ok())
}

fn fail_on<T>(r: Result<T>) -> std::result::Result<T, Outcome> {
    r.map_err(|e| Outcome::Fail(format!("unexpected error: {e}")))
}

macro_rules! tri {
    ($e:expr) => {
        match fail_on($e) {
            Ok(v) => v,
            Err(o) => return o,
        }
    };
}

fn gen_composition(rng: &mut Rng8) -> Instance {
    let (f, g) = random::random_tb_pair(rng, MAX_V, MAX_E);
    Instance::Chain(f, g)
}

fn check_composition(inst: &Instance) -> Outcome {
    let Instance::Chain(f, g) = inst else { return Outcome::Discard };
    if !valid(&[f, g]) || !all_small(&[f, g]) {
        return Outcome::Discard;
    }
    let (cf, cg) = (f.classify(), g.classify());
    if !(cf.target_bijective && cf.proper && cg.target_bijective && cg.proper) {
        return Outcome::Discard;
    }
    let c = tri!(g.compose(f)).classify();
    if c.target_bijective && c.proper {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("composite leaves TBPOG: {}", c.witnesses.join("; ")))
    }
}

fn gen_admissible_equiv(rng: &mut Rng8) -> Instance {
    let tails = rng.gen_range(0..=2);
    let e = Arc::new(random::random_tailed_graph(rng, MAX_V, MAX_E, tails));
    Instance::Hom(random::random_injective_hom(rng, &e))
}

fn check_admissible_equiv(inst: &Instance) -> Outcome {
    let Instance::Hom(h) = inst else { return Outcome::Discard };
    if !valid(&[h]) || !h.is_injective() || !all_small(&[h]) {
        return Outcome::Discard;
    }
    let adm = tri!(is_admissible(h));
    if tri!(admissible_equiv_crtbpog(h)) {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "admissible = {} but category = {}",
            adm.admissible,
            h.classify().category
        ))
    }
}

/// Hypotheses and conclusion of the A2 hereditarity property, used by the acceptance suite.
pub fn a2_complement_hereditary(h: &GraphHom) -> Result<Option<bool>> {
    let adm = is_admissible(h)?;
    if !adm.a2 {
        return Ok(None);
    }
    let image = h.vertex_image();
    let complement: VertexSet = h.codomain().vertices().filter(|v| !image.contains(*v)).cloned().collect();
    Ok(Some(is_hereditary(h.codomain(), &complement)?.hereditary))
}

fn gen_captocup(rng: &mut Rng8) -> Instance {
    let (a, b) = random::random_overlapping_pair(rng);
    Instance::Graphs(a, b)
}

fn check_captocup(inst: &Instance) -> Outcome {
    let Instance::Graphs(a, b) = inst else { return Outcome::Discard };
    if !(a.validate().is_ok() && b.validate().is_ok()) {
        return Outcome::Discard;
    }
    let Ok(u) = union_pushout(&Arc::new(a.clone()), &Arc::new(b.clone())) else {
        return Outcome::Discard;
    };
    let strongly = |h: &GraphHom| is_admissible(h).map(|a| a.strongly);
    if !(tri!(strongly(&u.cap_to_left)) && tri!(strongly(&u.cap_to_right))) {
        return Outcome::Discard;
    }
    for (name, h) in [("F", &u.left_to_cup), ("G", &u.right_to_cup)] {
        let adm = tri!(is_admissible(h));
        if !adm.strongly {
            return Outcome::Fail(format!("{name} -> F ∪ G is not strongly admissible: {}", adm.witnesses.join("; ")));
        }
    }
    Outcome::Pass
}

fn gen_admpush(rng: &mut Rng8) -> Instance {
    let (f, g) = random::random_admissible_span(rng, MAX_V, MAX_E);
    if rng.gen_bool(0.5) {
        Instance::Span(g, f)
    } else {
        Instance::Span(f, g)
    }
}

/// Both legs regular and target-bijective, at least one injective.
fn admpush_hypotheses(f: &GraphHom, g: &GraphHom) -> bool {
    if !valid(&[f, g]) || f.domain() != g.domain() || !(f.is_injective() || g.is_injective()) {
        return false;
    }
    if f.domain().has_tails() || f.codomain().has_tails() || g.codomain().has_tails() {
        return false;
    }
    [f, g].iter().all(|h| {
        let c = h.classify();
        c.regular && c.target_bijective && c.proper
    })
}

fn check_admpush(inst: &Instance) -> Outcome {
    let Instance::Span(f, g) = inst else { return Outcome::Discard };
    if !admpush_hypotheses(f, g) {
        return Outcome::Discard;
    }
    let push = tri!(graph_pushout(f, g));
    for (name, iota) in [("iota_E", push.iota_e()), ("iota_F", push.iota_f())] {
        let c = iota.classify();
        if !(c.regular && c.target_bijective) {
            return Outcome::Fail(format!("{name} is {}: {}", c.category, c.witnesses.join("; ")));
        }
    }
    Outcome::Pass
}

fn gen_h_bijective(rng: &mut Rng8) -> Instance {
    let acyclic = rng.gen_bool(0.5);
    let (f, g) = random::random_vertex_injective_span(rng, MAX_V, MAX_E, acyclic);
    Instance::Span(f, g)
}

fn check_h_bijective(inst: &Instance) -> Outcome {
    let Instance::Span(f, g) = inst else { return Outcome::Discard };
    if !valid(&[f, g]) || f.domain() != g.domain() || f.domain().has_tails() {
        return Outcome::Discard;
    }
    if f.codomain().has_tails() || g.codomain().has_tails() {
        return Outcome::Discard;
    }
    let flags = tri!(check_theorem_preconditions(f, g));
    if !(flags.vertex_injectivity && flags.one_color) {
        return Outcome::Discard;
    }
    let cmp = tri!(path_pushout_compare(f, g, 4));
    if cmp.bijective {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("h is not bijective up to length 4: {}", cmp.witnesses.join("; ")))
    }
}

fn chain_probes(rng: &mut Rng8, basis: &[(Path, Path)], n: usize) -> Vec<[Path; 4]> {
    (0..n)
        .filter_map(|_| {
            let x = basis.choose(rng)?;
            let y = basis.choose(rng)?;
            Some([x.0.clone(), x.1.clone(), y.0.clone(), y.1.clone()])
        })
        .collect()
}

fn gen_pa_hom(rng: &mut Rng8) -> Instance {
    let c = Arc::new(random::random_graph(rng, MAX_V, MAX_E));
    let g = random::random_hom_into(rng, &c, MAX_V, MAX_E);
    let f = random::random_hom_into(rng, g.domain(), MAX_V, MAX_E);
    let basis: Vec<(Path, Path)> = c
        .paths_up_to(2)
        .into_iter()
        .map(|p| {
            let t = Path::Vertex(c.path_target(&p));
            (p, t)
        })
        .collect();
    let probes = chain_probes(rng, &basis, 8);
    Instance::Probed(f, g, probes)
}

fn check_pa_hom(inst: &Instance) -> Outcome {
    let Instance::Probed(f, g, probes) = inst else { return Outcome::Discard };
    if !valid(&[f, g]) || !all_small(&[f, g]) || f.codomain() != g.domain() {
        return Outcome::Discard;
    }
    if f.domain().has_tails() || g.domain().has_tails() || g.codomain().has_tails() {
        return Outcome::Discard;
    }
    let k = Field::Rational;
    let c = g.codomain().clone();
    let gf = tri!(g.compose(f));
    for h in [f, g, &gf] {
        let unit = tri!(pa_unit(h.codomain().clone(), k));
        let pulled = tri!(pa_pullback(h, &unit));
        if pulled != tri!(pa_unit(h.domain().clone(), k)) {
            return Outcome::Fail(format!("pullback is not unital: 1 goes to {pulled}"));
        }
    }
    for [p, _, q, _] in probes {
        if c.check_path(p).is_err() || c.check_path(q).is_err() {
            continue;
        }
        let x = tri!(PAElement::basis(c.clone(), k, p.clone()));
        let y = tri!(PAElement::basis(c.clone(), k, q.clone()));
        let lhs = tri!(pa_pullback(g, &tri!(pa_mul(&x, &y))));
        let rhs = tri!(pa_mul(&tri!(pa_pullback(g, &x)), &tri!(pa_pullback(g, &y))));
        if lhs != rhs {
            return Outcome::Fail(format!("g*({p} {q}) = {lhs} but g*({p}) g*({q}) = {rhs}"));
        }
        let direct = tri!(pa_pullback(&gf, &x));
        let stepwise = tri!(pa_pullback(f, &tri!(pa_pullback(g, &x))));
        if direct != stepwise {
            return Outcome::Fail(format!("(g f)*({p}) = {direct} but f*(g*({p})) = {stepwise}"));
        }
    }
    Outcome::Pass
}

fn gen_lk_hom(rng: &mut Rng8) -> Instance {
    let c = Arc::new(random::random_graph(rng, MAX_V, MAX_E));
    let fiber = rng.gen_range(1..=2);
    let g = random::random_crtbpog_hom(rng, &c, fiber);
    let f = random::random_crtbpog_hom(rng, g.domain(), 1);
    let basis: Vec<(Path, Path)> =
        window_basis(&c, 2).into_iter().map(|m| (m.alpha().clone(), m.beta().clone())).collect();
    let probes = chain_probes(rng, &basis, 8);
    Instance::Probed(f, g, probes)
}

fn leavitt_probe(g: &Arc<Graph>, alpha: &Path, beta: &Path) -> Option<LElement> {
    let m = LMonomial::new(g, alpha.clone(), beta.clone()).ok()?;
    LElement::monomial(g.clone(), Field::Rational, m, &Field::Rational.one()).ok()
}

fn check_lk_hom(inst: &Instance) -> Outcome {
    let Instance::Probed(f, g, probes) = inst else { return Outcome::Discard };
    if !valid(&[f, g]) || !all_small(&[f, g]) || f.codomain() != g.domain() {
        return Outcome::Discard;
    }
    if [f, g].iter().any(|h| h.domain().has_tails() || h.codomain().has_tails()) {
        return Outcome::Discard;
    }
    if [f, g].iter().any(|h| h.classify().category != Category::Crtbpog) {
        return Outcome::Discard;
    }
    let lf = tri!(LeavittHom::new(f.clone()));
    let lg = tri!(LeavittHom::new(g.clone()));
    let lgf = tri!(LeavittHom::new(tri!(g.compose(f))));
    let k = Field::Rational;
    let c = g.codomain().clone();
    for h in [&lf, &lg, &lgf] {
        let pulled = tri!(h.pullback(&tri!(LElement::one(h.codomain().clone(), k))));
        if pulled != tri!(LElement::one(h.domain().clone(), k)) {
            return Outcome::Fail(format!("pullback is not unital: 1 goes to {pulled}"));
        }
    }
    for [a1, b1, a2, b2] in probes {
        let (Some(x), Some(y)) = (leavitt_probe(&c, a1, b1), leavitt_probe(&c, a2, b2)) else {
            continue;
        };
        let lhs = tri!(lg.pullback(&tri!(crate::leavitt::l_mul(&x, &y))));
        let rhs = tri!(crate::leavitt::l_mul(&tri!(lg.pullback(&x)), &tri!(lg.pullback(&y))));
        if lhs != rhs {
            return Outcome::Fail(format!("g*(x y) = {lhs} but g*(x) g*(y) = {rhs} for x = {x}, y = {y}"));
        }
        let direct = tri!(lgf.pullback(&x));
        let stepwise = tri!(lf.pullback(&tri!(lg.pullback(&x))));
        if direct != stepwise {
            return Outcome::Fail(format!("(g f)*({x}) = {direct} but f*(g*({x})) = {stepwise}"));
        }
    }
    Outcome::Pass
}

fn gen_kerver(rng: &mut Rng8) -> Instance {
    let c = Arc::new(random::random_graph(rng, MAX_V, MAX_E));
    let fiber = rng.gen_range(0..=2);
    let h = if fiber == 0 {
        // injective morphisms leave room for a nonempty kernel
        random::random_admissible_extension(rng, &c, "x")
    } else {
        random::random_crtbpog_hom(rng, &c, fiber)
    };
    Instance::Hom(h)
}

fn check_kerver(inst: &Instance) -> Outcome {
    let Instance::Hom(h) = inst else { return Outcome::Discard };
    if !valid(&[h]) || !all_small(&[h]) || h.domain().has_tails() || h.codomain().has_tails() {
        return Outcome::Discard;
    }
    if h.classify().category != Category::Crtbpog {
        return Outcome::Discard;
    }
    let lh = tri!(LeavittHom::new(h.clone()));
    let pres = tri!(ker_generators(&lh));
    let image = h.vertex_image();
    for v in h.codomain().vertices() {
        let x = tri!(LElement::vertex(h.codomain().clone(), Field::Rational, v.as_str()));
        let killed = tri!(lh.pullback(&x)).is_zero();
        if killed == image.contains(v) {
            return Outcome::Fail(format!("vertex {v}: pullback vanishes = {killed}"));
        }
    }
    if !pres.breaking_gens.is_empty() {
        return Outcome::Fail("breaking generators on a finite graph".into());
    }
    Outcome::Pass
}

fn gen_breakarrow(rng: &mut Rng8) -> Instance {
    let (f, g) = random::random_admissible_span(rng, MAX_V, MAX_E);
    Instance::Span(f, g)
}

fn check_breakarrow(inst: &Instance) -> Outcome {
    let Instance::Span(f, g) = inst else { return Outcome::Discard };
    if !admpush_hypotheses(f, g) || !f.is_injective() {
        return Outcome::Discard;
    }
    let push = tri!(graph_pushout(f, g));
    for c in breakarrow_checks(f, &push) {
        if !c.holds {
            return Outcome::Fail(format!("breakarrow identity fails for w = {}, p = {}", c.w, c.p));
        }
    }
    Outcome::Pass
}
