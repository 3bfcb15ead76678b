use std::sync::Arc;

use proptest::prelude::*;

use qp_core::field::Field;
use qp_core::graph::{EdgeId, Graph, VertexId};
use qp_core::io;
use qp_core::leavitt::{l_mul, l_pullback, window_basis, LElement};
use qp_core::morphism::GraphHom;
use qp_core::path_algebra::{pa_mul, pa_pullback, pa_unit, PAElement};
use qp_core::pushout::graph_pushout;
use qp_core::random;
use qp_core::suites;

const Q: Field = Field::Rational;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=6)))
        .prop_map(|(n, es)| {
            let vs = (0..n).map(|i| VertexId::new(format!("v{i}")));
            let edges = es
                .into_iter()
                .enumerate()
                .map(|(i, (s, t))| (EdgeId::new(format!("e{i}")), VertexId::new(format!("v{s}")), VertexId::new(format!("v{t}"))));
            Graph::new(vs, edges, [])
        })
}

type Coeffs = Vec<(usize, i64)>;

fn coeffs() -> impl Strategy<Value = Coeffs> {
    prop::collection::vec((0usize..64, -3i64..=3), 0..=3)
}

fn pa(g: &Arc<Graph>, cs: &Coeffs) -> PAElement {
    let basis = g.paths_up_to(2);
    let terms = cs.iter().map(|(i, c)| (basis[i % basis.len()].clone(), Q.from_int(*c)));
    PAElement::from_terms(g.clone(), Q, terms).unwrap()
}

fn lk(g: &Arc<Graph>, cs: &Coeffs) -> LElement {
    let basis = window_basis(g, 2);
    let mut x = LElement::zero(g.clone(), Q).unwrap();
    for (i, c) in cs {
        let m = basis[i % basis.len()].clone();
        x = x.add(&LElement::monomial(g.clone(), Q, m, &Q.from_int(*c)).unwrap()).unwrap();
    }
    x
}

fn chain(seed: u64) -> (GraphHom, GraphHom) {
    let mut rng = random::rng(seed);
    let c = Arc::new(random::random_graph(&mut rng, 4, 5));
    let g = random::random_hom_into(&mut rng, &c, 4, 5);
    let f = random::random_hom_into(&mut rng, g.domain(), 4, 5);
    (f, g)
}

fn crtbpog_chain(seed: u64) -> (GraphHom, GraphHom) {
    let mut rng = random::rng(seed);
    let c = Arc::new(random::random_graph(&mut rng, 3, 4));
    let g = random::random_crtbpog_hom(&mut rng, &c, 2);
    let f = random::random_crtbpog_hom(&mut rng, g.domain(), 1);
    (f, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_algebra_is_associative_and_unital(g in graph(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let g = Arc::new(g);
        let (x, y, z) = (pa(&g, &a), pa(&g, &b), pa(&g, &c));
        let left = pa_mul(&pa_mul(&x, &y).unwrap(), &z).unwrap();
        let right = pa_mul(&x, &pa_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = pa_unit(g.clone(), Q).unwrap();
        prop_assert_eq!(pa_mul(&one, &x).unwrap(), x.clone());
        prop_assert_eq!(pa_mul(&x, &one).unwrap(), x);
    }

    #[test]
    fn path_products_add_lengths(g in graph(), i in 0usize..64, j in 0usize..64) {
        let g = Arc::new(g);
        let basis = g.paths_up_to(2);
        let (p, q) = (&basis[i % basis.len()], &basis[j % basis.len()]);
        let x = PAElement::basis(g.clone(), Q, p.clone()).unwrap();
        let y = PAElement::basis(g.clone(), Q, q.clone()).unwrap();
        let xy = pa_mul(&x, &y).unwrap();
        prop_assert_eq!(xy.homogeneous_part(p.len() + q.len()), xy.clone());
        prop_assert_eq!(xy.is_zero(), g.concat(p, q).is_none());
    }

    #[test]
    fn leavitt_products_are_associative_and_normal(g in graph(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let g = Arc::new(g);
        let (x, y, z) = (lk(&g, &a), lk(&g, &b), lk(&g, &c));
        let left = l_mul(&l_mul(&x, &y).unwrap(), &z).unwrap();
        let right = l_mul(&x, &l_mul(&y, &z).unwrap()).unwrap();
        prop_assert!(left.all_normal());
        prop_assert_eq!(left, right);
        let one = LElement::one(g.clone(), Q).unwrap();
        prop_assert_eq!(l_mul(&one, &x).unwrap(), x.clone());
        prop_assert_eq!(l_mul(&x, &one).unwrap(), x);
    }

    #[test]
    fn leavitt_degrees_add(g in graph(), i in 0usize..64, j in 0usize..64) {
        let g = Arc::new(g);
        let basis = window_basis(&g, 2);
        let (m, n) = (&basis[i % basis.len()], &basis[j % basis.len()]);
        let x = LElement::monomial(g.clone(), Q, m.clone(), &Q.one()).unwrap();
        let y = LElement::monomial(g.clone(), Q, n.clone(), &Q.one()).unwrap();
        let xy = l_mul(&x, &y).unwrap();
        prop_assert!(xy.is_homogeneous());
        if !xy.is_zero() {
            prop_assert_eq!(xy.degrees(), vec![m.degree() + n.degree()]);
        }
    }

    #[test]
    fn ck_relations_hold_in_normal_form(g in graph()) {
        let g = Arc::new(g);
        for e in g.edge_ids() {
            for f in g.edge_ids() {
                let ef = l_mul(&LElement::ghost(g.clone(), Q, e.as_str()).unwrap(), &LElement::edge(g.clone(), Q, f.as_str()).unwrap()).unwrap();
                let expected = if e == f {
                    LElement::vertex(g.clone(), Q, g.tgt(e.as_str()).as_str()).unwrap()
                } else {
                    LElement::zero(g.clone(), Q).unwrap()
                };
                prop_assert_eq!(ef, expected);
            }
        }
        for v in g.regular_vertices() {
            let mut sum = LElement::zero(g.clone(), Q).unwrap();
            for e in g.out_edges(v.as_str()) {
                let ee = l_mul(&LElement::edge(g.clone(), Q, e.as_str()).unwrap(), &LElement::ghost(g.clone(), Q, e.as_str()).unwrap()).unwrap();
                sum = sum.add(&ee).unwrap();
            }
            prop_assert_eq!(sum, LElement::vertex(g.clone(), Q, v.as_str()).unwrap());
        }
    }

    #[test]
    fn path_pullback_is_a_contravariant_unital_homomorphism(seed in any::<u64>(), a in coeffs(), b in coeffs()) {
        let (f, g) = chain(seed);
        let c = g.codomain().clone();
        let (x, y) = (pa(&c, &a), pa(&c, &b));
        let gx = pa_pullback(&g, &x).unwrap();
        prop_assert_eq!(pa_pullback(&g, &pa_mul(&x, &y).unwrap()).unwrap(), pa_mul(&gx, &pa_pullback(&g, &y).unwrap()).unwrap());
        prop_assert_eq!(pa_pullback(&g, &pa_unit(c.clone(), Q).unwrap()).unwrap(), pa_unit(g.domain().clone(), Q).unwrap());
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(pa_pullback(&gf, &x).unwrap(), pa_pullback(&f, &gx).unwrap());
    }

    #[test]
    fn leavitt_pullback_is_contravariant(seed in any::<u64>(), a in coeffs(), b in coeffs()) {
        let (f, g) = crtbpog_chain(seed);
        let c = g.codomain().clone();
        let (x, y) = (lk(&c, &a), lk(&c, &b));
        let gx = l_pullback(&g, &x).unwrap();
        prop_assert_eq!(l_pullback(&g, &l_mul(&x, &y).unwrap()).unwrap(), l_mul(&gx, &l_pullback(&g, &y).unwrap()).unwrap());
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(l_pullback(&gf, &x).unwrap(), l_pullback(&f, &gx).unwrap());
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let d = Arc::new(random::random_graph(&mut rng, 4, 5));
        let h = random::random_hom_into(&mut rng, &d, 4, 5);
        let g = random::random_hom_into(&mut rng, h.domain(), 4, 5);
        let f = random::random_hom_into(&mut rng, g.domain(), 4, 5);
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(GraphHom::identity(d.clone()).compose(&h).unwrap(), h.clone());
    }

    #[test]
    fn pushout_square_commutes(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let (f, g) = random::random_vertex_injective_span(&mut rng, 5, 6, false);
        let p = graph_pushout(&f, &g).unwrap();
        prop_assert_eq!(p.iota_e().compose(&f).unwrap(), p.iota_f().compose(&g).unwrap());
        prop_assert!(p.iota_e().validate().is_ok() && p.iota_f().validate().is_ok());
    }

    #[test]
    fn graph_json_round_trips(g in graph()) {
        let text = io::to_canonical_string(&io::graph_to_value(&g));
        let back = io::parse_graph(&text).unwrap();
        prop_assert_eq!(io::to_canonical_string(&io::graph_to_value(&back)), text);
        prop_assert_eq!(back, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn suite_runs_are_deterministic(seed in any::<u64>(), pick in 0usize..9) {
        let suite = suites::SUITES[pick % suites::SUITES.len()];
        let a = suites::run_suite(suite, seed, 3).unwrap();
        let b = suites::run_suite(suite, seed, 3).unwrap();
        prop_assert_eq!(a.to_string(), b.to_string());
    }
}
