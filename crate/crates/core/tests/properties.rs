use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::select;

use weil_core::cograph::{cotree_decompose, Graph};
use weil_core::genexpr::{decompose_traced, StepTag};
use weil_core::syntax::{format_morphism, parse_genexpr, parse_graph, parse_morphism, parse_object};
use weil_core::verify::{enumerate_hom, test_objects};
use weil_core::{decompose, Cotree, Morphism, Polynomial, Rig, VertexSet, WeilObject};

fn rig() -> impl Strategy<Value = Rig> {
    prop_oneof![Just(Rig::Bool2), Just(Rig::Nat)]
}

fn coeff(rig: Rig) -> BoxedStrategy<u64> {
    match rig {
        Rig::Bool2 => (0u64..=1).boxed(),
        Rig::Nat => (0u64..1000).boxed(),
    }
}

fn cotree() -> impl Strategy<Value = Cotree> {
    let leaf = prop_oneof![1 => Just(Cotree::K), 4 => Just(Cotree::W)];
    leaf.prop_recursive(4, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Cotree::union(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Cotree::join(a, b)),
        ]
    })
}

fn graph() -> impl Strategy<Value = Graph> {
    (0usize..8).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges)
        })
    })
}

/// A polynomial in the monomials of `a`.
fn polynomial(a: WeilObject, rig: Rig) -> impl Strategy<Value = Polynomial> {
    let n = a.n();
    let monos: Vec<VertexSet> = (1u64..1 << n).map(VertexSet).filter(|&u| a.is_monomial(u)).collect();
    let terms = if monos.is_empty() {
        Just(Vec::new()).boxed()
    } else {
        proptest::collection::vec((select(monos), coeff(rig)), 0..5).boxed()
    };
    (coeff(rig), terms).prop_map(move |(constant, terms)| {
        let mut p = Polynomial::from_terms(rig, terms);
        p.constant = constant;
        p
    })
}

/// All bool2 morphisms between objects with at most three generators.
fn hom_pool() -> &'static [Morphism] {
    static POOL: OnceLock<Vec<Morphism>> = OnceLock::new();
    POOL.get_or_init(|| {
        let objects = test_objects(3);
        let mut pool = Vec::new();
        for a in &objects {
            for b in &objects {
                pool.extend(enumerate_hom(a, b).expect("small hom set").morphisms);
            }
        }
        pool
    })
}

/// `sW → tW` where every term of an image passes through one hub generator.
fn spread_morphism() -> impl Strategy<Value = Morphism> {
    (rig(), 1usize..=3, 1usize..=5).prop_flat_map(|(rig, s, t)| {
        let image = (0..t, proptest::collection::vec((any::<u64>(), 1u64..=3), 0..4)).prop_map(move |(hub, terms)| {
            let terms = terms.into_iter().map(|(bits, c)| {
                let u = VertexSet((bits & ((1 << t) - 1)) | 1 << hub);
                (u, rig.from_integer(c))
            });
            Polynomial::from_terms(rig, terms)
        });
        proptest::collection::vec(image, s).prop_map(move |images| {
            Morphism::new(
                WeilObject::new(Cotree::n_w(s)),
                WeilObject::new(Cotree::n_w(t)),
                rig,
                images,
            )
            .expect("terms sharing a hub square to zero")
        })
    })
}

fn morphism() -> impl Strategy<Value = Morphism> {
    prop_oneof![select(hom_pool()), spread_morphism()]
}

/// Lexicographic size of a decomposition subproblem: excess circle
/// incidences at target generators, target edges, source generators.
fn measure(f: &Morphism) -> (usize, usize, usize) {
    let mut through = vec![0usize; f.target.n()];
    for c in f.circles() {
        c.support.iter().for_each(|z| through[z] += 1);
    }
    let excess = through.iter().map(|&m| m.saturating_sub(1)).sum();
    (excess, f.target.graph().edge_count(), f.source.n())
}

proptest! {
    #[test]
    fn rig_laws(r in rig(), (a, b, c) in rig().prop_flat_map(|r| (coeff(r), coeff(r), coeff(r)))) {
        // Bool2 values are valid nat values, so draw once and reinterpret.
        let (a, b, c) = if r == Rig::Bool2 { (a.min(1), b.min(1), c.min(1)) } else { (a, b, c) };
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, 0), a);
        prop_assert_eq!(r.mul(a, 1), a);
        prop_assert_eq!(r.mul(a, 0), 0);
    }

    #[test]
    fn polynomial_ring_laws(
        (a, r, p, q, s) in (cotree(), rig()).prop_flat_map(|(t, r)| {
            let a = WeilObject::new(t);
            (Just(a.clone()), Just(r), polynomial(a.clone(), r), polynomial(a.clone(), r), polynomial(a, r))
        })
    ) {
        prop_assert_eq!(a.mul(&p, &q), a.mul(&q, &p));
        prop_assert_eq!(a.mul(&a.mul(&p, &q), &s), a.mul(&p, &a.mul(&q, &s)));
        prop_assert_eq!(a.mul(&p, &q.add(&s)), a.mul(&p, &q).add(&a.mul(&p, &s)));
        prop_assert_eq!(a.mul(&p, &Polynomial::one(r)), p.clone());
        prop_assert!(a.mul(&p, &Polynomial::zero(r)).is_zero());
    }

    #[test]
    fn object_text_round_trips(t in cotree()) {
        let back = parse_object(&t.to_string()).unwrap();
        prop_assert!(back.realize() == t.realize(), "{} reparsed as {}", t, back);
    }

    #[test]
    fn graph_text_round_trips(g in graph()) {
        let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
        let text = format!("{}: {}", g.n(), edges.join(" "));
        prop_assert!(parse_graph(&text).unwrap() == g);
    }

    #[test]
    fn cotree_recognition_realizes_the_graph(g in graph()) {
        let Ok((t, perm)) = cotree_decompose(&g) else { return Ok(()) };
        let h = t.realize();
        prop_assert_eq!(h.n(), g.n());
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u != v {
                    prop_assert_eq!(h.has_edge(u, v), g.has_edge(perm[u], perm[v]));
                }
            }
        }
    }

    #[test]
    fn morphism_text_round_trips(f in morphism()) {
        let text = format_morphism("f", &f);
        let (name, back) = parse_morphism(&text, f.rig).unwrap();
        prop_assert_eq!(name, "f");
        prop_assert_eq!(back, f);
    }

    #[test]
    fn decomposition_evaluates_back(f in morphism()) {
        let e = decompose(&f);
        prop_assert_eq!(e.evaluate(f.rig).unwrap(), f.clone());
        let text = e.to_string();
        prop_assert_eq!(parse_genexpr(&text).unwrap(), e.clone());
        prop_assert_eq!(decompose(&f).to_string(), text);
    }

    #[test]
    fn traced_decomposition_matches(f in morphism()) {
        let (e, trace) = decompose_traced(&f);
        prop_assert_eq!(&e, &decompose(&f));
        prop_assert_eq!(trace.replay().unwrap(), e);
    }

    #[test]
    fn decomposition_steps_shrink(f in morphism()) {
        let (_, trace) = decompose_traced(&f);
        let steps: Vec<_> = trace.steps.iter().filter(|s| s.tag != StepTag::Coefficient).collect();
        for (i, parent) in steps.iter().enumerate() {
            let children = steps[..i]
                .iter()
                .rev()
                .take_while(|s| s.depth > parent.depth)
                .filter(|s| s.depth == parent.depth + 1);
            for child in children {
                prop_assert!(
                    measure(&child.morphism) < measure(&parent.morphism),
                    "{} ({}) -> {} ({})", parent.morphism, parent.tag, child.morphism, child.tag
                );
            }
        }
    }

    #[test]
    fn decomposition_commutes_with_collapsing_coefficients(f in spread_morphism()) {
        let e = decompose(&f);
        let collapsed = f.with_rig(Rig::Bool2).unwrap();
        prop_assert_eq!(e.evaluate(Rig::Bool2).unwrap(), collapsed);
    }
}

#[test]
fn pool_covers_every_small_hom_set() {
    assert!(hom_pool().len() > 1000);
}
