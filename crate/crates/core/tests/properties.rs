use coxkit::classify::TypeLabel::*;
use coxkit::classify::{build_named, classify, finite_catalog_up_to, graph_order, group_order, Cardinal, TypeLabel};
use coxkit::deodhar::{deodhar_decompose, longest_element, ComponentOrder, DeodharOptions, Variant};
use coxkit::engine::{EnumeratedGroup, Group, TableGroup};
use coxkit::graph::{CoxeterGraph, VertexSet, INF};
use coxkit::hommonoid::HomMonoid;
use coxkit::isomorph::{admissible_refinement, aut_order_symproduct, condition_two, condition_two_by_refinement};
use coxkit::rootspace::CoxeterSystem;
use num_bigint::BigUint;
use proptest::prelude::*;
use std::sync::OnceLock;

fn small_catalog() -> &'static [TypeLabel] {
    static CATALOG: OnceLock<Vec<TypeLabel>> = OnceLock::new();
    CATALOG.get_or_init(|| finite_catalog_up_to(2000).into_iter().filter(|t| !matches!(t, I2(m) if *m > 20)).collect())
}

fn catalog_label() -> impl Strategy<Value = TypeLabel> {
    (0..small_catalog().len()).prop_map(|i| small_catalog()[i])
}

fn random_graph() -> impl Strategy<Value = CoxeterGraph> {
    (1usize..7).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(prop_oneof![4 => Just(2u32), 3 => Just(3u32), 1 => 4u32..9, 1 => Just(INF)], pairs).prop_map(
            move |labels| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if labels[k] != 2 {
                            edges.push((a, b, labels[k]));
                        }
                        k += 1;
                    }
                }
                CoxeterGraph::with_edges(n, &edges).unwrap()
            },
        )
    })
}

fn union(labels: &[TypeLabel]) -> CoxeterGraph {
    labels[1..].iter().fold(build_named(labels[0]).unwrap(), |acc, &t| acc.disjoint_union(&build_named(t).unwrap(), "'").unwrap())
}

fn system(t: TypeLabel) -> &'static CoxeterSystem {
    static CACHE: OnceLock<std::sync::Mutex<Vec<(TypeLabel, &'static CoxeterSystem)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    if let Some((_, s)) = guard.iter().find(|(k, _)| *k == t) {
        return s;
    }
    let s: &'static CoxeterSystem = Box::leak(Box::new(CoxeterSystem::new(&build_named(t).unwrap()).unwrap()));
    guard.push((t, s));
    s
}

fn order_of(labels: &[TypeLabel]) -> BigUint {
    labels.iter().map(|&t| match group_order(t) {
        Cardinal::Finite(n) => n,
        Cardinal::Infinite => unreachable!(),
    }).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_then_parse_is_identity(g in random_graph()) {
        prop_assert_eq!(CoxeterGraph::parse(&g.render()).unwrap(), g);
    }

    #[test]
    fn vertex_set_laws(a in 0u64..256, b in 0u64..256) {
        let set = |bits: u64| VertexSet::from_indices((0..8).filter(|i| bits >> i & 1 == 1));
        let (x, y) = (set(a), set(b));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert!(x.difference(y).intersection(y).is_empty());
        prop_assert!(x.intersection(y).is_subset(x));
        prop_assert_eq!(x.difference(y).union(x.intersection(y)), x);
        prop_assert_eq!(x.subsets().count(), 1 << x.len());
    }

    #[test]
    fn components_partition_the_vertices(g in random_graph(), odd in any::<bool>()) {
        let parts = g.components(g.vertices(), odd);
        let mut seen = VertexSet::default();
        for p in &parts {
            prop_assert!(!p.is_empty());
            prop_assert!(p.intersection(seen).is_empty());
            seen = seen.union(*p);
        }
        prop_assert_eq!(seen, g.vertices());
    }

    #[test]
    fn classify_recovers_union_of_catalog_types(labels in proptest::collection::vec(catalog_label(), 1..4)) {
        let g = union(&labels);
        let mut found: Vec<TypeLabel> = classify(&g).into_iter().map(|(_, t)| t).collect();
        let mut expected: Vec<TypeLabel> = labels.iter().map(|t| t.canonical().unwrap()).collect();
        found.sort();
        expected.sort();
        prop_assert_eq!(found, expected);
        prop_assert_eq!(graph_order(&g), Cardinal::Finite(order_of(&labels)));
    }

    #[test]
    fn word_inverse_and_composition(t in catalog_label(), word in proptest::collection::vec(0usize..8, 0..24), other in proptest::collection::vec(0usize..8, 0..12)) {
        let sys = system(t);
        let n = sys.rank();
        let u: Vec<usize> = word.iter().map(|s| s % n).collect();
        let v: Vec<usize> = other.iter().map(|s| s % n).collect();
        let wu = sys.word(&u);
        let wv = sys.word(&v);
        prop_assert!(sys.is_identity(&sys.compose(&wu, &sys.inverse(&wu))));
        let reversed: Vec<usize> = u.iter().rev().copied().collect();
        prop_assert_eq!(sys.inverse(&wu), sys.word(&reversed));
        let joined: Vec<usize> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(sys.compose(&wu, &wv), sys.word(&joined));
        prop_assert!(sys.length(&wu) <= u.len());
        prop_assert_eq!(sys.length(&wu) % 2, u.len() % 2);
        let x: Vec<f64> = (0..n).map(|i| i as f64 + 0.5).collect();
        let y: Vec<f64> = (0..n).map(|i| 1.0 - i as f64).collect();
        let before = sys.form().eval(&x, &y);
        let after = sys.form().eval(&sys.act_vector(&wu, &x), &sys.act_vector(&wu, &y));
        prop_assert!((before - after).abs() < 1e-6 * (1.0 + before.abs()));
    }

    #[test]
    fn decomposition_multiplies_to_longest(t in catalog_label(), bits in 0u64..256, second in any::<bool>(), smallest in any::<bool>()) {
        let sys = system(t);
        let set = VertexSet::from_indices((0..sys.rank()).filter(|i| bits >> i & 1 == 1));
        let options = DeodharOptions {
            variant: if second { Variant::Second } else { Variant::First },
            order: if smallest { ComponentOrder::SmallestVertex } else { ComponentOrder::LargestVertex },
        };
        let dec = deodhar_decompose(sys, set, options).unwrap();
        let w0 = longest_element(sys, set).unwrap();
        prop_assert_eq!(dec.product(sys), w0.element.clone());
        prop_assert_eq!(dec.steps.len() % 2, sys.length(&w0.element) % 2);
        let seq = dec.sequence();
        let mut previous = set;
        for s in &seq {
            prop_assert!(s.is_subset(previous) && *s != previous);
            previous = *s;
        }
        prop_assert!(previous.is_empty());
    }

    #[test]
    fn condition_two_is_an_equivalence(a in proptest::collection::vec(catalog_label(), 1..4), b in proptest::collection::vec(catalog_label(), 1..4)) {
        prop_assert!(condition_two(&a, &a));
        prop_assert_eq!(condition_two(&a, &b), condition_two(&b, &a));
        let r = admissible_refinement(&a).unwrap();
        prop_assert_eq!(admissible_refinement(&r).unwrap(), r.clone());
        prop_assert_eq!(condition_two(&a, &b), condition_two_by_refinement(&a, &b).unwrap());
        prop_assert_eq!(order_of(&r), order_of(&a));
    }

    #[test]
    fn symmetric_product_count_ignores_order(sizes in proptest::collection::vec(1u32..6, 1..6), seed in any::<u64>()) {
        let mut shuffled = sizes.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed & 1 == 1 {
            shuffled.reverse();
        }
        prop_assert_eq!(aut_order_symproduct(&sizes), aut_order_symproduct(&shuffled));
    }
}

fn monoid_groups() -> &'static [TableGroup] {
    static GROUPS: OnceLock<Vec<TableGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        [vec![A(1), A(1)], vec![B(2)], vec![A(1), A(2)], vec![I2(6)], vec![B(3)], vec![A(1), A(1), A(1)]]
            .iter()
            .map(|labels| TableGroup::from_group(&EnumeratedGroup::new(&union(labels)).unwrap()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hom_monoid_laws(which in 0usize..6, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let g = &monoid_groups()[which];
        let m = HomMonoid::new(g);
        let homs = m.enumerate().unwrap();
        let (f, h, l) = (&homs[i.index(homs.len())], &homs[j.index(homs.len())], &homs[k.index(homs.len())]);
        let fh = m.star(f, h);
        prop_assert!(homs.contains(&fh));
        prop_assert_eq!(m.star(&fh, l), m.star(f, &m.star(h, l)));
        prop_assert_eq!(&m.star(f, &m.unit()), f);
        prop_assert_eq!(&m.star(&m.unit(), f), f);
        let flat_fh = m.flat(&fh);
        let (flat_f, flat_h) = (m.flat(f), m.flat(h));
        for w in g.elements() {
            prop_assert_eq!(flat_fh[w as usize], flat_f[flat_h[w as usize] as usize]);
        }
        match m.invert(f) {
            Some(inv) => {
                prop_assert!(m.is_invertible(f));
                prop_assert_eq!(m.star(f, &inv), m.unit());
                prop_assert_eq!(m.star(&inv, f), m.unit());
            }
            None => prop_assert!(!m.is_invertible(f)),
        }
    }
}
