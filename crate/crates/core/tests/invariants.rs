//! Exhaustive checks of structural identities on small groups.

use coxkit::classify::TypeLabel::*;
use coxkit::classify::{build_named, classify, finite_catalog_up_to, graph_order, Cardinal, TypeLabel};
use coxkit::engine::{center, centralizer, closure, core, normalizer, EnumeratedGroup, Group};
use coxkit::graph::{graph_isomorphism, CoxeterGraph, VertexSet};
use coxkit::rootspace::{CoxeterSystem, RootId};
use std::collections::{HashMap, VecDeque};

fn group(t: TypeLabel) -> EnumeratedGroup {
    let g = EnumeratedGroup::new(&build_named(t).unwrap()).unwrap();
    g.ensure_table();
    g
}

/// Catalog types up to an order, with dihedral groups cut off at I2(24).
fn catalog(bound: u64) -> Vec<TypeLabel> {
    finite_catalog_up_to(bound).into_iter().filter(|t| !matches!(t, I2(m) if *m > 24)).collect()
}

/// Word length by a separate breadth-first search over right multiplication.
fn bfs_lengths(sys: &CoxeterSystem) -> HashMap<Vec<RootId>, usize> {
    let mut seen = HashMap::new();
    let mut queue = VecDeque::new();
    let id = sys.identity();
    seen.insert(id.images.clone(), 0);
    queue.push_back((id, 0));
    while let Some((w, d)) = queue.pop_front() {
        for s in 0..sys.rank() {
            let ws = sys.times_generator(&w, s);
            let k = ws.images.clone();
            if !seen.contains_key(&k) {
                seen.insert(k, d + 1);
                queue.push_back((ws, d + 1));
            }
        }
    }
    seen
}

#[test]
fn length_is_breadth_first_distance() {
    for t in [A(3), B(3), H(3)] {
        let sys = CoxeterSystem::new(&build_named(t).unwrap()).unwrap();
        let g = group(t);
        let lengths = bfs_lengths(&sys);
        assert_eq!(lengths.len(), g.order());
        for w in g.elements() {
            let e = g.element(w);
            assert_eq!(lengths[&e.images], sys.length(e));
            assert_eq!(g.reduced_word(w).len(), g.length(w));
            assert_eq!(sys.phi_w(e).len(), sys.length(e));
        }
    }
}

#[test]
fn length_changes_by_one_with_sign_of_image() {
    for t in [A(3), B(3), H(3), I2(7)] {
        let g = group(t);
        let sys = g.system();
        for w in g.elements() {
            let e = g.element(w);
            for s in 0..sys.rank() {
                let ws = sys.times_generator(e, s);
                let up = sys.length(&ws) == sys.length(e) + 1;
                let down = sys.length(&ws) + 1 == sys.length(e);
                assert!(up ^ down);
                assert_eq!(up, sys.roots().is_positive(sys.act(e, s as RootId)));
                let sw = sys.compose(&sys.generator(s), e);
                assert_eq!(sys.length(&sw) > sys.length(e), sys.roots().is_positive(sys.act(&sys.inverse(e), s as RootId)));
            }
        }
    }
}

#[test]
fn conjugating_a_reflection_reflects_the_image_root() {
    for t in [A(3), B(3), H(3)] {
        let g = group(t);
        let sys = g.system();
        for w in g.elements() {
            let e = g.element(w);
            let inv = sys.inverse(e);
            for r in 0..sys.roots().positive_count() as RootId {
                let lhs = sys.product([e, &sys.reflection(r), &inv]);
                assert_eq!(lhs, sys.reflection(sys.act(e, r)));
            }
        }
    }
}

#[test]
fn action_preserves_the_form() {
    for t in [B(3), H(3), F4] {
        let g = group(t);
        let sys = g.system();
        let n = sys.rank();
        let basis: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        for w in g.elements().step_by(7) {
            let e = g.element(w);
            for u in &basis {
                for v in &basis {
                    let before = sys.form().eval(u, v);
                    let after = sys.form().eval(&sys.act_vector(e, u), &sys.act_vector(e, v));
                    assert!((before - after).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn inversion_set_of_product() {
    // Φ(uv) is the symmetric difference of Φ(v) and v⁻¹Φ(u), as positive roots.
    let g = group(B(3));
    let sys = g.system();
    let p = sys.roots().positive_count() as RootId;
    for u in g.elements() {
        for v in g.elements().step_by(5) {
            let (eu, ev) = (g.element(u), g.element(v));
            let mut expected = sys.phi_w(ev);
            let vinv = sys.inverse(ev);
            for r in sys.phi_w(eu) {
                let image = sys.act(&vinv, r);
                let positive = if image < p { image } else { sys.roots().negate(image) };
                if let Some(pos) = expected.iter().position(|&x| x == positive) {
                    expected.remove(pos);
                } else {
                    expected.push(positive);
                }
            }
            let mut actual = sys.phi_w(&sys.compose(eu, ev));
            actual.sort();
            expected.sort();
            assert_eq!(actual, expected);
        }
    }
}

#[test]
fn center_lies_in_every_normalizer_and_cores_are_normal() {
    for t in [A(3), B(3)] {
        let g = group(t);
        let z = center(&g);
        for set in g.graph().vertices().subsets() {
            let h = g.parabolic(set);
            let n = normalizer(&g, &h);
            assert!(z.is_subset(&n));
            let c = core(&g, &h);
            assert!(c.is_subset(&h));
            assert_eq!(normalizer(&g, &c).order(), g.order());
        }
    }
}

#[test]
fn normalizers_of_maximal_parabolics() {
    for t in [B(3), D(4), H(3), F4] {
        let g = group(t);
        let z = center(&g);
        let all = g.graph().vertices();
        for s in all.iter() {
            let set = all.without(s);
            let h = g.parabolic(set);
            let n = normalizer(&g, &h);
            let hz = closure(&g, &h.ids().iter().chain(z.ids()).copied().collect::<Vec<_>>());
            assert_eq!(n, hz, "{t} without s{}", s + 1);
        }
    }
}

#[test]
fn diagram_automorphism_counts() {
    let count = |t| {
        let g = build_named(t).unwrap();
        graph_isomorphism(&g, &g, true).len()
    };
    for n in 3..=8 {
        assert_eq!(count(B(n)), 1);
    }
    assert_eq!(count(B(2)), 2);
    assert_eq!(count(D(4)), 6);
    for n in 5..=8 {
        assert_eq!(count(D(n)), 2);
    }
}

#[test]
fn classification_survives_relabelling() {
    for t in catalog(1_000_000) {
        let g = build_named(t).unwrap();
        let n = g.rank();
        let reversed: Vec<usize> = (0..n).rev().collect();
        let edges: Vec<_> = g.edges().map(|(a, b, m)| (reversed[a], reversed[b], m)).collect();
        let h = CoxeterGraph::with_edges(n, &edges).unwrap();
        let types = |g: &CoxeterGraph| classify(g).into_iter().map(|(_, t)| t).collect::<Vec<_>>();
        assert_eq!(types(&g), vec![t.canonical().unwrap()]);
        assert_eq!(types(&h), types(&g));
    }
}

#[test]
fn closed_form_orders_match_enumeration() {
    for t in catalog(10_000) {
        let g = build_named(t).unwrap();
        let expected = match graph_order(&g) {
            Cardinal::Finite(n) => n,
            Cardinal::Infinite => panic!("{t} is finite"),
        };
        let enumerated = EnumeratedGroup::with_cap(&g, 10_000).unwrap();
        assert_eq!(expected, enumerated.order().into(), "{t}");
    }
}

#[test]
fn centralizer_of_generators_is_center() {
    for t in [A(3), B(3), H(3), I2(8)] {
        let g = group(t);
        let gens: Vec<_> = (0..g.rank()).map(|s| g.generator_id(s)).collect();
        assert_eq!(centralizer(&g, &gens), center(&g));
        let empty = VertexSet::default();
        assert!(g.parabolic(empty).is_trivial());
    }
}
