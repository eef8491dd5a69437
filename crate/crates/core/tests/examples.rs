//! Worked examples, one small case per operation.

use coxkit::classify::{build_named, classify, classify_irreducible, describe, graph_order, group_order, Cardinal, TypeLabel};
use coxkit::classify::TypeLabel::*;
use coxkit::deodhar::{deodhar_decompose, longest_element, special_subgroup, DeodharOptions, Family};
use coxkit::engine::{
    center, centralizer, closure, core, find_isomorphism, normal_closure, normalizer, EnumeratedGroup, Group, Subgroup,
    TableGroup,
};
use coxkit::graph::{graph_isomorphism, CoxeterGraph, VertexSet, INF};
use coxkit::hommonoid::{CentralHom, HomMonoid};
use coxkit::isomorph::{
    admissible_refinement, aut_decomposition, aut_order_symproduct, component_decomposition, coxeter_isomorphic,
    coxeter_isomorphic_graphs, factor_isomorphism, ComponentMultiset, Verdict,
};
use coxkit::rootspace::CoxeterSystem;
use coxkit::structure::{
    center_direct_factor, centralizer_of_normal_closure_checked, core_of_normalizer, homs_to_pm1,
    is_directly_indecomposable, richardson_form, x_h, CenterFactor, SubgroupDescription,
};
use coxkit::Error;
use num_bigint::BigUint;

fn group(t: TypeLabel) -> EnumeratedGroup {
    let g = EnumeratedGroup::with_cap(&build_named(t).unwrap(), 20_000).unwrap();
    g.ensure_table();
    g
}

fn union(labels: &[TypeLabel]) -> CoxeterGraph {
    labels[1..].iter().fold(build_named(labels[0]).unwrap(), |acc, &t| acc.disjoint_union(&build_named(t).unwrap(), "'").unwrap())
}

fn set(ix: &[usize]) -> VertexSet {
    VertexSet::from_indices(ix.iter().map(|i| i - 1))
}

#[test]
fn graph_text_format() {
    let g = CoxeterGraph::parse("vertices: a b\nedge a b 4").unwrap();
    assert_eq!(g.m(0, 1), 4);
    assert_eq!(classify_irreducible(&g).unwrap(), B(2));
    let g = CoxeterGraph::parse("# one vertex\nvertices: a").unwrap();
    assert_eq!(g.rank(), 1);
    assert!(matches!(CoxeterGraph::parse("vertices: a b\nedge a b 2"), Err(Error::Parse { line: 2, .. })));
    let g = CoxeterGraph::parse("vertices: x y\nedge x y inf").unwrap();
    assert_eq!(g.m(1, 0), INF);
    assert_eq!(CoxeterGraph::parse(&g.render()).unwrap(), g);
}

#[test]
fn catalog_graphs() {
    let b3 = build_named(B(3)).unwrap();
    assert_eq!((b3.m(0, 1), b3.m(1, 2), b3.m(0, 2)), (4, 3, 2));
    let d4 = build_named(D(4)).unwrap();
    assert_eq!(d4.neighbours(2), set(&[1, 2, 4]));
    assert_eq!(build_named(I2(7)).unwrap().m(0, 1), 7);
}

#[test]
fn components_and_odd_components() {
    let b3 = build_named(B(3)).unwrap();
    assert_eq!(b3.components(b3.vertices(), false), vec![set(&[1, 2, 3])]);
    assert_eq!(b3.components(b3.vertices(), true), vec![set(&[1]), set(&[2, 3])]);
    let f4 = build_named(F4).unwrap();
    assert_eq!(f4.components(f4.vertices(), true), vec![set(&[1, 2]), set(&[3, 4])]);
}

#[test]
fn graph_isomorphisms() {
    assert!(!graph_isomorphism(&build_named(A(3)).unwrap(), &build_named(D(3)).unwrap(), false).is_empty());
    assert_eq!(graph_isomorphism(&build_named(D(4)).unwrap(), &build_named(D(4)).unwrap(), true).len(), 6);
    assert!(graph_isomorphism(&build_named(B(2)).unwrap(), &build_named(A(2)).unwrap(), false).is_empty());
    for n in 3..=6 {
        let b = build_named(B(n)).unwrap();
        assert_eq!(graph_isomorphism(&b, &b, true).len(), 1);
    }
    for n in 5..=7 {
        let d = build_named(D(n)).unwrap();
        assert_eq!(graph_isomorphism(&d, &d, true).len(), 2);
    }
    let b2 = build_named(B(2)).unwrap();
    assert_eq!(graph_isomorphism(&b2, &b2, true).len(), 2);
}

#[test]
fn classification() {
    let path = |a, b| CoxeterGraph::with_edges(3, &[(0, 1, a), (1, 2, b)]).unwrap();
    assert_eq!(classify_irreducible(&path(4, 3)).unwrap(), B(3));
    assert_eq!(classify_irreducible(&path(3, 3)).unwrap(), A(3));
    assert_eq!(classify_irreducible(&CoxeterGraph::with_edges(2, &[(0, 1, INF)]).unwrap()).unwrap(), Unknown);
    let labels = |g: &CoxeterGraph| classify(g).into_iter().map(|(_, t)| t).collect::<Vec<_>>();
    assert_eq!(labels(&union(&[A(1), A(3)])), vec![A(1), A(3)]);
    assert_eq!(labels(&CoxeterGraph::with_edges(2, &[]).unwrap()), vec![A(1), A(1)]);
    let b4_inf = build_named(B(4)).unwrap().disjoint_union(&CoxeterGraph::with_edges(2, &[(0, 1, INF)]).unwrap(), "'").unwrap();
    assert_eq!(labels(&b4_inf), vec![B(4), Unknown]);
    assert_eq!(describe(&union(&[B(3), A(1)])), "B3 + A1");
}

#[test]
fn orders() {
    assert_eq!(group_order(A(2)), Cardinal::Finite(6u32.into()));
    assert_eq!(group_order(H(3)), Cardinal::Finite(120u32.into()));
    assert_eq!(group_order(BInf), Cardinal::Infinite);
    assert_eq!(graph_order(&union(&[A(1), A(3)])), Cardinal::Finite(48u32.into()));
    assert_eq!(group_order(E(8)), Cardinal::Finite(BigUint::from(696_729_600u64)));
}

#[test]
fn reflections_on_roots() {
    let a2 = CoxeterSystem::new(&build_named(A(2)).unwrap()).unwrap();
    let s1 = a2.generator(0);
    assert!(close(&a2.act_vector(&s1, &[1.0, 0.0]), &[-1.0, 0.0]));
    assert!(close(&a2.act_vector(&s1, &[0.0, 1.0]), &[1.0, 1.0]));
    let b2 = CoxeterSystem::new(&build_named(B(2)).unwrap()).unwrap();
    assert!(close(&b2.act_vector(&b2.generator(1), &[1.0, 0.0]), &[1.0, std::f64::consts::SQRT_2]));
    assert_eq!(a2.roots().len(), 6);
    assert_eq!(b2.roots().len(), 8);
    assert_eq!(CoxeterSystem::new(&build_named(H(3)).unwrap()).unwrap().roots().len(), 30);
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

#[test]
fn inversion_sets_and_reflections() {
    let sys = CoxeterSystem::new(&build_named(A(2)).unwrap()).unwrap();
    let top = sys.root_id(&[1.0, 1.0]).unwrap();
    assert!(sys.phi_w(&sys.identity()).is_empty());
    let mut inv = sys.phi_w(&sys.word(&[0, 1]));
    inv.sort();
    let mut expected = vec![1, top];
    expected.sort();
    assert_eq!(inv, expected);
    assert_eq!(sys.phi_w(&sys.word(&[0, 1, 0])).len(), 3);
    assert_eq!(sys.reflection(0), sys.generator(0));
    assert_eq!(sys.reflection(top), sys.word(&[0, 1, 0]));
    assert_eq!(sys.reflection(sys.roots().negate(top)), sys.reflection(top));
    assert_eq!(sys.roots().support(top), set(&[1, 2]));
    assert_eq!(sys.roots().support(0), set(&[1]));
}

#[test]
fn perpendicular_sets() {
    let b3 = build_named(B(3)).unwrap();
    assert_eq!(b3.perp(set(&[1])), set(&[3]));
    assert_eq!(b3.perp(set(&[2])), VertexSet::default());
    assert_eq!(b3.perp(VertexSet::default()), b3.vertices());
}

#[test]
fn enumeration() {
    assert_eq!(group(A(2)).order(), 6);
    assert_eq!(EnumeratedGroup::new(&CoxeterGraph::with_edges(2, &[]).unwrap()).unwrap().order(), 4);
    assert!(matches!(EnumeratedGroup::with_cap(&build_named(H(4)).unwrap(), 10_000), Err(Error::CapExceeded(_))));
}

#[test]
fn closures_centralizers_normalizers_cores() {
    let b2 = group(B(2));
    let s1 = b2.generator_id(0);
    let w0 = b2.from_word(&[0, 1, 0, 1]);
    let g_b2 = normal_closure(&b2, &[s1]);
    assert_eq!(g_b2, Subgroup::from_ids(8, [0, s1, b2.from_word(&[1, 0, 1]), w0]));
    assert_eq!(normal_closure(&b2, &[]).order(), 1);
    let a2 = group(A(2));
    assert_eq!(normal_closure(&a2, &[a2.generator_id(0)]).order(), 6);
    assert_eq!(centralizer(&a2, &[a2.generator_id(0)]).order(), 2);
    assert_eq!(centralizer(&a2, &[]).order(), 6);
    assert_eq!(centralizer(&b2, &[w0]).order(), 8);
    let h = closure(&b2, &[s1]);
    assert_eq!(normalizer(&b2, &h), g_b2);
    let whole = Subgroup::whole(8);
    assert_eq!(normalizer(&b2, &whole), whole);
    let a2_s1 = closure(&a2, &[a2.generator_id(0)]);
    assert_eq!(normalizer(&a2, &a2_s1), a2_s1);
    assert!(core(&a2, &a2_s1).is_trivial());
    assert_eq!(core(&b2, &g_b2), g_b2);
    assert_eq!(core(&b2, &normalizer(&b2, &h)), g_b2);
}

#[test]
fn isomorphism_search() {
    let b3 = group(B(3));
    let a1a3 = EnumeratedGroup::new(&union(&[A(1), A(3)])).unwrap();
    assert!(find_isomorphism(&b3, &a1a3).unwrap().is_some());
    let b2 = group(B(2));
    let a1_cubed = EnumeratedGroup::new(&CoxeterGraph::with_edges(3, &[]).unwrap()).unwrap();
    assert!(find_isomorphism(&b2, &a1_cubed).unwrap().is_none());
    let f = find_isomorphism(&b2, &b2).unwrap().unwrap();
    assert_eq!(f.len(), 8);
}

#[test]
fn longest_elements() {
    let a2 = CoxeterSystem::new(&build_named(A(2)).unwrap()).unwrap();
    let l = longest_element(&a2, set(&[1])).unwrap();
    assert_eq!(l.element, a2.generator(0));
    assert!(l.is_central());
    let l = longest_element(&a2, a2.graph().vertices()).unwrap();
    assert_eq!(l.element, a2.word(&[0, 1, 0]));
    assert_eq!(l.sigma, vec![1, 0]);
    let b2 = CoxeterSystem::new(&build_named(B(2)).unwrap()).unwrap();
    let l = longest_element(&b2, b2.graph().vertices()).unwrap();
    assert_eq!(l.element, b2.word(&[0, 1, 0, 1]));
    assert!(l.is_central());
}

#[test]
fn decompositions() {
    let h3 = CoxeterSystem::new(&build_named(H(3)).unwrap()).unwrap();
    let dec = deodhar_decompose(&h3, h3.graph().vertices(), DeodharOptions::default()).unwrap();
    assert_eq!(dec.sequence(), vec![set(&[1, 3]), set(&[1]), VertexSet::default()]);
    let a2 = CoxeterSystem::new(&build_named(A(2)).unwrap()).unwrap();
    let dec = deodhar_decompose(&a2, a2.graph().vertices(), DeodharOptions::default()).unwrap();
    assert_eq!(dec.steps.len(), 1);
    assert_eq!(dec.steps[0].root, a2.root_id(&[1.0, 1.0]).unwrap());
    assert_eq!(dec.sequence(), vec![VertexSet::default()]);
}

#[test]
fn special_subgroups() {
    assert_eq!(special_subgroup(&group(B(2)), Family::B).unwrap().order(), 4);
    assert_eq!(special_subgroup(&group(D(4)), Family::D).unwrap().order(), 8);
    let b1 = group(B(1));
    assert_eq!(special_subgroup(&b1, Family::B).unwrap().order(), 2);
    assert!(special_subgroup(&group(A(3)), Family::B).is_err());
}

#[test]
fn characters() {
    assert_eq!(homs_to_pm1(&build_named(A(2)).unwrap()).len(), 2);
    assert_eq!(homs_to_pm1(&build_named(B(2)).unwrap()).len(), 4);
    assert_eq!(homs_to_pm1(&build_named(F4).unwrap()).len(), 4);
}

#[test]
fn center_factors() {
    assert_eq!(center_direct_factor(B(3)).unwrap(), CenterFactor::Yes(A(3)));
    assert_eq!(center_direct_factor(B(4)).unwrap(), CenterFactor::No);
    assert_eq!(center_direct_factor(H(3)).unwrap(), CenterFactor::Yes(H3Plus));
    assert_eq!(center_direct_factor(I2(10)).unwrap(), CenterFactor::Yes(I2(5)));
    assert_eq!(center_direct_factor(A(4)).unwrap(), CenterFactor::CenterTrivial);
    assert!(!is_directly_indecomposable(E(7)).unwrap().indecomposable);
    assert!(is_directly_indecomposable(E(8)).unwrap().indecomposable);
    assert!(is_directly_indecomposable(AInf).unwrap().indecomposable);
}

#[test]
fn cores_of_normalizers() {
    let answer = core_of_normalizer(&build_named(B(3)).unwrap(), set(&[1])).unwrap();
    assert!(matches!(answer.subgroup, SubgroupDescription::SpecialB(_)));
    assert_eq!(answer.subgroup.resolve(&group(B(3))).unwrap().order(), 8);
    let answer = core_of_normalizer(&build_named(A(2)).unwrap(), set(&[1])).unwrap();
    assert_eq!(answer.subgroup, SubgroupDescription::Center);
    assert_eq!(answer.subgroup.resolve(&group(A(2))).unwrap().order(), 1);
    let answer = core_of_normalizer(&build_named(H(3)).unwrap(), set(&[1, 3])).unwrap();
    assert_eq!(answer.subgroup.resolve(&group(H(3))).unwrap().order(), 2);
    let answer = core_of_normalizer(&build_named(D(4)).unwrap(), set(&[1, 2])).unwrap();
    assert!(matches!(answer.subgroup, SubgroupDescription::SpecialD(_)));
    let answer = core_of_normalizer(&build_named(A(3)).unwrap(), VertexSet::default()).unwrap();
    assert_eq!(answer.subgroup, SubgroupDescription::Whole);
}

#[test]
fn x_h_sets() {
    let b2 = group(B(2));
    assert!(x_h(&b2, &Subgroup::trivial(8)).unwrap().is_empty());
    let g_b2 = special_subgroup(&b2, Family::B).unwrap();
    let xs = x_h(&b2, &g_b2).unwrap();
    assert!(xs.contains(&(set(&[1]), b2.generator_id(0))));
    assert!(xs.contains(&(set(&[1, 2]), b2.from_word(&[0, 1, 0, 1]))));
    let a2 = group(A(2));
    let xs = x_h(&a2, &Subgroup::whole(6)).unwrap();
    assert_eq!(xs, vec![(set(&[1]), a2.generator_id(0)), (set(&[2]), a2.generator_id(1))]);
}

#[test]
fn centralizers_of_normal_closures() {
    let b3 = group(B(3));
    let (answer, sub) = centralizer_of_normal_closure_checked(&b3, &[b3.generator_id(0)]).unwrap();
    assert!(matches!(answer.subgroup, SubgroupDescription::SpecialB(_)));
    assert_eq!(sub.order(), 8);
    let a2 = group(A(2));
    let (_, sub) = centralizer_of_normal_closure_checked(&a2, &[a2.generator_id(0)]).unwrap();
    assert!(sub.is_trivial());
    let b2 = group(B(2));
    let (answer, _) = centralizer_of_normal_closure_checked(&b2, &[b2.from_word(&[0, 1, 0, 1])]).unwrap();
    assert_eq!(answer.subgroup, SubgroupDescription::Whole);
}

#[test]
fn richardson_forms() {
    let b2 = group(B(2));
    let r = richardson_form(&b2, b2.generator_id(0)).unwrap();
    assert_eq!((r.conjugator, r.subset), (0, set(&[1])));
    let w0 = b2.from_word(&[0, 1, 0, 1]);
    let r = richardson_form(&b2, w0).unwrap();
    assert_eq!((r.conjugator, r.subset), (0, set(&[1, 2])));
    let a2 = group(A(2));
    let r = richardson_form(&a2, a2.from_word(&[0, 1, 0])).unwrap();
    assert_eq!(r.subset, set(&[1]));
    assert!(richardson_form(&a2, a2.from_word(&[0, 1])).is_err());
}

#[test]
fn refinements_and_verdicts() {
    assert_eq!(admissible_refinement(&[B(3)]).unwrap(), vec![A(1), A(3)]);
    assert_eq!(admissible_refinement(&[E(7)]).unwrap(), vec![A(1), E7Plus]);
    assert_eq!(admissible_refinement(&[A(5)]).unwrap(), vec![A(5)]);
    let v = |a: &[TypeLabel], b: &[TypeLabel]| coxeter_isomorphic_graphs(&union(a), &union(b));
    assert_eq!(v(&[B(3)], &[A(1), A(3)]), Verdict::Yes);
    assert_eq!(v(&[I2(6)], &[A(1), A(2)]), Verdict::Yes);
    assert_eq!(v(&[B(2)], &[A(1), A(1)]), Verdict::No);
    let x = CoxeterGraph::with_edges(3, &[(0, 1, 7), (1, 2, INF)]).unwrap();
    let y = CoxeterGraph::with_edges(3, &[(0, 1, 8), (1, 2, INF)]).unwrap();
    assert_eq!(coxeter_isomorphic_graphs(&x, &y), Verdict::Unknown);
    assert_eq!(coxeter_isomorphic_graphs(&x, &x), Verdict::Yes);
    let a = ComponentMultiset::parse("B3, Ainf").unwrap();
    let b = ComponentMultiset::parse("A1 + A3 + Ainf").unwrap();
    assert_eq!(coxeter_isomorphic(&a, &b), Verdict::Yes);
    let c = ComponentMultiset::parse("A1,A3,Ainf,Ainf").unwrap();
    assert_eq!(coxeter_isomorphic(&a, &c), Verdict::No);
}

#[test]
fn factor_isomorphisms() {
    let g = EnumeratedGroup::new(&union(&[A(1), A(2)])).unwrap();
    let dec = component_decomposition(&g);
    let id: Vec<u32> = g.elements().collect();
    let split = factor_isomorphism(&g, &dec, &g, &dec, &id).unwrap();
    assert_eq!(split.phi, vec![0, 1]);
    assert_eq!(dec.noncentral(&g), vec![1]);
    assert!(split.factor_maps[0].is_none());
    assert!(split.factor_maps[1].as_ref().unwrap().iter().all(|(x, y)| x == y));
    assert!(dec.factors[1].ids().iter().all(|&w| split.central[w as usize] == 0));

    let g = EnumeratedGroup::new(&union(&[A(2), A(2)])).unwrap();
    g.ensure_table();
    let dec = component_decomposition(&g);
    let swap: Vec<u32> = g
        .elements()
        .map(|w| g.from_word(&g.reduced_word(w).iter().map(|&s| (s + 2) % 4).collect::<Vec<_>>()))
        .collect();
    let split = factor_isomorphism(&g, &dec, &g, &dec, &swap).unwrap();
    assert_eq!(split.phi, vec![1, 0]);
    assert!(split.central.iter().all(|&z| z == 0));
}

#[test]
fn automorphism_counts() {
    assert_eq!(aut_order_symproduct(&[3, 3]), 72u32.into());
    assert_eq!(aut_order_symproduct(&[2, 3]), 12u32.into());
    assert_eq!(aut_order_symproduct(&[1, 1, 1, 1, 1]), 1u32.into());
    let g = EnumeratedGroup::new(&union(&[A(1), A(2)])).unwrap();
    let b = aut_decomposition(&g, &component_decomposition(&g)).unwrap();
    assert_eq!([b.h1.clone(), b.h2.clone(), b.h3.clone(), b.h4.clone()], [2u32, 6, 1, 1].map(BigUint::from));
    assert_eq!(b.order(), 12u32.into());
    let g = EnumeratedGroup::new(&union(&[A(2), A(2)])).unwrap();
    let b = aut_decomposition(&g, &component_decomposition(&g)).unwrap();
    assert_eq!((b.h1.clone(), b.h2.clone(), b.h3.clone(), b.order()), (1u32.into(), 36u32.into(), 2u32.into(), 72u32.into()));
    let g = group(A(1));
    assert_eq!(aut_decomposition(&g, &component_decomposition(&g)).unwrap().order(), 1u32.into());
}

#[test]
fn hom_monoid_examples() {
    let a1 = TableGroup::from_group(&group(A(1)));
    let m = HomMonoid::new(&a1);
    let identity = CentralHom { values: vec![0, 1] };
    assert_eq!(m.star(&identity, &identity), identity);
    assert!(!m.is_invertible(&identity));
    assert!(m.invert(&identity).is_none());
    assert!(m.is_invertible(&m.unit()));
    assert_eq!(m.invert(&m.unit()).unwrap(), m.unit());
    assert_eq!(m.flat(&m.unit()), vec![0, 1]);

    // w -> w0^length(w) on W(B2)
    let b2 = group(B(2));
    let w0 = b2.from_word(&[0, 1, 0, 1]);
    let f = CentralHom { values: b2.elements().map(|w| if b2.length(w) % 2 == 1 { w0 } else { 0 }).collect() };
    let m = HomMonoid::new(&b2);
    let flat = m.flat(&f);
    for s in 0..2 {
        let g = b2.generator_id(s);
        assert_eq!(flat[g as usize], b2.mul(g, w0));
    }
    assert!(m.enumerate().unwrap().contains(&f));
    assert_eq!(center(&b2).order(), 2);

    // the sign of the A2 factor, into the center of W(A1) x W(A2)
    let g = TableGroup::from_group(&EnumeratedGroup::new(&union(&[A(1), A(2)])).unwrap());
    let m = HomMonoid::new(&g);
    let z = m.center().clone();
    let sign_a2: Vec<CentralHom> = m
        .enumerate()
        .unwrap()
        .into_iter()
        .filter(|f| f.apply(g.generators()[0]) == 0 && f.apply(g.generators()[1]) != 0)
        .collect();
    assert_eq!(sign_a2.len(), 1);
    let f = &sign_a2[0];
    assert!(z.ids().iter().all(|&w| f.apply(w) == 0));
    let pointwise = CentralHom { values: g.elements().map(|w| g.mul(f.apply(w), f.apply(w))).collect() };
    assert_eq!(m.star(f, f), pointwise);
    assert_eq!(m.invert(f).unwrap(), CentralHom { values: g.elements().map(|w| g.inv(f.apply(w))).collect() });
    assert_eq!(m.star(f, f), m.unit());
}
