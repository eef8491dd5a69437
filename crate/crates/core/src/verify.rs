//! Acceptance suites. Each suite runs brute-force oracles against the closed
//! forms and reports how many checks ran and which ones failed.

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::classify::{build_named, finite_catalog_up_to, group_order, TypeLabel};
use crate::deodhar::{
    deodhar_decompose, highest_root_entry, longest_element, prefix, special_subgroup, variant_count, ComponentOrder,
    Contact, DeodharOptions, Family, Variant,
};
use crate::engine::{
    all_subgroups, automorphisms, center, centralizer, closure, conjugacy_class, conjugate_subgroup, core,
    find_isomorphism, generating_set, homomorphisms, involution_class_representatives, is_abelian,
    is_directly_decomposable, is_normal, normal_closure, normal_subgroups, normalizer, ElemId, EnumeratedGroup, Group,
    Subgroup, TableGroup,
};
use crate::error::{Error, Result};
use crate::graph::{CoxeterGraph, GraphIso, VertexSet};
use crate::hommonoid::{CentralHom, HomMonoid};
use crate::isomorph::{
    admissible_decomposition, admissible_refinement, aut_decomposition, aut_order_symproduct,
    component_decomposition, condition_two, condition_two_by_refinement, coxeter_isomorphic, factor_center,
    factor_isomorphism, rotation_subgroup, ComponentMultiset, DirectDecomposition, Verdict,
};
use crate::rootspace::CoxeterSystem;
use crate::structure::{
    center_closed_form, center_complement, center_direct_factor, centralizer_of_normal_closure_checked,
    core_of_normalizer_brute, core_of_normalizer_checked, richardson_form, x_h, CenterFactor,
};

/// Suite names, indexed by criterion number minus one.
pub const SUITES: [&str; 10] = [
    "orders",
    "deodhar",
    "core",
    "centralizer",
    "center-factor",
    "lemmas",
    "isomorphism",
    "aut",
    "hommonoid",
    "richardson",
];

/// Knobs for the randomized parts.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub random_multisets: usize,
    pub random_pairs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 20_240_601, random_multisets: 10_000, random_pairs: 20_000 }
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub id: usize,
    pub name: &'static str,
    pub checks: usize,
    pub failed: usize,
    /// The first few failures, described.
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl Report {
    pub fn within_budget(&self) -> bool {
        self.budget.map_or(true, |b| self.elapsed <= b)
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checks > 0 && self.within_budget()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {:<14} checks={:<9} failed={:<5} time={:.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks,
            self.failed,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(b) = self.budget {
            write!(f, " (limit {}s)", b.as_secs())?;
        }
        Ok(())
    }
}

const KEPT_FAILURES: usize = 25;

#[derive(Default)]
struct Tally {
    checks: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    /// A verification error is a failed check; anything else aborts the suite.
    fn verified<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Result<Option<T>> {
        self.checks += 1;
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Verification(msg)) => {
                self.fail(format!("{}: {msg}", what()));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// Run one suite by name, or all of them for `"all"`.
pub fn run(name: &str, options: VerifyOptions) -> Result<Vec<Report>> {
    if name == "all" {
        return Ok((1..=SUITES.len()).map(|id| run_criterion(id, options)).collect());
    }
    match SUITES.iter().position(|&s| s == name) {
        Some(k) => Ok(vec![run_criterion(k + 1, options)]),
        None => Err(Error::Precondition(format!("unknown suite {name}; expected one of {} or all", SUITES.join(", ")))),
    }
}

/// Run the suite for criterion `id` (1-based).
pub fn run_criterion(id: usize, options: VerifyOptions) -> Report {
    let minute = Duration::from_secs(60);
    let (body, budget): (fn(&mut Tally, VerifyOptions) -> Result<()>, Option<Duration>) = match id {
        1 => (orders, Some(minute)),
        2 => (deodhar, Some(minute)),
        3 => (cores, Some(10 * minute)),
        4 => (centralizers, Some(10 * minute)),
        5 => (center_factor, None),
        6 => (lemmas, None),
        7 => (isomorphism, None),
        8 => (aut, None),
        9 => (hom_monoid, None),
        10 => (richardson, None),
        _ => panic!("no criterion {id}"),
    };
    let start = Instant::now();
    let mut tally = Tally::default();
    if let Err(e) = body(&mut tally, options) {
        tally.fail(format!("suite aborted: {e}"));
    }
    Report {
        id,
        name: SUITES[id - 1],
        checks: tally.checks,
        failed: tally.failed,
        failures: tally.failures,
        elapsed: start.elapsed(),
        budget,
    }
}

// ---------------------------------------------------------------------------
// shared helpers

fn enumerate(graph: &CoxeterGraph, cap: usize) -> Result<EnumeratedGroup> {
    let g = EnumeratedGroup::with_cap(graph, cap)?;
    g.ensure_table();
    Ok(g)
}

fn catalog(t: TypeLabel) -> Result<EnumeratedGroup> {
    enumerate(&build_named(t)?, 20_000)
}

fn product_graph(labels: &[TypeLabel]) -> Result<CoxeterGraph> {
    let mut g = build_named(labels[0])?;
    for &t in &labels[1..] {
        g = g.disjoint_union(&build_named(t)?, "'")?;
    }
    Ok(g)
}

fn order_of(t: TypeLabel) -> u64 {
    group_order(t).as_usize().expect("finite catalog type") as u64
}

fn pool(bound: u64) -> Vec<(TypeLabel, u64)> {
    finite_catalog_up_to(bound).into_iter().map(|t| (t, order_of(t))).collect()
}

/// Nonempty multisets from `pool` whose order product is at most `bound`.
fn multisets(pool: &[(TypeLabel, u64)], bound: u64) -> Vec<(Vec<TypeLabel>, u64)> {
    fn extend(
        pool: &[(TypeLabel, u64)],
        start: usize,
        bound: u64,
        cur: &mut Vec<TypeLabel>,
        order: u64,
        out: &mut Vec<(Vec<TypeLabel>, u64)>,
    ) {
        for i in start..pool.len() {
            let (t, o) = pool[i];
            if order * o > bound {
                continue;
            }
            cur.push(t);
            out.push((cur.clone(), order * o));
            extend(pool, i, bound, cur, order * o, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(pool, 0, bound, &mut Vec::new(), 1, &mut out);
    out
}

fn names(labels: &[TypeLabel]) -> String {
    labels.iter().join("+")
}

/// 1-based indices to a vertex set.
fn set1(ix: &[usize]) -> VertexSet {
    VertexSet::from_indices(ix.iter().map(|i| i - 1))
}

fn proper_subsets(g: &CoxeterGraph) -> impl Iterator<Item = VertexSet> {
    let all = g.vertices();
    all.subsets().filter(move |s| !s.is_empty() && *s != all)
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

/// Alternating word `... s2 s1 s2` with `k` letters (0-based generators).
fn alternating_ending_in_s2(k: usize) -> Vec<usize> {
    (0..k).map(|j| if (k - 1 - j) % 2 == 0 { 1 } else { 0 }).collect()
}

fn cyclic(p: usize) -> TableGroup {
    let table = (0..p).flat_map(|a| (0..p).map(move |b| ((a + b) % p) as ElemId)).collect();
    TableGroup::from_table(p, table, vec![1])
}

fn is_bijection(map: &[ElemId]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
}

fn inverse_map(map: &[ElemId]) -> Vec<ElemId> {
    let mut out = vec![0; map.len()];
    for (i, &x) in map.iter().enumerate() {
        out[x as usize] = i as ElemId;
    }
    out
}

// ---------------------------------------------------------------------------
// criterion 1

fn order_types() -> Vec<TypeLabel> {
    use TypeLabel::*;
    let mut v: Vec<TypeLabel> = (1..=6).map(A).collect();
    v.extend((2..=5).map(B));
    v.extend([D(4), D(5), F4, H(3), H(4)]);
    v.extend((3..=14).map(I2));
    v
}

fn orders(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    for label in order_types() {
        let g = EnumeratedGroup::with_cap(&build_named(label)?, 20_000)?;
        let expected = group_order(label).as_usize();
        t.check(expected == Some(g.order()), || format!("{label}: enumerated {} vs closed form {expected:?}", g.order()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 2

fn all_deodhar_options() -> Vec<DeodharOptions> {
    [Variant::First, Variant::Second]
        .into_iter()
        .cartesian_product([ComponentOrder::LargestVertex, ComponentOrder::SmallestVertex])
        .map(|(variant, order)| DeodharOptions { variant, order })
        .collect()
}

fn deodhar(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    use TypeLabel::*;
    let mut types = order_types();
    types.extend([E(6), E(7), E(8)]);
    for &label in &types {
        let sys = CoxeterSystem::new(&build_named(label)?)?;
        for set in sys.graph().vertices().subsets() {
            let w0 = longest_element(&sys, set)?;
            let length = sys.length(&w0.element);
            for options in all_deodhar_options() {
                let dec = deodhar_decompose(&sys, set, options)?;
                let what = || format!("{label} I={} {options:?}", sys.graph().format_subset(set));
                t.check(dec.product(&sys) == w0.element, || format!("{}: product is not w0(I)", what()));
                t.check(dec.steps.len() % 2 == length % 2, || format!("{}: parity differs from the length", what()));
                let seq = dec.sequence();
                let mut chain = std::iter::once(set).chain(seq.iter().copied());
                let decreasing = chain.clone().zip(chain.by_ref().skip(1)).all(|(a, b)| b.is_subset(a) && b != a);
                t.check(decreasing && seq.last().map_or(set.is_empty(), |s| s.is_empty()), || {
                    format!("{}: generator sequence is not a strict chain down to the empty set", what())
                });
                for (a, b) in dec.steps.iter().tuple_combinations() {
                    let ra = sys.roots().coords(a.root);
                    let rb = sys.roots().coords(b.root);
                    t.check(sys.form().eval(&ra, &rb).abs() < 1e-9, || format!("{}: roots not orthogonal", what()));
                    t.check(sys.compose(&a.reflection, &b.reflection) == sys.compose(&b.reflection, &a.reflection), || {
                        format!("{}: reflections do not commute", what())
                    });
                }
            }
        }
    }
    sequence_goldens(t)?;
    b_chain(t)?;
    highest_roots(t)?;
    verification_words(t)?;
    dihedral_root_formula(t)?;
    Ok(())
}

fn sequence_goldens(t: &mut Tally) -> Result<()> {
    use TypeLabel::*;
    let to_sets = |v: &[&[usize]]| v.iter().map(|s| set1(s)).collect::<Vec<_>>();
    let goldens: Vec<(TypeLabel, Vec<VertexSet>)> = vec![
        (H(3), to_sets(&[&[1, 3], &[1], &[]])),
        (H(4), to_sets(&[&[1, 2, 3], &[1, 3], &[1], &[]])),
        (F4, to_sets(&[&[2, 3, 4], &[2, 3], &[2], &[]])),
        (E(7), to_sets(&[&[2, 3, 4, 5, 6, 7], &[2, 3, 4, 5, 7], &[2, 3, 4, 5], &[2, 3, 5], &[2, 3], &[2], &[]])),
        (
            E(8),
            to_sets(&[
                &[1, 2, 3, 4, 5, 6, 7],
                &[2, 3, 4, 5, 6, 7],
                &[2, 3, 4, 5, 7],
                &[2, 3, 4, 5],
                &[2, 3, 5],
                &[2, 3],
                &[2],
                &[],
            ]),
        ),
        (D(4), to_sets(&[&[1, 2, 4], &[1, 2], &[1], &[]])),
        (D(6), to_sets(&[&[1, 2, 3, 4, 6], &[1, 2, 3, 4], &[1, 2, 4], &[1, 2], &[1], &[]])),
        (
            D(8),
            to_sets(&[
                &[1, 2, 3, 4, 5, 6, 8],
                &[1, 2, 3, 4, 5, 6],
                &[1, 2, 3, 4, 6],
                &[1, 2, 3, 4],
                &[1, 2, 4],
                &[1, 2],
                &[1],
                &[],
            ]),
        ),
        (D(5), to_sets(&[&[1, 2, 3, 5], &[1, 2, 3], &[3], &[]])),
        (D(7), to_sets(&[&[1, 2, 3, 4, 5, 7], &[1, 2, 3, 4, 5], &[1, 2, 3, 5], &[1, 2, 3], &[3], &[]])),
    ];
    for (label, expected) in goldens {
        let sys = CoxeterSystem::new(&build_named(label)?)?;
        let got = deodhar_decompose(&sys, sys.graph().vertices(), DeodharOptions::default())?.sequence();
        t.check(got == expected, || format!("{label}: generator sequence {got:?}, expected {expected:?}"));
    }
    Ok(())
}

/// `w0(S(B_n)) = r(B_n,1) r(B_{n-1},1) ... r(B_2,1) s1`, with the matching chain of prefixes.
fn b_chain(t: &mut Tally) -> Result<()> {
    let r2 = std::f64::consts::SQRT_2;
    for n in 2..=5usize {
        let sys = CoxeterSystem::new(&build_named(TypeLabel::B(n as u32))?)?;
        let id = GraphIso::identity(n);
        let dec = deodhar_decompose(&sys, sys.graph().vertices(), DeodharOptions::default())?;
        let mut expected = Vec::new();
        for k in (2..=n).rev() {
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            v[1..k].iter_mut().for_each(|x| *x = r2);
            expected.push(sys.reflection(sys.root_id(&v)?));
        }
        expected.push(sys.generator(0));
        let got: Vec<_> = dec.reflections().cloned().collect();
        t.check(got == expected, || format!("B{n}: reflections are not the highest-root chain"));
        let seq: Vec<VertexSet> = (0..n).rev().map(|k| prefix(&id, k)).collect();
        t.check(dec.sequence() == seq, || format!("B{n}: sequence {:?} is not the prefix chain", dec.sequence()));
    }
    Ok(())
}

fn highest_roots(t: &mut Tally) -> Result<()> {
    use TypeLabel::*;
    let mut types: Vec<TypeLabel> = (1..=6).map(A).collect();
    types.extend((2..=6).map(B));
    types.extend([D(4), D(5), D(6), E(6), F4, H(3), H(4)]);
    types.extend((5..=14).map(I2));
    for label in types {
        let label = label.canonical()?;
        let sys = CoxeterSystem::new(&build_named(label)?)?;
        let n = sys.rank();
        for variant in [Variant::First, Variant::Second].into_iter().take(variant_count(label)) {
            let entry = highest_root_entry(label, variant)?;
            let v = &entry.coefficients;
            let Ok(root) = sys.root_id(v) else {
                t.fail(format!("{label} {variant:?}: highest root is not a root"));
                continue;
            };
            t.check((sys.form().eval(v, v) - 1.0).abs() < 1e-9, || format!("{label} {variant:?}: not a unit vector"));
            let contact = match entry.contact {
                Contact::Single(a) => set1(&[a]),
                Contact::Double(a, b) => set1(&[a, b]),
            };
            for j in 0..n {
                let ip = sys.form().with_simple(j, v);
                let ok = if contact.contains(j) { ip > 1e-9 } else { ip.abs() < 1e-9 };
                t.check(ok, || format!("{label} {variant:?}: <root, a{}> = {ip}", j + 1));
            }
            let rest = sys.graph().vertices().difference(contact);
            let expected: Vec<_> = (0..sys.roots().positive_count() as u32)
                .filter(|&r| !sys.roots().support(r).is_subset(rest))
                .collect();
            t.check(sys.phi_w(&sys.reflection(root)) == expected, || {
                format!("{label} {variant:?}: inversion set of the highest reflection")
            });
        }
    }
    let conjugate_to = |label: TypeLabel, s: usize| -> Result<bool> {
        let g = catalog(label)?;
        let root = g.system().root_id(&highest_root_entry(label, Variant::First)?.coefficients)?;
        Ok(conjugacy_class(&g, g.generator_id(s)).contains(&g.reflection_id(root)))
    };
    for n in 2..=5 {
        t.check(conjugate_to(B(n), 0)?, || format!("B{n}: highest reflection not conjugate to s1"));
    }
    for m in [6, 10, 14] {
        t.check(conjugate_to(I2(m), 1)?, || format!("I2({m}): highest reflection not conjugate to s2"));
    }
    Ok(())
}

fn verification_words(t: &mut Tally) -> Result<()> {
    use TypeLabel::*;
    let mut check = |label: TypeLabel, variant: Variant, word: &[usize], start: Vec<f64>| -> Result<()> {
        let sys = CoxeterSystem::new(&build_named(label)?)?;
        let got = sys.act_vector(&sys.word(word), &start);
        let entry = highest_root_entry(label, variant)?;
        t.check(close(&got, &entry.coefficients), || format!("{label} {variant:?}: word image {got:?}"));
        Ok(())
    };
    check(F4, Variant::First, &[0, 1, 2, 3, 1, 2, 1], unit(4, 0))?;
    check(F4, Variant::Second, &[3, 2, 1, 0, 2, 1, 2], unit(4, 3))?;
    check(H(3), Variant::First, &[1, 0, 1, 0, 2, 1], unit(3, 0))?;
    let c = 2.0 * (PI / 5.0).cos();
    check(
        H(4),
        Variant::First,
        &[3, 2, 1, 0, 1, 0, 2, 1, 0, 3, 2, 1, 0, 1, 2, 3],
        vec![c + 1.0, 2.0 * c, c, 0.0],
    )?;
    for k in 2..=6usize {
        check(I2(2 * k as u32 + 1), Variant::First, &alternating_ending_in_s2(k), unit(2, 0))?;
    }
    for k in 2..=3usize {
        let m = 4 * k as u32;
        let first: Vec<usize> = [1, 0].repeat(k - 1).into_iter().chain([1]).collect();
        let second: Vec<usize> = [0, 1].repeat(k - 1).into_iter().chain([0]).collect();
        check(I2(m), Variant::First, &first, unit(2, 0))?;
        check(I2(m), Variant::Second, &second, unit(2, 1))?;
    }
    for k in 1..=3usize {
        let m = 4 * k as u32 + 2;
        check(I2(m), Variant::First, &[1, 0].repeat(k), unit(2, 1))?;
        check(I2(m), Variant::Second, &[0, 1].repeat(k), unit(2, 0))?;
    }
    Ok(())
}

/// `(... s2 s1 s2) . a1` in `I2(m)` by the sine formula.
fn dihedral_root_formula(t: &mut Tally) -> Result<()> {
    for m in 3..=14u32 {
        let sys = CoxeterSystem::new(&build_named(TypeLabel::I2(m))?)?;
        let s = |k: usize| (k as f64 * PI / m as f64).sin() / (PI / m as f64).sin();
        for k in 0..2 * m as usize {
            let got = sys.act_vector(&sys.word(&alternating_ending_in_s2(k)), &unit(2, 0));
            let expected = if k % 2 == 1 { vec![s(k), s(k + 1)] } else { vec![s(k + 1), s(k)] };
            t.check(close(&got, &expected), || format!("I2({m}), k={k}: {got:?} vs {expected:?}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 3

fn irreducible_graphs(bound: u64) -> Result<Vec<(String, CoxeterGraph)>> {
    let mut out: Vec<(String, CoxeterGraph)> =
        finite_catalog_up_to(bound).into_iter().map(|t| Ok((t.to_string(), build_named(t)?))).collect::<Result<_>>()?;
    out.push(("A3 as D3".into(), build_named(TypeLabel::D(3))?));
    Ok(out)
}

fn cores(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    for (name, graph) in irreducible_graphs(1152)? {
        let g = enumerate(&graph, 2000)?;
        for set in proper_subsets(&graph) {
            t.verified(core_of_normalizer_checked(&g, set), || format!("{name} I={}", graph.format_subset(set)))?;
        }
    }
    use TypeLabel::*;
    let goldens: [(TypeLabel, &[usize], &str, usize); 5] = [
        (B(3), &[1], "(i)", 8),
        (A(2), &[1], "(iii)", 1),
        (H(3), &[1, 3], "(iii)", 2),
        (D(4), &[1, 2], "(ii)", 8),
        (D(3), &[1, 2], "(ii)", 4),
    ];
    for (label, ix, case, order) in goldens {
        let g = catalog(label)?;
        if let Some((answer, sub)) = t.verified(core_of_normalizer_checked(&g, set1(ix)), || format!("{label} {ix:?}"))? {
            t.check(answer.case == case && sub.order() == order, || {
                format!("{label} {ix:?}: case {} order {}, expected {case} order {order}", answer.case, sub.order())
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 4

fn centralizers(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    use TypeLabel::*;
    let mut labels = vec![A(3), B(2), B(3), D(3), D(4), H(3), F4];
    labels.extend((5..=10).map(I2));
    let with_prop = |l: TypeLabel| matches!(l, A(3) | B(2) | B(3) | D(3) | D(4) | H(3)) || matches!(l, I2(m) if m <= 8);
    for label in labels {
        let g = catalog(label)?;
        let reps = involution_class_representatives(&g);
        let mut normals: HashSet<Subgroup> = HashSet::new();
        for mask in 0u64..1 << reps.len() {
            let xs: Vec<ElemId> = (0..reps.len()).filter(|&k| mask >> k & 1 == 1).map(|k| reps[k]).collect();
            t.verified(centralizer_of_normal_closure_checked(&g, &xs), || format!("{label} X={xs:?}"))?;
            normals.insert(normal_closure(&g, &xs));
        }
        if !with_prop(label) {
            continue;
        }
        let mut core_cache: HashMap<VertexSet, Subgroup> = HashMap::new();
        for h in &normals {
            let xh = x_h(&g, h)?;
            let ids: Vec<ElemId> = xh.iter().map(|&(_, w)| w).collect();
            t.check(normal_closure(&g, &ids) == *h, || format!("{label}: H of order {} is not generated by X_H", h.order()));
            let mut meet = Subgroup::whole(g.order());
            for &(set, _) in &xh {
                let c = core_cache.entry(set).or_insert_with(|| core_of_normalizer_brute(&g, set));
                meet = meet.intersection(c);
            }
            t.check(meet == centralizer(&g, &generating_set(&g, h)), || {
                format!("{label}: intersection of cores differs from Z_W(H) for |H| = {}", h.order())
            });
        }
    }
    let goldens: [(TypeLabel, ElemIdSpec, &str, usize); 3] = [
        (B(3), ElemIdSpec::Generator(0), "(ii)", 8),
        (A(2), ElemIdSpec::Generator(0), "(iv)", 1),
        (B(2), ElemIdSpec::Longest, "(i)", 8),
    ];
    for (label, given, case, order) in goldens {
        let g = catalog(label)?;
        let x = match given {
            ElemIdSpec::Generator(s) => g.generator_id(s),
            ElemIdSpec::Longest => g.id_of(&longest_element(g.system(), g.graph().vertices())?.element).expect("w0"),
        };
        if let Some((answer, sub)) = t.verified(centralizer_of_normal_closure_checked(&g, &[x]), || format!("{label}"))? {
            t.check(answer.case == case && sub.order() == order, || {
                format!("{label}: case {} order {}, expected {case} order {order}", answer.case, sub.order())
            });
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum ElemIdSpec {
    Generator(usize),
    Longest,
}

// ---------------------------------------------------------------------------
// criterion 5

fn center_factor(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    use TypeLabel::*;
    let z2 = TableGroup::from_group(&catalog(A(1))?);
    for label in [B(3), B(4), B(5), D(4), F4, H(3), I2(6), I2(8), I2(10), I2(12)] {
        let g = catalog(label)?;
        let z = center(&g);
        t.check(z == center_closed_form(&g)?, || format!("{label}: center differs from the closed form"));
        let complements: Vec<Subgroup> = homomorphisms(&g, &z2, &[0, 1])?
            .into_iter()
            .map(|f| Subgroup::from_ids(g.order(), g.elements().filter(|&w| f[w as usize] == 0)))
            .filter(|k| k.order() * 2 == g.order() && k.intersection(&z).is_trivial())
            .collect();
        let brute = z.order() == 2 && !complements.is_empty();
        let closed = center_direct_factor(label)?;
        t.check(brute == matches!(closed, CenterFactor::Yes(_)), || {
            format!("{label}: brute force says {brute}, closed form says {closed}")
        });
        let vanishing = HomMonoid::new(&g).enumerate()?.iter().all(|f| z.ids().iter().all(|&w| f.apply(w) == 0));
        t.check(vanishing == !brute, || format!("{label}: vanishing-center conditions disagree"));
        let CenterFactor::Yes(complement_type) = closed else {
            continue;
        };
        if let Some(kernel) = center_complement(&g)? {
            t.check(complements.contains(&kernel), || format!("{label}: closed-form complement is not a complement"));
        }
        let k = &complements[0];
        let (kt, _) = TableGroup::from_subgroup(&g, k, &generating_set(&g, k));
        let prod = TableGroup::direct_product(&z2, &kt);
        t.check(find_isomorphism(&g, &prod)?.is_some(), || format!("{label}: not isomorphic to Z x complement"));
        if complement_type.is_finite() && !matches!(complement_type, E7Plus | H3Plus) {
            let other = catalog(complement_type)?;
            t.check(find_isomorphism(&kt, &other)?.is_some(), || {
                format!("{label}: complement is not of type {complement_type}")
            });
        }
    }
    even_h3(t)
}

/// The rotation subgroup of `W(H3)` is not a Coxeter group.
fn even_h3(t: &mut Tally) -> Result<()> {
    let g = catalog(TypeLabel::H(3))?;
    let k = rotation_subgroup(&g);
    t.check(k.order() == 60, || format!("H3+: order {}", k.order()));
    let (kt, _) = TableGroup::from_subgroup(&g, &k, &generating_set(&g, &k));
    t.check(center(&kt).is_trivial(), || "H3+: center is not trivial".into());
    let involutions: Vec<ElemId> = kt.elements().filter(|&x| x != 0 && kt.mul(x, x) == 0).collect();
    t.check(closure(&kt, &involutions).order() == 60, || "H3+: not generated by involutions".into());
    t.check(!is_directly_decomposable(&kt), || "H3+: directly decomposable".into());
    let candidates: Vec<Vec<TypeLabel>> =
        multisets(&pool(60), 60).into_iter().filter(|(_, o)| *o == 60).map(|(m, _)| m).collect();
    t.check(!candidates.is_empty(), || "no Coxeter groups of order 60 found".into());
    for labels in candidates {
        let other = enumerate(&product_graph(&labels)?, 60)?;
        t.check(find_isomorphism(&kt, &other)?.is_none(), || format!("H3+ is isomorphic to W({})", names(&labels)));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 6

fn lemmas(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    for (name, graph) in irreducible_graphs(400)? {
        let g = enumerate(&graph, 400)?;
        parabolic_properties(t, &name, &g)?;
    }
    special_normalizers(t)?;
    use TypeLabel::*;
    for labels in [vec![A(2)], vec![B(2)], vec![A(1), A(2)]] {
        let g = enumerate(&product_graph(&labels)?, 100)?;
        core_properties(t, &names(&labels), &g);
    }
    relation_battery(t)
}

fn parabolic_properties(t: &mut Tally, name: &str, g: &EnumeratedGroup) -> Result<()> {
    let graph = g.graph();
    let sys = g.system();
    let all = graph.vertices();
    let subsets: Vec<VertexSet> = all.subsets().collect();
    let mut normalizers: HashMap<VertexSet, Subgroup> = HashMap::new();
    let mut cores: HashMap<VertexSet, Subgroup> = HashMap::new();
    for &set in &subsets {
        let parabolic = g.parabolic(set);
        let n = normalizer(g, &parabolic);
        let c = core(g, &n);
        if !set.is_empty() && set != all {
            t.check(core(g, &parabolic).is_trivial(), || format!("{name}: Core(W_I) nontrivial for {}", graph.format_subset(set)));
        }
        // w normalizes W_I exactly when it maps the roots of W_I to themselves
        let stabilizer = Subgroup::from_ids(
            g.order(),
            g.elements().filter(|&w| set.iter().all(|s| sys.roots().support(g.element(w).images[s]).is_subset(set))),
        );
        t.check(stabilizer == n, || format!("{name}: root characterisation of N(W_I) fails for {}", graph.format_subset(set)));
        // N(W_I) = W_I x| N_I with N_I the stabilizer of the simple roots of I
        let n_i = Subgroup::from_ids(
            g.order(),
            g.elements().filter(|&w| {
                let images = &g.element(w).images;
                let mapped = VertexSet::from_indices(set.iter().map(|s| images[s] as usize).filter(|&r| r < graph.rank()));
                mapped == set && set.iter().all(|s| (images[s] as usize) < graph.rank())
            }),
        );
        t.check(
            closure(g, n_i.ids()) == n_i
                && n_i.intersection(&parabolic).is_trivial()
                && n_i.is_subset(&n)
                && n_i.order() * parabolic.order() == n.order(),
            || format!("{name}: N(W_I) is not W_I x| N_I for {}", graph.format_subset(set)),
        );
        let w0 = longest_element(sys, set)?;
        if !set.is_empty() && w0.is_central() {
            let id = g.id_of(&w0.element).expect("w0");
            t.check(centralizer(g, &[id]) == n, || format!("{name}: Z(w0(I)) != N(W_I) for {}", graph.format_subset(set)));
        }
        normalizers.insert(set, n);
        cores.insert(set, c);
    }
    for &i in &subsets {
        for &j in &subsets {
            let meet = normalizers[&i].intersection(&normalizers[&j]);
            t.check(meet.is_subset(&normalizers[&i.intersection(j)]), || {
                format!("{name}: N(W_I) n N(W_J) not in N(W_(I n J)) for {} {}", graph.format_subset(i), graph.format_subset(j))
            });
            if i.is_subset(j) && i != j && j.difference(i).is_subset(graph.perp(i)) {
                t.check(meet.is_subset(&normalizers[&j.difference(i)]), || {
                    format!("{name}: intersection property fails for {} {}", graph.format_subset(i), graph.format_subset(j))
                });
            }
        }
    }
    for &i in &subsets {
        let outside = all.difference(i).difference(graph.perp(i));
        for s in outside.iter() {
            t.check(cores[&i].is_subset(&cores[&i.with(s)]), || {
                format!("{name}: expansion property fails for I={} s={}", graph.format_subset(i), graph.name(s))
            });
        }
        if i.is_empty() {
            continue;
        }
        for s in all.difference(i).iter() {
            let dist = |u: usize| graph.distance(s, u).expect("connected");
            let near = i.iter().map(dist).min().expect("nonempty");
            let far = all.iter().map(dist).max().expect("nonempty");
            for k in near + 1..=far {
                let j = VertexSet::from_indices(i.iter().filter(|&u| dist(u) >= k));
                t.check(cores[&i].is_subset(&cores[&j]), || {
                    format!("{name}: cutting property fails for I={} s={} k={k}", graph.format_subset(i), graph.name(s))
                });
            }
        }
    }
    for comp in graph.components(all, true) {
        let first = comp.lowest().expect("nonempty");
        for s in comp.iter() {
            t.check(cores[&VertexSet::singleton(s)] == cores[&VertexSet::singleton(first)], || {
                format!("{name}: shifting property fails for {} {}", graph.name(first), graph.name(s))
            });
        }
    }
    Ok(())
}

fn special_normalizers(t: &mut Tally) -> Result<()> {
    for n in 2..=4usize {
        let g = catalog(TypeLabel::B(n as u32))?;
        let id = GraphIso::identity(n);
        let meet = (1..n).fold(Subgroup::whole(g.order()), |acc, i| acc.intersection(&normalizer(&g, &g.parabolic(prefix(&id, i)))));
        let special = special_subgroup(&g, Family::B)?;
        t.check(meet == special, || format!("B{n}: intersection of normalizers is not G(B{n})"));
        t.check(special.order() == 1 << n && is_normal(&g, &special), || format!("B{n}: G(B{n}) has order {}", special.order()));
    }
    for n in 3..=4usize {
        let g = catalog(TypeLabel::D(n as u32))?;
        let id = GraphIso::identity(n);
        let meet = (2..n).fold(Subgroup::whole(g.order()), |acc, i| acc.intersection(&normalizer(&g, &g.parabolic(prefix(&id, i)))));
        let special = special_subgroup(&g, Family::D)?;
        let mut gens = special.ids().to_vec();
        gens.push(g.generator_id(0));
        let extended = closure(&g, &gens);
        t.check(meet == extended, || format!("D{n}: intersection of normalizers is not G(D{n}) x| <s1>"));
        t.check(
            special.order() == 1 << (n - 1) && is_normal(&g, &special) && extended.order() == 2 * special.order(),
            || format!("D{n}: G(D{n}) has order {}", special.order()),
        );
        t.check(core(&g, &extended) == special, || format!("D{n}: core of G(D{n}) x| <s1> is not G(D{n})"));
    }
    Ok(())
}

fn core_properties(t: &mut Tally, name: &str, g: &EnumeratedGroup) {
    let subs = all_subgroups(g);
    let cores: Vec<Subgroup> = subs.iter().map(|h| core(g, h)).collect();
    for (a, h1) in subs.iter().enumerate() {
        for (b, h2) in subs.iter().enumerate() {
            if h1.is_subset(h2) {
                t.check(cores[a].is_subset(&cores[b]), || format!("{name}: core is not monotone"));
                let disjoint_conjugate = g.elements().any(|w| conjugate_subgroup(g, w, h1).intersection(h2).is_trivial());
                if disjoint_conjugate {
                    t.check(h1.intersection(&cores[b]).is_trivial(), || format!("{name}: H1 n Core(H2) is not trivial"));
                }
            }
            if cores[a].is_subset(h2) {
                t.check(cores[a].is_subset(&cores[b]), || format!("{name}: Core(H) in H1 but not in Core(H1)"));
            }
            t.check(core(g, &h1.intersection(h2)) == cores[a].intersection(&cores[b]), || {
                format!("{name}: core does not commute with intersection")
            });
        }
    }
}

/// Exact relations among the longest elements of the prefixes in `B_n` and `D_n`.
fn relation_battery(t: &mut Tally) -> Result<()> {
    for n in 2..=5usize {
        let sys = CoxeterSystem::new(&build_named(TypeLabel::B(n as u32))?)?;
        let id = GraphIso::identity(n);
        let w0 = |i: usize| longest_element(&sys, prefix(&id, i)).map(|l| l.element);
        let s = |i: usize| sys.generator(i - 1);
        for i in 1..n {
            let lhs = sys.product([&s(i + 1), &w0(i)?, &s(i + 1)]);
            let rhs = sys.product([&w0(i - 1)?, &w0(i)?, &w0(i + 1)?]);
            t.check(lhs == rhs, || format!("B{n}: conjugation relation at i={i}"));
        }
        t.check(sys.product([&s(2), &s(1), &s(2)]) == sys.compose(&s(1), &w0(2)?), || format!("B{n}: s2 s1 s2 = s1 w0(B2)"));
        for i in 1..=n {
            let w = w0(i)?;
            t.check((1..=i).all(|j| sys.compose(&w, &s(j)) == sys.compose(&s(j), &w)), || {
                format!("B{n}: w0(B{i}) is not central in W(B{i})")
            });
        }
    }
    for n in 3..=5usize {
        let sys = CoxeterSystem::new(&build_named(TypeLabel::D(n as u32))?)?;
        let id = GraphIso::identity(n);
        let w0 = |i: usize| longest_element(&sys, prefix(&id, i)).map(|l| l.element);
        let s = |i: usize| sys.generator(i - 1);
        for i in 3..n {
            let lhs = sys.product([&s(i + 1), &w0(i)?, &s(i + 1)]);
            let rhs = sys.product([&w0(i - 1)?, &w0(i)?, &w0(i + 1)?]);
            t.check(lhs == rhs, || format!("D{n}: conjugation relation at i={i}"));
        }
        t.check(sys.product([&s(3), &w0(2)?, &s(3)]) == sys.compose(&w0(2)?, &w0(3)?), || {
            format!("D{n}: s3 w0(D2) s3 = w0(D2) w0(D3)")
        });
        for i in 2..=n {
            for j in i + 1..=n {
                t.check(sys.compose(&w0(i)?, &w0(j)?) == sys.compose(&w0(j)?, &w0(i)?), || {
                    format!("D{n}: w0(D{i}) and w0(D{j}) do not commute")
                });
            }
        }
        for odd in (3..=n).step_by(2) {
            let w = w0(odd)?;
            let a = sys.product([&s(1), &w, &s(1)]);
            let b = sys.product([&s(2), &w, &s(2)]);
            let c = sys.compose(&w0(2)?, &w);
            t.check(a == c && b == c, || format!("D{n}: s1 w0(D{odd}) s1 = s2 w0(D{odd}) s2 = w0(D2) w0(D{odd})"));
            t.check((3..=odd).all(|j| sys.compose(&w, &s(j)) == sys.compose(&s(j), &w)), || {
                format!("D{n}: w0(D{odd}) does not commute with s3..s{odd}")
            });
        }
        for even in (2..=n).step_by(2) {
            let w = w0(even)?;
            t.check((1..=even).all(|j| sys.compose(&w, &s(j)) == sys.compose(&s(j), &w)), || {
                format!("D{n}: w0(D{even}) is not central in W(D{even})")
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 7

fn isomorphism(t: &mut Tally, options: VerifyOptions) -> Result<()> {
    let all = multisets(&pool(240), 240);
    let summaries: Vec<ComponentMultiset> =
        all.iter().map(|(labels, _)| product_graph(labels).map(|g| ComponentMultiset::from_graph(&g))).collect::<Result<_>>()?;
    let mut by_order: HashMap<u64, Vec<usize>> = HashMap::new();
    for (k, (_, order)) in all.iter().enumerate() {
        by_order.entry(*order).or_default().push(k);
    }
    // Groups of different orders are never isomorphic.
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            if all[a].1 != all[b].1 {
                let verdict = coxeter_isomorphic(&summaries[a], &summaries[b]);
                t.check(verdict == Verdict::No, || format!("{} vs {}: {verdict} for different orders", names(&all[a].0), names(&all[b].0)));
            }
        }
    }
    for members in by_order.values() {
        let groups: Vec<EnumeratedGroup> =
            members.iter().map(|&k| enumerate(&product_graph(&all[k].0)?, 240)).collect::<Result<_>>()?;
        let decompositions: Vec<DirectDecomposition> = groups.iter().map(admissible_decomposition).collect::<Result<_>>()?;
        for x in 0..members.len() {
            for y in x..members.len() {
                let (a, b) = (members[x], members[y]);
                let verdict = coxeter_isomorphic(&summaries[a], &summaries[b]);
                let found = find_isomorphism(&groups[x], &groups[y])?;
                let label = || format!("{} vs {}", names(&all[a].0), names(&all[b].0));
                t.check((verdict == Verdict::Yes) == found.is_some() && verdict != Verdict::Unknown, || {
                    format!("{}: decider {verdict}, search found {}", label(), found.is_some())
                });
                if let Some(f) = found {
                    t.verified(factor_isomorphism(&groups[x], &decompositions[x], &groups[y], &decompositions[y], &f), label)?;
                }
            }
        }
    }
    random_condition_two(t, options)
}

fn random_condition_two(t: &mut Tally, options: VerifyOptions) -> Result<()> {
    use TypeLabel::*;
    let mut labels: Vec<TypeLabel> = (1..=8).map(A).collect();
    labels.extend((2..=8).map(B));
    labels.extend((4..=8).map(D));
    labels.extend([E(6), E(7), E(8), F4, H(3), H(4)]);
    labels.extend((5..=30).map(I2));
    let labels: Vec<TypeLabel> = labels.into_iter().map(|l| l.canonical()).collect::<Result<Vec<_>>>()?.into_iter().unique().collect();
    let mut rng = StdRng::seed_from_u64(options.seed);
    let random = |rng: &mut StdRng| -> Vec<TypeLabel> {
        let n = rng.gen_range(0..=5);
        (0..n).map(|_| labels[rng.gen_range(0..labels.len())]).collect()
    };
    let mut equal = 0;
    for _ in 0..options.random_multisets {
        let a = random(&mut rng);
        let b = match rng.gen_range(0..3) {
            0 => random(&mut rng),
            mode => {
                let mut b = Vec::new();
                for &x in &a {
                    let pieces = admissible_refinement(&[x])?;
                    let coxeter = pieces.iter().all(|p| !matches!(p, E7Plus | H3Plus));
                    if coxeter && rng.gen_bool(0.5) {
                        b.extend(pieces);
                    } else {
                        b.push(x);
                    }
                }
                if mode == 2 && !b.is_empty() {
                    let k = rng.gen_range(0..b.len());
                    b[k] = labels[rng.gen_range(0..labels.len())];
                }
                b
            }
        };
        let counted = condition_two(&a, &b);
        let refined = condition_two_by_refinement(&a, &b)?;
        equal += usize::from(refined);
        t.check(counted == refined, || format!("{} vs {}: counting {counted}, refinement {refined}", names(&a), names(&b)));
    }
    t.check(options.random_multisets == 0 || equal > 0, || "random pairs never satisfied condition (II)".into());
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 8

fn symmetric_product(sizes: &[u32]) -> Result<Option<EnumeratedGroup>> {
    let labels: Vec<TypeLabel> = sizes.iter().filter(|&&n| n >= 2).map(|&n| TypeLabel::A(n - 1)).collect();
    if labels.is_empty() {
        return Ok(None);
    }
    Ok(Some(enumerate(&product_graph(&labels)?, 2000)?))
}

/// Largest automorphism group the symmetric-product sweep enumerates.
const AUT_LISTING_LIMIT: u32 = 50_000;

fn aut(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    for (sizes, expected) in [(vec![2, 3], 12u32), (vec![3, 3], 72), (vec![4], 24), (vec![2, 2], 6)] {
        let formula = aut_order_symproduct(&sizes);
        let g = symmetric_product(&sizes)?.expect("nontrivial");
        let brute = automorphisms(&g)?.len();
        t.check(formula == expected.into() && brute == expected as usize, || {
            format!("Sym{sizes:?}: formula {formula}, brute force {brute}, expected {expected}")
        });
    }
    t.check(aut_order_symproduct(&[1, 1, 1, 1, 1]) == 1u32.into(), || "trivial product".into());
    // every multiset of symmetric groups with order at most 1200
    let factorial = |n: u32| (1..=n as u64).product::<u64>();
    let sym_pool: Vec<(u32, u64)> = (2..=6).map(|n| (n, factorial(n))).collect();
    let mut stack: Vec<(Vec<u32>, u64, usize)> = vec![(Vec::new(), 1, 0)];
    while let Some((sizes, order, start)) = stack.pop() {
        for (i, &(n, o)) in sym_pool.iter().enumerate().skip(start) {
            if order * o <= 1200 {
                let mut next = sizes.clone();
                next.push(n);
                stack.push((next, order * o, i));
            }
        }
        let formula = aut_order_symproduct(&sizes);
        // brute force lists every automorphism, so huge counts such as GL(10, 2) are out of reach
        if formula > AUT_LISTING_LIMIT.into() {
            continue;
        }
        let Some(g) = symmetric_product(&sizes)? else {
            continue;
        };
        let brute = automorphisms(&g)?.len();
        t.check(formula == brute.into(), || format!("Sym{sizes:?}: formula {formula}, brute force {brute}"));
        let mut padded = sizes.clone();
        padded.extend([1, 1]);
        t.check(aut_order_symproduct(&padded) == formula, || format!("Sym{sizes:?}: trivial factors change the count"));
        let budget = aut_decomposition(&g, &admissible_decomposition(&g)?)?;
        t.check(budget.order() == brute.into(), || format!("Sym{sizes:?}: budget {budget:?} vs brute force {brute}"));
    }
    use TypeLabel::*;
    let cases: [(Vec<TypeLabel>, Option<[u32; 4]>); 6] = [
        (vec![A(1), A(2)], Some([2, 6, 1, 1])),
        (vec![A(2), A(2)], Some([1, 36, 2, 1])),
        (vec![A(1)], None),
        (vec![B(3)], None),
        (vec![I2(6)], None),
        (vec![A(1), B(2)], None),
    ];
    for (labels, expected) in cases {
        let g = enumerate(&product_graph(&labels)?, 2000)?;
        let brute = automorphisms(&g)?.len();
        for (kind, dec) in [("components", component_decomposition(&g)), ("admissible", admissible_decomposition(&g)?)] {
            if kind == "components" && labels.iter().any(|&l| matches!(center_direct_factor(l), Ok(CenterFactor::Yes(_)))) {
                continue;
            }
            let budget = aut_decomposition(&g, &dec)?;
            t.check(budget.order() == brute.into(), || format!("{}: {kind} budget {budget:?} vs brute force {brute}", names(&labels)));
            if let Some([h1, h2, h3, h4]) = expected {
                t.check(
                    budget.h1 == h1.into() && budget.h2 == h2.into() && budget.h3 == h3.into() && budget.h4 == h4.into(),
                    || format!("{}: budget {budget:?}", names(&labels)),
                );
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 9

fn hom_monoid(t: &mut Tally, options: VerifyOptions) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(options.seed ^ 0x9e37_79b9);
    for (labels, _) in multisets(&pool(24), 24) {
        let eg = enumerate(&product_graph(&labels)?, 24)?;
        let g = TableGroup::from_group(&eg);
        monoid_laws(t, &names(&labels), &eg, &g, &mut rng, options.random_pairs)?;
    }
    Ok(())
}

fn compose(a: &[ElemId], b: &[ElemId]) -> Vec<ElemId> {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn monoid_laws(
    t: &mut Tally,
    name: &str,
    eg: &EnumeratedGroup,
    g: &TableGroup,
    rng: &mut StdRng,
    samples: usize,
) -> Result<()> {
    let m = HomMonoid::new(g);
    let z = m.center().clone();
    let homs = m.enumerate()?;
    let index: HashMap<&CentralHom, usize> = homs.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let unit = m.unit();
    let n = g.order();
    for f in &homs {
        let ok = g.elements().all(|x| z.contains(f.apply(x)) && g.elements().all(|y| f.apply(g.mul(x, y)) == g.mul(f.apply(x), f.apply(y))));
        t.check(ok, || format!("{name}: a central map is not a homomorphism into Z"));
        t.check(m.star(&unit, f) == *f && m.star(f, &unit) == *f, || format!("{name}: unit law"));
    }
    let flats: Vec<Vec<ElemId>> = homs.iter().map(|f| m.flat(f)).collect();
    t.check(flats.iter().collect::<HashSet<_>>().len() == homs.len(), || format!("{name}: flat is not injective"));
    for fl in &flats {
        let ok = g.elements().all(|x| g.elements().all(|y| fl[g.mul(x, y) as usize] == g.mul(fl[x as usize], fl[y as usize])));
        t.check(ok, || format!("{name}: flat is not an endomorphism"));
    }
    let h = homs.len();
    let pairs: Vec<(usize, usize)> = if h * h <= 300_000 {
        (0..h).cartesian_product(0..h).collect()
    } else {
        (0..samples).map(|_| (rng.gen_range(0..h), rng.gen_range(0..h))).collect()
    };
    for &(a, b) in &pairs {
        let p = m.star(&homs[a], &homs[b]);
        t.check(index.contains_key(&p), || format!("{name}: star leaves the monoid"));
        t.check(m.flat(&p) == compose(&flats[a], &flats[b]), || format!("{name}: flat is not multiplicative"));
    }
    let triples: Vec<(usize, usize, usize)> = if h <= 64 {
        (0..h).cartesian_product(0..h).cartesian_product(0..h).map(|((a, b), c)| (a, b, c)).collect()
    } else {
        (0..samples / 4).map(|_| (rng.gen_range(0..h), rng.gen_range(0..h), rng.gen_range(0..h))).collect()
    };
    for (a, b, c) in triples {
        let left = m.star(&m.star(&homs[a], &homs[b]), &homs[c]);
        let right = m.star(&homs[a], &m.star(&homs[b], &homs[c]));
        t.check(left == right, || format!("{name}: star is not associative"));
    }
    // the three characterisations of invertibility
    let mut invertible = Vec::new();
    for (k, f) in homs.iter().enumerate() {
        let flag = m.is_invertible(f);
        let aut_flag = is_bijection(&flats[k]);
        let on_center = z.ids().iter().map(|&w| flats[k][w as usize]).collect::<HashSet<_>>();
        let center_flag = on_center.len() == z.order() && on_center.iter().all(|&w| z.contains(w));
        t.check(flag == aut_flag && flag == center_flag, || format!("{name}: invertibility criteria disagree"));
        if flag {
            invertible.push(k);
            let inv = m.invert(f).expect("invertible");
            t.check(m.star(f, &inv) == unit && m.star(&inv, f) == unit, || format!("{name}: inverse is wrong"));
            if f.values.iter().enumerate().all(|(w, &v)| !z.contains(w as ElemId) || v == 0) {
                let pointwise = CentralHom { values: f.values.iter().map(|&v| g.inv(v)).collect() };
                t.check(inv == pointwise, || format!("{name}: inverse of a map trivial on Z is not pointwise"));
            }
        }
        if h <= 512 {
            let exists = homs.iter().any(|other| m.star(f, other) == unit && m.star(other, f) == unit);
            t.check(exists == flag, || format!("{name}: brute-force inverse search disagrees"));
        }
    }
    // maps trivial on the center multiply pointwise and commute
    let trivial_on_z: Vec<usize> = (0..h).filter(|&k| z.ids().iter().all(|&w| homs[k].apply(w) == 0)).collect();
    for (&a, &b) in trivial_on_z.iter().cartesian_product(trivial_on_z.iter()).take(samples) {
        let pointwise = CentralHom { values: g.elements().map(|w| g.mul(homs[a].apply(w), homs[b].apply(w))).collect() };
        t.check(m.star(&homs[a], &homs[b]) == pointwise, || format!("{name}: star is not pointwise on maps trivial on Z"));
    }
    if h <= 512 {
        let auts = automorphisms(g)?;
        for a in &auts {
            let a_inv = inverse_map(a);
            for (k, f) in homs.iter().enumerate() {
                let moved = CentralHom { values: compose(a, &compose(&f.values, &a_inv)) };
                let Some(&j) = index.get(&moved) else {
                    t.fail(format!("{name}: Aut(G) does not act on the monoid"));
                    continue;
                };
                t.check(flats[j] == compose(a, &compose(&flats[k], &a_inv)), || format!("{name}: flat is not equivariant"));
            }
        }
    }
    if is_abelian(g) && n <= 16 {
        let ends = homomorphisms(g, g, &g.elements().collect::<Vec<_>>())?;
        t.check(ends.len() == h, || format!("{name}: Hom(G, Z(G)) != End(G) for abelian G"));
        for (k, fl) in flats.iter().enumerate() {
            let again = m.flat(&CentralHom { values: fl.clone() });
            t.check(again == homs[k].values, || format!("{name}: double flat is not the identity"));
        }
        let auts = automorphisms(g)?.len();
        t.check(auts == invertible.len(), || format!("{name}: |Aut(G)| = {auts} but {} invertible maps", invertible.len()));
    }
    semidirect(t, name, eg, g, &m, &homs, &invertible)?;
    vanishing_center(t, name, g, &z, &homs)
}

/// `Hom(G, Z(G))^x = H1 x| H2` for `G = G1 x G2` with `Z(G2) = 1`.
fn semidirect(
    t: &mut Tally,
    name: &str,
    eg: &EnumeratedGroup,
    g: &TableGroup,
    m: &HomMonoid<'_, TableGroup>,
    homs: &[CentralHom],
    invertible: &[usize],
) -> Result<()> {
    let comps = component_decomposition(eg);
    let (centerless, rest): (Vec<usize>, Vec<usize>) =
        (0..comps.factors.len()).partition(|&k| factor_center(eg, &comps.factors[k]).is_trivial());
    if centerless.is_empty() {
        return Ok(());
    }
    let gather = |ks: &[usize]| closure(g, &ks.iter().flat_map(|&k| comps.factors[k].ids().to_vec()).collect::<Vec<_>>());
    let g1 = gather(&rest);
    let g2 = gather(&centerless);
    let vanishes_on = |f: &CentralHom, h: &Subgroup| h.ids().iter().all(|&w| f.apply(w) == 0);
    let h1: Vec<usize> = (0..homs.len()).filter(|&k| vanishes_on(&homs[k], &g1)).collect();
    let h2: Vec<usize> = invertible.iter().copied().filter(|&k| vanishes_on(&homs[k], &g2)).collect();
    t.check(h1.iter().all(|k| invertible.contains(k)), || format!("{name}: H1 is not inside the unit group"));
    for (&a, &b) in h1.iter().cartesian_product(h1.iter()) {
        let pointwise = CentralHom { values: g.elements().map(|w| g.mul(homs[a].apply(w), homs[b].apply(w))).collect() };
        t.check(m.star(&homs[a], &homs[b]) == pointwise, || format!("{name}: H1 product is not pointwise"));
    }
    for (&f, &x) in h2.iter().cartesian_product(h1.iter()) {
        let inv = m.invert(&homs[f]).expect("invertible");
        let conj = m.star(&m.star(&homs[f], &homs[x]), &inv);
        let flat = m.flat(&homs[f]);
        let expected = compose(&flat, &compose(&homs[x].values, &inverse_map(&flat)));
        t.check(conj.values == expected && vanishes_on(&conj, &g1), || format!("{name}: H2 does not act on H1 by conjugation"));
    }
    let products: HashSet<CentralHom> =
        h1.iter().cartesian_product(h2.iter()).map(|(&a, &b)| m.star(&homs[a], &homs[b])).collect();
    t.check(products.len() == h1.len() * h2.len() && products.len() == invertible.len(), || {
        format!("{name}: |unit group| = {} but |H1||H2| = {}", invertible.len(), h1.len() * h2.len())
    });
    Ok(())
}

/// For centers of prime or trivial order: not a direct factor, central maps kill `Z`, and maps to cyclic groups kill `Z`.
fn vanishing_center(t: &mut Tally, name: &str, g: &TableGroup, z: &Subgroup, homs: &[CentralHom]) -> Result<()> {
    let zn = z.order();
    if zn != 1 && !(2..zn).all(|d| zn % d != 0) {
        return Ok(());
    }
    let condition_one = zn == 1
        || !normal_subgroups(g).iter().any(|k| k.order() * zn == g.order() && k.intersection(z).is_trivial());
    let condition_two = homs.iter().all(|f| z.ids().iter().all(|&w| f.apply(w) == 0));
    let mut condition_three = true;
    for p in [2, 3, 5, 7] {
        let target = cyclic(p);
        for f in homomorphisms(g, &target, &target.elements().collect::<Vec<_>>())? {
            condition_three &= z.ids().iter().all(|&w| f[w as usize] == 0);
        }
    }
    t.check(condition_one == condition_two && condition_two == condition_three, || {
        format!("{name}: vanishing-center conditions {condition_one} {condition_two} {condition_three}")
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// criterion 10

fn richardson(t: &mut Tally, _: VerifyOptions) -> Result<()> {
    for (labels, _) in multisets(&pool(400), 400) {
        let g = enumerate(&product_graph(&labels)?, 400)?;
        for w in g.elements().filter(|&w| w != 0 && g.mul(w, w) == 0) {
            let what = || format!("{} w={:?}", names(&labels), g.reduced_word(w));
            let Some(form) = t.verified(richardson_form(&g, w), what)? else {
                continue;
            };
            let w0 = longest_element(g.system(), form.subset)?;
            t.check(
                g.conjugate(form.conjugator, w) == form.longest && g.id_of(&w0.element) == Some(form.longest) && w0.is_central(),
                || format!("{}: unverified Richardson form", what()),
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets_respect_the_bound() {
        let p = pool(24);
        let all = multisets(&p, 24);
        assert!(all.iter().all(|(m, o)| *o <= 24 && m.iter().map(|&t| order_of(t)).product::<u64>() == *o));
        assert!(all.iter().any(|(m, _)| m == &vec![TypeLabel::A(1); 4]));
        assert!(all.iter().any(|(m, _)| m == &vec![TypeLabel::A(3)]));
    }

    #[test]
    fn alternating_words() {
        assert_eq!(alternating_ending_in_s2(3), vec![1, 0, 1]);
        assert_eq!(alternating_ending_in_s2(2), vec![0, 1]);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run("nope", VerifyOptions::default()).is_err());
    }

    #[test]
    fn orders_suite_passes() {
        let r = run_criterion(1, VerifyOptions::default());
        assert!(r.passed(), "{r}\n{:?}", r.failures);
    }
}
