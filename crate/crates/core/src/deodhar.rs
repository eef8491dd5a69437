//! Highest roots, longest elements and the decomposition of `w0(I)` into
//! reflections along highest roots.

use std::f64::consts::PI;

use crate::classify::{build_named, classify_irreducible, TypeLabel};
use crate::engine::{closure, EnumeratedGroup, Subgroup};
use crate::error::{precondition, Result};
use crate::graph::{graph_isomorphism, GraphIso, VertexSet};
use crate::rootspace::{CoxeterSystem, GroupElement, RootId};

/// Which highest root to use for types that have two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    First,
    Second,
}

/// Simple roots not orthogonal to a highest root (1-based catalog positions).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    Single(usize),
    Double(usize, usize),
}

/// A highest root in catalog coordinates together with its contact vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestRootEntry {
    pub label: TypeLabel,
    pub variant: Variant,
    pub coefficients: Vec<f64>,
    pub contact: Contact,
}

/// Number of distinct highest roots of a canonical finite type.
pub fn variant_count(label: TypeLabel) -> usize {
    match label {
        TypeLabel::B(n) if n >= 2 => 2,
        TypeLabel::F4 => 2,
        TypeLabel::I2(m) if m % 2 == 0 => 2,
        _ => 1,
    }
}

/// The catalog highest root of a canonical finite irreducible type.
pub fn highest_root_entry(label: TypeLabel, variant: Variant) -> Result<HighestRootEntry> {
    use Contact::*;
    use TypeLabel::*;
    let second = variant == Variant::Second && variant_count(label) == 2;
    let r2 = std::f64::consts::SQRT_2;
    let c = 2.0 * (PI / 5.0).cos();
    let (coefficients, contact) = match label {
        A(1) => (vec![1.0], Single(1)),
        A(n) if n >= 2 => (vec![1.0; n as usize], Double(1, n as usize)),
        B(n) if n >= 2 && !second => {
            let mut v = vec![r2; n as usize];
            v[0] = 1.0;
            (v, Single(n as usize))
        }
        B(n) if n >= 2 => {
            let mut v = vec![2.0; n as usize];
            v[0] = r2;
            v[n as usize - 1] = 1.0;
            (v, Single(n as usize - 1))
        }
        D(n) if n >= 4 => {
            let mut v = vec![2.0; n as usize];
            v[0] = 1.0;
            v[1] = 1.0;
            v[n as usize - 1] = 1.0;
            (v, Single(n as usize - 1))
        }
        E(6) => (vec![1.0, 2.0, 2.0, 3.0, 2.0, 1.0], Single(2)),
        E(7) => (vec![2.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0], Single(1)),
        E(8) => (vec![2.0, 3.0, 4.0, 6.0, 5.0, 4.0, 3.0, 2.0], Single(8)),
        F4 if !second => (vec![2.0, 3.0, 2.0 * r2, r2], Single(1)),
        F4 => (vec![r2, 2.0 * r2, 3.0, 2.0], Single(4)),
        H(3) => (vec![c + 1.0, 2.0 * c, c], Single(2)),
        H(4) => (vec![3.0 * c + 2.0, 4.0 * c + 2.0, 3.0 * c + 1.0, 2.0 * c], Single(4)),
        I2(m) if m >= 5 && m % 2 == 1 => {
            let x = 1.0 / (2.0 * (PI / (2.0 * m as f64)).sin());
            (vec![x, x], Double(1, 2))
        }
        I2(m) if m >= 6 => {
            let t = PI / m as f64;
            let (cot, csc) = (t.cos() / t.sin(), 1.0 / t.sin());
            if second {
                (vec![csc, cot], Single(1))
            } else {
                (vec![cot, csc], Single(2))
            }
        }
        other => return precondition(format!("no highest root entry for {other}")),
    };
    Ok(HighestRootEntry {
        label,
        variant: if second { Variant::Second } else { Variant::First },
        coefficients,
        contact,
    })
}

/// `w0(I)` and the graph involution it induces on `I`.
#[derive(Clone, Debug)]
pub struct LongestElement {
    pub element: GroupElement,
    /// `sigma[s]` for `s` in `I`; other vertices map to themselves.
    pub sigma: Vec<usize>,
}

impl LongestElement {
    /// `w0(I)` is central in `W_I` exactly when it induces the identity.
    pub fn is_central(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }
}

/// Greedy right multiplication by generators of `I` while some `w . a_s` is positive.
pub fn longest_element(sys: &CoxeterSystem, set: VertexSet) -> Result<LongestElement> {
    if !set.is_subset(sys.graph().vertices()) {
        return precondition("subset is not inside the graph");
    }
    let roots = sys.roots();
    let mut w = sys.identity();
    while let Some(s) = set.iter().find(|&s| roots.is_positive(w.images[s])) {
        w = sys.times_generator(&w, s);
    }
    let mut sigma: Vec<usize> = (0..sys.rank()).collect();
    for s in set.iter() {
        let image = roots.negate(w.images[s]) as usize;
        if image >= sys.rank() || !set.contains(image) {
            return precondition("longest element does not permute the simple roots");
        }
        sigma[s] = image;
    }
    Ok(LongestElement { element: w, sigma })
}

/// Order in which the components of the current set are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ComponentOrder {
    /// The component containing the largest vertex index goes first.
    #[default]
    LargestVertex,
    SmallestVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DeodharOptions {
    pub variant: Variant,
    pub order: ComponentOrder,
}

/// One step: the reflection chosen and the component it came from.
#[derive(Clone, Debug)]
pub struct DeodharStep {
    pub component: VertexSet,
    pub label: TypeLabel,
    pub root: RootId,
    pub reflection: GroupElement,
    /// The remaining set after removing the contact vertices.
    pub remaining: VertexSet,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub steps: Vec<DeodharStep>,
}

impl Decomposition {
    pub fn reflections(&self) -> impl Iterator<Item = &GroupElement> {
        self.steps.iter().map(|s| &s.reflection)
    }

    /// The chain of sets `K` produced by the recursion, ending with the empty set.
    pub fn sequence(&self) -> Vec<VertexSet> {
        self.steps.iter().map(|s| s.remaining).collect()
    }

    /// Product of the reflections, in order.
    pub fn product(&self, sys: &CoxeterSystem) -> GroupElement {
        sys.product(self.reflections())
    }
}

/// Lexicographically smallest isomorphism from the catalog graph of `label` onto a component.
fn catalog_embedding(sys: &CoxeterSystem, component: VertexSet) -> Result<(TypeLabel, Vec<usize>)> {
    let (sub, map) = sys.graph().induced(component);
    let label = classify_irreducible(&sub)?;
    let catalog = build_named(label)?;
    let iso = graph_isomorphism(&catalog, &sub, false)
        .into_iter()
        .next()
        .expect("classified component matches its catalog graph");
    Ok((label, iso.map.iter().map(|&k| map[k]).collect()))
}

/// Write `w0(I)` as a product of reflections along highest roots of nested parabolics.
pub fn deodhar_decompose(sys: &CoxeterSystem, set: VertexSet, options: DeodharOptions) -> Result<Decomposition> {
    if !set.is_subset(sys.graph().vertices()) {
        return precondition("subset is not inside the graph");
    }
    let mut steps = Vec::new();
    let mut current = set;
    while !current.is_empty() {
        let components = sys.graph().components(current, false);
        let component = match options.order {
            ComponentOrder::LargestVertex => *components.iter().max_by_key(|c| c.highest()).expect("nonempty"),
            ComponentOrder::SmallestVertex => components[0],
        };
        let (label, embed) = catalog_embedding(sys, component)?;
        let entry = highest_root_entry(label, options.variant)?;
        let mut v = vec![0.0; sys.rank()];
        for (k, &c) in entry.coefficients.iter().enumerate() {
            v[embed[k]] = c;
        }
        let root = sys.root_id(&v)?;
        let removed = match entry.contact {
            Contact::Single(a) => VertexSet::singleton(embed[a - 1]),
            Contact::Double(a, b) => VertexSet::from_indices([embed[a - 1], embed[b - 1]]),
        };
        current = current.difference(removed);
        steps.push(DeodharStep {
            component,
            label,
            root,
            reflection: sys.reflection(root),
            remaining: current,
        });
    }
    Ok(Decomposition { steps })
}

/// The two families with distinguished elementary abelian normal subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    B,
    D,
}

impl Family {
    pub fn label(self, n: usize) -> TypeLabel {
        match self {
            Family::B => TypeLabel::B(n as u32),
            Family::D => TypeLabel::D(n as u32),
        }
    }

    /// Smallest `i` for which `S(X_i)` is used.
    pub fn first_index(self) -> usize {
        match self {
            Family::B => 1,
            Family::D => 2,
        }
    }
}

/// `tau(S(X_i))` for the prefix `s1..si` of the catalog naming.
pub fn prefix(tau: &GraphIso, i: usize) -> VertexSet {
    VertexSet::from_indices(tau.map[..i].iter().copied())
}

/// Generators `w0(tau(S(X_i)))` of `tau(G_{X_n})`.
///
/// `tau` maps catalog vertices of `X_n` onto the vertices of `sys`.
pub fn special_generators(sys: &CoxeterSystem, family: Family, tau: &GraphIso) -> Result<Vec<GroupElement>> {
    let n = sys.rank();
    if tau.map.len() != n {
        return precondition("isomorphism does not cover the graph");
    }
    let catalog = build_named(family.label(n))?;
    if (0..n).any(|i| (0..n).any(|j| catalog.m(i, j) != sys.graph().m(tau.map[i], tau.map[j]))) {
        return precondition(format!("graph is not {} under the given naming", family.label(n)));
    }
    (family.first_index()..=n)
        .map(|i| longest_element(sys, prefix(tau, i)).map(|l| l.element))
        .collect()
}

/// `G_{B_n}` or `G_{D_n}` for a group with the catalog naming.
pub fn special_subgroup(g: &EnumeratedGroup, family: Family) -> Result<Subgroup> {
    special_subgroup_twisted(g, family, &GraphIso::identity(g.rank()))
}

/// `tau(G_{B_n})` or `tau(G_{D_n})`.
pub fn special_subgroup_twisted(g: &EnumeratedGroup, family: Family, tau: &GraphIso) -> Result<Subgroup> {
    let gens: Vec<_> = special_generators(g.system(), family, tau)?
        .iter()
        .map(|w| g.id_of(w).expect("element is enumerated"))
        .collect();
    Ok(closure(g, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::TypeLabel::*;
    use crate::engine::Group;

    fn system(t: TypeLabel) -> CoxeterSystem {
        CoxeterSystem::new(&build_named(t).unwrap()).unwrap()
    }

    /// Roots with `<r, a_s> >= 0` for every simple root.
    fn dominant_roots(sys: &CoxeterSystem) -> Vec<RootId> {
        (0..sys.roots().positive_count() as RootId)
            .filter(|&r| (0..sys.rank()).all(|s| sys.form().with_simple(s, sys.roots().vector(r)) > -1e-9))
            .collect()
    }

    #[test]
    fn catalog_highest_roots_are_the_dominant_roots() {
        for t in [A(1), A(4), B(2), B(5), D(4), D(7), E(6), E(7), E(8), F4, H(3), H(4), I2(5), I2(8), I2(9), I2(10)] {
            let sys = system(t);
            let mut expected = dominant_roots(&sys);
            expected.sort();
            let mut got: Vec<RootId> = (0..variant_count(t))
                .map(|k| {
                    let v = if k == 0 { Variant::First } else { Variant::Second };
                    sys.root_id(&highest_root_entry(t, v).unwrap().coefficients).unwrap()
                })
                .collect();
            got.sort();
            assert_eq!(got, expected, "{t}");
        }
    }

    #[test]
    fn contact_vertices_are_the_non_orthogonal_ones() {
        for t in [A(1), A(4), B(3), D(5), E(6), E(7), E(8), F4, H(3), H(4), I2(7), I2(12)] {
            let sys = system(t);
            for k in 0..variant_count(t) {
                let v = if k == 0 { Variant::First } else { Variant::Second };
                let entry = highest_root_entry(t, v).unwrap();
                let touching: Vec<usize> = (0..sys.rank())
                    .filter(|&s| sys.form().with_simple(s, &entry.coefficients).abs() > 1e-9)
                    .map(|s| s + 1)
                    .collect();
                let expected = match entry.contact {
                    Contact::Single(a) => vec![a],
                    Contact::Double(a, b) => vec![a, b],
                };
                assert_eq!(touching, expected, "{t} {v:?}");
            }
        }
    }

    #[test]
    fn longest_element_length_is_positive_root_count() {
        for t in [A(4), B(4), D(5), E(6), F4, H(3), H(4), I2(11)] {
            let sys = system(t);
            let w0 = longest_element(&sys, sys.graph().vertices()).unwrap();
            assert_eq!(sys.length(&w0.element), sys.roots().positive_count(), "{t}");
        }
    }

    #[test]
    fn h3_sequence() {
        let sys = system(H(3));
        let dec = deodhar_decompose(&sys, sys.graph().vertices(), DeodharOptions::default()).unwrap();
        assert_eq!(dec.sequence(), vec![VertexSet(0b101), VertexSet(0b001), VertexSet(0)]);
        let w0 = longest_element(&sys, sys.graph().vertices()).unwrap();
        assert_eq!(dec.product(&sys), w0.element);
    }

    #[test]
    fn special_subgroup_of_b3_is_elementary_abelian_of_order_8() {
        let g = EnumeratedGroup::new(&build_named(B(3)).unwrap()).unwrap();
        let h = special_subgroup(&g, Family::B).unwrap();
        assert_eq!(h.order(), 8);
        assert!(h.ids().iter().all(|&x| g.mul(x, x) == 0));
    }
}
