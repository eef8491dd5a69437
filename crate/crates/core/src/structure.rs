//! Structural results about a single Coxeter group: sign characters, the
//! center as a direct factor, cores of normalizers of parabolic subgroups,
//! centralizers of normal subgroups and conjugacy classes of involutions.

use std::fmt;

use itertools::Itertools;

use crate::classify::{build_named, classify_irreducible, TypeLabel};
use crate::deodhar::{longest_element, prefix, special_subgroup_twisted, Family};
use crate::engine::{
    center, centralizer, conjugacy_class_with_witness, core, normal_closure, normalizer, ElemId, EnumeratedGroup,
    Group, Subgroup,
};
use crate::error::{precondition, Error, Result};
use crate::graph::{graph_isomorphism, CoxeterGraph, GraphIso, VertexSet};

/// A homomorphism `W -> {1, -1}`, given by its value on each generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub signs: Vec<i8>,
}

impl Character {
    pub fn trivial(n: usize) -> Self {
        Character { signs: vec![1; n] }
    }

    pub fn sign(n: usize) -> Self {
        Character { signs: vec![-1; n] }
    }

    /// Values on every enumerated element, via the breadth-first parent pointers.
    pub fn values(&self, g: &EnumeratedGroup) -> Vec<i8> {
        let mut out = vec![1i8; g.order()];
        for x in 1..g.order() as ElemId {
            let (p, s) = g.parent(x).expect("non-identity has a parent");
            out[x as usize] = out[p as usize] * self.signs[s];
        }
        out
    }

    pub fn kernel(&self, g: &EnumeratedGroup) -> Subgroup {
        let values = self.values(g);
        Subgroup::from_ids(g.order(), g.elements().filter(|&x| values[x as usize] == 1))
    }
}

/// All characters `W -> {1, -1}`: one free sign per component of the odd-label graph.
pub fn homs_to_pm1(g: &CoxeterGraph) -> Vec<Character> {
    let comps = g.components(g.vertices(), true);
    (0..1u64 << comps.len())
        .map(|mask| {
            let mut signs = vec![1i8; g.rank()];
            for (k, comp) in comps.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for v in comp.iter() {
                        signs[v] = -1;
                    }
                }
            }
            Character { signs }
        })
        .collect()
}

/// Whether `Z(W)` is a proper direct factor of an irreducible `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterFactor {
    CenterTrivial,
    No,
    /// The complement, named by its isomorphism type.
    Yes(TypeLabel),
}

impl fmt::Display for CenterFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterFactor::CenterTrivial => write!(f, "center trivial"),
            CenterFactor::No => write!(f, "no"),
            CenterFactor::Yes(t) => write!(f, "yes: W = Z(W) x {t}"),
        }
    }
}

/// Closed-form answer for an irreducible type.
pub fn center_direct_factor(label: TypeLabel) -> Result<CenterFactor> {
    use TypeLabel::*;
    let label = match label {
        E7Plus | H3Plus | AInf | BInf | DInf | AInfInf | Unknown => return Ok(CenterFactor::CenterTrivial),
        other => other.canonical()?,
    };
    Ok(match label {
        A(1) => CenterFactor::No,
        A(_) => CenterFactor::CenterTrivial,
        B(n) if n % 2 == 1 => CenterFactor::Yes(D(n).canonical()?),
        B(_) => CenterFactor::No,
        D(n) if n % 2 == 1 => CenterFactor::CenterTrivial,
        D(_) => CenterFactor::No,
        E(6) => CenterFactor::CenterTrivial,
        E(7) => CenterFactor::Yes(E7Plus),
        E(_) => CenterFactor::No,
        F4 => CenterFactor::No,
        H(3) => CenterFactor::Yes(H3Plus),
        H(_) => CenterFactor::No,
        I2(m) if m % 2 == 1 => CenterFactor::CenterTrivial,
        I2(m) if m % 4 == 2 => CenterFactor::Yes(I2(m / 2).canonical()?),
        I2(_) => CenterFactor::No,
        other => return precondition(format!("unexpected label {other}")),
    })
}

/// Directly indecomposable, with a reason when it is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indecomposability {
    pub indecomposable: bool,
    pub note: Option<String>,
}

pub fn is_directly_indecomposable(label: TypeLabel) -> Result<Indecomposability> {
    Ok(match center_direct_factor(label)? {
        CenterFactor::Yes(complement) if label.is_finite() => Indecomposability {
            indecomposable: false,
            note: Some(format!("{label} = A1 x {complement}")),
        },
        _ => Indecomposability { indecomposable: true, note: None },
    })
}

/// `Z(W) = {1, w0}` when `w0` induces the identity on the graph, else trivial.
pub fn center_closed_form(g: &EnumeratedGroup) -> Result<Subgroup> {
    let w0 = longest_element(g.system(), g.graph().vertices())?;
    let id = g.id_of(&w0.element).expect("w0 is enumerated");
    Ok(if w0.is_central() {
        Subgroup::from_ids(g.order(), [0, id])
    } else {
        Subgroup::trivial(g.order())
    })
}

/// The normal complement to `Z(W)` when it is a proper direct factor.
///
/// Types `B_odd` and `I2(4k+2)` use the kernel of the character that is `-1`
/// exactly on the catalog vertex `s1`; `E7` and `H3` use the rotation subgroup.
pub fn center_complement(g: &EnumeratedGroup) -> Result<Option<Subgroup>> {
    let label = classify_irreducible(g.graph())?;
    let CenterFactor::Yes(_) = center_direct_factor(label)? else {
        return Ok(None);
    };
    let n = g.rank();
    let chi = match label {
        TypeLabel::E(7) | TypeLabel::H(3) => Character::sign(n),
        _ => {
            let catalog = build_named(label)?;
            let tau = &graph_isomorphism(&catalog, g.graph(), false)[0];
            let mut signs = vec![1; n];
            signs[tau.map[0]] = -1;
            Character { signs }
        }
    };
    Ok(Some(chi.kernel(g)))
}

/// A closed-form subgroup of an irreducible `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupDescription {
    Whole,
    Center,
    /// `tau(G_{B_n})`, with `tau` mapping catalog vertices to graph vertices.
    SpecialB(GraphIso),
    SpecialD(GraphIso),
}

impl SubgroupDescription {
    pub fn resolve(&self, g: &EnumeratedGroup) -> Result<Subgroup> {
        match self {
            SubgroupDescription::Whole => Ok(Subgroup::whole(g.order())),
            SubgroupDescription::Center => center_closed_form(g),
            SubgroupDescription::SpecialB(tau) => special_subgroup_twisted(g, Family::B, tau),
            SubgroupDescription::SpecialD(tau) => special_subgroup_twisted(g, Family::D, tau),
        }
    }

    pub fn render(&self, graph: &CoxeterGraph) -> String {
        let twisted = |name: &str, tau: &GraphIso| {
            let n = tau.map.len();
            let naming = tau.map.iter().enumerate().map(|(k, &v)| format!("s{}={}", k + 1, graph.name(v))).join(" ");
            format!("G({name}{n}) [{naming}]")
        };
        match self {
            SubgroupDescription::Whole => "W".to_string(),
            SubgroupDescription::Center => "Z(W)".to_string(),
            SubgroupDescription::SpecialB(tau) => twisted("B", tau),
            SubgroupDescription::SpecialD(tau) => twisted("D", tau),
        }
    }
}

/// A closed-form answer: the case that applied and the subgroup it names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub case: &'static str,
    pub subgroup: SubgroupDescription,
}

/// Isomorphisms from the catalog graph of `X_n` onto `g`, with `n` the rank of `g`.
fn family_embeddings(g: &CoxeterGraph, family: Family) -> Vec<GraphIso> {
    let n = g.rank();
    if n < family.first_index().max(2) || (family == Family::D && n < 3) {
        return Vec::new();
    }
    match build_named(family.label(n)) {
        Ok(catalog) => graph_isomorphism(&catalog, g, true),
        Err(_) => Vec::new(),
    }
}

fn require_irreducible(g: &CoxeterGraph) -> Result<TypeLabel> {
    if g.rank() == 0 || !g.is_connected() {
        return precondition("the graph must be connected and nonempty");
    }
    classify_irreducible(g)
}

/// Core of `N(W_I)` in an irreducible `W`, by closed form.
pub fn core_of_normalizer(g: &CoxeterGraph, set: VertexSet) -> Result<ClosedForm> {
    require_irreducible(g)?;
    if !set.is_subset(g.vertices()) {
        return precondition("subset is not inside the graph");
    }
    if set.is_empty() || set == g.vertices() {
        return Ok(ClosedForm { case: "I empty or I = S", subgroup: SubgroupDescription::Whole });
    }
    let n = g.rank();
    for tau in family_embeddings(g, Family::B) {
        if (1..n).any(|k| prefix(&tau, k) == set) {
            return Ok(ClosedForm { case: "(i)", subgroup: SubgroupDescription::SpecialB(tau) });
        }
    }
    for tau in family_embeddings(g, Family::D) {
        if (2..n).any(|k| prefix(&tau, k) == set) {
            return Ok(ClosedForm { case: "(ii)", subgroup: SubgroupDescription::SpecialD(tau) });
        }
    }
    Ok(ClosedForm { case: "(iii)", subgroup: SubgroupDescription::Center })
}

/// Brute-force core of the normalizer of a standard parabolic subgroup.
pub fn core_of_normalizer_brute(g: &EnumeratedGroup, set: VertexSet) -> Subgroup {
    let parabolic = g.parabolic(set);
    core(g, &normalizer(g, &parabolic))
}

/// Closed form, resolved to elements and checked against the brute-force core.
pub fn core_of_normalizer_checked(g: &EnumeratedGroup, set: VertexSet) -> Result<(ClosedForm, Subgroup)> {
    let answer = core_of_normalizer(g.graph(), set)?;
    let closed = answer.subgroup.resolve(g)?;
    let brute = core_of_normalizer_brute(g, set);
    if closed != brute {
        return Err(Error::Verification(format!(
            "core of normalizer for {}: closed form has order {}, brute force {}",
            g.graph().format_subset(set),
            closed.order(),
            brute.order()
        )));
    }
    Ok((answer, closed))
}

/// Pairs `(I, w0(I))` with `w0(I)` a nontrivial element of `h` that is central in `W_I`.
pub fn x_h(g: &EnumeratedGroup, h: &Subgroup) -> Result<Vec<(VertexSet, ElemId)>> {
    let rank = g.rank();
    if rank > 20 {
        return precondition("subset enumeration is limited to rank 20");
    }
    let mut out = Vec::new();
    for set in g.graph().vertices().subsets() {
        if set.is_empty() {
            continue;
        }
        let w0 = longest_element(g.system(), set)?;
        if !w0.is_central() {
            continue;
        }
        let id = g.id_of(&w0.element).expect("w0 is enumerated");
        if id != 0 && h.contains(id) {
            out.push((set, id));
        }
    }
    Ok(out)
}

/// Centralizer of the normal closure `H` of `xs`, by closed form.
///
/// Returns the answer and `H`.
pub fn centralizer_of_normal_closure(g: &EnumeratedGroup, xs: &[ElemId]) -> Result<(ClosedForm, Subgroup)> {
    require_irreducible(g.graph())?;
    let h = normal_closure(g, xs);
    let z = center_closed_form(g)?;
    if h.is_subset(&z) {
        return Ok((ClosedForm { case: "(i)", subgroup: SubgroupDescription::Whole }, h));
    }
    for tau in family_embeddings(g.graph(), Family::B) {
        if h.is_subset(&special_subgroup_twisted(g, Family::B, &tau)?) {
            return Ok((ClosedForm { case: "(ii)", subgroup: SubgroupDescription::SpecialB(tau) }, h));
        }
    }
    for tau in family_embeddings(g.graph(), Family::D) {
        if h.is_subset(&special_subgroup_twisted(g, Family::D, &tau)?) {
            return Ok((ClosedForm { case: "(iii)", subgroup: SubgroupDescription::SpecialD(tau) }, h));
        }
    }
    Ok((ClosedForm { case: "(iv)", subgroup: SubgroupDescription::Center }, h))
}

/// Closed form checked against the brute-force centralizer.
pub fn centralizer_of_normal_closure_checked(g: &EnumeratedGroup, xs: &[ElemId]) -> Result<(ClosedForm, Subgroup)> {
    let (answer, h) = centralizer_of_normal_closure(g, xs)?;
    let closed = answer.subgroup.resolve(g)?;
    let brute = centralizer(g, h.ids());
    if closed != brute {
        return Err(Error::Verification(format!(
            "centralizer of a normal subgroup of order {}: closed form has order {}, brute force {}",
            h.order(),
            closed.order(),
            brute.order()
        )));
    }
    Ok((answer, closed))
}

/// `u w u^-1 = w0(I)` with `w0(I)` central in `W_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RichardsonForm {
    pub subset: VertexSet,
    pub conjugator: ElemId,
    pub longest: ElemId,
}

/// Conjugate an involution to a central longest element of a standard parabolic.
///
/// Subsets are tried by increasing size, ties broken lexicographically.
pub fn richardson_form(g: &EnumeratedGroup, w: ElemId) -> Result<RichardsonForm> {
    if g.mul(w, w) != 0 {
        return precondition("element is not an involution");
    }
    if g.rank() > 20 {
        return precondition("subset enumeration is limited to rank 20");
    }
    let class = conjugacy_class_with_witness(g, w);
    let subsets = g
        .graph()
        .vertices()
        .subsets()
        .sorted_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    for set in subsets {
        let w0 = longest_element(g.system(), set)?;
        if !w0.is_central() {
            continue;
        }
        let id = g.id_of(&w0.element).expect("w0 is enumerated");
        if let Some(&u) = class.get(&id) {
            return Ok(RichardsonForm { subset: set, conjugator: u, longest: id });
        }
    }
    Err(Error::Verification("no conjugate of the form w0(I) found".into()))
}

/// Brute-force center, for cross-checks.
pub fn center_brute(g: &EnumeratedGroup) -> Subgroup {
    center(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::TypeLabel::*;

    fn group(t: TypeLabel) -> EnumeratedGroup {
        let g = EnumeratedGroup::new(&build_named(t).unwrap()).unwrap();
        g.ensure_table();
        g
    }

    #[test]
    fn character_counts() {
        assert_eq!(homs_to_pm1(&build_named(A(4)).unwrap()).len(), 2);
        assert_eq!(homs_to_pm1(&build_named(B(4)).unwrap()).len(), 4);
        assert_eq!(homs_to_pm1(&build_named(I2(6)).unwrap()).len(), 4);
        assert_eq!(homs_to_pm1(&build_named(F4).unwrap()).len(), 4);
    }

    #[test]
    fn characters_are_homomorphisms() {
        let g = group(B(3));
        for chi in homs_to_pm1(g.graph()) {
            let v = chi.values(&g);
            for a in g.elements() {
                for b in g.elements().step_by(5) {
                    assert_eq!(v[g.mul(a, b) as usize], v[a as usize] * v[b as usize]);
                }
            }
        }
    }

    #[test]
    fn center_factor_table() {
        assert_eq!(center_direct_factor(B(3)).unwrap(), CenterFactor::Yes(A(3)));
        assert_eq!(center_direct_factor(B(5)).unwrap(), CenterFactor::Yes(D(5)));
        assert_eq!(center_direct_factor(I2(6)).unwrap(), CenterFactor::Yes(A(2)));
        assert_eq!(center_direct_factor(I2(10)).unwrap(), CenterFactor::Yes(I2(5)));
        assert_eq!(center_direct_factor(I2(8)).unwrap(), CenterFactor::No);
        assert_eq!(center_direct_factor(E(7)).unwrap(), CenterFactor::Yes(E7Plus));
        assert_eq!(center_direct_factor(E(6)).unwrap(), CenterFactor::CenterTrivial);
        assert_eq!(center_direct_factor(A(1)).unwrap(), CenterFactor::No);
        assert!(is_directly_indecomposable(A(1)).unwrap().indecomposable);
        assert!(!is_directly_indecomposable(H(3)).unwrap().indecomposable);
        assert!(is_directly_indecomposable(AInf).unwrap().indecomposable);
    }

    #[test]
    fn center_closed_form_matches_brute_force() {
        for t in [A(3), B(3), D(4), D(5), H(3), I2(7), I2(8)] {
            let g = group(t);
            assert_eq!(center_closed_form(&g).unwrap(), center_brute(&g), "{t}");
        }
    }

    #[test]
    fn core_cases() {
        let g = build_named(A(2)).unwrap();
        let ans = core_of_normalizer(&g, VertexSet(0b01)).unwrap();
        assert_eq!(ans.case, "(iii)");
        let b3 = group(B(3));
        let (ans, h) = core_of_normalizer_checked(&b3, VertexSet(0b011)).unwrap();
        assert_eq!(ans.case, "(i)");
        assert_eq!(h.order(), 8);
        let a3 = group(A(3));
        let (ans, h) = core_of_normalizer_checked(&a3, VertexSet(0b101)).unwrap();
        assert_eq!(ans.case, "(ii)");
        assert_eq!(h.order(), 4);
    }

    #[test]
    fn richardson_in_b3() {
        let g = group(B(3));
        for w in g.elements().filter(|&w| w != 0 && g.mul(w, w) == 0) {
            let r = richardson_form(&g, w).unwrap();
            assert_eq!(g.conjugate(r.conjugator, w), r.longest);
        }
    }
}
