//! Isomorphism of Coxeter groups as abstract groups, direct decompositions
//! and automorphism counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::classify::{classify, TypeLabel};
use crate::engine::{automorphisms, closure, generating_set, is_normal, ElemId, EnumeratedGroup, Group, Subgroup, TableGroup};
use crate::error::{precondition, Error, Result};
use crate::graph::{graph_isomorphism, CoxeterGraph};
use crate::hommonoid::HomMonoid;
use crate::structure::{center_closed_form, center_direct_factor, CenterFactor, Character};

/// An irreducible component of infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteComponent {
    /// A catalog infinite family such as `Ainf`, or `Unknown` when given symbolically.
    Family(TypeLabel),
    /// A finite-rank graph outside the finite catalog.
    Graph(CoxeterGraph),
}

impl InfiniteComponent {
    fn matches(&self, other: &InfiniteComponent) -> bool {
        match (self, other) {
            (InfiniteComponent::Family(a), InfiniteComponent::Family(b)) => a == b && *a != TypeLabel::Unknown,
            (InfiniteComponent::Graph(a), InfiniteComponent::Graph(b)) => !graph_isomorphism(a, b, false).is_empty(),
            _ => false,
        }
    }
}

/// Irreducible components of a Coxeter group, finite ones by canonical label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentMultiset {
    pub finite: Vec<TypeLabel>,
    pub infinite: Vec<InfiniteComponent>,
}

impl ComponentMultiset {
    pub fn from_graph(g: &CoxeterGraph) -> Self {
        let mut out = ComponentMultiset::default();
        for (comp, label) in classify(g) {
            if label.is_finite() {
                out.finite.push(label);
            } else {
                out.infinite.push(InfiniteComponent::Graph(g.induced(comp).0));
            }
        }
        out.finite.sort();
        out
    }

    pub fn from_labels(labels: &[TypeLabel]) -> Result<Self> {
        let mut out = ComponentMultiset::default();
        for &t in labels {
            match t {
                TypeLabel::E7Plus | TypeLabel::H3Plus => {
                    return precondition("E7+ and H3+ are not Coxeter groups");
                }
                t if t.is_finite() => out.finite.push(t.canonical()?),
                t => out.infinite.push(InfiniteComponent::Family(t)),
            }
        }
        out.finite.sort();
        Ok(out)
    }

    /// Comma or `+` separated labels, e.g. `B3,A1` or `A1 + Ainf`.
    pub fn parse(text: &str) -> Result<Self> {
        let labels: Vec<TypeLabel> = text
            .split([',', '+'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        Self::from_labels(&labels)
    }
}

/// Split each finite factor whose center is a proper direct factor.
pub fn admissible_refinement(finite: &[TypeLabel]) -> Result<Vec<TypeLabel>> {
    let mut out = Vec::new();
    for &t in finite {
        match center_direct_factor(t)? {
            CenterFactor::Yes(complement) => {
                out.push(TypeLabel::A(1));
                out.push(complement);
            }
            _ => out.push(t.canonical().unwrap_or(t)),
        }
    }
    out.sort();
    Ok(out)
}

/// The classes whose cardinalities must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ClassKey {
    /// `A1`, odd `B`, `E7`, `H3` and `I2(4k+2)` together.
    CenterCarrying,
    /// `B_{2k+1}` with `D_{2k+1}`, or `I2(4k+2)` with `I2(2k+1)`; keyed by the first.
    Paired(TypeLabel),
    Single(TypeLabel),
}

fn class_keys(t: TypeLabel) -> Vec<ClassKey> {
    use ClassKey::*;
    use TypeLabel::*;
    match t {
        A(1) => vec![CenterCarrying],
        B(n) if n % 2 == 1 => vec![CenterCarrying, Paired(B(n))],
        A(3) => vec![Paired(B(3))],
        D(n) if n % 2 == 1 => vec![Paired(B(n))],
        I2(m) if m % 4 == 2 => vec![CenterCarrying, Paired(I2(m))],
        A(2) => vec![Paired(I2(6))],
        I2(m) if m % 2 == 1 => vec![Paired(I2(2 * m))],
        E(7) | H(3) => vec![CenterCarrying, Single(t)],
        other => vec![Single(other)],
    }
}

/// Counting test over the class list; labels must be canonical.
pub fn condition_two(a: &[TypeLabel], b: &[TypeLabel]) -> bool {
    let count = |labels: &[TypeLabel]| {
        let mut m: BTreeMap<ClassKey, usize> = BTreeMap::new();
        for &t in labels {
            for k in class_keys(t) {
                *m.entry(k).or_default() += 1;
            }
        }
        m
    };
    count(a) == count(b)
}

/// The same test, phrased as equality of admissible refinements.
pub fn condition_two_by_refinement(a: &[TypeLabel], b: &[TypeLabel]) -> Result<bool> {
    Ok(admissible_refinement(a)? == admissible_refinement(b)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// Decide `W(a) = W(b)` as abstract groups.
///
/// Finite parts are compared by the class counting test. Infinite parts must
/// have equally many components; they match when given by the same catalog
/// family or by isomorphic graphs, and otherwise the answer is `Unknown`.
pub fn coxeter_isomorphic(a: &ComponentMultiset, b: &ComponentMultiset) -> Verdict {
    if a.infinite.len() != b.infinite.len() || !condition_two(&a.finite, &b.finite) {
        return Verdict::No;
    }
    let mut unmatched: Vec<&InfiniteComponent> = b.infinite.iter().collect();
    for comp in &a.infinite {
        match unmatched.iter().position(|c| comp.matches(c)) {
            Some(i) => {
                unmatched.swap_remove(i);
            }
            None => return Verdict::Unknown,
        }
    }
    Verdict::Yes
}

pub fn coxeter_isomorphic_graphs(a: &CoxeterGraph, b: &CoxeterGraph) -> Verdict {
    coxeter_isomorphic(&ComponentMultiset::from_graph(a), &ComponentMultiset::from_graph(b))
}

/// Normal subgroups whose internal direct product is the whole group.
#[derive(Clone, Debug)]
pub struct DirectDecomposition {
    pub factors: Vec<Subgroup>,
    pub labels: Vec<TypeLabel>,
}

impl DirectDecomposition {
    /// Projection tables: `proj[k][w]` is the `k`-th coordinate of `w`.
    ///
    /// Fails unless the factors are normal, commute elementwise and
    /// multiply out to every element exactly once.
    pub fn projections<G: Group>(&self, g: &G) -> Result<Vec<Vec<ElemId>>> {
        let bad = |msg: &str| Err(Error::Verification(format!("not a direct decomposition: {msg}")));
        let total: usize = self.factors.iter().map(Subgroup::order).product();
        if total != g.order() {
            return bad("orders do not multiply to |G|");
        }
        for (i, a) in self.factors.iter().enumerate() {
            if !is_normal(g, a) {
                return bad("factor is not normal");
            }
            for b in &self.factors[i + 1..] {
                if a.ids().iter().any(|&x| b.ids().iter().any(|&y| g.mul(x, y) != g.mul(y, x))) {
                    return bad("factors do not commute");
                }
            }
        }
        let k = self.factors.len();
        let mut proj = vec![vec![ElemId::MAX; g.order()]; k];
        let mut tuple = vec![0usize; k];
        loop {
            let w = (0..k).fold(0, |acc, i| g.mul(acc, self.factors[i].ids()[tuple[i]]));
            if proj.first().is_some_and(|p| p[w as usize] != ElemId::MAX) {
                return bad("product map is not injective");
            }
            for i in 0..k {
                proj[i][w as usize] = self.factors[i].ids()[tuple[i]];
            }
            let mut i = 0;
            while i < k {
                tuple[i] += 1;
                if tuple[i] < self.factors[i].order() {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        Ok(proj)
    }

    /// Factors that are not abelian, i.e. differ from their own center.
    pub fn noncentral<G: Group>(&self, g: &G) -> Vec<usize> {
        (0..self.factors.len()).filter(|&k| factor_center(g, &self.factors[k]).order() != self.factors[k].order()).collect()
    }
}

/// Center of a subgroup, computed inside it.
pub fn factor_center<G: Group>(g: &G, h: &Subgroup) -> Subgroup {
    let gens = generating_set(g, h);
    Subgroup::from_ids(
        g.order(),
        h.ids().iter().copied().filter(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x))),
    )
}

/// Standard parabolic subgroups of the graph components.
pub fn component_decomposition(g: &EnumeratedGroup) -> DirectDecomposition {
    let (factors, labels) = classify(g.graph()).into_iter().map(|(comp, label)| (g.parabolic(comp), label)).unzip();
    DirectDecomposition { factors, labels }
}

/// Component decomposition with each center-carrying factor split off as `A1 x complement`.
pub fn admissible_decomposition(g: &EnumeratedGroup) -> Result<DirectDecomposition> {
    let mut factors = Vec::new();
    let mut labels = Vec::new();
    for (comp, label) in classify(g.graph()) {
        let parabolic = g.parabolic(comp);
        let CenterFactor::Yes(complement) = center_direct_factor(label)? else {
            factors.push(parabolic);
            labels.push(label);
            continue;
        };
        let (sub, map) = g.graph().induced(comp);
        let sub_group = EnumeratedGroup::with_cap(&sub, parabolic.order())?;
        let center = center_closed_form(&sub_group)?;
        let kernel = crate::structure::center_complement(&sub_group)?.expect("complement exists");
        let lift = |h: &Subgroup| {
            let ids: Vec<ElemId> = h
                .ids()
                .iter()
                .map(|&x| g.from_word(&sub_group.reduced_word(x).iter().map(|&s| map[s]).collect::<Vec<_>>()))
                .collect();
            Subgroup::from_ids(g.order(), ids)
        };
        factors.push(lift(&center));
        labels.push(TypeLabel::A(1));
        factors.push(lift(&kernel));
        labels.push(complement);
    }
    Ok(DirectDecomposition { factors, labels })
}

/// The pieces of an isomorphism between two decomposed groups.
#[derive(Clone, Debug)]
pub struct FactorIsomorphism {
    /// `phi[k]`: target factor matched with source factor `k`.
    pub phi: Vec<usize>,
    /// Factor isomorphisms `g_k`, as `(source element, image)` pairs, for noncentral `k`.
    pub factor_maps: Vec<Option<Vec<(ElemId, ElemId)>>>,
    /// The central homomorphism `g_Z` on every element.
    pub central: Vec<ElemId>,
}

/// Split an isomorphism `f: G -> G'` into factor isomorphisms and a central part.
pub fn factor_isomorphism<S: Group, T: Group>(
    src: &S,
    src_dec: &DirectDecomposition,
    tgt: &T,
    tgt_dec: &DirectDecomposition,
    f: &[ElemId],
) -> Result<FactorIsomorphism> {
    let fail = |msg: String| Err(Error::Verification(msg));
    let src_proj = src_dec.projections(src)?;
    let tgt_proj = tgt_dec.projections(tgt)?;
    let src_nc = src_dec.noncentral(src);
    let tgt_nc = tgt_dec.noncentral(tgt);
    let tgt_centers: Vec<Subgroup> = tgt_dec.factors.iter().map(|h| factor_center(tgt, h)).collect();

    let mut phi = vec![usize::MAX; src_dec.factors.len()];
    for &k in &src_nc {
        let hits: Vec<usize> = (0..tgt_dec.factors.len())
            .filter(|&j| {
                src_dec.factors[k].ids().iter().any(|&w| !tgt_centers[j].contains(tgt_proj[j][f[w as usize] as usize]))
            })
            .collect();
        if hits.len() != 1 {
            return fail(format!("factor {k} touches {} noncentral target factors", hits.len()));
        }
        phi[k] = hits[0];
    }
    let mut image: Vec<usize> = src_nc.iter().map(|&k| phi[k]).collect();
    image.sort_unstable();
    if image != tgt_nc {
        return fail("noncentral factors are not matched bijectively".into());
    }
    let mut free: Vec<usize> = (0..tgt_dec.factors.len()).filter(|j| !tgt_nc.contains(j)).collect();
    for k in (0..src_dec.factors.len()).filter(|k| !src_nc.contains(k)) {
        let order = src_dec.factors[k].order();
        let Some(pos) = free.iter().position(|&j| tgt_dec.factors[j].order() == order) else {
            return fail(format!("no abelian target factor of order {order}"));
        };
        phi[k] = free.remove(pos);
    }

    let mut factor_maps = vec![None; src_dec.factors.len()];
    for &k in &src_nc {
        let j = phi[k];
        let pairs: Vec<(ElemId, ElemId)> =
            src_dec.factors[k].ids().iter().map(|&w| (w, tgt_proj[j][f[w as usize] as usize])).collect();
        let mut seen: Vec<ElemId> = pairs.iter().map(|p| p.1).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != pairs.len() || seen != tgt_dec.factors[j].ids() {
            return fail(format!("projection of factor {k} is not a bijection"));
        }
        let lookup: BTreeMap<ElemId, ElemId> = pairs.iter().copied().collect();
        for &(a, fa) in &pairs {
            for &(b, fb) in &pairs {
                if lookup[&src.mul(a, b)] != tgt.mul(fa, fb) {
                    return fail(format!("projection of factor {k} is not a homomorphism"));
                }
            }
        }
        factor_maps[k] = Some(pairs);
    }

    let on_factor = |k: usize, w: ElemId| -> ElemId {
        if src_nc.contains(&k) {
            (0..tgt_dec.factors.len())
                .filter(|&j| j != phi[k])
                .fold(0, |acc, j| tgt.mul(acc, tgt_proj[j][f[w as usize] as usize]))
        } else {
            f[w as usize]
        }
    };
    let central: Vec<ElemId> = src
        .elements()
        .map(|w| (0..src_dec.factors.len()).fold(0, |acc, k| tgt.mul(acc, on_factor(k, src_proj[k][w as usize]))))
        .collect();

    let tgt_center: Vec<ElemId> =
        tgt.elements().filter(|&z| tgt.generators().iter().all(|&s| tgt.mul(z, s) == tgt.mul(s, z))).collect();
    if central.iter().any(|z| !tgt_center.contains(z)) {
        return fail("central part leaves the center".into());
    }
    for a in src.elements() {
        for &b in src.generators() {
            if central[src.mul(a, b) as usize] != tgt.mul(central[a as usize], central[b as usize]) {
                return fail("central part is not a homomorphism".into());
            }
        }
    }
    for (k, maps) in factor_maps.iter().enumerate() {
        match maps {
            Some(pairs) => {
                for &(w, gw) in pairs {
                    if f[w as usize] != tgt.mul(gw, central[w as usize]) {
                        return fail(format!("reconstruction fails on factor {k}"));
                    }
                }
            }
            None => {
                for &w in src_dec.factors[k].ids() {
                    if f[w as usize] != central[w as usize] {
                        return fail(format!("reconstruction fails on abelian factor {k}"));
                    }
                }
            }
        }
    }
    Ok(FactorIsomorphism { phi, factor_maps, central })
}

/// The four quantities whose quotient is `|Aut(G)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutBudget {
    /// Invertible homomorphisms `G -> Z(G)`.
    pub h1: BigUint,
    /// Product of `|Aut(G_k)|` over the noncentral factors.
    pub h2: BigUint,
    /// Permutations of isomorphic noncentral factors.
    pub h3: BigUint,
    /// Central homomorphisms killing the abelian factors and mapping each
    /// noncentral factor into its own center.
    pub h4: BigUint,
}

impl AutBudget {
    pub fn order(&self) -> BigUint {
        &self.h1 * &self.h2 * &self.h3 / &self.h4
    }
}

/// Compute the four pieces for a decomposed group.
pub fn aut_decomposition<G: Group>(g: &G, dec: &DirectDecomposition) -> Result<AutBudget> {
    dec.projections(g)?;
    let monoid = HomMonoid::new(g);
    let homs = monoid.enumerate()?;
    let h1 = homs.iter().filter(|f| monoid.is_invertible(f)).count();
    let nc = dec.noncentral(g);
    let mut h2 = BigUint::one();
    for &k in &nc {
        let factor = &dec.factors[k];
        let gens = generating_set(g, factor);
        let (table, _) = TableGroup::from_subgroup(g, factor, &gens);
        h2 *= automorphisms(&table)?.len();
    }
    let mut multiplicity: BTreeMap<TypeLabel, u32> = BTreeMap::new();
    for &k in &nc {
        *multiplicity.entry(dec.labels[k]).or_default() += 1;
    }
    let h3 = multiplicity.values().fold(BigUint::one(), |acc, &m| acc * (1..=m).product::<u32>());
    let abelian: Vec<ElemId> = (0..dec.factors.len())
        .filter(|k| !nc.contains(k))
        .flat_map(|k| dec.factors[k].ids().to_vec())
        .collect();
    let kernel = closure(g, &abelian);
    let targets: Vec<(Subgroup, Subgroup)> =
        nc.iter().map(|&k| (dec.factors[k].clone(), factor_center(g, &dec.factors[k]))).collect();
    let h4 = monoid.enumerate_constrained(&kernel, &targets)?.len();
    Ok(AutBudget { h1: h1.into(), h2, h3, h4: h4.into() })
}

/// `|Aut(Sym(n_1) x ... x Sym(n_k))|` by closed formula.
pub fn aut_order_symproduct(sizes: &[u32]) -> BigUint {
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for &n in sizes {
        *mult.entry(n).or_default() += 1;
    }
    let get = |n: u32| mult.get(&n).copied().unwrap_or(0);
    let (total, m1, m2, m6) = (sizes.len() as u32, get(1), get(2), get(6));
    let exponent = m2 * (total - m1 - m2) + m2 * m2.saturating_sub(1) / 2 + m6;
    let two = BigUint::from(2u32);
    let mut out = two.pow(exponent);
    for i in 1..=m2 {
        out *= two.pow(i) - BigUint::one();
    }
    let factorial = |n: u32| (1..=n).fold(BigUint::one(), |acc, k| acc * k);
    for (&n, &m) in mult.range(3..) {
        out *= factorial(n).pow(m) * factorial(m);
    }
    out
}

/// Rotation subgroup of `W(E7)` or `W(H3)` as a sign-character kernel.
pub fn rotation_subgroup(g: &EnumeratedGroup) -> Subgroup {
    Character::sign(g.rank()).kernel(g)
}
