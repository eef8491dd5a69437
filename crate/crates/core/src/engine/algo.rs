use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::{ElemId, Group, Subgroup};

/// Subgroup generated by `gens`.
pub fn closure<G: Group>(g: &G, gens: &[ElemId]) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(g.order());
    members.insert(0);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !members.put(y as usize) {
                queue.push_back(y);
            }
        }
    }
    Subgroup::from_members(g.order(), members)
}

/// Conjugacy class of `x` under the whole group.
pub fn conjugacy_class<G: Group>(g: &G, x: ElemId) -> Vec<ElemId> {
    conjugacy_class_with_witness(g, x).into_keys().collect()
}

/// Map from each conjugate `u x u^-1` to one conjugator `u`.
pub fn conjugacy_class_with_witness<G: Group>(g: &G, x: ElemId) -> HashMap<ElemId, ElemId> {
    let mut seen = HashMap::from([(x, 0)]);
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        let u = seen[&y];
        for &s in g.generators() {
            let z = g.conjugate(s, y);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(z) {
                e.insert(g.mul(s, u));
                queue.push_back(z);
            }
        }
    }
    seen
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure<G: Group>(g: &G, gens: &[ElemId]) -> Subgroup {
    let mut all: Vec<ElemId> = Vec::new();
    let mut seen = HashSet::new();
    for &x in gens {
        if seen.contains(&x) {
            continue;
        }
        for y in conjugacy_class(g, x) {
            if seen.insert(y) {
                all.push(y);
            }
        }
    }
    closure(g, &all)
}

/// Elements commuting with every element of `xs`.
pub fn centralizer<G: Group>(g: &G, xs: &[ElemId]) -> Subgroup {
    Subgroup::from_ids(
        g.order(),
        g.elements().filter(|&w| xs.iter().all(|&x| g.mul(w, x) == g.mul(x, w))),
    )
}

pub fn center<G: Group>(g: &G) -> Subgroup {
    centralizer(g, g.generators())
}

/// A small generating set of `h`, chosen greedily in id order.
pub fn generating_set<G: Group>(g: &G, h: &Subgroup) -> Vec<ElemId> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g.order());
    for &x in h.ids() {
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens);
            if span.order() == h.order() {
                break;
            }
        }
    }
    gens
}

/// `{ w : w h w^-1 = h }`.
pub fn normalizer<G: Group>(g: &G, h: &Subgroup) -> Subgroup {
    let gens = generating_set(g, h);
    Subgroup::from_ids(
        g.order(),
        g.elements().filter(|&w| gens.iter().all(|&x| h.contains(g.conjugate(w, x)))),
    )
}

/// Largest normal subgroup of `g` inside `h`.
///
/// Shrinks `h` by intersecting with its conjugates under the generators of `g`
/// until nothing changes; the fixed point is the intersection of all conjugates.
pub fn core<G: Group>(g: &G, h: &Subgroup) -> Subgroup {
    let mut current = h.clone();
    loop {
        let kept: Vec<ElemId> = current
            .ids()
            .iter()
            .copied()
            .filter(|&x| g.generators().iter().all(|&s| current.contains(g.conjugate(s, x))))
            .collect();
        if kept.len() == current.order() {
            return current;
        }
        current = Subgroup::from_ids(g.order(), kept);
    }
}

/// Intersection of `w h w^-1` over every `w`; slow, used as a cross-check.
pub fn core_by_intersection<G: Group>(g: &G, h: &Subgroup) -> Subgroup {
    let mut members = h.members().clone();
    for w in g.elements() {
        let mut conj = FixedBitSet::with_capacity(g.order());
        for &x in h.ids() {
            conj.insert(g.conjugate(w, x) as usize);
        }
        members.intersect_with(&conj);
    }
    Subgroup::from_members(g.order(), members)
}

pub fn is_normal<G: Group>(g: &G, h: &Subgroup) -> bool {
    let gens = generating_set(g, h);
    g.generators().iter().all(|&s| gens.iter().all(|&x| h.contains(g.conjugate(s, x))))
}

/// `w h w^-1` as a subgroup.
pub fn conjugate_subgroup<G: Group>(g: &G, w: ElemId, h: &Subgroup) -> Subgroup {
    Subgroup::from_ids(g.order(), h.ids().iter().map(|&x| g.conjugate(w, x)))
}

pub fn element_order<G: Group>(g: &G, x: ElemId) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != 0 {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

pub fn is_abelian<G: Group>(g: &G) -> bool {
    let gens = g.generators();
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// Class id for every element plus the class sizes.
pub fn conjugacy_classes<G: Group>(g: &G) -> (Vec<usize>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut sizes = Vec::new();
    for x in g.elements() {
        if class_of[x as usize] != usize::MAX {
            continue;
        }
        let class = conjugacy_class(g, x);
        for &y in &class {
            class_of[y as usize] = sizes.len();
        }
        sizes.push(class.len());
    }
    (class_of, sizes)
}

/// One representative (smallest id) per conjugacy class of involutions.
pub fn involution_class_representatives<G: Group>(g: &G) -> Vec<ElemId> {
    let (class_of, _) = conjugacy_classes(g);
    let mut seen = HashSet::new();
    g.elements()
        .filter(|&x| x != 0 && g.mul(x, x) == 0)
        .filter(|&x| seen.insert(class_of[x as usize]))
        .collect()
}

/// Breadth-first tree over right multiplication by `gens`: entries `(x, parent, k)`
/// with `x = parent * gens[k]`. Returns `None` when `gens` do not generate.
pub fn spanning_tree<G: Group>(g: &G, gens: &[ElemId]) -> Option<Vec<(ElemId, ElemId, usize)>> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    seen.insert(0);
    let mut order = Vec::with_capacity(g.order());
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen.put(y as usize) {
                order.push((y, x, k));
                queue.push_back(y);
            }
        }
    }
    (order.len() + 1 == g.order()).then_some(order)
}

/// Extend generator images to a map on all of `src` and check it is a homomorphism.
pub fn extend_homomorphism<S: Group, T: Group>(
    src: &S,
    gens: &[ElemId],
    tree: &[(ElemId, ElemId, usize)],
    images: &[ElemId],
    tgt: &T,
) -> Option<Vec<ElemId>> {
    let mut map = vec![0; src.order()];
    for &(x, parent, k) in tree {
        map[x as usize] = tgt.mul(map[parent as usize], images[k]);
    }
    for x in src.elements() {
        for (k, &s) in gens.iter().enumerate() {
            if map[src.mul(x, s) as usize] != tgt.mul(map[x as usize], images[k]) {
                return None;
            }
        }
    }
    Some(map)
}

/// Every subgroup; only sensible for small groups.
pub fn all_subgroups<G: Group>(g: &G) -> Vec<Subgroup> {
    let mut found: HashSet<Subgroup> = HashSet::new();
    let mut queue = vec![Subgroup::trivial(g.order())];
    found.insert(queue[0].clone());
    while let Some(h) = queue.pop() {
        let gens = generating_set(g, &h);
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let mut ext = gens.clone();
            ext.push(x);
            let k = closure(g, &ext);
            if found.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| (a.order(), a.ids()).cmp(&(b.order(), b.ids())));
    out
}

/// Every normal subgroup, built as joins of normal closures of single elements.
pub fn normal_subgroups<G: Group>(g: &G) -> Vec<Subgroup> {
    let mut minimal: Vec<Subgroup> = Vec::new();
    let mut seen = HashSet::new();
    for x in g.elements() {
        let n = normal_closure(g, &[x]);
        if seen.insert(n.clone()) {
            minimal.push(n);
        }
    }
    let mut found: HashSet<Subgroup> = minimal.iter().cloned().collect();
    let mut frontier: Vec<Subgroup> = minimal.clone();
    while let Some(n) = frontier.pop() {
        for m in &minimal {
            if m.is_subset(&n) {
                continue;
            }
            let mut gens = n.ids().to_vec();
            gens.extend_from_slice(m.ids());
            let join = closure(g, &generating_set_of_ids(g, &gens));
            if found.insert(join.clone()) {
                frontier.push(join);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| (a.order(), a.ids()).cmp(&(b.order(), b.ids())));
    out
}

fn generating_set_of_ids<G: Group>(g: &G, ids: &[ElemId]) -> Vec<ElemId> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g.order());
    for &x in ids {
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens);
        }
    }
    gens
}

/// `g` is the internal direct product of normal subgroups `a` and `b`.
pub fn is_internal_direct_product<G: Group>(g: &G, a: &Subgroup, b: &Subgroup) -> bool {
    a.order() * b.order() == g.order()
        && a.intersection(b).is_trivial()
        && is_normal(g, a)
        && is_normal(g, b)
}

/// Brute-force test for a decomposition into two nontrivial normal factors.
pub fn is_directly_decomposable<G: Group>(g: &G) -> bool {
    let normals = normal_subgroups(g);
    normals.iter().any(|a| {
        !a.is_trivial()
            && a.order() < g.order()
            && normals.iter().any(|b| !b.is_trivial() && is_internal_direct_product(g, a, b))
    })
}
