//! The geometric representation: bilinear form, root system and the action
//! of group elements as permutations of roots.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use crate::classify::{classify, TypeLabel};
use crate::error::{Error, Result};
use crate::graph::{CoxeterGraph, VertexSet, INF};

/// Default matching tolerance for root vectors.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Hard upper bound on the number of roots.
pub const ROOT_CAP: usize = 1_000_000;

pub type RootId = u32;

/// The symmetric form `<a_s, a_t> = -cos(pi / m(s, t))`.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    n: usize,
    entries: Vec<f64>,
}

impl BilinearForm {
    pub fn new(g: &CoxeterGraph) -> Self {
        let n = g.rank();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let m = g.m(i, j);
                entries[i * n + j] = match m {
                    1 => 1.0,
                    INF => -1.0,
                    m => -(PI / m as f64).cos(),
                };
            }
        }
        BilinearForm { n, entries }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `<a_i, a_j>`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn eval(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut total = 0.0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0.0 {
                continue;
            }
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            total += ui * row.iter().zip(v).map(|(b, vj)| b * vj).sum::<f64>();
        }
        total
    }

    /// `<a_s, v>`.
    pub fn with_simple(&self, s: usize, v: &[f64]) -> f64 {
        let row = &self.entries[s * self.n..(s + 1) * self.n];
        row.iter().zip(v).map(|(b, vj)| b * vj).sum()
    }

    /// `s . v = v - 2 <a_s, v> a_s`.
    pub fn reflect_simple(&self, s: usize, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        out[s] -= 2.0 * self.with_simple(s, v);
        out
    }
}

/// Sign convention: the coordinate of largest magnitude decides.
pub fn is_positive_vector(v: &[f64]) -> bool {
    let mut best = 0.0f64;
    for &x in v {
        if x.abs() > best.abs() {
            best = x;
        }
    }
    best > 0.0
}

/// Hash-bucketed nearest-match index over root vectors.
#[derive(Clone, Debug)]
struct RootIndex {
    weights: Vec<f64>,
    buckets: HashMap<i64, Vec<RootId>>,
}

const BUCKET_WIDTH: f64 = 1e-5;

impl RootIndex {
    fn new(n: usize) -> Self {
        let weights = (0..n).map(|k| 1.0 + ((k as f64 + 1.0) * 0.618_033_988_749_895).fract()).collect();
        RootIndex { weights, buckets: HashMap::new() }
    }

    fn projection(&self, v: &[f64]) -> f64 {
        v.iter().zip(&self.weights).map(|(x, w)| x * w).sum()
    }

    fn insert(&mut self, v: &[f64], id: RootId) {
        let key = (self.projection(v) / BUCKET_WIDTH).floor() as i64;
        self.buckets.entry(key).or_default().push(id);
    }

    fn candidates(&self, v: &[f64]) -> impl Iterator<Item = RootId> + '_ {
        let key = (self.projection(v) / BUCKET_WIDTH).floor() as i64;
        (key - 1..=key + 1).flat_map(move |k| self.buckets.get(&k).into_iter().flatten().copied())
    }
}

/// All roots of a finite Coxeter system, positive roots first.
///
/// Ids `0..p` are the positive roots with `i < n` the simple root `a_i`;
/// id `i + p` is the negative of root `i`.
#[derive(Clone, Debug)]
pub struct RootTable {
    n: usize,
    positive: usize,
    coords: Vec<f64>,
    eps: f64,
    index: RootIndex,
    /// `simple_action[s][i]` is the id of `s . root_i` for positive `i`.
    simple_action: Vec<Vec<RootId>>,
}

impl RootTable {
    /// Close the simple roots under the simple reflections.
    ///
    /// Fails with `Error::Infinite` when the group is infinite and with
    /// `Error::Numerical` when a vector drifts away from the unit sphere.
    pub fn enumerate(g: &CoxeterGraph, form: &BilinearForm, eps: f64) -> Result<Self> {
        let n = g.rank();
        let mut bound = 0usize;
        for (_, label) in classify(g) {
            match label.positive_roots() {
                Some(p) => bound += p,
                None => return Err(Error::Infinite),
            }
        }
        if 2 * bound > ROOT_CAP {
            return Err(Error::CapExceeded(ROOT_CAP));
        }
        let mut table = RootTable {
            n,
            positive: 0,
            coords: Vec::with_capacity(bound * n),
            eps,
            index: RootIndex::new(n),
            simple_action: vec![Vec::with_capacity(bound); n],
        };
        for i in 0..n {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            table.push(&v);
        }
        let mut queue: VecDeque<RootId> = (0..n as RootId).collect();
        let mut pending: Vec<Vec<(RootId, RootId)>> = vec![Vec::new(); n];
        while let Some(id) = queue.pop_front() {
            let v = table.vector(id).to_vec();
            for s in 0..n {
                if id as usize == s {
                    continue;
                }
                let w = form.reflect_simple(s, &v);
                if !is_positive_vector(&w) {
                    return Err(Error::Numerical(format!(
                        "reflection {s} sent positive root {id} to a negative vector"
                    )));
                }
                let image = match table.find(&w) {
                    Some(found) => found,
                    None => {
                        let norm = form.eval(&w, &w);
                        if (norm - 1.0).abs() > 1e-6 {
                            return Err(Error::Numerical(format!("root of norm {norm}")));
                        }
                        if table.positive >= bound {
                            return Err(Error::Numerical("more roots than the type allows".into()));
                        }
                        let new = table.push(&w);
                        queue.push_back(new);
                        new
                    }
                };
                pending[s].push((id, image));
            }
        }
        let p = table.positive;
        if p != bound {
            return Err(Error::Numerical(format!("found {p} positive roots, expected {bound}")));
        }
        for (s, pairs) in pending.into_iter().enumerate() {
            let mut action = vec![0; p];
            action[s] = (s + p) as RootId;
            for (from, to) in pairs {
                action[from as usize] = to;
            }
            table.simple_action[s] = action;
        }
        Ok(table)
    }

    fn push(&mut self, v: &[f64]) -> RootId {
        let id = self.positive as RootId;
        self.coords.extend_from_slice(v);
        self.index.insert(v, id);
        self.positive += 1;
        id
    }

    fn tolerance(&self, v: &[f64]) -> f64 {
        let scale = v.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
        self.eps * scale
    }

    /// Find a positive root within tolerance of `v`.
    fn find(&self, v: &[f64]) -> Option<RootId> {
        let tol = self.tolerance(v);
        self.index.candidates(v).find(|&id| {
            self.vector(id).iter().zip(v).all(|(a, b)| (a - b).abs() <= tol)
        })
    }

    /// Id of the root nearest to `v`, or `None` when nothing lies within tolerance.
    pub fn lookup(&self, v: &[f64]) -> Option<RootId> {
        if let Some(id) = self.find(v) {
            return Some(id);
        }
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        self.find(&neg).map(|id| self.negate(id))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn positive_count(&self) -> usize {
        self.positive
    }

    pub fn len(&self) -> usize {
        2 * self.positive
    }

    pub fn is_empty(&self) -> bool {
        self.positive == 0
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        (id as usize) < self.positive
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let p = self.positive as RootId;
        if id < p {
            id + p
        } else {
            id - p
        }
    }

    /// Coordinates of a positive root.
    pub fn vector(&self, id: RootId) -> &[f64] {
        let i = id as usize;
        &self.coords[i * self.n..(i + 1) * self.n]
    }

    /// Coordinates of any root.
    pub fn coords(&self, id: RootId) -> Vec<f64> {
        if self.is_positive(id) {
            self.vector(id).to_vec()
        } else {
            self.vector(self.negate(id)).iter().map(|x| -x).collect()
        }
    }

    /// Simple reflection `s` applied to root `id`.
    pub fn reflect(&self, s: usize, id: RootId) -> RootId {
        if self.is_positive(id) {
            self.simple_action[s][id as usize]
        } else {
            self.negate(self.simple_action[s][self.negate(id) as usize])
        }
    }

    /// Simple roots with nonzero coefficient.
    pub fn support(&self, id: RootId) -> VertexSet {
        let v = self.coords(id);
        VertexSet::from_indices((0..self.n).filter(|&i| v[i].abs() > self.tolerance(&v)))
    }
}

/// A group element, recorded as its action on the positive roots.
///
/// `images[i]` is the id of `w . root_i`; the first `n` entries are the
/// images of the simple roots and already determine the element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub images: Vec<RootId>,
}

impl GroupElement {
    pub fn simple_images(&self, n: usize) -> &[RootId] {
        &self.images[..n]
    }
}

/// A finite Coxeter system with its roots; group arithmetic through root permutations.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    graph: CoxeterGraph,
    form: BilinearForm,
    roots: RootTable,
}

impl CoxeterSystem {
    pub fn new(graph: &CoxeterGraph) -> Result<Self> {
        Self::with_eps(graph, DEFAULT_EPS)
    }

    pub fn with_eps(graph: &CoxeterGraph, eps: f64) -> Result<Self> {
        let form = BilinearForm::new(graph);
        let roots = RootTable::enumerate(graph, &form, eps)?;
        Ok(CoxeterSystem { graph: graph.clone(), form, roots })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn roots(&self) -> &RootTable {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { images: (0..self.roots.positive as RootId).collect() }
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        GroupElement { images: self.roots.simple_action[s].clone() }
    }

    /// `w . root`.
    pub fn act(&self, w: &GroupElement, id: RootId) -> RootId {
        if self.roots.is_positive(id) {
            w.images[id as usize]
        } else {
            self.roots.negate(w.images[self.roots.negate(id) as usize])
        }
    }

    /// `a b`, acting as `b` first.
    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement { images: b.images.iter().map(|&r| self.act(a, r)).collect() }
    }

    /// `w s` for a simple reflection `s`.
    pub fn times_generator(&self, w: &GroupElement, s: usize) -> GroupElement {
        GroupElement {
            images: self.roots.simple_action[s].iter().map(|&r| self.act(w, r)).collect(),
        }
    }

    pub fn product<'a>(&self, elements: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        elements.into_iter().fold(self.identity(), |acc, x| self.compose(&acc, x))
    }

    /// Product of simple reflections, left to right.
    pub fn word(&self, letters: &[usize]) -> GroupElement {
        letters.iter().fold(self.identity(), |acc, &s| self.times_generator(&acc, s))
    }

    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        let p = self.roots.positive;
        let mut images = vec![0; p];
        for (i, &img) in w.images.iter().enumerate() {
            if self.roots.is_positive(img) {
                images[img as usize] = i as RootId;
            } else {
                images[self.roots.negate(img) as usize] = self.roots.negate(i as RootId);
            }
        }
        GroupElement { images }
    }

    pub fn is_identity(&self, w: &GroupElement) -> bool {
        w.images.iter().take(self.rank()).enumerate().all(|(i, &r)| r as usize == i)
    }

    /// Length, counted as the number of positive roots sent to negative roots.
    pub fn length(&self, w: &GroupElement) -> usize {
        w.images.iter().filter(|&&r| !self.roots.is_positive(r)).count()
    }

    /// Positive roots made negative by `w`.
    pub fn phi_w(&self, w: &GroupElement) -> Vec<RootId> {
        (0..self.roots.positive as RootId)
            .filter(|&i| !self.roots.is_positive(w.images[i as usize]))
            .collect()
    }

    /// Apply `w` to an arbitrary vector.
    pub fn act_vector(&self, w: &GroupElement, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rank()];
        for (s, &c) in v.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.roots.coords(w.images[s])) {
                *o += c * x;
            }
        }
        out
    }

    /// The reflection along a root: `v -> v - 2 <r, v> r`.
    pub fn reflection(&self, root: RootId) -> GroupElement {
        let r = self.roots.coords(root);
        let images = (0..self.roots.positive as RootId)
            .map(|i| {
                let v = self.roots.vector(i);
                let c = 2.0 * self.form.eval(&r, v);
                let image: Vec<f64> = v.iter().zip(&r).map(|(x, y)| x - c * y).collect();
                self.roots.lookup(&image).expect("reflection image is a root")
            })
            .collect();
        GroupElement { images }
    }

    /// Look up a root by coordinates, failing loudly when nothing is within tolerance.
    pub fn root_id(&self, v: &[f64]) -> Result<RootId> {
        self.roots
            .lookup(v)
            .ok_or_else(|| Error::Numerical(format!("no root within tolerance of {v:?}")))
    }

    /// Type of the parabolic subgroup on `set`, component by component.
    pub fn parabolic_types(&self, set: VertexSet) -> Vec<(VertexSet, TypeLabel)> {
        let (sub, map) = self.graph.induced(set);
        classify(&sub).into_iter().map(|(c, t)| (c.map(&map), t)).collect()
    }
}
