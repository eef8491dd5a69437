use std::collections::HashMap;
use std::sync::OnceLock;

use super::{ElemId, Group};
use crate::error::{Error, Result};
use crate::graph::{CoxeterGraph, VertexSet};
use crate::rootspace::{CoxeterSystem, GroupElement, RootId};

/// Default limit on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 10_000;

/// Groups up to this order get a full multiplication table on demand.
const TABLE_LIMIT: usize = 4096;

/// Element cap from `COXKIT_CAP`, falling back to [`DEFAULT_CAP`].
pub fn default_cap() -> usize {
    std::env::var("COXKIT_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// All elements of a finite Coxeter group.
///
/// Elements are numbered in breadth-first order over right multiplication by
/// generators, so id 0 is the identity and ids `1..=n` are the generators.
#[derive(Debug)]
pub struct EnumeratedGroup {
    system: CoxeterSystem,
    elements: Vec<GroupElement>,
    index: HashMap<u128, ElemId>,
    radix: u128,
    parent: Vec<(ElemId, usize)>,
    depth: Vec<u32>,
    inverse: Vec<ElemId>,
    generators: Vec<ElemId>,
    table: OnceLock<Vec<ElemId>>,
}

impl EnumeratedGroup {
    pub fn new(graph: &CoxeterGraph) -> Result<Self> {
        Self::with_cap(graph, default_cap())
    }

    pub fn with_cap(graph: &CoxeterGraph, cap: usize) -> Result<Self> {
        let system = CoxeterSystem::new(graph)?;
        Self::from_system(system, cap)
    }

    pub fn from_system(system: CoxeterSystem, cap: usize) -> Result<Self> {
        let n = system.rank();
        let radix = system.roots().len().max(2) as u128;
        if (radix as f64).powi(n as i32) >= 2f64.powi(127) {
            return Err(Error::CapExceeded(cap));
        }
        let mut group = EnumeratedGroup {
            elements: vec![system.identity()],
            index: HashMap::new(),
            radix,
            parent: vec![(0, usize::MAX)],
            depth: vec![0],
            inverse: Vec::new(),
            generators: Vec::new(),
            table: OnceLock::new(),
            system,
        };
        let id_key = group.key(&group.elements[0].images[..n]);
        group.index.insert(id_key, 0);
        let mut head = 0;
        while head < group.elements.len() {
            for s in 0..n {
                let key = {
                    let w = &group.elements[head];
                    let sys = &group.system;
                    let images: Vec<RootId> =
                        (0..n).map(|t| sys.act(w, sys.roots().reflect(s, t as RootId))).collect();
                    group.key(&images)
                };
                if group.index.contains_key(&key) {
                    continue;
                }
                if group.elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                let next = group.system.times_generator(&group.elements[head], s);
                let id = group.elements.len() as ElemId;
                group.index.insert(key, id);
                group.elements.push(next);
                group.parent.push((head as ElemId, s));
                group.depth.push(group.depth[head] + 1);
            }
            head += 1;
        }
        group.generators = (0..n).map(|s| group.generator_id(s)).collect();
        group.inverse = (0..group.elements.len())
            .map(|i| {
                let inv = group.system.inverse(&group.elements[i]);
                group.id_of(&inv).expect("inverse is enumerated")
            })
            .collect();
        Ok(group)
    }

    fn key(&self, simple_images: &[RootId]) -> u128 {
        simple_images.iter().fold(0u128, |acc, &r| acc * self.radix + r as u128)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn graph(&self) -> &CoxeterGraph {
        self.system.graph()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn element(&self, id: ElemId) -> &GroupElement {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, w: &GroupElement) -> Option<ElemId> {
        let n = self.rank();
        self.index.get(&self.key(&w.images[..n])).copied()
    }

    /// Id of the simple reflection `s`.
    pub fn generator_id(&self, s: usize) -> ElemId {
        let g = self.system.generator(s);
        self.id_of(&g).expect("generator is enumerated")
    }

    /// Length, i.e. breadth-first depth.
    pub fn length(&self, id: ElemId) -> usize {
        self.depth[id as usize] as usize
    }

    /// A reduced word (generator indices), read left to right.
    pub fn reduced_word(&self, id: ElemId) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = id;
        while cur != 0 {
            let (p, s) = self.parent[cur as usize];
            word.push(s);
            cur = p;
        }
        word.reverse();
        word
    }

    pub fn from_word(&self, letters: &[usize]) -> ElemId {
        letters.iter().fold(0, |acc, &s| self.mul(acc, self.generators[s]))
    }

    /// Breadth-first parent pointers: element `i` is `parent(i) * s`.
    pub fn parent(&self, id: ElemId) -> Option<(ElemId, usize)> {
        (id != 0).then(|| self.parent[id as usize])
    }

    /// Id of the reflection along a root.
    pub fn reflection_id(&self, root: RootId) -> ElemId {
        self.id_of(&self.system.reflection(root)).expect("reflection is enumerated")
    }

    /// Elements of the standard parabolic subgroup `W_I`, as a set of ids.
    pub fn parabolic(&self, set: VertexSet) -> super::Subgroup {
        let gens: Vec<ElemId> = set.iter().map(|s| self.generators[s]).collect();
        super::closure(self, &gens)
    }

    /// Build the full multiplication table if the group is small enough.
    pub fn ensure_table(&self) -> bool {
        if self.elements.len() > TABLE_LIMIT {
            return false;
        }
        self.table.get_or_init(|| {
            let n = self.elements.len();
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n as ElemId {
                for b in 0..n as ElemId {
                    table.push(self.mul_slow(a, b));
                }
            }
            table
        });
        true
    }

    fn mul_slow(&self, a: ElemId, b: ElemId) -> ElemId {
        let n = self.rank();
        let wa = &self.elements[a as usize];
        let wb = &self.elements[b as usize];
        let images: Vec<RootId> = (0..n).map(|s| self.system.act(wa, wb.images[s])).collect();
        self.index[&self.key(&images)]
    }
}

impl Group for EnumeratedGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match self.table.get() {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a as usize]
    }

    fn generators(&self) -> &[ElemId] {
        &self.generators
    }
}
