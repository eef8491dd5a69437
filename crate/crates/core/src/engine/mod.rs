//! Finite group enumeration and brute-force subgroup machinery.

mod algo;
mod enumerate;
mod iso;
mod table;

pub use algo::*;
pub use enumerate::{default_cap, EnumeratedGroup, DEFAULT_CAP};
pub use iso::{automorphisms, find_isomorphism, homomorphisms, Invariants, ISO_NODE_CAP};
pub use table::TableGroup;

use fixedbitset::FixedBitSet;

/// Index of an element inside one enumerated or tabulated group. The identity is 0.
pub type ElemId = u32;

/// The operations every finite group representation offers.
pub trait Group {
    fn order(&self) -> usize;
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId;
    fn inv(&self, a: ElemId) -> ElemId;
    fn generators(&self) -> &[ElemId];

    fn identity(&self) -> ElemId {
        0
    }

    fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.order() as ElemId
    }

    /// `g x g^-1`.
    fn conjugate(&self, g: ElemId, x: ElemId) -> ElemId {
        self.mul(self.mul(g, x), self.inv(g))
    }
}

/// A subgroup, kept as a sorted id list plus a membership bitset.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ids: Vec<ElemId>,
    members: FixedBitSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ids.hash(state);
    }
}

impl Subgroup {
    /// Wrap a set already known to be a subgroup of a group of order `universe`.
    pub fn from_members(universe: usize, members: FixedBitSet) -> Self {
        debug_assert_eq!(members.len(), universe);
        let ids = members.ones().map(|i| i as ElemId).collect();
        Subgroup { ids, members }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = ElemId>) -> Self {
        let mut members = FixedBitSet::with_capacity(universe);
        for id in ids {
            members.insert(id as usize);
        }
        Self::from_members(universe, members)
    }

    pub fn trivial(universe: usize) -> Self {
        Self::from_ids(universe, [0])
    }

    pub fn whole(universe: usize) -> Self {
        Self::from_ids(universe, 0..universe as ElemId)
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[ElemId] {
        &self.ids
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.members.contains(x as usize)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.ids.len() == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Self::from_members(self.members.len(), members)
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }
}
