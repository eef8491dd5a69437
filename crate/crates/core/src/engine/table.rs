use super::{closure, ElemId, Group, Subgroup};

/// A finite group given by its Cayley table, identity at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableGroup {
    n: usize,
    table: Vec<ElemId>,
    inverse: Vec<ElemId>,
    generators: Vec<ElemId>,
}

impl TableGroup {
    /// Build from a raw table; the caller guarantees the group axioms.
    pub fn from_table(n: usize, table: Vec<ElemId>, generators: Vec<ElemId>) -> Self {
        assert_eq!(table.len(), n * n);
        let mut inverse = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as ElemId;
                    break;
                }
            }
        }
        TableGroup { n, table, inverse, generators }
    }

    pub fn from_group<G: Group>(g: &G) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in g.elements() {
            for b in g.elements() {
                table.push(g.mul(a, b));
            }
        }
        TableGroup { n, table, inverse: g.elements().map(|a| g.inv(a)).collect(), generators: g.generators().to_vec() }
    }

    /// Tabulate a subgroup; returns the group and the map from new ids to old ids.
    ///
    /// `gens` must generate `h`. New ids follow the order of `h.ids()`.
    pub fn from_subgroup<G: Group>(g: &G, h: &Subgroup, gens: &[ElemId]) -> (Self, Vec<ElemId>) {
        let old: Vec<ElemId> = h.ids().to_vec();
        let mut new_of = vec![ElemId::MAX; g.order()];
        for (i, &x) in old.iter().enumerate() {
            new_of[x as usize] = i as ElemId;
        }
        let n = old.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &old {
            for &b in &old {
                table.push(new_of[g.mul(a, b) as usize]);
            }
        }
        let inverse = old.iter().map(|&a| new_of[g.inv(a) as usize]).collect();
        let generators = gens.iter().map(|&x| new_of[x as usize]).collect();
        (TableGroup { n, table, inverse, generators }, old)
    }

    /// `a x b` with element `(i, j)` stored at `i * |b| + j`.
    pub fn direct_product(a: &TableGroup, b: &TableGroup) -> Self {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let i = a.mul((x / nb) as ElemId, (y / nb) as ElemId) as usize;
                let j = b.mul((x % nb) as ElemId, (y % nb) as ElemId) as usize;
                table.push((i * nb + j) as ElemId);
            }
        }
        let inverse = (0..n)
            .map(|x| {
                let i = a.inv((x / nb) as ElemId) as usize;
                let j = b.inv((x % nb) as ElemId) as usize;
                (i * nb + j) as ElemId
            })
            .collect();
        let mut generators: Vec<ElemId> = a.generators.iter().map(|&g| g * nb as ElemId).collect();
        generators.extend(b.generators.iter().copied());
        TableGroup { n, table, inverse, generators }
    }

    /// Replace the generating set.
    pub fn with_generators(mut self, gens: Vec<ElemId>) -> Self {
        debug_assert_eq!(closure(&self, &gens).order(), self.n);
        self.generators = gens;
        self
    }
}

impl Group for TableGroup {
    fn order(&self) -> usize {
        self.n
    }

    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.table[a as usize * self.n + b as usize]
    }

    fn inv(&self, a: ElemId) -> ElemId {
        self.inverse[a as usize]
    }

    fn generators(&self) -> &[ElemId] {
        &self.generators
    }
}
