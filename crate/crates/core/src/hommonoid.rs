//! The monoid of homomorphisms `G -> Z(G)` under `(f * g)(w) = f(w) g(w) f(g(w))^-1`.

use crate::engine::{center, homomorphisms, ElemId, Group, Subgroup};
use crate::error::Result;

/// A homomorphism into the center, as a table of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralHom {
    pub values: Vec<ElemId>,
}

impl CentralHom {
    pub fn apply(&self, w: ElemId) -> ElemId {
        self.values[w as usize]
    }
}

/// `Hom(G, Z(G))` together with the group it lives over.
pub struct HomMonoid<'a, G: Group> {
    group: &'a G,
    center: Subgroup,
}

impl<'a, G: Group> HomMonoid<'a, G> {
    pub fn new(group: &'a G) -> Self {
        HomMonoid { group, center: center(group) }
    }

    pub fn group(&self) -> &G {
        self.group
    }

    pub fn center(&self) -> &Subgroup {
        &self.center
    }

    /// The neutral element `w -> 1`.
    pub fn unit(&self) -> CentralHom {
        CentralHom { values: vec![0; self.group.order()] }
    }

    /// Every homomorphism `G -> Z(G)`.
    pub fn enumerate(&self) -> Result<Vec<CentralHom>> {
        let mut homs: Vec<CentralHom> = homomorphisms(self.group, self.group, self.center.ids())?
            .into_iter()
            .map(|values| CentralHom { values })
            .collect();
        homs.sort();
        Ok(homs)
    }

    /// Homomorphisms into `Z(G)` that vanish on `kernel` and take `factor_targets[i].0` into `factor_targets[i].1`.
    pub fn enumerate_constrained(&self, kernel: &Subgroup, targets: &[(Subgroup, Subgroup)]) -> Result<Vec<CentralHom>> {
        Ok(self
            .enumerate()?
            .into_iter()
            .filter(|f| kernel.ids().iter().all(|&w| f.apply(w) == 0))
            .filter(|f| targets.iter().all(|(src, dst)| src.ids().iter().all(|&w| dst.contains(f.apply(w)))))
            .collect())
    }

    /// `(f * g)(w) = f(w) g(w) f(g(w))^-1`.
    pub fn star(&self, f: &CentralHom, g: &CentralHom) -> CentralHom {
        let grp = self.group;
        let values = grp
            .elements()
            .map(|w| {
                let fw = f.apply(w);
                let gw = g.apply(w);
                grp.mul(grp.mul(fw, gw), grp.inv(f.apply(gw)))
            })
            .collect();
        CentralHom { values }
    }

    /// `f_flat(w) = w f(w)^-1`, an endomorphism of `G`.
    pub fn flat(&self, f: &CentralHom) -> Vec<ElemId> {
        self.group.elements().map(|w| self.group.mul(w, self.group.inv(f.apply(w)))).collect()
    }

    /// `f` has an inverse exactly when `f_flat` restricts to a bijection of `Z(G)`.
    pub fn is_invertible(&self, f: &CentralHom) -> bool {
        self.flat_on_center(f).is_some()
    }

    /// Inverse of `f` restricted to the center, as a map `Z(G) -> Z(G)` indexed by element id.
    fn flat_on_center(&self, f: &CentralHom) -> Option<Vec<ElemId>> {
        let n = self.group.order();
        let mut inverse = vec![ElemId::MAX; n];
        for &z in self.center.ids() {
            let image = self.group.mul(z, self.group.inv(f.apply(z)));
            if !self.center.contains(image) || inverse[image as usize] != ElemId::MAX {
                return None;
            }
            inverse[image as usize] = z;
        }
        Some(inverse)
    }

    /// `f'(w) = (f_flat|Z)^-1(f(w))^-1`.
    pub fn invert(&self, f: &CentralHom) -> Option<CentralHom> {
        let back = self.flat_on_center(f)?;
        let values = self
            .group
            .elements()
            .map(|w| self.group.inv(back[f.apply(w) as usize]))
            .collect();
        Some(CentralHom { values })
    }
}
