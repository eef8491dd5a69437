use super::{conjugacy_classes, element_order, extend_homomorphism, spanning_tree, ElemId, Group};
use crate::error::{Error, Result};

/// Limit on backtracking nodes in one isomorphism or automorphism search.
pub const ISO_NODE_CAP: usize = 20_000_000;

/// Element orders and conjugacy class sizes, per element.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub order: Vec<usize>,
    pub class_size: Vec<usize>,
}

impl Invariants {
    pub fn of<G: Group>(g: &G) -> Self {
        let (class_of, sizes) = conjugacy_classes(g);
        Invariants {
            order: g.elements().map(|x| element_order(g, x)).collect(),
            class_size: class_of.iter().map(|&c| sizes[c]).collect(),
        }
    }

    fn key(&self, x: ElemId) -> (usize, usize) {
        (self.order[x as usize], self.class_size[x as usize])
    }

    /// Sorted multiset of `(order, class size)` pairs.
    pub fn profile(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = (0..self.order.len()).map(|x| self.key(x as ElemId)).collect();
        v.sort_unstable();
        v
    }
}

struct Search<'a, S: Group, T: Group> {
    src: &'a S,
    tgt: &'a T,
    gens: Vec<ElemId>,
    tree: Vec<(ElemId, ElemId, usize)>,
    candidates: Vec<Vec<ElemId>>,
    pair_orders: Vec<Vec<usize>>,
    tgt_inv: &'a Invariants,
    nodes: usize,
    bijective_only: bool,
}

impl<S: Group, T: Group> Search<'_, S, T> {
    /// Visit every consistent assignment; `visit` returns `true` to stop.
    fn run(&mut self, images: &mut Vec<ElemId>, visit: &mut dyn FnMut(Vec<ElemId>) -> bool) -> Result<bool> {
        let i = images.len();
        if i == self.gens.len() {
            if let Some(map) = extend_homomorphism(self.src, &self.gens, &self.tree, images, self.tgt) {
                if !self.bijective_only || is_bijective(&map) {
                    return Ok(visit(map));
                }
            }
            return Ok(false);
        }
        for c in 0..self.candidates[i].len() {
            let y = self.candidates[i][c];
            self.nodes += 1;
            if self.nodes > ISO_NODE_CAP {
                return Err(Error::CapExceeded(ISO_NODE_CAP));
            }
            let consistent = (0..i).all(|j| {
                let o = self.tgt_order_of(self.tgt.mul(images[j], y));
                if self.bijective_only {
                    o == self.pair_orders[j][i]
                } else {
                    self.pair_orders[j][i] % o == 0
                }
            });
            if !consistent {
                continue;
            }
            images.push(y);
            let stop = self.run(images, visit)?;
            images.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn tgt_order_of(&self, x: ElemId) -> usize {
        self.tgt_inv.order[x as usize]
    }
}

fn is_bijective(map: &[ElemId]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&y| (y as usize) < seen.len() && !std::mem::replace(&mut seen[y as usize], true))
}

fn setup<'a, S: Group, T: Group>(
    src: &'a S,
    tgt: &'a T,
    src_inv: &Invariants,
    tgt_inv: &'a Invariants,
    allowed: Option<&[ElemId]>,
    bijective_only: bool,
) -> Option<Search<'a, S, T>> {
    let gens = src.generators().to_vec();
    let tree = spanning_tree(src, &gens)?;
    let pool: Vec<ElemId> = match allowed {
        Some(a) => a.to_vec(),
        None => tgt.elements().collect(),
    };
    let candidates = gens
        .iter()
        .map(|&g| {
            pool.iter()
                .copied()
                .filter(|&y| {
                    if bijective_only {
                        tgt_inv.key(y) == src_inv.key(g)
                    } else {
                        src_inv.order[g as usize] % tgt_inv.order[y as usize] == 0
                    }
                })
                .collect()
        })
        .collect();
    let pair_orders = gens
        .iter()
        .map(|&a| gens.iter().map(|&b| src_inv.order[src.mul(a, b) as usize]).collect())
        .collect();
    Some(Search { src, tgt, gens, tree, candidates, pair_orders, tgt_inv, nodes: 0, bijective_only })
}

/// An isomorphism `src -> tgt` as an image table, found by backtracking over
/// images of the generators of `src`.
///
/// Candidates must match element order and class size; pairwise products must
/// have matching orders. Each full assignment is checked on every
/// `(element, generator)` pair and for bijectivity.
pub fn find_isomorphism<S: Group, T: Group>(src: &S, tgt: &T) -> Result<Option<Vec<ElemId>>> {
    if src.order() != tgt.order() {
        return Ok(None);
    }
    let src_inv = Invariants::of(src);
    let tgt_inv = Invariants::of(tgt);
    if src_inv.profile() != tgt_inv.profile() {
        return Ok(None);
    }
    let Some(mut search) = setup(src, tgt, &src_inv, &tgt_inv, None, true) else {
        return Ok(None);
    };
    let mut found = None;
    search.run(&mut Vec::new(), &mut |map| {
        found = Some(map);
        true
    })?;
    Ok(found)
}

/// Every automorphism, each as an image table.
pub fn automorphisms<G: Group>(g: &G) -> Result<Vec<Vec<ElemId>>> {
    let inv = Invariants::of(g);
    let mut search = setup(g, g, &inv, &inv, None, true).expect("generators generate");
    let mut out = Vec::new();
    search.run(&mut Vec::new(), &mut |map| {
        out.push(map);
        false
    })?;
    Ok(out)
}

/// Every homomorphism `src -> tgt` whose image lies in `allowed`, which must be a subgroup.
pub fn homomorphisms<S: Group, T: Group>(src: &S, tgt: &T, allowed: &[ElemId]) -> Result<Vec<Vec<ElemId>>> {
    let src_inv = Invariants::of(src);
    let tgt_inv = Invariants::of(tgt);
    let mut search = setup(src, tgt, &src_inv, &tgt_inv, Some(allowed), false).expect("generators generate");
    let mut out = Vec::new();
    search.run(&mut Vec::new(), &mut |map| {
        out.push(map);
        false
    })?;
    Ok(out)
}
