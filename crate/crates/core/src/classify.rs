//! Type labels, catalog graphs and classification of Coxeter graphs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{graph_isomorphism, CoxeterGraph, VertexSet, INF};

/// Isomorphism type of an irreducible Coxeter group, plus the two
/// non-Coxeter labels `E7+`, `H3+` and the infinite families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A(u32),
    B(u32),
    D(u32),
    E(u32),
    F4,
    H(u32),
    I2(u32),
    /// Rotation subgroup of `W(E7)`.
    E7Plus,
    /// Rotation subgroup of `W(H3)`.
    H3Plus,
    AInf,
    BInf,
    DInf,
    AInfInf,
    Unknown,
}

use TypeLabel::*;

impl TypeLabel {
    /// Rewrite coincident names to the canonical one: `B1, D1 -> A1`, `D3 -> A3`,
    /// `I2(3) -> A2`, `I2(4) -> B2`, `H2 -> I2(5)`.
    ///
    /// `D2` and `I2(2)` are reducible and are rejected.
    pub fn canonical(self) -> Result<TypeLabel> {
        let bad = || Err(Error::InvalidType(self.to_string()));
        Ok(match self {
            A(0) | B(0) | D(0) | I2(0) | I2(1) => return bad(),
            B(1) | D(1) => A(1),
            D(2) | I2(2) => return bad(),
            D(3) => A(3),
            I2(3) => A(2),
            I2(4) => B(2),
            H(2) => I2(5),
            H(n) if n > 4 => return bad(),
            H(1) => A(1),
            E(n) if !(6..=8).contains(&n) => return bad(),
            other => other,
        })
    }

    pub fn is_finite(self) -> bool {
        !matches!(self, AInf | BInf | DInf | AInfInf | Unknown)
    }

    /// Number of generators of the Coxeter system, if this is a Coxeter type of finite rank.
    pub fn rank(self) -> Option<usize> {
        Some(match self {
            A(n) | B(n) | D(n) | E(n) | H(n) => n as usize,
            F4 => 4,
            I2(_) => 2,
            _ => return None,
        })
    }

    /// Number of positive roots of a finite Coxeter type.
    pub fn positive_roots(self) -> Option<usize> {
        let n = |k: u32| k as usize;
        Some(match self.canonical().ok()? {
            A(k) => n(k) * (n(k) + 1) / 2,
            B(k) => n(k) * n(k),
            D(k) => n(k) * (n(k) - 1),
            E(6) => 36,
            E(7) => 63,
            E(8) => 120,
            F4 => 24,
            H(3) => 15,
            H(4) => 60,
            I2(m) => n(m),
            _ => return None,
        })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E(n) => write!(f, "E{n}"),
            F4 => write!(f, "F4"),
            H(n) => write!(f, "H{n}"),
            I2(m) => write!(f, "I2({m})"),
            E7Plus => write!(f, "E7+"),
            H3Plus => write!(f, "H3+"),
            AInf => write!(f, "Ainf"),
            BInf => write!(f, "Binf"),
            DInf => write!(f, "Dinf"),
            AInfInf => write!(f, "AinfInf"),
            Unknown => write!(f, "Unknown"),
        }
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidType(s.to_string());
        let s = s.trim();
        let fixed = match s {
            "E7+" => Some(E7Plus),
            "H3+" => Some(H3Plus),
            "Ainf" => Some(AInf),
            "Binf" => Some(BInf),
            "Dinf" => Some(DInf),
            "AinfInf" => Some(AInfInf),
            "Unknown" => Some(Unknown),
            "F4" => Some(F4),
            _ => None,
        };
        if let Some(t) = fixed {
            return Ok(t);
        }
        if let Some(inner) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = inner.parse().map_err(|_| bad())?;
            return Ok(I2(m));
        }
        let (head, digits) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: u32 = digits.parse().map_err(|_| bad())?;
        match head {
            "A" => Ok(A(n)),
            "B" => Ok(B(n)),
            "D" => Ok(D(n)),
            "E" => Ok(E(n)),
            "H" => Ok(H(n)),
            _ => Err(bad()),
        }
    }
}

/// Cardinality of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cardinal {
    Finite(BigUint),
    Infinite,
}

impl Cardinal {
    pub fn as_usize(&self) -> Option<usize> {
        match self {
            Cardinal::Finite(n) => usize::try_from(n).ok(),
            Cardinal::Infinite => None,
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Infinite => write!(f, "infinite"),
        }
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Order of the group of a type label, by closed formula.
pub fn group_order(label: TypeLabel) -> Cardinal {
    let two = BigUint::from(2u32);
    let n = match label {
        A(n) => factorial(n + 1),
        B(n) => two.pow(n) * factorial(n),
        D(0) => BigUint::one(),
        D(n) => two.pow(n - 1) * factorial(n),
        E(6) => BigUint::from(51_840u32),
        E(7) => BigUint::from(2_903_040u32),
        E(8) => BigUint::from(696_729_600u32),
        F4 => BigUint::from(1152u32),
        H(3) => BigUint::from(120u32),
        H(4) => BigUint::from(14_400u32),
        H(2) => BigUint::from(10u32),
        H(1) => two,
        I2(m) if m != INF => BigUint::from(2 * m as u64),
        E7Plus => BigUint::from(1_451_520u32),
        H3Plus => BigUint::from(60u32),
        _ => return Cardinal::Infinite,
    };
    Cardinal::Finite(n)
}

/// Order of `W(g)`: the product over connected components.
pub fn graph_order(g: &CoxeterGraph) -> Cardinal {
    let mut total = BigUint::one();
    for (_, label) in classify(g) {
        match group_order(label) {
            Cardinal::Finite(n) => total *= n,
            Cardinal::Infinite => return Cardinal::Infinite,
        }
    }
    Cardinal::Finite(total)
}

/// Catalog graph of a label on vertices `s1, ..., sn`.
///
/// Accepts the truncations `D2`, `D3`, `B1`, `D1` and `I2(m)` for every `m >= 2`.
pub fn build_named(label: TypeLabel) -> Result<CoxeterGraph> {
    let chain = |n: u32, first: u32| -> Vec<(usize, usize, u32)> {
        (0..n.saturating_sub(1) as usize)
            .map(|i| (i, i + 1, if i == 0 { first } else { 3 }))
            .collect()
    };
    let (n, edges): (u32, Vec<(usize, usize, u32)>) = match label {
        A(n) if n >= 1 => (n, chain(n, 3)),
        B(n) if n >= 1 => (n, chain(n, 4)),
        D(n) if n >= 1 => {
            let mut edges = Vec::new();
            if n >= 3 {
                edges.push((0, 2, 3));
                edges.push((1, 2, 3));
            }
            for i in 2..n.saturating_sub(1) as usize {
                edges.push((i, i + 1, 3));
            }
            (n, edges)
        }
        E(n) if (6..=8).contains(&n) => {
            let mut edges = vec![(0, 2, 3), (1, 3, 3)];
            for i in 2..n as usize - 1 {
                edges.push((i, i + 1, 3));
            }
            (n, edges)
        }
        F4 => (4, vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
        H(n) if (1..=4).contains(&n) => (n, chain(n, 5)),
        I2(m) if m >= 2 => (2, if m == 2 { vec![] } else { vec![(0, 1, m)] }),
        _ => return Err(Error::InvalidType(label.to_string())),
    };
    CoxeterGraph::with_edges(n as usize, &edges)
}

/// Classify a connected graph. Non-catalog graphs give `Unknown`.
pub fn classify_irreducible(g: &CoxeterGraph) -> Result<TypeLabel> {
    if g.rank() == 0 || !g.is_connected() {
        return Err(Error::Precondition("graph is empty or disconnected".into()));
    }
    let n = g.rank() as u32;
    if n == 1 {
        return Ok(A(1));
    }
    if n == 2 {
        let m = g.m(0, 1);
        return Ok(if m == INF { Unknown } else { I2(m).canonical()? });
    }
    let mut candidates = vec![A(n), B(n)];
    if n >= 4 {
        candidates.push(D(n));
    }
    match n {
        3 => candidates.push(H(3)),
        4 => candidates.extend([F4, H(4)]),
        6..=8 => candidates.push(E(n)),
        _ => {}
    }
    for label in candidates {
        let catalog = build_named(label)?;
        if !graph_isomorphism(&catalog, g, false).is_empty() {
            return Ok(label);
        }
    }
    Ok(Unknown)
}

/// Classify every connected component, in order of smallest vertex.
pub fn classify(g: &CoxeterGraph) -> Vec<(VertexSet, TypeLabel)> {
    g.components(g.vertices(), false)
        .into_iter()
        .map(|comp| {
            let (sub, _) = g.induced(comp);
            (comp, classify_irreducible(&sub).unwrap_or(Unknown))
        })
        .collect()
}

/// Human readable summary such as `A1 + A3`.
pub fn describe(g: &CoxeterGraph) -> String {
    let labels: Vec<String> = classify(g).iter().map(|(_, t)| t.to_string()).collect();
    if labels.is_empty() {
        "trivial".to_string()
    } else {
        labels.join(" + ")
    }
}

/// All finite irreducible catalog labels (canonical names) with group order at most `bound`.
pub fn finite_catalog_up_to(bound: u64) -> Vec<TypeLabel> {
    let mut out = Vec::new();
    let fits = |t: TypeLabel| match group_order(t) {
        Cardinal::Finite(n) => n <= BigUint::from(bound),
        Cardinal::Infinite => false,
    };
    for n in 1.. {
        if !fits(A(n)) {
            break;
        }
        out.push(A(n));
    }
    for n in 2.. {
        if !fits(B(n)) {
            break;
        }
        out.push(B(n));
    }
    for n in 4.. {
        if !fits(D(n)) {
            break;
        }
        out.push(D(n));
    }
    out.extend([E(6), E(7), E(8), F4, H(3), H(4)].into_iter().filter(|&t| fits(t)));
    let mut m = 5;
    while fits(I2(m)) {
        out.push(I2(m));
        m += 1;
    }
    out
}
