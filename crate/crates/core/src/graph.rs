//! Coxeter graphs, vertex subsets and graph isomorphisms.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Edge label used for `m(s, t) = ∞`.
pub const INF: u32 = u32::MAX;

/// Largest graph the crate accepts.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices, stored as a bitmask over vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Self::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        VertexSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        VertexSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn highest(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(VertexSet(cur))
        })
    }

    pub fn map(self, f: &[usize]) -> VertexSet {
        VertexSet::from_indices(self.iter().map(|i| f[i]))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A Coxeter graph: named vertices and a symmetric label matrix.
///
/// Absent edges have label 2 and the diagonal is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    names: Vec<String>,
    labels: Vec<u32>,
}

impl CoxeterGraph {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(names.len(), MAX_VERTICES));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::UnknownVertex(a.clone()));
            }
            if names[..i].contains(a) {
                return Err(Error::Precondition(format!("duplicate vertex `{a}`")));
            }
        }
        let n = names.len();
        let mut labels = vec![2; n * n];
        for i in 0..n {
            labels[i * n + i] = 1;
        }
        Ok(CoxeterGraph { names, labels })
    }

    /// Graph on `s1, ..., sn` with the given labelled edges (0-based indices).
    pub fn with_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Self::new((1..=n).map(|i| format!("s{i}")))?;
        for &(a, b, m) in edges {
            g.set_label(a, b, m)?;
        }
        Ok(g)
    }

    pub fn set_label(&mut self, a: usize, b: usize, m: u32) -> Result<()> {
        let n = self.rank();
        if a >= n || b >= n || a == b {
            return Err(Error::Precondition(format!("bad edge ({a}, {b})")));
        }
        if m < 2 {
            return Err(Error::InvalidLabel(m.to_string()));
        }
        self.labels[a * n + b] = m;
        self.labels[b * n + a] = m;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The label `m(s_i, s_j)`.
    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.labels[i * self.rank() + j]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.rank())
    }

    /// Edges `(i, j, m)` with `i < j` and `m >= 3`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.m(i, j))))
            .filter(|&(_, _, m)| m >= 3)
    }

    pub fn neighbours(&self, i: usize) -> VertexSet {
        VertexSet::from_indices((0..self.rank()).filter(|&j| j != i && self.m(i, j) >= 3))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbours(i).len()
    }

    /// Vertices outside `set` that commute with every vertex of `set`.
    pub fn perp(&self, set: VertexSet) -> VertexSet {
        VertexSet::from_indices(
            self.vertices()
                .difference(set)
                .iter()
                .filter(|&v| set.iter().all(|u| self.m(u, v) == 2)),
        )
    }

    /// Parse a comma separated list of vertex names.
    pub fn parse_subset(&self, text: &str) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            set = set.with(i);
        }
        Ok(set)
    }

    pub fn format_subset(&self, set: VertexSet) -> String {
        set.iter().map(|i| self.names[i].as_str()).collect::<Vec<_>>().join(",")
    }

    /// Connected components of the subgraph induced on `set`.
    ///
    /// With `odd_only` only edges with odd finite label count.
    pub fn components(&self, set: VertexSet, odd_only: bool) -> Vec<VertexSet> {
        let mut left = set;
        let mut out = Vec::new();
        while let Some(start) = left.lowest() {
            let mut comp = VertexSet::singleton(start);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in left.iter() {
                    if comp.contains(v) {
                        continue;
                    }
                    let m = self.m(u, v);
                    let joined = if odd_only { m != INF && m % 2 == 1 } else { m >= 3 };
                    if joined {
                        comp = comp.with(v);
                        queue.push_back(v);
                    }
                }
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.vertices(), false).len() <= 1
    }

    /// Path distance between two vertices inside the whole graph, `None` if unreachable.
    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.rank();
        let mut dist = vec![usize::MAX; n];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbours(u).iter() {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (dist[b] != usize::MAX).then_some(dist[b])
    }

    /// Induced subgraph together with the map from new indices to old ones.
    pub fn induced(&self, set: VertexSet) -> (CoxeterGraph, Vec<usize>) {
        let map: Vec<usize> = set.iter().collect();
        let n = map.len();
        let mut labels = vec![2; n * n];
        for (a, &i) in map.iter().enumerate() {
            for (b, &j) in map.iter().enumerate() {
                labels[a * n + b] = self.m(i, j);
            }
        }
        let names = map.iter().map(|&i| self.names[i].clone()).collect();
        (CoxeterGraph { names, labels }, map)
    }

    /// Disjoint union; vertex names of the second graph get `suffix` appended when they clash.
    pub fn disjoint_union(&self, other: &CoxeterGraph, suffix: &str) -> Result<CoxeterGraph> {
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push_str(suffix);
            }
            names.push(candidate);
        }
        let mut g = CoxeterGraph::new(names)?;
        let shift = self.rank();
        for (i, j, m) in self.edges() {
            g.set_label(i, j, m)?;
        }
        for (i, j, m) in other.edges() {
            g.set_label(i + shift, j + shift, m)?;
        }
        Ok(g)
    }

    /// Parse the `.cox` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut graph: Option<CoxeterGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .map(|(k, r)| (k.trim(), r))
                .unwrap_or_else(|| {
                    let mut parts = line.splitn(2, char::is_whitespace);
                    (parts.next().unwrap_or(""), parts.next().unwrap_or(""))
                });
            match (key, graph.as_mut()) {
                ("vertices", None) => {
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    let g = CoxeterGraph::new(names.iter().copied())
                        .map_err(|e| err(line_no, e.to_string()))?;
                    graph = Some(g);
                }
                ("vertices", Some(_)) => {
                    return Err(err(line_no, "duplicate `vertices` line".into()));
                }
                (_, None) => {
                    return Err(err(line_no, "expected `vertices:` before anything else".into()));
                }
                ("edge", Some(g)) => {
                    let fields: Vec<&str> = rest.split_whitespace().collect();
                    if fields.len() != 3 {
                        return Err(err(line_no, "expected `edge <a> <b> <label>`".into()));
                    }
                    let a = g
                        .index_of(fields[0])
                        .ok_or_else(|| err(line_no, format!("unknown vertex `{}`", fields[0])))?;
                    let b = g
                        .index_of(fields[1])
                        .ok_or_else(|| err(line_no, format!("unknown vertex `{}`", fields[1])))?;
                    if a == b {
                        return Err(err(line_no, "loop edge".into()));
                    }
                    let m = match fields[2] {
                        "inf" | "∞" => INF,
                        s => match s.parse::<u32>() {
                            Ok(m) if m >= 3 => m,
                            _ => return Err(err(line_no, format!("invalid label `{s}`"))),
                        },
                    };
                    if g.m(a, b) != 2 {
                        return Err(err(line_no, "edge given twice".into()));
                    }
                    g.set_label(a, b, m).map_err(|e| err(line_no, e.to_string()))?;
                }
                (other, Some(_)) => {
                    return Err(err(line_no, format!("unknown directive `{other}`")));
                }
            }
        }
        graph.ok_or_else(|| err(0, "missing `vertices:` line".into()))
    }

    /// Render in the `.cox` text format; `parse(render(g)) == g`.
    pub fn render(&self) -> String {
        let mut out = format!("vertices: {}\n", self.names.join(" "));
        for (i, j, m) in self.edges() {
            let label = if m == INF { "inf".to_string() } else { m.to_string() };
            out.push_str(&format!("edge {} {} {}\n", self.names[i], self.names[j], label));
        }
        out
    }

    /// Sorted multiset of labels on the edges at `i`; used to prune isomorphism search.
    fn incident_labels(&self, i: usize) -> Vec<u32> {
        let mut v: Vec<u32> = self.neighbours(i).iter().map(|j| self.m(i, j)).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph({})", self.render().trim_end().replace('\n', "; "))
    }
}

/// A label-preserving bijection; `map[i]` is the image of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphIso {
    pub map: Vec<usize>,
}

impl GraphIso {
    pub fn identity(n: usize) -> Self {
        GraphIso { map: (0..n).collect() }
    }

    pub fn apply(&self, set: VertexSet) -> VertexSet {
        set.map(&self.map)
    }
}

/// Label-preserving bijections from `g1` onto `g2`.
///
/// With `all == false` the search stops at the first one. Results come out in
/// lexicographic order of `map`.
pub fn graph_isomorphism(g1: &CoxeterGraph, g2: &CoxeterGraph, all: bool) -> Vec<GraphIso> {
    let n = g1.rank();
    if n != g2.rank() {
        return Vec::new();
    }
    let sig1: Vec<Vec<u32>> = (0..n).map(|i| g1.incident_labels(i)).collect();
    let sig2: Vec<Vec<u32>> = (0..n).map(|i| g2.incident_labels(i)).collect();
    let mut a = sig1.clone();
    let mut b = sig2.clone();
    a.sort();
    b.sort();
    if a != b {
        return Vec::new();
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| sig1[i] == sig2[j]).collect())
        .collect();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_iso(g1, g2, &candidates, 0, &mut map, &mut used, all, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    g1: &CoxeterGraph,
    g2: &CoxeterGraph,
    candidates: &[Vec<usize>],
    i: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    all: bool,
    out: &mut Vec<GraphIso>,
) -> bool {
    if i == map.len() {
        out.push(GraphIso { map: map.clone() });
        return !all;
    }
    for &j in &candidates[i] {
        if used[j] || (0..i).any(|k| g1.m(i, k) != g2.m(j, map[k])) {
            continue;
        }
        map[i] = j;
        used[j] = true;
        let done = extend_iso(g1, g2, candidates, i + 1, map, used, all, out);
        used[j] = false;
        map[i] = usize::MAX;
        if done {
            return true;
        }
    }
    false
}
