//! Simple graphs on `[n]` and the combinatorial predicates the ideal
//! theory consumes: components of `G \ S` with their bipartitions, cut and
//! bipartition points, the family `M(G)`, and the degree criterion for
//! `(n-2)`-connectivity.
//!
//! Vertices are 1-based everywhere in the public API.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertices of `[n]`, `n <= 64`, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `[n]`.
    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << (v - 1))
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= 64 && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << (v - 1));
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << (v - 1))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in it {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&x| x == 0 || x > MAX_VERTICES) {
            return Err(serde::de::Error::custom("vertex out of range"));
        }
        Ok(v.into_iter().collect())
    }
}

/// Sort key "by size, then lexicographically on the sorted elements".
pub fn size_lex_key(s: VertexSet) -> (usize, Vec<usize>) {
    (s.len(), s.to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// `{"n": int, "edges": [[i, j], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("at most {MAX_VERTICES} vertices supported")));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
            }
            if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(Error::InvalidGraph(format!("edge {{{i},{j}}} outside [1,{n}]")));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{i},{j}}}")));
            }
            g.adj[i - 1] |= 1 << (j - 1);
            g.adj[j - 1] |= 1 << (i - 1);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// Edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in self.neighbors(i).iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Every labeled graph on `[n]`, ordered by edge bitmask.
    pub fn all_on(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let count = 1u64 << pairs.len();
        (0..count).map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    }

    /// All labeled graphs on at most `n_max` vertices (including `n = 1`).
    pub fn all_up_to(n_max: usize) -> impl Iterator<Item = Graph> {
        (1..=n_max).flat_map(Graph::all_on)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect() }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edges(json.n, &edges)
    }

    pub fn is_bipartite(&self) -> bool {
        self.components(VertexSet::EMPTY).iter().all(|c| c.is_bipartite)
    }

    /// Connected components of the induced subgraph on `[n] \ deleted`,
    /// ordered by smallest vertex. Bipartiteness is decided by BFS
    /// 2-coloring; the block containing the component's smallest vertex is
    /// listed first.
    pub fn components(&self, deleted: VertexSet) -> Vec<ComponentData> {
        let alive = VertexSet::full(self.n).difference(deleted);
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for start in alive.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut color: [VertexSet; 2] = [VertexSet::singleton(start), VertexSet::EMPTY];
            let mut bipartite = true;
            let mut queue = vec![(start, 0usize)];
            seen.insert(start);
            let mut verts = VertexSet::singleton(start);
            while let Some((v, c)) = queue.pop() {
                for w in self.neighbors(v).intersection(alive).iter() {
                    if color[c].contains(w) {
                        bipartite = false;
                    }
                    if !seen.contains(w) {
                        seen.insert(w);
                        verts.insert(w);
                        color[1 - c].insert(w);
                        queue.push((w, 1 - c));
                    }
                }
            }
            out.push(ComponentData {
                vertices: verts,
                is_bipartite: bipartite,
                blocks: bipartite.then_some((color[0], color[1])),
            });
        }
        out
    }

    /// `(c(S), b(S))`: number of components and of bipartite components of
    /// `G \ S`.
    pub fn component_counts(&self, deleted: VertexSet) -> (usize, usize) {
        let comps = self.components(deleted);
        (comps.len(), comps.iter().filter(|c| c.is_bipartite).count())
    }

    /// Classify `i ∈ S` in the graph induced on `([n] \ S) ∪ {i}`.
    pub fn special_points(&self, s: VertexSet, i: usize) -> Result<SpecialPoint> {
        if !s.contains(i) {
            return Err(Error::Precondition(format!("vertex {i} is not in {s}")));
        }
        let (c_with, b_with) = self.component_counts(s.without(i));
        let (c_without, b_without) = self.component_counts(s);
        Ok(SpecialPoint {
            is_cut_point: c_without > c_with,
            is_bipartition_point: b_without > b_with,
        })
    }

    pub fn in_m(&self, s: VertexSet) -> bool {
        s.iter().all(|i| {
            let sp = self.special_points(s, i).unwrap();
            sp.is_cut_point || sp.is_bipartition_point
        })
    }

    /// The family `M(G)`, sorted by size and then lexicographically.
    pub fn enumerate_m(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> =
            (0..1u64 << self.n).map(VertexSet).filter(|&s| self.in_m(s)).collect();
        out.sort_by_key(|&s| size_lex_key(s));
        out
    }

    pub fn connectivity_class(&self) -> ConnectivityClass {
        let is_matching_union = (1..=self.n).all(|v| self.degree(v) <= 1);
        // G is (n-2)-connected iff each vertex has at most one non-neighbor;
        // evaluated for the complement graph.
        let comp = self.complement();
        let complement_is_n_minus_2_connected = (1..=self.n).all(|v| {
            (1..=self.n).filter(|&w| w != v && !comp.has_edge(v, w)).count() <= 1
        });
        ConnectivityClass { is_matching_union, complement_is_n_minus_2_connected }
    }

    /// Parse a preset name: `cycle:<n>`, `complete:<n>`, `path:<n>`,
    /// `empty:<n>`, `complete_bipartite:<m>,<k>`, `butterfly`, `fig3`, `paw`,
    /// or `complement:<preset>`.
    pub fn preset(name: &str) -> Result<Graph> {
        let bad = || Error::InvalidGraph(format!("unknown preset `{name}`"));
        if let Some(inner) = name.strip_prefix("complement:") {
            return Ok(Graph::preset(inner)?.complement());
        }
        let (kind, arg) = match name.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (name, None),
        };
        let num = |a: Option<&str>| -> Result<usize> {
            a.and_then(|s| s.trim().parse().ok()).ok_or_else(bad)
        };
        match (kind, arg) {
            ("butterfly", None) => Graph::from_edges(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]),
            ("fig3", None) => Graph::from_edges(
                7,
                &[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)],
            ),
            ("paw", None) => Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]),
            ("cycle", a) => {
                let n = num(a)?;
                if n < 3 {
                    return Err(Error::InvalidGraph("cycles need at least 3 vertices".into()));
                }
                let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
                Graph::from_edges(n, &edges)
            }
            ("path", a) => {
                let n = num(a)?;
                if n == 0 {
                    return Err(bad());
                }
                let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
                Graph::from_edges(n, &edges)
            }
            ("complete", a) => {
                let n = num(a)?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(Graph::empty(n)?.complement())
            }
            ("empty", a) => Graph::empty(num(a)?),
            ("complete_bipartite", Some(a)) => {
                let (m, k) = a.split_once(',').ok_or_else(bad)?;
                let (m, k) = (num(Some(m))?, num(Some(k))?);
                if m == 0 || k == 0 {
                    return Err(bad());
                }
                let edges: Vec<_> =
                    (1..=m).flat_map(|i| (m + 1..=m + k).map(move |j| (i, j))).collect();
                Graph::from_edges(m + k, &edges)
            }
            _ => Err(bad()),
        }
    }
}

impl FromStr for Graph {
    type Err = Error;

    /// A preset name or inline graph JSON.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let json: GraphJson =
                serde_json::from_str(s).map_err(|e| Error::InvalidGraph(e.to_string()))?;
            return Graph::from_json(&json);
        }
        Graph::preset(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "G(n={}; {})", self.n, edges.join(" "))
    }
}

/// A connected component of `G \ S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentData {
    pub vertices: VertexSet,
    pub is_bipartite: bool,
    /// The unique bipartition, smallest vertex in the first block. `K_1`
    /// counts as bipartite with an empty second block.
    pub blocks: Option<(VertexSet, VertexSet)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecialPoint {
    pub is_cut_point: bool,
    pub is_bipartition_point: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectivityClass {
    pub is_matching_union: bool,
    pub complement_is_n_minus_2_connected: bool,
}
