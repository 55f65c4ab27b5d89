//! Simple undirected graphs with named vertices.
//!
//! Every vertex is treated as adjacent to itself: the stored adjacency is
//! irreflexive, but all neighborhood queries return closed neighborhoods.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index into a [`Graph`], in label insertion order.
pub type Vertex = usize;

/// A set of vertices over a fixed universe `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn singleton(universe: usize, v: Vertex) -> Self {
        let mut s = Self::empty(universe);
        s.insert(v);
        s
    }

    pub fn from_iter_in(universe: usize, it: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = Self::empty(universe);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: Vertex) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < self.universe {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    /// Smallest member, which is the lowest label in insertion order.
    pub fn first(&self) -> Option<Vertex> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// `self ∩ within ⊆ other ∩ within`.
    pub fn is_subset_within(&self, other: &VertexSet, within: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&within.words)
            .all(|((a, b), h)| a & h & !b == 0)
    }

    /// `self ∩ within == other ∩ within`.
    pub fn eq_within(&self, other: &VertexSet, within: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&within.words)
            .all(|((a, b), h)| a & h == b & h)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    closed: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edge_labels())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from labels and label pairs.
    ///
    /// Self-loops are dropped. Repeated edges (in either orientation) and
    /// repeated labels are rejected.
    pub fn from_edges<S: AsRef<str>>(labels: &[S], edges: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Argument(format!("duplicate vertex label `{l}`")));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let u = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownVertex(a.as_ref().to_string()))?;
            let v = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownVertex(b.as_ref().to_string()))?;
            pairs.push((u, v));
        }
        Self::from_index_edges(labels, &pairs)
    }

    /// Builds a graph from owned labels and index pairs.
    pub fn from_index_edges(labels: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Argument(
                "graph must have at least one vertex".into(),
            ));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Argument(format!("duplicate vertex label `{l}`")));
            }
        }
        let mut closed: Vec<VertexSet> = (0..n).map(|v| VertexSet::singleton(n, v)).collect();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Argument(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                continue;
            }
            if closed[u].contains(v) {
                return Err(Error::Argument(format!(
                    "duplicate edge `{}` `{}`",
                    labels[u], labels[v]
                )));
            }
            closed[u].insert(v);
            closed[v].insert(u);
        }
        let adj = (0..n)
            .map(|v| closed[v].iter().filter(|&u| u != v).collect())
            .collect();
        Ok(Self {
            labels,
            index,
            adj,
            closed,
        })
    }

    /// Parses the text format: `n m`, then `n` labels, then `m` edge lines.
    /// Everything after `#` on a line is a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let parse_err = |line: usize, msg: String| Error::Parse { line, msg };

        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing `n m` header".into()))?;
        let mut it = header.split_whitespace();
        let mut count = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| parse_err(hline, format!("missing {what}")))?
                .parse()
                .map_err(|_| parse_err(hline, format!("{what} is not a non-negative integer")))
        };
        let n = count("vertex count")?;
        let m = count("edge count")?;
        if it.next().is_some() {
            return Err(parse_err(hline, "header must be exactly `n m`".into()));
        }
        if n == 0 {
            return Err(parse_err(
                hline,
                "graph must have at least one vertex".into(),
            ));
        }

        let mut labels = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        for i in 0..n {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| parse_err(0, format!("expected {n} labels, found {i}")))?;
            if l.split_whitespace().count() != 1 {
                return Err(parse_err(ln, format!("label `{l}` must be a single token")));
            }
            if index.insert(l.to_string(), i).is_some() {
                return Err(parse_err(ln, format!("duplicate vertex label `{l}`")));
            }
            labels.push(l.to_string());
        }

        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| parse_err(0, format!("expected {m} edges, found {i}")))?;
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(parse_err(
                    ln,
                    format!("edge line `{l}` must have two labels"),
                ));
            }
            let lookup = |t: &str| {
                index
                    .get(t)
                    .copied()
                    .ok_or_else(|| parse_err(ln, format!("unknown vertex `{t}`")))
            };
            let (u, v) = (lookup(toks[0])?, lookup(toks[1])?);
            if u == v {
                continue;
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(parse_err(
                    ln,
                    format!("duplicate edge `{} {}`", toks[0], toks[1]),
                ));
            }
            edges.push((u, v));
        }
        if let Some((ln, l)) = lines.next() {
            return Err(parse_err(ln, format!("unexpected trailing line `{l}`")));
        }
        Self::from_index_edges(labels, &edges)
    }

    /// Serializes to the text format read by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.order(), edges.len());
        for l in &self.labels {
            out.push_str(l);
            out.push('\n');
        }
        for (u, v) in edges {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.labels.len()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn set_of(&self, labels: &[&str]) -> Result<VertexSet> {
        let mut s = VertexSet::empty(self.order());
        for l in labels {
            s.insert(self.vertex(l)?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Open neighbors, ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// `N[v]`: `v` together with everything adjacent to it.
    pub fn closed_neighborhood(&self, v: Vertex) -> &VertexSet {
        &self.closed[v]
    }

    /// Closed adjacency: every vertex is adjacent to itself.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.closed[u].contains(v)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices()
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    fn distinct(&self, w: Vertex, v: Vertex) -> Result<()> {
        if w == v {
            Err(Error::Argument(format!(
                "cornering needs distinct vertices, got `{}` twice",
                self.labels[v]
            )))
        } else {
            Ok(())
        }
    }

    /// `w` corners `v`: `N[v] ⊆ N[w]`.
    pub fn corners(&self, w: Vertex, v: Vertex) -> Result<bool> {
        self.distinct(w, v)?;
        Ok(self.corners_within(&self.all(), w, v))
    }

    /// `w` strictly corners `v`: `N[v] ⊊ N[w]`.
    pub fn strictly_corners(&self, w: Vertex, v: Vertex) -> Result<bool> {
        self.distinct(w, v)?;
        Ok(self.strictly_corners_within(&self.all(), w, v))
    }

    /// `N[v] = N[w]`.
    pub fn twins(&self, w: Vertex, v: Vertex) -> Result<bool> {
        self.distinct(w, v)?;
        Ok(self.twins_within(&self.all(), w, v))
    }

    /// Cornering in the subgraph induced by `within`. Both vertices are
    /// assumed to lie in `within`; `w == v` yields `true`.
    pub fn corners_within(&self, within: &VertexSet, w: Vertex, v: Vertex) -> bool {
        self.closed[v].is_subset_within(&self.closed[w], within)
    }

    pub fn strictly_corners_within(&self, within: &VertexSet, w: Vertex, v: Vertex) -> bool {
        self.corners_within(within, w, v) && !self.twins_within(within, w, v)
    }

    pub fn twins_within(&self, within: &VertexSet, w: Vertex, v: Vertex) -> bool {
        self.closed[v].eq_within(&self.closed[w], within)
    }

    /// `u` is adjacent to every vertex of `set`.
    pub fn dominates(&self, u: Vertex, set: &VertexSet) -> bool {
        set.is_subset(&self.closed[u])
    }

    /// Every pair of vertices in `set` is adjacent.
    pub fn is_clique_within(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.dominates(v, set))
    }

    /// Vertices of `within` that are strictly cornered there by another vertex of `within`.
    pub fn strict_corners_within(&self, within: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.order());
        for v in within.iter() {
            if within
                .iter()
                .any(|w| w != v && self.strictly_corners_within(within, w, v))
            {
                out.insert(v);
            }
        }
        out
    }

    /// The subgraph induced by `keep`, keeping labels and their relative order.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph> {
        if keep.is_empty() {
            return Err(Error::Argument(
                "induced subgraph needs at least one vertex".into(),
            ));
        }
        let kept: Vec<Vertex> = keep.iter().filter(|&v| v < self.order()).collect();
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let labels = kept.iter().map(|&v| self.labels[v].clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| (pos[u], pos[v]))
            .collect();
        Graph::from_index_edges(labels, &edges)
    }

    /// Same graph with vertex `i` renamed and moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.order();
        let mut seen = VertexSet::empty(n);
        if perm.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::Argument(
                "permutation has the wrong length or range".into(),
            ));
        }
        for &p in perm {
            seen.insert(p);
        }
        if seen.len() != n {
            return Err(Error::Argument("not a permutation".into()));
        }
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_index_edges(labels, &edges)
    }
}
