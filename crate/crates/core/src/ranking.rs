//! Corner ranking: repeatedly strip all strict corners until a clique
//! (finite rank) or a strict-corner-free non-clique (rank infinity) remains.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Corner rank of a vertex or graph. `Finite(a) < Infinite` for every `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    pub fn finite(self) -> Option<u32> {
        match self {
            Rank::Finite(k) => Some(k),
            Rank::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Rank::Finite(_))
    }

    pub fn parse(s: &str) -> Option<Rank> {
        match s {
            "inf" | "infinity" | "∞" => Some(Rank::Infinite),
            _ => s.parse::<u32>().ok().filter(|&k| k >= 1).map(Rank::Finite),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(k) => write!(f, "{k}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Rank::Finite(k) => s.serialize_u32(*k),
            Rank::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Cop-win class of a graph: `capt = α − r` for class `Rr`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CopwinClass {
    R0,
    R1,
    NotCopWin,
}

impl CopwinClass {
    pub fn r(self) -> Option<u32> {
        match self {
            CopwinClass::R0 => Some(0),
            CopwinClass::R1 => Some(1),
            CopwinClass::NotCopWin => None,
        }
    }
}

/// Number of cop moves to capture, or escape. `Moves(_) < Escape`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaptureTime {
    Moves(u32),
    Escape,
}

impl CaptureTime {
    pub fn moves(self) -> Option<u32> {
        match self {
            CaptureTime::Moves(m) => Some(m),
            CaptureTime::Escape => None,
        }
    }

    /// One more cop move; escape stays escape.
    pub fn succ(self) -> CaptureTime {
        match self {
            CaptureTime::Moves(m) => CaptureTime::Moves(m + 1),
            CaptureTime::Escape => CaptureTime::Escape,
        }
    }
}

impl PartialOrd for CaptureTime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CaptureTime {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CaptureTime::Moves(a), CaptureTime::Moves(b)) => a.cmp(b),
            (CaptureTime::Moves(_), CaptureTime::Escape) => Ordering::Less,
            (CaptureTime::Escape, CaptureTime::Moves(_)) => Ordering::Greater,
            (CaptureTime::Escape, CaptureTime::Escape) => Ordering::Equal,
        }
    }
}

impl fmt::Display for CaptureTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaptureTime::Moves(m) => write!(f, "{m}"),
            CaptureTime::Escape => f.write_str("escape"),
        }
    }
}

impl Serialize for CaptureTime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CaptureTime::Moves(m) => s.serialize_u32(*m),
            CaptureTime::Escape => s.serialize_str("escape"),
        }
    }
}

/// The outcome of corner ranking a graph.
///
/// Levels are indexed from 1: `level(k)` is `V(G^(k))`. The last level is
/// the terminal graph, which is `G^(α)` for finite `α` and `G^(∞)`
/// otherwise. With that indexing the convention `γ + 1 = ∞` (`γ` the
/// largest finite rank) falls out: the infinite level sits right after `γ`.
#[derive(Clone, Debug)]
pub struct RankAssignment {
    graph: Graph,
    rank_of: Vec<Rank>,
    levels: Vec<VertexSet>,
    alpha: Rank,
    class: CopwinClass,
}

/// Runs the corner ranking procedure.
///
/// All strict corners of `G^(k)` are found against the same snapshot and
/// removed together.
pub fn corner_rank(g: &Graph) -> RankAssignment {
    let n = g.order();
    let mut rank_of = vec![Rank::Infinite; n];
    let mut levels = Vec::new();
    let mut current = g.all();
    let mut k: u32 = 1;
    let alpha = loop {
        levels.push(current.clone());
        if g.is_clique_within(&current) {
            for v in current.iter() {
                rank_of[v] = Rank::Finite(k);
            }
            break Rank::Finite(k);
        }
        let corners = g.strict_corners_within(&current);
        if corners.is_empty() {
            // rank_of already holds Infinite for these
            break Rank::Infinite;
        }
        for v in corners.iter() {
            rank_of[v] = Rank::Finite(k);
        }
        current.difference_with(&corners);
        k += 1;
    };

    let class = match alpha {
        Rank::Infinite => CopwinClass::NotCopWin,
        Rank::Finite(1) if n == 1 => CopwinClass::R1,
        Rank::Finite(1) => CopwinClass::R0,
        Rank::Finite(a) => {
            let below = &levels[a as usize - 2];
            let top = &levels[a as usize - 1];
            if top.iter().any(|v| g.dominates(v, below)) {
                CopwinClass::R1
            } else {
                CopwinClass::R0
            }
        }
    };

    RankAssignment {
        graph: g.clone(),
        rank_of,
        levels,
        alpha,
        class,
    }
}

pub fn classify(ra: &RankAssignment) -> CopwinClass {
    ra.class
}

pub fn capture_time(ra: &RankAssignment) -> CaptureTime {
    match (ra.alpha, ra.class.r()) {
        (Rank::Finite(a), Some(r)) => CaptureTime::Moves(a - r),
        _ => CaptureTime::Escape,
    }
}

impl RankAssignment {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rank(&self, v: Vertex) -> Rank {
        self.rank_of[v]
    }

    pub fn ranks(&self) -> &[Rank] {
        &self.rank_of
    }

    pub fn alpha(&self) -> Rank {
        self.alpha
    }

    pub fn class(&self) -> CopwinClass {
        self.class
    }

    pub fn capture_time(&self) -> CaptureTime {
        capture_time(self)
    }

    /// Largest finite rank present, if any.
    pub fn gamma(&self) -> Option<u32> {
        self.rank_of.iter().filter_map(|r| r.finite()).max()
    }

    /// Number of levels `L`; levels are `1..=L`.
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// `V(G^(k))` for a level index `1 ≤ k ≤ L`.
    ///
    /// Panics on an out-of-range level; use [`RankAssignment::checked_level`]
    /// for untrusted input.
    pub fn level(&self, k: usize) -> &VertexSet {
        &self.levels[k - 1]
    }

    pub fn checked_level(&self, k: usize) -> Result<&VertexSet> {
        self.check_level(k)?;
        Ok(self.level(k))
    }

    pub fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.levels.len() {
            Err(Error::LevelOutOfRange {
                level: k,
                max: self.levels.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn levels(&self) -> &[VertexSet] {
        &self.levels
    }

    /// Level index of a rank value. `Infinite` maps to the terminal level of
    /// an infinite-rank graph, as does `Finite(γ + 1)`.
    pub fn level_index(&self, k: Rank) -> Result<usize> {
        let l = self.levels.len();
        match (k, self.alpha) {
            (Rank::Infinite, Rank::Infinite) => Ok(l),
            (Rank::Infinite, Rank::Finite(_)) => Err(Error::Argument(
                "level inf requested on a finite-rank graph".into(),
            )),
            (Rank::Finite(k), _) => {
                let k = k as usize;
                self.check_level(k)?;
                Ok(k)
            }
        }
    }

    /// The rank value a level index stands for.
    pub fn level_rank(&self, k: usize) -> Rank {
        if k == self.levels.len() && self.alpha == Rank::Infinite {
            Rank::Infinite
        } else {
            Rank::Finite(k as u32)
        }
    }

    /// The deepest level containing `v`: its rank as a level index.
    pub fn vertex_level(&self, v: Vertex) -> usize {
        match self.rank_of[v] {
            Rank::Finite(k) => k as usize,
            Rank::Infinite => self.levels.len(),
        }
    }

    pub fn vertices_of_rank(&self, k: Rank) -> VertexSet {
        VertexSet::from_iter_in(
            self.graph.order(),
            self.graph.vertices().filter(|&v| self.rank_of[v] == k),
        )
    }

    /// Finite `α`, or [`Error::NotCopWin`].
    pub fn finite_alpha(&self) -> Result<u32> {
        self.alpha.finite().ok_or(Error::NotCopWin)
    }

    /// `α − r` for a cop-win graph.
    pub fn alpha_minus_r(&self) -> Result<u32> {
        capture_time(self).moves().ok_or(Error::NotCopWin)
    }

    /// JSON report: ranks by label, `alpha`, `class`, `capture_time`.
    pub fn report(&self) -> Value {
        let mut ranks = Map::new();
        for v in self.graph.vertices() {
            ranks.insert(self.graph.label(v).to_string(), json!(self.rank_of[v]));
        }
        json!({
            "ranks": ranks,
            "alpha": self.alpha,
            "class": self.class,
            "capture_time": capture_time(self),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ranks_by_label(ra: &RankAssignment) -> Vec<(String, Rank)> {
        let g = ra.graph();
        g.vertices()
            .map(|v| (g.label(v).to_string(), ra.rank(v)))
            .collect()
    }

    fn p5() -> Graph {
        Graph::from_edges(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        )
        .unwrap()
    }

    #[test]
    fn figure_one() {
        let ra = corner_rank(&corpus::get("fig1").unwrap().graph);
        let expect = [
            ("a", 1),
            ("b", 2),
            ("c", 3),
            ("d", 3),
            ("e", 3),
            ("f", 2),
            ("g", 1),
            ("h", 1),
        ];
        let got = ranks_by_label(&ra);
        for ((l, r), (gl, gr)) in expect.iter().zip(&got) {
            assert_eq!(l, gl);
            assert_eq!(Rank::Finite(*r), *gr);
        }
        assert_eq!(ra.alpha(), Rank::Finite(3));
        assert_eq!(classify(&ra), CopwinClass::R1);
        assert_eq!(capture_time(&ra), CaptureTime::Moves(2));
    }

    #[test]
    fn figure_two() {
        let g = corpus::get("fig2").unwrap().graph;
        let ra = corner_rank(&g);
        assert_eq!(ra.rank(g.vertex("x").unwrap()), Rank::Finite(1));
        assert_eq!(ra.rank(g.vertex("y").unwrap()), Rank::Finite(2));
        for l in ["n1", "n2", "n3", "n4", "n5"] {
            assert_eq!(ra.rank(g.vertex(l).unwrap()), Rank::Infinite);
        }
        assert_eq!(ra.alpha(), Rank::Infinite);
        assert_eq!(ra.gamma(), Some(2));
        assert_eq!(ra.level_count(), 3);
        assert_eq!(ra.level_index(Rank::Infinite).unwrap(), 3);
        assert_eq!(ra.level_index(Rank::Finite(3)).unwrap(), 3);
        assert_eq!(classify(&ra), CopwinClass::NotCopWin);
        assert_eq!(capture_time(&ra), CaptureTime::Escape);
    }

    #[test]
    fn small_cases() {
        let k3 = corpus::get("clique_3").unwrap().graph;
        let ra = corner_rank(&k3);
        assert!(ra.ranks().iter().all(|&r| r == Rank::Finite(1)));
        assert_eq!(ra.alpha(), Rank::Finite(1));
        assert_eq!(capture_time(&ra), CaptureTime::Moves(1));

        let ra = corner_rank(&p5());
        let got: Vec<_> = ra.ranks().iter().map(|r| r.finite().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 3, 2, 1]);
        assert_eq!(capture_time(&ra), CaptureTime::Moves(2));

        let single = Graph::from_edges::<&str>(&["u"], &[]).unwrap();
        let ra = corner_rank(&single);
        assert_eq!(ra.class(), CopwinClass::R1);
        assert_eq!(capture_time(&ra), CaptureTime::Moves(0));
    }

    #[test]
    fn figure_five_capture_time() {
        let ra = corner_rank(&corpus::get("fig5").unwrap().graph);
        assert_eq!(ra.alpha(), Rank::Finite(5));
        assert_eq!(classify(&ra), CopwinClass::R0);
        assert_eq!(capture_time(&ra), CaptureTime::Moves(5));
        assert_eq!(
            classify(&corner_rank(&corpus::get("fig3").unwrap().graph)),
            CopwinClass::R0
        );
    }

    #[test]
    fn disconnected_graphs_are_not_copwin() {
        let g = Graph::from_edges::<&str>(&["a", "b"], &[]).unwrap();
        let ra = corner_rank(&g);
        assert_eq!(ra.alpha(), Rank::Infinite);
        assert_eq!(ra.gamma(), None);
        assert_eq!(ra.level_count(), 1);
    }

    #[test]
    fn level_lookup_errors() {
        let ra = corner_rank(&p5());
        assert!(ra.level_index(Rank::Infinite).is_err());
        assert!(ra.level_index(Rank::Finite(4)).is_err());
        assert!(ra.checked_level(0).is_err());
        assert_eq!(Rank::parse("inf"), Some(Rank::Infinite));
        assert_eq!(Rank::parse("0"), None);
        assert!(Rank::Finite(1_000_000) < Rank::Infinite);
    }

    #[test]
    fn report_shape() {
        let ra = corner_rank(&corpus::get("fig2").unwrap().graph);
        let r = ra.report();
        assert_eq!(r["alpha"], "inf");
        assert_eq!(r["class"], "NotCopWin");
        assert_eq!(r["capture_time"], "escape");
        assert_eq!(r["ranks"]["x"], 1);
        let keys: Vec<_> = r["ranks"].as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ra.graph().labels());
    }
}
