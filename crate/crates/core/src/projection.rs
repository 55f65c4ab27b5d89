//! Projection maps between the levels of a corner ranking, and the
//! cornering, catching and safety predicates built on them.
//!
//! `f_k` sends a vertex of `G^(k)` to itself when it survives to `G^(k+1)`,
//! and otherwise to the vertices of `G^(k+1)` that strictly corner it in
//! `G^(k)`. `F_k = f_{k-1} ∘ ⋯ ∘ f_1` with `F_1` the identity. All levels
//! here are level indices as defined by [`RankAssignment`].

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ranking::{Rank, RankAssignment};

#[derive(Clone, Debug)]
pub struct ProjectionTable {
    ra: RankAssignment,
    // step[k - 1][u] = f_k(u) for u in level k, 1 <= k < L
    step: Vec<Vec<Option<VertexSet>>>,
    // composed[k - 1][v] = F_k(v), 1 <= k <= L
    composed: Vec<Vec<VertexSet>>,
}

impl ProjectionTable {
    pub fn new(ra: RankAssignment) -> Self {
        let g = ra.graph();
        let n = g.order();
        let levels = ra.level_count();

        let mut step = Vec::with_capacity(levels.saturating_sub(1));
        for k in 1..levels {
            let here = ra.level(k);
            let next = ra.level(k + 1);
            let row = g
                .vertices()
                .map(|u| {
                    if !here.contains(u) {
                        None
                    } else if next.contains(u) {
                        Some(VertexSet::singleton(n, u))
                    } else {
                        Some(VertexSet::from_iter_in(
                            n,
                            next.iter()
                                .filter(|&w| g.strictly_corners_within(here, w, u)),
                        ))
                    }
                })
                .collect();
            step.push(row);
        }

        let mut composed: Vec<Vec<VertexSet>> = Vec::with_capacity(levels);
        composed.push(g.vertices().map(|v| VertexSet::singleton(n, v)).collect());
        for k in 1..levels {
            let prev = &composed[k - 1];
            let f: &Vec<Option<VertexSet>> = &step[k - 1];
            let row = g
                .vertices()
                .map(|v| {
                    let mut out = VertexSet::empty(n);
                    for u in prev[v].iter() {
                        out.union_with(f[u].as_ref().expect("F_k lands in level k"));
                    }
                    out
                })
                .collect();
            composed.push(row);
        }

        Self { ra, step, composed }
    }

    pub fn ranking(&self) -> &RankAssignment {
        &self.ra
    }

    pub fn graph(&self) -> &Graph {
        self.ra.graph()
    }

    /// `f_k(u)` for `1 ≤ k < L` and `u ∈ V(G^(k))`.
    pub fn step(&self, k: usize, u: Vertex) -> Result<&VertexSet> {
        if k == 0 || k >= self.ra.level_count() {
            return Err(Error::LevelOutOfRange {
                level: k,
                max: self.ra.level_count().saturating_sub(1),
            });
        }
        self.step[k - 1][u].as_ref().ok_or_else(|| {
            Error::Argument(format!(
                "`{}` is not a vertex of level {k}",
                self.graph().label(u)
            ))
        })
    }

    /// `F_k(v)` for a level index `k`; panics when out of range.
    pub fn projection(&self, k: usize, v: Vertex) -> &VertexSet {
        &self.composed[k - 1][v]
    }

    /// `F_k(s)`: union of `F_k` over the members of `s`.
    pub fn project(&self, k: Rank, s: &VertexSet) -> Result<VertexSet> {
        let k = self.ra.level_index(k)?;
        self.project_level(k, s)
    }

    pub fn project_level(&self, k: usize, s: &VertexSet) -> Result<VertexSet> {
        self.ra.check_level(k)?;
        if s.is_empty() {
            return Err(Error::Argument("projection of an empty set".into()));
        }
        let mut out = VertexSet::empty(self.graph().order());
        for v in s.iter() {
            out.union_with(self.projection(k, v));
        }
        Ok(out)
    }

    /// `N_k[v]`: members of `N[v]` of rank at least `k`.
    pub fn k_neighborhood(&self, k: Rank, v: Vertex) -> VertexSet {
        let g = self.graph();
        VertexSet::from_iter_in(
            g.order(),
            g.closed_neighborhood(v)
                .iter()
                .filter(|&u| self.ra.rank(u) >= k),
        )
    }

    /// `N_k[v]` with `k` a level index: `N[v] ∩ V(G^(k))`.
    pub fn level_neighborhood(&self, k: usize, v: Vertex) -> VertexSet {
        let mut s = self.graph().closed_neighborhood(v).clone();
        s.intersect_with(self.ra.level(k));
        s
    }

    /// The robber at `robber` is `k`-cornered by the cop at `cop`.
    ///
    /// `k = 0` means `cop == robber`. Otherwise some `r' ∈ F_k(robber)` is
    /// cornered (not necessarily strictly) by `cop` in `G^(k) ∪ cop`.
    pub fn is_k_cornered(&self, cop: Vertex, robber: Vertex, k: usize) -> Result<bool> {
        if k == 0 {
            return Ok(cop == robber);
        }
        self.ra.check_level(k)?;
        let g = self.graph();
        let mut within = self.ra.level(k).clone();
        within.insert(cop);
        Ok(self
            .projection(k, robber)
            .iter()
            .any(|rp| g.corners_within(&within, cop, rp)))
    }

    /// The cop has `k`-caught the robber: `cop ∈ F_k(robber)`, `k ≥ 1`.
    pub fn is_k_caught(&self, cop: Vertex, robber: Vertex, k: usize) -> Result<bool> {
        self.ra.check_level(k)?;
        Ok(self.projection(k, robber).contains(cop))
    }

    /// `rank(robber) ≥ k` and the cop is not adjacent to the robber.
    pub fn is_k_safe(&self, cop: Vertex, robber: Vertex, k: usize) -> Result<bool> {
        self.ra.check_level(k)?;
        Ok(self.ra.vertex_level(robber) >= k && !self.graph().adjacent(cop, robber))
    }

    /// `rank(robber) ≥ k` and some `c' ∈ F_k(cop)` is not adjacent to the robber.
    pub fn is_k_proj_safe(&self, cop: Vertex, robber: Vertex, k: usize) -> Result<bool> {
        self.ra.check_level(k)?;
        let g = self.graph();
        Ok(self.ra.vertex_level(robber) >= k
            && self
                .projection(k, cop)
                .iter()
                .any(|cp| !g.adjacent(cp, robber)))
    }

    /// Smallest `k ≤ max_k` (capped at the level count) at which the robber
    /// is `k`-cornered.
    pub fn min_cornering_level(&self, cop: Vertex, robber: Vertex, max_k: usize) -> Option<usize> {
        let top = max_k.min(self.ra.level_count());
        (0..=top).find(|&k| self.is_k_cornered(cop, robber, k).unwrap_or(false))
    }

    /// Smallest `1 ≤ k ≤ max_k` at which the robber is `k`-caught.
    pub fn min_catching_level(&self, cop: Vertex, robber: Vertex, max_k: usize) -> Option<usize> {
        let top = max_k.min(self.ra.level_count());
        (1..=top).find(|&k| self.projection(k, robber).contains(cop))
    }

    /// Largest level `k` at which `robber` is `k`-proj-safe from `cop`.
    pub fn max_proj_safe_level(&self, cop: Vertex, robber: Vertex) -> Option<usize> {
        (1..=self.ra.level_count())
            .rev()
            .find(|&k| self.is_k_proj_safe(cop, robber, k).unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ranking::corner_rank;

    fn table(name: &str) -> ProjectionTable {
        ProjectionTable::new(corner_rank(&corpus::get(name).unwrap().graph))
    }

    fn set(pt: &ProjectionTable, labels: &[&str]) -> VertexSet {
        pt.graph().set_of(labels).unwrap()
    }

    #[test]
    fn figure_one_projections() {
        let pt = table("fig1");
        let v = |l| pt.graph().vertex(l).unwrap();
        let one = |l| VertexSet::singleton(8, v(l));
        assert_eq!(
            pt.project(Rank::Finite(2), &one("a")).unwrap(),
            set(&pt, &["b"])
        );
        assert_eq!(
            pt.project(Rank::Finite(3), &one("a")).unwrap(),
            set(&pt, &["c", "d", "e"])
        );
        assert_eq!(
            pt.project(Rank::Finite(3), &one("c")).unwrap(),
            set(&pt, &["c"])
        );
        assert_eq!(pt.project(Rank::Finite(1), &one("g")).unwrap(), one("g"));
        assert!(pt.project(Rank::Finite(4), &one("a")).is_err());
        assert!(pt.project(Rank::Infinite, &one("a")).is_err());
        assert!(pt.project(Rank::Finite(2), &VertexSet::empty(8)).is_err());
        assert_eq!(pt.step(1, v("a")).unwrap(), &set(&pt, &["b"]));
        assert!(pt.step(2, v("a")).is_err());
        assert!(pt.step(3, v("c")).is_err());
    }

    #[test]
    fn figure_one_neighborhoods() {
        let pt = table("fig1");
        let v = |l| pt.graph().vertex(l).unwrap();
        assert_eq!(
            pt.k_neighborhood(Rank::Finite(2), v("b")),
            set(&pt, &["b", "c", "d", "e"])
        );
        assert!(pt.k_neighborhood(Rank::Finite(3), v("a")).is_empty());
        assert_eq!(
            pt.k_neighborhood(Rank::Finite(1), v("f")),
            set(&pt, &["f", "c", "d", "e", "g", "h"])
        );
        assert_eq!(
            pt.level_neighborhood(2, v("b")),
            set(&pt, &["b", "c", "d", "e"])
        );
    }

    #[test]
    fn cornering_and_catching() {
        let pt = table("fig1");
        let v = |l| pt.graph().vertex(l).unwrap();
        assert!(pt.is_k_cornered(v("b"), v("a"), 1).unwrap());
        assert!(pt.is_k_cornered(v("d"), v("d"), 0).unwrap());
        assert!(!pt.is_k_cornered(v("c"), v("d"), 0).unwrap());
        assert!(pt.is_k_cornered(v("a"), v("a"), 4).is_err());
        assert!(pt.is_k_caught(v("a"), v("a"), 1).unwrap());
        assert!(pt.is_k_caught(v("b"), v("a"), 2).unwrap());
        assert!(!pt.is_k_caught(v("f"), v("a"), 2).unwrap());
        assert!(pt.is_k_caught(v("b"), v("a"), 0).is_err());

        let pt = table("fig3");
        let v = |l| pt.graph().vertex(l).unwrap();
        assert!(pt.is_k_cornered(v("c2"), v("r1"), 5).unwrap());
    }

    #[test]
    fn safety() {
        let pt = table("fig1");
        let v = |l| pt.graph().vertex(l).unwrap();
        assert!(!pt.is_k_proj_safe(v("a"), v("c"), 3).unwrap());
        assert!(!pt.is_k_safe(v("b"), v("c"), 1).unwrap());
        assert!(pt.is_k_safe(v("a"), v("c"), 3).unwrap());

        let pt = table("fig2");
        let inf = pt.ranking().level_index(Rank::Infinite).unwrap();
        let x = pt.graph().vertex("x").unwrap();
        let safe: Vec<_> = pt
            .graph()
            .vertices()
            .filter(|&r| pt.is_k_proj_safe(x, r, inf).unwrap())
            .collect();
        assert!(!safe.is_empty());
        for r in safe {
            assert_eq!(pt.ranking().rank(r), Rank::Infinite);
        }
    }

    #[test]
    fn no_finite_ranks_means_identity() {
        let g = corpus::get("cycle_5").unwrap().graph;
        let pt = ProjectionTable::new(corner_rank(&g));
        assert_eq!(pt.ranking().level_count(), 1);
        for v in g.vertices() {
            assert_eq!(pt.projection(1, v).to_vec(), vec![v]);
        }
    }
}
