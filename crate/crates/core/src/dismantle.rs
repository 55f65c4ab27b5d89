//! Dismantling orderings: checking, building one from the corner ranking,
//! and the two rearrangements (adjacent swap, rank-one-first).
//!
//! An ordering `(u_1, …, u_n)` dismantles `G` when every `u_i` with `i < n`
//! is cornered by some later vertex in the graph induced by `u_i, …, u_n`.
//! Positions in this module are 0-based.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ranking::{Rank, RankAssignment};

fn check_permutation(g: &Graph, ord: &[Vertex]) -> Result<()> {
    let n = g.order();
    let mut seen = vec![false; n];
    if ord.len() != n {
        return Err(Error::Argument(format!(
            "ordering has {} entries, graph has {n} vertices",
            ord.len()
        )));
    }
    for &v in ord {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Argument(
                "ordering is not a permutation of the vertices".into(),
            ));
        }
    }
    Ok(())
}

fn suffix(g: &Graph, ord: &[Vertex], i: usize) -> VertexSet {
    VertexSet::from_iter_in(g.order(), ord[i..].iter().copied())
}

/// Whether some later vertex corners `ord[i]` in the suffix graph from `i`.
pub fn is_good_at(g: &Graph, ord: &[Vertex], i: usize) -> bool {
    let within = suffix(g, ord, i);
    ord[i + 1..]
        .iter()
        .any(|&w| g.corners_within(&within, w, ord[i]))
}

pub fn is_dismantling(g: &Graph, ord: &[Vertex]) -> Result<bool> {
    check_permutation(g, ord)?;
    Ok((0..ord.len() - 1).all(|i| is_good_at(g, ord, i)))
}

/// Vertices by ascending rank, ties by index.
pub fn dismantling_from_rank(ra: &RankAssignment) -> Result<Vec<Vertex>> {
    if !ra.alpha().is_finite() {
        return Err(Error::NotCopWin);
    }
    let mut ord: Vec<Vertex> = ra.graph().vertices().collect();
    ord.sort_by_key(|&v| (ra.rank(v), v));
    Ok(ord)
}

fn verified(g: &Graph, ord: Vec<Vertex>, what: &str) -> Result<Vec<Vertex>> {
    if is_dismantling(g, &ord)? {
        Ok(ord)
    } else {
        Err(Error::Argument(format!(
            "{what} produced a non-dismantling ordering"
        )))
    }
}

/// Whether `swap_step(g, ord, j)` applies: some `ord[k]`, `k > j`, corners
/// `ord[j]` in the suffix graph from `j - 1`.
pub fn swap_applies(g: &Graph, ord: &[Vertex], j: usize) -> bool {
    if j == 0 || j >= ord.len() {
        return false;
    }
    let within = suffix(g, ord, j - 1);
    ord[j + 1..]
        .iter()
        .any(|&w| g.corners_within(&within, w, ord[j]))
}

/// Transposes positions `j - 1` and `j` of a dismantling ordering.
pub fn swap_step(g: &Graph, ord: &[Vertex], j: usize) -> Result<Vec<Vertex>> {
    if !is_dismantling(g, ord)? {
        return Err(Error::Argument("ordering is not dismantling".into()));
    }
    if !swap_applies(g, ord, j) {
        return Err(Error::Argument(format!(
            "swap precondition fails at position {j}"
        )));
    }
    let mut out = ord.to_vec();
    out.swap(j - 1, j);
    verified(g, out, "swap step")
}

/// Moves every rank-1 vertex ahead of all higher-ranked ones by repeated
/// swaps, each one checked.
pub fn rank_one_first(ra: &RankAssignment, ord: &[Vertex]) -> Result<Vec<Vertex>> {
    let g = ra.graph();
    if !is_dismantling(g, ord)? {
        return Err(Error::Argument("ordering is not dismantling".into()));
    }
    let one = |v: Vertex| ra.rank(v) == Rank::Finite(1);
    let mut ord = ord.to_vec();
    loop {
        let Some(j) = (1..ord.len()).find(|&j| one(ord[j]) && !one(ord[j - 1])) else {
            return Ok(ord);
        };
        let vj = ord[j];
        let w = g
            .vertices()
            .find(|&w| w != vj && !one(w) && g.corners(w, vj).unwrap_or(false))
            .ok_or_else(|| {
                Error::Argument(format!("no higher-ranked vertex corners `{}`", g.label(vj)))
            })?;
        let w_pos = ord.iter().position(|&u| u == w).expect("permutation");
        let swap_at = if w_pos > j {
            j - 1
        } else {
            let y_pos = (0..j)
                .rev()
                .find(|&i| !one(ord[i]) && g.corners_within(&suffix(g, &ord, i), ord[i], vj))
                .expect("w itself qualifies");
            if g.twins_within(&suffix(g, &ord, y_pos), ord[y_pos], vj) {
                y_pos
            } else {
                j - 1
            }
        };
        ord.swap(swap_at, j);
        ord = verified(g, ord, "rank-one-first")?;
    }
}

/// Exhaustive search over removal sets; independent of the ranking.
pub fn find_dismantling(g: &Graph) -> Result<Option<Vec<Vertex>>> {
    let n = g.order();
    if n > 64 {
        return Err(Error::Argument(
            "exhaustive dismantling search is limited to 64 vertices".into(),
        ));
    }
    fn go(g: &Graph, left: u64, dead: &mut HashSet<u64>, out: &mut Vec<Vertex>) -> bool {
        if left.count_ones() <= 1 {
            if left != 0 {
                out.push(left.trailing_zeros() as Vertex);
            }
            return true;
        }
        if dead.contains(&left) {
            return false;
        }
        let within = VertexSet::from_iter_in(g.order(), (0..64).filter(|b| left >> b & 1 == 1));
        for v in within.iter() {
            let removable = within
                .iter()
                .any(|w| w != v && g.corners_within(&within, w, v));
            if removable {
                out.push(v);
                if go(g, left & !(1u64 << v), dead, out) {
                    return true;
                }
                out.pop();
            }
        }
        dead.insert(left);
        false
    }
    let mut out = Vec::with_capacity(n);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(go(g, all, &mut HashSet::new(), &mut out).then_some(out))
}

/// A uniformly chosen corner is removed at each step; `None` if the graph
/// gets stuck, which only happens on graphs that are not cop-win.
pub fn random_dismantling<R: Rng>(g: &Graph, rng: &mut R) -> Option<Vec<Vertex>> {
    let mut within = g.all();
    let mut ord = Vec::with_capacity(g.order());
    while within.len() > 1 {
        let corners: Vec<Vertex> = within
            .iter()
            .filter(|&v| {
                within
                    .iter()
                    .any(|w| w != v && g.corners_within(&within, w, v))
            })
            .collect();
        let &v = corners.choose(rng)?;
        ord.push(v);
        within.remove(v);
    }
    ord.extend(within.iter());
    Some(ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ranking::corner_rank;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ord(g: &Graph, labels: &[&str]) -> Vec<Vertex> {
        labels.iter().map(|l| g.vertex(l).unwrap()).collect()
    }

    #[test]
    fn figure_one_orderings() {
        let g = corpus::get("fig1").unwrap().graph;
        let o = ord(&g, &["a", "d", "e", "g", "h", "f", "c", "b"]);
        assert!(is_dismantling(&g, &o).unwrap());
        let from_rank = dismantling_from_rank(&corner_rank(&g)).unwrap();
        assert_eq!(
            from_rank,
            ord(&g, &["a", "g", "h", "b", "f", "c", "d", "e"])
        );
        assert!(is_dismantling(&g, &from_rank).unwrap());
        assert!(!is_dismantling(&g, &ord(&g, &["c", "a", "d", "e", "g", "h", "f", "b"])).unwrap());
    }

    #[test]
    fn non_permutations_are_rejected() {
        let g = corpus::get("fig1").unwrap().graph;
        assert!(is_dismantling(&g, &[0, 1, 2]).is_err());
        assert!(is_dismantling(&g, &[0, 0, 1, 2, 3, 4, 5, 6]).is_err());
        assert!(is_dismantling(&g, &[0, 1, 2, 3, 4, 5, 6, 8]).is_err());
    }

    #[test]
    fn figure_two_has_none() {
        let g = corpus::get("fig2").unwrap().graph;
        assert_eq!(find_dismantling(&g).unwrap(), None);
        assert!(matches!(
            dismantling_from_rank(&corner_rank(&g)),
            Err(Error::NotCopWin)
        ));
        assert_eq!(
            random_dismantling(&g, &mut ChaCha8Rng::seed_from_u64(1)),
            None
        );
    }

    #[test]
    fn small_cases() {
        let p5 = corpus::path(5).unwrap();
        assert_eq!(
            dismantling_from_rank(&corner_rank(&p5)).unwrap(),
            vec![0, 4, 1, 3, 2]
        );
        let one = corpus::path(1).unwrap();
        assert_eq!(dismantling_from_rank(&corner_rank(&one)).unwrap(), vec![0]);
        assert!(is_dismantling(&one, &[0]).unwrap());
        let k3 = corpus::clique(3).unwrap();
        for o in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert!(is_dismantling(&k3, &o).unwrap());
        }
    }

    #[test]
    fn figure_one_swap() {
        let g = corpus::get("fig1").unwrap().graph;
        let o = ord(&g, &["a", "d", "e", "g", "h", "f", "c", "b"]);
        assert!(swap_applies(&g, &o, 3));
        let s = swap_step(&g, &o, 3).unwrap();
        assert_eq!(s, ord(&g, &["a", "d", "g", "e", "h", "f", "c", "b"]));
        assert!(swap_step(&g, &o, 0).is_err());
        assert!(swap_step(&g, &o, 7).is_err());
        assert!(swap_step(&g, &o, 6).is_err());
    }

    #[test]
    fn clique_swaps() {
        let k4 = corpus::clique(4).unwrap();
        for j in 1..3 {
            assert!(is_dismantling(&k4, &swap_step(&k4, &[3, 1, 0, 2], j).unwrap()).unwrap());
        }
    }

    #[test]
    fn rank_one_first_examples() {
        let g = corpus::get("fig1").unwrap().graph;
        let ra = corner_rank(&g);
        let o = ord(&g, &["a", "d", "e", "g", "h", "f", "c", "b"]);
        let out = rank_one_first(&ra, &o).unwrap();
        let mut head = g.labels_of(&VertexSet::from_iter_in(8, out[..3].iter().copied()));
        head.sort();
        assert_eq!(head, ["a", "g", "h"]);

        let p5 = corpus::path(5).unwrap();
        let ra = corner_rank(&p5);
        // b is a cut vertex, so it cannot go first
        assert!(rank_one_first(&ra, &[1, 0, 4, 3, 2]).is_err());
        let out = rank_one_first(&ra, &[0, 1, 4, 3, 2]).unwrap();
        assert!(is_dismantling(&p5, &out).unwrap());
        let mut head = out[..2].to_vec();
        head.sort();
        assert_eq!(head, [0, 4]);

        let already = dismantling_from_rank(&ra).unwrap();
        assert_eq!(rank_one_first(&ra, &already).unwrap(), already);
    }

    #[test]
    fn exhaustive_search_agrees_on_figures() {
        for name in ["fig1", "fig3", "fig4", "fig5", "clique_4", "path_6"] {
            let g = corpus::get(name).unwrap().graph;
            let o = find_dismantling(&g).unwrap().expect(name);
            assert!(is_dismantling(&g, &o).unwrap(), "{name}");
        }
        assert_eq!(find_dismantling(&corpus::cycle(4).unwrap()).unwrap(), None);
        assert_eq!(find_dismantling(&corpus::cycle(5).unwrap()).unwrap(), None);
    }
}
