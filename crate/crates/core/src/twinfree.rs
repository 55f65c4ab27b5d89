//! Twins that survive the corner ranking, and checks of the two facts that
//! hold on graphs without them: optimal cop starts are exactly the
//! standard ones, and against a Higher Way robber every value-optimal cop
//! line keeps the LW condition.

use std::collections::{BTreeMap, HashSet};

use serde_json::{json, Map, Value};

use crate::engine::Move;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::{solve, PositionTable};
use crate::projection::ProjectionTable;
use crate::ranking::{corner_rank, Rank, RankAssignment};
use crate::strategy::{
    higher_way_moves, higher_way_placement, standard_starts, CopRule, Position, Role,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinReport {
    /// Level `k ≥ 2` to pairs `(x, y)`, `x < y`, of rank `k` that are
    /// twins in `G^(k-1)`.
    pub k_twin_pairs: BTreeMap<u32, Vec<(Vertex, Vertex)>>,
    pub iteratively_twin_free: bool,
}

pub fn analyze_twins(ra: &RankAssignment) -> TwinReport {
    let g = ra.graph();
    let mut pairs: BTreeMap<u32, Vec<(Vertex, Vertex)>> = BTreeMap::new();
    for k in 2..=ra
        .gamma()
        .unwrap_or(0)
        .max(ra.alpha().finite().unwrap_or(0))
    {
        let members = ra.vertices_of_rank(Rank::Finite(k)).to_vec();
        if members.len() < 2 {
            continue;
        }
        let below = ra.level(k as usize - 1);
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if g.twins_within(below, x, y) {
                    pairs.entry(k).or_default().push((x, y));
                }
            }
        }
    }
    TwinReport {
        iteratively_twin_free: ra.alpha().is_finite() && pairs.is_empty(),
        k_twin_pairs: pairs,
    }
}

/// The narrower class: finite rank and no twins at all in `G^(1)`, …,
/// `G^(α-1)`.
pub fn has_no_twins_below_top(ra: &RankAssignment) -> bool {
    let Some(alpha) = ra.alpha().finite() else {
        return false;
    };
    let g = ra.graph();
    (1..alpha as usize).all(|k| {
        let level = ra.level(k);
        let members = level.to_vec();
        members.iter().enumerate().all(|(i, &x)| {
            members[i + 1..]
                .iter()
                .all(|&y| !g.twins_within(level, x, y))
        })
    })
}

impl TwinReport {
    pub fn to_json(&self, g: &Graph) -> Value {
        let mut levels = Map::new();
        for (k, pairs) in &self.k_twin_pairs {
            let list: Vec<Value> = pairs
                .iter()
                .map(|&(x, y)| json!([g.label(x), g.label(y)]))
                .collect();
            levels.insert(k.to_string(), Value::Array(list));
        }
        json!({
            "k_twin_pairs": levels,
            "iteratively_twin_free": self.iteratively_twin_free,
        })
    }
}

/// A line of play where a value-optimal cop move broke the LW condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineViolation {
    pub placements: (Vertex, Vertex),
    /// Moves up to and including the offending cop move.
    pub moves: Vec<Move>,
}

impl LineViolation {
    pub fn to_json(&self, g: &Graph) -> Value {
        let moves: Vec<Value> = self
            .moves
            .iter()
            .map(|m| json!([m.mover, g.label(m.from), g.label(m.to)]))
            .collect();
        json!({
            "placements": {"cop": g.label(self.placements.0), "robber": g.label(self.placements.1)},
            "moves": moves,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCheck {
    /// Distinct cop-to-move positions visited.
    pub positions: usize,
    pub violation: Option<LineViolation>,
}

/// Branches over every optimal cop placement, every Higher Way robber
/// placement and reply, and every value-optimal cop move, checking the
/// LW condition (standard start, and the bound after each cop move).
pub fn optimal_lines_vs_higher_way(pt: &ProjectionTable, tbl: &PositionTable) -> Result<LineCheck> {
    let starts = standard_starts(pt.ranking())?;
    let mut seen: HashSet<(Vertex, Vertex, u32)> = HashSet::new();
    let mut path: Vec<Move> = Vec::new();

    fn walk(
        pt: &ProjectionTable,
        tbl: &PositionTable,
        c: Vertex,
        r: Vertex,
        t: u32,
        seen: &mut HashSet<(Vertex, Vertex, u32)>,
        path: &mut Vec<Move>,
    ) -> Result<bool> {
        if !seen.insert((c, r, t)) {
            return Ok(true);
        }
        for c1 in tbl
            .optimal_moves(&Position::new(c, r, t, Role::Cop))?
            .iter()
        {
            path.push(Move {
                mover: Role::Cop,
                from: c,
                to: c1,
            });
            if CopRule::LowerWay.witness(pt, c1, r, t + 1).is_none() {
                return Ok(false);
            }
            if c1 != r {
                let reply = higher_way_moves(pt, &Position::new(c1, r, t + 1, Role::Robber));
                for r1 in reply.admissible.iter() {
                    path.push(Move {
                        mover: Role::Robber,
                        from: r,
                        to: r1,
                    });
                    if r1 != c1 && !walk(pt, tbl, c1, r1, t + 1, seen, path)? {
                        return Ok(false);
                    }
                    path.pop();
                }
            }
            path.pop();
        }
        Ok(true)
    }

    for c in tbl.optimal_cop_start().iter() {
        for r in higher_way_placement(pt, c).admissible.iter() {
            if !starts.contains(c) || (r != c && !walk(pt, tbl, c, r, 0, &mut seen, &mut path)?) {
                let v = LineViolation {
                    placements: (c, r),
                    moves: path,
                };
                return Ok(LineCheck {
                    positions: seen.len(),
                    violation: Some(v),
                });
            }
        }
    }
    Ok(LineCheck {
        positions: seen.len(),
        violation: None,
    })
}

/// First `(c0, c1, r, k)` where a `k`-safe robber (`k ≥ 2`) has no
/// `(k-1)`-safe reply after the cop steps from `c0` to `c1`.
pub fn safe_reply_counterexample(pt: &ProjectionTable) -> Option<(Vertex, Vertex, Vertex, usize)> {
    let ra = pt.ranking();
    let g = pt.graph();
    let top = ra.alpha().finite()? as usize;
    for k in 2..=top {
        for c0 in g.vertices() {
            for r in g.vertices() {
                if !pt.is_k_safe(c0, r, k).unwrap_or(false) {
                    continue;
                }
                for c1 in g.closed_neighborhood(c0).iter() {
                    let ok = g
                        .closed_neighborhood(r)
                        .iter()
                        .any(|r1| pt.is_k_safe(c1, r1, k - 1).unwrap_or(false));
                    if !ok {
                        return Some((c0, c1, r, k));
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinfreeVerification {
    pub standard_starts: VertexSet,
    pub optimal_starts: VertexSet,
    pub lines: LineCheck,
}

impl TwinfreeVerification {
    pub fn starts_equal(&self) -> bool {
        self.standard_starts == self.optimal_starts
    }

    pub fn passed(&self) -> bool {
        self.starts_equal() && self.lines.violation.is_none()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        json!({
            "standard_starts": g.labels_of(&self.standard_starts),
            "optimal_starts": g.labels_of(&self.optimal_starts),
            "starts_equal": self.starts_equal(),
            "positions_checked": self.lines.positions,
            "lw_violation": self.lines.violation.as_ref().map(|v| v.to_json(g)),
            "passed": self.passed(),
        })
    }
}

/// Both checks on an iteratively twin-free cop-win graph.
pub fn verify_twinfree(g: &Graph) -> Result<TwinfreeVerification> {
    let ra = corner_rank(g);
    if !ra.alpha().is_finite() {
        return Err(Error::Argument("graph is not cop-win".into()));
    }
    let report = analyze_twins(&ra);
    if !report.iteratively_twin_free {
        return Err(Error::Argument("graph is not iteratively twin-free".into()));
    }
    let pt = ProjectionTable::new(ra);
    let tbl = solve(g);
    verify_with(&pt, &tbl)
}

/// As [`verify_twinfree`] with precomputed tables and no
/// precondition check.
pub fn verify_with(pt: &ProjectionTable, tbl: &PositionTable) -> Result<TwinfreeVerification> {
    Ok(TwinfreeVerification {
        standard_starts: standard_starts(pt.ranking())?,
        optimal_starts: tbl.optimal_cop_start().clone(),
        lines: optimal_lines_vs_higher_way(pt, tbl)?,
    })
}
