//! Exact game values by retrograde analysis, independent of corner rank.
//!
//! A position is `(cop, robber, side to move)`; its value is the number of
//! cop moves still needed to capture under optimal play, or `Escape`.
//!
//! ```text
//! value(c, c, _)      = 0
//! value(c, r, Cop)    = 1 + min_{c' ∈ N[c]} value(c', r, Robber)
//! value(c, r, Robber) =     max_{r' ∈ N[r]} value(c, r', Cop)
//! ```
//!
//! The cop's attractor is grown one sweep at a time. A sweep first solves
//! every cop-to-move position with a solved successor, then every
//! robber-to-move position whose successors are all solved. Each phase
//! reads a frozen snapshot, so the parallel and sequential sweeps agree
//! bit for bit.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::ranking::CaptureTime;
use crate::strategy::{Choice, Position, Role, Strategy};

#[derive(Clone, Debug)]
pub struct PositionTable {
    graph: Graph,
    cop_to_move: Vec<CaptureTime>,
    robber_to_move: Vec<CaptureTime>,
    optimal_cop_start: VertexSet,
    game_value: CaptureTime,
    solved_per_sweep: Vec<usize>,
}

pub fn solve(g: &Graph) -> PositionTable {
    solve_with(g, false)
}

/// Same as [`solve`], optionally splitting each sweep across threads.
pub fn solve_with(g: &Graph, parallel: bool) -> PositionTable {
    let n = g.order();
    let idx = |c: Vertex, r: Vertex| c * n + r;
    let mut cop: Vec<Option<u32>> = vec![None; n * n];
    let mut rob: Vec<Option<u32>> = vec![None; n * n];
    for v in g.vertices() {
        cop[idx(v, v)] = Some(0);
        rob[idx(v, v)] = Some(0);
    }

    let cop_update = |rob: &[Option<u32>], cop: &[Option<u32>], p: usize| -> Option<u32> {
        if cop[p].is_some() {
            return None;
        }
        let (c, r) = (p / n, p % n);
        g.closed_neighborhood(c)
            .iter()
            .filter_map(|c2| rob[idx(c2, r)])
            .min()
            .map(|m| m + 1)
    };
    let rob_update = |cop: &[Option<u32>], rob: &[Option<u32>], p: usize| -> Option<u32> {
        if rob[p].is_some() {
            return None;
        }
        let (c, r) = (p / n, p % n);
        let mut worst = 0;
        for r2 in g.closed_neighborhood(r).iter() {
            worst = worst.max(cop[idx(c, r2)]?);
        }
        Some(worst)
    };

    let mut solved_per_sweep = vec![2 * n];
    loop {
        let new_cop: Vec<(usize, u32)> = if parallel {
            (0..n * n)
                .into_par_iter()
                .filter_map(|p| cop_update(&rob, &cop, p).map(|v| (p, v)))
                .collect()
        } else {
            (0..n * n)
                .filter_map(|p| cop_update(&rob, &cop, p).map(|v| (p, v)))
                .collect()
        };
        for &(p, v) in &new_cop {
            cop[p] = Some(v);
        }
        let new_rob: Vec<(usize, u32)> = if parallel {
            (0..n * n)
                .into_par_iter()
                .filter_map(|p| rob_update(&cop, &rob, p).map(|v| (p, v)))
                .collect()
        } else {
            (0..n * n)
                .filter_map(|p| rob_update(&cop, &rob, p).map(|v| (p, v)))
                .collect()
        };
        for &(p, v) in &new_rob {
            rob[p] = Some(v);
        }
        if new_cop.is_empty() && new_rob.is_empty() {
            break;
        }
        let last = *solved_per_sweep.last().expect("seeded");
        solved_per_sweep.push(last + new_cop.len() + new_rob.len());
    }

    let lift = |v: Option<u32>| v.map_or(CaptureTime::Escape, CaptureTime::Moves);
    let cop_to_move: Vec<CaptureTime> = cop.into_iter().map(lift).collect();
    let robber_to_move: Vec<CaptureTime> = rob.into_iter().map(lift).collect();

    let worst_for: Vec<CaptureTime> = g
        .vertices()
        .map(|c| {
            g.vertices()
                .map(|r| cop_to_move[idx(c, r)])
                .max()
                .expect("non-empty graph")
        })
        .collect();
    let game_value = *worst_for.iter().min().expect("non-empty graph");
    let optimal_cop_start = match game_value {
        CaptureTime::Escape => VertexSet::empty(n),
        _ => VertexSet::from_iter_in(n, g.vertices().filter(|&c| worst_for[c] == game_value)),
    };

    PositionTable {
        graph: g.clone(),
        cop_to_move,
        robber_to_move,
        optimal_cop_start,
        game_value,
        solved_per_sweep,
    }
}

impl PositionTable {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn idx(&self, c: Vertex, r: Vertex) -> usize {
        c * self.graph.order() + r
    }

    /// Value of the position with `to_move` about to move.
    pub fn value(&self, cop: Vertex, robber: Vertex, to_move: Role) -> CaptureTime {
        match to_move {
            Role::Cop => self.cop_to_move[self.idx(cop, robber)],
            Role::Robber => self.robber_to_move[self.idx(cop, robber)],
        }
    }

    pub fn game_value(&self) -> CaptureTime {
        self.game_value
    }

    /// Cop placements achieving the game value; empty when the robber escapes.
    pub fn optimal_cop_start(&self) -> &VertexSet {
        &self.optimal_cop_start
    }

    /// Cumulative number of solved positions after each sweep.
    pub fn solved_per_sweep(&self) -> &[usize] {
        &self.solved_per_sweep
    }

    /// Worst case over robber placements against a cop placed at `cop`.
    pub fn placement_value(&self, cop: Vertex) -> CaptureTime {
        self.graph
            .vertices()
            .map(|r| self.value(cop, r, Role::Cop))
            .max()
            .expect("non-empty graph")
    }

    /// Robber placements maximizing the value against a cop at `cop`.
    pub fn optimal_robber_placements(&self, cop: Vertex) -> VertexSet {
        let best = self.placement_value(cop);
        VertexSet::from_iter_in(
            self.graph.order(),
            self.graph
                .vertices()
                .filter(|&r| self.value(cop, r, Role::Cop) == best),
        )
    }

    /// Value-optimal moves for the side to move in `pos`.
    pub fn optimal_moves(&self, pos: &Position) -> Result<VertexSet> {
        let n = self.graph.order();
        let (c, r) = (pos.cop, pos.robber);
        if c == r {
            let stay = match pos.side_to_move {
                Role::Cop => c,
                Role::Robber => r,
            };
            return Ok(VertexSet::singleton(n, stay));
        }
        match pos.side_to_move {
            Role::Cop => {
                if self.value(c, r, Role::Cop) == CaptureTime::Escape {
                    return Err(Error::EscapePosition);
                }
                let nb = self.graph.closed_neighborhood(c);
                let best = nb
                    .iter()
                    .map(|c2| self.value(c2, r, Role::Robber))
                    .min()
                    .expect("closed neighborhood is non-empty");
                Ok(VertexSet::from_iter_in(
                    n,
                    nb.iter()
                        .filter(|&c2| self.value(c2, r, Role::Robber) == best),
                ))
            }
            Role::Robber => {
                let nb = self.graph.closed_neighborhood(r);
                let best = nb
                    .iter()
                    .map(|r2| self.value(c, r2, Role::Cop))
                    .max()
                    .expect("closed neighborhood is non-empty");
                Ok(VertexSet::from_iter_in(
                    n,
                    nb.iter().filter(|&r2| self.value(c, r2, Role::Cop) == best),
                ))
            }
        }
    }

    /// `{"game_value": …, "optimal_starts": […]}`, plus the whole table when `full`.
    pub fn report(&self, full: bool) -> Value {
        let g = &self.graph;
        let mut out = json!({
            "game_value": self.game_value,
            "optimal_starts": g.labels_of(&self.optimal_cop_start),
        });
        if full {
            let mut rows = Vec::with_capacity(2 * g.order() * g.order());
            for c in g.vertices() {
                for r in g.vertices() {
                    for side in [Role::Cop, Role::Robber] {
                        rows.push(json!({
                            "cop": g.label(c),
                            "robber": g.label(r),
                            "to_move": side,
                            "value": self.value(c, r, side),
                        }));
                    }
                }
            }
            out["table"] = Value::Array(rows);
        }
        out
    }
}

/// Plays value-optimal moves from a solved table.
///
/// In escape positions every move is equally hopeless for the cop, so the
/// whole closed neighborhood is admissible and the selector stays put.
pub struct OracleStrategy<'a> {
    tbl: &'a PositionTable,
    role: Role,
}

pub fn oracle_strategy(tbl: &PositionTable, role: Role) -> OracleStrategy<'_> {
    OracleStrategy { tbl, role }
}

impl Strategy for OracleStrategy<'_> {
    fn name(&self) -> &str {
        "oracle"
    }

    fn role(&self) -> Role {
        self.role
    }

    fn place(&mut self, cop_at: Option<Vertex>) -> Result<Choice> {
        let g = self.tbl.graph();
        match (self.role, cop_at) {
            (Role::Cop, _) => {
                let starts = self.tbl.optimal_cop_start();
                if starts.is_empty() {
                    Ok(Choice::uniform(g.all()))
                } else {
                    Ok(Choice::uniform(starts.clone()))
                }
            }
            (Role::Robber, Some(c)) => Ok(Choice::uniform(self.tbl.optimal_robber_placements(c))),
            (Role::Robber, None) => Err(Error::Argument("robber places after the cop".into())),
        }
    }

    fn respond(&mut self, pos: &Position) -> Result<Choice> {
        match self.tbl.optimal_moves(pos) {
            Ok(set) => Ok(Choice::uniform(set)),
            Err(Error::EscapePosition) => {
                let nb = self.tbl.graph().closed_neighborhood(pos.cop).clone();
                let stay = VertexSet::singleton(nb.universe(), pos.cop);
                Ok(Choice::new(nb, stay))
            }
            Err(e) => Err(e),
        }
    }
}
