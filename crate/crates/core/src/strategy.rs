//! Player policies.
//!
//! A strategy reports an admissible move set together with the subset it
//! prefers; the engine applies the selector (lowest label among preferred).
//! Exposing the full admissible set lets tests fork on every member of a
//! strategy class rather than one fixed representative.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::{oracle_strategy, PositionTable};
use crate::projection::ProjectionTable;
use crate::ranking::{CaptureTime, RankAssignment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Cop,
    Robber,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub cop: Vertex,
    pub robber: Vertex,
    /// Completed cop moves; the initial placement is not a move.
    pub cop_moves_made: u32,
    pub side_to_move: Role,
}

impl Position {
    pub fn new(cop: Vertex, robber: Vertex, cop_moves_made: u32, side_to_move: Role) -> Self {
        Self {
            cop,
            robber,
            cop_moves_made,
            side_to_move,
        }
    }

    pub fn mover(&self) -> Vertex {
        match self.side_to_move {
            Role::Cop => self.cop,
            Role::Robber => self.robber,
        }
    }
}

/// Admissible moves and the preferred subset the selector draws from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choice {
    pub admissible: VertexSet,
    pub preferred: VertexSet,
}

impl Choice {
    pub fn new(admissible: VertexSet, preferred: VertexSet) -> Self {
        debug_assert!(preferred.is_subset(&admissible));
        Self {
            admissible,
            preferred,
        }
    }

    pub fn uniform(admissible: VertexSet) -> Self {
        Self {
            preferred: admissible.clone(),
            admissible,
        }
    }

    /// The default selector: lowest label among the preferred moves.
    pub fn select(&self) -> Option<Vertex> {
        self.preferred.first().or_else(|| self.admissible.first())
    }
}

pub trait Strategy {
    fn name(&self) -> &str;
    fn role(&self) -> Role;
    /// Initial placement; a robber is told where the cop stands.
    fn place(&mut self, cop_at: Option<Vertex>) -> Result<Choice>;
    fn respond(&mut self, pos: &Position) -> Result<Choice>;
}

/// Cop placements dominating `V(G^(α − r))`.
pub fn standard_starts(ra: &RankAssignment) -> Result<VertexSet> {
    let target = ra.alpha_minus_r()?.max(1) as usize;
    let level = ra.level(target);
    let g = ra.graph();
    Ok(VertexSet::from_iter_in(
        g.order(),
        g.vertices().filter(|&v| g.dominates(v, level)),
    ))
}

/// The two cop conditions: LW (`k`-corner for some `k ≤ α − r − t`) and
/// C (`k`-catch for some `k ≤ α − r − t + 1`), after `t` cop moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CopRule {
    #[serde(rename = "LW")]
    LowerWay,
    #[serde(rename = "C")]
    Catching,
}

impl CopRule {
    /// Smallest witnessing `k` when the cop at `cop` satisfies the rule
    /// against the robber at `robber` after `t` cop moves.
    pub fn witness(
        self,
        pt: &ProjectionTable,
        cop: Vertex,
        robber: Vertex,
        t: u32,
    ) -> Option<usize> {
        let budget = pt.ranking().alpha_minus_r().ok()? as i64 - t as i64;
        match self {
            CopRule::LowerWay => {
                if budget < 0 {
                    return None;
                }
                pt.min_cornering_level(cop, robber, budget as usize)
            }
            CopRule::Catching => {
                let top = budget + 1;
                if top < 1 {
                    return None;
                }
                pt.min_catching_level(cop, robber, top as usize)
            }
        }
    }
}

fn rule_moves(pt: &ProjectionTable, pos: &Position, rule: CopRule) -> Result<Choice> {
    let name = match rule {
        CopRule::LowerWay => "lowerway",
        CopRule::Catching => "catching",
    };
    if pos.side_to_move != Role::Cop {
        return Err(Error::Argument(format!("{name} moves are for the cop")));
    }
    pt.ranking().alpha_minus_r()?;
    let g = pt.graph();
    let t = pos.cop_moves_made + 1;
    let scored: Vec<(Vertex, usize)> = g
        .closed_neighborhood(pos.cop)
        .iter()
        .filter_map(|c1| rule.witness(pt, c1, pos.robber, t).map(|k| (c1, k)))
        .collect();
    let Some(best) = scored.iter().map(|&(_, k)| k).min() else {
        return Err(Error::StrategyViolation {
            strategy: name.into(),
            detail: format!(
                "no move from `{}` meets the bound at cop move {t} against `{}`",
                g.label(pos.cop),
                g.label(pos.robber)
            ),
        });
    };
    let n = g.order();
    Ok(Choice::new(
        VertexSet::from_iter_in(n, scored.iter().map(|&(v, _)| v)),
        VertexSet::from_iter_in(
            n,
            scored.iter().filter(|&&(_, k)| k == best).map(|&(v, _)| v),
        ),
    ))
}

/// Cop moves keeping the LW condition; preferred are those with minimum `k`.
pub fn lower_way_moves(pt: &ProjectionTable, pos: &Position) -> Result<Choice> {
    rule_moves(pt, pos, CopRule::LowerWay)
}

/// Cop moves keeping the C condition; preferred are those with minimum `k`.
pub fn catching_moves(pt: &ProjectionTable, pos: &Position) -> Result<Choice> {
    rule_moves(pt, pos, CopRule::Catching)
}

fn higher_way_choice(
    pt: &ProjectionTable,
    cop: Vertex,
    options: &VertexSet,
    current: Option<Vertex>,
) -> Choice {
    let n = pt.graph().order();
    let best = options
        .iter()
        .filter_map(|o| pt.max_proj_safe_level(cop, o))
        .max();
    if let Some(k) = best {
        let safe = VertexSet::from_iter_in(
            n,
            options
                .iter()
                .filter(|&o| pt.is_k_proj_safe(cop, o, k).unwrap_or(false)),
        );
        return Choice::uniform(safe);
    }
    let mut away = options.clone();
    away.remove(cop);
    if away.is_empty() {
        return Choice::uniform(VertexSet::singleton(n, cop));
    }
    let pick = match current {
        Some(r) if away.contains(r) => r,
        _ => away.first().expect("non-empty"),
    };
    Choice::new(away, VertexSet::singleton(n, pick))
}

/// Higher Way robber placement against a cop at `cop`.
pub fn higher_way_placement(pt: &ProjectionTable, cop: Vertex) -> Choice {
    higher_way_choice(pt, cop, &pt.graph().all(), None)
}

/// Higher Way robber reply: neighbors that are `k`-proj-safe for maximum `k`.
pub fn higher_way_moves(pt: &ProjectionTable, pos: &Position) -> Choice {
    let options = pt.graph().closed_neighborhood(pos.robber).clone();
    higher_way_choice(pt, pos.cop, &options, Some(pos.robber))
}

pub struct LowerWay<'a> {
    pt: &'a ProjectionTable,
    rule: CopRule,
}

impl<'a> LowerWay<'a> {
    pub fn new(pt: &'a ProjectionTable) -> Self {
        Self {
            pt,
            rule: CopRule::LowerWay,
        }
    }

    pub fn catching(pt: &'a ProjectionTable) -> Self {
        Self {
            pt,
            rule: CopRule::Catching,
        }
    }
}

impl Strategy for LowerWay<'_> {
    fn name(&self) -> &str {
        match self.rule {
            CopRule::LowerWay => "lowerway",
            CopRule::Catching => "catching",
        }
    }

    fn role(&self) -> Role {
        Role::Cop
    }

    fn place(&mut self, _cop_at: Option<Vertex>) -> Result<Choice> {
        Ok(Choice::uniform(standard_starts(self.pt.ranking())?))
    }

    fn respond(&mut self, pos: &Position) -> Result<Choice> {
        rule_moves(self.pt, pos, self.rule)
    }
}

pub struct HigherWay<'a> {
    pt: &'a ProjectionTable,
}

impl<'a> HigherWay<'a> {
    pub fn new(pt: &'a ProjectionTable) -> Self {
        Self { pt }
    }
}

impl Strategy for HigherWay<'_> {
    fn name(&self) -> &str {
        "higherway"
    }

    fn role(&self) -> Role {
        Role::Robber
    }

    fn place(&mut self, cop_at: Option<Vertex>) -> Result<Choice> {
        let cop = cop_at.ok_or_else(|| Error::Argument("robber places after the cop".into()))?;
        Ok(higher_way_placement(self.pt, cop))
    }

    fn respond(&mut self, pos: &Position) -> Result<Choice> {
        Ok(higher_way_moves(self.pt, pos))
    }
}

/// Never moves. A robber avoids the cop's vertex when placing.
pub struct Still<'a> {
    graph: &'a Graph,
    role: Role,
}

impl<'a> Still<'a> {
    pub fn new(graph: &'a Graph, role: Role) -> Self {
        Self { graph, role }
    }
}

impl Strategy for Still<'_> {
    fn name(&self) -> &str {
        "still"
    }

    fn role(&self) -> Role {
        self.role
    }

    fn place(&mut self, cop_at: Option<Vertex>) -> Result<Choice> {
        let n = self.graph.order();
        let mut options = self.graph.all();
        if let Some(c) = cop_at {
            if n > 1 {
                options.remove(c);
            }
        }
        let first = options.first().expect("non-empty");
        Ok(Choice::new(options, VertexSet::singleton(n, first)))
    }

    fn respond(&mut self, pos: &Position) -> Result<Choice> {
        Ok(Choice::uniform(VertexSet::singleton(
            self.graph.order(),
            pos.mover(),
        )))
    }
}

/// Uniformly random legal moves from a seeded generator.
pub struct RandomSeeded<'a> {
    graph: &'a Graph,
    role: Role,
    rng: ChaCha8Rng,
}

impl<'a> RandomSeeded<'a> {
    pub fn new(graph: &'a Graph, role: Role, seed: u64) -> Self {
        Self {
            graph,
            role,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn pick(&mut self, options: VertexSet) -> Choice {
        let v = options.iter().choose(&mut self.rng).expect("non-empty");
        let n = options.universe();
        Choice::new(options, VertexSet::singleton(n, v))
    }
}

impl Strategy for RandomSeeded<'_> {
    fn name(&self) -> &str {
        "randomseeded"
    }

    fn role(&self) -> Role {
        self.role
    }

    fn place(&mut self, cop_at: Option<Vertex>) -> Result<Choice> {
        let mut options = self.graph.all();
        if let Some(c) = cop_at {
            if self.graph.order() > 1 {
                options.remove(c);
            }
        }
        Ok(self.pick(options))
    }

    fn respond(&mut self, pos: &Position) -> Result<Choice> {
        let options = self.graph.closed_neighborhood(pos.mover()).clone();
        Ok(self.pick(options))
    }
}

pub const STRATEGY_NAMES: [&str; 6] = [
    "lowerway",
    "catching",
    "higherway",
    "oracle",
    "still",
    "randomseeded",
];

/// Builds a strategy by its CLI name.
pub fn by_name<'a>(
    name: &str,
    role: Role,
    pt: &'a ProjectionTable,
    tbl: &'a PositionTable,
    seed: u64,
) -> Result<Box<dyn Strategy + 'a>> {
    let g = pt.graph();
    let wrong_role = || Error::Argument(format!("strategy `{name}` cannot play the {role:?}"));
    Ok(match (name, role) {
        ("lowerway", Role::Cop) => Box::new(LowerWay::new(pt)),
        ("catching", Role::Cop) => Box::new(LowerWay::catching(pt)),
        ("higherway", Role::Robber) => Box::new(HigherWay::new(pt)),
        ("lowerway" | "catching" | "higherway", _) => return Err(wrong_role()),
        ("oracle", _) => Box::new(oracle_strategy(tbl, role)),
        ("still", _) => Box::new(Still::new(g, role)),
        ("randomseeded", _) => Box::new(RandomSeeded::new(g, role, seed)),
        _ => {
            return Err(Error::Argument(format!(
                "unknown strategy `{name}` (expected one of {})",
                STRATEGY_NAMES.join(", ")
            )))
        }
    })
}

/// Longest game a cop following `rule` can be held to, taking the worst
/// admissible cop move and the worst robber reply at every turn, over
/// every standard start and robber placement.
///
/// Fails with [`Error::StrategyViolation`] if some reachable position has
/// no admissible move.
pub fn cop_class_worst_case(pt: &ProjectionTable, rule: CopRule) -> Result<u32> {
    let g = pt.graph();
    let mut memo: HashMap<(Vertex, Vertex, u32), u32> = HashMap::new();

    fn worst(
        pt: &ProjectionTable,
        rule: CopRule,
        c: Vertex,
        r: Vertex,
        t: u32,
        memo: &mut HashMap<(Vertex, Vertex, u32), u32>,
    ) -> Result<u32> {
        if let Some(&w) = memo.get(&(c, r, t)) {
            return Ok(w);
        }
        let choice = rule_moves(pt, &Position::new(c, r, t, Role::Cop), rule)?;
        let mut longest = 0;
        for c1 in choice.admissible.iter() {
            if c1 == r {
                longest = longest.max(t + 1);
                continue;
            }
            for r1 in pt.graph().closed_neighborhood(r).iter() {
                let end = if r1 == c1 {
                    t + 1
                } else {
                    worst(pt, rule, c1, r1, t + 1, memo)?
                };
                longest = longest.max(end);
            }
        }
        memo.insert((c, r, t), longest);
        Ok(longest)
    }

    let mut longest = 0;
    for c in standard_starts(pt.ranking())?.iter() {
        for r in g.vertices() {
            if r != c {
                longest = longest.max(worst(pt, rule, c, r, 0, &mut memo)?);
            }
        }
    }
    Ok(longest)
}

/// Every cop-to-move position reachable when the cop follows `rule` from a
/// standard start and the robber plays anything.
pub fn cop_class_positions(pt: &ProjectionTable, rule: CopRule) -> Result<Vec<Position>> {
    let g = pt.graph();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for c in standard_starts(pt.ranking())?.iter() {
        for r in g.vertices().filter(|&r| r != c) {
            let p = Position::new(c, r, 0, Role::Cop);
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        out.push(p);
        let choice = rule_moves(pt, &p, rule)?;
        for c1 in choice.admissible.iter().filter(|&c1| c1 != p.robber) {
            for r1 in g
                .closed_neighborhood(p.robber)
                .iter()
                .filter(|&r1| r1 != c1)
            {
                let q = Position::new(c1, r1, p.cop_moves_made + 1, Role::Cop);
                if seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
    }
    Ok(out)
}

/// Fastest capture of a Higher Way robber, with the cop playing freely and
/// every tie in the robber's admissible set resolved in the cop's favor.
/// `Escape` if no such line ever captures.
pub fn higher_way_class_best_case(pt: &ProjectionTable) -> CaptureTime {
    let g = pt.graph();
    let mut dist: HashMap<(Vertex, Vertex), u32> = HashMap::new();
    let mut queue = VecDeque::new();
    for c in g.vertices() {
        for r in higher_way_placement(pt, c).admissible.iter() {
            if r == c {
                return CaptureTime::Moves(0);
            }
            if dist.insert((c, r), 0).is_none() {
                queue.push_back((c, r));
            }
        }
    }
    while let Some((c, r)) = queue.pop_front() {
        let d = dist[&(c, r)];
        for c1 in g.closed_neighborhood(c).iter() {
            if c1 == r {
                return CaptureTime::Moves(d + 1);
            }
            let pos = Position::new(c1, r, d + 1, Role::Robber);
            for r1 in higher_way_moves(pt, &pos).admissible.iter() {
                if r1 == c1 {
                    return CaptureTime::Moves(d + 1);
                }
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry((c1, r1)) {
                    e.insert(d + 1);
                    queue.push_back((c1, r1));
                }
            }
        }
    }
    CaptureTime::Escape
}
