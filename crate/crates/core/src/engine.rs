//! Runs one game between two strategies and records a checked transcript.
//!
//! Rules: the cop places first, then the robber; the cop moves first and
//! turns alternate. Every move stays within the mover's closed
//! neighborhood. Co-location is capture and ends the game at once. Only
//! cop moves are counted; the placement is not a move.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::projection::ProjectionTable;
use crate::strategy::{standard_starts, CopRule, Position, Role, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub mover: Role,
    pub from: Vertex,
    pub to: Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Caught { cop_moves: u32 },
    Escaped { after_bound: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub graph_id: String,
    pub cop_strategy: String,
    pub robber_strategy: String,
    /// `(cop, robber)` initial placements.
    pub placements: (Vertex, Vertex),
    pub moves: Vec<Move>,
    pub outcome: Outcome,
}

/// Default move bound for cop-win graphs: `2·n² + α`.
pub fn default_move_bound(g: &Graph, alpha: Option<u32>) -> u32 {
    let n = g.order() as u32;
    2 * n * n + alpha.unwrap_or(0)
}

fn choose(
    g: &Graph,
    strategy: &mut dyn Strategy,
    pos: Option<&Position>,
    cop_at: Option<Vertex>,
) -> Result<Vertex> {
    let choice = match pos {
        Some(p) => strategy.respond(p)?,
        None => strategy.place(cop_at)?,
    };
    let pick = choice.select().ok_or_else(|| Error::StrategyViolation {
        strategy: strategy.name().to_string(),
        detail: "empty admissible set".into(),
    })?;
    let legal = match pos {
        Some(p) => pick < g.order() && g.adjacent(p.mover(), pick),
        None => pick < g.order(),
    };
    if !legal {
        let from = pos.map_or("<placement>".to_string(), |p| {
            g.label(p.mover()).to_string()
        });
        let to = if pick < g.order() {
            g.label(pick).to_string()
        } else {
            format!("#{pick}")
        };
        return Err(Error::IllegalMove {
            strategy: strategy.name().to_string(),
            from,
            to,
        });
    }
    Ok(pick)
}

/// Plays until capture or until `move_bound` cop moves have been made.
pub fn play(
    g: &Graph,
    graph_id: &str,
    cop: &mut dyn Strategy,
    robber: &mut dyn Strategy,
    move_bound: u32,
) -> Result<Transcript> {
    if move_bound < 1 {
        return Err(Error::Argument("move bound must be at least 1".into()));
    }
    let mut c = choose(g, cop, None, None)?;
    let mut r = choose(g, robber, None, Some(c))?;
    let mut tr = Transcript {
        graph_id: graph_id.to_string(),
        cop_strategy: cop.name().to_string(),
        robber_strategy: robber.name().to_string(),
        placements: (c, r),
        moves: Vec::new(),
        outcome: Outcome::Caught { cop_moves: 0 },
    };
    if c == r {
        return Ok(tr);
    }
    let mut t = 0;
    while t < move_bound {
        let pos = Position::new(c, r, t, Role::Cop);
        let c1 = choose(g, cop, Some(&pos), None)?;
        tr.moves.push(Move {
            mover: Role::Cop,
            from: c,
            to: c1,
        });
        c = c1;
        t += 1;
        if c == r {
            tr.outcome = Outcome::Caught { cop_moves: t };
            return Ok(tr);
        }
        let pos = Position::new(c, r, t, Role::Robber);
        let r1 = choose(g, robber, Some(&pos), None)?;
        tr.moves.push(Move {
            mover: Role::Robber,
            from: r,
            to: r1,
        });
        r = r1;
        if c == r {
            tr.outcome = Outcome::Caught { cop_moves: t };
            return Ok(tr);
        }
    }
    tr.outcome = Outcome::Escaped {
        after_bound: move_bound,
    };
    Ok(tr)
}

/// Whether the transcript's cop play meets LW or C: a standard placement,
/// and the condition's bound after every cop move `t ≥ 1`.
pub fn check_condition(tr: &Transcript, pt: &ProjectionTable, rule: CopRule) -> bool {
    let Ok(starts) = standard_starts(pt.ranking()) else {
        return false;
    };
    let (mut c, mut r) = tr.placements;
    if !starts.contains(c) {
        return false;
    }
    let mut t = 0;
    for m in &tr.moves {
        match m.mover {
            Role::Cop => {
                c = m.to;
                t += 1;
                if rule.witness(pt, c, r, t).is_none() {
                    return false;
                }
            }
            Role::Robber => r = m.to,
        }
    }
    true
}

impl Transcript {
    pub fn cop_moves(&self) -> u32 {
        self.moves.iter().filter(|m| m.mover == Role::Cop).count() as u32
    }

    /// Checks legality, strict alternation from the cop, capture ending the
    /// game, and that the recorded outcome matches the moves.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::Transcript(msg));
        let n = g.order();
        let (mut c, mut r) = self.placements;
        if c >= n || r >= n {
            return bad("placement outside the graph".into());
        }
        let mut caught = c == r;
        let mut cop_moves = 0;
        for (i, m) in self.moves.iter().enumerate() {
            if caught {
                return bad(format!("move {i} comes after the capture"));
            }
            let expected = if i % 2 == 0 { Role::Cop } else { Role::Robber };
            if m.mover != expected {
                return bad(format!("move {i} should be by the {expected:?}"));
            }
            let at = match m.mover {
                Role::Cop => &mut c,
                Role::Robber => &mut r,
            };
            if m.from != *at {
                return bad(format!("move {i} starts away from the mover"));
            }
            if m.to >= n || !g.adjacent(m.from, m.to) {
                return bad(format!("move {i} leaves the closed neighborhood"));
            }
            *at = m.to;
            if m.mover == Role::Cop {
                cop_moves += 1;
            }
            caught = c == r;
        }
        match self.outcome {
            Outcome::Caught { cop_moves: m } => {
                if !caught {
                    return bad("outcome says caught but the players never met".into());
                }
                if m != cop_moves {
                    return bad(format!(
                        "outcome counts {m} cop moves, transcript has {cop_moves}"
                    ));
                }
            }
            Outcome::Escaped { after_bound } => {
                if caught {
                    return bad("outcome says escaped but the robber was caught".into());
                }
                if after_bound != cop_moves || self.moves.len() as u32 != 2 * after_bound {
                    return bad("escape bound does not match the number of rounds".into());
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, g: &Graph, pt: Option<&ProjectionTable>) -> Value {
        let label = |v: Vertex| g.label(v).to_string();
        let moves: Vec<Value> = self
            .moves
            .iter()
            .map(|m| json!([m.mover, label(m.from), label(m.to)]))
            .collect();
        let outcome = match self.outcome {
            Outcome::Caught { cop_moves } => json!({"result": "caught", "cop_moves": cop_moves}),
            Outcome::Escaped { after_bound } => {
                json!({"result": "escaped", "after_bound": after_bound})
            }
        };
        let mut out = json!({
            "graph": self.graph_id,
            "cop_strategy": self.cop_strategy,
            "robber_strategy": self.robber_strategy,
            "placements": {"cop": label(self.placements.0), "robber": label(self.placements.1)},
            "moves": moves,
            "outcome": outcome,
        });
        if let Some(pt) = pt {
            out["conditions"] = json!({
                "LW": check_condition(self, pt, CopRule::LowerWay),
                "C": check_condition(self, pt, CopRule::Catching),
            });
        }
        out
    }

    /// Reads back what [`Transcript::to_json`] writes. Conditions are derived
    /// data and are ignored.
    pub fn from_json(v: &Value, g: &Graph) -> Result<Transcript> {
        let bad = |what: &str| Error::Transcript(format!("malformed JSON: {what}"));
        let text = |v: &Value, what: &str| v.as_str().map(str::to_string).ok_or_else(|| bad(what));
        let vertex = |v: &Value, what: &str| -> Result<Vertex> {
            g.vertex(v.as_str().ok_or_else(|| bad(what))?)
        };
        let placements = (
            vertex(&v["placements"]["cop"], "placements.cop")?,
            vertex(&v["placements"]["robber"], "placements.robber")?,
        );
        let mut moves = Vec::new();
        for m in v["moves"].as_array().ok_or_else(|| bad("moves"))? {
            let mover = match m[0].as_str() {
                Some("cop") => Role::Cop,
                Some("robber") => Role::Robber,
                _ => return Err(bad("move mover")),
            };
            moves.push(Move {
                mover,
                from: vertex(&m[1], "move from")?,
                to: vertex(&m[2], "move to")?,
            });
        }
        let o = &v["outcome"];
        let count = |key: &str| {
            o[key]
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| bad(key))
        };
        let outcome = match o["result"].as_str() {
            Some("caught") => Outcome::Caught {
                cop_moves: count("cop_moves")?,
            },
            Some("escaped") => Outcome::Escaped {
                after_bound: count("after_bound")?,
            },
            _ => return Err(bad("outcome.result")),
        };
        Ok(Transcript {
            graph_id: text(&v["graph"], "graph")?,
            cop_strategy: text(&v["cop_strategy"], "cop_strategy")?,
            robber_strategy: text(&v["robber_strategy"], "robber_strategy")?,
            placements,
            moves,
            outcome,
        })
    }
}
