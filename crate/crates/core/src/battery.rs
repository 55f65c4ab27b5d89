//! Property sweep over a pool of graphs: every labeled graph up to a size,
//! a seeded random sample and the figure graphs. Each property reports
//! pass and fail counts and the first counterexample in pool order.
//!
//! Graphs are checked in parallel; aggregation walks the pool in order, so
//! the report does not depend on scheduling.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::{self, NamedGraph};
use crate::dismantle::{
    dismantling_from_rank, find_dismantling, is_dismantling, random_dismantling, rank_one_first,
    swap_applies, swap_step,
};
use crate::engine::{default_move_bound, play, Outcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{oracle_strategy, solve, PositionTable};
use crate::projection::ProjectionTable;
use crate::ranking::{corner_rank, CaptureTime, CopwinClass, Rank};
use crate::strategy::{
    cop_class_positions, cop_class_worst_case, higher_way_class_best_case, higher_way_placement,
    standard_starts, CopRule, HigherWay, LowerWay, Role,
};
use crate::twinfree::{analyze_twins, optimal_lines_vs_higher_way, safe_reply_counterexample};

/// Random sample sizes for the sweep.
pub const RANDOM_ORDERS: std::ops::RangeInclusive<usize> = 6..=9;

/// Twin-free line checks are limited to this order.
pub const TWIN_FREE_MAX_ORDER: usize = 8;

#[derive(Clone, Debug)]
pub struct PoolGraph {
    pub id: String,
    pub graph: Graph,
    pub expectations: Option<corpus::Expectations>,
}

/// `all_graphs(1..=max_n)`, then `samples` random graphs, then the figures.
pub fn pool(max_n: usize, samples: usize, seed: u64, figures: bool) -> Result<Vec<PoolGraph>> {
    if max_n > 5 {
        return Err(Error::Argument(format!(
            "exhaustive sweep supports n ≤ 5, got {max_n}"
        )));
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, graph) in corpus::all_graphs(n)?.into_iter().enumerate() {
            out.push(PoolGraph {
                id: format!("all{n}#{i}"),
                graph,
                expectations: None,
            });
        }
    }
    if samples > 0 {
        for (i, graph) in corpus::random_graphs(RANDOM_ORDERS, samples, seed)?
            .into_iter()
            .enumerate()
        {
            out.push(PoolGraph {
                id: format!("random{seed}#{i}"),
                graph,
                expectations: None,
            });
        }
    }
    if figures {
        for name in corpus::FIGURES {
            let NamedGraph {
                name,
                graph,
                expectations,
            } = corpus::get(name)?;
            out.push(PoolGraph {
                id: name,
                graph,
                expectations,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
    pub first_counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub graphs: usize,
    pub properties: BTreeMap<&'static str, Tally>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.properties.values().all(|t| t.failed == 0)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.properties
            .iter()
            .filter(|(_, t)| t.failed > 0)
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "graphs": self.graphs,
            "all_passed": self.all_passed(),
            "properties": self.properties,
        })
    }
}

/// One property outcome on one graph; `Err` carries the counterexample.
type Check = (&'static str, std::result::Result<(), String>);

fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g
        .edge_labels()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    format!("[{}] edges {{{}}}", g.labels().join(","), edges.join(","))
}

struct Ctx<'a> {
    g: &'a Graph,
    pt: &'a ProjectionTable,
    tbl: &'a PositionTable,
    out: Vec<Check>,
}

impl Ctx<'_> {
    fn check(&mut self, name: &'static str, f: impl FnOnce() -> std::result::Result<(), String>) {
        let r = f().map_err(|e| format!("{}: {e}", describe(self.g)));
        self.out.push((name, r));
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label_set(g: &Graph, s: &VertexSet) -> String {
    format!("{{{}}}", g.labels_of(s).join(","))
}

/// Runs every property on one graph.
pub fn check_graph(
    g: &Graph,
    seed: u64,
    expectations: Option<&corpus::Expectations>,
) -> Vec<Check> {
    let ra = corner_rank(g);
    let pt = ProjectionTable::new(ra);
    let tbl = solve(g);
    let mut cx = Ctx {
        g,
        pt: &pt,
        tbl: &tbl,
        out: Vec::new(),
    };
    ranking_checks(&mut cx);
    projection_checks(&mut cx);
    strategy_checks(&mut cx);
    dismantle_checks(&mut cx, seed);
    twin_checks(&mut cx);
    if let Some(e) = expectations {
        cx.check("figure_expectations", || expectation_check(g, &pt, &tbl, e));
    }
    cx.out
}

fn ranking_checks(cx: &mut Ctx) {
    let (g, ra, tbl) = (cx.g, cx.pt.ranking(), cx.tbl);

    cx.check("corner_relations", || {
        for v in g.vertices() {
            for w in g.vertices().filter(|&w| w != v) {
                let (c, s, t) = (
                    g.corners(w, v).unwrap(),
                    g.strictly_corners(w, v).unwrap(),
                    g.twins(w, v).unwrap(),
                );
                ensure(c == (s ^ t), || {
                    format!("{} over {}", g.label(w), g.label(v))
                })?;
                ensure(!t || g.corners(v, w).unwrap(), || {
                    format!("twins {} {}", g.label(w), g.label(v))
                })?;
            }
        }
        Ok(())
    });

    cx.check("levels_strictly_decrease", || {
        let levels = ra.levels();
        ensure(levels.iter().all(|l| !l.is_empty()), || {
            "empty level".into()
        })?;
        ensure(levels[0] == g.all(), || {
            "first level is not the whole graph".into()
        })?;
        for w in levels.windows(2) {
            ensure(w[1].is_subset(&w[0]) && w[1] != w[0], || {
                "levels do not shrink".into()
            })?;
        }
        Ok(())
    });

    cx.check("top_rank_domination_is_uniform", || {
        let Some(alpha) = ra.alpha().finite().filter(|&a| a >= 2) else {
            return Ok(());
        };
        let below = ra.level(alpha as usize - 1);
        let top = ra.vertices_of_rank(Rank::Finite(alpha));
        let dominating = top.iter().filter(|&v| g.dominates(v, below)).count();
        ensure(dominating == 0 || dominating == top.len(), || {
            format!(
                "{dominating} of {} rank-{alpha} vertices dominate",
                top.len()
            )
        })
    });

    cx.check("ranks_invariant_under_relabeling", || {
        let n = g.order();
        let perm: Vec<usize> = (0..n).rev().collect();
        let h = g.permuted(&perm).map_err(|e| e.to_string())?;
        let rh = corner_rank(&h);
        for v in g.vertices() {
            ensure(rh.rank(perm[v]) == ra.rank(v), || {
                format!("rank of {} changed", g.label(v))
            })?;
        }
        ensure(rh.class() == ra.class(), || "class changed".into())
    });

    cx.check("capture_time_matches_oracle", || {
        ensure(tbl.game_value() == ra.capture_time(), || {
            format!("oracle {} vs α−r {}", tbl.game_value(), ra.capture_time())
        })
    });

    cx.check("optimal_starts_empty_iff_escape", || {
        ensure(
            tbl.optimal_cop_start().is_empty() == (tbl.game_value() == CaptureTime::Escape),
            || "start set disagrees with the game value".into(),
        )
    });
}

fn projection_checks(cx: &mut Ctx) {
    let (g, pt) = (cx.g, cx.pt);
    let ra = pt.ranking();
    let levels = ra.level_count();

    cx.check("projection_images_nonempty", || {
        for k in 1..=levels {
            for v in g.vertices() {
                ensure(!pt.projection(k, v).is_empty(), || {
                    format!("F_{k}({}) empty", g.label(v))
                })?;
                ensure(pt.projection(k, v).is_subset(ra.level(k)), || {
                    format!("F_{k}({}) leaves level {k}", g.label(v))
                })?;
                if k < levels && ra.level(k).contains(v) {
                    ensure(!pt.step(k, v).unwrap().is_empty(), || {
                        format!("f_{k}({}) empty", g.label(v))
                    })?;
                }
            }
        }
        Ok(())
    });

    cx.check("projection_homomorphism", || {
        let all_adjacent =
            |a: &VertexSet, b: &VertexSet| a.iter().all(|x| b.iter().all(|y| g.adjacent(x, y)));
        for (u, v) in g.edges() {
            for k in 1..=levels {
                ensure(
                    all_adjacent(pt.projection(k, u), pt.projection(k, v)),
                    || format!("F_{k} on {}-{}", g.label(u), g.label(v)),
                )?;
                let here = ra.level(k);
                if k < levels && here.contains(u) && here.contains(v) {
                    ensure(
                        all_adjacent(pt.step(k, u).unwrap(), pt.step(k, v).unwrap()),
                        || format!("f_{k} on {}-{}", g.label(u), g.label(v)),
                    )?;
                }
            }
        }
        Ok(())
    });

    cx.check("projection_neighborhood_containment", || {
        for k in 1..=levels {
            for c in g.vertices() {
                let nk = pt.level_neighborhood(k, c);
                for c1 in pt.projection(k, c).iter() {
                    ensure(nk.is_subset(&pt.level_neighborhood(k, c1)), || {
                        format!("N_{k}[{}] vs N_{k}[{}]", g.label(c), g.label(c1))
                    })?;
                }
            }
        }
        Ok(())
    });

    cx.check("caught_implies_cornered_one_level_down", || {
        for k in 1..=levels {
            for c in g.vertices() {
                for r in g.vertices() {
                    if pt.is_k_caught(c, r, k).unwrap() {
                        ensure(pt.is_k_cornered(c, r, k - 1).unwrap(), || {
                            format!("cop {} robber {} k={k}", g.label(c), g.label(r))
                        })?;
                    }
                }
            }
        }
        Ok(())
    });

    cx.check("cornered_robber_is_caught_next", || {
        for k in 1..=levels {
            for c in g.vertices() {
                for r in g.vertices() {
                    if !pt.is_k_cornered(c, r, k).unwrap() {
                        continue;
                    }
                    for r1 in g.closed_neighborhood(r).iter() {
                        let ok = g
                            .closed_neighborhood(c)
                            .iter()
                            .any(|c1| pt.is_k_caught(c1, r1, k).unwrap());
                        ensure(ok, || {
                            format!(
                                "cop {} robber {}→{} k={k}",
                                g.label(c),
                                g.label(r),
                                g.label(r1)
                            )
                        })?;
                    }
                }
            }
        }
        Ok(())
    });

    cx.check("proj_safe_implies_safe", || {
        for k in 1..=levels {
            for c in g.vertices() {
                for r in g.vertices() {
                    if pt.is_k_proj_safe(c, r, k).unwrap() {
                        ensure(pt.is_k_safe(c, r, k).unwrap(), || {
                            format!("cop {} robber {} k={k}", g.label(c), g.label(r))
                        })?;
                    }
                }
            }
        }
        Ok(())
    });
}

fn strategy_checks(cx: &mut Ctx) {
    let (g, pt, tbl) = (cx.g, cx.pt, cx.tbl);
    let ra = pt.ranking();
    let capt = ra.capture_time();

    cx.check("higher_way_class_never_faster", || {
        let best = higher_way_class_best_case(pt);
        ensure(best == capt, || {
            format!("fastest capture {best}, expected {capt}")
        })
    });

    let Ok(target) = ra.alpha_minus_r() else {
        cx.check("higher_way_survives_optimal_cop", || {
            let bound = 2 * (g.order() * g.order()) as u32 + 10;
            let tr = play(
                g,
                "",
                &mut oracle_strategy(tbl, Role::Cop),
                &mut HigherWay::new(pt),
                bound,
            )
            .map_err(|e| e.to_string())?;
            ensure(
                tr.outcome == Outcome::Escaped { after_bound: bound },
                || format!("{:?}", tr.outcome),
            )
        });
        return;
    };
    let bound = default_move_bound(g, ra.alpha().finite());
    let expected = Outcome::Caught { cop_moves: target };

    cx.check("standard_starts_are_optimal", || {
        let starts = standard_starts(ra).map_err(|e| e.to_string())?;
        ensure(!starts.is_empty(), || "no standard start".into())?;
        ensure(starts.is_subset(tbl.optimal_cop_start()), || {
            format!(
                "standard {} optimal {}",
                label_set(g, &starts),
                label_set(g, tbl.optimal_cop_start())
            )
        })
    });

    for (name, rule) in [
        ("lower_way_class_worst_case", CopRule::LowerWay),
        ("catching_class_worst_case", CopRule::Catching),
    ] {
        cx.check(name, || {
            let worst = cop_class_worst_case(pt, rule).map_err(|e| e.to_string())?;
            ensure(worst == target, || {
                format!("worst case {worst}, expected {target}")
            })
        });
    }

    cx.check("catching_play_is_lower_way", || {
        for p in cop_class_positions(pt, CopRule::Catching).map_err(|e| e.to_string())? {
            let moves = crate::strategy::catching_moves(pt, &p).map_err(|e| e.to_string())?;
            for c1 in moves.admissible.iter() {
                ensure(
                    CopRule::LowerWay
                        .witness(pt, c1, p.robber, p.cop_moves_made + 1)
                        .is_some(),
                    || {
                        format!(
                            "catching move to {} at t={}",
                            g.label(c1),
                            p.cop_moves_made + 1
                        )
                    },
                )?;
            }
        }
        Ok(())
    });

    cx.check("higher_way_start_is_deep", || {
        let alpha = ra.finite_alpha().map_err(|e| e.to_string())? as usize;
        let depth = match ra.class() {
            CopwinClass::R0 if alpha >= 2 => alpha - 1,
            CopwinClass::R1 if alpha > 2 => alpha - 2,
            _ => return Ok(()),
        };
        for c in g.vertices() {
            for r in higher_way_placement(pt, c).admissible.iter() {
                ensure(pt.is_k_proj_safe(c, r, depth).unwrap(), || {
                    format!(
                        "cop {} robber {} not {depth}-proj-safe",
                        g.label(c),
                        g.label(r)
                    )
                })?;
            }
        }
        Ok(())
    });

    for (name, catching) in [
        ("lower_way_beats_optimal_robber", false),
        ("catching_beats_optimal_robber", true),
    ] {
        cx.check(name, || {
            let mut cop = if catching {
                LowerWay::catching(pt)
            } else {
                LowerWay::new(pt)
            };
            let tr = play(
                g,
                "",
                &mut cop,
                &mut oracle_strategy(tbl, Role::Robber),
                bound,
            )
            .map_err(|e| e.to_string())?;
            ensure(tr.outcome == expected, || format!("{:?}", tr.outcome))
        });
    }

    cx.check("higher_way_holds_out_against_optimal_cop", || {
        let tr = play(
            g,
            "",
            &mut oracle_strategy(tbl, Role::Cop),
            &mut HigherWay::new(pt),
            bound,
        )
        .map_err(|e| e.to_string())?;
        ensure(tr.outcome == expected, || format!("{:?}", tr.outcome))
    });
}

fn dismantle_checks(cx: &mut Ctx, seed: u64) {
    let (g, ra) = (cx.g, cx.pt.ranking());
    let copwin = ra.alpha().is_finite();

    cx.check("dismantlable_iff_finite_rank", || {
        let found = find_dismantling(g).map_err(|e| e.to_string())?;
        ensure(found.is_some() == copwin, || {
            format!("search found {found:?}, α = {}", ra.alpha())
        })
    });
    if !copwin {
        return;
    }

    cx.check("rank_order_dismantles", || {
        let ord = dismantling_from_rank(ra).map_err(|e| e.to_string())?;
        ensure(is_dismantling(g, &ord).unwrap(), || format!("{ord:?}"))
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Some(ord) = random_dismantling(g, &mut rng) else {
        cx.check("random_dismantling_exists", || {
            Err("greedy corner removal got stuck".into())
        });
        return;
    };

    cx.check("dismantling_suffixes_dismantle", || {
        for i in 0..ord.len() {
            let keep = VertexSet::from_iter_in(g.order(), ord[i..].iter().copied());
            let h = g.induced_subgraph(&keep).map_err(|e| e.to_string())?;
            let kept = keep.to_vec();
            let sub: Vec<usize> = ord[i..]
                .iter()
                .map(|v| kept.iter().position(|k| k == v).unwrap())
                .collect();
            ensure(is_dismantling(&h, &sub).unwrap(), || {
                format!("suffix from {i} of {ord:?}")
            })?;
        }
        Ok(())
    });

    cx.check("swap_step_preserves_dismantling", || {
        for j in (1..ord.len()).filter(|&j| swap_applies(g, &ord, j)) {
            swap_step(g, &ord, j).map_err(|e| format!("{ord:?} at {j}: {e}"))?;
        }
        Ok(())
    });

    cx.check("rank_one_first_preserves_dismantling", || {
        let out = rank_one_first(ra, &ord).map_err(|e| format!("{ord:?}: {e}"))?;
        let ones = ra.vertices_of_rank(Rank::Finite(1)).len();
        ensure(
            out[..ones].iter().all(|&v| ra.rank(v) == Rank::Finite(1)),
            || format!("{ord:?} became {out:?}"),
        )?;
        ensure(is_dismantling(g, &out).unwrap(), || format!("{out:?}"))
    });
}

fn twin_checks(cx: &mut Ctx) {
    let (g, pt, tbl) = (cx.g, cx.pt, cx.tbl);
    let ra = pt.ranking();
    let report = analyze_twins(ra);

    cx.check("twin_pairs_match_definition", || {
        for (&k, pairs) in &report.k_twin_pairs {
            for &(x, y) in pairs {
                ensure(
                    ra.rank(x) == Rank::Finite(k)
                        && ra.rank(y) == Rank::Finite(k)
                        && g.twins_within(ra.level(k as usize - 1), x, y),
                    || format!("{k}-twins {} {}", g.label(x), g.label(y)),
                )?;
            }
        }
        Ok(())
    });

    if !report.iteratively_twin_free || g.order() > TWIN_FREE_MAX_ORDER {
        return;
    }

    cx.check("twin_free_safe_reply", || {
        match safe_reply_counterexample(pt) {
            None => Ok(()),
            Some((c0, c1, r, k)) => Err(format!(
                "cop {}→{} robber {} k={k}",
                g.label(c0),
                g.label(c1),
                g.label(r)
            )),
        }
    });

    cx.check("twin_free_optimal_starts_are_standard", || {
        let starts = standard_starts(ra).map_err(|e| e.to_string())?;
        ensure(&starts == tbl.optimal_cop_start(), || {
            format!(
                "standard {} optimal {}",
                label_set(g, &starts),
                label_set(g, tbl.optimal_cop_start())
            )
        })
    });

    cx.check("twin_free_optimal_lines_are_lower_way", || {
        let lines = optimal_lines_vs_higher_way(pt, tbl).map_err(|e| e.to_string())?;
        match lines.violation {
            None => Ok(()),
            Some(v) => Err(v.to_json(g).to_string()),
        }
    });
}

fn expectation_check(
    g: &Graph,
    pt: &ProjectionTable,
    tbl: &PositionTable,
    e: &corpus::Expectations,
) -> std::result::Result<(), String> {
    let ra = pt.ranking();
    for &(label, rank) in &e.ranks {
        let v = g.vertex(label).map_err(|e| e.to_string())?;
        ensure(ra.rank(v) == rank, || {
            format!("rank({label}) = {}, expected {rank}", ra.rank(v))
        })?;
    }
    if let Some(a) = e.alpha {
        ensure(ra.alpha() == a, || {
            format!("α = {}, expected {a}", ra.alpha())
        })?;
    }
    if let Some(c) = e.class {
        ensure(ra.class() == c, || {
            format!("class {:?}, expected {c:?}", ra.class())
        })?;
    }
    if let Some(t) = e.capture_time {
        ensure(ra.capture_time() == t && tbl.game_value() == t, || {
            format!(
                "capture time {} / oracle {}, expected {t}",
                ra.capture_time(),
                tbl.game_value()
            )
        })?;
    }
    let twins = analyze_twins(ra);
    for &(k, x, y) in &e.k_twins {
        let (x, y) = (g.vertex(x).unwrap(), g.vertex(y).unwrap());
        let pair = (x.min(y), x.max(y));
        ensure(
            twins
                .k_twin_pairs
                .get(&k)
                .is_some_and(|p| p.contains(&pair)),
            || format!("missing {k}-twins {} {}", g.label(x), g.label(y)),
        )?;
    }
    if let Some(f) = e.iteratively_twin_free {
        ensure(twins.iteratively_twin_free == f, || {
            "twin-free flag differs".into()
        })?;
    }
    let standard = standard_starts(ra).ok();
    for &label in &e.standard_starts_include {
        let v = g.vertex(label).unwrap();
        ensure(standard.as_ref().is_some_and(|s| s.contains(v)), || {
            format!("{label} is not a standard start")
        })?;
    }
    for &label in &e.optimal_not_standard {
        let v = g.vertex(label).unwrap();
        ensure(
            tbl.optimal_cop_start().contains(v)
                && !standard.as_ref().is_some_and(|s| s.contains(v)),
            || format!("{label} is not an optimal non-standard start"),
        )?;
    }
    Ok(())
}

/// Runs the battery over a prepared pool.
pub fn run(pool: &[PoolGraph], seed: u64) -> Report {
    let per_graph: Vec<Vec<Check>> = pool
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let checks = check_graph(
                &p.graph,
                seed.wrapping_add(i as u64),
                p.expectations.as_ref(),
            );
            checks
                .into_iter()
                .map(|(name, r)| (name, r.map_err(|e| format!("{}: {e}", p.id))))
                .collect()
        })
        .collect();
    let mut properties: BTreeMap<&'static str, Tally> = BTreeMap::new();
    for checks in per_graph {
        for (name, r) in checks {
            let t = properties.entry(name).or_default();
            match r {
                Ok(()) => t.passed += 1,
                Err(e) => {
                    t.failed += 1;
                    t.first_counterexample.get_or_insert(e);
                }
            }
        }
    }
    Report {
        graphs: pool.len(),
        properties,
    }
}

/// The full sweep: all labeled graphs up to `max_n`, `samples` random
/// graphs and the figure graphs.
pub fn verify_theorems(max_n: usize, samples: usize, seed: u64) -> Result<Report> {
    Ok(run(&pool(max_n, samples, seed, true)?, seed))
}
