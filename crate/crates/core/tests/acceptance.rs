//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use copwin_core::battery::{self, PoolGraph};
use copwin_core::corpus;
use copwin_core::dismantle::{
    dismantling_from_rank, find_dismantling, is_dismantling, random_dismantling, rank_one_first,
    swap_applies, swap_step,
};
use copwin_core::engine::{check_condition, default_move_bound, play, Outcome};
use copwin_core::oracle::{oracle_strategy, solve};
use copwin_core::strategy::{
    higher_way_placement, lower_way_moves, standard_starts, Choice, CopRule, HigherWay, LowerWay,
    Position, Role, Strategy,
};
use copwin_core::twinfree::{analyze_twins, optimal_lines_vs_higher_way};
use copwin_core::{
    corner_rank, CaptureTime, CopwinClass, Graph, ProjectionTable, Rank, Result, Vertex, VertexSet,
};

type Verdict = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn check(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_pool() -> Vec<PoolGraph> {
    battery::pool(5, 200, 42, false).expect("pool")
}

fn ranks_of(g: &Graph, ra: &copwin_core::RankAssignment) -> Vec<(String, Rank)> {
    g.vertices()
        .map(|v| (g.label(v).to_string(), ra.rank(v)))
        .collect()
}

fn figure_ranks() -> Verdict {
    let g = corpus::get("fig1").unwrap().graph;
    let ra = corner_rank(&g);
    let f = Rank::Finite;
    let want: Vec<(String, Rank)> = [
        ("a", f(1)),
        ("b", f(2)),
        ("c", f(3)),
        ("d", f(3)),
        ("e", f(3)),
        ("f", f(2)),
        ("g", f(1)),
        ("h", f(1)),
    ]
    .iter()
    .map(|&(l, r)| (l.to_string(), r))
    .collect();
    check(
        ranks_of(&g, &ra) == want,
        format!("fig1 ranks {:?}", ranks_of(&g, &ra)),
    )?;
    check(
        ra.alpha() == f(3)
            && ra.class() == CopwinClass::R1
            && ra.capture_time() == CaptureTime::Moves(2),
        "fig1 α/class/capture time",
    )?;

    let g = corpus::get("fig2").unwrap().graph;
    let ra = corner_rank(&g);
    for v in g.vertices() {
        let want = match g.label(v) {
            "x" => f(1),
            "y" => f(2),
            _ => Rank::Infinite,
        };
        check(ra.rank(v) == want, format!("fig2 rank of {}", g.label(v)))?;
    }
    check(ra.class() == CopwinClass::NotCopWin, "fig2 class")?;
    Ok("fig1 and fig2 ranks exact".into())
}

fn master_formula(pool: &[PoolGraph]) -> Verdict {
    let mut finite = 0;
    for p in pool {
        let ra = corner_rank(&p.graph);
        let tbl = solve(&p.graph);
        check(
            tbl.game_value() == ra.capture_time(),
            format!(
                "{}: oracle {} vs α−r {}",
                p.id,
                tbl.game_value(),
                ra.capture_time()
            ),
        )?;
        check(
            (tbl.game_value() == CaptureTime::Escape) == !ra.alpha().is_finite(),
            format!("{}: escape verdict", p.id),
        )?;
        finite += ra.alpha().is_finite() as usize;
    }
    Ok(format!(
        "{} graphs, {finite} cop-win, zero exceptions",
        pool.len()
    ))
}

fn simulations(pool: &[PoolGraph]) -> Verdict {
    let mut games = 0;
    for p in pool {
        let g = &p.graph;
        let pt = ProjectionTable::new(corner_rank(g));
        let Ok(target) = pt.ranking().alpha_minus_r() else {
            continue;
        };
        let tbl = solve(g);
        let bound = default_move_bound(g, pt.ranking().alpha().finite());
        let want = Outcome::Caught { cop_moves: target };
        for (name, mut cop) in [
            ("lowerway", LowerWay::new(&pt)),
            ("catching", LowerWay::catching(&pt)),
        ] {
            let tr = play(
                g,
                &p.id,
                &mut cop,
                &mut oracle_strategy(&tbl, Role::Robber),
                bound,
            )
            .map_err(|e| format!("{}: {name}: {e}", p.id))?;
            check(
                tr.outcome == want,
                format!("{}: {name} got {:?}", p.id, tr.outcome),
            )?;
        }
        let tr = play(
            g,
            &p.id,
            &mut oracle_strategy(&tbl, Role::Cop),
            &mut HigherWay::new(&pt),
            bound,
        )
        .map_err(|e| format!("{}: higherway: {e}", p.id))?;
        check(
            tr.outcome == want,
            format!("{}: higherway got {:?}", p.id, tr.outcome),
        )?;
        games += 3;
    }
    let g = corpus::get("fig2").unwrap().graph;
    let pt = ProjectionTable::new(corner_rank(&g));
    let tbl = solve(&g);
    let tr = play(
        &g,
        "fig2",
        &mut oracle_strategy(&tbl, Role::Cop),
        &mut HigherWay::new(&pt),
        1000,
    )
    .map_err(|e| e.to_string())?;
    check(
        tr.outcome == Outcome::Escaped { after_bound: 1000 },
        "fig2 robber was caught",
    )?;
    Ok(format!(
        "{games} games at exactly α − r, fig2 survives 1000 cop moves"
    ))
}

/// Plays a fixed opening, then defers to another strategy.
struct Scripted<'a> {
    n: usize,
    placement: Vertex,
    opening: Vec<Vertex>,
    then: Box<dyn Strategy + 'a>,
}

impl Strategy for Scripted<'_> {
    fn name(&self) -> &str {
        self.then.name()
    }
    fn role(&self) -> Role {
        self.then.role()
    }
    fn place(&mut self, _: Option<Vertex>) -> Result<Choice> {
        Ok(Choice::uniform(VertexSet::singleton(
            self.n,
            self.placement,
        )))
    }
    fn respond(&mut self, pos: &Position) -> Result<Choice> {
        if self.opening.is_empty() {
            self.then.respond(pos)
        } else {
            let v = self.opening.remove(0);
            Ok(Choice::uniform(VertexSet::singleton(self.n, v)))
        }
    }
}

fn lower_way_not_catching() -> Verdict {
    let g = corpus::get("fig3").unwrap().graph;
    let pt = ProjectionTable::new(corner_rank(&g));
    let v = |l: &str| g.vertex(l).unwrap();
    let (c1, c2, r1) = (v("c1"), v("c2"), v("r1"));
    check(
        standard_starts(pt.ranking()).unwrap().contains(c1),
        "c1 is not a standard start",
    )?;
    check(
        higher_way_placement(&pt, c1).admissible.contains(r1),
        "r1 is not a Higher Way placement",
    )?;
    let first =
        lower_way_moves(&pt, &Position::new(c1, r1, 0, Role::Cop)).map_err(|e| e.to_string())?;
    check(first.admissible.contains(c2), "c2 is not a Lower Way move")?;

    let mut cop = Scripted {
        n: g.order(),
        placement: c1,
        opening: vec![c2],
        then: Box::new(LowerWay::new(&pt)),
    };
    let mut robber = Scripted {
        n: g.order(),
        placement: r1,
        opening: vec![],
        then: Box::new(HigherWay::new(&pt)),
    };
    let tr = play(&g, "fig3", &mut cop, &mut robber, 100).map_err(|e| e.to_string())?;
    tr.validate(&g).map_err(|e| e.to_string())?;
    check(
        tr.moves[0].from == c1 && tr.moves[0].to == c2,
        "first move is not c1→c2",
    )?;
    check(
        check_condition(&tr, &pt, CopRule::LowerWay),
        "transcript fails LW",
    )?;
    check(
        !check_condition(&tr, &pt, CopRule::Catching),
        "transcript passes C",
    )?;
    Ok(format!("c1→c2 line passes LW, fails C, {:?}", tr.outcome))
}

fn optimal_not_lower_way() -> Verdict {
    let g = corpus::get("fig5").unwrap().graph;
    let ra = corner_rank(&g);
    let tbl = solve(&g);
    let x = g.vertex("x").unwrap();
    check(
        tbl.game_value() == CaptureTime::Moves(5),
        format!("game value {}", tbl.game_value()),
    )?;
    check(
        tbl.optimal_cop_start().contains(x),
        "x is not an optimal start",
    )?;
    check(
        !standard_starts(&ra).unwrap().contains(x),
        "x is a standard start",
    )?;
    Ok("fig5 value 5, x optimal but not standard".into())
}

fn rank_one_start() -> Verdict {
    let g = corpus::get("fig4").unwrap().graph;
    let ra = corner_rank(&g);
    let v = g.vertex("v").unwrap();
    check(
        ra.rank(v) == Rank::Finite(1),
        format!("rank(v) = {}", ra.rank(v)),
    )?;
    check(
        standard_starts(&ra).unwrap().contains(v),
        "v is not standard",
    )?;
    Ok("fig4 v has rank 1 and is standard".into())
}

fn dismantling(pool: &[PoolGraph]) -> Verdict {
    let mut copwin = Vec::new();
    for p in pool {
        let ra = corner_rank(&p.graph);
        let found = find_dismantling(&p.graph).map_err(|e| e.to_string())?;
        check(
            found.is_some() == ra.alpha().is_finite(),
            format!("{}: existence", p.id),
        )?;
        if ra.alpha().is_finite() {
            let ord = dismantling_from_rank(&ra).unwrap();
            check(
                is_dismantling(&p.graph, &ord).unwrap(),
                format!("{}: rank order", p.id),
            )?;
            copwin.push(p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut swaps = 0;
    for case in 0..100 {
        let p = copwin.choose(&mut rng).unwrap();
        let g = &p.graph;
        let ra = corner_rank(g);
        let ord = random_dismantling(g, &mut rng).ok_or(format!("{}: stuck", p.id))?;
        let applicable: Vec<usize> = (1..ord.len())
            .filter(|&j| swap_applies(g, &ord, j))
            .collect();
        if !applicable.is_empty() {
            let j = applicable[rng.gen_range(0..applicable.len())];
            let s = swap_step(g, &ord, j).map_err(|e| format!("case {case}: {e}"))?;
            check(is_dismantling(g, &s).unwrap(), format!("case {case}: swap"))?;
            swaps += 1;
        }
        let out = rank_one_first(&ra, &ord).map_err(|e| format!("case {case}: {e}"))?;
        check(
            is_dismantling(g, &out).unwrap(),
            format!("case {case}: rank-one-first"),
        )?;
    }
    Ok(format!(
        "{} graphs, 100 rearrangement cases ({swaps} with swaps)",
        pool.len()
    ))
}

fn twin_free(pool: &[PoolGraph]) -> Verdict {
    let mut checked = 0;
    for p in pool.iter().filter(|p| p.graph.order() <= 8) {
        let ra = corner_rank(&p.graph);
        if !analyze_twins(&ra).iteratively_twin_free {
            continue;
        }
        let starts = standard_starts(&ra).unwrap();
        let pt = ProjectionTable::new(ra);
        let tbl = solve(&p.graph);
        check(
            &starts == tbl.optimal_cop_start(),
            format!("{}: start sets differ", p.id),
        )?;
        let lines = optimal_lines_vs_higher_way(&pt, &tbl).map_err(|e| e.to_string())?;
        check(
            lines.violation.is_none(),
            format!("{}: optimal line breaks LW", p.id),
        )?;
        checked += 1;
    }
    let g = corpus::get("fig5").unwrap().graph;
    let report = analyze_twins(&corner_rank(&g));
    let pair = (g.vertex("v4").unwrap(), g.vertex("v6").unwrap());
    check(
        report
            .k_twin_pairs
            .get(&4)
            .is_some_and(|p| p.contains(&pair)),
        "fig5 4-twins missing",
    )?;
    check(!report.iteratively_twin_free, "fig5 reported twin-free")?;
    Ok(format!(
        "{checked} twin-free cop-win graphs, fig5 has 4-twins (v4,v6)"
    ))
}

fn projection_battery(pool: &[PoolGraph]) -> Verdict {
    let report = battery::run(pool, 0);
    let names = [
        "projection_homomorphism",
        "projection_neighborhood_containment",
        "caught_implies_cornered_one_level_down",
        "cornered_robber_is_caught_next",
        "projection_images_nonempty",
    ];
    for name in names {
        let t = &report.properties[name];
        check(
            t.failed == 0 && t.passed as usize == pool.len(),
            format!(
                "{name}: {} failed, first {:?}",
                t.failed, t.first_counterexample
            ),
        )?;
    }
    Ok(format!(
        "5 properties on {} graphs, zero violations",
        pool.len()
    ))
}

fn main() -> ExitCode {
    let pool = criterion_pool();
    let criteria: Vec<Criterion> = vec![
        ("figure ranks", Box::new(figure_ranks)),
        (
            "capture time equals oracle value",
            Box::new(|| master_formula(&pool)),
        ),
        (
            "strategies optimal in simulation",
            Box::new(|| simulations(&pool)),
        ),
        (
            "lower way without catching",
            Box::new(lower_way_not_catching),
        ),
        (
            "optimal start outside lower way",
            Box::new(optimal_not_lower_way),
        ),
        ("standard start of rank one", Box::new(rank_one_start)),
        ("dismantling equivalence", Box::new(|| dismantling(&pool))),
        (
            "twin-free start and line checks",
            Box::new(|| twin_free(&pool)),
        ),
        (
            "projection properties",
            Box::new(|| projection_battery(&pool)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let ms = start.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why}; {ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
