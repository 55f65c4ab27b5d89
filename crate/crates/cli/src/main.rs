mod cli;

use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::Parser;
use log::{info, warn};
use serde_json::{json, Value};

use copwin_core::dismantle::{dismantling_from_rank, is_dismantling};
use copwin_core::engine::{default_move_bound, play};
use copwin_core::oracle::solve;
use copwin_core::strategy::{by_name, Role};
use copwin_core::twinfree::{analyze_twins, verify_twinfree};
use copwin_core::{battery, corner_rank, corpus, CaptureTime, Error, Graph, ProjectionTable, Rank};

use cli::{Cli, Command, CorpusAction, Format};

/// Exit 1 for domain errors, 2 for usage and parse errors.
enum Failure {
    Domain(anyhow::Error),
    Usage(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownGraph(_) => Failure::Usage(e.into()),
            _ => Failure::Domain(e.into()),
        }
    }
}

type Outcome = Result<(Value, u8), Failure>;

fn load(arg: &str) -> Result<(String, Graph), Failure> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        return Ok((name.to_string(), corpus::get(name)?.graph));
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")
            .map_err(Failure::Usage)?;
        s
    } else {
        std::fs::read_to_string(arg)
            .with_context(|| format!("reading {arg}"))
            .map_err(Failure::Usage)?
    };
    let g = Graph::parse(&text)
        .map_err(|e| Failure::Usage(anyhow::Error::from(e).context(arg.to_string())))?;
    Ok((arg.to_string(), g))
}

fn threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("COPWIN_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| {
        Failure::Usage(anyhow!(
            "COPWIN_THREADS must be a non-negative integer, got `{v}`"
        ))
    })?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.into()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    threads()?;
    match cli.command {
        Command::Rank { graph } => {
            let (_, g) = load(&graph)?;
            Ok((corner_rank(&g).report(), 0))
        }
        Command::Classify { graph } => {
            let (_, g) = load(&graph)?;
            let ra = corner_rank(&g);
            Ok((json!({"alpha": ra.alpha(), "class": ra.class()}), 0))
        }
        Command::CaptureTime {
            graph,
            allow_escape,
        } => {
            let (_, g) = load(&graph)?;
            let capt = corner_rank(&g).capture_time();
            let code = if capt == CaptureTime::Escape && !allow_escape {
                warn!("the robber escapes on this graph; pass --allow-escape to accept");
                1
            } else {
                0
            };
            Ok((json!({"capture_time": capt}), code))
        }
        Command::Project { graph, k, vertex } => {
            let (_, g) = load(&graph)?;
            let k = Rank::parse(&k).ok_or_else(|| {
                Failure::Usage(anyhow!(
                    "level must be a positive integer or `inf`, got `{k}`"
                ))
            })?;
            let v = g.vertex(&vertex)?;
            let pt = ProjectionTable::new(corner_rank(&g));
            let image = pt.project(k, &copwin_core::VertexSet::singleton(g.order(), v))?;
            Ok((json!(g.labels_of(&image)), 0))
        }
        Command::Simulate {
            graph,
            cop,
            robber,
            seed,
            bound,
        } => {
            let (id, g) = load(&graph)?;
            let pt = ProjectionTable::new(corner_rank(&g));
            let tbl = solve(&g);
            let mut c = by_name(&cop, Role::Cop, &pt, &tbl, seed)?;
            let mut r = by_name(&robber, Role::Robber, &pt, &tbl, seed.wrapping_add(1))?;
            let bound =
                bound.unwrap_or_else(|| default_move_bound(&g, pt.ranking().alpha().finite()));
            info!("playing {cop} against {robber} on {id}, bound {bound}");
            let tr = play(&g, &id, c.as_mut(), r.as_mut(), bound)?;
            Ok((tr.to_json(&g, Some(&pt)), 0))
        }
        Command::Oracle { graph, full } => {
            let (_, g) = load(&graph)?;
            Ok((solve(&g).report(full), 0))
        }
        Command::Dismantle {
            graph,
            verify,
            order,
        } => {
            let (_, g) = load(&graph)?;
            if verify {
                let labels = order.unwrap_or_default();
                let ord = labels
                    .iter()
                    .map(|l| g.vertex(l))
                    .collect::<Result<Vec<_>, _>>()?;
                let ok = is_dismantling(&g, &ord)?;
                return Ok((json!({"ordering": labels, "dismantling": ok}), 0));
            }
            let out = match dismantling_from_rank(&corner_rank(&g)) {
                Ok(ord) => {
                    let labels: Vec<&str> = ord.iter().map(|&v| g.label(v)).collect();
                    json!({"ordering": labels})
                }
                Err(Error::NotCopWin) => json!({"ordering": "none"}),
                Err(e) => return Err(e.into()),
            };
            Ok((out, 0))
        }
        Command::Twins { graph, verify } => {
            let (_, g) = load(&graph)?;
            let mut out = analyze_twins(&corner_rank(&g)).to_json(&g);
            if verify {
                out["verification"] = verify_twinfree(&g)?.to_json(&g);
            }
            Ok((out, 0))
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => Ok((json!(corpus::list()), 0)),
            CorpusAction::Emit { name, output } => {
                let text = corpus::get(&name)?.graph.to_text();
                match output {
                    Some(path) => {
                        std::fs::write(&path, text)
                            .with_context(|| format!("writing {}", path.display()))
                            .map_err(Failure::Domain)?;
                        Ok((json!({"written": path}), 0))
                    }
                    None => {
                        print!("{text}");
                        Ok((Value::Null, 0))
                    }
                }
            }
        },
        Command::VerifyTheorems {
            max_n,
            samples,
            seed,
        } => {
            if max_n > 5 {
                return Err(Failure::Usage(anyhow!("--max-n must be at most 5")));
            }
            let report = battery::verify_theorems(max_n, samples, seed)?;
            info!("checked {} graphs", report.graphs);
            for name in report.failures() {
                warn!("property {name} failed");
            }
            let mut out = report.to_json();
            out["max_n"] = json!(max_n);
            out["samples"] = json!(samples);
            out["seed"] = json!(seed);
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok((value, code)) => {
            if !value.is_null() {
                let text = match format {
                    Format::Json => value.to_string(),
                    Format::Pretty => serde_json::to_string_pretty(&value).expect("serializable"),
                };
                println!("{text}");
            }
            ExitCode::from(code)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
