//! Built-in graphs: the five figure graphs, classic families, exhaustive
//! enumeration of small labeled graphs, and seeded Erdős–Rényi samples.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ranking::{CaptureTime, CopwinClass, Rank};

/// Facts a named graph is known to satisfy.
#[derive(Clone, Debug, Default)]
pub struct Expectations {
    pub ranks: Vec<(&'static str, Rank)>,
    pub alpha: Option<Rank>,
    pub class: Option<CopwinClass>,
    pub capture_time: Option<CaptureTime>,
    /// `(k, x, y)`: `x` and `y` are `k`-twins.
    pub k_twins: Vec<(u32, &'static str, &'static str)>,
    pub iteratively_twin_free: Option<bool>,
    pub standard_starts_include: Vec<&'static str>,
    /// Optimal cop placements that are not standard.
    pub optimal_not_standard: Vec<&'static str>,
}

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
    pub expectations: Option<Expectations>,
}

/// SHA-256 over the text form of the five figure graphs, in order.
pub const FIGURES_SHA256: &str = "af043e8968bb5b027cf9e72434f4a4596863cab93e6c42738fa8c3677562eb17";

pub const FIGURES: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

const FIG1_LABELS: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h"];
const FIG1_EDGES: &[(&str, &str)] = &[
    ("a", "b"),
    ("b", "e"),
    ("b", "c"),
    ("b", "d"),
    ("e", "c"),
    ("c", "d"),
    ("e", "d"),
    ("e", "f"),
    ("c", "f"),
    ("d", "f"),
    ("f", "h"),
    ("f", "g"),
    ("h", "g"),
];

const FIG2_LABELS: &[&str] = &["n1", "n2", "n3", "n4", "n5", "y", "x"];
const FIG2_EDGES: &[(&str, &str)] = &[
    ("n1", "n2"),
    ("n2", "n3"),
    ("n3", "n4"),
    ("n4", "n5"),
    ("n5", "n1"),
    ("n1", "y"),
    ("y", "x"),
];

// Figure node ids 1..=26; labeled nodes keep their figure names.
const FIG3_LABELS: &[&str] = &[
    "c1", "n2", "n3", "n4", "n5", "n6", "n7", "c2", "c3", "n10", "n11", "n12", "c4", "r1", "r2",
    "r3", "r4", "r5", "n19", "n20", "n21", "n22", "n23", "n24", "n25", "n26",
];
const FIG3_EDGES: &[(u8, u8)] = &[
    (1, 2),
    (1, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (6, 7),
    (1, 8),
    (8, 9),
    (9, 10),
    (10, 11),
    (11, 12),
    (9, 13),
    (8, 2),
    (8, 14),
    (9, 14),
    (9, 15),
    (2, 14),
    (14, 15),
    (15, 16),
    (16, 17),
    (17, 18),
    (13, 15),
    (13, 16),
    (15, 19),
    (19, 20),
    (20, 21),
    (2, 22),
    (22, 23),
    (23, 24),
    (24, 25),
    (25, 26),
];
const FIG3_RANKS: [u32; 26] = [
    6, 6, 5, 4, 3, 2, 1, 5, 4, 3, 2, 1, 1, 5, 4, 3, 2, 1, 3, 2, 1, 5, 4, 3, 2, 1,
];

// v: the rank-one start; t: triangle; p: pendant-path middles; q: path ends.
const FIG4_LABELS: &[&str] = &["v", "t1", "t2", "t3", "p1", "p2", "p3", "q1", "q2", "q3"];
const FIG4_EDGES: &[(&str, &str)] = &[
    ("v", "t1"),
    ("v", "t2"),
    ("v", "t3"),
    ("t1", "t2"),
    ("t1", "t3"),
    ("t2", "t3"),
    ("p1", "t1"),
    ("p2", "t2"),
    ("p3", "t3"),
    ("p1", "q1"),
    ("p2", "q2"),
    ("p3", "q3"),
];

const FIG5_LABELS: &[&str] = &[
    "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10", "v11", "v12", "v13", "v14", "v15",
    "v16", "v17", "v18", "x",
];
const FIG5_EDGES: &[(&str, &str)] = &[
    ("v1", "v2"),
    ("v1", "v3"),
    ("v1", "v5"),
    ("v1", "v13"),
    ("v1", "v14"),
    ("v2", "v6"),
    ("v2", "v4"),
    ("v2", "v13"),
    ("v2", "v14"),
    ("v3", "v5"),
    ("v3", "v7"),
    ("v3", "v13"),
    ("v5", "v7"),
    ("v5", "v11"),
    ("v6", "v4"),
    ("v6", "v8"),
    ("v6", "v12"),
    ("v4", "v8"),
    ("v4", "v14"),
    ("v7", "v9"),
    ("v8", "v10"),
    ("v9", "v15"),
    ("v11", "v17"),
    ("v13", "v14"),
    ("v13", "x"),
    ("v14", "x"),
    ("v12", "v18"),
    ("v10", "v16"),
];
const FIG5_RANKS: [u32; 19] = [5, 5, 4, 4, 4, 4, 3, 3, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1];

fn finite(labels: &'static [&'static str], ranks: &[u32]) -> Vec<(&'static str, Rank)> {
    labels
        .iter()
        .copied()
        .zip(ranks.iter().map(|&k| Rank::Finite(k)))
        .collect()
}

fn fig1() -> NamedGraph {
    NamedGraph {
        name: "fig1".into(),
        graph: Graph::from_edges(FIG1_LABELS, FIG1_EDGES).expect("fig1"),
        expectations: Some(Expectations {
            ranks: finite(FIG1_LABELS, &[1, 2, 3, 3, 3, 2, 1, 1]),
            alpha: Some(Rank::Finite(3)),
            class: Some(CopwinClass::R1),
            capture_time: Some(CaptureTime::Moves(2)),
            k_twins: vec![(3, "c", "d"), (3, "c", "e"), (3, "d", "e")],
            iteratively_twin_free: Some(false),
            standard_starts_include: vec!["c", "d", "e"],
            optimal_not_standard: vec![],
        }),
    }
}

fn fig2() -> NamedGraph {
    let mut ranks = vec![("x", Rank::Finite(1)), ("y", Rank::Finite(2))];
    ranks.extend(FIG2_LABELS[..5].iter().map(|&l| (l, Rank::Infinite)));
    NamedGraph {
        name: "fig2".into(),
        graph: Graph::from_edges(FIG2_LABELS, FIG2_EDGES).expect("fig2"),
        expectations: Some(Expectations {
            ranks,
            alpha: Some(Rank::Infinite),
            class: Some(CopwinClass::NotCopWin),
            capture_time: Some(CaptureTime::Escape),
            iteratively_twin_free: Some(false),
            ..Default::default()
        }),
    }
}

fn fig3() -> NamedGraph {
    let edges: Vec<(&str, &str)> = FIG3_EDGES
        .iter()
        .map(|&(a, b)| (FIG3_LABELS[a as usize - 1], FIG3_LABELS[b as usize - 1]))
        .collect();
    NamedGraph {
        name: "fig3".into(),
        graph: Graph::from_edges(FIG3_LABELS, &edges).expect("fig3"),
        expectations: Some(Expectations {
            ranks: finite(FIG3_LABELS, &FIG3_RANKS),
            alpha: Some(Rank::Finite(6)),
            class: Some(CopwinClass::R0),
            capture_time: Some(CaptureTime::Moves(6)),
            standard_starts_include: vec!["c1"],
            ..Default::default()
        }),
    }
}

fn fig4() -> NamedGraph {
    NamedGraph {
        name: "fig4".into(),
        graph: Graph::from_edges(FIG4_LABELS, FIG4_EDGES).expect("fig4"),
        expectations: Some(Expectations {
            ranks: vec![("v", Rank::Finite(1))],
            standard_starts_include: vec!["v"],
            ..Default::default()
        }),
    }
}

fn fig5() -> NamedGraph {
    NamedGraph {
        name: "fig5".into(),
        graph: Graph::from_edges(FIG5_LABELS, FIG5_EDGES).expect("fig5"),
        expectations: Some(Expectations {
            ranks: finite(FIG5_LABELS, &FIG5_RANKS),
            alpha: Some(Rank::Finite(5)),
            class: Some(CopwinClass::R0),
            capture_time: Some(CaptureTime::Moves(5)),
            k_twins: vec![(4, "v4", "v6")],
            iteratively_twin_free: Some(false),
            standard_starts_include: vec![],
            optimal_not_standard: vec!["x"],
        }),
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_index_edges(numbered(n), &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Argument(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_index_edges(numbered(n), &edges)
}

pub fn clique(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::from_index_edges(numbered(n), &edges)
}

/// Looks up a named graph. Figures are also available under `lowmid`
/// (fig3), `onestart` (fig4) and `nlw` (fig5); families are `path_<n>`,
/// `cycle_<n>` and `clique_<n>`.
pub fn get(name: &str) -> Result<NamedGraph> {
    let family = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|rest| rest.parse::<usize>().ok())
    };
    let plain = |graph: Graph| NamedGraph {
        name: name.to_string(),
        graph,
        expectations: None,
    };
    match name {
        "fig1" => Ok(fig1()),
        "fig2" => Ok(fig2()),
        "fig3" | "lowmid" => Ok(fig3()),
        "fig4" | "onestart" => Ok(fig4()),
        "fig5" | "nlw" => Ok(fig5()),
        _ => {
            if let Some(n) = family("path_") {
                Ok(plain(path(n)?))
            } else if let Some(n) = family("cycle_") {
                Ok(plain(cycle(n)?))
            } else if let Some(n) = family("clique_") {
                Ok(plain(clique(n)?))
            } else {
                Err(Error::UnknownGraph(name.to_string()))
            }
        }
    }
}

pub fn list() -> Vec<String> {
    let mut names: Vec<String> = FIGURES.iter().map(|s| s.to_string()).collect();
    names.extend(
        [
            "lowmid",
            "onestart",
            "nlw",
            "path_<n>",
            "cycle_<n>",
            "clique_<n>",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    names
}

pub fn figures_checksum() -> String {
    let mut h = Sha256::new();
    for name in FIGURES {
        let g = get(name).expect("figure").graph;
        h.update(name.as_bytes());
        h.update(b"\n");
        h.update(g.to_text().as_bytes());
    }
    hex::encode(h.finalize())
}

/// Every labeled simple graph on `n` vertices (`1 ≤ n ≤ 5`), labels `a`, `b`, ...
/// Graph `i` contains the `j`-th pair of `(0,1), (0,2), …, (n-2,n-1)` iff bit `j` of `i` is set.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=5).contains(&n) {
        return Err(Error::Argument(format!(
            "exhaustive enumeration supports 1 ≤ n ≤ 5, got {n}"
        )));
    }
    let labels: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_index_edges(labels.clone(), &edges)
        })
        .collect()
}

/// `count` Erdős–Rényi graphs with `n` uniform in `n_range` and the edge
/// probability drawn per graph from {0.3, 0.5, 0.7}. Replayable from `seed`.
pub fn random_graphs(
    n_range: RangeInclusive<usize>,
    count: usize,
    seed: u64,
) -> Result<Vec<Graph>> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo == 0 || hi > 9 || lo > hi {
        return Err(Error::Argument(format!(
            "random graphs support 1 ≤ n ≤ 9, got {lo}..={hi}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ps = [0.3, 0.5, 0.7];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = rng.gen_range(lo..=hi);
        let p = *ps.choose(&mut rng).expect("non-empty");
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        out.push(Graph::from_index_edges(numbered(n), &edges)?);
    }
    Ok(out)
}
