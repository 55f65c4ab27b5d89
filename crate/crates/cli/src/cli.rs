use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "copwin")]
#[command(about = "Corner ranking, capture time and strategies for cops and robber")]
#[command(version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output style
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

/// A graph file, `-` for stdin, or `corpus:<name>` for a built-in graph.
pub type GraphArg = String;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Corner rank of every vertex, with α, class and capture time
    Rank { graph: GraphArg },

    /// Corner rank α and cop-win class
    Classify { graph: GraphArg },

    /// Capture time α − r (exit 1 on escape unless --allow-escape)
    CaptureTime {
        graph: GraphArg,

        #[arg(long)]
        allow_escape: bool,
    },

    /// Projection F_K of a vertex, as a list of labels
    Project {
        graph: GraphArg,

        /// Level: a positive integer or `inf`
        #[arg(long)]
        k: String,

        #[arg(long)]
        vertex: String,
    },

    /// Play one game and print the transcript
    Simulate {
        graph: GraphArg,

        /// lowerway, catching, oracle, still or randomseeded
        #[arg(long, default_value = "lowerway")]
        cop: String,

        /// higherway, oracle, still or randomseeded
        #[arg(long, default_value = "higherway")]
        robber: String,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Cop moves before the game is declared escaped (default 2n² + α)
        #[arg(long)]
        bound: Option<u32>,
    },

    /// Solve the game exactly
    Oracle {
        graph: GraphArg,

        /// Include the value of every position
        #[arg(long)]
        full: bool,
    },

    /// Find a dismantling ordering, or check one with --verify
    Dismantle {
        graph: GraphArg,

        #[arg(long, requires = "order")]
        verify: bool,

        /// Comma-separated labels
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },

    /// Twins that survive the ranking
    Twins {
        graph: GraphArg,

        /// Also check optimal starts and optimal lines (twin-free cop-win graphs only)
        #[arg(long)]
        verify: bool,
    },

    /// Built-in graphs
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },

    /// Run the property battery over small graphs, random graphs and the figures
    VerifyTheorems {
        /// Enumerate every labeled graph up to this order (at most 5)
        #[arg(long, default_value_t = 4)]
        max_n: usize,

        /// Random graphs on 6 to 9 vertices
        #[arg(long, default_value_t = 0)]
        samples: usize,

        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// Names of the built-in graphs
    List,

    /// Write a built-in graph in the text format
    Emit {
        name: String,

        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}
