use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mono2rest::{
    cmd_cluster, cmd_evaluate, cmd_extract, cmd_pipeline, cmd_restify, CliError, PipelineConfig,
    CLUSTERING_FILE, GRAPH_FILE,
};
use mono2rest_core::clustering::SemSimNormalization;
use mono2rest_core::semantics::EmbeddingMode;

/// Decomposes a Java monolith's call graph into microservice candidates and
/// derives a REST API for each.
#[derive(Debug, Parser)]
#[command(name = "mono2rest", version)]
struct Cli {
    /// TOML file with pipeline settings; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Random seed for the optimizer.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and refine the call graph.
    Extract(#[command(flatten)] InputArgs),
    /// Partition methods into k clusters.
    Cluster {
        /// Defaults to graph.json in the output directory.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        inputs: InputArgs,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Derive URI trees and OpenAPI documents per cluster.
    Restify {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        clustering: Option<PathBuf>,
        #[command(flatten)]
        inputs: InputArgs,
        #[command(flatten)]
        restify: RestifyArgs,
    },
    /// Match clusters against a reference decomposition.
    Evaluate {
        #[arg(long)]
        clustering: Option<PathBuf>,
        #[command(flatten)]
        inputs: InputArgs,
        #[command(flatten)]
        evaluate: EvaluateArgs,
    },
    /// Run every stage.
    Pipeline {
        #[command(flatten)]
        inputs: InputArgs,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[command(flatten)]
        restify: RestifyArgs,
        #[command(flatten)]
        evaluate: EvaluateArgs,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// java-callgraph output.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Concatenated javap listings.
    #[arg(long)]
    signatures: Option<PathBuf>,
    /// Application package prefix; repeatable.
    #[arg(long = "app-prefix")]
    app_prefixes: Vec<String>,
    #[arg(long)]
    embeddings: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(EmbeddingMode))]
    embedding_mode: Option<EmbeddingMode>,
    /// Use the built-in trigram embedder even if an embeddings file is set.
    #[arg(long)]
    fallback_embedder: bool,
    #[arg(long)]
    classifications: Option<PathBuf>,
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OptimizerArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    generations: Option<usize>,
    #[arg(long)]
    population: Option<usize>,
    /// Divide semantic similarity by the pair count instead of the cluster size.
    #[arg(long)]
    semsim_pair_normalized: bool,
}

#[derive(Debug, Args)]
struct RestifyArgs {
    /// Cosine threshold for merging class segments.
    #[arg(long)]
    group_threshold: Option<f64>,
    /// Also expose public methods nothing in the application calls.
    #[arg(long)]
    expose_roots: bool,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Maximize total score instead of matching greedily.
    #[arg(long)]
    optimal_match: bool,
}

impl InputArgs {
    fn apply(self, cfg: &mut PipelineConfig) {
        let set = |slot: &mut Option<PathBuf>, v: Option<PathBuf>| {
            if v.is_some() {
                *slot = v;
            }
        };
        set(&mut cfg.edges, self.edges);
        set(&mut cfg.signatures, self.signatures);
        set(&mut cfg.embeddings, self.embeddings);
        set(&mut cfg.classifications, self.classifications);
        set(&mut cfg.reference, self.reference);
        if !self.app_prefixes.is_empty() {
            cfg.app_prefixes = self.app_prefixes;
        }
        if let Some(mode) = self.embedding_mode {
            cfg.embedding_mode = mode;
        }
        cfg.fallback_embedder |= self.fallback_embedder;
    }
}

impl OptimizerArgs {
    fn apply(self, cfg: &mut PipelineConfig) {
        let o = &mut cfg.optimizer;
        o.k = self.k.unwrap_or(o.k);
        o.generations = self.generations.unwrap_or(o.generations);
        o.population_size = self.population.unwrap_or(o.population_size);
        if self.semsim_pair_normalized {
            o.semsim_normalization = SemSimNormalization::PairCount;
        }
    }
}

impl RestifyArgs {
    fn apply(self, cfg: &mut PipelineConfig) {
        cfg.group_threshold = self.group_threshold.unwrap_or(cfg.group_threshold);
        cfg.expose_roots |= self.expose_roots;
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => PipelineConfig::from_toml_file(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(dir) = cli.out_dir {
        cfg.out_dir = dir;
    }
    if let Some(seed) = cli.seed {
        cfg.optimizer.rng_seed = seed;
    }
    let default_graph = |cfg: &PipelineConfig| cfg.out_dir.join(GRAPH_FILE);
    let default_clustering = |cfg: &PipelineConfig| cfg.out_dir.join(CLUSTERING_FILE);
    let written = match cli.command {
        Command::Extract(inputs) => {
            inputs.apply(&mut cfg);
            cmd_extract(&cfg)?
        }
        Command::Cluster {
            graph,
            inputs,
            optimizer,
        } => {
            inputs.apply(&mut cfg);
            optimizer.apply(&mut cfg);
            cmd_cluster(&cfg, &graph.unwrap_or_else(|| default_graph(&cfg)))?
        }
        Command::Restify {
            graph,
            clustering,
            inputs,
            restify,
        } => {
            inputs.apply(&mut cfg);
            restify.apply(&mut cfg);
            let graph = graph.unwrap_or_else(|| default_graph(&cfg));
            cmd_restify(
                &cfg,
                &graph,
                &clustering.unwrap_or_else(|| default_clustering(&cfg)),
            )?
        }
        Command::Evaluate {
            clustering,
            inputs,
            evaluate,
        } => {
            inputs.apply(&mut cfg);
            cfg.optimal_match |= evaluate.optimal_match;
            cmd_evaluate(
                &cfg,
                &clustering.unwrap_or_else(|| default_clustering(&cfg)),
            )?
        }
        Command::Pipeline {
            inputs,
            optimizer,
            restify,
            evaluate,
        } => {
            inputs.apply(&mut cfg);
            optimizer.apply(&mut cfg);
            restify.apply(&mut cfg);
            cfg.optimal_match |= evaluate.optimal_match;
            cmd_pipeline(&cfg)?
        }
    };
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MONO2REST_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
