use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use mwe_core::gold::GoldStore;
use mwe_core::pipeline::write_ranked;
use mwe_core::rank::{load_tsv, to_tsv};
use mwe_core::review::ReviewService;
use mwe_core::{evaluate, parse_corpus, Lexicon, NGramIndex, Pipeline, PipelineConfig, StatsScope, TagsetMap, MAX_N};

#[derive(Parser)]
#[command(name = "mwe", version, about = "Multiword expression extraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline and write the ranked list
    Extract {
        #[arg(long)]
        config: PathBuf,
        /// Write every intermediate stage; defaults to `stages/` beside the config
        #[arg(long, num_args = 0..=1, value_name = "DIR")]
        dump_stages: Option<Option<PathBuf>>,
        #[arg(long)]
        stats_scope: Option<StatsScope>,
        /// Ranked list destination; overrides `output` in the config
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Score a ranked list against a gold store
    Eval {
        #[arg(long)]
        ranked: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long, short)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Serve the validation API
    Serve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
    /// Suggest lemmas for a word
    Lemmatize {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[command(flatten)]
        source: LexiconSource,
    },
    /// Build the n-gram index and dump its counts
    Index {
        #[arg(long)]
        dump: PathBuf,
        #[arg(long, conflicts_with = "corpus")]
        config: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, requires = "corpus")]
        tagset: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct LexiconSource {
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

fn extract(
    config: &Path,
    dump: Option<Option<PathBuf>>,
    scope: Option<StatsScope>,
    output: Option<PathBuf>,
) -> Result<()> {
    let mut cfg = PipelineConfig::load(config)?;
    match dump {
        Some(Some(dir)) => cfg.dump_dir = Some(dir),
        Some(None) if cfg.dump_dir.is_none() => {
            cfg.dump_dir = Some(config.parent().unwrap_or(Path::new(".")).join("stages"));
        }
        _ => {}
    }
    if let Some(s) = scope {
        cfg.stats_scope = s;
    }
    if output.is_some() {
        cfg.output = output;
    }
    let top_k = cfg.top_k;
    let pipeline = Pipeline::from_config(cfg)?;
    let out = pipeline.run()?;
    let stderr = &mut std::io::stderr();
    for w in &out.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    for s in &out.stages {
        writeln!(stderr, "{:<14} {:>8} -> {:>8}", s.name, s.before, s.after)?;
    }
    match &pipeline.config.output {
        Some(path) => {
            write_ranked(path, &out.ranked)?;
            writeln!(stderr, "wrote {} candidates to {}", out.ranked.len(), path.display())?;
            let head = out.ranked.iter().take(top_k).cloned().collect::<Vec<_>>();
            print!("{}", to_tsv(&head));
        }
        None => print!("{}", to_tsv(&out.ranked)),
    }
    Ok(())
}

fn eval(ranked: &Path, gold: &Path, k: usize, as_json: bool) -> Result<()> {
    if k == 0 {
        bail!("--k must be positive");
    }
    if !gold.exists() {
        bail!("gold store not found: {}", gold.display());
    }
    let list = load_tsv(ranked)?;
    let store = GoldStore::open(gold)?;
    let report = evaluate(&list, &store, k)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.render());
    }
    Ok(())
}

async fn serve(config: &Path, host: &str, port: u16) -> Result<()> {
    let cfg = PipelineConfig::load(config)?;
    let gold_path = cfg.gold.clone();
    let pipeline = Pipeline::from_config(cfg)?;
    let out = pipeline.run()?;
    let gold = match &gold_path {
        Some(p) => GoldStore::open(p)?,
        None => {
            eprintln!("warning: no `gold` path configured; verdicts are kept in memory only");
            GoldStore::in_memory()
        }
    };
    let summary = out.summary();
    let lexicon = Arc::new(pipeline.resources.lexicon);
    let service = Arc::new(ReviewService::new(out.ranked, summary, lexicon, gold));
    let listener = tokio::net::TcpListener::bind((host, port))
        .await
        .with_context(|| format!("binding {host}:{port}"))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, mwe_cli::router(service)).await?;
    Ok(())
}

fn lemmatize(word: &str, level: usize, source: &LexiconSource) -> Result<()> {
    let lexicon = match (&source.lexicon, &source.config) {
        (Some(p), _) => Lexicon::load(p)?,
        (None, Some(c)) => {
            let cfg = PipelineConfig::load(c)?;
            let p = cfg.lexicon.context("config has no `lexicon`")?;
            Lexicon::load(&p)?
        }
        (None, None) => bail!("pass --lexicon or --config"),
    };
    println!("{}", serde_json::to_string(&lexicon.lemmatize(word, level))?);
    Ok(())
}

fn index(dump: &Path, config: Option<&Path>, corpus: Option<&Path>, tagset: Option<&Path>) -> Result<()> {
    let (corpus_path, tagset, language) = match (config, corpus) {
        (Some(c), _) => {
            let cfg = PipelineConfig::load(c)?;
            let tags = cfg.tagset.as_deref().map(TagsetMap::load).transpose()?;
            (cfg.corpus, tags.unwrap_or_default(), cfg.language)
        }
        (None, Some(p)) => {
            let tags = tagset.map(TagsetMap::load).transpose()?;
            (p.to_path_buf(), tags.unwrap_or_default(), "und".to_string())
        }
        (None, None) => bail!("pass --config or --corpus"),
    };
    let corpus = parse_corpus(&corpus_path, &tagset, &language)?;
    let index = NGramIndex::build(&corpus, MAX_N)?;
    index.dump_to_path(dump)?;
    eprintln!(
        "indexed {} tokens in {} sentences into {}",
        index.total_tokens(),
        index.sentence_count(),
        dump.display()
    );
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Extract {
            config,
            dump_stages,
            stats_scope,
            output,
        } => extract(&config, dump_stages, stats_scope, output),
        Command::Eval { ranked, gold, k, json } => eval(&ranked, &gold, k, json),
        Command::Serve { config, port, host } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(serve(&config, &host, port))
        }
        Command::Lemmatize { word, level, source } => lemmatize(&word, level, &source),
        Command::Index {
            dump,
            config,
            corpus,
            tagset,
        } => index(&dump, config.as_deref(), corpus.as_deref(), tagset.as_deref()),
    }
}
