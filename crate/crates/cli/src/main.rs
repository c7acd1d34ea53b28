use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use errprompt::analytics::{render_grid, GroupBy, HumanScores, PointAggregation};
use errprompt::augmenters::CatalogSet;
use errprompt::gateway::{Backend, Gateway, MockBackend, OpenAiBackend, ResponseCache, SidecarClient};
use errprompt::intensity::{EmbeddingProvider, SimilarityCache, SimilarityMeasure};
use errprompt::orchestrator::{
    analyze_qe, analyze_translation, prepare_prompts, run_qe_experiment, run_translation_experiment,
    BackendKind, ExperimentConfig, Services,
};
use errprompt::prompts::{PromptCatalog, Task};

const HTTP_TIMEOUT: Duration = Duration::from_secs(120);

/// Error-augmented prompts for LLM translation and QE robustness studies.
#[derive(Parser, Debug)]
#[command(name = "errprompt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit augmented prompt sets with similarities and buckets as JSONL
    Augment {
        #[arg(long)]
        config: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show bucket bounds and sizes per base prompt
    Buckets {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a translation or QE experiment
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the backend named in the config
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        /// Override the response cache path
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Write correlation, on-target, length and QE reports
    Analyze {
        /// Experiment config; supplies the records path and task
        #[arg(long, required_unless_present = "records")]
        config: Option<PathBuf>,
        /// Records file (instead of --config)
        #[arg(long, requires = "task")]
        records: Option<PathBuf>,
        #[arg(long, value_enum)]
        task: Option<TaskArg>,
        /// Report directory
        #[arg(long, default_value = "reports")]
        out: PathBuf,
        /// Human scores CSV for QE meta-evaluation
        #[arg(long)]
        human: Option<PathBuf>,
        /// Correlate per record instead of per parametrization
        #[arg(long)]
        per_record: bool,
    },
    /// Check a config, the prompt catalog and the variant catalogs
    Validate {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Live,
    Mock,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TaskArg {
    Translate,
    Qe,
}

fn load_config(path: &Path) -> Result<ExperimentConfig> {
    ExperimentConfig::load(path).with_context(|| format!("loading {}", path.display()))
}

/// Sidecar from the environment, dropped with a warning when unreachable
/// unless the config depends on it.
fn sidecar(config: &ExperimentConfig) -> Result<Option<SidecarClient>> {
    let needed = config.comet || config.buckets.measure == SimilarityMeasure::SemanticInnerProduct;
    match SidecarClient::from_env(HTTP_TIMEOUT)? {
        Some(client) if client.healthy() => Ok(Some(client)),
        Some(_) if needed => bail!("scoring sidecar is configured but not healthy"),
        Some(_) => {
            log::warn!("scoring sidecar unreachable; using surface similarity and chrF only");
            Ok(None)
        }
        None => Ok(None),
    }
}

fn augment(config: &Path, out: Option<&Path>) -> Result<()> {
    let config = load_config(config)?;
    config.validate()?;
    let sidecar = sidecar(&config)?;
    let cache = SimilarityCache::open(&config.paths.similarity_cache)?;
    let embedder = sidecar.as_ref().map(|s| s as &dyn EmbeddingProvider);
    let prepared = prepare_prompts(&config, &cache, embedder)?;
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    for prep in &prepared {
        for p in &prep.prompts {
            writeln!(sink, "{}", serde_json::to_string(p)?)?;
        }
    }
    sink.flush()?;
    Ok(())
}

fn buckets(config: &Path) -> Result<()> {
    let config = load_config(config)?;
    config.validate()?;
    let sidecar = sidecar(&config)?;
    let cache = SimilarityCache::open(&config.paths.similarity_cache)?;
    let embedder = sidecar.as_ref().map(|s| s as &dyn EmbeddingProvider);
    for prep in prepare_prompts(&config, &cache, embedder)? {
        println!("{} ({} prompts)", prep.base.id, prep.prompts.len());
        let Some(b) = &prep.bucketing else {
            println!("  no augmented prompts");
            continue;
        };
        println!("  measure: {}", b.measure);
        for (i, (lo, hi)) in b.bounds.iter().enumerate() {
            let n = prep.prompts.iter().filter(|p| p.bucket_index == Some(i)).count();
            let open = if i == 0 { '[' } else { '(' };
            println!("  bucket {i}: {open}{lo:.3}, {hi:.3}]  {n} prompts");
        }
    }
    Ok(())
}

fn run(config: &Path, backend: Option<BackendArg>, cache: Option<PathBuf>) -> Result<()> {
    let mut config = load_config(config)?;
    if let Some(b) = backend {
        config.backend = match b {
            BackendArg::Live => BackendKind::Live,
            BackendArg::Mock => BackendKind::Mock,
        };
    }
    if let Some(c) = cache {
        config.paths.cache = c;
    }
    config.validate()?;
    let backend: Box<dyn Backend> = match config.backend {
        BackendKind::Live => Box::new(OpenAiBackend::from_env(HTTP_TIMEOUT)?),
        BackendKind::Mock => Box::new(MockBackend::echo()),
    };
    let gateway = Gateway::new(backend, ResponseCache::open(&config.paths.cache)?, config.max_in_flight);
    let sidecar = sidecar(&config)?.map(|s| s.with_limiter(gateway.limiter()));
    let services = Services {
        gateway: &gateway,
        sidecar: sidecar.as_ref(),
    };
    let summary = match config.task {
        Task::Translate => run_translation_experiment(&config, services)?,
        Task::Qe => run_qe_experiment(&config, services)?,
    };
    println!(
        "{} planned, {} already done, {} written, {} failed, {} backend calls",
        summary.planned,
        summary.skipped,
        summary.written,
        summary.failed,
        gateway.backend_calls()
    );
    println!("records: {}", summary.records_path.display());
    if summary.failed > 0 {
        println!("failures: {}", summary.errors_path.display());
    }
    Ok(())
}

fn analyze(
    config: Option<PathBuf>,
    records: Option<PathBuf>,
    task: Option<TaskArg>,
    out: &Path,
    human: Option<PathBuf>,
    per_record: bool,
) -> Result<()> {
    let (records, task) = match (config, records) {
        (_, Some(r)) => (r, task.expect("clap requires --task with --records")),
        (Some(c), None) => {
            let config = load_config(&c)?;
            let task = match config.task {
                Task::Translate => TaskArg::Translate,
                Task::Qe => TaskArg::Qe,
            };
            (config.paths.output, task)
        }
        (None, None) => bail!("pass --config or --records"),
    };
    let files = match task {
        TaskArg::Translate => {
            let aggregation = if per_record {
                PointAggregation::Record
            } else {
                PointAggregation::Parametrization
            };
            let analysis = analyze_translation(&records, out, GroupBy::default(), aggregation)?;
            for t in &analysis.tables {
                println!("{} vs {} similarity", t.options.quality, t.options.similarity);
                println!("{}", render_grid(t));
            }
            analysis.files
        }
        TaskArg::Qe => {
            let human = human.as_deref().map(HumanScores::load_csv).transpose()?;
            let (results, files) = analyze_qe(&records, human.as_ref(), out)?;
            for r in &results {
                println!(
                    "{:?} {}: r = {} (n = {})",
                    r.level,
                    r.qe_prompt_id,
                    errprompt::analytics::format_r(r.r),
                    r.n
                );
            }
            files
        }
    };
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn validate(config: Option<PathBuf>) -> Result<()> {
    let mut problems = Vec::new();
    let (prompts, catalogs) = match &config {
        Some(path) => {
            let config = load_config(path)?;
            problems.extend(config.problems());
            (config.prompt_catalog()?, config.catalogs()?)
        }
        None => (PromptCatalog::builtin(), CatalogSet::builtin()),
    };
    for p in prompts.iter() {
        for v in p.validate() {
            problems.push(format!("prompt {}: {v}", p.id));
        }
    }
    let base_text = |id: &str| prompts.get(id).ok().map(|p| p.text.clone());
    for catalog in [&catalogs.phonetic, &catalogs.phrasal, &catalogs.register] {
        problems.extend(catalog.check_against(base_text));
    }
    if problems.is_empty() {
        println!("ok");
        return Ok(());
    }
    for p in &problems {
        println!("{p}");
    }
    bail!("{} problem(s) found", problems.len())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Augment { config, out } => augment(&config, out.as_deref()),
        Command::Buckets { config } => buckets(&config),
        Command::Run {
            config,
            backend,
            cache,
        } => run(&config, backend, cache),
        Command::Analyze {
            config,
            records,
            task,
            out,
            human,
            per_record,
        } => analyze(config, records, task, &out, human, per_record),
        Command::Validate { config } => validate(config),
    }
}
