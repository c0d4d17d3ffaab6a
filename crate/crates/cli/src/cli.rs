use std::io::{Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use slangguard_core::{
    DetectionReport, LearnerConfig, MatchSource, Mode, PipelineConfig, ReviewAction, Store,
    SuspiciousRecord, Verdict, WindowConfig,
};

use crate::server;

#[derive(Debug, Parser)]
#[command(name = "slangguard", version, about = "Screen text for slang and learn new slang words")]
pub struct Cli {
    /// Store directory.
    #[arg(long, global = true, default_value = "./store")]
    pub store: PathBuf,

    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Create a store seeded with the default lexicon, concepts and stop words.
    Init {
        /// Target directory (defaults to --store).
        dir: Option<PathBuf>,
    },
    /// Filter a file, or standard input when no file is given.
    Filter {
        input: Option<PathBuf>,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Inspect and decide on suspicious words.
    Review {
        #[command(subcommand)]
        action: ReviewCommand,
    },
    /// Serve the review API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReviewCommand {
    /// Suspicious words by accumulated value, highest first.
    List,
    /// Move a suspicious word into the slang lexicon.
    Confirm { word: String },
    /// Keep a suspicious word pending; its evidence keeps accumulating.
    Dismiss { word: String },
}

#[derive(Debug, Args, Clone)]
pub struct PipelineArgs {
    #[arg(long, default_value = "enforce", value_parser = ["enforce", "report"])]
    pub mode: String,
    #[arg(long, default_value_t = slangguard_core::suspicious::DEFAULT_WINDOW_LENGTH)]
    pub window_length: usize,
    #[arg(long, default_value_t = slangguard_core::learner::DEFAULT_THRESHOLD)]
    pub threshold: u64,
    #[arg(long, default_value_t = slangguard_core::learner::DEFAULT_WEIGHT)]
    pub default_weight: u32,
    #[arg(long)]
    pub soundalike_fallback: bool,
}

impl PipelineArgs {
    pub fn config(&self) -> Result<PipelineConfig> {
        Ok(PipelineConfig {
            mode: self.mode.parse::<Mode>()?,
            window: WindowConfig::new(self.window_length)?,
            learner: LearnerConfig::new(self.threshold, self.default_weight)?,
            soundalike_fallback: self.soundalike_fallback,
        })
    }
}

pub const EXIT_CLEAN: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_BLOCKED: u8 = 2;
pub const EXIT_NEEDS_REVISION: u8 = 3;
pub const EXIT_FLAGGED: u8 = 4;

/// Exit status for a report. Report mode never signals rejection.
pub fn exit_code(report: &DetectionReport, mode: Mode) -> u8 {
    if mode == Mode::Report {
        return EXIT_CLEAN;
    }
    match report.verdict {
        Verdict::Clean => EXIT_CLEAN,
        Verdict::Blocked => EXIT_BLOCKED,
        Verdict::NeedsRevision => EXIT_NEEDS_REVISION,
        Verdict::Flagged => EXIT_FLAGGED,
    }
}

fn open_store(cli: &Cli) -> Result<Store> {
    if !cli.store.is_dir() {
        bail!("no store at {} (run `slangguard init`)", cli.store.display());
    }
    Store::open(&cli.store).with_context(|| format!("loading store {}", cli.store.display()))
}

pub fn run(cli: Cli) -> Result<u8> {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    match &cli.command {
        Command::Init { dir } => {
            let dir = dir.clone().unwrap_or_else(|| cli.store.clone());
            let store = Store::init(&dir)?;
            writeln!(
                err,
                "initialized {} ({} slang words, {} concepts)",
                dir.display(),
                store.bundle().slang().len(),
                store.bundle().concepts().len()
            )?;
            Ok(EXIT_CLEAN)
        }
        Command::Filter { input, pipeline } => {
            let config = pipeline.config()?;
            let mut store = open_store(&cli)?;
            let text = match input {
                Some(path) => std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?,
                None => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let report = store.filter(&text, &config)?;
            if cli.json {
                serde_json::to_writer_pretty(&mut out, &report)?;
                writeln!(out)?;
            } else {
                write_report(&mut err, &report)?;
                if report.accepted {
                    out.write_all(text.as_bytes())?;
                }
            }
            Ok(exit_code(&report, config.mode))
        }
        Command::Review { action } => {
            let mut store = open_store(&cli)?;
            match action {
                ReviewCommand::List => {
                    let rows = sorted_by_value(store.bundle().suspicious());
                    if cli.json {
                        serde_json::to_writer_pretty(&mut out, &rows)?;
                        writeln!(out)?;
                    } else {
                        write_table(&mut out, &rows)?;
                    }
                }
                ReviewCommand::Confirm { word } | ReviewCommand::Dismiss { word } => {
                    let action = match action {
                        ReviewCommand::Confirm { .. } => ReviewAction::Confirm,
                        _ => ReviewAction::Dismiss,
                    };
                    let decision = store.review(word, action)?;
                    if cli.json {
                        serde_json::to_writer(&mut out, &decision)?;
                        writeln!(out)?;
                    } else {
                        let verb = match action {
                            ReviewAction::Confirm => "confirmed as slang",
                            ReviewAction::Dismiss => "dismissed, still pending",
                        };
                        writeln!(out, "{word}: {verb}")?;
                    }
                }
            }
            Ok(EXIT_CLEAN)
        }
        Command::Serve {
            port,
            host,
            pipeline,
        } => {
            let config = pipeline.config()?;
            let store = open_store(&cli)?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind((host.as_str(), *port))
                    .await
                    .with_context(|| format!("binding {host}:{port}"))?;
                eprintln!("serving on http://{}", listener.local_addr()?);
                let app = server::router(server::state(store, config));
                axum::serve(listener, app)
                    .with_graceful_shutdown(async {
                        let _ = tokio::signal::ctrl_c().await;
                    })
                    .await?;
                anyhow::Ok(())
            })?;
            Ok(EXIT_CLEAN)
        }
    }
}

pub fn sorted_by_value(rows: &[SuspiciousRecord]) -> Vec<SuspiciousRecord> {
    let mut rows = rows.to_vec();
    rows.sort_by(|a, b| b.value.cmp(&a.value).then(a.id.cmp(&b.id)));
    rows
}

fn write_table(out: &mut impl Write, rows: &[SuspiciousRecord]) -> std::io::Result<()> {
    if rows.is_empty() {
        return writeln!(out, "no suspicious words");
    }
    let width = rows.iter().map(|r| r.word.len()).max().unwrap_or(4).max(4);
    writeln!(out, "{:>5}  {:<width$}  {:>5}  {:>5}  matched", "id", "word", "count", "value")?;
    for r in rows {
        writeln!(
            out,
            "{:>5}  {:<width$}  {:>5}  {:>5}  {}",
            r.id, r.word, r.count, r.value, r.matched_slang
        )?;
    }
    Ok(())
}

pub fn write_report(out: &mut impl Write, report: &DetectionReport) -> std::io::Result<()> {
    writeln!(out, "verdict: {}", report.verdict)?;
    if let Some(c) = &report.concept {
        writeln!(
            out,
            "concept: {} (overlap {}, weight {})",
            c.concept.name, c.overlap, c.concept.weight
        )?;
    }
    for m in &report.exact_matches {
        writeln!(out, "slang word {:?} at position {}", m.lexeme, m.token_position)?;
    }
    for m in &report.soundalike_matches {
        let how = match m.source {
            MatchSource::Table => "variant",
            MatchSource::Phonetic => "sounds like",
        };
        writeln!(
            out,
            "{:?} at position {} ({how} {:?}) must be changed",
            m.variant, m.token_position, m.canonical
        )?;
    }
    for h in &report.suspicion_hits {
        writeln!(
            out,
            "suspicious {:?} at position {} (window {:?} of {:?})",
            h.word, h.token_position, h.window, h.matched_slang
        )?;
    }
    for w in &report.promotions {
        writeln!(out, "promoted {w:?} into the slang lexicon")?;
    }
    Ok(())
}
