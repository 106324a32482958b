//! Command-line entry point wiring the pipeline stages together.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use astroturf::analytics::{self, ReferenceMode};
use astroturf::charts;
use astroturf::config;
use astroturf::evalrun::{self, default_grid, family_from_name};
use astroturf::featurize;
use astroturf::ingest;
use astroturf::labels as labelmod;
use astroturf::manifest::RunManifest;
use astroturf::modelio;
use astroturf::store;
use astroturf::synth;
use astroturf::trolls;

#[derive(Parser)]
#[command(name = "astroturf", version, about = "election-tweet corpus toolkit")]
struct Cli {
    /// Worker threads (defaults to the available cores).
    #[arg(long, global = true, env = "ASTROTURF_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a labeled synthetic corpus.
    Synth {
        /// TOML config; omitted means the built-in defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse, filter and store per-user timelines.
    Ingest {
        #[arg(long)]
        config: PathBuf,
        /// Input files (newline-delimited records).
        #[arg(long = "in", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        store: PathBuf,
    },
    /// Landscape statistics: time series, hashtags, pairs, media, users.
    Stats {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Bin width, e.g. 1d or 6h.
        #[arg(long, default_value = "1d")]
        bin: String,
    },
    /// Match a troll list against the store.
    Trolls {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        list: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract the per-account feature matrix.
    Features {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_tweets: usize,
    },
    /// Heuristic label suggestions.
    Labels {
        #[command(subcommand)]
        command: LabelsCommand,
    },
    /// Train one classifier on a labeled feature matrix.
    Train {
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        /// gb, rf, ada, lr, knn or svc.
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Pick hyperparameters by grid search instead of the fixed default.
        #[arg(long)]
        grid_search: bool,
    },
    /// Evaluation protocols.
    Eval {
        #[command(subcommand)]
        command: EvalCommand,
    },
    /// Score unlabeled accounts with a trained model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 30)]
        min_tweets: usize,
        /// Previously labeled accounts merged into the totals.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LabelsCommand {
    Suggest {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CvArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    /// Restrict the grid to one family; default runs every family.
    #[arg(long)]
    family: Option<String>,
    /// Custom grid file; default is the declared per-family grid.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Repeats per grid point.
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    /// Repeats for the final pass over the chosen spec.
    #[arg(long, default_value_t = 100)]
    final_repeats: usize,
    /// Skip the expensive final pass.
    #[arg(long)]
    no_final: bool,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Repeated stratified k-fold cross-validation with grid search.
    Cv(CvArgs),
    /// Score an externally produced (account, score) file.
    External {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's default exit code for bad usage is 2; the contract here
            // reserves 2 for data errors.
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e:#}");
        std::process::exit(2);
    }
}

fn parse_bin(bin: &str) -> Result<i64> {
    let (value, unit) = bin.split_at(bin.len().saturating_sub(1));
    let value: i64 = value
        .parse()
        .with_context(|| format!("bad bin width {bin:?}"))?;
    if value <= 0 {
        bail!("bin width must be positive");
    }
    Ok(match unit {
        "d" => value * 86_400,
        "h" => value * 3600,
        _ => bail!("bin width must end in d or h"),
    })
}

fn finish_manifest(mut manifest: RunManifest, out_dir: &Path, started: Instant) -> Result<()> {
    manifest.wall_time_secs = started.elapsed().as_secs_f64();
    manifest.write(out_dir)
}

fn run(command: Command) -> Result<()> {
    let started = Instant::now();
    match command {
        Command::Synth { config, out, seed } => {
            let mut synth_config = match &config {
                Some(path) => config::load_synth_config(path)?,
                None => synth::SynthConfig::default(),
            };
            if let Some(seed) = seed {
                synth_config.seed = seed;
            }
            let output = synth::generate(&synth_config)?;
            synth::write_outputs(&out, &output)?;
            let mut manifest = RunManifest::new("synth".to_string());
            if let Some(path) = &config {
                manifest.config_digest = Some(astroturf::manifest::sha256_file(path)?);
            }
            manifest.seed = Some(synth_config.seed);
            finish_manifest(manifest, &out, started)
        }
        Command::Ingest {
            config,
            inputs,
            store: store_dir,
        } => {
            let corpus_config = config::load_corpus_config(&config)?;
            let (timelines, stats) = ingest::ingest_files(&inputs, &corpus_config)?;
            store::write_store(&store_dir, &timelines, &stats)?;
            let mut manifest = RunManifest::new("ingest".to_string());
            manifest.config_digest = Some(astroturf::manifest::sha256_file(&config)?);
            for input in &inputs {
                manifest.add_input(input)?;
            }
            finish_manifest(manifest, &store_dir, started)
        }
        Command::Stats {
            store: store_dir,
            out,
            top,
            bin,
        } => {
            let bin_secs = parse_bin(&bin)?;
            let (timelines, _) = store::load_store(&store_dir)?;
            fs::create_dir_all(&out)?;

            let series = analytics::tweet_type_timeseries(&timelines, bin_secs);
            fs::write(out.join("tweet_types.csv"), timeseries_csv(&series))?;
            fs::write(
                out.join("tweet_types.svg"),
                charts::timeseries_svg(&series, "tweet types over time"),
            )?;

            let outputs = [
                ("top_hashtags", analytics::top_hashtags(&timelines, top)),
                (
                    "top_hashtag_pairs",
                    analytics::top_hashtag_pairs(&timelines, top),
                ),
                ("top_media", analytics::top_media(&timelines, top)),
                (
                    "top_retweeted_users",
                    analytics::top_referenced_users(&timelines, top, ReferenceMode::Retweeted),
                ),
                (
                    "top_quoted_users",
                    analytics::top_referenced_users(&timelines, top, ReferenceMode::Quoted),
                ),
            ];
            for (name, counts) in outputs {
                fs::write(out.join(format!("{name}.csv")), ranked_csv(&counts))?;
                fs::write(
                    out.join(format!("{name}.svg")),
                    charts::ranked_svg(&counts, name),
                )?;
            }
            let mut manifest = RunManifest::new("stats".to_string());
            for path in store::store_paths(&store_dir) {
                manifest.add_input(&path)?;
            }
            finish_manifest(manifest, &out, started)
        }
        Command::Trolls {
            store: store_dir,
            list,
            out,
        } => {
            let (timelines, _) = store::load_store(&store_dir)?;
            let troll_list = trolls::load_troll_list(&list)?;
            let report = trolls::match_trolls(&timelines, &troll_list);
            fs::create_dir_all(&out)?;

            let mut matched =
                String::from("user_id,tweets_total,originals,retweets,quotes,replies,renamed\n");
            for m in &report.matched {
                matched.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    m.user_id,
                    m.tweets_total,
                    m.originals,
                    m.retweets,
                    m.quotes,
                    m.replies,
                    m.renamed
                ));
            }
            fs::write(out.join("matched.csv"), matched)?;

            let creation: Vec<(String, u64)> = report
                .creation_histogram
                .iter()
                .map(|(k, v)| (k.clone(), *v))
                .collect();
            let mut creation_csv = String::from("month,count\n");
            for (month, count) in &creation {
                creation_csv.push_str(&format!("{month},{count}\n"));
            }
            fs::write(out.join("creation_histogram.csv"), creation_csv)?;
            fs::write(
                out.join("creation_histogram.svg"),
                charts::histogram_svg(&creation, "troll account creation months"),
            )?;

            let activity: Vec<(String, u64)> = report
                .activity_series
                .iter()
                .map(|(day, count)| (format_day(*day), *count))
                .collect();
            let mut activity_csv = String::from("day,count\n");
            for (day, count) in &activity {
                activity_csv.push_str(&format!("{day},{count}\n"));
            }
            fs::write(out.join("activity.csv"), activity_csv)?;
            fs::write(
                out.join("activity.svg"),
                charts::histogram_svg(&activity, "troll tweets per day"),
            )?;

            fs::write(
                out.join("summary.json"),
                serde_json::to_string_pretty(&serde_json::json!({
                    "matched": report.matched.len(),
                    "unmatched": report.unmatched,
                    "renamed": report.matched.iter().filter(|m| m.renamed).count(),
                    "interactions": report.interactions,
                }))?,
            )?;
            let mut manifest = RunManifest::new("trolls".to_string());
            manifest.add_input(&list)?;
            for path in store::store_paths(&store_dir) {
                manifest.add_input(&path)?;
            }
            finish_manifest(manifest, &out, started)
        }
        Command::Features {
            store: store_dir,
            out,
            min_tweets,
        } => {
            let (timelines, _) = store::load_store(&store_dir)?;
            let rows = featurize::extract_all(&timelines, min_tweets)?;
            evalrun::write_features_csv(&out, &rows)?;
            let mut manifest = RunManifest::new("features".to_string());
            for path in store::store_paths(&store_dir) {
                manifest.add_input(&path)?;
            }
            manifest.wall_time_secs = started.elapsed().as_secs_f64();
            fs::write(
                sibling_manifest(&out),
                serde_json::to_string_pretty(&manifest)?,
            )?;
            Ok(())
        }
        Command::Labels { command } => match command {
            LabelsCommand::Suggest {
                store: store_dir,
                out,
            } => {
                let (timelines, _) = store::load_store(&store_dir)?;
                let rows = featurize::extract_all(&timelines, 1)?;
                let trending = featurize::daily_trending(&timelines, 10);
                let cols = labelmod::Columns::resolve();
                let by_id: BTreeMap<u64, &store::UserTimeline> =
                    timelines.iter().map(|tl| (tl.user_id, tl)).collect();
                let mut csv = String::from("user_id,verdict,rules\n");
                for row in &rows {
                    let timeline = by_id[&row.user_id];
                    let suggestion = labelmod::suggest_labels(
                        row.user_id,
                        &row.vector,
                        timeline,
                        &trending,
                        &cols,
                    );
                    csv.push_str(&format!(
                        "{},{},{}\n",
                        suggestion.account,
                        suggestion.verdict.name(),
                        suggestion.fired_rules.join("|"),
                    ));
                }
                fs::write(&out, csv)?;
                let mut manifest = RunManifest::new("labels suggest".to_string());
                for path in store::store_paths(&store_dir) {
                    manifest.add_input(&path)?;
                }
                manifest.wall_time_secs = started.elapsed().as_secs_f64();
                fs::write(
                    sibling_manifest(&out),
                    serde_json::to_string_pretty(&manifest)?,
                )?;
                Ok(())
            }
        },
        Command::Train {
            features,
            labels,
            family,
            out,
            seed,
            grid_search,
        } => {
            let family = family_from_name(&family)?;
            let feature_rows = evalrun::read_features_csv(&features)?;
            let label_map = evalrun::read_labels_csv(&labels)?;
            let (x, y, _) = evalrun::align(&feature_rows, &label_map);
            let grid = default_grid(family, seed);
            let spec = if grid_search {
                evalrun::evaluate_grid(&grid, &x, &y, 10, 10, seed)?.best
            } else {
                grid.last().expect("grids are non-empty").clone()
            };
            let model =
                astroturf_core::models::train(&spec, &x, &y).map_err(|e| anyhow::anyhow!("{e}"))?;
            modelio::save_model(&out, &model)?;
            let mut manifest = RunManifest::new("train".to_string());
            manifest.add_input(&features)?;
            manifest.add_input(&labels)?;
            manifest.seed = Some(seed);
            manifest.wall_time_secs = started.elapsed().as_secs_f64();
            fs::write(
                sibling_manifest(&out),
                serde_json::to_string_pretty(&manifest)?,
            )?;
            Ok(())
        }
        Command::Eval { command } => match command {
            EvalCommand::Cv(args) => run_eval_cv(args, started),
            EvalCommand::External {
                scores,
                labels,
                out,
            } => {
                let score_rows = evalrun::read_scores_csv(&scores)?;
                let label_map = evalrun::read_labels_csv(&labels)?;
                let mut s = Vec::new();
                let mut y = Vec::new();
                for (id, score) in &score_rows {
                    if let Some(&is_bot) = label_map.get(id) {
                        s.push(*score);
                        y.push(is_bot);
                    }
                }
                let curve = astroturf_core::metrics::roc_and_auc(&s, &y)
                    .map_err(|e| anyhow::anyhow!("{e}"))?;
                let predictions: Vec<bool> = s.iter().map(|&v| v >= 0.5).collect();
                let f1 = astroturf_core::metrics::f1_score(&predictions, &y);
                fs::create_dir_all(&out)?;
                fs::write(
                    out.join("metrics.csv"),
                    format!(
                        "auc,bounded_auc,f1\n{},{},{}\n",
                        curve.auc, curve.bounded_auc, f1
                    ),
                )?;
                fs::write(out.join("roc.csv"), evalrun::roc_csv(&curve))?;
                fs::write(
                    out.join("roc.svg"),
                    charts::roc_svg(&curve, "external scores"),
                )?;
                let mut manifest = RunManifest::new("eval external".to_string());
                manifest.add_input(&scores)?;
                manifest.add_input(&labels)?;
                finish_manifest(manifest, &out, started)
            }
        },
        Command::Predict {
            model,
            store: store_dir,
            out,
            min_tweets,
            labels,
        } => {
            let trained = modelio::load_model(&model)?;
            let (timelines, _) = store::load_store(&store_dir)?;
            let label_map = match &labels {
                Some(path) => evalrun::read_labels_csv(path)?,
                None => BTreeMap::new(),
            };
            let report = evalrun::extrapolate(&trained, &timelines, min_tweets, &label_map)?;
            fs::create_dir_all(&out)?;
            let mut csv = String::from("user_id,score,predicted\n");
            for (id, score, is_bot) in &report.scores {
                csv.push_str(&format!(
                    "{id},{score},{}\n",
                    if *is_bot { "bot" } else { "human" }
                ));
            }
            fs::write(out.join("predictions.csv"), csv)?;
            fs::write(
                out.join("summary.json"),
                serde_json::to_string_pretty(&report)?,
            )?;
            let mut manifest = RunManifest::new("predict".to_string());
            manifest.add_input(&model)?;
            for path in store::store_paths(&store_dir) {
                manifest.add_input(&path)?;
            }
            finish_manifest(manifest, &out, started)
        }
    }
}

fn run_eval_cv(args: CvArgs, started: Instant) -> Result<()> {
    let feature_rows = evalrun::read_features_csv(&args.features)?;
    let label_map = evalrun::read_labels_csv(&args.labels)?;
    let (x, y, _) = evalrun::align(&feature_rows, &label_map);
    let grid = match (&args.grid, &args.family) {
        (Some(path), _) => config::load_grid(path, args.seed)?,
        (None, Some(name)) => default_grid(family_from_name(name)?, args.seed),
        (None, None) => {
            let mut all = Vec::new();
            for family in [
                astroturf_core::models::Family::GradientBoosting,
                astroturf_core::models::Family::RandomForest,
                astroturf_core::models::Family::AdaBoost,
                astroturf_core::models::Family::LogisticRegression,
                astroturf_core::models::Family::KNeighbors,
                astroturf_core::models::Family::LinearSvc,
            ] {
                all.extend(default_grid(family, args.seed));
            }
            all
        }
    };
    let mut report = evalrun::evaluate_grid(&grid, &x, &y, args.k, args.repeats, args.seed)?;
    if !args.no_final {
        report.best_report =
            evalrun::evaluate_spec(&report.best, &x, &y, args.k, args.final_repeats, args.seed)?;
    }
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("metrics.csv"), evalrun::metrics_csv(&report))?;
    fs::write(args.out.join("roc.csv"), evalrun::roc_csv(&report.roc))?;
    fs::write(
        args.out.join("roc.svg"),
        charts::roc_svg(&report.roc, "best model ROC"),
    )?;
    fs::write(
        args.out.join("best.json"),
        serde_json::to_string_pretty(&serde_json::json!({
            "spec": report.best,
            "report": report.best_report,
        }))?,
    )?;
    let mut manifest = RunManifest::new("eval cv".to_string());
    manifest.add_input(&args.features)?;
    manifest.add_input(&args.labels)?;
    if let Some(grid_path) = &args.grid {
        manifest.config_digest = Some(astroturf::manifest::sha256_file(grid_path)?);
    }
    manifest.seed = Some(args.seed);
    finish_manifest(manifest, &args.out, started)
}

fn sibling_manifest(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_string());
    name.push_str(".manifest.json");
    out.with_file_name(name)
}

fn format_day(day_start_secs: i64) -> String {
    chrono::DateTime::from_timestamp(day_start_secs, 0)
        .map(|dt| dt.format("%Y-%m-%d").to_string())
        .unwrap_or_else(|| day_start_secs.to_string())
}

fn timeseries_csv(series: &analytics::TimeSeries) -> String {
    let mut out = String::from("bin_start,original,retweet,quote,reply\n");
    for (i, bin_start) in series.bin_starts.iter().enumerate() {
        let get = |name: &str| series.series.get(name).map(|counts| counts[i]).unwrap_or(0);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_day(*bin_start),
            get("original"),
            get("retweet"),
            get("quote"),
            get("reply"),
        ));
    }
    out
}

fn ranked_csv(counts: &analytics::RankedCounts) -> String {
    let mut out = String::from("key,count\n");
    for (key, count) in &counts.entries {
        let quoted = if key.contains(',') || key.contains('"') {
            format!("\"{}\"", key.replace('"', "\"\""))
        } else {
            key.clone()
        };
        out.push_str(&format!("{quoted},{count}\n"));
    }
    out
}
