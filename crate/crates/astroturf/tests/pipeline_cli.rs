//! End-to-end run of every subcommand against a small synthetic corpus,
//! plus the exit-code contract.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_astroturf"))
}

fn run_ok(args: &[&str]) {
    let output = bin().args(args).output().expect("spawning binary");
    assert!(
        output.status.success(),
        "command {:?} failed:\n{}",
        args,
        String::from_utf8_lossy(&output.stderr)
    );
}

fn write_corpus_config(path: &Path) {
    fs::write(
        path,
        concat!(
            "search_terms = [\"afd\", \"cdu\", \"csu\", \"spd\", \"gruene\", \"linke\", \"btw17\"]\n",
            "exclusion_terms = [\"fdp\"]\n",
            "match_mode = \"token\"\n",
        ),
    )
    .unwrap();
}

#[test]
fn full_pipeline_produces_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    let synth_cfg = root.join("synth.toml");
    fs::write(
        &synth_cfg,
        concat!(
            "n_humans = 40\nn_bots = 10\nspan_days = 5\nseed = 7\n",
            "[troll]\ncount = 3\nrenamed = 1\nretweets_by_non_trolls = 4\n",
            "quotes_by_non_trolls = 2\nretweets_by_trolls = 2\nquotes_by_trolls = 1\n",
        ),
    )
    .unwrap();
    let corpus_cfg = root.join("corpus.toml");
    write_corpus_config(&corpus_cfg);

    let corpus = root.join("corpus");
    run_ok(&[
        "synth",
        "--config",
        synth_cfg.to_str().unwrap(),
        "--out",
        corpus.to_str().unwrap(),
    ]);
    for name in [
        "corpus.jsonl",
        "labels.csv",
        "truth.json",
        "trolls.csv",
        "manifest.json",
    ] {
        assert!(corpus.join(name).exists(), "missing {name}");
    }

    let store = root.join("store");
    run_ok(&[
        "ingest",
        "--config",
        corpus_cfg.to_str().unwrap(),
        "--in",
        corpus.join("corpus.jsonl").to_str().unwrap(),
        "--store",
        store.to_str().unwrap(),
    ]);
    assert!(store.join("timelines.jsonl").exists());
    assert!(store.join("stats.json").exists());
    assert!(store.join("manifest.json").exists());

    let stats = root.join("stats");
    run_ok(&[
        "stats",
        "--store",
        store.to_str().unwrap(),
        "--out",
        stats.to_str().unwrap(),
        "--top",
        "5",
        "--bin",
        "1d",
    ]);
    for name in [
        "tweet_types.csv",
        "tweet_types.svg",
        "top_hashtags.csv",
        "top_hashtags.svg",
        "top_hashtag_pairs.csv",
        "top_media.csv",
        "top_retweeted_users.csv",
        "top_quoted_users.csv",
        "manifest.json",
    ] {
        assert!(stats.join(name).exists(), "missing {name}");
    }
    let svg = fs::read_to_string(stats.join("tweet_types.svg")).unwrap();
    assert!(svg.starts_with("<svg"));

    let trolls_out = root.join("trolls");
    run_ok(&[
        "trolls",
        "--store",
        store.to_str().unwrap(),
        "--list",
        corpus.join("trolls.csv").to_str().unwrap(),
        "--out",
        trolls_out.to_str().unwrap(),
    ]);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(trolls_out.join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["matched"], 3);
    assert_eq!(summary["renamed"], 1);

    let features = root.join("features.csv");
    run_ok(&[
        "features",
        "--store",
        store.to_str().unwrap(),
        "--out",
        features.to_str().unwrap(),
        "--min-tweets",
        "1",
    ]);
    let header = fs::read_to_string(&features).unwrap();
    assert!(header.starts_with("user_id,avg_tweets_per_day,"));
    assert!(root.join("features.csv.manifest.json").exists());

    let suggestions = root.join("suggestions.csv");
    run_ok(&[
        "labels",
        "suggest",
        "--store",
        store.to_str().unwrap(),
        "--out",
        suggestions.to_str().unwrap(),
    ]);
    assert!(fs::read_to_string(&suggestions)
        .unwrap()
        .starts_with("user_id,verdict,rules"));

    let model = root.join("model.json");
    run_ok(&[
        "train",
        "--features",
        features.to_str().unwrap(),
        "--labels",
        corpus.join("labels.csv").to_str().unwrap(),
        "--family",
        "lr",
        "--out",
        model.to_str().unwrap(),
    ]);
    assert!(model.exists());

    let eval_out = root.join("eval");
    run_ok(&[
        "eval",
        "cv",
        "--features",
        features.to_str().unwrap(),
        "--labels",
        corpus.join("labels.csv").to_str().unwrap(),
        "--family",
        "lr",
        "--k",
        "5",
        "--repeats",
        "2",
        "--no-final",
        "--out",
        eval_out.to_str().unwrap(),
    ]);
    for name in [
        "metrics.csv",
        "roc.csv",
        "roc.svg",
        "best.json",
        "manifest.json",
    ] {
        assert!(eval_out.join(name).exists(), "missing {name}");
    }

    let predict_out = root.join("predict");
    run_ok(&[
        "predict",
        "--model",
        model.to_str().unwrap(),
        "--store",
        store.to_str().unwrap(),
        "--out",
        predict_out.to_str().unwrap(),
        "--min-tweets",
        "1",
    ]);
    assert!(predict_out.join("predictions.csv").exists());
    assert!(predict_out.join("summary.json").exists());
}

#[test]
fn usage_errors_exit_one() {
    let output = bin().args(["features", "--store"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let output = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let output = bin()
        .args([
            "features",
            "--store",
            dir.path().join("missing").to_str().unwrap(),
            "--out",
            dir.path().join("f.csv").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let output = bin().arg("--help").output().unwrap();
    assert_eq!(output.status.code(), Some(0));
}
