//! On-disk timeline store: one JSON line per account, sorted by user id,
//! plus a stats file. Rebuilding from the same input yields a byte-identical
//! store.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::tweet::{Tweet, UserProfile};

pub const TIMELINES_FILE: &str = "timelines.jsonl";
pub const STATS_FILE: &str = "stats.json";

/// All tweets of one account, ascending by (created_at, tweet_id), with the
/// latest-seen profile snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserTimeline {
    pub user_id: u64,
    pub profile: UserProfile,
    pub tweets: Vec<Tweet>,
}

/// Ingest bookkeeping persisted next to the timelines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreStats {
    /// Input lines that parsed successfully.
    pub parsed: u64,
    /// Input lines rejected (malformed, missing fields, bad timestamp).
    pub rejected: u64,
    /// Parsed tweets matching no search term.
    pub unmatched: u64,
    /// Parsed, matched tweets removed by the exclusion terms.
    pub excluded: u64,
    /// Tweets that made it into the store. kept + excluded + unmatched = parsed.
    pub kept: u64,
    pub users: u64,
}

impl StoreStats {
    /// Fraction of matched tweets removed by exclusion.
    pub fn excluded_fraction(&self) -> f64 {
        let total = self.excluded + self.kept;
        if total == 0 {
            0.0
        } else {
            self.excluded as f64 / total as f64
        }
    }
}

pub fn write_store(
    dir: &Path,
    timelines: &BTreeMap<u64, UserTimeline>,
    stats: &StoreStats,
) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating store dir {}", dir.display()))?;
    let path = dir.join(TIMELINES_FILE);
    let file = fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
    let mut out = BufWriter::new(file);
    // BTreeMap iteration gives ascending user_id, so the file layout is
    // independent of input order.
    for timeline in timelines.values() {
        serde_json::to_writer(&mut out, timeline)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    let stats_path = dir.join(STATS_FILE);
    fs::write(&stats_path, serde_json::to_string_pretty(stats)?)
        .with_context(|| format!("writing {}", stats_path.display()))?;
    Ok(())
}

pub fn load_store(dir: &Path) -> Result<(Vec<UserTimeline>, StoreStats)> {
    let path = dir.join(TIMELINES_FILE);
    let file = fs::File::open(&path).with_context(|| format!("opening {}", path.display()))?;
    let mut timelines = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let timeline: UserTimeline = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}", path.display(), lineno + 1))?;
        timelines.push(timeline);
    }
    let stats_path = dir.join(STATS_FILE);
    let stats: StoreStats = serde_json::from_str(
        &fs::read_to_string(&stats_path)
            .with_context(|| format!("opening {}", stats_path.display()))?,
    )?;
    Ok((timelines, stats))
}

pub fn store_paths(dir: &Path) -> Vec<PathBuf> {
    vec![dir.join(TIMELINES_FILE), dir.join(STATS_FILE)]
}

pub fn tweet_count(timelines: &[UserTimeline]) -> u64 {
    timelines.iter().map(|t| t.tweets.len() as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tweet::parse_tweet;

    fn timeline(user_id: u64) -> UserTimeline {
        let line = format!(
            r#"{{"id":{id},"user":{{"id":{user_id},"screen_name":"u{user_id}"}},"created_at":"2017-09-01T10:00:00Z","text":"hello world"}}"#,
            id = user_id * 10,
        );
        let (tweet, profile) = parse_tweet(&line).unwrap();
        UserTimeline {
            user_id,
            profile,
            tweets: vec![tweet],
        }
    }

    #[test]
    fn round_trip_and_byte_identical_rewrite() {
        let dir = tempfile::tempdir().unwrap();
        let mut map = BTreeMap::new();
        for id in [7u64, 3, 9] {
            map.insert(id, timeline(id));
        }
        let stats = StoreStats {
            parsed: 3,
            kept: 3,
            users: 3,
            ..StoreStats::default()
        };
        write_store(dir.path(), &map, &stats).unwrap();
        let first = fs::read(dir.path().join(TIMELINES_FILE)).unwrap();

        let (loaded, loaded_stats) = load_store(dir.path()).unwrap();
        assert_eq!(loaded.len(), 3);
        assert_eq!(loaded[0].user_id, 3); // sorted ascending
        assert_eq!(loaded_stats, stats);

        write_store(dir.path(), &map, &stats).unwrap();
        let second = fs::read(dir.path().join(TIMELINES_FILE)).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn excluded_fraction_of_empty_store_is_zero() {
        assert_eq!(StoreStats::default().excluded_fraction(), 0.0);
    }
}
