//! Matching a published troll-account list against the corpus by immutable
//! user id, plus the interaction statistics around the matched accounts.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use anyhow::{bail, Context, Result};
use chrono::Datelike;
use serde::{Deserialize, Serialize};

use crate::analytics::SECS_PER_DAY;
use crate::store::UserTimeline;
use crate::tweet::TweetType;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrollEntry {
    pub user_id: u64,
    pub known_screen_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrollList {
    pub entries: Vec<TrollEntry>,
}

/// Load a two-column CSV (user_id, screen_name); multiple rows per id are
/// merged into one entry.
pub fn load_troll_list(path: &Path) -> Result<TrollList> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let id_col = headers.iter().position(|h| h == "user_id");
    let name_col = headers.iter().position(|h| h == "screen_name");
    let (id_col, name_col) = match (id_col, name_col) {
        (Some(i), Some(n)) => (i, n),
        _ => bail!("troll list needs user_id and screen_name columns"),
    };
    let mut by_id: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    for record in reader.records() {
        let record = record?;
        let id: u64 = record
            .get(id_col)
            .context("short row")?
            .trim()
            .parse()
            .context("user_id not an integer")?;
        let name = record
            .get(name_col)
            .context("short row")?
            .trim()
            .to_string();
        let names = by_id.entry(id).or_default();
        if !names.contains(&name) {
            names.push(name);
        }
    }
    Ok(TrollList {
        entries: by_id
            .into_iter()
            .map(|(user_id, known_screen_names)| TrollEntry {
                user_id,
                known_screen_names,
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedTroll {
    pub user_id: u64,
    pub tweets_total: u64,
    pub originals: u64,
    pub retweets: u64,
    pub quotes: u64,
    pub replies: u64,
    /// True when the corpus' latest screen name is not on the known list.
    pub renamed: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteractionStats {
    pub retweets_of_trolls_by_trolls: u64,
    pub retweets_of_trolls_by_non_trolls: u64,
    pub quotes_of_trolls_by_trolls: u64,
    pub quotes_of_trolls_by_non_trolls: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrollMatchReport {
    pub matched: Vec<MatchedTroll>,
    /// List entries absent from the corpus.
    pub unmatched: u64,
    /// Account creation counts per UTC month, key "YYYY-MM".
    pub creation_histogram: BTreeMap<String, u64>,
    /// Troll tweets per UTC day (unix day start).
    pub activity_series: BTreeMap<i64, u64>,
    pub interactions: InteractionStats,
}

/// Match strictly by user id and compute the per-account statistics.
pub fn match_trolls(timelines: &[UserTimeline], list: &TrollList) -> TrollMatchReport {
    let by_id: BTreeMap<u64, &UserTimeline> = timelines.iter().map(|tl| (tl.user_id, tl)).collect();
    let mut matched = Vec::new();
    let mut unmatched = 0u64;
    let mut creation_histogram: BTreeMap<String, u64> = BTreeMap::new();
    let mut activity_series: BTreeMap<i64, u64> = BTreeMap::new();

    for entry in &list.entries {
        let Some(tl) = by_id.get(&entry.user_id) else {
            unmatched += 1;
            continue;
        };
        let count = |k: TweetType| tl.tweets.iter().filter(|t| t.tweet_type == k).count() as u64;
        matched.push(MatchedTroll {
            user_id: entry.user_id,
            tweets_total: tl.tweets.len() as u64,
            originals: count(TweetType::Original),
            retweets: count(TweetType::Retweet),
            quotes: count(TweetType::Quote),
            replies: count(TweetType::Reply),
            renamed: !entry.known_screen_names.contains(&tl.profile.screen_name),
        });
        if let Some(created) = tl.profile.account_created_at {
            let key = format!("{:04}-{:02}", created.year(), created.month());
            *creation_histogram.entry(key).or_insert(0) += 1;
        }
        for tweet in &tl.tweets {
            let day = tweet.created_at.timestamp().div_euclid(SECS_PER_DAY) * SECS_PER_DAY;
            *activity_series.entry(day).or_insert(0) += 1;
        }
    }

    let matched_ids: BTreeSet<u64> = matched.iter().map(|m| m.user_id).collect();
    let interactions = troll_interactions(timelines, &matched_ids);
    TrollMatchReport {
        matched,
        unmatched,
        creation_histogram,
        activity_series,
        interactions,
    }
}

/// Count retweets and quotes whose referenced author is a matched troll,
/// split by whether the interacting account is itself a matched troll.
pub fn troll_interactions(
    timelines: &[UserTimeline],
    matched_ids: &BTreeSet<u64>,
) -> InteractionStats {
    let mut stats = InteractionStats::default();
    for tl in timelines {
        let by_troll = matched_ids.contains(&tl.user_id);
        for tweet in &tl.tweets {
            let Some(author) = tweet.referenced_author_id else {
                continue;
            };
            if !matched_ids.contains(&author) {
                continue;
            }
            match (tweet.tweet_type, by_troll) {
                (TweetType::Retweet, true) => stats.retweets_of_trolls_by_trolls += 1,
                (TweetType::Retweet, false) => stats.retweets_of_trolls_by_non_trolls += 1,
                (TweetType::Quote, true) => stats.quotes_of_trolls_by_trolls += 1,
                (TweetType::Quote, false) => stats.quotes_of_trolls_by_non_trolls += 1,
                _ => {}
            }
        }
    }
    stats
}
