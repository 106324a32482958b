//! Landscape statistics over a built store: tweet-type time series, top
//! hashtags and hashtag pairs, top media, top quoted and retweeted users.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::store::UserTimeline;
use crate::tweet::TweetType;

pub const SECS_PER_DAY: i64 = 86_400;

/// Per-type counts in contiguous bins over the corpus span. Bins start at
/// UTC midnight multiples of `bin_width_secs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub bin_width_secs: i64,
    pub origin: i64,
    /// type name -> counts, one entry per bin, aligned across types.
    pub series: BTreeMap<String, Vec<u64>>,
    pub bin_starts: Vec<i64>,
}

impl TimeSeries {
    pub fn total(&self) -> u64 {
        self.series.values().flatten().sum()
    }
}

/// Keyed counts sorted by count descending, ties lexicographic by key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedCounts {
    pub entries: Vec<(String, u64)>,
}

fn ranked(counts: BTreeMap<String, u64>, k: usize) -> RankedCounts {
    let mut entries: Vec<(String, u64)> = counts.into_iter().filter(|(_, c)| *c > 0).collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    entries.truncate(k);
    RankedCounts { entries }
}

const TYPES: [TweetType; 4] = [
    TweetType::Original,
    TweetType::Retweet,
    TweetType::Quote,
    TweetType::Reply,
];

/// Daily (or `bin_width_secs`-sized) counts per tweet type. The sum over
/// all types and bins equals the store tweet count.
pub fn tweet_type_timeseries(timelines: &[UserTimeline], bin_width_secs: i64) -> TimeSeries {
    let timestamps: Vec<i64> = timelines
        .iter()
        .flat_map(|tl| tl.tweets.iter().map(|t| t.created_at.timestamp()))
        .collect();
    if timestamps.is_empty() {
        return TimeSeries {
            bin_width_secs,
            origin: 0,
            series: BTreeMap::new(),
            bin_starts: Vec::new(),
        };
    }
    let bin_of = |ts: i64| ts.div_euclid(bin_width_secs);
    let first = bin_of(*timestamps.iter().min().unwrap());
    let last = bin_of(*timestamps.iter().max().unwrap());
    let n_bins = (last - first + 1) as usize;

    let mut series: BTreeMap<String, Vec<u64>> = TYPES
        .iter()
        .map(|t| (t.name().to_string(), vec![0u64; n_bins]))
        .collect();
    for tl in timelines {
        for tweet in &tl.tweets {
            let bin = (bin_of(tweet.created_at.timestamp()) - first) as usize;
            series.get_mut(tweet.tweet_type.name()).unwrap()[bin] += 1;
        }
    }
    TimeSeries {
        bin_width_secs,
        origin: first * bin_width_secs,
        series,
        bin_starts: (first..=last).map(|b| b * bin_width_secs).collect(),
    }
}

/// Hashtag occurrence counts; duplicates within a tweet each count.
pub fn top_hashtags(timelines: &[UserTimeline], k: usize) -> RankedCounts {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for tl in timelines {
        for tweet in &tl.tweets {
            for tag in &tweet.hashtags {
                *counts.entry(tag.clone()).or_insert(0) += 1;
            }
        }
    }
    ranked(counts, k)
}

/// Unordered distinct hashtag pairs co-occurring within one tweet, counted
/// once per tweet; key rendered "a+b" with a < b.
pub fn top_hashtag_pairs(timelines: &[UserTimeline], k: usize) -> RankedCounts {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for tl in timelines {
        for tweet in &tl.tweets {
            let mut distinct: Vec<&String> = tweet.hashtags.iter().collect();
            distinct.sort();
            distinct.dedup();
            for i in 0..distinct.len() {
                for j in i + 1..distinct.len() {
                    let key = format!("{}+{}", distinct[i], distinct[j]);
                    *counts.entry(key).or_insert(0) += 1;
                }
            }
        }
    }
    ranked(counts, k)
}

/// Counts keyed by media identifier across all tweets.
pub fn top_media(timelines: &[UserTimeline], k: usize) -> RankedCounts {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for tl in timelines {
        for tweet in &tl.tweets {
            for id in &tweet.media_ids {
                *counts.entry(id.clone()).or_insert(0) += 1;
            }
        }
    }
    ranked(counts, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceMode {
    Quoted,
    Retweeted,
}

/// Most-referenced authors among tweets of the requested type. Keys render
/// as the author's latest-known screen name, falling back to the user id.
pub fn top_referenced_users(
    timelines: &[UserTimeline],
    k: usize,
    mode: ReferenceMode,
) -> RankedCounts {
    let wanted = match mode {
        ReferenceMode::Quoted => TweetType::Quote,
        ReferenceMode::Retweeted => TweetType::Retweet,
    };
    let names: BTreeMap<u64, &str> = timelines
        .iter()
        .map(|tl| (tl.user_id, tl.profile.screen_name.as_str()))
        .collect();
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for tl in timelines {
        for tweet in &tl.tweets {
            if tweet.tweet_type == wanted {
                if let Some(author) = tweet.referenced_author_id {
                    *counts.entry(author).or_insert(0) += 1;
                }
            }
        }
    }
    let rendered: BTreeMap<String, u64> = counts
        .into_iter()
        .map(|(id, c)| {
            let key = names
                .get(&id)
                .map(|n| n.to_string())
                .unwrap_or_else(|| id.to_string());
            (key, c)
        })
        .collect();
    ranked(rendered, k)
}
