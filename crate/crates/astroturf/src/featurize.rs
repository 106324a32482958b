//! Corpus-wide context pass and per-account feature extraction.
//!
//! The context pass resolves referenced-tweet timestamps, collects client
//! token document frequencies, the corpus span and the fallback medians.
//! Per-account extraction is independent and runs in parallel; results are
//! re-sorted by user id so scheduling never changes the output.

use std::collections::BTreeMap;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use astroturf_core::features::{
    extract_features, CorpusContext, FeatureVector, ProfileRecord, TweetKind, TweetRecord,
};
use astroturf_core::text::tokenize;
use astroturf_core::timefeat::median;

use crate::analytics::SECS_PER_DAY;
use crate::store::UserTimeline;
use crate::tweet::{Tweet, TweetType};

const SECS_PER_HOUR: f64 = 3600.0;

fn kind_of(t: TweetType) -> TweetKind {
    match t {
        TweetType::Original => TweetKind::Original,
        TweetType::Retweet => TweetKind::Retweet,
        TweetType::Quote => TweetKind::Quote,
        TweetType::Reply => TweetKind::Reply,
    }
}

/// Convert one stored tweet into the extraction record, resolving the
/// referenced tweet's timestamp against the corpus when present.
pub fn to_record(tweet: &Tweet, tweet_ts: &BTreeMap<u64, i64>) -> TweetRecord {
    TweetRecord {
        tweet_id: tweet.tweet_id,
        unix_ts: tweet.created_at.timestamp(),
        kind: kind_of(tweet.tweet_type),
        text: tweet.text.clone(),
        hashtags: tweet.hashtags.clone(),
        urls: tweet.urls.clone(),
        mentions: tweet.mentions.clone(),
        client: tweet.client_source.clone(),
        referenced_author: tweet.referenced_author_id,
        referenced_ts: tweet
            .referenced_tweet_id
            .and_then(|id| tweet_ts.get(&id).copied()),
    }
}

fn to_profile(timeline: &UserTimeline) -> ProfileRecord {
    let p = &timeline.profile;
    ProfileRecord {
        screen_name: p.screen_name.clone(),
        display_name: p.display_name.clone(),
        followers: p.followers,
        friends: p.friends,
        verified: p.verified,
        default_profile_image: p.default_profile_image,
        default_user_image: p.default_user_image,
        geo_enabled: p.geo_enabled,
    }
}

/// Read-only pass building the corpus context shared by every extraction.
pub fn build_context(timelines: &[UserTimeline]) -> (CorpusContext, BTreeMap<u64, i64>) {
    let mut tweet_ts: BTreeMap<u64, i64> = BTreeMap::new();
    let mut span_start = i64::MAX;
    let mut span_end = i64::MIN;
    for tl in timelines {
        for t in &tl.tweets {
            let ts = t.created_at.timestamp();
            tweet_ts.insert(t.tweet_id, ts);
            span_start = span_start.min(ts);
            span_end = span_end.max(ts);
        }
    }
    if span_start > span_end {
        span_start = 0;
        span_end = 0;
    }

    // Documents are accounts: each account bumps a client token at most once.
    let mut client_token_df: BTreeMap<String, u32> = BTreeMap::new();
    for tl in timelines {
        let mut tokens: Vec<String> = tl
            .tweets
            .iter()
            .flat_map(|t| tokenize(&t.client_source))
            .collect();
        tokens.sort();
        tokens.dedup();
        for token in tokens {
            *client_token_df.entry(token).or_insert(0) += 1;
        }
    }

    let mut retweet_deltas = Vec::new();
    let mut quote_deltas = Vec::new();
    for tl in timelines {
        for t in &tl.tweets {
            if let Some(ref_ts) = t.referenced_tweet_id.and_then(|id| tweet_ts.get(&id)) {
                let delta = (t.created_at.timestamp() - ref_ts) as f64 / SECS_PER_HOUR;
                match t.tweet_type {
                    TweetType::Retweet => retweet_deltas.push(delta),
                    TweetType::Quote => quote_deltas.push(delta),
                    _ => {}
                }
            }
        }
    }

    let ctx = CorpusContext {
        span_start,
        span_end,
        client_token_df,
        n_accounts: timelines.len().max(1) as u32,
        fallback_median_retweet_hours: median(&mut retweet_deltas),
        fallback_median_quote_hours: median(&mut quote_deltas),
    };
    (ctx, tweet_ts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccountFeatures {
    pub user_id: u64,
    pub vector: FeatureVector,
}

/// Extract features for every account with at least `min_tweets` tweets.
/// Output is sorted by user id.
pub fn extract_all(timelines: &[UserTimeline], min_tweets: usize) -> Result<Vec<AccountFeatures>> {
    let (ctx, tweet_ts) = build_context(timelines);
    let mut rows: Vec<AccountFeatures> = timelines
        .par_iter()
        .filter(|tl| tl.tweets.len() >= min_tweets.max(1))
        .map(|tl| {
            let records: Vec<TweetRecord> =
                tl.tweets.iter().map(|t| to_record(t, &tweet_ts)).collect();
            let vector = extract_features(&records, &to_profile(tl), &ctx)
                .expect("timeline non-empty by filter");
            AccountFeatures {
                user_id: tl.user_id,
                vector,
            }
        })
        .collect();
    rows.sort_by_key(|r| r.user_id);
    Ok(rows)
}

/// Top-k hashtags per UTC day, the stand-in for trending topics.
pub fn daily_trending(timelines: &[UserTimeline], k: usize) -> BTreeMap<i64, Vec<String>> {
    let mut per_day: BTreeMap<i64, BTreeMap<String, u64>> = BTreeMap::new();
    for tl in timelines {
        for t in &tl.tweets {
            let day = t.created_at.timestamp().div_euclid(SECS_PER_DAY);
            let counts = per_day.entry(day).or_default();
            for tag in &t.hashtags {
                *counts.entry(tag.clone()).or_insert(0) += 1;
            }
        }
    }
    per_day
        .into_iter()
        .map(|(day, counts)| {
            let mut entries: Vec<(String, u64)> = counts.into_iter().collect();
            entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            entries.truncate(k);
            (day, entries.into_iter().map(|(tag, _)| tag).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::build_timelines;
    use crate::tweet::parse_tweet;

    fn corpus(lines: &[String]) -> Vec<UserTimeline> {
        let pairs = lines.iter().map(|l| parse_tweet(l).unwrap()).collect();
        build_timelines(pairs).into_values().collect()
    }

    #[test]
    fn context_resolves_referenced_timestamps() {
        let lines = vec![
            r#"{"id":1,"user":{"id":5,"screen_name":"a"},"created_at":"2017-09-01T10:00:00Z","text":"orig"}"#.to_string(),
            r#"{"id":2,"user":{"id":6,"screen_name":"b"},"created_at":"2017-09-01T12:00:00Z","text":"rt","retweeted_status":{"id":1,"user":{"id":5}}}"#.to_string(),
        ];
        let timelines = corpus(&lines);
        let (ctx, tweet_ts) = build_context(&timelines);
        assert_eq!(ctx.n_accounts, 2);
        assert_eq!(ctx.fallback_median_retweet_hours, 2.0);
        let rt = timelines.iter().find(|tl| tl.user_id == 6).unwrap();
        let record = to_record(&rt.tweets[0], &tweet_ts);
        assert_eq!(record.referenced_ts, Some(tweet_ts[&1]));
    }

    #[test]
    fn min_tweets_filters_accounts() {
        let lines = vec![
            r#"{"id":1,"user":{"id":5,"screen_name":"a"},"created_at":"2017-09-01T10:00:00Z","text":"one"}"#.to_string(),
            r#"{"id":2,"user":{"id":6,"screen_name":"b"},"created_at":"2017-09-01T11:00:00Z","text":"two"}"#.to_string(),
            r#"{"id":3,"user":{"id":6,"screen_name":"b"},"created_at":"2017-09-01T12:00:00Z","text":"three"}"#.to_string(),
        ];
        let timelines = corpus(&lines);
        let rows = extract_all(&timelines, 2).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].user_id, 6);
    }

    #[test]
    fn trending_ranks_per_day() {
        let lines = vec![
            r#"{"id":1,"user":{"id":5,"screen_name":"a"},"created_at":"2017-09-01T10:00:00Z","text":"t","entities":{"hashtags":[{"text":"big"},{"text":"big"},{"text":"small"}]}}"#.to_string(),
        ];
        let timelines = corpus(&lines);
        let trending = daily_trending(&timelines, 1);
        let day = timelines[0].tweets[0].created_at.timestamp() / SECS_PER_DAY;
        assert_eq!(trending[&day], vec!["big".to_string()]);
    }
}
