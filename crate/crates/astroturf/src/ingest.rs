//! Corpus ingestion: parse newline-delimited records, keep tweets matching
//! the search terms, drop tweets matching the exclusion terms, and group the
//! remainder into per-user timelines.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::store::{StoreStats, UserTimeline};
use crate::tweet::{parse_tweet, Tweet, UserProfile};

/// How search terms are matched against tweet text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    /// Whole-token match, token boundaries at non-alphanumerics.
    #[default]
    Token,
    /// Raw case-insensitive substring match.
    Substring,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusConfig {
    /// Lowercase search terms; a tweet must match at least one to be kept.
    pub search_terms: Vec<String>,
    /// Lowercase exclusion terms; any match removes the tweet.
    #[serde(default)]
    pub exclusion_terms: Vec<String>,
    #[serde(default)]
    pub match_mode: MatchMode,
}

/// True iff any term appears as a hashtag or matches the text under `mode`.
/// Terms must be lowercase.
pub fn matches_terms(tweet: &Tweet, terms: &[String], mode: MatchMode) -> bool {
    if terms.is_empty() {
        return false;
    }
    if tweet.hashtags.iter().any(|h| terms.iter().any(|t| t == h)) {
        return true;
    }
    match mode {
        MatchMode::Token => {
            let tokens = astroturf_core::text::tokenize(&tweet.text);
            terms.iter().any(|t| tokens.iter().any(|tok| tok == t))
        }
        MatchMode::Substring => {
            let lowered = tweet.text.to_lowercase();
            terms.iter().any(|t| lowered.contains(t.as_str()))
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionStats {
    pub kept: u64,
    pub excluded: u64,
}

impl ExclusionStats {
    pub fn excluded_fraction(&self) -> f64 {
        let total = self.kept + self.excluded;
        if total == 0 {
            0.0
        } else {
            self.excluded as f64 / total as f64
        }
    }
}

/// Drop every tweet matching an exclusion term. kept + excluded equals the
/// input count.
pub fn apply_exclusion(tweets: Vec<Tweet>, config: &CorpusConfig) -> (Vec<Tweet>, ExclusionStats) {
    let mut stats = ExclusionStats::default();
    let kept = tweets
        .into_iter()
        .filter(|t| {
            if matches_terms(t, &config.exclusion_terms, config.match_mode) {
                stats.excluded += 1;
                false
            } else {
                stats.kept += 1;
                true
            }
        })
        .collect();
    (kept, stats)
}

/// Group tweets by author, sort each timeline ascending by
/// (created_at, tweet_id), and keep the profile snapshot of the
/// chronologically last tweet. Independent of input order.
pub fn build_timelines(pairs: Vec<(Tweet, UserProfile)>) -> BTreeMap<u64, UserTimeline> {
    let mut grouped: BTreeMap<u64, Vec<(Tweet, UserProfile)>> = BTreeMap::new();
    for (tweet, profile) in pairs {
        grouped
            .entry(tweet.author_id)
            .or_default()
            .push((tweet, profile));
    }
    grouped
        .into_iter()
        .map(|(user_id, mut items)| {
            items.sort_by_key(|(t, _)| (t.created_at, t.tweet_id));
            let profile = items.last().expect("group non-empty").1.clone();
            let tweets = items.into_iter().map(|(t, _)| t).collect();
            (
                user_id,
                UserTimeline {
                    user_id,
                    profile,
                    tweets,
                },
            )
        })
        .collect()
}

/// Full ingest over input files: parse, filter by search terms, apply the
/// exclusion, and assemble timelines.
pub fn ingest_files(
    paths: &[impl AsRef<Path>],
    config: &CorpusConfig,
) -> Result<(BTreeMap<u64, UserTimeline>, StoreStats)> {
    let mut stats = StoreStats::default();
    let mut kept: Vec<(Tweet, UserProfile)> = Vec::new();
    for path in paths {
        let path = path.as_ref();
        let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match parse_tweet(&line) {
                Ok((tweet, profile)) => {
                    stats.parsed += 1;
                    if !matches_terms(&tweet, &config.search_terms, config.match_mode) {
                        stats.unmatched += 1;
                    } else if matches_terms(&tweet, &config.exclusion_terms, config.match_mode) {
                        stats.excluded += 1;
                    } else {
                        stats.kept += 1;
                        kept.push((tweet, profile));
                    }
                }
                Err(_) => stats.rejected += 1,
            }
        }
    }
    let timelines = build_timelines(kept);
    stats.users = timelines.len() as u64;
    Ok((timelines, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tweet(text: &str, hashtags: &[&str]) -> Tweet {
        let entities = hashtags
            .iter()
            .map(|h| format!(r#"{{"text":"{h}"}}"#))
            .collect::<Vec<_>>()
            .join(",");
        let line = format!(
            r#"{{"id":1,"user":{{"id":2,"screen_name":"a"}},"created_at":"2017-09-20T10:00:00Z","text":{},"entities":{{"hashtags":[{entities}]}}}}"#,
            serde_json::to_string(text).unwrap(),
        );
        parse_tweet(&line).unwrap().0
    }

    fn terms(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn token_match_hits_whole_words_only() {
        assert!(matches_terms(
            &tweet("Die CDU gewinnt", &[]),
            &terms(&["cdu"]),
            MatchMode::Token
        ));
        assert!(!matches_terms(
            &tweet("verafdet total", &[]),
            &terms(&["afd"]),
            MatchMode::Token
        ));
        assert!(matches_terms(
            &tweet("verafdet total", &[]),
            &terms(&["afd"]),
            MatchMode::Substring
        ));
    }

    #[test]
    fn hashtag_match_counts() {
        assert!(matches_terms(
            &tweet("ohne treffer im text", &["diegruenen"]),
            &terms(&["diegruenen"]),
            MatchMode::Token
        ));
    }

    #[test]
    fn exclusion_counts_add_up() {
        let config = CorpusConfig {
            search_terms: terms(&["x"]),
            exclusion_terms: terms(&["fdp"]),
            match_mode: MatchMode::Token,
        };
        let tweets: Vec<Tweet> = (0..100)
            .map(|i| {
                if i < 25 {
                    tweet("fdp und mehr", &[])
                } else {
                    tweet("andere worte", &[])
                }
            })
            .collect();
        let (kept, stats) = apply_exclusion(tweets, &config);
        assert_eq!(kept.len(), 75);
        assert_eq!(stats.excluded, 25);
        assert_eq!(stats.excluded_fraction(), 0.25);
    }

    #[test]
    fn empty_exclusion_list_is_identity() {
        let config = CorpusConfig {
            search_terms: terms(&["x"]),
            exclusion_terms: vec![],
            match_mode: MatchMode::Token,
        };
        let (kept, stats) = apply_exclusion(vec![tweet("a b", &[])], &config);
        assert_eq!(kept.len(), 1);
        assert_eq!(stats.excluded, 0);
    }

    #[test]
    fn timelines_sorted_and_latest_name_kept() {
        let early = r#"{"id":10,"user":{"id":5,"screen_name":"old_name"},"created_at":"2017-09-01T10:00:00Z","text":"first"}"#;
        let late = r#"{"id":11,"user":{"id":5,"screen_name":"new_name"},"created_at":"2017-09-02T10:00:00Z","text":"second"}"#;
        // Feed out of order.
        let pairs = vec![parse_tweet(late).unwrap(), parse_tweet(early).unwrap()];
        let map = build_timelines(pairs);
        let timeline = &map[&5];
        assert_eq!(timeline.tweets[0].text, "first");
        assert_eq!(timeline.tweets[1].text, "second");
        assert_eq!(timeline.profile.screen_name, "new_name");
    }
}
