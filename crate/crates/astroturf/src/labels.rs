//! Heuristic label suggestions: repetitive-text, no-sleep and
//! trending-hashtag-plus-URL rules mark bot candidates; official-client
//! accounts with sleep breaks and varied text mark human candidates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use astroturf_core::features::{column_names, FeatureVector};

use crate::analytics::SECS_PER_DAY;
use crate::store::UserTimeline;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bot,
    Human,
    Undecided,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Bot => "bot",
            Verdict::Human => "human",
            Verdict::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelSuggestion {
    pub account: u64,
    pub verdict: Verdict,
    pub fired_rules: Vec<&'static str>,
}

/// Column index lookup for the feature vector, resolved once.
pub struct Columns {
    pub duplicate_simhash_ratio: usize,
    pub avg_longest_break: usize,
    pub total_tweets: usize,
    pub official_client: usize,
}

impl Columns {
    pub fn resolve() -> Columns {
        let names = column_names();
        let idx = |name: &str| names.iter().position(|c| c == name).expect("known column");
        Columns {
            duplicate_simhash_ratio: idx("duplicate_simhash_ratio"),
            avg_longest_break: idx("avg_longest_break"),
            total_tweets: idx("total_tweets"),
            official_client: idx("official_client"),
        }
    }
}

/// Apply the bot rules (R1 repeated text, R2 no sleep, R3 trending+URL) and
/// the human rule (H1); conflicting or absent signals stay undecided.
pub fn suggest_labels(
    account: u64,
    features: &FeatureVector,
    timeline: &UserTimeline,
    trending: &BTreeMap<i64, Vec<String>>,
    cols: &Columns,
) -> LabelSuggestion {
    let v = &features.values;
    let mut fired = Vec::new();

    if v[cols.duplicate_simhash_ratio] >= 0.5 {
        fired.push("R1");
    }
    if v[cols.avg_longest_break] < 4.0 && v[cols.total_tweets] >= 200.0 {
        fired.push("R2");
    }
    let qualifying = timeline
        .tweets
        .iter()
        .filter(|t| {
            if t.urls.is_empty() {
                return false;
            }
            let day = t.created_at.timestamp().div_euclid(SECS_PER_DAY);
            let Some(top) = trending.get(&day) else {
                return false;
            };
            t.hashtags.iter().filter(|h| top.contains(h)).count() >= 2
        })
        .count();
    if qualifying as f64 >= 0.3 * timeline.tweets.len() as f64 && qualifying > 0 {
        fired.push("R3");
    }

    let human = v[cols.avg_longest_break] >= 6.0
        && v[cols.official_client] == 1.0
        && v[cols.duplicate_simhash_ratio] < 0.1;
    if human {
        fired.push("H1");
    }

    let any_bot = fired.iter().any(|r| r.starts_with('R'));
    let verdict = match (any_bot, human) {
        (true, false) => Verdict::Bot,
        (false, true) => Verdict::Human,
        _ => Verdict::Undecided,
    };
    LabelSuggestion {
        account,
        verdict,
        fired_rules: fired,
    }
}
