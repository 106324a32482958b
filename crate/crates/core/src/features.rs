//! The 44-feature account profile, grouped into metadata-, text-, time- and
//! user-based blocks. The client string is encoded as a 16-bucket hashed
//! tf-idf block, so the numeric vector carries 43 scalars + 16 = 59 columns
//! while the named feature count stays 44.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::compress::zip_ratio;
use crate::simhash::{hamming, simhash64};
use crate::text::{fnv1a64, tokenize};
use crate::timefeat::{chi_square_seconds, longest_breaks, median, WINDOW_48H_SECS};

/// Fingerprints closer than this Hamming distance count as near-duplicates.
pub const SIMHASH_SIMILAR_MAX_DISTANCE: u32 = 3;

/// Width of the hashed client tf-idf block.
pub const CLIENT_TFIDF_BUCKETS: usize = 16;

/// Numeric width of a feature vector: 43 scalars plus the tf-idf block.
pub const VECTOR_LEN: usize = 43 + CLIENT_TFIDF_BUCKETS;

const SECS_PER_DAY: f64 = 86_400.0;
const SECS_PER_HOUR: f64 = 3600.0;

/// Client names Twitter ships itself; everything else is third-party or custom.
pub const OFFICIAL_CLIENTS: [&str; 6] = [
    "twitter web client",
    "twitter for iphone",
    "twitter for android",
    "twitter for ipad",
    "twitter lite",
    "tweetdeck",
];

/// The 44 engineered feature names, in vector order.
pub const FEATURE_NAMES: [&str; 44] = [
    "avg_tweets_per_day",
    "total_tweets",
    "orig_ratio",
    "retweet_ratio",
    "quote_ratio",
    "reply_ratio",
    "twitter_client",
    "official_client",
    "total_clients",
    "unique_users_retweet_ratio",
    "unique_users_quotes_ratio",
    "unique_users_reply_ratio",
    "longest_conversation",
    "unique_users_conv_ratio",
    "avg_text_len",
    "std_text_len",
    "url_ratio",
    "unique_url_ratio",
    "unique_url_host_ratio",
    "vocabulary_diversity",
    "mentions_ratio",
    "hashtags_ratio",
    "unique_mentions_ratio",
    "unique_hashtags_ratio",
    "ending_hashtags_ratio",
    "starting_mention_ratio",
    "starting_rt_ratio",
    "zip_ratio",
    "user_simhash",
    "avg_duplicate_simhash",
    "duplicate_simhash_ratio",
    "chi_square_seconds",
    "avg_longest_break",
    "avg_second_longest_break",
    "median_retweet",
    "median_quote",
    "total_friends",
    "total_followers",
    "friend_follower_ratio",
    "has_default_profile_image",
    "has_default_user_image",
    "is_verified",
    "has_geo_coordinates",
    "self_bot",
];

/// Column names of the 59-wide numeric vector (tf-idf block expanded).
pub fn column_names() -> Vec<String> {
    let mut names = Vec::with_capacity(VECTOR_LEN);
    for name in FEATURE_NAMES {
        if name == "twitter_client" {
            for i in 0..CLIENT_TFIDF_BUCKETS {
                names.push(alloc::format!("twitter_client_tfidf_{i}"));
            }
        } else {
            names.push(name.to_string());
        }
    }
    names
}

/// Kind of a tweet; the classification is a total partition with
/// retweet > quote > reply precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TweetKind {
    Original,
    Retweet,
    Quote,
    Reply,
}

/// One tweet, prepared for feature extraction. `referenced_author` is the
/// retweeted/quoted author, or the reply partner for replies.
/// `referenced_ts` is the referenced tweet's creation time when that tweet
/// is present in the corpus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TweetRecord {
    pub tweet_id: u64,
    pub unix_ts: i64,
    pub kind: TweetKind,
    pub text: String,
    pub hashtags: Vec<String>,
    pub urls: Vec<String>,
    pub mentions: Vec<u64>,
    pub client: String,
    pub referenced_author: Option<u64>,
    pub referenced_ts: Option<i64>,
}

/// Profile snapshot of the account being profiled.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub screen_name: String,
    pub display_name: String,
    pub followers: u64,
    pub friends: u64,
    pub verified: bool,
    pub default_profile_image: bool,
    pub default_user_image: bool,
    pub geo_enabled: bool,
}

/// Corpus-wide context computed in a prior read-only pass.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusContext {
    pub span_start: i64,
    pub span_end: i64,
    /// Document frequency of client-name tokens (documents = accounts).
    pub client_token_df: BTreeMap<String, u32>,
    pub n_accounts: u32,
    /// Corpus-wide medians used when an account has no resolvable pairs.
    pub fallback_median_retweet_hours: f64,
    pub fallback_median_quote_hours: f64,
}

impl Default for CorpusContext {
    fn default() -> Self {
        CorpusContext {
            span_start: 0,
            span_end: 0,
            client_token_df: BTreeMap::new(),
            n_accounts: 1,
            fallback_median_retweet_hours: 0.0,
            fallback_median_quote_hours: 0.0,
        }
    }
}

/// Fixed-length numeric feature vector (59 columns, 44 named features).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureError {
    EmptyTimeline,
}

impl core::fmt::Display for FeatureError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FeatureError::EmptyTimeline => {
                write!(f, "cannot extract features from an empty timeline")
            }
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Host part of a URL: the text between `://` (if any) and the first
/// `/`, `?` or `#`, lowercased.
pub fn url_host(url: &str) -> String {
    let rest = match url.find("://") {
        Some(pos) => &url[pos + 3..],
        None => url,
    };
    let end = rest.find(['/', '?', '#']).unwrap_or(rest.len());
    rest[..end].to_lowercase()
}

pub fn is_official_client(client: &str) -> bool {
    let lowered = client.to_lowercase();
    OFFICIAL_CLIENTS.contains(&lowered.as_str())
}

/// Extract the full feature vector for one account.
///
/// Pure in (timeline, profile, ctx); the records are re-sorted by
/// (timestamp, tweet id) internally, so arrival order never matters.
pub fn extract_features(
    timeline: &[TweetRecord],
    profile: &ProfileRecord,
    ctx: &CorpusContext,
) -> Result<FeatureVector, FeatureError> {
    if timeline.is_empty() {
        return Err(FeatureError::EmptyTimeline);
    }
    let mut tweets: Vec<&TweetRecord> = timeline.iter().collect();
    tweets.sort_by_key(|t| (t.unix_ts, t.tweet_id));
    let n = tweets.len();
    let nf = n as f64;

    let mut values = Vec::with_capacity(VECTOR_LEN);

    // -- metadata ----------------------------------------------------------
    let span_days = ((ctx.span_end - ctx.span_start) as f64 / SECS_PER_DAY).max(1.0);
    values.push(nf / span_days); // avg_tweets_per_day
    values.push(nf); // total_tweets

    let count_kind = |k: TweetKind| tweets.iter().filter(|t| t.kind == k).count();
    let n_orig = count_kind(TweetKind::Original);
    let n_retweet = count_kind(TweetKind::Retweet);
    let n_quote = count_kind(TweetKind::Quote);
    let n_reply = count_kind(TweetKind::Reply);
    values.push(ratio(n_orig, n));
    values.push(ratio(n_retweet, n));
    values.push(ratio(n_quote, n));
    values.push(ratio(n_reply, n));

    values.extend_from_slice(&client_tfidf(&tweets, ctx));

    let official = tweets
        .iter()
        .filter(|t| is_official_client(&t.client))
        .count();
    values.push(if official * 2 > n { 1.0 } else { 0.0 }); // official_client

    let distinct_clients: BTreeSet<&str> = tweets.iter().map(|t| t.client.as_str()).collect();
    values.push(distinct_clients.len() as f64); // total_clients

    let distinct_refs = |k: TweetKind| -> usize {
        tweets
            .iter()
            .filter(|t| t.kind == k)
            .filter_map(|t| t.referenced_author)
            .collect::<BTreeSet<u64>>()
            .len()
    };
    values.push(ratio(distinct_refs(TweetKind::Retweet), n_retweet));
    values.push(ratio(distinct_refs(TweetKind::Quote), n_quote));
    values.push(ratio(distinct_refs(TweetKind::Reply), n_reply));

    // Longest run of consecutive replies to one partner.
    let mut longest_conv = 0usize;
    let mut run = 0usize;
    let mut run_partner: Option<u64> = None;
    for t in &tweets {
        let partner = if t.kind == TweetKind::Reply {
            t.referenced_author
        } else {
            None
        };
        match partner {
            Some(p) if run_partner == Some(p) => run += 1,
            Some(p) => {
                run_partner = Some(p);
                run = 1;
            }
            None => {
                run_partner = None;
                run = 0;
            }
        }
        longest_conv = longest_conv.max(run);
    }
    values.push(longest_conv as f64); // longest_conversation
    values.push(ratio(distinct_refs(TweetKind::Reply), n_reply)); // unique_users_conv_ratio

    // -- text --------------------------------------------------------------
    let lens: Vec<f64> = tweets
        .iter()
        .map(|t| t.text.chars().count() as f64)
        .collect();
    let mean_len = lens.iter().sum::<f64>() / nf;
    let var_len = lens
        .iter()
        .map(|l| (l - mean_len) * (l - mean_len))
        .sum::<f64>()
        / nf;
    values.push(mean_len); // avg_text_len
    values.push(libm::sqrt(var_len)); // std_text_len

    values.push(ratio(
        tweets.iter().filter(|t| !t.urls.is_empty()).count(),
        n,
    )); // url_ratio
    values.push(first_seen_ratio(&tweets, |t| t.urls.to_vec())); // unique_url_ratio
    values.push(first_seen_ratio(&tweets, |t| {
        t.urls.iter().map(|u| url_host(u)).collect()
    })); // unique_url_host_ratio

    let mut vocab: BTreeSet<String> = BTreeSet::new();
    let mut total_tokens = 0usize;
    for t in &tweets {
        for token in tokenize(&t.text) {
            total_tokens += 1;
            vocab.insert(token);
        }
    }
    values.push(if total_tokens == 0 {
        1.0
    } else {
        vocab.len() as f64 / total_tokens as f64
    }); // vocabulary_diversity

    values.push(ratio(
        tweets.iter().filter(|t| !t.mentions.is_empty()).count(),
        n,
    )); // mentions_ratio
    values.push(ratio(
        tweets.iter().filter(|t| !t.hashtags.is_empty()).count(),
        n,
    )); // hashtags_ratio
    values.push(first_seen_ratio(&tweets, |t| {
        t.mentions.iter().map(|m| m.to_string()).collect()
    })); // unique_mentions_ratio
    values.push(first_seen_ratio(&tweets, |t| t.hashtags.to_vec())); // unique_hashtags_ratio

    values.push(ratio(
        tweets.iter().filter(|t| ends_with_hashtag(&t.text)).count(),
        n,
    )); // ending_hashtags_ratio
    values.push(ratio(
        tweets
            .iter()
            .filter(|t| t.text.trim_start().starts_with('@'))
            .count(),
        n,
    )); // starting_mention_ratio
    values.push(ratio(
        tweets.iter().filter(|t| starts_with_rt(&t.text)).count(),
        n,
    )); // starting_rt_ratio

    let texts: Vec<&str> = tweets.iter().map(|t| t.text.as_str()).collect();
    values.push(zip_ratio(&texts)); // zip_ratio

    let joined = texts.join("\n");
    values.push(simhash64(&joined).count_ones() as f64 / 64.0); // user_simhash

    // Near-duplicate statistics, O(n^2) over fingerprints. Timelines are
    // account-sized, not corpus-sized, so this stays cheap.
    let fps: Vec<u64> = tweets.iter().map(|t| simhash64(&t.text)).collect();
    let mut cluster_sum = 0usize;
    let mut with_sibling = 0usize;
    for i in 0..n {
        let similar = fps
            .iter()
            .filter(|&&fp| hamming(fps[i], fp) <= SIMHASH_SIMILAR_MAX_DISTANCE)
            .count(); // includes self
        cluster_sum += similar;
        if similar > 1 {
            with_sibling += 1;
        }
    }
    values.push(cluster_sum as f64 / nf); // avg_duplicate_simhash
    values.push(ratio(with_sibling, n)); // duplicate_simhash_ratio

    // -- time ---------------------------------------------------------------
    let timestamps: Vec<i64> = tweets.iter().map(|t| t.unix_ts).collect();
    values.push(chi_square_seconds(&timestamps));
    let (longest, second) = longest_breaks(&timestamps, WINDOW_48H_SECS);
    values.push(longest);
    values.push(second);

    let median_pair = |k: TweetKind, fallback: f64| -> f64 {
        let mut deltas: Vec<f64> = tweets
            .iter()
            .filter(|t| t.kind == k)
            .filter_map(|t| {
                t.referenced_ts
                    .map(|r| (t.unix_ts - r) as f64 / SECS_PER_HOUR)
            })
            .collect();
        if deltas.is_empty() {
            fallback
        } else {
            median(&mut deltas)
        }
    };
    values.push(median_pair(
        TweetKind::Retweet,
        ctx.fallback_median_retweet_hours,
    ));
    values.push(median_pair(
        TweetKind::Quote,
        ctx.fallback_median_quote_hours,
    ));

    // -- user ----------------------------------------------------------------
    values.push(profile.friends as f64);
    values.push(profile.followers as f64);
    let total = profile.friends + profile.followers;
    values.push(if total == 0 {
        0.0
    } else {
        profile.friends as f64 / total as f64
    }); // friend_follower_ratio
    values.push(profile.default_profile_image as u8 as f64);
    values.push(profile.default_user_image as u8 as f64);
    values.push(profile.verified as u8 as f64);
    values.push(profile.geo_enabled as u8 as f64);
    let names = alloc::format!(
        "{} {}",
        profile.screen_name.to_lowercase(),
        profile.display_name.to_lowercase()
    );
    values.push(names.contains("bot") as u8 as f64); // self_bot

    debug_assert_eq!(values.len(), VECTOR_LEN);
    Ok(FeatureVector { values })
}

/// Fraction of tweets (in time order) that introduce at least one value not
/// seen in any earlier tweet of the timeline. Always <= the fraction of
/// tweets carrying any value at all.
fn first_seen_ratio<F>(tweets: &[&TweetRecord], extract: F) -> f64
where
    F: Fn(&TweetRecord) -> Vec<String>,
{
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut introducing = 0usize;
    for t in tweets {
        let mut fresh = false;
        for value in extract(t) {
            if seen.insert(value) {
                fresh = true;
            }
        }
        if fresh {
            introducing += 1;
        }
    }
    ratio(introducing, tweets.len())
}

fn ends_with_hashtag(text: &str) -> bool {
    match text.split_whitespace().last() {
        Some(token) => token.starts_with('#') && token.len() > 1,
        None => false,
    }
}

fn starts_with_rt(text: &str) -> bool {
    let mut parts = text.split_whitespace();
    matches!(parts.next(), Some(first) if first.eq_ignore_ascii_case("rt"))
}

/// Hashed tf-idf block over client-name tokens. Term frequency is relative
/// to the account's total client tokens; document frequency comes from the
/// corpus pass (documents = accounts).
fn client_tfidf(tweets: &[&TweetRecord], ctx: &CorpusContext) -> [f64; CLIENT_TFIDF_BUCKETS] {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut total = 0usize;
    for t in tweets {
        for token in tokenize(&t.client) {
            *counts.entry(token).or_insert(0) += 1;
            total += 1;
        }
    }
    let mut block = [0.0; CLIENT_TFIDF_BUCKETS];
    if total == 0 {
        return block;
    }
    let n_docs = ctx.n_accounts.max(1) as f64;
    for (token, count) in counts {
        let df = ctx.client_token_df.get(&token).copied().unwrap_or(0) as f64;
        let idf = libm::log((1.0 + n_docs) / (1.0 + df)) + 1.0;
        let tf = count as f64 / total as f64;
        let bucket = (fnv1a64(token.as_bytes()) % CLIENT_TFIDF_BUCKETS as u64) as usize;
        block[bucket] += tf * idf;
    }
    block
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rec(id: u64, ts: i64, kind: TweetKind, text: &str) -> TweetRecord {
        TweetRecord {
            tweet_id: id,
            unix_ts: ts,
            kind,
            text: text.to_string(),
            hashtags: vec![],
            urls: vec![],
            mentions: vec![],
            client: "Twitter Web Client".to_string(),
            referenced_author: None,
            referenced_ts: None,
        }
    }

    fn idx(name: &str) -> usize {
        column_names().iter().position(|c| c == name).unwrap()
    }

    #[test]
    fn vector_has_expected_width() {
        assert_eq!(column_names().len(), VECTOR_LEN);
        assert_eq!(FEATURE_NAMES.len(), 44);
    }

    #[test]
    fn single_tweet_with_url() {
        let mut tweet = rec(1, 1000, TweetKind::Original, "hello");
        tweet.urls.push("https://example.org/x".to_string());
        let ctx = CorpusContext::default();
        let fv = extract_features(&[tweet], &ProfileRecord::default(), &ctx).unwrap();
        assert_eq!(fv.values[idx("url_ratio")], 1.0);
        assert_eq!(fv.values[idx("total_tweets")], 1.0);
        assert_eq!(fv.values[idx("retweet_ratio")], 0.0);
    }

    #[test]
    fn duplicate_texts_register_as_similar() {
        let tweets = vec![
            rec(1, 0, TweetKind::Original, "exactly the same words"),
            rec(2, 60, TweetKind::Original, "exactly the same words"),
        ];
        let fv = extract_features(
            &tweets,
            &ProfileRecord::default(),
            &CorpusContext::default(),
        )
        .unwrap();
        assert_eq!(fv.values[idx("avg_duplicate_simhash")], 2.0);
        assert_eq!(fv.values[idx("duplicate_simhash_ratio")], 1.0);
        assert!(fv.values[idx("vocabulary_diversity")] < 1.0);
    }

    #[test]
    fn empty_timeline_is_an_error() {
        let err = extract_features(&[], &ProfileRecord::default(), &CorpusContext::default());
        assert_eq!(err.unwrap_err(), FeatureError::EmptyTimeline);
    }

    #[test]
    fn arrival_order_does_not_matter() {
        let a = rec(1, 100, TweetKind::Original, "first words here");
        let b = rec(2, 50, TweetKind::Reply, "second tweet text");
        let ctx = CorpusContext::default();
        let profile = ProfileRecord::default();
        let fwd = extract_features(&[a.clone(), b.clone()], &profile, &ctx).unwrap();
        let rev = extract_features(&[b, a], &profile, &ctx).unwrap();
        assert_eq!(fwd, rev);
    }

    #[test]
    fn self_bot_detected_in_display_name() {
        let tweet = rec(1, 0, TweetKind::Original, "hi");
        let profile = ProfileRecord {
            display_name: "My roBOT army".to_string(),
            ..ProfileRecord::default()
        };
        let fv = extract_features(&[tweet], &profile, &CorpusContext::default()).unwrap();
        assert_eq!(fv.values[idx("self_bot")], 1.0);
    }
}
