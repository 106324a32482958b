//! Seeded generator of labeled synthetic corpora. Human accounts post only
//! between 07:00 and 24:00 UTC, so every 48h window contains a 7h sleep
//! gap; bot archetypes (scheduler, repeater, amplifier) never sleep.
//! Fully deterministic for a fixed seed: accounts are generated in a fixed
//! order, each from its own sub-seeded stream.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use astroturf_core::rng::{gen_f64, gen_index, seeded, subseed, Rng};

use crate::trolls::InteractionStats;
use crate::tweet::{to_input_record, Tweet, TweetType, UserProfile};

/// Corpus span origin: 2017-09-01T00:00:00Z.
pub const SPAN_START: i64 = 1_504_224_000;
const SECS_PER_DAY: i64 = 86_400;

const WORDS: [&str; 48] = [
    "wahl",
    "stimme",
    "debatte",
    "koalition",
    "programm",
    "zukunft",
    "land",
    "partei",
    "bürger",
    "politik",
    "reform",
    "steuern",
    "arbeit",
    "familie",
    "sicherheit",
    "europa",
    "klima",
    "energie",
    "bildung",
    "rente",
    "digital",
    "grenzen",
    "freiheit",
    "gerecht",
    "heute",
    "morgen",
    "gemeinsam",
    "stark",
    "neu",
    "echt",
    "klar",
    "wichtig",
    "berlin",
    "bund",
    "kanzler",
    "mandat",
    "umfrage",
    "prozent",
    "kampagne",
    "plakat",
    "rede",
    "interview",
    "termin",
    "besuch",
    "thema",
    "frage",
    "antwort",
    "plan",
];

const PARTY_TOKENS: [&str; 7] = ["afd", "cdu", "csu", "spd", "gruene", "linke", "btw17"];

const HASHTAG_POOL: [&str; 10] = [
    "btw17",
    "afd",
    "spd",
    "cdu",
    "merkel",
    "wahl",
    "politik",
    "berlin",
    "tvduell",
    "bundestag",
];

const OFFICIAL_CLIENT_POOL: [&str; 4] = [
    "Twitter Web Client",
    "Twitter for iPhone",
    "Twitter for Android",
    "Twitter Lite",
];

const BOT_CLIENT_POOL: [&str; 4] = [
    "AutoPoster 3.1",
    "CampaignBlast Pro",
    "MassTweeter",
    "SocialFlow X",
];

const MEDIA_POOL_SIZE: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BotWeights {
    pub scheduler: f64,
    pub repeater: f64,
    pub amplifier: f64,
}

impl Default for BotWeights {
    fn default() -> Self {
        BotWeights {
            scheduler: 0.35,
            repeater: 0.35,
            amplifier: 0.3,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrollPlant {
    pub count: usize,
    /// How many planted trolls change their screen name mid-corpus.
    pub renamed: usize,
    pub retweets_by_non_trolls: usize,
    pub quotes_by_non_trolls: usize,
    pub retweets_by_trolls: usize,
    pub quotes_by_trolls: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub n_humans: usize,
    pub n_bots: usize,
    pub span_days: u32,
    pub seed: u64,
    #[serde(default)]
    pub bot_weights: BotWeights,
    /// Fraction of all tweets carrying the token "fdp" (exclusion fodder).
    #[serde(default)]
    pub fdp_fraction: f64,
    #[serde(default)]
    pub troll: TrollPlant,
    /// Scheduler-bot posting intervals in seconds (multiples of 60 keep the
    /// seconds field constant).
    #[serde(default = "default_intervals")]
    pub scheduler_intervals: Vec<i64>,
}

fn default_intervals() -> Vec<i64> {
    vec![3600, 5400, 7200]
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_humans: 800,
            n_bots: 200,
            span_days: 30,
            seed: 42,
            bot_weights: BotWeights::default(),
            fdp_fraction: 0.0,
            troll: TrollPlant::default(),
            scheduler_intervals: default_intervals(),
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let w = &self.bot_weights;
        let sum = w.scheduler + w.repeater + w.amplifier;
        if (sum - 1.0).abs() > 1e-9 {
            bail!("bot archetype weights must sum to 1 (got {sum})");
        }
        if self.span_days == 0 {
            bail!("span_days must be >= 1");
        }
        if !(0.0..=1.0).contains(&self.fdp_fraction) {
            bail!("fdp_fraction must lie in [0, 1]");
        }
        if self.troll.renamed > self.troll.count {
            bail!("renamed trolls cannot exceed planted trolls");
        }
        let celebs = celebrity_count(self.n_humans);
        if self.troll.count > self.n_humans.saturating_sub(celebs) {
            bail!("not enough non-celebrity humans to plant trolls");
        }
        if self.scheduler_intervals.is_empty() || self.scheduler_intervals.iter().any(|&i| i <= 0) {
            bail!("scheduler intervals must be positive");
        }
        Ok(())
    }
}

fn celebrity_count(n_humans: usize) -> usize {
    n_humans.min(20)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserTruth {
    pub label: String,
    pub archetype: String,
    pub tweets: u64,
    pub originals: u64,
    pub retweets: u64,
    pub quotes: u64,
    pub replies: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrollTruth {
    pub ids: Vec<u64>,
    pub renamed_ids: Vec<u64>,
    pub interactions: InteractionStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthTruth {
    pub per_user: BTreeMap<u64, UserTruth>,
    pub hashtag_counts: BTreeMap<String, u64>,
    pub total_tweets: u64,
    pub fdp_tweets: u64,
    pub bot_fraction: f64,
    pub trolls: TrollTruth,
}

pub struct SynthOutput {
    /// All generated records in deterministic order.
    pub records: Vec<(Tweet, UserProfile)>,
    pub truth: SynthTruth,
    /// (user_id, is_bot) for every generated account.
    pub labels: Vec<(u64, bool)>,
}

#[derive(Clone)]
struct CelebTweet {
    tweet_id: u64,
    author_id: u64,
    ts: i64,
    text: String,
    hashtags: Vec<String>,
    media_ids: Vec<String>,
}

struct Gen<'a> {
    config: &'a SynthConfig,
    next_tweet_id: u64,
    span_secs: i64,
    celeb_pool: Vec<CelebTweet>,
    troll_pool: Vec<CelebTweet>,
    records: Vec<(Tweet, UserProfile)>,
    archetypes: BTreeMap<u64, &'static str>,
}

impl<'a> Gen<'a> {
    fn fresh_id(&mut self) -> u64 {
        self.next_tweet_id += 1;
        self.next_tweet_id
    }

    fn markov_text(&self, rng: &mut Rng, vocab_offset: usize, vocab_len: usize) -> String {
        let len = 5 + gen_index(rng, 8);
        let mut state = gen_index(rng, vocab_len);
        let mut words = Vec::with_capacity(len + 1);
        for _ in 0..len {
            words.push(WORDS[(vocab_offset + state) % WORDS.len()]);
            // order-1 chain: the next word depends on the current one
            state = (state + 1 + gen_index(rng, 7)) % vocab_len;
        }
        // every tweet carries a search-term token
        let party = PARTY_TOKENS[gen_index(rng, PARTY_TOKENS.len())];
        let pos = gen_index(rng, words.len() + 1);
        words.insert(pos, party);
        words.join(" ")
    }

    fn random_hashtags(&self, rng: &mut Rng) -> Vec<String> {
        if gen_f64(rng) < 0.5 {
            let n = 1 + gen_index(rng, 2);
            (0..n)
                .map(|_| {
                    // squared draw skews towards the head of the pool
                    let r = gen_index(rng, HASHTAG_POOL.len() * HASHTAG_POOL.len());
                    HASHTAG_POOL[(r as f64).sqrt() as usize % HASHTAG_POOL.len()].to_string()
                })
                .collect()
        } else {
            Vec::new()
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn profile(
        &self,
        rng: &mut Rng,
        user_id: u64,
        screen_name: &str,
        display_name: &str,
        followers: u64,
        friends: u64,
        verified: bool,
    ) -> UserProfile {
        // creation date somewhere in 2010..2017, stable per account because
        // the caller draws it from the account stream before tweet noise
        let created = 1_262_304_000 + gen_index(rng, (7 * 365 * SECS_PER_DAY) as usize) as i64;
        UserProfile {
            user_id,
            screen_name: screen_name.to_string(),
            account_created_at: Some(ts_to_dt(created)),
            followers,
            friends,
            verified,
            default_profile_image: gen_f64(rng) < 0.1,
            default_user_image: gen_f64(rng) < 0.1,
            geo_enabled: gen_f64(rng) < 0.2,
            display_name: display_name.to_string(),
        }
    }

    fn push_tweet(&mut self, tweet: Tweet, profile: UserProfile) {
        self.records.push((tweet, profile));
    }
}

fn ts_to_dt(ts: i64) -> DateTime<Utc> {
    DateTime::from_timestamp(ts, 0).expect("timestamp in range")
}

fn base_tweet(id: u64, author: &UserProfile, ts: i64, text: String, client: &str) -> Tweet {
    Tweet {
        tweet_id: id,
        author_id: author.user_id,
        author_screen_name: author.screen_name.clone(),
        created_at: ts_to_dt(ts),
        text,
        hashtags: Vec::new(),
        urls: Vec::new(),
        media_ids: Vec::new(),
        mentions: Vec::new(),
        client_source: client.to_string(),
        tweet_type: TweetType::Original,
        referenced_tweet_id: None,
        referenced_author_id: None,
        lang: Some("de".to_string()),
    }
}

/// Generate the corpus. Accounts are laid out as: celebrities (the retweet
/// targets), then trolls, then ordinary humans, then bots.
pub fn generate(config: &SynthConfig) -> Result<SynthOutput> {
    config.validate()?;
    let span_secs = config.span_days as i64 * SECS_PER_DAY;
    let mut gen = Gen {
        config,
        next_tweet_id: 0,
        span_secs,
        celeb_pool: Vec::new(),
        troll_pool: Vec::new(),
        records: Vec::new(),
        archetypes: BTreeMap::new(),
    };

    let celebs = celebrity_count(config.n_humans);
    let troll_ids: Vec<u64> = (0..config.troll.count)
        .map(|i| (celebs + 1 + i) as u64)
        .collect();
    let renamed_ids: Vec<u64> = troll_ids[..config.troll.renamed].to_vec();

    // humans: ids 1..=n_humans (celebrities first, trolls next)
    for idx in 0..config.n_humans {
        let user_id = (idx + 1) as u64;
        let is_celeb = idx < celebs;
        let is_troll = troll_ids.contains(&user_id);
        let renamed = renamed_ids.contains(&user_id);
        generate_human(&mut gen, user_id, is_celeb, is_troll, renamed);
    }

    // bots: ids offset by 100000
    let w = &config.bot_weights;
    let n_sched = (config.n_bots as f64 * w.scheduler).round() as usize;
    let n_rep = (config.n_bots as f64 * w.repeater).round() as usize;
    for idx in 0..config.n_bots {
        let user_id = 100_000 + (idx + 1) as u64;
        if idx < n_sched.min(config.n_bots) {
            generate_scheduler(&mut gen, user_id);
        } else if idx < (n_sched + n_rep).min(config.n_bots) {
            generate_repeater(&mut gen, user_id);
        } else {
            generate_amplifier(&mut gen, user_id);
        }
    }

    plant_interactions(&mut gen, &troll_ids);

    let fdp_tweets = mark_fdp(&mut gen.records, config.fdp_fraction);

    // bookkeeping tallied from the final record set, so truth and corpus
    // cannot drift apart
    let mut per_user: BTreeMap<u64, UserTruth> = BTreeMap::new();
    let mut hashtag_counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut interactions = InteractionStats::default();
    let troll_set: std::collections::BTreeSet<u64> = troll_ids.iter().copied().collect();
    for (tweet, _) in &gen.records {
        let is_bot = tweet.author_id > 100_000;
        let entry = per_user
            .entry(tweet.author_id)
            .or_insert_with(|| UserTruth {
                label: if is_bot { "bot" } else { "human" }.to_string(),
                archetype: gen
                    .archetypes
                    .get(&tweet.author_id)
                    .copied()
                    .unwrap_or("human")
                    .to_string(),
                tweets: 0,
                originals: 0,
                retweets: 0,
                quotes: 0,
                replies: 0,
            });
        entry.tweets += 1;
        match tweet.tweet_type {
            TweetType::Original => entry.originals += 1,
            TweetType::Retweet => entry.retweets += 1,
            TweetType::Quote => entry.quotes += 1,
            TweetType::Reply => entry.replies += 1,
        }
        for tag in &tweet.hashtags {
            *hashtag_counts.entry(tag.clone()).or_insert(0) += 1;
        }
        if let Some(author) = tweet.referenced_author_id {
            if troll_set.contains(&author) {
                let by_troll = troll_set.contains(&tweet.author_id);
                match (tweet.tweet_type, by_troll) {
                    (TweetType::Retweet, true) => interactions.retweets_of_trolls_by_trolls += 1,
                    (TweetType::Retweet, false) => {
                        interactions.retweets_of_trolls_by_non_trolls += 1
                    }
                    (TweetType::Quote, true) => interactions.quotes_of_trolls_by_trolls += 1,
                    (TweetType::Quote, false) => interactions.quotes_of_trolls_by_non_trolls += 1,
                    _ => {}
                }
            }
        }
    }

    let mut labels: Vec<(u64, bool)> = per_user.keys().map(|&id| (id, id > 100_000)).collect();
    labels.sort();
    let bots = labels.iter().filter(|(_, b)| *b).count();
    let truth = SynthTruth {
        bot_fraction: if labels.is_empty() {
            0.0
        } else {
            bots as f64 / labels.len() as f64
        },
        per_user,
        hashtag_counts,
        total_tweets: gen.records.len() as u64,
        fdp_tweets,
        trolls: TrollTruth {
            ids: troll_ids,
            renamed_ids,
            interactions,
        },
    };
    Ok(SynthOutput {
        records: gen.records,
        truth,
        labels,
    })
}

fn generate_human(gen: &mut Gen, user_id: u64, is_celeb: bool, is_troll: bool, renamed: bool) {
    let mut rng = seeded(subseed(gen.config.seed, user_id));
    let name_v1 = format!("user_{user_id}");
    let name_v2 = format!("renamed_{user_id}");
    let display = format!(
        "{} {}",
        WORDS[gen_index(&mut rng, WORDS.len())],
        WORDS[gen_index(&mut rng, WORDS.len())]
    );
    let followers = if is_celeb {
        50_000 + gen_index(&mut rng, 500_000) as u64
    } else {
        20 + gen_index(&mut rng, 2000) as u64
    };
    let friends = 10 + gen_index(&mut rng, 800) as u64;
    let base_profile = gen.profile(
        &mut rng, user_id, &name_v1, &display, followers, friends, is_celeb,
    );
    let client = OFFICIAL_CLIENT_POOL[gen_index(&mut rng, OFFICIAL_CLIENT_POOL.len())];
    let vocab_offset = gen_index(&mut rng, WORDS.len());
    let vocab_len = 24 + gen_index(&mut rng, 16);
    let rate = if is_celeb {
        4 + gen_index(&mut rng, 5)
    } else {
        1 + gen_index(&mut rng, 4)
    };
    let rename_at = SPAN_START + gen.span_secs / 2;

    gen.archetypes
        .insert(user_id, if is_troll { "troll" } else { "human" });

    for day in 0..gen.config.span_days as i64 {
        let n_today = 1 + gen_index(&mut rng, rate);
        for _ in 0..n_today {
            // active hours 07:00..24:00 keep a nightly sleep gap
            let hour = 7 + gen_index(&mut rng, 17) as i64;
            let ts =
                SPAN_START + day * SECS_PER_DAY + hour * 3600 + gen_index(&mut rng, 3600) as i64;
            let id = gen.fresh_id();
            let mut profile = base_profile.clone();
            if renamed && ts >= rename_at {
                profile.screen_name = name_v2.clone();
            }
            let roll = gen_f64(&mut rng);
            let mut tweet;
            if roll < 0.20 && !gen.celeb_pool.is_empty() && !is_celeb {
                // retweet of a celebrity
                let src = gen.celeb_pool[gen_index(&mut rng, gen.celeb_pool.len())].clone();
                tweet = base_tweet(
                    id,
                    &profile,
                    ts,
                    format!("RT @user_{}: {}", src.author_id, src.text),
                    client,
                );
                tweet.tweet_type = TweetType::Retweet;
                tweet.referenced_tweet_id = Some(src.tweet_id);
                tweet.referenced_author_id = Some(src.author_id);
                tweet.hashtags = src.hashtags.clone();
                tweet.media_ids = src.media_ids.clone();
            } else if roll < 0.30 && !gen.celeb_pool.is_empty() && !is_celeb {
                // quote of a celebrity
                let src = gen.celeb_pool[gen_index(&mut rng, gen.celeb_pool.len())].clone();
                let text = gen.markov_text(&mut rng, vocab_offset, vocab_len);
                tweet = base_tweet(id, &profile, ts, text, client);
                tweet.tweet_type = TweetType::Quote;
                tweet.referenced_tweet_id = Some(src.tweet_id);
                tweet.referenced_author_id = Some(src.author_id);
                tweet.hashtags = gen.random_hashtags(&mut rng);
            } else if roll < 0.45 && !gen.celeb_pool.is_empty() && !is_celeb {
                // reply to a celebrity; the partner leads the mention list
                let src = gen.celeb_pool[gen_index(&mut rng, gen.celeb_pool.len())].clone();
                let text = gen.markov_text(&mut rng, vocab_offset, vocab_len);
                tweet = base_tweet(
                    id,
                    &profile,
                    ts,
                    format!("@user_{} {}", src.author_id, text),
                    client,
                );
                tweet.tweet_type = TweetType::Reply;
                tweet.referenced_tweet_id = Some(src.tweet_id);
                tweet.referenced_author_id = Some(src.author_id);
                tweet.mentions = vec![src.author_id];
            } else {
                let text = gen.markov_text(&mut rng, vocab_offset, vocab_len);
                tweet = base_tweet(id, &profile, ts, text, client);
                tweet.hashtags = gen.random_hashtags(&mut rng);
                if gen_f64(&mut rng) < 0.15 {
                    tweet.urls.push(format!(
                        "https://example.org/p{}",
                        gen_index(&mut rng, 5000)
                    ));
                }
                if is_celeb && gen_f64(&mut rng) < 0.3 {
                    tweet.media_ids.push(format!(
                        "m{}",
                        gen_index(&mut rng, MEDIA_POOL_SIZE as usize)
                    ));
                }
                let entry = CelebTweet {
                    tweet_id: id,
                    author_id: user_id,
                    ts,
                    text: tweet.text.clone(),
                    hashtags: tweet.hashtags.clone(),
                    media_ids: tweet.media_ids.clone(),
                };
                if is_celeb {
                    gen.celeb_pool.push(entry);
                } else if is_troll {
                    gen.troll_pool.push(entry);
                }
            }
            gen.push_tweet(tweet, profile);
        }
    }
}

fn generate_scheduler(gen: &mut Gen, user_id: u64) {
    let mut rng = seeded(subseed(gen.config.seed, user_id));
    gen.archetypes.insert(user_id, "scheduler");
    let named_bot = user_id.is_multiple_of(3);
    let name = if named_bot {
        format!("newsbot_{user_id}")
    } else {
        format!("feed_{user_id}")
    };
    let friends = 5 + gen_index(&mut rng, 50) as u64;
    let followers = 500 + gen_index(&mut rng, 3000) as u64;
    let profile = gen.profile(
        &mut rng,
        user_id,
        &name,
        "Schlagzeilen Dienst",
        friends,
        followers,
        false,
    );
    let client = BOT_CLIENT_POOL[gen_index(&mut rng, BOT_CLIENT_POOL.len())];
    let interval = {
        let intervals = &gen.config.scheduler_intervals;
        intervals[gen_index(&mut rng, intervals.len())]
    };
    let offset = gen_index(&mut rng, interval as usize) as i64;
    let vocab_offset = gen_index(&mut rng, WORDS.len());

    let mut ts = SPAN_START + offset;
    let end = SPAN_START + gen.span_secs;
    while ts < end {
        let id = gen.fresh_id();
        let text = gen.markov_text(&mut rng, vocab_offset, WORDS.len());
        let mut tweet = base_tweet(id, &profile, ts, text, client);
        tweet.hashtags = gen.random_hashtags(&mut rng);
        gen.push_tweet(tweet, profile.clone());
        ts += interval;
    }
}

fn generate_repeater(gen: &mut Gen, user_id: u64) {
    let mut rng = seeded(subseed(gen.config.seed, user_id));
    gen.archetypes.insert(user_id, "repeater");
    let friends = 10 + gen_index(&mut rng, 80) as u64;
    let followers = 800 + gen_index(&mut rng, 4000) as u64;
    let profile = gen.profile(
        &mut rng,
        user_id,
        &format!("kampagne_{user_id}"),
        "Mitmachen Jetzt",
        friends,
        followers,
        false,
    );
    let client = BOT_CLIENT_POOL[gen_index(&mut rng, BOT_CLIENT_POOL.len())];
    let vocab_offset = gen_index(&mut rng, WORDS.len());
    let n_templates = 2 + gen_index(&mut rng, 4); // <= 5
    let templates: Vec<String> = (0..n_templates)
        .map(|_| gen.markov_text(&mut rng, vocab_offset, WORDS.len()))
        .collect();
    let template_tags: Vec<Vec<String>> = (0..n_templates)
        .map(|_| gen.random_hashtags(&mut rng))
        .collect();
    let per_day = 8 + gen_index(&mut rng, 8);

    for day in 0..gen.config.span_days as i64 {
        for _ in 0..per_day {
            let ts =
                SPAN_START + day * SECS_PER_DAY + gen_index(&mut rng, SECS_PER_DAY as usize) as i64;
            let id = gen.fresh_id();
            let t = gen_index(&mut rng, n_templates);
            let mut tweet = base_tweet(id, &profile, ts, templates[t].clone(), client);
            tweet.hashtags = template_tags[t].clone();
            if gen_f64(&mut rng) < 0.4 {
                tweet.urls.push(format!("https://example.org/c{t}"));
            }
            gen.push_tweet(tweet, profile.clone());
        }
    }
}

fn generate_amplifier(gen: &mut Gen, user_id: u64) {
    let mut rng = seeded(subseed(gen.config.seed, user_id));
    gen.archetypes.insert(user_id, "amplifier");
    let friends = 5 + gen_index(&mut rng, 40) as u64;
    let followers = 1000 + gen_index(&mut rng, 4000) as u64;
    let profile = gen.profile(
        &mut rng,
        user_id,
        &format!("echo_{user_id}"),
        "Signal Boost",
        friends,
        followers,
        false,
    );
    let client = BOT_CLIENT_POOL[gen_index(&mut rng, BOT_CLIENT_POOL.len())];
    let vocab_offset = gen_index(&mut rng, WORDS.len());
    // a small set of favourite sources keeps the unique-user ratio low
    let n_favs = 3 + gen_index(&mut rng, 3);
    let per_day = 10 + gen_index(&mut rng, 10);

    for day in 0..gen.config.span_days as i64 {
        for _ in 0..per_day {
            let ts =
                SPAN_START + day * SECS_PER_DAY + gen_index(&mut rng, SECS_PER_DAY as usize) as i64;
            let id = gen.fresh_id();
            let mut tweet;
            if gen_f64(&mut rng) < 0.9 && !gen.celeb_pool.is_empty() {
                let fav = gen_index(&mut rng, n_favs);
                // pick among the favourite authors' tweets
                let candidates: Vec<&CelebTweet> = gen
                    .celeb_pool
                    .iter()
                    .filter(|c| c.author_id as usize % n_favs == fav)
                    .collect();
                let src = if candidates.is_empty() {
                    gen.celeb_pool[gen_index(&mut rng, gen.celeb_pool.len())].clone()
                } else {
                    (*candidates[gen_index(&mut rng, candidates.len())]).clone()
                };
                tweet = base_tweet(
                    id,
                    &profile,
                    ts,
                    format!("RT @user_{}: {}", src.author_id, src.text),
                    client,
                );
                tweet.tweet_type = TweetType::Retweet;
                tweet.referenced_tweet_id = Some(src.tweet_id);
                tweet.referenced_author_id = Some(src.author_id);
                tweet.hashtags = src.hashtags.clone();
                tweet.media_ids = src.media_ids.clone();
            } else {
                let text = gen.markov_text(&mut rng, vocab_offset, WORDS.len());
                tweet = base_tweet(id, &profile, ts, text, client);
                tweet.hashtags = gen.random_hashtags(&mut rng);
            }
            gen.push_tweet(tweet, profile.clone());
        }
    }
}

/// Append the configured troll interactions after the main generation pass.
fn plant_interactions(gen: &mut Gen, troll_ids: &[u64]) {
    if gen.troll_pool.is_empty() {
        return;
    }
    let mut rng = seeded(subseed(gen.config.seed, 0x7011));
    let celebs = celebrity_count(gen.config.n_humans);
    // non-troll actors: ordinary humans after the troll block
    let first_plain = celebs + troll_ids.len() + 1;
    let plain_ids: Vec<u64> = (first_plain..=gen.config.n_humans)
        .map(|i| i as u64)
        .collect();
    if plain_ids.is_empty() {
        return;
    }
    let plan = [
        (
            gen.config.troll.retweets_by_non_trolls,
            TweetType::Retweet,
            false,
        ),
        (
            gen.config.troll.quotes_by_non_trolls,
            TweetType::Quote,
            false,
        ),
        (
            gen.config.troll.retweets_by_trolls,
            TweetType::Retweet,
            true,
        ),
        (gen.config.troll.quotes_by_trolls, TweetType::Quote, true),
    ];
    for (count, kind, by_troll) in plan {
        for j in 0..count {
            let actor_id = if by_troll {
                troll_ids[j % troll_ids.len()]
            } else {
                plain_ids[j % plain_ids.len()]
            };
            let src = gen.troll_pool[gen_index(&mut rng, gen.troll_pool.len())].clone();
            let ts = (src.ts + 600 + gen_index(&mut rng, 7200) as i64)
                .min(SPAN_START + gen.span_secs - 1);
            let id = gen.fresh_id();
            let profile = gen
                .records
                .iter()
                .rev()
                .find(|(t, _)| t.author_id == actor_id)
                .map(|(_, p)| p.clone())
                .expect("actor generated earlier");
            let text = match kind {
                TweetType::Retweet => format!("RT @user_{}: {}", src.author_id, src.text),
                _ => "dazu sage ich was btw17".to_string(),
            };
            let mut tweet = base_tweet(id, &profile, ts, text, "Twitter Web Client");
            tweet.tweet_type = kind;
            tweet.referenced_tweet_id = Some(src.tweet_id);
            tweet.referenced_author_id = Some(src.author_id);
            gen.push_tweet(tweet, profile);
        }
    }
}

/// Append the token "fdp" to an exact, evenly spread share of the tweets.
fn mark_fdp(records: &mut [(Tweet, UserProfile)], fraction: f64) -> u64 {
    let n = records.len();
    if n == 0 || fraction <= 0.0 {
        return 0;
    }
    let k = ((n as f64) * fraction).round() as usize;
    for j in 0..k {
        let idx = j * n / k;
        records[idx].0.text.push_str(" fdp");
    }
    k as u64
}

/// Write corpus.jsonl, labels.csv, truth.json and (when trolls are planted)
/// trolls.csv under `out`.
pub fn write_outputs(out: &Path, output: &SynthOutput) -> Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let corpus_path = out.join("corpus.jsonl");
    let file = fs::File::create(&corpus_path)?;
    let mut w = BufWriter::new(file);
    for (tweet, profile) in &output.records {
        serde_json::to_writer(&mut w, &to_input_record(tweet, profile))?;
        w.write_all(b"\n")?;
    }
    w.flush()?;

    let mut labels = String::from("user_id,label\n");
    for (id, is_bot) in &output.labels {
        labels.push_str(&format!("{id},{}\n", if *is_bot { "bot" } else { "human" }));
    }
    fs::write(out.join("labels.csv"), labels)?;

    fs::write(
        out.join("truth.json"),
        serde_json::to_string_pretty(&output.truth)?,
    )?;

    if !output.truth.trolls.ids.is_empty() {
        let mut csv = String::from("user_id,screen_name\n");
        for id in &output.truth.trolls.ids {
            csv.push_str(&format!("{id},user_{id}\n"));
        }
        fs::write(out.join("trolls.csv"), csv)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_seed_is_reproducible() {
        let config = SynthConfig {
            n_humans: 10,
            n_bots: 4,
            span_days: 3,
            seed: 7,
            ..SynthConfig::default()
        };
        let a = generate(&config).unwrap();
        let b = generate(&config).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.truth, b.truth);
    }

    #[test]
    fn scheduler_interval_arithmetic() {
        let config = SynthConfig {
            n_humans: 0,
            n_bots: 1,
            span_days: 2,
            seed: 1,
            bot_weights: BotWeights {
                scheduler: 1.0,
                repeater: 0.0,
                amplifier: 0.0,
            },
            scheduler_intervals: vec![1800],
            ..SynthConfig::default()
        };
        let out = generate(&config).unwrap();
        assert_eq!(out.records.len(), 96);
        let seconds: std::collections::BTreeSet<u32> = out
            .records
            .iter()
            .map(|(t, _)| chrono::Timelike::second(&t.created_at))
            .collect();
        assert_eq!(seconds.len(), 1, "seconds field must be constant");
    }

    #[test]
    fn humans_never_tweet_at_night() {
        let config = SynthConfig {
            n_humans: 30,
            n_bots: 0,
            span_days: 5,
            seed: 3,
            ..SynthConfig::default()
        };
        let out = generate(&config).unwrap();
        for (tweet, _) in &out.records {
            let hour = chrono::Timelike::hour(&tweet.created_at);
            assert!(hour >= 7, "human tweeted at {hour}h");
        }
    }

    #[test]
    fn fdp_marks_exact_share() {
        let config = SynthConfig {
            n_humans: 40,
            n_bots: 8,
            span_days: 4,
            seed: 9,
            fdp_fraction: 0.25,
            ..SynthConfig::default()
        };
        let out = generate(&config).unwrap();
        let marked = out
            .records
            .iter()
            .filter(|(t, _)| t.text.split_whitespace().any(|w| w == "fdp"))
            .count() as u64;
        assert_eq!(marked, out.truth.fdp_tweets);
        let expected = (out.truth.total_tweets as f64 * 0.25).round() as u64;
        assert_eq!(marked, expected);
    }

    #[test]
    fn labels_cover_every_account() {
        let config = SynthConfig {
            n_humans: 12,
            n_bots: 6,
            span_days: 2,
            seed: 11,
            ..SynthConfig::default()
        };
        let out = generate(&config).unwrap();
        let labeled: std::collections::BTreeSet<u64> =
            out.labels.iter().map(|(id, _)| *id).collect();
        for (tweet, _) in &out.records {
            assert!(labeled.contains(&tweet.author_id));
        }
        assert_eq!(out.labels.len(), out.truth.per_user.len());
    }

    #[test]
    fn invalid_weights_rejected() {
        let config = SynthConfig {
            bot_weights: BotWeights {
                scheduler: 0.9,
                repeater: 0.9,
                amplifier: 0.0,
            },
            ..SynthConfig::default()
        };
        assert!(config.validate().is_err());
    }
}
