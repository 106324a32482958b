//! Property tests for the feature extractor's structural invariants.

use astroturf_core::features::{
    column_names, extract_features, CorpusContext, ProfileRecord, TweetKind, TweetRecord,
};
use proptest::prelude::*;

fn kind_strategy() -> impl Strategy<Value = TweetKind> {
    prop_oneof![
        Just(TweetKind::Original),
        Just(TweetKind::Retweet),
        Just(TweetKind::Quote),
        Just(TweetKind::Reply),
    ]
}

fn tweet_strategy() -> impl Strategy<Value = TweetRecord> {
    (
        1u64..1_000_000,
        0i64..2_000_000,
        kind_strategy(),
        "[a-z #@]{0,40}",
        prop::collection::vec("[a-z]{1,6}", 0..4),
        prop::collection::vec("[a-z]{1,8}", 0..3),
        prop::collection::vec(1u64..50, 0..3),
        "[A-Za-z ]{0,20}",
        prop::option::of(1u64..50),
        prop::option::of(0i64..2_000_000),
    )
        .prop_map(
            |(
                tweet_id,
                unix_ts,
                kind,
                text,
                hashtags,
                url_names,
                mentions,
                client,
                ref_author,
                ref_ts,
            )| {
                TweetRecord {
                    tweet_id,
                    unix_ts,
                    kind,
                    text,
                    hashtags,
                    urls: url_names
                        .into_iter()
                        .map(|u| format!("https://{u}.example/x"))
                        .collect(),
                    mentions,
                    client,
                    referenced_author: ref_author,
                    referenced_ts: ref_ts,
                }
            },
        )
}

fn timeline_strategy() -> impl Strategy<Value = Vec<TweetRecord>> {
    prop::collection::vec(tweet_strategy(), 1..30)
}

fn col(name: &str) -> usize {
    column_names().iter().position(|c| c == name).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ratio_features_stay_in_unit_interval(timeline in timeline_strategy()) {
        let fv = extract_features(&timeline, &ProfileRecord::default(), &CorpusContext::default()).unwrap();
        let names = column_names();
        for (i, name) in names.iter().enumerate() {
            prop_assert!(fv.values[i].is_finite(), "{name} not finite");
            if name.ends_with("_ratio") && name != "zip_ratio" {
                prop_assert!(
                    (0.0..=1.0).contains(&fv.values[i]),
                    "{name} = {} out of [0,1]", fv.values[i]
                );
            }
        }
        prop_assert!(fv.values[col("zip_ratio")] > 0.0);
        prop_assert!(fv.values[col("vocabulary_diversity")] > 0.0);
        prop_assert!(fv.values[col("vocabulary_diversity")] <= 1.0);
        prop_assert!(fv.values[col("avg_tweets_per_day")] > 0.0);
    }

    #[test]
    fn type_ratios_partition(timeline in timeline_strategy()) {
        let fv = extract_features(&timeline, &ProfileRecord::default(), &CorpusContext::default()).unwrap();
        let total = fv.values[col("orig_ratio")]
            + fv.values[col("retweet_ratio")]
            + fv.values[col("quote_ratio")]
            + fv.values[col("reply_ratio")];
        prop_assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unique_ratios_bounded_by_counterparts(timeline in timeline_strategy()) {
        let fv = extract_features(&timeline, &ProfileRecord::default(), &CorpusContext::default()).unwrap();
        let pairs = [
            ("unique_url_ratio", "url_ratio"),
            ("unique_url_host_ratio", "url_ratio"),
            ("unique_mentions_ratio", "mentions_ratio"),
            ("unique_hashtags_ratio", "hashtags_ratio"),
        ];
        for (unique, plain) in pairs {
            prop_assert!(
                fv.values[col(unique)] <= fv.values[col(plain)] + 1e-12,
                "{unique} > {plain}"
            );
        }
    }

    #[test]
    fn permutation_invariant(timeline in timeline_strategy(), seed in 0u64..1000) {
        let profile = ProfileRecord::default();
        let ctx = CorpusContext::default();
        let base = extract_features(&timeline, &profile, &ctx).unwrap();
        let mut shuffled = timeline.clone();
        let mut rng = astroturf_core::rng::seeded(seed);
        astroturf_core::rng::shuffle(&mut rng, &mut shuffled);
        let permuted = extract_features(&shuffled, &profile, &ctx).unwrap();
        prop_assert_eq!(base, permuted);
    }

    #[test]
    fn extraction_is_pure(timeline in timeline_strategy()) {
        let profile = ProfileRecord::default();
        let ctx = CorpusContext::default();
        let a = extract_features(&timeline, &profile, &ctx).unwrap();
        let b = extract_features(&timeline, &profile, &ctx).unwrap();
        prop_assert_eq!(a, b);
    }
}
