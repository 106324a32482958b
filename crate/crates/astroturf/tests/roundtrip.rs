//! Serializer/parser round trip: every generated record survives
//! `to_input_record` -> `parse_tweet` with all fields intact.

use astroturf::synth::{generate, SynthConfig, TrollPlant};
use astroturf::tweet::{parse_tweet, to_input_record};

#[test]
fn generated_records_round_trip_exactly() {
    let config = SynthConfig {
        n_humans: 120,
        n_bots: 40,
        span_days: 6,
        seed: 1234,
        fdp_fraction: 0.1,
        troll: TrollPlant {
            count: 5,
            renamed: 2,
            retweets_by_non_trolls: 6,
            quotes_by_non_trolls: 3,
            retweets_by_trolls: 2,
            quotes_by_trolls: 2,
        },
        ..SynthConfig::default()
    };
    let output = generate(&config).unwrap();
    assert!(output.records.len() > 1000, "corpus too small to exercise");
    for (tweet, profile) in &output.records {
        let line = serde_json::to_string(&to_input_record(tweet, profile)).unwrap();
        let (parsed_tweet, parsed_profile) = parse_tweet(&line)
            .unwrap_or_else(|e| panic!("reparse failed for tweet {}: {e}", tweet.tweet_id));
        assert_eq!(&parsed_tweet, tweet, "tweet fields drifted in round trip");
        assert_eq!(&parsed_profile, profile, "profile fields drifted");
    }
}
