//! Tweet records and the newline-delimited input format.
//!
//! Input records are JSON objects, one per line, with the Twitter-style
//! nested layout (`user`, `entities`, `retweeted_status`, ...). Entity
//! lists accept both the object form (`{"text": "afd"}`) and bare strings.

use chrono::{DateTime, NaiveDateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tweet type; the classification is a total partition with
/// retweet > quote > reply precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TweetType {
    Original,
    Retweet,
    Quote,
    Reply,
}

impl TweetType {
    pub fn name(&self) -> &'static str {
        match self {
            TweetType::Original => "original",
            TweetType::Retweet => "retweet",
            TweetType::Quote => "quote",
            TweetType::Reply => "reply",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tweet {
    pub tweet_id: u64,
    pub author_id: u64,
    pub author_screen_name: String,
    pub created_at: DateTime<Utc>,
    pub text: String,
    /// Lowercase, leading '#' stripped.
    pub hashtags: Vec<String>,
    pub urls: Vec<String>,
    pub media_ids: Vec<String>,
    pub mentions: Vec<u64>,
    pub client_source: String,
    pub tweet_type: TweetType,
    pub referenced_tweet_id: Option<u64>,
    pub referenced_author_id: Option<u64>,
    pub lang: Option<String>,
}

/// Latest-seen profile snapshot of an author.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    pub user_id: u64,
    pub screen_name: String,
    pub account_created_at: Option<DateTime<Utc>>,
    pub followers: u64,
    pub friends: u64,
    pub verified: bool,
    pub default_profile_image: bool,
    pub default_user_image: bool,
    pub geo_enabled: bool,
    pub display_name: String,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed record: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("missing mandatory field {0}")]
    MissingField(&'static str),
    #[error("unparseable timestamp {0:?}")]
    Timestamp(String),
}

/// A parse failure annotated with the byte offset of the offending line.
#[derive(Debug, Error)]
#[error("at byte offset {offset}: {source}")]
pub struct OffsetParseError {
    pub offset: u64,
    #[source]
    pub source: ParseError,
}

// ---------------------------------------------------------------------------
// raw input layout

#[derive(Deserialize)]
struct RawTweet {
    id: u64,
    user: RawUser,
    created_at: String,
    text: String,
    #[serde(default)]
    entities: RawEntities,
    source: Option<String>,
    lang: Option<String>,
    in_reply_to_status_id: Option<u64>,
    retweeted_status: Option<RawReference>,
    quoted_status: Option<RawReference>,
}

#[derive(Deserialize)]
struct RawUser {
    id: u64,
    screen_name: String,
    created_at: Option<String>,
    #[serde(default)]
    followers_count: u64,
    #[serde(default)]
    friends_count: u64,
    #[serde(default)]
    verified: bool,
    #[serde(default)]
    default_profile_image: bool,
    #[serde(default)]
    default_user_image: bool,
    #[serde(default)]
    geo_enabled: bool,
    name: Option<String>,
}

#[derive(Deserialize, Default)]
struct RawEntities {
    #[serde(default)]
    hashtags: Vec<TextEntity>,
    #[serde(default)]
    urls: Vec<UrlEntity>,
    #[serde(default)]
    media: Vec<MediaEntity>,
    #[serde(default)]
    user_mentions: Vec<MentionEntity>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TextEntity {
    Plain(String),
    Object { text: String },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum UrlEntity {
    Plain(String),
    Object {
        #[serde(alias = "expanded_url")]
        url: String,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MediaEntity {
    Plain(String),
    Object {
        #[serde(deserialize_with = "string_or_number")]
        id: String,
    },
}

fn string_or_number<'de, D: serde::Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Value {
        S(String),
        N(u64),
    }
    Ok(match Value::deserialize(d)? {
        Value::S(s) => s,
        Value::N(n) => n.to_string(),
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MentionEntity {
    Plain(u64),
    Object { id: u64 },
}

#[derive(Deserialize)]
struct RawReference {
    id: u64,
    user: RawReferenceUser,
}

#[derive(Deserialize)]
struct RawReferenceUser {
    id: u64,
}

/// Parse a UTC timestamp; accepts RFC 3339 and the legacy
/// `Wed Sep 20 12:34:56 +0000 2017` form.
pub fn parse_timestamp(raw: &str) -> Result<DateTime<Utc>, ParseError> {
    if let Ok(dt) = DateTime::parse_from_rfc3339(raw) {
        return Ok(dt.with_timezone(&Utc));
    }
    if let Ok(dt) = DateTime::parse_from_str(raw, "%a %b %d %H:%M:%S %z %Y") {
        return Ok(dt.with_timezone(&Utc));
    }
    if let Ok(dt) = NaiveDateTime::parse_from_str(raw, "%Y-%m-%d %H:%M:%S") {
        return Ok(dt.and_utc());
    }
    Err(ParseError::Timestamp(raw.to_string()))
}

/// Extract the client name from a `source` field, stripping the HTML
/// anchor Twitter wraps around it.
fn client_name(source: &str) -> String {
    if let (Some(start), Some(end)) = (source.find('>'), source.rfind('<')) {
        if start + 1 < end {
            return source[start + 1..end].to_string();
        }
    }
    source.to_string()
}

/// Parse one input line into a tweet and the author's profile snapshot.
/// Unknown fields are ignored; missing mandatory fields or an unparseable
/// timestamp reject the record.
pub fn parse_tweet(line: &str) -> Result<(Tweet, UserProfile), ParseError> {
    let raw: RawTweet = serde_json::from_str(line)?;
    if raw.text.is_empty() {
        return Err(ParseError::MissingField("text"));
    }
    let created_at = parse_timestamp(&raw.created_at)?;
    let account_created_at = match &raw.user.created_at {
        Some(ts) => Some(parse_timestamp(ts)?),
        None => None,
    };

    // Retweet > quote > reply precedence when several references coexist.
    let (tweet_type, reference) = if let Some(r) = &raw.retweeted_status {
        (TweetType::Retweet, Some((r.id, r.user.id)))
    } else if let Some(r) = &raw.quoted_status {
        (TweetType::Quote, Some((r.id, r.user.id)))
    } else if let Some(status_id) = raw.in_reply_to_status_id {
        (TweetType::Reply, Some((status_id, 0)))
    } else {
        (TweetType::Original, None)
    };
    let referenced_tweet_id = reference.map(|(id, _)| id);
    let mut referenced_author_id = reference.and_then(|(_, uid)| (uid != 0).then_some(uid));

    let hashtags: Vec<String> = raw
        .entities
        .hashtags
        .iter()
        .map(|h| {
            let text = match h {
                TextEntity::Plain(s) => s,
                TextEntity::Object { text } => text,
            };
            text.trim_start_matches('#').to_lowercase()
        })
        .filter(|h| !h.is_empty())
        .collect();

    let mentions: Vec<u64> = raw
        .entities
        .user_mentions
        .iter()
        .map(|m| match m {
            MentionEntity::Plain(id) => *id,
            MentionEntity::Object { id } => *id,
        })
        .collect();

    // Replies carry no referenced user in the input; fall back to the
    // first mention as the conversation partner.
    if tweet_type == TweetType::Reply && referenced_author_id.is_none() {
        referenced_author_id = mentions.first().copied();
    }

    let tweet = Tweet {
        tweet_id: raw.id,
        author_id: raw.user.id,
        author_screen_name: raw.user.screen_name.clone(),
        created_at,
        text: raw.text,
        hashtags,
        urls: raw
            .entities
            .urls
            .into_iter()
            .map(|u| match u {
                UrlEntity::Plain(s) => s,
                UrlEntity::Object { url } => url,
            })
            .collect(),
        media_ids: raw
            .entities
            .media
            .into_iter()
            .map(|m| match m {
                MediaEntity::Plain(s) => s,
                MediaEntity::Object { id } => id,
            })
            .collect(),
        mentions,
        client_source: raw.source.as_deref().map(client_name).unwrap_or_default(),
        tweet_type,
        referenced_tweet_id,
        referenced_author_id,
        lang: raw.lang,
    };
    let profile = UserProfile {
        user_id: raw.user.id,
        screen_name: raw.user.screen_name,
        account_created_at,
        followers: raw.user.followers_count,
        friends: raw.user.friends_count,
        verified: raw.user.verified,
        default_profile_image: raw.user.default_profile_image,
        default_user_image: raw.user.default_user_image,
        geo_enabled: raw.user.geo_enabled,
        display_name: raw.user.name.unwrap_or_default(),
    };
    Ok((tweet, profile))
}

/// Serialize a tweet + profile back into the input-record layout. Inverse
/// of [`parse_tweet`] up to field ordering; used by the corpus generator.
pub fn to_input_record(tweet: &Tweet, profile: &UserProfile) -> serde_json::Value {
    let mut record = serde_json::json!({
        "id": tweet.tweet_id,
        "user": {
            "id": tweet.author_id,
            "screen_name": tweet.author_screen_name,
            "followers_count": profile.followers,
            "friends_count": profile.friends,
            "verified": profile.verified,
            "default_profile_image": profile.default_profile_image,
            "default_user_image": profile.default_user_image,
            "geo_enabled": profile.geo_enabled,
            "name": profile.display_name,
        },
        "created_at": tweet.created_at.to_rfc3339(),
        "text": tweet.text,
        "source": tweet.client_source,
        "entities": {
            "hashtags": tweet.hashtags.iter().map(|h| serde_json::json!({"text": h})).collect::<Vec<_>>(),
            "urls": tweet.urls.iter().map(|u| serde_json::json!({"url": u})).collect::<Vec<_>>(),
            "media": tweet.media_ids.iter().map(|m| serde_json::json!({"id": m})).collect::<Vec<_>>(),
            "user_mentions": tweet.mentions.iter().map(|m| serde_json::json!({"id": m})).collect::<Vec<_>>(),
        },
    });
    if let Some(ts) = &profile.account_created_at {
        record["user"]["created_at"] = serde_json::json!(ts.to_rfc3339());
    }
    if let Some(lang) = &tweet.lang {
        record["lang"] = serde_json::json!(lang);
    }
    match tweet.tweet_type {
        TweetType::Retweet => {
            record["retweeted_status"] = serde_json::json!({
                "id": tweet.referenced_tweet_id.unwrap_or(0),
                "user": {"id": tweet.referenced_author_id.unwrap_or(0)},
            });
        }
        TweetType::Quote => {
            record["quoted_status"] = serde_json::json!({
                "id": tweet.referenced_tweet_id.unwrap_or(0),
                "user": {"id": tweet.referenced_author_id.unwrap_or(0)},
            });
        }
        TweetType::Reply => {
            record["in_reply_to_status_id"] =
                serde_json::json!(tweet.referenced_tweet_id.unwrap_or(0));
        }
        TweetType::Original => {}
    }
    record
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn retweet_takes_precedence_over_quote() {
        let line = r#"{"id":1,"user":{"id":2,"screen_name":"a"},"created_at":"2017-09-20T10:00:00Z","text":"x",
            "retweeted_status":{"id":3,"user":{"id":4}},"quoted_status":{"id":5,"user":{"id":6}}}"#
            .replace('\n', " ");
        let (tweet, _) = parse_tweet(&line).unwrap();
        assert_eq!(tweet.tweet_type, TweetType::Retweet);
        assert_eq!(tweet.referenced_tweet_id, Some(3));
        assert_eq!(tweet.referenced_author_id, Some(4));
    }

    #[test]
    fn hashtags_lowercased_and_stripped() {
        let line =
            r#"{"id":1,"user":{"id":2,"screen_name":"a"},"created_at":"2017-09-20T10:00:00Z",
            "text":"Wählt #AfD!","entities":{"hashtags":[{"text":"AfD"}]}}"#
                .replace('\n', " ");
        let (tweet, _) = parse_tweet(&line).unwrap();
        assert_eq!(tweet.hashtags, vec!["afd"]);
    }

    #[test]
    fn missing_mandatory_field_rejected() {
        let line = r#"{"id":1,"created_at":"2017-09-20T10:00:00Z","text":"x"}"#;
        assert!(parse_tweet(line).is_err());
    }

    #[test]
    fn bad_timestamp_rejected() {
        let line =
            r#"{"id":1,"user":{"id":2,"screen_name":"a"},"created_at":"tomorrow","text":"x"}"#;
        assert!(matches!(
            parse_tweet(line).unwrap_err(),
            ParseError::Timestamp(_)
        ));
    }

    #[test]
    fn legacy_timestamp_accepted() {
        let ts = parse_timestamp("Wed Sep 20 12:34:56 +0000 2017").unwrap();
        assert_eq!(ts.to_rfc3339(), "2017-09-20T12:34:56+00:00");
    }

    #[test]
    fn client_name_strips_anchor() {
        assert_eq!(
            client_name(r#"<a href="http://twitter.com">Twitter Web Client</a>"#),
            "Twitter Web Client"
        );
        assert_eq!(client_name("MyBotKit 2.0"), "MyBotKit 2.0");
    }

    #[test]
    fn reply_partner_from_first_mention() {
        let line =
            r#"{"id":1,"user":{"id":2,"screen_name":"a"},"created_at":"2017-09-20T10:00:00Z",
            "text":"@b hi","in_reply_to_status_id":9,"entities":{"user_mentions":[{"id":42}]}}"#
                .replace('\n', " ");
        let (tweet, _) = parse_tweet(&line).unwrap();
        assert_eq!(tweet.tweet_type, TweetType::Reply);
        assert_eq!(tweet.referenced_author_id, Some(42));
    }
}
