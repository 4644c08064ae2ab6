//! Millisecond-precision UTC timestamps with the two reference points used by
//! object-centric logs: the epoch (`ZERO`) and an in-memory `INFINITY`.

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, NaiveDateTime, SecondsFormat, Utc};

/// A point in time, stored as milliseconds since 1970-01-01T00:00:00Z.
///
/// Every timestamp lies between [`Timestamp::ZERO`] and [`Timestamp::INFINITY`].
/// `INFINITY` is a query sentinel; codecs refuse to serialize it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(i64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TimestampError {
    #[error("unrecognized timestamp `{0}`")]
    Unparseable(String),
    #[error("timestamp `{0}` lies before 1970-01-01T00:00:00Z")]
    BeforeEpoch(String),
    #[error("timestamp out of range")]
    OutOfRange,
    #[error("the infinite timestamp cannot be serialized")]
    Infinite,
}

// Naive layouts accepted without an explicit offset; interpreted as UTC.
const NAIVE_FORMATS: &[&str] = &[
    "%Y-%m-%dT%H:%M:%S%.f",
    "%Y-%m-%d %H:%M:%S%.f",
    "%Y-%m-%dT%H:%M",
    "%Y-%m-%d %H:%M",
];

impl Timestamp {
    pub const ZERO: Timestamp = Timestamp(0);
    pub const INFINITY: Timestamp = Timestamp(i64::MAX);

    // 9999-12-31T23:59:59.999Z, the largest instant with a four-digit year.
    const MAX_FINITE_MILLIS: i64 = 253_402_300_799_999;

    pub fn from_millis(millis: i64) -> Result<Self, TimestampError> {
        if millis < 0 {
            return Err(TimestampError::BeforeEpoch(millis.to_string()));
        }
        if millis > Self::MAX_FINITE_MILLIS {
            return Err(TimestampError::OutOfRange);
        }
        Ok(Timestamp(millis))
    }

    /// Milliseconds since the epoch. `INFINITY` reports `i64::MAX`.
    pub fn as_millis(self) -> i64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_infinite(self) -> bool {
        self == Self::INFINITY
    }

    /// Parses ISO 8601 / RFC 3339 text. Also accepts `YYYY-MM-DD HH:MM`,
    /// `YYYY-MM-DD HH:MM UTC` and a bare date; a missing offset means UTC.
    /// Sub-millisecond digits are truncated.
    pub fn parse(text: &str) -> Result<Self, TimestampError> {
        let trimmed = text.trim();
        let fail = || TimestampError::Unparseable(text.to_string());
        if trimmed.is_empty() {
            return Err(fail());
        }

        if let Ok(dt) = DateTime::parse_from_rfc3339(trimmed) {
            return Self::from_datetime(dt.with_timezone(&Utc), text);
        }

        let naive_text = trimmed
            .strip_suffix("UTC")
            .or_else(|| trimmed.strip_suffix('Z'))
            .map(str::trim_end)
            .unwrap_or(trimmed);
        for format in NAIVE_FORMATS {
            if let Ok(naive) = NaiveDateTime::parse_from_str(naive_text, format) {
                return Self::from_datetime(naive.and_utc(), text);
            }
        }
        if let Ok(date) = NaiveDate::parse_from_str(naive_text, "%Y-%m-%d") {
            let naive = date.and_hms_opt(0, 0, 0).ok_or_else(fail)?;
            return Self::from_datetime(naive.and_utc(), text);
        }
        Err(fail())
    }

    fn from_datetime(dt: DateTime<Utc>, original: &str) -> Result<Self, TimestampError> {
        let millis = dt.timestamp_millis();
        if millis < 0 {
            return Err(TimestampError::BeforeEpoch(original.to_string()));
        }
        Self::from_millis(millis)
    }

    fn to_datetime(self) -> Result<DateTime<Utc>, TimestampError> {
        if self.is_infinite() {
            return Err(TimestampError::Infinite);
        }
        DateTime::from_timestamp_millis(self.0).ok_or(TimestampError::OutOfRange)
    }

    /// ISO 8601 in UTC, e.g. `2022-01-09T15:00:00Z`. Milliseconds appear only
    /// when non-zero.
    pub fn to_iso(self) -> Result<String, TimestampError> {
        let dt = self.to_datetime()?;
        let format = if self.0 % 1000 == 0 {
            SecondsFormat::Secs
        } else {
            SecondsFormat::Millis
        };
        Ok(dt.to_rfc3339_opts(format, true))
    }

    /// Fixed-width ISO 8601 with milliseconds, e.g. `2022-01-09T15:00:00.000Z`.
    pub fn to_iso_millis(self) -> Result<String, TimestampError> {
        Ok(self.to_datetime()?.to_rfc3339_opts(SecondsFormat::Millis, true))
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_iso() {
            Ok(text) => f.write_str(&text),
            Err(_) => f.write_str("infinity"),
        }
    }
}

impl fmt::Debug for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Timestamp({self})")
    }
}

impl FromStr for Timestamp {
    type Err = TimestampError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Timestamp::parse(s)
    }
}
