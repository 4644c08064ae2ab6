use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::time::Timestamp;

/// The five attribute value kinds shared by all exchange formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueKind {
    String,
    Time,
    Integer,
    Float,
    Boolean,
}

impl ValueKind {
    pub const ALL: [ValueKind; 5] = [
        ValueKind::String,
        ValueKind::Time,
        ValueKind::Integer,
        ValueKind::Float,
        ValueKind::Boolean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ValueKind::String => "string",
            ValueKind::Time => "time",
            ValueKind::Integer => "integer",
            ValueKind::Float => "float",
            ValueKind::Boolean => "boolean",
        }
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown attribute type `{0}`")]
pub struct UnknownKind(pub String);

impl FromStr for ValueKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ValueKind::ALL
            .into_iter()
            .find(|kind| kind.as_str() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// A typed attribute value.
///
/// Floats compare numerically (`-0.0 == 0.0`), with all NaNs equal to each
/// other, so that equality is an equivalence relation and values can be
/// sorted.
#[derive(Debug, Clone)]
pub enum AttributeValue {
    String(String),
    Time(Timestamp),
    Integer(i64),
    Float(f64),
    Boolean(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{text}` is not a valid {kind} value")]
pub struct ValueParseError {
    pub kind: ValueKind,
    pub text: String,
}

impl AttributeValue {
    pub fn kind(&self) -> ValueKind {
        match self {
            AttributeValue::String(_) => ValueKind::String,
            AttributeValue::Time(_) => ValueKind::Time,
            AttributeValue::Integer(_) => ValueKind::Integer,
            AttributeValue::Float(_) => ValueKind::Float,
            AttributeValue::Boolean(_) => ValueKind::Boolean,
        }
    }

    /// Parses the textual form used by the XML format.
    pub fn parse_as(kind: ValueKind, text: &str) -> Result<Self, ValueParseError> {
        let fail = || ValueParseError {
            kind,
            text: text.to_string(),
        };
        Ok(match kind {
            ValueKind::String => AttributeValue::String(text.to_string()),
            ValueKind::Time => AttributeValue::Time(Timestamp::parse(text).map_err(|_| fail())?),
            ValueKind::Integer => AttributeValue::Integer(text.trim().parse().map_err(|_| fail())?),
            ValueKind::Float => AttributeValue::Float(text.trim().parse().map_err(|_| fail())?),
            ValueKind::Boolean => match text.trim() {
                "true" | "1" => AttributeValue::Boolean(true),
                "false" | "0" => AttributeValue::Boolean(false),
                _ => return Err(fail()),
            },
        })
    }

    /// Textual form: shortest round-trippable floats, lowercase booleans,
    /// ISO 8601 times. `None` for the infinite timestamp.
    pub fn to_text(&self) -> Option<String> {
        Some(match self {
            AttributeValue::String(s) => s.clone(),
            AttributeValue::Time(t) => t.to_iso().ok()?,
            AttributeValue::Integer(i) => i.to_string(),
            AttributeValue::Float(f) => format!("{f:?}"),
            AttributeValue::Boolean(b) => b.to_string(),
        })
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            AttributeValue::String(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            AttributeValue::Integer(i) => Some(*i),
            _ => None,
        }
    }

    fn float_key(f: f64) -> f64 {
        if f.is_nan() {
            f64::NAN
        } else if f == 0.0 {
            0.0
        } else {
            f
        }
    }
}

impl PartialEq for AttributeValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AttributeValue {}

impl PartialOrd for AttributeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AttributeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use AttributeValue::*;
        match (self, other) {
            (String(a), String(b)) => a.cmp(b),
            (Time(a), Time(b)) => a.cmp(b),
            (Integer(a), Integer(b)) => a.cmp(b),
            (Float(a), Float(b)) => Self::float_key(*a).total_cmp(&Self::float_key(*b)),
            (Boolean(a), Boolean(b)) => a.cmp(b),
            _ => self.kind().cmp(&other.kind()),
        }
    }
}

impl fmt::Display for AttributeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Some(text) => f.write_str(&text),
            None => f.write_str("infinity"),
        }
    }
}

impl From<&str> for AttributeValue {
    fn from(value: &str) -> Self {
        AttributeValue::String(value.to_string())
    }
}

impl From<String> for AttributeValue {
    fn from(value: String) -> Self {
        AttributeValue::String(value)
    }
}

impl From<i64> for AttributeValue {
    fn from(value: i64) -> Self {
        AttributeValue::Integer(value)
    }
}

impl From<f64> for AttributeValue {
    fn from(value: f64) -> Self {
        AttributeValue::Float(value)
    }
}

impl From<bool> for AttributeValue {
    fn from(value: bool) -> Self {
        AttributeValue::Boolean(value)
    }
}

impl From<Timestamp> for AttributeValue {
    fn from(value: Timestamp) -> Self {
        AttributeValue::Time(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for kind in ValueKind::ALL {
            assert_eq!(kind.as_str().parse::<ValueKind>().unwrap(), kind);
        }
        assert!("int".parse::<ValueKind>().is_err());
    }

    #[test]
    fn parse_text_per_kind() {
        assert_eq!(
            AttributeValue::parse_as(ValueKind::Integer, "600").unwrap(),
            AttributeValue::Integer(600)
        );
        assert!(AttributeValue::parse_as(ValueKind::Integer, "abc").is_err());
        assert!(AttributeValue::parse_as(ValueKind::Integer, "1.5").is_err());
        assert_eq!(
            AttributeValue::parse_as(ValueKind::Boolean, "false").unwrap(),
            AttributeValue::Boolean(false)
        );
        assert!(AttributeValue::parse_as(ValueKind::Boolean, "No").is_err());
        assert_eq!(
            AttributeValue::parse_as(ValueKind::String, "  Yes ").unwrap(),
            AttributeValue::from("  Yes ")
        );
    }

    #[test]
    fn floats_render_shortest_and_reparse() {
        for f in [0.1, 1.0, -2.5e-300, 1e300, f64::MIN_POSITIVE, 123456.789] {
            let text = AttributeValue::Float(f).to_text().unwrap();
            assert_eq!(text.parse::<f64>().unwrap(), f);
        }
        assert_eq!(AttributeValue::Float(1.0).to_text().unwrap(), "1.0");
    }

    #[test]
    fn float_equality_is_numeric_and_reflexive() {
        assert_eq!(AttributeValue::Float(-0.0), AttributeValue::Float(0.0));
        assert_eq!(AttributeValue::Float(f64::NAN), AttributeValue::Float(f64::NAN));
        assert_ne!(AttributeValue::Float(1.0), AttributeValue::Integer(1));
    }
}
