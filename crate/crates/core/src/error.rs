use std::io;

use crate::diagnostic::{Code, Diagnostic};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("not a database: {0}")]
    NotADatabase(String),

    #[error("sqlite error: {0}")]
    Sqlite(#[from] rusqlite::Error),

    #[error("missing table `{0}`")]
    MissingTable(String),

    #[error("malformed XML at {location}: {message}")]
    XmlSyntax { location: String, message: String },

    #[error("malformed JSON: {0}")]
    JsonSyntax(String),

    #[error("schema violation at {location}: {message}")]
    SchemaViolation { location: String, message: String },

    /// A value or timestamp that cannot be parsed as required; `code` is the
    /// catalog entry it corresponds to.
    #[error("{code} at {location}: {message}")]
    ValueParse {
        code: Code,
        location: String,
        message: String,
    },

    #[error("log cannot be loaded: {}", summarize(.0))]
    Load(Vec<Diagnostic>),

    #[error("log is not valid for writing: {}", summarize(.0))]
    InvalidLog(Vec<Diagnostic>),

    #[error("{location}: {message}")]
    Unrepresentable { location: String, message: String },

    #[error("unknown event `{0}`")]
    UnknownEvent(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),
}

fn summarize(diagnostics: &[Diagnostic]) -> String {
    match diagnostics {
        [] => "no diagnostics".to_string(),
        [only] => only.to_string(),
        [first, rest @ ..] => format!("{first} (and {} more)", rest.len()),
    }
}

impl Error {
    pub(crate) fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaViolation {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn value(code: Code, location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ValueParse {
            code,
            location: location.into(),
            message: message.into(),
        }
    }

    /// Diagnostics describing an input defect, or `None` for environment
    /// failures (I/O, unreadable database, unknown ids).
    pub fn diagnostics(&self) -> Option<Vec<Diagnostic>> {
        let single =
            |code, location: &str, message: String| Some(vec![Diagnostic::new(code, location, message)]);
        match self {
            Error::MissingTable(table) => single(
                Code::MissingTable,
                table,
                format!("table `{table}` does not exist"),
            ),
            Error::XmlSyntax { location, message } => single(Code::XmlSyntax, location, message.clone()),
            Error::JsonSyntax(message) => single(Code::JsonSyntax, "", message.clone()),
            Error::SchemaViolation { location, message } => {
                single(Code::SchemaViolation, location, message.clone())
            }
            Error::ValueParse {
                code,
                location,
                message,
            } => single(*code, location, message.clone()),
            Error::Load(d) | Error::InvalidLog(d) => Some(d.clone()),
            Error::Unrepresentable { location, message } => {
                single(Code::SchemaViolation, location, message.clone())
            }
            Error::Io(_)
            | Error::NotADatabase(_)
            | Error::Sqlite(_)
            | Error::UnknownEvent(_)
            | Error::UnknownObject(_) => None,
        }
    }
}
