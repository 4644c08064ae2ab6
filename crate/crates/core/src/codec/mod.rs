//! Readers and writers for the three exchange formats.

pub mod json;
pub mod relational;
pub mod xml;

use std::fmt;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::diagnostic::Diagnostic;
use crate::error::Result;
use crate::model::Log;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Relational,
    Xml,
    Json,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Relational, Format::Xml, Format::Json];

    pub fn as_str(self) -> &'static str {
        match self {
            Format::Relational => "relational",
            Format::Xml => "xml",
            Format::Json => "json",
        }
    }

    /// Conventional file extension, without the dot.
    pub fn extension(self) -> &'static str {
        match self {
            Format::Relational => "sqlite",
            Format::Xml => "xml",
            Format::Json => "json",
        }
    }

    pub fn from_extension(path: &Path) -> Option<Format> {
        let extension = path.extension()?.to_str()?.to_ascii_lowercase();
        match extension.as_str() {
            "sqlite" | "db" => Some(Format::Relational),
            "xml" | "xmlocel" => Some(Format::Xml),
            "json" | "jsonocel" => Some(Format::Json),
            _ => None,
        }
    }

    /// Recognizes the SQLite header, or a document whose first non-blank
    /// character is `<` or `{`.
    pub fn from_magic(head: &[u8]) -> Option<Format> {
        if head.starts_with(relational::SQLITE_MAGIC) {
            return Some(Format::Relational);
        }
        let head = head.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(head);
        match head.iter().find(|b| !b.is_ascii_whitespace())? {
            b'<' => Some(Format::Xml),
            b'{' => Some(Format::Json),
            _ => None,
        }
    }

    /// Detects the format of an existing file: extension first, then the
    /// leading bytes. `Ok(None)` when neither decides.
    pub fn detect(path: &Path) -> Result<Option<Format>> {
        if let Some(format) = Format::from_extension(path) {
            return Ok(Some(format));
        }
        let mut head = Vec::with_capacity(64);
        File::open(path)?.take(64).read_to_end(&mut head)?;
        Ok(Format::from_magic(&head))
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown format `{0}` (expected relational, xml or json)")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "relational" | "sqlite" => Ok(Format::Relational),
            "xml" => Ok(Format::Xml),
            "json" => Ok(Format::Json),
            _ => Err(UnknownFormat(s.to_string())),
        }
    }
}

/// Reads a log stored at `path` in `format`, together with non-fatal
/// findings of the reader.
pub fn read_path_with_diagnostics(path: impl AsRef<Path>, format: Format) -> Result<(Log, Vec<Diagnostic>)> {
    let path = path.as_ref();
    match format {
        Format::Relational => relational::read_relational_with_diagnostics(path),
        Format::Xml => Ok((xml::read_xml(BufReader::new(File::open(path)?))?, Vec::new())),
        Format::Json => Ok((json::read_json(BufReader::new(File::open(path)?))?, Vec::new())),
    }
}

pub fn read_path(path: impl AsRef<Path>, format: Format) -> Result<Log> {
    read_path_with_diagnostics(path, format).map(|(log, _)| log)
}

/// Writes `log` to `path` in `format`, replacing any existing file.
pub fn write_path(log: &Log, path: impl AsRef<Path>, format: Format) -> Result<()> {
    let path = path.as_ref();
    match format {
        Format::Relational => relational::write_relational(log, path),
        Format::Xml | Format::Json => {
            // Serialize fully before touching the target.
            let mut buffer = Vec::new();
            if format == Format::Xml {
                xml::write_xml(log, &mut buffer)?;
            } else {
                json::write_json(log, &mut buffer)?;
            }
            let mut file = BufWriter::new(fs::File::create(path)?);
            file.write_all(&buffer)?;
            file.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_detection() {
        assert_eq!(
            Format::from_extension(Path::new("a.DB")),
            Some(Format::Relational)
        );
        assert_eq!(Format::from_extension(Path::new("a.xmlocel")), Some(Format::Xml));
        assert_eq!(
            Format::from_extension(Path::new("a.jsonocel")),
            Some(Format::Json)
        );
        assert_eq!(Format::from_extension(Path::new("a.txt")), None);
        assert_eq!(Format::from_extension(Path::new("noext")), None);
    }

    #[test]
    fn magic_detection() {
        assert_eq!(
            Format::from_magic(b"SQLite format 3\0rest"),
            Some(Format::Relational)
        );
        assert_eq!(Format::from_magic(b"\xEF\xBB\xBF  <?xml"), Some(Format::Xml));
        assert_eq!(Format::from_magic(b"\n{\"events\""), Some(Format::Json));
        assert_eq!(Format::from_magic(b"hello"), None);
        assert_eq!(Format::from_magic(b""), None);
    }

    #[test]
    fn names_parse() {
        for format in Format::ALL {
            assert_eq!(format.as_str().parse::<Format>().unwrap(), format);
        }
        assert!("yaml".parse::<Format>().is_err());
    }
}
