//! Object-centric event logs: the in-memory model, temporal attribute
//! queries, model validation and lossless relational, XML and JSON codecs.

pub mod codec;
pub mod diagnostic;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod query;
pub mod time;
pub mod validation;
pub mod value;

pub use codec::json::{from_json_str, read_json, to_json_string, write_json};
pub use codec::relational::{
    read_relational, read_relational_with_diagnostics, validate_relational_layout,
    validate_relational_layout_at, write_relational,
};
pub use codec::xml::{from_xml_str, read_xml, to_xml_string, write_xml};
pub use codec::{read_path, read_path_with_diagnostics, write_path, Format};
pub use diagnostic::{has_errors, Code, Diagnostic, Severity};
pub use error::{Error, Result};
pub use fixtures::running_example;
pub use model::{
    AttributeDeclaration, Event, Log, LogBuilder, Object, ObjectAttributeAssignment, QualifiedRelation,
    TypeDeclaration,
};
pub use query::{logs_equal, RelatedObject};
pub use time::{Timestamp, TimestampError};
pub use validation::validate_model;
pub use value::{AttributeValue, ValueKind};
