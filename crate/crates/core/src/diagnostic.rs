//! Machine-readable validation findings and their closed code catalog.

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        })
    }
}

macro_rules! catalog {
    ($( $(#[$doc:meta])* $variant:ident => $text:literal, $severity:ident; )*) => {
        /// Every diagnostic code the validators and readers can produce.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $( $(#[$doc])* $variant, )*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $( Code::$variant => $text, )*
                }
            }

            pub fn severity(self) -> Severity {
                match self {
                    $( Code::$variant => Severity::$severity, )*
                }
            }
        }
    };
}

catalog! {
    // Model constraints.
    /// An event or object id, type name or attribute name is empty.
    EmptyName => "EMPTY_NAME", Error;
    EventDuplicateId => "EVENT_DUPLICATE_ID", Error;
    ObjectDuplicateId => "OBJECT_DUPLICATE_ID", Error;
    /// The same id names both an event and an object.
    IdNotDisjoint => "ID_NOT_DISJOINT", Error;
    TypeDuplicate => "TYPE_DUPLICATE", Error;
    AttrDeclDuplicate => "ATTR_DECL_DUPLICATE", Error;
    EventTypeUndeclared => "EVENT_TYPE_UNDECLARED", Error;
    ObjectTypeUndeclared => "OBJECT_TYPE_UNDECLARED", Error;
    EventAttrUndeclared => "EVENT_ATTR_UNDECLARED", Error;
    ObjectAttrUndeclared => "OBJECT_ATTR_UNDECLARED", Error;
    /// A value does not fit the kind declared for its attribute.
    AttrKindMismatch => "ATTR_KIND_MISMATCH", Error;
    /// Two values for one object attribute at the same instant.
    AssignmentDuplicate => "ASSIGNMENT_DUPLICATE", Error;
    /// Event time is infinite or could not be parsed.
    EventTimeInvalid => "EVENT_TIME_INVALID", Error;
    /// Object attribute time is infinite or could not be parsed.
    AssignmentTimeInvalid => "ASSIGNMENT_TIME_INVALID", Error;
    E2oDanglingEvent => "E2O_DANGLING_EVENT", Error;
    E2oDanglingObject => "E2O_DANGLING_OBJECT", Error;
    O2oDanglingSource => "O2O_DANGLING_SOURCE", Error;
    O2oDanglingTarget => "O2O_DANGLING_TARGET", Error;
    /// One attribute name is declared on several types.
    AttrSharedAcrossTypes => "ATTR_SHARED_ACROSS_TYPES", Warning;

    // Relational layout.
    MissingTable => "MISSING_TABLE", Error;
    /// A required `ocel_*` column is absent.
    MissingColumn => "MISSING_COLUMN", Error;
    MapTypeDuplicate => "MAP_TYPE_DUPLICATE", Error;
    MapNameDuplicate => "MAP_NAME_DUPLICATE", Error;
    MapNameInvalid => "MAP_NAME_INVALID", Error;
    /// A mapped type has no per-type table.
    TypeTableMissing => "TYPE_TABLE_MISSING", Error;
    /// The general table names a type absent from the type map.
    TypeUnmapped => "TYPE_UNMAPPED", Error;
    /// A per-type table row has no counterpart in the general table.
    TypeTableOrphan => "TYPE_TABLE_ORPHAN", Error;
    /// A general table row has no row in its per-type table.
    TypeTableMissingRow => "TYPE_TABLE_MISSING_ROW", Error;
    /// A per-type table row belongs to an id of another type.
    TypeTableMisrouted => "TYPE_TABLE_MISROUTED", Error;
    E2oDuplicate => "E2O_DUPLICATE", Error;
    O2oDuplicate => "O2O_DUPLICATE", Error;
    /// `ocel_changed_field` names a column the table does not have.
    ChangedFieldUnknown => "CHANGED_FIELD_UNKNOWN", Error;
    /// A full snapshot row is dated after the epoch.
    EpochNoncanonical => "EPOCH_NONCANONICAL", Error;
    /// An attribute name clashes with a reserved `ocel_*` column.
    ReservedColumn => "RESERVED_COLUMN", Error;

    // Document structure.
    XmlSyntax => "XML_SYNTAX", Error;
    JsonSyntax => "JSON_SYNTAX", Error;
    SchemaViolation => "SCHEMA_VIOLATION", Error;
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    /// A diagnostic with the catalog's severity for `code`.
    pub fn new(code: Code, location: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            code,
            severity: code.severity(),
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// One line of JSON: `{"code":..,"severity":..,"location":..,"message":..}`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("diagnostic serializes")
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} at {}: {}",
            self.severity, self.code, self.location, self.message
        )
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
