//! The relational exchange format: one SQLite file with six fixed tables and
//! one dense table per event type and per object type.

mod layout;
mod mapping;

use std::collections::HashMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use rusqlite::types::Value as SqlValue;
use rusqlite::{params_from_iter, Connection, OpenFlags};

pub use layout::validate_relational_layout;
pub use mapping::{is_valid_mapped_name, map_type_name, TypeNameMapper};

use crate::diagnostic::{has_errors, Code, Diagnostic};
use crate::error::{Error, Result};
use crate::model::{Event, Log, Object, TypeDeclaration};
use crate::time::Timestamp;
use crate::validation::validate_model;
use crate::value::{AttributeValue, ValueKind};

pub(crate) const ID: &str = "ocel_id";
pub(crate) const TYPE: &str = "ocel_type";
pub(crate) const TYPE_MAP: &str = "ocel_type_map";
pub(crate) const TIME: &str = "ocel_time";
pub(crate) const CHANGED_FIELD: &str = "ocel_changed_field";

/// First 16 bytes of every SQLite database file.
pub const SQLITE_MAGIC: &[u8; 16] = b"SQLite format 3\0";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Category {
    Event,
    Object,
}

impl Category {
    pub(crate) fn general_table(self) -> &'static str {
        match self {
            Category::Event => "event",
            Category::Object => "object",
        }
    }

    pub(crate) fn map_table(self) -> &'static str {
        match self {
            Category::Event => "event_map_type",
            Category::Object => "object_map_type",
        }
    }

    pub(crate) fn type_table(self, mapped: &str) -> String {
        format!("{}_{mapped}", self.general_table())
    }
}

pub(crate) fn quote(identifier: &str) -> String {
    format!("\"{}\"", identifier.replace('"', "\"\""))
}

pub(crate) fn is_reserved_column(name: &str) -> bool {
    [ID, TIME, CHANGED_FIELD]
        .iter()
        .any(|r| r.eq_ignore_ascii_case(name))
}

/// `(name, declared type)` of each column, in table order.
pub(crate) fn table_columns(conn: &Connection, table: &str) -> Result<Vec<(String, String)>> {
    let mut statement = conn.prepare("SELECT name, type FROM pragma_table_info(?1) ORDER BY cid")?;
    let rows = statement.query_map([table], |row| Ok((row.get(0)?, row.get(1)?)))?;
    Ok(rows.collect::<rusqlite::Result<_>>()?)
}

fn declared_type(kind: ValueKind) -> &'static str {
    match kind {
        ValueKind::String => "TEXT",
        ValueKind::Time => "TIMESTAMP",
        ValueKind::Integer => "INTEGER",
        ValueKind::Float => "REAL",
        ValueKind::Boolean => "BOOLEAN",
    }
}

fn kind_of_declared_type(declared: &str) -> ValueKind {
    match declared.trim().to_ascii_uppercase().as_str() {
        "TIMESTAMP" | "DATETIME" | "DATE" => ValueKind::Time,
        "INTEGER" | "INT" | "BIGINT" => ValueKind::Integer,
        "REAL" | "FLOAT" | "DOUBLE" => ValueKind::Float,
        "BOOLEAN" | "BOOL" => ValueKind::Boolean,
        _ => ValueKind::String,
    }
}

// ---------------------------------------------------------------------------
// Writing

/// Checks that `log` can be stored: no model ERRORs, no attribute named like
/// a reserved column, no two attributes of one type differing only in case.
fn check_writable(log: &Log) -> Result<()> {
    let mut diagnostics: Vec<Diagnostic> = validate_model(log)
        .into_iter()
        .filter(Diagnostic::is_error)
        .collect();
    for (section, declarations) in [
        ("eventTypes", log.event_type_declarations()),
        ("objectTypes", log.object_type_declarations()),
    ] {
        for declaration in declarations {
            for (i, attribute) in declaration.attributes.iter().enumerate() {
                let location = format!(
                    "/{section}[name={}]/attributes/{}",
                    declaration.name, attribute.name
                );
                if is_reserved_column(&attribute.name) {
                    diagnostics.push(Diagnostic::new(
                        Code::ReservedColumn,
                        location,
                        format!("attribute `{}` clashes with a reserved column", attribute.name),
                    ));
                } else if declaration.attributes[..i]
                    .iter()
                    .any(|a| a.name != attribute.name && a.name.eq_ignore_ascii_case(&attribute.name))
                {
                    diagnostics.push(Diagnostic::new(
                        Code::AttrDeclDuplicate,
                        location,
                        format!(
                            "attribute `{}` differs from another only in letter case",
                            attribute.name
                        ),
                    ));
                }
            }
        }
    }
    if diagnostics.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidLog(diagnostics))
    }
}

fn time_cell(time: Timestamp, location: impl FnOnce() -> String) -> Result<String> {
    time.to_iso_millis().map_err(|e| Error::Unrepresentable {
        location: location(),
        message: e.to_string(),
    })
}

fn value_cell(value: &AttributeValue, location: impl FnOnce() -> String) -> Result<SqlValue> {
    Ok(match value {
        AttributeValue::String(s) => SqlValue::Text(s.clone()),
        AttributeValue::Time(t) => SqlValue::Text(time_cell(*t, location)?),
        AttributeValue::Integer(i) => SqlValue::Integer(*i),
        AttributeValue::Float(f) if f.is_nan() => {
            return Err(Error::Unrepresentable {
                location: location(),
                message: "NaN cannot be stored".into(),
            })
        }
        AttributeValue::Float(f) => SqlValue::Real(*f),
        AttributeValue::Boolean(b) => SqlValue::Integer(i64::from(*b)),
    })
}

fn create_fixed_tables(conn: &Connection) -> rusqlite::Result<()> {
    conn.execute_batch(
        "CREATE TABLE \"event_map_type\" (\"ocel_type\" TEXT PRIMARY KEY, \"ocel_type_map\" TEXT NOT NULL);
         CREATE TABLE \"object_map_type\" (\"ocel_type\" TEXT PRIMARY KEY, \"ocel_type_map\" TEXT NOT NULL);
         CREATE TABLE \"event\" (\"ocel_id\" TEXT PRIMARY KEY, \
            \"ocel_type\" TEXT REFERENCES \"event_map_type\" (\"ocel_type\"));
         CREATE TABLE \"object\" (\"ocel_id\" TEXT PRIMARY KEY, \
            \"ocel_type\" TEXT REFERENCES \"object_map_type\" (\"ocel_type\"));
         CREATE TABLE \"event_object\" (\
            \"ocel_event_id\" TEXT REFERENCES \"event\" (\"ocel_id\"), \
            \"ocel_object_id\" TEXT REFERENCES \"object\" (\"ocel_id\"), \
            \"ocel_qualifier\" TEXT, \
            PRIMARY KEY (\"ocel_event_id\", \"ocel_object_id\", \"ocel_qualifier\"));
         CREATE TABLE \"object_object\" (\
            \"ocel_source_id\" TEXT REFERENCES \"object\" (\"ocel_id\"), \
            \"ocel_target_id\" TEXT REFERENCES \"object\" (\"ocel_id\"), \
            \"ocel_qualifier\" TEXT, \
            PRIMARY KEY (\"ocel_source_id\", \"ocel_target_id\", \"ocel_qualifier\"));",
    )
}

fn insert(conn: &Connection, table: &str, columns: &[&str], values: Vec<SqlValue>) -> Result<()> {
    let names: Vec<String> = columns.iter().map(|c| quote(c)).collect();
    let marks: Vec<String> = (1..=columns.len()).map(|i| format!("?{i}")).collect();
    let sql = format!(
        "INSERT INTO {} ({}) VALUES ({})",
        quote(table),
        names.join(", "),
        marks.join(", ")
    );
    conn.prepare_cached(&sql)?.execute(params_from_iter(values))?;
    Ok(())
}

fn write_types(
    conn: &Connection,
    category: Category,
    declarations: &[TypeDeclaration],
) -> Result<HashMap<String, String>> {
    let mut mapper = TypeNameMapper::default();
    let mut tables = HashMap::new();
    for declaration in declarations {
        let mapped = mapper.assign(&declaration.name);
        insert(
            conn,
            category.map_table(),
            &[TYPE, TYPE_MAP],
            vec![
                SqlValue::Text(declaration.name.clone()),
                SqlValue::Text(mapped.clone()),
            ],
        )?;
        let table = category.type_table(&mapped);
        let id_column = match category {
            Category::Event => format!(
                "{} TEXT PRIMARY KEY REFERENCES {} ({})",
                quote(ID),
                quote(category.general_table()),
                quote(ID)
            ),
            Category::Object => format!(
                "{} TEXT REFERENCES {} ({})",
                quote(ID),
                quote(category.general_table()),
                quote(ID)
            ),
        };
        let mut columns = vec![id_column, format!("{} TIMESTAMP", quote(TIME))];
        columns.extend(
            declaration
                .attributes
                .iter()
                .map(|a| format!("{} {}", quote(&a.name), declared_type(a.kind))),
        );
        if category == Category::Object {
            columns.push(format!("{} TEXT", quote(CHANGED_FIELD)));
        }
        conn.execute_batch(&format!(
            "CREATE TABLE {} ({});",
            quote(&table),
            columns.join(", ")
        ))?;
        tables.insert(declaration.name.clone(), table);
    }
    Ok(tables)
}

fn write_event(conn: &Connection, table: &str, declaration: &TypeDeclaration, event: &Event) -> Result<()> {
    let location = || format!("/events[id={}]", event.id);
    insert(
        conn,
        "event",
        &[ID, TYPE],
        vec![
            SqlValue::Text(event.id.clone()),
            SqlValue::Text(event.event_type.clone()),
        ],
    )?;
    let mut columns = vec![ID, TIME];
    let mut values = vec![
        SqlValue::Text(event.id.clone()),
        SqlValue::Text(time_cell(event.time, || format!("{}/time", location()))?),
    ];
    for attribute in &declaration.attributes {
        if let Some(value) = event.attributes.get(&attribute.name) {
            columns.push(&attribute.name);
            values.push(value_cell(value, || {
                format!("{}/attributes/{}", location(), attribute.name)
            })?);
        }
    }
    insert(conn, table, &columns, values)
}

/// Writes the epoch snapshot row, then one change row per later assignment
/// in (time, attribute) order.
fn write_object(conn: &Connection, table: &str, object: &Object) -> Result<()> {
    let location = |attribute: &str| format!("/objects[id={}]/attributes/{attribute}", object.id);
    insert(
        conn,
        "object",
        &[ID, TYPE],
        vec![
            SqlValue::Text(object.id.clone()),
            SqlValue::Text(object.object_type.clone()),
        ],
    )?;
    let epoch = time_cell(Timestamp::ZERO, String::new)?;
    let mut columns = vec![ID, TIME, CHANGED_FIELD];
    let mut values = vec![
        SqlValue::Text(object.id.clone()),
        SqlValue::Text(epoch),
        SqlValue::Text(String::new()),
    ];
    for assignment in object.assignments.iter().filter(|a| a.time.is_zero()) {
        columns.push(&assignment.attribute);
        values.push(value_cell(&assignment.value, || location(&assignment.attribute))?);
    }
    insert(conn, table, &columns, values)?;

    let mut changes: Vec<_> = object.assignments.iter().filter(|a| !a.time.is_zero()).collect();
    changes.sort_by(|a, b| (a.time, &a.attribute).cmp(&(b.time, &b.attribute)));
    for change in changes {
        let time = time_cell(change.time, || location(&change.attribute))?;
        insert(
            conn,
            table,
            &[ID, TIME, CHANGED_FIELD, &change.attribute],
            vec![
                SqlValue::Text(object.id.clone()),
                SqlValue::Text(time),
                SqlValue::Text(change.attribute.clone()),
                value_cell(&change.value, || location(&change.attribute))?,
            ],
        )?;
    }
    Ok(())
}

/// Writes `log` to a new database at `path`, replacing any existing file.
///
/// Fails with [`Error::InvalidLog`] when the log has model ERRORs or
/// attribute names that cannot become columns.
pub fn write_relational(log: &Log, path: impl AsRef<Path>) -> Result<()> {
    check_writable(log)?;
    let path = path.as_ref();
    match fs::remove_file(path) {
        Err(e) if e.kind() != std::io::ErrorKind::NotFound => return Err(e.into()),
        _ => {}
    }
    let mut conn = Connection::open(path)?;
    conn.pragma_update(None, "foreign_keys", true)?;
    let tx = conn.transaction()?;
    create_fixed_tables(&tx)?;
    let event_tables = write_types(&tx, Category::Event, log.event_type_declarations())?;
    let object_tables = write_types(&tx, Category::Object, log.object_type_declarations())?;

    for event in log.events_in_time_order() {
        let declaration = log
            .event_type_declaration(&event.event_type)
            .expect("validated log declares every event type");
        write_event(&tx, &event_tables[&event.event_type], declaration, event)?;
    }
    for object in log.objects_by_id() {
        write_object(&tx, &object_tables[&object.object_type], object)?;
    }
    for relation in log.e2o() {
        insert(
            &tx,
            "event_object",
            &["ocel_event_id", "ocel_object_id", "ocel_qualifier"],
            vec![
                SqlValue::Text(relation.source.clone()),
                SqlValue::Text(relation.target.clone()),
                SqlValue::Text(relation.qualifier.clone()),
            ],
        )?;
    }
    for relation in log.o2o() {
        insert(
            &tx,
            "object_object",
            &["ocel_source_id", "ocel_target_id", "ocel_qualifier"],
            vec![
                SqlValue::Text(relation.source.clone()),
                SqlValue::Text(relation.target.clone()),
                SqlValue::Text(relation.qualifier.clone()),
            ],
        )?;
    }
    tx.commit()?;
    conn.close().map_err(|(_, e)| e)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Reading

fn cell_text(value: &SqlValue) -> Option<String> {
    match value {
        SqlValue::Null => None,
        SqlValue::Integer(i) => Some(i.to_string()),
        SqlValue::Real(f) => AttributeValue::Float(*f).to_text(),
        SqlValue::Text(s) => Some(s.clone()),
        SqlValue::Blob(b) => Some(String::from_utf8_lossy(b).into_owned()),
    }
}

fn convert(kind: ValueKind, value: &SqlValue) -> Option<AttributeValue> {
    match (kind, value) {
        (_, SqlValue::Null) => None,
        (ValueKind::String, v) => cell_text(v).map(AttributeValue::String),
        (ValueKind::Integer, SqlValue::Integer(i)) => Some(AttributeValue::Integer(*i)),
        (ValueKind::Float, SqlValue::Real(f)) => Some(AttributeValue::Float(*f)),
        (ValueKind::Float, SqlValue::Integer(i)) => Some(AttributeValue::Float(*i as f64)),
        (ValueKind::Boolean, SqlValue::Integer(0)) => Some(AttributeValue::Boolean(false)),
        (ValueKind::Boolean, SqlValue::Integer(1)) => Some(AttributeValue::Boolean(true)),
        (kind, SqlValue::Text(s)) => AttributeValue::parse_as(kind, s).ok(),
        _ => None,
    }
}

fn parse_time(cell: &SqlValue, code: Code, location: impl FnOnce() -> String) -> Result<Timestamp> {
    let text = match cell {
        SqlValue::Text(s) => s.as_str(),
        _ => "",
    };
    match Timestamp::parse(text) {
        Ok(t) => Ok(t),
        Err(e) => Err(Error::value(code, location(), format!("`{text}`: {e}"))),
    }
}

struct Row {
    number: usize,
    id: String,
    time: SqlValue,
    changed: Option<String>,
    cells: Vec<SqlValue>,
}

struct TypeTable {
    type_name: String,
    table: String,
    /// Attribute columns as (name, declared type), parallel to `Row::cells`.
    columns: Vec<(String, String)>,
    rows: Vec<Row>,
}

impl TypeTable {
    fn load(conn: &Connection, category: Category, type_name: String, mapped: &str) -> Result<Self> {
        let table = category.type_table(mapped);
        let columns: Vec<(String, String)> = table_columns(conn, &table)?
            .into_iter()
            .filter(|(name, _)| !is_reserved_column(name))
            .collect();
        let mut select = vec![quote(ID), quote(TIME)];
        select.push(match category {
            Category::Event => "NULL".to_string(),
            Category::Object => quote(CHANGED_FIELD),
        });
        select.extend(columns.iter().map(|(name, _)| quote(name)));
        let sql = format!(
            "SELECT {} FROM {} ORDER BY rowid",
            select.join(", "),
            quote(&table)
        );
        let mut statement = conn.prepare(&sql)?;
        let rows = statement.query_map([], |row| {
            let id = cell_text(&row.get::<_, SqlValue>(0)?).unwrap_or_default();
            let changed: Option<String> = match row.get::<_, SqlValue>(2)? {
                SqlValue::Null => None,
                other => cell_text(&other).filter(|s| !s.is_empty()),
            };
            let cells = (0..columns.len())
                .map(|i| row.get::<_, SqlValue>(3 + i))
                .collect::<rusqlite::Result<_>>()?;
            Ok((id, row.get::<_, SqlValue>(1)?, changed, cells))
        })?;
        let rows = rows
            .enumerate()
            .map(|(i, r)| {
                r.map(|(id, time, changed, cells)| Row {
                    number: i + 1,
                    id,
                    time,
                    changed,
                    cells,
                })
            })
            .collect::<rusqlite::Result<_>>()?;
        drop(statement);
        Ok(Self {
            type_name,
            table,
            columns,
            rows,
        })
    }

    fn location(&self, row: &Row) -> String {
        format!("{}[{}]", self.table, row.number)
    }

    /// Cells that carry a value: every cell of a snapshot row, only the
    /// changed column of a change row.
    fn carries(&self, row: &Row, column: usize) -> bool {
        match &row.changed {
            None => true,
            Some(changed) => *changed == self.columns[column].0,
        }
    }

    /// The kind of each attribute column: its declared type when every
    /// carried value converts, otherwise string.
    fn kinds(&self) -> Vec<ValueKind> {
        (0..self.columns.len())
            .map(|c| {
                let declared = kind_of_declared_type(&self.columns[c].1);
                let fits = self.rows.iter().filter(|row| self.carries(row, c)).all(|row| {
                    matches!(row.cells[c], SqlValue::Null) || convert(declared, &row.cells[c]).is_some()
                });
                if fits {
                    declared
                } else {
                    ValueKind::String
                }
            })
            .collect()
    }

    fn declaration(&self, kinds: &[ValueKind]) -> TypeDeclaration {
        let mut declaration = TypeDeclaration::new(self.type_name.clone());
        for ((name, _), kind) in self.columns.iter().zip(kinds) {
            declaration = declaration.with_attribute(name.clone(), *kind);
        }
        declaration
    }
}

fn read_map(conn: &Connection, category: Category) -> Result<Vec<(String, String)>> {
    let sql = format!(
        "SELECT CAST({TYPE} AS TEXT), CAST({TYPE_MAP} AS TEXT) FROM {} ORDER BY rowid",
        quote(category.map_table())
    );
    let mut statement = conn.prepare(&sql)?;
    let rows = statement.query_map([], |row| {
        Ok((
            row.get::<_, Option<String>>(0)?.unwrap_or_default(),
            row.get::<_, Option<String>>(1)?.unwrap_or_default(),
        ))
    })?;
    Ok(rows.collect::<rusqlite::Result<_>>()?)
}

fn read_pairs(conn: &Connection, table: &str, columns: [&str; 3]) -> Result<Vec<[String; 3]>> {
    let sql = format!(
        "SELECT CAST({} AS TEXT), CAST({} AS TEXT), CAST({} AS TEXT) FROM {} ORDER BY rowid",
        quote(columns[0]),
        quote(columns[1]),
        quote(columns[2]),
        quote(table)
    );
    let mut statement = conn.prepare(&sql)?;
    let rows = statement.query_map([], |row| {
        let get = |i| row.get::<_, Option<String>>(i).map(Option::unwrap_or_default);
        Ok([get(0)?, get(1)?, get(2)?])
    })?;
    Ok(rows.collect::<rusqlite::Result<_>>()?)
}

fn general_rows(conn: &Connection, category: Category) -> Result<Vec<(String, String)>> {
    let sql = format!(
        "SELECT CAST({ID} AS TEXT), CAST({TYPE} AS TEXT) FROM {} ORDER BY rowid",
        quote(category.general_table())
    );
    let mut statement = conn.prepare(&sql)?;
    let rows = statement.query_map([], |row| {
        Ok((
            row.get::<_, Option<String>>(0)?.unwrap_or_default(),
            row.get::<_, Option<String>>(1)?.unwrap_or_default(),
        ))
    })?;
    Ok(rows.collect::<rusqlite::Result<_>>()?)
}

fn load_log(conn: &Connection) -> Result<(Log, Vec<Diagnostic>)> {
    let mut builder = Log::builder();
    let mut diagnostics = Vec::new();

    // Events: per-type rows keyed by id, emitted in general-table order.
    let mut events: HashMap<String, Event> = HashMap::new();
    for (type_name, mapped) in read_map(conn, Category::Event)? {
        let table = TypeTable::load(conn, Category::Event, type_name, &mapped)?;
        let kinds = table.kinds();
        for row in &table.rows {
            let time = parse_time(&row.time, Code::EventTimeInvalid, || table.location(row))?;
            let mut event = Event::new(row.id.clone(), table.type_name.clone(), time);
            for (c, (name, _)) in table.columns.iter().enumerate() {
                if let Some(value) = convert(kinds[c], &row.cells[c]) {
                    event.attributes.insert(name.clone(), value);
                }
            }
            events.entry(row.id.clone()).or_insert(event);
        }
        builder.event_type(table.declaration(&kinds));
    }
    for (id, _) in general_rows(conn, Category::Event)? {
        if let Some(event) = events.remove(&id) {
            builder.event(event);
        }
    }

    // Objects: snapshot rows contribute every non-NULL column, change rows
    // only the column they name.
    let mut objects: HashMap<String, Object> = HashMap::new();
    for (type_name, mapped) in read_map(conn, Category::Object)? {
        let table = TypeTable::load(conn, Category::Object, type_name, &mapped)?;
        let kinds = table.kinds();
        for row in &table.rows {
            let time = parse_time(&row.time, Code::AssignmentTimeInvalid, || table.location(row))?;
            let object = objects
                .entry(row.id.clone())
                .or_insert_with(|| Object::new(row.id.clone(), table.type_name.clone()));
            match &row.changed {
                None => {
                    if !time.is_zero() {
                        diagnostics.push(Diagnostic::new(
                            Code::EpochNoncanonical,
                            table.location(row),
                            format!(
                                "snapshot row of `{}` is dated {} instead of the epoch",
                                row.id, time
                            ),
                        ));
                    }
                    for (c, (name, _)) in table.columns.iter().enumerate() {
                        if let Some(value) = convert(kinds[c], &row.cells[c]) {
                            object.assignments.push(assignment(name, time, value));
                        }
                    }
                }
                Some(changed) => {
                    let c = table
                        .columns
                        .iter()
                        .position(|(name, _)| name == changed)
                        .expect("layout check rejects unknown changed fields");
                    let value = convert(kinds[c], &row.cells[c]).ok_or_else(|| {
                        Error::schema(
                            table.location(row),
                            format!("change row for `{changed}` has no value"),
                        )
                    })?;
                    object.assignments.push(assignment(changed, time, value));
                }
            }
        }
        builder.object_type(table.declaration(&kinds));
    }
    for (id, _) in general_rows(conn, Category::Object)? {
        if let Some(object) = objects.remove(&id) {
            builder.object(object);
        }
    }

    for [event, object, qualifier] in read_pairs(
        conn,
        "event_object",
        ["ocel_event_id", "ocel_object_id", "ocel_qualifier"],
    )? {
        builder.e2o(event, qualifier, object);
    }
    for [source, target, qualifier] in read_pairs(
        conn,
        "object_object",
        ["ocel_source_id", "ocel_target_id", "ocel_qualifier"],
    )? {
        builder.o2o(source, qualifier, target);
    }
    Ok((builder.build(), diagnostics))
}

fn assignment(
    attribute: &str,
    time: Timestamp,
    value: AttributeValue,
) -> crate::model::ObjectAttributeAssignment {
    crate::model::ObjectAttributeAssignment {
        attribute: attribute.to_string(),
        time,
        value,
    }
}

fn open_database(path: &Path) -> Result<Connection> {
    let mut header = [0u8; 16];
    let mut file = fs::File::open(path)?;
    let complete = file.read(&mut header)? == header.len();
    if !complete || &header != SQLITE_MAGIC {
        return Err(Error::NotADatabase(path.display().to_string()));
    }
    Ok(Connection::open_with_flags(
        path,
        OpenFlags::SQLITE_OPEN_READ_ONLY,
    )?)
}

/// Reads a relational log along with the non-fatal findings of loading it,
/// such as snapshot rows dated after the epoch.
///
/// Layout ERRORs fail the read: a missing fixed table as
/// [`Error::MissingTable`], everything else as [`Error::Load`].
pub fn read_relational_with_diagnostics(path: impl AsRef<Path>) -> Result<(Log, Vec<Diagnostic>)> {
    let conn = open_database(path.as_ref())?;
    let layout = validate_relational_layout(&conn)?;
    if let Some(missing) = layout.iter().find(|d| d.code == Code::MissingTable) {
        return Err(Error::MissingTable(missing.location.clone()));
    }
    if has_errors(&layout) {
        return Err(Error::Load(layout));
    }
    let (log, mut diagnostics) = load_log(&conn)?;
    let mut all = layout;
    all.append(&mut diagnostics);
    Ok((log, all))
}

pub fn read_relational(path: impl AsRef<Path>) -> Result<Log> {
    read_relational_with_diagnostics(path).map(|(log, _)| log)
}

/// Opens `path` and runs [`validate_relational_layout`] on it.
pub fn validate_relational_layout_at(path: impl AsRef<Path>) -> Result<Vec<Diagnostic>> {
    let conn = open_database(path.as_ref())?;
    validate_relational_layout(&conn)
}
