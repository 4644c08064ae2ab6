//! Structural checks of a relational log, written as plain SQL queries so
//! they hold regardless of which constraints the database engine enforced.
//!
//! Locations are `table[row]` with 1-based row numbers in rowid order.

use rusqlite::{params, Connection};

use super::mapping::is_valid_mapped_name;
use super::{quote, table_columns, Category, CHANGED_FIELD, ID, TIME, TYPE, TYPE_MAP};
use crate::diagnostic::{Code, Diagnostic};
use crate::error::Result;

pub(crate) const FIXED_TABLES: &[(&str, &[&str])] = &[
    ("event_map_type", &[TYPE, TYPE_MAP]),
    ("object_map_type", &[TYPE, TYPE_MAP]),
    ("event", &[ID, TYPE]),
    ("object", &[ID, TYPE]),
    (
        "event_object",
        &["ocel_event_id", "ocel_object_id", "ocel_qualifier"],
    ),
    (
        "object_object",
        &["ocel_source_id", "ocel_target_id", "ocel_qualifier"],
    ),
];

pub(crate) fn table_exists(conn: &Connection, name: &str) -> Result<bool> {
    let count: i64 = conn.query_row(
        "SELECT COUNT(*) FROM sqlite_master WHERE type = 'table' AND name = ?1 COLLATE NOCASE",
        params![name],
        |row| row.get(0),
    )?;
    Ok(count > 0)
}

/// Rows of `(row number, column values as text)` returned by `sql`.
fn numbered(conn: &Connection, sql: &str, args: &[&dyn rusqlite::ToSql]) -> Result<Vec<(i64, Vec<String>)>> {
    let mut statement = conn.prepare(sql)?;
    let width = statement.column_count();
    let rows = statement.query_map(args, |row| {
        let rn: i64 = row.get(0)?;
        let mut values = Vec::with_capacity(width - 1);
        for i in 1..width {
            let value: Option<String> = row.get(i)?;
            values.push(value.unwrap_or_default());
        }
        Ok((rn, values))
    })?;
    Ok(rows.collect::<rusqlite::Result<_>>()?)
}

fn with_rn(table: &str) -> String {
    format!(
        "(SELECT ROW_NUMBER() OVER (ORDER BY rowid) AS rn, * FROM {})",
        quote(table)
    )
}

struct Checker<'c> {
    conn: &'c Connection,
    out: Vec<Diagnostic>,
}

impl Checker<'_> {
    fn push(&mut self, code: Code, table: &str, row: i64, message: String) {
        self.out
            .push(Diagnostic::new(code, format!("{table}[{row}]"), message));
    }

    /// Reports every row after the first that repeats `key_expr`.
    fn repeats(
        &mut self,
        table: &str,
        key_expr: &str,
        label_expr: &str,
        code: Code,
        what: &str,
    ) -> Result<()> {
        let sql = format!(
            "SELECT rn, CAST({label_expr} AS TEXT) FROM \
             (SELECT ROW_NUMBER() OVER (ORDER BY rowid) AS rn, \
                     ROW_NUMBER() OVER (PARTITION BY {key_expr} ORDER BY rowid) AS k, * \
              FROM {}) WHERE k > 1 ORDER BY rn",
            quote(table)
        );
        for (rn, values) in numbered(self.conn, &sql, &[])? {
            self.push(code, table, rn, format!("{what} `{}` is repeated", values[0]));
        }
        Ok(())
    }

    fn map_table(&mut self, category: Category) -> Result<Vec<(String, String)>> {
        let table = category.map_table();
        self.repeats(table, TYPE, TYPE, Code::MapTypeDuplicate, "type")?;
        self.repeats(
            table,
            &format!("lower({TYPE_MAP})"),
            TYPE_MAP,
            Code::MapNameDuplicate,
            "mapped name",
        )?;

        let sql = format!(
            "SELECT rn, CAST({TYPE} AS TEXT), CAST({TYPE_MAP} AS TEXT) FROM {} ORDER BY rn",
            with_rn(table)
        );
        let mut types: Vec<(String, String)> = Vec::new();
        for (rn, values) in numbered(self.conn, &sql, &[])? {
            let [name, mapped]: [String; 2] = values.try_into().expect("two columns");
            if !is_valid_mapped_name(&mapped) {
                self.push(
                    Code::MapNameInvalid,
                    table,
                    rn,
                    format!("mapped name `{mapped}` is not an identifier"),
                );
                continue;
            }
            if types
                .iter()
                .any(|(n, m)| *n == name || m.eq_ignore_ascii_case(&mapped))
            {
                continue;
            }
            let type_table = category.type_table(&mapped);
            if !table_exists(self.conn, &type_table)? {
                self.push(
                    Code::TypeTableMissing,
                    table,
                    rn,
                    format!("type `{name}` maps to missing table `{type_table}`"),
                );
                continue;
            }
            let columns = table_columns(self.conn, &type_table)?;
            let mut required = vec![ID, TIME];
            if category == Category::Object {
                required.push(CHANGED_FIELD);
            }
            let mut complete = true;
            for column in required {
                if !columns.iter().any(|(c, _)| c.eq_ignore_ascii_case(column)) {
                    self.out.push(Diagnostic::new(
                        Code::MissingColumn,
                        type_table.clone(),
                        format!("table `{type_table}` lacks column `{column}`"),
                    ));
                    complete = false;
                }
            }
            if complete {
                types.push((name, mapped));
            }
        }
        Ok(types)
    }

    fn general_table(&mut self, category: Category) -> Result<()> {
        let table = category.general_table();
        let code = match category {
            Category::Event => Code::EventDuplicateId,
            Category::Object => Code::ObjectDuplicateId,
        };
        self.repeats(table, ID, ID, code, "id")?;
        let sql = format!(
            "SELECT rn, CAST(ocel_id AS TEXT), CAST(ocel_type AS TEXT) FROM {} AS g \
             WHERE NOT EXISTS (SELECT 1 FROM {} AS m WHERE m.ocel_type = g.ocel_type) ORDER BY rn",
            with_rn(table),
            quote(category.map_table())
        );
        for (rn, values) in numbered(self.conn, &sql, &[])? {
            self.push(
                Code::TypeUnmapped,
                table,
                rn,
                format!("`{}` has unmapped type `{}`", values[0], values[1]),
            );
        }
        Ok(())
    }

    fn type_table(&mut self, category: Category, type_name: &str, mapped: &str) -> Result<()> {
        let general = quote(category.general_table());
        let table = category.type_table(mapped);

        let orphans = format!(
            "SELECT rn, CAST(ocel_id AS TEXT) FROM {} AS t \
             WHERE NOT EXISTS (SELECT 1 FROM {general} AS g WHERE g.ocel_id = t.ocel_id) ORDER BY rn",
            with_rn(&table)
        );
        for (rn, values) in numbered(self.conn, &orphans, &[])? {
            self.push(
                Code::TypeTableOrphan,
                &table,
                rn,
                format!(
                    "`{}` is missing from table `{}`",
                    values[0],
                    category.general_table()
                ),
            );
        }

        let misrouted = format!(
            "SELECT rn, CAST(t.ocel_id AS TEXT), CAST(g.ocel_type AS TEXT) FROM {} AS t \
             JOIN {general} AS g ON g.ocel_id = t.ocel_id \
             WHERE g.ocel_type IS NOT ?1 ORDER BY rn",
            with_rn(&table)
        );
        for (rn, values) in numbered(self.conn, &misrouted, &[&type_name])? {
            self.push(
                Code::TypeTableMisrouted,
                &table,
                rn,
                format!("`{}` has type `{}`, not `{type_name}`", values[0], values[1]),
            );
        }

        if category == Category::Event {
            self.repeats(&table, ID, ID, Code::EventDuplicateId, "id")?;
        }

        let missing = format!(
            "SELECT rn, CAST(ocel_id AS TEXT) FROM {} AS g \
             WHERE g.ocel_type = ?1 AND NOT EXISTS (SELECT 1 FROM {} AS t WHERE t.ocel_id = g.ocel_id) ORDER BY rn",
            with_rn(category.general_table()),
            quote(&table)
        );
        for (rn, values) in numbered(self.conn, &missing, &[&type_name])? {
            self.push(
                Code::TypeTableMissingRow,
                category.general_table(),
                rn,
                format!("`{}` has no row in `{table}`", values[0]),
            );
        }

        if category == Category::Object {
            let attributes: Vec<String> = table_columns(self.conn, &table)?
                .into_iter()
                .map(|(name, _)| name)
                .filter(|name| !super::is_reserved_column(name))
                .collect();
            let sql = format!(
                "SELECT rn, CAST(ocel_id AS TEXT), CAST(ocel_changed_field AS TEXT) FROM {} \
                 WHERE ocel_changed_field IS NOT NULL AND ocel_changed_field != '' ORDER BY rn",
                with_rn(&table)
            );
            for (rn, values) in numbered(self.conn, &sql, &[])? {
                if !attributes.iter().any(|a| *a == values[1]) {
                    self.push(
                        Code::ChangedFieldUnknown,
                        &table,
                        rn,
                        format!("changed field `{}` is not a column of `{table}`", values[1]),
                    );
                }
            }
        }
        Ok(())
    }

    fn relation_table(
        &mut self,
        table: &str,
        source: (&str, &str, Code),
        target: (&str, &str, Code),
        duplicate: Code,
    ) -> Result<()> {
        for (column, referenced, code) in [source, target] {
            let sql = format!(
                "SELECT rn, CAST({column} AS TEXT) FROM {} AS r \
                 WHERE NOT EXISTS (SELECT 1 FROM {} AS g WHERE g.ocel_id = r.{column}) ORDER BY rn",
                with_rn(table),
                quote(referenced)
            );
            for (rn, values) in numbered(self.conn, &sql, &[])? {
                self.push(
                    code,
                    table,
                    rn,
                    format!("`{}` is not in table `{referenced}`", values[0]),
                );
            }
        }
        let key = format!("{}, {}, ocel_qualifier", source.0, target.0);
        let label = format!("{} || ' ' || ocel_qualifier || ' ' || {}", source.0, target.0);
        self.repeats(table, &key, &label, duplicate, "relation")
    }
}

/// Checks the layout of an open relational log. Missing fixed tables or
/// columns are reported and end the check early.
pub fn validate_relational_layout(conn: &Connection) -> Result<Vec<Diagnostic>> {
    let mut checker = Checker {
        conn,
        out: Vec::new(),
    };
    for (table, columns) in FIXED_TABLES {
        if !table_exists(conn, table)? {
            checker.out.push(Diagnostic::new(
                Code::MissingTable,
                *table,
                format!("table `{table}` does not exist"),
            ));
            continue;
        }
        let present = table_columns(conn, table)?;
        for column in *columns {
            if !present.iter().any(|(c, _)| c.eq_ignore_ascii_case(column)) {
                checker.out.push(Diagnostic::new(
                    Code::MissingColumn,
                    *table,
                    format!("table `{table}` lacks column `{column}`"),
                ));
            }
        }
    }
    if !checker.out.is_empty() {
        return Ok(checker.out);
    }

    for category in [Category::Event, Category::Object] {
        let types = checker.map_table(category)?;
        checker.general_table(category)?;
        for (name, mapped) in &types {
            checker.type_table(category, name, mapped)?;
        }
    }
    checker.relation_table(
        "event_object",
        ("ocel_event_id", "event", Code::E2oDanglingEvent),
        ("ocel_object_id", "object", Code::E2oDanglingObject),
        Code::E2oDuplicate,
    )?;
    checker.relation_table(
        "object_object",
        ("ocel_source_id", "object", Code::O2oDanglingSource),
        ("ocel_target_id", "object", Code::O2oDanglingTarget),
        Code::O2oDuplicate,
    )?;
    Ok(checker.out)
}
