//! Inspects written databases with plain SQL and checks the layout validator
//! against hand-corrupted copies.

use std::path::{Path, PathBuf};

use ocel_core::{
    read_relational, read_relational_with_diagnostics, running_example, validate_relational_layout_at,
    write_relational, Code, Diagnostic, Error, Log,
};
use rusqlite::Connection;

fn fixture_db(dir: &Path) -> PathBuf {
    let path = dir.join("fixture.sqlite");
    write_relational(&running_example(), &path).unwrap();
    path
}

fn tables(conn: &Connection) -> Vec<String> {
    let mut statement = conn
        .prepare("SELECT name FROM sqlite_master WHERE type = 'table' ORDER BY name")
        .unwrap();
    let names = statement.query_map([], |row| row.get(0)).unwrap();
    names.collect::<Result<_, _>>().unwrap()
}

fn columns(conn: &Connection, table: &str) -> Vec<String> {
    let mut statement = conn
        .prepare("SELECT name FROM pragma_table_info(?1) ORDER BY cid")
        .unwrap();
    let names = statement.query_map([table], |row| row.get(0)).unwrap();
    names.collect::<Result<_, _>>().unwrap()
}

fn primary_key(conn: &Connection, table: &str) -> Vec<String> {
    let mut statement = conn
        .prepare("SELECT name FROM pragma_table_info(?1) WHERE pk > 0 ORDER BY pk")
        .unwrap();
    let names = statement.query_map([table], |row| row.get(0)).unwrap();
    names.collect::<Result<_, _>>().unwrap()
}

fn foreign_keys(conn: &Connection, table: &str) -> Vec<(String, String, String)> {
    let mut statement = conn
        .prepare("SELECT \"from\", \"table\", \"to\" FROM pragma_foreign_key_list(?1) ORDER BY \"from\"")
        .unwrap();
    let keys = statement
        .query_map([table], |row| Ok((row.get(0)?, row.get(1)?, row.get(2)?)))
        .unwrap();
    keys.collect::<Result<_, _>>().unwrap()
}

fn fk(from: &str, table: &str, to: &str) -> (String, String, String) {
    (from.into(), table.into(), to.into())
}

#[test]
fn fixture_tables_and_columns() {
    let dir = tempfile::tempdir().unwrap();
    let conn = Connection::open(fixture_db(dir.path())).unwrap();
    let mut expected = vec![
        "event",
        "event_ApprovePurchaseRequisition",
        "event_ChangePOQuantity",
        "event_CreatePurchaseOrder",
        "event_CreatePurchaseRequisition",
        "event_InsertInvoice",
        "event_InsertPayment",
        "event_RemovePaymentBlock",
        "event_SetPaymentBlock",
        "event_map_type",
        "event_object",
        "object",
        "object_Invoice",
        "object_Payment",
        "object_PurchaseOrder",
        "object_PurchaseRequisition",
        "object_map_type",
        "object_object",
    ];
    expected.sort();
    assert_eq!(tables(&conn), expected);

    assert_eq!(columns(&conn, "event_map_type"), ["ocel_type", "ocel_type_map"]);
    assert_eq!(columns(&conn, "object_map_type"), ["ocel_type", "ocel_type_map"]);
    assert_eq!(columns(&conn, "event"), ["ocel_id", "ocel_type"]);
    assert_eq!(columns(&conn, "object"), ["ocel_id", "ocel_type"]);
    assert_eq!(
        columns(&conn, "event_object"),
        ["ocel_event_id", "ocel_object_id", "ocel_qualifier"]
    );
    assert_eq!(
        columns(&conn, "object_object"),
        ["ocel_source_id", "ocel_target_id", "ocel_qualifier"]
    );
    assert_eq!(
        columns(&conn, "event_InsertPayment"),
        ["ocel_id", "ocel_time", "payment_inserter"]
    );
    assert_eq!(
        columns(&conn, "object_PurchaseOrder"),
        [
            "ocel_id",
            "ocel_time",
            "po_product",
            "po_quantity",
            "ocel_changed_field"
        ]
    );
    assert_eq!(
        columns(&conn, "object_Payment"),
        ["ocel_id", "ocel_time", "ocel_changed_field"]
    );

    assert_eq!(primary_key(&conn, "event_map_type"), ["ocel_type"]);
    assert_eq!(primary_key(&conn, "event"), ["ocel_id"]);
    assert_eq!(primary_key(&conn, "object"), ["ocel_id"]);
    assert_eq!(primary_key(&conn, "event_InsertInvoice"), ["ocel_id"]);
    assert!(primary_key(&conn, "object_Invoice").is_empty());
    assert_eq!(
        primary_key(&conn, "event_object"),
        ["ocel_event_id", "ocel_object_id", "ocel_qualifier"]
    );
    assert_eq!(
        primary_key(&conn, "object_object"),
        ["ocel_source_id", "ocel_target_id", "ocel_qualifier"]
    );

    assert_eq!(
        foreign_keys(&conn, "event"),
        [fk("ocel_type", "event_map_type", "ocel_type")]
    );
    assert_eq!(
        foreign_keys(&conn, "event_InsertInvoice"),
        [fk("ocel_id", "event", "ocel_id")]
    );
    assert_eq!(
        foreign_keys(&conn, "object_Invoice"),
        [fk("ocel_id", "object", "ocel_id")]
    );
    assert_eq!(
        foreign_keys(&conn, "event_object"),
        [
            fk("ocel_event_id", "event", "ocel_id"),
            fk("ocel_object_id", "object", "ocel_id")
        ]
    );
    assert_eq!(
        foreign_keys(&conn, "object_object"),
        [
            fk("ocel_source_id", "object", "ocel_id"),
            fk("ocel_target_id", "object", "ocel_id")
        ]
    );
}

#[test]
fn fixture_map_tables() {
    let dir = tempfile::tempdir().unwrap();
    let conn = Connection::open(fixture_db(dir.path())).unwrap();
    let mapped: String = conn
        .query_row(
            "SELECT ocel_type_map FROM event_map_type WHERE ocel_type = 'Approve Purchase Requisition'",
            [],
            |r| r.get(0),
        )
        .unwrap();
    assert_eq!(mapped, "ApprovePurchaseRequisition");
    let count: i64 = conn
        .query_row("SELECT COUNT(*) FROM event_map_type", [], |r| r.get(0))
        .unwrap();
    assert_eq!(count, 8);
    let count: i64 = conn
        .query_row("SELECT COUNT(*) FROM object_map_type", [], |r| r.get(0))
        .unwrap();
    assert_eq!(count, 4);
    // The general tables list every id once, with its type.
    let count: i64 = conn
        .query_row("SELECT COUNT(DISTINCT ocel_id) FROM event", [], |r| r.get(0))
        .unwrap();
    assert_eq!(count, 13);
    let count: i64 = conn
        .query_row("SELECT COUNT(DISTINCT ocel_id) FROM object", [], |r| r.get(0))
        .unwrap();
    assert_eq!(count, 9);
    let count: i64 = conn
        .query_row("SELECT COUNT(*) FROM event_object", [], |r| r.get(0))
        .unwrap();
    assert_eq!(count, 20);
    let count: i64 = conn
        .query_row("SELECT COUNT(*) FROM object_object", [], |r| r.get(0))
        .unwrap();
    assert_eq!(count, 7);
}

/// id, time, product, quantity, changed field.
type Row = (String, String, Option<String>, Option<i64>, String);

#[test]
fn purchase_order_rows() {
    let dir = tempfile::tempdir().unwrap();
    let conn = Connection::open(fixture_db(dir.path())).unwrap();
    let mut statement = conn
        .prepare(
            "SELECT ocel_id, ocel_time, po_product, po_quantity, ocel_changed_field \
             FROM object_PurchaseOrder ORDER BY rowid",
        )
        .unwrap();
    let rows: Vec<Row> = statement
        .query_map([], |r| {
            Ok((r.get(0)?, r.get(1)?, r.get(2)?, r.get(3)?, r.get(4)?))
        })
        .unwrap()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(
        rows,
        vec![
            (
                "PO1".into(),
                "1970-01-01T00:00:00.000Z".into(),
                Some("Cows".into()),
                Some(500),
                "".into()
            ),
            (
                "PO1".into(),
                "2022-01-13T12:00:00.000Z".into(),
                None,
                Some(600),
                "po_quantity".into()
            ),
            (
                "PO2".into(),
                "1970-01-01T00:00:00.000Z".into(),
                Some("Notebooks".into()),
                Some(1),
                "".into()
            ),
        ]
    );
}

#[test]
fn insert_payment_rows() {
    let dir = tempfile::tempdir().unwrap();
    let conn = Connection::open(fixture_db(dir.path())).unwrap();
    let mut statement = conn
        .prepare("SELECT ocel_id, payment_inserter FROM event_InsertPayment ORDER BY ocel_id")
        .unwrap();
    let rows: Vec<(String, String)> = statement
        .query_map([], |r| Ok((r.get(0)?, r.get(1)?)))
        .unwrap()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(
        rows,
        vec![
            ("e13".into(), "Robot".into()),
            ("e7".into(), "Robot".into()),
            ("e8".into(), "Robot".into())
        ]
    );
}

#[test]
fn objects_without_values_get_an_epoch_row() {
    let dir = tempfile::tempdir().unwrap();
    let conn = Connection::open(fixture_db(dir.path())).unwrap();
    let rows: i64 = conn
        .query_row(
            "SELECT COUNT(*) FROM object_Payment WHERE ocel_time = '1970-01-01T00:00:00.000Z' AND ocel_changed_field = ''",
            [],
            |r| r.get(0),
        )
        .unwrap();
    assert_eq!(rows, 3);
}

#[test]
fn table_count_law_and_empty_log() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.sqlite");
    write_relational(&Log::empty(), &path).unwrap();
    let conn = Connection::open(&path).unwrap();
    assert_eq!(
        tables(&conn),
        [
            "event",
            "event_map_type",
            "event_object",
            "object",
            "object_map_type",
            "object_object"
        ]
    );
}

#[test]
fn writing_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.sqlite");
    let b = dir.path().join("b.sqlite");
    write_relational(&running_example(), &a).unwrap();
    write_relational(&running_example(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // Overwriting an existing file replaces it.
    write_relational(&running_example(), &a).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

// Corruptions. Each applies SQL to a fresh fixture database and returns the
// layout diagnostics.

fn corrupt(sql: &str) -> (tempfile::TempDir, PathBuf, Vec<Diagnostic>) {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture_db(dir.path());
    let conn = Connection::open(&path).unwrap();
    // The bundled SQLite enforces foreign keys by default.
    conn.pragma_update(None, "foreign_keys", false).unwrap();
    conn.execute_batch(sql).unwrap();
    drop(conn);
    let diagnostics = validate_relational_layout_at(&path).unwrap();
    (dir, path, diagnostics)
}

fn found(diagnostics: &[Diagnostic]) -> Vec<(Code, &str)> {
    diagnostics
        .iter()
        .map(|d| (d.code, d.location.as_str()))
        .collect()
}

/// Recreates `table` without constraints so duplicates can be inserted.
fn unconstrained(table: &str) -> String {
    format!(
        "CREATE TABLE tmp AS SELECT * FROM \"{table}\"; DROP TABLE \"{table}\"; ALTER TABLE tmp RENAME TO \"{table}\";"
    )
}

#[test]
fn fixture_layout_is_clean() {
    let (_dir, _path, diagnostics) = corrupt("");
    assert!(diagnostics.is_empty(), "{diagnostics:?}");
}

#[test]
fn orphan_type_table_row() {
    let (_dir, path, diagnostics) =
        corrupt("INSERT INTO event_InsertInvoice VALUES ('eX', '2022-03-01T00:00:00.000Z', 'Luke');");
    assert_eq!(
        found(&diagnostics),
        [(Code::TypeTableOrphan, "event_InsertInvoice[4]")]
    );
    assert!(matches!(read_relational(&path), Err(Error::Load(_))));
}

#[test]
fn duplicate_o2o_triple() {
    let sql =
        unconstrained("object_object") + "INSERT INTO object_object VALUES ('PR1', 'PO1', 'PO from PR');";
    let (_dir, _path, diagnostics) = corrupt(&sql);
    assert_eq!(found(&diagnostics), [(Code::O2oDuplicate, "object_object[8]")]);
}

#[test]
fn duplicate_e2o_triple() {
    let sql = unconstrained("event_object")
        + "INSERT INTO event_object VALUES ('e1', 'PR1', 'Regular placement of PR');";
    let (_dir, _path, diagnostics) = corrupt(&sql);
    assert_eq!(found(&diagnostics), [(Code::E2oDuplicate, "event_object[21]")]);
}

#[test]
fn dangling_relations() {
    let (_dir, _path, diagnostics) = corrupt(
        "INSERT INTO event_object VALUES ('e1', 'GHOST', 'q');
         INSERT INTO event_object VALUES ('eZ', 'PR1', 'q');
         INSERT INTO object_object VALUES ('GHOST', 'PR1', 'q');
         INSERT INTO object_object VALUES ('PR1', 'GHOST', 'q');",
    );
    let mut codes: Vec<Code> = diagnostics.iter().map(|d| d.code).collect();
    codes.sort();
    let mut expected = vec![
        Code::E2oDanglingEvent,
        Code::E2oDanglingObject,
        Code::O2oDanglingSource,
        Code::O2oDanglingTarget,
    ];
    expected.sort();
    assert_eq!(codes, expected);
}

#[test]
fn duplicate_event_id() {
    let sql = unconstrained("event") + "INSERT INTO event VALUES ('e3', 'Create Purchase Order');";
    let (_dir, _path, diagnostics) = corrupt(&sql);
    assert_eq!(found(&diagnostics), [(Code::EventDuplicateId, "event[14]")]);
}

#[test]
fn duplicate_object_id() {
    let sql = unconstrained("object") + "INSERT INTO object VALUES ('R1', 'Invoice');";
    let (_dir, _path, diagnostics) = corrupt(&sql);
    assert_eq!(found(&diagnostics), [(Code::ObjectDuplicateId, "object[10]")]);
}

#[test]
fn missing_type_table_row() {
    let (_dir, _path, diagnostics) = corrupt("DELETE FROM event_InsertInvoice WHERE ocel_id = 'e5';");
    assert_eq!(found(&diagnostics), [(Code::TypeTableMissingRow, "event[5]")]);
}

#[test]
fn misrouted_row() {
    let (_dir, _path, diagnostics) =
        corrupt("UPDATE event SET ocel_type = 'Insert Payment' WHERE ocel_id = 'e5';");
    assert_eq!(
        found(&diagnostics),
        [
            (Code::TypeTableMisrouted, "event_InsertInvoice[1]"),
            (Code::TypeTableMissingRow, "event[5]"),
        ]
    );
}

#[test]
fn map_table_defects() {
    let (_dir, _path, diagnostics) = corrupt(
        "UPDATE event_map_type SET ocel_type_map = 'insertinvoice' WHERE ocel_type = 'Insert Payment';",
    );
    assert_eq!(found(&diagnostics)[0].0, Code::MapNameDuplicate);

    let (_dir, _path, diagnostics) =
        corrupt("UPDATE object_map_type SET ocel_type_map = 'Pay ment' WHERE ocel_type = 'Payment';");
    assert_eq!(
        found(&diagnostics)[0],
        (Code::MapNameInvalid, "object_map_type[4]")
    );

    let sql = unconstrained("event_map_type")
        + "INSERT INTO event_map_type VALUES ('Insert Invoice', 'InsertInvoice2');";
    let (_dir, _path, diagnostics) = corrupt(&sql);
    assert_eq!(
        found(&diagnostics)[0],
        (Code::MapTypeDuplicate, "event_map_type[9]")
    );
}

#[test]
fn missing_type_table_and_unmapped_type() {
    let (_dir, _path, diagnostics) = corrupt("DROP TABLE event_InsertPayment;");
    assert_eq!(
        found(&diagnostics),
        [(Code::TypeTableMissing, "event_map_type[8]")]
    );

    let (_dir, _path, diagnostics) = corrupt("INSERT INTO event VALUES ('eZ', 'Mystery');");
    assert_eq!(found(&diagnostics), [(Code::TypeUnmapped, "event[14]")]);
}

#[test]
fn unknown_changed_field() {
    let (_dir, path, diagnostics) = corrupt(
        "INSERT INTO object_Invoice (ocel_id, ocel_time, ocel_changed_field) \
         VALUES ('R1', '2022-03-01T00:00:00.000Z', 'nope');",
    );
    assert_eq!(
        found(&diagnostics),
        [(Code::ChangedFieldUnknown, "object_Invoice[6]")]
    );
    match read_relational(&path) {
        Err(Error::Load(d)) => assert_eq!(d[0].code, Code::ChangedFieldUnknown),
        other => panic!("{other:?}"),
    }
}

#[test]
fn change_row_without_initial_value_is_legal() {
    let (_dir, path, diagnostics) = corrupt(
        "INSERT INTO object_Invoice (ocel_id, ocel_time, is_blocked, ocel_changed_field) \
         VALUES ('R9', '2022-03-01T00:00:00.000Z', 'Yes', 'is_blocked');
         INSERT INTO object VALUES ('R9', 'Invoice');",
    );
    assert!(diagnostics.is_empty());
    let log = read_relational(&path).unwrap();
    let r9 = log.object("R9").unwrap();
    assert_eq!(r9.assignments.len(), 1);
    assert!(log
        .oaval_at("R9", "is_blocked", ocel_core::Timestamp::ZERO)
        .unwrap()
        .is_none());
}

#[test]
fn missing_fixed_table() {
    let (_dir, path, diagnostics) = corrupt("DROP TABLE object_object;");
    assert_eq!(found(&diagnostics), [(Code::MissingTable, "object_object")]);
    match read_relational(&path) {
        Err(Error::MissingTable(table)) => assert_eq!(table, "object_object"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn missing_required_column() {
    let (_dir, _path, diagnostics) = corrupt("ALTER TABLE object_Payment DROP COLUMN ocel_changed_field;");
    assert_eq!(found(&diagnostics), [(Code::MissingColumn, "object_Payment")]);
}

#[test]
fn unparseable_event_time() {
    let (_dir, path, diagnostics) =
        corrupt("UPDATE event_InsertInvoice SET ocel_time = 'yesterday' WHERE ocel_id = 'e5';");
    assert!(diagnostics.is_empty());
    match read_relational(&path) {
        Err(Error::ValueParse { code, location, .. }) => {
            assert_eq!(code, Code::EventTimeInvalid);
            assert_eq!(location, "event_InsertInvoice[1]");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn late_snapshot_row() {
    let (_dir, path, diagnostics) =
        corrupt("UPDATE object_PurchaseOrder SET ocel_time = '1970-01-01 01:00 UTC' WHERE ocel_id = 'PO2';");
    assert!(diagnostics.is_empty());
    let (log, findings) = read_relational_with_diagnostics(&path).unwrap();
    assert_eq!(
        found(&findings),
        [(Code::EpochNoncanonical, "object_PurchaseOrder[3]")]
    );
    assert!(log
        .oaval_at("PO2", "po_quantity", ocel_core::Timestamp::ZERO)
        .unwrap()
        .is_none());
}

#[test]
fn not_a_database() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("text.sqlite");
    std::fs::write(&path, "<log/>").unwrap();
    assert!(matches!(read_relational(&path), Err(Error::NotADatabase(_))));
    assert!(matches!(
        validate_relational_layout_at(&path),
        Err(Error::NotADatabase(_))
    ));
    assert!(matches!(
        read_relational(dir.path().join("absent.sqlite")),
        Err(Error::Io(_))
    ));
}
