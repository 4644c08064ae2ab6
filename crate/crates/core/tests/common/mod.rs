//! Random valid logs for property tests, and codec helpers.
//!
//! Logs stay within 10 types (5 event, 5 object), 100 events, 100 objects,
//! 5 attributes per type and 3 assignments per object attribute. Names are
//! drawn from small alphabets so that type-name mapping collisions, quoting
//! and XML escaping all get exercised.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use ocel_core::{
    read_path, write_path, AttributeValue, Event, Format, Log, Object, Timestamp, TypeDeclaration, ValueKind,
};
use proptest::prelude::*;

/// 9999-12-31T23:59:59.999Z.
pub const MAX_MILLIS: i64 = 253_402_300_799_999;

const RESERVED: [&str; 3] = ["ocel_id", "ocel_time", "ocel_changed_field"];

#[derive(Debug, Clone)]
pub struct Seed {
    text: String,
    int: i64,
    float: f64,
    flag: bool,
    millis: i64,
}

fn seed() -> impl Strategy<Value = Seed> {
    (
        "[\\PC\t\n\r]{0,8}",
        any::<i64>(),
        prop_oneof![
            prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
            Just(0.1),
            Just(-0.0),
            Just(1e300),
        ],
        any::<bool>(),
        millis(),
    )
        .prop_map(|(text, int, float, flag, millis)| Seed {
            text,
            int,
            float,
            flag,
            millis,
        })
}

fn millis() -> impl Strategy<Value = i64> {
    prop_oneof![
        Just(0i64),
        0..=MAX_MILLIS,
        1_600_000_000_000i64..1_700_000_000_000
    ]
}

fn value(kind: ValueKind, seed: &Seed) -> AttributeValue {
    match kind {
        ValueKind::String => AttributeValue::String(seed.text.clone()),
        ValueKind::Time => AttributeValue::Time(Timestamp::from_millis(seed.millis).unwrap()),
        ValueKind::Integer => AttributeValue::Integer(seed.int),
        ValueKind::Float => AttributeValue::Float(seed.float),
        ValueKind::Boolean => AttributeValue::Boolean(seed.flag),
    }
}

fn kind() -> impl Strategy<Value = ValueKind> {
    prop::sample::select(ValueKind::ALL.to_vec())
}

fn type_name() -> impl Strategy<Value = String> {
    prop_oneof!["[ab _\\-]{1,4}", "[A-Za-zäß \"'<&]{1,10}"]
}

fn attribute_name() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-cA-C_ ]{1,3}",
        "[a-z][a-z0-9_\"ä]{0,8}",
        Just("ocel_x".to_string())
    ]
}

fn declarations() -> impl Strategy<Value = Vec<TypeDeclaration>> {
    prop::collection::vec(
        (
            type_name(),
            prop::collection::vec((attribute_name(), kind()), 0..=5),
        ),
        0..=5,
    )
    .prop_map(|raw| {
        let mut names = HashSet::new();
        raw.into_iter()
            .filter(|(name, _)| names.insert(name.clone()))
            .map(|(name, attributes)| {
                // Column names are case-insensitive in SQLite.
                let mut seen = HashSet::new();
                let mut declaration = TypeDeclaration::new(name);
                for (attribute, kind) in attributes {
                    let folded = attribute.to_ascii_lowercase();
                    if RESERVED.contains(&folded.as_str()) || !seen.insert(folded) {
                        continue;
                    }
                    declaration = declaration.with_attribute(attribute, kind);
                }
                declaration
            })
            .collect()
    })
}

type EventSeed = (usize, i64, String, Vec<Option<Seed>>);
type ObjectSeed = (usize, String, Vec<Vec<(i64, Seed)>>);
type RelationSeed = (usize, String, usize);

fn id_suffix() -> impl Strategy<Value = String> {
    "[a-z \"<&ü]{0,3}"
}

fn qualifier() -> impl Strategy<Value = String> {
    prop_oneof!["[a-z ]{0,6}", "[\\PC\t\n]{0,10}"]
}

/// A random log satisfying every model constraint.
pub fn arb_log() -> impl Strategy<Value = Log> {
    let events = prop::collection::vec(
        (
            any::<usize>(),
            (1i64..=MAX_MILLIS),
            id_suffix(),
            prop::collection::vec(prop::option::of(seed()), 5),
        ),
        0..=100,
    );
    let objects = prop::collection::vec(
        (
            any::<usize>(),
            id_suffix(),
            prop::collection::vec(prop::collection::vec((millis(), seed()), 0..=3), 5),
        ),
        0..=100,
    );
    let relations = || prop::collection::vec((any::<usize>(), qualifier(), any::<usize>()), 0..=60);
    (
        declarations(),
        declarations(),
        events,
        objects,
        relations(),
        relations(),
    )
        .prop_map(|(event_types, object_types, events, objects, e2o, o2o)| {
            assemble(event_types, object_types, events, objects, e2o, o2o)
        })
}

fn assemble(
    event_types: Vec<TypeDeclaration>,
    object_types: Vec<TypeDeclaration>,
    events: Vec<EventSeed>,
    objects: Vec<ObjectSeed>,
    e2o: Vec<RelationSeed>,
    o2o: Vec<RelationSeed>,
) -> Log {
    let mut b = Log::builder();
    let mut event_ids = Vec::new();
    if !event_types.is_empty() {
        for (i, (type_pick, time, suffix, slots)) in events.into_iter().enumerate() {
            let declaration = &event_types[type_pick % event_types.len()];
            let id = format!("e{i}{suffix}");
            let mut event = Event::new(
                id.clone(),
                declaration.name.clone(),
                Timestamp::from_millis(time).unwrap(),
            );
            for (attribute, slot) in declaration.attributes.iter().zip(slots) {
                if let Some(seed) = slot {
                    event = event.with_attribute(attribute.name.clone(), value(attribute.kind, &seed));
                }
            }
            b.event(event);
            event_ids.push(id);
        }
    }
    let mut object_ids = Vec::new();
    if !object_types.is_empty() {
        for (i, (type_pick, suffix, histories)) in objects.into_iter().enumerate() {
            let declaration = &object_types[type_pick % object_types.len()];
            let id = format!("o{i}{suffix}");
            let mut object = Object::new(id.clone(), declaration.name.clone());
            for (attribute, history) in declaration.attributes.iter().zip(histories) {
                let mut times = BTreeSet::new();
                for (time, seed) in history {
                    if times.insert(time) {
                        object = object.with_assignment(
                            attribute.name.clone(),
                            Timestamp::from_millis(time).unwrap(),
                            value(attribute.kind, &seed),
                        );
                    }
                }
            }
            b.object(object);
            object_ids.push(id);
        }
    }
    for declaration in event_types {
        b.event_type(declaration);
    }
    for declaration in object_types {
        b.object_type(declaration);
    }
    if !event_ids.is_empty() && !object_ids.is_empty() {
        for (e, qualifier, o) in e2o {
            b.e2o(
                &event_ids[e % event_ids.len()],
                qualifier,
                &object_ids[o % object_ids.len()],
            );
        }
    }
    if !object_ids.is_empty() {
        for (s, qualifier, t) in o2o {
            b.o2o(
                &object_ids[s % object_ids.len()],
                qualifier,
                &object_ids[t % object_ids.len()],
            );
        }
    }
    b.build()
}

/// Writes `log` in `format` under `dir` and reads it back.
pub fn through(log: &Log, format: Format, dir: &Path, name: &str) -> Log {
    let path = dir.join(format!("{name}.{}", format.extension()));
    write_path(log, &path, format).unwrap_or_else(|e| panic!("write {format}: {e}"));
    read_path(&path, format).unwrap_or_else(|e| panic!("read {format}: {e}"))
}
