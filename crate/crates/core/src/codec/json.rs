//! JSON exchange format.
//!
//! ```json
//! {
//!   "events": [{"id", "type", "time", "attributes": [{"name", "value"}],
//!               "relationships": [{"objectId", "qualifier"}]}],
//!   "eventTypes": [{"name", "attributes": [{"name", "type"}]}],
//!   "objects": [{"id", "type", "attributes": [{"name", "time", "value"}],
//!                "relationships": [{"objectId", "qualifier"}]}],
//!   "objectTypes": [{"name", "attributes": [{"name", "type"}]}]
//! }
//! ```
//!
//! Object `relationships` carry the O2O relations. Missing arrays read as
//! empty; unknown keys are rejected. Errors carry JSON pointers.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::diagnostic::Code;
use crate::error::{Error, Result};
use crate::model::{Event, Log, Object, ObjectAttributeAssignment, QualifiedRelation, TypeDeclaration};
use crate::time::Timestamp;
use crate::value::{AttributeValue, ValueKind};

#[derive(Serialize)]
struct Document<'a> {
    events: Vec<EventEntry<'a>>,
    #[serde(rename = "eventTypes")]
    event_types: Vec<TypeEntry<'a>>,
    objects: Vec<ObjectEntry<'a>>,
    #[serde(rename = "objectTypes")]
    object_types: Vec<TypeEntry<'a>>,
}

#[derive(Serialize)]
struct TypeEntry<'a> {
    name: &'a str,
    attributes: Vec<DeclarationEntry<'a>>,
}

#[derive(Serialize)]
struct DeclarationEntry<'a> {
    name: &'a str,
    #[serde(rename = "type")]
    kind: &'static str,
}

#[derive(Serialize)]
struct EventEntry<'a> {
    id: &'a str,
    #[serde(rename = "type")]
    event_type: &'a str,
    time: String,
    attributes: Vec<EventAttribute<'a>>,
    relationships: Vec<Relationship<'a>>,
}

#[derive(Serialize)]
struct EventAttribute<'a> {
    name: &'a str,
    value: Value,
}

#[derive(Serialize)]
struct ObjectEntry<'a> {
    id: &'a str,
    #[serde(rename = "type")]
    object_type: &'a str,
    attributes: Vec<ObjectAttribute<'a>>,
    relationships: Vec<Relationship<'a>>,
}

#[derive(Serialize)]
struct ObjectAttribute<'a> {
    name: &'a str,
    time: String,
    value: Value,
}

#[derive(Serialize)]
struct Relationship<'a> {
    #[serde(rename = "objectId")]
    object_id: &'a str,
    qualifier: &'a str,
}

fn unrepresentable(location: String, message: impl Into<String>) -> Error {
    Error::Unrepresentable {
        location,
        message: message.into(),
    }
}

fn time_text(time: Timestamp, location: impl FnOnce() -> String) -> Result<String> {
    time.to_iso()
        .map_err(|e| unrepresentable(location(), e.to_string()))
}

fn value_to_json(value: &AttributeValue, location: impl FnOnce() -> String) -> Result<Value> {
    Ok(match value {
        AttributeValue::String(s) => Value::String(s.clone()),
        AttributeValue::Time(t) => Value::String(time_text(*t, location)?),
        AttributeValue::Integer(i) => Value::Number((*i).into()),
        AttributeValue::Float(f) => Value::Number(
            Number::from_f64(*f)
                .ok_or_else(|| unrepresentable(location(), format!("float {f} has no JSON form")))?,
        ),
        AttributeValue::Boolean(b) => Value::Bool(*b),
    })
}

fn type_entries(declarations: &[TypeDeclaration]) -> Vec<TypeEntry<'_>> {
    declarations
        .iter()
        .map(|t| TypeEntry {
            name: &t.name,
            attributes: t
                .attributes
                .iter()
                .map(|a| DeclarationEntry {
                    name: &a.name,
                    kind: a.kind.as_str(),
                })
                .collect(),
        })
        .collect()
}

fn relationships<'a>(log: &'a Log, source: &str, e2o: bool) -> Vec<Relationship<'a>> {
    let related = if e2o {
        log.relobj_event(source)
    } else {
        log.relobj_object(source)
    };
    related
        .map(|set| {
            let mut pairs: Vec<_> = set.into_iter().collect();
            pairs.sort_by(|a, b| (a.object_id, a.qualifier).cmp(&(b.object_id, b.qualifier)));
            pairs
                .into_iter()
                .map(|r| Relationship {
                    object_id: r.object_id,
                    qualifier: r.qualifier,
                })
                .collect()
        })
        .unwrap_or_default()
}

/// Writes `log` as pretty-printed JSON followed by a newline.
///
/// Events are ordered by (time, id), objects by id, type declarations in
/// declaration order.
pub fn write_json<W: Write>(log: &Log, mut sink: W) -> Result<()> {
    let mut events = Vec::with_capacity(log.events().len());
    for (index, event) in log.events_in_time_order().into_iter().enumerate() {
        let mut attributes = Vec::with_capacity(event.attributes.len());
        for (name, value) in &event.attributes {
            attributes.push(EventAttribute {
                name,
                value: value_to_json(value, || format!("/events/{index}/attributes/{name}"))?,
            });
        }
        events.push(EventEntry {
            id: &event.id,
            event_type: &event.event_type,
            time: time_text(event.time, || format!("/events/{index}/time"))?,
            attributes,
            relationships: relationships(log, &event.id, true),
        });
    }

    let mut objects = Vec::with_capacity(log.objects().len());
    for (index, object) in log.objects_by_id().into_iter().enumerate() {
        let mut ordered: Vec<&ObjectAttributeAssignment> = object.assignments.iter().collect();
        ordered.sort_by(|a, b| (a.time, &a.attribute).cmp(&(b.time, &b.attribute)));
        let mut attributes = Vec::with_capacity(ordered.len());
        for a in ordered {
            let location = || format!("/objects/{index}/attributes/{}", a.attribute);
            attributes.push(ObjectAttribute {
                name: &a.attribute,
                time: time_text(a.time, location)?,
                value: value_to_json(&a.value, location)?,
            });
        }
        objects.push(ObjectEntry {
            id: &object.id,
            object_type: &object.object_type,
            attributes,
            relationships: relationships(log, &object.id, false),
        });
    }

    let document = Document {
        events,
        event_types: type_entries(log.event_type_declarations()),
        objects,
        object_types: type_entries(log.object_type_declarations()),
    };
    serde_json::to_writer_pretty(&mut sink, &document).map_err(|e| Error::Io(e.into()))?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}

pub fn to_json_string(log: &Log) -> Result<String> {
    let mut buffer = Vec::new();
    write_json(log, &mut buffer)?;
    Ok(String::from_utf8(buffer).expect("serde_json emits UTF-8"))
}

pub fn read_json<R: Read>(mut source: R) -> Result<Log> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    from_json_str(&text)
}

pub fn from_json_str(text: &str) -> Result<Log> {
    let document: Value = serde_json::from_str(text).map_err(|e| Error::JsonSyntax(e.to_string()))?;
    Reader::default().read(&document)
}

fn object_with_keys<'v>(value: &'v Value, pointer: &str, allowed: &[&str]) -> Result<&'v Map<String, Value>> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::schema(pointer, "expected a JSON object"))?;
    if let Some(unknown) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::schema(
            format!("{pointer}/{unknown}"),
            format!("unknown key `{unknown}`"),
        ));
    }
    Ok(map)
}

fn optional_array<'v>(map: &'v Map<String, Value>, key: &str, pointer: &str) -> Result<&'v [Value]> {
    match map.get(key) {
        None => Ok(&[]),
        Some(Value::Array(items)) => Ok(items),
        Some(_) => Err(Error::schema(format!("{pointer}/{key}"), "expected an array")),
    }
}

fn required_str<'v>(map: &'v Map<String, Value>, key: &str, pointer: &str) -> Result<&'v str> {
    match map.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(Error::schema(format!("{pointer}/{key}"), "expected a string")),
        None => Err(Error::schema(pointer, format!("missing `{key}`"))),
    }
}

/// Converts a JSON value to the declared kind, or infers the kind when the
/// attribute is undeclared.
fn json_to_value(kind: Option<ValueKind>, value: &Value, pointer: &str) -> Result<AttributeValue> {
    let mismatch = |kind: ValueKind| {
        Error::value(
            Code::AttrKindMismatch,
            pointer,
            format!("{value} is not a valid {kind} value"),
        )
    };
    let Some(kind) = kind else {
        return match value {
            Value::String(s) => Ok(AttributeValue::String(s.clone())),
            Value::Bool(b) => Ok(AttributeValue::Boolean(*b)),
            Value::Number(n) => Ok(match n.as_i64() {
                Some(i) => AttributeValue::Integer(i),
                None => AttributeValue::Float(n.as_f64().unwrap_or(f64::NAN)),
            }),
            _ => Err(Error::schema(
                pointer,
                "attribute values must be strings, numbers or booleans",
            )),
        };
    };
    match (kind, value) {
        (ValueKind::String, Value::String(s)) => Ok(AttributeValue::String(s.clone())),
        (ValueKind::Time, Value::String(s)) => Timestamp::parse(s)
            .map(AttributeValue::Time)
            .map_err(|_| mismatch(kind)),
        (ValueKind::Integer, Value::Number(n)) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => Ok(AttributeValue::Integer(i)),
            (None, Some(f)) if f.fract() == 0.0 && f >= i64::MIN as f64 && f < i64::MAX as f64 => {
                Ok(AttributeValue::Integer(f as i64))
            }
            _ => Err(mismatch(kind)),
        },
        (ValueKind::Float, Value::Number(n)) => n
            .as_f64()
            .map(AttributeValue::Float)
            .ok_or_else(|| mismatch(kind)),
        (ValueKind::Boolean, Value::Bool(b)) => Ok(AttributeValue::Boolean(*b)),
        _ => Err(mismatch(kind)),
    }
}

#[derive(Default)]
struct Reader {
    event_kinds: HashMap<String, HashMap<String, ValueKind>>,
    object_kinds: HashMap<String, HashMap<String, ValueKind>>,
}

fn kinds_by_type(declarations: &[TypeDeclaration]) -> HashMap<String, HashMap<String, ValueKind>> {
    let mut map: HashMap<String, HashMap<String, ValueKind>> = HashMap::new();
    for declaration in declarations {
        let entry = map.entry(declaration.name.clone()).or_default();
        for attribute in &declaration.attributes {
            entry.entry(attribute.name.clone()).or_insert(attribute.kind);
        }
    }
    map
}

impl Reader {
    fn read(mut self, document: &Value) -> Result<Log> {
        let root = object_with_keys(document, "", &["events", "eventTypes", "objects", "objectTypes"])?;
        let mut b = Log::builder();

        let event_types = self.types(optional_array(root, "eventTypes", "")?, "/eventTypes")?;
        let object_types = self.types(optional_array(root, "objectTypes", "")?, "/objectTypes")?;
        self.event_kinds = kinds_by_type(&event_types);
        self.object_kinds = kinds_by_type(&object_types);
        *b.event_types_mut() = event_types;
        *b.object_types_mut() = object_types;

        for (index, entry) in optional_array(root, "events", "")?.iter().enumerate() {
            let pointer = format!("/events/{index}");
            let (event, relations) = self.event(entry, &pointer)?;
            b.e2o_mut().extend(relations);
            b.event(event);
        }
        for (index, entry) in optional_array(root, "objects", "")?.iter().enumerate() {
            let pointer = format!("/objects/{index}");
            let (object, relations) = self.object(entry, &pointer)?;
            b.o2o_mut().extend(relations);
            b.object(object);
        }
        Ok(b.build())
    }

    fn types(&self, entries: &[Value], pointer: &str) -> Result<Vec<TypeDeclaration>> {
        let mut declarations = Vec::with_capacity(entries.len());
        for (index, entry) in entries.iter().enumerate() {
            let pointer = format!("{pointer}/{index}");
            let map = object_with_keys(entry, &pointer, &["name", "attributes"])?;
            let mut declaration = TypeDeclaration::new(required_str(map, "name", &pointer)?);
            for (j, attribute) in optional_array(map, "attributes", &pointer)?.iter().enumerate() {
                let pointer = format!("{pointer}/attributes/{j}");
                let attribute = object_with_keys(attribute, &pointer, &["name", "type"])?;
                let name = required_str(attribute, "name", &pointer)?;
                let kind: ValueKind = required_str(attribute, "type", &pointer)?.parse().map_err(
                    |e: crate::value::UnknownKind| Error::schema(format!("{pointer}/type"), e.to_string()),
                )?;
                declaration = declaration.with_attribute(name, kind);
            }
            declarations.push(declaration);
        }
        Ok(declarations)
    }

    fn relationships(
        map: &Map<String, Value>,
        source: &str,
        pointer: &str,
    ) -> Result<Vec<QualifiedRelation>> {
        let mut out = Vec::new();
        for (index, entry) in optional_array(map, "relationships", pointer)?.iter().enumerate() {
            let pointer = format!("{pointer}/relationships/{index}");
            let entry = object_with_keys(entry, &pointer, &["objectId", "qualifier"])?;
            out.push(QualifiedRelation::new(
                source,
                required_str(entry, "qualifier", &pointer)?,
                required_str(entry, "objectId", &pointer)?,
            ));
        }
        Ok(out)
    }

    fn event(&self, entry: &Value, pointer: &str) -> Result<(Event, Vec<QualifiedRelation>)> {
        let map = object_with_keys(
            entry,
            pointer,
            &["id", "type", "time", "attributes", "relationships"],
        )?;
        let id = required_str(map, "id", pointer)?;
        let event_type = required_str(map, "type", pointer)?;
        let time_text = required_str(map, "time", pointer)?;
        let time = Timestamp::parse(time_text)
            .map_err(|e| Error::value(Code::EventTimeInvalid, format!("{pointer}/time"), e.to_string()))?;
        let kinds = self.event_kinds.get(event_type);

        let mut attributes = BTreeMap::new();
        for (index, attribute) in optional_array(map, "attributes", pointer)?.iter().enumerate() {
            let pointer = format!("{pointer}/attributes/{index}");
            let attribute = object_with_keys(attribute, &pointer, &["name", "value"])?;
            let name = required_str(attribute, "name", &pointer)?;
            let raw = attribute
                .get("value")
                .ok_or_else(|| Error::schema(&pointer, "missing `value`"))?;
            let kind = kinds.and_then(|k| k.get(name)).copied();
            let value = json_to_value(kind, raw, &format!("{pointer}/value"))?;
            if attributes.insert(name.to_string(), value).is_some() {
                return Err(Error::schema(
                    &pointer,
                    format!("attribute `{name}` appears twice"),
                ));
            }
        }
        let relations = Self::relationships(map, id, pointer)?;
        let event = Event {
            id: id.to_string(),
            event_type: event_type.to_string(),
            time,
            attributes,
        };
        Ok((event, relations))
    }

    fn object(&self, entry: &Value, pointer: &str) -> Result<(Object, Vec<QualifiedRelation>)> {
        let map = object_with_keys(entry, pointer, &["id", "type", "attributes", "relationships"])?;
        let id = required_str(map, "id", pointer)?;
        let object_type = required_str(map, "type", pointer)?;
        let kinds = self.object_kinds.get(object_type);

        let mut object = Object::new(id, object_type);
        for (index, attribute) in optional_array(map, "attributes", pointer)?.iter().enumerate() {
            let pointer = format!("{pointer}/attributes/{index}");
            let attribute = object_with_keys(attribute, &pointer, &["name", "time", "value"])?;
            let name = required_str(attribute, "name", &pointer)?;
            let time = match attribute.get("time") {
                None => Timestamp::ZERO,
                Some(Value::String(s)) => Timestamp::parse(s).map_err(|e| {
                    Error::value(
                        Code::AssignmentTimeInvalid,
                        format!("{pointer}/time"),
                        e.to_string(),
                    )
                })?,
                Some(_) => return Err(Error::schema(format!("{pointer}/time"), "expected a string")),
            };
            let raw = attribute
                .get("value")
                .ok_or_else(|| Error::schema(&pointer, "missing `value`"))?;
            let kind = kinds.and_then(|k| k.get(name)).copied();
            let value = json_to_value(kind, raw, &format!("{pointer}/value"))?;
            object = object.with_assignment(name, time, value);
        }
        let relations = Self::relationships(map, id, pointer)?;
        Ok((object, relations))
    }
}
