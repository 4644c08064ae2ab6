//! Checks a [`Log`] against the constraints of the object-centric log model.
//!
//! Findings are data: the returned list is empty exactly when the log is
//! well-formed. Locations use paths over the model such as
//! `/events[id=e1]/attributes/po_creator`.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::diagnostic::{Code, Diagnostic};
use crate::model::{Log, TypeDeclaration};
use crate::value::ValueKind;

pub fn validate_model(log: &Log) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_declarations(&mut out, "eventTypes", log.event_type_declarations());
    check_declarations(&mut out, "objectTypes", log.object_type_declarations());
    check_events(&mut out, log);
    check_objects(&mut out, log);
    check_relations(&mut out, log);
    out
}

fn check_declarations(out: &mut Vec<Diagnostic>, section: &str, declarations: &[TypeDeclaration]) {
    let mut seen_types = HashSet::new();
    let mut owners: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for declaration in declarations {
        let path = format!("/{section}[name={}]", declaration.name);
        if declaration.name.is_empty() {
            out.push(Diagnostic::new(Code::EmptyName, &path, "type name is empty"));
        }
        if !seen_types.insert(declaration.name.as_str()) {
            out.push(Diagnostic::new(
                Code::TypeDuplicate,
                &path,
                format!("type `{}` is declared more than once", declaration.name),
            ));
            continue;
        }
        let mut seen_attrs = HashSet::new();
        for attribute in &declaration.attributes {
            let attr_path = format!("{path}/attributes/{}", attribute.name);
            if attribute.name.is_empty() {
                out.push(Diagnostic::new(
                    Code::EmptyName,
                    &attr_path,
                    "attribute name is empty",
                ));
            }
            if !seen_attrs.insert(attribute.name.as_str()) {
                out.push(Diagnostic::new(
                    Code::AttrDeclDuplicate,
                    &attr_path,
                    format!(
                        "attribute `{}` is declared more than once on `{}`",
                        attribute.name, declaration.name
                    ),
                ));
                continue;
            }
            owners
                .entry(attribute.name.as_str())
                .or_default()
                .push(declaration.name.as_str());
        }
    }
    for (attribute, types) in owners {
        if types.len() > 1 {
            out.push(Diagnostic::new(
                Code::AttrSharedAcrossTypes,
                format!("/{section}/*/attributes/{attribute}"),
                format!("attribute `{attribute}` is declared on {}", types.join(", ")),
            ));
        }
    }
}

fn declared_kinds(declarations: &[TypeDeclaration]) -> HashMap<&str, HashMap<&str, ValueKind>> {
    let mut map: HashMap<&str, HashMap<&str, ValueKind>> = HashMap::new();
    for declaration in declarations {
        let entry = map.entry(declaration.name.as_str()).or_default();
        for attribute in &declaration.attributes {
            entry.entry(attribute.name.as_str()).or_insert(attribute.kind);
        }
    }
    map
}

fn check_events(out: &mut Vec<Diagnostic>, log: &Log) {
    let kinds = declared_kinds(log.event_type_declarations());
    let mut seen = HashSet::new();
    for event in log.events() {
        let path = format!("/events[id={}]", event.id);
        if event.id.is_empty() {
            out.push(Diagnostic::new(Code::EmptyName, &path, "event id is empty"));
        }
        if !seen.insert(event.id.as_str()) {
            out.push(Diagnostic::new(
                Code::EventDuplicateId,
                &path,
                format!("event id `{}` occurs more than once", event.id),
            ));
        }
        if log.object(&event.id).is_some() {
            out.push(Diagnostic::new(
                Code::IdNotDisjoint,
                &path,
                format!("`{}` is both an event and an object id", event.id),
            ));
        }
        if event.time.is_infinite() {
            out.push(Diagnostic::new(
                Code::EventTimeInvalid,
                format!("{path}/time"),
                "event time is infinite",
            ));
        }
        let Some(declared) = kinds.get(event.event_type.as_str()) else {
            out.push(Diagnostic::new(
                Code::EventTypeUndeclared,
                format!("{path}/type"),
                format!("event type `{}` is not declared", event.event_type),
            ));
            continue;
        };
        for (name, value) in &event.attributes {
            let attr_path = format!("{path}/attributes/{name}");
            match declared.get(name.as_str()) {
                None => out.push(Diagnostic::new(
                    Code::EventAttrUndeclared,
                    attr_path,
                    format!(
                        "`{name}` is not an attribute of event type `{}`",
                        event.event_type
                    ),
                )),
                Some(&kind) if kind != value.kind() => out.push(Diagnostic::new(
                    Code::AttrKindMismatch,
                    attr_path,
                    format!("`{name}` is declared {kind} but holds a {} value", value.kind()),
                )),
                Some(_) => {}
            }
        }
    }
}

fn check_objects(out: &mut Vec<Diagnostic>, log: &Log) {
    let kinds = declared_kinds(log.object_type_declarations());
    let mut seen = HashSet::new();
    for object in log.objects() {
        let path = format!("/objects[id={}]", object.id);
        if object.id.is_empty() {
            out.push(Diagnostic::new(Code::EmptyName, &path, "object id is empty"));
        }
        if !seen.insert(object.id.as_str()) {
            out.push(Diagnostic::new(
                Code::ObjectDuplicateId,
                &path,
                format!("object id `{}` occurs more than once", object.id),
            ));
        }
        let declared = kinds.get(object.object_type.as_str());
        if declared.is_none() {
            out.push(Diagnostic::new(
                Code::ObjectTypeUndeclared,
                format!("{path}/type"),
                format!("object type `{}` is not declared", object.object_type),
            ));
        }
        let mut previous: Option<(&str, _)> = None;
        for assignment in &object.assignments {
            let attr_path = format!("{path}/attributes/{}@{}", assignment.attribute, assignment.time);
            let key = (assignment.attribute.as_str(), assignment.time);
            if previous == Some(key) {
                out.push(Diagnostic::new(
                    Code::AssignmentDuplicate,
                    &attr_path,
                    format!(
                        "`{}` is assigned twice at {}",
                        assignment.attribute, assignment.time
                    ),
                ));
            }
            previous = Some(key);
            if assignment.time.is_infinite() {
                out.push(Diagnostic::new(
                    Code::AssignmentTimeInvalid,
                    &attr_path,
                    "assignment time is infinite",
                ));
            }
            let Some(declared) = declared else { continue };
            match declared.get(assignment.attribute.as_str()) {
                None => out.push(Diagnostic::new(
                    Code::ObjectAttrUndeclared,
                    attr_path,
                    format!(
                        "`{}` is not an attribute of object type `{}`",
                        assignment.attribute, object.object_type
                    ),
                )),
                Some(&kind) if kind != assignment.value.kind() => out.push(Diagnostic::new(
                    Code::AttrKindMismatch,
                    attr_path,
                    format!(
                        "`{}` is declared {kind} but holds a {} value",
                        assignment.attribute,
                        assignment.value.kind()
                    ),
                )),
                Some(_) => {}
            }
        }
    }
}

fn check_relations(out: &mut Vec<Diagnostic>, log: &Log) {
    for relation in log.e2o() {
        let path = format!(
            "/e2o[{}|{}|{}]",
            relation.source, relation.qualifier, relation.target
        );
        if log.event(&relation.source).is_none() {
            out.push(Diagnostic::new(
                Code::E2oDanglingEvent,
                &path,
                format!("event `{}` does not exist", relation.source),
            ));
        }
        if log.object(&relation.target).is_none() {
            out.push(Diagnostic::new(
                Code::E2oDanglingObject,
                &path,
                format!("object `{}` does not exist", relation.target),
            ));
        }
    }
    for relation in log.o2o() {
        let path = format!(
            "/o2o[{}|{}|{}]",
            relation.source, relation.qualifier, relation.target
        );
        if log.object(&relation.source).is_none() {
            out.push(Diagnostic::new(
                Code::O2oDanglingSource,
                &path,
                format!("object `{}` does not exist", relation.source),
            ));
        }
        if log.object(&relation.target).is_none() {
            out.push(Diagnostic::new(
                Code::O2oDanglingTarget,
                &path,
                format!("object `{}` does not exist", relation.target),
            ));
        }
    }
}
