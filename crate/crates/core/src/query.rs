//! Read-only queries over a [`Log`] and structural log equality.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{AttributeDeclaration, Event, Log, Object, QualifiedRelation};
use crate::time::Timestamp;
use crate::value::AttributeValue;

/// An (object id, qualifier) pair from a relation lookup, ordered by
/// qualifier first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelatedObject<'a> {
    pub qualifier: &'a str,
    pub object_id: &'a str,
}

impl Log {
    /// Types of the events that occur in the log. Declared types without
    /// events are not included.
    pub fn event_types(&self) -> BTreeSet<&str> {
        self.events().iter().map(|e| e.event_type.as_str()).collect()
    }

    /// Types of the objects that occur in the log.
    pub fn object_types(&self) -> BTreeSet<&str> {
        self.objects().iter().map(|o| o.object_type.as_str()).collect()
    }

    /// Value of an event attribute; `Ok(None)` when unset.
    pub fn eaval(&self, event_id: &str, attribute: &str) -> Result<Option<&AttributeValue>> {
        let event = self
            .event(event_id)
            .ok_or_else(|| Error::UnknownEvent(event_id.to_string()))?;
        Ok(event.attributes.get(attribute))
    }

    /// Latest value assigned to `attribute` at or before `at`.
    pub fn oaval_at(
        &self,
        object_id: &str,
        attribute: &str,
        at: Timestamp,
    ) -> Result<Option<&AttributeValue>> {
        let object = self
            .object(object_id)
            .ok_or_else(|| Error::UnknownObject(object_id.to_string()))?;
        Ok(value_at(object, attribute, at))
    }

    /// Final value of an object attribute, i.e. its value at infinity.
    pub fn oaval_final(&self, object_id: &str, attribute: &str) -> Result<Option<&AttributeValue>> {
        self.oaval_at(object_id, attribute, Timestamp::INFINITY)
    }

    /// Objects related to an event, with qualifiers.
    pub fn relobj_event(&self, event_id: &str) -> Result<BTreeSet<RelatedObject<'_>>> {
        if self.event(event_id).is_none() {
            return Err(Error::UnknownEvent(event_id.to_string()));
        }
        Ok(outgoing(self.e2o(), event_id))
    }

    /// Targets of the O2O relations leaving an object, with qualifiers.
    pub fn relobj_object(&self, object_id: &str) -> Result<BTreeSet<RelatedObject<'_>>> {
        if self.object(object_id).is_none() {
            return Err(Error::UnknownObject(object_id.to_string()));
        }
        Ok(outgoing(self.o2o(), object_id))
    }
}

fn value_at<'a>(object: &'a Object, attribute: &str, at: Timestamp) -> Option<&'a AttributeValue> {
    let history = object.history(attribute);
    let upto = history.partition_point(|a| a.time <= at);
    upto.checked_sub(1).map(|i| &history[i].value)
}

fn outgoing<'a>(relations: &'a BTreeSet<QualifiedRelation>, source: &str) -> BTreeSet<RelatedObject<'a>> {
    let lower = QualifiedRelation::new(source, "", "");
    relations
        .range(lower..)
        .take_while(|r| r.source == source)
        .map(|r| RelatedObject {
            object_id: &r.target,
            qualifier: &r.qualifier,
        })
        .collect()
}

/// Equality of two logs as mathematical tuples: every collection is compared
/// as a set, ignoring declaration, event, object and relation order.
pub fn logs_equal(a: &Log, b: &Log) -> bool {
    canonical_types(a.event_type_declarations()) == canonical_types(b.event_type_declarations())
        && canonical_types(a.object_type_declarations()) == canonical_types(b.object_type_declarations())
        && canonical_events(a.events()) == canonical_events(b.events())
        && canonical_objects(a.objects()) == canonical_objects(b.objects())
        && a.e2o() == b.e2o()
        && a.o2o() == b.o2o()
}

type CanonicalType<'a> = (&'a str, Vec<&'a AttributeDeclaration>);

fn canonical_types(declarations: &[crate::model::TypeDeclaration]) -> Vec<CanonicalType<'_>> {
    let mut types: Vec<CanonicalType<'_>> = declarations
        .iter()
        .map(|t| {
            let mut attributes: Vec<_> = t.attributes.iter().collect();
            attributes.sort();
            attributes.dedup();
            (t.name.as_str(), attributes)
        })
        .collect();
    types.sort();
    types.dedup();
    types
}

fn canonical_events(
    events: &[Event],
) -> Vec<(
    &str,
    &str,
    Timestamp,
    &std::collections::BTreeMap<String, AttributeValue>,
)> {
    let mut keyed: Vec<_> = events
        .iter()
        .map(|e| (e.id.as_str(), e.event_type.as_str(), e.time, &e.attributes))
        .collect();
    keyed.sort();
    keyed.dedup();
    keyed
}

fn canonical_objects(objects: &[Object]) -> Vec<(&str, &str, Vec<&crate::model::ObjectAttributeAssignment>)> {
    let mut keyed: Vec<_> = objects
        .iter()
        .map(|o| {
            let mut assignments: Vec<_> = o.assignments.iter().collect();
            assignments.sort();
            assignments.dedup();
            (o.id.as_str(), o.object_type.as_str(), assignments)
        })
        .collect();
    keyed.sort();
    keyed.dedup();
    keyed
}

impl PartialEq for Log {
    fn eq(&self, other: &Self) -> bool {
        logs_equal(self, other)
    }
}

impl Eq for Log {}
