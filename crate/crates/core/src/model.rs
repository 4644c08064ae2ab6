//! The canonical in-memory log.
//!
//! A [`Log`] is assembled through a [`LogBuilder`] and is immutable afterwards.
//! Building never fails: a log may hold dangling references, duplicate ids or
//! undeclared attributes exactly as they were read, and
//! [`validate_model`](crate::validation::validate_model) reports them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::time::Timestamp;
use crate::value::{AttributeValue, ValueKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttributeDeclaration {
    pub name: String,
    pub kind: ValueKind,
}

impl AttributeDeclaration {
    pub fn new(name: impl Into<String>, kind: ValueKind) -> Self {
        Self {
            name: name.into(),
            kind,
        }
    }
}

/// An event type or object type together with its ordered attribute list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDeclaration {
    pub name: String,
    pub attributes: Vec<AttributeDeclaration>,
}

impl TypeDeclaration {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            attributes: Vec::new(),
        }
    }

    pub fn with_attribute(mut self, name: impl Into<String>, kind: ValueKind) -> Self {
        self.attributes.push(AttributeDeclaration::new(name, kind));
        self
    }

    pub fn attribute(&self, name: &str) -> Option<&AttributeDeclaration> {
        self.attributes.iter().find(|a| a.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub id: String,
    pub event_type: String,
    pub time: Timestamp,
    pub attributes: BTreeMap<String, AttributeValue>,
}

impl Event {
    pub fn new(id: impl Into<String>, event_type: impl Into<String>, time: Timestamp) -> Self {
        Self {
            id: id.into(),
            event_type: event_type.into(),
            time,
            attributes: BTreeMap::new(),
        }
    }

    pub fn with_attribute(mut self, name: impl Into<String>, value: impl Into<AttributeValue>) -> Self {
        self.attributes.insert(name.into(), value.into());
        self
    }
}

/// One timestamped value of an object attribute.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObjectAttributeAssignment {
    pub attribute: String,
    pub time: Timestamp,
    pub value: AttributeValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Object {
    pub id: String,
    pub object_type: String,
    /// Sorted by (attribute, time) once the owning log is built.
    pub assignments: Vec<ObjectAttributeAssignment>,
}

impl Object {
    pub fn new(id: impl Into<String>, object_type: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            object_type: object_type.into(),
            assignments: Vec::new(),
        }
    }

    pub fn with_assignment(
        mut self,
        attribute: impl Into<String>,
        time: Timestamp,
        value: impl Into<AttributeValue>,
    ) -> Self {
        self.assignments.push(ObjectAttributeAssignment {
            attribute: attribute.into(),
            time,
            value: value.into(),
        });
        self
    }

    /// Static value, assigned at time zero.
    pub fn with_initial(self, attribute: impl Into<String>, value: impl Into<AttributeValue>) -> Self {
        self.with_assignment(attribute, Timestamp::ZERO, value)
    }

    /// Assignments of one attribute, ascending by time.
    pub fn history<'a>(&'a self, attribute: &str) -> &'a [ObjectAttributeAssignment] {
        let start = self
            .assignments
            .partition_point(|a| a.attribute.as_str() < attribute);
        let len = self.assignments[start..]
            .iter()
            .take_while(|a| a.attribute == attribute)
            .count();
        &self.assignments[start..start + len]
    }
}

/// A qualified E2O or O2O relation triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QualifiedRelation {
    pub source: String,
    pub qualifier: String,
    pub target: String,
}

impl QualifiedRelation {
    pub fn new(source: impl Into<String>, qualifier: impl Into<String>, target: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            qualifier: qualifier.into(),
            target: target.into(),
        }
    }
}

/// An object-centric event log.
#[derive(Debug, Clone)]
pub struct Log {
    event_types: Vec<TypeDeclaration>,
    object_types: Vec<TypeDeclaration>,
    events: Vec<Event>,
    objects: Vec<Object>,
    e2o: BTreeSet<QualifiedRelation>,
    o2o: BTreeSet<QualifiedRelation>,
    event_index: HashMap<String, usize>,
    object_index: HashMap<String, usize>,
}

impl Log {
    pub fn builder() -> LogBuilder {
        LogBuilder::default()
    }

    pub fn empty() -> Self {
        LogBuilder::default().build()
    }

    /// A builder pre-filled with this log's content.
    pub fn to_builder(&self) -> LogBuilder {
        LogBuilder {
            event_types: self.event_types.clone(),
            object_types: self.object_types.clone(),
            events: self.events.clone(),
            objects: self.objects.clone(),
            e2o: self.e2o.clone(),
            o2o: self.o2o.clone(),
        }
    }

    pub fn event_type_declarations(&self) -> &[TypeDeclaration] {
        &self.event_types
    }

    pub fn object_type_declarations(&self) -> &[TypeDeclaration] {
        &self.object_types
    }

    pub fn event_type_declaration(&self, name: &str) -> Option<&TypeDeclaration> {
        self.event_types.iter().find(|t| t.name == name)
    }

    pub fn object_type_declaration(&self, name: &str) -> Option<&TypeDeclaration> {
        self.object_types.iter().find(|t| t.name == name)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn e2o(&self) -> &BTreeSet<QualifiedRelation> {
        &self.e2o
    }

    pub fn o2o(&self) -> &BTreeSet<QualifiedRelation> {
        &self.o2o
    }

    /// First event with the given id.
    pub fn event(&self, id: &str) -> Option<&Event> {
        self.event_index.get(id).map(|&i| &self.events[i])
    }

    /// First object with the given id.
    pub fn object(&self, id: &str) -> Option<&Object> {
        self.object_index.get(id).map(|&i| &self.objects[i])
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
            && self.objects.is_empty()
            && self.event_types.is_empty()
            && self.object_types.is_empty()
    }

    /// Events sorted by (time, id), the order used by the document writers.
    pub fn events_in_time_order(&self) -> Vec<&Event> {
        let mut events: Vec<&Event> = self.events.iter().collect();
        events.sort_by(|a, b| (a.time, &a.id).cmp(&(b.time, &b.id)));
        events
    }

    /// Objects sorted by id.
    pub fn objects_by_id(&self) -> Vec<&Object> {
        let mut objects: Vec<&Object> = self.objects.iter().collect();
        objects.sort_by(|a, b| a.id.cmp(&b.id));
        objects
    }
}

/// Single-owner accumulator for a [`Log`].
#[derive(Debug, Default, Clone)]
pub struct LogBuilder {
    event_types: Vec<TypeDeclaration>,
    object_types: Vec<TypeDeclaration>,
    events: Vec<Event>,
    objects: Vec<Object>,
    e2o: BTreeSet<QualifiedRelation>,
    o2o: BTreeSet<QualifiedRelation>,
}

impl LogBuilder {
    pub fn event_type(&mut self, declaration: TypeDeclaration) -> &mut Self {
        self.event_types.push(declaration);
        self
    }

    pub fn object_type(&mut self, declaration: TypeDeclaration) -> &mut Self {
        self.object_types.push(declaration);
        self
    }

    pub fn event(&mut self, event: Event) -> &mut Self {
        self.events.push(event);
        self
    }

    pub fn object(&mut self, object: Object) -> &mut Self {
        self.objects.push(object);
        self
    }

    /// Adds an E2O triple; returns false when it was already present.
    pub fn e2o(
        &mut self,
        event: impl Into<String>,
        qualifier: impl Into<String>,
        object: impl Into<String>,
    ) -> bool {
        self.e2o.insert(QualifiedRelation::new(event, qualifier, object))
    }

    /// Adds an O2O triple; returns false when it was already present.
    pub fn o2o(
        &mut self,
        source: impl Into<String>,
        qualifier: impl Into<String>,
        target: impl Into<String>,
    ) -> bool {
        self.o2o.insert(QualifiedRelation::new(source, qualifier, target))
    }

    pub fn events_mut(&mut self) -> &mut Vec<Event> {
        &mut self.events
    }

    pub fn objects_mut(&mut self) -> &mut Vec<Object> {
        &mut self.objects
    }

    pub fn event_types_mut(&mut self) -> &mut Vec<TypeDeclaration> {
        &mut self.event_types
    }

    pub fn object_types_mut(&mut self) -> &mut Vec<TypeDeclaration> {
        &mut self.object_types
    }

    pub fn e2o_mut(&mut self) -> &mut BTreeSet<QualifiedRelation> {
        &mut self.e2o
    }

    pub fn o2o_mut(&mut self) -> &mut BTreeSet<QualifiedRelation> {
        &mut self.o2o
    }

    pub fn build(self) -> Log {
        let mut objects = self.objects;
        for object in &mut objects {
            object.assignments.sort();
        }
        let mut event_index = HashMap::with_capacity(self.events.len());
        for (i, event) in self.events.iter().enumerate() {
            event_index.entry(event.id.clone()).or_insert(i);
        }
        let mut object_index = HashMap::with_capacity(objects.len());
        for (i, object) in objects.iter().enumerate() {
            object_index.entry(object.id.clone()).or_insert(i);
        }
        Log {
            event_types: self.event_types,
            object_types: self.object_types,
            events: self.events,
            objects,
            e2o: self.e2o,
            o2o: self.o2o,
            event_index,
            object_index,
        }
    }
}
