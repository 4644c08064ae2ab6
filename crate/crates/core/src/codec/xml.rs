//! XML exchange format.
//!
//! ```xml
//! <log>
//!   <object-types>
//!     <object-type name="Invoice">
//!       <attributes><attribute name="is_blocked" type="string"/></attributes>
//!     </object-type>
//!   </object-types>
//!   <event-types>...</event-types>
//!   <events>
//!     <event id="e3" type="Create Purchase Order" time="2022-01-10T09:15:00Z">
//!       <objects><relobj object-id="PO1" qualifier="..."/></objects>
//!       <attributes><attribute name="po_creator">Mike</attribute></attributes>
//!     </event>
//!   </events>
//!   <objects>
//!     <object id="PO1" type="Purchase Order">
//!       <attributes><attribute name="po_quantity" time="...">600</attribute></attributes>
//!       <objects><relobj object-id="R1" qualifier="Invoice from PO"/></objects>
//!     </object>
//!   </objects>
//! </log>
//! ```
//!
//! The writer is hand-rolled so output is byte-stable; reading goes through
//! quick-xml into a small element tree.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use quick_xml::escape::{resolve_predefined_entity, unescape};
use quick_xml::events::Event as XmlEvent;

use crate::diagnostic::Code;
use crate::error::{Error, Result};
use crate::model::{Event, Log, Object, QualifiedRelation, TypeDeclaration};
use crate::time::Timestamp;
use crate::value::{AttributeValue, ValueKind};

// ---------------------------------------------------------------------------
// Writing

fn is_xml_char(c: char) -> bool {
    matches!(c, '\t' | '\n' | '\r' | '\u{20}'..='\u{D7FF}' | '\u{E000}'..='\u{FFFD}' | '\u{10000}'..='\u{10FFFF}')
}

/// Escapes markup characters and the whitespace controls that XML parsers
/// would otherwise normalize.
fn escape(text: &str, location: impl FnOnce() -> String) -> Result<String> {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            c if is_xml_char(c) => out.push(c),
            c => {
                return Err(Error::Unrepresentable {
                    location: location(),
                    message: format!("character U+{:04X} cannot appear in XML", c as u32),
                })
            }
        }
    }
    Ok(out)
}

struct XmlWriter {
    out: String,
}

impl XmlWriter {
    fn line(&mut self, depth: usize, content: &str) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
        self.out.push_str(content);
        self.out.push('\n');
    }

    fn attrs(pairs: &[(&str, &str)], location: &dyn Fn() -> String) -> Result<String> {
        let mut out = String::new();
        for (key, value) in pairs {
            out.push(' ');
            out.push_str(key);
            out.push_str("=\"");
            out.push_str(&escape(value, location)?);
            out.push('"');
        }
        Ok(out)
    }

    fn types(&mut self, container: &str, element: &str, declarations: &[TypeDeclaration]) -> Result<()> {
        if declarations.is_empty() {
            self.line(1, &format!("<{container}/>"));
            return Ok(());
        }
        self.line(1, &format!("<{container}>"));
        for declaration in declarations {
            let location = || format!("/log/{container}/{element}[name={}]", declaration.name);
            let open = Self::attrs(&[("name", &declaration.name)], &location)?;
            if declaration.attributes.is_empty() {
                self.line(2, &format!("<{element}{open}>"));
                self.line(3, "<attributes/>");
                self.line(2, &format!("</{element}>"));
                continue;
            }
            self.line(2, &format!("<{element}{open}>"));
            self.line(3, "<attributes>");
            for attribute in &declaration.attributes {
                let a = Self::attrs(
                    &[("name", &attribute.name), ("type", attribute.kind.as_str())],
                    &location,
                )?;
                self.line(4, &format!("<attribute{a}/>"));
            }
            self.line(3, "</attributes>");
            self.line(2, &format!("</{element}>"));
        }
        self.line(1, &format!("</{container}>"));
        Ok(())
    }

    fn relobjs(
        &mut self,
        depth: usize,
        related: &[(&str, &str)],
        location: &dyn Fn() -> String,
    ) -> Result<()> {
        if related.is_empty() {
            self.line(depth, "<objects/>");
            return Ok(());
        }
        self.line(depth, "<objects>");
        for (object_id, qualifier) in related {
            let a = Self::attrs(&[("object-id", object_id), ("qualifier", qualifier)], location)?;
            self.line(depth + 1, &format!("<relobj{a}/>"));
        }
        self.line(depth, "</objects>");
        Ok(())
    }
}

fn value_text(value: &AttributeValue, location: &dyn Fn() -> String) -> Result<String> {
    let text = value.to_text().ok_or_else(|| Error::Unrepresentable {
        location: location(),
        message: "infinite timestamp value".into(),
    })?;
    escape(&text, location)
}

fn time_text(time: Timestamp, location: &dyn Fn() -> String) -> Result<String> {
    time.to_iso().map_err(|e| Error::Unrepresentable {
        location: location(),
        message: e.to_string(),
    })
}

fn sorted_related<'a>(
    relations: impl IntoIterator<Item = crate::query::RelatedObject<'a>>,
) -> Vec<(&'a str, &'a str)> {
    let mut pairs: Vec<_> = relations
        .into_iter()
        .map(|r| (r.object_id, r.qualifier))
        .collect();
    pairs.sort();
    pairs
}

/// Writes `log` as an indented UTF-8 XML document.
///
/// Ordering: declarations as declared, events by (time, id), objects by id.
pub fn write_xml<W: Write>(log: &Log, mut sink: W) -> Result<()> {
    let mut w = XmlWriter { out: String::new() };
    w.line(0, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    w.line(0, "<log>");
    w.types("object-types", "object-type", log.object_type_declarations())?;
    w.types("event-types", "event-type", log.event_type_declarations())?;

    let events = log.events_in_time_order();
    if events.is_empty() {
        w.line(1, "<events/>");
    } else {
        w.line(1, "<events>");
        for event in events {
            let location = || format!("/log/events/event[id={}]", event.id);
            let time = time_text(event.time, &location)?;
            let a = XmlWriter::attrs(
                &[("id", &event.id), ("type", &event.event_type), ("time", &time)],
                &location,
            )?;
            w.line(2, &format!("<event{a}>"));
            let related = sorted_related(log.relobj_event(&event.id).unwrap_or_default());
            w.relobjs(3, &related, &location)?;
            if event.attributes.is_empty() {
                w.line(3, "<attributes/>");
            } else {
                w.line(3, "<attributes>");
                for (name, value) in &event.attributes {
                    let a = XmlWriter::attrs(&[("name", name)], &location)?;
                    w.line(
                        4,
                        &format!("<attribute{a}>{}</attribute>", value_text(value, &location)?),
                    );
                }
                w.line(3, "</attributes>");
            }
            w.line(2, "</event>");
        }
        w.line(1, "</events>");
    }

    let objects = log.objects_by_id();
    if objects.is_empty() {
        w.line(1, "<objects/>");
    } else {
        w.line(1, "<objects>");
        for object in objects {
            let location = || format!("/log/objects/object[id={}]", object.id);
            let a = XmlWriter::attrs(&[("id", &object.id), ("type", &object.object_type)], &location)?;
            w.line(2, &format!("<object{a}>"));
            let mut assignments: Vec<_> = object.assignments.iter().collect();
            assignments.sort_by(|a, b| (a.time, &a.attribute).cmp(&(b.time, &b.attribute)));
            if assignments.is_empty() {
                w.line(3, "<attributes/>");
            } else {
                w.line(3, "<attributes>");
                for assignment in assignments {
                    let time = time_text(assignment.time, &location)?;
                    let a = XmlWriter::attrs(&[("name", &assignment.attribute), ("time", &time)], &location)?;
                    w.line(
                        4,
                        &format!(
                            "<attribute{a}>{}</attribute>",
                            value_text(&assignment.value, &location)?
                        ),
                    );
                }
                w.line(3, "</attributes>");
            }
            let related = sorted_related(log.relobj_object(&object.id).unwrap_or_default());
            w.relobjs(3, &related, &location)?;
            w.line(2, "</object>");
        }
        w.line(1, "</objects>");
    }
    w.line(0, "</log>");

    sink.write_all(w.out.as_bytes())?;
    sink.flush()?;
    Ok(())
}

pub fn to_xml_string(log: &Log) -> Result<String> {
    let mut buffer = Vec::new();
    write_xml(log, &mut buffer)?;
    Ok(String::from_utf8(buffer).expect("writer emits UTF-8"))
}

// ---------------------------------------------------------------------------
// Reading

#[derive(Debug)]
enum Node {
    Element(Element),
    Text(String),
}

#[derive(Debug, Default)]
struct Element {
    name: String,
    attributes: Vec<(String, String)>,
    children: Vec<Node>,
}

fn syntax(position: u64, message: impl std::fmt::Display) -> Error {
    Error::XmlSyntax {
        location: format!("byte {position}"),
        message: message.to_string(),
    }
}

/// Attribute-value normalization: literal whitespace controls become spaces,
/// references are resolved afterwards.
fn attribute_value(raw: &[u8], position: u64) -> Result<String> {
    let text = std::str::from_utf8(raw).map_err(|e| syntax(position, e))?;
    let normalized = text.replace("\r\n", " ").replace(['\t', '\n', '\r'], " ");
    unescape(&normalized)
        .map(|s| s.into_owned())
        .map_err(|e| syntax(position, e))
}

fn parse_tree(text: &str) -> Result<Element> {
    let mut reader = quick_xml::Reader::from_str(text);
    reader.config_mut().expand_empty_elements = true;
    reader.config_mut().trim_text(false);

    let mut stack: Vec<Element> = Vec::new();
    let mut root: Option<Element> = None;

    let push_text = |stack: &mut Vec<Element>, text: &str, position: u64| -> Result<()> {
        match stack.last_mut() {
            Some(element) => {
                if let Some(Node::Text(existing)) = element.children.last_mut() {
                    existing.push_str(text);
                } else {
                    element.children.push(Node::Text(text.to_string()));
                }
                Ok(())
            }
            None if text.trim().is_empty() => Ok(()),
            None => Err(syntax(position, "text outside the root element")),
        }
    };

    loop {
        let position = reader.buffer_position();
        let event = reader
            .read_event()
            .map_err(|e| syntax(reader.error_position(), e))?;
        match event {
            XmlEvent::Start(start) => {
                if root.is_some() {
                    return Err(syntax(position, "content after the root element"));
                }
                let name =
                    String::from_utf8(start.name().as_ref().to_vec()).map_err(|e| syntax(position, e))?;
                let mut attributes = Vec::new();
                for attribute in start.attributes() {
                    let attribute = attribute.map_err(|e| syntax(position, e))?;
                    let key = String::from_utf8(attribute.key.as_ref().to_vec())
                        .map_err(|e| syntax(position, e))?;
                    attributes.push((key, attribute_value(&attribute.value, position)?));
                }
                stack.push(Element {
                    name,
                    attributes,
                    children: Vec::new(),
                });
            }
            XmlEvent::End(_) => {
                let element = stack
                    .pop()
                    .ok_or_else(|| syntax(position, "unbalanced end tag"))?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(Node::Element(element)),
                    None => root = Some(element),
                }
            }
            XmlEvent::Empty(_) => unreachable!("empty elements are expanded"),
            XmlEvent::Text(t) => {
                let content = t.xml10_content().map_err(|e| syntax(position, e))?;
                push_text(&mut stack, &content, position)?;
            }
            XmlEvent::CData(c) => {
                let content = c.decode().map_err(|e| syntax(position, e))?;
                push_text(&mut stack, &content, position)?;
            }
            XmlEvent::GeneralRef(r) => {
                let resolved = match r.resolve_char_ref().map_err(|e| syntax(position, e))? {
                    Some(c) => c.to_string(),
                    None => {
                        let name = r.decode().map_err(|e| syntax(position, e))?;
                        resolve_predefined_entity(&name)
                            .ok_or_else(|| syntax(position, format!("unknown entity `&{name};`")))?
                            .to_string()
                    }
                };
                push_text(&mut stack, &resolved, position)?;
            }
            XmlEvent::Decl(_) | XmlEvent::PI(_) | XmlEvent::Comment(_) | XmlEvent::DocType(_) => {}
            XmlEvent::Eof => break,
        }
    }
    if !stack.is_empty() {
        return Err(syntax(reader.buffer_position(), "unexpected end of document"));
    }
    root.ok_or_else(|| syntax(0, "document has no root element"))
}

impl Element {
    fn check_attributes(&self, path: &str, allowed: &[&str]) -> Result<()> {
        for (key, _) in &self.attributes {
            let ignorable = key == "xmlns" || key.starts_with("xmlns:") || key.starts_with("xsi:");
            if !ignorable && !allowed.contains(&key.as_str()) {
                return Err(Error::schema(
                    path,
                    format!("unexpected property `{key}` on <{}>", self.name),
                ));
            }
        }
        Ok(())
    }

    fn attribute(&self, key: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn required(&self, key: &str, path: &str) -> Result<&str> {
        self.attribute(key)
            .ok_or_else(|| Error::schema(path, format!("<{}> lacks the `{key}` property", self.name)))
    }

    /// Child elements; non-whitespace text is a schema violation.
    fn elements(&self, path: &str) -> Result<Vec<&Element>> {
        let mut out = Vec::new();
        for child in &self.children {
            match child {
                Node::Element(e) => out.push(e),
                Node::Text(t) if t.trim().is_empty() => {}
                Node::Text(_) => {
                    return Err(Error::schema(
                        path,
                        format!("unexpected text inside <{}>", self.name),
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Children that must all be `<name>` elements.
    fn only_children(&self, name: &str, path: &str) -> Result<Vec<&Element>> {
        let children = self.elements(path)?;
        if let Some(other) = children.iter().find(|c| c.name != name) {
            return Err(Error::schema(
                format!("{path}/{}", other.name),
                format!("unexpected element <{}> inside <{}>", other.name, self.name),
            ));
        }
        Ok(children)
    }

    /// Splits children into at most one element per allowed name.
    fn sections<'a>(&'a self, path: &str, allowed: &[&str]) -> Result<HashMap<&'a str, &'a Element>> {
        let mut out = HashMap::new();
        for child in self.elements(path)? {
            let child_path = format!("{path}/{}", child.name);
            if !allowed.contains(&child.name.as_str()) {
                return Err(Error::schema(
                    child_path,
                    format!("unexpected element <{}> inside <{}>", child.name, self.name),
                ));
            }
            if out.insert(child.name.as_str(), child).is_some() {
                return Err(Error::schema(
                    child_path,
                    format!("<{}> appears more than once", child.name),
                ));
            }
        }
        Ok(out)
    }

    fn text(&self, path: &str) -> Result<String> {
        let mut text = String::new();
        for child in &self.children {
            match child {
                Node::Text(t) => text.push_str(t),
                Node::Element(e) => {
                    return Err(Error::schema(
                        path,
                        format!("unexpected element <{}> inside a value", e.name),
                    ))
                }
            }
        }
        Ok(text)
    }
}

pub fn read_xml<R: Read>(mut source: R) -> Result<Log> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| match e.kind() {
        std::io::ErrorKind::InvalidData => syntax(0, "document is not valid UTF-8"),
        _ => Error::Io(e),
    })?;
    from_xml_str(&text)
}

pub fn from_xml_str(text: &str) -> Result<Log> {
    let root = parse_tree(text)?;
    if root.name != "log" {
        return Err(Error::schema(
            "/",
            format!("root element is <{}>, expected <log>", root.name),
        ));
    }
    root.check_attributes("/log", &[])?;
    let sections = root.sections("/log", &["object-types", "event-types", "events", "objects"])?;

    let mut b = Log::builder();
    let event_types = match sections.get("event-types") {
        Some(e) => read_types(e, "/log/event-types", "event-type")?,
        None => Vec::new(),
    };
    let object_types = match sections.get("object-types") {
        Some(e) => read_types(e, "/log/object-types", "object-type")?,
        None => Vec::new(),
    };
    let event_kinds = kinds_by_type(&event_types);
    let object_kinds = kinds_by_type(&object_types);
    *b.event_types_mut() = event_types;
    *b.object_types_mut() = object_types;

    if let Some(events) = sections.get("events") {
        for element in events.only_children("event", "/log/events")? {
            let (event, relations) = read_event(element, &event_kinds)?;
            b.e2o_mut().extend(relations);
            b.event(event);
        }
    }
    if let Some(objects) = sections.get("objects") {
        for element in objects.only_children("object", "/log/objects")? {
            let (object, relations) = read_object(element, &object_kinds)?;
            b.o2o_mut().extend(relations);
            b.object(object);
        }
    }
    Ok(b.build())
}

type KindMap = HashMap<String, HashMap<String, ValueKind>>;

fn kinds_by_type(declarations: &[TypeDeclaration]) -> KindMap {
    let mut map: KindMap = HashMap::new();
    for declaration in declarations {
        let entry = map.entry(declaration.name.clone()).or_default();
        for attribute in &declaration.attributes {
            entry.entry(attribute.name.clone()).or_insert(attribute.kind);
        }
    }
    map
}

fn read_types(container: &Element, path: &str, element: &str) -> Result<Vec<TypeDeclaration>> {
    container.check_attributes(path, &[])?;
    let mut out = Vec::new();
    for declaration in container.only_children(element, path)? {
        let name = declaration.required("name", &format!("{path}/{element}"))?;
        let path = format!("{path}/{element}[name={name}]");
        declaration.check_attributes(&path, &["name"])?;
        let mut result = TypeDeclaration::new(name);
        let sections = declaration.sections(&path, &["attributes"])?;
        if let Some(attributes) = sections.get("attributes") {
            let path = format!("{path}/attributes");
            attributes.check_attributes(&path, &[])?;
            for attribute in attributes.only_children("attribute", &path)? {
                let name = attribute.required("name", &format!("{path}/attribute"))?;
                let attr_path = format!("{path}/attribute[name={name}]");
                attribute.check_attributes(&attr_path, &["name", "type"])?;
                if !attribute.elements(&attr_path)?.is_empty()
                    || !attribute.text(&attr_path)?.trim().is_empty()
                {
                    return Err(Error::schema(
                        &attr_path,
                        "attribute declarations have no content",
                    ));
                }
                let kind: ValueKind = attribute
                    .required("type", &attr_path)?
                    .parse()
                    .map_err(|e: crate::value::UnknownKind| Error::schema(&attr_path, e.to_string()))?;
                result = result.with_attribute(name, kind);
            }
        }
        out.push(result);
    }
    Ok(out)
}

fn read_relobjs(container: &Element, path: &str, source: &str) -> Result<Vec<QualifiedRelation>> {
    container.check_attributes(path, &[])?;
    let mut out = Vec::new();
    for relobj in container.only_children("relobj", path)? {
        let relobj_path = format!("{path}/relobj");
        relobj.check_attributes(&relobj_path, &["object-id", "qualifier"])?;
        if !relobj.elements(&relobj_path)?.is_empty() {
            return Err(Error::schema(&relobj_path, "<relobj> has no children"));
        }
        out.push(QualifiedRelation::new(
            source,
            relobj.required("qualifier", &relobj_path)?,
            relobj.required("object-id", &relobj_path)?,
        ));
    }
    Ok(out)
}

fn parse_value(kind: Option<ValueKind>, text: String, path: &str) -> Result<AttributeValue> {
    match kind {
        None => Ok(AttributeValue::String(text)),
        Some(kind) => AttributeValue::parse_as(kind, &text)
            .map_err(|e| Error::value(Code::AttrKindMismatch, path, e.to_string())),
    }
}

fn read_event(element: &Element, kinds: &KindMap) -> Result<(Event, Vec<QualifiedRelation>)> {
    let id = element.required("id", "/log/events/event")?;
    let path = format!("/log/events/event[id={id}]");
    element.check_attributes(&path, &["id", "type", "time"])?;
    let event_type = element.required("type", &path)?;
    let time = Timestamp::parse(element.required("time", &path)?)
        .map_err(|e| Error::value(Code::EventTimeInvalid, format!("{path}/@time"), e.to_string()))?;
    let declared = kinds.get(event_type);

    let sections = element.sections(&path, &["objects", "attributes"])?;
    let mut attributes = BTreeMap::new();
    if let Some(container) = sections.get("attributes") {
        let container_path = format!("{path}/attributes");
        container.check_attributes(&container_path, &[])?;
        for attribute in container.only_children("attribute", &container_path)? {
            let name = attribute.required("name", &format!("{container_path}/attribute"))?;
            let attr_path = format!("{container_path}/attribute[name={name}]");
            attribute.check_attributes(&attr_path, &["name"])?;
            let kind = declared.and_then(|k| k.get(name)).copied();
            let value = parse_value(kind, attribute.text(&attr_path)?, &attr_path)?;
            if attributes.insert(name.to_string(), value).is_some() {
                return Err(Error::schema(
                    attr_path,
                    format!("attribute `{name}` appears twice"),
                ));
            }
        }
    }
    let relations = match sections.get("objects") {
        Some(container) => read_relobjs(container, &format!("{path}/objects"), id)?,
        None => Vec::new(),
    };
    let event = Event {
        id: id.to_string(),
        event_type: event_type.to_string(),
        time,
        attributes,
    };
    Ok((event, relations))
}

fn read_object(element: &Element, kinds: &KindMap) -> Result<(Object, Vec<QualifiedRelation>)> {
    let id = element.required("id", "/log/objects/object")?;
    let path = format!("/log/objects/object[id={id}]");
    element.check_attributes(&path, &["id", "type"])?;
    let object_type = element.required("type", &path)?;
    let declared = kinds.get(object_type);

    let sections = element.sections(&path, &["objects", "attributes"])?;
    let mut object = Object::new(id, object_type);
    if let Some(container) = sections.get("attributes") {
        let container_path = format!("{path}/attributes");
        container.check_attributes(&container_path, &[])?;
        for attribute in container.only_children("attribute", &container_path)? {
            let name = attribute.required("name", &format!("{container_path}/attribute"))?;
            let attr_path = format!("{container_path}/attribute[name={name}]");
            attribute.check_attributes(&attr_path, &["name", "time"])?;
            let time = match attribute.attribute("time") {
                None => Timestamp::ZERO,
                Some(text) => Timestamp::parse(text).map_err(|e| {
                    Error::value(
                        Code::AssignmentTimeInvalid,
                        format!("{attr_path}/@time"),
                        e.to_string(),
                    )
                })?,
            };
            let kind = declared.and_then(|k| k.get(name)).copied();
            let value = parse_value(kind, attribute.text(&attr_path)?, &attr_path)?;
            object = object.with_assignment(name, time, value);
        }
    }
    let relations = match sections.get("objects") {
        Some(container) => read_relobjs(container, &format!("{path}/objects"), id)?,
        None => Vec::new(),
    };
    Ok((object, relations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;
    use crate::query::logs_equal;

    #[test]
    fn empty_log_has_four_empty_containers() {
        let text = to_xml_string(&Log::empty()).unwrap();
        assert_eq!(
            text,
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log>\n  <object-types/>\n  <event-types/>\n  <events/>\n  <objects/>\n</log>\n"
        );
        assert!(logs_equal(&from_xml_str(&text).unwrap(), &Log::empty()));
    }

    #[test]
    fn fixture_event_and_object_shapes() {
        let text = to_xml_string(&running_example()).unwrap();
        assert!(text.contains(r#"<event id="e3" type="Create Purchase Order" time="2022-01-10T09:15:00Z">"#));
        assert!(text.contains(r#"<attribute name="po_quantity" time="2022-01-13T12:00:00Z">600</attribute>"#));
        assert!(text.contains(r#"<relobj object-id="PO1" qualifier="Created order with identifier"/>"#));
    }

    #[test]
    fn integer_text_must_parse() {
        let text = r#"<log>
          <object-types><object-type name="T"><attributes><attribute name="n" type="integer"/></attributes></object-type></object-types>
          <objects><object id="o" type="T"><attributes><attribute name="n">abc</attribute></attributes></object></objects>
        </log>"#;
        match from_xml_str(text) {
            Err(Error::ValueParse { code, .. }) => assert_eq!(code, Code::AttrKindMismatch),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_time_means_zero() {
        let text = r#"<log><objects><object id="o" type="T"><attributes><attribute name="n">x</attribute></attributes></object></objects></log>"#;
        let log = from_xml_str(text).unwrap();
        assert_eq!(log.object("o").unwrap().assignments[0].time, Timestamp::ZERO);
    }

    #[test]
    fn unknown_elements_are_rejected() {
        assert!(matches!(
            from_xml_str("<log><traces/></log>"),
            Err(Error::SchemaViolation { location, .. }) if location == "/log/traces"
        ));
        assert!(matches!(
            from_xml_str(
                r#"<log><events><event id="e" type="A" time="2022-01-01T00:00:00Z"><extra/></event></events></log>"#
            ),
            Err(Error::SchemaViolation { .. })
        ));
        assert!(matches!(
            from_xml_str("<ocel/>"),
            Err(Error::SchemaViolation { .. })
        ));
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(
            from_xml_str("<log><events></log>"),
            Err(Error::XmlSyntax { .. })
        ));
        assert!(matches!(from_xml_str(""), Err(Error::XmlSyntax { .. })));
        assert!(matches!(
            from_xml_str("<log>&bogus;</log>"),
            Err(Error::XmlSyntax { .. })
        ));
    }

    #[test]
    fn whitespace_and_markup_survive() {
        let mut b = Log::builder();
        b.event_type(TypeDeclaration::new("A & <B>").with_attribute("x", ValueKind::String));
        b.event(
            Event::new("e\"1", "A & <B>", Timestamp::ZERO).with_attribute("x", "  line1\r\nline2\t'q' ]]> "),
        );
        b.object(Object::new("o", "T"));
        b.e2o("e\"1", "tab\there\nnewline", "o");
        let log = b.build();
        let text = to_xml_string(&log).unwrap();
        assert!(logs_equal(&from_xml_str(&text).unwrap(), &log));
    }

    #[test]
    fn control_characters_are_unrepresentable() {
        let mut b = Log::builder();
        b.object(Object::new("o\u{1}", "T"));
        assert!(matches!(
            to_xml_string(&b.build()),
            Err(Error::Unrepresentable { .. })
        ));
    }
}
