//! The purchase-to-pay running example used as the golden log across all
//! codecs.
//!
//! Notes on the source tables this fixture reconciles:
//! - Payment P3 belongs to the second scenario; it appears in the event,
//!   payment, E2O and O2O tables, so the fixture has 9 objects.
//! - The E2O table lists (e5, PO1, "Invoice created starting from the PO")
//!   twice; relations are sets, so it is stored once (20 triples).
//! - The e12 qualifier is printed truncated ("Payment block removed ...");
//!   the trailing ellipsis is dropped.
//! - PO2's initial row is printed at 01:00 on the epoch day; the fixture
//!   places it at time zero like every other initial value.
//! - `is_blocked` keeps the printed "Yes"/"No" literals as strings.

use crate::model::{Event, Log, Object, TypeDeclaration};
use crate::time::Timestamp;
use crate::value::ValueKind;

fn at(text: &str) -> Timestamp {
    Timestamp::parse(text).expect("fixture timestamp")
}

const EVENT_TYPES: &[(&str, &str)] = &[
    ("Create Purchase Requisition", "pr_creator"),
    ("Approve Purchase Requisition", "pr_approver"),
    ("Create Purchase Order", "po_creator"),
    ("Change PO Quantity", "po_editor"),
    ("Insert Invoice", "invoice_inserter"),
    ("Set Payment Block", "invoice_blocker"),
    ("Remove Payment Block", "invoice_block_rem"),
    ("Insert Payment", "payment_inserter"),
];

// (id, type, time, resource)
const EVENTS: &[(&str, &str, &str, &str)] = &[
    ("e1", "Create Purchase Requisition", "2022-01-09 15:00", "Mike"),
    ("e2", "Approve Purchase Requisition", "2022-01-09 16:30", "Tania"),
    ("e3", "Create Purchase Order", "2022-01-10 09:15", "Mike"),
    ("e4", "Change PO Quantity", "2022-01-13 12:00", "Mike"),
    ("e5", "Insert Invoice", "2022-01-14 12:00", "Luke"),
    ("e6", "Insert Invoice", "2022-01-16 11:00", "Luke"),
    ("e7", "Insert Payment", "2022-01-30 23:00", "Robot"),
    ("e8", "Insert Payment", "2022-01-31 22:00", "Robot"),
    ("e9", "Insert Invoice", "2022-02-02 09:00", "Mario"),
    ("e10", "Create Purchase Order", "2022-02-02 17:00", "Mario"),
    ("e11", "Set Payment Block", "2022-02-03 07:30", "Sam"),
    ("e12", "Remove Payment Block", "2022-02-03 23:30", "Mario"),
    ("e13", "Insert Payment", "2022-02-28 23:00", "Robot"),
];

const E2O: &[(&str, &str, &str)] = &[
    ("e1", "PR1", "Regular placement of PR"),
    ("e2", "PR1", "Regular approval of PR"),
    ("e3", "PR1", "Created order from PR"),
    ("e3", "PO1", "Created order with identifier"),
    ("e4", "PO1", "Change of quantity"),
    ("e5", "PO1", "Invoice created starting from the PO"),
    ("e5", "R1", "Invoice created with identifier"),
    ("e6", "R2", "Invoice created with identifier"),
    ("e6", "PO1", "Invoice created starting from the PO"),
    ("e7", "R1", "Payment for the invoice"),
    ("e7", "P1", "Payment inserted with identifier"),
    ("e8", "R2", "Payment for the invoice"),
    ("e8", "P2", "Payment inserted with identifier"),
    ("e9", "R3", "Invoice created with identifier"),
    ("e10", "R3", "Purchase order created with maverick buying from"),
    ("e10", "PO2", "Purchase order created with identifier"),
    ("e11", "R3", "Payment block due to unethical maverick buying"),
    ("e12", "R3", "Payment block removed"),
    ("e13", "R3", "Payment for the invoice"),
    ("e13", "P3", "Payment inserted with identifier"),
];

const O2O: &[(&str, &str, &str)] = &[
    ("PR1", "PO1", "PO from PR"),
    ("PO1", "R1", "Invoice from PO"),
    ("PO1", "R2", "Invoice from PO"),
    ("R1", "P1", "Payment from invoice"),
    ("R2", "P2", "Payment from invoice"),
    ("PO2", "R3", "Maverick buying"),
    ("R3", "P3", "Payment from invoice"),
];

/// The purchase-to-pay running example: 13 events of 8 types, 9 objects of
/// 4 types, 20 E2O and 7 O2O relations.
pub fn running_example() -> Log {
    let mut b = Log::builder();

    for &(name, attribute) in EVENT_TYPES {
        b.event_type(TypeDeclaration::new(name).with_attribute(attribute, ValueKind::String));
    }
    b.object_type(
        TypeDeclaration::new("Purchase Requisition")
            .with_attribute("pr_product", ValueKind::String)
            .with_attribute("pr_quantity", ValueKind::Integer),
    );
    b.object_type(
        TypeDeclaration::new("Purchase Order")
            .with_attribute("po_product", ValueKind::String)
            .with_attribute("po_quantity", ValueKind::Integer),
    );
    b.object_type(TypeDeclaration::new("Invoice").with_attribute("is_blocked", ValueKind::String));
    b.object_type(TypeDeclaration::new("Payment"));

    for &(id, event_type, time, resource) in EVENTS {
        let attribute = EVENT_TYPES
            .iter()
            .find(|(name, _)| *name == event_type)
            .map(|(_, attribute)| *attribute)
            .expect("declared event type");
        b.event(Event::new(id, event_type, at(time)).with_attribute(attribute, resource));
    }

    b.object(
        Object::new("PR1", "Purchase Requisition")
            .with_initial("pr_product", "Cows")
            .with_initial("pr_quantity", 500),
    );
    b.object(
        Object::new("PO1", "Purchase Order")
            .with_initial("po_product", "Cows")
            .with_initial("po_quantity", 500)
            .with_assignment("po_quantity", at("2022-01-13 12:00"), 600),
    );
    b.object(
        Object::new("PO2", "Purchase Order")
            .with_initial("po_product", "Notebooks")
            .with_initial("po_quantity", 1),
    );
    b.object(Object::new("R1", "Invoice").with_initial("is_blocked", "No"));
    b.object(Object::new("R2", "Invoice").with_initial("is_blocked", "No"));
    b.object(
        Object::new("R3", "Invoice")
            .with_initial("is_blocked", "No")
            .with_assignment("is_blocked", at("2022-02-03 07:30"), "Yes")
            .with_assignment("is_blocked", at("2022-02-03 23:30"), "No"),
    );
    for id in ["P1", "P2", "P3"] {
        b.object(Object::new(id, "Payment"));
    }

    for &(event, object, qualifier) in E2O {
        b.e2o(event, qualifier, object);
    }
    for &(source, target, qualifier) in O2O {
        b.o2o(source, qualifier, target);
    }
    b.build()
}
