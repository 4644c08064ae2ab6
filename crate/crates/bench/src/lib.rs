//! Synthetic logs for benchmarks.
//!
//! `synthetic(n)` scales the shape of the running example: `n` orders, each
//! with an invoice and a payment, four events per order and a quantity that
//! changes a few times over the order's life.

use ocel_core::{Event, Log, Object, Timestamp, TypeDeclaration, ValueKind};

const HOUR: i64 = 3_600_000;
const START: i64 = 1_640_995_200_000; // 2022-01-01T00:00:00Z

fn at(millis: i64) -> Timestamp {
    Timestamp::from_millis(millis).expect("synthetic time in range")
}

/// A valid log with `orders` orders, `3 * orders` objects and `4 * orders` events.
pub fn synthetic(orders: usize) -> Log {
    let mut b = Log::builder();
    b.object_type(
        TypeDeclaration::new("Purchase Order")
            .with_attribute("po_product", ValueKind::String)
            .with_attribute("po_quantity", ValueKind::Integer),
    );
    b.object_type(TypeDeclaration::new("Invoice").with_attribute("is_blocked", ValueKind::Boolean));
    b.object_type(TypeDeclaration::new("Payment").with_attribute("amount", ValueKind::Float));
    for name in [
        "Create Purchase Order",
        "Change PO Quantity",
        "Insert Invoice",
        "Insert Payment",
    ] {
        b.event_type(
            TypeDeclaration::new(name)
                .with_attribute("resource", ValueKind::String)
                .with_attribute("recorded", ValueKind::Time),
        );
    }

    for i in 0..orders {
        let base = START + i as i64 * HOUR;
        let (po, invoice, payment) = (format!("PO{i}"), format!("R{i}"), format!("P{i}"));
        let mut order = Object::new(&po, "Purchase Order")
            .with_initial("po_product", format!("product {}", i % 17))
            .with_initial("po_quantity", 100 + (i % 50) as i64);
        for step in 1..=3i64 {
            order = order.with_assignment("po_quantity", at(base + step * 24 * HOUR), 100 + step * 10);
        }
        b.object(order);
        b.object(
            Object::new(&invoice, "Invoice")
                .with_initial("is_blocked", false)
                .with_assignment("is_blocked", at(base + 30 * HOUR), i % 3 == 0),
        );
        b.object(Object::new(&payment, "Payment").with_initial("amount", i as f64 * 12.5));

        let events = [
            ("Create Purchase Order", 0, &po, "Created order"),
            ("Change PO Quantity", 24, &po, "Quantity changed"),
            ("Insert Invoice", 30, &invoice, "Invoice created"),
            ("Insert Payment", 60, &payment, "Payment inserted"),
        ];
        for (k, (event_type, offset, object, qualifier)) in events.into_iter().enumerate() {
            let id = format!("e{i}_{k}");
            let time = at(base + offset * HOUR);
            b.event(
                Event::new(&id, event_type, time)
                    .with_attribute("resource", format!("clerk {}", i % 7))
                    .with_attribute("recorded", time),
            );
            b.e2o(&id, qualifier, object);
            if object != &po {
                b.e2o(&id, "For order", &po);
            }
        }
        b.o2o(&po, "Invoice from PO", &invoice);
        b.o2o(&invoice, "Payment for invoice", &payment);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ocel_core::{has_errors, validate_model};

    #[test]
    fn synthetic_log_is_valid() {
        let log = synthetic(25);
        let diagnostics = validate_model(&log);
        assert!(!has_errors(&diagnostics), "{diagnostics:?}");
        assert_eq!(log.events().len(), 100);
        assert_eq!(log.objects().len(), 75);
        assert_eq!(log.e2o().len(), 25 * 6);
    }
}
