mod common;

use std::collections::{BTreeSet, HashSet};

use common::{arb_log, through, MAX_MILLIS};
use ocel_core::codec::relational::{is_valid_mapped_name, map_type_name, TypeNameMapper};
use ocel_core::{
    has_errors, logs_equal, to_json_string, to_xml_string, validate_model, AttributeValue, Format, Log,
    Object, QualifiedRelation, Timestamp, TypeDeclaration, ValueKind,
};
use proptest::prelude::*;

fn ts(millis: i64) -> Timestamp {
    Timestamp::from_millis(millis).unwrap()
}

/// An object with one integer attribute `a` assigned at the given times,
/// each time's value being its index.
fn history_log(times: &BTreeSet<i64>) -> Log {
    let mut object = Object::new("o", "T");
    for (i, t) in times.iter().enumerate() {
        object = object.with_assignment("a", ts(*t), i as i64);
    }
    let mut b = Log::builder();
    b.object_type(TypeDeclaration::new("T").with_attribute("a", ValueKind::Integer));
    b.object(object);
    b.build()
}

proptest! {
    #[test]
    fn generated_logs_are_valid(log in arb_log()) {
        let diagnostics = validate_model(&log);
        prop_assert!(!has_errors(&diagnostics), "{diagnostics:?}");
    }

    #[test]
    fn value_is_constant_between_assignments(
        times in prop::collection::btree_set(0..1_000_000i64, 1..6),
        probe in 0..1_100_000i64,
    ) {
        let log = history_log(&times);
        let before = times.range(..=probe).next_back().copied();
        let after = times.range(probe + 1..).next().copied().unwrap_or(probe + 100_000);
        // Any t in [probe, next assignment) sees the same value.
        for t in [probe, (probe + after) / 2, after - 1] {
            let at_t = log.oaval_at("o", "a", ts(t)).unwrap().cloned();
            let at_probe = log.oaval_at("o", "a", ts(probe)).unwrap().cloned();
            prop_assert_eq!(at_t, at_probe);
        }
        let expected = before.map(|b| AttributeValue::Integer(times.range(..b).count() as i64));
        prop_assert_eq!(log.oaval_at("o", "a", ts(probe)).unwrap().cloned(), expected);
    }

    #[test]
    fn assignment_time_is_inclusive(times in prop::collection::btree_set(0..1_000_000i64, 1..6)) {
        let log = history_log(&times);
        for (i, t) in times.iter().enumerate() {
            prop_assert_eq!(log.oaval_at("o", "a", ts(*t)).unwrap(), Some(&AttributeValue::Integer(i as i64)));
        }
    }

    #[test]
    fn initial_value_alone_is_static(t in 0..=MAX_MILLIS) {
        let log = history_log(&BTreeSet::from([0]));
        prop_assert_eq!(log.oaval_at("o", "a", ts(t)).unwrap(), Some(&AttributeValue::Integer(0)));
        prop_assert_eq!(log.oaval_final("o", "a").unwrap(), Some(&AttributeValue::Integer(0)));
    }

    #[test]
    fn eaval_only_answers_declared_attributes(log in arb_log()) {
        for event in log.events() {
            let declaration = log.event_type_declaration(&event.event_type).unwrap();
            for name in event.attributes.keys() {
                prop_assert!(declaration.attribute(name).is_some());
            }
            prop_assert_eq!(log.eaval(&event.id, "\u{0}undeclared").unwrap(), None);
        }
    }

    #[test]
    fn relobj_reconstructs_relations(log in arb_log()) {
        let mut e2o = BTreeSet::new();
        for event in log.events() {
            for r in log.relobj_event(&event.id).unwrap() {
                e2o.insert(QualifiedRelation::new(&event.id, r.qualifier, r.object_id));
            }
        }
        prop_assert_eq!(&e2o, log.e2o());
        let mut o2o = BTreeSet::new();
        for object in log.objects() {
            for r in log.relobj_object(&object.id).unwrap() {
                o2o.insert(QualifiedRelation::new(&object.id, r.qualifier, r.object_id));
            }
        }
        prop_assert_eq!(&o2o, log.o2o());
    }

    #[test]
    fn logs_equal_is_an_equivalence(a in arb_log(), b in arb_log()) {
        prop_assert!(logs_equal(&a, &a));
        prop_assert_eq!(logs_equal(&a, &b), logs_equal(&b, &a));
        // Reordering a copy does not change equality.
        let mut builder = a.to_builder();
        builder.events_mut().reverse();
        builder.objects_mut().reverse();
        builder.event_types_mut().reverse();
        let reordered = builder.build();
        prop_assert!(logs_equal(&a, &reordered));
        prop_assert_eq!(logs_equal(&reordered, &b), logs_equal(&a, &b));
    }

    #[test]
    fn validation_is_deterministic(log in arb_log()) {
        prop_assert_eq!(validate_model(&log), validate_model(&log));
    }

    #[test]
    fn document_writers_are_deterministic(log in arb_log()) {
        prop_assert_eq!(to_xml_string(&log).unwrap(), to_xml_string(&log.to_builder().build()).unwrap());
        prop_assert_eq!(to_json_string(&log).unwrap(), to_json_string(&log.to_builder().build()).unwrap());
        // Equal logs built in another order serialize identically.
        let mut builder = log.to_builder();
        builder.events_mut().reverse();
        builder.objects_mut().reverse();
        let shuffled = builder.build();
        prop_assert_eq!(to_xml_string(&log).unwrap(), to_xml_string(&shuffled).unwrap());
        prop_assert_eq!(to_json_string(&log).unwrap(), to_json_string(&shuffled).unwrap());
    }

    #[test]
    fn mapped_names_are_injective_identifiers(names in prop::collection::vec("[\\PC]{1,6}", 0..20)) {
        let mut mapper = TypeNameMapper::default();
        let mut seen = HashSet::new();
        for name in &names {
            let mapped = mapper.assign(name);
            prop_assert!(is_valid_mapped_name(&mapped), "{mapped:?}");
            prop_assert!(seen.insert(mapped.to_ascii_lowercase()), "{mapped:?} repeated");
        }
    }

    #[test]
    fn mapping_keeps_free_identifiers(name in "[A-Za-z0-9_]{1,12}") {
        prop_assert_eq!(map_type_name(&name, &HashSet::new()), name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_codec_round_trips(log in arb_log()) {
        let dir = tempfile::tempdir().unwrap();
        for format in Format::ALL {
            let back = through(&log, format, dir.path(), "rt");
            prop_assert!(logs_equal(&back, &log), "{format}");
        }
    }
}
