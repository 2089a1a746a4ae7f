use std::collections::BTreeSet;

use preskit::catalog::Catalog;
use preskit::presolve::{enumerate_presolutions, validate_presolution, EnumerationOptions};
use preskit::{Family, ToiDescriptor};

fn enumerate(f: Family, n: i64) -> Vec<preskit::presolve::PResolutionRecord> {
    let base = ToiDescriptor::new(f, n).unwrap();
    enumerate_presolutions(&base, EnumerationOptions::default()).unwrap()
}

#[test]
fn i17_at_n4_has_seven() {
    assert_eq!(enumerate(Family::I17, 4).len(), 7);
}

#[test]
fn enumerated_graphs_are_the_catalog_entries() {
    let cat = Catalog::builtin();
    for (f, n) in [
        (Family::T1, 5),
        (Family::O7, 3),
        (Family::I17, 4),
        (Family::T3, 4),
    ] {
        let recs = enumerate(f, n);
        let mut seen = BTreeSet::new();
        for r in &recs {
            let i = cat
                .index_of(f, n, &r.graph)
                .unwrap_or_else(|| panic!("{f} {n}: unknown graph"));
            assert!(seen.insert(i), "{f} {n} [{i}] found twice");
            let e = cat.lookup(f, n, i).unwrap().record(n).unwrap();
            assert_eq!((r.dim, r.milnor), (e.dim, e.milnor), "{f} {n} [{i}]");
        }
        assert_eq!(seen.len(), cat.entries_at(f, n).len(), "{f} {n}");
    }
}

#[test]
fn enumerated_records_revalidate() {
    for (f, n) in [(Family::T1, 4), (Family::O1, 5)] {
        for r in enumerate(f, n) {
            let again = validate_presolution(&r.graph, &r.base).unwrap();
            assert_eq!((again.dim, again.milnor), (r.dim, r.milnor));
        }
    }
}

#[test]
fn artin_component_is_always_found() {
    for f in Family::all() {
        let n = 2 + f.table_offset().max(0);
        let recs = enumerate(f, n);
        assert!(
            recs.iter().any(preskit::presolve::is_artin_component),
            "{f} {n}"
        );
    }
}
