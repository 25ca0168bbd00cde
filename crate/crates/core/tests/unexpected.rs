use std::collections::BTreeSet;

use pointline::arrangement::Arrangement;
use pointline::fixtures;
use pointline::freeness::{freeness_certificate, CurveSpec, MdrOptions, Verdict};
use pointline::unexpected::*;

#[test]
fn h57_degrees() {
    let r = unexpected_degrees(57, 25, 8);
    assert!(r.admits);
    assert_eq!(r.degrees, (26..=30).collect::<BTreeSet<_>>());
    let js: Vec<u32> = slp_failures(&r).iter().map(|f| f.j).collect();
    assert_eq!(js, vec![25, 26, 27, 28, 29]);
    assert!(slp_failures(&r).iter().all(|f| f.range == 2 && f.degree + 1 == f.j));
}

#[test]
fn o33_degrees() {
    let r = unexpected_degrees(33, 15, 8);
    assert_eq!(r.degrees, BTreeSet::from([16]));
    let f = slp_failures(&r);
    assert_eq!(f.len(), 1);
    assert_eq!((f[0].range, f[0].degree), (2, 14));
}

fn round_trip(arr: &Arrangement) -> UnexpectedReport {
    let lat = arr.lattice().unwrap();
    let curve = CurveSpec::from_arrangement(arr).unwrap();
    let cert = freeness_certificate(&curve, lat.tau(), MdrOptions::default()).unwrap();
    let Verdict::Free { d1, .. } = cert.verdict else { panic!("{:?}", cert.verdict) };
    unexpected_degrees(arr.len() as u32, d1, lat.max_multiplicity() as u32)
}

#[test]
fn round_trip_through_freeness() {
    assert_eq!(round_trip(&fixtures::o33().unwrap()), unexpected_degrees(33, 15, 8));
    assert_eq!(round_trip(&fixtures::h57().unwrap()), unexpected_degrees(57, 25, 8));
}
