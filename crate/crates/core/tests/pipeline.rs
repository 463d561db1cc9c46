use std::collections::BTreeSet;

use twobridge::{
    all_negations, build_catalog, canonical_fraction, crossing_number, find_seams,
    lift_construction, minimal_upper_bound, parsings_wrt, phi, phi_inverse, smaller_knots,
    torus_vector, Fraction, KnotCatalog, KnotClass, SearchConfig,
};

fn knot(s: &str) -> KnotClass {
    canonical_fraction(&s.parse::<Fraction>().unwrap()).unwrap()
}

#[test]
fn catalog_survives_a_file_round_trip() {
    let config = SearchConfig {
        budget: 12,
        workers: 2,
    };
    let catalog = build_catalog(11, &config).unwrap();
    let path = std::env::temp_dir().join(format!("twobridge-catalog-{}.json", std::process::id()));
    std::fs::write(&path, catalog.to_json()).unwrap();
    let back = KnotCatalog::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(back.to_json(), catalog.to_json());
    assert_eq!(back.entries.len(), 91);
    assert_eq!(back.ek, 1);
}

#[test]
fn seam_negation_then_lift() {
    let c = torus_vector(27).unwrap();
    let seams = find_seams(&c, &parsings_wrt(&c, &[knot("1/3"), knot("1/9")])).unwrap();
    let negations = all_negations(&seams);
    let smallest = negations.iter().min_by_key(|n| n.crossing_number).unwrap();
    assert_eq!(smallest.crossing_number, 27);

    let d = phi_inverse(&knot("17/315")).into_representative();
    assert_eq!(crossing_number(&d), 28);
    let lifted = lift_construction(&d, 84).unwrap();
    let below = smaller_knots(&lifted).unwrap();
    let expected: BTreeSet<KnotClass> = [knot("1/3"), knot("1/9"), knot("17/315")].into();
    assert!(below.is_superset(&expected));
    assert_eq!(crossing_number(&lifted), 84);
}

#[test]
fn upper_bound_of_two_torus_knots() {
    let a = torus_vector(3).unwrap();
    let b = torus_vector(5).unwrap();
    let u = minimal_upper_bound(&[a, b]).unwrap();
    let k = phi(&u).unwrap();
    let below = smaller_knots(&u).unwrap();
    assert!(
        below.contains(&knot("1/3")) && below.contains(&knot("1/5")),
        "{k}: {below:?}"
    );
}
