//! Brute-force enumeration oracle: for every bundled model (all have at
//! most eight primaries) scan all vacuum-containing subsets for fusion
//! closure, independently of the closure-based enumeration.

use fcring::chars::Config;
use fcring::set::PrimarySet;
use fcring::zoo;

/// Closure test straight off the model data, not through the ring API.
fn is_closed(model: &fcring::ModelFile, mask: u32) -> bool {
    if mask & 1 == 0 {
        return false;
    }
    for &(p, q, r, value) in &model.fusion {
        if value > 0 && mask & (1 << p) != 0 && mask & (1 << q) != 0 && mask & (1 << r) == 0 {
            return false;
        }
    }
    true
}

#[test]
fn enumeration_matches_the_subset_scan() {
    for name in zoo::BUNDLED_NAMES {
        let model = zoo::bundled_model(name).unwrap();
        let n = model.n;
        assert!(n <= 8, "{name}: oracle assumes small models");
        let ring = zoo::bundled_ring(name, &Config::default()).unwrap();
        let lat = ring.enumerate_fcsets().unwrap();

        let mut expected: Vec<PrimarySet> = Vec::new();
        for mask in 0u32..(1 << n) {
            if is_closed(&model, mask) {
                expected.push(PrimarySet::from_members(
                    (0..n).filter(|p| mask & (1 << p) != 0),
                ));
            }
        }
        expected.sort();
        assert_eq!(
            lat.elements(),
            expected.as_slice(),
            "{name}: enumerated lattice differs from the brute-force scan"
        );
    }
}

#[test]
fn expected_lattice_sizes() {
    for (name, size) in [
        ("trivial", 1usize),
        ("ising", 3),
        ("fibonacci", 2),
        ("z2", 2),
        ("z3", 2),
        ("z4", 3),
        ("toric", 5),
        ("rep_s3", 3),
        ("double_s3", 8),
    ] {
        let ring = zoo::bundled_ring(name, &Config::default()).unwrap();
        let lat = ring.enumerate_fcsets().unwrap();
        assert_eq!(lat.len(), size, "{name}");
    }
}

#[test]
fn meets_and_joins_stay_inside_and_agree_with_subset_order() {
    for name in zoo::BUNDLED_NAMES {
        let ring = zoo::bundled_ring(name, &Config::default()).unwrap();
        let lat = ring.enumerate_fcsets().unwrap();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                let m = lat.element(lat.meet(a, b));
                let j = lat.element(lat.join(a, b));
                assert_eq!(m, lat.element(a).intersect(&lat.element(b)));
                assert!(lat.element(a).is_subset_of(&j));
                assert!(lat.element(b).is_subset_of(&j));
                // The join is the least upper bound.
                for c in 0..lat.len() {
                    if lat.leq(a, c) && lat.leq(b, c) {
                        assert!(lat.leq(lat.join(a, b), c));
                    }
                }
            }
        }
    }
}
