mod common;

use common::brute_torsion;
use knotsurg_core::invariants::{
    alexander_from_torsion, default_coordinate_bound, genus_from_changemaker, pairing, torsion_from_alexander,
    torsion_from_changemaker, torsion_minimizer, torsion_with_bound, torus_alexander, torus_genus, TorusKnot,
};
use knotsurg_core::lattices::{enumerate_changemakers, ChangemakerVector};
use proptest::prelude::*;

/// Changemaker vectors of norm `p` with at most two zero coordinates.
fn norm_p(p: i64) -> Vec<ChangemakerVector> {
    (1..=p as usize + 2)
        .flat_map(|dim| enumerate_changemakers(p, dim))
        .filter(|s| s.coords().iter().filter(|&&c| c == 0).count() <= 2)
        .collect()
}

#[test]
fn torsion_dp_matches_direct_search() {
    let mut checked = 0;
    for p in 1..=21 {
        for sigma in norm_p(p) {
            let dp = torsion_from_changemaker(&sigma, p).unwrap();
            let brute = brute_torsion(sigma.coords(), p);
            assert_eq!(dp.values(), &brute[..], "{sigma} p={p}");
            checked += 1;
        }
    }
    assert!(checked > 250, "{checked}");
}

#[test]
fn wider_coordinate_box_changes_nothing() {
    for p in 1..=25 {
        for sigma in norm_p(p) {
            let narrow = torsion_from_changemaker(&sigma, p).unwrap();
            let wide = torsion_with_bound(&sigma, p, 4 * p + 1).unwrap();
            assert_eq!(narrow.values(), wide.values(), "{sigma}");
            assert_eq!(default_coordinate_bound(p), 2 * p + 1);
        }
    }
}

#[test]
fn minimizers_attain_the_torsion() {
    for p in [5, 9, 13, 21] {
        for sigma in norm_p(p) {
            let t = torsion_from_changemaker(&sigma, p).unwrap();
            for i in 0..=p / 2 {
                let c = torsion_minimizer(&sigma, p, i).unwrap();
                let norm: i64 = c.coords().iter().map(|x| x * x).sum();
                assert_eq!((pairing(&c, &sigma) - (2 * i - p)).rem_euclid(2 * p), 0);
                assert_eq!(norm - sigma.dim() as i64, 8 * t.get(i as usize), "{sigma} i={i}");
            }
        }
    }
}

#[test]
fn degree_equals_genus_along_the_pipeline() {
    for n in 1..=12i64 {
        let p = 4 * n + 1;
        for sigma in enumerate_changemakers(p, n as usize + 1) {
            let Ok(genus) = genus_from_changemaker(&sigma, p) else { continue };
            let poly = alexander_from_torsion(&torsion_from_changemaker(&sigma, p).unwrap());
            assert_eq!(poly.degree(), genus, "{sigma}");
        }
    }
}

#[test]
fn emitted_polynomials_are_normalized() {
    for p in 1..=21 {
        for sigma in norm_p(p) {
            let poly = alexander_from_torsion(&torsion_from_changemaker(&sigma, p).unwrap());
            assert!(poly.is_symmetric());
            assert_eq!(poly.eval_at_one(), 1);
        }
    }
    for r in 3..=25 {
        for s in 2..r {
            if let Ok(k) = TorusKnot::new(r, s) {
                let poly = torus_alexander(k);
                assert!(poly.is_symmetric());
                assert_eq!(poly.eval_at_one(), 1);
                assert_eq!(poly.degree(), torus_genus(k));
            }
        }
    }
}

#[test]
fn two_bridge_torus_leading_terms() {
    for n in 2..=40 {
        let poly = torus_alexander(TorusKnot::new(2 * n + 1, 2).unwrap());
        assert_eq!((poly.coeff(n), poly.coeff(n - 1), poly.coeff(n - 2)), (1, -1, 1));
    }
}

proptest! {
    #[test]
    fn torus_torsion_round_trip(r in 3i64..40, s in 2i64..12) {
        prop_assume!(r > s);
        let Ok(k) = TorusKnot::new(r, s) else { return Ok(()) };
        let poly = torus_alexander(k);
        let t = torsion_from_alexander(&poly).unwrap();
        prop_assert!(t.values().iter().all(|&v| v >= 0));
        prop_assert_eq!(alexander_from_torsion(&t), poly);
    }
}
