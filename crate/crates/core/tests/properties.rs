//! Randomized invariants over generated inputs.

use ffext::energy::additive_energy;
use ffext::io::{parse_set, parse_spatial_function, write_spatial_function};
use ffext::spectral::{fourier_transform, SpatialFunction};
use ffext::{FPoint, PointSet, PrimeContext};
use num_complex::Complex64;
use proptest::prelude::*;
use std::io::Cursor;

fn arb_points(p: u64, dim: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..p, dim), 1..20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_file_roundtrip(points in arb_points(7, 3)) {
        let p = 7u64;
        let mut text = String::new();
        for coords in &points {
            let row: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            text.push_str(&row.join(","));
            text.push('\n');
        }
        let (set, _) = parse_set(Cursor::new(text), p).unwrap();
        let expect = PointSet::from_points(
            &points.iter().map(|c| FPoint::new(c, p)).collect::<Vec<_>>(),
            p,
        );
        prop_assert_eq!(set, expect);
    }

    #[test]
    fn function_file_roundtrip(entries in prop::collection::vec((0u64..125, -10i32..10, -10i32..10), 1..30)) {
        let p = 5u64;
        let mut g = SpatialFunction::zeros(p, 3).unwrap();
        for (n, re, im) in &entries {
            g.values_mut()[*n as usize] = Complex64::new(*re as f64 / 4.0, *im as f64 / 4.0);
        }
        let mut buf = Vec::new();
        write_spatial_function(&mut buf, &g).unwrap();
        let parsed = parse_spatial_function(Cursor::new(buf), p);
        // a function that is identically zero serializes to an empty file
        if g.support_size() == 0 {
            prop_assert!(parsed.is_err());
        } else {
            for (a, b) in g.values().iter().zip(parsed.unwrap().values()) {
                prop_assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn plancherel_holds_for_sparse_functions(entries in prop::collection::vec((0u64..343, 1u32..100), 1..25)) {
        let p = 7u64;
        let ctx = PrimeContext::new(p).unwrap();
        let mut g = SpatialFunction::zeros(p, 3).unwrap();
        for (n, mag) in &entries {
            g.values_mut()[*n as usize] = Complex64::new(*mag as f64 / 100.0, 0.0);
        }
        let ghat = fourier_transform(&ctx, &g);
        let lhs: f64 = ghat.values().iter().map(|v| v.norm_sqr()).sum();
        let rhs: f64 = g.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * 343.0;
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (lhs + rhs + 1.0));
    }

    #[test]
    fn energy_is_translation_invariant(points in arb_points(5, 2), shift in prop::collection::vec(0u64..5, 2)) {
        let p = 5u64;
        let pts: Vec<FPoint> = points.iter().map(|c| FPoint::new(c, p)).collect();
        let t = FPoint::new(&shift, p);
        let shifted: Vec<FPoint> = pts.iter().map(|x| x.add(&t, p)).collect();
        let a = additive_energy(&PointSet::from_points(&pts, p)).unwrap();
        let b = additive_energy(&PointSet::from_points(&shifted, p)).unwrap();
        prop_assert_eq!(a, b);
    }
}
