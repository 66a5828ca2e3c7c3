use calogero::jack::elementary_from_coordinates;
use proptest::prelude::*;

fn centred(q: &[f64]) -> Vec<f64> {
    let mean = q.iter().sum::<f64>() / q.len() as f64;
    q.iter().map(|x| x - mean).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn first_order_potential_in_z(raw in prop::collection::vec(-3.2f64..3.2, 4), n in 2usize..=4) {
        let q = centred(&raw[..n]);
        let z = elementary_from_coordinates(&q);
        prop_assert!((z[n - 1].re - 1.0).abs() < 1e-12 && z[n - 1].im.abs() < 1e-12);
        let mut lhs = 0.0;
        for j in 0..n {
            for k in j + 1..n {
                lhs += 8.0 * (1.0 - (2.0 * (q[j] - q[k])).cos());
            }
        }
        let rhs = 4.0 * ((n * n) as f64 - z[0] * z[n - 2]);
        prop_assert!((rhs.re - lhs).abs() <= 1e-10 && rhs.im.abs() <= 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn second_order_potential_in_z(a in -3.2f64..3.2, b in -3.2f64..3.2) {
        let q = centred(&[a, b]);
        let z = elementary_from_coordinates(&q);
        let r = q[0] - q[1];
        let lhs = 8.0 * (3.0 - (2.0 * r).cos() - 2.0 * (4.0 * r).cos());
        let z1 = z[0];
        let z2 = z[1];
        let full = 4.0 * (12.0 - z1 * z1 - 2.0 * (z1 * z1 - 2.0 * z2) * (z1 * z1 - 2.0));
        prop_assert!((full.re - lhs).abs() <= 1e-10 && full.im.abs() <= 1e-10);
        let reduced = 4.0 * (4.0 + 7.0 * z1 * z1 - 2.0 * z1.powi(4));
        prop_assert!((reduced.re - lhs).abs() <= 1e-10);
    }
}
