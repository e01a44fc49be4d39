//! Property tests for the structural invariants.

use hankel_nd::bessel::{bessel_j, bessel_y, bessel_zeros, Order};
use hankel_nd::hankel::{build_plan, NDPlan};
use hankel_nd::io::{read_csv, read_json, write_csv, write_json};
use hankel_nd::operators::{apply_axis_analytic, apply_polynomial, AxisOperator, OperatorPolynomial};
use hankel_nd::tensor::{eval_product, Family, MultiOrder, SampledField, TensorGrid};
use hankel_nd::verify::random_polynomial;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn order(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::BesselFirst),
        Just(Family::BesselSecond),
        Just(Family::SphericalFirst),
        Just(Family::SphericalSecond),
    ]
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_separates(fam in family(), a in 0.0..4.0, b in 0.0..4.0, x in 0.1..20.0, y in 0.1..20.0) {
        let both = eval_product(&MultiOrder::new(fam, &[a, b]).unwrap(), &[x, y], None).unwrap();
        let fx = eval_product(&MultiOrder::new(fam, &[a]).unwrap(), &[x], None).unwrap();
        let fy = eval_product(&MultiOrder::new(fam, &[b]).unwrap(), &[y], None).unwrap();
        prop_assert_eq!(both, fx * fy);
    }

    #[test]
    fn product_is_permutation_equivariant(
        fam in family(),
        orders in prop::array::uniform3(0.0..3.0),
        point in prop::array::uniform3(0.1..15.0),
        perm in Just([0usize, 1, 2]).prop_shuffle(),
    ) {
        let o = MultiOrder::new(fam, &orders).unwrap();
        let permuted = o.permuted(&perm).unwrap();
        let p: Vec<f64> = perm.iter().map(|&i| point[i]).collect();
        let a = eval_product(&o, &point, None).unwrap();
        let b = eval_product(&permuted, &p, None).unwrap();
        // a product of three factors in another order: at most two roundings apart
        prop_assert!((a - b).abs() <= 4.0 * f64::EPSILON * a.abs());
    }

    #[test]
    fn eigenrelation(nu in 0.0..4.0, k in 0.5..5.0, r in 0.2..10.0) {
        let o = MultiOrder::bessel(&[nu]).unwrap();
        let op = AxisOperator::for_axis(&o, 0).unwrap();
        let lhs = apply_axis_analytic(&op, &o, &[r], Some(&[k])).unwrap();
        let j = bessel_j(order(nu), k * r).unwrap().value;
        prop_assert!((lhs + k * k * j).abs() <= 1e-9 * (k * k).max(1.0));
    }

    #[test]
    fn wronskian(nu in 0.0..5.0, x in 0.5..60.0) {
        let j = bessel_j(order(nu), x).unwrap();
        let y = bessel_y(order(nu), x).unwrap();
        let w = j.value * y.first_derivative - j.first_derivative * y.value;
        let exact = 2.0 / (PI * x);
        prop_assert!(((w - exact) / exact).abs() < 1e-10, "{} vs {}", w, exact);
    }

    #[test]
    fn polynomial_identity(seed in any::<u64>(), k in prop::array::uniform3(0.5..2.0), point in prop::array::uniform3(0.5..5.0), orders in prop::array::uniform3(0.0..3.0)) {
        let poly = random_polynomial(&mut ChaCha8Rng::seed_from_u64(seed));
        let n = poly.n_axes();
        let o = MultiOrder::bessel(&orders[..n]).unwrap();
        let lhs = apply_polynomial(&poly, &o, Some(&k[..n]), &point[..n]).unwrap();
        let symbol = poly.evaluate(&k[..n].iter().map(|k| -k * k).collect::<Vec<_>>()).unwrap();
        let product = eval_product(&o, &point[..n], Some(&k[..n])).unwrap();
        prop_assert!((lhs - symbol * product).abs() <= 1e-7 * (1.0 + symbol.abs() * product.abs()));
    }

    #[test]
    fn operators_commute(a in 0.0..3.0, b in 0.0..3.0, k in prop::array::uniform2(0.5..2.0), p in prop::array::uniform2(0.5..5.0), e in prop::array::uniform2(0u32..3)) {
        let o = MultiOrder::bessel(&[a, b]).unwrap();
        let forward = OperatorPolynomial::new(2, vec![(1.0, vec![e[0], e[1]])]).unwrap();
        let swapped = OperatorPolynomial::new(2, vec![(1.0, vec![e[1], e[0]])]).unwrap();
        let x = apply_polynomial(&forward, &o, Some(&k), &p).unwrap();
        let y = apply_polynomial(&swapped, &o.permuted(&[1, 0]).unwrap(), Some(&[k[1], k[0]]), &[p[1], p[0]]).unwrap();
        prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn zeros_increase(nu in 0.0..10.0, count in 1usize..30) {
        let z = bessel_zeros(order(nu), count).unwrap();
        prop_assert_eq!(z.len(), count);
        prop_assert!(z[0] > nu);
        prop_assert!(z.windows(2).all(|w| w[1] > w[0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transform_is_linear(
        nu in prop::sample::select(vec![0.0, 1.0, 2.0, 0.5]),
        a in -3.0..3.0,
        b in -3.0..3.0,
        x in prop::collection::vec(-1.0..1.0, 64),
        y in prop::collection::vec(-1.0..1.0, 64),
    ) {
        let plan = build_plan(order(nu), 64, 7.0).unwrap();
        let mix: Vec<f64> = x.iter().zip(&y).map(|(x, y)| a * x + b * y).collect();
        let lhs = plan.forward(&mix).unwrap();
        let rhs: Vec<f64> =
            plan.forward(&x).unwrap().iter().zip(&plan.forward(&y).unwrap()).map(|(p, q)| a * p + b * q).collect();
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn transform_round_trips(
        nu in prop::sample::select(vec![0.0, 1.0, 2.0, 3.5]),
        radius in 1.0..20.0,
        v in prop::collection::vec(-1.0..1.0, 64),
    ) {
        let plan = build_plan(order(nu), 64, radius).unwrap();
        prop_assert!(max_abs_diff(&plan.inverse(&plan.forward(&v).unwrap()).unwrap(), &v) < 1e-10);
        prop_assert!(max_abs_diff(&plan.forward(&plan.inverse(&v).unwrap()).unwrap(), &v) < 1e-10);
    }

    #[test]
    fn axis_order_is_irrelevant(
        values in prop::collection::vec(-1.0..1.0, 12 * 12 * 12),
        perm in Just([0usize, 1, 2]).prop_shuffle(),
    ) {
        let nd = NDPlan::build(&[order(0.0), order(1.0), order(2.5)], 12, 5.0).unwrap();
        let grid = nd.sample_grid().unwrap();
        let field = SampledField::new(grid, ndarray::ArrayD::from_shape_vec(vec![12, 12, 12], values).unwrap()).unwrap();
        let reference = nd.forward_nd(&field).unwrap();
        let other = nd.forward_nd_in_order(&field, &perm).unwrap();
        let scale = reference.max_abs();
        let diff = (reference.values() - other.values()).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        prop_assert!(diff <= 1e-12 * scale);
    }

    #[test]
    fn files_round_trip(
        xs in prop::collection::btree_set(-1000i32..1000, 1..6),
        ys in prop::collection::btree_set(-1000i32..1000, 1..6),
        seed in any::<u64>(),
    ) {
        let ax: Vec<f64> = xs.iter().map(|&i| i as f64 * 0.013).collect();
        let ay: Vec<f64> = ys.iter().map(|&i| i as f64 / 7.0).collect();
        let grid = TensorGrid::from_axes(vec![ax, ay]).unwrap();
        let mut state = seed;
        let field = SampledField::from_fn(grid, |_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2e3 - 1e3
        }).unwrap();
        let mut csv = Vec::new();
        write_csv(&field, &mut csv).unwrap();
        let back = read_csv(csv.as_slice()).unwrap();
        prop_assert_eq!(back.grid().axes(), field.grid().axes());
        prop_assert_eq!(back.values(), field.values());
        let mut json = Vec::new();
        write_json(&field, &mut json).unwrap();
        prop_assert_eq!(read_json(json.as_slice()).unwrap(), field);
    }
}
