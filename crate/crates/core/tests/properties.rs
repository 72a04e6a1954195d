use proptest::prelude::*;

use projprod::quotient::{lift_dist, ProductPairClass};
use projprod::sphere::EPS_ANTIPODAL;
use projprod::{
    canonicalize, chi, geodesic, meridian_chi, pair_equivalent, quotient_dist, CatCover,
    NonSingularMap, PathEvaluator, ProjProdPoint, Shape, SpherePoint, TcPlanner,
};

const SHAPES: [&str; 6] = ["1,1", "1,3", "2,3", "3,5", "2,2", "1,2,4"];

fn unit(dim: usize) -> impl Strategy<Value = SpherePoint> {
    prop::collection::vec(-1.0f64..1.0, dim + 1)
        .prop_filter("not too small", |v| {
            v.iter().map(|c| c * c).sum::<f64>() > 0.01
        })
        .prop_map(|v| SpherePoint::normalized(v).unwrap())
}

fn lift(dims: Vec<usize>) -> impl Strategy<Value = Vec<SpherePoint>> {
    dims.into_iter().map(unit).collect::<Vec<_>>()
}

fn shape_and_lift() -> impl Strategy<Value = (Shape, Vec<SpherePoint>)> {
    prop::sample::select(SHAPES.to_vec()).prop_flat_map(|s| {
        let shape: Shape = s.parse().unwrap();
        let dims = shape.dims().to_vec();
        (Just(shape), lift(dims))
    })
}

/// Query pairs whose later factors are equal, antipodal, at a pole, or
/// generic, so that every sphere branch gets exercised.
fn query_pair() -> impl Strategy<Value = (Shape, Vec<SpherePoint>, Vec<SpherePoint>)> {
    shape_and_lift()
        .prop_flat_map(|(shape, x)| {
            let dims = shape.dims().to_vec();
            let modes = prop::collection::vec(0u8..5, dims.len());
            (Just(shape), Just(x), lift(dims), modes)
        })
        .prop_map(|(shape, mut x, mut y, modes)| {
            for q in 1..x.len() {
                let d = x[q].dim();
                match modes[q] {
                    0 => y[q] = x[q].clone(),
                    1 => y[q] = -&x[q],
                    2 => {
                        x[q] = SpherePoint::north(d);
                        y[q] = SpherePoint::north(d);
                    }
                    3 => {
                        x[q] = -SpherePoint::north(d);
                        y[q] = SpherePoint::north(d);
                    }
                    _ => {}
                }
            }
            if modes[0] == 0 {
                y[0] = x[0].clone();
            }
            (shape, x, y)
        })
}

fn neg(v: &[SpherePoint]) -> Vec<SpherePoint> {
    v.iter().map(|p| -p).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn geodesic_is_unit_speed_and_odd(a in unit(4), b in unit(4)) {
        prop_assume!(a.antichord(&b) > 1e-6);
        let path = geodesic(&a, &b).unwrap();
        prop_assert_eq!(path.eval(0.0), a.clone());
        prop_assert_eq!(path.eval(1.0), b.clone());
        let n = 64;
        let samples = path.sample(n);
        let angle = 2.0 * a.chord(&b).atan2(a.antichord(&b));
        for w in samples.windows(2) {
            let norm = w[1].coords().iter().map(|c| c * c).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
            prop_assert!(w[0].chord(&w[1]) <= angle / n as f64 + 1e-12);
        }
        let flipped = geodesic(&-&a, &-&b).unwrap();
        prop_assert_eq!(flipped.sample(n), path.negated().sample(n));
    }

    #[test]
    fn geodesic_rejects_antipodes(a in unit(3)) {
        prop_assert!(geodesic(&a, &-&a).is_err());
        prop_assert!(a.antichord(&-&a) <= EPS_ANTIPODAL);
    }

    #[test]
    fn chi_is_tangent_and_odd(x in unit(5)) {
        let v = chi(&x);
        let dot: f64 = v.iter().zip(x.coords()).map(|(a, b)| a * b).sum();
        prop_assert!(dot.abs() <= 1e-15);
        let w = chi(&-&x);
        prop_assert!(v.iter().zip(&w).all(|(a, b)| *a == -b));
    }

    #[test]
    fn chi_meridian_reaches_antipode(x in unit(3)) {
        let m = meridian_chi(&x).unwrap();
        prop_assert_eq!(m.eval(0.0), x.clone());
        prop_assert_eq!(m.eval(1.0), -&x);
        for p in m.sample(32) {
            let norm = p.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn canonical_lift_is_idempotent((shape, x) in shape_and_lift()) {
        let p = canonicalize(&shape, x.clone()).unwrap();
        let again = canonicalize(&shape, p.factors().to_vec()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(canonicalize(&shape, neg(&x)).unwrap(), p.clone());
        prop_assert_eq!(quotient_dist(&p, &ProjProdPoint::from_lift(neg(&x))).unwrap(), 0.0);
        prop_assert!(lift_dist(&x, p.factors()).unwrap() == 0.0
            || lift_dist(&neg(&x), p.factors()).unwrap() == 0.0);
    }

    #[test]
    fn quotient_distance_is_symmetric_and_lift_free((_, x, y) in query_pair()) {
        let p = ProjProdPoint::from_lift(x.clone());
        let q = ProjProdPoint::from_lift(y.clone());
        let d = quotient_dist(&p, &q).unwrap();
        prop_assert_eq!(d, quotient_dist(&q, &p).unwrap());
        prop_assert!((0.0..=2.0).contains(&d));
        prop_assert_eq!(d, quotient_dist(&p, &ProjProdPoint::from_lift(neg(&y))).unwrap());
        prop_assert_eq!(quotient_dist(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn pair_relation_has_four_lifts((shape, x, y) in query_pair()) {
        let nx = neg(&x);
        let ny = neg(&y);
        let class = ProductPairClass::new(&shape, (&x, &y)).unwrap();
        for (a, b) in [(&x, &y), (&nx, &y), (&x, &ny), (&nx, &ny)] {
            prop_assert!(pair_equivalent(&shape, (&x, &y), (a, b)).unwrap());
            prop_assert_eq!(&ProductPairClass::new(&shape, (a, b)).unwrap(), &class);
        }
    }

    #[test]
    fn section_joins_endpoints_for_every_lift((shape, x, y) in query_pair()) {
        let map = NonSingularMap::auto(shape.n1()).unwrap();
        let planner = TcPlanner::new(shape, map).unwrap();
        let (label, path) = planner.product_section(&x, &y).unwrap();
        prop_assert!(label.s <= planner.bound());
        let px = ProjProdPoint::from_lift(x.clone());
        let py = ProjProdPoint::from_lift(y.clone());
        prop_assert!(quotient_dist(&path.eval(0.0), &px).unwrap() <= 1e-9);
        prop_assert!(quotient_dist(&path.eval(1.0), &py).unwrap() <= 1e-9);
        let samples = path.sample(16);
        let nx = neg(&x);
        let ny = neg(&y);
        for (a, b) in [(&nx, &y), (&x, &ny), (&nx, &ny)] {
            let (other_label, other) = planner.product_section(a, b).unwrap();
            prop_assert_eq!(&other_label, &label);
            prop_assert_eq!(&other.sample(16), &samples);
        }
    }

    #[test]
    fn contraction_lands_on_piece_target((shape, mut x) in shape_and_lift(), poles in prop::collection::vec(0u8..3, 4)) {
        for q in 1..x.len() {
            let d = x[q].dim();
            match poles[q] {
                0 => x[q] = SpherePoint::north(d),
                1 => x[q] = -SpherePoint::north(d),
                _ => {}
            }
        }
        let cover = CatCover::new(shape);
        let (label, path) = cover.cat_contraction(&x).unwrap();
        prop_assert!(label.s <= cover.bound());
        prop_assert_eq!(quotient_dist(&path.eval(0.0), &ProjProdPoint::from_lift(x.clone())).unwrap(), 0.0);
        prop_assert_eq!(quotient_dist(&path.eval(1.0), &cover.target(&label)).unwrap(), 0.0);
        let (other_label, other) = cover.cat_contraction(&neg(&x)).unwrap();
        prop_assert_eq!(other_label, label);
        prop_assert_eq!(other.sample(16), path.sample(16));
    }
}
