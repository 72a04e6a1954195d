//! Motion planning in P^1 × S^3 / ±1: the stratum of a query and the path
//! the planner assigns to it.

use projprod::{NonSingularMap, PathEvaluator, Shape, SpherePoint, TcPlanner};

fn main() -> projprod::Result<()> {
    let shape: Shape = "1,3".parse()?;
    let planner = TcPlanner::new(shape, NonSingularMap::auto(1)?)?;
    println!(
        "strata 0..={} (TC upper bound {})",
        planner.bound(),
        planner.bound()
    );

    let x = vec![SpherePoint::basis(1, 0), SpherePoint::basis(3, 0)];
    let y = vec![SpherePoint::basis(1, 1), SpherePoint::basis(3, 0)];
    let (label, path) = planner.product_section(&x, &y)?;
    println!("stratum {label:?}");
    for (k, p) in path.sample(4).iter().enumerate() {
        let coords: Vec<_> = p.factors().iter().map(|f| f.coords().to_vec()).collect();
        println!("  t = {:.2}: {:?}", k as f64 / 4.0, coords);
    }

    // Any lift of the query gives the same path in the quotient.
    let nx: Vec<_> = x.iter().map(|v| -v).collect();
    let (_, again) = planner.product_section(&nx, &y)?;
    assert_eq!(again.sample(64), path.sample(64));

    let same = planner.product_section(&x, &x)?;
    println!("x to itself: stratum {:?}, constant path", same.0);
    Ok(())
}
