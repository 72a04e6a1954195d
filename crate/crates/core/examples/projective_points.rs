//! Points of P_n̄ = (S^n1 × ... × S^nr)/±1, their canonical lifts and the
//! quotient metric.

use projprod::quotient::ProductPairClass;
use projprod::{canonicalize, pair_equivalent, quotient_dist, ProjProdPoint, Shape, SpherePoint};

fn main() -> projprod::Result<()> {
    let shape: Shape = "2,3".parse()?;
    let lift = vec![
        SpherePoint::new(vec![0.0, 0.0, -1.0])?,
        SpherePoint::new(vec![0.5, 0.5, 0.5, 0.5])?,
    ];
    let p = canonicalize(&shape, lift.clone())?;
    println!(
        "canonical lift of {:?}",
        lift.iter().map(|x| x.coords()).collect::<Vec<_>>()
    );
    for f in p.factors() {
        println!("  {:?}", f.coords());
    }

    let other = p.opposite_lift();
    println!(
        "d([x], [-x]) = {}",
        quotient_dist(&p, &ProjProdPoint::from_lift(other))?
    );

    let line: Shape = "1".parse()?;
    let e0 = canonicalize(&line, vec![SpherePoint::basis(1, 0)])?;
    let e1 = canonicalize(&line, vec![SpherePoint::basis(1, 1)])?;
    println!(
        "d in P^1 between the axes = {:.6}",
        quotient_dist(&e0, &e1)?
    );

    // Pairs in P_n̄ × P_n̄ have four lifts.
    let x = lift;
    let y = vec![SpherePoint::basis(2, 0), SpherePoint::basis(3, 1)];
    let nx: Vec<_> = x.iter().map(|v| -v).collect();
    println!(
        "(x, y) ~ (-x, y): {}",
        pair_equivalent(&shape, (&x, &y), (&nx, &y))?
    );
    let class = ProductPairClass::new(&shape, (&nx, &y))?;
    println!("class representative: {:?}", class);
    Ok(())
}
