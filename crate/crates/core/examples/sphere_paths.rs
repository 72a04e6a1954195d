//! Geodesics, χ-meridians and fixed meridians on spheres.

use projprod::{chi, geodesic, meridian_chi, meridian_fixed, PathEvaluator, SpherePoint};

fn main() -> projprod::Result<()> {
    let a = SpherePoint::new(vec![1.0, 0.0, 0.0])?;
    let b = SpherePoint::new(vec![0.0, 0.0, 1.0])?;
    let path = geodesic(&a, &b)?;
    for (i, p) in path.sample(4).iter().enumerate() {
        println!("λ(A, B)({:.2}) = {:?}", i as f64 / 4.0, p.coords());
    }

    // λ(-A, -B) is the negated path.
    let flipped = geodesic(&-&a, &-&b)?;
    assert_eq!(flipped.sample(16), path.negated().sample(16));

    let x = SpherePoint::new(vec![0.6, 0.8, 0.0])?;
    println!("χ({:?}) = {:?}", x.coords(), chi(&x));
    let m = meridian_chi(&x)?;
    println!("μ(x, -x)(1/2) = {:?}", m.eval(0.5).coords());

    // On even spheres χ vanishes at the poles; a fixed meridian is used there.
    let pole = SpherePoint::north(2);
    assert!(meridian_chi(&pole).is_err());
    let m0 = meridian_fixed(2, true);
    println!("μ0(A, -A)(1/2) = {:?}", m0.eval(0.5).coords());

    match geodesic(&a, &-&a) {
        Err(e) => println!("antipodal input rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
