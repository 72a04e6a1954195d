//! The categorical cover of P_n̄ with n1 + r pieces, each contracting to a
//! single point.

use projprod::quotient::quotient_dist;
use projprod::{CatCover, PathEvaluator, ProjProdPoint, Shape, SpherePoint};

fn main() -> projprod::Result<()> {
    let shape: Shape = "1,1".parse()?;
    let cover = CatCover::new(shape);
    println!("pieces 0..={}", cover.bound());

    let queries = [
        vec![
            SpherePoint::new(vec![1.0, 0.0])?,
            SpherePoint::new(vec![1.0, 0.0])?,
        ],
        vec![
            SpherePoint::normalized(vec![1.0, 1.0])?,
            SpherePoint::new(vec![0.0, 1.0])?,
        ],
        vec![
            SpherePoint::new(vec![-1.0, 0.0])?,
            SpherePoint::new(vec![0.0, -1.0])?,
        ],
    ];
    for x in &queries {
        let (label, path) = cover.cat_contraction(x)?;
        let end = path.eval(1.0);
        let target = cover.target(&label);
        println!(
            "x = {:?}: piece {:?}, ends at {:?} (distance to target {})",
            x.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
            label,
            end.factors()
                .iter()
                .map(|p| p.coords().to_vec())
                .collect::<Vec<_>>(),
            quotient_dist(&end, &target)?
        );
        assert_eq!(path.eval(0.0), ProjProdPoint::from_lift(x.clone()));
    }
    Ok(())
}
