//! Non-singular bilinear maps: Cayley-Dickson products for n = 1, 3, 7 and
//! polynomial reversal for every n.

use projprod::nonsingular::{cd_conj, cd_mul};
use projprod::{verify_map, BilinearFamily, NonSingularMap};

fn main() -> projprod::Result<()> {
    let i = [0.0, 1.0, 0.0, 0.0];
    let j = [0.0, 0.0, 1.0, 0.0];
    println!(
        "quaternions: i·j = {:?}, conj(i) = {:?}",
        cd_mul(&i, &j),
        cd_conj(&i)
    );

    let complex = NonSingularMap::division_algebra(1)?;
    println!(
        "f((1,0), (0,1)) = {:?}",
        complex.eval(&[1.0, 0.0], &[0.0, 1.0])
    );

    let poly = NonSingularMap::polynomial_reversal(1)?;
    println!(
        "reversal f((1,0), (0,1)) = {:?} (k = {})",
        poly.eval(&[1.0, 0.0], &[0.0, 1.0]),
        poly.k()
    );

    println!(
        "{:>20} {:>3} {:>3} {:>12} {:>12}",
        "kind", "n", "k", "bilinear", "margin"
    );
    let mut maps: Vec<NonSingularMap> = [1, 3, 7]
        .into_iter()
        .map(NonSingularMap::division_algebra)
        .collect::<Result<_, _>>()?;
    for n in 1..=5 {
        maps.push(NonSingularMap::polynomial_reversal(n)?);
    }
    for m in &maps {
        let r = verify_map(m, 2_000, 1);
        println!(
            "{:>20} {:>3} {:>3} {:>12.2e} {:>12.4} {}",
            format!("{:?}", m.kind()),
            r.n,
            r.k,
            r.max_bilinearity_residual,
            r.min_nonvanishing_margin,
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}
