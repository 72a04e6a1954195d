//! The mod-2 cohomology ring of P_n̄, its cup-length, the zero-divisor
//! cup-length, and the resulting bounds on cat and TC.

use projprod::ring::{zcl_projective, Mod2Ring};
use projprod::{bounds_report, zcl_lower, Shape};

fn main() -> projprod::Result<()> {
    let shape: Shape = "2,2,5".parse()?;
    let ring = Mod2Ring::new(shape.clone())?;
    println!(
        "H*(P_({shape}); Z2): {:?}, {} basis monomials",
        ring.mode(),
        ring.basis().len()
    );
    let (len, witness) = ring.cuplength();
    println!("cup-length {len}, witness generators {witness:?}");

    println!(
        "zcl(P^n) for n = 1..=8: {:?}",
        (1..=8).map(zcl_projective).collect::<Vec<_>>()
    );
    let cert = zcl_lower(&shape)?;
    println!(
        "zcl lower bound {} ({} witness terms)",
        cert.value, cert.witness_terms
    );

    println!(
        "\n{:>8} {:>4} {:>8} {:>8} {:>5} {:>6}",
        "n̄", "cat", "TC new", "TC old", "zcl", "exact"
    );
    for s in [
        "1,1", "1,3", "1,2", "2,3", "3,5", "2,2,5", "3,3,3", "1,3,5,7",
    ] {
        let b = bounds_report(&s.parse()?, None)?;
        println!(
            "{:>8} {:>4} {:>8} {:>8} {:>5} {:>6}",
            s,
            b.cat,
            b.tc_upper_new,
            b.tc_upper_ggtx,
            b.zcl_lower,
            b.tc_exact.map_or("-".into(), |t| t.to_string())
        );
    }
    Ok(())
}
