//! Seeded verification of the planner, the cover, the maps and the ring for
//! one shape, as the `verify` subcommand runs it.

use projprod::ring::verify_ring;
use projprod::{
    verify_cat_tower, verify_map, verify_tower, CatCover, NonSingularMap, Shape, TcPlanner,
};

fn main() -> projprod::Result<()> {
    let shape: Shape = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,3".into())
        .parse()?;
    let seed = 7;
    let map = NonSingularMap::auto(shape.n1())?;

    let maps = verify_map(&map, 10_000, seed);
    println!(
        "maps: pass={} margin={:.4}",
        maps.pass, maps.min_nonvanishing_margin
    );

    let ring = verify_ring(&shape, seed)?;
    println!(
        "ring: pass={} triples={} cuplength={}",
        ring.pass, ring.triples_checked, ring.cuplength
    );

    let cat = verify_cat_tower(&CatCover::new(shape.clone()), 10_000, 1_000, seed);
    println!(
        "cat: pass={} histogram={:?} probes={}/{}",
        cat.pass, cat.histogram, cat.probes.collected, cat.probes.requested
    );

    let tc = verify_tower(&TcPlanner::new(shape, map)?, 10_000, 1_000, seed);
    println!(
        "tc: pass={} histogram={:?} bound={} endpoint={:.1e} probes max ratio={:.2}",
        tc.pass, tc.histogram, tc.bound, tc.max_endpoint_residual, tc.probes.max_ratio
    );
    Ok(())
}
