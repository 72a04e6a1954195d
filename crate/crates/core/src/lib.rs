//! Lusternik-Schnirelmann category covers and topological-complexity motion
//! planners for projective product spaces
//! `P_n̄ = (S^n1 × ... × S^nr) / (x̄ ~ -x̄)`, together with the mod-2
//! cohomology computations that certify the matching lower bounds.
//!
//! * [`sphere`]: sphere points, geodesics, meridians and the [`PathEvaluator`] trait.
//! * [`quotient`]: canonical points of `P_n̄`, the quotient metric, product paths.
//! * [`nonsingular`]: non-singular bilinear maps driving the `P^n1` planner.
//! * [`tc`]: the stratified motion planner on `P_n̄ × P_n̄`.
//! * [`cat`]: the categorical cover with `n1 + r` pieces.
//! * [`ring`]: `H*(P_n̄; Z2)`, cup-length, zero-divisor cup-length, bounds.
//! * [`cli`]: the `projprod` command line.
//!
//! ```
//! use projprod::{NonSingularMap, PathEvaluator, Shape, SpherePoint, TcPlanner};
//!
//! let shape: Shape = "1,3".parse().unwrap();
//! let planner = TcPlanner::new(shape, NonSingularMap::auto(1).unwrap()).unwrap();
//! let x = vec![SpherePoint::basis(1, 0), SpherePoint::basis(3, 0)];
//! let y = vec![SpherePoint::basis(1, 1), SpherePoint::basis(3, 0)];
//! let (label, path) = planner.product_section(&x, &y).unwrap();
//! assert_eq!(label.s, 2);
//! assert_eq!(path.sample(64).len(), 65);
//! ```

// Checks are written as `!(residual <= tol)` so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cat;
pub mod cli;
pub mod error;
pub mod nonsingular;
pub mod quotient;
pub mod ring;
pub mod sampling;
pub mod sphere;
pub mod tc;

pub use cat::{verify_cat_tower, CatCover, CatStratumLabel};
pub use error::{Error, Result};
pub use nonsingular::{verify_map, BilinearFamily, MapKind, NonSingularMap};
pub use quotient::{
    canonicalize, pair_equivalent, quotient_dist, ProductPath, ProjPoint, ProjProdPoint, Shape,
};
pub use ring::{bounds_report, zcl_lower, BoundsReport, Mod2Ring};
pub use sphere::{
    chi, geodesic, meridian_chi, meridian_fixed, PathEvaluator, SpherePath, SpherePoint,
};
pub use tc::{verify_tower, StratumLabel, TcPlanner, Tolerances};
