//! Projective spaces and projective product spaces as sets of canonical
//! representatives.
//!
//! A point of `P_n̄ = (S^n1 × ... × S^nr) / (x̄ ~ -x̄)` is stored as the lift
//! whose first significantly nonzero coordinate (reading the factors in
//! order) is positive. `P^n` is the one-factor case.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{PathEvaluator, SpherePath, SpherePoint, Target};

/// Coordinates at or below this magnitude are skipped by the sign rule.
pub const EPS_ZERO: f64 = 1e-12;

/// Tolerance on the norm of factor vectors read from JSON; accepted
/// vectors are renormalized.
pub const JSON_UNIT_TOL: f64 = 1e-6;

/// The dimension tuple `n̄ = (n1 ≤ ... ≤ nr)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("empty tuple".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidShape("entries must be positive".into()));
        }
        if dims.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidShape("entries must be nondecreasing".into()));
        }
        Ok(Self(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Number of sphere factors.
    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn n1(&self) -> usize {
        self.0[0]
    }

    /// The factors `q ≥ 2`, as (index, dimension).
    pub fn tail(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied().enumerate().skip(1)
    }

    /// Number of `q > 1` with `n_q` even.
    pub fn even_count(&self) -> usize {
        self.tail().filter(|(_, n)| n % 2 == 0).count()
    }

    pub fn check(&self, factors: &[SpherePoint]) -> Result<()> {
        let found: Vec<usize> = factors.iter().map(SpherePoint::dim).collect();
        if found != self.0 {
            return Err(Error::DimensionMismatch {
                expected: self.to_string(),
                found: join(&found),
            });
        }
        Ok(())
    }
}

fn join(dims: &[usize]) -> String {
    dims.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let dims = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidShape(format!("{part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Shape::new(dims)
    }
}

/// Whether the first coordinate of the concatenated lift with magnitude
/// above [`EPS_ZERO`] is negative.
fn leading_negative(factors: &[SpherePoint]) -> bool {
    factors
        .iter()
        .flat_map(|f| f.coords().iter())
        .find(|c| c.abs() > EPS_ZERO)
        .is_some_and(|c| *c < 0.0)
}

/// A point of `P_n̄` held as its canonical lift.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProduct")]
pub struct ProjProdPoint {
    factors: Vec<SpherePoint>,
}

#[derive(Deserialize)]
struct RawProduct {
    factors: Vec<Vec<f64>>,
}

impl TryFrom<RawProduct> for ProjProdPoint {
    type Error = Error;

    fn try_from(raw: RawProduct) -> Result<Self> {
        if raw.factors.is_empty() {
            return Err(Error::InvalidShape("no factors".into()));
        }
        let factors = raw
            .factors
            .into_iter()
            .map(|v| {
                let n = crate::sphere::norm(&v);
                if !n.is_finite() || (n - 1.0).abs() > JSON_UNIT_TOL {
                    return Err(Error::NotUnit(n));
                }
                SpherePoint::normalized(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjProdPoint::from_lift(factors))
    }
}

impl ProjProdPoint {
    /// Canonicalizes an arbitrary lift without checking it against a shape.
    pub fn from_lift(factors: Vec<SpherePoint>) -> Self {
        if leading_negative(&factors) {
            Self {
                factors: factors.into_iter().map(|f| -f).collect(),
            }
        } else {
            Self { factors }
        }
    }

    pub fn factors(&self) -> &[SpherePoint] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<SpherePoint> {
        self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(SpherePoint::dim).collect()
    }

    /// The other lift `-x̄` of the same class.
    pub fn opposite_lift(&self) -> Vec<SpherePoint> {
        self.factors.iter().map(|f| -f).collect()
    }
}

/// Chooses the canonical representative of `[x̄]`.
pub fn canonicalize(shape: &Shape, factors: Vec<SpherePoint>) -> Result<ProjProdPoint> {
    shape.check(&factors)?;
    Ok(ProjProdPoint::from_lift(factors))
}

/// A point of `P^n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProjPoint(SpherePoint);

impl ProjPoint {
    pub fn new(x: SpherePoint) -> Self {
        if leading_negative(std::slice::from_ref(&x)) {
            Self(-x)
        } else {
            Self(x)
        }
    }

    pub fn rep(&self) -> &SpherePoint {
        &self.0
    }

    pub fn dist(&self, other: &ProjPoint) -> f64 {
        self.0.projective_chord(&other.0)
    }
}

impl From<ProjPoint> for ProjProdPoint {
    fn from(p: ProjPoint) -> Self {
        ProjProdPoint { factors: vec![p.0] }
    }
}

fn check_same_dims(p: &[SpherePoint], q: &[SpherePoint]) -> Result<()> {
    let (a, b): (Vec<usize>, Vec<usize>) = (
        p.iter().map(SpherePoint::dim).collect(),
        q.iter().map(SpherePoint::dim).collect(),
    );
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: join(&a),
            found: join(&b),
        });
    }
    Ok(())
}

/// `min over δ = ±1` of `max_i |p_i - δ·q_i|`, evaluated on arbitrary lifts.
pub fn lift_dist(p: &[SpherePoint], q: &[SpherePoint]) -> Result<f64> {
    check_same_dims(p, q)?;
    let same = p.iter().zip(q).map(|(a, b)| a.chord(b)).fold(0.0, f64::max);
    let flipped = p
        .iter()
        .zip(q)
        .map(|(a, b)| a.antichord(b))
        .fold(0.0, f64::max);
    Ok(same.min(flipped))
}

/// Distance in `P_n̄`: chordal per factor, max over factors, min over the
/// two lifts of `q`.
pub fn quotient_dist(p: &ProjProdPoint, q: &ProjProdPoint) -> Result<f64> {
    lift_dist(&p.factors, &q.factors)
}

/// A pair of lifts `(x̄, ȳ)` representing a point of `P_n̄ × P_n̄`.
pub type LiftPair<'a> = (&'a [SpherePoint], &'a [SpherePoint]);

fn all_close(a: &[SpherePoint], b: &[SpherePoint], sign: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| {
        x.coords()
            .iter()
            .zip(y.coords())
            .all(|(u, v)| (u - sign * v).abs() <= EPS_ZERO)
    })
}

/// Whether two lift pairs represent the same point of `P_n̄ × P_n̄`: one of
/// the four diagonal sign patterns `(±x̄', ±ȳ')` matches.
pub fn pair_equivalent(shape: &Shape, a: LiftPair<'_>, b: LiftPair<'_>) -> Result<bool> {
    for side in [a.0, a.1, b.0, b.1] {
        shape.check(side)?;
    }
    let xs = [1.0, -1.0].into_iter().any(|s| all_close(a.0, b.0, s));
    let ys = [1.0, -1.0].into_iter().any(|s| all_close(a.1, b.1, s));
    Ok(xs && ys)
}

/// A point of `P_n̄ × P_n̄` with both sides canonicalized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductPairClass {
    pub left: ProjProdPoint,
    pub right: ProjProdPoint,
}

impl ProductPairClass {
    pub fn new(shape: &Shape, pair: LiftPair<'_>) -> Result<Self> {
        Ok(Self {
            left: canonicalize(shape, pair.0.to_vec())?,
            right: canonicalize(shape, pair.1.to_vec())?,
        })
    }
}

/// A path in `P_n̄` assembled from one sphere path per factor and
/// projected to the quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductPath {
    factors: Vec<SpherePath>,
}

impl ProductPath {
    pub fn new(factors: Vec<SpherePath>) -> Self {
        assert!(
            !factors.is_empty(),
            "product path needs at least one factor"
        );
        Self { factors }
    }

    pub fn factors(&self) -> &[SpherePath] {
        &self.factors
    }

    /// The un-projected lift at parameter `t`.
    pub fn eval_lift(&self, t: f64) -> Vec<SpherePoint> {
        self.factors.iter().map(|f| f.eval(t)).collect()
    }

    /// Largest quotient distance between the two paths on a uniform grid.
    pub fn sup_dist(&self, other: &ProductPath, n_intervals: usize) -> Result<f64> {
        self.sample(n_intervals)
            .iter()
            .zip(other.sample(n_intervals).iter())
            .try_fold(0.0f64, |m, (p, q)| Ok(m.max(quotient_dist(p, q)?)))
    }
}

impl PathEvaluator for ProductPath {
    type Point = ProjProdPoint;

    fn eval(&self, t: f64) -> ProjProdPoint {
        ProjProdPoint::from_lift(self.eval_lift(t))
    }

    fn target(&self) -> Target {
        match self.factors.as_slice() {
            [one] => Target::Projective(one.dim()),
            many => Target::Product(many.iter().map(SpherePath::dim).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> SpherePoint {
        SpherePoint::new(c.to_vec()).unwrap()
    }

    fn shape(d: &[usize]) -> Shape {
        Shape::new(d.to_vec()).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![0, 1]).is_err());
        assert!(Shape::new(vec![3, 1]).is_err());
        let s: Shape = "1, 3,3".parse().unwrap();
        assert_eq!(s.dims(), &[1, 3, 3]);
        assert_eq!(s.to_string(), "1,3,3");
        assert!("1,x".parse::<Shape>().is_err());
        assert_eq!(shape(&[2, 2, 4, 5]).even_count(), 2);
    }

    #[test]
    fn canonicalize_examples() {
        let s = shape(&[1, 1]);
        let p = canonicalize(&s, vec![pt(&[-1.0, 0.0]), pt(&[0.0, 1.0])]).unwrap();
        assert_eq!(p.factors(), &[pt(&[1.0, 0.0]), pt(&[0.0, -1.0])]);

        let q = canonicalize(&s, vec![pt(&[1.0, 0.0]), pt(&[0.0, 1.0])]).unwrap();
        assert_eq!(q.factors(), &[pt(&[1.0, 0.0]), pt(&[0.0, 1.0])]);

        let s = shape(&[2, 3]);
        let x2 = SpherePoint::normalized(vec![0.5, -0.5, 0.5, 0.5]).unwrap();
        let p = canonicalize(&s, vec![pt(&[0.0, 0.0, -1.0]), x2.clone()]).unwrap();
        assert_eq!(p.factors(), &[pt(&[0.0, 0.0, 1.0]), -&x2]);

        assert!(matches!(
            canonicalize(&s, vec![pt(&[1.0, 0.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sign_rule_skips_tiny_coordinates() {
        let x = SpherePoint::normalized(vec![-1e-13, -1.0]).unwrap();
        let p = ProjProdPoint::from_lift(vec![x.clone()]);
        assert_eq!(p.factors()[0], -&x);
    }

    #[test]
    fn quotient_dist_examples() {
        let s = shape(&[1]);
        let p = canonicalize(&s, vec![pt(&[1.0, 0.0])]).unwrap();
        let q = canonicalize(&s, vec![pt(&[0.0, 1.0])]).unwrap();
        assert_eq!(quotient_dist(&p, &p).unwrap(), 0.0);
        assert_eq!(quotient_dist(&p, &q).unwrap(), 2f64.sqrt());

        let s = shape(&[1, 2]);
        let lift = vec![pt(&[0.6, -0.8]), pt(&[0.0, 1.0, 0.0])];
        let a = canonicalize(&s, lift.clone()).unwrap();
        let b = canonicalize(&s, lift.iter().map(|f| -f).collect()).unwrap();
        assert_eq!(quotient_dist(&a, &b).unwrap(), 0.0);
        let c = canonicalize(&shape(&[1, 1]), vec![pt(&[1.0, 0.0]); 2]).unwrap();
        assert!(quotient_dist(&a, &c).is_err());
    }

    #[test]
    fn pair_equivalence_examples() {
        let s = shape(&[1, 1]);
        let x = vec![pt(&[0.6, 0.8]), pt(&[1.0, 0.0])];
        let y = vec![pt(&[0.0, 1.0]), pt(&[0.8, -0.6])];
        let nx: Vec<_> = x.iter().map(|f| -f).collect();
        let ny: Vec<_> = y.iter().map(|f| -f).collect();
        assert!(pair_equivalent(&s, (&x, &y), (&x, &y)).unwrap());
        assert!(pair_equivalent(&s, (&x, &y), (&nx, &y)).unwrap());
        assert!(pair_equivalent(&s, (&x, &y), (&x, &ny)).unwrap());
        assert!(pair_equivalent(&s, (&x, &y), (&nx, &ny)).unwrap());
        let partial = vec![-&x[0], x[1].clone()];
        assert!(!pair_equivalent(&s, (&x, &y), (&partial, &y)).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let p: ProjProdPoint =
            serde_json::from_str(r#"{"factors": [[-1.0, 0.0], [0.0, 0.0, 1.0]]}"#).unwrap();
        assert_eq!(p.factors()[0].coords(), &[1.0, 0.0]);
        assert_eq!(p.factors()[1].coords(), &[-0.0, -0.0, -1.0]);
        let text = serde_json::to_string(&p).unwrap();
        let back: ProjProdPoint = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ProjProdPoint>(r#"{"factors": [[2.0, 0.0]]}"#).is_err());
    }

    #[test]
    fn proj_point_canonical() {
        let p = ProjPoint::new(pt(&[0.0, -1.0]));
        assert_eq!(p.rep().coords(), &[-0.0, 1.0]);
        assert_eq!(p.dist(&ProjPoint::new(pt(&[0.0, 1.0]))), 0.0);
    }
}
