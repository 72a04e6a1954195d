//! Round unit spheres in their standard embedding.
//!
//! Every space in this crate is built from points of some `S^m ⊂ R^(m+1)`.
//! This module holds the point type, the path abstraction shared by all
//! planners, and the three kinds of sphere paths the planners are assembled
//! from: minimal geodesics, meridians steered by the tangent field `chi`, and
//! the fixed meridian through the poles `±A_m`.

use std::f64::consts::PI;
use std::ops::Neg;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `| |x| - 1 |` for a vector to count as a sphere point.
pub const EPS_UNIT: f64 = 1e-12;

/// Chordal distance `|A + B|` at or below which a geodesic is refused.
pub const EPS_ANTIPODAL: f64 = 1e-12;

/// Threshold below which the tangent field is treated as vanishing.
pub const EPS_FIELD: f64 = 1e-12;

/// Default number of grid intervals used when a path is serialized.
pub const DEFAULT_PATH_SAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Wraps `coords` as a point of `S^(len-1)`, rejecting vectors that are
    /// not unit length within [`EPS_UNIT`].
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::ZeroDimension);
        }
        let norm = norm(&coords);
        if !norm.is_finite() || (norm - 1.0).abs() > EPS_UNIT {
            return Err(Error::NotUnit(norm));
        }
        Ok(Self { coords })
    }

    /// Rescales a nonzero vector onto the sphere.
    pub fn normalized(mut coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::ZeroDimension);
        }
        let norm = norm(&coords);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotUnit(norm));
        }
        coords.iter_mut().for_each(|c| *c /= norm);
        Ok(Self { coords })
    }

    pub(crate) fn from_unit(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 2);
        Self { coords }
    }

    /// The point `a_j` with `p_j(a_j) = 1`.
    pub fn basis(dim: usize, j: usize) -> Self {
        assert!(
            dim >= 1 && j <= dim,
            "basis index {j} out of range for S^{dim}"
        );
        let mut coords = vec![0.0; dim + 1];
        coords[j] = 1.0;
        Self { coords }
    }

    /// The pole `A_m = (0, ..., 0, 1)`.
    pub fn north(dim: usize) -> Self {
        Self::basis(dim, dim)
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Coordinate projection `p_j`.
    pub fn coord(&self, j: usize) -> f64 {
        self.coords[j]
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        dot(&self.coords, &other.coords)
    }

    /// Euclidean distance `|x - y|`.
    pub fn chord(&self, other: &SpherePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean distance `|x + y|`, i.e. the chord from `x` to `-y`.
    pub fn antichord(&self, other: &SpherePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a + b) * (a + b))
            .sum::<f64>()
            .sqrt()
    }

    /// Chordal distance between `[x]` and `[y]` in projective space.
    pub fn projective_chord(&self, other: &SpherePoint) -> f64 {
        self.chord(other).min(self.antichord(other))
    }
}

impl Neg for &SpherePoint {
    type Output = SpherePoint;

    fn neg(self) -> SpherePoint {
        SpherePoint {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for SpherePoint {
    type Output = SpherePoint;

    fn neg(mut self) -> SpherePoint {
        self.coords.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// The space a path lives in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Sphere(usize),
    Projective(usize),
    Product(Vec<usize>),
}

/// A map `[0, 1] -> X` that can be evaluated at any parameter.
pub trait PathEvaluator {
    type Point;

    /// Evaluates the path; parameters outside `[0, 1]` are clamped.
    fn eval(&self, t: f64) -> Self::Point;

    fn target(&self) -> Target;

    /// Evaluates on the uniform grid `i / n_intervals`, `i = 0..=n_intervals`.
    fn sample(&self, n_intervals: usize) -> Vec<Self::Point> {
        let n = n_intervals.max(1);
        (0..=n).map(|i| self.eval(i as f64 / n as f64)).collect()
    }
}

/// A path on a single sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum SpherePath {
    /// `cos(tθ)·start + sin(tθ)·tangent`, pinned to `end` at `t = 1`.
    /// `angle == 0` is the constant path.
    Geodesic {
        start: SpherePoint,
        end: SpherePoint,
        tangent: Vec<f64>,
        angle: f64,
    },
    /// Half great circle `cos(πt)·start + sin(πt)·direction` from `start`
    /// to `-start`; `direction` is a unit vector orthogonal to `start`.
    Meridian {
        start: SpherePoint,
        direction: Vec<f64>,
    },
}

impl SpherePath {
    pub fn start(&self) -> SpherePoint {
        self.eval(0.0)
    }

    pub fn end(&self) -> SpherePoint {
        self.eval(1.0)
    }

    pub fn dim(&self) -> usize {
        match self {
            SpherePath::Geodesic { start, .. } | SpherePath::Meridian { start, .. } => start.dim(),
        }
    }

    /// Pointwise negation of the path.
    pub fn negated(&self) -> SpherePath {
        match self {
            SpherePath::Geodesic {
                start,
                end,
                tangent,
                angle,
            } => SpherePath::Geodesic {
                start: -start,
                end: -end,
                tangent: tangent.iter().map(|c| -c).collect(),
                angle: *angle,
            },
            SpherePath::Meridian { start, direction } => SpherePath::Meridian {
                start: -start,
                direction: direction.iter().map(|c| -c).collect(),
            },
        }
    }
}

impl PathEvaluator for SpherePath {
    type Point = SpherePoint;

    fn eval(&self, t: f64) -> SpherePoint {
        let t = t.clamp(0.0, 1.0);
        match self {
            SpherePath::Geodesic {
                start,
                end,
                tangent,
                angle,
            } => {
                if t == 0.0 || *angle == 0.0 {
                    start.clone()
                } else if t == 1.0 {
                    end.clone()
                } else {
                    let (s, c) = (t * angle).sin_cos();
                    combine(c, start.coords(), s, tangent)
                }
            }
            SpherePath::Meridian { start, direction } => {
                if t == 0.0 {
                    start.clone()
                } else if t == 1.0 {
                    -start
                } else {
                    let (s, c) = (PI * t).sin_cos();
                    combine(c, start.coords(), s, direction)
                }
            }
        }
    }

    fn target(&self) -> Target {
        Target::Sphere(self.dim())
    }
}

fn combine(a: f64, u: &[f64], b: f64, v: &[f64]) -> SpherePoint {
    SpherePoint::from_unit(u.iter().zip(v).map(|(x, y)| a * x + b * y).collect())
}

fn check_same_sphere(a: &SpherePoint, b: &SpherePoint) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: format!("S^{}", a.dim()),
            found: format!("S^{}", b.dim()),
        });
    }
    Ok(())
}

/// The constant-speed minimal geodesic `λ(A, B)`.
///
/// The angle is taken as `2·atan2(|A-B|, |A+B|)` and the tangent frame is
/// Gram-Schmidt'd twice, so outputs stay on the sphere to rounding error
/// even close to the antipodal limit. Both quantities are unchanged or
/// exactly negated under `(A, B) -> (-A, -B)`, which makes
/// `λ(-A, -B) = -λ(A, B)` hold bit for bit.
pub fn geodesic(a: &SpherePoint, b: &SpherePoint) -> Result<SpherePath> {
    check_same_sphere(a, b)?;
    let anti = a.antichord(b);
    if anti <= EPS_ANTIPODAL {
        return Err(Error::AntipodalInput(anti));
    }
    let angle = 2.0 * a.chord(b).atan2(anti);
    let tangent = if angle == 0.0 {
        vec![0.0; a.coords.len()]
    } else {
        let c = a.dot(b);
        let mut w: Vec<f64> = b
            .coords
            .iter()
            .zip(&a.coords)
            .map(|(y, x)| y - c * x)
            .collect();
        for _ in 0..2 {
            let d = dot(&w, &a.coords);
            w.iter_mut().zip(&a.coords).for_each(|(wi, x)| *wi -= d * x);
            let n = norm(&w);
            w.iter_mut().for_each(|wi| *wi /= n);
        }
        w
    };
    Ok(SpherePath::Geodesic {
        start: a.clone(),
        end: b.clone(),
        tangent,
        angle,
    })
}

/// The symmetric tangent field: `(u1, v1, ..., um, vm) -> (-v1, u1, ..., -vm, um)`,
/// with the trailing coordinate sent to zero on even-dimensional spheres.
pub fn chi(x: &SpherePoint) -> Vec<f64> {
    let c = x.coords();
    let mut out = vec![0.0; c.len()];
    for (pair, dst) in c.chunks_exact(2).zip(out.chunks_exact_mut(2)) {
        dst[0] = -pair[1];
        dst[1] = pair[0];
    }
    out
}

/// The meridian `μ(x, -x)` leaving `x` in the direction of `chi(x)`.
pub fn meridian_chi(x: &SpherePoint) -> Result<SpherePath> {
    let field = chi(x);
    let n = norm(&field);
    if n <= EPS_FIELD {
        return Err(Error::ZeroField);
    }
    Ok(SpherePath::Meridian {
        start: x.clone(),
        direction: field.into_iter().map(|c| c / n).collect(),
    })
}

/// The fixed meridian `μ0(A_m, -A_m)` through `e0`, or its negation
/// `μ0(-A_m, A_m)` when `from_north` is false.
pub fn meridian_fixed(dim: usize, from_north: bool) -> SpherePath {
    assert!(dim >= 1, "sphere dimension must be at least 1");
    let path = SpherePath::Meridian {
        start: SpherePoint::north(dim),
        direction: SpherePoint::basis(dim, 0).into_coords(),
    };
    if from_north {
        path
    } else {
        path.negated()
    }
}
