//! Motion planner for `P_n̄`.
//!
//! The pair space `P_n̄ × P_n̄` is cut into strata labelled by
//! `(L, j2, ..., jr)`: `L` is the set of components of the non-singular map
//! that are nonzero at `(x1, y1)`, and `j_q` records whether `y_q = ±x_q`
//! (and, on even spheres, whether `x_q` is a pole). The stratum index is
//! `s = (k + 1 - |L|) + Σ j_q`, bounded by `k + Σ TC(S^n_q)`.
//!
//! On each stratum the first factor moves along `λ(±x1, y1)`, the sign
//! chosen by `f_{min L}(x1, y1)`, and every other factor runs the sphere
//! planner started from the same signed lift. The result does not depend
//! on the lifts chosen for the query.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nonsingular::BilinearFamily;
use crate::quotient::{canonicalize, lift_dist, quotient_dist, ProductPath, Shape, EPS_ZERO};
use crate::sampling::{sample_rng, Stream, TcRecipe};
use crate::sphere::{
    geodesic, meridian_chi, meridian_fixed, PathEvaluator, SpherePath, SpherePoint,
    DEFAULT_PATH_SAMPLES,
};

/// Chordal tolerance for deciding `y = ±x` and `x = ±A`.
pub const EPS_STRAT: f64 = 1e-9;

pub const ENDPOINT_TOL: f64 = 1e-9;
pub const EQUIVARIANCE_TOL: f64 = 1e-12;

/// Probe parameters shared with the category cover harness.
pub const PROBE_MARGIN: f64 = 0.1;
pub const PROBE_MAX_DELTA: f64 = 1e-3;
pub const PROBE_LIPSCHITZ: f64 = 50.0;
pub(crate) const PROBE_SCALE: f64 = 3e-4;
pub(crate) const PROBE_ATTEMPTS_PER_PAIR: usize = 50;

/// `TC(S^n)`: 1 for odd spheres, 2 for even ones.
pub fn tc_sphere(n: usize) -> usize {
    if n % 2 == 1 {
        1
    } else {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// A map component with magnitude at or below this counts as zero.
    pub eps_zero: f64,
    /// Chordal tolerance for `y = ±x` and `x = ±A`.
    pub eps_strat: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_zero: EPS_ZERO,
            eps_strat: EPS_STRAT,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps_zero > 0.0 && self.eps_zero.is_finite()) {
            return Err(Error::InvalidConfig("epsilon-zero must be positive".into()));
        }
        // Pairs closer to antipodal than the geodesic cutoff must be routed
        // to a meridian.
        if !(self.eps_strat >= crate::sphere::EPS_ANTIPODAL && self.eps_strat < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "epsilon-strat must lie in [{:e}, 0.5)",
                crate::sphere::EPS_ANTIPODAL
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, x: &SpherePoint) -> SpherePoint {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => -x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumLabel {
    pub l: Vec<usize>,
    pub i: usize,
    pub j: Vec<u8>,
    pub s: usize,
}

fn near_pole(x: &SpherePoint, eps: f64) -> bool {
    x.projective_chord(&SpherePoint::north(x.dim())) <= eps
}

/// Sphere-planner stratum of `(x, y)` on `S^n`: 0 when `y ≠ ±x`, 1 when
/// `y = ±x` (away from the poles on even spheres), 2 when `y = ±x` and
/// `x = ±A` on an even sphere.
pub fn sphere_stratum(x: &SpherePoint, y: &SpherePoint, eps_strat: f64) -> u8 {
    if x.projective_chord(y) > eps_strat {
        0
    } else if x.dim().is_multiple_of(2) && near_pole(x, eps_strat) {
        2
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjStratum {
    pub i: usize,
    pub l: Vec<usize>,
    pub values: Vec<f64>,
}

/// `L = { l : |f_l(x1, y1)| > eps_zero }` and `i = (k + 1) - |L|`.
pub fn proj_stratum<M: BilinearFamily + ?Sized>(
    map: &M,
    x1: &SpherePoint,
    y1: &SpherePoint,
    eps_zero: f64,
) -> Result<ProjStratum> {
    let values = map.eval(x1.coords(), y1.coords());
    let l: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() > eps_zero)
        .map(|(idx, _)| idx)
        .collect();
    if l.is_empty() {
        return Err(Error::EmptyL);
    }
    Ok(ProjStratum {
        i: values.len() - l.len(),
        l,
        values,
    })
}

/// The sphere-planner path `z_q` (sign `Plus`) or `z'_q` (sign `Minus`):
/// from `sign·x` to `y`, along a geodesic unless `y = -sign·x`, in which case
/// the `chi` meridian, or the fixed meridian at an even-dimensional pole.
pub fn signed_sphere_section(
    sign: Sign,
    x: &SpherePoint,
    y: &SpherePoint,
    j: u8,
    eps_strat: f64,
) -> Result<SpherePath> {
    let computed = sphere_stratum(x, y, eps_strat);
    if computed != j {
        return Err(Error::StratumMismatch { given: j, computed });
    }
    let start = sign.apply(x);
    if start.antichord(y) <= eps_strat {
        if j == 2 {
            let from_north = start.chord(&SpherePoint::north(start.dim()))
                <= start.antichord(&SpherePoint::north(start.dim()));
            Ok(meridian_fixed(start.dim(), from_north))
        } else {
            meridian_chi(&start)
        }
    } else {
        geodesic(&start, y)
    }
}

/// Deliberate defects for exercising the verification harness.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcFault {
    /// Use `z_q` instead of `z'_q` on the negative branch.
    SkipPrimedSignFlip,
}

#[derive(Clone, Debug)]
pub struct TcPlanner<M> {
    shape: Shape,
    map: M,
    tol: Tolerances,
    fault: Option<TcFault>,
}

impl<M: BilinearFamily> TcPlanner<M> {
    pub fn new(shape: Shape, map: M) -> Result<Self> {
        if map.input_dim() != shape.n1() {
            return Err(Error::DimensionMismatch {
                expected: format!("map on R^{}", shape.n1() + 1),
                found: format!("map on R^{}", map.input_dim() + 1),
            });
        }
        Ok(Self {
            shape,
            map,
            tol: Tolerances::default(),
            fault: None,
        })
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        self.tol = tol;
        Ok(self)
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: TcFault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn map(&self) -> &M {
        &self.map
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    /// Largest stratum index, `k + Σ_{q≥2} TC(S^n_q)`.
    pub fn bound(&self) -> usize {
        self.map.k() + self.shape.tail().map(|(_, n)| tc_sphere(n)).sum::<usize>()
    }

    pub fn label(&self, x: &[SpherePoint], y: &[SpherePoint]) -> Result<StratumLabel> {
        self.shape.check(x)?;
        self.shape.check(y)?;
        let p = proj_stratum(&self.map, &x[0], &y[0], self.tol.eps_zero)?;
        let j: Vec<u8> = x[1..]
            .iter()
            .zip(&y[1..])
            .map(|(a, b)| sphere_stratum(a, b, self.tol.eps_strat))
            .collect();
        let s = p.i + j.iter().map(|&v| v as usize).sum::<usize>();
        Ok(StratumLabel {
            l: p.l,
            i: p.i,
            j,
            s,
        })
    }

    /// The planner's path from `[x̄]` to `[ȳ]` and the stratum it came from.
    /// Any lifts of the two points may be passed.
    pub fn product_section(
        &self,
        x: &[SpherePoint],
        y: &[SpherePoint],
    ) -> Result<(StratumLabel, ProductPath)> {
        let label = self.label(x, y)?;
        let values = self.map.eval(x[0].coords(), y[0].coords());
        let sign = if values[label.l[0]] > 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let rest_sign = match self.fault {
            Some(TcFault::SkipPrimedSignFlip) => Sign::Plus,
            None => sign,
        };
        let mut factors = vec![geodesic(&sign.apply(&x[0]), &y[0])?];
        for ((xq, yq), &jq) in x[1..].iter().zip(&y[1..]).zip(&label.j) {
            factors.push(signed_sphere_section(
                rest_sign,
                xq,
                yq,
                jq,
                self.tol.eps_strat,
            )?);
        }
        Ok((label, ProductPath::new(factors)))
    }

    /// Distance from the query to the nearest stratum boundary, as seen by
    /// the quantities that decide the label.
    pub fn margin(&self, x: &[SpherePoint], y: &[SpherePoint], label: &StratumLabel) -> f64 {
        let values = self.map.eval(x[0].coords(), y[0].coords());
        let mut m = label
            .l
            .iter()
            .map(|&l| values[l].abs())
            .fold(f64::INFINITY, f64::min);
        for ((xq, yq), &jq) in x[1..].iter().zip(&y[1..]).zip(&label.j) {
            let d = match jq {
                0 => xq.projective_chord(yq),
                1 if xq.dim() % 2 == 0 => xq.projective_chord(&SpherePoint::north(xq.dim())),
                _ => f64::INFINITY,
            };
            m = m.min(d);
        }
        m
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ProbeStats {
    pub requested: usize,
    pub collected: usize,
    pub attempts: usize,
    pub max_ratio: f64,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerReport {
    pub nbar: Shape,
    pub k: usize,
    pub bound: usize,
    pub samples: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub max_label: usize,
    pub max_endpoint_residual: f64,
    pub max_equivariance_residual: f64,
    pub probes: ProbeStats,
    pub failures: Vec<String>,
    pub pass: bool,
}

pub(crate) const MAX_LISTED_FAILURES: usize = 10;

pub(crate) fn note(failures: &mut Vec<String>, total: &mut usize, msg: impl FnOnce() -> String) {
    *total += 1;
    if failures.len() < MAX_LISTED_FAILURES {
        failures.push(msg());
    }
}

pub(crate) fn sample_diff(a: &ProductPath, b: &ProductPath, n: usize) -> f64 {
    a.sample(n)
        .iter()
        .zip(b.sample(n).iter())
        .flat_map(|(p, q)| {
            p.factors().iter().zip(q.factors()).flat_map(|(u, v)| {
                u.coords()
                    .iter()
                    .zip(v.coords())
                    .map(|(s, t)| (s - t).abs())
            })
        })
        .fold(0.0, f64::max)
}

/// Seeded check of the planner: stratum bounds, section endpoints, lift
/// invariance, and within-stratum continuity probes.
pub fn verify_tower<M: BilinearFamily>(
    planner: &TcPlanner<M>,
    samples: usize,
    probes: usize,
    seed: u64,
) -> TowerReport {
    let n = DEFAULT_PATH_SAMPLES;
    let shape = planner.shape();
    let bound = planner.bound();
    let mut histogram = BTreeMap::new();
    let mut failures = Vec::new();
    let mut failure_count = 0usize;
    let mut endpoint = 0.0f64;
    let mut equivariance = 0.0f64;

    for index in 0..samples {
        let mut rng = sample_rng(seed, Stream::Tc, index as u64);
        let recipe = TcRecipe::random(shape, kind_hint(planner), &mut rng);
        let (x, y) = recipe.build();
        let (label, path) = match planner.product_section(&x, &y) {
            Ok(v) => v,
            Err(e) => {
                note(&mut failures, &mut failure_count, || {
                    format!("sample {index}: {e}")
                });
                continue;
            }
        };
        *histogram.entry(label.s).or_insert(0) += 1;
        if label.s > bound {
            note(&mut failures, &mut failure_count, || {
                format!("sample {index}: label {} above bound {bound}", label.s)
            });
        }

        let from = canonicalize(shape, x.clone()).expect("shape checked");
        let to = canonicalize(shape, y.clone()).expect("shape checked");
        let res = quotient_dist(&path.eval(0.0), &from)
            .unwrap_or(f64::INFINITY)
            .max(quotient_dist(&path.eval(1.0), &to).unwrap_or(f64::INFINITY));
        endpoint = endpoint.max(res);
        if !(res <= ENDPOINT_TOL) {
            note(&mut failures, &mut failure_count, || {
                format!("sample {index}: endpoint residual {res:e}")
            });
        }

        let nx: Vec<SpherePoint> = x.iter().map(|f| -f).collect();
        let ny: Vec<SpherePoint> = y.iter().map(|f| -f).collect();
        for (lx, ly) in [(&nx, &y), (&x, &ny), (&nx, &ny)] {
            match planner.product_section(lx, ly) {
                Ok((other_label, other)) => {
                    let d = if other_label == label {
                        sample_diff(&path, &other, n)
                    } else {
                        f64::INFINITY
                    };
                    equivariance = equivariance.max(d);
                    if !(d <= EQUIVARIANCE_TOL) {
                        note(&mut failures, &mut failure_count, || {
                            format!("sample {index}: lift equivariance residual {d:e}")
                        });
                    }
                }
                Err(e) => {
                    equivariance = f64::INFINITY;
                    note(&mut failures, &mut failure_count, || {
                        format!("sample {index}: other lift failed: {e}")
                    });
                }
            }
        }
    }

    let probes = probe_tc(planner, probes, seed, &mut failures, &mut failure_count);
    TowerReport {
        nbar: shape.clone(),
        k: planner.map().k(),
        bound,
        samples,
        max_label: histogram.keys().copied().max().unwrap_or(0),
        histogram,
        max_endpoint_residual: endpoint,
        max_equivariance_residual: equivariance,
        probes,
        pass: failure_count == 0,
        failures,
    }
}

fn kind_hint<M: BilinearFamily>(planner: &TcPlanner<M>) -> crate::nonsingular::MapKind {
    use crate::nonsingular::MapKind;
    // Division-algebra recipes need k = n and n + 1 a power of two.
    let n = planner.map().input_dim();
    if planner.map().k() == n && matches!(n, 1 | 3 | 7) {
        MapKind::DivisionAlgebra
    } else {
        MapKind::PolynomialReversal
    }
}

fn probe_tc<M: BilinearFamily>(
    planner: &TcPlanner<M>,
    requested: usize,
    seed: u64,
    failures: &mut Vec<String>,
    failure_count: &mut usize,
) -> ProbeStats {
    let mut stats = ProbeStats {
        requested,
        ..Default::default()
    };
    let shape = planner.shape();
    let max_attempts = requested * PROBE_ATTEMPTS_PER_PAIR;
    while stats.collected < requested && stats.attempts < max_attempts {
        let mut rng = sample_rng(seed, Stream::TcProbe, stats.attempts as u64);
        stats.attempts += 1;
        let recipe = TcRecipe::random(shape, kind_hint(planner), &mut rng);
        let (x, y) = recipe.build();
        let Ok((label, path)) = planner.product_section(&x, &y) else {
            continue;
        };
        if planner.margin(&x, &y, &label) < PROBE_MARGIN {
            continue;
        }
        let (x2, y2) = recipe.perturbed(&mut rng, PROBE_SCALE).build();
        let Ok((label2, path2)) = planner.product_section(&x2, &y2) else {
            continue;
        };
        if label2 != label || planner.margin(&x2, &y2, &label2) < PROBE_MARGIN {
            continue;
        }
        let delta = lift_dist(&x, &x2)
            .unwrap_or(f64::INFINITY)
            .max(lift_dist(&y, &y2).unwrap_or(f64::INFINITY));
        if !(delta > 0.0 && delta <= PROBE_MAX_DELTA) {
            continue;
        }
        stats.collected += 1;
        let sup = path
            .sup_dist(&path2, DEFAULT_PATH_SAMPLES)
            .unwrap_or(f64::INFINITY);
        stats.max_ratio = stats.max_ratio.max(sup / delta);
        if !(sup <= PROBE_LIPSCHITZ * delta) {
            stats.failures += 1;
            note(failures, failure_count, || {
                format!(
                    "probe {}: sup distance {sup:e} exceeds {PROBE_LIPSCHITZ}·{delta:e}",
                    stats.attempts - 1
                )
            });
        }
    }
    if stats.collected < requested {
        note(failures, failure_count, || {
            format!(
                "only {} of {requested} continuity probes collected",
                stats.collected
            )
        });
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonsingular::NonSingularMap;
    use crate::quotient::ProjProdPoint;

    fn pt(c: &[f64]) -> SpherePoint {
        SpherePoint::new(c.to_vec()).unwrap()
    }

    fn planner(dims: &[usize]) -> TcPlanner<NonSingularMap> {
        let shape = Shape::new(dims.to_vec()).unwrap();
        TcPlanner::new(shape, NonSingularMap::auto(dims[0]).unwrap()).unwrap()
    }

    #[test]
    fn sphere_stratum_examples() {
        let e = |d: usize, i: usize| SpherePoint::basis(d, i);
        assert_eq!(sphere_stratum(&e(3, 0), &e(3, 1), EPS_STRAT), 0);
        let x = pt(&[0.6, 0.8, 0.0]);
        assert_eq!(sphere_stratum(&x, &-&x, EPS_STRAT), 1);
        assert_eq!(sphere_stratum(&e(2, 2), &e(2, 2), EPS_STRAT), 2);
        assert_eq!(sphere_stratum(&e(3, 3), &-e(3, 3), EPS_STRAT), 1);
    }

    #[test]
    fn proj_stratum_examples() {
        let m = NonSingularMap::division_algebra(1).unwrap();
        let x = pt(&[1.0, 0.0]);
        let p = proj_stratum(&m, &x, &x, EPS_ZERO).unwrap();
        assert_eq!(
            (p.i, p.l.clone(), p.values.clone()),
            (1, vec![0], vec![1.0, 0.0])
        );

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = proj_stratum(&m, &x, &pt(&[h, h]), EPS_ZERO).unwrap();
        assert_eq!((p.i, p.l.clone()), (0, vec![0, 1]));
        assert_eq!(p.values, vec![h, -h]);

        let p = proj_stratum(&m, &x, &pt(&[0.0, 1.0]), EPS_ZERO).unwrap();
        assert_eq!(
            (p.i, p.l.clone(), p.values.clone()),
            (1, vec![1], vec![0.0, -1.0])
        );
    }

    struct Zero;
    impl BilinearFamily for Zero {
        fn input_dim(&self) -> usize {
            1
        }
        fn k(&self) -> usize {
            0
        }
        fn eval(&self, _: &[f64], _: &[f64]) -> Vec<f64> {
            vec![0.0]
        }
    }

    #[test]
    fn degenerate_map_reports_empty_l() {
        let x = pt(&[1.0, 0.0]);
        assert_eq!(proj_stratum(&Zero, &x, &x, EPS_ZERO), Err(Error::EmptyL));
    }

    #[test]
    fn signed_sections() {
        let x = SpherePoint::normalized(vec![0.2, 0.4, -0.1, 0.9]).unwrap();
        let path = signed_sphere_section(Sign::Plus, &x, &x, 1, EPS_STRAT).unwrap();
        assert!(path.sample(4).iter().all(|p| *p == x));

        let path = signed_sphere_section(Sign::Plus, &x, &-&x, 1, EPS_STRAT).unwrap();
        assert_eq!(path, meridian_chi(&x).unwrap());

        let a = SpherePoint::north(2);
        let path = signed_sphere_section(Sign::Minus, &a, &a, 2, EPS_STRAT).unwrap();
        assert_eq!(path, meridian_fixed(2, false));

        let path = signed_sphere_section(Sign::Plus, &a, &-&a, 2, EPS_STRAT).unwrap();
        assert_eq!(path, meridian_fixed(2, true));

        assert_eq!(
            signed_sphere_section(Sign::Plus, &x, &x, 0, EPS_STRAT),
            Err(Error::StratumMismatch {
                given: 0,
                computed: 1
            })
        );
    }

    #[test]
    fn section_for_equal_points_is_constant() {
        let p = planner(&[1, 3]);
        let x = vec![
            pt(&[0.6, 0.8]),
            SpherePoint::normalized(vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
        ];
        let (label, path) = p.product_section(&x, &x).unwrap();
        assert_eq!(label.l[0], 0);
        let at = ProjProdPoint::from_lift(x.clone());
        for q in path.sample(16) {
            assert_eq!(q, at);
        }
    }

    #[test]
    fn traced_example_takes_negative_branch() {
        // f(x1, y1) = (0, -1): l0 = 1, f1 < 0, so λ(-x1, y1) and z'_2 = μ(-x2, x2).
        let p = planner(&[1, 3]);
        let e0 = SpherePoint::basis(3, 0);
        let x = vec![pt(&[1.0, 0.0]), e0.clone()];
        let y = vec![pt(&[0.0, 1.0]), e0.clone()];
        let (label, path) = p.product_section(&x, &y).unwrap();
        assert_eq!(
            label,
            StratumLabel {
                l: vec![1],
                i: 1,
                j: vec![1],
                s: 2
            }
        );
        assert_eq!(
            path.factors()[0],
            geodesic(&pt(&[-1.0, 0.0]), &pt(&[0.0, 1.0])).unwrap()
        );
        assert_eq!(path.factors()[1], meridian_chi(&-&e0).unwrap());
        let from = ProjProdPoint::from_lift(x);
        let to = ProjProdPoint::from_lift(y);
        assert!(quotient_dist(&path.eval(0.0), &from).unwrap() <= 1e-12);
        assert!(quotient_dist(&path.eval(1.0), &to).unwrap() <= 1e-12);
    }

    #[test]
    fn antipodal_first_factor_uses_inner_product_component() {
        let p = planner(&[3, 4]);
        let x1 = SpherePoint::normalized(vec![0.3, -0.1, 0.5, 0.8]).unwrap();
        let x2 = SpherePoint::normalized(vec![1.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        for y1 in [x1.clone(), -&x1] {
            let label = p
                .label(&[x1.clone(), x2.clone()], &[y1, x2.clone()])
                .unwrap();
            assert_eq!(label.l[0], 0);
        }
    }

    #[test]
    fn rejects_mismatched_map_and_query() {
        let shape = Shape::new(vec![2, 3]).unwrap();
        assert!(TcPlanner::new(shape, NonSingularMap::auto(3).unwrap()).is_err());
        let p = planner(&[1, 3]);
        let bad = vec![pt(&[1.0, 0.0])];
        assert!(matches!(
            p.label(&bad, &bad),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bound_uses_sphere_complexities() {
        assert_eq!(planner(&[1, 3]).bound(), 2);
        assert_eq!(planner(&[2, 2]).bound(), 6);
        assert_eq!(planner(&[3, 4, 5]).bound(), 3 + 2 + 1);
    }

    #[test]
    fn small_tower_passes() {
        let report = verify_tower(&planner(&[1, 2]), 500, 50, 3);
        assert!(report.pass, "{:?}", report.failures);
        assert!(report.max_label <= report.bound);
    }

    #[test]
    fn fault_is_caught() {
        let p = planner(&[1, 3]).with_fault(TcFault::SkipPrimedSignFlip);
        let report = verify_tower(&p, 300, 0, 3);
        assert!(!report.pass);
        assert!(report.max_equivariance_residual > 1e-3);
    }

    #[test]
    fn tolerance_validation() {
        let p = planner(&[1, 1]);
        let bad = Tolerances {
            eps_zero: 1e-12,
            eps_strat: 1e-15,
        };
        assert!(p.clone().with_tolerances(bad).is_err());
        assert!(p.with_tolerances(Tolerances::default()).is_ok());
    }
}
