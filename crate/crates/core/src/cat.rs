//! Categorical cover of `P_n̄` with `n1 + r` pieces.
//!
//! A point is labelled by the set `L` of nonzero coordinates of `x1` and by
//! `j_q = 1` when `x_q = ±A`. Each piece contracts to
//! `[a_{min L}, A, ..., A]` along geodesics, with the fixed meridian used
//! when a later factor sits at the pole opposite its target.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::quotient::{canonicalize, lift_dist, quotient_dist, ProductPath, ProjProdPoint, Shape};
use crate::sampling::{sample_rng, CatRecipe, Stream};
use crate::sphere::{geodesic, meridian_fixed, PathEvaluator, SpherePoint, DEFAULT_PATH_SAMPLES};
use crate::tc::{
    note, sample_diff, ProbeStats, Tolerances, ENDPOINT_TOL, EQUIVARIANCE_TOL,
    PROBE_ATTEMPTS_PER_PAIR, PROBE_LIPSCHITZ, PROBE_MARGIN, PROBE_MAX_DELTA, PROBE_SCALE,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CatStratumLabel {
    pub l: Vec<usize>,
    pub i: usize,
    pub j: Vec<u8>,
    pub s: usize,
}

#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatFault {
    /// Send later factors to `A` even on the negative branch.
    IgnoreSignInFactors,
}

#[derive(Clone, Debug)]
pub struct CatCover {
    shape: Shape,
    tol: Tolerances,
    fault: Option<CatFault>,
}

impl CatCover {
    pub fn new(shape: Shape) -> Self {
        Self {
            shape,
            tol: Tolerances::default(),
            fault: None,
        }
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        self.tol = tol;
        Ok(self)
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: CatFault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// `cat(P_n̄) = n1 + r - 1`, the largest label.
    pub fn bound(&self) -> usize {
        self.shape.n1() + self.shape.r() - 1
    }

    fn at_pole(&self, x: &SpherePoint) -> bool {
        x.projective_chord(&SpherePoint::north(x.dim())) <= self.tol.eps_strat
    }

    /// Label of `[x̄]`; identical for both lifts.
    pub fn cat_stratum(&self, x: &[SpherePoint]) -> Result<CatStratumLabel> {
        self.shape.check(x)?;
        let l: Vec<usize> = x[0]
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > self.tol.eps_zero)
            .map(|(idx, _)| idx)
            .collect();
        let i = x[0].coords().len() - l.len();
        let j: Vec<u8> = x[1..].iter().map(|xq| self.at_pole(xq) as u8).collect();
        let s = i + j.iter().map(|&v| v as usize).sum::<usize>();
        Ok(CatStratumLabel { l, i, j, s })
    }

    /// The class `[a_{l0}, A, ..., A]` that the piece with this label
    /// contracts to.
    pub fn target(&self, label: &CatStratumLabel) -> ProjProdPoint {
        let dims = self.shape.dims();
        let mut factors = vec![SpherePoint::basis(dims[0], label.l[0])];
        factors.extend(dims[1..].iter().map(|&d| SpherePoint::north(d)));
        ProjProdPoint::from_lift(factors)
    }

    /// The contraction path from `[x̄]` to the target of its piece.
    pub fn cat_contraction(&self, x: &[SpherePoint]) -> Result<(CatStratumLabel, ProductPath)> {
        let label = self.cat_stratum(x)?;
        let l0 = label.l[0];
        let positive = x[0].coord(l0) > 0.0;
        let a = SpherePoint::basis(x[0].dim(), l0);
        let mut factors = vec![geodesic(&x[0], &if positive { a } else { -a })?];
        let rest_positive = positive || self.fault == Some(CatFault::IgnoreSignInFactors);
        for xq in &x[1..] {
            let pole = SpherePoint::north(xq.dim());
            let target = if rest_positive { pole } else { -pole };
            let path = if xq.antichord(&target) <= self.tol.eps_strat {
                // x_q sits at -target: μ0(-A, A) or μ0(A, -A).
                meridian_fixed(xq.dim(), !rest_positive)
            } else {
                geodesic(xq, &target)?
            };
            factors.push(path);
        }
        Ok((label, ProductPath::new(factors)))
    }

    pub fn margin(&self, x: &[SpherePoint], label: &CatStratumLabel) -> f64 {
        let mut m = label
            .l
            .iter()
            .map(|&l| x[0].coord(l).abs())
            .fold(f64::INFINITY, f64::min);
        for (xq, &jq) in x[1..].iter().zip(&label.j) {
            if jq == 0 {
                m = m.min(xq.projective_chord(&SpherePoint::north(xq.dim())));
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatReport {
    pub nbar: Shape,
    pub bound: usize,
    pub samples: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub max_label: usize,
    pub pieces_seen: usize,
    pub max_start_residual: f64,
    pub max_target_residual: f64,
    pub max_equivariance_residual: f64,
    pub probes: ProbeStats,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Seeded check of the cover: labels within `[0, n1 + r - 1]`, contraction
/// endpoints (start at the input, end at one class per piece), lift
/// invariance, and within-piece continuity probes.
pub fn verify_cat_tower(cover: &CatCover, samples: usize, probes: usize, seed: u64) -> CatReport {
    let n = DEFAULT_PATH_SAMPLES;
    let shape = cover.shape();
    let bound = cover.bound();
    let mut histogram = BTreeMap::new();
    let mut ends: BTreeMap<CatStratumLabel, ProjProdPoint> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut count = 0usize;
    let (mut start_res, mut target_res, mut equivariance) = (0.0f64, 0.0f64, 0.0f64);

    for index in 0..samples {
        let mut rng = sample_rng(seed, Stream::Cat, index as u64);
        let x = CatRecipe::random(shape, &mut rng).build();
        let (label, path) = match cover.cat_contraction(&x) {
            Ok(v) => v,
            Err(e) => {
                note(&mut failures, &mut count, || format!("sample {index}: {e}"));
                continue;
            }
        };
        *histogram.entry(label.s).or_insert(0) += 1;
        if label.s > bound {
            note(&mut failures, &mut count, || {
                format!("sample {index}: label {} above bound {bound}", label.s)
            });
        }

        let from = canonicalize(shape, x.clone()).expect("shape checked");
        let d0 = quotient_dist(&path.eval(0.0), &from).unwrap_or(f64::INFINITY);
        start_res = start_res.max(d0);
        if !(d0 <= ENDPOINT_TOL) {
            note(&mut failures, &mut count, || {
                format!("sample {index}: start residual {d0:e}")
            });
        }

        let end = path.eval(1.0);
        let expected = ends.entry(label.clone()).or_insert_with(|| end.clone());
        let d1 = quotient_dist(&end, expected)
            .unwrap_or(f64::INFINITY)
            .max(quotient_dist(&end, &cover.target(&label)).unwrap_or(f64::INFINITY));
        target_res = target_res.max(d1);
        if !(d1 <= ENDPOINT_TOL) {
            note(&mut failures, &mut count, || {
                format!(
                    "sample {index}: piece {:?} ends {d1:e} away from its target",
                    label.l
                )
            });
        }

        let nx: Vec<SpherePoint> = x.iter().map(|f| -f).collect();
        let d = match cover.cat_contraction(&nx) {
            Ok((other_label, other)) if other_label == label => sample_diff(&path, &other, n),
            _ => f64::INFINITY,
        };
        equivariance = equivariance.max(d);
        if !(d <= EQUIVARIANCE_TOL) {
            note(&mut failures, &mut count, || {
                format!("sample {index}: lift invariance residual {d:e}")
            });
        }
    }

    let probes = probe_cat(cover, probes, seed, &mut failures, &mut count);
    CatReport {
        nbar: shape.clone(),
        bound,
        samples,
        max_label: histogram.keys().copied().max().unwrap_or(0),
        histogram,
        pieces_seen: ends.len(),
        max_start_residual: start_res,
        max_target_residual: target_res,
        max_equivariance_residual: equivariance,
        probes,
        pass: count == 0,
        failures,
    }
}

fn probe_cat(
    cover: &CatCover,
    requested: usize,
    seed: u64,
    failures: &mut Vec<String>,
    count: &mut usize,
) -> ProbeStats {
    let mut stats = ProbeStats {
        requested,
        ..Default::default()
    };
    let max_attempts = requested * PROBE_ATTEMPTS_PER_PAIR;
    while stats.collected < requested && stats.attempts < max_attempts {
        let mut rng = sample_rng(seed, Stream::CatProbe, stats.attempts as u64);
        stats.attempts += 1;
        let recipe = CatRecipe::random(cover.shape(), &mut rng);
        let x = recipe.build();
        let Ok((label, path)) = cover.cat_contraction(&x) else {
            continue;
        };
        if cover.margin(&x, &label) < PROBE_MARGIN {
            continue;
        }
        let x2 = recipe.perturbed(&mut rng, PROBE_SCALE).build();
        let Ok((label2, path2)) = cover.cat_contraction(&x2) else {
            continue;
        };
        if label2 != label || cover.margin(&x2, &label2) < PROBE_MARGIN {
            continue;
        }
        let delta = lift_dist(&x, &x2).unwrap_or(f64::INFINITY);
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
            note(failures, count, || {
                format!(
                    "probe {}: sup distance {sup:e} exceeds {PROBE_LIPSCHITZ}·{delta:e}",
                    stats.attempts - 1
                )
            });
        }
    }
    if stats.collected < requested {
        note(failures, count, || {
            format!(
                "only {} of {requested} continuity probes collected",
                stats.collected
            )
        });
    }
    stats
}
