//! Non-singular bilinear maps `f = (f0, ..., fk): R^(n+1) × R^(n+1) -> R^(k+1)`.
//!
//! Both constructions here put the inner product `⟨x, y⟩` in component 0,
//! so `f0(x, x) = 1` on the unit sphere and `f0(x, -x) = -1` by bilinearity.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{random_unit, sample_rng, Stream};
use crate::sphere::dot;

pub const BILINEARITY_TOL: f64 = 1e-10;
pub const NONVANISHING_MARGIN: f64 = 1e-8;
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A family of `k + 1` bilinear forms on `R^(n+1)`.
pub trait BilinearFamily {
    /// Sphere dimension `n` of the inputs.
    fn input_dim(&self) -> usize;

    /// Highest component index; the family has `k + 1` components.
    fn k(&self) -> usize;

    fn eval(&self, x: &[f64], y: &[f64]) -> Vec<f64>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    DivisionAlgebra,
    PolynomialReversal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonSingularMap {
    n: usize,
    kind: MapKind,
}

impl NonSingularMap {
    /// `f(x, y) = x · conj(y)` in the complex numbers, quaternions or
    /// octonions (`n = 1, 3, 7`), with `k = n`.
    pub fn division_algebra(n: usize) -> Result<Self> {
        match n {
            1 | 3 | 7 => Ok(Self {
                n,
                kind: MapKind::DivisionAlgebra,
            }),
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }

    /// Coefficients of `p(t)·q*(t)` where `p` has coefficients `x`, `q` has
    /// coefficients `y` and `q*` is `q` reversed; `k = 2n`.
    pub fn polynomial_reversal(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            n,
            kind: MapKind::PolynomialReversal,
        })
    }

    /// The division-algebra map when one exists, otherwise polynomial reversal.
    pub fn auto(n: usize) -> Result<Self> {
        Self::division_algebra(n).or_else(|_| Self::polynomial_reversal(n))
    }

    pub fn with_kind(n: usize, kind: MapKind) -> Result<Self> {
        match kind {
            MapKind::DivisionAlgebra => Self::division_algebra(n),
            MapKind::PolynomialReversal => Self::polynomial_reversal(n),
        }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }
}

impl BilinearFamily for NonSingularMap {
    fn input_dim(&self) -> usize {
        self.n
    }

    fn k(&self) -> usize {
        match self.kind {
            MapKind::DivisionAlgebra => self.n,
            MapKind::PolynomialReversal => 2 * self.n,
        }
    }

    fn eval(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n + 1, "left argument has wrong length");
        assert_eq!(y.len(), self.n + 1, "right argument has wrong length");
        match self.kind {
            MapKind::DivisionAlgebra => cd_mul(x, &cd_conj(y)),
            MapKind::PolynomialReversal => reversal_product(x, y),
        }
    }
}

fn reversal_product(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len() - 1;
    // h[c] = sum over i - j = c - n of x_i y_j
    let mut h = vec![0.0; 2 * n + 1];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            h[i + n - j] += xi * yj;
        }
    }
    let mut out = Vec::with_capacity(h.len());
    out.push(h[n]);
    out.extend(h[..n].iter().chain(&h[n + 1..]));
    out
}

/// Cayley-Dickson product `(a, b)(c, d) = (ac - d̄b, da + bc̄)` on vectors
/// of length `2^p`.
pub fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), y.len());
    assert!(x.len().is_power_of_two());
    if x.len() == 1 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out: Vec<f64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

pub fn cd_conj(x: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = x.iter().map(|c| -c).collect();
    out[0] = x[0];
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapReport {
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    pub max_bilinearity_residual: f64,
    pub min_nonvanishing_margin: f64,
    pub max_normalization_residual: f64,
    pub max_antipodal_residual: f64,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Seeded check of the non-singular map axioms on random unit pairs:
/// bilinearity, simultaneous non-vanishing, and `f0(x, ±x) = ±1`.
pub fn verify_map<M: BilinearFamily + ?Sized>(map: &M, samples: usize, seed: u64) -> MapReport {
    let n = map.input_dim();
    let mut bilinear = 0.0f64;
    let mut margin = f64::INFINITY;
    let mut normalization = 0.0f64;
    let mut antipodal = 0.0f64;

    for index in 0..samples.max(1) {
        let mut rng = sample_rng(seed, Stream::Maps, index as u64);
        let x = random_unit(&mut rng, n + 1);
        let y = random_unit(&mut rng, n + 1);
        let x2 = random_unit(&mut rng, n + 1);
        let a: f64 = rng.random_range(-2.0..=2.0);
        let b: f64 = rng.random_range(-2.0..=2.0);

        let f = map.eval(&x, &y);
        let scaled = map.eval(&scale(&x, a), &scale(&y, b));
        let sum = map.eval(&add(&x, &x2), &y);
        let f2 = map.eval(&x2, &y);
        for l in 0..f.len() {
            bilinear = bilinear
                .max((scaled[l] - a * b * f[l]).abs())
                .max((sum[l] - f[l] - f2[l]).abs());
        }
        margin = margin.min(f.iter().fold(0.0f64, |m, v| m.max(v.abs())));

        let fxx = map.eval(&x, &x)[0];
        let fxnx = map.eval(&x, &scale(&x, -1.0))[0];
        normalization = normalization.max((fxx - 1.0).abs());
        antipodal = antipodal.max((fxnx + fxx).abs());
    }

    let mut failures = Vec::new();
    if !(bilinear <= BILINEARITY_TOL) {
        failures.push(format!(
            "bilinearity residual {bilinear:e} > {BILINEARITY_TOL:e}"
        ));
    }
    if !(margin >= NONVANISHING_MARGIN) {
        failures.push(format!(
            "non-vanishing margin {margin:e} < {NONVANISHING_MARGIN:e}"
        ));
    }
    if !(normalization <= NORMALIZATION_TOL) {
        failures.push(format!(
            "normalization residual {normalization:e} > {NORMALIZATION_TOL:e}"
        ));
    }
    if !(antipodal <= NORMALIZATION_TOL) {
        failures.push(format!("f0(x,-x) + f0(x,x) residual {antipodal:e}"));
    }
    MapReport {
        n,
        k: map.k(),
        samples: samples.max(1),
        max_bilinearity_residual: bilinear,
        min_nonvanishing_margin: margin,
        max_normalization_residual: normalization,
        max_antipodal_residual: antipodal,
        pass: failures.is_empty(),
        failures,
    }
}

fn scale(x: &[f64], a: f64) -> Vec<f64> {
    x.iter().map(|c| a * c).collect()
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// `|f(x, y)|`; equals `|x||y|` for division-algebra maps.
pub fn norm_of_value<M: BilinearFamily + ?Sized>(map: &M, x: &[f64], y: &[f64]) -> f64 {
    let f = map.eval(x, y);
    dot(&f, &f).sqrt()
}
