//! Seeded query generation for the verification harnesses.
//!
//! Every sample draws from its own ChaCha stream derived from
//! `(seed, stream, index)`, so results do not depend on evaluation order.
//! Queries are described by recipes: raw parameter vectors plus the
//! structure (alignment, orthogonality, zero pattern, pole) that places
//! them in a lower stratum. Perturbing a recipe moves the raw parameters
//! while keeping that structure, which is how the continuity probes stay
//! inside a single stratum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::nonsingular::{cd_conj, cd_mul, MapKind};
use crate::quotient::Shape;
use crate::sphere::{dot, norm, SpherePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    Maps = 1,
    Tc = 2,
    TcProbe = 3,
    Cat = 4,
    CatProbe = 5,
    Ring = 6,
}

pub fn sample_rng(seed: u64, stream: Stream, index: u64) -> ChaCha8Rng {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (stream as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

fn gaussian<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// A uniformly distributed unit vector in `R^len`.
pub fn random_unit<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let v = gaussian(rng, len);
        let n = norm(&v);
        if n > 1e-3 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R, dim: usize) -> SpherePoint {
    SpherePoint::normalized(random_unit(rng, dim + 1)).expect("unit vector")
}

/// Gaussian vector with each entry zeroed with probability 1/2, keeping
/// at least one entry.
fn sparse<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut v = gaussian(rng, len);
    let keep = rng.random_range(0..len);
    for (i, c) in v.iter_mut().enumerate() {
        if i != keep && rng.random_bool(0.5) {
            *c = 0.0;
        }
    }
    v
}

fn sign<R: Rng>(rng: &mut R) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// Adds `scale`-sized Gaussian noise to the nonzero entries of `v`.
fn jitter<R: Rng>(rng: &mut R, v: &[f64], scale: f64) -> Vec<f64> {
    v.iter()
        .map(|&c| {
            if c == 0.0 {
                0.0
            } else {
                c + scale * rng.sample::<f64, _>(StandardNormal)
            }
        })
        .collect()
}

fn unit(v: &[f64]) -> SpherePoint {
    SpherePoint::normalized(v.to_vec()).expect("nonzero raw vector")
}

/// How the pair `(x1, y1)` on the first sphere is generated.
#[derive(Clone, Debug, PartialEq)]
pub enum FirstRecipe {
    Generic {
        x: Vec<f64>,
        y: Vec<f64>,
    },
    /// `y1 = ±x1`.
    Aligned {
        x: Vec<f64>,
        sign: f64,
    },
    /// `y1 ⟂ x1`, so the inner-product component vanishes.
    Orthogonal {
        x: Vec<f64>,
        v: Vec<f64>,
    },
    /// Both vectors with random zero patterns.
    Sparse {
        x: Vec<f64>,
        y: Vec<f64>,
    },
    /// `y1 = conj(w)·x1`, so that `x1·conj(y1) = w` has the zero pattern of `w`.
    Target {
        x: Vec<f64>,
        w: Vec<f64>,
    },
}

/// How a pair `(x_q, y_q)` on a later sphere is generated.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorRecipe {
    Generic {
        x: Vec<f64>,
        y: Vec<f64>,
    },
    Aligned {
        x: Vec<f64>,
        sign: f64,
    },
    /// `x_q = ±A`, `y_q = ±x_q`.
    Pole {
        dim: usize,
        north: bool,
        sign: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TcRecipe {
    pub first: FirstRecipe,
    pub rest: Vec<FactorRecipe>,
}

impl TcRecipe {
    pub fn random<R: Rng>(shape: &Shape, kind: MapKind, rng: &mut R) -> Self {
        let len = shape.n1() + 1;
        let roll: f64 = rng.random();
        let first = if roll < 0.3 {
            FirstRecipe::Generic {
                x: gaussian(rng, len),
                y: gaussian(rng, len),
            }
        } else if roll < 0.5 {
            FirstRecipe::Aligned {
                x: gaussian(rng, len),
                sign: sign(rng),
            }
        } else if roll < 0.65 {
            FirstRecipe::Orthogonal {
                x: gaussian(rng, len),
                v: gaussian(rng, len),
            }
        } else if roll < 0.85 || kind != MapKind::DivisionAlgebra {
            FirstRecipe::Sparse {
                x: sparse(rng, len),
                y: sparse(rng, len),
            }
        } else {
            FirstRecipe::Target {
                x: gaussian(rng, len),
                w: sparse(rng, len),
            }
        };
        let rest = shape
            .tail()
            .map(|(_, dim)| {
                let roll: f64 = rng.random();
                if roll < 0.5 {
                    FactorRecipe::Generic {
                        x: gaussian(rng, dim + 1),
                        y: gaussian(rng, dim + 1),
                    }
                } else if roll < 0.8 {
                    FactorRecipe::Aligned {
                        x: gaussian(rng, dim + 1),
                        sign: sign(rng),
                    }
                } else {
                    FactorRecipe::Pole {
                        dim,
                        north: rng.random_bool(0.5),
                        sign: sign(rng),
                    }
                }
            })
            .collect();
        Self { first, rest }
    }

    /// The lifts `(x̄, ȳ)`.
    pub fn build(&self) -> (Vec<SpherePoint>, Vec<SpherePoint>) {
        let (x1, y1) = match &self.first {
            FirstRecipe::Generic { x, y } | FirstRecipe::Sparse { x, y } => (unit(x), unit(y)),
            FirstRecipe::Aligned { x, sign } => {
                let x = unit(x);
                let y = if *sign > 0.0 { x.clone() } else { -&x };
                (x, y)
            }
            FirstRecipe::Orthogonal { x, v } => {
                let x = unit(x);
                let d = dot(v, x.coords());
                let w: Vec<f64> = v.iter().zip(x.coords()).map(|(a, b)| a - d * b).collect();
                (x, unit(&w))
            }
            FirstRecipe::Target { x, w } => {
                let x = unit(x);
                let w = unit(w);
                let y = cd_mul(&cd_conj(w.coords()), x.coords());
                (x, unit(&y))
            }
        };
        let mut xs = vec![x1];
        let mut ys = vec![y1];
        for f in &self.rest {
            let (x, y) = match f {
                FactorRecipe::Generic { x, y } => (unit(x), unit(y)),
                FactorRecipe::Aligned { x, sign } => {
                    let x = unit(x);
                    let y = if *sign > 0.0 { x.clone() } else { -&x };
                    (x, y)
                }
                FactorRecipe::Pole { dim, north, sign } => {
                    let a = SpherePoint::north(*dim);
                    let x = if *north { a } else { -a };
                    let y = if *sign > 0.0 { x.clone() } else { -&x };
                    (x, y)
                }
            };
            xs.push(x);
            ys.push(y);
        }
        (xs, ys)
    }

    /// The same recipe with raw parameters moved by noise of size `scale`.
    pub fn perturbed<R: Rng>(&self, rng: &mut R, scale: f64) -> Self {
        let first = match &self.first {
            FirstRecipe::Generic { x, y } => FirstRecipe::Generic {
                x: jitter(rng, x, scale),
                y: jitter(rng, y, scale),
            },
            FirstRecipe::Sparse { x, y } => FirstRecipe::Sparse {
                x: jitter(rng, x, scale),
                y: jitter(rng, y, scale),
            },
            FirstRecipe::Aligned { x, sign } => FirstRecipe::Aligned {
                x: jitter(rng, x, scale),
                sign: *sign,
            },
            FirstRecipe::Orthogonal { x, v } => FirstRecipe::Orthogonal {
                x: jitter(rng, x, scale),
                v: jitter(rng, v, scale),
            },
            FirstRecipe::Target { x, w } => FirstRecipe::Target {
                x: jitter(rng, x, scale),
                w: jitter(rng, w, scale),
            },
        };
        let rest = self
            .rest
            .iter()
            .map(|f| match f {
                FactorRecipe::Generic { x, y } => FactorRecipe::Generic {
                    x: jitter(rng, x, scale),
                    y: jitter(rng, y, scale),
                },
                FactorRecipe::Aligned { x, sign } => FactorRecipe::Aligned {
                    x: jitter(rng, x, scale),
                    sign: *sign,
                },
                pole @ FactorRecipe::Pole { .. } => pole.clone(),
            })
            .collect();
        Self { first, rest }
    }
}

/// How a point of `S_n̄` is generated for the category cover.
#[derive(Clone, Debug, PartialEq)]
pub struct CatRecipe {
    /// Raw first factor; its zero entries fix the set `L`.
    pub first: Vec<f64>,
    pub rest: Vec<CatFactor>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CatFactor {
    Generic(Vec<f64>),
    Pole { dim: usize, north: bool },
}

impl CatRecipe {
    pub fn random<R: Rng>(shape: &Shape, rng: &mut R) -> Self {
        let len = shape.n1() + 1;
        let first = if rng.random_bool(0.4) {
            gaussian(rng, len)
        } else {
            sparse(rng, len)
        };
        let rest = shape
            .tail()
            .map(|(_, dim)| {
                if rng.random_bool(0.25) {
                    CatFactor::Pole {
                        dim,
                        north: rng.random_bool(0.5),
                    }
                } else {
                    CatFactor::Generic(gaussian(rng, dim + 1))
                }
            })
            .collect();
        Self { first, rest }
    }

    pub fn build(&self) -> Vec<SpherePoint> {
        std::iter::once(unit(&self.first))
            .chain(self.rest.iter().map(|f| match f {
                CatFactor::Generic(v) => unit(v),
                CatFactor::Pole { dim, north } => {
                    let a = SpherePoint::north(*dim);
                    if *north {
                        a
                    } else {
                        -a
                    }
                }
            }))
            .collect()
    }

    pub fn perturbed<R: Rng>(&self, rng: &mut R, scale: f64) -> Self {
        Self {
            first: jitter(rng, &self.first, scale),
            rest: self
                .rest
                .iter()
                .map(|f| match f {
                    CatFactor::Generic(v) => CatFactor::Generic(jitter(rng, v, scale)),
                    pole => pole.clone(),
                })
                .collect(),
        }
    }
}
