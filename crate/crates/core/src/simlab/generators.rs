//! Seeded stream generators. Beta variates are built from two gamma variates
//! drawn with the Marsaglia–Tsang squeeze method.

use rand::{Rng, RngExt};
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::engine::StreamRecord;
use crate::error::{Error, Result};
use crate::rng::SubstreamKey;

/// Gamma(shape, 1) via Marsaglia & Tsang (2000). Shapes below one are
/// boosted: `G(a) = G(a + 1) · U^(1/a)`.
pub fn sample_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    debug_assert!(shape > 0.0);
    if shape < 1.0 {
        let u: f64 = rng.random();
        return sample_gamma(shape + 1.0, rng) * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = StandardNormal.sample(rng);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

pub fn sample_beta<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    let ga = sample_gamma(a, rng);
    let gb = sample_gamma(b, rng);
    ga / (ga + gb)
}

/// Distribution of an i.i.d. bounded stream together with its true mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Generator {
    Beta { a: f64, b: f64 },
    Bernoulli { p: f64 },
}

impl Generator {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Generator::Beta { a, b } if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) => {
                Err(Error::InvalidConfig(format!(
                    "beta shapes must be positive, got a = {a}, b = {b}"
                )))
            }
            Generator::Bernoulli { p } if !(0.0..=1.0).contains(&p) => Err(Error::OutOfDomain {
                what: "bernoulli p",
                value: p,
                domain: "[0, 1]",
            }),
            _ => Ok(()),
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Generator::Beta { a, b } => a / (a + b),
            Generator::Bernoulli { p } => p,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Generator::Beta { a, b } => sample_beta(a, b, rng),
            Generator::Bernoulli { p } => {
                if rng.random::<f64>() < p {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `n` observations from data substream `(seed, stream)`.
    pub fn stream(&self, n: usize, seed: u64, stream: u64) -> Result<Vec<StreamRecord>> {
        self.validate()?;
        let mut rng = SubstreamKey::data(seed, stream).rng();
        Ok((1..=n as u64)
            .map(|t| StreamRecord {
                t,
                x: self.sample(&mut rng),
            })
            .collect())
    }
}

/// Ground truth of a simulated stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationTruth {
    pub mu_true: f64,
    pub generator: Generator,
}

impl From<Generator> for SimulationTruth {
    fn from(generator: Generator) -> Self {
        Self {
            mu_true: generator.mean(),
            generator,
        }
    }
}

pub fn gen_beta_stream(a: f64, b: f64, n: usize, seed: u64, stream: u64) -> Result<Vec<StreamRecord>> {
    Generator::Beta { a, b }.stream(n, seed, stream)
}

pub fn gen_bernoulli_stream(p: f64, n: usize, seed: u64, stream: u64) -> Result<Vec<StreamRecord>> {
    Generator::Bernoulli { p }.stream(n, seed, stream)
}
