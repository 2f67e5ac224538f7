//! Generic-point protocol: ranks are evaluated at seeded random integer
//! points and the maximum is taken, or computed over the function field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Maximum rank over seeded random integer points.
    #[default]
    Sampled,
    /// Rank over the rational function field by fraction-free elimination.
    Symbolic,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Sampled => "sampled",
            Mode::Symbolic => "symbolic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
    pub coord_bound: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { mode: Mode::Sampled, seed: 0, samples: 5, coord_bound: 100 }
    }
}

impl Options {
    pub fn symbolic() -> Self {
        Options { mode: Mode::Symbolic, ..Options::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Sampler for one purpose; distinct streams keep unrelated computations
    /// from depending on each other's draw counts.
    pub fn sampler(&self, stream: Stream) -> Sampler {
        Sampler::new(self.seed, stream as u64, self.coord_bound)
    }

    /// Upper bound on draws when points must be rejected.
    pub(crate) fn max_draws(&self) -> usize {
        (self.samples.max(1)) * 40
    }
}

/// Independent random streams derived from one seed.
#[derive(Clone, Copy, Debug)]
pub enum Stream {
    Parameters = 1,
    JoinCoefficients = 2,
    FormVariables = 3,
}

/// Uniform integer points in `[-bound, bound]^dim`.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64, bound: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng, bound: bound.max(1) as i64 }
    }

    pub fn point(&mut self, dim: usize) -> Vec<Rational> {
        (0..dim).map(|_| q(self.rng.gen_range(-self.bound..=self.bound))).collect()
    }

    /// A point with no zero coordinate.
    pub fn nonzero_point(&mut self, dim: usize) -> Vec<Rational> {
        (0..dim)
            .map(|_| loop {
                let x = self.rng.gen_range(-self.bound..=self.bound);
                if x != 0 {
                    break q(x);
                }
            })
            .collect()
    }
}
