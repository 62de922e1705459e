//! Seeded random modules, arrows and commuting squares.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrow2::{hom_invariants, ArrowMorphism, ArrowObject};
use crate::fgmod::{hom_group, FgModule, ModuleMorphism};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub ring: Ring,
    pub max_generators: usize,
    pub max_relations: usize,
    pub entry_bound: i64,
    pub trials: usize,
}

impl GeneratorConfig {
    pub fn new(ring: Ring, seed: u64, trials: usize) -> GeneratorConfig {
        GeneratorConfig { seed, ring, max_generators: 3, max_relations: 3, entry_bound: 5, trials }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_generators == 0 || self.max_relations == 0 || self.entry_bound <= 0 || self.trials == 0 {
            return Err(Error::Invalid("generator bounds and trial count must be positive".into()));
        }
        if let Some(m) = self.ring.modulus() {
            Ring::zmod(m)?;
        }
        Ok(())
    }
}

/// Per-trial seed derived from the master seed (splitmix64 of both).
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const RETRIES: usize = 200;

pub struct Generator {
    pub config: GeneratorConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(config: GeneratorConfig) -> Result<Generator> {
        config.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        Ok(Generator { config, rng })
    }

    /// Generator for trial `t`, independent of every other trial.
    pub fn for_trial(config: &GeneratorConfig, t: usize) -> Result<Generator> {
        let mut c = config.clone();
        c.seed = trial_seed(config.seed, t as u64);
        Generator::new(c)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn ring(&self) -> Ring {
        self.config.ring
    }

    fn entry(&mut self) -> BigInt {
        let b = self.config.entry_bound;
        self.config.ring.reduce(BigInt::from(self.rng.gen_range(-b..=b)))
    }

    pub fn random_matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let entries = (0..rows * cols).map(|_| self.entry()).collect();
        Matrix::from_vec(self.ring(), rows, cols, entries).unwrap()
    }

    /// Number of generators, occasionally zero.
    fn generator_count(&mut self) -> usize {
        if self.rng.gen_ratio(1, 10) {
            0
        } else {
            self.rng.gen_range(1..=self.config.max_generators)
        }
    }

    pub fn module(&mut self) -> FgModule {
        let g = self.generator_count();
        let r = self.rng.gen_range(0..=self.config.max_relations);
        let rel = self.random_matrix(g, r);
        FgModule::new(self.ring(), g, rel).unwrap()
    }

    pub fn free_module(&mut self) -> FgModule {
        let g = self.generator_count();
        FgModule::free(self.ring(), g)
    }

    /// Random module map, as a random element of the hom module.
    pub fn module_map(&mut self, source: &FgModule, target: &FgModule) -> Result<ModuleMorphism> {
        let h = hom_group(source, target)?;
        let c: Vec<BigInt> = (0..h.rank()).map(|_| self.entry()).collect();
        Ok(h.morphism(&c))
    }

    /// Random arrow between random modules.
    pub fn arrow(&mut self) -> Result<ArrowObject> {
        let a1 = self.module();
        let a0 = self.module();
        Ok(ArrowObject::new(self.module_map(&a1, &a0)?))
    }

    /// Random arrow with free target.
    pub fn arrow_c(&mut self) -> Result<ArrowObject> {
        let a1 = self.module();
        let a0 = self.free_module();
        Ok(ArrowObject::new(self.module_map(&a1, &a0)?))
    }

    /// Random commuting square `a → b`, drawn from the group of all squares.
    pub fn morphism(&mut self, a: &ArrowObject, b: &ArrowObject) -> Result<ArrowMorphism> {
        let inv = hom_invariants(a, b)?;
        let c: Vec<BigInt> = (0..inv.mor_module().generators()).map(|_| self.entry()).collect();
        Ok(inv.morphism(&c))
    }

    /// Calls `draw` until it yields a value, at most a fixed number of times.
    pub fn retry<T, F>(&mut self, what: &str, mut draw: F) -> Result<T>
    where
        F: FnMut(&mut Generator) -> Result<Option<T>>,
    {
        for _ in 0..RETRIES {
            if let Some(x) = draw(self)? {
                return Ok(x);
            }
        }
        Err(Error::RetriesExhausted(format!("{what}: no acceptable sample in {RETRIES} draws")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let cfg = GeneratorConfig::new(Ring::IntegersMod { m: 4 }, 1, 1);
        let mut g1 = Generator::new(cfg.clone()).unwrap();
        let mut g2 = Generator::new(cfg).unwrap();
        for _ in 0..5 {
            assert_eq!(g1.arrow().unwrap(), g2.arrow().unwrap());
        }
    }

    #[test]
    fn squares_commute() {
        let cfg = GeneratorConfig::new(Ring::Integers, 9, 1);
        let mut g = Generator::new(cfg).unwrap();
        for _ in 0..5 {
            let a = g.arrow_c().unwrap();
            let b = g.arrow().unwrap();
            let f = g.morphism(&a, &b).unwrap();
            assert!(ArrowMorphism::new(a, b, f.f0().clone(), f.f1().clone()).is_ok());
        }
    }

    #[test]
    fn invalid_config() {
        let mut cfg = GeneratorConfig::new(Ring::Integers, 0, 1);
        cfg.entry_bound = 0;
        assert!(Generator::new(cfg).is_err());
    }

    #[test]
    fn retries_exhaust() {
        let mut g = Generator::new(GeneratorConfig::new(Ring::Integers, 0, 1)).unwrap();
        let r: Result<()> = g.retry("never", |_| Ok(None));
        assert!(matches!(r, Err(Error::RetriesExhausted(_))));
    }
}
