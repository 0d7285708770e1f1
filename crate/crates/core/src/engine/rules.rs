use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Candidate;

/// Tie-breaking policy for directions and for removed/added rows.
///
/// Every method receives a nonempty option list and returns an index into it.
pub trait PivotRule {
    fn name(&self) -> String;
    fn choose_direction(&mut self, candidates: &[Candidate]) -> usize;
    fn choose_removal(&mut self, rows: &[usize]) -> usize;
    fn choose_addition(&mut self, rows: &[usize]) -> usize;
}

fn argmin_by_key<T, K: Ord>(items: &[T], key: impl Fn(&T) -> K) -> usize {
    (0..items.len())
        .min_by_key(|&i| key(&items[i]))
        .expect("empty option list")
}

fn argmax_by_key<T, K: Ord>(items: &[T], key: impl Fn(&T) -> K) -> usize {
    // max_by_key returns the last maximum; walk in reverse so ties go low
    (0..items.len())
        .rev()
        .max_by_key(|&i| key(&items[i]))
        .expect("empty option list")
}

#[derive(Clone, Debug, Default)]
pub struct LowestIndex;

impl PivotRule for LowestIndex {
    fn name(&self) -> String {
        "lowest-index".into()
    }
    fn choose_direction(&mut self, candidates: &[Candidate]) -> usize {
        argmin_by_key(candidates, |c| c.direction)
    }
    fn choose_removal(&mut self, rows: &[usize]) -> usize {
        argmin_by_key(rows, |&r| r)
    }
    fn choose_addition(&mut self, rows: &[usize]) -> usize {
        argmin_by_key(rows, |&r| r)
    }
}

#[derive(Clone, Debug, Default)]
pub struct HighestIndex;

impl PivotRule for HighestIndex {
    fn name(&self) -> String {
        "highest-index".into()
    }
    fn choose_direction(&mut self, candidates: &[Candidate]) -> usize {
        (0..candidates.len())
            .max_by_key(|&i| candidates[i].direction)
            .expect("empty option list")
    }
    fn choose_removal(&mut self, rows: &[usize]) -> usize {
        (0..rows.len()).max_by_key(|&i| rows[i]).expect("empty option list")
    }
    fn choose_addition(&mut self, rows: &[usize]) -> usize {
        (0..rows.len()).max_by_key(|&i| rows[i]).expect("empty option list")
    }
}

/// Largest directional derivative, lowest coordinate on ties.
#[derive(Clone, Debug, Default)]
pub struct Steepest;

impl PivotRule for Steepest {
    fn name(&self) -> String {
        "steepest".into()
    }
    fn choose_direction(&mut self, candidates: &[Candidate]) -> usize {
        let best = argmax_by_key(candidates, |c| c.slope.clone());
        let top = &candidates[best].slope;
        argmin_by_key(candidates, |c| (&c.slope != top, c.direction))
    }
    fn choose_removal(&mut self, rows: &[usize]) -> usize {
        argmin_by_key(rows, |&r| r)
    }
    fn choose_addition(&mut self, rows: &[usize]) -> usize {
        argmin_by_key(rows, |&r| r)
    }
}

/// Uniform choice from a seeded ChaCha stream. Singleton option lists do
/// not consume randomness.
#[derive(Clone, Debug)]
pub struct SeededRandom {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRandom {
    pub fn new(seed: u64) -> Self {
        SeededRandom {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn pick(&mut self, len: usize) -> usize {
        assert!(len > 0, "empty option list");
        if len == 1 {
            0
        } else {
            self.rng.gen_range(0..len)
        }
    }
}

impl PivotRule for SeededRandom {
    fn name(&self) -> String {
        format!("seeded-random({})", self.seed)
    }
    fn choose_direction(&mut self, candidates: &[Candidate]) -> usize {
        // candidate order is canonical (coordinate, sign), so this is reproducible
        self.pick(candidates.len())
    }
    fn choose_removal(&mut self, rows: &[usize]) -> usize {
        self.pick(rows.len())
    }
    fn choose_addition(&mut self, rows: &[usize]) -> usize {
        self.pick(rows.len())
    }
}

/// The built-in rules by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinRule {
    LowestIndex,
    HighestIndex,
    Steepest,
    SeededRandom(u64),
}

impl BuiltinRule {
    pub fn instantiate(&self) -> Box<dyn PivotRule + Send> {
        match *self {
            BuiltinRule::LowestIndex => Box::new(LowestIndex),
            BuiltinRule::HighestIndex => Box::new(HighestIndex),
            BuiltinRule::Steepest => Box::new(Steepest),
            BuiltinRule::SeededRandom(seed) => Box::new(SeededRandom::new(seed)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinRule::LowestIndex => "lowest-index",
            BuiltinRule::HighestIndex => "highest-index",
            BuiltinRule::Steepest => "steepest",
            BuiltinRule::SeededRandom(_) => "seeded-random",
        }
    }

    pub fn from_name(name: &str, seed: u64) -> Option<Self> {
        match name {
            "lowest-index" => Some(BuiltinRule::LowestIndex),
            "highest-index" => Some(BuiltinRule::HighestIndex),
            "steepest" => Some(BuiltinRule::Steepest),
            "seeded-random" => Some(BuiltinRule::SeededRandom(seed)),
            _ => None,
        }
    }
}

impl fmt::Display for BuiltinRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinRule::from_name(s, 0).ok_or_else(|| format!("unknown pivot rule {s:?}"))
    }
}

/// All four built-in rules; `seed` feeds the random one.
pub fn builtin_rules(seed: u64) -> Vec<BuiltinRule> {
    vec![
        BuiltinRule::LowestIndex,
        BuiltinRule::HighestIndex,
        BuiltinRule::Steepest,
        BuiltinRule::SeededRandom(seed),
    ]
}
