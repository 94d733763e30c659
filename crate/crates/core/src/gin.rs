//! Generic initial ideals by random changes of coordinates.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Rng;
use crate::ideal::Ideal;
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::random_linear_change;

pub const DEFAULT_TRIALS: usize = 3;
/// Trials are added one at a time up to this many when no two agree.
pub const TRIAL_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinResult {
    pub gin: MonomialIdeal,
    pub trials_used: usize,
    /// All trials gave the same lead ideal.
    pub agreement: bool,
    pub seeds: Vec<u64>,
}

/// Lead ideal of `I` after the random change drawn from `seed`.
pub fn gin_trial(ideal: &Ideal, seed: u64) -> MonomialIdeal {
    let mut rng = Rng::new(seed);
    let (change, _) = random_linear_change(ideal.ring(), &mut rng);
    ideal.apply_change(&change).lead_ideal().clone()
}

/// Majority lead ideal over `trials` random coordinate changes.
pub fn gin(ideal: &Ideal, rng: &mut Rng, trials: usize) -> Result<GinResult> {
    if trials < 2 {
        return Err(Error::Usage("gin needs at least two trials".into()));
    }
    let base = rng.next_u64();
    let cap = TRIAL_CAP.max(trials);
    let mut seeds = Vec::new();
    let mut results: Vec<MonomialIdeal> = Vec::new();
    let run_one = |seeds: &mut Vec<u64>, results: &mut Vec<MonomialIdeal>| {
        let seed = Rng::derive_seed(base, seeds.len() as u64);
        seeds.push(seed);
        results.push(gin_trial(ideal, seed));
    };
    for _ in 0..trials {
        run_one(&mut seeds, &mut results);
    }
    loop {
        let mut counts: HashMap<&MonomialIdeal, usize> = HashMap::new();
        for r in &results {
            *counts.entry(r).or_default() += 1;
        }
        let top = counts.values().copied().max().unwrap_or(0);
        if top >= 2 {
            // first-seen ideal among those with the top count
            let winner = results.iter().find(|r| counts[r] == top).unwrap().clone();
            return Ok(GinResult {
                agreement: top == results.len(),
                gin: winner,
                trials_used: results.len(),
                seeds,
            });
        }
        if results.len() >= cap {
            return Err(Error::NoAgreement {
                trials: results.len(),
            });
        }
        run_one(&mut seeds, &mut results);
    }
}

pub fn is_gin_stable(ideal: &Ideal, rng: &mut Rng, trials: usize) -> Result<bool> {
    Ok(gin(ideal, rng, trials)?.gin.is_stable())
}
