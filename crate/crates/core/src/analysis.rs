//! Deciders for m-fullness, complete m-fullness, componentwise linearity
//! and the Nagel–Römer criterion, plus the t-sequence and the combined
//! report.

use crate::error::{Error, Result};
use crate::field::Rng;
use crate::gin::{gin, GinResult, DEFAULT_TRIALS, TRIAL_CAP};
use crate::homology::{
    betti_table_with_regularity, homological_profile_from_table, regularity_with_gin, BettiTable,
    HomologicalProfile,
};
use crate::ideal::{Ideal, Length};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{random_linear_form, random_linear_form_with_pivot, LinearForm};

/// Sampling parameters shared by the randomized deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Random linear forms tried per genericity point.
    pub samples: usize,
    /// Draws allowed before giving up on a genericity point.
    pub retry_cap: usize,
    pub gin_trials: usize,
    /// Compute the Betti table, homological profile and low-type check.
    pub homology: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            samples: 3,
            retry_cap: TRIAL_CAP,
            gin_trials: DEFAULT_TRIALS,
            homology: true,
        }
    }
}

fn require_proper(ideal: &Ideal) -> Result<()> {
    if ideal.is_proper_nonzero() {
        Ok(())
    } else {
        Err(Error::DegenerateIdeal)
    }
}

/// `mI : z = I` for the given form.
pub fn is_m_full_at(ideal: &Ideal, z: &LinearForm) -> bool {
    ideal.m_full_at(z)
}

/// True if `mI : z = I` for one of `samples` random forms.
pub fn is_m_full(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<bool> {
    require_proper(ideal)?;
    for _ in 0..cfg.samples {
        let z = random_linear_form(ideal.ring(), rng);
        if ideal.m_full_at(&z) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Minimum of the finite colon lengths `l((I:z)/I)` over sampled forms,
/// together with the forms drawn.
pub fn t_value(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<(u64, Vec<LinearForm>)> {
    require_proper(ideal)?;
    let mut best: Option<u64> = None;
    let mut finite = 0;
    let mut forms = Vec::new();
    while finite < cfg.samples && forms.len() < cfg.retry_cap.max(cfg.samples) {
        let z = random_linear_form(ideal.ring(), rng);
        if let Length::Finite(v) = ideal.colon_length(&z) {
            finite += 1;
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        forms.push(z);
    }
    best.map(|b| (b, forms)).ok_or(Error::AllSamplesInfinite)
}

/// The t-sequence `(t_0, ..., t_{n-1})` along a random flag of linear forms.
#[derive(Clone, Debug)]
pub struct TSequence {
    pub values: Vec<u64>,
    pub b: u64,
    /// The flag `z_n, ..., z_2` cut out successively.
    pub chain: Vec<LinearForm>,
    /// Forms sampled for the t-value at each level, `t_0` first.
    pub forms_used: Vec<Vec<LinearForm>>,
    pub samples_per_level: usize,
    /// Images of `I` in `1, ..., n` variables.
    pub images: Vec<Ideal>,
}

/// Images of `I` along a random flag, smallest ring first. A flag that
/// kills the ideal at some level is redrawn.
fn random_flag(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<(Vec<LinearForm>, Vec<Ideal>)> {
    'draw: for _ in 0..cfg.retry_cap {
        let mut chain = Vec::new();
        let mut images = vec![ideal.clone()];
        while images.last().unwrap().nvars() > 1 {
            let cur = images.last().unwrap();
            let z = random_linear_form_with_pivot(cur.ring(), rng);
            let next = cur.reduce_mod_linear(&z)?;
            if !next.is_proper_nonzero() {
                continue 'draw;
            }
            chain.push(z);
            images.push(next);
        }
        images.reverse();
        return Ok((chain, images));
    }
    Err(Error::AllSamplesInfinite)
}

pub fn t_sequence(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<TSequence> {
    require_proper(ideal)?;
    let (chain, images) = random_flag(ideal, rng, cfg)?;
    let mut values = Vec::new();
    let mut forms_used = Vec::new();
    for image in &images {
        let (t, forms) = t_value(image, rng, cfg)?;
        values.push(t);
        forms_used.push(forms);
    }
    assert_eq!(values[0], 1, "t_0 of a proper nonzero ideal is one");
    Ok(TSequence {
        b: values.iter().sum(),
        values,
        chain,
        forms_used,
        samples_per_level: cfg.samples,
        images,
    })
}

/// Certificate chain `z_n, ..., z_2` of a successful recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmfOutcome {
    pub holds: bool,
    pub chain: Vec<LinearForm>,
}

fn recurse(ideal: &Ideal, rng: &mut Rng, cfg: &Config, chain: &mut Vec<LinearForm>) -> Result<bool> {
    // every ideal of K[x] is completely m-full
    if ideal.nvars() == 1 {
        return Ok(true);
    }
    for _ in 0..cfg.samples {
        let z = random_linear_form_with_pivot(ideal.ring(), rng);
        if !ideal.m_full_at(&z) {
            continue;
        }
        let image = ideal.reduce_mod_linear(&z)?;
        chain.push(z);
        if recurse(&image, rng, cfg, chain)? {
            return Ok(true);
        }
        chain.pop();
    }
    Ok(false)
}

/// Complete m-fullness straight from the recursive definition, with random
/// forms at every level.
pub fn is_completely_m_full_recursive(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<CmfOutcome> {
    require_proper(ideal)?;
    let mut chain = Vec::new();
    let holds = recurse(ideal, rng, cfg, &mut chain)?;
    if !holds {
        chain.clear();
    }
    Ok(CmfOutcome { holds, chain })
}

/// The recursion with the coordinate forms `x_n, x_{n-1}, ..., x_2`.
pub fn coordinate_complete_m_full(ideal: &Ideal) -> Result<bool> {
    let mut cur = ideal.clone();
    while cur.nvars() > 1 {
        let z = LinearForm::coordinate(cur.nvars(), cur.nvars() - 1);
        if !cur.m_full_at(&z) {
            return Ok(false);
        }
        cur = cur.reduce_mod_linear(&z)?;
    }
    Ok(true)
}

/// `μ(I) = B(I)`.
pub fn is_completely_m_full_via_b(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<bool> {
    let t = t_sequence(ideal, rng, cfg)?;
    Ok(ideal.mu() == t.b)
}

/// Checks the components `I_<j>` from the initial degree through the top
/// minimal generator degree, plus a sentinel component at `reg(I) + 1`.
pub fn is_componentwise_linear_with_reg(
    ideal: &Ideal,
    reg: u32,
    rng: &mut Rng,
    cfg: &Config,
) -> Result<bool> {
    require_proper(ideal)?;
    let profile = ideal.mu_profile();
    let lo = *profile.keys().next().unwrap();
    let hi = *profile.keys().last().unwrap();
    let mut degrees: Vec<u32> = (lo..=hi).collect();
    degrees.push(reg.max(hi) + 1);
    for j in degrees {
        let component = ideal.component_ideal(j);
        if component.is_zero() {
            continue;
        }
        let g = gin(&component, rng, cfg.gin_trials)?;
        if regularity_with_gin(&component, &g.gin)? != j {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_componentwise_linear(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<bool> {
    require_proper(ideal)?;
    let g = gin(ideal, rng, cfg.gin_trials)?;
    let reg = regularity_with_gin(ideal, &g.gin)?;
    is_componentwise_linear_with_reg(ideal, reg, rng, cfg)
}

/// Gin stable and `μ(I) = μ(gin(I))`.
pub fn nagel_romer_with_gin(ideal: &Ideal, g: &MonomialIdeal) -> bool {
    g.is_stable() && ideal.mu() == g.len() as u64
}

pub fn nagel_romer(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<bool> {
    require_proper(ideal)?;
    let g = gin(ideal, rng, cfg.gin_trials)?;
    Ok(nagel_romer_with_gin(ideal, &g.gin))
}

/// Outcome of the low-type check: a componentwise linear Cohen–Macaulay
/// ideal of height `h` and type `r <= h` contains `h - r` independent
/// linear forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowType {
    Holds,
    Violated,
    /// The hypotheses fail, so there is nothing to check.
    Vacuous,
}

pub fn low_type_check_from(
    ideal: &Ideal,
    cwl: bool,
    profile: &HomologicalProfile,
    height: usize,
    ty: Length,
) -> LowType {
    let Length::Finite(r) = ty else {
        return LowType::Vacuous;
    };
    if !cwl || !profile.cohen_macaulay || (height as u64) < r {
        return LowType::Vacuous;
    }
    if ideal.dim_in_degree(1) >= height as u64 - r {
        LowType::Holds
    } else {
        LowType::Violated
    }
}

pub fn low_type_check(ideal: &Ideal, rng: &mut Rng, cfg: &Config) -> Result<LowType> {
    require_proper(ideal)?;
    let g = gin(ideal, rng, cfg.gin_trials)?;
    let reg = regularity_with_gin(ideal, &g.gin)?;
    let cwl = is_componentwise_linear_with_reg(ideal, reg, rng, cfg)?;
    let table = betti_table_with_regularity(ideal, reg);
    let profile = homological_profile_from_table(ideal, &table)?;
    let (_, height) = ideal.dim_and_height()?;
    Ok(low_type_check_from(ideal, cwl, &profile, height, ideal.type_of()))
}

/// Everything `analyze` computes. Fields that failed are `None` and the
/// error is listed in `errors`.
#[derive(Clone, Debug)]
pub struct Report {
    pub seed: u64,
    pub mu: u64,
    pub t_sequence: Option<TSequence>,
    pub ty: Length,
    pub dim: usize,
    pub height: usize,
    pub gin: Option<GinResult>,
    pub regularity: Option<u32>,
    pub m_full: Option<bool>,
    pub cmf_recursive: Option<CmfOutcome>,
    pub cmf_b: Option<bool>,
    pub componentwise_linear: Option<bool>,
    pub nagel_romer: Option<bool>,
    pub betti: Option<BettiTable>,
    pub profile: Option<HomologicalProfile>,
    pub low_type: Option<LowType>,
    pub errors: Vec<(&'static str, Error)>,
}

impl Report {
    pub fn b(&self) -> Option<u64> {
        self.t_sequence.as_ref().map(|t| t.b)
    }

    pub fn gin_stable(&self) -> Option<bool> {
        self.gin.as_ref().map(|g| g.gin.is_stable())
    }

    /// The four characterizations, in the order recursive, `μ = B`,
    /// componentwise linear, Nagel–Römer.
    pub fn flags(&self) -> [Option<bool>; 4] {
        [
            self.cmf_recursive.as_ref().map(|c| c.holds),
            self.cmf_b,
            self.componentwise_linear,
            self.nagel_romer,
        ]
    }

    /// All four characterizations computed and equal.
    pub fn consistent(&self) -> bool {
        let f = self.flags();
        f.iter().all(Option::is_some) && f.iter().all(|x| *x == f[0])
    }
}

/// Decider streams are derived from the seed so that each is reproducible
/// on its own.
pub mod stream {
    pub const M_FULL: u64 = 1;
    pub const T_SEQUENCE: u64 = 2;
    pub const GIN: u64 = 3;
    pub const RECURSIVE: u64 = 4;
    pub const COMPONENTS: u64 = 5;
}

pub fn analyze(ideal: &Ideal, seed: u64, cfg: &Config) -> Result<Report> {
    require_proper(ideal)?;
    let rng = |k| Rng::derived(seed, k);
    let mut errors = Vec::new();
    let mut keep = |name: &'static str, e: Error| errors.push((name, e));

    let mu = ideal.mu();
    let (dim, height) = ideal.dim_and_height()?;
    let ty = ideal.type_of();

    let m_full = is_m_full(ideal, &mut rng(stream::M_FULL), cfg)
        .map_err(|e| keep("m_full", e))
        .ok();
    let t_sequence = t_sequence(ideal, &mut rng(stream::T_SEQUENCE), cfg)
        .map_err(|e| keep("t_sequence", e))
        .ok();
    let cmf_b = t_sequence.as_ref().map(|t| t.b == mu);
    let gin_result = gin(ideal, &mut rng(stream::GIN), cfg.gin_trials)
        .map_err(|e| keep("gin", e))
        .ok();
    let regularity = gin_result
        .as_ref()
        .and_then(|g| regularity_with_gin(ideal, &g.gin).map_err(|e| keep("regularity", e)).ok());
    let nagel_romer = gin_result.as_ref().map(|g| nagel_romer_with_gin(ideal, &g.gin));
    let cmf_recursive = is_completely_m_full_recursive(ideal, &mut rng(stream::RECURSIVE), cfg)
        .map_err(|e| keep("completely_m_full_recursive", e))
        .ok();
    let componentwise_linear = regularity.and_then(|reg| {
        is_componentwise_linear_with_reg(ideal, reg, &mut rng(stream::COMPONENTS), cfg)
            .map_err(|e| keep("componentwise_linear", e))
            .ok()
    });

    let mut betti = None;
    let mut profile = None;
    let mut low_type = None;
    if cfg.homology {
        if let Some(reg) = regularity {
            let table = betti_table_with_regularity(ideal, reg);
            let p = homological_profile_from_table(ideal, &table)
                .map_err(|e| keep("profile", e))
                .ok();
            if let (Some(p), Some(cwl)) = (p, componentwise_linear) {
                low_type = Some(low_type_check_from(ideal, cwl, &p, height, ty));
            }
            profile = p;
            betti = Some(table);
        }
    }

    Ok(Report {
        seed,
        mu,
        t_sequence,
        ty,
        dim,
        height,
        gin: gin_result,
        regularity,
        m_full,
        cmf_recursive,
        cmf_b,
        componentwise_linear,
        nagel_romer,
        betti,
        profile,
        low_type,
        errors,
    })
}
