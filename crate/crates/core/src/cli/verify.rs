//! Randomized cross-checks of the four characterizations and of the
//! invariants tying them together.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::analysis::{analyze, coordinate_complete_m_full, is_m_full, t_sequence, Config, Report};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Rng};
use crate::generate::{random_graded_ideal, random_monomial_ideal, random_stable_ideal};
use crate::ideal::{Ideal, Length};
use crate::poly::{random_linear_change, random_linear_form_with_pivot, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Graded,
    Monomial,
    Stable,
    /// A stable ideal moved by a random change of coordinates.
    StableChanged,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 4] = [
        InstanceKind::Graded,
        InstanceKind::Monomial,
        InstanceKind::Stable,
        InstanceKind::StableChanged,
    ];

    fn is_monomial(self) -> bool {
        matches!(self, InstanceKind::Monomial | InstanceKind::Stable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub vars: Vec<usize>,
    pub max_degree: u32,
    pub max_generators: usize,
    pub field: PrimeField,
    pub config: Config,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 1,
            trials: 50,
            vars: vec![2, 3, 4],
            max_degree: 4,
            max_generators: 5,
            field: PrimeField::default(),
            config: Config {
                homology: false,
                ..Config::default()
            },
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: usize,
    pub seed: u64,
    pub kind: InstanceKind,
    pub ideal: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub seed: u64,
    pub trials: usize,
    pub agreements: usize,
    /// Instances that agreed only after one reseeded rerun.
    pub retried: Vec<usize>,
    pub completely_m_full: usize,
    pub by_kind: BTreeMap<InstanceKind, usize>,
    pub invariants: BTreeMap<&'static str, Tally>,
    pub failures: Vec<Failure>,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.invariants.values().all(|t| t.violations == 0)
    }
}

impl fmt::Display for VerificationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed:                {}", self.seed)?;
        writeln!(f, "instances:           {}", self.trials)?;
        writeln!(f, "all four agree:      {}", self.agreements)?;
        writeln!(f, "agreed after retry:  {}", self.retried.len())?;
        writeln!(f, "completely m-full:   {}", self.completely_m_full)?;
        for (kind, count) in &self.by_kind {
            writeln!(f, "  {:<18} {count}", format!("{kind:?}:"))?;
        }
        writeln!(f, "invariants:")?;
        for (name, t) in &self.invariants {
            writeln!(f, "  {name:<26} checked {:>5}  violations {}", t.checked, t.violations)?;
        }
        for fail in &self.failures {
            writeln!(
                f,
                "FAILED #{} ({:?}, seed {}): {} on {}",
                fail.index, fail.kind, fail.seed, fail.reason, fail.ideal
            )?;
        }
        writeln!(f, "result:              {}", if self.passed() { "ok" } else { "FAILED" })
    }
}

/// Instance `index` of a run: its kind cycles, everything else comes from
/// the derived seed.
pub fn instance(opts: &VerifyOptions, index: usize) -> Result<(InstanceKind, u64, Ideal)> {
    let seed = Rng::derive_seed(opts.seed, index as u64);
    let mut rng = Rng::new(seed);
    let kind = InstanceKind::ALL[index % 4];
    let n = opts.vars[rng.below(opts.vars.len() as u64) as usize];
    let ring = PolyRing::with_vars(opts.field, n)?;
    let gens = rng.range_inclusive(1, opts.max_generators as u64) as usize;
    let ideal = match kind {
        InstanceKind::Graded => random_graded_ideal(&ring, &mut rng, gens, 1, opts.max_degree),
        InstanceKind::Monomial => Ideal::from_monomials(
            &ring,
            &random_monomial_ideal(n, &mut rng, gens, 1, opts.max_degree),
        ),
        InstanceKind::Stable => {
            Ideal::from_monomials(&ring, &random_stable_ideal(n, &mut rng, gens, opts.max_degree))
        }
        InstanceKind::StableChanged => {
            let s = Ideal::from_monomials(&ring, &random_stable_ideal(n, &mut rng, gens, opts.max_degree));
            let (change, _) = random_linear_change(&ring, &mut rng);
            s.apply_change(&change)
        }
    };
    Ok((kind, seed, ideal))
}

struct Checks<'a> {
    tallies: &'a mut BTreeMap<&'static str, Tally>,
    reasons: Vec<String>,
}

impl Checks<'_> {
    fn record(&mut self, name: &'static str, ok: bool) {
        let t = self.tallies.entry(name).or_default();
        t.checked += 1;
        if !ok {
            t.violations += 1;
            self.reasons.push(name.to_string());
        }
    }
}

/// The t-sequences of `I` and of its gin agree; one reseeded rerun is
/// allowed since both are minima over samples.
fn t_sequences_match(ideal: &Ideal, gin: &Ideal, seed: u64, cfg: &Config) -> Result<bool> {
    for attempt in 0..2 {
        let s = Rng::derive_seed(seed, 20 + attempt);
        let a = t_sequence(ideal, &mut Rng::derived(s, 0), cfg)?;
        let b = t_sequence(gin, &mut Rng::derived(s, 1), cfg)?;
        if a.values == b.values {
            return Ok(true);
        }
    }
    Ok(false)
}

fn invariants(
    kind: InstanceKind,
    ideal: &Ideal,
    report: &Report,
    seed: u64,
    cfg: &Config,
    checks: &mut Checks<'_>,
) -> Result<()> {
    if let Some(b) = report.b() {
        checks.record("mu_at_most_b", report.mu <= b);
    }

    // mI : z = I  <=>  mu(I) = mu(image mod z) + l((I:z)/I)
    let mut rng = Rng::derived(seed, 10);
    let z = random_linear_form_with_pivot(ideal.ring(), &mut rng);
    if let Length::Finite(l) = ideal.colon_length(&z) {
        let image = ideal.reduce_mod_linear(&z)?;
        checks.record("m_full_length_identity", ideal.m_full_at(&z) == (ideal.mu() == image.mu() + l));
    }

    if let Some(g) = &report.gin {
        let hilbert_ok = (0..=10).all(|d| ideal.hilbert_value(d) == g.gin.std_monomial_count(d));
        checks.record("gin_hilbert_function", hilbert_ok);

        let gin_ideal = Ideal::from_monomials(ideal.ring(), &g.gin);
        checks.record("gin_t_sequence", t_sequences_match(ideal, &gin_ideal, seed, cfg)?);

        let gin_m_full = is_m_full(&gin_ideal, &mut Rng::derived(seed, 11), cfg)?;
        if report.m_full == Some(true) && gin_m_full {
            checks.record("gin_type", ideal.type_of() == gin_ideal.type_of());
        }
    }

    if report.cmf_b == Some(true) {
        if let Some(t) = &report.t_sequence {
            let mus: Vec<u64> = t.images.iter().map(Ideal::mu).collect();
            let n = ideal.nvars();
            let steps = (0..n).all(|k| {
                let below = if k == 0 { 0 } else { mus[k - 1] };
                mus[k] >= below && t.values[k] == mus[k] - below
            });
            checks.record("completely_m_full_t_values", steps);
            if n >= 2 {
                checks.record(
                    "completely_m_full_type",
                    report.ty == Length::Finite(report.mu - mus[n - 2]),
                );
            }
        }
    }

    if kind.is_monomial() {
        let stable = ideal.lead_ideal().is_stable();
        checks.record("stable_iff_coordinate", stable == coordinate_complete_m_full(ideal)?);
    }
    Ok(())
}

fn describe(e: &Error) -> String {
    e.to_string()
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<VerificationSummary> {
    if opts.trials == 0 {
        return Err(Error::Usage("verify needs at least one trial".into()));
    }
    if opts.vars.is_empty() || opts.vars.iter().any(|&n| n < 2) {
        return Err(Error::Usage("verify needs variable counts of at least 2".into()));
    }
    if opts.max_degree == 0 || opts.max_generators == 0 {
        return Err(Error::Usage("degree and generator bounds must be positive".into()));
    }
    let cfg = &opts.config;
    let mut summary = VerificationSummary {
        seed: opts.seed,
        trials: opts.trials,
        agreements: 0,
        retried: Vec::new(),
        completely_m_full: 0,
        by_kind: BTreeMap::new(),
        invariants: BTreeMap::new(),
        failures: Vec::new(),
    };
    for index in 0..opts.trials {
        let (kind, seed, ideal) = instance(opts, index)?;
        *summary.by_kind.entry(kind).or_default() += 1;
        let fail = |reason: String| Failure {
            index,
            seed,
            kind,
            ideal: format!("{ideal:?}"),
            reason,
        };

        let mut report = match analyze(&ideal, seed, cfg) {
            Ok(r) => r,
            Err(e) => {
                summary.failures.push(fail(describe(&e)));
                continue;
            }
        };
        if !report.consistent() {
            match analyze(&ideal, Rng::derive_seed(seed, 1), cfg) {
                Ok(r) if r.consistent() => {
                    summary.retried.push(index);
                    report = r;
                }
                Ok(r) => {
                    let mut reason = format!("characterizations disagree: {:?}", r.flags());
                    for (name, e) in &r.errors {
                        reason.push_str(&format!("; {name}: {e}"));
                    }
                    summary.failures.push(fail(reason));
                    continue;
                }
                Err(e) => {
                    summary.failures.push(fail(describe(&e)));
                    continue;
                }
            }
        }
        summary.agreements += 1;
        if report.cmf_b == Some(true) {
            summary.completely_m_full += 1;
        }

        let mut checks = Checks {
            tallies: &mut summary.invariants,
            reasons: Vec::new(),
        };
        let outcome = invariants(kind, &ideal, &report, report.seed, cfg, &mut checks);
        let mut reasons = checks.reasons;
        if let Err(e) = outcome {
            reasons.push(describe(&e));
        }
        if !reasons.is_empty() {
            summary.failures.push(fail(format!("invariant violated: {}", reasons.join(", "))));
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(seed: u64, trials: usize) -> VerifyOptions {
        VerifyOptions {
            seed,
            trials,
            vars: vec![2, 3],
            max_degree: 3,
            max_generators: 4,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn small_run_passes() {
        let s = cmd_verify(&opts(3, 24)).unwrap();
        assert!(s.passed(), "{s}");
        assert_eq!(s.agreements, 24);
        assert_eq!(s.by_kind.values().sum::<usize>(), 24);
        assert!(s.invariants["mu_at_most_b"].checked == 24);
        assert!(s.completely_m_full > 0);
    }

    #[test]
    fn deterministic() {
        let a = cmd_verify(&opts(8, 8)).unwrap();
        let b = cmd_verify(&opts(8, 8)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn zero_trials_is_a_usage_error() {
        assert!(matches!(cmd_verify(&opts(1, 0)), Err(Error::Usage(_))));
    }

    #[test]
    fn kinds_cycle() {
        let o = opts(2, 8);
        let kinds: Vec<InstanceKind> = (0..8).map(|k| instance(&o, k).unwrap().0).collect();
        assert_eq!(&kinds[..4], &InstanceKind::ALL);
        assert_eq!(&kinds[4..], &InstanceKind::ALL);
    }
}
