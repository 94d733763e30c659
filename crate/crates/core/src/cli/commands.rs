//! The subcommands, as functions from input text and options to output
//! and an exit code.

use serde::Serialize;

use crate::analysis::{analyze, stream, Config};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Rng};
use crate::gin::gin;
use crate::homology::{betti_table_with_regularity, homological_profile_from_table, regularity_with_gin};
use crate::ideal::Ideal;

use super::parse::{check_degrees, parse_with_field, IdealDocument};
use super::report::{analysis_text, format_rows, AnalysisJson, RingJson};
use super::verify::{cmd_verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

pub const DEFAULT_MAX_DEGREE: u32 = 12;
pub const DEFAULT_HILBERT_DEGREE: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub gin_trials: usize,
    pub samples: usize,
    pub field: Option<u64>,
    pub json: bool,
    pub max_degree: u32,
    pub up_to: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 1,
            gin_trials: 3,
            samples: 3,
            field: None,
            json: false,
            max_degree: DEFAULT_MAX_DEGREE,
            up_to: DEFAULT_HILBERT_DEGREE,
        }
    }
}

impl Options {
    fn config(&self) -> Result<Config> {
        if self.samples == 0 {
            return Err(Error::Usage("--samples must be positive".into()));
        }
        Ok(Config {
            samples: self.samples,
            gin_trials: self.gin_trials,
            ..Config::default()
        })
    }

    fn field(&self) -> Result<Option<PrimeField>> {
        self.field.map(PrimeField::new).transpose()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    pub fn error(e: &Error) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn load(input: &str, opts: &Options) -> Result<Ideal> {
    let doc: IdealDocument = parse_with_field(input, opts.field()?)?;
    check_degrees(&doc, opts.max_degree)?;
    Ok(doc.ideal())
}

fn run(f: impl FnOnce() -> Result<Output>) -> Output {
    f().unwrap_or_else(|e| Output::error(&e))
}

pub fn cmd_analyze(input: &str, opts: &Options) -> Output {
    run(|| {
        let ideal = load(input, opts)?;
        let report = analyze(&ideal, opts.seed, &opts.config()?)?;
        let stdout = if opts.json {
            to_json(&AnalysisJson::new(&ideal, &report))
        } else {
            analysis_text(&ideal, &report)
        };
        let mut out = Output::ok(stdout);
        for (name, e) in &report.errors {
            out.stderr.push_str(&format!("warning: {name}: {e}\n"));
        }
        if !report.consistent() {
            out.stderr.push_str("the four characterizations disagree\n");
            out.code = EXIT_INCONSISTENT;
        }
        Ok(out)
    })
}

#[derive(Serialize)]
struct GbJson {
    ring: RingJson,
    groebner_basis: Vec<String>,
}

pub fn cmd_gb(input: &str, opts: &Options) -> Output {
    run(|| {
        let ideal = load(input, opts)?;
        let ring = ideal.ring();
        let basis: Vec<String> = ideal.groebner().elements().iter().map(|g| ring.format(g)).collect();
        Ok(Output::ok(if opts.json {
            to_json(&GbJson {
                ring: RingJson::of(ring),
                groebner_basis: basis,
            })
        } else {
            basis.iter().map(|g| format!("{g}\n")).collect()
        }))
    })
}

#[derive(Serialize)]
struct GinJson {
    ring: RingJson,
    gin: Vec<String>,
    stable: bool,
    agreement: bool,
    trials_used: usize,
    seed: u64,
}

fn gin_of(ideal: &Ideal, opts: &Options) -> Result<crate::gin::GinResult> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::DegenerateIdeal);
    }
    gin(ideal, &mut Rng::derived(opts.seed, stream::GIN), opts.gin_trials)
}

pub fn cmd_gin(input: &str, opts: &Options) -> Output {
    run(|| {
        let ideal = load(input, opts)?;
        let ring = ideal.ring();
        let g = gin_of(&ideal, opts)?;
        let gens: Vec<String> = g.gin.generators().iter().map(|m| ring.format_monomial(m)).collect();
        Ok(Output::ok(if opts.json {
            to_json(&GinJson {
                ring: RingJson::of(ring),
                gin: gens,
                stable: g.gin.is_stable(),
                agreement: g.agreement,
                trials_used: g.trials_used,
                seed: opts.seed,
            })
        } else {
            let mut s: String = gens.iter().map(|m| format!("{m}\n")).collect();
            s.push_str(&format_rows(&[
                ("stable", g.gin.is_stable().to_string()),
                ("agreement", g.agreement.to_string()),
                ("trials", g.trials_used.to_string()),
            ]));
            s
        }))
    })
}

#[derive(Serialize)]
struct BettiJson {
    ring: RingJson,
    regularity: u32,
    projective_dimension: usize,
    depth: usize,
    cohen_macaulay: bool,
    gorenstein: bool,
    betti: Vec<[u64; 3]>,
    seed: u64,
}

pub fn cmd_betti(input: &str, opts: &Options) -> Output {
    run(|| {
        let ideal = load(input, opts)?;
        let g = gin_of(&ideal, opts)?;
        let reg = regularity_with_gin(&ideal, &g.gin)?;
        let table = betti_table_with_regularity(&ideal, reg);
        let p = homological_profile_from_table(&ideal, &table)?;
        Ok(Output::ok(if opts.json {
            to_json(&BettiJson {
                ring: RingJson::of(ideal.ring()),
                regularity: reg,
                projective_dimension: p.projective_dimension,
                depth: p.depth,
                cohen_macaulay: p.cohen_macaulay,
                gorenstein: p.gorenstein,
                betti: table
                    .triples()
                    .into_iter()
                    .map(|(i, j, v)| [i as u64, j as u64, v])
                    .collect(),
                seed: opts.seed,
            })
        } else {
            let mut s = table.to_string();
            s.push_str(&format_rows(&[
                ("regularity", reg.to_string()),
                ("projective dimension", p.projective_dimension.to_string()),
                ("depth", p.depth.to_string()),
                ("Cohen-Macaulay", p.cohen_macaulay.to_string()),
                ("Gorenstein", p.gorenstein.to_string()),
            ]));
            s
        }))
    })
}

#[derive(Serialize)]
struct HilbertJson {
    ring: RingJson,
    values: Vec<u64>,
    numerator: Vec<i64>,
    stable_from: u32,
}

pub fn cmd_hilbert(input: &str, opts: &Options) -> Output {
    run(|| {
        let ideal = load(input, opts)?;
        let h = ideal.hilbert(opts.up_to);
        Ok(Output::ok(if opts.json {
            to_json(&HilbertJson {
                ring: RingJson::of(ideal.ring()),
                values: h.values.clone(),
                numerator: h.numerator.clone(),
                stable_from: h.stable_from,
            })
        } else {
            let mut rows: Vec<(String, String)> = h
                .values
                .iter()
                .enumerate()
                .map(|(d, v)| (format!("H({d})"), v.to_string()))
                .collect();
            let num: Vec<String> = h.numerator.iter().map(i64::to_string).collect();
            rows.push(("numerator".into(), num.join(" ")));
            rows.push(("polynomial from".into(), h.stable_from.to_string()));
            let rows: Vec<(&str, String)> = rows.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
            format_rows(&rows)
        }))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyArgs {
    pub trials: usize,
    pub vars: Vec<usize>,
    pub max_degree: u32,
    pub max_generators: usize,
}

pub fn cmd_verify_output(args: &VerifyArgs, opts: &Options) -> Output {
    run(|| {
        let mut config = opts.config()?;
        config.homology = false;
        let vopts = VerifyOptions {
            seed: opts.seed,
            trials: args.trials,
            vars: args.vars.clone(),
            max_degree: args.max_degree,
            max_generators: args.max_generators,
            field: opts.field()?.unwrap_or_default(),
            config,
        };
        let summary = cmd_verify(&vopts)?;
        let mut out = Output::ok(if opts.json {
            to_json(&summary)
        } else {
            summary.to_string()
        });
        if !summary.passed() {
            out.code = EXIT_INCONSISTENT;
        }
        Ok(out)
    })
}
