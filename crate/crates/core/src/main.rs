use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mfull::cli::commands::{
    cmd_analyze, cmd_betti, cmd_gb, cmd_gin, cmd_hilbert, cmd_verify_output, Options, Output,
    VerifyArgs, DEFAULT_HILBERT_DEGREE, DEFAULT_MAX_DEGREE, EXIT_USAGE,
};
use mfull::Error;

/// m-full, completely m-full and componentwise linear ideals over F_p.
#[derive(Parser)]
#[command(name = "mfull", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random linear forms tried per decision.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Read coefficients modulo this prime instead of the header's.
    #[arg(long)]
    field: Option<u64>,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Input {
    /// Ideal description; standard input when omitted.
    file: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
    /// Random coordinate changes for the generic initial ideal.
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Reject generators above this degree.
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant and the four characterizations.
    Analyze(Input),
    /// Reduced Gröbner basis in grevlex.
    Gb(Input),
    /// Generic initial ideal.
    Gin(Input),
    /// Graded Betti numbers of R/I.
    Betti(Input),
    /// Hilbert function of R/I.
    Hilbert {
        #[command(flatten)]
        input: Input,
        /// Last degree tabulated.
        #[arg(long, default_value_t = DEFAULT_HILBERT_DEGREE)]
        up_to: u32,
    },
    /// Cross-check the characterizations on random ideals.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Number of random instances.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Variable counts to draw from.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        vars: Vec<usize>,
        /// Top generator degree per instance.
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Most generators per instance.
        #[arg(long, default_value_t = 5)]
        max_generators: usize,
        /// Random coordinate changes for each generic initial ideal.
        #[arg(long, default_value_t = 3)]
        gin_trials: usize,
    },
}

fn options(common: &Common, gin_trials: usize) -> Options {
    Options {
        seed: common.seed,
        gin_trials,
        samples: common.samples,
        field: common.field,
        json: common.json,
        ..Options::default()
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String, Output> {
    let read = match file {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| e.to_string())
        }
    };
    read.map_err(|e| Output::error(&Error::Usage(e)))
}

fn with_input(input: &Input, up_to: Option<u32>, f: fn(&str, &Options) -> Output) -> Output {
    let mut opts = options(&input.common, input.trials);
    opts.max_degree = input.max_degree;
    if let Some(d) = up_to {
        opts.up_to = d;
    }
    match read_input(&input.file) {
        Ok(text) => f(&text, &opts),
        Err(out) => out,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let out = match &cli.command {
        Command::Analyze(input) => with_input(input, None, cmd_analyze),
        Command::Gb(input) => with_input(input, None, cmd_gb),
        Command::Gin(input) => with_input(input, None, cmd_gin),
        Command::Betti(input) => with_input(input, None, cmd_betti),
        Command::Hilbert { input, up_to } => with_input(input, Some(*up_to), cmd_hilbert),
        Command::Verify {
            common,
            trials,
            vars,
            max_degree,
            max_generators,
            gin_trials,
        } => {
            let args = VerifyArgs {
                trials: *trials,
                vars: vars.clone(),
                max_degree: *max_degree,
                max_generators: *max_generators,
            };
            cmd_verify_output(&args, &options(common, *gin_trials))
        }
    };
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
