// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gnk_core::hom::FConvention;
use gnk_core::solver::SolverBudget;

use gnk::commands::{self, CliError, Mode, Outcome, Settings, Status, Target};
use gnk::format::read_trajectory;
use gnk::manifest::{sha256_hex, RunManifest};

/// Words, relators, invariants and event tracing for the groups G_n^k.
///
/// Word arguments use the token grammar `a'[i,j,k]`, `a[i,j,k]`,
/// `a''[i,j,k]`, `A[(u1,v1),(u2,v2)]`, `x[u,v]`, `b[i,j]`, `b[i,j]^-1`.
/// Commands that take words read them from the arguments if given,
/// otherwise from standard input, one word per line.
///
/// Exit status: 0 success, 1 negative answer, 2 usage or input error,
/// 3 solver budget exhausted.
#[derive(Parser, Debug)]
#[command(name = "gnk", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Number of strands.
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,
    /// Cap on words visited by one solver call.
    #[arg(long, global = true, env = "GNK_BUDGET_VISITED",
          default_value_t = SolverBudget::DEFAULT_VISITED)]
    budget_visited: usize,
    /// Longest word the solver accepts.
    #[arg(long, global = true, env = "GNK_BUDGET_LENGTH",
          default_value_t = SolverBudget::DEFAULT_LENGTH)]
    budget_length: usize,
    /// Event time accuracy for the tracer.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Write a JSON run manifest here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    Statement,
    Proof,
    Geometric,
}

impl From<Source> for FConvention {
    fn from(s: Source) -> Self {
        match s {
            Source::Statement => FConvention::Statement,
            Source::Proof => FConvention::Proof,
            Source::Geometric => FConvention::Geometric,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Phi,
    H,
    G,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Collinear,
    Tangent,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Collinear => Mode::Collinear,
            ModeArg::Tangent => Mode::Tangent,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f, Phi, reduced Phi and a triviality verdict for a braid word.
    Invariant {
        #[arg(long, value_enum, default_value = "geometric")]
        source: Source,
        braid: Vec<String>,
    },
    /// Minimal-length representatives of G^2 words.
    Reduce {
        /// Print the move trace after each word.
        #[arg(long)]
        trace: bool,
        words: Vec<String>,
    },
    /// Decide whether two G^2 words are equal.
    Equal {
        #[arg(long)]
        trace: bool,
        words: Vec<String>,
    },
    /// Decide whether G^2 words have minimal length.
    Minimal {
        /// Treat the words as prime words and apply the sufficient
        /// condition through phi.
        #[arg(long)]
        prime: bool,
        words: Vec<String>,
    },
    /// phi of prime words.
    Phi { words: Vec<String> },
    /// h of double-prime words.
    H { words: Vec<String> },
    /// Action of a prime word on the free product of Z_2's.
    GApply {
        /// Apply the action to this x[u,v] word instead of listing it.
        #[arg(long)]
        on: Option<String>,
        word: Vec<String>,
    },
    /// f(b_ij) under one convention.
    FGen {
        #[arg(long = "conv", value_enum, default_value = "geometric")]
        conv: Source,
        i: usize,
        j: usize,
    },
    /// Phi of braid words, one per line.
    PhiBraid {
        #[arg(long, value_enum, default_value = "geometric")]
        source: Source,
        words: Vec<String>,
    },
    /// Verify that a map kills every relator of its source group.
    CheckRelators {
        #[arg(value_enum)]
        target: TargetArg,
        /// Check an evenly spaced sample of this many relators.
        #[arg(long, conflicts_with = "all")]
        sample: Option<usize>,
        /// Check every relator even for n > 4.
        #[arg(long)]
        all: bool,
    },
    /// Detect events in a trajectory file.
    Trace {
        #[arg(long, value_enum, default_value = "collinear")]
        mode: ModeArg,
        #[arg(long)]
        input: PathBuf,
    },
    /// Write the standard trajectory of a generator.
    GenTrajectory {
        /// Generator as `i,j`.
        #[arg(long, value_parser = parse_pair)]
        gen: (usize, usize),
        #[arg(long)]
        inverse: bool,
        /// Braid word appended after the generator.
        #[arg(long)]
        concat: Option<String>,
        /// Basepoint scale of this model.
        #[arg(long, value_enum, default_value = "collinear")]
        mode: ModeArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Compare the algebraic and traced f(b_ij).
    Discrepancy { i: usize, j: usize },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected i,j, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Invariant { .. } => "invariant",
            Command::Reduce { .. } => "reduce",
            Command::Equal { .. } => "equal",
            Command::Minimal { .. } => "minimal",
            Command::Phi { .. } => "phi",
            Command::H { .. } => "h",
            Command::GApply { .. } => "g-apply",
            Command::FGen { .. } => "f-gen",
            Command::PhiBraid { .. } => "phi-braid",
            Command::CheckRelators { .. } => "check-relators",
            Command::Trace { .. } => "trace",
            Command::GenTrajectory { .. } => "gen-trajectory",
            Command::Discrepancy { .. } => "discrepancy",
        }
    }
}

/// Words from the arguments (one per argument) or from stdin.
fn word_input(args: &[String], consumed: &mut Vec<u8>) -> anyhow::Result<String> {
    if !args.is_empty() {
        let mut text = args.join("\n");
        text.push('\n');
        consumed.extend_from_slice(text.as_bytes());
        return Ok(text);
    }
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .context("reading standard input")?;
    consumed.extend_from_slice(text.as_bytes());
    Ok(text)
}

/// Several arguments spelling one word, e.g. `b[1,2] b[2,3]` unquoted.
fn single_word(args: &[String]) -> Vec<String> {
    if args.is_empty() {
        Vec::new()
    } else {
        vec![args.join(" ")]
    }
}

fn run(
    cli: &Cli,
    input: &mut Vec<u8>,
    written: &mut Option<Vec<u8>>,
) -> anyhow::Result<Result<Outcome, CliError>> {
    let mut s = match Settings::new(cli.global.n) {
        Ok(s) => s,
        Err(e) => return Ok(Err(e)),
    };
    s.budget = match SolverBudget::new(cli.global.budget_visited, cli.global.budget_length) {
        Some(b) => b,
        None => return Ok(Err(CliError::Usage("budgets must be positive".into()))),
    };
    if !(cli.global.tol > 0.0) {
        return Ok(Err(CliError::Usage("--tol must be positive".into())));
    }
    s.params.tol = cli.global.tol;

    Ok(match &cli.command {
        Command::Invariant { source, braid } => {
            let text = word_input(&single_word(braid), input)?;
            commands::invariant(&s, &text, (*source).into())
        }
        Command::Reduce { trace, words } => {
            commands::reduce(&s, &word_input(words, input)?, *trace)
        }
        Command::Equal { trace, words } => commands::equal(&s, &word_input(words, input)?, *trace),
        Command::Minimal { prime, words } => {
            let text = word_input(words, input)?;
            if *prime {
                commands::certify(&s, &text)
            } else {
                commands::minimal(&s, &text)
            }
        }
        Command::Phi { words } => commands::phi_lines(&s, &word_input(words, input)?),
        Command::H { words } => commands::h_lines(&s, &word_input(words, input)?),
        Command::GApply { on, word } => {
            let text = word_input(&single_word(word), input)?;
            commands::g_apply(&s, &text, on.as_deref())
        }
        Command::FGen { conv, i, j } => commands::f_gen(&s, *i, *j, (*conv).into()),
        Command::PhiBraid { source, words } => {
            commands::phi_braid(&s, &word_input(words, input)?, (*source).into())
        }
        Command::CheckRelators {
            target,
            sample,
            all,
        } => {
            let target = match target {
                TargetArg::Phi => Target::Phi,
                TargetArg::H => Target::H,
                TargetArg::G => Target::G,
            };
            let sample = match (sample, all) {
                (Some(k), _) => Some(*k),
                (None, true) => None,
                (None, false) if s.n.get() > 4 => Some(commands::DEFAULT_SAMPLE),
                (None, false) => None,
            };
            commands::check_relators(&s, target, sample)
        }
        Command::Trace { mode, input: path } => {
            let bytes =
                std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            input.extend_from_slice(&bytes);
            let text = String::from_utf8_lossy(&bytes);
            match read_trajectory(&text) {
                Ok(t) => {
                    s.n = t.strands();
                    commands::trace(&s, &t, (*mode).into())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::GenTrajectory {
            gen,
            inverse,
            concat,
            mode,
            output,
        } => {
            let scale = Mode::from(*mode).scale();
            match commands::gen_trajectory(&s, *gen, *inverse, concat.as_deref(), scale) {
                Ok((_, outcome)) => match output {
                    Some(path) => {
                        std::fs::write(path, &outcome.text)
                            .with_context(|| format!("writing {}", path.display()))?;
                        *written = Some(outcome.text.into_bytes());
                        Ok(Outcome {
                            text: String::new(),
                            status: outcome.status,
                        })
                    }
                    None => Ok(outcome),
                },
                Err(e) => Err(e),
            }
        }
        Command::Discrepancy { i, j } => commands::discrepancy(&s, *i, *j),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut input = Vec::new();
    let mut written = None;
    let (text, status) = match run(&cli, &mut input, &mut written) {
        Ok(Ok(outcome)) => (outcome.text, outcome.status),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            (String::new(), Status::Usage)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            (String::new(), Status::Usage)
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(Status::Usage.code());
    }

    if let Some(path) = &cli.global.manifest {
        let g = &cli.global;
        let parameters = BTreeMap::from([
            ("n".to_string(), g.n.to_string()),
            ("budget_visited".to_string(), g.budget_visited.to_string()),
            ("budget_length".to_string(), g.budget_length.to_string()),
            ("tol".to_string(), format!("{:e}", g.tol)),
        ]);
        let mut manifest = RunManifest::new(
            cli.command.name(),
            std::env::args().skip(1).collect(),
            parameters,
            &input,
            text.as_bytes(),
            status.code(),
            start.elapsed(),
        );
        manifest.output_file_sha256 = written.as_deref().map(sha256_hex);
        if let Err(e) = manifest.write(path) {
            eprintln!("error: writing manifest {}: {e}", path.display());
            return ExitCode::from(Status::Usage.code());
        }
    }
    ExitCode::from(status.code())
}
