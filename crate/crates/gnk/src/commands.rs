//! Subcommand bodies. Each takes parsed settings and input text and returns
//! the text to print plus a status; `main.rs` only handles argument parsing
//! and process plumbing.

use std::fmt::Write as _;

use gnk_core::hom::{
    f_braid, f_generator, g_word, h, minimality_certificate, phi, FConvention,
    MinimalityCertificate, Z2Word,
};
use gnk_core::relators::{relators_double_prime, relators_prime, Relator};
use gnk_core::solver::{
    equal as solver_equal, is_minimal, parity_signature, reduce as solver_reduce, Gn2Word,
    Reduction, SolverBudget,
};
use gnk_core::tracer::{collinear_events, tangent_events, Trace, TraceError, TraceParams};
use gnk_core::trajectory::{
    standard_generator_trajectory, Trajectory, COLLINEAR_SCALE, DISC_SCALE,
};
use gnk_core::{
    BraidLetter, BraidWord, DomainError, Gn2Generator, Letter, ParseError, PrimeGenerator,
    StrandCount, Word,
};
use thiserror::Error;

use crate::format::{fixed, write_trajectory, FormatError};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// The mathematical answer is negative (unequal, not minimal, failed).
    Negative = 1,
    Usage = 2,
    Budget = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    fn worst(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
}

impl Outcome {
    fn new(text: String, status: Status) -> Self {
        Outcome { text, status }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input line {line}, {source}")]
    Parse { line: usize, source: ParseError },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Settings shared by all subcommands.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub n: StrandCount,
    pub budget: SolverBudget,
    pub params: TraceParams,
}

impl Settings {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Settings {
            n: StrandCount::new(n)?,
            budget: SolverBudget::default(),
            params: TraceParams::default(),
        })
    }
}

fn parse_line<G: Letter>(line: usize, text: &str) -> Result<Word<G>> {
    Word::parse(text).map_err(|source| CliError::Parse { line, source })
}

/// Input lines, where an empty line is the empty word. A final newline
/// terminates the last line rather than starting an empty one.
pub fn input_lines(text: &str) -> impl Iterator<Item = &str> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines = if text.is_empty() {
        None
    } else {
        Some(body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)))
    };
    lines.into_iter().flatten()
}

fn parse_lines<G: Letter>(text: &str, n: StrandCount) -> Result<Vec<Word<G>>> {
    input_lines(text)
        .enumerate()
        .map(|(k, l)| {
            let w = parse_line::<G>(k + 1, l)?;
            w.check_strands(n)?;
            Ok(w)
        })
        .collect()
}

fn parse_braid(text: &str, n: StrandCount) -> Result<BraidWord> {
    let joined = text.lines().collect::<Vec<_>>().join(" ");
    let w = BraidWord::parse(&joined).map_err(|source| CliError::Parse { line: 1, source })?;
    w.check_strands(n)?;
    Ok(w)
}

fn shown<T: std::fmt::Display>(w: &T) -> String {
    let s = w.to_string();
    if s.is_empty() {
        "(empty)".to_string()
    } else {
        s
    }
}

fn write_trace(out: &mut String, r: &Reduction) {
    for m in &r.trace.0 {
        let _ = writeln!(out, "{m}");
    }
}

/// Outcome of reducing a single word: the reduction (certified or not).
fn reduce_word(w: &Gn2Word, budget: SolverBudget) -> (Reduction, Status) {
    match solver_reduce(w, budget) {
        Ok(r) => (r, Status::Ok),
        Err(e) => (e.best, Status::Budget),
    }
}

/// `reduce`: one reduced word per input line. With `trace`, each result is
/// followed by its move trace and a blank line.
pub fn reduce(s: &Settings, input: &str, trace: bool) -> Result<Outcome> {
    let words = parse_lines::<Gn2Generator>(input, s.n)?;
    let mut out = String::new();
    let mut status = Status::Ok;
    for w in &words {
        let (r, st) = reduce_word(w, s.budget);
        status = status.worst(st);
        out.push_str(&r.word.to_string());
        if st == Status::Budget {
            out.push_str("  # budget exceeded, not certified");
        }
        out.push('\n');
        if trace {
            write_trace(&mut out, &r);
            out.push('\n');
        }
    }
    Ok(Outcome::new(out, status))
}

/// `equal`: compares the first two lines.
pub fn equal(s: &Settings, input: &str, trace: bool) -> Result<Outcome> {
    let words = parse_lines::<Gn2Generator>(input, s.n)?;
    let [a, b] = words.as_slice() else {
        return Err(CliError::Usage(format!(
            "equal expects exactly two words, got {}",
            words.len()
        )));
    };
    let mut out = String::new();
    let status = match solver_equal(a, b, s.budget) {
        Ok(true) => {
            out.push_str("equal\n");
            Status::Ok
        }
        Ok(false) => {
            out.push_str("unequal\n");
            Status::Negative
        }
        Err(_) => {
            out.push_str("unknown (budget exceeded)\n");
            Status::Budget
        }
    };
    if trace {
        let (r, _) = reduce_word(&a.concat(&b.inverse()), s.budget);
        write_trace(&mut out, &r);
    }
    Ok(Outcome::new(out, status))
}

/// `minimal`: one verdict per line; status is negative if any word is not
/// minimal.
pub fn minimal(s: &Settings, input: &str) -> Result<Outcome> {
    let words = parse_lines::<Gn2Generator>(input, s.n)?;
    let mut out = String::new();
    let mut status = Status::Ok;
    for w in &words {
        let (line, st) = match is_minimal(w, s.budget) {
            Ok(true) => ("minimal", Status::Ok),
            Ok(false) => ("not minimal", Status::Negative),
            Err(_) => ("unknown (budget exceeded)", Status::Budget),
        };
        status = status.worst(st);
        let _ = writeln!(out, "{line}");
    }
    Ok(Outcome::new(out, status))
}

/// `certify`: the sufficient minimality condition on prime words.
pub fn certify(s: &Settings, input: &str) -> Result<Outcome> {
    let words = parse_lines::<PrimeGenerator>(input, s.n)?;
    let mut out = String::new();
    let mut status = Status::Ok;
    for w in &words {
        let c = minimality_certificate(w, s.budget);
        status = status.worst(match c {
            MinimalityCertificate::Minimal => Status::Ok,
            MinimalityCertificate::Unknown {
                budget_exceeded: false,
            } => Status::Negative,
            MinimalityCertificate::Unknown {
                budget_exceeded: true,
            } => Status::Budget,
        });
        let _ = writeln!(out, "{c}");
    }
    Ok(Outcome::new(out, status))
}

pub fn phi_lines(s: &Settings, input: &str) -> Result<Outcome> {
    let words = parse_lines::<PrimeGenerator>(input, s.n)?;
    let out = words.iter().map(|w| format!("{}\n", phi(w))).collect();
    Ok(Outcome::new(out, Status::Ok))
}

pub fn h_lines(s: &Settings, input: &str) -> Result<Outcome> {
    let words = parse_lines::<gnk_core::DoublePrimeGenerator>(input, s.n)?;
    let out = words.iter().map(|w| format!("{}\n", h(w))).collect();
    Ok(Outcome::new(out, Status::Ok))
}

/// `g-apply`: the automorphism of the first input line, or its value on
/// `on` when given.
pub fn g_apply(s: &Settings, input: &str, on: Option<&str>) -> Result<Outcome> {
    let words = parse_lines::<PrimeGenerator>(input, s.n)?;
    let w = words.into_iter().next().unwrap_or_default();
    let g = g_word(&w, s.n);
    let text = match on {
        Some(z) => {
            let z: Z2Word = parse_line(1, z)?;
            z.check_strands(s.n)?;
            format!("{}\n", g.apply(&z))
        }
        None => g.to_string(),
    };
    Ok(Outcome::new(text, Status::Ok))
}

pub fn f_gen(s: &Settings, i: usize, j: usize, conv: FConvention) -> Result<Outcome> {
    let w = f_generator(i, j, s.n, conv, &s.params)?;
    Ok(Outcome::new(format!("{w}\n"), Status::Ok))
}

/// `phi-braid`: `Φ` of each input line (a braid word).
pub fn phi_braid(s: &Settings, input: &str, conv: FConvention) -> Result<Outcome> {
    let mut out = String::new();
    for (k, line) in input_lines(input).enumerate() {
        let b = BraidWord::parse(line).map_err(|source| CliError::Parse {
            line: k + 1,
            source,
        })?;
        let _ = writeln!(out, "{}", phi(&f_braid(&b, s.n, conv, &s.params)?));
    }
    Ok(Outcome::new(out, Status::Ok))
}

/// `invariant`: the full pipeline for one braid word.
pub fn invariant(s: &Settings, input: &str, conv: FConvention) -> Result<Outcome> {
    let b = parse_braid(input, s.n)?;
    let f = f_braid(&b, s.n, conv, &s.params)?;
    let img = phi(&f);
    let (r, status) = reduce_word(&img, s.budget);
    let verdict = match (status, r.word.is_empty()) {
        (Status::Budget, _) => "unknown (budget exceeded)",
        (_, true) => "trivial",
        (_, false) => "nontrivial",
    };
    let mut out = String::new();
    let _ = writeln!(out, "braid: {}", shown(&b));
    let _ = writeln!(out, "source: {conv}");
    let _ = writeln!(out, "f: {}", shown(&f));
    let _ = writeln!(out, "Phi: {}", shown(&img));
    let _ = writeln!(out, "Phi length: {}", img.len());
    let _ = writeln!(out, "reduced: {}", shown(&r.word));
    let _ = writeln!(out, "reduced length: {}", r.word.len());
    let _ = writeln!(out, "certified: {}", r.certified);
    let _ = writeln!(out, "parity: {}", parity_signature(&img));
    let _ = writeln!(out, "verdict: {verdict}");
    Ok(Outcome::new(out, status))
}

/// Relators checked by `check-relators`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Phi,
    H,
    G,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::Phi => "phi",
            Target::H => "h",
            Target::G => "g",
        }
    }
}

/// Relator sample used when not checking exhaustively.
pub const DEFAULT_SAMPLE: usize = 200;

/// Evenly spaced selection of `k` items, keeping the list order. Since
/// relators are grouped by kind, every kind with at least
/// `len / k` members is represented.
pub fn even_sample<T: Clone>(items: &[T], k: usize) -> Vec<T> {
    if items.len() <= k {
        return items.to_vec();
    }
    (0..k).map(|m| items[m * items.len() / k].clone()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
enum Check {
    Pass,
    Fail,
    #[default]
    Indeterminate,
}

fn check_gn2(img: &Gn2Word, budget: SolverBudget) -> Check {
    match solver_reduce(img, budget) {
        Ok(r) if r.word.is_empty() => Check::Pass,
        Ok(_) => Check::Fail,
        Err(_) => Check::Indeterminate,
    }
}

/// Run `check` on every item on a small worker pool; results keep the
/// input order.
fn parallel_map<T: Sync, R: Send + Default + Clone>(
    items: &[T],
    check: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    let workers = std::thread::available_parallelism()
        .map(|w| w.get())
        .unwrap_or(1)
        .clamp(1, 16);
    let chunk = items.len().div_ceil(workers).max(1);
    let mut results = vec![R::default(); items.len()];
    std::thread::scope(|scope| {
        for (src, dst) in items.chunks(chunk).zip(results.chunks_mut(chunk)) {
            let check = &check;
            scope.spawn(move || {
                for (x, r) in src.iter().zip(dst.iter_mut()) {
                    *r = check(x);
                }
            });
        }
    });
    results
}

/// `check-relators`: per-relator verdicts and a total line. `sample` of
/// `None` means exhaustive.
pub fn check_relators(s: &Settings, target: Target, sample: Option<usize>) -> Result<Outcome> {
    fn rows<G: Letter + Sync>(
        rels: Vec<Relator<G>>,
        sample: Option<usize>,
        check: impl Fn(&Word<G>) -> Check + Sync,
    ) -> Vec<(String, String, Check)> {
        let rels = match sample {
            Some(k) => even_sample(&rels, k),
            None => rels,
        };
        let verdicts = parallel_map(&rels, |r| check(&r.word));
        rels.iter()
            .zip(verdicts)
            .map(|(r, v)| (r.kind.label().to_string(), r.word.to_string(), v))
            .collect()
    }

    let budget = s.budget;
    let n = s.n;
    let table = match target {
        Target::Phi => rows(relators_prime(n), sample, |w| check_gn2(&phi(w), budget)),
        Target::H => rows(relators_double_prime(n), sample, |w| {
            check_gn2(&h(w), budget)
        }),
        Target::G => rows(relators_prime(n), sample, |w| {
            if g_word(w, n).is_identity() {
                Check::Pass
            } else {
                Check::Fail
            }
        }),
    };

    let mut out = String::new();
    let scope = match sample {
        Some(k) => format!("sample {k}"),
        None => "exhaustive".to_string(),
    };
    let _ = writeln!(
        out,
        "# check-relators {} n={} {scope}",
        target.label(),
        n.get()
    );
    let (mut pass, mut fail, mut indet) = (0, 0, 0);
    let mut kinds: Vec<(String, usize)> = Vec::new();
    for (kind, word, v) in &table {
        let label = match v {
            Check::Pass => {
                pass += 1;
                "pass"
            }
            Check::Fail => {
                fail += 1;
                "FAIL"
            }
            Check::Indeterminate => {
                indet += 1;
                "indeterminate"
            }
        };
        match kinds.last_mut() {
            Some((k, c)) if k == kind => *c += 1,
            _ => kinds.push((kind.clone(), 1)),
        }
        let _ = writeln!(out, "{label}\t{kind}\t{word}");
    }
    let by_kind: Vec<String> = kinds.iter().map(|(k, c)| format!("{k}={c}")).collect();
    let _ = writeln!(out, "kinds: {}", by_kind.join(" "));
    let _ = writeln!(
        out,
        "total {} pass {pass} fail {fail} indeterminate {indet}",
        table.len()
    );
    let status = if fail > 0 {
        Status::Negative
    } else if indet > 0 {
        Status::Budget
    } else {
        Status::Ok
    };
    Ok(Outcome::new(out, status))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Collinear,
    Tangent,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Collinear => "collinear",
            Mode::Tangent => "tangent",
        }
    }

    pub fn scale(self) -> f64 {
        match self {
            Mode::Collinear => COLLINEAR_SCALE,
            Mode::Tangent => DISC_SCALE,
        }
    }
}

fn write_events<G: Letter>(out: &mut String, tr: &Trace<G>) {
    for e in &tr.events {
        let _ = writeln!(out, "event {e}");
    }
    let _ = writeln!(out, "events: {}", tr.events.len());
    let _ = writeln!(out, "word: {}", tr.word);
    out.push_str(&tr.report.to_string());
}

/// `trace`: events, word and genericity verdict of a trajectory.
pub fn trace(s: &Settings, traj: &Trajectory, mode: Mode) -> Result<Outcome> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "mode {} n={} scale={} samples={} tol={:e}",
        mode.label(),
        traj.strands().get(),
        fixed(traj.scale()),
        traj.sample_count(),
        s.params.tol
    );
    let base: Vec<String> = traj
        .start()
        .iter()
        .map(|p| format!("({},{})", fixed(p.x), fixed(p.y)))
        .collect();
    let _ = writeln!(
        out,
        "basepoints: {} ({})",
        base.join(" "),
        if traj.starts_at_basepoints() {
            "standard"
        } else {
            "non-standard"
        }
    );
    let good = match mode {
        Mode::Collinear => {
            let tr = collinear_events(traj, &s.params);
            write_events(&mut out, &tr);
            tr.report.is_good()
        }
        Mode::Tangent => {
            let tr = tangent_events(traj, &s.params)?;
            write_events(&mut out, &tr);
            tr.report.is_good()
        }
    };
    Ok(Outcome::new(
        out,
        if good { Status::Ok } else { Status::Negative },
    ))
}

/// `gen-trajectory`: the standard trajectory of `b_{ij}^{±1}`, optionally
/// followed by the trajectory of a braid word.
pub fn gen_trajectory(
    s: &Settings,
    (i, j): (usize, usize),
    inverse: bool,
    concat: Option<&str>,
    scale: f64,
) -> Result<(Trajectory, Outcome)> {
    let b = BraidLetter::new(i, j, inverse, s.n)?;
    let mut letters = vec![b];
    if let Some(text) = concat {
        letters.extend_from_slice(parse_braid(text, s.n)?.letters());
    }
    let pieces = letters
        .iter()
        .map(|b| {
            let (i, j) = b.strands();
            let t = standard_generator_trajectory(s.n, i, j, scale)?;
            Ok(if b.is_inverse() { t.inverse() } else { t })
        })
        .collect::<std::result::Result<Vec<_>, DomainError>>()?;
    let t = Trajectory::chain(&pieces)?;
    let text = write_trajectory(&t);
    Ok((t, Outcome::new(text, Status::Ok)))
}

/// `discrepancy`: the algebraic and traced definitions of `f(b_{ij})` side
/// by side.
pub fn discrepancy(s: &Settings, i: usize, j: usize) -> Result<Outcome> {
    let b = BraidWord::new(vec![BraidLetter::new(i, j, false, s.n)?]);
    let mut out = String::new();
    let mut status = Status::Ok;
    let _ = writeln!(out, "# discrepancy n={} {b}", s.n.get());

    let mut images = Vec::new();
    for conv in FConvention::ALL {
        let f = f_braid(&b, s.n, conv, &s.params)?;
        let img = phi(&f);
        let (r, st) = reduce_word(&img, s.budget);
        status = status.worst(st);
        let trivial = match st {
            Status::Budget => "unknown",
            _ if r.word.is_empty() => "yes",
            _ => "no",
        };
        let _ = writeln!(out, "{conv} f: {}", shown(&f));
        let _ = writeln!(out, "{conv} Phi: {}", shown(&img));
        let _ = writeln!(out, "{conv} reduced: {}", shown(&r.word));
        let _ = writeln!(out, "{conv} parity: {}", parity_signature(&img));
        let _ = writeln!(out, "{conv} trivial: {trivial}");
        images.push((conv, img, trivial));
    }

    let mut disagree = false;
    for a in 0..images.len() {
        for c in a + 1..images.len() {
            let (ca, wa, _) = &images[a];
            let (cc, wc, _) = &images[c];
            let verdict = match solver_equal(wa, wc, s.budget) {
                Ok(true) => "equal",
                Ok(false) => {
                    if *cc == FConvention::Geometric || *ca == FConvention::Geometric {
                        disagree = true;
                    }
                    "unequal"
                }
                Err(_) => {
                    status = Status::Budget;
                    "unknown"
                }
            };
            let _ = writeln!(out, "{ca} vs {cc}: {verdict}");
        }
    }
    let algebraic_trivial = images[..2].iter().all(|(_, _, t)| *t == "yes");
    let traced_trivial = images[2].2;
    let _ = writeln!(out, "mismatch: {}", if disagree { "yes" } else { "no" });
    if disagree && algebraic_trivial && traced_trivial == "no" {
        let _ = writeln!(
            out,
            "note: both algebraic conventions give the trivial element, the traced generator does not"
        );
    }
    Ok(Outcome::new(out, status))
}
