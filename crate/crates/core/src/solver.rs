//! Minimality and word problem for `G_{n(n-1)}^2`.
//!
//! A word is of minimal length iff no word reachable from it by far
//! commutativity and exchange moves contains two equal adjacent letters.
//! The set of words reachable at fixed length is finite, so a breadth-first
//! closure decides it. [`reduce`] alternates closures with cancellations
//! until a closure is exhausted.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::hash::BuildHasher;

use hashbrown::hash_table::{Entry, HashTable};
use hashbrown::DefaultHashBuilder;

use crate::generator::Gn2Generator;
use crate::word::Word;

pub type Gn2Word = Word<Gn2Generator>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Delete the equal pair at `position, position+1`.
    Cancel,
    /// Swap the far-commuting pair at `position, position+1`.
    Commute,
    /// Reverse the triangle `a_{p,q} a_{p,r} a_{q,r}` starting at
    /// `position`; "left" when the letter shared by the first two
    /// generators is smaller than the one shared by the last two.
    ExchangeLeft,
    ExchangeRight,
}

impl MoveKind {
    pub fn label(self) -> &'static str {
        match self {
            MoveKind::Cancel => "cancel",
            MoveKind::Commute => "commute",
            MoveKind::ExchangeLeft => "exchange-left",
            MoveKind::ExchangeRight => "exchange-right",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Some(match s {
            "cancel" => MoveKind::Cancel,
            "commute" => MoveKind::Commute,
            "exchange-left" => MoveKind::ExchangeLeft,
            "exchange-right" => MoveKind::ExchangeRight,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub position: usize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.kind.label(), self.position)
    }
}

/// Sequence of moves leading from a solver input to its output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveTrace(pub Vec<Move>);

impl MoveTrace {
    /// Apply the moves in order, checking each one is legal.
    pub fn replay(&self, word: &Gn2Word) -> Option<Gn2Word> {
        let mut w = word.letters().to_vec();
        for &m in &self.0 {
            w = apply_move(&w, m)?;
        }
        Some(Word::new(w))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MoveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverBudget {
    /// Cap on the number of distinct words visited over a whole call.
    pub max_visited: usize,
    /// Longest word the solver accepts.
    pub max_length: usize,
}

impl SolverBudget {
    pub const DEFAULT_VISITED: usize = 5_000_000;
    pub const DEFAULT_LENGTH: usize = 64;

    /// `None` if either cap is zero.
    pub fn new(max_visited: usize, max_length: usize) -> Option<Self> {
        (max_visited > 0 && max_length > 0).then_some(SolverBudget {
            max_visited,
            max_length,
        })
    }
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            max_visited: Self::DEFAULT_VISITED,
            max_length: Self::DEFAULT_LENGTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub word: Gn2Word,
    pub trace: MoveTrace,
    /// The word was proven minimal (its closure was exhausted).
    pub certified: bool,
}

/// The budget ran out; `best` is the shortest, lexicographically least word
/// reached, with `certified == false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub best: Reduction,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "solver budget exceeded (best word so far has length {})",
            self.best.word.len()
        )
    }
}

impl core::error::Error for BudgetExceeded {}

fn first_square(w: &[Gn2Generator]) -> Option<usize> {
    w.windows(2).position(|p| p[0] == p[1])
}

/// Classify an adjacent triple as an exchange pattern.
fn exchange_kind(a: Gn2Generator, b: Gn2Generator, c: Gn2Generator) -> Option<MoveKind> {
    let ab = a.shared(b)?;
    let ac = a.shared(c)?;
    let bc = b.shared(c)?;
    if ab == ac || ab == bc || ac == bc {
        return None;
    }
    Some(if ab < bc {
        MoveKind::ExchangeLeft
    } else {
        MoveKind::ExchangeRight
    })
}

fn apply_move(w: &[Gn2Generator], m: Move) -> Option<Vec<Gn2Generator>> {
    let p = m.position;
    match m.kind {
        MoveKind::Cancel => {
            if p + 1 >= w.len() || w[p] != w[p + 1] {
                return None;
            }
            let mut out = Vec::with_capacity(w.len() - 2);
            out.extend_from_slice(&w[..p]);
            out.extend_from_slice(&w[p + 2..]);
            Some(out)
        }
        MoveKind::Commute => {
            if p + 1 >= w.len() || !w[p].commutes_with(w[p + 1]) {
                return None;
            }
            let mut out = w.to_vec();
            out.swap(p, p + 1);
            Some(out)
        }
        MoveKind::ExchangeLeft | MoveKind::ExchangeRight => {
            if p + 2 >= w.len() || exchange_kind(w[p], w[p + 1], w[p + 2]) != Some(m.kind) {
                return None;
            }
            let mut out = w.to_vec();
            out.swap(p, p + 2);
            Some(out)
        }
    }
}

/// Every length-preserving move applicable to `w`, in position order.
fn moves(w: &[Gn2Generator]) -> impl Iterator<Item = (Move, Vec<Gn2Generator>)> + '_ {
    let swaps = (0..w.len().saturating_sub(1))
        .filter(move |&p| w[p].commutes_with(w[p + 1]))
        .map(move |p| {
            let mut out = w.to_vec();
            out.swap(p, p + 1);
            (
                Move {
                    kind: MoveKind::Commute,
                    position: p,
                },
                out,
            )
        });
    let exchanges = (0..w.len().saturating_sub(2)).filter_map(move |p| {
        exchange_kind(w[p], w[p + 1], w[p + 2]).map(|kind| {
            let mut out = w.to_vec();
            out.swap(p, p + 2);
            (Move { kind, position: p }, out)
        })
    });
    swaps.chain(exchanges)
}

/// All words one commutation or exchange move away from `w`.
pub fn neighbors(w: &Gn2Word) -> BTreeSet<Gn2Word> {
    moves(w.letters()).map(|(_, v)| Word::new(v)).collect()
}

/// Breadth-first closure at fixed length with parent links.
struct Closure {
    words: Vec<Vec<Gn2Generator>>,
    parent: Vec<Option<(u32, Move)>>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl Closure {
    fn new(root: Vec<Gn2Generator>) -> Self {
        let mut c = Closure {
            words: Vec::new(),
            parent: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        };
        c.insert(root, None);
        c
    }

    fn insert(&mut self, w: Vec<Gn2Generator>, parent: Option<(u32, Move)>) -> Option<u32> {
        let hash = self.hasher.hash_one(&w);
        let words = &self.words;
        let hasher = &self.hasher;
        match self.table.entry(
            hash,
            |&i| words[i as usize] == w,
            |&i| hasher.hash_one(&words[i as usize]),
        ) {
            Entry::Occupied(_) => None,
            Entry::Vacant(slot) => {
                let idx = self.words.len() as u32;
                slot.insert(idx);
                self.words.push(w);
                self.parent.push(parent);
                Some(idx)
            }
        }
    }

    fn len(&self) -> usize {
        self.words.len()
    }

    fn path_to(&self, mut idx: u32) -> Vec<Move> {
        let mut path = Vec::new();
        while let Some((p, m)) = self.parent[idx as usize] {
            path.push(m);
            idx = p;
        }
        path.reverse();
        path
    }

    fn lex_least(&self) -> u32 {
        (0..self.words.len())
            .min_by(|&a, &b| self.words[a].cmp(&self.words[b]))
            .unwrap_or(0) as u32
    }
}

enum Expansion {
    /// Index of a word containing an adjacent equal pair.
    Square(u32),
    Exhausted,
    OverBudget,
}

fn expand(closure: &mut Closure, visited: &mut usize, cap: usize) -> Expansion {
    if first_square(&closure.words[0]).is_some() {
        return Expansion::Square(0);
    }
    let mut head = 0;
    while head < closure.len() {
        let current = closure.words[head].clone();
        for (m, next) in moves(&current) {
            let square = first_square(&next).is_some();
            if let Some(idx) = closure.insert(next, Some((head as u32, m))) {
                *visited += 1;
                if square {
                    return Expansion::Square(idx);
                }
                if *visited >= cap {
                    return Expansion::OverBudget;
                }
            }
        }
        head += 1;
    }
    Expansion::Exhausted
}

/// Shorten `w` to a word of minimal length in the same group element.
///
/// The returned word is the lexicographically least word of the final
/// closure, and `trace` replays from `w` to it.
pub fn reduce(w: &Gn2Word, budget: SolverBudget) -> Result<Reduction, BudgetExceeded> {
    let mut trace = Vec::new();
    let mut current = w.letters().to_vec();
    let mut visited = 0usize;

    if current.len() > budget.max_length {
        return Err(BudgetExceeded {
            best: Reduction {
                word: w.clone(),
                trace: MoveTrace::default(),
                certified: false,
            },
        });
    }

    loop {
        let mut closure = Closure::new(current);
        match expand(&mut closure, &mut visited, budget.max_visited) {
            Expansion::Square(idx) => {
                trace.extend(closure.path_to(idx));
                let word = &closure.words[idx as usize];
                let p = first_square(word).expect("square present");
                trace.push(Move {
                    kind: MoveKind::Cancel,
                    position: p,
                });
                let mut next = Vec::with_capacity(word.len() - 2);
                next.extend_from_slice(&word[..p]);
                next.extend_from_slice(&word[p + 2..]);
                current = next;
            }
            outcome => {
                let best = closure.lex_least();
                trace.extend(closure.path_to(best));
                let reduction = Reduction {
                    word: Word::new(closure.words.swap_remove(best as usize)),
                    trace: MoveTrace(trace),
                    certified: matches!(outcome, Expansion::Exhausted),
                };
                return if reduction.certified {
                    Ok(reduction)
                } else {
                    Err(BudgetExceeded { best: reduction })
                };
            }
        }
    }
}

/// Whether no word in the fixed-length closure of `w` has two equal
/// adjacent letters.
pub fn is_minimal(w: &Gn2Word, budget: SolverBudget) -> Result<bool, BudgetExceeded> {
    if w.len() > budget.max_length {
        return Err(BudgetExceeded {
            best: Reduction {
                word: w.clone(),
                trace: MoveTrace::default(),
                certified: false,
            },
        });
    }
    let mut visited = 0;
    let mut closure = Closure::new(w.letters().to_vec());
    match expand(&mut closure, &mut visited, budget.max_visited) {
        Expansion::Square(_) => Ok(false),
        Expansion::Exhausted => Ok(true),
        Expansion::OverBudget => Err(BudgetExceeded {
            best: Reduction {
                word: w.clone(),
                trace: MoveTrace::default(),
                certified: false,
            },
        }),
    }
}

/// Whether `w1` and `w2` are the same group element: `w1 · w2^{-1}` reduces
/// to the empty word. Unequal parity signatures settle it without search.
pub fn equal(w1: &Gn2Word, w2: &Gn2Word, budget: SolverBudget) -> Result<bool, BudgetExceeded> {
    if parity_signature(w1) != parity_signature(w2) {
        return Ok(false);
    }
    let r = reduce(&w1.concat(&w2.inverse()), budget)?;
    Ok(r.word.is_empty())
}

/// Generators occurring an odd number of times. Every defining relation
/// preserves these counts mod 2, so different signatures certify different
/// elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ParitySignature(BTreeSet<Gn2Generator>);

impl ParitySignature {
    pub fn bit(&self, g: Gn2Generator) -> bool {
        self.0.contains(&g)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn odd_generators(&self) -> impl Iterator<Item = Gn2Generator> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for ParitySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

pub fn parity_signature(w: &Gn2Word) -> ParitySignature {
    let mut odd = BTreeSet::new();
    for &g in w.letters() {
        if !odd.remove(&g) {
            odd.insert(g);
        }
    }
    ParitySignature(odd)
}
