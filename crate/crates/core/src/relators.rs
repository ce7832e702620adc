//! Relator enumerations for the presented groups.
//!
//! Every list is emitted in a fixed order (lexicographic on index tuples
//! within each relation type) and contains no repeated word.

use alloc::vec;
use alloc::vec::Vec;

use crate::generator::{
    BraidLetter, DoublePrimeGenerator, Gn2Generator, PairLetter, PrimeGenerator, StrandCount,
};
use crate::word::{BraidWord, Letter, Word};

/// Which defining relation a relator instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelatorKind {
    /// `a^2`.
    Square,
    /// `abab`, i.e. `[a,b]` for involutions.
    Commutator,
    /// Squared four-letter word on a quadruple of indices.
    Quadruple,
    /// `(a_{p,q} a_{p,r} a_{q,r})^2`.
    Triangle,
}

impl RelatorKind {
    pub fn label(self) -> &'static str {
        match self {
            RelatorKind::Square => "square",
            RelatorKind::Commutator => "commutator",
            RelatorKind::Quadruple => "quadruple",
            RelatorKind::Triangle => "triangle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator<G> {
    pub kind: RelatorKind,
    pub word: Word<G>,
}

fn square<G: Letter>(g: G) -> Relator<G> {
    Relator {
        kind: RelatorKind::Square,
        word: Word::new(vec![g, g]),
    }
}

fn commutator<G: Letter>(a: G, b: G) -> Relator<G> {
    Relator {
        kind: RelatorKind::Commutator,
        word: Word::new(vec![a, b, a, b]),
    }
}

fn subsets(n: u8, size: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, size: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// All orderings of four distinct values, lexicographic.
fn orderings4(s: &[u8]) -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([s[a], s[b], s[c], s[d]]);
                    }
                }
            }
        }
    }
    out
}

/// Relators of `'G_n^3`: squares, commutators of generators whose index
/// sets share at most one index, and for every quadruple ordered along a
/// line `i,j,k,l` the word `(a'_{ijk} a'_{ijl} a'_{ikl} a'_{jkl})^2`.
///
/// The last family encodes `a'_{ijk}a'_{ijl}a'_{ikl}a'_{jkl} =
/// a'_{jkl}a'_{ikl}a'_{ijl}a'_{ijk}`: the right side is the inverse of the
/// left, so the relation says the left side squares to one. An ordering and
/// its reversal give mutually inverse relators; only orderings with `i < l`
/// are emitted, i.e. 12 per 4-subset.
pub fn relators_prime(n: StrandCount) -> Vec<Relator<PrimeGenerator>> {
    let gens = PrimeGenerator::all(n);
    let mut out: Vec<_> = gens.iter().map(|&g| square(g)).collect();

    let set = |g: PrimeGenerator| {
        let (i, j, k) = g.indices();
        [i, j, k]
    };
    for (a, &g) in gens.iter().enumerate() {
        for &h in &gens[a + 1..] {
            let sg = set(g);
            let shared = set(h).iter().filter(|x| sg.contains(x)).count();
            if shared <= 1 {
                out.push(commutator(g, h));
            }
        }
    }

    for quad in subsets(n.get() as u8, 4) {
        for [i, j, k, l] in orderings4(&quad) {
            if i > l {
                continue;
            }
            let w = Word::new(vec![
                PrimeGenerator::canonical(i, j, k),
                PrimeGenerator::canonical(i, j, l),
                PrimeGenerator::canonical(i, k, l),
                PrimeGenerator::canonical(j, k, l),
            ]);
            out.push(Relator {
                kind: RelatorKind::Quadruple,
                word: w.squared(),
            });
        }
    }
    out
}

/// Relators of `''G_n^3`: squares, commutators of generators whose induced
/// ordered pairs `(i,j),(i,k),(j,k)` are disjoint, and
/// `(a''_{ijk} a''_{ijl} a''_{ikl} a''_{jkl})^2` for every ordered quadruple
/// of distinct indices.
pub fn relators_double_prime(n: StrandCount) -> Vec<Relator<DoublePrimeGenerator>> {
    let gens = DoublePrimeGenerator::all(n);
    let mut out: Vec<_> = gens.iter().map(|&g| square(g)).collect();
    for (a, &g) in gens.iter().enumerate() {
        for &h in &gens[a + 1..] {
            if g.commutes_with(h) {
                out.push(commutator(g, h));
            }
        }
    }
    for quad in subsets(n.get() as u8, 4) {
        for [i, j, k, l] in orderings4(&quad) {
            let w = Word::new(vec![
                DoublePrimeGenerator::raw(i, j, k),
                DoublePrimeGenerator::raw(i, j, l),
                DoublePrimeGenerator::raw(i, k, l),
                DoublePrimeGenerator::raw(j, k, l),
            ]);
            out.push(Relator {
                kind: RelatorKind::Quadruple,
                word: w.squared(),
            });
        }
    }
    sort_within_kind(&mut out);
    out
}

/// Relators of `G_{n(n-1)}^2` over the ordered-pair alphabet: squares,
/// far commutativity for four distinct letters, and
/// `(a_{p,q} a_{p,r} a_{q,r})^2` for every ordered triple of distinct letters.
pub fn relators_gn2(n: StrandCount) -> Vec<Relator<Gn2Generator>> {
    let gens = Gn2Generator::all(n);
    let mut out: Vec<_> = gens.iter().map(|&g| square(g)).collect();
    for (a, &g) in gens.iter().enumerate() {
        for &h in &gens[a + 1..] {
            if g.commutes_with(h) {
                out.push(commutator(g, h));
            }
        }
    }
    let letters = PairLetter::all(n);
    for &p in &letters {
        for &q in &letters {
            for &r in &letters {
                if p == q || p == r || q == r {
                    continue;
                }
                let w = Word::new(vec![
                    Gn2Generator::pair(p, q),
                    Gn2Generator::pair(p, r),
                    Gn2Generator::pair(q, r),
                ]);
                out.push(Relator {
                    kind: RelatorKind::Triangle,
                    word: w.squared(),
                });
            }
        }
    }
    out
}

fn sort_within_kind<G: Letter>(rels: &mut [Relator<G>]) {
    rels.sort_by(|a, b| a.kind.cmp(&b.kind).then_with(|| a.word.cmp(&b.word)));
}

/// A defining relation `left = right` of the pure braid group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidRelation {
    pub left: BraidWord,
    pub right: BraidWord,
    /// Set on the four-index mixed relation, which is the standard pure
    /// braid relation rather than a transcription of a printed one.
    pub substituted: bool,
}

fn bw(letters: &[(u8, u8, bool)]) -> BraidWord {
    BraidWord::new(
        letters
            .iter()
            .map(|&(i, j, inv)| {
                let b = BraidLetter::raw(i, j);
                if inv {
                    b.inverted()
                } else {
                    b
                }
            })
            .collect(),
    )
}

/// Defining relations of `PB_n` on the generators `b_{ij}`, `i < j`:
///
/// * `b_ij b_kl = b_kl b_ij` for `i<j<k<l` and for `i<k<l<j`;
/// * `b_ij b_ik b_jk = b_ik b_jk b_ij = b_jk b_ij b_ik` for `i<j<k`
///   (emitted as two pairs);
/// * `b_ik b_jk b_jl b_jk^-1 = b_jk b_jl b_jk^-1 b_ik` for `i<j<k<l`
///   (flagged `substituted`).
pub fn relators_pure_braid(n: StrandCount) -> Vec<BraidRelation> {
    let n = n.get() as u8;
    let mut out = Vec::new();
    let plain = |left: BraidWord, right: BraidWord| BraidRelation {
        left,
        right,
        substituted: false,
    };
    for q in subsets(n, 4) {
        let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
        // i<j<k<l: b_ij with b_kl; i<k<l<j, relabelled: b_il with b_jk.
        out.push(plain(
            bw(&[(i, j, false), (k, l, false)]),
            bw(&[(k, l, false), (i, j, false)]),
        ));
        out.push(plain(
            bw(&[(i, l, false), (j, k, false)]),
            bw(&[(j, k, false), (i, l, false)]),
        ));
    }
    for t in subsets(n, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let lhs = bw(&[(i, j, false), (i, k, false), (j, k, false)]);
        out.push(plain(
            lhs.clone(),
            bw(&[(i, k, false), (j, k, false), (i, j, false)]),
        ));
        out.push(plain(
            lhs,
            bw(&[(j, k, false), (i, j, false), (i, k, false)]),
        ));
    }
    for q in subsets(n, 4) {
        let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
        out.push(BraidRelation {
            left: bw(&[(i, k, false), (j, k, false), (j, l, false), (j, k, true)]),
            right: bw(&[(j, k, false), (j, l, false), (j, k, true), (i, k, false)]),
            substituted: true,
        });
    }
    out
}
