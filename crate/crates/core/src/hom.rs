//! The maps between the groups: `φ`, `h`, the forgetful projection, the
//! action `g` on a free product of `Z_2`'s, and the braid invariant `f`
//! with its composite `Φ = φ ∘ f`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::DomainError;
use crate::generator::{
    DoublePrimeGenerator, Gn2Generator, PairLetter, PlainGenerator, PrimeGenerator, StrandCount,
};
use crate::solver::{is_minimal, Gn2Word, SolverBudget};
use crate::tracer::{f_letter, TraceError, TraceParams};
use crate::word::{BraidWord, Word};

/// Word in the free product of `Z_2`'s generated by the pair letters.
pub type Z2Word = Word<PairLetter>;

fn pair(u: usize, v: usize) -> PairLetter {
    PairLetter::raw(u as u8, v as u8)
}

fn gn2(p: (usize, usize), q: (usize, usize)) -> Gn2Generator {
    Gn2Generator::pair(pair(p.0, p.1), pair(q.0, q.1))
}

/// `a'_{ijk} ↦ a_{ij,ik} a_{kj,ki}`, letter by letter.
pub fn phi(w: &Word<PrimeGenerator>) -> Gn2Word {
    w.iter()
        .flat_map(|g| {
            let (i, j, k) = g.indices();
            [gn2((i, j), (i, k)), gn2((k, j), (k, i))]
        })
        .collect()
}

/// `a''_{ijk} ↦ a_{ij,ik}`, letter by letter.
pub fn h(w: &Word<DoublePrimeGenerator>) -> Gn2Word {
    w.iter()
        .map(|g| {
            let (i, j, k) = g.indices();
            gn2((i, j), (i, k))
        })
        .collect()
}

/// Forget the order of the indices: `a'_{ijk} ↦ a_{{i,j,k}}`.
pub fn project_plain(w: &Word<PrimeGenerator>) -> Word<PlainGenerator> {
    w.iter()
        .map(|g| {
            let (i, j, k) = g.indices();
            PlainGenerator::from_set([i as u8, j as u8, k as u8])
        })
        .collect()
}

/// Free reduction: cancel adjacent equal letters until none remain.
pub fn z2_reduce(w: &Z2Word) -> Z2Word {
    let mut out: Vec<PairLetter> = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    Word::new(out)
}

/// An endomorphism of the free product of `Z_2`'s on the `n(n-1)` pair
/// letters, stored as the reduced image of every letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z2Automorphism {
    n: StrandCount,
    images: Vec<Z2Word>,
}

impl Z2Automorphism {
    pub fn identity(n: StrandCount) -> Self {
        let images = PairLetter::all(n)
            .into_iter()
            .map(|x| Word::new(alloc::vec![x]))
            .collect();
        Z2Automorphism { n, images }
    }

    pub fn strands(&self) -> StrandCount {
        self.n
    }

    pub fn image(&self, x: PairLetter) -> &Z2Word {
        &self.images[x.index(self.n)]
    }

    /// Image of a word, reduced.
    pub fn apply(&self, w: &Z2Word) -> Z2Word {
        let mut out = Word::empty();
        for &x in w.iter() {
            out = out.concat(self.image(x));
        }
        z2_reduce(&out)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        Z2Automorphism { n: self.n, images }
    }

    pub fn is_identity(&self) -> bool {
        PairLetter::all(self.n)
            .into_iter()
            .all(|x| self.image(x).letters() == [x])
    }

    /// Letters moved by the map, with their images.
    pub fn moved(&self) -> impl Iterator<Item = (PairLetter, &Z2Word)> + '_ {
        PairLetter::all(self.n)
            .into_iter()
            .zip(&self.images)
            .filter(|(x, w)| w.letters() != [*x])
    }
}

/// One line per moved letter, `x[u,v] -> <image>`; `identity` if none.
impl fmt::Display for Z2Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (x, w) in self.moved() {
            writeln!(f, "{x} -> {w}")?;
            any = true;
        }
        if !any {
            writeln!(f, "identity")?;
        }
        Ok(())
    }
}

/// `g(a'_{ijk})`: `a_{ij} ↦ a_{ik} a_{ij} a_{ik}`,
/// `a_{kj} ↦ a_{ki} a_{kj} a_{ki}`, every other letter fixed.
pub fn g_elem(t: PrimeGenerator, n: StrandCount) -> Z2Automorphism {
    let (i, j, k) = t.indices();
    let mut g = Z2Automorphism::identity(n);
    for (a, b, c) in [(i, j, k), (k, j, i)] {
        let (x, y) = (pair(a, b), pair(a, c));
        g.images[x.index(n)] = Word::new(alloc::vec![y, x, y]);
    }
    g
}

/// `g(x_1 ⋯ x_m) = g(x_1) ∘ ⋯ ∘ g(x_m)`, with reduced images.
pub fn g_word(w: &Word<PrimeGenerator>, n: StrandCount) -> Z2Automorphism {
    w.iter().fold(Z2Automorphism::identity(n), |acc, &x| {
        acc.compose(&g_elem(x, n))
    })
}

/// `c'_{i,j} = ∏_{k=j+1}^{n} a'_{j,i,k} · ∏_{k=1}^{j-1} a'_{j,i,k}`, the
/// products skipping `k ∈ {i, j}`.
pub fn c_prime(i: usize, j: usize, n: StrandCount) -> Result<Word<PrimeGenerator>, DomainError> {
    n.check(i)?;
    n.check(j)?;
    if i == j {
        return Err(DomainError::RepeatedIndex(i));
    }
    let ks = (j + 1..=n.get()).chain(1..j).filter(|&k| k != i);
    Ok(ks
        .map(|k| PrimeGenerator::canonical(j as u8, i as u8, k as u8))
        .collect())
}

/// Which definition of `f(b_{ij})` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FConvention {
    /// Central square `c'_{j,i}^2`.
    Statement,
    /// Central square `c'_{i,j}^2`.
    Proof,
    /// Collinear events of the standard trajectory.
    Geometric,
}

impl FConvention {
    pub const ALL: [FConvention; 3] = [
        FConvention::Statement,
        FConvention::Proof,
        FConvention::Geometric,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FConvention::Statement => "statement",
            FConvention::Proof => "proof",
            FConvention::Geometric => "geometric",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }
}

impl fmt::Display for FConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `f(b_{ij}) = c'_{i,i+1}^{-1} ⋯ c'_{i,j-1}^{-1} X^2 c'_{i,j-1} ⋯ c'_{i,i+1}`
/// with `X` chosen by `conv`; the geometric variant traces the standard
/// trajectory instead.
pub fn f_generator(
    i: usize,
    j: usize,
    n: StrandCount,
    conv: FConvention,
    params: &TraceParams,
) -> Result<Word<PrimeGenerator>, TraceError> {
    n.check(i)?;
    n.check(j)?;
    if i >= j {
        return Err(DomainError::NotIncreasing { i, j }.into());
    }
    let center = match conv {
        FConvention::Statement => c_prime(j, i, n)?,
        FConvention::Proof => c_prime(i, j, n)?,
        FConvention::Geometric => {
            let b = crate::generator::BraidLetter::new(i, j, false, n)?;
            return f_letter(b, n, params);
        }
    };
    let mut conj = Word::empty();
    for m in (i + 1..j).rev() {
        conj = conj.concat(&c_prime(i, m, n)?);
    }
    Ok(conj.inverse().concat(&center.squared()).concat(&conj))
}

/// `f(β)` as the product of generator images; `b^{-1}` maps to the
/// reversal of the image of `b`.
pub fn f_braid(
    w: &BraidWord,
    n: StrandCount,
    conv: FConvention,
    params: &TraceParams,
) -> Result<Word<PrimeGenerator>, TraceError> {
    w.check_strands(n)?;
    let mut out = Word::empty();
    for &b in w.letters() {
        let (i, j) = b.strands();
        let img = f_generator(i, j, n, conv, params)?;
        out = out.concat(&if b.is_inverse() { img.inverse() } else { img });
    }
    Ok(out)
}

/// `Φ(β) = φ(f(β))`.
#[allow(non_snake_case)]
pub fn Phi(
    w: &BraidWord,
    n: StrandCount,
    conv: FConvention,
    params: &TraceParams,
) -> Result<Gn2Word, TraceError> {
    f_braid(w, n, conv, params).map(|fw| phi(&fw))
}

/// Verdict of the sufficient minimality condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityCertificate {
    /// `φ(w)` is minimal, hence so is `w`.
    Minimal,
    /// Nothing can be concluded.
    Unknown { budget_exceeded: bool },
}

impl fmt::Display for MinimalityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalityCertificate::Minimal => f.write_str("minimal"),
            MinimalityCertificate::Unknown {
                budget_exceeded: false,
            } => f.write_str("unknown"),
            MinimalityCertificate::Unknown {
                budget_exceeded: true,
            } => f.write_str("unknown (budget exceeded)"),
        }
    }
}

/// `Minimal` when the solver certifies `φ(w)` minimal in `G_{n(n-1)}^2`.
pub fn minimality_certificate(
    w: &Word<PrimeGenerator>,
    budget: SolverBudget,
) -> MinimalityCertificate {
    match is_minimal(&phi(w), budget) {
        Ok(true) => MinimalityCertificate::Minimal,
        Ok(false) => MinimalityCertificate::Unknown {
            budget_exceeded: false,
        },
        Err(_) => MinimalityCertificate::Unknown {
            budget_exceeded: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relators::{relators_double_prime, relators_prime};
    use crate::solver::{parity_signature, reduce};
    use alloc::string::ToString;
    use alloc::vec;

    fn n(k: usize) -> StrandCount {
        StrandCount::new(k).unwrap()
    }

    fn pw(s: &str) -> Word<PrimeGenerator> {
        Word::parse(s).unwrap()
    }

    fn zw(s: &str) -> Z2Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi(&pw("a'[1,2,3]")).to_string(),
            "A[(1,2),(1,3)] A[(3,1),(3,2)]"
        );
        assert_eq!(phi(&pw("a'[3,2,1]")), phi(&pw("a'[1,2,3]")));
        assert!(phi(&Word::empty()).is_empty());
        let sig = parity_signature(&phi(&pw("a'[1,2,3]")));
        let odd: Vec<_> = sig.odd_generators().map(|g| g.to_string()).collect();
        assert_eq!(odd, ["A[(1,2),(1,3)]", "A[(3,1),(3,2)]"]);
    }

    #[test]
    fn h_and_projection_examples() {
        let w: Word<DoublePrimeGenerator> = Word::parse("a''[1,2,3]").unwrap();
        assert_eq!(h(&w).to_string(), "A[(1,2),(1,3)]");
        let sq = h(&w.squared());
        assert!(reduce(&sq, SolverBudget::default())
            .unwrap()
            .word
            .is_empty());
        assert_eq!(project_plain(&pw("a'[1,2,3]")).to_string(), "a[1,2,3]");
        assert_eq!(project_plain(&pw("a'[1,3,2]")).to_string(), "a[1,2,3]");
        assert_eq!(
            project_plain(&pw("a'[3,2,1]")),
            project_plain(&pw("a'[1,2,3]"))
        );
    }

    #[test]
    fn maps_are_monoid_homomorphisms() {
        let (a, b) = (pw("a'[1,2,3] a'[2,1,4]"), pw("a'[1,3,4]"));
        assert_eq!(phi(&(&a * &b)), &phi(&a) * &phi(&b));
        assert_eq!(
            project_plain(&(&a * &b)),
            &project_plain(&a) * &project_plain(&b)
        );
        let (c, d): (Word<DoublePrimeGenerator>, _) = (
            Word::parse("a''[4,2,1]").unwrap(),
            Word::parse("a''[1,2,3] a''[3,1,2]").unwrap(),
        );
        assert_eq!(h(&(&c * &d)), &h(&c) * &h(&d));
    }

    #[test]
    fn phi_kills_prime_relators_n4() {
        for r in relators_prime(n(4)) {
            let red = reduce(&phi(&r.word), SolverBudget::default()).unwrap();
            assert!(red.word.is_empty(), "{}", r.word);
        }
    }

    #[test]
    fn h_kills_double_prime_relators_n4() {
        for r in relators_double_prime(n(4)) {
            let red = reduce(&h(&r.word), SolverBudget::default()).unwrap();
            assert!(red.word.is_empty(), "{}", r.word);
        }
    }

    #[test]
    fn z2_reduce_examples() {
        assert!(z2_reduce(&zw("x[1,2] x[1,2]")).is_empty());
        assert!(z2_reduce(&zw("x[1,3] x[1,2] x[1,2] x[1,3]")).is_empty());
        let w = zw("x[1,3] x[1,2] x[1,3]");
        assert_eq!(z2_reduce(&w), w);
    }

    #[test]
    fn g_elem_examples() {
        let g = g_elem(PrimeGenerator::new(1, 2, 3, n(3)).unwrap(), n(3));
        let img = |u, v| g.image(PairLetter::new(u, v, n(3)).unwrap()).to_string();
        assert_eq!(img(1, 2), "x[1,3] x[1,2] x[1,3]");
        assert_eq!(img(3, 2), "x[3,1] x[3,2] x[3,1]");
        assert_eq!(img(2, 3), "x[2,3]");
        assert_eq!(g.moved().count(), 2);
        for (_, w) in g.moved() {
            assert_eq!(w.len() % 2, 1);
            assert_eq!(z2_reduce(&(w * &w.inverse())), Word::empty());
        }
    }

    #[test]
    fn g_word_examples() {
        let t = PrimeGenerator::new(1, 2, 3, n(3)).unwrap();
        assert!(g_word(&Word::new(vec![t, t]), n(3)).is_identity());
        assert!(g_word(&Word::empty(), n(4)).is_identity());
        assert_eq!(Z2Automorphism::identity(n(3)).to_string(), "identity\n");
    }

    #[test]
    fn g_of_quadruple_word_matches_composite_action() {
        let n4 = n(4);
        let w = pw("a'[1,2,3] a'[1,2,4] a'[1,3,4] a'[2,3,4]");
        let g = g_word(&w, n4);
        let img = |u, v| g.image(PairLetter::new(u, v, n4).unwrap()).to_string();
        assert_eq!(img(1, 2), "x[1,4] x[1,3] x[1,2] x[1,3] x[1,4]");
        assert_eq!(img(1, 3), "x[1,4] x[1,3] x[1,4]");
        assert_eq!(img(2, 3), "x[2,4] x[2,3] x[2,4]");
    }

    #[test]
    fn g_kills_prime_relators() {
        for k in [3, 4, 5] {
            for r in relators_prime(n(k)) {
                assert!(g_word(&r.word, n(k)).is_identity(), "{}", r.word);
            }
        }
    }

    #[test]
    fn c_prime_examples() {
        assert_eq!(c_prime(2, 1, n(3)).unwrap().to_string(), "a'[1,2,3]");
        assert_eq!(c_prime(1, 2, n(3)).unwrap().to_string(), "a'[2,1,3]");
        assert_eq!(
            c_prime(1, 3, n(4)).unwrap().to_string(),
            "a'[3,1,4] a'[2,1,3]"
        );
        assert_eq!(c_prime(2, 2, n(3)), Err(DomainError::RepeatedIndex(2)));
    }

    #[test]
    fn f_generator_algebraic_examples() {
        let p = TraceParams::default();
        let f = |i, j, c| f_generator(i, j, n(3), c, &p).unwrap().to_string();
        assert_eq!(f(1, 2, FConvention::Statement), "a'[1,2,3] a'[1,2,3]");
        assert_eq!(f(1, 2, FConvention::Proof), "a'[2,1,3] a'[2,1,3]");
        let c12 = c_prime(1, 2, n(3)).unwrap();
        let c31 = c_prime(3, 1, n(3)).unwrap();
        let expected = c12.inverse().concat(&c31.squared()).concat(&c12);
        assert_eq!(
            f_generator(1, 3, n(3), FConvention::Statement, &p).unwrap(),
            expected
        );
        assert!(f_generator(2, 1, n(3), FConvention::Proof, &p).is_err());
    }

    #[test]
    fn algebraic_f_is_trivial_on_three_strands() {
        let p = TraceParams::default();
        for conv in [FConvention::Statement, FConvention::Proof] {
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                let w = Phi(
                    &BraidWord::parse(&alloc::format!("b[{i},{j}]")).unwrap(),
                    n(3),
                    conv,
                    &p,
                )
                .unwrap();
                assert!(reduce(&w, SolverBudget::default()).unwrap().word.is_empty());
            }
        }
    }

    #[test]
    fn convention_labels_round_trip() {
        for c in FConvention::ALL {
            assert_eq!(FConvention::from_label(c.label()), Some(c));
        }
    }

    #[test]
    fn minimality_certificate_examples() {
        let b = SolverBudget::default();
        assert_eq!(
            minimality_certificate(&Word::empty(), b),
            MinimalityCertificate::Minimal
        );
        assert_eq!(
            minimality_certificate(&pw("a'[1,2,3] a'[1,2,3]"), b),
            MinimalityCertificate::Unknown {
                budget_exceeded: false
            }
        );
        assert_eq!(
            minimality_certificate(&pw("a'[1,2,3] a'[1,2,4]"), b),
            MinimalityCertificate::Minimal
        );
        let tiny = SolverBudget::new(1, 1).unwrap();
        assert_eq!(
            minimality_certificate(&pw("a'[1,2,3] a'[1,2,4]"), tiny),
            MinimalityCertificate::Unknown {
                budget_exceeded: true
            }
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn prime_word(k: usize, max_len: usize) -> impl Strategy<Value = Word<PrimeGenerator>> {
            let gens = PrimeGenerator::all(StrandCount::new(k).unwrap());
            proptest::collection::vec(proptest::sample::select(gens), 0..=max_len)
                .prop_map(Word::new)
        }

        proptest! {
            #[test]
            fn g_of_word_times_inverse_is_identity(w in prime_word(4, 10)) {
                let ww = w.concat(&w.inverse());
                prop_assert!(g_word(&ww, StrandCount::new(4).unwrap()).is_identity());
            }

            #[test]
            fn g_is_multiplicative(a in prime_word(4, 6), b in prime_word(4, 6)) {
                let n4 = StrandCount::new(4).unwrap();
                prop_assert_eq!(g_word(&(&a * &b), n4), g_word(&a, n4).compose(&g_word(&b, n4)));
            }
        }
    }
}
