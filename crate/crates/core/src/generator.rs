//! Generator alphabets.
//!
//! Strand indices are 1-based and stored as `u8`; every family here is
//! generated by involutions except the braid letters.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::DomainError;

/// Number of strands (particles). Always at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrandCount(usize);

impl StrandCount {
    pub const MAX: usize = 255;

    pub fn new(n: usize) -> Result<Self, DomainError> {
        if !(3..=Self::MAX).contains(&n) {
            return Err(DomainError::StrandCount(n));
        }
        Ok(StrandCount(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `n(n-1)`, the size of the ordered-pair alphabet.
    pub fn pair_count(self) -> usize {
        self.0 * (self.0 - 1)
    }

    pub fn check(self, index: usize) -> Result<u8, DomainError> {
        if index == 0 || index > self.0 {
            return Err(DomainError::IndexOutOfRange { index, n: self.0 });
        }
        Ok(index as u8)
    }
}

fn distinct3(i: usize, j: usize, k: usize) -> Result<(), DomainError> {
    if i == j || i == k {
        return Err(DomainError::RepeatedIndex(i));
    }
    if j == k {
        return Err(DomainError::RepeatedIndex(j));
    }
    Ok(())
}

/// `a'_{ijk}`: an ordered triple identified with its reversal. Stored with
/// the smaller outer index first; the middle index is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeGenerator {
    i: u8,
    j: u8,
    k: u8,
}

impl PrimeGenerator {
    /// Canonical representative of `a'_{ijk} = a'_{kji}`.
    pub fn new(i: usize, j: usize, k: usize, n: StrandCount) -> Result<Self, DomainError> {
        let (i, j, k) = (n.check(i)?, n.check(j)?, n.check(k)?);
        distinct3(i as usize, j as usize, k as usize)?;
        Ok(Self::canonical(i, j, k))
    }

    pub(crate) fn canonical(i: u8, j: u8, k: u8) -> Self {
        if i < k {
            PrimeGenerator { i, j, k }
        } else {
            PrimeGenerator { i: k, j, k: i }
        }
    }

    pub fn indices(self) -> (usize, usize, usize) {
        (self.i as usize, self.j as usize, self.k as usize)
    }

    /// The middle index (the point lying between the other two).
    pub fn middle(self) -> usize {
        self.j as usize
    }

    /// All `3·C(n,3)` generators in lexicographic order.
    pub fn all(n: StrandCount) -> Vec<Self> {
        let n = n.get() as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in (i + 1)..=n {
                    if j != i && j != k {
                        out.push(PrimeGenerator { i, j, k });
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// `a_{ijk}` of the plain group: an unordered 3-subset, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlainGenerator([u8; 3]);

impl PlainGenerator {
    pub fn new(i: usize, j: usize, k: usize, n: StrandCount) -> Result<Self, DomainError> {
        let mut t = [n.check(i)?, n.check(j)?, n.check(k)?];
        distinct3(i, j, k)?;
        t.sort();
        Ok(PlainGenerator(t))
    }

    pub(crate) fn from_set(mut t: [u8; 3]) -> Self {
        t.sort();
        PlainGenerator(t)
    }

    pub fn indices(self) -> [usize; 3] {
        self.0.map(usize::from)
    }
}

/// `a''_{ijk}`: a fully ordered triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoublePrimeGenerator {
    i: u8,
    j: u8,
    k: u8,
}

impl DoublePrimeGenerator {
    pub fn new(i: usize, j: usize, k: usize, n: StrandCount) -> Result<Self, DomainError> {
        let (i, j, k) = (n.check(i)?, n.check(j)?, n.check(k)?);
        distinct3(i as usize, j as usize, k as usize)?;
        Ok(DoublePrimeGenerator { i, j, k })
    }

    pub(crate) fn raw(i: u8, j: u8, k: u8) -> Self {
        DoublePrimeGenerator { i, j, k }
    }

    pub fn indices(self) -> (usize, usize, usize) {
        (self.i as usize, self.j as usize, self.k as usize)
    }

    /// The ordered pairs `(i,j), (i,k), (j,k)` induced by the triple.
    pub fn induced_pairs(self) -> [PairLetter; 3] {
        [
            PairLetter::raw(self.i, self.j),
            PairLetter::raw(self.i, self.k),
            PairLetter::raw(self.j, self.k),
        ]
    }

    /// Whether the two generators are declared commuting: their induced
    /// ordered pairs are disjoint.
    pub fn commutes_with(self, other: Self) -> bool {
        let a = self.induced_pairs();
        let b = other.induced_pairs();
        a.iter().all(|p| !b.contains(p))
    }

    /// All `n(n-1)(n-2)` generators in lexicographic order.
    pub fn all(n: StrandCount) -> Vec<Self> {
        let n = n.get() as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i != j && i != k && j != k {
                        out.push(DoublePrimeGenerator { i, j, k });
                    }
                }
            }
        }
        out
    }
}

/// An ordered pair `(u,v)` of distinct strands: one letter of the
/// `n(n-1)`-letter alphabet. Also the generators `x[u,v]` of the free
/// product of `Z_2`'s acted on by `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairLetter {
    u: u8,
    v: u8,
}

impl PairLetter {
    pub fn new(u: usize, v: usize, n: StrandCount) -> Result<Self, DomainError> {
        let (u, v) = (n.check(u)?, n.check(v)?);
        if u == v {
            return Err(DomainError::RepeatedIndex(u as usize));
        }
        Ok(PairLetter { u, v })
    }

    pub(crate) fn raw(u: u8, v: u8) -> Self {
        debug_assert!(u != v);
        PairLetter { u, v }
    }

    pub fn first(self) -> usize {
        self.u as usize
    }

    pub fn second(self) -> usize {
        self.v as usize
    }

    /// Dense index in `0..n(n-1)`, lexicographic in `(u,v)`.
    pub fn index(self, n: StrandCount) -> usize {
        let (u, v) = (self.u as usize - 1, self.v as usize - 1);
        u * (n.get() - 1) + if v > u { v - 1 } else { v }
    }

    /// All `n(n-1)` letters in lexicographic order.
    pub fn all(n: StrandCount) -> Vec<Self> {
        let n = n.get() as u8;
        let mut out = Vec::with_capacity(n as usize * (n as usize - 1));
        for u in 1..=n {
            for v in 1..=n {
                if u != v {
                    out.push(PairLetter { u, v });
                }
            }
        }
        out
    }
}

/// `a_{p,q}` of `G_{n(n-1)}^2`: an unordered pair of distinct pair letters,
/// stored with `p < q` lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gn2Generator {
    p: PairLetter,
    q: PairLetter,
}

impl Gn2Generator {
    pub fn new(p: PairLetter, q: PairLetter) -> Result<Self, DomainError> {
        if p == q {
            return Err(DomainError::RepeatedLetter);
        }
        Ok(Self::pair(p, q))
    }

    pub(crate) fn pair(p: PairLetter, q: PairLetter) -> Self {
        debug_assert!(p != q);
        if p < q {
            Gn2Generator { p, q }
        } else {
            Gn2Generator { p: q, q: p }
        }
    }

    pub fn letters(self) -> (PairLetter, PairLetter) {
        (self.p, self.q)
    }

    pub fn contains(self, l: PairLetter) -> bool {
        self.p == l || self.q == l
    }

    /// Far commutativity: the four letters are pairwise distinct.
    pub fn commutes_with(self, other: Self) -> bool {
        !other.contains(self.p) && !other.contains(self.q)
    }

    /// The letter shared with `other`, if exactly one is shared.
    pub fn shared(self, other: Self) -> Option<PairLetter> {
        match (other.contains(self.p), other.contains(self.q)) {
            (true, false) => Some(self.p),
            (false, true) => Some(self.q),
            _ => None,
        }
    }

    pub fn max_index(self) -> usize {
        [self.p.u, self.p.v, self.q.u, self.q.v]
            .into_iter()
            .max()
            .unwrap_or(0) as usize
    }

    /// All `C(n(n-1), 2)` generators in lexicographic order.
    pub fn all(n: StrandCount) -> Vec<Self> {
        let letters = PairLetter::all(n);
        let mut out = Vec::new();
        for (a, &p) in letters.iter().enumerate() {
            for &q in &letters[a + 1..] {
                out.push(Gn2Generator { p, q });
            }
        }
        out
    }
}

/// A pure braid generator `b_{ij}^{±1}` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidLetter {
    i: u8,
    j: u8,
    inverse: bool,
}

impl BraidLetter {
    pub fn new(i: usize, j: usize, inverse: bool, n: StrandCount) -> Result<Self, DomainError> {
        let (i, j) = (n.check(i)?, n.check(j)?);
        if i >= j {
            return Err(DomainError::NotIncreasing {
                i: i as usize,
                j: j as usize,
            });
        }
        Ok(BraidLetter { i, j, inverse })
    }

    pub(crate) fn raw(i: u8, j: u8) -> Self {
        BraidLetter {
            i,
            j,
            inverse: false,
        }
    }

    pub fn strands(self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        BraidLetter {
            inverse: !self.inverse,
            ..self
        }
    }
}

impl fmt::Display for PrimeGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a'[{},{},{}]", self.i, self.j, self.k)
    }
}

impl fmt::Display for PlainGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a[{},{},{}]", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for DoublePrimeGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a''[{},{},{}]", self.i, self.j, self.k)
    }
}

impl fmt::Display for PairLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.u, self.v)
    }
}

impl fmt::Display for Gn2Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A[({},{}),({},{})]",
            self.p.u, self.p.v, self.q.u, self.q.v
        )
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b[{},{}]", self.i, self.j)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

// Token parsing. Each parser receives a single whitespace-free token.

fn strip<'a>(tok: &'a str, prefix: &str) -> Result<&'a str, String> {
    let rest = tok
        .strip_prefix(prefix)
        .ok_or_else(|| format!("expected `{prefix}...`, found `{tok}`"))?;
    rest.strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("expected `{prefix}[...]`, found `{tok}`"))
}

fn index(s: &str) -> Result<u8, String> {
    let v: u8 = s
        .parse()
        .map_err(|_| format!("`{s}` is not a strand index"))?;
    if v == 0 {
        return Err(String::from("strand indices start at 1"));
    }
    Ok(v)
}

fn indices<const K: usize>(body: &str) -> Result<[u8; K], String> {
    let mut out = [0u8; K];
    let mut parts = body.split(',');
    for slot in out.iter_mut() {
        *slot = index(parts.next().ok_or("too few indices")?)?;
    }
    if parts.next().is_some() {
        return Err(format!("expected {K} indices"));
    }
    Ok(out)
}

fn distinct_triple(t: [u8; 3]) -> Result<[u8; 3], String> {
    if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
        return Err(String::from("indices must be pairwise distinct"));
    }
    Ok(t)
}

impl PrimeGenerator {
    pub fn parse_token(tok: &str) -> Result<Self, String> {
        let [i, j, k] = distinct_triple(indices(strip(tok, "a'")?)?)?;
        Ok(Self::canonical(i, j, k))
    }
}

impl PlainGenerator {
    pub fn parse_token(tok: &str) -> Result<Self, String> {
        Ok(Self::from_set(distinct_triple(indices(strip(tok, "a")?)?)?))
    }
}

impl DoublePrimeGenerator {
    pub fn parse_token(tok: &str) -> Result<Self, String> {
        let [i, j, k] = distinct_triple(indices(strip(tok, "a''")?)?)?;
        Ok(Self::raw(i, j, k))
    }
}

impl PairLetter {
    pub fn parse_token(tok: &str) -> Result<Self, String> {
        let [u, v] = indices(strip(tok, "x")?)?;
        if u == v {
            return Err(String::from("pair indices must differ"));
        }
        Ok(Self::raw(u, v))
    }
}

impl Gn2Generator {
    pub fn parse_token(tok: &str) -> Result<Self, String> {
        let body = strip(tok, "A")?;
        let pair = |s: &str| -> Result<PairLetter, String> {
            let inner = s
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("expected `(u,v)`, found `{s}`"))?;
            let [u, v] = indices(inner)?;
            if u == v {
                return Err(String::from("pair indices must differ"));
            }
            Ok(PairLetter::raw(u, v))
        };
        let split = body
            .find("),(")
            .ok_or_else(|| format!("expected `(u,v),(u,v)`, found `{body}`"))?;
        let p = pair(&body[..=split])?;
        let q = pair(&body[split + 2..])?;
        if p == q {
            return Err(String::from("generator letters must be distinct"));
        }
        Ok(Self::pair(p, q))
    }
}

impl BraidLetter {
    pub fn parse_token(tok: &str) -> Result<Self, String> {
        let (base, inverse) = match tok.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let [i, j] = indices(strip(base, "b")?)?;
        if i >= j {
            return Err(format!("braid letter needs i < j, got b[{i},{j}]"));
        }
        Ok(BraidLetter { i, j, inverse })
    }
}
