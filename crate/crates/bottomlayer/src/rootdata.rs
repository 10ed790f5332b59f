//! Root data for the classical families in epsilon coordinates.
//!
//! Weights of gl(n), so(2n+1), sp(2n), and so(2n) are integer vectors in the
//! standard epsilon basis of the diagonal Cartan subalgebra. Type A_r is
//! handled as gl(r+1) together with a `canonical` flag on the surrounding
//! [`RootSystem`]: two weights that differ by a constant vector restrict to
//! the same functional on the traceless torus, and [`RootSystem::canonicalize`]
//! picks the representative whose last coordinate is zero.
//!
//! Half-integral quantities never appear. The doubled weight `2*rho` (the sum
//! of the positive roots) is integral for every block, and the dotted action
//! is computed as `(w(2*lambda + 2*rho) - 2*rho) / 2`, which is integral for
//! integral `lambda` because `w(2*rho) - 2*rho` has even entries in every
//! family.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    GL,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::GL => "GL",
        };
        f.write_str(s)
    }
}

/// One classical simple (or reductive, for GL) type with its rank.
///
/// `rank` is the Dynkin rank for A/B/C/D and the matrix size for GL. The
/// number of epsilon coordinates is [`LieType::coords`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let min = match family {
            Family::A | Family::B | Family::C | Family::GL => 1,
            Family::D => 2,
        };
        if rank < min {
            return Err(Error::InvalidType(format!(
                "rank {rank} is below the minimum {min} for family {family}"
            )));
        }
        Ok(LieType { family, rank })
    }

    /// Number of epsilon coordinates a weight for this type carries.
    pub fn coords(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Size of the matrices in the defining realization.
    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::GL => self.rank,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Accepts `A3`, `B2`, `C2`, `D4`, `GL4` and the matrix-size aliases
    /// `sl4` (= A3), `gl4`, `sp4` (= C2), `so5` (= B2), `so8` (= D4).
    /// Parentheses are allowed: `gl(4)`.
    fn from_str(s: &str) -> Result<LieType> {
        let cleaned: String = s.chars().filter(|c| !"() ".contains(*c)).collect();
        let split = cleaned
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::Parse(format!("no rank in type {s:?}")))?;
        let (head, tail) = cleaned.split_at(split);
        let n: usize = tail
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in type {s:?}")))?;
        let head_lower = head.to_ascii_lowercase();
        match head_lower.as_str() {
            "a" => LieType::new(Family::A, n),
            "b" => LieType::new(Family::B, n),
            "c" => LieType::new(Family::C, n),
            "d" => LieType::new(Family::D, n),
            "gl" => LieType::new(Family::GL, n),
            "sl" => {
                if n < 2 {
                    return Err(Error::InvalidType(format!("sl({n}) has no roots")));
                }
                LieType::new(Family::A, n - 1)
            }
            "sp" => {
                if n < 2 || n % 2 != 0 {
                    return Err(Error::InvalidType(format!(
                        "sp({n}) requires an even size of at least 2"
                    )));
                }
                LieType::new(Family::C, n / 2)
            }
            "so" => {
                if n >= 3 && n % 2 == 1 {
                    LieType::new(Family::B, (n - 1) / 2)
                } else if n >= 4 && n % 2 == 0 {
                    LieType::new(Family::D, n / 2)
                } else {
                    Err(Error::InvalidType(format!("so({n}) is not supported")))
                }
            }
            _ => Err(Error::Parse(format!("unknown family in type {s:?}"))),
        }
    }
}

/// An integral weight in epsilon coordinates. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Weight {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean pairing in epsilon coordinates.
    pub fn dot(&self, other: &Weight) -> i64 {
        assert_eq!(self.len(), other.len(), "weight length mismatch");
        let acc: i128 = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (*a as i128) * (*b as i128))
            .sum();
        i64::try_from(acc).expect("weight pairing overflow")
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        let cleaned: String = s.chars().filter(|c| !"[]() ".contains(*c)).collect();
        if cleaned.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        let mut out = Vec::new();
        for piece in cleaned.split(',') {
            let v: i64 = piece
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight entry {piece:?}")))?;
            out.push(v);
        }
        Ok(Weight(out))
    }
}

/// Half-sum of positive roots, stored doubled so type B stays integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rho {
    pub twice: Vec<i64>,
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.twice.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if v % 2 == 0 {
                write!(f, "{}", v / 2)?;
            } else {
                write!(f, "{v}/2")?;
            }
        }
        write!(f, "]")
    }
}

/// A signed permutation `w` with `w(e_i) = signs[i] * e_{perm[i]}`
/// (0-based). Elements of the Weyl groups of all four families are stored
/// this way; for GL and A blocks the signs are all `+1`, and for D blocks
/// the number of `-1` signs is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn act(&self, v: &Weight) -> Weight {
        assert_eq!(self.len(), v.len(), "permutation size mismatch");
        let mut out = vec![0i64; v.len()];
        for i in 0..v.len() {
            out[self.perm[i]] = self.signs[i] * v.0[i];
        }
        Weight(out)
    }

    /// `self * other`, the element acting by `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.len(), other.len(), "permutation size mismatch");
        let n = self.len();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i64; n];
        for i in 0..n {
            perm[i] = self.perm[other.perm[i]];
            signs[i] = other.signs[i] * self.signs[other.perm[i]];
        }
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.len();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i64; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }
}

impl fmt::Display for SignedPermutation {
    /// Prints the signed images of the basis vectors, 1-based: `[2,-1,3]`
    /// sends e1 to e2, e2 to -e1, and fixes e3.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.signs[i] * (self.perm[i] as i64 + 1))?;
        }
        write!(f, "]")
    }
}

/// A product of classical blocks acting on consecutive coordinate ranges.
///
/// `canonical = true` means weights are functionals on the traceless part of
/// the torus, so adding a global constant vector does not change the weight.
/// That is how type A and the determinant-traceless Levi subalgebras
/// `s(gl(p) + gl(q))` are represented; all blocks are then GL blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    blocks: Vec<LieType>,
    canonical: bool,
}

impl RootSystem {
    /// The root system of a single type. Type A_r becomes a canonical GL(r+1).
    pub fn simple(t: LieType) -> RootSystem {
        match t.family {
            Family::A => RootSystem {
                blocks: vec![LieType { family: Family::GL, rank: t.rank + 1 }],
                canonical: true,
            },
            _ => RootSystem { blocks: vec![t], canonical: false },
        }
    }

    pub fn gl(n: usize) -> RootSystem {
        RootSystem::simple(LieType { family: Family::GL, rank: n })
    }

    pub fn sl(n: usize) -> RootSystem {
        assert!(n >= 2, "sl(n) needs n >= 2");
        RootSystem::simple(LieType { family: Family::A, rank: n - 1 })
    }

    /// A product of blocks on consecutive coordinate ranges. Only GL blocks
    /// may appear in a canonical product, and a B/C/D block may only be last.
    pub fn product(blocks: Vec<LieType>, canonical: bool) -> Result<RootSystem> {
        if blocks.is_empty() {
            return Err(Error::InvalidType("empty block list".into()));
        }
        let mut expanded = Vec::with_capacity(blocks.len());
        for (i, t) in blocks.iter().enumerate() {
            let t = match t.family {
                Family::A => LieType { family: Family::GL, rank: t.rank + 1 },
                _ => *t,
            };
            if t.family != Family::GL {
                if canonical {
                    return Err(Error::InvalidType(format!(
                        "canonical products admit only GL blocks, got {t}"
                    )));
                }
                if i + 1 != blocks.len() {
                    return Err(Error::InvalidType(format!(
                        "non-GL block {t} must be the last block"
                    )));
                }
            }
            expanded.push(t);
        }
        Ok(RootSystem { blocks: expanded, canonical })
    }

    pub fn blocks(&self) -> &[LieType] {
        &self.blocks
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Total number of epsilon coordinates.
    pub fn coords(&self) -> usize {
        self.blocks.iter().map(|t| t.coords()).sum()
    }

    /// Consecutive coordinate ranges of the blocks.
    pub fn block_spans(&self) -> Vec<(usize, usize, LieType)> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut off = 0;
        for t in &self.blocks {
            out.push((off, t.coords(), *t));
            off += t.coords();
        }
        out
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.len() != self.coords() {
            return Err(Error::DimensionMismatch(format!(
                "weight {w} has {} coordinates, {self} needs {}",
                w.len(),
                self.coords()
            )));
        }
        Ok(())
    }

    /// The canonical representative: unchanged for non-canonical systems,
    /// otherwise the global constant is fixed so the last coordinate is zero.
    pub fn canonicalize(&self, w: &Weight) -> Weight {
        if !self.canonical || w.is_empty() {
            return w.clone();
        }
        let c = *w.0.last().unwrap();
        Weight(w.0.iter().map(|v| v - c).collect())
    }

    pub fn weights_equal(&self, a: &Weight, b: &Weight) -> bool {
        self.canonicalize(a) == self.canonicalize(b)
    }

    /// Positive roots, block by block. Within a block: the differences
    /// `e_i - e_j` (i < j) in lexicographic (i, j) order, then for B/C/D the
    /// sums `e_i + e_j` (i < j), then the short roots `e_i` for B or the long
    /// roots `2 e_i` for C.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let n = self.coords();
        let mut out = Vec::new();
        for (off, len, t) in self.block_spans() {
            let mut push = |entries: &[(usize, i64)]| {
                let mut v = vec![0i64; n];
                for &(idx, val) in entries {
                    v[off + idx] = val;
                }
                out.push(Weight(v));
            };
            for i in 0..len {
                for j in (i + 1)..len {
                    push(&[(i, 1), (j, -1)]);
                }
            }
            match t.family {
                Family::GL | Family::A => {}
                Family::B | Family::C | Family::D => {
                    for i in 0..len {
                        for j in (i + 1)..len {
                            push(&[(i, 1), (j, 1)]);
                        }
                    }
                    match t.family {
                        Family::B => (0..len).for_each(|i| push(&[(i, 1)])),
                        Family::C => (0..len).for_each(|i| push(&[(i, 2)])),
                        _ => {}
                    }
                }
            }
        }
        out
    }

    pub fn n_positive_roots(&self) -> usize {
        self.blocks
            .iter()
            .map(|t| {
                let n = t.coords();
                match t.family {
                    Family::GL | Family::A => n * (n - 1) / 2,
                    Family::B | Family::C => n * n,
                    Family::D => n * (n - 1),
                }
            })
            .sum()
    }

    /// Sum of the positive roots, always integral.
    pub fn two_rho(&self) -> Weight {
        let mut v = vec![0i64; self.coords()];
        for (off, len, t) in self.block_spans() {
            for k in 0..len {
                let base = len as i64 - 1 - 2 * k as i64;
                v[off + k] = match t.family {
                    Family::GL | Family::A => base,
                    Family::B => base + len as i64,
                    Family::C => base + len as i64 + 1,
                    Family::D => base + len as i64 - 1,
                };
            }
        }
        Weight(v)
    }

    pub fn rho(&self) -> Rho {
        Rho { twice: self.two_rho().0 }
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        debug_assert_eq!(w.len(), self.coords());
        for (off, len, t) in self.block_spans() {
            let s = &w.0[off..off + len];
            let head = match t.family {
                Family::D => len - 1,
                _ => len,
            };
            if s[..head].windows(2).any(|p| p[0] < p[1]) {
                return false;
            }
            match t.family {
                Family::GL | Family::A => {}
                Family::B | Family::C => {
                    if s[len - 1] < 0 {
                        return false;
                    }
                }
                Family::D => {
                    if s[len - 2] < s[len - 1].abs() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The dominant representative of the Weyl orbit of `w`.
    pub fn dominant_rep(&self, w: &Weight) -> Weight {
        debug_assert_eq!(w.len(), self.coords());
        let mut out = w.0.clone();
        for (off, len, t) in self.block_spans() {
            let s = &mut out[off..off + len];
            match t.family {
                Family::GL | Family::A => s.sort_unstable_by(|a, b| b.cmp(a)),
                Family::B | Family::C => {
                    for v in s.iter_mut() {
                        *v = v.abs();
                    }
                    s.sort_unstable_by(|a, b| b.cmp(a));
                }
                Family::D => {
                    let negatives = s.iter().filter(|v| **v < 0).count();
                    let has_zero = s.iter().any(|v| *v == 0);
                    for v in s.iter_mut() {
                        *v = v.abs();
                    }
                    s.sort_unstable_by(|a, b| b.cmp(a));
                    if negatives % 2 == 1 && !has_zero {
                        s[len - 1] = -s[len - 1];
                    }
                }
            }
        }
        Weight(out)
    }

    /// The full Weyl orbit of `w` (through its dominant representative),
    /// without canonicalization of the results.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let dom = self.dominant_rep(w);
        let mut parts: Vec<Vec<Vec<i64>>> = Vec::new();
        for (off, len, t) in self.block_spans() {
            parts.push(block_orbit(&dom.0[off..off + len], t.family));
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(w.len());
        fn rec(parts: &[Vec<Vec<i64>>], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
            match parts.split_first() {
                None => out.push(Weight(cur.clone())),
                Some((head, rest)) => {
                    for choice in head {
                        let mark = cur.len();
                        cur.extend_from_slice(choice);
                        rec(rest, cur, out);
                        cur.truncate(mark);
                    }
                }
            }
        }
        rec(&parts, &mut cur, &mut out);
        out
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let mut acc: u128 = 1;
        for t in &self.blocks {
            let n = t.coords() as u128;
            let fact: u128 = (1..=n).product();
            let pow = |e: u128| 2u128.checked_pow(e as u32).expect("weyl order overflow");
            acc = acc
                .checked_mul(match t.family {
                    Family::GL | Family::A => fact,
                    Family::B | Family::C => pow(n) * fact,
                    Family::D => pow(n - 1) * fact,
                })
                .expect("weyl order overflow");
        }
        acc
    }

    /// The unique Weyl element `w` with `w(v)` dominant, when `v` is regular;
    /// `None` when `v` lies on a reflection hyperplane.
    pub fn sort_to_chamber(&self, v: &Weight) -> Option<(SignedPermutation, Weight)> {
        debug_assert_eq!(v.len(), self.coords());
        let n = self.coords();
        let mut w = SignedPermutation::identity(n);
        for (off, len, t) in self.block_spans() {
            let s = &v.0[off..off + len];
            let (perm, signs) = block_sort(s, t.family)?;
            for i in 0..len {
                w.perm[off + i] = off + perm[i];
                w.signs[off + i] = signs[i];
            }
        }
        let image = w.act(v);
        debug_assert!(self.is_dominant(&image));
        Some((w, image))
    }

    /// Number of positive roots sent to negative roots by `w`.
    pub fn length(&self, w: &SignedPermutation) -> usize {
        let pos: std::collections::BTreeSet<Vec<i64>> =
            self.positive_roots().into_iter().map(|r| r.0).collect();
        self.positive_roots()
            .iter()
            .filter(|alpha| pos.contains(&w.act(alpha).neg().0))
            .count()
    }

    /// Longest element: it sends every positive root to a negative root.
    pub fn longest_element(&self) -> SignedPermutation {
        let n = self.coords();
        let mut w = SignedPermutation::identity(n);
        for (off, len, t) in self.block_spans() {
            match t.family {
                Family::GL | Family::A => {
                    for i in 0..len {
                        w.perm[off + i] = off + len - 1 - i;
                    }
                }
                Family::B | Family::C => {
                    for i in 0..len {
                        w.signs[off + i] = -1;
                    }
                }
                Family::D => {
                    let flips = if len % 2 == 0 { len } else { len - 1 };
                    for i in 0..flips {
                        w.signs[off + i] = -1;
                    }
                }
            }
        }
        w
    }

    /// Dotted action `w . lambda = w(lambda + rho) - rho`, computed on
    /// doubled weights so everything stays integral.
    pub fn dot_act(&self, w: &SignedPermutation, lam: &Weight) -> Weight {
        let two_rho = self.two_rho();
        let shifted = lam.scaled(2).add(&two_rho);
        let moved = w.act(&shifted).sub(&two_rho);
        debug_assert!(moved.0.iter().all(|v| v % 2 == 0), "dotted action not integral");
        Weight(moved.0.iter().map(|v| v / 2).collect())
    }

    /// Weyl dimension of the irreducible with highest weight `lam`.
    pub fn weyl_dim(&self, lam: &Weight) -> Result<u128> {
        self.check_weight(lam)?;
        if !self.is_dominant(lam) {
            return Err(Error::NonDominant(format!("{lam} is not dominant for {self}")));
        }
        let two_rho = self.two_rho();
        let doubled = lam.scaled(2).add(&two_rho);
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for alpha in self.positive_roots() {
            let a = doubled.dot(&alpha);
            let b = two_rho.dot(&alpha);
            assert!(a > 0 && b > 0, "weyl_dim pairing must be positive");
            num = num.checked_mul(a as u128).expect("weyl_dim overflow");
            den = den.checked_mul(b as u128).expect("weyl_dim overflow");
            let g = gcd_u128(num, den);
            num /= g;
            den /= g;
        }
        assert_eq!(den, 1, "weyl_dim must be an integer");
        Ok(num)
    }

    /// Whether `lam - mu` is a nonnegative integer combination of positive
    /// roots. On canonical systems the comparison is made after aligning by
    /// the unique admissible global shift, if one exists.
    pub fn le_root_order(&self, mu: &Weight, lam: &Weight) -> bool {
        debug_assert_eq!(mu.len(), self.coords());
        debug_assert_eq!(lam.len(), self.coords());
        let mut diff = lam.sub(mu);
        if self.canonical {
            let total = diff.sum();
            let n = self.coords() as i64;
            if total % n != 0 {
                return false;
            }
            let t = total / n;
            for v in diff.0.iter_mut() {
                *v -= t;
            }
        }
        for (off, len, ty) in self.block_spans() {
            if !block_in_positive_cone(&diff.0[off..off + len], ty.family) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.canonical && self.blocks.len() == 1 {
            return write!(f, "A{}", self.blocks[0].rank - 1);
        }
        if self.canonical {
            write!(f, "s(")?;
        }
        for (i, t) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        if self.canonical {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Positive-cone membership for one block: is `d` a nonnegative integer
/// combination of the block's positive roots? Stated via partial sums of `d`.
fn block_in_positive_cone(d: &[i64], family: Family) -> bool {
    let n = d.len();
    let prefix: Vec<i64> = d
        .iter()
        .scan(0i64, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect();
    match family {
        Family::GL | Family::A => {
            prefix[..n - 1].iter().all(|p| *p >= 0) && prefix[n - 1] == 0
        }
        Family::B => prefix.iter().all(|p| *p >= 0),
        Family::C => {
            prefix[..n - 1].iter().all(|p| *p >= 0)
                && prefix[n - 1] >= 0
                && prefix[n - 1] % 2 == 0
        }
        Family::D => {
            if n >= 2 && !prefix[..n - 2].iter().all(|p| *p >= 0) {
                return false;
            }
            let total = prefix[n - 1];
            if total % 2 != 0 || total < 0 {
                return false;
            }
            let c_last = total / 2;
            prefix[n - 2] - c_last >= 0
        }
    }
}

/// All distinct vectors in the block Weyl orbit of the dominant slice `s`.
fn block_orbit(s: &[i64], family: Family) -> Vec<Vec<i64>> {
    let signed_multisets: Vec<Vec<i64>> = match family {
        Family::GL | Family::A => vec![s.to_vec()],
        Family::B | Family::C | Family::D => {
            let mut counts: Vec<(i64, usize)> = Vec::new();
            for v in s {
                let a = v.abs();
                match counts.iter_mut().find(|(x, _)| *x == a) {
                    Some((_, c)) => *c += 1,
                    None => counts.push((a, 1)),
                }
            }
            let has_zero = counts.iter().any(|(a, _)| *a == 0);
            // For D the number of sign flips is even, so the parity of
            // negative entries matches the input everywhere on the orbit
            // (a dominant D representative can end in a negative entry).
            let neg_parity = s.iter().filter(|v| **v < 0).count() % 2;
            let mut sets = Vec::new();
            let mut cur = Vec::new();
            fn assign(
                counts: &[(i64, usize)],
                cur: &mut Vec<i64>,
                negs: usize,
                family: Family,
                has_zero: bool,
                neg_parity: usize,
                out: &mut Vec<Vec<i64>>,
            ) {
                match counts.split_first() {
                    None => {
                        if family != Family::D || has_zero || negs % 2 == neg_parity {
                            out.push(cur.clone());
                        }
                    }
                    Some((&(a, m), rest)) => {
                        if a == 0 {
                            let mark = cur.len();
                            cur.extend(std::iter::repeat(0).take(m));
                            assign(rest, cur, negs, family, has_zero, neg_parity, out);
                            cur.truncate(mark);
                        } else {
                            for k in 0..=m {
                                let mark = cur.len();
                                cur.extend(std::iter::repeat(a).take(m - k));
                                cur.extend(std::iter::repeat(-a).take(k));
                                assign(rest, cur, negs + k, family, has_zero, neg_parity, out);
                                cur.truncate(mark);
                            }
                        }
                    }
                }
            }
            assign(&counts, &mut cur, 0, family, has_zero, neg_parity, &mut sets);
            sets
        }
    };
    let mut out = Vec::new();
    for multiset in signed_multisets {
        multiset_permutations(&multiset, &mut out);
    }
    out
}

/// Appends all distinct permutations of `values` to `out`.
fn multiset_permutations(values: &[i64], out: &mut Vec<Vec<i64>>) {
    let mut counts: Vec<(i64, usize)> = Vec::new();
    for v in values {
        match counts.iter_mut().find(|(x, _)| x == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((*v, 1)),
        }
    }
    counts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let n = values.len();
    let mut cur = Vec::with_capacity(n);
    fn rec(counts: &mut Vec<(i64, usize)>, cur: &mut Vec<i64>, n: usize, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            rec(counts, cur, n, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
    rec(&mut counts, &mut cur, n, out);
}

/// Sorts one block slice into the dominant chamber. Returns the block-local
/// permutation and signs, or `None` when the slice is singular for the
/// block's Weyl group.
fn block_sort(s: &[i64], family: Family) -> Option<(Vec<usize>, Vec<i64>)> {
    let n = s.len();
    match family {
        Family::GL | Family::A => {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by_key(|&i| std::cmp::Reverse(s[i]));
            if idx.windows(2).any(|p| s[p[0]] == s[p[1]]) {
                return None;
            }
            let mut perm = vec![0usize; n];
            for (slot, &i) in idx.iter().enumerate() {
                perm[i] = slot;
            }
            Some((perm, vec![1; n]))
        }
        Family::B | Family::C | Family::D => {
            let zeros = s.iter().filter(|v| **v == 0).count();
            let max_zeros = if family == Family::D { 1 } else { 0 };
            if zeros > max_zeros {
                return None;
            }
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by_key(|&i| std::cmp::Reverse(s[i].abs()));
            if idx.windows(2).any(|p| s[p[0]].abs() == s[p[1]].abs()) {
                return None;
            }
            let mut perm = vec![0usize; n];
            for (slot, &i) in idx.iter().enumerate() {
                perm[i] = slot;
            }
            // Desired dominant values by slot. For D an odd number of
            // negative entries either leaves a sign on the last slot or is
            // absorbed by a zero coordinate, whose sign is free; either way
            // the element built here has an even number of sign flips.
            let mut by_slot: Vec<i64> = idx.iter().map(|&i| s[i].abs()).collect();
            let negatives = s.iter().filter(|v| **v < 0).count();
            let mut flip_zero = false;
            if family == Family::D && negatives % 2 == 1 {
                if zeros == 1 {
                    flip_zero = true;
                } else {
                    by_slot[n - 1] = -by_slot[n - 1];
                }
            }
            let mut signs = vec![1i64; n];
            for i in 0..n {
                signs[i] = if s[i] == 0 {
                    if flip_zero {
                        -1
                    } else {
                        1
                    }
                } else {
                    by_slot[perm[i]].signum() * s[i].signum()
                };
            }
            Some((perm, signs))
        }
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn t(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn wt(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn parse_types_and_aliases() {
        assert_eq!(t("A3"), LieType { family: Family::A, rank: 3 });
        assert_eq!(t("sl4"), t("A3"));
        assert_eq!(t("sp4"), t("C2"));
        assert_eq!(t("so5"), t("B2"));
        assert_eq!(t("so8"), t("D4"));
        assert_eq!(t("gl(4)"), LieType { family: Family::GL, rank: 4 });
        assert!("sp3".parse::<LieType>().is_err());
        assert!("so2".parse::<LieType>().is_err());
        assert!("D1".parse::<LieType>().is_err());
        assert!("E8".parse::<LieType>().is_err());
        assert_eq!(t("B2").to_string(), "B2");
    }

    #[test]
    fn weight_round_trip() {
        let w = wt("[2,1,-1]");
        assert_eq!(w, Weight(vec![2, 1, -1]));
        assert_eq!(w.to_string(), "[2,1,-1]");
        assert_eq!(wt("2, 1, -1"), w);
    }

    #[test]
    fn root_counts_match_closed_forms() {
        for (name, expect) in [("GL4", 6), ("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12)] {
            let sys = RootSystem::simple(t(name));
            assert_eq!(sys.positive_roots().len(), expect, "{name}");
            assert_eq!(sys.n_positive_roots(), expect, "{name}");
        }
        let levi = RootSystem::product(vec![t("GL2"), t("B2")], false).unwrap();
        assert_eq!(levi.positive_roots().len(), 1 + 4);
        assert_eq!(levi.coords(), 4);
    }

    #[test]
    fn two_rho_equals_root_sum() {
        for name in ["GL3", "B2", "B3", "C2", "C3", "D4", "A2"] {
            let sys = RootSystem::simple(t(name));
            let mut acc = Weight::zero(sys.coords());
            for r in sys.positive_roots() {
                acc = acc.add(&r);
            }
            assert_eq!(acc, sys.two_rho(), "{name}");
        }
        assert_eq!(RootSystem::simple(t("B2")).two_rho(), wt("[3,1]"));
        assert_eq!(RootSystem::simple(t("C2")).two_rho(), wt("[4,2]"));
        assert_eq!(RootSystem::simple(t("D4")).two_rho(), wt("[6,4,2,0]"));
        assert_eq!(RootSystem::gl(3).two_rho(), wt("[2,0,-2]"));
    }

    #[test]
    fn rho_display_has_exact_halves() {
        assert_eq!(RootSystem::simple(t("B2")).rho().to_string(), "[3/2,1/2]");
        assert_eq!(RootSystem::simple(t("C2")).rho().to_string(), "[2,1]");
        assert_eq!(RootSystem::gl(3).rho().to_string(), "[1,0,-1]");
    }

    #[test]
    fn dominance_by_family() {
        let b2 = RootSystem::simple(t("B2"));
        assert!(b2.is_dominant(&wt("[2,1]")));
        assert!(!b2.is_dominant(&wt("[1,2]")));
        assert!(!b2.is_dominant(&wt("[1,-1]")));
        let d3 = RootSystem::simple(t("D3"));
        assert!(d3.is_dominant(&wt("[2,1,-1]")));
        assert!(d3.is_dominant(&wt("[2,1,1]")));
        assert!(!d3.is_dominant(&wt("[2,1,-2]")));
        let gl3 = RootSystem::gl(3);
        assert!(gl3.is_dominant(&wt("[1,1,0]")));
        assert!(!gl3.is_dominant(&wt("[0,1,1]")));
    }

    /// Independent count of Gelfand-Tsetlin patterns with top row `lam`,
    /// which is the dimension of the gl(n) irreducible.
    fn gt_pattern_count(lam: &[i64]) -> u128 {
        fn rec(row: &[i64]) -> u128 {
            if row.len() <= 1 {
                return 1;
            }
            let mut total = 0u128;
            let mut next = vec![0i64; row.len() - 1];
            fn fill(row: &[i64], next: &mut Vec<i64>, k: usize, total: &mut u128) {
                if k == next.len() {
                    *total += rec(&next.clone());
                    return;
                }
                for v in row[k + 1]..=row[k] {
                    next[k] = v;
                    fill(row, next, k + 1, total);
                }
            }
            fill(row, &mut next, 0, &mut total);
            total
        }
        rec(lam)
    }

    #[test]
    fn weyl_dim_matches_pattern_count_for_gl() {
        let cases = [vec![2, 1, 0], vec![3, 1, 0], vec![2, 2, 0], vec![3, 2, 1, 0]];
        for lam in cases {
            let sys = RootSystem::gl(lam.len());
            let dim = sys.weyl_dim(&Weight(lam.clone())).unwrap();
            assert_eq!(dim, gt_pattern_count(&lam), "{lam:?}");
        }
        assert_eq!(RootSystem::gl(3).weyl_dim(&wt("[2,1,0]")).unwrap(), 8);
    }

    #[test]
    fn weyl_dim_small_classical_cases() {
        let b2 = RootSystem::simple(t("B2"));
        assert_eq!(b2.weyl_dim(&wt("[1,0]")).unwrap(), 5);
        assert_eq!(b2.weyl_dim(&wt("[1,1]")).unwrap(), 10);
        let c2 = RootSystem::simple(t("C2"));
        assert_eq!(c2.weyl_dim(&wt("[1,0]")).unwrap(), 4);
        assert_eq!(c2.weyl_dim(&wt("[1,1]")).unwrap(), 5);
        assert_eq!(c2.weyl_dim(&wt("[2,0]")).unwrap(), 10);
        let d4 = RootSystem::simple(t("D4"));
        assert_eq!(d4.weyl_dim(&wt("[1,0,0,0]")).unwrap(), 8);
        let a1 = RootSystem::sl(2);
        for k in 0..6 {
            assert_eq!(a1.weyl_dim(&Weight(vec![k, 0])).unwrap(), (k + 1) as u128);
        }
        assert!(RootSystem::gl(3).weyl_dim(&wt("[0,1,0]")).is_err());
    }

    #[test]
    fn longest_element_negates_positive_roots() {
        for name in ["GL4", "A2", "B3", "C2", "D3", "D4"] {
            let sys = RootSystem::simple(t(name));
            let w0 = sys.longest_element();
            let pos: std::collections::BTreeSet<Vec<i64>> =
                sys.positive_roots().into_iter().map(|r| r.0).collect();
            for alpha in sys.positive_roots() {
                assert!(pos.contains(&w0.act(&alpha).neg().0), "{name} {alpha}");
            }
            assert_eq!(sys.length(&w0), sys.n_positive_roots(), "{name}");
            if name.starts_with('D') {
                assert_eq!(w0.signs.iter().filter(|s| **s == -1).count() % 2, 0);
            }
        }
    }

    #[test]
    fn compose_and_inverse_agree_with_action() {
        let sys = RootSystem::simple(t("B3"));
        let mut rng = SplitMix64::new(11);
        for _ in 0..200 {
            let v = Weight((0..3).map(|_| rng.range_i64(-4, 4)).collect());
            let a = random_element(&sys, &mut rng);
            let b = random_element(&sys, &mut rng);
            assert_eq!(a.compose(&b).act(&v), a.act(&b.act(&v)));
            assert_eq!(a.inverse().act(&a.act(&v)), v);
        }
    }

    fn random_element(sys: &RootSystem, rng: &mut SplitMix64) -> SignedPermutation {
        // A random regular vector sorts to the chamber by a unique element;
        // its inverse is a uniform-ish group element for test purposes.
        loop {
            let v = Weight((0..sys.coords()).map(|_| rng.range_i64(-20, 20)).collect());
            if let Some((w, _)) = sys.sort_to_chamber(&v) {
                return w;
            }
        }
    }

    #[test]
    fn sort_to_chamber_properties() {
        let mut rng = SplitMix64::new(7);
        for name in ["GL3", "B3", "C2", "D3", "D4"] {
            let sys = RootSystem::simple(t(name));
            let n = sys.coords();
            let mut regular_seen = 0;
            for _ in 0..400 {
                let v = Weight((0..n).map(|_| rng.range_i64(-5, 5)).collect());
                match sys.sort_to_chamber(&v) {
                    None => {
                        // Singular exactly when the stabilizer is nontrivial.
                        let orbit = sys.orbit(&v);
                        assert!(
                            (orbit.len() as u128) < sys.weyl_order(),
                            "{name}: {v} reported singular but has full orbit"
                        );
                    }
                    Some((w, dom)) => {
                        regular_seen += 1;
                        assert_eq!(w.act(&v), dom, "{name} {v}");
                        assert!(sys.is_dominant(&dom), "{name} {v}");
                        assert_eq!(sys.orbit(&v).len() as u128, sys.weyl_order());
                        if name.starts_with('D') {
                            let flips = w.signs.iter().filter(|s| **s == -1).count();
                            assert_eq!(flips % 2, 0, "{name}: D element must flip evenly");
                        }
                    }
                }
            }
            assert!(regular_seen > 50, "{name}: sweep produced too few regular vectors");
        }
    }

    #[test]
    fn orbit_sizes_and_membership() {
        let b2 = RootSystem::simple(t("B2"));
        assert_eq!(b2.orbit(&wt("[1,0]")).len(), 4);
        assert_eq!(b2.orbit(&wt("[1,1]")).len(), 4);
        assert_eq!(b2.orbit(&wt("[2,1]")).len(), 8);
        let d3 = RootSystem::simple(t("D3"));
        let orb = d3.orbit(&wt("[1,0,0]"));
        assert_eq!(orb.len(), 6);
        assert!(orb.contains(&wt("[-1,0,0]")));
        // (1,1,1) in D3: even sign flips only, so 4 sign patterns x 1 perm.
        let orb = d3.orbit(&wt("[1,1,1]"));
        assert_eq!(orb.len(), 4);
        assert!(orb.contains(&wt("[1,-1,-1]")));
        assert!(!orb.contains(&wt("[1,1,-1]")));
        // Every orbit member has the same dominant representative.
        for v in b2.orbit(&wt("[2,1]")) {
            assert_eq!(b2.dominant_rep(&v), wt("[2,1]"));
        }
        // A dominant D representative with negative last coordinate has the
        // odd-parity orbit, disjoint from its mirror.
        let orb = d3.orbit(&wt("[1,1,-1]"));
        assert_eq!(orb.len(), 4);
        assert!(orb.contains(&wt("[1,1,-1]")));
        assert!(orb.contains(&wt("[-1,-1,-1]")));
        assert!(!orb.contains(&wt("[1,1,1]")));
        for v in d3.orbit(&wt("[2,1,-1]")) {
            assert_eq!(d3.dominant_rep(&v), wt("[2,1,-1]"));
        }
    }

    #[test]
    fn dot_act_is_an_action() {
        let mut rng = SplitMix64::new(23);
        for name in ["A2", "B2", "C3", "D3", "GL3"] {
            let sys = RootSystem::simple(t(name));
            let n = sys.coords();
            for _ in 0..100 {
                let lam = Weight((0..n).map(|_| rng.range_i64(-3, 3)).collect());
                let a = random_element(&sys, &mut rng);
                let b = random_element(&sys, &mut rng);
                let lhs = sys.dot_act(&a, &sys.dot_act(&b, &lam));
                let rhs = sys.dot_act(&a.compose(&b), &lam);
                assert_eq!(lhs, rhs, "{name}");
                assert_eq!(sys.dot_act(&SignedPermutation::identity(n), &lam), lam);
            }
        }
    }

    #[test]
    fn root_order_examples() {
        let gl3 = RootSystem::gl(3);
        assert!(gl3.le_root_order(&wt("[1,1,1]"), &wt("[2,1,0]")));
        assert!(gl3.le_root_order(&wt("[2,1,0]"), &wt("[2,1,0]")));
        assert!(!gl3.le_root_order(&wt("[2,1,0]"), &wt("[1,1,1]")));
        assert!(!gl3.le_root_order(&wt("[1,1,0]"), &wt("[2,1,0]")));
        let b2 = RootSystem::simple(t("B2"));
        assert!(b2.le_root_order(&wt("[0,0]"), &wt("[1,0]")));
        assert!(b2.le_root_order(&wt("[1,0]"), &wt("[1,1]")));
        let c2 = RootSystem::simple(t("C2"));
        assert!(!c2.le_root_order(&wt("[0,0]"), &wt("[1,0]")));
        assert!(c2.le_root_order(&wt("[0,0]"), &wt("[1,1]")));
        let d2 = RootSystem::simple(t("D2"));
        assert!(d2.le_root_order(&wt("[0,0]"), &wt("[1,1]")));
        assert!(!d2.le_root_order(&wt("[0,0]"), &wt("[1,0]")));
        // Canonical: representatives differing by a constant are comparable.
        let a1 = RootSystem::sl(2);
        assert!(a1.le_root_order(&wt("[0,1]"), &wt("[1,0]")));
        assert!(a1.le_root_order(&wt("[-1,0]"), &wt("[1,0]")));
        assert!(!a1.le_root_order(&wt("[0,0]"), &wt("[1,0]")));
    }

    #[test]
    fn root_order_matches_simple_root_cone() {
        // Independent oracle: the positive cone is the set of nonnegative
        // integer combinations of the simple roots, written out literally
        // here. Membership tests then sweep every pair in a small box.
        let simple_roots = |name: &str| -> Vec<Vec<i64>> {
            match name {
                "GL3" => vec![vec![1, -1, 0], vec![0, 1, -1]],
                "B3" => vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]],
                "C3" => vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 2]],
                "D3" => vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 1, 1]],
                _ => unreachable!(),
            }
        };
        for name in ["GL3", "B3", "C3", "D3"] {
            let sys = RootSystem::simple(t(name));
            let alphas = simple_roots(name);
            // Simple-root coefficients of a box difference are bounded by
            // the largest partial sum, at most 12 here; 13 is safe.
            let mut cone = std::collections::BTreeSet::new();
            let bound = 13i64;
            for c0 in 0..bound {
                for c1 in 0..bound {
                    for c2 in 0..(if alphas.len() > 2 { bound } else { 1 }) {
                        let coeffs = [c0, c1, c2];
                        let mut v = vec![0i64; 3];
                        for (k, alpha) in alphas.iter().enumerate() {
                            for i in 0..3 {
                                v[i] += coeffs[k] * alpha[i];
                            }
                        }
                        cone.insert(v);
                    }
                }
            }
            let vals = [-2i64, -1, 0, 1, 2];
            for &a in &vals {
                for &b in &vals {
                    for &c in &vals {
                        for &x in &vals {
                            for &y in &vals {
                                for &z in &vals {
                                    let lam = Weight(vec![a, b, c]);
                                    let mu = Weight(vec![x, y, z]);
                                    let expect = cone.contains(&lam.sub(&mu).0);
                                    assert_eq!(
                                        sys.le_root_order(&mu, &lam),
                                        expect,
                                        "{name} {mu} {lam}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn canonicalize_and_equality() {
        let a2 = RootSystem::sl(3);
        assert_eq!(a2.canonicalize(&wt("[3,2,1]")), wt("[2,1,0]"));
        assert!(a2.weights_equal(&wt("[3,2,1]"), &wt("[2,1,0]")));
        let s22 = RootSystem::product(vec![t("GL2"), t("GL2")], true).unwrap();
        assert!(s22.weights_equal(&wt("[1,0,2,2]"), &wt("[-1,-2,0,0]")));
        let gl3 = RootSystem::gl(3);
        assert!(!gl3.weights_equal(&wt("[3,2,1]"), &wt("[2,1,0]")));
    }

    #[test]
    fn weyl_order_values() {
        assert_eq!(RootSystem::gl(4).weyl_order(), 24);
        assert_eq!(RootSystem::simple(t("B3")).weyl_order(), 48);
        assert_eq!(RootSystem::simple(t("D4")).weyl_order(), 192);
        let levi = RootSystem::product(vec![t("GL2"), t("C2")], false).unwrap();
        assert_eq!(levi.weyl_order(), 2 * 8);
    }
}
