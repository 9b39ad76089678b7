//! Subsets of `[n]` as characteristic words.
//!
//! Bit `i` (least significant first) of a [`SubsetWord`] stands for element
//! `i + 1`. Everything here is pure arithmetic on `u64`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of non-apex vertices; the clique lives on `n + 1` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct GroundScale(u32);

impl GroundScale {
    pub const MAX: u32 = 64;

    pub fn new(n: u32) -> Result<Self> {
        if (1..=Self::MAX).contains(&n) {
            Ok(GroundScale(n))
        } else {
            Err(Error::input(format!(
                "n must lie in 1..={}, got {n}",
                Self::MAX
            )))
        }
    }

    pub fn n(self) -> u32 {
        self.0
    }

    /// Characteristic word of `[n]`.
    pub fn full(self) -> SubsetWord {
        SubsetWord(if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        })
    }

    /// All nonempty subsets of `[n]` in increasing word order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = SubsetWord> {
        let full = self.full().0;
        (1..=full).map(SubsetWord)
    }

    /// The largest key admitted to the small-side family, `⌊n/3⌋`.
    pub fn small_side_threshold(self) -> u32 {
        self.0 / 3
    }
}

impl TryFrom<u32> for GroundScale {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        GroundScale::new(n)
    }
}

impl From<GroundScale> for u32 {
    fn from(s: GroundScale) -> u32 {
        s.0
    }
}

impl fmt::Display for GroundScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A subset of `[n]`. The derived order is numeric word order; the
/// precedence order lives in [`cmp_precedence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetWord(u64);

impl SubsetWord {
    pub const EMPTY: SubsetWord = SubsetWord(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetWord(bits)
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if !(1..=64).contains(&e) {
                return Err(Error::input(format!("element {e} outside 1..=64")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetWord(bits))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=64).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    pub fn is_subset_of(self, other: SubsetWord) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: SubsetWord) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: SubsetWord) -> SubsetWord {
        SubsetWord(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetWord) -> SubsetWord {
        SubsetWord(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetWord) -> SubsetWord {
        SubsetWord(self.0 & !other.0)
    }

    pub fn fits(self, n: GroundScale) -> bool {
        self.is_subset_of(n.full())
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let tz = rest.trailing_zeros();
            rest &= rest - 1;
            Some(tz + 1)
        })
    }

    /// Lowercase hex word, the machine-readable rendering.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        let digits = s.strip_prefix("0x").unwrap_or(s);
        u64::from_str_radix(digits, 16)
            .map(SubsetWord)
            .map_err(|e| Error::input(format!("bad subset word {s:?}: {e}")))
    }
}

/// Renders as a sorted element list, e.g. `{1,3,4}`.
impl fmt::Display for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// `[n] ∖ x`; may be empty.
pub fn complement(x: SubsetWord, n: GroundScale) -> SubsetWord {
    n.full().difference(x)
}

/// `min(|x|, n − |x|)`.
pub fn key(x: SubsetWord, n: GroundScale) -> u32 {
    let size = x.len();
    size.min(n.n() - size)
}

/// Total precedence order: key, then cardinality, then numeric word value.
pub fn cmp_precedence(x: SubsetWord, y: SubsetWord, n: GroundScale) -> Ordering {
    (key(x, n), x.len(), x.bits()).cmp(&(key(y, n), y.len(), y.bits()))
}

/// Strict `x ≺ y`.
pub fn precedes(x: SubsetWord, y: SubsetWord, n: GroundScale) -> bool {
    cmp_precedence(x, y, n) == Ordering::Less
}

/// Nonempty subsets of `[n]` sorted by precedence.
pub fn precedence_sorted(n: GroundScale) -> Vec<SubsetWord> {
    let mut all: Vec<_> = n.nonempty_subsets().collect();
    all.sort_by(|&a, &b| cmp_precedence(a, b, n));
    all
}

/// `{X, Y, X ∪ Y}` for disjoint nonempty `X`, `Y`, stored in precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelatedTriple {
    members: [SubsetWord; 3],
    union_member: u8,
}

impl RelatedTriple {
    /// Sorted members `x0 ≺ x1 ≺ x2`.
    pub fn members(&self) -> [SubsetWord; 3] {
        self.members
    }

    pub fn least(&self) -> SubsetWord {
        self.members[0]
    }

    pub fn greatest(&self) -> SubsetWord {
        self.members[2]
    }

    /// Index of the member that is the union of the other two.
    pub fn union_member(&self) -> usize {
        self.union_member as usize
    }

    pub fn union(&self) -> SubsetWord {
        self.members[self.union_member as usize]
    }

    pub fn contains(&self, x: SubsetWord) -> bool {
        self.members.contains(&x)
    }
}

impl fmt::Display for RelatedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.members;
        write!(f, "({a}, {b}, {c})")
    }
}

/// The related triple spanned by `x` and `y`, if they are disjoint and nonempty.
pub fn related_triple_of(x: SubsetWord, y: SubsetWord, n: GroundScale) -> Option<RelatedTriple> {
    if x.is_empty() || y.is_empty() || !x.is_disjoint(y) {
        return None;
    }
    let u = x.union(y);
    let mut members = [x, y, u];
    members.sort_by(|&a, &b| cmp_precedence(a, b, n));
    let union_member = members.iter().position(|&m| m == u).unwrap_or(2) as u8;
    Some(RelatedTriple {
        members,
        union_member,
    })
}

/// Every related triple over `[n]` exactly once.
///
/// Triples are produced by walking the union `U` and splitting it into an
/// unordered pair `{X, U∖X}` with `X` holding the lowest element of `U`.
pub fn enumerate_related_triples(n: GroundScale) -> impl Iterator<Item = RelatedTriple> {
    n.nonempty_subsets()
        .filter(|u| u.len() >= 2)
        .flat_map(move |u| {
            let low = u.bits() & u.bits().wrapping_neg();
            let rest = u.bits() & !low;
            // proper subsets of `rest` (excluding `rest` itself) choose the partner of `low`
            proper_subsets(rest).map(move |s| {
                let x = SubsetWord(low | s);
                related_triple_of(x, u.difference(x), n).expect("disjoint nonempty split")
            })
        })
}

/// All subsets of `mask` except `mask` itself, including the empty set.
fn proper_subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur == mask {
            return None;
        }
        let succ = (cur.wrapping_sub(mask)) & mask;
        next = Some(succ);
        Some(cur)
    })
}

/// `(3^n − 2^(n+1) + 1) / 2`, the number of related triples.
pub fn related_triple_count(n: GroundScale) -> BigUint {
    let three = BigUint::from(3u32).pow(n.n());
    let two = BigUint::one() << (n.n() + 1);
    (three + BigUint::one() - two) / BigUint::from(2u32)
}

/// `{X ≠ ∅ : key(X) ≤ ⌊n/3⌋}` in increasing word order.
pub fn small_side_family(n: GroundScale) -> Vec<SubsetWord> {
    let t = n.small_side_threshold();
    n.nonempty_subsets().filter(|&x| key(x, n) <= t).collect()
}

/// `|S(n)|` by cardinality classes, without enumerating subsets.
pub fn small_side_size(n: GroundScale) -> BigUint {
    let t = n.small_side_threshold();
    (1..=n.n())
        .filter(|&k| k.min(n.n() - k) <= t)
        .map(|k| binomial(n.n(), k).expect("k <= n"))
        .sum()
}

pub fn is_small_side(x: SubsetWord, n: GroundScale) -> bool {
    !x.is_empty() && key(x, n) <= n.small_side_threshold()
}

/// Exact `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::input(format!("binomial({n}, {k}): k exceeds n")));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    Ok(acc)
}

/// `Σ_{k=0}^{max_k} C(n, k)`; pass `⌊t⌋` for a real threshold `t`.
pub fn binomial_sum_le(n: u32, max_k: u32) -> BigUint {
    let mut sum = BigUint::zero();
    for k in 0..=max_k.min(n) {
        sum += binomial(n, k).expect("k <= n");
    }
    sum
}
