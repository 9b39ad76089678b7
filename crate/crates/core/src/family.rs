//! Linear and scarce families of nonempty subsets of `[n]`.
//!
//! A family is *linear* when it meets every related triple `{X, Y, X ∪ Y}` in
//! 0, 1 or 3 members and *scarce* when it meets every related triple in at
//! most one. Two members of a family lie in a common related triple exactly
//! when they are disjoint or nested, which is what the pairwise predicates
//! below exploit.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::run::{Budget, RunOptions};
use crate::subset::{
    cmp_precedence, enumerate_related_triples, is_small_side, precedence_sorted, related_triple_of,
    small_side_size, GroundScale, RelatedTriple, SubsetWord,
};

/// Largest `n` enumerated by the depth-first search without `force`.
pub const ENUMERATE_CAP: u32 = 5;
/// Largest `n` for the power-set oracle without `force`.
pub const BRUTE_FORCE_CAP: u32 = 4;
/// Family masks are `u64` words over the `2^n − 1` nonempty subsets.
pub const ENGINE_LIMIT: u32 = 6;

/// A set of distinct nonempty subsets of `[n]`, kept in increasing word order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    scale: GroundScale,
    members: Vec<SubsetWord>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = SubsetWord>>(scale: GroundScale, members: I) -> Result<Self> {
        let mut members: Vec<SubsetWord> = members.into_iter().collect();
        for &m in &members {
            if m.is_empty() {
                return Err(Error::input("families never contain the empty set"));
            }
            if !m.fits(scale) {
                return Err(Error::input(format!("{m} is not a subset of [{scale}]")));
            }
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("family members must be distinct"));
        }
        Ok(SetFamily { scale, members })
    }

    pub fn empty(scale: GroundScale) -> Self {
        SetFamily {
            scale,
            members: Vec::new(),
        }
    }

    /// Builds from 1-based element lists, e.g. `&[&[1], &[1, 2]]`.
    pub fn from_lists(scale: GroundScale, lists: &[&[u32]]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| SubsetWord::from_elements(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(scale, members)
    }

    fn from_sorted(scale: GroundScale, members: Vec<SubsetWord>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { scale, members }
    }

    pub fn scale(&self) -> GroundScale {
        self.scale
    }

    pub fn members(&self) -> &[SubsetWord] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: SubsetWord) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Members as comma-separated lowercase hex words (one line of a family file).
    pub fn to_hex_line(&self) -> String {
        self.members
            .iter()
            .map(|m| m.to_hex())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_hex_line(scale: GroundScale, line: &str) -> Result<Self> {
        let line = line.trim();
        if line.is_empty() {
            return Ok(Self::empty(scale));
        }
        let members = line
            .split(',')
            .map(SubsetWord::from_hex)
            .collect::<Result<Vec<_>>>()?;
        Self::new(scale, members)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            m.fmt(f)?;
        }
        f.write_str("}")
    }
}

/// Family file: `#` comment lines, then one family per line as comma-separated
/// hex words; a blank line is the empty family.
pub fn format_family_file(n: GroundScale, kind: FamilyKind, families: &[SetFamily]) -> String {
    let mut out = format!(
        "# {} families over [{n}]\n# count={}\n",
        kind.name(),
        families.len()
    );
    for b in families {
        out.push_str(&b.to_hex_line());
        out.push('\n');
    }
    out
}

pub fn parse_family_file(n: GroundScale, text: &str) -> Result<Vec<SetFamily>> {
    text.lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .map(|line| SetFamily::from_hex_line(n, line))
        .collect()
}

/// Which predicate a check or search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Linear,
    Scarce,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Linear => "linear",
            FamilyKind::Scarce => "scarce",
        }
    }

    /// Whether a related triple may meet the family in `hits` members.
    fn admits(self, hits: u32) -> bool {
        match self {
            FamilyKind::Linear => hits != 2,
            FamilyKind::Scarce => hits <= 1,
        }
    }
}

pub fn is_linear(b: &SetFamily) -> bool {
    violating_triple(b, FamilyKind::Linear).is_none()
}

pub fn is_scarce(b: &SetFamily) -> bool {
    violating_triple(b, FamilyKind::Scarce).is_none()
}

/// A related triple witnessing that `b` fails the predicate, if any.
///
/// For `Linear` the witness meets `b` in exactly two members; for `Scarce`
/// in at least two.
pub fn violating_triple(b: &SetFamily, mode: FamilyKind) -> Option<RelatedTriple> {
    let n = b.scale;
    let m = &b.members;
    for (i, &x) in m.iter().enumerate() {
        for &y in &m[i + 1..] {
            // (small, other) spans the triple containing both x and y
            let (small, other) = if x.is_disjoint(y) {
                (x, y)
            } else if x.is_subset_of(y) {
                (x, y.difference(x))
            } else if y.is_subset_of(x) {
                (y, x.difference(y))
            } else {
                continue;
            };
            let triple = related_triple_of(small, other, n).expect("disjoint nonempty pair");
            match mode {
                FamilyKind::Scarce => return Some(triple),
                FamilyKind::Linear => {
                    let third = triple
                        .members()
                        .into_iter()
                        .find(|&t| t != x && t != y)
                        .expect("a triple has three members");
                    if !b.contains(third) {
                        return Some(triple);
                    }
                }
            }
        }
    }
    None
}

/// Related triples wholly contained in `b`.
pub fn contained_triples(b: &SetFamily) -> Vec<RelatedTriple> {
    let m = &b.members;
    let mut out = Vec::new();
    for (i, &x) in m.iter().enumerate() {
        for &y in &m[i + 1..] {
            if x.is_disjoint(y) && b.contains(x.union(y)) {
                out.push(related_triple_of(x, y, b.scale).expect("disjoint nonempty pair"));
            }
        }
    }
    out
}

/// Removes, simultaneously for every related triple contained in `b`, its
/// precedence-least and precedence-greatest members.
pub fn phi_compress(b: &SetFamily) -> Result<SetFamily> {
    if let Some(t) = violating_triple(b, FamilyKind::Linear) {
        return Err(Error::contract(format!(
            "compression needs a linear family; {b} meets {t} twice"
        )));
    }
    let removed: HashSet<SubsetWord> = contained_triples(b)
        .into_iter()
        .flat_map(|t| [t.least(), t.greatest()])
        .collect();
    let kept = b
        .members
        .iter()
        .copied()
        .filter(|x| !removed.contains(x))
        .collect();
    Ok(SetFamily::from_sorted(b.scale, kept))
}

/// `(φ(b), b ∩ S)`: determines a linear family uniquely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberKey {
    pub compressed: SetFamily,
    pub small_trace: SetFamily,
}

pub fn fiber_key(b: &SetFamily) -> Result<FiberKey> {
    let compressed = phi_compress(b)?;
    let small_trace = b
        .members
        .iter()
        .copied()
        .filter(|&x| is_small_side(x, b.scale))
        .collect();
    Ok(FiberKey {
        compressed,
        small_trace: SetFamily::from_sorted(b.scale, small_trace),
    })
}

/// Depth-first search over the nonempty subsets in precedence order.
///
/// Each related triple is checked at its precedence-greatest member, the
/// point where all three of its memberships are decided. At that point the
/// other two members already pin the decision: two present forces inclusion
/// (linear) or kills the branch (scarce), one present forbids inclusion.
#[derive(Debug)]
struct SearchTree {
    scale: GroundScale,
    kind: FamilyKind,
    order: Vec<SubsetWord>,
    /// For each position, the two-bit masks of triples that close there.
    closing: Vec<Vec<u64>>,
}

impl SearchTree {
    fn new(scale: GroundScale, kind: FamilyKind) -> Self {
        let order = precedence_sorted(scale);
        let mut position = vec![usize::MAX; order.len() + 1];
        for (i, x) in order.iter().enumerate() {
            position[x.bits() as usize] = i;
        }
        let mut closing = vec![Vec::new(); order.len()];
        for t in enumerate_related_triples(scale) {
            let [a, b, c] = t.members().map(|x| position[x.bits() as usize]);
            closing[c].push(1u64 << a | 1u64 << b);
        }
        SearchTree {
            scale,
            kind,
            order,
            closing,
        }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    /// `(exclude allowed, include allowed)` at `depth` given earlier choices.
    fn branches(&self, depth: usize, chosen: u64) -> (bool, bool) {
        let mut exclude = true;
        let mut include = true;
        for &pair in &self.closing[depth] {
            let hits = (chosen & pair).count_ones();
            exclude &= self.kind.admits(hits);
            include &= self.kind.admits(hits + 1);
        }
        (exclude, include)
    }

    /// Partial assignments that survive the first `depth` decisions, in DFS order.
    fn frontier(&self, depth: usize) -> Vec<u64> {
        let mut states = vec![0u64];
        for d in 0..depth.min(self.len()) {
            let mut next = Vec::with_capacity(states.len() * 2);
            for &chosen in &states {
                let (ex, inc) = self.branches(d, chosen);
                if ex {
                    next.push(chosen);
                }
                if inc {
                    next.push(chosen | 1 << d);
                }
            }
            states = next;
        }
        states
    }

    fn walk<F: FnMut(u64)>(
        &self,
        depth: usize,
        chosen: u64,
        visit: &mut F,
        budget: &Budget,
        ticks: &mut u32,
    ) -> Result<()> {
        *ticks = ticks.wrapping_add(1);
        if ticks.is_multiple_of(4096) {
            budget.poll()?;
        }
        if depth == self.len() {
            visit(chosen);
            return Ok(());
        }
        let (ex, inc) = self.branches(depth, chosen);
        if ex {
            self.walk(depth + 1, chosen, visit, budget, ticks)?;
        }
        if inc {
            self.walk(depth + 1, chosen | 1 << depth, visit, budget, ticks)?;
        }
        Ok(())
    }

    fn decode(&self, chosen: u64) -> SetFamily {
        let mut members: Vec<SubsetWord> = (0..self.len())
            .filter(|&i| chosen & 1 << i != 0)
            .map(|i| self.order[i])
            .collect();
        members.sort_unstable();
        SetFamily::from_sorted(self.scale, members)
    }

    /// Runs `per_subtask` over the split frontier on the worker pool, in frontier order.
    fn run_split<T, F>(&self, opts: &RunOptions, per_subtask: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(u64, usize, &Budget) -> Result<T> + Sync,
    {
        let depth = (opts.split_depth as usize).min(self.len());
        let frontier = self.frontier(depth);
        let budget = opts.budget(frontier.len() as u64);
        let pool = opts.pool()?;
        pool.install(|| {
            frontier
                .par_iter()
                .map(|&chosen| {
                    let out = per_subtask(chosen, depth, &budget)?;
                    budget.subtask_done();
                    Ok(out)
                })
                .collect()
        })
    }
}

fn check_scale(n: GroundScale, opts: &RunOptions, what: &'static str, cap: u32) -> Result<()> {
    if n.n() > ENGINE_LIMIT {
        return Err(Error::Unsupported {
            what,
            n: n.n(),
            limit: ENGINE_LIMIT,
        });
    }
    opts.check_cap(what, n.n(), cap)
}

/// Exact number of families of the given kind, the empty family included.
pub fn count_families(n: GroundScale, kind: FamilyKind, opts: &RunOptions) -> Result<BigUint> {
    check_scale(n, opts, "family search", ENUMERATE_CAP)?;
    let tree = SearchTree::new(n, kind);
    let parts = tree.run_split(opts, |chosen, depth, budget| {
        let mut count = 0u64;
        let mut ticks = 0;
        tree.walk(depth, chosen, &mut |_| count += 1, budget, &mut ticks)?;
        Ok(count)
    })?;
    Ok(parts.into_iter().map(BigUint::from).sum())
}

/// Every family of the given kind exactly once, in depth-first order
/// (exclusion before inclusion, elements in precedence order).
pub fn enumerate_families(
    n: GroundScale,
    kind: FamilyKind,
    opts: &RunOptions,
) -> Result<Vec<SetFamily>> {
    check_scale(n, opts, "family search", ENUMERATE_CAP)?;
    let tree = SearchTree::new(n, kind);
    let parts = tree.run_split(opts, |chosen, depth, budget| {
        let mut found = Vec::new();
        let mut ticks = 0;
        tree.walk(depth, chosen, &mut |c| found.push(c), budget, &mut ticks)?;
        Ok(found)
    })?;
    Ok(parts
        .into_iter()
        .flatten()
        .map(|c| tree.decode(c))
        .collect())
}

pub fn count_linear(n: GroundScale, opts: &RunOptions) -> Result<BigUint> {
    count_families(n, FamilyKind::Linear, opts)
}

pub fn count_scarce(n: GroundScale, opts: &RunOptions) -> Result<BigUint> {
    count_families(n, FamilyKind::Scarce, opts)
}

pub fn enumerate_linear(n: GroundScale, opts: &RunOptions) -> Result<Vec<SetFamily>> {
    enumerate_families(n, FamilyKind::Linear, opts)
}

/// Counts subfamilies of `P(n) ∖ {∅}` satisfying `predicate` by sweeping
/// the whole power set. The independent oracle for every counting routine.
pub fn brute_force_families<P>(n: GroundScale, predicate: P, opts: &RunOptions) -> Result<BigUint>
where
    P: Fn(&SetFamily) -> bool + Sync,
{
    if n.n() > 5 {
        return Err(Error::Unsupported {
            what: "power-set oracle",
            n: n.n(),
            limit: 5,
        });
    }
    opts.check_cap("power-set oracle", n.n(), BRUTE_FORCE_CAP)?;
    let universe: Vec<SubsetWord> = n.nonempty_subsets().collect();
    let total = 1u64 << universe.len();
    let pool = opts.pool()?;
    let count = pool.install(|| {
        (0..total)
            .into_par_iter()
            .filter(|&mask| {
                let members = universe
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & 1 << i != 0)
                    .map(|(_, &x)| x)
                    .collect();
                predicate(&SetFamily::from_sorted(n, members))
            })
            .count()
    });
    Ok(BigUint::from(count))
}

/// Exhaustive check of the compression argument over every linear family:
/// each image is a scarce subfamily, `b ↦ (φ(b), b ∩ S)` is injective, and
/// `count_linear ≤ count_scarce · 2^|S|`.
pub fn verify_compression(n: GroundScale, opts: &RunOptions) -> Result<VerificationReport> {
    opts.check_cap("compression sweep", n.n(), BRUTE_FORCE_CAP)?;
    let mut report = VerificationReport::new(format!("compression backbone, n={n}"));
    let linear = enumerate_linear(n, opts)?;
    let mut keys = HashSet::with_capacity(linear.len());
    for b in &linear {
        let key = fiber_key(b)?;
        report.check(is_scarce(&key.compressed), || {
            format!("phi({b}) = {} is not scarce", key.compressed)
        });
        report.check(key.compressed.is_subfamily_of(b), || {
            format!("phi({b}) = {} is not a subfamily", key.compressed)
        });
        let witness = format!("{b} shares its fiber key");
        report.check(keys.insert(key), || witness);
    }
    let count_linear = BigUint::from(linear.len());
    let count_scarce = count_scarce(n, opts)?;
    let ceiling = &count_scarce << small_side_size(n).to_u64().unwrap_or(u64::MAX);
    report.check(count_linear <= ceiling, || {
        format!("count_linear {count_linear} > count_scarce {count_scarce} * 2^|S|")
    });
    Ok(report)
}

/// Checks a family against every related triple directly. Slow; used to
/// cross-check the pairwise predicates.
pub fn meets_triples_as(b: &SetFamily, kind: FamilyKind) -> bool {
    enumerate_related_triples(b.scale).all(|t| {
        let hits = t.members().iter().filter(|&&x| b.contains(x)).count() as u32;
        kind.admits(hits)
    })
}

/// Sorts a family's members by precedence (for display of compression steps).
pub fn by_precedence(b: &SetFamily) -> Vec<SubsetWord> {
    let mut v = b.members.clone();
    v.sort_by(|&x, &y| cmp_precedence(x, y, b.scale));
    v
}
