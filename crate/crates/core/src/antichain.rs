//! Antichains of the Boolean lattice and exact counting.
//!
//! Intersecting antichains of nonempty sets are the independent sets of the
//! conflict graph joining comparable-or-disjoint pairs; plain antichains of
//! `P(n)` are the independent sets of the comparability graph. Both are
//! counted with one engine: branch on a maximum-degree vertex, split the
//! residual graph into connected components and multiply, memoize counts of
//! connected vertex sets.

use dashmap::DashMap;
use num_bigint::BigUint;
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::family::{is_scarce, SetFamily};
use crate::report::VerificationReport;
use crate::run::{Budget, RunOptions};
use crate::subset::{GroundScale, SubsetWord};

/// Largest `n` counted without `force`.
pub const COUNT_CAP: u32 = 6;
/// Vertex sets are `u64` masks, so the lattice must have at most 64 elements.
pub const ENGINE_LIMIT: u32 = 6;

pub fn is_antichain(b: &SetFamily) -> bool {
    let m = b.members();
    m.iter().enumerate().all(|(i, &x)| {
        m[i + 1..]
            .iter()
            .all(|&y| !x.is_subset_of(y) && !y.is_subset_of(x))
    })
}

pub fn is_intersecting_antichain(b: &SetFamily) -> bool {
    is_antichain(b) && {
        let m = b.members();
        m.iter()
            .enumerate()
            .all(|(i, &x)| m[i + 1..].iter().all(|&y| !x.is_disjoint(y)))
    }
}

/// Simple graph on at most 64 vertices, adjacency as bit rows.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    vertices: Vec<SubsetWord>,
    adjacency: Vec<u64>,
}

impl ConflictGraph {
    fn build(vertices: Vec<SubsetWord>, joined: impl Fn(SubsetWord, SubsetWord) -> bool) -> Self {
        let adjacency = vertices
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, &y)| i != j && joined(x, y))
                    .fold(0u64, |row, (j, _)| row | 1 << j)
            })
            .collect();
        ConflictGraph {
            vertices,
            adjacency,
        }
    }

    fn check(n: GroundScale) -> Result<()> {
        if n.n() > ENGINE_LIMIT {
            return Err(Error::Unsupported {
                what: "antichain engine",
                n: n.n(),
                limit: ENGINE_LIMIT,
            });
        }
        Ok(())
    }

    /// Nonempty subsets of `[n]`, joined when comparable or disjoint.
    pub fn intersecting(n: GroundScale) -> Result<Self> {
        Self::check(n)?;
        Ok(Self::build(n.nonempty_subsets().collect(), |x, y| {
            x.is_subset_of(y) || y.is_subset_of(x) || x.is_disjoint(y)
        }))
    }

    /// All subsets of `[n]` (the empty set included), joined when comparable.
    pub fn comparability(n: GroundScale) -> Result<Self> {
        Self::check(n)?;
        let all = (0..=n.full().bits()).map(SubsetWord::from_bits).collect();
        Ok(Self::build(all, |x, y| {
            x.is_subset_of(y) || y.is_subset_of(x)
        }))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> SubsetWord {
        self.vertices[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i] & 1 << j != 0
    }

    fn all(&self) -> u64 {
        if self.vertices.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertices.len()) - 1
        }
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adjacency[v] & mask != 0 {
                return false;
            }
        }
        true
    }

    /// Vertex mask of a family whose members are all vertices of this graph.
    pub fn mask_of(&self, b: &SetFamily) -> Option<u64> {
        b.members().iter().try_fold(0u64, |mask, &x| {
            self.vertices
                .iter()
                .position(|&v| v == x)
                .map(|i| mask | 1 << i)
        })
    }

    /// Exact number of independent sets, the empty set included.
    pub fn count_independent_sets(&self, opts: &RunOptions) -> Result<BigUint> {
        let counter = Counter {
            adjacency: &self.adjacency,
            memo: DashMap::new(),
            ticks: AtomicU64::new(0),
        };
        let frontier = counter.frontier(self.all(), opts.split_depth);
        let budget = opts.budget(frontier.len() as u64);
        let pool = opts.pool()?;
        let parts: Vec<u128> = pool.install(|| {
            frontier
                .par_iter()
                .map(|&mask| {
                    let c = counter.count(mask, &budget)?;
                    budget.subtask_done();
                    Ok(c)
                })
                .collect::<Result<_>>()
        })?;
        Ok(parts.into_iter().map(BigUint::from).sum())
    }
}

struct Counter<'a> {
    adjacency: &'a [u64],
    memo: DashMap<u64, u128>,
    ticks: AtomicU64,
}

/// Connected sets at most this large are counted without touching the memo.
const MEMO_MIN_VERTICES: u32 = 6;

impl Counter<'_> {
    fn component_of(&self, start: u64, within: u64) -> u64 {
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adjacency[v] & within & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        comp
    }

    fn max_degree_vertex(&self, mask: u64) -> (usize, u32) {
        let mut best = (usize::MAX, 0u32);
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adjacency[v] & mask).count_ones();
            if best.0 == usize::MAX || d > best.1 {
                best = (v, d);
            }
        }
        best
    }

    /// Residual vertex sets after `depth` levels of plain branching, whose
    /// independent-set counts sum to the total.
    fn frontier(&self, all: u64, depth: u32) -> Vec<u64> {
        let mut masks = vec![all];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(masks.len() * 2);
            for &mask in &masks {
                if mask == 0 {
                    next.push(mask);
                    continue;
                }
                let (v, _) = self.max_degree_vertex(mask);
                next.push(mask & !(1 << v));
                next.push(mask & !(self.adjacency[v] | 1 << v));
            }
            masks = next;
        }
        masks
    }

    fn count(&self, mask: u64, budget: &Budget) -> Result<u128> {
        if mask == 0 {
            return Ok(1);
        }
        if self.ticks.fetch_add(1, Ordering::Relaxed).is_multiple_of(4096) {
            budget.poll()?;
        }
        let first = self.component_of(mask & mask.wrapping_neg(), mask);
        if first != mask {
            let mut product = self.count_connected(first, budget)?;
            let mut rest = mask & !first;
            while rest != 0 {
                let comp = self.component_of(rest & rest.wrapping_neg(), rest);
                rest &= !comp;
                product = product
                    .checked_mul(self.count_connected(comp, budget)?)
                    .expect("independent-set count overflows u128");
            }
            return Ok(product);
        }
        self.count_connected(mask, budget)
    }

    fn count_connected(&self, mask: u64, budget: &Budget) -> Result<u128> {
        let size = mask.count_ones();
        if size == 1 {
            return Ok(2);
        }
        let memoize = size > MEMO_MIN_VERTICES;
        if memoize {
            if let Some(c) = self.memo.get(&mask) {
                return Ok(*c);
            }
        }
        let (v, _) = self.max_degree_vertex(mask);
        let without = self.count(mask & !(1 << v), budget)?;
        let with = self.count(mask & !(self.adjacency[v] | 1 << v), budget)?;
        let total = without + with;
        if memoize {
            self.memo.entry(mask).or_insert(total);
        }
        Ok(total)
    }
}

/// Number of intersecting antichains of nonempty subsets of `[n]`, the
/// empty family included.
pub fn count_intersecting_antichains(n: GroundScale, opts: &RunOptions) -> Result<BigUint> {
    ConflictGraph::check(n)?;
    opts.check_cap("intersecting antichain count", n.n(), COUNT_CAP)?;
    ConflictGraph::intersecting(n)?.count_independent_sets(opts)
}

/// Number of antichains of `P(n)`, counting both `∅` and `{∅}` (the Dedekind
/// number convention).
pub fn count_antichains(n: GroundScale, opts: &RunOptions) -> Result<BigUint> {
    ConflictGraph::check(n)?;
    opts.check_cap("antichain count", n.n(), COUNT_CAP)?;
    ConflictGraph::comparability(n)?.count_independent_sets(opts)
}

/// Antichains of `P(n)` (empty set allowed as a member) by sweeping every
/// subfamily. Oracle for [`count_antichains`].
pub fn brute_force_antichains(n: GroundScale, opts: &RunOptions) -> Result<BigUint> {
    if n.n() > 4 {
        opts.check_cap("power-set oracle", n.n(), 4)?;
        if n.n() > 5 {
            return Err(Error::Unsupported {
                what: "power-set oracle",
                n: n.n(),
                limit: 5,
            });
        }
    }
    let size = 1u64 << n.n();
    let total = 1u64 << size;
    let pool = opts.pool()?;
    let count = pool.install(|| {
        (0..total)
            .into_par_iter()
            .filter(|&family| {
                let mut rest = family;
                while rest != 0 {
                    let x = rest.trailing_zeros() as u64;
                    rest &= rest - 1;
                    let mut others = rest;
                    while others != 0 {
                        let y = others.trailing_zeros() as u64;
                        others &= others - 1;
                        if x & !y == 0 || y & !x == 0 {
                            return false;
                        }
                    }
                }
                true
            })
            .count()
    });
    Ok(BigUint::from(count))
}

/// All subsets of size `⌊n/2⌋ + 1`.
pub fn middle_layer_family(n: GroundScale) -> SetFamily {
    let size = n.n() / 2 + 1;
    let members: Vec<SubsetWord> = n.nonempty_subsets().filter(|x| x.len() == size).collect();
    SetFamily::new(n, members).expect("distinct nonempty subsets")
}

/// Exhaustive check that scarce families and intersecting antichains coincide,
/// and that both are the independent sets of the conflict graph.
pub fn scarce_equivalence_check(n: GroundScale, opts: &RunOptions) -> Result<VerificationReport> {
    opts.check_cap("scarce equivalence sweep", n.n(), 4)?;
    if n.n() > 5 {
        return Err(Error::Unsupported {
            what: "scarce equivalence sweep",
            n: n.n(),
            limit: 5,
        });
    }
    let graph = ConflictGraph::intersecting(n)?;
    let total = 1u64 << graph.vertex_count();
    let pool = opts.pool()?;
    let report = pool.install(|| {
        (0..total)
            .into_par_iter()
            .fold(
                || VerificationReport::new(format!("scarce = intersecting antichain, n={n}")),
                |mut report, mask| {
                    let members = (0..graph.vertex_count())
                        .filter(|&i| mask & 1 << i != 0)
                        .map(|i| graph.vertex(i));
                    let b = SetFamily::new(n, members).expect("valid family");
                    let scarce = is_scarce(&b);
                    let ia = is_intersecting_antichain(&b);
                    let independent = graph.is_independent(mask);
                    report.check(scarce == ia && ia == independent, || {
                        format!("{b}: scarce={scarce} intersecting_antichain={ia} independent={independent}")
                    });
                    report
                },
            )
            .reduce(
                || VerificationReport::new(format!("scarce = intersecting antichain, n={n}")),
                |mut a, b| {
                    a.merge(b);
                    a
                },
            )
    });
    Ok(report)
}
