//! The cycle matroid `M(K_{n+1})`.
//!
//! Flats of a complete-graph cycle matroid are exactly the edge sets whose
//! components are complete, so every flat is stored interchangeably as a
//! [`VertexPartition`] or as an [`EdgeSet`]. A `k`-part partition is a flat
//! of rank `n + 1 − k`; hyperplanes are the 2-part partitions.
//!
//! Vertex `v` is bit `v − 1` of a vertex mask, so a part avoiding the apex
//! `n + 1` is literally a [`SubsetWord`] over `[n]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::subset::{enumerate_related_triples, GroundScale, SubsetWord};

/// Largest supported clique (`C(16, 2) = 120` edge slots fit a `u128`).
pub const MAX_VERTICES: u32 = 16;

/// Edge set of `K_{n+1}` as a word over the edge slots in lexicographic pair
/// order `12, 13, …, 1(n+1), 23, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSet(u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        EdgeSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Slot indices in increasing order.
    pub fn slots(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let tz = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(tz)
        })
    }
}

/// Unordered partition of the vertex set `[n+1]`, parts sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    parts: Vec<u32>,
}

impl VertexPartition {
    /// Canonicalizes and validates a list of vertex masks covering `vertices` vertices.
    pub fn from_masks(mut parts: Vec<u32>, vertices: u32) -> Result<Self> {
        let full = vertex_mask(vertices);
        let mut seen = 0u32;
        for &p in &parts {
            if p == 0 || p & !full != 0 || p & seen != 0 {
                return Err(Error::input(format!(
                    "{p:#x} is not a fresh nonempty part of [{vertices}]"
                )));
            }
            seen |= p;
        }
        if seen != full {
            return Err(Error::input(format!("parts do not cover [{vertices}]")));
        }
        parts.sort_by_key(|p| p.trailing_zeros());
        Ok(VertexPartition { parts })
    }

    /// Builds from 1-based vertex lists, e.g. `&[&[1, 2], &[3]]`.
    pub fn from_parts(parts: &[&[u32]], vertices: u32) -> Result<Self> {
        let masks = parts
            .iter()
            .map(|part| part.iter().fold(0u32, |m, &v| m | 1 << (v - 1)))
            .collect();
        Self::from_masks(masks, vertices)
    }

    fn from_masks_unchecked(mut parts: Vec<u32>) -> Self {
        parts.sort_by_key(|p| p.trailing_zeros());
        VertexPartition { parts }
    }

    pub fn singletons(vertices: u32) -> Self {
        VertexPartition {
            parts: (0..vertices).map(|v| 1 << v).collect(),
        }
    }

    pub fn whole(vertices: u32) -> Self {
        VertexPartition {
            parts: vec![vertex_mask(vertices)],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Part holding vertex `v` (1-based).
    pub fn part_of(&self, v: u32) -> u32 {
        let bit = 1 << (v - 1);
        self.parts
            .iter()
            .copied()
            .find(|p| p & bit != 0)
            .expect("partition covers every vertex")
    }

    /// `self` refines `other`: every part of `self` sits inside a part of `other`.
    pub fn refines(&self, other: &VertexPartition) -> bool {
        self.parts
            .iter()
            .all(|&p| other.parts.iter().any(|&q| p & !q == 0))
    }
}

/// Renders as `{1,2|3|4,5}`.
impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            let elems: Vec<String> = SubsetWord::from_bits(p as u64)
                .elements()
                .map(|e| e.to_string())
                .collect();
            f.write_str(&elems.join(","))?;
        }
        f.write_str("}")
    }
}

fn vertex_mask(vertices: u32) -> u32 {
    if vertices >= 32 {
        u32::MAX
    } else {
        (1 << vertices) - 1
    }
}

/// Coarsest common refinement: all nonempty pairwise intersections of parts.
/// Its flat is the intersection of the two flats.
pub fn intersect_flats(f: &VertexPartition, g: &VertexPartition) -> VertexPartition {
    let mut parts = Vec::with_capacity(f.parts.len() + g.parts.len());
    for &p in &f.parts {
        for &q in &g.parts {
            if p & q != 0 {
                parts.push(p & q);
            }
        }
    }
    VertexPartition::from_masks_unchecked(parts)
}

/// Finest common coarsening; its flat is the closure of the union of the two flats.
pub fn join_flats(f: &VertexPartition, g: &VertexPartition) -> VertexPartition {
    let mut parts: Vec<u32> = f.parts.clone();
    for &q in &g.parts {
        // parts are disjoint, so only those touching `q` itself get absorbed
        let mut merged = q;
        parts.retain(|&p| {
            if p & q != 0 {
                merged |= p;
                false
            } else {
                true
            }
        });
        parts.push(merged);
    }
    VertexPartition::from_masks_unchecked(parts)
}

/// A hyperplane of `M(K_{n+1})`: a 2-part partition and its flat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    partition: VertexPartition,
    flat: EdgeSet,
}

impl Hyperplane {
    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    pub fn flat(&self) -> EdgeSet {
        self.flat
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.partition.fmt(f)
    }
}

/// Lookup tables for `K_{n+1}`.
#[derive(Debug, Clone)]
pub struct Clique {
    scale: GroundScale,
    vertices: u32,
    pairs: Vec<(u32, u32)>,
    /// `slot[u][v]` for 0-based `u < v`.
    slot: Vec<Vec<usize>>,
}

impl Clique {
    pub fn new(scale: GroundScale) -> Result<Self> {
        let vertices = scale.n() + 1;
        if vertices > MAX_VERTICES {
            return Err(Error::Unsupported {
                what: "clique matroid",
                n: scale.n(),
                limit: MAX_VERTICES - 1,
            });
        }
        let mut pairs = Vec::new();
        let mut slot = vec![vec![usize::MAX; vertices as usize]; vertices as usize];
        for u in 0..vertices {
            for v in u + 1..vertices {
                slot[u as usize][v as usize] = pairs.len();
                slot[v as usize][u as usize] = pairs.len();
                pairs.push((u + 1, v + 1));
            }
        }
        Ok(Clique {
            scale,
            vertices,
            pairs,
            slot,
        })
    }

    pub fn scale(&self) -> GroundScale {
        self.scale
    }

    pub fn vertices(&self) -> u32 {
        self.vertices
    }

    /// Rank of the whole matroid, `n`.
    pub fn full_rank(&self) -> u32 {
        self.vertices - 1
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    /// 1-based endpoints of edge slot `i`.
    pub fn edge(&self, i: usize) -> (u32, u32) {
        self.pairs[i]
    }

    pub fn edge_slot(&self, u: u32, v: u32) -> Result<usize> {
        if u == v || !(1..=self.vertices).contains(&u) || !(1..=self.vertices).contains(&v) {
            return Err(Error::input(format!(
                "no edge {u}{v} in K_{}",
                self.vertices
            )));
        }
        Ok(self.slot[(u - 1) as usize][(v - 1) as usize])
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        EdgeSet(if self.pairs.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.pairs.len()) - 1
        })
    }

    /// Builds an edge set from 1-based vertex pairs.
    pub fn edges(&self, pairs: &[(u32, u32)]) -> Result<EdgeSet> {
        let mut bits = 0u128;
        for &(u, v) in pairs {
            bits |= 1 << self.edge_slot(u, v)?;
        }
        Ok(EdgeSet(bits))
    }

    /// Renders as `12,34`; pairs are hyphenated (`3-12`) once a vertex exceeds 9.
    pub fn render_edges(&self, a: EdgeSet) -> String {
        let wide = self.vertices > 9;
        a.slots()
            .map(|i| {
                let (u, v) = self.pairs[i];
                if wide {
                    format!("{u}-{v}")
                } else {
                    format!("{u}{v}")
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Connected components of `([n+1], a)` as vertex masks, isolated vertices included.
    pub fn components(&self, a: EdgeSet) -> Vec<u32> {
        let mut adj = vec![0u32; self.vertices as usize];
        for i in a.slots() {
            let (u, v) = self.pairs[i];
            adj[(u - 1) as usize] |= 1 << (v - 1);
            adj[(v - 1) as usize] |= 1 << (u - 1);
        }
        let mut unseen = vertex_mask(self.vertices);
        let mut comps = Vec::new();
        while unseen != 0 {
            let start = unseen & unseen.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros();
                frontier &= frontier - 1;
                let fresh = adj[v as usize] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            unseen &= !comp;
            comps.push(comp);
        }
        comps
    }

    /// `(n + 1) − #components`.
    pub fn rank(&self, a: EdgeSet) -> u32 {
        self.vertices - self.components(a).len() as u32
    }

    /// Partition induced by the components of `a`.
    pub fn partition_of(&self, a: EdgeSet) -> VertexPartition {
        VertexPartition::from_masks_unchecked(self.components(a))
    }

    /// Union of the complete graphs on each part.
    pub fn flat_of(&self, p: &VertexPartition) -> EdgeSet {
        let mut bits = 0u128;
        for &part in &p.parts {
            let members: Vec<u32> = SubsetWord::from_bits(part as u64).elements().collect();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    bits |= 1 << self.slot[(u - 1) as usize][(v - 1) as usize];
                }
            }
        }
        EdgeSet(bits)
    }

    /// Completes every component of `a`.
    pub fn closure(&self, a: EdgeSet) -> EdgeSet {
        self.flat_of(&self.partition_of(a))
    }

    pub fn is_flat(&self, a: EdgeSet) -> bool {
        self.closure(a) == a
    }

    /// Rank of the flat described by `p`, `n + 1 − k`.
    pub fn partition_rank(&self, p: &VertexPartition) -> u32 {
        self.vertices - p.part_count() as u32
    }

    /// Every `k`-part partition of `[n+1]` exactly once.
    pub fn flats(&self, k: usize) -> Result<Vec<VertexPartition>> {
        if k == 0 || k > self.vertices as usize {
            return Err(Error::input(format!(
                "part count {k} outside 1..={}",
                self.vertices
            )));
        }
        Ok(set_partitions(self.vertices)
            .into_iter()
            .filter(|p| p.part_count() == k)
            .collect())
    }

    /// Every flat of the matroid (all partitions of `[n+1]`).
    pub fn all_flats(&self) -> Vec<VertexPartition> {
        set_partitions(self.vertices)
    }

    fn apex_bit(&self) -> u32 {
        1 << (self.vertices - 1)
    }

    fn hyperplane_from_parts(&self, a: u32, b: u32) -> Hyperplane {
        let partition = VertexPartition::from_masks_unchecked(vec![a, b]);
        let flat = self.flat_of(&partition);
        Hyperplane { partition, flat }
    }

    /// Interprets a flat as a hyperplane, if it has exactly two parts.
    pub fn hyperplane(&self, p: &VertexPartition) -> Option<Hyperplane> {
        (p.part_count() == 2).then(|| self.hyperplane_from_parts(p.parts[0], p.parts[1]))
    }

    /// Part of the hyperplane's partition avoiding the apex `n + 1`.
    pub fn psi(&self, h: &Hyperplane) -> SubsetWord {
        let part = h
            .partition
            .parts
            .iter()
            .copied()
            .find(|&p| p & self.apex_bit() == 0)
            .expect("exactly one part avoids the apex");
        SubsetWord::from_bits(part as u64)
    }

    /// Hyperplane with partition `{x, [n+1] ∖ x}`.
    pub fn psi_inverse(&self, x: SubsetWord) -> Result<Hyperplane> {
        if x.is_empty() || !x.fits(self.scale) {
            return Err(Error::input(format!(
                "{x} is not a nonempty subset of [{}]",
                self.scale
            )));
        }
        let part = x.bits() as u32;
        Ok(self.hyperplane_from_parts(part, vertex_mask(self.vertices) & !part))
    }

    /// All `2^(n) − 1` hyperplanes, in increasing order of their apex-free part.
    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        self.scale
            .nonempty_subsets()
            .map(|x| self.psi_inverse(x).expect("nonempty subset of [n]"))
            .collect()
    }

    /// Hyperplanes containing the flat `f`: all merges of its parts into two
    /// nonempty blocks, `2^(k−1) − 1` of them.
    pub fn hyperplanes_containing(&self, f: &VertexPartition) -> Vec<Hyperplane> {
        let k = f.part_count();
        if k < 2 {
            return Vec::new();
        }
        let rest = &f.parts[1..];
        (1u64..(1 << (k - 1)))
            .map(|choice| {
                let mut a = f.parts[0];
                let mut b = 0;
                for (i, &p) in rest.iter().enumerate() {
                    if choice & (1 << i) != 0 {
                        b |= p;
                    } else {
                        a |= p;
                    }
                }
                self.hyperplane_from_parts(a, b)
            })
            .collect()
    }
}

/// All set partitions of `[vertices]` via restricted growth strings.
pub fn set_partitions(vertices: u32) -> Vec<VertexPartition> {
    fn grow(v: u32, vertices: u32, blocks: &mut Vec<u32>, out: &mut Vec<VertexPartition>) {
        if v == vertices {
            out.push(VertexPartition::from_masks_unchecked(blocks.clone()));
            return;
        }
        for i in 0..blocks.len() {
            blocks[i] |= 1 << v;
            grow(v + 1, vertices, blocks, out);
            blocks[i] &= !(1 << v);
        }
        blocks.push(1 << v);
        grow(v + 1, vertices, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    if vertices > 0 {
        grow(0, vertices, &mut Vec::new(), &mut out);
    }
    out
}

/// Largest `n` accepted by [`verify_triple_claim`] without `force`.
pub const TRIPLE_CLAIM_CAP: u32 = 7;

/// Exhaustive check that rank-`(n−2)` flats and related triples correspond:
///
/// * every 3-part flat lies in exactly three hyperplanes whose apex-free parts
///   form `{S, T, S ∪ T}` with `S`, `T` disjoint and nonempty;
/// * for every disjoint nonempty `S`, `T ⊆ [n]` the three preimages meet in a
///   flat of rank `n − 2`.
pub fn verify_triple_claim(scale: GroundScale) -> Result<VerificationReport> {
    let clique = Clique::new(scale)?;
    let n = scale.n();
    let mut report = VerificationReport::new(format!("triple claim, K_{}", n + 1));
    if n < 2 {
        // no rank-(n-2) flats and no related triples
        return Ok(report);
    }

    for f in clique.flats(3)? {
        let hs = clique.hyperplanes_containing(&f);
        report.check(hs.len() == 3, || {
            format!("flat {f} lies in {} hyperplanes", hs.len())
        });
        if hs.len() != 3 {
            continue;
        }
        let mut images: Vec<SubsetWord> = hs.iter().map(|h| clique.psi(h)).collect();
        images.sort_by_key(|x| x.len());
        let (s, t, u) = (images[0], images[1], images[2]);
        report.check(s.is_disjoint(t) && s.union(t) == u, || {
            format!("flat {f} has images {s}, {t}, {u}")
        });
        let meet = hs
            .iter()
            .fold(clique.full_edge_set(), |acc, h| acc.intersection(h.flat()));
        report.check(meet == clique.flat_of(&f), || {
            format!("hyperplanes over {f} meet in a different flat")
        });
    }

    for t in enumerate_related_triples(scale) {
        let meet = t.members().iter().fold(clique.full_edge_set(), |acc, &x| {
            acc.intersection(clique.psi_inverse(x).expect("nonempty").flat())
        });
        let r = clique.rank(meet);
        report.check(r == n - 2, || {
            format!("triple {t}: preimages meet in rank {r}")
        });
    }
    Ok(report)
}
