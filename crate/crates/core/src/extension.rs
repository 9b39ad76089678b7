//! Single-element extensions of `M(K_{n+1})` built from linear subclasses.
//!
//! A linear subclass `H'` generates the modular cut
//! `{F : every hyperplane containing F lies in H'}`, and a modular cut `C`
//! defines the extension by a new element `e` with
//! `r(A ∪ e) = r(A)` if `cl(A) ∈ C` and `r(A) + 1` otherwise.
//!
//! Subsets of the extension's ground set are `u64` words: bit `i < m` is
//! edge slot `i` of the clique, bit `m` is `e`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::clique::{intersect_flats, join_flats, Clique, EdgeSet, Hyperplane, VertexPartition};
use crate::error::{Error, Result};
use crate::family::{enumerate_linear, is_linear, violating_triple, FamilyKind, SetFamily};
use crate::report::VerificationReport;
use crate::run::RunOptions;
use crate::subset::GroundScale;

/// Largest `n` (clique on `n + 1` vertices) for [`enumerate_extensions`] without `force`.
pub const EXTENSION_CAP: u32 = 4;
/// Largest ground set swept by [`verify_matroid_axioms`].
pub const AXIOM_GROUND_LIMIT: usize = 16;

/// Set of hyperplanes satisfying the linear-subclass condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubclass {
    scale: GroundScale,
    hyperplanes: BTreeSet<Hyperplane>,
}

impl LinearSubclass {
    /// Validates `hyperplanes` against the matroid-side definition.
    pub fn new(clique: &Clique, hyperplanes: BTreeSet<Hyperplane>) -> Result<Self> {
        if !is_linear_subclass(clique, &hyperplanes) {
            return Err(Error::contract("hyperplane set is not a linear subclass"));
        }
        Ok(LinearSubclass {
            scale: clique.scale(),
            hyperplanes,
        })
    }

    pub fn scale(&self) -> GroundScale {
        self.scale
    }

    pub fn hyperplanes(&self) -> &BTreeSet<Hyperplane> {
        &self.hyperplanes
    }
}

/// Whenever two members meet in a flat of rank `r − 2`, every hyperplane
/// over that flat is a member. Decided on edge sets and ranks only.
pub fn is_linear_subclass(clique: &Clique, hs: &BTreeSet<Hyperplane>) -> bool {
    let target = clique.full_rank().saturating_sub(2);
    let members: Vec<&Hyperplane> = hs.iter().collect();
    for (i, h) in members.iter().enumerate() {
        for g in &members[i + 1..] {
            let meet = h.flat().intersection(g.flat());
            if clique.rank(meet) != target {
                continue;
            }
            let over_meet = clique
                .hyperplanes()
                .into_iter()
                .filter(|k| meet.is_subset_of(k.flat()));
            for k in over_meet {
                if !hs.contains(&k) {
                    return false;
                }
            }
        }
    }
    true
}

/// `{ψ⁻¹(x) : x ∈ b}` without any validity check.
pub fn hyperplane_image(clique: &Clique, b: &SetFamily) -> Result<BTreeSet<Hyperplane>> {
    b.members().iter().map(|&x| clique.psi_inverse(x)).collect()
}

/// The linear subclass corresponding to a linear family.
pub fn subclass_from_family(clique: &Clique, b: &SetFamily) -> Result<LinearSubclass> {
    if let Some(t) = violating_triple(b, FamilyKind::Linear) {
        return Err(Error::contract(format!("{b} is not linear (triple {t})")));
    }
    let hyperplanes = hyperplane_image(clique, b)?;
    LinearSubclass::new(clique, hyperplanes).map_err(|_| {
        Error::contract(format!(
            "linear family {b} mapped to a non-subclass; the correspondence is broken"
        ))
    })
}

/// A set of flats; [`ModularCut::verify`] checks the modular-cut axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularCut {
    flats: BTreeSet<VertexPartition>,
    edge_flats: HashSet<EdgeSet>,
}

impl ModularCut {
    /// Wraps an arbitrary set of flats; nothing is checked.
    pub fn from_flats(clique: &Clique, flats: BTreeSet<VertexPartition>) -> Self {
        let edge_flats = flats.iter().map(|p| clique.flat_of(p)).collect();
        ModularCut { flats, edge_flats }
    }

    pub fn flats(&self) -> &BTreeSet<VertexPartition> {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn contains_flat(&self, flat: EdgeSet) -> bool {
        self.edge_flats.contains(&flat)
    }

    /// The hyperplanes that belong to the cut.
    pub fn hyperplanes(&self, clique: &Clique) -> BTreeSet<Hyperplane> {
        self.flats
            .iter()
            .filter_map(|p| clique.hyperplane(p))
            .collect()
    }

    /// Checks up-closure and closure under meets of modular pairs.
    pub fn verify(&self, clique: &Clique) -> VerificationReport {
        let mut report = VerificationReport::new("modular cut axioms");
        let all = clique.all_flats();
        for f in &self.flats {
            for g in all.iter().filter(|g| f.refines(g)) {
                report.check(self.flats.contains(g), || {
                    format!("{g} lies above member {f} but is missing")
                });
            }
        }
        let members: Vec<&VertexPartition> = self.flats.iter().collect();
        for (i, f) in members.iter().enumerate() {
            for g in &members[i + 1..] {
                let meet = intersect_flats(f, g);
                let join = join_flats(f, g);
                let modular = clique.partition_rank(f) + clique.partition_rank(g)
                    == clique.partition_rank(&join) + clique.partition_rank(&meet);
                if modular {
                    report.check(self.flats.contains(&meet), || {
                        format!("modular pair {f}, {g} but meet {meet} is missing")
                    });
                }
            }
        }
        report
    }
}

/// Every flat all of whose hyperplanes lie in `hs`.
pub fn cut_from_hyperplanes(clique: &Clique, hs: &BTreeSet<Hyperplane>) -> ModularCut {
    let flats = clique
        .all_flats()
        .into_iter()
        .filter(|f| {
            clique
                .hyperplanes_containing(f)
                .iter()
                .all(|h| hs.contains(h))
        })
        .collect();
    ModularCut::from_flats(clique, flats)
}

pub fn generate_modular_cut(clique: &Clique, h: &LinearSubclass) -> ModularCut {
    cut_from_hyperplanes(clique, &h.hyperplanes)
}

/// Smallest modular cut containing the given hyperplanes: close upward and
/// under meets of modular pairs until nothing changes.
///
/// For a linear subclass this equals [`generate_modular_cut`]; for any other
/// hyperplane set it picks up hyperplanes outside the input.
pub fn modular_cut_closure(clique: &Clique, hs: &BTreeSet<Hyperplane>) -> ModularCut {
    let all = clique.all_flats();
    let mut flats: BTreeSet<VertexPartition> = hs.iter().map(|h| h.partition().clone()).collect();
    loop {
        let mut next = flats.clone();
        for f in &flats {
            next.extend(all.iter().filter(|g| f.refines(g)).cloned());
        }
        let members: Vec<&VertexPartition> = flats.iter().collect();
        for (i, f) in members.iter().enumerate() {
            for g in &members[i + 1..] {
                let meet = intersect_flats(f, g);
                let join = join_flats(f, g);
                if clique.partition_rank(f) + clique.partition_rank(g)
                    == clique.partition_rank(&join) + clique.partition_rank(&meet)
                {
                    next.insert(meet);
                }
            }
        }
        if next == flats {
            break;
        }
        flats = next;
    }
    if flats.is_empty() {
        // an empty hyperplane set still needs the top flat to avoid a coloop
        flats.insert(VertexPartition::whole(clique.vertices()));
    }
    ModularCut::from_flats(clique, flats)
}

/// How the new element sits in the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementClass {
    Loop,
    Coloop,
    Ordinary,
}

/// Finer description used when cataloguing small cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    Loop,
    /// Cut holds only the whole ground set: `e` is in general position.
    Free,
    /// `e` is parallel to the edge in this slot.
    Parallel(usize),
    Other,
}

/// `M(K_{n+1}) + e` defined by a modular cut.
#[derive(Debug, Clone)]
pub struct ExtensionMatroid {
    clique: Clique,
    cut: ModularCut,
}

impl ExtensionMatroid {
    pub fn new(clique: Clique, cut: ModularCut) -> Result<Self> {
        if clique.edge_count() + 1 > 64 {
            return Err(Error::Unsupported {
                what: "extension matroid",
                n: clique.scale().n(),
                limit: 10,
            });
        }
        Ok(ExtensionMatroid { clique, cut })
    }

    pub fn clique(&self) -> &Clique {
        &self.clique
    }

    pub fn cut(&self) -> &ModularCut {
        &self.cut
    }

    pub fn scale(&self) -> GroundScale {
        self.clique.scale()
    }

    pub fn ground_size(&self) -> usize {
        self.clique.edge_count() + 1
    }

    /// Bit of the new element in ground-set words.
    pub fn new_element(&self) -> u64 {
        1 << self.clique.edge_count()
    }

    pub fn rank(&self, a: u64) -> u32 {
        let edges = EdgeSet::from_bits((a & (self.new_element() - 1)) as u128);
        let r = self.clique.rank(edges);
        if a & self.new_element() == 0 || self.cut.contains_flat(self.clique.closure(edges)) {
            r
        } else {
            r + 1
        }
    }

    /// Ranks of all subsets of the ground set, indexed by subset word.
    pub fn rank_table(&self) -> Vec<u8> {
        (0..1u64 << self.ground_size())
            .map(|a| self.rank(a) as u8)
            .collect()
    }

    pub fn element_class(&self) -> ElementClass {
        let e = self.new_element();
        let all = (e << 1) - 1;
        if self.rank(e) == 0 {
            ElementClass::Loop
        } else if self.rank(all) == self.rank(all & !e) + 1 {
            ElementClass::Coloop
        } else {
            ElementClass::Ordinary
        }
    }

    pub fn kind(&self) -> ExtensionKind {
        if self.element_class() == ElementClass::Loop {
            return ExtensionKind::Loop;
        }
        let top = VertexPartition::whole(self.clique.vertices());
        if self.cut.len() == 1 && self.cut.flats.contains(&top) {
            return ExtensionKind::Free;
        }
        let e = self.new_element();
        let parallel: Vec<usize> = (0..self.clique.edge_count())
            .filter(|&i| self.rank(e | 1 << i) == 1)
            .collect();
        match parallel.as_slice() {
            [i] => ExtensionKind::Parallel(*i),
            _ => ExtensionKind::Other,
        }
    }

    pub fn record(&self) -> ExtensionRecord {
        ExtensionRecord {
            scale: self.scale().n(),
            cut: self.cut.flats.iter().map(|p| p.to_string()).collect(),
            e_class: self.element_class(),
            rank_table_hash: format!("{:016x}", fnv1a64(&self.rank_table())),
        }
    }
}

/// JSON shape of an exported extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionRecord {
    pub scale: u32,
    pub cut: Vec<String>,
    pub e_class: ElementClass,
    /// FNV-1a 64 over the rank table, one byte per subset, subsets in word order.
    pub rank_table_hash: String,
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes
        .iter()
        .fold(OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(PRIME))
}

/// Sweeps every subset of a ground set of `ground` elements and checks
/// `0 ≤ r(A) ≤ |A|`, monotonicity and submodularity.
///
/// Monotonicity and submodularity are checked in their single-element forms
/// `r(A) ≤ r(A+x)` and `r(A+x) + r(A+y) ≥ r(A+x+y) + r(A)`, which imply the
/// general statements over the whole power set.
pub fn verify_matroid_axioms<R>(rank: R, ground: usize) -> Result<VerificationReport>
where
    R: Fn(u64) -> u32,
{
    if ground > AXIOM_GROUND_LIMIT {
        return Err(Error::ResourceCap {
            what: "matroid axiom sweep (ground set size)",
            n: ground as u32,
            cap: AXIOM_GROUND_LIMIT as u32,
        });
    }
    let table: Vec<u32> = (0..1u64 << ground).map(&rank).collect();
    let mut report = VerificationReport::new(format!("matroid axioms, |E|={ground}"));
    for a in 0..1u64 << ground {
        let ra = table[a as usize];
        report.check(ra <= a.count_ones(), || {
            format!("r({a:#x})={ra} exceeds size")
        });
        for x in (0..ground).filter(|&x| a & 1 << x == 0) {
            let ax = a | 1 << x;
            let rax = table[ax as usize];
            report.check(ra <= rax, || {
                format!("monotonicity: r({a:#x})={ra} > r({ax:#x})={rax}")
            });
            for y in (x + 1..ground).filter(|&y| a & 1 << y == 0) {
                let ay = a | 1 << y;
                let axy = ax | ay;
                let (ray, raxy) = (table[ay as usize], table[axy as usize]);
                report.check(rax + ray >= raxy + ra, || {
                    format!(
                        "submodularity: A={a:#x}, x={x}, y={y}: r(A+x)+r(A+y)={} < r(A+x+y)+r(A)={}",
                        rax + ray,
                        raxy + ra
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Checks `N ∖ e = M` on every subset of the edges and that `e` is no coloop.
pub fn deletion_check(x: &ExtensionMatroid) -> VerificationReport {
    let mut report = VerificationReport::new(format!("deletion check, K_{}", x.clique.vertices()));
    let m = x.clique.edge_count();
    for a in 0..1u64 << m {
        let ext = x.rank(a);
        let base = x.clique.rank(EdgeSet::from_bits(a as u128));
        report.check(ext == base, || format!("r_N({a:#x})={ext} but r_M={base}"));
    }
    let class = x.element_class();
    report.check(class != ElementClass::Coloop, || {
        "new element is a coloop".to_string()
    });
    report
}

/// One materialized extension with its checks.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub family: SetFamily,
    pub extension: ExtensionMatroid,
    pub record: ExtensionRecord,
}

#[derive(Debug, Clone)]
pub struct ExtensionCatalog {
    pub entries: Vec<CatalogEntry>,
    /// Linear-family count the catalogue is compared against.
    pub expected: BigUint,
    pub report: VerificationReport,
}

/// Maps every linear family through subclass → cut → extension and checks
/// each result plus pairwise distinctness of the rank tables.
pub fn enumerate_extensions(n: GroundScale, opts: &RunOptions) -> Result<ExtensionCatalog> {
    opts.check_cap("extension enumeration", n.n(), EXTENSION_CAP)?;
    let clique = Clique::new(n)?;
    if clique.edge_count() + 1 > AXIOM_GROUND_LIMIT {
        return Err(Error::Unsupported {
            what: "extension enumeration",
            n: n.n(),
            limit: 5,
        });
    }
    let families = enumerate_linear(n, opts)?;
    let expected = BigUint::from(families.len());

    let pool = opts.pool()?;
    let built: Vec<(CatalogEntry, Vec<u8>, VerificationReport)> = pool.install(|| {
        families
            .into_par_iter()
            .map(|family| {
                let subclass = subclass_from_family(&clique, &family)?;
                let cut = generate_modular_cut(&clique, &subclass);
                let mut report = VerificationReport::new("extension");
                let cut_report = cut.verify(&clique);
                report.check(cut_report.passed(), || format!("{family}: {cut_report}"));
                report.check(cut.hyperplanes(&clique) == *subclass.hyperplanes(), || {
                    format!("{family}: cut hyperplanes differ from the subclass")
                });
                let extension = ExtensionMatroid::new(clique.clone(), cut)?;
                let axioms = verify_matroid_axioms(|a| extension.rank(a), extension.ground_size())?;
                report.check(axioms.passed(), || format!("{family}: {axioms}"));
                let deletion = deletion_check(&extension);
                report.check(deletion.passed(), || format!("{family}: {deletion}"));
                let table = extension.rank_table();
                let record = extension.record();
                Ok((
                    CatalogEntry {
                        family,
                        extension,
                        record,
                    },
                    table,
                    report,
                ))
            })
            .collect::<Result<_>>()
    })?;

    let mut report = VerificationReport::new(format!("extensions of M(K_{})", n.n() + 1));
    let mut seen = HashSet::with_capacity(built.len());
    let mut entries = Vec::with_capacity(built.len());
    for (entry, table, sub) in built {
        report.merge(sub);
        let fresh = seen.insert(table);
        report.check(fresh, || format!("{}: rank table repeats", entry.family));
        entries.push(entry);
    }
    report.check(BigUint::from(seen.len()) == expected, || {
        format!(
            "{} distinct extensions but {expected} linear families",
            seen.len()
        )
    });
    Ok(ExtensionCatalog {
        entries,
        expected,
        report,
    })
}

/// Both directions of the family/subclass correspondence, exhaustively:
///
/// * `b` is linear iff its hyperplane image is a linear subclass;
/// * for linear `b`, the generated cut carries exactly the image's hyperplanes;
/// * for non-linear `b` (only for `n ≤ 3`), the smallest modular cut over the
///   image carries hyperplanes outside it, and the rule-generated flat set
///   fails the modular-cut axioms.
pub fn verify_subclass_bijection(n: GroundScale, opts: &RunOptions) -> Result<VerificationReport> {
    opts.check_cap("subclass bijection sweep", n.n(), 4)?;
    if n.n() > 5 {
        return Err(Error::Unsupported {
            what: "subclass bijection sweep",
            n: n.n(),
            limit: 5,
        });
    }
    let clique = Clique::new(n)?;
    let universe: Vec<_> = n.nonempty_subsets().collect();
    let check_off_class = n.n() <= 3;
    let name = format!("family/subclass bijection, K_{}", n.n() + 1);
    let pool = opts.pool()?;
    let report = pool.install(|| {
        (0u64..1 << universe.len())
            .into_par_iter()
            .fold(
                || VerificationReport::new(name.clone()),
                |mut report, mask| {
                    let members = (0..universe.len())
                        .filter(|&i| mask & 1 << i != 0)
                        .map(|i| universe[i]);
                    let b = SetFamily::new(n, members).expect("valid family");
                    let image = hyperplane_image(&clique, &b).expect("nonempty members");
                    let linear = is_linear(&b);
                    let subclass = is_linear_subclass(&clique, &image);
                    report.check(linear == subclass, || {
                        format!("{b}: linear={linear} but subclass={subclass}")
                    });
                    let cut = cut_from_hyperplanes(&clique, &image);
                    if linear {
                        report.check(cut.hyperplanes(&clique) == image, || {
                            format!("{b}: cut hyperplanes differ from the subclass")
                        });
                    }
                    if check_off_class {
                        let closure = modular_cut_closure(&clique, &image);
                        let same = closure.hyperplanes(&clique) == image;
                        report.check(same == linear, || {
                            format!("{b}: closure keeps the hyperplane set = {same}, linear = {linear}")
                        });
                        if linear {
                            report.check(closure == cut, || {
                                format!("{b}: closure and generated cut differ")
                            });
                        }
                        let valid = cut.verify(&clique).passed();
                        report.check(valid == linear, || {
                            format!("{b}: generated flats form a modular cut = {valid}, linear = {linear}")
                        });
                    }
                    report
                },
            )
            .reduce(
                || VerificationReport::new(name.clone()),
                |mut a, b| {
                    a.merge(b);
                    a
                },
            )
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: u32) -> Clique {
        Clique::new(GroundScale::new(n).unwrap()).unwrap()
    }

    fn fam(n: u32, lists: &[&[u32]]) -> SetFamily {
        SetFamily::from_lists(GroundScale::new(n).unwrap(), lists).unwrap()
    }

    fn part(parts: &[&[u32]], v: u32) -> VertexPartition {
        VertexPartition::from_parts(parts, v).unwrap()
    }

    #[test]
    fn subclass_examples() {
        let k3 = k(2);
        let h = subclass_from_family(&k3, &fam(2, &[&[1, 2]])).unwrap();
        let only: Vec<_> = h.hyperplanes().iter().map(|h| h.flat()).collect();
        assert_eq!(only, vec![k3.edges(&[(1, 2)]).unwrap()]);
        let all = subclass_from_family(&k3, &fam(2, &[&[1], &[2], &[1, 2]])).unwrap();
        assert_eq!(all.hyperplanes().len(), 3);
        let none = subclass_from_family(&k3, &SetFamily::empty(k3.scale())).unwrap();
        assert!(none.hyperplanes().is_empty());
        assert!(matches!(
            subclass_from_family(&k3, &fam(2, &[&[1], &[2]])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn cut_examples() {
        let k3 = k(2);
        let top = VertexPartition::whole(3);
        let free = generate_modular_cut(
            &k3,
            &subclass_from_family(&k3, &SetFamily::empty(k3.scale())).unwrap(),
        );
        assert_eq!(free.flats().iter().collect::<Vec<_>>(), vec![&top]);

        let h = subclass_from_family(&k3, &fam(2, &[&[1, 2]])).unwrap();
        let cut = generate_modular_cut(&k3, &h);
        let expected: BTreeSet<_> = [part(&[&[1, 2], &[3]], 3), top.clone()]
            .into_iter()
            .collect();
        assert_eq!(cut.flats(), &expected);

        let all = subclass_from_family(&k3, &fam(2, &[&[1], &[2], &[1, 2]])).unwrap();
        let cut = generate_modular_cut(&k3, &all);
        assert_eq!(cut.len(), 5);
        assert!(cut.contains_flat(EdgeSet::EMPTY));
    }

    #[test]
    fn rank_rule_examples() {
        let k3 = k(2);
        let free = ExtensionMatroid::new(
            k3.clone(),
            generate_modular_cut(
                &k3,
                &subclass_from_family(&k3, &SetFamily::empty(k3.scale())).unwrap(),
            ),
        )
        .unwrap();
        let e = free.new_element();
        assert_eq!(free.rank(e), 1);

        let par = ExtensionMatroid::new(
            k3.clone(),
            generate_modular_cut(
                &k3,
                &subclass_from_family(&k3, &fam(2, &[&[1, 2]])).unwrap(),
            ),
        )
        .unwrap();
        let e12 = 1u64 << k3.edge_slot(1, 2).unwrap();
        assert_eq!(par.rank(e | e12), 1);
        assert_eq!(
            par.kind(),
            ExtensionKind::Parallel(k3.edge_slot(1, 2).unwrap())
        );

        let lp = ExtensionMatroid::new(
            k3.clone(),
            generate_modular_cut(
                &k3,
                &subclass_from_family(&k3, &fam(2, &[&[1], &[2], &[1, 2]])).unwrap(),
            ),
        )
        .unwrap();
        assert_eq!(lp.rank(e), 0);
        assert_eq!(lp.element_class(), ElementClass::Loop);
    }

    #[test]
    fn free_extension_of_triangle_is_u24() {
        let k3 = k(2);
        let free =
            ExtensionMatroid::new(k3.clone(), cut_from_hyperplanes(&k3, &BTreeSet::new())).unwrap();
        for a in 0..16u64 {
            assert_eq!(free.rank(a), a.count_ones().min(2), "subset {a:#x}");
        }
        assert!(verify_matroid_axioms(|a| free.rank(a), 4).unwrap().passed());
        assert_eq!(free.kind(), ExtensionKind::Free);
        let d = deletion_check(&free);
        assert!(d.passed(), "{d}");
        assert_eq!(free.element_class(), ElementClass::Ordinary);
    }

    #[test]
    fn loop_extension_passes_axioms() {
        let k3 = k(2);
        let all: BTreeSet<_> = k3.hyperplanes().into_iter().collect();
        let lp = ExtensionMatroid::new(k3.clone(), cut_from_hyperplanes(&k3, &all)).unwrap();
        assert!(verify_matroid_axioms(|a| lp.rank(a), 4).unwrap().passed());
        assert!(deletion_check(&lp).passed());
        assert_eq!(lp.element_class(), ElementClass::Loop);
    }

    #[test]
    fn corrupted_cut_is_caught() {
        let k3 = k(2);
        // the parallel-to-12 cut with its top flat dropped is no longer up-closed
        let flats: BTreeSet<_> = [part(&[&[1, 2], &[3]], 3)].into_iter().collect();
        let cut = ModularCut::from_flats(&k3, flats);
        assert!(!cut.verify(&k3).passed());
        let bad = ExtensionMatroid::new(k3, cut).unwrap();
        let r = verify_matroid_axioms(|a| bad.rank(a), 4).unwrap();
        assert!(!r.passed());
        assert!(
            r.witnesses.iter().any(|w| w.starts_with("submodularity")),
            "{r}"
        );
    }

    #[test]
    fn empty_cut_makes_a_coloop() {
        let k3 = k(2);
        let x = ExtensionMatroid::new(k3.clone(), ModularCut::from_flats(&k3, BTreeSet::new()))
            .unwrap();
        assert_eq!(x.element_class(), ElementClass::Coloop);
        assert!(!deletion_check(&x).passed());
    }

    #[test]
    fn axiom_sweep_cap() {
        assert!(verify_matroid_axioms(|_| 0, 17).is_err());
    }

    #[test]
    fn triangle_catalogue() {
        let cat =
            enumerate_extensions(GroundScale::new(2).unwrap(), &RunOptions::default()).unwrap();
        assert!(cat.report.passed(), "{}", cat.report);
        assert_eq!(cat.entries.len(), 5);
        let kinds: Vec<_> = cat.entries.iter().map(|e| e.extension.kind()).collect();
        assert_eq!(
            kinds.iter().filter(|k| **k == ExtensionKind::Free).count(),
            1
        );
        assert_eq!(
            kinds
                .iter()
                .filter(|k| matches!(k, ExtensionKind::Parallel(_)))
                .count(),
            3
        );
        assert_eq!(
            kinds.iter().filter(|k| **k == ExtensionKind::Loop).count(),
            1
        );
    }

    #[test]
    fn bijection_sweep_small() {
        for n in 1..=3 {
            let r = verify_subclass_bijection(GroundScale::new(n).unwrap(), &RunOptions::default())
                .unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn fnv_reference_vectors() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }
}
