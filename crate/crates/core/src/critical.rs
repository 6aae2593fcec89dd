//! Critical sets, the set-cover characterizations of zero forcing and power
//! domination, and the prefix-partition certificates for the classic
//! families.
//!
//! A nonempty vertex set `W` is *strongly critical* when no vertex of the
//! graph has exactly one out-neighbor in `W`, and *weakly critical* when no
//! vertex outside `W` has exactly one out-neighbor in `W`. A set is zero
//! forcing (under the unrestricted forcer rule) exactly when it meets every
//! strongly critical set, and power dominating exactly when its domination
//! closure meets every weakly critical set; `check_zf_cover` and
//! `check_pd_cover` decide those conditions by exhausting subsets, which is
//! what makes them independent oracles for the closure engines.

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::propagation::dominate;
use crate::topologies::{Family, FamilySpec};

/// Default vertex ceiling for the exhaustive subset scans.
pub const DEFAULT_COVER_LIMIT: usize = 20;

/// Default vertex ceiling for minimal-critical-set enumeration, which costs
/// `3^n` subset lookups on top of the `2^n` criticality table.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 14;

/// Enumeration above this many vertices is refused outright.
const HARD_ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    Strong,
    Weak,
}

/// True iff no vertex of `g` has exactly one out-neighbor in `w`.
///
/// The empty set is rejected: it satisfies the condition vacuously but is
/// not a meaningful obstruction.
pub fn is_strongly_critical(g: &Digraph, w: &VertexSet) -> Result<bool> {
    let mut counts = vec![0u32; g.vertex_count()];
    let mut touched = Vec::new();
    count_in_neighbors(g, &w.to_vec(), &mut counts, &mut touched)?;
    Ok(!touched.iter().any(|&u| counts[u] == 1))
}

/// True iff no vertex outside `w` has exactly one out-neighbor in `w`.
pub fn is_weakly_critical(g: &Digraph, w: &VertexSet) -> Result<bool> {
    let mut counts = vec![0u32; g.vertex_count()];
    let mut touched = Vec::new();
    count_in_neighbors(g, &w.to_vec(), &mut counts, &mut touched)?;
    Ok(!touched.iter().any(|&u| counts[u] == 1 && !w.contains(u)))
}

/// Tallies |N^out(u) ∩ W| for every u by walking the in-lists of W's
/// members; only touched entries are filled, and `touched` lists them.
fn count_in_neighbors(
    g: &Digraph,
    members: &[usize],
    counts: &mut [u32],
    touched: &mut Vec<usize>,
) -> Result<()> {
    if members.is_empty() {
        return Err(Error::EmptyCriticalSet);
    }
    for &w in members {
        for &u in g.in_neighbors(w) {
            if counts[u] == 0 {
                touched.push(u);
            }
            counts[u] += 1;
        }
    }
    Ok(())
}

fn reset_counts(counts: &mut [u32], touched: &mut Vec<usize>) {
    for &u in touched.iter() {
        counts[u] = 0;
    }
    touched.clear();
}

fn out_masks(g: &Digraph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| {
            g.out_neighbors(v)
                .iter()
                .fold(0u64, |mask, &w| mask | 1 << w)
        })
        .collect()
}

fn mask_strongly_critical(masks: &[u64], w: u64) -> bool {
    masks.iter().all(|&m| (m & w).count_ones() != 1)
}

fn mask_weakly_critical(masks: &[u64], w: u64) -> bool {
    masks
        .iter()
        .enumerate()
        .all(|(v, &m)| w >> v & 1 == 1 || (m & w).count_ones() != 1)
}

fn enumeration_guard(g: &Digraph, limit: usize) -> Result<usize> {
    let n = g.vertex_count();
    let effective = limit.min(63);
    if n > effective {
        return Err(Error::TooLargeForEnumeration {
            vertices: n,
            limit: effective,
        });
    }
    Ok(n)
}

/// Does `s` intersect every nonempty strongly critical set?
///
/// Decided by exhausting the subsets of the complement of `s`; refuses
/// graphs larger than `limit` vertices.
pub fn check_zf_cover(g: &Digraph, s: &VertexSet, limit: usize) -> Result<bool> {
    let n = enumeration_guard(g, limit)?;
    let masks = out_masks(g);
    let full = full_mask(n);
    let s_mask = set_mask(s);
    let comp = full & !s_mask;
    // A strongly critical set disjoint from s is exactly a strongly
    // critical subset of the complement.
    let mut w = comp;
    while w != 0 {
        if mask_strongly_critical(&masks, w) {
            return Ok(false);
        }
        w = (w - 1) & comp;
    }
    Ok(true)
}

/// Does `s ∪ N^out(s)` intersect every nonempty weakly critical set?
pub fn check_pd_cover(g: &Digraph, s: &VertexSet, limit: usize) -> Result<bool> {
    let n = enumeration_guard(g, limit)?;
    let masks = out_masks(g);
    let full = full_mask(n);
    let z_mask = set_mask(&dominate(g, s));
    let comp = full & !z_mask;
    let mut w = comp;
    while w != 0 {
        if mask_weakly_critical(&masks, w) {
            return Ok(false);
        }
        w = (w - 1) & comp;
    }
    Ok(true)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn set_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0u64, |mask, v| mask | 1 << v)
}

/// All minimal critical sets of the requested kind: nonempty critical sets
/// none of whose proper nonempty subsets is critical. Criticality is not
/// monotone, so every proper subset is tested.
///
/// Output is sorted lexicographically by member list. Refuses graphs above
/// `max_vertices` (and above 24 unconditionally; the subset-of-subset scan
/// costs `3^n`).
pub fn enumerate_minimal_critical(
    g: &Digraph,
    kind: CriticalKind,
    max_vertices: usize,
) -> Result<Vec<VertexSet>> {
    let n = enumeration_guard(g, max_vertices.min(HARD_ENUMERATION_CAP))?;
    let masks = out_masks(g);
    let total = 1usize << n;
    let mut critical = vec![false; total];
    for w in 1..total as u64 {
        critical[w as usize] = match kind {
            CriticalKind::Strong => mask_strongly_critical(&masks, w),
            CriticalKind::Weak => mask_weakly_critical(&masks, w),
        };
    }
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for w in 1..total as u64 {
        if !critical[w as usize] {
            continue;
        }
        let mut minimal = true;
        let mut sub = (w - 1) & w;
        while sub != 0 {
            if critical[sub as usize] {
                minimal = false;
                break;
            }
            sub = (sub - 1) & w;
        }
        if minimal {
            sets.push(mask_members(w));
        }
    }
    sets.sort();
    sets.into_iter()
        .map(|members| VertexSet::from_members(g.vertex_count(), members))
        .collect()
}

fn mask_members(mut w: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while w != 0 {
        out.push(w.trailing_zeros() as usize);
        w &= w - 1;
    }
    out
}

/// The prefix partition of a classic family: all vertices sharing a
/// length-`n-1` prefix form one cell. Each cell has exactly `d` vertices
/// and is the common out-neighborhood of the vertices that shift into it.
///
/// Cells are ordered by prefix index; under the word codec the cell with
/// prefix index `q` is exactly `{q·d, …, q·d + d - 1}`.
pub fn prefix_partition(family: Family, d: usize, n: usize) -> Result<Vec<VertexSet>> {
    let spec = FamilySpec::new(family, d, n)?;
    if !family.is_classic() {
        return Err(Error::NotClassicFamily(family.as_str()));
    }
    let count = spec.vertex_count()?;
    let cells = count / d;
    Ok((0..cells)
        .map(|q| {
            VertexSet::from_members(count, (q * d)..(q * d + d))
                .expect("cell members are in range")
        })
        .collect())
}

/// Cell-intersection histogram of a vertex set against the prefix
/// partition: `counts[k]` is the number of cells meeting the set in
/// exactly `k` vertices, for `k = 0..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionProfile {
    pub counts: Vec<u64>,
    pub cell_count: usize,
}

impl PartitionProfile {
    /// Number of cells whose intersection with the profiled set has
    /// cardinality `k`.
    pub fn cells_with(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    /// Σ k·counts[k]: the number of set members lying in any cell.
    pub fn weighted_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| k as u64 * c)
            .sum()
    }
}

pub fn partition_profile(
    family: Family,
    d: usize,
    n: usize,
    s: &VertexSet,
) -> Result<PartitionProfile> {
    let cells = prefix_partition(family, d, n)?;
    let mut counts = vec![0u64; d + 1];
    for cell in &cells {
        counts[cell.intersection_len(s)] += 1;
    }
    Ok(PartitionProfile {
        counts,
        cell_count: cells.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    ZfPartitionBound,
    PdPartitionNecessity,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::ZfPartitionBound => "zf-partition-bound",
            CertificateKind::PdPartitionNecessity => "pd-partition-necessity",
        }
    }
}

/// A failed certificate check, pinned to the cell where it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertFailure {
    /// A 2-element subset of the cell that is not strongly critical.
    NonCriticalPair { cell: usize, pair: (usize, usize) },
    /// The cell meets the checked set in fewer than `need` vertices.
    CellDeficit {
        cell: usize,
        have: usize,
        need: usize,
    },
}

/// Checkable certificate built from the prefix partition.
///
/// For [`CertificateKind::ZfPartitionBound`], `bound` is a lower bound on
/// the zero forcing number, valid only when `failures` is empty. For
/// [`CertificateKind::PdPartitionNecessity`], `bound` is the per-cell
/// coverage threshold `d - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub bound: usize,
    pub cells_checked: usize,
    pub failures: Vec<CertFailure>,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies that every 2-element subset of every prefix cell is strongly
/// critical. Any zero forcing set must then miss at most one vertex per
/// cell, giving the bound `(d-1) · cell_count`.
pub fn zf_partition_bound(family: Family, d: usize, n: usize) -> Result<Certificate> {
    let g = FamilySpec::new(family, d, n)?.generate()?;
    let cells = prefix_partition(family, d, n)?;
    let mut counts = vec![0u32; g.vertex_count()];
    let mut touched = Vec::new();
    let mut failures = Vec::new();
    for (idx, cell) in cells.iter().enumerate() {
        let members = cell.to_vec();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let pair = [members[i], members[j]];
                count_in_neighbors(&g, &pair, &mut counts, &mut touched)?;
                let critical = !touched.iter().any(|&u| counts[u] == 1);
                reset_counts(&mut counts, &mut touched);
                if !critical {
                    failures.push(CertFailure::NonCriticalPair {
                        cell: idx,
                        pair: (pair[0], pair[1]),
                    });
                }
            }
        }
    }
    Ok(Certificate {
        kind: CertificateKind::ZfPartitionBound,
        bound: (d - 1) * cells.len(),
        cells_checked: cells.len(),
        failures,
    })
}

/// Checks the necessary condition for power domination: the domination
/// closure `s ∪ N^out(s)` must meet every prefix cell in at least `d - 1`
/// vertices.
pub fn pd_partition_necessity(
    family: Family,
    d: usize,
    n: usize,
    s: &VertexSet,
) -> Result<Certificate> {
    let g = FamilySpec::new(family, d, n)?.generate()?;
    let cells = prefix_partition(family, d, n)?;
    let z = dominate(&g, s);
    let need = d - 1;
    let failures = cells
        .iter()
        .enumerate()
        .filter_map(|(idx, cell)| {
            let have = cell.intersection_len(&z);
            (have < need).then_some(CertFailure::CellDeficit {
                cell: idx,
                have,
                need,
            })
        })
        .collect();
    Ok(Certificate {
        kind: CertificateKind::PdPartitionNecessity,
        bound: need,
        cells_checked: cells.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topologies::{debruijn, WordVertex};

    fn set(universe: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(universe, members.iter().copied()).unwrap()
    }

    fn two_cycle() -> Digraph {
        Digraph::build(2, vec![(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn strong_criticality_on_shift_graph() {
        let g = debruijn(2, 2).unwrap();
        assert!(is_strongly_critical(&g, &set(4, &[0, 1])).unwrap());
        assert!(!is_strongly_critical(&g, &set(4, &[0])).unwrap());
    }

    #[test]
    fn weak_criticality_on_shift_graph() {
        let g = debruijn(2, 2).unwrap();
        assert!(is_weakly_critical(&g, &set(4, &[0, 1])).unwrap());
        assert!(is_weakly_critical(&g, &set(4, &[2, 3])).unwrap());
        assert!(!is_weakly_critical(&g, &set(4, &[0])).unwrap());
    }

    #[test]
    fn empty_set_is_rejected() {
        let g = two_cycle();
        assert_eq!(
            is_strongly_critical(&g, &VertexSet::new(2)),
            Err(Error::EmptyCriticalSet)
        );
        assert_eq!(
            is_weakly_critical(&g, &VertexSet::new(2)),
            Err(Error::EmptyCriticalSet)
        );
    }

    #[test]
    fn cover_checks_on_shift_graph() {
        let g = debruijn(2, 2).unwrap();
        assert!(check_pd_cover(&g, &set(4, &[1]), 20).unwrap());
        // {3} misses the strongly critical set {0, 1}.
        assert!(!check_zf_cover(&g, &set(4, &[3]), 20).unwrap());
        assert!(check_zf_cover(&g, &set(4, &[1, 2]), 20).unwrap());
    }

    #[test]
    fn two_cycle_has_no_strongly_critical_sets() {
        let g = two_cycle();
        assert!(check_zf_cover(&g, &VertexSet::new(2), 20).unwrap());
        for members in [&[0][..], &[1][..], &[0, 1][..]] {
            assert!(!is_strongly_critical(&g, &set(2, members)).unwrap());
        }
    }

    #[test]
    fn cover_check_refuses_large_graphs() {
        let g = debruijn(2, 5).unwrap();
        assert!(matches!(
            check_zf_cover(&g, &VertexSet::new(32), 20),
            Err(Error::TooLargeForEnumeration {
                vertices: 32,
                limit: 20
            })
        ));
    }

    #[test]
    fn partition_cells_match_prefixes() {
        let cells = prefix_partition(Family::DeBruijn, 2, 2).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].to_vec(), vec![0, 1]);
        assert_eq!(cells[1].to_vec(), vec![2, 3]);
        assert_eq!(prefix_partition(Family::DeBruijn, 3, 3).unwrap().len(), 9);
        let kcells = prefix_partition(Family::Kautz, 2, 3).unwrap();
        assert_eq!(kcells.len(), 6);
        assert!(kcells.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn partition_cells_agree_with_word_prefixes() {
        // The arithmetic cells must equal grouping vertices by word prefix.
        for (family, d, n) in [(Family::DeBruijn, 3, 3), (Family::Kautz, 2, 4), (Family::Kautz, 3, 3)] {
            let spec = FamilySpec::new(family, d, n).unwrap();
            let count = spec.vertex_count().unwrap();
            let cells = prefix_partition(family, d, n).unwrap();
            for cell in cells {
                let members = cell.to_vec();
                let prefix = |v: usize| {
                    WordVertex::from_index(&spec, v).unwrap().symbols()[..n - 1].to_vec()
                };
                let first = prefix(members[0]);
                assert!(members.iter().all(|&v| prefix(v) == first));
                // and nothing outside the cell shares the prefix
                let sharing = (0..count).filter(|&v| prefix(v) == first).count();
                assert_eq!(sharing, members.len());
            }
        }
    }

    #[test]
    fn profile_of_pd_seed() {
        let s = crate::constructions::debruijn_pd_set(2, 3).unwrap();
        let profile = partition_profile(Family::DeBruijn, 2, 3, &s).unwrap();
        assert_eq!(profile.counts, vec![2, 2, 0]);
        assert_eq!(profile.cell_count, 4);
    }

    #[test]
    fn profile_extremes() {
        let empty = VertexSet::new(8);
        let profile = partition_profile(Family::DeBruijn, 2, 3, &empty).unwrap();
        assert_eq!(profile.counts, vec![4, 0, 0]);
        let full = VertexSet::full(8);
        let profile = partition_profile(Family::DeBruijn, 2, 3, &full).unwrap();
        assert_eq!(profile.counts, vec![0, 0, 4]);
        assert_eq!(profile.weighted_sum(), 8);
    }

    #[test]
    fn zf_bound_certificates() {
        let cert = zf_partition_bound(Family::DeBruijn, 2, 2).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.bound, 2);
        assert_eq!(cert.cells_checked, 2);

        let cert = zf_partition_bound(Family::Kautz, 2, 3).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.bound, 6);

        let cert = zf_partition_bound(Family::DeBruijn, 3, 3).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.bound, 18);
    }

    #[test]
    fn pd_necessity_examples() {
        let s = crate::constructions::debruijn_pd_set(2, 3).unwrap();
        let cert = pd_partition_necessity(Family::DeBruijn, 2, 3, &s).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.cells_checked, 4);

        let full = VertexSet::full(8);
        assert!(pd_partition_necessity(Family::DeBruijn, 2, 3, &full)
            .unwrap()
            .is_valid());

        let cert = pd_partition_necessity(Family::DeBruijn, 2, 3, &set(8, &[0])).unwrap();
        assert!(!cert.is_valid());
        assert!(cert
            .failures
            .iter()
            .any(|f| matches!(f, CertFailure::CellDeficit { cell: 2, have: 0, .. })));
    }

    #[test]
    fn minimal_critical_enumeration() {
        let g = debruijn(2, 2).unwrap();
        let strong = enumerate_minimal_critical(&g, CriticalKind::Strong, 14).unwrap();
        let lists: Vec<Vec<usize>> = strong.iter().map(|s| s.to_vec()).collect();
        assert!(lists.contains(&vec![0, 1]));
        assert!(lists.contains(&vec![2, 3]));

        let weak = enumerate_minimal_critical(&g, CriticalKind::Weak, 14).unwrap();
        let lists: Vec<Vec<usize>> = weak.iter().map(|s| s.to_vec()).collect();
        assert!(lists.contains(&vec![0, 1]));

        let none = enumerate_minimal_critical(&two_cycle(), CriticalKind::Strong, 14).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn minimal_sets_have_no_critical_proper_subsets() {
        let g = debruijn(2, 2).unwrap();
        for w in enumerate_minimal_critical(&g, CriticalKind::Weak, 14).unwrap() {
            assert!(is_weakly_critical(&g, &w).unwrap());
            let members = w.to_vec();
            // check all proper nonempty subsets
            for mask in 1..(1u32 << members.len()) - 1 {
                let sub: Vec<usize> = members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                let sub = set(g.vertex_count(), &sub);
                assert!(!is_weakly_critical(&g, &sub).unwrap());
            }
        }
    }
}
