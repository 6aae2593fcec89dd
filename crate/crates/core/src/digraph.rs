//! Immutable directed graphs over dense integer vertices, and the
//! fixed-universe vertex sets that every closure engine works with.
//!
//! Loops are allowed, parallel arcs are not: `build` silently deduplicates.
//! Both adjacency directions are stored so that forcing rules can walk
//! in-neighborhoods without transposing on the fly.

use std::fmt;

use crate::error::{Error, Result};

const BLOCK_BITS: usize = 64;

/// A set of vertex indices drawn from a fixed universe `0..universe`.
///
/// Backed by a bit vector; membership, insertion and cardinality are cheap.
/// Two sets compare equal iff they have the same universe and members.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    universe: usize,
    blocks: Vec<u64>,
    len: usize,
}

impl VertexSet {
    /// Empty set over `0..universe`.
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            blocks: vec![0; universe.div_ceil(BLOCK_BITS)],
            len: 0,
        }
    }

    /// The full set `{0, …, universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from arbitrary members, rejecting out-of-range indices.
    pub fn from_members(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::new(universe);
        for v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Exact cardinality.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// True when every vertex of the universe is a member.
    pub fn is_full(&self) -> bool {
        self.len == self.universe
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.blocks[v / BLOCK_BITS] >> (v % BLOCK_BITS) & 1 == 1
    }

    /// Inserts `v`, returning true if it was newly added.
    ///
    /// Panics if `v` is outside the universe; use [`from_members`] for
    /// unvalidated input.
    ///
    /// [`from_members`]: VertexSet::from_members
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let mask = 1u64 << (v % BLOCK_BITS);
        let block = &mut self.blocks[v / BLOCK_BITS];
        if *block & mask == 0 {
            *block |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes `v`, returning true if it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.blocks[v / BLOCK_BITS] &= !(1u64 << (v % BLOCK_BITS));
        self.len -= 1;
        true
    }

    pub fn clear(&mut self) {
        self.blocks.fill(0);
        self.len = 0;
    }

    /// In-place union. Panics if the universes differ.
    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe, "universe mismatch in union");
        let mut len = 0;
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
            len += a.count_ones() as usize;
        }
        self.len = len;
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    /// Number of members shared with `other`.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let base = i * BLOCK_BITS;
            BlockBits { block }.map(move |b| base + b)
        })
    }

    /// Sorted member list.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, "/{}", self.universe)
    }
}

struct BlockBits {
    block: u64,
}

impl Iterator for BlockBits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.block == 0 {
            return None;
        }
        let b = self.block.trailing_zeros() as usize;
        self.block &= self.block - 1;
        Some(b)
    }
}

/// An immutable directed graph without parallel arcs; loops permitted.
///
/// Adjacency lists are strictly ascending and `in_adj` is the exact
/// transpose of `out_adj`.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    /// Builds a digraph from an arc list, deduplicating parallel arcs.
    ///
    /// Fails on any endpoint `>= vertex_count`, naming the offending arc.
    pub fn build(
        vertex_count: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); vertex_count];
        for (from, to) in arcs {
            if from >= vertex_count || to >= vertex_count {
                return Err(Error::ArcOutOfRange {
                    from,
                    to,
                    vertex_count,
                });
            }
            out_adj[from].push(to);
        }
        let mut arc_count = 0;
        for list in &mut out_adj {
            list.sort_unstable();
            list.dedup();
            arc_count += list.len();
        }
        let mut in_adj = vec![Vec::new(); vertex_count];
        for (u, list) in out_adj.iter().enumerate() {
            for &v in list {
                in_adj[v].push(u);
            }
        }
        // u iterated ascending, so each in-list is already sorted.
        Ok(Digraph {
            out_adj,
            in_adj,
            arc_count,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// Out-neighbors of `v` in ascending order; includes `v` itself when a
    /// loop is present.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v` in ascending order.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    /// Union of out-neighborhoods over `s`. Does not implicitly include `s`.
    pub fn out_neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        assert_eq!(s.universe(), self.vertex_count(), "set universe mismatch");
        let mut out = VertexSet::new(self.vertex_count());
        for v in s.iter() {
            for &w in &self.out_adj[v] {
                out.insert(w);
            }
        }
        out
    }

    /// All arcs in `(from, to)` order, ascending.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    /// The graph with every arc reversed.
    pub fn transpose(&self) -> Digraph {
        Digraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            arc_count: self.arc_count,
        }
    }

    /// Parses the arc-list text format: a header line `n <vertex_count>`,
    /// then one `u v` pair per line. Blank lines and lines starting with `#`
    /// are ignored.
    pub fn parse_arc_list(text: &str) -> Result<Digraph> {
        let mut vertex_count: Option<usize> = None;
        let mut arcs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let parse = |tok: &str, idx: usize| -> Result<usize> {
                tok.parse().map_err(|_| Error::ArcListParse {
                    line: idx + 1,
                    message: format!("expected an integer, got {tok:?}"),
                })
            };
            match vertex_count {
                None => {
                    if fields.next() != Some("n") {
                        return Err(Error::ArcListParse {
                            line: idx + 1,
                            message: "expected header line `n <vertex_count>`".into(),
                        });
                    }
                    let count = fields.next().ok_or_else(|| Error::ArcListParse {
                        line: idx + 1,
                        message: "header missing vertex count".into(),
                    })?;
                    vertex_count = Some(parse(count, idx)?);
                }
                Some(_) => {
                    let (u, v) = match (fields.next(), fields.next()) {
                        (Some(u), Some(v)) => (parse(u, idx)?, parse(v, idx)?),
                        _ => {
                            return Err(Error::ArcListParse {
                                line: idx + 1,
                                message: "expected `u v`".into(),
                            })
                        }
                    };
                    arcs.push((u, v));
                }
            }
            if fields.next().is_some() {
                return Err(Error::ArcListParse {
                    line: idx + 1,
                    message: "trailing tokens".into(),
                });
            }
        }
        let vertex_count = vertex_count.ok_or(Error::ArcListParse {
            line: 0,
            message: "missing header line `n <vertex_count>`".into(),
        })?;
        Digraph::build(vertex_count, arcs)
    }

    /// Renders the arc-list text format; inverse of [`parse_arc_list`]
    /// up to comments and ordering.
    ///
    /// [`parse_arc_list`]: Digraph::parse_arc_list
    pub fn to_arc_list(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count());
        for (u, v) in self.arcs() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Digraph({} vertices, {} arcs)",
            self.vertex_count(),
            self.arc_count
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Arcs of the binary shift graph on 2-symbol words: 00→{00,01},
    /// 01→{10,11}, 10→{00,01}, 11→{10,11}.
    pub(crate) fn shift_2_2_arcs() -> Vec<(usize, usize)> {
        vec![
            (0, 0),
            (0, 1),
            (1, 2),
            (1, 3),
            (2, 0),
            (2, 1),
            (3, 2),
            (3, 3),
        ]
    }

    #[test]
    fn build_shift_graph() {
        let g = Digraph::build(4, shift_2_2_arcs()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.arc_count(), 8);
        assert_eq!(g.out_neighbors(1), &[2, 3]);
        assert_eq!(g.out_neighbors(0), &[0, 1]);
        assert_eq!(g.in_neighbors(0), &[0, 2]);
        assert_eq!(g.in_neighbors(3), &[1, 3]);
    }

    #[test]
    fn build_dedups_parallel_arcs() {
        let g = Digraph::build(2, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.out_neighbors(0), &[1]);
    }

    #[test]
    fn build_rejects_out_of_range() {
        let err = Digraph::build(3, vec![(0, 5)]).unwrap_err();
        assert_eq!(
            err,
            Error::ArcOutOfRange {
                from: 0,
                to: 5,
                vertex_count: 3
            }
        );
    }

    #[test]
    fn isolated_vertex_has_no_neighbors() {
        let g = Digraph::build(2, vec![(0, 0)]).unwrap();
        assert!(g.out_neighbors(1).is_empty());
        assert!(g.in_neighbors(1).is_empty());
    }

    #[test]
    fn out_neighborhood_of_set() {
        let g = Digraph::build(4, shift_2_2_arcs()).unwrap();
        let s = VertexSet::from_members(4, [1]).unwrap();
        assert_eq!(g.out_neighborhood_of_set(&s).to_vec(), vec![2, 3]);
        assert!(g
            .out_neighborhood_of_set(&VertexSet::new(4))
            .is_empty());
        let all = VertexSet::full(4);
        assert_eq!(g.out_neighborhood_of_set(&all), all);
    }

    #[test]
    fn degree_sums_match_arc_count() {
        let g = Digraph::build(4, shift_2_2_arcs()).unwrap();
        let out_sum: usize = (0..4).map(|v| g.out_neighbors(v).len()).sum();
        let in_sum: usize = (0..4).map(|v| g.in_neighbors(v).len()).sum();
        assert_eq!(out_sum, g.arc_count());
        assert_eq!(in_sum, g.arc_count());
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(70);
        assert!(s.insert(0));
        assert!(s.insert(69));
        assert!(!s.insert(69));
        assert_eq!(s.len(), 2);
        assert!(s.contains(69));
        assert!(!s.contains(68));
        assert_eq!(s.to_vec(), vec![0, 69]);
        assert!(s.remove(0));
        assert!(!s.remove(0));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn vertex_set_rejects_out_of_range_members() {
        let err = VertexSet::from_members(3, [0, 7]).unwrap_err();
        assert_eq!(
            err,
            Error::VertexOutOfRange {
                vertex: 7,
                universe: 3
            }
        );
    }

    #[test]
    fn arc_list_round_trip() {
        let g = Digraph::build(4, shift_2_2_arcs()).unwrap();
        let text = g.to_arc_list();
        assert!(text.starts_with("n 4\n"));
        let parsed = Digraph::parse_arc_list(&text).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn arc_list_accepts_comments_and_blanks() {
        let text = "# shift graph\nn 2\n\n0 1\n# done\n1 0\n";
        let g = Digraph::parse_arc_list(text).unwrap();
        assert_eq!(g.arc_count(), 2);
    }

    #[test]
    fn arc_list_rejects_garbage() {
        assert!(matches!(
            Digraph::parse_arc_list("0 1\n"),
            Err(Error::ArcListParse { line: 1, .. })
        ));
        assert!(matches!(
            Digraph::parse_arc_list("n 2\n0 x\n"),
            Err(Error::ArcListParse { line: 2, .. })
        ));
        assert!(matches!(
            Digraph::parse_arc_list("n 2\n0 1 2\n"),
            Err(Error::ArcListParse { line: 2, .. })
        ));
    }
}
