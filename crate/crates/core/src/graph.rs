//! Bit-packed graph representations.
//!
//! [`SmallGraph`] holds up to 8 vertices in one byte-row per vertex and is the
//! unit of catalog entries and classification. [`HostGraph`] holds up to 4096
//! vertices in 64-bit word rows and is the census target. Both are immutable
//! once built through the checked constructors and safe to share across
//! threads.

use thiserror::Error;

/// Largest order a [`SmallGraph`] can have.
pub const SMALL_MAX_ORDER: usize = 8;
/// Largest order a [`HostGraph`] can have.
pub const HOST_MAX_ORDER: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} outside supported range [1,{1}]")]
    OrderOutOfRange(usize, usize),
    #[error("vertex {0} out of range for order {1}")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("hamiltonicity is undefined below order 3 (got {0})")]
    OrderTooSmallForCycle(usize),
    #[error("graph of order {0} does not fit in a small graph (max {SMALL_MAX_ORDER})")]
    TooLargeForSmall(usize),
}

/// An undirected graph on at most 8 vertices.
///
/// Row `i` is a bitmask with bit `j` set iff `i ~ j`. Rows are kept symmetric
/// and loop-free; bits at positions `>= order` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    order: u8,
    adj: [u8; SMALL_MAX_ORDER],
}

impl std::fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SmallGraph(order={}, edges={:?})",
            self.order,
            self.edges()
        )
    }
}

impl SmallGraph {
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order == 0 || order > SMALL_MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(order, SMALL_MAX_ORDER));
        }
        Ok(SmallGraph {
            order: order as u8,
            adj: [0; SMALL_MAX_ORDER],
        })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Decodes an upper-triangle bit sequence (row-major, pair (0,1) first,
    /// read as the most significant bit).
    pub fn from_code_seq(order: usize, code: u32) -> Result<Self, GraphError> {
        let mut g = Self::empty(order)?;
        let nb = g.triangle_len();
        let mut bit = nb;
        for i in 0..order {
            for j in (i + 1)..order {
                bit -= 1;
                if (code >> bit) & 1 != 0 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        if u >= n {
            return Err(GraphError::VertexOutOfRange(u, n));
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v, n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline(always)]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Number of upper-triangle bit positions, `order*(order-1)/2`.
    #[inline(always)]
    pub fn triangle_len(&self) -> usize {
        let n = self.order();
        n * (n - 1) / 2
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order() && v < self.order());
        (self.adj[u] >> v) & 1 != 0
    }

    /// Neighbor bitmask of `v`.
    #[inline(always)]
    pub fn row(&self, v: usize) -> u8 {
        self.adj[v]
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Upper-triangle bits as a sequence value: row-major, pair (0,1) is the
    /// most significant bit. Integer order equals lexicographic order of the
    /// bit sequence.
    pub fn code_seq(&self) -> u32 {
        let n = self.order();
        let mut code = 0u32;
        for i in 0..n {
            let row = self.adj[i];
            for j in (i + 1)..n {
                code = (code << 1) | ((row >> j) as u32 & 1);
            }
        }
        code
    }

    /// Upper-triangle bits as a table index: row-major, pair (0,1) is bit 0.
    /// This is the little-endian convention used by the classifier table.
    pub fn code_index(&self) -> u32 {
        let n = self.order();
        let mut code = 0u32;
        let mut bit = 0;
        for i in 0..n {
            let row = self.adj[i];
            for j in (i + 1)..n {
                code |= ((row >> j) as u32 & 1) << bit;
                bit += 1;
            }
        }
        code
    }

    /// Relabels vertices: `perm[pos]` is the original vertex placed at `pos`.
    pub fn relabeled(&self, perm: &[u8]) -> SmallGraph {
        let n = self.order();
        debug_assert_eq!(perm.len(), n);
        let mut g = SmallGraph {
            order: self.order,
            adj: [0; SMALL_MAX_ORDER],
        };
        for i in 0..n {
            for j in (i + 1)..n {
                if self.has_edge(perm[i] as usize, perm[j] as usize) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        g
    }

    /// Induced subgraph on the given vertices, in the given order.
    pub fn induced(&self, verts: &[usize]) -> Result<SmallGraph, GraphError> {
        let mut g = Self::empty(verts.len())?;
        for a in 0..verts.len() {
            for b in (a + 1)..verts.len() {
                if self.has_edge(verts[a], verts[b]) {
                    g.adj[a] |= 1 << b;
                    g.adj[b] |= 1 << a;
                }
            }
        }
        Ok(g)
    }

    /// True iff every adjacent pair has at most 1 common neighbor and every
    /// non-adjacent pair at most 2, the local constraints an induced subgraph
    /// of an srg(n,k,1,2) host must satisfy.
    pub fn is_admissible(&self) -> bool {
        let n = self.order();
        for u in 0..n {
            for v in (u + 1)..n {
                let common = (self.adj[u] & self.adj[v]).count_ones();
                let cap = if self.has_edge(u, v) { 1 } else { 2 };
                if common > cap {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the graph contains a spanning cycle.
    ///
    /// Checked by a bitmask DP over paths anchored at vertex 0; exact for all
    /// supported orders. Orders below 3 cannot carry a cycle and are rejected.
    pub fn is_hamiltonian(&self) -> Result<bool, GraphError> {
        let n = self.order();
        if n < 3 {
            return Err(GraphError::OrderTooSmallForCycle(n));
        }
        // cheap necessary conditions
        if (0..n).any(|v| self.degree(v) < 2) {
            return Ok(false);
        }
        // reach[mask][last]: a path from 0 visiting exactly `mask` ends at `last`
        let full = (1u16 << n) - 1;
        let mut reach = [0u8; 1 << SMALL_MAX_ORDER];
        reach[1] = 1; // mask {0}, last = 0
        for mask in 1..=full {
            if mask & 1 == 0 {
                continue;
            }
            let ends = reach[mask as usize];
            if ends == 0 {
                continue;
            }
            let mut last_bits = ends;
            while last_bits != 0 {
                let last = last_bits.trailing_zeros() as usize;
                last_bits &= last_bits - 1;
                let mut nexts = self.adj[last] & !(mask as u8);
                while nexts != 0 {
                    let v = nexts.trailing_zeros() as usize;
                    nexts &= nexts - 1;
                    reach[(mask | (1 << v)) as usize] |= 1 << v;
                }
            }
        }
        // close the cycle back to vertex 0
        Ok(reach[full as usize] & self.adj[0] != 0)
    }

    /// True iff the graph is connected (single component).
    pub fn is_connected(&self) -> bool {
        let n = self.order();
        let mut seen: u8 = 1;
        let mut frontier: u8 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen.count_ones() as usize == n
    }
}

/// An undirected graph on up to 4096 vertices with bit-packed adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct HostGraph {
    order: usize,
    words: usize,
    adj: Vec<u64>,
    name: Option<String>,
}

impl std::fmt::Debug for HostGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "HostGraph(order={}, edges={}{})",
            self.order,
            self.edge_count(),
            self.name
                .as_deref()
                .map(|n| format!(", name={n}"))
                .unwrap_or_default()
        )
    }
}

impl HostGraph {
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order == 0 || order > HOST_MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(order, HOST_MAX_ORDER));
        }
        let words = order.div_ceil(64);
        Ok(HostGraph {
            order,
            words,
            adj: vec![0; order * words],
            name: None,
        })
    }

    pub fn from_edges(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(order)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.order {
            return Err(GraphError::VertexOutOfRange(u, self.order));
        }
        if v >= self.order {
            return Err(GraphError::VertexOutOfRange(v, self.order));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    #[inline(always)]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Words per adjacency row.
    #[inline(always)]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline(always)]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order && v < self.order);
        (self.adj[u * self.words + v / 64] >> (v % 64)) & 1 != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// `Some(k)` iff every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        (1..self.order).all(|v| self.degree(v) == k).then_some(k)
    }

    /// Returns a copy with `extra` isolated vertices appended.
    pub fn with_isolated(&self, extra: usize) -> Result<HostGraph, GraphError> {
        let mut g = HostGraph::empty(self.order + extra)?;
        for u in 0..self.order {
            for v in (u + 1)..self.order {
                if self.has_edge(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        }
        g.name = self.name.clone();
        Ok(g)
    }
}

impl From<&SmallGraph> for HostGraph {
    fn from(g: &SmallGraph) -> HostGraph {
        let mut h = HostGraph::empty(g.order()).expect("small order is a valid host order");
        for (u, v) in g.edges() {
            h.add_edge(u, v).expect("edges are in range");
        }
        h
    }
}

impl TryFrom<&HostGraph> for SmallGraph {
    type Error = GraphError;

    fn try_from(h: &HostGraph) -> Result<SmallGraph, GraphError> {
        if h.order() > SMALL_MAX_ORDER {
            return Err(GraphError::TooLargeForSmall(h.order()));
        }
        let mut g = SmallGraph::empty(h.order())?;
        for u in 0..h.order() {
            for v in (u + 1)..h.order() {
                if h.has_edge(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SmallGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SmallGraph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> SmallGraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        SmallGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(SmallGraph::empty(0).is_err());
        assert!(SmallGraph::empty(9).is_err());
        assert!(HostGraph::empty(0).is_err());
        assert!(HostGraph::empty(4097).is_err());
        let mut g = SmallGraph::empty(3).unwrap();
        assert_eq!(g.add_edge(0, 0), Err(GraphError::SelfLoop(0)));
        assert_eq!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange(3, 3)));
    }

    #[test]
    fn code_round_trips_both_conventions() {
        let g = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let seq = g.code_seq();
        let back = SmallGraph::from_code_seq(4, seq).unwrap();
        assert_eq!(g, back);
        // (0,1) edge alone: seq has only the top bit of 6, index has only bit 0
        let e01 = SmallGraph::from_edges(4, &[(0, 1)]).unwrap();
        assert_eq!(e01.code_seq(), 1 << 5);
        assert_eq!(e01.code_index(), 1);
    }

    #[test]
    fn hamiltonian_examples() {
        assert!(cycle(7).is_hamiltonian().unwrap());
        // star K_{1,6}: leaves have degree 1
        let star: Vec<_> = (1..7).map(|v| (0, v)).collect();
        let star = SmallGraph::from_edges(7, &star).unwrap();
        assert!(!star.is_hamiltonian().unwrap());
        assert_eq!(
            SmallGraph::empty(2).unwrap().is_hamiltonian(),
            Err(GraphError::OrderTooSmallForCycle(2))
        );
        assert!(complete(5).is_hamiltonian().unwrap());
        // path P_4 is connected with interior degrees 2 but no spanning cycle
        let p4 = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!p4.is_hamiltonian().unwrap());
    }

    #[test]
    fn hamiltonian_rook_residual() {
        // rook(3,3) minus the adjacent pair {0,1}: cells 2..8 of the 3x3 grid
        let mut host = HostGraph::empty(9).unwrap();
        for a in 0..9usize {
            for b in (a + 1)..9 {
                if a / 3 == b / 3 || a % 3 == b % 3 {
                    host.add_edge(a, b).unwrap();
                }
            }
        }
        let verts: Vec<usize> = (2..9).collect();
        let mut sub = SmallGraph::empty(7).unwrap();
        for x in 0..7 {
            for y in (x + 1)..7 {
                if host.has_edge(verts[x], verts[y]) {
                    sub.add_edge(x, y).unwrap();
                }
            }
        }
        assert_eq!(sub.edge_count(), 11);
        assert!(sub.is_hamiltonian().unwrap());
    }

    #[test]
    fn admissibility_examples() {
        assert!(!complete(4).is_admissible()); // adjacent pair shares 2 neighbors
        assert!(cycle(7).is_admissible());
        // K_{2,3}: the 2-side pair shares 3 common neighbors
        let k23 =
            SmallGraph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert!(!k23.is_admissible());
    }

    #[test]
    fn hamiltonian_implies_connected_min_degree_two() {
        // necessary-condition check over every labeled 5-vertex graph
        for code in 0u32..(1 << 10) {
            let g = SmallGraph::from_code_seq(5, code).unwrap();
            if g.is_hamiltonian().unwrap() {
                assert!(g.is_connected());
                assert!((0..5).all(|v| g.degree(v) >= 2));
            }
        }
    }

    #[test]
    fn host_graph_basics() {
        let mut g = HostGraph::empty(100).unwrap();
        g.add_edge(0, 99).unwrap();
        g.add_edge(64, 65).unwrap();
        assert!(g.has_edge(99, 0));
        assert!(g.has_edge(65, 64));
        assert!(!g.has_edge(0, 64));
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.words(), 2);
        let bigger = g.with_isolated(3).unwrap();
        assert_eq!(bigger.order(), 103);
        assert_eq!(bigger.edge_count(), 2);
    }

    #[test]
    fn small_host_conversions() {
        let g = cycle(7);
        let h = HostGraph::from(&g);
        let back = SmallGraph::try_from(&h).unwrap();
        assert_eq!(g, back);
        let big = HostGraph::empty(9).unwrap();
        assert_eq!(
            SmallGraph::try_from(&big),
            Err(GraphError::TooLargeForSmall(9))
        );
    }
}
