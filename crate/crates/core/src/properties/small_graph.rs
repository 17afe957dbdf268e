use crate::error::{bail_arg, Result};

/// A simple undirected graph on at most [`SmallGraph::MAX_VERTICES`]
/// vertices, stored as adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    adjacency: Vec<u16>,
}

impl SmallGraph {
    pub const MAX_VERTICES: usize = 8;

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 || vertex_count > Self::MAX_VERTICES {
            bail_arg!(
                "small graphs have 1..={} vertices, got {vertex_count}",
                Self::MAX_VERTICES
            );
        }
        let mut adjacency = vec![0u16; vertex_count];
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count || a == b {
                bail_arg!("invalid edge ({a}, {b}) on {vertex_count} vertices");
            }
            adjacency[a] |= 1 << b;
            adjacency[b] |= 1 << a;
        }
        Ok(Self { adjacency })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|b| (b - 1, b)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            bail_arg!("a cycle needs at least 3 vertices");
        }
        let mut edges: Vec<_> = (1..n).map(|b| (b - 1, b)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    /// Graph on `n` vertices with an edge wherever `adjacent(i, j)`.
    pub(crate) fn from_predicate(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        debug_assert!(n <= Self::MAX_VERTICES);
        let mut adjacency = vec![0u16; n];
        for a in 0..n {
            for b in a + 1..n {
                if adjacent(a, b) {
                    adjacency[a] |= 1 << b;
                    adjacency[b] |= 1 << a;
                }
            }
        }
        Self { adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] >> b & 1 == 1
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let full: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adjacency[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == full
    }

    fn degrees(&self) -> Vec<u32> {
        self.adjacency.iter().map(|m| m.count_ones()).collect()
    }

    /// Isomorphism test by backtracking over vertex maps that preserve degrees.
    pub fn is_isomorphic(&self, other: &SmallGraph) -> bool {
        let n = self.vertex_count();
        if n != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let (da, db) = (self.degrees(), other.degrees());
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_map(other, &da, &db, 0, &mut map, &mut used)
    }

    fn extend_map(
        &self,
        other: &SmallGraph,
        da: &[u32],
        db: &[u32],
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.vertex_count();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || da[v] != db[w] {
                continue;
            }
            if (0..v).any(|u| self.has_edge(u, v) != other.has_edge(map[u], w)) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend_map(other, da, db, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
}
