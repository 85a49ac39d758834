//! Simple undirected graphs on up to 64 vertices, stored as bitset
//! adjacency rows, with graph6 interchange.

use std::fmt;

use thiserror::Error;

/// Hard cap on vertex count: one machine word per adjacency row.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices, maximum supported is 64")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("disjoint union would have {0} vertices, maximum supported is 64")]
    UnionTooLarge(usize),
    #[error("operation supports at most {limit} vertices, got {n}")]
    SizeBound { limit: usize, n: usize },
}

/// Errors from parsing a graph6 record. Every variant carries the byte
/// offset of the offending character.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte 0x{byte:02x} at offset {offset} is outside the graph6 range 63..=126")]
    CharOutOfRange { offset: usize, byte: u8 },
    #[error("vertex count {n} at offset {offset} exceeds the supported maximum of 64")]
    TooManyVertices { offset: usize, n: usize },
    #[error("record truncated at offset {offset}: expected {expected} data bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("trailing garbage at offset {offset}")]
    TrailingGarbage { offset: usize },
    #[error("nonzero padding bits in the final group at offset {offset}")]
    NonzeroPadding { offset: usize },
}

/// A simple undirected graph. Row `i` of `adj` is the neighborhood of
/// vertex `i` as a bitset. Values are immutable once constructed; all
/// operations return new graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from explicit 0/1 adjacency rows (must be square,
    /// symmetric and zero on the diagonal).
    pub fn from_adjacency_rows(rows: &[&[u8]]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "adjacency rows must be square");
            for (j, &a) in row.iter().enumerate() {
                if a != 0 {
                    if i == j {
                        return Err(GraphError::SelfLoop(i));
                    }
                    if i < j {
                        g.insert_edge(i, j)?;
                    } else {
                        assert_ne!(rows[j][i], 0, "adjacency not symmetric at ({i},{j})");
                    }
                }
            }
        }
        // symmetry of the upper triangle against the lower one
        for i in 0..n {
            for j in (i + 1)..n {
                assert_eq!(
                    rows[i][j] != 0,
                    rows[j][i] != 0,
                    "adjacency not symmetric at ({i},{j})"
                );
            }
        }
        Ok(g)
    }

    /// Builds a graph from rows of '0'/'1' characters, e.g. `["011", "101", "110"]`.
    pub fn from_matrix_strings(rows: &[&str]) -> Result<Self, GraphError> {
        let owned: Vec<Vec<u8>> = rows
            .iter()
            .map(|s| s.bytes().map(|b| b - b'0').collect())
            .collect();
        let refs: Vec<&[u8]> = owned.iter().map(|r| r.as_slice()).collect();
        Graph::from_adjacency_rows(&refs)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: u,
                n: self.n,
            });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] >> v & 1 != 0
    }

    /// Neighborhood of `v` as a bitset.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

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
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut rest = if u + 1 >= 64 {
                0
            } else {
                self.adj[u] & !((1u64 << (u + 1)) - 1)
            };
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                out.push((u, v));
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&r| r == 0).count()
    }

    /// Removes all isolated vertices, relabeling the rest in ascending order.
    pub fn strip_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.adj[v] != 0).collect();
        self.induced_subgraph(&keep)
            .expect("kept vertices are in range")
    }

    /// Edge ij present in the result iff i != j and ij absent here.
    pub fn complement(&self) -> Graph {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & full & !(1 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Block-diagonal union; vertices of `other` are shifted up by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::UnionTooLarge(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Subgraph induced by `vs`, vertices relabeled in ascending order.
    /// Duplicate entries are ignored.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<Graph, GraphError> {
        let mut mask = 0u64;
        for &v in vs {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            mask |= 1 << v;
        }
        let kept: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 != 0).collect();
        let mut g = Graph::empty(kept.len())?;
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    /// Applies the relabeling `perm` (old label -> new label), which must be
    /// a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for u in 0..self.n {
            let mut row = self.adj[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                g.adj[perm[u]] |= 1 << perm[v];
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.reach(0).count_ones() as usize == self.n
    }

    fn reach(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Connected components as ascending vertex lists, ordered by their
    /// smallest vertex. The 0-vertex graph has no components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut unseen = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut comps = Vec::new();
        while unseen != 0 {
            let start = unseen.trailing_zeros() as usize;
            let comp = self.reach(start);
            unseen &= !comp;
            comps.push((0..self.n).filter(|&v| comp >> v & 1 != 0).collect());
        }
        comps
    }

    // --- standard constructions used across the crate ---

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        Ok(Graph::empty(n)?.complement())
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Complete multipartite graph with the given class sizes, classes laid
    /// out consecutively in the given order.
    pub fn complete_multipartite(classes: &[usize]) -> Result<Graph, GraphError> {
        let n: usize = classes.iter().sum();
        let mut g = Graph::empty(n)?;
        let mut starts = Vec::with_capacity(classes.len());
        let mut acc = 0;
        for &c in classes {
            starts.push(acc);
            acc += c;
        }
        for (a, &ca) in classes.iter().enumerate() {
            for (b, &cb) in classes.iter().enumerate().skip(a + 1) {
                for u in starts[a]..starts[a] + ca {
                    for v in starts[b]..starts[b] + cb {
                        g.adj[u] |= 1 << v;
                        g.adj[v] |= 1 << u;
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn complete_bipartite(l: usize, m: usize) -> Result<Graph, GraphError> {
        Graph::complete_multipartite(&[l, m])
    }

    // --- graph6 ---

    /// Parses a single graph6 record. Uses the single-byte size for
    /// n <= 62 and the '~'-escaped long size for n in 63..=64.
    pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
        let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
        if bytes.is_empty() {
            return Err(Graph6Error::Empty);
        }
        let sixbit = |offset: usize| -> Result<usize, Graph6Error> {
            match bytes.get(offset) {
                Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
                Some(&b) => Err(Graph6Error::CharOutOfRange { offset, byte: b }),
                None => Err(Graph6Error::Truncated {
                    offset: bytes.len(),
                    expected: offset + 1,
                    found: bytes.len(),
                }),
            }
        };
        let (n, header) = if bytes[0] == b'~' {
            if bytes.get(1) == Some(&b'~') {
                // 8-byte form encodes n >= 258048, far past our cap
                let mut n = 0usize;
                for k in 0..6 {
                    n = n << 6 | sixbit(2 + k).unwrap_or(0);
                }
                return Err(Graph6Error::TooManyVertices { offset: 0, n });
            }
            let n = sixbit(1)? << 12 | sixbit(2)? << 6 | sixbit(3)?;
            (n, 4)
        } else {
            (sixbit(0)?, 1)
        };
        if n > MAX_VERTICES {
            return Err(Graph6Error::TooManyVertices { offset: 0, n });
        }
        let m = n * (n.saturating_sub(1)) / 2;
        let data_len = m.div_ceil(6);
        if bytes.len() < header + data_len {
            return Err(Graph6Error::Truncated {
                offset: bytes.len(),
                expected: data_len,
                found: bytes.len() - header,
            });
        }
        if bytes.len() > header + data_len {
            return Err(Graph6Error::TrailingGarbage {
                offset: header + data_len,
            });
        }
        let mut g = Graph { n, adj: vec![0; n] };
        let mut k = 0usize;
        for j in 1..n {
            for i in 0..j {
                let group = sixbit(header + k / 6)?;
                if group >> (5 - k % 6) & 1 != 0 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        // validate remaining pad bits of the final group
        if m % 6 != 0 {
            let group = sixbit(header + m / 6)?;
            let pad_mask = (1usize << (6 - m % 6)) - 1;
            if group & pad_mask != 0 {
                return Err(Graph6Error::NonzeroPadding {
                    offset: header + m / 6,
                });
            }
        }
        Ok(g)
    }

    /// graph6 encoding of this graph with its current labeling.
    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        if self.n <= 62 {
            out.push(63 + self.n as u8);
        } else {
            out.push(b'~');
            out.push(63 + ((self.n >> 12) & 63) as u8);
            out.push(63 + ((self.n >> 6) & 63) as u8);
            out.push(63 + (self.n & 63) as u8);
        }
        let m = self.n * self.n.saturating_sub(1) / 2;
        let mut group = 0u8;
        let mut k = 0usize;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    group |= 1 << (5 - k % 6);
                }
                k += 1;
                if k % 6 == 0 {
                    out.push(63 + group);
                    group = 0;
                }
            }
        }
        if m % 6 != 0 {
            out.push(63 + group);
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}
