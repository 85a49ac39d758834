//! Canonical forms and isomorphism testing for graphs up to 16 vertices.
//!
//! The canonical labeling minimizes the packed upper-triangle bit string
//! (column-major, the graph6 bit order) over all relabelings. The search is
//! equitable degree refinement plus individualization, with prefix-comparison
//! pruning and automorphism pruning from leaves that tie the current best.

use crate::graph::{Graph, GraphError};

/// Canonical forms are computed by explicit search; this bound keeps the
/// worst case (highly regular graphs) cheap.
pub const CANON_MAX_VERTICES: usize = 16;

/// Certificate identifying an isomorphism class: the graph6 encoding of the
/// canonically relabeled graph. Equal certificates iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    cert: String,
}

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.cert
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.cert.as_bytes()
    }

    pub fn into_string(self) -> String {
        self.cert
    }

    /// The canonical representative graph.
    pub fn graph(&self) -> Graph {
        Graph::from_graph6(&self.cert).expect("certificate is valid graph6")
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.cert)
    }
}

impl Graph {
    /// Canonical form of this graph (n <= 16).
    pub fn canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        let (n, adj) = self.small_adj()?;
        let best_order = Searcher::new(n, adj).run().1;
        let mut perm = vec![0usize; n];
        for (pos, &v) in best_order[..n].iter().enumerate() {
            perm[v as usize] = pos;
        }
        Ok(CanonicalForm {
            cert: self.relabel(&perm).to_graph6(),
        })
    }

    /// True iff this graph's labeling is already the canonical one.
    pub fn is_self_canonical(&self) -> Result<bool, GraphError> {
        let (n, adj) = self.small_adj()?;
        Ok(Searcher::new(n, adj).run().0 == packed_bits(n, &adj))
    }

    /// Isomorphism test; false immediately if vertex counts differ.
    pub fn isomorphic(&self, other: &Graph) -> Result<bool, GraphError> {
        if self.n() != other.n() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    fn small_adj(&self) -> Result<(usize, [u16; 16]), GraphError> {
        let n = self.n();
        if n > CANON_MAX_VERTICES {
            return Err(GraphError::SizeBound {
                limit: CANON_MAX_VERTICES,
                n,
            });
        }
        let mut adj = [0u16; 16];
        for v in 0..n {
            adj[v] = self.neighbors(v) as u16;
        }
        Ok((n, adj))
    }
}

/// Minimal packed upper-triangle bits of the identity labeling.
pub(crate) fn packed_bits(n: usize, adj: &[u16; 16]) -> u128 {
    let mut bits = 0u128;
    for j in 1..n {
        for i in 0..j {
            bits = bits << 1 | (adj[i] >> j & 1) as u128;
        }
    }
    bits
}

/// Canonical packed bits for a stack-allocated adjacency (hot path for the
/// exhaustive enumerator).
pub(crate) fn canonical_bits(n: usize, adj: &[u16; 16]) -> u128 {
    Searcher::new(n, adj.to_owned()).run().0
}

const AUTO_CAP: usize = 64;

struct Searcher {
    n: usize,
    m: usize,
    adj: [u16; 16],
    best_bits: u128,
    best_order: [u8; 16],
    have_best: bool,
    autos: Vec<[u8; 16]>,
    fixed: [u8; 16],
    depth: usize,
}

impl Searcher {
    fn new(n: usize, adj: [u16; 16]) -> Self {
        Searcher {
            n,
            m: n * n.saturating_sub(1) / 2,
            adj,
            best_bits: 0,
            best_order: [0; 16],
            have_best: false,
            autos: Vec::new(),
            fixed: [0; 16],
            depth: 0,
        }
    }

    fn run(mut self) -> (u128, [u8; 16]) {
        let mut order = [0u8; 16];
        for (v, slot) in order.iter_mut().enumerate().take(self.n) {
            *slot = v as u8;
        }
        // one cell covering all positions (ends bit on the last position)
        let ends: u32 = if self.n == 0 { 0 } else { 1 << (self.n - 1) };
        self.search(order, ends);
        (self.best_bits, self.best_order)
    }

    /// Equitable refinement: repeatedly split cells by per-cell neighbor
    /// counts until stable. Splits within a pass use the partition as it was
    /// at the start of the pass, so the result is label-invariant.
    fn refine(&self, order: &mut [u8; 16], ends: &mut u32) {
        let n = self.n;
        loop {
            // cell masks in partition order
            let mut cell_mask = [0u16; 16];
            let mut ncells = 0usize;
            for p in 0..n {
                cell_mask[ncells] |= 1 << order[p];
                if *ends >> p & 1 != 0 {
                    ncells += 1;
                }
            }
            if ncells == n {
                return; // discrete
            }
            let mut changed = false;
            let mut keys = [[0u8; 16]; 16];
            for (v, key) in keys.iter_mut().enumerate().take(n) {
                for c in 0..ncells {
                    key[c] = (self.adj[v] & cell_mask[c]).count_ones() as u8;
                }
            }
            // split every cell according to those keys
            let mut p = 0usize;
            while p < n {
                let mut e = p;
                while *ends >> e & 1 == 0 {
                    e += 1;
                }
                if e > p {
                    // insertion sort order[p..=e] by key, ascending
                    for i in (p + 1)..=e {
                        let mut j = i;
                        while j > p
                            && keys[order[j] as usize][..ncells]
                                < keys[order[j - 1] as usize][..ncells]
                        {
                            order.swap(j, j - 1);
                            j -= 1;
                        }
                    }
                    for q in p..e {
                        if keys[order[q] as usize][..ncells]
                            != keys[order[q + 1] as usize][..ncells]
                        {
                            *ends |= 1 << q;
                            changed = true;
                        }
                    }
                }
                p = e + 1;
            }
            if !changed {
                return;
            }
        }
    }

    /// Packed bits restricted to the first `s` positions of `order`.
    fn prefix_bits(&self, order: &[u8; 16], s: usize) -> u128 {
        let mut bits = 0u128;
        for q in 1..s {
            for p in 0..q {
                bits = bits << 1 | (self.adj[order[p] as usize] >> order[q] & 1) as u128;
            }
        }
        bits
    }

    fn search(&mut self, mut order: [u8; 16], mut ends: u32) {
        self.refine(&mut order, &mut ends);
        let s = (ends.trailing_ones() as usize).min(self.n);
        let c = s * s.saturating_sub(1) / 2;
        let pb = self.prefix_bits(&order, s);
        if self.have_best {
            let bp = self.best_bits >> (self.m - c);
            if pb > bp {
                return;
            }
        }
        if s == self.n {
            if !self.have_best || pb < self.best_bits {
                self.best_bits = pb;
                self.best_order = order;
                self.have_best = true;
            } else if pb == self.best_bits && self.autos.len() < AUTO_CAP {
                // two labelings with identical images give an automorphism
                let mut sigma = [0u8; 16];
                let mut inv = [0u8; 16];
                for p in 0..self.n {
                    sigma[self.best_order[p] as usize] = order[p];
                    inv[order[p] as usize] = self.best_order[p];
                }
                self.autos.push(sigma);
                if self.autos.len() < AUTO_CAP {
                    self.autos.push(inv);
                }
            }
            return;
        }
        // target cell: the one starting at position s (all earlier cells are
        // singletons)
        let mut e = s;
        while ends >> e & 1 == 0 {
            e += 1;
        }
        let csize = e - s + 1;
        let mut candidates = [0u8; 16];
        candidates[..csize].copy_from_slice(&order[s..=e]);
        let mut tried: u16 = 0;
        for &v in &candidates[..csize] {
            let skip = self.autos.iter().any(|sigma| {
                tried >> sigma[v as usize] & 1 != 0
                    && self.fixed[..self.depth]
                        .iter()
                        .all(|&a| sigma[a as usize] == a)
            });
            tried |= 1 << v;
            if skip {
                continue;
            }
            let mut child = order;
            child[s] = v;
            let mut q = s + 1;
            for &w in &candidates[..csize] {
                if w != v {
                    child[q] = w;
                    q += 1;
                }
            }
            self.fixed[self.depth] = v;
            self.depth += 1;
            self.search(child, ends | 1 << s);
            self.depth -= 1;
        }
    }
}
