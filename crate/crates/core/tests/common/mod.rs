//! Helpers shared by the integration suites: seeded random graphs, catalog
//! sweeps, and brute-force oracles. Oracles here are independent of the
//! library's implementation paths so they can vouch for expected values.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spectral_class::families::{catalog_instances, FamilyInstance};
use spectral_class::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("within bounds")
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Every catalog instance with at most `max_n` vertices.
pub fn instances_up_to(max_n: usize) -> Vec<FamilyInstance> {
    (1..=max_n).flat_map(catalog_instances).collect()
}

/// All labeled graphs on n vertices (2^C(n,2) of them).
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let m = n * n.saturating_sub(1) / 2;
    (0u64..1 << m)
        .map(|idx| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if idx >> (m - 1 - k) & 1 != 0 {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Brute-force isomorphism-class invariant: the minimum packed
/// upper-triangle bit string over all n! relabelings.
pub fn brute_force_class_id(g: &Graph) -> u128 {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u128::MAX;
    fn packed(g: &Graph) -> u128 {
        let mut bits = 0u128;
        for j in 1..g.n() {
            for i in 0..j {
                bits = bits << 1 | g.has_edge(i, j) as u128;
            }
        }
        bits
    }
    fn visit(g: &Graph, perm: &mut Vec<usize>, k: usize, best: &mut u128) {
        if k == perm.len() {
            *best = (*best).min(packed(&g.relabel(perm)));
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            visit(g, perm, k + 1, best);
            perm.swap(k, i);
        }
    }
    visit(g, &mut perm, 0, &mut best);
    if n == 0 {
        best = 0;
    }
    best
}

/// The standard Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
    .unwrap()
}
