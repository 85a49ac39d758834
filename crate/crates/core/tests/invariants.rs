//! Cross-module invariants: round trips, oracle agreements, dual exact
//! routes, and closure properties, exercised exhaustively at small orders
//! and on seeded random samples.

mod common;

use std::collections::HashMap;

use common::{
    all_labeled_graphs, brute_force_class_id, instances_up_to, petersen, random_graph,
    random_permutation, rng,
};
use rand::Rng;

use spectral_class::classifier::{classify, membership};
use spectral_class::cospectral::{nonzero_key, theorem6_class};
use spectral_class::families::{equivalent_labels, recognize};
use spectral_class::graph::Graph;
use spectral_class::harness::{
    enumerate_h_members, enumerate_nonisomorphic, predicted_cospectral_pairs,
    verify_classification, VerifyConfig,
};
use spectral_class::linalg::{char_poly, inertia, spectrum_shape, IntMatrix};
use spectral_class::numeric::{graph_spectrum, interlacing_holds};

#[test]
fn graph6_round_trip_random() {
    let mut r = rng(0x6ee6);
    for _ in 0..10_000 {
        let n = r.gen_range(0..=8);
        let p = r.gen_range(0.0..=1.0);
        let g = random_graph(n, p, &mut r);
        assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }
}

#[test]
fn complement_involution_and_union_associativity() {
    let mut r = rng(0xc0de);
    for _ in 0..500 {
        let g = random_graph(r.gen_range(0..=10), 0.4, &mut r);
        assert_eq!(g.complement().complement(), g);
    }
    // associativity up to isomorphism (and here, on the nose)
    let a = random_graph(4, 0.5, &mut r);
    let b = random_graph(3, 0.5, &mut r);
    let c = random_graph(5, 0.5, &mut r);
    let left = a.disjoint_union(&b).unwrap().disjoint_union(&c).unwrap();
    let right = a.disjoint_union(&b.disjoint_union(&c).unwrap()).unwrap();
    assert!(left.isomorphic(&right).unwrap());
}

#[test]
fn canonical_form_agrees_with_all_permutations_oracle_at_6() {
    // pairwise agreement over every labeled graph on 6 vertices: the cert
    // partition must equal the brute-force orbit partition
    let mut cert_to_oracle: HashMap<String, u128> = HashMap::new();
    let mut oracle_to_cert: HashMap<u128, String> = HashMap::new();
    for g in all_labeled_graphs(6) {
        let cert = g.canonical_form().unwrap().into_string();
        let oracle = brute_force_class_id(&g);
        assert_eq!(
            *cert_to_oracle.entry(cert.clone()).or_insert(oracle),
            oracle
        );
        assert_eq!(*oracle_to_cert.entry(oracle).or_insert(cert.clone()), cert);
    }
    assert_eq!(cert_to_oracle.len(), 156);
}

#[test]
fn canonical_form_invariant_under_relabeling() {
    let mut r = rng(0xcafe);
    for _ in 0..300 {
        let n = r.gen_range(1..=10);
        let g = random_graph(n, 0.5, &mut r);
        let perm = random_permutation(n, &mut r);
        assert!(g.isomorphic(&g.relabel(&perm)).unwrap());
    }
}

#[test]
fn enumeration_counts_match_oracle_dedup() {
    // dedup all labeled graphs by the brute-force invariant
    for n in 0..=5 {
        let mut classes: std::collections::BTreeSet<u128> = Default::default();
        for g in all_labeled_graphs(n) {
            classes.insert(brute_force_class_id(&g));
        }
        assert_eq!(
            enumerate_nonisomorphic(n, 1).unwrap().len(),
            classes.len(),
            "count at n={n}"
        );
    }
}

#[test]
fn rank_matches_zero_multiplicity_exhaustive() {
    // rank(A) = n - (multiplicity of 0) for symmetric A; both sides are
    // isomorphism-invariant, so class representatives suffice
    for n in 1..=6 {
        for g in enumerate_nonisomorphic(n, 0).unwrap() {
            let a = IntMatrix::adjacency(&g);
            let p = char_poly(&a);
            assert_eq!(a.rank(), n - inertia(&p).zero, "graph {}", g.to_graph6());
        }
    }
}

#[test]
fn membership_routes_agree_exhaustive() {
    // two independent exact routes: rank(A^2+2A) <= 2 and residual degree <= 2
    for n in 1..=6 {
        for g in enumerate_nonisomorphic(n, 0).unwrap() {
            let rank_route = IntMatrix::e_matrix(&g).rank() <= 2;
            let shape_route = spectrum_shape(&char_poly(&IntMatrix::adjacency(&g)))
                .residual
                .degree()
                <= 2;
            assert_eq!(rank_route, shape_route, "graph {}", g.to_graph6());
        }
    }
}

#[test]
fn shape_reconstruction_is_exact() {
    let mut r = rng(0x5a5a);
    for _ in 0..500 {
        let g = random_graph(r.gen_range(1..=9), 0.5, &mut r);
        let p = char_poly(&IntMatrix::adjacency(&g));
        assert_eq!(spectrum_shape(&p).expand(), p);
    }
}

#[test]
fn exact_vs_numeric_membership_exhaustive_7() {
    // the exact decision matches counting Jacobi eigenvalues outside
    // {-2, 0} at tolerance 1e-6
    for n in 1..=7 {
        for g in enumerate_nonisomorphic(n, 0).unwrap() {
            let spec = graph_spectrum(&g).unwrap();
            let outside = spec
                .values()
                .iter()
                .filter(|&&x| (x - 0.0).abs() > 1e-6 && (x + 2.0).abs() > 1e-6)
                .count();
            let exact = membership(&g).in_h;
            assert_eq!(exact, outside <= 2, "graph {}", g.to_graph6());
        }
    }
}

#[test]
fn interlacing_on_random_induced_subgraphs() {
    let mut r = rng(0x1ace);
    for _ in 0..1000 {
        let n = r.gen_range(2..=10);
        let g = random_graph(n, 0.5, &mut r);
        let m = r.gen_range(1..=n);
        let mut vs: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = r.gen_range(0..=i);
            vs.swap(i, j);
        }
        vs.truncate(m);
        vs.sort_unstable();
        let sub = g.induced_subgraph(&vs).unwrap();
        let host = graph_spectrum(&g).unwrap();
        let small = graph_spectrum(&sub).unwrap();
        assert!(
            interlacing_holds(&host, &small, 1e-9).unwrap(),
            "interlacing failed for {} on {:?}",
            g.to_graph6(),
            vs
        );
    }
}

#[test]
fn spectrum_type_invariants_on_random_graphs() {
    let mut r = rng(0xfeed);
    for _ in 0..500 {
        let g = random_graph(r.gen_range(1..=10), 0.5, &mut r);
        let s = graph_spectrum(&g).unwrap();
        let sum: f64 = s.values().iter().sum();
        let sum_sq: f64 = s.values().iter().map(|x| x * x).sum();
        assert!(sum.abs() < 1e-8);
        assert!((sum_sq - 2.0 * g.edge_count() as f64).abs() < 1e-6);
    }
}

#[test]
fn recognizer_finds_every_instance() {
    for f in instances_up_to(14) {
        let g = f.construct();
        let found = recognize(&g).unwrap();
        assert!(found.contains(&f), "recognize misses {f}");
        assert_eq!(found, equivalent_labels(&f), "labels for {f}");
    }
}

#[test]
fn instances_without_isolated_vertices_are_members() {
    for f in instances_up_to(14) {
        let g = f.construct();
        if g.isolated_count() == 0 {
            let report = membership(&g);
            assert!(report.in_h && report.in_h_prime, "{f} must be a member");
            assert!(report.residual_degree <= 2);
        }
    }
}

#[test]
fn isolated_vertices_do_not_change_membership() {
    let mut r = rng(0xadd0);
    let k1 = Graph::empty(1).unwrap();
    for _ in 0..300 {
        let g = random_graph(r.gen_range(1..=9), 0.4, &mut r);
        let padded = g.disjoint_union(&k1).unwrap();
        assert_eq!(membership(&g).in_h, membership(&padded).in_h);
    }
}

#[test]
fn theorem6_soundness_up_to_14() {
    // every class produced by the rules has exactly equal nonzero keys
    for f in instances_up_to(14) {
        let key = nonzero_key(&f.construct());
        for member in theorem6_class(&f) {
            if member.vertex_count() <= 16 {
                assert_eq!(
                    nonzero_key(&member.construct()),
                    key,
                    "class of {f} contains {member} with a different key"
                );
            }
        }
    }
}

#[test]
fn theorem6_separation_up_to_14() {
    // instances in different classes have different keys, unless they are
    // the same graph under a dual label
    let instances = instances_up_to(14);
    for a in &instances {
        let class_a = theorem6_class(a);
        for b in &instances {
            if class_a.contains(b) {
                continue;
            }
            assert_ne!(
                nonzero_key(&a.construct()),
                nonzero_key(&b.construct()),
                "{a} and {b} share a key but no class"
            );
        }
    }
}

#[test]
fn padded_catalog_partition_matches_theorem6_up_to_9() {
    // among all catalog instances padded to n vertices, equal full spectra
    // occur exactly within rule classes
    for n in 1..=9usize {
        let mut seen: Vec<(String, Vec<String>, spectral_class::CharPoly)> = Vec::new();
        for f in instances_up_to(n) {
            let pad = n - f.vertex_count();
            let padded = f
                .construct()
                .disjoint_union(&Graph::empty(pad).unwrap())
                .unwrap();
            let cert = padded.canonical_form().unwrap().into_string();
            let class: Vec<String> = theorem6_class(&f).iter().map(|m| m.to_string()).collect();
            let poly = char_poly(&IntMatrix::adjacency(&padded));
            seen.push((cert, class, poly));
        }
        for (ca, cla, pa) in &seen {
            for (cb, clb, pb) in &seen {
                if ca == cb {
                    continue; // same graph under two labels
                }
                assert_eq!(
                    pa == pb,
                    cla == clb,
                    "padded partition mismatch at n={n}: {cla:?} vs {clb:?}"
                );
            }
        }
    }
}

#[test]
fn harness_tally_matches_theorem6_prediction() {
    let summary = verify_classification(&VerifyConfig {
        max_n: 7,
        threads: 0,
    })
    .unwrap();
    for row in &summary.rows {
        assert_eq!(
            row.cospectral_pairs,
            predicted_cospectral_pairs(row.n),
            "tally at n={}",
            row.n
        );
    }
}

#[test]
fn h_prime_members_at_5_are_the_four_catalog_graphs() {
    let members = enumerate_h_members(5, 0).unwrap();
    let mut prime_names: Vec<String> = members
        .iter()
        .filter(|g| g.isolated_count() == 0)
        .map(|g| {
            recognize(g)
                .unwrap()
                .first()
                .expect("classified")
                .to_string()
        })
        .collect();
    prime_names.sort();
    assert_eq!(prime_names, vec!["G0(3,2)", "G0(4,1)", "G1", "G2(3,1)"]);
}

#[test]
fn classify_handles_the_petersen_graph() {
    // not a member: spectrum {3, 1^5, -2^4} has six eigenvalues outside
    let report = classify(&petersen(), true);
    assert!(!report.in_h);
    assert_eq!(report.residual_degree, 6);
    assert_eq!(report.n_pos, 6);
    assert!(report
        .forbidden_hits
        .unwrap()
        .iter()
        .any(|h| h.pattern == 'c'));
}
