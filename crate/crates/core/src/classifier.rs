//! Membership decisions and the full structural report: spectrum shape,
//! positive-eigenvalue count, independence number, forbidden induced
//! subgraphs and almost-equal column witnesses.
//!
//! Membership in the class (at most two eigenvalues outside {-2, 0}) is
//! decided by the exact integer rank of E = A(A+2I), never by floating
//! point.

use std::sync::OnceLock;

use num_traits::Signed;
use serde::Serialize;

use crate::families::{recognize, FamilyInstance};
use crate::graph::{Graph, GraphError};
use crate::linalg::{char_poly, inertia, spectrum_shape, IntMatrix, SpectrumShape};

/// Independence-number computations branch over subsets; this keeps them fast.
pub const COCLIQUE_MAX_VERTICES: usize = 32;

/// Full verdict for one graph.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub graph6: String,
    pub n: usize,
    /// at most two eigenvalues outside {-2, 0}, i.e. rank(A^2 + 2A) <= 2
    pub in_h: bool,
    /// number of eigenvalues outside {-2, 0}
    pub residual_degree: usize,
    pub isolated_count: usize,
    /// in_h and no isolated vertices
    pub in_h_prime: bool,
    pub connected: bool,
    pub n_pos: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_matches: Option<Vec<FamilyInstance>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_hits: Option<Vec<ForbiddenHit>>,
    pub shape: SpectrumShape,
}

#[derive(Clone, Debug, Serialize)]
pub struct ForbiddenHit {
    /// pattern letter a..m
    pub pattern: char,
    /// image of the pattern's vertices, in pattern-vertex order
    pub vertices: Vec<usize>,
}

/// Classifies `g`; `scan_forbidden` additionally runs the induced-subgraph
/// scan. The independence number and family matches are filled for n <= 16.
pub fn classify(g: &Graph, scan_forbidden: bool) -> ClassificationReport {
    let p = char_poly(&IntMatrix::adjacency(g));
    let shape = spectrum_shape(&p);
    let rank_e = IntMatrix::e_matrix(g).rank();
    let in_h = rank_e <= 2;
    debug_assert_eq!(in_h, shape.residual.degree() <= 2);
    let isolated_count = g.isolated_count();
    let (alpha, alpha_witness) = if g.n() <= 16 {
        let (a, w) = max_coclique(g).expect("within coclique bound");
        (Some(a), Some(w))
    } else {
        (None, None)
    };
    let family_matches = if g.n() <= 16 {
        Some(recognize(g).expect("within isomorphism bound"))
    } else {
        None
    };
    ClassificationReport {
        graph6: g.to_graph6(),
        n: g.n(),
        in_h,
        residual_degree: shape.residual.degree(),
        isolated_count,
        in_h_prime: in_h && isolated_count == 0,
        connected: g.is_connected(),
        n_pos: inertia(&p).pos,
        alpha,
        alpha_witness,
        family_matches,
        forbidden_hits: scan_forbidden.then(|| forbidden_scan(g)),
        shape,
    }
}

/// Shorthand for `classify` without the forbidden-subgraph scan.
pub fn membership(g: &Graph) -> ClassificationReport {
    classify(g, false)
}

/// Exact count of positive adjacency eigenvalues.
pub fn positive_eigenvalue_count(g: &Graph) -> usize {
    inertia(&char_poly(&IntMatrix::adjacency(g))).pos
}

/// Exact maximum coclique by branch and bound with a greedy clique-cover
/// bound. Among maximum cocliques the witness maximizes the number of
/// outgoing edges, then is lexicographically smallest.
pub fn max_coclique(g: &Graph) -> Result<(usize, Vec<usize>), GraphError> {
    if g.n() > COCLIQUE_MAX_VERTICES {
        return Err(GraphError::SizeBound {
            limit: COCLIQUE_MAX_VERTICES,
            n: g.n(),
        });
    }
    let n = g.n();
    let full: u64 = if n == 0 { 0 } else { (1 << n) - 1 };
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    branch(g, 0, 0, full, &mut best);
    let (size, _, witness) = best.expect("empty coclique always evaluated");
    Ok((size, witness))
}

fn branch(
    g: &Graph,
    current: u64,
    size: usize,
    candidates: u64,
    best: &mut Option<(usize, usize, Vec<usize>)>,
) {
    if candidates == 0 {
        let verts: Vec<usize> = (0..g.n()).filter(|&v| current >> v & 1 != 0).collect();
        let out_edges: usize = verts.iter().map(|&v| g.degree(v)).sum();
        let better = match best {
            None => true,
            Some((bs, bo, bw)) => {
                (size, out_edges) > (*bs, *bo) || (size, out_edges) == (*bs, *bo) && verts < *bw
            }
        };
        if better {
            *best = Some((size, out_edges, verts));
        }
        return;
    }
    if let Some((bs, _, _)) = best {
        if size + clique_cover_bound(g, candidates) < *bs {
            return;
        }
    }
    // branch on the candidate with the most candidate neighbors
    let mut v = 0;
    let mut vdeg = usize::MAX;
    let mut c = candidates;
    while c != 0 {
        let u = c.trailing_zeros() as usize;
        c &= c - 1;
        let d = (g.neighbors(u) & candidates).count_ones() as usize;
        if vdeg == usize::MAX || d > vdeg {
            v = u;
            vdeg = d;
        }
    }
    // include v
    branch(
        g,
        current | 1 << v,
        size + 1,
        candidates & !g.neighbors(v) & !(1 << v),
        best,
    );
    // exclude v
    branch(g, current, size, candidates & !(1 << v), best);
}

/// Upper bound for the coclique number of the candidate set: size of a
/// greedy partition into cliques.
fn clique_cover_bound(g: &Graph, mut candidates: u64) -> usize {
    let mut cliques = 0;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let mut clique = 1u64 << v;
        let mut common = g.neighbors(v) & candidates;
        while common != 0 {
            let u = common.trailing_zeros() as usize;
            clique |= 1 << u;
            common &= g.neighbors(u);
        }
        candidates &= !clique;
        cliques += 1;
    }
    cliques
}

/// The thirteen forbidden induced subgraphs (a)-(m) for connected members
/// with two positive eigenvalues. Each has smallest eigenvalue below -2 or
/// at least three positive eigenvalues.
pub struct ForbiddenPattern {
    pub id: char,
    pub graph: Graph,
}

pub fn forbidden_patterns() -> &'static [ForbiddenPattern] {
    static PATTERNS: OnceLock<Vec<ForbiddenPattern>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        let mat = |id: char, rows: &[&str]| ForbiddenPattern {
            id,
            graph: Graph::from_matrix_strings(rows).expect("pattern matrices are valid"),
        };
        vec![
            ForbiddenPattern {
                id: 'a',
                graph: Graph::complete_bipartite(1, 5).expect("small"),
            },
            ForbiddenPattern {
                id: 'b',
                graph: Graph::complete_bipartite(2, 3).expect("small"),
            },
            ForbiddenPattern {
                id: 'c',
                graph: Graph::cycle(5).expect("small"),
            },
            mat('d', &["00111", "00111", "11000", "11001", "11010"]),
            mat('e', &["00011", "00011", "00001", "11000", "11100"]),
            mat(
                'f',
                &["000111", "000111", "000111", "111011", "111101", "111110"],
            ),
            mat(
                'g',
                &["000111", "000011", "000011", "100011", "111101", "111110"],
            ),
            mat(
                'h',
                &["000111", "000011", "000011", "100000", "111001", "111010"],
            ),
            mat(
                'i',
                &["000011", "000011", "000011", "000011", "111101", "111110"],
            ),
            mat(
                'j',
                &["000011", "000011", "000011", "000001", "111001", "111110"],
            ),
            mat(
                'k',
                &["000011", "000001", "000001", "000001", "100001", "111110"],
            ),
            mat(
                'l',
                &["000011", "000001", "000001", "000001", "100000", "111100"],
            ),
            mat(
                'm',
                &["000011", "000011", "000001", "000001", "110000", "111100"],
            ),
        ]
    })
}

/// Finds each pattern as an induced subgraph, reporting one witness per
/// pattern. Existence is all classification needs.
pub fn forbidden_scan(g: &Graph) -> Vec<ForbiddenHit> {
    forbidden_patterns()
        .iter()
        .filter_map(|p| {
            find_induced(g, &p.graph).map(|vertices| ForbiddenHit {
                pattern: p.id,
                vertices,
            })
        })
        .collect()
}

/// Backtracking search for an induced embedding of `pattern` into `g`.
/// Returns the image in pattern-vertex order.
pub fn find_induced(g: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let pn = pattern.n();
    if pn > g.n() {
        return None;
    }
    // order pattern vertices so each one (after the first) touches a
    // previously placed vertex where possible, starting from max degree
    let mut order: Vec<usize> = Vec::with_capacity(pn);
    let mut placed = 0u64;
    while order.len() < pn {
        let next = (0..pn)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (pattern.neighbors(v) & placed).count_ones(),
                    pattern.degree(v),
                )
            })
            .expect("vertices remain");
        order.push(next);
        placed |= 1 << next;
    }
    let mut image = vec![usize::MAX; pn];
    let mut used = 0u64;
    fn assign(
        g: &Graph,
        pattern: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let pu = order[depth];
        for gv in 0..g.n() {
            if *used >> gv & 1 != 0 || g.degree(gv) < pattern.degree(pu) {
                continue;
            }
            let compatible = order[..depth]
                .iter()
                .all(|&pv| pattern.has_edge(pu, pv) == g.has_edge(gv, image[pv]));
            if !compatible {
                continue;
            }
            image[pu] = gv;
            *used |= 1 << gv;
            if assign(g, pattern, order, depth + 1, image, used) {
                return true;
            }
            *used &= !(1 << gv);
            image[pu] = usize::MAX;
        }
        false
    }
    if assign(g, pattern, &order, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

/// All pairs (i, j) whose columns of A+I are equal, or have different
/// weights and differ in at most two positions.
pub fn almost_equal_columns(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let col = |v: usize| g.neighbors(v) | 1 << v;
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (ci, cj) = (col(i), col(j));
            let equal = ci == cj;
            let almost = ci.count_ones() != cj.count_ones() && (ci ^ cj).count_ones() <= 2;
            if equal || almost {
                out.push((i, j));
            }
        }
    }
    out
}

/// True iff rank(A^2 + 2A) = 2 and its char poly is x^{n-2} (x^2 - p x + q)
/// with p, q > 0 (so the two nonzero eigenvalues are positive and E is
/// positive semi-definite).
pub fn psd_rank2_check(g: &Graph) -> bool {
    let e = IntMatrix::e_matrix(g);
    if e.rank() != 2 {
        return false;
    }
    let p = char_poly(&e);
    let n = g.n();
    let z = p.zero_root_multiplicity();
    if z != n - 2 {
        return false;
    }
    let residual = p.divide_out_x(z);
    // residual = x^2 + c1 x + c0 with p = -c1 and q = c0
    residual.coeffs()[1].is_negative() && residual.coeffs()[0].is_positive()
}
