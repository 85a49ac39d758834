//! The catalog families G0..G12 and CP(k): constructors with a fixed block
//! row order, their closed-form spectra, and a recognizer mapping arbitrary
//! graphs back to catalog instances.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::linalg::CharPoly;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum FamilyId {
    G0,
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
    G10,
    G11,
    G12,
    #[serde(rename = "CP")]
    Cp,
}

impl FamilyId {
    pub const ALL: [FamilyId; 14] = [
        FamilyId::G0,
        FamilyId::G1,
        FamilyId::G2,
        FamilyId::G3,
        FamilyId::G4,
        FamilyId::G5,
        FamilyId::G6,
        FamilyId::G7,
        FamilyId::G8,
        FamilyId::G9,
        FamilyId::G10,
        FamilyId::G11,
        FamilyId::G12,
        FamilyId::Cp,
    ];

    pub fn arity(self) -> usize {
        match self {
            FamilyId::G0 | FamilyId::G2 | FamilyId::G5 | FamilyId::G8 => 2,
            FamilyId::G4 | FamilyId::G6 | FamilyId::G9 | FamilyId::Cp => 1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::G0 => "G0",
            FamilyId::G1 => "G1",
            FamilyId::G2 => "G2",
            FamilyId::G3 => "G3",
            FamilyId::G4 => "G4",
            FamilyId::G5 => "G5",
            FamilyId::G6 => "G6",
            FamilyId::G7 => "G7",
            FamilyId::G8 => "G8",
            FamilyId::G9 => "G9",
            FamilyId::G10 => "G10",
            FamilyId::G11 => "G11",
            FamilyId::G12 => "G12",
            FamilyId::Cp => "CP",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let up = s.to_ascii_uppercase();
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == up)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{id} takes {expected} parameter(s), got {got}")]
    WrongArity {
        id: FamilyId,
        expected: usize,
        got: usize,
    },
    #[error("{id}{params:?} violates the bound {bound}")]
    Constraint {
        id: FamilyId,
        params: Vec<u32>,
        bound: &'static str,
    },
    #[error("{id}{params:?} would have {n} vertices, maximum supported is 64")]
    TooLarge {
        id: FamilyId,
        params: Vec<u32>,
        n: usize,
    },
}

/// One catalog entry: a family identifier plus its integer parameters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct FamilyInstance {
    pub id: FamilyId,
    pub params: Vec<u32>,
}

impl FamilyInstance {
    pub fn new(id: FamilyId, params: &[u32]) -> Result<Self, FamilyError> {
        if params.len() != id.arity() {
            return Err(FamilyError::WrongArity {
                id,
                expected: id.arity(),
                got: params.len(),
            });
        }
        let constraint = |ok: bool, bound: &'static str| {
            if ok {
                Ok(())
            } else {
                Err(FamilyError::Constraint {
                    id,
                    params: params.to_vec(),
                    bound,
                })
            }
        };
        match (id, params) {
            (FamilyId::G0, [l, m]) => constraint(*l >= *m && *m >= 1, "l >= m >= 1")?,
            (FamilyId::G2, [k, m]) => constraint(*k >= 3 && *m >= 1, "k >= 3, m >= 1")?,
            (FamilyId::G4, [k]) => constraint(*k >= 2, "k >= 2")?,
            (FamilyId::G5, [k, l]) => constraint(*k >= *l && *l >= 2, "k >= l >= 2")?,
            (FamilyId::G6, [m]) => constraint(*m >= 3, "m >= 3")?,
            (FamilyId::G8, [k, l]) => {
                constraint(*k >= *l && *l >= 1 && *k >= 2, "k >= l >= 1, k >= 2")?
            }
            (FamilyId::Cp, [k]) => constraint(*k >= 1, "k >= 1")?,
            _ => {}
        }
        let inst = FamilyInstance {
            id,
            params: params.to_vec(),
        };
        if inst.vertex_count() > 64 {
            return Err(FamilyError::TooLarge {
                id,
                params: params.to_vec(),
                n: inst.vertex_count(),
            });
        }
        Ok(inst)
    }

    fn p(&self, i: usize) -> usize {
        self.params[i] as usize
    }

    pub fn vertex_count(&self) -> usize {
        match self.id {
            FamilyId::G0 => self.p(0) + self.p(1),
            FamilyId::G1 => 5,
            FamilyId::G2 => 2 * (self.p(0) - 1) + self.p(1),
            FamilyId::G3 => 10,
            FamilyId::G4 => 5 + 2 * self.p(0),
            FamilyId::G5 => 2 * self.p(0) + 2 * self.p(1),
            FamilyId::G6 => 2 * self.p(0),
            FamilyId::G7 => 15,
            FamilyId::G8 => 2 * self.p(0) + 2 * self.p(1) + 1,
            FamilyId::G9 => 8 + 2 * self.p(0),
            FamilyId::G10 | FamilyId::G11 => 9,
            FamilyId::G12 => 8,
            FamilyId::Cp => 2 * self.p(0),
        }
    }

    /// Builds the instance. The vertex order follows the defining block
    /// matrices, so the block structure stays inspectable.
    pub fn construct(&self) -> Graph {
        match self.id {
            FamilyId::G0 => Graph::complete_bipartite(self.p(0), self.p(1)),
            FamilyId::G1 => Graph::complete_multipartite(&[1, 1, 3]),
            FamilyId::G2 => {
                let mut classes = vec![2usize; self.p(0) - 1];
                classes.push(self.p(1));
                Graph::complete_multipartite(&classes)
            }
            FamilyId::G3 => {
                let star = Graph::complete_bipartite(1, 4).expect("small");
                star.disjoint_union(&star)
            }
            FamilyId::G4 => Graph::complete_bipartite(1, 4)
                .expect("small")
                .disjoint_union(&cocktail_party(self.p(0))),
            FamilyId::G5 => cocktail_party(self.p(0)).disjoint_union(&cocktail_party(self.p(1))),
            FamilyId::G6 => {
                let m = self.p(0);
                Ok(build(2 * m, |i, j| {
                    let (bi, bj) = (i / m, j / m);
                    if bi == bj {
                        true // J - I within each half
                    } else {
                        i % m == j % m // identity block between halves
                    }
                }))
            }
            FamilyId::G7 => Ok(build(15, |i, j| {
                let b = |v: usize| {
                    if v < 7 {
                        0
                    } else if v < 14 {
                        1
                    } else {
                        2
                    }
                };
                match (b(i), b(j)) {
                    (0, 0) | (1, 1) => true,
                    (0, 1) => i != j - 7,
                    (0, 2) => false,
                    (1, 2) => true,
                    _ => unreachable!("i < j"),
                }
            })),
            FamilyId::G8 => {
                let (k, l) = (self.p(0), self.p(1));
                let n = 2 * k + 2 * l + 1;
                Ok(build(n, |i, j| {
                    if j == n - 1 {
                        true // cone vertex joined to everything
                    } else if i < 2 * k && j < 2 * k {
                        i / 2 != j / 2 // CP(k)
                    } else if i >= 2 * k && j >= 2 * k {
                        (i - 2 * k) / 2 != (j - 2 * k) / 2 // CP(l)
                    } else {
                        false
                    }
                }))
            }
            FamilyId::G9 => {
                let k = self.p(0);
                // diagonal blocks of sizes 2, 3, 3, 2k
                let b = |v: usize| match v {
                    0 | 1 => 0,
                    2..=4 => 1,
                    5..=7 => 2,
                    _ => 3,
                };
                Ok(build(8 + 2 * k, |i, j| match (b(i), b(j)) {
                    (0, 0) | (0, 1) | (1, 3) => false,
                    (0, 2) | (0, 3) | (2, 3) => true,
                    (1, 1) | (2, 2) => true,              // J - I (i < j)
                    (1, 2) => i - 2 != j - 5,             // J - I across
                    (3, 3) => (i - 8) / 2 != (j - 8) / 2, // C(k)
                    _ => unreachable!("i < j"),
                }))
            }
            FamilyId::G10 => Graph::from_matrix_strings(&[
                "000011110",
                "000000001",
                "000000001",
                "000011111",
                "100100110",
                "100100111",
                "100111000",
                "100111001",
                "011101010",
            ]),
            FamilyId::G11 => Graph::from_matrix_strings(&[
                "000001100",
                "000001100",
                "000000011",
                "000000011",
                "000001111",
                "110010101",
                "110011010",
                "001110101",
                "001111010",
            ]),
            FamilyId::G12 => Graph::from_matrix_strings(&[
                "00000010", "00000010", "00000001", "00000001", "00000011", "00000011", "11001101",
                "00111110",
            ]),
            FamilyId::Cp => Ok(cocktail_party(self.p(0))),
        }
        .expect("validated instances stay within graph bounds")
    }

    /// The closed-form spectrum of this instance.
    pub fn symbolic_spectrum(&self) -> SymbolicSpectrum {
        let (k, l_or_m) = match self.params.len() {
            2 => (self.p(0) as i64, self.p(1) as i64),
            1 => (self.p(0) as i64, 0),
            _ => (0, 0),
        };
        let (mult_minus2, mult_zero, extra) = match self.id {
            FamilyId::G0 => {
                let (l, m) = (k, l_or_m);
                (
                    0,
                    (l + m - 2) as usize,
                    ExtraEigenvalues::Quadratic { b: 0, c: -(l * m) },
                )
            }
            FamilyId::G1 => (1, 2, ExtraEigenvalues::Values(vec![-1, 3])),
            FamilyId::G2 => {
                let m = l_or_m;
                (
                    (k - 2) as usize,
                    (k + m - 2) as usize,
                    ExtraEigenvalues::Quadratic {
                        b: 2 * (k - 2),
                        c: -2 * m * (k - 1),
                    },
                )
            }
            // two disjoint K_{1,4}: each contributes {2, 0^3, -2}
            FamilyId::G3 => (2, 6, ExtraEigenvalues::Values(vec![2, 2])),
            FamilyId::G4 => (
                k as usize,
                (k + 3) as usize,
                ExtraEigenvalues::Values(vec![2, 2 * k - 2]),
            ),
            FamilyId::G5 => {
                let l = l_or_m;
                (
                    (k + l - 2) as usize,
                    (k + l) as usize,
                    ExtraEigenvalues::Values(vec![2 * l - 2, 2 * k - 2]),
                )
            }
            FamilyId::G6 => {
                let m = k;
                (
                    (m - 1) as usize,
                    (m - 1) as usize,
                    ExtraEigenvalues::Values(vec![m - 2, m]),
                )
            }
            FamilyId::G7 => (7, 6, ExtraEigenvalues::Quadratic { b: 14, c: 21 }),
            FamilyId::G8 => {
                let l = l_or_m;
                (
                    (k + l - 1) as usize,
                    (k + l) as usize,
                    ExtraEigenvalues::Quadratic {
                        b: 2 * (k + l - 1),
                        c: (k + l - 1) * (k + l - 1) - (k - l) * (k - l) - 1,
                    },
                )
            }
            FamilyId::G9 => (
                (k + 3) as usize,
                (k + 3) as usize,
                ExtraEigenvalues::Quadratic {
                    b: 2 * (k + 3),
                    c: 6 * k + 6,
                },
            ),
            FamilyId::G10 => (3, 4, ExtraEigenvalues::Quadratic { b: 6, c: 7 }),
            FamilyId::G11 => (3, 4, ExtraEigenvalues::Values(vec![2, 4])),
            FamilyId::G12 => (2, 4, ExtraEigenvalues::Values(vec![1, 3])),
            FamilyId::Cp => (
                (k - 1) as usize,
                k as usize,
                ExtraEigenvalues::Values(vec![2 * k - 2]),
            ),
        };
        SymbolicSpectrum {
            mult_minus2,
            mult_zero,
            extra,
        }
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if !self.params.is_empty() {
            write!(f, "(")?;
            for (i, p) in self.params.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn build(n: usize, f: impl Fn(usize, usize) -> bool) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if f(i, j) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("constructors stay within bounds")
}

/// CP(k): k classes of two pairwise nonadjacent vertices, everything else
/// joined. CP(1) is the edgeless graph on two vertices.
pub fn cocktail_party(k: usize) -> Graph {
    build(2 * k, |i, j| i / 2 != j / 2)
}

/// The remaining eigenvalues after the -2 and 0 parts: either exact integer
/// values, or the two real roots of a monic quadratic x^2 - b x + c.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum ExtraEigenvalues {
    Values(Vec<i64>),
    Quadratic { b: i64, c: i64 },
}

/// Closed-form spectrum of a catalog instance: multiplicities of -2 and 0
/// plus the exceptional eigenvalues.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SymbolicSpectrum {
    pub mult_minus2: usize,
    pub mult_zero: usize,
    pub extra: ExtraEigenvalues,
}

impl SymbolicSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        let extras = match &self.extra {
            ExtraEigenvalues::Values(v) => v.len(),
            ExtraEigenvalues::Quadratic { .. } => 2,
        };
        self.mult_minus2 + self.mult_zero + extras
    }

    /// Expands to the exact characteristic polynomial.
    pub fn expand(&self) -> CharPoly {
        let mut p = match &self.extra {
            ExtraEigenvalues::Values(vals) => {
                let mut p = CharPoly::one();
                for &v in vals {
                    p = p.mul(&CharPoly::linear(v));
                }
                p
            }
            ExtraEigenvalues::Quadratic { b, c } => CharPoly::quadratic(*b, *c),
        };
        for _ in 0..self.mult_minus2 {
            p = p.mul(&CharPoly::linear(-2));
        }
        let mut coeffs = vec![BigInt::zero(); self.mult_zero];
        coeffs.extend_from_slice(p.coeffs());
        CharPoly::from_coeffs(coeffs)
    }

    /// The exceptional eigenvalues as floats, ascending.
    pub fn extra_values_f64(&self) -> Vec<f64> {
        match &self.extra {
            ExtraEigenvalues::Values(v) => v.iter().map(|&x| x as f64).collect(),
            ExtraEigenvalues::Quadratic { b, c } => {
                let h = *b as f64 / 2.0;
                let d = (h * h - *c as f64).sqrt();
                vec![h - d, h + d]
            }
        }
    }

    /// All eigenvalues as floats, descending, with multiplicity.
    pub fn all_values_f64(&self) -> Vec<f64> {
        let mut vals = self.extra_values_f64();
        vals.extend(std::iter::repeat_n(0.0, self.mult_zero));
        vals.extend(std::iter::repeat_n(-2.0, self.mult_minus2));
        vals.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
        vals
    }
}

impl fmt::Display for SymbolicSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.mult_minus2 > 0 {
            parts.push(if self.mult_minus2 == 1 {
                "-2".into()
            } else {
                format!("-2^{}", self.mult_minus2)
            });
        }
        if self.mult_zero > 0 {
            parts.push(if self.mult_zero == 1 {
                "0".into()
            } else {
                format!("0^{}", self.mult_zero)
            });
        }
        match &self.extra {
            ExtraEigenvalues::Values(vals) => {
                for &v in vals {
                    parts.push(v.to_string());
                }
            }
            ExtraEigenvalues::Quadratic { b, c } => {
                let h = b / 2; // every catalog quadratic has even b
                let disc = h * h - c;
                let (s, d) = extract_square(disc);
                if d == 1 {
                    parts.push((h - s).to_string());
                    parts.push((h + s).to_string());
                } else {
                    let radical = if s == 1 {
                        format!("√{d}")
                    } else {
                        format!("{s}√{d}")
                    };
                    if h == 0 {
                        parts.push(format!("±{radical}"));
                    } else {
                        parts.push(format!("{h}±{radical}"));
                    }
                }
            }
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Writes disc = s^2 * d with d squarefree.
fn extract_square(disc: i64) -> (i64, i64) {
    assert!(disc >= 0, "catalog quadratics have real roots");
    let mut s = 1i64;
    let mut d = disc;
    let mut p = 2i64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, d)
}

/// All catalog instances with exactly `n` vertices, in (id, params) order.
pub fn catalog_instances(n: usize) -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    let mut push = |id: FamilyId, params: &[u32]| {
        if let Ok(inst) = FamilyInstance::new(id, params) {
            debug_assert_eq!(inst.vertex_count(), n);
            out.push(inst);
        }
    };
    for m in 1..=(n / 2) {
        push(FamilyId::G0, &[(n - m) as u32, m as u32]);
    }
    if n == 5 {
        push(FamilyId::G1, &[]);
    }
    for k in 3..=n.div_ceil(2) {
        let m = n as i64 - 2 * (k as i64 - 1);
        if m >= 1 {
            push(FamilyId::G2, &[k as u32, m as u32]);
        }
    }
    if n == 10 {
        push(FamilyId::G3, &[]);
    }
    if n >= 9 && n % 2 == 1 {
        push(FamilyId::G4, &[((n - 5) / 2) as u32]);
    }
    if n % 2 == 0 {
        for l in 2..=(n / 4) {
            push(FamilyId::G5, &[(n / 2 - l) as u32, l as u32]);
        }
        push(FamilyId::G6, &[(n / 2) as u32]);
    }
    if n == 15 {
        push(FamilyId::G7, &[]);
    }
    if n % 2 == 1 && n >= 5 {
        for l in 1..=((n - 1) / 4) {
            let k = (n - 1) / 2 - l;
            push(FamilyId::G8, &[k as u32, l as u32]);
        }
    }
    if n >= 8 && n % 2 == 0 {
        push(FamilyId::G9, &[((n - 8) / 2) as u32]);
    }
    if n == 9 {
        push(FamilyId::G10, &[]);
        push(FamilyId::G11, &[]);
    }
    if n == 8 {
        push(FamilyId::G12, &[]);
    }
    if n % 2 == 0 && n >= 2 {
        push(FamilyId::Cp, &[(n / 2) as u32]);
    }
    out
}

/// All (id, params) whose construction is isomorphic to `g` (n <= 16).
pub fn recognize(g: &Graph) -> Result<Vec<FamilyInstance>, GraphError> {
    let cert = g.canonical_form()?;
    let mut out = Vec::new();
    for inst in catalog_instances(g.n()) {
        if inst.construct().canonical_form()? == cert {
            out.push(inst);
        }
    }
    Ok(out)
}

/// Catalog labels that construct the same graph as `f` (including `f`):
/// CP(2) = G0(2,2) and CP(k) = G2(k,2) for k >= 3.
pub fn equivalent_labels(f: &FamilyInstance) -> Vec<FamilyInstance> {
    let mut out = vec![f.clone()];
    let mut add = |id, params: &[u32]| {
        if let Ok(inst) = FamilyInstance::new(id, params) {
            out.push(inst);
        }
    };
    match (f.id, f.params.as_slice()) {
        (FamilyId::Cp, [2]) => add(FamilyId::G0, &[2, 2]),
        (FamilyId::Cp, [k]) if *k >= 3 => add(FamilyId::G2, &[*k, 2]),
        (FamilyId::G0, [2, 2]) => add(FamilyId::Cp, &[2]),
        (FamilyId::G2, [k, 2]) => add(FamilyId::Cp, &[*k]),
        _ => {}
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{char_poly, IntMatrix};

    fn inst(id: FamilyId, params: &[u32]) -> FamilyInstance {
        FamilyInstance::new(id, params).unwrap()
    }

    #[test]
    fn parameter_constraints() {
        assert!(FamilyInstance::new(FamilyId::G0, &[1, 2]).is_err());
        assert!(FamilyInstance::new(FamilyId::G2, &[2, 1]).is_err());
        assert!(FamilyInstance::new(FamilyId::G6, &[2]).is_err());
        assert!(FamilyInstance::new(FamilyId::G8, &[1, 1]).is_err());
        assert!(FamilyInstance::new(FamilyId::G9, &[0]).is_ok());
        assert!(FamilyInstance::new(FamilyId::G7, &[3]).is_err());
        assert!(matches!(
            FamilyInstance::new(FamilyId::Cp, &[40]),
            Err(FamilyError::TooLarge { .. })
        ));
    }

    #[test]
    fn cp2_is_c4() {
        let cp2 = inst(FamilyId::Cp, &[2]).construct();
        assert!(cp2.isomorphic(&Graph::cycle(4).unwrap()).unwrap());
    }

    #[test]
    fn g6_matrix_layout() {
        // [J-I, I; I, J-I] at m = 3
        let g = inst(FamilyId::G6, &[3]).construct();
        assert_eq!(g.n(), 6);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.has_edge(i, j), i != j);
                assert_eq!(g.has_edge(i + 3, j + 3), i != j);
                if i != j {
                    assert!(!g.has_edge(i, j + 3));
                }
            }
            assert!(g.has_edge(i, i + 3));
        }
    }

    #[test]
    fn g9_zero_parameter_block_rows_vanish() {
        let g = inst(FamilyId::G9, &[0]).construct();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 18);
    }

    #[test]
    fn g3_is_two_stars() {
        let g3 = inst(FamilyId::G3, &[]).construct();
        let star = Graph::complete_bipartite(1, 4).unwrap();
        assert!(g3.isomorphic(&star.disjoint_union(&star).unwrap()).unwrap());
    }

    #[test]
    fn spectra_expand_to_char_polys() {
        // every fixed instance and a spread of parameterized ones
        let instances = vec![
            inst(FamilyId::G0, &[3, 3]),
            inst(FamilyId::G0, &[4, 1]),
            inst(FamilyId::G1, &[]),
            inst(FamilyId::G2, &[3, 3]),
            inst(FamilyId::G2, &[4, 1]),
            inst(FamilyId::G3, &[]),
            inst(FamilyId::G4, &[2]),
            inst(FamilyId::G5, &[3, 2]),
            inst(FamilyId::G6, &[3]),
            inst(FamilyId::G7, &[]),
            inst(FamilyId::G8, &[2, 1]),
            inst(FamilyId::G8, &[2, 2]),
            inst(FamilyId::G9, &[0]),
            inst(FamilyId::G9, &[2]),
            inst(FamilyId::G10, &[]),
            inst(FamilyId::G11, &[]),
            inst(FamilyId::G12, &[]),
            inst(FamilyId::Cp, &[1]),
            inst(FamilyId::Cp, &[3]),
        ];
        for f in instances {
            let g = f.construct();
            let sym = f.symbolic_spectrum();
            assert_eq!(sym.total_multiplicity(), g.n(), "multiplicity for {f}");
            assert_eq!(
                sym.expand(),
                char_poly(&IntMatrix::adjacency(&g)),
                "spectrum identity for {f}"
            );
        }
    }

    #[test]
    fn symbolic_spectrum_closed_forms() {
        // G2(3,3): residual roots 1 +- sqrt(13)
        let s = inst(FamilyId::G2, &[3, 3]).symbolic_spectrum();
        assert_eq!(s.mult_minus2, 1);
        assert_eq!(s.mult_zero, 4);
        assert_eq!(s.extra, ExtraEigenvalues::Quadratic { b: 2, c: -12 });

        // G8(2,1): roots 2 +- sqrt(2)
        let s = inst(FamilyId::G8, &[2, 1]).symbolic_spectrum();
        assert_eq!(s.mult_minus2, 2);
        assert_eq!(s.mult_zero, 3);
        assert_eq!(s.extra, ExtraEigenvalues::Quadratic { b: 4, c: 2 });

        // G5(2,2): extras {2, 2}
        let s = inst(FamilyId::G5, &[2, 2]).symbolic_spectrum();
        assert_eq!(s.mult_minus2, 2);
        assert_eq!(s.mult_zero, 4);
        assert_eq!(s.extra, ExtraEigenvalues::Values(vec![2, 2]));
    }

    #[test]
    fn display_spectra() {
        assert_eq!(
            inst(FamilyId::G6, &[3]).symbolic_spectrum().to_string(),
            "{-2^2, 0^2, 1, 3}"
        );
        assert_eq!(
            inst(FamilyId::G10, &[]).symbolic_spectrum().to_string(),
            "{-2^3, 0^4, 3±√2}"
        );
        assert_eq!(
            inst(FamilyId::G7, &[]).symbolic_spectrum().to_string(),
            "{-2^7, 0^6, 7±2√7}"
        );
    }

    #[test]
    fn catalog_counts_and_examples() {
        let at5: Vec<String> = catalog_instances(5).iter().map(|f| f.to_string()).collect();
        assert_eq!(at5, vec!["G0(4,1)", "G0(3,2)", "G1", "G2(3,1)"]);

        let at2: Vec<String> = catalog_instances(2).iter().map(|f| f.to_string()).collect();
        assert_eq!(at2, vec!["G0(1,1)", "CP(1)"]);

        let at9: Vec<String> = catalog_instances(9).iter().map(|f| f.to_string()).collect();
        assert!(at9.contains(&"G10".to_string()));
        assert!(at9.contains(&"G11".to_string()));
        assert!(at9.contains(&"G8(2,2)".to_string()));
        assert!(at9.contains(&"G0(8,1)".to_string()));
        assert!(!at9.contains(&"G12".to_string()));
    }

    #[test]
    fn recognizer_round_trips() {
        let c4 = Graph::cycle(4).unwrap();
        let found: Vec<String> = recognize(&c4)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(found, vec!["G0(2,2)", "CP(2)"]);

        let g11 = inst(FamilyId::G11, &[]).construct();
        let found: Vec<String> = recognize(&g11)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(found, vec!["G11"]);

        let c5 = Graph::cycle(5).unwrap();
        assert!(recognize(&c5).unwrap().is_empty());

        // overlapping labels are all reported
        let cp3 = inst(FamilyId::Cp, &[3]).construct();
        let found: Vec<String> = recognize(&cp3)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(found, vec!["G2(3,2)", "CP(3)"]);
    }

    #[test]
    fn g8_22_and_g11_cospectral_nonisomorphic() {
        let g8 = inst(FamilyId::G8, &[2, 2]).construct();
        let g11 = inst(FamilyId::G11, &[]).construct();
        assert_eq!(
            char_poly(&IntMatrix::adjacency(&g8)),
            char_poly(&IntMatrix::adjacency(&g11))
        );
        assert!(!g8.isomorphic(&g11).unwrap());
    }

    #[test]
    fn equivalent_label_table() {
        let f = inst(FamilyId::Cp, &[4]);
        let eq: Vec<String> = equivalent_labels(&f)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(eq, vec!["G2(4,2)", "CP(4)"]);
        let f = inst(FamilyId::G0, &[2, 2]);
        let eq: Vec<String> = equivalent_labels(&f)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(eq, vec!["G0(2,2)", "CP(2)"]);
        let f = inst(FamilyId::G7, &[]);
        assert_eq!(equivalent_labels(&f), vec![f]);
    }
}
