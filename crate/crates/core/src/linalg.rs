//! Exact integer linear algebra: characteristic polynomials via the
//! Faddeev-LeVerrier recurrence, rank via Bareiss fraction-free elimination,
//! inertia via Descartes' rule (exact for the real-rooted polynomials of
//! symmetric matrices), and spectrum-shape factoring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

/// Dense symmetric integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = BigInt::from(f(i, j));
            }
        }
        m
    }

    /// 0/1 adjacency matrix of `g`.
    pub fn adjacency(g: &Graph) -> Self {
        IntMatrix::from_fn(g.n(), |i, j| g.has_edge(i, j) as i64)
    }

    /// E = A(A+2I) = A^2 + 2A for the adjacency matrix A of `g`.
    pub fn e_matrix(g: &Graph) -> Self {
        let a = IntMatrix::adjacency(g);
        let mut e = a.mul(&a);
        for i in 0..g.n() {
            for j in 0..g.n() {
                let t = &e.entries[i * g.n() + j] + 2 * &a.entries[i * g.n() + j];
                e.entries[i * g.n() + j] = t;
            }
        }
        e
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &out.entries[i * n + j] + a * other.get(k, j);
                    out.entries[i * n + j] = t;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact rank over the rationals, by Bareiss fraction-free elimination
    /// with full pivoting (first nonzero scan, row/column swaps). All
    /// divisions are exact; no tolerances anywhere.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut prev = BigInt::one();
        let mut r = 0usize;
        for k in 0..n {
            // first nonzero in the trailing submatrix, scanning row-major
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i * n + j].is_zero());
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            if pi != k {
                for j in 0..n {
                    a.swap(k * n + j, pi * n + j);
                }
            }
            if pj != k {
                for i in 0..n {
                    a.swap(i * n + k, i * n + pj);
                }
            }
            r += 1;
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    a[i * n + j] = q;
                }
            }
            for i in (k + 1)..n {
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        r
    }
}

/// Integer polynomial with ascending coefficients `c_0..c_d`; produced monic
/// by `char_poly` and by the symbolic-spectrum expansions.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        CharPoly { coeffs }
    }

    pub fn one() -> Self {
        CharPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// x - r
    pub fn linear(root: i64) -> Self {
        CharPoly {
            coeffs: vec![BigInt::from(-root), BigInt::one()],
        }
    }

    /// x^2 - b x + c
    pub fn quadratic(b: i64, c: i64) -> Self {
        CharPoly {
            coeffs: vec![BigInt::from(c), BigInt::from(-b), BigInt::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = &out[i + j] + a * b;
                out[i + j] = t;
            }
        }
        CharPoly::from_coeffs(out)
    }

    /// Multiplicity of 0 as a root: index of the lowest nonzero coefficient.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len().saturating_sub(1))
    }

    /// Quotient by x^k (requires the k lowest coefficients to vanish).
    pub fn divide_out_x(&self, k: usize) -> CharPoly {
        assert!(self.coeffs[..k].iter().all(|c| c.is_zero()));
        CharPoly::from_coeffs(self.coeffs[k..].to_vec())
    }

    /// Synthetic division by (x - r); None if r is not a root.
    pub fn divide_out_root(&self, r: i64) -> Option<CharPoly> {
        if self.degree() == 0 {
            return None;
        }
        let r = BigInt::from(r);
        let d = self.degree();
        let mut q = vec![BigInt::zero(); d];
        q[d - 1] = self.coeffs[d].clone();
        for k in (1..d).rev() {
            q[k - 1] = &self.coeffs[k] + &r * &q[k];
        }
        let rem = &self.coeffs[0] + &r * &q[0];
        if rem.is_zero() {
            Some(CharPoly::from_coeffs(q))
        } else {
            None
        }
    }

    /// p(x + s), computed by Horner over polynomials.
    pub fn translate(&self, s: i64) -> CharPoly {
        let s = BigInt::from(s);
        let mut acc: Vec<BigInt> = vec![];
        for c in self.coeffs.iter().rev() {
            // acc = acc * (x + s) + c
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (k, a) in acc.iter().enumerate() {
                next[k + 1] += a;
                let t = &next[k] + a * &s;
                next[k] = t;
            }
            if next.is_empty() {
                next.push(BigInt::zero());
            }
            next[0] += c;
            acc = next;
        }
        CharPoly::from_coeffs(acc)
    }

    /// Long division by a monic divisor; returns (quotient, remainder).
    pub fn div_rem_monic(&self, divisor: &CharPoly) -> (CharPoly, CharPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree();
        if self.degree() < dd {
            return (CharPoly::from_coeffs(vec![BigInt::zero()]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let qd = self.degree() - dd;
        let mut quot = vec![BigInt::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let factor = rem[k + dd].clone();
            if factor.is_zero() {
                continue;
            }
            quot[k] = factor.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let t = &rem[k + i] - &factor * dc;
                rem[k + i] = t;
            }
        }
        while rem.len() > 1 && rem.last().unwrap().is_zero() {
            rem.pop();
        }
        (CharPoly::from_coeffs(quot), CharPoly::from_coeffs(rem))
    }

    pub fn is_divisible_by(&self, divisor: &CharPoly) -> bool {
        let (_, rem) = self.div_rem_monic(divisor);
        rem.coeffs.len() == 1 && rem.coeffs[0].is_zero()
    }

    /// Number of roots strictly below `r` (exact; requires all roots real).
    pub fn roots_below(&self, r: i64) -> usize {
        inertia(&self.translate(r)).neg
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            wrote = true;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// Eigenvalue sign counts of a symmetric matrix, read off its characteristic
/// polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Inertia {
    pub pos: usize,
    pub zero: usize,
    pub neg: usize,
}

/// char-poly factorization x^z (x+2)^t q(x) with q(0) != 0, q(-2) != 0.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SpectrumShape {
    pub mult_minus2: usize,
    pub mult_zero: usize,
    pub residual: CharPoly,
}

impl SpectrumShape {
    /// Rebuilds the original polynomial exactly.
    pub fn expand(&self) -> CharPoly {
        let mut p = self.residual.clone();
        for _ in 0..self.mult_minus2 {
            p = p.mul(&CharPoly::linear(-2));
        }
        let mut coeffs = vec![BigInt::zero(); self.mult_zero];
        coeffs.extend_from_slice(p.coeffs());
        CharPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for SpectrumShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult_zero > 0 {
            write!(f, "x^{} ", self.mult_zero)?;
        }
        if self.mult_minus2 > 0 {
            write!(f, "(x+2)^{} ", self.mult_minus2)?;
        }
        write!(f, "({})", self.residual)
    }
}

/// Exact characteristic polynomial det(xI - m) by the Faddeev-LeVerrier
/// recurrence. The recurrence's divisions are exact over the integers; a
/// nonzero remainder indicates an internal bug and panics.
pub fn char_poly(m: &IntMatrix) -> CharPoly {
    let n = m.order();
    assert!(n <= 64, "char_poly supports order <= 64, got {n}");
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&mk);
        let (c, rem) = (-am.trace()).div_rem(&BigInt::from(k as i64));
        assert!(
            rem.is_zero(),
            "Faddeev-LeVerrier trace division left a remainder"
        );
        coeffs[n - k] = c.clone();
        mk = am;
        for i in 0..n {
            let t = mk.get(i, i) + &c;
            mk.set(i, i, t);
        }
    }
    CharPoly::from_coeffs(coeffs)
}

/// Eigenvalue sign counts from a real-rooted polynomial: the zero count is
/// the multiplicity of the root 0, and Descartes' rule gives the positive
/// count exactly because every root is real.
pub fn inertia(p: &CharPoly) -> Inertia {
    let zero = p.zero_root_multiplicity();
    let stripped = &p.coeffs()[zero..];
    let mut pos = 0usize;
    let mut last_sign = 0i8;
    for c in stripped {
        if c.is_zero() {
            continue;
        }
        let s = if c.is_negative() { -1i8 } else { 1i8 };
        if last_sign != 0 && s != last_sign {
            pos += 1;
        }
        last_sign = s;
    }
    let deg = p.degree();
    Inertia {
        pos,
        zero,
        neg: deg - pos - zero,
    }
}

/// Factors out the maximal powers of x and (x+2) by exact synthetic
/// division, leaving the residual of the eigenvalues outside {0, -2}.
pub fn spectrum_shape(p: &CharPoly) -> SpectrumShape {
    let z = p.zero_root_multiplicity();
    let mut q = p.divide_out_x(z);
    let mut t = 0usize;
    while let Some(next) = q.divide_out_root(-2) {
        q = next;
        t += 1;
    }
    SpectrumShape {
        mult_minus2: t,
        mult_zero: z,
        residual: q,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("cells do not partition the vertex set")]
    NotAPartition,
    #[error(
        "partition is not equitable: rows of cell {cell} have unequal sums against cell {against}"
    )]
    NotEquitable { cell: usize, against: usize },
}

/// Quotient matrix of `g` with respect to an equitable partition: entry
/// (i, j) is the common number of neighbors in cell j of a vertex of cell i.
pub fn quotient_matrix(g: &Graph, partition: &[Vec<usize>]) -> Result<IntMatrix, QuotientError> {
    let n = g.n();
    let mut seen = vec![false; n];
    for cell in partition {
        for &v in cell {
            if v >= n || seen[v] {
                return Err(QuotientError::NotAPartition);
            }
            seen[v] = true;
        }
    }
    if !seen.iter().all(|&s| s) || partition.iter().any(|c| c.is_empty()) {
        return Err(QuotientError::NotAPartition);
    }
    let k = partition.len();
    let mut q = IntMatrix::zero(k);
    for (i, cell_i) in partition.iter().enumerate() {
        for (j, cell_j) in partition.iter().enumerate() {
            let mut counts = cell_i
                .iter()
                .map(|&v| cell_j.iter().filter(|&&w| g.has_edge(v, w)).count());
            let first = counts.next().expect("cells are nonempty");
            if counts.any(|c| c != first) {
                return Err(QuotientError::NotEquitable {
                    cell: i,
                    against: j,
                });
            }
            q.set(i, j, BigInt::from(first as i64));
        }
    }
    Ok(q)
}
