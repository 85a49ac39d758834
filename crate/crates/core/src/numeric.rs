//! Floating-point symmetric eigensolver (cyclic Jacobi) and the eigenvalue
//! interlacing check. Everything exact lives in `linalg`; this module only
//! provides human-readable spectra and tolerance-based inequality checks.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::IntMatrix;

/// Default comparison tolerance. Integer matrices of norm <= 64 keep the
/// Jacobi error far below this.
pub const DEFAULT_TOL: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum NumericError {
    #[error("matrix of order {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error("input matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Jacobi sweep limit reached; off-diagonal norm {0:e} not below threshold")]
    NonConvergence(f64),
    #[error("submatrix spectrum has {sub} values, larger than the host's {host}")]
    OrderMismatch { host: usize, sub: usize },
}

/// Eigenvalues of a symmetric matrix, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }
}

/// Cyclic-by-row Jacobi on a dense symmetric matrix given row-major.
/// Iterates until the off-diagonal Frobenius norm drops below
/// 1e-12 * (1 + ||m||_F), at most 100 sweeps.
pub fn eigenvalues_f64(n: usize, mat: &[f64]) -> Result<Spectrum, NumericError> {
    if n > 64 {
        return Err(NumericError::TooLarge(n));
    }
    assert_eq!(mat.len(), n * n, "matrix data must be n*n");
    for i in 0..n {
        for j in (i + 1)..n {
            if mat[i * n + j] != mat[j * n + i] {
                return Err(NumericError::NotSymmetric(i, j));
            }
        }
    }
    let mut a = mat.to_vec();
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = 1e-12 * (1.0 + frob);
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let mut off_norm = off(&a);
    let mut sweeps = 0;
    while off_norm >= threshold {
        if sweeps == MAX_SWEEPS {
            return Err(NumericError::NonConvergence(off_norm));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
        off_norm = off(&a);
        sweeps += 1;
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    Ok(Spectrum { values })
}

pub fn eigenvalues(m: &IntMatrix) -> Result<Spectrum, NumericError> {
    let n = m.order();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            data[i * n + j] = m.get(i, j).to_f64().expect("entry fits in f64");
        }
    }
    eigenvalues_f64(n, &data)
}

/// Numeric adjacency spectrum of a graph.
pub fn graph_spectrum(g: &Graph) -> Result<Spectrum, NumericError> {
    eigenvalues(&IntMatrix::adjacency(g))
}

/// Interlacing inequality between the spectrum of a symmetric matrix of
/// order n and a principal submatrix of order m: for i = 1..m,
/// host_i + tol >= sub_i >= host_{n-m+i} - tol. Whether `sub` really comes
/// from a principal submatrix is the caller's responsibility.
pub fn interlacing_holds(host: &Spectrum, sub: &Spectrum, tol: f64) -> Result<bool, NumericError> {
    let n = host.order();
    let m = sub.order();
    if m > n {
        return Err(NumericError::OrderMismatch { host: n, sub: m });
    }
    for i in 0..m {
        let upper = host.values[i];
        let lower = host.values[n - m + i];
        let v = sub.values[i];
        if !(upper + tol >= v && v >= lower - tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
