//! Dense symmetric eigenvalues by cyclic Jacobi rotations, and the ordered
//! adjacency spectrum built on top of it.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Convergence threshold on the squared off-diagonal Frobenius mass.
pub const OFF_DIAGONAL_TOL: f64 = 1e-24;
/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Slack used by [`interlacing_check`].
pub const INTERLACING_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("matrix has {len} entries, which is not {n}x{n}")]
    Shape { len: usize, n: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("eigenvalue index {index} is out of range 1..={order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("child order {child} exceeds parent order {parent}")]
    OrderMismatch { parent: usize, child: usize },
}

fn off_diagonal_mass(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    2.0 * s
}

/// Eigenvalues of a symmetric `n x n` row-major matrix, sorted descending.
///
/// Rotations are applied in row-major `(p, q)` order every sweep, so the
/// result is reproducible for a given input.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>, SpectrumError> {
    if matrix.len() != n * n {
        return Err(SpectrumError::Shape {
            len: matrix.len(),
            n,
        });
    }
    for p in 0..n {
        for q in p + 1..n {
            if matrix[p * n + q] != matrix[q * n + p] {
                return Err(SpectrumError::NotSymmetric { row: p, col: q });
            }
        }
    }
    let mut a = matrix.to_vec();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&a, n);
        if off < OFF_DIAGONAL_TOL {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(SpectrumError::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// One Jacobi rotation annihilating `a[p][q]`.
#[inline]
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    // smaller root of t^2 + 2 theta t - 1 = 0
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    if t == 0.0 {
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * n + p];
        let arq = a[r * n + q];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        a[r * n + p] = new_rp;
        a[p * n + r] = new_rp;
        a[r * n + q] = new_rq;
        a[q * n + r] = new_rq;
    }
}

/// Real eigenvalues of an adjacency matrix, `mu_1 >= ... >= mu_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    /// Wraps already computed eigenvalues; they are re-sorted descending.
    pub fn from_values(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|x, y| y.total_cmp(x));
        Spectrum { values, tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `mu_k`, 1-based.
    pub fn mu(&self, k: usize) -> Result<f64, SpectrumError> {
        if k == 0 || k > self.values.len() {
            return Err(SpectrumError::IndexOutOfRange {
                index: k,
                order: self.values.len(),
            });
        }
        Ok(self.values[k - 1])
    }

    /// Largest eigenvalue.
    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    /// Smallest eigenvalue.
    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum, SpectrumError> {
    let values = symmetric_eigenvalues(&g.adjacency_matrix(), g.order())?;
    Ok(Spectrum {
        values,
        tol: OFF_DIAGONAL_TOL,
    })
}

/// Residual of `sum mu_i^2 = 2 e(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceResidual {
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

pub fn trace_square_identity(g: &Graph, s: &Spectrum) -> TraceResidual {
    let twice_m = 2.0 * g.edge_count() as f64;
    let residual = (s.sum_of_squares() - twice_m).abs();
    let threshold = 1e-8 * twice_m.max(1.0);
    TraceResidual {
        residual,
        threshold,
        passed: residual <= threshold,
    }
}

/// Cauchy interlacing of a principal submatrix spectrum (`child`, order m)
/// inside `parent` (order n): `mu_i(parent) >= mu_i(child) >= mu_{i+n-m}(parent)`.
pub fn interlacing_check(parent: &Spectrum, child: &Spectrum) -> Result<bool, SpectrumError> {
    let n = parent.order();
    let m = child.order();
    if m > n {
        return Err(SpectrumError::OrderMismatch {
            parent: n,
            child: m,
        });
    }
    let p = parent.values();
    Ok(child
        .values()
        .iter()
        .enumerate()
        .all(|(i, &c)| p[i] + INTERLACING_SLACK >= c && c + INTERLACING_SLACK >= p[i + n - m]))
}
