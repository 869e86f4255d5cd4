//! Hadamard matrices and the symmetric designs they carry.
//!
//! A Hadamard matrix is a ±1 square matrix with `H·Hᵀ = n·I`; orders are 1, 2
//! or multiples of 4. Construction here composes Sylvester doubling with the
//! Paley quadratic-residue matrix for prime powers `q ≡ 3 (mod 4)`, which
//! covers every order the rest of the crate asks for (2, 4, 8, 12, 16, 20,
//! 24, ...). Orders outside that reach are reported as unsupported, not as
//! nonexistent.
//!
//! Normalizing (first row and column all +1), deleting the first row and
//! column, and mapping -1 to 0 turns H(4m) into a symmetric
//! (4m-1, 2m-1, m-1) design.

use super::field::FiniteField;
use super::{DesignError, IncidenceStructure};
use crate::subsets::KSubset;

pub type Matrix = Vec<Vec<i64>>;

fn sylvester_double(h: &Matrix) -> Matrix {
    let n = h.len();
    let mut out = vec![vec![0i64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = h[i][j];
            out[i][j + n] = h[i][j];
            out[i + n][j] = h[i][j];
            out[i + n][j + n] = -h[i][j];
        }
    }
    out
}

/// Paley construction for order q+1, q a prime power with q ≡ 3 (mod 4):
/// `H = I + C` with `C = [[0, 1ᵀ], [-1, Q]]` skew-symmetric, `Q` the
/// quadratic-character matrix `Q_ij = χ(a_i - a_j)`.
fn paley(q: u32) -> Result<Matrix, DesignError> {
    let f = FiniteField::new(q)?;
    if q % 4 != 3 {
        return Err(DesignError::HadamardUnsupported {
            order: q as usize + 1,
        });
    }
    let squares = f.nonzero_squares();
    let chi = |x: u32| -> i64 {
        if x == 0 {
            0
        } else if squares[x as usize] {
            1
        } else {
            -1
        }
    };
    let n = q as usize + 1;
    // The skew-symmetric part C first; H = I + C.
    let mut h = vec![vec![0i64; n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = match (i, j) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                (i, j) => chi(f.sub(i as u32 - 1, j as u32 - 1)),
            };
        }
    }
    for (i, row) in h.iter_mut().enumerate() {
        row[i] += 1;
    }
    Ok(h)
}

/// Negates rows, then columns, so the first column and row are all +1. Both
/// operations preserve `H·Hᵀ = n·I`.
fn normalize(h: &mut Matrix) {
    for row in h.iter_mut() {
        if row[0] < 0 {
            for cell in row.iter_mut() {
                *cell = -*cell;
            }
        }
    }
    let n = h.len();
    for j in 0..n {
        if h[0][j] < 0 {
            for row in h.iter_mut() {
                row[j] = -row[j];
            }
        }
    }
}

/// A normalized Hadamard matrix of the given order, when the composed
/// Sylvester/Paley constructions reach it.
pub fn hadamard_matrix(order: usize) -> Result<Matrix, DesignError> {
    let mut h = hadamard_unnormalized(order)?;
    normalize(&mut h);
    debug_assert!(is_hadamard(&h));
    Ok(h)
}

fn hadamard_unnormalized(order: usize) -> Result<Matrix, DesignError> {
    match order {
        0 => Err(DesignError::HadamardUnsupported { order }),
        1 => Ok(vec![vec![1]]),
        2 => Ok(vec![vec![1, 1], vec![1, -1]]),
        n if n % 4 == 0 => {
            // Prefer Sylvester doubling; fall back to Paley on q = n-1.
            if let Ok(half) = hadamard_unnormalized(n / 2) {
                return Ok(sylvester_double(&half));
            }
            let q = (n - 1) as u32;
            paley(q).map_err(|_| DesignError::HadamardUnsupported { order })
        }
        _ => Err(DesignError::HadamardUnsupported { order }),
    }
}

/// Exact check of `H·Hᵀ = n·I`.
pub fn is_hadamard(h: &Matrix) -> bool {
    let n = h.len();
    if h.iter().any(|row| row.len() != n) {
        return false;
    }
    if h.iter().flatten().any(|&x| x != 1 && x != -1) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let dot: i64 = (0..n).map(|t| h[i][t] * h[j][t]).sum();
            let expect = if i == j { n as i64 } else { 0 };
            if dot != expect {
                return false;
            }
        }
    }
    true
}

/// The symmetric (4m-1, 2m-1, m-1) design carried by a normalized H(4m):
/// blocks are the +1 supports of rows 2..=4m over columns 2..=4m.
pub fn hadamard_design(m: usize) -> Result<IncidenceStructure, DesignError> {
    if m == 0 {
        return Err(DesignError::HadamardUnsupported { order: 0 });
    }
    let h = hadamard_matrix(4 * m)?;
    let n_points = 4 * m - 1;
    let mut blocks = Vec::with_capacity(n_points);
    for row in h.iter().skip(1) {
        let elems: Vec<usize> = row
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &cell)| cell == 1)
            .map(|(j, _)| j)
            .collect();
        blocks.push(KSubset::new(n_points, &elems)?);
    }
    IncidenceStructure::new(n_points, blocks)
}
