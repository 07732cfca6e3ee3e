//! Encoding (`W -> S`) and decoding (`S -> W`) schemes.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

fn one_hot(rows: usize, cols: usize, indices: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for (r, &c) in indices.iter().enumerate() {
        m[(r, c)] = Rational::one();
    }
    m
}

fn detect_indices(matrix: &Matrix) -> Option<Vec<usize>> {
    matrix
        .iter_rows()
        .map(|row| {
            let mut hit = None;
            for (c, v) in row.iter().enumerate() {
                if v.is_one() && hit.is_none() {
                    hit = Some(c);
                } else if !v.is_zero() {
                    return None;
                }
            }
            hit
        })
        .collect()
}

/// Row-stochastic `N x M` matrix of `u(s|w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncodingScheme {
    matrix: Matrix,
    indices: Option<Vec<usize>>,
}

impl EncodingScheme {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let bad = matrix.non_stochastic_rows();
        if !bad.is_empty() {
            return Err(Error::Invalid(
                bad.iter()
                    .map(|r| format!("encoder row {r} is not a distribution"))
                    .collect(),
            ));
        }
        let indices = detect_indices(&matrix);
        Ok(Self { matrix, indices })
    }

    /// The deterministic scheme sending meaning `n` to message `indices[n]`.
    pub fn deterministic(indices: Vec<usize>, num_messages: usize) -> Self {
        assert!(indices.iter().all(|&m| m < num_messages));
        Self {
            matrix: one_hot(indices.len(), num_messages, &indices),
            indices: Some(indices),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn num_meanings(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_messages(&self) -> usize {
        self.matrix.cols()
    }

    /// `u(s_m | w_n)`
    pub fn prob(&self, n: usize, m: usize) -> &Rational {
        &self.matrix[(n, m)]
    }

    pub fn indices(&self) -> Option<&[usize]> {
        self.indices.as_deref()
    }

    pub fn is_deterministic(&self) -> bool {
        self.indices.is_some()
    }

    /// Messages used with positive probability by some meaning.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_messages())
            .filter(|&m| (0..self.num_meanings()).any(|n| !self.matrix[(n, m)].is_zero()))
            .collect()
    }
}

/// Per-message distributions `v(w|s)`, stored as an `M x N` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecodingScheme {
    matrix: Matrix,
    indices: Option<Vec<usize>>,
}

impl DecodingScheme {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let bad = matrix.non_stochastic_rows();
        if !bad.is_empty() {
            return Err(Error::Invalid(
                bad.iter()
                    .map(|r| format!("decoder row for message {r} is not a distribution"))
                    .collect(),
            ));
        }
        let indices = detect_indices(&matrix);
        Ok(Self { matrix, indices })
    }

    /// The deterministic scheme decoding message `m` as meaning `indices[m]`.
    pub fn deterministic(indices: Vec<usize>, num_meanings: usize) -> Self {
        assert!(indices.iter().all(|&n| n < num_meanings));
        Self {
            matrix: one_hot(indices.len(), num_meanings, &indices),
            indices: Some(indices),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn num_messages(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_meanings(&self) -> usize {
        self.matrix.cols()
    }

    /// `v(w_n | s_m)`
    pub fn prob(&self, m: usize, n: usize) -> &Rational {
        &self.matrix[(m, n)]
    }

    pub fn indices(&self) -> Option<&[usize]> {
        self.indices.as_deref()
    }
}
