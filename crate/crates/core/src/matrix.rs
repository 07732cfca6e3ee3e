use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors. Returns `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.iter_rows().map(<[Rational]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Indices of rows that are not probability distributions.
    pub fn non_stochastic_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&r| !is_distribution(self.row(r)))
            .collect()
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.non_stochastic_rows().is_empty()
    }

    pub fn has_negative(&self) -> bool {
        self.data.iter().any(Signed::is_negative)
    }
}

/// True when every entry lies in `[0, 1]` and the entries sum to exactly one.
pub fn is_distribution(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative() && *x <= Rational::one())
        && v.iter().fold(Rational::zero(), |a, b| a + b).is_one()
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}
