//! Exact Gaussian elimination over `Q`, enough for kernels, spans and
//! coset normal forms.

use num_traits::{One, Zero};

use crate::rational::Q;

/// A row-reduced echelon basis of a subspace of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    pub width: usize,
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn span(width: usize, vectors: impl IntoIterator<Item = Vec<Q>>) -> Self {
        let mut basis = EchelonBasis { width, rows: Vec::new(), pivots: Vec::new() };
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result has zeros in every pivot
    /// column and is the canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span, keeping the rows fully reduced. Returns whether
    /// the rank grew.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        let r: Vec<Q> = r.into_iter().map(|x| x * &inv).collect();
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &c * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Columns that are not pivots; coordinates there parametrize `Q^n / span`.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Basis of `{x : M x = 0}` for a matrix given by rows of width `cols`.
pub fn nullspace(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let e = EchelonBasis::span(cols, rows.iter().cloned());
    let mut out = Vec::new();
    for free in e.free_columns() {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>], inner: usize, cols: usize) -> Vec<Vec<Q>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}
