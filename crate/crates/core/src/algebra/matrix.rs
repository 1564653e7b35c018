//! Square matrices over `Q[i]` and exact row reduction.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::GaussianRational as Q;
use crate::error::{Error, Result};

/// A dense `n × n` matrix with Gaussian-rational entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Q::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n);
        m.data[i * n + j] = Q::one();
        m
    }

    pub fn diagonal(entries: Vec<Q>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_int(x)).collect())
                .collect(),
        )
    }

    /// Rebuilds a matrix from its row-major vectorisation.
    pub fn from_vec(n: usize, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), n * n, "vectorisation length");
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_vec(&self) -> &[Q] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn adjoint(&self) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension");
        let n = self.n;
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        m.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// `Σ cᵢ·Mᵢ`.
    pub fn combination(n: usize, coeffs: &[Q], mats: &[Matrix]) -> Matrix {
        let mut acc = Matrix::zeros(n);
        for (c, m) in coeffs.iter().zip(mats) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

impl Matrix {
    pub fn rows(&self) -> Vec<Vec<Q>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[Q]>::to_vec).collect()
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Q>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Reduced row echelon form of `rows` (all of equal length).
///
/// Returns the nonzero rows and their pivot columns. The result depends only
/// on the row space, which makes it a canonical basis.
pub fn rref(mut rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    rref(rows).0.len()
}

/// Basis of `{x : M x = 0}` where `M` has the given rows and `width` columns.
pub fn kernel(rows: Vec<Vec<Q>>, width: usize) -> Vec<Vec<Q>> {
    let (reduced, pivots) = rref(rows);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); width];
            v[f] = Q::one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect()
}

/// Coordinates of `v` in a basis given in reduced row echelon form.
pub fn rref_coordinates(basis: &[Vec<Q>], pivots: &[usize], v: &[Q]) -> Option<Vec<Q>> {
    let coeffs: Vec<Q> = pivots.iter().map(|&p| v[p].clone()).collect();
    let width = v.len();
    let mut acc = vec![Q::zero(); width];
    for (c, row) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(row) {
            if !x.is_zero() {
                *a += &(c * x);
            }
        }
    }
    (acc.as_slice() == v).then_some(coeffs)
}

/// Canonical basis of `span(U) ∩ span(W)`.
pub fn span_intersection(u: &[Vec<Q>], w: &[Vec<Q>], width: usize) -> Vec<Vec<Q>> {
    if u.is_empty() || w.is_empty() {
        return Vec::new();
    }
    // Columns u_1..u_p, -w_1..-w_q; a kernel vector (α, β) gives Σ αᵢ uᵢ = Σ βⱼ wⱼ.
    let cols = u.len() + w.len();
    let rows: Vec<Vec<Q>> = (0..width)
        .map(|k| {
            u.iter()
                .map(|v| v[k].clone())
                .chain(w.iter().map(|v| -&v[k]))
                .collect()
        })
        .collect();
    let ker = kernel(rows, cols);
    let vectors: Vec<Vec<Q>> = ker
        .iter()
        .map(|alpha| {
            let mut acc = vec![Q::zero(); width];
            for (a, v) in alpha.iter().zip(u) {
                if a.is_zero() {
                    continue;
                }
                for (x, y) in acc.iter_mut().zip(v) {
                    *x += &(a * y);
                }
            }
            acc
        })
        .collect();
    if vectors.is_empty() {
        return vectors;
    }
    rref(vectors).0
}
