//! Exact integer vectors and matrices: Bareiss determinants, rational
//! solves, ranks and primitive vectors.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Int;

/// An integer vector of fixed length.
///
/// Ordering is lexicographic on the coordinates, which fixes the
/// canonical vertex order used across the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T>(Vec<T>);

impl<T: Int> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![T::zero(); dim])
    }

    /// The `i`-th unit vector (0-based) of length `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut c = vec![T::zero(); dim];
        c[i] = T::one();
        Point(c)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Point(
            coords
                .iter()
                .map(|&c| T::from_i64(c).expect("i64 fits the scalar type"))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.0, &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Point(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Point(self.0.iter().map(|a| -a.clone()).collect())
    }

    /// Appends one coordinate.
    pub fn extend(&self, last: T) -> Self {
        let mut c = self.0.clone();
        c.push(last);
        Point(c)
    }

    /// Row vector times matrix, `v * m`.
    pub fn mul_matrix(&self, m: &Matrix<T>) -> Self {
        assert_eq!(self.dim(), m.rows(), "vector length must match matrix rows");
        Point(
            (0..m.cols())
                .map(|j| {
                    let mut acc = T::zero();
                    for (i, v) in self.0.iter().enumerate() {
                        if !v.is_zero() {
                            acc = acc + v.clone() * m[(i, j)].clone();
                        }
                    }
                    acc
                })
                .collect(),
        )
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Display> fmt::Debug for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn dot<T: Int>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Int> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x).expect("fits")).collect())
                .collect(),
        )
        .expect("rows of equal length")
    }

    /// Matrix whose rows are the given points.
    pub fn from_points(points: &[Point<T>]) -> Result<Self> {
        Self::from_rows(points.iter().map(|p| p.coords().to_vec()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_point(&self, i: usize) -> Point<T> {
        Point(self.row(i).to_vec())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self[(src, j)].clone();
            if !s.is_zero() {
                self[(dst, j)] = self[(dst, j)].clone() + k.clone() * s;
            }
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self[(i, src)].clone();
            if !s.is_zero() {
                self[(i, dst)] = self[(i, dst)].clone() + k.clone() * s;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Divides `v` by the gcd of its entries. Direction is preserved.
pub fn primitive<T: Int>(v: &Point<T>) -> Result<Point<T>> {
    let g = content(v.coords());
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(Point(
        v.coords().iter().map(|c| c.clone() / g.clone()).collect(),
    ))
}

/// Nonnegative gcd of all entries; zero for the zero vector.
pub fn content<T: Int>(v: &[T]) -> T {
    let mut g = T::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant<T: Int>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(bareiss(m.clone()))
}

fn bareiss<T: Int>(mut a: Matrix<T>) -> T {
    let n = a.rows();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let lead = a[(i, k)].clone();
            for j in k + 1..n {
                let v = a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(k, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
        }
        prev = pivot;
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix (fraction-free elimination).
pub fn rank<T: Int>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut prev = T::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let pivot = a[(r, c)].clone();
        for i in r + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c..cols {
                let v = a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(r, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Exact solution of `A x = b` for square nonsingular `A`.
pub fn solve_rational<T: Int>(a: &Matrix<T>, b: &Point<T>) -> Result<Vec<Ratio<T>>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    let mut aug: Vec<Vec<Ratio<T>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<T>> =
                a.row(i).iter().cloned().map(Ratio::from_integer).collect();
            row.push(Ratio::from_integer(b[i].clone()));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !aug[i][c].is_zero())
            .ok_or(Error::Singular)?;
        aug.swap(c, p);
        let pivot = aug[c][c].clone();
        for j in c..=n {
            aug[c][j] = aug[c][j].clone() / pivot.clone();
        }
        for i in 0..n {
            if i == c || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            for j in c..=n {
                let v = aug[c][j].clone() * f.clone();
                aug[i][j] = aug[i][j].clone() - v;
            }
        }
    }
    Ok(aug
        .into_iter()
        .map(|mut row| row.pop().expect("augmented column"))
        .collect())
}

/// Returns `(adj(A), det(A))` for square nonsingular `A`, so that
/// `A * adj(A) = det(A) * I`.
pub fn adjugate<T: Int>(a: &Matrix<T>) -> Result<(Matrix<T>, T)> {
    let det = determinant(a)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let n = a.rows();
    let mut adj = Matrix::zeros(n, n);
    for j in 0..n {
        let col = solve_rational(a, &Point::unit(n, j))?;
        for (i, x) in col.into_iter().enumerate() {
            let scaled = x * Ratio::from_integer(det.clone());
            debug_assert!(scaled.is_integer());
            adj[(i, j)] = scaled.to_integer();
        }
    }
    Ok((adj, det))
}

/// A nonzero integer vector orthogonal to each of the `n - 1` given rows of
/// length `n`, by signed maximal minors. Zero when the rows are dependent.
pub fn orthogonal_complement<T: Int>(rows: &[Vec<T>]) -> Point<T> {
    let n = rows.len() + 1;
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<T> = rows
            .iter()
            .flat_map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, x)| x.clone())
            })
            .collect();
        let m = Matrix {
            rows: n - 1,
            cols: n - 1,
            data: minor,
        };
        let d = bareiss(m);
        out.push(if skip % 2 == 0 { d } else { -d });
    }
    Point(out)
}
