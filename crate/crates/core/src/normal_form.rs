//! Hermite and Smith normal forms of integer matrices.
//!
//! Conventions:
//! * HNF is row-style: `U * M = H` with `H` in row echelon form, every pivot
//!   positive and the entries above a pivot reduced into `[0, pivot)`.
//! * SNF: `L * M * R = D` with `D` diagonal, positive, `d_1 | d_2 | ... | d_n`.

use crate::error::{Error, Result};
use crate::lattice::Matrix;
use crate::scalar::{div_floor, Int};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hermite<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith<T> {
    pub l: Matrix<T>,
    pub d: Matrix<T>,
    pub r: Matrix<T>,
}

impl<T: Int> Smith<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub fn hermite_normal_form<T: Int>(m: &Matrix<T>) -> Hermite<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = Matrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let best = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = div_floor(&h[(i, c)], &h[(r, c)]);
                let k = -q;
                h.add_row_multiple(i, r, &k);
                u.add_row_multiple(i, r, &k);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = div_floor(&h[(i, c)], &h[(r, c)]);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(i, r, &k);
                u.add_row_multiple(i, r, &k);
            }
        }
        r += 1;
    }
    Hermite { h, u }
}

pub fn smith_normal_form<T: Int>(m: &Matrix<T>) -> Result<Smith<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut d = m.clone();
    let mut l = Matrix::identity(n);
    let mut r = Matrix::identity(n);
    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Err(Error::Singular);
            };
            d.swap_rows(t, pi);
            l.swap_rows(t, pi);
            d.swap_cols(t, pj);
            r.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..n {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let k = -div_floor(&d[(i, t)], &d[(t, t)]);
                d.add_row_multiple(i, t, &k);
                l.add_row_multiple(i, t, &k);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let k = -div_floor(&d[(t, j)], &d[(t, t)]);
                d.add_col_multiple(j, t, &k);
                r.add_col_multiple(j, t, &k);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(d[(i, j)].clone() % d[(t, t)].clone()).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one);
                    l.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            l.negate_row(t);
        }
    }
    Ok(Smith { l, d, r })
}
