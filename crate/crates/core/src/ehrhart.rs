//! Lattice point counts of dilates, δ-vectors and Ehrhart polynomials.
//!
//! For a `d`-polytope `P`,
//!
//! ```text
//! Σ_n i(P, n) t^n = (δ_0 + δ_1 t + ... + δ_d t^d) / (1 - t)^(d+1)
//! ```
//!
//! so `δ_j = Σ_{k=0}^{j} (-1)^k C(d+1, k) i(P, j-k)` recovers the δ-vector
//! from the first `d + 1` counts. Simplices have a second route through the
//! half-open fundamental parallelepiped of their cone, enumerated with the
//! Smith normal form of the generator matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{adjugate, Matrix};
use crate::normal_form::smith_normal_form;
use crate::polytope::Polytope;
use crate::{IntMatrix, LatticePoint, Rational};

/// `(δ_0, ..., δ_d)` with `δ_0 = 1` and every entry nonnegative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaVector(Vec<BigInt>);

impl DeltaVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.first().is_none_or(|d0| !d0.is_one()) {
            return Err(Error::Internal(format!("δ_0 must be 1, got {entries:?}")));
        }
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::Internal(format!("negative δ entry in {entries:?}")));
        }
        Ok(DeltaVector(entries))
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `δ_i`, with `δ_i = 0` outside `0..=d`.
    pub fn get(&self, i: isize) -> BigInt {
        if i < 0 {
            return BigInt::zero();
        }
        self.0.get(i as usize).cloned().unwrap_or_default()
    }

    /// Equals the normalized volume.
    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        is_symmetric(self)
    }

    /// The δ-vector of the same polytope seen one dimension up (a pyramid).
    pub fn padded(&self) -> DeltaVector {
        let mut e = self.0.clone();
        e.push(BigInt::zero());
        DeltaVector(e)
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ({self})")
    }
}

/// Palindromic test `δ_i = δ_{d-i}`.
pub fn is_symmetric(dv: &DeltaVector) -> bool {
    let e = dv.entries();
    e.iter().eq(e.iter().rev())
}

/// `|nP ∩ ℤ^d|`; 1 for `n = 0`.
pub fn count_points(p: &Polytope, n: u64) -> BigInt {
    p.scanner().count(n)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// δ-vector from the lattice point counts `i(P, 0..=d)`.
pub fn delta_vector(p: &Polytope) -> Result<DeltaVector> {
    let d = p.dim() as u64;
    let counts: Vec<BigInt> = (0..=d).map(|n| count_points(p, n)).collect();
    delta_from_counts(&counts, d)
}

/// The alternating binomial transform `δ_j = Σ_k (-1)^k C(d+1, k) i(j-k)`.
pub fn delta_from_counts(counts: &[BigInt], d: u64) -> Result<DeltaVector> {
    let entries = (0..=d as usize)
        .map(|j| {
            let mut acc = BigInt::zero();
            for k in 0..=j {
                let term = binomial(d + 1, k as u64) * &counts[j - k];
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect();
    DeltaVector::new(entries)
}

/// δ-vector of a simplex by counting lattice points of the half-open
/// parallelepiped spanned by `(v_i, 1)`, graded by the last coordinate.
///
/// With `G` the generator matrix (rows `(v_i, 1)`) and `L G R = D` its Smith
/// form, the vectors `y R^{-1}` with `0 <= y_i < d_i` represent every class
/// of `ℤ^{d+1} / ℤ^{d+1} G` exactly once. Each is reduced into the
/// parallelepiped by taking fractional parts of its coordinates in the
/// basis `G`; since the last column of `G` is all ones, the height of the
/// reduced point is the sum of those fractional parts.
pub fn delta_vector_simplex(s: &Polytope) -> Result<DeltaVector> {
    if !s.is_simplex() {
        return Err(Error::NotASimplex {
            dim: s.dim(),
            vertices: s.num_vertices(),
        });
    }
    let d = s.dim();
    let gens: Vec<LatticePoint> = s
        .vertices()
        .iter()
        .map(|v| v.extend(BigInt::one()))
        .collect();
    let g = IntMatrix::from_points(&gens)?;
    let (adj, det) = adjugate(&g)?;
    let vol = det.abs();
    let sign = if det.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };

    let snf = smith_normal_form(&g)?;
    let (r_adj, r_det) = adjugate(&snf.r)?;
    // R^{-1} = adj(R) / det(R) with det(R) = ±1
    let r_inv = scale(&r_adj, &r_det);
    // coordinates in basis G, scaled by |det G|: x * adj(G) * sign(det G)
    let to_basis = scale(&r_inv.mul(&adj)?, &sign);
    let moduli = snf.diagonal();

    let mut delta = vec![BigInt::zero(); d + 1];
    let mut y = vec![BigInt::zero(); d + 1];
    loop {
        let mut height = BigInt::zero();
        for j in 0..=d {
            let mut acc = BigInt::zero();
            for (i, yi) in y.iter().enumerate() {
                if !yi.is_zero() {
                    acc += yi * &to_basis[(i, j)];
                }
            }
            height += acc.mod_floor(&vol);
        }
        let (h, rem) = height.div_rem(&vol);
        debug_assert!(rem.is_zero());
        let h = h.to_usize().filter(|&h| h <= d).ok_or_else(|| {
            Error::Internal(format!(
                "parallelepiped point at height {h} outside 0..={d}"
            ))
        })?;
        delta[h] += 1;

        // odometer over the residue box
        let mut pos = 0;
        loop {
            if pos > d {
                return DeltaVector::new(delta).and_then(|dv| {
                    if dv.sum() != vol {
                        return Err(Error::Internal(
                            "parallelepiped count differs from volume".into(),
                        ));
                    }
                    Ok(dv)
                });
            }
            y[pos] += 1;
            if y[pos] < moduli[pos] {
                break;
            }
            y[pos] = BigInt::zero();
            pos += 1;
        }
    }
}

fn scale(m: &IntMatrix, k: &BigInt) -> IntMatrix {
    let data = m.entries().iter().map(|x| x * k).collect();
    Matrix::new(m.rows(), m.cols(), data).expect("same shape")
}

/// Simplices go through [`delta_vector_simplex`], everything else through
/// [`delta_vector`].
pub fn delta_vector_auto(p: &Polytope) -> Result<DeltaVector> {
    if p.is_simplex() {
        delta_vector_simplex(p)
    } else {
        delta_vector(p)
    }
}

/// `i(P, n)` as a polynomial in `n` with exact rational coefficients,
/// lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coefficients: Vec<Rational>,
}

impl EhrhartPolynomial {
    /// `Σ_i δ_i C(n + d - i, d)`.
    pub fn from_delta(dv: &DeltaVector) -> Self {
        let d = dv.dim();
        let mut coefficients = vec![Rational::zero(); d + 1];
        let fact: BigInt = (1..=d as u64).map(BigInt::from).product();
        for (i, di) in dv.entries().iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            // C(n + d - i, d) = Π_{j=1}^{d} (n + j - i) / d!
            let mut poly = vec![BigInt::one()];
            for j in 1..=d as i64 {
                let c = BigInt::from(j - i as i64);
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (k, a) in poly.iter().enumerate() {
                    next[k] += a * &c;
                    next[k + 1] += a;
                }
                poly = next;
            }
            for (k, a) in poly.into_iter().enumerate() {
                coefficients[k] += Rational::new(a * di, fact.clone());
            }
        }
        EhrhartPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, n: &BigInt) -> Rational {
        let x = Rational::from_integer(n.clone());
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("({a})")
            };
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff}")?;
                    }
                    write!(f, "n")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn ehrhart_polynomial(p: &Polytope) -> Result<EhrhartPolynomial> {
    Ok(EhrhartPolynomial::from_delta(&delta_vector_auto(p)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaReport {
    pub delta: DeltaVector,
    pub lattice_points: usize,
    pub interior_points: usize,
    pub checks: Vec<PropertyCheck>,
}

impl DeltaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Evaluates the standard δ-vector facts against independently counted
/// lattice points: `δ_0 = 1`, `δ_1 = |P ∩ ℤ^d| - (d+1)`,
/// `δ_d = |int P ∩ ℤ^d|`, `δ_1 >= δ_d`, nonnegativity, and
/// `δ_1 <= δ_i` for `1 <= i <= d-1` whenever `δ_d != 0`.
pub fn check_delta_properties(p: &Polytope) -> Result<DeltaReport> {
    let delta = delta_vector_auto(p)?;
    let d = p.dim();
    let total = p.lattice_points(false).len();
    let interior = p.lattice_points(true).len();
    let e = delta.entries();
    let mut checks = Vec::new();

    checks.push(PropertyCheck {
        name: "delta0-is-one",
        passed: e[0].is_one(),
        detail: format!("δ_0 = {}", e[0]),
    });
    let expect1 = BigInt::from(total) - BigInt::from(d + 1);
    checks.push(PropertyCheck {
        name: "delta1-counts-points",
        passed: e[1] == expect1,
        detail: format!(
            "δ_1 = {}, |P ∩ Z^d| - (d+1) = {total} - {} = {expect1}",
            e[1],
            d + 1
        ),
    });
    checks.push(PropertyCheck {
        name: "deltad-counts-interior",
        passed: e[d] == BigInt::from(interior),
        detail: format!("δ_d = {}, interior lattice points = {interior}", e[d]),
    });
    checks.push(PropertyCheck {
        name: "delta1-ge-deltad",
        passed: e[1] >= e[d],
        detail: format!("δ_1 = {} >= δ_d = {}", e[1], e[d]),
    });
    checks.push(PropertyCheck {
        name: "nonnegative",
        passed: e.iter().all(|x| !x.is_negative()),
        detail: format!("δ = ({delta})"),
    });
    let hibi = if e[d].is_zero() {
        PropertyCheck {
            name: "hibi-lower-bound",
            passed: true,
            detail: "vacuous: δ_d = 0".into(),
        }
    } else {
        let bad: Vec<usize> = (1..d).filter(|&i| e[1] > e[i]).collect();
        PropertyCheck {
            name: "hibi-lower-bound",
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                format!(
                    "δ_1 = {} <= δ_i for 1 <= i <= {}",
                    e[1],
                    d.saturating_sub(1)
                )
            } else {
                format!("δ_1 exceeds δ_i at i = {bad:?}")
            },
        }
    };
    checks.push(hibi);
    Ok(DeltaReport {
        delta,
        lattice_points: total,
        interior_points: interior,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> Polytope {
        Polytope::new(v.iter().map(|c| LatticePoint::from_i64s(c))).unwrap()
    }

    fn dv(e: &[i64]) -> DeltaVector {
        DeltaVector::from_i64s(e).unwrap()
    }

    fn unit_simplex(d: usize) -> Polytope {
        let mut v = vec![LatticePoint::zero(d)];
        v.extend((0..d).map(|i| LatticePoint::unit(d, i)));
        Polytope::new(v).unwrap()
    }

    fn triangle() -> Polytope {
        poly(&[&[1, 0], &[-1, 2], &[-1, -1]])
    }

    fn square() -> Polytope {
        poly(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]])
    }

    #[test]
    fn counts() {
        assert_eq!(count_points(&square(), 2), BigInt::from(25));
        assert_eq!(count_points(&triangle(), 1), BigInt::from(7));
        assert_eq!(count_points(&triangle(), 0), BigInt::from(1));
        assert_eq!(count_points(&unit_simplex(3), 0), BigInt::from(1));
    }

    #[test]
    fn delta_vectors() {
        for d in 1..=4 {
            let mut e = vec![0; d + 1];
            e[0] = 1;
            assert_eq!(delta_vector(&unit_simplex(d)).unwrap(), dv(&e));
            assert_eq!(delta_vector_simplex(&unit_simplex(d)).unwrap(), dv(&e));
        }
        assert_eq!(delta_vector(&triangle()).unwrap(), dv(&[1, 4, 1]));
        assert_eq!(delta_vector(&square()).unwrap(), dv(&[1, 6, 1]));
        let p = poly(&[
            &[-1, 0, 1],
            &[-1, 0, -1],
            &[1, 1, 1],
            &[1, 1, -1],
            &[0, -1, 1],
            &[0, -1, -1],
        ]);
        assert_eq!(delta_vector(&p).unwrap(), dv(&[1, 8, 8, 1]));
        assert_eq!(
            delta_vector(&p.polar_dual().unwrap()).unwrap(),
            dv(&[1, 8, 8, 1])
        );
    }

    #[test]
    fn simplex_path_examples() {
        let seg = poly(&[&[0], &[2]]);
        assert_eq!(delta_vector_simplex(&seg).unwrap(), dv(&[1, 1]));
        assert_eq!(delta_vector_simplex(&triangle()).unwrap(), dv(&[1, 4, 1]));
        assert!(matches!(
            delta_vector_simplex(&square()),
            Err(Error::NotASimplex { .. })
        ));
        let s3 = poly(&[&[-3, -2, -2], &[1, 0, 0], &[1, 2, 0], &[1, 0, 2]]);
        assert_eq!(delta_vector_simplex(&s3).unwrap(), dv(&[1, 7, 7, 1]));
        assert_eq!(delta_vector(&s3).unwrap(), dv(&[1, 7, 7, 1]));
    }

    #[test]
    fn delta_vector_rejects_bad_entries() {
        assert!(DeltaVector::from_i64s(&[2, 1]).is_err());
        assert!(DeltaVector::from_i64s(&[1, -1]).is_err());
        assert!(DeltaVector::from_i64s(&[]).is_err());
    }

    #[test]
    fn ehrhart_polynomials() {
        let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
        let sq = ehrhart_polynomial(&square()).unwrap();
        assert_eq!(sq.coefficients(), &[r(1, 1), r(4, 1), r(4, 1)]);
        assert_eq!(sq.to_string(), "4n^2 + 4n + 1");
        let seg = ehrhart_polynomial(&poly(&[&[0], &[1]])).unwrap();
        assert_eq!(seg.coefficients(), &[r(1, 1), r(1, 1)]);
        let tri = ehrhart_polynomial(&triangle()).unwrap();
        assert_eq!(tri.coefficients(), &[r(1, 1), r(3, 1), r(3, 1)]);
        let p = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            ehrhart_polynomial(&p).unwrap().to_string(),
            "(1/6)n^3 + n^2 + (11/6)n + 1"
        );
    }

    #[test]
    fn symmetry() {
        assert!(is_symmetric(&dv(&[1, 8, 8, 1])));
        assert!(is_symmetric(&dv(&[1, 4, 1])));
        assert!(!is_symmetric(&dv(&[1, 0, 0])));
    }

    #[test]
    fn property_report() {
        let p = poly(&[
            &[-1, 0, 1],
            &[-1, 0, -1],
            &[1, 1, 1],
            &[1, 1, -1],
            &[0, -1, 1],
            &[0, -1, -1],
        ]);
        let rep = check_delta_properties(&p).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
        assert_eq!(rep.lattice_points, 12);
        assert_eq!(rep.delta.entries()[1], BigInt::from(8));

        let rep = check_delta_properties(&unit_simplex(3)).unwrap();
        assert!(rep.all_passed());
        let hibi = rep
            .checks
            .iter()
            .find(|c| c.name == "hibi-lower-bound")
            .unwrap();
        assert!(hibi.detail.contains("vacuous"));
    }
}
