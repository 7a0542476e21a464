use latpoly::lattice::{adjugate, determinant, primitive, rank, solve_rational, Matrix, Point};
use latpoly::normal_form::{hermite_normal_form, smith_normal_form};
use latpoly::{BigInt, IntMatrix, LatticePoint, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(n: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, n * n)
        .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn any_square() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4).prop_flat_map(|n| matrix(n, 6))
}

fn rect() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// Laplace expansion along the first row.
fn laplace(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let rows: Vec<Vec<BigInt>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m[(i, k)].clone())
                    .collect()
            })
            .collect();
        let minor = laplace(&IntMatrix::from_rows(rows).unwrap());
        let term = &m[(0, j)] * minor;
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

proptest! {
    #[test]
    fn determinant_matches_laplace(m in any_square()) {
        prop_assert_eq!(determinant(&m).unwrap(), laplace(&m));
    }

    #[test]
    fn generic_scalar_agrees(v in prop::collection::vec(-9i64..=9, 9)) {
        let small = Matrix::<i128>::new(3, 3, v.iter().map(|&x| x as i128).collect()).unwrap();
        let big = IntMatrix::new(3, 3, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        prop_assert_eq!(BigInt::from(determinant(&small).unwrap()), determinant(&big).unwrap());
    }

    #[test]
    fn smith_invariants(m in any_square()) {
        let det = determinant(&m).unwrap();
        match smith_normal_form(&m) {
            Err(_) => prop_assert!(det.is_zero()),
            Ok(s) => {
                prop_assert_eq!(s.l.mul(&m).unwrap().mul(&s.r).unwrap(), s.d.clone());
                prop_assert!(s.d.is_diagonal());
                prop_assert!(determinant(&s.l).unwrap().abs().is_one());
                prop_assert!(determinant(&s.r).unwrap().abs().is_one());
                let diag = s.diagonal();
                prop_assert!(diag.iter().all(|x| x.is_positive()));
                for w in diag.windows(2) {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
                let prod: BigInt = diag.iter().product();
                prop_assert_eq!(prod, det.abs());
            }
        }
    }

    #[test]
    fn hermite_invariants(m in rect()) {
        let hn = hermite_normal_form(&m);
        prop_assert_eq!(hn.u.mul(&m).unwrap(), hn.h.clone());
        prop_assert!(determinant(&hn.u).unwrap().abs().is_one());
        let h = &hn.h;
        let mut last_pivot: Option<usize> = None;
        let mut zero_rows_started = false;
        for i in 0..h.rows() {
            let pivot = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
            match pivot {
                None => zero_rows_started = true,
                Some(j) => {
                    prop_assert!(!zero_rows_started, "nonzero row below a zero row");
                    prop_assert!(last_pivot.is_none_or(|p| j > p));
                    prop_assert!(h[(i, j)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, j)].is_negative() && h[(k, j)] < h[(i, j)]);
                    }
                    last_pivot = Some(j);
                }
            }
        }
        prop_assert_eq!(h.rows() - (0..h.rows()).filter(|&i| h.row(i).iter().all(|x| x.is_zero())).count(), rank(&m));
    }

    #[test]
    fn primitive_scaling(v in prop::collection::vec(-20i64..=20, 1..5), k in 1i64..=7) {
        let p = LatticePoint::from_i64s(&v);
        if p.is_zero() {
            prop_assert!(primitive(&p).is_err());
        } else {
            let scaled = p.scale(&BigInt::from(k));
            let a = primitive(&p).unwrap();
            prop_assert_eq!(primitive(&scaled).unwrap(), a.clone());
            prop_assert!(latpoly::lattice::content(a.coords()).is_one());
        }
    }

    #[test]
    fn solve_roundtrip(m in any_square(), b in prop::collection::vec(-9i64..=9, 4)) {
        let n = m.rows();
        let b = LatticePoint::from_i64s(&b[..n]);
        match solve_rational(&m, &b) {
            Err(_) => prop_assert!(determinant(&m).unwrap().is_zero()),
            Ok(x) => {
                for i in 0..n {
                    let lhs: Rational = (0..n).map(|j| Rational::from_integer(m[(i, j)].clone()) * &x[j]).sum();
                    prop_assert_eq!(lhs, Rational::from_integer(b[i].clone()));
                }
            }
        }
    }

    #[test]
    fn adjugate_identity(m in any_square()) {
        if let Ok((adj, det)) = adjugate(&m) {
            let prod = m.mul(&adj).unwrap();
            let n = m.rows();
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { det.clone() } else { BigInt::zero() };
                    prop_assert_eq!(&prod[(i, j)], &expect);
                }
            }
        }
    }
}

#[test]
fn point_generic_over_i64() {
    let p = Point::<i64>::new(vec![4, -6, 10]);
    assert_eq!(primitive(&p).unwrap(), Point::new(vec![2, -3, 5]));
}
