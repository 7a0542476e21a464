use std::collections::BTreeSet;
use std::io::Cursor;

use latpoly::constructions::{fixture, fixtures, gamma_delta_formula, prism_delta_formula};
use latpoly::ehrhart::{delta_vector, delta_vector_simplex, EhrhartPolynomial};
use latpoly::equivalence::{apply_map, are_equivalent, fingerprint, random_unimodular};
use latpoly::ks_io::{parse_ks, read_native, write_native};
use latpoly::lattice::{orthogonal_complement, primitive};
use latpoly::{BigInt, DeltaVector, HalfSpace, LatticePoint, Polytope};
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point(d: usize, range: i64) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-range..=range, d).prop_map(|v| LatticePoint::from_i64s(&v))
}

/// Random full-dimensional polytopes in dimensions 1..=3.
fn polytope(range: i64) -> impl Strategy<Value = Polytope> {
    (1usize..=3)
        .prop_flat_map(move |d| prop::collection::vec(point(d, range), d + 1..d + 8))
        .prop_filter_map("lower dimensional", |pts| Polytope::new(pts).ok())
}

/// Facets through every `d`-subset of vertices, by brute force.
fn brute_force_facets(p: &Polytope) -> BTreeSet<HalfSpace> {
    let d = p.dim();
    let v = p.vertices();
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let rows: Vec<Vec<BigInt>> = idx[1..]
            .iter()
            .map(|&i| v[i].sub(&v[idx[0]]).into_coords())
            .collect();
        let n = if d == 1 {
            LatticePoint::from_i64s(&[1])
        } else {
            orthogonal_complement(&rows)
        };
        if !n.is_zero() {
            let n = primitive(&n).unwrap();
            for n in [n.clone(), n.neg()] {
                let c = n.dot(&v[idx[0]]);
                if v.iter().all(|x| n.dot(x) <= c) {
                    out.insert(HalfSpace::new(n, c).unwrap());
                }
            }
        }
        // next d-subset in lexicographic order
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < v.len() - d + k {
                break;
            }
        }
        idx[k] += 1;
        for j in k + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn brute_force_count(p: &Polytope, n: i64) -> usize {
    let d = p.dim();
    let lo: Vec<i64> = (0..d)
        .map(|i| {
            p.vertices()
                .iter()
                .map(|v| i64::try_from(&v[i]).unwrap())
                .min()
                .unwrap()
                * n
        })
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| {
            p.vertices()
                .iter()
                .map(|v| i64::try_from(&v[i]).unwrap())
                .max()
                .unwrap()
                * n
        })
        .collect();
    let mut count = 0;
    let mut cur = lo.clone();
    loop {
        let x = LatticePoint::from_i64s(&cur);
        if p.facets()
            .iter()
            .all(|h| h.normal().dot(&x) <= h.offset() * BigInt::from(n))
        {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == d {
                return count;
            }
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facets_match_brute_force(p in polytope(4)) {
        let fast: BTreeSet<HalfSpace> = p.facets().iter().cloned().collect();
        prop_assert_eq!(fast, brute_force_facets(&p));
    }

    #[test]
    fn vertices_are_minimal(p in polytope(4)) {
        // each vertex lies outside the hull of the others
        if p.num_vertices() > p.dim() + 1 {
            for i in 0..p.num_vertices() {
                let rest: Vec<LatticePoint> =
                    p.vertices().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
                if let Ok(q) = Polytope::new(rest) {
                    prop_assert!(!q.contains(&p.vertices()[i], false).unwrap());
                }
            }
        }
    }

    #[test]
    fn scanning_matches_box_count(p in polytope(3), n in 1i64..=3) {
        prop_assert_eq!(
            latpoly::count_points(&p, n as u64),
            BigInt::from(brute_force_count(&p, n))
        );
    }

    #[test]
    fn ehrhart_roundtrip(p in polytope(3)) {
        let delta = delta_vector(&p).unwrap();
        let poly = EhrhartPolynomial::from_delta(&delta);
        let d = p.dim() as u64;
        for n in 0..=2 * d + 1 {
            let c = latpoly::count_points(&p, n);
            prop_assert_eq!(poly.eval(&BigInt::from(n)), latpoly::Rational::from_integer(c));
        }
        prop_assert_eq!(delta.sum(), p.normalized_volume().unwrap());
    }

    #[test]
    fn dual_is_an_involution(p in polytope(2)) {
        if p.is_reflexive() {
            let d = p.polar_dual().unwrap();
            prop_assert!(d.is_reflexive());
            prop_assert_eq!(d.polar_dual().unwrap(), p.clone());
            prop_assert!(delta_vector(&p).unwrap().is_symmetric());
        }
    }

    #[test]
    fn native_roundtrip(p in polytope(50)) {
        let line = write_native(&p);
        let q = read_native(&line).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(write_native(&q), line);
    }

    #[test]
    fn ks_transpose_invariance(p in polytope(5)) {
        let v = p.vertices();
        let (d, n) = (p.dim(), v.len());
        prop_assume!(d != n);
        let rows = |m: Vec<Vec<String>>| m.into_iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("\n");
        let as_rows = rows(v.iter().map(|x| x.coords().iter().map(|c| c.to_string()).collect()).collect());
        let as_cols = rows((0..d).map(|i| v.iter().map(|x| x[i].to_string()).collect()).collect());
        let a: Vec<_> = parse_ks(Cursor::new(format!("{n} {d}\n{as_rows}\n"))).collect();
        let b: Vec<_> = parse_ks(Cursor::new(format!("{d} {n}\n{as_cols}\n"))).collect();
        prop_assert_eq!(a.len(), 1);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn simplex_delta_paths_agree(
        pts in (1usize..=3).prop_flat_map(|d| prop::collection::vec(point(d, if d == 3 { 6 } else { 10 }), d + 1))
    ) {
        let d = pts[0].dim();
        if let Ok(s) = Polytope::new(pts) {
            if s.num_vertices() == d + 1 {
                prop_assert_eq!(delta_vector_simplex(&s).unwrap(), delta_vector(&s).unwrap());
            }
        }
    }

    #[test]
    fn equivalence_is_sound_and_symmetric(p in polytope(3), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_unimodular(p.dim(), 8, &mut rng);
        let q = apply_map(&m, &p).unwrap();
        prop_assert_eq!(fingerprint(&q).unwrap(), fingerprint(&p).unwrap());
        let w = are_equivalent(&p, &q).unwrap().expect("images are equivalent");
        prop_assert_eq!(apply_map(&w, &p).unwrap(), q.clone());
        let back = are_equivalent(&q, &p).unwrap().expect("symmetric");
        prop_assert_eq!(apply_map(&back, &q).unwrap(), p);
    }

    #[test]
    fn equivalence_answers_agree_both_ways(p in polytope(2), q in polytope(2)) {
        prop_assume!(p.dim() == q.dim());
        let a = are_equivalent(&p, &q).unwrap();
        let b = are_equivalent(&q, &p).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
        if let Some(m) = a {
            prop_assert_eq!(apply_map(&m, &p).unwrap(), q);
        }
    }

    /// With δ_0 = 1 fixed the Γ and prism transforms are injective.
    #[test]
    fn delta_transforms_are_injective(
        a in prop::collection::vec(0i64..20, 1..6),
        b in prop::collection::vec(0i64..20, 1..6),
    ) {
        prop_assume!(a.len() == b.len());
        let mk = |v: &[i64]| {
            let mut e = vec![1];
            e.extend_from_slice(v);
            DeltaVector::from_i64s(&e).unwrap()
        };
        let (x, y) = (mk(&a), mk(&b));
        prop_assert_eq!(gamma_delta_formula(&x).unwrap() == gamma_delta_formula(&y).unwrap(), x == y);
        prop_assert_eq!(prism_delta_formula(&x).unwrap() == prism_delta_formula(&y).unwrap(), x == y);
    }
}

#[test]
fn fixture_facets_match_brute_force() {
    for (name, p) in fixtures() {
        let fast: BTreeSet<HalfSpace> = p.facets().iter().cloned().collect();
        assert_eq!(fast, brute_force_facets(&p), "{name}");
    }
}

#[test]
fn fixture_native_roundtrip() {
    for (name, p) in fixtures() {
        assert_eq!(read_native(&write_native(&p)).unwrap(), p, "{name}");
    }
}

#[test]
fn reflexive_fixtures_have_symmetric_delta() {
    for (name, p) in fixtures() {
        let dv = delta_vector(&p).unwrap();
        assert_eq!(dv.is_symmetric(), p.is_reflexive(), "{name}: {dv}");
        if p.is_reflexive() {
            assert_eq!(p.polar_dual().unwrap().polar_dual().unwrap(), p, "{name}");
        }
    }
}

#[test]
fn sylvester_is_simplex_with_positive_coordinates_growth() {
    let s = latpoly::sylvester_simplex(7).unwrap();
    assert!(s.is_simplex());
    let biggest = s
        .vertices()
        .iter()
        .flat_map(|v| v.coords().iter().map(|c| c.abs()))
        .max()
        .unwrap();
    assert_eq!(biggest, BigInt::from(2) * latpoly::sylvester(3));
    assert!(fixture("cube-3").unwrap().is_reflexive());
}
