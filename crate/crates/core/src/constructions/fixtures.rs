//! Small named corpus of polytopes, embedded in code.

use num_bigint::BigInt;

use crate::polytope::Polytope;
use crate::LatticePoint;

const NAMES: &[&str] = &[
    "example-1-1",
    "example-1-9",
    "cube-1",
    "cube-2",
    "cube-3",
    "cube-4",
    "cross-2",
    "cross-3",
    "cross-4",
    "simplex-2",
    "simplex-3",
    "simplex-4",
    "unit-square",
    "unit-simplex-2",
    "unit-simplex-3",
];

pub fn fixture_names() -> &'static [&'static str] {
    NAMES
}

fn from_rows(rows: &[&[i64]]) -> Polytope {
    Polytope::new(rows.iter().map(|c| LatticePoint::from_i64s(c)))
        .expect("fixture is full-dimensional")
}

fn cube(d: usize) -> Polytope {
    let verts = (0..1u32 << d)
        .map(|mask| {
            LatticePoint::new(
                (0..d)
                    .map(|i| BigInt::from(if mask >> i & 1 == 1 { 1 } else { -1 }))
                    .collect(),
            )
        })
        .collect();
    Polytope::from_vertices_unchecked(d, verts)
}

fn cross(d: usize) -> Polytope {
    let verts = (0..d)
        .flat_map(|i| [LatticePoint::unit(d, i), LatticePoint::unit(d, i).neg()])
        .collect();
    Polytope::from_vertices_unchecked(d, verts)
}

/// `conv(e_1, ..., e_d, -(e_1 + ... + e_d))`.
fn reflexive_simplex(d: usize) -> Polytope {
    let mut verts: Vec<LatticePoint> = (0..d).map(|i| LatticePoint::unit(d, i)).collect();
    verts.push(LatticePoint::new(vec![BigInt::from(-1); d]));
    Polytope::from_vertices_unchecked(d, verts)
}

/// `conv(0, e_1, ..., e_d)`.
fn unit_simplex(d: usize) -> Polytope {
    let mut verts: Vec<LatticePoint> = (0..d).map(|i| LatticePoint::unit(d, i)).collect();
    verts.push(LatticePoint::zero(d));
    Polytope::from_vertices_unchecked(d, verts)
}

/// Look up a fixture by name.
pub fn fixture(name: &str) -> Option<Polytope> {
    let suffix = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
    };
    let p = match name {
        "example-1-1" => from_rows(&[&[1, 0], &[-1, 2], &[-1, -1]]),
        "example-1-9" => from_rows(&[
            &[-1, 0, 1],
            &[-1, 0, -1],
            &[1, 1, 1],
            &[1, 1, -1],
            &[0, -1, 1],
            &[0, -1, -1],
        ]),
        "unit-square" => from_rows(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
        _ => {
            if let Some(d) = suffix("cube-").filter(|d| (1..=4).contains(d)) {
                cube(d)
            } else if let Some(d) = suffix("cross-").filter(|d| (2..=4).contains(d)) {
                cross(d)
            } else if let Some(d) = suffix("simplex-").filter(|d| (2..=4).contains(d)) {
                reflexive_simplex(d)
            } else {
                let d = suffix("unit-simplex-").filter(|d| (2..=3).contains(d))?;
                unit_simplex(d)
            }
        }
    };
    Some(p)
}

/// Every fixture, in a fixed order.
pub fn fixtures() -> Vec<(&'static str, Polytope)> {
    NAMES
        .iter()
        .map(|&n| (n, fixture(n).expect("listed fixture exists")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_resolve() {
        assert_eq!(fixtures().len(), NAMES.len());
        assert!(fixture("cube-9").is_none());
        assert!(fixture("nope").is_none());
    }

    #[test]
    fn shapes() {
        let e11 = fixture("example-1-1").unwrap();
        assert_eq!(e11.num_vertices(), 3);
        assert!(e11.is_reflexive());
        let e19 = fixture("example-1-9").unwrap();
        assert_eq!((e19.dim(), e19.num_vertices()), (3, 6));
        assert!(e19.is_reflexive());
        let c3 = fixture("cube-3").unwrap();
        assert_eq!((c3.num_vertices(), c3.num_facets()), (8, 6));
        assert!(c3.is_reflexive());
        assert!(fixture("cross-4").unwrap().is_reflexive());
        assert!(fixture("simplex-4").unwrap().is_reflexive());
        assert!(!fixture("unit-simplex-3").unwrap().origin_is_interior());
    }

    #[test]
    fn unchecked_builders_agree_with_hull() {
        for (name, p) in fixtures() {
            let q = Polytope::new(p.vertices().to_vec()).unwrap();
            assert_eq!(p, q, "{name}");
        }
    }
}
