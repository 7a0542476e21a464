//! Polytope constructions one dimension up and their δ-vector transforms.
//!
//! For `P ⊂ ℝ^{d-1}`:
//! * [`prism_sym`]: `P × [-1, 1]`
//! * [`bipyramid`]: `conv(P × {0}, ±e_d)`
//! * [`gamma`]: `conv(P × [-1, 0], e_d)`
//! * [`prism01`]: `P × [0, 1]`
//! * [`pyramid`]: `conv(P × {0}, e_d)`

mod fixtures;
mod sylvester;

use num_bigint::BigInt;

use crate::ehrhart::DeltaVector;
use crate::error::Result;
use crate::polytope::Polytope;
use crate::LatticePoint;

pub use fixtures::{fixture, fixture_names, fixtures};
pub use sylvester::{
    nill_bounds_check, sylvester, sylvester_facet_normal, sylvester_product, sylvester_simplex,
    sylvester_simplex_dual_map, sylvester_volume, NillBounds, SylvesterSequence,
};

fn lift(v: &LatticePoint, last: i64) -> LatticePoint {
    v.extend(BigInt::from(last))
}

fn apex(dim: usize, sign: i64) -> LatticePoint {
    let mut c = vec![BigInt::from(0); dim];
    c[dim - 1] = BigInt::from(sign);
    LatticePoint::new(c)
}

/// Vertex list straight from the defining formula when it is provably
/// minimal, otherwise through the hull filter.
fn assemble(dim: usize, points: Vec<LatticePoint>, formula_is_minimal: bool) -> Polytope {
    if formula_is_minimal {
        Polytope::from_vertices_unchecked(dim, points)
    } else {
        Polytope::new(points)
            .expect("construction over a full-dimensional base is full-dimensional")
    }
}

/// `P × [-1, 1]`.
pub fn prism_sym(p: &Polytope) -> Polytope {
    let pts = p
        .vertices()
        .iter()
        .flat_map(|v| [lift(v, -1), lift(v, 1)])
        .collect();
    assemble(p.dim() + 1, pts, true)
}

/// `conv(P × {0}, e_d, -e_d)`.
pub fn bipyramid(p: &Polytope) -> Polytope {
    let d = p.dim() + 1;
    let mut pts: Vec<LatticePoint> = p.vertices().iter().map(|v| lift(v, 0)).collect();
    pts.push(apex(d, 1));
    pts.push(apex(d, -1));
    assemble(d, pts, p.origin_is_interior())
}

/// `conv(P × [-1, 0], e_d)`.
pub fn gamma(p: &Polytope) -> Polytope {
    let d = p.dim() + 1;
    let mut pts: Vec<LatticePoint> = p
        .vertices()
        .iter()
        .flat_map(|v| [lift(v, 0), lift(v, -1)])
        .collect();
    pts.push(apex(d, 1));
    assemble(d, pts, p.origin_is_interior())
}

/// `P × [0, 1]`.
pub fn prism01(p: &Polytope) -> Polytope {
    let pts = p
        .vertices()
        .iter()
        .flat_map(|v| [lift(v, 0), lift(v, 1)])
        .collect();
    assemble(p.dim() + 1, pts, true)
}

/// `conv(P × {0}, e_d)`.
pub fn pyramid(p: &Polytope) -> Polytope {
    let d = p.dim() + 1;
    let mut pts: Vec<LatticePoint> = p.vertices().iter().map(|v| lift(v, 0)).collect();
    pts.push(apex(d, 1));
    assemble(d, pts, true)
}

/// `δ_i(Γ(P)) = (i+1) δ_i(P) + (d-i+1) δ_{i-1}(P)` for `P` of dimension
/// `d - 1`, with `δ_{-1} = δ_d = 0`.
pub fn gamma_delta_formula(dv: &DeltaVector) -> Result<DeltaVector> {
    lift_delta(dv, 1)
}

/// `δ_i(P × [0,1]) = (i+1) δ_i(P) + (d-i) δ_{i-1}(P)`, same conventions.
pub fn prism_delta_formula(dv: &DeltaVector) -> Result<DeltaVector> {
    lift_delta(dv, 0)
}

/// `(i+1) δ_i + (d - i + extra) δ_{i-1}` for `i = 0..=d`, `d = dim(P) + 1`.
fn lift_delta(dv: &DeltaVector, extra: i64) -> Result<DeltaVector> {
    let d = dv.dim() as i64 + 1;
    let entries = (0..=d)
        .map(|i| {
            let i_ = i as isize;
            BigInt::from(i + 1) * dv.get(i_) + BigInt::from(d - i + extra) * dv.get(i_ - 1)
        })
        .collect();
    DeltaVector::new(entries)
}

/// The pyramid transform: `Ehr_Q(t) = Ehr_P(t) / (1 - t)` keeps the
/// numerator, so the δ-vector only gains a trailing zero.
pub fn pyramid_delta_formula(dv: &DeltaVector) -> DeltaVector {
    dv.padded()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::delta_vector;

    fn poly(v: &[&[i64]]) -> Polytope {
        Polytope::new(v.iter().map(|c| LatticePoint::from_i64s(c))).unwrap()
    }

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        let mut out: Vec<_> = v.iter().map(|c| LatticePoint::from_i64s(c)).collect();
        out.sort();
        out
    }

    fn dv(e: &[i64]) -> DeltaVector {
        DeltaVector::from_i64s(e).unwrap()
    }

    fn segment() -> Polytope {
        poly(&[&[-1], &[1]])
    }

    fn triangle() -> Polytope {
        poly(&[&[1, 0], &[-1, 2], &[-1, -1]])
    }

    fn square() -> Polytope {
        poly(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]])
    }

    #[test]
    fn prism_sym_examples() {
        assert_eq!(prism_sym(&segment()), square());
        let a = prism_sym(&triangle());
        assert_eq!((a.dim(), a.num_vertices()), (3, 6));
        assert!(a.is_reflexive());
        let t = triangle();
        assert_eq!(
            prism_sym(&t).polar_dual().unwrap(),
            bipyramid(&t.polar_dual().unwrap())
        );
    }

    #[test]
    fn bipyramid_examples() {
        assert_eq!(
            bipyramid(&segment()).vertices(),
            pts(&[&[-1, 0], &[1, 0], &[0, 1], &[0, -1]]).as_slice()
        );
        let b = bipyramid(&square());
        assert_eq!(b.num_vertices(), 6);
        assert!(b.is_reflexive());
        assert_eq!(
            b.polar_dual().unwrap(),
            prism_sym(&square().polar_dual().unwrap())
        );
    }

    #[test]
    fn bipyramid_filters_when_origin_outside() {
        // origin is a vertex of the base: (0,0) is no longer a vertex
        let base = poly(&[&[0], &[2]]);
        let b = bipyramid(&base);
        assert_eq!(b.vertices(), pts(&[&[0, -1], &[0, 1], &[2, 0]]).as_slice());
    }

    #[test]
    fn gamma_examples() {
        let g = gamma(&segment());
        assert_eq!(
            g.vertices(),
            pts(&[&[-1, 0], &[1, 0], &[-1, -1], &[1, -1], &[0, 1]]).as_slice()
        );
        assert!(g.is_reflexive());
        let g = gamma(&triangle());
        assert_eq!((g.dim(), g.num_vertices(), g.num_facets()), (3, 7, 7));
        assert!(g.is_reflexive());
    }

    #[test]
    fn gamma_filters_when_origin_outside() {
        let g = gamma(&poly(&[&[1], &[2]]));
        // (1,0) lies on the segment from (0,1) to (2,-1)
        assert_eq!(
            g.vertices(),
            pts(&[&[0, 1], &[1, -1], &[2, -1], &[2, 0]]).as_slice()
        );
    }

    #[test]
    fn prism01_and_pyramid() {
        assert_eq!(
            prism01(&poly(&[&[0], &[1]])),
            poly(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])
        );
        assert_eq!(
            pyramid(&poly(&[&[0], &[1]])),
            poly(&[&[0, 0], &[1, 0], &[0, 1]])
        );
        let pyr = pyramid(&square());
        assert_eq!(pyr.num_vertices(), 5);
        assert_eq!(delta_vector(&pyr).unwrap(), dv(&[1, 6, 1, 0]));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(gamma_delta_formula(&dv(&[1, 1])).unwrap(), dv(&[1, 4, 1]));
        assert_eq!(
            gamma_delta_formula(&dv(&[1, 4, 1])).unwrap(),
            dv(&[1, 11, 11, 1])
        );
        assert_eq!(
            gamma_delta_formula(&dv(&[1, 0, 0])).unwrap(),
            dv(&[1, 3, 0, 0])
        );
        assert_eq!(prism_delta_formula(&dv(&[1, 1])).unwrap(), dv(&[1, 3, 0]));
        assert_eq!(prism_delta_formula(&dv(&[1, 0])).unwrap(), dv(&[1, 1, 0]));
        assert_eq!(pyramid_delta_formula(&dv(&[1, 6, 1])), dv(&[1, 6, 1, 0]));
    }

    #[test]
    fn formulas_match_counting_on_small_cases() {
        for p in [segment(), triangle(), square()] {
            let base = delta_vector(&p).unwrap();
            assert_eq!(
                delta_vector(&gamma(&p)).unwrap(),
                gamma_delta_formula(&base).unwrap()
            );
            assert_eq!(
                delta_vector(&prism01(&p)).unwrap(),
                prism_delta_formula(&base).unwrap()
            );
            assert_eq!(
                delta_vector(&pyramid(&p)).unwrap(),
                pyramid_delta_formula(&base)
            );
        }
    }

    #[test]
    fn gamma_formula_is_injective() {
        // With δ_0 fixed, the triangular system recovers the base vector.
        let a = dv(&[1, 4, 1]);
        let b = dv(&[1, 5, 0]);
        assert_ne!(
            gamma_delta_formula(&a).unwrap(),
            gamma_delta_formula(&b).unwrap()
        );
    }
}
