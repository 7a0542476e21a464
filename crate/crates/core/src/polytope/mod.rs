//! Full-dimensional integral polytopes.
//!
//! The vertex set is the source of truth. Facets and the facets of the
//! coordinate projections (used for lattice point scanning) are computed at
//! most once and cached.

mod hull;
mod scan;

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ehrhart;
use crate::error::{Error, Result};
use crate::lattice::{content, determinant, Matrix};
use crate::LatticePoint;

pub(crate) use scan::Scanner;

/// The closed halfspace `<normal, x> <= offset` with a primitive normal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    normal: LatticePoint,
    offset: BigInt,
}

impl HalfSpace {
    /// Fails with [`Error::ZeroVector`] for a zero normal. A non-primitive
    /// normal is divided by its content, rounding the offset down.
    pub fn new(normal: LatticePoint, offset: BigInt) -> Result<Self> {
        let g = content(normal.coords());
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let normal = LatticePoint::new(normal.coords().iter().map(|a| a / &g).collect());
        let offset = num_integer::Integer::div_floor(&offset, &g);
        Ok(HalfSpace { normal, offset })
    }

    pub(crate) fn new_unchecked(normal: LatticePoint, offset: BigInt) -> Self {
        debug_assert!(content(normal.coords()).is_one());
        HalfSpace { normal, offset }
    }

    pub fn normal(&self) -> &LatticePoint {
        &self.normal
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    /// Lattice distance `offset - <normal, x>`; nonnegative inside.
    pub fn slack(&self, x: &LatticePoint) -> BigInt {
        &self.offset - self.normal.dot(x)
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &LatticePoint) -> bool {
        self.slack(x).is_zero()
    }
}

impl PartialOrd for HalfSpace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfSpace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.normal
            .cmp(&other.normal)
            .then_with(|| self.offset.cmp(&other.offset))
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·x <= {}", self.normal, self.offset)
    }
}

impl fmt::Debug for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A full-dimensional convex polytope with integer vertices.
pub struct Polytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
    facets: OnceLock<Vec<HalfSpace>>,
    projections: OnceLock<Scanner>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Polytope {
            dim: self.dim,
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            projections: self.projections.clone(),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

/// Convex hull of `points`, keeping only the points that are vertices.
pub fn make_polytope<I>(points: I) -> Result<Polytope>
where
    I: IntoIterator<Item = LatticePoint>,
{
    Polytope::new(points)
}

impl Polytope {
    /// See [`make_polytope`].
    pub fn new<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticePoint>,
    {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        let dim = pts.first().ok_or(Error::EmptyInput)?.dim();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(bad) = pts.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        pts.sort();
        pts.dedup();
        let affine_dim = hull::affine_dimension(&pts).expect("nonempty");
        if affine_dim < dim {
            return Err(Error::NotFullDimensional { dim, affine_dim });
        }
        let facets = hull::facets_of(&pts, dim);
        let keep = hull::vertex_indices(&pts, &facets, dim);
        let vertices: Vec<LatticePoint> = keep.into_iter().map(|i| pts[i].clone()).collect();
        let p = Polytope {
            dim,
            vertices,
            facets: OnceLock::new(),
            projections: OnceLock::new(),
        };
        let _ = p.facets.set(facets);
        Ok(p)
    }

    /// Builds from a list already known to be exactly the vertex set of a
    /// full-dimensional polytope. Debug builds re-verify minimality.
    pub(crate) fn from_vertices_unchecked(dim: usize, mut vertices: Vec<LatticePoint>) -> Self {
        vertices.sort();
        vertices.dedup();
        let p = Polytope {
            dim,
            vertices,
            facets: OnceLock::new(),
            projections: OnceLock::new(),
        };
        #[cfg(debug_assertions)]
        {
            let check =
                Polytope::new(p.vertices.clone()).expect("construction is full-dimensional");
            assert_eq!(
                check.vertices, p.vertices,
                "construction produced a non-vertex"
            );
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Irredundant outward H-representation, sorted by normal then offset.
    pub fn facets(&self) -> &[HalfSpace] {
        self.facets
            .get_or_init(|| hull::facets_of(&self.vertices, self.dim))
    }

    pub fn num_facets(&self) -> usize {
        self.facets().len()
    }

    pub(crate) fn scanner(&self) -> &Scanner {
        self.projections.get_or_init(|| {
            let projections: Vec<Vec<_>> = (1..=self.dim)
                .map(|k| {
                    if k == self.dim {
                        return self.facets().to_vec();
                    }
                    let mut pts: Vec<LatticePoint> = self
                        .vertices
                        .iter()
                        .map(|v| LatticePoint::new(v.coords()[..k].to_vec()))
                        .collect();
                    pts.sort();
                    pts.dedup();
                    hull::facets_of(&pts, k)
                })
                .collect();
            Scanner::new(&projections)
        })
    }

    fn check_dim(&self, x: &LatticePoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Membership in `P` (`strict = false`) or in its interior (`strict = true`).
    pub fn contains(&self, x: &LatticePoint, strict: bool) -> Result<bool> {
        self.check_dim(x)?;
        Ok(self.facets().iter().all(|h| {
            let s = h.slack(x);
            if strict {
                s.is_positive()
            } else {
                !s.is_negative()
            }
        }))
    }

    pub fn origin_is_interior(&self) -> bool {
        self.contains(&LatticePoint::zero(self.dim), true)
            .expect("same dimension")
    }

    /// All lattice points of `P`, or of its interior when `strict`,
    /// in lexicographic order.
    pub fn lattice_points(&self, strict: bool) -> Vec<LatticePoint> {
        let all = self.scanner().points(1);
        if !strict {
            return all;
        }
        all.into_iter()
            .filter(|x| self.facets().iter().all(|h| h.slack(x).is_positive()))
            .collect()
    }

    /// Polar dual `{y : <x, y> <= 1 for all x in P}`, required to be integral.
    pub fn polar_dual(&self) -> Result<Polytope> {
        if !self.origin_is_interior() {
            return Err(Error::OriginNotInterior);
        }
        let mut verts = Vec::with_capacity(self.num_facets());
        for h in self.facets() {
            // normal is primitive, so normal / offset is integral iff offset == 1
            if !h.offset().is_one() {
                return Err(Error::NotIntegral {
                    normal: h.normal().clone(),
                    offset: h.offset().clone(),
                });
            }
            verts.push(h.normal().clone());
        }
        Ok(Polytope::from_vertices_unchecked(self.dim, verts))
    }

    /// Origin is interior and every facet sits at lattice distance 1 from it.
    ///
    /// With every offset 1, an interior lattice point `x` has `<a, x> <= 0`
    /// for all facet normals `a`; the normals positively span `ℝ^d`, so
    /// `x = 0` is the only one.
    pub fn is_reflexive(&self) -> bool {
        self.origin_is_interior() && self.facets().iter().all(|h| h.offset().is_one())
    }

    /// `d!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> Result<BigInt> {
        if self.is_simplex() {
            Ok(self.simplex_volume())
        } else {
            Ok(ehrhart::delta_vector(self)?.sum())
        }
    }

    /// `|det(v_1 - v_0, ..., v_d - v_0)|`; only meaningful for simplices.
    pub(crate) fn simplex_volume(&self) -> BigInt {
        debug_assert!(self.is_simplex());
        let v0 = &self.vertices[0];
        let rows: Vec<LatticePoint> = self.vertices[1..].iter().map(|v| v.sub(v0)).collect();
        determinant(&Matrix::from_points(&rows).expect("square"))
            .expect("square")
            .abs()
    }

    /// `incidence[i][j]` iff vertex `i` is tight on facet `j`.
    pub fn vertex_facet_incidence(&self) -> Vec<Vec<bool>> {
        self.vertices
            .iter()
            .map(|v| self.facets().iter().map(|h| h.is_tight(v)).collect())
            .collect()
    }

    /// `slack[i][j]` = lattice distance of vertex `i` from facet `j`.
    pub fn vertex_facet_slack(&self) -> Vec<Vec<BigInt>> {
        self.vertices
            .iter()
            .map(|v| self.facets().iter().map(|h| h.slack(v)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|c| LatticePoint::from_i64s(c)).collect()
    }

    fn poly(v: &[&[i64]]) -> Polytope {
        Polytope::new(pts(v)).unwrap()
    }

    fn hs(n: &[i64], c: i64) -> HalfSpace {
        HalfSpace::new(LatticePoint::from_i64s(n), BigInt::from(c)).unwrap()
    }

    fn triangle() -> Polytope {
        poly(&[&[1, 0], &[-1, 2], &[-1, -1]])
    }

    fn square(r: i64) -> Polytope {
        poly(&[&[-r, -r], &[-r, r], &[r, -r], &[r, r]])
    }

    #[test]
    fn make_polytope_filters_non_vertices() {
        assert_eq!(
            poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).num_vertices(),
            4
        );
        let t = poly(&[&[0, 0], &[2, 0], &[1, 0], &[0, 2]]);
        assert_eq!(t.vertices(), pts(&[&[0, 0], &[0, 2], &[2, 0]]).as_slice());
        assert_eq!(
            triangle().vertices(),
            pts(&[&[-1, -1], &[-1, 2], &[1, 0]]).as_slice()
        );
        // interior and duplicate points vanish
        let s = poly(&[&[0, 0], &[1, 1], &[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]);
        assert_eq!(s, square(1));
    }

    #[test]
    fn make_polytope_errors() {
        assert_eq!(Polytope::new(Vec::new()), Err(Error::EmptyInput));
        assert_eq!(
            Polytope::new(pts(&[&[0, 0], &[1, 1], &[2, 2]])),
            Err(Error::NotFullDimensional {
                dim: 2,
                affine_dim: 1
            })
        );
        assert_eq!(
            Polytope::new(pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[5, 7, 0]])),
            Err(Error::NotFullDimensional {
                dim: 3,
                affine_dim: 2
            })
        );
        assert!(matches!(
            Polytope::new(vec![
                LatticePoint::from_i64s(&[0]),
                LatticePoint::from_i64s(&[1, 2])
            ]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            Polytope::new(vec![LatticePoint::from_i64s(&[])]),
            Err(Error::ZeroDimension)
        );
    }

    #[test]
    fn facets_of_square_and_triangle() {
        let sq = square(1);
        assert_eq!(
            sq.facets(),
            &[
                hs(&[-1, 0], 1),
                hs(&[0, -1], 1),
                hs(&[0, 1], 1),
                hs(&[1, 0], 1)
            ]
        );
        assert_eq!(
            triangle().facets(),
            &[hs(&[-1, 0], 1), hs(&[1, -2], 1), hs(&[1, 1], 1)]
        );
    }

    #[test]
    fn facets_of_segment_gamma() {
        let p = poly(&[&[-1, 0], &[1, 0], &[-1, -1], &[1, -1], &[0, 1]]);
        assert_eq!(
            p.facets(),
            &[
                hs(&[-1, 0], 1),
                hs(&[-1, 1], 1),
                hs(&[0, -1], 1),
                hs(&[1, 0], 1),
                hs(&[1, 1], 1)
            ]
        );
    }

    #[test]
    fn facets_in_one_dimension() {
        let seg = poly(&[&[3], &[-2], &[0]]);
        assert_eq!(seg.vertices(), pts(&[&[-2], &[3]]).as_slice());
        assert_eq!(seg.facets(), &[hs(&[-1], 2), hs(&[1], 3)]);
    }

    #[test]
    fn contains_examples() {
        let sq = square(1);
        let one = LatticePoint::from_i64s(&[1, 1]);
        assert!(sq.contains(&one, false).unwrap());
        assert!(!sq.contains(&one, true).unwrap());
        assert!(triangle().contains(&LatticePoint::zero(2), true).unwrap());
        assert!(matches!(
            sq.contains(&LatticePoint::zero(3), false),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lattice_points_examples() {
        let unit = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(unit.lattice_points(false).len(), 3);
        assert_eq!(
            triangle().lattice_points(false),
            pts(&[
                &[-1, -1],
                &[-1, 0],
                &[-1, 1],
                &[-1, 2],
                &[0, 0],
                &[0, 1],
                &[1, 0]
            ])
        );
        assert_eq!(triangle().lattice_points(true), pts(&[&[0, 0]]));
    }

    #[test]
    fn polar_dual_examples() {
        let dual = triangle().polar_dual().unwrap();
        assert_eq!(
            dual.vertices(),
            pts(&[&[-1, 0], &[1, -2], &[1, 1]]).as_slice()
        );

        let p = poly(&[
            &[-1, 0, 1],
            &[-1, 0, -1],
            &[1, 1, 1],
            &[1, 1, -1],
            &[0, -1, 1],
            &[0, -1, -1],
        ]);
        let dual = p.polar_dual().unwrap();
        let mut expect = pts(&[
            &[0, 0, 1],
            &[0, 0, -1],
            &[2, -1, 0],
            &[-1, 2, 0],
            &[-1, -1, 0],
        ]);
        expect.sort();
        assert_eq!(dual.vertices(), expect.as_slice());

        assert!(matches!(
            square(2).polar_dual(),
            Err(Error::NotIntegral { .. })
        ));
        let shifted = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(shifted.polar_dual(), Err(Error::OriginNotInterior));
    }

    #[test]
    fn reflexive_examples() {
        assert!(triangle().is_reflexive());
        assert!(square(1).is_reflexive());
        assert!(!poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).is_reflexive());
        assert!(!square(2).is_reflexive());
    }

    #[test]
    fn normalized_volume_examples() {
        for d in 1..=4 {
            let mut v = vec![LatticePoint::zero(d)];
            v.extend((0..d).map(|i| LatticePoint::unit(d, i)));
            assert_eq!(
                Polytope::new(v).unwrap().normalized_volume().unwrap(),
                BigInt::from(1)
            );
        }
        assert_eq!(triangle().normalized_volume().unwrap(), BigInt::from(6));
        assert_eq!(square(1).normalized_volume().unwrap(), BigInt::from(8));
    }

    #[test]
    fn incidence_row_sums() {
        let inc = triangle().vertex_facet_incidence();
        assert!(inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 2));
        let cube = poly(&[
            &[-1, -1, -1],
            &[-1, -1, 1],
            &[-1, 1, -1],
            &[-1, 1, 1],
            &[1, -1, -1],
            &[1, -1, 1],
            &[1, 1, -1],
            &[1, 1, 1],
        ]);
        let inc = cube.vertex_facet_incidence();
        assert!(inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 3));
        let p = poly(&[
            &[-1, 0, 1],
            &[-1, 0, -1],
            &[1, 1, 1],
            &[1, 1, -1],
            &[0, -1, 1],
            &[0, -1, -1],
        ]);
        let inc = p.vertex_facet_incidence();
        assert_eq!((inc.len(), inc[0].len()), (6, 5));
        assert!(inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 3));
    }
}
