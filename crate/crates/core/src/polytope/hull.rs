//! Facet enumeration for full-dimensional lattice point sets.
//!
//! Incremental double description: start from a simplex and insert the
//! remaining points one at a time. A new facet is born from each ridge
//! shared by a visible and an invisible facet; ridges are detected
//! combinatorially from the sets of tight points.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{content, dot, orthogonal_complement, rank, Matrix};
use crate::polytope::HalfSpace;
use crate::LatticePoint;

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Self) -> Self {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_superset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| b & !a == 0)
    }
}

struct Facet {
    normal: Vec<BigInt>,
    offset: BigInt,
    tight: BitSet,
}

impl Facet {
    /// `<a, p> - c`: positive means `p` is beyond the facet.
    fn excess(&self, p: &[BigInt]) -> BigInt {
        dot(&self.normal, p) - &self.offset
    }
}

fn normalize(mut normal: Vec<BigInt>, mut offset: BigInt) -> (Vec<BigInt>, BigInt) {
    let g = content(&normal);
    debug_assert!(!g.is_zero());
    if g > BigInt::from(1) {
        for a in normal.iter_mut() {
            *a /= &g;
        }
        debug_assert!((&offset % &g).is_zero());
        offset /= &g;
    }
    (normal, offset)
}

/// Dimension of the affine hull of `points` (`None` for an empty set).
pub(crate) fn affine_dimension(points: &[LatticePoint]) -> Option<usize> {
    let first = points.first()?;
    if points.len() == 1 {
        return Some(0);
    }
    let diffs: Vec<LatticePoint> = points[1..].iter().map(|p| p.sub(first)).collect();
    let m = Matrix::from_points(&diffs).expect("points share a dimension");
    Some(rank(&m))
}

/// Indices of `dim + 1` affinely independent points, greedily in input order.
fn affine_basis(points: &[LatticePoint], dim: usize) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut diffs: Vec<LatticePoint> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        diffs.push(p.sub(&points[0]));
        let m = Matrix::from_points(&diffs).expect("same dimension");
        if rank(&m) == diffs.len() {
            chosen.push(i);
            if chosen.len() == dim + 1 {
                break;
            }
        } else {
            diffs.pop();
        }
    }
    chosen
}

/// Irredundant outward facets of `conv(points)`, primitive normals, sorted.
///
/// `points` must be pairwise distinct and span `ℝ^dim` affinely.
pub(crate) fn facets_of(points: &[LatticePoint], dim: usize) -> Vec<HalfSpace> {
    assert!(dim >= 1);
    if dim == 1 {
        let lo = points.iter().map(|p| &p[0]).min().expect("nonempty");
        let hi = points.iter().map(|p| &p[0]).max().expect("nonempty");
        let mut out = vec![
            HalfSpace::new_unchecked(LatticePoint::from_i64s(&[-1]), -lo.clone()),
            HalfSpace::new_unchecked(LatticePoint::from_i64s(&[1]), hi.clone()),
        ];
        out.sort();
        return out;
    }

    let n = points.len();
    let coords: Vec<&[BigInt]> = points.iter().map(|p| p.coords()).collect();
    let basis = affine_basis(points, dim);
    assert_eq!(basis.len(), dim + 1, "point set is not full-dimensional");

    let mut facets: Vec<Facet> = Vec::new();
    for (skip_pos, &omitted) in basis.iter().enumerate() {
        let others: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip_pos)
            .map(|(_, &i)| i)
            .collect();
        let base = &points[others[0]];
        let rows: Vec<Vec<BigInt>> = others[1..]
            .iter()
            .map(|&i| points[i].sub(base).into_coords())
            .collect();
        let mut normal = orthogonal_complement(&rows).into_coords();
        let mut offset = dot(&normal, base.coords());
        if dot(&normal, coords[omitted]) > offset {
            normal.iter_mut().for_each(|a| *a = -a.clone());
            offset = -offset;
        }
        let (normal, offset) = normalize(normal, offset);
        let mut tight = BitSet::new(n);
        for &i in &others {
            tight.insert(i);
        }
        facets.push(Facet {
            normal,
            offset,
            tight,
        });
    }

    let mut in_basis = vec![false; n];
    for &i in &basis {
        in_basis[i] = true;
    }

    for q in (0..n).filter(|&i| !in_basis[i]) {
        let p = coords[q];
        let excess: Vec<BigInt> = facets.iter().map(|f| f.excess(p)).collect();
        if excess.iter().all(|e| !e.is_positive()) {
            for (f, e) in facets.iter_mut().zip(&excess) {
                if e.is_zero() {
                    f.tight.insert(q);
                }
            }
            continue;
        }

        let mut born = Vec::new();
        for (j, ej) in excess.iter().enumerate().filter(|(_, e)| e.is_positive()) {
            for (k, ek) in excess.iter().enumerate().filter(|(_, e)| e.is_negative()) {
                let ridge = facets[j].tight.and(&facets[k].tight);
                if ridge.len() < dim - 1 {
                    continue;
                }
                let blocked = facets
                    .iter()
                    .enumerate()
                    .any(|(l, f)| l != j && l != k && f.tight.is_superset(&ridge));
                if blocked {
                    continue;
                }
                let (fj, fk) = (&facets[j], &facets[k]);
                let wj = -ek.clone();
                let wk = ej.clone();
                let normal: Vec<BigInt> = fj
                    .normal
                    .iter()
                    .zip(&fk.normal)
                    .map(|(a, b)| &wj * a + &wk * b)
                    .collect();
                let offset = &wj * &fj.offset + &wk * &fk.offset;
                let (normal, offset) = normalize(normal, offset);
                let mut tight = ridge;
                tight.insert(q);
                born.push(Facet {
                    normal,
                    offset,
                    tight,
                });
            }
        }

        let mut kept: Vec<Facet> = Vec::with_capacity(facets.len() + born.len());
        for (mut f, e) in facets.into_iter().zip(&excess) {
            if e.is_positive() {
                continue;
            }
            if e.is_zero() {
                f.tight.insert(q);
            }
            kept.push(f);
        }
        kept.extend(born);
        facets = kept;
    }

    let mut out: Vec<HalfSpace> = facets
        .into_iter()
        .map(|f| HalfSpace::new_unchecked(LatticePoint::new(f.normal), f.offset))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Indices of the points that are vertices of `conv(points)` given its facets:
/// a point is a vertex iff the normals of the facets tight at it have rank `dim`.
pub(crate) fn vertex_indices(
    points: &[LatticePoint],
    facets: &[HalfSpace],
    dim: usize,
) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let tight: Vec<LatticePoint> = facets
                .iter()
                .filter(|h| h.is_tight(p))
                .map(|h| h.normal().clone())
                .collect();
            if tight.len() < dim {
                return false;
            }
            rank(&Matrix::from_points(&tight).expect("same dimension")) == dim
        })
        .map(|(i, _)| i)
        .collect()
}
