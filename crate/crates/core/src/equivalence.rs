//! Unimodular equivalence of integral polytopes.
//!
//! `P ≅ Q` when `Q = f_U(P) + w` for an integer matrix `U` with
//! `det U = ±1` and an integer vector `w`, where `f_U(x) = x U`.
//!
//! [`are_equivalent`] fixes an affinely independent anchor tuple of vertices
//! of `P` and tries every compatible ordered tuple of vertices of `Q`. A
//! candidate vertex must have the same multiset of lattice distances to the
//! facets as the anchor vertex it replaces, and every pair of candidates must
//! have the same joint distance multiset as the corresponding anchor pair.
//! Both are unimodular invariants, so the search stays exhaustive.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::constructions::gamma;
use crate::ehrhart::{delta_vector_auto, DeltaVector};
use crate::error::{Error, Result};
use crate::lattice::{adjugate, determinant, rank};
use crate::polytope::Polytope;
use crate::{IntMatrix, LatticePoint};

/// `x ↦ x U + w` with `|det U| = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    matrix: IntMatrix,
    translation: LatticePoint,
}

impl UnimodularMap {
    pub fn new(matrix: IntMatrix, translation: LatticePoint) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if translation.dim() != matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                got: translation.dim(),
            });
        }
        let det = determinant(&matrix)?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular { det });
        }
        Ok(UnimodularMap {
            matrix,
            translation,
        })
    }

    pub fn identity(d: usize) -> Self {
        UnimodularMap {
            matrix: IntMatrix::identity(d),
            translation: LatticePoint::zero(d),
        }
    }

    pub fn linear(matrix: IntMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, LatticePoint::zero(d))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &LatticePoint {
        &self.translation
    }

    pub fn is_linear(&self) -> bool {
        self.translation.is_zero()
    }

    pub fn apply_point(&self, x: &LatticePoint) -> LatticePoint {
        x.mul_matrix(&self.matrix).add(&self.translation)
    }

    pub fn inverse(&self) -> Self {
        let (adj, det) = adjugate(&self.matrix).expect("unimodular matrices are invertible");
        // det = ±1, so U^{-1} = adj(U) / det = adj(U) * det
        let d = self.dim();
        let inv =
            IntMatrix::new(d, d, adj.entries().iter().map(|e| e * &det).collect()).expect("square");
        let translation = self.translation.mul_matrix(&inv).neg();
        UnimodularMap {
            matrix: inv,
            translation,
        }
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Self) -> Self {
        let matrix = self.matrix.mul(&then.matrix).expect("same dimension");
        let translation = then.apply_point(&self.translation);
        UnimodularMap {
            matrix,
            translation,
        }
    }
}

impl fmt::Display for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = self.matrix.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "U[{i}] = {}", row.join(" "))?;
        }
        write!(f, "w = {}", self.translation)
    }
}

impl fmt::Debug for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Image of `p` under `m`.
pub fn apply_map(m: &UnimodularMap, p: &Polytope) -> Result<Polytope> {
    if m.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: m.dim(),
        });
    }
    let verts = p.vertices().iter().map(|v| m.apply_point(v)).collect();
    Ok(Polytope::from_vertices_unchecked(p.dim(), verts))
}

/// A random unimodular map built from elementary column shears, swaps and
/// sign flips, with a translation in `[-3, 3]^d`.
pub fn random_unimodular<R: Rng + ?Sized>(d: usize, steps: usize, rng: &mut R) -> UnimodularMap {
    let mut u = IntMatrix::identity(d);
    for _ in 0..steps {
        match rng.gen_range(0..4) {
            0 | 1 if d > 1 => {
                let (i, j) = distinct_pair(d, rng);
                let k = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2));
                u.add_col_multiple(i, j, &k);
            }
            2 if d > 1 => {
                let (i, j) = distinct_pair(d, rng);
                u.swap_cols(i, j);
            }
            _ => u.negate_col(rng.gen_range(0..d)),
        }
    }
    let w = LatticePoint::new(
        (0..d)
            .map(|_| BigInt::from(rng.gen_range(-3..=3)))
            .collect(),
    );
    UnimodularMap::new(u, w).expect("elementary operations preserve |det| = 1")
}

fn distinct_pair<R: Rng + ?Sized>(d: usize, rng: &mut R) -> (usize, usize) {
    let i = rng.gen_range(0..d);
    let j = (i + rng.gen_range(1..d)) % d;
    (i, j)
}

/// Unimodular invariants used to reject inequivalent pairs early.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub num_vertices: usize,
    pub num_facets: usize,
    pub volume: BigInt,
    pub delta: DeltaVector,
    pub lattice_points: BigInt,
    pub interior_points: BigInt,
    /// Number of facets through each vertex, sorted.
    pub vertex_degrees: Vec<usize>,
    /// Number of vertices on each facet, sorted.
    pub facet_sizes: Vec<usize>,
}

pub fn fingerprint(p: &Polytope) -> Result<Fingerprint> {
    let d = p.dim();
    let delta = delta_vector_auto(p)?;
    let inc = p.vertex_facet_incidence();
    let mut vertex_degrees: Vec<usize> = inc
        .iter()
        .map(|r| r.iter().filter(|&&b| b).count())
        .collect();
    vertex_degrees.sort_unstable();
    let mut facet_sizes: Vec<usize> = (0..p.num_facets())
        .map(|j| inc.iter().filter(|r| r[j]).count())
        .collect();
    facet_sizes.sort_unstable();
    Ok(Fingerprint {
        dim: d,
        num_vertices: p.num_vertices(),
        num_facets: p.num_facets(),
        volume: delta.sum(),
        lattice_points: delta.get(1) + BigInt::from(d + 1),
        interior_points: delta.get(d as isize),
        delta,
        vertex_degrees,
        facet_sizes,
    })
}

/// A witness `m` with `apply_map(m, p) = q`, or `None` when the polytopes
/// are not unimodularly equivalent.
pub fn are_equivalent(p: &Polytope, q: &Polytope) -> Result<Option<UnimodularMap>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let (fp, fq) = (fingerprint(p)?, fingerprint(q)?);
    Ok(search_with(p, q, &fp, &fq))
}

fn search_with(
    p: &Polytope,
    q: &Polytope,
    fp: &Fingerprint,
    fq: &Fingerprint,
) -> Option<UnimodularMap> {
    if fp != fq {
        return None;
    }
    let sp = Side::new(p);
    let sq = Side::new(q);
    let mut a: Vec<&Vec<BigInt>> = sp.sig.iter().collect();
    let mut b: Vec<&Vec<BigInt>> = sq.sig.iter().collect();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let centers = if fp.interior_points.is_one() {
        let cp = p.lattice_points(true).pop().expect("one interior point");
        let cq = q.lattice_points(true).pop().expect("one interior point");
        Some((cp, cq))
    } else {
        None
    };
    let m = Search::new(&sp, &sq, centers).run()?;
    debug_assert_eq!(apply_map(&m, p).ok().as_ref(), Some(q));
    Some(m)
}

/// Per-polytope data for the search.
struct Side<'a> {
    verts: &'a [LatticePoint],
    slack: Vec<Vec<BigInt>>,
    /// Sorted slack row of each vertex.
    sig: Vec<Vec<BigInt>>,
}

impl<'a> Side<'a> {
    fn new(p: &'a Polytope) -> Self {
        let slack = p.vertex_facet_slack();
        let sig = slack
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort();
                r
            })
            .collect();
        Side {
            verts: p.vertices(),
            slack,
            sig,
        }
    }

    fn pair_sig(&self, a: usize, b: usize) -> Vec<(&BigInt, &BigInt)> {
        let mut v: Vec<_> = self.slack[a].iter().zip(&self.slack[b]).collect();
        v.sort();
        v
    }
}

struct Search<'a> {
    p: &'a Side<'a>,
    q: &'a Side<'a>,
    /// Interior points to pin onto each other, forcing a linear search.
    centers: Option<(LatticePoint, LatticePoint)>,
    anchor: Vec<usize>,
    anchor_pairs: Vec<Vec<Vec<(&'a BigInt, &'a BigInt)>>>,
    /// Rows of the anchor frame, its adjugate and determinant.
    adj: IntMatrix,
    det: BigInt,
    p_sorted: Vec<LatticePoint>,
}

impl<'a> Search<'a> {
    fn new(
        p: &'a Side<'a>,
        q: &'a Side<'a>,
        centers: Option<(LatticePoint, LatticePoint)>,
    ) -> Self {
        let d = p.verts[0].dim();
        let cp = centers.as_ref().map(|c| c.0.clone());
        let anchor = choose_anchor(p.verts, cp.as_ref(), d);
        let frame = frame_rows(p.verts, &anchor, cp.as_ref());
        let (adj, det) = adjugate(&IntMatrix::from_points(&frame).expect("square"))
            .expect("anchor is independent");
        let anchor_pairs = (0..anchor.len())
            .map(|k| (0..k).map(|i| p.pair_sig(anchor[i], anchor[k])).collect())
            .collect();
        let mut p_sorted = p.verts.to_vec();
        p_sorted.sort();
        Search {
            p,
            q,
            centers,
            anchor,
            anchor_pairs,
            adj,
            det,
            p_sorted,
        }
    }

    fn run(&self) -> Option<UnimodularMap> {
        let first = self.anchor[0];
        (0..self.q.verts.len())
            .into_par_iter()
            .filter(|&j| self.q.sig[j] == self.p.sig[first])
            .find_map_first(|j| {
                let mut chosen = vec![j];
                self.extend(&mut chosen)
            })
    }

    fn extend(&self, chosen: &mut Vec<usize>) -> Option<UnimodularMap> {
        let k = chosen.len();
        if k == self.anchor.len() {
            return self.solve(chosen);
        }
        let target = &self.p.sig[self.anchor[k]];
        for j in 0..self.q.verts.len() {
            if chosen.contains(&j) || &self.q.sig[j] != target {
                continue;
            }
            let compatible = chosen
                .iter()
                .enumerate()
                .all(|(i, &c)| self.q.pair_sig(c, j) == self.anchor_pairs[k][i]);
            if !compatible {
                continue;
            }
            chosen.push(j);
            if let Some(m) = self.extend(chosen) {
                return Some(m);
            }
            chosen.pop();
        }
        None
    }

    fn solve(&self, chosen: &[usize]) -> Option<UnimodularMap> {
        let cq = self.centers.as_ref().map(|c| &c.1);
        let rows = frame_rows(self.q.verts, chosen, cq);
        let target = IntMatrix::from_points(&rows).expect("square");
        let num = self.adj.mul(&target).expect("square");
        let d = num.rows();
        let mut data = Vec::with_capacity(d * d);
        for e in num.entries() {
            let (quo, rem) = e.div_rem(&self.det);
            if !rem.is_zero() {
                return None;
            }
            data.push(quo);
        }
        let u = IntMatrix::new(d, d, data).expect("square");
        // w maps the base point of the anchor frame onto that of the candidate
        let (from, to) = match &self.centers {
            Some((cp, cq)) => (cp.clone(), cq.clone()),
            None => (
                self.p.verts[self.anchor[0]].clone(),
                self.q.verts[chosen[0]].clone(),
            ),
        };
        let w = to.sub(&from.mul_matrix(&u));
        let m = UnimodularMap::new(u, w).ok()?;
        let mut image: Vec<LatticePoint> = self.p_sorted.iter().map(|v| m.apply_point(v)).collect();
        image.sort();
        (image.as_slice() == self.q.verts).then_some(m)
    }
}

/// Linear case: `d` vertices independent around `center`. Affine case:
/// `d + 1` affinely independent vertices, base point first.
fn choose_anchor(verts: &[LatticePoint], center: Option<&LatticePoint>, d: usize) -> Vec<usize> {
    let mut anchor = Vec::new();
    if center.is_none() {
        anchor.push(0);
    }
    let need = if center.is_some() { d } else { d + 1 };
    for i in 0..verts.len() {
        if anchor.len() == need {
            break;
        }
        if anchor.contains(&i) {
            continue;
        }
        anchor.push(i);
        let rows = frame_rows(verts, &anchor, center);
        let m = IntMatrix::from_points(&rows).expect("rows share a dimension");
        if rank(&m) < rows.len() {
            anchor.pop();
        }
    }
    assert_eq!(
        anchor.len(),
        need,
        "full-dimensional polytope has an independent anchor"
    );
    anchor
}

fn frame_rows(
    verts: &[LatticePoint],
    idx: &[usize],
    center: Option<&LatticePoint>,
) -> Vec<LatticePoint> {
    match center {
        Some(c) => idx.iter().map(|&i| verts[i].sub(c)).collect(),
        None => idx[1..]
            .iter()
            .map(|&i| verts[i].sub(&verts[idx[0]]))
            .collect(),
    }
}

/// Comparison of a reflexive polytope with its polar dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfDuality {
    pub delta_equal: bool,
    pub equivalent: bool,
}

/// Whether `δ(P) = δ(P^∨)`.
pub fn delta_self_dual(p: &Polytope) -> Result<bool> {
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    Ok(delta_vector_auto(p)? == delta_vector_auto(&p.polar_dual()?)?)
}

pub fn classify_self_duality(p: &Polytope) -> Result<SelfDuality> {
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let dual = p.polar_dual()?;
    let (fp, fd) = (fingerprint(p)?, fingerprint(&dual)?);
    let delta_equal = fp.delta == fd.delta;
    let equivalent = search_with(p, &dual, &fp, &fd).is_some();
    if equivalent && !delta_equal {
        return Err(Error::Internal(
            "equivalent polytopes with different δ-vectors".into(),
        ));
    }
    Ok(SelfDuality {
        delta_equal,
        equivalent,
    })
}

/// Outcome of comparing `P, Q` against `Γ(P), Γ(Q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferCheck {
    pub equivalent: bool,
    pub gamma_equivalent: bool,
    pub delta_equal: bool,
    pub gamma_delta_equal: bool,
}

impl TransferCheck {
    pub fn passed(&self) -> bool {
        self.equivalent == self.gamma_equivalent && self.delta_equal == self.gamma_delta_equal
    }
}

/// Both polytopes must contain the origin in their interior: `Γ` is not
/// translation invariant, so the equivalences compared here are linear ones
/// around the origin.
pub fn gamma_equivalence_transfer_check(p: &Polytope, q: &Polytope) -> Result<TransferCheck> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    if !p.origin_is_interior() || !q.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let (gp, gq) = (gamma(p), gamma(q));
    let (fp, fq) = (fingerprint(p)?, fingerprint(q)?);
    let (fgp, fgq) = (fingerprint(&gp)?, fingerprint(&gq)?);
    Ok(TransferCheck {
        equivalent: search_with(p, q, &fp, &fq).is_some(),
        gamma_equivalent: search_with(&gp, &gq, &fgp, &fgq).is_some(),
        delta_equal: fp.delta == fq.delta,
        gamma_delta_equal: fgp.delta == fgq.delta,
    })
}

/// Exact angular order around the origin, starting at the positive x-axis.
fn angle_cmp(a: &[i64; 2], b: &[i64; 2]) -> Ordering {
    let half = |v: &[i64; 2]| v[1] < 0 || (v[1] == 0 && v[0] < 0);
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&(a[0] * b[1] - a[1] * b[0])))
}

fn cross(o: &[i64; 2], a: &[i64; 2], b: &[i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// The edge `u → v` lies at lattice distance 1 from the origin, seen
/// counterclockwise.
fn unit_edge(u: &[i64; 2], v: &[i64; 2]) -> bool {
    let det = u[0] * v[1] - u[1] * v[0];
    det > 0 && det == (v[0] - u[0]).gcd(&(v[1] - u[1]))
}

/// The reflexive polygons up to unimodular equivalence.
///
/// Every edge of a reflexive polygon is at lattice distance 1 from the
/// origin, so the search walks counterclockwise chains of such edges with
/// vertices in `[-3, 3]^2`, at most 6 of them. The box and the vertex cap
/// cover every class; the count of 16 confirms it.
pub fn enumerate_reflexive_2d() -> Vec<Polytope> {
    const R: i64 = 3;
    let mut pts: Vec<[i64; 2]> = (-R..=R)
        .flat_map(|x| (-R..=R).map(move |y| [x, y]))
        .filter(|v| v != &[0, 0])
        .collect();
    pts.sort_by(angle_cmp);

    let mut reps: Vec<(Fingerprint, Polytope)> = Vec::new();
    let mut chain = Vec::with_capacity(6);
    for start in 0..pts.len() {
        chain.push(start);
        walk(&pts, &mut chain, &mut |poly| offer(&mut reps, poly));
        chain.pop();
    }
    let mut out: Vec<Polytope> = reps.into_iter().map(|(_, p)| p).collect();
    out.sort_by_key(rep_key);
    out
}

fn walk(pts: &[[i64; 2]], chain: &mut Vec<usize>, emit: &mut dyn FnMut(Polytope)) {
    let last = *chain.last().expect("nonempty chain");
    let first = chain[0];
    if chain.len() >= 3 {
        let n = chain.len();
        let (a, b) = (&pts[chain[n - 2]], &pts[last]);
        let f = &pts[first];
        if unit_edge(b, f) && cross(a, b, f) > 0 && cross(b, f, &pts[chain[1]]) > 0 {
            let verts = chain
                .iter()
                .map(|&i| LatticePoint::from_i64s(&pts[i]))
                .collect();
            emit(Polytope::from_vertices_unchecked(2, verts));
        }
    }
    if chain.len() == 6 {
        return;
    }
    for next in last + 1..pts.len() {
        let (u, v) = (&pts[last], &pts[next]);
        if !unit_edge(u, v) {
            continue;
        }
        if chain.len() >= 2 && cross(&pts[chain[chain.len() - 2]], u, v) <= 0 {
            continue;
        }
        chain.push(next);
        walk(pts, chain, emit);
        chain.pop();
    }
}

/// Smaller keys are preferred as class representatives.
fn rep_key(p: &Polytope) -> (usize, BigInt, BigInt, Vec<LatticePoint>) {
    let spread = p
        .vertices()
        .iter()
        .flat_map(|v| v.coords().iter().map(|c| c.abs()))
        .max()
        .unwrap_or_default();
    (
        p.num_vertices(),
        p.normalized_volume().expect("valid polygon"),
        spread,
        p.vertices().to_vec(),
    )
}

fn offer(reps: &mut Vec<(Fingerprint, Polytope)>, poly: Polytope) {
    debug_assert!(poly.is_reflexive());
    let fp = fingerprint(&poly).expect("valid polygon");
    for (f, rep) in reps.iter_mut() {
        if *f == fp && search_with(rep, &poly, f, &fp).is_some() {
            if rep_key(&poly) < rep_key(rep) {
                *rep = poly;
            }
            return;
        }
    }
    reps.push((fp, poly));
}
