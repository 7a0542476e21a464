//! The Sylvester sequence and a family of self-dual reflexive simplices.
//!
//! `b_0 = 2`, `b_n = 1 + b_0 b_1 ... b_{n-1}`. For `d >= 3` the simplex with
//! vertices
//!
//! ```text
//! v_0 = -3 e_1 - 2 (e_2 + ... + e_d)
//! v_1 = e_1
//! v_i = e_1 + 2 e_i               (i = 2, 3)
//! v_i = e_1 + 2 b_{i-4} e_i       (i = 4..=d)
//! ```
//!
//! is reflexive and unimodularly equivalent to its polar dual, with
//! normalized volume `2^{d+1} b_0 ... b_{d-4}`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::equivalence::UnimodularMap;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::{IntMatrix, LatticePoint};

/// Lazily extended `b_0, b_1, ...`.
#[derive(Debug, Default)]
pub struct SylvesterSequence {
    values: Vec<BigInt>,
}

impl SylvesterSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: usize) -> &BigInt {
        while self.values.len() <= n {
            let next = match self.values.last() {
                None => BigInt::from(2),
                // b_n = 1 + b_0...b_{n-1} = b_{n-1}^2 - b_{n-1} + 1
                Some(b) => b * b - b + BigInt::one(),
            };
            self.values.push(next);
        }
        &self.values[n]
    }

    /// `b_0 b_1 ... b_{n-1}` (empty product for `n = 0`).
    pub fn product(&mut self, n: usize) -> BigInt {
        (0..n).map(|i| self.get(i).clone()).product()
    }
}

static SEQUENCE: Mutex<SylvesterSequence> = Mutex::new(SylvesterSequence { values: Vec::new() });

/// `b_n`.
pub fn sylvester(n: usize) -> BigInt {
    SEQUENCE.lock().expect("sequence lock").get(n).clone()
}

/// `b_0 b_1 ... b_{n-1}`.
pub fn sylvester_product(n: usize) -> BigInt {
    SEQUENCE.lock().expect("sequence lock").product(n)
}

fn check_dim(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { min: 3, got: d });
    }
    Ok(())
}

/// The self-dual reflexive simplex of dimension `d >= 3`.
pub fn sylvester_simplex(d: usize) -> Result<Polytope> {
    check_dim(d)?;
    let mut verts = Vec::with_capacity(d + 1);
    let mut v0 = vec![BigInt::from(-2); d];
    v0[0] = BigInt::from(-3);
    verts.push(LatticePoint::new(v0));
    verts.push(LatticePoint::unit(d, 0));
    for i in 2..=d {
        let mut v = vec![BigInt::from(0); d];
        v[0] = BigInt::one();
        v[i - 1] = if i <= 3 {
            BigInt::from(2)
        } else {
            BigInt::from(2) * sylvester(i - 4)
        };
        verts.push(LatticePoint::new(v));
    }
    Ok(Polytope::from_vertices_unchecked(d, verts))
}

/// Normal `(a_1, ..., a_d)` of the facet opposite `v_1`, at level 1:
/// `a_1 = -(4B - 1)`, `a_2 = a_3 = 2B`, `a_i = 2B / b_{i-4}` for `i >= 4`,
/// where `B = b_0 ... b_{d-4}`.
pub fn sylvester_facet_normal(d: usize) -> Result<LatticePoint> {
    check_dim(d)?;
    let big_b = sylvester_product(d - 3);
    let four_b = BigInt::from(4) * &big_b;
    let mut a = Vec::with_capacity(d);
    a.push(-(four_b.clone() - BigInt::one()));
    a.push(BigInt::from(2) * &big_b);
    a.push(BigInt::from(2) * &big_b);
    for i in 4..=d {
        a.push(&four_b / (BigInt::from(2) * sylvester(i - 4)));
    }
    Ok(LatticePoint::new(a))
}

/// `2^{d+1} b_0 ... b_{d-4}`.
pub fn sylvester_volume(d: usize) -> Result<BigInt> {
    check_dim(d)?;
    Ok(BigInt::from(2).pow(d as u32 + 1) * sylvester_product(d - 3))
}

/// The explicit linear map `x ↦ x U` carrying the dual simplex onto the
/// simplex. Row 1 is `(1, 2, 0, ..., 0)`, row 2 is `(2, 2, 1, ..., 1)`,
/// row 3 is `(0, 1, -1, 0, ..., 0)` and row `i >= 4` has a 1 in column 2 and
/// `-b_{i-4}` on the diagonal.
pub fn sylvester_simplex_dual_map(d: usize) -> Result<UnimodularMap> {
    check_dim(d)?;
    let mut u = IntMatrix::zeros(d, d);
    u[(0, 0)] = BigInt::one();
    u[(0, 1)] = BigInt::from(2);
    u[(1, 0)] = BigInt::from(2);
    u[(1, 1)] = BigInt::from(2);
    for j in 2..d {
        u[(1, j)] = BigInt::one();
    }
    u[(2, 1)] = BigInt::one();
    u[(2, 2)] = BigInt::from(-1);
    for i in 3..d {
        u[(i, 1)] = BigInt::one();
        u[(i, i)] = -sylvester(i - 3);
    }
    UnimodularMap::new(u, LatticePoint::zero(d))
}

/// Both sides of `(d+1)^{d+1} <= Vol(P) Vol(P^∨) <= (b_d - 1)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NillBounds {
    pub volume: BigInt,
    pub dual_volume: BigInt,
    pub product: BigInt,
    pub lower: BigInt,
    pub upper: BigInt,
}

impl NillBounds {
    pub fn lower_holds(&self) -> bool {
        self.lower <= self.product
    }

    pub fn upper_holds(&self) -> bool {
        self.product <= self.upper
    }

    pub fn passed(&self) -> bool {
        self.lower_holds() && self.upper_holds()
    }
}

pub fn nill_bounds_check(p: &Polytope) -> Result<NillBounds> {
    if !p.is_simplex() {
        return Err(Error::NotASimplex {
            dim: p.dim(),
            vertices: p.num_vertices(),
        });
    }
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let d = p.dim();
    let dual = p.polar_dual()?;
    let volume = p.simplex_volume();
    let dual_volume = dual.simplex_volume();
    let product = &volume * &dual_volume;
    let lower = BigInt::from(d + 1).pow(d as u32 + 1);
    let bd1 = sylvester(d) - BigInt::one();
    let upper = &bd1 * &bd1;
    Ok(NillBounds {
        volume,
        dual_volume,
        product,
        lower,
        upper,
    })
}
