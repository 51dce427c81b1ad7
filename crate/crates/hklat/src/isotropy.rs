//! Search and enumeration of primitive isotropic vectors and isotropic
//! pairs.
//!
//! Rays are primitive isotropic vectors up to sign, kept with a canonical
//! representative (first nonzero coordinate positive). Pairs of
//! non-orthogonal rays carry the invariant N = |q(x, y)|, which is
//! preserved by every isometry of the lattice and so lower-bounds orbit
//! counts. Box enumeration is exhaustive within the coordinate box and
//! runs in graded lexicographic order: shells of growing max-norm,
//! lexicographic within each shell.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{canonical_sign, fmt_vec, GramLattice, IntVector};
use crate::linalg;

/// A primitive isotropic vector up to sign, stored with canonical sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsotropicRay {
    rep: IntVector,
}

impl IsotropicRay {
    /// Validates primitivity and isotropy, then canonicalizes the sign.
    pub fn new(lattice: &GramLattice, rep: IntVector) -> Result<Self> {
        if !lattice.is_primitive_vector(&rep)? {
            return Err(Error::NotPrimitive {
                op: "IsotropicRay::new",
                vector: fmt_vec(&rep),
                content: linalg::content(&rep).to_string(),
            });
        }
        let square = lattice.eval_square(&rep)?;
        if !square.is_zero() {
            return Err(Error::NotIsotropic {
                op: "IsotropicRay::new",
                vector: fmt_vec(&rep),
                square: square.to_string(),
            });
        }
        Ok(IsotropicRay {
            rep: canonical_sign(rep),
        })
    }

    pub(crate) fn from_checked(rep: IntVector) -> Self {
        IsotropicRay {
            rep: canonical_sign(rep),
        }
    }

    pub fn rep(&self) -> &IntVector {
        &self.rep
    }

    pub fn into_rep(self) -> IntVector {
        self.rep
    }
}

/// An unordered pair of non-orthogonal rays with its pairing invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicPair {
    pub first: IsotropicRay,
    pub second: IsotropicRay,
    pub invariant_n: BigInt,
}

impl IsotropicPair {
    /// Canonicalizes the order (first <= second lexicographically) and
    /// computes the invariant; errors on orthogonal rays.
    pub fn new(lattice: &GramLattice, a: IsotropicRay, b: IsotropicRay) -> Result<Self> {
        let invariant_n = pair_invariant(lattice, &a, &b)?;
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        Ok(IsotropicPair {
            first,
            second,
            invariant_n,
        })
    }
}

/// Limits for enumeration-backed searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub coefficient_bound: u32,
    pub max_candidates: u64,
}

impl SearchBudget {
    pub fn new(coefficient_bound: u32, max_candidates: u64) -> Self {
        assert!(coefficient_bound > 0 && max_candidates > 0);
        SearchBudget {
            coefficient_bound,
            max_candidates,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            coefficient_bound: 10,
            max_candidates: 1_000_000,
        }
    }
}

/// Outcome of an isotropic-vector search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropicSearch {
    Found(IsotropicRay),
    /// The lattice is definite, so no nonzero isotropic vector exists.
    ProvablyNone,
    /// The budget was exhausted; says nothing about existence.
    Unknown,
}

/// Iterates nonzero integer vectors with coordinates in [-bound, bound]
/// in graded lexicographic order: by max-norm shell, then lexicographic.
pub(crate) struct GradedBox {
    rank: usize,
    bound: i64,
    shell: i64,
    cur: Vec<i64>,
    start_shell: bool,
    done: bool,
}

pub(crate) fn graded_box(rank: usize, bound: u32) -> GradedBox {
    GradedBox {
        rank,
        bound: bound as i64,
        shell: 1,
        cur: Vec::new(),
        start_shell: true,
        done: rank == 0 || bound == 0,
    }
}

impl GradedBox {
    fn advance(&mut self) -> bool {
        // odometer over [-shell, shell]^rank; false once it wraps
        for i in (0..self.rank).rev() {
            if self.cur[i] < self.shell {
                self.cur[i] += 1;
                return true;
            }
            self.cur[i] = -self.shell;
        }
        false
    }
}

impl Iterator for GradedBox {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        loop {
            if self.done {
                return None;
            }
            if self.start_shell {
                self.cur = vec![-self.shell; self.rank];
                self.start_shell = false;
            } else if !self.advance() {
                self.shell += 1;
                if self.shell > self.bound {
                    self.done = true;
                    return None;
                }
                self.start_shell = true;
                continue;
            }
            // skip interior points already visited in earlier shells
            if self.cur.iter().any(|&c| c.abs() == self.shell) {
                return Some(self.cur.clone());
            }
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_primitive_i64(v: &[i64]) -> bool {
    v.iter().fold(0i64, |acc, &x| gcd_i64(acc, x)) == 1
}

fn to_big(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Searches for a primitive isotropic vector.
///
/// Strategy ladder: basis vectors with zero square are returned
/// immediately (any 2×2 sub-Gram of shape `[[0,*],[*,*]]` means exactly
/// that); otherwise primitive vectors with coordinates in
/// [-coefficient_bound, coefficient_bound] are enumerated exhaustively in
/// graded lexicographic order. `ProvablyNone` is only ever returned for
/// definite lattices; for indefinite ones a fruitless search reports
/// `Unknown`, never nonexistence.
pub fn find_isotropic(lattice: &GramLattice, budget: &SearchBudget) -> Result<IsotropicSearch> {
    let sig = lattice.signature();
    if !sig.is_nondegenerate() {
        return Err(Error::DegenerateLattice {
            op: "find_isotropic",
        });
    }
    if sig.is_definite() {
        return Ok(IsotropicSearch::ProvablyNone);
    }
    let rank = lattice.rank();
    for i in 0..rank {
        if lattice.gram()[i][i].is_zero() {
            let mut e = vec![BigInt::zero(); rank];
            e[i] = BigInt::one();
            return Ok(IsotropicSearch::Found(IsotropicRay::from_checked(e)));
        }
    }
    let mut examined: u64 = 0;
    for v in graded_box(rank, budget.coefficient_bound) {
        if !is_primitive_i64(&v) {
            continue;
        }
        let candidate = to_big(&v);
        if lattice.eval_square(&candidate)?.is_zero() {
            return Ok(IsotropicSearch::Found(IsotropicRay::from_checked(
                candidate,
            )));
        }
        examined += 1;
        if examined >= budget.max_candidates {
            return Ok(IsotropicSearch::Unknown);
        }
    }
    Ok(IsotropicSearch::Unknown)
}

/// All primitive isotropic rays with coordinates in [-bound, bound],
/// canonical signs, sorted lexicographically. Exhaustive within the box.
pub fn enumerate_primitive_isotropic(lattice: &GramLattice, bound: u32) -> Vec<IsotropicRay> {
    let mut rays: Vec<IsotropicRay> = Vec::new();
    for v in graded_box(lattice.rank(), bound) {
        // one representative per ray: first nonzero coordinate positive
        match v.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => {}
            _ => continue,
        }
        if !is_primitive_i64(&v) {
            continue;
        }
        let candidate = to_big(&v);
        if lattice
            .eval_square(&candidate)
            .expect("box vectors match the rank")
            .is_zero()
        {
            rays.push(IsotropicRay::from_checked(candidate));
        }
    }
    rays.sort();
    rays
}

/// |q(x, y)| for non-orthogonal rays; invariant under permutation, sign
/// changes, and every isometry of the lattice.
pub fn pair_invariant(
    lattice: &GramLattice,
    x: &IsotropicRay,
    y: &IsotropicRay,
) -> Result<BigInt> {
    let n = lattice.eval_form(x.rep(), y.rep())?;
    if n.is_zero() {
        return Err(Error::OrthogonalPair {
            op: "pair_invariant",
        });
    }
    Ok(n.abs())
}

/// All canonical isotropic pairs formed from the rays in the box, sorted
/// by (invariant, first, second).
pub fn enumerate_isotropic_pairs(lattice: &GramLattice, bound: u32) -> Vec<IsotropicPair> {
    let rays = enumerate_primitive_isotropic(lattice, bound);
    let pairings: Vec<IntVector> = rays.iter().map(|r| lattice.pairing_vector(r.rep())).collect();
    let mut pairs: Vec<IsotropicPair> = Vec::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let n = linalg::dot(&pairings[i], rays[j].rep()).abs();
            if n.is_zero() {
                continue;
            }
            // rays are sorted, so (rays[i], rays[j]) is already canonical
            pairs.push(IsotropicPair {
                first: rays[i].clone(),
                second: rays[j].clone(),
                invariant_n: n,
            });
        }
    }
    pairs.sort_by(|a, b| {
        (&a.invariant_n, &a.first, &a.second).cmp(&(&b.invariant_n, &b.first, &b.second))
    });
    pairs
}

/// The sorted set of pair invariants realized within the box. Monotone
/// non-decreasing in the bound.
pub fn distinct_invariants(lattice: &GramLattice, bound: u32) -> BTreeSet<BigInt> {
    let rays = enumerate_primitive_isotropic(lattice, bound);
    let pairings: Vec<IntVector> = rays.iter().map(|r| lattice.pairing_vector(r.rep())).collect();
    let mut set = BTreeSet::new();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let n = linalg::dot(&pairings[i], rays[j].rep()).abs();
            if !n.is_zero() {
                set.insert(n);
            }
        }
    }
    set
}
