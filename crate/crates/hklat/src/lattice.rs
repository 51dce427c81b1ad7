//! Integer quadratic lattices presented by Gram matrices.
//!
//! A lattice here is a finitely generated free abelian group with an
//! integer-valued symmetric bilinear form, stored as its Gram matrix in a
//! fixed basis. All arithmetic is exact: signatures come from rational
//! congruence diagonalization, determinants from Bareiss elimination, and
//! saturations from Smith normal form. Operations are pure functions of
//! their inputs and deterministic down to the byte.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Coordinates of a lattice vector in the basis of its Gram matrix.
pub type IntVector = Vec<BigInt>;

/// Builds an [`IntVector`] from machine integers.
pub fn int_vec(coords: &[i64]) -> IntVector {
    coords.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn fmt_vec(v: &[BigInt]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

/// Eigenvalue sign counts of a Gram matrix: (positive, null, negative).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub null: usize,
    pub negative: usize,
}

impl Signature {
    pub fn new(positive: usize, null: usize, negative: usize) -> Self {
        Signature {
            positive,
            null,
            negative,
        }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.null + self.negative
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.null == 0
    }

    /// Positive or negative definite (the zero-rank lattice counts as definite).
    pub fn is_definite(&self) -> bool {
        self.null == 0 && (self.positive == 0 || self.negative == 0)
    }

    pub fn is_indefinite(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.null, self.negative)
    }
}

/// An integer quadratic lattice given by a symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    name: Option<String>,
    gram: Vec<Vec<BigInt>>,
}

impl GramLattice {
    /// Validates squareness and symmetry; reports offending indices.
    pub fn new(name: Option<String>, gram: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = gram.len();
        for (row, r) in gram.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric {
                        i,
                        j,
                        a: gram[i][j].to_string(),
                        b: gram[j][i].to_string(),
                    });
                }
            }
        }
        Ok(GramLattice { name, gram })
    }

    /// Internal constructor for matrices symmetric by construction.
    pub(crate) fn from_symmetric(name: Option<String>, gram: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(GramLattice::new(None, gram.clone()).is_ok());
        GramLattice { name, gram }
    }

    pub fn from_i64(name: Option<&str>, gram: &[&[i64]]) -> Result<Self> {
        let rows = gram
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        GramLattice::new(name.map(str::to_owned), rows)
    }

    /// The hyperbolic plane U(N), Gram `[[0,N],[N,0]]`.
    pub fn hyperbolic_plane(n: i64) -> Self {
        let n = BigInt::from(n);
        GramLattice {
            name: None,
            gram: vec![
                vec![BigInt::zero(), n.clone()],
                vec![n, BigInt::zero()],
            ],
        }
    }

    /// The rank-1 lattice ⟨d⟩.
    pub fn rank1(d: i64) -> Self {
        GramLattice {
            name: None,
            gram: vec![vec![BigInt::from(d)]],
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_owned());
        self
    }

    fn check_len(&self, op: &'static str, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                op,
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The bilinear form xᵀ·gram·y, exact and symmetric in x and y.
    pub fn eval_form(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_len("eval_form", x)?;
        self.check_len("eval_form", y)?;
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            acc += xi * linalg::dot(&self.gram[i], y);
        }
        Ok(acc)
    }

    /// q(x, x).
    pub fn eval_square(&self, x: &[BigInt]) -> Result<BigInt> {
        self.eval_form(x, x)
    }

    /// The row of pairings (q(u, e_0), ..., q(u, e_{n-1})) = gram·u.
    pub(crate) fn pairing_vector(&self, u: &[BigInt]) -> Vec<BigInt> {
        self.gram.iter().map(|row| linalg::dot(row, u)).collect()
    }

    /// Sign counts of the eigenvalues, computed exactly by congruence
    /// diagonalization over the rationals. No floating point anywhere.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let (mut positive, mut null, mut negative) = (0, 0, 0);
        let mut i = 0;
        while i < n {
            if !a[i][i].is_zero() {
                if a[i][i].is_positive() {
                    positive += 1;
                } else {
                    negative += 1;
                }
                // Schur complement of the pivot on the trailing block.
                let pivot = a[i][i].clone();
                let row_i = a[i].clone();
                for j in i + 1..n {
                    if a[j][i].is_zero() {
                        continue;
                    }
                    let f = &a[j][i] / &pivot;
                    for k in i + 1..n {
                        let delta = &f * &row_i[k];
                        a[j][k] -= delta;
                    }
                }
                for j in i + 1..n {
                    a[j][i] = BigRational::zero();
                    a[i][j] = BigRational::zero();
                }
                i += 1;
            } else if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                for k in 0..n {
                    let (x, y) = (a[i][k].clone(), a[j][k].clone());
                    a[i][k] = y;
                    a[j][k] = x;
                }
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // All remaining diagonal entries vanish; e_i ← e_i + e_j
                // makes a[i][i] = 2·a[i][j] ≠ 0.
                for k in 0..n {
                    let add = a[j][k].clone();
                    a[i][k] += add;
                }
                for row in a.iter_mut() {
                    let add = row[j].clone();
                    row[i] += add;
                }
            } else {
                null += 1;
                i += 1;
            }
        }
        Signature {
            positive,
            null,
            negative,
        }
    }

    /// Signed determinant of the Gram matrix.
    pub fn discriminant(&self) -> BigInt {
        linalg::det_bareiss(&self.gram)
    }

    /// |det(gram)|, the discriminant used for orbit bucketing.
    pub fn abs_discriminant(&self) -> BigInt {
        self.discriminant().abs()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.discriminant().is_zero()
    }

    /// True iff every square q(x, x) is even, i.e. the diagonal is even.
    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, row)| row[i].is_even())
    }

    /// True iff gcd of the coordinates is 1. Errors on the zero vector.
    pub fn is_primitive_vector(&self, x: &[BigInt]) -> Result<bool> {
        self.check_len("is_primitive_vector", x)?;
        if linalg::is_zero_vec(x) {
            return Err(Error::ZeroVector {
                op: "is_primitive_vector",
            });
        }
        Ok(linalg::content(x).is_one())
    }

    /// gcd of |q(u, w)| over basis vectors w; zero iff u lies in the
    /// radical of the form.
    pub fn divisibility(&self, u: &[BigInt]) -> Result<BigInt> {
        self.check_len("divisibility", u)?;
        if linalg::is_zero_vec(u) {
            return Err(Error::ZeroVector { op: "divisibility" });
        }
        Ok(linalg::content(&self.pairing_vector(u)))
    }

    /// The largest d dividing every square q(x, x):
    /// `gcd({gram[i][i]} ∪ {2·gram[i][j] : i < j})`; zero for the zero form.
    pub fn value_divisor(&self) -> BigInt {
        let mut d = BigInt::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if j < i {
                    continue;
                }
                if i == j {
                    d = d.gcd(entry);
                } else {
                    d = d.gcd(&(entry * 2));
                }
            }
        }
        d
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        GramLattice { name: None, gram }
    }

    pub fn direct_sum_all(parts: &[GramLattice]) -> GramLattice {
        parts.iter().fold(
            GramLattice {
                name: None,
                gram: Vec::new(),
            },
            |acc, p| acc.direct_sum(p),
        )
    }

    /// Primitive closure span_ℚ(S) ∩ L of independent vectors S, as a
    /// sublattice with a canonical (Hermite normal form) basis.
    pub fn saturate(&self, vectors: &[IntVector]) -> Result<SublatticeEmbedding> {
        for v in vectors {
            self.check_len("saturate", v)?;
        }
        let k = vectors.len();
        let smith = linalg::smith_with_col_inverse(vectors);
        if smith.diagonal.len() < k {
            return Err(Error::DependentVectors { op: "saturate" });
        }
        // Clearing the elementary divisors: the first k rows of the
        // column-inverse transform span the primitive closure.
        let sat = smith.col_inv[..k].to_vec();
        let basis = linalg::hnf_rows(&sat);
        let induced_gram = linalg::gram_product(&basis, &self.gram);
        Ok(SublatticeEmbedding {
            ambient: self.clone(),
            basis,
            induced_gram,
        })
    }

    /// Index of span_ℤ(S) inside its primitive closure.
    pub fn saturation_index(&self, vectors: &[IntVector]) -> Result<BigInt> {
        for v in vectors {
            self.check_len("saturation_index", v)?;
        }
        let smith = linalg::smith_with_col_inverse(vectors);
        if smith.diagonal.len() < vectors.len() {
            return Err(Error::DependentVectors {
                op: "saturation_index",
            });
        }
        Ok(smith.index())
    }

    /// The quotient u⊥/⟨u⟩ with its induced form, for primitive
    /// isotropic u. Well-defined because q(u, ·) vanishes on u⊥.
    pub fn quotient_isotropic(&self, u: &[BigInt]) -> Result<GramLattice> {
        const OP: &str = "quotient_isotropic";
        self.check_len(OP, u)?;
        if linalg::is_zero_vec(u) {
            return Err(Error::ZeroVector { op: OP });
        }
        if !linalg::content(u).is_one() {
            return Err(Error::NotPrimitive {
                op: OP,
                vector: fmt_vec(u),
                content: linalg::content(u).to_string(),
            });
        }
        let square = self.eval_square(u)?;
        if !square.is_zero() {
            return Err(Error::NotIsotropic {
                op: OP,
                vector: fmt_vec(u),
                square: square.to_string(),
            });
        }
        let pairing = self.pairing_vector(u);
        let perp: Vec<Vec<BigInt>> = if linalg::is_zero_vec(&pairing) {
            linalg::identity(self.rank())
        } else {
            linalg::right_kernel(&[pairing])
        };
        let coords = linalg::coords_in_hnf_rows(&perp, u)
            .expect("isotropic vector lies in its own orthogonal complement");
        // u is primitive in u⊥, so its coordinates there are primitive and
        // extend to a basis whose remaining rows present the quotient.
        let m = linalg::complete_primitive_row(&coords);
        let rows = linalg::mat_mul(&m, &perp);
        debug_assert_eq!(rows[0], u);
        let quot_basis: Vec<Vec<BigInt>> = rows[1..].to_vec();
        let induced = linalg::gram_product(&quot_basis, &self.gram);
        Ok(GramLattice::from_symmetric(None, induced))
    }

    /// Recognizes U(N): returns N iff some basis change takes the Gram
    /// matrix to `[[0,N],[N,0]]`.
    pub fn un_recognize(&self) -> Result<Option<BigInt>> {
        Ok(self.un_hyperbolic_basis()?.map(|(n, _)| n))
    }

    /// Like [`un_recognize`](Self::un_recognize), but also returns basis
    /// rows (x, z) with q(x,x) = q(z,z) = 0 and q(x,z) = N.
    pub fn un_hyperbolic_basis(&self) -> Result<Option<(BigInt, [IntVector; 2])>> {
        if self.rank() != 2 {
            return Err(Error::UnsupportedRank {
                op: "un_recognize",
                rank: self.rank(),
                required: "exactly rank 2 is supported",
            });
        }
        // Find a primitive isotropic x via root analysis of the binary form.
        let x = match rank2_isotropic_directions(&self.gram).into_iter().next() {
            Some(x) => x,
            None => return Ok(None),
        };
        // Complete x to a basis (x, z) of Z^2.
        let (g, lambda, mu) = linalg::ext_gcd(&x[0], &x[1]);
        debug_assert!(g.is_one());
        let z = vec![-mu, lambda];
        let a = self.eval_form(&x, &z)?;
        if a.is_zero() {
            // q(x, ·) vanishes identically: degenerate, not any U(N).
            return Ok(None);
        }
        let c = self.eval_square(&z)?;
        let two_a: BigInt = &a * BigInt::from(2);
        if !(&c % &two_a).is_zero() {
            // z ↦ z + kx shifts c by 2ka, so c must be a multiple of 2a.
            return Ok(None);
        }
        let k = -(&c / &two_a);
        let mut z2: IntVector = z
            .iter()
            .zip(x.iter())
            .map(|(zi, xi)| zi + &k * xi)
            .collect();
        let n = if a.is_negative() {
            for entry in z2.iter_mut() {
                let v = -std::mem::take(entry);
                *entry = v;
            }
            -a
        } else {
            a
        };
        debug_assert!(self.eval_square(&z2).unwrap().is_zero());
        debug_assert_eq!(self.eval_form(&x, &z2).unwrap(), n);
        Ok(Some((n, [x, z2])))
    }
}

/// All primitive rational isotropic rays of a binary form, with canonical
/// sign (first nonzero coordinate positive), sorted; empty when no
/// rational isotropic direction exists. The zero form yields only (1,0)'s
/// companion conventions and is not meaningful here; callers pass nonzero
/// forms.
pub(crate) fn rank2_isotropic_directions(gram: &[Vec<BigInt>]) -> Vec<IntVector> {
    let (a, b, c) = (&gram[0][0], &gram[0][1], &gram[1][1]);
    let mut rays: Vec<IntVector> = Vec::new();
    if a.is_zero() {
        rays.push(vec![BigInt::one(), BigInt::zero()]);
        // remaining directions solve 2b·s + c·t = 0 with t ≠ 0
        if !b.is_zero() {
            let dir = vec![-c.clone(), b * 2];
            rays.push(canonical_sign(linalg::primitive_part(&dir)));
        }
    } else {
        let disc = b * b - a * c;
        if disc.is_positive() || disc.is_zero() {
            let s = disc.sqrt();
            if &s * &s == disc {
                let d1 = vec![-b + &s, a.clone()];
                rays.push(canonical_sign(linalg::primitive_part(&d1)));
                if !s.is_zero() {
                    let d2 = vec![-b - &s, a.clone()];
                    rays.push(canonical_sign(linalg::primitive_part(&d2)));
                }
            }
        }
    }
    rays.sort();
    rays.dedup();
    rays
}

/// Flips the sign so the first nonzero coordinate is positive.
pub(crate) fn canonical_sign(mut v: IntVector) -> IntVector {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for entry in v.iter_mut() {
                let flipped = -std::mem::take(entry);
                *entry = flipped;
            }
        }
    }
    v
}

/// A sublattice of an ambient lattice: basis rows in ambient coordinates
/// together with the induced Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeEmbedding {
    pub ambient: GramLattice,
    pub basis: Vec<Vec<BigInt>>,
    pub induced_gram: Vec<Vec<BigInt>>,
}

impl SublatticeEmbedding {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn induced_lattice(&self) -> GramLattice {
        GramLattice::from_symmetric(None, self.induced_gram.clone())
    }

    /// Maps sublattice coordinates to ambient coordinates.
    pub fn to_ambient(&self, coords: &[BigInt]) -> IntVector {
        linalg::row_vec_mul(coords, &self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> GramLattice {
        GramLattice::hyperbolic_plane(1)
    }

    fn u_n(n: i64) -> GramLattice {
        GramLattice::hyperbolic_plane(n)
    }

    #[test]
    fn eval_form_hyperbolic_pairing() {
        let l = u();
        assert_eq!(
            l.eval_form(&int_vec(&[1, 0]), &int_vec(&[0, 1])).unwrap(),
            BigInt::one()
        );
        let l3 = u_n(3);
        assert_eq!(
            l3.eval_form(&int_vec(&[1, 1]), &int_vec(&[1, 1])).unwrap(),
            BigInt::from(6)
        );
    }

    #[test]
    fn eval_form_dimension_mismatch() {
        let l = u();
        assert!(matches!(
            l.eval_form(&int_vec(&[1]), &int_vec(&[0, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(u().signature(), Signature::new(1, 0, 1));
        let degenerate = GramLattice::rank1(0);
        assert_eq!(degenerate.signature(), Signature::new(0, 1, 0));
        let pos = GramLattice::from_i64(None, &[&[2, 0], &[0, 4]]).unwrap();
        assert_eq!(pos.signature(), Signature::new(2, 0, 0));
        // all-zero diagonal forces the e_i + e_j basis change
        let odd = GramLattice::from_i64(None, &[&[0, 3], &[3, 2]]).unwrap();
        assert_eq!(odd.signature(), Signature::new(1, 0, 1));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(u_n(5).discriminant(), BigInt::from(-25));
        assert_eq!(GramLattice::rank1(-6).discriminant(), BigInt::from(-6));
        assert_eq!(u_n(5).abs_discriminant(), BigInt::from(25));
    }

    #[test]
    fn primitivity_examples() {
        let l = u();
        assert!(!l.is_primitive_vector(&int_vec(&[2, 4])).unwrap());
        assert!(l.is_primitive_vector(&int_vec(&[3, 5])).unwrap());
        let l3 = GramLattice::direct_sum_all(&[u(), GramLattice::rank1(-2)]);
        assert!(l3.is_primitive_vector(&int_vec(&[0, 0, 1])).unwrap());
        assert!(matches!(
            l.is_primitive_vector(&int_vec(&[0, 0])),
            Err(Error::ZeroVector { .. })
        ));
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(
            u().divisibility(&int_vec(&[1, 0])).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            u_n(5).divisibility(&int_vec(&[1, 0])).unwrap(),
            BigInt::from(5)
        );
        let l = u().direct_sum(&GramLattice::rank1(-4));
        assert_eq!(
            l.divisibility(&int_vec(&[0, 0, 1])).unwrap(),
            BigInt::from(4)
        );
    }

    #[test]
    fn value_divisor_examples() {
        assert_eq!(u_n(7).value_divisor(), BigInt::from(14));
        let l = GramLattice::from_i64(None, &[&[2, 0], &[0, -2]]).unwrap();
        assert_eq!(l.value_divisor(), BigInt::from(2));
        assert_eq!(
            GramLattice::from_i64(None, &[&[0, 0], &[0, 0]])
                .unwrap()
                .value_divisor(),
            BigInt::zero()
        );
    }

    #[test]
    fn value_divisor_divides_random_squares() {
        // soundness: d | q(x,x) for a spread of vectors
        let l = GramLattice::from_i64(None, &[&[4, 1, 0], &[1, -6, 3], &[0, 3, 8]]).unwrap();
        let d = l.value_divisor();
        assert!(!d.is_zero());
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for c in -4i64..=4 {
                    let x = int_vec(&[a, b, c]);
                    let q = l.eval_square(&x).unwrap();
                    assert!((&q % &d).is_zero(), "{d} does not divide {q}");
                }
            }
        }
    }

    #[test]
    fn value_divisor_maximality_witness() {
        // gcd over basis squares and pairwise-sum squares reaches the divisor
        for l in [
            u_n(3),
            GramLattice::from_i64(None, &[&[2, 1], &[1, -4]]).unwrap(),
            GramLattice::from_i64(None, &[&[4, 2, 0], &[2, -6, 3], &[0, 3, 8]]).unwrap(),
        ] {
            let d = l.value_divisor();
            let n = l.rank();
            let mut witnessed = BigInt::zero();
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                witnessed = witnessed.gcd(&l.eval_square(&e).unwrap());
                for j in i + 1..n {
                    let mut s = vec![BigInt::zero(); n];
                    s[i] = BigInt::one();
                    s[j] = BigInt::one();
                    witnessed = witnessed.gcd(&l.eval_square(&s).unwrap());
                }
            }
            assert_eq!(witnessed, d);
        }
    }

    #[test]
    fn direct_sum_examples() {
        let l = u().direct_sum(&GramLattice::rank1(-2));
        assert_eq!(
            l.gram(),
            &[
                int_vec(&[0, 1, 0]),
                int_vec(&[1, 0, 0]),
                int_vec(&[0, 0, -2])
            ]
        );
        let empty = GramLattice::direct_sum_all(&[]);
        assert_eq!(empty.direct_sum(&u()), u());
        let uu = u().direct_sum(&u());
        assert_eq!(uu.rank(), 4);
        assert_eq!(uu.signature(), Signature::new(2, 0, 2));
    }

    #[test]
    fn saturate_divides_by_content() {
        let emb = u().saturate(&[int_vec(&[2, 0])]).unwrap();
        assert_eq!(emb.basis, vec![int_vec(&[1, 0])]);
    }

    #[test]
    fn saturate_halves_the_diagonal_pair() {
        // ((1,1) ± (1,-1))/2 ∈ U, so the closure is all of U
        let emb = u()
            .saturate(&[int_vec(&[1, 1]), int_vec(&[1, -1])])
            .unwrap();
        assert_eq!(emb.basis, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        assert_eq!(
            u().saturation_index(&[int_vec(&[1, 1]), int_vec(&[1, -1])])
                .unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn saturate_keeps_already_primitive_pairs() {
        let uu = u().direct_sum(&u());
        let rows = vec![int_vec(&[1, 0, 0, 0]), int_vec(&[0, 3, 1, 0])];
        let emb = uu.saturate(&rows).unwrap();
        assert_eq!(emb.basis, rows);
        assert_eq!(uu.saturation_index(&rows).unwrap(), BigInt::one());
    }

    #[test]
    fn saturate_rejects_dependent_input() {
        assert!(matches!(
            u().saturate(&[int_vec(&[1, 1]), int_vec(&[2, 2])]),
            Err(Error::DependentVectors { .. })
        ));
    }

    #[test]
    fn saturate_is_idempotent() {
        let uu = u().direct_sum(&u());
        for rows in [
            vec![int_vec(&[2, 4, 6, 0]), int_vec(&[0, 3, 3, 9])],
            vec![int_vec(&[1, 1, 1, 1]), int_vec(&[1, -1, 2, 0])],
        ] {
            let emb = uu.saturate(&rows).unwrap();
            let again = uu.saturate(&emb.basis).unwrap();
            assert_eq!(again.basis, emb.basis);
        }
    }

    #[test]
    fn quotient_cancels_hyperbolic_summand() {
        let uu = u().direct_sum(&u());
        let w = uu.quotient_isotropic(&int_vec(&[1, 0, 0, 0])).unwrap();
        assert_eq!(w, u());
        let rank0 = u_n(5).quotient_isotropic(&int_vec(&[1, 0])).unwrap();
        assert_eq!(rank0.rank(), 0);
    }

    #[test]
    fn quotient_rejects_bad_inputs() {
        let uu = u().direct_sum(&u());
        assert!(matches!(
            uu.quotient_isotropic(&int_vec(&[2, 0, 0, 0])),
            Err(Error::NotPrimitive { .. })
        ));
        assert!(matches!(
            uu.quotient_isotropic(&int_vec(&[1, 1, 0, 0])),
            Err(Error::NotIsotropic { .. })
        ));
        assert!(matches!(
            uu.quotient_isotropic(&int_vec(&[0, 0, 0, 0])),
            Err(Error::ZeroVector { .. })
        ));
    }

    #[test]
    fn quotient_accepts_radical_vectors_of_degenerate_lattices() {
        // u lies in the radical: u⊥ is everything, the quotient loses one
        // rank instead of two
        let l = GramLattice::from_i64(None, &[&[0, 0], &[0, -2]]).unwrap();
        let w = l.quotient_isotropic(&int_vec(&[1, 0])).unwrap();
        assert_eq!(w.rank(), 1);
        assert_eq!(w.gram()[0][0], BigInt::from(-2));
    }

    #[test]
    fn quotient_signature_drop() {
        let l = GramLattice::direct_sum_all(&[u(), u(), GramLattice::rank1(-2)]);
        let sig = l.signature();
        let w = l.quotient_isotropic(&int_vec(&[0, 0, 1, 0, 0])).unwrap();
        let wsig = w.signature();
        assert_eq!(wsig.positive, sig.positive - 1);
        assert_eq!(wsig.negative, sig.negative - 1);
        assert_eq!(wsig.null, sig.null);
    }

    #[test]
    fn un_recognize_plain_hyperbolic() {
        assert_eq!(u_n(5).un_recognize().unwrap(), Some(BigInt::from(5)));
        assert_eq!(u().un_recognize().unwrap(), Some(BigInt::one()));
    }

    #[test]
    fn un_recognize_rejects_diagonal_2_minus_2() {
        // represents 2, but U(2) only represents multiples of 4
        let l = GramLattice::from_i64(None, &[&[2, 0], &[0, -2]]).unwrap();
        assert_eq!(l.un_recognize().unwrap(), None);
        // brute-force cross-check: no unimodular basis change reaches [[0,N],[N,0]]
        assert!(no_hyperbolic_basis_in_box(&l, 4));
    }

    #[test]
    fn un_recognize_rejects_odd_companion() {
        let l = GramLattice::from_i64(None, &[&[0, 3], &[3, 2]]).unwrap();
        assert_eq!(l.un_recognize().unwrap(), None);
        assert!(no_hyperbolic_basis_in_box(&l, 4));
    }

    #[test]
    fn un_recognize_wrong_rank_errors() {
        assert!(matches!(
            GramLattice::rank1(2).un_recognize(),
            Err(Error::UnsupportedRank { .. })
        ));
    }

    #[test]
    fn un_recognize_consistency() {
        let cases: [(&[&[i64]], Option<i64>); 5] = [
            (&[&[0, 4], &[4, 8]], Some(4)),
            (&[&[0, 4], &[4, 4]], None),
            (&[&[2, 3], &[3, 2]], None),
            (&[&[0, 2], &[2, 0]], Some(2)),
            (&[&[-4, 2], &[2, 0]], Some(2)),
        ];
        for (g, expect) in cases {
            let l = GramLattice::from_i64(None, g).unwrap();
            let got = l.un_recognize().unwrap();
            assert_eq!(got, expect.map(BigInt::from), "gram {g:?}");
            if let Some(n) = got {
                assert_eq!(l.abs_discriminant(), &n * &n);
                assert_eq!(l.value_divisor(), n * 2);
            }
        }
    }

    #[test]
    fn rank2_isotropic_directions_examples() {
        let dirs = rank2_isotropic_directions(&u().gram);
        assert_eq!(dirs, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
        let l = GramLattice::from_i64(None, &[&[2, 0], &[0, -2]]).unwrap();
        assert_eq!(
            rank2_isotropic_directions(&l.gram),
            vec![int_vec(&[1, -1]), int_vec(&[1, 1])]
        );
        let anisotropic = GramLattice::from_i64(None, &[&[2, 0], &[0, -6]]).unwrap();
        assert!(rank2_isotropic_directions(&anisotropic.gram).is_empty());
        // the two rays of [[0,3],[3,2]] pair to 9
        let odd = GramLattice::from_i64(None, &[&[0, 3], &[3, 2]]).unwrap();
        let dirs = rank2_isotropic_directions(&odd.gram);
        assert_eq!(dirs, vec![int_vec(&[1, -3]), int_vec(&[1, 0])]);
    }

    /// Brute-force oracle: does any basis (rows of a unimodular matrix with
    /// entries in [-b, b]) present the form as [[0,N],[N,0]]?
    fn no_hyperbolic_basis_in_box(l: &GramLattice, b: i64) -> bool {
        for a0 in -b..=b {
            for a1 in -b..=b {
                for c0 in -b..=b {
                    for c1 in -b..=b {
                        if (a0 * c1 - a1 * c0).abs() != 1 {
                            continue;
                        }
                        let x = int_vec(&[a0, a1]);
                        let z = int_vec(&[c0, c1]);
                        if l.eval_square(&x).unwrap().is_zero()
                            && l.eval_square(&z).unwrap().is_zero()
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn eval_form_symmetry_spread() {
        let l = GramLattice::from_i64(None, &[&[4, 1, 0], &[1, -6, 3], &[0, 3, 8]]).unwrap();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let x = int_vec(&[a, b, a + b]);
                let y = int_vec(&[b, -a, 1]);
                assert_eq!(
                    l.eval_form(&x, &y).unwrap(),
                    l.eval_form(&y, &x).unwrap()
                );
            }
        }
    }

    #[test]
    fn constructor_reports_violations() {
        let bad = GramLattice::new(
            None,
            vec![int_vec(&[0, 1]), int_vec(&[1])],
        );
        assert!(matches!(bad, Err(Error::NotSquare { row: 1, .. })));
        let asym = GramLattice::new(
            None,
            vec![int_vec(&[0, 1]), int_vec(&[2, 0])],
        );
        assert!(matches!(asym, Err(Error::NotSymmetric { i: 0, j: 1, .. })));
    }
}
