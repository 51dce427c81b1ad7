#![allow(dead_code)] // each test binary uses a different subset

//! Shared helpers for the integration suites: a deterministic RNG,
//! random lattice generators, and small self-contained oracles that stay
//! independent of the library's internal algorithms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use hklat::lattice::GramLattice;

/// xorshift64*: deterministic, seedable, no dependencies.
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed.max(1),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform integer in [lo, hi], inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Random symmetric integer matrix with entries in [-max_abs, max_abs].
pub fn random_symmetric(rng: &mut Rng, n: usize, max_abs: i64) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let e = BigInt::from(rng.int_in(-max_abs, max_abs));
            m[i][j] = e.clone();
            m[j][i] = e;
        }
    }
    m
}

/// Random unimodular matrix T together with its exact inverse, built from
/// `ops` elementary row operations on the identity.
pub fn random_unimodular_with_inverse(
    rng: &mut Rng,
    n: usize,
    ops: usize,
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut t: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut t_inv = t.clone();
    for _ in 0..ops {
        let i = rng.below(n as u64) as usize;
        let mut j = rng.below(n as u64) as usize;
        if i == j {
            j = (j + 1) % n;
        }
        let k = loop {
            let k = rng.int_in(-2, 2);
            if k != 0 {
                break BigInt::from(k);
            }
        };
        // T <- E·T with E = I + k·E_ij  (row_i += k·row_j)
        let src = t[j].clone();
        for (dst, s) in t[i].iter_mut().zip(src.iter()) {
            *dst += &k * s;
        }
        // T⁻¹ <- T⁻¹·E⁻¹ = T⁻¹·(I - k·E_ij)  (col_j -= k·col_i)
        for row in t_inv.iter_mut() {
            let sub = &k * &row[i];
            row[j] -= sub;
        }
    }
    (t, t_inv)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b.iter()).map(|(x, br)| x * &br[j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = m[0].len();
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// A lattice guaranteed to contain a primitive isotropic vector, plus
/// that vector: a hyperbolic plane glued to a random block, scrambled by
/// a random unimodular change of basis.
pub fn planted_isotropic_lattice(
    rng: &mut Rng,
    rank: usize,
    entry_bound: i64,
    scramble_ops: usize,
) -> (GramLattice, Vec<BigInt>) {
    assert!(rank >= 2);
    let mut base = vec![vec![BigInt::zero(); rank]; rank];
    base[0][1] = BigInt::one();
    base[1][0] = BigInt::one();
    let tail = random_symmetric(rng, rank - 2, entry_bound);
    for i in 0..rank - 2 {
        for j in 0..rank - 2 {
            base[2 + i][2 + j] = tail[i][j].clone();
        }
    }
    let (t, t_inv) = random_unimodular_with_inverse(rng, rank, scramble_ops);
    let gram = mat_mul(&mat_mul(&t, &base), &transpose(&t));
    let u = t_inv[0].clone();
    let lattice = GramLattice::new(None, gram).expect("congruence keeps symmetry");
    debug_assert!(lattice.eval_square(&u).unwrap().is_zero());
    (lattice, u)
}

/// Canonical sign: first nonzero coordinate positive.
pub fn canonicalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                let flipped = -std::mem::take(x);
                *x = flipped;
            }
        }
    }
    v
}

/// Determinant by cofactor expansion; independent of the library's
/// Bareiss path, for small oracle matrices only.
pub fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
