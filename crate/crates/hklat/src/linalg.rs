//! Exact integer matrix algorithms over arbitrary-precision integers:
//! Bareiss determinants, row Hermite normal form, Smith normal form with
//! transform tracking, integer kernels, and unimodular completions.
//!
//! Matrices are dense `Vec<Vec<BigInt>>` in row-major order. All routines
//! are deterministic: pivot choice is by minimal absolute value, ties
//! broken by lowest index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Mat = Vec<Vec<BigInt>>;

pub(crate) fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub(crate) fn transpose(m: &[Vec<BigInt>]) -> Mat {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub(crate) fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    let inner = a[0].len();
    debug_assert!(b.len() == inner);
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b.iter()).map(|(x, br)| x * &br[j]).sum())
                .collect()
        })
        .collect()
}

/// B · G · Bᵀ for a k×n basis matrix B and an n×n Gram matrix G.
pub(crate) fn gram_product(basis: &[Vec<BigInt>], gram: &[Vec<BigInt>]) -> Mat {
    let bg = mat_mul(basis, gram);
    mat_mul(&bg, &transpose(basis))
}

pub(crate) fn row_vec_mul(v: &[BigInt], m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols)
        .map(|j| v.iter().zip(m.iter()).map(|(x, row)| x * &row[j]).sum())
        .collect()
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// gcd of the absolute values of the entries; zero for an all-zero slice.
pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub(crate) fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Divides a nonzero vector by its content, yielding a primitive vector.
pub(crate) fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

/// Extended gcd: returns (g, x, y) with g = gcd(a, b) >= 0 and x·a + y·b = g.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
        let tmp = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, tmp);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub(crate) fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a: Mat = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if sign < 0 {
        -a[n - 1][n - 1].clone()
    } else {
        a[n - 1][n - 1].clone()
    }
}

fn row_sub(m: &mut Mat, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(src_row.iter()) {
        *d -= q * s;
    }
}

fn negate_row(m: &mut Mat, r: usize) {
    for x in m[r].iter_mut() {
        let v = -std::mem::take(x);
        *x = v;
    }
}

/// In-place row Hermite normal form. Returns the number of pivot rows.
///
/// Pivots are positive, entries above each pivot are reduced into
/// [0, pivot), and zero rows sink to the bottom. When `transform` is
/// given it starts as the identity and accumulates the same row
/// operations, so `transform · input = output` holds throughout.
fn hnf_in_place(m: &mut Mat, mut transform: Option<&mut Mat>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut pivot = 0;
    for col in 0..cols {
        if pivot >= rows {
            break;
        }
        // Euclid over the column entries at rows pivot.. until one nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot..rows {
                if !m[r][col].is_zero()
                    && best.map_or(true, |b| m[r][col].abs() < m[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            let mut clean = true;
            for r in pivot..rows {
                if r != b && !m[r][col].is_zero() {
                    let q = &m[r][col] / &m[b][col];
                    row_sub(m, r, b, &q);
                    if let Some(t) = transform.as_deref_mut() {
                        row_sub(t, r, b, &q);
                    }
                    if !m[r][col].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                if b != pivot {
                    m.swap(pivot, b);
                    if let Some(t) = transform.as_deref_mut() {
                        t.swap(pivot, b);
                    }
                }
                if m[pivot][col].is_negative() {
                    negate_row(m, pivot);
                    if let Some(t) = transform.as_deref_mut() {
                        negate_row(t, pivot);
                    }
                }
                // Reduce the entries above the pivot into [0, pivot).
                let p = m[pivot][col].clone();
                for r in 0..pivot {
                    let q = m[r][col].div_floor(&p);
                    row_sub(m, r, pivot, &q);
                    if let Some(t) = transform.as_deref_mut() {
                        row_sub(t, r, pivot, &q);
                    }
                }
                pivot += 1;
                break;
            }
        }
    }
    pivot
}

/// Canonical row Hermite normal form with zero rows removed.
pub(crate) fn hnf_rows(m: &[Vec<BigInt>]) -> Mat {
    let mut a: Mat = m.to_vec();
    let rank = hnf_in_place(&mut a, None);
    a.truncate(rank);
    a
}

/// Basis of the right kernel {x : M·x = 0}, as HNF rows.
pub(crate) fn right_kernel(m: &[Vec<BigInt>]) -> Mat {
    let mt = transpose(m);
    let n = mt.len();
    let mut a = mt;
    let mut u = identity(n);
    let rk = hnf_in_place(&mut a, Some(&mut u));
    let kernel: Mat = u.into_iter().skip(rk).collect();
    hnf_rows(&kernel)
}

/// Smith-style diagonalization A = R⁻¹ · D · col_inv with R, col_inv
/// unimodular and D diagonal (not necessarily a divisibility chain).
///
/// `diagonal` holds the nonzero diagonal entries of D, made positive.
/// The first `diagonal.len()` rows of `col_inv` span the saturation of
/// the row span of A.
pub(crate) struct SmithDecomposition {
    pub diagonal: Vec<BigInt>,
    pub col_inv: Mat,
}

impl SmithDecomposition {
    /// Product of the diagonal entries: the index of the input row span
    /// inside its saturation when the input rows are independent.
    pub fn index(&self) -> BigInt {
        self.diagonal
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }
}

pub(crate) fn smith_with_col_inverse(m: &[Vec<BigInt>]) -> SmithDecomposition {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Mat = m.to_vec();
    let mut vinv = identity(cols);

    // Column op helpers keep the invariant  original = R⁻¹ · a · vinv.
    fn swap_cols(a: &mut Mat, vinv: &mut Mat, i: usize, j: usize) {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    }
    // col_j -= q·col_i  ⇒  row_i of vinv += q·row_j
    fn col_sub(a: &mut Mat, vinv: &mut Mat, j: usize, i: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in a.iter_mut() {
            let s = &row[i] * q;
            row[j] -= s;
        }
        let src = vinv[j].clone();
        for (d, s) in vinv[i].iter_mut().zip(src.iter()) {
            *d += q * s;
        }
    }
    fn negate_col(a: &mut Mat, vinv: &mut Mat, i: usize) {
        for row in a.iter_mut() {
            let v = -std::mem::take(&mut row[i]);
            row[i] = v;
        }
        negate_row(vinv, i);
    }

    let mut t = 0;
    let tmax = rows.min(cols);
    while t < tmax {
        // Minimal-abs nonzero entry in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        if bj != t {
            swap_cols(&mut a, &mut vinv, t, bj);
        }
        loop {
            // Clear column t below the pivot.
            let mut i = t + 1;
            while i < rows {
                if !a[i][t].is_zero() {
                    if a[i][t].abs() < a[t][t].abs() {
                        a.swap(t, i);
                        continue;
                    }
                    let q = &a[i][t] / &a[t][t];
                    row_sub(&mut a, i, t, &q);
                    if !a[i][t].is_zero() {
                        continue;
                    }
                }
                i += 1;
            }
            // Clear row t to the right of the pivot.
            let mut j = t + 1;
            while j < cols {
                if !a[t][j].is_zero() {
                    if a[t][j].abs() < a[t][t].abs() {
                        swap_cols(&mut a, &mut vinv, t, j);
                        continue;
                    }
                    let q = &a[t][j] / &a[t][t];
                    col_sub(&mut a, &mut vinv, j, t, &q);
                    if !a[t][j].is_zero() {
                        continue;
                    }
                }
                j += 1;
            }
            let col_clear = (t + 1..rows).all(|i| a[i][t].is_zero());
            let row_clear = (t + 1..cols).all(|j| a[t][j].is_zero());
            if col_clear && row_clear {
                break;
            }
        }
        if a[t][t].is_negative() {
            negate_col(&mut a, &mut vinv, t);
        }
        t += 1;
    }

    let diagonal: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    SmithDecomposition {
        diagonal,
        col_inv: vinv,
    }
}

/// Divisibility-chained invariant factors: gcd/lcm massage of a diagonal.
#[cfg(test)]
pub(crate) fn invariant_factors(diagonal: &[BigInt]) -> Vec<BigInt> {
    let mut out = diagonal.to_vec();
    loop {
        let mut settled = true;
        for i in 1..out.len() {
            let (lo, hi) = (out[i - 1].clone(), out[i].clone());
            if !(&hi % &lo).is_zero() {
                let g = lo.gcd(&hi);
                let l = &lo / &g * &hi;
                out[i - 1] = g;
                out[i] = l;
                settled = false;
            }
        }
        if settled {
            break;
        }
    }
    out
}

/// Completes a primitive row vector to a unimodular matrix having it as
/// the first row.
pub(crate) fn complete_primitive_row(c: &[BigInt]) -> Mat {
    debug_assert!(content(c).is_one(), "row must be primitive");
    let smith = smith_with_col_inverse(&[c.to_vec()]);
    debug_assert!(smith.diagonal.len() == 1 && smith.diagonal[0].is_one());
    let m = smith.col_inv;
    debug_assert_eq!(m[0], c, "completion must reproduce the input row");
    m
}

/// Expresses `target` as an integer combination of HNF basis rows, if
/// possible. The rows must be a (zero-row-free) Hermite normal form.
pub(crate) fn coords_in_hnf_rows(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem = target.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let pivot_col = row.iter().position(|x| !x.is_zero())?;
        let (q, r) = rem[pivot_col].div_rem(&row[pivot_col]);
        if !r.is_zero() {
            return None;
        }
        for (d, s) in rem.iter_mut().zip(row.iter()) {
            *d -= &q * s;
        }
        coords.push(q);
    }
    if is_zero_vec(&rem) {
        Some(coords)
    } else {
        None
    }
}
