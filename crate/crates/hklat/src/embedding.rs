//! Constructive embedding of primitive hyperbolic planes U(N) with N
//! above a given bound into indefinite lattices.
//!
//! The underlying geometry: a rational line through a point u of the
//! isotropic quadric meets it in a second point, and the chord
//! construction `second_intersection` writes that point down with integer
//! coordinates. Pairs (u, y) of primitive isotropic vectors whose span is
//! saturated generate exactly the primitive U(N) sublattices, with
//! N = |q(u, y)|. The search walks a deterministic stream of chord
//! directions v = k·w₀ + m·w_j, where w₀ realizes the minimal pairing
//! value q(u, w₀) = divisibility(u) and w_j ranges over a canonical basis
//! of u⊥; the pairing values k·divisibility(u) sweep every attainable N.
//!
//! The search is deterministic: the first witness in stream order wins,
//! and a witness found under some budget is found verbatim under any
//! larger budget.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::isotropy::{find_isotropic, IsotropicSearch, SearchBudget};
use crate::lattice::{fmt_vec, GramLattice, IntVector, SublatticeEmbedding};
use crate::linalg;

/// A verified primitive U(N) sublattice.
#[derive(Debug, Clone)]
pub struct UnWitness {
    pub embedding: SublatticeEmbedding,
    /// The N of U(N).
    pub n_value: BigInt,
    /// Index of the generating span inside its saturation; 1 certifies
    /// primitivity.
    pub saturation_index: BigInt,
    /// Unimodular 2×2 change taking the embedding basis to the hyperbolic
    /// basis (rows x, z with q(x,x) = q(z,z) = 0, q(x,z) = N).
    pub basis_change: [IntVector; 2],
    /// The two isotropic generators in ambient coordinates.
    pub generators: [IntVector; 2],
}

impl UnWitness {
    /// Independent re-verification of every certificate field.
    pub fn verify(&self, ambient: &GramLattice, a_bound: u64) -> std::result::Result<(), String> {
        if self.embedding.ambient.gram() != ambient.gram() {
            return Err("witness ambient lattice differs".into());
        }
        if self.embedding.basis.len() != 2 {
            return Err("witness basis is not rank 2".into());
        }
        if !self.saturation_index.is_one() {
            return Err(format!(
                "stored saturation index {} is not 1",
                self.saturation_index
            ));
        }
        let recomputed_index = ambient
            .saturation_index(&self.embedding.basis)
            .map_err(|e| e.to_string())?;
        if !recomputed_index.is_one() {
            return Err(format!("recomputed saturation index {recomputed_index} is not 1"));
        }
        let induced = linalg::gram_product(&self.embedding.basis, ambient.gram());
        if induced != self.embedding.induced_gram {
            return Err("stored induced Gram does not match the basis".into());
        }
        match self
            .embedding
            .induced_lattice()
            .un_recognize()
            .map_err(|e| e.to_string())?
        {
            Some(n) if n == self.n_value => {}
            other => return Err(format!("un_recognize returned {other:?}, expected {}", self.n_value)),
        }
        if self.n_value <= BigInt::from(a_bound) {
            return Err(format!("N = {} does not exceed the bound {a_bound}", self.n_value));
        }
        // basis change must be unimodular and map onto the generators
        let change: Vec<IntVector> = self.basis_change.to_vec();
        if linalg::det_bareiss(&change).abs() != BigInt::one() {
            return Err("basis change is not unimodular".into());
        }
        let mapped = linalg::mat_mul(&change, &self.embedding.basis);
        if mapped != self.generators.to_vec() {
            return Err("basis change does not produce the stored generators".into());
        }
        // generators: primitive isotropic in the ambient lattice, pairing N
        for g in &self.generators {
            if !linalg::content(g).is_one() {
                return Err(format!("generator {} is imprimitive", fmt_vec(g)));
            }
            let sq = ambient.eval_square(g).map_err(|e| e.to_string())?;
            if !sq.is_zero() {
                return Err(format!("generator {} has square {sq}", fmt_vec(g)));
            }
        }
        let pairing = ambient
            .eval_form(&self.generators[0], &self.generators[1])
            .map_err(|e| e.to_string())?;
        if pairing != self.n_value {
            return Err(format!("generators pair to {pairing}, expected {}", self.n_value));
        }
        // divisibility certificate: every square in U(N) is a multiple of 2N
        let divisor = self.embedding.induced_lattice().value_divisor();
        if divisor != &self.n_value * BigInt::from(2) {
            return Err(format!(
                "value divisor {divisor} of the image is not 2N = {}",
                &self.n_value * BigInt::from(2)
            ));
        }
        Ok(())
    }
}

/// Outcome of the U(N) search.
#[derive(Debug, Clone)]
pub enum EmbedOutcome {
    Witness(UnWitness),
    /// Budget ran out before a witness appeared. A search report only,
    /// never a nonexistence claim.
    Exhausted,
}

/// A U(N) witness together with the divisor certificate that excludes
/// every square in [-mbm_bound, -1] from the image lattice.
#[derive(Debug, Clone)]
pub struct RoundPicardWitness {
    pub witness: UnWitness,
    /// value_divisor of the induced lattice; equals 2N > mbm_bound.
    pub value_divisor: BigInt,
}

#[derive(Debug, Clone)]
pub enum RoundPicardOutcome {
    Witness(RoundPicardWitness),
    Exhausted,
}

/// Second intersection of the quadric {q = 0} with the rational line
/// through isotropic u in direction v: returns y = 2a·v - b·u where
/// a = q(u,v) and b = q(v,v), so q(y,y) = 0 and q(u,y) = 2a² exactly.
/// The output may be imprimitive; callers take the primitive part.
pub fn second_intersection(
    lattice: &GramLattice,
    u: &[BigInt],
    v: &[BigInt],
) -> Result<IntVector> {
    const OP: &str = "second_intersection";
    let u_square = lattice.eval_square(u)?;
    if !u_square.is_zero() {
        return Err(Error::NotIsotropic {
            op: OP,
            vector: fmt_vec(u),
            square: u_square.to_string(),
        });
    }
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
    let a = lattice.eval_form(u, v)?;
    if a.is_zero() {
        return Err(Error::OrthogonalPair { op: OP });
    }
    let b = lattice.eval_square(v)?;
    let two_a: BigInt = &a * BigInt::from(2);
    Ok(v.iter()
        .zip(u.iter())
        .map(|(vi, ui)| &two_a * vi - &b * ui)
        .collect())
}

/// Bezout combination: a vector w with q(u, w) = divisibility(u) > 0.
fn minimal_pairing_vector(pairing: &[BigInt]) -> IntVector {
    let n = pairing.len();
    let mut g = BigInt::zero();
    let mut lambda = vec![BigInt::zero(); n];
    for (i, p) in pairing.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let (g2, s, t) = linalg::ext_gcd(&g, p);
        for x in lambda.iter_mut() {
            *x *= &s;
        }
        lambda[i] += &t;
        g = g2;
        if g.is_one() {
            break;
        }
    }
    debug_assert!(!g.is_zero());
    lambda
}

/// Searches for a primitive sublattice isomorphic to U(N) with
/// N > a_bound.
///
/// Requires a nondegenerate indefinite lattice of rank at least 3 (the
/// plane U itself contains no primitive U(N) with N > 1, so rank 2 is
/// rejected). Returns `Exhausted` when `budget.max_candidates` chord
/// directions have been tried, or when the isotropic search itself runs
/// out of budget.
pub fn embed_un(lattice: &GramLattice, a_bound: u64, budget: &SearchBudget) -> Result<EmbedOutcome> {
    const OP: &str = "embed_un";
    if lattice.rank() < 3 {
        return Err(Error::UnsupportedRank {
            op: OP,
            rank: lattice.rank(),
            required: "rank >= 3 is required (U itself contains no primitive U(N) with N > 1)",
        });
    }
    let sig = lattice.signature();
    if !sig.is_nondegenerate() {
        return Err(Error::DegenerateLattice { op: OP });
    }
    if !sig.is_indefinite() {
        return Err(Error::DefiniteLattice { op: OP });
    }
    let u = match find_isotropic(lattice, budget)? {
        IsotropicSearch::Found(ray) => ray.into_rep(),
        IsotropicSearch::Unknown => return Ok(EmbedOutcome::Exhausted),
        IsotropicSearch::ProvablyNone => unreachable!("indefinite lattices are never definite"),
    };
    let pairing = lattice.pairing_vector(&u);
    let d = linalg::content(&pairing);
    debug_assert!(d.is_positive(), "nondegenerate lattice, u not in radical");
    let w0 = minimal_pairing_vector(&pairing);
    debug_assert_eq!(linalg::dot(&pairing, &w0), d);
    let perp = linalg::right_kernel(std::slice::from_ref(&pairing));

    // Pairing data of the stream generators, so each candidate's square
    // b = q(v,v) costs O(1): v = k·w0 + m·w_j has
    // b = k²·q(w0,w0) + 2km·q(w0,w_j) + m²·q(w_j,w_j).
    let w0_pairings = lattice.pairing_vector(&w0);
    let b00 = linalg::dot(&w0_pairings, &w0);
    let cross: Vec<BigInt> = perp.iter().map(|w| linalg::dot(&w0_pairings, w)).collect();
    let squares: Vec<BigInt> = perp
        .iter()
        .map(|w| linalg::dot(&lattice.pairing_vector(w), w))
        .collect();

    let bound = BigInt::from(a_bound);
    let mut examined: u64 = 0;

    let try_candidate = |v: &IntVector,
                             a: &BigInt,
                             b: &BigInt,
                             examined: &mut u64|
          -> Result<Option<UnWitness>> {
        *examined += 1;
        let two_a: BigInt = a * BigInt::from(2);
        let y: IntVector = v
            .iter()
            .zip(u.iter())
            .map(|(vi, ui)| &two_a * vi - b * ui)
            .collect();
        let y = linalg::primitive_part(&y);
        // q(u, y) = 2a² before the content division
        let m_val = linalg::dot(&pairing, &y).abs();
        if m_val <= bound {
            return Ok(None);
        }
        // The saturation of span{u, y} is hyperbolic exactly when the span
        // is already saturated: gcd of the 2x2 minors of [u; y] must be 1.
        let mut g = BigInt::zero();
        'minors: for i in 0..u.len() {
            for j in i + 1..u.len() {
                let minor = &u[i] * &y[j] - &u[j] * &y[i];
                g = g.gcd(&minor);
                if g.is_one() {
                    break 'minors;
                }
            }
        }
        if !g.is_one() {
            return Ok(None);
        }
        let embedding = lattice.saturate(&[u.clone(), y])?;
        let (n_value, hyper) = embedding
            .induced_lattice()
            .un_hyperbolic_basis()?
            .expect("a saturated span of two isotropic rays is hyperbolic");
        debug_assert_eq!(n_value, m_val);
        let generators = [
            embedding.to_ambient(&hyper[0]),
            embedding.to_ambient(&hyper[1]),
        ];
        Ok(Some(UnWitness {
            embedding,
            n_value,
            saturation_index: BigInt::one(),
            basis_change: hyper,
            generators,
        }))
    };

    // Deterministic deepening: at level t the multiplier k runs 1..=t; a
    // fresh k (k == t) sweeps offsets m = 0, ±1, ..., ±t along every
    // direction of u⊥, older k's only pick up the new offsets m = ±t.
    let mut level: u64 = 0;
    loop {
        level += 1;
        for k in 1..=level {
            let a: BigInt = BigInt::from(k) * &d;
            // every candidate at this k has |q(u, y)| <= 2a²
            if &a * &a * BigInt::from(2) <= bound {
                continue;
            }
            let base: IntVector = w0.iter().map(|x| x * BigInt::from(k)).collect();
            let k_squared = BigInt::from(k) * BigInt::from(k);
            if k == level {
                if examined >= budget.max_candidates {
                    return Ok(EmbedOutcome::Exhausted);
                }
                let b: BigInt = &k_squared * &b00;
                if let Some(w) = try_candidate(&base, &a, &b, &mut examined)? {
                    return Ok(EmbedOutcome::Witness(w));
                }
            }
            let offsets: Vec<i64> = if k == level {
                (1..=level as i64).flat_map(|m| [m, -m]).collect()
            } else {
                vec![level as i64, -(level as i64)]
            };
            for (j, w_j) in perp.iter().enumerate() {
                for &m in &offsets {
                    if examined >= budget.max_candidates {
                        return Ok(EmbedOutcome::Exhausted);
                    }
                    let m_big = BigInt::from(m);
                    let v: IntVector = base
                        .iter()
                        .zip(w_j.iter())
                        .map(|(bi, wi)| bi + &m_big * wi)
                        .collect();
                    let b: BigInt = &k_squared * &b00
                        + BigInt::from(2) * BigInt::from(k) * &m_big * &cross[j]
                        + &m_big * &m_big * &squares[j];
                    if let Some(w) = try_candidate(&v, &a, &b, &mut examined)? {
                        return Ok(EmbedOutcome::Witness(w));
                    }
                }
            }
        }
    }
}

/// [`embed_un`] with `a_bound = mbm_bound`, plus the divisor certificate:
/// the image's value divisor 2N exceeds `mbm_bound`, so no vector of the
/// sublattice has square in [-mbm_bound, -1].
pub fn round_picard_witness(
    lattice: &GramLattice,
    mbm_bound: u64,
    budget: &SearchBudget,
) -> Result<RoundPicardOutcome> {
    match embed_un(lattice, mbm_bound, budget)? {
        EmbedOutcome::Witness(witness) => {
            let value_divisor = witness.embedding.induced_lattice().value_divisor();
            debug_assert_eq!(value_divisor, &witness.n_value * BigInt::from(2));
            debug_assert!(value_divisor > BigInt::from(mbm_bound));
            Ok(RoundPicardOutcome::Witness(RoundPicardWitness {
                witness,
                value_divisor,
            }))
        }
        EmbedOutcome::Exhausted => Ok(RoundPicardOutcome::Exhausted),
    }
}
