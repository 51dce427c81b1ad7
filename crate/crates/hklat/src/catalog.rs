//! Built-in Gram matrices for the known hyperkähler deformation types.
//!
//! These are the standard second-cohomology lattices from the literature,
//! shipped as fixtures: each is assembled from U, E8(-1), A2(-1) and
//! rank-1 blocks, validated against its expected signature at
//! construction. MBM bound defaults are external-literature conveniences,
//! optional and overridable; nothing downstream depends on them.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::GramLattice;

/// One deformation type: key, lattice, second Betti number, optional MBM
/// bound default, and a provenance note.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub lattice: GramLattice,
    pub b2: u32,
    pub mbm_bound_default: Option<u64>,
    pub notes: String,
}

/// Catalog keys, byte-sorted and stable across runs.
pub fn catalog_list() -> Vec<&'static str> {
    vec!["K3", "K3^[n]", "Kum_n", "OG10", "OG6"]
}

/// Negated E8 Gram matrix (Bourbaki node numbering: chain
/// 1-3-4-5-6-7-8 with node 2 attached to node 4), determinant 1.
pub fn e8_minus_gram() -> GramLattice {
    let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut gram = vec![vec![BigInt::from(0); 8]; 8];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = BigInt::from(-2);
    }
    for &(i, j) in &edges {
        gram[i][j] = BigInt::from(1);
        gram[j][i] = BigInt::from(1);
    }
    GramLattice::from_symmetric(Some("E8(-1)".into()), gram)
}

/// Negated A2 Gram matrix [[-2,1],[1,-2]], determinant 3.
pub fn a2_minus_gram() -> GramLattice {
    GramLattice::from_i64(Some("A2(-1)"), &[&[-2, 1], &[1, -2]]).expect("fixed symmetric matrix")
}

fn three_u() -> GramLattice {
    let u = GramLattice::hyperbolic_plane(1);
    GramLattice::direct_sum_all(&[u.clone(), u.clone(), u])
}

fn require_n(key: &str, n: Option<u32>) -> Result<u32> {
    match n {
        Some(n) if n >= 2 => Ok(n),
        Some(n) => Err(Error::CatalogParameter {
            key: key.into(),
            msg: format!("parameter n must be at least 2, got {n}"),
        }),
        None => Err(Error::CatalogParameter {
            key: key.into(),
            msg: "parameter n is required for this entry".into(),
        }),
    }
}

fn reject_n(key: &str, n: Option<u32>) -> Result<()> {
    if n.is_some() {
        return Err(Error::CatalogParameter {
            key: key.into(),
            msg: "this entry takes no parameter".into(),
        });
    }
    Ok(())
}

/// Fetches a catalog entry; parametrized keys (`K3^[n]`, `Kum_n`) require
/// n >= 2.
pub fn catalog_get(key: &str, n: Option<u32>) -> Result<CatalogEntry> {
    let e8 = e8_minus_gram();
    let entry = match key {
        "K3" => {
            reject_n(key, n)?;
            let lattice =
                GramLattice::direct_sum_all(&[three_u(), e8.clone(), e8]).with_name("K3");
            CatalogEntry {
                key: key.into(),
                lattice,
                b2: 22,
                mbm_bound_default: Some(2),
                notes: "Second cohomology of a K3 surface: U^3 + E8(-1)^2, even unimodular \
                        of signature (3,19). Extremal rational curves on K3s have square -2."
                    .into(),
            }
        }
        "K3^[n]" => {
            let n = require_n(key, n)?;
            let tail = GramLattice::rank1(-2 * (i64::from(n) - 1));
            let name = format!("K3^[{n}]");
            let lattice =
                GramLattice::direct_sum_all(&[three_u(), e8.clone(), e8, tail]).with_name(&name);
            CatalogEntry {
                key: key.into(),
                lattice,
                b2: 23,
                mbm_bound_default: None,
                notes: format!(
                    "Hilbert scheme of {n} points on a K3 surface: \
                     U^3 + E8(-1)^2 + <-2(n-1)>, signature (3,20)."
                ),
            }
        }
        "Kum_n" => {
            let n = require_n(key, n)?;
            let tail = GramLattice::rank1(-2 * (i64::from(n) + 1));
            let name = format!("Kum_{n}");
            let lattice = GramLattice::direct_sum_all(&[three_u(), tail]).with_name(&name);
            CatalogEntry {
                key: key.into(),
                lattice,
                b2: 7,
                mbm_bound_default: None,
                notes: format!(
                    "Generalized Kummer variety of dimension 2n = {}: \
                     U^3 + <-2(n+1)>, signature (3,4).",
                    2 * n
                ),
            }
        }
        "OG6" => {
            reject_n(key, n)?;
            let lattice = GramLattice::direct_sum_all(&[
                three_u(),
                GramLattice::rank1(-2),
                GramLattice::rank1(-2),
            ])
            .with_name("OG6");
            CatalogEntry {
                key: key.into(),
                lattice,
                b2: 8,
                mbm_bound_default: None,
                notes: "O'Grady sixfold: U^3 + <-2>^2, signature (3,5).".into(),
            }
        }
        "OG10" => {
            reject_n(key, n)?;
            let lattice = GramLattice::direct_sum_all(&[three_u(), e8.clone(), e8, a2_minus_gram()])
                .with_name("OG10");
            CatalogEntry {
                key: key.into(),
                lattice,
                b2: 24,
                mbm_bound_default: None,
                notes: "O'Grady tenfold: U^3 + E8(-1)^2 + A2(-1), signature (3,21).".into(),
            }
        }
        _ => {
            return Err(Error::UnknownCatalogKey { key: key.into() });
        }
    };
    debug_assert_eq!(entry.lattice.rank() as u32, entry.b2);
    Ok(entry)
}

/// Every catalog entry instantiated at a small default parameter; handy
/// for sweeps.
pub fn catalog_default_entries() -> Vec<CatalogEntry> {
    catalog_list()
        .into_iter()
        .map(|key| {
            let n = if key.contains('n') { Some(2) } else { None };
            catalog_get(key, n).expect("built-in entries are valid")
        })
        .collect()
}
