//! The 5-dimensional nilpotent commutative associative algebras `A_01 … A_24`
//! together with the zero algebra `C5`, and invariant-based identification.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::StructureTable;
use crate::arith::{Field, GaussianRational};
use crate::derivations::derivation_space;

pub type Table = StructureTable<GaussianRational>;

/// Name of the algebra with zero multiplication.
pub const ZERO_ALGEBRA: &str = "C5";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown algebra name `{0}`")]
    UnknownName(String),
    #[error("algebra is not in the variety: {0}")]
    NotInVariety(String),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub table: Table,
    pub expected_der_dim: usize,
}

/// (name, dim Der, products `(i, j, k, c)` meaning `e_i e_j = … + c e_k`)
type RawEntry = (&'static str, usize, &'static [(usize, usize, usize, i64)]);

const RAW: &[RawEntry] = &[
    ("A_01", 5, &[(1, 1, 2, 1), (2, 2, 4, 1), (1, 3, 4, 1), (1, 2, 3, 1), (1, 4, 5, 1), (2, 3, 5, 1)]),
    ("A_02", 6, &[(1, 1, 3, 1), (2, 2, 5, 1), (3, 3, 5, 1), (1, 3, 4, 1), (1, 4, 5, 1)]),
    ("A_03", 6, &[(1, 1, 3, 1), (2, 2, 4, 1), (1, 3, 5, 1), (2, 4, 5, 1)]),
    ("A_04", 7, &[(1, 1, 3, 1), (1, 2, 4, 1), (1, 4, 5, 1), (2, 3, 5, 1)]),
    ("A_05", 7, &[(1, 1, 2, 1), (2, 2, 4, 1), (1, 2, 3, 1), (1, 3, 4, 1)]),
    ("A_06", 7, &[(1, 1, 2, 1), (1, 2, 3, 1), (4, 4, 5, 1)]),
    ("A_07", 7, &[(1, 3, 4, 1), (2, 3, 5, 1), (1, 2, 4, 1), (1, 2, 5, 1)]),
    ("A_08", 8, &[(1, 1, 3, 1), (2, 2, 4, 1), (1, 3, 4, 1), (1, 2, 5, 1)]),
    ("A_09", 8, &[(1, 3, 5, 1), (1, 2, 4, 1), (2, 3, 5, -1)]),
    ("A_10", 9, &[(1, 1, 3, 1), (1, 3, 4, 1), (1, 2, 5, 1)]),
    ("A_11", 9, &[(1, 1, 4, 1), (2, 3, 4, 1), (1, 3, 5, 1)]),
    ("A_12", 11, &[(1, 2, 4, 1), (1, 3, 5, 1)]),
    ("A_13", 8, &[(3, 3, 4, 1), (1, 2, 5, 1), (3, 4, 5, 1)]),
    ("A_14", 9, &[(1, 1, 3, 1), (2, 2, 4, 1), (1, 3, 4, 1)]),
    ("A_15", 9, &[(1, 2, 3, 1), (4, 4, 5, 1)]),
    ("A_16", 10, &[(1, 1, 3, 1), (2, 2, 5, 1), (1, 2, 4, 1)]),
    ("A_17", 10, &[(1, 1, 4, 1), (3, 3, 5, 1), (1, 2, 5, 1)]),
    ("A_18", 11, &[(1, 1, 2, 1), (1, 2, 3, 1)]),
    ("A_19", 11, &[(1, 1, 3, 1), (2, 2, 4, 1)]),
    ("A_20", 12, &[(1, 1, 3, 1), (1, 2, 4, 1)]),
    ("A_21", 11, &[(2, 3, 5, 1), (1, 4, 5, 1)]),
    ("A_22", 12, &[(1, 1, 4, 1), (2, 3, 4, 1)]),
    ("A_23", 14, &[(1, 2, 3, 1)]),
    ("A_24", 17, &[(1, 1, 2, 1)]),
    (ZERO_ALGEBRA, 25, &[]),
];

/// The embedded catalog, in table order with `C5` last.
pub fn entries() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        RAW.iter()
            .map(|(name, der, prods)| CatalogEntry {
                name: (*name).to_string(),
                table: StructureTable::from_entries(
                    5,
                    prods.iter().map(|&(i, j, k, c)| (i, j, k, GaussianRational::from_int(c))),
                    true,
                )
                .expect("catalog indices are in range"),
                expected_der_dim: *der,
            })
            .collect()
    })
}

pub fn names() -> impl Iterator<Item = &'static str> {
    entries().iter().map(|e| e.name.as_str())
}

/// Accepts `A_07`, `A07`, `A_7` and `C5`.
pub fn get(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    let canonical = canonical_name(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    entries()
        .iter()
        .find(|e| e.name == canonical)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

pub fn canonical_name(name: &str) -> Option<String> {
    let name = name.trim();
    if name.eq_ignore_ascii_case("c5") || name == "C^5" {
        return Some(ZERO_ALGEBRA.to_string());
    }
    let digits = name.strip_prefix('A')?.trim_start_matches('_');
    let n: usize = digits.parse().ok()?;
    (1..=24).contains(&n).then(|| format!("A_{n:02}"))
}

/// Position in catalog order.
pub fn index_of(name: &str) -> Option<usize> {
    let canonical = canonical_name(name)?;
    entries().iter().position(|e| e.name == canonical)
}

/// Invariants of an algebra that do not depend on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantFingerprint {
    pub dim_der: usize,
    /// `dim A^k` for `k = 2 … dim`.
    pub dims_of_powers: Vec<usize>,
    pub dim_ann: usize,
    pub nilpotency_index: Option<usize>,
}

pub fn fingerprint<F: Field>(alg: &StructureTable<F>) -> InvariantFingerprint {
    let n = alg.dim();
    let whole = crate::algebra::Subspace::whole(n);
    let powers = alg.subspace_powers(&whole, n + 1);
    let nilpotency_index = powers.iter().position(|p| p.is_zero()).map(|p| p + 1);
    InvariantFingerprint {
        dim_der: derivation_space(alg).dimension,
        dims_of_powers: powers[1..n].iter().map(|p| p.dim()).collect(),
        dim_ann: alg.annihilator().dim(),
        nilpotency_index,
    }
}

/// Fingerprints of all catalog entries, computed once.
pub fn catalog_fingerprints() -> &'static [(String, InvariantFingerprint)] {
    static PRINTS: OnceLock<Vec<(String, InvariantFingerprint)>> = OnceLock::new();
    PRINTS.get_or_init(|| entries().iter().map(|e| (e.name.clone(), fingerprint(&e.table))).collect())
}

/// Groups of catalog names sharing a fingerprint (only groups of size > 1).
pub fn fingerprint_collisions() -> Vec<Vec<String>> {
    let prints = catalog_fingerprints();
    let mut groups: Vec<Vec<String>> = Vec::new();
    for (i, (_, fp)) in prints.iter().enumerate() {
        if prints[..i].iter().any(|(_, other)| other == fp) {
            continue;
        }
        let group: Vec<String> =
            prints.iter().filter(|(_, other)| other == fp).map(|(n, _)| n.clone()).collect();
        if group.len() > 1 {
            groups.push(group);
        }
    }
    groups
}

/// Catalog names whose fingerprint matches `alg`.
pub fn identify<F: Field>(alg: &StructureTable<F>) -> Result<Vec<String>, CatalogError> {
    let ids = alg.check_identities();
    if !ids.commutative || !ids.associative {
        return Err(CatalogError::NotInVariety(format!(
            "commutative={}, associative={}",
            ids.commutative, ids.associative
        )));
    }
    if alg.dim() != 5 {
        return Err(CatalogError::NotInVariety(format!("dimension {} is not 5", alg.dim())));
    }
    let fp = fingerprint(alg);
    if fp.nilpotency_index.is_none() {
        return Err(CatalogError::NotInVariety("not nilpotent".into()));
    }
    Ok(catalog_fingerprints()
        .iter()
        .filter(|(_, other)| *other == fp)
        .map(|(n, _)| n.clone())
        .collect())
}
