//! Side-by-side structure of two catalogs.

use std::collections::BTreeMap;

use serde::Serialize;

use super::catalog::{build_catalog, Catalog, CatalogOptions};
use super::{Level, Result};
use crate::weights::{Family, OmegaMatrix, ThetaMatrix, WeightMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub spheres: usize,
    pub point_candidates: usize,
    pub points: Option<usize>,
    pub survivors: usize,
    pub surviving_spheres: usize,
    pub surviving_points: usize,
    /// Pre-pruning component types, `kind/shape` → count, over entries that
    /// meet `N` (all entries when no probes were run).
    pub component_types: BTreeMap<String, usize>,
    pub surviving_types: BTreeMap<String, usize>,
    /// Sorted `|isotropy determinant|` over all entries.
    pub determinants: Vec<i64>,
    pub surviving_determinants: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySide {
    pub family: Family,
    pub weights: Vec<Vec<i64>>,
    pub twistor: LevelCounts,
    pub sasakian: LevelCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub left: FamilySide,
    pub right: FamilySide,
    /// Pre-pruning component-type multisets differ at some level.
    pub structurally_distinct: bool,
    /// Same comparison restricted to surviving strata.
    pub survivors_distinct: bool,
}

fn type_key(kind: super::StratumKind, dim: i64) -> String {
    let shape = if dim == 2 { "sphere" } else { "point" };
    format!("{kind:?}/{shape}")
}

fn counts(c: &Catalog) -> LevelCounts {
    let mut component_types = BTreeMap::new();
    let mut surviving_types = BTreeMap::new();
    let mut determinants = Vec::new();
    let mut surviving_determinants = Vec::new();
    for s in &c.strata {
        // entries that miss N are not components
        if s.feasible() == Some(false) {
            continue;
        }
        *component_types.entry(type_key(s.family, s.quotient_dim)).or_insert(0) += 1;
        determinants.push(s.isotropy_determinant.abs());
        if s.survives() {
            *surviving_types.entry(type_key(s.family, s.quotient_dim)).or_insert(0) += 1;
            surviving_determinants.push(s.isotropy_determinant.abs());
        }
    }
    determinants.sort_unstable();
    surviving_determinants.sort_unstable();
    LevelCounts {
        spheres: c.summary.spheres,
        point_candidates: c.summary.point_candidates,
        points: c.summary.points,
        survivors: c.summary.survivors,
        surviving_spheres: c.summary.surviving_spheres,
        surviving_points: c.summary.surviving_points,
        component_types,
        surviving_types,
        determinants,
        surviving_determinants,
    }
}

fn side(m: &WeightMatrix, opts: &CatalogOptions) -> Result<FamilySide> {
    Ok(FamilySide {
        family: m.family(),
        weights: m.rows(),
        twistor: counts(&build_catalog(m, Level::Twistor, opts)?),
        sasakian: counts(&build_catalog(m, Level::Sasakian, opts)?),
    })
}

/// Compares any two admissible matrices.
pub fn compare_matrices(a: &WeightMatrix, b: &WeightMatrix, opts: &CatalogOptions) -> Result<CompareReport> {
    let left = side(a, opts)?;
    let right = side(b, opts)?;
    let distinct = |f: fn(&LevelCounts) -> &BTreeMap<String, usize>| {
        f(&left.twistor) != f(&right.twistor) || f(&left.sasakian) != f(&right.sasakian)
    };
    Ok(CompareReport {
        structurally_distinct: distinct(|c| &c.component_types),
        survivors_distinct: distinct(|c| &c.surviving_types),
        left,
        right,
    })
}

pub fn compare_families(theta: &ThetaMatrix, omega: &OmegaMatrix, opts: &CatalogOptions) -> Result<CompareReport> {
    compare_matrices(&WeightMatrix::Theta(*theta), &WeightMatrix::Omega(*omega), opts)
}
