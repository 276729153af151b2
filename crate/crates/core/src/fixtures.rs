//! The bundled fixture set: PD codes and grid presentations of small links
//! with their expected invariants.
//!
//! The embedded copy is compiled in; [`Manifest::load_dir`] reads the same
//! layout from disk.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::determinant::determinant;
use crate::diagram::{DiagramError, PlanarDiagram};
use crate::grid::{GridDiagram, GridError};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error("{name}: {source}")]
    Io { name: String, source: std::io::Error },
    #[error("{name}: {source}")]
    Diagram { name: String, source: DiagramError },
    #[error("{name}: {source}")]
    Grid { name: String, source: GridError },
    #[error("{name}: no such fixture")]
    Unknown { name: String },
    #[error("{name}: determinant {pd} from the PD disagrees with {grid} from the grid")]
    Disagreement { name: String, pd: u64, grid: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QaStatus {
    Unknot,
    Alternating,
    QuasiAlternating,
    /// Not quasi-alternating by the rank obstruction.
    Obstructed,
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub components: usize,
    pub det: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hfk_rank: Option<u64>,
    pub qa_status: QaStatus,
}

/// A crossing of the entry's diagram whose resolutions are named fixtures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleSpec {
    pub crossing: usize,
    pub zero: String,
    pub one: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triangles: Vec<TriangleSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub pd: Option<PlanarDiagram>,
    pub grid: Option<GridDiagram>,
    pub expected: Expected,
    pub triangles: Vec<TriangleSpec>,
}

#[derive(Clone, Debug)]
pub struct FixtureSet {
    fixtures: Vec<Fixture>,
}

macro_rules! embedded {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../fixtures/", $file)))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embedded!(
    "unknot.pd",
    "unknot.grid",
    "kink.pd",
    "clasp.pd",
    "unlink2.pd",
    "unlink2.grid",
    "hopf.pd",
    "hopf.grid",
    "trefoil.pd",
    "trefoil.grid",
    "figure_eight.pd",
    "figure_eight.grid",
    "5_1.pd",
    "5_1.grid",
    "5_2.pd",
    "5_2.grid",
    "6_1.pd",
    "6_1.grid",
    "6_2.pd",
    "6_2.grid",
    "6_3.pd",
    "6_3.grid",
    "8_19.pd",
    "8_19.grid",
    "8_20.pd",
    "8_20.grid",
);

const EMBEDDED_MANIFEST: &str = include_str!("../fixtures/manifest.json");

impl Manifest {
    pub fn embedded() -> Manifest {
        serde_json::from_str(EMBEDDED_MANIFEST).expect("bundled manifest parses")
    }

    fn build(&self, read: impl Fn(&str, &str) -> Result<String, FixtureError>) -> Result<FixtureSet, FixtureError> {
        let mut fixtures = Vec::new();
        for entry in &self.entries {
            let name = entry.name.clone();
            let pd = match &entry.pd {
                Some(path) => Some(
                    read(&name, path)?
                        .parse::<PlanarDiagram>()
                        .map_err(|source| FixtureError::Diagram { name: name.clone(), source })?,
                ),
                None => None,
            };
            let grid = match &entry.grid {
                Some(path) => Some(
                    read(&name, path)?
                        .parse::<GridDiagram>()
                        .map_err(|source| FixtureError::Grid { name: name.clone(), source })?,
                ),
                None => None,
            };
            fixtures.push(Fixture {
                name,
                pd,
                grid,
                expected: entry.expected.clone(),
                triangles: entry.triangles.clone(),
            });
        }
        Ok(FixtureSet { fixtures })
    }

    /// Parses the bundled fixtures. Grids are not run here; see
    /// [`FixtureSet::cross_check`].
    pub fn load_embedded(&self) -> Result<FixtureSet, FixtureError> {
        let files: BTreeMap<&str, &str> = EMBEDDED.iter().copied().collect();
        self.build(|name, path| {
            files.get(path).map(|s| s.to_string()).ok_or_else(|| FixtureError::Io {
                name: name.into(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, format!("{path} is not bundled")),
            })
        })
    }

    /// Reads `manifest.json` and the files it names from `dir`.
    pub fn load_dir(dir: &Path) -> Result<FixtureSet, FixtureError> {
        let text = std::fs::read_to_string(dir.join("manifest.json"))
            .map_err(|source| FixtureError::Io { name: "manifest.json".into(), source })?;
        let manifest: Manifest = serde_json::from_str(&text)?;
        manifest.build(|name, path| {
            std::fs::read_to_string(dir.join(path)).map_err(|source| FixtureError::Io { name: name.into(), source })
        })
    }
}

impl FixtureSet {
    pub fn embedded() -> FixtureSet {
        Manifest::embedded().load_embedded().expect("bundled fixtures parse")
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fixture> {
        self.fixtures.iter()
    }

    pub fn get(&self, name: &str) -> Result<&Fixture, FixtureError> {
        self.fixtures.iter().find(|f| f.name == name).ok_or_else(|| FixtureError::Unknown { name: name.into() })
    }

    /// Requires `|Δ(−1)|` from each grid to equal the PD determinant, for
    /// every entry carrying both.
    pub fn cross_check(&self, grid_limit: usize) -> Result<(), FixtureError> {
        for f in &self.fixtures {
            let (Some(pd), Some(grid)) = (&f.pd, &f.grid) else {
                continue;
            };
            let from_grid = crate::grid::tilde_homology_with_limit(grid, grid_limit)
                .and_then(|h| h.det_from_chi())
                .map_err(|source| FixtureError::Grid { name: f.name.clone(), source })?;
            let from_pd = determinant(pd);
            if from_grid != from_pd {
                return Err(FixtureError::Disagreement { name: f.name.clone(), pd: from_pd, grid: from_grid });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bundled_file_is_referenced() {
        let manifest = Manifest::embedded();
        let named: Vec<&str> =
            manifest.entries.iter().flat_map(|e| e.pd.iter().chain(e.grid.iter())).map(String::as_str).collect();
        for (file, _) in EMBEDDED {
            assert!(named.contains(file), "{file}");
        }
    }

    #[test]
    fn embedded_fixtures_parse_and_match_expectations() {
        let set = FixtureSet::embedded();
        assert!(set.iter().count() >= 12);
        for f in set.iter() {
            let pd = f.pd.as_ref().unwrap();
            assert_eq!(pd.components(), f.expected.components, "{}", f.name);
            assert_eq!(determinant(pd), f.expected.det, "{}", f.name);
        }
    }

    #[test]
    fn small_grids_cross_check() {
        let manifest = Manifest {
            entries: Manifest::embedded()
                .entries
                .into_iter()
                .filter(|e| ["unknot", "hopf", "trefoil", "unlink2", "clasp"].contains(&e.name.as_str()))
                .collect(),
        };
        manifest.load_embedded().unwrap().cross_check(6).unwrap();
    }

    #[test]
    fn mismatched_grid_is_rejected() {
        let mut manifest = Manifest::embedded();
        manifest.entries.retain(|e| e.name == "trefoil");
        manifest.entries[0].grid = Some("hopf.grid".into());
        let err = manifest.load_embedded().unwrap().cross_check(6).unwrap_err();
        assert!(matches!(err, FixtureError::Disagreement { pd: 3, grid: 2, .. }));
    }

    /// Equal up to multiplication by ±A^k, possibly after A ↦ A⁻¹.
    fn brackets_match(p: &[(i64, i64)], q: &[(i64, i64)]) -> bool {
        let normalize = |t: &[(i64, i64)], mirror: bool| -> Vec<(i64, i64)> {
            let mut v: Vec<(i64, i64)> = t.iter().map(|&(e, c)| (if mirror { -e } else { e }, c)).collect();
            v.sort();
            let (e0, c0) = v[0];
            v.iter().map(|&(e, c)| (e - e0, c * c0.signum())).collect()
        };
        normalize(p, false) == normalize(q, false) || normalize(p, false) == normalize(q, true)
    }

    #[test]
    fn both_8_20_diagrams_have_the_same_bracket() {
        use crate::determinant::kauffman_bracket;
        let table: PlanarDiagram = include_str!("../fixtures/8_20_knotinfo.pd").parse().unwrap();
        let set = FixtureSet::embedded();
        let braid = set.get("8_20").unwrap().pd.as_ref().unwrap();
        let terms = |pd: &PlanarDiagram| kauffman_bracket(pd).unwrap().terms().collect::<Vec<_>>();
        assert!(brackets_match(&terms(&table), &terms(braid)));
        let k8_19 = set.get("8_19").unwrap().pd.as_ref().unwrap();
        assert!(!brackets_match(&terms(&table), &terms(k8_19)));
    }

    #[test]
    fn load_from_directory() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let set = Manifest::load_dir(&dir).unwrap();
        assert_eq!(set.get("8_20").unwrap().expected.det, 9);
        assert!(set.get("nonexistent").is_err());
    }
}
