//! Classical configurations: a complete coloring of `Γ²` whose diagonal
//! colors never appear off the diagonal and whose colors pair up under
//! transposition.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label used for the color of pairs reached by no generator.
pub const EMPTY_ORIGIN: &str = "∅";

/// Metadata for one color id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorInfo {
    pub is_vertex: bool,
    pub inverse: u32,
    /// Set for `∅` and every color refined out of it.
    pub empty_lineage: bool,
    pub origin: String,
    /// Color id in the previous iteration this color was refined from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<u32>,
}

/// Per-color metadata, indexed by color id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorTable {
    colors: Vec<ColorInfo>,
}

impl ColorTable {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, color: u32) -> &ColorInfo {
        &self.colors[color as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &ColorInfo)> {
        self.colors.iter().enumerate().map(|(i, c)| (i as u32, c))
    }

    pub fn inverse(&self, color: u32) -> u32 {
        self.colors[color as usize].inverse
    }

    /// The color whose origin is `label`, if any.
    pub fn by_origin(&self, label: &str) -> Option<u32> {
        self.colors
            .iter()
            .position(|c| c.origin == label)
            .map(|i| i as u32)
    }
}

/// First cell breaking condition (i) or (ii).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ConfigViolation {
    /// A diagonal color also appears on the off-diagonal cell `(v1, v2)`.
    VertexColorOffDiagonal { color: u32, v1: usize, v2: usize },
    /// Pairs of `color` transpose to two different colors.
    InverseNotUnique {
        color: u32,
        first: (usize, usize),
        second: (usize, usize),
        first_inverse: u32,
        second_inverse: u32,
    },
}

impl fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexColorOffDiagonal { color, v1, v2 } => write!(
                f,
                "condition (i): vertex color {color} appears on ({v1}, {v2})"
            ),
            Self::InverseNotUnique {
                color,
                first,
                second,
                first_inverse,
                second_inverse,
            } => write!(
                f,
                "condition (ii): color {color} transposes to {first_inverse} at {first:?} \
                 but to {second_inverse} at {second:?}"
            ),
        }
    }
}

/// Scans a row-major `m × m` color matrix for violations of conditions (i)
/// and (ii). Color ids need not be dense.
pub fn check_configuration(m: usize, cells: &[u32]) -> std::result::Result<(), ConfigViolation> {
    assert_eq!(cells.len(), m * m, "color matrix must be m × m");
    let mut diagonal = std::collections::HashSet::new();
    for v in 0..m {
        diagonal.insert(cells[v * m + v]);
    }
    let mut inverse_of: HashMap<u32, (u32, (usize, usize))> = HashMap::new();
    for v1 in 0..m {
        for v2 in 0..m {
            let c = cells[v1 * m + v2];
            if v1 != v2 && diagonal.contains(&c) {
                return Err(ConfigViolation::VertexColorOffDiagonal { color: c, v1, v2 });
            }
            let t = cells[v2 * m + v1];
            match inverse_of.get(&c) {
                None => {
                    inverse_of.insert(c, (t, (v1, v2)));
                }
                Some(&(seen, at)) if seen != t => {
                    return Err(ConfigViolation::InverseNotUnique {
                        color: c,
                        first: at,
                        second: (v1, v2),
                        first_inverse: seen,
                        second_inverse: t,
                    });
                }
                Some(_) => {}
            }
        }
    }
    Ok(())
}

/// A configuration `(Γ, c)` on vertices `0..m` with dense color ids
/// `0..table.len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct Configuration {
    m: usize,
    cells: Vec<u32>,
    table: ColorTable,
    iteration: usize,
}

/// Per-color lineage data supplied when building a configuration; vertex
/// flags and inverses are always derived from the matrix.
#[derive(Clone, Debug)]
pub struct Lineage {
    pub origin: String,
    pub empty_lineage: bool,
    pub parent: Option<u32>,
}

impl Configuration {
    /// Builds a configuration from a dense color matrix, deriving vertex
    /// flags and inverses and verifying conditions (i) and (ii).
    pub fn from_cells(
        m: usize,
        cells: Vec<u32>,
        lineage: Vec<Lineage>,
        iteration: usize,
    ) -> Result<Self> {
        if cells.len() != m * m {
            return Err(Error::InvalidConfiguration(format!(
                "expected {} cells, got {}",
                m * m,
                cells.len()
            )));
        }
        let ncolors = lineage.len();
        let mut used = vec![false; ncolors];
        for &c in &cells {
            let slot = used.get_mut(c as usize).ok_or_else(|| {
                Error::InvalidConfiguration(format!("color id {c} has no table entry"))
            })?;
            *slot = true;
        }
        if let Some(unused) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidConfiguration(format!(
                "color id {unused} is not used by any pair"
            )));
        }
        check_configuration(m, &cells).map_err(|v| Error::InvalidConfiguration(v.to_string()))?;

        let mut is_vertex = vec![false; ncolors];
        for v in 0..m {
            is_vertex[cells[v * m + v] as usize] = true;
        }
        let mut inverse = vec![u32::MAX; ncolors];
        for v1 in 0..m {
            for v2 in 0..m {
                inverse[cells[v1 * m + v2] as usize] = cells[v2 * m + v1];
            }
        }
        let colors = lineage
            .into_iter()
            .enumerate()
            .map(|(i, l)| ColorInfo {
                is_vertex: is_vertex[i],
                inverse: inverse[i],
                empty_lineage: l.empty_lineage,
                origin: l.origin,
                parent: l.parent,
            })
            .collect();
        Ok(Self {
            m,
            cells,
            table: ColorTable { colors },
            iteration,
        })
    }

    /// Builds a configuration from a color matrix alone, renumbering colors
    /// densely in order of first appearance (row-major). Origins are the
    /// original ids.
    pub fn from_raw(m: usize, raw: &[u32]) -> Result<Self> {
        if raw.len() != m * m {
            return Err(Error::InvalidConfiguration(format!(
                "expected {} cells, got {}",
                m * m,
                raw.len()
            )));
        }
        let mut ids: HashMap<u32, u32> = HashMap::new();
        let mut lineage = Vec::new();
        let cells = raw
            .iter()
            .map(|&c| {
                *ids.entry(c).or_insert_with(|| {
                    lineage.push(Lineage {
                        origin: c.to_string(),
                        empty_lineage: false,
                        parent: None,
                    });
                    (lineage.len() - 1) as u32
                })
            })
            .collect();
        Self::from_cells(m, cells, lineage, 0)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn table(&self) -> &ColorTable {
        &self.table
    }

    pub fn color_count(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn color(&self, v1: usize, v2: usize) -> u32 {
        self.cells[v1 * self.m + v2]
    }

    /// Row-major color matrix.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn row(&self, v: usize) -> &[u32] {
        &self.cells[v * self.m..(v + 1) * self.m]
    }

    /// Re-verifies conditions (i) and (ii) and the table's derived fields.
    pub fn check(&self) -> std::result::Result<(), ConfigViolation> {
        check_configuration(self.m, &self.cells)
    }

    pub fn to_document(&self) -> ConfigDocument {
        ConfigDocument {
            schema_version: CONFIG_SCHEMA_VERSION,
            m: self.m,
            iteration: self.iteration,
            colors: self.cells.chunks(self.m.max(1)).map(|r| r.to_vec()).collect(),
            table: self.table.clone(),
        }
    }

    pub fn from_document(doc: &ConfigDocument) -> Result<Self> {
        if doc.schema_version != CONFIG_SCHEMA_VERSION {
            return Err(Error::Spec(format!(
                "unsupported configuration schema_version {}",
                doc.schema_version
            )));
        }
        if doc.colors.len() != doc.m || doc.colors.iter().any(|r| r.len() != doc.m) {
            return Err(Error::InvalidConfiguration("color matrix is not m × m".into()));
        }
        let lineage = doc
            .table
            .iter()
            .map(|(_, c)| Lineage {
                origin: c.origin.clone(),
                empty_lineage: c.empty_lineage,
                parent: c.parent,
            })
            .collect();
        let config = Self::from_cells(doc.m, doc.colors.concat(), lineage, doc.iteration)?;
        for (id, info) in config.table.iter() {
            let stored = doc.table.get(id);
            if stored.is_vertex != info.is_vertex || stored.inverse != info.inverse {
                return Err(Error::InvalidConfiguration(format!(
                    "table entry for color {id} disagrees with the matrix"
                )));
            }
        }
        Ok(config)
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Configuration")
            .field("m", &self.m)
            .field("colors", &self.table.len())
            .field("iteration", &self.iteration)
            .finish()
    }
}

pub const CONFIG_SCHEMA_VERSION: u32 = 1;

/// JSON form of a configuration: the color matrix as rows plus the color
/// table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDocument {
    pub schema_version: u32,
    pub m: usize,
    pub iteration: usize,
    pub colors: Vec<Vec<u32>>,
    pub table: ColorTable,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_color_reused_off_diagonal() {
        // 0 on the diagonal and at (0, 1)
        let cells = vec![0, 0, 1, 0];
        assert_eq!(
            check_configuration(2, &cells),
            Err(ConfigViolation::VertexColorOffDiagonal { color: 0, v1: 0, v2: 1 })
        );
    }

    #[test]
    fn asymmetric_inverse_map() {
        // color 1 at (0,1) and (0,2); transposes are 2 and 3
        let cells = vec![
            0, 1, 1, //
            2, 0, 4, //
            3, 4, 0,
        ];
        assert!(matches!(
            check_configuration(3, &cells),
            Err(ConfigViolation::InverseNotUnique { color: 1, .. })
        ));
    }

    #[test]
    fn from_raw_derives_table() {
        let cfg = Configuration::from_raw(2, &[7, 9, 9, 7]).unwrap();
        assert_eq!(cfg.color_count(), 2);
        assert!(cfg.table().get(0).is_vertex);
        assert!(!cfg.table().get(1).is_vertex);
        assert_eq!(cfg.table().inverse(1), 1);
        assert_eq!(cfg.table().get(1).origin, "9");
    }

    #[test]
    fn document_round_trip() {
        let cfg = Configuration::from_raw(3, &[0, 1, 2, 2, 0, 1, 1, 2, 0]).unwrap();
        let json = serde_json::to_string(&cfg.to_document()).unwrap();
        let doc: ConfigDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(Configuration::from_document(&doc).unwrap(), cfg);
    }

    #[test]
    fn rejects_gaps_in_color_ids() {
        let lineage = (0..3)
            .map(|i| Lineage {
                origin: i.to_string(),
                empty_lineage: false,
                parent: None,
            })
            .collect();
        assert!(Configuration::from_cells(2, vec![0, 1, 1, 0], lineage, 0).is_err());
    }
}
