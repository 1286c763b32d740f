//! Finite free resolutions `0 -> F_p -> ... -> F_0` given as lists of matrices.
//!
//! `φ_i : F_i -> F_{i-1}` is stored with `β_{i-1}` rows and `β_i` columns; column `c` holds the
//! image of the `c`-th basis vector of `F_i`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{MatrixError, PolyMatrix};
use crate::poly::{parse_polynomial, PolyError, Ring, RingConfig};

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed resolution document: {0}")]
    Json(String),
    #[error("invalid ring: {0}")]
    Ring(PolyError),
    #[error("resolution has no maps")]
    Empty,
    #[error("map {map}: entry ({row}, {col}): {source}")]
    Entry { map: usize, row: usize, col: usize, source: PolyError },
    #[error("map {map}: {message}")]
    Shape { map: usize, message: String },
    #[error("φ_{map}·φ_{next} is not zero: entry ({row}, {col}) equals {value}", next = map + 1)]
    NotComplex { map: usize, row: usize, col: usize, value: String },
    #[error("claimed minimal, but φ_{map} entry ({row}, {col}) = {value} has a nonzero constant term")]
    NotMinimal { map: usize, row: usize, col: usize, value: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Betti numbers quoted for comparison with computed tables, e.g. from an external system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceBetti {
    pub j: u32,
    pub values: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RingDocument {
    variables: Vec<String>,
    characteristic: u32,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct MatrixDocument {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct ResolutionDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    ring: RingDocument,
    #[serde(default)]
    minimal: bool,
    maps: Vec<MatrixDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    reference_betti: Vec<ReferenceBetti>,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    maps: Vec<PolyMatrix>,
    betti: Vec<usize>,
    minimal: bool,
    description: Option<String>,
    reference_betti: Vec<ReferenceBetti>,
}

/// `r_i = Σ_{n ≥ i} (-1)^{n-i} β_n` for `i = 1..p`, plus `r_0`, the generic rank of the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectRanks {
    pub r: Vec<i64>,
    pub r0: i64,
}

impl DefectRanks {
    /// `r_i` for `1 <= i <= p`.
    pub fn get(&self, i: usize) -> i64 {
        self.r[i - 1]
    }
}

pub fn defect_ranks_of(betti: &[usize]) -> DefectRanks {
    let p = betti.len() - 1;
    let mut all = vec![0i64; p + 2];
    for i in (0..=p).rev() {
        all[i] = betti[i] as i64 - all[i + 1];
    }
    DefectRanks { r: all[1..=p].to_vec(), r0: all[0] }
}

impl FreeResolution {
    /// Validates shapes, the complex condition, and minimality when `minimal` is set.
    pub fn new(ring: &Ring, maps: Vec<PolyMatrix>, minimal: bool) -> Result<Self, ResolutionError> {
        if maps.is_empty() {
            return Err(ResolutionError::Empty);
        }
        for (k, m) in maps.iter().enumerate() {
            let i = k + 1;
            if m.rows() == 0 || m.cols() == 0 {
                return Err(ResolutionError::Shape {
                    map: i,
                    message: format!("free modules must have positive rank, got {}x{}", m.rows(), m.cols()),
                });
            }
            if **m.ring() != **ring {
                return Err(ResolutionError::Matrix(MatrixError::RingMismatch));
            }
            if k > 0 && maps[k - 1].cols() != m.rows() {
                return Err(ResolutionError::Shape {
                    map: i,
                    message: format!("has {} rows but φ_{} has {} columns", m.rows(), i - 1, maps[k - 1].cols()),
                });
            }
        }
        for k in 0..maps.len() - 1 {
            let prod = maps[k].mul(&maps[k + 1])?;
            if let Some((row, col, v)) = prod.first_nonzero() {
                return Err(ResolutionError::NotComplex {
                    map: k + 1,
                    row: row + 1,
                    col: col + 1,
                    value: v.to_string(),
                });
            }
        }
        if minimal {
            for (k, m) in maps.iter().enumerate() {
                if let Some((row, col)) = first_unit_entry(m) {
                    return Err(ResolutionError::NotMinimal {
                        map: k + 1,
                        row: row + 1,
                        col: col + 1,
                        value: m.get(row, col).to_string(),
                    });
                }
            }
        }
        let mut betti = vec![maps[0].rows()];
        betti.extend(maps.iter().map(PolyMatrix::cols));
        Ok(FreeResolution { ring: ring.clone(), maps, betti, minimal, description: None, reference_betti: Vec::new() })
    }

    pub fn from_json(text: &str) -> Result<Self, ResolutionError> {
        let doc: ResolutionDocument = serde_json::from_str(text).map_err(|e| ResolutionError::Json(e.to_string()))?;
        let ring = RingConfig::new(doc.ring.variables, doc.ring.characteristic).map_err(ResolutionError::Ring)?;
        let mut maps = Vec::with_capacity(doc.maps.len());
        for (k, m) in doc.maps.iter().enumerate() {
            let map = k + 1;
            if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
                return Err(ResolutionError::Shape {
                    map,
                    message: format!("declared {}x{} but entries do not match", m.rows, m.cols),
                });
            }
            let mut entries = Vec::with_capacity(m.rows * m.cols);
            for (row, r) in m.entries.iter().enumerate() {
                for (col, text) in r.iter().enumerate() {
                    let p = parse_polynomial(text, &ring).map_err(|source| ResolutionError::Entry {
                        map,
                        row: row + 1,
                        col: col + 1,
                        source,
                    })?;
                    entries.push(p);
                }
            }
            maps.push(PolyMatrix::new(&ring, m.rows, m.cols, entries)?);
        }
        let mut res = FreeResolution::new(&ring, maps, doc.minimal)?;
        res.description = doc.description;
        res.reference_betti = doc.reference_betti;
        Ok(res)
    }

    pub fn load(path: &Path) -> Result<Self, ResolutionError> {
        let text = fs::read_to_string(path)
            .map_err(|e| ResolutionError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    /// Canonical document: entries in canonical printout, fields in a fixed order.
    pub fn to_json(&self) -> String {
        let doc = ResolutionDocument {
            description: self.description.clone(),
            ring: RingDocument {
                variables: self.ring.variables().to_vec(),
                characteristic: self.ring.characteristic(),
            },
            minimal: self.minimal,
            maps: self.maps.iter().map(matrix_document).collect(),
            reference_betti: self.reference_betti.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("resolution serializes");
        s.push('\n');
        s
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `φ_1, ..., φ_p`.
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// `φ_i` for `1 <= i <= p`.
    pub fn map(&self, i: usize) -> &PolyMatrix {
        &self.maps[i - 1]
    }

    /// `β_0, ..., β_p`.
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    /// Length `p`.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// True when every entry of every map has zero constant term.
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.maps.iter().all(|m| first_unit_entry(m).is_none())
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    pub fn reference_betti(&self) -> &[ReferenceBetti] {
        &self.reference_betti
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }

    pub fn defect_ranks(&self) -> DefectRanks {
        defect_ranks_of(&self.betti)
    }
}

pub(crate) fn matrix_document(m: &PolyMatrix) -> MatrixDocument {
    MatrixDocument {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect(),
    }
}

fn first_unit_entry(m: &PolyMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !m.get(r, c).constant_term().is_zero())
}
