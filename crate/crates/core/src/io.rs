//! JSON file formats and report assembly.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::code::{
    certify_s_neighbour_transitive, classify_against_theorems, CellMethod, Classification, Code, LevelReport,
};
use crate::error::{Error, Result};
use crate::metric::KneserSpace;
use crate::perm::PermGroup;

/// Code file: `{n, k, codewords}` with 0-indexed sorted codewords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub n: usize,
    pub k: usize,
    pub codewords: Vec<Vec<usize>>,
}

impl CodeFile {
    pub fn from_code(code: &Code) -> Self {
        CodeFile {
            n: code.space().n(),
            k: code.space().k(),
            codewords: code.codewords().map(|w| w.elements()).collect(),
        }
    }

    pub fn into_code(self) -> Result<Code> {
        let space = KneserSpace::new(self.n, self.k)?;
        let words = self
            .codewords
            .iter()
            .map(|w| space.vertex(w))
            .collect::<Result<Vec<_>>>()?;
        Code::new(space, words)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_code(path: &Path) -> Result<Code> {
    read_json::<CodeFile>(path)?.into_code()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_sorted_json(value) + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_code(path: &Path, code: &Code) -> Result<()> {
    write_json(path, &CodeFile::from_code(code))
}

/// Pretty JSON with object keys in sorted order.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    // serde_json::Map is a BTreeMap unless `preserve_order` is enabled
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyzeDepth {
    /// `C_0..C_s`, by whichever method fits.
    UpTo(usize),
    /// The full partition by global sweep.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    /// `None` for a trivial code.
    pub delta: Option<usize>,
    pub intersection_distribution: BTreeMap<usize, u64>,
    pub cell_sizes: Vec<usize>,
    pub cell_method: CellMethod,
    pub rho: Option<usize>,
    pub nt_levels: Option<Vec<LevelReport>>,
    pub classification: Option<Classification>,
}

/// Metric facts about the code, plus symmetry data when a group is given.
/// Neighbour-transitivity levels stop at the last nonempty computed cell.
pub fn analyze(code: &Code, depth: AnalyzeDepth, group: Option<&PermGroup>) -> Result<AnalysisReport> {
    let delta = if code.is_trivial() { None } else { Some(code.min_distance()?) };
    let part = match depth {
        AnalyzeDepth::Full => code.distance_partition()?,
        AnalyzeDepth::UpTo(s) => code.cells_up_to(s)?,
    };
    let mut cell_sizes = part.cell_sizes();
    if let AnalyzeDepth::UpTo(s) = depth {
        cell_sizes.truncate(s + 1);
    }
    let (nt_levels, classification) = match group {
        Some(g) if !code.is_trivial() => {
            let last = cell_sizes.iter().rposition(|&c| c > 0).unwrap_or(0);
            let cert = certify_s_neighbour_transitive(code, g, last)?;
            (Some(cert.levels), Some(classify_against_theorems(code, g)?))
        }
        Some(g) => {
            code.check_preserved_by(g)?;
            (None, Some(classify_against_theorems(code, g)?))
        }
        None => (None, None),
    };
    Ok(AnalysisReport {
        n: code.space().n(),
        k: code.space().k(),
        size: code.len(),
        delta,
        intersection_distribution: code.intersection_distribution(),
        cell_method: part.method(),
        rho: part.rho(),
        cell_sizes,
        nt_levels,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::tetrahedron_code;

    #[test]
    fn code_file_round_trip() {
        let code = tetrahedron_code();
        let f = CodeFile::from_code(&code);
        assert_eq!(f.codewords.len(), 560);
        let back = f.into_code().unwrap();
        assert_eq!(back, code);
    }

    #[test]
    fn bad_code_file() {
        let f = CodeFile { n: 5, k: 2, codewords: vec![vec![0, 5]] };
        assert!(f.into_code().is_err());
        let f = CodeFile { n: 5, k: 2, codewords: vec![vec![0, 1, 2]] };
        assert!(f.into_code().is_err());
    }

    #[test]
    fn sorted_keys() {
        let s = to_sorted_json(&CodeFile { n: 5, k: 2, codewords: vec![vec![0, 1]] });
        let c = s.find("\"codewords\"").unwrap();
        let k = s.find("\"k\"").unwrap();
        let n = s.find("\"n\"").unwrap();
        assert!(c < k && k < n);
    }
}
