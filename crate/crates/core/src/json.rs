//! Codebook files.
//!
//! ```json
//! {
//!   "spec": { "subfield": "zeta9", "box": 1, "denom": 1, ... },
//!   "gamma": "zeta3",
//!   "elements": [ { "x0": [6 × "p/q"], "x1": [...], "x2": [...] }, ... ],
//!   "matrices": [ [ [ [re, im] × 3 ] × 3 ], ... ],
//!   "diversity": { "zeta": ..., "argmin": [i, j], ... }
//! }
//! ```
//!
//! Exact values are `p/q` strings; floats carry 15 significant digits and
//! are never read back into exact fields.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, AlgSpec};
use crate::codebook::{Codebook, ComplexMat3, DiversityReport, SubfieldSpec};
use crate::error::{Error, Result};
use crate::field::KElem;

/// Rounds to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaJson {
    Named(String),
    Exact(KElem),
}

impl GammaJson {
    pub fn from_spec(alg: &AlgSpec) -> Self {
        if alg.gamma() == &KElem::zeta3() {
            GammaJson::Named("zeta3".into())
        } else {
            GammaJson::Exact(alg.gamma().clone())
        }
    }

    pub fn to_spec(&self) -> Result<AlgSpec> {
        match self {
            GammaJson::Named(n) if n == "zeta3" => Ok(AlgSpec::default()),
            GammaJson::Named(n) => Err(Error::Parse(format!("unknown gamma {n:?}"))),
            GammaJson::Exact(k) => AlgSpec::new(k.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub subfield: String,
    #[serde(rename = "box")]
    pub bound: u32,
    pub denom: u32,
    pub candidates: u64,
    pub precondition_failures: u64,
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiversityJson {
    pub zeta: f64,
    pub argmin: [usize; 2],
    pub min_abs_det: f64,
    pub min_det: KElem,
    pub exact_nonzero: bool,
    pub pairs: usize,
}

impl From<&DiversityReport> for DiversityJson {
    fn from(r: &DiversityReport) -> Self {
        DiversityJson {
            zeta: round15(r.zeta),
            argmin: [r.argmin.0, r.argmin.1],
            min_abs_det: round15(r.min_abs_det),
            min_det: r.min_det.clone(),
            exact_nonzero: r.exact_nonzero,
            pairs: r.pairs,
        }
    }
}

pub type MatrixJson = [[[f64; 2]; 3]; 3];

pub fn matrix_to_json(m: &ComplexMat3) -> MatrixJson {
    m.map(|row| row.map(|c| [round15(c.re), round15(c.im)]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodebookFile {
    pub spec: ProvenanceJson,
    pub gamma: GammaJson,
    pub elements: Vec<AlgElem>,
    pub matrices: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diversity: Option<DiversityJson>,
}

impl CodebookFile {
    pub fn new(alg: &AlgSpec, cb: &Codebook, diversity: Option<&DiversityReport>) -> Self {
        CodebookFile {
            spec: ProvenanceJson {
                subfield: cb.subfield.to_string(),
                bound: cb.bound,
                denom: cb.denom,
                candidates: cb.candidates,
                precondition_failures: cb.precondition_failures,
                exhausted: cb.exhausted,
            },
            gamma: GammaJson::from_spec(alg),
            elements: cb.elements.clone(),
            matrices: cb.matrices.iter().map(matrix_to_json).collect(),
            diversity: diversity.map(DiversityJson::from),
        }
    }

    pub fn subfield(&self) -> Result<SubfieldSpec> {
        self.spec.subfield.parse()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("codebook serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
