//! JSON formats for matrices, finite decompositions and leading-block
//! reports of lazy decompositions.
//!
//! Matrix: `{"k": 3, "backend": "exact", "rows": 2, "cols": 2, "entries": [["1","w"],["0","w^2"]]}`.

use serde::{Deserialize, Serialize};

use crate::colfinite::{LazyDecomposition, TruncationReport};
use crate::decompose::{Decomposition, Mode, Summand, SummandKind, VerifyReport};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub k: u32,
    #[serde(default = "exact")]
    pub backend: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

fn exact() -> String {
    "exact".into()
}

impl MatrixJson {
    pub fn from_matrix<F: Field>(m: &Matrix<F>) -> Self {
        MatrixJson {
            k: m.field().root_order(),
            backend: m.field().name().into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_strings(),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))
    }

    pub fn to_matrix<F: Field>(&self, field: &F) -> Result<Matrix<F>> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Parse(format!("entries do not form a {}x{} grid", self.rows, self.cols)));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if self.rows == 0 {
            return Ok(Matrix::zeros(field.clone(), 0, self.cols));
        }
        Matrix::from_rows(field.clone(), rows)
    }
}

/// `{"potent": 4}` or `{"order": 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Potent(u32),
    Order(u32),
}

impl From<SummandKind> for KindJson {
    fn from(k: SummandKind) -> Self {
        match k {
            SummandKind::Potent { exponent } => KindJson::Potent(exponent),
            SummandKind::Order { order } => KindJson::Order(order),
        }
    }
}

impl From<KindJson> for SummandKind {
    fn from(k: KindJson) -> Self {
        match k {
            KindJson::Potent(exponent) => SummandKind::Potent { exponent },
            KindJson::Order(order) => SummandKind::Order { order },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub matrix: MatrixJson,
    pub kind: KindJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub summands: Vec<bool>,
    pub sum_matches: bool,
    pub approximate: bool,
    pub ok: bool,
}

impl From<&VerifyReport> for VerifyJson {
    fn from(r: &VerifyReport) -> Self {
        VerifyJson { summands: r.summands.clone(), sum_matches: r.sum_matches, approximate: r.approximate, ok: r.ok() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub target: MatrixJson,
    /// `"sum"` or `"linear-combination"`.
    pub mode: String,
    pub summands: Vec<SummandJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DecompositionJson {
    /// Serializes `d` together with a fresh check of it.
    pub fn from_decomposition<F: Field>(d: &Decomposition<F>) -> Self {
        let f = d.target.field();
        DecompositionJson {
            target: MatrixJson::from_matrix(&d.target),
            mode: d.mode.to_string(),
            summands: d
                .summands
                .iter()
                .map(|s| SummandJson {
                    matrix: MatrixJson::from_matrix(&s.matrix),
                    kind: s.kind.into(),
                    coefficient: s.coefficient.as_ref().map(|c| f.format(c)),
                    provenance: s.provenance.clone(),
                })
                .collect(),
            verification: Some((&d.check()).into()),
            certificate: d.certificate.clone(),
            claimed_count: d.claimed_count,
            notes: d.notes.clone(),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("decomposition JSON: {e}")))
    }

    /// Rebuilds the decomposition; `verified` is left false.
    pub fn to_decomposition<F: Field>(&self, field: &F) -> Result<Decomposition<F>> {
        let mode = match self.mode.as_str() {
            "sum" => Mode::Sum,
            "linear-combination" => Mode::LinearCombination,
            other => return Err(Error::Parse(format!("unknown mode {other:?}"))),
        };
        let target = self.target.to_matrix(field)?;
        let summands = self
            .summands
            .iter()
            .map(|s| {
                let m = s.matrix.to_matrix(field)?;
                Ok(match &s.coefficient {
                    Some(c) => Summand::scaled(field.parse(c)?, m, s.kind.into(), s.provenance.clone()),
                    None => Summand::new(m, s.kind.into(), s.provenance.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut d = Decomposition::new(target, summands, mode);
        d.certificate = self.certificate.clone();
        d.claimed_count = self.claimed_count;
        d.notes = self.notes.clone();
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSummandJson {
    pub label: String,
    pub part: String,
    pub provenance: String,
    pub kind: KindJson,
    pub size: usize,
    pub potent: bool,
    pub support: bool,
    pub matrix: MatrixJson,
}

/// Dense leading blocks of a lazy decomposition with their checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationJson {
    pub k: u32,
    pub requested: usize,
    pub target: MatrixJson,
    pub reconstruction: bool,
    pub counts: PartCounts,
    pub summands: Vec<TruncatedSummandJson>,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartCounts {
    pub upper: usize,
    pub lower: usize,
    pub diagonal: usize,
}

impl TruncationJson {
    pub fn build<F: Field>(d: &LazyDecomposition<F>, report: &TruncationReport) -> Self {
        use crate::colfinite::Part;
        let n = report.requested;
        TruncationJson {
            k: d.k,
            requested: n,
            target: MatrixJson::from_matrix(&d.target.truncate(n)),
            reconstruction: report.reconstruction,
            counts: PartCounts {
                upper: d.count(Part::Upper),
                lower: d.count(Part::Lower),
                diagonal: d.count(Part::Diagonal),
            },
            summands: d
                .summands
                .iter()
                .zip(&report.summands)
                .map(|(s, c)| TruncatedSummandJson {
                    label: c.label.clone(),
                    part: c.part.to_string(),
                    provenance: s.provenance.clone(),
                    kind: s.kind.into(),
                    size: c.size,
                    potent: c.potent,
                    support: c.support,
                    matrix: MatrixJson::from_matrix(&s.matrix.truncate(c.size)),
                })
                .collect(),
            ok: report.ok(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose_theorem1;
    use crate::scalars::Cyclotomic;

    #[test]
    fn matrix_round_trip() {
        let f = Cyclotomic::new(3).unwrap();
        let m = Matrix::parse(f.clone(), &[&["1/2", "w"], &["-3 + w^2", "0"]]).unwrap();
        let j = MatrixJson::from_matrix(&m);
        let text = serde_json::to_string(&j).unwrap();
        let back = MatrixJson::parse(&text).unwrap().to_matrix(&f).unwrap();
        assert_eq!(back, m);
        assert_eq!(MatrixJson::from_matrix(&back), j);
    }

    #[test]
    fn ragged_entries_rejected() {
        let j = MatrixJson::parse(r#"{"k":2,"rows":2,"cols":2,"entries":[["1","0"],["0"]]}"#).unwrap();
        assert!(j.to_matrix(&Cyclotomic::new(2).unwrap()).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let f = Cyclotomic::new(3).unwrap();
        let a = Matrix::parse(f.clone(), &[&["2", "1"], &["0", "w"]]).unwrap();
        let d = decompose_theorem1(&a, 3, None).unwrap();
        let j = DecompositionJson::from_decomposition(&d);
        assert!(j.verification.as_ref().unwrap().ok);
        let text = serde_json::to_string_pretty(&j).unwrap();
        let back = DecompositionJson::parse(&text).unwrap();
        assert_eq!(back, j);
        let mut d2 = back.to_decomposition(&f).unwrap();
        assert!(d2.verify().ok());
        assert_eq!(d2.len(), d.len());
    }
}
