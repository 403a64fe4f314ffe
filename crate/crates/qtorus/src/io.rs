//! Wire formats shared by the command-line tool and the examples: Fourier
//! series, generator words, integer matrices, dense operators, and spectra.
//!
//! Everything round-trips through serde_json with a fixed field order, so a
//! fixed configuration and seed always produce byte-identical output files.
//! CSV writers cover the same payloads in a flat `row,col,re,im` style for
//! spreadsheet inspection.

use crate::algebra::TorusElement;
use crate::intertwiner::{RhoMethod, RhoResult};
use crate::lattice::LatticePoint;
use crate::numerics::CMatrix;
use crate::planck::PlanckData;
use crate::symplectic::{GeneratorItem, GeneratorWord, SpElement};
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,
    #[error("expected a {expected}x{expected} matrix, found {rows}x{cols}")]
    MatrixShape { rows: usize, cols: usize, expected: usize },
    #[error("frequency vector has {got} entries, expected {expected}")]
    XiLength { got: usize, expected: usize },
    #[error("operator entries do not form a {dim}x{dim} grid")]
    OperatorShape { dim: usize },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
    #[error(transparent)]
    Symplectic(#[from] crate::symplectic::SymplecticError),
}

/// One Fourier coefficient: frequency vector and complex amplitude.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FourierTermRecord {
    pub xi: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

pub fn parse_fourier(planck: &PlanckData, json: &str) -> Result<TorusElement, IoError> {
    let records: Vec<FourierTermRecord> = serde_json::from_str(json)?;
    let expected = 2 * planck.n();
    let mut terms = Vec::with_capacity(records.len());
    for rec in records {
        if rec.xi.len() != expected {
            return Err(IoError::XiLength { got: rec.xi.len(), expected });
        }
        terms.push((
            LatticePoint::from_coords(&rec.xi)?,
            Complex64::new(rec.re, rec.im),
        ));
    }
    Ok(TorusElement::from_terms(planck.clone(), terms)?)
}

pub fn fourier_records(f: &TorusElement) -> Vec<FourierTermRecord> {
    f.terms()
        .map(|(xi, c)| FourierTermRecord { xi: xi.coords(), re: c.re, im: c.im })
        .collect()
}

/// One word letter, tagged by generator family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum WordItemRecord {
    Gl { matrix: Vec<Vec<i64>> },
    Unipotent { matrix: Vec<Vec<i64>> },
    Fourier { matrix: Vec<Vec<i64>> },
}

fn int_matrix(rows: &[Vec<i64>], expected: usize) -> Result<Array2<i64>, IoError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(IoError::RaggedMatrix);
    }
    if nrows != expected || ncols != expected {
        return Err(IoError::MatrixShape { rows: nrows, cols: ncols, expected });
    }
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    Ok(Array2::from_shape_vec((nrows, ncols), flat).expect("shape checked"))
}

pub fn parse_word(n: usize, json: &str) -> Result<GeneratorWord, IoError> {
    let records: Vec<WordItemRecord> = serde_json::from_str(json)?;
    let mut items = Vec::with_capacity(records.len());
    for rec in records {
        let item = match rec {
            WordItemRecord::Gl { matrix } => GeneratorItem::gl(int_matrix(&matrix, n)?)?,
            WordItemRecord::Unipotent { matrix } => {
                GeneratorItem::unipotent(int_matrix(&matrix, n)?)?
            }
            WordItemRecord::Fourier { matrix } => GeneratorItem::fourier(int_matrix(&matrix, n)?)?,
        };
        items.push(item);
    }
    Ok(GeneratorWord::new(n, items)?)
}

/// A bare integer matrix file, used for symplectic group elements.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub matrix: Vec<Vec<i64>>,
}

pub fn parse_symplectic(n: usize, json: &str) -> Result<SpElement, IoError> {
    let rec: MatrixRecord = serde_json::from_str(json)?;
    Ok(SpElement::validate(int_matrix(&rec.matrix, 2 * n)?)?)
}

/// Dense complex operator, entries row-major as [re, im] pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorRecord {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl OperatorRecord {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let dim = m.nrows();
        let entries = (0..dim)
            .map(|r| (0..dim).map(|c| [m[[r, c]].re, m[[r, c]].im]).collect())
            .collect();
        OperatorRecord { dim, entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix, IoError> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(IoError::OperatorShape { dim: self.dim });
        }
        Ok(CMatrix::from_shape_fn((self.dim, self.dim), |(r, c)| {
            Complex64::new(self.entries[r][c][0], self.entries[r][c][1])
        }))
    }
}

/// Serialized form of a certified intertwiner.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RhoRecord {
    pub method: RhoMethod,
    pub egorov_residual: f64,
    pub operator: OperatorRecord,
}

impl RhoRecord {
    pub fn from_result(r: &RhoResult) -> Self {
        RhoRecord {
            method: r.method(),
            egorov_residual: r.egorov_residual(),
            operator: OperatorRecord::from_matrix(r.op()),
        }
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn operator_csv(m: &CMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let z = m[[r, c]];
            out.push_str(&format!("{r},{c},{},{}\n", z.re, z.im));
        }
    }
    out
}

pub fn rho_csv(r: &RhoResult) -> String {
    let mut out = String::from("method,egorov_residual\n");
    out.push_str(&format!("{},{}\n\n", r.method(), r.egorov_residual()));
    out.push_str(&operator_csv(r.op()));
    out
}

pub fn spectrum_csv(phases: &[f64]) -> String {
    let mut out = String::from("index,phase\n");
    for (i, p) in phases.iter().enumerate() {
        out.push_str(&format!("{i},{p}\n"));
    }
    out
}

pub fn report_csv(report: &crate::verify::SuiteReport) -> String {
    let mut out = String::from("check,passed,residual,tolerance\n");
    for c in &report.checks {
        out.push_str(&format!("{},{},{},{}\n", c.name, c.passed, c.residual, c.tolerance));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::max_abs_diff;
    use crate::schrodinger::{weyl_quantize, RepContext};

    fn planck() -> PlanckData {
        PlanckData::new(1, 3, 1).unwrap()
    }

    #[test]
    fn fourier_files_round_trip_through_the_algebra() {
        let json = r#"[
            {"xi": [1, 0], "re": 0.5, "im": -1.0},
            {"xi": [0, 2], "re": 2.0, "im": 0.0},
            {"xi": [1, 0], "re": 0.5, "im": 0.0}
        ]"#;
        let f = parse_fourier(&planck(), json).unwrap();
        assert_eq!(f.support_len(), 2);
        let xi = LatticePoint::from_coords(&[1, 0]).unwrap();
        assert_eq!(f.coeff(&xi), Complex64::new(1.0, -1.0));

        let records = fourier_records(&f);
        let back = parse_fourier(&planck(), &to_json_pretty(&records)).unwrap();
        assert_eq!(back.max_coeff_diff(&f).unwrap(), 0.0);
    }

    #[test]
    fn fourier_rejects_wrong_arity_and_bad_json() {
        let bad = parse_fourier(&planck(), r#"[{"xi": [1], "re": 1.0, "im": 0.0}]"#);
        assert!(matches!(bad, Err(IoError::XiLength { got: 1, expected: 2 })));
        assert!(matches!(parse_fourier(&planck(), "not json"), Err(IoError::Json(_))));
    }

    #[test]
    fn word_files_build_validated_words() {
        let json = r#"[
            {"type": "fourier", "matrix": [[1]]},
            {"type": "unipotent", "matrix": [[2]]},
            {"type": "gl", "matrix": [[-1]]}
        ]"#;
        let word = parse_word(1, json).unwrap();
        assert_eq!(word.items().len(), 3);
        assert!(word.to_matrix().matrix()[[0, 1]] != 0);

        let bad = parse_word(1, r#"[{"type": "gl", "matrix": [[2]]}]"#);
        assert!(bad.is_err());
        let ragged = parse_word(2, r#"[{"type": "gl", "matrix": [[1, 0], [0]]}]"#);
        assert!(matches!(ragged, Err(IoError::RaggedMatrix)));
    }

    #[test]
    fn symplectic_matrix_files_are_validated() {
        let ok = parse_symplectic(1, r#"{"matrix": [[0, -1], [1, 0]]}"#).unwrap();
        assert_eq!(ok.matrix()[[0, 1]], -1);
        assert!(parse_symplectic(1, r#"{"matrix": [[1, 1], [1, 1]]}"#).is_err());
        assert!(matches!(
            parse_symplectic(1, r#"{"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#),
            Err(IoError::MatrixShape { expected: 2, .. })
        ));
    }

    #[test]
    fn operator_records_round_trip_exactly() {
        let ctx = RepContext::canonical(planck());
        let f = parse_fourier(&planck(), r#"[{"xi": [1, 2], "re": 0.25, "im": 1.5}]"#).unwrap();
        let q = weyl_quantize(&ctx, &f).unwrap();
        let rec = OperatorRecord::from_matrix(&q);
        let back = rec.to_matrix().unwrap();
        assert_eq!(max_abs_diff(&q, &back), 0.0);

        let json = to_json_pretty(&rec);
        let reparsed: OperatorRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(max_abs_diff(&q, &reparsed.to_matrix().unwrap()), 0.0);
    }

    #[test]
    fn csv_writers_are_stable() {
        let m = CMatrix::from_shape_fn((2, 2), |(r, c)| {
            Complex64::new(r as f64, c as f64)
        });
        let csv = operator_csv(&m);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("row,col,re,im\n0,0,0,0\n"));
        assert_eq!(spectrum_csv(&[0.0, 1.5]), "index,phase\n0,0\n1,1.5\n");
    }
}
