//! Canonical algebra files:
//!
//! ```text
//! {"format":"nva-algebra/1","field":{"kind":"Q"},"dim":4,"basis":["1","i","j","k"],
//!  "table":[[0,0,0,"1"],...]}
//! ```
//!
//! Triples are listed in lexicographic order and zero entries are omitted.
//! Coefficients are decimal rationals (`"3/2"`), canonical residues for
//! prime fields and `"a+b*r"` in `Q(r)`.

use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::subspace::Subspace;

pub const ALGEBRA_FORMAT: &str = "nva-algebra/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub format: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<(usize, usize, usize, String)>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &StructureAlgebra) -> Self {
        AlgebraFile {
            format: ALGEBRA_FORMAT.into(),
            field: alg.field(),
            dim: alg.dim(),
            basis: alg.basis_names().to_vec(),
            table: alg
                .entries()
                .map(|(i, j, k, c)| (i, j, k, c.to_string()))
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<StructureAlgebra> {
        if self.format != ALGEBRA_FORMAT {
            return Err(Error::Format(format!(
                "unsupported format '{}', expected '{ALGEBRA_FORMAT}'",
                self.format
            )));
        }
        if self.basis.len() != self.dim {
            return Err(Error::Format(format!(
                "dim is {} but {} basis names are given",
                self.dim,
                self.basis.len()
            )));
        }
        let entries = self
            .table
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, self.field.parse_scalar(c)?)))
            .collect::<Result<Vec<_>>>()?;
        StructureAlgebra::new(self.field, self.basis.clone(), entries)
    }
}

/// Compact canonical JSON with one table row per line.
pub fn write_algebra(alg: &StructureAlgebra) -> String {
    let file = AlgebraFile::from_algebra(alg);
    let rows: Vec<String> = file
        .table
        .iter()
        .map(|(i, j, k, c)| format!("[{i},{j},{k},{}]", json(c)))
        .collect();
    format!(
        "{{\"format\":{},\"field\":{},\"dim\":{},\"basis\":{},\"table\":[\n{}\n]}}\n",
        json(&file.format),
        json(&file.field),
        file.dim,
        json(&file.basis),
        rows.join(",\n")
    )
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn read_algebra(text: &str) -> Result<StructureAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_algebra()
}

/// A subspace as a list of rows of coefficient strings.
pub fn write_subspace(s: &Subspace) -> String {
    serde_json::to_string(&s.to_rows()).expect("strings serialize")
}

pub fn read_subspace(alg: &StructureAlgebra, text: &str) -> Result<Subspace> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    Subspace::from_rows(alg, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{kokoris_example, matrix_algebra, quaternions, scalar_extension};

    #[test]
    fn matrix_file_layout() {
        let a = matrix_algebra(1, FieldSpec::Rationals).unwrap();
        assert_eq!(
            write_algebra(&a),
            "{\"format\":\"nva-algebra/1\",\"field\":{\"kind\":\"Q\"},\"dim\":1,\"basis\":[\"e11\"],\"table\":[\n[0,0,0,\"1\"]\n]}\n"
        );
    }

    #[test]
    fn round_trip_over_each_field_kind() {
        let q = quaternions(FieldSpec::Rationals).unwrap().into_algebra();
        let k = FieldSpec::quadratic(-1).unwrap();
        let mut qk = scalar_extension(&q, k).unwrap();
        let r = k.adjoined_root().unwrap();
        // perturb one coefficient to exercise the a+b*r form
        let mut entries: Vec<_> = qk
            .entries()
            .map(|(i, j, l, c)| (i, j, l, c.clone()))
            .collect();
        entries.push((1, 1, 2, &r + &k.from_ratio(1, 2).unwrap()));
        qk = StructureAlgebra::new(k, qk.basis_names().to_vec(), entries).unwrap();
        for alg in [
            q,
            qk,
            kokoris_example(FieldSpec::prime(101).unwrap()).unwrap(),
        ] {
            let text = write_algebra(&alg);
            assert_eq!(read_algebra(&text).unwrap(), alg);
            assert_eq!(write_algebra(&read_algebra(&text).unwrap()), text);
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(read_algebra("{}").is_err());
        let bad_format =
            r#"{"format":"other","field":{"kind":"Q"},"dim":1,"basis":["x"],"table":[]}"#;
        assert!(read_algebra(bad_format).is_err());
        let bad_index = r#"{"format":"nva-algebra/1","field":{"kind":"Q"},"dim":1,"basis":["x"],"table":[[0,0,1,"1"]]}"#;
        assert!(read_algebra(bad_index).is_err());
        let bad_prime = r#"{"format":"nva-algebra/1","field":{"kind":"GFp","p":4},"dim":1,"basis":["x"],"table":[]}"#;
        assert!(read_algebra(bad_prime).is_err());
    }

    #[test]
    fn subspace_round_trip() {
        let a = matrix_algebra(2, FieldSpec::Rationals).unwrap();
        let s = Subspace::span(&a, &[a.element(&[1, 0, 0, 1]).unwrap()]).unwrap();
        let text = write_subspace(&s);
        assert_eq!(text, r#"[["1","0","0","1"]]"#);
        assert_eq!(read_subspace(&a, &text).unwrap(), s);
    }
}
