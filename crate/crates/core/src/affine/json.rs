use super::element::GroupElement;
use super::group::AffineGroup;
use crate::exact::{IntMatrix, QmodZ, QmodZVector};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Wire form of a group element: torus entries as reduced fraction strings
/// mod 1, matrix as nested integer rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub torus: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub n: usize,
    pub generators: Vec<ElementJson>,
}

impl ElementJson {
    pub fn from_element(e: &GroupElement) -> Self {
        let torus = e.torus_part().entries().iter().map(|q| q.to_string()).collect();
        let matrix = e
            .matrix_part()
            .to_i64_rows()
            .expect("group-element matrices stay within i64");
        ElementJson { torus, matrix }
    }

    pub fn to_element(&self, n: usize) -> Result<GroupElement> {
        if self.torus.len() != n || self.matrix.len() != n {
            return Err(Error::Parse(format!(
                "element has torus length {} and matrix rows {}, expected {n}",
                self.torus.len(),
                self.matrix.len()
            )));
        }
        if self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let mut entries = Vec::with_capacity(n);
        for s in &self.torus {
            entries.push(QmodZ::parse(s).map_err(Error::Parse)?);
        }
        let matrix = IntMatrix::from_i64_rows(&self.matrix);
        if !matrix.is_unimodular() {
            return Err(Error::Parse("matrix part must have determinant ±1".into()));
        }
        Ok(GroupElement::new(QmodZVector::from_entries(entries), matrix))
    }
}

impl GroupJson {
    pub fn from_generators(n: usize, generators: &[GroupElement]) -> Self {
        GroupJson {
            n,
            generators: generators.iter().map(ElementJson::from_element).collect(),
        }
    }

    pub fn to_generators(&self) -> Result<Vec<GroupElement>> {
        self.generators.iter().map(|e| e.to_element(self.n)).collect()
    }
}

pub fn parse_group_json(text: &str, cap: usize) -> Result<AffineGroup> {
    let parsed: GroupJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group JSON: {e}")))?;
    let gens = parsed.to_generators()?;
    if gens.is_empty() {
        return Err(Error::Parse("group JSON needs at least one generator".into()));
    }
    AffineGroup::close(gens, cap)
}

pub fn group_to_json_string(g: &AffineGroup) -> String {
    let doc = GroupJson::from_generators(g.dim(), g.generators());
    serde_json::to_string_pretty(&doc).expect("group JSON serialization is total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::catalogue;
    use crate::affine::group::DEFAULT_CLOSURE_CAP;

    #[test]
    fn round_trip_through_json() {
        let gens = catalogue::example62_generators();
        let g = AffineGroup::close_default(gens).unwrap();
        let text = group_to_json_string(&g);
        let back = parse_group_json(&text, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(back.order(), g.order());
        assert_eq!(back.elements(), g.elements());
    }

    #[test]
    fn parses_the_documented_shape() {
        let text = r#"{
            "n": 3,
            "generators": [
                {"torus": ["1/2", "0", "0"],
                 "matrix": [[0,1,-1],[1,0,-1],[0,0,-1]]}
            ]
        }"#;
        let g = parse_group_json(text, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.order() > 1);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_group_json("{}", 64).is_err());
        let bad_det = r#"{"n": 2, "generators": [
            {"torus": ["0", "0"], "matrix": [[2,0],[0,1]]}
        ]}"#;
        assert!(parse_group_json(bad_det, 64).is_err());
        let ragged = r#"{"n": 2, "generators": [
            {"torus": ["0", "0"], "matrix": [[1,0,0],[0,1,0]]}
        ]}"#;
        assert!(parse_group_json(ragged, 64).is_err());
        let bad_fraction = r#"{"n": 1, "generators": [
            {"torus": ["1/0"], "matrix": [[1]]}
        ]}"#;
        assert!(parse_group_json(bad_fraction, 64).is_err());
    }
}
