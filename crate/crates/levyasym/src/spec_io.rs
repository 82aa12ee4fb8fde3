//! JSON density specs.

use std::path::Path;

use levyasym_core::density::{DensityPiece, LevyDensitySpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub lo: f64,
    pub hi: f64,
    pub inv_coeff: f64,
    pub poly: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub pieces: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SpecDoc {
    pub fn from_spec(spec: &LevyDensitySpec) -> Self {
        Self {
            pieces: spec
                .pieces()
                .iter()
                .map(|p| PieceDoc {
                    lo: p.lo,
                    hi: p.hi,
                    inv_coeff: p.inv_coeff,
                    poly: p.poly.clone(),
                })
                .collect(),
            label: spec.label.clone(),
        }
    }

    pub fn to_spec(&self) -> Result<LevyDensitySpec, CliError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| DensityPiece::new(p.lo, p.hi, p.inv_coeff, p.poly.clone()))
            .collect();
        Ok(LevyDensitySpec::new(pieces, self.label.clone())?)
    }

    /// SHA-256 of the compact serialization.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("plain data serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

pub fn parse_spec(document: &str) -> Result<(SpecDoc, LevyDensitySpec), CliError> {
    let doc: SpecDoc =
        serde_json::from_str(document).map_err(|e| CliError::Schema(e.to_string()))?;
    let spec = doc.to_spec()?;
    Ok((doc, spec))
}

pub fn serialize_spec(spec: &LevyDensitySpec) -> String {
    serde_json::to_string_pretty(&SpecDoc::from_spec(spec)).expect("plain data serializes")
}

pub fn load_spec(path: &Path) -> Result<(SpecDoc, LevyDensitySpec), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use levyasym_core::density::Builtin;

    #[test]
    fn round_trip() {
        for b in [
            Builtin::Dickman,
            Builtin::Truncated(0.3),
            Builtin::Uniform(0.0),
        ] {
            let spec = LevyDensitySpec::builtin(b).unwrap();
            let (_, back) = parse_spec(&serialize_spec(&spec)).unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn schema_and_invariant_errors() {
        assert!(matches!(
            parse_spec("{\"pieces\": 3}"),
            Err(CliError::Schema(_))
        ));
        let gap = r#"{"pieces":[{"lo":0,"hi":0.5,"inv_coeff":0,"poly":[1]},
                               {"lo":0.6,"hi":1,"inv_coeff":0,"poly":[1]}]}"#;
        match parse_spec(gap) {
            Err(CliError::Core(e)) => assert!(e.to_string().contains("gap")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_on_upper_half() {
        let (_, s) =
            parse_spec(r#"{"pieces":[{"lo":0.5,"hi":1,"inv_coeff":0,"poly":[1]}]}"#).unwrap();
        assert_eq!(s.mass, 0.5);
        assert_eq!(s.first_moment, 0.375);
        assert!((s.class.atom_mass_at_beta0 - (-0.5f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn hash_is_stable() {
        let d = SpecDoc::from_spec(&LevyDensitySpec::builtin(Builtin::Dickman).unwrap());
        assert_eq!(d.hash(), d.clone().hash());
        assert_eq!(d.hash().len(), 64);
    }
}
