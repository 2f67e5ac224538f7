//! The JSON input document: `{"name", "k", "N", "coordinates"}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{parse_expr, print_expr, ParseError};
use crate::jets::Parametrization;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub coordinates: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("malformed input document: {0}")]
    Json(String),
    #[error("invalid input document: {0}")]
    Invalid(String),
    #[error("coordinate {index}: {source}")]
    Expr { index: usize, source: ParseError },
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// The document for a polynomial parametrization; `None` if a coordinate
    /// has a denominator, which the grammar cannot express.
    pub fn from_parametrization(p: &Parametrization) -> Option<Self> {
        let coordinates = p.coords().iter().map(|c| c.as_poly().map(print_expr)).collect::<Option<_>>()?;
        Some(InputDocument { name: p.name().to_string(), k: p.k(), n: p.ambient_dim(), coordinates })
    }

    pub fn to_parametrization(&self) -> Result<Parametrization, DocumentError> {
        if self.k == 0 || self.n == 0 {
            return Err(DocumentError::Invalid("k and N must be positive".into()));
        }
        if self.coordinates.len() != self.n {
            return Err(DocumentError::Invalid(format!(
                "N = {} but {} coordinates given",
                self.n,
                self.coordinates.len()
            )));
        }
        let polys = self
            .coordinates
            .iter()
            .enumerate()
            .map(|(index, s)| parse_expr(s, self.k).map_err(|source| DocumentError::Expr { index: index + 1, source }))
            .collect::<Result<Vec<_>, _>>()?;
        Parametrization::from_polys(self.name.clone(), self.k, polys)
            .map_err(|e| DocumentError::Invalid(e.to_string()))
    }
}

/// Parses a JSON input document into a parametrization.
pub fn parse_parametrization(text: &str) -> Result<Parametrization, DocumentError> {
    InputDocument::from_json(text)?.to_parametrization()
}
