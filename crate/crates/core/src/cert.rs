//! Canonical JSON certificates.
//!
//! A certificate names the field (planes are always rebuilt from
//! {p, h, modulus}, never shipped as incidence dumps), a kind, a payload of
//! sorted index arrays and reports, and the provenance of the object.
//! Canonical form: keys sorted, index arrays sorted, integers only, no
//! timestamps — two runs of the same command emit identical bytes, and
//! parse -> serialize is the identity on canonical input.

use crate::galois::{Field, GaloisError};
use crate::plane::Plane;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("certificate kind {got} does not fit this command (expected {expected})")]
    KindMismatch { expected: String, got: String },
    #[error("field: {0}")]
    Field(#[from] GaloisError),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Resolving,
    SemiResolving,
    Split,
    DoubleBlocking,
    Semioval,
    SearchResult,
    RedeiProfile,
    PlaneInfo,
}

impl CertKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertKind::Resolving => "resolving",
            CertKind::SemiResolving => "semi_resolving",
            CertKind::Split => "split",
            CertKind::DoubleBlocking => "double_blocking",
            CertKind::Semioval => "semioval",
            CertKind::SearchResult => "search_result",
            CertKind::RedeiProfile => "redei_profile",
            CertKind::PlaneInfo => "plane_info",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub h: u32,
    /// monic irreducible modulus, constant term first
    pub modulus: Vec<u64>,
}

impl FieldDescriptor {
    pub fn of(field: &Field) -> FieldDescriptor {
        FieldDescriptor {
            p: field.p(),
            h: field.h(),
            modulus: field.modulus().to_vec(),
        }
    }

    pub fn build_field(&self) -> Result<Field, CertError> {
        Ok(Field::new(self.p, self.h, Some(self.modulus.clone()))?)
    }

    pub fn build_plane(&self) -> Result<Plane, CertError> {
        Ok(Plane::new(self.build_field()?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub kind: CertKind,
    pub field: FieldDescriptor,
    pub payload: Value,
    pub provenance: Value,
}

impl Certificate {
    pub fn new(kind: CertKind, field: &Field, payload: Value, provenance: Value) -> Certificate {
        Certificate {
            schema_version: SCHEMA_VERSION,
            kind,
            field: FieldDescriptor::of(field),
            payload,
            provenance,
        }
    }

    /// Canonical rendering: route through `serde_json::Value`, whose object
    /// maps are BTree-backed, so keys come out sorted.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificates serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values render");
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Certificate, CertError> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| CertError::Json(e.to_string()))?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(CertError::SchemaVersion(cert.schema_version));
        }
        Ok(cert)
    }

    pub fn load(path: &std::path::Path) -> Result<Certificate, CertError> {
        let text = std::fs::read_to_string(path).map_err(|e| CertError::Io(e.to_string()))?;
        Certificate::parse(&text)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), CertError> {
        std::fs::write(path, self.to_canonical_json()).map_err(|e| CertError::Io(e.to_string()))
    }

    pub fn expect_kind(&self, kinds: &[CertKind]) -> Result<(), CertError> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(CertError::KindMismatch {
                expected: kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join("|"),
                got: self.kind.name().into(),
            })
        }
    }

    fn index_array(&self, key: &str) -> Result<Vec<u32>, CertError> {
        match self.payload.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|x| x as u32)
                        .ok_or_else(|| CertError::Malformed(format!("{key} holds a non-integer")))
                })
                .collect(),
            Some(_) => Err(CertError::Malformed(format!("{key} is not an array"))),
        }
    }

    pub fn points(&self) -> Result<Vec<u32>, CertError> {
        self.index_array("points")
    }

    pub fn lines(&self) -> Result<Vec<u32>, CertError> {
        self.index_array("lines")
    }

    /// Optional blocking-set parts carried by double-blocking certificates.
    pub fn parts(&self) -> Result<Option<(Vec<u32>, Vec<u32>)>, CertError> {
        match self.payload.get("parts") {
            None => Ok(None),
            Some(Value::Array(parts)) if parts.len() == 2 => {
                let get = |v: &Value| -> Result<Vec<u32>, CertError> {
                    v.as_array()
                        .ok_or_else(|| CertError::Malformed("part is not an array".into()))?
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .map(|x| x as u32)
                                .ok_or_else(|| CertError::Malformed("non-integer index".into()))
                        })
                        .collect()
                };
                Ok(Some((get(&parts[0])?, get(&parts[1])?)))
            }
            Some(_) => Err(CertError::Malformed("parts must hold two arrays".into())),
        }
    }
}

/// Payload helper: {"points": [...], "lines": [...], "verified": flag}.
pub fn set_payload(points: &[u32], lines: Option<&[u32]>, verified: bool) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("points".into(), serde_json::to_value(points).unwrap());
    if let Some(lines) = lines {
        map.insert("lines".into(), serde_json::to_value(lines).unwrap());
    }
    map.insert("verified".into(), Value::Bool(verified));
    Value::Object(map)
}

/// Provenance helper: {"generator": name, "params": {...}}.
pub fn provenance(generator: &str, params: &[(&str, u64)]) -> Value {
    let mut pmap = serde_json::Map::new();
    for (k, v) in params {
        pmap.insert((*k).into(), Value::from(*v));
    }
    let mut map = serde_json::Map::new();
    map.insert("generator".into(), Value::from(generator));
    map.insert("params".into(), Value::Object(pmap));
    Value::Object(map)
}
