//! Input loading: category description files, instance configurations,
//! and custom entailment tables, with JSON-pointer style schema errors.

use devhom::fincat::{build_from_spec, CategorySpec, FinCategory};
use serde::Deserialize;
use serde_json::Value;
use std::path::Path;

#[derive(Debug)]
pub enum InputError {
    Io(String),
    Schema { pointer: String, message: String },
    Invalid(String),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io(m) => write!(f, "{m}"),
            InputError::Schema { pointer, message } => {
                write!(f, "schema violation at `{pointer}`: {message}")
            }
            InputError::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl From<devhom::Error> for InputError {
    fn from(e: devhom::Error) -> Self {
        InputError::Invalid(e.to_string())
    }
}

pub fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Io(format!("cannot read `{}`: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::Schema {
        pointer: "/".into(),
        message: format!("not valid JSON: {e}"),
    })
}

fn expect_string(v: &Value, pointer: &str) -> Result<(), InputError> {
    if !v.is_string() {
        return Err(InputError::Schema {
            pointer: pointer.to_string(),
            message: "expected a string".into(),
        });
    }
    Ok(())
}

/// Structural check of a category description with pointer-path errors,
/// ahead of typed deserialization.
fn check_category_value(v: &Value) -> Result<(), InputError> {
    let obj = v.as_object().ok_or_else(|| InputError::Schema {
        pointer: "/".into(),
        message: "expected a JSON object".into(),
    })?;
    let known = [
        "schema", "objects", "morphisms", "compose", "poset", "discrete", "monoid",
    ];
    for key in obj.keys() {
        if !known.contains(&key.as_str()) {
            return Err(InputError::Schema {
                pointer: format!("/{key}"),
                message: "unknown key".into(),
            });
        }
    }
    if let Some(objects) = obj.get("objects") {
        let arr = objects.as_array().ok_or_else(|| InputError::Schema {
            pointer: "/objects".into(),
            message: "expected an array of strings".into(),
        })?;
        for (i, o) in arr.iter().enumerate() {
            expect_string(o, &format!("/objects/{i}"))?;
        }
    }
    if let Some(morphisms) = obj.get("morphisms") {
        let arr = morphisms.as_array().ok_or_else(|| InputError::Schema {
            pointer: "/morphisms".into(),
            message: "expected an array".into(),
        })?;
        for (i, m) in arr.iter().enumerate() {
            let rec = m.as_object().ok_or_else(|| InputError::Schema {
                pointer: format!("/morphisms/{i}"),
                message: "expected an object with id/dom/cod".into(),
            })?;
            for field in ["id", "dom", "cod"] {
                let fv = rec.get(field).ok_or_else(|| InputError::Schema {
                    pointer: format!("/morphisms/{i}/{field}"),
                    message: "missing".into(),
                })?;
                expect_string(fv, &format!("/morphisms/{i}/{field}"))?;
            }
        }
    }
    if let Some(compose) = obj.get("compose") {
        let arr = compose.as_array().ok_or_else(|| InputError::Schema {
            pointer: "/compose".into(),
            message: "expected an array of [g, f, gf] triples".into(),
        })?;
        for (i, t) in arr.iter().enumerate() {
            let triple = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                InputError::Schema {
                    pointer: format!("/compose/{i}"),
                    message: "expected a [g, f, gf] triple".into(),
                }
            })?;
            for (j, s) in triple.iter().enumerate() {
                expect_string(s, &format!("/compose/{i}/{j}"))?;
            }
        }
    }
    Ok(())
}

pub fn load_category(path: &Path) -> Result<FinCategory, InputError> {
    let value = read_json(path)?;
    check_category_value(&value)?;
    let spec: CategorySpec = serde_json::from_value(value).map_err(|e| InputError::Schema {
        pointer: "/".into(),
        message: e.to_string(),
    })?;
    if let Some(schema) = &spec.schema {
        if schema != devhom::SCHEMA {
            return Err(InputError::Schema {
                pointer: "/schema".into(),
                message: format!("expected \"{}\"", devhom::SCHEMA),
            });
        }
    }
    Ok(build_from_spec(&spec)?)
}

/// Configuration for the graphs / relational instance.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoConfig {
    #[serde(default, rename = "schema", skip_serializing)]
    _schema: Option<String>,
    #[serde(default = "default_signature")]
    pub signature: Vec<(String, usize)>,
    pub max_size: usize,
    pub fragment: Vec<String>,
}

fn default_signature() -> Vec<(String, usize)> {
    vec![("E".to_string(), 2)]
}

/// Configuration for the field site.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    #[serde(default, rename = "schema")]
    _schema: Option<String>,
    pub primes: Vec<u64>,
    pub degree_bound: u32,
}

/// A custom entailment table: formulas, preorder pairs, and Γ.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreorderConfig {
    #[serde(default, rename = "schema")]
    _schema: Option<String>,
    pub formulas: Vec<String>,
    pub pairs: Vec<(String, String)>,
    pub gamma: Vec<String>,
}

pub fn load_config<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let value = read_json(path)?;
    if let Some(schema) = value.get("schema").and_then(Value::as_str) {
        if schema != devhom::SCHEMA {
            return Err(InputError::Schema {
                pointer: "/schema".into(),
                message: format!("expected \"{}\"", devhom::SCHEMA),
            });
        }
    }
    serde_json::from_value(value).map_err(|e| InputError::Schema {
        pointer: "/".into(),
        message: e.to_string(),
    })
}
