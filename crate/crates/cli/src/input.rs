//! Spec files and input errors.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use rotsurf::profile::{Curve, CurveSpec};
use rotsurf::surface::{RotationalSurface, SurfaceSpec};

/// Anything that should end the run with exit code 1.
#[derive(Debug)]
pub struct InputError {
    /// JSON path of the offending value, when it is known.
    pub path: Option<String>,
    pub message: String,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        InputError { path: None, message: message.into() }
    }

    pub fn at(path: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError { path: Some(path.into()), message: message.to_string() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.path {
            Some(p) => write!(f, "at {p}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl From<rotsurf::Error> for InputError {
    fn from(e: rotsurf::Error) -> Self {
        InputError::new(e.to_string())
    }
}

fn read_value(path: &Path) -> Result<Value, InputError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::at("$", format!("{} is not valid JSON: {e}", path.display())))
}

fn decode<T: DeserializeOwned>(value: Value) -> Result<T, InputError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        InputError::at(if path == "." { "$".to_string() } else { format!("$.{path}") }, e.into_inner())
    })
}

/// A spec file holds either a bare curve or a whole surface.
pub enum Spec {
    Curve(CurveSpec),
    Surface(SurfaceSpec),
}

impl Spec {
    pub fn curve_spec(&self) -> &CurveSpec {
        match self {
            Spec::Curve(c) => c,
            Spec::Surface(s) => &s.curve,
        }
    }
}

pub fn load_spec(path: &Path) -> Result<Spec, InputError> {
    let value = read_value(path)?;
    if value.get("curve").is_some() {
        decode(value).map(Spec::Surface)
    } else {
        decode(value).map(Spec::Curve)
    }
}

pub fn load_surface_spec(path: &Path) -> Result<SurfaceSpec, InputError> {
    match load_spec(path)? {
        Spec::Surface(s) => Ok(s),
        Spec::Curve(_) => Err(InputError::at("$", "expected a surface spec with \"kind\", \"curve\" and \"t_domain\"")),
    }
}

pub fn build_curve(spec: &CurveSpec, path: &str) -> Result<Curve, InputError> {
    spec.build().map_err(|e| InputError::at(path, e))
}

pub fn build_surface(spec: &SurfaceSpec) -> Result<RotationalSurface, InputError> {
    let curve = build_curve(&spec.curve, "$.curve")?;
    RotationalSurface::new(spec.kind, curve, spec.t_domain).map_err(|e| InputError::at("$", e))
}

pub fn load_surface(path: &Path) -> Result<RotationalSurface, InputError> {
    build_surface(&load_surface_spec(path)?)
}
