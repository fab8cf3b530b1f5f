//! Serializable report structures shared with the CLI. Complex numbers
//! serialize as [re, im]; matrices as row-major nested arrays.

use crate::linalg::CMat;
use serde::Serialize;

pub type CJson = [f64; 2];

pub fn complex_json(z: num_complex::Complex64) -> CJson {
    [z.re, z.im]
}

pub fn matrix_json(m: &CMat) -> Vec<Vec<CJson>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| complex_json(m[(i, j)])).collect())
        .collect()
}

/// Common JSON header: {meta: {...}, data: {...}}.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub r: u32,
    pub alpha: f64,
    pub tolerance: f64,
    pub version: String,
}

impl Meta {
    pub fn new(r: u32, alpha: f64, tolerance: f64) -> Self {
        Meta { r, alpha, tolerance, version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub meta: Meta,
    pub data: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(meta: Meta, data: T) -> Self {
        Report { meta, data }
    }

    pub fn to_json(&self) -> crate::error::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
