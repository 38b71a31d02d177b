//! JSON file formats read and written by the command-line tool.
//!
//! Amplitudes are coefficients on the orthonormal occupation basis with
//! 0-based mode indices. Floats are written in shortest round-trip form,
//! so a write followed by a read reproduces every amplitude exactly.

use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{CMatrix, Tolerances, C64};
use crate::mixed::DensityMatrix;
use crate::pure::{CanonicalSystem, PureState};
use crate::witness::WitnessOperator;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Fermion,
    Boson,
    Bipartite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub indices: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particles: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub single_particle_dim: Option<usize>,
    /// `[dim_a, dim_b]` for bipartite states.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    pub amplitudes: Vec<AmplitudeEntry>,
}

/// Dense complex matrix as separate real and imaginary row lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Density,
    Operator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub kind: MatrixKind,
    pub space: Space,
    pub matrix: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slater_class: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitaryFile {
    /// Always `"unitary"`.
    pub kind: String,
    pub system: CanonicalSystem,
    pub matrix: MatrixJson,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let rows = |f: fn(&C64) -> f64| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
        MatrixJson { re: rows(|z| z.re), im: rows(|z| z.im) }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.re.len();
        let m = self.re.first().map_or(0, Vec::len);
        if self.re.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged real part".into()));
        }
        if !self.im.is_empty() && (self.im.len() != n || self.im.iter().any(|r| r.len() != m)) {
            return Err(Error::DimensionMismatch("imaginary part does not match real part".into()));
        }
        Ok(CMatrix::from_fn(n, m, |i, j| C64::new(self.re[i][j], self.im.get(i).map_or(0.0, |r| r[j]))))
    }
}

impl StateFile {
    pub fn space(&self) -> Result<Space> {
        let need = |x: Option<usize>, what: &str| x.ok_or_else(|| Error::InvalidState(format!("missing {what}")));
        match self.kind {
            StateKind::Fermion => Ok(Space::fermions(need(self.particles, "particles")?, need(self.single_particle_dim, "single_particle_dim")?)),
            StateKind::Boson => Ok(Space::bosons(need(self.particles, "particles")?, need(self.single_particle_dim, "single_particle_dim")?)),
            StateKind::Bipartite => {
                let [a, b] = self.dims.ok_or_else(|| Error::InvalidState("missing dims".into()))?;
                Ok(Space::Bipartite { dim_a: a, dim_b: b })
            }
        }
    }

    /// Validates index tuples (strictly increasing for fermions,
    /// non-decreasing for bosons) and the normalization.
    pub fn to_state(&self) -> Result<PureState> {
        let space = self.space()?;
        let arity = space.particles();
        let mut entries = Vec::with_capacity(self.amplitudes.len());
        for a in &self.amplitudes {
            if a.indices.len() != arity {
                return Err(Error::InvalidState(format!("index tuple {:?} has length {}, expected {arity}", a.indices, a.indices.len())));
            }
            let ordered = match self.kind {
                StateKind::Fermion => a.indices.windows(2).all(|w| w[0] < w[1]),
                StateKind::Boson => a.indices.windows(2).all(|w| w[0] <= w[1]),
                StateKind::Bipartite => true,
            };
            if !ordered {
                return Err(Error::InvalidState(format!("index tuple {:?} is not sorted", a.indices)));
            }
            entries.push((a.indices.clone(), C64::new(a.re, a.im)));
        }
        PureState::from_entries(space, &entries)
    }

    /// Nonzero amplitudes in basis order.
    pub fn from_state(state: &PureState) -> Self {
        let space = state.space();
        let amplitudes = space
            .basis()
            .into_iter()
            .zip(state.amplitudes().iter())
            .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
            .map(|(indices, z)| AmplitudeEntry { indices, re: z.re, im: z.im })
            .collect();
        let (kind, particles, d, dims) = match space {
            Space::Antisymmetric { particles, dim } => (StateKind::Fermion, Some(particles), Some(dim), None),
            Space::Symmetric { particles, dim } => (StateKind::Boson, Some(particles), Some(dim), None),
            Space::Bipartite { dim_a, dim_b } => (StateKind::Bipartite, None, None, Some([dim_a, dim_b])),
        };
        StateFile { kind, particles, single_particle_dim: d, dims, amplitudes }
    }
}

impl MatrixFile {
    pub fn to_density(&self, tol: &Tolerances) -> Result<DensityMatrix> {
        if self.kind != MatrixKind::Density {
            return Err(Error::InvalidState("expected a density file".into()));
        }
        DensityMatrix::new(self.space, self.matrix.to_matrix()?, tol)
    }

    pub fn to_witness(&self, tol: &Tolerances) -> Result<WitnessOperator> {
        if self.kind != MatrixKind::Operator {
            return Err(Error::InvalidState("expected an operator file".into()));
        }
        let k = self.slater_class.ok_or_else(|| Error::InvalidState("operator file needs slater_class".into()))?;
        WitnessOperator::new(self.space, self.matrix.to_matrix()?, k, tol)
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        MatrixFile { kind: MatrixKind::Density, space: rho.space(), matrix: MatrixJson::from_matrix(rho.matrix()), slater_class: None, epsilon: None }
    }

    pub fn from_witness(w: &WitnessOperator) -> Self {
        MatrixFile {
            kind: MatrixKind::Operator,
            space: w.space(),
            matrix: MatrixJson::from_matrix(w.matrix()),
            slater_class: Some(w.slater_class()),
            epsilon: Some(w.epsilon()),
        }
    }
}

impl UnitaryFile {
    pub fn new(system: CanonicalSystem, u: &CMatrix) -> Self {
        UnitaryFile { kind: "unitary".into(), system, matrix: MatrixJson::from_matrix(u) }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.kind != "unitary" {
            return Err(Error::InvalidState(format!("expected kind \"unitary\", got {:?}", self.kind)));
        }
        self.matrix.to_matrix()
    }
}

/// Any of the file formats, recognized by `kind`.
#[derive(Debug, Clone)]
pub enum InputFile {
    State(StateFile),
    Matrix(MatrixFile),
    Unitary(UnitaryFile),
}

pub fn parse(text: &str) -> Result<InputFile> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::InvalidState(format!("invalid JSON: {e}")))?;
    let kind = value.get("kind").and_then(|k| k.as_str()).unwrap_or_default().to_string();
    let bad = |e: serde_json::Error| Error::InvalidState(format!("invalid {kind} file: {e}"));
    match kind.as_str() {
        "fermion" | "boson" | "bipartite" => Ok(InputFile::State(serde_json::from_value(value).map_err(bad)?)),
        "density" | "operator" => Ok(InputFile::Matrix(serde_json::from_value(value).map_err(bad)?)),
        "unitary" => Ok(InputFile::Unitary(serde_json::from_value(value).map_err(bad)?)),
        other => Err(Error::InvalidState(format!("unknown file kind {other:?}"))),
    }
}

pub fn read(path: &Path) -> Result<InputFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidState(format!("{}: {e}", path.display())))?;
    parse(&text)
}
