use std::fmt;
use std::path::Path;

use so4_geom::datasets::{self, DatasetError, Params};
use so4_geom::liealg::{LieAlgebra, LieError};
use so4_geom::quaternionic::QuatError;
use so4_geom::torsion::TorsionError;
use so4_geom::{Matrix, Scalar};

#[derive(Debug)]
pub enum CliError {
    /// malformed input: exit 2
    Parse(String),
    /// the structure equations violate d² = 0: exit 3
    Jacobi(String),
    /// a requested property does not hold: exit 1
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Jacobi(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Jacobi(m) => write!(f, "Jacobi identity fails: {m}"),
            CliError::Failed(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::JacobiFail(label) => CliError::Jacobi(label),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<TorsionError> for CliError {
    fn from(e: TorsionError) -> Self {
        match e {
            TorsionError::Lie(l) => l.into(),
            TorsionError::ConstraintViolated | TorsionError::NotInvariant => CliError::Failed(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        match e {
            DatasetError::Lie(l) => l.into(),
            DatasetError::Torsion(t) => t.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<QuatError> for CliError {
    fn from(e: QuatError) -> Self {
        match e {
            QuatError::Lie(l) => l.into(),
            QuatError::NotClosed => CliError::Failed(e.to_string()),
            QuatError::WrongDimension => CliError::Parse(e.to_string()),
        }
    }
}

/// An algebra to work on, with the coframe adapted to the canonical forms if one is known.
#[derive(Debug, Clone)]
pub struct Target {
    pub name: String,
    pub origin: Option<&'static str>,
    pub algebra: LieAlgebra,
    pub coframe: Option<Matrix>,
}

impl Target {
    /// The algebra rewritten in the adapted coframe.
    pub fn adapted(&self) -> Result<LieAlgebra, CliError> {
        Ok(match &self.coframe {
            Some(m) => self.algebra.change_coframe(m)?,
            None => self.algebra.clone(),
        })
    }
}

pub fn parse_param(text: &str) -> Result<(String, Scalar), String> {
    let (name, value) = text.split_once('=').ok_or("expected NAME=SCALAR")?;
    let value = Scalar::parse(value.trim()).map_err(|e| e.to_string())?;
    Ok((name.trim().to_string(), value))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Rows of scalars separated by commas or whitespace; blank lines and `#` comments ignored.
pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| Scalar::parse(t).map_err(|e| CliError::Parse(format!("{t}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse("coframe must be a square matrix".into()));
    }
    Ok(Matrix::from_rows(rows))
}

/// `builtin:NAME`, a bare builtin name, or a path to a structure-equation file.
pub fn load(spec: &str, params: &[(String, Scalar)], coframe: Option<&Path>) -> Result<Target, CliError> {
    let params: Params = params.iter().cloned().collect();
    let builtin_name = spec
        .strip_prefix("builtin:")
        .or_else(|| (datasets::origin(spec).is_some() && !Path::new(spec).exists()).then_some(spec));
    let mut target = match builtin_name {
        Some(name) => {
            let (algebra, frame) = datasets::builtin(name, &params)?;
            Target {
                name: name.to_string(),
                origin: datasets::origin(name),
                algebra,
                coframe: frame,
            }
        }
        None => {
            if !params.is_empty() {
                return Err(CliError::Parse("--param applies to builtins only".into()));
            }
            let algebra = LieAlgebra::parse_file(&read(Path::new(spec))?)?;
            Target {
                name: spec.to_string(),
                origin: None,
                algebra,
                coframe: None,
            }
        }
    };
    if let Some(path) = coframe {
        let m = parse_matrix(&read(path)?)?;
        if m.rows() != target.algebra.dim() {
            return Err(CliError::Parse(format!(
                "coframe is {}x{} but the algebra has dimension {}",
                m.rows(),
                m.rows(),
                target.algebra.dim()
            )));
        }
        target.coframe = Some(m);
    }
    target.algebra.require_jacobi()?;
    Ok(target)
}
