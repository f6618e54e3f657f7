//! Input files, built-in names and the fixture directory.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::complexes::{AlgebraFile, ComplexError, FinAlgebra};
use crate::fincat::format::{CategoryFile, FormatError};
use crate::fincat::{FinCategory, MorphismSet};
use crate::modloc::{FinCommRing, ModlocError};
use crate::triangulated::{ObjId, TriangulatedModel};

use super::CliError;

/// Overrides the fixture directory.
pub const FIXTURES_ENV: &str = "CATLOC_FIXTURES";

pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

/// The path itself if it exists, else the same path or file name inside the
/// fixture directory.
pub fn resolve(path: &Path) -> Result<PathBuf, CliError> {
    if path.exists() {
        return Ok(path.to_path_buf());
    }
    let dir = fixtures_dir();
    let mut candidates = vec![dir.join(path)];
    if let Some(name) = path.file_name() {
        candidates.push(dir.join(name));
    }
    candidates
        .into_iter()
        .find(|c| c.exists())
        .ok_or_else(|| CliError::Io { path: path.display().to_string(), message: "no such file".into() })
}

fn read(path: &Path) -> Result<(String, String), CliError> {
    let full = resolve(path)?;
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(&full).map_err(|e| CliError::Io { path: shown.clone(), message: e.to_string() })?;
    Ok((shown, text))
}

fn format_error(path: &str, e: FormatError) -> CliError {
    match e {
        FormatError::Parse { line, column, message } => CliError::Parse { path: path.into(), line, column, message },
        other => CliError::Input(format!("{path}: {other}")),
    }
}

/// Parses a category file without validating the axioms.
pub fn load_category(path: &Path) -> Result<(CategoryFile, FinCategory), CliError> {
    let (shown, text) = read(path)?;
    let file = CategoryFile::parse(&text).map_err(|e| format_error(&shown, e))?;
    let c = file.to_category_unchecked().map_err(|e| format_error(&shown, e))?;
    Ok((file, c))
}

/// A named set of the file, or a comma-separated list of morphism names.
/// `σ` is accepted for `sigma`.
pub fn load_sigma(file: &CategoryFile, c: &FinCategory, arg: &str) -> Result<MorphismSet, CliError> {
    let key = if arg == "σ" && !file.sets.contains_key(arg) { "sigma" } else { arg };
    if file.sets.contains_key(key) {
        return file.set(c, key).map_err(|e| CliError::Input(e.to_string()));
    }
    let names: Vec<&str> = arg.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    MorphismSet::from_names(c, &names).map_err(|e| CliError::Input(format!("--sigma {arg}: {e}")))
}

fn complex_error(path: &str, e: ComplexError) -> CliError {
    match e {
        ComplexError::Parse { line, column, message } => CliError::Parse { path: path.into(), line, column, message },
        other => CliError::Input(format!("{path}: {other}")),
    }
}

fn builtin_algebra(name: &str, p: u32) -> Option<Result<FinAlgebra, ComplexError>> {
    let count = |prefix: &str| name.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok()).filter(|&k| k >= 1);
    match name {
        "field" => Some(FinAlgebra::field(p)),
        "dual" => Some(FinAlgebra::truncated_polynomial(p, 2)),
        "product" => Some(FinAlgebra::product(p, 2)),
        _ => {
            if let Some(k) = count("product") {
                Some(FinAlgebra::product(p, k))
            } else {
                count("truncated").map(|n| FinAlgebra::truncated_polynomial(p, n))
            }
        }
    }
}

/// A built-in algebra over `F_p` or an algebra file.
pub fn load_algebra(arg: &str, p: u32) -> Result<Arc<FinAlgebra>, CliError> {
    if let Some(a) = builtin_algebra(arg, p) {
        return a.map(Arc::new).map_err(|e| CliError::Input(e.to_string()));
    }
    let (shown, text) = read(Path::new(arg))?;
    let file = AlgebraFile::parse(&text).map_err(|e| complex_error(&shown, e))?;
    file.to_algebra().map(Arc::new).map_err(|e| complex_error(&shown, e))
}

/// A built-in ring or a ring file.
pub fn load_ring(arg: &str) -> Result<FinCommRing, CliError> {
    if let Some(r) = FinCommRing::builtin(arg) {
        return Ok(r);
    }
    let (shown, text) = read(Path::new(arg))?;
    FinCommRing::parse(&text).map_err(|e| match e {
        ModlocError::Parse { line, column, message } => CliError::Parse { path: shown, line, column, message },
        other => CliError::Input(format!("{shown}: {other}")),
    })
}

pub fn find_objects(model: &TriangulatedModel, names: &[String]) -> Result<Vec<ObjId>, CliError> {
    names
        .iter()
        .map(|n| {
            model.find(n.trim()).ok_or_else(|| {
                CliError::Input(format!("unknown object `{n}`; objects are named like {}", model.names().iter().take(4).cloned().collect::<Vec<_>>().join(", ")))
            })
        })
        .collect()
}
