//! JSON category files.
//!
//! ```json
//! {
//!   "objects": ["X", "Y"],
//!   "morphisms": [{"id": "s", "src": "X", "dst": "Y"}],
//!   "compose": [],
//!   "sets": {"sigma": ["s"]}
//! }
//! ```
//!
//! Identities are added as `id_<object>` unless a morphism of that name is
//! already declared. Composites with identities are filled in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{CategoryBuilder, CategoryError, FinCategory, MorphismSet};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("unknown set `{0}`")]
    UnknownSet(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    /// Triples `[g, f, g∘f]`.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    #[serde(default)]
    pub sets: BTreeMap<String, Vec<String>>,
}

impl CategoryFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the category without validating the axioms.
    pub fn to_category_unchecked(&self) -> Result<FinCategory, FormatError> {
        let mut b = CategoryBuilder::new();
        let mut seen = std::collections::BTreeSet::new();
        for o in &self.objects {
            if !seen.insert(o.clone()) {
                return Err(CategoryError::Duplicate(o.clone()).into());
            }
            b.add_object(o.clone());
        }
        let obj = |name: &str| {
            self.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
        };
        let mut names: BTreeMap<String, usize> = BTreeMap::new();
        for (x, o) in self.objects.iter().enumerate() {
            let id_name = format!("id_{o}");
            let declared = self.morphisms.iter().find(|m| m.id == id_name);
            if declared.map_or(true, |m| m.src == *o && m.dst == *o) {
                let m = b.add_identity(id_name.clone(), x);
                names.insert(id_name, m);
            }
        }
        for m in &self.morphisms {
            if let Some(&existing) = names.get(&m.id) {
                if b.identity(b.morphism(existing).src) == Some(existing) {
                    continue;
                }
                return Err(CategoryError::Duplicate(m.id.clone()).into());
            }
            let id = b.add_morphism(m.id.clone(), obj(&m.src)?, obj(&m.dst)?);
            names.insert(m.id.clone(), id);
        }
        let mor = |name: &str| names.get(name).copied().ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()));
        for [g, f, h] in &self.compose {
            b.set_compose(mor(g)?, mor(f)?, mor(h)?);
        }
        b.fill_identity_composites();
        Ok(b.build_unchecked())
    }

    pub fn to_category(&self) -> Result<FinCategory, FormatError> {
        let c = self.to_category_unchecked()?;
        let report = super::validate_category(&c);
        if let Some(v) = report.violations.first() {
            return Err(CategoryError::Invalid(v.describe(&c)).into());
        }
        Ok(c)
    }

    pub fn set(&self, c: &FinCategory, name: &str) -> Result<MorphismSet, FormatError> {
        let ids = self.sets.get(name).ok_or_else(|| FormatError::UnknownSet(name.to_string()))?;
        let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
        Ok(MorphismSet::from_names(c, &refs)?)
    }

    /// Serializes a category; identity composites are omitted.
    pub fn from_category(c: &FinCategory) -> Self {
        let objects = c.object_names().to_vec();
        let morphisms = c
            .morphism_ids()
            .map(|m| MorphismSpec {
                id: c.name(m).to_string(),
                src: c.object_name(c.src(m)).to_string(),
                dst: c.object_name(c.dst(m)).to_string(),
            })
            .collect();
        let mut compose = Vec::new();
        for f in c.morphism_ids().filter(|&f| !c.is_identity(f)) {
            for g in c.morphism_ids().filter(|&g| !c.is_identity(g) && c.src(g) == c.dst(f)) {
                let h = c.compose(g, f);
                compose.push([c.name(g).to_string(), c.name(f).to_string(), c.name(h).to_string()]);
            }
        }
        CategoryFile { objects, morphisms, compose, sets: BTreeMap::new() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    #[test]
    fn roundtrip() {
        let c = chain3();
        let file = CategoryFile::from_category(&c);
        let text = serde_json::to_string(&file).unwrap();
        let back = CategoryFile::parse(&text).unwrap().to_category().unwrap();
        assert_eq!(back.num_morphisms(), c.num_morphisms());
        for g in c.morphism_ids() {
            for f in c.morphism_ids() {
                let a = c.try_compose(g, f).map(|h| c.name(h).to_string());
                let gb = back.find_morphism(c.name(g)).unwrap();
                let fb = back.find_morphism(c.name(f)).unwrap();
                let b = back.try_compose(gb, fb).map(|h| back.name(h).to_string());
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = CategoryFile::parse("{\n  \"objects\": [\"X\",\n}").unwrap_err();
        match err {
            FormatError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_composite_is_rejected() {
        let text = r#"{"objects":["X","Y","Z"],"morphisms":[{"id":"f","src":"X","dst":"Y"},{"id":"g","src":"Y","dst":"Z"}]}"#;
        let err = CategoryFile::parse(text).unwrap().to_category().unwrap_err();
        assert!(err.to_string().contains("undefined"));
    }
}
