//! JSON documents read by the command line: finite categories, quantales,
//! finite sets, diagrams and endofunctors, distinguished by a top-level `kind`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catend::instances::{FinSetWorkspace, Quantale, RawFinSet, RawQuantale, SizeCaps};
use catend::{validate_category, FinCategory, RawCategory};
use serde::{Deserialize, Serialize};

use crate::InputError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Fincat(RawCategory),
    Quantale(RawQuantale),
    Finset(RawFinSet),
    Diagram(RawDiagram),
    Endofunctor(RawEndofunctor),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Fincat(_) => "fincat",
            Document::Quantale(_) => "quantale",
            Document::Finset(_) => "finset",
            Document::Diagram(_) => "diagram",
            Document::Endofunctor(_) => "endofunctor",
        }
    }
}

/// Where a diagram's shape comes from: a path relative to the diagram
/// document, or an inline `fincat` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShapeRef {
    Path(String),
    Inline(Box<Document>),
}

/// Image of a shape arrow. Thin instances determine arrows from objects, so
/// there the entry may be omitted; finite categories take an arrow id and
/// finite sets a table from domain elements to codomain elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArrowImage {
    Id(String),
    Table(BTreeMap<String, String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDiagram {
    pub shape: ShapeRef,
    pub objects: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arrows: BTreeMap<String, ArrowImage>,
}

/// A monotone self-map of a quantale, given on elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEndofunctor {
    pub name: String,
    pub objects: BTreeMap<String, String>,
}

/// A document together with the directory relative paths inside it resolve against.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub doc: Document,
}

impl Loaded {
    fn base(&self) -> &Path {
        self.path.parent().unwrap_or(Path::new("."))
    }
}

pub fn load(path: &Path) -> Result<Loaded, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read `{}`: {e}", path.display())))?;
    let doc = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("`{}` is not a valid document: {e}", path.display())))?;
    Ok(Loaded { path: path.to_path_buf(), doc })
}

pub fn expect_kind<'a>(l: &'a Loaded, want: &[&str]) -> Result<&'a Document, InputError> {
    if want.contains(&l.doc.kind()) {
        Ok(&l.doc)
    } else {
        Err(InputError(format!(
            "`{}` is a {} document; expected {}",
            l.path.display(),
            l.doc.kind(),
            want.join(" or ")
        )))
    }
}

pub fn fincat(raw: &RawCategory) -> Result<FinCategory, catend::Error> {
    validate_category(raw)
}

pub fn quantale(raw: &RawQuantale, caps: &SizeCaps) -> Result<Quantale, catend::Error> {
    Quantale::from_raw(raw, caps)
}

pub fn finset(raw: &RawFinSet, caps: SizeCaps) -> Result<FinSetWorkspace, catend::Error> {
    FinSetWorkspace::from_raw(raw, caps)
}

/// Resolves and validates the shape of a diagram document.
pub fn shape(l: &Loaded, d: &RawDiagram) -> Result<Arc<FinCategory>, InputError> {
    let (raw, origin) = match &d.shape {
        ShapeRef::Path(p) => {
            let inner = load(&l.base().join(p))?;
            match inner.doc {
                Document::Fincat(raw) => (raw, inner.path.display().to_string()),
                other => {
                    return Err(InputError(format!(
                        "shape `{}` is a {} document, not fincat",
                        inner.path.display(),
                        other.kind()
                    )))
                }
            }
        }
        ShapeRef::Inline(doc) => match doc.as_ref() {
            Document::Fincat(raw) => (raw.clone(), "inline shape".to_string()),
            other => return Err(InputError(format!("inline shape is a {} document, not fincat", other.kind()))),
        },
    };
    fincat(&raw)
        .map(Arc::new)
        .map_err(|e| InputError(format!("{origin}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_tag_selects_the_variant() {
        let d: Document = serde_json::from_str(r#"{"kind":"finset","sets":{"A":["x"]}}"#).unwrap();
        assert_eq!(d.kind(), "finset");
        assert!(serde_json::from_str::<Document>(r#"{"kind":"monoid"}"#).is_err());
        assert!(serde_json::from_str::<Document>(r#"{"sets":{}}"#).is_err());
    }

    #[test]
    fn diagram_arrow_images_are_ids_or_tables() {
        let d: Document = serde_json::from_str(
            r#"{"kind":"diagram","shape":"s.json","objects":{"i":"A"},"arrows":{"f":"g","h":{"x":"y"}}}"#,
        )
        .unwrap();
        let Document::Diagram(d) = d else { panic!("not a diagram") };
        assert_eq!(d.shape, ShapeRef::Path("s.json".into()));
        assert_eq!(d.arrows["f"], ArrowImage::Id("g".into()));
        assert!(matches!(d.arrows["h"], ArrowImage::Table(_)));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = r#"{"kind":"endofunctor","name":"f","objects":{},"colour":1}"#;
        assert!(serde_json::from_str::<Document>(bad).is_err());
    }

    #[test]
    fn inline_shape_must_be_a_category() {
        let text = r#"{"kind":"diagram","shape":{"kind":"finset","sets":{}},"objects":{}}"#;
        let l = Loaded { path: "d.json".into(), doc: serde_json::from_str(text).unwrap() };
        let Document::Diagram(d) = &l.doc else { panic!("not a diagram") };
        assert!(shape(&l, d).unwrap_err().0.contains("not fincat"));
    }

    #[test]
    fn missing_file_is_an_input_error() {
        assert!(load(Path::new("/nonexistent/catend.json")).unwrap_err().0.contains("cannot read"));
    }
}
