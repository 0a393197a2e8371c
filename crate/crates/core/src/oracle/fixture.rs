//! Hand-entered non-Nakayama examples: a quiver, its indecomposables and its
//! Auslander–Reiten sequences, loaded from JSON.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::oracle::catalog::Catalogue;
use crate::oracle::rep::{direct_sum, Arrow, BoundQuiver, QuiverRep, RepMorphism, SesInstance};

const SINK_A3: &str = include_str!("../../fixtures/sink_a3.json");
const SOURCE_A3: &str = include_str!("../../fixtures/source_a3.json");

/// Names of the fixtures shipped with the library.
pub const BUILTIN_FIXTURES: &[&str] = &["sink-a3", "source-a3"];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureDoc {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
    pub modules: Vec<ModuleDoc>,
    pub ar_sequences: Vec<ArSeqDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub name: String,
    pub dims: Vec<usize>,
    /// Arrow name → row-major matrix; omitted arrows act by zero.
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArSeqDoc {
    pub name: String,
    pub sub: String,
    pub middles: Vec<String>,
    pub quot: String,
    /// Vertex name → matrix; omitted vertices carry the zero map.
    #[serde(default)]
    pub monic: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default)]
    pub epic: BTreeMap<String, Vec<Vec<i64>>>,
}

/// A validated fixture over a chosen field.
#[derive(Debug)]
pub struct GenericFixture {
    pub name: String,
    pub description: String,
    pub catalogue: Catalogue,
    pub ar_names: Vec<String>,
    pub ar_sequences: Vec<SesInstance>,
}

impl GenericFixture {
    pub fn builtin(name: &str, field: Field) -> Result<Self> {
        let text = match name {
            "sink-a3" => SINK_A3,
            "source-a3" => SOURCE_A3,
            other => return Err(Error::Config(format!("unknown fixture `{other}`"))),
        };
        Self::from_json(text, field)
    }

    pub fn load(path: &Path, field: Field) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?, field)
    }

    pub fn from_json(text: &str, field: Field) -> Result<Self> {
        let doc: FixtureDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc, field)
    }

    pub fn from_doc(doc: &FixtureDoc, field: Field) -> Result<Self> {
        let vertex = |name: &str| {
            doc.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Fixture(format!("unknown vertex `{name}`")))
        };
        let arrows = doc
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    name: a.name.clone(),
                    src: vertex(&a.src)?,
                    tgt: vertex(&a.tgt)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let arrow_index = |name: &str| {
            arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| Error::Fixture(format!("unknown arrow `{name}`")))
        };
        let relations = doc
            .relations
            .iter()
            .map(|path| path.iter().map(|a| arrow_index(a)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let quiver = Arc::new(BoundQuiver {
            vertices: doc.vertices.clone(),
            arrows: arrows.clone(),
            relations,
        });

        let mut modules = Vec::with_capacity(doc.modules.len());
        for m in &doc.modules {
            if m.dims.len() != doc.vertices.len() {
                return Err(Error::Fixture(format!(
                    "module {} has {} dimensions",
                    m.name,
                    m.dims.len()
                )));
            }
            for key in m.matrices.keys() {
                arrow_index(key)?;
            }
            let mats = arrows
                .iter()
                .map(|a| {
                    let shape = (m.dims[a.tgt], m.dims[a.src]);
                    to_matrix(field, m.matrices.get(&a.name), shape)
                        .map_err(|e| Error::Fixture(format!("module {}, arrow {}: {e}", m.name, a.name)))
                })
                .collect::<Result<Vec<_>>>()?;
            let rep = QuiverRep::new(quiver.clone(), field, m.dims.clone(), mats)
                .map_err(|e| Error::Fixture(format!("module {}: {e}", m.name)))?;
            modules.push(rep);
        }
        let names: Vec<String> = doc.modules.iter().map(|m| m.name.clone()).collect();
        let module_index = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Fixture(format!("unknown module `{name}`")))
        };

        let mut ar_sequences = Vec::new();
        let mut ar_pairs = Vec::new();
        for s in &doc.ar_sequences {
            let sub = module_index(&s.sub)?;
            let quot = module_index(&s.quot)?;
            let mids = s.middles.iter().map(|m| module_index(m)).collect::<Result<Vec<_>>>()?;
            let mid = if mids.is_empty() {
                QuiverRep::zero(quiver.clone(), field)
            } else {
                direct_sum(&mids.iter().map(|&i| &modules[i]).collect::<Vec<_>>())
            };
            let monic = vertex_maps(doc, field, &s.monic, &modules[sub], &mid)
                .map_err(|e| Error::Fixture(format!("{} monic: {e}", s.name)))?;
            let epic = vertex_maps(doc, field, &s.epic, &mid, &modules[quot])
                .map_err(|e| Error::Fixture(format!("{} epic: {e}", s.name)))?;
            let ses = RepMorphism::new(modules[sub].clone(), mid.clone(), monic)
                .and_then(|f| Ok((f, RepMorphism::new(mid.clone(), modules[quot].clone(), epic)?)))
                .and_then(|(f, g)| SesInstance::new(f, g))
                .map_err(|e| Error::Fixture(format!("{} is not a short exact sequence: {e}", s.name)))?;
            if ses.is_split() {
                return Err(Error::Fixture(format!("{} splits", s.name)));
            }
            ar_sequences.push(ses);
            ar_pairs.push((quot, sub));
        }

        let catalogue =
            Catalogue::build(quiver, field, names, modules, ar_pairs).map_err(|e| Error::Fixture(e.to_string()))?;
        Ok(Self {
            name: doc.name.clone(),
            description: doc.description.clone(),
            catalogue,
            ar_names: doc.ar_sequences.iter().map(|s| s.name.clone()).collect(),
            ar_sequences,
        })
    }

    /// The position of a named AR sequence.
    pub fn ar_index(&self, name: &str) -> Option<usize> {
        self.ar_names.iter().position(|n| n == name)
    }
}

fn to_matrix(field: Field, rows: Option<&Vec<Vec<i64>>>, shape: (usize, usize)) -> std::result::Result<Matrix, String> {
    let Some(rows) = rows else {
        return Ok(Matrix::zeros(field, shape.0, shape.1));
    };
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        // An empty list stands for any matrix with no rows or no columns.
        if shape.0 * shape.1 == 0 && rows.iter().all(|r| r.is_empty()) {
            return Ok(Matrix::zeros(field, shape.0, shape.1));
        }
        return Err(format!("expected a {}×{} matrix", shape.0, shape.1));
    }
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    Ok(Matrix::from_rows(field, shape.0, shape.1, &flat))
}

fn vertex_maps(
    doc: &FixtureDoc,
    field: Field,
    given: &BTreeMap<String, Vec<Vec<i64>>>,
    src: &QuiverRep,
    tgt: &QuiverRep,
) -> std::result::Result<Vec<Matrix>, String> {
    for key in given.keys() {
        if !doc.vertices.contains(key) {
            return Err(format!("unknown vertex `{key}`"));
        }
    }
    doc.vertices
        .iter()
        .enumerate()
        .map(|(v, name)| {
            to_matrix(field, given.get(name), (tgt.dims()[v], src.dims()[v])).map_err(|e| format!("vertex {name}: {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load_over_both_fields() {
        for name in BUILTIN_FIXTURES {
            for field in [Field::GF2, Field::GF3] {
                let fx = GenericFixture::builtin(name, field).unwrap();
                assert_eq!(fx.catalogue.len(), 6);
                assert_eq!(fx.ar_sequences.len(), 3);
            }
        }
    }

    #[test]
    fn wrong_middle_is_rejected() {
        let mut doc: FixtureDoc = serde_json::from_str(SINK_A3).unwrap();
        doc.ar_sequences[1].middles = vec!["P1".into()];
        let err = GenericFixture::from_doc(&doc, Field::GF2).unwrap_err();
        assert!(matches!(err, Error::Fixture(_)), "{err}");
    }
}
