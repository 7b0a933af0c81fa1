//! The JSON instance document: named lattices, morphisms, grounds, ground
//! morphisms, fuzzy sets, filters and topologies. Loading a document
//! validates every structure in it; an invalid structure fails the load with
//! the checker's own report embedded.

use crate::filter::FuzzyFilter;
use crate::ground::{FuzzySet, GroundMorphism, GroundSet};
use crate::lattice::{QmlLattice, QmlMorphism, TensorLaws};
use crate::topology::{FuzzyTopology, TopoOptions};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lattices: BTreeMap<String, RawLattice>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, RawMorphism>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub grounds: BTreeMap<String, RawGround>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ground_morphisms: BTreeMap<String, RawGroundMorphism>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fuzzy_sets: BTreeMap<String, RawFuzzySet>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub filters: BTreeMap<String, RawTable>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub topologies: BTreeMap<String, RawTable>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RawLattice {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub top_unit: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RawMorphism {
    pub source: String,
    pub target: String,
    pub map: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RawGround {
    pub points: Vec<String>,
    pub lattice: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RawGroundMorphism {
    pub source: String,
    pub target: String,
    pub f: Vec<String>,
    pub phi_op: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RawFuzzySet {
    pub over: String,
    pub values: Vec<String>,
}

/// A degree table over a ground: dense (one value per canonical index) or
/// sparse (explicit fuzzy-set/value pairs, which must cover the whole
/// function space).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RawTable {
    Dense { over: String, values: Vec<String> },
    Sparse { over: String, entries: Vec<RawEntry> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RawEntry {
    pub set: Vec<String>,
    pub value: String,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("cannot parse instance document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{kind} `{name}` references unknown {referenced_kind} `{referenced}`")]
    UnresolvedReference {
        kind: &'static str,
        name: String,
        referenced_kind: &'static str,
        referenced: String,
    },
    #[error("{kind} `{name}` uses unknown name `{unknown}`")]
    UnknownName {
        kind: &'static str,
        name: String,
        unknown: String,
    },
    #[error("{kind} `{name}` has a table of {got} entries, expected {expected}")]
    TableShape {
        kind: &'static str,
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("{kind} `{name}` repeats an entry for the same fuzzy set")]
    DuplicateEntry { kind: &'static str, name: String },
    #[error("{kind} `{name}` failed validation: {message}")]
    Validation {
        kind: &'static str,
        name: String,
        message: String,
        report: serde_json::Value,
    },
}

impl LoadError {
    fn validation<E: std::fmt::Display + Serialize>(
        kind: &'static str,
        name: &str,
        err: E,
    ) -> Self {
        LoadError::Validation {
            kind,
            name: name.to_string(),
            message: err.to_string(),
            report: serde_json::to_value(&err).unwrap_or(serde_json::Value::Null),
        }
    }
}

/// A fully validated instance document, keeping a normalized raw echo for
/// serialization.
#[derive(Debug, Clone)]
pub struct InstanceDocument {
    pub lattices: BTreeMap<String, Arc<QmlLattice>>,
    pub morphisms: BTreeMap<String, QmlMorphism>,
    pub grounds: BTreeMap<String, GroundSet>,
    pub ground_morphisms: BTreeMap<String, GroundMorphism>,
    pub fuzzy_sets: BTreeMap<String, FuzzySet>,
    pub filters: BTreeMap<String, FuzzyFilter>,
    pub topologies: BTreeMap<String, FuzzyTopology>,
    raw: RawDocument,
}

impl InstanceDocument {
    pub fn load(path: &Path, opts: &TopoOptions) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::load_str(&text, opts)
    }

    pub fn load_str(text: &str, opts: &TopoOptions) -> Result<Self, LoadError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        Self::from_raw(raw, opts)
    }

    pub fn from_raw(raw: RawDocument, opts: &TopoOptions) -> Result<Self, LoadError> {
        let mut lattices = BTreeMap::new();
        for (name, rl) in &raw.lattices {
            let mut tensor = Vec::with_capacity(rl.tensor.len());
            for row in &rl.tensor {
                let mut out = Vec::with_capacity(row.len());
                for v in row {
                    let idx = rl.elements.iter().position(|e| e == v).ok_or_else(|| {
                        LoadError::UnknownName {
                            kind: "lattice",
                            name: name.clone(),
                            unknown: v.clone(),
                        }
                    })?;
                    out.push(idx);
                }
                tensor.push(out);
            }
            let laws = if rl.top_unit {
                TensorLaws::TopUnit
            } else {
                TensorLaws::Weak
            };
            let lattice =
                QmlLattice::check_with_laws(rl.elements.clone(), rl.leq.clone(), tensor, laws)
                    .map_err(|e| LoadError::validation("lattice", name, e))?;
            lattices.insert(name.clone(), Arc::new(lattice));
        }

        let mut morphisms = BTreeMap::new();
        for (name, rm) in &raw.morphisms {
            let source = lattices.get(&rm.source).cloned().ok_or_else(|| {
                LoadError::UnresolvedReference {
                    kind: "morphism",
                    name: name.clone(),
                    referenced_kind: "lattice",
                    referenced: rm.source.clone(),
                }
            })?;
            let target = lattices.get(&rm.target).cloned().ok_or_else(|| {
                LoadError::UnresolvedReference {
                    kind: "morphism",
                    name: name.clone(),
                    referenced_kind: "lattice",
                    referenced: rm.target.clone(),
                }
            })?;
            let mut map = Vec::with_capacity(rm.map.len());
            for v in &rm.map {
                map.push(target.element_index(v).ok_or_else(|| LoadError::UnknownName {
                    kind: "morphism",
                    name: name.clone(),
                    unknown: v.clone(),
                })?);
            }
            let m = QmlMorphism::check(source, target, map)
                .map_err(|e| LoadError::validation("morphism", name, e))?;
            morphisms.insert(name.clone(), m);
        }

        let mut grounds = BTreeMap::new();
        for (name, rg) in &raw.grounds {
            let lattice = lattices.get(&rg.lattice).cloned().ok_or_else(|| {
                LoadError::UnresolvedReference {
                    kind: "ground",
                    name: name.clone(),
                    referenced_kind: "lattice",
                    referenced: rg.lattice.clone(),
                }
            })?;
            let g = GroundSet::new(rg.points.clone(), lattice)
                .map_err(|e| LoadError::validation("ground", name, e))?;
            grounds.insert(name.clone(), g);
        }

        let mut ground_morphisms = BTreeMap::new();
        for (name, rgm) in &raw.ground_morphisms {
            let source = grounds.get(&rgm.source).cloned().ok_or_else(|| {
                LoadError::UnresolvedReference {
                    kind: "ground morphism",
                    name: name.clone(),
                    referenced_kind: "ground",
                    referenced: rgm.source.clone(),
                }
            })?;
            let target = grounds.get(&rgm.target).cloned().ok_or_else(|| {
                LoadError::UnresolvedReference {
                    kind: "ground morphism",
                    name: name.clone(),
                    referenced_kind: "ground",
                    referenced: rgm.target.clone(),
                }
            })?;
            let phi_op = morphisms.get(&rgm.phi_op).cloned().ok_or_else(|| {
                LoadError::UnresolvedReference {
                    kind: "ground morphism",
                    name: name.clone(),
                    referenced_kind: "morphism",
                    referenced: rgm.phi_op.clone(),
                }
            })?;
            let mut point_map = Vec::with_capacity(rgm.f.len());
            for p in &rgm.f {
                point_map.push(target.point_index(p).ok_or_else(|| LoadError::UnknownName {
                    kind: "ground morphism",
                    name: name.clone(),
                    unknown: p.clone(),
                })?);
            }
            let gm = GroundMorphism::check(source, target, point_map, phi_op)
                .map_err(|e| LoadError::validation("ground morphism", name, e))?;
            ground_morphisms.insert(name.clone(), gm);
        }

        let mut fuzzy_sets = BTreeMap::new();
        for (name, rf) in &raw.fuzzy_sets {
            let ground = grounds.get(&rf.over).cloned().ok_or_else(|| {
                LoadError::UnresolvedReference {
                    kind: "fuzzy set",
                    name: name.clone(),
                    referenced_kind: "ground",
                    referenced: rf.over.clone(),
                }
            })?;
            let values = resolve_values("fuzzy set", name, &ground, &rf.values)?;
            let fs = FuzzySet::new(ground, values)
                .map_err(|e| LoadError::validation("fuzzy set", name, e))?;
            fuzzy_sets.insert(name.clone(), fs);
        }

        let mut filters = BTreeMap::new();
        for (name, rt) in &raw.filters {
            let (ground, table) = resolve_table("filter", name, rt, &grounds)?;
            let f = FuzzyFilter::check(ground, table)
                .map_err(|e| LoadError::validation("filter", name, e))?;
            filters.insert(name.clone(), f);
        }

        let mut topologies = BTreeMap::new();
        for (name, rt) in &raw.topologies {
            let (ground, table) = resolve_table("topology", name, rt, &grounds)?;
            let t = FuzzyTopology::check(ground, table, opts)
                .map_err(|e| LoadError::validation("topology", name, e))?;
            topologies.insert(name.clone(), t);
        }

        let mut doc = InstanceDocument {
            lattices,
            morphisms,
            grounds,
            ground_morphisms,
            fuzzy_sets,
            filters,
            topologies,
            raw: RawDocument::default(),
        };
        doc.raw = doc.normalized_raw(&raw);
        Ok(doc)
    }

    /// Rebuilds the raw document from the validated structures, normalizing
    /// every table to its dense form.
    fn normalized_raw(&self, original: &RawDocument) -> RawDocument {
        let lattice_name = |l: &Arc<QmlLattice>| {
            self.lattices
                .iter()
                .find(|(_, v)| Arc::ptr_eq(v, l) || v.as_ref() == l.as_ref())
                .map(|(k, _)| k.clone())
                .unwrap_or_default()
        };
        let ground_name = |g: &GroundSet| {
            self.grounds
                .iter()
                .find(|(_, v)| *v == g)
                .map(|(k, _)| k.clone())
                .unwrap_or_default()
        };
        RawDocument {
            lattices: self
                .lattices
                .iter()
                .map(|(name, l)| {
                    (
                        name.clone(),
                        RawLattice {
                            elements: l.elements().to_vec(),
                            leq: l.leq_rows(),
                            tensor: l
                                .tensor_rows()
                                .into_iter()
                                .map(|row| {
                                    row.into_iter()
                                        .map(|v| l.element_name(v).to_string())
                                        .collect()
                                })
                                .collect(),
                            top_unit: original
                                .lattices
                                .get(name)
                                .map(|r| r.top_unit)
                                .unwrap_or(false),
                        },
                    )
                })
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|(name, m)| {
                    (
                        name.clone(),
                        RawMorphism {
                            source: lattice_name(m.source()),
                            target: lattice_name(m.target()),
                            map: m
                                .map()
                                .iter()
                                .map(|&v| m.target().element_name(v).to_string())
                                .collect(),
                        },
                    )
                })
                .collect(),
            grounds: self
                .grounds
                .iter()
                .map(|(name, g)| {
                    (
                        name.clone(),
                        RawGround {
                            points: g.points().to_vec(),
                            lattice: lattice_name(g.lattice()),
                        },
                    )
                })
                .collect(),
            ground_morphisms: self
                .ground_morphisms
                .iter()
                .map(|(name, gm)| {
                    (
                        name.clone(),
                        RawGroundMorphism {
                            source: ground_name(gm.source()),
                            target: ground_name(gm.target()),
                            f: gm
                                .point_map()
                                .iter()
                                .map(|&y| gm.target().point_name(y).to_string())
                                .collect(),
                            phi_op: original
                                .ground_morphisms
                                .get(name)
                                .map(|r| r.phi_op.clone())
                                .unwrap_or_default(),
                        },
                    )
                })
                .collect(),
            fuzzy_sets: self
                .fuzzy_sets
                .iter()
                .map(|(name, fs)| {
                    (
                        name.clone(),
                        RawFuzzySet {
                            over: ground_name(fs.ground()),
                            values: fs.value_names(),
                        },
                    )
                })
                .collect(),
            filters: self
                .filters
                .iter()
                .map(|(name, f)| {
                    (
                        name.clone(),
                        RawTable::Dense {
                            over: ground_name(f.ground()),
                            values: f.table_names(),
                        },
                    )
                })
                .collect(),
            topologies: self
                .topologies
                .iter()
                .map(|(name, t)| {
                    (
                        name.clone(),
                        RawTable::Dense {
                            over: ground_name(t.ground()),
                            values: t.table_names(),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn raw(&self) -> &RawDocument {
        &self.raw
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.raw).expect("raw documents serialize")
    }
}

fn resolve_values(
    kind: &'static str,
    name: &str,
    ground: &GroundSet,
    values: &[String],
) -> Result<Vec<usize>, LoadError> {
    let l = ground.lattice();
    values
        .iter()
        .map(|v| {
            l.element_index(v).ok_or_else(|| LoadError::UnknownName {
                kind,
                name: name.to_string(),
                unknown: v.clone(),
            })
        })
        .collect()
}

fn resolve_table(
    kind: &'static str,
    name: &str,
    rt: &RawTable,
    grounds: &BTreeMap<String, GroundSet>,
) -> Result<(GroundSet, Vec<usize>), LoadError> {
    let over = match rt {
        RawTable::Dense { over, .. } | RawTable::Sparse { over, .. } => over,
    };
    let ground = grounds
        .get(over)
        .cloned()
        .ok_or_else(|| LoadError::UnresolvedReference {
            kind,
            name: name.to_string(),
            referenced_kind: "ground",
            referenced: over.clone(),
        })?;
    let space = ground
        .fn_space()
        .map_err(|e| LoadError::validation(kind, name, e))?;
    match rt {
        RawTable::Dense { values, .. } => {
            if values.len() != space.len() {
                return Err(LoadError::TableShape {
                    kind,
                    name: name.to_string(),
                    expected: space.len(),
                    got: values.len(),
                });
            }
            let table = resolve_values(kind, name, &ground, values)?;
            Ok((ground, table))
        }
        RawTable::Sparse { entries, .. } => {
            let mut table = vec![usize::MAX; space.len()];
            for entry in entries {
                let set_values = resolve_values(kind, name, &ground, &entry.set)?;
                if set_values.len() != ground.n_points() {
                    return Err(LoadError::TableShape {
                        kind,
                        name: name.to_string(),
                        expected: ground.n_points(),
                        got: set_values.len(),
                    });
                }
                let idx = space.encode(&set_values);
                if table[idx] != usize::MAX {
                    return Err(LoadError::DuplicateEntry {
                        kind,
                        name: name.to_string(),
                    });
                }
                table[idx] = ground.lattice().element_index(&entry.value).ok_or_else(|| {
                    LoadError::UnknownName {
                        kind,
                        name: name.to_string(),
                        unknown: entry.value.clone(),
                    }
                })?;
            }
            if table.contains(&usize::MAX) {
                return Err(LoadError::TableShape {
                    kind,
                    name: name.to_string(),
                    expected: space.len(),
                    got: entries.len(),
                });
            }
            Ok((ground, table))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "lattices": {
            "BOOL": {
                "elements": ["0", "1"],
                "leq": [[true, true], [false, true]],
                "tensor": [["0", "0"], ["0", "1"]]
            }
        },
        "morphisms": {
            "id": { "source": "BOOL", "target": "BOOL", "map": ["0", "1"] }
        },
        "grounds": {
            "X": { "points": ["p", "q"], "lattice": "BOOL" }
        },
        "ground_morphisms": {
            "idX": { "source": "X", "target": "X", "f": ["p", "q"], "phi_op": "id" }
        },
        "fuzzy_sets": {
            "a": { "over": "X", "values": ["1", "0"] }
        },
        "filters": {
            "point_p": { "over": "X", "values": ["0", "1", "0", "1"] },
            "sparse_min": { "over": "X", "entries": [
                { "set": ["0", "0"], "value": "0" },
                { "set": ["1", "0"], "value": "0" },
                { "set": ["0", "1"], "value": "0" },
                { "set": ["1", "1"], "value": "1" }
            ] }
        },
        "topologies": {
            "discrete": { "over": "X", "values": ["1", "1", "1", "1"] }
        }
    }"#;

    #[test]
    fn sample_document_loads_and_round_trips() {
        let opts = TopoOptions::default();
        let doc = InstanceDocument::load_str(SAMPLE, &opts).unwrap();
        assert_eq!(doc.filters["point_p"].table(), &[0, 1, 0, 1]);
        assert_eq!(doc.filters["sparse_min"].table(), &[0, 0, 0, 1]);

        let json = doc.to_json();
        let doc2 = InstanceDocument::load_str(&json, &opts).unwrap();
        assert_eq!(doc.raw(), doc2.raw());
        assert_eq!(doc.filters["sparse_min"], doc2.filters["sparse_min"]);
        assert_eq!(doc.to_json(), doc2.to_json());
    }

    #[test]
    fn broken_tensor_table_fails_with_the_lattice_report() {
        let text = r#"{
            "lattices": {
                "C3": {
                    "elements": ["0", "m", "1"],
                    "leq": [[true, true, true], [false, true, true], [false, false, true]],
                    "tensor": [["0","0","0"],["0","m","m"],["0","m","m"]]
                }
            }
        }"#;
        let err = InstanceDocument::load_str(text, &TopoOptions::default()).unwrap_err();
        match err {
            LoadError::Validation { kind, name, message, .. } => {
                assert_eq!(kind, "lattice");
                assert_eq!(name, "C3");
                assert!(message.contains("top is not idempotent"), "{message}");
            }
            other => panic!("expected a validation failure, got {other}"),
        }
    }

    #[test]
    fn unresolved_reference_is_reported() {
        let text = r#"{ "grounds": { "X": { "points": ["p"], "lattice": "NOPE" } } }"#;
        let err = InstanceDocument::load_str(text, &TopoOptions::default()).unwrap_err();
        assert!(matches!(err, LoadError::UnresolvedReference { .. }));
    }

    #[test]
    fn invalid_filter_table_fails_load_with_witnesses() {
        let text = r#"{
            "lattices": {
                "BOOL": {
                    "elements": ["0", "1"],
                    "leq": [[true, true], [false, true]],
                    "tensor": [["0", "0"], ["0", "1"]]
                }
            },
            "grounds": { "X": { "points": ["p", "q"], "lattice": "BOOL" } },
            "filters": { "bad": { "over": "X", "values": ["0", "1", "1", "1"] } }
        }"#;
        let err = InstanceDocument::load_str(text, &TopoOptions::default()).unwrap_err();
        match err {
            LoadError::Validation { kind, report, .. } => {
                assert_eq!(kind, "filter");
                let rendered = report.to_string();
                assert!(rendered.contains("TensorAxiom"), "{rendered}");
            }
            other => panic!("expected a validation failure, got {other}"),
        }
    }
}
