//! JSON instance documents.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::monoid::{Monoid, DEFAULT_MONOID_CAP};
use crate::order_pair::{normalize_data, OrderPair, RepairReport};
use crate::refutation::Limits;
use crate::transform::PartialTransform;
use crate::universe::{Pair, Universe};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub alternatives: Vec<String>,
    #[serde(default)]
    pub transforms: Vec<TransformDoc>,
    #[serde(default)]
    pub weak: Vec<[String; 2]>,
    #[serde(default)]
    pub strict: Vec<[String; 2]>,
    #[serde(default)]
    pub options: OptionsDoc,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformDoc {
    pub name: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_links: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_clauses: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoid_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_nodes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{field}: unknown label `{label}`")]
    UnknownLabel { field: String, label: String },
    #[error("duplicate transform name `{0}`")]
    DuplicateTransformName(String),
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),
    #[error("{field}: {source}")]
    Invalid { field: String, source: CoreError },
}

/// A parsed, normalised instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub universe: Universe,
    pub generators: Vec<PartialTransform>,
    pub data: OrderPair,
    pub repair: RepairReport,
    pub limits: Limits,
    pub monoid_cap: usize,
}

/// Equality of the normalised instance; the repair report is ignored.
impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.generators.len() == other.generators.len()
            && self.generators.iter().zip(&other.generators).all(|(a, b)| a == b && a.name() == b.name())
            && self.data == other.data
            && self.limits == other.limits
            && self.monoid_cap == other.monoid_cap
    }
}

impl Eq for Instance {}

impl Instance {
    pub fn new(universe: Universe, generators: Vec<PartialTransform>, raw: &OrderPair) -> Result<Self, InstanceError> {
        let mut names = BTreeSet::new();
        for g in &generators {
            if !names.insert(g.name().to_string()) {
                return Err(InstanceError::DuplicateTransformName(g.name().to_string()));
            }
        }
        let (data, repair) =
            normalize_data(raw, &universe).map_err(|source| InstanceError::Invalid { field: "weak/strict".into(), source })?;
        Ok(Instance { universe, generators, data, repair, limits: Limits::default(), monoid_cap: DEFAULT_MONOID_CAP })
    }

    pub fn monoid(&self) -> Monoid {
        Monoid::generate(&self.generators, self.universe.len(), self.monoid_cap)
    }

    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| InstanceError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Instance::from_doc(&doc)
    }

    pub fn from_doc(doc: &InstanceDoc) -> Result<Self, InstanceError> {
        if doc.format_version != FORMAT_VERSION {
            return Err(InstanceError::UnsupportedVersion(doc.format_version));
        }
        let universe = Universe::new(doc.alternatives.iter().cloned())
            .map_err(|source| InstanceError::Invalid { field: "alternatives".into(), source })?;
        let lookup = |field: String, label: &str| {
            universe.id(label).ok_or_else(|| InstanceError::UnknownLabel { field, label: label.to_string() })
        };
        let mut generators = Vec::new();
        for (i, t) in doc.transforms.iter().enumerate() {
            let mut pairs = Vec::new();
            for (from, to) in &t.map {
                let field = format!("transforms[{i}].map.{from}");
                pairs.push((lookup(field.clone(), from)?, lookup(field, to)?));
            }
            let g = PartialTransform::from_pairs(t.name.clone(), universe.len(), pairs)
                .map_err(|source| InstanceError::Invalid { field: format!("transforms[{i}]"), source })?;
            generators.push(g);
        }
        let pairs = |name: &str, list: &[[String; 2]]| -> Result<Vec<Pair>, InstanceError> {
            list.iter()
                .enumerate()
                .map(|(i, [a, b])| {
                    let field = format!("{name}[{i}]");
                    Ok((lookup(field.clone(), a)?, lookup(field, b)?))
                })
                .collect()
        };
        let raw = OrderPair::new(pairs("weak", &doc.weak)?, pairs("strict", &doc.strict)?);
        let mut inst = Instance::new(universe, generators, &raw)?;
        let o = &doc.options;
        let d = Limits::default();
        inst.limits = Limits {
            max_links: o.max_links,
            max_clauses: o.max_clauses.unwrap_or(d.max_clauses),
            max_width: o.max_width.unwrap_or(d.max_width),
            search_nodes: o.search_nodes.unwrap_or(d.search_nodes),
        };
        inst.monoid_cap = o.monoid_cap.unwrap_or(DEFAULT_MONOID_CAP);
        Ok(inst)
    }

    /// The normalised instance as a document. Pairs that normalisation
    /// restores (reflexive ones, strict ones in weak) and default options are omitted.
    pub fn to_doc(&self) -> InstanceDoc {
        let u = &self.universe;
        let lab = |&(a, b): &Pair| [u.label(a).to_string(), u.label(b).to_string()];
        let d = Limits::default();
        let keep = |v: usize, def: usize| (v != def).then_some(v);
        InstanceDoc {
            format_version: FORMAT_VERSION,
            alternatives: u.labels().to_vec(),
            transforms: self
                .generators
                .iter()
                .map(|g| TransformDoc {
                    name: g.name().to_string(),
                    map: g.pairs().map(|(a, b)| (u.label(a).to_string(), u.label(b).to_string())).collect(),
                })
                .collect(),
            weak: self
                .data
                .weak
                .iter()
                .filter(|&&(x, y)| x != y && !self.data.strict.contains(&(x, y)))
                .map(lab)
                .collect(),
            strict: self.data.strict.iter().map(lab).collect(),
            options: OptionsDoc {
                max_links: self.limits.max_links,
                max_clauses: keep(self.limits.max_clauses, d.max_clauses),
                max_width: keep(self.limits.max_width, d.max_width),
                monoid_cap: keep(self.monoid_cap, DEFAULT_MONOID_CAP),
                search_nodes: keep(self.limits.search_nodes, d.search_nodes),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_instance() {
        let inst = Instance::parse(r#"{"alternatives":["x","y"],"transforms":[],"weak":[["x","y"]],"strict":[]}"#)
            .unwrap();
        assert_eq!(inst.monoid().len(), 1);
        assert!(inst.data.weak.contains(&(0, 1)) && inst.data.weak.contains(&(1, 1)));
    }

    #[test]
    fn unknown_map_target() {
        let e = Instance::parse(r#"{"alternatives":["x","y"],"transforms":[{"name":"s","map":{"x":"z"}}]}"#)
            .unwrap_err();
        assert_eq!(e, InstanceError::UnknownLabel { field: "transforms[0].map.x".into(), label: "z".into() });
    }

    #[test]
    fn duplicate_transform_name() {
        let e = Instance::parse(
            r#"{"alternatives":["x","y"],"transforms":[{"name":"s","map":{"x":"y"}},{"name":"s","map":{"y":"x"}}]}"#,
        )
        .unwrap_err();
        assert_eq!(e, InstanceError::DuplicateTransformName("s".into()));
    }

    #[test]
    fn syntax_error_has_position() {
        let e = Instance::parse("{\n  \"alternatives\": [\"x\",\n}").unwrap_err();
        assert!(matches!(e, InstanceError::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn unknown_field_is_a_parse_error() {
        assert!(matches!(Instance::parse(r#"{"alternatives":["x"],"wek":[]}"#), Err(InstanceError::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"alternatives":["a","b","c"],"transforms":[{"name":"s","map":{"a":"b","b":"c"}}],
            "strict":[["a","b"]],"options":{"max_width":3,"monoid_cap":50}}"#;
        let inst = Instance::parse(text).unwrap();
        let again = Instance::parse(&inst.to_json()).unwrap();
        assert_eq!(inst, again);
        assert_eq!(again.limits.max_width, 3);
        assert_eq!(again.monoid_cap, 50);
    }
}
