//! JSON documents for graphs, divisors, piecewise linear functions,
//! homomorphisms and morphisms.
//!
//! Output is canonical: keys sorted, integers only.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::divisor::{Divisor, PlFunction};
use crate::error::{Axiom, Error, Result};
use crate::graph::MetrisedGraph;
use crate::monoid::{MonoidHom, MonoidSpec, Presentation};
use crate::morphism::GraphMorphism;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<i64>>>,
}

impl MonoidDoc {
    pub fn from_spec(spec: &MonoidSpec) -> Self {
        match spec.presentation() {
            Presentation::Free => MonoidDoc {
                rank: spec.rank(),
                mode: Some("free".into()),
                generators: None,
            },
            Presentation::Generated(gens) => MonoidDoc {
                rank: spec.rank(),
                mode: Some("generated".into()),
                generators: Some(gens.clone()),
            },
        }
    }

    /// `pointer` locates this fragment in its document, for error messages.
    pub fn to_spec(&self, pointer: &str) -> Result<MonoidSpec> {
        let presentation = match (self.mode.as_deref(), &self.generators) {
            (None | Some("free"), None) => Presentation::Free,
            (None | Some("generated"), Some(g)) => Presentation::Generated(g.clone()),
            (Some("generated"), None) => return Err(parse_error(format!("{pointer}/generators"), "generators are required")),
            (Some("free"), Some(_)) => {
                return Err(parse_error(format!("{pointer}/generators"), "a free monoid takes no generators"))
            }
            (Some(other), _) => {
                return Err(parse_error(format!("{pointer}/mode"), format!("unknown mode {other:?}, expected free or generated")))
            }
        };
        MonoidSpec::new(self.rank, presentation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub ends: [String; 2],
    pub length: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub monoid: MonoidDoc,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    /// Named divisors on this graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<BTreeMap<String, BTreeMap<String, i64>>>,
    /// Named morphisms out of this graph, as id maps onto a target.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<BTreeMap<String, MorphismSection>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSection {
    pub target: Box<GraphDocument>,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source: GraphDocument,
    pub target: GraphDocument,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    /// One row per target coordinate.
    pub matrix: Vec<Vec<i64>>,
    pub target: MonoidDoc,
}

fn parse_error(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn escape(segment: &str) -> String {
    segment.replace('~', "~0").replace('/', "~1")
}

/// Deserialises JSON, reporting failures with a JSON pointer.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let mut pointer = String::new();
        for seg in err.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } => pointer.push_str(&format!("/{}", escape(key))),
                Segment::Enum { variant } => pointer.push_str(&format!("/{}", escape(variant))),
                Segment::Unknown => {}
            }
        }
        parse_error(pointer, err.into_inner().to_string())
    })
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    from_json(&std::fs::read_to_string(path)?)
}

/// Sorted keys, compact.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value).expect("documents serialise").to_string()
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(&serde_json::to_value(value).expect("documents serialise")).expect("values serialise")
}

impl GraphDocument {
    pub fn from_graph(g: &MetrisedGraph) -> Self {
        GraphDocument {
            monoid: MonoidDoc::from_spec(g.monoid()),
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    ends: [g.vertex_id(e.ends[0]).to_owned(), g.vertex_id(e.ends[1]).to_owned()],
                    length: e.length.clone(),
                })
                .collect(),
            divisors: None,
            morphisms: None,
        }
    }

    /// Checks ids and shapes with pointers, then builds and validates the graph.
    pub fn to_graph(&self) -> Result<MetrisedGraph> {
        self.to_graph_at("")
    }

    pub fn to_graph_at(&self, base: &str) -> Result<MetrisedGraph> {
        let monoid = self.monoid.to_spec(&format!("{base}/monoid"))?;
        let mut seen = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(parse_error(
                    format!("{base}/vertices/{i}"),
                    format!("{}: vertex id {v:?} repeated", Axiom::DuplicateId),
                ));
            }
        }
        let mut edge_ids = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if seen.contains_key(e.id.as_str()) || edge_ids.insert(e.id.as_str(), i).is_some() {
                return Err(parse_error(
                    format!("{base}/edges/{i}/id"),
                    format!("{}: id {:?} repeated", Axiom::DuplicateId, e.id),
                ));
            }
            for (j, end) in e.ends.iter().enumerate() {
                if !seen.contains_key(end.as_str()) {
                    return Err(parse_error(
                        format!("{base}/edges/{i}/ends/{j}"),
                        format!("{}: no vertex {end:?}", Axiom::UnknownId),
                    ));
                }
            }
            if e.length.len() != monoid.rank() {
                return Err(parse_error(
                    format!("{base}/edges/{i}/length"),
                    format!("{}: expected {} coordinates, got {}", Axiom::LengthDimension, monoid.rank(), e.length.len()),
                ));
            }
        }
        MetrisedGraph::new(
            monoid,
            self.vertices.clone(),
            self.edges.iter().map(|e| (e.id.clone(), e.ends.clone(), e.length.clone())).collect(),
        )
    }
}

pub fn parse_graph(text: &str) -> Result<MetrisedGraph> {
    from_json::<GraphDocument>(text)?.to_graph()
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<MetrisedGraph> {
    read_json::<GraphDocument>(path)?.to_graph()
}

pub fn graph_to_json(g: &MetrisedGraph) -> String {
    to_canonical_json(&GraphDocument::from_graph(g))
}

/// `{"vertex": coefficient}`; absent vertices are zero.
pub fn divisor_from_map(g: &MetrisedGraph, map: &BTreeMap<String, i64>) -> Result<Divisor> {
    let mut d = Divisor::zero(g.vertex_count());
    for (id, &c) in map {
        let v = g.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.clone()))?;
        d.0[v] += c;
    }
    Ok(d)
}

/// Nonzero coefficients only.
pub fn divisor_to_map(g: &MetrisedGraph, d: &Divisor) -> BTreeMap<String, i64> {
    d.0.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(v, &c)| (g.vertex_id(v).to_owned(), c))
        .collect()
}

/// `{"vertex": [coords]}` covering every vertex.
pub fn pl_from_map(g: &MetrisedGraph, map: &BTreeMap<String, Vec<i64>>) -> Result<PlFunction> {
    let mut values = vec![None; g.vertex_count()];
    for (id, value) in map {
        let v = g.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.clone()))?;
        if value.len() != g.monoid().rank() {
            return Err(parse_error(
                format!("/{}", escape(id)),
                format!("expected {} coordinates, got {}", g.monoid().rank(), value.len()),
            ));
        }
        values[v] = Some(value.clone());
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| parse_error(format!("/{}", escape(g.vertex_id(v))), "missing value")))
        .collect::<Result<_>>()?;
    Ok(PlFunction { values })
}

pub fn pl_to_map(g: &MetrisedGraph, f: &PlFunction) -> BTreeMap<String, Vec<i64>> {
    f.values.iter().enumerate().map(|(v, x)| (g.vertex_id(v).to_owned(), x.clone())).collect()
}

impl HomDoc {
    pub fn to_hom(&self, source: &MonoidSpec) -> Result<MonoidHom> {
        MonoidHom::new(self.matrix.clone(), source.clone(), self.monoid_target()?)
    }

    fn monoid_target(&self) -> Result<MonoidSpec> {
        self.target.to_spec("/target")
    }

    pub fn from_hom(f: &MonoidHom) -> Self {
        HomDoc {
            matrix: f.matrix().to_vec(),
            target: MonoidDoc::from_spec(f.target()),
        }
    }
}

impl MorphismDoc {
    pub fn from_morphism(phi: &GraphMorphism) -> Self {
        MorphismDoc {
            source: GraphDocument::from_graph(phi.source()),
            target: GraphDocument::from_graph(phi.target()),
            map: phi.id_map(),
        }
    }

    /// Builds the morphism; axiom violations come back as [`Error::Invalid`].
    pub fn to_morphism(&self) -> Result<GraphMorphism> {
        let source = self.source.to_graph_at("/source")?;
        let target = self.target.to_graph_at("/target")?;
        Ok(GraphMorphism::from_ids(source, target, &self.map)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_GON: &str = r#"{
        "monoid": {"rank": 2, "mode": "free"},
        "vertices": ["u", "v"],
        "edges": [
            {"id": "a", "ends": ["u", "v"], "length": [1, 0]},
            {"id": "b", "ends": ["u", "v"], "length": [0, 1]}
        ]
    }"#;

    #[test]
    fn two_gon_round_trip() {
        let g = parse_graph(TWO_GON).unwrap();
        assert_eq!(g.vertex_count(), 2);
        let text = graph_to_json(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(graph_to_json(&parse_graph(&text).unwrap()), text);
        assert!(text.starts_with(r#"{"edges":"#));
    }

    #[test]
    fn duplicate_edge_id_has_pointer() {
        let text = TWO_GON.replace(r#""id": "b""#, r#""id": "a""#);
        match parse_graph(&text) {
            Err(Error::Parse { pointer, message }) => {
                assert_eq!(pointer, "/edges/1/id");
                assert!(message.starts_with("duplicate_id"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn schema_errors_have_pointers() {
        let text = TWO_GON.replace("[0, 1]", r#"[0, "x"]"#);
        match parse_graph(&text) {
            Err(Error::Parse { pointer, .. }) => assert_eq!(pointer, "/edges/1/length/1"),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let text = TWO_GON.replace(r#""mode": "free""#, r#""mode": "cyclic""#);
        match parse_graph(&text) {
            Err(Error::Parse { pointer, .. }) => assert_eq!(pointer, "/monoid/mode"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn axiom_violations_pass_through() {
        let text = TWO_GON.replace("[0, 1]", "[0, -1]");
        match parse_graph(&text) {
            Err(Error::Invalid(v)) => assert_eq!(v.axiom, Axiom::LengthMembership),
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn divisor_and_pl_maps() {
        let g = parse_graph(TWO_GON).unwrap();
        let d = divisor_from_map(&g, &[("u".to_string(), 1)].into_iter().collect()).unwrap();
        assert_eq!(d, Divisor(vec![1, 0]));
        assert_eq!(divisor_to_map(&g, &d).len(), 1);
        assert!(matches!(
            divisor_from_map(&g, &[("z".to_string(), 1)].into_iter().collect()),
            Err(Error::UnknownVertex(_))
        ));
        let f = pl_from_map(&g, &[("u".to_string(), vec![0, 0]), ("v".to_string(), vec![1, 1])].into_iter().collect())
            .unwrap();
        assert_eq!(pl_to_map(&g, &f).len(), 2);
        assert!(pl_from_map(&g, &[("u".to_string(), vec![0, 0])].into_iter().collect()).is_err());
    }
}
