//! Input documents and report rendering for the command-line tool.
//!
//! An input document is one JSON object:
//!
//! ```json
//! {"n": 5, "facets": [[1,4,5], [2,4,5], [3,4,5], [2,3]], "p": 2}
//! {"n": 2, "generators": [[2,1], [0,3]]}
//! ```
//!
//! Exactly one of `facets` (vertex labels in `1..=n`) and `generators`
//! (exponent vectors of length `n`) must be given. A file may hold several
//! documents, one per line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::defect::DefectReport;
use crate::linalg::{Field, DEFAULT_PRIME};
use crate::linear_part::{BettiTable, LinearPartComplex};
use crate::oracle::FreeResolution;
use crate::simplicial::{
    complex_from_ideal, polarize, MonomialIdeal, PolarVariable, SimplicialComplex, VertexSet,
};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl InputDocument {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        InputDocument {
            n: complex.n(),
            facets: Some(complex.facets().iter().map(|f| f.to_vec()).collect()),
            generators: None,
            p: None,
        }
    }
}

/// Why a document was rejected; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Parses one document per nonempty line; a single document may also span
/// several lines.
pub fn parse_documents(text: &str) -> Result<Vec<InputDocument>, InputError> {
    let stream = serde_json::Deserializer::from_str(text).into_iter::<InputDocument>();
    let docs = stream.collect::<Result<Vec<_>, _>>()?;
    if docs.is_empty() {
        return Err(InputError::Schema("no input document".into()));
    }
    Ok(docs)
}

/// A validated document: the complex to work on and how it was obtained.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub complex: SimplicialComplex,
    pub field: Field,
    /// The ideal as given, when the input was in generator form.
    pub ideal: Option<MonomialIdeal>,
    /// Present when the generators were not squarefree.
    pub polarization: Option<Vec<PolarVariable>>,
}

/// Validates a document. `char_override` (the `--char` flag) takes
/// precedence over the document's own `p`.
pub fn prepare(doc: &InputDocument, char_override: Option<u64>) -> Result<Prepared, InputError> {
    let p = char_override.or(doc.p).unwrap_or(u64::from(DEFAULT_PRIME));
    let field = Field::new(p)?;
    match (&doc.facets, &doc.generators) {
        (Some(facets), None) => {
            let sets = facets
                .iter()
                .map(|f| VertexSet::from_labels(doc.n, f.iter().copied()))
                .collect::<Result<Vec<_>, _>>()?;
            if doc.n > crate::simplicial::MAX_VERTICES {
                return Err(Error::TooManyVertices {
                    n: doc.n,
                    max: crate::simplicial::MAX_VERTICES,
                }
                .into());
            }
            let complex = SimplicialComplex::from_facets(doc.n, sets)?;
            if complex.is_void() {
                return Err(Error::VoidComplex.into());
            }
            Ok(Prepared {
                complex,
                field,
                ideal: None,
                polarization: None,
            })
        }
        (None, Some(gens)) => {
            let ideal = MonomialIdeal::new(doc.n, gens.clone())?;
            let (complex, polarization) = if ideal.is_squarefree() {
                (complex_from_ideal(&ideal)?, None)
            } else {
                let (polar, map) = polarize(&ideal)?;
                (complex_from_ideal(&polar)?, Some(map))
            };
            Ok(Prepared {
                complex,
                field,
                ideal: Some(ideal),
                polarization,
            })
        }
        _ => Err(InputError::Schema(
            "exactly one of \"facets\" and \"generators\" is required".into(),
        )),
    }
}

/// A command's JSON output. `result` fields are merged into the top level.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub field: Field,
    pub n: usize,
    pub polarization: Option<Vec<PolarVariable>>,
    pub timing_ms: Option<u128>,
    pub result: Value,
}

impl RunReport {
    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::from(self.command.clone()));
        map.insert("p".into(), Value::from(self.field.p()));
        map.insert("n".into(), Value::from(self.n));
        if let Some(poly) = &self.polarization {
            map.insert(
                "polarization".into(),
                serde_json::to_value(poly).expect("serializable"),
            );
        }
        match &self.result {
            Value::Object(fields) => map.extend(fields.clone()),
            other => {
                map.insert("result".into(), other.clone());
            }
        }
        if let Some(ms) = self.timing_ms {
            map.insert("timing_ms".into(), Value::from(ms as u64));
        }
        Value::Object(map)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("serializable")
    }
}

/// Graphviz rendering of the linear part: one node `i_U` per summand,
/// labelled `(i,U,j,dim)`, and one edge per nonzero block.
pub fn linear_part_dot(lp: &LinearPartComplex) -> String {
    let id = |k: usize| {
        format!(
            "{}_{}",
            lp.summands[k].hom_degree,
            lp.summands[k].set.label()
        )
    };
    let mut out = String::from("digraph linear_part {\n  rankdir=RL;\n");
    for (k, s) in lp.summands.iter().enumerate() {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"({},{},{},{})\"];",
            id(k),
            s.hom_degree,
            s.set.label(),
            s.coh_degree,
            s.dim
        );
    }
    for b in lp.blocks.iter().filter(|b| !b.matrix.is_zero()) {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"x{}\"];",
            id(b.source),
            id(b.target),
            b.vertex
        );
    }
    out.push_str("}\n");
    out
}

pub fn betti_csv(table: &BettiTable) -> String {
    let mut out = String::from("i,U,beta\n");
    for (&(i, u), &b) in table.entries() {
        let _ = writeln!(out, "{i},{},{b}", u.label());
    }
    out
}

pub fn linear_part_csv(lp: &LinearPartComplex) -> String {
    let mut out = String::from("i,U,j,dim\n");
    for s in &lp.summands {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            s.hom_degree,
            s.set.label(),
            s.coh_degree,
            s.dim
        );
    }
    out
}

pub fn defect_csv(report: &DefectReport) -> String {
    let mut out = String::from("i,U,j,kernel_dim\n");
    for p in &report.positions {
        let _ = writeln!(out, "{},{},{},{}", p.i, p.set.label(), p.j, p.kernel_dim);
    }
    out
}

pub fn resolution_csv(resolution: &FreeResolution) -> String {
    betti_csv(&resolution.betti_table())
}
