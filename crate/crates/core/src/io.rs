//! JSON graph documents and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::certificates::Realization;
use crate::error::{Error, Result};
use crate::graph::LoopedSimpleGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopDoc {
    pub id: String,
    pub at: String,
}

/// A rational written as `"n"`, `"n/d"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Text(String),
    Int(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationDoc {
    pub d: usize,
    pub p: BTreeMap<String, Vec<RationalDoc>>,
    #[serde(default)]
    pub q: BTreeMap<String, Vec<RationalDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub loops: Vec<LoopDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationDoc>,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(n)?, d))
        }
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn to_doc_vec(v: &[BigRational]) -> Vec<RationalDoc> {
    v.iter().map(|x| RationalDoc::Text(format_rational(x))).collect()
}

fn from_doc_vec(v: &[RationalDoc]) -> Result<Vec<BigRational>> {
    v.iter()
        .map(|x| match x {
            RationalDoc::Text(s) => parse_rational(s),
            RationalDoc::Int(i) => Ok(BigRational::from_integer((*i).into())),
        })
        .collect()
}

impl RealizationDoc {
    pub fn from_realization(r: &Realization) -> Self {
        Self {
            d: r.d,
            p: r.p.iter().map(|(k, v)| (k.clone(), to_doc_vec(v))).collect(),
            q: r.q.iter().map(|(k, v)| (k.clone(), to_doc_vec(v))).collect(),
        }
    }

    pub fn to_realization(&self) -> Result<Realization> {
        let conv = |m: &BTreeMap<String, Vec<RationalDoc>>| -> Result<BTreeMap<String, Vec<BigRational>>> {
            m.iter()
                .map(|(k, v)| Ok((k.clone(), from_doc_vec(v)?)))
                .collect()
        };
        Ok(Realization {
            d: self.d,
            p: conv(&self.p)?,
            q: conv(&self.q)?,
        })
    }
}

impl GraphDoc {
    pub fn from_graph(g: &LoopedSimpleGraph, r: Option<&Realization>) -> Self {
        Self {
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| [g.vertex_id(a).to_string(), g.vertex_id(b).to_string()])
                .collect(),
            loops: g
                .loops()
                .iter()
                .map(|(id, at)| LoopDoc {
                    id: id.clone(),
                    at: g.vertex_id(*at).to_string(),
                })
                .collect(),
            realization: r.map(RealizationDoc::from_realization),
        }
    }

    pub fn to_graph(&self) -> Result<(LoopedSimpleGraph, Option<Realization>)> {
        let g = LoopedSimpleGraph::build(
            self.vertices.iter().cloned(),
            self.edges.iter().map(|[a, b]| (a, b)),
            self.loops.iter().map(|l| (l.id.clone(), &l.at)),
        )?;
        let r = self
            .realization
            .as_ref()
            .map(RealizationDoc::to_realization)
            .transpose()?;
        Ok((g, r))
    }
}

impl Serialize for LoopedSimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc::from_graph(self, None).serialize(s)
    }
}

pub fn read_graph(text: &str) -> Result<(LoopedSimpleGraph, Option<Realization>)> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_graph()
}

pub fn write_graph(g: &LoopedSimpleGraph, r: Option<&Realization>) -> String {
    serde_json::to_string_pretty(&GraphDoc::from_graph(g, r)).expect("graph documents serialize")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text; loops are self-arcs labelled by their id.
pub fn export_dot(g: &LoopedSimpleGraph) -> String {
    let mut out = String::from("digraph G {\n");
    if g.vertex_count() > 0 {
        out.push_str("  edge [dir=none];\n");
    }
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "  {} -> {};", quote(g.vertex_id(a)), quote(g.vertex_id(b)));
    }
    for (id, at) in g.loops() {
        let v = quote(g.vertex_id(*at));
        let _ = writeln!(out, "  {v} -> {v} [label={}];", quote(id));
    }
    out.push_str("}\n");
    out
}
