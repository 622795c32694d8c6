//! JSON input formats.
//!
//! Tope lists: `{ "n": 3, "labels": ["e1","e2","e3"], "topes": [["e1","-e2"], ...],
//! "loops_plus": ["e3"] }`, with `labels` and `loops_plus` optional.
//! Vectors: `{ "dim": 2, "vectors": [["1","0"], ["1/2","-3"]] }`; negatives
//! are implicit and labels default to `e1..en`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::feasibility::{format_rational, parse_rational, Q};
use crate::ground::{GroundSet, RootSet};
use crate::oriented_matroid::OrientedMatroid;
use crate::preacycloid::Preacycloid;

#[derive(Serialize, Deserialize)]
struct TopeFile {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    topes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    loops_plus: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct VectorFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    vectors: Vec<Vec<String>>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    Topes { preacycloid: Preacycloid, loops_plus: Option<RootSet> },
    Vectors { ground: Arc<GroundSet>, dim: usize, vectors: Vec<Vec<Q>> },
}

fn ground_for(n: usize, labels: Option<Vec<String>>) -> Result<Arc<GroundSet>> {
    let g = match labels {
        Some(l) => {
            if l.len() != n {
                return Err(Error::Parse(format!("{} labels for n = {n}", l.len())));
            }
            GroundSet::new(l)?
        }
        None => GroundSet::standard(n)?,
    };
    Ok(Arc::new(g))
}

impl Input {
    pub fn parse(text: &str) -> Result<Input> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if v.get("topes").is_some() {
            let f: TopeFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            let ground = ground_for(f.n, f.labels)?;
            let preacycloid = Preacycloid::from_labels(ground.clone(), &f.topes)?;
            let loops_plus = f.loops_plus.map(|l| ground.parse_set(&l)).transpose()?;
            Ok(Input::Topes { preacycloid, loops_plus })
        } else if v.get("vectors").is_some() {
            let f: VectorFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            let ground = ground_for(f.vectors.len(), f.labels)?;
            let vectors = f
                .vectors
                .iter()
                .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Q>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Input::Vectors { ground, dim: f.dim, vectors })
        } else {
            Err(Error::Parse("expected a \"topes\" or \"vectors\" field".into()))
        }
    }

    pub fn read(path: &Path) -> Result<Input> {
        Input::parse(&std::fs::read_to_string(path)?)
    }

    pub fn matroid(&self) -> Result<OrientedMatroid> {
        match self {
            Input::Topes { preacycloid, .. } => Ok(OrientedMatroid::from_topes(preacycloid)),
            Input::Vectors { ground, dim, vectors } => OrientedMatroid::from_vectors(ground.clone(), *dim, vectors.clone()),
        }
    }

    pub fn preacycloid(&self) -> Result<Preacycloid> {
        match self {
            Input::Topes { preacycloid, .. } => Ok(preacycloid.clone()),
            Input::Vectors { .. } => Ok(self.matroid()?.tope_acycloid()),
        }
    }

    pub fn loops_plus(&self) -> Option<RootSet> {
        match self {
            Input::Topes { loops_plus, .. } => *loops_plus,
            Input::Vectors { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Input::Topes { .. } => "topes",
            Input::Vectors { .. } => "vectors",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Input::Topes { preacycloid, loops_plus } => preacycloid_json(preacycloid, *loops_plus),
            Input::Vectors { ground, dim, vectors } => vectors_json(ground, *dim, vectors),
        }
    }
}

fn standard_labels(g: &GroundSet) -> bool {
    g.positive_labels().iter().enumerate().all(|(i, l)| *l == format!("e{}", i + 1))
}

pub fn preacycloid_json(a: &Preacycloid, loops_plus: Option<RootSet>) -> Value {
    let g = a.ground();
    let f = TopeFile {
        n: g.pairs(),
        labels: (!standard_labels(g)).then(|| g.positive_labels().to_vec()),
        topes: a.topes().iter().map(|&t| g.names(t)).collect(),
        loops_plus: loops_plus.map(|l| g.names(l)),
    };
    serde_json::to_value(f).expect("serializable")
}

pub fn vectors_json(ground: &GroundSet, dim: usize, vectors: &[Vec<Q>]) -> Value {
    let f = VectorFile {
        dim,
        labels: (!standard_labels(ground)).then(|| ground.positive_labels().to_vec()),
        vectors: vectors.iter().map(|v| v.iter().map(format_rational).collect()).collect(),
    };
    serde_json::to_value(f).expect("serializable")
}

/// Pretty JSON with a trailing newline, as written to files.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
