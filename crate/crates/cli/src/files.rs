//! Reading and writing the JSON formats.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use ohs::geom::exact::ExactPoint;
use ohs::hypercore::Hypergraph;
use ohs::umcolor::Graph;

/// Marks failures caused by malformed or unreadable input.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

#[derive(Debug, Serialize, Deserialize)]
pub struct PointsFile {
    pub points: Vec<ExactPoint>,
}

pub enum Instance {
    Hypergraph(Hypergraph),
    Graph(Graph),
    Points(Vec<ExactPoint>),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())).into())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: {e}", path.display())).into())
}

/// Detects the instance kind from its keys: `points`, `edges` or `ranges`.
pub fn read_instance(path: &Path) -> Result<Instance> {
    let value: serde_json::Value = read_json(path)?;
    let parse = |v: serde_json::Value| -> Result<Instance> {
        let kind = if v.get("points").is_some() {
            "points"
        } else if v.get("edges").is_some() {
            "edges"
        } else if v.get("ranges").is_some() {
            "ranges"
        } else {
            bail!(InputError(format!(
                "{}: expected a points, graph or hypergraph object",
                path.display()
            )))
        };
        let wrap = |e: serde_json::Error| InputError(format!("{}: {e}", path.display()));
        Ok(match kind {
            "points" => Instance::Points(serde_json::from_value::<PointsFile>(v).map_err(wrap)?.points),
            "edges" => Instance::Graph(serde_json::from_value(v).map_err(wrap)?),
            _ => Instance::Hypergraph(serde_json::from_value(v).map_err(wrap)?),
        })
    };
    parse(value)
}

/// One JSON value per nonblank line.
pub fn read_json_lines<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = read(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| InputError(format!("{}:{}: {e}", path.display(), i + 1)).into())
        })
        .collect()
}

/// Writes through a sibling temporary file so readers never see a partial
/// document.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp~");
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, &text)
}
