//! Line-oriented skeleton file format.
//!
//! ```text
//! residue torsion            # or: residue complex | residue explicit
//! vertex v1 genus=0
//! vertex v2 genus=1 picrank=2
//! edge e1 v1 v2 length=3/2
//! edge e2 v2 v2 length=1     # loop
//! ```
//!
//! Tokens are whitespace-separated, `#` starts a comment, lengths are exact
//! rationals `p/q` or integers. The residue line may appear once and
//! defaults to `torsion`.

use super::{AugmentedMetricGraph, GraphError, ResidueModel, Vertex};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parse a rational literal `p/q` or integer `p`.
pub fn parse_rational<S: Scalar>(tok: &str) -> Option<S> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let p: i64 = num.parse().ok()?;
    let q: i64 = den.parse().ok()?;
    if q <= 0 {
        return None;
    }
    Some(crate::scalar::ratio(p, q))
}

fn split_kv<'a>(tok: &'a str, key: &str) -> Option<&'a str> {
    tok.strip_prefix(key)?.strip_prefix('=')
}

/// Parse a skeleton file into a validated graph and its residue model.
pub fn parse_skeleton<S: Scalar>(
    text: &str,
) -> Result<(AugmentedMetricGraph<S>, ResidueModel), ParseError> {
    let mut model: Option<ResidueModel> = None;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges: Vec<(String, String, String, S)> = Vec::new();

    for (ix, raw) in text.lines().enumerate() {
        let line_no = ix + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "residue" => {
                if tokens.len() != 2 {
                    return Err(syntax(line_no, "expected `residue <model>`"));
                }
                let m: ResidueModel = tokens[1]
                    .parse()
                    .map_err(|_| syntax(line_no, format!("unknown residue model `{}`", tokens[1])))?;
                if model.replace(m).is_some() {
                    return Err(syntax(line_no, "duplicate residue line"));
                }
            }
            "vertex" => {
                if tokens.len() < 2 {
                    return Err(syntax(line_no, "expected `vertex <id> ...`"));
                }
                let id = tokens[1].to_string();
                if vertices.iter().any(|v| v.id == id) {
                    return Err(syntax(line_no, format!("duplicate id `{}`", id)));
                }
                let mut genus: Option<u32> = None;
                let mut picrank: Option<u32> = None;
                for tok in &tokens[2..] {
                    if let Some(v) = split_kv(tok, "genus") {
                        genus = Some(
                            v.parse()
                                .map_err(|_| syntax(line_no, format!("bad genus `{}`", v)))?,
                        );
                    } else if let Some(v) = split_kv(tok, "picrank") {
                        picrank = Some(
                            v.parse()
                                .map_err(|_| syntax(line_no, format!("bad picrank `{}`", v)))?,
                        );
                    } else {
                        return Err(syntax(line_no, format!("unexpected token `{}`", tok)));
                    }
                }
                let genus = genus.ok_or_else(|| syntax(line_no, "vertex needs genus=<n>"))?;
                if genus == 0 && picrank.is_some() {
                    return Err(syntax(
                        line_no,
                        format!("picrank on genus-0 vertex `{}`", id),
                    ));
                }
                vertices.push(Vertex {
                    id,
                    genus,
                    picrank: picrank.unwrap_or(0),
                });
            }
            "edge" => {
                if tokens.len() != 5 {
                    return Err(syntax(
                        line_no,
                        "expected `edge <id> <src> <dst> length=<p/q>`",
                    ));
                }
                let id = tokens[1].to_string();
                if edges.iter().any(|(e, _, _, _)| *e == id) {
                    return Err(syntax(line_no, format!("duplicate id `{}`", id)));
                }
                let length_tok = split_kv(tokens[4], "length")
                    .ok_or_else(|| syntax(line_no, "edge needs length=<p/q>"))?;
                let length: S = parse_rational(length_tok)
                    .ok_or_else(|| syntax(line_no, format!("bad rational `{}`", length_tok)))?;
                if length <= S::zero() {
                    return Err(syntax(
                        line_no,
                        format!("non-positive length on edge `{}`", id),
                    ));
                }
                edges.push((id, tokens[2].to_string(), tokens[3].to_string(), length));
            }
            other => {
                return Err(syntax(line_no, format!("unknown directive `{}`", other)));
            }
        }
    }

    let graph = AugmentedMetricGraph::new(vertices, edges)?;
    Ok((graph, model.unwrap_or(ResidueModel::Torsion)))
}

/// Write a graph back out in the skeleton format. `parse_skeleton` of the
/// result reproduces the graph exactly (over rational scalars).
pub fn serialize_skeleton<S: Scalar>(
    graph: &AugmentedMetricGraph<S>,
    model: ResidueModel,
) -> String {
    let mut out = format!("residue {}\n", model);
    for v in graph.vertices() {
        if v.picrank > 0 {
            out.push_str(&format!(
                "vertex {} genus={} picrank={}\n",
                v.id, v.genus, v.picrank
            ));
        } else {
            out.push_str(&format!("vertex {} genus={}\n", v.id, v.genus));
        }
    }
    for e in graph.edges() {
        out.push_str(&format!(
            "edge {} {} {} length={}\n",
            e.id,
            graph.vertices()[e.src].id,
            graph.vertices()[e.dst].id,
            e.length
        ));
    }
    out
}
