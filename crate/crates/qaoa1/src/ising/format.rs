//! Plain-text serialisation of Ising models.
//!
//! The format is line oriented. `#` starts a comment that runs to the end
//! of the line; blank lines are ignored. The first significant line is the
//! header `ising <n>`; after it, in any order:
//!
//! ```text
//! ising 3
//! node 0 1.5          # external field h_0 (absent vertices have h = 0)
//! edge 0 2 -1         # coupling J_{0,2}; requires u < v
//! constant 0.25       # optional additive constant (at most once)
//! ```
//!
//! Writing uses canonical order (header, nodes ascending, edges ascending,
//! constant) and prints floats with Rust's shortest round-trip formatting,
//! so `parse(save(m)) == m` bit for bit.

use std::path::Path;

use crate::error::{Error, Result};
use crate::ising::model::IsingModel;

/// Parses a model from its text form.
///
/// Reported line numbers are 1-based and refer to the raw input.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::parse;
///
/// let m = parse("ising 2\nedge 0 1 -1.5\nnode 1 0.5\n").unwrap();
/// assert_eq!(m.n(), 2);
/// assert_eq!(m.coupling(0, 1), -1.5);
/// assert_eq!(m.field(1), 0.5);
/// ```
pub fn parse(text: &str) -> Result<IsingModel> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut fields: Vec<f64> = Vec::new();
    let mut seen_nodes: Vec<bool> = Vec::new();
    let mut constant: Option<f64> = None;
    let mut header_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let rest: Vec<&str> = tokens.collect();
        let fail = |message: String| Error::Parse {
            line: line_no,
            message,
        };

        if n.is_none() {
            if keyword != "ising" {
                return Err(fail(format!(
                    "expected header `ising <n>`, found `{keyword}`"
                )));
            }
            let [count] = rest[..] else {
                return Err(fail("header takes exactly one argument".into()));
            };
            let parsed: usize = count
                .parse()
                .map_err(|_| fail(format!("invalid vertex count `{count}`")))?;
            if parsed == 0 {
                return Err(fail("vertex count must be positive".into()));
            }
            n = Some(parsed);
            fields = vec![0.0; parsed];
            seen_nodes = vec![false; parsed];
            header_line = line_no;
            continue;
        }
        let nv = n.unwrap();

        match keyword {
            "ising" => {
                return Err(fail(format!(
                    "duplicate header (first at line {header_line})"
                )));
            }
            "node" => {
                let [vertex, value] = rest[..] else {
                    return Err(fail("node takes exactly two arguments".into()));
                };
                let i: usize = vertex
                    .parse()
                    .map_err(|_| fail(format!("invalid vertex `{vertex}`")))?;
                if i >= nv {
                    return Err(fail(format!("vertex {i} is outside 0..{nv}")));
                }
                if seen_nodes[i] {
                    return Err(fail(format!("duplicate node {i}")));
                }
                let h: f64 = value
                    .parse()
                    .map_err(|_| fail(format!("invalid field value `{value}`")))?;
                if !h.is_finite() {
                    return Err(fail(format!("field at vertex {i} is not finite")));
                }
                seen_nodes[i] = true;
                fields[i] = h;
            }
            "edge" => {
                let [a, b, value] = rest[..] else {
                    return Err(fail("edge takes exactly three arguments".into()));
                };
                let u: usize = a
                    .parse()
                    .map_err(|_| fail(format!("invalid vertex `{a}`")))?;
                let v: usize = b
                    .parse()
                    .map_err(|_| fail(format!("invalid vertex `{b}`")))?;
                if u >= nv || v >= nv {
                    return Err(fail(format!(
                        "edge ({u}, {v}) references a vertex outside 0..{nv}"
                    )));
                }
                if u == v {
                    return Err(fail(format!("self-loop at vertex {u}")));
                }
                if u > v {
                    return Err(fail(format!(
                        "edge ({u}, {v}) must be written with the smaller vertex first"
                    )));
                }
                if edges.iter().any(|&(eu, ev, _)| (eu, ev) == (u, v)) {
                    return Err(fail(format!("duplicate edge ({u}, {v})")));
                }
                let w: f64 = value
                    .parse()
                    .map_err(|_| fail(format!("invalid coupling value `{value}`")))?;
                if !w.is_finite() {
                    return Err(fail(format!("coupling on ({u}, {v}) is not finite")));
                }
                edges.push((u, v, w));
            }
            "constant" => {
                let [value] = rest[..] else {
                    return Err(fail("constant takes exactly one argument".into()));
                };
                if constant.is_some() {
                    return Err(fail("duplicate constant".into()));
                }
                let c: f64 = value
                    .parse()
                    .map_err(|_| fail(format!("invalid constant `{value}`")))?;
                if !c.is_finite() {
                    return Err(fail("constant is not finite".into()));
                }
                constant = Some(c);
            }
            other => {
                return Err(fail(format!("unknown keyword `{other}`")));
            }
        }
    }

    let Some(nv) = n else {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing header `ising <n>`".into(),
        });
    };
    IsingModel::new(nv, edges, fields, constant.unwrap_or(0.0))
}

/// Renders a model in canonical text form.
///
/// Vertices with zero field and a zero constant are omitted; floats use
/// shortest round-trip formatting, making `parse(save(m)) == m`.
///
/// # Examples
///
/// ```
/// use qaoa1::ising::{parse, save, IsingModel};
///
/// let m = IsingModel::new(2, vec![(0, 1, -1.5)], vec![0.0, 0.25], 0.0).unwrap();
/// let text = save(&m);
/// assert_eq!(parse(&text).unwrap(), m);
/// ```
pub fn save(model: &IsingModel) -> String {
    let mut out = String::new();
    out.push_str(&format!("ising {}\n", model.n()));
    for i in 0..model.n() {
        let h = model.field(i);
        if h != 0.0 {
            out.push_str(&format!("node {i} {h}\n"));
        }
    }
    for (u, v, w) in model.edges() {
        out.push_str(&format!("edge {u} {v} {w}\n"));
    }
    if model.constant() != 0.0 {
        out.push_str(&format!("constant {}\n", model.constant()));
    }
    out
}

/// Reads and parses a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<IsingModel> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}

/// Writes a model file in canonical form.
pub fn save_model(model: &IsingModel, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, save(model))?;
    Ok(())
}
