//! Reading and writing graphs.
//!
//! Two text formats are supported:
//!
//! * **edge list** — one edge per line as two whitespace-separated vertex
//!   names; `#` starts a comment. Names are arbitrary tokens and become
//!   vertices in order of first appearance. A line naming the same vertex
//!   twice records the vertex but no edge, which is how isolated vertices
//!   survive a round trip.
//! * **DIMACS** — `c` comment lines, one `p edge <n> <m>` header, then
//!   `e <u> <v>` lines with 1-based endpoints.

use crate::error::Error;
use crate::graph::Graph;
use crate::Result;
use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

/// On-disk graph format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl Format {
    /// Guess from the file extension, falling back to content sniffing:
    /// a first significant line starting with `p ` or `e ` means DIMACS.
    pub fn detect(path: &Path, content: &str) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("col") | Some("dimacs") | Some("clq") => return Format::Dimacs,
            Some("edges") | Some("edgelist") | Some("txt") => return Format::EdgeList,
            _ => {}
        }
        for line in content.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') && line.len() <= 1 {
                continue;
            }
            if line.starts_with("p ") || line.starts_with("c ") || line.starts_with("e ") {
                return Format::Dimacs;
            }
            if !line.starts_with('#') {
                return Format::EdgeList;
            }
        }
        Format::EdgeList
    }
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "edgelist" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(Error::InvalidInput(format!(
                "unknown graph format {other:?} (expected \"edgelist\" or \"dimacs\")"
            ))),
        }
    }
}

/// Read a graph in the given format.
pub fn read_graph<R: Read>(reader: R, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => read_edge_list(reader),
        Format::Dimacs => read_dimacs(reader),
    }
}

/// Load a graph from a file, detecting the format.
pub fn load_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let content = std::fs::read_to_string(path)?;
    let format = format.unwrap_or_else(|| Format::detect(path, &content));
    read_graph(content.as_bytes(), format)
}

pub fn read_edge_list<R: Read>(reader: R) -> Result<Graph> {
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut intern = |tok: &str, labels: &mut Vec<String>| -> u32 {
        *ids.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() as u32 - 1
        })
    };
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected two vertex names, found {}", toks.len()),
            });
        }
        let u = intern(toks[0], &mut labels);
        let v = intern(toks[1], &mut labels);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(labels.len(), &edges)?.with_labels(labels)
}

pub fn read_dimacs<R: Read>(reader: R) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut declared_m: usize = 0;
    let mut listed = 0usize;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let text = line.trim();
        let mut toks = text.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "second problem line".into(),
                    });
                }
                let _kind = toks.next(); // "edge" / "col"; not load-bearing
                let nv: usize = parse_tok(toks.next(), lineno, "vertex count")?;
                declared_m = parse_tok(toks.next(), lineno, "edge count")?;
                n = Some(nv);
            }
            Some("e") => {
                let base = n.ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: "edge before problem line".into(),
                })?;
                listed += 1;
                let u: usize = parse_tok(toks.next(), lineno, "endpoint")?;
                let v: usize = parse_tok(toks.next(), lineno, "endpoint")?;
                if u < 1 || v < 1 || u > base || v > base {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("endpoint outside 1..={base}"),
                    });
                }
                if u != v {
                    let (u, v) = ((u - 1) as u32, (v - 1) as u32);
                    edges.push((u.min(v), u.max(v)));
                }
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unrecognized line tag {other:?}"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, message: "missing problem line".into() })?;
    if listed != declared_m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {declared_m} edges, file lists {listed}"),
        });
    }
    Graph::from_edges(n, &edges)
}

fn parse_tok<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::Parse { line, message: format!("missing {what}") })?
        .parse()
        .map_err(|_| Error::Parse { line, message: format!("malformed {what}") })
}

pub fn write_edge_list<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", g.label(u), g.label(v))?;
    }
    for v in (0..g.n() as u32).filter(|&v| g.degree(v) == 0) {
        let l = g.label(v);
        writeln!(w, "{l} {l}")?;
    }
    Ok(())
}

pub fn write_dimacs<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    writeln!(w, "p edge {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

/// Write a graph to a file; the format follows the extension (`.col`,
/// `.dimacs`, `.clq` mean DIMACS, everything else edge list).
pub fn save_graph(path: &Path, g: &Graph) -> Result<()> {
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some("col") | Some("dimacs") | Some("clq") => Format::Dimacs,
        _ => Format::EdgeList,
    };
    let file = std::fs::File::create(path)?;
    let mut buf = std::io::BufWriter::new(file);
    match format {
        Format::EdgeList => write_edge_list(&mut buf, g)?,
        Format::Dimacs => write_dimacs(&mut buf, g)?,
    }
    buf.flush()?;
    Ok(())
}
