//! DIMACS edge format and file helpers.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};

/// Writes `p edge |V| |E|` followed by one `e u v` line per edge, 1-indexed.
pub fn write_dimacs<W: Write>(g: &CayleyGraph, mut w: W) -> Result<()> {
    writeln!(w, "p edge {} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn dimacs_string(g: &CayleyGraph) -> Result<String> {
    let mut buf = Vec::new();
    write_dimacs(g, &mut buf)?;
    Ok(String::from_utf8(buf).expect("ascii"))
}

/// A graph read back from DIMACS, with 0-indexed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn parse_dimacs(text: &str) -> Result<DimacsGraph> {
    let bad = |line: usize, msg: &str| Error::InvalidParameter(format!("DIMACS line {}: {msg}", line + 1));
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(bad(i, "second problem line"));
                }
                if tok.next() != Some("edge") {
                    return Err(bad(i, "expected 'p edge'"));
                }
                let nums: Vec<usize> = tok.map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad(i, "bad count"))?;
                let [nv, ne] = nums[..] else {
                    return Err(bad(i, "expected two counts"));
                };
                header = Some((nv, ne));
            }
            Some("e") => {
                let (nv, _) = header.ok_or_else(|| bad(i, "edge before problem line"))?;
                let nums: Vec<usize> = tok.map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad(i, "bad vertex"))?;
                let [u, v] = nums[..] else {
                    return Err(bad(i, "expected two endpoints"));
                };
                if u == 0 || v == 0 || u > nv || v > nv {
                    return Err(bad(i, "vertex out of range"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => return Err(bad(i, "unknown line type")),
        }
    }
    let (vertices, ne) = header.ok_or_else(|| Error::InvalidParameter("DIMACS input has no problem line".into()))?;
    if ne != edges.len() {
        return Err(Error::InvalidParameter(format!("header declares {ne} edges, found {}", edges.len())));
    }
    Ok(DimacsGraph { vertices, edges })
}

pub fn read_text(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
