//! Text formats for positions.
//!
//! `.cplx`: one facet per line as whitespace-separated vertex indices, closed
//! downward on read. `.edges`: one edge `a b` per line; a single index declares
//! an isolated vertex. Both accept `#` comments and an optional
//! `vertices N` line fixing the ground set size.

use std::fs;
use std::path::Path;

use crate::complex::{Face, SimplicialComplex};
use crate::{Error, Result};

struct Parsed {
    ground: Option<usize>,
    faces: Vec<Face>,
}

fn parse_lines(text: &str, max_len: Option<usize>) -> Result<Parsed> {
    let mut out = Parsed { ground: None, faces: Vec::new() };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        if let Some(rest) = line.strip_prefix("vertices") {
            let n = rest.trim().parse().map_err(|_| err(format!("bad vertex count {:?}", rest.trim())))?;
            out.ground = Some(n);
            continue;
        }
        let vs = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad vertex {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(m) = max_len {
            if vs.len() > m {
                return Err(err(format!("expected at most {m} vertices, got {}", vs.len())));
            }
        }
        out.faces.push(Face::new(vs).map_err(|e| err(e.to_string()))?);
    }
    Ok(out)
}

fn build(p: Parsed) -> Result<SimplicialComplex> {
    let needed = p.faces.iter().map(|f| f.max_vertex() + 1).max().unwrap_or(0);
    let ground = p.ground.unwrap_or(needed);
    if ground < needed {
        return Err(Error::InvalidInput(format!("vertex {} outside declared ground set of {ground}", needed - 1)));
    }
    SimplicialComplex::close_down(&p.faces, ground)
}

pub fn parse_cplx(text: &str) -> Result<SimplicialComplex> {
    build(parse_lines(text, None)?)
}

pub fn parse_edges(text: &str) -> Result<SimplicialComplex> {
    build(parse_lines(text, Some(2))?)
}

pub fn write_cplx(c: &SimplicialComplex) -> String {
    let mut out = format!("vertices {}\n", c.ground_size());
    for f in c.facets() {
        let vs: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
        out.push_str(&vs.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_edges(c: &SimplicialComplex) -> Result<String> {
    if !c.is_graph() {
        return Err(Error::InvalidInput("position has faces with more than two vertices".into()));
    }
    Ok(write_cplx(c))
}

/// Reads a position, choosing the format from the file extension.
pub fn read_path(path: &Path) -> Result<SimplicialComplex> {
    let text = fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("edges") => parse_edges(&text),
        _ => parse_cplx(&text),
    }
}

pub fn write_path(path: &Path, c: &SimplicialComplex) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("edges") => write_edges(c)?,
        _ => write_cplx(c),
    };
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cplx_round_trip() {
        let text = "# full triangle and a pendant edge\n0 1 2\n2 3\n";
        let c = parse_cplx(text).unwrap();
        assert_eq!(c.face_count(), 7 + 2);
        assert_eq!(parse_cplx(&write_cplx(&c)).unwrap(), c);
    }

    #[test]
    fn edges_with_isolated_vertex() {
        let c = parse_edges("vertices 4\n0 1\n2\n").unwrap();
        assert_eq!(c.ground_size(), 4);
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(parse_edges(&write_edges(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn empty_file_is_empty_position() {
        assert!(parse_cplx("").unwrap().is_empty());
        assert!(parse_cplx("vertices 3\n").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_cplx("0 1\nx 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edges("0 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_cplx("vertices 2\n0 5\n").is_err());
    }
}
