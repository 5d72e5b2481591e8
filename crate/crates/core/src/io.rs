//! Text file formats.
//!
//! Facet files: one facet per line, vertices as space-separated positive
//! integers, `#` starting a comment. Coloring files: one `vertex color` pair
//! per line. Ears files: facet-list blocks separated by blank lines.

use std::path::Path;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::flags::Coloring;

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(idx) => &line[..idx],
        None => line,
    }
}

pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<u32>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut facet = Vec::new();
        for token in line.split_whitespace() {
            let v: i64 = token.parse().map_err(|_| {
                Error::InvalidInput(format!("line {}: `{token}` is not an integer", lineno + 1))
            })?;
            if v <= 0 {
                return Err(Error::BadVertexLabel);
            }
            facet.push(v as u32);
        }
        facets.push(facet);
    }
    SimplicialComplex::from_facets(facets)
}

pub fn read_facet_file(path: &Path) -> Result<SimplicialComplex> {
    parse_facets(&std::fs::read_to_string(path)?)
}

pub fn format_facets(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for facet in complex.facets() {
        let line: Vec<String> = facet.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_facet_file(path: &Path, complex: &SimplicialComplex) -> Result<()> {
    Ok(std::fs::write(path, format_facets(complex))?)
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "line {}: expected `vertex color`",
                lineno + 1
            )));
        }
        let v: u32 = tokens[0]
            .parse()
            .map_err(|_| Error::InvalidInput(format!("line {}: bad vertex", lineno + 1)))?;
        let c: u8 = tokens[1]
            .parse()
            .map_err(|_| Error::InvalidInput(format!("line {}: bad color", lineno + 1)))?;
        if v == 0 {
            return Err(Error::BadVertexLabel);
        }
        pairs.push((v, c));
    }
    Ok(Coloring::new(pairs))
}

pub fn read_coloring_file(path: &Path) -> Result<Coloring> {
    parse_coloring(&std::fs::read_to_string(path)?)
}

pub fn format_coloring(coloring: &Coloring) -> String {
    let mut out = String::new();
    for (v, c) in coloring.pairs() {
        out.push_str(&format!("{v} {c}\n"));
    }
    out
}

pub fn write_coloring_file(path: &Path, coloring: &Coloring) -> Result<()> {
    Ok(std::fs::write(path, format_coloring(coloring))?)
}

/// Blocks separated by blank lines, each block a facet list.
pub fn parse_ears(text: &str) -> Result<Vec<SimplicialComplex>> {
    let mut blocks: Vec<String> = Vec::new();
    let mut current = String::new();
    for raw in text.lines() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    if blocks.is_empty() {
        return Err(Error::InvalidInput("ears file has no blocks".into()));
    }
    blocks.iter().map(|b| parse_facets(b)).collect()
}

pub fn read_ears_file(path: &Path) -> Result<Vec<SimplicialComplex>> {
    parse_ears(&std::fs::read_to_string(path)?)
}

pub fn format_ears(pieces: &[SimplicialComplex]) -> String {
    pieces
        .iter()
        .map(format_facets)
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn write_ears_file(path: &Path, pieces: &[SimplicialComplex]) -> Result<()> {
    Ok(std::fs::write(path, format_ears(pieces))?)
}
