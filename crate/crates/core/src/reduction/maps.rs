//! Translation between 3-colorings and centroids of the reduced instance.

use crate::bits::BinaryString;
use crate::error::{HdcError, Result};
use crate::exponent::PExponent;

use super::construct::reduced_length;
use super::graph::{Coloring, Graph};

/// Vertex triples encode the vertex color; edge triples encode the color
/// missing from the edge. Every other column is 0.
pub fn coloring_to_centroid(graph: &Graph, coloring: &Coloring, p: PExponent, distinct: bool) -> Result<BinaryString> {
    let n = graph.vertex_count();
    if coloring.colors.len() != n {
        return Err(HdcError::IncompatibleLengths { left: coloring.colors.len(), right: n });
    }
    if let Some((u, v)) = coloring.conflict(graph) {
        return Err(HdcError::ImproperColoring(u, v));
    }
    let n_hat = n + graph.edge_count();
    let mut bits = vec![false; reduced_length(n_hat, p, distinct)?];
    for v in 1..=n {
        bits[3 * (v - 1) + coloring.color(v) as usize] = true;
    }
    for (j0, &(x, y)) in graph.edges().iter().enumerate() {
        let missing = 3 - coloring.color(x) - coloring.color(y);
        bits[3 * (n + j0) + missing as usize] = true;
    }
    Ok(BinaryString::from_bits(bits))
}

/// Reads the vertex triples back as colors. Only the vertex triples are
/// inspected; the result may still be improper.
pub fn centroid_to_coloring(graph: &Graph, s: &BinaryString, p: PExponent) -> Result<Coloring> {
    let n = graph.vertex_count();
    let n_hat = n + graph.edge_count();
    let plain = reduced_length(n_hat, p, false)?;
    let distinct = reduced_length(n_hat, p, true)?;
    if s.len() != plain && s.len() != distinct {
        return Err(HdcError::IncompatibleLengths { left: s.len(), right: plain });
    }
    let bits: Vec<bool> = s.iter().collect();
    let mut colors = Vec::with_capacity(n);
    for v in 1..=n {
        let triple = &bits[3 * (v - 1)..3 * v];
        match triple.iter().filter(|&&b| b).count() {
            1 => colors.push(triple.iter().position(|&b| b).unwrap() as u8),
            k => return Err(HdcError::Rejected(format!("vertex {v} triple has {k} ones, expected exactly one"))),
        }
    }
    Coloring::new(colors)
}
