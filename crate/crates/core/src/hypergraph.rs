//! Multi-hypergraphs with aggregated edge multiplicities.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::{Vertex, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Uniformity {
    /// Every edge has exactly `r` vertices (`r` is 3 or 4).
    Uniform(usize),
    /// Edges of size 3 and 4 may coexist.
    Mixed,
}

impl Uniformity {
    /// Header code used by the text format: `r`, or 0 for mixed.
    pub fn code(self) -> usize {
        match self {
            Uniformity::Uniform(r) => r,
            Uniformity::Mixed => 0,
        }
    }

    pub fn from_code(code: usize) -> Result<Self> {
        match code {
            0 => Ok(Uniformity::Mixed),
            3 | 4 => Ok(Uniformity::Uniform(code)),
            _ => Err(Error::range(format!("uniformity must be 3, 4 or 0 (mixed), got {code}"))),
        }
    }

    fn admits(self, size: usize) -> bool {
        match self {
            Uniformity::Uniform(r) => size == r,
            Uniformity::Mixed => size == 3 || size == 4,
        }
    }
}

/// A hypergraph on `0..n` whose edges carry multiplicities.
///
/// Multiplicity is stored once per distinct vertex set; adding the same edge
/// twice increments it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiHypergraph {
    n: usize,
    uniformity: Uniformity,
    edges: BTreeMap<VertexSet, u32>,
}

impl MultiHypergraph {
    pub fn new(n: usize, uniformity: Uniformity) -> Result<Self> {
        if let Uniformity::Uniform(r) = uniformity {
            Uniformity::from_code(r)?;
        }
        Ok(MultiHypergraph {
            n,
            uniformity,
            edges: BTreeMap::new(),
        })
    }

    /// Builds a simple hypergraph from a list of edges.
    pub fn from_edges<I, E>(n: usize, uniformity: Uniformity, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = Vertex>,
    {
        let mut h = Self::new(n, uniformity)?;
        for e in edges {
            h.add_edge(e, 1)?;
        }
        Ok(h)
    }

    pub fn add_edge(&mut self, vertices: impl IntoIterator<Item = Vertex>, mult: u32) -> Result<()> {
        let raw: Vec<Vertex> = vertices.into_iter().collect();
        let set = VertexSet::new(raw.iter().copied());
        if set.len() != raw.len() {
            return Err(Error::InvalidEdge {
                edge: raw,
                reason: "repeated vertex".into(),
            });
        }
        set.check_bounds(self.n)?;
        if !self.uniformity.admits(set.len()) {
            return Err(Error::InvalidEdge {
                edge: raw,
                reason: format!("size {} not allowed for {:?}", set.len(), self.uniformity),
            });
        }
        if mult == 0 {
            return Err(Error::InvalidEdge {
                edge: raw,
                reason: "multiplicity must be at least 1".into(),
            });
        }
        *self.edges.entry(set).or_insert(0) += mult;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> Uniformity {
        self.uniformity
    }

    /// Distinct edges with multiplicities, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&VertexSet, u32)> + '_ {
        self.edges.iter().map(|(e, &m)| (e, m))
    }

    pub fn multiplicity(&self, edge: &VertexSet) -> u32 {
        self.edges.get(edge).copied().unwrap_or(0)
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge count with multiplicity.
    pub fn total_edges(&self) -> usize {
        self.edges.values().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.values().all(|&m| m == 1)
    }

    /// Error naming the first edge with multiplicity above one.
    pub fn require_simple(&self) -> Result<()> {
        match self.edges.iter().find(|(_, &m)| m > 1) {
            Some((e, &m)) => Err(Error::SimpleRequired {
                edge: e.members().to_vec(),
                multiplicity: m,
            }),
            None => Ok(()),
        }
    }

    /// Degree with multiplicity.
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|(e, _)| e.contains(v))
            .map(|(_, &m)| m as usize)
            .sum()
    }

    /// Edges (with multiplicity) contained in `s`.
    pub fn induced_edges(&self, s: &VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|(e, _)| e.is_subset(s))
            .map(|(_, &m)| m as usize)
            .sum()
    }

    /// Largest edge size present (0 when empty).
    pub fn max_edge_size(&self) -> usize {
        self.edges.keys().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Smallest size an edge may have under the declared uniformity.
    pub fn min_admissible_size(&self) -> usize {
        match self.uniformity {
            Uniformity::Uniform(r) => r,
            Uniformity::Mixed => 3,
        }
    }

    /// Edges as bitmasks with multiplicities. Requires `n <= 64`.
    pub(crate) fn edge_masks(&self) -> Vec<(u64, u32)> {
        debug_assert!(self.n <= 64);
        self.edges
            .iter()
            .map(|(e, &m)| (e.members().iter().fold(0u64, |acc, &x| acc | 1 << x), m))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities_aggregate() {
        let mut h = MultiHypergraph::new(6, Uniformity::Uniform(4)).unwrap();
        h.add_edge([3, 1, 0, 2], 1).unwrap();
        h.add_edge([0, 1, 2, 3], 2).unwrap();
        h.add_edge([2, 3, 4, 5], 1).unwrap();
        assert_eq!(h.distinct_edge_count(), 2);
        assert_eq!(h.total_edges(), 4);
        assert_eq!(h.multiplicity(&VertexSet::new([0, 1, 2, 3])), 3);
        assert_eq!(h.degree(2), 4);
        assert_eq!(h.induced_edges(&VertexSet::new([0, 1, 2, 3, 4])), 3);
        assert!(!h.is_simple());
        assert!(matches!(h.require_simple(), Err(Error::SimpleRequired { multiplicity: 3, .. })));
    }

    #[test]
    fn rejects_malformed_edges() {
        let mut h = MultiHypergraph::new(5, Uniformity::Uniform(3)).unwrap();
        assert!(h.add_edge([0, 1, 1], 1).is_err());
        assert!(h.add_edge([0, 1, 5], 1).is_err());
        assert!(h.add_edge([0, 1, 2, 3], 1).is_err());
        assert!(h.add_edge([0, 1, 2], 0).is_err());
        let mut m = MultiHypergraph::new(5, Uniformity::Mixed).unwrap();
        m.add_edge([0, 1, 2], 1).unwrap();
        m.add_edge([0, 1, 2, 3], 1).unwrap();
        assert!(m.add_edge([0, 1], 1).is_err());
        assert!(MultiHypergraph::new(5, Uniformity::Uniform(5)).is_err());
    }
}
