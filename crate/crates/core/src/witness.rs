use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{Vertex, VertexSet};

/// What a [`ViolationWitness`] certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ViolationKind {
    /// A `p`-set spanning fewer than `q` colors.
    PqColoring { p: usize, q: usize },
    /// At least `k` edges spanning at most `s` vertices.
    Configuration { s: usize, k: usize },
    /// An `(s,k)`-configuration forbidden by one of the freeness properties
    /// of the restricted extremal family (`property` is 1 or 2).
    DefHConfiguration { property: u8, s: usize, k: usize },
    /// A touched vertex whose degree is below the required minimum.
    LowDegree {
        vertex: Vertex,
        degree: usize,
        min_degree: usize,
    },
    /// A vertex set on which repeats and induced hyperedges disagree.
    Faithfulness { padded: bool },
    /// A component of the edge-overlap graph failing the pair census.
    H4Component { reason: String },
    /// A set spanned by same-colored edge groups with too many repeats.
    ForbiddenSubmatching,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationWitness {
    pub kind: ViolationKind,
    pub subset: VertexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors_seen: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repeats: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_edges: Option<usize>,
}

impl ViolationWitness {
    pub fn new(kind: ViolationKind, subset: VertexSet) -> Self {
        ViolationWitness {
            kind,
            subset,
            colors_seen: None,
            repeats: None,
            induced_edges: None,
        }
    }

    pub fn with_colors(mut self, colors_seen: usize, repeats: usize) -> Self {
        self.colors_seen = Some(colors_seen);
        self.repeats = Some(repeats);
        self
    }

    pub fn with_induced(mut self, induced: usize) -> Self {
        self.induced_edges = Some(induced);
        self
    }
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} on {}", self.kind, self.subset)?;
        if let Some(c) = self.colors_seen {
            write!(f, ", c(S)={c}")?;
        }
        if let Some(r) = self.repeats {
            write!(f, ", r(S)={r}")?;
        }
        if let Some(e) = self.induced_edges {
            write!(f, ", induced edges={e}")?;
        }
        Ok(())
    }
}

/// Outcome of an exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation(ViolationWitness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn witness(&self) -> Option<&ViolationWitness> {
        match self {
            Verdict::Ok => None,
            Verdict::Violation(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<ViolationWitness> {
        match self {
            Verdict::Ok => None,
            Verdict::Violation(w) => Some(w),
        }
    }
}

impl From<Option<ViolationWitness>> for Verdict {
    fn from(w: Option<ViolationWitness>) -> Self {
        w.map_or(Verdict::Ok, Verdict::Violation)
    }
}
