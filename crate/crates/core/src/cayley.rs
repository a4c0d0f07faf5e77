//! `Cay(D_2n, S)`: vertices are the `2n` group elements in canonical order and
//! `u ~ v` iff `u v^-1 ∈ S`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dihedral::{ConnectionSet, DihedralElement};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    set: ConnectionSet,
    vertices: Vec<DihedralElement>,
    graph: Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

/// Wire form of a Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyDocument {
    pub n: u32,
    pub set: String,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl CayleyGraph {
    pub fn build(n: u32, set: &ConnectionSet) -> Result<Self> {
        if set.modulus() != n {
            return Err(Error::ModulusMismatch {
                left: n,
                right: set.modulus(),
            });
        }
        let order = 2 * n as usize;
        if order > MAX_ORDER {
            return Err(Error::VertexCapExceeded {
                order,
                cap: MAX_ORDER,
            });
        }
        let vertices = DihedralElement::all(n)?;
        // u v^-1 = s  <=>  v = s^-1 u, and S is inverse-closed.
        let adj = vertices
            .iter()
            .map(|u| {
                set.members()
                    .iter()
                    .map(|s| s.multiply(u).map(|v| v.index()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            set: set.clone(),
            vertices,
            graph: Graph::from_adjacency(adj)?,
        })
    }

    pub fn n(&self) -> u32 {
        self.set.modulus()
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn vertices(&self) -> &[DihedralElement] {
        &self.vertices
    }

    pub fn vertex(&self, idx: usize) -> DihedralElement {
        self.vertices[idx]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        self.graph.distances()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn is_bipartite(&self) -> bool {
        self.graph.is_bipartite()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        self.graph.regular_degree()
    }

    pub fn to_document(&self) -> CayleyDocument {
        CayleyDocument {
            n: self.n(),
            set: self.set.to_string(),
            vertices: self.vertices.iter().map(DihedralElement::token).collect(),
            edges: self.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    /// Rebuilds from a document and checks that its vertex and edge lists
    /// match the graph the connection set defines.
    pub fn from_document(doc: &CayleyDocument) -> Result<Self> {
        let set = ConnectionSet::parse(&doc.set, doc.n)?;
        let g = Self::build(doc.n, &set)?;
        let expect = g.to_document();
        if expect.vertices != doc.vertices {
            return Err(Error::MalformedDocument(
                "vertex list differs from canonical order".into(),
            ));
        }
        let mut edges: Vec<[usize; 2]> = doc
            .edges
            .iter()
            .map(|&[u, v]| if u <= v { [u, v] } else { [v, u] })
            .collect();
        edges.sort_unstable();
        if edges != expect.edges {
            return Err(Error::MalformedDocument(
                "edge list does not match the connection set".into(),
            ));
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(&serde_json::from_str(text)?)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => {
                serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
            }
            ExportFormat::Dot => {
                let mut out = String::new();
                let _ = writeln!(out, "graph \"Cay(D{}, {{{}}})\" {{", 2 * self.n(), self.set);
                for (i, v) in self.vertices.iter().enumerate() {
                    let _ = writeln!(out, "  {i} [label=\"{v}\"];");
                }
                for (u, v) in self.graph.edges() {
                    let _ = writeln!(out, "  {u} -- {v};");
                }
                out.push_str("}\n");
                out
            }
        }
    }
}

impl AsRef<Graph> for CayleyGraph {
    fn as_ref(&self) -> &Graph {
        &self.graph
    }
}
