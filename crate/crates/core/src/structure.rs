//! Recognition of the cubic and 2-regular shapes dihedral Cayley graphs take:
//! cycles, prisms `P_2 x C_n`, and Möbius ladders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Isomorphism search refuses graphs larger than this.
pub const MAX_ISO_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureKind {
    Cycle { len: usize },
    /// `P_2 x C_n`, on `2n` vertices.
    Prism { n: usize },
    Mobius { vertices: usize },
    CubicBipartite,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureVerdict {
    #[serde(flatten)]
    pub kind: StructureKind,
    /// `mapping[v]` is the template vertex matched with `v`.
    pub mapping: Option<Vec<usize>>,
}

fn param_err(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// `0 - 1 - ... - (m-1) - 0`.
pub fn canonical_cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(param_err(format!("cycle needs m >= 3, got {m}")));
    }
    Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// Outer cycle on `0..n`, inner cycle on `n..2n`, rungs `i -- n + i`.
pub fn canonical_prism(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(param_err(format!("prism needs n >= 3, got {n}")));
    }
    let outer = (0..n).map(|i| (i, (i + 1) % n));
    let inner = (0..n).map(|i| (n + i, n + (i + 1) % n));
    let rungs = (0..n).map(|i| (i, n + i));
    Graph::from_edges(2 * n, outer.chain(inner).chain(rungs))
}

/// `m`-cycle plus chords `i -- i + m/2`.
pub fn canonical_mobius(m: usize) -> Result<Graph> {
    if m < 4 || m % 2 != 0 {
        return Err(param_err(format!(
            "Möbius ladder needs even m >= 4, got {m}"
        )));
    }
    let rim = (0..m).map(|i| (i, (i + 1) % m));
    let chords = (0..m / 2).map(|i| (i, i + m / 2));
    Graph::from_edges(m, rim.chain(chords))
}

/// The cube `K_2 x K_2 x K_2`: vertices are 3-bit words, edges flip one bit.
pub fn hypercube_q3() -> Graph {
    let edges = (0..8usize).flat_map(|u| {
        (0..3)
            .map(move |b| (u, u ^ (1 << b)))
            .filter(|(u, v)| u < v)
    });
    Graph::from_edges(8, edges).expect("cube is a simple graph")
}

pub fn complete_graph(m: usize) -> Graph {
    let edges = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
    Graph::from_edges(m, edges).expect("complete graph is simple")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
    Graph::from_edges(a + b, edges).expect("complete bipartite graph is simple")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    degree: usize,
    neighbor_degrees: Vec<usize>,
    distance_profile: Vec<u16>,
}

fn signatures(g: &Graph) -> Vec<Signature> {
    let dist = g.distances();
    (0..g.order())
        .map(|v| {
            let mut neighbor_degrees: Vec<usize> =
                g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            neighbor_degrees.sort_unstable();
            let mut distance_profile = dist.row(v).to_vec();
            distance_profile.sort_unstable();
            Signature {
                degree: g.degree(v),
                neighbor_degrees,
                distance_profile,
            }
        })
        .collect()
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    sig_g: Vec<Signature>,
    sig_h: Vec<Signature>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, x: usize) -> bool {
        if x == self.g.order() {
            return true;
        }
        let (dg, dh) = (self.g.distances(), self.h.distances());
        for y in 0..self.h.order() {
            if self.used[y] || self.sig_g[x] != self.sig_h[y] {
                continue;
            }
            // Distances to every mapped vertex must agree; this covers adjacency
            // in both directions.
            let consistent = (0..x).all(|p| dg.get(x, p) == dh.get(y, self.map[p]));
            if !consistent {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.extend(x + 1) {
                return true;
            }
            self.used[y] = false;
        }
        false
    }
}

/// First isomorphism `g -> h` in backtracking order (vertices of `g` in index
/// order, candidates in `h` in index order), or `None` if none exists.
pub fn isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    for order in [g.order(), h.order()] {
        if order > MAX_ISO_ORDER {
            return Err(Error::VertexCapExceeded {
                order,
                cap: MAX_ISO_ORDER,
            });
        }
    }
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (sig_g, sig_h) = (signatures(g), signatures(h));
    let mut sorted_g = sig_g.clone();
    let mut sorted_h = sig_h.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return Ok(None);
    }
    let mut m = Matcher {
        g,
        h,
        sig_g,
        sig_h,
        map: vec![usize::MAX; g.order()],
        used: vec![false; h.order()],
    };
    Ok(m.extend(0).then_some(m.map))
}

/// Checks that `mapping` is a bijection preserving adjacency and non-adjacency.
pub fn is_isomorphism(g: &Graph, h: &Graph, mapping: &[usize]) -> bool {
    let order = g.order();
    if h.order() != order || mapping.len() != order {
        return false;
    }
    let mut seen = vec![false; order];
    for &y in mapping {
        if y >= order || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..order).all(|u| (0..order).all(|v| g.has_edge(u, v) == h.has_edge(mapping[u], mapping[v])))
}

/// Classifies a connected graph, checking cycle, prism, Möbius ladder and
/// cubic bipartite in that order.
pub fn recognize<G: AsRef<Graph> + ?Sized>(g: &G) -> Result<StructureVerdict> {
    let g = g.as_ref();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let order = g.order();
    let degree = g.regular_degree();
    if degree == Some(2) && order >= 3 {
        let mapping = isomorphic(g, &canonical_cycle(order)?)?;
        return Ok(StructureVerdict {
            kind: StructureKind::Cycle { len: order },
            mapping,
        });
    }
    if degree == Some(3) && order <= MAX_ISO_ORDER {
        if order % 2 == 0 && order >= 6 {
            if let Some(mapping) = isomorphic(g, &canonical_prism(order / 2)?)? {
                return Ok(StructureVerdict {
                    kind: StructureKind::Prism { n: order / 2 },
                    mapping: Some(mapping),
                });
            }
        }
        if order % 2 == 0 && order >= 4 {
            if let Some(mapping) = isomorphic(g, &canonical_mobius(order)?)? {
                return Ok(StructureVerdict {
                    kind: StructureKind::Mobius { vertices: order },
                    mapping: Some(mapping),
                });
            }
        }
    }
    let kind = if degree == Some(3) && g.is_bipartite() {
        StructureKind::CubicBipartite
    } else {
        StructureKind::Other
    };
    Ok(StructureVerdict {
        kind,
        mapping: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyGraph;
    use crate::dihedral::ConnectionSet;

    fn cay(n: u32, set: &str) -> CayleyGraph {
        CayleyGraph::build(n, &ConnectionSet::parse(set, n).unwrap()).unwrap()
    }

    #[test]
    fn template_identities() {
        assert!(isomorphic(&canonical_mobius(4).unwrap(), &complete_graph(4))
            .unwrap()
            .is_some());
        assert!(isomorphic(&canonical_prism(4).unwrap(), &hypercube_q3())
            .unwrap()
            .is_some());
        assert!(isomorphic(&canonical_mobius(6).unwrap(), &complete_bipartite(3, 3))
            .unwrap()
            .is_some());
        assert!(isomorphic(&canonical_mobius(8).unwrap(), &hypercube_q3())
            .unwrap()
            .is_none());
    }

    #[test]
    fn template_parameters_checked() {
        assert!(canonical_cycle(2).is_err());
        assert!(canonical_prism(2).is_err());
        assert!(canonical_mobius(5).is_err());
        assert!(canonical_mobius(2).is_err());
    }

    #[test]
    fn identity_is_first_self_map() {
        let g = canonical_prism(5).unwrap();
        assert_eq!(isomorphic(&g, &g).unwrap(), Some((0..10).collect()));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let c6 = canonical_cycle(6).unwrap();
        assert!(isomorphic(&c6, &canonical_prism(3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn size_cap() {
        let big = canonical_cycle(65).unwrap();
        assert!(matches!(
            isomorphic(&big, &big),
            Err(Error::VertexCapExceeded { .. })
        ));
    }

    #[test]
    fn mobius_cayley_graph() {
        let g = cay(6, "r3,s1,s2");
        let m12 = canonical_mobius(12).unwrap();
        let map = isomorphic(g.graph(), &m12).unwrap().expect("Möbius ladder");
        assert!(is_isomorphism(g.graph(), &m12, &map));
    }

    #[test]
    fn recognize_examples() {
        assert_eq!(recognize(&cay(5, "r1,r4,s1")).unwrap().kind, StructureKind::Prism { n: 5 });
        assert_eq!(recognize(&cay(6, "r3,s0,s2")).unwrap().kind, StructureKind::Prism { n: 6 });
        assert_eq!(recognize(&cay(4, "s0,s1,s2,s3")).unwrap().kind, StructureKind::Other);
        assert_eq!(recognize(&cay(2, "s0,s1")).unwrap().kind, StructureKind::Cycle { len: 4 });
        assert_eq!(
            recognize(&cay(2, "r1,s0,s1")).unwrap().kind,
            StructureKind::Mobius { vertices: 4 }
        );
        assert!(matches!(recognize(&cay(6, "s0,s2")), Err(Error::Disconnected)));
    }

    #[test]
    fn verdict_mappings_are_isomorphisms() {
        for (n, set) in [(5, "r1,r4,s1"), (6, "r3,s1,s2"), (7, "s0,s3"), (4, "r2,s0,s1")] {
            let g = cay(n, set);
            let v = recognize(&g).unwrap();
            let template = match v.kind {
                StructureKind::Cycle { len } => canonical_cycle(len).unwrap(),
                StructureKind::Prism { n } => canonical_prism(n).unwrap(),
                StructureKind::Mobius { vertices } => canonical_mobius(vertices).unwrap(),
                _ => panic!("expected a template match for {set}"),
            };
            assert!(is_isomorphism(g.graph(), &template, v.mapping.as_ref().unwrap()));
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = StructureVerdict {
            kind: StructureKind::Prism { n: 5 },
            mapping: None,
        };
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["kind"], "prism");
        assert_eq!(json["n"], 5);
    }
}
