//! Simple undirected graphs on `0..order` with cached all-pairs hop distances.

use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest graph for which a dense distance matrix is built.
pub const MAX_ORDER: usize = 4096;

/// Marker for pairs in different components.
pub const UNREACHABLE: u16 = u16::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    dist: Vec<u16>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, u: usize, v: usize) -> u16 {
        self.dist[u * self.order + v]
    }

    pub fn row(&self, u: usize) -> &[u16] {
        &self.dist[u * self.order..(u + 1) * self.order]
    }

    pub fn is_reachable(&self, u: usize, v: usize) -> bool {
        self.get(u, v) != UNREACHABLE
    }

    /// Largest finite distance from `u`.
    pub fn eccentricity(&self, u: usize) -> u16 {
        self.row(u)
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }

    /// Largest finite distance overall.
    pub fn diameter(&self) -> u16 {
        (0..self.order).map(|u| self.eccentricity(u)).max().unwrap_or(0)
    }
}

#[derive(Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    mask: Vec<Vec<u64>>,
    dist: OnceLock<DistanceMatrix>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Self {
            adj: self.adj.clone(),
            mask: self.mask.clone(),
            dist: self.dist.clone(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Loops and repeated edges are rejected.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::VertexCapExceeded {
                order,
                cap: MAX_ORDER,
            });
        }
        let mut adj = vec![Vec::new(); order];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Self::from_adjacency(adj)
    }

    /// Builds a graph from neighbor lists, which must already be symmetric.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Self> {
        let order = adj.len();
        if order > MAX_ORDER {
            return Err(Error::VertexCapExceeded {
                order,
                cap: MAX_ORDER,
            });
        }
        for (u, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "repeated edge at vertex {u}"
                )));
            }
            if let Some(&v) = nbrs.iter().find(|&&v| v >= order) {
                return Err(Error::VertexOutOfRange { vertex: v, order });
            }
            if nbrs.binary_search(&u).is_ok() {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
        }
        for (u, nbrs) in adj.iter().enumerate() {
            for &v in nbrs {
                if adj[v].binary_search(&u).is_err() {
                    return Err(Error::InvalidParameter(format!(
                        "edge {u}->{v} has no reverse"
                    )));
                }
            }
        }
        let words = order.div_ceil(64);
        let mask = adj
            .iter()
            .map(|nbrs| {
                let mut m = vec![0u64; words];
                for &v in nbrs {
                    m[v / 64] |= 1 << (v % 64);
                }
                m
            })
            .collect();
        Ok(Self {
            adj,
            mask,
            dist: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.mask[u][v / 64] >> (v % 64) & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    /// All-pairs hop distances, computed on first use by one BFS per vertex.
    pub fn distances(&self) -> &DistanceMatrix {
        self.dist.get_or_init(|| {
            let order = self.order();
            let mut dist = vec![UNREACHABLE; order * order];
            let mut queue = VecDeque::with_capacity(order);
            for src in 0..order {
                let row = &mut dist[src * order..(src + 1) * order];
                row[src] = 0;
                queue.clear();
                queue.push_back(src);
                while let Some(u) = queue.pop_front() {
                    let du = row[u];
                    for &v in &self.adj[u] {
                        if row[v] == UNREACHABLE {
                            row[v] = du + 1;
                            queue.push_back(v);
                        }
                    }
                }
            }
            DistanceMatrix { order, dist }
        })
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.distances().row(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Two-colouring by BFS parity.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.order()];
        let mut queue = VecDeque::new();
        for src in 0..self.order() {
            if colour[src] != u8::MAX {
                continue;
            }
            colour[src] = 0;
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if colour[v] == u8::MAX {
                        colour[v] = colour[u] ^ 1;
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Common degree if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map(Vec::len)?;
        self.adj.iter().all(|n| n.len() == d).then_some(d)
    }

    /// Connected, `order - 1` edges and maximum degree two.
    pub fn is_path(&self) -> bool {
        self.order() >= 1
            && self.edge_count() + 1 == self.order()
            && self.adj.iter().all(|n| n.len() <= 2)
            && self.is_connected()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(m: usize) -> Graph {
        Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m))).unwrap()
    }

    #[test]
    fn cycle_distances() {
        let g = cycle(6);
        let d = g.distances();
        assert_eq!(d.row(0), &[0, 1, 2, 3, 2, 1]);
        assert_eq!(d.diameter(), 3);
        assert!(g.is_connected());
        assert!(g.is_bipartite());
        assert!(!cycle(5).is_bipartite());
        assert_eq!(g.regular_degree(), Some(2));
        assert!(!g.is_path());
    }

    #[test]
    fn disconnected_pairs_are_marked() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.distances().get(0, 2), UNREACHABLE);
        assert_eq!(g.distances().eccentricity(0), 1);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1], vec![]]).is_err());
    }

    #[test]
    fn path_detection() {
        let p = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p.is_path());
        assert_eq!(p.regular_degree(), None);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!star.is_path());
    }

    #[test]
    fn mask_agrees_with_lists() {
        let g = Graph::from_edges(70, (0..70).map(|i| (i, (i + 3) % 70))).unwrap();
        for u in 0..70 {
            for v in 0..70 {
                assert_eq!(g.has_edge(u, v), g.neighbors(u).contains(&v));
            }
        }
    }
}
