//! Resolving sets and exact metric dimension.
//!
//! The solver walks subset sizes `k = lb, lb + 1, ...` and, within a size,
//! enumerates `k`-subsets of vertex indices in lexicographic order. The first
//! resolving subset found is therefore the lexicographically smallest basis.
//! Representations are packed into `u128` keys, one fixed-width field per
//! witness, so a candidate resolves iff its keys are pairwise distinct.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

impl AsRef<Graph> for Graph {
    fn as_ref(&self) -> &Graph {
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_vertices: usize,
    pub max_k: usize,
    /// Worker threads; `0` and `1` both mean sequential.
    pub parallelism: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_vertices: 40,
            max_k: 8,
            parallelism: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Resolves,
    /// Two distinct vertices with the same representation, `u < v`.
    Fails { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvingCertificate {
    pub witnesses: Vec<usize>,
    /// `table[v]` is `r(v | W)`.
    pub table: Vec<Vec<u16>>,
    pub verdict: Verdict,
}

impl ResolvingCertificate {
    pub fn resolves(&self) -> bool {
        self.verdict == Verdict::Resolves
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Candidates whose representations were compared.
    pub examined: u64,
    /// Candidates discarded by the twin rule without comparison.
    pub pruned: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionResult {
    pub dimension: usize,
    pub basis: Vec<usize>,
    pub lower_bound: usize,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    /// Sum over twin classes of `size - 1`.
    pub twin: usize,
    pub cubic_bipartite: bool,
    pub path: bool,
    pub value: usize,
}

fn check_vertices(order: usize, ws: &[usize]) -> Result<()> {
    match ws.iter().find(|&&w| w >= order) {
        Some(&vertex) => Err(Error::VertexOutOfRange { vertex, order }),
        None => Ok(()),
    }
}

/// Builds `r(v | W)` for every vertex and reports the lexicographically
/// smallest colliding pair, if any.
pub fn is_resolving<G: AsRef<Graph> + ?Sized>(g: &G, witnesses: &[usize]) -> Result<ResolvingCertificate> {
    let g = g.as_ref();
    if witnesses.is_empty() {
        return Err(Error::EmptyWitnessSet);
    }
    check_vertices(g.order(), witnesses)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dist = g.distances();
    let table: Vec<Vec<u16>> = (0..g.order())
        .map(|v| witnesses.iter().map(|&w| dist.get(v, w)).collect())
        .collect();

    let mut first_seen: HashMap<&[u16], usize> = HashMap::new();
    let mut collision: Option<(usize, usize)> = None;
    for (v, rep) in table.iter().enumerate() {
        match first_seen.get(rep.as_slice()) {
            Some(&u) => {
                if collision.map_or(true, |c| (u, v) < c) {
                    collision = Some((u, v));
                }
            }
            None => {
                first_seen.insert(rep, v);
            }
        }
    }
    let verdict = match collision {
        Some((u, v)) => Verdict::Fails { u, v },
        None => Verdict::Resolves,
    };
    Ok(ResolvingCertificate {
        witnesses: witnesses.to_vec(),
        table,
        verdict,
    })
}

/// Equivalence classes of distance-row twins: `u` and `v` are twins when
/// `d(u, w) = d(v, w)` for every `w` other than `u` and `v`.
pub fn twin_classes<G: AsRef<Graph> + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let g = g.as_ref();
    let order = g.order();
    let dist = g.distances();
    let mut class_of: Vec<Option<usize>> = vec![None; order];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..order {
        if class_of[u].is_some() {
            continue;
        }
        let id = classes.len();
        class_of[u] = Some(id);
        let mut members = vec![u];
        for v in u + 1..order {
            if class_of[v].is_none() && are_twins(dist, u, v) {
                class_of[v] = Some(id);
                members.push(v);
            }
        }
        classes.push(members);
    }
    classes
}

fn are_twins(dist: &DistanceMatrix, u: usize, v: usize) -> bool {
    let (ru, rv) = (dist.row(u), dist.row(v));
    (0..ru.len()).all(|w| w == u || w == v || ru[w] == rv[w])
}

pub fn lower_bound<G: AsRef<Graph> + ?Sized>(g: &G) -> LowerBound {
    let g = g.as_ref();
    let twin: usize = twin_classes(g).iter().map(|c| c.len() - 1).sum();
    let cubic_bipartite = g.regular_degree() == Some(3) && g.is_bipartite();
    let path = g.is_path();
    let mut value = twin.max(1);
    if !path {
        value = value.max(2);
    }
    if cubic_bipartite {
        value = value.max(3);
    }
    LowerBound {
        twin,
        cubic_bipartite,
        path,
        value,
    }
}

struct Search<'a> {
    order: usize,
    dist: &'a DistanceMatrix,
    bits: u32,
    /// Nontrivial twin classes: (members, how many must be chosen).
    twins: Vec<(Vec<usize>, usize)>,
    examined: AtomicU64,
    pruned: AtomicU64,
}

impl Search<'_> {
    fn twin_ok(&self, chosen: &[usize]) -> bool {
        self.twins.iter().all(|(members, need)| {
            members.iter().filter(|m| chosen.binary_search(m).is_ok()).count() >= *need
        })
    }

    fn leaf(&self, chosen: &[usize], keys: &[u128], scratch: &mut Vec<u128>) -> bool {
        if !self.twin_ok(chosen) {
            self.pruned.fetch_add(1, Ordering::Relaxed);
            return false;
        }
        self.examined.fetch_add(1, Ordering::Relaxed);
        if self.bits * chosen.len() as u32 <= 128 {
            scratch.clear();
            scratch.extend_from_slice(keys);
            scratch.sort_unstable();
            scratch.windows(2).all(|w| w[0] != w[1])
        } else {
            let mut reps: Vec<Vec<u16>> = (0..self.order)
                .map(|v| chosen.iter().map(|&w| self.dist.get(v, w)).collect())
                .collect();
            reps.sort_unstable();
            reps.windows(2).all(|w| w[0] != w[1])
        }
    }

    /// Lexicographically first resolving `k`-subset whose smallest element is `first`.
    fn branch(&self, k: usize, first: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(k);
        let mut keys: Vec<Vec<u128>> = vec![vec![0; self.order]; k + 1];
        let mut scratch = Vec::with_capacity(self.order);
        self.push(&mut keys, 0, first);
        chosen.push(first);
        if self.descend(k, &mut chosen, &mut keys, &mut scratch) {
            Some(chosen)
        } else {
            None
        }
    }

    fn push(&self, keys: &mut [Vec<u128>], depth: usize, w: usize) {
        let (lo, hi) = keys.split_at_mut(depth + 1);
        let row = self.dist.row(w);
        let shift = if self.bits >= 128 { 0 } else { self.bits };
        for ((next, prev), &d) in hi[0].iter_mut().zip(&lo[depth]).zip(row) {
            *next = prev.wrapping_shl(shift) | u128::from(d);
        }
    }

    fn descend(
        &self,
        k: usize,
        chosen: &mut Vec<usize>,
        keys: &mut [Vec<u128>],
        scratch: &mut Vec<u128>,
    ) -> bool {
        let depth = chosen.len();
        if depth == k {
            return self.leaf(chosen, &keys[depth], scratch);
        }
        let start = chosen[depth - 1] + 1;
        let remaining = k - depth;
        for w in start..=self.order - remaining {
            self.push(keys, depth, w);
            chosen.push(w);
            if self.descend(k, chosen, keys, scratch) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn level(&self, k: usize, pool: Option<&rayon::ThreadPool>) -> Option<Vec<usize>> {
        let firsts = 0..=self.order - k;
        match pool {
            Some(pool) => pool.install(|| {
                firsts
                    .into_par_iter()
                    .find_map_first(|first| self.branch(k, first))
            }),
            None => firsts.into_iter().find_map(|first| self.branch(k, first)),
        }
    }
}

/// Exact metric dimension with the lexicographically smallest basis.
pub fn metric_dimension_exact<G: AsRef<Graph> + ?Sized>(
    g: &G,
    config: &SearchConfig,
) -> Result<DimensionResult> {
    let g = g.as_ref();
    let order = g.order();
    if order > config.max_vertices {
        return Err(Error::VertexCapExceeded {
            order,
            cap: config.max_vertices,
        });
    }
    if order < 3 {
        return Err(Error::TooFewVertices(order));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lb = lower_bound(g);
    let max_k = config.max_k.min(order - 1);
    if lb.value > max_k {
        return Err(Error::SubsetCapExceeded {
            max_k: config.max_k,
            lower_bound: lb.value,
        });
    }

    let dist = g.distances();
    let diameter = dist.diameter();
    let search = Search {
        order,
        dist,
        bits: 16 - diameter.leading_zeros(),
        twins: twin_classes(g)
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let need = c.len() - 1;
                (c, need)
            })
            .collect(),
        examined: AtomicU64::new(0),
        pruned: AtomicU64::new(0),
    };
    let pool = if config.parallelism > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.parallelism)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?,
        )
    } else {
        None
    };

    for k in lb.value..=max_k {
        if let Some(basis) = search.level(k, pool.as_ref()) {
            return Ok(DimensionResult {
                dimension: k,
                basis,
                lower_bound: lb.value,
                stats: SearchStats {
                    examined: search.examined.load(Ordering::Relaxed),
                    pruned: search.pruned.load(Ordering::Relaxed),
                },
            });
        }
    }
    Err(Error::SubsetCapExceeded {
        max_k: config.max_k,
        lower_bound: lb.value,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisPropertyReport {
    pub u: usize,
    pub v: usize,
    pub distance: u16,
    /// Saturating count of shortest `u`-`v` paths.
    pub shortest_path_count: u64,
    /// Lexicographically first shortest path from `u` to `v`.
    pub path: Vec<usize>,
    pub degree_u: usize,
    pub degree_v: usize,
    pub max_internal_degree: usize,
    pub unique_shortest_path: bool,
    pub endpoint_degrees_ok: bool,
    pub internal_degrees_ok: bool,
}

impl BasisPropertyReport {
    pub fn holds(&self) -> bool {
        self.unique_shortest_path && self.endpoint_degrees_ok && self.internal_degrees_ok
    }
}

/// Evaluates the necessary conditions on a two-element basis `{u, v}`
/// (unique shortest path, endpoint degree at most 3, internal degree at most 5)
/// without first checking that `{u, v}` resolves.
pub fn basis_property_report<G: AsRef<Graph> + ?Sized>(
    g: &G,
    u: usize,
    v: usize,
) -> Result<BasisPropertyReport> {
    let g = g.as_ref();
    check_vertices(g.order(), &[u, v])?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dist = g.distances();
    let from_u = dist.row(u);
    let target = from_u[v];

    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); usize::from(target) + 1];
    for (x, &d) in from_u.iter().enumerate() {
        if d <= target {
            layers[usize::from(d)].push(x);
        }
    }
    let mut count = vec![0u64; g.order()];
    count[u] = 1;
    for layer in layers.iter().skip(1) {
        for &x in layer {
            count[x] = g
                .neighbors(x)
                .iter()
                .filter(|&&y| from_u[y] + 1 == from_u[x])
                .fold(0u64, |acc, &y| acc.saturating_add(count[y]));
        }
    }

    // Walk forward from u choosing the smallest neighbour that stays on a
    // shortest path to v.
    let to_v = dist.row(v);
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&y| to_v[y] + 1 == to_v[cur])
            .expect("connected graph has a next step");
        path.push(cur);
    }
    let max_internal_degree = path
        .iter()
        .skip(1)
        .take(path.len().saturating_sub(2))
        .map(|&x| g.degree(x))
        .max()
        .unwrap_or(0);
    let (degree_u, degree_v) = (g.degree(u), g.degree(v));
    Ok(BasisPropertyReport {
        u,
        v,
        distance: target,
        shortest_path_count: count[v],
        path,
        degree_u,
        degree_v,
        max_internal_degree,
        unique_shortest_path: count[v] == 1,
        endpoint_degrees_ok: degree_u <= 3 && degree_v <= 3,
        internal_degrees_ok: max_internal_degree <= 5,
    })
}

/// As [`basis_property_report`], but refuses pairs that do not resolve `g`.
pub fn dim2_basis_properties<G: AsRef<Graph> + ?Sized>(
    g: &G,
    u: usize,
    v: usize,
) -> Result<BasisPropertyReport> {
    let cert = is_resolving(g, &[u, v])?;
    if let Verdict::Fails { u, v } = cert.verdict {
        return Err(Error::NotResolving(u, v));
    }
    basis_property_report(g, u, v)
}
