#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use dihedral_metric::{CayleyGraph, ConnectionSet, Graph};

pub fn cay(n: u32, text: &str) -> CayleyGraph {
    CayleyGraph::build(n, &ConnectionSet::parse(text, n).unwrap()).unwrap()
}

/// Plain BFS from every vertex; independent of `Graph::distances`.
pub fn bfs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    (0..g.order())
        .map(|src| {
            let mut d = vec![None; g.order()];
            d[src] = Some(0);
            let mut q = VecDeque::from([src]);
            while let Some(u) = q.pop_front() {
                for &v in g.neighbors(u) {
                    if d[v].is_none() {
                        d[v] = Some(d[u].unwrap() + 1);
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

/// Next k-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn resolves_naive(dist: &[Vec<Option<usize>>], w: &[usize]) -> bool {
    let mut seen = HashSet::new();
    dist.iter()
        .all(|row| seen.insert(w.iter().map(|&x| row[x]).collect::<Vec<_>>()))
}

/// Unpruned reference search: every subset size from 1 upward, no bounds.
pub fn naive_metric_dimension(g: &Graph) -> (usize, Vec<usize>) {
    let dist = bfs_distances(g);
    let n = g.order();
    for k in 1..=n {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            if resolves_naive(&dist, &c) {
                return (k, c);
            }
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set always resolves")
}
