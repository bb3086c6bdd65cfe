//! Simple-cycle enumeration on undirected weighted graphs.

use num_traits::Zero;

use crate::graph::WeightedGraph;
use crate::scalar::Rational;

/// Simple cycles, each listed once (up to rotation and reflection), with their
/// weight-lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleListing {
    pub cycles: Vec<Vec<usize>>,
    pub lengths: Vec<Rational>,
    pub truncated: bool,
}

impl CycleListing {
    pub fn max_length(&self) -> Option<&Rational> {
        self.lengths.iter().max()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Edges `(u, v)` of cycle `i`, closing edge included.
    pub fn cycle_edges(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let c = &self.cycles[i];
        (0..c.len()).map(move |k| (c[k], c[(k + 1) % c.len()]))
    }
}

/// Lists simple cycles of `g`, stopping after `max_count`.
///
/// Each cycle is reported starting at its smallest vertex `s`, with only
/// vertices greater than `s` inside, and with its second vertex smaller than
/// its last one, so every cycle appears exactly once.
pub fn enumerate_simple_cycles(g: &WeightedGraph, max_count: usize) -> CycleListing {
    let n = g.vertex_count();
    let mut listing = CycleListing {
        cycles: Vec::new(),
        lengths: Vec::new(),
        truncated: false,
    };
    let mut on_path = vec![false; n];
    for s in 0..n {
        // path holds (vertex, index of next neighbor to try)
        let mut path: Vec<(usize, usize)> = vec![(s, 0)];
        let mut lengths: Vec<Rational> = vec![Rational::zero()];
        on_path[s] = true;
        while let Some(&mut (v, ref mut next)) = path.last_mut() {
            let nbrs = g.neighbors(v);
            if *next >= nbrs.len() {
                on_path[v] = false;
                path.pop();
                lengths.pop();
                continue;
            }
            let (w, e) = nbrs[*next];
            *next += 1;
            let weight = &g.edges()[e].weight;
            if w == s && path.len() >= 3 {
                let second = path[1].0;
                if second < v {
                    if listing.cycles.len() >= max_count {
                        listing.truncated = true;
                        for &(u, _) in &path {
                            on_path[u] = false;
                        }
                        return listing;
                    }
                    listing.cycles.push(path.iter().map(|p| p.0).collect());
                    listing.lengths.push(lengths.last().unwrap() + weight);
                }
            } else if w > s && !on_path[w] {
                on_path[w] = true;
                let len = lengths.last().unwrap() + weight;
                path.push((w, 0));
                lengths.push(len);
            }
        }
    }
    listing
}
