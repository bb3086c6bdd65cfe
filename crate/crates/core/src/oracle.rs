//! Brute-force oracles and seeded instance generators, independent of the
//! branch-and-prune code paths.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;
use rand::Rng;

use crate::cnf::{Clause, CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::{int, Rational};

/// Vertex limit for [`sign_vector_classes`].
pub const SIGN_ORACLE_VERTEX_LIMIT: usize = 16;

/// Realizations on the line found by trying every sign on a breadth-first
/// spanning forest. Anchored components keep raw positions; free components
/// are normalized modulo translation and reflection. The result is the
/// product over components, so its size matches a full enumeration.
pub fn sign_vector_classes(g: &WeightedGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n > SIGN_ORACLE_VERTEX_LIMIT {
        return Err(Error::GuardExceeded {
            what: "vertex count",
            value: n,
            limit: SIGN_ORACLE_VERTEX_LIMIT,
        });
    }
    if g.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: g.dimension(),
        });
    }
    let mut total = 1usize;
    for comp in g.components() {
        total *= component_classes(g, &comp).len();
        if total == 0 {
            break;
        }
    }
    Ok(total)
}

fn component_classes(g: &WeightedGraph, comp: &[usize]) -> BTreeSet<Vec<Rational>> {
    let root = comp.iter().copied().find(|&v| g.anchor(v).is_some()).unwrap_or(comp[0]);
    let anchored = g.anchor(root).is_some();
    // breadth-first tree: (child, parent, weight)
    let mut seen = vec![false; g.vertex_count()];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &(w, e) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                tree.push((w, v, g.edges()[e].weight.clone()));
                queue.push_back(w);
            }
        }
    }
    let start = g.anchor(root).map_or_else(Rational::zero, |a| a[0].clone());
    let mut classes = BTreeSet::new();
    let mut x = vec![Rational::zero(); g.vertex_count()];
    for signs in 0u64..(1u64 << tree.len()) {
        x[root] = start.clone();
        for (k, (w, p, d)) in tree.iter().enumerate() {
            x[*w] = if signs >> k & 1 == 0 { &x[*p] + d } else { &x[*p] - d };
        }
        let ok_edges = g.edges().iter().all(|e| {
            !comp.contains(&e.u) || (&x[e.u] - &x[e.v]) * (&x[e.u] - &x[e.v]) == &e.weight * &e.weight
        });
        let ok_anchors = comp.iter().all(|&v| g.anchor(v).is_none_or(|a| a[0] == x[v]));
        if !(ok_edges && ok_anchors) {
            continue;
        }
        let raw: Vec<Rational> = comp.iter().map(|&v| x[v].clone()).collect();
        if anchored {
            classes.insert(raw);
        } else {
            let shifted: Vec<Rational> = raw.iter().map(|p| p - &raw[0]).collect();
            let mirrored: Vec<Rational> = shifted.iter().map(|p| -p).collect();
            classes.insert(shifted.min(mirrored));
        }
    }
    classes
}

/// A subset of 1-based indices summing to half the total, via subset-sum
/// dynamic programming.
pub fn partition_subset(values: &[u64]) -> Option<BTreeSet<usize>> {
    let total: u64 = values.iter().sum();
    if total % 2 == 1 {
        return None;
    }
    let half = (total / 2) as usize;
    // reach[i][s]: some subset of the first i values sums to s
    let mut reach = vec![vec![false; half + 1]; values.len() + 1];
    reach[0][0] = true;
    for (i, &v) in values.iter().enumerate() {
        let v = v as usize;
        for s in 0..=half {
            reach[i + 1][s] = reach[i][s] || (s >= v && reach[i][s - v]);
        }
    }
    if !reach[values.len()][half] {
        return None;
    }
    let mut set = BTreeSet::new();
    let mut s = half;
    for i in (0..values.len()).rev() {
        if !reach[i][s] {
            set.insert(i + 1);
            s -= values[i] as usize;
        }
    }
    Some(set)
}

/// Random CNF with `1..=max_vars` variables, `1..=max_clauses` clauses of
/// width `1..=max_width`.
pub fn random_cnf<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize, max_width: usize) -> CnfFormula {
    let n = rng.random_range(1..=max_vars);
    let m = rng.random_range(1..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let w = rng.random_range(1..=max_width);
            Clause(
                (0..w)
                    .map(|_| Literal {
                        var: rng.random_range(1..=n),
                        negated: rng.random_bool(0.5),
                    })
                    .collect(),
            )
        })
        .collect();
    CnfFormula::new(n, clauses).expect("indices in range")
}

/// Random line instance with `2..=max_vertices` vertices and integer weights
/// `≤ max_weight`. Half of the instances are planted from random integer
/// positions (so they are realizable), the rest use arbitrary weights; some
/// carry an anchor.
pub fn random_line_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_weight: i64) -> WeightedGraph {
    let n = rng.random_range(2..=max_vertices);
    let planted = rng.random_bool(0.5);
    let positions: Vec<i64> = (0..n).map(|_| rng.random_range(0..=max_weight)).collect();
    let density = rng.random_range(0.2..0.8);
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if !rng.random_bool(density) {
                continue;
            }
            let w = if planted {
                (positions[u] - positions[v]).abs()
            } else {
                rng.random_range(1..=max_weight)
            };
            if w > 0 {
                g.add_edge(u, v, int(w)).expect("fresh edge");
            }
        }
    }
    if rng.random_bool(0.25) {
        let v = rng.random_range(0..n);
        let p = if planted { positions[v] } else { rng.random_range(-max_weight..=max_weight) };
        g.set_anchor(v, vec![int(p)]).expect("valid vertex");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;

    #[test]
    fn sign_oracle_examples() {
        let path = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(sign_vector_classes(&path).unwrap(), 2);
        let tri = graph_from_edges(3, &[(1, 2, 1), (2, 3, 2), (1, 3, 3)]).unwrap();
        assert_eq!(sign_vector_classes(&tri).unwrap(), 1);
        let bad = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 1)]).unwrap();
        assert_eq!(sign_vector_classes(&bad).unwrap(), 0);
        let mut anchored = graph_from_edges(2, &[(1, 2, 3)]).unwrap();
        anchored.set_anchor(0, vec![int(0)]).unwrap();
        assert_eq!(sign_vector_classes(&anchored).unwrap(), 2);
        let two = graph_from_edges(4, &[(1, 2, 1), (3, 4, 1)]).unwrap();
        assert_eq!(sign_vector_classes(&two).unwrap(), 1);
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_subset(&[8, 9]), None);
        assert_eq!(partition_subset(&[1, 2, 3]), Some(BTreeSet::from([1, 2])));
        let s = partition_subset(&[3, 1, 1, 2, 2, 1]).unwrap();
        let sum: u64 = s.iter().map(|&i| [3, 1, 1, 2, 2, 1][i - 1]).sum();
        assert_eq!(sum, 5);
    }

    #[test]
    fn generators_are_deterministic() {
        use rand::SeedableRng;
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            assert_eq!(random_cnf(&mut a, 4, 5, 3), random_cnf(&mut b, 4, 5, 3));
            assert_eq!(random_line_graph(&mut a, 8, 6).to_text(), random_line_graph(&mut b, 8, 6).to_text());
        }
    }
}
