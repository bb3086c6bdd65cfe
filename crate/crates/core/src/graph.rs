//! Exact-rational weighted graph model and its line-oriented text format.
//!
//! Vertices are dense 0-based indices internally; the text format is 1-based.
//! Human-readable labels live in a side map and never affect algorithms.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    anchors: BTreeMap<usize, Vec<Rational>>,
    names: BTreeMap<usize, String>,
    dimension: usize,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl WeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        WeightedGraph {
            vertex_count,
            edges: Vec::new(),
            index: HashMap::new(),
            adjacency: vec![Vec::new(); vertex_count],
            anchors: BTreeMap::new(),
            names: BTreeMap::new(),
            dimension: 1,
        }
    }

    pub fn with_dimension(mut self, dimension: usize) -> Self {
        self.dimension = dimension.max(1);
        self
    }

    pub fn set_dimension(&mut self, dimension: usize) {
        self.dimension = dimension.max(1);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_vertex(&mut self, name: Option<&str>) -> usize {
        let id = self.vertex_count;
        self.vertex_count += 1;
        self.adjacency.push(Vec::new());
        if let Some(name) = name {
            self.names.insert(id, name.to_string());
        }
        id
    }

    /// Adds `{u, v}`. Re-adding an existing edge with the same weight is a no-op;
    /// a different weight is an error.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: Rational) -> Result<usize> {
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "edge {{{}, {}}} references a vertex outside 1..{}",
                u + 1,
                v + 1,
                self.vertex_count
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {}", u + 1)));
        }
        if !weight.is_positive() {
            return Err(Error::InvalidGraph(format!(
                "edge {{{}, {}}} has non-positive weight {}",
                u + 1,
                v + 1,
                format_rational(&weight)
            )));
        }
        if let Some(&i) = self.index.get(&key(u, v)) {
            if self.edges[i].weight == weight {
                return Ok(i);
            }
            return Err(Error::ConflictingEdge { u: u + 1, v: v + 1 });
        }
        let i = self.edges.len();
        self.edges.push(Edge { u, v, weight });
        self.index.insert(key(u, v), i);
        insert_sorted(&mut self.adjacency[u], (v, i));
        insert_sorted(&mut self.adjacency[v], (u, i));
        Ok(i)
    }

    pub fn set_anchor(&mut self, v: usize, position: Vec<Rational>) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::InvalidGraph(format!("anchor on unknown vertex {}", v + 1)));
        }
        if position.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: position.len(),
            });
        }
        self.anchors.insert(v, position);
        Ok(())
    }

    pub fn clear_anchors(&mut self) {
        self.anchors.clear();
    }

    pub fn set_name(&mut self, v: usize, name: &str) {
        self.names.insert(v, name.to_string());
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names.get(&v).map(String::as_str)
    }

    /// Label if present, otherwise the 1-based id.
    pub fn label(&self, v: usize) -> String {
        self.name(v).map(str::to_string).unwrap_or_else(|| (v + 1).to_string())
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().find(|(_, n)| n.as_str() == name).map(|(&v, _)| v)
    }

    pub fn anchors(&self) -> &BTreeMap<usize, Vec<Rational>> {
        &self.anchors
    }

    pub fn anchor(&self, v: usize) -> Option<&[Rational]> {
        self.anchors.get(&v).map(Vec::as_slice)
    }

    /// Neighbors of `v` as `(neighbor, edge index)`, sorted by neighbor id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.index.get(&key(u, v)).map(|&i| &self.edges[i].weight)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count;
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &(w, _) in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices` (renumbered in the given order).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> WeightedGraph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = WeightedGraph::new(vertices.len()).with_dimension(self.dimension);
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (pos.get(&e.u), pos.get(&e.v)) {
                g.add_edge(a, b, e.weight.clone()).expect("subgraph of a valid graph");
            }
        }
        for (&v, i) in &pos {
            if let Some(name) = self.name(v) {
                g.set_name(*i, name);
            }
            if let Some(a) = self.anchors.get(&v) {
                g.anchors.insert(*i, a.clone());
            }
        }
        g
    }

    /// Copy with every weight (and anchor) multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> WeightedGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = &e.weight * factor;
        }
        for a in g.anchors.values_mut() {
            for c in a.iter_mut() {
                *c = &*c * factor;
            }
        }
        g
    }

    /// Integer-weighted copy with gcd 1 over all weights, plus `scale` such that
    /// `old weight = new weight * scale`. Anchors are divided by the same scale.
    pub fn scale_to_integer(&self) -> (WeightedGraph, Rational) {
        if self.edges.is_empty() {
            return (self.clone(), Rational::one());
        }
        let lcm = self
            .edges
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.weight.denom()));
        let gcd = self.edges.iter().fold(BigInt::zero(), |acc, e| {
            let scaled = (&e.weight * Rational::from_integer(lcm.clone())).to_integer();
            acc.gcd(&scaled)
        });
        let scale = Rational::new(gcd, lcm);
        let g = self.scaled(&scale.recip());
        (g, scale)
    }

    pub fn has_integer_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_integer())
    }

    /// Parses the graph text format (see [`WeightedGraph::to_text`]).
    pub fn parse(text: &str) -> Result<WeightedGraph> {
        let mut graph: Option<WeightedGraph> = None;
        let mut anchors: Vec<(usize, usize, Vec<Rational>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or("");
            let rest: Vec<&str> = parts.collect();
            if graph.is_none() {
                if tag != "n" || rest.len() != 1 {
                    return Err(err("expected `n <vertex_count>` header".into()));
                }
                let n: usize = rest[0].parse().map_err(|_| err("bad vertex count".into()))?;
                graph = Some(WeightedGraph::new(n));
                continue;
            }
            let g = graph.as_mut().expect("header parsed");
            let n = g.vertex_count;
            let vertex = |s: &str| -> Result<usize> {
                let v: usize = s.parse().map_err(|_| err(format!("bad vertex id `{s}`")))?;
                if v == 0 || v > n {
                    return Err(err(format!("vertex id {v} outside 1..{n}")));
                }
                Ok(v - 1)
            };
            match tag {
                "n" => return Err(err("duplicate `n` header".into())),
                "dim" => {
                    let k: usize = rest
                        .first()
                        .and_then(|s| s.parse().ok())
                        .filter(|&k| k > 0)
                        .ok_or_else(|| err("bad dimension".into()))?;
                    g.dimension = k;
                }
                "e" => {
                    if rest.len() != 3 {
                        return Err(err("expected `e <u> <v> <weight>`".into()));
                    }
                    let u = vertex(rest[0])?;
                    let v = vertex(rest[1])?;
                    let w = parse_rational(rest[2]).ok_or_else(|| err(format!("bad weight `{}`", rest[2])))?;
                    g.add_edge(u, v, w).map_err(|e| err(e.to_string()))?;
                }
                "a" => {
                    if rest.len() < 2 {
                        return Err(err("expected `a <v> <coord>...`".into()));
                    }
                    let v = vertex(rest[0])?;
                    let coords = rest[1..]
                        .iter()
                        .map(|s| parse_rational(s).ok_or_else(|| err(format!("bad coordinate `{s}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    anchors.push((line_no, v, coords));
                }
                "name" => {
                    if rest.len() != 2 {
                        return Err(err("expected `name <v> <label>`".into()));
                    }
                    let v = vertex(rest[0])?;
                    g.set_name(v, rest[1]);
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        let mut g = graph.ok_or(Error::Parse {
            line: 0,
            message: "missing `n` header".into(),
        })?;
        if let Some((_, _, coords)) = anchors.first() {
            if g.dimension == 1 && coords.len() > 1 {
                g.dimension = coords.len();
            }
        }
        for (line, v, coords) in anchors {
            g.set_anchor(v, coords).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// Serializes to the line format: `n`, optional `dim`, `e`, `a`, `name` records.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.vertex_count).unwrap();
        if self.dimension != 1 {
            writeln!(out, "dim {}", self.dimension).unwrap();
        }
        for e in &self.edges {
            writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, format_rational(&e.weight)).unwrap();
        }
        for (v, coords) in &self.anchors {
            let cs: Vec<String> = coords.iter().map(format_rational).collect();
            writeln!(out, "a {} {}", v + 1, cs.join(" ")).unwrap();
        }
        for (v, name) in &self.names {
            writeln!(out, "name {} {}", v + 1, name).unwrap();
        }
        out
    }
}

fn insert_sorted(list: &mut Vec<(usize, usize)>, item: (usize, usize)) {
    let pos = list.partition_point(|x| x.0 < item.0);
    list.insert(pos, item);
}

/// Convenience constructor from 1-based `(u, v, weight)` integer triples.
pub fn graph_from_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<WeightedGraph> {
    let mut g = WeightedGraph::new(n);
    for &(u, v, w) in edges {
        if u == 0 || v == 0 {
            return Err(Error::InvalidGraph("vertex ids are 1-based".into()));
        }
        g.add_edge(u - 1, v - 1, crate::scalar::int(w))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn rejects_self_loops_and_conflicts() {
        let mut g = WeightedGraph::new(3);
        assert!(g.add_edge(0, 0, int(1)).is_err());
        assert!(g.add_edge(0, 1, int(0)).is_err());
        g.add_edge(0, 1, int(2)).unwrap();
        assert_eq!(g.add_edge(1, 0, int(2)).unwrap(), 0);
        assert_eq!(g.add_edge(1, 0, int(3)), Err(Error::ConflictingEdge { u: 2, v: 1 }));
        assert!(g.set_anchor(5, vec![int(0)]).is_err());
    }

    #[test]
    fn scale_to_integer_examples() {
        let mut g = WeightedGraph::new(3);
        g.add_edge(0, 1, ratio(1, 2)).unwrap();
        g.add_edge(1, 2, ratio(3, 4)).unwrap();
        let (s, scale) = g.scale_to_integer();
        assert_eq!(scale, ratio(1, 4));
        assert_eq!(s.weight(0, 1), Some(&int(2)));
        assert_eq!(s.weight(1, 2), Some(&int(3)));

        let g = graph_from_edges(3, &[(1, 2, 1), (2, 3, 2)]).unwrap();
        let (s, scale) = g.scale_to_integer();
        assert_eq!(scale, int(1));
        assert_eq!(s, g);

        let mut g = graph_from_edges(3, &[(1, 2, 2), (2, 3, 4)]).unwrap();
        g.set_anchor(0, vec![int(6)]).unwrap();
        let (s, scale) = g.scale_to_integer();
        assert_eq!(scale, int(2));
        assert_eq!(s.weight(0, 1), Some(&int(1)));
        assert_eq!(s.weight(1, 2), Some(&int(2)));
        assert_eq!(s.anchor(0), Some(&[int(3)][..]));
    }

    #[test]
    fn text_format_roundtrip() {
        let text = "# demo\nn 3\ne 1 2 3/6\ne 2 3 2\na 1 0\nname 1 A\n";
        let g = WeightedGraph::parse(text).unwrap();
        assert_eq!(g.weight(0, 1), Some(&ratio(1, 2)));
        assert_eq!(g.name(0), Some("A"));
        assert_eq!(g.anchor(0), Some(&[int(0)][..]));
        let again = WeightedGraph::parse(&g.to_text()).unwrap();
        assert_eq!(again, g);
        assert!(g.to_text().contains("e 1 2 1/2"));
    }

    #[test]
    fn parse_errors() {
        assert!(WeightedGraph::parse("e 1 2 3\n").is_err());
        assert!(WeightedGraph::parse("n 2\ne 1 3 1\n").is_err());
        assert!(WeightedGraph::parse("n 2\ne 1 2 -1\n").is_err());
        assert!(WeightedGraph::parse("n 2\nq 1\n").is_err());
        assert!(WeightedGraph::parse("").is_err());
    }

    #[test]
    fn components_and_completeness() {
        let g = graph_from_edges(5, &[(1, 2, 1), (2, 3, 1), (1, 3, 1), (4, 5, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(!g.is_complete());
        assert!(g.induced_subgraph(&[0, 1, 2]).is_complete());
    }
}
