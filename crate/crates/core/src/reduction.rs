//! PARTITION and 3SAT reductions to distance geometry on the line, with
//! certificate translation in both directions.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::cnf::{Assignment, CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::realization::Realization;
use crate::scalar::{int, Rational};

/// Bidirectional certificate translation between a source problem and its
/// distance-geometry image.
pub trait ReductionWitness {
    type Source;
    type Target;

    fn forward(&self, source: &Self::Source) -> Result<Self::Target>;
    fn backward(&self, target: &Self::Target) -> Result<Self::Source>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("partition instance needs at least one value".into()));
        }
        if values.contains(&0) {
            return Err(Error::Precondition("partition values must be positive".into()));
        }
        Ok(PartitionInstance { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Maps an index set `I` (1-based, edges oriented rightward) to a path
/// placement and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    values: Vec<u64>,
}

impl ReductionWitness for PartitionWitness {
    type Source = BTreeSet<usize>;
    type Target = Realization<Rational>;

    fn forward(&self, index_set: &BTreeSet<usize>) -> Result<Realization<Rational>> {
        if let Some(&i) = index_set.iter().find(|&&i| i == 0 || i > self.values.len()) {
            return Err(Error::VariableOutOfRange {
                index: i,
                count: self.values.len(),
            });
        }
        let mut x = vec![Rational::zero()];
        for (v, &a) in self.values.iter().enumerate() {
            let step = int(a as i64);
            let last = x[v].clone();
            x.push(if index_set.contains(&(v + 1)) { last + step } else { last - step });
        }
        Ok(Realization::line(x))
    }

    fn backward(&self, x: &Realization<Rational>) -> Result<BTreeSet<usize>> {
        if x.len() != self.values.len() + 1 {
            return Err(Error::VertexSetMismatch {
                left: self.values.len() + 1,
                right: x.len(),
            });
        }
        Ok((0..self.values.len())
            .filter(|&v| x.coord(v + 1) > x.coord(v))
            .map(|v| v + 1)
            .collect())
    }
}

/// Path `1 - 2 - ... - n+1` with edge `{v, v+1}` of weight `a_v` and both ends
/// anchored at 0, so a realization closes the path into a cycle.
pub fn reduce_partition(p: &PartitionInstance) -> Result<(WeightedGraph, PartitionWitness)> {
    let n = p.len();
    if n < 2 {
        return Err(Error::Precondition("partition reduction needs n >= 2".into()));
    }
    let mut g = WeightedGraph::new(n + 1);
    for (v, &a) in p.values().iter().enumerate() {
        g.add_edge(v, v + 1, int(a as i64))?;
    }
    g.set_anchor(0, vec![Rational::zero()])?;
    g.set_anchor(n, vec![Rational::zero()])?;
    Ok((
        g,
        PartitionWitness {
            values: p.values().to_vec(),
        },
    ))
}

/// Endpoint of a clause-gadget edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetEnd {
    A,
    B,
    /// Literal vertex `L_h`, `h` in `1..=3`.
    L(usize),
    /// Clause vertex `c_h`, `h` in `1..=8`.
    C(usize),
}

use GadgetEnd::{A, B, C, L};

/// The 13 clause-local edges of the clause gadget.
pub const CLAUSE_EDGES: [(GadgetEnd, GadgetEnd, i64); 13] = [
    (A, C(2), 4),
    (A, C(7), 2),
    (L(1), C(2), 3),
    (L(2), C(7), 1),
    (C(2), C(4), 2),
    (C(7), C(3), 4),
    (B, C(1), 4),
    (C(1), C(5), 2),
    (C(5), C(6), 1),
    (C(3), C(6), 1),
    (C(4), C(6), 1),
    (L(3), C(8), 4),
    (C(6), C(8), 2),
];

/// Placement of `c_1..c_8` for each satisfying literal triple (`+1` = TRUE),
/// with `A = 0` and `B = 2`. Each row is the unique placement for its triple.
pub const CLAUSE_TABLE: [([i64; 3], [i64; 8]); 7] = [
    ([1, 1, 1], [6, 4, 6, 6, 8, 7, 2, 5]),
    ([1, 1, -1], [6, 4, 6, 6, 4, 5, 2, 3]),
    ([1, -1, 1], [6, 4, 2, 2, 4, 3, -2, 5]),
    ([-1, 1, 1], [-2, -4, -2, -2, 0, -1, 2, -3]),
    ([1, -1, -1], [-2, 4, 2, 2, 0, 1, -2, 3]),
    ([-1, 1, -1], [-2, -4, -2, -2, -4, -3, 2, -5]),
    ([-1, -1, 1], [-2, -4, -6, -6, -4, -5, -2, -3]),
];

pub fn clause_table_row(literals: [i64; 3]) -> Option<[i64; 8]> {
    CLAUSE_TABLE.iter().find(|(l, _)| *l == literals).map(|(_, c)| *c)
}

/// Vertex bookkeeping of a compiled 3SAT instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatLayout {
    pub num_vars: usize,
    pub anchor_a: usize,
    pub anchor_b: usize,
    /// `literal_vertices[j-1] = [s_j, ~s_j]`.
    pub literal_vertices: Vec<[usize; 2]>,
    /// `clause_vertices[i][h-1] = c_{i+1,h}`.
    pub clause_vertices: Vec<[usize; 8]>,
    /// Positional literals `L_{i1}, L_{i2}, L_{i3}` after padding.
    pub clause_literals: Vec<[Literal; 3]>,
    pub vertex_count: usize,
}

impl SatLayout {
    pub fn literal_vertex(&self, lit: Literal) -> usize {
        self.literal_vertices[lit.var - 1][usize::from(lit.negated)]
    }

    pub fn clause_vertex(&self, clause: usize, position: usize) -> usize {
        self.clause_vertices[clause][position - 1]
    }

    fn end(&self, clause: usize, end: GadgetEnd) -> usize {
        match end {
            A => self.anchor_a,
            B => self.anchor_b,
            L(h) => self.literal_vertex(self.clause_literals[clause][h - 1]),
            C(h) => self.clause_vertex(clause, h),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompiledSatGraph {
    pub graph: WeightedGraph,
    pub layout: SatLayout,
}

impl CompiledSatGraph {
    pub fn literal_vertex(&self, lit: Literal) -> usize {
        self.layout.literal_vertex(lit)
    }

    pub fn clause_vertex(&self, clause: usize, position: usize) -> usize {
        self.layout.clause_vertex(clause, position)
    }

    pub fn anchor_a(&self) -> usize {
        self.layout.anchor_a
    }

    pub fn anchor_b(&self) -> usize {
        self.layout.anchor_b
    }
}

/// Satisfying assignment to anchored realization and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatWitness {
    layout: SatLayout,
}

impl SatWitness {
    pub fn layout(&self) -> &SatLayout {
        &self.layout
    }
}

impl ReductionWitness for SatWitness {
    type Source = Assignment;
    type Target = Realization<Rational>;

    fn forward(&self, a: &Assignment) -> Result<Realization<Rational>> {
        let lay = &self.layout;
        if a.len() < lay.num_vars {
            return Err(Error::PartialAssignment {
                needed: lay.num_vars,
                found: a.len(),
            });
        }
        let mut x = vec![Rational::zero(); lay.vertex_count];
        x[lay.anchor_a] = int(0);
        x[lay.anchor_b] = int(2);
        for j in 1..=lay.num_vars {
            let s = if a.get(j) { 1 } else { -1 };
            x[lay.literal_vertices[j - 1][0]] = int(s);
            x[lay.literal_vertices[j - 1][1]] = int(-s);
        }
        for (i, lits) in lay.clause_literals.iter().enumerate() {
            let triple = lits.map(|l| if l.eval(a) { 1 } else { -1 });
            let row = clause_table_row(triple)
                .ok_or_else(|| Error::NotACertificate(format!("clause {} is not satisfied", i + 1)))?;
            for (h, &c) in row.iter().enumerate() {
                x[lay.clause_vertices[i][h]] = int(c);
            }
        }
        Ok(Realization::line(x))
    }

    fn backward(&self, x: &Realization<Rational>) -> Result<Assignment> {
        let lay = &self.layout;
        if x.len() != lay.vertex_count {
            return Err(Error::VertexSetMismatch {
                left: lay.vertex_count,
                right: x.len(),
            });
        }
        let (one, minus_one) = (int(1), int(-1));
        let mut values = Vec::with_capacity(lay.num_vars);
        for (j, pair) in lay.literal_vertices.iter().enumerate() {
            let p = x.coord(pair[0]);
            if *p == one {
                values.push(true);
            } else if *p == minus_one {
                values.push(false);
            } else {
                return Err(Error::NotACertificate(format!("s{} is not placed at +1 or -1", j + 1)));
            }
        }
        Ok(Assignment::new(values))
    }
}

/// Positional literals of a clause: as written when it has at most three
/// entries, otherwise its distinct literals; short clauses repeat the last one.
fn positional_literals(clause: usize, lits: &[Literal]) -> Result<[Literal; 3]> {
    let mut picked: Vec<Literal> = if lits.len() <= 3 {
        lits.to_vec()
    } else {
        let mut seen = BTreeSet::new();
        lits.iter().copied().filter(|l| seen.insert(*l)).collect()
    };
    if picked.is_empty() {
        return Err(Error::EmptyClause(clause + 1));
    }
    if picked.len() > 3 {
        return Err(Error::ClauseTooWide {
            clause: clause + 1,
            width: picked.len(),
            limit: 3,
        });
    }
    while picked.len() < 3 {
        picked.push(*picked.last().unwrap());
    }
    Ok([picked[0], picked[1], picked[2]])
}

/// Compiles a CNF of width at most 3 into the anchored literal/clause gadget
/// graph (`A = 0`, `B = 2`).
pub fn compile_3sat(f: &CnfFormula) -> Result<(CompiledSatGraph, SatWitness)> {
    let n = f.num_vars();
    let clause_literals = f
        .clauses()
        .iter()
        .enumerate()
        .map(|(i, c)| positional_literals(i, c.literals()))
        .collect::<Result<Vec<_>>>()?;
    let m = clause_literals.len();
    let mut g = WeightedGraph::new(0);
    let anchor_a = g.add_vertex(Some("A"));
    let anchor_b = g.add_vertex(Some("B"));
    let mut literal_vertices = Vec::with_capacity(n);
    for j in 1..=n {
        let s = g.add_vertex(Some(&format!("s{j}")));
        let sbar = g.add_vertex(Some(&format!("~s{j}")));
        literal_vertices.push([s, sbar]);
    }
    let mut clause_vertices = Vec::with_capacity(m);
    for i in 1..=m {
        let mut ids = [0usize; 8];
        for (h, id) in ids.iter_mut().enumerate() {
            *id = g.add_vertex(Some(&format!("c_{i}_{}", h + 1)));
        }
        clause_vertices.push(ids);
    }
    g.add_edge(anchor_a, anchor_b, int(2))?;
    for &[s, sbar] in &literal_vertices {
        g.add_edge(anchor_a, s, int(1))?;
        g.add_edge(anchor_a, sbar, int(1))?;
        g.add_edge(s, sbar, int(2))?;
    }
    let layout = SatLayout {
        num_vars: n,
        anchor_a,
        anchor_b,
        literal_vertices,
        clause_vertices,
        clause_literals,
        vertex_count: g.vertex_count(),
    };
    for i in 0..m {
        for &(u, v, w) in &CLAUSE_EDGES {
            g.add_edge(layout.end(i, u), layout.end(i, v), int(w))?;
        }
    }
    g.set_anchor(anchor_a, vec![int(0)])?;
    g.set_anchor(anchor_b, vec![int(2)])?;
    let witness = SatWitness { layout: layout.clone() };
    Ok((CompiledSatGraph { graph: g, layout }, witness))
}

/// Positions reachable by `c_6` along the four gadget paths, given the
/// literal positions, and their intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachableSets {
    pub sets: [BTreeSet<i64>; 4],
    pub intersection: BTreeSet<i64>,
}

fn edge_weight(a: GadgetEnd, b: GadgetEnd) -> i64 {
    CLAUSE_EDGES
        .iter()
        .find(|(u, v, _)| (*u == a && *v == b) || (*u == b && *v == a))
        .map(|e| e.2)
        .expect("edge of the clause gadget")
}

fn spread(start: &BTreeSet<i64>, path: &[GadgetEnd]) -> BTreeSet<i64> {
    let mut cur = start.clone();
    for w in path.windows(2) {
        let d = edge_weight(w[0], w[1]);
        cur = cur.iter().flat_map(|&p| [p - d, p + d]).collect();
    }
    cur
}

fn pinned(a: (GadgetEnd, i64), b: (GadgetEnd, i64), target: GadgetEnd) -> BTreeSet<i64> {
    let from_a = spread(&BTreeSet::from([a.1]), &[a.0, target]);
    let from_b = spread(&BTreeSet::from([b.1]), &[b.0, target]);
    from_a.intersection(&from_b).copied().collect()
}

/// Interval sign-expansion along the paths
/// `{A, L2} -> c7 -> c3 -> c6`, `B -> c1 -> c5 -> c6`,
/// `{A, L1} -> c2 -> c4 -> c6` and `L3 -> c8 -> c6`.
pub fn clause_gadget_reachable_sets(literals: [i64; 3]) -> ReachableSets {
    let (xa, xb) = (0, 2);
    let c7 = pinned((A, xa), (L(2), literals[1]), C(7));
    let c2 = pinned((A, xa), (L(1), literals[0]), C(2));
    let sets = [
        spread(&c7, &[C(7), C(3), C(6)]),
        spread(&BTreeSet::from([xb]), &[B, C(1), C(5), C(6)]),
        spread(&c2, &[C(2), C(4), C(6)]),
        spread(&BTreeSet::from([literals[2]]), &[L(3), C(8), C(6)]),
    ];
    let intersection = sets[1..]
        .iter()
        .fold(sets[0].clone(), |acc, s| acc.intersection(s).copied().collect());
    ReachableSets { sets, intersection }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp::{bp_enumerate, bp_solve};
    use crate::cnf::enumerate_models;
    use crate::realization::verify_realization;

    fn set(v: &[i64]) -> BTreeSet<i64> {
        v.iter().copied().collect()
    }

    #[test]
    fn partition_examples() {
        let p = PartitionInstance::new(vec![1, 2, 3]).unwrap();
        let (g, w) = reduce_partition(&p).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let i: BTreeSet<usize> = [1, 2].into();
        let x = w.forward(&i).unwrap();
        assert_eq!(x, crate::realization::line_from_ints(&[0, 1, 3, 0]));
        assert!(verify_realization(&g, &x, &int(0)).unwrap().valid);
        assert_eq!(w.backward(&x).unwrap(), i);
        let (g, _) = reduce_partition(&PartitionInstance::new(vec![8, 9]).unwrap()).unwrap();
        assert!(!bp_solve(&g).unwrap().is_realizable());
        let (g, _) = reduce_partition(&PartitionInstance::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(
            bp_solve(&g).unwrap().realizations[0],
            crate::realization::line_from_ints(&[0, 1, 0])
        );
        assert!(reduce_partition(&PartitionInstance::new(vec![5]).unwrap()).is_err());
        assert!(PartitionInstance::new(vec![1, 0]).is_err());
    }

    #[test]
    fn single_clause_sizes() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let (c, _) = compile_3sat(&f).unwrap();
        assert_eq!(c.graph.vertex_count(), 16);
        assert_eq!(c.graph.edge_count(), 23);
        assert!(c.graph.is_connected());
        let weights: BTreeSet<_> = c.graph.edges().iter().map(|e| e.weight.clone()).collect();
        assert_eq!(weights, (1..=4).map(int).collect());
        assert_eq!(c.graph.name(c.clause_vertex(0, 8)), Some("c_1_8"));
    }

    #[test]
    fn table_rows_are_the_only_placements() {
        // every sign pattern of literals, enumerated by BP with A, B and literals anchored
        for bits in 0..8 {
            let triple = [0, 1, 2].map(|h| if bits >> (2 - h) & 1 == 1 { 1 } else { -1 });
            let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
            let (mut c, _) = compile_3sat(&f).unwrap();
            for j in 1..=3 {
                let s = c.literal_vertex(Literal::pos(j));
                let sb = c.literal_vertex(Literal::neg(j));
                c.graph.set_anchor(s, vec![int(triple[j - 1])]).unwrap();
                c.graph.set_anchor(sb, vec![int(-triple[j - 1])]).unwrap();
            }
            let r = bp_enumerate(&c.graph, 10).unwrap();
            match clause_table_row(triple) {
                Some(row) => {
                    assert_eq!(r.realizations.len(), 1, "{triple:?}");
                    let x = &r.realizations[0];
                    let got: Vec<Rational> = (1..=8).map(|h| x.coord(c.clause_vertex(0, h)).clone()).collect();
                    assert_eq!(got, row.iter().map(|&v| int(v)).collect::<Vec<_>>());
                }
                None => assert!(r.realizations.is_empty()),
            }
        }
    }

    #[test]
    fn witness_roundtrip_and_counts() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let (c, w) = compile_3sat(&f).unwrap();
        let tt = Assignment::all(3, true);
        let x = w.forward(&tt).unwrap();
        let clause: Vec<Rational> = (1..=8).map(|h| x.coord(c.clause_vertex(0, h)).clone()).collect();
        assert_eq!(clause, [6, 4, 6, 6, 8, 7, 2, 5].map(int).to_vec());
        let models = enumerate_models(&f, 100).unwrap().models;
        assert_eq!(models.len(), 7);
        for a in &models {
            let x = w.forward(a).unwrap();
            assert!(verify_realization(&c.graph, &x, &int(0)).unwrap().valid);
            assert_eq!(&w.backward(&x).unwrap(), a);
        }
        assert!(w.forward(&Assignment::all(3, false)).is_err());
        assert_eq!(bp_enumerate(&c.graph, 100).unwrap().realizations.len(), 7);
    }

    #[test]
    fn repeated_literals_share_vertices() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1, 1, 1], &[-1, -1, -1]]).unwrap();
        let (c, _) = compile_3sat(&f).unwrap();
        assert_eq!(c.graph.vertex_count(), 2 + 2 + 16);
        assert!(!bp_solve(&c.graph).unwrap().is_realizable());
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[2, -1]]).unwrap();
        let (c, w) = compile_3sat(&f).unwrap();
        assert_eq!(bp_enumerate(&c.graph, 10).unwrap().realizations.len(), 1);
        let x = w.forward(&Assignment::new(vec![true, true])).unwrap();
        assert!(verify_realization(&c.graph, &x, &int(0)).unwrap().valid);
    }

    #[test]
    fn compile_errors() {
        let f = CnfFormula::from_dimacs_clauses(4, &[&[1, 2, 3, 4]]).unwrap();
        assert!(matches!(compile_3sat(&f), Err(Error::ClauseTooWide { .. })));
        let f = CnfFormula::new(1, vec![crate::cnf::Clause(vec![])]).unwrap();
        assert_eq!(compile_3sat(&f).unwrap_err(), Error::EmptyClause(1));
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 1, 2, 2, 3]]).unwrap();
        assert!(compile_3sat(&f).is_ok());
    }

    #[test]
    fn reachable_sets() {
        let r = clause_gadget_reachable_sets([-1, -1, -1]);
        assert_eq!(r.sets[0], set(&[-7, -5, 1, 3]));
        assert_eq!(r.sets[1], set(&[-5, -3, -1, 1, 3, 5, 7, 9]));
        assert_eq!(r.sets[2], set(&[-7, -5, -3, -1]));
        assert_eq!(r.sets[3], set(&[-7, -3, 1, 5]));
        assert!(r.intersection.is_empty());
        assert!(clause_gadget_reachable_sets([1, 1, 1]).intersection.contains(&7));
        assert!(clause_gadget_reachable_sets([-1, -1, 1]).intersection.contains(&-5));
        for (l, row) in CLAUSE_TABLE {
            assert!(clause_gadget_reachable_sets(l).intersection.contains(&row[5]));
        }
    }
}
