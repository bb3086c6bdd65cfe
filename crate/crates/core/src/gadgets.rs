//! Weight-expansion gadgets `T_h`, the dimension-lifting gadgets `R_1`/`R_2`,
//! clique gadgets `C^K_w`, the rigid gadgets `Rbar^K_1`/`Rbar^K_2`, their
//! canonical realizations and the exact embedding-dimension check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::realization::{congruent_within, verify_realization, Realization};
use crate::scalar::{format_rational, int, Rational, Scalar};

/// Weights `h` for which a `T_h` gadget exists.
pub const EXPANDABLE_WEIGHTS: [i64; 4] = [3, 4, 5, 8];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    T3,
    T4,
    T5,
    T8,
    R1,
    R2,
    Clique,
    RbarK1,
    RbarK2,
}

impl GadgetKind {
    pub fn t_weight(self) -> Option<usize> {
        match self {
            GadgetKind::T3 => Some(3),
            GadgetKind::T4 => Some(4),
            GadgetKind::T5 => Some(5),
            GadgetKind::T8 => Some(8),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GadgetKind::T3 => "T3",
            GadgetKind::T4 => "T4",
            GadgetKind::T5 => "T5",
            GadgetKind::T8 => "T8",
            GadgetKind::R1 => "R1",
            GadgetKind::R2 => "R2",
            GadgetKind::Clique => "clique",
            GadgetKind::RbarK1 => "rbar1",
            GadgetKind::RbarK2 => "rbar2",
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            GadgetKind::T3,
            GadgetKind::T4,
            GadgetKind::T5,
            GadgetKind::T8,
            GadgetKind::R1,
            GadgetKind::R2,
            GadgetKind::Clique,
            GadgetKind::RbarK1,
            GadgetKind::RbarK2,
        ];
        all.into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown gadget kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetTemplate {
    pub kind: GadgetKind,
    /// `K` for cliques and `Rbar` gadgets.
    pub parameter: Option<usize>,
    pub graph: WeightedGraph,
    /// Vertices identified with the endpoints of a replaced edge.
    pub terminals: [usize; 2],
}

fn named_graph(prefix: &str, n: usize, dimension: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(0).with_dimension(dimension);
    for i in 1..=n {
        g.add_vertex(Some(&format!("{prefix}{i}")));
    }
    g
}

/// `T_h` on `e_1..e_{h+1}`: `{e_1,e_2}` of weight 1, then each `e_j` attached
/// to `e_{j-2}` (weight 2) and `e_{j-1}` (weight 1). Terminals `e_1`, `e_{h+1}`.
pub fn t_gadget(h: usize) -> Result<GadgetTemplate> {
    let kind = match h {
        3 => GadgetKind::T3,
        4 => GadgetKind::T4,
        5 => GadgetKind::T5,
        8 => GadgetKind::T8,
        _ => return Err(Error::UnsupportedWeight(h.to_string())),
    };
    let mut g = named_graph("e", h + 1, 1);
    g.add_edge(0, 1, int(1))?;
    for j in 2..=h {
        g.add_edge(j - 2, j, int(2))?;
        g.add_edge(j - 1, j, int(1))?;
    }
    Ok(GadgetTemplate {
        kind,
        parameter: None,
        graph: g,
        terminals: [0, h],
    })
}

fn rbar_graph(k: usize, copies: usize) -> Result<WeightedGraph> {
    let mut g = named_graph("f", copies * k, k);
    for c in 0..copies {
        for i in 0..k {
            for j in (i + 1)..k {
                g.add_edge(c * k + i, c * k + j, int(3))?;
            }
        }
    }
    for c in 0..copies - 1 {
        for i in 0..k {
            for j in 0..k {
                let w = if i == j { 4 } else { 5 };
                g.add_edge(c * k + i, (c + 1) * k + j, int(w))?;
            }
        }
    }
    if copies == 3 {
        for i in 0..k {
            g.add_edge(i, 2 * k + i, int(8))?;
        }
    }
    Ok(g)
}

/// `R_1`: `f1..f4` with `f1f2 = f3f4 = 3`, `f1f3 = f2f4 = 4`, `f1f4 = f2f3 = 5`;
/// terminals `f1`, `f3`.
pub fn r1_gadget() -> Result<GadgetTemplate> {
    Ok(GadgetTemplate {
        kind: GadgetKind::R1,
        parameter: None,
        graph: rbar_graph(2, 2)?,
        terminals: [0, 2],
    })
}

/// `R_2`: two `R_1` frames sharing `{f3, f4}` plus `f1f5 = f2f6 = 8`;
/// terminals `f1`, `f5`.
pub fn r2_gadget() -> Result<GadgetTemplate> {
    Ok(GadgetTemplate {
        kind: GadgetKind::R2,
        parameter: None,
        graph: rbar_graph(2, 3)?,
        terminals: [0, 4],
    })
}

/// `C^K_w`: complete graph on `k_1..k_{K+1}` with every weight `w`.
pub fn clique_gadget(k: usize, w: &Rational) -> Result<GadgetTemplate> {
    if k < 1 {
        return Err(Error::Precondition("clique gadget needs K >= 1".into()));
    }
    if !w.is_positive() {
        return Err(Error::UnsupportedWeight(format_rational(w)));
    }
    let mut g = named_graph("k", k + 1, k);
    for i in 0..=k {
        for j in (i + 1)..=k {
            g.add_edge(i, j, w.clone())?;
        }
    }
    Ok(GadgetTemplate {
        kind: GadgetKind::Clique,
        parameter: Some(k),
        graph: g,
        terminals: [0, 1],
    })
}

/// `Rbar^K_1` (`kind = 1`, `2K` vertices) or `Rbar^K_2` (`kind = 2`, `3K`
/// vertices): consecutive `K`-cliques of weight 3 joined by `{i, K+i}` of
/// weight 4 and all other cross pairs of weight 5; `Rbar^K_2` adds
/// `{i, 2K+i}` of weight 8.
pub fn build_rbar(k: usize, kind: u8) -> Result<GadgetTemplate> {
    if k < 2 {
        return Err(Error::Precondition("Rbar gadgets need K >= 2".into()));
    }
    let (gk, copies) = match kind {
        1 => (GadgetKind::RbarK1, 2),
        2 => (GadgetKind::RbarK2, 3),
        _ => return Err(Error::Precondition(format!("Rbar kind must be 1 or 2, got {kind}"))),
    };
    Ok(GadgetTemplate {
        kind: gk,
        parameter: Some(k),
        graph: rbar_graph(k, copies)?,
        terminals: [0, (copies - 1) * k],
    })
}

/// Template by kind; `k` is required for cliques (weight 1) and `Rbar` gadgets.
pub fn gadget(kind: GadgetKind, k: Option<usize>) -> Result<GadgetTemplate> {
    let need_k = || k.ok_or_else(|| Error::Precondition(format!("{kind} needs a dimension K")));
    match kind {
        GadgetKind::T3 | GadgetKind::T4 | GadgetKind::T5 | GadgetKind::T8 => t_gadget(kind.t_weight().unwrap()),
        GadgetKind::R1 => r1_gadget(),
        GadgetKind::R2 => r2_gadget(),
        GadgetKind::Clique => clique_gadget(need_k()?, &int(1)),
        GadgetKind::RbarK1 => build_rbar(need_k()?, 1),
        GadgetKind::RbarK2 => build_rbar(need_k()?, 2),
    }
}

/// Copies `t` into `out` with its terminals identified to `u` and `v`;
/// returns the ids of all template vertices in `out`.
fn splice(out: &mut WeightedGraph, t: &GadgetTemplate, u: usize, v: usize, tag: &str) -> Result<Vec<usize>> {
    let tg = &t.graph;
    let ids: Vec<usize> = (0..tg.vertex_count())
        .map(|i| {
            if i == t.terminals[0] {
                u
            } else if i == t.terminals[1] {
                v
            } else {
                out.add_vertex(Some(&format!("{tag}:{}", tg.label(i))))
            }
        })
        .collect();
    for e in tg.edges() {
        out.add_edge(ids[e.u], ids[e.v], e.weight.clone())?;
    }
    Ok(ids)
}

/// Copy of `g`'s vertices (names kept), anchors lifted into `dimension` by
/// scaling with `scale` and padding with zeros.
fn vertex_shell(g: &WeightedGraph, dimension: usize, scale: &Rational) -> Result<WeightedGraph> {
    let mut out = WeightedGraph::new(0).with_dimension(dimension);
    for v in 0..g.vertex_count() {
        out.add_vertex(g.name(v));
    }
    for (&v, a) in g.anchors() {
        let mut p: Vec<Rational> = a.iter().map(|c| c * scale).collect();
        p.resize(dimension, Rational::zero());
        out.set_anchor(v, p)?;
    }
    Ok(out)
}

fn weight_as_int(w: &Rational) -> Option<i64> {
    if w.is_integer() {
        i64::try_from(w.to_integer()).ok()
    } else {
        None
    }
}

/// Replaces every edge of weight `h` in `{3, 4, 5, 8}` by a fresh `T_h`
/// (`u = e_1`, `v = e_{h+1}`), leaving only weights 1 and 2.
pub fn expand_weights(g: &WeightedGraph) -> Result<WeightedGraph> {
    let mut out = vertex_shell(g, g.dimension(), &Rational::one())?;
    for (i, e) in g.edges().iter().enumerate() {
        match weight_as_int(&e.weight) {
            Some(1 | 2) => {
                out.add_edge(e.u, e.v, e.weight.clone())?;
            }
            Some(h) if EXPANDABLE_WEIGHTS.contains(&h) => {
                splice(&mut out, &t_gadget(h as usize)?, e.u, e.v, &format!("T{h}#{}", i + 1))?;
            }
            _ => return Err(Error::UnsupportedWeight(format_rational(&e.weight))),
        }
    }
    Ok(out)
}

fn require_unit_weights(g: &WeightedGraph) -> Result<()> {
    match g.edges().iter().find(|e| !matches!(weight_as_int(&e.weight), Some(1 | 2))) {
        Some(e) => Err(Error::UnsupportedWeight(format_rational(&e.weight))),
        None => Ok(()),
    }
}

/// Replaces weight-1 edges by `R_1` and weight-2 edges by `R_2`; the result is
/// a planar instance with all lengths scaled by 4.
pub fn lift_saxe(g1: &WeightedGraph) -> Result<WeightedGraph> {
    require_unit_weights(g1)?;
    let (r1, r2) = (r1_gadget()?, r2_gadget()?);
    let mut out = vertex_shell(g1, 2, &int(4))?;
    for (i, e) in g1.edges().iter().enumerate() {
        let t = if e.weight == int(1) { &r1 } else { &r2 };
        splice(&mut out, t, e.u, e.v, &format!("{}#{}", t.kind, i + 1))?;
    }
    Ok(out)
}

/// Exact planar realization of [`lift_saxe`]`(g1)` from a line realization of
/// `g1`: terminals at `(4 x, 0)`, the other frame corners 3 above them.
pub fn lift_saxe_realization(g1: &WeightedGraph, x1: &Realization<Rational>) -> Result<Realization<Rational>> {
    require_unit_weights(g1)?;
    if x1.len() != g1.vertex_count() {
        return Err(Error::VertexSetMismatch {
            left: g1.vertex_count(),
            right: x1.len(),
        });
    }
    let four = int(4);
    let three = int(3);
    let mut points: Vec<Vec<Rational>> = x1
        .line_positions()
        .iter()
        .map(|p| vec![p * &four, Rational::zero()])
        .collect();
    for e in g1.edges() {
        let (a, b) = (x1.coord(e.u) * &four, x1.coord(e.v) * &four);
        if e.weight == int(1) {
            // f2, f4
            points.push(vec![a, three.clone()]);
            points.push(vec![b, three.clone()]);
        } else {
            let mid = (&a + &b) / int(2);
            // f2, f3, f4, f6
            points.push(vec![a, three.clone()]);
            points.push(vec![mid.clone(), Rational::zero()]);
            points.push(vec![mid, three.clone()]);
            points.push(vec![b, three.clone()]);
        }
    }
    Realization::new(2, points)
}

/// Replaces weight-1 edges by `Rbar^K_1` and weight-2 edges by `Rbar^K_2`.
pub fn lift_rbar(g1: &WeightedGraph, k: usize) -> Result<WeightedGraph> {
    require_unit_weights(g1)?;
    let (t1, t2) = (build_rbar(k, 1)?, build_rbar(k, 2)?);
    let mut out = vertex_shell(g1, k, &int(4))?;
    for (i, e) in g1.edges().iter().enumerate() {
        let t = if e.weight == int(1) { &t1 } else { &t2 };
        splice(&mut out, t, e.u, e.v, &format!("{}#{}", t.kind, i + 1))?;
    }
    Ok(out)
}

/// One clique gadget inside a lifted graph: the replaced edge `{u, v}` and the
/// added vertices `k_3..k_{K+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSite {
    pub u: usize,
    pub v: usize,
    pub added: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliqueLift {
    pub graph: WeightedGraph,
    pub k: usize,
    pub sites: Vec<CliqueSite>,
}

/// Grows weight-1 edges into `C^K_1` (`u = k_1`, `v = k_2`): only the
/// lexicographically first one, or all of them with `replace_all`.
pub fn lift_clique(g1: &WeightedGraph, k: usize, replace_all: bool) -> Result<CliqueLift> {
    if k < 2 {
        return Err(Error::Precondition("clique lifting needs K >= 2".into()));
    }
    let mut unit: Vec<(usize, usize)> = g1
        .edges()
        .iter()
        .filter(|e| e.weight == int(1))
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect();
    unit.sort_unstable();
    if unit.is_empty() {
        return Err(Error::Precondition("no weight-1 edge to replace".into()));
    }
    if !replace_all {
        unit.truncate(1);
    }
    let mut out = vertex_shell(g1, k, &Rational::one())?;
    for e in g1.edges() {
        out.add_edge(e.u, e.v, e.weight.clone())?;
    }
    let template = clique_gadget(k, &int(1))?;
    let mut sites = Vec::new();
    for (i, &(u, v)) in unit.iter().enumerate() {
        let ids = splice(&mut out, &template, u, v, &format!("C#{}", i + 1))?;
        sites.push(CliqueSite {
            u,
            v,
            added: ids[2..].to_vec(),
        });
    }
    Ok(CliqueLift { graph: out, k, sites })
}

/// Vertices of a regular simplex with the given side, `p_0` at the origin and
/// `p_j` using axes `0..j`.
pub fn regular_simplex<T: Float>(count: usize, side: T, dimension: usize) -> Vec<Vec<T>> {
    let mut pts: Vec<Vec<T>> = Vec::with_capacity(count);
    for j in 0..count {
        let mut p = vec![T::zero(); dimension];
        if j > 0 {
            let jt = T::from(j).unwrap();
            for (a, slot) in p.iter_mut().enumerate().take(j - 1) {
                *slot = pts.iter().map(|q| q[a]).fold(T::zero(), |s, c| s + c) / jt;
            }
            let r2 = p.iter().fold(T::zero(), |s, &c| s + c * c);
            p[j - 1] = (side * side - r2).sqrt();
        }
        pts.push(p);
    }
    pts
}

fn to_float<T: Float + Scalar>(r: &Rational) -> T {
    <T as Scalar>::from_rational(r)
}

/// Realization of a clique lift from a line realization of the original graph;
/// the added vertices of site `i` are rotated by `angles[i]` (missing entries
/// mean 0) about the line in the plane of axes 1 and 2.
pub fn realize_clique_lift<T: Float + Scalar>(
    lift: &CliqueLift,
    x1: &Realization<Rational>,
    angles: &[T],
) -> Result<Realization<T>> {
    let k = lift.k;
    let n1 = x1.len();
    let g = &lift.graph;
    let mut points: Vec<Vec<T>> = vec![vec![T::zero(); k]; g.vertex_count()];
    for (v, p) in x1.line_positions().iter().enumerate() {
        points[v][0] = to_float(p);
    }
    let base = regular_simplex(k + 1, T::one(), k);
    for (i, site) in lift.sites.iter().enumerate() {
        let a: T = to_float(x1.coord(site.u));
        let b: T = to_float(x1.coord(site.v));
        let sign = if b >= a { T::one() } else { -T::one() };
        let theta = angles.get(i).copied().unwrap_or_else(T::zero);
        for (j, &w) in site.added.iter().enumerate() {
            let mut p = base[j + 2].clone();
            p[0] = a + sign * p[0];
            if k >= 3 {
                let (y, z) = (p[1], p[2]);
                p[1] = y * theta.cos() - z * theta.sin();
                p[2] = y * theta.sin() + z * theta.cos();
            }
            points[w] = p;
        }
    }
    if points.len() < n1 {
        return Err(Error::VertexSetMismatch {
            left: g.vertex_count(),
            right: n1,
        });
    }
    Realization::new(k, points)
}

/// Canonical real realization of a template: `T_h` on the integers, `R`
/// frames as axis-parallel rectangles, cliques as regular simplices and
/// `Rbar` gadgets as side-3 simplices repeated at offsets 4 and 8 along the
/// last axis.
pub fn realize_gadget<T: Float + Scalar>(t: &GadgetTemplate) -> Result<Realization<T>> {
    let n = t.graph.vertex_count();
    match t.kind {
        GadgetKind::T3 | GadgetKind::T4 | GadgetKind::T5 | GadgetKind::T8 => {
            Ok(Realization::line((0..n).map(|j| T::from(j).unwrap()).collect()))
        }
        GadgetKind::Clique => {
            let k = t.parameter.unwrap_or(n - 1);
            let w: T = to_float(&t.graph.edges()[0].weight);
            Realization::new(k, regular_simplex(k + 1, w, k))
        }
        GadgetKind::R1 | GadgetKind::R2 | GadgetKind::RbarK1 | GadgetKind::RbarK2 => {
            let k = t.parameter.unwrap_or(2);
            let copies = n / k;
            let simplex = regular_simplex(k, T::from(3).unwrap(), k - 1);
            let mut points = Vec::with_capacity(n);
            for c in 0..copies {
                for p in &simplex {
                    let mut q = p.clone();
                    q.push(T::from(4 * c).unwrap());
                    points.push(q);
                }
            }
            Realization::new(k, points)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingDimension {
    Dim(usize),
    /// The distances violate positive semidefiniteness: no Euclidean embedding.
    Infeasible,
}

/// Minimal dimension of a Euclidean embedding of a complete weighted graph:
/// the rank of the Gram matrix centered at the first vertex, computed by
/// exact fraction-free elimination with symmetric diagonal pivoting.
pub fn minimal_embedding_dimension(g: &WeightedGraph) -> Result<EmbeddingDimension> {
    let n = g.vertex_count();
    if !g.is_complete() {
        return Err(Error::Precondition("embedding dimension needs a complete graph".into()));
    }
    if n <= 1 {
        return Ok(EmbeddingDimension::Dim(0));
    }
    let sq = |u: usize, v: usize| -> Rational {
        if u == v {
            Rational::zero()
        } else {
            let w = g.weight(u, v).expect("complete graph");
            w * w
        }
    };
    let m = n - 1;
    let mut gram: Vec<Vec<Rational>> = vec![vec![Rational::zero(); m]; m];
    let mut denom_lcm = BigInt::one();
    for i in 0..m {
        for j in 0..m {
            let v = (sq(0, i + 1) + sq(0, j + 1) - sq(i + 1, j + 1)) / int(2);
            denom_lcm = denom_lcm.lcm(v.denom());
            gram[i][j] = v;
        }
    }
    let scale = Rational::from_integer(denom_lcm);
    let mut a: Vec<Vec<BigInt>> = gram
        .iter()
        .map(|row| row.iter().map(|v| (v * &scale).to_integer()).collect())
        .collect();
    let mut prev = BigInt::one();
    for step in 0..m {
        if (step..m).any(|i| a[i][i].is_negative()) {
            return Ok(EmbeddingDimension::Infeasible);
        }
        let pivot = (step..m).find(|&i| a[i][i].is_positive());
        let Some(p) = pivot else {
            let rest_zero = (step..m).all(|i| (step..m).all(|j| a[i][j].is_zero()));
            return Ok(if rest_zero {
                EmbeddingDimension::Dim(step)
            } else {
                EmbeddingDimension::Infeasible
            });
        };
        a.swap(step, p);
        for row in a.iter_mut() {
            row.swap(step, p);
        }
        for i in (step + 1)..m {
            for j in (step + 1)..m {
                let v = (&a[i][j] * &a[step][step] - &a[i][step] * &a[step][j]) / &prev;
                a[i][j] = v;
            }
        }
        for i in (step + 1)..m {
            a[i][step] = BigInt::zero();
            a[step][i] = BigInt::zero();
        }
        prev = a[step][step].clone();
    }
    Ok(EmbeddingDimension::Dim(m))
}

/// Complete graph of pairwise distances of `x`, for [`minimal_embedding_dimension`];
/// squared distances must be perfect rational squares, which holds for the
/// exact points used here, otherwise an error is returned.
pub fn distance_graph(x: &Realization<Rational>) -> Result<WeightedGraph> {
    let n = x.len();
    let mut g = WeightedGraph::new(n).with_dimension(x.dimension());
    for u in 0..n {
        for v in (u + 1)..n {
            let d2 = x.squared_distance(u, v);
            let d = rational_sqrt(&d2)
                .ok_or_else(|| Error::UnsupportedWeight(format!("sqrt({})", format_rational(&d2))))?;
            if d.is_zero() {
                return Err(Error::InvalidGraph("coincident points".into()));
            }
            g.add_edge(u, v, d)?;
        }
    }
    Ok(g)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlexibilityDemo {
    pub lift: CliqueLift,
    pub base: Realization<f64>,
    pub rotated: Realization<f64>,
    pub base_verifies: bool,
    pub rotated_verifies: bool,
    pub congruent: bool,
}

/// Two realizations of the same clique lift of `g1` that differ only by
/// rotating the second gadget by `angle` about the line.
pub fn clique_flexibility_demo(
    g1: &WeightedGraph,
    x1: &Realization<Rational>,
    k: usize,
    angle: f64,
) -> Result<FlexibilityDemo> {
    if k < 3 {
        return Err(Error::Precondition("flexibility needs K >= 3 (a spare rotation axis)".into()));
    }
    let lift = lift_clique(g1, k, true)?;
    if lift.sites.len() < 2 {
        return Err(Error::Precondition("flexibility needs at least two clique gadgets".into()));
    }
    let base = realize_clique_lift::<f64>(&lift, x1, &[])?;
    let rotated = realize_clique_lift::<f64>(&lift, x1, &[0.0, angle])?;
    let tol = <f64 as Scalar>::default_tolerance();
    Ok(FlexibilityDemo {
        base_verifies: verify_realization(&lift.graph, &base, &tol)?.valid,
        rotated_verifies: verify_realization(&lift.graph, &rotated, &tol)?.valid,
        congruent: congruent_within(&base, &rotated, &tol)?,
        lift,
        base,
        rotated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp::{bp_enumerate, bp_solve};
    use crate::graph::graph_from_edges;
    use crate::realization::line_from_ints;
    use crate::scalar::ratio;

    #[test]
    fn t_gadget_sizes_and_realizations() {
        for (h, n, m) in [(3, 4, 5), (4, 5, 7), (5, 6, 9), (8, 9, 15)] {
            let t = t_gadget(h).unwrap();
            assert_eq!((t.graph.vertex_count(), t.graph.edge_count()), (n, m));
            let r = bp_enumerate(&t.graph, 10).unwrap();
            assert_eq!(r.realizations.len(), 1, "T{h}");
            let x = &r.realizations[0];
            assert_eq!((x.coord(t.terminals[1]) - x.coord(t.terminals[0])).abs(), int(h as i64));
            let y = realize_gadget::<f64>(&t).unwrap();
            assert!(verify_realization(&t.graph, &y, &1e-12).unwrap().valid);
        }
        assert!(t_gadget(6).is_err());
    }

    #[test]
    fn t3_matches_figure() {
        let t = t_gadget(3).unwrap();
        let expected = graph_from_edges(4, &[(1, 3, 2), (1, 2, 1), (3, 2, 1), (3, 4, 1), (2, 4, 2)]).unwrap();
        for e in expected.edges() {
            assert_eq!(t.graph.weight(e.u, e.v), Some(&e.weight));
        }
    }

    #[test]
    fn r_gadgets() {
        let r1 = r1_gadget().unwrap();
        assert_eq!((r1.graph.vertex_count(), r1.graph.edge_count()), (4, 6));
        let r2 = r2_gadget().unwrap();
        assert_eq!((r2.graph.vertex_count(), r2.graph.edge_count()), (6, 13));
        assert_eq!(r2.graph.weight(0, 4), Some(&int(8)));
        assert_eq!(r2.graph.weight(1, 5), Some(&int(8)));
        let rb = build_rbar(2, 1).unwrap();
        assert_eq!(rb.graph.edges(), r1.graph.edges());
    }

    #[test]
    fn rbar_sizes() {
        for k in 2..=6 {
            let t = build_rbar(k, 1).unwrap();
            assert_eq!(t.graph.vertex_count(), 2 * k);
            assert_eq!(t.graph.edge_count(), k * (k - 1) + k + (k * k - k));
            assert!(t.graph.is_complete());
            let t2 = build_rbar(k, 2).unwrap();
            assert_eq!(t2.graph.vertex_count(), 3 * k);
            assert_eq!(t2.graph.edge_count(), 3 * k * (k - 1) / 2 + 2 * k * k + k);
            for i in 0..k {
                assert_eq!(t2.graph.weight(i, 2 * k + i), Some(&int(8)));
            }
        }
        assert_eq!(build_rbar(3, 1).unwrap().graph.edge_count(), 15);
        assert!(build_rbar(1, 1).is_err());
        assert!(build_rbar(3, 3).is_err());
    }

    #[test]
    fn gadget_realizations_verify() {
        for k in 2..=5 {
            for t in [clique_gadget(k, &int(1)).unwrap(), build_rbar(k, 1).unwrap(), build_rbar(k, 2).unwrap()] {
                let x = realize_gadget::<f64>(&t).unwrap();
                assert!(verify_realization(&t.graph, &x, &1e-9).unwrap().valid, "{} K={k}", t.kind);
            }
        }
        let x = realize_gadget::<f64>(&clique_gadget(2, &int(1)).unwrap()).unwrap();
        assert!((x.point(2)[1] - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let x = realize_gadget::<f32>(&build_rbar(3, 1).unwrap()).unwrap();
        assert!(verify_realization(&build_rbar(3, 1).unwrap().graph, &x, &1e-5).unwrap().valid);
    }

    #[test]
    fn rbar_segments_of_length_four_are_parallel() {
        for k in 2..=5 {
            let x = realize_gadget::<f64>(&build_rbar(k, 1).unwrap()).unwrap();
            for i in 0..k {
                let d: Vec<f64> = (0..k).map(|a| x.point(k + i)[a] - x.point(i)[a]).collect();
                let mut e = vec![0.0; k];
                e[k - 1] = 4.0;
                assert_eq!(d, e);
            }
        }
    }

    #[test]
    fn embedding_dimension_examples() {
        for k in 1..=6 {
            let c = clique_gadget(k, &int(1)).unwrap();
            assert_eq!(minimal_embedding_dimension(&c.graph).unwrap(), EmbeddingDimension::Dim(k));
        }
        let collinear = graph_from_edges(3, &[(1, 2, 1), (2, 3, 2), (1, 3, 3)]).unwrap();
        assert_eq!(minimal_embedding_dimension(&collinear).unwrap(), EmbeddingDimension::Dim(1));
        let bad = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1), (1, 3, 3)]).unwrap();
        assert_eq!(minimal_embedding_dimension(&bad).unwrap(), EmbeddingDimension::Infeasible);
        let path = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        assert!(minimal_embedding_dimension(&path).is_err());
        let mut half = WeightedGraph::new(3);
        half.add_edge(0, 1, ratio(1, 2)).unwrap();
        half.add_edge(1, 2, ratio(1, 2)).unwrap();
        half.add_edge(0, 2, ratio(1, 2)).unwrap();
        assert_eq!(minimal_embedding_dimension(&half).unwrap(), EmbeddingDimension::Dim(2));
    }

    #[test]
    fn rbar_dimension_and_clique_faces() {
        for k in 2..=5 {
            let t = build_rbar(k, 1).unwrap();
            assert_eq!(minimal_embedding_dimension(&t.graph).unwrap(), EmbeddingDimension::Dim(k));
            let first: Vec<usize> = (0..k).collect();
            let second: Vec<usize> = (k..2 * k).collect();
            for face in [first, second] {
                let sub = t.graph.induced_subgraph(&face);
                assert_eq!(minimal_embedding_dimension(&sub).unwrap(), EmbeddingDimension::Dim(k - 1));
            }
        }
    }

    #[test]
    fn expand_weights_examples() {
        let g = graph_from_edges(2, &[(1, 2, 3)]).unwrap();
        let e = expand_weights(&g).unwrap();
        assert_eq!((e.vertex_count(), e.edge_count()), (4, 5));
        let r = bp_enumerate(&e, 10).unwrap();
        assert_eq!(r.realizations.len(), 1);
        assert_eq!((r.realizations[0].coord(1) - r.realizations[0].coord(0)).abs(), int(3));
        let g = graph_from_edges(2, &[(1, 2, 1)]).unwrap();
        assert_eq!(expand_weights(&g).unwrap().edges(), g.edges());
        let g = graph_from_edges(2, &[(1, 2, 7)]).unwrap();
        assert!(matches!(expand_weights(&g), Err(Error::UnsupportedWeight(_))));
    }

    #[test]
    fn expand_weights_keeps_anchored_realizability() {
        use crate::cnf::CnfFormula;
        use crate::reduction::compile_3sat;
        for clauses in [vec![vec![1, 2, 3]], vec![vec![1, 1, 1], vec![-1, -1, -1]], vec![vec![1, -2], vec![2, 3]]] {
            let refs: Vec<&[i64]> = clauses.iter().map(|c| c.as_slice()).collect();
            let f = CnfFormula::from_dimacs_clauses(3, &refs).unwrap();
            let (c, _) = compile_3sat(&f).unwrap();
            let e = expand_weights(&c.graph).unwrap();
            assert!(e.edges().iter().all(|e| e.weight == int(1) || e.weight == int(2)));
            assert_eq!(bp_solve(&c.graph).unwrap().status, bp_solve(&e).unwrap().status);
        }
    }

    #[test]
    fn saxe_lift() {
        let g = graph_from_edges(2, &[(1, 2, 1)]).unwrap();
        let l = lift_saxe(&g).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count(), l.dimension()), (4, 6, 2));
        let x = lift_saxe_realization(&g, &line_from_ints(&[0, 1])).unwrap();
        assert!(verify_realization(&l, &x, &int(0)).unwrap().valid);
        let g = graph_from_edges(2, &[(1, 2, 2)]).unwrap();
        let l = lift_saxe(&g).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (6, 13));
        let x = lift_saxe_realization(&g, &line_from_ints(&[0, -2])).unwrap();
        assert!(verify_realization(&l, &x, &int(0)).unwrap().valid);
        assert_eq!(x.squared_distance(0, 1), int(64));
        let g = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        let l = lift_saxe(&g).unwrap();
        assert_eq!(l.vertex_count(), 7);
        let x = lift_saxe_realization(&g, &line_from_ints(&[0, 1, 0])).unwrap();
        assert!(verify_realization(&l, &x, &int(0)).unwrap().valid);
        assert!(lift_saxe(&graph_from_edges(2, &[(1, 2, 3)]).unwrap()).is_err());
    }

    #[test]
    fn clique_lift() {
        let g = graph_from_edges(2, &[(1, 2, 1)]).unwrap();
        let l = lift_clique(&g, 2, false).unwrap();
        assert_eq!((l.graph.vertex_count(), l.graph.edge_count()), (3, 3));
        let l = lift_clique(&g, 3, false).unwrap();
        assert_eq!((l.graph.vertex_count(), l.graph.edge_count()), (4, 6));
        assert_eq!(minimal_embedding_dimension(&l.graph).unwrap(), EmbeddingDimension::Dim(3));
        let g = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        let l = lift_clique(&g, 4, false).unwrap();
        assert_eq!(l.sites.len(), 1);
        assert_eq!((l.sites[0].u, l.sites[0].v), (0, 1));
        let x = realize_clique_lift::<f64>(&l, &line_from_ints(&[0, 1, 2]), &[]).unwrap();
        assert!(verify_realization(&l.graph, &x, &1e-9).unwrap().valid);
        assert!(lift_clique(&graph_from_edges(2, &[(1, 2, 2)]).unwrap(), 3, false).is_err());
    }

    #[test]
    fn flexibility() {
        let g = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1)]).unwrap();
        let x1 = line_from_ints(&[0, 1, 2]);
        let demo = clique_flexibility_demo(&g, &x1, 3, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(demo.base_verifies && demo.rotated_verifies);
        assert!(!demo.congruent);
        let l = lift_clique(&g, 3, true).unwrap();
        let a = realize_clique_lift::<f64>(&l, &x1, &[0.3, 0.3]).unwrap();
        let b = realize_clique_lift::<f64>(&l, &x1, &[1.1, 1.1]).unwrap();
        assert!(congruent_within(&a, &b, &1e-9).unwrap());
        assert!(clique_flexibility_demo(&g, &x1, 2, 1.0).is_err());
        let one = graph_from_edges(2, &[(1, 2, 1)]).unwrap();
        assert!(clique_flexibility_demo(&one, &line_from_ints(&[0, 1]), 3, 1.0).is_err());
    }

    #[test]
    fn distance_graph_of_exact_points() {
        let x = Realization::new(2, vec![vec![int(0), int(0)], vec![int(3), int(0)], vec![int(0), int(4)]]).unwrap();
        let g = distance_graph(&x).unwrap();
        assert_eq!(g.weight(1, 2), Some(&int(5)));
        assert_eq!(minimal_embedding_dimension(&g).unwrap(), EmbeddingDimension::Dim(2));
    }
}
