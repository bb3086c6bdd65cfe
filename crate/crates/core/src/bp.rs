//! Exact branch-and-prune search on the line.
//!
//! Vertices are placed in depth-first order. Each new vertex sits at
//! `x_parent + d` or `x_parent - d` (the `+` branch first); every edge back to
//! an already placed vertex must hold exactly or the branch is pruned.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::realization::{congruent, verify_realization, Realization};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchStatus {
    Realizable,
    Unrealizable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub status: SearchStatus,
    pub realizations: Vec<Realization<Rational>>,
    pub nodes_explored: u64,
    pub truncated: bool,
}

impl SearchReport {
    pub fn is_realizable(&self) -> bool {
        self.status == SearchStatus::Realizable
    }

    fn unrealizable(nodes_explored: u64) -> Self {
        SearchReport {
            status: SearchStatus::Unrealizable,
            realizations: Vec::new(),
            nodes_explored,
            truncated: false,
        }
    }
}

/// One placement step of the depth-first order.
#[derive(Debug, Clone, PartialEq)]
pub struct DfsStep {
    pub vertex: usize,
    /// Tree parent and the weight of the tree edge; `None` for a root.
    pub parent: Option<(usize, Rational)>,
    /// Edges to vertices placed earlier, tree edge excluded.
    pub back_edges: Vec<(usize, Rational)>,
}

/// Depth-first order of one connected component.
///
/// The root is the smallest anchored vertex of the component, or its smallest
/// vertex when none is anchored; neighbors are visited by increasing id.
pub fn dfs_order(g: &WeightedGraph, component: &[usize]) -> Vec<DfsStep> {
    let root = component
        .iter()
        .copied()
        .find(|v| g.anchor(*v).is_some())
        .or_else(|| component.iter().copied().min());
    let Some(root) = root else {
        return Vec::new();
    };
    let n = g.vertex_count();
    let mut rank = vec![usize::MAX; n];
    let mut steps: Vec<DfsStep> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    rank[root] = 0;
    steps.push(DfsStep {
        vertex: root,
        parent: None,
        back_edges: Vec::new(),
    });
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let nbrs = g.neighbors(v);
        if *next >= nbrs.len() {
            stack.pop();
            continue;
        }
        let (w, e) = nbrs[*next];
        *next += 1;
        if rank[w] != usize::MAX {
            continue;
        }
        rank[w] = steps.len();
        let back_edges = g
            .neighbors(w)
            .iter()
            .filter(|&&(u, _)| u != v && rank[u] != usize::MAX)
            .map(|&(u, f)| (u, g.edges()[f].weight.clone()))
            .collect();
        steps.push(DfsStep {
            vertex: w,
            parent: Some((v, g.edges()[e].weight.clone())),
            back_edges,
        });
        stack.push((w, 0));
    }
    steps
}

fn check_line_graph(g: &WeightedGraph) -> Result<()> {
    if g.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: g.dimension(),
        });
    }
    Ok(())
}

fn anchors_consistent(g: &WeightedGraph) -> bool {
    g.edges().iter().all(|e| match (g.anchor(e.u), g.anchor(e.v)) {
        (Some(a), Some(b)) => (&a[0] - &b[0]).abs() == e.weight,
        _ => true,
    })
}

/// Exhaustive search over one component; `visit` receives every complete
/// placement (indexed by vertex id, other entries untouched) and returns
/// `false` to stop. Returns the number of candidate placements tried.
fn search_component(
    g: &WeightedGraph,
    steps: &[DfsStep],
    x: &mut [Rational],
    mut visit: impl FnMut(&[Rational]) -> bool,
) -> u64 {
    let len = steps.len();
    if len == 0 {
        return 0;
    }
    let canonical = g.anchor(steps[0].vertex).is_none();
    let mut choice = vec![0u8; len];
    let mut nodes = 0u64;
    let mut depth = 0usize;
    loop {
        if depth == len {
            if !visit(x) {
                return nodes;
            }
            depth -= 1;
            continue;
        }
        let step = &steps[depth];
        let c = choice[depth];
        let candidate = match (&step.parent, g.anchor(step.vertex)) {
            (None, anchor) if c == 0 => Some(anchor.map_or_else(Rational::zero, |a| a[0].clone())),
            (Some(_), Some(a)) if c == 0 => Some(a[0].clone()),
            (Some((p, d)), None) if c == 0 => Some(&x[*p] + d),
            // the first tree edge of an unanchored component keeps only `+`
            (Some((p, d)), None) if c == 1 && !(canonical && depth == 1) => Some(&x[*p] - d),
            _ => None,
        };
        let Some(pos) = candidate else {
            choice[depth] = 0;
            if depth == 0 {
                return nodes;
            }
            depth -= 1;
            continue;
        };
        choice[depth] += 1;
        nodes += 1;
        let tree_ok = match &step.parent {
            Some((p, d)) => (&pos - &x[*p]).abs() == *d,
            None => true,
        };
        if tree_ok && step.back_edges.iter().all(|(u, d)| (&pos - &x[*u]).abs() == *d) {
            x[step.vertex] = pos;
            depth += 1;
        }
    }
}

struct Prepared {
    components: Vec<Vec<DfsStep>>,
}

fn prepare(g: &WeightedGraph) -> Result<Option<Prepared>> {
    check_line_graph(g)?;
    if !anchors_consistent(g) {
        return Ok(None);
    }
    let components = g.components().iter().map(|c| dfs_order(g, c)).collect();
    Ok(Some(Prepared { components }))
}

/// First realization in branch order, or `UNREALIZABLE`.
pub fn bp_solve(g: &WeightedGraph) -> Result<SearchReport> {
    let Some(prep) = prepare(g)? else {
        return Ok(SearchReport::unrealizable(0));
    };
    let mut x = vec![Rational::zero(); g.vertex_count()];
    let mut nodes = 0;
    for steps in &prep.components {
        let mut found = false;
        nodes += search_component(g, steps, &mut x, |_| {
            found = true;
            false
        });
        if !found {
            return Ok(SearchReport::unrealizable(nodes));
        }
    }
    Ok(SearchReport {
        status: SearchStatus::Realizable,
        realizations: vec![Realization::line(x)],
        nodes_explored: nodes,
        truncated: false,
    })
}

/// All realizations, one per congruence class when no vertex is anchored and
/// raw anchored solutions otherwise. Disconnected graphs yield the product of
/// per-component solution sets. At most `cap` realizations are returned.
pub fn bp_enumerate(g: &WeightedGraph, cap: usize) -> Result<SearchReport> {
    let Some(prep) = prepare(g)? else {
        return Ok(SearchReport::unrealizable(0));
    };
    let n = g.vertex_count();
    let mut nodes = 0;
    let mut truncated = false;
    let mut per_component: Vec<(Vec<usize>, Vec<Vec<Rational>>)> = Vec::new();
    for steps in &prep.components {
        let verts: Vec<usize> = steps.iter().map(|s| s.vertex).collect();
        let mut sols = Vec::new();
        let mut x = vec![Rational::zero(); n];
        nodes += search_component(g, steps, &mut x, |x| {
            if sols.len() >= cap {
                truncated = true;
                return false;
            }
            sols.push(verts.iter().map(|&v| x[v].clone()).collect());
            true
        });
        if sols.is_empty() {
            return Ok(SearchReport::unrealizable(nodes));
        }
        per_component.push((verts, sols));
    }
    let mut realizations = Vec::new();
    let mut index = vec![0usize; per_component.len()];
    'product: loop {
        if realizations.len() >= cap {
            truncated = true;
            break;
        }
        let mut x = vec![Rational::zero(); n];
        for (k, (verts, sols)) in per_component.iter().enumerate() {
            for (v, p) in verts.iter().zip(&sols[index[k]]) {
                x[*v] = p.clone();
            }
        }
        realizations.push(Realization::line(x));
        for k in (0..index.len()).rev() {
            index[k] += 1;
            if index[k] < per_component[k].1.len() {
                continue 'product;
            }
            index[k] = 0;
        }
        break;
    }
    Ok(SearchReport {
        status: SearchStatus::Realizable,
        realizations,
        nodes_explored: nodes,
        truncated,
    })
}

/// Number of realizations found by [`bp_enumerate`] without materializing
/// them; `None` when the count exceeds `cap`.
pub fn bp_count(g: &WeightedGraph, cap: usize) -> Result<Option<usize>> {
    let Some(prep) = prepare(g)? else {
        return Ok(Some(0));
    };
    let mut x = vec![Rational::zero(); g.vertex_count()];
    let mut total: usize = 1;
    for steps in &prep.components {
        let mut count = 0usize;
        search_component(g, steps, &mut x, |_| {
            count += 1;
            count <= cap
        });
        if count > cap {
            return Ok(None);
        }
        total = match total.checked_mul(count) {
            Some(t) if t <= cap => t,
            _ if count == 0 => 0,
            _ => return Ok(None),
        };
        if total == 0 {
            return Ok(Some(0));
        }
    }
    Ok(Some(total))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ambiguity {
    /// A realization incongruent to the given one.
    Yes(Realization<Rational>),
    No,
}

impl Ambiguity {
    pub fn is_yes(&self) -> bool {
        matches!(self, Ambiguity::Yes(_))
    }
}

/// Decides whether `g` has a realization incongruent to `x`.
pub fn decide_ambiguous(g: &WeightedGraph, x: &Realization<Rational>) -> Result<Ambiguity> {
    let report = verify_realization(g, x, &Rational::zero())?;
    if !report.valid {
        return Err(Error::Precondition("realization does not verify".into()));
    }
    let Some(prep) = prepare(g)? else {
        return Ok(Ambiguity::No);
    };
    let base = x.line_positions();
    let n = g.vertex_count();
    if prep.components.len() >= 2 {
        if let Some(free) = prep.components.iter().find(|s| g.anchor(s[0].vertex).is_none()) {
            // shifting a free component past everything else changes every cross distance
            let span = base.iter().fold(Rational::zero(), |m, p| if p.abs() > m { p.abs() } else { m });
            let shift = span * int(2) + int(1);
            let mut y = base.clone();
            for s in free {
                y[s.vertex] = &y[s.vertex] + &shift;
            }
            return Ok(Ambiguity::Yes(Realization::line(y)));
        }
    }
    for steps in &prep.components {
        let mut scratch = base.clone();
        let mut witness = None;
        let verts: Vec<usize> = steps.iter().map(|s| s.vertex).collect();
        search_component(g, steps, &mut scratch, |sol| {
            let mut y = base.clone();
            for &v in &verts {
                y[v] = sol[v].clone();
            }
            let y = Realization::line(y);
            if congruent(x, &y).unwrap_or(true) {
                true
            } else {
                witness = Some(y);
                false
            }
        });
        if let Some(y) = witness {
            return Ok(Ambiguity::Yes(y));
        }
    }
    if prep.components.len() >= 2 {
        // every component is anchored; combine alternative solutions across components
        let report = bp_enumerate(g, 1 << 16)?;
        for y in report.realizations {
            if !congruent(x, &y)? {
                return Ok(Ambiguity::Yes(y));
            }
        }
    }
    debug_assert_eq!(base.len(), n);
    Ok(Ambiguity::No)
}

/// Translated copy of a verified line realization with vertex 0 at the origin
/// (anchored graphs are returned unchanged).
pub fn rational_certificate(g: &WeightedGraph, x: &Realization<Rational>) -> Result<Realization<Rational>> {
    check_line_graph(g)?;
    let report = verify_realization(g, x, &Rational::zero())?;
    if !report.valid {
        return Err(Error::Precondition("realization does not verify".into()));
    }
    if !g.anchors().is_empty() || x.is_empty() {
        return Ok(x.clone());
    }
    let offset = -x.coord(0).clone();
    Ok(x.translated(&[offset]))
}
