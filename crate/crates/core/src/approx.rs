//! Approximate realizations: the multiplicative-band verifier, the exact
//! decision procedure for single cycles, the six-case rounding procedure and
//! cycle-length analysis.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bp::dfs_order;
use crate::cycles::enumerate_simple_cycles;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::realization::{verify_realization, Realization};
use crate::scalar::{int, is_integral, ratio, rational_to_f64, Rational, Scalar};

/// Largest cycle accepted by the exhaustive sign enumeration.
pub const CYCLE_EDGE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub within: bool,
    /// `max |‖x_u − x_v‖ / d_uv − 1|` over all edges.
    pub epsilon_achieved: f64,
    /// The same maximum, exactly, for exact line realizations.
    pub epsilon_exact: Option<Rational>,
    pub worst_edge: Option<usize>,
    pub anchors_ok: bool,
}

/// Checks `(1 − ε) d_uv ≤ ‖x_u − x_v‖ ≤ (1 + ε) d_uv` on every edge.
pub fn verify_approx<T: Scalar>(g: &WeightedGraph, x: &Realization<T>, eps: &Rational) -> Result<ApproxReport> {
    if eps.is_negative() || *eps >= Rational::one() {
        return Err(Error::Precondition("epsilon must lie in [0, 1)".into()));
    }
    if x.len() < g.vertex_count() {
        return Err(Error::MissingPosition(x.len() + 1));
    }
    if x.dimension() != g.dimension() {
        return Err(Error::DimensionMismatch {
            expected: g.dimension(),
            found: x.dimension(),
        });
    }
    let exact = T::EXACT && x.dimension() == 1;
    let mut worst: Option<(usize, f64, Option<Rational>)> = None;
    for (i, e) in g.edges().iter().enumerate() {
        let (dev_f, dev_q) = if exact {
            let a = x.coord(e.u).to_rational().expect("exact scalar");
            let b = x.coord(e.v).to_rational().expect("exact scalar");
            let dev = ((a - b).abs() / &e.weight - Rational::one()).abs();
            (rational_to_f64(&dev), Some(dev))
        } else {
            let dev = (x.distance_f64(e.u, e.v) / rational_to_f64(&e.weight) - 1.0).abs();
            (dev, None)
        };
        let better = match &worst {
            None => true,
            Some((_, f, q)) => match (q, &dev_q) {
                (Some(q), Some(d)) => d > q,
                _ => dev_f > *f,
            },
        };
        if better {
            worst = Some((i, dev_f, dev_q));
        }
    }
    let anchors_ok = g.anchors().iter().all(|(&v, a)| {
        x.point(v).iter().zip(a).all(|(c, t)| {
            if T::EXACT {
                c.to_rational().as_ref() == Some(t)
            } else {
                (c.to_f64_lossy() - rational_to_f64(t)).abs() <= 1e-9 * (1.0 + rational_to_f64(t).abs())
            }
        })
    });
    let (worst_edge, epsilon_achieved, epsilon_exact) = match worst {
        Some((i, f, q)) => (Some(i), f, q),
        None => (None, 0.0, exact.then(Rational::zero)),
    };
    let band = match &epsilon_exact {
        Some(q) => q <= eps,
        None => epsilon_achieved <= rational_to_f64(eps),
    };
    Ok(ApproxReport {
        within: band && anchors_ok,
        epsilon_achieved,
        epsilon_exact,
        worst_edge,
        anchors_ok,
    })
}

/// Closure data of a weighted cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleAnalysis {
    pub weights: Vec<u64>,
    /// Cycle length `L`, the sum of the weights.
    pub total: u64,
    /// `min_σ |Σ σ_v d_v|`.
    pub min_closure_gap: u64,
    /// A sign vector attaining the gap (`true` = rightward), first sign `+`.
    pub signs: Vec<bool>,
    /// `2 / L` as `(numerator, denominator)`.
    pub delta_threshold: (u64, u64),
}

impl CycleAnalysis {
    pub fn threshold(&self) -> Rational {
        ratio(self.delta_threshold.0 as i64, self.delta_threshold.1 as i64)
    }

    /// Least `τ` admitting a `τ`-approximate closed placement: `gap / L`.
    pub fn least_tolerance(&self) -> Rational {
        ratio(self.min_closure_gap as i64, self.total as i64)
    }

    pub fn exactly_closable(&self) -> bool {
        self.min_closure_gap == 0
    }
}

pub fn analyze_cycle(weights: &[u64]) -> Result<CycleAnalysis> {
    if weights.is_empty() {
        return Err(Error::Precondition("a cycle needs at least one edge".into()));
    }
    if weights.len() > CYCLE_EDGE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "cycle edge count",
            value: weights.len(),
            limit: CYCLE_EDGE_LIMIT,
        });
    }
    if weights.contains(&0) {
        return Err(Error::Precondition("cycle weights must be positive".into()));
    }
    let n = weights.len();
    let total: u64 = weights.iter().sum();
    // Gray-code order: consecutive masks differ in one sign
    let mut s: i64 = total as i64;
    let mut best = (total, 0u32);
    let mut prev = 0u32;
    for i in 1u32..(1u32 << (n - 1)) {
        let mask = i ^ (i >> 1);
        let k = (mask ^ prev).trailing_zeros() as usize;
        let w = 2 * weights[k + 1] as i64;
        s += if mask >> k & 1 == 1 { -w } else { w };
        prev = mask;
        best = best.min((s.unsigned_abs(), mask));
    }
    let (gap, mask) = best;
    let signs = std::iter::once(true)
        .chain((0..n - 1).map(|k| mask >> k & 1 == 0))
        .collect();
    let g = num_integer::gcd(2, total);
    Ok(CycleAnalysis {
        weights: weights.to_vec(),
        total,
        min_closure_gap: gap,
        signs,
        delta_threshold: (2 / g, total / g),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleDecision {
    pub yes: bool,
    pub analysis: CycleAnalysis,
    /// Realized edge lengths `ℓ_v ∈ [(1−δ) d_v, (1+δ) d_v]` (YES only).
    pub lengths: Vec<Rational>,
    /// Positions of `v_1..v_{n+1}` with `v_{n+1} = v_1` (YES only).
    pub positions: Vec<Rational>,
}

/// Decides whether the cycle with the given weights has a `δ`-approximate
/// closed placement on the line: YES iff `min_σ |Σ σ_v d_v| ≤ δ L`. The
/// witness absorbs the gap edge by edge, each edge taking at most `δ d_v`.
pub fn cycle_approx_decide(weights: &[u64], delta: &Rational) -> Result<CycleDecision> {
    if delta.is_negative() {
        return Err(Error::Precondition("delta must be nonnegative".into()));
    }
    let analysis = analyze_cycle(weights)?;
    let yes = int(analysis.min_closure_gap as i64) <= delta * int(analysis.total as i64);
    if !yes {
        return Ok(CycleDecision {
            yes,
            analysis,
            lengths: Vec::new(),
            positions: Vec::new(),
        });
    }
    let (lengths, positions) = match (delta.numer().to_i128(), delta.denom().to_i128()) {
        (Some(p), Some(q)) => greedy_witness_units(weights, &analysis.signs, p, q),
        _ => None,
    }
    .unwrap_or_else(|| greedy_witness(weights, &analysis.signs, delta));
    debug_assert!(positions.last().unwrap().is_zero());
    Ok(CycleDecision {
        yes,
        analysis,
        lengths,
        positions,
    })
}

/// Absorbs the closure gap edge by edge, each edge taking at most `δ d_v`.
fn greedy_witness(weights: &[u64], signs: &[bool], delta: &Rational) -> (Vec<Rational>, Vec<Rational>) {
    let signed: Rational = weights
        .iter()
        .zip(signs)
        .map(|(&w, &s)| if s { int(w as i64) } else { -int(w as i64) })
        .sum();
    // contributions c_v (signed along the orientation) must sum to -signed
    let direction = if signed.is_positive() { -Rational::one() } else { Rational::one() };
    let mut remaining = signed.abs();
    let mut lengths = Vec::with_capacity(weights.len());
    let mut positions = vec![Rational::zero()];
    for (&w, &s) in weights.iter().zip(signs) {
        let d = int(w as i64);
        let cap = delta * &d;
        let take = if remaining < cap { remaining.clone() } else { cap };
        remaining -= &take;
        let contribution = &direction * take;
        let step = if s { &d + &contribution } else { -&d + &contribution };
        lengths.push(step.abs());
        let last = positions.last().unwrap().clone();
        positions.push(last + step);
    }
    (lengths, positions)
}

/// [`greedy_witness`] in machine integers counting units of `1/q`, for
/// `δ = p/q`; `None` on overflow.
fn greedy_witness_units(weights: &[u64], signs: &[bool], p: i128, q: i128) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let mut signed: i128 = 0;
    for (&w, &s) in weights.iter().zip(signs) {
        signed = if s { signed.checked_add(w as i128)? } else { signed.checked_sub(w as i128)? };
    }
    let direction: i128 = if signed > 0 { -1 } else { 1 };
    let mut remaining = signed.abs().checked_mul(q)?;
    let to_q = |units: i128| Rational::new(units.into(), q.into());
    let mut lengths = Vec::with_capacity(weights.len());
    let mut positions = vec![Rational::zero()];
    let mut at: i128 = 0;
    for (&w, &s) in weights.iter().zip(signs) {
        let d = (w as i128).checked_mul(q)?;
        let take = remaining.min(p.checked_mul(w as i128)?);
        remaining -= take;
        let step = if s { d } else { -d } + direction * take;
        lengths.push(to_q(step.abs()));
        at = at.checked_add(step)?;
        positions.push(to_q(at));
    }
    Some((lengths, positions))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EpsDeltaAnswer {
    Yes,
    No,
    Indeterminate,
}

/// `(ε, δ)`-approximate decision for a cycle: YES when a `δ`-approximate
/// placement exists, NO when not even an `ε`-approximate one does, and
/// INDETERMINATE when the least feasible tolerance lies in `(δ, ε]`.
pub fn decide_eps_delta(weights: &[u64], eps: &Rational, delta: &Rational) -> Result<EpsDeltaAnswer> {
    if delta > eps {
        return Err(Error::Precondition("expected delta <= epsilon".into()));
    }
    let a = analyze_cycle(weights)?;
    let tau = a.least_tolerance();
    Ok(if tau <= *delta {
        EpsDeltaAnswer::Yes
    } else if tau > *eps {
        EpsDeltaAnswer::No
    } else {
        EpsDeltaAnswer::Indeterminate
    })
}

/// Simple cycle graph `v_1 - v_2 - ... - v_n - v_1` (`n ≥ 3`).
pub fn cycle_graph(weights: &[u64]) -> Result<WeightedGraph> {
    let n = weights.len();
    if n < 3 {
        return Err(Error::Precondition("a simple cycle needs at least 3 edges".into()));
    }
    let mut g = WeightedGraph::new(n);
    for (v, &w) in weights.iter().enumerate() {
        g.add_edge(v, (v + 1) % n, int(w as i64))?;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RoundingCase {
    /// Rightward, too long: floor.
    Ae1,
    /// Rightward, too short: ceil.
    Ae2,
    /// Rightward, exact: copy.
    Ae3,
    /// Leftward, too long: ceil.
    Ae4,
    /// Leftward, too short: floor.
    Ae5,
    /// Leftward, exact: copy.
    Ae6,
    /// `y_{v+1} = y_v`: no orientation; rounded to nearest.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundingStep {
    pub vertex: usize,
    pub parent: usize,
    pub case: RoundingCase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundingReport {
    pub x: Realization<Rational>,
    pub verified: bool,
    pub steps: Vec<RoundingStep>,
    /// Vertices where a floor/ceil case met an already integral `y_{v+1}`.
    pub failures: Vec<usize>,
}

fn near_integer(y: &Rational) -> bool {
    (y - y.round()).abs() < ratio(1, 1_000_000_000_000)
}

/// Rounds an approximate line realization of an integer-weighted graph edge by
/// edge along the depth-first order, using the six orientation/length cases.
/// Roots go to their anchor, or to the nearest integer.
pub fn round_approximate<T: Scalar>(g: &WeightedGraph, y: &Realization<T>) -> Result<RoundingReport> {
    if g.edges().iter().any(|e| !is_integral(&e.weight)) {
        return Err(Error::Precondition("rounding needs integer weights".into()));
    }
    if y.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: y.dimension(),
        });
    }
    if y.len() < g.vertex_count() {
        return Err(Error::MissingPosition(y.len() + 1));
    }
    let yq: Vec<Rational> = y
        .line_positions()
        .iter()
        .map(|p| p.to_rational().ok_or_else(|| Error::Precondition("non-finite coordinate".into())))
        .collect::<Result<_>>()?;
    let mut x = vec![Rational::zero(); g.vertex_count()];
    let mut steps = Vec::new();
    let mut failures = Vec::new();
    for comp in g.components() {
        for step in dfs_order(g, &comp) {
            let v = step.vertex;
            let Some((p, d)) = step.parent else {
                x[v] = g.anchor(v).map_or_else(|| yq[v].round(), |a| a[0].clone());
                continue;
            };
            let (yv, yp) = (&yq[v], &yq[p]);
            let len = (yv - yp).abs();
            let case = match (yv.cmp(yp), len.cmp(&d)) {
                (std::cmp::Ordering::Greater, std::cmp::Ordering::Greater) => RoundingCase::Ae1,
                (std::cmp::Ordering::Greater, std::cmp::Ordering::Less) => RoundingCase::Ae2,
                (std::cmp::Ordering::Greater, std::cmp::Ordering::Equal) => RoundingCase::Ae3,
                (std::cmp::Ordering::Less, std::cmp::Ordering::Greater) => RoundingCase::Ae4,
                (std::cmp::Ordering::Less, std::cmp::Ordering::Less) => RoundingCase::Ae5,
                (std::cmp::Ordering::Less, std::cmp::Ordering::Equal) => RoundingCase::Ae6,
                (std::cmp::Ordering::Equal, _) => RoundingCase::Degenerate,
            };
            x[v] = match case {
                RoundingCase::Ae1 | RoundingCase::Ae5 => yv.floor(),
                RoundingCase::Ae2 | RoundingCase::Ae4 => yv.ceil(),
                RoundingCase::Ae3 | RoundingCase::Ae6 => yv.clone(),
                RoundingCase::Degenerate => yv.round(),
            };
            let rounding_case = !matches!(case, RoundingCase::Ae3 | RoundingCase::Ae6);
            if rounding_case && near_integer(yv) {
                failures.push(v);
            }
            steps.push(RoundingStep { vertex: v, parent: p, case });
        }
    }
    let x = Realization::line(x);
    let verified = verify_realization(g, &x, &Rational::zero())?.valid;
    Ok(RoundingReport {
        x,
        verified,
        steps,
        failures,
    })
}

/// `α_v = 1 − |y_{v+1} − y_v| / d_v` for each edge of a cycle placement
/// (`positions` has `n + 1` entries, closing back on the first).
pub fn relative_errors(weights: &[u64], positions: &[Rational]) -> Vec<Rational> {
    weights
        .iter()
        .enumerate()
        .map(|(v, &w)| Rational::one() - (&positions[v + 1] - &positions[v]).abs() / int(w as i64))
        .collect()
}

/// `Φ = Σ_{v ∈ I} α_v` over the leftward edges `I`.
pub fn phi(alphas: &[Rational], leftward: &[bool]) -> Rational {
    alphas
        .iter()
        .zip(leftward)
        .filter(|(_, &l)| l)
        .map(|(a, _)| a.clone())
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetCycleSummary {
    pub cycle_count: usize,
    pub max_length: Rational,
    /// `2 / L_max`.
    pub threshold: Rational,
    /// Indices of the greedy cover (every longest cycle first).
    pub cover: Vec<usize>,
    pub truncated: bool,
}

/// Longest simple cycle, the induced threshold `2 / L` and a greedy cycle
/// cover containing every longest cycle.
pub fn analyze_gadget_cycles(g: &WeightedGraph, max_count: usize) -> Result<GadgetCycleSummary> {
    let listing = enumerate_simple_cycles(g, max_count);
    let Some(max_length) = listing.max_length().cloned() else {
        return Err(Error::Precondition("graph has no cycles".into()));
    };
    let edge_sets: Vec<BTreeSet<(usize, usize)>> = (0..listing.len())
        .map(|i| listing.cycle_edges(i).map(|(u, v)| (u.min(v), u.max(v))).collect())
        .collect();
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut cover: Vec<usize> = Vec::new();
    for (i, l) in listing.lengths.iter().enumerate() {
        if *l == max_length {
            cover.push(i);
            covered.extend(edge_sets[i].iter().copied());
        }
    }
    let on_cycles: BTreeSet<(usize, usize)> = edge_sets.iter().flatten().copied().collect();
    while covered.len() < on_cycles.len() {
        let (best, gain) = edge_sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.difference(&covered).count()))
            .max_by_key(|&(i, gain)| (gain, std::cmp::Reverse(i)))
            .expect("nonempty listing");
        if gain == 0 {
            break;
        }
        cover.push(best);
        covered.extend(edge_sets[best].iter().copied());
    }
    Ok(GadgetCycleSummary {
        cycle_count: listing.len(),
        threshold: int(2) / &max_length,
        max_length,
        cover,
        truncated: listing.truncated,
    })
}

/// Rational value of a decimal or fraction string (for `--eps`, `--delta`).
pub fn parse_tolerance(s: &str) -> Result<Rational> {
    crate::scalar::parse_rational(s).ok_or_else(|| Error::Precondition(format!("bad tolerance `{s}`")))
}

/// Largest absolute coordinate, as `f64`.
pub fn max_abs_coordinate(x: &Realization<Rational>) -> f64 {
    x.line_positions()
        .iter()
        .map(|p| p.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_edges;
    use crate::realization::line_from_ints;
    use crate::reduction::{reduce_partition, PartitionInstance};
    use crate::scalar::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn verify_approx_examples() {
        let g = graph_from_edges(2, &[(1, 2, 8)]).unwrap();
        let x = line_from_ints(&[0, 9]);
        let r = verify_approx(&g, &x, &ratio(1, 8)).unwrap();
        assert!(r.within);
        assert_eq!(r.epsilon_exact, Some(ratio(1, 8)));
        assert!(!verify_approx(&g, &x, &ratio(1, 9)).unwrap().within);
        let exact = verify_approx(&g, &line_from_ints(&[0, 8]), &int(0)).unwrap();
        assert!(exact.within);
        assert_eq!(exact.epsilon_achieved, 0.0);
        let xf = Realization::line(vec![0.0f64, 9.0]);
        assert!(verify_approx(&g, &xf, &ratio(1, 8)).unwrap().within);
        assert!(verify_approx(&g, &x, &int(1)).is_err());
    }

    #[test]
    fn gray_order_finds_the_smallest_gap() {
        for w in [vec![5u64, 3, 2, 7, 1], vec![8, 9], vec![4], vec![6, 6, 1, 1, 2, 9]] {
            let n = w.len();
            let brute = (0u32..1 << (n - 1))
                .map(|m| {
                    let s: i64 = w[0] as i64
                        + (1..n).map(|k| if m >> (k - 1) & 1 == 1 { -(w[k] as i64) } else { w[k] as i64 }).sum::<i64>();
                    (s.unsigned_abs(), m)
                })
                .min()
                .unwrap();
            let a = analyze_cycle(&w).unwrap();
            assert_eq!(a.min_closure_gap, brute.0);
            let expect: Vec<bool> = std::iter::once(true).chain((0..n - 1).map(|k| brute.1 >> k & 1 == 0)).collect();
            assert_eq!(a.signs, expect);
        }
    }

    #[test]
    fn witness_paths_agree() {
        for (w, delta) in [(vec![8u64, 9], ratio(1, 8)), (vec![3, 5, 9], ratio(1, 2)), (vec![1, 1, 1], ratio(2, 3))] {
            let a = analyze_cycle(&w).unwrap();
            let (p, q) = (delta.numer().to_i128().unwrap(), delta.denom().to_i128().unwrap());
            assert_eq!(greedy_witness_units(&w, &a.signs, p, q).unwrap(), greedy_witness(&w, &a.signs, &delta));
        }
    }

    #[test]
    fn cycle_decide_examples() {
        let d = cycle_approx_decide(&[8, 9], &ratio(1, 8)).unwrap();
        assert!(d.yes);
        assert_eq!(d.analysis.min_closure_gap, 1);
        assert_eq!(d.positions, vec![int(0), int(9), int(0)]);
        let (g, _) = reduce_partition(&PartitionInstance::new(vec![8, 9]).unwrap()).unwrap();
        let x = Realization::line(d.positions.clone());
        assert!(verify_approx(&g, &x, &ratio(1, 8)).unwrap().within);
        assert!(!cycle_approx_decide(&[8, 9], &ratio(1, 34)).unwrap().yes);
        assert!(cycle_approx_decide(&[1, 2, 3], &int(0)).unwrap().yes);
        assert_eq!(analyze_cycle(&[1, 2, 3]).unwrap().threshold(), ratio(1, 3));
        assert!(cycle_approx_decide(&[1; 25], &int(0)).is_err());
    }

    #[test]
    fn witness_stays_in_band() {
        for weights in [vec![3u64, 5, 9], vec![1, 1, 1], vec![2, 7, 4, 4], vec![10, 1]] {
            let delta = ratio(1, 2);
            let d = cycle_approx_decide(&weights, &delta).unwrap();
            if !d.yes {
                continue;
            }
            for (l, &w) in d.lengths.iter().zip(&weights) {
                let w = int(w as i64);
                assert!(*l >= (int(1) - &delta) * &w && *l <= (int(1) + &delta) * &w);
            }
            assert!(d.positions.last().unwrap().is_zero());
        }
    }

    #[test]
    fn eps_delta_answers() {
        assert_eq!(decide_eps_delta(&[8, 9], &ratio(1, 4), &ratio(1, 8)).unwrap(), EpsDeltaAnswer::Yes);
        assert_eq!(decide_eps_delta(&[8, 9], &ratio(1, 40), &ratio(1, 50)).unwrap(), EpsDeltaAnswer::No);
        assert_eq!(decide_eps_delta(&[8, 9], &ratio(1, 10), &ratio(1, 20)).unwrap(), EpsDeltaAnswer::Indeterminate);
        assert!(decide_eps_delta(&[8, 9], &ratio(1, 20), &ratio(1, 10)).is_err());
    }

    #[test]
    fn rounding_examples() {
        let g = graph_from_edges(2, &[(1, 2, 1)]).unwrap();
        for (y, case, x) in [("1.1", RoundingCase::Ae1, 1), ("0.95", RoundingCase::Ae2, 1), ("-1.1", RoundingCase::Ae4, -1)] {
            let r = round_approximate(&g, &Realization::line(vec![int(0), q(y)])).unwrap();
            assert_eq!(r.steps[0].case, case);
            assert_eq!(r.x, line_from_ints(&[0, x]));
            assert!(r.verified);
            assert!(r.failures.is_empty());
        }
        let r = round_approximate(&g, &Realization::line(vec![int(0), q("-0.9")])).unwrap();
        assert_eq!(r.steps[0].case, RoundingCase::Ae5);
        assert_eq!(r.x, line_from_ints(&[0, -1]));
    }

    #[test]
    fn rounding_is_identity_on_exact_integers() {
        let g = cycle_graph(&[1, 2, 3]).unwrap();
        let x = line_from_ints(&[4, 5, 7]);
        let r = round_approximate(&g, &x).unwrap();
        assert_eq!(r.x, x);
        assert!(r.steps.iter().all(|s| matches!(s.case, RoundingCase::Ae3 | RoundingCase::Ae6)));
    }

    #[test]
    fn rounding_reports_integral_failure() {
        let g = graph_from_edges(3, &[(1, 2, 2), (2, 3, 2)]).unwrap();
        // second step is too long yet lands on an integer
        let y = Realization::line(vec![int(0), q("2.5"), int(5)]);
        let r = round_approximate(&g, &y).unwrap();
        assert_eq!(r.failures, vec![2]);
    }

    #[test]
    fn mixed_sign_errors_can_defeat_rounding() {
        let g = cycle_graph(&[1, 2, 3]).unwrap();
        // first edge shrunk rightward, second stretched rightward
        let y = Realization::line(vec![int(0), q("0.9"), q("2.95")]);
        let r = round_approximate(&g, &y).unwrap();
        assert!(!r.verified);
    }

    #[test]
    fn phi_and_alphas() {
        let pos = vec![int(0), q("8.5"), int(0)];
        let a = relative_errors(&[8, 9], &pos);
        assert_eq!(a, vec![-ratio(1, 16), ratio(1, 18)]);
        assert_eq!(phi(&a, &[false, true]), ratio(1, 18));
    }

    #[test]
    fn gadget_cycle_examples() {
        let tri = graph_from_edges(3, &[(1, 2, 1), (2, 3, 2), (1, 3, 3)]).unwrap();
        let s = analyze_gadget_cycles(&tri, 100).unwrap();
        assert_eq!(s.max_length, int(6));
        assert_eq!(s.threshold, ratio(1, 3));
        let mut lit = WeightedGraph::new(2);
        for _ in 0..2 {
            let s = lit.add_vertex(None);
            let sb = lit.add_vertex(None);
            lit.add_edge(0, s, int(1)).unwrap();
            lit.add_edge(0, sb, int(1)).unwrap();
            lit.add_edge(s, sb, int(2)).unwrap();
        }
        lit.add_edge(0, 1, int(2)).unwrap();
        let s = analyze_gadget_cycles(&lit, 100).unwrap();
        assert_eq!(s.max_length, int(4));
        assert_eq!(s.cover.len(), 2);
        assert!(analyze_gadget_cycles(&graph_from_edges(2, &[(1, 2, 1)]).unwrap(), 10).is_err());
    }

    #[test]
    fn even_cycles_agree_with_exact_below_threshold() {
        for weights in [vec![1u64, 1], vec![2, 3, 5], vec![3, 3, 4], vec![1, 2, 2, 3], vec![4, 6]] {
            let a = analyze_cycle(&weights).unwrap();
            let just_below = a.threshold() - ratio(1, 1000);
            let d = cycle_approx_decide(&weights, &just_below).unwrap();
            if a.total.is_multiple_of(2) {
                assert_eq!(d.yes, a.exactly_closable(), "{weights:?}");
            }
        }
        // odd total: approximate closure below 2/L without exact closure
        let d = cycle_approx_decide(&[1, 1, 1], &ratio(1, 2)).unwrap();
        assert!(d.yes && !d.analysis.exactly_closable());
    }

    #[test]
    fn verify_approx_is_monotone() {
        let g = cycle_graph(&[3, 4, 5]).unwrap();
        let y = Realization::line(vec![int(0), q("3.2"), q("7.1")]);
        let base = verify_approx(&g, &y, &ratio(1, 10)).unwrap();
        for k in 1..20 {
            let eps = ratio(1, 10) + ratio(k, 40);
            if eps < int(1) && base.within {
                assert!(verify_approx(&g, &y, &eps).unwrap().within);
            }
        }
    }
}
