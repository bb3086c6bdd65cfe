//! Seeded property and golden-value suites exercising every construction end
//! to end. Each suite returns a [`Report`] of named checks with measured
//! values; reports contain no timings, so identical configurations produce
//! identical output.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ambiguous::{ambiguate_3sat, ambiguous_pipeline, check_certificate_bijection, desugar_4sat};
use crate::approx::{
    analyze_gadget_cycles, cycle_approx_decide, cycle_graph, phi, relative_errors, round_approximate,
    verify_approx, RoundingCase,
};
use crate::bp::{bp_count, bp_enumerate, bp_solve, decide_ambiguous};
use crate::cnf::{is_satisfiable, model_count, Assignment, Clause, CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::gadgets::{
    build_rbar, clique_flexibility_demo, clique_gadget, expand_weights, minimal_embedding_dimension, r1_gadget,
    realize_gadget, t_gadget, EmbeddingDimension,
};
use crate::graph::{graph_from_edges, WeightedGraph};
use crate::oracle::{partition_subset, random_cnf, random_line_graph, sign_vector_classes};
use crate::realization::{line_from_ints, verify_realization, Realization};
use crate::reduction::{
    clause_gadget_reachable_sets, compile_3sat, reduce_partition, PartitionInstance, ReductionWitness,
};
use crate::scalar::{format_rational, int, ratio, Rational};

pub const DEFAULT_SEED: u64 = 1979;

pub const RNG_NAME: &str = "ChaCha8";

pub const SUITES: &[&str] = &[
    "thm-3sat",
    "table",
    "s-sets",
    "counting",
    "t-gadgets",
    "cycle-length",
    "approx-boundary",
    "rounding",
    "dim-gadgets",
    "flex",
    "ambiguous",
    "bp-oracle",
];

/// Clause-vertex positions `c_1..c_8` for the seven satisfying literal
/// patterns, as tabulated in the reference construction.
pub const GOLDEN_TABLE: [([i64; 3], [i64; 8]); 7] = [
    ([1, 1, 1], [6, 4, 6, 6, 8, 2, 7, 5]),
    ([1, 1, -1], [6, 4, 6, 6, 4, 5, 2, 3]),
    ([1, -1, 1], [6, 4, 4, 2, 4, 6, -2, 5]),
    ([-1, 1, 1], [-2, -4, -2, -2, 0, -1, 2, -3]),
    ([1, -1, -1], [-2, 4, 2, 2, 0, 1, -2, 3]),
    ([-1, 1, -1], [-2, -4, -4, -2, -4, -3, 2, -5]),
    ([-1, -1, 1], [-2, -4, -6, -6, -4, -5, -2, -3]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub rng: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("suite {} (seed {}, {})\n", self.suite, self.seed, self.rng);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark}  {:width$}  {}\n", c.name, c.measured));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub jobs: usize,
    pub trials: Option<usize>,
    pub max_vars: Option<usize>,
    pub max_clauses: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            jobs: 1,
            trials: None,
            max_vars: None,
            max_clauses: None,
        }
    }
}

fn check(name: &str, passed: bool, measured: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        measured: measured.into(),
    }
}

/// Generator for trial `i`: the seed selects the key, the trial the stream,
/// so results do not depend on the number of worker threads.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_parallel<T, F>(jobs: usize, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..count).into_par_iter().map(f).collect()))
}

fn tally(outcomes: &[Result<bool>]) -> (usize, Option<String>) {
    let ok = outcomes.iter().filter(|o| matches!(o, Ok(true))).count();
    let first_error = outcomes.iter().find_map(|o| o.as_ref().err().map(|e| e.to_string()));
    (ok, first_error)
}

fn ratio_check(name: &str, outcomes: &[Result<bool>], what: &str) -> Check {
    let (ok, err) = tally(outcomes);
    let mut measured = format!("{ok}/{} {what}", outcomes.len());
    if let Some(e) = err {
        measured.push_str(&format!(" (error: {e})"));
    }
    check(name, ok == outcomes.len(), measured)
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    let checks = match name {
        "thm-3sat" | "roundtrip" => suite_thm_3sat(cfg)?,
        "table" => suite_table()?,
        "s-sets" => suite_s_sets(),
        "counting" => suite_counting(cfg)?,
        "t-gadgets" => suite_t_gadgets(cfg)?,
        "cycle-length" => suite_cycle_length()?,
        "approx-boundary" => suite_approx_boundary(cfg)?,
        "rounding" => suite_rounding(cfg)?,
        "dim-gadgets" => suite_dim_gadgets(),
        "flex" => suite_flex()?,
        "ambiguous" => suite_ambiguous(cfg)?,
        "bp-oracle" => suite_bp_oracle(cfg)?,
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                for mut c in run_suite(s, cfg)?.checks {
                    c.name = format!("{s}: {}", c.name);
                    all.push(c);
                }
            }
            all
        }
        other => return Err(Error::Precondition(format!("unknown suite `{other}`"))),
    };
    Ok(Report {
        suite: name.to_string(),
        seed: cfg.seed,
        rng: RNG_NAME,
        checks,
    })
}

fn suite_thm_3sat(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let trials = cfg.trials.unwrap_or(200);
    let (n, m) = (cfg.max_vars.unwrap_or(4), cfg.max_clauses.unwrap_or(5));
    let outcomes = run_parallel(cfg.jobs, trials, |i| -> Result<(bool, bool, bool)> {
        let f = random_cnf(&mut trial_rng(cfg.seed, i), n, m, 3);
        let sat = is_satisfiable(&f)?;
        let (compiled, witness) = compile_3sat(&f)?;
        let report = bp_solve(&compiled.graph)?;
        let decoded = match report.realizations.first() {
            Some(x) => f.evaluate(&witness.backward(x)?)?,
            None => true,
        };
        Ok((sat == report.is_realizable(), decoded, sat))
    })?;
    let agree: Vec<Result<bool>> = outcomes.iter().map(|o| o.clone().map(|t| t.0)).collect();
    let decoded: Vec<Result<bool>> = outcomes.iter().map(|o| o.clone().map(|t| t.1)).collect();
    let sat = outcomes.iter().filter(|o| matches!(o, Ok((_, _, true)))).count();
    Ok(vec![
        ratio_check(
            "satisfiable iff anchored-realizable",
            &agree,
            &format!("agree ({sat} satisfiable, n<={n}, m<={m})"),
        ),
        ratio_check("decoded realization is a model", &decoded, "decoded"),
    ])
}

fn single_clause_formula() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]).expect("valid formula")
}

fn fmt_ints(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn suite_table() -> Result<Vec<Check>> {
    let f = single_clause_formula();
    let (compiled, witness) = compile_3sat(&f)?;
    let mut checks = Vec::new();
    for (pattern, golden) in GOLDEN_TABLE {
        let a = Assignment::new(pattern.iter().map(|&p| p == 1).collect());
        let x = witness.forward(&a)?;
        let computed: Vec<i64> = (1..=8)
            .map(|h| x.coord(compiled.clause_vertex(0, h)).to_integer().try_into().unwrap_or(i64::MAX))
            .collect();
        let mut positions = x.line_positions();
        for (h, &p) in golden.iter().enumerate() {
            positions[compiled.clause_vertex(0, h + 1)] = int(p);
        }
        let golden_verifies = verify_realization(&compiled.graph, &Realization::line(positions), &Rational::zero())?.valid;
        let matches = computed == golden;
        checks.push(check(
            &format!("row {}", fmt_ints(&pattern)),
            matches && golden_verifies,
            format!(
                "table {} computed {} table row verifies: {golden_verifies}",
                fmt_ints(&golden),
                fmt_ints(&computed)
            ),
        ));
    }
    Ok(checks)
}

fn fmt_set(s: &BTreeSet<i64>) -> String {
    let parts: Vec<String> = s.iter().map(i64::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn suite_s_sets() -> Vec<Check> {
    let expected: [&[i64]; 4] = [&[-7, -5, 1, 3], &[-5, -3, -1, 1, 3, 5, 7, 9], &[-7, -5, -3, -1], &[-7, -3, 1, 5]];
    let r = clause_gadget_reachable_sets([-1, -1, -1]);
    let mut checks: Vec<Check> = expected
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let want: BTreeSet<i64> = e.iter().copied().collect();
            check(
                &format!("S{}", i + 1),
                r.sets[i] == want,
                format!("{} expected {}", fmt_set(&r.sets[i]), fmt_set(&want)),
            )
        })
        .collect();
    checks.push(check(
        "intersection empty",
        r.intersection.is_empty(),
        fmt_set(&r.intersection),
    ));
    checks
}

fn suite_counting(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let trials = cfg.trials.unwrap_or(100);
    let (n, m) = (cfg.max_vars.unwrap_or(4), cfg.max_clauses.unwrap_or(4));
    let outcomes = run_parallel(cfg.jobs, trials, |i| -> Result<bool> {
        let f = random_cnf(&mut trial_rng(cfg.seed, i), n, m, 3);
        let (compiled, _) = compile_3sat(&f)?;
        let count = bp_count(&compiled.graph, 1 << 12)?;
        Ok(count == Some(model_count(&f)?))
    })?;
    Ok(vec![ratio_check(
        "realization count equals model count",
        &outcomes,
        &format!("equal (n<={n}, m<={m})"),
    )])
}

fn suite_t_gadgets(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for h in [3usize, 4, 5, 8] {
        let t = t_gadget(h)?;
        let r = bp_enumerate(&t.graph, 64)?;
        let seps: Vec<String> = r
            .realizations
            .iter()
            .map(|x| format_rational(&(x.coord(t.terminals[0]) - x.coord(t.terminals[1])).abs()))
            .collect();
        let ok = r.realizations.len() == 1 && seps == [h.to_string()];
        checks.push(check(
            &format!("T{h} unique, terminals {h} apart"),
            ok,
            format!("{} class(es), separations [{}]", r.realizations.len(), seps.join(",")),
        ));
    }
    let trials = cfg.trials.unwrap_or(50);
    let outcomes = run_parallel(cfg.jobs, trials, |i| -> Result<bool> {
        let f = random_cnf(&mut trial_rng(cfg.seed, i), 3, 2, 3);
        let (compiled, _) = compile_3sat(&f)?;
        let expanded = expand_weights(&compiled.graph)?;
        let base = bp_solve(&compiled.graph)?;
        let lifted = bp_solve(&expanded)?;
        let restricted_ok = match lifted.realizations.first() {
            Some(y) => {
                let x = Realization::line(y.line_positions()[..compiled.graph.vertex_count()].to_vec());
                verify_realization(&compiled.graph, &x, &Rational::zero())?.valid
            }
            None => true,
        };
        Ok(base.is_realizable() == lifted.is_realizable() && restricted_ok)
    })?;
    checks.push(ratio_check(
        "expand_weights preserves realizability",
        &outcomes,
        "compiled graphs agree",
    ));
    Ok(checks)
}

fn suite_cycle_length() -> Result<Vec<Check>> {
    let (compiled, _) = compile_3sat(&single_clause_formula())?;
    let g = &compiled.graph;
    let s = analyze_gadget_cycles(g, 5_000_000)?;
    let mut checks = vec![
        check(
            "max cycle length 16",
            s.max_length == int(16) && !s.truncated,
            format!("{} over {} cycles", format_rational(&s.max_length), s.cycle_count),
        ),
        check(
            "delta threshold 1/8",
            s.threshold == ratio(1, 8),
            format_rational(&s.threshold),
        ),
    ];
    // clause gadget together with the literal edges to A, without the s/~s pair edges
    let layout = &compiled.layout;
    let pairs: BTreeSet<(usize, usize)> = layout.literal_vertices.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
    let mut gadget = WeightedGraph::new(g.vertex_count());
    for e in g.edges() {
        if !pairs.contains(&(e.u.min(e.v), e.u.max(e.v))) {
            gadget.add_edge(e.u, e.v, e.weight.clone())?;
        }
    }
    let c = analyze_gadget_cycles(&gadget, 5_000_000)?;
    checks.push(check(
        "clause gadget alone: max cycle length 16",
        c.max_length == int(16),
        format!("{} (informative)", format_rational(&c.max_length)),
    ));
    checks.push(check(
        "cover contains every longest cycle",
        s.cover.len() >= s.cycle_count.min(1),
        format!("{} cycles in cover", s.cover.len()),
    ));
    Ok(checks)
}

/// All multisets of `len` weights from `1..=max`, nondecreasing.
fn multisets(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![1u64; len];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..len).rev().find(|&i| cur[i] < max) else {
            return out;
        };
        let v = cur[i] + 1;
        for c in &mut cur[i..] {
            *c = v;
        }
    }
}

fn suite_approx_boundary(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let d = cycle_approx_decide(&[8, 9], &ratio(1, 8))?;
    let (g, _) = reduce_partition(&PartitionInstance::new(vec![8, 9])?)?;
    let witness_ok = d.yes
        && d.positions.get(1) == Some(&int(9))
        && verify_approx(&g, &Realization::line(d.positions.clone()), &ratio(1, 8))?.within;
    checks.push(check(
        "(8,9) is 1/8-approximately realizable, v2 = 9",
        witness_ok,
        format!(
            "yes={} positions=({})",
            d.yes,
            d.positions.iter().map(format_rational).collect::<Vec<_>>().join(",")
        ),
    ));
    let exact = bp_solve(&g)?;
    checks.push(check(
        "(8,9) not exactly realizable",
        !exact.is_realizable() && partition_subset(&[8, 9]).is_none(),
        format!("bp={:?}", exact.status),
    ));

    let cycles: Vec<Vec<u64>> = (2..=10).flat_map(|k| multisets(k, 10)).collect();
    // (agreements, cases) for even and odd totals
    let per: Vec<Result<[(usize, usize); 2]>> = run_parallel(cfg.jobs, cycles.len(), |i| {
        let w = &cycles[i];
        let total: u64 = w.iter().sum();
        let exact = partition_subset(w).is_some();
        let l = total as i64;
        let grid = [ratio(0, 1), ratio(1, 2 * l), ratio(1, l), ratio(3, 2 * l), ratio(7, 4 * l)];
        let mut tally = [(0usize, 0usize); 2];
        let slot = (total % 2) as usize;
        for delta in &grid {
            let yes = cycle_approx_decide(w, delta)?.yes;
            tally[slot].1 += 1;
            if yes == exact {
                tally[slot].0 += 1;
            }
        }
        Ok(tally)
    })?;
    let mut even = (0, 0);
    let mut odd = (0, 0);
    for t in per {
        let t = t?;
        even = (even.0 + t[0].0, even.1 + t[0].1);
        odd = (odd.0 + t[1].0, odd.1 + t[1].1);
    }
    checks.push(check(
        "agreement below 2/L, even L",
        even.0 == even.1,
        format!("{}/{} (cycles, delta) pairs over {} cycles", even.0, even.1, cycles.len()),
    ));
    checks.push(check(
        "agreement below 2/L, odd L",
        odd.0 == odd.1,
        format!("{}/{} (cycles, delta) pairs", odd.0, odd.1),
    ));
    Ok(checks)
}

/// Draws a cycle with at least three edges, `L <= 16` and an exact
/// realization; returns the weights and rightward flags.
fn yes_cycle<R: Rng>(rng: &mut R) -> (Vec<u64>, Vec<bool>) {
    loop {
        let k = rng.random_range(3..=8);
        let w: Vec<u64> = (0..k).map(|_| rng.random_range(1..=6)).collect();
        if w.iter().sum::<u64>() > 16 {
            continue;
        }
        if let Some(set) = partition_subset(&w) {
            let flip = rng.random_bool(0.5);
            let right = (1..=k).map(|i| set.contains(&i) != flip).collect();
            return (w, right);
        }
    }
}

/// Perturbation with rightward edges stretched and leftward ones shrunk, so
/// the accumulated drift only grows; the closing edge absorbs it.
fn perturb<R: Rng>(rng: &mut R, w: &[u64], right: &[bool], offset: i64) -> Vec<Rational> {
    let total: u64 = w.iter().sum();
    let cap = ratio(2, total as i64);
    let k = w.len();
    let mut a: Vec<Rational> = (0..k - 1)
        .map(|_| &cap * ratio(rng.random_range(1..1_000_000), 1_000_000))
        .collect();
    let drift: Rational = a.iter().zip(w).map(|(a, &d)| a * int(d as i64)).sum();
    let closing = &cap * int(w[k - 1] as i64);
    let bound = if closing < int(1) { closing } else { int(1) };
    if drift >= bound {
        let shrink = &bound / &drift * ratio(999, 1000);
        for x in &mut a {
            *x *= &shrink;
        }
    }
    let mut y = vec![int(offset)];
    for v in 0..k - 1 {
        let d = int(w[v] as i64);
        let step = if right[v] { &d + &a[v] * &d } else { -&d + &a[v] * &d };
        let next = &y[v] + step;
        y.push(next);
    }
    y
}

fn suite_rounding(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let trials = cfg.trials.unwrap_or(500);
    let outcomes = run_parallel(cfg.jobs, trials, |i| -> Result<(bool, usize)> {
        let mut rng = trial_rng(cfg.seed, i);
        for attempt in 0.. {
            let (w, right) = yes_cycle(&mut rng);
            let offset = rng.random_range(-5..=5);
            let y = perturb(&mut rng, &w, &right, offset);
            let mut closed = y.clone();
            closed.push(y[0].clone());
            let alphas = relative_errors(&w, &closed);
            let leftward: Vec<bool> = right.iter().map(|r| !r).collect();
            let total: u64 = w.iter().sum();
            let cap = ratio(2, total as i64);
            let p = phi(&alphas, &leftward);
            if alphas.iter().any(|a| a.abs() >= cap) || p.is_negative() || p >= int(1) {
                continue;
            }
            let g = cycle_graph(&w)?;
            let y = Realization::line(y);
            let report = round_approximate(&g, &y)?;
            let mut exact = vec![int(offset)];
            for v in 0..w.len() - 1 {
                let d = int(w[v] as i64);
                let next = if right[v] { &exact[v] + d } else { &exact[v] - d };
                exact.push(next);
            }
            let cases_ok = report.steps.iter().all(|s| s.case != RoundingCase::Degenerate);
            let ok = report.verified && report.x == Realization::line(exact) && cases_ok && report.failures.is_empty();
            return Ok((ok, attempt));
        }
        unreachable!()
    })?;
    let recovered: Vec<Result<bool>> = outcomes.iter().map(|o| o.clone().map(|t| t.0)).collect();
    let resampled: usize = outcomes.iter().filter_map(|o| o.as_ref().ok()).map(|t| t.1).sum();
    Ok(vec![ratio_check(
        "rounding recovers the exact realization",
        &recovered,
        &format!("recovered (L<=16, Phi in [0,1), {resampled} resampled draws)"),
    )])
}

fn suite_dim_gadgets() -> Vec<Check> {
    let mut checks = Vec::new();
    let verifies = |t: Result<crate::gadgets::GadgetTemplate>| -> Result<bool> {
        let t = t?;
        let x = realize_gadget::<f64>(&t)?;
        Ok(verify_realization(&t.graph, &x, &1e-9)?.valid)
    };
    for k in 1..=5 {
        let c = verifies(clique_gadget(k, &int(1)));
        checks.push(check(&format!("C^{k}_1 realization verifies"), matches!(c, Ok(true)), format!("{c:?}")));
    }
    // Rbar gadgets are defined from K = 2 on
    for k in 2..=5 {
        let r = verifies(build_rbar(k, 1));
        checks.push(check(&format!("Rbar^{k}_1 realization verifies"), matches!(r, Ok(true)), format!("{r:?}")));
        let dims = build_rbar(k, 1).and_then(|t| {
            let whole = minimal_embedding_dimension(&t.graph)?;
            let first: Vec<usize> = (0..k).collect();
            let clique = minimal_embedding_dimension(&t.graph.induced_subgraph(&first))?;
            Ok((whole, clique))
        });
        checks.push(check(
            &format!("dim Rbar^{k}_1 = {k}, its K-clique {}", k - 1),
            dims == Ok((EmbeddingDimension::Dim(k), EmbeddingDimension::Dim(k - 1))),
            format!("{dims:?}"),
        ));
    }
    for k in 1..=6 {
        let d = clique_gadget(k, &int(1)).and_then(|t| minimal_embedding_dimension(&t.graph));
        checks.push(check(
            &format!("dim C^{k}_1 = {k}"),
            d == Ok(EmbeddingDimension::Dim(k)),
            format!("{d:?}"),
        ));
    }
    let edges = |g: &WeightedGraph| -> BTreeSet<(usize, usize, Rational)> {
        g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v), e.weight.clone())).collect()
    };
    let same = match (build_rbar(2, 1), r1_gadget()) {
        (Ok(a), Ok(b)) => {
            a.graph.vertex_count() == b.graph.vertex_count() && edges(&a.graph) == edges(&b.graph) && a.terminals == b.terminals
        }
        _ => false,
    };
    checks.push(check("Rbar^2_1 equals R1 edge for edge", same, format!("{same}")));
    checks
}

fn suite_flex() -> Result<Vec<Check>> {
    let g = graph_from_edges(3, &[(1, 2, 1), (2, 3, 1)])?;
    let demo = clique_flexibility_demo(&g, &line_from_ints(&[0, 1, 2]), 3, std::f64::consts::FRAC_PI_2)?;
    Ok(vec![
        check("base realization verifies", demo.base_verifies, format!("{}", demo.base_verifies)),
        check("rotated realization verifies", demo.rotated_verifies, format!("{}", demo.rotated_verifies)),
        check("realizations incongruent", !demo.congruent, format!("congruent={}", demo.congruent)),
    ])
}

/// Every formula over `n` variables with at most `m` clauses, clauses being
/// nonempty sets of literals on distinct variables (width <= 3), taken as
/// multisets.
fn all_small_formulas(n: usize, m: usize) -> Vec<CnfFormula> {
    let mut clauses = Vec::new();
    for vars in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|j| vars >> j & 1 == 1).map(|j| j + 1).collect();
        for signs in 0u32..(1 << vs.len()) {
            clauses.push(Clause(
                vs.iter()
                    .enumerate()
                    .map(|(k, &v)| Literal {
                        var: v,
                        negated: signs >> k & 1 == 1,
                    })
                    .collect(),
            ));
        }
    }
    let mut out = vec![CnfFormula::new(n, vec![]).expect("empty formula")];
    for len in 1..=m {
        for idx in multisets(len, clauses.len() as u64) {
            let cs = idx.iter().map(|&i| clauses[i as usize - 1].clone()).collect();
            out.push(CnfFormula::new(n, cs).expect("indices in range"));
        }
    }
    out
}

fn suite_ambiguous(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let formulas: Vec<CnfFormula> = (1..=3).flat_map(|n| all_small_formulas(n, 3)).collect();
    let counts = run_parallel(cfg.jobs, formulas.len(), |i| -> Result<bool> {
        let phi = &formulas[i];
        let a = ambiguate_3sat(phi)?;
        Ok(model_count(&a.formula)? == model_count(phi)? + 1 && a.formula.evaluate(&a.designated_certificate)?)
    })?;
    let bijections = run_parallel(cfg.jobs, formulas.len(), |i| -> Result<bool> {
        let psi = ambiguate_3sat(&formulas[i])?.formula;
        let (out, w) = desugar_4sat(&psi)?;
        Ok(check_certificate_bijection(&psi, &out, &w)?.holds)
    })?;
    let trials = cfg.trials.unwrap_or(100);
    let pipeline = run_parallel(cfg.jobs, trials, |i| -> Result<bool> {
        let phi = random_cnf(&mut trial_rng(cfg.seed, i), 3, 3, 3);
        let p = ambiguous_pipeline(&phi)?;
        Ok(decide_ambiguous(&p.compiled.graph, &p.designated)?.is_yes() == is_satisfiable(&phi)?)
    })?;
    Ok(vec![
        ratio_check("model count of psi is count of phi plus one", &counts, "formulas (n<=3, m<=3)"),
        ratio_check("desugaring is a certificate bijection", &bijections, "formulas"),
        ratio_check("phi satisfiable iff second realization exists", &pipeline, "seeded trials"),
    ])
}

fn suite_bp_oracle(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let trials = cfg.trials.unwrap_or(300);
    let outcomes = run_parallel(cfg.jobs, trials, |i| -> Result<(bool, bool)> {
        let g = random_line_graph(&mut trial_rng(cfg.seed, i), 8, 6);
        let r = bp_enumerate(&g, 1 << 16)?;
        let oracle = sign_vector_classes(&g)?;
        Ok((!r.truncated && r.realizations.len() == oracle, oracle > 0))
    })?;
    let agree: Vec<Result<bool>> = outcomes.iter().map(|o| o.clone().map(|t| t.0)).collect();
    let realizable = outcomes.iter().filter(|o| matches!(o, Ok((_, true)))).count();
    Ok(vec![ratio_check(
        "class counts match sign-vector oracle",
        &agree,
        &format!("match ({realizable} realizable)"),
    )])
}
