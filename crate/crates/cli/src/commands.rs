use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use edgp::ambiguous::{ambiguate_3sat, ambiguous_pipeline, desugar_4sat};
use edgp::approx::{
    analyze_gadget_cycles, cycle_approx_decide, decide_eps_delta, parse_tolerance, round_approximate, verify_approx,
};
use edgp::bp::{bp_enumerate, bp_solve, decide_ambiguous, Ambiguity};
use edgp::cnf::{enumerate_models, CnfFormula};
use edgp::gadgets::{
    expand_weights, gadget, lift_clique, lift_rbar, lift_saxe, minimal_embedding_dimension, EmbeddingDimension,
    GadgetKind,
};
use edgp::reduction::{compile_3sat, reduce_partition, PartitionInstance, ReductionWitness};
use edgp::reproduce::{run_suite, SuiteConfig};
use edgp::scalar::{format_rational, Rational};
use edgp::{verify_realization, Realization, WeightedGraph};

use crate::{Command, Format, GadgetAction, LiftGadget, ReduceSource, ReproduceArgs};

pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: u8, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<WeightedGraph> {
    WeightedGraph::parse(&read(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_cnf(path: &Path) -> Result<CnfFormula> {
    CnfFormula::parse_dimacs(&read(path)?).with_context(|| format!("parsing DIMACS {}", path.display()))
}

fn read_realization(path: &Path) -> Result<Realization<Rational>> {
    Realization::parse(&read(path)?).with_context(|| format!("parsing realization {}", path.display()))
}

/// Writes `content` to `path`, or appends it to `text` when no path is given.
fn emit(path: Option<&PathBuf>, content: &str, text: &mut String) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            text.push_str(content);
            Ok(())
        }
    }
}

fn points_json(x: &Realization<Rational>) -> Value {
    Value::Array(
        x.points()
            .iter()
            .map(|p| Value::Array(p.iter().map(|c| Value::String(format_rational(c))).collect()))
            .collect(),
    )
}

fn graph_json(g: &WeightedGraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "anchors": g.anchors().len(),
        "dimension": g.dimension(),
    })
}

fn dimension_text(d: EmbeddingDimension) -> String {
    match d {
        EmbeddingDimension::Dim(k) => k.to_string(),
        EmbeddingDimension::Infeasible => "infeasible".into(),
    }
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Parse { file, format } => parse(&file, format),
        Command::Reduce { source } => reduce(source),
        Command::Lift {
            gadget,
            dim,
            all,
            input,
            output,
        } => lift(gadget, dim, all, &input, output.as_ref()),
        Command::ExpandWeights { input, output } => {
            let g = expand_weights(&read_graph(&input)?)?;
            let mut text = String::new();
            emit(output.as_ref(), &g.to_text(), &mut text)?;
            Ok(Outcome::new(0, text, json!({ "graph": graph_json(&g) })))
        }
        Command::Gadget {
            action: GadgetAction::Emit { kind, dim, out },
        } => {
            let kind: GadgetKind = kind.parse()?;
            let t = gadget(kind, dim)?;
            let mut text = String::new();
            emit(out.as_ref(), &t.graph.to_text(), &mut text)?;
            Ok(Outcome::new(
                0,
                text,
                json!({
                    "kind": kind.to_string(),
                    "graph": graph_json(&t.graph),
                    "terminals": [t.terminals[0] + 1, t.terminals[1] + 1],
                    "text": t.graph.to_text(),
                }),
            ))
        }
        Command::Solve {
            input,
            enumerate,
            cap,
            out,
        } => solve(&input, enumerate, cap, out.as_ref()),
        Command::Ambiguous { graph, realization } => {
            let g = read_graph(&graph)?;
            let x = read_realization(&realization)?;
            Ok(match decide_ambiguous(&g, &x)? {
                Ambiguity::Yes(y) => Outcome::new(
                    0,
                    format!("YES\n{}", y.to_text()),
                    json!({ "ambiguous": true, "witness": points_json(&y) }),
                ),
                Ambiguity::No => Outcome::new(1, "NO\n".into(), json!({ "ambiguous": false })),
            })
        }
        Command::Verify {
            graph,
            realization,
            tol,
        } => verify(&graph, &realization, &tol),
        Command::VerifyApprox {
            graph,
            realization,
            eps,
        } => {
            let g = read_graph(&graph)?;
            let x = read_realization(&realization)?;
            let eps = parse_tolerance(&eps)?;
            let r = verify_approx(&g, &x, &eps)?;
            let exact = r.epsilon_exact.as_ref().map(format_rational);
            let text = format!(
                "{}\nepsilon achieved {}\n",
                if r.within { "WITHIN" } else { "OUTSIDE" },
                exact.clone().unwrap_or_else(|| r.epsilon_achieved.to_string())
            );
            Ok(Outcome::new(
                u8::from(!r.within),
                text,
                json!({
                    "within": r.within,
                    "epsilon": format_rational(&eps),
                    "epsilon_achieved": r.epsilon_achieved,
                    "epsilon_exact": exact,
                    "worst_edge": r.worst_edge.map(|e| e + 1),
                    "anchors_ok": r.anchors_ok,
                }),
            ))
        }
        Command::Round { graph, realization, out } => {
            let g = read_graph(&graph)?;
            let y = read_realization(&realization)?;
            let r = round_approximate(&g, &y)?;
            let mut text = String::new();
            writeln!(text, "{}", if r.verified { "VERIFIED" } else { "NOT VERIFIED" })?;
            for f in &r.failures {
                writeln!(text, "# vertex {} was already integral in a rounding case", f + 1)?;
            }
            emit(out.as_ref(), &r.x.to_text(), &mut text)?;
            let cases: Vec<Value> = r
                .steps
                .iter()
                .map(|s| json!({ "vertex": s.vertex + 1, "parent": s.parent + 1, "case": format!("{:?}", s.case) }))
                .collect();
            Ok(Outcome::new(
                u8::from(!r.verified),
                text,
                json!({
                    "verified": r.verified,
                    "positions": points_json(&r.x),
                    "cases": cases,
                    "failures": r.failures.iter().map(|f| f + 1).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::CycleDecide { weights, delta, eps } => cycle_decide(&weights, &delta, eps.as_deref()),
        Command::Cycles { input, cap } => {
            let g = read_graph(&input)?;
            let s = analyze_gadget_cycles(&g, cap)?;
            let text = format!(
                "cycles {}{}\nmax length {}\nthreshold {}\ncover {}\n",
                s.cycle_count,
                if s.truncated { " (truncated)" } else { "" },
                format_rational(&s.max_length),
                format_rational(&s.threshold),
                s.cover.len()
            );
            Ok(Outcome::new(
                0,
                text,
                json!({
                    "cycles": s.cycle_count,
                    "truncated": s.truncated,
                    "max_length": format_rational(&s.max_length),
                    "threshold": format_rational(&s.threshold),
                    "cover_size": s.cover.len(),
                }),
            ))
        }
        Command::Dimension { input } => {
            let d = minimal_embedding_dimension(&read_graph(&input)?)?;
            let code = u8::from(d == EmbeddingDimension::Infeasible);
            Ok(Outcome::new(code, format!("{}\n", dimension_text(d)), json!({ "dimension": dimension_text(d) })))
        }
        Command::Ambiguate { input, out, cert } => {
            let a = ambiguate_3sat(&read_cnf(&input)?)?;
            let mut text = String::new();
            emit(out.as_ref(), &a.formula.to_dimacs(), &mut text)?;
            emit(cert.as_ref(), &a.designated_certificate.to_certificate_text(), &mut text)?;
            Ok(Outcome::new(
                0,
                text,
                json!({
                    "variables": a.formula.num_vars(),
                    "clauses": a.formula.num_clauses(),
                    "switch_variable": a.switch_variable(),
                    "certificate": a.designated_certificate.bitstring(),
                }),
            ))
        }
        Command::Desugar { input, out } => {
            let (f, w) = desugar_4sat(&read_cnf(&input)?)?;
            let mut text = String::new();
            emit(out.as_ref(), &f.to_dimacs(), &mut text)?;
            Ok(Outcome::new(
                0,
                text,
                json!({
                    "variables": f.num_vars(),
                    "clauses": f.num_clauses(),
                    "fresh_variables": w.fresh.iter().map(|q| q.0).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Pipeline { input, out, cert } => {
            let p = ambiguous_pipeline(&read_cnf(&input)?)?;
            let mut text = String::new();
            emit(out.as_ref(), &p.compiled.graph.to_text(), &mut text)?;
            emit(cert.as_ref(), &p.designated.to_text(), &mut text)?;
            Ok(Outcome::new(
                0,
                text,
                json!({
                    "graph": graph_json(&p.compiled.graph),
                    "desugared_variables": p.desugared.num_vars(),
                    "desugared_clauses": p.desugared.num_clauses(),
                }),
            ))
        }
        Command::Models { input, cap } => {
            let f = read_cnf(&input)?;
            let m = enumerate_models(&f, cap)?;
            let bits: Vec<String> = m.models.iter().map(|a| a.bitstring()).collect();
            let mut text = String::new();
            for b in &bits {
                writeln!(text, "{b}")?;
            }
            if m.truncated {
                writeln!(text, "# truncated at {cap}")?;
            }
            Ok(Outcome::new(
                u8::from(bits.is_empty()),
                text,
                json!({ "models": bits, "count": bits.len(), "truncated": m.truncated }),
            ))
        }
        Command::Reproduce(args) => reproduce(args),
    }
}

fn detect(text: &str) -> Option<Format> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())?;
    match first.split_whitespace().next()? {
        "n" => Some(Format::Graph),
        "dim" | "x" => Some(Format::Realization),
        "p" | "c" => Some(Format::Cnf),
        _ => None,
    }
}

fn parse(file: &Path, format: Option<Format>) -> Result<Outcome> {
    let text = read(file)?;
    let format = match format.or_else(|| detect(&text)) {
        Some(f) => f,
        None => bail!("cannot tell the format of {}; pass --format", file.display()),
    };
    Ok(match format {
        Format::Graph => {
            let g = WeightedGraph::parse(&text)?;
            Outcome::new(0, g.to_text(), json!({ "format": "graph", "graph": graph_json(&g) }))
        }
        Format::Cnf => {
            let f = CnfFormula::parse_dimacs(&text)?;
            Outcome::new(
                0,
                f.to_dimacs(),
                json!({
                    "format": "cnf",
                    "variables": f.num_vars(),
                    "clauses": f.num_clauses(),
                    "width": f.width(),
                }),
            )
        }
        Format::Realization => {
            let x = Realization::parse(&text)?;
            Outcome::new(
                0,
                x.to_text(),
                json!({ "format": "realization", "dimension": x.dimension(), "points": points_json(&x) }),
            )
        }
    })
}

fn reduce(source: ReduceSource) -> Result<Outcome> {
    match source {
        ReduceSource::Sat {
            dimacs,
            out,
            witness,
            cap,
        } => {
            let f = read_cnf(&dimacs)?;
            let (compiled, w) = compile_3sat(&f)?;
            let mut text = String::new();
            emit(out.as_ref(), &compiled.graph.to_text(), &mut text)?;
            let mut witnessed = 0;
            if let Some(path) = witness {
                let models = enumerate_models(&f, cap)?;
                let mut map = serde_json::Map::new();
                for a in &models.models {
                    map.insert(a.bitstring(), Value::String(w.forward(a)?.to_text()));
                }
                witnessed = map.len();
                fs::write(&path, serde_json::to_string_pretty(&Value::Object(map))?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Outcome::new(
                0,
                text,
                json!({ "graph": graph_json(&compiled.graph), "witnessed_models": witnessed }),
            ))
        }
        ReduceSource::Partition { values, out } => {
            let (g, _) = reduce_partition(&PartitionInstance::new(values)?)?;
            let mut text = String::new();
            emit(out.as_ref(), &g.to_text(), &mut text)?;
            Ok(Outcome::new(0, text, json!({ "graph": graph_json(&g) })))
        }
    }
}

fn lift(kind: LiftGadget, dim: usize, all: bool, input: &Path, output: Option<&PathBuf>) -> Result<Outcome> {
    let g1 = read_graph(input)?;
    let g = match kind {
        LiftGadget::Saxe => {
            if dim != 2 {
                bail!("the saxe lift targets dimension 2");
            }
            lift_saxe(&g1)?
        }
        LiftGadget::Clique => lift_clique(&g1, dim, all)?.graph,
        LiftGadget::Rbar => lift_rbar(&g1, dim)?,
    };
    let mut text = String::new();
    emit(output, &g.to_text(), &mut text)?;
    Ok(Outcome::new(0, text, json!({ "graph": graph_json(&g) })))
}

fn solve(input: &Path, enumerate: bool, cap: usize, out: Option<&PathBuf>) -> Result<Outcome> {
    let g = read_graph(input)?;
    let r = if enumerate { bp_enumerate(&g, cap)? } else { bp_solve(&g)? };
    let mut text = String::new();
    let status = if r.is_realizable() { "REALIZABLE" } else { "UNREALIZABLE" };
    writeln!(text, "{status}")?;
    if enumerate {
        writeln!(
            text,
            "# {} realization(s){}",
            r.realizations.len(),
            if r.truncated { ", truncated" } else { "" }
        )?;
    }
    match (out, r.realizations.first()) {
        (Some(path), Some(x)) => emit(Some(path), &x.to_text(), &mut text)?,
        _ => {
            for (i, x) in r.realizations.iter().enumerate() {
                if enumerate {
                    writeln!(text, "# realization {}", i + 1)?;
                }
                text.push_str(&x.to_text());
            }
        }
    }
    Ok(Outcome::new(
        u8::from(!r.is_realizable()),
        text,
        json!({
            "status": r.status,
            "realizations": r.realizations.iter().map(points_json).collect::<Vec<_>>(),
            "nodes_explored": r.nodes_explored,
            "truncated": r.truncated,
        }),
    ))
}

fn verify(graph: &Path, realization: &Path, tol: &str) -> Result<Outcome> {
    let g = read_graph(graph)?;
    let x = read_realization(realization)?;
    let tol = parse_tolerance(tol)?;
    let report = if tol == Rational::from_integer(0.into()) {
        verify_realization(&g, &x, &tol)?
    } else {
        let xf: Realization<f64> = x.map(edgp::scalar::rational_to_f64);
        verify_realization(&g, &xf, &edgp::scalar::rational_to_f64(&tol))?
    };
    let mut text = format!("{}\n", if report.valid { "VALID" } else { "INVALID" });
    for v in &report.violations {
        writeln!(text, "# edge {} {}-{} residual {}", v.edge + 1, v.u + 1, v.v + 1, v.residual)?;
    }
    for a in &report.anchor_violations {
        writeln!(text, "# anchor {} violated", a + 1)?;
    }
    Ok(Outcome::new(
        u8::from(!report.valid),
        text,
        json!({
            "valid": report.valid,
            "violations": report.violations.iter().map(|v| json!({
                "edge": v.edge + 1, "u": v.u + 1, "v": v.v + 1, "residual": v.residual
            })).collect::<Vec<_>>(),
            "anchor_violations": report.anchor_violations.iter().map(|a| a + 1).collect::<Vec<_>>(),
        }),
    ))
}

fn cycle_decide(weights: &[u64], delta: &str, eps: Option<&str>) -> Result<Outcome> {
    let delta = parse_tolerance(delta)?;
    if let Some(eps) = eps {
        let eps = parse_tolerance(eps)?;
        let answer = decide_eps_delta(weights, &eps, &delta)?;
        let word = match answer {
            edgp::approx::EpsDeltaAnswer::Yes => "YES",
            edgp::approx::EpsDeltaAnswer::No => "NO",
            edgp::approx::EpsDeltaAnswer::Indeterminate => "INDETERMINATE",
        };
        return Ok(Outcome::new(
            u8::from(word != "YES"),
            format!("{word}\n"),
            json!({ "answer": answer, "epsilon": format_rational(&eps), "delta": format_rational(&delta) }),
        ));
    }
    let d = cycle_approx_decide(weights, &delta)?;
    let a = &d.analysis;
    let mut text = format!(
        "{}\nlength {} gap {} threshold {}\n",
        if d.yes { "YES" } else { "NO" },
        a.total,
        a.min_closure_gap,
        format_rational(&a.threshold())
    );
    if d.yes {
        let ps: Vec<String> = d.positions.iter().map(format_rational).collect();
        writeln!(text, "positions {}", ps.join(" "))?;
    }
    Ok(Outcome::new(
        u8::from(!d.yes),
        text,
        json!({
            "yes": d.yes,
            "length": a.total,
            "gap": a.min_closure_gap,
            "threshold": format_rational(&a.threshold()),
            "positions": d.positions.iter().map(format_rational).collect::<Vec<_>>(),
            "lengths": d.lengths.iter().map(format_rational).collect::<Vec<_>>(),
        }),
    ))
}

fn reproduce(args: ReproduceArgs) -> Result<Outcome> {
    let cfg = SuiteConfig {
        seed: args.seed,
        jobs: args.jobs,
        trials: args.trials,
        max_vars: args.n,
        max_clauses: args.m,
    };
    let report = run_suite(&args.suite, &cfg)?;
    let code = u8::from(!report.passed());
    Ok(Outcome::new(code, report.to_table(), serde_json::to_value(&report)?))
}
