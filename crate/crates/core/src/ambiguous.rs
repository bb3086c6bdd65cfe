//! Ambiguous satisfiability: 3SAT to an always-satisfiable 4SAT formula with a
//! designated certificate, the 4SAT to 3SAT clause transform, and the chain
//! down to an ambiguous line-realization instance.

use std::collections::BTreeSet;

use crate::cnf::{enumerate_models, Assignment, Clause, CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::realization::Realization;
use crate::reduction::{compile_3sat, CompiledSatGraph, ReductionWitness};
use crate::scalar::Rational;

/// Variable limit for [`check_certificate_bijection`].
pub const BIJECTION_VARIABLE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguousInstance {
    pub formula: CnfFormula,
    pub designated_certificate: Assignment,
}

impl AmbiguousInstance {
    /// Index of the switch variable `t`.
    pub fn switch_variable(&self) -> usize {
        self.formula.num_vars()
    }
}

/// `ψ = ⋀_j (t̄ ∨ s_j) ∧ ⋀_i (t ∨ c_i)` with `t = s_{n+1}`; the designated
/// certificate sets every variable TRUE. `ψ` has a second model iff `φ` is
/// satisfiable.
pub fn ambiguate_3sat(phi: &CnfFormula) -> Result<AmbiguousInstance> {
    if let Some((i, c)) = phi.clauses().iter().enumerate().find(|(_, c)| c.width() > 3) {
        return Err(Error::ClauseTooWide {
            clause: i + 1,
            width: c.width(),
            limit: 3,
        });
    }
    let n = phi.num_vars();
    let t = Literal::pos(n + 1);
    let mut clauses: Vec<Clause> = (1..=n).map(|j| Clause(vec![t.negate(), Literal::pos(j)])).collect();
    for c in phi.clauses() {
        let mut lits = vec![t];
        lits.extend(c.distinct());
        clauses.push(Clause(lits));
    }
    let formula = CnfFormula::new(n + 1, clauses)?;
    let designated_certificate = Assignment::all(n + 1, true);
    debug_assert!(formula.evaluate(&designated_certificate).unwrap());
    Ok(AmbiguousInstance {
        formula,
        designated_certificate,
    })
}

/// Extends assignments of the 4SAT formula with the forced `q` values and
/// projects back by dropping them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesugarWitness {
    pub source_vars: usize,
    /// `(q variable, ℓ₃, ℓ₄)` per replaced clause.
    pub fresh: Vec<(usize, Literal, Literal)>,
}

impl ReductionWitness for DesugarWitness {
    type Source = Assignment;
    type Target = Assignment;

    fn forward(&self, a: &Assignment) -> Result<Assignment> {
        if a.len() < self.source_vars {
            return Err(Error::PartialAssignment {
                needed: self.source_vars,
                found: a.len(),
            });
        }
        let mut out = a.truncated(self.source_vars);
        for &(_, l3, l4) in &self.fresh {
            out.push(l3.eval(a) || l4.eval(a));
        }
        Ok(out)
    }

    fn backward(&self, a: &Assignment) -> Result<Assignment> {
        let needed = self.source_vars + self.fresh.len();
        if a.len() < needed {
            return Err(Error::PartialAssignment { needed, found: a.len() });
        }
        Ok(a.truncated(self.source_vars))
    }
}

/// Replaces each width-4 clause `ℓ₁∨ℓ₂∨ℓ₃∨ℓ₄` by
/// `(ℓ₁∨ℓ₂∨q)(ℓ₃∨ℓ̄₄∨q)(ℓ̄₃∨ℓ₄∨q)(ℓ̄₃∨ℓ̄₄∨q)(ℓ₃∨ℓ₄∨q̄)` with a fresh `q`.
/// Narrower clauses are kept as they are.
pub fn desugar_4sat(psi: &CnfFormula) -> Result<(CnfFormula, DesugarWitness)> {
    let n = psi.num_vars();
    let mut clauses = Vec::new();
    let mut fresh = Vec::new();
    for (i, c) in psi.clauses().iter().enumerate() {
        let w = c.width();
        if w > 4 {
            return Err(Error::ClauseTooWide {
                clause: i + 1,
                width: w,
                limit: 4,
            });
        }
        if w < 4 {
            clauses.push(c.clone());
            continue;
        }
        let l = c.distinct();
        let q = Literal::pos(n + fresh.len() + 1);
        let (l1, l2, l3, l4) = (l[0], l[1], l[2], l[3]);
        clauses.push(Clause(vec![l1, l2, q]));
        clauses.push(Clause(vec![l3, l4.negate(), q]));
        clauses.push(Clause(vec![l3.negate(), l4, q]));
        clauses.push(Clause(vec![l3.negate(), l4.negate(), q]));
        clauses.push(Clause(vec![l3, l4, q.negate()]));
        fresh.push((q.var, l3, l4));
    }
    let out = CnfFormula::new(n + fresh.len(), clauses)?;
    Ok((out, DesugarWitness { source_vars: n, fresh }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub holds: bool,
    pub source_models: usize,
    pub target_models: usize,
}

/// Checks by enumeration that the witness maps the models of `psi` one-to-one
/// onto the models of `transformed`, with `backward` inverting `forward`.
pub fn check_certificate_bijection(
    psi: &CnfFormula,
    transformed: &CnfFormula,
    witness: &DesugarWitness,
) -> Result<BijectionReport> {
    let n = transformed.num_vars().max(psi.num_vars());
    if n > BIJECTION_VARIABLE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "variable count",
            value: n,
            limit: BIJECTION_VARIABLE_LIMIT,
        });
    }
    let source = enumerate_models(psi, usize::MAX)?.models;
    let target = enumerate_models(transformed, usize::MAX)?.models;
    let target_set: BTreeSet<&Assignment> = target.iter().collect();
    let mut images = BTreeSet::new();
    let mut holds = source.len() == target.len();
    for a in &source {
        let b = witness.forward(a)?;
        holds &= target_set.contains(&b) && witness.backward(&b)? == *a;
        holds &= images.insert(b);
    }
    Ok(BijectionReport {
        holds,
        source_models: source.len(),
        target_models: target.len(),
    })
}

#[derive(Debug, Clone)]
pub struct AmbiguousPipeline {
    pub instance: AmbiguousInstance,
    pub desugared: CnfFormula,
    pub desugar_witness: DesugarWitness,
    pub compiled: CompiledSatGraph,
    pub designated: Realization<Rational>,
}

/// Ambiguates a 3SAT formula, desugars it to 3SAT, compiles it to a line
/// instance and maps the designated certificate to a realization. The
/// instance has an incongruent second realization iff `phi` is satisfiable.
pub fn ambiguous_pipeline(phi: &CnfFormula) -> Result<AmbiguousPipeline> {
    let instance = ambiguate_3sat(phi)?;
    let (desugared, desugar_witness) = desugar_4sat(&instance.formula)?;
    let (compiled, sat_witness) = compile_3sat(&desugared)?;
    let extended = desugar_witness.forward(&instance.designated_certificate)?;
    let designated = sat_witness.forward(&extended)?;
    Ok(AmbiguousPipeline {
        instance,
        desugared,
        desugar_witness,
        compiled,
        designated,
    })
}
