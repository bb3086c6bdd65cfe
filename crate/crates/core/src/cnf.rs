//! CNF formulas, DIMACS I/O and the brute-force model enumerator.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest variable count accepted by [`enumerate_models`].
pub const MODEL_ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn from_dimacs(v: i64) -> Self {
        Literal {
            var: v.unsigned_abs() as usize,
            negated: v < 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn negate(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.get(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~s{}", self.var)
        } else {
            write!(f, "s{}", self.var)
        }
    }
}

/// Disjunction of literals, kept as written (duplicates included).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause(pub Vec<Literal>);

impl Clause {
    pub fn from_dimacs(lits: &[i64]) -> Self {
        Clause(lits.iter().map(|&l| Literal::from_dimacs(l)).collect())
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    /// Number of distinct literals.
    pub fn width(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }

    /// Distinct literals in order of first occurrence.
    pub fn distinct(&self) -> Vec<Literal> {
        let mut seen = BTreeSet::new();
        self.0.iter().copied().filter(|l| seen.insert(*l)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.0.iter().any(|l| l.eval(a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        for c in &clauses {
            for l in c.literals() {
                if l.var == 0 || l.var > num_vars {
                    return Err(Error::VariableOutOfRange {
                        index: l.var,
                        count: num_vars,
                    });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style signed literals.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        CnfFormula::new(num_vars, clauses.iter().map(|c| Clause::from_dimacs(c)).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Maximum number of distinct literals in a clause (the `k` of k-SAT).
    pub fn width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool> {
        if a.len() < self.num_vars {
            return Err(Error::PartialAssignment {
                needed: self.num_vars,
                found: a.len(),
            });
        }
        Ok(self.clauses.iter().all(|c| c.eval(a)))
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        parse_dimacs(text)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for c in &self.clauses {
            for l in c.literals() {
                write!(out, "{} ", l.to_dimacs()).unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.literals().iter().map(Literal::to_string).collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        if parts.is_empty() {
            write!(f, "TRUE")
        } else {
            write!(f, "{}", parts.join(" & "))
        }
    }
}

/// Truth values for variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn all(n: usize, value: bool) -> Self {
        Assignment(vec![value; n])
    }

    /// Value of 1-based variable `var`.
    pub fn get(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.0[var - 1] = value;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, value: bool) {
        self.0.push(value);
    }

    pub fn truncated(&self, n: usize) -> Assignment {
        Assignment(self.0[..n.min(self.0.len())].to_vec())
    }

    /// `1`/`0` string, variable 1 first.
    pub fn bitstring(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Certificate text: one `v<j> <0|1>` line per variable.
    pub fn to_certificate_text(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| format!("v{} {}\n", i + 1, u8::from(b)))
            .collect()
    }

    pub fn parse_certificate(text: &str) -> Result<Self> {
        let mut values: Vec<Option<bool>> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse {
                line: i + 1,
                message: m.to_string(),
            };
            let (var, val) = line.split_once(char::is_whitespace).ok_or_else(|| err("expected `v<j> <0|1>`"))?;
            let j: usize = var
                .strip_prefix('v')
                .and_then(|s| s.parse().ok())
                .filter(|&j| j > 0)
                .ok_or_else(|| err("bad variable tag"))?;
            let b = match val.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(err("value must be 0 or 1")),
            };
            if values.len() < j {
                values.resize(j, None);
            }
            values[j - 1] = Some(b);
        }
        values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or(Error::Parse {
                    line: 0,
                    message: format!("variable v{} missing", i + 1),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|&b| if b { "T" } else { "F" }).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses DIMACS CNF: `c` comments, one `p cnf n m` header, 0-terminated clauses.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        let err = |message: String| Error::Parse { line: line_no, message };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err("duplicate header".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(err("malformed header, expected `p cnf <vars> <clauses>`".into()));
            }
            let n = parts[2].parse().map_err(|_| err("bad variable count".into()))?;
            let m = parts[3].parse().map_err(|_| err("bad clause count".into()))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| err("clause before `p cnf` header".into()))?;
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| err(format!("bad literal `{tok}`")))?;
            if v == 0 {
                clauses.push(Clause(std::mem::take(&mut current)));
            } else {
                let lit = Literal::from_dimacs(v);
                if lit.var > n {
                    return Err(Error::VariableOutOfRange { index: lit.var, count: n });
                }
                if current.is_empty() {
                    open_line = line_no;
                }
                current.push(lit);
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing `p cnf` header".into(),
    })?;
    if !current.is_empty() {
        return Err(Error::Parse {
            line: open_line,
            message: "clause missing 0 terminator".into(),
        });
    }
    if clauses.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {m} clauses, found {}", clauses.len()),
        });
    }
    CnfFormula::new(n, clauses)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelEnumeration {
    pub models: Vec<Assignment>,
    pub truncated: bool,
}

/// All satisfying assignments in lexicographic order over `(s1, ..., sn)`
/// with `F < T`, truncated at `cap`.
pub fn enumerate_models(f: &CnfFormula, cap: usize) -> Result<ModelEnumeration> {
    let n = f.num_vars();
    if n > MODEL_ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            what: "variable count",
            value: n,
            limit: MODEL_ENUMERATION_LIMIT,
        });
    }
    let mut models = Vec::new();
    let mut a = Assignment::all(n, false);
    for bits in 0u64..(1u64 << n) {
        for j in 0..n {
            // s1 is the most significant bit
            a.0[j] = (bits >> (n - 1 - j)) & 1 == 1;
        }
        if f.clauses.iter().all(|c| c.eval(&a)) {
            if models.len() >= cap {
                return Ok(ModelEnumeration { models, truncated: true });
            }
            models.push(a.clone());
        }
    }
    Ok(ModelEnumeration {
        models,
        truncated: false,
    })
}

pub fn model_count(f: &CnfFormula) -> Result<usize> {
    enumerate_models(f, usize::MAX).map(|m| m.models.len())
}

pub fn is_satisfiable(f: &CnfFormula) -> Result<bool> {
    enumerate_models(f, 1).map(|m| !m.models.is_empty())
}
