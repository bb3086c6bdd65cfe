//! Realizations (vertex placements), exact/real verification and congruence.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Map from every vertex of a graph to a point of `R^K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization<T> {
    dimension: usize,
    points: Vec<Vec<T>>,
}

impl<T: Scalar> Realization<T> {
    pub fn new(dimension: usize, points: Vec<Vec<T>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: p.len(),
            });
        }
        Ok(Realization { dimension, points })
    }

    /// One-dimensional realization from scalar positions.
    pub fn line(positions: Vec<T>) -> Self {
        Realization {
            dimension: 1,
            points: positions.into_iter().map(|p| vec![p]).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, v: usize) -> &[T] {
        &self.points[v]
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    /// First coordinate of `v`; the position itself when `K = 1`.
    pub fn coord(&self, v: usize) -> &T {
        &self.points[v][0]
    }

    /// Positions of a 1D realization.
    pub fn line_positions(&self) -> Vec<T> {
        self.points.iter().map(|p| p[0].clone()).collect()
    }

    pub fn is_exact(&self) -> bool {
        T::EXACT
    }

    pub fn precision_bits(&self) -> Option<u32> {
        T::PRECISION_BITS
    }

    pub fn squared_distance(&self, u: usize, v: usize) -> T {
        self.points[u]
            .iter()
            .zip(&self.points[v])
            .fold(T::zero(), |acc, (a, b)| {
                let d = a.clone() - b.clone();
                acc + d.clone() * d
            })
    }

    pub fn distance_f64(&self, u: usize, v: usize) -> f64 {
        self.squared_distance(u, v).to_f64_lossy().sqrt()
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&T) -> S) -> Realization<S> {
        Realization {
            dimension: self.dimension,
            points: self.points.iter().map(|p| p.iter().map(&f).collect()).collect(),
        }
    }

    /// `x -> x + offset`.
    pub fn translated(&self, offset: &[T]) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().zip(offset).map(|(a, b)| a.clone() + b.clone()).collect())
            .collect();
        Realization {
            dimension: self.dimension,
            points,
        }
    }

    /// `x -> -x` (point reflection through the origin).
    pub fn reflected(&self) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|a| -a.clone()).collect())
            .collect();
        Realization {
            dimension: self.dimension,
            points,
        }
    }

    pub fn to_rational(&self) -> Option<Realization<Rational>> {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(Scalar::to_rational).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Realization {
            dimension: self.dimension,
            points,
        })
    }
}

impl Realization<Rational> {
    /// Parses `dim K` plus `x <v> <c1> ... <cK>` lines (1-based ids, fractions or decimals).
    pub fn parse(text: &str) -> Result<Self> {
        let mut dimension: Option<usize> = None;
        let mut entries: Vec<(usize, usize, Vec<Rational>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts[0] {
                "dim" => {
                    let k = parts
                        .get(1)
                        .and_then(|s| s.parse::<usize>().ok())
                        .filter(|&k| k > 0)
                        .ok_or_else(|| err("bad `dim` header".into()))?;
                    dimension = Some(k);
                }
                "x" => {
                    if parts.len() < 3 {
                        return Err(err("expected `x <v> <coord>...`".into()));
                    }
                    let v: usize = parts[1]
                        .parse()
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| err(format!("bad vertex id `{}`", parts[1])))?;
                    let coords = parts[2..]
                        .iter()
                        .map(|s| parse_rational(s).ok_or_else(|| err(format!("bad coordinate `{s}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    entries.push((line_no, v - 1, coords));
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        let dimension = dimension.ok_or(Error::Parse {
            line: 0,
            message: "missing `dim` header".into(),
        })?;
        let n = entries.iter().map(|e| e.1 + 1).max().unwrap_or(0);
        let mut points: Vec<Option<Vec<Rational>>> = vec![None; n];
        for (line, v, coords) in entries {
            if coords.len() != dimension {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {dimension} coordinates, found {}", coords.len()),
                });
            }
            points[v] = Some(coords);
        }
        let points = points
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or(Error::MissingPosition(v + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Realization { dimension, points })
    }
}

impl<T: Scalar> Realization<T> {
    /// Writes `dim K` and one `x` line per vertex. Exact coordinates are reduced
    /// fractions; floating coordinates use their shortest decimal form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "dim {}", self.dimension).unwrap();
        for (v, p) in self.points.iter().enumerate() {
            let coords: Vec<String> = p
                .iter()
                .map(|c| {
                    if T::EXACT {
                        format_rational(&c.to_rational().expect("exact scalar"))
                    } else {
                        format!("{c}")
                    }
                })
                .collect();
            writeln!(out, "x {} {}", v + 1, coords.join(" ")).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeResidual {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    /// `| ||x_u - x_v|| - d_uv |`, in floating point for reporting.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<EdgeResidual>,
    pub anchor_violations: Vec<usize>,
}

fn check_shape<T: Scalar>(g: &WeightedGraph, x: &Realization<T>) -> Result<()> {
    if g.dimension() != x.dimension() {
        return Err(Error::DimensionMismatch {
            expected: g.dimension(),
            found: x.dimension(),
        });
    }
    if x.len() < g.vertex_count() {
        return Err(Error::MissingPosition(x.len() + 1));
    }
    Ok(())
}

/// Checks every edge of `g` against `x`.
///
/// Exact scalars compare `||x_u - x_v||^2 = d^2` exactly and ignore `tolerance`.
/// Floating scalars accept a relative distance deviation up to `tolerance`,
/// tested on squares: `(1-tol)^2 d^2 <= ||x_u - x_v||^2 <= (1+tol)^2 d^2`.
pub fn verify_realization<T: Scalar>(g: &WeightedGraph, x: &Realization<T>, tolerance: &T) -> Result<VerifyReport> {
    check_shape(g, x)?;
    let mut violations = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let d2 = x.squared_distance(e.u, e.v);
        let w = T::from_rational(&e.weight);
        let w2 = w.clone() * w.clone();
        let ok = if T::EXACT {
            d2 == w2
        } else {
            let lo = (T::one() - tolerance.clone()).max_zero();
            let hi = T::one() + tolerance.clone();
            d2 >= lo.clone() * lo * w2.clone() && d2 <= hi.clone() * hi * w2
        };
        if !ok {
            let residual = if T::EXACT && x.dimension() == 1 {
                let diff = (x.coord(e.u).clone() - x.coord(e.v).clone()).abs() - w;
                diff.abs().to_f64_lossy()
            } else {
                (x.distance_f64(e.u, e.v) - w.to_f64_lossy()).abs()
            };
            violations.push(EdgeResidual {
                edge: i,
                u: e.u,
                v: e.v,
                residual,
            });
        }
    }
    let mut anchor_violations = Vec::new();
    for (&v, anchor) in g.anchors() {
        let matches = anchor.iter().zip(x.point(v)).all(|(a, c)| {
            let a = T::from_rational(a);
            if T::EXACT {
                a == *c
            } else {
                a.approx_eq(c, tolerance)
            }
        });
        if !matches {
            anchor_violations.push(v);
        }
    }
    Ok(VerifyReport {
        valid: violations.is_empty() && anchor_violations.is_empty(),
        violations,
        anchor_violations,
    })
}

trait MaxZero {
    fn max_zero(self) -> Self;
}

impl<T: Scalar> MaxZero for T {
    fn max_zero(self) -> Self {
        if self < T::zero() {
            T::zero()
        } else {
            self
        }
    }
}

/// `true` iff `x` and `y` have equal pairwise squared-distance matrices:
/// exactly for exact scalars, entrywise within [`Scalar::default_tolerance`] otherwise.
pub fn congruent<T: Scalar>(x: &Realization<T>, y: &Realization<T>) -> Result<bool> {
    congruent_within(x, y, &T::default_tolerance())
}

pub fn congruent_within<T: Scalar>(x: &Realization<T>, y: &Realization<T>, tolerance: &T) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::VertexSetMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.dimension() != y.dimension() {
        return Err(Error::DimensionMismatch {
            expected: x.dimension(),
            found: y.dimension(),
        });
    }
    for u in 0..x.len() {
        for v in (u + 1)..x.len() {
            let a = x.squared_distance(u, v);
            let b = y.squared_distance(u, v);
            if !a.approx_eq(&b, tolerance) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact 1D realization from integer positions.
pub fn line_from_ints(positions: &[i64]) -> Realization<Rational> {
    Realization::line(positions.iter().map(|&p| crate::scalar::int(p)).collect())
}

impl Realization<Rational> {
    /// Largest absolute coordinate; zero for the empty realization.
    pub fn span(&self) -> Rational {
        self.points
            .iter()
            .flat_map(|p| p.iter())
            .map(|c| c.abs())
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }
}
