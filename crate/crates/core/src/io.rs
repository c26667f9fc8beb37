//! On-disk JSON forms: substitution systems and tile solutions.
//!
//! Numbers are exact: every field element is `{"coeffs": ["p/q", ...]}` in
//! the power basis of the file's `cyclotomic_order`. Coefficient lists may
//! be longer than `phi(n)`; they are reduced on load.

use crate::cyclotomic::{format_rational, parse_rational, CycNum};
use crate::error::{Error, Result};
use crate::fixtures::Solution;
use crate::geometry::Polygon;
use crate::substitution::{AffineSimilarity, SubstitutionSystem};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Coeffs {
    coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapRepr {
    scale: Coeffs,
    conjugate: bool,
    translate: Coeffs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemRepr {
    name: String,
    cyclotomic_order: u32,
    dimension: u8,
    prototiles: Vec<String>,
    expansion: Coeffs,
    entries: Vec<Vec<Vec<MapRepr>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionRepr {
    cyclotomic_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    intervals: Option<Vec<[Coeffs; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polygons: Option<Vec<Vec<Coeffs>>>,
}

fn to_coeffs(z: &CycNum) -> Coeffs {
    Coeffs { coeffs: z.coeffs().iter().map(format_rational).collect() }
}

fn from_coeffs(order: u32, c: &Coeffs) -> Result<CycNum> {
    let raw = c.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    CycNum::new(order, &raw)
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), msg: e.to_string() }
}

pub fn system_to_json(s: &SubstitutionSystem) -> String {
    let repr = SystemRepr {
        name: s.name().to_string(),
        cyclotomic_order: s.order(),
        dimension: s.dimension(),
        prototiles: s.prototiles().to_vec(),
        expansion: to_coeffs(s.expansion()),
        entries: s
            .entries()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|set| {
                        set.iter()
                            .map(|f| MapRepr {
                                scale: to_coeffs(f.scale()),
                                conjugate: f.conjugate(),
                                translate: to_coeffs(f.translate()),
                                label: f.label().map(str::to_string),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&repr).expect("serializable");
    out.push('\n');
    out
}

/// Parses and validates a system. Syntax errors carry the line number.
pub fn system_from_json(text: &str) -> Result<SubstitutionSystem> {
    let repr: SystemRepr = serde_json::from_str(text).map_err(parse_err)?;
    let n = repr.cyclotomic_order;
    let entries = repr
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|set| {
                    set.iter()
                        .map(|m| {
                            let f = AffineSimilarity::new(
                                from_coeffs(n, &m.scale)?,
                                m.conjugate,
                                from_coeffs(n, &m.translate)?,
                            )?;
                            Ok(match &m.label {
                                Some(l) => f.with_label(l.clone()),
                                None => f,
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let expansion = from_coeffs(n, &repr.expansion)?;
    SubstitutionSystem::new(repr.name, n, repr.dimension, repr.prototiles, expansion, entries)
}

pub fn solution_to_json(order: u32, sol: &Solution) -> String {
    let repr = match sol {
        Solution::Intervals(iv) => SolutionRepr {
            cyclotomic_order: order,
            intervals: Some(iv.iter().map(|(a, b)| [to_coeffs(a), to_coeffs(b)]).collect()),
            polygons: None,
        },
        Solution::Polygons(ps) => SolutionRepr {
            cyclotomic_order: order,
            intervals: None,
            polygons: Some(ps.iter().map(|p| p.vertices().iter().map(to_coeffs).collect()).collect()),
        },
    };
    let mut out = serde_json::to_string_pretty(&repr).expect("serializable");
    out.push('\n');
    out
}

/// Parses a solution file: exactly one of `intervals` or `polygons`.
pub fn solution_from_json(text: &str) -> Result<(u32, Solution)> {
    let repr: SolutionRepr = serde_json::from_str(text).map_err(parse_err)?;
    let n = repr.cyclotomic_order;
    let sol = match (repr.intervals, repr.polygons) {
        (Some(iv), None) => Solution::Intervals(
            iv.iter().map(|[a, b]| Ok((from_coeffs(n, a)?, from_coeffs(n, b)?))).collect::<Result<_>>()?,
        ),
        (None, Some(ps)) => Solution::Polygons(
            ps.iter()
                .map(|p| Polygon::new(p.iter().map(|c| from_coeffs(n, c)).collect::<Result<_>>()?))
                .collect::<Result<_>>()?,
        ),
        _ => return Err(Error::input("solution needs exactly one of \"intervals\" or \"polygons\"")),
    };
    Ok((n, sol))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

pub fn read_system(path: &Path) -> Result<SubstitutionSystem> {
    system_from_json(&read(path)?)
}

pub fn read_solution(path: &Path) -> Result<(u32, Solution)> {
    solution_from_json(&read(path)?)
}
