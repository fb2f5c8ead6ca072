//! Facets of one-dimensional pooling polytopes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::model::{spec_1d, WindowFamily};
use crate::oracle::enumerate_vertices;
use crate::polyalg::exact_rank;

/// `(s+2)(n-1) + k` when windows overlap in at least two letters, `kn`
/// otherwise.
pub fn facet_count_formula(n: usize, k: usize, s: usize) -> Result<usize> {
    if n == 0 || k <= 1 || s == 0 {
        return Err(Error::InvalidParams(format!(
            "need n >= 1, k >= 2, s >= 1, got ({n}, {k}, {s})"
        )));
    }
    Ok(if k > s + 1 {
        (s + 2) * (n - 1) + k
    } else {
        k * n
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowLabel {
    AffineSpan,
    PrefixUnion(usize),
    SuffixUnion(usize),
    Singleton(usize),
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::AffineSpan => write!(f, "affine-span"),
            RowLabel::PrefixUnion(r) => write!(f, "prefix-union {r}"),
            RowLabel::SuffixUnion(r) => write!(f, "suffix-union {r}"),
            RowLabel::Singleton(a) => write!(f, "singleton {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HRow {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub sense: Sense,
    pub label: RowLabel,
}

impl HRow {
    pub fn lhs(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        self.sense.holds(self.lhs(x), self.rhs)
    }

    pub fn tight_at(&self, x: &[i64]) -> bool {
        self.lhs(x) == self.rhs
    }
}

impl fmt::Display for HRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("x_{i}")
                } else {
                    format!("{c}*x_{i}")
                }
            })
            .collect();
        let lhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        write!(f, "{lhs} {} {}", self.sense.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub ambient: usize,
    pub equalities: Vec<HRow>,
    pub inequalities: Vec<HRow>,
}

impl HRep {
    pub fn rows(&self) -> impl Iterator<Item = &HRow> {
        self.equalities.iter().chain(&self.inequalities)
    }
}

fn indicator(d: usize, set: &BTreeSet<usize>) -> Vec<i64> {
    (0..d).map(|i| i64::from(set.contains(&i))).collect()
}

// Complement of the union of the given windows.
fn complement(fam: &WindowFamily, windows: impl Iterator<Item = usize>) -> BTreeSet<usize> {
    let mut b: BTreeSet<usize> = (0..fam.ambient_size()).collect();
    for w in windows {
        for a in fam.window(w) {
            b.remove(a);
        }
    }
    b
}

// Number of windows meeting `b`: the value of `e_B` on its maximal face.
fn windows_meeting(fam: &WindowFamily, b: &BTreeSet<usize>) -> i64 {
    fam.windows()
        .iter()
        .filter(|w| w.iter().any(|a| b.contains(a)))
        .count() as i64
}

fn excluded_singletons(n: usize, k: usize, s: usize) -> BTreeSet<usize> {
    if k == s + 1 {
        (1..n).map(|r| r * s).collect()
    } else {
        BTreeSet::new()
    }
}

/// Affine span plus one inequality per facet.
pub fn h_representation(n: usize, k: usize, s: usize) -> Result<HRep> {
    if n == 0 || k <= s || s == 0 {
        return Err(Error::InvalidParams(format!(
            "need n >= 1 and k > s >= 1, got ({n}, {k}, {s})"
        )));
    }
    let fam = spec_1d(n, k, s)?;
    let d = fam.ambient_size();
    let equalities = vec![HRow {
        coeffs: vec![1; d],
        rhs: n as i64,
        sense: Sense::Eq,
        label: RowLabel::AffineSpan,
    }];
    let mut inequalities = Vec::new();
    for r in 0..n.saturating_sub(1) {
        let b = complement(&fam, 0..=r);
        inequalities.push(HRow {
            coeffs: indicator(d, &b),
            rhs: windows_meeting(&fam, &b),
            sense: Sense::Le,
            label: RowLabel::PrefixUnion(r),
        });
    }
    for r in 1..n {
        let b = complement(&fam, r..n);
        inequalities.push(HRow {
            coeffs: indicator(d, &b),
            rhs: windows_meeting(&fam, &b),
            sense: Sense::Le,
            label: RowLabel::SuffixUnion(r),
        });
    }
    let skip = excluded_singletons(n, k, s);
    for a in (0..d).filter(|a| !skip.contains(a)) {
        inequalities.push(HRow {
            coeffs: indicator(d, &BTreeSet::from([a])),
            rhs: 0,
            sense: Sense::Ge,
            label: RowLabel::Singleton(a),
        });
    }
    Ok(HRep {
        ambient: d,
        equalities,
        inequalities,
    })
}

/// Rows exactly as the corollary prints them, for comparison.
pub fn printed_corollary_rows(n: usize, k: usize, s: usize) -> Result<HRep> {
    let derived = h_representation(n, k, s)?;
    let d = derived.ambient;
    let inequalities = derived
        .inequalities
        .iter()
        .map(|row| {
            let (coeffs, rhs) = match row.label {
                RowLabel::PrefixUnion(r) => (row.coeffs.clone(), n as i64 - 1 - r as i64),
                RowLabel::SuffixUnion(r) => (row.coeffs.clone(), r as i64 - 1),
                RowLabel::Singleton(a) => ((0..d).map(|i| i64::from(i != a)).collect(), n as i64),
                RowLabel::AffineSpan => unreachable!(),
            };
            HRow {
                coeffs,
                rhs,
                sense: Sense::Ge,
                label: row.label,
            }
        })
        .collect();
    Ok(HRep {
        ambient: d,
        equalities: derived.equalities,
        inequalities,
    })
}

/// One printed row next to its derived counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDiff {
    pub label: RowLabel,
    pub printed: HRow,
    pub derived: HRow,
    /// A vertex of the polytope that violates the printed row.
    pub violated_by: Option<Vec<i64>>,
}

pub fn printed_corollary_diff(n: usize, k: usize, s: usize) -> Result<Vec<RowDiff>> {
    let derived = h_representation(n, k, s)?;
    let printed = printed_corollary_rows(n, k, s)?;
    let points = vertex_points(n, k, s)?;
    Ok(printed
        .inequalities
        .into_iter()
        .zip(derived.inequalities)
        .map(|(p, d)| RowDiff {
            label: d.label,
            violated_by: points.iter().find(|v| !p.satisfied_by(v)).cloned(),
            printed: p,
            derived: d,
        })
        .collect())
}

fn vertex_points(n: usize, k: usize, s: usize) -> Result<Vec<Vec<i64>>> {
    let fam = spec_1d(n, k, s)?;
    let d = fam.ambient_size();
    Ok(enumerate_vertices(&fam)?
        .iter()
        .map(|v| v.point(d))
        .collect())
}

/// Outcome of checking an H-representation against enumerated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRepCheck {
    pub vertex_count: usize,
    /// Every vertex satisfies every row.
    pub sound: bool,
    /// Per inequality: its tight vertices span an affine space of
    /// dimension `d - 2`.
    pub facet_rows: Vec<bool>,
    /// No two inequalities share a tight set.
    pub distinct: bool,
}

impl HRepCheck {
    pub fn passed(&self) -> bool {
        self.sound && self.distinct && self.facet_rows.iter().all(|&b| b)
    }
}

fn affine_dim(points: &[&Vec<i64>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let diffs: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|p| {
            p.iter()
                .zip(first.iter())
                .map(|(a, b)| BigInt::from(a - b))
                .collect()
        })
        .collect();
    exact_rank(&diffs)
}

pub fn check_h_representation(n: usize, k: usize, s: usize) -> Result<HRepCheck> {
    let hrep = h_representation(n, k, s)?;
    let points = vertex_points(n, k, s)?;
    let d = hrep.ambient;
    let sound = points
        .iter()
        .all(|v| hrep.rows().all(|r| r.satisfied_by(v)));
    let mut tight_sets = BTreeSet::new();
    let mut distinct = true;
    let facet_rows = hrep
        .inequalities
        .iter()
        .map(|row| {
            let tight: Vec<usize> = (0..points.len())
                .filter(|&i| row.tight_at(&points[i]))
                .collect();
            let refs: Vec<&Vec<i64>> = tight.iter().map(|&i| &points[i]).collect();
            let ok = !refs.is_empty() && affine_dim(&refs) + 2 == d;
            distinct &= tight_sets.insert(tight);
            ok
        })
        .collect();
    Ok(HRepCheck {
        vertex_count: points.len(),
        sound,
        facet_rows,
        distinct,
    })
}
