//! Brute-force ground truth for any window family.
//!
//! Faces are enumerated as lists of chosen sub-simplices filtered by the
//! acyclicity criterion. Since every nonempty face decomposes uniquely into
//! faces of the summands, each acyclic list is exactly one face and no convex
//! hull computation or deduplication is needed.
//!
//! The default strategy walks the lists depth first and abandons a prefix as
//! soon as its partial graph has a cycle: adding windows only merges classes
//! and adds edges, so a cycle never disappears. [`Strategy::Exhaustive`]
//! checks every complete list instead and exists to cross-check the pruning.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::face::{graph_of, is_face, VertexSelection};
use crate::model::WindowFamily;

/// Default cap on the number of candidate selections.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Pruned,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget: u128,
    pub strategy: Strategy,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            strategy: Strategy::Pruned,
        }
    }
}

impl OracleConfig {
    pub fn with_budget(budget: u128) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }
}

/// Face counts by dimension, from vertices up to the polytope itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    counts: Vec<BigUint>,
}

impl FVector {
    pub fn polytope_dim(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, dim: usize) -> BigUint {
        self.counts.get(dim).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// All nonempty faces, the polytope included.
    pub fn total_nonempty(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

fn check_budget(candidates: u128, budget: u128) -> Result<()> {
    if candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    Ok(())
}

fn vertex_candidates(family: &WindowFamily) -> u128 {
    family
        .windows()
        .iter()
        .fold(1u128, |acc, w| acc.saturating_mul(w.len() as u128))
}

fn face_candidates(family: &WindowFamily) -> u128 {
    family.windows().iter().fold(1u128, |acc, w| {
        let subsets = if w.len() >= 127 {
            u128::MAX
        } else {
            (1u128 << w.len()) - 1
        };
        acc.saturating_mul(subsets)
    })
}

/// Dimension of the whole polytope, `d` minus the classes of the full selection.
pub fn polytope_dim(family: &WindowFamily) -> usize {
    let g = graph_of(
        family.ambient_size(),
        family
            .windows()
            .iter()
            .map(|w| (w.as_slice(), w.as_slice())),
    );
    family.ambient_size() - g.classes().len()
}

pub fn enumerate_vertices(family: &WindowFamily) -> Result<Vec<VertexSelection>> {
    enumerate_vertices_with(family, &OracleConfig::default())
}

/// All acyclic one-vertex-per-window selections, in lexicographic order of
/// their words.
pub fn enumerate_vertices_with(
    family: &WindowFamily,
    config: &OracleConfig,
) -> Result<Vec<VertexSelection>> {
    check_budget(vertex_candidates(family), config.budget)?;
    let words: Vec<Vec<Vec<usize>>> = family
        .window(0)
        .par_iter()
        .map(|&first| {
            let mut faces = vec![vec![first]];
            let mut out = Vec::new();
            match config.strategy {
                Strategy::Pruned => vertex_dfs(family, &mut faces, &mut out),
                Strategy::Exhaustive => vertex_all(family, &mut faces, &mut out),
            }
            out
        })
        .collect();
    Ok(words
        .into_iter()
        .flatten()
        .map(VertexSelection::from_word_unchecked)
        .collect())
}

fn prefix_acyclic(family: &WindowFamily, faces: &[Vec<usize>]) -> bool {
    let pairs = family
        .windows()
        .iter()
        .zip(faces)
        .map(|(w, f)| (w.as_slice(), f.as_slice()));
    graph_of(family.ambient_size(), pairs).is_acyclic()
}

fn vertex_dfs(family: &WindowFamily, faces: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<usize>>) {
    if !prefix_acyclic(family, faces) {
        return;
    }
    if faces.len() == family.len() {
        out.push(faces.iter().map(|f| f[0]).collect());
        return;
    }
    for &a in family.window(faces.len()) {
        faces.push(vec![a]);
        vertex_dfs(family, faces, out);
        faces.pop();
    }
}

fn vertex_all(family: &WindowFamily, faces: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<usize>>) {
    if faces.len() == family.len() {
        if prefix_acyclic(family, faces) {
            out.push(faces.iter().map(|f| f[0]).collect());
        }
        return;
    }
    for &a in family.window(faces.len()) {
        faces.push(vec![a]);
        vertex_all(family, faces, out);
        faces.pop();
    }
}

pub fn enumerate_faces(family: &WindowFamily) -> Result<FVector> {
    enumerate_faces_with(family, &OracleConfig::default())
}

/// Tallies every nonempty face by dimension.
pub fn enumerate_faces_with(family: &WindowFamily, config: &OracleConfig) -> Result<FVector> {
    check_budget(face_candidates(family), config.budget)?;
    if let Some(w) = family.windows().iter().find(|w| w.len() > 63) {
        return Err(Error::InvalidParams(format!(
            "face enumeration supports windows of at most 63 coordinates, got {}",
            w.len()
        )));
    }
    let top = polytope_dim(family);
    let first = family.window(0);
    let tallies: Vec<Vec<u64>> = (1u64..1 << first.len())
        .into_par_iter()
        .map(|mask| {
            let mut tally = vec![0u64; top + 1];
            let mut faces = vec![subset(first, mask)];
            face_walk(family, &mut faces, &mut tally, config.strategy);
            tally
        })
        .collect();
    let mut counts = vec![BigUint::default(); top + 1];
    for tally in tallies {
        for (c, t) in counts.iter_mut().zip(tally) {
            *c += t;
        }
    }
    Ok(FVector { counts })
}

fn subset(window: &[usize], mask: u64) -> Vec<usize> {
    window
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

fn face_walk(
    family: &WindowFamily,
    faces: &mut Vec<Vec<usize>>,
    tally: &mut [u64],
    strategy: Strategy,
) {
    let complete = faces.len() == family.len();
    if complete || strategy == Strategy::Pruned {
        let pairs = family
            .windows()
            .iter()
            .zip(faces.iter())
            .map(|(w, f)| (w.as_slice(), f.as_slice()));
        let g = graph_of(family.ambient_size(), pairs);
        if !g.is_acyclic() {
            return;
        }
        if complete {
            tally[family.ambient_size() - g.classes().len()] += 1;
            return;
        }
    }
    let window = family.window(faces.len());
    for mask in 1u64..1 << window.len() {
        faces.push(subset(window, mask));
        face_walk(family, faces, tally, strategy);
        faces.pop();
    }
}

/// Nonempty faces plus the empty face.
pub fn total_face_count(family: &WindowFamily) -> Result<BigUint> {
    total_face_count_with(family, &OracleConfig::default())
}

pub fn total_face_count_with(family: &WindowFamily, config: &OracleConfig) -> Result<BigUint> {
    Ok(enumerate_faces_with(family, config)?.total_nonempty() + 1u32)
}

/// Number of faces one dimension below the polytope.
pub fn facet_count_oracle(family: &WindowFamily) -> Result<BigUint> {
    facet_count_oracle_with(family, &OracleConfig::default())
}

pub fn facet_count_oracle_with(family: &WindowFamily, config: &OracleConfig) -> Result<BigUint> {
    let f = enumerate_faces_with(family, config)?;
    Ok(match f.polytope_dim() {
        0 => BigUint::default(),
        top => f.get(top - 1),
    })
}

/// Per-window argmax of the input: the gradient pattern of max-pooling at `x`.
pub fn region_pattern(family: &WindowFamily, input: &[f64]) -> Result<VertexSelection> {
    if input.len() != family.ambient_size() {
        return Err(Error::InvalidParams(format!(
            "input has {} entries, expected {}",
            input.len(),
            family.ambient_size()
        )));
    }
    if input.iter().any(|x| x.is_nan()) {
        return Err(Error::InvalidParams("input contains NaN".into()));
    }
    let mut word = Vec::with_capacity(family.len());
    for (i, w) in family.windows().iter().enumerate() {
        let mut best = w[0];
        let mut tied = false;
        for &a in &w[1..] {
            if input[a] > input[best] {
                best = a;
                tied = false;
            } else if input[a] == input[best] {
                tied = true;
            }
        }
        if tied {
            return Err(Error::TieDetected { window: i });
        }
        word.push(best);
    }
    Ok(VertexSelection::from_word_unchecked(word))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionSample {
    pub distinct_count: usize,
    pub all_faces: bool,
}

/// Samples uniform inputs in `[0,1)^d` and collects distinct gradient
/// patterns. Trial `t` draws from ChaCha stream `t` of `seed`, so the result
/// does not depend on how trials are split across threads.
pub fn sample_regions(family: &WindowFamily, trials: usize, seed: u64) -> Result<RegionSample> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let d = family.ambient_size();
    let patterns: BTreeSet<VertexSelection> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            loop {
                let x: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
                match region_pattern(family, &x) {
                    Ok(p) => return p,
                    Err(Error::TieDetected { .. }) => continue,
                    Err(e) => unreachable!("sampled input rejected: {e}"),
                }
            }
        })
        .collect();
    let all_faces = patterns.iter().all(|p| {
        p.to_face_selection(family)
            .map(|sel| is_face(&sel))
            .unwrap_or(false)
    });
    Ok(RegionSample {
        distinct_count: patterns.len(),
        all_faces,
    })
}
