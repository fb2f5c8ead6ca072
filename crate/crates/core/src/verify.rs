//! Self-check suite over the published counts and the cross-method grids.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Error;
use crate::facets1d::{check_h_representation, facet_count_formula, printed_corollary_diff};
use crate::model::{spec_1d, spec_3xn};
use crate::oracle::{enumerate_faces_with, facet_count_oracle_with, sample_regions, OracleConfig};
use crate::polyalg::{
    det_poly, gf_equal, series_coeffs, smallest_positive_root, RationalGF, TransferMatrix,
    DEFAULT_TOL,
};
use crate::seq1d::{
    closed_initial, count_1d_with, gf_1d, gf_closed, growth_1d, growth_large_strides,
    large_strides_residuals, matrix_counts, proportional_gf, unit_stride_gf, CountMethod,
};
use crate::seq2d::{class_counts, count_2d, count_2xn, derive_a14, growth_2d, Method2d};

/// Edges of `P_{n,k,1}`, rows `k = 3..=6`, columns `n = 1..=5`.
pub const TABLE_EDGES: [[u64; 5]; 4] = [
    [3, 11, 34, 96, 260],
    [6, 21, 64, 180, 480],
    [10, 34, 102, 284, 752],
    [15, 50, 148, 408, 1072],
];

/// All faces of `P_{n,k,1}` including the empty face, same layout.
pub const TABLE_FACES: [[u64; 5]; 4] = [
    [8, 26, 88, 298, 1016],
    [16, 58, 208, 730, 2512],
    [32, 122, 448, 1594, 5536],
    [64, 250, 928, 3322, 11584],
];

/// Facets of `Q_n` for `n = 2..=5`.
pub const GRID_FACETS: [u64; 4] = [8, 21, 40, 67];

/// Budget large enough for the biggest enumeration the suite runs.
pub const SUITE_BUDGET: u128 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Quick => "quick",
            Level::Full => "full",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub item: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub error: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub level: Level,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn eq<T: PartialEq + ToString>(&mut self, item: impl Into<String>, expected: T, actual: T) {
        self.checked += 1;
        if expected != actual {
            self.mismatches.push(Mismatch {
                item: item.into(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn holds(&mut self, item: impl Into<String>, ok: bool) {
        self.eq(item, true, ok);
    }

    fn close(&mut self, item: impl Into<String>, expected: f64, actual: f64, tol: f64) {
        self.checked += 1;
        if !((expected - actual).abs() <= tol) {
            self.mismatches.push(Mismatch {
                item: item.into(),
                expected: format!("{expected} +/- {tol:e}"),
                actual: actual.to_string(),
            });
        }
    }
}

type CheckFn = fn(Level, &mut Tally) -> Result<(), Error>;

const CHECKS: [(&str, CheckFn); 12] = [
    ("golden-gf", golden_gf),
    ("cross-method-1d", cross_method_1d),
    ("large-strides", large_strides),
    ("proportional-strides", proportional_strides),
    ("trivial-regime", trivial_regime),
    ("face-tables", face_tables),
    ("facets-1d", facets_1d),
    ("grid-3xn", grid_3xn),
    ("class-counts", class_count_identities),
    ("asymptotics", asymptotics),
    ("region-sampling", region_sampling),
    ("printed-arc-range", printed_arc_range),
];

/// Runs every check; results keep the fixed check order.
pub fn run_suite(level: Level) -> Report {
    let checks = CHECKS
        .par_iter()
        .map(|&(name, f)| {
            let mut tally = Tally::default();
            let error = f(level, &mut tally).err().map(|e| e.to_string());
            CheckResult {
                name,
                checked: tally.checked,
                mismatches: tally.mismatches,
                error,
            }
        })
        .collect();
    Report { level, checks }
}

fn config() -> OracleConfig {
    OracleConfig::with_budget(SUITE_BUDGET)
}

fn golden_gf(_: Level, t: &mut Tally) -> Result<(), Error> {
    let f = gf_1d(3, 1)?;
    t.eq(
        "gf_1d(3,1)",
        RationalGF::from_i64(&[3, 1, -1], &[1, -2, -1, 1])?,
        f.clone(),
    );
    let series: Vec<BigInt> = [3, 7, 16, 36, 81].into_iter().map(BigInt::from).collect();
    t.eq(
        "series through x^4",
        format!("{series:?}"),
        format!("{:?}", series_coeffs(&f, 4)?),
    );
    Ok(())
}

fn cross_method_1d(level: Level, t: &mut Tally) -> Result<(), Error> {
    let max_n = if level == Level::Full { 6 } else { 4 };
    let cfg = config();
    for k in 2..=6 {
        for s in 1..k {
            for n in 1..=max_n {
                let m = count_1d_with(n, k, s, CountMethod::Matrix, &cfg)?;
                let item = |meth: &str| format!("b_{n}^({k},{s}) {meth}");
                t.eq(
                    item("gf"),
                    &m,
                    &count_1d_with(n, k, s, CountMethod::Gf, &cfg)?,
                );
                t.eq(
                    item("oracle"),
                    &m,
                    &count_1d_with(n, k, s, CountMethod::Oracle, &cfg)?,
                );
                match count_1d_with(n, k, s, CountMethod::Closed, &cfg) {
                    Ok(c) => t.eq(item("closed"), &m, &c),
                    Err(Error::RegimeNotCovered { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(())
}

const LARGE_PAIRS: [(usize, usize); 5] = [(4, 2), (5, 3), (6, 3), (6, 4), (7, 4)];

fn large_strides(_: Level, t: &mut Tally) -> Result<(), Error> {
    for (k, s) in LARGE_PAIRS {
        let closed = gf_closed(k, s)?.gf;
        let g = gf_1d(k, s)?.one_plus_x_times()?;
        t.holds(
            format!("G({k},{s}) closed = transfer"),
            gf_equal(&closed, &g),
        );
        let res = large_strides_residuals(k, s, 20)?;
        // residual i belongs to n = i + 1; the range starts at n = 2
        t.holds(
            format!("recurrence ({k},{s}) for 2 <= n <= 20"),
            res[1..].iter().all(Zero::is_zero),
        );
    }
    Ok(())
}

const PROPORTIONAL_PAIRS: [(usize, usize); 6] = [(3, 1), (4, 1), (5, 1), (4, 2), (6, 2), (6, 3)];

fn proportional_strides(_: Level, t: &mut Tally) -> Result<(), Error> {
    for (k, s) in PROPORTIONAL_PAIRS {
        let g = gf_1d(k, s)?.one_plus_x_times()?;
        t.holds(
            format!("proportional G({k},{s})"),
            gf_equal(&proportional_gf(k, s)?, &g),
        );
        if s == 1 {
            t.holds(
                format!("unit-stride G({k},1)"),
                gf_equal(&unit_stride_gf(k)?, &g),
            );
        }
        let r = k / s - 1;
        let b = matrix_counts(k, s, r + 3)?;
        for m in 1..=r + 2 {
            t.eq(
                format!("b_{}^({k},{s}) initial", m + 1),
                &b[m],
                &closed_initial(m, k, s)?,
            );
        }
    }
    Ok(())
}

fn trivial_regime(_: Level, t: &mut Tally) -> Result<(), Error> {
    for (k, s) in [(2, 1), (3, 2), (2, 2), (3, 3)] {
        for n in 1..=5 {
            let o = count_1d_with(n, k, s, CountMethod::Oracle, &config())?;
            t.eq(
                format!("b_{n}^({k},{s})"),
                num_traits::pow(BigInt::from(k), n),
                o,
            );
        }
    }
    Ok(())
}

fn face_tables(level: Level, t: &mut Tally) -> Result<(), Error> {
    let max_n = if level == Level::Full { 5 } else { 3 };
    for (row, k) in (3..=6).enumerate() {
        for n in 1..=max_n {
            let f = enumerate_faces_with(&spec_1d(n, k, 1)?, &config())?;
            t.eq(
                format!("edges n={n} k={k}"),
                BigUint::from(TABLE_EDGES[row][n - 1]),
                f.get(1),
            );
            t.eq(
                format!("faces n={n} k={k}"),
                BigUint::from(TABLE_FACES[row][n - 1]),
                f.total_nonempty() + 1u32,
            );
        }
    }
    Ok(())
}

fn facets_1d(level: Level, t: &mut Tally) -> Result<(), Error> {
    let (max_n, max_k) = if level == Level::Full { (4, 5) } else { (3, 4) };
    for n in 1..=max_n {
        for k in 2..=max_k {
            for s in 1..k {
                let oracle = facet_count_oracle_with(&spec_1d(n, k, s)?, &config())?;
                let formula = facet_count_formula(n, k, s)?;
                t.eq(
                    format!("facets ({n},{k},{s})"),
                    BigUint::from(formula),
                    oracle,
                );
                let check = check_h_representation(n, k, s)?;
                t.holds(format!("hrep ({n},{k},{s})"), check.passed());
            }
        }
    }
    let diff = printed_corollary_diff(2, 3, 1)?;
    t.holds(
        "printed rows for (2,3,1) are violated",
        diff.iter().any(|r| r.violated_by.is_some()),
    );
    Ok(())
}

fn grid_3xn(level: Level, t: &mut Tally) -> Result<(), Error> {
    for (n, v) in [(2, 14), (3, 150), (4, 1536), (5, 15594)] {
        t.eq(
            format!("V_{n} b6"),
            BigInt::from(v),
            count_2d(n, Method2d::B6)?,
        );
        t.eq(
            format!("V_{n} gf"),
            BigInt::from(v),
            count_2d(n, Method2d::Gf)?,
        );
        if n <= 4 {
            t.eq(
                format!("V_{n} oracle"),
                BigInt::from(v),
                count_2d(n, Method2d::Oracle)?,
            );
        }
    }
    t.eq("ones in A", BigInt::from(150), derive_a14().entry_sum());
    let max_n = if level == Level::Full { 5 } else { 3 };
    for n in 2..=max_n {
        let f = facet_count_oracle_with(&spec_3xn(n)?, &config())?;
        t.eq(
            format!("facets of Q_{n}"),
            BigUint::from(GRID_FACETS[n - 2]),
            f,
        );
    }
    for (n, v) in [(2, 4), (3, 14), (4, 48), (5, 164)] {
        t.eq(format!("V'_{n}"), BigInt::from(v), count_2xn(n)?);
    }
    Ok(())
}

fn class_count_identities(_: Level, t: &mut Tally) -> Result<(), Error> {
    for n in 2..=4 {
        let c = class_counts(n)?;
        for (p, q) in [(1, 10), (2, 13), (11, 5), (4, 7), (2, 5), (2, 11)] {
            t.eq(format!("n={n} class {p} vs {q}"), c.at(p), c.at(q));
        }
        if n >= 3 {
            let prev = count_2d(n - 1, Method2d::B6)?;
            for p in [6, 8, 12, 14] {
                t.eq(format!("n={n} class {p} vs V_{}", n - 1), &prev, c.at(p));
            }
        }
    }
    Ok(())
}

fn certified(t: &mut Tally, name: &str, m: TransferMatrix) -> Result<(), Error> {
    let d = det_poly(&m);
    let root = smallest_positive_root(&d, DEFAULT_TOL)?;
    t.holds(
        format!("{name} root bracket"),
        root.certify(&d, DEFAULT_TOL),
    );
    Ok(())
}

fn asymptotics(_: Level, t: &mut Tally) -> Result<(), Error> {
    t.close("growth (3,1)", 0.8096, growth_1d(3, 1)?, 5e-4);
    for (k, s) in LARGE_PAIRS {
        t.close(
            format!("growth ({k},{s})"),
            growth_large_strides(k, s)?,
            growth_1d(k, s)?,
            1e-9,
        );
        certified(t, &format!("D_({k},{s})"), crate::seq1d::adjacency(k, s)?)?;
    }
    certified(t, "D_(3,1)", crate::seq1d::adjacency(3, 1)?)?;
    let g = growth_2d()?;
    t.close("growth 3 x n", 2.3156, g, 1e-3);
    t.close("1/alpha", 0.098706, (-g).exp(), 1e-4);
    let den = crate::seq2d::gf_2d().den().clone();
    let root = smallest_positive_root(&den, DEFAULT_TOL)?;
    t.holds("3 x n root bracket", root.certify(&den, DEFAULT_TOL));
    Ok(())
}

fn region_sampling(_: Level, t: &mut Tally) -> Result<(), Error> {
    let a = sample_regions(&spec_1d(2, 3, 1)?, 20_000, 7)?;
    t.eq("regions P_(2,3,1)", 7, a.distinct_count);
    t.holds("regions P_(2,3,1) are faces", a.all_faces);
    let b = sample_regions(&spec_3xn(2)?, 200_000, 7)?;
    t.eq("regions Q_2", 14, b.distinct_count);
    t.holds("regions Q_2 are faces", b.all_faces);
    let again = sample_regions(&spec_1d(2, 3, 1)?, 20_000, 7)?;
    t.holds("sampling is reproducible", again == a);
    Ok(())
}

fn printed_arc_range(_: Level, t: &mut Tally) -> Result<(), Error> {
    // arcs (s+i, j) removed for i = 1..k-1-s only, as the range is printed
    let (k, s) = (3usize, 1usize);
    let mut rows = vec![vec![1u64; k]; k];
    for i in 1..k - s {
        for j in 0..k - s {
            if i != j {
                rows[s + i][j] = 0;
            }
        }
    }
    let m = TransferMatrix::from_u64(&rows)?;
    let ones = vec![1; k];
    let literal = crate::polyalg::gf_from_matrix(&m, &ones, &ones)?;
    t.holds(
        "printed range misses the golden GF",
        !gf_equal(&literal, &gf_1d(k, s)?),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let r = run_suite(Level::Quick);
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
            assert!(c.checked > 0, "{}", c.name);
        }
        assert_eq!(r.checks.len(), CHECKS.len());
    }
}
