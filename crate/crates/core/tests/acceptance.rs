//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};

use poolfaces::facets1d::{
    check_h_representation, facet_count_formula, h_representation, printed_corollary_diff,
    RowLabel, Sense,
};
use poolfaces::model::{spec_1d, spec_3xn};
use poolfaces::oracle::{
    enumerate_faces_with, enumerate_vertices, facet_count_oracle_with, sample_regions, OracleConfig,
};
use poolfaces::polyalg::{
    det_poly, gf_equal, series_coeffs, smallest_positive_root, IntPoly, RationalGF,
};
use poolfaces::seq1d::{
    adjacency, closed_initial, count_1d, gf_1d, gf_closed, growth_1d, growth_large_strides,
    matrix_counts, proportional_gf, unit_stride_gf, CountMethod,
};
use poolfaces::seq2d::{
    class_counts, count_2d, count_2d_with, count_2xn, derive_a14, growth_2d, Method2d,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let el = start.elapsed();
    ensure(el < limit, || format!("took {el:?}, limit {limit:?}"))
}

fn raised() -> OracleConfig {
    OracleConfig::with_budget(10_000_000_000)
}

fn golden_gf() -> Outcome {
    let t = Instant::now();
    let f = gf_1d(3, 1).map_err(|e| e.to_string())?;
    ensure(f.num() == &IntPoly::from_i64(&[3, 1, -1]), || {
        format!("numerator {}", f.num())
    })?;
    ensure(f.den() == &IntPoly::from_i64(&[1, -2, -1, 1]), || {
        format!("denominator {}", f.den())
    })?;
    let s = series_coeffs(&f, 4).map_err(|e| e.to_string())?;
    ensure(s == big(&[3, 7, 16, 36, 81]), || format!("series {s:?}"))?;
    within(Duration::from_secs(1), t)?;
    Ok(format!("F = {f}"))
}

fn cross_method() -> Outcome {
    let t = Instant::now();
    let mut compared = 0;
    for k in 2..=6 {
        for s in 1..k {
            for n in 1..=6 {
                let m = count_1d(n, k, s, CountMethod::Matrix).map_err(|e| e.to_string())?;
                let g = count_1d(n, k, s, CountMethod::Gf).map_err(|e| e.to_string())?;
                let o = count_1d(n, k, s, CountMethod::Oracle).map_err(|e| e.to_string())?;
                ensure(m == g && m == o, || {
                    format!("b_{n}^({k},{s}): matrix {m}, gf {g}, oracle {o}")
                })?;
                compared += 3;
                if let Ok(c) = count_1d(n, k, s, CountMethod::Closed) {
                    ensure(c == m, || {
                        format!("b_{n}^({k},{s}): closed {c}, matrix {m}")
                    })?;
                    compared += 1;
                }
            }
        }
    }
    within(Duration::from_secs(300), t)?;
    Ok(format!("{compared} counts agree"))
}

fn large_strides() -> Outcome {
    for (k, s) in [(4, 2), (5, 3), (6, 3), (6, 4), (7, 4)] {
        let c = gf_closed(k, s).map_err(|e| e.to_string())?;
        let g = gf_1d(k, s)
            .and_then(|f| f.one_plus_x_times())
            .map_err(|e| e.to_string())?;
        ensure(gf_equal(&c.gf, &g), || {
            format!("({k},{s}): closed {} vs {}", c.gf, g)
        })?;
        let expected =
            RationalGF::from_i64(&[1], &[1, -(k as i64), ((k - s) * (k - s - 1)) as i64]).unwrap();
        ensure(gf_equal(&expected, &g), || {
            format!("({k},{s}) two-term form")
        })?;
        let b = matrix_counts(k, s, 22).map_err(|e| e.to_string())?;
        let (kk, cc) = (BigInt::from(k), BigInt::from((k - s) * (k - s - 1)));
        for n in 2..=20 {
            // b[i] holds b_{i+1}
            let lhs = &b[n + 1];
            let rhs = &kk * &b[n] - &cc * &b[n - 1];
            ensure(*lhs == rhs, || format!("({k},{s}) recurrence at n={n}"))?;
        }
    }
    Ok("5 pairs, recurrence 2 <= n <= 20".into())
}

fn proportional() -> Outcome {
    let mut checked = 0;
    for (k, s) in [(3, 1), (4, 1), (5, 1), (4, 2), (6, 2), (6, 3)] {
        let g = gf_1d(k, s)
            .and_then(|f| f.one_plus_x_times())
            .map_err(|e| e.to_string())?;
        let p = proportional_gf(k, s).map_err(|e| e.to_string())?;
        ensure(gf_equal(&p, &g), || format!("({k},{s}): {p} vs {g}"))?;
        if s == 1 {
            let u = unit_stride_gf(k).map_err(|e| e.to_string())?;
            ensure(gf_equal(&u, &g), || format!("({k},1) unit-stride form {u}"))?;
        }
        let r = k / s - 1;
        let b = matrix_counts(k, s, r + 3).map_err(|e| e.to_string())?;
        for m in 1..=r + 2 {
            let c = closed_initial(m, k, s).map_err(|e| e.to_string())?;
            ensure(c == b[m], || format!("({k},{s}) m={m}: {c} vs {}", b[m]))?;
            checked += 1;
        }
    }
    Ok(format!("6 pairs, {checked} initial terms"))
}

fn trivial() -> Outcome {
    for (k, s) in [(2, 1), (3, 2), (2, 2), (3, 3)] {
        for n in 1..=5 {
            let o = count_1d(n, k, s, CountMethod::Oracle).map_err(|e| e.to_string())?;
            let want = num_traits::pow(BigInt::from(k), n);
            ensure(o == want, || format!("b_{n}^({k},{s}) = {o}, want {want}"))?;
            let c = count_1d(n, k, s, CountMethod::Closed).map_err(|e| e.to_string())?;
            ensure(c == want, || format!("closed b_{n}^({k},{s}) = {c}"))?;
        }
    }
    Ok("k^n for 4 pairs, n <= 5".into())
}

const EDGES: [[u64; 5]; 4] = [
    [3, 11, 34, 96, 260],
    [6, 21, 64, 180, 480],
    [10, 34, 102, 284, 752],
    [15, 50, 148, 408, 1072],
];
const FACES: [[u64; 5]; 4] = [
    [8, 26, 88, 298, 1016],
    [16, 58, 208, 730, 2512],
    [32, 122, 448, 1594, 5536],
    [64, 250, 928, 3322, 11584],
];

fn tables() -> Outcome {
    let t = Instant::now();
    for (row, k) in (3..=6).enumerate() {
        for n in 1..=5 {
            let f = enumerate_faces_with(&spec_1d(n, k, 1).unwrap(), &raised())
                .map_err(|e| e.to_string())?;
            let total = f.total_nonempty() + 1u32;
            ensure(f.get(1) == BigUint::from(EDGES[row][n - 1]), || {
                format!("edges k={k} n={n}: {}", f.get(1))
            })?;
            ensure(total == BigUint::from(FACES[row][n - 1]), || {
                format!("faces k={k} n={n}: {total}")
            })?;
        }
    }
    within(Duration::from_secs(600), t)?;
    Ok("k = 3..6, n = 1..5 exact".into())
}

fn facets() -> Outcome {
    let mut rows = 0;
    for n in 1..=4 {
        for k in 2..=5 {
            for s in 1..k {
                let fam = spec_1d(n, k, s).unwrap();
                let oracle = facet_count_oracle_with(&fam, &raised()).map_err(|e| e.to_string())?;
                let formula = facet_count_formula(n, k, s).map_err(|e| e.to_string())?;
                ensure(oracle == BigUint::from(formula), || {
                    format!("({n},{k},{s}): oracle {oracle}, formula {formula}")
                })?;
                let h = h_representation(n, k, s).map_err(|e| e.to_string())?;
                ensure(
                    h.equalities.len() == 1 && h.inequalities.len() == formula,
                    || format!("({n},{k},{s}) row count"),
                )?;
                let check = check_h_representation(n, k, s).map_err(|e| e.to_string())?;
                ensure(check.passed(), || format!("({n},{k},{s}) {check:?}"))?;
                rows += h.inequalities.len();
            }
        }
    }
    let diff = printed_corollary_diff(2, 3, 1).map_err(|e| e.to_string())?;
    let unions = diff
        .iter()
        .filter(|d| !matches!(d.label, RowLabel::Singleton(_)));
    ensure(unions.clone().count() == 2, || {
        "expected one prefix and one suffix row".into()
    })?;
    ensure(
        unions
            .clone()
            .all(|d| d.printed.sense == Sense::Ge && d.derived.sense == Sense::Le),
        || "sense discrepancy missing from report".into(),
    )?;
    let violated = diff.iter().filter(|d| d.violated_by.is_some()).count();
    ensure(violated > 0, || "printed rows all hold".into())?;
    Ok(format!(
        "{rows} facet rows verified; printed form violated on {violated}/{} rows",
        diff.len()
    ))
}

fn grid() -> Outcome {
    for (n, v) in [(2, 14), (3, 150), (4, 1536), (5, 15594)] {
        for m in [Method2d::B6, Method2d::Gf] {
            let c = count_2d(n, m).map_err(|e| e.to_string())?;
            ensure(c == BigInt::from(v), || {
                format!("V_{n} via {}: {c}", m.name())
            })?;
        }
        if n <= 4 {
            let o = count_2d(n, Method2d::Oracle).map_err(|e| e.to_string())?;
            ensure(o == BigInt::from(v), || format!("V_{n} oracle: {o}"))?;
        }
    }
    let a = derive_a14();
    ensure(a.support_size() == 150, || {
        format!("A has {} ones", a.support_size())
    })?;
    ensure(count_2d(3, Method2d::A14).is_ok(), || {
        "derived A differs from printed A".into()
    })?;
    for (n, want) in [(2, 8u64), (3, 21), (4, 40), (5, 67)] {
        let f =
            facet_count_oracle_with(&spec_3xn(n).unwrap(), &raised()).map_err(|e| e.to_string())?;
        ensure(f == BigUint::from(want), || format!("Q_{n} facets {f}"))?;
    }
    for (n, want) in [(2, 4), (3, 14), (4, 48), (5, 164)] {
        let c = count_2xn(n).map_err(|e| e.to_string())?;
        ensure(c == BigInt::from(want), || format!("V'_{n} = {c}"))?;
    }
    let v6 = count_2d_with(6, Method2d::Oracle, &raised()).map_err(|e| e.to_string())?;
    ensure(v6 == count_2d(6, Method2d::B6).unwrap(), || {
        format!("V_6 oracle {v6}")
    })?;
    Ok("V_2..V_5, A (150 ones), facets 8/21/40/67, 2 x n".into())
}

fn classes() -> Outcome {
    for n in 2..=4 {
        let c = class_counts(n).map_err(|e| e.to_string())?;
        let v = count_2d(n, Method2d::B6).unwrap();
        ensure(c.total() == v, || {
            format!("n={n} classes sum to {}", c.total())
        })?;
        for (p, q) in [(1, 10), (2, 13), (11, 5), (4, 7), (2, 5), (2, 11)] {
            ensure(c.at(p) == c.at(q), || {
                format!("n={n}: [{p}]={} [{q}]={}", c.at(p), c.at(q))
            })?;
        }
        if n >= 3 {
            let prev = count_2d(n - 1, Method2d::B6).unwrap();
            for p in [6, 8, 12, 14] {
                ensure(*c.at(p) == prev, || {
                    format!("n={n}: [{p}]={} vs V_{}={prev}", c.at(p), n - 1)
                })?;
            }
        }
    }
    Ok("n = 2..4".into())
}

fn certify(p: &IntPoly) -> Result<f64, String> {
    let r = smallest_positive_root(p, 1e-12).map_err(|e| e.to_string())?;
    ensure(r.certify(p, 1e-12), || format!("uncertified root of {p}"))?;
    Ok(r.value)
}

fn asymptotics() -> Outcome {
    let g31 = growth_1d(3, 1).map_err(|e| e.to_string())?;
    ensure((g31 - 0.8096).abs() <= 5e-4, || {
        format!("growth (3,1) = {g31}")
    })?;
    let rho = certify(&det_poly(&adjacency(3, 1).unwrap()))?;
    ensure((-rho.ln() - g31).abs() < 1e-12, || {
        "growth (3,1) root".into()
    })?;
    for (k, s) in [(4, 2), (5, 3), (6, 3), (6, 4), (7, 4)] {
        let a = growth_1d(k, s).map_err(|e| e.to_string())?;
        let b = growth_large_strides(k, s).map_err(|e| e.to_string())?;
        ensure((a - b).abs() <= 1e-9, || format!("({k},{s}): {a} vs {b}"))?;
        certify(&det_poly(&adjacency(k, s).unwrap()))?;
    }
    let g = growth_2d().map_err(|e| e.to_string())?;
    ensure((g - 2.3156).abs() <= 1e-3, || format!("growth 3 x n = {g}"))?;
    ensure(((-g).exp() - 0.098706).abs() <= 1e-4, || {
        format!("1/alpha = {}", (-g).exp())
    })?;
    let den = RationalGF::from_i64(&[0, 1, 1, -1], &[1, -13, 31, -20, 4])
        .unwrap()
        .den()
        .clone();
    let rho2 = certify(&den)?;
    ensure((1.0 / rho2 - 10.1311).abs() < 1e-4, || {
        format!("alpha = {}", 1.0 / rho2)
    })?;
    Ok(format!("ln 1/rho = {g31:.6} (1-D), {g:.6} (3 x n)"))
}

fn sampling() -> Outcome {
    let a = sample_regions(&spec_1d(2, 3, 1).unwrap(), 20_000, 2024).map_err(|e| e.to_string())?;
    ensure(a.distinct_count == 7 && a.all_faces, || format!("{a:?}"))?;
    let v = enumerate_vertices(&spec_1d(2, 3, 1).unwrap())
        .unwrap()
        .len();
    ensure(a.distinct_count == v, || {
        "sample count vs vertex count".into()
    })?;
    let b = sample_regions(&spec_3xn(2).unwrap(), 200_000, 2024).map_err(|e| e.to_string())?;
    ensure(b.distinct_count == 14 && b.all_faces, || format!("{b:?}"))?;
    let again = sample_regions(&spec_3xn(2).unwrap(), 200_000, 2024).map_err(|e| e.to_string())?;
    ensure(again == b, || "not reproducible".into())?;
    Ok("7 and 14 regions, reproducible".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden generating function (3,1)", golden_gf),
        ("cross-method vertex counts", cross_method),
        ("large strides", large_strides),
        ("proportional strides", proportional),
        ("trivial regime", trivial),
        ("edge and face tables", tables),
        ("facets and H-representation", facets),
        ("3 x n grid", grid),
        ("class-count identities", classes),
        ("asymptotics", asymptotics),
        ("region sampling", sampling),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
