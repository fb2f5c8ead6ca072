use num_bigint::{BigInt, BigUint};
use poolfaces::facets1d::{
    check_h_representation, facet_count_formula, h_representation, printed_corollary_diff, HRow,
};
use poolfaces::oracle::{
    enumerate_faces_with, enumerate_vertices_with, facet_count_oracle_with, sample_regions,
    total_face_count_with, OracleConfig,
};
use poolfaces::polyalg::{det_poly, gf_equal, series_coeffs, smallest_positive_root};
use poolfaces::seq1d::{
    adjacency, count_1d_with, gf_1d, gf_closed, growth_large_strides, in_large_strides, CountMethod,
};
use poolfaces::seq2d::{class_counts_with, count_2d_with, count_2xn, gf_2d, Method2d, Q2_ORDER};
use poolfaces::verify::{run_suite, Level};
use poolfaces::{
    model::{spec_1d, spec_3xn, windows_from_spec, PoolingSpec},
    Error, IntPoly, Result,
};
use serde_json::{json, Value};

use crate::render::{big, gf, poly, Params, Payload, Table};
use crate::{Budget, Command, LevelArg, Method1d, Method3xn, Span};

struct Body {
    result: Value,
    provenance: Vec<String>,
    table: Table,
    failed: bool,
}

impl Body {
    fn ok(result: Value, provenance: Vec<String>, table: Table) -> Self {
        Self {
            result,
            provenance,
            table,
            failed: false,
        }
    }
}

pub(crate) fn execute(cmd: Command) -> std::result::Result<Payload, (Params, Error)> {
    let mut params = Params::new();
    match dispatch(cmd, &mut params) {
        Ok(b) => Ok(Payload {
            params,
            result: b.result,
            provenance: b.provenance,
            table: b.table,
            failed: b.failed,
        }),
        Err(e) => Err((params, e)),
    }
}

fn set(params: &mut Params, key: &str, v: impl Into<Value>) {
    params.insert(key.to_string(), v.into());
}

fn span_value(s: Span) -> Value {
    if s.is_single() {
        Value::from(s.lo)
    } else {
        Value::from(s.to_string())
    }
}

fn config(b: Budget) -> OracleConfig {
    OracleConfig::with_budget(b.budget)
}

fn dispatch(cmd: Command, p: &mut Params) -> Result<Body> {
    match cmd {
        Command::Vertices {
            k,
            s,
            n,
            method,
            budget,
        } => {
            set(p, "k", k);
            set(p, "s", s);
            set(p, "n", span_value(n));
            set(p, "method", method_1d_name(method));
            set(p, "budget", budget.budget.to_string());
            vertices(k, s, n, method, &config(budget))
        }
        Command::Gf {
            k,
            s,
            closed,
            matrix,
            terms,
        } => {
            let mode = if closed {
                "closed"
            } else if matrix {
                "matrix"
            } else {
                "auto"
            };
            set(p, "k", k);
            set(p, "s", s);
            set(p, "mode", mode);
            set(p, "terms", terms);
            gf_cmd(k, s, mode, terms)
        }
        Command::Fvector {
            k,
            s,
            n,
            dim,
            budget,
        } => {
            set(p, "k", span_value(k));
            set(p, "s", s);
            set(p, "n", span_value(n));
            set(p, "dim", dim);
            set(p, "budget", budget.budget.to_string());
            fvector(k, s, n, dim, &config(budget))
        }
        Command::TotalFaces { k, s, n, budget } => {
            set(p, "k", span_value(k));
            set(p, "s", s);
            set(p, "n", span_value(n));
            set(p, "budget", budget.budget.to_string());
            total_faces(k, s, n, &config(budget))
        }
        Command::Facets {
            k,
            s,
            n,
            hrep,
            paper_literal,
            budget,
        } => {
            set(p, "k", k);
            set(p, "s", s);
            set(p, "n", n);
            set(p, "budget", budget.budget.to_string());
            let cfg = config(budget);
            if hrep {
                set(p, "view", "hrep");
                facets_hrep(n, k, s, &cfg)
            } else if paper_literal {
                set(p, "view", "paper-literal");
                facets_literal(n, k, s)
            } else {
                set(p, "view", "count");
                facets_count(n, k, s, &cfg)
            }
        }
        Command::Growth { k, s, grid3xn, tol } => {
            set(p, "tol", tol);
            if grid3xn {
                set(p, "layout", "3xn");
                growth(gf_2d().den().clone(), tol, None)
            } else {
                let (k, s) = (k.expect("required by clap"), s.expect("required by clap"));
                set(p, "layout", "1d");
                set(p, "k", k);
                set(p, "s", s);
                growth(det_poly(&adjacency(k, s)?), tol, Some((k, s)))
            }
        }
        Command::Grid3xn {
            n,
            method,
            class_counts,
            budget,
        } => {
            set(p, "n", span_value(n));
            set(p, "budget", budget.budget.to_string());
            if class_counts {
                set(p, "view", "class-counts");
                classes(n, &config(budget))
            } else {
                set(p, "method", method_3xn_name(method));
                grid3xn(n, method, &config(budget))
            }
        }
        Command::Grid2xn { n, budget } => {
            set(p, "n", span_value(n));
            set(p, "budget", budget.budget.to_string());
            grid2xn(n, &config(budget))
        }
        Command::Regions {
            k,
            s,
            n,
            grid3xn,
            sample,
            seed,
            budget,
        } => {
            set(p, "sample", sample);
            set(p, "seed", seed);
            set(p, "budget", budget.budget.to_string());
            let fam = match grid3xn {
                Some(cols) => {
                    set(p, "layout", "3xn");
                    set(p, "n", cols);
                    spec_3xn(cols)?
                }
                None => {
                    let (k, s, n) = (
                        k.expect("required by clap"),
                        s.expect("required by clap"),
                        n.expect("required by clap"),
                    );
                    set(p, "layout", "1d");
                    set(p, "k", k);
                    set(p, "s", s);
                    set(p, "n", n);
                    spec_1d(n, k, s)?
                }
            };
            regions(&fam, sample, seed, &config(budget))
        }
        Command::Verify { level } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            set(p, "level", level.name());
            verify(level)
        }
    }
}

fn method_1d_name(m: Method1d) -> &'static str {
    match m {
        Method1d::Oracle => "oracle",
        Method1d::Matrix => "matrix",
        Method1d::Gf => "gf",
        Method1d::Closed => "closed",
        Method1d::All => "all",
    }
}

fn method_3xn_name(m: Method3xn) -> &'static str {
    match m {
        Method3xn::Oracle => "oracle",
        Method3xn::A14 => "a14",
        Method3xn::B6 => "b6",
        Method3xn::Gf => "gf",
        Method3xn::All => "all",
    }
}

/// Values for one `n` from several methods.
struct Agreement {
    n: usize,
    values: Vec<(&'static str, BigInt)>,
    skipped: Vec<(&'static str, Error)>,
}

impl Agreement {
    fn value(&self) -> Option<&BigInt> {
        let (_, first) = self.values.first()?;
        self.values.iter().all(|(_, v)| v == first).then_some(first)
    }

    fn methods(&self) -> Vec<String> {
        self.values.iter().map(|(m, _)| m.to_string()).collect()
    }

    fn json(&self) -> Value {
        let mut row = json!({"n": self.n, "provenance": self.methods()});
        match self.value() {
            Some(v) => row["count"] = big(v),
            None => {
                row["count"] = Value::Null;
                row["disagreement"] = self.values_json();
            }
        }
        if !self.skipped.is_empty() {
            row["skipped"] = self
                .skipped
                .iter()
                .map(|(m, e)| (m.to_string(), Value::from(e.to_string())))
                .collect::<serde_json::Map<_, _>>()
                .into();
        }
        row
    }

    fn values_json(&self) -> Value {
        self.values
            .iter()
            .map(|(m, v)| (m.to_string(), big(v)))
            .collect::<serde_json::Map<_, _>>()
            .into()
    }
}

/// Runs every method; failures other than verification failures only drop
/// that method, unless none succeeds.
fn agree(
    n: usize,
    methods: &[&'static str],
    mut eval: impl FnMut(&'static str) -> Result<BigInt>,
) -> Result<Agreement> {
    let mut a = Agreement {
        n,
        values: Vec::new(),
        skipped: Vec::new(),
    };
    for &m in methods {
        match eval(m) {
            Ok(v) => a.values.push((m, v)),
            Err(e @ Error::VerificationFailure(_)) => return Err(e),
            Err(e) if methods.len() > 1 => a.skipped.push((m, e)),
            Err(e) => return Err(e),
        }
    }
    if a.values.is_empty() {
        return Err(a.skipped.swap_remove(0).1);
    }
    Ok(a)
}

fn counts_body(rows: Vec<Agreement>, single: bool) -> Body {
    let failed = rows.iter().any(|r| r.value().is_none());
    let mut provenance = rows[0].methods();
    provenance.retain(|m| rows.iter().all(|r| r.methods().contains(m)));
    let mut table = Table::new(["n", "count", "provenance"]);
    for r in &rows {
        let count = r.value().map(BigInt::to_string).unwrap_or_default();
        table.push([r.n.to_string(), count, r.methods().join(";")]);
    }
    let result = if single {
        match rows[0].value() {
            Some(v) => big(v),
            None => json!({"disagreement": rows[0].values_json()}),
        }
    } else {
        Value::from(rows.iter().map(Agreement::json).collect::<Vec<_>>())
    };
    Body {
        result,
        provenance,
        table,
        failed,
    }
}

fn vertices(k: usize, s: usize, n: Span, method: Method1d, cfg: &OracleConfig) -> Result<Body> {
    let methods: Vec<&'static str> = match method {
        Method1d::All => vec!["oracle", "matrix", "gf", "closed"],
        m => vec![method_1d_name(m)],
    };
    let rows = n
        .iter()
        .map(|n| {
            agree(n, &methods, |m| {
                let cm = match m {
                    "oracle" => CountMethod::Oracle,
                    "matrix" => CountMethod::Matrix,
                    "gf" => CountMethod::Gf,
                    _ => CountMethod::Closed,
                };
                count_1d_with(n, k, s, cm, cfg)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(counts_body(rows, n.is_single()))
}

fn display_gf(num: &IntPoly, den: &IntPoly) -> String {
    format!("({num}) / ({den})")
}

fn gf_cmd(k: usize, s: usize, mode: &str, terms: usize) -> Result<Body> {
    let matrix = gf_1d(k, s)?;
    let shifted = matrix.one_plus_x_times()?;
    let mut provenance = Vec::new();
    let mut failed = false;
    // Closed forms count from b_0 = 1, the matrix form from b_1.
    let (g, convention) = match mode {
        "matrix" => {
            provenance.push("matrix".to_string());
            (matrix, "sum b_(n+1) x^n")
        }
        "closed" => {
            let c = gf_closed(k, s)?;
            provenance.extend(c.regimes.iter().map(|r| r.name().to_string()));
            if gf_equal(&c.gf, &shifted) {
                provenance.push("matrix".into());
            } else {
                failed = true;
            }
            (c.gf, "sum b_n x^n")
        }
        _ => {
            provenance.push("matrix".to_string());
            match gf_closed(k, s) {
                Ok(c) if gf_equal(&c.gf, &shifted) => {
                    provenance.extend(c.regimes.iter().map(|r| r.name().to_string()))
                }
                Ok(_) => failed = true,
                Err(Error::RegimeNotCovered { .. }) => {}
                Err(e) => return Err(e),
            }
            (matrix, "sum b_(n+1) x^n")
        }
    };
    let series = if terms == 0 {
        Vec::new()
    } else {
        series_coeffs(&g, terms - 1)?
    };
    let mut result = gf(&g);
    result["series"] = series.iter().map(big).collect::<Vec<_>>().into();
    result["display"] = display_gf(g.num(), g.den()).into();
    result["convention"] = convention.into();

    let mut table = Table::new(["power", "num", "den", "series"]);
    let width = terms
        .max(g.num().coeffs().len())
        .max(g.den().coeffs().len());
    let cell = |c: &[BigInt], i: usize| c.get(i).map(BigInt::to_string).unwrap_or_default();
    for i in 0..width {
        table.push([
            i.to_string(),
            cell(g.num().coeffs(), i),
            cell(g.den().coeffs(), i),
            cell(&series, i),
        ]);
    }
    Ok(Body {
        result,
        provenance,
        table,
        failed,
    })
}

fn k_by_n_table(k: Span, n: Span, cell: impl Fn(usize, usize) -> String) -> Table {
    let mut t =
        Table::new(std::iter::once("k".to_string()).chain(n.iter().map(|n| format!("n={n}"))));
    for kk in k.iter() {
        t.push(std::iter::once(kk.to_string()).chain(n.iter().map(|nn| cell(kk, nn))));
    }
    t
}

fn fvector(k: Span, s: usize, n: Span, dim: usize, cfg: &OracleConfig) -> Result<Body> {
    let mut grid = Vec::new();
    for kk in k.iter() {
        for nn in n.iter() {
            let fv = enumerate_faces_with(&spec_1d(nn, kk, s)?, cfg)?;
            grid.push((kk, nn, fv));
        }
    }
    let strings = |fv: &poolfaces::oracle::FVector| -> Vec<Value> {
        fv.counts().iter().map(|c| c.to_string().into()).collect()
    };
    let provenance = vec!["oracle".to_string()];
    if k.is_single() && n.is_single() {
        let fv = &grid[0].2;
        let mut table = Table::new(["dim", "count"]);
        for (d, c) in fv.counts().iter().enumerate() {
            table.push([d.to_string(), c.to_string()]);
        }
        return Ok(Body::ok(strings(fv).into(), provenance, table));
    }
    let result = grid
        .iter()
        .map(|(kk, nn, fv)| json!({"k": kk, "n": nn, "fvector": strings(fv)}))
        .collect::<Vec<_>>();
    let table = k_by_n_table(k, n, |kk, nn| {
        grid.iter()
            .find(|(a, b, _)| *a == kk && *b == nn)
            .map(|(_, _, fv)| fv.get(dim).to_string())
            .unwrap_or_default()
    });
    Ok(Body::ok(result.into(), provenance, table))
}

fn total_faces(k: Span, s: usize, n: Span, cfg: &OracleConfig) -> Result<Body> {
    let mut grid = Vec::new();
    for kk in k.iter() {
        for nn in n.iter() {
            grid.push((kk, nn, total_face_count_with(&spec_1d(nn, kk, s)?, cfg)?));
        }
    }
    let result: Value = if k.is_single() && n.is_single() {
        grid[0].2.to_string().into()
    } else {
        grid.iter()
            .map(|(kk, nn, t)| json!({"k": kk, "n": nn, "total": t.to_string()}))
            .collect::<Vec<_>>()
            .into()
    };
    let table = k_by_n_table(k, n, |kk, nn| {
        grid.iter()
            .find(|(a, b, _)| *a == kk && *b == nn)
            .map(|(_, _, t)| t.to_string())
            .unwrap_or_default()
    });
    Ok(Body::ok(result, vec!["oracle".into()], table))
}

fn facets_count(n: usize, k: usize, s: usize, cfg: &OracleConfig) -> Result<Body> {
    let formula = facet_count_formula(n, k, s)?;
    let mut provenance = vec!["formula".to_string()];
    let mut result = Value::from(formula.to_string());
    let mut failed = false;
    match facet_count_oracle_with(&spec_1d(n, k, s)?, cfg) {
        Ok(c) if c == BigUint::from(formula) => provenance.push("oracle".into()),
        Ok(c) => {
            failed = true;
            result =
                json!({"disagreement": {"formula": formula.to_string(), "oracle": c.to_string()}});
        }
        Err(Error::BudgetExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let mut table = Table::new(["n", "k", "s", "facets"]);
    table.push([n, k, s, formula]);
    Ok(Body {
        result,
        provenance,
        table,
        failed,
    })
}

fn row_json(r: &HRow) -> Value {
    json!({
        "coeffs": r.coeffs,
        "rhs": r.rhs,
        "sense": r.sense.symbol(),
        "label": r.label.to_string(),
    })
}

fn join_ints(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn facets_hrep(n: usize, k: usize, s: usize, cfg: &OracleConfig) -> Result<Body> {
    let h = h_representation(n, k, s)?;
    let mut provenance = vec!["h-representation".to_string()];
    let mut failed = false;
    if h.inequalities.len() == facet_count_formula(n, k, s)? {
        provenance.push("formula".into());
    } else {
        failed = true;
    }
    // The check enumerates vertices; skip it when that would exceed the budget.
    let check = match enumerate_vertices_with(&spec_1d(n, k, s)?, cfg) {
        Ok(_) => {
            let c = check_h_representation(n, k, s)?;
            if c.passed() {
                provenance.push("oracle".into());
            } else {
                failed = true;
            }
            json!({
                "vertices": c.vertex_count,
                "sound": c.sound,
                "facet_rows": c.facet_rows,
                "distinct": c.distinct,
            })
        }
        Err(Error::BudgetExceeded { .. }) => Value::Null,
        Err(e) => return Err(e),
    };
    let result = json!({
        "ambient": h.ambient,
        "equalities": h.equalities.iter().map(row_json).collect::<Vec<_>>(),
        "inequalities": h.inequalities.iter().map(row_json).collect::<Vec<_>>(),
        "facet_count": h.inequalities.len(),
        "check": check,
    });
    let mut table = Table::new(["kind", "label", "sense", "rhs", "coeffs"]);
    for (kind, rows) in [("equality", &h.equalities), ("inequality", &h.inequalities)] {
        for r in rows {
            table.push([
                kind.to_string(),
                r.label.to_string(),
                r.sense.symbol().to_string(),
                r.rhs.to_string(),
                join_ints(&r.coeffs),
            ]);
        }
    }
    Ok(Body {
        result,
        provenance,
        table,
        failed,
    })
}

fn facets_literal(n: usize, k: usize, s: usize) -> Result<Body> {
    let diffs = printed_corollary_diff(n, k, s)?;
    let result = diffs
        .iter()
        .map(|d| {
            json!({
                "label": d.label.to_string(),
                "printed": row_json(&d.printed),
                "derived": row_json(&d.derived),
                "violated_by": d.violated_by,
            })
        })
        .collect::<Vec<_>>();
    let mut table = Table::new(["label", "printed", "derived", "violated_by"]);
    for d in &diffs {
        table.push([
            d.label.to_string(),
            d.printed.to_string(),
            d.derived.to_string(),
            d.violated_by.as_deref().map(join_ints).unwrap_or_default(),
        ]);
    }
    Ok(Body::ok(
        result.into(),
        vec![
            "printed-corollary".into(),
            "h-representation".into(),
            "oracle".into(),
        ],
        table,
    ))
}

fn growth(den: IntPoly, tol: f64, one_dim: Option<(usize, usize)>) -> Result<Body> {
    let root = smallest_positive_root(&den, tol)?;
    let value = -root.value.ln();
    let certified = root.certify(&den, tol);
    let mut provenance = vec!["perron-root".to_string()];
    let mut failed = !certified;
    if let Some((k, s)) = one_dim {
        if in_large_strides(k, s) {
            if (growth_large_strides(k, s)? - value).abs() < 1e-9 {
                provenance.push("large-strides".into());
            } else {
                failed = true;
            }
        }
    }
    let result = json!({
        "growth": value,
        "rho": root.value,
        "alpha": 1.0 / root.value,
        "bracket": [root.lo.to_string(), root.hi.to_string()],
        "certified": certified,
        "polynomial": poly(&den),
    });
    let mut table = Table::new(["quantity", "value"]);
    table.push(["growth".to_string(), value.to_string()]);
    table.push(["rho".to_string(), root.value.to_string()]);
    table.push(["alpha".to_string(), (1.0 / root.value).to_string()]);
    table.push(["certified".to_string(), certified.to_string()]);
    Ok(Body {
        result,
        provenance,
        table,
        failed,
    })
}

fn grid3xn(n: Span, method: Method3xn, cfg: &OracleConfig) -> Result<Body> {
    let methods: Vec<&'static str> = match method {
        Method3xn::All => vec!["oracle", "a14", "b6", "gf"],
        m => vec![method_3xn_name(m)],
    };
    let rows = n
        .iter()
        .map(|n| {
            agree(n, &methods, |m| {
                let m2 = match m {
                    "oracle" => Method2d::Oracle,
                    "a14" => Method2d::A14,
                    "b6" => Method2d::B6,
                    _ => Method2d::Gf,
                };
                count_2d_with(n, m2, cfg)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(counts_body(rows, n.is_single()))
}

fn vertex_label(i: usize) -> String {
    let ((a, b), (c, d)) = Q2_ORDER[i];
    format!("e{a}{b}+e{c}{d}")
}

fn classes(n: Span, cfg: &OracleConfig) -> Result<Body> {
    let mut table = Table::new(["n", "position", "vertex", "count"]);
    let mut out = Vec::new();
    let mut failed = false;
    for nn in n.iter() {
        let cc = class_counts_with(nn, cfg)?;
        if cc.total() != count_2d_with(nn, Method2d::B6, cfg)? {
            failed = true;
        }
        let entries: Vec<Value> = cc
            .counts
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"position": i + 1, "vertex": vertex_label(i), "count": big(c)}))
            .collect();
        for (i, c) in cc.counts.iter().enumerate() {
            table.push([
                nn.to_string(),
                (i + 1).to_string(),
                vertex_label(i),
                c.to_string(),
            ]);
        }
        out.push(json!({"n": nn, "total": big(&cc.total()), "classes": entries}));
    }
    let result = if n.is_single() {
        out.swap_remove(0)
    } else {
        out.into()
    };
    Ok(Body {
        result,
        provenance: vec!["oracle".into(), "b6".into()],
        table,
        failed,
    })
}

fn grid2xn(n: Span, cfg: &OracleConfig) -> Result<Body> {
    let rows = n
        .iter()
        .map(|n| {
            agree(n, &["matrix", "oracle"], |m| match m {
                "matrix" => count_2xn(n),
                _ => {
                    let spec = PoolingSpec::new(vec![2, n], vec![2, 2], 1)?;
                    Ok(enumerate_vertices_with(&windows_from_spec(&spec), cfg)?
                        .len()
                        .into())
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(counts_body(rows, n.is_single()))
}

fn regions(
    fam: &poolfaces::WindowFamily,
    trials: usize,
    seed: u64,
    cfg: &OracleConfig,
) -> Result<Body> {
    let sample = sample_regions(fam, trials, seed)?;
    let mut provenance = vec!["sampling".to_string()];
    let mut failed = !sample.all_faces;
    let vertices = match enumerate_vertices_with(fam, cfg) {
        Ok(v) => {
            provenance.push("oracle".into());
            failed |= sample.distinct_count > v.len();
            Some(v.len())
        }
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let result = json!({
        "trials": trials,
        "seed": seed,
        "distinct_count": sample.distinct_count,
        "all_faces": sample.all_faces,
        "vertex_count": vertices,
    });
    let mut table = Table::new(["quantity", "value"]);
    table.push([
        "distinct_count".to_string(),
        sample.distinct_count.to_string(),
    ]);
    table.push(["all_faces".to_string(), sample.all_faces.to_string()]);
    table.push([
        "vertex_count".to_string(),
        vertices.map(|v| v.to_string()).unwrap_or_default(),
    ]);
    Ok(Body {
        result,
        provenance,
        table,
        failed,
    })
}

fn verify(level: Level) -> Result<Body> {
    let report = run_suite(level);
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "checked": c.checked,
                "passed": c.passed(),
                "mismatches": c.mismatches.iter().map(|m| json!({
                    "item": m.item,
                    "expected": m.expected,
                    "actual": m.actual,
                })).collect::<Vec<_>>(),
                "error": c.error,
            })
        })
        .collect();
    let mut table = Table::new(["check", "checked", "passed", "mismatches", "error"]);
    for c in &report.checks {
        table.push([
            c.name.to_string(),
            c.checked.to_string(),
            c.passed().to_string(),
            c.mismatches.len().to_string(),
            c.error.clone().unwrap_or_default(),
        ]);
    }
    let provenance = report
        .checks
        .iter()
        .filter(|c| c.passed())
        .map(|c| c.name.to_string())
        .collect();
    Ok(Body {
        result: json!({
            "level": level.name(),
            "passed": report.passed(),
            "checks": checks,
        }),
        provenance,
        table,
        failed: !report.passed(),
    })
}
