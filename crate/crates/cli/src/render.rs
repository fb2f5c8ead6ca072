use clap::ValueEnum;
use num_bigint::BigInt;
use poolfaces::{Error, IntPoly, RationalGF};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Header row plus data rows for `--format csv`.
#[derive(Debug, Clone, Default)]
pub(crate) struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

pub(crate) type Params = Map<String, Value>;

#[derive(Debug, Clone)]
pub(crate) struct Payload {
    pub params: Params,
    pub result: Value,
    pub provenance: Vec<String>,
    pub table: Table,
    /// Set when methods disagree or a check fails; the run exits with 4.
    pub failed: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    params: &'a Params,
    result: &'a Value,
    provenance: &'a [String],
    version: &'a str,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    command: &'a str,
    params: &'a Params,
    error: Value,
    version: &'a str,
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

pub(crate) fn payload(command: &str, p: &Payload, format: Format) -> String {
    match format {
        Format::Json => {
            let env = Envelope {
                command,
                params: &p.params,
                result: &p.result,
                provenance: &p.provenance,
                version: VERSION,
            };
            to_line(&env)
        }
        Format::Csv => csv_text(&p.table),
    }
}

pub(crate) fn error(command: &str, params: &Params, err: &Error, format: Format) -> String {
    match format {
        Format::Json => to_line(&ErrorEnvelope {
            command,
            params,
            error: json!({"kind": error_kind(err), "message": err.to_string()}),
            version: VERSION,
        }),
        Format::Csv => {
            let mut t = Table::new(["error", "message"]);
            t.push([error_kind(err).to_string(), err.to_string()]);
            csv_text(&t)
        }
    }
}

fn to_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("payload is plain JSON");
    s.push('\n');
    s
}

fn csv_text(t: &Table) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    w.write_record(&t.header).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub(crate) fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidSpec(_) => "invalid-spec",
        Error::InvalidSelection(_) => "invalid-selection",
        Error::NotAFace => "not-a-face",
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::TieDetected { .. } => "tie-detected",
        Error::InvalidParams(_) => "invalid-params",
        Error::OutOfWindow { .. } => "out-of-window",
        Error::RegimeNotCovered { .. } => "regime-not-covered",
        Error::IndexOutOfRange { .. } => "index-out-of-range",
        Error::MethodRange { .. } => "method-range",
        Error::NonIntegerCoefficient { .. } => "non-integer-coefficient",
        Error::NoPositiveRoot => "no-positive-root",
        Error::ZeroDenominator => "zero-denominator",
        Error::VerificationFailure(_) => "verification-failure",
    }
}

pub(crate) fn big(b: &BigInt) -> Value {
    Value::String(b.to_string())
}

pub(crate) fn poly(p: &IntPoly) -> Value {
    Value::from(p.to_strings())
}

pub(crate) fn gf(g: &RationalGF) -> Value {
    json!({"num": poly(g.num()), "den": poly(g.den())})
}
