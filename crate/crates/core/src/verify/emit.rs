//! JSON and CSV output for reports, matrices, functions, measures and subspaces.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use super::report::{rationals, VerificationReport};
use crate::circle::ExampleReport;
use crate::error::{Error, Result};
use crate::functions::{GroupFunction, InvariantSubspace, QuotientFunction};
use crate::linalg::Matrix;
use crate::measure::QuotientMeasure;
use crate::radon::OperatorMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

/// Anything the crate can write out.
#[derive(Debug, Clone, Copy)]
pub enum Entity<'a> {
    Report(&'a [VerificationReport]),
    Operator(&'a OperatorMatrix),
    Matrix(&'a Matrix),
    Function(&'a QuotientFunction),
    GroupFunction(&'a GroupFunction),
    Measure(&'a QuotientMeasure),
    Subspace(&'a InvariantSubspace),
    Example(&'a ExampleReport),
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    // serde_json's default map is ordered by key, so a round trip through Value sorts everything.
    let v = serde_json::to_value(value)?;
    let mut out = serde_json::to_string_pretty(&v)?;
    out.push('\n');
    Ok(out)
}

fn matrix_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().from_writer(Vec::new())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn list(v: &Option<Vec<usize>>) -> String {
    v.as_ref().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).unwrap_or_default()
}

fn report_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv_writer();
    w.write_record(["case", "group", "family", "L", "H", "K", "claim", "kind", "status", "residual", "detail"])
        .map_err(csv_err)?;
    for r in reports {
        for c in &r.claims {
            let kind = serde_json::to_value(c.kind)?;
            let status = serde_json::to_value(c.status)?;
            w.write_record([
                r.case.id.as_str(),
                r.case.group.as_str(),
                r.case.family.as_str(),
                &list(&r.case.l),
                &list(&r.case.h),
                &list(&r.case.k),
                c.name.as_str(),
                kind.as_str().unwrap_or_default(),
                status.as_str().unwrap_or_default(),
                c.residual.as_deref().unwrap_or_default(),
                c.detail.as_deref().unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
    }
    finish_csv(w)
}

fn example_csv(report: &ExampleReport) -> Result<String> {
    let mut w = csv_writer();
    w.write_record(["r", "angle", "f", "Rf", "deviation"]).map_err(csv_err)?;
    for row in &report.rows {
        w.serialize((row.r, row.angle, row.f, row.rf, row.deviation)).map_err(csv_err)?;
    }
    finish_csv(w)
}

fn single_column(values: &[impl ToString]) -> String {
    let mut out: String = values.iter().map(|v| v.to_string() + "\n").collect();
    if out.is_empty() {
        out.push('\n');
    }
    out
}

pub fn emit(entity: Entity<'_>, format: Format) -> Result<String> {
    match (entity, format) {
        (Entity::Report(r), Format::Json) => canonical_json(r),
        (Entity::Report(r), Format::Csv) => report_csv(r),
        (Entity::Operator(m), Format::Json) => canonical_json(&m.record()),
        (Entity::Operator(m), Format::Csv) => Ok(matrix_csv(&m.matrix)),
        (Entity::Matrix(m), Format::Json) => canonical_json(&crate::linalg::MatrixRecord::from(m)),
        (Entity::Matrix(m), Format::Csv) => Ok(matrix_csv(m)),
        (Entity::Function(f), Format::Json) => canonical_json(&rationals(f.values())),
        (Entity::Function(f), Format::Csv) => Ok(single_column(f.values())),
        (Entity::GroupFunction(f), Format::Json) => canonical_json(&rationals(f.values())),
        (Entity::GroupFunction(f), Format::Csv) => Ok(single_column(f.values())),
        (Entity::Measure(m), Format::Json) => canonical_json(&rationals(m.weights())),
        (Entity::Measure(m), Format::Csv) => Ok(single_column(m.weights())),
        (Entity::Subspace(s), Format::Json) => canonical_json(&Value::from(
            s.blocks().iter().map(|b| Value::from(b.clone())).collect::<Vec<_>>(),
        )),
        (Entity::Subspace(s), Format::Csv) => Ok(s
            .blocks()
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect()),
        (Entity::Example(e), Format::Json) => canonical_json(e),
        (Entity::Example(e), Format::Csv) => example_csv(e),
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_output(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CosetSpace, FiniteGroup, Subgroup};
    use crate::linalg::{int, rat};
    use crate::par::Execution;
    use crate::radon::NestedRadon;
    use crate::verify::report::{ClaimKind, ClaimResult, Status};
    use crate::verify::{CaseId, Family};

    #[test]
    fn empty_report_is_an_empty_array() {
        let text = emit(Entity::Report(&[]), Format::Json).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), Value::Array(vec![]));
    }

    #[test]
    fn failing_claim_keeps_its_witness() {
        let report = VerificationReport {
            case: CaseId {
                id: "00000 S3 algebra".into(),
                group: "S3".into(),
                family: Family::Algebra,
                l: Some(vec![0]),
                h: Some(vec![0, 2]),
                k: None,
                convention: Default::default(),
                seed: 0,
            },
            claims: vec![ClaimResult {
                name: "synthetic".into(),
                kind: ClaimKind::Asserted,
                status: Status::Fail,
                holds: Some(false),
                detail: None,
                residual: Some("1/2".into()),
                witness: Some(serde_json::json!({ "f": ["1", "0"] })),
            }],
            timing_ms: None,
        };
        let text = emit(Entity::Report(std::slice::from_ref(&report)), Format::Json).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["claims"][0]["witness"]["f"][0], "1");
        assert_eq!(v[0]["claims"][0]["status"], "fail");
        let csv = emit(Entity::Report(&[report]), Format::Csv).unwrap();
        assert!(csv.lines().nth(1).unwrap().contains("synthetic"));
    }

    #[test]
    fn operator_csv_and_json() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let radon = NestedRadon::new(&g, &Subgroup::trivial(&g), &Subgroup::new(&g, [0, 2]).unwrap()).unwrap();
        let m = radon.matrix(Execution::Sequential).unwrap();
        assert_eq!(emit(Entity::Operator(&m), Format::Csv).unwrap(), "1/2,0,1/2,0\n0,1/2,0,1/2\n");
        let v: Value = serde_json::from_str(&emit(Entity::Operator(&m), Format::Json).unwrap()).unwrap();
        assert_eq!(v["rows"], 2);
        assert_eq!(v["cols"], 4);
        assert_eq!(v["entries"][0], "1/2");
    }

    #[test]
    fn functions_and_subspaces() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::new(&g, [0, 2]).unwrap();
        let space = CosetSpace::new(&g, &h).unwrap();
        let f = QuotientFunction::new(&space, vec![rat(1, 2), int(-3)]);
        let v: Value = serde_json::from_str(&emit(Entity::Function(&f), Format::Json).unwrap()).unwrap();
        assert_eq!(v, serde_json::json!(["1/2", "-3"]));
        let points = CosetSpace::new(&g, &Subgroup::trivial(&g)).unwrap();
        let sub = crate::functions::invariant_subspace(&g, &points, &h);
        let v: Value = serde_json::from_str(&emit(Entity::Subspace(&sub), Format::Json).unwrap()).unwrap();
        assert_eq!(v, serde_json::json!([[0, 2], [1, 3]]));
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let text = canonical_json(&serde_json::json!({ "b": 1, "a": { "d": 2, "c": 3 } })).unwrap();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.find("\"c\"").unwrap() < text.find("\"d\"").unwrap());
    }
}
