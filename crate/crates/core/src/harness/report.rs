use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value as Json};

use super::catalog::{Bounds, CatalogEntry};
use super::suite::{Status, Suite, ClaimVerdict};

pub const REPORT_SCHEMA: &str = "ringlab-report/1";

/// Per-status verdict counts.
pub fn summary(verdicts: &[ClaimVerdict]) -> Json {
    let count = |s: Status| verdicts.iter().filter(|v| v.status == s).count();
    json!({
        "verified": count(Status::Verified),
        "counterexample-found": count(Status::CounterexampleFound),
        "vacuously-true": count(Status::VacuouslyTrue),
        "skipped": count(Status::Skipped),
    })
}

pub fn has_counterexample(verdicts: &[ClaimVerdict]) -> bool {
    verdicts.iter().any(|v| v.status == Status::CounterexampleFound)
}

/// The report payload. Everything outside `"metadata"` is a pure function
/// of the inputs.
pub fn build_report(suite: Suite, catalog: &[CatalogEntry], bounds: &Bounds, verdicts: &[ClaimVerdict]) -> Json {
    let suite_name = match suite {
        Suite::All => "all".to_string(),
        Suite::One(c) => c.to_string(),
    };
    let generated = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    json!({
        "schema": REPORT_SCHEMA,
        "suite": suite_name,
        "bounds": bounds,
        "catalog": catalog.iter().map(|e| json!({ "spec": e.spec, "tags": e.tags })).collect::<Vec<_>>(),
        "verdicts": verdicts,
        "summary": summary(verdicts),
        "passed": !has_counterexample(verdicts),
        "metadata": {
            "generated_unix": generated,
            "version": env!("CARGO_PKG_VERSION"),
        },
    })
}

/// The report with `"metadata"` removed, for comparisons.
pub fn comparable(report: &Json) -> Json {
    let mut out = report.clone();
    if let Some(obj) = out.as_object_mut() {
        obj.remove("metadata");
    }
    out
}
