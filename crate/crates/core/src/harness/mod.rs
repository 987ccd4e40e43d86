//! Claim-verification suites over a ring catalog, and their reports.

mod catalog;
mod report;
mod suite;

pub use catalog::{default_catalog, load_catalog, parse_catalog, Bounds, Catalog, CatalogEntry, MAX_CARD_ENV};
pub use report::{build_report, comparable, has_counterexample, summary, REPORT_SCHEMA};
pub use suite::{run_suite, Claim, Status, Suite, ClaimVerdict};
