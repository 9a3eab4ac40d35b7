//! Catalog DSL, deformation and stability experiments, and report emission for the
//! `fpure` command-line tool.

pub mod commands;
pub mod dsl;
pub mod error;
pub mod experiments;
pub mod report;

pub use dsl::{parse_presentation, Assertion, CatalogEntry, Expected};
pub use error::{DslError, HarnessError};
pub use experiments::{catalog_run, deform_check, load_catalog, load_entry, stability_scan, DeformStatus, RunOptions, ScanOptions};
pub use report::{emit_report, Format, Report};
