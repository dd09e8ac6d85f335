//! Instance documents, committee ingestion, random corpora and study reports.

mod committee;
mod document;
mod generate;
mod report;

pub use committee::{ingest_committee_table, ingest_committees};
pub use document::{parse_instance, render_instance, InstanceDocument, LabeledInstance};
pub use generate::{generate_instances, random_instance, GeneratorConfig, InstanceStream};
pub use report::{
    attach_historical, load_corpus, parse_historical, run_report, Cell, ColumnSummary,
    CorpusEntry, Historical, InstanceResult, StudyReport, HISTORICAL_COLUMN,
};
