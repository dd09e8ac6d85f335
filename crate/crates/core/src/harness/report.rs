use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{Axiom, AxiomChecker};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::instance::SeatAssignment;
use crate::methods::{Method, TieBreak};

use super::document::{parse_instance, LabeledInstance};

pub const HISTORICAL_COLUMN: &str = "historical";

/// Extension of instance documents inside a corpus directory.
const INSTANCE_EXTENSION: &str = "inst";
const HISTORICAL_FILE: &str = "historical.csv";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    /// Period metadata if present, else the file stem.
    pub name: String,
    pub instance: LabeledInstance,
    pub historical: Option<SeatAssignment>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, instance: LabeledInstance) -> Self {
        CorpusEntry {
            name: name.into(),
            instance,
            historical: None,
        }
    }
}

/// Seat label to party name, per period.
pub type Historical = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// One-based party per seat, in sorted seat order.
    pub assignment: Vec<usize>,
    pub satisfied: BTreeMap<Axiom, bool>,
    pub delta: Fraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub name: String,
    /// Aligned with [`StudyReport::columns`]; `None` where no historical
    /// assignment was supplied.
    pub cells: Vec<Option<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnSummary {
    pub column: String,
    /// Instances contributing to this column.
    pub instances: usize,
    pub satisfied: BTreeMap<Axiom, usize>,
    /// Lower-middle element for an even number of instances.
    pub median_delta: Option<Fraction>,
    pub max_delta: Option<Fraction>,
}

impl ColumnSummary {
    /// Percentage of contributing instances satisfying `axiom`.
    pub fn percent(&self, axiom: Axiom) -> Option<Fraction> {
        (self.instances > 0).then(|| {
            Fraction::new(100 * self.satisfied[&axiom] as i128, self.instances as i128)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StudyReport {
    pub columns: Vec<String>,
    pub instances: Vec<InstanceResult>,
    pub summaries: Vec<ColumnSummary>,
}

pub fn run_report(entries: &[CorpusEntry], methods: &[Method], tie: TieBreak) -> Result<StudyReport> {
    if entries.is_empty() {
        return Err(Error::Schema("report needs at least one instance".into()));
    }
    let with_history = entries.iter().any(|e| e.historical.is_some());
    let mut columns: Vec<String> = methods.iter().map(|m| m.name()).collect();
    if with_history {
        columns.push(HISTORICAL_COLUMN.to_string());
    }

    let instances: Vec<InstanceResult> = entries
        .par_iter()
        .map(|entry| evaluate(entry, methods, with_history, tie))
        .collect::<Result<_>>()?;

    let summaries = columns
        .iter()
        .enumerate()
        .map(|(c, column)| summarize(column, instances.iter().filter_map(|r| r.cells[c].as_ref())))
        .collect();
    Ok(StudyReport {
        columns,
        instances,
        summaries,
    })
}

fn evaluate(
    entry: &CorpusEntry,
    methods: &[Method],
    with_history: bool,
    tie: TieBreak,
) -> Result<InstanceResult> {
    let instance = &entry.instance.instance;
    let in_context = |e: Error, what: &str| e.context(format!("instance {}, {what}", entry.name));
    let checker = AxiomChecker::new(instance).map_err(|e| in_context(e, "quotas"))?;
    let cell = |assignment: &SeatAssignment| -> Result<Cell> {
        let report = checker.check_all(assignment)?;
        Ok(Cell {
            assignment: assignment.to_one_based(),
            satisfied: report.verdicts.iter().map(|(a, v)| (*a, v.satisfied)).collect(),
            delta: report.delta,
        })
    };

    let mut cells = Vec::with_capacity(methods.len() + 1);
    for method in methods {
        let what = format!("method {method}");
        let (assignment, _) = method.assign(instance, tie).map_err(|e| in_context(e, &what))?;
        cells.push(Some(cell(&assignment).map_err(|e| in_context(e, &what))?));
    }
    if with_history {
        let historical = entry
            .historical
            .as_ref()
            .map(|s| cell(s).map_err(|e| in_context(e, HISTORICAL_COLUMN)))
            .transpose()?;
        cells.push(historical);
    }
    Ok(InstanceResult {
        name: entry.name.clone(),
        cells,
    })
}

fn summarize<'a>(column: &str, cells: impl Iterator<Item = &'a Cell>) -> ColumnSummary {
    let mut satisfied: BTreeMap<Axiom, usize> = Axiom::ALL.iter().map(|&a| (a, 0)).collect();
    let mut deltas = Vec::new();
    for cell in cells {
        for (axiom, ok) in &cell.satisfied {
            if *ok {
                *satisfied.get_mut(axiom).expect("every axiom is checked") += 1;
            }
        }
        deltas.push(cell.delta);
    }
    deltas.sort();
    ColumnSummary {
        column: column.to_string(),
        instances: deltas.len(),
        satisfied,
        median_delta: (!deltas.is_empty()).then(|| deltas[(deltas.len() - 1) / 2]),
        max_delta: deltas.last().copied(),
    }
}

impl StudyReport {
    pub fn summary(&self, column: &str) -> Option<&ColumnSummary> {
        self.summaries.iter().find(|s| s.column == column)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields serialize")
    }

    /// One row per axiom with satisfaction percentages, then median and
    /// maximum distance, all rounded to `precision` decimals.
    pub fn render_table(&self, precision: usize) -> String {
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.summaries.iter().map(|s| s.column.clone()));
        rows.push(header);
        for axiom in Axiom::ALL {
            let mut row = vec![axiom.label().to_string()];
            row.extend(self.summaries.iter().map(|s| render(s.percent(axiom), precision)));
            rows.push(row);
        }
        let mut median = vec!["Median δ".to_string()];
        median.extend(self.summaries.iter().map(|s| render(s.median_delta, precision)));
        rows.push(median);
        let mut max = vec!["Max δ".to_string()];
        max.extend(self.summaries.iter().map(|s| render(s.max_delta, precision)));
        rows.push(max);

        let cols = rows[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                let pad = widths[c] - cell.chars().count();
                if c == 0 {
                    write!(line, "{cell}{}", " ".repeat(pad)).unwrap();
                } else {
                    write!(line, "  {}{cell}", " ".repeat(pad)).unwrap();
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn render(value: Option<Fraction>, precision: usize) -> String {
    value.map_or_else(|| "-".to_string(), |v| v.to_decimal(precision))
}

/// Reads `period,seat,party` rows; `seat` is a seat label and `party` a
/// party name as they appear in the instance documents.
pub fn parse_historical(source: impl Read) -> Result<Historical> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let mut out: Historical = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        if record.len() != 3 {
            return Err(Error::parse(line, format!("expected 3 columns, found {}", record.len())));
        }
        let seats = out.entry(record[0].to_string()).or_default();
        if seats.insert(record[1].to_string(), record[2].to_string()).is_some() {
            return Err(Error::parse(
                line,
                format!("seat `{}` listed twice for period `{}`", &record[1], &record[0]),
            ));
        }
    }
    Ok(out)
}

/// Matches historical assignments to entries by name.
pub fn attach_historical(entries: &mut [CorpusEntry], historical: &Historical) -> Result<()> {
    for (period, seats) in historical {
        let entry = entries
            .iter_mut()
            .find(|e| &e.name == period)
            .ok_or_else(|| Error::Schema(format!("historical period `{period}` matches no instance")))?;
        let li = &entry.instance;
        if seats.len() != li.seat_labels.len() {
            return Err(Error::Schema(format!(
                "historical period `{period}` lists {} seats, instance has {}",
                seats.len(),
                li.seat_labels.len()
            )));
        }
        let assignment = li
            .seat_labels
            .iter()
            .map(|label| {
                let party = seats.get(label).ok_or_else(|| {
                    Error::Schema(format!("historical period `{period}` has no seat `{label}`"))
                })?;
                li.parties.iter().position(|p| p == party).ok_or_else(|| {
                    Error::Schema(format!("historical period `{period}`: unknown party `{party}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        entry.historical = Some(SeatAssignment::new(&li.instance, assignment)?);
    }
    Ok(())
}

/// Loads every `*.inst` document in `dir` (sorted by file name) and, if
/// present, `historical.csv`.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let io = |path: &Path, e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(|e| io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == INSTANCE_EXTENSION))
        .collect();
    paths.sort();

    let mut entries = Vec::with_capacity(paths.len());
    for path in &paths {
        let text = fs::read_to_string(path).map_err(|e| io(path, e))?;
        let instance = parse_instance(&text).map_err(|e| e.context(path.display().to_string()))?;
        let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let name = instance.period.clone().unwrap_or(stem);
        if entries.iter().any(|e: &CorpusEntry| e.name == name) {
            return Err(Error::Schema(format!("two instances named `{name}`")));
        }
        entries.push(CorpusEntry::new(name, instance));
    }

    let hist_path = dir.join(HISTORICAL_FILE);
    if hist_path.exists() {
        let file = fs::File::open(&hist_path).map_err(|e| io(&hist_path, e))?;
        let historical = parse_historical(file).map_err(|e| e.context(HISTORICAL_FILE))?;
        attach_historical(&mut entries, &historical)?;
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::ElectionInstance;

    fn entry(name: &str, votes: Vec<u64>, weights: Vec<u64>) -> CorpusEntry {
        CorpusEntry::new(name, LabeledInstance::unlabeled(ElectionInstance::new(votes, weights).unwrap()))
    }

    #[test]
    fn greedy_meets_its_guarantees_on_the_example() {
        let r = run_report(&[entry("ex", vec![60, 30, 10], vec![10, 6, 4, 2])], &[Method::Greedy], TieBreak::default())
            .unwrap();
        let s = r.summary("greedy").unwrap();
        assert_eq!(s.percent(Axiom::WlqXR), Some(Fraction::from(100u64)));
        assert_eq!(s.percent(Axiom::WuqX), Some(Fraction::from(100u64)));
        assert_eq!(r.instances[0].cells[0].as_ref().unwrap().assignment, vec![1, 2, 1, 3]);
    }

    #[test]
    fn median_takes_lower_middle() {
        // Both unit instances: the first is exactly proportional, the second is not.
        let entries = [entry("a", vec![1, 1], vec![1, 1]), entry("b", vec![1, 2], vec![1, 1])];
        let r = run_report(&entries, &[Method::ADAMS_W], TieBreak::default()).unwrap();
        let d: Vec<Fraction> = r.instances.iter().map(|i| i.cells[0].as_ref().unwrap().delta).collect();
        assert_eq!(d[0], Fraction::ZERO);
        assert!(d[1] > d[0]);
        let s = &r.summaries[0];
        assert_eq!(s.median_delta, Some(d[0]));
        assert_eq!(s.max_delta, Some(d[1]));

        let swapped = [entries[1].clone(), entries[0].clone()];
        let r2 = run_report(&swapped, &[Method::ADAMS_W], TieBreak::default()).unwrap();
        assert_eq!(r2.summaries[0].median_delta, s.median_delta);
    }

    #[test]
    fn historical_only_report() {
        let mut entries = vec![entry("p1", vec![2, 1], vec![3, 2, 1])];
        let hist = parse_historical("period,seat,party\np1,1,1\np1,2,2\np1,3,1\n".as_bytes()).unwrap();
        attach_historical(&mut entries, &hist).unwrap();
        let r = run_report(&entries, &[], TieBreak::default()).unwrap();
        assert_eq!(r.columns, [HISTORICAL_COLUMN]);
        let cell = r.instances[0].cells[0].as_ref().unwrap();
        assert_eq!(cell.assignment, vec![1, 2, 1]);
        assert_eq!(cell.delta, Fraction::ZERO);
        let table = r.render_table(1);
        assert!(table.contains("Median δ"), "{table}");
        assert!(table.contains("0.0"), "{table}");
        assert!(r.to_json().contains("\"historical\""));
    }

    #[test]
    fn historical_mismatches_are_rejected() {
        let mut entries = vec![entry("p1", vec![2, 1], vec![3, 2])];
        let bad = parse_historical("period,seat,party\np2,1,1\n".as_bytes()).unwrap();
        assert!(attach_historical(&mut entries, &bad).is_err());
        let bad = parse_historical("period,seat,party\np1,1,1\np1,2,9\n".as_bytes()).unwrap();
        assert!(attach_historical(&mut entries, &bad).is_err());
        assert!(parse_historical("period,seat,party\np1,1,1\np1,1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn empty_corpus_is_an_error() {
        assert!(run_report(&[], &[Method::Greedy], TieBreak::default()).is_err());
    }
}
