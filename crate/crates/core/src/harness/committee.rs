use std::collections::HashMap;
use std::io::Read;

use crate::error::{Error, Result};
use crate::instance::sort_permutation;

use super::document::LabeledInstance;

/// Builds an instance from committee sizes (the seat weights) and party
/// strengths (the votes). Repeated committee names get a ` (2)`, ` (3)`, ...
/// suffix.
pub fn ingest_committees(
    committees: &[(String, i64)],
    parties: &[(String, i64)],
) -> Result<LabeledInstance> {
    if committees.is_empty() {
        return Err(Error::EmptyWeights);
    }
    if parties.is_empty() {
        return Err(Error::EmptyVotes);
    }
    let votes: Vec<i64> = parties.iter().map(|(_, v)| *v).collect();
    let sizes: Vec<i64> = committees.iter().map(|(_, s)| *s).collect();
    let instance = crate::instance::validate_instance(&votes, &sizes)?;

    let mut seen: HashMap<&str, usize> = HashMap::new();
    let labels: Vec<String> = committees
        .iter()
        .map(|(name, _)| {
            let n = seen.entry(name.as_str()).or_insert(0);
            *n += 1;
            if *n == 1 {
                name.clone()
            } else {
                format!("{name} ({n})")
            }
        })
        .collect();
    let raw: Vec<u64> = sizes.iter().map(|&s| s as u64).collect();
    let seat_labels = sort_permutation(&raw).into_iter().map(|i| labels[i].clone()).collect();
    Ok(LabeledInstance {
        instance,
        parties: parties.iter().map(|(n, _)| n.clone()).collect(),
        seat_labels,
        period: None,
    })
}

/// CSV variant of [`ingest_committees`]. Each table has a header row and two
/// columns: `committee,size` and `party,seats`.
pub fn ingest_committee_table(committees: impl Read, parties: impl Read) -> Result<LabeledInstance> {
    let committees = read_pairs(committees).map_err(|e| e.context("committee table"))?;
    let parties = read_pairs(parties).map_err(|e| e.context("party table"))?;
    ingest_committees(&committees, &parties)
}

fn read_pairs(source: impl Read) -> Result<Vec<(String, i64)>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        // Line 1 is the header.
        let line = i + 2;
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        if record.len() != 2 {
            return Err(Error::parse(line, format!("expected 2 columns, found {}", record.len())));
        }
        let value = record[1]
            .parse::<i64>()
            .map_err(|_| Error::parse(line, format!("`{}` is not an integer", &record[1])))?;
        rows.push((record[0].to_string(), value));
    }
    Ok(rows)
}
