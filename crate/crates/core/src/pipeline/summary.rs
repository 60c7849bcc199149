//! Subgroup summary of estimated parameters by scenario and velocity bin.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::interval::IntervalSet;
use crate::tree::Scenario;
use crate::{Error, Result};

use super::ObservationRecord;

/// Strata with fewer records than this are flagged by default.
pub const DEFAULT_MIN_COUNT: usize = 5;

/// Median/mean representative parameter for one (scenario, velocity bin).
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub scenario: Scenario,
    pub model: String,
    pub velocity_lo: f64,
    pub velocity_hi: f64,
    pub count: usize,
    pub median: f64,
    pub mean: f64,
    /// True when the stratum holds fewer than the configured minimum count.
    pub insufficient: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratifiedSummary {
    pub min_count: usize,
    pub rows: Vec<SummaryRow>,
}

impl StratifiedSummary {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("scenario,model,velocity_lo,velocity_hi,count,median,mean,flag\n");
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.scenario,
                row.model,
                row.velocity_lo,
                row.velocity_hi,
                row.count,
                row.median,
                row.mean,
                if row.insufficient { "insufficient" } else { "" }
            )
            .expect("writing to a String cannot fail");
        }
        out
    }
}

/// Groups records into (scenario × velocity bin) strata and summarizes the
/// representative of each record's estimated set.
///
/// Bins are `[e0,e1), …, [e_{k-1},e_k]` (last bin right-inclusive). Records
/// with velocity outside the edges or with an empty estimated set are left
/// out; empty strata produce no row.
pub fn stratified_summary(
    records: &[ObservationRecord],
    estimates: &[IntervalSet],
    model_label: &str,
    bin_edges: &[f64],
    min_count: usize,
) -> Result<StratifiedSummary> {
    if records.len() != estimates.len() {
        return Err(Error::InvalidArgument(format!(
            "{} records but {} estimates",
            records.len(),
            estimates.len()
        )));
    }
    if bin_edges.len() < 2 {
        return Err(Error::InvalidArgument("need at least two velocity bin edges".into()));
    }
    if bin_edges.iter().any(|e| !e.is_finite())
        || bin_edges.windows(2).any(|pair| pair[0] >= pair[1])
    {
        return Err(Error::InvalidArgument(
            "velocity bin edges must be finite and strictly increasing".into(),
        ));
    }

    let mut strata: BTreeMap<(Scenario, usize), Vec<f64>> = BTreeMap::new();
    for (record, estimate) in records.iter().zip(estimates) {
        let Some(parameter) = estimate.representative() else { continue };
        let Some(bin) = bin_index(bin_edges, record.features.velocity) else { continue };
        strata.entry((record.features.scenario, bin)).or_default().push(parameter);
    }

    let rows = strata
        .into_iter()
        .map(|((scenario, bin), mut parameters)| {
            parameters.sort_by(f64::total_cmp);
            let count = parameters.len();
            let median = if count % 2 == 1 {
                parameters[count / 2]
            } else {
                (parameters[count / 2 - 1] + parameters[count / 2]) / 2.0
            };
            let mean = parameters.iter().sum::<f64>() / count as f64;
            SummaryRow {
                scenario,
                model: model_label.to_string(),
                velocity_lo: bin_edges[bin],
                velocity_hi: bin_edges[bin + 1],
                count,
                median,
                mean,
                insufficient: count < min_count,
            }
        })
        .collect();
    Ok(StratifiedSummary { min_count, rows })
}

fn bin_index(edges: &[f64], velocity: f64) -> Option<usize> {
    if velocity < edges[0] || velocity > edges[edges.len() - 1] {
        return None;
    }
    if velocity == edges[edges.len() - 1] {
        return Some(edges.len() - 2);
    }
    edges.windows(2).position(|pair| pair[0] <= velocity && velocity < pair[1])
}
