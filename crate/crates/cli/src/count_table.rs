//! The flop-count table emitted by `count`.

use anyhow::Result;
use serde::Serialize;
use trigops::{AuditKind, CountReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub kind: String,
    pub n: usize,
    pub adds: u64,
    pub mults: u64,
    pub flops: u64,
    pub predicted: i64,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl From<&CountReport> for CountRow {
    fn from(r: &CountReport) -> Self {
        CountRow {
            kind: r.kind.to_string(),
            n: r.n,
            adds: r.measured_adds,
            mults: r.measured_mults,
            flops: r.measured_flops(),
            predicted: r.predicted_flops,
            matches: r.matches,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CountTable {
    rows: Vec<CountRow>,
}

impl CountTable {
    /// Audits every kind at every power of two in `min..=max`. Sizes below a
    /// kind's smallest defined size are left out.
    pub fn build(kinds: &[AuditKind], min: usize, max: usize) -> Result<CountTable> {
        let mut rows = Vec::new();
        for &kind in kinds {
            let mut n = min.max(kind.min_size());
            while n <= max {
                rows.push(CountRow::from(&trigops::audit(kind, n)?));
                n *= 2;
            }
        }
        rows.sort_by(|a, b| (&a.kind, a.n).cmp(&(&b.kind, b.n)));
        rows.dedup();
        Ok(CountTable { rows })
    }

    pub fn rows(&self) -> &[CountRow] {
        &self.rows
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        if self.rows.is_empty() {
            w.write_record(["kind", "n", "adds", "mults", "flops", "predicted", "match"])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.rows)? + "\n")
    }
}
