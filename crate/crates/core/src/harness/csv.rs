//! CSV output: comma separated, header row, LF line endings.

use std::io::Write;

use super::experiments::{BoundsRow, CompetitiveRow, DuelRow, OrderRow, SeparationRow, SiRow};
use crate::oracle::RunReport;
use crate::Result;

pub trait Row {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn write_rows<R: Row, W: Write>(out: W, rows: &[R]) -> Result<()> {
    let mut w = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(R::header()).map_err(csv_err)?;
    for r in rows {
        w.write_record(r.fields()).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_string<R: Row>(rows: &[R]) -> String {
    let mut buf = Vec::new();
    write_rows(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("utf-8 fields")
}

fn csv_err(e: ::csv::Error) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e))
}

fn f(x: f64) -> String {
    format!("{x:.6}")
}

/// One algorithm run as reported by `run` and `si run`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRow {
    pub algo: String,
    pub n: usize,
    pub report: RunReport,
}

impl Row for RunRow {
    fn header() -> &'static [&'static str] {
        &["algo", "n", "outcome", "comparisons", "witness_x", "witness_y"]
    }

    fn fields(&self) -> Vec<String> {
        let (x, y) = self
            .report
            .outcome
            .witness()
            .map_or((String::new(), String::new()), |(x, y)| (x.to_string(), y.to_string()));
        vec![
            self.algo.clone(),
            self.n.to_string(),
            self.report.outcome.to_string(),
            self.report.comparisons.to_string(),
            x,
            y,
        ]
    }
}

impl Row for CompetitiveRow {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "profile_id",
            "repetition",
            "clairvoyant_cmp",
            "oblivious_cmp",
            "ratio",
            "ratio_per_loglog",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.profile_id.to_string(),
            self.repetition.to_string(),
            self.clairvoyant_cmp.to_string(),
            self.oblivious_cmp.to_string(),
            f(self.ratio),
            f(self.ratio_per_loglog),
        ]
    }
}

impl Row for SeparationRow {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "algo",
            "rounds",
            "survived",
            "i",
            "L",
            "C_L",
            "C_bound_ok",
            "median_cmp",
            "median_found",
            "ratio",
            "consistency",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.algo.clone(),
            self.rounds.to_string(),
            self.survived.to_string(),
            self.i.to_string(),
            self.l.to_string(),
            self.c_l.to_string(),
            self.c_bound_ok.to_string(),
            self.median_cmp.to_string(),
            self.median_found.to_string(),
            f(self.ratio),
            self.consistent.to_string(),
        ]
    }
}

impl Row for BoundsRow {
    fn header() -> &'static [&'static str] {
        &[
            "profile_id",
            "n",
            "m",
            "linear_subset",
            "approx_factor",
            "block_iterations",
            "block_iteration_bound",
            "block_found",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.profile_id.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.linear_subset.map_or("n/a".into(), |b| b.to_string()),
            f(self.approx_factor),
            self.block_iterations.to_string(),
            self.block_iteration_bound.to_string(),
            self.block_found.to_string(),
        ]
    }
}

impl Row for DuelRow {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "rounds",
            "algo",
            "survived",
            "consistency",
            "clairvoyant_comparisons",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.rounds.to_string(),
            self.algo.clone(),
            self.survived.to_string(),
            self.consistency.to_string(),
            self.clairvoyant_comparisons.to_string(),
        ]
    }
}

impl Row for OrderRow {
    fn header() -> &'static [&'static str] {
        &["n", "rounds", "k", "doubling_cmp", "quickselect_cmp", "ratio"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.rounds.to_string(),
            self.k.to_string(),
            self.doubling_cmp.to_string(),
            self.quickselect_cmp.to_string(),
            f(self.ratio),
        ]
    }
}

impl Row for SiRow {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "j",
            "rounds",
            "survived",
            "consistency",
            "clairvoyant_cmp",
            "clairvoyant_found",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.j.to_string(),
            self.rounds.to_string(),
            self.survived.to_string(),
            self.consistent.to_string(),
            self.clairvoyant_cmp.to_string(),
            self.clairvoyant_found.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Outcome;
    use std::collections::BTreeMap;

    #[test]
    fn run_row_format() {
        let row = RunRow {
            algo: "block".into(),
            n: 4,
            report: RunReport {
                outcome: Outcome::Duplicate(1, 3),
                comparisons: 2,
                branch_costs: BTreeMap::new(),
            },
        };
        assert_eq!(
            to_string(&[row]),
            "algo,n,outcome,comparisons,witness_x,witness_y\nblock,4,duplicate,2,1,3\n"
        );
    }
}
