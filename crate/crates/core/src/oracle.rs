//! The comparison-counting oracle: the only gateway to element values.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::probe::{Step, Task};

/// One answered comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Record {
    pub x: u32,
    pub y: u32,
    pub answer: Ordering,
}

impl Record {
    pub fn new(x: usize, y: usize, answer: Ordering) -> Self {
        Record {
            x: x as u32,
            y: y as u32,
            answer,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    records: Vec<Record>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_records(records: Vec<Record>) -> Self {
        Transcript { records }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn contains_equal(&self) -> bool {
        self.records.iter().any(|r| r.answer == Ordering::Equal)
    }

    /// True iff every recorded answer matches the realized values.
    pub fn replay(&self, instance: &Instance) -> bool {
        self.records.iter().all(|r| {
            let (x, y) = (r.x as usize, r.y as usize);
            x < instance.len() && y < instance.len() && instance.value(x).cmp(&instance.value(y)) == r.answer
        })
    }
}

pub fn replay_transcript(instance: &Instance, transcript: &Transcript) -> bool {
    transcript.replay(instance)
}

/// Answers comparisons in place of realized values.
pub trait ComparisonHook {
    fn len(&self) -> usize;
    fn answer(&mut self, x: usize, y: usize) -> Ordering;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

enum Source<'a> {
    Instance(&'a Instance),
    Hook(&'a mut dyn ComparisonHook),
}

/// Counts and records every comparison made against an instance or an
/// adversary hook. The counter is the transcript length.
pub struct CountingOracle<'a> {
    source: Source<'a>,
    transcript: Transcript,
}

impl<'a> CountingOracle<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        CountingOracle {
            source: Source::Instance(instance),
            transcript: Transcript::new(),
        }
    }

    pub fn with_hook(hook: &'a mut dyn ComparisonHook) -> Self {
        CountingOracle {
            source: Source::Hook(hook),
            transcript: Transcript::new(),
        }
    }

    pub fn len(&self) -> usize {
        match &self.source {
            Source::Instance(inst) => inst.len(),
            Source::Hook(h) => h.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The realized instance, unless answers come from a hook.
    pub fn instance(&self) -> Option<&Instance> {
        match &self.source {
            Source::Instance(inst) => Some(inst),
            Source::Hook(_) => None,
        }
    }

    pub fn count(&self) -> u64 {
        self.transcript.len() as u64
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }

    pub fn compare(&mut self, x: usize, y: usize) -> Result<Ordering> {
        let len = self.len();
        for index in [x, y] {
            if index >= len {
                return Err(Error::IndexOutOfRange { index, len });
            }
        }
        if x == y {
            return Err(Error::SelfComparison(x));
        }
        let answer = match &mut self.source {
            Source::Instance(inst) => inst.value(x).cmp(&inst.value(y)),
            Source::Hook(h) => h.answer(x, y),
        };
        self.transcript.push(Record::new(x, y, answer));
        Ok(answer)
    }

    /// Drives a task to completion, answering every request.
    pub fn drive<T>(&mut self, task: Task<'_, T>) -> Result<T> {
        Ok(self
            .drive_budget(task, u64::MAX)?
            .expect("unbounded budget always completes"))
    }

    /// Drives a task until it completes or the oracle has answered `budget`
    /// comparisons in total. Returns `None` when the budget ran out first.
    pub fn drive_budget<T>(&mut self, mut task: Task<'_, T>, budget: u64) -> Result<Option<T>> {
        loop {
            match task.resume() {
                Step::Done(value) => return Ok(Some(value)),
                Step::Compare(x, y) => {
                    if self.count() >= budget {
                        return Ok(None);
                    }
                    let answer = self.compare(x, y)?;
                    task.reply(answer);
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Two elements the oracle reported equal.
    Duplicate(usize, usize),
    /// A full sort certified that no witness exists. For set intersection this
    /// means the two lists are disjoint.
    Distinct,
    GaveUp,
}

impl Outcome {
    pub fn is_duplicate(&self) -> bool {
        matches!(self, Outcome::Duplicate(..))
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        match *self {
            Outcome::Duplicate(x, y) => Some((x, y)),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Duplicate(..) => f.write_str("duplicate"),
            Outcome::Distinct => f.write_str("distinct"),
            Outcome::GaveUp => f.write_str("gave_up"),
        }
    }
}

/// Outcome of an algorithm together with per-branch comparison accounting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub outcome: Outcome,
    pub branch_costs: BTreeMap<String, u64>,
}

impl From<Outcome> for Finding {
    fn from(outcome: Outcome) -> Self {
        Finding {
            outcome,
            branch_costs: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub outcome: Outcome,
    pub comparisons: u64,
    pub branch_costs: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn from_finding(finding: Finding, comparisons: u64) -> Self {
        RunReport {
            outcome: finding.outcome,
            comparisons,
            branch_costs: finding.branch_costs,
        }
    }
}

/// Runs a task against an oracle and packages the counter delta.
pub fn run_task<F: Into<Finding>>(oracle: &mut CountingOracle<'_>, task: Task<'_, F>) -> Result<RunReport> {
    let before = oracle.count();
    let finding = oracle.drive(task)?.into();
    Ok(RunReport::from_finding(finding, oracle.count() - before))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::Probe;

    fn inst(ranks: &[u64]) -> Instance {
        Instance::from_ranks(ranks.iter().copied()).unwrap()
    }

    #[test]
    fn compare_examples() {
        let a = inst(&[5, 5]);
        assert_eq!(CountingOracle::new(&a).compare(0, 1).unwrap(), Ordering::Equal);

        let b = inst(&[1, 2]);
        let mut oracle = CountingOracle::new(&b);
        assert_eq!(oracle.compare(0, 1).unwrap(), Ordering::Less);
        assert_eq!(oracle.count(), 1);
        assert_eq!(oracle.compare(1, 0).unwrap(), Ordering::Greater);
        assert_eq!(oracle.count(), 2);
        assert_eq!(oracle.transcript().len(), 2);
    }

    #[test]
    fn compare_usage_errors() {
        let b = inst(&[1, 2]);
        let mut oracle = CountingOracle::new(&b);
        assert!(matches!(oracle.compare(0, 0), Err(Error::SelfComparison(0))));
        assert!(matches!(
            oracle.compare(0, 2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
        assert_eq!(oracle.count(), 0);
    }

    #[test]
    fn replay_examples() {
        let b = inst(&[1, 2]);
        assert!(Transcript::new().replay(&b));
        let t = Transcript::from_records(vec![Record::new(0, 1, Ordering::Less)]);
        assert!(t.replay(&b));
        let bad = Transcript::from_records(vec![Record::new(0, 1, Ordering::Greater)]);
        assert!(!bad.replay(&b));
    }

    #[test]
    fn own_transcript_replays() {
        let i = inst(&[4, 1, 4, 3, 0, 1]);
        let mut oracle = CountingOracle::new(&i);
        for x in 0..i.len() {
            for y in 0..i.len() {
                if x != y {
                    oracle.compare(x, y).unwrap();
                }
            }
        }
        assert!(oracle.transcript().replay(&i));
        assert_eq!(oracle.count(), 30);
    }

    async fn compare_all_pairs(probe: Probe, n: usize) -> Outcome {
        for x in 0..n {
            for y in x + 1..n {
                if probe.compare(x, y).await == Ordering::Equal {
                    return Outcome::Duplicate(x, y);
                }
            }
        }
        Outcome::Distinct
    }

    #[test]
    fn drive_budget_stops_early() {
        let i = inst(&[1, 2, 3, 4, 4]);
        let mut oracle = CountingOracle::new(&i);
        let out = oracle.drive_budget(Task::new(|p| compare_all_pairs(p, 5)), 3).unwrap();
        assert!(out.is_none());
        assert_eq!(oracle.count(), 3);

        let mut oracle = CountingOracle::new(&i);
        let report = run_task(&mut oracle, Task::new(|p| compare_all_pairs(p, 5))).unwrap();
        assert_eq!(report.outcome, Outcome::Duplicate(3, 4));
        assert_eq!(report.comparisons, 10);
    }
}
