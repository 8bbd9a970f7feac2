//! Flat-file formats: instances, profiles, transcripts and set-intersection
//! instances. All are UTF-8, one record per line, LF terminated.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::instance::Instance;
use crate::oracle::{Record, Transcript};
use crate::profile::ClusterProfile;
use crate::setint::SiInstance;
use crate::{Error, Result};

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Non-blank lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers(path: &Path, text: &str) -> Result<Vec<u64>> {
    lines(text)
        .map(|(no, l)| l.parse::<u64>().map_err(|e| parse_err(path, no, e.to_string())))
        .collect()
}

pub fn format_numbers(values: impl IntoIterator<Item = u64>) -> String {
    let mut out = String::new();
    for v in values {
        writeln!(out, "{v}").unwrap();
    }
    out
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let ranks = numbers(path, &fs::read_to_string(path)?)?;
    Instance::from_ranks(ranks)
}

pub fn write_instance(path: &Path, instance: &Instance) -> Result<()> {
    Ok(fs::write(path, format_numbers(instance.ranks()))?)
}

pub fn read_profile(path: &Path) -> Result<ClusterProfile> {
    let sizes = numbers(path, &fs::read_to_string(path)?)?;
    ClusterProfile::new(sizes.into_iter().map(|s| s as usize).collect())
}

pub fn write_profile(path: &Path, profile: &ClusterProfile) -> Result<()> {
    Ok(fs::write(
        path,
        format_numbers(profile.sizes().iter().map(|&s| s as u64)),
    )?)
}

fn symbol(answer: Ordering) -> char {
    match answer {
        Ordering::Less => '<',
        Ordering::Equal => '=',
        Ordering::Greater => '>',
    }
}

pub fn format_transcript(transcript: &Transcript) -> String {
    let mut out = String::new();
    for r in transcript.records() {
        writeln!(out, "{}\t{}\t{}", r.x, r.y, symbol(r.answer)).unwrap();
    }
    out
}

pub fn parse_transcript(path: &Path, text: &str) -> Result<Transcript> {
    let mut records = Vec::new();
    for (no, l) in lines(text) {
        let fields: Vec<&str> = l.split('\t').collect();
        let [x, y, a] = fields[..] else {
            return Err(parse_err(path, no, "expected x<TAB>y<TAB>answer"));
        };
        let index = |s: &str| s.parse::<usize>().map_err(|e| parse_err(path, no, e.to_string()));
        let answer = match a {
            "<" => Ordering::Less,
            "=" => Ordering::Equal,
            ">" => Ordering::Greater,
            other => return Err(parse_err(path, no, format!("unknown answer {other:?}"))),
        };
        records.push(Record::new(index(x)?, index(y)?, answer));
    }
    Ok(Transcript::from_records(records))
}

pub fn read_transcript(path: &Path) -> Result<Transcript> {
    parse_transcript(path, &fs::read_to_string(path)?)
}

pub fn write_transcript(path: &Path, transcript: &Transcript) -> Result<()> {
    Ok(fs::write(path, format_transcript(transcript))?)
}

pub fn format_si(instance: &SiInstance) -> String {
    let mut out = String::from("A:\n");
    out += &format_numbers(instance.a().iter().map(|v| v.rank()));
    out += "B:\n";
    out += &format_numbers(instance.b().iter().map(|v| v.rank()));
    out
}

pub fn parse_si(path: &Path, text: &str) -> Result<SiInstance> {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    let mut section: Option<bool> = None;
    for (no, l) in lines(text) {
        match l {
            "A:" => section = Some(false),
            "B:" => section = Some(true),
            _ => {
                let v = l.parse::<u64>().map_err(|e| parse_err(path, no, e.to_string()))?;
                match section {
                    Some(false) => a.push(v),
                    Some(true) => b.push(v),
                    None => return Err(parse_err(path, no, "value before the A: section")),
                }
            }
        }
    }
    SiInstance::from_ranks(&a, &b)
}

pub fn read_si(path: &Path) -> Result<SiInstance> {
    parse_si(path, &fs::read_to_string(path)?)
}

pub fn write_si(path: &Path, instance: &SiInstance) -> Result<()> {
    Ok(fs::write(path, format_si(instance))?)
}
