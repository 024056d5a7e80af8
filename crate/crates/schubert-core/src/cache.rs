//! On-disk cache for Littlewood-Richardson coefficients.
//!
//! Newline-delimited records `LR <lambda>|<mu>|<nu> <value>` using the
//! comma-separated partition encoding (`3,2,1`; the empty partition is
//! `0`).  Loading seeds the in-memory memo table and rejects any record
//! that disagrees with a value already known.  Appending writes only
//! records not yet present in the file, as a single buffered write.
//! Duplicate lines are permitted as long as they agree.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lr::{self, LrKey};
use crate::partitions::Partition;

fn parse_line(line_no: usize, line: &str) -> Result<(LrKey, u64)> {
    let bad = |reason: &str| Error::CacheLine {
        line: line_no,
        reason: reason.to_string(),
    };
    let mut fields = line.split_whitespace();
    match fields.next() {
        Some("LR") => {}
        _ => return Err(bad("expected `LR` record tag")),
    }
    let key_text = fields.next().ok_or_else(|| bad("missing key field"))?;
    let value_text = fields.next().ok_or_else(|| bad("missing value field"))?;
    if fields.next().is_some() {
        return Err(bad("trailing fields"));
    }
    let parts: Vec<&str> = key_text.split('|').collect();
    if parts.len() != 3 {
        return Err(bad("key must be three `|`-separated partitions"));
    }
    let mut parsed: Vec<Partition> = Vec::with_capacity(3);
    for part in parts {
        parsed.push(
            part.parse::<Partition>()
                .map_err(|e| bad(&format!("bad partition `{part}`: {e}")))?,
        );
    }
    let value: u64 = value_text
        .parse()
        .map_err(|_| bad(&format!("bad value `{value_text}`")))?;
    let nu = parsed.pop().expect("three partitions parsed");
    let mu = parsed.pop().expect("three partitions parsed");
    let lambda = parsed.pop().expect("three partitions parsed");
    Ok(((lambda, mu, nu), value))
}

fn format_line(key: &LrKey, value: u64) -> String {
    format!("LR {}|{}|{} {}\n", key.0, key.1, key.2, value)
}

fn read_records(path: &Path) -> Result<Vec<(LrKey, u64)>> {
    let contents = match fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut records = Vec::new();
    for (idx, line) in contents.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        records.push(parse_line(idx + 1, line)?);
    }
    Ok(records)
}

/// Load a cache file into the memo table.  A missing file is an empty
/// cache.  Returns the number of records read; fails on malformed lines
/// or on any value conflicting with the memo.
pub fn load(path: &Path) -> Result<usize> {
    let records = read_records(path)?;
    let count = records.len();
    for (key, value) in records {
        lr::memo_seed(key, value)?;
    }
    Ok(count)
}

/// Append every memoized coefficient not already present in the file.
/// Returns the number of records written.
pub fn append_new(path: &Path) -> Result<usize> {
    let existing = read_records(path)?;
    let known: HashSet<LrKey> = existing.into_iter().map(|(k, _)| k).collect();
    let fresh: Vec<(LrKey, u64)> = lr::memo_snapshot()
        .into_iter()
        .filter(|(k, _)| !known.contains(k))
        .collect();
    if fresh.is_empty() {
        return Ok(0);
    }
    let mut buffer = String::new();
    // Guard against a final line missing its newline.
    if let Ok(contents) = fs::read_to_string(path) {
        if !contents.is_empty() && !contents.ends_with('\n') {
            buffer.push('\n');
        }
    }
    for (key, value) in &fresh {
        buffer.push_str(&format_line(key, *value));
    }
    let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(buffer.as_bytes())?;
    Ok(fresh.len())
}
