//! Files written by the commands: JSON reports, JSON-lines branches and CSV
//! fields, all decimal text that round-trips `f64` exactly.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::continuation::{Branch, BranchPoint};
use crate::error::Result;
use crate::extension::ExtensionField;
use crate::linearization::SpectrumReport;
use crate::spectral::GridSpec;

/// Environment variable naming the default output root.
pub const OUT_ENV: &str = "FRACGS_OUT";
pub const DEFAULT_OUT: &str = "fracgs-out";

pub fn output_root() -> PathBuf {
    std::env::var_os(OUT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    Ok(fs::create_dir_all(dir)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_jsonl<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    for row in rows {
        serde_json::to_writer(&mut w, row)?;
        w.write_all(b"\n")?;
    }
    Ok(w.flush()?)
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = fs::File::open(path)?;
    BufReader::new(file)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|l| {
            let l = l?;
            Ok(serde_json::from_str(&l)?)
        })
        .collect()
}

/// `branch.jsonl` (one point per line, fields omitted), the end field as
/// `end.csv`, and everything else in `branch.json`.
pub fn write_branch(dir: &Path, branch: &Branch) -> Result<()> {
    ensure_dir(dir)?;
    write_jsonl(&dir.join("branch.jsonl"), &branch.points)?;
    let manifest = Branch { points: Vec::new(), ..branch.clone() };
    write_json(&dir.join("branch.json"), &manifest)?;
    branch.last().field().write_csv(&dir.join("end.csv"))
}

/// Inverse of [`write_branch`]; the points come back without fields.
pub fn read_branch(dir: &Path) -> Result<Branch> {
    let mut branch: Branch = read_json(&dir.join("branch.json"))?;
    branch.points = read_jsonl::<BranchPoint>(&dir.join("branch.jsonl"))?;
    Ok(branch)
}

/// `spectrum-<sector>.json` and `eigenfield-<sector>-<k>.csv`.
pub fn write_spectrum(dir: &Path, report: &SpectrumReport) -> Result<()> {
    ensure_dir(dir)?;
    let tag = serde_json::to_value(report.sector)?;
    let tag = tag.as_str().unwrap_or("sector").to_string();
    write_json(&dir.join(format!("spectrum-{tag}.json")), report)?;
    for (k, psi) in report.eigenfields.iter().enumerate() {
        psi.write_csv(&dir.join(format!("eigenfield-{tag}-{k}.csv")))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub grid: GridSpec,
    pub a: f64,
    pub levels: Vec<f64>,
    pub samples_csv: String,
}

/// Long-format `x, y, u` rows plus a JSON descriptor.
pub fn write_extension(dir: &Path, name: &str, u: &ExtensionField) -> Result<()> {
    ensure_dir(dir)?;
    let csv_name = format!("{name}.csv");
    let mut w = csv::Writer::from_path(dir.join(&csv_name))?;
    w.write_record(["x", "y", "u"])?;
    for (y, row) in u.levels.iter().zip(&u.samples) {
        for (j, v) in row.iter().enumerate() {
            w.write_record([format!("{:.17e}", u.grid.node(j)), format!("{y:.17e}"), format!("{v:.17e}")])?;
        }
    }
    w.flush()?;
    let desc = ExtensionDescriptor { grid: u.grid.spec(), a: u.a, levels: u.levels.clone(), samples_csv: csv_name };
    write_json(&dir.join(format!("{name}.json")), &desc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Report;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn json_round_trip_is_exact(values in proptest::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..20)) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("v.json");
            write_json(&path, &values).unwrap();
            let back: Vec<f64> = read_json(&path).unwrap();
            prop_assert_eq!(back, values.clone());
            let path = dir.path().join("v.jsonl");
            write_jsonl(&path, &values).unwrap();
            prop_assert_eq!(read_jsonl::<f64>(&path).unwrap(), values);
        }
    }

    #[test]
    fn report_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut r = Report::new("solve", serde_json::json!({"s": 0.1 + 0.2}));
        r.at_most("x", 1.0 / 3.0, 0.5, "a third is small");
        let path = dir.path().join("r.json");
        write_json(&path, &r).unwrap();
        assert_eq!(read_json::<Report>(&path).unwrap(), r);
        assert!(read_json::<Report>(&dir.path().join("missing.json")).is_err());
    }
}
