//! File outputs. Every JSON document carries `schema_version` and a `kind`
//! tag; CSV files are listed, with their columns, in the `manifest.json`
//! written next to them.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::limit::{Landmark, LimitAnalysis};
use crate::phase::{marker_roles, MarkerRole};
use crate::statics::{SignReport, SweepResult};

pub const SCHEMA_VERSION: u32 = 1;

pub const SWEEP_COLUMNS: [&str; 11] = [
    "value",
    "threshold_I",
    "threshold_M",
    "qss_N",
    "qss_I",
    "qss_M",
    "qss_S",
    "intermediate_region",
    "stable_set",
    "config_ordinal",
    "config_label",
];
pub const TRANSITION_COLUMNS: [&str; 4] = ["lo", "hi", "before", "after"];
pub const SIGN_COLUMNS: [&str; 9] =
    ["target", "parameter", "predicted", "h", "value_minus", "value_plus", "derivative", "limit_point", "verdict"];

#[derive(Debug, Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    kind: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with `schema_version` and `kind` prepended.
pub fn to_json<T: Serialize>(kind: &str, body: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { schema_version: SCHEMA_VERSION, kind, body })?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, kind: &str, body: &T) -> Result<()> {
    fs::write(path, to_json(kind, body)?)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandmarkRow {
    pub name: Landmark,
    pub location: f64,
    pub role: MarkerRole,
}

/// JSON view of a [`LimitAnalysis`] with the landmark table and the
/// configuration ordinal spelled out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisDocument<'a> {
    #[serde(flatten)]
    pub analysis: &'a LimitAnalysis,
    pub landmarks: Vec<LandmarkRow>,
    pub configuration_ordinal: usize,
    pub configuration_label: String,
}

impl<'a> AnalysisDocument<'a> {
    pub fn new(analysis: &'a LimitAnalysis) -> Self {
        let landmarks =
            marker_roles(analysis).into_iter().map(|(name, location, role)| LandmarkRow { name, location, role }).collect();
        Self {
            analysis,
            landmarks,
            configuration_ordinal: analysis.configuration.ordinal(),
            configuration_label: analysis.configuration.label(),
        }
    }
}

fn join(ls: &[Landmark]) -> String {
    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("|")
}

pub fn write_sweep_csv<W: Write>(s: &SweepResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS)?;
    for pt in &s.points {
        let a = &pt.analysis;
        w.write_record([
            pt.value.to_string(),
            a.thresholds.interesting.to_string(),
            a.thresholds.mild.to_string(),
            a.qss.no_sharing.to_string(),
            a.qss.interesting.to_string(),
            a.qss.mild.to_string(),
            a.qss.all.to_string(),
            a.thresholds.intermediate_region.code().to_string(),
            join(&a.composition()),
            a.configuration.ordinal().to_string(),
            a.configuration.label(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_transitions_csv<W: Write>(s: &SweepResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRANSITION_COLUMNS)?;
    for t in &s.transitions {
        w.write_record([t.lo.to_string(), t.hi.to_string(), join(&t.before), join(&t.after)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_signs_csv<W: Write>(reports: &[SignReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SIGN_COLUMNS)?;
    for r in reports {
        w.write_record([
            r.target.to_string(),
            r.parameter.to_string(),
            r.predicted.symbol().to_string(),
            r.h.to_string(),
            r.value_minus.to_string(),
            r.value_plus.to_string(),
            r.derivative.to_string(),
            r.limit_point.to_string(),
            serde_json::to_value(r.verdict)?.as_str().unwrap_or_default().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One file written by a command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputFile {
    pub name: String,
    /// CSV column names; empty for JSON and SVG.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<String>,
}

/// Collects files written into an output directory and records them in
/// `manifest.json`.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    command: String,
    inputs: serde_json::Value,
    files: Vec<OutputFile>,
}

impl OutputDir {
    pub fn create(root: &Path, command: &str, inputs: serde_json::Value) -> Result<Self> {
        fs::create_dir_all(root)?;
        Ok(Self { root: root.to_path_buf(), command: command.into(), inputs, files: Vec::new() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, kind: &str, body: &T) -> Result<PathBuf> {
        let p = self.path(name);
        write_json(&p, kind, body)?;
        self.files.push(OutputFile { name: name.into(), columns: Vec::new() });
        Ok(p)
    }

    pub fn text(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let p = self.path(name);
        fs::write(&p, contents)?;
        self.files.push(OutputFile { name: name.into(), columns: Vec::new() });
        Ok(p)
    }

    /// Writes a CSV through `f` and records its header.
    pub fn csv<F>(&mut self, name: &str, columns: &[&str], f: F) -> Result<PathBuf>
    where
        F: FnOnce(&mut Vec<u8>) -> Result<()>,
    {
        let mut buf = Vec::new();
        f(&mut buf)?;
        let p = self.path(name);
        fs::write(&p, buf)?;
        self.files.push(OutputFile { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect() });
        Ok(p)
    }

    /// Records a file written by other means.
    pub fn record(&mut self, name: &str, columns: &[&str]) {
        self.files.push(OutputFile { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect() });
    }

    pub fn finish(self) -> Result<PathBuf> {
        #[derive(Serialize)]
        struct Manifest<'a> {
            command: &'a str,
            inputs: &'a serde_json::Value,
            files: &'a [OutputFile],
        }
        let p = self.root.join("manifest.json");
        write_json(&p, "manifest", &Manifest { command: &self.command, inputs: &self.inputs, files: &self.files })?;
        Ok(p)
    }
}
