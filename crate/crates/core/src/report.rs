//! Serializable run reports and the on-disk set-file format.
//!
//! Reports carry a `schema` version, the invocation parameters, the achieved
//! quantity, the target bound with its formula spelled out, and whatever
//! witness or trace the run produced. Sets serialize as a sorted member
//! array plus the modulus so that goldens diff cleanly.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cube::{CubeWitness, GrowthOutcome};
use crate::daisy::DaisyWitness;
use crate::slice::{ConstructionTrace, GRecord, SliceWitness};
use crate::structured::{ApWitness, SidonWitness};
use crate::zm::ZmSet;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportKind {
    #[serde(rename = "g_exact")]
    GExact,
    #[serde(rename = "g_lower_t2")]
    GLowerT2,
    #[serde(rename = "g_lower_t3plus")]
    GLowerT3Plus,
    #[serde(rename = "cube")]
    Cube,
    #[serde(rename = "daisy_density")]
    DaisyDensity,
    #[serde(rename = "g_sweep")]
    GSweep,
    #[serde(rename = "slice_search")]
    SliceSearch,
    #[serde(rename = "sidon")]
    Sidon,
    #[serde(rename = "behrend")]
    Behrend,
    #[serde(rename = "behrend_sweep")]
    BehrendSweep,
    #[serde(rename = "growth_lemma")]
    GrowthLemma,
    #[serde(rename = "family")]
    Family,
    #[serde(rename = "daisy_search")]
    DaisySearch,
}

/// Invocation parameters echoed into the report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<u64>,
}

/// An achieved size or density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Count(u64),
    Big { value: String },
    Ratio { num: String, den: String, approx: f64 },
}

/// A target bound with its provenance formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetBound {
    pub formula: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub den: Option<String>,
}

/// Counting results for a partite family run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyStats {
    pub total: String,
    pub distinct_label_total: String,
    pub best_translate: u64,
    pub best_translate_size: String,
    pub density: f64,
    pub daisy_checked: bool,
    pub daisy_witness_found: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GSweepRow {
    pub m: u64,
    pub t: u32,
    pub g: u64,
    pub maximizer: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BehrendSweepRow {
    pub m: u64,
    pub interval_cap: u64,
    pub size: u64,
    pub formula_size: f64,
    pub gamma: f64,
}

/// The one report shape every subcommand emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: u32,
    pub kind: ReportKind,
    pub params: ReportParams,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub achieved: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<TargetBound>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub set: Option<ZmSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g_record: Option<GRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slice_witness: Option<SliceWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cube_witness: Option<CubeWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub daisy_witness: Option<DaisyWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sidon_witness: Option<SidonWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ap_witness: Option<ApWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<ConstructionTrace>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<FamilyStats>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub growth: Option<GrowthOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g_rows: Option<Vec<GSweepRow>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub behrend_rows: Option<Vec<BehrendSweepRow>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub wall_time_ms: f64,
}

impl BoundReport {
    pub fn new(kind: ReportKind) -> BoundReport {
        BoundReport {
            schema: SCHEMA_VERSION,
            kind,
            params: ReportParams::default(),
            achieved: None,
            target: None,
            verified: false,
            set: None,
            g_record: None,
            slice_witness: None,
            cube_witness: None,
            daisy_witness: None,
            sidon_witness: None,
            ap_witness: None,
            trace: None,
            family: None,
            growth: None,
            g_rows: None,
            behrend_rows: None,
            notes: Vec::new(),
            wall_time_ms: 0.0,
        }
    }
}

// ---------------------------------------------------------------------------
// set files: newline-separated integers with a `# modulus M` header

/// Parses a set file: a `# modulus M` header line followed by one member per
/// line. Later `#` lines are treated as comments.
pub fn parse_set<R: BufRead>(reader: R) -> Result<ZmSet> {
    let mut modulus: Option<u64> = None;
    let mut members = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::BadSetFile(format!("read error: {e}")))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(value) = rest.strip_prefix("modulus") {
                let parsed = value.trim().parse::<u64>().map_err(|_| {
                    Error::BadSetFile(format!("line {}: bad modulus {value:?}", lineno + 1))
                })?;
                if parsed == 0 {
                    return Err(Error::BadSetFile("modulus must be at least 1".into()));
                }
                if modulus.replace(parsed).is_some() {
                    return Err(Error::BadSetFile("duplicate modulus header".into()));
                }
            }
            continue;
        }
        let v = line.parse::<u64>().map_err(|_| {
            Error::BadSetFile(format!("line {}: not an integer: {line:?}", lineno + 1))
        })?;
        members.push(v);
    }
    let modulus = modulus.ok_or_else(|| Error::BadSetFile("missing `# modulus M` header".into()))?;
    if let Some(&bad) = members.iter().find(|&&v| v >= modulus) {
        return Err(Error::BadSetFile(format!(
            "member {bad} out of range for modulus {modulus}"
        )));
    }
    Ok(ZmSet::from_members(modulus, members))
}

pub fn read_set_file(path: &Path) -> Result<ZmSet> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::BadSetFile(format!("{}: {e}", path.display())))?;
    parse_set(std::io::BufReader::new(file))
}

pub fn write_set<W: Write>(mut w: W, set: &ZmSet) -> std::io::Result<()> {
    writeln!(w, "# modulus {}", set.modulus())?;
    for v in set.iter() {
        writeln!(w, "{v}")?;
    }
    Ok(())
}

pub fn write_set_file(path: &Path, set: &ZmSet) -> std::io::Result<()> {
    let mut buf = Vec::new();
    write_set(&mut buf, set)?;
    std::fs::write(path, buf)
}
